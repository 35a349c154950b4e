#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smdc/schemes.hpp"

namespace smdc {

/// One access pattern under test.
struct AccessSpec {
    std::vector<std::size_t> U;
    std::vector<std::size_t> A;
    std::size_t alpha = 0;
};

struct ReportRow {
    std::size_t alpha = 0;
    bool secrecy = false;  // false: lossless row over U; true: secrecy row over A
    std::vector<std::size_t> subset;
    bool pass = false;
    double mi_bits = 0.0;  // telemetry only, never used for pass/fail
    std::string oracle;
    std::uint64_t enum_size = 0;
    std::string note;
};

struct VerificationReport {
    std::vector<ReportRow> rows;
    bool all_pass() const;
};

enum class AuditMode { Exhaustive, Rank, Both };

/// Microstate cap for exhaustive enumeration; SMDC_ENUM_CAP overrides the
/// default of 2^20.
std::uint64_t default_enum_cap();

/// Precomputed joint behavior of an instance over every input microstate
/// (sources then key symbols, uniform). Input j of state t is digit j of t
/// in base q.
struct ExhaustiveTable {
    SchemeInstance instance;
    std::size_t input_symbols = 0;
    std::size_t source_symbols = 0;
    std::vector<std::size_t> level_begin;    // input column of each level (index alpha-1)
    std::uint64_t states = 0;                // q^input_symbols
    std::vector<std::size_t> encoder_begin;  // offsets into each state's flat output
    std::size_t output_symbols = 0;
    std::vector<Symbol> outputs;             // states x output_symbols

    std::size_t input_digit(std::uint64_t state, std::size_t pos) const;
};

/// Builds the table; throws TooLargeUseRankOracle when q^N exceeds the cap.
ExhaustiveTable build_table(const SchemeInstance& instance, std::uint64_t cap);

/// True iff the shares of U determine the sources up to level alpha
/// (functional determinism, so a decoder exists).
bool exhaustive_check_lossless(const ExhaustiveTable& table, const std::vector<std::size_t>& U,
                               std::size_t alpha);

/// True iff level alpha is exactly independent of the shares of A; mi_bits
/// receives the exact-count mutual information as float telemetry.
bool exhaustive_check_secrecy(const ExhaustiveTable& table, const std::vector<std::size_t>& A,
                              std::size_t alpha, double* mi_bits = nullptr);

/// Rank oracle: the selector rows of levels lo..alpha lie in the row space
/// of the stacked encoder matrices of U.
bool rank_check_lossless(const LinearEncoderMatrix& mat, const std::vector<std::size_t>& U,
                         std::size_t alpha, std::size_t lo);

/// Rank oracle: rank(S_alpha stacked on M_A) = rank(S_alpha) + rank(M_A).
bool rank_check_secrecy(const LinearEncoderMatrix& mat, const std::vector<std::size_t>& A,
                        std::size_t alpha);

/// Runs every lossless row (|U| = alpha) and secrecy row (|A| <= [alpha-s]+)
/// for alpha from the instance's lowest level to L. In Exhaustive/Both modes
/// rows fall back to the rank oracle when the state space exceeds the cap.
VerificationReport full_audit(const SchemeInstance& instance, AuditMode mode,
                              std::uint64_t cap = default_enum_cap());

/// Shannon entropy of a histogram, in bits (reporting only).
double entropy_bits(const std::vector<std::uint64_t>& counts);

std::string report_text(const VerificationReport& report);

}  // namespace smdc
