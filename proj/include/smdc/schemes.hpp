#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smdc/field.hpp"
#include "smdc/region.hpp"

namespace smdc {

enum class Mode { Mss, Sliding };

/// Problem instance: L encoders, secrecy gap s, field order q, and the
/// per-level source lengths in symbols (index alpha-1).
struct SourceProfile {
    std::size_t L = 0;
    std::size_t s = 1;
    std::uint32_t q = 2;
    std::vector<std::uint64_t> lengths;
    Mode mode = Mode::Mss;

    void validate() const;
    std::uint64_t total_source_symbols() const;
};

enum class SchemeId {
    Threshold,  // bundle tag for the standalone sharing ops
    Ramp,
    Sup1,
    MssGeneral,
    MssChain,
    MssHybrid,
    PseudoSup,
    CornerQ1,
    CornerP1,
    CornerO,
    CornerS1,
    CornerT1,
    CornerS4,
    CornerT4,
    CornerS10,
};

const char* scheme_name(SchemeId id);
SchemeId scheme_from_name(const std::string& name);
bool is_corner(SchemeId id);

/// Scheme-determined pad of uniform symbols, reproducible from the seed.
struct KeyMaterial {
    SymbolSeq symbols;
    std::uint64_t seed = 0;
};

/// Uniform symbols over GF(q) from a seeded generator (rejection sampling,
/// so the distribution is exactly uniform).
KeyMaterial make_key(std::size_t len, std::uint32_t q, std::uint64_t seed);

struct ShareLayer {
    std::size_t alpha = 0;
    SymbolSeq symbols;
};

using EncoderOutput = std::vector<ShareLayer>;

struct ShareBundle {
    std::vector<EncoderOutput> shares;  // size L
    SourceProfile profile;
    SchemeId scheme;
};

/// Per-encoder symbol counts of a bundle.
RateTuple measured_rates(const ShareBundle& bundle);

/// Single-level threshold sharing: any k of L shares recover x, any k-1
/// reveal nothing. Key length (k-1)|x|.
ShareBundle threshold_share(const SymbolSeq& x, std::size_t k, std::size_t L, const FieldSpec& f,
                            const SymbolSeq& key);

/// Ramp sharing: any k of L shares recover x, any <= c reveal nothing.
/// |x| divisible by k-c; key length c|x|/(k-c); share length |x|/(k-c).
ShareBundle ramp_share(const SymbolSeq& x, std::size_t c, std::size_t k, std::size_t L,
                       const FieldSpec& f, const SymbolSeq& key);

/// Inverse of ramp_share from any >= k shares given as (1-based encoder
/// index, stream) pairs.
SymbolSeq ramp_decode(const std::vector<std::pair<std::size_t, SymbolSeq>>& shares, std::size_t c,
                      std::size_t k, std::size_t L, const FieldSpec& f);

/// A concrete parameterized encoder/decoder pair.
struct SchemeInstance {
    SourceProfile profile;
    SchemeId scheme;

    /// Exact number of key symbols encode consumes.
    std::size_t key_length() const;

    /// sources[alpha-1] is the level-alpha block; sizes must match the
    /// profile, key size must match key_length().
    ShareBundle encode(const std::vector<SymbolSeq>& sources, const SymbolSeq& key) const;

    /// Reconstructs from the given (1-based encoder index, output) pairs.
    /// Returns the sources the access level entitles to: levels
    /// min_level()..|U| (levels outside that range come back empty).
    std::vector<SymbolSeq> decode(
        const std::vector<std::pair<std::size_t, EncoderOutput>>& shares) const;

    /// Lowest reconstructible level (s for mss, 1 for sliding).
    std::size_t min_level() const;

    /// Per-encoder symbol counts the construction yields.
    RateTuple declared_rates() const;
};

/// Validates the profile against the scheme's preconditions and returns the
/// instance; throws PaddingRequired (with the minimal conforming profile in
/// the message), WrongScheme, KeyDeficit, or CornerUnavailable.
SchemeInstance make_instance(const SourceProfile& profile, SchemeId scheme);

/// Exact linear image of an instance: encode(z) = M_l . z per encoder, with
/// input layout all source symbols by level then all key symbols.
struct LinearEncoderMatrix {
    FieldSpec field;
    std::size_t input_cols = 0;
    std::size_t source_cols = 0;             // prefix of the layout
    std::vector<std::size_t> level_begin;    // column where level alpha starts (index alpha-1)
    std::vector<FieldMatrix> per_encoder;    // M_1..M_L
    std::vector<FieldMatrix> selectors;      // S_1..S_L (rows pick level symbols)
};

/// Derives the matrices by basis probing and self-checks linearity on 100
/// random inputs.
LinearEncoderMatrix plan_matrix(const SchemeInstance& instance);

/// Solves decode linearly: expresses the selector rows of levels
/// lo..hi as combinations of the stacked encoder rows for U and applies them
/// to the observed share symbols. Throws InsufficientShares if some selector
/// row is outside the observed row space.
std::vector<SymbolSeq> linear_decode(const LinearEncoderMatrix& mat,
                                     const std::vector<std::pair<std::size_t, SymbolSeq>>& flat_shares,
                                     std::size_t lo, std::size_t hi,
                                     const std::vector<std::uint64_t>& lengths);

}  // namespace smdc
