#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "smdc/error.hpp"

namespace smdc {

/// One field symbol. 16-bit storage supports prime moduli up to 65521.
using Symbol = std::uint16_t;
using SymbolSeq = std::vector<Symbol>;

bool is_prime(std::uint32_t n);

/// Smallest prime >= n.
std::uint32_t smallest_prime_geq(std::uint32_t n);

/// Prime field GF(q). All symbols are kept reduced to [0, q).
struct FieldSpec {
    std::uint32_t q = 2;

    FieldSpec() = default;
    explicit FieldSpec(std::uint32_t modulus);

    Symbol reduce(std::uint64_t v) const { return static_cast<Symbol>(v % q); }
    Symbol add(Symbol a, Symbol b) const { return reduce(std::uint64_t(a) + b); }
    Symbol sub(Symbol a, Symbol b) const { return reduce(std::uint64_t(a) + q - b); }
    Symbol neg(Symbol a) const { return a == 0 ? Symbol(0) : Symbol(q - a); }
    Symbol mul(Symbol a, Symbol b) const { return reduce(std::uint64_t(a) * b); }
    Symbol pow(Symbol base, std::uint64_t e) const;
    Symbol inv(Symbol a) const;  // throws NoInverse on a == 0

    bool operator==(const FieldSpec& other) const { return q == other.q; }
};

/// Dense row-major matrix over GF(q).
struct FieldMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    SymbolSeq entries;

    FieldMatrix() = default;
    FieldMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, 0) {}

    Symbol& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
    Symbol at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }

    static FieldMatrix identity(std::size_t n);

    /// Appends the rows of `other` below this matrix (column counts must match).
    void append_rows(const FieldMatrix& other);
    void append_row(const Symbol* row, std::size_t n);
};

/// Reduced row-echelon form in place; returns the rank. Leftmost-nonzero
/// pivoting, deterministic output.
std::size_t rref(FieldMatrix& m, const FieldSpec& f, std::vector<std::size_t>* pivot_cols = nullptr);

std::size_t mat_rank(FieldMatrix m, const FieldSpec& f);

/// Solves the square system a*x = b. Throws CorruptShare if singular.
SymbolSeq solve_square(FieldMatrix a, SymbolSeq b, const FieldSpec& f);

/// (L, alpha) MDS code from a Vandermonde generator over GF(q).
struct MdsCodebook {
    std::size_t alpha = 0;
    std::size_t length = 0;  // L
    FieldSpec field;
    SymbolSeq points;        // b_1..b_L, pairwise distinct
    FieldMatrix generator;   // alpha x L, row r = points^r
};

/// Generator row r, column j is points[j]^r. Points must be pairwise distinct.
MdsCodebook vandermonde(std::size_t alpha, const SymbolSeq& points, const FieldSpec& f);

/// Default evaluation points 1..L (requires q > L).
MdsCodebook default_codebook(std::size_t alpha, std::size_t length, const FieldSpec& f);

/// Encodes alpha equal-length message stripes into L share streams:
/// share j is the symbolwise inner product of the stripes with generator column j.
std::vector<SymbolSeq> mds_encode(const std::vector<SymbolSeq>& stripes, const MdsCodebook& cb);

/// Inverse of mds_encode from any >= alpha shares, given as (1-based index, stream)
/// pairs. Extra shares are checked for consistency.
std::vector<SymbolSeq> mds_decode(const std::vector<std::pair<std::size_t, SymbolSeq>>& shares,
                                  const MdsCodebook& cb);

}  // namespace smdc
