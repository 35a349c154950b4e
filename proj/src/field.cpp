#include "smdc/field.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace smdc {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint32_t d = 3; std::uint64_t(d) * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::uint32_t smallest_prime_geq(std::uint32_t n) {
    std::uint32_t p = std::max<std::uint32_t>(n, 2);
    while (!is_prime(p)) ++p;
    return p;
}

FieldSpec::FieldSpec(std::uint32_t modulus) : q(modulus) {
    if (!is_prime(q))
        throw Error(Errc::DomainError, "field modulus " + std::to_string(q) + " is not prime");
    if (q > 65521)
        throw Error(Errc::DomainError, "field modulus exceeds 16-bit symbol storage");
}

Symbol FieldSpec::pow(Symbol base, std::uint64_t e) const {
    std::uint64_t acc = 1, b = base % q;
    while (e) {
        if (e & 1) acc = acc * b % q;
        b = b * b % q;
        e >>= 1;
    }
    return static_cast<Symbol>(acc);
}

Symbol FieldSpec::inv(Symbol a) const {
    if (a == 0) throw Error(Errc::NoInverse, "zero has no multiplicative inverse");
    return pow(a, q - 2);
}

FieldMatrix FieldMatrix::identity(std::size_t n) {
    FieldMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

void FieldMatrix::append_rows(const FieldMatrix& other) {
    if (rows == 0 && cols == 0) cols = other.cols;
    if (other.cols != cols)
        throw Error(Errc::ShapeError, "append_rows: column count mismatch");
    entries.insert(entries.end(), other.entries.begin(), other.entries.end());
    rows += other.rows;
}

void FieldMatrix::append_row(const Symbol* row, std::size_t n) {
    if (rows == 0 && cols == 0) cols = n;
    if (n != cols) throw Error(Errc::ShapeError, "append_row: length mismatch");
    entries.insert(entries.end(), row, row + n);
    ++rows;
}

std::size_t rref(FieldMatrix& m, const FieldSpec& f, std::vector<std::size_t>* pivot_cols) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
        std::size_t piv = rank;
        while (piv < m.rows && m.at(piv, col) == 0) ++piv;
        if (piv == m.rows) continue;
        if (piv != rank)
            for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(piv, c), m.at(rank, c));
        Symbol scale = f.inv(m.at(rank, col));
        for (std::size_t c = col; c < m.cols; ++c) m.at(rank, c) = f.mul(m.at(rank, c), scale);
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == rank || m.at(r, col) == 0) continue;
            Symbol factor = m.at(r, col);
            for (std::size_t c = col; c < m.cols; ++c)
                m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(rank, c)));
        }
        if (pivot_cols) pivot_cols->push_back(col);
        ++rank;
    }
    return rank;
}

std::size_t mat_rank(FieldMatrix m, const FieldSpec& f) { return rref(m, f); }

SymbolSeq solve_square(FieldMatrix a, SymbolSeq b, const FieldSpec& f) {
    if (a.rows != a.cols || b.size() != a.rows)
        throw Error(Errc::ShapeError, "solve_square: dimension mismatch");
    std::size_t n = a.rows;
    FieldMatrix aug(n, n + 1);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, n) = b[r];
    }
    std::vector<std::size_t> pivots;
    std::size_t rank = rref(aug, f, &pivots);
    if (rank < n || (rank > 0 && pivots.back() == n))
        throw Error(Errc::CorruptShare, "singular or inconsistent linear system");
    SymbolSeq x(n, 0);
    for (std::size_t r = 0; r < n; ++r) x[pivots[r]] = aug.at(r, n);
    return x;
}

MdsCodebook vandermonde(std::size_t alpha, const SymbolSeq& points, const FieldSpec& f) {
    std::size_t length = points.size();
    if (alpha < 1 || alpha > length)
        throw Error(Errc::DegenerateCode, "need L >= alpha >= 1");
    std::set<Symbol> distinct(points.begin(), points.end());
    if (distinct.size() != length)
        throw Error(Errc::DegenerateCode, "evaluation points must be pairwise distinct");
    MdsCodebook cb{alpha, length, f, points, FieldMatrix(alpha, length)};
    for (std::size_t r = 0; r < alpha; ++r)
        for (std::size_t j = 0; j < length; ++j)
            cb.generator.at(r, j) = f.pow(points[j] % f.q, r);
    return cb;
}

MdsCodebook default_codebook(std::size_t alpha, std::size_t length, const FieldSpec& f) {
    if (f.q <= length)
        throw Error(Errc::DegenerateCode, "need q > L for L distinct nonzero points");
    SymbolSeq points(length);
    for (std::size_t j = 0; j < length; ++j) points[j] = static_cast<Symbol>(j + 1);
    return vandermonde(alpha, points, f);
}

std::vector<SymbolSeq> mds_encode(const std::vector<SymbolSeq>& stripes, const MdsCodebook& cb) {
    if (stripes.size() != cb.alpha)
        throw Error(Errc::ShapeError, "stripe count must equal alpha");
    std::size_t n = stripes.empty() ? 0 : stripes[0].size();
    for (const auto& s : stripes)
        if (s.size() != n) throw Error(Errc::ShapeError, "stripes must have equal length");
    const FieldSpec& f = cb.field;
    std::vector<SymbolSeq> shares(cb.length, SymbolSeq(n, 0));
    for (std::size_t j = 0; j < cb.length; ++j)
        for (std::size_t t = 0; t < n; ++t) {
            std::uint64_t acc = 0;
            for (std::size_t r = 0; r < cb.alpha; ++r)
                acc += std::uint64_t(stripes[r][t]) * cb.generator.at(r, j);
            shares[j][t] = f.reduce(acc);
        }
    return shares;
}

std::vector<SymbolSeq> mds_decode(const std::vector<std::pair<std::size_t, SymbolSeq>>& shares,
                                  const MdsCodebook& cb) {
    std::vector<std::pair<std::size_t, const SymbolSeq*>> seen;
    for (const auto& [idx, stream] : shares) {
        if (idx < 1 || idx > cb.length)
            throw Error(Errc::ShapeError, "share index out of range");
        bool dup = false;
        for (auto& [i, p] : seen)
            if (i == idx) {
                if (*p != stream) throw Error(Errc::CorruptShare, "conflicting duplicate share");
                dup = true;
            }
        if (!dup) seen.emplace_back(idx, &stream);
    }
    if (seen.size() < cb.alpha)
        throw Error(Errc::InsufficientShares, "need at least alpha distinct shares");
    std::size_t n = seen[0].second->size();
    for (auto& [i, p] : seen)
        if (p->size() != n) throw Error(Errc::ShapeError, "share streams must have equal length");

    const FieldSpec& f = cb.field;
    FieldMatrix a(cb.alpha, cb.alpha);
    for (std::size_t r = 0; r < cb.alpha; ++r)
        for (std::size_t c = 0; c < cb.alpha; ++c)
            a.at(r, c) = cb.generator.at(c, seen[r].first - 1);

    std::vector<SymbolSeq> stripes(cb.alpha, SymbolSeq(n, 0));
    SymbolSeq b(cb.alpha);
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t r = 0; r < cb.alpha; ++r) b[r] = (*seen[r].second)[t];
        SymbolSeq x = solve_square(a, b, f);
        for (std::size_t r = 0; r < cb.alpha; ++r) stripes[r][t] = x[r];
    }
    // redundant shares must agree with the decoded message
    for (std::size_t k = cb.alpha; k < seen.size(); ++k) {
        std::size_t j = seen[k].first - 1;
        for (std::size_t t = 0; t < n; ++t) {
            std::uint64_t acc = 0;
            for (std::size_t r = 0; r < cb.alpha; ++r)
                acc += std::uint64_t(stripes[r][t]) * cb.generator.at(r, j);
            if (f.reduce(acc) != (*seen[k].second)[t])
                throw Error(Errc::CorruptShare, "redundant share inconsistent with decoded message");
        }
    }
    return stripes;
}

}  // namespace smdc
