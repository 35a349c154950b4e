#include "smdc/region.hpp"

#include <algorithm>

namespace smdc {

Rational pos_part(const Rational& x) { return x > Rational(0) ? x : Rational(0); }

int odot(int x, int y) {
    if (x < 1 || x > 3 || y < 1 || y > 3)
        throw Error(Errc::DomainError, "odot operands must lie in {1,2,3}");
    int v = x + y;
    return v <= 3 ? v : v - 3;
}

Rational m_value(const Rational& h2, const Rational& h3) {
    return rational_max(h2, h2 / Rational(2) + h3);
}

namespace {

void add_nonnegativity(RegionSpec& reg) {
    for (std::size_t i = 0; i < reg.dim; ++i) {
        Inequality ineq;
        ineq.a.assign(reg.dim, Rational(0));
        ineq.a[i] = Rational(1);
        ineq.b = Rational(0);
        reg.inequalities.push_back(std::move(ineq));
    }
}

void add_row(RegionSpec& reg, std::vector<Rational> a, Rational b) {
    reg.inequalities.push_back({std::move(a), std::move(b)});
}

// All 3-variable rows of the shared (3,2) family, shifted by a base offset
// per row class. mss32 uses zero shifts; smdc32 adds the X_1 load.
void add_32_rows(RegionSpec& reg, const Rational& h2, const Rational& h3,
                 const Rational& shift2, const Rational& shift1) {
    const Rational half(1, 2);
    // 2R_i + R_j >= H2 + H3 (+ 3 H1)
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            if (i == j) continue;
            std::vector<Rational> a(3, Rational(0));
            a[i - 1] = Rational(2);
            a[j - 1] = Rational(1);
            add_row(reg, std::move(a), h2 + h3 + Rational(3) * shift1);
        }
    // R_i + R_j >= H2/2 + H3 (+ 2 H1)
    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j) {
            std::vector<Rational> a(3, Rational(0));
            a[i - 1] = Rational(1);
            a[j - 1] = Rational(1);
            add_row(reg, std::move(a), half * h2 + h3 + Rational(2) * shift1);
        }
    // R_i + R_j >= H2 (+ 2 H1); retained even when dominated
    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j) {
            std::vector<Rational> a(3, Rational(0));
            a[i - 1] = Rational(1);
            a[j - 1] = Rational(1);
            add_row(reg, std::move(a), h2 + Rational(2) * shift1);
        }
    // R_1 + R_2 + R_3 >= (3/2) H2 + H3 (+ 3 H1)
    add_row(reg, {Rational(1), Rational(1), Rational(1)},
            Rational(3, 2) * h2 + h3 + Rational(3) * shift1);
    // 2R_i + R_{i(+)1} + R_{i(+)2} >= 2 H2 + H3 (+ 4 H1)
    for (int i = 1; i <= 3; ++i) {
        std::vector<Rational> a(3, Rational(0));
        a[i - 1] = Rational(2);
        a[odot(i, 1) - 1] += Rational(1);
        a[odot(i, 2) - 1] += Rational(1);
        add_row(reg, std::move(a), Rational(2) * h2 + h3 + Rational(4) * shift1);
    }
    (void)shift2;
}

}  // namespace

RegionSpec region_rss(std::size_t L, std::size_t k, const Rational& h) {
    if (k < 1 || k > L) throw Error(Errc::DomainError, "region_rss needs 1 <= k <= L");
    if (h < Rational(0)) throw Error(Errc::DomainError, "negative entropy");
    RegionSpec reg;
    reg.dim = L;
    reg.label = "rss(L=" + std::to_string(L) + ",k=" + std::to_string(k) + ")";
    // every k-subset
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        std::vector<Rational> a(L, Rational(0));
        for (std::size_t i : idx) a[i] = Rational(1);
        add_row(reg, std::move(a), h);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == L - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    add_nonnegativity(reg);
    return reg;
}

RegionSpec region_sup1(std::size_t L, const EntropyProfile& prof) {
    if (prof.size() != L) throw Error(Errc::ShapeError, "entropy profile length must be L");
    Rational total(0);
    for (const auto& h : prof) total += h;
    RegionSpec reg;
    reg.dim = L;
    reg.label = "sup1(L=" + std::to_string(L) + ")";
    for (std::size_t i = 0; i < L; ++i) {
        std::vector<Rational> a(L, Rational(0));
        a[i] = Rational(1);
        add_row(reg, std::move(a), total);
    }
    add_nonnegativity(reg);
    return reg;
}

RegionSpec region_mss32(const Rational& h2, const Rational& h3) {
    if (h2 < Rational(0) || h3 < Rational(0))
        throw Error(Errc::DomainError, "negative entropy");
    RegionSpec reg;
    reg.dim = 3;
    reg.label = "mss32";
    add_32_rows(reg, h2, h3, Rational(0), Rational(0));
    add_nonnegativity(reg);
    return reg;
}

Mss32Case mss32_case(const Rational& h2, const Rational& h3) {
    if (h2 < Rational(0) || h3 < Rational(0))
        throw Error(Errc::DomainError, "negative entropy");
    if (h2 == Rational(0) && h3 == Rational(0))
        throw Error(Errc::DegenerateProfile, "H2 = H3 = 0 has no case");
    if (h2 < Rational(2, 3) * h3) return Mss32Case::I;
    if (h2 < h3) return Mss32Case::II;
    if (h2 < Rational(2) * h3) return Mss32Case::III;
    return Mss32Case::IV;
}

RegionSpec region_smdc32(const Rational& h1, const Rational& h2, const Rational& h3) {
    if (h1 < Rational(0) || h2 < Rational(0) || h3 < Rational(0))
        throw Error(Errc::DomainError, "negative entropy");
    RegionSpec reg;
    reg.dim = 3;
    reg.label = "smdc32";
    // R_i >= H1
    for (int i = 1; i <= 3; ++i) {
        std::vector<Rational> a(3, Rational(0));
        a[i - 1] = Rational(1);
        add_row(reg, std::move(a), h1);
    }
    add_32_rows(reg, h2, h3, Rational(0), h1);
    add_nonnegativity(reg);
    return reg;
}

Rational min_sum_rate(std::size_t L, std::size_t s, const EntropyProfile& prof, Variant variant) {
    if (s < 1 || s > L) throw Error(Errc::DomainError, "need 1 <= s <= L");
    if (prof.size() != L) throw Error(Errc::ShapeError, "entropy profile length must be L");
    std::size_t start = variant == Variant::Mss ? s : 1;
    if (variant == Variant::Mss)
        for (std::size_t a = 1; a < s; ++a)
            if (prof[a - 1] != Rational(0))
                throw Error(Errc::DomainError, "mss profile needs H_1..H_{s-1} = 0");
    Rational total(0);
    for (std::size_t a = start; a <= L; ++a)
        total += Rational(std::int64_t(L), std::int64_t(a)) * prof[a - 1];
    return total;
}

Rational sup_sum_rate(std::size_t L, std::size_t s, const EntropyProfile& prof, Variant variant) {
    if (s < 1 || s > L) throw Error(Errc::DomainError, "need 1 <= s <= L");
    if (prof.size() != L) throw Error(Errc::ShapeError, "entropy profile length must be L");
    Rational total(0);
    for (std::size_t a = 1; a <= L; ++a) {
        if (variant == Variant::Mss && a < s) {
            if (prof[a - 1] != Rational(0))
                throw Error(Errc::DomainError, "mss profile needs H_1..H_{s-1} = 0");
            continue;
        }
        std::size_t denom = a < s ? a : s;
        total += Rational(std::int64_t(L), std::int64_t(denom)) * prof[a - 1];
    }
    return total;
}

bool member(const RegionSpec& reg, const RateTuple& r) {
    if (r.size() != reg.dim) throw Error(Errc::ShapeError, "rate tuple dimension mismatch");
    for (const auto& ineq : reg.inequalities) {
        Rational lhs(0);
        for (std::size_t i = 0; i < reg.dim; ++i) lhs += ineq.a[i] * r[i];
        if (lhs < ineq.b) return false;
    }
    return true;
}

namespace {

// Cramer solve of the 3x3 system formed by three rows, taken as equalities.
bool solve3(const Inequality& r0, const Inequality& r1, const Inequality& r2, RateTuple& out) {
    const std::vector<Rational>* rows[3] = {&r0.a, &r1.a, &r2.a};
    Rational b[3] = {r0.b, r1.b, r2.b};
    auto det = [&](const Rational m[3][3]) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    Rational m[3][3];
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m[r][c] = (*rows[r])[c];
    Rational d = det(m);
    if (d == Rational(0)) return false;
    out.assign(3, Rational(0));
    for (int c = 0; c < 3; ++c) {
        Rational mc[3][3];
        for (int r = 0; r < 3; ++r)
            for (int k = 0; k < 3; ++k) mc[r][k] = k == c ? b[r] : m[r][k];
        out[c] = det(mc) / d;
    }
    return true;
}

bool lex_less(const RateTuple& a, const RateTuple& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return false;
}

}  // namespace

std::vector<RateTuple> corners3(const RegionSpec& reg) {
    if (reg.dim != 3) throw Error(Errc::Unsupported, "corner enumeration only for dimension 3");
    std::vector<RateTuple> corners;
    std::size_t n = reg.inequalities.size();
    RateTuple p;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                if (!solve3(reg.inequalities[i], reg.inequalities[j], reg.inequalities[k], p))
                    continue;
                if (!member(reg, p)) continue;
                if (std::find(corners.begin(), corners.end(), p) == corners.end())
                    corners.push_back(p);
            }
    std::sort(corners.begin(), corners.end(), lex_less);
    return corners;
}

bool contains3(const RegionSpec& outer, const RegionSpec& inner, RateTuple* witness) {
    if (outer.dim != 3 || inner.dim != 3)
        throw Error(Errc::Unsupported, "containment test only for dimension 3");
    for (const auto& corner : corners3(inner)) {
        if (!member(outer, corner)) {
            if (witness) *witness = corner;
            return false;
        }
    }
    return true;
}

}  // namespace smdc
