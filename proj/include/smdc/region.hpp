#pragma once

#include <string>
#include <vector>

#include "smdc/rational.hpp"

namespace smdc {

/// Per-encoder rates, one entry per encoder.
using RateTuple = std::vector<Rational>;

/// Per-source entropies H(X_1)..H(X_L). Multilevel-secret-sharing profiles
/// keep the first s-1 entries at zero.
using EntropyProfile = std::vector<Rational>;

/// One linear constraint a . R >= b.
struct Inequality {
    std::vector<Rational> a;
    Rational b;
};

/// A rate region as a rational inequality system. Nonnegativity rows are
/// always included, so the recession cone is the nonnegative orthant.
struct RegionSpec {
    std::size_t dim = 0;
    std::vector<Inequality> inequalities;
    std::string label;
};

/// [x]^+ = max(x, 0).
Rational pos_part(const Rational& x);

/// Cyclic index sum on {1,2,3}: x + y, wrapped back by 3 when above 3.
int odot(int x, int y);

/// max(H2, H2/2 + H3).
Rational m_value(const Rational& h2, const Rational& h3);

/// R(L, k, H): every k-subset of rates sums to at least H.
RegionSpec region_rss(std::size_t L, std::size_t k, const Rational& h);

/// (L,1) superposition region: every rate at least the total entropy.
RegionSpec region_sup1(std::size_t L, const EntropyProfile& prof);

/// The full (3,2) multilevel secret sharing region R_1*.
RegionSpec region_mss32(const Rational& h2, const Rational& h3);

enum class Mss32Case { I, II, III, IV };

/// Which achievability case (H2, H3) falls into.
Mss32Case mss32_case(const Rational& h2, const Rational& h3);

/// The full (3,2) sliding secure SMDC region R_2*.
RegionSpec region_smdc32(const Rational& h1, const Rational& h2, const Rational& h3);

enum class Variant { Mss, Sliding };

/// Minimum achievable sum rate: sum over levels of (L/alpha) H_alpha
/// (levels s..L for mss, 1..L for sliding).
Rational min_sum_rate(std::size_t L, std::size_t s, const EntropyProfile& prof, Variant variant);

/// Sum-rate bound of the per-source superposition region.
Rational sup_sum_rate(std::size_t L, std::size_t s, const EntropyProfile& prof, Variant variant);

/// Exact membership test.
bool member(const RegionSpec& reg, const RateTuple& r);

/// All extreme points of a 3-dimensional region, deduplicated, in
/// lexicographic order.
std::vector<RateTuple> corners3(const RegionSpec& reg);

/// outer contains inner, decided on inner's corners (valid because both
/// recession cones are the nonnegative orthant). Optionally reports a
/// witness corner of inner outside outer.
bool contains3(const RegionSpec& outer, const RegionSpec& inner, RateTuple* witness = nullptr);

}  // namespace smdc
