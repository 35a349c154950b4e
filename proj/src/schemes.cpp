#include "smdc/schemes.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

namespace smdc {

namespace {

std::uint64_t ceil_to_multiple(std::uint64_t v, std::uint64_t m) {
    if (m == 0) return v;
    return (v + m - 1) / m * m;
}

std::size_t cyc(std::size_t l, std::size_t i, std::size_t L) { return (l - 1 + i) % L + 1; }

SymbolSeq slice(const SymbolSeq& x, std::size_t off, std::size_t len) {
    if (off + len > x.size()) throw Error(Errc::ShapeError, "slice out of range");
    return SymbolSeq(x.begin() + off, x.begin() + off + len);
}

void add_into(SymbolSeq& dst, const SymbolSeq& src, std::size_t src_off, const FieldSpec& f) {
    if (src_off + dst.size() > src.size())
        throw Error(Errc::ShapeError, "mask shorter than masked stream");
    for (std::size_t t = 0; t < dst.size(); ++t) dst[t] = f.add(dst[t], src[src_off + t]);
}

std::vector<SymbolSeq> split_even(const SymbolSeq& x, std::size_t n) {
    std::vector<SymbolSeq> out(n);
    if (n == 0) return out;
    std::size_t piece = x.size() / n;
    for (std::size_t i = 0; i < n; ++i) out[i] = slice(x, i * piece, piece);
    return out;
}

/// The L level streams of x under the (L, alpha) code; |x| must be a
/// multiple of alpha.
std::vector<SymbolSeq> level_streams(const SymbolSeq& x, std::size_t alpha, std::size_t L,
                                     const FieldSpec& f) {
    if (x.empty()) return std::vector<SymbolSeq>(L);
    return mds_encode(split_even(x, alpha), default_codebook(alpha, L, f));
}

SymbolSeq join(const std::vector<SymbolSeq>& pieces) {
    SymbolSeq out;
    for (const auto& p : pieces) out.insert(out.end(), p.begin(), p.end());
    return out;
}

std::string profile_str(const std::vector<std::uint64_t>& lengths) {
    std::string s = "(";
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(lengths[i]);
    }
    return s + ")";
}

}  // namespace

void SourceProfile::validate() const {
    if (L < 1) throw Error(Errc::BadConfig, "need L >= 1");
    if (s < 1 || s > L) throw Error(Errc::BadConfig, "need 1 <= s <= L");
    if (lengths.size() != L) throw Error(Errc::BadConfig, "lengths must have L entries");
    FieldSpec f(q);  // validates primality; codebook-based schemes also need q > L
    if (mode == Mode::Mss)
        for (std::size_t a = 1; a < s; ++a)
            if (lengths[a - 1] != 0)
                throw Error(Errc::BadConfig, "levels below s must be empty in mss mode");
}

std::uint64_t SourceProfile::total_source_symbols() const {
    std::uint64_t n = 0;
    for (auto l : lengths) n += l;
    return n;
}

const char* scheme_name(SchemeId id) {
    switch (id) {
        case SchemeId::Threshold: return "threshold";
        case SchemeId::Ramp: return "ramp";
        case SchemeId::Sup1: return "sup1";
        case SchemeId::MssGeneral: return "general";
        case SchemeId::MssChain: return "chain";
        case SchemeId::MssHybrid: return "hybrid";
        case SchemeId::PseudoSup: return "pseudo-sup";
        case SchemeId::CornerQ1: return "corner:Q1";
        case SchemeId::CornerP1: return "corner:P1";
        case SchemeId::CornerO: return "corner:O";
        case SchemeId::CornerS1: return "corner:S1";
        case SchemeId::CornerT1: return "corner:T1";
        case SchemeId::CornerS4: return "corner:S4";
        case SchemeId::CornerT4: return "corner:T4";
        case SchemeId::CornerS10: return "corner:S10";
    }
    return "unknown";
}

SchemeId scheme_from_name(const std::string& name) {
    for (int i = 0; i <= int(SchemeId::CornerS10); ++i)
        if (name == scheme_name(SchemeId(i))) return SchemeId(i);
    throw Error(Errc::BadConfig, "unknown scheme '" + name + "'");
}

bool is_corner(SchemeId id) { return id >= SchemeId::CornerQ1 && id <= SchemeId::CornerS10; }

KeyMaterial make_key(std::size_t len, std::uint32_t q, std::uint64_t seed) {
    FieldSpec f(q);
    std::mt19937_64 rng(seed);
    KeyMaterial key;
    key.seed = seed;
    key.symbols.reserve(len);
    std::uint64_t bound = ~std::uint64_t(0) - (~std::uint64_t(0) % q);
    while (key.symbols.size() < len) {
        std::uint64_t v = rng();
        if (v < bound) key.symbols.push_back(static_cast<Symbol>(v % q));
    }
    return key;
}

RateTuple measured_rates(const ShareBundle& bundle) {
    RateTuple rates;
    for (const auto& share : bundle.shares) {
        std::uint64_t n = 0;
        for (const auto& layer : share) n += layer.symbols.size();
        rates.push_back(Rational(std::int64_t(n)));
    }
    return rates;
}

ShareBundle ramp_share(const SymbolSeq& x, std::size_t c, std::size_t k, std::size_t L,
                       const FieldSpec& f, const SymbolSeq& key) {
    if (k < 1 || k > L) throw Error(Errc::BadThreshold, "need 1 <= k <= L");
    if (c >= k) throw Error(Errc::BadThreshold, "need c < k");
    std::size_t kc = k - c;
    if (x.size() % kc != 0)
        throw Error(Errc::PaddingRequired,
                    "secret length must be a multiple of " + std::to_string(kc) +
                        "; minimal conforming length " +
                        std::to_string(ceil_to_multiple(x.size(), kc)));
    std::size_t n = x.size() / kc;
    if (key.size() != c * n) throw Error(Errc::ShapeError, "key length must be c|x|/(k-c)");

    std::vector<SymbolSeq> stripes(k, SymbolSeq(n));
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t r = 0; r < kc; ++r) stripes[r][t] = x[t * kc + r];
        for (std::size_t j = 0; j < c; ++j) stripes[kc + j][t] = key[t * c + j];
    }
    auto streams = mds_encode(stripes, default_codebook(k, L, f));

    ShareBundle bundle;
    bundle.scheme = c + 1 == k ? SchemeId::Threshold : SchemeId::Ramp;
    bundle.profile.L = L;
    bundle.profile.s = kc;
    bundle.profile.q = f.q;
    bundle.profile.mode = Mode::Mss;
    bundle.profile.lengths.assign(L, 0);
    bundle.profile.lengths[k - 1] = x.size();
    for (std::size_t l = 0; l < L; ++l)
        bundle.shares.push_back({ShareLayer{k, std::move(streams[l])}});
    return bundle;
}

ShareBundle threshold_share(const SymbolSeq& x, std::size_t k, std::size_t L, const FieldSpec& f,
                            const SymbolSeq& key) {
    return ramp_share(x, k - 1, k, L, f, key);
}

SymbolSeq ramp_decode(const std::vector<std::pair<std::size_t, SymbolSeq>>& shares, std::size_t c,
                      std::size_t k, std::size_t L, const FieldSpec& f) {
    if (k < 1 || k > L) throw Error(Errc::BadThreshold, "need 1 <= k <= L");
    if (c >= k) throw Error(Errc::BadThreshold, "need c < k");
    auto stripes = mds_decode(shares, default_codebook(k, L, f));
    std::size_t kc = k - c;
    std::size_t n = stripes[0].size();
    SymbolSeq x(n * kc);
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t r = 0; r < kc; ++r) x[t * kc + r] = stripes[r][t];
    return x;
}

namespace {

// ---- general scheme (sub-partitioned key chaining) ----

void require_general(const SourceProfile& p) {
    std::size_t L = p.L, s = p.s;
    bool ok = true;
    for (std::size_t a = s; a <= L && ok; ++a) {
        std::uint64_t la = p.lengths[a - 1];
        if (la % a != 0 || (la / a) % (L * (a - s + 1)) != 0) ok = false;
    }
    for (std::size_t a = s + 1; a <= L && ok; ++a) {
        std::uint64_t la = p.lengths[a - 1], lp = p.lengths[a - 2];
        if (lp / (a - 1) < L * (a - s) * (la / a)) ok = false;
    }
    if (ok) return;
    // minimal conforming profile, fixed top-down since the chain condition
    // only constrains lower levels from above
    std::vector<std::uint64_t> fixed(p.lengths);
    for (std::size_t a = L; a >= s; --a) {
        std::uint64_t d = a * L * (a - s + 1);
        std::uint64_t need = p.lengths[a - 1];
        if (a < L) {
            std::uint64_t bound = a * L * (a + 1 - s) * (fixed[a] / (a + 1));
            need = std::max(need, bound);
        }
        fixed[a - 1] = ceil_to_multiple(need, d);
        if (a == s) break;
    }
    throw Error(Errc::PaddingRequired,
                "lengths do not satisfy the sub-partitioned chaining conditions; minimal "
                "conforming profile " +
                    profile_str(fixed));
}

ShareBundle general_encode(const SourceProfile& p, const std::vector<SymbolSeq>& sources) {
    FieldSpec f(p.q);
    std::size_t L = p.L, s = p.s;
    std::vector<std::vector<SymbolSeq>> streams(L + 1);
    for (std::size_t a = s; a <= L; ++a) streams[a] = level_streams(sources[a - 1], a, L, f);

    ShareBundle bundle;
    bundle.profile = p;
    bundle.scheme = SchemeId::MssGeneral;
    for (std::size_t l = 1; l <= L; ++l) {
        EncoderOutput out;
        for (std::size_t a = s; a <= L; ++a) {
            std::size_t m = p.lengths[a - 1] / a;
            SymbolSeq layer = streams[a][l - 1];
            if (m > 0)
                for (std::size_t i = 1; i <= a - s; ++i) {
                    std::size_t j = cyc(l, i, L);
                    std::size_t piece = (l - 1) * (a - s) + i;
                    add_into(layer, streams[a - 1][j - 1], (piece - 1) * m, f);
                }
            out.push_back(ShareLayer{a, std::move(layer)});
        }
        bundle.shares.push_back(std::move(out));
    }
    return bundle;
}

// ---- chain scheme (whole-stream key chaining, L < 2s) ----

void require_chain(const SourceProfile& p) {
    if (p.L >= 2 * p.s)
        throw Error(Errc::WrongScheme, "whole-stream chaining requires L < 2s");
    bool ok = true;
    for (std::size_t a = p.s; a <= p.L; ++a)
        if (p.lengths[a - 1] % a != 0) ok = false;
    if (!ok) {
        std::vector<std::uint64_t> fixed(p.lengths);
        for (std::size_t a = p.s; a <= p.L; ++a)
            fixed[a - 1] = ceil_to_multiple(fixed[a - 1], a);
        throw Error(Errc::PaddingRequired,
                    "each level length must be a multiple of its level; minimal conforming "
                    "profile " +
                        profile_str(fixed));
    }
    for (std::size_t a = p.s + 1; a <= p.L; ++a)
        if (p.lengths[a - 2] / (a - 1) < p.lengths[a - 1] / a)
            throw Error(Errc::KeyDeficit,
                        "level " + std::to_string(a - 1) +
                            " is too short to mask level " + std::to_string(a) +
                            "; use the hybrid scheme");
}

ShareBundle chain_encode(const SourceProfile& p, const std::vector<SymbolSeq>& sources) {
    FieldSpec f(p.q);
    std::size_t L = p.L, s = p.s;
    std::vector<std::vector<SymbolSeq>> streams(L + 1);
    for (std::size_t a = s; a <= L; ++a) streams[a] = level_streams(sources[a - 1], a, L, f);

    ShareBundle bundle;
    bundle.profile = p;
    bundle.scheme = SchemeId::MssChain;
    for (std::size_t l = 1; l <= L; ++l) {
        EncoderOutput out;
        for (std::size_t a = s; a <= L; ++a) {
            SymbolSeq layer = streams[a][l - 1];
            if (a > s && !layer.empty()) add_into(layer, streams[a - 1][cyc(l, 1, L) - 1], 0, f);
            out.push_back(ShareLayer{a, std::move(layer)});
        }
        bundle.shares.push_back(std::move(out));
    }
    return bundle;
}

// ---- hybrid scheme (chaining with ramp fallback on key deficit) ----

struct HybridPlan {
    // per level s..L: chained symbol count of X_alpha and ramp remainder
    std::vector<std::uint64_t> chained;  // index alpha-1
    std::vector<std::uint64_t> remainder;
    std::vector<std::uint64_t> key_stream_len;  // e_alpha
    std::size_t key_total = 0;
};

HybridPlan hybrid_plan(const SourceProfile& p) {
    if (p.L >= 2 * p.s) throw Error(Errc::WrongScheme, "hybrid chaining requires L < 2s");
    std::size_t L = p.L, s = p.s;
    HybridPlan plan;
    plan.chained.assign(L, 0);
    plan.remainder.assign(L, 0);
    plan.key_stream_len.assign(L, 0);
    if (p.lengths[s - 1] % s != 0)
        throw Error(Errc::PaddingRequired,
                    "level " + std::to_string(s) + " length must be a multiple of " +
                        std::to_string(s) + "; minimal conforming length " +
                        std::to_string(ceil_to_multiple(p.lengths[s - 1], s)));
    plan.chained[s - 1] = p.lengths[s - 1];
    plan.key_stream_len[s - 1] = p.lengths[s - 1] / s;
    for (std::size_t a = s + 1; a <= L; ++a) {
        std::uint64_t la = p.lengths[a - 1];
        std::uint64_t e = plan.key_stream_len[a - 2];
        if (la <= a * e) {
            if (la % a != 0)
                throw Error(Errc::PaddingRequired,
                            "level " + std::to_string(a) + " length must be a multiple of " +
                                std::to_string(a) + "; minimal conforming length " +
                                std::to_string(ceil_to_multiple(la, a)));
            plan.chained[a - 1] = la;
            plan.key_stream_len[a - 1] = la / a;
        } else {
            std::uint64_t rem = la - a * e;
            if (rem % s != 0)
                throw Error(Errc::PaddingRequired,
                            "ramp remainder of level " + std::to_string(a) + " is " +
                                std::to_string(rem) + " symbols, not a multiple of " +
                                std::to_string(s) + "; minimal conforming length " +
                                std::to_string(a * e + ceil_to_multiple(rem, s)));
            plan.chained[a - 1] = a * e;
            plan.remainder[a - 1] = rem;
            plan.key_stream_len[a - 1] = e;
            plan.key_total += (a - s) * rem / s;
        }
    }
    return plan;
}

ShareBundle hybrid_encode(const SourceProfile& p, const std::vector<SymbolSeq>& sources,
                          const SymbolSeq& key) {
    FieldSpec f(p.q);
    std::size_t L = p.L, s = p.s;
    HybridPlan plan = hybrid_plan(p);

    ShareBundle bundle;
    bundle.profile = p;
    bundle.scheme = SchemeId::MssHybrid;
    bundle.shares.resize(L);

    std::vector<SymbolSeq> key_streams;  // level alpha-1 chained streams
    std::size_t key_off = 0;
    for (std::size_t a = s; a <= L; ++a) {
        const SymbolSeq& x = sources[a - 1];
        SymbolSeq chained_part = slice(x, 0, plan.chained[a - 1]);
        std::vector<SymbolSeq> streams =
            chained_part.empty() ? std::vector<SymbolSeq>(L)
                                 : mds_encode(split_even(chained_part, a),
                                              default_codebook(a, L, f));
        std::vector<SymbolSeq> ramp_streams(L);
        if (plan.remainder[a - 1] > 0) {
            SymbolSeq rem = slice(x, plan.chained[a - 1], plan.remainder[a - 1]);
            std::size_t klen = (a - s) * plan.remainder[a - 1] / s;
            SymbolSeq rkey = slice(key, key_off, klen);
            key_off += klen;
            ShareBundle rb = ramp_share(rem, a - s, a, L, f, rkey);
            for (std::size_t l = 0; l < L; ++l) ramp_streams[l] = rb.shares[l][0].symbols;
        }
        for (std::size_t l = 1; l <= L; ++l) {
            SymbolSeq layer = streams[l - 1];
            if (a > s && !layer.empty()) add_into(layer, key_streams[cyc(l, 1, L) - 1], 0, f);
            layer.insert(layer.end(), ramp_streams[l - 1].begin(), ramp_streams[l - 1].end());
            bundle.shares[l - 1].push_back(ShareLayer{a, std::move(layer)});
        }
        key_streams = std::move(streams);
    }
    return bundle;
}

// ---- (L,1) per-level threshold superposition ----

void require_sup1(const SourceProfile& p) {
    if (p.s != 1) throw Error(Errc::WrongScheme, "per-level threshold scheme requires s = 1");
}

std::size_t sup1_key_length(const SourceProfile& p) {
    std::size_t n = 0;
    for (std::size_t a = 1; a <= p.L; ++a) n += (a - 1) * p.lengths[a - 1];
    return n;
}

ShareBundle sup1_encode(const SourceProfile& p, const std::vector<SymbolSeq>& sources,
                        const SymbolSeq& key) {
    FieldSpec f(p.q);
    ShareBundle bundle;
    bundle.profile = p;
    bundle.scheme = SchemeId::Sup1;
    bundle.shares.resize(p.L);
    std::size_t key_off = 0;
    for (std::size_t a = 1; a <= p.L; ++a) {
        std::size_t klen = (a - 1) * p.lengths[a - 1];
        SymbolSeq akey = slice(key, key_off, klen);
        key_off += klen;
        if (p.lengths[a - 1] == 0) {
            for (std::size_t l = 0; l < p.L; ++l)
                bundle.shares[l].push_back(ShareLayer{a, {}});
            continue;
        }
        ShareBundle tb = threshold_share(sources[a - 1], a, p.L, f, akey);
        for (std::size_t l = 0; l < p.L; ++l)
            bundle.shares[l].push_back(ShareLayer{a, std::move(tb.shares[l][0].symbols)});
    }
    return bundle;
}

// ---- corner schemes over GF(2) ----

void require_corner(const SourceProfile& p, SchemeId id) {
    if (p.q != 2) throw Error(Errc::BadConfig, "corner schemes are defined over GF(2)");
    if (p.L != 3 || p.s != 2 || p.mode != Mode::Mss)
        throw Error(Errc::BadConfig, "corner schemes are (3,2) multilevel instances");
    std::uint64_t l2 = p.lengths[1], l3 = p.lengths[2];
    auto fail = [&](const std::string& cond) {
        throw Error(Errc::CornerUnavailable,
                    std::string(scheme_name(id)) + " requires " + cond);
    };
    switch (id) {
        case SchemeId::CornerQ1:
            break;
        case SchemeId::CornerP1:
            if (l2 % 2 != 0) fail("l2 even");
            if (l3 < l2) fail("l2 <= l3");
            break;
        case SchemeId::CornerO:
            if (l2 % 2 != 0) fail("l2 even");
            if (2 * l3 <= 3 * l2) fail("3*l2 < 2*l3");
            if ((2 * l3 - 3 * l2) % 4 != 0) fail("l3/2 - 3*l2/4 integral");
            break;
        case SchemeId::CornerS1:
            if (l2 % 2 != 0) fail("l2 even");
            if (l3 <= l2) fail("l2 < l3");
            if (2 * l3 > 3 * l2) fail("2*l3 <= 3*l2");
            break;
        case SchemeId::CornerT1:
            if (l3 % 2 != 0) fail("l3 even");
            if (l3 > l2) fail("l3 <= l2");
            break;
        case SchemeId::CornerS4:
            if (l2 % 2 != 0) fail("l2 even");
            if (l3 > l2) fail("l3 <= l2");
            if (2 * l3 < l2) fail("l2 <= 2*l3");
            break;
        case SchemeId::CornerT4:
            if (2 * l3 > l2) fail("2*l3 <= l2");
            break;
        case SchemeId::CornerS10:
            if (l2 % 2 != 0) fail("l2 even");
            if (2 * l3 > l2) fail("2*l3 <= l2");
            break;
        default:
            throw Error(Errc::BadConfig, "not a corner scheme");
    }
}

std::size_t corner_key_length(const SourceProfile& p, SchemeId id) {
    std::uint64_t l2 = p.lengths[1], l3 = p.lengths[2];
    switch (id) {
        case SchemeId::CornerQ1: return l3;
        case SchemeId::CornerP1: return l3 - l2;
        case SchemeId::CornerO: return (2 * l3 - 3 * l2) / 4;
        default: return 0;
    }
}

ShareBundle corner_encode(const SourceProfile& p, SchemeId id,
                          const std::vector<SymbolSeq>& sources, const SymbolSeq& key) {
    FieldSpec f(p.q);
    std::uint64_t l2 = p.lengths[1], l3 = p.lengths[2];
    const SymbolSeq& x2 = sources[1];
    const SymbolSeq& x3 = sources[2];
    auto x = [&](SymbolSeq a, const SymbolSeq& b) {
        add_into(a, b, 0, f);
        return a;
    };
    auto cat = [](std::initializer_list<SymbolSeq> parts) {
        SymbolSeq out;
        for (const auto& part : parts) out.insert(out.end(), part.begin(), part.end());
        return out;
    };
    std::size_t h = l2 / 2;
    SymbolSeq w1, w2, w3;
    switch (id) {
        case SchemeId::CornerQ1: {
            w2 = cat({x2, key});
            w3 = cat({x2, x(x3, key)});
            break;
        }
        case SchemeId::CornerP1: {
            SymbolSeq a2 = slice(x2, 0, h), b2 = slice(x2, h, h);
            SymbolSeq a3 = slice(x3, 0, h), b3 = slice(x3, h, h), c3 = slice(x3, l2, l3 - l2);
            w1 = x(a2, b2);
            w2 = cat({a2, x(a3, b2), key});
            w3 = cat({b2, x(b3, a2), x(c3, key)});
            break;
        }
        case SchemeId::CornerO: {
            std::size_t t = (2 * l3 - 3 * l2) / 4;
            SymbolSeq a2 = slice(x2, 0, h), b2 = slice(x2, h, h);
            SymbolSeq a3 = slice(x3, 0, h), b3 = slice(x3, h, h), c3 = slice(x3, 2 * h, h);
            SymbolSeq d3 = slice(x3, 3 * h, t), e3 = slice(x3, 3 * h + t, t);
            w1 = cat({x(a2, b2), x(a3, a2), key});
            w2 = cat({a2, x(b3, b2), x(d3, key)});
            w3 = cat({b2, x(c3, a2), x(e3, key)});
            break;
        }
        case SchemeId::CornerS1: {
            SymbolSeq a2 = slice(x2, 0, h), b2 = slice(x2, h, h);
            SymbolSeq a3 = slice(x3, 0, h), b3 = slice(x3, h, h), c3 = slice(x3, l2, l3 - l2);
            SymbolSeq a21 = slice(a2, 0, l3 - l2);
            w1 = cat({x(a2, b2), x(c3, a21)});
            w2 = cat({a2, x(a3, b2)});
            w3 = cat({b2, x(b3, a2)});
            break;
        }
        case SchemeId::CornerT1: {
            std::size_t g = l3 / 2;
            SymbolSeq a2 = slice(x2, 0, g), b2 = slice(x2, g, g), c2 = slice(x2, l3, l2 - l3);
            SymbolSeq a3 = slice(x3, 0, g), b3 = slice(x3, g, g);
            w1 = x(a2, b2);
            w2 = cat({a2, c2, x(a3, b2)});
            w3 = cat({b2, c2, x(b3, a2)});
            break;
        }
        case SchemeId::CornerS4: {
            SymbolSeq a2 = slice(x2, 0, h), b2 = slice(x2, h, h);
            SymbolSeq a3 = slice(x3, 0, h), b3 = slice(x3, h, l3 - h);
            SymbolSeq a21 = slice(a2, 0, l3 - h);
            w1 = x(a2, b2);
            w2 = cat({a2, x(a3, b2)});
            w3 = cat({b2, x(b3, a21)});
            break;
        }
        case SchemeId::CornerT4: {
            SymbolSeq a2 = slice(x2, 0, l3), b2 = slice(x2, l3, l3);
            SymbolSeq c2 = slice(x2, 2 * l3, l2 - 2 * l3);
            w1 = x(a2, b2);
            w2 = cat({a2, c2, x(x3, b2)});
            w3 = cat({b2, c2});
            break;
        }
        case SchemeId::CornerS10: {
            SymbolSeq a2 = slice(x2, 0, h), b2 = slice(x2, h, h);
            SymbolSeq b21 = slice(b2, 0, l3);
            w1 = x(a2, b2);
            w2 = cat({a2, x(x3, b21)});
            w3 = b2;
            break;
        }
        default:
            throw Error(Errc::BadConfig, "not a corner scheme");
    }
    ShareBundle bundle;
    bundle.profile = p;
    bundle.scheme = id;
    bundle.shares = {{ShareLayer{0, std::move(w1)}},
                     {ShareLayer{0, std::move(w2)}},
                     {ShareLayer{0, std::move(w3)}}};
    return bundle;
}

// ---- pseudo-superposition for sliding instances ----

SchemeId pick_inner(const SourceProfile& inner) {
    if (inner.L < 2 * inner.s) {
        try {
            require_chain(inner);
            return SchemeId::MssChain;
        } catch (const Error& e) {
            if (e.code() == Errc::KeyDeficit) {
                hybrid_plan(inner);
                return SchemeId::MssHybrid;
            }
        }
    }
    require_general(inner);
    return SchemeId::MssGeneral;
}

SourceProfile inner_profile(const SourceProfile& p) {
    SourceProfile inner = p;
    inner.mode = Mode::Mss;
    for (std::size_t a = 1; a < p.s; ++a) inner.lengths[a - 1] = 0;
    return inner;
}

void require_pseudo(const SourceProfile& p) {
    if (p.mode != Mode::Sliding)
        throw Error(Errc::WrongScheme, "pseudo-superposition applies to sliding instances");
    if (p.s == 1) return;  // reduces to the per-level threshold scheme
    bool ok = true;
    for (std::size_t a = 1; a < p.s; ++a)
        if (p.lengths[a - 1] % a != 0) ok = false;
    if (!ok) {
        std::vector<std::uint64_t> fixed(p.lengths);
        for (std::size_t a = 1; a < p.s; ++a)
            fixed[a - 1] = ceil_to_multiple(fixed[a - 1], a);
        throw Error(Errc::PaddingRequired,
                    "each open level length must be a multiple of its level; minimal "
                    "conforming profile " +
                        profile_str(fixed));
    }
    pick_inner(inner_profile(p));
}

}  // namespace

std::size_t SchemeInstance::min_level() const {
    return profile.mode == Mode::Sliding ? 1 : profile.s;
}

std::size_t SchemeInstance::key_length() const {
    switch (scheme) {
        case SchemeId::Sup1: return sup1_key_length(profile);
        case SchemeId::MssGeneral:
        case SchemeId::MssChain: return 0;
        case SchemeId::MssHybrid: return hybrid_plan(profile).key_total;
        case SchemeId::PseudoSup: {
            if (profile.s == 1) return sup1_key_length(profile);
            SourceProfile inner = inner_profile(profile);
            return SchemeInstance{inner, pick_inner(inner)}.key_length();
        }
        default:
            if (is_corner(scheme)) return corner_key_length(profile, scheme);
            throw Error(Errc::BadConfig, "scheme has no instance form");
    }
}

ShareBundle SchemeInstance::encode(const std::vector<SymbolSeq>& sources,
                                   const SymbolSeq& key) const {
    if (sources.size() != profile.L)
        throw Error(Errc::ShapeError, "need one source block per level");
    for (std::size_t a = 1; a <= profile.L; ++a)
        if (sources[a - 1].size() != profile.lengths[a - 1])
            throw Error(Errc::ShapeError, "source block length mismatch at level " +
                                              std::to_string(a));
    if (key.size() != key_length())
        throw Error(Errc::ShapeError, "key must have exactly " +
                                          std::to_string(key_length()) + " symbols");
    switch (scheme) {
        case SchemeId::Sup1:
            require_sup1(profile);
            return sup1_encode(profile, sources, key);
        case SchemeId::MssGeneral:
            require_general(profile);
            return general_encode(profile, sources);
        case SchemeId::MssChain:
            require_chain(profile);
            return chain_encode(profile, sources);
        case SchemeId::MssHybrid:
            return hybrid_encode(profile, sources, key);
        case SchemeId::PseudoSup: {
            require_pseudo(profile);
            if (profile.s == 1) return sup1_encode(profile, sources, key);
            FieldSpec f(profile.q);
            SourceProfile inner = inner_profile(profile);
            std::vector<SymbolSeq> inner_sources = sources;
            for (std::size_t a = 1; a < profile.s; ++a) inner_sources[a - 1].clear();
            ShareBundle bundle =
                SchemeInstance{inner, pick_inner(inner)}.encode(inner_sources, key);
            bundle.profile = profile;
            bundle.scheme = SchemeId::PseudoSup;
            for (std::size_t a = profile.s; a-- > 1;) {
                auto streams = level_streams(sources[a - 1], a, profile.L, f);
                for (std::size_t l = 0; l < profile.L; ++l)
                    bundle.shares[l].insert(bundle.shares[l].begin(),
                                            ShareLayer{a, std::move(streams[l])});
            }
            return bundle;
        }
        default:
            if (is_corner(scheme)) {
                require_corner(profile, scheme);
                return corner_encode(profile, scheme, sources, key);
            }
            throw Error(Errc::BadConfig, "scheme has no instance form");
    }
}

namespace {

std::vector<std::pair<std::size_t, SymbolSeq>> layer_shares(
    const std::vector<std::pair<std::size_t, EncoderOutput>>& shares, std::size_t alpha) {
    std::vector<std::pair<std::size_t, SymbolSeq>> out;
    for (const auto& [idx, layers] : shares) {
        bool found = false;
        for (const auto& layer : layers)
            if (layer.alpha == alpha) {
                out.emplace_back(idx, layer.symbols);
                found = true;
                break;
            }
        if (!found) throw Error(Errc::CorruptShare, "share missing layer " + std::to_string(alpha));
    }
    return out;
}

void check_access(const std::vector<std::pair<std::size_t, EncoderOutput>>& shares,
                  std::size_t L) {
    std::set<std::size_t> seen;
    for (const auto& [idx, layers] : shares) {
        if (idx < 1 || idx > L) throw Error(Errc::ShapeError, "share index out of range");
        if (!seen.insert(idx).second)
            throw Error(Errc::CorruptShare, "duplicate share index " + std::to_string(idx));
    }
    if (shares.empty()) throw Error(Errc::InsufficientShares, "no shares supplied");
}

// iterative chained decode shared by the general, chain and hybrid schemes
std::vector<SymbolSeq> chained_decode(const SourceProfile& p, SchemeId scheme,
                                      const std::vector<std::pair<std::size_t, EncoderOutput>>& shares) {
    FieldSpec f(p.q);
    std::size_t L = p.L, s = p.s;
    std::size_t a_max = shares.size();
    if (a_max < s) throw Error(Errc::InsufficientShares, "need at least s shares");
    a_max = std::min(a_max, L);

    HybridPlan plan;
    if (scheme == SchemeId::MssHybrid) plan = hybrid_plan(p);

    std::vector<SymbolSeq> sources(L);
    std::vector<SymbolSeq> key_streams;  // previous level's streams
    for (std::size_t a = s; a <= a_max; ++a) {
        auto observed = layer_shares(shares, a);
        std::uint64_t chained_len = p.lengths[a - 1];
        std::uint64_t rem_len = 0;
        if (scheme == SchemeId::MssHybrid) {
            chained_len = plan.chained[a - 1];
            rem_len = plan.remainder[a - 1];
        }
        std::size_t npieces = a;
        std::size_t stream_len = chained_len == 0 ? 0
                                 : scheme == SchemeId::MssHybrid
                                     ? plan.key_stream_len[a - 1]
                                     : chained_len / a;
        std::size_t ramp_len = rem_len / s;
        // strip the masks, then split off any ramp tail
        std::vector<std::pair<std::size_t, SymbolSeq>> chained_obs, ramp_obs;
        for (auto& [idx, seq] : observed) {
            if (seq.size() != stream_len + ramp_len)
                throw Error(Errc::CorruptShare, "layer length mismatch at level " +
                                                    std::to_string(a));
            SymbolSeq head = slice(seq, 0, stream_len);
            if (a > s && stream_len > 0) {
                if (scheme == SchemeId::MssGeneral) {
                    for (std::size_t i = 1; i <= a - s; ++i) {
                        std::size_t j = cyc(idx, i, L);
                        std::size_t piece = (idx - 1) * (a - s) + i;
                        for (std::size_t t = 0; t < stream_len; ++t)
                            head[t] = f.sub(head[t],
                                            key_streams[j - 1][(piece - 1) * stream_len + t]);
                    }
                } else {
                    std::size_t j = cyc(idx, 1, L);
                    for (std::size_t t = 0; t < stream_len; ++t)
                        head[t] = f.sub(head[t], key_streams[j - 1][t]);
                }
            }
            chained_obs.emplace_back(idx, std::move(head));
            if (rem_len > 0) ramp_obs.emplace_back(idx, slice(seq, stream_len, ramp_len));
        }
        SymbolSeq chained_part;
        if (chained_len > 0)
            chained_part =
                join(mds_decode(chained_obs, default_codebook(npieces, L, f)));
        SymbolSeq rem_part;
        if (rem_len > 0) rem_part = ramp_decode(ramp_obs, a - s, a, L, f);
        sources[a - 1] = chained_part;
        sources[a - 1].insert(sources[a - 1].end(), rem_part.begin(), rem_part.end());
        // regenerate this level's key streams for the next level
        if (a < a_max)
            key_streams = chained_part.empty()
                              ? std::vector<SymbolSeq>(L)
                              : mds_encode(split_even(chained_part, npieces),
                                           default_codebook(npieces, L, f));
    }
    return sources;
}

}  // namespace

std::vector<SymbolSeq> SchemeInstance::decode(
    const std::vector<std::pair<std::size_t, EncoderOutput>>& shares) const {
    check_access(shares, profile.L);
    std::size_t a_max = std::min(shares.size(), profile.L);
    switch (scheme) {
        case SchemeId::Sup1: {
            require_sup1(profile);
            FieldSpec f(profile.q);
            std::vector<SymbolSeq> sources(profile.L);
            for (std::size_t a = 1; a <= a_max; ++a) {
                if (profile.lengths[a - 1] == 0) continue;
                auto obs = layer_shares(shares, a);
                auto stripes = mds_decode(obs, default_codebook(a, profile.L, f));
                sources[a - 1] = stripes[0];
            }
            return sources;
        }
        case SchemeId::MssGeneral:
        case SchemeId::MssChain:
        case SchemeId::MssHybrid:
            return chained_decode(profile, scheme, shares);
        case SchemeId::PseudoSup: {
            require_pseudo(profile);
            if (profile.s == 1) return SchemeInstance{profile, SchemeId::Sup1}.decode(shares);
            FieldSpec f(profile.q);
            std::vector<SymbolSeq> sources(profile.L);
            for (std::size_t a = 1; a < profile.s && a <= a_max; ++a) {
                if (profile.lengths[a - 1] == 0) continue;
                auto obs = layer_shares(shares, a);
                sources[a - 1] = join(mds_decode(obs, default_codebook(a, profile.L, f)));
            }
            if (a_max >= profile.s) {
                SourceProfile inner = inner_profile(profile);
                SchemeInstance in{inner, pick_inner(inner)};
                auto upper = in.decode(shares);
                for (std::size_t a = profile.s; a <= profile.L; ++a)
                    sources[a - 1] = std::move(upper[a - 1]);
            }
            return sources;
        }
        default:
            if (is_corner(scheme)) {
                if (shares.size() < 2)
                    throw Error(Errc::InsufficientShares, "need at least 2 shares");
                LinearEncoderMatrix mat = plan_matrix(*this);
                std::vector<std::pair<std::size_t, SymbolSeq>> flat;
                for (const auto& [idx, layers] : shares) {
                    SymbolSeq all;
                    for (const auto& layer : layers)
                        all.insert(all.end(), layer.symbols.begin(), layer.symbols.end());
                    flat.emplace_back(idx, std::move(all));
                }
                auto decoded = linear_decode(mat, flat, 2, a_max, profile.lengths);
                return decoded;
            }
            throw Error(Errc::BadConfig, "scheme has no instance form");
    }
}

RateTuple SchemeInstance::declared_rates() const {
    std::vector<SymbolSeq> zeros(profile.L);
    for (std::size_t a = 1; a <= profile.L; ++a)
        zeros[a - 1].assign(profile.lengths[a - 1], 0);
    SymbolSeq zkey(key_length(), 0);
    return smdc::measured_rates(encode(zeros, zkey));
}

SchemeInstance make_instance(const SourceProfile& profile, SchemeId scheme) {
    profile.validate();
    if (!is_corner(scheme) && profile.q <= profile.L)
        throw Error(Errc::BadConfig, "need q > L for L distinct nonzero points");
    switch (scheme) {
        case SchemeId::Sup1: require_sup1(profile); break;
        case SchemeId::MssGeneral: require_general(profile); break;
        case SchemeId::MssChain: require_chain(profile); break;
        case SchemeId::MssHybrid: hybrid_plan(profile); break;
        case SchemeId::PseudoSup: require_pseudo(profile); break;
        default:
            if (is_corner(scheme)) {
                require_corner(profile, scheme);
                break;
            }
            throw Error(Errc::BadConfig, "scheme has no instance form");
    }
    if (profile.mode == Mode::Sliding && scheme != SchemeId::PseudoSup &&
        scheme != SchemeId::Sup1)
        throw Error(Errc::WrongScheme, "sliding instances use the pseudo-superposition scheme");
    return SchemeInstance{profile, scheme};
}

LinearEncoderMatrix plan_matrix(const SchemeInstance& instance) {
    const SourceProfile& p = instance.profile;
    FieldSpec f(p.q);
    std::size_t nsrc = p.total_source_symbols();
    std::size_t nkey = instance.key_length();
    std::size_t N = nsrc + nkey;

    LinearEncoderMatrix mat{f};
    mat.input_cols = N;
    mat.source_cols = nsrc;
    mat.level_begin.resize(p.L);
    {
        std::size_t off = 0;
        for (std::size_t a = 1; a <= p.L; ++a) {
            mat.level_begin[a - 1] = off;
            off += p.lengths[a - 1];
        }
    }

    auto run = [&](const SymbolSeq& input) {
        std::vector<SymbolSeq> sources(p.L);
        std::size_t off = 0;
        for (std::size_t a = 1; a <= p.L; ++a) {
            sources[a - 1] = slice(input, off, p.lengths[a - 1]);
            off += p.lengths[a - 1];
        }
        SymbolSeq key = slice(input, off, nkey);
        ShareBundle bundle = instance.encode(sources, key);
        std::vector<SymbolSeq> flat(p.L);
        for (std::size_t l = 0; l < p.L; ++l)
            for (const auto& layer : bundle.shares[l])
                flat[l].insert(flat[l].end(), layer.symbols.begin(), layer.symbols.end());
        return flat;
    };

    auto zero_out = run(SymbolSeq(N, 0));
    for (std::size_t l = 0; l < p.L; ++l) {
        mat.per_encoder.emplace_back(zero_out[l].size(), N);
        for (Symbol v : zero_out[l])
            if (v != 0) throw Error(Errc::DomainError, "encoder is not linear (nonzero offset)");
    }
    for (std::size_t j = 0; j < N; ++j) {
        SymbolSeq e(N, 0);
        e[j] = 1;
        auto out = run(e);
        for (std::size_t l = 0; l < p.L; ++l)
            for (std::size_t r = 0; r < out[l].size(); ++r)
                mat.per_encoder[l].at(r, j) = out[l][r];
    }

    // linearity self-check on random inputs
    std::mt19937_64 rng(0x5eed5eedULL);
    for (int trial = 0; trial < 100; ++trial) {
        SymbolSeq input(N);
        for (auto& v : input) v = static_cast<Symbol>(rng() % p.q);
        auto out = run(input);
        for (std::size_t l = 0; l < p.L; ++l)
            for (std::size_t r = 0; r < out[l].size(); ++r) {
                std::uint64_t acc = 0;
                for (std::size_t j = 0; j < N; ++j)
                    acc += std::uint64_t(mat.per_encoder[l].at(r, j)) * input[j];
                if (f.reduce(acc) != out[l][r])
                    throw Error(Errc::DomainError, "encoder is not linear");
            }
    }

    for (std::size_t a = 1; a <= p.L; ++a) {
        FieldMatrix sel(p.lengths[a - 1], N);
        for (std::size_t r = 0; r < p.lengths[a - 1]; ++r)
            sel.at(r, mat.level_begin[a - 1] + r) = 1;
        mat.selectors.push_back(std::move(sel));
    }
    return mat;
}

std::vector<SymbolSeq> linear_decode(const LinearEncoderMatrix& mat,
                                     const std::vector<std::pair<std::size_t, SymbolSeq>>& flat_shares,
                                     std::size_t lo, std::size_t hi,
                                     const std::vector<std::uint64_t>& lengths) {
    const FieldSpec& f = mat.field;
    std::size_t N = mat.input_cols;
    std::size_t R = 0;
    for (const auto& [idx, seq] : flat_shares) {
        if (idx < 1 || idx > mat.per_encoder.size())
            throw Error(Errc::ShapeError, "share index out of range");
        if (seq.size() != mat.per_encoder[idx - 1].rows)
            throw Error(Errc::CorruptShare, "share length mismatch");
        R += seq.size();
    }
    // [stacked rows | identity] reduced over the first N columns, so each
    // pivot row carries its expression in terms of the original rows
    FieldMatrix g(R, N + R);
    SymbolSeq obs(R);
    {
        std::size_t r = 0;
        for (const auto& [idx, seq] : flat_shares) {
            const FieldMatrix& m = mat.per_encoder[idx - 1];
            for (std::size_t i = 0; i < m.rows; ++i, ++r) {
                for (std::size_t c = 0; c < N; ++c) g.at(r, c) = m.at(i, c);
                g.at(r, N + r) = 1;
                obs[r] = seq[i];
            }
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
    {
        std::size_t rank = 0;
        for (std::size_t col = 0; col < N && rank < R; ++col) {
            std::size_t piv = rank;
            while (piv < R && g.at(piv, col) == 0) ++piv;
            if (piv == R) continue;
            if (piv != rank)
                for (std::size_t c = 0; c < g.cols; ++c) std::swap(g.at(piv, c), g.at(rank, c));
            Symbol scale = f.inv(g.at(rank, col));
            for (std::size_t c = 0; c < g.cols; ++c) g.at(rank, c) = f.mul(g.at(rank, c), scale);
            for (std::size_t r = 0; r < R; ++r) {
                if (r == rank || g.at(r, col) == 0) continue;
                Symbol factor = g.at(r, col);
                for (std::size_t c = 0; c < g.cols; ++c)
                    g.at(r, c) = f.sub(g.at(r, c), f.mul(factor, g.at(rank, c)));
            }
            pivots.emplace_back(rank, col);
            ++rank;
        }
    }

    std::vector<SymbolSeq> out(lengths.size());
    for (std::size_t a = lo; a <= hi && a <= lengths.size(); ++a) {
        const FieldMatrix& sel = mat.selectors[a - 1];
        out[a - 1].resize(sel.rows);
        for (std::size_t sr = 0; sr < sel.rows; ++sr) {
            SymbolSeq resid(N);
            for (std::size_t c = 0; c < N; ++c) resid[c] = sel.at(sr, c);
            SymbolSeq comb(R, 0);
            for (auto [pr, pc] : pivots) {
                Symbol factor = resid[pc];
                if (factor == 0) continue;
                for (std::size_t c = 0; c < N; ++c)
                    resid[c] = f.sub(resid[c], f.mul(factor, g.at(pr, c)));
                for (std::size_t c = 0; c < R; ++c)
                    comb[c] = f.add(comb[c], f.mul(factor, g.at(pr, N + c)));
            }
            for (Symbol v : resid)
                if (v != 0)
                    throw Error(Errc::InsufficientShares,
                                "level " + std::to_string(a) +
                                    " is not determined by the supplied shares");
            std::uint64_t acc = 0;
            for (std::size_t c = 0; c < R; ++c) acc += std::uint64_t(comb[c]) * obs[c];
            out[a - 1][sr] = f.reduce(acc);
        }
    }
    return out;
}

}  // namespace smdc
