#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "doctest.h"
#include "smdc/schemes.hpp"

using namespace smdc;

namespace {

void for_each_subset(std::size_t n, std::size_t size,
                     const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> idx(size);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == size) {
            fn(idx);
            return;
        }
        for (std::size_t v = start; v <= n; ++v) {
            idx[depth] = v;
            rec(v + 1, depth + 1);
        }
    };
    rec(1, 0);
}

std::vector<SymbolSeq> random_sources(const SourceProfile& p, std::mt19937_64& rng) {
    std::vector<SymbolSeq> out(p.L);
    for (std::size_t a = 1; a <= p.L; ++a) {
        out[a - 1].resize(p.lengths[a - 1]);
        for (auto& v : out[a - 1]) v = static_cast<Symbol>(rng() % p.q);
    }
    return out;
}

// Encodes random data, then decodes from every subset of every entitled size
// and checks the recovered levels match the sources exactly.
void roundtrip_all_subsets(const SchemeInstance& inst, std::uint64_t rng_seed) {
    std::mt19937_64 rng(rng_seed);
    auto sources = random_sources(inst.profile, rng);
    auto key = make_key(inst.key_length(), inst.profile.q, rng_seed ^ 0xabcdULL);
    ShareBundle bundle = inst.encode(sources, key.symbols);
    REQUIRE(bundle.shares.size() == inst.profile.L);
    for (std::size_t m = inst.min_level(); m <= inst.profile.L; ++m) {
        for_each_subset(inst.profile.L, m, [&](const std::vector<std::size_t>& idx) {
            std::vector<std::pair<std::size_t, EncoderOutput>> access;
            for (auto i : idx) access.emplace_back(i, bundle.shares[i - 1]);
            auto decoded = inst.decode(access);
            for (std::size_t a = inst.min_level(); a <= m; ++a)
                CHECK(decoded[a - 1] == sources[a - 1]);
        });
    }
}

RateTuple rates(std::initializer_list<std::int64_t> v) {
    RateTuple out;
    for (auto x : v) out.push_back(Rational(x));
    return out;
}

}  // namespace

TEST_CASE("seeded key material is deterministic, uniform-range, field-reduced") {
    auto k1 = make_key(64, 5, 99);
    auto k2 = make_key(64, 5, 99);
    auto k3 = make_key(64, 5, 100);
    CHECK(k1.symbols == k2.symbols);
    CHECK(k1.symbols != k3.symbols);
    for (auto v : k1.symbols) CHECK(v < 5);
    // all residues appear over a longer draw
    auto big = make_key(2000, 5, 1);
    std::vector<int> seen(5, 0);
    for (auto v : big.symbols) seen[v] = 1;
    for (int i = 0; i < 5; ++i) CHECK(seen[i] == 1);
}

TEST_CASE("threshold sharing worked example over GF(5)") {
    FieldSpec f(5);
    ShareBundle b = threshold_share({1}, 2, 3, f, {2});
    REQUIRE(b.shares.size() == 3);
    CHECK(b.shares[0][0].symbols == SymbolSeq{3});
    CHECK(b.shares[1][0].symbols == SymbolSeq{0});
    CHECK(b.shares[2][0].symbols == SymbolSeq{2});
    CHECK(b.scheme == SchemeId::Threshold);
    CHECK(measured_rates(b) == rates({1, 1, 1}));
}

TEST_CASE("ramp sharing worked example over GF(5)") {
    FieldSpec f(5);
    ShareBundle b = ramp_share({4}, 1, 2, 3, f, {1});
    CHECK(b.shares[0][0].symbols == SymbolSeq{0});
    CHECK(b.shares[1][0].symbols == SymbolSeq{1});
    CHECK(b.shares[2][0].symbols == SymbolSeq{2});
    CHECK(b.scheme == SchemeId::Threshold);  // c = k-1 is the threshold case
}

TEST_CASE("ramp share/decode roundtrip from every k-subset") {
    std::mt19937_64 rng(5);
    FieldSpec f(7);
    for (std::size_t k = 1; k <= 4; ++k) {
        for (std::size_t c = 0; c < k; ++c) {
            SymbolSeq x(3 * (k - c));
            for (auto& v : x) v = static_cast<Symbol>(rng() % 7);
            SymbolSeq key(c * 3);
            for (auto& v : key) v = static_cast<Symbol>(rng() % 7);
            ShareBundle b = ramp_share(x, c, k, 4, f, key);
            for_each_subset(4, k, [&](const std::vector<std::size_t>& idx) {
                std::vector<std::pair<std::size_t, SymbolSeq>> obs;
                for (auto i : idx) obs.emplace_back(i, b.shares[i - 1][0].symbols);
                CHECK(ramp_decode(obs, c, k, 4, f) == x);
            });
        }
    }
}

TEST_CASE("ramp sharing rejects bad parameters") {
    FieldSpec f(5);
    CHECK_THROWS_AS(ramp_share({1, 2, 3}, 1, 3, 3, f, {0}), Error);      // 3 % 2 != 0
    CHECK_THROWS_AS(ramp_share({1}, 2, 2, 3, f, {0, 0}), Error);         // c >= k
    CHECK_THROWS_AS(ramp_share({1}, 0, 4, 3, f, {}), Error);             // k > L
    CHECK_THROWS_AS(ramp_share({1}, 1, 2, 3, f, {}), Error);             // key too short
    try {
        ramp_share({1, 2, 3}, 1, 3, 3, f, {0});
        FAIL("expected PaddingRequired");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::PaddingRequired);
        CHECK(std::string(e.what()).find("4") != std::string::npos);  // minimal length
    }
}

TEST_CASE("chained scheme for narrow access gaps: (3,2) with l = (0,2,3)") {
    SourceProfile p{3, 2, 5, {0, 2, 3}, Mode::Mss};
    SchemeInstance inst = make_instance(p, SchemeId::MssChain);
    CHECK(inst.key_length() == 0);
    CHECK(inst.min_level() == 2);
    CHECK(inst.declared_rates() == rates({2, 2, 2}));
    roundtrip_all_subsets(inst, 11);
}

TEST_CASE("chained scheme rejects wide access gaps and key deficits") {
    // L >= 2s leaves too few protected levels for stream chaining
    SourceProfile wide{4, 2, 5, {0, 2, 2, 2}, Mode::Mss};
    CHECK_THROWS_AS(make_instance(wide, SchemeId::MssChain), Error);
    try {
        make_instance(wide, SchemeId::MssChain);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::WrongScheme);
    }
    // shorter lower level cannot mask the level above
    SourceProfile deficit{3, 2, 5, {0, 2, 6}, Mode::Mss};
    try {
        make_instance(deficit, SchemeId::MssChain);
        FAIL("expected KeyDeficit");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::KeyDeficit);
    }
    // level length must split evenly into alpha streams
    SourceProfile odd{3, 2, 5, {0, 3, 3}, Mode::Mss};
    try {
        make_instance(odd, SchemeId::MssChain);
        FAIL("expected PaddingRequired");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::PaddingRequired);
    }
}

TEST_CASE("sub-partitioned scheme: (3,2) with l = (0,36,18)") {
    SourceProfile p{3, 2, 5, {0, 36, 18}, Mode::Mss};
    SchemeInstance inst = make_instance(p, SchemeId::MssGeneral);
    CHECK(inst.key_length() == 0);
    CHECK(inst.declared_rates() == rates({24, 24, 24}));
    roundtrip_all_subsets(inst, 21);
}

TEST_CASE("sub-partitioned scheme reports a minimal conforming profile") {
    SourceProfile p{3, 2, 5, {0, 1, 1}, Mode::Mss};
    try {
        make_instance(p, SchemeId::MssGeneral);
        FAIL("expected PaddingRequired");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::PaddingRequired);
        std::string msg = e.what();
        CHECK(msg.find("(") != std::string::npos);
        // the reported profile must itself be accepted
        auto open = msg.find('(');
        auto close = msg.find(')', open);
        std::string body = msg.substr(open + 1, close - open - 1);
        std::vector<std::uint64_t> lens;
        std::size_t pos = 0;
        while (pos < body.size()) {
            auto comma = body.find(',', pos);
            if (comma == std::string::npos) comma = body.size();
            lens.push_back(std::stoull(body.substr(pos, comma - pos)));
            pos = comma + 1;
        }
        SourceProfile fixed{3, 2, 5, lens, Mode::Mss};
        CHECK_NOTHROW(make_instance(fixed, SchemeId::MssGeneral));
        for (std::size_t a = 1; a <= 3; ++a) CHECK(lens[a - 1] >= p.lengths[a - 1]);
    }
}

TEST_CASE("hybrid scheme: (3,2) with l = (0,2,5)") {
    SourceProfile p{3, 2, 5, {0, 2, 5}, Mode::Mss};
    SchemeInstance inst = make_instance(p, SchemeId::MssHybrid);
    CHECK(inst.key_length() == 1);
    CHECK(inst.declared_rates() == rates({3, 3, 3}));
    roundtrip_all_subsets(inst, 31);
}

TEST_CASE("hybrid scheme padding and symbolic per-encoder rate") {
    // remainder 6 - 3 = 3 does not split into s = 2 key stripes
    SourceProfile p{3, 2, 5, {0, 2, 6}, Mode::Mss};
    try {
        make_instance(p, SchemeId::MssHybrid);
        FAIL("expected PaddingRequired");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::PaddingRequired);
    }
    // per-encoder rate the construction would give: chained stream of the
    // lower level plus the ramp tail of the remainder
    Rational rate = Rational(2) / Rational(2) + (Rational(6) - Rational(3)) / Rational(2);
    CHECK(rate == Rational(5, 2));
}

TEST_CASE("hybrid scheme without a deficit matches the chained scheme") {
    SourceProfile p{3, 2, 5, {0, 4, 6}, Mode::Mss};
    SchemeInstance hybrid = make_instance(p, SchemeId::MssHybrid);
    SchemeInstance chain = make_instance(p, SchemeId::MssChain);
    CHECK(hybrid.key_length() == chain.key_length());
    CHECK(hybrid.declared_rates() == chain.declared_rates());
    roundtrip_all_subsets(hybrid, 41);
}

TEST_CASE("per-level threshold scheme: L = 3, one symbol per level") {
    SourceProfile p{3, 1, 5, {1, 1, 1}, Mode::Mss};
    SchemeInstance inst = make_instance(p, SchemeId::Sup1);
    CHECK(inst.key_length() == 3);  // 0 + 1 + 2 fresh pad symbols
    CHECK(inst.min_level() == 1);
    CHECK(inst.declared_rates() == rates({3, 3, 3}));
    roundtrip_all_subsets(inst, 51);
}

TEST_CASE("corner scheme rates match their labeled triples") {
    struct Case {
        SchemeId id;
        std::uint64_t l2, l3;
        std::int64_t r1, r2, r3;
    };
    const Case cases[] = {
        {SchemeId::CornerQ1, 2, 2, 0, 4, 4},  {SchemeId::CornerP1, 4, 5, 2, 5, 5},
        {SchemeId::CornerO, 4, 8, 5, 5, 5},   {SchemeId::CornerS1, 4, 5, 3, 4, 4},
        {SchemeId::CornerT1, 2, 2, 1, 2, 2},  {SchemeId::CornerS4, 2, 2, 1, 2, 2},
        {SchemeId::CornerT4, 4, 1, 1, 4, 3},  {SchemeId::CornerS10, 4, 1, 2, 3, 2},
    };
    for (const auto& c : cases) {
        CAPTURE(scheme_name(c.id));
        SourceProfile p{3, 2, 2, {0, c.l2, c.l3}, Mode::Mss};
        SchemeInstance inst = make_instance(p, c.id);
        CHECK(inst.declared_rates() == rates({c.r1, c.r2, c.r3}));
        roundtrip_all_subsets(inst, 0x60 + std::uint64_t(c.id));
    }
}

TEST_CASE("corner schemes enforce their applicability conditions") {
    auto expect = [](SchemeId id, std::vector<std::uint64_t> lens, Errc code) {
        SourceProfile p{3, 2, 2, lens, Mode::Mss};
        try {
            make_instance(p, id);
            FAIL("expected error for ", scheme_name(id));
        } catch (const Error& e) {
            CHECK(e.code() == code);
        }
    };
    expect(SchemeId::CornerP1, {0, 4, 3}, Errc::CornerUnavailable);   // l3 < l2
    expect(SchemeId::CornerP1, {0, 3, 4}, Errc::CornerUnavailable);   // l2 odd
    expect(SchemeId::CornerO, {0, 4, 5}, Errc::CornerUnavailable);    // 2 l3 <= 3 l2
    expect(SchemeId::CornerO, {0, 4, 7}, Errc::CornerUnavailable);    // (2 l3 - 3 l2) % 4
    expect(SchemeId::CornerS1, {0, 4, 8}, Errc::CornerUnavailable);   // l3 > (3/2) l2
    expect(SchemeId::CornerT1, {0, 2, 3}, Errc::CornerUnavailable);   // l3 odd
    expect(SchemeId::CornerT4, {0, 2, 2}, Errc::CornerUnavailable);   // 2 l3 > l2
    expect(SchemeId::CornerS10, {0, 3, 1}, Errc::CornerUnavailable);  // l2 odd

    // corner layouts are bitwise
    SourceProfile p5{3, 2, 5, {0, 2, 2}, Mode::Mss};
    try {
        make_instance(p5, SchemeId::CornerQ1);
        FAIL("expected BadConfig");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::BadConfig);
    }
}

TEST_CASE("layered sliding scheme: (3,2) with l = (1,2,3)") {
    SourceProfile p{3, 2, 5, {1, 2, 3}, Mode::Sliding};
    SchemeInstance inst = make_instance(p, SchemeId::PseudoSup);
    CHECK(inst.key_length() == 0);
    CHECK(inst.min_level() == 1);
    CHECK(inst.declared_rates() == rates({3, 3, 3}));
    roundtrip_all_subsets(inst, 71);
}

TEST_CASE("layered sliding scheme with s = 1 matches per-level thresholds") {
    SourceProfile p{3, 1, 5, {1, 1, 1}, Mode::Sliding};
    SchemeInstance pseudo = make_instance(p, SchemeId::PseudoSup);
    CHECK(pseudo.key_length() == 3);
    CHECK(pseudo.declared_rates() == rates({3, 3, 3}));
    roundtrip_all_subsets(pseudo, 81);
}

TEST_CASE("sliding profiles reject schemes without a level-1 layer") {
    SourceProfile p{3, 2, 5, {1, 2, 3}, Mode::Sliding};
    try {
        make_instance(p, SchemeId::MssChain);
        FAIL("expected WrongScheme");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::WrongScheme);
    }
}

TEST_CASE("mss profiles must keep levels below s empty") {
    SourceProfile p{3, 2, 5, {1, 2, 3}, Mode::Mss};
    CHECK_THROWS_AS(make_instance(p, SchemeId::MssChain), Error);
}

TEST_CASE("encode validates shapes") {
    SourceProfile p{3, 2, 5, {0, 2, 3}, Mode::Mss};
    SchemeInstance inst = make_instance(p, SchemeId::MssChain);
    std::vector<SymbolSeq> bad = {{}, {1, 2, 3}, {1, 2, 3}};
    CHECK_THROWS_AS(inst.encode(bad, {}), Error);
    std::vector<SymbolSeq> good = {{}, {1, 2}, {1, 2, 3}};
    CHECK_THROWS_AS(inst.encode(good, {0}), Error);  // key must be empty
    CHECK_NOTHROW(inst.encode(good, {}));
}

TEST_CASE("decode rejects malformed access structures") {
    SourceProfile p{3, 2, 5, {0, 2, 3}, Mode::Mss};
    SchemeInstance inst = make_instance(p, SchemeId::MssChain);
    auto bundle = inst.encode({{}, {1, 2}, {3, 4, 0}}, {});
    CHECK_THROWS_AS(inst.decode({}), Error);
    CHECK_THROWS_AS(inst.decode({{1, bundle.shares[0]}}), Error);  // below s shares
    CHECK_THROWS_AS(inst.decode({{1, bundle.shares[0]}, {1, bundle.shares[0]}}), Error);
    CHECK_THROWS_AS(inst.decode({{9, bundle.shares[0]}, {2, bundle.shares[1]}}), Error);
}

TEST_CASE("encoder matrices reproduce encode exactly") {
    std::mt19937_64 rng(17);
    for (auto [scheme, lens, mode] :
         {std::tuple{SchemeId::MssChain, std::vector<std::uint64_t>{0, 2, 3}, Mode::Mss},
          std::tuple{SchemeId::Sup1, std::vector<std::uint64_t>{1, 1, 1}, Mode::Mss},
          std::tuple{SchemeId::PseudoSup, std::vector<std::uint64_t>{1, 2, 3}, Mode::Sliding}}) {
        SourceProfile p{3, std::size_t(scheme == SchemeId::Sup1 ? 1 : 2), 5, lens, mode};
        SchemeInstance inst = make_instance(p, scheme);
        LinearEncoderMatrix mat = plan_matrix(inst);
        std::size_t nkey = inst.key_length();
        CHECK(mat.source_cols == p.total_source_symbols());
        CHECK(mat.input_cols == mat.source_cols + nkey);

        // spot-check on a random input
        auto sources = random_sources(p, rng);
        SymbolSeq key(nkey);
        for (auto& v : key) v = static_cast<Symbol>(rng() % 5);
        SymbolSeq z;
        for (const auto& src : sources) z.insert(z.end(), src.begin(), src.end());
        z.insert(z.end(), key.begin(), key.end());
        ShareBundle bundle = inst.encode(sources, key);
        FieldSpec f(5);
        for (std::size_t l = 1; l <= 3; ++l) {
            SymbolSeq flat;
            for (const auto& layer : bundle.shares[l - 1])
                flat.insert(flat.end(), layer.symbols.begin(), layer.symbols.end());
            const FieldMatrix& m = mat.per_encoder[l - 1];
            REQUIRE(m.rows == flat.size());
            for (std::size_t r = 0; r < m.rows; ++r) {
                std::uint64_t acc = 0;
                for (std::size_t c = 0; c < m.cols; ++c) acc += std::uint64_t(m.at(r, c)) * z[c];
                CHECK(f.reduce(acc) == flat[r]);
            }
        }
    }
}

TEST_CASE("linear decoding from encoder matrices recovers the sources") {
    SourceProfile p{3, 2, 5, {0, 2, 3}, Mode::Mss};
    SchemeInstance inst = make_instance(p, SchemeId::MssChain);
    LinearEncoderMatrix mat = plan_matrix(inst);
    std::mt19937_64 rng(23);
    auto sources = random_sources(p, rng);
    ShareBundle bundle = inst.encode(sources, {});
    auto flat = [&](std::size_t l) {
        SymbolSeq out;
        for (const auto& layer : bundle.shares[l - 1])
            out.insert(out.end(), layer.symbols.begin(), layer.symbols.end());
        return out;
    };
    auto decoded = linear_decode(mat, {{1, flat(1)}, {3, flat(3)}}, 2, 2, p.lengths);
    CHECK(decoded[1] == sources[1]);
    CHECK_THROWS_AS(linear_decode(mat, {{1, flat(1)}}, 2, 2, p.lengths), Error);
    CHECK_THROWS_AS(linear_decode(mat, {{1, flat(1)}, {3, flat(3)}}, 2, 3, p.lengths), Error);
}

TEST_CASE("scheme names roundtrip") {
    for (int i = 0; i <= int(SchemeId::CornerS10); ++i) {
        SchemeId id = SchemeId(i);
        CHECK(scheme_from_name(scheme_name(id)) == id);
    }
    CHECK_THROWS_AS(scheme_from_name("nonsense"), Error);
}
