#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "doctest.h"
#include "smdc/field.hpp"

using namespace smdc;

namespace {

// Enumerates all subsets of {1..n} of the given size.
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

SymbolSeq random_seq(std::size_t n, std::uint32_t q, std::mt19937_64& rng) {
    SymbolSeq out(n);
    for (auto& v : out) v = static_cast<Symbol>(rng() % q);
    return out;
}

}  // namespace

TEST_CASE("primality helpers") {
    CHECK(!is_prime(0));
    CHECK(!is_prime(1));
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(!is_prime(4));
    CHECK(is_prime(5));
    CHECK(!is_prime(65535));
    CHECK(is_prime(65521));
    CHECK(smallest_prime_geq(4) == 5);
    CHECK(smallest_prime_geq(5) == 5);
    CHECK(smallest_prime_geq(6) == 7);
    CHECK(smallest_prime_geq(8) == 11);
    CHECK(smallest_prime_geq(258) == 263);
}

TEST_CASE("field spec rejects composite moduli") {
    CHECK_THROWS_AS(FieldSpec(4), Error);
    CHECK_THROWS_AS(FieldSpec(1), Error);
    CHECK_NOTHROW(FieldSpec(2));
    CHECK_NOTHROW(FieldSpec(65521));
}

TEST_CASE("inverse against brute-force search oracle") {
    for (std::uint32_t q : {2u, 3u, 5u, 7u, 13u, 257u}) {
        FieldSpec f(q);
        CHECK_THROWS_AS(f.inv(0), Error);
        for (std::uint32_t a = 1; a < q; ++a) {
            // oracle: scan the whole field for the multiplicative inverse
            Symbol expected = 0;
            for (std::uint32_t b = 1; b < q; ++b)
                if ((std::uint64_t(a) * b) % q == 1) expected = static_cast<Symbol>(b);
            CHECK(f.inv(static_cast<Symbol>(a)) == expected);
        }
    }
    CHECK(FieldSpec(7).inv(3) == 5);
    CHECK(FieldSpec(5).inv(4) == 4);
}

TEST_CASE("pow matches repeated multiplication") {
    FieldSpec f(13);
    for (std::uint32_t a = 0; a < 13; ++a) {
        Symbol acc = 1;
        for (std::uint64_t e = 0; e < 20; ++e) {
            CHECK(f.pow(static_cast<Symbol>(a), e) == acc);
            acc = f.mul(acc, static_cast<Symbol>(a));
        }
    }
}

TEST_CASE("rank against kernel-counting oracle") {
    std::mt19937_64 rng(42);
    for (std::uint32_t q : {2u, 3u, 5u}) {
        FieldSpec f(q);
        std::size_t cols = q == 2 ? 6 : (q == 3 ? 5 : 4);
        for (int trial = 0; trial < 30; ++trial) {
            std::size_t rows = 1 + rng() % 5;
            FieldMatrix m(rows, cols);
            for (auto& e : m.entries) e = static_cast<Symbol>(rng() % q);

            // oracle: rank = cols - log_q |kernel|, kernel counted exhaustively
            std::uint64_t total = 1;
            for (std::size_t c = 0; c < cols; ++c) total *= q;
            std::uint64_t kernel = 0;
            for (std::uint64_t v = 0; v < total; ++v) {
                std::uint64_t t = v;
                SymbolSeq x(cols);
                for (std::size_t c = 0; c < cols; ++c) {
                    x[c] = static_cast<Symbol>(t % q);
                    t /= q;
                }
                bool zero = true;
                for (std::size_t r = 0; r < rows && zero; ++r) {
                    std::uint64_t acc = 0;
                    for (std::size_t c = 0; c < cols; ++c)
                        acc += std::uint64_t(m.at(r, c)) * x[c];
                    if (acc % q != 0) zero = false;
                }
                if (zero) ++kernel;
            }
            std::size_t nullity = 0;
            while (kernel > 1) {
                kernel /= q;
                ++nullity;
            }
            CHECK(mat_rank(m, f) == cols - nullity);
        }
    }
}

TEST_CASE("rref is idempotent and preserves rank") {
    std::mt19937_64 rng(7);
    FieldSpec f(5);
    for (int trial = 0; trial < 20; ++trial) {
        FieldMatrix m(4, 6);
        for (auto& e : m.entries) e = static_cast<Symbol>(rng() % 5);
        FieldMatrix r = m;
        std::size_t rank1 = rref(r, f);
        FieldMatrix rr = r;
        std::size_t rank2 = rref(rr, f);
        CHECK(rank1 == rank2);
        CHECK(r.entries == rr.entries);
        CHECK(rank1 == mat_rank(m, f));
    }
}

TEST_CASE("every square submatrix of a Vandermonde generator is invertible") {
    for (std::size_t L : {3u, 4u, 5u, 6u}) {
        FieldSpec f(smallest_prime_geq(static_cast<std::uint32_t>(L) + 1));
        for (std::size_t alpha = 1; alpha <= L; ++alpha) {
            MdsCodebook cb = default_codebook(alpha, L, f);
            CHECK(cb.generator.rows == alpha);
            CHECK(cb.generator.cols == L);
            for_each_subset(L, alpha, [&](const std::vector<std::size_t>& cols) {
                FieldMatrix sub(alpha, alpha);
                for (std::size_t r = 0; r < alpha; ++r)
                    for (std::size_t c = 0; c < alpha; ++c)
                        sub.at(r, c) = cb.generator.at(r, cols[c] - 1);
                CHECK(mat_rank(sub, f) == alpha);
            });
        }
    }
}

TEST_CASE("mds roundtrip from every alpha-subset, L = 3..6") {
    std::mt19937_64 rng(123);
    for (std::size_t L : {3u, 4u, 5u, 6u}) {
        FieldSpec f(smallest_prime_geq(static_cast<std::uint32_t>(L) + 1));
        for (std::size_t alpha = 1; alpha <= L; ++alpha) {
            MdsCodebook cb = default_codebook(alpha, L, f);
            for (int trial = 0; trial < 50; ++trial) {
                std::vector<SymbolSeq> stripes(alpha);
                for (auto& s : stripes) s = random_seq(3, f.q, rng);
                auto shares = mds_encode(stripes, cb);
                REQUIRE(shares.size() == L);
                for_each_subset(L, alpha, [&](const std::vector<std::size_t>& idx) {
                    std::vector<std::pair<std::size_t, SymbolSeq>> obs;
                    for (auto i : idx) obs.emplace_back(i, shares[i - 1]);
                    CHECK(mds_decode(obs, cb) == stripes);
                });
            }
        }
    }
}

TEST_CASE("mds decode flags bad access structures") {
    FieldSpec f(7);
    MdsCodebook cb = default_codebook(2, 4, f);
    std::vector<SymbolSeq> stripes = {{1, 2}, {3, 4}};
    auto shares = mds_encode(stripes, cb);

    SUBCASE("too few distinct shares") {
        std::vector<std::pair<std::size_t, SymbolSeq>> obs = {{1, shares[0]}};
        CHECK_THROWS_AS(mds_decode(obs, cb), Error);
    }
    SUBCASE("duplicate index") {
        std::vector<std::pair<std::size_t, SymbolSeq>> obs = {{1, shares[0]}, {1, shares[0]}};
        CHECK_THROWS_AS(mds_decode(obs, cb), Error);
    }
    SUBCASE("inconsistent redundant share") {
        auto bad = shares[2];
        bad[0] = f.add(bad[0], 1);
        std::vector<std::pair<std::size_t, SymbolSeq>> obs = {
            {1, shares[0]}, {2, shares[1]}, {3, bad}};
        CHECK_THROWS_AS(mds_decode(obs, cb), Error);
    }
    SUBCASE("duplicate index with consistent data is deduplicated") {
        std::vector<std::pair<std::size_t, SymbolSeq>> obs = {
            {2, shares[1]}, {2, shares[1]}, {3, shares[2]}};
        CHECK(mds_decode(obs, cb) == stripes);
    }
    SUBCASE("duplicates alone do not meet the threshold") {
        std::vector<std::pair<std::size_t, SymbolSeq>> obs = {{2, shares[1]}, {2, shares[1]}};
        CHECK_THROWS_AS(mds_decode(obs, cb), Error);
    }
}

TEST_CASE("solve_square worked example and singular rejection") {
    FieldSpec f(5);
    FieldMatrix a(2, 2);
    a.at(0, 0) = 1;
    a.at(0, 1) = 1;
    a.at(1, 0) = 1;
    a.at(1, 1) = 2;
    SymbolSeq x = solve_square(a, {0, 1}, f);
    // x0 + x1 = 0, x0 + 2 x1 = 1 over GF(5) -> x = (4, 1)
    CHECK(x == SymbolSeq{4, 1});

    FieldMatrix sing(2, 2);
    sing.at(0, 0) = 2;
    sing.at(0, 1) = 4;
    sing.at(1, 0) = 1;
    sing.at(1, 1) = 2;
    CHECK_THROWS_AS(solve_square(sing, {1, 0}, f), Error);
}
