#include "oracle.hpp"

#include "powsum/addcomb.hpp"
#include "powsum/error.hpp"
#include "powsum/ntt.hpp"
#include "powsum/random.hpp"
#include "powsum/residue_set.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace powsum;

namespace {

ResidueSet set7(std::initializer_list<u64> v) { return ResidueSet::from_values(7, v); }

std::vector<u64> vec(std::initializer_list<u64> v) { return v; }

ResidueSet random_set(std::mt19937_64& rng, u64 p, u64 size)
{
    std::vector<u64> v;
    for (u64 i = 0; i < size; ++i)
        v.push_back(rng() % p);
    return ResidueSet::from_values(p, v);
}

} // namespace

TEST(ResidueSet, SortsAndDeduplicates)
{
    auto const s = ResidueSet::from_values(11, {5, 3, 5, 0});
    EXPECT_EQ(s.elements(), vec({0, 3, 5}));
    EXPECT_TRUE(s.contains(3));
    EXPECT_FALSE(s.contains(4));
    EXPECT_EQ(ResidueSet::from_values(11, {11, 14}).elements(), vec({0, 3})); // reduced mod p
    EXPECT_THROW(ResidueSet::from_values(0, {1}), PreconditionError);
}

TEST(ResidueSet, RepresentationFollowsDensity)
{
    u64 const p = 6400;
    std::vector<u64> sparse(99), dense(100);
    std::iota(sparse.begin(), sparse.end(), 0);
    std::iota(dense.begin(), dense.end(), 0);
    auto const a = ResidueSet::from_values(p, sparse);
    auto const b = ResidueSet::from_values(p, dense);
    EXPECT_EQ(a.storage(), ResidueSet::Storage::sorted);
    EXPECT_EQ(b.storage(), ResidueSet::Storage::bitmap);
    EXPECT_EQ(b.elements(), dense);
    EXPECT_EQ(ResidueSet::full(70).size(), 70u);
}

TEST(Sumset, Examples)
{
    EXPECT_EQ(sumset(set7({1, 2, 4}), set7({1, 2, 4})).elements(), vec({1, 2, 3, 4, 5, 6}));
    EXPECT_EQ(sumset(set7({0}), set7({3, 5})), set7({3, 5}));
    EXPECT_EQ(sumset(set7({1}), set7({6})).elements(), vec({0}));
    EXPECT_THROW(sumset(set7({1}), ResidueSet::from_values(11, {1})), PreconditionError);
}

TEST(Sumset, MatchesOracle)
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        u64 const p = std::vector<u64>{7, 101, 1009, 65537}[i % 4];
        auto const A = random_set(rng, p, rng() % 80 + 1);
        auto const B = random_set(rng, p, rng() % 80 + 1);
        auto const o = oracle::sumset(A.elements(), B.elements(), p);
        ASSERT_EQ(sumset(A, B).elements(), std::vector<u64>(o.begin(), o.end()));
    }
}

TEST(RatioSet, Examples)
{
    EXPECT_EQ(ratio_set(set7({1, 2, 4}), set7({1, 2, 4})).elements(), vec({1, 2, 4}));
    EXPECT_EQ(ratio_set(set7({0}), set7({3})).elements(), vec({0}));
    EXPECT_EQ(ratio_set(set7({1, 3}), set7({2})).elements(), vec({4, 5}));
    EXPECT_TRUE(ratio_set(set7({1, 3}), set7({0})).empty());
}

TEST(OtherSets, DifferenceAndProduct)
{
    EXPECT_EQ(difference_set(set7({1, 2}), set7({1, 2})).elements(), vec({0, 1, 6}));
    EXPECT_EQ(product_set(set7({2, 3}), set7({3, 4})).elements(), vec({1, 2, 5, 6}));
}

TEST(DifferenceQuotient, Examples)
{
    EXPECT_EQ(difference_quotient_set(set7({1, 2})).elements(), vec({0, 1, 6}));
    EXPECT_EQ(difference_quotient_set(ResidueSet::full(7)), ResidueSet::full(7));
    std::set<u64> expected;
    std::vector<u64> const a{1, 2, 4};
    for (u64 a1 : a)
        for (u64 a2 : a)
            for (u64 a3 : a)
                for (u64 a4 : a)
                    if (a3 != a4)
                        expected.insert((a1 + 7 - a2) * pow_mod((a3 + 7 - a4) % 7, 5, 7) % 7);
    EXPECT_EQ(difference_quotient_set(set7({1, 2, 4})).elements(), std::vector<u64>(expected.begin(), expected.end()));
    EXPECT_THROW(difference_quotient_set(set7({1})), PreconditionError);
    EXPECT_THROW(difference_quotient_set(ResidueSet::full(503)), GuardError);
}

TEST(RepCounts, Examples)
{
    for (auto backend : {EnergyBackend::naive, EnergyBackend::hashed, EnergyBackend::transform}) {
        auto const r = rep_counts(set7({1, 2, 4}), set7({1, 2, 4}), backend);
        EXPECT_EQ(r.at(0), 0u);
        EXPECT_EQ(r.at(1), 1u);
        EXPECT_EQ(r.at(2), 1u);
        EXPECT_EQ(r.at(3), 2u);
        EXPECT_EQ(r.at(4), 1u);
        EXPECT_EQ(r.at(5), 2u);
        EXPECT_EQ(r.at(6), 2u);
        auto const z = rep_counts(set7({0}), set7({0}), backend);
        EXPECT_EQ(z.at(0), 1u);
        EXPECT_EQ(z.total(), 1u);
        auto const t = rep_counts(ResidueSet::full(7), set7({3}), backend);
        for (u64 s = 0; s < 7; ++s)
            EXPECT_EQ(t.at(s), 1u);
    }
}

TEST(Energy, Examples)
{
    EXPECT_EQ(additive_energy(set7({1, 2, 4}), set7({1, 2, 4})), 15u);
    EXPECT_EQ(additive_energy(set7({5}), set7({5})), 1u);
    EXPECT_EQ(additive_energy(set7({1, 2}), set7({3})), 2u);
    EXPECT_EQ(oracle::energy({1, 2}, {3}, 7), 2u);
    EXPECT_EQ(oracle::energy({1, 2, 4}, {1, 2, 4}, 7), 15u);
}

TEST(Energy, BackendsAgreeWithOracleAndBounds)
{
    std::mt19937_64 rng(41);
    std::vector<u64> primes;
    for (u64 p = 2; p <= 4099; ++p)
        if (oracle::is_prime(p))
            primes.push_back(p);
    for (int i = 0; i < 200; ++i) {
        u64 const p = primes[rng() % primes.size()];
        auto const A = random_set(rng, p, rng() % 150 + 1);
        auto const B = random_set(rng, p, rng() % 150 + 1);
        auto const naive = rep_counts(A, B, EnergyBackend::naive);
        auto const hashed = rep_counts(A, B, EnergyBackend::hashed);
        auto const transform = rep_counts(A, B, EnergyBackend::transform);
        ASSERT_EQ(naive, hashed);
        ASSERT_EQ(naive, transform);

        u64 const a = A.size(), b = B.size();
        u64 const e = naive.energy();
        ASSERT_EQ(naive.total(), a * b);
        ASSERT_EQ(e, oracle::energy(A.elements(), B.elements(), p));
        ASSERT_EQ(additive_energy(B, A), e);
        ASSERT_LE(a * b, e);
        ASSERT_LE(e, a * b * std::min(a, b));
        for (auto const& [s, r] : naive.entries())
            ASSERT_LE(r, std::min(a, b)) << s;
        // Cauchy-Schwarz: E * |A+B| >= (|A||B|)^2
        ASSERT_GE(e * sumset(A, B).size(), a * a * b * b);
    }
}

TEST(Energy, TransformGuard)
{
    auto const big = ResidueSet::from_values(4194319, {1, 2});
    EXPECT_THROW(rep_counts(big, big, EnergyBackend::transform), GuardError);
    EXPECT_EQ(additive_energy(big, big, EnergyBackend::hashed), 6u);
}

TEST(PowerSet, CardinalityAndMembership)
{
    FieldCtx const f(1009);
    for (u64 t : divisors(1008)) {
        SubgroupCtx const ctx = element_of_order(f, t);
        for (u64 L : {0ull, 3ull, 1000ull}) {
            for (u64 M : {u64{1}, (t + 1) / 2, t}) {
                PowerSet const ps(ctx, L, M);
                ASSERT_EQ(ps.elements().size(), M);
                ps.elements().for_each([&](u64 x) { ASSERT_EQ(pow_mod(x, t, 1009), 1u); });
            }
        }
    }
    SubgroupCtx const ctx = element_of_order(f, 12);
    EXPECT_THROW(PowerSet(ctx, 0, 13), PreconditionError);
    EXPECT_THROW(PowerSet(ctx, 0, 0), PreconditionError);
}

TEST(PowerSet, ProductOfIntervalsIsSmall)
{
    FieldCtx const f(2003);
    std::mt19937_64 rng(7);
    for (u64 t : divisors(2002)) {
        SubgroupCtx const ctx = element_of_order(f, t);
        for (int i = 0; i < 5; ++i) {
            u64 const M1 = rng() % t + 1, M2 = rng() % t + 1;
            PowerSet const A(ctx, rng() % 50, M1), B(ctx, rng() % 50, M2);
            ASSERT_LE(product_set(A.elements(), B.elements()).size(), std::min(M1 + M2 - 1, t));
        }
    }
}

TEST(PowerSet, Subsample)
{
    SubgroupCtx const ctx = element_of_order(FieldCtx(1009), 252);
    auto const a = PowerSet::subsample(ctx, 10, 100, 0.37, 5);
    auto const b = PowerSet::subsample(ctx, 10, 100, 0.37, 5);
    EXPECT_EQ(a.indices().size(), 37u);
    EXPECT_EQ(a.indices(), b.indices());
    EXPECT_DOUBLE_EQ(a.density(), 0.37);
    for (u64 x : a.indices()) {
        EXPECT_GE(x, 11u);
        EXPECT_LE(x, 110u);
    }
}

TEST(Ntt, ConvolutionMatchesSchoolbook)
{
    std::mt19937_64 rng(13);
    for (std::size_t n : {1u, 2u, 8u, 64u, 1024u}) {
        std::vector<u64> a(n), b(n), want(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = rng() % 1000;
            b[i] = rng() % 1000;
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                want[(i + j) % n] += a[i] * b[j];
        ASSERT_EQ(ntt::cyclic_convolution(a, b), want) << n;
    }
}

TEST(Ntt, RoundTrip)
{
    std::vector<u64> v(256);
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = (i * 7919) % ntt::modulus;
    auto w = v;
    ntt::transform(w, false);
    ntt::transform(w, true);
    EXPECT_EQ(v, w);
}

TEST(Rng, Reproducible)
{
    Rng a(99), b(99);
    for (int i = 0; i < 10; ++i)
        EXPECT_EQ(a.below(1000), b.below(1000));
    auto const s = Rng(4).sample_distinct(50, 50);
    std::vector<u64> all(50);
    std::iota(all.begin(), all.end(), 0);
    EXPECT_EQ(s, all);
}
