#include <gtest/gtest.h>

#include <random>

#include "cocycle_lab/cohomology.hpp"
#include "cocycle_lab/error.hpp"
#include "support/oracles.hpp"

using namespace cocycle_lab;

namespace {

constexpr Element e = 0, x = 1, z = 2, w = 3;

PhaseFunction random_b(const FiniteGroup& g, std::int64_t m, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> d(0, m - 1);
    std::vector<std::int64_t> k(g.order());
    for (std::size_t i = 1; i < k.size(); ++i) k[i] = d(rng);
    return PhaseFunction::exact(g, m, k);
}

Cocycle flipped_pauli() {
    auto k = cocycles::pauli().exponents();
    k[x][z] = 1;
    return Cocycle::exact(groups::klein_four(), 2, k);
}

bool all_ones(const Cocycle& c) {
    for (Element g = 0; g < c.group().order(); ++g)
        for (Element h = 0; h < c.group().order(); ++h)
            if (c.value(g, h) != cplx(1.0, 0.0)) return false;
    return true;
}

}  // namespace

TEST(CheckCocycle, ConstantOneIsValid) {
    EXPECT_TRUE(check_cocycle(Cocycle::trivial(groups::symmetric3())).valid);
}

TEST(CheckCocycle, PauliIsValid) {
    // Oracle: phases read off from products of the Pauli matrices.
    const auto c = cocycles::pauli();
    EXPECT_TRUE(check_cocycle(c).valid);
    EXPECT_EQ(c.value(z, x), cplx(-1.0, 0.0));
    EXPECT_EQ(c.value(z, w), cplx(-1.0, 0.0));
    EXPECT_EQ(c.value(w, x), cplx(-1.0, 0.0));
    EXPECT_EQ(c.value(w, w), cplx(-1.0, 0.0));
    EXPECT_EQ(c.value(x, z), cplx(1.0, 0.0));
}

TEST(CheckCocycle, FlippedPauliReportsTripleXZZ) {
    const auto r = check_cocycle(flipped_pauli());
    EXPECT_FALSE(r.valid);
    const std::array<Element, 3> t{x, z, z};
    EXPECT_NE(std::find(r.violations.begin(), r.violations.end(), t), r.violations.end());
}

TEST(CheckCocycle, UnnormalizedIsReported) {
    auto k = cocycles::pauli().exponents();
    k[x][e] = 1;
    const auto r = check_cocycle(Cocycle::exact(groups::klein_four(), 2, k));
    EXPECT_FALSE(r.valid);
    ASSERT_FALSE(r.unnormalized.empty());
    EXPECT_EQ(r.unnormalized.front(), (std::array<Element, 2>{x, e}));
}

TEST(CheckCocycle, FloatModeUsesTolerance) {
    auto t = cocycles::pauli().turns_table();
    t[z][x] += 1e-10;
    EXPECT_TRUE(check_cocycle(Cocycle::from_turns(groups::klein_four(), t)).valid);
    t[z][x] += 1e-3;
    EXPECT_FALSE(check_cocycle(Cocycle::from_turns(groups::klein_four(), t)).valid);
}

TEST(Coboundary, ConstantOneGivesConstantOne) {
    const auto g = groups::cyclic(3);
    EXPECT_TRUE(all_ones(coboundary(PhaseFunction::exact(g, 3, {0, 0, 0}))));
}

TEST(Coboundary, Z2WithBEqualI) {
    // b(a) = i: σ_b(a,a) = b(e)⁻¹ b(a)² = −1.
    const auto c = coboundary(PhaseFunction::exact(groups::cyclic(2), 4, {0, 1}));
    EXPECT_EQ(c.value(1, 1), cplx(-1.0, 0.0));
    EXPECT_EQ(c.value(0, 1), cplx(1.0, 0.0));
    EXPECT_TRUE(check_cocycle(c).valid);
}

TEST(Coboundary, Z4EntrywiseSubstitution) {
    const auto G = groups::cyclic(4);
    const std::vector<std::int64_t> k{0, 1, 0, 1};
    const auto c = coboundary(PhaseFunction::exact(G, 4, k));
    EXPECT_TRUE(check_cocycle(c).valid);
    for (Element g = 0; g < 4; ++g)
        for (Element h = 0; h < 4; ++h) {
            const std::int64_t expected = ((k[g] + k[h] - k[G.mul(g, h)]) % 4 + 4) % 4;
            EXPECT_EQ(c.exponent(g, h), expected);
        }
    EXPECT_TRUE(is_trivial(c));
}

TEST(Coboundary, RejectsNonNormalizedB) {
    EXPECT_THROW(PhaseFunction::exact(groups::cyclic(2), 2, {1, 0}), Error);
}

TEST(Combine, PauliLaws) {
    const auto p = cocycles::pauli();
    const auto one = Cocycle::trivial(groups::klein_four());
    EXPECT_TRUE(all_ones(product(p, p)));
    EXPECT_TRUE(same_values(conjugate(p), p));
    EXPECT_TRUE(same_values(product(p, one), p));
    EXPECT_TRUE(same_values(combine(p, one, CombineOp::Product), p));
    EXPECT_TRUE(same_values(combine(p, one, CombineOp::Inverse), p));
}

TEST(Combine, GroupMismatch) {
    try {
        product(cocycles::pauli(), Cocycle::trivial(groups::cyclic(4)));
        FAIL();
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::GroupMismatch);
    }
}

TEST(Combine, ProductTakesLcmOfRootOrders) {
    const auto G = groups::cyclic(2);
    const auto a = coboundary(PhaseFunction::exact(G, 4, {0, 1}));
    const auto b = Cocycle::exact(G, 3, {{0, 0}, {0, 1}});
    const auto c = product(a, b);
    EXPECT_EQ(c.root_order(), 12);
    EXPECT_NEAR(std::abs(c.value(1, 1) - a.value(1, 1) * b.value(1, 1)), 0.0, 1e-15);
}

TEST(Combine, CocycleTimesConjugateIsExactlyOne) {
    std::mt19937_64 rng(1);
    const std::vector<Cocycle> bases{Cocycle::trivial(groups::cyclic(4)), cocycles::pauli(),
                                     Cocycle::trivial(groups::symmetric3())};
    for (const auto& base : bases) {
        const auto c = product(base, coboundary(random_b(base.group(), 12, rng)));
        EXPECT_TRUE(all_ones(product(c, conjugate(c))));
    }
}

TEST(IsTrivial, PauliAgainstBruteForceOracle) {
    EXPECT_FALSE(oracle::brute_force_trivial(cocycles::pauli()));
    EXPECT_FALSE(is_trivial(cocycles::pauli()));
}

TEST(IsTrivial, ConstantOneOnS3) { EXPECT_TRUE(is_trivial(Cocycle::trivial(groups::symmetric3()))); }

TEST(IsTrivial, RandomCoboundariesAgreeWithOracle) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 20; ++t) {
        const auto c = coboundary(random_b(groups::klein_four(), 4, rng));
        EXPECT_TRUE(check_cocycle(c).valid);
        EXPECT_TRUE(is_trivial(c));
        EXPECT_TRUE(oracle::brute_force_trivial(c));
    }
}

TEST(IsTrivial, FloatCoboundary) {
    const auto G = groups::cyclic(3);
    const auto c = coboundary(PhaseFunction::from_turns(G, {0.0, 0.1234, 0.77}));
    EXPECT_FALSE(c.is_exact());
    EXPECT_TRUE(check_cocycle(c).valid);
    EXPECT_TRUE(is_trivial(c));
}

TEST(ClassesEqual, Examples) {
    std::mt19937_64 rng(3);
    const auto G = groups::klein_four();
    const auto p = cocycles::pauli();
    const auto b = random_b(G, 4, rng);
    EXPECT_TRUE(classes_equal(p, product(p, coboundary(b))));
    EXPECT_FALSE(classes_equal(p, Cocycle::trivial(G)));
    EXPECT_TRUE(classes_equal(Cocycle::trivial(G), coboundary(b)));
}

TEST(ClassesEqual, EquivalenceRelationOnSample) {
    std::mt19937_64 rng(4);
    const auto G = groups::klein_four();
    std::vector<Cocycle> sample;
    for (int t = 0; t < 4; ++t) {
        sample.push_back(coboundary(random_b(G, 4, rng)));
        sample.push_back(product(cocycles::pauli(), coboundary(random_b(G, 4, rng))));
    }
    for (const auto& a : sample) {
        EXPECT_TRUE(classes_equal(a, a));
        for (const auto& b : sample) {
            const bool ab = classes_equal(a, b);
            EXPECT_EQ(ab, classes_equal(b, a));
            EXPECT_EQ(ab, oracle::brute_force_trivial(product(a, inverse(b))));
            for (const auto& c : sample)
                if (ab && classes_equal(b, c)) EXPECT_TRUE(classes_equal(a, c));
        }
    }
}

TEST(CommutatorInvariant, Examples) {
    const auto p = cocycles::pauli();
    EXPECT_TRUE(same_phase(commutator_invariant(p, x, z), Phase::exact(2, 1)));
    for (Element g = 0; g < 4; ++g) EXPECT_TRUE(same_phase(commutator_invariant(p, g, g), Phase::exact(1, 0)));
    std::mt19937_64 rng(5);
    const auto cb = coboundary(random_b(groups::klein_four(), 8, rng));
    for (Element g = 0; g < 4; ++g)
        for (Element h = 0; h < 4; ++h) EXPECT_EQ(commutator_invariant(cb, g, h).k, 0);
}

TEST(CommutatorInvariant, GaugeInvariantExactly) {
    std::mt19937_64 rng(6);
    const auto p = cocycles::pauli();
    for (int t = 0; t < 20; ++t) {
        const auto q = product(p, coboundary(random_b(groups::klein_four(), 4, rng)));
        for (Element g = 0; g < 4; ++g)
            for (Element h = 0; h < 4; ++h)
                EXPECT_TRUE(same_phase(commutator_invariant(q, g, h), commutator_invariant(p, g, h)));
    }
}

TEST(CommutatorInvariant, NonCommutingPair) {
    const auto c = Cocycle::trivial(groups::symmetric3());
    try {
        commutator_invariant(c, 1, 2);
        FAIL();
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::NonCommutingPair);
    }
}

TEST(CommutatorInvariant, TrivialImpliesUnitInvariantsOnAbelian) {
    std::mt19937_64 rng(7);
    const auto G = groups::direct_product(groups::cyclic(2), groups::cyclic(4));
    for (int t = 0; t < 5; ++t) {
        const auto c = coboundary(random_b(G, 8, rng));
        ASSERT_TRUE(is_trivial(c));
        for (Element g = 0; g < G.order(); ++g)
            for (Element h = 0; h < G.order(); ++h) EXPECT_EQ(commutator_invariant(c, g, h).k, 0);
    }
}

TEST(EnumerateClasses, SmallGroupsAgainstBruteForce) {
    EXPECT_EQ(enumerate_classes(groups::cyclic(2), 2).size(), 1u);
    EXPECT_EQ(oracle::brute_force_class_count(groups::cyclic(2), 2), 1u);
    EXPECT_EQ(enumerate_classes(groups::cyclic(3), 3).size(), 1u);
    EXPECT_EQ(oracle::brute_force_class_count(groups::cyclic(3), 3), 1u);
    const auto k4 = enumerate_classes(groups::klein_four(), 2);
    ASSERT_EQ(k4.size(), 2u);
    EXPECT_EQ(oracle::brute_force_class_count(groups::klein_four(), 2), 2u);
    EXPECT_TRUE(is_trivial(k4[0].representative));
    EXPECT_TRUE(classes_equal(k4[1].representative, cocycles::pauli()));
}

TEST(EnumerateClasses, KnownSchurMultipliers) {
    // |H²(G,T)|: Z4 → 1, Z2×Z2 → 2, S3 → 1, D4 → 2, Q8 → 1, Z2×Z4 → 2, trivial → 1.
    EXPECT_EQ(enumerate_classes(groups::trivial()).size(), 1u);
    EXPECT_EQ(enumerate_classes(groups::cyclic(4)).size(), 1u);
    EXPECT_EQ(enumerate_classes(groups::klein_four()).size(), 2u);
    EXPECT_EQ(enumerate_classes(groups::symmetric3()).size(), 1u);
    EXPECT_EQ(enumerate_classes(groups::dihedral4()).size(), 2u);
    EXPECT_EQ(enumerate_classes(groups::quaternion()).size(), 1u);
    EXPECT_EQ(enumerate_classes(groups::direct_product(groups::cyclic(2), groups::cyclic(4))).size(), 2u);
}

TEST(EnumerateClasses, RepresentativesAreCocycles) {
    for (const auto& G : {groups::klein_four(), groups::dihedral4()})
        for (const auto& h : enumerate_classes(G)) EXPECT_TRUE(check_cocycle(h.representative).valid);
}

TEST(EnumerateClasses, GroupTooLarge) {
    const auto g = groups::direct_product(groups::cyclic(3), groups::cyclic(3));
    try {
        enumerate_classes(g);
        FAIL();
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::GroupTooLarge);
    }
}

TEST(Snap, RoundsWithinToleranceAndFailsBeyond) {
    auto t = cocycles::pauli().turns_table();
    t[z][x] += 1e-9;
    const auto ok = snap(Cocycle::from_turns(groups::klein_four(), t), 8);
    EXPECT_FALSE(ok.warned);
    EXPECT_TRUE(classes_equal(ok.cocycle, cocycles::pauli()));
    EXPECT_EQ(ok.cocycle.exponent(z, x), 4);

    t[z][x] += 2e-6;
    const auto warn = snap(Cocycle::from_turns(groups::klein_four(), t), 8);
    EXPECT_TRUE(warn.warned);

    t[z][x] += 1e-3;
    try {
        snap(Cocycle::from_turns(groups::klein_four(), t), 8);
        FAIL();
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::SnapFailed);
    }
}
