#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "cocycle_lab/bounds.hpp"
#include "cocycle_lab/error.hpp"

using namespace cocycle_lab;

namespace {

long long ipow(long long b, std::size_t e) {
    long long r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= b;
    return r;
}

// Rank of the isotypic projector (1/|G|) Σ conj χ_V(g) U^{⊗l}(g), built from explicit matrices.
std::size_t explicit_multiplicity(const OnsiteRep& u, const std::vector<cplx>& chi_v, std::size_t l) {
    const std::size_t n = u.group.order();
    const std::size_t dim = static_cast<std::size_t>(ipow(static_cast<long long>(u.dim), l));
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
    for (Element g = 0; g < n; ++g) {
        Eigen::MatrixXcd t = Eigen::MatrixXcd::Identity(1, 1);
        Eigen::MatrixXcd ug(u.dim, u.dim);
        for (std::size_t i = 0; i < u.dim; ++i)
            for (std::size_t j = 0; j < u.dim; ++j) ug(i, j) = u(g)(i, j);
        for (std::size_t k = 0; k < l; ++k) {
            Eigen::MatrixXcd next(t.rows() * u.dim, t.cols() * u.dim);
            for (Eigen::Index a = 0; a < t.rows(); ++a)
                for (Eigen::Index b = 0; b < t.cols(); ++b)
                    next.block(a * u.dim, b * u.dim, u.dim, u.dim) = t(a, b) * ug;
            t = next;
        }
        p += std::conj(chi_v[g]) * t;
    }
    p /= static_cast<double>(n);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(p);
    double trace = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) trace += std::abs(es.eigenvalues()(i));
    return static_cast<std::size_t>(std::lround(trace));  // eigenvalues of a projector are 0 or 1
}

std::size_t column_of_trivial(const IrrepTable& t) {
    for (std::size_t a = 0; a < t.size(); ++a) {
        bool all_one = true;
        for (const auto& x : t.characters[a]) all_one &= std::abs(x - cplx(1.0)) < 1e-9;
        if (all_one) return a;
    }
    return t.size();
}

}  // namespace

TEST(L0All, Spin1KleinFourMatchesClosedForm) {
    const auto u = groups::spin1_pi_rotations();
    const auto r = l0_all_irreps(u);
    EXPECT_EQ(r.exact_min, 2u);
    EXPECT_EQ(r.analytic_bound, 2u);
    ASSERT_TRUE(r.certificate.has_value());
    EXPECT_EQ(*r.certificate, 2u);
    const auto table = irreps(Cocycle::trivial(u.group));
    const std::size_t triv = column_of_trivial(table);
    ASSERT_LT(triv, table.size());
    ASSERT_EQ(r.witness.size(), 13u);
    for (const auto& row : r.witness) {
        const long long sign = row.n % 2 == 0 ? 1 : -1;
        const long long p = ipow(3, row.n);
        for (std::size_t a = 0; a < table.size(); ++a) {
            const long long expected = a == triv ? (p + 3 * sign) / 4 : (p - sign) / 4;
            EXPECT_EQ(static_cast<long long>(row.multiplicities[a]), expected) << "l=" << row.n << " a=" << a;
        }
    }
    EXPECT_FALSE(r.witness[1].satisfied);
}

TEST(L0All, ExplicitDecompositionAgreesForSmallPowers) {
    const auto u = groups::spin1_pi_rotations();
    const auto r = l0_all_irreps(u);
    const auto table = irreps(Cocycle::trivial(u.group));
    for (std::size_t l = 0; l <= 3; ++l)
        for (std::size_t a = 0; a < table.size(); ++a)
            EXPECT_EQ(r.witness[l].multiplicities[a], explicit_multiplicity(u, table.characters[a], l));
}

TEST(L0All, Z2SigmaZ) {
    const auto r = l0_all_irreps(groups::z2_sigma_z());
    EXPECT_EQ(r.exact_min, 1u);
    EXPECT_EQ(r.analytic_bound, 1u);
    EXPECT_EQ(*r.certificate, 1u);
    for (std::size_t l = 1; l < r.witness.size(); ++l)
        for (auto m : r.witness[l].multiplicities) EXPECT_EQ(m, static_cast<std::size_t>(ipow(2, l) / 2));
}

TEST(L0All, ExactNeverExceedsAnalytic) {
    for (const auto& u : {groups::spin1_pi_rotations(), groups::z2_sigma_z(), groups::regular_onsite(groups::symmetric3()),
                          groups::regular_onsite(groups::quaternion()), groups::regular_onsite(groups::cyclic(5))}) {
        const auto r = l0_all_irreps(u);
        EXPECT_LE(r.exact_min, r.analytic_bound);
        ASSERT_TRUE(r.certificate.has_value());
        EXPECT_LE(*r.certificate, std::max<std::size_t>(1, 2 * r.exact_min));
    }
}

TEST(L0All, AnalyticBoundIgnoresCharacterRoundoff) {
    // Σ_{g≠e} (1/3)^l is exactly 1 at l = 1; a character of −1 + 1e-15 must not tip it below.
    auto u = groups::spin1_pi_rotations();
    std::vector<CMatrix> ms = u.matrices;
    ms[1] = ms[1] * cplx(1.0 - 3e-16, 0.0);
    const auto noisy = validate_onsite_rep(u.group, ms);
    EXPECT_EQ(l0_all_irreps(noisy).analytic_bound, 2u);
    EXPECT_EQ(l0_all_irreps(noisy).exact_min, 2u);
}

TEST(L0All, RegularRepContainsEverythingAtOnce) {
    const auto r = l0_all_irreps(groups::regular_onsite(groups::dihedral4()));
    EXPECT_EQ(r.exact_min, 1u);
}

TEST(L0All, ShortWindowIsReported) {
    BoundsConfig cfg;
    cfg.l_max = 1;
    try {
        l0_all_irreps(groups::spin1_pi_rotations(), cfg);
        FAIL() << "expected NotFoundWithinCap";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotFoundWithinCap);
    }
}

TEST(L0Pair, Spin1WithBothClasses) {
    const auto u = groups::spin1_pi_rotations();
    const auto r = l0_pair(u, {Cocycle::trivial(u.group), cocycles::pauli()});
    EXPECT_EQ(r.exact_min, 2u);
    EXPECT_LE(r.exact_min, r.analytic_bound);
    // 16 genuine pairs plus the single Pauli pair.
    ASSERT_EQ(r.columns.size(), 17u);
    for (const auto& row : r.witness) EXPECT_EQ(static_cast<long long>(row.multiplicities.back()), ipow(3, row.n));
}

TEST(L0Pair, PairMultiplicityOracle) {
    const auto u = groups::spin1_pi_rotations();
    const auto t = irreps(Cocycle::trivial(u.group));
    const auto r = l0_pair(u, {Cocycle::trivial(u.group)});
    const auto chi_u = u.character();
    for (const auto& row : r.witness) {
        std::size_t col = 0;
        for (std::size_t a = 0; a < t.size(); ++a)
            for (std::size_t b = 0; b < t.size(); ++b, ++col) {
                // Characters of K4 are real ±1, so α ⊗ β̄ is the character with values χ_α χ_β.
                std::vector<cplx> ab(4);
                for (std::size_t g = 0; g < 4; ++g) ab[g] = t.characters[a][g] * t.characters[b][g];
                const long long sign = row.n % 2 == 0 ? 1 : -1;
                const long long p = ipow(3, row.n);
                const bool trivial = std::abs(ab[1] - 1.0) < 1e-9 && std::abs(ab[2] - 1.0) < 1e-9;
                EXPECT_EQ(static_cast<long long>(row.multiplicities[col]), trivial ? (p + 3 * sign) / 4 : (p - sign) / 4);
            }
    }
}

TEST(L0Pair, RejectsForeignGroup) {
    try {
        l0_pair(groups::z2_sigma_z(), {cocycles::pauli()});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::GroupMismatch);
    }
}

TEST(NmSigma, PauliClassAnalyticAndExact) {
    const auto u = groups::spin1_pi_rotations();
    for (std::size_t m = 1; m <= 9; ++m) {
        const auto r = n_m_sigma(u, cocycles::pauli(), m);
        std::size_t analytic = 0;
        while (static_cast<double>(ipow(3, analytic)) / 2.0 < static_cast<double>(m)) ++analytic;
        std::size_t exact = 0;
        while (2 * ipow(3, exact) < static_cast<long long>(m)) ++exact;  // σ-regular holds two copies
        EXPECT_EQ(r.analytic_bound, analytic) << m;
        EXPECT_EQ(r.exact_min, exact) << m;
        EXPECT_LE(r.exact_min, r.analytic_bound);
    }
    EXPECT_EQ(n_m_sigma(u, cocycles::pauli(), 2).analytic_bound, 2u);
}

TEST(NmSigma, CustomTestRepresentation) {
    const auto u = groups::spin1_pi_rotations();
    const auto r = n_m_sigma(u, cocycles::pauli(), 9, reps::pauli());
    EXPECT_EQ(r.exact_min, 2u);
    EXPECT_EQ(r.witness[2].multiplicities[0], 9u);
}

TEST(NmSigma, TrivialClassOnZ2) {
    const auto u = groups::z2_sigma_z();
    const auto r = n_m_sigma(u, Cocycle::trivial(u.group), 3);
    // l0 = 1 and 2^2 > 3 gives 1·(2+1).
    EXPECT_EQ(r.analytic_bound, 3u);
    EXPECT_EQ(r.exact_min, 2u);
    for (const auto& row : r.witness)
        for (auto m : row.multiplicities) EXPECT_EQ(static_cast<long long>(m), ipow(2, row.n));
}

TEST(NmSigma, MEqualsOneIsImmediate) {
    const auto u = groups::spin1_pi_rotations();
    EXPECT_EQ(n_m_sigma(u, Cocycle::trivial(u.group), 1).exact_min, 0u);
    EXPECT_EQ(n_m_sigma(u, cocycles::pauli(), 1).exact_min, 0u);
}

TEST(NmSigma, RejectsMismatchedTestRep) {
    const auto u = groups::spin1_pi_rotations();
    try {
        n_m_sigma(u, Cocycle::trivial(u.group), 2, reps::pauli());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::CocycleValueMismatch);
    }
}

TEST(Growth, PauliPowersOfThree) {
    const auto g = multiplicity_growth(groups::spin1_pi_rotations(), cocycles::pauli(), reps::pauli(), {0, 1, 2, 3});
    ASSERT_EQ(g.rows.size(), 4u);
    const std::size_t expected[] = {1, 3, 9, 27};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(g.rows[i].multiplicities[0], expected[i]);
    EXPECT_TRUE(g.nondecreasing);
}

TEST(Growth, DimensionOverflow) {
    try {
        multiplicity_growth(groups::spin1_pi_rotations(), cocycles::pauli(), reps::pauli(), {40});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DimensionOverflow);
    }
}

TEST(Growth, NonMonotoneColumnIsFlagged) {
    // Trivial class, spin-1: the trivial irrep goes 1, 0, 3 over l = 0, 1, 2.
    const auto u = groups::spin1_pi_rotations();
    const auto triv = Cocycle::trivial(u.group);
    const auto one = ProjectiveRep{triv, 1, std::vector<CMatrix>(4, CMatrix::identity(1))};
    const auto g = multiplicity_growth(u, triv, one, {0, 1, 2});
    EXPECT_FALSE(g.nondecreasing);
}
