#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "cocycle_lab/error.hpp"
#include "cocycle_lab/numkernel/cmatrix.hpp"
#include "cocycle_lab/numkernel/intmatrix.hpp"
#include "cocycle_lab/numkernel/kernels.hpp"
#include "cocycle_lab/numkernel/linalg.hpp"

using namespace cocycle_lab;
using namespace cocycle_lab::numkernel;

namespace {

Eigen::MatrixXcd to_eigen(const CMatrix& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
    return e;
}

CMatrix gaussian_integer_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(-4, 4);
    CMatrix m(r, c);
    for (auto& v : m.entries()) {
        const double re = d(rng);
        const double im = d(rng);
        v = cplx(re, im);
    }
    return m;
}

const cplx I{0.0, 1.0};

// Restores the runtime-selected kernels after a test pins one.
struct IsaGuard {
    kernels::Isa saved = kernels::active().isa;
    ~IsaGuard() { kernels::set_isa(saved); }
};

}  // namespace

TEST(HermitianEig, IdentityHasUnitSpectrum) {
    const auto e = hermitian_eig(CMatrix::identity(3));
    ASSERT_EQ(e.values.size(), 3u);
    for (double v : e.values) EXPECT_NEAR(v, 1.0, 1e-14);
    EXPECT_TRUE(is_unitary(e.vectors, 1e-12));
}

TEST(HermitianEig, DiagonalIsSortedAscending) {
    const auto e = hermitian_eig(CMatrix{{2.0, 0.0}, {0.0, -1.0}});
    EXPECT_NEAR(e.values[0], -1.0, 1e-14);
    EXPECT_NEAR(e.values[1], 2.0, 1e-14);
    EXPECT_NEAR(std::abs(e.vectors(1, 0)), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(e.vectors(0, 1)), 1.0, 1e-14);
}

TEST(HermitianEig, PauliXMatchesCharacteristicPolynomial) {
    const CMatrix sx{{0.0, 1.0}, {1.0, 0.0}};
    const auto e = hermitian_eig(sx);
    EXPECT_NEAR(e.values[0], -1.0, 1e-12);
    EXPECT_NEAR(e.values[1], 1.0, 1e-12);
    // Eigenvectors (1, ∓1)/√2 up to phase.
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(e.vectors(0, 0) * r - e.vectors(1, 0) * r), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(e.vectors(0, 1) * r + e.vectors(1, 1) * r), 1.0, 1e-12);
}

TEST(HermitianEig, RejectsNonHermitian) {
    const CMatrix m{{0.0, 1.0}, {0.0, 0.0}};
    try {
        hermitian_eig(m);
        FAIL() << "expected NotHermitian";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotHermitian);
    }
}

TEST(HermitianEig, RandomReconstructionAndEigenOracle) {
    std::mt19937_64 rng(11);
    for (std::size_t n = 1; n <= 16; ++n) {
        const CMatrix h = random_hermitian(n, rng);
        const auto e = hermitian_eig(h);
        EXPECT_TRUE(is_unitary(e.vectors, 1e-10)) << n;
        CMatrix scaled = e.vectors;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= e.values[j];
        EXPECT_LE(frobenius_distance(scaled * e.vectors.adjoint(), h), 1e-8) << n;
        for (std::size_t k = 0; k < n; ++k) {
            const CMatrix v = e.vectors.col(k);
            EXPECT_LE(frobenius_norm(h * v - e.values[k] * v), 1e-9 * frobenius_norm(h));
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> oracle(to_eigen(h));
        for (std::size_t k = 0; k < n; ++k)
            EXPECT_NEAR(e.values[k], oracle.eigenvalues()(static_cast<Eigen::Index>(k)), 1e-9);
    }
}

TEST(LeadingEigenpair, DiagonalCases) {
    const auto p = leading_eigenpair(CMatrix{{3.0, 0.0}, {0.0, 1.0}}, 1e-10);
    EXPECT_NEAR(std::abs(p.value - 3.0), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(p.vector(0, 0)), 1.0, 1e-9);

    const auto q = leading_eigenpair(CMatrix{{2.0 * I, 0.0}, {0.0, 1.0}}, 1e-10);
    EXPECT_NEAR(std::abs(q.value - 2.0 * I), 0.0, 1e-9);
}

TEST(LeadingEigenpair, AkltTransferOperatorAgainstFullSpectrum) {
    const double a = std::sqrt(2.0 / 3.0);
    const double b = std::sqrt(1.0 / 3.0);
    const CMatrix Ap{{0.0, a}, {0.0, 0.0}};
    const CMatrix A0{{-b, 0.0}, {0.0, b}};
    const CMatrix Am{{0.0, 0.0}, {-a, 0.0}};
    // Row-major vec: vec(A X B) = (A ⊗ Bᵀ) vec(X), so E = Σ A ⊗ conj(A).
    CMatrix e(4, 4);
    for (const CMatrix* t : {&Ap, &A0, &Am}) e += kron(*t, t->conj());
    const auto p = leading_eigenpair(e, 1e-10);
    EXPECT_NEAR(std::abs(p.value - 1.0), 0.0, 1e-8);

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> oracle(to_eigen(e));
    double top = 0.0;
    for (Eigen::Index k = 0; k < 4; ++k) top = std::max(top, std::abs(oracle.eigenvalues()(k)));
    EXPECT_NEAR(top, 1.0, 1e-10);
    EXPECT_NEAR(spectral_radius(e), 1.0, 1e-9);
}

TEST(LeadingEigenpair, DegenerateModulusDoesNotConverge) {
    Tolerances caps;
    caps.power_max_iterations = 2000;
    const CMatrix flip{{0.0, 1.0}, {1.0, 0.0}};
    try {
        leading_eigenpair(flip, 1e-12, caps);
        FAIL() << "expected DegenerateLeadingEigenvalue";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateLeadingEigenvalue);
    }
}

TEST(Kron, SmallCases) {
    EXPECT_EQ(kron(CMatrix::identity(2), CMatrix::identity(2)), CMatrix::identity(4));

    const CMatrix sx{{0.0, 1.0}, {1.0, 0.0}};
    const CMatrix sz{{1.0, 0.0}, {0.0, -1.0}};
    const CMatrix expected{{0.0, 0.0, 1.0, 0.0},
                           {0.0, 0.0, 0.0, -1.0},
                           {1.0, 0.0, 0.0, 0.0},
                           {0.0, -1.0, 0.0, 0.0}};
    EXPECT_EQ(kron(sx, sz), expected);

    const CMatrix k = kron(CMatrix::unit(2, 2, 0, 0), CMatrix::unit(2, 2, 1, 1));
    EXPECT_EQ(k, CMatrix::unit(4, 4, 1, 1));
}

TEST(Kron, MixedProductAndAssociativity) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        // Gaussian-integer entries keep every product exact, so construction order is invisible.
        const CMatrix a = gaussian_integer_matrix(2, 3, rng);
        const CMatrix b = gaussian_integer_matrix(3, 2, rng);
        const CMatrix c = gaussian_integer_matrix(2, 2, rng);
        EXPECT_EQ(kron(kron(a, b), c), kron(a, kron(b, c)));

        const CMatrix a2 = random_gaussian(2, 2, rng);
        const CMatrix b2 = random_gaussian(2, 2, rng);
        const CMatrix c2 = random_gaussian(2, 2, rng);
        const CMatrix d2 = random_gaussian(2, 2, rng);
        EXPECT_LE(frobenius_distance(kron(a2, b2) * kron(c2, d2), kron(a2 * c2, b2 * d2)), 1e-12);
    }
}

TEST(Polar, UnitaryFactorOfScaledUnitary) {
    std::mt19937_64 rng(3);
    const CMatrix u = random_unitary(4, rng);
    EXPECT_TRUE(is_unitary(u, 1e-10));
    const CMatrix w = polar_unitary(u * cplx(2.5, 0.0));
    EXPECT_LE(frobenius_distance(w, u), 1e-10);
}

TEST(RangeBasis, ProjectorRank) {
    CMatrix p(3, 3);
    p(0, 0) = 1.0;
    p(2, 2) = 1.0;
    const CMatrix b = range_basis(p);
    EXPECT_EQ(b.cols(), 2u);
    EXPECT_LE(frobenius_distance(b * b.adjoint(), p), 1e-12);
    EXPECT_EQ(numerical_rank(p), 2u);
}

TEST(SmithNormalForm, Identity) {
    const auto f = smith_normal_form(IntMatrix::identity(3));
    EXPECT_EQ(f.s, IntMatrix::identity(3));
    EXPECT_EQ(f.u, IntMatrix::identity(3));
    EXPECT_EQ(f.v, IntMatrix::identity(3));
}

TEST(SmithNormalForm, CoprimeDiagonal) {
    const IntMatrix m{{2, 0}, {0, 3}};
    const auto f = smith_normal_form(m);
    EXPECT_EQ(f.s, (IntMatrix{{1, 0}, {0, 6}}));
    EXPECT_EQ(f.u * m * f.v, f.s);
}

TEST(SmithNormalForm, ZeroMatrix) {
    const auto f = smith_normal_form(IntMatrix(2, 3));
    EXPECT_TRUE(f.s.is_zero());
    EXPECT_EQ(f.u, IntMatrix::identity(2));
    EXPECT_EQ(f.v, IntMatrix::identity(3));
}

TEST(SmithNormalForm, RandomMatricesSatisfyContract) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> entry(-6, 6);
    std::uniform_int_distribution<int> shape(1, 7);
    for (int t = 0; t < 60; ++t) {
        IntMatrix m(shape(rng), shape(rng));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = entry(rng);
        const auto f = smith_normal_form(m);
        EXPECT_EQ(f.u * m * f.v, f.s);
        EXPECT_EQ(abs(determinant(f.u)), 1);
        EXPECT_EQ(abs(determinant(f.v)), 1);
        EXPECT_EQ(f.u * f.u_inv, IntMatrix::identity(m.rows()));
        EXPECT_EQ(f.v * f.v_inv, IntMatrix::identity(m.cols()));
        for (std::size_t i = 0; i < f.s.rows(); ++i)
            for (std::size_t j = 0; j < f.s.cols(); ++j)
                if (i != j) EXPECT_EQ(f.s(i, j), 0);
        const auto d = f.diagonal();
        for (std::size_t i = 0; i + 1 < d.size(); ++i) {
            EXPECT_GE(d[i], 0);
            if (d[i] == 0) {
                EXPECT_EQ(d[i + 1], 0);
            } else {
                EXPECT_EQ(d[i + 1] % d[i], 0);
            }
        }
    }
}

TEST(Determinant, BareissMatchesCofactor) {
    const IntMatrix m{{2, -1, 0}, {1, 3, 4}, {0, 5, -2}};
    // 2(3·-2 − 4·5) − (−1)(1·-2 − 0) = 2(−26) + (−2) = −54
    EXPECT_EQ(determinant(m), -54);
    EXPECT_EQ(determinant(IntMatrix{{0, 1}, {1, 0}}), -1);
}

TEST(Kernels, Avx2AgreesWithScalarReference) {
    const kernels::KernelTable* wide = kernels::avx2_table();
    if (wide == nullptr || !kernels::cpu_supports(kernels::Isa::Avx2)) GTEST_SKIP() << "AVX2 unavailable";
    const kernels::KernelTable& ref = kernels::scalar_table();
    std::mt19937_64 rng(23);
    for (std::size_t m : {1u, 3u, 4u, 7u, 16u})
        for (std::size_t n : {1u, 2u, 5u, 8u, 13u})
            for (std::size_t k : {1u, 4u, 9u}) {
                const CMatrix a = random_gaussian(m, k, rng);
                const CMatrix b = random_gaussian(k, n, rng);
                CMatrix c1 = random_gaussian(m, n, rng);
                CMatrix c2 = c1;
                ref.gemm_acc(m, n, k, a.data(), b.data(), c1.data());
                wide->gemm_acc(m, n, k, a.data(), b.data(), c2.data());
                EXPECT_LE(frobenius_distance(c1, c2), 1e-12 * (1.0 + frobenius_norm(c1)));
            }
    for (std::size_t n : {0u, 1u, 2u, 3u, 5u, 8u, 31u, 64u}) {
        const CMatrix x = random_gaussian(n, 1, rng);
        const CMatrix y = random_gaussian(n, 1, rng);
        EXPECT_LE(std::abs(ref.dotc(n, x.data(), y.data()) - wide->dotc(n, x.data(), y.data())),
                  1e-12 * (1.0 + n));
        EXPECT_NEAR(ref.norm_sq(n, x.data()), wide->norm_sq(n, x.data()), 1e-12 * (1.0 + n));
        CMatrix y1 = y;
        CMatrix y2 = y;
        const cplx alpha(0.3, -1.7);
        ref.axpy(n, alpha, x.data(), y1.data());
        wide->axpy(n, alpha, x.data(), y2.data());
        EXPECT_LE(frobenius_distance(y1, y2), 1e-13 * (1.0 + n));
    }
}

TEST(Kernels, PinnedScalarPathGivesSameEigenvalues) {
    IsaGuard guard;
    std::mt19937_64 rng(29);
    const CMatrix h = random_hermitian(12, rng);
    ASSERT_TRUE(kernels::set_isa(kernels::Isa::Scalar));
    const auto scalar = hermitian_eig(h);
    kernels::set_isa(kernels::detect_best());
    const auto best = hermitian_eig(h);
    for (std::size_t k = 0; k < 12; ++k) EXPECT_NEAR(scalar.values[k], best.values[k], 1e-11);
}
