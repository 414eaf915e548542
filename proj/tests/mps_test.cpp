#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cocycle_lab/error.hpp"
#include "cocycle_lab/mps.hpp"
#include "cocycle_lab/numkernel/linalg.hpp"

using namespace cocycle_lab;
using numkernel::frobenius_distance;

namespace {

template <class F>
void expect_error(ErrorKind kind, F&& f) {
    try {
        f();
        FAIL() << "expected " << to_string(kind);
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

CMatrix right_identity_sum(const MpsState& s) {
    CMatrix sum(s.bond_dim, s.bond_dim);
    for (const auto& a : s.tensors) sum += a * a.adjoint();
    return sum;
}

// |⟨P, V⟩| / D = 1 iff V is P up to a phase, for unitary P and V.
double overlap(const CMatrix& p, const CMatrix& v) { return std::abs(numkernel::hs_inner(p, v)) / static_cast<double>(p.rows()); }

const CMatrix kSx{{0.0, 1.0}, {1.0, 0.0}};
const CMatrix kSz{{1.0, 0.0}, {0.0, -1.0}};

}  // namespace

TEST(Canonicalize, AkltIsAlreadyCanonical) {
    const double a = std::sqrt(2.0 / 3.0), b = std::sqrt(1.0 / 3.0);
    const std::vector<CMatrix> raw{CMatrix{{0.0, a}, {0.0, 0.0}}, CMatrix{{-b, 0.0}, {0.0, b}}, CMatrix{{0.0, 0.0}, {-a, 0.0}}};
    const auto s = canonicalize(raw);
    EXPECT_EQ(s.phys_dim, 3u);
    EXPECT_EQ(s.bond_dim, 2u);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_LT(frobenius_distance(s.tensors[i], raw[i]), 1e-10);
    EXPECT_LT(frobenius_distance(right_identity_sum(s), CMatrix::identity(2)), 1e-12);
    // AKLT transfer spectrum is {1, −1/3, −1/3, −1/3}.
    EXPECT_NEAR(s.second_eigenvalue, 1.0 / 3.0, 1e-8);
}

TEST(Canonicalize, ProductState) {
    const auto s = canonicalize({CMatrix{{1.0}}, CMatrix{{0.0}}});
    EXPECT_EQ(s.bond_dim, 1u);
    EXPECT_LT(frobenius_distance(right_identity_sum(s), CMatrix::identity(1)), 1e-14);
}

TEST(Canonicalize, GaugedAndScaledInputIsRestored) {
    std::mt19937_64 rng(3);
    const auto ref = builtin_state("aklt").state;
    CMatrix x = numkernel::random_gaussian(2, 2, rng);
    x += CMatrix::identity(2) * 3.0;
    // Inverse of a 2×2 matrix by the adjugate.
    const cplx det = x(0, 0) * x(1, 1) - x(0, 1) * x(1, 0);
    const CMatrix xinv = (1.0 / det) * CMatrix{{x(1, 1), -x(0, 1)}, {-x(1, 0), x(0, 0)}};
    std::vector<CMatrix> raw;
    for (const auto& a : ref.tensors) raw.push_back(2.5 * (x * a * xinv));
    const auto s = canonicalize(raw);
    EXPECT_LT(frobenius_distance(right_identity_sum(s), CMatrix::identity(2)), 1e-9);
    const auto u = groups::spin1_pi_rotations();
    EXPECT_TRUE(classes_equal(extract_cocycle(s, u).cocycle, cocycles::pauli()));
}

TEST(Canonicalize, RejectsGhzAndDegenerateInput) {
    expect_error(ErrorKind::NotInjective, [] {
        canonicalize({CMatrix{{1.0, 0.0}, {0.0, 0.0}}, CMatrix{{0.0, 0.0}, {0.0, 1.0}}});
    });
    expect_error(ErrorKind::NotInjective, [] { canonicalize({CMatrix(2, 2), CMatrix(2, 2)}); });
    expect_error(ErrorKind::InvalidInput, [] { canonicalize({CMatrix(2, 2), CMatrix(3, 3)}); });
    expect_error(ErrorKind::InvalidInput, [] { canonicalize({}); });
}

TEST(ExtractSymmetry, AkltBondActionIsPauli) {
    const auto b = builtin_state("aklt");
    const auto vx = extract_symmetry(b.state, b.onsite, 1);
    const auto vz = extract_symmetry(b.state, b.onsite, 2);
    EXPECT_NEAR(overlap(kSx, vx.v), 1.0, 1e-8);
    EXPECT_NEAR(overlap(kSz, vz.v), 1.0, 1e-8);
    EXPECT_LT(vx.reconstruction_defect, 1e-6);
    EXPECT_NEAR(std::abs(numkernel::hs_inner(vx.v, vx.v)), 2.0, 1e-10);
}

TEST(ExtractSymmetry, ProductM0Phases) {
    const auto b = builtin_state("product_m0");
    // R_x sends m = 0 to −(m = 0); R_z fixes it.
    const double expected[] = {0.0, 0.5, 0.0, 0.5};
    for (Element g = 0; g < 4; ++g) {
        const auto r = extract_symmetry(b.state, b.onsite, g);
        EXPECT_NEAR(std::abs(r.v(0, 0) - cplx(1.0)), 0.0, 1e-12);
        EXPECT_NEAR(r.theta, expected[g], 1e-10) << g;
    }
}

TEST(ExtractSymmetry, NonSymmetryIsRejected) {
    const auto b = builtin_state("aklt");
    std::mt19937_64 rng(5);
    const CMatrix w = numkernel::random_unitary(3, rng);
    const OnsiteRep fake{groups::cyclic(2), 3, {CMatrix::identity(3), w}};
    expect_error(ErrorKind::NotSymmetric, [&] { extract_symmetry(b.state, fake, 1); });
}

TEST(ExtractCocycle, AkltCarriesThePauliClass) {
    const auto b = builtin_state("aklt");
    const auto cert = extract_cocycle(b.state, b.onsite);
    EXPECT_TRUE(cert.cocycle.is_exact());
    EXPECT_TRUE(check_cocycle(cert.cocycle).valid);
    EXPECT_LT(cert.snap_displacement, 1e-4);
    EXPECT_NEAR(std::abs(commutator_invariant(cert.cocycle, 1, 2).value() - cplx(-1.0)), 0.0, 1e-12);
    EXPECT_TRUE(classes_equal(cert.cocycle, cocycles::pauli()));
    EXPECT_TRUE(classes_equal(enumerate_classes(b.onsite.group)[cert.class_index].representative, cocycles::pauli()));
}

TEST(ExtractCocycle, ProductAndBlockedStates) {
    const auto p = builtin_state("product_m0");
    EXPECT_TRUE(is_trivial(extract_cocycle(p.state, p.onsite).cocycle));
    const auto z = builtin_state("product_up_z2");
    EXPECT_TRUE(is_trivial(extract_cocycle(z.state, z.onsite).cocycle));
    const auto bl = builtin_state("blocked_aklt");
    EXPECT_EQ(bl.state.phys_dim, 9u);
    EXPECT_TRUE(classes_equal(extract_cocycle(bl.state, bl.onsite).cocycle, cocycles::pauli()));
}

TEST(ExtractCocycle, ReconstructionOnEveryFixture) {
    for (const auto& name : builtin_state_names()) {
        const auto b = builtin_state(name);
        const auto cert = extract_cocycle(b.state, b.onsite);
        EXPECT_LE(cert.max_reconstruction_defect, 1e-6) << name;
        EXPECT_LT(cert.snap_displacement, 1e-4) << name;
        EXPECT_FALSE(cert.snap_warned) << name;
        EXPECT_TRUE(check_cocycle(cert.cocycle).valid) << name;
    }
}

TEST(ExtractCocycle, GaugeInvariance) {
    std::mt19937_64 rng(7);
    const auto b = builtin_state("aklt");
    const auto base = extract_cocycle(b.state, b.onsite);
    for (int t = 0; t < 10; ++t) {
        const CMatrix w = numkernel::random_unitary(2, rng);
        std::vector<CMatrix> raw;
        for (const auto& a : b.state.tensors) raw.push_back(w * a * w.adjoint());
        const auto cert = extract_cocycle(canonicalize(raw), b.onsite);
        EXPECT_TRUE(classes_equal(cert.cocycle, base.cocycle));
        EXPECT_EQ(cert.class_index, base.class_index);
    }
}

TEST(ComparePhases, Verdicts) {
    const auto aklt = builtin_state("aklt");
    const auto m0 = builtin_state("product_m0");
    EXPECT_TRUE(compare_phases(aklt.state, aklt.state, aklt.onsite).equivalent);
    EXPECT_FALSE(compare_phases(aklt.state, m0.state, aklt.onsite).equivalent);

    const auto up = builtin_state("product_up_z2");
    // A diagonal rotation commutes with diag(1, −1).
    const auto rotated = canonicalize({CMatrix{{std::polar(1.0, 0.7)}}, CMatrix{{0.0}}});
    EXPECT_TRUE(compare_phases(up.state, rotated, up.onsite).equivalent);
}

TEST(ComparePhases, NamesTheOffendingState) {
    const auto aklt = builtin_state("aklt");
    std::mt19937_64 rng(9);
    const CMatrix w = numkernel::random_unitary(3, rng);
    const OnsiteRep fake{groups::cyclic(2), 3, {CMatrix::identity(3), w}};
    try {
        compare_phases(aklt.state, aklt.state, fake);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotSymmetric);
        EXPECT_NE(std::string(e.what()).find("state 0"), std::string::npos);
    }
}

TEST(LeftRight, EdgesAreInverse) {
    for (const auto& name : builtin_state_names()) {
        const auto b = builtin_state(name);
        const auto r = left_right_check(b.state, b.onsite);
        EXPECT_TRUE(r.product_trivial) << name;
        EXPECT_TRUE(classes_equal(r.left.cocycle, inverse(r.right.cocycle))) << name;
    }
    const auto aklt = builtin_state("aklt");
    const auto r = left_right_check(aklt.state, aklt.onsite);
    EXPECT_TRUE(classes_equal(r.left.cocycle, cocycles::pauli()));
}

TEST(Builtins, UnknownName) {
    expect_error(ErrorKind::UnknownName, [] { builtin_state("haldane"); });
    EXPECT_EQ(builtin_state("product_m0").state.bond_dim, 1u);
}
