#include "cocycle_lab/mps.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "cocycle_lab/error.hpp"
#include "cocycle_lab/numkernel/linalg.hpp"

namespace cocycle_lab {

using numkernel::frobenius_distance;
using numkernel::frobenius_norm;
using numkernel::kron;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx determinant(CMatrix m) {
    const std::size_t n = m.rows();
    cplx det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(m(r, c)) > std::abs(m(piv, c))) piv = r;
        if (m(piv, c) == cplx(0.0)) return 0.0;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(piv, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            const cplx f = m(r, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
        }
    }
    return det;
}

// Hermitian, trace-one representative of a fixed point known only up to a complex scalar.
CMatrix positive_part(const CMatrix& v, std::size_t dim, const char* which) {
    CMatrix x = numkernel::unvectorize(v, dim, dim);
    const cplx tr = x.trace();
    if (std::abs(tr) < 1e-12) throw Error(ErrorKind::NotInjective, std::string(which) + " fixed point is traceless");
    x *= 1.0 / tr;
    x = 0.5 * (x + x.adjoint());
    const auto eig = numkernel::hermitian_eig(x);
    if (!(eig.values.front() > 1e-10 * eig.values.back())) {
        throw Error(ErrorKind::NotInjective, std::string(which) + " fixed point is not positive definite");
    }
    return x;
}

CMatrix transfer(const std::vector<CMatrix>& a) {
    const std::size_t dd = a[0].rows() * a[0].rows();
    CMatrix e(dd, dd);
    for (const auto& ai : a) e += kron(ai, ai.conj());
    return e;
}

// det V = 1, then the D-th root of unity that puts the largest entry's argument in (−π/D, π/D].
CMatrix fix_gauge(CMatrix v) {
    const std::size_t dim = v.rows();
    const double dd = static_cast<double>(dim);
    const cplx det = determinant(v);
    v *= std::polar(1.0, -std::arg(det) / dd);
    std::size_t best = 0;
    double top = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double a = std::abs(v.entries()[i]);
        if (a > top * (1.0 + 1e-9)) {
            top = a;
            best = i;
        }
    }
    const double arg = std::arg(v.entries()[best]);
    // Shift by 2πk/D so the argument lands in (−π/D, π/D].
    const double k = std::ceil(arg * dd / kTwoPi - 0.5);
    v *= std::polar(1.0, -kTwoPi * k / dd);
    return v;
}

enum class Side { Right, Left };

// X ↦ Σ U_ij A^j X A^{i†} (right) or X ↦ Σ U_ij A^{i†} X A^j (left), row-major vectorized.
CMatrix mixed_transfer(const MpsState& s, const CMatrix& ug, Side side) {
    const std::size_t dd = s.bond_dim * s.bond_dim;
    CMatrix e(dd, dd);
    for (std::size_t i = 0; i < s.phys_dim; ++i)
        for (std::size_t j = 0; j < s.phys_dim; ++j) {
            if (ug(i, j) == cplx(0.0)) continue;
            const CMatrix& ai = s.tensors[i];
            const CMatrix& aj = s.tensors[j];
            if (side == Side::Right) {
                e.add_scaled(ug(i, j), kron(aj, ai.conj()));
            } else {
                e.add_scaled(ug(i, j), kron(ai.adjoint(), aj.transpose()));
            }
        }
    return e;
}

void check_onsite(const MpsState& s, const OnsiteRep& u) {
    if (u.dim != s.phys_dim) {
        throw Error(ErrorKind::InvalidInput, "on-site rep has dimension " + std::to_string(u.dim) + ", state has d = " +
                                                 std::to_string(s.phys_dim));
    }
}

BondSymmetry extract(const MpsState& s, const OnsiteRep& u, Element g, Side side, const MpsTolerances& tol) {
    const std::size_t dim = s.bond_dim;
    const CMatrix e = mixed_transfer(s, u(g), side);
    const double rho = numkernel::spectral_radius(e);
    if (rho < 1.0 - tol.symmetry) {
        throw Error(ErrorKind::NotSymmetric, "g = " + u.group.name(g) + ": leading mixed-transfer modulus " +
                                                 std::to_string(rho));
    }
    const auto pair = numkernel::leading_eigenpair(e, 1e-13);
    const CMatrix x = numkernel::unvectorize(pair.vector, dim, dim);

    BondSymmetry out;
    out.theta = std::arg(pair.value) / kTwoPi;
    if (out.theta < 0.0) out.theta += 1.0;
    if (out.theta >= 1.0 - 1e-12) out.theta = 0.0;
    CMatrix v;
    if (side == Side::Right) {
        v = numkernel::polar_unitary(x);
    } else {
        // The left eigenvector is Λ V†; its polar factor V† transposes to a rep with σ̄.
        v = numkernel::polar_unitary(x).transpose();
    }
    out.v = g == 0 ? CMatrix::identity(dim) : fix_gauge(std::move(v));

    if (side == Side::Right) {
        double norm = 0.0;
        for (const auto& a : s.tensors) norm += std::norm(frobenius_norm(a));
        norm = std::sqrt(norm);
        const cplx phase = std::polar(1.0, kTwoPi * out.theta);
        double defect = 0.0;
        for (std::size_t i = 0; i < s.phys_dim; ++i) {
            CMatrix lhs(dim, dim);
            for (std::size_t j = 0; j < s.phys_dim; ++j) lhs.add_scaled(u(g)(i, j), s.tensors[j]);
            const CMatrix rhs = phase * (out.v * s.tensors[i] * out.v.adjoint());
            defect += std::norm(frobenius_distance(lhs, rhs));
        }
        out.reconstruction_defect = std::sqrt(defect) / norm;
        if (out.reconstruction_defect > tol.reconstruction) {
            throw Error(ErrorKind::NotSymmetric, "g = " + u.group.name(g) + ": reconstruction defect " +
                                                     std::to_string(out.reconstruction_defect));
        }
    }
    return out;
}

SymmetryCertificate certify(const MpsState& s, const OnsiteRep& u, Side side, const MpsTolerances& tol) {
    check_onsite(s, u);
    const auto& G = u.group;
    const std::size_t n = G.order();
    const std::size_t dim = s.bond_dim;
    SymmetryCertificate cert{{}, ProjectiveRep{Cocycle::trivial(G), 0, {}}, Cocycle::trivial(G), Cocycle::trivial(G), 0.0, false, 0, 0.0};
    std::vector<CMatrix> vs;
    for (Element g = 0; g < n; ++g) {
        auto b = extract(s, u, g, side, tol);
        cert.thetas.push_back(b.theta);
        cert.max_reconstruction_defect = std::max(cert.max_reconstruction_defect, b.reconstruction_defect);
        vs.push_back(std::move(b.v));
    }

    std::vector<std::vector<double>> turns(n, std::vector<double>(n, 0.0));
    const double dd = static_cast<double>(dim);
    for (Element g = 0; g < n; ++g)
        for (Element h = 0; h < n; ++h) {
            const CMatrix prod = vs[g] * vs[h] * vs[G.mul(g, h)].adjoint();
            const cplx sigma = prod.trace() / dd;
            const double defect = frobenius_distance(prod, CMatrix::identity(dim) * sigma) / dd;
            if (std::abs(std::abs(sigma) - 1.0) > tol.symmetry || defect > tol.consistency) {
                throw Error(ErrorKind::NotProjectivelyConsistent,
                            "(" + G.name(g) + "," + G.name(h) + "): V(g)V(h)V(gh)† is not scalar, defect " +
                                std::to_string(defect));
            }
            double t = std::arg(sigma) / kTwoPi;
            if (t < 0.0) t += 1.0;
            turns[g][h] = (g == 0 || h == 0) ? 0.0 : t;
        }
    cert.measured = Cocycle::from_turns(G, turns);
    const auto grid = std::lcm(static_cast<std::int64_t>(2 * n * G.exponent()), static_cast<std::int64_t>(dim));
    const auto snapped = snap(cert.measured, grid, tol.snap);
    cert.cocycle = snapped.cocycle;
    cert.snap_displacement = snapped.max_displacement;
    cert.snap_warned = snapped.warned;
    cert.v = ProjectiveRep{cert.cocycle, dim, std::move(vs)};

    const auto classes = enumerate_classes(G);
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes_equal(classes[i].representative, cert.cocycle)) {
            cert.class_index = i;
            return cert;
        }
    throw Error(ErrorKind::NotProjectivelyConsistent, "extracted cocycle matches no enumerated class");
}

}  // namespace

MpsState canonicalize(std::vector<CMatrix> tensors, const MpsTolerances& tol) {
    if (tensors.empty()) throw Error(ErrorKind::InvalidInput, "no tensors");
    const std::size_t dim = tensors[0].rows();
    if (dim == 0) throw Error(ErrorKind::InvalidInput, "bond dimension 0");
    for (const auto& a : tensors) {
        if (a.rows() != dim || a.cols() != dim) throw Error(ErrorKind::InvalidInput, "tensors must all be D×D");
        if (!a.all_finite()) throw Error(ErrorKind::InvalidInput, "non-finite tensor entry");
    }

    const double rho = numkernel::spectral_radius(transfer(tensors));
    if (!(rho > 0.0)) throw Error(ErrorKind::NotInjective, "transfer map is nilpotent");
    for (auto& a : tensors) a *= 1.0 / std::sqrt(rho);

    const auto right = numkernel::leading_eigenpair(transfer(tensors), 1e-13);
    const CMatrix r = positive_part(right.vector, dim, "right");
    const CMatrix r_half = numkernel::hermitian_function(r, [](double x) { return std::sqrt(x); });
    const CMatrix r_inv_half = numkernel::hermitian_function(r, [](double x) { return 1.0 / std::sqrt(x); });
    for (auto& a : tensors) a = r_inv_half * a * r_half;

    const CMatrix e = transfer(tensors);
    const auto left = numkernel::leading_eigenpair(e.adjoint(), 1e-13);
    const CMatrix lambda = positive_part(left.vector, dim, "left");

    // Remove the rank-one projection |I⟩⟨Λ| onto the leading eigenvector.
    CMatrix deflated = e;
    const CMatrix vi = numkernel::vectorize(CMatrix::identity(dim));
    const CMatrix vl = numkernel::vectorize(lambda);
    deflated -= vi * vl.adjoint();
    const double second = numkernel::spectral_radius(deflated);
    if (second > 1.0 - tol.injectivity_margin) {
        throw Error(ErrorKind::NotInjective, "transfer map has a second eigenvalue of modulus " + std::to_string(second));
    }
    return MpsState{tensors.size(), dim, std::move(tensors), lambda, second};
}

BondSymmetry extract_symmetry(const MpsState& s, const OnsiteRep& u, Element g, const MpsTolerances& tol) {
    check_onsite(s, u);
    return extract(s, u, g, Side::Right, tol);
}

SymmetryCertificate extract_cocycle(const MpsState& s, const OnsiteRep& u, const MpsTolerances& tol) {
    return certify(s, u, Side::Right, tol);
}

PhaseComparison compare_phases(const MpsState& s0, const MpsState& s1, const OnsiteRep& u, const MpsTolerances& tol) {
    auto certify_named = [&](const MpsState& s, const char* which) {
        try {
            return extract_cocycle(s, u, tol);
        } catch (const Error& e) {
            throw Error(e.kind(), std::string(which) + ": " + e.what());
        }
    };
    PhaseComparison out{false, certify_named(s0, "state 0"), certify_named(s1, "state 1")};
    out.equivalent = classes_equal(out.first.cocycle, out.second.cocycle);
    return out;
}

LeftRightReport left_right_check(const MpsState& s, const OnsiteRep& u, const MpsTolerances& tol) {
    LeftRightReport out{certify(s, u, Side::Right, tol), certify(s, u, Side::Left, tol), false};
    out.product_trivial = is_trivial(product(out.left.cocycle, out.right.cocycle));
    return out;
}

namespace {

std::vector<CMatrix> aklt_tensors() {
    const double a = std::sqrt(2.0 / 3.0);
    const double b = std::sqrt(1.0 / 3.0);
    return {CMatrix{{0.0, a}, {0.0, 0.0}}, CMatrix{{-b, 0.0}, {0.0, b}}, CMatrix{{0.0, 0.0}, {-a, 0.0}}};
}

}  // namespace

BuiltinState builtin_state(const std::string& name) {
    if (name == "aklt") return {canonicalize(aklt_tensors()), groups::spin1_pi_rotations()};
    if (name == "product_m0") {
        return {canonicalize({CMatrix{{0.0}}, CMatrix{{1.0}}, CMatrix{{0.0}}}), groups::spin1_pi_rotations()};
    }
    if (name == "product_up_z2") return {canonicalize({CMatrix{{1.0}}, CMatrix{{0.0}}}), groups::z2_sigma_z()};
    if (name == "blocked_aklt") {
        const auto a = aklt_tensors();
        std::vector<CMatrix> blocked;
        for (const auto& x : a)
            for (const auto& y : a) blocked.push_back(x * y);
        const auto u = groups::spin1_pi_rotations();
        std::vector<CMatrix> mats;
        for (Element g = 0; g < u.group.order(); ++g) mats.push_back(kron(u(g), u(g)));
        return {canonicalize(std::move(blocked)), validate_onsite_rep(u.group, std::move(mats))};
    }
    throw Error(ErrorKind::UnknownName, "no builtin state '" + name + "'");
}

std::vector<std::string> builtin_state_names() { return {"aklt", "product_m0", "product_up_z2", "blocked_aklt"}; }

}  // namespace cocycle_lab
