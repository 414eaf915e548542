#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cocycle_lab/error.hpp"
#include "cocycle_lab/numkernel/kernels.hpp"
#include "cocycle_lab/numkernel/linalg.hpp"

namespace cocycle_lab::numkernel {

namespace {

double off_diagonal_norm(const CMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// One complex Jacobi rotation annihilating a(p, q). The 2x2 block is first made real by
// the phase of a(p, q), then rotated with the classic tan(θ) choice of the smaller angle.
void rotate(CMatrix& a, CMatrix& v, std::size_t p, std::size_t q) {
    const cplx b = a(p, q);
    const double ab = std::abs(b);
    const cplx phase = b / ab;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double theta = (aqq - app) / (2.0 * ab);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const cplx jpp = c;
    const cplx jpq = s;
    const cplx jqp = -s * std::conj(phase);
    const cplx jqq = c * std::conj(phase);

    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        const cplx akp = a(k, p);
        const cplx akq = a(k, q);
        a(k, p) = akp * jpp + akq * jqp;
        a(k, q) = akp * jpq + akq * jqq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const cplx apk = a(p, k);
        const cplx aqk = a(q, k);
        a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
        a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (std::size_t k = 0; k < n; ++k) {
        const cplx vkp = v(k, p);
        const cplx vkq = v(k, q);
        v(k, p) = vkp * jpp + vkq * jqp;
        v(k, q) = vkp * jpq + vkq * jqq;
    }
}

}  // namespace

EigenDecomposition hermitian_eig(const CMatrix& m, const Tolerances& tol) {
    if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "hermitian_eig needs a square matrix");
    const std::size_t n = m.rows();
    const double norm = frobenius_norm(m);
    const double defect = hermiticity_defect(m);
    if (defect > tol.hermitian_input * norm) {
        throw Error(ErrorKind::NotHermitian, "‖m − m†‖_F = " + std::to_string(defect));
    }

    CMatrix a = m;
    a.add_scaled(1.0, m.adjoint());
    a *= 0.5;
    CMatrix v = CMatrix::identity(n);

    const double target = 1e-14 * norm;
    const double skip = 1e-300;
    bool converged = norm == 0.0;
    for (int sweep = 0; sweep < tol.jacobi_max_sweeps && !converged; ++sweep) {
        if (off_diagonal_norm(a) <= target) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                if (std::abs(a(p, q)) > skip) rotate(a, v, p, q);
    }
    if (!converged && off_diagonal_norm(a) > target) {
        throw Error(ErrorKind::DidNotConverge,
                    "Jacobi exceeded " + std::to_string(tol.jacobi_max_sweeps) + " sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition out{std::vector<double>(n), CMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

EigenPair leading_eigenpair(const CMatrix& m, double tol, const Tolerances& caps) {
    if (!m.is_square() || m.rows() == 0) {
        throw Error(ErrorKind::DimensionMismatch, "leading_eigenpair needs a non-empty square matrix");
    }
    const std::size_t n = m.rows();
    std::mt19937_64 rng(0x5EEDBA5EULL);
    CMatrix v = random_gaussian(n, 1, rng);
    v *= 1.0 / frobenius_norm(v);

    const double mnorm = frobenius_norm(m);
    if (mnorm == 0.0) return {0.0, v, 0};

    const auto& k = kernels::active();
    for (int it = 1; it <= caps.power_max_iterations; ++it) {
        CMatrix w = m * v;
        const cplx lambda = k.dotc(n, v.data(), w.data());
        CMatrix r = w;
        r.add_scaled(-lambda, v);
        if (frobenius_norm(r) <= tol * mnorm) return {lambda, v, it};
        const double wn = frobenius_norm(w);
        if (wn == 0.0) return {0.0, v, it};
        v = std::move(w);
        v *= 1.0 / wn;
    }
    throw Error(ErrorKind::DegenerateLeadingEigenvalue,
                "power iteration did not converge in " + std::to_string(caps.power_max_iterations) +
                    " iterations");
}

double spectral_radius(const CMatrix& m) {
    if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "spectral_radius of non-square matrix");
    const double s = frobenius_norm(m);
    if (s == 0.0) return 0.0;
    constexpr int kSquarings = 48;
    CMatrix x = m;
    x *= 1.0 / s;
    double log_norm = std::log(s);
    for (int k = 0; k < kSquarings; ++k) {
        CMatrix y = x * x;
        const double ny = frobenius_norm(y);
        if (ny == 0.0) return 0.0;
        log_norm = 2.0 * log_norm + std::log(ny);
        y *= 1.0 / ny;
        x = std::move(y);
    }
    return std::exp(std::ldexp(log_norm, -kSquarings));
}

double operator_norm(const CMatrix& m) {
    if (m.empty()) return 0.0;
    const CMatrix gram = m.rows() < m.cols() ? m * m.adjoint() : m.adjoint() * m;
    const auto eig = hermitian_eig(gram);
    return std::sqrt(std::max(0.0, eig.values.back()));
}

CMatrix polar_unitary(const CMatrix& m) {
    if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "polar_unitary of non-square matrix");
    const auto eig = hermitian_eig(m.adjoint() * m);
    const double top = eig.values.back();
    if (!(eig.values.front() > 1e-24 * top) || top == 0.0) {
        throw Error(ErrorKind::InvalidInput, "polar decomposition of a singular matrix");
    }
    CMatrix scaled = eig.vectors;
    for (std::size_t j = 0; j < scaled.cols(); ++j) {
        const double f = 1.0 / std::sqrt(eig.values[j]);
        for (std::size_t i = 0; i < scaled.rows(); ++i) scaled(i, j) *= f;
    }
    return m * (scaled * eig.vectors.adjoint());
}

CMatrix range_basis(const CMatrix& m, double threshold) {
    const auto eig = hermitian_eig(m);
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < eig.values.size(); ++k)
        if (eig.values[k] > threshold) keep.push_back(k);
    CMatrix basis(m.rows(), keep.size());
    for (std::size_t c = 0; c < keep.size(); ++c)
        for (std::size_t i = 0; i < m.rows(); ++i) basis(i, c) = eig.vectors(i, keep[c]);
    return basis;
}

std::size_t numerical_rank(const CMatrix& m, double rel_tol) {
    if (m.empty()) return 0;
    const CMatrix gram = m.rows() < m.cols() ? m * m.adjoint() : m.adjoint() * m;
    const auto eig = hermitian_eig(gram);
    const double top = eig.values.back();
    if (top <= 0.0) return 0;
    std::size_t r = 0;
    for (double v : eig.values)
        if (v > rel_tol * rel_tol * top) ++r;
    return r;
}

CMatrix random_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    CMatrix m(rows, cols);
    for (auto& v : m.entries()) {
        const double re = dist(rng);
        const double im = dist(rng);
        v = cplx(re, im);
    }
    return m;
}

CMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
    CMatrix g = random_gaussian(n, n, rng);
    CMatrix h = g + g.adjoint();
    h *= 0.5;
    return h;
}

CMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
    const CMatrix h = random_hermitian(n, rng);
    return hermitian_function(h, [](double x) { return std::polar(1.0, 3.0 * x); });
}

}  // namespace cocycle_lab::numkernel
