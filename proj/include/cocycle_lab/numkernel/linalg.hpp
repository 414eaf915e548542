#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cocycle_lab/numkernel/cmatrix.hpp"

namespace cocycle_lab::numkernel {

/// Tolerances shared across modules. Defaults follow the library-wide 1e-8 convention;
/// callers that need a different budget pass their own instance.
struct Tolerances {
    double general = 1e-8;
    double hermitian_input = 1e-10;
    int jacobi_max_sweeps = 100;
    int power_max_iterations = 100000;
};

struct EigenDecomposition {
    std::vector<double> values;  ///< ascending
    CMatrix vectors;             ///< column k is the eigenvector for values[k]
};

/// Cyclic Jacobi with a fixed (p, q) sweep order.
/// Throws NotHermitian when ‖m − m†‖_F > 1e-10·‖m‖_F and DidNotConverge past the sweep cap.
EigenDecomposition hermitian_eig(const CMatrix& m, const Tolerances& tol = {});

struct EigenPair {
    cplx value;
    CMatrix vector;  ///< unit-norm column
    int iterations = 0;
};

/// Power iteration from a fixed-seed random start. Converged when
/// ‖m v − λ v‖ ≤ tol·‖m‖_F. Throws DegenerateLeadingEigenvalue past the iteration cap.
EigenPair leading_eigenpair(const CMatrix& m, double tol, const Tolerances& caps = {});

/// lim ‖m^n‖^{1/n} via repeated squaring (2^48 effective power).
double spectral_radius(const CMatrix& m);

/// Largest singular value.
double operator_norm(const CMatrix& m);

/// Unitary factor of the polar decomposition m = W·P for invertible square m.
CMatrix polar_unitary(const CMatrix& m);

/// f(m) for Hermitian m through its eigendecomposition.
template <class F>
CMatrix hermitian_function(const CMatrix& m, F&& f) {
    const auto eig = hermitian_eig(m);
    CMatrix scaled = eig.vectors;
    for (std::size_t j = 0; j < scaled.cols(); ++j) {
        const cplx fj = f(eig.values[j]);
        for (std::size_t i = 0; i < scaled.rows(); ++i) scaled(i, j) *= fj;
    }
    return scaled * eig.vectors.adjoint();
}

/// Orthonormal basis (as columns) of the eigenspace of Hermitian m with eigenvalue > threshold.
/// Used on projections with threshold 1/2.
CMatrix range_basis(const CMatrix& m, double threshold = 0.5);

/// Number of singular values above rel_tol times the largest.
std::size_t numerical_rank(const CMatrix& m, double rel_tol = 1e-9);

CMatrix random_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng);
CMatrix random_hermitian(std::size_t n, std::mt19937_64& rng);
/// exp(iH) for a random Hermitian H.
CMatrix random_unitary(std::size_t n, std::mt19937_64& rng);

}  // namespace cocycle_lab::numkernel
