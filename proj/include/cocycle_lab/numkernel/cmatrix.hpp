#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace cocycle_lab {

using cplx = std::complex<double>;

namespace numkernel {

/// Dense row-major complex matrix with value semantics.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data);

    /// Nested braces, one inner list per row.
    CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static CMatrix identity(std::size_t n);
    static CMatrix zeros(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }
    static CMatrix diagonal(std::span<const cplx> diag);
    /// Column vector.
    static CMatrix column(std::span<const cplx> values);
    /// E_{i,j} of size rows x cols.
    static CMatrix unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    cplx* data() noexcept { return data_.data(); }
    const cplx* data() const noexcept { return data_.data(); }
    std::span<const cplx> entries() const noexcept { return data_; }
    std::span<cplx> entries() noexcept { return data_; }

    CMatrix adjoint() const;
    CMatrix transpose() const;
    CMatrix conj() const;
    cplx trace() const;

    CMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const CMatrix& b);
    CMatrix col(std::size_t j) const { return block(0, j, rows_, 1); }

    bool all_finite() const noexcept;

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(cplx s);
    /// this += alpha * o
    CMatrix& add_scaled(cplx alpha, const CMatrix& o);

    friend bool operator==(const CMatrix&, const CMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(CMatrix a, cplx s);
CMatrix operator*(cplx s, CMatrix a);
CMatrix operator*(const CMatrix& a, const CMatrix& b);

/// a† b
CMatrix adjoint_times(const CMatrix& a, const CMatrix& b);

double frobenius_norm(const CMatrix& m);
double frobenius_distance(const CMatrix& a, const CMatrix& b);
/// Hilbert-Schmidt inner product tr(a† b).
cplx hs_inner(const CMatrix& a, const CMatrix& b);

/// Standard Kronecker product; (a⊗b)(i*rb + k, j*cb + l) = a(i,j) b(k,l).
CMatrix kron(const CMatrix& a, const CMatrix& b);
/// a^{⊗power}; power 0 gives the 1x1 identity.
CMatrix kron_power(const CMatrix& a, std::size_t power);
CMatrix direct_sum(const CMatrix& a, const CMatrix& b);

/// ‖m m† − I‖_F ≤ tol and ‖m† m − I‖_F ≤ tol.
bool is_unitary(const CMatrix& m, double tol);
double hermiticity_defect(const CMatrix& m);

/// Row-major vec(X) as a column.
CMatrix vectorize(const CMatrix& m);
CMatrix unvectorize(const CMatrix& v, std::size_t rows, std::size_t cols);

}  // namespace numkernel
}  // namespace cocycle_lab
