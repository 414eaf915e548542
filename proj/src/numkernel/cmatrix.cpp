#include "cocycle_lab/numkernel/cmatrix.hpp"

#include <cmath>
#include <string>

#include "cocycle_lab/error.hpp"
#include "cocycle_lab/numkernel/kernels.hpp"

namespace cocycle_lab::numkernel {

namespace {

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(what) + ": " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                        std::to_string(b.cols()));
    }
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw Error(ErrorKind::DimensionMismatch, "entry count does not match shape");
    }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(std::span<const cplx> diag) {
    CMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

CMatrix CMatrix::column(std::span<const cplx> values) {
    return CMatrix(values.size(), 1, std::vector<cplx>(values.begin(), values.end()));
}

CMatrix CMatrix::unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
    CMatrix m(rows, cols);
    m(i, j) = 1.0;
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
}

CMatrix CMatrix::transpose() const {
    CMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

CMatrix CMatrix::conj() const {
    CMatrix t(*this);
    for (auto& v : t.data_) v = std::conj(v);
    return t;
}

cplx CMatrix::trace() const {
    if (!is_square()) throw Error(ErrorKind::DimensionMismatch, "trace of non-square matrix");
    cplx s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
    return s;
}

CMatrix CMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) {
        throw Error(ErrorKind::DimensionMismatch, "block out of range");
    }
    CMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

void CMatrix::set_block(std::size_t r0, std::size_t c0, const CMatrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) {
        throw Error(ErrorKind::DimensionMismatch, "set_block out of range");
    }
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

bool CMatrix::all_finite() const noexcept {
    for (const auto& v : data_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) { return add_scaled(1.0, o); }

CMatrix& CMatrix::operator-=(const CMatrix& o) { return add_scaled(-1.0, o); }

CMatrix& CMatrix::operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
}

CMatrix& CMatrix::add_scaled(cplx alpha, const CMatrix& o) {
    require_same_shape(*this, o, "add");
    kernels::active().axpy(data_.size(), alpha, o.data(), data_.data());
    return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "matmul " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                        " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    CMatrix c(a.rows(), b.cols());
    kernels::active().gemm_acc(a.rows(), b.cols(), a.cols(), a.data(), b.data(), c.data());
    return c;
}

CMatrix adjoint_times(const CMatrix& a, const CMatrix& b) { return a.adjoint() * b; }

double frobenius_norm(const CMatrix& m) {
    return std::sqrt(kernels::active().norm_sq(m.size(), m.data()));
}

double frobenius_distance(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b, "frobenius_distance");
    return frobenius_norm(a - b);
}

cplx hs_inner(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b, "hs_inner");
    return kernels::active().dotc(a.size(), a.data(), b.data());
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    const std::size_t rb = b.rows();
    const std::size_t cb = b.cols();
    CMatrix out(a.rows() * rb, a.cols() * cb);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            for (std::size_t k = 0; k < rb; ++k)
                for (std::size_t l = 0; l < cb; ++l) out(i * rb + k, j * cb + l) = aij * b(k, l);
        }
    return out;
}

CMatrix kron_power(const CMatrix& a, std::size_t power) {
    CMatrix out = CMatrix::identity(1);
    for (std::size_t p = 0; p < power; ++p) out = kron(out, a);
    return out;
}

CMatrix direct_sum(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
    out.set_block(0, 0, a);
    out.set_block(a.rows(), a.cols(), b);
    return out;
}

bool is_unitary(const CMatrix& m, double tol) {
    if (!m.is_square()) return false;
    const CMatrix id = CMatrix::identity(m.rows());
    return frobenius_distance(m * m.adjoint(), id) <= tol &&
           frobenius_distance(m.adjoint() * m, id) <= tol;
}

double hermiticity_defect(const CMatrix& m) { return frobenius_distance(m, m.adjoint()); }

CMatrix vectorize(const CMatrix& m) {
    return CMatrix(m.size(), 1, std::vector<cplx>(m.entries().begin(), m.entries().end()));
}

CMatrix unvectorize(const CMatrix& v, std::size_t rows, std::size_t cols) {
    if (v.size() != rows * cols) throw Error(ErrorKind::DimensionMismatch, "unvectorize");
    return CMatrix(rows, cols, std::vector<cplx>(v.entries().begin(), v.entries().end()));
}

}  // namespace cocycle_lab::numkernel
