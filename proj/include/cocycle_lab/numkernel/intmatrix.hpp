#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cocycle_lab::numkernel {

using BigInt = boost::multiprecision::cpp_int;

/// Exact integer matrix, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[dst] += factor * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const BigInt& factor);
    /// col[dst] += factor * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const BigInt& factor);
    void negate_row(std::size_t r);
    void negate_col(std::size_t c);

    bool is_zero() const;

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigInt> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

/// Exact determinant (fraction-free Bareiss elimination).
BigInt determinant(const IntMatrix& m);

struct SmithForm {
    IntMatrix s;  ///< diagonal, d_i | d_{i+1}, nonnegative
    IntMatrix u;  ///< unimodular, u · m · v = s
    IntMatrix v;  ///< unimodular
    IntMatrix u_inv;
    IntMatrix v_inv;

    std::vector<BigInt> diagonal() const;
    std::size_t rank() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

}  // namespace cocycle_lab::numkernel
