#include <algorithm>
#include <optional>
#include <utility>

#include "cocycle_lab/error.hpp"
#include "cocycle_lab/numkernel/intmatrix.hpp"

namespace cocycle_lab::numkernel {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged initializer");
        for (long long v : r) data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const BigInt& factor) {
    if (factor == 0) return;
    for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(src, j) != 0) (*this)(dst, j) += factor * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const BigInt& factor) {
    if (factor == 0) return;
    for (std::size_t i = 0; i < rows_; ++i)
        if ((*this)(i, src) != 0) (*this)(i, dst) += factor * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const BigInt& v) { return v == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "IntMatrix product");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t p = 0; p < a.cols(); ++p) {
            if (a(i, p) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b(p, j) != 0) c(i, j) += a(i, p) * b(p, j);
        }
    return c;
}

BigInt determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    BigInt sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t swap_with = k + 1;
            while (swap_with < n && a(swap_with, k) == 0) ++swap_with;
            if (swap_with == n) return 0;
            a.swap_rows(k, swap_with);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

std::vector<BigInt> SmithForm::diagonal() const {
    std::vector<BigInt> d;
    const std::size_t k = std::min(s.rows(), s.cols());
    d.reserve(k);
    for (std::size_t i = 0; i < k; ++i) d.push_back(s(i, i));
    return d;
}

std::size_t SmithForm::rank() const {
    std::size_t r = 0;
    for (const auto& d : diagonal())
        if (d != 0) ++r;
    return r;
}

namespace {

// Row and column operations are mirrored on the transforms so that u·m·v = s holds
// throughout, and on their inverses so that callers can map back without inverting.
struct Reducer {
    IntMatrix s, u, v, u_inv, v_inv;

    void swap_rows(std::size_t a, std::size_t b) {
        s.swap_rows(a, b);
        u.swap_rows(a, b);
        u_inv.swap_cols(a, b);
    }
    void swap_cols(std::size_t a, std::size_t b) {
        s.swap_cols(a, b);
        v.swap_cols(a, b);
        v_inv.swap_rows(a, b);
    }
    // row[dst] += f * row[src]
    void add_row(std::size_t dst, std::size_t src, const BigInt& f) {
        s.add_row_multiple(dst, src, f);
        u.add_row_multiple(dst, src, f);
        u_inv.add_col_multiple(src, dst, -f);
    }
    // col[dst] += f * col[src]
    void add_col(std::size_t dst, std::size_t src, const BigInt& f) {
        s.add_col_multiple(dst, src, f);
        v.add_col_multiple(dst, src, f);
        v_inv.add_row_multiple(src, dst, -f);
    }
    void negate_row(std::size_t r) {
        s.negate_row(r);
        u.negate_row(r);
        u_inv.negate_col(r);
    }

    // Smallest nonzero |entry| in s[t.., t..].
    std::optional<std::pair<std::size_t, std::size_t>> min_pivot(std::size_t t) const {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        BigInt best_abs;
        for (std::size_t i = t; i < s.rows(); ++i)
            for (std::size_t j = t; j < s.cols(); ++j) {
                if (s(i, j) == 0) continue;
                BigInt a = abs(s(i, j));
                if (!best || a < best_abs) {
                    best = {i, j};
                    best_abs = a;
                    if (best_abs == 1) return best;
                }
            }
        return best;
    }

    // Clears row t and column t beyond the pivot. Returns false if a remainder survived,
    // in which case the smallest remainder is moved into the pivot slot.
    bool clear_cross(std::size_t t) {
        bool clean = true;
        for (std::size_t i = t + 1; i < s.rows(); ++i) {
            if (s(i, t) == 0) continue;
            const BigInt q = s(i, t) / s(t, t);
            add_row(i, t, -q);
            if (s(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < s.cols(); ++j) {
            if (s(t, j) == 0) continue;
            const BigInt q = s(t, j) / s(t, t);
            add_col(j, t, -q);
            if (s(t, j) != 0) clean = false;
        }
        if (clean) return true;
        // Bring the smallest nonzero entry of the cross into the pivot.
        std::size_t bi = t, bj = t;
        BigInt best = abs(s(t, t));
        for (std::size_t i = t + 1; i < s.rows(); ++i)
            if (s(i, t) != 0 && abs(s(i, t)) < best) {
                best = abs(s(i, t));
                bi = i;
                bj = t;
            }
        for (std::size_t j = t + 1; j < s.cols(); ++j)
            if (s(t, j) != 0 && abs(s(t, j)) < best) {
                best = abs(s(t, j));
                bi = t;
                bj = j;
            }
        swap_rows(t, bi);
        swap_cols(t, bj);
        return false;
    }

    std::optional<std::size_t> non_divisible_row(std::size_t t) const {
        for (std::size_t i = t + 1; i < s.rows(); ++i)
            for (std::size_t j = t + 1; j < s.cols(); ++j)
                if (s(i, j) % s(t, t) != 0) return i;
        return std::nullopt;
    }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
    Reducer r{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()),
              IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
    const std::size_t limit = std::min(m.rows(), m.cols());
    for (std::size_t t = 0; t < limit; ++t) {
        const auto pivot = r.min_pivot(t);
        if (!pivot) break;
        r.swap_rows(t, pivot->first);
        r.swap_cols(t, pivot->second);
        for (;;) {
            if (!r.clear_cross(t)) continue;
            if (const auto row = r.non_divisible_row(t)) {
                r.add_row(t, *row, 1);
                continue;
            }
            break;
        }
        if (r.s(t, t) < 0) r.negate_row(t);
    }
    return SmithForm{std::move(r.s), std::move(r.u), std::move(r.v), std::move(r.u_inv),
                     std::move(r.v_inv)};
}

}  // namespace cocycle_lab::numkernel
