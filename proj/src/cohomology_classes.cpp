#include <map>
#include <utility>

#include "cocycle_lab/cohomology.hpp"
#include "cocycle_lab/error.hpp"
#include "cocycle_lab/numkernel/intmatrix.hpp"
#include "cocycle_lab/projrep.hpp"

namespace cocycle_lab {

using numkernel::BigInt;
using numkernel::IntMatrix;

bool is_trivial(const Cocycle& c) {
    const auto table = irreps(c);
    for (const auto& alpha : table.irreps)
        if (alpha.dim == 1) return true;
    return false;
}

bool classes_equal(const Cocycle& c1, const Cocycle& c2) {
    if (!(c1.group() == c2.group())) throw Error(ErrorKind::GroupMismatch, "cocycles live on different groups");
    return is_trivial(product(c1, conjugate(c2)));
}

namespace {

constexpr std::size_t kMaxEnumerationOrder = 8;

// Normalized cochains: 1-cochains on G∖e, 2-cochains on (G∖e)², 3-cochains on (G∖e)³.
struct CochainComplex {
    std::size_t r;  // |G| − 1
    IntMatrix d1;   // pairs × singles
    IntMatrix d2;   // triples × pairs

    std::size_t pair(Element g, Element h) const { return (g - 1) * r + (h - 1); }
};

CochainComplex build_complex(const FiniteGroup& G) {
    const std::size_t r = G.order() - 1;
    CochainComplex cx{r, IntMatrix(r * r, r), IntMatrix(r * r * r, r * r)};
    for (Element g = 1; g <= r; ++g)
        for (Element h = 1; h <= r; ++h) {
            const std::size_t row = cx.pair(g, h);
            cx.d1(row, g - 1) += 1;
            cx.d1(row, h - 1) += 1;
            if (const Element gh = G.mul(g, h); gh != 0) cx.d1(row, gh - 1) -= 1;
        }
    for (Element g = 1; g <= r; ++g)
        for (Element h = 1; h <= r; ++h)
            for (Element k = 1; k <= r; ++k) {
                const std::size_t row = ((g - 1) * r + (h - 1)) * r + (k - 1);
                cx.d2(row, cx.pair(h, k)) += 1;
                if (const Element gh = G.mul(g, h); gh != 0) cx.d2(row, cx.pair(gh, k)) -= 1;
                if (const Element hk = G.mul(h, k); hk != 0) cx.d2(row, cx.pair(g, hk)) += 1;
                cx.d2(row, cx.pair(g, h)) -= 1;
            }
    return cx;
}

std::int64_t to_mod(const BigInt& v, std::int64_t m) {
    BigInt r = v % m;
    if (r < 0) r += m;
    return r.convert_to<std::int64_t>();
}

}  // namespace

std::vector<CohomologyClassHandle> enumerate_classes(const FiniteGroup& G, std::int64_t m) {
    const std::size_t n = G.order();
    if (n > kMaxEnumerationOrder) {
        throw Error(ErrorKind::GroupTooLarge, "order " + std::to_string(n) + " exceeds " +
                                                  std::to_string(kMaxEnumerationOrder));
    }
    if (m == 0) m = static_cast<std::int64_t>(n);
    if (m < 0) throw Error(ErrorKind::InvalidInput, "root order must be positive");
    if (n == 1) return {CohomologyClassHandle{Cocycle::trivial(G)}};

    const auto cx = build_complex(G);
    const std::size_t pairs = cx.r * cx.r;

    // Cocycles mod m: σ = V y with s_i y_i ≡ 0, i.e. y_i ∈ c_i Z, c_i = m / gcd(s_i, m).
    const auto snf2 = numkernel::smith_normal_form(cx.d2);
    std::vector<BigInt> c(pairs, BigInt(1));
    for (std::size_t i = 0; i < pairs; ++i) {
        const BigInt s = i < snf2.s.rows() ? snf2.s(i, i) : BigInt(0);
        c[i] = s == 0 ? BigInt(1) : BigInt(m) / gcd(s, BigInt(m));
    }

    // Coordinates of the coboundary lattice D1·Z + m·Z in the cocycle basis V·diag(c).
    IntMatrix gens(pairs, cx.r + pairs);
    for (std::size_t i = 0; i < pairs; ++i) {
        for (std::size_t j = 0; j < cx.r; ++j) gens(i, j) = cx.d1(i, j);
        gens(i, cx.r + i) = m;
    }
    IntMatrix y = snf2.v_inv * gens;
    for (std::size_t i = 0; i < pairs; ++i)
        for (std::size_t j = 0; j < y.cols(); ++j) {
            if (y(i, j) % c[i] != 0) throw Error(ErrorKind::InvalidInput, "coboundaries outside the cocycle lattice");
            y(i, j) /= c[i];
        }
    const auto snfy = numkernel::smith_normal_form(y);

    // Quotient generators: columns of U'⁻¹ with invariant factor > 1, pushed to cochains.
    std::vector<std::vector<std::int64_t>> generators;
    std::vector<std::int64_t> orders;
    for (std::size_t i = 0; i < pairs; ++i) {
        const BigInt s = snfy.s(i, i);
        if (s == 1) continue;
        std::vector<std::int64_t> sigma(pairs);
        for (std::size_t p = 0; p < pairs; ++p) {
            BigInt acc = 0;
            for (std::size_t q = 0; q < pairs; ++q) acc += snf2.v(p, q) * c[q] * snfy.u_inv(q, i);
            sigma[p] = to_mod(acc, m);
        }
        generators.push_back(std::move(sigma));
        orders.push_back(s.convert_to<std::int64_t>());
    }

    std::vector<CohomologyClassHandle> classes;
    std::vector<std::int64_t> digits(generators.size(), 0);
    for (;;) {
        std::vector<std::vector<std::int64_t>> exps(n, std::vector<std::int64_t>(n, 0));
        for (Element g = 1; g < n; ++g)
            for (Element h = 1; h < n; ++h) {
                std::int64_t v = 0;
                for (std::size_t i = 0; i < generators.size(); ++i)
                    v += digits[i] * generators[i][cx.pair(g, h)];
                exps[g][h] = v;
            }
        Cocycle candidate = Cocycle::exact(G, m, exps);
        bool seen = false;
        for (const auto& cls : classes) {
            if (classes_equal(cls.representative, candidate)) {
                seen = true;
                break;
            }
        }
        if (!seen) classes.push_back(CohomologyClassHandle{std::move(candidate)});

        // Lexicographic odometer, last digit fastest.
        std::size_t pos = digits.size();
        while (pos > 0) {
            --pos;
            if (++digits[pos] < orders[pos]) break;
            digits[pos] = 0;
            if (pos == 0) return classes;
        }
        if (digits.empty()) return classes;
    }
}

}  // namespace cocycle_lab
