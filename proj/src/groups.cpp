#include "cocycle_lab/groups.hpp"

#include <algorithm>
#include <numeric>

#include "cocycle_lab/error.hpp"

namespace cocycle_lab {

namespace {

std::string triple(std::size_t a, std::size_t b, std::size_t c) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

}  // namespace

bool FiniteGroup::is_abelian() const noexcept {
    for (Element g = 0; g < order_; ++g)
        for (Element h = g + 1; h < order_; ++h)
            if (!commute(g, h)) return false;
    return true;
}

std::string FiniteGroup::name(Element g) const {
    return g < names_.size() ? names_[g] : std::to_string(g);
}

std::vector<std::vector<std::size_t>> FiniteGroup::table() const {
    std::vector<std::vector<std::size_t>> t(order_, std::vector<std::size_t>(order_));
    for (Element g = 0; g < order_; ++g)
        for (Element h = 0; h < order_; ++h) t[g][h] = mul(g, h);
    return t;
}

FiniteGroup validate_group(const std::vector<std::vector<std::size_t>>& table,
                           std::vector<std::string> names) {
    const std::size_t n = table.size();
    if (n == 0) throw Error(ErrorKind::InvalidInput, "empty group table");
    for (std::size_t r = 0; r < n; ++r) {
        if (table[r].size() != n) {
            throw Error(ErrorKind::InvalidInput, "row " + std::to_string(r) + " has length " +
                                                     std::to_string(table[r].size()));
        }
        for (std::size_t c = 0; c < n; ++c)
            if (table[r][c] >= n) {
                throw Error(ErrorKind::InvalidInput,
                            "entry (" + std::to_string(r) + "," + std::to_string(c) + ") out of range");
            }
    }
    if (!names.empty() && names.size() != n) {
        throw Error(ErrorKind::InvalidInput, "names length does not match order");
    }
    for (std::size_t g = 0; g < n; ++g)
        if (table[0][g] != g || table[g][0] != g) {
            throw Error(ErrorKind::NoIdentity, "element 0 is not the identity at " + std::to_string(g));
        }
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<bool> row_seen(n), col_seen(n);
        for (std::size_t c = 0; c < n; ++c) {
            if (row_seen[table[r][c]]) {
                throw Error(ErrorKind::NotBijectiveRows, "row " + std::to_string(r) + " repeats " +
                                                             std::to_string(table[r][c]));
            }
            if (col_seen[table[c][r]]) {
                throw Error(ErrorKind::NotBijectiveRows, "column " + std::to_string(r) +
                                                             " repeats " + std::to_string(table[c][r]));
            }
            row_seen[table[r][c]] = true;
            col_seen[table[c][r]] = true;
        }
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]]) {
                    throw Error(ErrorKind::NotAssociative, "triple " + triple(a, b, c));
                }

    FiniteGroup g;
    g.order_ = n;
    g.table_.reserve(n * n);
    for (const auto& row : table) g.table_.insert(g.table_.end(), row.begin(), row.end());
    g.inverse_.resize(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (table[a][b] == 0) g.inverse_[a] = b;
    g.element_order_.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        std::size_t k = 1;
        for (Element p = a; p != 0; p = table[p][a]) ++k;
        g.element_order_[a] = k;
    }
    g.exponent_ = std::accumulate(g.element_order_.begin(), g.element_order_.end(), std::size_t{1},
                                  [](std::size_t x, std::size_t y) { return std::lcm(x, y); });
    g.names_ = std::move(names);
    return g;
}

std::vector<std::vector<Element>> conjugacy_classes(const FiniteGroup& g) {
    std::vector<std::vector<Element>> classes;
    std::vector<bool> seen(g.order());
    for (Element h = 0; h < g.order(); ++h) {
        if (seen[h]) continue;
        std::vector<Element> cls;
        for (Element x = 0; x < g.order(); ++x) {
            const Element k = g.mul(g.mul(x, h), g.inverse(x));
            if (!seen[k]) {
                seen[k] = true;
                cls.push_back(k);
            }
        }
        std::sort(cls.begin(), cls.end());
        classes.push_back(std::move(cls));
    }
    return classes;
}

namespace groups {

FiniteGroup trivial() { return validate_group({{0}}, {"e"}); }

FiniteGroup cyclic(std::size_t n) {
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return validate_group(t);
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const std::size_t na = a.order();
    const std::size_t n = na * b.order();
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h)
            t[g][h] = a.mul(g % na, h % na) + na * b.mul(g / na, h / na);
    return validate_group(t);
}

FiniteGroup klein_four() {
    const auto k = direct_product(cyclic(2), cyclic(2));
    return validate_group(k.table(), {"e", "x", "z", "w"});
}

namespace {

using Perm = std::vector<std::size_t>;

// Cayley table of a listed permutation group; the first permutation must be the identity.
FiniteGroup from_permutations(const std::vector<Perm>& elements, std::vector<std::string> names) {
    const std::size_t n = elements.size();
    auto compose = [](const Perm& p, const Perm& q) {  // (p·q)(i) = p(q(i))
        Perm r(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
        return r;
    };
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const Perm c = compose(elements[a], elements[b]);
            t[a][b] = static_cast<std::size_t>(std::find(elements.begin(), elements.end(), c) -
                                               elements.begin());
        }
    return validate_group(t, std::move(names));
}

}  // namespace

FiniteGroup symmetric3() {
    return from_permutations({{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}},
                             {"e", "(01)", "(12)", "(02)", "(012)", "(021)"});
}

FiniteGroup dihedral4() {
    // Symmetries of a square acting on its corners 0..3; r = rotation, s = reflection.
    return from_permutations({{0, 1, 2, 3},
                              {1, 2, 3, 0},
                              {2, 3, 0, 1},
                              {3, 0, 1, 2},
                              {0, 3, 2, 1},
                              {1, 0, 3, 2},
                              {2, 1, 0, 3},
                              {3, 2, 1, 0}},
                             {"e", "r", "r2", "r3", "s", "rs", "r2s", "r3s"});
}

FiniteGroup quaternion() {
    // Elements 1, i, j, k, -1, -i, -j, -k: index = unit + 4 for the negated ones.
    auto mult = [](std::size_t a, std::size_t b) {
        static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
        static const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
        const std::size_t ua = a % 4, ub = b % 4;
        int s = sign[ua][ub] * (a >= 4 ? -1 : 1) * (b >= 4 ? -1 : 1);
        return static_cast<std::size_t>(unit[ua][ub]) + (s < 0 ? 4 : 0);
    };
    std::vector<std::vector<std::size_t>> t(8, std::vector<std::size_t>(8));
    for (std::size_t a = 0; a < 8; ++a)
        for (std::size_t b = 0; b < 8; ++b) t[a][b] = mult(a, b);
    return validate_group(t, {"1", "i", "j", "k", "-1", "-i", "-j", "-k"});
}

}  // namespace groups

std::vector<cplx> OnsiteRep::character() const {
    std::vector<cplx> chi(matrices.size());
    for (std::size_t g = 0; g < matrices.size(); ++g) chi[g] = matrices[g].trace();
    return chi;
}

OnsiteRep validate_onsite_rep(const FiniteGroup& g, std::vector<CMatrix> matrices,
                              const OnsiteTolerances& tol) {
    if (matrices.size() != g.order()) {
        throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(g.order()) +
                                                      " matrices, got " + std::to_string(matrices.size()));
    }
    const std::size_t d = matrices[0].rows();
    for (Element x = 0; x < g.order(); ++x) {
        if (matrices[x].rows() != d || matrices[x].cols() != d) {
            throw Error(ErrorKind::DimensionMismatch, "matrix for element " + g.name(x) + " has wrong shape");
        }
        if (!matrices[x].all_finite()) throw Error(ErrorKind::InvalidInput, "non-finite entry");
        if (!is_unitary(matrices[x], tol.unitary)) throw Error(ErrorKind::NotUnitary, g.name(x));
    }
    if (frobenius_distance(matrices[0], CMatrix::identity(d)) > tol.homomorphism) {
        throw Error(ErrorKind::NotHomomorphism, "U(e) is not the identity");
    }
    for (Element x = 0; x < g.order(); ++x)
        for (Element y = 0; y < g.order(); ++y)
            if (frobenius_distance(matrices[x] * matrices[y], matrices[g.mul(x, y)]) > tol.homomorphism) {
                throw Error(ErrorKind::NotHomomorphism, "(" + g.name(x) + "," + g.name(y) + ")");
            }
    for (Element x = 1; x < g.order(); ++x) {
        CMatrix scalar = CMatrix::identity(d);
        scalar *= matrices[x].trace() / static_cast<double>(d);
        if (frobenius_distance(matrices[x], scalar) <= tol.scalar) {
            throw Error(ErrorKind::ScalarAtNonIdentity, g.name(x));
        }
    }
    return OnsiteRep{g, d, std::move(matrices)};
}

namespace groups {

OnsiteRep spin1_pi_rotations() {
    const CMatrix rx{{0.0, 0.0, -1.0}, {0.0, -1.0, 0.0}, {-1.0, 0.0, 0.0}};
    const CMatrix rz{{-1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, -1.0}};
    return validate_onsite_rep(klein_four(), {CMatrix::identity(3), rx, rz, rx * rz});
}

OnsiteRep z2_sigma_z() {
    return validate_onsite_rep(cyclic(2), {CMatrix::identity(2), CMatrix{{1.0, 0.0}, {0.0, -1.0}}});
}

OnsiteRep regular_onsite(const FiniteGroup& g) {
    std::vector<CMatrix> m;
    for (Element x = 0; x < g.order(); ++x) {
        CMatrix p(g.order(), g.order());
        for (Element h = 0; h < g.order(); ++h) p(g.mul(x, h), h) = 1.0;
        m.push_back(std::move(p));
    }
    return validate_onsite_rep(g, std::move(m));
}

}  // namespace groups

}  // namespace cocycle_lab
