#include "cocycle_lab/cohomology.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "cocycle_lab/error.hpp"

namespace cocycle_lab {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

double wrap_turns(double t) {
    double r = t - std::floor(t);
    return r >= 1.0 ? 0.0 : r;
}

cplx root(std::int64_t m, std::int64_t k) {
    // Exact values on the axes keep ±1 and ±i free of rounding.
    const std::int64_t k4 = 4 * mod(k, m);
    if (k4 % m == 0) {
        static const cplx axes[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
        return axes[(k4 / m) % 4];
    }
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m));
}

void require_same_group(const FiniteGroup& a, const FiniteGroup& b) {
    if (!(a == b)) throw Error(ErrorKind::GroupMismatch, "cocycles live on different groups");
}

}  // namespace

Phase Phase::exact(std::int64_t m, std::int64_t k) {
    if (m <= 0) throw Error(ErrorKind::InvalidInput, "root order must be positive");
    return Phase{m, mod(k, m), 0.0};
}

Phase Phase::turns(double t) { return Phase{0, 0, wrap_turns(t)}; }

double Phase::as_turns() const noexcept {
    return is_exact() ? static_cast<double>(k) / static_cast<double>(m) : t;
}

cplx Phase::value() const {
    return is_exact() ? root(m, k) : std::polar(1.0, 2.0 * std::numbers::pi * t);
}

bool same_phase(const Phase& a, const Phase& b, double tol) {
    if (a.is_exact() && b.is_exact()) return a.k * b.m == b.k * a.m;
    return std::abs(a.value() - b.value()) <= tol;
}

namespace detail {

PhaseTable PhaseTable::exact(std::int64_t m, std::vector<std::int64_t> k) {
    if (m <= 0) throw Error(ErrorKind::InvalidInput, "root order must be positive");
    PhaseTable t;
    t.m = m;
    t.k = std::move(k);
    t.values.reserve(t.k.size());
    for (auto& v : t.k) {
        v = mod(v, m);
        t.values.push_back(root(m, v));
    }
    return t;
}

PhaseTable PhaseTable::floating(std::vector<double> turns) {
    PhaseTable t;
    t.m = 0;
    t.t = std::move(turns);
    t.values.reserve(t.t.size());
    for (auto& v : t.t) {
        if (!std::isfinite(v)) throw Error(ErrorKind::InvalidInput, "non-finite phase");
        v = wrap_turns(v);
        t.values.push_back(std::polar(1.0, 2.0 * std::numbers::pi * v));
    }
    return t;
}

Phase PhaseTable::at(std::size_t i) const {
    if (m > 0) return Phase{m, k[i], 0.0};
    return Phase{0, 0, t[i]};
}

}  // namespace detail

PhaseFunction PhaseFunction::exact(const FiniteGroup& g, std::int64_t m, std::vector<std::int64_t> k) {
    if (k.size() != g.order()) throw Error(ErrorKind::DimensionMismatch, "phase function length");
    auto t = detail::PhaseTable::exact(m, std::move(k));
    if (t.k[0] != 0) throw Error(ErrorKind::InvalidInput, "b(e) must be 1");
    return PhaseFunction(g, std::move(t));
}

PhaseFunction PhaseFunction::from_turns(const FiniteGroup& g, std::vector<double> turns) {
    if (turns.size() != g.order()) throw Error(ErrorKind::DimensionMismatch, "phase function length");
    auto t = detail::PhaseTable::floating(std::move(turns));
    if (std::abs(t.values[0] - 1.0) > 1e-12) throw Error(ErrorKind::InvalidInput, "b(e) must be 1");
    return PhaseFunction(g, std::move(t));
}

Cocycle Cocycle::trivial(const FiniteGroup& g) {
    return Cocycle(g, detail::PhaseTable::exact(1, std::vector<std::int64_t>(g.order() * g.order())));
}

Cocycle Cocycle::exact(const FiniteGroup& g, std::int64_t m,
                       const std::vector<std::vector<std::int64_t>>& exponents) {
    const std::size_t n = g.order();
    if (exponents.size() != n) throw Error(ErrorKind::DimensionMismatch, "cocycle needs |G| rows");
    std::vector<std::int64_t> flat;
    flat.reserve(n * n);
    for (const auto& row : exponents) {
        if (row.size() != n) throw Error(ErrorKind::DimensionMismatch, "cocycle needs |G| columns");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return Cocycle(g, detail::PhaseTable::exact(m, std::move(flat)));
}

Cocycle Cocycle::from_turns(const FiniteGroup& g, const std::vector<std::vector<double>>& turns) {
    const std::size_t n = g.order();
    if (turns.size() != n) throw Error(ErrorKind::DimensionMismatch, "cocycle needs |G| rows");
    std::vector<double> flat;
    flat.reserve(n * n);
    for (const auto& row : turns) {
        if (row.size() != n) throw Error(ErrorKind::DimensionMismatch, "cocycle needs |G| columns");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return Cocycle(g, detail::PhaseTable::floating(std::move(flat)));
}

std::vector<std::vector<std::int64_t>> Cocycle::exponents() const {
    if (!is_exact()) throw Error(ErrorKind::InvalidInput, "float cocycle has no exponents");
    const std::size_t n = group_.order();
    std::vector<std::vector<std::int64_t>> out(n, std::vector<std::int64_t>(n));
    for (Element g = 0; g < n; ++g)
        for (Element h = 0; h < n; ++h) out[g][h] = exponent(g, h);
    return out;
}

std::vector<std::vector<double>> Cocycle::turns_table() const {
    const std::size_t n = group_.order();
    std::vector<std::vector<double>> out(n, std::vector<double>(n));
    for (Element g = 0; g < n; ++g)
        for (Element h = 0; h < n; ++h) out[g][h] = turns(g, h);
    return out;
}

bool same_values(const Cocycle& a, const Cocycle& b, double tol) {
    if (!(a.group() == b.group())) return false;
    const std::size_t n = a.group().order();
    for (Element g = 0; g < n; ++g)
        for (Element h = 0; h < n; ++h)
            if (!same_phase(a.phase(g, h), b.phase(g, h), tol)) return false;
    return true;
}

CocycleReport check_cocycle(const Cocycle& c, double tol) {
    const auto& G = c.group();
    const std::size_t n = G.order();
    CocycleReport r;
    for (Element g = 0; g < n; ++g) {
        if (!same_phase(c.phase(g, 0), Phase::exact(1, 0), tol)) r.unnormalized.push_back({g, 0});
        if (g != 0 && !same_phase(c.phase(0, g), Phase::exact(1, 0), tol)) r.unnormalized.push_back({0, g});
    }
    for (Element g = 0; g < n; ++g)
        for (Element h = 0; h < n; ++h)
            for (Element k = 0; k < n; ++k) {
                bool ok;
                if (c.is_exact()) {
                    const auto m = c.root_order();
                    ok = mod(c.exponent(g, h) + c.exponent(G.mul(g, h), k) - c.exponent(h, k) -
                                 c.exponent(g, G.mul(h, k)),
                             m) == 0;
                } else {
                    const cplx lhs = c.value(g, h) * c.value(G.mul(g, h), k);
                    const cplx rhs = c.value(h, k) * c.value(g, G.mul(h, k));
                    ok = std::abs(lhs - rhs) <= tol;
                }
                if (!ok) r.violations.push_back({g, h, k});
            }
    r.valid = r.violations.empty() && r.unnormalized.empty();
    return r;
}

Cocycle coboundary(const PhaseFunction& b) {
    const auto& G = b.group();
    const std::size_t n = G.order();
    if (b.is_exact()) {
        std::vector<std::vector<std::int64_t>> k(n, std::vector<std::int64_t>(n));
        for (Element g = 0; g < n; ++g)
            for (Element h = 0; h < n; ++h)
                k[g][h] = b(g).k + b(h).k - b(G.mul(g, h)).k;
        return Cocycle::exact(G, b.root_order(), k);
    }
    std::vector<std::vector<double>> t(n, std::vector<double>(n));
    for (Element g = 0; g < n; ++g)
        for (Element h = 0; h < n; ++h)
            t[g][h] = b(g).as_turns() + b(h).as_turns() - b(G.mul(g, h)).as_turns();
    return Cocycle::from_turns(G, t);
}

Cocycle product(const Cocycle& a, const Cocycle& b) {
    require_same_group(a.group(), b.group());
    const std::size_t n = a.group().order();
    if (a.is_exact() && b.is_exact()) {
        const std::int64_t m = std::lcm(a.root_order(), b.root_order());
        const std::int64_t fa = m / a.root_order();
        const std::int64_t fb = m / b.root_order();
        std::vector<std::vector<std::int64_t>> k(n, std::vector<std::int64_t>(n));
        for (Element g = 0; g < n; ++g)
            for (Element h = 0; h < n; ++h) k[g][h] = fa * a.exponent(g, h) + fb * b.exponent(g, h);
        return Cocycle::exact(a.group(), m, k);
    }
    std::vector<std::vector<double>> t(n, std::vector<double>(n));
    for (Element g = 0; g < n; ++g)
        for (Element h = 0; h < n; ++h) t[g][h] = a.turns(g, h) + b.turns(g, h);
    return Cocycle::from_turns(a.group(), t);
}

Cocycle inverse(const Cocycle& c) {
    const std::size_t n = c.group().order();
    if (c.is_exact()) {
        auto k = c.exponents();
        for (auto& row : k)
            for (auto& v : row) v = -v;
        return Cocycle::exact(c.group(), c.root_order(), k);
    }
    auto t = c.turns_table();
    for (std::size_t i = 0; i < n; ++i)
        for (auto& v : t[i]) v = -v;
    return Cocycle::from_turns(c.group(), t);
}

// On T the complex conjugate and the pointwise inverse coincide.
Cocycle conjugate(const Cocycle& c) { return inverse(c); }

Cocycle combine(const Cocycle& a, const Cocycle& b, CombineOp op) {
    require_same_group(a.group(), b.group());
    switch (op) {
        case CombineOp::Product: return product(a, b);
        case CombineOp::Inverse: return inverse(a);
        case CombineOp::Conjugate: return conjugate(a);
    }
    throw Error(ErrorKind::InvalidInput, "unknown combine op");
}

Phase commutator_invariant(const Cocycle& c, Element g, Element h) {
    const auto& G = c.group();
    if (!G.commute(g, h)) {
        throw Error(ErrorKind::NonCommutingPair, "(" + G.name(g) + "," + G.name(h) + ")");
    }
    if (c.is_exact()) return Phase::exact(c.root_order(), c.exponent(g, h) - c.exponent(h, g));
    return Phase::turns(c.turns(g, h) - c.turns(h, g));
}

SnapResult snap(const Cocycle& c, std::int64_t m, const SnapTolerances& tol) {
    if (m <= 0) throw Error(ErrorKind::InvalidInput, "snap grid must be positive");
    const std::size_t n = c.group().order();
    std::vector<std::vector<std::int64_t>> k(n, std::vector<std::int64_t>(n));
    double worst = 0.0;
    for (Element g = 0; g < n; ++g)
        for (Element h = 0; h < n; ++h) {
            const double t = c.turns(g, h);
            const auto kk = static_cast<std::int64_t>(std::llround(t * static_cast<double>(m)));
            k[g][h] = kk;
            worst = std::max(worst, std::abs(c.value(g, h) - root(m, kk)));
        }
    if (worst > tol.hard) {
        throw Error(ErrorKind::SnapFailed, "displacement " + std::to_string(worst) +
                                               " exceeds the grid of order " + std::to_string(m));
    }
    return SnapResult{Cocycle::exact(c.group(), m, k), worst, worst > tol.silent};
}

namespace cocycles {

Cocycle pauli() {
    // Rows and columns ordered e, x, z, w.
    return Cocycle::exact(groups::klein_four(), 2,
                          {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 0, 1}});
}

}  // namespace cocycles

}  // namespace cocycle_lab
