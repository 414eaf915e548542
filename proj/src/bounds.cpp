#include "cocycle_lab/bounds.hpp"

#include <cmath>
#include <string>

#include "cocycle_lab/error.hpp"

namespace cocycle_lab {

namespace {

constexpr double kExactLimit = 4503599627370496.0;  // 2^52
// Keeps |χ| = d − ε rounding noise from passing a sum that is exactly 1.
constexpr double kAnalyticMargin = 1e-9;

std::size_t round_multiplicity(cplx s) {
    const double r = std::round(s.real());
    if (std::abs(s - r) > 1e-6 || r < 0.0) {
        throw Error(ErrorKind::NonIntegerMultiplicity,
                    "character sum " + std::to_string(s.real()) + "+" + std::to_string(s.imag()) + "i");
    }
    return static_cast<std::size_t>(r);
}

// (1/|G|) Σ conj(a(g)) · χ_U(g)^l · b(g).
std::size_t tensor_multiplicity(const std::vector<cplx>& a, const std::vector<cplx>& chi_u, std::size_t l,
                                const std::vector<cplx>& b) {
    cplx s = 0.0;
    for (std::size_t g = 0; g < a.size(); ++g) {
        cplx p = 1.0;
        for (std::size_t i = 0; i < l; ++i) p *= chi_u[g];
        s += std::conj(a[g]) * p * b[g];
    }
    return round_multiplicity(s / static_cast<double>(a.size()));
}

void check_exact_range(std::size_t d, std::size_t l, std::size_t dim) {
    double size = static_cast<double>(dim);
    for (std::size_t i = 0; i < l; ++i) size *= static_cast<double>(d);
    if (size > kExactLimit) {
        throw Error(ErrorKind::DimensionOverflow, "d^" + std::to_string(l) + "·" + std::to_string(dim) +
                                                      " exceeds 2^52");
    }
}

std::optional<std::size_t> trivial_power(const OnsiteRep& u, std::size_t l_max) {
    const auto chi_u = u.character();
    const std::vector<cplx> one(chi_u.size(), 1.0);
    for (std::size_t k = 1; k <= std::max<std::size_t>(l_max, 1); ++k)
        if (tensor_multiplicity(one, chi_u, k, one) >= 1) return k;
    return std::nullopt;
}

// Least l₀ whose suffix [l₀, l_max] is satisfied and whose certificate window fits.
std::size_t certified_minimum(const std::vector<WitnessRow>& rows, std::optional<std::size_t> k, std::size_t l_max,
                              const char* what) {
    if (!k) throw Error(ErrorKind::NotFoundWithinCap, std::string(what) + ": no tensor power up to l_max contains the trivial irrep");
    std::size_t l0 = rows.size();
    while (l0 > 0 && rows[l0 - 1].satisfied) --l0;
    if (l0 == rows.size() || l0 + *k - 1 > l_max) {
        throw Error(ErrorKind::NotFoundWithinCap, std::string(what) + ": not certified within l_max = " + std::to_string(l_max));
    }
    return l0;
}

// Least l with Σ_{g≠e} (|χ_V(g)|/n_V)(|χ_U(g)|/d)^l < 1 for every genuine irrep V.
std::size_t analytic_l0(const OnsiteRep& u, const IrrepTable& table, std::size_t cap) {
    const auto chi_u = u.character();
    const double d = static_cast<double>(u.dim);
    for (std::size_t l = 0; l <= cap; ++l) {
        bool ok = true;
        for (std::size_t a = 0; a < table.size() && ok; ++a) {
            double s = 0.0;
            for (std::size_t g = 1; g < chi_u.size(); ++g)
                s += std::abs(table.characters[a][g]) / static_cast<double>(table.dim(a)) *
                     std::pow(std::abs(chi_u[g]) / d, static_cast<double>(l));
            ok = s < 1.0 - kAnalyticMargin;
        }
        if (ok) return l;
    }
    throw Error(ErrorKind::NotFoundWithinCap, "analytic l0 exceeds " + std::to_string(cap));
}

}  // namespace

BoundReport l0_all_irreps(const OnsiteRep& u, const BoundsConfig& cfg) {
    const auto table = irreps(Cocycle::trivial(u.group));
    const auto chi_u = u.character();
    BoundReport r;
    for (std::size_t a = 0; a < table.size(); ++a) r.columns.push_back("alpha" + std::to_string(a));
    for (std::size_t l = 0; l <= cfg.l_max; ++l) {
        check_exact_range(u.dim, l, 1);
        WitnessRow row{l, {}, true};
        for (std::size_t a = 0; a < table.size(); ++a) {
            row.multiplicities.push_back(tensor_multiplicity(table.characters[a], chi_u, l, std::vector<cplx>(chi_u.size(), 1.0)));
            row.satisfied &= row.multiplicities.back() >= 1;
        }
        r.witness.push_back(std::move(row));
    }
    r.certificate = trivial_power(u, cfg.l_max);
    r.exact_min = certified_minimum(r.witness, r.certificate, cfg.l_max, "l0_all");
    r.analytic_bound = analytic_l0(u, table, cfg.analytic_cap);
    return r;
}

BoundReport l0_pair(const OnsiteRep& u, const std::vector<Cocycle>& classes, const BoundsConfig& cfg) {
    if (classes.empty()) throw Error(ErrorKind::InvalidInput, "l0_pair needs at least one class");
    const auto chi_u = u.character();
    std::vector<IrrepTable> tables;
    BoundReport r;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (!(classes[i].group() == u.group)) throw Error(ErrorKind::GroupMismatch, "class on another group");
        tables.push_back(irreps(classes[i]));
        for (std::size_t a = 0; a < tables.back().size(); ++a)
            for (std::size_t b = 0; b < tables.back().size(); ++b)
                r.columns.push_back("c" + std::to_string(i) + ":alpha" + std::to_string(a) + "<beta" + std::to_string(b));
    }
    for (std::size_t l = 0; l <= cfg.l_max; ++l) {
        check_exact_range(u.dim, l, 1);
        WitnessRow row{l, {}, true};
        for (const auto& t : tables)
            for (std::size_t a = 0; a < t.size(); ++a)
                for (std::size_t b = 0; b < t.size(); ++b) {
                    row.multiplicities.push_back(tensor_multiplicity(t.characters[a], chi_u, l, t.characters[b]));
                    row.satisfied &= row.multiplicities.back() >= 1;
                }
        r.witness.push_back(std::move(row));
    }
    r.certificate = trivial_power(u, cfg.l_max);
    r.exact_min = certified_minimum(r.witness, r.certificate, cfg.l_max, "l0_pair");
    // β̄⊗α is genuine, so any irrep it contains lies in U^{⊗l} past the all-irreps bound.
    r.analytic_bound = analytic_l0(u, irreps(Cocycle::trivial(u.group)), cfg.analytic_cap);
    return r;
}

BoundReport n_m_sigma(const OnsiteRep& u, const Cocycle& c, std::size_t m, const std::optional<ProjectiveRep>& test_rep,
                      const BoundsConfig& cfg) {
    if (m == 0) throw Error(ErrorKind::InvalidInput, "m must be at least 1");
    if (!(c.group() == u.group)) throw Error(ErrorKind::GroupMismatch, "cocycle on another group");
    const auto table = irreps(c);
    const ProjectiveRep u0 = test_rep ? *test_rep : regular_rep(c);
    if (!same_values(u0.cocycle, c)) throw Error(ErrorKind::CocycleValueMismatch, "test representation carries another cocycle");
    const auto chi_u = u.character();
    const auto chi_0 = character(u0);

    BoundReport r;
    const double d = static_cast<double>(u.dim);
    if (table.size() == 1) {
        std::size_t n = 0;
        double ratio = 1.0 / static_cast<double>(table.dim(0));
        while (ratio < static_cast<double>(m)) {
            ratio *= d;
            if (++n > cfg.analytic_cap) throw Error(ErrorKind::NotFoundWithinCap, "analytic N exceeds cap");
        }
        r.analytic_bound = n;
    } else {
        BoundsConfig pair_cfg = cfg;
        const auto pair = l0_pair(u, {c}, pair_cfg);
        std::size_t mm = 0;
        double power = 1.0;
        while (power <= static_cast<double>(m)) {
            power *= static_cast<double>(table.size());
            ++mm;
        }
        r.analytic_bound = pair.exact_min * (mm + 1);
        r.certificate = pair.certificate;
    }

    for (std::size_t a = 0; a < table.size(); ++a) r.columns.push_back("alpha" + std::to_string(a));
    for (std::size_t n = 0; n <= r.analytic_bound; ++n) {
        check_exact_range(u.dim, n, u0.dim);
        WitnessRow row{n, {}, true};
        for (std::size_t a = 0; a < table.size(); ++a) {
            row.multiplicities.push_back(tensor_multiplicity(table.characters[a], chi_u, n, chi_0));
            row.satisfied &= row.multiplicities.back() >= m;
        }
        r.witness.push_back(std::move(row));
    }
    std::size_t n0 = r.witness.size();
    while (n0 > 0 && r.witness[n0 - 1].satisfied) --n0;
    if (n0 == r.witness.size()) {
        throw Error(ErrorKind::NotFoundWithinCap, "multiplicity " + std::to_string(m) + " not reached by N = " +
                                                      std::to_string(r.analytic_bound));
    }
    r.exact_min = n0;
    return r;
}

GrowthTable multiplicity_growth(const OnsiteRep& u, const Cocycle& c, const ProjectiveRep& v,
                                const std::vector<std::size_t>& windows) {
    GrowthTable t;
    if (windows.empty()) return t;
    if (!same_values(v.cocycle, c)) throw Error(ErrorKind::CocycleValueMismatch, "v does not carry the given cocycle");
    if (!(u.group == c.group())) throw Error(ErrorKind::GroupMismatch, "on-site rep on another group");
    const auto table = irreps(c);
    const auto chi_u = u.character();
    const auto chi_v = character(v);
    for (std::size_t a = 0; a < table.size(); ++a) t.columns.push_back("alpha" + std::to_string(a));
    for (std::size_t n : windows) {
        check_exact_range(u.dim, n, v.dim);
        WitnessRow row{n, {}, true};
        for (std::size_t a = 0; a < table.size(); ++a)
            row.multiplicities.push_back(tensor_multiplicity(table.characters[a], chi_u, n, chi_v));
        t.rows.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        for (std::size_t j = 0; j < t.rows.size(); ++j)
            if (t.rows[i].n < t.rows[j].n)
                for (std::size_t a = 0; a < table.size(); ++a)
                    if (t.rows[i].multiplicities[a] > t.rows[j].multiplicities[a]) t.nondecreasing = false;
    return t;
}

}  // namespace cocycle_lab
