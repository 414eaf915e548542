#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cocycle_lab/groups.hpp"

namespace cocycle_lab {

/// A point of T, either an exact root of unity e^{2πik/m} or a float phase in turns.
struct Phase {
    std::int64_t m = 1;  ///< root order; 0 marks a float phase
    std::int64_t k = 0;
    double t = 0.0;      ///< turns, float phases only

    static Phase exact(std::int64_t m, std::int64_t k);
    static Phase turns(double t);

    bool is_exact() const noexcept { return m > 0; }
    /// In [0, 1).
    double as_turns() const noexcept;
    cplx value() const;
};

/// Exact phases compare exactly; otherwise the values must agree to tol.
bool same_phase(const Phase& a, const Phase& b, double tol = 1e-8);

namespace detail {

// Shared storage for T-valued functions on G^arity.
struct PhaseTable {
    std::int64_t m = 1;  // 0 = float
    std::vector<std::int64_t> k;
    std::vector<double> t;
    std::vector<cplx> values;

    static PhaseTable exact(std::int64_t m, std::vector<std::int64_t> k);
    static PhaseTable floating(std::vector<double> t);
    Phase at(std::size_t i) const;
};

}  // namespace detail

/// Phase function b: G → T with b(e) = 1.
class PhaseFunction {
public:
    static PhaseFunction exact(const FiniteGroup& g, std::int64_t m, std::vector<std::int64_t> k);
    static PhaseFunction from_turns(const FiniteGroup& g, std::vector<double> turns);

    const FiniteGroup& group() const noexcept { return group_; }
    bool is_exact() const noexcept { return table_.m > 0; }
    std::int64_t root_order() const noexcept { return table_.m; }
    Phase operator()(Element g) const { return table_.at(g); }
    cplx value(Element g) const { return table_.values[g]; }

private:
    PhaseFunction(FiniteGroup g, detail::PhaseTable t) : group_(std::move(g)), table_(std::move(t)) {}
    FiniteGroup group_;
    detail::PhaseTable table_;
};

/// T-valued 2-cochain on G×G, intended to be a normalized 2-cocycle.
/// Construction does not enforce the cocycle axioms; check_cocycle reports them.
class Cocycle {
public:
    static Cocycle trivial(const FiniteGroup& g);
    /// Exponents are reduced into [0, m).
    static Cocycle exact(const FiniteGroup& g, std::int64_t m,
                         const std::vector<std::vector<std::int64_t>>& exponents);
    static Cocycle from_turns(const FiniteGroup& g, const std::vector<std::vector<double>>& turns);

    const FiniteGroup& group() const noexcept { return group_; }
    bool is_exact() const noexcept { return table_.m > 0; }
    /// 0 in float mode.
    std::int64_t root_order() const noexcept { return table_.m; }

    Phase phase(Element g, Element h) const { return table_.at(index(g, h)); }
    std::int64_t exponent(Element g, Element h) const { return table_.k.at(index(g, h)); }
    double turns(Element g, Element h) const { return phase(g, h).as_turns(); }
    cplx value(Element g, Element h) const { return table_.values[index(g, h)]; }

    std::vector<std::vector<std::int64_t>> exponents() const;
    std::vector<std::vector<double>> turns_table() const;

private:
    Cocycle(FiniteGroup g, detail::PhaseTable t) : group_(std::move(g)), table_(std::move(t)) {}
    std::size_t index(Element g, Element h) const { return g * group_.order() + h; }

    FiniteGroup group_;
    detail::PhaseTable table_;
};

/// Pointwise equality of values (exact when both are exact).
bool same_values(const Cocycle& a, const Cocycle& b, double tol = 1e-8);

struct CocycleReport {
    bool valid = true;
    std::vector<std::array<Element, 3>> violations;     ///< failing (g, h, k)
    std::vector<std::array<Element, 2>> unnormalized;  ///< (g, e) or (e, g) with σ ≠ 1
};

CocycleReport check_cocycle(const Cocycle& c, double tol = 1e-8);

/// σ_b(g,h) = b(gh)⁻¹ b(g) b(h).
Cocycle coboundary(const PhaseFunction& b);

Cocycle product(const Cocycle& a, const Cocycle& b);
Cocycle inverse(const Cocycle& c);
Cocycle conjugate(const Cocycle& c);

enum class CombineOp { Product, Inverse, Conjugate };
/// Inverse and Conjugate act on `a` alone; `b` must still share its group.
Cocycle combine(const Cocycle& a, const Cocycle& b, CombineOp op);

/// σ(g,h)·σ(h,g)⁻¹ for commuting g, h.
Phase commutator_invariant(const Cocycle& c, Element g, Element h);

/// True iff c is a coboundary, decided by looking for a 1-dimensional irreducible
/// block of the c-twisted regular representation.
bool is_trivial(const Cocycle& c);

/// is_trivial(c1 · conjugate(c2)).
bool classes_equal(const Cocycle& c1, const Cocycle& c2);

struct CohomologyClassHandle {
    Cocycle representative;
};

/// One representative per class of H²(G,T) reachable from H²(G,Z_m); m = 0 picks |G|,
/// which reaches every class. Representatives are the lexicographically first cocycles
/// in Smith coordinates. Limited to |G| ≤ 8.
std::vector<CohomologyClassHandle> enumerate_classes(const FiniteGroup& g, std::int64_t m = 0);

struct SnapResult {
    Cocycle cocycle;
    double max_displacement = 0.0;  ///< largest |σ − snapped| over all pairs
    bool warned = false;            ///< displacement above the silent tolerance
};

struct SnapTolerances {
    double silent = 1e-6;
    double hard = 1e-4;
};

/// Rounds every value to the nearest m-th root of unity. Throws SnapFailed past tol.hard.
SnapResult snap(const Cocycle& c, std::int64_t m, const SnapTolerances& tol = {});

namespace cocycles {

/// Pauli cocycle on klein_four(): −1 at (z,x), (z,w), (w,x), (w,w).
Cocycle pauli();

}  // namespace cocycles

}  // namespace cocycle_lab
