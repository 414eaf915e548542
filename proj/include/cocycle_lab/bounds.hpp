#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cocycle_lab/groups.hpp"
#include "cocycle_lab/projrep.hpp"

namespace cocycle_lab {

struct WitnessRow {
    std::size_t n = 0;  ///< tensor power l or window size N
    std::vector<std::size_t> multiplicities;
    bool satisfied = false;  ///< defining property holds at this n
};

struct BoundReport {
    std::size_t exact_min = 0;
    std::size_t analytic_bound = 0;
    /// Least k ≥ 1 with the trivial irrep inside U^{⊗k}; containment at l then implies
    /// containment at l + k, which certifies "for all larger l" from a finite window.
    std::optional<std::size_t> certificate;
    std::vector<std::string> columns;  ///< label per multiplicity column
    std::vector<WitnessRow> witness;
};

struct BoundsConfig {
    std::size_t l_max = 12;
    std::size_t analytic_cap = 100000;
};

/// Least l₀ such that U^{⊗l} contains every genuine irrep for all l ≥ l₀.
BoundReport l0_all_irreps(const OnsiteRep& u, const BoundsConfig& cfg = {});

/// Least l₀ such that α ≺ β ⊗ U^{⊗l} for every listed class, every α, β ∈ P_σ, and all l ≥ l₀.
BoundReport l0_pair(const OnsiteRep& u, const std::vector<Cocycle>& classes, const BoundsConfig& cfg = {});

/// Windows N for which every α ∈ P_σ has multiplicity ≥ m in U^{⊗N} ⊗ u₀.
/// `test_rep` defaults to the σ-regular representation. exact_min is the least N from
/// which the property holds through analytic_bound.
BoundReport n_m_sigma(const OnsiteRep& u, const Cocycle& c, std::size_t m,
                      const std::optional<ProjectiveRep>& test_rep = std::nullopt, const BoundsConfig& cfg = {});

struct GrowthTable {
    std::vector<std::string> columns;
    std::vector<WitnessRow> rows;  ///< one per requested window, in request order
    bool nondecreasing = true;     ///< every column nondecreasing along increasing n
};

/// Multiplicities of every α ∈ P_σ in U^{⊗n} ⊗ v. Throws DimensionOverflow once
/// d^n·dim v passes 2^52, where character sums stop being exact.
GrowthTable multiplicity_growth(const OnsiteRep& u, const Cocycle& c, const ProjectiveRep& v,
                                const std::vector<std::size_t>& windows);

}  // namespace cocycle_lab
