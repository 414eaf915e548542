#pragma once

#include <cstdint>
#include <vector>

#include "cocycle_lab/cohomology.hpp"
#include "cocycle_lab/groups.hpp"

namespace cocycle_lab {

/// g ↦ V(g) with V(g)V(h) = σ(g,h)V(gh).
struct ProjectiveRep {
    Cocycle cocycle;
    std::size_t dim = 0;
    std::vector<CMatrix> matrices;

    const FiniteGroup& group() const noexcept { return cocycle.group(); }
    const CMatrix& operator()(Element g) const { return matrices[g]; }
};

struct ProjrepTolerances {
    double unitary = 1e-10;
    double cocycle = 1e-8;
};

/// Throws CocycleMismatch naming the first (g, h) whose measured phase disagrees with σ.
ProjectiveRep validate_projrep(const Cocycle& c, std::vector<CMatrix> matrices,
                               const ProjrepTolerances& tol = {});

/// Genuine on-site rep viewed as projective with the trivial cocycle.
ProjectiveRep as_projective(const OnsiteRep& u);

std::vector<cplx> character(const ProjectiveRep& v);

/// (1/|G|) Σ conj(χ_α(g)) χ_v(g), rounded. Both reps must carry the same cocycle values.
/// Throws NonIntegerMultiplicity when the sum is more than 1e-6 from an integer.
std::size_t multiplicity(const ProjectiveRep& irrep, const ProjectiveRep& v);

/// (u_r(g)ξ)(h) = σ(g, g⁻¹h) ξ(g⁻¹h).
ProjectiveRep regular_rep(const Cocycle& c);

struct IrrepTable {
    Cocycle cocycle;
    std::vector<ProjectiveRep> irreps;  ///< by dimension, then by character; trivial first
    std::vector<std::vector<cplx>> characters;

    std::size_t size() const noexcept { return irreps.size(); }
    std::size_t dim(std::size_t alpha) const { return irreps[alpha].dim; }
};

inline constexpr std::uint64_t kCommutantSeed = 0xC0C7C1E5EEDULL;

/// Splits the twisted regular representation with a random Hermitian element of its
/// commutant. Throws DegenerateSplit when five draws fail to separate the blocks.
IrrepTable irreps(const Cocycle& c, std::uint64_t seed = kCommutantSeed);

struct DecompositionReport {
    std::vector<std::size_t> multiplicities;  ///< indexed like the irrep table
    /// Unitary W with W V(g) W† = ⊕_α V_α(g) ⊗ I_{m_α}, blocks in table order.
    CMatrix basis;
    std::vector<std::size_t> offsets;  ///< first row of each α block
};

DecompositionReport decompose(const ProjectiveRep& v, const IrrepTable& table);

/// (b·V)(g) = b(g)V(g), with cocycle σ·σ_b.
ProjectiveRep twist(const ProjectiveRep& v, const PhaseFunction& b);

inline constexpr std::size_t kDefaultDimensionCap = 4096;

/// g ↦ U(g)^{⊗l} ⊗ V(g). Throws DimensionOverflow past `cap`.
ProjectiveRep tensor_with_onsite(const ProjectiveRep& v, const OnsiteRep& u, std::size_t l,
                                 std::size_t cap = kDefaultDimensionCap);

ProjectiveRep direct_sum(const ProjectiveRep& a, const ProjectiveRep& b);
/// Entrywise conjugate; carries the conjugate cocycle.
ProjectiveRep conjugate_rep(const ProjectiveRep& v);

namespace reps {

/// {I, σ_x, σ_z, σ_xσ_z} on klein_four() with cocycles::pauli().
ProjectiveRep pauli();

}  // namespace reps

}  // namespace cocycle_lab
