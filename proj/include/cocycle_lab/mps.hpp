#pragma once

#include <string>
#include <vector>

#include "cocycle_lab/cohomology.hpp"
#include "cocycle_lab/groups.hpp"
#include "cocycle_lab/projrep.hpp"

namespace cocycle_lab {

struct MpsTolerances {
    double injectivity_margin = 1e-6;  ///< second transfer eigenvalue must sit below 1 − margin
    double symmetry = 1e-6;            ///< leading mixed-transfer modulus must reach 1 − this
    double reconstruction = 1e-6;      ///< relative to ‖A‖_F
    double consistency = 1e-5;         ///< ‖V(g)V(h)V(gh)† − σI‖_F per bond dimension
    SnapTolerances snap{};
};

/// Right-canonical injective MPS: Σ_i A^i A^{i†} = I_D.
struct MpsState {
    std::size_t phys_dim = 0;
    std::size_t bond_dim = 0;
    std::vector<CMatrix> tensors;
    /// Λ with Σ_i A^{i†} Λ A^i = Λ, tr Λ = 1, positive definite.
    CMatrix left_fixed_point;
    /// Spectral radius of the transfer map with the leading eigenvalue removed.
    double second_eigenvalue = 0.0;
};

/// Rescales and gauges raw tensors to right-canonical form. Throws NotInjective when the
/// transfer fixed point is degenerate or singular, InvalidInput for ragged shapes.
MpsState canonicalize(std::vector<CMatrix> tensors, const MpsTolerances& tol = {});

/// One group element's bond action: Σ_j U(g)_{ij} A^j = e^{2πiθ} V A^i V†.
struct BondSymmetry {
    double theta = 0.0;  ///< turns
    CMatrix v;           ///< det V = 1, largest-modulus entry with argument in (−π/D, π/D]
    double reconstruction_defect = 0.0;
};

/// Leading eigenpair of X ↦ Σ_{ij} U(g)_{ij} A^j X A^{i†}. Throws NotSymmetric when its
/// modulus falls short of 1.
BondSymmetry extract_symmetry(const MpsState& s, const OnsiteRep& u, Element g, const MpsTolerances& tol = {});

struct SymmetryCertificate {
    std::vector<double> thetas;  ///< turns, per g
    ProjectiveRep v;             ///< bond representation, carrying the snapped cocycle
    Cocycle measured;            ///< tr(V(gh)† V(g) V(h)) / D before snapping
    Cocycle cocycle;             ///< snapped onto μ_m, m = lcm(2|G|·exp(G), D)
    double snap_displacement = 0.0;
    bool snap_warned = false;
    std::size_t class_index = 0;  ///< position in enumerate_classes(G)
    double max_reconstruction_defect = 0.0;
};

/// Throws NotProjectivelyConsistent or SnapFailed when V is not projective to tolerance.
SymmetryCertificate extract_cocycle(const MpsState& s, const OnsiteRep& u, const MpsTolerances& tol = {});

struct PhaseComparison {
    bool equivalent = false;
    SymmetryCertificate first;
    SymmetryCertificate second;
};

/// Same phase iff the bond cocycles are cohomologous.
PhaseComparison compare_phases(const MpsState& s0, const MpsState& s1, const OnsiteRep& u, const MpsTolerances& tol = {});

struct LeftRightReport {
    SymmetryCertificate right;
    /// From the left action X ↦ Σ_{ij} U(g)_{ij} A^{i†} X A^j, transposed into a projective rep.
    SymmetryCertificate left;
    bool product_trivial = false;  ///< σ_L·σ_R is a coboundary
};

LeftRightReport left_right_check(const MpsState& s, const OnsiteRep& u, const MpsTolerances& tol = {});

struct BuiltinState {
    MpsState state;
    OnsiteRep onsite;
};

/// aklt, product_m0, product_up_z2, blocked_aklt. Throws UnknownName otherwise.
BuiltinState builtin_state(const std::string& name);
std::vector<std::string> builtin_state_names();

}  // namespace cocycle_lab
