#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "cocycle_lab/projrep.hpp"

namespace cocycle_lab {

inline constexpr std::size_t kWindowCarrierCap = 64;

struct ChainWindow {
    std::vector<long long> sites;  ///< strictly increasing
    std::size_t d = 0;

    std::size_t size() const noexcept { return sites.size(); }
    /// d^{|Λ|}
    std::size_t carrier_dim() const;
};

/// Throws InvalidInput for empty or unsorted sites, DimensionOverflow past `cap`.
ChainWindow make_window(std::vector<long long> sites, std::size_t d, std::size_t cap = kWindowCarrierCap);

/// Window, cocycle σ and on-site action U, with U(g)^{⊗|Λ|} cached.
class TwistedSystem {
public:
    static std::shared_ptr<const TwistedSystem> make(ChainWindow window, Cocycle cocycle, OnsiteRep onsite);

    const ChainWindow& window() const noexcept { return window_; }
    const Cocycle& cocycle() const noexcept { return cocycle_; }
    const OnsiteRep& onsite() const noexcept { return onsite_; }
    const FiniteGroup& group() const noexcept { return onsite_.group; }
    std::size_t order() const noexcept { return onsite_.group.order(); }
    std::size_t dim() const noexcept { return window_unitaries_.front().rows(); }

    /// U(g)^{⊗|Λ|}
    const CMatrix& window_unitary(Element g) const { return window_unitaries_[g]; }
    /// τ(g)(a) = U_Λ(g) a U_Λ(g)†
    CMatrix act(Element g, const CMatrix& a) const;

private:
    TwistedSystem(ChainWindow w, Cocycle c, OnsiteRep u);

    ChainWindow window_;
    Cocycle cocycle_;
    OnsiteRep onsite_;
    std::vector<CMatrix> window_unitaries_;
};

using SystemPtr = std::shared_ptr<const TwistedSystem>;

/// f: G → A_Λ, an element of the twisted crossed product.
struct TwistedElement {
    SystemPtr system;
    std::vector<CMatrix> values;

    static TwistedElement zero(const SystemPtr& s);
    static TwistedElement lambda(const SystemPtr& s, Element g);
    static TwistedElement xi(const SystemPtr& s, const CMatrix& a);
    /// Gaussian entries in every f(g).
    static TwistedElement random(const SystemPtr& s, std::mt19937_64& rng);

    TwistedElement& operator+=(const TwistedElement& o);
    TwistedElement& operator*=(cplx s);
};

TwistedElement operator+(TwistedElement a, const TwistedElement& b);
TwistedElement operator*(cplx s, TwistedElement a);

/// Largest Frobenius distance over g.
double distance(const TwistedElement& a, const TwistedElement& b);

/// (f₁ ⋆ f₂)(h) = Σ_g σ(g, g⁻¹h) f₁(g) τ(g)(f₂(g⁻¹h)). Throws Mismatch across systems.
TwistedElement star_product(const TwistedElement& f1, const TwistedElement& f2);

/// f*(h) = conj σ(h⁻¹, h) · τ(h)(f(h⁻¹)†)
TwistedElement involution(const TwistedElement& f);

/// Ad(λ_g)(f) = f for every g, to `tol`.
bool is_fixed(const TwistedElement& f, double tol = 1e-8);

/// Covariant pair (π, u) on a carrier of dimension dim·multiplicity, with
/// π(a) = frame (a ⊗ I_multiplicity) frame†. Every unital representation of the full
/// matrix algebra A_Λ has this form.
struct CovariantRep {
    SystemPtr system;
    CMatrix frame;
    std::size_t multiplicity = 0;
    ProjectiveRep u;

    std::size_t carrier_dim() const noexcept { return frame.rows(); }
    CMatrix pi(const CMatrix& a) const;
};

/// Checks frame unitarity, u against σ, and u(g)π(a)u(g)* = π(τ(g)(a)). Throws NotUnitary,
/// CocycleMismatch or NotCovariant.
CovariantRep make_covariant(const SystemPtr& s, CMatrix frame, std::size_t multiplicity, ProjectiveRep u,
                            double tol = 1e-8);

/// π(a) = a ⊗ I_{dim v}, u(g) = U_Λ(g) ⊗ v(g). v must carry the system cocycle.
CovariantRep tensor_covariant(const SystemPtr& s, const ProjectiveRep& v);

/// π(a) = a, u = U_Λ. Only valid when the system cocycle is identically 1.
CovariantRep identity_covariant(const SystemPtr& s);

/// π̃(a) = Σ_g π₀(τ(g⁻¹)(a)) ⊗ E_gg and ũ = 1 ⊗ u_r^σ on carrier ⊗ l²(G),
/// where π₀(a) = frame (a ⊗ I_multiplicity) frame†.
CovariantRep regular_covariant(const SystemPtr& s, const CMatrix& frame, std::size_t multiplicity);
CovariantRep regular_covariant(const SystemPtr& s);

/// (π×u)(f) = Σ_g π(f(g)) u(g)
CMatrix pi_times_u(const TwistedElement& f, const CovariantRep& r);

/// Operator norm of f in the regular covariant representation of the identity rep.
double reduced_norm(const TwistedElement& f);

/// Q^{(α)}_{k,j} = (n_α/|G|) Σ_g conj ⟨ψ_k, V_α(g) ψ_j⟩ λ_g, indices from 0.
/// Throws IndexOutOfRange, CocycleValueMismatch if α carries another cocycle.
TwistedElement q_element(const SystemPtr& s, const ProjectiveRep& alpha, std::size_t k, std::size_t j);

/// n×n matrix with entries in the crossed product, row-major.
struct TwistedMatrix {
    std::size_t n = 0;
    std::vector<TwistedElement> entries;

    const TwistedElement& operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
    TwistedElement& operator()(std::size_t i, std::size_t j) { return entries[i * n + j]; }
};

TwistedMatrix star_product(const TwistedMatrix& a, const TwistedMatrix& b);
TwistedMatrix involution(const TwistedMatrix& a);
/// (id ⊗ (π×u)): block (i, j) is pi_times_u of entry (i, j).
CMatrix pi_times_u(const TwistedMatrix& a, const CovariantRep& r);

/// R^{(α)} = (1/n_α) Σ_{k,j} E_{k,j} ⊗ Q^{(α)}_{k,j}
TwistedMatrix r_element(const SystemPtr& s, const ProjectiveRep& alpha);

/// (1/√|G|) E_{j,0} ⊗ λ_g ξ(E_{I,0}) over all j < n_α, g ∈ G, I < d^{|Λ|}.
std::vector<TwistedMatrix> g_lambda_family(const SystemPtr& s, const ProjectiveRep& alpha);

struct Factorization {
    /// Unitary from the carrier onto C^{d^{|sub|}} ⊗ (remainder carrier).
    CMatrix w;
    CovariantRep remainder;
};

/// Splits off the tensor factor of `sub` by W ξ = Σ_I e_I ⊗ π(E_{0,I} ⊗ 1) ξ. `sub` must be a
/// proper nonempty subset of the window, else NotSubWindow.
Factorization factorize(const CovariantRep& r, const std::vector<long long>& sub);

/// Embeds a ∈ A_sub into A_Λ as a ⊗ 1 on the complementary sites, respecting site order.
CMatrix embed(const CMatrix& a, const ChainWindow& window, const std::vector<long long>& sub);

/// (1/|G|) Σ_g τ(g)(a)
CMatrix symmetrize(const SystemPtr& s, const CMatrix& a);

struct FixedPointBlock {
    std::size_t gamma = 0;         ///< index into the irrep table of σ
    std::size_t irrep_dim = 0;     ///< n_γ
    std::size_t multiplicity = 0;  ///< m_γ
    std::vector<CMatrix> probes;   ///< π_γ(a) per probe, m_γ × m_γ
};

struct FixedPointReport {
    std::vector<CMatrix> probes;  ///< symmetrized inputs, identity first
    std::vector<FixedPointBlock> blocks;
    /// Largest deviation of the conjugated π(a) from ⊕_γ I_{n_γ} ⊗ π_γ(a).
    double max_defect = 0.0;
};

/// Conjugates π(a) for symmetrized matrix units into the basis that decomposes u.
FixedPointReport fixed_point_decompose(const CovariantRep& r);

struct IdentityCheck {
    std::string name;
    double max_defect = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct IdentityReport {
    std::vector<IdentityCheck> checks;
    bool passed = true;
};

/// Crossed-product laws on `samples` seeded random elements, then the Q/R/G_Λ identities
/// on the regular covariant rep, and factorization when the window has two or more sites.
IdentityReport verify_identities(const SystemPtr& s, std::size_t samples, std::uint64_t seed, double tol = 1e-8);
/// Same suite with `r` in place of the regular covariant rep.
IdentityReport verify_identities(const CovariantRep& r, std::size_t samples, std::uint64_t seed, double tol = 1e-8);

}  // namespace cocycle_lab
