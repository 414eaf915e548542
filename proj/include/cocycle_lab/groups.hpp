#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cocycle_lab/numkernel/cmatrix.hpp"

namespace cocycle_lab {

using Element = std::size_t;
using numkernel::CMatrix;

/// Finite group given by its Cayley table; element 0 is the identity.
class FiniteGroup {
public:
    std::size_t order() const noexcept { return order_; }
    Element mul(Element g, Element h) const { return table_[g * order_ + h]; }
    Element inverse(Element g) const { return inverse_[g]; }
    std::size_t element_order(Element g) const { return element_order_[g]; }
    /// lcm of element orders.
    std::size_t exponent() const noexcept { return exponent_; }
    bool is_abelian() const noexcept;
    bool commute(Element g, Element h) const { return mul(g, h) == mul(h, g); }

    const std::vector<std::string>& names() const noexcept { return names_; }
    std::string name(Element g) const;
    std::vector<std::vector<std::size_t>> table() const;

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
        return a.order_ == b.order_ && a.table_ == b.table_;
    }

private:
    friend FiniteGroup validate_group(const std::vector<std::vector<std::size_t>>& table,
                                      std::vector<std::string> names);

    std::size_t order_ = 0;
    std::vector<Element> table_;
    std::vector<Element> inverse_;
    std::vector<std::size_t> element_order_;
    std::size_t exponent_ = 1;
    std::vector<std::string> names_;
};

/// Checks shape, entry range, identity at 0, Latin-square rows/columns and associativity,
/// in that order, naming the first violation.
FiniteGroup validate_group(const std::vector<std::vector<std::size_t>>& table,
                           std::vector<std::string> names = {});

std::vector<std::vector<Element>> conjugacy_classes(const FiniteGroup& g);

namespace groups {

FiniteGroup trivial();
FiniteGroup cyclic(std::size_t n);
/// Element (a, b) has index a + |A|·b.
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
/// Z2×Z2 with elements e, x, z, w = xz.
FiniteGroup klein_four();
FiniteGroup symmetric3();
FiniteGroup dihedral4();
FiniteGroup quaternion();

}  // namespace groups

/// Genuine unitary on-site representation that is non-scalar away from the identity.
struct OnsiteRep {
    FiniteGroup group;
    std::size_t dim = 0;
    std::vector<CMatrix> matrices;

    const CMatrix& operator()(Element g) const { return matrices[g]; }
    std::vector<cplx> character() const;
};

struct OnsiteTolerances {
    double unitary = 1e-10;
    double homomorphism = 1e-10;
    double scalar = 1e-8;
};

OnsiteRep validate_onsite_rep(const FiniteGroup& g, std::vector<CMatrix> matrices,
                              const OnsiteTolerances& tol = {});

namespace groups {

/// π-rotations about x, y, z on spin 1 (basis m = +1, 0, −1) as a rep of klein_four().
OnsiteRep spin1_pi_rotations();
/// diag(1, −1) on C² as a rep of Z2.
OnsiteRep z2_sigma_z();
/// Left regular permutation rep.
OnsiteRep regular_onsite(const FiniteGroup& g);

}  // namespace groups

}  // namespace cocycle_lab
