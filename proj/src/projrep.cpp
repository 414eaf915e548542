#include "cocycle_lab/projrep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include "cocycle_lab/error.hpp"
#include "cocycle_lab/numkernel/linalg.hpp"

namespace cocycle_lab {

using numkernel::hermitian_eig;

namespace {

constexpr double kCharacterTol = 1e-6;
constexpr double kMultiplicityTol = 1e-6;

void require_same_cocycle(const Cocycle& a, const Cocycle& b) {
    if (!(a.group() == b.group())) throw Error(ErrorKind::GroupMismatch, "representations on different groups");
    if (!same_values(a, b)) throw Error(ErrorKind::CocycleValueMismatch, "cocycle values differ");
}

std::string format_phase(cplx z) {
    std::ostringstream os;
    os.precision(6);
    os << "arg/2π=" << std::arg(z) / (2.0 * std::numbers::pi) << " |.|=" << std::abs(z);
    return os.str();
}

bool characters_equal(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    for (std::size_t g = 0; g < a.size(); ++g)
        if (std::abs(a[g] - b[g]) > kCharacterTol) return false;
    return true;
}

// Descending real parts, then descending imaginary parts, compared elementwise.
bool character_before(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    for (std::size_t g = 0; g < a.size(); ++g) {
        if (std::abs(a[g].real() - b[g].real()) > kCharacterTol) return a[g].real() > b[g].real();
        if (std::abs(a[g].imag() - b[g].imag()) > kCharacterTol) return a[g].imag() > b[g].imag();
    }
    return false;
}

struct Block {
    std::vector<CMatrix> matrices;
    std::vector<cplx> chi;
};

// One attempt at splitting the regular rep. Returns the irreducible blocks, or nothing
// when the random commutant element left two inequivalent blocks fused.
std::optional<std::vector<Block>> split_regular(const ProjectiveRep& reg, std::mt19937_64& rng) {
    const std::size_t n = reg.dim;
    const CMatrix h = numkernel::random_hermitian(n, rng);
    CMatrix avg(n, n);
    for (const auto& r : reg.matrices) avg += r * h * r.adjoint();
    avg *= 1.0 / static_cast<double>(n);
    const auto eig = hermitian_eig(avg);

    const double scale = std::max(1.0, std::max(std::abs(eig.values.front()), std::abs(eig.values.back())));
    std::vector<Block> blocks;
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1;
        while (end < n && eig.values[end] - eig.values[end - 1] <= 1e-7 * scale) ++end;
        const CMatrix b = eig.vectors.block(0, start, n, end - start);
        Block blk;
        double norm_sq = 0.0;
        for (const auto& r : reg.matrices) {
            const CMatrix rb = r * b;
            CMatrix v = b.adjoint() * rb;
            if (frobenius_distance(rb, b * v) > 1e-8) return std::nullopt;
            v = numkernel::polar_unitary(v);
            blk.chi.push_back(v.trace());
            norm_sq += std::norm(blk.chi.back());
            blk.matrices.push_back(std::move(v));
        }
        blk.matrices[0] = CMatrix::identity(end - start);
        blk.chi[0] = static_cast<double>(end - start);
        if (std::abs(norm_sq / static_cast<double>(n) - 1.0) > kCharacterTol) return std::nullopt;
        blocks.push_back(std::move(blk));
        start = end;
    }
    return blocks;
}

}  // namespace

ProjectiveRep validate_projrep(const Cocycle& c, std::vector<CMatrix> matrices, const ProjrepTolerances& tol) {
    const auto& G = c.group();
    if (matrices.size() != G.order()) {
        throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(G.order()) + " matrices");
    }
    const std::size_t d = matrices[0].rows();
    for (Element g = 0; g < G.order(); ++g) {
        if (matrices[g].rows() != d || matrices[g].cols() != d) {
            throw Error(ErrorKind::DimensionMismatch, "matrix for " + G.name(g) + " has wrong shape");
        }
        if (!matrices[g].all_finite()) throw Error(ErrorKind::InvalidInput, "non-finite entry");
        if (!is_unitary(matrices[g], tol.unitary)) throw Error(ErrorKind::NotUnitary, G.name(g));
    }
    for (Element g = 0; g < G.order(); ++g)
        for (Element h = 0; h < G.order(); ++h) {
            const CMatrix lhs = matrices[g] * matrices[h];
            const CMatrix& rhs = matrices[G.mul(g, h)];
            if (frobenius_distance(lhs, c.value(g, h) * rhs) > tol.cocycle) {
                const cplx measured = hs_inner(rhs, lhs) / static_cast<double>(d);
                throw Error(ErrorKind::CocycleMismatch,
                            "(" + G.name(g) + "," + G.name(h) + "): measured " + format_phase(measured) +
                                ", declared " + format_phase(c.value(g, h)));
            }
        }
    return ProjectiveRep{c, d, std::move(matrices)};
}

ProjectiveRep as_projective(const OnsiteRep& u) {
    return ProjectiveRep{Cocycle::trivial(u.group), u.dim, u.matrices};
}

std::vector<cplx> character(const ProjectiveRep& v) {
    std::vector<cplx> chi;
    chi.reserve(v.matrices.size());
    for (const auto& m : v.matrices) chi.push_back(m.trace());
    return chi;
}

std::size_t multiplicity(const ProjectiveRep& irrep, const ProjectiveRep& v) {
    require_same_cocycle(irrep.cocycle, v.cocycle);
    cplx s = 0.0;
    for (Element g = 0; g < v.group().order(); ++g) s += std::conj(irrep(g).trace()) * v(g).trace();
    s /= static_cast<double>(v.group().order());
    const double r = std::round(s.real());
    if (std::abs(s - r) > kMultiplicityTol || r < 0.0) {
        throw Error(ErrorKind::NonIntegerMultiplicity, "character sum " + std::to_string(s.real()) + "+" +
                                                           std::to_string(s.imag()) + "i");
    }
    return static_cast<std::size_t>(r);
}

ProjectiveRep regular_rep(const Cocycle& c) {
    const auto& G = c.group();
    const std::size_t n = G.order();
    std::vector<CMatrix> m;
    m.reserve(n);
    for (Element g = 0; g < n; ++g) {
        CMatrix r(n, n);
        for (Element k = 0; k < n; ++k) r(G.mul(g, k), k) = c.value(g, k);
        m.push_back(std::move(r));
    }
    return ProjectiveRep{c, n, std::move(m)};
}

IrrepTable irreps(const Cocycle& c, std::uint64_t seed) {
    const ProjectiveRep reg = regular_rep(c);
    const std::size_t n = reg.dim;
    constexpr int kAttempts = 5;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(attempt));
        const auto blocks = split_regular(reg, rng);
        if (!blocks) continue;

        std::vector<std::size_t> rep_index;  // first block of each class
        std::vector<std::size_t> count;
        for (std::size_t b = 0; b < blocks->size(); ++b) {
            std::size_t cls = 0;
            while (cls < rep_index.size() && !characters_equal((*blocks)[rep_index[cls]].chi, (*blocks)[b].chi))
                ++cls;
            if (cls == rep_index.size()) {
                rep_index.push_back(b);
                count.push_back(0);
            }
            ++count[cls];
        }
        std::size_t total = 0;
        bool consistent = true;
        for (std::size_t cls = 0; cls < rep_index.size(); ++cls) {
            const std::size_t d = (*blocks)[rep_index[cls]].matrices[0].rows();
            consistent &= count[cls] == d;
            total += d * d;
        }
        if (!consistent || total != n) continue;

        std::vector<std::size_t> order(rep_index.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const auto& ba = (*blocks)[rep_index[a]];
            const auto& bb = (*blocks)[rep_index[b]];
            if (ba.matrices[0].rows() != bb.matrices[0].rows()) return ba.matrices[0].rows() < bb.matrices[0].rows();
            return character_before(ba.chi, bb.chi);
        });

        IrrepTable table{c, {}, {}};
        bool valid = true;
        for (std::size_t cls : order) {
            const auto& blk = (*blocks)[rep_index[cls]];
            try {
                table.irreps.push_back(validate_projrep(c, blk.matrices));
            } catch (const Error&) {
                valid = false;
                break;
            }
            table.characters.push_back(blk.chi);
        }
        if (valid) return table;
    }
    throw Error(ErrorKind::DegenerateSplit,
                "commutant element failed to separate irreducible blocks after " + std::to_string(kAttempts) +
                    " draws");
}

DecompositionReport decompose(const ProjectiveRep& v, const IrrepTable& table) {
    require_same_cocycle(v.cocycle, table.cocycle);
    const auto& G = v.group();
    const double order = static_cast<double>(G.order());
    CMatrix columns(v.dim, v.dim);
    DecompositionReport report;
    std::size_t filled = 0;
    for (const auto& alpha : table.irreps) {
        const std::size_t n = alpha.dim;
        std::vector<CMatrix> p(n, CMatrix(v.dim, v.dim));  // P_{k1}
        for (std::size_t k = 0; k < n; ++k) {
            for (Element g = 0; g < G.order(); ++g) p[k].add_scaled(std::conj(alpha(g)(k, 0)), v(g));
            p[k] *= static_cast<double>(n) / order;
        }
        CMatrix p11 = p[0] + p[0].adjoint();
        p11 *= 0.5;
        const CMatrix w = numkernel::range_basis(p11);
        const std::size_t mult = w.cols();
        if (mult != multiplicity(alpha, v)) {
            throw Error(ErrorKind::NonIntegerMultiplicity,
                        "projector rank disagrees with the character multiplicity");
        }
        report.multiplicities.push_back(mult);
        report.offsets.push_back(filled);
        if (filled + n * mult > v.dim) throw Error(ErrorKind::DegenerateSplit, "blocks exceed the carrier");
        for (std::size_t k = 0; k < n; ++k) {
            const CMatrix pk = p[k] * w;
            columns.set_block(0, filled + k * mult, pk);
        }
        filled += n * mult;
    }
    if (filled != v.dim) throw Error(ErrorKind::DegenerateSplit, "blocks do not fill the carrier");
    report.basis = columns.adjoint();
    return report;
}

ProjectiveRep twist(const ProjectiveRep& v, const PhaseFunction& b) {
    if (!(b.group() == v.group())) throw Error(ErrorKind::GroupMismatch, "phase function on another group");
    std::vector<CMatrix> m = v.matrices;
    for (Element g = 0; g < m.size(); ++g) m[g] *= b.value(g);
    return ProjectiveRep{product(v.cocycle, coboundary(b)), v.dim, std::move(m)};
}

ProjectiveRep tensor_with_onsite(const ProjectiveRep& v, const OnsiteRep& u, std::size_t l, std::size_t cap) {
    if (!(u.group == v.group())) throw Error(ErrorKind::GroupMismatch, "on-site rep on another group");
    std::size_t dim = v.dim;
    for (std::size_t i = 0; i < l; ++i) {
        if (dim > cap / u.dim) {
            throw Error(ErrorKind::DimensionOverflow, "d^l·dim exceeds cap " + std::to_string(cap));
        }
        dim *= u.dim;
    }
    std::vector<CMatrix> m;
    m.reserve(v.matrices.size());
    for (Element g = 0; g < v.matrices.size(); ++g) m.push_back(kron(kron_power(u(g), l), v(g)));
    return ProjectiveRep{v.cocycle, dim, std::move(m)};
}

ProjectiveRep direct_sum(const ProjectiveRep& a, const ProjectiveRep& b) {
    require_same_cocycle(a.cocycle, b.cocycle);
    std::vector<CMatrix> m;
    for (Element g = 0; g < a.matrices.size(); ++g) m.push_back(numkernel::direct_sum(a(g), b(g)));
    return ProjectiveRep{a.cocycle, a.dim + b.dim, std::move(m)};
}

ProjectiveRep conjugate_rep(const ProjectiveRep& v) {
    std::vector<CMatrix> m;
    for (const auto& x : v.matrices) m.push_back(x.conj());
    return ProjectiveRep{conjugate(v.cocycle), v.dim, std::move(m)};
}

namespace reps {

ProjectiveRep pauli() {
    const CMatrix sx{{0.0, 1.0}, {1.0, 0.0}};
    const CMatrix sz{{1.0, 0.0}, {0.0, -1.0}};
    return validate_projrep(cocycles::pauli(), {CMatrix::identity(2), sx, sz, sx * sz});
}

}  // namespace reps

}  // namespace cocycle_lab
