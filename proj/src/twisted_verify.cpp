#include <algorithm>
#include <cmath>

#include "cocycle_lab/numkernel/linalg.hpp"
#include "cocycle_lab/twisted.hpp"

namespace cocycle_lab {

using numkernel::frobenius_distance;
using numkernel::kron;

namespace {

class Recorder {
public:
    explicit Recorder(IdentityReport& r) : report_(r) {}

    void record(const std::string& name, double defect, double tol) {
        const bool ok = std::isfinite(defect) && defect <= tol;
        report_.checks.push_back({name, defect, tol, ok});
        report_.passed = report_.passed && ok;
    }

private:
    IdentityReport& report_;
};

// Σ_s |Ω_s⟩⟨Ω_s| with Ω_s = n^{-1/2} Σ_k e_k ⊗ ψ_{k,s}, ψ taken from the decomposing basis.
CMatrix omega_projection(const DecompositionReport& dec, std::size_t alpha, std::size_t n) {
    const CMatrix vecs = dec.basis.adjoint();
    const std::size_t k = vecs.rows();
    const std::size_t m = dec.multiplicities[alpha];
    CMatrix out(n * k, n * k);
    for (std::size_t s = 0; s < m; ++s) {
        CMatrix omega(n * k, 1);
        for (std::size_t kk = 0; kk < n; ++kk)
            for (std::size_t row = 0; row < k; ++row)
                omega(kk * k + row, 0) = vecs(row, dec.offsets[alpha] + kk * m + s) / std::sqrt(static_cast<double>(n));
        out += omega * omega.adjoint();
    }
    return out;
}

}  // namespace

IdentityReport verify_identities(const SystemPtr& s, std::size_t samples, std::uint64_t seed, double tol) {
    return verify_identities(regular_covariant(s), samples, seed, tol);
}

IdentityReport verify_identities(const CovariantRep& reg, std::size_t samples, std::uint64_t seed, double tol) {
    const SystemPtr& s = reg.system;
    IdentityReport report;
    Recorder rec(report);
    std::mt19937_64 rng(seed);
    const auto& G = s->group();
    const std::size_t n = G.order();
    const std::size_t dim = s->dim();

    double assoc = 0, invol = 0, anti = 0, cstar = 0, hom = 0, adj = 0, conj = 0, cov = 0;
    for (std::size_t t = 0; t < samples; ++t) {
        const auto a = TwistedElement::random(s, rng);
        const auto b = TwistedElement::random(s, rng);
        const auto c = TwistedElement::random(s, rng);
        assoc = std::max(assoc, distance(star_product(star_product(a, b), c), star_product(a, star_product(b, c))));
        invol = std::max(invol, distance(involution(involution(a)), a));
        anti = std::max(anti, distance(involution(star_product(a, b)), star_product(involution(b), involution(a))));
        const double na = reduced_norm(a);
        cstar = std::max(cstar, std::abs(reduced_norm(star_product(involution(a), a)) - na * na) / std::max(1.0, na * na));
        const CMatrix pa = pi_times_u(a, reg);
        const CMatrix pb = pi_times_u(b, reg);
        hom = std::max(hom, frobenius_distance(pi_times_u(star_product(a, b), reg), pa * pb));
        adj = std::max(adj, frobenius_distance(pi_times_u(involution(a), reg), pa.adjoint()));

        const CMatrix x = numkernel::random_gaussian(dim, dim, rng);
        const Element g = static_cast<Element>(rng() % n);
        const auto lg = TwistedElement::lambda(s, g);
        const auto sandwiched = star_product(star_product(lg, TwistedElement::xi(s, x)), involution(lg));
        conj = std::max(conj, frobenius_distance(pi_times_u(sandwiched, reg), reg.pi(s->act(g, x))));
        cov = std::max(cov, frobenius_distance(reg.u(g) * reg.pi(x) * reg.u(g).adjoint(), reg.pi(s->act(g, x))));
    }
    double lam = 0;
    for (Element g = 0; g < n; ++g)
        for (Element h = 0; h < n; ++h)
            lam = std::max(lam, distance(star_product(TwistedElement::lambda(s, g), TwistedElement::lambda(s, h)),
                                         s->cocycle().value(g, h) * TwistedElement::lambda(s, G.mul(g, h))));

    rec.record("associativity", assoc, tol);
    rec.record("involution_involutive", invol, tol);
    rec.record("involution_antimultiplicative", anti, tol);
    rec.record("cstar_identity", cstar, tol);
    rec.record("lambda_relations", lam, tol);
    rec.record("lambda_conjugation", conj, tol);
    rec.record("homomorphism", hom, tol);
    rec.record("adjoint_compatibility", adj, tol);
    rec.record("covariance", cov, tol);

    const auto table = irreps(s->cocycle());
    const auto dec = decompose(reg.u, table);
    double puq = 0, rproj = 0, romega = 0, resolution = 0;
    const std::size_t k = reg.carrier_dim();
    for (std::size_t alpha = 0; alpha < table.size(); ++alpha) {
        const auto& va = table.irreps[alpha];
        const std::size_t na = va.dim;
        const std::size_t m = dec.multiplicities[alpha];
        for (std::size_t i = 0; i < na; ++i)
            for (std::size_t j = 0; j < na; ++j) {
                const CMatrix img = dec.basis * pi_times_u(q_element(s, va, i, j), reg) * dec.basis.adjoint();
                CMatrix expected(k, k);
                expected.set_block(dec.offsets[alpha], dec.offsets[alpha],
                                   kron(CMatrix::unit(na, na, i, j), CMatrix::identity(m)));
                puq = std::max(puq, frobenius_distance(img, expected));
            }
        const CMatrix r = pi_times_u(r_element(s, va), reg);
        rproj = std::max({rproj, frobenius_distance(r * r, r), frobenius_distance(r.adjoint(), r)});
        romega = std::max(romega, frobenius_distance(r, omega_projection(dec, alpha, na)));

        CMatrix sum(na * k, na * k);
        for (const auto& x : g_lambda_family(s, va)) {
            const CMatrix img = pi_times_u(x, reg);
            sum += img * img.adjoint();
        }
        resolution = std::max(resolution, frobenius_distance(sum, CMatrix::identity(na * k)));
    }
    rec.record("q_partial_isometries", puq, tol);
    rec.record("r_projection", rproj, tol);
    rec.record("r_omega_image", romega, tol);
    rec.record("g_lambda_resolution", resolution, std::min(tol, 1e-10));

    if (s->window().size() >= 2) {
        const std::vector<long long> sub{s->window().sites.front()};
        const auto f = factorize(reg, sub);
        const std::size_t ns = s->window().d;
        const auto comp = f.remainder.system->window().sites;
        double prev = 0, up = 0;
        for (std::size_t t = 0; t < std::max<std::size_t>(1, std::min<std::size_t>(samples, 10)); ++t) {
            const CMatrix a = numkernel::random_gaussian(ns, ns, rng);
            const CMatrix b = numkernel::random_gaussian(f.remainder.system->dim(), f.remainder.system->dim(), rng);
            const CMatrix full = embed(a, s->window(), sub) * embed(b, s->window(), comp);
            prev = std::max(prev, frobenius_distance(f.w * reg.pi(full) * f.w.adjoint(), kron(a, f.remainder.pi(b))));
        }
        for (Element g = 0; g < n; ++g)
            up = std::max(up, frobenius_distance(f.w * reg.u(g) * f.w.adjoint(), kron(s->onsite()(g), f.remainder.u(g))));
        rec.record("factorize_unitary", frobenius_distance(f.w * f.w.adjoint(), CMatrix::identity(k)), std::min(tol, 1e-10));
        rec.record("factorize_prev", prev, tol);
        rec.record("factorize_up", up, tol);
    }
    return report;
}

}  // namespace cocycle_lab
