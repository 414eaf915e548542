#include "cocycle_lab/twisted.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cocycle_lab/error.hpp"
#include "cocycle_lab/numkernel/linalg.hpp"

namespace cocycle_lab {

using numkernel::frobenius_distance;
using numkernel::kron;
using numkernel::kron_power;
using numkernel::operator_norm;
using numkernel::range_basis;

namespace {

std::size_t checked_power(std::size_t d, std::size_t l, std::size_t cap) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < l; ++i) {
        if (d != 0 && n > cap / d) throw Error(ErrorKind::DimensionOverflow, "d^|window| exceeds " + std::to_string(cap));
        n *= d;
    }
    if (n > cap) throw Error(ErrorKind::DimensionOverflow, "d^|window| exceeds " + std::to_string(cap));
    return n;
}

bool compatible(const SystemPtr& a, const SystemPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->window().sites != b->window().sites || a->window().d != b->window().d) return false;
    if (!(a->group() == b->group()) || !same_values(a->cocycle(), b->cocycle())) return false;
    for (Element g = 0; g < a->order(); ++g)
        if (frobenius_distance(a->onsite()(g), b->onsite()(g)) > 1e-12) return false;
    return true;
}

void require_compatible(const SystemPtr& a, const SystemPtr& b) {
    if (!compatible(a, b)) throw Error(ErrorKind::Mismatch, "elements live over different window/cocycle/on-site data");
}

void require_same_cocycle(const SystemPtr& s, const Cocycle& c, const char* what) {
    if (!(c.group() == s->group()) || !same_values(c, s->cocycle()))
        throw Error(ErrorKind::CocycleValueMismatch, std::string(what) + " does not carry the system cocycle");
}

// Frame X with π(a) = X (a ⊗ I_m) X† for a unital *-representation of M_n given as a callable.
template <class Pi>
std::pair<CMatrix, std::size_t> frame_of(std::size_t n, std::size_t carrier, Pi&& pi) {
    const CMatrix v = range_basis(pi(CMatrix::unit(n, n, 0, 0)));
    const std::size_t m = v.cols();
    if (m * n != carrier) throw Error(ErrorKind::NotCovariant, "representation is not unital on its carrier");
    CMatrix frame(carrier, carrier);
    for (std::size_t i = 0; i < n; ++i) {
        const CMatrix cols = pi(CMatrix::unit(n, n, i, 0)) * v;
        for (std::size_t s = 0; s < m; ++s)
            for (std::size_t r = 0; r < carrier; ++r) frame(r, i * m + s) = cols(r, s);
    }
    return {frame, m};
}

std::vector<std::size_t> digits_of(std::size_t index, std::size_t d, std::size_t len) {
    std::vector<std::size_t> out(len);
    for (std::size_t p = len; p-- > 0;) {
        out[p] = index % d;
        index /= d;
    }
    return out;
}

}  // namespace

std::size_t ChainWindow::carrier_dim() const {
    std::size_t n = 1;
    for (std::size_t i = 0; i < sites.size(); ++i) n *= d;
    return n;
}

ChainWindow make_window(std::vector<long long> sites, std::size_t d, std::size_t cap) {
    if (sites.empty()) throw Error(ErrorKind::InvalidInput, "window has no sites");
    if (d == 0) throw Error(ErrorKind::InvalidInput, "local dimension 0");
    for (std::size_t i = 1; i < sites.size(); ++i)
        if (sites[i] <= sites[i - 1]) throw Error(ErrorKind::InvalidInput, "window sites must be strictly increasing");
    checked_power(d, sites.size(), cap);
    return ChainWindow{std::move(sites), d};
}

TwistedSystem::TwistedSystem(ChainWindow w, Cocycle c, OnsiteRep u)
    : window_(std::move(w)), cocycle_(std::move(c)), onsite_(std::move(u)) {
    for (Element g = 0; g < onsite_.group.order(); ++g) window_unitaries_.push_back(kron_power(onsite_(g), window_.size()));
}

SystemPtr TwistedSystem::make(ChainWindow window, Cocycle cocycle, OnsiteRep onsite) {
    if (onsite.dim != window.d) throw Error(ErrorKind::Mismatch, "on-site dimension differs from window d");
    if (!(cocycle.group() == onsite.group)) throw Error(ErrorKind::GroupMismatch, "cocycle and on-site rep on different groups");
    return SystemPtr(new TwistedSystem(std::move(window), std::move(cocycle), std::move(onsite)));
}

CMatrix TwistedSystem::act(Element g, const CMatrix& a) const {
    const CMatrix& u = window_unitaries_[g];
    return u * a * u.adjoint();
}

TwistedElement TwistedElement::zero(const SystemPtr& s) {
    return TwistedElement{s, std::vector<CMatrix>(s->order(), CMatrix(s->dim(), s->dim()))};
}

TwistedElement TwistedElement::lambda(const SystemPtr& s, Element g) {
    auto f = zero(s);
    f.values.at(g) = CMatrix::identity(s->dim());
    return f;
}

TwistedElement TwistedElement::xi(const SystemPtr& s, const CMatrix& a) {
    if (a.rows() != s->dim() || a.cols() != s->dim()) throw Error(ErrorKind::Mismatch, "matrix size differs from window algebra");
    auto f = zero(s);
    f.values[0] = a;
    return f;
}

TwistedElement TwistedElement::random(const SystemPtr& s, std::mt19937_64& rng) {
    auto f = zero(s);
    for (auto& v : f.values) v = numkernel::random_gaussian(s->dim(), s->dim(), rng);
    return f;
}

TwistedElement& TwistedElement::operator+=(const TwistedElement& o) {
    require_compatible(system, o.system);
    for (std::size_t g = 0; g < values.size(); ++g) values[g] += o.values[g];
    return *this;
}

TwistedElement& TwistedElement::operator*=(cplx s) {
    for (auto& v : values) v *= s;
    return *this;
}

TwistedElement operator+(TwistedElement a, const TwistedElement& b) { return a += b; }
TwistedElement operator*(cplx s, TwistedElement a) { return a *= s; }

double distance(const TwistedElement& a, const TwistedElement& b) {
    require_compatible(a.system, b.system);
    double d = 0.0;
    for (std::size_t g = 0; g < a.values.size(); ++g) d = std::max(d, frobenius_distance(a.values[g], b.values[g]));
    return d;
}

TwistedElement star_product(const TwistedElement& f1, const TwistedElement& f2) {
    require_compatible(f1.system, f2.system);
    const auto& s = *f1.system;
    const auto& G = s.group();
    auto out = TwistedElement::zero(f1.system);
    for (Element g = 0; g < G.order(); ++g) {
        const CMatrix& u = s.window_unitary(g);
        const CMatrix left = f1.values[g] * u;
        const CMatrix ud = u.adjoint();
        for (Element k = 0; k < G.order(); ++k) {
            // h = g k, so g⁻¹h = k.
            const Element h = G.mul(g, k);
            out.values[h].add_scaled(s.cocycle().value(g, k), left * f2.values[k] * ud);
        }
    }
    return out;
}

TwistedElement involution(const TwistedElement& f) {
    const auto& s = *f.system;
    const auto& G = s.group();
    auto out = TwistedElement::zero(f.system);
    for (Element h = 0; h < G.order(); ++h) {
        const Element hi = G.inverse(h);
        out.values[h] = std::conj(s.cocycle().value(hi, h)) * s.act(h, f.values[hi].adjoint());
    }
    return out;
}

bool is_fixed(const TwistedElement& f, double tol) {
    for (Element g = 0; g < f.system->order(); ++g) {
        const auto lg = TwistedElement::lambda(f.system, g);
        if (distance(star_product(star_product(lg, f), involution(lg)), f) > tol) return false;
    }
    return true;
}

CMatrix CovariantRep::pi(const CMatrix& a) const {
    return frame * kron(a, CMatrix::identity(multiplicity)) * frame.adjoint();
}

CovariantRep make_covariant(const SystemPtr& s, CMatrix frame, std::size_t multiplicity, ProjectiveRep u, double tol) {
    const std::size_t n = s->dim();
    const std::size_t k = n * multiplicity;
    if (frame.rows() != k || frame.cols() != k || u.dim != k)
        throw Error(ErrorKind::Mismatch, "carrier dimensions disagree");
    if (!numkernel::is_unitary(frame, 1e-10)) throw Error(ErrorKind::NotUnitary, "frame is not unitary");
    require_same_cocycle(s, u.cocycle, "u");
    u = validate_projrep(s->cocycle(), std::move(u.matrices));
    // Covariance ⟺ (U_Λ(g)† ⊗ I) frame† u(g) frame = I_n ⊗ v(g) for some v(g).
    const CMatrix idm = CMatrix::identity(multiplicity);
    for (Element g = 0; g < s->order(); ++g) {
        const CMatrix t = kron(s->window_unitary(g).adjoint(), idm) * frame.adjoint() * u(g) * frame;
        const CMatrix v = t.block(0, 0, multiplicity, multiplicity);
        const double defect = frobenius_distance(t, kron(CMatrix::identity(n), v));
        if (defect > tol) {
            throw Error(ErrorKind::NotCovariant,
                        "u(" + s->group().name(g) + ") defect " + std::to_string(defect));
        }
    }
    return CovariantRep{s, std::move(frame), multiplicity, std::move(u)};
}

CovariantRep tensor_covariant(const SystemPtr& s, const ProjectiveRep& v) {
    require_same_cocycle(s, v.cocycle, "v");
    std::vector<CMatrix> mats;
    for (Element g = 0; g < s->order(); ++g) mats.push_back(kron(s->window_unitary(g), v(g)));
    const std::size_t k = s->dim() * v.dim;
    return make_covariant(s, CMatrix::identity(k), v.dim, ProjectiveRep{s->cocycle(), k, std::move(mats)});
}

CovariantRep identity_covariant(const SystemPtr& s) {
    const auto one = Cocycle::trivial(s->group());
    if (!same_values(one, s->cocycle()))
        throw Error(ErrorKind::CocycleValueMismatch, "identity covariant rep needs the trivial cocycle");
    std::vector<CMatrix> mats;
    for (Element g = 0; g < s->order(); ++g) mats.push_back(s->window_unitary(g));
    return make_covariant(s, CMatrix::identity(s->dim()), 1, ProjectiveRep{s->cocycle(), s->dim(), std::move(mats)});
}

CovariantRep regular_covariant(const SystemPtr& s, const CMatrix& frame, std::size_t multiplicity) {
    const std::size_t n = s->order();
    const std::size_t k0 = frame.rows();
    if (k0 != s->dim() * multiplicity) throw Error(ErrorKind::Mismatch, "frame size differs from d^|Λ|·multiplicity");
    const CMatrix idm = CMatrix::identity(multiplicity);
    CMatrix big(k0 * n, k0 * n);
    for (Element g = 0; g < n; ++g)
        big += kron(frame * kron(s->window_unitary(g).adjoint(), idm), CMatrix::unit(n, n, g, g));
    const auto ur = regular_rep(s->cocycle());
    std::vector<CMatrix> mats;
    const CMatrix idk = CMatrix::identity(k0);
    for (Element g = 0; g < n; ++g) mats.push_back(kron(idk, ur(g)));
    return make_covariant(s, std::move(big), multiplicity * n, ProjectiveRep{s->cocycle(), k0 * n, std::move(mats)});
}

CovariantRep regular_covariant(const SystemPtr& s) { return regular_covariant(s, CMatrix::identity(s->dim()), 1); }

CMatrix pi_times_u(const TwistedElement& f, const CovariantRep& r) {
    require_compatible(f.system, r.system);
    CMatrix out(r.carrier_dim(), r.carrier_dim());
    for (Element g = 0; g < f.values.size(); ++g) out += r.pi(f.values[g]) * r.u(g);
    return out;
}

double reduced_norm(const TwistedElement& f) { return operator_norm(pi_times_u(f, regular_covariant(f.system))); }

TwistedElement q_element(const SystemPtr& s, const ProjectiveRep& alpha, std::size_t k, std::size_t j) {
    require_same_cocycle(s, alpha.cocycle, "alpha");
    if (k >= alpha.dim || j >= alpha.dim)
        throw Error(ErrorKind::IndexOutOfRange, "(" + std::to_string(k) + "," + std::to_string(j) + ") outside n_alpha = " +
                                                    std::to_string(alpha.dim));
    auto q = TwistedElement::zero(s);
    const double scale = static_cast<double>(alpha.dim) / static_cast<double>(s->order());
    for (Element g = 0; g < s->order(); ++g) q.values[g] = CMatrix::identity(s->dim()) * (scale * std::conj(alpha(g)(k, j)));
    return q;
}

TwistedMatrix star_product(const TwistedMatrix& a, const TwistedMatrix& b) {
    if (a.n != b.n || a.entries.empty()) throw Error(ErrorKind::Mismatch, "matrix sizes differ");
    TwistedMatrix out{a.n, std::vector<TwistedElement>(a.n * a.n, TwistedElement::zero(a.entries[0].system))};
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t j = 0; j < a.n; ++j)
            for (std::size_t k = 0; k < a.n; ++k) out(i, j) += star_product(a(i, k), b(k, j));
    return out;
}

TwistedMatrix involution(const TwistedMatrix& a) {
    TwistedMatrix out = a;
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t j = 0; j < a.n; ++j) out(i, j) = involution(a(j, i));
    return out;
}

CMatrix pi_times_u(const TwistedMatrix& a, const CovariantRep& r) {
    const std::size_t k = r.carrier_dim();
    CMatrix out(a.n * k, a.n * k);
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t j = 0; j < a.n; ++j) out.set_block(i * k, j * k, pi_times_u(a(i, j), r));
    return out;
}

TwistedMatrix r_element(const SystemPtr& s, const ProjectiveRep& alpha) {
    const std::size_t n = alpha.dim;
    TwistedMatrix r{n, {}};
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) r.entries.push_back((1.0 / static_cast<double>(n)) * q_element(s, alpha, k, j));
    return r;
}

std::vector<TwistedMatrix> g_lambda_family(const SystemPtr& s, const ProjectiveRep& alpha) {
    require_same_cocycle(s, alpha.cocycle, "alpha");
    const std::size_t n = alpha.dim;
    const std::size_t dim = s->dim();
    if (n * s->order() * dim > kDefaultDimensionCap)
        throw Error(ErrorKind::DimensionOverflow, "family size exceeds " + std::to_string(kDefaultDimensionCap));
    const double scale = 1.0 / std::sqrt(static_cast<double>(s->order()));
    std::vector<TwistedMatrix> out;
    for (std::size_t j = 0; j < n; ++j)
        for (Element g = 0; g < s->order(); ++g)
            for (std::size_t i = 0; i < dim; ++i) {
                TwistedMatrix x{n, std::vector<TwistedElement>(n * n, TwistedElement::zero(s))};
                x(j, 0) = scale * star_product(TwistedElement::lambda(s, g), TwistedElement::xi(s, CMatrix::unit(dim, dim, i, 0)));
                out.push_back(std::move(x));
            }
    return out;
}

CMatrix embed(const CMatrix& a, const ChainWindow& window, const std::vector<long long>& sub) {
    std::vector<std::size_t> pos;
    for (long long site : sub) {
        const auto it = std::find(window.sites.begin(), window.sites.end(), site);
        if (it == window.sites.end()) throw Error(ErrorKind::NotSubWindow, "site " + std::to_string(site) + " not in window");
        pos.push_back(static_cast<std::size_t>(it - window.sites.begin()));
    }
    for (std::size_t i = 1; i < pos.size(); ++i)
        if (pos[i] <= pos[i - 1]) throw Error(ErrorKind::NotSubWindow, "sub-window sites must be strictly increasing");
    const std::size_t len = window.size();
    const std::size_t n = window.carrier_dim();
    std::size_t ns = 1;
    for (std::size_t i = 0; i < pos.size(); ++i) ns *= window.d;
    if (a.rows() != ns || a.cols() != ns) throw Error(ErrorKind::Mismatch, "matrix size differs from sub-window algebra");
    std::vector<bool> in_sub(len, false);
    for (auto p : pos) in_sub[p] = true;

    CMatrix out(n, n);
    for (std::size_t row = 0; row < n; ++row) {
        const auto ri = digits_of(row, window.d, len);
        for (std::size_t col = 0; col < n; ++col) {
            const auto ci = digits_of(col, window.d, len);
            bool match = true;
            std::size_t rs = 0, cs = 0;
            for (std::size_t p = 0; p < len && match; ++p) {
                if (in_sub[p]) {
                    rs = rs * window.d + ri[p];
                    cs = cs * window.d + ci[p];
                } else {
                    match = ri[p] == ci[p];
                }
            }
            if (match) out(row, col) = a(rs, cs);
        }
    }
    return out;
}

Factorization factorize(const CovariantRep& r, const std::vector<long long>& sub) {
    const auto& s = *r.system;
    const auto& window = s.window();
    if (sub.empty() || sub.size() >= window.size())
        throw Error(ErrorKind::NotSubWindow, "need a proper nonempty sub-window");
    std::vector<long long> comp;
    for (long long site : window.sites)
        if (std::find(sub.begin(), sub.end(), site) == sub.end()) comp.push_back(site);

    const std::size_t d = window.d;
    std::size_t ns = 1;
    for (std::size_t i = 0; i < sub.size(); ++i) ns *= d;
    const CMatrix b0 = range_basis(r.pi(embed(CMatrix::unit(ns, ns, 0, 0), window, sub)));
    const std::size_t kp = b0.cols();
    const std::size_t k = r.carrier_dim();
    if (kp * ns != k) throw Error(ErrorKind::NotCovariant, "carrier does not split over the sub-window");

    CMatrix w(k, k);
    for (std::size_t i = 0; i < ns; ++i)
        w.set_block(i * kp, 0, b0.adjoint() * r.pi(embed(CMatrix::unit(ns, ns, 0, i), window, sub)));

    auto rest = TwistedSystem::make(make_window(comp, d), s.cocycle(), s.onsite());
    const std::size_t nc = rest->dim();
    auto pi_rest = [&](const CMatrix& b) { return b0.adjoint() * r.pi(embed(b, window, comp)) * b0; };
    auto [frame, mult] = frame_of(nc, kp, pi_rest);

    std::vector<CMatrix> mats;
    const CMatrix idk = CMatrix::identity(kp);
    for (Element g = 0; g < s.order(); ++g) {
        const CMatrix t = kron(kron_power(s.onsite()(g), sub.size()).adjoint(), idk) * w * r.u(g) * w.adjoint();
        mats.push_back(t.block(0, 0, kp, kp));
    }
    auto rem = make_covariant(rest, std::move(frame), mult, ProjectiveRep{s.cocycle(), kp, std::move(mats)});
    return Factorization{std::move(w), std::move(rem)};
}

CMatrix symmetrize(const SystemPtr& s, const CMatrix& a) {
    CMatrix out(a.rows(), a.cols());
    for (Element g = 0; g < s->order(); ++g) out += s->act(g, a);
    out *= 1.0 / static_cast<double>(s->order());
    return out;
}

FixedPointReport fixed_point_decompose(const CovariantRep& r) {
    const auto& s = r.system;
    const auto table = irreps(s->cocycle());
    const auto dec = decompose(r.u, table);
    FixedPointReport rep;
    const std::size_t n = s->dim();
    const std::size_t probe_span = std::min<std::size_t>(n, 4);
    rep.probes.push_back(CMatrix::identity(n));
    for (std::size_t i = 0; i < probe_span; ++i)
        for (std::size_t j = 0; j < probe_span; ++j) rep.probes.push_back(symmetrize(s, CMatrix::unit(n, n, i, j)));

    for (std::size_t a = 0; a < table.size(); ++a)
        if (dec.multiplicities[a] > 0) rep.blocks.push_back({a, table.dim(a), dec.multiplicities[a], {}});

    for (const auto& probe : rep.probes) {
        const CMatrix m = dec.basis * r.pi(probe) * dec.basis.adjoint();
        CMatrix expected(m.rows(), m.cols());
        for (auto& b : rep.blocks) {
            const std::size_t off = dec.offsets[b.gamma];
            const CMatrix block = m.block(off, off, b.multiplicity, b.multiplicity);
            expected.set_block(off, off, kron(CMatrix::identity(b.irrep_dim), block));
            b.probes.push_back(block);
        }
        rep.max_defect = std::max(rep.max_defect, frobenius_distance(m, expected));
    }
    return rep;
}

}  // namespace cocycle_lab
