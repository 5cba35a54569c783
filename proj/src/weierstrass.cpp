#include "arcmodel/weierstrass.hpp"

#include <algorithm>

#include "arcmodel/errors.hpp"

namespace arcmodel {

namespace {

bool is_pure_power(const Poly<RingElem>& q)
{
    for (int i = 0; i < q.degree(); ++i)
        if (!q[static_cast<std::size_t>(i)].is_zero()) return false;
    return true;
}

// Precision at which f/q is determined by f mod t^N.
std::size_t quotient_precision(std::size_t n, const Poly<RingElem>& q, std::size_t a)
{
    const std::size_t d = static_cast<std::size_t>(q.degree());
    const std::size_t loss = is_pure_power(q) ? d : a * d;
    return n > loss ? n - loss : 0;
}

} // namespace

std::optional<std::size_t> residue_order(const Series<RingElem>& f)
{
    for (std::size_t i = 0; i < f.precision(); ++i)
        if (!f[i].residue().is_zero()) return i;
    return std::nullopt;
}

std::size_t preparation_precision(std::size_t d, std::size_t a)
{
    if (d == 0) return 1;
    return std::max(a * d + 1, d + a - 1);
}

WeierstrassFactorization weierstrass_prepare(const Series<RingElem>& f)
{
    const auto& ring = f.zero().ring();
    const std::size_t a = ring->nilpotency();
    auto order = residue_order(f);
    if (!order)
        fail(ErrorKind::residue_zero, "residue of the series vanishes modulo t^" + std::to_string(f.precision()) +
                                          " (the arc lies in the degeneracy locus)");
    const std::size_t d = *order;
    if (d == 0) return {Poly<RingElem>::constant(ring->one()), f, 0};

    const std::size_t need = preparation_precision(d, a);
    if (f.precision() < need)
        fail(ErrorKind::precision_exhausted, "preparing a series of residue order " + std::to_string(d) + " over " +
                                                 ring->descriptor() + " needs precision " + std::to_string(need) +
                                                 ", have " + std::to_string(f.precision()));

    // Residue of f / t^d, embedded as constants.
    std::vector<RingElem> ubar;
    ubar.reserve(d);
    for (std::size_t i = 0; i < d; ++i) ubar.push_back(ring->scalar(f[i + d].residue()));
    const Series<RingElem> ubar_inv = Series<RingElem>(std::move(ubar), ring->zero()).invert();

    Poly<RingElem> q = Poly<RingElem>::t_power(ring->one(), d);
    for (std::size_t round = 1; round < a; ++round) {
        auto [h, r] = poly_divmod_monic(f, q);
        (void)h;
        if (r.is_zero()) break;
        Series<RingElem> delta = Series<RingElem>::from_poly(r, d) * ubar_inv;
        q = q + delta.to_poly();
    }

    auto [u, rem] = poly_divmod_monic(f, q);
    if (!rem.is_zero())
        fail(ErrorKind::precision_exhausted, "preparation did not converge: remainder " + rem.str());
    return {q, u.truncate(quotient_precision(f.precision(), q, a)), d};
}

WeierstrassQuotient weierstrass_divide(const Series<RingElem>& f, const Series<RingElem>& g)
{
    WeierstrassFactorization w = weierstrass_prepare(g);
    const std::size_t a = g.zero().ring()->nilpotency();
    auto [h0, r] = poly_divmod_monic(f, w.q);
    const std::size_t n = std::min(quotient_precision(f.precision(), w.q, a), w.u.precision());
    return {h0.truncate(n) * w.u.truncate(n).invert(), r};
}

} // namespace arcmodel
