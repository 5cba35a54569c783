#pragma once

#include <cstddef>

#include "arcmodel/series.hpp"
#include "arcmodel/test_ring.hpp"

namespace arcmodel {

/// f = q*u with q monic of degree d, q = t^d mod m, and u a unit.
struct WeierstrassFactorization {
    Poly<RingElem> q;
    Series<RingElem> u;
    std::size_t d = 0;
};

/// t-order of the residue of f, or nullopt if the residue vanishes to the
/// known precision.
std::optional<std::size_t> residue_order(const Series<RingElem>& f);

/// Precision needed to prepare a series of residue order d over a ring of
/// nilpotency a.
std::size_t preparation_precision(std::size_t d, std::size_t a);

/// Weierstrass preparation by successive correction along the m-adic
/// filtration. The unit u is known modulo t^(N - d) when q = t^d and
/// modulo t^(N - a*d) otherwise.
WeierstrassFactorization weierstrass_prepare(const Series<RingElem>& f);

struct WeierstrassQuotient {
    Series<RingElem> h;
    Poly<RingElem> r;
};

/// f = g*h + r with deg r < d, where d is the residue order of g.
WeierstrassQuotient weierstrass_divide(const Series<RingElem>& f, const Series<RingElem>& g);

} // namespace arcmodel
