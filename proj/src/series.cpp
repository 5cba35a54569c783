#include "arcmodel/series.hpp"

namespace arcmodel {

std::size_t series_division_margin(const Poly<RingElem>& g)
{
    const std::size_t d = static_cast<std::size_t>(g.degree());
    bool pure_power = true;
    for (std::size_t i = 0; i < d; ++i) {
        require(g[i].residue().is_zero(), ErrorKind::not_distinguished,
                "divisor " + g.str() + " is not congruent to t^" + std::to_string(d) + " modulo m");
        if (!g[i].is_zero()) pure_power = false;
    }
    if (pure_power) return 0;
    return g.zero().ring()->nilpotency() - 1;
}

} // namespace arcmodel
