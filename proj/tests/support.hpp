#pragma once

#include <string>
#include <vector>

#include "arcmodel/arcspace.hpp"
#include "arcmodel/multipoly.hpp"
#include "arcmodel/rng.hpp"
#include "arcmodel/series.hpp"

namespace testsupport {

using namespace arcmodel;
using RSeries = Series<RingElem>;
using RPoly = Poly<RingElem>;

inline RingElem el(const TestRing::Ptr& ring, const std::string& text) { return parse_ring_element(ring, text); }

inline RSeries series(const TestRing::Ptr& ring, const std::vector<std::string>& coeffs)
{
    std::vector<RingElem> c;
    for (const auto& s : coeffs) c.push_back(el(ring, s));
    return RSeries(std::move(c), ring->zero());
}

inline RPoly poly(const TestRing::Ptr& ring, const std::vector<std::string>& coeffs)
{
    std::vector<RingElem> c;
    for (const auto& s : coeffs) c.push_back(el(ring, s));
    return RPoly(std::move(c), ring->zero());
}

inline Scalar small_scalar(const Field& f, Rng& rng)
{
    return f.from_int(static_cast<long>(rng.below(7)) - 3);
}

inline RingElem random_elem(const TestRing::Ptr& ring, Rng& rng, bool in_m = false)
{
    std::vector<Scalar> c;
    for (std::size_t i = 0; i < ring->dim(); ++i)
        c.push_back(i == 0 && in_m ? ring->field().zero() : small_scalar(ring->field(), rng));
    return RingElem(ring, std::move(c));
}


inline ArcProblem fixture(const std::string& name) { return load_problem(std::string(ARCMODEL_DATA_DIR) + "/" + name); }

inline ArcProblem fixture(const std::string& name, const TestRing::Ptr& ring)
{
    return change_field(fixture(name), ring->field());
}

inline std::vector<RSeries> series_list(const TestRing::Ptr& ring, const std::vector<std::vector<std::string>>& rows)
{
    std::vector<RSeries> out;
    for (const auto& r : rows) out.push_back(series(ring, r));
    return out;
}

// Pads a polynomial written by its first coefficients to a series of the given precision.
inline RSeries padded(const TestRing::Ptr& ring, const std::vector<std::string>& coeffs, std::size_t precision)
{
    return RSeries::from_poly(poly(ring, coeffs), precision);
}

} // namespace testsupport
