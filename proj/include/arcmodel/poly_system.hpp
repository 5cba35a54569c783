#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arcmodel/errors.hpp"
#include "arcmodel/matrix.hpp"
#include "arcmodel/multipoly.hpp"
#include "arcmodel/series.hpp"

namespace arcmodel {

/// A value's precision, or nullopt for exact values (polynomials).
template <class V>
std::optional<std::size_t> value_precision(const V&)
{
    return std::nullopt;
}
template <class C>
std::optional<std::size_t> value_precision(const Series<C>& s)
{
    return s.precision();
}

namespace detail {

template <class V>
V unit_like(const std::vector<V>& values)
{
    if constexpr (requires(const V& v) { v.precision(); }) {
        std::size_t n = values.front().precision();
        for (const auto& v : values) n = std::min(n, v.precision());
        return V(values.front().zero(), n).one_like();
    } else {
        return values.front().one_like();
    }
}

} // namespace detail

/// Substitutes values positionally (one per variable of the shared variable
/// set). Series results carry the smallest input precision.
template <class V>
std::vector<V> eval_poly_system(std::span<const MultiPoly> polys, const std::vector<V>& values)
{
    require(!values.empty(), ErrorKind::structural, "evaluation point is empty");
    const V one = detail::unit_like(values);
    std::vector<V> out;
    out.reserve(polys.size());
    for (const auto& p : polys) out.push_back(p.evaluate<V>(std::span<const V>(values), one));
    return out;
}

/// Substitutes values by variable name. Every variable must be assigned.
template <class V>
std::vector<V> eval_poly_system(std::span<const MultiPoly> polys, const std::map<std::string, V>& point)
{
    require(!polys.empty(), ErrorKind::structural, "empty polynomial system");
    const auto& vars = polys.front().vars();
    std::vector<V> values;
    values.reserve(vars->size());
    for (const auto& name : vars->names()) {
        auto it = point.find(name);
        require(it != point.end(), ErrorKind::structural, "variable '" + name + "' has no assigned value");
        values.push_back(it->second);
    }
    return eval_poly_system<V>(polys, values);
}

/// The square block of partial derivatives d p_i / d y_j.
inline Matrix<MultiPoly> jacobian_block(std::span<const MultiPoly> polys, std::span<const std::size_t> yvars)
{
    require(!polys.empty() && polys.size() == yvars.size(), ErrorKind::structural,
            "Jacobian block needs as many polynomials as variables (" + std::to_string(polys.size()) + " vs " +
                std::to_string(yvars.size()) + ")");
    return Matrix<MultiPoly>(polys.size(), yvars.size(), jacobian(polys, yvars));
}

/// Evaluates every entry of a polynomial matrix at one point.
template <class V>
Matrix<V> eval_matrix(const Matrix<MultiPoly>& m, const std::vector<V>& values)
{
    return Matrix<V>(m.rows(), m.cols(), eval_poly_system<V>(std::span<const MultiPoly>(m.entries()), values));
}

} // namespace arcmodel
