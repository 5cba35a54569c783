#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arcmodel/arcspace.hpp"
#include "arcmodel/multipoly.hpp"
#include "arcmodel/series.hpp"

namespace arcmodel {

/// Equations over k in the coefficients of (q, xbar, ybar), with the base point.
/// Variables are q0..q{d-1}, then xb{i}_{k} for k < (r+1)d, then yb{j}_{k} for k < rd.
struct ModelOutput {
    Field field = Field::rationals();
    std::size_t n = 0;
    std::size_t l = 0;
    std::size_t d = 0;
    std::size_t r = 1;
    /// d = 0: no variables, no equations; the deformation space is a product of disks.
    bool trivial = false;
    VariableSet::Ptr vars;
    std::vector<MultiPoly> equations;
    std::vector<Scalar> base_point;

    std::size_t xbar_length() const { return (r + 1) * d; }
    std::size_t ybar_length() const { return r * d; }
    std::size_t q_var(std::size_t i) const { return i; }
    std::size_t xbar_var(std::size_t i, std::size_t k) const { return d + i * xbar_length() + k; }
    std::size_t ybar_var(std::size_t j, std::size_t k) const { return d + n * xbar_length() + j * ybar_length() + k; }

    /// Formula counts: d + l*r*d + l*(r+1)*d equations, d + n(r+1)d + l*r*d variables.
    std::size_t expected_equations() const { return d + l * r * d + l * (r + 1) * d; }
    std::size_t expected_variables() const { return d + n * (r + 1) * d + l * r * d; }
};

/// An A-valued point of the model together with truncated disk coordinates.
/// xi holds m-valued offsets from the base arc's disk part x0 div t^((r+1)d).
struct ModelPoint {
    TestRing::Ptr ring;
    Poly<RingElem> q;
    std::vector<Poly<RingElem>> xbar;
    std::vector<Poly<RingElem>> ybar;
    std::vector<Series<RingElem>> xi;

    /// Coefficients in model-variable order (padded with zeros).
    std::vector<RingElem> coordinates(const ModelOutput& mo) const;
    ModelPoint truncate_xi(std::size_t precision) const;
    std::string str() const;
    friend bool operator==(const ModelPoint& a, const ModelPoint& b);
};

ModelOutput build_model(const VarietyPresentation& pres, const BaseArc& arc, std::size_t r);

struct ModelCheck {
    bool ok = true;
    std::string failure;
    /// Index of the first equation that does not vanish, when that is the failure.
    std::optional<std::size_t> equation;
};

/// Substitutes the point into every equation and checks the residue conditions.
ModelCheck check_model_point(const ModelOutput& mo, const ModelPoint& pt);

/// The same conditions computed directly in A[t] without expanding the
/// generic equations: det B mod q, p mod q^r, adj(B) p mod q^(r+1).
ModelCheck check_conditions(const VarietyPresentation& pres, const BaseArc& arc, const ModelPoint& pt, std::size_t r);

struct SplitX {
    std::vector<Poly<RingElem>> xbar;
    std::vector<Series<RingElem>> xi;
};

/// x = q^(r+1) xi + xbar with deg xbar < (r+1)d. Each x is treated as the
/// polynomial of its known coefficients, and xi has precision N - (r+1)d.
SplitX split_x(const std::vector<Series<RingElem>>& x, const Poly<RingElem>& q, std::size_t r);

/// The disk part x0 div t^D of the base arc, embedded over `ring` at the given precision.
std::vector<Series<RingElem>> base_disk_part(const BaseArc& arc, std::size_t D, const TestRing::Ptr& ring,
                                             std::size_t precision);

/// The base point over `ring` with zero disk offsets at the given precision.
ModelPoint base_model_point(const ModelOutput& mo, const TestRing::Ptr& ring, std::size_t xi_precision);

/// Builds a point from model coordinates (in variable order) and disk offsets.
ModelPoint model_point_from_coordinates(const ModelOutput& mo, const TestRing::Ptr& ring,
                                        const std::vector<RingElem>& coords, std::vector<Series<RingElem>> xi);

/// Versioned structured serialization ("arcmodel.model/1") and its inverse.
std::string model_to_json(const ModelOutput& mo);
ModelOutput model_from_json(std::string_view text);
/// The equations as an ideal in Macaulay2 syntax.
std::string model_to_ideal(const ModelOutput& mo);

} // namespace arcmodel
