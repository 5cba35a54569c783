#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arcmodel/matrix.hpp"
#include "arcmodel/multipoly.hpp"
#include "arcmodel/rng.hpp"
#include "arcmodel/series.hpp"
#include "arcmodel/test_ring.hpp"

namespace arcmodel {

/// l equations p_1..p_l in x1..xn, y1..yl over k.
struct VarietyPresentation {
    Field field;
    std::size_t n = 0;
    std::size_t l = 0;
    VariableSet::Ptr vars;
    std::vector<MultiPoly> p;
    Matrix<MultiPoly> jacobian_y;

    static VarietyPresentation make(Field field, std::size_t n, std::size_t l, const std::vector<std::string>& equations);

    std::size_t x_index(std::size_t i) const { return i; }
    std::size_t y_index(std::size_t j) const { return n + j; }
};

/// The arc (x0(t), y0(t)) with coefficients in k, known modulo t^N.
struct BaseArc {
    std::vector<Series<Scalar>> x0;
    std::vector<Series<Scalar>> y0;
    std::size_t precision = 0;
};

struct ArcProblem {
    VarietyPresentation pres;
    BaseArc arc;
};

/// Parses the line-oriented input format (statements separated by newlines or ';').
ArcProblem parse_problem(std::string_view text);
std::string print_problem(const ArcProblem& problem);
ArcProblem load_problem(const std::string& path);
/// The same problem over another field. Rational data reduces modulo p; a
/// denominator divisible by p is an error.
ArcProblem change_field(const ArcProblem& problem, const Field& field);

struct ValidationReport {
    /// t-order of det(dp/dy) along the arc.
    std::size_t det_order = 0;
    Series<Scalar> det;
};

/// Checks p(x0, y0) = 0 and det(dp/dy)(x0, y0) != 0 modulo t^N.
ValidationReport validate(const VarietyPresentation& pres, const BaseArc& arc);
std::size_t compute_defect(const VarietyPresentation& pres, const BaseArc& arc);

/// An A-point of the arc space reducing to the base arc.
struct Deformation {
    TestRing::Ptr ring;
    std::vector<Series<RingElem>> x;
    std::vector<Series<RingElem>> y;

    Deformation truncate(std::size_t nx, std::size_t ny) const;
    std::string str() const;
    friend bool operator==(const Deformation& a, const Deformation& b);
};

Series<RingElem> embed_series(const Series<Scalar>& s, const TestRing::Ptr& ring, std::size_t precision);
Deformation embed_base_arc(const BaseArc& arc, const TestRing::Ptr& ring, std::size_t precision);

/// True when every coefficient reduces to the base arc modulo m.
bool reduces_to_base(const Deformation& def, const BaseArc& arc);

/// Reporting precision N_user and working precision N_work.
struct PrecisionPlan {
    std::size_t user = 0;
    std::size_t work = 0;
};

/// Extra working precision beyond the reporting precision.
std::size_t working_margin(std::size_t a, std::size_t d, std::size_t r);
std::size_t minimal_user_precision(std::size_t d, std::size_t r);

/// Builds the plan. `user` defaults to the largest value the arc allows;
/// `extra` raises only the working precision. The environment variable
/// ARCMODEL_WORK_PRECISION replaces the computed working precision.
PrecisionPlan plan_precision(const BaseArc& arc, std::size_t a, std::size_t d, std::size_t r,
                             std::optional<std::size_t> user = std::nullopt, std::size_t extra = 0);

struct DeformationOptions {
    /// Initial probability, in 1/1024 units, that a perturbation coordinate is nonzero.
    std::uint32_t density = 512;
    std::size_t max_attempts = 64;
};

/// Random m-valued perturbation of x below degree N_user, then the unique y
/// solving p(x, y) = 0. Retries with sparser perturbations when the lift is obstructed.
Deformation random_deformation(const VarietyPresentation& pres, const BaseArc& arc, const TestRing::Ptr& ring,
                               const PrecisionPlan& plan, std::uint64_t seed, const DeformationOptions& options = {});

/// The deformation with the given x (which must reduce to x0), or ObstructedLift.
Deformation deform_from_x(const VarietyPresentation& pres, const BaseArc& arc, std::vector<Series<RingElem>> x);

/// A random nonzero scalar from a small fixed set ({±1, ±2, ±3, ±1/2} over Q).
Scalar random_nonzero_scalar(const Field& field, Rng& rng);

} // namespace arcmodel
