#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "arcmodel/arcspace.hpp"
#include "arcmodel/model.hpp"

namespace arcmodel {

/// The hypersurface y1*x_{n+1} + f(x1..xn) = 0 with base arc x_{n+1} = t and
/// every other coordinate zero.
struct ExampleFixture {
    std::size_t n = 0;
    /// f as a polynomial in x1..xn, written in the presentation's variables.
    std::string f;

    /// The presentation and base arc over `field`, known modulo t^precision.
    ArcProblem problem(const Field& field, std::size_t precision) const;
    /// Recognizes a problem of this shape.
    static std::optional<ExampleFixture> detect(const ArcProblem& problem);
};

/// Parameters of the closed form: x_{n+1} = (t - alpha) u, x1..xn free.
struct ExampleParameters {
    RingElem alpha;
    Poly<RingElem> u;
    std::vector<Poly<RingElem>> x;
};

/// Precision at which y of a deformation is determined by x mod t^N.
std::size_t truncated_y_precision(std::size_t N, std::size_t a, std::size_t d);

/// The deformation with the given parameters, materialized as (x mod t^N,
/// y mod t^{N_y}). ObstructedLift when f(x(alpha)) != 0.
Deformation example_deformation(const ArcProblem& problem, const ExampleParameters& params, std::size_t N);

/// Every parameter choice over a finite ring (alpha in m, u in 1 + m[t] and
/// x in m[t] below degree N), deduplicated and in canonical order.
std::vector<Deformation> example_deformations(const ArcProblem& problem, const TestRing::Ptr& ring, std::size_t N);

/// Brute force over all m-valued perturbations of (x, y) below degree N with
/// p(x, y) = 0 mod t^N, projected to (x mod t^N, y mod t^{N_y}); canonical order.
std::vector<Deformation> enumerate_deformations(const VarietyPresentation& pres, const BaseArc& arc,
                                                const TestRing::Ptr& ring, std::size_t N);

/// Every m-valued perturbation of the base point passing check_model_point,
/// crossed with every xi in m[t] below degree xi_precision; canonical order.
std::vector<ModelPoint> enumerate_model_points(const ModelOutput& mo, const TestRing::Ptr& ring, std::size_t xi_precision);

/// Largest search space the enumerators accept.
inline constexpr std::uint64_t max_search_space = std::uint64_t{1} << 24U;

/// Canonical text of each element, sorted.
std::vector<std::string> canonical_forms(const std::vector<Deformation>& defs);
std::vector<std::string> canonical_forms(const std::vector<ModelPoint>& pts);

/// Forward image of a truncated deformation: x is extended by the base arc,
/// y solved at N + extra, and xi cut to N - (r+1)d.
ModelPoint truncated_forward(const ArcProblem& problem, const Deformation& def, std::size_t r, std::size_t N,
                             std::size_t extra);
/// Inverse image of a model point with xi known mod t^{N - (r+1)d}, cut to (N, N_y).
Deformation truncated_inverse(const ArcProblem& problem, const ModelPoint& pt, std::size_t r, std::size_t N,
                              std::size_t extra);

struct OracleCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct OracleReport {
    std::string ring;
    std::size_t N = 0;
    std::size_t r = 1;
    std::size_t d = 0;
    std::size_t xi_precision = 0;
    std::size_t deformations = 0;
    std::optional<std::size_t> closed_form;
    std::size_t model_points = 0;
    std::vector<OracleCheck> checks;
    /// Canonical text of both sets, filled when requested.
    std::string dump;

    bool ok() const;
    std::string str() const;
};

struct OracleOptions {
    std::size_t r = 1;
    /// Extra precision used when extending truncated data.
    std::size_t extra = 0;
    bool dump = false;
};

/// Enumerates both sides at precision N and compares them: closed form versus
/// brute force (for the Example), and forward/inverse maps at matched precision.
OracleReport run_oracle(const ArcProblem& problem, const TestRing::Ptr& ring, std::size_t N, const OracleOptions& options = {});

} // namespace arcmodel
