#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "arcmodel/arcspace.hpp"
#include "arcmodel/model.hpp"

namespace arcmodel {

struct LiftLevel {
    std::uint32_t level = 0;
    std::vector<Series<RingElem>> ytilde;
    std::vector<Series<RingElem>> z;
    /// Smallest m-valuation among the coefficients of p(x, ytilde).
    std::uint32_t residual_valuation = 0;
};

struct LiftTrace {
    std::vector<LiftLevel> levels;
    std::vector<Series<RingElem>> y;

    /// One record per level, then the final y.
    std::string str() const;
};

struct LiftOptions {
    /// Mutation hook for tests: omit the correction at the top level.
    bool skip_last_level = false;
};

/// Solves p(x, y) = 0 with y = ybar mod q^r, level by level over A/m^j.
/// y has precision N - (a-1)d where N is the precision of x.
LiftTrace hensel_lift(const VarietyPresentation& pres, const BaseArc& arc, const Poly<RingElem>& q,
                      const std::vector<Series<RingElem>>& x, const std::vector<Poly<RingElem>>& ybar, std::size_t r,
                      const LiftOptions& options = {});

/// The unique y reducing to y0 with p(x, y) = 0, or ObstructedLift.
std::vector<Series<RingElem>> solve_for_y(const VarietyPresentation& pres, const BaseArc& arc,
                                          const std::vector<Series<RingElem>>& x);

/// Deformation to (q, xbar, ybar, xi).
ModelPoint forward_map(const VarietyPresentation& pres, const BaseArc& arc, const Deformation& def, std::size_t r);

/// Model point to deformation: x = q^(r+1) (xi0 + xi) + xbar, y by lifting.
Deformation inverse_map(const VarietyPresentation& pres, const BaseArc& arc, const ModelPoint& pt, std::size_t r,
                        const LiftOptions& options = {});

struct RoundtripConfig {
    TestRing::Ptr ring;
    std::size_t r = 1;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    PrecisionPlan plan;
    LiftOptions lift;
    /// Optional generated model; when present every forward image is also
    /// substituted into its equations.
    const ModelOutput* model = nullptr;
    /// Worker threads; 0 means one per hardware thread.
    std::size_t threads = 0;
    /// Keep per-trial data in the report.
    bool transcript = false;
};

struct TrialFailure {
    std::size_t trial = 0;
    std::string check;
    std::string message;
};

struct RoundtripReport {
    std::string ring;
    std::size_t d = 0;
    std::size_t r = 1;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    PrecisionPlan plan;
    std::size_t forward_passed = 0;
    std::size_t backward_passed = 0;
    std::size_t uniqueness_passed = 0;
    /// Trials whose forward image had deg q != d.
    std::size_t degree_mismatches = 0;
    std::vector<TrialFailure> failures;
    std::vector<std::string> transcript;

    bool ok() const { return failures.empty(); }
    std::string str() const;
};

/// (i) inverse(forward(def)) = def, (ii) forward(inverse(pt)) = pt, and
/// (iii) perturbing y by q^r * (nonzero m-valued polynomial) breaks p = 0,
/// all compared at the reporting precision.
RoundtripReport roundtrip_check(const VarietyPresentation& pres, const BaseArc& arc, const RoundtripConfig& config);

} // namespace arcmodel
