#include "arcmodel/equivalence.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <optional>
#include <sstream>
#include <thread>

#include "arcmodel/errors.hpp"
#include "arcmodel/poly_system.hpp"
#include "arcmodel/weierstrass.hpp"

namespace arcmodel {

namespace {

using SeriesVec = std::vector<Series<RingElem>>;

std::size_t min_precision(const SeriesVec& v)
{
    std::size_t n = v.empty() ? 0 : v.front().precision();
    for (const auto& s : v) n = std::min(n, s.precision());
    return n;
}

SeriesVec map_series(const SeriesVec& v, const std::function<RingElem(const RingElem&)>& f)
{
    SeriesVec out;
    out.reserve(v.size());
    for (const auto& s : v) out.push_back(s.map(f));
    return out;
}

SeriesVec concat(const SeriesVec& a, const SeriesVec& b)
{
    SeriesVec out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::uint32_t min_valuation(const SeriesVec& v, std::uint32_t none)
{
    std::uint32_t best = none;
    for (const auto& s : v)
        for (const auto& c : s.coeffs()) best = std::min(best, c.m_valuation());
    return best;
}

bool residues_match(const Series<RingElem>& s, const Series<Scalar>& base, std::size_t n)
{
    for (std::size_t k = 0; k < n; ++k)
        if (s[k].residue() != base[k]) return false;
    return true;
}

void check_x_residue(const SeriesVec& x, const BaseArc& arc)
{
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].precision() > arc.precision)
            fail(ErrorKind::precision_exhausted, "x" + std::to_string(i + 1) + " is given modulo t^" +
                                                     std::to_string(x[i].precision()) + " but the arc is only known modulo t^" +
                                                     std::to_string(arc.precision));
        if (!residues_match(x[i], arc.x0[i], x[i].precision()))
            fail(ErrorKind::inconsistent_input, "x" + std::to_string(i + 1) + " does not reduce to the base arc modulo m");
    }
}

std::string vec_str(const char* name, const SeriesVec& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += std::string(name) + std::to_string(i + 1) + " = " + v[i].str() + "\n";
    return out;
}

} // namespace

std::string LiftTrace::str() const
{
    std::string out;
    for (const auto& lv : levels) {
        out += "level " + std::to_string(lv.level) + " residual_valuation " + std::to_string(lv.residual_valuation) + "\n";
        out += vec_str("  ytilde", lv.ytilde);
        out += vec_str("  z", lv.z);
    }
    out += vec_str("y", y);
    return out;
}

LiftTrace hensel_lift(const VarietyPresentation& pres, const BaseArc& arc, const Poly<RingElem>& q, const SeriesVec& x,
                      const std::vector<Poly<RingElem>>& ybar, std::size_t r, const LiftOptions& options)
{
    require(x.size() == pres.n && ybar.size() == pres.l, ErrorKind::structural, "lift input has the wrong shape");
    require(r >= 1, ErrorKind::structural, "r must be at least 1");
    const TestRing::Ptr ring = q.zero().ring();
    const std::uint32_t a = ring->nilpotency();
    if (!q.is_monic()) fail(ErrorKind::inconsistent_input, "q = " + q.str() + " is not monic");
    const std::size_t d = static_cast<std::size_t>(q.degree());
    for (std::size_t i = 0; i < d; ++i)
        if (!q[i].residue().is_zero())
            fail(ErrorKind::inconsistent_input, "q = " + q.str() + " is not congruent to t^" + std::to_string(d) + " mod m");
    check_x_residue(x, arc);
    const std::size_t n = x.empty() ? arc.precision : min_precision(x);
    for (std::size_t j = 0; j < ybar.size(); ++j) {
        if (ybar[j].degree() >= static_cast<int>(r * d))
            fail(ErrorKind::inconsistent_input, "ybar" + std::to_string(j + 1) + " has degree >= r*d");
        for (std::size_t k = 0; k < r * d; ++k)
            if (ybar[j][k].residue() != arc.y0[j][k])
                fail(ErrorKind::inconsistent_input, "ybar" + std::to_string(j + 1) + " does not reduce to y0 mod t^" +
                                                        std::to_string(r * d));
    }

    const Poly<RingElem> qr = q.pow(static_cast<unsigned>(r));
    {
        SeriesVec yb;
        for (const auto& p : ybar) yb.push_back(Series<RingElem>::from_poly(p, n));
        const SeriesVec point = concat(x, yb);
        auto det = det_and_adjugate(eval_matrix(pres.jacobian_y, point)).det;
        if (!poly_divmod_monic(det, q).remainder.is_zero())
            fail(ErrorKind::inconsistent_input, "condition (3) violated: det(dp/dy)(x, ybar) is not divisible by q");
        auto values = eval_poly_system<Series<RingElem>>(pres.p, point);
        for (std::size_t j = 0; j < values.size(); ++j)
            if (!poly_divmod_monic(values[j], qr).remainder.is_zero())
                fail(ErrorKind::inconsistent_input, "condition (5) violated: p" + std::to_string(j + 1) +
                                                        "(x, ybar) is not divisible by q^r");
    }

    LiftTrace trace;
    const TestRing::Ptr k = quotient_ring(ring, 1).ring;
    SeriesVec y;
    for (const auto& s : arc.y0) y.push_back(embed_series(s, k, n));
    if (a == 1) {
        trace.y = map_series(y, [&](const RingElem& c) { return lift_coords(c, ring); });
        return trace;
    }

    for (std::uint32_t j = 2; j <= a; ++j) {
        const Quotient quo = quotient_ring(ring, j);
        const TestRing::Ptr& aj = quo.ring;
        const Poly<RingElem> qj = q.map(quo.project);
        const Poly<RingElem> qjr = qj.pow(static_cast<unsigned>(r));
        const Poly<RingElem> qjr1 = qjr * qj;
        const SeriesVec xj = map_series(x, quo.project);

        SeriesVec yt = map_series(y, [&](const RingElem& c) { return lift_coords(c, aj); });
        for (std::size_t i = 0; i < yt.size(); ++i) {
            const Poly<RingElem> ybj = ybar[i].map(quo.project);
            auto rem = poly_divmod_monic(yt[i] - ybj, qjr).remainder;
            yt[i] = yt[i] - Series<RingElem>::from_poly(rem, yt[i].precision());
        }

        const SeriesVec point = concat(xj, yt);
        const auto jac = eval_matrix(pres.jacobian_y, point);
        auto [det, adj] = det_and_adjugate(jac);
        auto [uprime, rem3] = poly_divmod_monic(det, qj);
        if (!rem3.is_zero())
            fail(ErrorKind::inconsistent_input, "condition (3) violated at level " + std::to_string(j) +
                                                    ": det(dp/dy)(x, y~) is not divisible by q");
        const SeriesVec residual = eval_poly_system<Series<RingElem>>(pres.p, point);
        const std::uint32_t val = min_valuation(residual, j);
        if (val < j - 1)
            fail(ErrorKind::inconsistent_input, "condition (5) violated at level " + std::to_string(j) +
                                                    ": p(x, y~) does not lie in m^" + std::to_string(j - 1));
        const SeriesVec w = adj.apply(residual);
        for (std::size_t i = 0; i < w.size(); ++i)
            if (!poly_divmod_monic(w[i], qjr1).remainder.is_zero())
                fail(ErrorKind::obstructed_lift, "condition (4) violated: adjugate product not divisible by q^{r+1} (level " +
                                                     std::to_string(j) + ", component " + std::to_string(i + 1) + ")");
        const Series<RingElem> uinv = uprime.invert();
        SeriesVec z;
        for (const auto& wi : w) z.push_back(poly_divmod_monic(wi, qj).quotient * uinv);

        const std::size_t zn = min_precision(z);
        const SeriesVec cz = jac.apply(z);
        for (std::size_t i = 0; i < cz.size(); ++i)
            if (!cz[i].agrees_with(residual[i], std::min(zn, cz[i].precision())))
                fail(ErrorKind::inconsistent_input, "correction does not solve C z = p(x, y~) at level " + std::to_string(j));
        if (min_valuation(z, j) < j - 1)
            fail(ErrorKind::inconsistent_input, "correction at level " + std::to_string(j) + " is not in m^" +
                                                    std::to_string(j - 1));
        for (const auto& zi : z)
            if (!poly_divmod_monic(zi, qjr).remainder.is_zero())
                fail(ErrorKind::inconsistent_input, "correction at level " + std::to_string(j) + " is not divisible by q^r");

        if (options.skip_last_level && j == a) {
            for (auto& zi : z) zi = zi.zero_like();
        }
        SeriesVec next;
        for (std::size_t i = 0; i < yt.size(); ++i) next.push_back(yt[i] - z[i]);
        trace.levels.push_back(LiftLevel{j, yt, z, val});
        y = std::move(next);
    }
    trace.y = std::move(y);
    return trace;
}

SeriesVec solve_for_y(const VarietyPresentation& pres, const BaseArc& arc, const SeriesVec& x)
{
    require(x.size() == pres.n && !x.empty(), ErrorKind::structural, "solve_for_y needs all x-components");
    const TestRing::Ptr ring = x.front().zero().ring();
    const std::uint32_t a = ring->nilpotency();
    check_x_residue(x, arc);
    const std::size_t n = min_precision(x);

    SeriesVec y;
    const TestRing::Ptr k = quotient_ring(ring, 1).ring;
    for (const auto& s : arc.y0) y.push_back(embed_series(s, k, n));
    for (std::uint32_t j = 2; j <= a; ++j) {
        const Quotient quo = quotient_ring(ring, j);
        const TestRing::Ptr& aj = quo.ring;
        const SeriesVec xj = map_series(x, quo.project);
        const SeriesVec yt = map_series(y, [&](const RingElem& c) { return lift_coords(c, aj); });
        const SeriesVec point = concat(xj, yt);
        auto [det, adj] = det_and_adjugate(eval_matrix(pres.jacobian_y, point));
        const Poly<RingElem> qj = weierstrass_prepare(det).q;
        auto [uprime, rem] = poly_divmod_monic(det, qj);
        if (!rem.is_zero()) fail(ErrorKind::precision_exhausted, "det(dp/dy) is not divisible by its distinguished factor");
        const SeriesVec residual = eval_poly_system<Series<RingElem>>(pres.p, point);
        if (min_valuation(residual, j) < j - 1)
            fail(ErrorKind::inconsistent_input, "p(x, y~) does not lie in m^" + std::to_string(j - 1));
        const SeriesVec w = adj.apply(residual);
        const Series<RingElem> uinv = uprime.invert();
        SeriesVec next;
        for (std::size_t i = 0; i < w.size(); ++i) {
            auto [h, wr] = poly_divmod_monic(w[i], qj);
            if (!wr.is_zero())
                fail(ErrorKind::obstructed_lift, "no y solves p(x, y) = 0 over A/m^" + std::to_string(j) +
                                                     ": adj(C) p(x, y~) is not divisible by q");
            next.push_back(yt[i] - h * uinv);
        }
        y = std::move(next);
    }
    return map_series(y, [&](const RingElem& c) { return lift_coords(c, ring); });
}

ModelPoint forward_map(const VarietyPresentation& pres, const BaseArc& arc, const Deformation& def, std::size_t r)
{
    require(r >= 1, ErrorKind::structural, "r must be at least 1");
    require(def.x.size() == pres.n && def.y.size() == pres.l, ErrorKind::structural, "deformation has the wrong shape");
    const SeriesVec point = concat(def.x, def.y);
    const auto det = det_and_adjugate(eval_matrix(pres.jacobian_y, point)).det;
    const Poly<RingElem> q = weierstrass_prepare(det).q;
    const std::size_t d = static_cast<std::size_t>(q.degree());
    const Poly<RingElem> qr = q.pow(static_cast<unsigned>(r));

    ModelPoint pt{def.ring, q, {}, {}, {}};
    for (const auto& yj : def.y) pt.ybar.push_back(poly_divmod_monic(yj, qr).remainder);
    SplitX split = split_x(def.x, q, r);
    pt.xbar = std::move(split.xbar);
    const std::size_t xi_precision = min_precision(split.xi);
    const SeriesVec xi0 = base_disk_part(arc, (r + 1) * d, def.ring, xi_precision);
    for (std::size_t i = 0; i < split.xi.size(); ++i) pt.xi.push_back(split.xi[i] - xi0[i]);
    return pt;
}

Deformation inverse_map(const VarietyPresentation& pres, const BaseArc& arc, const ModelPoint& pt, std::size_t r,
                        const LiftOptions& options)
{
    require(pt.xi.size() == pres.n && pt.xbar.size() == pres.n, ErrorKind::structural, "model point has the wrong shape");
    const std::size_t d = static_cast<std::size_t>(pt.q.degree());
    const std::size_t D = (r + 1) * d;
    const Poly<RingElem> big_q = pt.q.pow(static_cast<unsigned>(r + 1));
    const std::size_t xi_precision = min_precision(pt.xi);
    const SeriesVec xi0 = base_disk_part(arc, D, pt.ring, xi_precision);
    SeriesVec x;
    for (std::size_t i = 0; i < pres.n; ++i) {
        Poly<RingElem> xi = (xi0[i] + pt.xi[i].truncate(xi_precision)).to_poly();
        x.push_back(Series<RingElem>::from_poly(big_q * xi + pt.xbar[i], xi_precision + D));
    }
    LiftTrace trace = hensel_lift(pres, arc, pt.q, x, pt.ybar, r, options);
    return Deformation{pt.ring, std::move(x), std::move(trace.y)};
}

// ---------------------------------------------------------------------------
// Roundtrip verification

namespace {

struct TrialOutcome {
    bool forward_ok = false;
    bool backward_ok = false;
    bool unique_ok = false;
    bool degree_mismatch = false;
    std::vector<TrialFailure> failures;
    std::string transcript;
};

Series<RingElem> random_m_series(const TestRing::Ptr& ring, std::size_t precision, Rng& rng)
{
    std::vector<RingElem> c;
    for (std::size_t k = 0; k < precision; ++k) {
        std::vector<Scalar> coords(ring->dim(), ring->field().zero());
        for (std::size_t b = 1; b < ring->dim(); ++b)
            if (rng.chance(1, 2)) coords[b] = random_nonzero_scalar(ring->field(), rng);
        c.emplace_back(ring, std::move(coords));
    }
    return Series<RingElem>(std::move(c), ring->zero());
}

bool same_point(const ModelPoint& a, const ModelPoint& b, std::size_t xi_precision)
{
    return a.truncate_xi(xi_precision) == b.truncate_xi(xi_precision);
}

TrialOutcome run_trial(const VarietyPresentation& pres, const BaseArc& arc, const RoundtripConfig& cfg, std::size_t d,
                       std::size_t trial)
{
    TrialOutcome out;
    const auto& ring = cfg.ring;
    const std::size_t r = cfg.r;
    const std::size_t D = (r + 1) * d;
    const std::size_t a = ring->nilpotency();
    const std::size_t nu = cfg.plan.user;
    const std::size_t ny = nu - std::min(nu, (a - 1) * d);
    const std::size_t xi_report = nu - D;
    // One stream per check, so extra working precision (more xi draws) cannot
    // shift the randomness seen by the others.
    Rng rng(cfg.seed, 3 * trial);
    Rng rng_points(cfg.seed, 3 * trial + 1);
    Rng rng_unique(cfg.seed, 3 * trial + 2);
    auto record = [&](const std::string& check, const std::string& message) {
        out.failures.push_back(TrialFailure{trial, check, message});
    };
    auto verify_point = [&](const ModelPoint& pt) -> std::string {
        ModelCheck c = check_conditions(pres, arc, pt, r);
        if (c.ok && cfg.model != nullptr) c = check_model_point(*cfg.model, pt);
        return c.ok ? std::string() : c.failure;
    };

    // (i) deformation -> model point -> deformation
    std::optional<Deformation> def;
    try {
        def = random_deformation(pres, arc, ring, cfg.plan, rng.next());
        ModelPoint pt = forward_map(pres, arc, *def, r);
        if (static_cast<std::size_t>(pt.q.degree()) != d) {
            out.degree_mismatch = true;
            record("d-invariance", "deg q = " + std::to_string(pt.q.degree()) + " but d = " + std::to_string(d));
        }
        std::string bad = verify_point(pt);
        if (!bad.empty()) record("forward image is a model point", bad);
        Deformation back = inverse_map(pres, arc, pt, r, cfg.lift);
        Deformation lhs = back.truncate(nu, ny);
        Deformation rhs = def->truncate(nu, ny);
        if (lhs == rhs && bad.empty() && !out.degree_mismatch) {
            out.forward_ok = true;
        } else if (!(lhs == rhs)) {
            record("inverse(forward(def)) = def", "original:\n" + rhs.str() + "recovered:\n" + lhs.str());
        }
        if (cfg.transcript) out.transcript += "deformation\n" + rhs.str() + "model point\n" + pt.truncate_xi(xi_report).str();
    } catch (const Error& e) {
        record("inverse(forward(def)) = def", e.what());
    }

    // (ii) model point -> deformation -> model point, with fresh disk coordinates
    try {
        Deformation seed_def = random_deformation(pres, arc, ring, cfg.plan, rng_points.next());
        ModelPoint pt = forward_map(pres, arc, seed_def, r);
        const std::size_t xi_precision = cfg.plan.work - D;
        // Coefficients below the reporting precision come first from their own
        // stream; each tail, whose length depends on the working precision, from
        // a stream of its own so its leading coefficients do not move.
        const std::uint64_t tail_seed = derive_seed(derive_seed(cfg.seed, 0x7a11), trial);
        for (std::size_t i = 0; i < pt.xi.size(); ++i) {
            auto& xi = pt.xi[i];
            Rng tail(tail_seed, i);
            auto low = random_m_series(ring, xi_report, rng_points).coeffs();
            auto high = random_m_series(ring, xi_precision - xi_report, tail).coeffs();
            low.insert(low.end(), high.begin(), high.end());
            xi = Series<RingElem>(std::move(low), ring->zero());
        }
        Deformation mid = inverse_map(pres, arc, pt, r, cfg.lift);
        ModelPoint again = forward_map(pres, arc, mid, r);
        if (same_point(again, pt, xi_report)) {
            out.backward_ok = true;
        } else {
            record("forward(inverse(pt)) = pt", "original:\n" + pt.truncate_xi(xi_report).str() + "recovered:\n" +
                                                    again.truncate_xi(xi_report).str());
        }
        if (cfg.transcript) out.transcript += "sampled point\n" + pt.truncate_xi(xi_report).str() + "lifted\n" +
                                              mid.truncate(nu, ny).str();
    } catch (const Error& e) {
        record("forward(inverse(pt)) = pt", e.what());
    }

    // (iii) uniqueness of the lift
    if (def && ring->dim() > 1) {
        try {
            ModelPoint pt = forward_map(pres, arc, *def, r);
            const Poly<RingElem> qr = pt.q.pow(static_cast<unsigned>(r));
            const std::size_t span = nu - D;
            std::vector<RingElem> h(span, ring->zero());
            for (std::size_t k = 0; k < span; ++k) h[k] = random_m_series(ring, 1, rng_unique)[0];
            std::size_t spot = rng_unique.below(span);
            h[spot] += ring->basis_element(1 + rng_unique.below(ring->dim() - 1));
            Poly<RingElem> hp(h, ring->zero());
            if (hp.is_zero()) hp = Poly<RingElem>::constant(ring->basis_element(1));
            SeriesVec y = def->y;
            const std::size_t comp = rng_unique.below(y.size());
            y[comp] = y[comp] + Series<RingElem>::from_poly(qr * hp, y[comp].precision());
            auto values = eval_poly_system<Series<RingElem>>(pres.p, concat(def->x, y));
            bool broken = false;
            for (const auto& v : values) broken = broken || !v.truncate(std::min(nu, v.precision())).is_zero();
            if (broken)
                out.unique_ok = true;
            else
                record("uniqueness", "perturbing y" + std::to_string(comp + 1) + " by q^r*(" + hp.str() +
                                         ") still solves p = 0 modulo t^" + std::to_string(nu));
        } catch (const Error& e) {
            record("uniqueness", e.what());
        }
    } else {
        out.unique_ok = def.has_value();
    }
    return out;
}

} // namespace

std::string RoundtripReport::str() const
{
    std::ostringstream os;
    os << "roundtrip ring=" << ring << " d=" << d << " r=" << r << " seed=" << seed << " trials=" << trials
       << " precision=" << plan.user << "\n";
    os << "inverse(forward(def)) = def: " << forward_passed << "/" << trials << "\n";
    os << "forward(inverse(pt)) = pt: " << backward_passed << "/" << trials << "\n";
    os << "lift uniqueness: " << uniqueness_passed << "/" << trials << "\n";
    os << "deg q != d: " << degree_mismatches << "\n";
    for (const auto& f : failures)
        os << "counterexample trial=" << f.trial << " seed=" << seed << " ring=" << ring << " check=" << f.check << "\n"
           << f.message << "\n";
    os << (failures.empty() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

RoundtripReport roundtrip_check(const VarietyPresentation& pres, const BaseArc& arc, const RoundtripConfig& config)
{
    require(config.ring != nullptr, ErrorKind::structural, "roundtrip needs a test ring");
    require(config.ring->field() == pres.field, ErrorKind::structural, "test ring and presentation use different fields");
    const std::size_t d = compute_defect(pres, arc);
    RoundtripReport report;
    report.ring = config.ring->descriptor();
    report.d = d;
    report.r = config.r;
    report.trials = config.trials;
    report.seed = config.seed;
    report.plan = config.plan;
    if (config.trials == 0) return report;
    require(config.plan.user >= minimal_user_precision(d, config.r), ErrorKind::precision_exhausted,
            "reporting precision too small for the roundtrip");

    std::vector<TrialOutcome> outcomes(config.trials);
    std::size_t threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
    threads = std::min(threads, config.trials);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t t = next++; t < config.trials; t = next++) outcomes[t] = run_trial(pres, arc, config, d, t);
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (std::size_t t = 0; t < outcomes.size(); ++t) {
        auto& o = outcomes[t];
        report.forward_passed += o.forward_ok;
        report.backward_passed += o.backward_ok;
        report.uniqueness_passed += o.unique_ok;
        report.degree_mismatches += o.degree_mismatch;
        for (auto& f : o.failures) report.failures.push_back(std::move(f));
        if (config.transcript) report.transcript.push_back("trial " + std::to_string(t) + "\n" + o.transcript);
    }
    return report;
}

} // namespace arcmodel
