#include "arcmodel/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "arcmodel/equivalence.hpp"
#include "arcmodel/errors.hpp"
#include "arcmodel/poly_system.hpp"
#include "arcmodel/weierstrass.hpp"

namespace arcmodel {

namespace {

bool is_zero_series(const Series<Scalar>& s) { return s.is_zero(); }

std::uint64_t checked_power(std::uint64_t base, std::size_t exponent, const std::string& what)
{
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (base != 0 && size > max_search_space / base)
            fail(ErrorKind::refused, what + ": search space " + std::to_string(base) + "^" + std::to_string(exponent) +
                                         " exceeds 2^24");
        size *= base;
    }
    return size;
}

std::vector<RingElem> maximal_ideal(const TestRing::Ptr& ring)
{
    require(ring->field().is_finite(), ErrorKind::not_enumerable,
            "enumeration needs a finite residue field, got " + ring->descriptor());
    return enumerate_maximal_ideal(ring);
}

// Odometer over `digits` positions with `base` values each. Returns false after the last state.
bool advance(std::vector<std::size_t>& counter, std::size_t base)
{
    for (auto& c : counter) {
        if (++c < base) return true;
        c = 0;
    }
    return false;
}

RingElem eval_at(const Poly<RingElem>& p, const RingElem& point)
{
    RingElem acc = point.zero_like();
    for (std::size_t k = p.coeffs().size(); k-- > 0;) acc = acc * point + p[k];
    return acc;
}

std::vector<Series<RingElem>> extend_by_base(const std::vector<Series<RingElem>>& x, const std::vector<Series<Scalar>>& base,
                                             std::size_t M)
{
    std::vector<Series<RingElem>> out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto& ring = x[i].zero().ring();
        std::vector<RingElem> c = x[i].coeffs();
        for (std::size_t k = c.size(); k < M; ++k) c.push_back(ring->scalar(base[i][k]));
        out.emplace_back(std::move(c), ring->zero());
    }
    return out;
}

std::size_t extension_precision(const ArcProblem& problem, const TestRing::Ptr& ring, std::size_t N, std::size_t r,
                                std::size_t extra)
{
    const std::size_t d = compute_defect(problem.pres, problem.arc);
    const std::size_t M = N + working_margin(ring->nilpotency(), d, r) + extra;
    if (M > problem.arc.precision)
        fail(ErrorKind::precision_exhausted, "matching truncated data at N = " + std::to_string(N) + " needs the arc modulo t^" +
                                                 std::to_string(M) + " (have " + std::to_string(problem.arc.precision) + ")");
    return M;
}

template <class T>
std::vector<T> sorted_unique(std::vector<T> items)
{
    std::map<std::string, T> by_text;
    for (auto& item : items) {
        std::string key = item.str();
        by_text.emplace(std::move(key), std::move(item));
    }
    std::vector<T> out;
    for (auto& [key, item] : by_text) out.push_back(std::move(item));
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Example fixture

ArcProblem ExampleFixture::problem(const Field& field, std::size_t precision) const
{
    std::ostringstream os;
    os << "field: " << field.str() << "\nnx: " << n + 1 << "\nny: 1\n";
    os << "p1: y1*x" << n + 1 << " + (" << f << ")\n";
    for (std::size_t i = 1; i <= n; ++i) os << "arc.x" << i << ": []\n";
    os << "arc.x" << n + 1 << ": [0, 1]\narc.y1: []\nprecision: " << precision << "\n";
    return parse_problem(os.str());
}

std::optional<ExampleFixture> ExampleFixture::detect(const ArcProblem& problem)
{
    const auto& pres = problem.pres;
    const auto& arc = problem.arc;
    if (pres.l != 1 || pres.n < 1 || arc.precision < 2) return std::nullopt;
    const std::size_t last = pres.n - 1;
    const MultiPoly lead = MultiPoly::variable(pres.vars, pres.y_index(0)) * MultiPoly::variable(pres.vars, pres.x_index(last));
    const MultiPoly f = pres.p[0] - lead;
    if (f.degree_in(pres.y_index(0)) != 0 || f.degree_in(pres.x_index(last)) != 0) return std::nullopt;
    for (std::size_t i = 0; i < last; ++i)
        if (!is_zero_series(arc.x0[i])) return std::nullopt;
    if (!is_zero_series(arc.y0[0])) return std::nullopt;
    const auto& xn = arc.x0[last];
    for (std::size_t k = 0; k < xn.precision(); ++k)
        if (xn[k] != (k == 1 ? pres.field.one() : pres.field.zero())) return std::nullopt;
    return ExampleFixture{last, f.str()};
}

std::size_t truncated_y_precision(std::size_t N, std::size_t a, std::size_t d)
{
    const std::size_t loss = (a - 1) * d;
    return N > loss ? N - loss : 0;
}

Deformation example_deformation(const ArcProblem& problem, const ExampleParameters& params, std::size_t N)
{
    const auto fixture = ExampleFixture::detect(problem);
    require(fixture.has_value(), ErrorKind::structural, "the closed form applies only to y1*x_{n+1} + f(x) fixtures");
    const auto& pres = problem.pres;
    const TestRing::Ptr ring = params.alpha.ring();
    const std::size_t a = ring->nilpotency();
    require(params.x.size() == fixture->n, ErrorKind::structural, "closed form needs one polynomial per x1..xn");
    require(params.alpha.residue().is_zero(), ErrorKind::structural, "alpha must lie in m");
    require(params.u[0].residue().is_one(), ErrorKind::structural, "u must reduce to 1");
    for (std::size_t k = 1; k < params.u.coeffs().size(); ++k)
        require(params.u[k].residue().is_zero(), ErrorKind::structural, "u must reduce to 1");
    for (const auto& x : params.x)
        for (const auto& c : x.coeffs()) require(c.residue().is_zero(), ErrorKind::structural, "x1..xn must be m-valued");

    const Poly<RingElem> root = Poly<RingElem>(std::vector<RingElem>{-params.alpha, ring->one()}, ring->zero());
    std::vector<Poly<RingElem>> xs = params.x;
    xs.push_back(root * params.u);

    // The solvability criterion: f(x(alpha)) = 0.
    std::vector<RingElem> at_alpha;
    for (std::size_t i = 0; i < fixture->n; ++i) at_alpha.push_back(eval_at(xs[i], params.alpha));
    at_alpha.push_back(ring->zero());
    at_alpha.push_back(ring->zero());
    const MultiPoly f = pres.p[0] - MultiPoly::variable(pres.vars, pres.y_index(0)) *
                                        MultiPoly::variable(pres.vars, pres.x_index(fixture->n));
    const RingElem criterion = f.evaluate<RingElem>(std::span<const RingElem>(at_alpha), ring->one());
    if (!criterion.is_zero())
        fail(ErrorKind::obstructed_lift, "f(x(alpha)) = " + criterion.str() + " is not zero");

    std::vector<Poly<RingElem>> point = xs;
    point.push_back(Poly<RingElem>(ring->zero()));
    const Poly<RingElem> fx = f.evaluate<Poly<RingElem>>(std::span<const Poly<RingElem>>(point), Poly<RingElem>::constant(ring->one()));
    const std::size_t M = static_cast<std::size_t>(std::max(fx.degree(), xs.back().degree())) + 2 * a + N + 2;
    auto [h, rem] = weierstrass_divide(Series<RingElem>::from_poly(-fx, M), Series<RingElem>::from_poly(xs.back(), M));
    if (!rem.is_zero()) fail(ErrorKind::structural, "closed form: nonzero remainder " + rem.str() + " although f(x(alpha)) = 0");

    Deformation def{ring, {}, {}};
    for (const auto& x : xs) def.x.push_back(Series<RingElem>::from_poly(x, N));
    def.y.push_back(h.truncate(truncated_y_precision(N, a, 1)));
    return def;
}

std::vector<Deformation> example_deformations(const ArcProblem& problem, const TestRing::Ptr& ring, std::size_t N)
{
    const auto fixture = ExampleFixture::detect(problem);
    require(fixture.has_value(), ErrorKind::structural, "the closed form applies only to y1*x_{n+1} + f(x) fixtures");
    const auto m = maximal_ideal(ring);
    const std::size_t slots = 1 + N + fixture->n * N;
    checked_power(m.size(), slots, "closed-form enumeration");

    std::vector<Deformation> out;
    std::vector<std::size_t> counter(slots, 0);
    do {
        std::size_t pos = 0;
        ExampleParameters params{m[counter[pos++]], Poly<RingElem>(ring->zero()), {}};
        std::vector<RingElem> u;
        for (std::size_t k = 0; k < N; ++k) u.push_back(m[counter[pos++]] + (k == 0 ? ring->one() : ring->zero()));
        params.u = Poly<RingElem>(std::move(u), ring->zero());
        for (std::size_t i = 0; i < fixture->n; ++i) {
            std::vector<RingElem> c;
            for (std::size_t k = 0; k < N; ++k) c.push_back(m[counter[pos++]]);
            params.x.emplace_back(std::move(c), ring->zero());
        }
        try {
            out.push_back(example_deformation(problem, params, N));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::obstructed_lift) throw;
        }
    } while (advance(counter, m.size()));
    return sorted_unique(std::move(out));
}

// ---------------------------------------------------------------------------
// Brute force

std::vector<Deformation> enumerate_deformations(const VarietyPresentation& pres, const BaseArc& arc,
                                                const TestRing::Ptr& ring, std::size_t N)
{
    require(ring->field() == pres.field, ErrorKind::structural, "test ring and presentation use different fields");
    require(N <= arc.precision, ErrorKind::precision_exhausted,
            "enumeration at N = " + std::to_string(N) + " exceeds the arc precision " + std::to_string(arc.precision));
    const auto m = maximal_ideal(ring);
    const std::size_t slots = (pres.n + pres.l) * N;
    checked_power(m.size(), slots, "deformation enumeration");
    std::vector<Series<RingElem>> base;
    for (const auto& s : arc.x0) base.push_back(embed_series(s, ring, N));
    for (const auto& s : arc.y0) base.push_back(embed_series(s, ring, N));

    std::vector<std::vector<Series<RingElem>>> solutions;
    std::vector<std::size_t> counter(slots, 0);
    const std::span<const MultiPoly> polys(pres.p);
    do {
        std::vector<Series<RingElem>> point;
        std::size_t pos = 0;
        for (const auto& b : base) {
            std::vector<RingElem> c = b.coeffs();
            for (std::size_t k = 0; k < N; ++k) c[k] += m[counter[pos++]];
            point.emplace_back(std::move(c), ring->zero());
        }
        bool solves = true;
        for (const auto& v : eval_poly_system<Series<RingElem>>(polys, point))
            if (!v.is_zero()) {
                solves = false;
                break;
            }
        if (solves) solutions.push_back(std::move(point));
    } while (advance(counter, m.size()));
    if (solutions.empty()) return {};

    // Only y mod t^{N_y} is determined by x mod t^N.
    const std::size_t ny = truncated_y_precision(N, ring->nilpotency(), compute_defect(pres, arc));
    std::vector<Deformation> out;
    for (auto& point : solutions) {
        Deformation def{ring, {}, {}};
        for (std::size_t i = 0; i < pres.n; ++i) def.x.push_back(std::move(point[i]));
        for (std::size_t j = 0; j < pres.l; ++j) def.y.push_back(point[pres.n + j].truncate(ny));
        out.push_back(std::move(def));
    }
    return sorted_unique(std::move(out));
}

std::vector<ModelPoint> enumerate_model_points(const ModelOutput& mo, const TestRing::Ptr& ring, std::size_t xi_precision)
{
    require(ring->field() == mo.field, ErrorKind::structural, "test ring and model use different fields");
    const auto m = maximal_ideal(ring);
    const std::size_t vars = mo.trivial ? 0 : mo.expected_variables();
    checked_power(m.size(), vars + mo.n * xi_precision, "model point enumeration");

    std::vector<RingElem> base;
    for (const auto& s : mo.base_point) base.push_back(ring->scalar(s));
    const std::vector<Series<RingElem>> no_xi(mo.n, Series<RingElem>(ring->zero(), xi_precision));

    std::vector<ModelPoint> points;
    std::vector<std::size_t> counter(vars, 0);
    do {
        std::vector<RingElem> coords = base;
        for (std::size_t v = 0; v < vars; ++v) coords[v] += m[counter[v]];
        ModelPoint pt = model_point_from_coordinates(mo, ring, coords, no_xi);
        if (check_model_point(mo, pt).ok) points.push_back(std::move(pt));
    } while (advance(counter, m.size()));

    std::vector<ModelPoint> out;
    const std::size_t xi_slots = mo.n * xi_precision;
    for (const auto& pt : points) {
        std::vector<std::size_t> xc(xi_slots, 0);
        do {
            ModelPoint full = pt;
            std::size_t pos = 0;
            for (auto& xi : full.xi) {
                std::vector<RingElem> c;
                for (std::size_t k = 0; k < xi_precision; ++k) c.push_back(m[xc[pos++]]);
                xi = Series<RingElem>(std::move(c), ring->zero());
            }
            out.push_back(std::move(full));
        } while (advance(xc, m.size()));
    }
    return sorted_unique(std::move(out));
}

std::vector<std::string> canonical_forms(const std::vector<Deformation>& defs)
{
    std::vector<std::string> out;
    for (const auto& d : defs) out.push_back(d.str());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> canonical_forms(const std::vector<ModelPoint>& pts)
{
    std::vector<std::string> out;
    for (const auto& p : pts) out.push_back(p.str());
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Matching truncated data

ModelPoint truncated_forward(const ArcProblem& problem, const Deformation& def, std::size_t r, std::size_t N,
                             std::size_t extra)
{
    const std::size_t M = extension_precision(problem, def.ring, N, r, extra);
    const std::size_t d = compute_defect(problem.pres, problem.arc);
    const std::size_t ny = truncated_y_precision(N, def.ring->nilpotency(), d);
    std::vector<Series<RingElem>> x;
    for (const auto& s : def.x) x.push_back(s.truncate(N));
    x = extend_by_base(x, problem.arc.x0, M);
    auto y = solve_for_y(problem.pres, problem.arc, x);
    for (std::size_t j = 0; j < y.size(); ++j)
        if (y[j].truncate(ny) != def.y[j].truncate(ny))
            fail(ErrorKind::inconsistent_input, "y" + std::to_string(j + 1) + " is not the solution determined by x");
    ModelPoint pt = forward_map(problem.pres, problem.arc, Deformation{def.ring, std::move(x), std::move(y)}, r);
    return pt.truncate_xi(N - (r + 1) * d);
}

Deformation truncated_inverse(const ArcProblem& problem, const ModelPoint& pt, std::size_t r, std::size_t N,
                              std::size_t extra)
{
    const std::size_t M = extension_precision(problem, pt.ring, N, r, extra);
    const std::size_t d = static_cast<std::size_t>(pt.q.degree());
    const std::size_t D = (r + 1) * d;
    ModelPoint wide = pt;
    for (auto& xi : wide.xi) {
        std::vector<RingElem> c = xi.coeffs();
        c.resize(M - D, pt.ring->zero());
        xi = Series<RingElem>(std::move(c), pt.ring->zero());
    }
    Deformation def = inverse_map(problem.pres, problem.arc, wide, r);
    return def.truncate(N, truncated_y_precision(N, pt.ring->nilpotency(), d));
}

// ---------------------------------------------------------------------------
// Report

bool OracleReport::ok() const
{
    return std::all_of(checks.begin(), checks.end(), [](const OracleCheck& c) { return c.passed; });
}

std::string OracleReport::str() const
{
    std::ostringstream os;
    os << "oracle ring=" << ring << " N=" << N << " r=" << r << " d=" << d << " xi_precision=" << xi_precision << "\n";
    os << "deformations: " << deformations << "\n";
    if (closed_form) os << "closed form: " << *closed_form << "\n";
    os << "model points: " << model_points << "\n";
    for (const auto& c : checks) {
        os << (c.passed ? "PASS " : "FAIL ") << c.name << "\n";
        if (!c.detail.empty()) os << c.detail << "\n";
    }
    os << (ok() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

OracleReport run_oracle(const ArcProblem& problem, const TestRing::Ptr& ring, std::size_t N, const OracleOptions& options)
{
    const auto& pres = problem.pres;
    const auto& arc = problem.arc;
    const std::size_t r = options.r;
    require(r >= 1, ErrorKind::structural, "r must be at least 1");
    OracleReport rep;
    rep.ring = ring->descriptor();
    rep.N = N;
    rep.r = r;
    rep.d = compute_defect(pres, arc);
    const std::size_t D = (r + 1) * rep.d;
    require(N >= D, ErrorKind::precision_exhausted,
            "oracle precision N = " + std::to_string(N) + " is below (r+1)d = " + std::to_string(D));
    rep.xi_precision = N - D;

    const auto defs = enumerate_deformations(pres, arc, ring, N);
    rep.deformations = defs.size();
    const auto def_forms = canonical_forms(defs);
    const std::set<std::string> def_set(def_forms.begin(), def_forms.end());

    if (ExampleFixture::detect(problem)) {
        const auto closed = example_deformations(problem, ring, N);
        rep.closed_form = closed.size();
        const bool same = canonical_forms(closed) == def_forms;
        rep.checks.push_back({"closed form = brute force", same,
                              same ? "" : std::to_string(closed.size()) + " closed-form vs " + std::to_string(defs.size()) +
                                              " enumerated deformations"});
    }

    const ModelOutput mo = build_model(pres, arc, r);
    const auto pts = enumerate_model_points(mo, ring, rep.xi_precision);
    rep.model_points = pts.size();
    const auto pt_forms = canonical_forms(pts);

    std::vector<std::string> images;
    std::string forward_error;
    std::size_t roundtrip_failures = 0;
    for (const auto& def : defs) {
        try {
            ModelPoint img = truncated_forward(problem, def, r, N, options.extra);
            images.push_back(img.str());
            if (!(truncated_inverse(problem, img, r, N, options.extra) == def)) ++roundtrip_failures;
        } catch (const Error& e) {
            if (forward_error.empty()) forward_error = "deformation\n" + def.str() + e.what();
        }
    }
    std::sort(images.begin(), images.end());
    const bool injective = std::adjacent_find(images.begin(), images.end()) == images.end();
    rep.checks.push_back({"forward map defined on every deformation", forward_error.empty(), forward_error});
    rep.checks.push_back({"forward map injective", injective, ""});
    rep.checks.push_back({"forward image = enumerated model points", images == pt_forms,
                          images == pt_forms ? ""
                                             : std::to_string(images.size()) + " images vs " + std::to_string(pts.size()) +
                                                   " model points"});
    rep.checks.push_back({"inverse(forward(def)) = def", roundtrip_failures == 0 && forward_error.empty(),
                          roundtrip_failures == 0 ? "" : std::to_string(roundtrip_failures) + " deformations not recovered"});

    std::size_t strays = 0;
    std::string stray_detail;
    for (const auto& pt : pts) {
        try {
            if (!def_set.count(truncated_inverse(problem, pt, r, N, options.extra).str())) ++strays;
        } catch (const Error& e) {
            ++strays;
            if (stray_detail.empty()) stray_detail = "model point\n" + pt.str() + e.what();
        }
    }
    rep.checks.push_back({"inverse image lies in the deformation set", strays == 0,
                          strays == 0 ? "" : std::to_string(strays) + " model points map outside. " + stray_detail});

    if (options.dump) {
        rep.dump = "# deformations\n";
        for (const auto& s : def_forms) rep.dump += s + "--\n";
        rep.dump += "# model points\n";
        for (const auto& s : pt_forms) rep.dump += s + "--\n";
    }
    return rep;
}

} // namespace arcmodel
