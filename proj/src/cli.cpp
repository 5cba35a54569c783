#include "arcmodel/cli.hpp"

#include <cctype>
#include <fstream>
#include <ostream>
#include <sstream>

#include "arcmodel/arcspace.hpp"
#include "arcmodel/equivalence.hpp"
#include "arcmodel/model.hpp"
#include "arcmodel/oracle.hpp"
#include "arcmodel/weierstrass.hpp"

namespace arcmodel {

int exit_code(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::precision_exhausted:
    case ErrorKind::not_enumerable:
    case ErrorKind::refused:
        return exit_status::refused;
    default:
        return exit_status::input_error;
    }
}

namespace {

TestRing::Ptr ring_of(const RunConfig& cfg)
{
    require(!cfg.ring.empty(), ErrorKind::parse, cfg.command + " needs --ring");
    return TestRing::parse(cfg.ring);
}

ArcProblem load_for(const RunConfig& cfg, const TestRing::Ptr& ring)
{
    require(!cfg.input.empty(), ErrorKind::parse, cfg.command + " needs an input file");
    ArcProblem problem = load_problem(cfg.input);
    if (ring && !(ring->field() == problem.pres.field)) problem = change_field(problem, ring->field());
    return problem;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out)
{
    if (cfg.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.output, std::ios::binary);
    require(static_cast<bool>(file), ErrorKind::parse, "cannot write " + cfg.output);
    file << text;
}

// Splits "[a, (b, c), d]" at top-level commas.
std::vector<std::string> list_items(const std::string& text)
{
    std::string body = text;
    while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.pop_back();
    std::size_t start = body.find_first_not_of(" \t");
    require(start != std::string::npos && body[start] == '[' && body.back() == ']', ErrorKind::parse,
            "--series: expected a coefficient list [c0, c1, ...]");
    body = body.substr(start + 1, body.size() - start - 2);
    std::vector<std::string> items;
    std::string cur;
    int depth = 0;
    for (char c : body) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            items.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!items.empty() || cur.find_first_not_of(" \t") != std::string::npos) items.push_back(cur);
    return items;
}

int cmd_check(const RunConfig& cfg, std::ostream& out)
{
    const ArcProblem problem = load_for(cfg, nullptr);
    const auto rep = validate(problem.pres, problem.arc);
    out << "field: " << problem.pres.field.str() << "\n";
    out << "n = " << problem.pres.n << ", l = " << problem.pres.l << ", precision = " << problem.arc.precision << "\n";
    out << "p(x0, y0) = 0 modulo t^" << problem.arc.precision << "\n";
    out << "det(dp/dy) along the arc: " << rep.det.str() << "\n";
    out << "d = " << rep.det_order << "\n";
    return exit_status::ok;
}

int cmd_defect(const RunConfig& cfg, std::ostream& out)
{
    const ArcProblem problem = load_for(cfg, nullptr);
    const std::size_t d = compute_defect(problem.pres, problem.arc);
    out << "d = " << d << "\n";
    if (d == 0) out << "trivial model: d = 0, no variables and no equations; deformations are free disk coordinates\n";
    return exit_status::ok;
}

int cmd_model(const RunConfig& cfg, std::ostream& out)
{
    require(cfg.r >= 1, ErrorKind::parse, "--r must be at least 1");
    const ArcProblem problem = load_for(cfg, nullptr);
    const ModelOutput mo = build_model(problem.pres, problem.arc, cfg.r);
    if (cfg.format == "json")
        emit(cfg, model_to_json(mo), out);
    else if (cfg.format == "ideal")
        emit(cfg, model_to_ideal(mo), out);
    else
        fail(ErrorKind::parse, "--format must be json or ideal, got '" + cfg.format + "'");
    return exit_status::ok;
}

int cmd_lift(const RunConfig& cfg, std::ostream& out)
{
    const auto ring = ring_of(cfg);
    const ArcProblem problem = load_for(cfg, ring);
    const auto& pres = problem.pres;
    const auto& arc = problem.arc;
    const std::size_t d = compute_defect(pres, arc);
    const PrecisionPlan plan = plan_precision(arc, ring->nilpotency(), d, cfg.r, cfg.precision, cfg.extra_precision);
    const Deformation def = random_deformation(pres, arc, ring, plan, cfg.seed);
    const ModelPoint pt = forward_map(pres, arc, def, cfg.r);
    const LiftTrace trace = hensel_lift(pres, arc, pt.q, def.x, pt.ybar, cfg.r);

    out << "lift ring=" << ring->descriptor() << " d=" << d << " r=" << cfg.r << " seed=" << cfg.seed
        << " precision=" << plan.user << "\n";
    out << "x:\n";
    for (const auto& x : def.x) out << "  " << x.truncate(plan.user).str() << "\n";
    out << "q = " << pt.q.str() << "\n";
    for (const auto& yb : pt.ybar) out << "ybar = " << yb.str() << "\n";
    out << trace.str();
    bool same = true;
    for (std::size_t j = 0; j < def.y.size(); ++j)
        same = same && trace.y[j].truncate(plan.user) == def.y[j].truncate(plan.user);
    out << (same ? "PASS lifted y agrees with the deformation\n" : "FAIL lifted y differs from the deformation\n");
    return same ? exit_status::ok : exit_status::counterexample;
}

int cmd_roundtrip(const RunConfig& cfg, std::ostream& out)
{
    const auto ring = ring_of(cfg);
    const ArcProblem problem = load_for(cfg, ring);
    const std::size_t d = compute_defect(problem.pres, problem.arc);
    const ModelOutput mo = build_model(problem.pres, problem.arc, cfg.r);
    RoundtripConfig rc;
    rc.ring = ring;
    rc.r = cfg.r;
    rc.trials = cfg.trials;
    rc.seed = cfg.seed;
    rc.plan = plan_precision(problem.arc, ring->nilpotency(), d, cfg.r, cfg.precision, cfg.extra_precision);
    rc.model = &mo;
    rc.threads = cfg.threads;
    const RoundtripReport rep = roundtrip_check(problem.pres, problem.arc, rc);
    out << rep.str();
    return rep.ok() ? exit_status::ok : exit_status::counterexample;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out)
{
    const auto ring = ring_of(cfg);
    require(cfg.precision.has_value(), ErrorKind::parse, "oracle needs --precision");
    const ArcProblem problem = load_for(cfg, ring);
    OracleOptions opt;
    opt.r = cfg.r;
    opt.extra = cfg.extra_precision;
    opt.dump = cfg.dump;
    const OracleReport rep = run_oracle(problem, ring, *cfg.precision, opt);
    out << rep.str();
    if (cfg.dump) emit(cfg, rep.dump, out);
    return rep.ok() ? exit_status::ok : exit_status::counterexample;
}

int cmd_prepare(const RunConfig& cfg, std::ostream& out)
{
    const auto ring = ring_of(cfg);
    std::vector<RingElem> coeffs;
    for (const auto& item : list_items(cfg.series)) coeffs.push_back(parse_ring_element(ring, item));
    const Series<RingElem> f(std::move(coeffs), ring->zero());
    const auto w = weierstrass_prepare(f);
    out << "f = " << f.str() << "\n";
    out << "d = " << w.d << "\n";
    out << "q = " << w.q.str() << "\n";
    out << "u = " << w.u.str() << "\n";
    return exit_status::ok;
}

} // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        if (cfg.command == "check") return cmd_check(cfg, out);
        if (cfg.command == "defect") return cmd_defect(cfg, out);
        if (cfg.command == "model") return cmd_model(cfg, out);
        if (cfg.command == "lift") return cmd_lift(cfg, out);
        if (cfg.command == "roundtrip") return cmd_roundtrip(cfg, out);
        if (cfg.command == "oracle") return cmd_oracle(cfg, out);
        if (cfg.command == "prepare") return cmd_prepare(cfg, out);
        err << "error: unknown command '" << cfg.command << "'\n";
        return exit_status::input_error;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_status::input_error;
    }
}

} // namespace arcmodel
