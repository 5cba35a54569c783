#include "arcmodel/arcspace.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "arcmodel/equivalence.hpp"
#include "arcmodel/errors.hpp"
#include "arcmodel/poly_system.hpp"

namespace arcmodel {

VarietyPresentation VarietyPresentation::make(Field field, std::size_t n, std::size_t l,
                                              const std::vector<std::string>& equations)
{
    require(l >= 1 && l <= max_determinant_size, ErrorKind::structural,
            "number of y-variables must be in 1.." + std::to_string(max_determinant_size));
    require(equations.size() == l, ErrorKind::structural,
            "a complete intersection needs exactly " + std::to_string(l) + " equations, got " +
                std::to_string(equations.size()));
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    for (std::size_t j = 1; j <= l; ++j) names.push_back("y" + std::to_string(j));
    auto vars = VariableSet::make(field, names);
    std::vector<MultiPoly> p;
    for (const auto& e : equations) p.push_back(MultiPoly::parse(vars, e));
    std::vector<std::size_t> ys;
    for (std::size_t j = 0; j < l; ++j) ys.push_back(n + j);
    Matrix<MultiPoly> jac = jacobian_block(p, ys);
    return VarietyPresentation{field, n, l, vars, std::move(p), std::move(jac)};
}

// ---------------------------------------------------------------------------
// Input format

namespace {

std::string trim(std::string_view s)
{
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::size_t parse_count(const std::string& key, const std::string& value)
{
    require(!value.empty() && std::all_of(value.begin(), value.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }),
            ErrorKind::parse, key + ": expected a non-negative integer, got '" + value + "'");
    require(value.size() < 10, ErrorKind::parse, key + ": value too large");
    return std::stoul(value);
}

std::vector<Scalar> parse_list(const Field& field, const std::string& key, const std::string& value)
{
    require(value.size() >= 2 && value.front() == '[' && value.back() == ']', ErrorKind::parse,
            key + ": expected a coefficient list [c0, c1, ...]");
    std::string body = trim(std::string_view(value).substr(1, value.size() - 2));
    std::vector<Scalar> out;
    if (body.empty()) return out;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        require(!item.empty(), ErrorKind::parse, key + ": empty list entry");
        out.push_back(field.parse_scalar(item));
    }
    require(body.back() != ',', ErrorKind::parse, key + ": trailing comma");
    return out;
}

std::string print_list(const Series<Scalar>& s)
{
    std::size_t len = s.precision();
    while (len > 0 && s[len - 1].is_zero()) --len;
    std::string out = "[";
    for (std::size_t i = 0; i < len; ++i) out += (i ? ", " : "") + s[i].str();
    return out + "]";
}

bool indexed_key(const std::string& key, const std::string& prefix, std::size_t& index)
{
    if (key.size() <= prefix.size() || key.compare(0, prefix.size(), prefix) != 0) return false;
    std::string digits = key.substr(prefix.size());
    if (!std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        return false;
    if (digits.size() > 6 || digits[0] == '0') return false;
    index = std::stoul(digits);
    return true;
}

} // namespace

ArcProblem parse_problem(std::string_view text)
{
    std::map<std::string, std::string> entries;
    std::vector<std::string> order;
    std::stringstream lines{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::stringstream parts(line);
        std::string stmt;
        while (std::getline(parts, stmt, ';')) {
            stmt = trim(stmt);
            if (stmt.empty()) continue;
            auto colon = stmt.find(':');
            require(colon != std::string::npos, ErrorKind::parse,
                    "line " + std::to_string(line_no) + ": expected 'key: value', got '" + stmt + "'");
            std::string key = trim(std::string_view(stmt).substr(0, colon));
            std::string value = trim(std::string_view(stmt).substr(colon + 1));
            require(entries.emplace(key, value).second, ErrorKind::parse,
                    "line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
            order.push_back(key);
        }
    }
    auto take = [&](const std::string& key) {
        auto it = entries.find(key);
        require(it != entries.end(), ErrorKind::parse, "missing required key '" + key + "'");
        std::string v = it->second;
        entries.erase(it);
        return v;
    };

    Field field = Field::parse(take("field"));
    const std::size_t n = parse_count("nx", take("nx"));
    const std::size_t l = parse_count("ny", take("ny"));
    const std::size_t precision = parse_count("precision", take("precision"));
    require(precision >= 1, ErrorKind::parse, "precision must be at least 1");

    std::vector<std::string> eqs;
    for (std::size_t j = 1; j <= l; ++j) eqs.push_back(take("p" + std::to_string(j)));
    auto series_for = [&](const std::string& key) {
        auto coeffs = parse_list(field, key, take(key));
        require(coeffs.size() <= precision, ErrorKind::parse,
                key + ": " + std::to_string(coeffs.size()) + " coefficients exceed precision " + std::to_string(precision));
        coeffs.resize(precision, field.zero());
        return Series<Scalar>(std::move(coeffs), field.zero());
    };
    BaseArc arc;
    arc.precision = precision;
    for (std::size_t i = 1; i <= n; ++i) arc.x0.push_back(series_for("arc.x" + std::to_string(i)));
    for (std::size_t j = 1; j <= l; ++j) arc.y0.push_back(series_for("arc.y" + std::to_string(j)));

    if (!entries.empty()) {
        std::size_t idx = 0;
        const std::string& key = entries.begin()->first;
        if (indexed_key(key, "p", idx) || indexed_key(key, "arc.x", idx) || indexed_key(key, "arc.y", idx))
            fail(ErrorKind::parse, "key '" + key + "' exceeds the declared dimensions (nx = " + std::to_string(n) +
                                       ", ny = " + std::to_string(l) + ")");
        fail(ErrorKind::parse, "unknown key '" + key + "'");
    }
    return ArcProblem{VarietyPresentation::make(field, n, l, eqs), std::move(arc)};
}

std::string print_problem(const ArcProblem& problem)
{
    const auto& pres = problem.pres;
    std::string out = "field: " + pres.field.str() + "\n";
    out += "nx: " + std::to_string(pres.n) + "\n";
    out += "ny: " + std::to_string(pres.l) + "\n";
    for (std::size_t j = 0; j < pres.l; ++j) out += "p" + std::to_string(j + 1) + ": " + pres.p[j].str() + "\n";
    for (std::size_t i = 0; i < pres.n; ++i)
        out += "arc.x" + std::to_string(i + 1) + ": " + print_list(problem.arc.x0[i]) + "\n";
    for (std::size_t j = 0; j < pres.l; ++j)
        out += "arc.y" + std::to_string(j + 1) + ": " + print_list(problem.arc.y0[j]) + "\n";
    out += "precision: " + std::to_string(problem.arc.precision) + "\n";
    return out;
}

ArcProblem load_problem(const std::string& path)
{
    std::ifstream in(path);
    require(in.good(), ErrorKind::parse, "cannot read input file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

ArcProblem change_field(const ArcProblem& problem, const Field& field)
{
    const Field& from = problem.pres.field;
    if (from == field) return problem;
    require(from.is_rational(), ErrorKind::structural,
            "cannot move a problem over " + from.str() + " to " + field.str());
    std::vector<std::string> eqs;
    for (const auto& p : problem.pres.p) eqs.push_back(p.str());
    auto reduce = [&](const Series<Scalar>& s) {
        std::vector<Scalar> c;
        for (const auto& v : s.coeffs()) c.push_back(field.from_fraction(v.rational_value().get_num(), v.rational_value().get_den()));
        return Series<Scalar>(std::move(c), field.zero());
    };
    BaseArc arc;
    arc.precision = problem.arc.precision;
    for (const auto& s : problem.arc.x0) arc.x0.push_back(reduce(s));
    for (const auto& s : problem.arc.y0) arc.y0.push_back(reduce(s));
    return ArcProblem{VarietyPresentation::make(field, problem.pres.n, problem.pres.l, eqs), std::move(arc)};
}

// ---------------------------------------------------------------------------
// Validation

namespace {

std::vector<Series<Scalar>> arc_point(const BaseArc& arc)
{
    std::vector<Series<Scalar>> v = arc.x0;
    v.insert(v.end(), arc.y0.begin(), arc.y0.end());
    return v;
}

void check_shape(const VarietyPresentation& pres, const BaseArc& arc)
{
    require(arc.x0.size() == pres.n && arc.y0.size() == pres.l, ErrorKind::structural,
            "arc has " + std::to_string(arc.x0.size()) + " x- and " + std::to_string(arc.y0.size()) +
                " y-components, presentation expects " + std::to_string(pres.n) + " and " + std::to_string(pres.l));
    for (const auto& s : arc_point(arc))
        require(s.precision() == arc.precision, ErrorKind::structural, "arc components disagree on precision");
}

} // namespace

ValidationReport validate(const VarietyPresentation& pres, const BaseArc& arc)
{
    check_shape(pres, arc);
    auto point = arc_point(arc);
    auto values = eval_poly_system<Series<Scalar>>(pres.p, point);
    for (std::size_t j = 0; j < values.size(); ++j)
        if (!values[j].is_zero())
            fail(ErrorKind::arc_not_on_variety, "p" + std::to_string(j + 1) + "(x0, y0) = " + values[j].str() +
                                                    " is not zero modulo t^" + std::to_string(arc.precision));
    auto jac = eval_matrix(pres.jacobian_y, point);
    Series<Scalar> det = det_and_adjugate(jac).det;
    if (det.is_zero())
        fail(ErrorKind::arc_in_degeneracy_locus, "det(dp/dy) vanishes along the arc modulo t^" +
                                                     std::to_string(arc.precision) +
                                                     " (the arc lies in the degeneracy locus)");
    return ValidationReport{det.order(), det};
}

std::size_t compute_defect(const VarietyPresentation& pres, const BaseArc& arc) { return validate(pres, arc).det_order; }

// ---------------------------------------------------------------------------
// Deformations

Deformation Deformation::truncate(std::size_t nx, std::size_t ny) const
{
    Deformation out{ring, {}, {}};
    for (const auto& s : x) out.x.push_back(s.truncate(nx));
    for (const auto& s : y) out.y.push_back(s.truncate(ny));
    return out;
}

std::string Deformation::str() const
{
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) out += "x" + std::to_string(i + 1) + " = " + x[i].str() + "\n";
    for (std::size_t j = 0; j < y.size(); ++j) out += "y" + std::to_string(j + 1) + " = " + y[j].str() + "\n";
    return out;
}

bool operator==(const Deformation& a, const Deformation& b)
{
    if (!a.ring->same_as(*b.ring) || a.x.size() != b.x.size() || a.y.size() != b.y.size()) return false;
    for (std::size_t i = 0; i < a.x.size(); ++i)
        if (a.x[i].precision() != b.x[i].precision() || a.x[i] != b.x[i]) return false;
    for (std::size_t j = 0; j < a.y.size(); ++j)
        if (a.y[j].precision() != b.y[j].precision() || a.y[j] != b.y[j]) return false;
    return true;
}

Series<RingElem> embed_series(const Series<Scalar>& s, const TestRing::Ptr& ring, std::size_t precision)
{
    if (precision > s.precision())
        fail(ErrorKind::precision_exhausted, "the arc is known modulo t^" + std::to_string(s.precision()) +
                                                 ", but precision " + std::to_string(precision) + " was requested");
    std::vector<RingElem> c;
    c.reserve(precision);
    for (std::size_t i = 0; i < precision; ++i) c.push_back(ring->scalar(s[i]));
    return Series<RingElem>(std::move(c), ring->zero());
}

Deformation embed_base_arc(const BaseArc& arc, const TestRing::Ptr& ring, std::size_t precision)
{
    Deformation def{ring, {}, {}};
    for (const auto& s : arc.x0) def.x.push_back(embed_series(s, ring, precision));
    for (const auto& s : arc.y0) def.y.push_back(embed_series(s, ring, precision));
    return def;
}

bool reduces_to_base(const Deformation& def, const BaseArc& arc)
{
    auto same = [&](const Series<RingElem>& s, const Series<Scalar>& base) {
        if (s.precision() > base.precision()) return false;
        for (std::size_t i = 0; i < s.precision(); ++i)
            if (s[i].residue() != base[i]) return false;
        return true;
    };
    if (def.x.size() != arc.x0.size() || def.y.size() != arc.y0.size()) return false;
    for (std::size_t i = 0; i < def.x.size(); ++i)
        if (!same(def.x[i], arc.x0[i])) return false;
    for (std::size_t j = 0; j < def.y.size(); ++j)
        if (!same(def.y[j], arc.y0[j])) return false;
    return true;
}

std::size_t working_margin(std::size_t a, std::size_t d, std::size_t r)
{
    // The disk coordinates need (a-1)(r+1)d: a quotient by q^(r+1) is exact
    // only that far below the dividend's precision.
    return std::max(a * (d + 1), (a - 1) * (r + 1) * d) + 4;
}

std::size_t minimal_user_precision(std::size_t d, std::size_t r) { return (r + 1) * d + 1; }

PrecisionPlan plan_precision(const BaseArc& arc, std::size_t a, std::size_t d, std::size_t r,
                             std::optional<std::size_t> user, std::size_t extra)
{
    const std::size_t margin = working_margin(a, d, r);
    const std::size_t lowest = minimal_user_precision(d, r);
    PrecisionPlan plan;
    if (user) {
        plan.user = *user;
    } else {
        plan.user = arc.precision > margin + extra ? arc.precision - margin - extra : 0;
    }
    if (plan.user < lowest)
        fail(ErrorKind::precision_exhausted,
             "reporting precision " + std::to_string(plan.user) + " is below the minimum " + std::to_string(lowest) +
                 " for d = " + std::to_string(d) + ", r = " + std::to_string(r) + "; the arc needs precision at least " +
                 std::to_string(lowest + margin + extra) + " (have " + std::to_string(arc.precision) + ")");
    plan.work = plan.user + margin + extra;
    if (const char* env = std::getenv("ARCMODEL_WORK_PRECISION"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        require(end != nullptr && *end == '\0', ErrorKind::parse, "ARCMODEL_WORK_PRECISION must be an integer");
        require(v >= plan.user, ErrorKind::precision_exhausted, "ARCMODEL_WORK_PRECISION is below the reporting precision");
        plan.work = v;
    }
    if (plan.work > arc.precision)
        fail(ErrorKind::precision_exhausted,
             "working precision " + std::to_string(plan.work) + " exceeds the arc precision " +
                 std::to_string(arc.precision) + "; the arc must be given to at least N_user + " +
                 std::to_string(margin + extra) + " = " + std::to_string(plan.work) + " coefficients");
    return plan;
}

Scalar random_nonzero_scalar(const Field& field, Rng& rng)
{
    if (field.is_finite()) return field.from_int(static_cast<long>(1 + rng.below(field.modulus() - 1)));
    static const std::pair<long, long> choices[] = {{1, 1}, {-1, 1}, {2, 1}, {-2, 1}, {3, 1}, {-3, 1}, {1, 2}, {-1, 2}};
    const auto& c = choices[rng.below(std::size(choices))];
    return field.from_fraction(c.first, c.second);
}

Deformation deform_from_x(const VarietyPresentation& pres, const BaseArc& arc, std::vector<Series<RingElem>> x)
{
    require(x.size() == pres.n, ErrorKind::structural, "wrong number of x-components");
    const auto ring = x.empty() ? nullptr : x.front().zero().ring();
    require(ring != nullptr, ErrorKind::structural, "deformations need at least one x-component");
    auto y = solve_for_y(pres, arc, x);
    return Deformation{ring, std::move(x), std::move(y)};
}

Deformation random_deformation(const VarietyPresentation& pres, const BaseArc& arc, const TestRing::Ptr& ring,
                               const PrecisionPlan& plan, std::uint64_t seed, const DeformationOptions& options)
{
    Rng rng(seed);
    const Deformation base = embed_base_arc(arc, ring, plan.work);
    std::uint32_t density = options.density;
    std::string last;
    for (std::size_t attempt = 0; attempt < options.max_attempts; ++attempt) {
        std::vector<Series<RingElem>> x;
        for (const auto& x0 : base.x) {
            std::vector<RingElem> c = x0.coeffs();
            for (std::size_t k = 0; k < plan.user; ++k) {
                std::vector<Scalar> coords = c[k].coords();
                for (std::size_t b = 1; b < ring->dim(); ++b)
                    if (rng.chance(density, 1024)) coords[b] = random_nonzero_scalar(ring->field(), rng);
                c[k] = RingElem(ring, std::move(coords));
            }
            x.emplace_back(std::move(c), ring->zero());
        }
        try {
            return deform_from_x(pres, arc, std::move(x));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::obstructed_lift) throw;
            last = e.what();
        }
        density = density * 3 / 4;
    }
    fail(ErrorKind::obstructed_lift, "no unobstructed deformation after " + std::to_string(options.max_attempts) +
                                         " attempts (seed " + std::to_string(seed) + ", ring " + ring->descriptor() +
                                         "): " + last);
}

} // namespace arcmodel
