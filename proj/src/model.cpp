#include "arcmodel/model.hpp"

#include <algorithm>

#include "json.hpp"

#include "arcmodel/errors.hpp"
#include "arcmodel/poly_system.hpp"

namespace arcmodel {

namespace {

using MPoly = Poly<MultiPoly>;

std::vector<std::string> model_variable_names(std::size_t n, std::size_t l, std::size_t d, std::size_t r)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < d; ++i) names.push_back("q" + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < (r + 1) * d; ++k) names.push_back("xb" + std::to_string(i + 1) + "_" + std::to_string(k));
    for (std::size_t j = 0; j < l; ++j)
        for (std::size_t k = 0; k < r * d; ++k) names.push_back("yb" + std::to_string(j + 1) + "_" + std::to_string(k));
    return names;
}

MPoly generic_poly(const VariableSet::Ptr& vars, std::size_t first, std::size_t length)
{
    std::vector<MultiPoly> c;
    for (std::size_t k = 0; k < length; ++k) c.push_back(MultiPoly::variable(vars, first + k));
    return MPoly(std::move(c), MultiPoly(vars));
}

// Coefficients 0..len-1 of rem(f, g) as equations.
void push_remainder(std::vector<MultiPoly>& out, const MPoly& f, const MPoly& g)
{
    const auto rem = poly_divmod_monic(f, g).remainder;
    for (std::size_t k = 0; k < static_cast<std::size_t>(g.degree()); ++k) out.push_back(rem[k]);
}

Poly<RingElem> poly_from(const TestRing::Ptr& ring, const std::vector<RingElem>& coords, std::size_t first, std::size_t length)
{
    return Poly<RingElem>(std::vector<RingElem>(coords.begin() + static_cast<std::ptrdiff_t>(first),
                                                coords.begin() + static_cast<std::ptrdiff_t>(first + length)),
                          ring->zero());
}

ModelCheck failed(std::string why, std::optional<std::size_t> equation = std::nullopt)
{
    return ModelCheck{false, std::move(why), equation};
}

} // namespace

// ---------------------------------------------------------------------------
// Model points

std::vector<RingElem> ModelPoint::coordinates(const ModelOutput& mo) const
{
    std::vector<RingElem> out;
    out.reserve(mo.expected_variables());
    for (std::size_t i = 0; i < mo.d; ++i) out.push_back(q[i]);
    for (const auto& p : xbar)
        for (std::size_t k = 0; k < mo.xbar_length(); ++k) out.push_back(p[k]);
    for (const auto& p : ybar)
        for (std::size_t k = 0; k < mo.ybar_length(); ++k) out.push_back(p[k]);
    return out;
}

ModelPoint ModelPoint::truncate_xi(std::size_t precision) const
{
    ModelPoint out = *this;
    for (auto& s : out.xi) s = s.truncate(precision);
    return out;
}

std::string ModelPoint::str() const
{
    std::string out = "q = " + q.str() + "\n";
    for (std::size_t i = 0; i < xbar.size(); ++i) out += "xbar" + std::to_string(i + 1) + " = " + xbar[i].str() + "\n";
    for (std::size_t j = 0; j < ybar.size(); ++j) out += "ybar" + std::to_string(j + 1) + " = " + ybar[j].str() + "\n";
    for (std::size_t i = 0; i < xi.size(); ++i) out += "xi" + std::to_string(i + 1) + " = " + xi[i].str() + "\n";
    return out;
}

bool operator==(const ModelPoint& a, const ModelPoint& b)
{
    if (!a.ring->same_as(*b.ring) || a.q != b.q || a.xbar != b.xbar || a.ybar != b.ybar || a.xi.size() != b.xi.size())
        return false;
    for (std::size_t i = 0; i < a.xi.size(); ++i)
        if (a.xi[i].precision() != b.xi[i].precision() || a.xi[i] != b.xi[i]) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Generation

ModelOutput build_model(const VarietyPresentation& pres, const BaseArc& arc, std::size_t r)
{
    require(r >= 1, ErrorKind::structural, "r must be at least 1");
    const std::size_t d = compute_defect(pres, arc);
    ModelOutput mo;
    mo.field = pres.field;
    mo.n = pres.n;
    mo.l = pres.l;
    mo.d = d;
    mo.r = r;
    mo.trivial = d == 0;
    mo.vars = VariableSet::make(pres.field, model_variable_names(pres.n, pres.l, d, r));
    if (mo.trivial) return mo;

    const std::size_t D = (r + 1) * d;
    require(arc.precision >= D, ErrorKind::precision_exhausted,
            "the base arc must be known modulo t^" + std::to_string(D) + " to write down the base point");
    for (std::size_t i = 0; i < d; ++i) mo.base_point.push_back(pres.field.zero());
    for (const auto& x : arc.x0)
        for (std::size_t k = 0; k < D; ++k) mo.base_point.push_back(x[k]);
    for (const auto& y : arc.y0)
        for (std::size_t k = 0; k < r * d; ++k) mo.base_point.push_back(y[k]);

    const MultiPoly one = MultiPoly::constant(mo.vars, pres.field.one());
    MPoly Q = generic_poly(mo.vars, mo.q_var(0), d) + MPoly::t_power(one, d);
    const MPoly Qr = Q.pow(static_cast<unsigned>(r));
    const MPoly Qr1 = Qr * Q;

    std::vector<MPoly> point;
    for (std::size_t i = 0; i < pres.n; ++i) point.push_back(generic_poly(mo.vars, mo.xbar_var(i, 0), D));
    for (std::size_t j = 0; j < pres.l; ++j) point.push_back(generic_poly(mo.vars, mo.ybar_var(j, 0), r * d));

    const Matrix<MPoly> B = eval_matrix(pres.jacobian_y, point);
    auto [det, adj] = det_and_adjugate(B);
    const std::vector<MPoly> values = eval_poly_system<MPoly>(std::span<const MultiPoly>(pres.p), point);

    push_remainder(mo.equations, det, Q);
    for (const auto& v : values) push_remainder(mo.equations, v, Qr);
    for (const auto& w : adj.apply(values)) push_remainder(mo.equations, w, Qr1);
    return mo;
}

// ---------------------------------------------------------------------------
// Checking points

ModelCheck check_model_point(const ModelOutput& mo, const ModelPoint& pt)
{
    require(pt.ring->field() == mo.field, ErrorKind::structural, "point and model use different fields");
    require(pt.xbar.size() == mo.n && pt.ybar.size() == mo.l && pt.xi.size() == mo.n, ErrorKind::structural,
            "point has the wrong shape for this model");
    if (pt.q.degree() != static_cast<int>(mo.d) || !pt.q.is_monic())
        return failed("q = " + pt.q.str() + " is not monic of degree " + std::to_string(mo.d));
    for (const auto& p : pt.xbar)
        if (p.degree() >= static_cast<int>(mo.xbar_length())) return failed("xbar has degree >= (r+1)d");
    for (const auto& p : pt.ybar)
        if (p.degree() >= static_cast<int>(mo.ybar_length())) return failed("ybar has degree >= rd");
    for (const auto& s : pt.xi)
        for (const auto& c : s.coeffs())
            if (!c.residue().is_zero()) return failed("xi is not m-valued");
    if (mo.trivial) return {};

    const auto coords = pt.coordinates(mo);
    for (std::size_t v = 0; v < coords.size(); ++v)
        if (coords[v].residue() != mo.base_point[v])
            return failed(mo.vars->names()[v] + " does not reduce to the base point");
    const RingElem one = pt.ring->one();
    for (std::size_t e = 0; e < mo.equations.size(); ++e)
        if (!mo.equations[e].evaluate<RingElem>(std::span<const RingElem>(coords), one).is_zero())
            return failed("equation " + std::to_string(e) + " does not vanish", e);
    return {};
}

ModelCheck check_conditions(const VarietyPresentation& pres, const BaseArc& arc, const ModelPoint& pt, std::size_t r)
{
    if (pt.xbar.size() != pres.n || pt.ybar.size() != pres.l) return failed("point has the wrong shape");
    if (!pt.q.is_monic()) return failed("q = " + pt.q.str() + " is not monic");
    const std::size_t d = static_cast<std::size_t>(pt.q.degree());
    const std::size_t D = (r + 1) * d;
    for (std::size_t k = 0; k < d; ++k)
        if (!pt.q[k].residue().is_zero()) return failed("q is not t^d modulo m");
    if (arc.precision < D) return failed("base arc is not known modulo t^" + std::to_string(D));
    for (std::size_t i = 0; i < pres.n; ++i) {
        if (pt.xbar[i].degree() >= static_cast<int>(D)) return failed("xbar has degree >= (r+1)d");
        for (std::size_t k = 0; k < D; ++k)
            if (pt.xbar[i][k].residue() != arc.x0[i][k]) return failed("xbar" + std::to_string(i + 1) + " does not reduce to x0");
    }
    for (std::size_t j = 0; j < pres.l; ++j) {
        if (pt.ybar[j].degree() >= static_cast<int>(r * d)) return failed("ybar has degree >= rd");
        for (std::size_t k = 0; k < r * d; ++k)
            if (pt.ybar[j][k].residue() != arc.y0[j][k]) return failed("ybar" + std::to_string(j + 1) + " does not reduce to y0");
    }
    for (const auto& s : pt.xi)
        for (const auto& c : s.coeffs())
            if (!c.residue().is_zero()) return failed("xi is not m-valued");

    std::vector<Poly<RingElem>> point = pt.xbar;
    point.insert(point.end(), pt.ybar.begin(), pt.ybar.end());
    const auto B = eval_matrix(pres.jacobian_y, point);
    auto [det, adj] = det_and_adjugate(B);
    if (!poly_divmod_monic(det, pt.q).remainder.is_zero()) return failed("condition (3): det B is not divisible by q");
    const auto qr = pt.q.pow(static_cast<unsigned>(r));
    const auto values = eval_poly_system<Poly<RingElem>>(std::span<const MultiPoly>(pres.p), point);
    for (std::size_t j = 0; j < values.size(); ++j)
        if (!poly_divmod_monic(values[j], qr).remainder.is_zero())
            return failed("condition (5): p" + std::to_string(j + 1) + " is not divisible by q^r");
    const auto qr1 = qr * pt.q;
    const auto w = adj.apply(values);
    for (std::size_t j = 0; j < w.size(); ++j)
        if (!poly_divmod_monic(w[j], qr1).remainder.is_zero())
            return failed("condition (4): adj(B) p is not divisible by q^(r+1) in component " + std::to_string(j + 1));
    return {};
}

// ---------------------------------------------------------------------------
// Coordinates

SplitX split_x(const std::vector<Series<RingElem>>& x, const Poly<RingElem>& q, std::size_t r)
{
    const auto big_q = q.pow(static_cast<unsigned>(r + 1));
    const std::size_t D = static_cast<std::size_t>(big_q.degree());
    SplitX out;
    for (const auto& s : x) {
        if (s.precision() < D)
            fail(ErrorKind::precision_exhausted, "x is known modulo t^" + std::to_string(s.precision()) +
                                                     ", below (r+1)d = " + std::to_string(D));
        auto [quot, rem] = poly_divmod_monic(s.to_poly(), big_q);
        out.xbar.push_back(std::move(rem));
        out.xi.push_back(Series<RingElem>::from_poly(quot, s.precision() - D));
    }
    return out;
}

std::vector<Series<RingElem>> base_disk_part(const BaseArc& arc, std::size_t D, const TestRing::Ptr& ring,
                                             std::size_t precision)
{
    if (D + precision > arc.precision)
        fail(ErrorKind::precision_exhausted, "disk coordinates modulo t^" + std::to_string(precision) +
                                                 " need the base arc modulo t^" + std::to_string(D + precision));
    std::vector<Series<RingElem>> out;
    for (const auto& x : arc.x0) out.push_back(embed_series(x.shift_down(D), ring, precision));
    return out;
}

ModelPoint base_model_point(const ModelOutput& mo, const TestRing::Ptr& ring, std::size_t xi_precision)
{
    std::vector<RingElem> coords;
    for (const auto& s : mo.base_point) coords.push_back(ring->scalar(s));
    std::vector<Series<RingElem>> xi(mo.n, Series<RingElem>(ring->zero(), xi_precision));
    return model_point_from_coordinates(mo, ring, coords, std::move(xi));
}

ModelPoint model_point_from_coordinates(const ModelOutput& mo, const TestRing::Ptr& ring,
                                        const std::vector<RingElem>& coords, std::vector<Series<RingElem>> xi)
{
    require(coords.size() == mo.expected_variables() || (mo.trivial && coords.empty()), ErrorKind::structural,
            "model point needs " + std::to_string(mo.expected_variables()) + " coordinates");
    require(xi.size() == mo.n, ErrorKind::structural, "model point needs one disk coordinate per x");
    ModelPoint pt{ring, poly_from(ring, coords, 0, mo.d) + Poly<RingElem>::t_power(ring->one(), mo.d), {}, {}, std::move(xi)};
    for (std::size_t i = 0; i < mo.n; ++i) pt.xbar.push_back(poly_from(ring, coords, mo.xbar_var(i, 0), mo.xbar_length()));
    for (std::size_t j = 0; j < mo.l; ++j) pt.ybar.push_back(poly_from(ring, coords, mo.ybar_var(j, 0), mo.ybar_length()));
    return pt;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {
constexpr const char* model_schema = "arcmodel.model/1";
}

std::string model_to_json(const ModelOutput& mo)
{
    nlohmann::ordered_json j;
    j["schema"] = model_schema;
    j["field"] = mo.field.str();
    j["n"] = mo.n;
    j["l"] = mo.l;
    j["d"] = mo.d;
    j["r"] = mo.r;
    j["trivial"] = mo.trivial;
    j["variables"] = mo.vars ? mo.vars->names() : std::vector<std::string>{};
    auto& eqs = j["equations"] = nlohmann::ordered_json::array();
    for (const auto& e : mo.equations) eqs.push_back(e.str());
    auto& base = j["base_point"] = nlohmann::ordered_json::object();
    for (std::size_t v = 0; v < mo.base_point.size(); ++v) base[mo.vars->names()[v]] = mo.base_point[v].str();
    return j.dump(2) + "\n";
}

ModelOutput model_from_json(std::string_view text)
{
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::parse, std::string("model JSON: ") + e.what());
    }
    try {
        if (j.at("schema").get<std::string>() != model_schema)
            fail(ErrorKind::parse, "unsupported model schema '" + j.at("schema").get<std::string>() + "'");
        ModelOutput mo;
        mo.field = Field::parse(j.at("field").get<std::string>());
        mo.n = j.at("n").get<std::size_t>();
        mo.l = j.at("l").get<std::size_t>();
        mo.d = j.at("d").get<std::size_t>();
        mo.r = j.at("r").get<std::size_t>();
        mo.trivial = j.at("trivial").get<bool>();
        mo.vars = VariableSet::make(mo.field, j.at("variables").get<std::vector<std::string>>());
        for (const auto& e : j.at("equations")) mo.equations.push_back(MultiPoly::parse(mo.vars, e.get<std::string>()));
        const auto& base = j.at("base_point");
        if (!base.is_object()) fail(ErrorKind::parse, "base_point must map variable names to scalars");
        for (const auto& name : mo.vars->names())
            if (base.contains(name)) mo.base_point.push_back(mo.field.parse_scalar(base.at(name).get<std::string>()));
        if (base.size() != mo.base_point.size()) fail(ErrorKind::parse, "base_point names a variable the model does not have");
        if (mo.vars->names() != model_variable_names(mo.n, mo.l, mo.d, mo.r))
            fail(ErrorKind::parse, "model variables do not match n, l, d, r");
        if (!mo.trivial && (mo.base_point.size() != mo.expected_variables() || mo.equations.size() != mo.expected_equations()))
            fail(ErrorKind::parse, "model has the wrong number of equations or base point coordinates");
        return mo;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::parse, std::string("model JSON: ") + e.what());
    }
}

std::string model_to_ideal(const ModelOutput& mo)
{
    const std::string coeffs = mo.field.is_rational() ? "QQ" : "ZZ/" + std::to_string(mo.field.modulus());
    std::string out;
    if (mo.trivial || mo.vars->size() == 0) {
        out += "-- d = 0: no equations\n";
        out += "R = " + coeffs + "[]\n";
        out += "I = ideal(0_R)\n";
        return out;
    }
    out += "R = " + coeffs + "[";
    const auto& names = mo.vars->names();
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
    out += "]\nI = ideal(\n";
    for (std::size_t e = 0; e < mo.equations.size(); ++e)
        out += "  " + mo.equations[e].str() + (e + 1 < mo.equations.size() ? ",\n" : "\n");
    out += ")\n";
    return out;
}

} // namespace arcmodel
