#include <algorithm>

#include <gtest/gtest.h>

#include "arcmodel/equivalence.hpp"
#include "arcmodel/model.hpp"
#include "support.hpp"

using namespace arcmodel;
using namespace testsupport;

namespace {

std::vector<std::string> sorted_strings(const std::vector<MultiPoly>& eqs)
{
    std::vector<std::string> out;
    for (const auto& e : eqs) out.push_back(e.str());
    std::sort(out.begin(), out.end());
    return out;
}

const char* all_fixtures[] = {"example.arc", "example_cubic.arc", "cusp.arc", "cusp_f5.arc", "two_equations.arc"};

} // namespace

TEST(BuildModel, ExampleFixture)
{
    auto prob = fixture("example.arc");
    auto mo = build_model(prob.pres, prob.arc, 1);
    EXPECT_EQ(mo.d, 1u);
    EXPECT_FALSE(mo.trivial);
    const std::vector<std::string> names{"q0", "xb1_0", "xb1_1", "xb2_0", "xb2_1", "yb1_0"};
    EXPECT_EQ(mo.vars->names(), names);
    std::vector<MultiPoly> expected;
    for (const char* e : {"xb2_0 - xb2_1*q0", "yb1_0*(xb2_0 - xb2_1*q0) + (xb1_0 - xb1_1*q0)^2",
                          "yb1_0*xb2_0 + xb1_0^2 - xb1_1^2*q0^2", "yb1_0*xb2_1 + 2*xb1_0*xb1_1 - 2*xb1_1^2*q0"})
        expected.push_back(MultiPoly::parse(mo.vars, e));
    ASSERT_EQ(mo.equations.size(), 4u);
    EXPECT_EQ(mo.equations, expected);
    EXPECT_EQ(sorted_strings(mo.equations), sorted_strings(expected));
    std::vector<Scalar> base;
    for (int v : {0, 0, 0, 0, 1, 0}) base.push_back(Field::rationals().from_int(v));
    EXPECT_EQ(mo.base_point, base);
}

TEST(BuildModel, GraphIsTrivial)
{
    auto prob = fixture("graph.arc");
    auto mo = build_model(prob.pres, prob.arc, 1);
    EXPECT_TRUE(mo.trivial);
    EXPECT_EQ(mo.d, 0u);
    EXPECT_TRUE(mo.equations.empty());
    EXPECT_EQ(mo.vars->size(), 0u);
}

TEST(BuildModel, CountsAndBasePointVanishing)
{
    for (const char* name : all_fixtures)
        for (std::size_t r : {1u, 2u}) {
            auto prob = fixture(name);
            auto mo = build_model(prob.pres, prob.arc, r);
            EXPECT_EQ(mo.equations.size(), mo.expected_equations()) << name;
            EXPECT_EQ(mo.vars->size(), mo.expected_variables()) << name;
            EXPECT_EQ(mo.equations.size(), mo.d + mo.l * r * mo.d + mo.l * (r + 1) * mo.d);
            for (const auto& e : mo.equations)
                EXPECT_TRUE(e.evaluate<Scalar>(std::span<const Scalar>(mo.base_point), mo.field.one()).is_zero())
                    << name << " r=" << r << ": " << e.str();
        }
}

TEST(CheckModelPoint, BasePointOverAnyRing)
{
    for (const char* rd : {"Q", "Q[e]/e^3", "Q[a,b]/(a^2,a*b,b^3)"}) {
        auto a = TestRing::parse(rd);
        for (const char* name : {"example.arc", "cusp.arc", "two_equations.arc"}) {
            auto prob = fixture(name);
            auto mo = build_model(prob.pres, prob.arc, 1);
            EXPECT_TRUE(check_model_point(mo, base_model_point(mo, a, 3)).ok) << rd << " " << name;
        }
    }
}

TEST(CheckModelPoint, HandFixtureOverF2)
{
    auto a = TestRing::parse("F2[e]/e^2");
    auto prob = fixture("example.arc", a);
    auto mo = build_model(prob.pres, prob.arc, 1);
    auto coords = [&](const char* c0) {
        std::vector<RingElem> v;
        for (const char* s : {"e", "0", "0", "e", "1", c0}) v.push_back(el(a, s));
        return v;
    };
    std::vector<RSeries> xi(2, RSeries(a->zero(), 2));
    auto good = model_point_from_coordinates(mo, a, coords("0"), xi);
    auto res = check_model_point(mo, good);
    EXPECT_TRUE(res.ok) << res.failure;
    auto bad = model_point_from_coordinates(mo, a, coords("e"), xi);
    res = check_model_point(mo, bad);
    EXPECT_FALSE(res.ok);
    ASSERT_TRUE(res.equation.has_value());
    EXPECT_EQ(*res.equation, 3u);
}

TEST(CheckModelPoint, ShapeMismatchIsStructural)
{
    auto a = TestRing::parse("Q[e]/e^2");
    auto prob = fixture("example.arc");
    auto mo = build_model(prob.pres, prob.arc, 1);
    auto pt = base_model_point(mo, a, 2);
    pt.xbar.pop_back();
    try {
        check_model_point(mo, pt);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::structural);
    }
}

TEST(CheckModelPoint, AgreesWithDirectConditions)
{
    // Random m-valued perturbations of the base point: the generic equations and
    // the conditions computed directly in A[t] must agree on every one.
    auto a = TestRing::parse("F3[e]/e^2");
    for (const char* name : {"example.arc", "two_equations.arc"}) {
        auto prob = fixture(name, a);
        auto mo = build_model(prob.pres, prob.arc, 1);
        Rng rng(9);
        std::size_t passing = 0;
        for (int trial = 0; trial < 300; ++trial) {
            auto base = base_model_point(mo, a, 2).coordinates(mo);
            for (auto& c : base)
                if (rng.chance(1, 3)) c += random_elem(a, rng, true);
            auto pt = model_point_from_coordinates(mo, a, base, std::vector<RSeries>(mo.n, RSeries(a->zero(), 2)));
            bool generic = check_model_point(mo, pt).ok;
            passing += generic;
            EXPECT_EQ(generic, check_conditions(prob.pres, prob.arc, pt, 1).ok) << name << " trial " << trial;
        }
        EXPECT_GT(passing, 0u);
    }
}

TEST(CheckModelPoint, RepresentativeIndependence)
{
    // Replacing ybar by ybar + q^r h leaves the truth of (5) and (6) unchanged.
    auto a = TestRing::parse("F3[e]/e^3");
    auto prob = fixture("example.arc", a);
    auto plan = plan_precision(prob.arc, 3, 1, 1);
    Rng rng(4);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto pt = forward_map(prob.pres, prob.arc, random_deformation(prob.pres, prob.arc, a, plan, seed), 1);
        if (seed % 2 == 1) pt.ybar[0] = pt.ybar[0] + RPoly::constant(el(a, "e^2"));
        bool before = check_conditions(prob.pres, prob.arc, pt, 1).ok;
        auto shifted = pt;
        RPoly h({random_elem(a, rng, true), random_elem(a, rng, true)}, a->zero());
        shifted.ybar[0] = shifted.ybar[0] + pt.q * h;
        // The shifted representative has larger degree, so evaluate the
        // conditions directly rather than through the degree-bounded model.
        std::vector<RPoly> point = shifted.xbar;
        point.push_back(shifted.ybar[0]);
        auto value = prob.pres.p[0].evaluate<RPoly>(std::span<const RPoly>(point), RPoly::constant(a->one()));
        auto jac = prob.pres.jacobian_y(0, 0).evaluate<RPoly>(std::span<const RPoly>(point), RPoly::constant(a->one()));
        bool after = poly_divmod_monic(jac, pt.q).remainder.is_zero() && poly_divmod_monic(value, pt.q).remainder.is_zero() &&
                     poly_divmod_monic(value, pt.q * pt.q).remainder.is_zero();
        EXPECT_EQ(before, after) << "seed " << seed;
    }
}

TEST(SplitX, Examples)
{
    auto a = TestRing::parse("Q[e]/e^2");
    auto q = poly(a, {"e", "1"});
    auto s = split_x({padded(a, {"e", "1"}, 8)}, q, 1);
    EXPECT_EQ(s.xbar[0], poly(a, {"e", "1"}));
    EXPECT_TRUE(s.xi[0].is_zero());
    EXPECT_EQ(s.xi[0].precision(), 6u);

    auto k = TestRing::parse("Q");
    auto t3 = split_x({padded(k, {"0", "0", "0", "1"}, 8)}, poly(k, {"0", "1"}), 1);
    EXPECT_TRUE(t3.xbar[0].is_zero());
    EXPECT_EQ(t3.xi[0], padded(k, {"0", "1"}, 6));

    // (t+e)^2 (1+t) + e t
    auto x = q * q * poly(a, {"1", "1"}) + poly(a, {"0", "e"});
    auto hard = split_x({RSeries::from_poly(x, 8)}, q, 1);
    EXPECT_EQ(hard.xbar[0], poly(a, {"0", "e"}));
    EXPECT_EQ(hard.xi[0], padded(a, {"1", "1"}, 6));

    EXPECT_THROW(split_x({padded(a, {"e"}, 1)}, q, 1), Error);
}

TEST(Serialization, JsonRoundTrip)
{
    for (const char* name : {"example.arc", "cusp_f5.arc", "two_equations.arc", "graph.arc"}) {
        auto prob = fixture(name);
        auto mo = build_model(prob.pres, prob.arc, 1);
        auto text = model_to_json(mo);
        auto back = model_from_json(text);
        EXPECT_EQ(model_to_json(back), text) << name;
        EXPECT_EQ(back.equations, mo.equations);
        EXPECT_EQ(back.base_point, mo.base_point);
    }
    auto prob = fixture("example.arc");
    auto text = model_to_json(build_model(prob.pres, prob.arc, 1));
    EXPECT_NE(text.find("\"schema\": \"arcmodel.model/1\""), std::string::npos);
    EXPECT_NE(text.find("\"xb2_1\": \"1\""), std::string::npos);
    EXPECT_THROW(model_from_json("{\"schema\": \"other\"}"), Error);
    EXPECT_THROW(model_from_json("not json"), Error);
}

TEST(Serialization, IdealExport)
{
    auto prob = fixture("example.arc");
    auto ideal = model_to_ideal(build_model(prob.pres, prob.arc, 1));
    EXPECT_EQ(ideal.rfind("R = QQ[q0, xb1_0, xb1_1, xb2_0, xb2_1, yb1_0]\n", 0), 0u);
    EXPECT_NE(ideal.find("I = ideal("), std::string::npos);
    auto f5 = fixture("cusp_f5.arc");
    EXPECT_EQ(model_to_ideal(build_model(f5.pres, f5.arc, 1)).rfind("R = ZZ/5[", 0), 0u);
}
