#include <gtest/gtest.h>

#include <random>

#include "arcmodel/matrix.hpp"
#include "arcmodel/multipoly.hpp"
#include "arcmodel/poly_system.hpp"
#include "arcmodel/series.hpp"

using namespace arcmodel;

namespace {

using RSeries = Series<RingElem>;
using RPoly = Poly<RingElem>;

RingElem el(const TestRing::Ptr& ring, const std::string& text) { return parse_ring_element(ring, text); }

RSeries series(const TestRing::Ptr& ring, std::vector<std::string> coeffs)
{
    std::vector<RingElem> c;
    for (const auto& s : coeffs) c.push_back(el(ring, s));
    return RSeries(std::move(c), ring->zero());
}

RPoly poly(const TestRing::Ptr& ring, std::vector<std::string> coeffs)
{
    std::vector<RingElem> c;
    for (const auto& s : coeffs) c.push_back(el(ring, s));
    return RPoly(std::move(c), ring->zero());
}

RingElem random_elem(const TestRing::Ptr& ring, std::mt19937_64& rng, bool in_m = false)
{
    std::vector<Scalar> c;
    for (std::size_t i = 0; i < ring->dim(); ++i)
        c.push_back(i == 0 && in_m ? ring->field().zero() : ring->field().from_int(static_cast<long>(rng() % 5) - 2));
    return RingElem(ring, std::move(c));
}

RSeries random_series(const TestRing::Ptr& ring, std::mt19937_64& rng, std::size_t n)
{
    std::vector<RingElem> c;
    for (std::size_t i = 0; i < n; ++i) c.push_back(random_elem(ring, rng));
    return RSeries(std::move(c), ring->zero());
}

} // namespace

TEST(SeriesInvert, Examples)
{
    auto q = TestRing::parse("Q");
    EXPECT_EQ(series_invert(series(q, {"1", "-1", "0", "0"})), series(q, {"1", "1", "1", "1"}));

    auto f2 = TestRing::parse("F2[e]/e^2");
    EXPECT_EQ(series_invert(series(f2, {"1", "e", "0"})), series(f2, {"1", "e", "0"}));

    auto a = series_invert(RSeries::from_poly(poly(q, {"1", "1"}), 6));
    auto b = series_invert(RSeries::from_poly(poly(q, {"1", "1"}), 4));
    EXPECT_EQ(a.truncate(4), b);
}

TEST(SeriesInvert, NonUnit)
{
    auto q3 = TestRing::parse("Q[e]/e^3");
    try {
        (void)series_invert(series(q3, {"e", "1"}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::not_a_unit);
    }
}

TEST(SeriesPrinting, Format)
{
    auto q3 = TestRing::parse("Q[e]/e^3");
    EXPECT_EQ(series(q3, {"1", "0", "e - 2*e^2", "-1"}).str(), "1 + (e - 2*e^2)*t^2 - t^3 + O(t^4)");
    EXPECT_EQ(series(q3, {"0", "0"}).str(), "O(t^2)");
    EXPECT_EQ(poly(q3, {"e", "1"}).str(), "e + t");
}

TEST(SeriesPrecision, ProductTakesMinimum)
{
    auto q = TestRing::parse("Q[e]/e^2");
    std::mt19937_64 rng(7);
    auto a = random_series(q, rng, 5);
    auto b = random_series(q, rng, 8);
    EXPECT_EQ((a * b).precision(), 5u);
    EXPECT_EQ((a + b).precision(), 5u);
    EXPECT_THROW((void)(a == b), Error);
}

TEST(PolyDivmod, Examples)
{
    auto q2 = TestRing::parse("Q[e]/e^2");
    auto [h, r] = poly_divmod_monic(poly(q2, {"0", "0", "1"}), poly(q2, {"e", "1"}));
    EXPECT_EQ(h, poly(q2, {"-e", "1"}));
    EXPECT_TRUE(r.is_zero());

    auto q = TestRing::parse("Q");
    auto [h2, r2] = poly_divmod_monic(poly(q, {"0", "0", "0", "1"}), poly(q, {"0", "1"}));
    EXPECT_EQ(h2, poly(q, {"0", "0", "1"}));
    EXPECT_TRUE(r2.is_zero());

    auto f2 = TestRing::parse("F2[e]/e^2");
    auto [h3, r3] = poly_divmod_monic(poly(f2, {"e", "e"}), poly(f2, {"0", "1"}));
    EXPECT_EQ(h3, poly(f2, {"e"}));
    EXPECT_EQ(r3, poly(f2, {"e"}));
}

TEST(PolyDivmod, SeriesQuotientPrecision)
{
    auto q2 = TestRing::parse("Q[e]/e^2");
    auto res = poly_divmod_monic(series(q2, {"0", "0", "1", "0", "0", "0"}), poly(q2, {"e", "1"}));
    EXPECT_EQ(res.quotient.precision(), 5u);
    EXPECT_EQ(res.quotient, series(q2, {"-e", "1", "0", "0", "0"}));
    EXPECT_TRUE(res.remainder.is_zero());
}

TEST(PolyDivmod, NotMonic)
{
    auto q2 = TestRing::parse("Q[e]/e^2");
    try {
        (void)poly_divmod_monic(poly(q2, {"1", "1"}), poly(q2, {"1", "2"}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::not_monic);
    }
}

TEST(PolyDivmod, SeriesNeedsDistinguishedDivisorAndMargin)
{
    auto q3 = TestRing::parse("Q[e]/e^3");
    try {
        (void)poly_divmod_monic(series(q3, {"1", "1", "1", "1"}), poly(q3, {"1", "1"}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::not_distinguished);
    }
    // t + e over a ring with a = 3 needs precision >= 1 + 2.
    try {
        (void)poly_divmod_monic(series(q3, {"1", "1"}), poly(q3, {"e", "1"}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::precision_exhausted);
    }
    EXPECT_NO_THROW((void)poly_divmod_monic(series(q3, {"1", "1", "0"}), poly(q3, {"e", "1"})));
}

TEST(PolyDivmod, ReconstructionProperty)
{
    std::mt19937_64 rng(11);
    for (const char* d : {"F2[e]/e^2", "F3[e]/e^3", "Q[e]/e^2", "Q[e1,e2]/(e1,e2)^2"}) {
        auto ring = TestRing::parse(d);
        for (int i = 0; i < 40; ++i) {
            std::vector<RingElem> fc;
            std::size_t fdeg = rng() % 8;
            for (std::size_t k = 0; k <= fdeg; ++k) fc.push_back(random_elem(ring, rng));
            RPoly f(fc, ring->zero());
            std::size_t gdeg = 1 + rng() % 3;
            std::vector<RingElem> gc;
            for (std::size_t k = 0; k < gdeg; ++k) gc.push_back(random_elem(ring, rng));
            gc.push_back(ring->one());
            RPoly g(gc, ring->zero());
            auto [h, r] = poly_divmod_monic(f, g);
            EXPECT_EQ(g * h + r, f);
            EXPECT_LT(r.degree(), g.degree());
        }
    }
}

TEST(PrecisionStability, SeriesOperations)
{
    std::mt19937_64 rng(13);
    for (const char* d : {"F3[e]/e^3", "Q[e]/e^2", "Q[e1,e2]/(e1,e2)^2"}) {
        auto ring = TestRing::parse(d);
        for (int i = 0; i < 20; ++i) {
            RSeries a = random_series(ring, rng, 10);
            RSeries b = random_series(ring, rng, 10);
            const std::size_t n = 8;
            EXPECT_EQ((a * b).truncate(n), a.truncate(n) * b.truncate(n));
            EXPECT_EQ((a - b).truncate(n), a.truncate(n) - b.truncate(n));
            if (a[0].is_unit()) EXPECT_EQ(series_invert(a).truncate(n), series_invert(a.truncate(n)));
            // Division by a distinguished polynomial: quotient and remainder agree after truncation.
            std::vector<RingElem> gc{random_elem(ring, rng, true), random_elem(ring, rng, true), ring->one()};
            RPoly g(gc, ring->zero());
            auto hi = poly_divmod_monic(a, g);
            auto lo = poly_divmod_monic(a.truncate(n), g);
            EXPECT_EQ(hi.remainder, lo.remainder);
            // Each power of m in the divisor can pull the unknown tail down by
            // deg g, so the quotient of a truncated dividend is exact below N - a*deg g.
            std::size_t exact = n - 2 * ring->nilpotency();
            EXPECT_TRUE(hi.quotient.agrees_with(lo.quotient, exact));
        }
    }
}

TEST(EvalPolySystem, Examples)
{
    auto vars = VariableSet::make(Field::rationals(), {"x1", "x2", "y1"});
    std::vector<MultiPoly> p{MultiPoly::parse(vars, "y1*x2 + x1^2")};
    auto k = TestRing::parse("Q");
    std::map<std::string, RSeries> point{{"x1", series(k, {"0", "0", "0"})},
                                         {"x2", series(k, {"0", "1", "0"})},
                                         {"y1", series(k, {"0", "0", "0"})}};
    auto v = eval_poly_system<RSeries>(p, point);
    EXPECT_TRUE(v[0].is_zero());

    auto q3 = TestRing::parse("Q[e]/e^3");
    std::vector<RSeries> pt{series(q3, {"0", "e", "0", "0"}), series(q3, {"0", "1", "0", "0"}),
                            series(q3, {"0", "-e^2", "0", "0"})};
    auto w = eval_poly_system<RSeries>(p, pt);
    EXPECT_TRUE(w[0].is_zero());
    EXPECT_EQ(w[0].precision(), 4u);

    auto graph = VariableSet::make(Field::rationals(), {"x1", "y1"});
    std::vector<MultiPoly> g{MultiPoly::parse(graph, "y1 - x1")};
    std::vector<RSeries> gp{series(k, {"0", "1"}), series(k, {"0", "1"})};
    EXPECT_TRUE(eval_poly_system<RSeries>(g, gp)[0].is_zero());

    point.erase("y1");
    try {
        (void)eval_poly_system<RSeries>(p, point);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::structural);
    }
}

TEST(JacobianBlock, Examples)
{
    auto vars = VariableSet::make(Field::rationals(), {"x1", "x2", "y1", "y2"});
    std::vector<MultiPoly> hyper{MultiPoly::parse(vars, "y1*x2 + x1^2")};
    std::vector<std::size_t> y1{2};
    auto j1 = jacobian_block(hyper, y1);
    ASSERT_EQ(j1.rows(), 1u);
    EXPECT_EQ(j1(0, 0), MultiPoly::parse(vars, "x2"));

    std::vector<std::size_t> y12{2, 3};
    std::vector<MultiPoly> lin{MultiPoly::parse(vars, "y1 - x1"), MultiPoly::parse(vars, "y2 - x2")};
    auto j2 = jacobian_block(lin, y12);
    EXPECT_EQ(j2, Matrix<MultiPoly>::identity(2, MultiPoly::constant(vars, vars->field().one())));

    std::vector<MultiPoly> ci{MultiPoly::parse(vars, "y1*y2 - x1"), MultiPoly::parse(vars, "y1 + y2 - x2")};
    auto j3 = jacobian_block(ci, y12);
    EXPECT_EQ(j3(0, 0), MultiPoly::parse(vars, "y2"));
    EXPECT_EQ(j3(0, 1), MultiPoly::parse(vars, "y1"));
    EXPECT_EQ(j3(1, 0), MultiPoly::parse(vars, "1"));
    EXPECT_EQ(j3(1, 1), MultiPoly::parse(vars, "1"));
    EXPECT_EQ(det_and_adjugate(j3).det, MultiPoly::parse(vars, "y2 - y1"));
}

TEST(JacobianBlock, FiniteDifferenceCrossCheck)
{
    // Over F_p the formal derivative matches the divided difference of a
    // polynomial evaluated on k[e]/e^2: p(v + e*h) = p(v) + e*(dp.h).
    Field f = Field::prime(7);
    auto vars = VariableSet::make(f, {"x1", "y1", "y2"});
    std::vector<MultiPoly> ci{MultiPoly::parse(vars, "y1*y2 - x1"), MultiPoly::parse(vars, "y1 + y2 - x1*y1^3")};
    std::vector<std::size_t> ys{1, 2};
    auto jac = jacobian_block(ci, ys);
    auto dual = TestRing::parse("F7[e]/e^2");
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Scalar> pt;
        for (int i = 0; i < 3; ++i) pt.push_back(f.from_int(static_cast<long>(rng() % 7)));
        for (std::size_t j = 0; j < 2; ++j) {
            std::vector<RingElem> at;
            for (std::size_t i = 0; i < 3; ++i) {
                RingElem v = dual->scalar(pt[i]);
                if (i == ys[j]) v += dual->basis_element(1);
                at.push_back(v);
            }
            auto vals = eval_poly_system<RingElem>(ci, at);
            auto jv = eval_poly_system<Scalar>(std::span<const MultiPoly>(jac.entries()), pt);
            for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(vals[i].coord(1), jv[i * 2 + j]);
        }
    }
}

TEST(DetAdjugate, Examples)
{
    auto vars = VariableSet::make(Field::rationals(), {"a", "b", "c", "d", "x2"});
    auto mp = [&](const char* s) { return MultiPoly::parse(vars, s); };
    Matrix<MultiPoly> one(1, 1, std::vector<MultiPoly>{mp("x2")});
    auto r1 = det_and_adjugate(one);
    EXPECT_EQ(r1.det, mp("x2"));
    EXPECT_EQ(r1.adjugate(0, 0), mp("1"));

    Matrix<MultiPoly> two(2, 2, std::vector<MultiPoly>{mp("a"), mp("b"), mp("c"), mp("d")});
    auto r2 = det_and_adjugate(two);
    EXPECT_EQ(r2.det, mp("a*d - b*c"));
    EXPECT_EQ(r2.adjugate, Matrix<MultiPoly>(2, 2, std::vector<MultiPoly>{mp("d"), mp("-b"), mp("-c"), mp("a")}));

    Matrix<MultiPoly> rect(1, 2, std::vector<MultiPoly>{mp("a"), mp("b")});
    EXPECT_THROW(det_and_adjugate(rect), Error);
}

TEST(DetAdjugate, AdjugateIdentityProperty)
{
    std::mt19937_64 rng(19);
    auto check = [](const auto& m) {
        auto [det, adj] = det_and_adjugate(m);
        auto id = std::decay_t<decltype(m)>::identity(m.rows(), det);
        auto scaled = id.map([&](const auto& e) { return e * det; });
        EXPECT_EQ(m * adj, scaled);
        EXPECT_EQ(adj * m, scaled);
    };
    Field f5 = Field::prime(5);
    for (std::size_t n = 1; n <= 4; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Scalar> s;
            for (std::size_t i = 0; i < n * n; ++i) s.push_back(f5.from_int(static_cast<long>(rng() % 5)));
            check(Matrix<Scalar>(n, n, s));

            auto ring = TestRing::parse("Q[e]/e^3");
            std::vector<RingElem> r;
            for (std::size_t i = 0; i < n * n; ++i) r.push_back(random_elem(ring, rng));
            check(Matrix<RingElem>(n, n, r));

            std::vector<RSeries> ser;
            for (std::size_t i = 0; i < n * n; ++i) ser.push_back(random_series(ring, rng, 4));
            check(Matrix<RSeries>(n, n, ser));

            std::vector<RPoly> pol;
            for (std::size_t i = 0; i < n * n; ++i) pol.push_back(random_series(ring, rng, 3).to_poly());
            check(Matrix<RPoly>(n, n, pol));
        }
    }
    auto vars = VariableSet::make(Field::rationals(), {"u", "v", "w"});
    std::vector<MultiPoly> mps;
    for (const char* s : {"u", "v", "w", "u*v", "1", "w^2", "v - u", "3", "u*w"}) mps.push_back(MultiPoly::parse(vars, s));
    check(Matrix<MultiPoly>(3, 3, mps));
}
