#include "psdparam/hessian.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace psdparam;

namespace {

const char* const kExample = "x1^3 + 2 x1^2 x2 - x1 x2 x3 + 3 x2 x3^2 + 5 x2^2";

ParameterBox unit_box(std::size_t n)
{
    return ParameterBox(std::vector<Interval>(n, Interval(-1, 1)));
}

} // namespace

TEST_CASE("parse")
{
    const auto f = parse_polynomial(kExample);
    CHECK(f.terms().size() == 5);
    CHECK(f.num_vars() == 3);
    CHECK(parse_polynomial("x^3 + 2x^2 y - x y z + 3 y z^2 + 5 y^2") == f);
    CHECK(parse_polynomial("x1*x1*x1 + 2*x1^2*x2 - x3*x2*x1 + 3*x2*x3*x3 + 5*x2*x2") == f);

    CHECK(parse_polynomial("0").terms().empty());
    CHECK(parse_polynomial("x1 - x1").terms().empty());
    CHECK(parse_polynomial("1.5e1 x1^2").terms()[0].coefficient == 15.0);
    CHECK(parse_polynomial("-x1^3").terms()[0].coefficient == -1.0);
    CHECK(parse_polynomial("x2").num_vars() == 2);

    const auto err = [](const char* s) {
        try {
            parse_polynomial(s);
        } catch (const ParseError& e) {
            return e.kind();
        }
        FAIL("no parse error for " << s);
        return ParseError::Kind::syntax;
    };
    CHECK(err("x1^4") == ParseError::Kind::degree);
    CHECK(err("x1^2 x2^2") == ParseError::Kind::degree);
    CHECK(err("x1 +") == ParseError::Kind::syntax);
    CHECK(err("x1 + * x2") == ParseError::Kind::syntax);
    CHECK(err("w^2") == ParseError::Kind::unknown_variable);
    CHECK(err("x0^2") == ParseError::Kind::unknown_variable);
}

TEST_CASE("print reparses to the same polynomial")
{
    testsupport::Gen g(61);
    for (int t = 0; t < 500; ++t) {
        const auto f = testsupport::random_cubic(g, static_cast<std::size_t>(g.integer(1, 5)));
        const auto back = parse_polynomial(to_string(f));
        REQUIRE(back.terms() == f.terms());
    }
    CHECK(to_string(parse_polynomial("0")) == "0");
}

TEST_CASE("hessian of the cubic example")
{
    const auto f = parse_polynomial(kExample);
    const auto h = hessian(f, ParameterBox({Interval(2, 3), Interval(1, 2), Interval(0, 1)}));
    REQUIRE(h.num_params() == 4);
    CHECK(h.coefficient(0) == SymMatrix{{6, 4, 0}, {4, 0, -1}, {0, -1, 0}});
    CHECK(h.coefficient(1) == SymMatrix{{4, 0, -1}, {0, 0, 0}, {-1, 0, 6}});
    CHECK(h.coefficient(2) == SymMatrix{{0, -1, 0}, {-1, 0, 6}, {0, 6, 0}});
    CHECK(h.coefficient(3) == SymMatrix{{0, 0, 0}, {0, 10, 0}, {0, 0, 0}});
    CHECK(h.box()[3] == Interval(1, 1));

    const IntervalMatrix r = relax(h);
    const Matrix lo{{16, 7, -2}, {7, 10, -3}, {-2, -3, 6}};
    const Matrix hi{{26, 12, -1}, {12, 10, 4}, {-1, 4, 12}};
    CHECK(r == IntervalMatrix::from_bounds(lo, hi));

    CHECK_THROWS_AS(hessian(f, unit_box(2)), std::invalid_argument);
}

TEST_CASE("hessian of a quadratic")
{
    const auto h = hessian(parse_polynomial("x1^2"), unit_box(1));
    CHECK(h.coefficient(0) == SymMatrix{{0}});
    CHECK(h.coefficient(1) == SymMatrix{{2}});
}

TEST_CASE("hessian matches finite differences")
{
    testsupport::Gen g(62);
    for (int t = 0; t < 1000; ++t) {
        const auto n = static_cast<std::size_t>(g.integer(1, 5));
        const auto f = testsupport::random_cubic(g, n);
        const auto box = unit_box(n);
        const auto h = hessian(f, box);
        const auto x = g.point_in(box);
        std::vector<double> p = x;
        p.push_back(1.0);
        const SymMatrix exact = evaluate(h, p);
        const Matrix fd = testsupport::fd_hessian(f, x, 1e-4);
        REQUIRE(max_abs_diff(exact.matrix(), fd) <= 1e-4 * (1 + exact.matrix().max_abs()));
    }
}

TEST_CASE("certify_convexity")
{
    const auto f = parse_polynomial(kExample);
    const auto r = certify_convexity(f, ParameterBox({Interval(2, 3), Interval(1, 2), Interval(0, 1)}));
    CHECK(r.verdict.status == Status::proved);
    CHECK(r.verdict.method == Method::split);
    REQUIRE(r.relaxation_strong_psd);
    CHECK_FALSE(*r.relaxation_strong_psd);
    REQUIRE(r.hertz_min_eig);
    CHECK(*r.hertz_min_eig < 0);

    CHECK(certify_convexity(parse_polynomial("x1^2 + x2^2 + x3^2"),
                            ParameterBox({Interval(-5, 1), Interval(0, 0), Interval(2, 9)}))
              .verdict.status == Status::proved);
    CHECK(certify_convexity(parse_polynomial("-x1^3"), ParameterBox({Interval(1, 2)})).verdict.status ==
          Status::disproved);
}
