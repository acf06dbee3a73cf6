#include <doctest.h>

#include <cmath>
#include <random>

#include "finlab/series1.hpp"
#include "finlab/taylor.hpp"

using namespace finlab;

TEST_SUITE_BEGIN("taylor");

TEST_CASE("jet space enumeration and lookup") {
    auto sp = JetSpace::get(2, 2, 2, 3);
    // x-group: multi-indices of 2 vars, total <= 2 -> 6; y-group <= 3 -> 10
    CHECK(sp->size() == 60);
    CHECK(sp->flat({0, 0}, {0, 0}) == 0);
    CHECK(sp->flat({3, 0}, {0, 0}) == -1);
    CHECK(sp->xg().rank({1, 1}) >= 0);
    // every x pair within cap appears exactly once in the triple table
    int pairs = 0;
    for (const auto& t : sp->xg().triples) {
        (void)t;
        ++pairs;
    }
    CHECK(pairs == 15);  // multi-indices of 4 vars with total <= 2
}

TEST_CASE("polynomial derivatives are exact") {
    auto sp = JetSpace::get(1, 1, 2, 3);
    auto x = TaylorScalar::variable(sp, 0, 2.0);
    auto y = TaylorScalar::variable(sp, 1, -1.5);
    // f = x^2 y^3
    auto f = pow(x, 2) * pow(y, 3);
    CHECK(f.value() == doctest::Approx(4.0 * -3.375));
    CHECK(f.deriv({1}, {0}) == doctest::Approx(2 * 2.0 * std::pow(-1.5, 3)));
    CHECK(f.deriv({2}, {3}) == doctest::Approx(2 * 6));  // 2 * x^0 * 6 * y^0
    CHECK(f.deriv({1}, {2}) == doctest::Approx(2 * 2.0 * 6 * -1.5));
}

TEST_CASE("elementary functions against hand values") {
    auto sp = JetSpace::get(1, 1, 1, 3);
    auto y = TaylorScalar::variable(sp, 1, 0.7);
    auto f = exp(y);
    CHECK(f.deriv({0}, {3}) == doctest::Approx(std::exp(0.7)).epsilon(1e-12));
    auto g = sin(y);
    CHECK(g.deriv({0}, {3}) == doctest::Approx(-std::cos(0.7)).epsilon(1e-12));
    auto h = sqrt(y);
    // d2/dy2 sqrt = -1/4 y^(-3/2)
    CHECK(h.deriv({0}, {2}) == doctest::Approx(-0.25 * std::pow(0.7, -1.5)).epsilon(1e-12));
    auto r = 1.0 / y;
    CHECK(r.deriv({0}, {3}) == doctest::Approx(-6.0 * std::pow(0.7, -4)).epsilon(1e-12));
}

TEST_CASE("division and composition round trips") {
    auto sp = JetSpace::get(2, 2, 2, 2);
    auto x1 = TaylorScalar::variable(sp, 0, 0.3);
    auto y2 = TaylorScalar::variable(sp, 3, 1.2);
    auto u = exp(x1) + pow(y2, 2);
    auto v = log(u * u) - 2.0 * log(u);
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; a + b <= 2; ++b)
            CHECK(std::fabs(v.deriv({a, 0}, {0, b})) < 1e-12);
    auto w = u / u;
    CHECK(w.value() == doctest::Approx(1.0));
    CHECK(std::fabs(w.deriv({1, 0}, {0, 1})) < 1e-12);
}

TEST_CASE("shift produces the derivative field") {
    auto sp = JetSpace::get(1, 1, 2, 4);
    auto x = TaylorScalar::variable(sp, 0, 0.4);
    auto y = TaylorScalar::variable(sp, 1, 1.1);
    auto f = sin(x * y);  // df/dy = x cos(xy)
    auto fy = f.shift({0}, {1});
    CHECK(fy.valid_y() == 3);
    CHECK(fy.value() == doctest::Approx(0.4 * std::cos(0.44)).epsilon(1e-12));
    // second derivative of the shifted field = third of the original
    CHECK(fy.deriv({0}, {2}) == doctest::Approx(f.deriv({0}, {3})).epsilon(1e-12));
    CHECK_THROWS_AS(fy.deriv({0}, {4}), PreconditionError);
}

TEST_CASE("group caps are enforced independently") {
    auto sp = JetSpace::get(1, 1, 1, 5);
    auto x = TaylorScalar::variable(sp, 0, 0.5);
    auto y = TaylorScalar::variable(sp, 1, 2.0);
    auto f = pow(x, 1) * pow(y, 5);
    CHECK(f.deriv({1}, {5}) == doctest::Approx(120.0));
    CHECK_THROWS_AS(f.deriv({2}, {0}), PreconditionError);
}

TEST_CASE("series1 basics") {
    auto s = Series1::variable(4, 0.5);
    auto f = 1.0 / (1.0 - s);  // geometric series at 0.5
    CHECK(f.value() == doctest::Approx(2.0));
    CHECK(f.deriv(1) == doctest::Approx(4.0));
    CHECK(f.deriv(2) == doctest::Approx(16.0));
    auto g = exp(log(f));
    CHECK(g.deriv(3) == doctest::Approx(f.deriv(3)).epsilon(1e-12));
    auto anti = f.derivative().antiderivative();
    CHECK(anti.deriv(1) == doctest::Approx(f.deriv(1)));
    CHECK(anti.value() == 0.0);
}

TEST_CASE("series1 sqrt matches pow") {
    auto s = Series1::variable(5, 2.0);
    auto a = sqrt(s);
    auto b = pow(s, 0.5);
    for (int k = 0; k <= 5; ++k) CHECK(a.coeff(k) == doctest::Approx(b.coeff(k)).epsilon(1e-13));
}

TEST_SUITE_END();
