#include <doctest.h>

#include <cmath>
#include <random>

#include "finlab/deriv_engine.hpp"

using namespace finlab;

TEST_SUITE_BEGIN("deriv_engine");

namespace {

// |y|^2 in n dimensions
auto norm2_field(int n) {
    return make_field(n, [](auto x, auto y) {
        (void)x;
        auto r = y[0] * y[0];
        for (std::size_t i = 1; i < y.size(); ++i) r += y[i] * y[i];
        return r;
    });
}

}  // namespace

TEST_CASE("quadratic form second derivative") {
    auto f = norm2_field(2);
    auto j = eval_jet(f, Vec{0.3, -0.2}, Vec{1.0, 2.0}, 0, 2);
    CHECK(j.deriv({0, 0}, {2, 0}) == doctest::Approx(2.0));
    CHECK(j.deriv({0, 0}, {1, 1}) == doctest::Approx(0.0));
    CHECK(j.deriv(MultiIndex{0, 0, 0, 2}) == doctest::Approx(2.0));
}

TEST_CASE("product rule example") {
    auto f = make_field(2, [](auto x, auto y) {
        auto e2x = exp(2.0 * x[0]);
        return e2x * (y[1] * y[1]);
    });
    auto j = eval_jet(f, Vec{0.0, 0.0}, Vec{0.0, 1.0}, 1, 0);
    CHECK(j.deriv({1, 0}, {0, 0}) == doctest::Approx(2.0));
}

TEST_CASE("fd oracle trivial values") {
    auto f = make_field(1, [](auto x, auto y) {
        (void)x;
        return sin(y[0]);
    });
    double d3 = fd_oracle(f, Vec{0.0}, Vec{0.0}, MultiIndex{0, 3});
    CHECK(d3 == doctest::Approx(-1.0).epsilon(1e-6));

    auto c = make_field(1, [](auto x, auto y) {
        (void)y;
        return 0.0 * x[0] + 4.25;
    });
    CHECK(std::fabs(fd_oracle(c, Vec{0.2}, Vec{0.1}, MultiIndex{2, 1})) < 1e-9);
}

TEST_CASE("engine and oracle agree on random degree-4 polynomials") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    const int n = 2;
    for (int rep = 0; rep < 5; ++rep) {
        // random polynomial of degree <= 4 in (x1, x2, y1, y2)
        std::vector<std::array<int, 4>> monos;
        std::vector<double> cs;
        for (int a = 0; a <= 4; ++a)
            for (int b = 0; a + b <= 4; ++b)
                for (int c = 0; a + b + c <= 4; ++c)
                    for (int d = 0; a + b + c + d <= 4; ++d) {
                        monos.push_back({a, b, c, d});
                        cs.push_back(coeff(rng));
                    }
        auto f = make_field(n, [&](auto x, auto y) {
            using S = std::decay_t<decltype(x[0])>;
            S acc = 0.0 * x[0];
            for (std::size_t m = 0; m < monos.size(); ++m) {
                S term = cs[m] + 0.0 * x[0];
                for (int t = 0; t < monos[m][0]; ++t) term = term * x[0];
                for (int t = 0; t < monos[m][1]; ++t) term = term * x[1];
                for (int t = 0; t < monos[m][2]; ++t) term = term * y[0];
                for (int t = 0; t < monos[m][3]; ++t) term = term * y[1];
                acc += term;
            }
            return acc;
        });
        Vec x{0.37, -0.21}, y{0.93, 0.55};
        auto j = eval_jet(f, x, y, 3, 3);
        for (int a = 0; a <= 3; ++a)
            for (int b = 0; a + b <= 3; ++b)
                for (int c = 0; a + b + c <= 3; ++c)
                    for (int d = 0; a + b + c + d <= 3; ++d) {
                        MultiIndex idx{a, b, c, d};
                        double engine = j.deriv(idx);
                        double oracle = fd_oracle(f, x, y, idx);
                        CHECK_MESSAGE(rel_err(engine, oracle) < 1e-6, "idx=", idx.str(),
                                      " engine=", engine, " oracle=", oracle);
                    }
    }
}

TEST_CASE("mixed partial symmetry probed through permuted stencils") {
    auto f = make_field(2, [](auto x, auto y) {
        return exp(0.3 * x[0]) * sin(y[0] + 0.5 * y[1]) + x[1] * y[0] * y[0];
    });
    Vec x{0.2, -0.4}, y{0.8, 0.3};
    // d^3/(dx2 dy1 dy2) through all stencil orders
    std::vector<std::vector<int>> seqs = {{1, 2, 3}, {3, 2, 1}, {2, 3, 1}};
    double ref = fd_oracle_sequence(f, x, y, seqs[0]);
    for (const auto& s : seqs) {
        CHECK(rel_err(fd_oracle_sequence(f, x, y, s), ref) < 1e-6);
    }
    // and against the engine
    auto j = eval_jet(f, x, y, 1, 2);
    CHECK(rel_err(j.deriv({0, 1}, {1, 1}), ref) < 1e-6);
}

TEST_CASE("euler homogeneity hook") {
    // F = |y| is positively 1-homogeneous
    auto f = make_field(2, [](auto x, auto y) {
        (void)x;
        return sqrt(y[0] * y[0] + y[1] * y[1]);
    });
    CHECK(euler_homogeneity_residual(f, Vec{0, 0}, Vec{0.6, 0.8}) < 1e-10);
    CHECK(euler_homogeneity_residual(f, Vec{0.3, 0.1}, Vec{-1.2, 2.0}) < 1e-10);
}

TEST_CASE("eval_jet rejects order budget violations") {
    auto f = norm2_field(1);
    CHECK_THROWS_AS(eval_jet(f, Vec{0}, Vec{1}, 4, 3), PreconditionError);
    CHECK_THROWS_AS(fd_oracle(f, Vec{0}, Vec{1}, MultiIndex{3, 2}), PreconditionError);
}

TEST_SUITE_END();
