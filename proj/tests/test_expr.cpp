#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "finlab/expr.hpp"

using namespace finlab;

TEST_SUITE_BEGIN("expr");

TEST_CASE("basic parse and eval") {
    auto e = Expression::parse("2*x1 + y2^2", 2);
    CHECK(e.eval(Vec{1, 0}, Vec{0, 3}) == doctest::Approx(11.0));

    auto f = Expression::parse("exp(2*x1)*(y2)^2", 2);
    CHECK(f.eval(Vec{0.5, 0}, Vec{0, 2}) == doctest::Approx(std::exp(1.0) * 4.0));

    CHECK(Expression::parse("x1*y1", 1).eval(Vec{2}, Vec{3}) == doctest::Approx(6.0));
}

TEST_CASE("syntax errors carry positions") {
    try {
        Expression::parse("sqrt(", 2);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position == 5);
    }
    CHECK_THROWS_AS(Expression::parse("", 2), ParseError);
    CHECK_THROWS_AS(Expression::parse("2 +* 3", 2), ParseError);
    CHECK_THROWS_AS(Expression::parse("x3", 2), ParseError);  // index out of range
}

TEST_CASE("domain errors name the subexpression") {
    auto e = Expression::parse("sqrt(1 - x1^2)", 1);
    CHECK(e.eval(Vec{0.5}, Vec{0}) == doctest::Approx(std::sqrt(0.75)));
    try {
        e.eval(Vec{2}, Vec{0});
        FAIL("expected DomainError");
    } catch (const DomainError& err) {
        CHECK(std::string(err.what()).find("sqrt") != std::string::npos);
    }
    auto d = Expression::parse("1/(x1 - 1)", 1);
    CHECK_THROWS_AS(d.eval(Vec{1}, Vec{0}), DomainError);
}

TEST_CASE("precedence: caret above unary minus, right associative") {
    auto e = Expression::parse("-x1^2", 1);
    CHECK(e.eval(Vec{3}, Vec{0}) == doctest::Approx(-9.0));
    auto f = Expression::parse("2^3^2", 1);  // 2^(3^2)
    CHECK(f.eval(Vec{0}, Vec{0}) == doctest::Approx(512.0));
    auto g = Expression::parse("2^-2", 1);
    CHECK(g.eval(Vec{0}, Vec{0}) == doctest::Approx(0.25));
    auto h = Expression::parse("(-2)^2", 1);
    CHECK(h.eval(Vec{0}, Vec{0}) == doctest::Approx(4.0));
}

TEST_CASE("negative base with integer exponent works") {
    auto e = Expression::parse("y1^3", 1);
    CHECK(e.eval(Vec{0}, Vec{-2}) == doctest::Approx(-8.0));
}

TEST_CASE("parameters") {
    auto e = Expression::parse("k*x1 + q", 1);
    CHECK(e.eval(Vec{2}, Vec{0}, {{"k", 3.0}, {"q", 1.0}}) == doctest::Approx(7.0));
    CHECK_THROWS_AS(e.eval(Vec{2}, Vec{0}), DomainError);
    auto names = e.param_names();
    REQUIRE(names.size() == 2);
    CHECK(names[0] == "k");
    CHECK(names[1] == "q");
}

TEST_CASE("parse-print round trip is structurally identical") {
    for (const char* src : {
             "2*x1 + y2^2",
             "-x1^2 - -y1",
             "exp(2*x1)*(y2)^2",
             "(x1 + y1)*(x1 - y1)/(1 + y2^2)",
             "sqrt(abs(x1))*cos(y1)^2",
             "2^3^x1",
             "1/(1 - x1)",
             "k*sin(x2) + 0.25",
         }) {
        auto e = Expression::parse(src, 2);
        auto r = Expression::parse(e.str(), 2);
        CHECK_MESSAGE(e == r, "round trip failed for: ", src, " printed as ", e.str());
    }
}

TEST_CASE("golden table of hand-evaluated expressions") {
    // each line: expression ; x values ; y values ; expected
    std::ifstream in(std::string(FINLAB_TEST_DATA_DIR) + "/expr_golden.txt");
    REQUIRE(in.good());
    std::string line;
    int checked = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string expr_text, xs, ys, want;
        std::getline(ss, expr_text, ';');
        std::getline(ss, xs, ';');
        std::getline(ss, ys, ';');
        std::getline(ss, want, ';');
        auto parse_vec = [](const std::string& s) {
            Vec v;
            std::stringstream vs(s);
            std::string tok;
            while (std::getline(vs, tok, ',')) v.push_back(std::stod(tok));
            return v;
        };
        Vec x = parse_vec(xs), y = parse_vec(ys);
        auto e = Expression::parse(expr_text, static_cast<int>(x.size()));
        CHECK_MESSAGE(e.eval(x, y) == doctest::Approx(std::stod(want)).epsilon(1e-12),
                      "expression: ", expr_text);
        ++checked;
    }
    CHECK(checked == 20);
}

TEST_SUITE_END();
