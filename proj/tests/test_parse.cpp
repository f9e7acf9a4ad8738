#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gitmilnor/parse.hpp"
#include "test_util.hpp"

using namespace gitmilnor;

TEST_CASE("grammar basics") {
    Polynomial f = parse_form("x^3+y^3");
    CHECK(f.n_vars() == 2);
    CHECK(f.coeff(Monomial({3, 0})) == 1);
    CHECK(f.coeff(Monomial({0, 3})) == 1);

    Polynomial g = parse_form("1/2*x1^2*x2");
    CHECK(g.coeff(Monomial({2, 1})) == rational(1, 2));

    // aliases and indexed names interleave; '*' is optional
    CHECK(parse_form("3x y", 2) == parse_form("3*x1*x2"));
    CHECK(parse_form("x^2 - 2*x*y + y^2") == parse_form("x1^2-2*x1*x2+x2^2"));
    CHECK(parse_form("-x^3 + 3/4 * z^3", 3).coeff(Monomial({3, 0, 0})) == -1);
}

TEST_CASE("homogeneity validation") {
    CHECK_THROWS_AS(parse_homogeneous_form("x^2+y^3"), ParseError);
    CHECK_NOTHROW(parse_homogeneous_form("x^2+y^2"));
    CHECK_THROWS_AS(parse_homogeneous_form("x^2-x^2", 2), ParseError);  // zero form
}

TEST_CASE("syntax errors carry positions") {
    try {
        parse_form("x^2 + + y^2");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position >= 5);
    }
    CHECK_THROWS_AS(parse_form(""), ParseError);
    CHECK_THROWS_AS(parse_form("x^2 +"), ParseError);
    CHECK_THROWS_AS(parse_form("2 ** x"), ParseError);
    CHECK_THROWS_AS(parse_form("1/0*x"), ParseError);
    CHECK_THROWS_AS(parse_form("x5", 3), ParseError);  // index above declared count
}

TEST_CASE("duplicate mentions accumulate") {
    CHECK(parse_form("x*x*x", 1) == parse_form("x^3", 1));
    CHECK(parse_form("x^2*y + x*y*x") == parse_form("2*x^2*y"));
    CHECK(parse_form("x - x", 1).is_zero());
}

TEST_CASE("printer round-trips through the parser") {
    std::mt19937_64 rng(83);
    for (int it = 0; it < 60; ++it) {
        int n = 1 + static_cast<int>(rng() % 3);
        int deg = 1 + static_cast<int>(rng() % 4);
        Polynomial f = gmtest::random_poly(n, deg, rng);
        // random rational rescale to exercise fraction printing
        f = f * rational(static_cast<long>(rng() % 5) + 1, static_cast<long>(rng() % 3) + 1);
        CHECK(parse_form(to_string(f), n) == f);
    }
    CHECK(to_string(Polynomial(2)) == "0");
    CHECK(to_string(parse_form("x*y - y^2")) == "x1*x2 - x2^2");
}

TEST_CASE("one-parameter subgroup text form") {
    OnePS lam = parse_one_ps("-1,1");
    CHECK(lam.weights() == std::vector<long long>{-1, 1});
    CHECK(parse_one_ps(" 2 , -1 , -1 ").weights() == std::vector<long long>{2, -1, -1});
    CHECK_THROWS_AS(parse_one_ps("1,1"), Error);
    CHECK_THROWS_AS(parse_one_ps("1,,-1"), Error);
}

TEST_CASE("generator lists split on semicolons") {
    auto gens = parse_generators("x^2;y^2");
    REQUIRE(gens.size() == 2);
    CHECK(gens[0].n_vars() == 2);
    CHECK(gens[0] == parse_form("x^2", 2));
    auto gens3 = parse_generators("x^2; x*y; 1/3*z^2");
    CHECK(gens3.size() == 3);
    CHECK(gens3[2].n_vars() == 3);
    CHECK_THROWS_AS(parse_generators("x^2;"), ParseError);
}

TEST_CASE("monomial rendering") {
    CHECK(to_string(Monomial({2, 0, 1})) == "x1^2*x3");
    CHECK(to_string(Monomial({0, 0})) == "1");
    CHECK(to_string(Monomial({1, 1}), "u") == "u1*u2");
}
