#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gitmilnor/polynomial.hpp"
#include "test_util.hpp"

using namespace gitmilnor;
using gmtest::P;

TEST_CASE("partial derivatives") {
    CHECK(partial_derivative(P("x^3+y^3"), 0) == P("3*x^2", 2));
    CHECK(partial_derivative(P("y^3", 2), 0).is_zero());
    CHECK(partial_derivative(P("x^2*y"), 1) == P("x^2", 2));
    CHECK_THROWS_AS(partial_derivative(P("x^2"), 5), DimensionMismatch);
}

TEST_CASE("upper-triangular substitution") {
    UpperTriangularChange t = UpperTriangularChange::identity(2);
    t.set_coefficient(0, 1, Rational(1));  // x -> x + y
    CHECK(apply_substitution(P("x^2", 2), t) == P("x^2+2*x*y+y^2"));
    CHECK(apply_substitution(P("x^3+x*y^2"), UpperTriangularChange::identity(2)) == P("x^3+x*y^2"));
    UpperTriangularChange t2 = UpperTriangularChange::identity(2);
    t2.set_coefficient(0, 1, Rational(2));  // x -> x + 2y
    CHECK(apply_substitution(P("x*y"), t2) == P("x*y+2*y^2"));
}

TEST_CASE("substitution composition order") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 20; ++it) {
        Polynomial f = gmtest::random_poly(3, 3, rng);
        auto a = gmtest::random_upper_triangular(3, rng);
        auto b = gmtest::random_upper_triangular(3, rng);
        CHECK(apply_substitution(apply_substitution(f, a), b) == apply_substitution(f, compose(a, b)));
    }
}

TEST_CASE("hessians against hand-expanded determinants") {
    // 2x2: det [[6x, 0], [0, 6y]] = 36xy
    CHECK(hessian(P("x^3+y^3")) == P("36*x*y"));
    // 3x3 diagonal: det diag(6x, 6y, 6z) = 216xyz
    CHECK(hessian(P("x^3+y^3+z^3")) == P("216*x*y*z"));
    // det [[2y, 2x], [2x, 0]] = -4x^2
    {
        Polynomial a = P("2*y", 2), b = P("2*x", 2), d = P("0*x", 2);
        Polynomial byhand = a * d - b * b;
        CHECK(hessian(P("x^2*y")) == byhand);
        CHECK(byhand == P("-4*x^2", 2));
    }
}

TEST_CASE("hessian of a disjoint-block sum is the product of block hessians") {
    // F = g(x,y) + h(z): hessian = hess(g) * h''
    Polynomial f = P("x^3+x*y^2+z^3", 3);
    Polynomial g2 = P("x^3+x*y^2", 3);  // block embedded in 3 variables
    std::vector<std::vector<Polynomial>> hg{{partial_derivative(partial_derivative(g2, 0), 0),
                                             partial_derivative(partial_derivative(g2, 0), 1)},
                                            {partial_derivative(partial_derivative(g2, 1), 0),
                                             partial_derivative(partial_derivative(g2, 1), 1)}};
    Polynomial block = poly_det(hg, 3) * P("6*z", 3);
    CHECK(hessian(f) == block);
}

TEST_CASE("polar pairing on monomials") {
    CHECK(polar_pair(P("x*y"), P("x*y")) == 1);  // du dv on xy
    CHECK(polar_pair(P("x^2", 2), P("x^2", 2)) == 2);
    CHECK(polar_pair(P("x^2", 2), P("x*y")) == 0);
    CHECK_THROWS_AS(polar_pair(P("x^2", 2), P("x^3", 2)), DegreeMismatch);
}

TEST_CASE("polar pairing is diagonal with positive factorial entries") {
    for (int degree : {2, 3}) {
        auto mons = monomials_of_degree(2, degree);
        for (const auto& a : mons)
            for (const auto& b : mons) {
                Rational v = polar_pair(Polynomial::term(2, a, Rational(1)), Polynomial::term(2, b, Rational(1)));
                if (a == b)
                    CHECK(sgn(v) > 0);
                else
                    CHECK(sgn(v) == 0);
            }
    }
}

TEST_CASE("euler relation holds exactly on random forms") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 30; ++it) {
        int n = 2 + static_cast<int>(rng() % 2);
        int deg = 2 + static_cast<int>(rng() % 3);
        Polynomial f = gmtest::random_poly(n, deg, rng);
        Polynomial sum(n);
        for (int i = 0; i < n; ++i) {
            Monomial xi(std::vector<int>(static_cast<std::size_t>(n), 0));
            xi.exp[static_cast<std::size_t>(i)] = 1;
            sum += Polynomial::term(n, xi, Rational(1)) * partial_derivative(f, i);
        }
        CHECK(sum == f * Rational(deg));
    }
}

TEST_CASE("substitution is a ring homomorphism") {
    std::mt19937_64 rng(13);
    for (int it = 0; it < 20; ++it) {
        Polynomial f = gmtest::random_poly(2, 2, rng);
        Polynomial g = gmtest::random_poly(2, 3, rng);
        auto t = gmtest::random_upper_triangular(2, rng);
        CHECK(apply_substitution(f * g, t) == apply_substitution(f, t) * apply_substitution(g, t));
    }
}

TEST_CASE("zero polynomial bookkeeping") {
    Polynomial z(3);
    CHECK(z.is_zero());
    CHECK_THROWS_AS(z.degree(), ZeroPolynomial);
    Polynomial f = P("x^2", 2);
    f -= P("x^2", 2);
    CHECK(f.is_zero());
    CHECK(f.term_count() == 0);
}

TEST_CASE("general linear substitution and permutations") {
    QMatrix swap = QMatrix::permutation({1, 0});
    CHECK(apply_linear(P("x^2*y"), swap) == P("x*y^2"));
    QMatrix scale = QMatrix::identity(2);
    scale.at(0, 0) = rational(1, 2);
    CHECK(apply_linear(P("x^2", 2), scale) == P("1/4*x^2", 2));
}
