#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pillow/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

using namespace pillow;

namespace {

Polynomial w(std::size_t i) { return Polynomial::variable(i); }

Polynomial f22() { return Polynomial(Monomial{2}, 2) + Polynomial(Monomial{0, 2}, 2); }

}  // namespace

TEST_CASE("monomials compare padded exponents") {
    CHECK(Monomial{2, 0, 0} == Monomial{2});
    CHECK(Monomial{0, 0}.degree() == 0);
    CHECK(Monomial{1, 2} * Monomial{0, 1, 3} == Monomial{1, 3, 3});
    CHECK_THROWS_AS(Monomial({-1}), std::invalid_argument);
}

TEST_CASE("addition and multiplication") {
    CHECK(w(0).pow(2) * Polynomial(1) == w(0).pow(2));
    Polynomial lhs = (w(0).pow(2) + w(1).pow(2)) * (w(0) * w(1));
    CHECK(lhs == Polynomial(Monomial{3, 1}) + Polynomial(Monomial{1, 3}));
    CHECK((w(0) - w(0)).is_zero());
    CHECK((w(0) - w(0)).terms().empty());
    std::vector<long> pt{1, 1};
    CHECK(evaluate(f22(), std::span<const long>(pt)) == 4);
}

TEST_CASE("evaluate") {
    std::vector<long> p12{1, 2};
    CHECK(evaluate(f22(), std::span<const long>(p12)) == 10);
    std::vector<long> p3{3};
    CHECK(evaluate(Polynomial(Monomial{4}), std::span<const long>(p3)) == 81);
    Polynomial f31 = (w(0).pow(2) + w(1).pow(2) + w(2).pow(2)) * BigRational(6);
    std::vector<long> ones{1, 1, 1};
    CHECK(evaluate(f31, std::span<const long>(ones)) == 18);
    std::vector<BigRational> half{BigRational(1, 2), BigRational(1, 2)};
    CHECK(evaluate(f22(), std::span<const BigRational>(half)) == 1);
    CHECK_THROWS_AS(evaluate(f31, std::span<const long>(p12)), std::invalid_argument);
}

TEST_CASE("apply_D") {
    CHECK(apply_D(Polynomial(1), 1) == Polynomial(Monomial{2}, BigRational(1, 2)));
    CHECK(apply_D(Polynomial(1), 2) * BigRational(4) == f22());
    Polynomial f33 = (Polynomial(Monomial{4}) + Polynomial(Monomial{2, 2}, 4) + Polynomial(Monomial{0, 4})) *
                     BigRational(3);
    CHECK(apply_D(f22(), 2) * BigRational(6) == f33);
    std::vector<std::size_t> only_second{1};
    CHECK(apply_D(w(0), only_second) == Polynomial(Monomial{1, 2}, BigRational(1, 2)));
}

TEST_CASE("apply_D commutes with permutations and raises degree by two") {
    Polynomial p = w(0).pow(3) * w(1) + w(1).pow(2) * w(2).pow(2) * BigRational(5, 3) + w(2).pow(4);
    std::vector<std::size_t> perm{0, 1, 2};
    do {
        CHECK(apply_D(p.rename_variables(perm), 3) == apply_D(p, 3).rename_variables(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(apply_D(p, 3).homogeneous_degree() == 6);
}

TEST_CASE("symmetry and homogeneity") {
    CHECK(is_symmetric(f22(), 2));
    CHECK_FALSE(is_symmetric(w(0).pow(2) * w(1), 2));
    CHECK(f22().homogeneous_degree() == 2);
    CHECK_FALSE((w(0) + Polynomial(1)).homogeneous_degree().has_value());
    CHECK_FALSE(Polynomial().homogeneous_degree().has_value());
    Polynomial e3 = w(0) * w(1) + w(1) * w(2) + w(0) * w(2);
    CHECK(is_symmetric(e3, 3));
    CHECK_FALSE(is_symmetric(w(0) * w(1) + w(1) * w(2), 3));
}

TEST_CASE("text rendering") {
    CHECK(to_string(f22()) == "2*w1^2 + 2*w2^2");
    CHECK(to_string(Polynomial(1)) == "1");
    CHECK(to_string(Polynomial(0)) == "0");
    CHECK(to_string(w(0) - w(1) * BigRational(1, 2)) == "w1 - 1/2*w2");
}

TEST_CASE("rational functions") {
    RationalFunction inv(Polynomial(1), w(0));
    RationalFunction d = rf_partial(inv, 0);
    CHECK(rf_equal(d, RationalFunction(Polynomial(-1), w(0).pow(2))));
    CHECK(rf_add(inv, rf_neg(inv)).numerator().is_zero());
    RationalFunction a(Polynomial(4), w(0) * w(1).pow(3));
    RationalFunction b(Polynomial(4), w(1) * w(0).pow(3));
    RationalFunction common((w(0).pow(2) + w(1).pow(2)) * BigRational(4), w(0).pow(3) * w(1).pow(3));
    CHECK(rf_equal(a + b, common));
    CHECK(rf_homogeneous_degree(common) == -4);
    CHECK(rf_equal(rf_mul(inv, inv), RationalFunction(Polynomial(1), w(0).pow(2))));
    CHECK_THROWS_AS(RationalFunction(Polynomial(1), Polynomial(0)), std::domain_error);
}

TEST_CASE("Laplace transform follows x^k -> k!/lambda^{k+1}") {
    // Oracle: integrate by parts, int_0^inf x^k e^{-lx} dx = (k/l) int x^{k-1} e^{-lx} dx.
    for (int k = 0; k <= 10; ++k) {
        BigRational coeff = 1;
        for (int j = k; j >= 1; --j) coeff *= j;
        RationalFunction expected(Polynomial(coeff), w(0).pow(static_cast<unsigned>(k + 1)));
        CHECK(rf_equal(laplace_transform(w(0).pow(static_cast<unsigned>(k)), 1), expected));
    }
    RationalFunction two_var = laplace_transform(f22(), 2);
    RationalFunction expected = RationalFunction(Polynomial(4), w(0).pow(3) * w(1)) +
                                RationalFunction(Polynomial(4), w(0) * w(1).pow(3));
    CHECK(rf_equal(two_var, expected));
    CHECK(rf_equal(laplace_transform(Polynomial(1), 1), RationalFunction(Polynomial(1), w(0))));
}
