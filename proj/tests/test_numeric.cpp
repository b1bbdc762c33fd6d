#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cusp/bigint.hpp"
#include "cusp/contfrac.hpp"
#include "cusp/cyclotomic.hpp"
#include "cusp/rational.hpp"
#include "test_util.hpp"

using namespace cusp;

TEST_CASE("bigint basics") {
    CHECK(BigInt(0).str() == "0");
    CHECK(BigInt(-17).str() == "-17");
    CHECK((BigInt(1) + BigInt(-1)).is_zero());
    CHECK((BigInt("123456789123456789") * BigInt("987654321987654321")).str() ==
          "121932631356500531347203169112635269");
    CHECK((BigInt("-100000000000000000001") + BigInt("1")).str() == "-100000000000000000000");
    BigInt q, r;
    BigInt::divmod(BigInt("123456789123456789123456789"), BigInt("987654321"), q, r);
    CHECK((q * BigInt("987654321") + r) == BigInt("123456789123456789123456789"));
    CHECK(BigInt::gcd(BigInt(123456), BigInt(7896)).str() == "24");
    CHECK((BigInt(-7) / BigInt(2)).str() == "-3");   // truncation toward zero
    CHECK((BigInt(-7) % BigInt(2)).str() == "-1");
}

TEST_CASE("bigint randomized against int64") {
    TestRng rng(42);
    for (int i = 0; i < 2000; ++i) {
        long long a = rng.range(-1000000, 1000000);
        long long b = rng.range(-1000000, 1000000);
        CHECK((BigInt(a) + BigInt(b)).to_ll() == a + b);
        CHECK((BigInt(a) - BigInt(b)).to_ll() == a - b);
        CHECK((BigInt(a) * BigInt(b)).to_ll() == a * b);
        if (b != 0) {
            CHECK((BigInt(a) / BigInt(b)).to_ll() == a / b);
            CHECK((BigInt(a) % BigInt(b)).to_ll() == a % b);
        }
        CHECK((BigInt(a) < BigInt(b)) == (a < b));
    }
}

TEST_CASE("bigint perfect squares") {
    BigInt root;
    CHECK(BigInt("152415787532388367501905199875019052100").perfect_square(root));
    CHECK(root.str() == "12345678901234567890");
    CHECK_FALSE(BigInt(2).perfect_square(root));
    CHECK_FALSE(BigInt(-4).perfect_square(root));
    CHECK(BigInt(0).perfect_square(root));
}

TEST_CASE("rational normalization and arithmetic") {
    CHECK(Rational(4, 6).str() == "2/3");
    CHECK(Rational(-4, -6).str() == "2/3");
    CHECK(Rational(4, -6).str() == "-2/3");
    CHECK(Rational(0, 5).str() == "0");
    CHECK((Rational(1, 2) + Rational(1, 3)).str() == "5/6");
    CHECK((Rational(1, 2) * Rational(2, 3)).str() == "1/3");
    CHECK((Rational(1, 2) / Rational(1, 4)).str() == "2");
    CHECK(Rational::parse("-3/9") == Rational(-1, 3));
    CHECK(Rational(9, 4).is_square());
    CHECK_FALSE(Rational(2).is_square());
    CHECK_FALSE(Rational(-9, 4).is_square());
    CHECK_THROWS(Rational(1, 2) / Rational(0));
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclo_field(1)->degree() == 1);
    CHECK(cyclo_field(4)->degree() == 2);    // x^2 + 1
    CHECK(cyclo_field(12)->degree() == 4);   // x^4 - x^2 + 1
    auto f12 = cyclo_field(12);
    const auto &phi = f12->cyclotomic_poly();
    CHECK(phi[0].str() == "1");
    CHECK(phi[2].str() == "-1");
    CHECK(phi[4].str() == "1");
    CHECK(phi[1].is_zero());
}

TEST_CASE("cyclotomic arithmetic: spec values") {
    // M=4: (1+z)(1-z) = 1 - z^2 = 2 since z^2 = -1
    auto f4 = cyclo_field(4);
    auto one = CycloScalar::one(f4);
    auto z = CycloScalar::root_of_unity(f4, 1);
    CHECK(((one + z) * (one - z)) == CycloScalar::from_int(f4, 2));

    // any M: z * z^(M-1) = 1
    for (unsigned m : {4u, 8u, 12u, 20u}) {
        auto f = cyclo_field(m);
        auto zz = CycloScalar::root_of_unity(f, 1);
        CHECK((zz * CycloScalar::root_of_unity(f, m - 1)).is_one());
    }

    // M=3: z*z = -1-z (reduction modulo z^2+z+1)
    auto f3 = cyclo_field(3);
    auto z3 = CycloScalar::root_of_unity(f3, 1);
    auto m1 = CycloScalar::from_int(f3, -1);
    CHECK((z3 * z3) == (m1 + (-z3)));
}

TEST_CASE("cyclotomic field laws randomized") {
    TestRng rng(7);
    for (unsigned m : {4u, 12u}) {
        auto f = cyclo_field(m);
        for (int i = 0; i < 60; ++i) {
            auto a = random_scalar(rng, f);
            auto b = random_scalar(rng, f);
            auto c = random_scalar(rng, f);
            CHECK((a + b) * c == a * c + b * c);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * b == b * a);
            if (!a.is_zero()) {
                CHECK((a * a.inverse()).is_one());
                CHECK((a / a).is_one());
            }
        }
    }
    auto f = cyclo_field(8);
    CHECK_THROWS(CycloScalar::one(f) / CycloScalar::zero(f));
}

TEST_CASE("continued fraction spec examples") {
    auto c1 = continued_fraction(4, 2);
    CHECK(c1.digits == std::vector<long long>{2});
    CHECK(c1.digit_sum() == 2);

    auto c2 = continued_fraction(7, 5);
    CHECK(c2.digits == std::vector<long long>{1, 2, 2});
    CHECK(c2.digit_sum() == 5);

    auto c3 = continued_fraction(2, 3);
    CHECK(c3.digits == std::vector<long long>{0, 1, 2});
    CHECK(c3.digit_sum() == 3);
}

TEST_CASE("continued fraction round trip and canonical form") {
    for (long long p = 1; p <= 500; ++p) {
        for (long long q : {1ll, 2ll, 3ll, 7ll, 12ll, 499ll, 500ll}) {
            auto cf = continued_fraction(p, q);
            CHECK(cf.evaluate() == Rational(p, q));
            if (cf.digits.size() > 1) {
                CHECK(cf.digits.back() >= 2);
                for (size_t i = 1; i < cf.digits.size(); ++i) CHECK(cf.digits[i] >= 1);
            }
            // digit sum equals the subtractive Euclid step count
            long long a = p, b = q, steps = 0;
            while (a > 0 && b > 0) {
                if (a >= b) a -= b; else b -= a;
                ++steps;
            }
            CHECK(cf.digit_sum() == steps);
        }
    }
}
