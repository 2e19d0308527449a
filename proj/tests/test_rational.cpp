#include "doctest.h"

#include <random>

#include "picard/rational.hpp"

using picard::Rat;

TEST_CASE("rational parsing") {
    CHECK(*Rat::parse("1/2") == Rat(1, 2));
    CHECK(*Rat::parse("-3/4") == Rat(-3, 4));
    CHECK(*Rat::parse("0.125") == Rat(1, 8));
    CHECK(*Rat::parse("-1.25") == Rat(-5, 4));
    CHECK(*Rat::parse("7") == Rat(7));
    CHECK(*Rat::parse("+2") == Rat(2));
    CHECK(!Rat::parse(""));
    CHECK(!Rat::parse("1/0"));
    CHECK(!Rat::parse("1.2.3"));
    CHECK(!Rat::parse("abc"));
}

TEST_CASE("rational arithmetic and ordering") {
    Rat a(1, 3), b(1, 6);
    CHECK(a + b == Rat(1, 2));
    CHECK(a - b == Rat(1, 6));
    CHECK(a * b == Rat(1, 18));
    CHECK(a / b == Rat(2));
    CHECK(-a == Rat(-1, 3));
    CHECK(b < a);
    CHECK(a <= Rat(1, 3));
    CHECK(Rat(2, 4) == Rat(1, 2));  // normalization
    CHECK(picard::abs(Rat(-5, 7)) == Rat(5, 7));
    CHECK(picard::max(a, b) == a);
    CHECK(picard::min(a, b) == b);
    CHECK_THROWS_AS(a / Rat(0), std::domain_error);
}

TEST_CASE("from_double goes through the shortest decimal") {
    CHECK(Rat::from_double(0.1) == Rat(1, 10));
    CHECK(Rat::from_double(0.5) == Rat(1, 2));
    CHECK(Rat::from_double(-2.0) == Rat(-2));
    CHECK(Rat::from_double(1e-9) == Rat(1, 1000000000));
}

TEST_CASE("overflow is detected rather than wrapped") {
    Rat big(INT64_MAX / 2, 1);
    CHECK_THROWS_AS(big * big, std::overflow_error);
}

TEST_CASE("arithmetic agrees with doubles on random small rationals") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> num(-40, 40), den(1, 12);
    for (int i = 0; i < 500; ++i) {
        Rat a(num(rng), den(rng)), b(num(rng), den(rng));
        CHECK(doctest::Approx((a + b).to_double()) == a.to_double() + b.to_double());
        CHECK(doctest::Approx((a * b).to_double()) == a.to_double() * b.to_double());
        CHECK((a < b) == (a.to_double() < b.to_double() - 1e-15 ||
                          (a.to_double() < b.to_double() + 1e-15 && (b - a).num() > 0)));
    }
}
