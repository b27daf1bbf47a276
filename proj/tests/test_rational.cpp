#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "rdqm/proportionality.hpp"
#include "rdqm/rational.hpp"

using namespace rdqm;

TEST_CASE("construction normalizes") {
    CHECK(rat(2, 4) == rat(1, 2));
    CHECK(rat(2, 4).num() == 1);
    CHECK(rat(2, 4).den() == 2);
    CHECK(rat(3, -6) == rat(-1, 2));
    CHECK(rat(3, -6).num() == -1);
    CHECK(rat(3, -6).den() == 2);
    CHECK(rat(0, 7).num() == 0);
    CHECK(rat(0, 7).den() == 1);
    CHECK_THROWS_AS(rat(1, 0), DivisionByZero);
}

TEST_CASE("field axioms on random values") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-60, 60), den(1, 60);
    for (int i = 0; i < 200; ++i) {
        Rational a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + (-a) == Rational(0));
        if (!a.is_zero()) CHECK(a * a.inverse() == Rational(1));
        // canonical form after arithmetic
        Rational s = a * b + c;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), s.num().get_mpz_t(), s.den().get_mpz_t());
        CHECK(g == 1);
        CHECK(s.den() > 0);
    }
}

TEST_CASE("integer powers") {
    CHECK(rat(2, 3).pow(3) == rat(8, 27));
    CHECK(rat(2, 3).pow(-2) == rat(9, 4));
    CHECK(rat(-2, 3).pow(-3) == rat(-27, 8));
    CHECK(Rational(0).pow(0) == Rational(1));
    CHECK_THROWS_AS(Rational(0).pow(-1), DivisionByZero);
}

TEST_CASE("literal parsing") {
    CHECK(Rational::parse("3/4") == rat(3, 4));
    CHECK(Rational::parse("-3/4") == rat(-3, 4));
    CHECK(Rational::parse("+6/8") == rat(3, 4));
    CHECK(Rational::parse("17") == Rational(17));
    CHECK(Rational::parse("3/-4") == rat(-3, 4));
    CHECK_THROWS_AS(Rational::parse("1/0"), InvalidInput);
    CHECK_THROWS_AS(Rational::parse("1 / 2"), InvalidInput);
    CHECK_THROWS_AS(Rational::parse(""), InvalidInput);
    CHECK_THROWS_AS(Rational::parse("x"), InvalidInput);
    CHECK(Rational::parse("-12/30").str() == "-2/5");
}

TEST_CASE("proportionality fitting") {
    auto R = [](long n, long d = 1) { return Rational(n, d); };
    SECTION("plain proportional pair") {
        auto rep = fit_proportionality({R(1), R(2), R(3)}, {R(2), R(4), R(6)});
        REQUIRE(rep.status == ProportionalityStatus::Proportional);
        CHECK(*rep.ratio == rat(1, 2));
    }
    SECTION("all zero") {
        auto rep = fit_proportionality({R(0), R(0)}, {R(0), R(0)});
        CHECK(rep.status == ProportionalityStatus::BothZero);
    }
    SECTION("mismatch") {
        auto rep = fit_proportionality({R(1), R(2)}, {R(2), R(5)});
        CHECK(rep.status == ProportionalityStatus::Mismatch);
    }
    SECTION("zero on one side only") {
        auto rep = fit_proportionality({R(0), R(2)}, {R(1), R(2)});
        CHECK(rep.status == ProportionalityStatus::Mismatch);
    }
    SECTION("matching zeros inside a proportional pair") {
        auto rep = fit_proportionality({R(0), R(2), R(4)}, {R(0), R(3), R(6)});
        REQUIRE(rep.status == ProportionalityStatus::Proportional);
        CHECK(*rep.ratio == rat(2, 3));
    }
    SECTION("length mismatch rejected") {
        CHECK_THROWS_AS(fit_proportionality({R(1)}, {R(1), R(2)}), InvalidInput);
    }
    SECTION("v against k*v gives 1/k") {
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<long> num(-20, 20), den(1, 20);
        for (int i = 0; i < 50; ++i) {
            Rational k(num(rng), den(rng));
            if (k.is_zero()) continue;
            std::vector<Rational> v, kv;
            bool nonzero = false;
            for (int j = 0; j < 5; ++j) {
                v.emplace_back(num(rng), den(rng));
                if (!v.back().is_zero()) nonzero = true;
                kv.push_back(k * v.back());
            }
            if (!nonzero) continue;
            auto rep = fit_proportionality(v, kv);
            REQUIRE(rep.status == ProportionalityStatus::Proportional);
            CHECK(*rep.ratio == k.inverse());
        }
    }
}
