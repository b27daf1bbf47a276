#include <catch2/catch_amalgamated.hpp>

#include "rdqm/casoratian.hpp"
#include "rdqm/family.hpp"
#include "rdqm/family_checks.hpp"
#include "rdqm/safe_points.hpp"

using namespace rdqm;

TEST_CASE("token round trip and registry consistency") {
    for (Family f : all_families()) {
        const FamilyMeta& fm = meta(f);
        CHECK(family_from_token(fm.token) == f);
        ParamSet ps = safe_point(f);
        CHECK(ps.lam.size() == fm.delta.size());
    }
    CHECK_THROWS_AS(family_from_token("qrr"), InvalidInput);
}

TEST_CASE("normalization and the universal value at the origin") {
    for (Family f : all_families()) {
        ParamSet ps = safe_point(f);
        for (long n = 0; n <= 5; ++n)
            CHECK(eval_polynomial(ps, n, 0) == Rational(1));
        CHECK(fam_eta(ps, 0) == Rational(0));
    }
}

TEST_CASE("difference equation, including points outside the lattice") {
    for (Family f : all_families()) {
        ParamSet ps = safe_point(f);
        long top = meta(f).finite ? ps.N : 6;
        for (long n = 0; n <= 4; ++n)
            for (long x = -3; x <= top + 3; ++x) {
                CAPTURE(meta(f).token, n, x);
                REQUIRE(check_difference_equation(ps, n, x));
            }
    }
    // degree zero never moves: both sides vanish everywhere
    CHECK(check_difference_equation(safe_point(Family::qR), 0, 11));
}

TEST_CASE("Krawtchouk sample values") {
    ParamSet ps = make_params(Family::K, {{"p", rat(1, 2)}}, 4);
    CHECK(eval_polynomial(ps, 1, 2) == Rational(0));
    CHECK(eval_polynomial(ps, 0, 3) == Rational(1));
    // B(1) = 3/2, D(1) = 1/2 at p = 1/2, N = 4
    CHECK(fam_B(ps, 1) == rat(3, 2));
    CHECK(fam_D(ps, 1) == rat(1, 2));
    CHECK(eval_energy(ps, 7) == Rational(7));
}

TEST_CASE("energies at negative degree") {
    // qR closed form (q^-n - 1)(1 - dt q^n) evaluated below zero
    ParamSet ps = safe_point(Family::qR);
    ps.lam = {rat(1, 2), rat(1, 2), rat(1, 4), rat(1, 2)};  // dt = 1/4 at q = 1/2
    REQUIRE(dtilde(ps) == rat(1, 4));
    CHECK(eval_energy(ps, 2) == rat(45, 16));
    CHECK(eval_energy(ps, -2) == Rational(0));  // (q^2 - 1)(1 - dt q^-2) has a zero factor
    CHECK(eval_energy(ps, 0) == Rational(0));
    ParamSet k = safe_point(Family::K);
    CHECK(eval_energy(k, -3) == Rational(-3));
}

TEST_CASE("boundary zeroes and positivity at the documented points") {
    for (Family f : all_families()) {
        ParamSet ps = safe_point(f);
        CHECK(fam_D(ps, 0).is_zero());
        if (meta(f).finite) {
            CHECK(fam_B(ps, ps.N).is_zero());
            for (long x = 0; x < ps.N; ++x) CHECK(fam_B(ps, x).sign() > 0);
            for (long x = 1; x <= ps.N; ++x) CHECK(fam_D(ps, x).sign() > 0);
        } else {
            for (long x = 0; x <= 6; ++x) CHECK(fam_B(ps, x).sign() > 0);
            for (long x = 1; x <= 6; ++x) CHECK(fam_D(ps, x).sign() > 0);
        }
    }
}

TEST_CASE("energies increase along the spectrum") {
    for (Family f : all_families()) {
        ParamSet ps = safe_point(f);
        long top = meta(f).finite ? ps.N : 8;
        for (long n = 0; n < top; ++n) CHECK(eval_energy(ps, n) < eval_energy(ps, n + 1));
        CHECK(eval_energy(ps, 0) == Rational(0));
    }
}

TEST_CASE("varphi matches the lattice increment of eta") {
    for (Family f : all_families()) {
        ParamSet ps = safe_point(f);
        long top = meta(f).finite ? ps.N : 6;
        for (long x = -3; x <= top + 3; ++x)
            CHECK(fam_varphi(ps, x) * fam_eta(ps, 1) == fam_eta(ps, x + 1) - fam_eta(ps, x));
    }
}

TEST_CASE("closed-form weights equal the potential products") {
    for (Family f : all_families()) {
        if (!meta(f).finite) continue;
        ParamSet ps = safe_point(f);
        for (long x = 0; x <= ps.N; ++x)
            CHECK(phi0sq_closed(ps, x) == phi0sq_product(ps, x));
    }
}

TEST_CASE("orthogonality is exact for the finite families") {
    for (Family f : all_families()) {
        if (!meta(f).finite) continue;
        ParamSet ps = safe_point(f);
        for (long x = 0; x <= ps.N; ++x) REQUIRE(phi0sq_product(ps, x).sign() > 0);
        for (long n = 0; n <= ps.N; ++n)
            for (long m = n; m <= ps.N; ++m) {
                OrthogonalityResult res = orthogonality_check(ps, n, m);
                CAPTURE(meta(f).token, n, m);
                CHECK(res.off_diagonal_zero);
                CHECK(res.diagonal_positive);
                if (n != m) CHECK(res.sum.is_zero());
            }
    }
    // summation needs the finite lattice
    CHECK_THROWS_AS(orthogonality_check(safe_point(Family::M), 0, 1), InvalidInput);
    CHECK_THROWS_AS(orthogonality_check(safe_point(Family::K), 0, 9), InvalidInput);
}

TEST_CASE("leading coefficient in eta is nonzero") {
    for (Family f : all_families()) {
        ParamSet ps = safe_point(f);
        for (long n = 1; n <= 5; ++n) {
            Rational top = top_coefficient_in_eta(
                ps, n, [&](long x) { return eval_polynomial(ps, n, x); });
            CHECK(!top.is_zero());
        }
    }
}

TEST_CASE("parameter construction rejects bad input") {
    CHECK_THROWS_AS(make_params(Family::K, {{"p", rat(1, 2)}}), InvalidInput);        // missing N
    CHECK_THROWS_AS(make_params(Family::K, {{"z", rat(1, 2)}}, 4), InvalidInput);     // unknown name
    CHECK_THROWS_AS(make_params(Family::qC, {{"a", rat(1, 3)}}), InvalidInput);       // missing q
    CHECK_THROWS_AS(make_params(Family::qC, {{"q", Rational(2)}, {"a", rat(1, 3)}}), InvalidInput);
}

TEST_CASE("shifts compose additively") {
    for (Family f : all_families()) {
        ParamSet ps = safe_point(f);
        ParamSet a = shift_params(shift_params(ps, 2), 3);
        ParamSet b = shift_params(ps, 5);
        CHECK(a.lam == b.lam);
        CHECK(a.N == b.N);
    }
}
