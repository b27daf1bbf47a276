#include <catch2/catch_amalgamated.hpp>

#include "rdqm/family_checks.hpp"
#include "rdqm/safe_points.hpp"

using namespace rdqm;

// Reflection and base-inversion checks at small explicit parameter points,
// complementing the suite's run at the documented safe points.

TEST_CASE("q-Racah reflection at an explicit point") {
    ParamSet ps = make_params(
        Family::qR, {{"q", rat(1, 2)}, {"a", rat(1, 16)}, {"b", rat(1, 4)}, {"d", rat(1, 8)}}, 3);
    CHECK(check_reflection_symmetry(ps, 1, 2));
    CHECK(check_reflection_symmetry(ps, 0, 0));
    for (long x = 0; x <= ps.N; ++x)
        for (long n = 0; n <= 2; ++n) CHECK(check_reflection_symmetry(ps, x, n));
}

TEST_CASE("Racah reflection at an explicit point") {
    ParamSet ps = make_params(
        Family::R, {{"a", rat(3, 2)}, {"b", rat(5, 4)}, {"d", rat(7, 2)}}, 3);
    CHECK(check_reflection_symmetry(ps, 2, 1));
    for (long x = 0; x <= ps.N; ++x)
        for (long n = 0; n <= 3; ++n) CHECK(check_reflection_symmetry(ps, x, n));
    CHECK_THROWS_AS(check_reflection_symmetry(safe_point(Family::Ha), 1, 1), InvalidInput);
}

TEST_CASE("base inversion holds degree by degree") {
    ParamSet ps = safe_point(Family::qR);
    for (long n = 0; n <= 3; ++n)
        for (long x = 0; x <= ps.N; ++x) CHECK(check_q_inversion(ps, n, x));
    // a second point, n = 3 reaching the full series depth
    ParamSet p2 = make_params(
        Family::qR, {{"q", Rational(2, 5)}, {"a", rat(1, 9000)}, {"b", rat(1, 4)}, {"d", rat(1, 8)}}, 5);
    CHECK(check_q_inversion(p2, 3, 2));
    CHECK_THROWS_AS(check_q_inversion(safe_point(Family::qHa), 1, 1), InvalidInput);
}

TEST_CASE("inverted-base potentials carry the spectral prefactor") {
    // B(x; lambda; 1/q) = B(x; lambda; q) / dtilde, and likewise for D
    ParamSet ps = safe_point(Family::qR);
    ParamSet inv = ps;
    inv.q = ps.q.inverse();
    for (auto& v : inv.lam) v = v.inverse();
    Rational dt = dtilde(ps);
    for (long x = 0; x <= ps.N; ++x) {
        CHECK(fam_B(inv, x) * dt == fam_B(ps, x));
        CHECK(fam_D(inv, x) * dt == fam_D(ps, x));
    }
}

TEST_CASE("twist proportionality through the public check") {
    std::vector<long> grid = {-1, 0, 1, 2, 3, 4, 5, 6};
    for (Family f : {Family::Ha, Family::qHa, Family::dqK}) {
        ParamSet ps = safe_point(f);
        const auto& tws = twists_for(f);
        for (long v = 0; v <= 3; ++v) {
            XiProportionalityResult res =
                check_xi_proportionality(ps, tws[0].id, tws[1].id, v, grid);
            CAPTURE(meta(f).token, v);
            REQUIRE(res.report.status == ProportionalityStatus::Proportional);
            CHECK(res.constant_matches);
            CHECK(res.potentials_match);
            if (v == 0) CHECK(*res.report.ratio == Rational(1));
        }
    }
    CHECK_THROWS_AS(
        check_xi_proportionality(safe_point(Family::Ha), TwistId::I, TwistId::II, 1, {0}),
        InvalidInput);
}
