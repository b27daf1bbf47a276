#include <catch2/catch_amalgamated.hpp>

#include "rdqm/casoratian.hpp"
#include "rdqm/safe_points.hpp"

using namespace rdqm;

TEST_CASE("determinant convention") {
    CHECK(casoratian({}, 3) == Rational(1));
    auto f = [](long x) { return Rational(2 * x + 1); };
    CHECK(casoratian({f}, 4) == Rational(9));
    // W[1, eta](x) = eta(x+1) - eta(x)
    ParamSet ps = safe_point(Family::dHa);
    auto one = [](long) { return Rational(1); };
    auto eta = [&](long x) { return fam_eta(ps, x); };
    for (long x = -2; x <= 7; ++x)
        CHECK(casoratian({one, eta}, x) == fam_eta(ps, x + 1) - fam_eta(ps, x));
}

TEST_CASE("exact determinants need pivoting") {
    // first pivot zero, determinant still exact
    std::vector<std::vector<Rational>> m = {{Rational(0), Rational(2)},
                                            {Rational(3), Rational(5)}};
    CHECK(determinant(m) == Rational(-6));
    std::vector<std::vector<Rational>> sing = {{Rational(1), Rational(2)},
                                               {Rational(2), Rational(4)}};
    CHECK(determinant(sing) == Rational(0));
}

TEST_CASE("auxiliary normalizer") {
    for (Family f : all_families()) {
        ParamSet ps = safe_point(f);
        for (long x = -3; x <= 6; ++x) {
            CHECK(varphi_m(ps, 0, x) == Rational(1));
            CHECK(varphi_m(ps, 1, x) == Rational(1));
            // M = 2 reduces to the single increment ratio
            CHECK(varphi_m(ps, 2, x) == fam_varphi(ps, x));
        }
    }
    // families on the linear lattice have unit normalizers at every order
    for (Family f : {Family::Ha, Family::K, Family::M, Family::C}) {
        ParamSet ps = safe_point(f);
        for (long M = 0; M <= 5; ++M)
            for (long x = -3; x <= 6; ++x) CHECK(varphi_m(ps, M, x) == Rational(1));
    }
}

TEST_CASE("index set construction") {
    IndexSets s = build_index_sets({0}, 0);
    CHECK(s.Dbar.empty());
    CHECK(s.Nbar == 0);

    s = build_index_sets({1}, 1);
    CHECK(s.Dbar == std::vector<long>{1});
    CHECK(s.Nbar == 1);

    s = build_index_sets({1, 3}, 4);
    CHECK(s.Dbar == std::vector<long>({0, 2, 4}));
    CHECK(s.Nbar == 3);

    CHECK_THROWS_AS(build_index_sets({1, 1}, 3), InvalidInput);
    CHECK_THROWS_AS(build_index_sets({4}, 3), InvalidInput);
    CHECK_THROWS_AS(build_index_sets({}, 3), InvalidInput);

    // seed order is canonicalized, so the reported ratio is order-independent
    IndexSets a = build_index_sets({3, 1}, 4);
    IndexSets b = build_index_sets({1, 3}, 4);
    CHECK(a.D == b.D);
    CHECK(a.Dbar == b.Dbar);
    CHECK(a.ellD == b.ellD);
}

TEST_CASE("index set sum identities") {
    for (long calN = 0; calN <= 5; ++calN)
        for (long d1 = 0; d1 <= calN; ++d1)
            for (long d2 = d1 + 1; d2 <= calN + 1; ++d2) {
                std::vector<long> D = d2 <= calN ? std::vector<long>{d1, d2}
                                                 : std::vector<long>{d1};
                IndexSets s = build_index_sets(D, calN);
                long sum_d = 0, sum_e = 0;
                for (long d : s.D) sum_d += d;
                for (long e : s.Dbar) sum_e += e;
                CHECK(sum_e == sum_d + calN * (calN + 1) / 2 - calN * s.M);
                long ellDbar = sum_e - s.Nbar * (s.Nbar - 1) / 2;
                CHECK(s.ellD == ellDbar);
            }
}

TEST_CASE("trivial instance has ratio one") {
    for (Family f : {Family::qR, Family::K, Family::qC}) {
        IdentityInstance inst{safe_point(f), twists_for(f).front().id, build_index_sets({0}, 0)};
        ProportionalityReport rep = verify_identity(inst);
        REQUIRE(rep.status == ProportionalityStatus::Proportional);
        CHECK(*rep.ratio == Rational(1));
    }
}

TEST_CASE("single-seed instance relates xi to the shifted polynomial") {
    // M=1, D={1}, calN=1: xi_1(x-1) is proportional to P_1(x) two shifts down
    ParamSet ps = safe_point(Family::qR);
    IdentityInstance inst{ps, TwistId::I, build_index_sets({1}, 1)};
    ProportionalityReport rep = verify_identity(inst);
    REQUIRE(rep.status == ProportionalityStatus::Proportional);
    ParamSet down = shift_params(ps, -2);
    Rational ratio = *rep.ratio;
    for (long x = -1; x <= ps.N + 1; ++x)
        CHECK(eval_xi(ps, TwistId::I, 1, x - 1) == ratio * eval_polynomial(down, 1, x));
    CHECK(ratio == qracah_constant_A(ps, inst.idx));
}

TEST_CASE("leading coefficient closed form") {
    ParamSet ps = safe_point(Family::qR);
    CHECK(leading_coefficient_cn(ps, 0) == Rational(1));
    Rational c1 = (Rational(1) - dtilde(ps) * ps.q) /
                  ((Rational(1) - ps.lam[0]) * (Rational(1) - ps.lam[1]) * (Rational(1) - ps.lam[2]));
    CHECK(leading_coefficient_cn(ps, 1) == c1);
    for (long n = 1; n <= 3; ++n) {
        Rational top = top_coefficient_in_eta(ps, n, [&](long x) { return eval_polynomial(ps, n, x); });
        CHECK(top == leading_coefficient_cn(ps, n));
    }
    CHECK_THROWS_AS(leading_coefficient_cn(safe_point(Family::K), 1), InvalidInput);
}

TEST_CASE("measured ratio equals the closed-form constant across the matrix") {
    ParamSet ps = safe_point(Family::qR);
    for (long calN = 0; calN <= 4; ++calN)
        for (long d1 = 0; d1 <= calN; ++d1)
            for (long d2 = d1 + 1; d2 <= calN; ++d2) {
                IdentityInstance inst{ps, TwistId::I, build_index_sets({d1, d2}, calN)};
                ProportionalityReport rep = verify_identity(inst);
                REQUIRE(rep.status == ProportionalityStatus::Proportional);
                CHECK(*rep.ratio == qracah_constant_A(ps, inst.idx));
            }
    // the strongest single case: M=2, D={1,3}, calN=3
    IdentityInstance inst{ps, TwistId::I, build_index_sets({1, 3}, 3)};
    ProportionalityReport rep = verify_identity(inst);
    REQUIRE(rep.status == ProportionalityStatus::Proportional);
    CHECK(*rep.ratio == qracah_constant_A(ps, inst.idx));
}

TEST_CASE("swapping two seeds flips the determinant sign only") {
    ParamSet ps = safe_point(Family::qR);
    const TwistEntry& tw = twist_entry(Family::qR, TwistId::I);
    auto xi1 = [&](long y) { return eval_xi(ps, tw, 1, y); };
    auto xi3 = [&](long y) { return eval_xi(ps, tw, 3, y); };
    for (long x = -2; x <= 4; ++x)
        CHECK(casoratian({xi1, xi3}, x) == -casoratian({xi3, xi1}, x));
}

TEST_CASE("eta obeys the shift recurrence behind the constant") {
    ParamSet ps = safe_point(Family::qR);
    const Rational q = ps.q, d = ps.lam[3];
    for (long M = 1; M <= 3; ++M)
        for (long calN = M - 1 + 1; calN <= 4; ++calN) {
            long Nbar = calN + 1 - M;
            ParamSet lamA = shift_params(shift_params(ps, -(calN + 1)), Nbar - 1);
            ParamSet lamB = shift_params(ps, M - 1);
            for (long x = -3; x <= 8; ++x)
                CHECK(fam_eta(lamA, x) ==
                      q.pow(-M) * fam_eta(lamB, x - M) +
                          (q.pow(-M) - Rational(1)) * (Rational(1) - d / q));
        }
}

TEST_CASE("identity grid respects the degree bound") {
    ParamSet ps = safe_point(Family::qR);
    IndexSets idx = build_index_sets({1, 2}, 3);
    IdentityInstance inst{ps, TwistId::I, idx};
    ProportionalityReport rep = verify_identity(inst);
    CHECK(rep.samples_used >= 2 * degree_bound(idx) + 2);
}

TEST_CASE("a genuinely broken pair is reported as a mismatch") {
    std::vector<Rational> lhs = {Rational(1), Rational(2), Rational(3)};
    std::vector<Rational> rhs = {Rational(1), Rational(2), Rational(4)};
    CHECK(fit_proportionality(lhs, rhs).status == ProportionalityStatus::Mismatch);
}
