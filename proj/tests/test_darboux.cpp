#include <catch2/catch_amalgamated.hpp>

#include "rdqm/darboux.hpp"
#include "rdqm/safe_points.hpp"

using namespace rdqm;

namespace {
const ParamSet& point() {
    static const ParamSet ps = safe_point(Family::qR);
    return ps;
}
} // namespace

TEST_CASE("parameter range gates") {
    BigFloat::set_default_precision(256);
    SECTION("the documented point satisfies every inequality") {
        ParameterRangeReport rep = validate_parameter_range(point(), {0, 1, 2});
        for (const auto& c : rep.constraints) {
            CAPTURE(c.name);
            CHECK(c.satisfied);
        }
        for (const auto& c : rep.xi_positivity) {
            CAPTURE(c.name);
            CHECK(c.satisfied);
        }
        CHECK(rep.all_ok());
    }
    SECTION("ac < d fails at a = 1/32 with N = 5") {
        ParamSet bad = make_params(
            Family::qR, {{"q", rat(1, 2)}, {"a", rat(1, 32)}, {"b", rat(1, 4)}, {"d", rat(1, 8)}}, 5);
        ParameterRangeReport rep = validate_parameter_range(bad, {});
        bool ac_lt_d = true;
        for (const auto& c : rep.constraints)
            if (c.name == "ac < d") ac_lt_d = c.satisfied;
        CHECK_FALSE(ac_lt_d);
        // moving a to 1/2048 restores every inequality gate
        ParamSet ok = make_params(
            Family::qR, {{"q", rat(1, 2)}, {"a", rat(1, 2048)}, {"b", rat(1, 4)}, {"d", rat(1, 8)}}, 5);
        for (const auto& c : validate_parameter_range(ok, {}).constraints) {
            CAPTURE(c.name);
            CHECK(c.satisfied);
        }
    }
    SECTION("d >= q^2 is flagged") {
        ParamSet bad = make_params(
            Family::qR, {{"q", rat(1, 2)}, {"a", rat(1, 5000)}, {"b", rat(1, 3)}, {"d", rat(1, 3)}}, 5);
        bool d_lt_q2 = true;
        for (const auto& c : validate_parameter_range(bad, {}).constraints)
            if (c.name == "d < q^2") d_lt_q2 = c.satisfied;
        CHECK_FALSE(d_lt_q2);
    }
    SECTION("degree zero is positive everywhere") {
        ParameterRangeReport rep = validate_parameter_range(point(), {0});
        REQUIRE(rep.xi_positivity.size() == 1);
        CHECK(rep.xi_positivity[0].satisfied);
    }
}

TEST_CASE("similarity-transformed matrix has the polynomials as exact eigenvectors") {
    CHECK(htilde_eigen_check(point()));
    CHECK(htilde_eigen_check(safe_point(Family::Ha)));
    CHECK(htilde_eigen_check(safe_point(Family::dqK)));
}

TEST_CASE("gauge consistency up to N = 8") {
    BigFloat::set_default_precision(256);
    BigFloat tol = BigFloat::pow2(-100);
    for (long N : {5L, 8L}) {
        ParamSet ps = make_params(
            Family::qR, {{"q", rat(1, 2)}, {"a", rat(1, 5000)}, {"b", rat(1, 3)}, {"d", rat(1, 7)}}, N);
        REQUIRE(htilde_eigen_check(ps));
        HamiltonianBundle hb = build_hamiltonian(ps);
        auto ev = eigenvalues_symmetric_tridiag(hb.H.diag, hb.H.off);
        std::vector<BigFloat> want;
        for (long n = 0; n <= N; ++n) want.emplace_back(eval_energy(ps, n));
        std::sort(want.begin(), want.end());
        for (size_t i = 0; i < want.size(); ++i)
            CHECK((ev[i] - want[i]).abs() <= tol * max(BigFloat(1), want[i].abs()));
    }
    ParamSet k8 = make_params(Family::K, {{"p", rat(1, 3)}}, 8);
    HamiltonianBundle hb = build_hamiltonian(k8);
    auto ev = eigenvalues_symmetric_tridiag(hb.H.diag, hb.H.off);
    for (long n = 0; n <= 8; ++n)
        CHECK((ev[n] - BigFloat(n)).abs() <= tol * BigFloat(8));
}

TEST_CASE("ground state") {
    BigFloat::set_default_precision(256);
    GroundState g = ground_state(point());
    CHECK(g.phi0_sq[0] == Rational(1));
    CHECK(g.phi0[0] == BigFloat(1));
    CHECK(g.detailed_balance);
    CHECK(g.residual <= BigFloat::pow2(-128));
    // closed form equals the product form at the validated point
    for (long x = 0; x <= point().N; ++x)
        CHECK(phi0sq_closed(point(), x) == phi0sq_product(point(), x));
}

TEST_CASE("pseudo virtual vectors are eigenvectors away from both boundaries") {
    for (long v = 0; v <= 2; ++v) {
        DefectReport rep = pseudo_virtual_vector_defect(point(), TwistId::I, v);
        CAPTURE(v);
        CHECK(rep.interior_zero);
        CHECK(rep.boundary_matches);
        CHECK(!rep.defect0.is_zero());
        CHECK(!rep.defectN.is_zero());
    }
    // alpha < 0 families take the sign-decorated gauge; the defect is still
    // confined to the boundary rows
    for (Family f : {Family::K, Family::dHa}) {
        DefectReport rep = pseudo_virtual_vector_defect(safe_point(f), TwistId::I, 1);
        CAPTURE(meta(f).token);
        CHECK(rep.interior_zero);
        CHECK(rep.boundary_matches);
    }
}

TEST_CASE("one-step deformation") {
    BigFloat::set_default_precision(256);
    BigFloat tol = BigFloat(Rational::parse("1/1000000000000000000000000000000"));  // 1e-30
    for (long d1 = 0; d1 <= 2; ++d1) {
        CAPTURE(d1);
        DeformedBundle b = build_deformed(point(), TwistId::I, d1);
        CHECK(b.H.size() == static_cast<size_t>(point().N + 2));
        CHECK(b.boundary_zeroes);
        CHECK(b.compat_product);
        CHECK(b.compat_sum);
        CHECK(b.Etilde == eval_energy(point(), -d1 - 1));
        SpectrumReport sr = deformed_spectrum_check(b, tol);
        CHECK(sr.spectrum_ok);
        CHECK(sr.residuals_ok);
        CHECK(sr.casoratian_form_ok);
        CHECK(sr.orthogonal_ok);
        CHECK(sr.factorized_ok);
        CHECK(sr.determinant_ok);
    }
    // d1 = 0 adds a level below the ground state
    CHECK(eval_energy(point(), -1).sign() < 0);
}

TEST_CASE("eigenstate deletion special case") {
    for (long ell = 1; ell <= 3; ++ell) {
        ProportionalityReport rep = eigenstate_deletion_special_case(point(), ell);
        REQUIRE(rep.status == ProportionalityStatus::Proportional);
        CHECK(*rep.ratio == qracah_constant_A(point(), build_index_sets({ell}, ell)));
    }
    CHECK_THROWS_AS(eigenstate_deletion_special_case(point(), 0), InvalidInput);
}
