#include "test_util.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cmvkit/measure.hpp"
#include "cmvkit/opuc.hpp"
#include "cmvkit/weyl.hpp"

using namespace cmvkit;
using test::random_schedule;

namespace {

const cplx omega = std::polar(1.0, pi / 4.0);

CoefficientSchedule mu_schedule(int count, bool rotate = false) {
    std::vector<cplx> alpha, zeta;
    for (int n = 0; n < count; ++n) {
        alpha.emplace_back(-1.0 / (n + 2), 0.0);
        zeta.push_back(rotate ? omega : cplx(1.0, 0.0));
    }
    return CoefficientSchedule::half_lattice(std::move(alpha), std::move(zeta));
}

}  // namespace

TEST_CASE("Caratheodory transform of the builtins") {
    const MeasureSpec leb = MeasureSpec::builtin("lebesgue");
    const MeasureSpec mu = MeasureSpec::builtin("geronimus_mu");
    const MeasureSpec nu = MeasureSpec::builtin("geronimus_nu");

    SUBCASE("frozen values: 1, 1 - z, and 1/(1 - z)") {
        CHECK_CLOSE(caratheodory(mu, cplx(0.5, 0.0)), cplx(0.5, 0.0), 1e-8);
        for (const cplx z : {cplx(0.3, 0.2), cplx(-0.5, 0.1), cplx(0.0, 0.7)}) {
            CHECK_CLOSE(caratheodory(leb, z), cplx(1.0, 0.0), 1e-10);
            CHECK_CLOSE(caratheodory(mu, z), cplx(1.0, 0.0) - z, 1e-8);
            CHECK_CLOSE(caratheodory(nu, z), cplx(1.0, 0.0) / (cplx(1.0, 0.0) - z), 1e-8);
        }
    }

    SUBCASE("normalization and positivity") {
        std::mt19937_64 rng(149);
        for (const MeasureSpec* m : {&leb, &mu, &nu}) {
            CHECK_CLOSE(caratheodory(*m, cplx(0.0, 0.0)), cplx(1.0, 0.0), 1e-10);
            for (int trial = 0; trial < 100; ++trial) {
                const cplx z = test::random_point(rng, 0.95);
                CHECK(caratheodory(*m, z).real() > -1e-9);
            }
        }
    }

    SUBCASE("coefficient-defined route agrees with quadrature") {
        const MeasureSpec defined = MeasureSpec::from_coefficients(
            CoefficientSchedule::half_lattice(mu.closed_form_coefficients(256)));
        for (const cplx z : {cplx(0.4, 0.0), cplx(0.2, -0.3), cplx(-0.1, 0.5)})
            CHECK_CLOSE(caratheodory(defined, z), caratheodory(mu, z), 1e-8);
        // The moment series needs enough coefficients to reach its truncation
        // order; short schedules are rejected rather than silently truncated.
        const MeasureSpec shallow = MeasureSpec::from_coefficients(
            CoefficientSchedule::half_lattice(mu.closed_form_coefficients(8)));
        CHECK_THROWS_AS(caratheodory(shallow, cplx(0.4, 0.0)), std::invalid_argument);
    }

    SUBCASE("requires the open disk") {
        CHECK_THROWS_AS(caratheodory(mu, cplx(1.0, 0.0)), std::invalid_argument);
        CHECK_THROWS_AS(caratheodory(mu, cplx(0.8, 0.8)), std::invalid_argument);
    }
}

TEST_CASE("second-kind integral representations") {
    const MeasureSpec mu = MeasureSpec::builtin("geronimus_mu");
    const auto s = mu_schedule(6);
    const cplx z(0.25, 0.0);

    SUBCASE("frozen value at n = 1") {
        // psi_1(z) = (2z - 1)/sqrt(3).
        const SecondKindValue v = second_kind_integral(mu, s, 1, z, false);
        CHECK_CLOSE(v.psi, cplx(-0.5 / std::sqrt(3.0), 0.0), 1e-8);
    }

    SUBCASE("both written forms agree, and match the recursion for n >= 1") {
        for (int n = 0; n <= 4; ++n) {
            const SecondKindValue raw =
                second_kind_integral(mu, s, n, z, false, IntegralForm::raw);
            const SecondKindValue rew =
                second_kind_integral(mu, s, n, z, false, IntegralForm::rewritten);
            CHECK_CLOSE(raw.psi, rew.psi, 1e-8);
            CHECK_CLOSE(raw.psi_star, rew.psi_star, 1e-8);
            if (n >= 1) {
                const ValuePair rec = opuc_values(s, n, z, SzegoVariant::second_kind).back();
                CHECK_CLOSE(raw.psi, rec.v, 1e-8);
            }
        }
    }

    SUBCASE("the integral starts from zero where the recursion starts from one") {
        // Both written forms produce psi_0 = 0 identically; the recursion
        // seeds psi_0 = 1.  The offset cancels inside the combinations
        // psi + F phi that the classification uses.
        const SecondKindValue raw = second_kind_integral(mu, s, 0, z, false, IntegralForm::raw);
        const SecondKindValue rew =
            second_kind_integral(mu, s, 0, z, false, IntegralForm::rewritten);
        CHECK_CLOSE(raw.psi, cplx(0.0, 0.0), 1e-10);
        CHECK_CLOSE(rew.psi, cplx(0.0, 0.0), 1e-10);
        CHECK_CLOSE(opuc_values(s, 0, z, SzegoVariant::second_kind).back().v, cplx(1.0, 0.0),
                    0.0);
    }

    SUBCASE("constant phase scales degree n by e^{i n pi/4}") {
        const auto sr = mu_schedule(6, /*rotate=*/true);
        for (int n = 1; n <= 3; ++n) {
            const SecondKindValue rot = second_kind_integral(mu, sr, n, z, true);
            const SecondKindValue plain = second_kind_integral(mu, s, n, z, false);
            const cplx w = std::polar(1.0, n * pi / 4.0);
            CHECK_CLOSE(rot.psi, w * plain.psi, 1e-8);
            CHECK_CLOSE(rot.psi_star, w * plain.psi_star, 1e-8);
        }
    }
}

TEST_CASE("reverse second-kind values obey the disk lower bound") {
    // |psi*_n(z)|^2 >= 1 - |z|^2 for the phase-carrying family.
    std::mt19937_64 rng(151);
    for (int trial = 0; trial < 5; ++trial) {
        const auto s = trial == 0 ? mu_schedule(49, true) : random_schedule(rng, 49);
        const cplx z = test::random_point(rng, 0.9);
        const double floor_sq = 1.0 - std::norm(z);
        const auto values = opuc_values(s, 48, z, SzegoVariant::rotated_second_kind);
        for (const ValuePair& v : values) CHECK(std::norm(v.v_star) >= floor_sq - 1e-12);
    }
}

TEST_CASE("trial Weyl combinations and their verdicts") {
    SUBCASE("frozen sums at z = 0, r = 1") {
        // u_0 = 1 + 1, v_0 = -1 + 1 = 0 gives d_0 = 4; every later term
        // vanishes identically.
        const WeylSample w = weyl_residual(mu_schedule(40), cplx(0.0, 0.0), cplx(1.0, 0.0), 32);
        REQUIRE(w.partial_sums.size() == 33);
        for (const double sum : w.partial_sums) CHECK_CLOSE(cplx(sum, 0.0), cplx(4.0, 0.0), 0.0);
        CHECK(w.verdict == Verdict::square_summable);
    }

    SUBCASE("the dichotomy at the transform value") {
        const auto s = mu_schedule(140);
        const cplx z(0.5, 0.0);
        const WeylSample at_f = weyl_residual(s, z, cplx(0.5, 0.0), 128);
        CHECK(at_f.verdict == Verdict::square_summable);
        const WeylSample off_f = weyl_residual(s, z, cplx(0.6, 0.0), 128);
        CHECK(off_f.verdict == Verdict::divergent);
        CHECK(off_f.partial_sums.back() > at_f.partial_sums.back());
    }

    SUBCASE("random phase schedules split the same way at every builtin coefficient law") {
        std::mt19937_64 rng(157);
        for (const char* name : {"lebesgue", "geronimus_mu", "geronimus_nu"}) {
            const MeasureSpec m = MeasureSpec::builtin(name);
            const auto s = CoefficientSchedule::half_lattice(m.closed_form_coefficients(140));
            for (int trial = 0; trial < 10; ++trial) {
                const cplx z = test::random_point(rng, 0.8);
                const cplx f = caratheodory(m, z);
                CHECK(weyl_residual(s, z, f, 128).verdict == Verdict::square_summable);
                CHECK(weyl_residual(s, z, f + cplx(0.3, 0.0), 128).verdict ==
                      Verdict::divergent);
            }
        }
    }

    SUBCASE("too few terms stay inconclusive") {
        const WeylSample w = weyl_residual(mu_schedule(10), cplx(0.3, 0.0), cplx(0.7, 0.0), 4);
        CHECK(w.verdict == Verdict::inconclusive);
    }

    SUBCASE("input validation") {
        const auto s = mu_schedule(10);
        CHECK_THROWS_AS(weyl_residual(s, cplx(1.2, 0.0), cplx(1.0, 0.0), 8),
                        std::invalid_argument);
        CHECK_THROWS_AS(weyl_residual(s, cplx(0.3, 0.0), cplx(1.0, 0.0), 2000),
                        std::invalid_argument);
    }

    SUBCASE("verdict names") {
        CHECK(verdict_name(Verdict::square_summable) == std::string("square_summable"));
        CHECK(verdict_name(Verdict::divergent) == std::string("divergent"));
        CHECK(verdict_name(Verdict::inconclusive) == std::string("inconclusive"));
    }
}

TEST_CASE("partial sums ignore the coefficient phases") {
    std::mt19937_64 rng(163);

    SUBCASE("absolute agreement at the transform value") {
        // At r equal to the transform value the sums stay bounded, so the two
        // recursion routes can be compared absolutely at the strict tolerance.
        std::vector<cplx> alpha, zeta;
        for (int n = 0; n < 96; ++n) {
            alpha.emplace_back(-1.0 / (n + 2), 0.0);
            zeta.push_back(cmvkit::test::random_unimodular(rng));
        }
        const CoefficientSchedule s = CoefficientSchedule::half_lattice(alpha, zeta);
        const RotationReport report =
            rotation_invariance_check(s, cplx(0.5, 0.0), cplx(0.5, 0.0), 64);
        CHECK(report.rotated_sums.size() == report.standard_sums.size());
        CHECK(report.max_abs_diff <= 1e-13);
        CHECK(report.pass);
    }

    SUBCASE("relative agreement when the sums grow") {
        // Away from the transform value the sums diverge geometrically, so
        // only relative agreement of the two routes is meaningful.
        const auto s = random_schedule(rng, 140);
        const RotationReport report =
            rotation_invariance_check(s, cplx(0.5, 0.0), cplx(2.0, 0.0), 128);
        REQUIRE(report.standard_sums.size() == 129);
        for (std::size_t k = 0; k < report.rotated_sums.size(); ++k) {
            const double scale = 1.0 + std::abs(report.standard_sums[k]);
            CHECK(std::abs(report.rotated_sums[k] - report.standard_sums[k]) <= 1e-12 * scale);
        }
    }
}
