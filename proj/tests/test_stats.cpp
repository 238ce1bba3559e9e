// Statistics helpers behind the experiment reports: Wilson intervals, the
// one- and two-sided bound tests, and the quantile/critical-value fits.
#include <doctest.h>

#include <lcsim/stats.hpp>

using namespace lcsim;

TEST_CASE("Wilson interval basics") {
    WilsonInterval w = wilson_interval(30, 100);
    CHECK(w.lo > 0.0);
    CHECK(w.hi < 1.0);
    CHECK(w.lo < 0.3);
    CHECK(w.hi > 0.3);
    SUBCASE("degenerate corners stay inside [0,1]") {
        WilsonInterval zero = wilson_interval(0, 50);
        CHECK(zero.lo == doctest::Approx(0.0));
        CHECK(zero.hi > 0.0);
        CHECK(zero.hi < 0.2);
        WilsonInterval all = wilson_interval(50, 50);
        CHECK(all.hi == doctest::Approx(1.0));
        CHECK(all.lo < 1.0);
        CHECK(all.lo > 0.8);
    }
    SUBCASE("interval tightens with more trials") {
        WilsonInterval small = wilson_interval(10, 100);
        WilsonInterval big = wilson_interval(1000, 10000);
        CHECK(big.hi - big.lo < small.hi - small.lo);
    }
}

TEST_CASE("binomial standard error") {
    CHECK(binomial_se(0.5, 100) == doctest::Approx(0.05));
    CHECK(binomial_se(0.0, 100) == doctest::Approx(0.0));
    CHECK(binomial_se(0.2, 400) == doctest::Approx(0.02));
}

TEST_CASE("one-sided and two-sided bound tests") {
    // 3-SE slack around a bound of 0.2 over 400 trials: SE = 0.02
    CHECK(upper_bound_holds(80, 400, 0.2));        // exactly at the bound
    CHECK(upper_bound_holds(103, 400, 0.2));       // within slack
    CHECK_FALSE(upper_bound_holds(105, 400, 0.2)); // beyond bound + 3 SE
    CHECK(upper_bound_holds(0, 400, 0.2));         // below never fails

    CHECK(lower_bound_holds(80, 400, 0.2));
    CHECK(lower_bound_holds(57, 400, 0.2));
    CHECK_FALSE(lower_bound_holds(55, 400, 0.2));
    CHECK(lower_bound_holds(400, 400, 0.2));

    CHECK(two_sided_holds(80, 400, 0.2));
    CHECK_FALSE(two_sided_holds(55, 400, 0.2));
    CHECK_FALSE(two_sided_holds(105, 400, 0.2));
}

TEST_CASE("z-score convention") {
    CHECK(z_score(104, 400, 0.2) == doctest::Approx(3.0));
    CHECK(z_score(56, 400, 0.2) == doctest::Approx(-3.0));
    CHECK(z_score(80, 400, 0.2) == doctest::Approx(0.0));
    CHECK(z_score(7, 10, 0.0) == 0.0);  // zero-variance reference degrades gracefully
}

TEST_CASE("normal quantile fit") {
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959964).epsilon(1e-4));
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(normal_quantile(0.995) == doctest::Approx(2.575829).epsilon(1e-4));
    CHECK(normal_quantile(0.025) == doctest::Approx(-1.959964).epsilon(1e-4));
}

TEST_CASE("chi-square critical values near the table") {
    CHECK(chi_square_critical(2, 0.01) == doctest::Approx(9.21).epsilon(0.02));
    CHECK(chi_square_critical(11, 0.01) == doctest::Approx(24.725).epsilon(0.02));
    CHECK(chi_square_critical(5, 0.05) == doctest::Approx(11.07).epsilon(0.02));
}
