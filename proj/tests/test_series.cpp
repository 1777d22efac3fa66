#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "jsd/divergence.hpp"
#include "jsd/errors.hpp"
#include "jsd/pairgen.hpp"
#include "jsd/rng.hpp"

using namespace jsd;

namespace {

GeneratedPair seeded_pair(std::size_t n, double target, double alpha, std::uint64_t seed) {
    GenSpec spec;
    spec.n = n;
    spec.target_log10_eps = target;
    spec.alpha = alpha;
    spec.seed = seed;
    return sample_pair(spec);
}

} // namespace

TEST_CASE("per-bin series matches frozen values") {
    CHECK(delta_series(0.2, 0.0, 2) == doctest::Approx(0.04).epsilon(1e-14));
    CHECK(delta_series(0.2, 0.0, 12) == doctest::Approx(0.040271027099520928).epsilon(1e-15));
}

TEST_CASE("order one reproduces the quadratic lead term") {
    const WeightedPair pair({0.6, 0.4}, {0.4, 0.6});
    CHECK(jsd_series(pair, 1).value == doctest::Approx(0.02).epsilon(1e-13));
    for (double alpha : {0.0, 0.3, -0.3, 0.9, -0.9}) {
        const GeneratedPair gp = seeded_pair(25, -2.0, alpha, 3100 + static_cast<int>(alpha * 10));
        const ReducedForm rf = reduce(gp.pair);
        double quad = 0.0;
        for (std::size_t j = 0; j < rf.size(); ++j)
            quad += rf.pbar[j] * (rf.eps[j] * rf.eps[j]);
        const double lead = 0.5 * (1.0 - rf.alpha * rf.alpha) * quad;
        CHECK(jsd_series(gp.pair, 1).value == doctest::Approx(lead).epsilon(1e-13));
    }
}

TEST_CASE("series converges to the frozen two-bin value") {
    const WeightedPair pair({0.6, 0.4}, {0.4, 0.6});
    CHECK(jsd_series(pair, 30).value == doctest::Approx(0.020135513550688864).epsilon(1e-14));
}

TEST_CASE("truncations are nonnegative at every order") {
    long violations = 0;
    int idx = 0;
    for (std::size_t n : {2u, 10u, 100u}) {
        for (double alpha : {0.0, 0.3, -0.3, 0.9, -0.9}) {
            for (int t = 0; t < 34; ++t) {
                const double target = -7.5 + 7.0 * (t / 33.0);
                const GeneratedPair gp = seeded_pair(n, target, alpha, 40000 + idx++);
                for (int k = 1; k <= 12; ++k) {
                    if (jsd_series(gp.pair, k).value < 0.0) ++violations;
                }
            }
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("even truncations grow monotonically in floating point") {
    long violations = 0;
    for (int t = 0; t < 100; ++t) {
        const double alpha = -0.9 + 1.8 * (t / 99.0);
        const GeneratedPair gp = seeded_pair(20, -1.0 - 0.02 * t, alpha, 52000 + t);
        double prev = jsd_series(gp.pair, 2).value;
        for (int k = 4; k <= 16; k += 2) {
            const double cur = jsd_series(gp.pair, k).value;
            if (cur < prev) ++violations;
            prev = cur;
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("series approaches the reduced exact form") {
    int tested = 0;
    for (int t = 0; t < 300; ++t) {
        const double alpha = (t % 3 == 0) ? 0.0 : ((t % 3 == 1) ? 0.4 : -0.7);
        const GeneratedPair gp = seeded_pair(40, -0.6, alpha, 61000 + t);
        const ReducedForm rf = reduce(gp.pair);
        double max_eps = 0.0;
        for (double e : rf.eps) max_eps = std::max(max_eps, std::fabs(e));
        if (max_eps > 0.6) continue;
        ++tested;
        const double exact = jsd_exact_reduced(gp.pair).value;
        const double series = jsd_series(gp.pair, 40).value;
        CHECK(std::fabs(series - exact) <= 1e-9 * exact);
    }
    CHECK(tested >= 100);
}

TEST_CASE("series in bits matches the independent power-loop construction") {
    Rng rng(0xB17);
    for (int t = 0; t < 100; ++t) {
        const double alpha = -0.9 + 1.8 * rng.uniform01();
        const double target = -3.5 + 3.2 * rng.uniform01();
        const GeneratedPair gp = seeded_pair(12, target, alpha, 70000 + t);
        for (int k = 1; k <= 20; ++k) {
            const double mine = jsd_series(gp.pair, k, Units::bits).value;
            const double reference = testutil::series_power_loop_bits(gp.pair, k + 1);
            CHECK(std::fabs(mine - reference) <=
                  1e-13 * (std::fabs(mine) + std::fabs(reference)) + 1e-300);
        }
    }
}

TEST_CASE("auto evaluation resolves order against its tolerance") {
    const GeneratedPair fine = seeded_pair(50, -4.0, 0.0, 81001);
    const EvalResult loose = jsd_auto(fine.pair, 1e-6);
    const EvalResult tight = jsd_auto(fine.pair, 1e-14);
    CHECK(loose.order.value() <= tight.order.value());
    CHECK(tight.value == doctest::Approx(jsd_exact_reduced(fine.pair).value).epsilon(1e-11));

    const GeneratedPair coarse = seeded_pair(50, -0.15, 0.0, 81002);
    const ReducedForm rf = reduce(coarse.pair);
    double max_eps = 0.0;
    for (double e : rf.eps) max_eps = std::max(max_eps, std::fabs(e));
    if (max_eps >= 0.5) {
        const EvalResult r = jsd_auto(coarse.pair);
        CHECK(r.method == Method::exact_reduced);
        CHECK(r.value == jsd_exact_reduced(coarse.pair).value);
    }
}

TEST_CASE("series handles boundary bins") {
    const WeightedPair pair({0.5, 0.5, 0.0}, {0.5, 0.0, 0.5});
    const EvalResult r = jsd_series(pair, 20);
    CHECK(r.value >= 0.0);
    CHECK(r.diagnostics.boundary_eps);
    CHECK(std::isfinite(r.value));
}
