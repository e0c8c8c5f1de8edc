#include <doctest.h>

#include <cmath>
#include <vector>

#include "tsx/additivity.hpp"
#include "tsx/sampling.hpp"

using namespace tsx;
using doctest::Approx;

namespace {

// Independent oracle: residual written from scratch (powers of the explicit
// spectrum) and plain interval bisection, no library calls.
double oracle_residual(double p, double kappa, double q, double z) {
    const double b = p * (1.0 - p) - kappa;
    const double lam[4] = {p * p + kappa, b + z, b - z, (1.0 - p) * (1.0 - p) + kappa};
    auto sq = [q](const double* v, int n) {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            if (v[i] > 1e-15) s += std::pow(v[i], q);
        return (1.0 - s) / (q - 1.0);
    };
    const double marg[2] = {p, 1.0 - p};
    return sq(lam, 4) - 2.0 * sq(marg, 2);
}

double oracle_bisect(double p, double q, double z, double lo, double hi) {
    double r_lo = oracle_residual(p, lo, q, z);
    for (int i = 0; i < 120; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double r_mid = oracle_residual(p, mid, q, z);
        if ((r_mid < 0.0) == (r_lo < 0.0)) {
            lo = mid;
            r_lo = r_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// kappa* at p = q = 1/2, z = 0 from squaring the additivity condition:
// with u = sqrt(1/4 + kappa), v = sqrt(1/4 - kappa) the condition reads
// u + v = sqrt(2) - 1/2, and u^2 v^2 = 1/16 - kappa^2.
double closed_form_half() {
    const double s = std::sqrt(2.0) - 0.5;
    const double uv = (s * s - 0.5) / 2.0;
    return std::sqrt(1.0 / 16.0 - uv * uv);
}

} // namespace

TEST_CASE("additivity_residual: examples") {
    CHECK(std::abs(additivity_residual(0.5, 0.0, QIndex{1.0}, 0.0)) <= 1e-12);

    // S_q(AB) = 2, 2 S_q(A) = 4 (sqrt(2) - 1): residual = 6 - 4 sqrt(2)
    CHECK(additivity_residual(0.5, 0.0, QIndex{0.5}, 0.0) ==
          Approx(6.0 - 4.0 * std::sqrt(2.0)).epsilon(1e-14));
    CHECK(additivity_residual(0.5, 0.0, QIndex{0.5}, 0.0) == Approx(0.3431458).epsilon(1e-6));

    CHECK(std::abs(additivity_residual(0.5, closed_form_half(), QIndex{0.5}, 0.0)) <= 1e-9);

    CHECK_THROWS_AS(additivity_residual(0.5, 0.3, QIndex{0.5}, 0.0), std::domain_error);
    CHECK_THROWS_AS(additivity_residual(0.5, 0.0, QIndex{0.5}, 0.4), std::domain_error);
}

TEST_CASE("oracle residual matches library residual") {
    DeterministicRng rng(31);
    for (int i = 0; i < 200; ++i) {
        const StateParams params = sample_feasible(rng, false);
        const double q = rng.uniform(0.05, 0.999);
        CHECK(additivity_residual(params.p, params.kappa, QIndex{q}, params.z_mag) ==
              Approx(oracle_residual(params.p, params.kappa, q, params.z_mag))
                  .epsilon(1e-12)
                  .scale(1.0));
    }
}

TEST_CASE("solve_kappa at p = q = 1/2, z = 0: closed form") {
    const auto roots = solve_kappa(0.5, QIndex{0.5}, 0.0, 1e-10);
    REQUIRE(roots.size() == 2); // the residual is even in kappa at p = 1/2
    CHECK(roots[0].kappa_star == Approx(-closed_form_half()).epsilon(1e-9));
    CHECK(roots[1].kappa_star == Approx(closed_form_half()).epsilon(1e-9));
    CHECK(canonical_root(roots).kappa_star == Approx(closed_form_half()).epsilon(1e-9));
    CHECK(canonical_root(roots).kappa_star == Approx(0.1852346).epsilon(1e-6));
    for (const auto& r : roots) {
        CHECK(std::abs(r.residual_at_root) <= 1e-9);
        CHECK(r.iterations > 0);
        CHECK_FALSE(r.on_boundary);
        CHECK(r.bracket.first <= r.kappa_star);
        CHECK(r.kappa_star <= r.bracket.second);
    }
}

TEST_CASE("solve_kappa: p = 0.3 and the oracle bracket") {
    const auto roots = solve_kappa(0.3, QIndex{0.5}, 0.0, 1e-8);
    REQUIRE(roots.size() == 2);
    // hand-bracketed positive root
    const double oracle = oracle_bisect(0.3, 0.5, 0.0, 0.154, 0.155);
    CHECK(canonical_root(roots).kappa_star == Approx(oracle).epsilon(1e-7));
    CHECK(canonical_root(roots).kappa_star == Approx(0.1544).epsilon(1e-3));

    const auto mirrored = solve_kappa(0.7, QIndex{0.5}, 0.0, 1e-8);
    REQUIRE(mirrored.size() == 2);
    CHECK(mirrored[0].kappa_star == Approx(roots[0].kappa_star).epsilon(1e-8).scale(1.0));
    CHECK(mirrored[1].kappa_star == Approx(roots[1].kappa_star).epsilon(1e-8).scale(1.0));
}

TEST_CASE("solve_kappa: z = 0.2") {
    const auto roots = solve_kappa(0.5, QIndex{0.5}, 0.2, 1e-8);
    REQUIRE(roots.size() == 2);
    const double oracle = oracle_bisect(0.5, 0.5, 0.2, 0.03, 0.04); // residual + at 0.03, - at 0.04
    CHECK(oracle_residual(0.5, 0.03, 0.5, 0.2) > 0.0);
    CHECK(oracle_residual(0.5, 0.04, 0.5, 0.2) < 0.0);
    CHECK(canonical_root(roots).kappa_star == Approx(oracle).epsilon(1e-7));
    CHECK(canonical_root(roots).kappa_star == Approx(0.0369).epsilon(1e-3));
}

TEST_CASE("solve_kappa: q = 1 and degenerate corners") {
    const auto product = solve_kappa(0.4, QIndex{1.0}, 0.0, 1e-10);
    REQUIRE(product.size() == 1);
    CHECK(product[0].kappa_star == 0.0);
    CHECK(std::abs(product[0].residual_at_root) <= 1e-12);

    CHECK(solve_kappa(0.5, QIndex{1.0}, 0.2, 1e-10).empty());

    const auto pure = solve_kappa(0.0, QIndex{0.5}, 0.0, 1e-10);
    REQUIRE(pure.size() == 1);
    CHECK(pure[0].kappa_star == 0.0);
    CHECK(pure[0].on_boundary);
    CHECK(solve_kappa(1.0, QIndex{0.5}, 0.1, 1e-10).empty());

    // void feasible interval
    CHECK(solve_kappa(0.9, QIndex{0.5}, 0.2, 1e-10).empty());
}

TEST_CASE("solve_kappa rejects malformed input") {
    CHECK_THROWS_AS(solve_kappa(-0.1, QIndex{0.5}, 0.0, 1e-10), std::invalid_argument);
    CHECK_THROWS_AS(solve_kappa(0.5, QIndex{0.5}, -0.1, 1e-10), std::invalid_argument);
    CHECK_THROWS_AS(solve_kappa(0.5, QIndex{0.5}, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("every returned root is feasible with a small residual") {
    DeterministicRng rng(32);
    const double tol = 1e-10;
    for (int i = 0; i < 60; ++i) {
        const double p = rng.uniform(0.02, 0.98);
        const double q = rng.uniform(0.1, 0.95);
        const double z = rng.uniform(0.0, 0.25);
        for (const auto& root : solve_kappa(p, QIndex{q}, z, tol)) {
            CHECK(is_feasible({p, root.kappa_star, z, 0.0}).ok);
            const double residual = additivity_residual(p, root.kappa_star, QIndex{q}, z);
            CHECK(std::abs(residual) <= 1e-8);
            // Away from feasibility edges the residual meets 10*tol; a root
            // pinned within machine resolution of an edge cannot (the
            // lambda^(q-1) slope amplifies the kappa quantization noise).
            const auto spec = eigenvalues({p, root.kappa_star, z, 0.0});
            const double edge_distance =
                std::min({spec.lambda[0], spec.lambda[2], spec.lambda[3]});
            if (edge_distance >= 1e-6)
                CHECK(std::abs(residual) <= 10.0 * tol);
        }
    }
}

TEST_CASE("root sets are symmetric under p <-> 1-p") {
    DeterministicRng rng(33);
    for (int i = 0; i < 40; ++i) {
        const double p = rng.uniform(0.05, 0.95);
        const double q = rng.uniform(0.2, 0.9);
        const double z = rng.uniform(0.0, 0.2);
        const auto a = solve_kappa(p, QIndex{q}, z, 1e-10);
        const auto b = solve_kappa(1.0 - p, QIndex{q}, z, 1e-10);
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k)
            CHECK(std::abs(a[k].kappa_star - b[k].kappa_star) <= 1e-9);
    }
}

TEST_CASE("roots are stable under tolerance refinement") {
    struct Point {
        double p, q, z;
    };
    for (const Point& pt : {Point{0.3, 0.5, 0.0}, Point{0.5, 0.5, 0.2}, Point{0.62, 0.7, 0.1}}) {
        const double coarse =
            canonical_root(solve_kappa(pt.p, QIndex{pt.q}, pt.z, 1e-10)).kappa_star;
        const double fine =
            canonical_root(solve_kappa(pt.p, QIndex{pt.q}, pt.z, 1e-11)).kappa_star;
        CHECK(std::abs(coarse - fine) < 1e-10);
    }
}

TEST_CASE("kappa* -> 0 as q -> 1 at z = 0") {
    for (double p : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
        const auto roots = solve_kappa(p, QIndex{0.999}, 0.0, 1e-10);
        REQUIRE_FALSE(roots.empty());
        CHECK(std::abs(canonical_root(roots).kappa_star) < 0.01);
    }
}

TEST_CASE("canonical_root prefers the nonnegative branch") {
    const auto roots = solve_kappa(0.3, QIndex{0.5}, 0.0, 1e-10);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].kappa_star < 0.0);
    CHECK(std::abs(roots[0].kappa_star) < roots[1].kappa_star); // negative root is closer to 0
    CHECK(canonical_root(roots).kappa_star == roots[1].kappa_star);

    // all-negative root sets fall back to the smallest magnitude
    const auto negatives = solve_kappa(0.3, QIndex{0.5}, 0.2, 1e-10);
    REQUIRE(negatives.size() == 2);
    CHECK(negatives[0].kappa_star < 0.0);
    CHECK(negatives[1].kappa_star < 0.0);
    CHECK(canonical_root(negatives).kappa_star == negatives[1].kappa_star);

    CHECK_THROWS_AS(canonical_root({}), std::invalid_argument);
}

TEST_CASE("solvable_range: z = 0 covers (0,1)") {
    const SolvableRange range = solvable_range(QIndex{0.5}, 0.0, 0.01);
    REQUIRE(range.intervals.size() == 1);
    CHECK(range.intervals[0].first <= 0.01);
    CHECK(range.intervals[0].second >= 0.99);
    CHECK(range.total_measure() > 0.98);
}

TEST_CASE("solvable_range: q = 1 with z > 0 is empty") {
    const SolvableRange range = solvable_range(QIndex{1.0}, 0.2, 0.01);
    CHECK(range.intervals.empty());
    CHECK(range.total_measure() == 0.0);
}

TEST_CASE("solvable_range: restricted ranges shrink with q at z = 0.2") {
    const SolvableRange mid = solvable_range(QIndex{0.5}, 0.2, 0.01);
    const SolvableRange high = solvable_range(QIndex{0.7}, 0.2, 0.01);

    REQUIRE(mid.intervals.size() == 1);
    CHECK(mid.intervals[0].first > 0.25);
    CHECK(mid.intervals[0].first < 0.30);
    CHECK(mid.intervals[0].second > 0.70);
    CHECK(mid.intervals[0].second < 0.75);

    REQUIRE(high.intervals.size() == 1);
    CHECK(high.intervals[0].first > 0.42);
    CHECK(high.intervals[0].first < 0.48);
    CHECK(high.intervals[0].second > 0.52);
    CHECK(high.intervals[0].second < 0.58);

    CHECK(high.total_measure() < mid.total_measure());

    for (const auto& range : {mid, high}) {
        double prev_end = 0.0;
        for (const auto& [lo, hi] : range.intervals) {
            CHECK(lo >= prev_end);
            CHECK(lo <= hi);
            CHECK(lo >= 0.0);
            CHECK(hi <= 1.0);
            prev_end = hi;
        }
    }
}

TEST_CASE("solvable_range validates p_step") {
    CHECK_THROWS_AS(solvable_range(QIndex{0.5}, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(solvable_range(QIndex{0.5}, 0.0, 0.2), std::invalid_argument);
}
