#include <cmath>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"

#include "cosparse/experiments.hpp"

using namespace cosparse;

TEST_SUITE("experiments") {

TEST_CASE("staircase path, worked example n = 8, eps = 0.5") {
    // y = (-1, -1, -0.5, -0.5, 0.5, 0.5, 1, 1); below lambda1 the outer
    // pairs move inward by lambda / 2 and the inner pairs stay put.
    const Vec y = staircase_observation(8, 0.5);
    Vec expected_y(8);
    expected_y << -1, -1, -0.5, -0.5, 0.5, 0.5, 1, 1;
    CHECK(y == expected_y);
    const auto br = staircase_breaks(8, 0.5);
    CHECK(br.lambda1 == doctest::Approx(1.0));
    CHECK(br.lambda2 == doctest::Approx(3.0));
    const Vec x = staircase_closed_form(8, 0.5, 0.5);
    Vec expected(8);
    expected << -0.75, -0.75, -0.5, -0.5, 0.5, 0.5, 0.75, 0.75;
    CHECK((x - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("staircase closed form agrees with a direct solve everywhere on the grid") {
    for (double eps : {0.5, -0.5}) {
        const auto run = run_tv_staircase(8, eps, staircase_lambda_grid(8, eps, 12));
        for (const auto& p : run.points) {
            CHECK(p.deviation < 1e-8);
            CHECK(p.certified);
        }
    }
}

TEST_CASE("staircase path beyond lambda2 is identically zero, and eps < 0 empties the middle") {
    const auto br = staircase_breaks(16, 0.5);
    CHECK(staircase_closed_form(16, 0.5, 1.1 * br.lambda2).cwiseAbs().maxCoeff() == 0.0);
    const auto neg = staircase_breaks(16, -0.5);
    const Vec x = staircase_closed_form(16, -0.5, 0.5 * (neg.lambda1 + neg.lambda2));
    CHECK(x.segment(4, 8).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(x[0] < 0.0);
    CHECK(x[15] > 0.0);
}

TEST_CASE("staircase table columns") {
    const auto run = run_tv_staircase(8, 0.5, {0.0, 0.5});
    const Table t = staircase_table(run);
    CHECK(t.rows.size() == 2);
    CHECK_NOTHROW(t.column("lambda"));
    CHECK_THROWS_AS(t.column("nope"), DataError);
}

TEST_CASE("Haar boxcar and sweep size") {
    const Block b = haar_boxcar_block(64, 0.2);
    CHECK(b.first == 19);
    CHECK(b.last == 44);
    const auto run = run_haar_deconv(32, 2, {0.5, 1.0}, {0.5, 1.0, 1.5}, 0.2);
    CHECK(run.points.size() == 3 * 3);
    for (const auto& p : run.points) CHECK(std::isfinite(p.ic));
    CHECK(haar_table(run).rows.size() == 9);
}

TEST_CASE("fused boxcars") {
    const auto [a, b] = fused_boxcar_blocks(32, 0.1, 0.1);
    CHECK(a.first == 9);
    CHECK(a.last == 12);
    CHECK(b.first == 19);
    CHECK(b.last == 22);
    const Vec x = fused_signal(32, 0.1, 0.1);
    CHECK(x.sum() == 6.0);
}

TEST_CASE("fused Monte Carlo: probabilities in range and independent of the thread count") {
    FusedConfig cfg;
    cfg.n = 16;
    cfg.reps = 6;
    cfg.epsilon = 0.5;
    cfg.axis_values = {0.6, 1.0};
    cfg.threads = 1;
    const auto one = run_fused_cs(cfg);
    cfg.threads = 3;
    const auto three = run_fused_cs(cfg);
    CHECK(write_table(fused_table(one)) == write_table(fused_table(three)));
    REQUIRE(one.cells.size() == 4);
    for (const auto& c : one.cells) {
        CHECK(c.probability >= 0.0);
        CHECK(c.probability <= 1.0);
        CHECK(c.interval.low <= c.probability);
        CHECK(c.probability <= c.interval.high);
    }
    cfg.seed = 2;
    CHECK(write_table(fused_table(run_fused_cs(cfg))) != write_table(fused_table(one)));
}

TEST_CASE("Wilson interval") {
    // 5 of 10: centre 0.5, half width z sqrt(0.025 + z^2/400) / (1 + z^2/10).
    const auto w = wilson_interval(5, 10);
    const double z = 1.959963984540054;
    const double half = z * std::sqrt(0.025 + z * z / 400.0) / (1.0 + z * z / 10.0);
    CHECK(w.low == doctest::Approx(0.5 - half).epsilon(1e-12));
    CHECK(w.high == doctest::Approx(0.5 + half).epsilon(1e-12));
    CHECK(wilson_interval(0, 10).low == 0.0);
    CHECK(wilson_interval(10, 10).high == doctest::Approx(1.0));
}

TEST_CASE("Spearman correlation") {
    CHECK(spearman({1, 2, 3, 4}, {10, 20, 30, 40}) == doctest::Approx(1.0));
    CHECK(spearman({1, 2, 3, 4}, {4, 3, 2, 1}) == doctest::Approx(-1.0));
    // Ties get average ranks: y ranks (1.5, 1.5, 3, 4), Pearson of ranks.
    CHECK(spearman({1, 2, 3, 4}, {0, 0, 1, 2}) == doctest::Approx(0.9486832980505138));
    CHECK(std::isnan(spearman({1, 2, 3}, {5, 5, 5})));
}

TEST_CASE("grid parsing") {
    CHECK(parse_grid("0.5,1,2") == std::vector<double>{0.5, 1.0, 2.0});
    const auto g = parse_grid("0.5:0.25:3.0");
    CHECK(g.size() == 11);
    CHECK(g.back() == doctest::Approx(3.0));
    CHECK_THROWS_AS(parse_grid("1:0:2"), UsageError);
    CHECK_THROWS_AS(parse_grid("a,b"), UsageError);
}

TEST_CASE("replication seeds are distinct and stable") {
    CHECK(replication_seed(1, 0, 0) != replication_seed(1, 0, 1));
    CHECK(replication_seed(1, 0, 1) != replication_seed(1, 1, 0));
    CHECK(replication_seed(7, 3, 4) == replication_seed(7, 3, 4));
    CHECK((replication_seed(1, 2, 3) ^ replication_seed(5, 2, 3)) == (1u ^ 5u));
}

TEST_CASE("experiment dispatch validates names and keys") {
    ExperimentSpec spec;
    spec.name = "nope";
    CHECK_THROWS_AS(run_experiment(spec), UsageError);
    spec.name = "tv_staircase";
    spec.parameters["bogus"] = "1";
    CHECK_THROWS_AS(run_experiment(spec), UsageError);
    spec.parameters = {{"n", "8"}, {"eps", "0.5"}, {"points", "5"}};
    const Table t = run_experiment(spec);
    CHECK(t.rows.size() == 5);
    std::ostringstream os;
    write_table(os, t);
    CHECK(os.str().rfind("# ", 0) == 0);
}

}
