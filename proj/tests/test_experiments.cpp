#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sphlab/experiments.hpp"
#include "sphlab/regions.hpp"
#include "sphlab/report.hpp"

using namespace sphlab;

TEST_CASE("region vertices") {
    auto R5 = make_region("R", 5);
    REQUIRE(R5.vertices.size() == 3);
    CHECK(R5.vertices[0].ip == 0.0);
    CHECK(R5.vertices[0].ir == 1.0);
    CHECK(R5.vertices[1].ip == Catch::Approx(0.6));
    CHECK(R5.vertices[1].ir == Catch::Approx(0.4));
    CHECK(R5.vertices[2].ip == Catch::Approx(0.6));
    CHECK(R5.vertices[2].ir == Catch::Approx(0.6));

    auto S5 = make_region("S", 5);
    CHECK(S5.vertices[0].ip == Catch::Approx(0.4));
    CHECK(S5.vertices[0].ir == Catch::Approx(0.6));

    auto T5 = make_region("T", 5);
    REQUIRE(T5.vertices.size() == 4);
    CHECK(T5.vertices[3].ip == Catch::Approx(20.0 / 26.0));
    CHECK(T5.vertices[3].ir == Catch::Approx(22.0 / 26.0));

    CHECK_THROWS_AS(make_region("X", 5), std::invalid_argument);
}

TEST_CASE("region membership is the strict interior") {
    auto R5 = make_region("R", 5);
    CHECK(region_contains(R5, {0.5, 0.55}));
    CHECK(region_contains(R5, {0.55, 0.55}));
    CHECK(!region_contains(R5, {0.0, 1.0}));   // vertex
    CHECK(!region_contains(R5, {0.5, 0.5}));   // on the duality edge 1/p + 1/r = 1
    CHECK(!region_contains(R5, {0.6, 0.5}));   // on the edge 1/p = 0.6
    CHECK(!region_contains(R5, {0.7, 0.5}));   // outside
    CHECK(!region_contains(R5, {0.1, 0.1}));   // below the lower edge

    auto T5 = make_region("T", 5);
    CHECK(region_contains(T5, {0.5, 0.6}));
    CHECK(region_contains(T5, {0.7, 0.83}));   // inside only thanks to the fourth vertex
    Region tri = T5;
    tri.vertices.pop_back();
    CHECK(!region_contains(tri, {0.7, 0.83}));
}

TEST_CASE("necessary condition") {
    CHECK(necessary_condition({0.6, 0.6}, 5));      // boundary point: 0.6 + 0.4 = 1
    CHECK(!necessary_condition({0.7, 0.2}, 5));     // 0.7 + 0.4 > 1
    CHECK(necessary_condition({0.0, 0.0}, 5));
    CHECK(!necessary_condition({0.5, 0.9}, 5));     // 0.9 + 0.2 > 1
}

TEST_CASE("membership implies the necessary condition on a grid") {
    for (int d = 5; d <= 9; ++d) {
        auto R = make_region("R", d);
        int inside = 0;
        for (int i = 0; i <= 100; ++i)
            for (int j = 0; j <= 100; ++j) {
                const ExponentPair pair{i / 100.0, j / 100.0};
                if (region_contains(R, pair)) {
                    ++inside;
                    CHECK(necessary_condition(pair, d));
                }
            }
        CHECK(inside > 0);
    }
}

TEST_CASE("exponent fit requires three positive points") {
    CHECK_THROWS_AS(fit_log2_slope({{2.0, 1.0}, {4.0, 2.0}}), std::invalid_argument);
    CHECK(fit_log2_slope({{2.0, 4.0}, {4.0, 16.0}, {8.0, 64.0}}) == Catch::Approx(2.0));
}

TEST_CASE("point-mass counterexample at d = 5") {
    const std::vector<std::int64_t> lambdas = {8, 16, 32, 64};
    // corner: saturation, bound respected
    auto corner = counterexample_delta(5, 1.0 / 0.6, 1.0 / 0.6, lambdas);
    CHECK(corner.fitted_slope == Catch::Approx(-1.0).margin(0.1));
    CHECK(corner.reference_slope == Catch::Approx(-1.0));
    CHECK(corner.pass);
    CHECK_FALSE(corner.violation);

    // past the corner: measured growth outruns the bound
    auto beyond = counterexample_delta(5, 1.0 / 0.8, 1.0 / 0.8, lambdas);
    CHECK(beyond.fitted_slope > beyond.reference_slope + 0.5);
    CHECK(beyond.pass);
    CHECK(beyond.violation);

    // 1/p = 0: maximal slack, ratio shrinking
    auto slack = counterexample_delta(5, 1e9, 1.0 / 0.6, lambdas);
    CHECK(slack.fitted_slope < slack.reference_slope - 0.5);
    CHECK(slack.pass);
}

TEST_CASE("shell counterexample at d = 5") {
    const std::vector<std::int64_t> lambdas = {8, 16, 32, 64};
    // saturation happens where 1/r + 2/(pd) = 1: at 1/p = 0.6 that is 1/r = 0.76
    auto corner = counterexample_shell(5, 1.0 / 0.6, 1.0 / 0.76, lambdas);
    CHECK(corner.fitted_slope == Catch::Approx(corner.reference_slope).margin(0.1));
    CHECK(corner.pass);

    // violating 1/r + 2/(pd): 1/r = 0.8, 1/p = 0.6 -> 0.8 + 0.24 > 1
    auto beyond = counterexample_shell(5, 1.0 / 0.6, 1.0 / 0.8, lambdas);
    CHECK(beyond.pass);
    CHECK(beyond.violation);

    auto slack = counterexample_shell(5, 1.0 / 0.6, 1e9, lambdas);
    CHECK(slack.pass);
    CHECK_FALSE(slack.violation);
}

TEST_CASE("sparse-form counterexample at d = 5") {
    const std::vector<std::int64_t> lambdas = {8, 16, 32, 64};
    // 1/p = 0.6: pairing slope 2 equals d(1 - 1/p) = 2, ratio flat
    auto corner = counterexample_sparse(5, 1.0 / 0.6, 1.0 / 0.6, lambdas);
    CHECK(corner.fitted_slope == Catch::Approx(2.0).margin(0.1));
    CHECK(corner.reference_slope == Catch::Approx(2.0).margin(0.1));
    CHECK(corner.pass);

    // 1/p = 0.7: pairing outgrows the form bound (2 > 1.5)
    auto beyond = counterexample_sparse(5, 1.0 / 0.7, 1.0 / 0.6, lambdas);
    CHECK(beyond.reference_slope == Catch::Approx(1.5).margin(0.1));
    CHECK(beyond.pass);

    // 1/p = 0: the minimal-cube term grows with exponent d; the full tower
    // does not converge there (duality unbroken), so nothing can be violated
    auto slack = counterexample_sparse(5, 1e9, 1.0 / 0.6, lambdas);
    CHECK(slack.reference_slope == Catch::Approx(5.0).margin(0.1));
    CHECK_FALSE(slack.violation);
    CHECK(slack.pass);
}

TEST_CASE("verdict boundary coincides with the necessary condition") {
    // the capture bound in the sparse tower is out of its small-scale
    // transition regime from Lambda ~ 32 on
    const std::vector<std::int64_t> lambdas = {32, 64, 128, 256};
    for (double ip : {0.3, 0.5, 0.58, 0.62, 0.7, 0.8}) {
        for (double ir : {0.3, 0.55, 0.7, 0.85}) {
            auto rep_delta = counterexample_delta(5, 1.0 / ip, 1.0 / ir, lambdas);
            auto rep_shell = counterexample_shell(5, 1.0 / ip, 1.0 / ir, lambdas);
            auto rep_sparse = counterexample_sparse(5, 1.0 / ip, 1.0 / ir, lambdas);
            CHECK(rep_delta.pass);
            CHECK(rep_shell.pass);
            CHECK(rep_sparse.pass);
            const bool any_violated =
                rep_delta.violation || rep_shell.violation || rep_sparse.violation;
            CHECK(any_violated == !necessary_condition({ip, ir}, 5));
        }
    }
}

TEST_CASE("improving sweep at the corner and inside") {
    auto corner = improving_sweep(5, 1.0 / 0.6, 1.0 / 0.6, {8, 16, 32, 64});
    CHECK(corner.fitted_slope == Catch::Approx(-1.0).margin(0.1));
    CHECK(corner.pass);

    auto interior = improving_sweep(5, 1.0 / 0.4, 1.0 / 0.4, {8, 16, 32, 64});
    CHECK(interior.fitted_slope < interior.reference_slope - 0.5);
    CHECK(interior.pass);
}

TEST_CASE("report emission") {
    ExperimentReport rep;
    rep.id = "demo";
    rep.params = "d=5";
    rep.rows = {{2.0, 1.5, 0.5, -1.0}, {4.0, 0.8, 0.25, -1.0}};
    rep.fitted_slope = -0.9;
    rep.reference_slope = -1.0;
    rep.pass = true;
    const auto csv = rep.csv();
    CHECK(csv.find("Lambda,measured,bound,reference_exponent") != std::string::npos);
    CHECK(csv.find("pass=1") != std::string::npos);
    const auto j = rep.json();
    CHECK(j.at("rows").size() == 2);
    CHECK(j.at("pass").get<bool>());
    const auto plot = plot_data(rep);
    CHECK(plot == "2 1.5\n4 0.8\n");
}

TEST_CASE("shell arithmetic is exact; the float path tracks it to 1e-9") {
    // the pairing of the point mass against the annulus is an exact integer
    // (one per nonempty shell); cross-check against brute-force enumeration
    const int d = 5;
    const std::int64_t Lam = 4;
    auto counts = shell_count_table(d, 4 * Lam * Lam);
    std::int64_t pairing = 0;
    for (std::int64_t n = Lam * Lam; n < 4 * Lam * Lam; ++n)
        if (counts[static_cast<std::size_t>(n)] > 0) ++pairing;
    std::int64_t brute = 0;
    for (std::int64_t n = Lam * Lam; n < 4 * Lam * Lam; ++n)
        if (enumerate_shell(d, n).count > 0) ++brute;
    CHECK(pairing == brute);
    CHECK(pairing == 3 * Lam * Lam);  // every shell is nonempty for d >= 5

    // float path: compensated long-double summation agrees with the plain
    // double accumulation to 1e-9 relative
    auto wide = shell_count_table(d, 255);
    for (double rprime : {1.5, 2.5, 4.0}) {
        const double plain = delta_maximal_norm(d, 64, 256, rprime);
        long double acc = 0.0L;
        for (std::int64_t n = 64; n < 256; ++n) {
            const auto c = wide[static_cast<std::size_t>(n)];
            if (c > 0) acc += powl(static_cast<long double>(c), 1.0L - static_cast<long double>(rprime));
        }
        const double precise = static_cast<double>(powl(acc, 1.0L / static_cast<long double>(rprime)));
        CHECK(std::abs(plain - precise) / precise < 1e-9);
    }
}
