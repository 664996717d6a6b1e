#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "sphlab/lattice.hpp"

using namespace sphlab;

namespace {

// Independent oracle: count |y|^2 = n by scanning the full box [-r, r]^d.
std::int64_t brute_shell_count(int d, std::int64_t n) {
    const auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n))) + 1;
    std::int64_t count = 0;
    std::vector<std::int64_t> y(static_cast<std::size_t>(d), -r);
    while (true) {
        std::int64_t s = 0;
        for (auto t : y) s += t * t;
        if (s == n) ++count;
        int i = d - 1;
        while (i >= 0 && y[static_cast<std::size_t>(i)] == r) y[static_cast<std::size_t>(i--)] = -r;
        if (i < 0) break;
        ++y[static_cast<std::size_t>(i)];
    }
    return count;
}

// Jacobi's four-square count: 8 * sum of divisors of n not divisible by 4.
std::int64_t jacobi_four_square(std::int64_t n) {
    std::int64_t s = 0;
    for (std::int64_t m = 1; m <= n; ++m)
        if (n % m == 0 && m % 4 != 0) s += m;
    return 8 * s;
}

}  // namespace

TEST_CASE("shell counts: pinned examples") {
    CHECK(shell_count(5, 0) == 1);
    CHECK(shell_count(5, 1) == 10);
    CHECK(shell_count(4, 2) == 24);          // brute force: 24; Jacobi agrees
    CHECK(brute_shell_count(4, 2) == 24);
    CHECK(jacobi_four_square(2) == 24);
    CHECK(shell_count(2, 25) == 12);
    CHECK(brute_shell_count(2, 25) == 12);
}

TEST_CASE("shell counts match brute force for d <= 4, n <= 200") {
    for (int d = 1; d <= 4; ++d) {
        auto table = shell_count_table(d, 200);
        for (std::int64_t n = 0; n <= 200; ++n)
            CHECK(table[static_cast<std::size_t>(n)] == brute_shell_count(d, n));
    }
}

TEST_CASE("shell counts against Jacobi's four-square formula") {
    auto table = shell_count_table(4, 60);
    for (std::int64_t n = 1; n <= 60; ++n)
        CHECK(table[static_cast<std::size_t>(n)] == jacobi_four_square(n));
}

TEST_CASE("ball count equals cumulative shell counts") {
    for (int d = 2; d <= 4; ++d) {
        const double R = 10.0;
        auto ball = enumerate_ball(d, R);
        auto table = shell_count_table(d, 100);
        std::int64_t cum = 0;
        for (std::int64_t n = 0; n <= 100; ++n) cum += table[static_cast<std::size_t>(n)];
        CHECK(ball.count == cum);
        for (std::int64_t i = 0; i < ball.count; ++i) {
            std::int64_t s = 0;
            for (int j = 0; j < d; ++j) {
                const auto c = static_cast<std::int64_t>(ball.point(i)[j]);
                s += c * c;
            }
            CHECK(s <= 100);
        }
    }
}

TEST_CASE("convolution order does not change the counts") {
    // assemble r_5 as r_2 * r_3 and compare with the straight build
    const std::int64_t nmax = 120;
    auto r2 = shell_count_table(2, nmax);
    auto r3 = shell_count_table(3, nmax);
    auto r5 = shell_count_table(5, nmax);
    for (std::int64_t n = 0; n <= nmax; ++n) {
        std::int64_t s = 0;
        for (std::int64_t m = 0; m <= n; ++m)
            s += r2[static_cast<std::size_t>(m)] * r3[static_cast<std::size_t>(n - m)];
        CHECK(s == r5[static_cast<std::size_t>(n)]);
    }
}

TEST_CASE("enumerate_shell: examples and invariants") {
    auto s21 = enumerate_shell(2, 1);
    CHECK(s21.count == 4);
    std::set<std::pair<int, int>> pts;
    for (std::int64_t i = 0; i < s21.count; ++i)
        pts.insert({s21.point(i)[0], s21.point(i)[1]});
    CHECK(pts == std::set<std::pair<int, int>>{{1, 0}, {-1, 0}, {0, 1}, {0, -1}});

    auto s52 = enumerate_shell(5, 2);
    CHECK(s52.count == 40);
    CHECK(s52.count == shell_count(5, 2));

    auto s37 = enumerate_shell(3, 7);  // 7 is not a sum of three squares
    CHECK(s37.count == 0);
    CHECK(shell_count(3, 7) == 0);
}

TEST_CASE("enumeration is duplicate-free and exact") {
    auto shell = enumerate_shell(3, 50);
    std::set<std::vector<int>> seen;
    for (std::int64_t i = 0; i < shell.count; ++i) {
        std::vector<int> p(shell.point(i), shell.point(i) + 3);
        std::int64_t s = 0;
        for (int c : p) s += static_cast<std::int64_t>(c) * c;
        CHECK(s == 50);
        CHECK(seen.insert(p).second);
    }
    CHECK(shell.count == shell_count(3, 50));

    // the point set is closed under sign flips and coordinate permutations
    for (const auto& p : seen) {
        std::vector<int> flipped = {-p[0], p[1], -p[2]};
        std::vector<int> permuted = {p[2], p[0], p[1]};
        CHECK(seen.count(flipped) == 1);
        CHECK(seen.count(permuted) == 1);
    }
}

TEST_CASE("enumeration refuses counts beyond the cap") {
    CHECK_THROWS_AS(enumerate_shell(5, 10000, 100), size_limit_error);
}

TEST_CASE("count overflow raises instead of wrapping") {
    CHECK_THROWS_AS(shell_count_table(24, 4096), std::overflow_error);
}

TEST_CASE("shell growth fit") {
    CHECK(shell_growth_fit(5, 64, 4096) == Catch::Approx(3.0).margin(0.2));
    CHECK(shell_growth_fit(6, 64, 4096) == Catch::Approx(4.0).margin(0.2));
    CHECK_THROWS_AS(shell_growth_fit(5, 64, 64), std::invalid_argument);  // degenerate
    CHECK_THROWS_AS(shell_growth_fit(3, 7, 7), std::invalid_argument);
}
