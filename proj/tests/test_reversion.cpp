#include <doctest.h>

#include <set>
#include <span>
#include <vector>

#include "abelprop/errors.hpp"
#include "abelprop/rational.hpp"
#include "abelprop/reversion.hpp"
#include "test_util.hpp"

using namespace abelprop;

namespace {

// Independent partition-count oracle: p(m) by the classic bounded-part
// recurrence, no enumeration involved.
long long partition_count_oracle(int m) {
    std::vector<std::vector<long long>> dp(static_cast<std::size_t>(m) + 1,
                                           std::vector<long long>(static_cast<std::size_t>(m) + 1, 0));
    for (std::size_t k = 0; k <= static_cast<std::size_t>(m); ++k) dp[0][k] = 1;
    for (std::size_t n = 1; n <= static_cast<std::size_t>(m); ++n)
        for (std::size_t k = 1; k <= static_cast<std::size_t>(m); ++k)
            dp[n][k] = dp[n][k - 1] + (n >= k ? dp[n - k][k] : 0);
    return dp[static_cast<std::size_t>(m)][static_cast<std::size_t>(m)];
}

std::vector<Rational> random_rational_sigma(testutil::Rng& rng, int len) {
    std::vector<Rational> sigma;
    sigma.reserve(static_cast<std::size_t>(len));
    // sigma_1 stays away from zero.
    int num = 0;
    while (num == 0) num = rng.uniform_int(-9, 9);
    sigma.emplace_back(num, rng.uniform_int(1, 9));
    for (int i = 1; i < len; ++i)
        sigma.emplace_back(rng.uniform_int(-9, 9), rng.uniform_int(1, 9));
    return sigma;
}

}  // namespace

TEST_CASE("partition enumeration basics") {
    CHECK(partitions(0).size() == 1);
    CHECK(partitions(0)[0].mult.empty());

    const auto p3 = partitions(3);
    REQUIRE(p3.size() == 3);
    // Largest part first: [3], [2,1], [1,1,1].
    CHECK(p3[0].mult == std::vector<int>{0, 0, 1});
    CHECK(p3[1].mult == std::vector<int>{1, 1});
    CHECK(p3[2].mult == std::vector<int>{3});

    CHECK(partitions(10).size() == 42);
}

TEST_CASE("partition counts match the recurrence oracle up to 30") {
    for (int m = 0; m <= 30; ++m)
        CHECK(static_cast<long long>(partitions(m).size()) == partition_count_oracle(m));
    CHECK(partition_count_oracle(23) == 1255);
    CHECK(partition_count_oracle(30) == 5604);
}

TEST_CASE("partitions are unique and have the right weight") {
    for (int m : {5, 9, 14}) {
        std::set<std::vector<int>> seen;
        for (const Partition& p : partitions(m)) {
            CHECK(p.weight() == m);
            CHECK(seen.insert(p.mult).second);
        }
    }
}

TEST_CASE("reverting the identity series") {
    const std::vector<double> sigma{1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    const auto rho = revert<double>(sigma, 6);
    CHECK(rho[0] == 1.0);
    for (std::size_t i = 1; i < rho.size(); ++i) CHECK(rho[i] == 0.0);
}

TEST_CASE("reverting a linear rescale") {
    const std::vector<double> sigma{2.0, 0.0, 0.0};
    const auto rho = revert<double>(sigma, 3);
    CHECK(rho[0] == doctest::Approx(0.5));
    CHECK(rho[1] == 0.0);
    CHECK(rho[2] == 0.0);
}

TEST_CASE("revert refuses sigma_1 = 0") {
    const std::vector<double> sigma{0.0, 1.0};
    CHECK_THROWS_AS(revert<double>(sigma, 2), NonInvertibleSeriesError);
    CHECK_THROWS_AS(revert_oracle<double>(sigma, 2), NonInvertibleSeriesError);
}

TEST_CASE("closed forms for the first three reverted coefficients, exactly") {
    testutil::Rng rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        const auto sigma = random_rational_sigma(rng, 3);
        const auto rho = revert<Rational>(std::span<const Rational>(sigma), 3);
        const Rational& s1 = sigma[0];
        const Rational& s2 = sigma[1];
        const Rational& s3 = sigma[2];
        CHECK(rho[0] == Rational(1) / s1);
        CHECK(rho[1] == -s2 / (s1 * s1 * s1));
        CHECK(rho[2] == (Rational(2) * s2 * s2 - s1 * s3) / (s1 * s1 * s1 * s1 * s1));
    }
}

TEST_CASE("signed Catalan numbers from t = x + x^2") {
    std::vector<Rational> sigma(10, Rational(0));
    sigma[0] = sigma[1] = Rational(1);
    const auto rho = revert<Rational>(std::span<const Rational>(sigma), 10);
    const long long catalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862};
    for (int n = 1; n <= 10; ++n) {
        Rational expect(catalan[n - 1]);
        if (n % 2 == 0) expect = -expect;
        CHECK(rho[static_cast<std::size_t>(n - 1)] == expect);
    }
}

TEST_CASE("partition formula agrees with the coefficient-matching oracle (float)") {
    testutil::Rng rng(47);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> sigma(12);
        sigma[0] = rng.uniform_signed(0.5, 2.0);
        for (std::size_t i = 1; i < sigma.size(); ++i) sigma[i] = rng.uniform_signed(0.0, 1.0);
        const auto a = revert<double>(sigma, 12);
        const auto b = revert_oracle<double>(sigma, 12);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(testutil::close_rel(a[i], b[i], 1e-12));
    }
}

TEST_CASE("partition formula agrees with the oracle exactly over rationals") {
    testutil::Rng rng(53);
    for (int trial = 0; trial < 50; ++trial) {
        const auto sigma = random_rational_sigma(rng, 10);
        const auto a = revert<Rational>(std::span<const Rational>(sigma), 10);
        const auto b = revert_oracle<Rational>(std::span<const Rational>(sigma), 10);
        CHECK(a == b);
    }
}

TEST_CASE("composition of a valid pair vanishes") {
    testutil::Rng rng(59);
    for (int trial = 0; trial < 50; ++trial) {
        // rho_n grows like sigma_1^-(2n-1); keep |sigma_1| >= 1 and let the
        // tail decay so an absolute bound on the residual stays meaningful.
        std::vector<double> sigma(16);
        sigma[0] = rng.uniform_signed(1.0, 2.0);
        double decay = 1.0;
        for (std::size_t i = 1; i < sigma.size(); ++i) {
            decay *= 0.5;
            sigma[i] = rng.uniform_signed(0.0, 1.0) * decay;
        }
        const auto rho = revert<double>(sigma, 16);
        const auto res = compose_check<double>(sigma, rho, 16);
        for (double r : res) CHECK(std::abs(r) < 1e-9);
    }
}

TEST_CASE("composition responds linearly to a perturbed coefficient") {
    testutil::Rng rng(61);
    const auto sigma = random_rational_sigma(rng, 6);
    auto rho = revert<Rational>(std::span<const Rational>(sigma), 6);
    const Rational eps(1, 1000);
    rho[1] += eps;
    const auto res = compose_check<Rational>(std::span<const Rational>(sigma),
                                             std::span<const Rational>(rho), 6);
    // The t^2 coefficient of the composition is linear in rho_2.
    CHECK(res[1] == sigma[0] * eps);
}

TEST_CASE("order-1 composition only checks sigma_1 * rho_1") {
    const std::vector<double> sigma{2.0};
    const std::vector<double> rho{0.5};
    const auto res = compose_check<double>(sigma, rho, 1);
    REQUIRE(res.size() == 1);
    CHECK(res[0] == 0.0);
}
