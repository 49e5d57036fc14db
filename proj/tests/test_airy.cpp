#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "test_oracles.hpp"
#include "wg/airy.hpp"
#include "wg/errors.hpp"

using namespace wg;

TEST_SUITE("airy") {

TEST_CASE("value at zero matches the series oracle") {
  // Frozen from the Maclaurin oracle summed to 1e-14 term tolerance.
  CHECK(airy(0.0).ai == doctest::Approx(0.355028053887817).epsilon(1e-13));
  CHECK(airy(0.0).ai == doctest::Approx(oracle::series_ai(0.0)).epsilon(1e-14));
  CHECK(airy(0.0).ai_prime == doctest::Approx(-0.258819403792807).epsilon(1e-13));
}

TEST_CASE("Wronskian identity across [-12, 8]") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> dist(-12.0, 8.0);
  const double inv_pi = 1.0 / std::numbers::pi;
  for (int i = 0; i < 1000; ++i) {
    const double x = dist(rng);
    const AiryValue v = airy(x);
    const double wr = v.ai * v.bi_prime - v.ai_prime * v.bi;
    CHECK(std::abs(wr - inv_pi) < 1e-10);
  }
}

TEST_CASE("ODE residual: series derivative consistent with finite differences") {
  for (double x = -10.0; x <= 5.0; x += 0.37) {
    // y'' = x y gives the second derivative; compare with a central
    // difference of the returned first derivative.
    const AiryValue v = airy(x);
    const double fd = oracle::central_diff(
        [](double t) { return airy(t).ai_prime; }, x, 1e-6);
    const double scale = std::max(std::abs(x * v.ai), 1e-3);
    CHECK(std::abs(fd - x * v.ai) / scale < 1e-6);
  }
}

TEST_CASE("continuity at every evaluation-zone boundary") {
  for (double sw : {3.0, 9.0, -7.0, -9.0}) {
    const AiryValue inside = airy(std::nextafter(sw, 0.0));
    const AiryValue outside = airy(std::nextafter(sw, 2.0 * sw));
    CHECK(inside.ai == doctest::Approx(outside.ai).epsilon(1e-11));
    CHECK(inside.ai_prime == doctest::Approx(outside.ai_prime).epsilon(1e-11));
    CHECK(inside.bi == doctest::Approx(outside.bi).epsilon(1e-11));
    CHECK(inside.bi_prime == doctest::Approx(outside.bi_prime).epsilon(1e-11));
  }
}

TEST_CASE("Ai positive and strictly decreasing for x >= 0") {
  double prev = airy(0.0).ai;
  for (double x = 0.05; x <= 12.0; x += 0.05) {
    const double cur = airy(x).ai;
    CHECK(cur > 0.0);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("first zeros against the series-oracle roots") {
  const std::vector<double> z = airy_first_zeros(2);
  CHECK(z[0] == doctest::Approx(-2.338107410459767).epsilon(1e-12));
  CHECK(z[1] == doctest::Approx(-4.087949444130970).epsilon(1e-12));
  CHECK(z[0] == doctest::Approx(oracle::series_root(-2.5, -2.0)).epsilon(1e-12));
  CHECK(z[1] == doctest::Approx(oracle::series_root(-4.5, -4.0)).epsilon(1e-12));
  CHECK(std::abs(airy(z[0]).ai) < 1e-10);
}

TEST_CASE("zero list is strictly decreasing and refined") {
  const std::vector<double> z = airy_first_zeros(20);
  REQUIRE(z.size() == 20);
  for (size_t i = 1; i < z.size(); ++i) CHECK(z[i] < z[i - 1]);
  for (double zi : z) CHECK(std::abs(airy(zi).ai) < 1e-10);
  CHECK_THROWS_AS(airy_first_zeros(0), ValidationError);
  CHECK_THROWS_AS(airy_first_zeros(21), ValidationError);
}

TEST_CASE("root interlacing: one zero of Ai between consecutive zeros of Ai'") {
  const std::vector<double> za = airy_first_zeros(10);
  const std::vector<double> zp = airy_prime_first_zeros(11);
  for (int i = 0; i + 1 < 11 && i < 10; ++i) {
    // zp[i] > za[i] > zp[i+1] in the decreasing ordering
    CHECK(za[i] < zp[i]);
    CHECK(za[i] > zp[i + 1]);
  }
}

TEST_CASE("global maximum") {
  const AiryMax m = airy_global_max();
  CHECK(m.x == doctest::Approx(-1.018792971647471).epsilon(1e-10));
  CHECK(m.value == doctest::Approx(0.535656656015700).epsilon(1e-12));
  CHECK(std::abs(airy(m.x).ai_prime) < 1e-9);
  // Golden-section on the series oracle agrees.
  CHECK(m.x == doctest::Approx(oracle::series_argmax(-2.3, 0.0)).epsilon(1e-8));
}

TEST_CASE("non-finite input rejected") {
  CHECK_THROWS_AS(airy(std::nan("")), ValidationError);
  CHECK_THROWS_AS(airy(INFINITY), ValidationError);
}

}  // TEST_SUITE
