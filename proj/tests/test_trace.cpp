#include <cmath>
#include <cstdio>

#include "doctest.h"
#include "wg/errors.hpp"
#include "wg/trace.hpp"

using namespace wg;

namespace {

SurfaceTrace sample_trace(int n = 200) {
  SurfaceTrace t;
  t.x = linspace(-6.0, 6.0, n);
  t.d.resize(t.x.size());
  for (size_t i = 0; i < t.x.size(); ++i)
    t.d[i] = cplx(std::sin(t.x[i]), 0.25 * std::cos(2.0 * t.x[i]));
  t.k = 31.4;
  return t;
}

}  // namespace

TEST_SUITE("trace") {

TEST_CASE("csv round trip is byte-identical") {
  const SurfaceTrace t = sample_trace(57);
  const std::string csv = trace_to_csv(t);
  const SurfaceTrace back = trace_from_csv(csv);
  CHECK(trace_to_csv(back) == csv);
  REQUIRE(back.size() == t.size());
  for (size_t i = 0; i < t.size(); ++i) {
    CHECK(back.x[i] == t.x[i]);
    CHECK(back.d[i] == t.d[i]);
  }
}

TEST_CASE("csv header required") {
  CHECK_THROWS_AS(trace_from_csv("a,b,c\n1,2,3\n"), IoError);
}

TEST_CASE("noise: zero amplitude is the identity") {
  const SurfaceTrace t = sample_trace();
  const SurfaceTrace n = add_noise(t, 0.0, 7);
  for (size_t i = 0; i < t.size(); ++i) CHECK(n.d[i] == t.d[i]);
}

TEST_CASE("noise: equal seeds give bit-identical traces") {
  const SurfaceTrace t = sample_trace();
  const SurfaceTrace a = add_noise(t, 0.3, 42);
  const SurfaceTrace b = add_noise(t, 0.3, 42);
  const SurfaceTrace c = add_noise(t, 0.3, 43);
  bool all_equal = true, any_diff = false;
  for (size_t i = 0; i < t.size(); ++i) {
    all_equal = all_equal && a.d[i] == b.d[i];
    any_diff = any_diff || a.d[i] != c.d[i];
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("noise: realized relative norm concentrates around the amplitude") {
  // chi-square concentration: for n = 200 samples the realized ratio stays
  // within [0.25, 0.35] for amplitude 0.3 with overwhelming probability.
  const SurfaceTrace t = sample_trace(200);
  const double base = l2_norm(t);
  for (std::uint64_t seed = 1; seed <= 64; ++seed) {
    const SurfaceTrace n = add_noise(t, 0.3, seed);
    std::vector<cplx> diff(t.size());
    for (size_t i = 0; i < t.size(); ++i) diff[i] = n.d[i] - t.d[i];
    const double ratio = l2_norm(diff) / base;
    CHECK(ratio > 0.25);
    CHECK(ratio < 0.35);
  }
}

TEST_CASE("file round trip with sidecar metadata") {
  const SurfaceTrace t = sample_trace(33);
  const char* csv_path = "wg_test_trace.csv";
  const char* meta_path = "wg_test_trace.meta.json";
  write_trace_csv(t, csv_path);
  write_trace_meta(t, meta_path);
  SurfaceTrace back = read_trace_csv(csv_path);
  read_trace_meta(back, meta_path);
  CHECK(back.k == t.k);
  CHECK(back.size() == t.size());
  std::remove(csv_path);
  std::remove(meta_path);
}

TEST_CASE("uniformity detection") {
  SurfaceTrace t = sample_trace(64);
  CHECK(t.uniform());
  CHECK(t.step() == doctest::Approx(12.0 / 63.0));
  t.x[10] += 1e-3;
  CHECK(!t.uniform());
  CHECK_THROWS_AS(t.step(), ValidationError);
}

}  // TEST_SUITE
