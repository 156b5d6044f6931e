#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "pdn/decay.hpp"
#include "pdn/position.hpp"
#include "pdn/rng.hpp"

using namespace pdn;

TEST_CASE("position encoding for the figure sentence") {
  // "granted the space is smaller than most it is the best service", aspect "space"
  const std::vector<int> expected{3, 2, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  CHECK(encode_positions(12, 3, 3) == expected);
}

TEST_CASE("position encoding edge cases") {
  CHECK(encode_positions(1, 1, 1) == std::vector<int>{1});
  CHECK(encode_positions(5, 2, 4) == std::vector<int>{2, 1, 1, 1, 2});
  CHECK_THROWS_AS(encode_positions(5, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(encode_positions(5, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(encode_positions(5, 2, 6), std::invalid_argument);
  CHECK_THROWS_AS(encode_positions(0, 1, 1), std::invalid_argument);
}

TEST_CASE("position encoding equals brute-force distance to nearest aspect token") {
  Rng rng(61);
  for (int trial = 0; trial < 1000; ++trial) {
    const int len = rng.uniform_int(1, 80);
    const int s = rng.uniform_int(1, len);
    const int e = rng.uniform_int(s, len);
    const std::vector<int> got = encode_positions(len, s, e);
    for (int i = 1; i <= len; ++i) {
      int nearest = len + 1;
      for (int a = s; a <= e; ++a) nearest = std::min(nearest, std::abs(i - a));
      CHECK(got[i - 1] == nearest + 1);
    }
  }
}

TEST_CASE("position encoding symmetry and bounds") {
  Rng rng(67);
  for (int trial = 0; trial < 200; ++trial) {
    const int len = rng.uniform_int(1, 60);
    const int k = rng.uniform_int(1, len);
    const std::vector<int> p = encode_positions(len, k, k);
    for (int j = 1; k - j >= 1 && k + j <= len; ++j) CHECK(p[k - j - 1] == p[k + j - 1]);
    for (int v : p) {
      CHECK(v >= 1);
      CHECK(v <= len);
    }
  }
}

TEST_CASE("position encoding shifts with the sentence") {
  Rng rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    const int len = rng.uniform_int(2, 40);
    const int s = rng.uniform_int(1, len);
    const int e = rng.uniform_int(s, len);
    const std::vector<int> base = encode_positions(len, s, e);
    const std::vector<int> moved = encode_positions(len + 1, s + 1, e + 1);
    for (int i = 0; i < len; ++i) CHECK(base[i] == moved[i + 1]);
  }
}

TEST_CASE("decay reference values") {
  CHECK(decay({DecayKind::kInverse, 1.1333}, 1.0) == 1.1333);
  CHECK(decay({DecayKind::kExponential, 0.0}, 17.0) == 1.0);
  CHECK(decay({DecayKind::kExponential, 0.0}, 1.0) == 1.0);
  CHECK(decay({DecayKind::kTangent, 0.45}, 2.0) == doctest::Approx(0.2837022).epsilon(1e-6));
  CHECK(decay({DecayKind::kTangent, 0.45}, 2.0) == doctest::Approx(1.0 - std::tanh(0.9)).epsilon(1e-15));
}

TEST_CASE("inverse decay is singular at zero") {
  CHECK_THROWS_WITH_AS(decay({DecayKind::kInverse, 1.0}, 0.0), doctest::Contains("singular decay input"),
                       std::domain_error);
}

TEST_CASE("decay spec validation") {
  CHECK_THROWS_AS((DecaySpec{DecayKind::kInverse, 0.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((DecaySpec{DecayKind::kTangent, -0.1}).validate(), std::invalid_argument);
  CHECK_NOTHROW((DecaySpec{DecayKind::kTangent, 0.0}).validate());
}

TEST_CASE("every decay kind is strictly decreasing and positive on [1, 80]") {
  Rng rng(73);
  for (DecayKind kind : {DecayKind::kInverse, DecayKind::kExponential, DecayKind::kTangent}) {
    for (int trial = 0; trial < 100; ++trial) {
      const DecaySpec spec{kind, rng.uniform(0.0, 2.0) + 1e-9};
      double prev = decay(spec, 1.0);
      CHECK(prev > 0.0);
      for (int x = 2; x <= 80; ++x) {
        const double cur = decay(spec, x);
        CHECK(cur > 0.0);
        CHECK(cur < prev);
        prev = cur;
      }
    }
  }
}

TEST_CASE("lambda zero makes exponential and tangent argument-independent") {
  for (DecayKind kind : {DecayKind::kExponential, DecayKind::kTangent}) {
    const DecaySpec spec{kind, 0.0};
    for (int x = 1; x <= 80; ++x) CHECK(decay(spec, x) == 1.0);
  }
}
