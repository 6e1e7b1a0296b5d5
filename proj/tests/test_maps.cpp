#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "sampling.hpp"
#include "skewtent/maps.hpp"

using namespace skewtent;
using skewtent::testing::sample_mixing;
using skewtent::testing::uniform;

namespace {
const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;
}

TEST_CASE("construction derives turning point and fixed point") {
  const SkewTentMap f = make_skew_tent(2, 2);
  CHECK(f.c == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(f.xstar == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  const SkewTentMap g = make_skew_tent(3, 1.5);
  CHECK(g.c == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(std::abs(g.f0()) <= 1e-15);  // boundary family: 1/s + 1/t = 1
}

TEST_CASE("construction validates slopes and the self-map condition") {
  CHECK_THROWS_AS(make_skew_tent(1.0, 2.0), SlopeOutOfRange);
  CHECK_THROWS_AS(make_skew_tent(2.0, 0.5), SlopeOutOfRange);
  CHECK_THROWS_AS(make_skew_tent(-2.0, 2.0), SlopeOutOfRange);
  CHECK_THROWS_AS(make_skew_tent(10.0, 1.2), NotSelfMap);
  CHECK_NOTHROW(make_skew_tent(200.0, 1.001));
  CHECK_NOTHROW(make_skew_tent(3.0, 1.2));
  CHECK_NOTHROW(make_skew_tent(5.0, 1.2));
  CHECK_NOTHROW(make_skew_tent(10.0, 1.05));
  CHECK_NOTHROW(make_skew_tent(2.0, 1.01));
}

TEST_CASE("evaluation follows the two branches") {
  const SkewTentMap f = make_skew_tent(2, 2);
  CHECK(f(0.25) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(f(f.c) == 1.0);
  CHECK(f(1.0) == 0.0);

  const SkewTentMap g = make_skew_tent(3, 1.5);
  CHECK(g(0.5) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(g(g.c) == 1.0);
  CHECK(g(1.0) == 0.0);

  CHECK_THROWS_AS(f(-0.1), DomainError);
  CHECK_THROWS_AS(f(1.1), DomainError);
}

TEST_CASE("evaluation is continuous at the turning point") {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 25; ++i) {
    const SkewTentMap f = sample_mixing(rng);
    const double gap = std::abs(f(f.c - 1e-12) - f(f.c + 1e-12));
    CHECK(gap <= 5e-12 * std::max(f.s, f.t));
    CHECK(f(f.c) == 1.0);
  }
}

TEST_CASE("image of 0 stays in [0,1] and vanishes exactly on the boundary family") {
  std::mt19937_64 rng(102);
  for (int i = 0; i < 200; ++i) {
    const double t = uniform(rng, 1.01, 3.0);
    const double s = uniform(rng, 1.0 + 1e-6, max_left_slope(t));
    const SkewTentMap f = make_skew_tent(s, t);
    CHECK(f.f0() >= 0.0);
    CHECK(f.f0() <= 1.0);
  }
  CHECK(std::abs(make_skew_tent(3, 1.5).f0()) <= 1e-15);
  CHECK(std::abs(make_skew_tent(max_left_slope(1.25), 1.25).f0()) <= 1e-14);
}

TEST_CASE("classification: mixing discriminant and kneading class") {
  const Classification full = classify(make_skew_tent(2, 2));
  CHECK(full.mixing);
  CHECK_FALSE(full.boundary);
  REQUIRE(full.class_n.has_value());
  CHECK(*full.class_n == 0);

  CHECK(classify(make_skew_tent(3, 1.5)).mixing);

  // s t^2 - s - t = 0: image of 0 equals the fixed point
  const double t = 1.2;
  const Classification edge = classify(make_skew_tent(t / (t * t - 1.0), t));
  CHECK_FALSE(edge.mixing);
  CHECK(edge.boundary);
}

TEST_CASE("mixing flag agrees with f(0) left of the fixed point on a grid") {
  std::mt19937_64 rng(103);
  int checked = 0;
  while (checked < 10000) {
    const double t = skewtent::testing::log_uniform(rng, 1.01, 3.5);
    const double s =
        skewtent::testing::log_uniform(rng, 1.000001, max_left_slope(t));
    const SkewTentMap f = make_skew_tent(s, t);
    const double d = f.s * f.t * f.t - f.s - f.t;
    if (std::abs(d) <= 1e-9 * (f.s * f.t * f.t + f.s + f.t)) continue;  // skip the edge
    ++checked;
    CHECK(classify(f).mixing == (f.f0() < f.xstar));
  }
}

TEST_CASE("orbit of 0 under the full tent") {
  const OrbitRecord orb = orbit_with_derivatives(make_skew_tent(2, 2), 0.0, 3);
  CHECK(orb.points == std::vector<double>{0, 0, 0, 0});
  CHECK(orb.derivs == std::vector<double>{1, 2, 4, 8});
  CHECK(orb.symbols == "LLL");
  CHECK_FALSE(orb.hit_turning_at.has_value());
}

TEST_CASE("orbit through an exact turning hit uses the orientation rule") {
  const SkewTentMap f = make_skew_tent(kPhi, kPhi);
  const OrbitRecord orb = orbit_with_derivatives(f, 0.0, 3);
  REQUIRE(orb.hit_turning_at.has_value());
  CHECK(*orb.hit_turning_at == 1);
  CHECK(orb.points[1] == doctest::Approx(2.0 - kPhi).epsilon(1e-14));
  CHECK(orb.points[2] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(orb.points[3] == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(orb.derivs[1] == doctest::Approx(kPhi).epsilon(1e-14));
  CHECK(orb.derivs[2] == doctest::Approx(-kPhi * kPhi).epsilon(1e-14));
  CHECK(orb.derivs[3] == doctest::Approx(kPhi * kPhi * kPhi).epsilon(1e-14));
}

TEST_CASE("orbit of 1 starts with the right branch") {
  const OrbitRecord orb = orbit_with_derivatives(make_skew_tent(2, 2), 1.0, 2);
  CHECK(orb.points == std::vector<double>{1, 0, 0});
  CHECK(orb.derivs == std::vector<double>{1, -2, -4});
  CHECK_THROWS_AS(orbit_with_derivatives(make_skew_tent(2, 2), 1.5, 2), DomainError);
}

TEST_CASE("derivative magnitudes are products of branch slopes") {
  std::mt19937_64 rng(104);
  for (int i = 0; i < 40; ++i) {
    const SkewTentMap f = sample_mixing(rng);
    const double x0 = uniform(rng, 0.0, 1.0);
    const OrbitRecord orb = orbit_with_derivatives(f, x0, 30);
    double prod = 1.0;
    for (int k = 0; k < 30; ++k) {
      prod *= orb.symbols[static_cast<std::size_t>(k)] == 'L' ? f.s : f.t;
      CHECK(std::abs(orb.derivs[static_cast<std::size_t>(k) + 1]) ==
            doctest::Approx(prod).epsilon(1e-13));
    }
  }
}

TEST_CASE("kneading of the full tent") {
  const KneadingSequence kn = kneading(make_skew_tent(2, 2), 8);
  CHECK(kn.word == "RLLLLLLL");
  REQUIRE(kn.periodic.has_value());
  CHECK(*kn.periodic == 1);
  CHECK(kn.preperiod <= 2);
  REQUIRE(kn.class_m.has_value());
  CHECK(*kn.class_m == 0);
}

TEST_CASE("kneading under the left-limit convention at a periodic critical orbit") {
  const SkewTentMap f = make_skew_tent(kPhi, kPhi);
  const KneadingSequence kn = kneading(f, 9);
  CHECK(kn.word == "RLRRLRRLR");
  REQUIRE(kn.periodic.has_value());
  CHECK(*kn.periodic == 3);

  // oracle: itineraries of points just left of 1 agree with the limit word
  for (double delta : {1e-6, 1e-8}) {
    double x = 1.0 - delta;
    std::string word;
    for (int k = 0; k < 9; ++k) {
      word.push_back(x > f.c ? 'R' : 'L');
      x = f(x);
    }
    CHECK(word == kn.word);
  }
}

TEST_CASE("mixing maps have kneading prefix R L R^m L") {
  std::mt19937_64 rng(105);
  for (int i = 0; i < 60; ++i) {
    const SkewTentMap f = sample_mixing(rng);
    const KneadingSequence kn = kneading(f, 4096);
    REQUIRE(kn.word.size() >= 3);
    CHECK(kn.word[0] == 'R');
    CHECK(kn.word[1] == 'L');
    REQUIRE(kn.class_m.has_value());
    const int m = *kn.class_m;
    for (int k = 0; k < m; ++k) CHECK(kn.word[static_cast<std::size_t>(2 + k)] == 'R');
    CHECK(kn.word[static_cast<std::size_t>(2 + m)] == 'L');
  }
  CHECK_THROWS_AS(kneading(make_skew_tent(2, 2), 0), DomainError);
}

TEST_CASE("renormalization squares the dynamics") {
  // left slope solving s^2 t^3 = s + t: the double renormalization lands on
  // the full family
  const double t = 1.1;
  const double s = (1.0 + std::sqrt(1.0 + 4.0 * std::pow(t, 4))) / (2.0 * t * t * t);
  const SkewTentMap f = make_skew_tent(s, t);

  const SkewTentMap r1 = renormalize(f);
  CHECK(r1.s == doctest::Approx(t * t).epsilon(1e-15));
  CHECK(r1.t == doctest::Approx(s * t).epsilon(1e-15));

  const SkewTentMap r2 = renormalize(r1);
  CHECK(r2.s == doctest::Approx(s * s * t * t).epsilon(1e-13));
  CHECK(r2.t == doctest::Approx(s * t * t * t).epsilon(1e-13));
  CHECK(1.0 / r2.s + 1.0 / r2.t == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(renormalize(make_skew_tent(2, 2)), NotRenormalizable);
  // the boundary case is accepted
  const double tb = 1.2;
  CHECK_NOTHROW(renormalize(make_skew_tent(tb / (tb * tb - 1.0), tb)));
}

TEST_CASE("stefan maps: closure equation and periodic critical orbit") {
  SUBCASE("n = 1 at a = 0.4 solves (0.6 t - 0.4) t^3 = 1") {
    const SkewTentMap f = stefan_map(0.4, 1);
    CHECK(f.t > 1.0);
    CHECK(f.t < 2.0);
    const double res = (0.6 * f.t - 0.4) * std::pow(f.t, 3) - 1.0;
    CHECK(std::abs(res) <= 1e-12);
    CHECK(std::abs(f.f0() - 0.4) <= 1e-12);

    // period 5 critical orbit by direct iteration
    const OrbitRecord orb = orbit_with_derivatives(f, f.c, 5);
    CHECK(std::abs(orb.points[5] - f.c) <= 1e-10);
  }

  SUBCASE("closure residual and orbit for a range of n") {
    for (int n : {0, 2, 5, 20, 60}) {
      const SkewTentMap f = stefan_map(0.4, n);
      const double expo = 2.0 * n + 1.0;
      CHECK(std::abs((f.t - 0.4 * (f.t + 1.0)) * std::pow(f.t, expo) - 1.0) <= 1e-10);
      const int period = 2 * n + 3;
      const OrbitRecord orb = orbit_with_derivatives(f, f.c, period);
      CHECK(std::abs(orb.points[static_cast<std::size_t>(period)] - f.c) <= 1e-9);
      for (int k = 0; k < 2 * n; ++k) {
        CHECK(orb.points[static_cast<std::size_t>(3 + k)] >= f.c - 1e-9);
        CHECK(orb.points[static_cast<std::size_t>(3 + k)] <= 1.0 + 1e-12);
      }
    }
  }

  SUBCASE("t^{2n+1} approaches 1/(1-2a) for large n") {
    const double a = 0.4;
    const SkewTentMap f = stefan_map(a, 200);
    CHECK(std::pow(f.t, 401.0) == doctest::Approx(5.0).epsilon(0.02));
    CHECK((f.t - a * (f.t + 1.0)) * std::pow(f.t, 401.0) ==
          doctest::Approx(1.0).epsilon(1e-9));
  }

  CHECK_THROWS_AS(stefan_map(0.0, 1), DomainError);
  CHECK_THROWS_AS(stefan_map(0.5, 1), DomainError);
}

TEST_CASE("piecewise linear maps: validation and evaluation") {
  const PLUnimodalMap g =
      make_pl_unimodal({0.0, 0.3, 0.6, 1.0}, {0.6, 1.0, 0.6, 0.0});
  CHECK(g.turn == 1);
  CHECK(g.turn_point() == 0.3);
  CHECK(g.critical_value() == 1.0);
  CHECK(g.min_abs_slope() == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(g(0.15) == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(g(0.8) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK_THROWS_AS(g(-0.5), DomainError);

  // not unimodal: maximum at the boundary
  CHECK_THROWS_AS(make_pl_unimodal({0.0, 0.5, 1.0}, {1.0, 0.6, 0.0}), DomainError);
  // slope magnitude 1 on the middle segment
  CHECK_THROWS_AS(make_pl_unimodal({0.0, 0.4, 0.8, 1.0}, {0.2, 1.0, 0.6, 0.0}),
                  NotExpanding);
  // breakpoints not increasing
  CHECK_THROWS_AS(make_pl_unimodal({0.0, 0.6, 0.4, 1.0}, {0.5, 1.0, 0.8, 0.0}),
                  DomainError);
}

TEST_CASE("skew tent converts to an equivalent three-node piecewise map") {
  std::mt19937_64 rng(106);
  for (int i = 0; i < 20; ++i) {
    const SkewTentMap f = sample_mixing(rng);
    const PLUnimodalMap g = to_pl(f);
    for (int j = 0; j < 50; ++j) {
      const double x = uniform(rng, 0.0, 1.0);
      CHECK(std::abs(f(x) - g(x)) <= 1e-12);
    }
  }
}
