#include <doctest.h>

#include <cmath>

#include "horo/convexity.hpp"
#include "horo/metric_group.hpp"
#include "oracles.hpp"

using namespace horo;

namespace {

ExactVector ev(std::int64_t a, std::int64_t b) { return ExactVector::rational({Rational(a), Rational(b)}); }
ExactVector unit(std::int64_t a, std::int64_t b) { return ExactVector::normalized({Rational(a), Rational(b)}); }

std::vector<ExactVector> ledrappier_triple() { return {unit(0, -1), unit(-1, 0), unit(1, 1)}; }

}  // namespace

TEST_CASE("exact rationals from doubles") {
  CHECK(exact_rational(0.5) == Rational(1, 2));
  CHECK(exact_rational(-3.0) == Rational(-3));
  CHECK(to_double(exact_rational(0.1)) == 0.1);
}

TEST_CASE("Ledrappier triple: origin in hull with weights proportional to (1, 1, sqrt 2)") {
  auto v = ledrappier_triple();
  auto c = origin_in_hull(v);
  REQUIRE(std::holds_alternative<InHull>(c));
  const auto& h = std::get<InHull>(c);
  CHECK(h.lambda[0] == doctest::Approx(h.lambda[1]));
  CHECK(h.lambda[2] / h.lambda[0] == doctest::Approx(std::sqrt(2.0)));
  CHECK(h.lambda[0] + h.lambda[1] + h.lambda[2] == doctest::Approx(1.0));
  CHECK(verify(v, c));
  auto lp = origin_in_hull_lp(v);
  CHECK(std::holds_alternative<InHull>(lp));
  CHECK(verify(v, lp));
}

TEST_CASE("two axis vectors are separated by (1,1)") {
  std::vector<ExactVector> v{ev(1, 0), ev(0, 1)};
  auto c = origin_in_hull(v);
  REQUIRE(std::holds_alternative<Separated>(c));
  const auto& s = std::get<Separated>(c);
  CHECK(s.c[0] > 0);
  CHECK(s.c[0] == s.c[1]);
  CHECK(verify(v, c));
}

TEST_CASE("opposite vectors: lambda = (1/2, 1/2)") {
  std::vector<ExactVector> v{ev(1, 0), ev(-1, 0)};
  auto c = origin_in_hull(v);
  REQUIRE(std::holds_alternative<InHull>(c));
  CHECK(std::get<InHull>(c).lambda[0] == doctest::Approx(0.5));
  CHECK(std::get<InHull>(c).exact);
}

TEST_CASE("empty input is rejected") { CHECK_THROWS_AS(origin_in_hull({}), InputError); }

TEST_CASE("three-dimensional hull via the simplex") {
  std::vector<ExactVector> v{ExactVector::rational({1, 0, 0}), ExactVector::rational({0, 1, 0}),
                             ExactVector::rational({0, 0, 1}), ExactVector::rational({-1, -1, -1})};
  auto c = origin_in_hull(v);
  CHECK(std::holds_alternative<InHull>(c));
  CHECK(verify(v, c));
  v.pop_back();
  auto s = origin_in_hull(v);
  CHECK(std::holds_alternative<Separated>(s));
  CHECK(verify(v, s));
}

TEST_CASE("coverage of the Ledrappier triple") {
  std::vector<std::vector<double>> probes;
  for (int i = 0; i < 100; ++i) {
    double t = 2 * M_PI * (i + 0.5) / 100;
    probes.push_back({std::cos(t), std::sin(t)});
  }
  auto rep = halfspace_coverage(ledrappier_triple(), probes);
  CHECK(rep.covered);
  REQUIRE(rep.max_gap_degrees);
  CHECK(*rep.max_gap_degrees == doctest::Approx(135.0).epsilon(1e-9));
  CHECK(*rep.max_gap_degrees == doctest::Approx(oracle::max_gap_degrees({{0, -1}, {-1, 0}, {1, 1}})));
}

TEST_CASE("coverage failures and the half-turn boundary") {
  auto single = halfspace_coverage({ev(1, 0)}, {{-1, 0}, {1, 0}});
  CHECK_FALSE(single.covered);
  CHECK(single.first_failing_probe == 0);
  CHECK(single.gap_at_most_half_turn == false);
  auto pair = halfspace_coverage({ev(1, 0), ev(-1, 0)}, {{0, 1}, {0, -1}, {1, 1}});
  CHECK(pair.covered);
  CHECK(pair.gap_at_most_half_turn == true);
}

TEST_CASE("intersection of horoballs") {
  auto e = intersection_empty(ledrappier_triple());
  CHECK(e.empty);
  CHECK_FALSE(e.witness);
  auto one = intersection_empty({ev(1, 0)});
  CHECK_FALSE(one.empty);
  REQUIRE(one.witness);
  CHECK((*one.witness)[0] < 0);
  auto two = intersection_empty({ev(1, 0), ev(0, 1)});
  REQUIRE(two.witness);
  CHECK((*two.witness)[0] < 0);
  CHECK((*two.witness)[1] < 0);
}

TEST_CASE("phase-one simplex") {
  // x + y = 1, x - y = 0
  auto p = feasible_point({{1, 1}, {1, -1}}, {1, 0});
  REQUIRE(p);
  CHECK((*p)[0] == Rational(1, 2));
  CHECK_FALSE(feasible_point({{1, 1}}, {-1}));
}
