#include <doctest.h>

#include <cmath>
#include <set>

#include "horo/horoball.hpp"
#include "oracles.hpp"

using namespace horo;

namespace {

std::vector<std::uint8_t> busemann_raster(const MetricGroup& g, oracle::Point c, int r) {
  std::vector<std::uint8_t> out;
  for (std::int64_t y = r; y >= -r; --y) {
    for (std::int64_t x = -r; x <= r; ++x) out.push_back(g.busemann(vec({c[0], c[1]}), vec({x, y})) < 0 ? 255 : 0);
  }
  return out;
}

}  // namespace

TEST_CASE("linear horofunction values") {
  Horofunction j = Linear{{-1, 0}, std::nullopt};
  CHECK(eval(j, vec({3, 4})).value == doctest::Approx(-3));
}

TEST_CASE("sampled horofunction along (n,0) in l2") {
  Sampled s;
  s.group = std::make_shared<const MetricGroup>(MetricGroup::zd(2, Norm::L2));
  s.rule = SequenceRule::ray({1, 0});
  s.truncation = 1'000'000;
  auto v = eval(Horofunction{s}, vec({3, 4}));
  CHECK(std::abs(v.value + 3) < 1e-4);
  REQUIRE(v.span);
  CHECK_FALSE(v.unstable);
}

TEST_CASE("l2 horoball membership is strict") {
  auto h = l2_horoball(std::vector<double>{1, 0});
  CHECK(h.contains(-1, 0));
  CHECK_FALSE(h.contains(1, 0));
  CHECK_FALSE(h.contains(0, 5));
  auto d = l2_horoball(std::vector<std::int64_t>{1, 1});
  CHECK(d.contains(1, -2));
  CHECK_FALSE(d.contains(1, -1));
  CHECK_THROWS_AS(l2_horoball(std::vector<double>{0, 0}), InputError);
}

TEST_CASE("sampled limit along n(-1,0) matches <x,(1,0)> on the 41x41 window") {
  Sampled s;
  s.group = std::make_shared<const MetricGroup>(MetricGroup::zd(2, Norm::L2));
  s.rule = SequenceRule::ray({-1, 0});
  s.truncation = 1'000'000;
  Horofunction j = s;
  double worst = 0;
  for (std::int64_t x = -20; x <= 20; x += 4) {
    for (std::int64_t y = -20; y <= 20; y += 4) {
      worst = std::max(worst, std::abs(eval(j, vec({x, y})).value - static_cast<double>(x)));
    }
  }
  CHECK(worst < 1e-3);
  auto limit = l2_limit_of_ray({-1, 0});
  CHECK(limit.v[0] == doctest::Approx(1));
}

TEST_CASE("l1 limit along (t,0) is the cone |y| < x") {
  auto p = PolyhedralZ2::from_ray(Norm::L1, {1, 0}, {0, 0});
  CHECK(p.kind() == PolyhedralKind::QuarterSpace);
  Horoball h{Horofunction{p}};
  auto g = MetricGroup::zd(2, Norm::L1);
  auto limit = raster(h, 20);
  CHECK(busemann_raster(g, {82, 0}, 20) == limit);
  CHECK(busemann_raster(g, {200, 0}, 20) == limit);
  for (std::int64_t x = -20; x <= 20; ++x) {
    for (std::int64_t y = -20; y <= 20; ++y) CHECK(h.contains(x, y) == (std::abs(y) < x));
  }
}

TEST_CASE("l1 limit along (t,t) is the half-plane x + y > 0") {
  auto p = PolyhedralZ2::from_ray(Norm::L1, {1, 1}, {0, 0});
  CHECK(p.kind() == PolyhedralKind::HalfplaneAntidiagonal);
  Horoball h{Horofunction{p}};
  auto g = MetricGroup::zd(2, Norm::L1);
  CHECK(busemann_raster(g, {100, 100}, 10) == raster(h, 10));
  for (std::int64_t x = -10; x <= 10; ++x) {
    for (std::int64_t y = -10; y <= 10; ++y) CHECK(h.contains(x, y) == (x + y > 0));
  }
}

TEST_CASE("translating a cone moves its apex") {
  auto p = PolyhedralZ2::from_ray(Norm::L1, {1, 0}, {0, 0});
  auto q = p.translated(2, 0);
  CHECK(q.apex == std::array<std::int64_t, 2>{2, 0});
  CHECK(q.heading == p.heading);
  CHECK(q.kind() == p.kind());
}

TEST_CASE("polyhedral horoballs on a window are distinct and include the basic shapes") {
  for (Norm n : {Norm::L1, Norm::Linf}) {
    auto list = enumerate_polyhedral_horoballs_z2(4, n);
    std::set<std::vector<std::uint8_t>> seen;
    for (const auto& p : list) {
      CHECK(p.normalized());
      CHECK(seen.insert(raster(Horoball{Horofunction{p}}, 4)).second);
    }
    auto cone = raster(Horoball{Horofunction{PolyhedralZ2::from_ray(n, {1, 0}, {0, 0})}}, 4);
    CHECK(seen.count(cone) == 1);
  }
}

TEST_CASE("largeness in the l1 cone") {
  auto g = MetricGroup::zd(2, Norm::L1);
  Horoball h{Horofunction{PolyhedralZ2::from_ray(Norm::L1, {1, 0}, {0, 0})}};
  auto res = largeness_certificate(g, h, 3, 40);
  REQUIRE(res.found);
  auto c = std::get<IntVector>(*res.center).coords;
  for (const auto& p : oracle::ball_z2(oracle::Lp::L1, {c[0], c[1]}, 3, false)) CHECK(std::abs(p[1]) < p[0]);
  CHECK(ball_inside(g, h, vec({6, 0}), 3));
  CHECK(ball_inside(g, h, vec({3, 0}), 3));
  CHECK_FALSE(ball_inside(g, h, vec({2, 0}), 3));
}

TEST_CASE("largeness in linear horoballs") {
  auto g = MetricGroup::zd(2, Norm::L2);
  for (auto v : {std::vector<std::int64_t>{1, 2}, std::vector<std::int64_t>{-3, 1}}) {
    Horoball h{Horofunction{linear_horofunction(v)}};
    for (double r : {1.0, 4.0}) {
      auto res = largeness_certificate(g, h, r, 30);
      REQUIRE(res.found);
      CHECK(res.center_value < -4 * r);
    }
  }
}

TEST_CASE("direct sum of Z/2: bounded search finds nothing") {
  Sampled s;
  s.group = std::make_shared<const MetricGroup>(parse_group("sum-z2", "1,2,3,..."));
  s.rule = SequenceRule::basis();
  s.truncation = 200;
  auto res = largeness_certificate(*s.group, Horoball{Horofunction{s}}, 1, 20);
  CHECK_FALSE(res.found);
  CHECK(res.note.find("not found within bound") != std::string::npos);
}

TEST_CASE("meeting radius") {
  auto z2 = MetricGroup::zd(2, Norm::L2);
  auto grid = circle_grid(360);
  auto rep = meeting_radius(z2, grid);
  CHECK(rep.radius == 2);
  std::int64_t expected = 0;
  for (const auto& v : grid) {
    expected = std::max(expected, static_cast<std::int64_t>(std::floor(oracle::least_negative_norm({v[0], v[1]}, 3))) + 1);
  }
  CHECK(rep.radius == expected);
  CHECK(meeting_radius(MetricGroup::zd(1, Norm::L2), {{1.0}, {-1.0}}).radius == 2);
  CHECK(meeting_radius(MetricGroup::zd(3, Norm::L2), sphere_grid(500)).radius == 2);
  CHECK_THROWS_AS(meeting_radius(MetricGroup::zd(2, Norm::L1), grid), InputError);
}

TEST_CASE("tangency thresholds match the direct scan") {
  auto g = MetricGroup::zd(2, Norm::L2);
  auto a = verify_tangency(g, 5, 0.5, {1, 0}, 120);
  REQUIRE(a.n0);
  CHECK(*a.n0 == *oracle::tangency_threshold(5, 0.5, 120));
  CHECK(*a.n0 <= 30);
  auto b = verify_tangency(g, 5, 2, {1, 0}, 120);
  REQUIRE(b.n0);
  CHECK(*b.n0 == *oracle::tangency_threshold(5, 2, 120));
  auto c = tangency_check(g, 5, 0.5, vec({0, 0}));
  CHECK_FALSE(c.passed);
}

TEST_CASE("cone shift threshold matches the direct scan") {
  RationalCone cone{{1, -1}, {1, 1}};
  CHECK(cone.contains(3, 2));
  CHECK_FALSE(cone.contains(2, 2));
  auto rep = verify_cone_shift(cone, 1, vec({-2, 0}), 50);
  REQUIRE(rep.n1);
  CHECK(*rep.n1 == *oracle::cone_shift_threshold(1, {-2, 0}, 50));
  CHECK(*rep.n1 <= 5);
}

TEST_CASE("cone shift precondition names the direction") {
  RationalCone cone{{1, -1}, {1, 1}};
  try {
    verify_cone_shift(cone, 1, vec({2, 0}), 10);
    FAIL("expected an input error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("(1,-1)") != std::string::npos);
  }
  RationalCone upper{{1, 0}, {-1, 0}};
  CHECK_THROWS_AS(verify_cone_shift(upper, 0.5, vec({0, -1}), 10), InputError);
}
