#include <doctest.h>

#include <random>

#include "horo/convexity.hpp"
#include "horo/expansivity.hpp"
#include "horo/horoball.hpp"
#include "oracles.hpp"

using namespace horo;

namespace {

GroupElement random_element(const MetricGroup& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> c(-6, 6);
  return std::visit(
      [&](const auto& d) -> GroupElement {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ZdLp>) {
          std::vector<std::int64_t> v(static_cast<std::size_t>(d.dimension));
          for (auto& x : v) x = c(rng);
          return vec(v);
        } else if constexpr (std::is_same_v<T, FreeGroup>) {
          std::uniform_int_distribution<int> len(0, 6);
          std::uniform_int_distribution<int> letter(1, d.rank);
          std::bernoulli_distribution inv;
          std::vector<int> w;
          for (int i = len(rng); i > 0; --i) w.push_back(inv(rng) ? -letter(rng) : letter(rng));
          return word(w);
        } else {
          bool mod2 = std::is_same_v<T, DirectSumZ2>;
          std::uniform_int_distribution<std::int64_t> idx(1, 6);
          std::map<std::int64_t, std::int64_t> m;
          for (int i = 0; i < 3; ++i) {
            auto v = mod2 ? 1 : c(rng);
            if (v != 0) m[idx(rng)] = v;
          }
          return sparse(m);
        }
      },
      g.descriptor());
}

std::vector<MetricGroup> sample_groups() {
  return {parse_group("z2-l1"),       parse_group("z2-l2"),           parse_group("z2-linf"),
          parse_group("z3-l2"),       parse_group("weighted", "1,2,3,..."), parse_group("sum-z2", "1,2,3,..."),
          parse_group("free:2")};
}

Certificate status_of(const SubshiftSpec& s, std::array<std::int64_t, 2> d, bool diag, int k, std::int64_t n,
                      Method m = Method::Auto) {
  Direction dir{d, diag ? std::optional<std::string>("sqrt-normalized") : std::nullopt};
  return direction_status(s, dir, k, n, {m, default_filling_budget});
}

}  // namespace

TEST_CASE("right invariance over 1000 samples per group") {
  std::mt19937_64 rng(17);
  for (const auto& g : sample_groups()) {
    for (int i = 0; i < 1000; ++i) {
      auto a = random_element(g, rng);
      auto b = random_element(g, rng);
      auto f = random_element(g, rng);
      CHECK(g.dist(g.multiply(a, f), g.multiply(b, f)) == g.dist(a, b));
    }
  }
}

TEST_CASE("metric axioms on samples") {
  std::mt19937_64 rng(23);
  for (const auto& g : sample_groups()) {
    for (int i = 0; i < 300; ++i) {
      auto a = random_element(g, rng);
      auto b = random_element(g, rng);
      auto c = random_element(g, rng);
      CHECK(g.dist(a, b) == g.dist(b, a));
      CHECK(g.dist(a, c).value() <= g.dist(a, b).value() + g.dist(b, c).value() + 1e-9);
      CHECK((g.dist(a, b).value() == 0) == (a == b));
    }
  }
}

TEST_CASE("Busemann functions are 1-Lipschitz and vanish at the identity") {
  std::mt19937_64 rng(29);
  for (const auto& g : sample_groups()) {
    for (int i = 0; i < 300; ++i) {
      auto c = random_element(g, rng);
      auto x = random_element(g, rng);
      auto y = random_element(g, rng);
      CHECK(std::abs(g.busemann(c, x) - g.busemann(c, y)) <= g.dist(x, y).value() + 1e-9);
      CHECK(g.busemann(c, g.identity()) == 0);
    }
  }
}

TEST_CASE("random balls match the brute-force scan") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> rad(0, 6);
  std::uniform_int_distribution<std::int64_t> c(-5, 5);
  for (int i = 0; i < 60; ++i) {
    double r = rad(rng);
    oracle::Point center{c(rng), c(rng)};
    auto g = MetricGroup::zd(2, Norm::L2);
    auto b = g.ball(vec({center[0], center[1]}), r, i % 2 == 0);
    CHECK(b.size() == oracle::ball_z2(oracle::Lp::L2, center, r, i % 2 == 0).size());
  }
}

TEST_CASE("exhaustive and GF(2) certificates agree on Ledrappier for N <= 4") {
  auto l = ledrappier();
  for (std::int64_t n = 1; n <= 4; ++n) {
    for (int k = 1; k <= std::min<int>(3, static_cast<int>(n)); ++k) {
      for (const auto& d : farey_grid(2, true)) {
        auto fast = direction_status(l, d, k, n);
        auto slow = direction_status(l, d, k, n, {Method::Exhaustive, default_filling_budget});
        CAPTURE(d.label());
        CAPTURE(k);
        CAPTURE(n);
        CHECK(kind(fast) == kind(slow));
        if (const auto* w = std::get_if<Witness>(&slow)) CHECK(verify_witness(l, d.horoball(), *w));
        if (const auto* w = std::get_if<Witness>(&fast)) CHECK(verify_witness(l, d.horoball(), *w));
      }
    }
  }
}

TEST_CASE("witnesses in ND reports re-verify") {
  for (const SubshiftSpec& s : {SubshiftSpec{ledrappier()}, SubshiftSpec{FullShift{2}}}) {
    auto grid = farey_grid(4, true);
    auto rep = nd_set(s, 2, 4, grid);
    for (const auto& e : rep.entries) {
      if (const auto* w = std::get_if<Witness>(&e.certificate)) {
        CAPTURE(e.direction.label());
        CHECK(verify_witness(s, e.direction.horoball(), *w));
        CHECK(w->extendable);
      }
    }
  }
}

TEST_CASE("ND certificates commute with window symmetries") {
  // Ledrappier is invariant under transposition.
  auto l = ledrappier();
  for (const auto& d : farey_grid(5, true)) {
    auto a = kind(status_of(l, d.integer, d.special.has_value(), 3, 6));
    auto b = kind(status_of(l, {d.integer[1], d.integer[0]}, d.special.has_value(), 3, 6));
    CAPTURE(d.label());
    CHECK(a == b);
  }
  // Hard squares are invariant under every signed permutation.
  SFT hard;
  hard.forbidden.push_back(Pattern{{{{0, 0}, 1}, {{1, 0}, 1}}});
  hard.forbidden.push_back(Pattern{{{{0, 0}, 1}, {{0, 1}, 1}}});
  for (const auto& d : farey_grid(2)) {
    auto [a, b] = d.integer;
    auto base = kind(status_of(hard, {a, b}, false, 1, 2, Method::Exhaustive));
    for (auto img : {std::array<std::int64_t, 2>{-a, b}, {a, -b}, {b, a}, {-b, -a}, {-a, -b}}) {
      CAPTURE(d.label());
      CHECK(kind(status_of(hard, img, false, 1, 2, Method::Exhaustive)) == base);
    }
  }
}

TEST_CASE("window determinism is monotone in N on Ledrappier") {
  auto l = ledrappier();
  for (const auto& d : farey_grid(5, true)) {
    bool det = false;
    for (std::int64_t n = 4; n <= 6; ++n) {
      bool now = std::holds_alternative<WindowDeterministic>(direction_status(l, d, 3, n));
      CAPTURE(d.label());
      CAPTURE(n);
      if (det) CHECK(now);
      det = det || now;
    }
  }
}

TEST_CASE("epsilon enters only through its dyadic level") {
  auto l = ledrappier();
  auto grid = farey_grid(3, true);
  for (double eps : {0.125, 0.15, 0.2, 0.2499}) {
    int k = k_from_epsilon(eps);
    CHECK(k == 3);
    for (const auto& d : grid) CHECK(kind(direction_status(l, d, k, 5)) == kind(direction_status(l, d, 3, 5)));
  }
}

TEST_CASE("Gordan dichotomy agrees with Caratheodory brute force") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<std::int64_t> c(-4, 4);
  std::uniform_int_distribution<int> count(1, 6);
  for (int t = 0; t < 400; ++t) {
    std::vector<oracle::Point> pts;
    std::vector<ExactVector> vs;
    for (int i = count(rng); i > 0; --i) {
      oracle::Point p{c(rng), c(rng)};
      if (p[0] == 0 && p[1] == 0) continue;
      pts.push_back(p);
      vs.push_back(ExactVector::rational({Rational(p[0]), Rational(p[1])}));
    }
    if (vs.empty()) continue;
    auto cert = origin_in_hull(vs);
    CHECK(std::holds_alternative<InHull>(cert) == oracle::origin_in_hull_z2(pts));
    CHECK(verify(vs, cert));
    auto lp = origin_in_hull_lp(vs);
    CHECK(std::holds_alternative<InHull>(lp) == std::holds_alternative<InHull>(cert));
    CHECK(verify(vs, lp));
  }
}

TEST_CASE("Gordan certificates with normalized directions re-verify") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<std::int64_t> c(-5, 5);
  for (int t = 0; t < 200; ++t) {
    std::vector<oracle::Point> pts;
    std::vector<ExactVector> vs;
    for (int i = 0; i < 4; ++i) {
      oracle::Point p{c(rng), c(rng)};
      if (p[0] == 0 && p[1] == 0) continue;
      pts.push_back(p);
      vs.push_back(ExactVector::normalized({Rational(p[0]), Rational(p[1])}));
    }
    if (vs.empty()) continue;
    auto cert = origin_in_hull(vs);
    CHECK(std::holds_alternative<InHull>(cert) == oracle::origin_in_hull_z2(pts));
    CHECK(verify(vs, cert));
  }
}

TEST_CASE("exact half-plane membership on the lattice of radius 50") {
  for (const auto& d : farey_grid(6, true)) {
    auto h = d.horoball();
    auto [a, b] = d.integer;
    for (std::int64_t x = -50; x <= 50; ++x) {
      for (std::int64_t y = -50; y <= 50; ++y) REQUIRE(h.contains(x, y) == (a * x + b * y < 0));
    }
  }
}
