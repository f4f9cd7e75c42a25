#include <doctest.h>

#include "horo/io.hpp"

using namespace horo;
using horo::io::Json;

TEST_CASE("subshift specs round-trip") {
  auto l = io::spec_from_json(Json::parse(R"({"kind":"linear-gf2","support":[[0,0],[1,0],[0,1]]})"));
  CHECK(io::to_json(l) == io::to_json(SubshiftSpec{ledrappier()}));
  auto f = io::parse_system("full-shift:3");
  CHECK(alphabet_size(f) == 3);
  SFT s;
  s.forbidden.push_back(Pattern{{{{0, 0}, 1}, {{1, 0}, 1}}});
  auto back = io::spec_from_json(io::to_json(SubshiftSpec{s}));
  CHECK(io::to_json(back) == io::to_json(SubshiftSpec{s}));
  CHECK_THROWS_AS(io::spec_from_json(Json::parse(R"({"kind":"wang"})")), InputError);
}

TEST_CASE("pattern CSV round-trip") {
  Pattern p{{{{0, 0}, 1}, {{-2, 3}, 0}}};
  CHECK(io::pattern_from_csv(io::pattern_csv(p)) == p);
  CHECK(io::pattern_from_json(io::to_json(p)) == p);
}

TEST_CASE("fillings round-trip with rows from the top") {
  WindowFilling f{1, {0, 0, 0, 0, 1, 0, 1, 1, 0}, true, std::nullopt};
  auto j = io::filling_json(f);
  CHECK(j["rows"][0] == "110");
  CHECK(j["rows"][2] == "000");
  CHECK(io::filling_from_json(j).symbols == f.symbols);
}

TEST_CASE("horofunctions from JSON") {
  auto lin = io::horofunction_from_json(Json::parse(R"({"kind":"linear","v":[1,1]})"));
  REQUIRE(std::holds_alternative<Linear>(lin));
  CHECK(std::get<Linear>(lin).integer_direction);
  auto poly = io::horofunction_from_json(Json::parse(R"({"kind":"polyhedral","norm":"l1","heading":[1,0],"apex":[2,0]})"));
  CHECK(std::get<PolyhedralZ2>(poly).apex == std::array<std::int64_t, 2>{2, 0});
  auto samp = io::horofunction_from_json(Json::parse(R"({"kind":"sampled","group":"z2-l2","ray":[1,0],"truncation":100})"));
  CHECK(std::get<Sampled>(samp).truncation == 100);
  CHECK_THROWS_AS(io::horofunction_from_json(Json::parse(R"({"kind":"sampled","group":"z2-l2"})")), InputError);
}

TEST_CASE("directions serialize exactly") {
  Direction d{{1, 1}, "sqrt-normalized"};
  CHECK(io::to_json(d) == Json::parse(R"(["sqrt-normalized",1,1])"));
  CHECK(io::direction_from_json(io::to_json(d)).special == d.special);
  CHECK(io::to_json(Direction{{-3, 2}, std::nullopt}) == Json::parse("[-3,2]"));
}

TEST_CASE("vectors from JSON") {
  auto v = io::vectors_from_json(Json::parse(R"([["sqrt-normalized",1,1],[0,-1],["1/3",0.5]])"));
  REQUIRE(v.size() == 3);
  CHECK(v[0].sqrt_normalized);
  CHECK(v[2].coords[0] == Rational(1, 3));
  CHECK(v[2].coords[1] == Rational(1, 2));
  CHECK_THROWS_AS(io::vectors_from_json(Json::parse(R"([["x/y"]])")), InputError);
}

TEST_CASE("ND reports expose their witness directions") {
  NDReport r;
  r.k = 3;
  r.window = 6;
  r.entries.push_back({Direction{{0, -1}, std::nullopt}, Witness{{}, {}, 6, 3, true}});
  r.entries.push_back({Direction{{0, 1}, std::nullopt}, WindowDeterministic{6, 3}});
  auto j = io::to_json(r);
  CHECK(j["summary"]["counts"]["Witness"] == 1);
  auto v = io::vectors_from_json(j);
  REQUIRE(v.size() == 1);
  CHECK(v[0].coords[1] == Rational(-1));
  auto csv = io::nd_summary_csv(r);
  CHECK(csv.find("\"(0,-1)\",0,-1,Witness,true") != std::string::npos);
  CHECK(io::direction_circle_svg(r).find("<svg") != std::string::npos);
}

TEST_CASE("PGM header") {
  auto p = io::pgm({0, 255, 255, 0}, 2, 2);
  CHECK(p.substr(0, 11) == "P5\n2 2\n255\n");
  CHECK(p.size() == 15);
  CHECK_THROWS_AS(io::pgm({0}, 2, 2), InputError);
}

TEST_CASE("ball CSV rows") {
  CHECK(io::ball_csv({vec({0, 0}), vec({1, -1})}) == "x,y\n0,0\n1,-1\n");
}
