#include "horo/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "horo/io.hpp"

namespace horo::cli {

namespace fs = std::filesystem;
using io::Json;

namespace {

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

struct Artifacts {
  std::vector<std::string> written;
};

void write_artifact(Artifacts& a, const std::string& path, std::string_view content) {
  fs::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
  }
  io::write_file(path, content);
  a.written.push_back(path);
}

void write_log(const Artifacts& a, const RunConfig& cfg, int status, double seconds) {
  if (a.written.empty()) return;
  fs::path dir = fs::path(a.written.front()).parent_path();
  std::ostringstream os;
  os << "time " << timestamp() << "\ncommand";
  for (const auto& c : cfg.command) os << " " << c;
  os << "\nseed " << cfg.seed << "\nstatus " << status << "\nseconds " << std::fixed << std::setprecision(3) << seconds
     << "\n";
  for (const auto& w : a.written) os << "artifact " << w << "\n";
  io::write_file((dir / "run.log").string(), os.str());
}

/// JSON to --out when given, otherwise to stdout.
void emit(Artifacts& a, const RunConfig& cfg, const Json& j, std::ostream& out) {
  if (cfg.out.empty()) {
    out << dump(j);
  } else {
    write_artifact(a, cfg.out, dump(j));
    out << "wrote " << cfg.out << "\n";
  }
}

GroupElement parse_element(std::string_view text) {
  if (text.rfind("sparse:", 0) == 0) {
    std::map<std::int64_t, std::int64_t> coeffs;
    std::string body(text.substr(7));
    if (!body.empty()) {
      std::istringstream in(body);
      std::string item;
      while (std::getline(in, item, ',')) {
        auto eq = item.find('=');
        std::int64_t index = std::stoll(item.substr(0, eq));
        std::int64_t value = eq == std::string::npos ? 1 : std::stoll(item.substr(eq + 1));
        coeffs[index] = value;
      }
    }
    return sparse(std::move(coeffs));
  }
  if (text.rfind("word:", 0) == 0) {
    std::string body(text.substr(5));
    std::vector<int> letters;
    if (!body.empty()) {
      for (auto v : io::parse_ints(body)) letters.push_back(static_cast<int>(v));
    }
    return word(std::move(letters));
  }
  return vec(io::parse_ints(text));
}

std::vector<std::int64_t> parse_list_or_range(std::string_view text) {
  auto dots = text.find("..");
  if (dots == std::string_view::npos) return io::parse_ints(text);
  auto lo = io::parse_ints(text.substr(0, dots));
  auto hi = io::parse_ints(text.substr(dots + 2));
  if (lo.size() != 1 || hi.size() != 1 || hi[0] < lo[0]) throw InputError("ranges are written a..b with a <= b");
  std::vector<std::int64_t> out;
  for (auto v = lo[0]; v <= hi[0]; ++v) out.push_back(v);
  return out;
}

std::array<std::int64_t, 2> parse_pair(std::string_view text, std::string_view what) {
  auto v = io::parse_ints(text);
  if (v.size() != 2) throw InputError(std::string(what) + " must be a pair a,b");
  return {v[0], v[1]};
}

int resolve_k(const RunConfig& cfg) {
  int k = cfg.epsilon ? k_from_epsilon(*cfg.epsilon) : cfg.k;
  if (k < 1) throw InputError("k must be >= 1");
  return k;
}

StatusOptions status_options(const RunConfig& cfg) {
  StatusOptions o;
  if (cfg.method == "auto") {
    o.method = Method::Auto;
  } else if (cfg.method == "exhaustive") {
    o.method = Method::Exhaustive;
  } else {
    throw InputError("method is auto or exhaustive");
  }
  if (cfg.budget > 0) o.budget = cfg.budget;
  return o;
}

std::uint64_t group_budget(const RunConfig& cfg) { return cfg.budget > 0 ? cfg.budget : default_enumeration_budget; }

MetricGroup group_of(const RunConfig& cfg) { return parse_group(cfg.group, cfg.weights); }

Horoball horoball_arg(const RunConfig& cfg) {
  if (cfg.horofunction.empty()) throw InputError("--horofunction is required");
  return Horoball(io::horofunction_from_json(io::load_json_arg(cfg.horofunction)));
}

bool budget_inconclusive(const Certificate& c) {
  const auto* i = std::get_if<Inconclusive>(&c);
  return i != nullptr && i->reason == "budget";
}

// ---------------------------------------------------------------------------
// nd, direction

int cmd_nd(const RunConfig& cfg, Artifacts& a, std::ostream& out) {
  auto spec = io::parse_system(cfg.system);
  int k = resolve_k(cfg);
  auto grid = parse_grid(cfg.grid);
  auto report = nd_set(spec, k, cfg.window, grid, status_options(cfg), cfg.grid);
  report.metadata["seed"] = std::to_string(cfg.seed);
  fs::path dir = cfg.out.empty() ? fs::path(".") : fs::path(cfg.out);
  write_artifact(a, (dir / "nd_report.json").string(), dump(io::to_json(report)));
  write_artifact(a, (dir / "nd_summary.csv").string(), io::nd_summary_csv(report));
  write_artifact(a, (dir / "nd_circle.svg").string(), io::direction_circle_svg(report));

  std::map<std::string, int> counts;
  bool partial = false;
  for (const auto& e : report.entries) {
    ++counts[std::string(kind(e.certificate))];
    partial = partial || budget_inconclusive(e.certificate);
  }
  out << "ND set  k=" << k << " N=" << cfg.window << " grid=" << cfg.grid << " (" << grid.size() << " directions)\n";
  for (const auto& [kd, c] : counts) out << "  " << kd << ": " << c << "\n";
  out << "  witness directions:";
  for (const auto& d : report.witnesses()) out << " " << d.label();
  out << "\n  wrote " << (dir / "nd_report.json").string() << "\n";
  if (partial) {
    out << "  budget exhausted for some directions; report is partial\n";
    return exit_budget;
  }
  return exit_ok;
}

int cmd_direction(const RunConfig& cfg, Artifacts& a, std::ostream& out) {
  auto spec = io::parse_system(cfg.system);
  int k = resolve_k(cfg);
  if (cfg.direction.empty()) throw InputError("--direction is required");
  auto dirs = parse_grid(cfg.direction);
  if (dirs.size() != 1) throw InputError("--direction names exactly one direction");
  const auto& d = dirs.front();
  auto cert = direction_status(spec, d, k, cfg.window, status_options(cfg));
  Json j{{"direction", io::to_json(d)}, {"certificate", io::to_json(cert)}, {"system", describe(spec)}};
  if (const auto* w = std::get_if<Witness>(&cert)) j["verified"] = verify_witness(spec, d.horoball(), *w);
  emit(a, cfg, j, out);
  if (!cfg.out.empty()) out << d.label() << ": " << kind(cert) << "\n";
  return budget_inconclusive(cert) ? exit_budget : exit_ok;
}

// ---------------------------------------------------------------------------
// horoball

std::array<int, 2> heading_of_ray(Norm norm, std::array<std::int64_t, 2> r) {
  auto sgn = [](std::int64_t v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
  if (norm == Norm::Linf) {
    auto ax = std::abs(r[0]);
    auto ay = std::abs(r[1]);
    if (ax > ay) return {sgn(r[0]), 0};
    if (ay > ax) return {0, sgn(r[1])};
  }
  return {sgn(r[0]), sgn(r[1])};
}

int cmd_horoball_render(const RunConfig& cfg, Artifacts& a, std::ostream& out) {
  if (cfg.window < 1) throw InputError("--window must be >= 1");
  const int r = static_cast<int>(cfg.window);
  const int side = 2 * r + 1;
  std::vector<std::uint8_t> pixels;
  std::optional<Horoball> limit;
  std::vector<std::vector<std::int64_t>> centers;
  std::string what;
  Norm norm = Norm::L1;

  if (!cfg.horofunction.empty()) {
    limit.emplace(horoball_arg(cfg));
    for (auto in : raster(*limit, r)) pixels.push_back(in ? 0 : 255);
    what = describe(limit->horofunction());
    if (const auto* p = std::get_if<PolyhedralZ2>(&limit->horofunction())) norm = p->norm;
    if (std::holds_alternative<Linear>(limit->horofunction())) norm = Norm::L2;
  } else {
    auto group = group_of(cfg);
    if (group.lattice_dimension() != 2) throw InputError("horoball render needs a Z^2 group");
    norm = std::get<ZdLp>(group.descriptor()).norm;
    if (cfg.centers.rfind("ray:", 0) == 0) {
      auto ray = parse_pair(std::string_view(cfg.centers).substr(4), "ray");
      if (ray[0] == 0 && ray[1] == 0) throw InputError("ray must be nonzero");
      std::int64_t n = cfg.index.value_or(4 * cfg.window + 2);
      if (n < 1) throw InputError("--index must be >= 1");
      centers.push_back({n * ray[0], n * ray[1]});
      what = "b_g < 0 for g = " + std::to_string(n) + " * (" + std::to_string(ray[0]) + "," + std::to_string(ray[1]) + ")";
      if (norm == Norm::L2) {
        limit.emplace(l2_limit_of_ray({ray[0], ray[1]}));
      } else {
        limit.emplace(PolyhedralZ2::from_ray(norm, heading_of_ray(norm, ray), {0, 0}));
      }
    } else if (cfg.centers.rfind("point:", 0) == 0) {
      auto g = parse_pair(std::string_view(cfg.centers).substr(6), "point");
      centers.push_back({g[0], g[1]});
      what = "b_g < 0 for g = (" + std::to_string(g[0]) + "," + std::to_string(g[1]) + ")";
    } else {
      throw InputError("--centers is ray:a,b or point:x,y (or pass --horofunction)");
    }
    GroupElement g = vec(centers.front());
    for (std::int64_t y = r; y >= -r; --y) {
      for (std::int64_t x = -r; x <= r; ++x) pixels.push_back(group.busemann(g, vec({x, y})) < 0 ? 0 : 255);
    }
  }

  std::string path = cfg.out.empty() ? "horoball.pgm" : cfg.out;
  write_artifact(a, path, io::pgm(pixels, side, side));
  if (!cfg.svg.empty()) {
    if (!limit) throw InputError("--svg needs a ray or a horofunction");
    write_artifact(a, cfg.svg, io::horoball_svg(*limit, r, norm, centers));
  }
  auto inside = std::count(pixels.begin(), pixels.end(), std::uint8_t{0});
  out << what << "\n  window " << side << "x" << side << ", " << inside << " sites inside\n  wrote " << path << "\n";
  return exit_ok;
}

int cmd_horoball_eval(const RunConfig& cfg, Artifacts& a, std::ostream& out) {
  auto j = io::horofunction_from_json(io::load_json_arg(cfg.horofunction));
  if (cfg.point.empty()) throw InputError("--point is required");
  auto x = parse_element(cfg.point);
  auto v = eval(j, x);
  Json res{{"horofunction", io::to_json(j)}, {"point", to_string(x)}, {"value", v.value}, {"in_horoball", v.value < 0}};
  if (v.span) {
    res["span"] = *v.span;
    res["unstable"] = v.unstable;
  }
  emit(a, cfg, res, out);
  return exit_ok;
}

int cmd_horoball_enumerate(const RunConfig& cfg, Artifacts& a, std::ostream& out) {
  Norm norm = cfg.norm == "linf" ? Norm::Linf : Norm::L1;
  if (cfg.norm != "l1" && cfg.norm != "linf") throw InputError("--norm is l1 or linf");
  auto list = enumerate_polyhedral_horoballs_z2(static_cast<int>(cfg.window), norm);
  Json items = Json::array();
  for (const auto& p : list) items.push_back(io::to_json(Horofunction{p}));
  emit(a, cfg, Json{{"window", cfg.window}, {"norm", cfg.norm}, {"count", list.size()}, {"horoballs", items}}, out);
  if (!cfg.out.empty()) out << list.size() << " distinct horoballs on the window\n";
  return exit_ok;
}

int cmd_horoball_status(const RunConfig& cfg, Artifacts& a, std::ostream& out) {
  auto spec = io::parse_system(cfg.system);
  auto h = horoball_arg(cfg);
  int k = resolve_k(cfg);
  auto cert = horoball_status(spec, h, k, cfg.window, status_options(cfg));
  Json j{{"horofunction", io::to_json(h.horofunction())}, {"certificate", io::to_json(cert)}, {"system", describe(spec)}};
  if (const auto* w = std::get_if<Witness>(&cert)) j["verified"] = verify_witness(spec, h, *w);
  emit(a, cfg, j, out);
  return budget_inconclusive(cert) ? exit_budget : exit_ok;
}

// ---------------------------------------------------------------------------
// busemann, ball

int cmd_busemann(const RunConfig& cfg, Artifacts& a, std::ostream& out) {
  auto group = group_of(cfg);
  if (!cfg.center.empty()) {
    if (cfg.point.empty()) throw InputError("--point is required");
    auto g = parse_element(cfg.center);
    auto x = parse_element(cfg.point);
    emit(a, cfg,
         Json{{"group", group.describe()}, {"center", to_string(g)}, {"point", to_string(x)},
              {"value", group.busemann(g, x)}},
         out);
    return exit_ok;
  }
  auto ray = io::parse_ints(cfg.ray);
  std::vector<std::int64_t> ns = cfg.ns.empty() ? std::vector<std::int64_t>{1000, 10000, 1000000} : io::parse_ints(cfg.ns);
  auto at = [&](std::int64_t n) {
    std::vector<std::int64_t> c(ray);
    for (auto& v : c) v *= n;
    return vec(std::move(c));
  };
  Json rows = Json::array();
  if (!cfg.point.empty()) {
    auto x = parse_element(cfg.point);
    for (auto n : ns) rows.push_back(Json{{"n", n}, {"value", group.busemann(at(n), x)}});
    emit(a, cfg, Json{{"group", group.describe()}, {"ray", ray}, {"point", to_string(x)}, {"table", rows}}, out);
    return exit_ok;
  }
  if (!cfg.radius) throw InputError("pass --point, --center with --point, or --radius");
  const auto* zd = std::get_if<ZdLp>(&group.descriptor());
  if (zd == nullptr || zd->norm != Norm::L2) throw InputError("the convergence table compares against the l2 limit");
  if (ray.size() != static_cast<std::size_t>(zd->dimension)) throw InputError("ray dimension does not match the group");
  auto limit = l2_limit_of_ray(ray);
  auto ball = group.ball(group.identity(), *cfg.radius, true, group_budget(cfg));
  std::ostringstream summary;
  bool all = true;
  for (auto n : ns) {
    double worst = 0;
    bool ok = true;
    for (const auto& x : ball) {
      double err = std::abs(group.busemann(at(n), x) - eval(limit, x).value);
      double sq = 0;
      for (auto c : std::get<IntVector>(x).coords) sq += static_cast<double>(c) * static_cast<double>(c);
      worst = std::max(worst, err);
      ok = ok && err <= sq / static_cast<double>(n) + 1e-9;
    }
    all = all && ok;
    rows.push_back(Json{{"n", n}, {"max_error", worst}, {"within_bound", ok}});
    summary << "n=" << n << "  max |b - limit| = " << std::setprecision(6) << worst << (ok ? "  within" : "  exceeds")
            << " ||x||^2/n\n";
  }
  Json j{{"group", group.describe()},   {"ray", ray},     {"limit", io::to_json(Horofunction{limit})},
         {"radius", *cfg.radius},       {"sites", ball.size()}, {"table", rows},
         {"all_within_bound", all}};
  if (!cfg.out.empty()) out << summary.str();
  emit(a, cfg, j, out);
  return exit_ok;
}

int cmd_ball(const RunConfig& cfg, Artifacts& a, std::ostream& out) {
  auto group = group_of(cfg);
  if (!cfg.radius) throw InputError("--radius is required");
  auto c = cfg.center.empty() ? group.identity() : parse_element(cfg.center);
  group.check(c);
  auto ball = group.ball(c, *cfg.radius, cfg.closed, group_budget(cfg));
  auto csv = io::ball_csv(ball);
  if (cfg.out.empty()) {
    out << csv;
  } else {
    write_artifact(a, cfg.out, csv);
    out << ball.size() << " elements, wrote " << cfg.out << "\n";
  }
  return exit_ok;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify_meeting(const RunConfig& cfg, Artifacts& a, std::ostream& out) {
  auto group = group_of(cfg);
  auto dim = group.lattice_dimension();
  if (!dim || (*dim != 2 && *dim != 3)) throw InputError("meeting-radius is implemented for Z^2 and Z^3 with l2");
  auto grid = *dim == 2 ? circle_grid(cfg.directions) : sphere_grid(cfg.directions);
  auto rep = meeting_radius(group, grid);
  std::size_t verified = 0;
  std::set<std::vector<std::int64_t>> points;
  for (const auto& w : rep.witnesses) {
    const auto& p = std::get<IntVector>(w.point).coords;
    double dot = 0;
    double sq = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      dot += static_cast<double>(p[i]) * w.direction[i];
      sq += static_cast<double>(p[i] * p[i]);
    }
    if (dot < 0 && std::sqrt(sq) < static_cast<double>(rep.radius)) ++verified;
    points.insert(p);
  }
  Json pts = Json::array();
  for (const auto& p : points) pts.push_back(p);
  Json j{{"group", group.describe()},
         {"directions", grid.size()},
         {"radius", rep.radius},
         {"witnesses_reverified", verified},
         {"witness_points", pts}};
  if (!cfg.out.empty()) {
    out << "meeting radius N = " << rep.radius << " over " << grid.size() << " directions; " << verified
        << " witnesses re-verified\n";
  }
  emit(a, cfg, j, out);
  return exit_ok;
}

int cmd_verify_tangency(const RunConfig& cfg, Artifacts& a, std::ostream& out) {
  auto group = group_of(cfg);
  auto rep = verify_tangency(group, cfg.m, cfg.eps, io::parse_ints(cfg.ray), cfg.n_max);
  Json j{{"group", group.describe()}, {"M", cfg.m}, {"eps", cfg.eps}, {"ray", io::parse_ints(cfg.ray)},
         {"n_max", rep.n_max}, {"failing", rep.failing}};
  j["n0"] = rep.n0 ? Json(*rep.n0) : Json(nullptr);
  j["n0_norm"] = rep.n0_norm ? Json(*rep.n0_norm) : Json(nullptr);
  j["last_offending"] = rep.last_offending ? Json(to_string(*rep.last_offending)) : Json(nullptr);
  emit(a, cfg, j, out);
  if (!cfg.out.empty()) {
    out << (rep.n0 ? "passes for all n in [" + std::to_string(*rep.n0) + ", " + std::to_string(rep.n_max) + "]"
                   : std::string("no passing tail up to n_max"))
        << "\n";
  }
  return exit_ok;
}

int cmd_verify_cone_shift(const RunConfig& cfg, Artifacts& a, std::ostream& out) {
  auto parts = cfg.cone;
  auto semi = parts.find(';');
  if (semi == std::string::npos) throw InputError("--cone is from;to, e.g. 1,-1;1,1");
  RationalCone cone{parse_pair(parts.substr(0, semi), "cone edge"), parse_pair(parts.substr(semi + 1), "cone edge")};
  auto g = vec(io::parse_ints(cfg.shift));
  auto rep = verify_cone_shift(cone, cfg.eta, g, cfg.r_max, !cfg.skip_precondition);
  Json j{{"cone", {{cone.from[0], cone.from[1]}, {cone.to[0], cone.to[1]}}},
         {"eta", cfg.eta},
         {"g", to_string(g)},
         {"r_max", rep.r_max},
         {"failing", rep.failing},
         {"precondition_value", rep.precondition_value},
         {"precondition_checked", rep.precondition_checked}};
  j["n1"] = rep.n1 ? Json(*rep.n1) : Json(nullptr);
  j["last_offending"] = rep.last_offending ? Json(to_string(*rep.last_offending)) : Json(nullptr);
  emit(a, cfg, j, out);
  return exit_ok;
}

int cmd_verify_largeness(const RunConfig& cfg, Artifacts& a, std::ostream& out) {
  auto group = group_of(cfg);
  auto h = horoball_arg(cfg);
  Json results = Json::array();
  std::ostringstream summary;
  for (auto r : parse_list_or_range(cfg.radii)) {
    auto res = largeness_certificate(group, h, static_cast<double>(r), cfg.search_bound);
    Json e{{"radius", r}, {"found", res.found}, {"candidates_examined", res.candidates_examined}, {"note", res.note}};
    if (res.center) {
      e["center"] = to_string(*res.center);
      e["center_value"] = res.center_value;
    }
    summary << "R=" << r << ": " << (res.found ? "certified ball at " + to_string(*res.center) : res.note) << "\n";
    results.push_back(e);
  }
  Json j{{"group", group.describe()}, {"horofunction", io::to_json(h.horofunction())},
         {"search_bound", cfg.search_bound}, {"results", results}};
  if (!cfg.out.empty()) out << summary.str();
  emit(a, cfg, j, out);
  return exit_ok;
}

int cmd_verify_ball_sequence(const RunConfig& cfg, Artifacts& a, std::ostream& out) {
  if (cfg.sets.empty()) throw InputError("--sets is required");
  auto in = io::load_json_arg(cfg.sets);
  const Json& list = in.is_object() ? in.at("sets") : in;
  int dim = in.is_object() ? in.value("dimension", cfg.dimension) : cfg.dimension;
  int cutoff = in.is_object() ? in.value("cutoff", static_cast<int>(cfg.cutoff)) : static_cast<int>(cfg.cutoff);
  std::vector<std::vector<GroupElement>> sets;
  for (const auto& s : list) {
    std::vector<GroupElement> elems;
    for (const auto& e : s) {
      if (dim == 0) {
        std::map<std::int64_t, std::int64_t> c;
        for (const auto& i : e) c[i.get<std::int64_t>()] = 1;
        elems.push_back(sparse(std::move(c)));
      } else {
        elems.push_back(vec(e.get<std::vector<std::int64_t>>()));
      }
    }
    sets.push_back(std::move(elems));
  }
  auto rep = ball_sequence_check(std::move(sets), cutoff, dim);
  Json j{{"ok", rep.ok}, {"cutoff", cutoff}, {"dimension", dim}};
  j["generators_covered"] = rep.generators_covered ? Json(*rep.generators_covered) : Json(nullptr);
  if (rep.violation) {
    j["violation"] = Json{{"axiom", rep.violation->axiom},
                          {"n", rep.violation->n},
                          {"m", rep.violation->m},
                          {"element", to_string(rep.violation->element)}};
  }
  emit(a, cfg, j, out);
  return exit_ok;
}

// ---------------------------------------------------------------------------
// skew

SkewActionSpec skew_spec(const RunConfig& cfg) {
  SkewActionSpec s;
  s.alpha = cfg.alpha;
  s.beta = cfg.beta;
  if (cfg.base.rfind("full-shift", 0) == 0) {
    s.base.alphabet = 2;
    if (cfg.base.size() > 10) {
      if (cfg.base[10] != ':') throw InputError("base is full-shift[:A] or a JSON object");
      auto v = io::parse_ints(std::string_view(cfg.base).substr(11));
      if (v.size() != 1) throw InputError("full-shift:A takes one alphabet size");
      s.base.alphabet = static_cast<int>(v[0]);
    }
  } else {
    auto j = io::load_json_arg(cfg.base);
    s.base.alphabet = j.value("alphabet", 2);
    for (const auto& w : j.value("forbidden", Json::array())) s.base.forbidden_words.push_back(w.get<std::vector<int>>());
    if (j.contains("expansivity_level")) {
      s.base.expansivity_level =
          j["expansivity_level"].is_null() ? std::nullopt : std::optional<int>(j["expansivity_level"].get<int>());
    }
  }
  check(s);
  return s;
}

int cmd_skew_status(const RunConfig& cfg, Artifacts& a, std::ostream& out) {
  auto spec = skew_spec(cfg);
  auto h = horoball_arg(cfg);
  int k = resolve_k(cfg);
  auto rep = skew_horoball_status(spec, h, k, cfg.window);
  Json j = io::to_json(rep);
  j["horofunction"] = io::to_json(h.horofunction());
  j["alpha"] = spec.alpha;
  j["beta"] = spec.beta;
  emit(a, cfg, j, out);
  if (!cfg.out.empty()) out << kind(rep.certificate) << "\n";
  return exit_ok;
}

int cmd_skew_cones(const RunConfig& cfg, Artifacts& a, std::ostream& out) {
  auto spec = skew_spec(cfg);
  int k = resolve_k(cfg);
  Json cones = Json::array();
  std::ostringstream summary;
  for (std::int64_t t = 0; t <= cfg.t_max; ++t) {
    for (const auto& [name, p] : apex_cones(t)) {
      Horoball h{Horofunction{p}};
      auto rep = skew_horoball_status(spec, h, k, cfg.window);
      Json e = io::to_json(rep);
      e["t"] = t;
      e["cone"] = name;
      e["horofunction"] = io::to_json(h.horofunction());
      cones.push_back(e);
      summary << "t=" << t << " " << name << ": " << kind(rep.certificate) << "\n";
    }
  }
  Horoball limit{Horofunction{linear_horofunction({-1, 1})}};
  auto rep = skew_horoball_status(spec, limit, k, cfg.window);
  Json lim = io::to_json(rep);
  lim["horofunction"] = io::to_json(limit.horofunction());
  lim["set"] = "y < x";
  summary << "half-plane y < x: " << kind(rep.certificate) << (rep.image.covers_window ? " (exponent image covers [-N, N])" : "")
      << "\n";
  Json j{{"alpha", spec.alpha}, {"beta", spec.beta}, {"k", k}, {"window", cfg.window}, {"cones", cones}, {"limit", lim}};
  if (!cfg.out.empty()) out << summary.str();
  emit(a, cfg, j, out);
  return exit_ok;
}

// ---------------------------------------------------------------------------
// convex

std::vector<ExactVector> vectors_arg(const RunConfig& cfg) {
  if (cfg.vectors.empty()) throw InputError("--vectors is required");
  return io::vectors_from_json(io::load_json_arg(cfg.vectors));
}

Json vector_labels(const std::vector<ExactVector>& v) {
  Json out = Json::array();
  for (const auto& e : v) out.push_back(e.label());
  return out;
}

int cmd_convex_origin(const RunConfig& cfg, Artifacts& a, std::ostream& out) {
  auto v = vectors_arg(cfg);
  auto cert = origin_in_hull(v);
  Json j{{"vectors", vector_labels(v)}, {"certificate", io::to_json(cert)}, {"verified", verify(v, cert)}};
  emit(a, cfg, j, out);
  if (!cfg.out.empty()) out << (std::holds_alternative<InHull>(cert) ? "InHull" : "Separated") << "\n";
  return exit_ok;
}

int cmd_convex_coverage(const RunConfig& cfg, Artifacts& a, std::ostream& out) {
  auto v = vectors_arg(cfg);
  if (cfg.probes == 0) throw InputError("--probes must be positive");
  std::size_t d = v.front().coords.size();
  std::vector<std::vector<double>> probes;
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss;
  for (std::size_t i = 0; i < cfg.probes; ++i) {
    if (d == 2 && !cfg.random_probes) {
      double t = 2 * std::numbers::pi * (static_cast<double>(i) + 0.5) / static_cast<double>(cfg.probes);
      probes.push_back({std::cos(t), std::sin(t)});
    } else {
      std::vector<double> p(d);
      for (auto& c : p) c = gauss(rng);
      probes.push_back(std::move(p));
    }
  }
  auto rep = halfspace_coverage(v, probes);
  Json j{{"vectors", vector_labels(v)},
         {"probes", probes.size()},
         {"covered", rep.covered},
         {"probes_passed", std::count(rep.probe_passed.begin(), rep.probe_passed.end(), true)}};
  j["first_failing_probe"] = rep.first_failing_probe ? Json(*rep.first_failing_probe) : Json(nullptr);
  j["max_gap_degrees"] = rep.max_gap_degrees ? Json(*rep.max_gap_degrees) : Json(nullptr);
  j["gap_at_most_half_turn"] = rep.gap_at_most_half_turn ? Json(*rep.gap_at_most_half_turn) : Json(nullptr);
  emit(a, cfg, j, out);
  return exit_ok;
}

int cmd_convex_intersection(const RunConfig& cfg, Artifacts& a, std::ostream& out) {
  auto v = vectors_arg(cfg);
  auto res = intersection_empty(v);
  Json j{{"vectors", vector_labels(v)}, {"empty", res.empty}, {"certificate", io::to_json(res.certificate)}};
  if (res.witness) {
    Json w = Json::array();
    for (const auto& c : *res.witness) w.push_back(io::rational_string(c));
    j["witness"] = w;
  }
  emit(a, cfg, j, out);
  return exit_ok;
}

// ---------------------------------------------------------------------------
// render

int cmd_render_circle(const RunConfig& cfg, Artifacts& a, std::ostream& out) {
  if (cfg.report.empty()) throw InputError("--report is required");
  auto j = io::load_json_arg(cfg.report);
  NDReport r;
  r.k = j.value("k", 0);
  r.window = j.value("window", std::int64_t{0});
  for (const auto& [d, kd] : io::nd_entries_from_json(j)) {
    Certificate c = Inconclusive{r.window, r.k, ""};
    if (kd == "Witness") c = Witness{{}, {}, r.window, r.k, false};
    if (kd == "WindowDeterministic") c = WindowDeterministic{r.window, r.k};
    r.entries.push_back({d, c});
  }
  std::string path = cfg.out.empty() ? "nd_circle.svg" : cfg.out;
  write_artifact(a, path, io::direction_circle_svg(r));
  out << "wrote " << path << "\n";
  return exit_ok;
}

}  // namespace

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto start = std::chrono::steady_clock::now();
  Artifacts a;
  int status = exit_ok;
  auto is = [&](std::initializer_list<const char*> path) {
    return std::equal(cfg.command.begin(), cfg.command.end(), path.begin(), path.end(),
                      [](const std::string& s, const char* p) { return s == p; });
  };
  try {
    if (is({"nd"})) status = cmd_nd(cfg, a, out);
    else if (is({"direction"})) status = cmd_direction(cfg, a, out);
    else if (is({"horoball", "render"})) status = cmd_horoball_render(cfg, a, out);
    else if (is({"horoball", "eval"})) status = cmd_horoball_eval(cfg, a, out);
    else if (is({"horoball", "enumerate"})) status = cmd_horoball_enumerate(cfg, a, out);
    else if (is({"horoball", "status"})) status = cmd_horoball_status(cfg, a, out);
    else if (is({"busemann"})) status = cmd_busemann(cfg, a, out);
    else if (is({"ball"})) status = cmd_ball(cfg, a, out);
    else if (is({"verify", "meeting-radius"})) status = cmd_verify_meeting(cfg, a, out);
    else if (is({"verify", "tangency"})) status = cmd_verify_tangency(cfg, a, out);
    else if (is({"verify", "cone-shift"})) status = cmd_verify_cone_shift(cfg, a, out);
    else if (is({"verify", "largeness"})) status = cmd_verify_largeness(cfg, a, out);
    else if (is({"verify", "ball-sequence"})) status = cmd_verify_ball_sequence(cfg, a, out);
    else if (is({"skew", "status"})) status = cmd_skew_status(cfg, a, out);
    else if (is({"skew", "cones"})) status = cmd_skew_cones(cfg, a, out);
    else if (is({"convex", "origin-test"})) status = cmd_convex_origin(cfg, a, out);
    else if (is({"convex", "coverage"})) status = cmd_convex_coverage(cfg, a, out);
    else if (is({"convex", "intersection"})) status = cmd_convex_intersection(cfg, a, out);
    else if (is({"render", "direction-circle"})) status = cmd_render_circle(cfg, a, out);
    else throw InputError("unknown command");
  } catch (const ResourceError& e) {
    err << "budget exhausted: " << e.what() << "\n";
    status = exit_budget;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    status = exit_usage;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    status = exit_usage;
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_log(a, cfg, status, seconds);
  return status;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Horoballs, Busemann functions and window-scale expansivity of Z^2 actions", "horo"};
  app.set_config("--config", "", "Key-value config file (TOML/INI)");
  app.require_subcommand(1);
  app.add_option("--seed", cfg.seed, "Seed for randomized probes")->capture_default_str();

  auto opt_out = [&](CLI::App* s, const char* help) { s->add_option("--out", cfg.out, help); };
  auto opt_group = [&](CLI::App* s) {
    s->add_option("--group", cfg.group, "Group descriptor: z2-l1, z3-l2, z2-linf, weighted, sum-z2, free:2")
        ->capture_default_str();
    s->add_option("--weights", cfg.weights, "Generator weights, e.g. 1,2,3,...");
  };
  auto opt_system = [&](CLI::App* s) {
    s->add_option("--system", cfg.system, "ledrappier, full-shift[:A], or a JSON spec")->capture_default_str();
    s->add_option("--method", cfg.method, "auto or exhaustive")->capture_default_str();
  };
  auto opt_scale = [&](CLI::App* s) {
    s->add_option("--k", cfg.k, "Scale: eps = 2^-k")->capture_default_str();
    s->add_option("--epsilon", cfg.epsilon, "Scale as eps; overrides --k");
    s->add_option("--window", cfg.window, "Window radius N")->capture_default_str();
  };
  auto opt_budget = [&](CLI::App* s) { s->add_option("--budget", cfg.budget, "Enumeration budget"); };
  auto opt_horo = [&](CLI::App* s) { s->add_option("--horofunction", cfg.horofunction, "Horofunction JSON or path"); };

  auto* nd = app.add_subcommand("nd", "Window-scale ND set over a direction grid");
  opt_system(nd);
  opt_scale(nd);
  opt_budget(nd);
  nd->add_option("--grid", cfg.grid, "farey:Q[+diag] or a,b;c,d;diag")->capture_default_str();
  opt_out(nd, "Output directory");

  auto* dir = app.add_subcommand("direction", "Certificate for one direction");
  opt_system(dir);
  opt_scale(dir);
  opt_budget(dir);
  dir->add_option("--direction", cfg.direction, "a,b or diag")->required();
  opt_out(dir, "Output JSON");

  auto* horo = app.add_subcommand("horoball", "Horoball rasters and certificates");
  horo->require_subcommand(1);
  auto* render = horo->add_subcommand("render", "PGM raster of a horoball");
  opt_group(render);
  opt_horo(render);
  render->add_option("--centers", cfg.centers, "ray:a,b or point:x,y");
  render->add_option("--index", cfg.index, "Index n of the center n*(a,b); default 4N+2");
  render->add_option("--window", cfg.window, "Half side of the raster")->capture_default_str();
  render->add_option("--svg", cfg.svg, "Also write an SVG overlay");
  opt_out(render, "Output PGM");
  auto* heval = horo->add_subcommand("eval", "Value of a horofunction at a point");
  opt_horo(heval);
  heval->add_option("--point", cfg.point, "Element")->required();
  opt_out(heval, "Output JSON");
  auto* henum = horo->add_subcommand("enumerate", "Distinct l1/l_inf horoballs of Z^2 on a window");
  henum->add_option("--norm", cfg.norm, "l1 or linf")->capture_default_str();
  henum->add_option("--window", cfg.window, "Window radius")->capture_default_str();
  opt_out(henum, "Output JSON");
  auto* hstatus = horo->add_subcommand("status", "Certificate for an arbitrary horoball");
  opt_system(hstatus);
  opt_scale(hstatus);
  opt_budget(hstatus);
  opt_horo(hstatus);
  opt_out(hstatus, "Output JSON");

  auto* bus = app.add_subcommand("busemann", "Busemann values and convergence tables");
  opt_group(bus);
  opt_budget(bus);
  bus->add_option("--center", cfg.center, "Center g of b_g");
  bus->add_option("--point", cfg.point, "Point x");
  bus->add_option("--ray", cfg.ray, "Ray direction for g_n = n*ray")->capture_default_str();
  bus->add_option("--n", cfg.ns, "Comma list of indices");
  bus->add_option("--radius", cfg.radius, "Closed ball radius for the convergence table");
  opt_out(bus, "Output JSON");

  auto* ball = app.add_subcommand("ball", "Ball enumeration as CSV");
  opt_group(ball);
  opt_budget(ball);
  ball->add_option("--center", cfg.center, "Center (default identity)");
  ball->add_option("--radius", cfg.radius, "Radius")->required();
  ball->add_flag("--closed", cfg.closed, "Closed ball");
  opt_out(ball, "Output CSV");

  auto* ver = app.add_subcommand("verify", "Finite verifiers");
  ver->require_subcommand(1);
  auto* vm = ver->add_subcommand("meeting-radius", "Least N such that every l2 horoball meets B_N(0)");
  vm->add_option("--group", cfg.group, "z2-l2 or z3-l2");
  vm->add_option("--directions", cfg.directions, "Grid size")->capture_default_str();
  opt_out(vm, "Output JSON");
  auto* vt = ver->add_subcommand("tangency", "Tangency of horoball and ball at g_n = n*ray");
  vt->add_option("--group", cfg.group, "z2-l2");
  vt->add_option("--m", cfg.m, "Ball radius M")->capture_default_str();
  vt->add_option("--eps", cfg.eps, "Tolerance")->capture_default_str();
  vt->add_option("--ray", cfg.ray, "Ray")->capture_default_str();
  vt->add_option("--n-max", cfg.n_max, "Largest n")->capture_default_str();
  opt_out(vt, "Output JSON");
  auto* vc = ver->add_subcommand("cone-shift", "Shifted cone balls inside B_r(0)");
  vc->add_option("--cone", cfg.cone, "from;to edges, counterclockwise")->capture_default_str();
  vc->add_option("--eta", cfg.eta, "eta")->capture_default_str();
  vc->add_option("--g", cfg.shift, "Shift g")->capture_default_str();
  vc->add_option("--r-max", cfg.r_max, "Largest r")->capture_default_str();
  vc->add_flag("--skip-precondition", cfg.skip_precondition, "Do not require <g,u> < -eta|u| on the edges");
  opt_out(vc, "Output JSON");
  auto* vl = ver->add_subcommand("largeness", "Balls of radius R inside a horoball");
  opt_group(vl);
  opt_horo(vl);
  vl->add_option("--radius", cfg.radii, "Radii: list or a..b")->capture_default_str();
  vl->add_option("--search-bound", cfg.search_bound, "Search ball radius")->capture_default_str();
  opt_out(vl, "Output JSON");
  auto* vb = ver->add_subcommand("ball-sequence", "Axioms of a nested ball sequence");
  vb->add_option("--sets", cfg.sets, "JSON {dimension, cutoff, sets} or path")->required();
  vb->add_option("--cutoff", cfg.cutoff, "Cutoff")->capture_default_str();
  vb->add_option("--dimension", cfg.dimension, "Ambient dimension, 0 for the direct sum")->capture_default_str();
  opt_out(vb, "Output JSON");

  auto* skew = app.add_subcommand("skew", "Skew actions (n,m) -> sigma^{alpha n + beta m}");
  skew->require_subcommand(1);
  auto add_skew = [&](CLI::App* s) {
    s->add_option("--base", cfg.base, "full-shift[:A] or JSON {alphabet, forbidden}")->capture_default_str();
    s->add_option("--alpha", cfg.alpha, "alpha")->capture_default_str();
    s->add_option("--beta", cfg.beta, "beta")->capture_default_str();
    opt_scale(s);
  };
  auto* sstatus = skew->add_subcommand("status", "Certificate for one horoball");
  add_skew(sstatus);
  opt_horo(sstatus);
  opt_out(sstatus, "Output JSON");
  auto* scones = skew->add_subcommand("cones", "Apex cones (t,t) and the half-plane y < x");
  add_skew(scones);
  scones->add_option("--t-max", cfg.t_max, "Largest apex t")->capture_default_str();
  opt_out(scones, "Output JSON");

  auto* cvx = app.add_subcommand("convex", "Convexity of direction sets");
  cvx->require_subcommand(1);
  auto* co = cvx->add_subcommand("origin-test", "Origin in the convex hull, with certificate");
  co->add_option("--vectors", cfg.vectors, "Vectors JSON, path, or an nd_report.json")->required();
  opt_out(co, "Output JSON");
  auto* cc = cvx->add_subcommand("coverage", "Closed half-plane coverage");
  cc->add_option("--vectors", cfg.vectors, "Vectors JSON or path")->required();
  cc->add_option("--probes", cfg.probes, "Probe count")->capture_default_str();
  cc->add_flag("--random", cfg.random_probes, "Random probes from --seed");
  opt_out(cc, "Output JSON");
  auto* ci = cvx->add_subcommand("intersection", "Emptiness of the intersection of the horoballs");
  ci->add_option("--vectors", cfg.vectors, "Vectors JSON or path")->required();
  opt_out(ci, "Output JSON");

  auto* rend = app.add_subcommand("render", "Figures from saved reports");
  rend->require_subcommand(1);
  auto* rc = rend->add_subcommand("direction-circle", "SVG of an ND report on the unit circle");
  rc->add_option("--report", cfg.report, "nd_report.json")->required();
  opt_out(rc, "Output SVG");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  const CLI::App* node = &app;
  while (true) {
    auto subs = node->get_subcommands();
    if (subs.empty()) break;
    node = subs.front();
    cfg.command.push_back(node->get_name());
  }
  if ((vm->parsed() && vm->count("--group") == 0) || (vt->parsed() && vt->count("--group") == 0)) cfg.group = "z2-l2";
  if (cfg.budget == 0 && (nd->count("--budget") + dir->count("--budget") + ball->count("--budget") +
                          bus->count("--budget") + hstatus->count("--budget")) > 0) {
    err << "error: budgets must be positive\n";
    return exit_usage;
  }
  return execute(cfg, out, err);
}

}  // namespace horo::cli
