#include "horo/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace horo::io {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const char* symbol_chars = "0123456789abcdefghijklmnopqrstuvwxyz";

char symbol_char(int s) {
  if (s < 0 || s >= 36) throw InputError("symbol " + std::to_string(s) + " has no single-character form");
  return symbol_chars[s];
}

int char_symbol(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  throw InputError(std::string("unexpected symbol character '") + c + "'");
}

Json sites_json(const std::vector<Site>& sites) {
  Json out = Json::array();
  for (const auto& s : sites) out.push_back({s[0], s[1]});
  return out;
}

Site site_from_json(const Json& j) {
  if (!j.is_array() || j.size() < 2) throw InputError("sites are [x, y] pairs");
  return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

Norm parse_norm(std::string_view s) {
  if (s == "l1") return Norm::L1;
  if (s == "l2") return Norm::L2;
  if (s == "linf") return Norm::Linf;
  throw InputError("unknown norm '" + std::string(s) + "'");
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number()) return exact_rational(j.get<double>());
  if (j.is_string()) {
    try {
      return Rational(j.get<std::string>());
    } catch (const std::exception&) {
      throw InputError("cannot read '" + j.get<std::string>() + "' as a rational");
    }
  }
  throw InputError("vector entries are numbers or \"p/q\" strings");
}

}  // namespace

std::vector<std::int64_t> parse_ints(std::string_view text) {
  std::vector<std::int64_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string item(text.substr(start, end - start));
    std::size_t used = 0;
    try {
      out.push_back(std::stoll(item, &used));
    } catch (const std::exception&) {
      throw InputError("expected integers separated by commas, got '" + std::string(text) + "'");
    }
    if (used != item.size()) throw InputError("expected integers separated by commas, got '" + std::string(text) + "'");
    start = end + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subshifts

SubshiftSpec spec_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) throw InputError("subshift spec needs a \"kind\"");
  auto kind = j.at("kind").get<std::string>();
  SubshiftSpec spec;
  if (kind == "ledrappier") {
    spec = ledrappier();
  } else if (kind == "linear-gf2") {
    LinearGF2 l;
    for (const auto& s : j.at("support")) l.support.push_back(site_from_json(s));
    spec = l;
  } else if (kind == "full-shift") {
    spec = FullShift{j.value("alphabet", 2)};
  } else if (kind == "sft") {
    SFT s;
    s.alphabet = j.value("alphabet", 2);
    for (const auto& f : j.at("forbidden")) {
      Pattern p;
      for (const auto& e : f) {
        if (!e.is_array() || e.size() != 3) throw InputError("forbidden pattern entries are [x, y, symbol]");
        p.symbols[{e[0].get<std::int64_t>(), e[1].get<std::int64_t>()}] = e[2].get<int>();
      }
      s.forbidden.push_back(std::move(p));
    }
    spec = s;
  } else {
    throw InputError("unknown subshift kind '" + kind + "'");
  }
  check(spec);
  return spec;
}

Json to_json(const SubshiftSpec& spec) {
  return std::visit(overloaded{
                        [](const SFT& s) {
                          Json forbidden = Json::array();
                          for (const auto& p : s.forbidden) {
                            Json entries = Json::array();
                            for (const auto& [site, v] : p.symbols) entries.push_back({site[0], site[1], v});
                            forbidden.push_back(entries);
                          }
                          return Json{{"kind", "sft"}, {"alphabet", s.alphabet}, {"forbidden", forbidden}};
                        },
                        [](const LinearGF2& l) { return Json{{"kind", "linear-gf2"}, {"support", sites_json(l.support)}}; },
                        [](const FullShift& f) { return Json{{"kind", "full-shift"}, {"alphabet", f.alphabet}}; },
                    },
                    spec);
}

SubshiftSpec parse_system(std::string_view text) {
  if (text == "ledrappier") return ledrappier();
  if (text == "full-shift") return FullShift{2};
  if (text.rfind("full-shift:", 0) == 0) {
    auto a = parse_ints(text.substr(11));
    if (a.size() != 1 || a[0] < 1) throw InputError("full-shift:A needs a positive alphabet size");
    return FullShift{static_cast<int>(a[0])};
  }
  return spec_from_json(load_json_arg(text));
}

Json to_json(const Pattern& p) {
  Json out = Json::array();
  for (const auto& [s, v] : p.symbols) out.push_back({s[0], s[1], v});
  return out;
}

Pattern pattern_from_json(const Json& j) {
  Pattern p;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 3) throw InputError("pattern entries are [x, y, symbol]");
    p.symbols[{e[0].get<std::int64_t>(), e[1].get<std::int64_t>()}] = e[2].get<int>();
  }
  return p;
}

std::string pattern_csv(const Pattern& p) {
  std::string out = "x,y,symbol\n";
  for (const auto& [s, v] : p.symbols) {
    out += std::to_string(s[0]) + "," + std::to_string(s[1]) + "," + std::to_string(v) + "\n";
  }
  return out;
}

Pattern pattern_from_csv(std::string_view text) {
  Pattern p;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'x') continue;
    auto v = parse_ints(line);
    if (v.size() != 3) throw InputError("pattern CSV rows are x,y,symbol");
    p.symbols[{v[0], v[1]}] = static_cast<int>(v[2]);
  }
  return p;
}

Json filling_json(const WindowFilling& f) {
  Json rows = Json::array();
  Window w = f.window();
  for (std::int64_t y = f.radius; y >= -f.radius; --y) {
    std::string row;
    for (std::int64_t x = -f.radius; x <= f.radius; ++x) row += symbol_char(f.symbols[w.index(x, y)]);
    rows.push_back(row);
  }
  return Json{{"window", f.radius}, {"rows", rows}};
}

WindowFilling filling_from_json(const Json& j) {
  WindowFilling f;
  f.radius = j.at("window").get<std::int64_t>();
  Window w = f.window();
  f.symbols.assign(w.size(), 0);
  const auto& rows = j.at("rows");
  if (rows.size() != static_cast<std::size_t>(w.side())) throw InputError("filling has the wrong number of rows");
  for (std::int64_t r = 0; r < w.side(); ++r) {
    auto row = rows[static_cast<std::size_t>(r)].get<std::string>();
    if (row.size() != static_cast<std::size_t>(w.side())) throw InputError("filling row has the wrong length");
    std::int64_t y = f.radius - r;
    for (std::int64_t c = 0; c < w.side(); ++c) {
      f.symbols[w.index(c - f.radius, y)] = static_cast<std::uint8_t>(char_symbol(row[static_cast<std::size_t>(c)]));
    }
  }
  f.valid = true;
  return f;
}

// ---------------------------------------------------------------------------
// Horofunctions

Horofunction horofunction_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) throw InputError("horofunction needs a \"kind\"");
  auto kind = j.at("kind").get<std::string>();
  if (kind == "linear") {
    const auto& v = j.at("v");
    bool integral = std::all_of(v.begin(), v.end(), [](const Json& c) { return c.is_number_integer(); });
    if (integral) return linear_horofunction(v.get<std::vector<std::int64_t>>());
    return l2_horoball(v.get<std::vector<double>>()).horofunction();
  }
  if (kind == "polyhedral") {
    PolyhedralZ2 p;
    p.norm = parse_norm(j.value("norm", std::string("l1")));
    auto h = j.at("heading").get<std::vector<int>>();
    if (h.size() != 2) throw InputError("heading is a pair");
    if (j.contains("apex")) {
      auto a = j.at("apex").get<std::vector<std::int64_t>>();
      if (a.size() != 2) throw InputError("apex is a pair");
      p = PolyhedralZ2::from_ray(p.norm, {h[0], h[1]}, {0, 0});
      p.apex = {a[0], a[1]};
    } else {
      auto o = j.value("offset", std::vector<std::int64_t>{0, 0});
      if (o.size() != 2) throw InputError("offset is a pair");
      p = PolyhedralZ2::from_ray(p.norm, {h[0], h[1]}, {o[0], o[1]});
    }
    return p;
  }
  if (kind == "sampled") {
    Sampled s;
    s.group = std::make_shared<const MetricGroup>(
        parse_group(j.at("group").get<std::string>(), j.value("weights", std::string())));
    s.truncation = j.value("truncation", std::int64_t{1000});
    s.tolerance = j.value("tolerance", 1e-4);
    if (j.contains("ray")) {
      s.rule = SequenceRule::ray(j.at("ray").get<std::vector<std::int64_t>>(),
                                 j.value("offset", std::vector<std::int64_t>{}));
    } else if (j.value("rule", std::string()) == "basis") {
      s.rule = SequenceRule::basis();
    } else if (j.contains("elements")) {
      std::vector<GroupElement> elems;
      for (const auto& e : j.at("elements")) elems.push_back(vec(e.get<std::vector<std::int64_t>>()));
      s.rule = SequenceRule::list(std::move(elems));
    } else {
      throw InputError("sampled horofunction needs \"ray\", \"rule\":\"basis\" or \"elements\"");
    }
    return s;
  }
  throw InputError("unknown horofunction kind '" + kind + "'");
}

Json to_json(const Horofunction& h) {
  return std::visit(overloaded{
                        [](const Linear& l) {
                          Json out{{"kind", "linear"}, {"v", l.v}};
                          if (l.integer_direction) out["direction"] = *l.integer_direction;
                          return out;
                        },
                        [](const PolyhedralZ2& p) {
                          return Json{{"kind", "polyhedral"},
                                      {"norm", std::string(to_string(p.norm))},
                                      {"heading", {p.heading[0], p.heading[1]}},
                                      {"apex", {p.apex[0], p.apex[1]}},
                                      {"shape", std::string(to_string(p.kind()))}};
                        },
                        [](const Sampled& s) {
                          Json out{{"kind", "sampled"},
                                   {"group", s.group ? s.group->describe() : std::string()},
                                   {"truncation", s.truncation},
                                   {"tolerance", s.tolerance}};
                          if (s.rule.kind == SequenceRule::Kind::Ray) {
                            out["ray"] = s.rule.direction;
                            out["offset"] = s.rule.offset;
                          } else if (s.rule.kind == SequenceRule::Kind::Basis) {
                            out["rule"] = "basis";
                          } else {
                            out["elements"] = s.rule.elements.size();
                          }
                          return out;
                        },
                    },
                    h);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

Json load_json_arg(std::string_view text) {
  std::string s(text);
  auto first = s.find_first_not_of(" \t\n");
  std::string body = (first != std::string::npos && (s[first] == '{' || s[first] == '[')) ? s : read_file(s);
  try {
    return Json::parse(body);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Certificates and reports

Json to_json(const Direction& d) {
  if (d.special) return Json{*d.special, d.integer[0], d.integer[1]};
  return Json{d.integer[0], d.integer[1]};
}

Direction direction_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("directions are [a, b] or [\"sqrt-normalized\", a, b]");
  if (j.size() == 3 && j[0].is_string()) {
    return Direction{{j[1].get<std::int64_t>(), j[2].get<std::int64_t>()}, j[0].get<std::string>()};
  }
  if (j.size() != 2) throw InputError("directions are [a, b]");
  return Direction{{j[0].get<std::int64_t>(), j[1].get<std::int64_t>()}, std::nullopt};
}

Json to_json(const Certificate& c) {
  return std::visit(overloaded{
                        [](const WindowDeterministic& d) {
                          return Json{{"kind", "WindowDeterministic"}, {"window", d.window}, {"k", d.k}};
                        },
                        [](const Witness& w) {
                          Json out{{"kind", "Witness"},
                                   {"window", w.window},
                                   {"k", w.k},
                                   {"extendable", w.extendable},
                                   {"claim", w.extendable ? "asymptotic pair extends past the window"
                                                          : "window witness"}};
                          if (!w.x.symbols.empty() && w.x.symbols.size() == w.y.symbols.size()) {
                            out["x"] = filling_json(w.x);
                            out["y"] = filling_json(w.y);
                            Json diff = Json::array();
                            Window win = w.x.window();
                            for (std::size_t i = 0; i < w.x.symbols.size(); ++i) {
                              if (w.x.symbols[i] != w.y.symbols[i]) {
                                Site s = win.site(i);
                                diff.push_back({s[0], s[1]});
                              }
                            }
                            out["differences"] = diff;
                          }
                          return out;
                        },
                        [](const Inconclusive& i) {
                          return Json{{"kind", "Inconclusive"}, {"window", i.window}, {"k", i.k}, {"reason", i.reason}};
                        },
                    },
                    c);
}

Json to_json(const NDReport& r) {
  Json entries = Json::array();
  Json counts = Json::object();
  Json witnesses = Json::array();
  for (const auto& e : r.entries) {
    auto u = e.direction.unit();
    entries.push_back(Json{{"direction", to_json(e.direction)}, {"unit", {u[0], u[1]}}, {"certificate", to_json(e.certificate)}});
    std::string k(kind(e.certificate));
    counts[k] = counts.value(k, 0) + 1;
    if (k == "Witness") witnesses.push_back(to_json(e.direction));
  }
  return Json{{"k", r.k},
              {"window", r.window},
              {"epsilon", "2^-" + std::to_string(r.k)},
              {"metadata", r.metadata},
              {"entries", entries},
              {"summary", {{"counts", counts}, {"witness_directions", witnesses}}}};
}

std::string nd_summary_csv(const NDReport& r) {
  std::string out = "direction,unit_x,unit_y,certificate,extendable\n";
  for (const auto& e : r.entries) {
    auto u = e.direction.unit();
    std::string ext;
    if (const auto* w = std::get_if<Witness>(&e.certificate)) ext = w->extendable ? "true" : "false";
    std::string label = e.direction.label();
    out += "\"" + label + "\"," + fmt(u[0]) + "," + fmt(u[1]) + "," + std::string(kind(e.certificate)) + "," + ext + "\n";
  }
  return out;
}

std::string direction_circle_svg(const NDReport& r) {
  const double c = 220, rad = 180;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"440\" height=\"460\" viewBox=\"0 0 440 460\">\n"
     << "<circle cx=\"220\" cy=\"220\" r=\"180\" fill=\"none\" stroke=\"#888\"/>\n";
  for (const auto& e : r.entries) {
    auto u = e.direction.unit();
    double x = c + rad * u[0];
    double y = c - rad * u[1];
    std::string k(kind(e.certificate));
    const char* colour = k == "Witness" ? "#c0392b" : (k == "Inconclusive" ? "#e67e22" : "#7f8c8d");
    double size = k == "Witness" ? 6 : 2.5;
    os << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"" << size << "\" fill=\"" << colour << "\"/>\n";
    if (k == "Witness") {
      os << "<text x=\"" << fmt(c + (rad + 14) * u[0]) << "\" y=\"" << fmt(c - (rad + 14) * u[1] + 4)
         << "\" font-size=\"11\" text-anchor=\"middle\">" << e.direction.label() << "</text>\n";
    }
  }
  os << "<text x=\"10\" y=\"450\" font-size=\"12\">k=" << r.k << " N=" << r.window
     << "  red: Witness  grey: WindowDeterministic  orange: Inconclusive</text>\n</svg>\n";
  return os.str();
}

std::vector<std::pair<Direction, std::string>> nd_entries_from_json(const Json& j) {
  std::vector<std::pair<Direction, std::string>> out;
  for (const auto& e : j.at("entries")) {
    out.emplace_back(direction_from_json(e.at("direction")), e.at("certificate").at("kind").get<std::string>());
  }
  return out;
}

Json to_json(const ExponentImage& e) {
  Json steps = Json::array();
  for (const auto& s : e.steps) {
    Json step{{"bound", s.bound}, {"sites", s.sites}};
    step["min"] = s.min ? Json(*s.min) : Json(nullptr);
    step["max"] = s.max ? Json(*s.max) : Json(nullptr);
    steps.push_back(step);
  }
  return Json{{"steps", steps},
              {"bounded_below", e.bounded_below},
              {"bounded_above", e.bounded_above},
              {"covers_window", e.covers_window},
              {"missing", e.missing}};
}

Json to_json(const SkewReport& r) {
  Json out{{"certificate", to_json(r.certificate)}, {"exponent_image", to_json(r.image)}};
  if (!r.base_x.empty()) {
    auto word = [](const std::vector<int>& w) {
      std::string s;
      for (int v : w) s += symbol_char(v);
      return s;
    };
    Json pair{{"first_index", -r.base_radius}, {"x", word(r.base_x)}, {"y", word(r.base_y)}};
    if (r.difference_site) pair["difference_site"] = *r.difference_site;
    out["witness_pair"] = pair;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Convexity

std::vector<ExactVector> vectors_from_json(const Json& j) {
  std::vector<ExactVector> out;
  if (j.is_object()) {
    if (!j.contains("entries")) throw InputError("expected a vector list or an ND report");
    for (const auto& [d, k] : nd_entries_from_json(j)) {
      if (k == "Witness") out.push_back(ExactVector::normalized({Rational(d.integer[0]), Rational(d.integer[1])}));
    }
    if (out.empty()) throw InputError("ND report has no Witness directions");
    return out;
  }
  if (!j.is_array()) throw InputError("expected a vector list or an ND report");
  for (const auto& v : j) {
    if (!v.is_array() || v.empty()) throw InputError("each vector is a nonempty array");
    ExactVector e;
    std::size_t first = 0;
    if (v[0].is_string() && v[0].get<std::string>() == "sqrt-normalized") {
      e.sqrt_normalized = true;
      first = 1;
    }
    for (std::size_t i = first; i < v.size(); ++i) e.coords.push_back(rational_from_json(v[i]));
    out.push_back(std::move(e));
  }
  if (out.empty()) throw InputError("vector set must be nonempty");
  return out;
}

std::string rational_string(const Rational& r) { return r.str(); }

Json to_json(const HullCertificate& c) {
  if (const auto* s = std::get_if<Separated>(&c)) {
    Json cs = Json::array();
    for (const auto& x : s->c) cs.push_back(rational_string(x));
    return Json{{"kind", "Separated"}, {"c", cs}};
  }
  const auto& h = std::get<InHull>(c);
  Json mu = Json::array();
  for (const auto& m : h.mu) mu.push_back(rational_string(m));
  return Json{{"kind", "InHull"}, {"lambda", h.lambda}, {"mu", mu}, {"exact", h.exact}, {"residual", h.residual}};
}

// ---------------------------------------------------------------------------
// Figures and CSV

std::string pgm(const std::vector<std::uint8_t>& pixels, int width, int height) {
  if (pixels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw InputError("pixel buffer does not match the image size");
  }
  std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  out.append(pixels.begin(), pixels.end());
  return out;
}

std::string horoball_svg(const Horoball& h, int radius, Norm norm, const std::vector<std::vector<std::int64_t>>& centers) {
  const int cell = 12;
  int side = (2 * radius + 1) * cell;
  auto px = [&](double x) { return (x + radius + 0.5) * cell; };
  auto py = [&](double y) { return (radius - y + 0.5) * cell; };
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << side << "\" height=\"" << side
     << "\" viewBox=\"0 0 " << side << " " << side << "\">\n"
     << "<rect width=\"" << side << "\" height=\"" << side << "\" fill=\"white\"/>\n";
  for (std::int64_t y = radius; y >= -radius; --y) {
    for (std::int64_t x = -radius; x <= radius; ++x) {
      if (!h.contains(x, y)) continue;
      os << "<rect x=\"" << (x + radius) * cell << "\" y=\"" << (radius - y) * cell << "\" width=\"" << cell
         << "\" height=\"" << cell << "\" fill=\"#5d8aa8\"/>\n";
    }
  }
  for (const auto& g : centers) {
    if (g.size() != 2) continue;
    double gx = static_cast<double>(g[0]);
    double gy = static_cast<double>(g[1]);
    double r = norm == Norm::L1 ? std::abs(gx) + std::abs(gy)
                                : (norm == Norm::L2 ? std::hypot(gx, gy) : std::max(std::abs(gx), std::abs(gy)));
    os << "<g fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\">";
    if (norm == Norm::L2) {
      os << "<circle cx=\"" << fmt(px(gx)) << "\" cy=\"" << fmt(py(gy)) << "\" r=\"" << fmt(r * cell) << "\"/>";
    } else if (norm == Norm::L1) {
      os << "<polygon points=\"" << fmt(px(gx + r)) << "," << fmt(py(gy)) << " " << fmt(px(gx)) << "," << fmt(py(gy + r))
         << " " << fmt(px(gx - r)) << "," << fmt(py(gy)) << " " << fmt(px(gx)) << "," << fmt(py(gy - r)) << "\"/>";
    } else {
      os << "<rect x=\"" << fmt(px(gx - r)) << "\" y=\"" << fmt(py(gy + r)) << "\" width=\"" << fmt(2 * r * cell)
         << "\" height=\"" << fmt(2 * r * cell) << "\"/>";
    }
    os << "</g>\n";
  }
  os << "<circle cx=\"" << fmt(px(0)) << "\" cy=\"" << fmt(py(0)) << "\" r=\"3\" fill=\"black\"/>\n</svg>\n";
  return os.str();
}

std::string ball_csv(const std::vector<GroupElement>& ball) {
  std::string out;
  bool header = false;
  for (const auto& g : ball) {
    const auto* v = std::get_if<IntVector>(&g);
    if (v == nullptr) {
      if (!header) {
        out += "element\n";
        header = true;
      }
      out += "\"" + to_string(g) + "\"\n";
      continue;
    }
    if (!header) {
      if (v->coords.size() == 2) {
        out += "x,y\n";
      } else {
        for (std::size_t i = 0; i < v->coords.size(); ++i) out += (i ? ",x" : "x") + std::to_string(i + 1);
        out += "\n";
      }
      header = true;
    }
    for (std::size_t i = 0; i < v->coords.size(); ++i) out += (i ? "," : "") + std::to_string(v->coords[i]);
    out += "\n";
  }
  if (!header) out = "x,y\n";
  return out;
}

}  // namespace horo::io
