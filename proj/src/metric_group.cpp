#include "horo/metric_group.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <sstream>

namespace horo {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<int> reduce_letters(const std::vector<int>& letters) {
  std::vector<int> out;
  out.reserve(letters.size());
  for (int l : letters) {
    if (l == 0) throw InputError("word letters must be nonzero");
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

std::int64_t parse_int(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InputError("expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

const IntVector& as_vector(const GroupElement& g) {
  if (auto* v = std::get_if<IntVector>(&g)) return *v;
  throw InputError("expected an integer vector, got " + to_string(g));
}

const SparseVector& as_sparse(const GroupElement& g) {
  if (auto* v = std::get_if<SparseVector>(&g)) return *v;
  throw InputError("expected a sparse vector, got " + to_string(g));
}

const Word& as_word(const GroupElement& g) {
  if (auto* v = std::get_if<Word>(&g)) return *v;
  throw InputError("expected a word, got " + to_string(g));
}

/// Integer floor of the largest admissible integer norm value below (or at) r.
std::int64_t integer_reach(double radius, bool closed) {
  double f = std::floor(radius);
  auto n = static_cast<std::int64_t>(f);
  if (!closed && f == radius) --n;
  return n;
}

}  // namespace

// ---------------------------------------------------------------------------

GroupElement vec(std::vector<std::int64_t> coords) { return IntVector{std::move(coords)}; }

GroupElement sparse(std::map<std::int64_t, std::int64_t> coeffs) {
  std::erase_if(coeffs, [](const auto& kv) { return kv.second == 0; });
  return SparseVector{std::move(coeffs)};
}

GroupElement word(std::vector<int> letters) { return Word{reduce_letters(letters)}; }

std::string to_string(const GroupElement& g) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const IntVector& v) {
                   os << '(';
                   for (std::size_t i = 0; i < v.coords.size(); ++i) os << (i ? "," : "") << v.coords[i];
                   os << ')';
                 },
                 [&](const SparseVector& v) {
                   os << '{';
                   bool first = true;
                   for (auto [i, c] : v.coeffs) {
                     os << (first ? "" : ",") << 'e' << i << ':' << c;
                     first = false;
                   }
                   os << '}';
                 },
                 [&](const Word& w) {
                   if (w.letters.empty()) os << '1';
                   for (int l : w.letters) {
                     char base = l > 0 ? 'a' : 'A';
                     int idx = std::abs(l) - 1;
                     if (idx < 26) {
                       os << static_cast<char>(base + idx);
                     } else {
                       os << (l > 0 ? "g" : "G") << idx + 1;
                     }
                   }
                 },
             },
             g);
  return os.str();
}

// ---------------------------------------------------------------------------

double Distance::value() const {
  return is_sqrt ? std::sqrt(static_cast<double>(magnitude)) : static_cast<double>(magnitude);
}

bool Distance::below(double r, bool inclusive) const {
  if (!is_sqrt) {
    auto m = static_cast<long double>(magnitude);
    return inclusive ? m <= r : m < r;
  }
  if (r < 0) return false;
  long double r2 = static_cast<long double>(r) * static_cast<long double>(r);
  auto m = static_cast<long double>(magnitude);
  return inclusive ? m <= r2 : m < r2;
}

namespace {
__int128 squared(const Distance& d) {
  return d.is_sqrt ? static_cast<__int128>(d.magnitude)
                   : static_cast<__int128>(d.magnitude) * d.magnitude;
}
}  // namespace

bool Distance::operator==(const Distance& o) const { return squared(*this) == squared(o); }

std::partial_ordering Distance::operator<=>(const Distance& o) const {
  auto a = squared(*this);
  auto b = squared(o);
  if (a < b) return std::partial_ordering::less;
  if (a > b) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

std::string_view to_string(Norm n) {
  switch (n) {
    case Norm::L1:
      return "l1";
    case Norm::L2:
      return "l2";
    case Norm::Linf:
      return "linf";
  }
  return "?";
}

// ---------------------------------------------------------------------------

WeightFunction WeightFunction::explicit_weights(std::vector<std::int64_t> w) {
  for (auto x : w) {
    if (x < 1) throw InputError("generator weights must be >= 1");
  }
  WeightFunction f;
  f.table = std::move(w);
  return f;
}

WeightFunction WeightFunction::linear(std::int64_t slope, std::int64_t intercept) {
  if (slope < 1) {
    throw InputError("weights must tend to infinity (slope " + std::to_string(slope) +
                     "); the metric would not be proper");
  }
  if (slope + intercept < 1) throw InputError("generator weights must be >= 1");
  WeightFunction f;
  f.slope = slope;
  f.intercept = intercept;
  f.affine = true;
  return f;
}

std::int64_t WeightFunction::operator()(std::int64_t index) const {
  if (index < 1) throw InputError("generator indices start at 1");
  if (affine) return slope * index + intercept;
  if (index > static_cast<std::int64_t>(table.size())) {
    throw InputError("generator index " + std::to_string(index) + " out of range");
  }
  return table[static_cast<std::size_t>(index - 1)];
}

std::vector<std::int64_t> WeightFunction::indices_with_weight_at_most(std::int64_t bound) const {
  std::vector<std::int64_t> out;
  if (affine) {
    if (bound < slope + intercept) return out;
    std::int64_t last = (bound - intercept) / slope;
    for (std::int64_t i = 1; i <= last; ++i) out.push_back(i);
    return out;
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] <= bound) out.push_back(static_cast<std::int64_t>(i + 1));
  }
  return out;
}

std::optional<std::int64_t> WeightFunction::generator_count() const {
  if (affine) return std::nullopt;
  return static_cast<std::int64_t>(table.size());
}

std::string WeightFunction::describe() const {
  std::ostringstream os;
  if (affine) {
    os << "w(i)=" << slope << "*i";
    if (intercept) os << (intercept > 0 ? "+" : "") << intercept;
  } else {
    os << "w=[";
    for (std::size_t i = 0; i < table.size(); ++i) os << (i ? "," : "") << table[i];
    os << ']';
  }
  return os.str();
}

WeightFunction parse_weights(std::string_view text) {
  std::vector<std::int64_t> terms;
  bool continues = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto next = text.find(',', pos);
    auto item = text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item == "...") {
      continues = true;
      if (next != std::string_view::npos) throw InputError("'...' must end the weight list");
    } else if (!item.empty()) {
      terms.push_back(parse_int(item));
    }
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  if (terms.empty()) throw InputError("empty weight list");
  if (!continues) return WeightFunction::explicit_weights(std::move(terms));
  if (terms.size() < 2) throw InputError("a continued weight list needs at least two terms");
  std::int64_t slope = terms[1] - terms[0];
  for (std::size_t i = 2; i < terms.size(); ++i) {
    if (terms[i] - terms[i - 1] != slope) throw InputError("continued weights must be an arithmetic progression");
  }
  return WeightFunction::linear(slope, terms[0] - slope);
}

// ---------------------------------------------------------------------------

MetricGroup::MetricGroup(GroupDescriptor descriptor) : descriptor_(std::move(descriptor)) {
  std::visit(overloaded{
                 [](const ZdLp& z) {
                   if (z.dimension < 1) throw InputError("Z^d needs d >= 1");
                 },
                 [](const WeightedFreeAbelian& w) {
                   if (w.weights.affine && w.weights.slope < 1) throw InputError("weights must tend to infinity");
                   for (auto x : w.weights.table)
                     if (x < 1) throw InputError("generator weights must be >= 1");
                 },
                 [](const DirectSumZ2& w) {
                   if (w.weights.affine && w.weights.slope < 1) throw InputError("weights must tend to infinity");
                   for (auto x : w.weights.table)
                     if (x < 1) throw InputError("generator weights must be >= 1");
                 },
                 [this](const BallSequence& b) {
                   if (b.sets.empty()) throw InputError("ball sequence needs at least B_0");
                   if (b.ambient_dimension < 0) throw InputError("negative ambient dimension");
                   auto levels = std::make_shared<std::map<GroupElement, int>>();
                   for (std::size_t n = 0; n < b.sets.size(); ++n) {
                     for (const auto& g : b.sets[n]) levels->try_emplace(g, static_cast<int>(n));
                   }
                   levels_ = std::move(levels);
                 },
                 [](const FreeGroup& f) {
                   if (f.rank < 1) throw InputError("free group rank must be >= 1");
                 },
             },
             descriptor_);
}

std::string MetricGroup::describe() const {
  return std::visit(overloaded{
                        [](const ZdLp& z) { return "z" + std::to_string(z.dimension) + "-" + std::string(to_string(z.norm)); },
                        [](const WeightedFreeAbelian& w) { return "weighted(" + w.weights.describe() + ")"; },
                        [](const DirectSumZ2& w) { return "sum-z2(" + w.weights.describe() + ")"; },
                        [](const BallSequence& b) {
                          return "ball-sequence(cutoff=" + std::to_string(b.sets.size() - 1) + ")";
                        },
                        [](const FreeGroup& f) { return "free:" + std::to_string(f.rank); },
                    },
                    descriptor_);
}

std::optional<int> MetricGroup::lattice_dimension() const {
  if (auto* z = std::get_if<ZdLp>(&descriptor_)) return z->dimension;
  if (auto* b = std::get_if<BallSequence>(&descriptor_); b && b->ambient_dimension > 0) return b->ambient_dimension;
  return std::nullopt;
}

GroupElement MetricGroup::identity() const {
  if (auto d = lattice_dimension()) return vec(std::vector<std::int64_t>(static_cast<std::size_t>(*d), 0));
  if (std::holds_alternative<FreeGroup>(descriptor_)) return Word{};
  return SparseVector{};
}

void MetricGroup::check(const GroupElement& g) const {
  if (auto d = lattice_dimension()) {
    const auto& v = as_vector(g);
    if (static_cast<int>(v.coords.size()) != *d) {
      throw InputError("dimension mismatch: expected " + std::to_string(*d) + ", got " +
                       std::to_string(v.coords.size()));
    }
    return;
  }
  if (auto* f = std::get_if<FreeGroup>(&descriptor_)) {
    const auto& w = as_word(g);
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
      int l = w.letters[i];
      if (l == 0 || std::abs(l) > f->rank) throw InputError("letter out of range in " + to_string(g));
      if (i > 0 && w.letters[i - 1] == -l) throw InputError("word is not reduced: " + to_string(g));
    }
    return;
  }
  const auto& s = as_sparse(g);
  const WeightFunction* weights = nullptr;
  if (auto* w = std::get_if<WeightedFreeAbelian>(&descriptor_)) weights = &w->weights;
  if (auto* w = std::get_if<DirectSumZ2>(&descriptor_)) weights = &w->weights;
  for (auto [i, c] : s.coeffs) {
    if (c == 0) throw InputError("sparse vectors must not store zero coefficients");
    if (i < 1) throw InputError("generator indices start at 1");
    if (weights && weights->generator_count() && i > *weights->generator_count()) {
      throw InputError("generator index " + std::to_string(i) + " out of range");
    }
    if (std::holds_alternative<DirectSumZ2>(descriptor_) && c != 1) {
      throw InputError("Z/2 coefficients must be 1 in canonical form");
    }
  }
}

GroupElement MetricGroup::multiply(const GroupElement& g, const GroupElement& h) const {
  check(g);
  check(h);
  if (lattice_dimension()) {
    auto a = as_vector(g).coords;
    const auto& b = as_vector(h).coords;
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return vec(std::move(a));
  }
  if (std::holds_alternative<FreeGroup>(descriptor_)) {
    auto letters = as_word(g).letters;
    const auto& rhs = as_word(h).letters;
    letters.insert(letters.end(), rhs.begin(), rhs.end());
    return word(std::move(letters));
  }
  auto a = as_sparse(g).coeffs;
  bool mod2 = std::holds_alternative<DirectSumZ2>(descriptor_);
  for (auto [i, c] : as_sparse(h).coeffs) {
    a[i] += c;
    if (mod2) a[i] %= 2;
  }
  return sparse(std::move(a));
}

GroupElement MetricGroup::inverse(const GroupElement& g) const {
  check(g);
  if (lattice_dimension()) {
    auto a = as_vector(g).coords;
    for (auto& x : a) x = -x;
    return vec(std::move(a));
  }
  if (std::holds_alternative<FreeGroup>(descriptor_)) {
    auto letters = as_word(g).letters;
    std::reverse(letters.begin(), letters.end());
    for (auto& l : letters) l = -l;
    return Word{std::move(letters)};
  }
  if (std::holds_alternative<DirectSumZ2>(descriptor_)) return g;
  auto a = as_sparse(g).coeffs;
  for (auto& [i, c] : a) c = -c;
  return SparseVector{std::move(a)};
}

Distance MetricGroup::dist(const GroupElement& g, const GroupElement& h) const {
  GroupElement diff = multiply(g, inverse(h));
  return std::visit(
      overloaded{
          [&](const ZdLp& z) {
            const auto& c = as_vector(diff).coords;
            std::int64_t acc = 0;
            for (auto x : c) {
              switch (z.norm) {
                case Norm::L1:
                  acc += std::abs(x);
                  break;
                case Norm::L2:
                  acc += x * x;
                  break;
                case Norm::Linf:
                  acc = std::max(acc, std::abs(x));
                  break;
              }
            }
            return z.norm == Norm::L2 ? Distance::sqrt_of(acc) : Distance::exact(acc);
          },
          [&](const WeightedFreeAbelian& w) {
            std::int64_t acc = 0;
            for (auto [i, c] : as_sparse(diff).coeffs) acc += std::abs(c) * w.weights(i);
            return Distance::exact(acc);
          },
          [&](const DirectSumZ2& w) {
            std::int64_t acc = 0;
            for (auto [i, c] : as_sparse(diff).coeffs) acc += w.weights(i);
            return Distance::exact(acc);
          },
          [&](const BallSequence& b) {
            auto it = levels_->find(diff);
            if (it == levels_->end()) {
              throw ResourceError("element " + to_string(diff) + " lies beyond the ball-sequence cutoff",
                                  b.sets.size() - 1);
            }
            return Distance::exact(it->second);
          },
          [&](const FreeGroup&) { return Distance::exact(static_cast<std::int64_t>(as_word(diff).letters.size())); },
      },
      descriptor_);
}

std::vector<GroupElement> MetricGroup::ball(const GroupElement& center, double radius, bool closed,
                                            std::uint64_t budget) const {
  if (!(radius >= 0)) throw InputError("ball radius must be >= 0");
  check(center);
  auto at_identity = ball_at_identity(radius, closed, budget);
  std::vector<GroupElement> out;
  out.reserve(at_identity.size());
  for (const auto& h : at_identity) out.push_back(multiply(h, center));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GroupElement> MetricGroup::ball_at_identity(double radius, bool closed, std::uint64_t budget) const {
  std::vector<GroupElement> out;
  std::int64_t reach = integer_reach(radius, closed);
  if (reach < 0) return out;
  auto keep = [&](const GroupElement& g) { return norm(g).below(radius, closed); };

  if (auto* z = std::get_if<ZdLp>(&descriptor_)) {
    long double side = 2.0L * static_cast<long double>(reach) + 1.0L;
    long double count = std::pow(side, static_cast<long double>(z->dimension));
    if (count > static_cast<long double>(budget)) {
      throw ResourceError("ball of radius " + std::to_string(radius) + " exceeds the enumeration budget", budget);
    }
    std::vector<std::int64_t> p(static_cast<std::size_t>(z->dimension), -reach);
    while (true) {
      GroupElement g = vec(p);
      if (keep(g)) out.push_back(std::move(g));
      std::size_t i = 0;
      while (i < p.size() && p[i] == reach) p[i++] = -reach;
      if (i == p.size()) break;
      ++p[i];
    }
    return out;
  }

  if (auto* b = std::get_if<BallSequence>(&descriptor_)) {
    auto cutoff = static_cast<std::int64_t>(b->sets.size()) - 1;
    if (reach > cutoff) {
      throw ResourceError("ball radius " + std::to_string(radius) + " exceeds the ball-sequence cutoff",
                          static_cast<std::uint64_t>(cutoff));
    }
    for (const auto& [g, level] : *levels_) {
      if (level <= reach) out.push_back(g);
    }
    return out;
  }

  if (auto* f = std::get_if<FreeGroup>(&descriptor_)) {
    std::vector<std::vector<int>> frontier{{}};
    out.push_back(Word{});
    for (std::int64_t len = 1; len <= reach; ++len) {
      std::vector<std::vector<int>> next;
      for (const auto& w : frontier) {
        for (int l = -f->rank; l <= f->rank; ++l) {
          if (l == 0 || (!w.empty() && w.back() == -l)) continue;
          auto e = w;
          e.push_back(l);
          next.push_back(std::move(e));
          if (out.size() + next.size() > budget) {
            throw ResourceError("free-group ball exceeds the enumeration budget", budget);
          }
        }
      }
      for (const auto& w : next) out.push_back(Word{w});
      frontier = std::move(next);
    }
    return out;
  }

  // Sparse groups: depth-first over generators with weight within reach.
  bool mod2 = std::holds_alternative<DirectSumZ2>(descriptor_);
  const WeightFunction& weights =
      mod2 ? std::get<DirectSumZ2>(descriptor_).weights : std::get<WeightedFreeAbelian>(descriptor_).weights;
  auto gens = weights.indices_with_weight_at_most(reach);
  std::map<std::int64_t, std::int64_t> current;
  std::function<void(std::size_t, std::int64_t)> walk = [&](std::size_t pos, std::int64_t used) {
    if (pos == gens.size()) {
      GroupElement g = SparseVector{current};
      if (keep(g)) {
        out.push_back(std::move(g));
        if (out.size() > budget) throw ResourceError("sparse ball exceeds the enumeration budget", budget);
      }
      return;
    }
    walk(pos + 1, used);
    std::int64_t w = weights(gens[pos]);
    std::int64_t max_coeff = mod2 ? 1 : (reach - used) / w;
    for (std::int64_t c = 1; c <= max_coeff; ++c) {
      for (std::int64_t sign : {1, -1}) {
        if (mod2 && sign < 0) continue;
        current[gens[pos]] = sign * c;
        walk(pos + 1, used + c * w);
      }
    }
    current.erase(gens[pos]);
  };
  walk(0, 0);
  return out;
}

double MetricGroup::busemann(const GroupElement& g, const GroupElement& x) const {
  Distance to_x = dist(g, x);
  Distance to_one = norm(g);
  if (to_x.is_sqrt) {
    // (s1 - s0) / (sqrt(s1) + sqrt(s0)) avoids cancellation for far-away g.
    double denom = to_x.value() + to_one.value();
    if (denom == 0) return 0.0;
    return static_cast<double>(to_x.magnitude - to_one.magnitude) / denom;
  }
  return static_cast<double>(to_x.magnitude - to_one.magnitude);
}

// ---------------------------------------------------------------------------

MetricGroup parse_group(std::string_view descriptor, std::string_view weights) {
  std::string d(descriptor);
  if (d.size() > 1 && d[0] == 'z' && d.find('-') != std::string::npos) {
    auto dash = d.find('-');
    int dim = static_cast<int>(parse_int(std::string_view(d).substr(1, dash - 1)));
    auto norm = d.substr(dash + 1);
    Norm n;
    if (norm == "l1") {
      n = Norm::L1;
    } else if (norm == "l2") {
      n = Norm::L2;
    } else if (norm == "linf" || norm == "l-inf" || norm == "linfty") {
      n = Norm::Linf;
    } else {
      throw InputError("unknown norm '" + norm + "'");
    }
    return MetricGroup(ZdLp{dim, n});
  }
  std::string_view w = weights.empty() ? std::string_view("1,2,3,...") : weights;
  if (d == "weighted" || d == "weighted-free-abelian") return MetricGroup(WeightedFreeAbelian{parse_weights(w)});
  if (d == "sum-z2" || d == "direct-sum-z2") return MetricGroup(DirectSumZ2{parse_weights(w)});
  if (d.rfind("free:", 0) == 0) {
    return MetricGroup(FreeGroup{static_cast<int>(parse_int(std::string_view(d).substr(5)))});
  }
  throw InputError("unknown group descriptor '" + d + "'");
}

// ---------------------------------------------------------------------------

BallSequenceReport ball_sequence_check(std::vector<std::vector<GroupElement>> sets, int cutoff,
                                       int ambient_dimension) {
  if (cutoff < 0 || static_cast<int>(sets.size()) < cutoff + 1) {
    throw InputError("ball sequence must provide B_0 .. B_cutoff");
  }
  sets.resize(static_cast<std::size_t>(cutoff) + 1);
  MetricGroup law = ambient_dimension > 0 ? MetricGroup::zd(ambient_dimension, Norm::L1)
                                          : MetricGroup(WeightedFreeAbelian{WeightFunction::linear(1)});
  std::vector<std::set<GroupElement>> lookup;
  for (const auto& s : sets) {
    for (const auto& g : s) law.check(g);
    lookup.emplace_back(s.begin(), s.end());
  }

  BallSequenceReport report;
  auto fail = [&](std::string axiom, int n, int m, GroupElement g) {
    report.violation = BallSequenceViolation{std::move(axiom), n, m, std::move(g)};
    return report;
  };

  const GroupElement one = law.identity();
  for (const auto& g : sets[0]) {
    if (g != one) return fail("identity", 0, 0, g);
  }
  if (!lookup[0].count(one)) return fail("identity", 0, 0, one);

  for (int n = 0; n <= cutoff; ++n) {
    for (const auto& g : sets[static_cast<std::size_t>(n)]) {
      if (!lookup[static_cast<std::size_t>(n)].count(law.inverse(g))) return fail("symmetric", n, n, g);
    }
  }
  for (int n = 0; n <= cutoff; ++n) {
    for (int m = 0; n + m <= cutoff; ++m) {
      const auto& target = lookup[static_cast<std::size_t>(n + m)];
      for (const auto& g : sets[static_cast<std::size_t>(n)]) {
        for (const auto& h : sets[static_cast<std::size_t>(m)]) {
          auto gh = law.multiply(g, h);
          if (!target.count(gh)) return fail("product", n, m, std::move(gh));
        }
      }
    }
  }

  if (ambient_dimension > 0) {
    bool covered = true;
    for (int i = 0; i < ambient_dimension && covered; ++i) {
      for (std::int64_t s : {1, -1}) {
        std::vector<std::int64_t> e(static_cast<std::size_t>(ambient_dimension), 0);
        e[static_cast<std::size_t>(i)] = s;
        covered = covered && lookup.back().count(vec(e)) > 0;
      }
    }
    report.generators_covered = covered;
  }
  report.ok = true;
  report.induced = MetricGroup(BallSequence{ambient_dimension, std::move(sets)});
  return report;
}

}  // namespace horo
