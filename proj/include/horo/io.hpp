#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "horo/convexity.hpp"
#include "horo/dynamics.hpp"
#include "horo/expansivity.hpp"
#include "horo/horoball.hpp"
#include "horo/metric_group.hpp"

namespace horo::io {

using Json = nlohmann::json;

// Integer tuples such as "3,4" or "-2,0".
std::vector<std::int64_t> parse_ints(std::string_view text);

// ---------------------------------------------------------------------------
// Subshifts

/// {"kind":"linear-gf2","support":[[0,0],[1,0],[0,1]]}, {"kind":"full-shift",
/// "alphabet":2}, {"kind":"sft","alphabet":2,"forbidden":[[[x,y,s],...],...]}.
SubshiftSpec spec_from_json(const Json& j);
Json to_json(const SubshiftSpec& spec);
/// "ledrappier", "full-shift", "full-shift:3", or a JSON file path.
SubshiftSpec parse_system(std::string_view text);

Json to_json(const Pattern& p);
Pattern pattern_from_json(const Json& j);
std::string pattern_csv(const Pattern& p);
Pattern pattern_from_csv(std::string_view text);

/// Rows from y = N down to y = -N, one character per site.
Json filling_json(const WindowFilling& f);
WindowFilling filling_from_json(const Json& j);

// ---------------------------------------------------------------------------
// Horofunctions

/// {"kind":"linear","v":[...]}, {"kind":"polyhedral","norm":"l1",
/// "heading":[1,0],"apex":[0,0]}, or {"kind":"sampled","group":"z2-l2",
/// "ray":[1,0],"offset":[0,0],"truncation":1000}. Sampled rules may also be
/// "basis" ({"kind":"sampled","group":"sum-z2","rule":"basis"}).
Horofunction horofunction_from_json(const Json& j);
Json to_json(const Horofunction& h);
/// Inline JSON or a path to a JSON file.
Json load_json_arg(std::string_view text);

// ---------------------------------------------------------------------------
// Certificates and reports

Json to_json(const Direction& d);
Direction direction_from_json(const Json& j);
Json to_json(const Certificate& c);
Json to_json(const NDReport& r);
std::string nd_summary_csv(const NDReport& r);
std::string direction_circle_svg(const NDReport& r);
/// Parses the directions and certificate kinds back from an NDReport JSON.
std::vector<std::pair<Direction, std::string>> nd_entries_from_json(const Json& j);

Json to_json(const ExponentImage& e);
Json to_json(const SkewReport& r);

// ---------------------------------------------------------------------------
// Convexity

/// Entries are integers, decimals, or "p/q" strings; ["sqrt-normalized", a, b]
/// marks a normalized direction. An NDReport object contributes its Witness
/// directions as unit vectors.
std::vector<ExactVector> vectors_from_json(const Json& j);
Json to_json(const HullCertificate& c);
std::string rational_string(const Rational& r);

// ---------------------------------------------------------------------------
// Figures and CSV

std::string pgm(const std::vector<std::uint8_t>& pixels, int width, int height);
/// Horoball raster with the boundaries of the generating balls B_{|g|}(g).
std::string horoball_svg(const Horoball& h, int radius, Norm norm, const std::vector<std::vector<std::int64_t>>& centers);
std::string ball_csv(const std::vector<GroupElement>& ball);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace horo::io
