#include "hyperarr/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hyperarr/error.hpp"

namespace hyperarr {

namespace {

Rational rational_from_json(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw Error(ErrorKind::ParseError, "expected a rational as string or integer, got " + v.dump());
}

}  // namespace

Arrangement parse_arrangement_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
  try {
    const auto dim = (j.contains("n") ? j.at("n") : j.at("dim")).get<std::size_t>();
    std::vector<Hyperplane> hs;
    for (const auto& jh : j.at("hyperplanes")) {
      Hyperplane h;
      for (const auto& c : jh.at("normal")) h.normal.push_back(rational_from_json(c));
      h.offset = jh.contains("offset") ? rational_from_json(jh.at("offset")) : Rational(0);
      hs.push_back(std::move(h));
    }
    return Arrangement(dim, std::move(hs));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed arrangement: ") + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Arrangement read_arrangement_file(const std::string& path) { return parse_arrangement_json(read_text_file(path)); }

std::string arrangement_to_json(const Arrangement& arrangement) {
  nlohmann::ordered_json j;
  j["format_version"] = 1;
  j["n"] = arrangement.dim();
  auto hs = nlohmann::ordered_json::array();
  for (const auto& h : arrangement.hyperplanes()) {
    nlohmann::ordered_json jh;
    auto normal = nlohmann::ordered_json::array();
    for (const auto& c : h.normal) normal.push_back(to_string(c));
    jh["normal"] = normal;
    jh["offset"] = to_string(h.offset);
    hs.push_back(jh);
  }
  j["hyperplanes"] = hs;
  return j.dump(2);
}

std::vector<std::string> read_polynomial_lines(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) continue;
    lines.push_back(line);
  }
  return lines;
}

std::vector<RationalPoly> parse_polynomials(const std::vector<std::string>& lines, unsigned base, std::size_t min_vars) {
  std::size_t n = min_vars;
  for (const auto& l : lines) n = std::max(n, count_variables(l, base));
  std::vector<RationalPoly> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      out.push_back(parse_poly(lines[i], n, base));
    } catch (const Error& e) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace hyperarr
