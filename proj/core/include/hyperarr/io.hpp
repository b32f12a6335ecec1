#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hyperarr/arrangement.hpp"
#include "hyperarr/sparse_poly.hpp"

namespace hyperarr {

/// {"n": n, "hyperplanes": [{"normal": [...], "offset": ...}, ...]} ("dim" is accepted for n).
/// Rationals are strings ("2/3") or JSON integers. Throws Error{ParseError}.
Arrangement parse_arrangement_json(std::string_view text);
Arrangement read_arrangement_file(const std::string& path);
std::string arrangement_to_json(const Arrangement& arrangement);

/// Non-empty lines of a polynomial file, '#' starting a comment.
std::vector<std::string> read_polynomial_lines(const std::string& path);

/// Parses each line as a polynomial in x<base>..; the variable count is the
/// largest index seen (or min_vars if larger).
std::vector<RationalPoly> parse_polynomials(const std::vector<std::string>& lines, unsigned base = 1,
                                            std::size_t min_vars = 0);

std::string read_text_file(const std::string& path);

}  // namespace hyperarr
