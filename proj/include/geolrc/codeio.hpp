#pragma once
//
// Line-oriented text format for built codes:
//
//   q p m n k r delta partitions
//   modulus c_0 ... c_m
//   family <tag>
//   <one line per raw generator row, space-separated field literals>
//   partition <r> : <cols> | <cols> | ...
//   emat <partition> <set> : <row> ; <row> ; ...     (optional)
//
// Lines starting with '#' are comments.
//

#include <iosfwd>
#include <string>

#include "geolrc/engine.hpp"

namespace geolrc {

void write_code(std::ostream& os, const LinearCode& code);
std::string code_to_string(const LinearCode& code);

/// Throws ConfigError (with line numbers) on malformed input.
LinearCode read_code(std::istream& is);
LinearCode code_from_string(const std::string& text);

void save_code(const std::string& path, const LinearCode& code);
LinearCode load_code(const std::string& path);

}  // namespace geolrc
