#pragma once

#include <string>
#include <string_view>

#include "kissing/gegenbauer.hpp"

namespace kissing {

/// Text form of an expansion:
///   dim 3
///   0 9465869/100000000
///   ...
/// Blank lines and lines starting with '#' are ignored.
std::string write_expansion(const GegenbauerExpansion& e);

/// Parses the text form. A certificate JSON document is also accepted, in
/// which case the expansion under constants.f is returned. ParseError on
/// malformed input.
GegenbauerExpansion read_expansion(std::string_view text);

GegenbauerExpansion read_expansion_file(const std::string& path);
void write_expansion_file(const std::string& path, const GegenbauerExpansion& e);

}  // namespace kissing
