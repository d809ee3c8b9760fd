// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "tfmp/instance.hpp"

namespace tfmp {

inline constexpr int kFormatVersion = 1;

// Parses the line-oriented instance format without deriving windows or
// validating. Throws ParseError with the 1-based line and column.
Instance parse_instance_text(std::string_view text, const std::string& source = "<input>");

// Reads, parses, derives absent windows from the file's hold allowances and
// validates. Throws ParseError, WindowError or ValidationError.
Instance parse_instance(const std::filesystem::path& path);

// Raw parse of a file (no window derivation, no validation).
Instance read_instance_file(const std::filesystem::path& path);

// Canonical text form. Explicit windows are written out, so an instance
// with derived windows round-trips without re-derivation.
std::string write_instance(const Instance& inst);

}  // namespace tfmp
