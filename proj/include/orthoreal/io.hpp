#pragma once

#include <string>

#include "orthoreal/quadspace.hpp"

namespace ortho {

/// Matrix text format: first line "q=<p>^<k> n=<rows> m=<cols>", then rows of
/// space-separated entries; plain integers for k = 1, comma-joined base-p
/// digits (little-endian) for k > 1.
std::string serialize_matrix(const FqMatrix& m);
FqMatrix parse_matrix(const std::string& text, const Field*& field_out);

/// QuadSpace file: a "form=gram" (odd q) or "form=quad" (char 2) line followed
/// by the matrix text.
std::string serialize_space(const QuadSpace& s);
QuadSpace parse_space(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace ortho
