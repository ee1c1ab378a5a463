#pragma once

#include <iosfwd>
#include <string>

#include "ginv/core_linalg.hpp"

// Text matrix files:
//   # <real|complex> <rows> <cols>
//   one row per line, whitespace-separated entries
// Complex entries are written re+imi / re-imi with no inner whitespace.
// Comment lines after the header start with '#' and are ignored.
namespace ginv {

enum class MatrixKind { real, complex };

/// Entries use `precision` significant digits (1..17); 17 round-trips exactly.
/// The kind is real when every imaginary part is zero, unless forced.
void write_matrix(std::ostream& out, const ComplexMatrix& m, int precision = 17,
                  bool force_complex = false);
std::string format_matrix(const ComplexMatrix& m, int precision = 17);

/// InvalidInputError on malformed input.
ComplexMatrix read_matrix(std::istream& in);
ComplexMatrix parse_matrix(const std::string& text);
ComplexMatrix load_matrix(const std::string& path);
void save_matrix(const std::string& path, const ComplexMatrix& m, int precision = 17);

/// A single entry such as "1.5", "-2e-3+4i", "0-1i" or "3i".
Complex parse_entry(const std::string& token);
std::string format_entry(const Complex& z, int precision, bool complex_kind);

}  // namespace ginv
