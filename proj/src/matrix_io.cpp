#include "ginv/matrix_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ginv/errors.hpp"

namespace ginv {

namespace {

void require_precision(int precision) {
  if (precision < 1 || precision > 17)
    throw ParameterError("output precision must lie in 1..17, got " +
                         std::to_string(precision));
}

std::string format_double(double v, int precision, bool with_sign) {
  char buf[64];
  std::snprintf(buf, sizeof buf, with_sign ? "%+.*g" : "%.*g", precision, v);
  return buf;
}

// strtod over [pos, end) of `s`; returns the number of characters consumed.
std::size_t read_double(const std::string& s, std::size_t pos, double& value) {
  const char* begin = s.c_str() + pos;
  char* stop = nullptr;
  errno = 0;
  value = std::strtod(begin, &stop);
  if (stop == begin) return 0;
  if (errno == ERANGE && std::isinf(value)) return 0;
  return static_cast<std::size_t>(stop - begin);
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

std::string format_entry(const Complex& z, int precision, bool complex_kind) {
  require_precision(precision);
  if (!complex_kind) return format_double(z.real(), precision, false);
  return format_double(z.real(), precision, false) +
         format_double(z.imag(), precision, true) + "i";
}

Complex parse_entry(const std::string& token) {
  const auto bad = [&] { return InvalidInputError("malformed matrix entry '" + token + "'"); };
  double re = 0.0;
  const std::size_t used = read_double(token, 0, re);
  if (used == 0) throw bad();
  if (used == token.size()) {
    if (!std::isfinite(re)) throw bad();
    return {re, 0.0};
  }
  if (token[used] == 'i' && used + 1 == token.size()) {
    if (!std::isfinite(re)) throw bad();
    return {0.0, re};
  }
  if (token[used] != '+' && token[used] != '-') throw bad();
  double im = 0.0;
  const std::size_t used_im = read_double(token, used, im);
  if (used_im == 0 || used + used_im + 1 != token.size() || token.back() != 'i') throw bad();
  if (!std::isfinite(re) || !std::isfinite(im)) throw bad();
  return {re, im};
}

void write_matrix(std::ostream& out, const ComplexMatrix& m, int precision,
                  bool force_complex) {
  require_precision(precision);
  const bool complex_kind = force_complex || (m.size() > 0 && m.imag().cwiseAbs().maxCoeff() > 0.0);
  out << "# " << (complex_kind ? "complex" : "real") << ' ' << m.rows() << ' ' << m.cols()
      << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << format_entry(m(i, j), precision, complex_kind);
    }
    out << '\n';
  }
}

std::string format_matrix(const ComplexMatrix& m, int precision) {
  std::ostringstream out;
  write_matrix(out, m, precision);
  return out.str();
}

ComplexMatrix read_matrix(std::istream& in) {
  std::string line;
  while (std::getline(in, line) && is_blank(line)) {
  }
  if (!in && line.empty()) throw InvalidInputError("empty matrix file");

  std::istringstream header(line);
  std::string hash, kind;
  long long rows = -1, cols = -1;
  header >> hash >> kind >> rows >> cols;
  std::string extra;
  if (hash != "#" || (kind != "real" && kind != "complex") || rows < 0 || cols < 0 ||
      header.fail() || (header >> extra))
    throw InvalidInputError("matrix header must read '# <real|complex> <rows> <cols>', got '" +
                            line + "'");
  const bool complex_kind = kind == "complex";

  ComplexMatrix m(rows, cols);
  Index row = 0;
  while (std::getline(in, line)) {
    if (is_blank(line)) continue;
    const std::size_t first = line.find_first_not_of(" \t");
    if (line[first] == '#') continue;
    if (row >= rows)
      throw InvalidInputError("matrix body has more than the declared " +
                              std::to_string(rows) + " rows");
    std::istringstream fields(line);
    std::string token;
    Index col = 0;
    while (fields >> token) {
      if (col >= cols)
        throw InvalidInputError("row " + std::to_string(row + 1) + " has more than " +
                                std::to_string(cols) + " entries");
      const Complex z = parse_entry(token);
      if (!complex_kind && z.imag() != 0.0)
        throw InvalidInputError("complex entry '" + token + "' in a real matrix file");
      m(row, col++) = z;
    }
    if (col != cols)
      throw InvalidInputError("row " + std::to_string(row + 1) + " has " +
                              std::to_string(col) + " entries, expected " +
                              std::to_string(cols));
    ++row;
  }
  if (row != rows)
    throw InvalidInputError("matrix body has " + std::to_string(row) + " rows, expected " +
                            std::to_string(rows));
  return m;
}

ComplexMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return read_matrix(in);
}

ComplexMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open matrix file '" + path + "'");
  try {
    return read_matrix(in);
  } catch (const InvalidInputError& e) {
    throw InvalidInputError(path + ": " + e.what());
  }
}

void save_matrix(const std::string& path, const ComplexMatrix& m, int precision) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write matrix file '" + path + "'");
  write_matrix(out, m, precision);
  if (!out) throw InvalidInputError("failed writing matrix file '" + path + "'");
}

}  // namespace ginv
