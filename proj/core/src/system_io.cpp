#include "sheafcsp/system_io.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "sheafcsp/errors.hpp"

namespace sheafcsp {

void write_system(std::ostream& os, const IntMatrix& m, std::span<const Integer> rhs) {
  if (rhs.size() != m.rows()) throw InputError("right-hand side length mismatch");
  os << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << m(i, j) << ' ';
    os << rhs[i] << '\n';
  }
}

std::pair<IntMatrix, std::vector<Integer>> read_system(std::istream& is) {
  long long rows = -1;
  long long cols = -1;
  if (!(is >> rows >> cols) || rows < 0 || cols < 0) {
    throw InputError("system dump must start with `rows cols`");
  }
  IntMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  std::vector<Integer> rhs(static_cast<std::size_t>(rows));
  std::string tok;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j <= m.cols(); ++j) {
      if (!(is >> tok)) {
        throw InputError("system dump truncated in row " + std::to_string(i + 1));
      }
      Integer v;
      if (v.set_str(tok, 10) != 0) {
        throw InputError("bad integer '" + tok + "' in row " + std::to_string(i + 1));
      }
      (j < m.cols() ? m(i, j) : rhs[i]) = std::move(v);
    }
  }
  if (is >> tok) throw InputError("trailing data after system dump");
  return {std::move(m), std::move(rhs)};
}

}  // namespace sheafcsp
