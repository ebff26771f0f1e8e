#include "sheafcsp/diophantine.hpp"

#include "sheafcsp/errors.hpp"
#include "sheafcsp/hnf.hpp"

namespace sheafcsp {

std::optional<std::vector<Integer>> solve_diophantine(const IntMatrix& m,
                                                      std::span<const Integer> b) {
  if (b.size() != m.rows()) {
    throw InputError("right-hand side has " + std::to_string(b.size()) +
                     " entries, matrix has " + std::to_string(m.rows()) + " rows");
  }
  const HnfResult hnf = hermite_normal_form(m.transposed());
  const IntMatrix& h = hnf.h;  // n x m
  std::vector<Integer> y(m.cols());
  Integer acc;
  Integer rem;
  std::size_t t = 0;
  for (std::size_t col = 0; col < m.rows(); ++col) {
    acc = b[col];
    // Rows from t on vanish in this column, apart from a pivot at row t.
    for (std::size_t i = 0; i < t; ++i) {
      if (sgn(h(i, col)) != 0) acc -= h(i, col) * y[i];
    }
    if (t < hnf.rank && hnf.pivots[t] == col) {
      mpz_fdiv_qr(y[t].get_mpz_t(), rem.get_mpz_t(), acc.get_mpz_t(), h(t, col).get_mpz_t());
      if (sgn(rem) != 0) return std::nullopt;
      ++t;
    } else if (sgn(acc) != 0) {
      return std::nullopt;
    }
  }
  // x = Uᵀ y
  std::vector<Integer> x(m.cols());
  for (std::size_t i = 0; i < hnf.rank; ++i) {
    if (sgn(y[i]) == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (sgn(hnf.u(i, j)) != 0) x[j] += hnf.u(i, j) * y[i];
    }
  }
  return x;
}

}  // namespace sheafcsp
