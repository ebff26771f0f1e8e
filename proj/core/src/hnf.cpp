#include "sheafcsp/hnf.hpp"

#include <utility>

#include "sheafcsp/errors.hpp"

namespace sheafcsp {

namespace {

using Row = std::vector<Integer>;

// dst -= q * src over columns [from, end).
void sub_multiple(Row& dst, const Row& src, const Integer& q, std::size_t from) {
  for (std::size_t c = from; c < dst.size(); ++c) {
    if (sgn(src[c]) != 0) dst[c] -= q * src[c];
  }
}

void negate(Row& r) {
  for (auto& v : r) v = -v;
}

struct Echelon {
  std::vector<Row> h;
  std::vector<Row> u;  // empty when no transform is tracked
  std::vector<std::size_t> pivots;
};

// Euclidean elimination: the row with the smallest nonzero entry in the
// column becomes the pivot and reduces the others by their nearest quotient,
// which keeps remainders at most half the pivot.
Echelon reduce(std::vector<Row> h, bool track) {
  const std::size_t m = h.size();
  const std::size_t n = m == 0 ? 0 : h[0].size();
  Echelon out;
  if (track) {
    out.u.assign(m, Row(m));
    for (std::size_t i = 0; i < m; ++i) out.u[i][i] = 1;
  }
  std::size_t r = 0;
  Integer q;
  Integer num;
  Integer den;
  for (std::size_t j = 0; j < n && r < m; ++j) {
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i) {
        if (sgn(h[i][j]) == 0) continue;
        if (best == m || mpz_cmpabs(h[i][j].get_mpz_t(), h[best][j].get_mpz_t()) < 0) best = i;
      }
      if (best == m) break;
      if (best != r) {
        std::swap(h[best], h[r]);
        if (track) std::swap(out.u[best], out.u[r]);
      }
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (sgn(h[i][j]) == 0) continue;
        // nearest-integer quotient
        num = h[i][j];
        den = h[r][j];
        if (sgn(den) < 0) {
          num = -num;
          den = -den;
        }
        num = 2 * num + den;
        den *= 2;
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        sub_multiple(h[i], h[r], q, j);
        if (track) sub_multiple(out.u[i], out.u[r], q, 0);
        if (sgn(h[i][j]) != 0) clean = false;
      }
      if (clean) break;
    }
    if (r >= m || sgn(h[r][j]) == 0) continue;
    if (sgn(h[r][j]) < 0) {
      negate(h[r]);
      if (track) negate(out.u[r]);
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (sgn(h[i][j]) == 0) continue;
      mpz_fdiv_q(q.get_mpz_t(), h[i][j].get_mpz_t(), h[r][j].get_mpz_t());
      if (sgn(q) == 0) continue;
      sub_multiple(h[i], h[r], q, j);
      if (track) sub_multiple(out.u[i], out.u[r], q, 0);
    }
    out.pivots.push_back(j);
    ++r;
  }
  out.h = std::move(h);
  return out;
}

std::vector<Row> rows_of(const IntMatrix& m) {
  std::vector<Row> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    out[i].assign(r.begin(), r.end());
  }
  return out;
}

IntMatrix pack(const std::vector<Row>& rows, std::size_t count, std::size_t cols) {
  IntMatrix out(count, cols);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = rows[i][j];
  }
  return out;
}

}  // namespace

HnfResult hermite_normal_form(const IntMatrix& m) {
  Echelon e = reduce(rows_of(m), true);
  HnfResult out;
  out.h = pack(e.h, m.rows(), m.cols());
  out.u = pack(e.u, m.rows(), m.rows());
  out.rank = e.pivots.size();
  out.pivots = std::move(e.pivots);
  return out;
}

IntMatrix hermite_basis(const IntMatrix& m) {
  Echelon e = reduce(rows_of(m), false);
  return pack(e.h, e.pivots.size(), m.cols());
}

RowLattice::RowLattice(const IntMatrix& gens) : cols_(gens.cols()) {
  Echelon e = reduce(rows_of(gens), false);
  basis_.assign(e.h.begin(), e.h.begin() + static_cast<std::ptrdiff_t>(e.pivots.size()));
  pivots_ = std::move(e.pivots);
}

bool RowLattice::contains(std::span<const Integer> v) const {
  if (v.size() != cols_) throw InputError("vector length does not match lattice dimension");
  Row w(v.begin(), v.end());
  Integer q;
  Integer rem;
  for (std::size_t t = 0; t < basis_.size(); ++t) {
    const std::size_t p = pivots_[t];
    // Columns before p are already zero in w.
    if (sgn(w[p]) == 0) continue;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), w[p].get_mpz_t(), basis_[t][p].get_mpz_t());
    if (sgn(rem) != 0) return false;
    sub_multiple(w, basis_[t], q, p);
  }
  for (const auto& x : w) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

}  // namespace sheafcsp
