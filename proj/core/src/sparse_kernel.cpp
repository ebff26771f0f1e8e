#include "sheafcsp/sparse_kernel.hpp"

#include <algorithm>
#include <set>

#include "sheafcsp/errors.hpp"
#include "sheafcsp/hnf.hpp"

namespace sheafcsp {

namespace {

bool is_unit(const Integer& v) { return mpz_cmpabs_ui(v.get_mpz_t(), 1) == 0; }

// a + f * b, both sorted.
SparseVec axpy(const SparseVec& a, const Integer& f, const SparseVec& b) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, f * b[j].second);
      ++j;
    } else {
      Integer v = a[i].second + f * b[j].second;
      if (sgn(v) != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

void divide_content(SparseVec& r) {
  if (r.empty()) return;
  Integer g = 0;
  for (const auto& [c, v] : r) {
    g = gcd(g, v);
    if (g == 1) return;
  }
  for (auto& [c, v] : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

const Integer* entry(const SparseVec& r, std::uint32_t col) {
  auto it = std::lower_bound(r.begin(), r.end(), col,
                             [](const auto& e, std::uint32_t c) { return e.first < c; });
  return it != r.end() && it->first == col ? &it->second : nullptr;
}

class Eliminator {
 public:
  Eliminator(std::size_t cols, std::vector<SparseVec> rows)
      : rows_(std::move(rows)), active_(rows_.size(), 1), col_rows_(cols), col_count_(cols, 0),
        eliminated_(cols, 0), definition_(cols) {
    for (std::uint32_t r = 0; r < rows_.size(); ++r) {
      for (const auto& [c, v] : rows_[r]) {
        if (c >= cols) throw InputError("sparse entry outside matrix");
      }
      std::sort(rows_[r].begin(), rows_[r].end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      merge_duplicates(rows_[r]);
      divide_content(rows_[r]);
      for (const auto& [c, v] : rows_[r]) {
        col_rows_[c].push_back(r);
        ++col_count_[c];
      }
      enqueue(r);
    }
  }

  void run() {
    while (!queue_.empty()) {
      auto [nnz, r] = *queue_.begin();
      queue_.erase(queue_.begin());
      if (!active_[r] || rows_[r].size() != nnz) continue;
      // Unit entry in the least-used column.
      std::uint32_t col = 0;
      bool found = false;
      for (const auto& [c, v] : rows_[r]) {
        if (!is_unit(v)) continue;
        if (!found || col_count_[c] < col_count_[col]) {
          col = c;
          found = true;
        }
      }
      if (!found) continue;
      pivot(r, col);
    }
  }

  std::vector<char> active_rows() const { return active_; }
  const std::vector<SparseVec>& rows() const { return rows_; }
  const std::vector<char>& eliminated() const { return eliminated_; }
  const std::vector<SparseVec>& definition() const { return definition_; }
  const std::vector<std::uint32_t>& order() const { return order_; }

 private:
  static void merge_duplicates(SparseVec& r) {
    SparseVec out;
    for (auto& e : r) {
      if (!out.empty() && out.back().first == e.first) {
        out.back().second += e.second;
      } else {
        out.push_back(std::move(e));
      }
    }
    std::erase_if(out, [](const auto& e) { return sgn(e.second) == 0; });
    r = std::move(out);
  }

  void enqueue(std::uint32_t r) {
    if (rows_[r].empty()) {
      active_[r] = 0;
      return;
    }
    for (const auto& [c, v] : rows_[r]) {
      if (is_unit(v)) {
        queue_.emplace(rows_[r].size(), r);
        return;
      }
    }
  }

  void pivot(std::uint32_t pr, std::uint32_t col) {
    const SparseVec prow = std::move(rows_[pr]);
    rows_[pr].clear();
    active_[pr] = 0;
    for (const auto& [c, v] : prow) --col_count_[c];
    const Integer unit = *entry(prow, col);  // ±1
    // x_col = -unit · Σ_{c≠col} v_c x_c
    SparseVec def;
    for (const auto& [c, v] : prow) {
      if (c != col) def.emplace_back(c, -unit * v);
    }
    eliminated_[col] = 1;
    definition_[col] = std::move(def);
    order_.push_back(col);

    auto targets = std::move(col_rows_[col]);
    col_rows_[col].clear();
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (std::uint32_t r : targets) {
      if (!active_[r]) continue;
      const Integer* a = entry(rows_[r], col);
      if (!a) continue;
      const Integer f = -(*a) * unit;
      SparseVec next = axpy(rows_[r], f, prow);
      divide_content(next);
      for (const auto& [c, v] : rows_[r]) --col_count_[c];
      for (const auto& [c, v] : next) {
        ++col_count_[c];
        if (!entry(rows_[r], c)) col_rows_[c].push_back(r);
      }
      rows_[r] = std::move(next);
      enqueue(r);
    }
  }

  std::vector<SparseVec> rows_;
  std::vector<char> active_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<std::size_t> col_count_;
  std::vector<char> eliminated_;
  std::vector<SparseVec> definition_;
  std::vector<std::uint32_t> order_;
  std::set<std::pair<std::size_t, std::uint32_t>> queue_;
};

}  // namespace

IntMatrix IntegerKernel::basis() const {
  IntMatrix b(expr_.size(), dimension_);
  for (std::size_t j = 0; j < expr_.size(); ++j) {
    for (const auto& [p, v] : expr_[j]) b(j, p) = v;
  }
  return b;
}

IntegerKernel integer_kernel(std::size_t cols, std::vector<SparseVec> rows) {
  Eliminator elim(cols, std::move(rows));
  elim.run();

  IntegerKernel out;
  out.expr_.assign(cols, {});

  // Remaining rows form the core over the columns they mention.
  std::vector<std::uint32_t> core_rows;
  std::vector<std::int64_t> core_index(cols, -1);
  std::vector<std::uint32_t> core_cols;
  for (std::uint32_t r = 0; r < elim.rows().size(); ++r) {
    if (!elim.active_rows()[r] || elim.rows()[r].empty()) continue;
    core_rows.push_back(r);
    for (const auto& [c, v] : elim.rows()[r]) {
      if (core_index[c] < 0) {
        core_index[c] = 0;
        core_cols.push_back(c);
      }
    }
  }
  std::sort(core_cols.begin(), core_cols.end());
  for (std::size_t i = 0; i < core_cols.size(); ++i) core_index[core_cols[i]] = static_cast<std::int64_t>(i);
  out.core_ = {core_rows.size(), core_cols.size()};

  std::uint32_t next_param = 0;
  for (std::uint32_t c = 0; c < cols; ++c) {
    if (!elim.eliminated()[c] && core_index[c] < 0) {
      out.expr_[c].emplace_back(next_param++, 1);
    }
  }
  if (!core_cols.empty()) {
    // Rows of U with a zero HNF row span the kernel of the core: U·Rᵀ = H.
    IntMatrix rt(core_cols.size(), core_rows.size());
    for (std::size_t j = 0; j < core_rows.size(); ++j) {
      for (const auto& [c, v] : elim.rows()[core_rows[j]]) {
        rt(static_cast<std::size_t>(core_index[c]), j) = v;
      }
    }
    const HnfResult hnf = hermite_normal_form(rt);
    for (std::size_t i = hnf.rank; i < core_cols.size(); ++i) {
      for (std::size_t c = 0; c < core_cols.size(); ++c) {
        if (sgn(hnf.u(i, c)) != 0) out.expr_[core_cols[c]].emplace_back(next_param, hnf.u(i, c));
      }
      ++next_param;
    }
  }
  out.dimension_ = next_param;

  // Back-substitute in reverse elimination order: a definition only refers
  // to columns eliminated later or never.
  const auto& order = elim.order();
  for (std::size_t i = order.size(); i-- > 0;) {
    const std::uint32_t col = order[i];
    SparseVec acc;
    for (const auto& [c, v] : elim.definition()[col]) acc = axpy(acc, v, out.expr_[c]);
    out.expr_[col] = std::move(acc);
  }
  return out;
}

IntegerKernel integer_kernel(const IntMatrix& m) {
  std::vector<SparseVec> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (sgn(m(i, j)) != 0) rows[i].emplace_back(static_cast<std::uint32_t>(j), m(i, j));
    }
  }
  return integer_kernel(m.cols(), std::move(rows));
}

}  // namespace sheafcsp
