#include "sheafcsp/compatibility.hpp"

#include "sheafcsp/diophantine.hpp"
#include "sheafcsp/errors.hpp"

namespace sheafcsp {

std::vector<std::size_t> variable_offsets(const SectionSet& s) {
  const auto& lat = s.contexts();
  std::vector<std::size_t> off(lat.count() + 1, 0);
  for (ContextId c = 0; c < lat.count(); ++c) off[c + 1] = off[c] + s.at(c).size();
  return off;
}

std::vector<SparseVec> compatibility_rows(const SectionSet& s, const std::vector<char>* keep) {
  const auto& lat = s.contexts();
  const auto off = variable_offsets(s);
  std::vector<SparseVec> rows;
  std::vector<SparseVec> group;
  for (ContextId c = 0; c < lat.count(); ++c) {
    if (keep && !(*keep)[c]) continue;
    const std::size_t m = lat.size_of(c);
    for (std::size_t p = 0; p < m; ++p) {
      const ContextId f = lat.face(c, p);
      group.assign(s.at(f).size(), {});
      for (std::size_t i = 0; i < s.at(c).size(); ++i) {
        auto idx = s.find(f, s.drop(s.at(c)[i], m, p));
        if (idx) group[*idx].emplace_back(static_cast<std::uint32_t>(off[c] + i), 1);
      }
      for (std::size_t j = 0; j < group.size(); ++j) {
        // Face variables have smaller ids than the context's own.
        SparseVec row;
        row.reserve(group[j].size() + 1);
        row.emplace_back(static_cast<std::uint32_t>(off[f] + j), -1);
        for (auto& e : group[j]) row.push_back(std::move(e));
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

CompatibilitySystem build_compatibility_system(const SectionSet& s, const LocalSection& pin) {
  auto [pc, code] = s.locate(pin);
  auto idx = s.find(pc, code);
  if (!idx) throw InputError("pinned section is not stored in the section set");
  CompatibilitySystem sys;
  sys.offsets = variable_offsets(s);
  sys.pin_context = pc;
  sys.pin_index = *idx;
  sys.column.assign(sys.variables(), -1);
  std::size_t cols = 0;
  for (std::size_t v = 0; v < sys.variables(); ++v) {
    if (v >= sys.offsets[pc] && v < sys.offsets[pc + 1]) continue;
    sys.column[v] = static_cast<std::int64_t>(cols++);
  }
  const auto rows = compatibility_rows(s);
  sys.matrix = IntMatrix(rows.size(), cols);
  sys.rhs.assign(rows.size(), 0);
  const std::size_t pinned_var = sys.offsets[pc] + *idx;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [v, coef] : rows[r]) {
      if (sys.column[v] >= 0) {
        sys.matrix(r, static_cast<std::size_t>(sys.column[v])) += coef;
      } else if (v == pinned_var) {
        sys.rhs[r] -= coef;
      }
    }
  }
  return sys;
}

std::optional<std::vector<ZLinearSection>> z_extension_witness(const SectionSet& s,
                                                               const LocalSection& pin) {
  const CompatibilitySystem sys = build_compatibility_system(s, pin);
  auto x = solve_diophantine(sys.matrix, sys.rhs);
  if (!x) return std::nullopt;
  std::vector<ZLinearSection> out(s.contexts().count());
  for (ContextId c = 0; c < out.size(); ++c) {
    out[c].context = c;
    out[c].coefficients.resize(s.at(c).size());
    for (std::size_t i = 0; i < s.at(c).size(); ++i) {
      const std::size_t v = sys.offsets[c] + i;
      if (sys.column[v] >= 0) {
        out[c].coefficients[i] = (*x)[static_cast<std::size_t>(sys.column[v])];
      } else {
        out[c].coefficients[i] = i == sys.pin_index ? 1 : 0;
      }
    }
  }
  return out;
}

bool z_extendable_direct(const SectionSet& s, const LocalSection& pin) {
  return z_extension_witness(s, pin).has_value();
}

}  // namespace sheafcsp
