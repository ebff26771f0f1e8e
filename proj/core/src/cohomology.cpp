#include "sheafcsp/cohomology.hpp"

#include <algorithm>
#include <chrono>

#include "sheafcsp/classical.hpp"
#include "sheafcsp/errors.hpp"

namespace sheafcsp {

namespace {

std::size_t count_set(const std::vector<std::vector<char>>& flags) {
  std::size_t n = 0;
  for (const auto& v : flags) n += static_cast<std::size_t>(std::count(v.begin(), v.end(), 1));
  return n;
}

SectionSet run(const SectionSet& s, bool iso, DecisionReport* report, const CohomOptions& opts) {
  auto classical = [&](const SectionSet& x) { return iso ? wl_fixpoint(x) : classical_fixpoint(x); };
  DecisionReport local;
  DecisionReport& r = report ? *report : local;
  SectionSet cur = classical(s);
  r.pre_fixpoint_removed = s.total() - cur.total();
  while (!cur.empty()) {
    ZextStats zs;
    const auto ok = iso ? zbext_flags(cur, &zs, opts.threads) : zext_flags(cur, &zs, opts.threads);
    r.max_rows = std::max(r.max_rows, zs.rows);
    r.max_cols = std::max(r.max_cols, zs.cols);
    ++r.iterations;
    PassRecord pass;
    if (count_set(ok) != cur.total()) {
      const std::size_t before = cur.total();
      cur = downward_close(cur.filtered(ok));
      pass.zext = before - cur.total();
      const std::size_t mid = cur.total();
      if (!cur.empty()) cur = classical(cur);
      pass.forth = mid - cur.total();
    }
    r.removed.push_back(pass);
    if (pass.zext == 0) break;
  }
  r.sections = cur.counts_by_size();
  return cur;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

DecisionReport classical_report(Problem problem, const Structure& a, const Structure& b,
                                std::size_t k) {
  const auto start = std::chrono::steady_clock::now();
  DecisionReport r;
  r.k = k;
  r.method = problem == Problem::csp ? "classical-consistency" : "classical-wl";
  require_same_signature(a, b);
  if (problem == Problem::iso && a.size() != b.size()) {
    r.reason = "size";
    r.ms = elapsed_ms(start);
    return r;
  }
  FixpointStats st;
  const SectionSet full = enumerate_sections(a, b, k, problem == Problem::csp ? SectionKind::hom : SectionKind::isom);
  const SectionSet fix = problem == Problem::csp ? classical_fixpoint(full, &st) : wl_fixpoint(full, &st);
  r.iterations = st.iterations;
  for (std::size_t n : st.removed) r.removed.push_back({n, 0});
  r.accept = fix.has_empty_section();
  r.sections = fix.counts_by_size();
  r.ms = elapsed_ms(start);
  return r;
}

}  // namespace

SectionSet cohom_consistency_fixpoint(const SectionSet& s, DecisionReport* report,
                                      const CohomOptions& opts) {
  if (s.kind() != SectionKind::hom) {
    throw ContractViolation("cohomological consistency expects partial homomorphisms");
  }
  return run(s, false, report, opts);
}

SectionSet cohom_wl_fixpoint(const SectionSet& s, DecisionReport* report,
                             const CohomOptions& opts) {
  if (s.kind() != SectionKind::isom) {
    throw ContractViolation("cohomological WL expects partial isomorphisms");
  }
  if (s.source().size() != s.target().size()) {
    throw ContractViolation("cohomological WL needs |A| = |B|");
  }
  return run(s, true, report, opts);
}

DecisionReport decide_cohom_k_consistency(const Structure& a, const Structure& b, std::size_t k,
                                          const CohomOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  DecisionReport r;
  r.k = k;
  r.method = "cohom-consistency";
  const SectionSet fix = cohom_consistency_fixpoint(enumerate_sections(a, b, k, SectionKind::hom), &r, opts);
  r.accept = fix.has_empty_section();
  r.ms = elapsed_ms(start);
  return r;
}

DecisionReport decide_cohom_k_wl(const Structure& a, const Structure& b, std::size_t k,
                                 const CohomOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  DecisionReport r;
  r.k = k;
  r.method = "cohom-wl";
  require_same_signature(a, b);
  if (a.size() != b.size()) {
    r.reason = "size";
    r.ms = elapsed_ms(start);
    return r;
  }
  const SectionSet fix = cohom_wl_fixpoint(enumerate_sections(a, b, k, SectionKind::isom), &r, opts);
  r.accept = fix.has_empty_section();
  r.ms = elapsed_ms(start);
  return r;
}

DecisionReport decide(Problem problem, Method method, const Structure& a, const Structure& b,
                      std::size_t k, bool compare, const CohomOptions& opts) {
  auto cohom = [&] {
    return problem == Problem::csp ? decide_cohom_k_consistency(a, b, k, opts)
                                   : decide_cohom_k_wl(a, b, k, opts);
  };
  DecisionReport r = method == Method::classical ? classical_report(problem, a, b, k) : cohom();
  if (compare) {
    const DecisionReport other =
        method == Method::classical ? cohom() : classical_report(problem, a, b, k);
    const DecisionReport& cl = method == Method::classical ? r : other;
    const DecisionReport& co = method == Method::classical ? other : r;
    VerdictSummary cls{cl.accept, cl.sections};
    VerdictSummary cos{co.accept, co.sections};
    r.classical = std::move(cls);
    r.cohomological = std::move(cos);
  }
  return r;
}

}  // namespace sheafcsp
