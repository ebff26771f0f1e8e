#pragma once

#include "sheafcsp/report.hpp"
#include "sheafcsp/section_set.hpp"
#include "sheafcsp/zext.hpp"

namespace sheafcsp {

struct CohomOptions {
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Greatest fixpoint of Forth + Zext pruning. The loop first runs the
/// classical fixpoint, then alternates: drop every Zext failure of the
/// current set in one batch, close downward, re-run the classical fixpoint.
/// `report` (optional) receives per-pass counts and system sizes.
SectionSet cohom_consistency_fixpoint(const SectionSet& s, DecisionReport* report = nullptr,
                                      const CohomOptions& opts = {});
/// Same with BijForth + Zbext on partial isomorphisms; |A| = |B| required.
SectionSet cohom_wl_fixpoint(const SectionSet& s, DecisionReport* report = nullptr,
                             const CohomOptions& opts = {});

enum class Problem { csp, iso };
enum class Method { classical, cohomological };

/// A →ᵏℤ B.
DecisionReport decide_cohom_k_consistency(const Structure& a, const Structure& b, std::size_t k,
                                          const CohomOptions& opts = {});
/// A ≡ᵏℤ B; different universe sizes reject at once with reason "size".
DecisionReport decide_cohom_k_wl(const Structure& a, const Structure& b, std::size_t k,
                                 const CohomOptions& opts = {});

/// Runs one method and, with `compare`, the other one too, recording both
/// verdicts and section counts.
DecisionReport decide(Problem problem, Method method, const Structure& a, const Structure& b,
                      std::size_t k, bool compare = false, const CohomOptions& opts = {});

}  // namespace sheafcsp
