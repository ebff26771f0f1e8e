#pragma once

#include <optional>
#include <string>
#include <vector>

namespace sheafcsp {

/// Sections lost in one pass of a fixpoint loop, split by the predicate
/// that removed them (restriction cascades count toward the predicate that
/// started them).
struct PassRecord {
  std::size_t forth = 0;
  std::size_t zext = 0;
};

struct VerdictSummary {
  bool accept = false;
  std::vector<std::size_t> sections;  // surviving sections per context size
};

struct DecisionReport {
  bool accept = false;
  std::size_t k = 0;
  std::string method;  // classical-consistency, classical-wl, cohom-consistency, cohom-wl
  std::size_t iterations = 0;
  std::size_t pre_fixpoint_removed = 0;  // cohomological methods: classical pre-pass
  std::vector<PassRecord> removed;
  std::size_t max_rows = 0;
  std::size_t max_cols = 0;
  double ms = 0;
  std::string reason;                 // set when rejected without running, e.g. "size"
  std::vector<std::size_t> sections;  // final sections per context size
  std::optional<VerdictSummary> classical;      // filled by --compare runs
  std::optional<VerdictSummary> cohomological;  // filled by --compare runs
};

/// Single JSON object, keys in a fixed order.
std::string to_json(const DecisionReport& r, bool include_timing = true);

}  // namespace sheafcsp
