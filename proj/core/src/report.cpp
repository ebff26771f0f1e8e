#include "sheafcsp/report.hpp"

#include <json.hpp>

namespace sheafcsp {

namespace {

nlohmann::ordered_json summary(const VerdictSummary& v) {
  nlohmann::ordered_json j;
  j["verdict"] = v.accept ? "accept" : "reject";
  j["sections"] = v.sections;
  return j;
}

}  // namespace

std::string to_json(const DecisionReport& r, bool include_timing) {
  nlohmann::ordered_json j;
  j["verdict"] = r.accept ? "accept" : "reject";
  j["k"] = r.k;
  j["method"] = r.method;
  j["iterations"] = r.iterations;
  if (r.method.rfind("cohom", 0) == 0) j["pre_fixpoint_removed"] = r.pre_fixpoint_removed;
  auto removed = nlohmann::ordered_json::array();
  for (const auto& p : r.removed) {
    nlohmann::ordered_json e;
    e["forth"] = p.forth;
    e["zext"] = p.zext;
    removed.push_back(std::move(e));
  }
  j["removed"] = std::move(removed);
  j["max_system"] = {{"rows", r.max_rows}, {"cols", r.max_cols}};
  j["sections"] = r.sections;
  if (!r.reason.empty()) j["reason"] = r.reason;
  if (r.classical || r.cohomological) {
    nlohmann::ordered_json cmp;
    if (r.classical) cmp["classical"] = summary(*r.classical);
    if (r.cohomological) cmp["cohomological"] = summary(*r.cohomological);
    j["compare"] = std::move(cmp);
  }
  if (include_timing) j["ms"] = r.ms;
  return j.dump();
}

}  // namespace sheafcsp
