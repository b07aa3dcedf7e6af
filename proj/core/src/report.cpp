#include "forge/report.hpp"

#include <algorithm>

namespace forge {

nlohmann::json report_to_json(const RunReport& r) {
  auto sorted = r.checks;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CheckRecord& a, const CheckRecord& b) {
                     if (a.id != b.id) return a.id < b.id;
                     return a.anchor < b.anchor;
                   });
  int passed = 0;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : sorted) {
    if (c.pass) ++passed;
    checks.push_back({{"id", c.id},
                      {"anchor", c.anchor},
                      {"pass", c.pass},
                      {"witness", c.witness}});
  }
  nlohmann::json j;
  j["schema"] = 1;
  j["command"] = r.command;
  j["instance"] = r.instance;
  j["corpus"] = r.corpus;
  j["checks"] = checks;
  j["summary"] = std::to_string(passed) + "/" +
                 std::to_string(sorted.size()) + " checks passed";
  j["exit_status"] = report_exit_status(r);
  return j;
}

int report_exit_status(const RunReport& r) {
  for (const auto& c : r.checks)
    if (!c.pass) return 1;
  return 0;
}

}  // namespace forge
