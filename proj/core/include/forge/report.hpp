#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace forge {

// One named verification with its outcome.  `anchor` names the law or
// operation the check exercises; `witness` carries a short human-readable
// account of what was computed (sizes, ids, the first discrepancy).
struct CheckRecord {
  std::string id;
  std::string anchor;
  bool pass = false;
  std::string witness;
};

// The result of one driver invocation.
struct RunReport {
  std::string command;
  std::string instance;  // family the run was evaluated against, "" if n/a
  std::string corpus;    // description of the generated or loaded inputs
  std::vector<CheckRecord> checks;
};

// Document shape, stable under "schema": 1.  Checks are sorted by id; the
// summary counts passes; exit_status mirrors report_exit_status.
nlohmann::json report_to_json(const RunReport& r);

// 0 when every check passed, 1 otherwise.
int report_exit_status(const RunReport& r);

}  // namespace forge
