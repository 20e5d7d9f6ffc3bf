#pragma once

#include "wittlift/local.hpp"
#include "wittlift/witnesses.hpp"

namespace wittlift {

inline constexpr const char* kToolVersion = "wittlift 1.0.0";
inline constexpr const char* kReportSchema = "wittlift-report/1";

// One acceptance section: a claim tag, the anchor of the proposition it
// mechanizes, the sub-check transcript, and the stored witnesses needed to
// re-verify the verdict later.
struct CheckRecord {
  std::string tag;     // stable claim tag, e.g. "prop:odd-power"
  std::string anchor;  // proposition / lemma label in the source article
  std::string title;
  bool pass = false;
  double seconds = 0.0;    // informational; not part of the deterministic JSON
  nlohmann::json details;  // {"checks":[{name,pass}...], "witnesses":[...]}
  std::string failure;     // first failing sub-check; empty when pass

  nlohmann::json to_json() const;  // deterministic (no timings)
};

struct VerifyReport {
  std::vector<CheckRecord> records;
  std::string limitation;

  bool all_pass() const;
  // "records" is deterministic given (version, thread count); wall times are
  // reported separately under "wall_times"
  nlohmann::json to_json() const;
  std::string to_markdown() const;
};

// the claim tags in report order
std::vector<std::string> verify_tags();

// Run the acceptance sections; empty tag runs everything, otherwise exactly
// the named section. Throws InvalidParameters for an unknown tag.
VerifyReport verify_paper(const std::string& only_tag = "");

// Re-verify a saved report from its stored witnesses: lift witnesses and
// certificates are checked from the stored matrices alone; sections whose
// evidence is a recomputable identity are re-run and compared. On failure
// *err names the failing record.
bool recheck_report(const nlohmann::json& report, std::string* err = nullptr);

}  // namespace wittlift
