// Acceptance gate: runs every verification section and prints one line per
// criterion. Exit status 0 only when all sections pass.

#include <algorithm>
#include <cstdio>

#include "wittlift/verify.hpp"

int main() {
  auto report = wittlift::verify_paper();
  int idx = 0;
  for (const auto& rec : report.records) {
    ++idx;
    std::printf("criterion %2d [%s] %-22s %s (%.2f s)%s%s\n", idx,
                rec.pass ? "PASS" : "FAIL", rec.tag.c_str(),
                rec.anchor.c_str(), rec.seconds,
                rec.failure.empty() ? "" : " -- ", rec.failure.c_str());
  }
  std::printf("%s: %zu/%zu acceptance criteria pass\n",
              report.all_pass() ? "OK" : "FAILED",
              size_t(std::count_if(report.records.begin(),
                                   report.records.end(),
                                   [](const auto& r) { return r.pass; })),
              report.records.size());
  return report.all_pass() ? 0 : 1;
}
