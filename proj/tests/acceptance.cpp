// One line per criterion: PASS/FAIL, elapsed time against its budget, and the
// witness for anything that did not pass. Exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "casimir/verify.hpp"

using namespace casimir;

namespace {

struct Criterion {
  int id;
  std::string check;
  double budget_seconds;
};

std::string fact(const CheckReport& r, const std::string& key) {
  for (const auto& [k, v] : r.facts)
    if (k == key) return v;
  return "";
}

// The zeta case again, now also against literal constants.
CheckReport zeta_with_literals() {
  const double pi = std::numbers::pi;
  struct Case {
    double s;
    int l;
    double literal;
  };
  const Case cases[] = {{2, 1, pi / 24}, {4, 1, pi * pi / 1440}, {2, 2, (pi * pi / 6) / (8 * pi)}};
  std::vector<CheckReport> parts;
  for (const auto& c : cases) {
    ZetaCheckParams p;
    p.s = c.s;
    p.loops = c.l;
    CheckReport r = zeta_mellin_check(p);
    double integral = std::stod(fact(r, "integral"));
    if (r.passed() && std::abs(std::abs(integral) - c.literal) > p.tolerance) {
      r.status = CheckStatus::kFail;
      r.witness = "s=" + std::to_string(c.s) + " l=" + std::to_string(c.l) + ": integral " +
                  fact(r, "integral") + " vs literal " + std::to_string(c.literal);
    }
    parts.push_back(r);
  }
  return merge_reports("zeta", parts);
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "theorem1", 5},        {2, "table1", 10},       {3, "table2", 120}, {4, "partial-thetas", 30},
      {5, "multiplicities", 60}, {6, "conjecture1", 180}, {7, "zeta", 10},    {8, "invariants", 120},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    CheckReport r;
    try {
      r = c.check == "zeta" ? zeta_with_literals() : run_named_check(c.check);
    } catch (const std::exception& e) {
      r.status = CheckStatus::kFail;
      r.witness = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs < c.budget_seconds;
    bool ok = r.passed() && in_time;
    if (!ok) ++failures;
    std::printf("%s criterion %d %-15s %8.3fs (budget %gs)", ok ? "PASS" : "FAIL", c.id, c.check.c_str(), secs,
                c.budget_seconds);
    if (!r.passed()) std::printf("  [%s] %s", to_string(r.status).c_str(), r.witness.c_str());
    if (!in_time) std::printf("  [over time budget]");
    std::printf("\n");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
