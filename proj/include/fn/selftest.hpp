// The verification suite: every headline identity the library is built to
// certify, runnable from the CLI (`selftest`) and from the test harness.
//
// Each check is independent and reports one line: differential soundness,
// shuffle-constant oracles, the two-engine matrix equality, both homology
// dimension theorems, the closed bimodule product, the character-sum bound
// sweep, square-free counts, untwisted regressions, and parameter
// invariance.  A failing check reports what it saw (the dimension checks
// list every mismatching shape); later checks still run.  `fast` shrinks
// every sweep to n + m <= 5 (and the
// character sweep to q^{n+m} <= 10^4) for quick smoke runs.

#ifndef FN_SELFTEST_HPP
#define FN_SELFTEST_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace fn {

struct CheckResult {
    std::string name;
    bool passed = false;
    double seconds = 0.0;
    std::string detail;  // first violation; empty when passed
};

struct SelftestOptions {
    bool fast = false;
    int threads = 1;         // workers for the character-sum sweep
    std::string golden_dir;  // when nonempty, also verify the stored matrix files
};

// Runs all checks, streaming one "[PASS] name (Ns)" / "[FAIL] name: detail"
// line per check to `out`.
std::vector<CheckResult> run_selftest(std::ostream& out, const SelftestOptions& opts = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace fn

#endif
