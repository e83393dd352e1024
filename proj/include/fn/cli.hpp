// Command-line plumbing for the fnhom binary: flag parsing into a validated
// run configuration, and one runner per subcommand (charsum, homology,
// selftest) writing machine-readable reports.
//
// Reports are deterministic: identical configurations produce byte-identical
// output regardless of thread count.  Roots of unity enter and leave as
// (order, exponent) pairs, never floats; inexact magnitudes are printed with
// a fixed number of decimals.  Exit codes: 0 success, 1 verification
// failure, 2 usage error, 3 budget refusal.

#ifndef FN_CLI_HPP
#define FN_CLI_HPP

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fn/rational.hpp"
#include "fn/twist.hpp"

namespace fn {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

// A flag value that violates a precondition (reported on exit code 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inclusive integer range, written "LO..HI" or as a single value "N".
struct Range {
    long lo = 0;
    long hi = 0;
    bool contains(long v) const { return lo <= v && v <= hi; }
};

// Throws UsageError on malformed text or an empty range (lo > hi).
Range parse_range(const std::string& text);

// A root of unity zeta_order^exp.
struct RootSpec {
    long order = 1;
    long exp = 0;
};

enum class OutputFormat { json, csv };

struct RunConfig {
    std::string command;  // "charsum" | "homology" | "selftest"
    Range n{1, 1};
    Range m{1, 1};
    long q = 0;        // field size (charsum)
    Range d{2, 2};     // character orders to evaluate (charsum)
    RootSpec p;        // wraparound parameter
    RootSpec q_br;     // same-kind braiding parameter
    RootSpec u;        // marked-marked braiding parameter (recorded; the
                       // complexes never cross marked strands, so it only
                       // selects the common cyclotomic order)
    RootSpec s;        // unit rescaling parameter
    std::string output_path;  // empty = stdout
    OutputFormat format = OutputFormat::json;
    std::optional<Integer> budget;  // --budget flag or FNHOM_BUDGET variable
    int threads = 0;                // 0 = available parallelism
    std::string emit_dir;           // --emit-matrices target directory
    bool fast = false;              // selftest: small-shape subset
    std::string golden_dir;         // selftest: stored-matrix directory
};

// Parses subcommand + flags into a validated RunConfig.  Every precondition
// the runners rely on is checked here (ranges nonempty, q a prime power,
// character orders nontrivial, parameter orders positive); violations throw
// UsageError before any computation starts.
RunConfig parse_run_config(const std::vector<std::string>& args);

// Subcommand runners.  The report goes to `out`, diagnostics to `err`; the
// return value is the process exit code.
int cmd_charsum(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_homology(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_selftest(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Full entry point used by the binary: parse, honor --output, dispatch.
int run_cli(int argc, const char* const* argv);

// --- helpers exposed for tests ------------------------------------------------

// Splits q into (p, k) with q = p^k, p prime, k >= 1; throws UsageError if q
// is not a prime power.
std::pair<long, long> prime_power_split(long q);

// Exact number of cells in the compactified model for shape (n, m), counted
// without building the complex; drives the homology budget refusal message.
Integer cell_total(long n, long m);

// Combines four (order, exponent) pairs over their least common order.
TwistParams twist_from_specs(const RootSpec& p, const RootSpec& q_br, const RootSpec& u,
                             const RootSpec& s);

}  // namespace fn

#endif
