#pragma once

// Command-line front end. `run` is the whole process boundary: it never
// calls exit() and writes only to the given streams, so tests drive it
// directly.

#include "prismres/network.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace prismres::cli {

enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,  ///< verification or analysis failure
  kUsage = 2,    ///< bad arguments or unparseable input
};

constexpr int kDefaultOracleCap = 200;
constexpr const char* kOracleCapEnv = "PRISMRES_ORACLE_CAP";

class NetworkParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"vertices": [...], "edges": [{"u": .., "v": .., "r": "p/q" | number}]}.
/// Decimal numbers are read through their shortest decimal spelling, so 0.1
/// becomes exactly 1/10.
ExactNetwork parse_network_json(std::string_view text);
/// Resistances written as exact rational strings.
std::string network_to_json(const ExactNetwork& net);
std::string network_to_json(const FloatNetwork& net);

/// 2n x 2n resistance matrix with a label header row and column; 17
/// significant digits.
std::string resistance_table_csv(int n);
/// {"n": n, "labels": [...], "resistances": [["0", "2/3", ...], ...]}.
std::string resistance_table_json(int n);

/// Oracle cap from the environment, falling back to kDefaultOracleCap.
int default_oracle_cap();

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string counterexample;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// Runs every identity for n = 1..n_max. Exact identities must hold exactly;
/// float comparisons use tol (relative for Kirchhoff/trig values, absolute
/// for resistances and spectra).
VerifyReport run_verification(int n_max, double tol);

}  // namespace prismres::cli
