#pragma once

// Command-line front end. Each command validates a RunConfig, runs the
// computation and writes a CSV or JSON table. Exit codes: 0 when every
// check passes, 1 when a certificate or tolerance check fails, 2 for
// invalid arguments.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "khavinson/series.hpp"

namespace khavinson::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class OutputFormat { kCsv, kJson };

struct RunConfig {
  int dim = 3;
  std::vector<double> rhos;
  // Direction angles in radians. Empty means the command's default grid.
  std::vector<double> alphas;
  std::size_t t_grid = 201;
  SeriesControl series;
  // When false the series cap is raised automatically to what the tail rule
  // needs; when true (--max-terms given) it is a hard cap.
  bool strict_max_terms = false;
  int quad_order = 128;
  double tol = 1e-8;
  std::optional<OutputFormat> format;
  std::string out_path;

  // identities
  std::vector<double> lambdas;
  std::vector<std::string> checks;
  int max_degree = 12;

  // Throws UsageError describing the first violated precondition.
  void validate_common() const;
};

// Expands "grid:N" into N uniform angles on [0, pi]; other tokens are
// parsed as radians. Throws UsageError on malformed input.
std::vector<double> parse_alpha_tokens(const std::vector<std::string>& tokens);

int cmd_constant(const RunConfig& config, std::ostream& out);
int cmd_certify(const RunConfig& config, std::ostream& out);
int cmd_identities(const RunConfig& config, std::ostream& out);

// Parses argv (subcommands constant | certify | identities), honouring
// KHAVINSON_* environment overrides, and dispatches. Output goes to
// --out when given, otherwise to out; diagnostics go to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace khavinson::cli
