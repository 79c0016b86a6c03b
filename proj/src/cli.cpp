#include "khavinson/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "khavinson/constants.hpp"
#include "khavinson/errors.hpp"
#include "khavinson/identities.hpp"
#include "khavinson/quadrature.hpp"

namespace khavinson::cli {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kDefaultConstantAlphaPoints = 13;  // step pi/12
constexpr std::size_t kDefaultCertifyAlphaPoints = 181;  // step pi/180

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> alphas_or_default(const RunConfig& config, std::size_t default_points) {
  if (!config.alphas.empty()) return config.alphas;
  return uniform_grid(0.0, kPi, default_points);
}

// The series control actually used for a slice: config.series, widened
// unless the user pinned --max-terms.
SeriesControl series_for(const RunConfig& config, double lambda, double rho) {
  return config.strict_max_terms ? config.series : widened(config.series, lambda, rho);
}

double scale(double v) { return std::max(1.0, std::abs(v)); }

}  // namespace

void RunConfig::validate_common() const {
  if (dim < 3) throw UsageError("--dim must be at least 3");
  for (double rho : rhos) {
    if (!(rho >= 0.0 && rho < 1.0)) throw UsageError("--rho values must lie in [0, 1), got " + fmt17(rho));
  }
  for (double alpha : alphas) {
    if (!(alpha >= 0.0 && alpha <= kPi)) throw UsageError("--alpha values must lie in [0, pi], got " + fmt17(alpha));
  }
  if (t_grid < 3) throw UsageError("--t-grid must be at least 3");
  if (series.max_terms < 8) throw UsageError("--max-terms must be at least 8");
  if (series.max_terms > kSeriesHardCap) throw UsageError("--max-terms exceeds " + std::to_string(kSeriesHardCap));
  if (!(series.tail_tol > 0.0)) throw UsageError("--tail-tol must be positive");
  if (quad_order < 1 || quad_order > kMaxQuadratureOrder) throw UsageError("--quad-order must lie in [1, 4096]");
  if (!(tol > 0.0)) throw UsageError("--tol must be positive");
  if (max_degree < 0) throw UsageError("--max-degree must be nonnegative");
}

namespace {

double parse_number(const std::string& token, const char* what) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &pos);
  } catch (const std::exception&) {
    throw UsageError(std::string("malformed ") + what + " value '" + token + "'");
  }
  if (pos != token.size()) throw UsageError(std::string("malformed ") + what + " value '" + token + "'");
  return value;
}

std::vector<double> parse_numbers(const std::vector<std::string>& tokens, const char* what) {
  std::vector<double> values;
  for (const std::string& token : tokens) values.push_back(parse_number(token, what));
  return values;
}

}  // namespace

std::vector<double> parse_alpha_tokens(const std::vector<std::string>& tokens) {
  std::vector<double> alphas;
  for (const std::string& token : tokens) {
    if (token.rfind("grid:", 0) == 0) {
      std::size_t pos = 0;
      long points = 0;
      try {
        points = std::stol(token.substr(5), &pos);
      } catch (const std::exception&) {
        throw UsageError("malformed alpha grid '" + token + "'");
      }
      if (pos != token.size() - 5 || points < 2) throw UsageError("alpha grid needs at least 2 points: '" + token + "'");
      const auto grid = uniform_grid(0.0, kPi, static_cast<std::size_t>(points));
      alphas.insert(alphas.end(), grid.begin(), grid.end());
      continue;
    }
    alphas.push_back(parse_number(token, "alpha"));
  }
  return alphas;
}

int cmd_constant(const RunConfig& config, std::ostream& out) {
  config.validate_common();
  if (config.rhos.empty()) throw UsageError("--rho needs at least one value");
  const QuadratureRule rule = gauss_legendre(config.quad_order);
  const DimensionParams dim(config.dim);
  const std::vector<double> alphas = alphas_or_default(config, kDefaultConstantAlphaPoints);

  struct Row {
    double rho, alpha, series, melen, diff;
    std::size_t terms;
  };
  std::vector<Row> rows;
  bool pass = true;
  for (double rho : config.rhos) {
    const SeriesControl ctl = series_for(config, dim.lambda_low(), rho);
    const std::size_t terms = rho == 0.0 ? 0 : h_series_order(RadialSlice(config.dim, rho), ctl);
    for (double alpha : alphas) {
      const ConstantQuery q(config.dim, rho, alpha);
      const double series = constant_series(q, ctl, rule);
      const double melen = constant_melen(q, rule);
      const double diff = std::abs(series - melen);
      pass = pass && diff <= config.tol * scale(series);
      rows.push_back({rho, alpha, series, melen, diff, terms});
    }
  }

  if (config.format.value_or(OutputFormat::kCsv) == OutputFormat::kCsv) {
    out << "n,rho,alpha,C_series,C_melen,abs_diff\n";
    for (const Row& r : rows) {
      out << config.dim << ',' << fmt17(r.rho) << ',' << fmt17(r.alpha) << ',' << fmt17(r.series) << ','
          << fmt17(r.melen) << ',' << fmt17(r.diff) << '\n';
    }
  } else {
    json report;
    report["command"] = "constant";
    report["dim"] = config.dim;
    report["quad_order"] = config.quad_order;
    report["tail_tol"] = config.series.tail_tol;
    report["tolerance"] = config.tol;
    json jrows = json::array();
    for (const Row& r : rows) {
      jrows.push_back({{"n", config.dim}, {"rho", r.rho}, {"alpha", r.alpha}, {"C_series", r.series},
                       {"C_melen", r.melen}, {"abs_diff", r.diff}, {"series_terms", r.terms}});
    }
    report["rows"] = std::move(jrows);
    report["pass"] = pass;
    out << report.dump(2) << '\n';
  }
  return pass ? kExitPass : kExitFail;
}

int cmd_certify(const RunConfig& config, std::ostream& out) {
  config.validate_common();
  if (config.rhos.empty()) throw UsageError("--rho needs at least one value");
  const std::vector<double> alphas = alphas_or_default(config, kDefaultCertifyAlphaPoints);
  if (alphas.size() < 2 || std::abs(alphas.front()) > 1e-12 || std::abs(alphas.back() - kPi) > 1e-12 ||
      !std::is_sorted(alphas.begin(), alphas.end())) {
    throw UsageError("certify needs an ascending --alpha grid from 0 to pi");
  }
  const QuadratureRule rule = gauss_legendre(config.quad_order);
  const DimensionParams dim(config.dim);

  struct Entry {
    ConvexityReport convexity;
    RadialMaxReport radial;
    double radial_gap;
    bool pass;
  };
  std::vector<Entry> entries;
  bool pass = true;
  for (double rho : config.rhos) {
    const ConvexityReport conv =
        certify_convexity(config.dim, rho, config.t_grid, series_for(config, dim.lambda_high(), rho), rule);
    const RadialMaxReport radial =
        certify_radial_max(config.dim, rho, alphas, series_for(config, dim.lambda_low(), rho), rule);
    const double gap = std::abs(radial.grid_max - radial.radial_value);
    const bool ok = conv.pass && radial.pass && gap <= config.tol * scale(radial.radial_value);
    pass = pass && ok;
    entries.push_back({conv, radial, gap, ok});
  }

  if (config.format.value_or(OutputFormat::kJson) == OutputFormat::kJson) {
    json report;
    report["command"] = "certify";
    report["dim"] = config.dim;
    report["quad_order"] = config.quad_order;
    report["tail_tol"] = config.series.tail_tol;
    report["t_grid"] = config.t_grid;
    report["alpha_points"] = alphas.size();
    report["tolerance"] = config.tol;
    json results = json::array();
    for (const Entry& e : entries) {
      json argmax = json::array();
      for (std::size_t i : e.radial.argmax) argmax.push_back(e.radial.alphas[i]);
      results.push_back({
          {"rho", e.convexity.rho},
          {"convexity",
           {{"min_second_derivative", e.convexity.min_value},
            {"argmin_t", e.convexity.argmin_t},
            {"max_cross_route", e.convexity.max_cross_route},
            {"series_terms", e.convexity.series_terms},
            {"quad_order", e.convexity.quad_order},
            {"pass", e.convexity.pass}}},
          {"radial_max",
           {{"argmax_alpha", argmax},
            {"value_at_zero", e.radial.value_at_zero},
            {"grid_max", e.radial.grid_max},
            {"margin", e.radial.margin},
            {"radial_value", e.radial.radial_value},
            {"radial_discrepancy", e.radial_gap},
            {"series_terms", e.radial.series_terms},
            {"quad_order", e.radial.quad_order},
            {"pass", e.radial.pass}}},
          {"pass", e.pass},
      });
    }
    report["results"] = std::move(results);
    report["pass"] = pass;
    out << report.dump(2) << '\n';
  } else {
    out << "n,rho,min_second_derivative,argmin_t,max_cross_route,convexity_series_terms,argmax_alpha,"
           "margin,C_alpha0,C_radial,radial_series_terms,pass\n";
    for (const Entry& e : entries) {
      std::string argmax;
      for (std::size_t i : e.radial.argmax) {
        if (!argmax.empty()) argmax += ';';
        argmax += fmt17(e.radial.alphas[i]);
      }
      out << config.dim << ',' << fmt17(e.convexity.rho) << ',' << fmt17(e.convexity.min_value) << ','
          << fmt17(e.convexity.argmin_t) << ',' << fmt17(e.convexity.max_cross_route) << ','
          << e.convexity.series_terms << ',' << argmax << ',' << fmt17(e.radial.margin) << ','
          << fmt17(e.radial.value_at_zero) << ',' << fmt17(e.radial.radial_value) << ','
          << e.radial.series_terms << ',' << (e.pass ? "true" : "false") << '\n';
    }
  }
  return pass ? kExitPass : kExitFail;
}

int cmd_identities(const RunConfig& config, std::ostream& out) {
  config.validate_common();
  IdentitySuiteConfig suite;
  if (!config.lambdas.empty()) {
    suite.lambdas = config.lambdas;
    suite.strict_domain = true;
  }
  if (!config.checks.empty()) {
    suite.checks.clear();
    for (const std::string& name : config.checks) {
      try {
        suite.checks.push_back(parse_identity_check(name));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
  }
  suite.max_degree = config.max_degree;
  const QuadratureRule rule = gauss_legendre(config.quad_order);

  IdentityReport report;
  try {
    report = run_identity_suite(suite, rule);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }

  if (config.format.value_or(OutputFormat::kJson) == OutputFormat::kJson) {
    json j;
    j["command"] = "identities";
    j["quad_order"] = config.quad_order;
    j["max_degree"] = config.max_degree;
    json results = json::array();
    for (const IdentityResult& r : report.results) {
      results.push_back({{"check", to_string(r.check)}, {"route", r.route}, {"lambda", r.lambda},
                         {"max_abs", r.max_abs}, {"max_scaled", r.max_scaled}, {"tolerance", r.tolerance},
                         {"evaluations", r.evaluations}, {"pass", r.pass}});
    }
    j["results"] = std::move(results);
    j["pass"] = report.pass();
    out << j.dump(2) << '\n';
  } else {
    out << "check,route,lambda,max_abs,max_scaled,tolerance,evaluations,pass\n";
    for (const IdentityResult& r : report.results) {
      out << to_string(r.check) << ',' << r.route << ',' << fmt17(r.lambda) << ',' << fmt17(r.max_abs) << ','
          << fmt17(r.max_scaled) << ',' << fmt17(r.tolerance) << ',' << r.evaluations << ','
          << (r.pass ? "true" : "false") << '\n';
    }
  }
  return report.pass() ? kExitPass : kExitFail;
}

namespace {

struct ParsedOptions {
  RunConfig config;
  std::vector<std::string> rho_tokens;
  std::vector<std::string> alpha_tokens;
  std::vector<std::string> lambda_tokens;
  std::string format;
  std::size_t max_terms = 0;
};

void add_common_options(CLI::App& cmd, ParsedOptions& opts) {
  RunConfig& c = opts.config;
  cmd.add_option("--dim", c.dim, "dimension n >= 3")->envname("KHAVINSON_DIM");
  cmd.add_option("--quad-order", c.quad_order, "Gauss-Legendre points per piece")
      ->envname("KHAVINSON_QUAD_ORDER");
  cmd.add_option("--tail-tol", c.series.tail_tol, "series tail tolerance")->envname("KHAVINSON_TAIL_TOL");
  cmd.add_option("--max-terms", opts.max_terms, "hard cap on series terms (default: automatic)")
      ->envname("KHAVINSON_MAX_TERMS");
  cmd.add_option("--tol", c.tol, "pass tolerance")->envname("KHAVINSON_TOL");
  cmd.add_option("--format", opts.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->envname("KHAVINSON_FORMAT");
  cmd.add_option("--out", c.out_path, "output file (default stdout)")->envname("KHAVINSON_OUT");
}

void add_sweep_options(CLI::App& cmd, ParsedOptions& opts) {
  cmd.add_option("--rho", opts.rho_tokens, "radii in [0, 1), comma separated")
      ->delimiter(',')
      ->envname("KHAVINSON_RHO");
  cmd.add_option("--alpha", opts.alpha_tokens, "angles in radians or grid:N, comma separated")
      ->delimiter(',')
      ->envname("KHAVINSON_ALPHA");
  cmd.add_option("--t-grid", opts.config.t_grid, "points in the t grid on [-0.999, 0.999]")
      ->envname("KHAVINSON_T_GRID");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sharp gradient constants for bounded harmonic functions on the unit ball"};
  app.require_subcommand(1);
  ParsedOptions opts;

  CLI::App* constant = app.add_subcommand("constant", "C(rho e1, l_alpha) by the series and double-integral routes");
  CLI::App* certify = app.add_subcommand("certify", "convexity and alpha = 0 maximality certificates");
  CLI::App* identities = app.add_subcommand("identities", "Gegenbauer identity suite");
  for (CLI::App* cmd : {constant, certify, identities}) add_common_options(*cmd, opts);
  add_sweep_options(*constant, opts);
  add_sweep_options(*certify, opts);
  identities->add_option("--lambda", opts.lambda_tokens, "Gegenbauer parameters, comma separated")
      ->delimiter(',')
      ->envname("KHAVINSON_LAMBDA");
  identities->add_option("--check", opts.config.checks, "identities to run, comma separated")
      ->delimiter(',')
      ->envname("KHAVINSON_CHECK");
  identities->add_option("--max-degree", opts.config.max_degree, "largest degree k")
      ->envname("KHAVINSON_MAX_DEGREE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    RunConfig& config = opts.config;
    config.rhos = parse_numbers(opts.rho_tokens, "rho");
    config.alphas = parse_alpha_tokens(opts.alpha_tokens);
    config.lambdas = parse_numbers(opts.lambda_tokens, "lambda");
    if (!opts.format.empty()) {
      config.format = opts.format == "csv" ? OutputFormat::kCsv : OutputFormat::kJson;
    }
    if (opts.max_terms != 0) {
      config.series.max_terms = opts.max_terms;
      config.strict_max_terms = true;
    }

    std::ofstream file;
    if (!config.out_path.empty()) {
      file.open(config.out_path);
      if (!file) throw UsageError("cannot open output file '" + config.out_path + "'");
    }
    std::ostream& sink = config.out_path.empty() ? out : file;

    if (constant->parsed()) return cmd_constant(config, sink);
    if (certify->parsed()) return cmd_certify(config, sink);
    return cmd_identities(config, sink);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SeriesNotConverged& e) {
    err << "error: " << e.what() << '\n';
    return kExitFail;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace khavinson::cli
