#pragma once

// Experiment suites shared by the CLI and the acceptance runner. Each suite
// produces result rows (one per computed quantity) and named checks.

#include "lagpot/signed_log.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lagpot::suites {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

struct Row {
  std::string experiment_id;
  /// "name=value" pairs joined by ';'.
  std::string params;
  SignedLogValue value;
  double achieved_tol = 0.0;
  bool divergent = false;
};

struct Check {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

struct SuiteResult {
  std::string suite;
  std::vector<Row> rows;
  std::vector<Check> checks;
  bool pass() const;
};

/// Ground-state identity int K(x,y) e^{-y^2/2} dmu(y) = (2alpha+2)^{-sigma} e^{-x^2/2}
/// on (alpha, sigma) in {-0.75,-0.5,0,1.5} x {0.3,1,2}, x in {0.1,0.5,1,2}; relative 1e-6.
SuiteResult spectral_suite();

/// 2 K_D^{-1/2} = K^{-1/2} + xy K^{1/2} and K^{-1/2}(x,y) = K_D^{-1/2}(x,y) + K_D^{-1/2}(-x,y)
/// at 50 random (x,y) in (0,5)^2 per sigma in {0.3, 0.7, 1.5}; relative 1e-7.
SuiteResult dunkl_links_suite(std::uint64_t seed = kDefaultSeed);

/// Log-log slopes of global row norms over x in {8,16,32,64} against
/// -2sigma + 2alpha(1/p - 1) (convolution) and -2sigma + 1 - 1/p (Hermite type),
/// within 0.05, plus three certified divergent rows.
SuiteResult row_norm_suite();

/// Fitted exponent of ||I_global f_n||_q / ||f_n||_p over n in {8,16,32,64} for
/// f_n the indicator of (n, n+1/n), (alpha, sigma) = (-0.75, 0.1),
/// (1/p, 1/q) = (0.9, 0.2); target -2sigma - 2alpha(1/p - 1/q) within 0.05.
SuiteResult bump_suite();

/// log_edge family at (alpha, sigma, 1/p) = (0, 1/4, 1/2): finite ||f||_p and
/// partial ||I_global f||_q^q growing over three window doublings.
SuiteResult log_edge_suite();

/// Negative Dunkl kernel values at (-0.75, 1) and (-0.9, 0.5), none at the
/// control alpha = -0.4.
SuiteResult negativity_suite();

/// Ball measure comparability and the large-x decay of the Hardy-type operator.
SuiteResult hardy_suite();

/// Dunkl folding identities for a smooth compactly supported function.
SuiteResult folding_suite();

/// Runs a suite by name: spectral, dunkl_links, row_norm, bump, log_edge,
/// negativity, hardy, folding. Throws DomainError for unknown names.
SuiteResult run_suite(const std::string& name, std::uint64_t seed = kDefaultSeed);

std::vector<std::string> suite_names();

}  // namespace lagpot::suites
