#pragma once

#include <string>
#include <vector>

namespace gpbvp {

/// Process exit codes shared by all commands.
inline constexpr int kExitOk = 0;          // success
inline constexpr int kExitConfig = 1;      // bad config / expression / arguments
inline constexpr int kExitNumerical = 2;   // ill-conditioned or numerical breakdown
inline constexpr int kExitIo = 3;          // file-system failure
inline constexpr int kExitNoOracle = 4;    // convergence study without an oracle

/// Solves the configured problem (running the lengthscale search when the
/// config requests one) and writes mean/std/95%-band rows over a regular
/// grid clipped to the domain, plus a JSON report sidecar at
/// `out_path + ".json"`. Grid resolution is per axis.
int cmd_solve(const std::string& config_path, int grid, const std::string& out_path);

/// Writes the normalized marginal-likelihood profile over `steps`
/// log-spaced lengthscales in [ell_min, ell_max] (a single step uses
/// ell_min alone). The maximum of the normalized column is exactly 1.
int cmd_likelihood(const std::string& config_path, double ell_min, double ell_max, int steps,
                   const std::string& out_path);

/// Re-solves the config at each interior point count in `ni_list` and
/// writes per-row error statistics against the config's oracle:
/// n_i, ell_star, max_abs_err, mean_abs_err, coverage95. Exits with
/// kExitNoOracle when the config declares no oracle.
int cmd_convergence(const std::string& config_path, const std::vector<int>& ni_list,
                    const std::string& out_path);

/// Writes the JSON config document of a built-in case study.
int cmd_export_case(const std::string& case_name, const std::string& out_path);

}  // namespace gpbvp
