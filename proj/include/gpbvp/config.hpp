#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpbvp/casebook.hpp"
#include "gpbvp/gp.hpp"

namespace gpbvp {

/// In-memory form of the JSON problem document. Schema (unknown keys are
/// rejected at every level):
///
///   {
///     "domain": {"kind": "interval", "a": 0.0, "b": 3.0}
///             | {"kind": "unit_disk"}
///             | {"kind": "star_shaped", "radius": "<expr in x1>"},
///     "operator": {"terms": [{"alpha": [2], "coeff": "<expr>"}, ...]},
///     "source": "<expr>",
///     "boundary": [{"where": "left|right|all" | "point": [..],
///                   "operator": {"terms": [...]} , "value": "<expr>"}, ...],
///     "kernel": {"s": 2.0, "ell": 3.5}
///             | {"s": 2.0, "ell_search": {"min": a, "max": b, "count": k}},
///     "discretization": {"n_i": 20, "n_b": 2,
///                        "strategy": "equidistant|sunflower|uniform_random",
///                        "seed": 0},
///     "oracle": {"kind": "exact_disk"} | {"kind": "fd_heat1d", "n": 10000}   (optional)
///   }
///
/// Boundary entries with "where" attach their operator and value to every
/// sampled boundary point the selector matches (first matching entry
/// wins); entries with an explicit "point" add that single observation
/// directly. "value" is an expression evaluated at the boundary point.
struct ConfigOpTerm {
  std::vector<int> alpha;
  std::string coeff;
};

struct ConfigBoundary {
  std::optional<std::string> where;
  std::optional<std::vector<double>> point;
  std::vector<ConfigOpTerm> op_terms;
  std::string value;
};

struct ConfigDomain {
  std::string kind;
  double a = 0.0, b = 0.0;  // interval only
  std::string star_radius;  // star_shaped only
};

struct ConfigKernel {
  double s = 1.0;
  std::optional<double> ell;
  std::optional<EllSearch> ell_search;
};

struct ConfigDiscretization {
  int n_i = 0;
  int n_b = 0;
  std::string strategy = "equidistant";
  std::uint64_t seed = 0;
};

struct ConfigOracle {
  std::string kind;  // "exact_disk" | "fd_heat1d"
  int n = 10000;     // fd grid size
};

struct ProblemConfig {
  ConfigDomain domain;
  std::vector<ConfigOpTerm> operator_terms;
  std::string source;
  std::vector<ConfigBoundary> boundary;
  ConfigKernel kernel;
  ConfigDiscretization discretization;
  std::optional<ConfigOracle> oracle;
};

/// Parses and validates a JSON document. Throws ConfigError on malformed
/// JSON, unknown keys, missing keys, or type mismatches.
ProblemConfig parse_config(const std::string& text);

/// Reads the file and parses it. File-system failures throw
/// std::ios_base::failure; content failures throw ConfigError.
ProblemConfig load_config(const std::string& path);

/// Deterministic JSON serialization (17-significant-digit numbers,
/// insertion-ordered keys); parse_config(serialize_config(c)) reproduces
/// the same ProblemSpec bit-identically.
std::string serialize_config(const ProblemConfig& config);

/// Builds the concrete problem: constructs the domain, operator and
/// expressions, samples the discretization, and attaches boundary
/// operators per the boundary entries. When the kernel uses ell_search,
/// the spec's kernel starts at the geometric mean of the search bounds
/// (the search itself is run by the commands).
ProblemSpec make_problem_spec(const ProblemConfig& config);

/// The search grid when the kernel block requests one (log-spaced).
std::optional<LengthscaleGrid> config_lengthscale_grid(const ProblemConfig& config);

/// The shipped document for one of the built-in case studies;
/// make_problem_spec(case_config(id)) equals
/// build_case(id, defaults...) bit-identically.
ProblemConfig case_config(CaseId id);

}  // namespace gpbvp
