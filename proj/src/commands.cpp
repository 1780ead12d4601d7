#include "gpbvp/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "gpbvp/casebook.hpp"
#include "gpbvp/config.hpp"
#include "gpbvp/errors.hpp"
#include "gpbvp/gp.hpp"

namespace gpbvp {

namespace {

using json = nlohmann::ordered_json;
using steady = std::chrono::steady_clock;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double ms_since(steady::time_point t0) {
  return std::chrono::duration<double, std::milli>(steady::now() - t0).count();
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const IllConditionedError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const NumericalBreakdownError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::ios_base::failure("cannot open output file: " + path);
  out << content;
  out.flush();
  if (!out) throw std::ios_base::failure("cannot write output file: " + path);
}

/// Regular per-axis grid over the domain's bounding box, keeping only
/// points of the closed domain.
std::vector<Point> evaluation_grid(const Domain& domain, int per_axis) {
  std::vector<Point> pts;
  if (domain.dimension() == 1) {
    const double a = domain.interval_a();
    const double b = domain.interval_b();
    for (int k = 0; k < per_axis; ++k)
      pts.push_back({a + (b - a) * k / (per_axis - 1)});
  } else {
    const double r = domain.diameter() / 2.0;
    for (int i = 0; i < per_axis; ++i) {
      const double x1 = -r + 2.0 * r * i / (per_axis - 1);
      for (int j = 0; j < per_axis; ++j) {
        const double x2 = -r + 2.0 * r * j / (per_axis - 1);
        Point p{x1, x2};
        if (domain.contains(p)) pts.push_back(std::move(p));
      }
    }
  }
  return pts;
}

using OracleFn = std::function<double(const Point&)>;

std::optional<OracleFn> make_oracle(const ProblemConfig& cfg) {
  if (!cfg.oracle) return std::nullopt;
  if (cfg.oracle->kind == "exact_disk")
    return OracleFn([](const Point& p) { return exact_disk_solution(p); });
  auto ref = std::make_shared<FDReference>(fd_solve_heat1d(cfg.oracle->n));
  return OracleFn([ref](const Point& p) { return (*ref)(p[0]); });
}

struct SearchOutcome {
  double chosen_ell = 0.0;
  bool searched = false;
  double ms = 0.0;
};

SearchOutcome choose_lengthscale(const ProblemConfig& cfg, ProblemSpec& spec) {
  SearchOutcome out{spec.kernel().lengthscales()[0], false, 0.0};
  if (auto grid = config_lengthscale_grid(cfg)) {
    const auto t0 = steady::now();
    const LengthscaleSelection sel = select_lengthscale(spec, *grid);
    out.chosen_ell = sel.best_ell;
    out.searched = true;
    out.ms = ms_since(t0);
    spec = spec.with_lengthscale(sel.best_ell);
  }
  return out;
}

struct ResidualStats {
  double interior_max = 0.0;
  double boundary_max = 0.0;
  double y_max = 0.0;
};

ResidualStats collocation_residuals(const PosteriorField& field) {
  ResidualStats rs;
  const ProblemSpec& spec = field.spec();
  rs.y_max = field.system().y.size() > 0 ? field.system().y.cwiseAbs().maxCoeff() : 0.0;
  for (const Point& p : spec.interior()) {
    const double r = field.apply_operator_to_mean(spec.interior_op(), p) - spec.source()(p);
    rs.interior_max = std::max(rs.interior_max, std::abs(r));
  }
  for (const BoundaryDatum& b : spec.boundary()) {
    const double r = field.apply_operator_to_mean(b.op, b.point) - b.value;
    rs.boundary_max = std::max(rs.boundary_max, std::abs(r));
  }
  return rs;
}

}  // namespace

int cmd_solve(const std::string& config_path, int grid, const std::string& out_path) {
  return run_guarded([&]() -> int {
    if (grid < 2) throw ConfigError("grid resolution must be at least 2");
    const ProblemConfig cfg = load_config(config_path);
    ProblemSpec spec = make_problem_spec(cfg);
    const SearchOutcome search = choose_lengthscale(cfg, spec);

    const auto t_solve = steady::now();
    const PosteriorField field = solve(spec);
    const double solve_ms = ms_since(t_solve);

    const std::optional<OracleFn> oracle = make_oracle(cfg);

    const auto t_grid = steady::now();
    const std::vector<Point> pts = evaluation_grid(spec.domain(), grid);
    const bool two_d = spec.domain().dimension() == 2;
    std::ostringstream csv;
    csv << (two_d ? "x1,x2," : "x1,") << "mean,std,lower95,upper95";
    if (oracle) csv << ",exact,abs_err";
    csv << "\n";
    for (const Point& p : pts) {
      const double m = field.mean(p);
      const double sd = std::sqrt(field.variance(p));
      csv << fmt17(p[0]);
      if (two_d) csv << "," << fmt17(p[1]);
      csv << "," << fmt17(m) << "," << fmt17(sd) << "," << fmt17(m - 2.0 * sd) << ","
          << fmt17(m + 2.0 * sd);
      if (oracle) {
        const double exact = (*oracle)(p);
        csv << "," << fmt17(exact) << "," << fmt17(std::abs(exact - m));
      }
      csv << "\n";
    }
    const double grid_ms = ms_since(t_grid);
    const ResidualStats rs = collocation_residuals(field);

    write_file(out_path, csv.str());

    json report;
    report["command"] = "solve";
    report["config"] = config_path;
    report["grid"] = grid;
    report["n_i"] = spec.interior().size();
    report["n_b"] = spec.boundary().size();
    report["chosen_ell"] = search.chosen_ell;
    report["ell_searched"] = search.searched;
    report["jitter_used"] = field.system().jitter_used;
    report["rows_written"] = pts.size();
    report["residuals"] = json{{"interior_max", rs.interior_max},
                               {"boundary_max", rs.boundary_max},
                               {"y_max", rs.y_max}};
    report["timings_ms"] = json{{"lengthscale_search", search.ms},
                                {"solve", solve_ms},
                                {"grid_eval", grid_ms}};
    if (!spec.order_warning().empty()) report["order_warning"] = spec.order_warning();
    write_file(out_path + ".json", report.dump(2) + "\n");
    return kExitOk;
  });
}

int cmd_likelihood(const std::string& config_path, double ell_min, double ell_max, int steps,
                   const std::string& out_path) {
  return run_guarded([&]() -> int {
    if (!(ell_min > 0.0) || !(ell_max >= ell_min))
      throw ConfigError("lengthscale bounds must satisfy 0 < min <= max");
    if (steps < 1) throw ConfigError("steps must be at least 1");
    const ProblemConfig cfg = load_config(config_path);
    const ProblemSpec spec = make_problem_spec(cfg);

    std::vector<double> ells;
    if (steps == 1) {
      ells.push_back(ell_min);
    } else {
      for (int i = 0; i < steps; ++i)
        ells.push_back(std::exp(std::log(ell_min) +
                                (std::log(ell_max) - std::log(ell_min)) * i / (steps - 1)));
    }

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> ll(ells.size(), -inf);
    int failures = 0;
    for (std::size_t i = 0; i < ells.size(); ++i) {
      try {
        ll[i] = log_marginal_likelihood(spec.with_lengthscale(ells[i]));
      } catch (const IllConditionedError&) {
        ++failures;
      }
    }
    const auto best = std::max_element(ll.begin(), ll.end());
    if (!std::isfinite(*best))
      throw NumericalBreakdownError("likelihood evaluation failed at every lengthscale");

    std::ostringstream csv;
    csv << "ell,normalized_likelihood\n";
    for (std::size_t i = 0; i < ells.size(); ++i) {
      const double norm = std::isfinite(ll[i]) ? std::exp(ll[i] - *best) : 0.0;
      csv << fmt17(ells[i]) << "," << fmt17(norm) << "\n";
    }
    write_file(out_path, csv.str());

    json report;
    report["command"] = "likelihood";
    report["config"] = config_path;
    report["best_ell"] = ells[static_cast<std::size_t>(best - ll.begin())];
    report["steps"] = steps;
    report["failed_steps"] = failures;
    write_file(out_path + ".json", report.dump(2) + "\n");
    return kExitOk;
  });
}

int cmd_convergence(const std::string& config_path, const std::vector<int>& ni_list,
                    const std::string& out_path) {
  return run_guarded([&]() -> int {
    if (ni_list.empty()) throw ConfigError("need at least one interior point count");
    const ProblemConfig cfg = load_config(config_path);
    const std::optional<OracleFn> oracle = make_oracle(cfg);
    if (!oracle) {
      std::cerr << "no oracle available for this config\n";
      return kExitNoOracle;
    }

    std::ostringstream csv;
    csv << "n_i,ell_star,max_abs_err,mean_abs_err,coverage95\n";
    json rows = json::array();
    for (int ni : ni_list) {
      if (ni < 1) throw ConfigError("interior point counts must be at least 1");
      ProblemConfig modified = cfg;
      modified.discretization.n_i = ni;
      ProblemSpec spec = make_problem_spec(modified);
      const SearchOutcome search = choose_lengthscale(modified, spec);
      const PosteriorField field = solve(spec);

      const int per_axis = spec.domain().dimension() == 1 ? 201 : 41;
      const std::vector<Point> pts = evaluation_grid(spec.domain(), per_axis);
      double max_err = 0.0, sum_err = 0.0;
      std::size_t covered = 0;
      for (const Point& p : pts) {
        const double m = field.mean(p);
        const double sd = std::sqrt(field.variance(p));
        const double err = std::abs((*oracle)(p) - m);
        max_err = std::max(max_err, err);
        sum_err += err;
        if (err <= 2.0 * sd) ++covered;
      }
      const double mean_err = sum_err / static_cast<double>(pts.size());
      const double coverage = static_cast<double>(covered) / static_cast<double>(pts.size());
      csv << ni << "," << fmt17(search.chosen_ell) << "," << fmt17(max_err) << ","
          << fmt17(mean_err) << "," << fmt17(coverage) << "\n";
      rows.push_back(json{{"n_i", ni},
                          {"ell_star", search.chosen_ell},
                          {"jitter_used", field.system().jitter_used},
                          {"max_abs_err", max_err},
                          {"mean_abs_err", mean_err},
                          {"coverage95", coverage}});
    }
    write_file(out_path, csv.str());

    json report;
    report["command"] = "convergence";
    report["config"] = config_path;
    report["rows"] = std::move(rows);
    write_file(out_path + ".json", report.dump(2) + "\n");
    return kExitOk;
  });
}

int cmd_export_case(const std::string& case_name, const std::string& out_path) {
  return run_guarded([&]() -> int {
    const CaseId id = case_from_name(case_name);
    write_file(out_path, serialize_config(case_config(id)));
    return kExitOk;
  });
}

}  // namespace gpbvp
