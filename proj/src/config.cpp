#include "gpbvp/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "gpbvp/errors.hpp"

namespace gpbvp {

namespace {

using json = nlohmann::ordered_json;

void expect_object(const json& v, const std::string& where,
                   std::initializer_list<const char*> allowed) {
  if (!v.is_object()) throw ConfigError(where + " must be an object");
  for (auto it = v.begin(); it != v.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known) throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
  }
}

const json& require(const json& obj, const std::string& where, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(where + " is missing required key \"" + key + "\"");
  return *it;
}

double as_number(const json& v, const std::string& what) {
  if (!v.is_number()) throw ConfigError(what + " must be a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& what) {
  if (!v.is_number_integer()) throw ConfigError(what + " must be an integer");
  return v.get<int>();
}

std::string as_string(const json& v, const std::string& what) {
  if (!v.is_string()) throw ConfigError(what + " must be a string");
  return v.get<std::string>();
}

std::vector<ConfigOpTerm> parse_operator(const json& v, const std::string& where) {
  expect_object(v, where, {"terms"});
  const json& terms = require(v, where, "terms");
  if (!terms.is_array() || terms.empty())
    throw ConfigError(where + ".terms must be a non-empty array");
  std::vector<ConfigOpTerm> out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string term_where = where + ".terms[" + std::to_string(i) + "]";
    const json& t = terms[i];
    expect_object(t, term_where, {"alpha", "coeff"});
    const json& alpha = require(t, term_where, "alpha");
    if (!alpha.is_array() || alpha.empty())
      throw ConfigError(term_where + ".alpha must be a non-empty array");
    ConfigOpTerm term;
    for (const json& a : alpha) term.alpha.push_back(as_int(a, term_where + ".alpha entry"));
    term.coeff = as_string(require(t, term_where, "coeff"), term_where + ".coeff");
    out.push_back(std::move(term));
  }
  return out;
}

json operator_to_json(const std::vector<ConfigOpTerm>& terms) {
  json arr = json::array();
  for (const auto& t : terms) arr.push_back(json{{"alpha", t.alpha}, {"coeff", t.coeff}});
  return json{{"terms", std::move(arr)}};
}

}  // namespace

ProblemConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  expect_object(doc, "config",
                {"domain", "operator", "source", "boundary", "kernel", "discretization",
                 "oracle"});

  ProblemConfig cfg;

  const json& dom = require(doc, "config", "domain");
  cfg.domain.kind = as_string(require(dom, "domain", "kind"), "domain.kind");
  if (cfg.domain.kind == "interval") {
    expect_object(dom, "domain", {"kind", "a", "b"});
    cfg.domain.a = as_number(require(dom, "domain", "a"), "domain.a");
    cfg.domain.b = as_number(require(dom, "domain", "b"), "domain.b");
  } else if (cfg.domain.kind == "unit_disk") {
    expect_object(dom, "domain", {"kind"});
  } else if (cfg.domain.kind == "star_shaped") {
    expect_object(dom, "domain", {"kind", "radius"});
    cfg.domain.star_radius = as_string(require(dom, "domain", "radius"), "domain.radius");
  } else {
    throw ConfigError("domain.kind must be interval, unit_disk or star_shaped");
  }

  cfg.operator_terms = parse_operator(require(doc, "config", "operator"), "operator");
  cfg.source = as_string(require(doc, "config", "source"), "source");

  const json& bnd = require(doc, "config", "boundary");
  if (!bnd.is_array()) throw ConfigError("boundary must be an array");
  for (std::size_t i = 0; i < bnd.size(); ++i) {
    const std::string where = "boundary[" + std::to_string(i) + "]";
    const json& b = bnd[i];
    expect_object(b, where, {"where", "point", "operator", "value"});
    ConfigBoundary entry;
    const bool has_where = b.contains("where");
    const bool has_point = b.contains("point");
    if (has_where == has_point)
      throw ConfigError(where + " needs exactly one of \"where\" or \"point\"");
    if (has_where) {
      entry.where = as_string(b["where"], where + ".where");
      if (*entry.where != "left" && *entry.where != "right" && *entry.where != "all")
        throw ConfigError(where + ".where must be left, right or all");
    } else {
      const json& pt = b["point"];
      if (!pt.is_array() || pt.empty()) throw ConfigError(where + ".point must be a non-empty array");
      entry.point.emplace();
      for (const json& c : pt) entry.point->push_back(as_number(c, where + ".point entry"));
    }
    entry.op_terms = parse_operator(require(b, where, "operator"), where + ".operator");
    entry.value = as_string(require(b, where, "value"), where + ".value");
    cfg.boundary.push_back(std::move(entry));
  }

  const json& kern = require(doc, "config", "kernel");
  expect_object(kern, "kernel", {"s", "ell", "ell_search"});
  cfg.kernel.s = as_number(require(kern, "kernel", "s"), "kernel.s");
  const bool has_ell = kern.contains("ell");
  const bool has_search = kern.contains("ell_search");
  if (has_ell == has_search)
    throw ConfigError("kernel needs exactly one of \"ell\" or \"ell_search\"");
  if (has_ell) {
    cfg.kernel.ell = as_number(kern["ell"], "kernel.ell");
  } else {
    const json& s = kern["ell_search"];
    expect_object(s, "kernel.ell_search", {"min", "max", "count"});
    cfg.kernel.ell_search =
        EllSearch{as_number(require(s, "kernel.ell_search", "min"), "kernel.ell_search.min"),
                  as_number(require(s, "kernel.ell_search", "max"), "kernel.ell_search.max"),
                  as_int(require(s, "kernel.ell_search", "count"), "kernel.ell_search.count")};
  }

  const json& disc = require(doc, "config", "discretization");
  expect_object(disc, "discretization", {"n_i", "n_b", "strategy", "seed"});
  cfg.discretization.n_i = as_int(require(disc, "discretization", "n_i"), "discretization.n_i");
  cfg.discretization.n_b = as_int(require(disc, "discretization", "n_b"), "discretization.n_b");
  cfg.discretization.strategy =
      as_string(require(disc, "discretization", "strategy"), "discretization.strategy");
  if (cfg.discretization.strategy != "equidistant" && cfg.discretization.strategy != "sunflower" &&
      cfg.discretization.strategy != "uniform_random")
    throw ConfigError("discretization.strategy must be equidistant, sunflower or uniform_random");
  if (disc.contains("seed")) {
    const json& seed = disc["seed"];
    if (!seed.is_number_unsigned()) throw ConfigError("discretization.seed must be an unsigned integer");
    cfg.discretization.seed = seed.get<std::uint64_t>();
  }

  if (doc.contains("oracle")) {
    const json& orc = doc["oracle"];
    ConfigOracle oracle;
    oracle.kind = as_string(require(orc, "oracle", "kind"), "oracle.kind");
    if (oracle.kind == "exact_disk") {
      expect_object(orc, "oracle", {"kind"});
    } else if (oracle.kind == "fd_heat1d") {
      expect_object(orc, "oracle", {"kind", "n"});
      if (orc.contains("n")) oracle.n = as_int(orc["n"], "oracle.n");
      if (oracle.n < 16) throw ConfigError("oracle.n must be at least 16");
    } else {
      throw ConfigError("oracle.kind must be exact_disk or fd_heat1d");
    }
    cfg.oracle = std::move(oracle);
  }

  return cfg;
}

ProblemConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw std::ios_base::failure("cannot read config file: " + path);
  return parse_config(buf.str());
}

std::string serialize_config(const ProblemConfig& config) {
  json doc;

  json dom;
  dom["kind"] = config.domain.kind;
  if (config.domain.kind == "interval") {
    dom["a"] = config.domain.a;
    dom["b"] = config.domain.b;
  } else if (config.domain.kind == "star_shaped") {
    dom["radius"] = config.domain.star_radius;
  }
  doc["domain"] = std::move(dom);

  doc["operator"] = operator_to_json(config.operator_terms);
  doc["source"] = config.source;

  json bnd = json::array();
  for (const auto& b : config.boundary) {
    json entry;
    if (b.where) entry["where"] = *b.where;
    if (b.point) entry["point"] = *b.point;
    entry["operator"] = operator_to_json(b.op_terms);
    entry["value"] = b.value;
    bnd.push_back(std::move(entry));
  }
  doc["boundary"] = std::move(bnd);

  json kern;
  kern["s"] = config.kernel.s;
  if (config.kernel.ell) kern["ell"] = *config.kernel.ell;
  if (config.kernel.ell_search)
    kern["ell_search"] = json{{"min", config.kernel.ell_search->ell_min},
                              {"max", config.kernel.ell_search->ell_max},
                              {"count", config.kernel.ell_search->count}};
  doc["kernel"] = std::move(kern);

  doc["discretization"] = json{{"n_i", config.discretization.n_i},
                               {"n_b", config.discretization.n_b},
                               {"strategy", config.discretization.strategy},
                               {"seed", config.discretization.seed}};

  if (config.oracle) {
    json orc;
    orc["kind"] = config.oracle->kind;
    if (config.oracle->kind == "fd_heat1d") orc["n"] = config.oracle->n;
    doc["oracle"] = std::move(orc);
  }

  return doc.dump(2) + "\n";
}

ProblemSpec make_problem_spec(const ProblemConfig& config) {
  Domain domain = config.domain.kind == "interval"
                      ? Domain::interval(config.domain.a, config.domain.b)
                      : (config.domain.kind == "unit_disk"
                             ? Domain::unit_disk()
                             : Domain::star_shaped(Expression::parse(config.domain.star_radius)));
  const int d = domain.dimension();

  std::vector<OperatorTerm> op_terms;
  for (const auto& t : config.operator_terms)
    op_terms.push_back(OperatorTerm{MultiIndex(t.alpha), Expression::parse(t.coeff)});
  LinearDiffOperator interior_op(d, std::move(op_terms));
  Expression source = Expression::parse(config.source);

  if (config.discretization.n_i < 0 || config.discretization.n_b < 0)
    throw ConfigError("discretization point counts must be non-negative");
  InteriorRule rule = config.discretization.strategy == "equidistant"
                          ? InteriorRule::equidistant
                          : (config.discretization.strategy == "sunflower"
                                 ? InteriorRule::sunflower
                                 : InteriorRule::uniform_random);
  std::vector<Point> interior =
      config.discretization.n_i > 0
          ? sample_interior(domain, config.discretization.n_i, rule, config.discretization.seed)
          : std::vector<Point>{};

  for (const auto& b : config.boundary) {
    if (b.where && (*b.where == "left" || *b.where == "right") &&
        domain.kind() != Domain::Kind::interval)
      throw ConfigError("boundary selector \"" + *b.where + "\" applies to interval domains only");
  }

  std::vector<BoundaryDatum> boundary;
  if (config.discretization.n_b > 0) {
    for (const Point& p : sample_boundary(domain, config.discretization.n_b)) {
      const ConfigBoundary* matched = nullptr;
      for (const auto& b : config.boundary) {
        if (!b.where) continue;
        const bool at_left =
            domain.kind() == Domain::Kind::interval && p[0] == domain.interval_a();
        const bool at_right =
            domain.kind() == Domain::Kind::interval && p[0] == domain.interval_b();
        if (*b.where == "all" || (*b.where == "left" && at_left) ||
            (*b.where == "right" && at_right)) {
          matched = &b;
          break;
        }
      }
      if (matched == nullptr)
        throw ConfigError("no boundary entry matches a sampled boundary point");
      std::vector<OperatorTerm> terms;
      for (const auto& t : matched->op_terms)
        terms.push_back(OperatorTerm{MultiIndex(t.alpha), Expression::parse(t.coeff)});
      boundary.push_back(BoundaryDatum{p, LinearDiffOperator(d, std::move(terms)),
                                       Expression::parse(matched->value)(p)});
    }
  }
  for (const auto& b : config.boundary) {
    if (!b.point) continue;
    std::vector<OperatorTerm> terms;
    for (const auto& t : b.op_terms)
      terms.push_back(OperatorTerm{MultiIndex(t.alpha), Expression::parse(t.coeff)});
    boundary.push_back(BoundaryDatum{*b.point, LinearDiffOperator(d, std::move(terms)),
                                     Expression::parse(b.value)(*b.point)});
  }

  if (!(config.kernel.s > 0.0)) throw ConfigError("kernel.s must be positive");
  double ell = 0.0;
  if (config.kernel.ell) {
    ell = *config.kernel.ell;
  } else {
    const EllSearch& s = *config.kernel.ell_search;
    if (!(s.ell_min > 0.0) || !(s.ell_max >= s.ell_min) || s.count < 1)
      throw ConfigError("kernel.ell_search bounds must satisfy 0 < min <= max, count >= 1");
    ell = std::sqrt(s.ell_min * s.ell_max);
  }
  if (!(ell > 0.0)) throw ConfigError("kernel.ell must be positive");

  return ProblemSpec(std::move(domain), std::move(interior_op), std::move(source),
                     std::move(interior), std::move(boundary),
                     SEKernel::isotropic(config.kernel.s, ell, d));
}

std::optional<LengthscaleGrid> config_lengthscale_grid(const ProblemConfig& config) {
  if (!config.kernel.ell_search) return std::nullopt;
  const EllSearch& s = *config.kernel.ell_search;
  return LengthscaleGrid{s.ell_min, s.ell_max, s.count, true};
}

ProblemConfig case_config(CaseId id) {
  const CaseText& ct = case_text(id);
  ProblemConfig cfg;
  cfg.domain.kind = ct.domain_kind;
  cfg.domain.a = ct.interval_a;
  cfg.domain.b = ct.interval_b;
  cfg.domain.star_radius = ct.star_radius;
  for (const auto& t : ct.op_terms) cfg.operator_terms.push_back(ConfigOpTerm{t.alpha, t.coefficient});
  cfg.source = ct.source;
  for (const auto& r : ct.boundary) {
    ConfigBoundary entry;
    entry.where = r.where;
    for (const auto& t : r.op_terms) entry.op_terms.push_back(ConfigOpTerm{t.alpha, t.coefficient});
    entry.value = r.value;
    cfg.boundary.push_back(std::move(entry));
  }
  cfg.kernel.s = ct.signal;
  cfg.kernel.ell = ct.fixed_ell;
  cfg.kernel.ell_search = ct.ell_search;
  cfg.discretization.n_i = ct.default_ni;
  cfg.discretization.n_b = ct.default_nb;
  cfg.discretization.strategy = ct.strategy;
  cfg.discretization.seed = ct.seed;
  if (id == CaseId::heat1d) cfg.oracle = ConfigOracle{"fd_heat1d", 10000};
  if (id == CaseId::disk_poisson) cfg.oracle = ConfigOracle{"exact_disk", 10000};
  return cfg;
}

}  // namespace gpbvp
