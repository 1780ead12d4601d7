#include "gpbvp/casebook.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>

#include "gpbvp/errors.hpp"

namespace gpbvp {

namespace {

std::string fmt(double v) {
  std::array<char, 32> buf;
  auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), p);
}

std::string gaussian_source(double radius_scale, double width, double x01, double x02) {
  const std::string r = fmt(radius_scale);
  const std::string w = fmt(width);
  return "4*exp(-0.5*((" + r + "*x1-" + fmt(x01) + ")/" + w + ")^2-0.5*((" + r + "*x2-" +
         fmt(x02) + ")/" + w + ")^2)";
}

EllSearch search_from_default(const Domain& domain) {
  const LengthscaleGrid g = default_lengthscale_grid(domain);
  return EllSearch{g.ell_min, g.ell_max, g.count};
}

CaseBoundaryRule dirichlet_everywhere() {
  return CaseBoundaryRule{"all", {CaseOpTerm{{0, 0}, "1"}}, "0"};
}

std::vector<CaseText> make_case_table() {
  std::vector<CaseText> table;

  {
    CaseText ct;
    ct.id = CaseId::heat1d;
    ct.domain_kind = "interval";
    ct.interval_a = 0.0;
    ct.interval_b = 3.0;
    // -d/dx(a(x) du/dx) - u/2 with a(x) = atan(20(x-1))/2 + 1, expanded by
    // hand: a'(x) = 10/(1 + 400(x-1)^2)
    ct.op_terms = {CaseOpTerm{{2}, "-(0.5*atan(20*(x1-1))+1)"},
                   CaseOpTerm{{1}, "-10/(1+400*(x1-1)^2)"}, CaseOpTerm{{0}, "-0.5"}};
    ct.source = "exp(-(x1-2)^2)";
    ct.boundary = {CaseBoundaryRule{"left", {CaseOpTerm{{1}, "1"}}, "0"},
                   CaseBoundaryRule{"right", {CaseOpTerm{{0}, "1"}}, "0"}};
    ct.signal = 2.0;
    ct.ell_search = search_from_default(Domain::interval(0.0, 3.0));
    ct.default_ni = 20;
    ct.default_nb = 2;
    ct.strategy = "equidistant";
    table.push_back(std::move(ct));
  }

  {
    CaseText ct;
    ct.id = CaseId::disk_poisson;
    ct.domain_kind = "unit_disk";
    ct.op_terms = {CaseOpTerm{{2, 0}, "-1"}, CaseOpTerm{{0, 2}, "-1"}};
    ct.source = "1";
    ct.boundary = {dirichlet_everywhere()};
    ct.signal = 0.1;
    ct.fixed_ell = 3.5;
    ct.default_ni = 16;
    ct.default_nb = 5;
    ct.strategy = "sunflower";
    table.push_back(std::move(ct));
  }

  {
    CaseText ct;
    ct.id = CaseId::disk_gaussian_source;
    ct.domain_kind = "unit_disk";
    ct.op_terms = {CaseOpTerm{{2, 0}, "-1"}, CaseOpTerm{{0, 2}, "-1"}};
    const double r = 0.3;
    ct.source = gaussian_source(r, 0.025, 0.6 * r * std::cos(0.2), 0.6 * r * std::sin(0.2));
    ct.boundary = {dirichlet_everywhere()};
    ct.signal = 0.01;
    ct.ell_search = search_from_default(Domain::unit_disk());
    ct.default_ni = 50;
    ct.default_nb = 20;
    ct.strategy = "uniform_random";
    ct.seed = 20240101;
    table.push_back(std::move(ct));
  }

  {
    CaseText ct;
    ct.id = CaseId::star_gaussian_source;
    ct.domain_kind = "star_shaped";
    ct.star_radius = "0.8*(1+0.2*cos(3*x1))";
    ct.op_terms = {CaseOpTerm{{2, 0}, "-1"}, CaseOpTerm{{0, 2}, "-1"}};
    const double r = 0.8;
    const double c = std::cos(0.25 * std::numbers::pi);
    ct.source = gaussian_source(r, 0.025, r * c, r * c);
    ct.boundary = {dirichlet_everywhere()};
    ct.signal = 0.2;
    ct.fixed_ell = 0.18;
    ct.default_ni = 34;
    ct.default_nb = 20;
    ct.strategy = "sunflower";
    table.push_back(std::move(ct));
  }

  return table;
}

const std::vector<CaseText>& case_table() {
  static const std::vector<CaseText> table = make_case_table();
  return table;
}

LinearDiffOperator operator_from_terms(int dimension, const std::vector<CaseOpTerm>& terms) {
  std::vector<OperatorTerm> out;
  out.reserve(terms.size());
  for (const auto& t : terms)
    out.push_back(OperatorTerm{MultiIndex(t.alpha), Expression::parse(t.coefficient)});
  return LinearDiffOperator(dimension, std::move(out));
}

}  // namespace

std::string_view case_name(CaseId id) {
  switch (id) {
    case CaseId::heat1d: return "heat1d";
    case CaseId::disk_poisson: return "disk_poisson";
    case CaseId::disk_gaussian_source: return "disk_gaussian_source";
    case CaseId::star_gaussian_source: return "star_gaussian_source";
  }
  throw ConfigError("unknown case id");
}

CaseId case_from_name(std::string_view name) {
  for (const auto& ct : case_table())
    if (case_name(ct.id) == name) return ct.id;
  throw ConfigError("unknown case study: " + std::string(name));
}

std::vector<CaseId> all_cases() {
  std::vector<CaseId> ids;
  for (const auto& ct : case_table()) ids.push_back(ct.id);
  return ids;
}

const CaseText& case_text(CaseId id) {
  for (const auto& ct : case_table())
    if (ct.id == id) return ct;
  throw ConfigError("unknown case id");
}

ProblemSpec build_case(CaseId id, int n_i, int n_b) {
  const CaseText& ct = case_text(id);
  if (n_i < 1 || n_b < 1) throw ConfigError("point counts must be at least 1");

  Domain domain = ct.domain_kind == "interval"
                      ? Domain::interval(ct.interval_a, ct.interval_b)
                      : (ct.domain_kind == "unit_disk"
                             ? Domain::unit_disk()
                             : Domain::star_shaped(Expression::parse(ct.star_radius)));
  const int d = domain.dimension();

  LinearDiffOperator interior_op = operator_from_terms(d, ct.op_terms);
  Expression source = Expression::parse(ct.source);

  InteriorRule rule = ct.strategy == "equidistant"
                          ? InteriorRule::equidistant
                          : (ct.strategy == "sunflower" ? InteriorRule::sunflower
                                                        : InteriorRule::uniform_random);
  std::vector<Point> interior = sample_interior(domain, n_i, rule, ct.seed);

  std::vector<BoundaryDatum> boundary;
  for (const Point& p : sample_boundary(domain, n_b)) {
    const CaseBoundaryRule* matched = nullptr;
    for (const auto& rule_text : ct.boundary) {
      const bool at_left = domain.kind() == Domain::Kind::interval && p[0] == domain.interval_a();
      const bool at_right = domain.kind() == Domain::Kind::interval && p[0] == domain.interval_b();
      if (rule_text.where == "all" || (rule_text.where == "left" && at_left) ||
          (rule_text.where == "right" && at_right)) {
        matched = &rule_text;
        break;
      }
    }
    if (matched == nullptr) throw ConfigError("no boundary rule matches a sampled boundary point");
    boundary.push_back(BoundaryDatum{p, operator_from_terms(d, matched->op_terms),
                                     Expression::parse(matched->value)(p)});
  }

  const double ell = ct.fixed_ell ? *ct.fixed_ell
                                  : std::sqrt(ct.ell_search->ell_min * ct.ell_search->ell_max);
  SEKernel kernel = SEKernel::isotropic(ct.signal, ell, d);

  return ProblemSpec(std::move(domain), std::move(interior_op), std::move(source),
                     std::move(interior), std::move(boundary), std::move(kernel));
}

double exact_disk_solution(std::span<const double> x) {
  if (x.size() != 2) throw ConfigError("exact_disk_solution expects a 2D point");
  const double r2 = x[0] * x[0] + x[1] * x[1];
  if (r2 > 1.0 + 1e-12) throw ConfigError("point lies outside the closed unit disk");
  return (1.0 - r2) / 4.0;
}

FDReference::FDReference(double a, double b, std::vector<double> values, double residual)
    : a_(a), b_(b), h_((b - a) / (static_cast<int>(values.size()) - 1)),
      values_(std::move(values)), residual_(residual) {
  if (values_.size() < 2) throw ConfigError("finite-difference reference needs at least 2 values");
}

double FDReference::operator()(double x) const {
  if (x < a_ - 1e-9 || x > b_ + 1e-9)
    throw ConfigError("interpolation point outside the reference grid");
  const int n = grid_size();
  int k = static_cast<int>((x - a_) / h_);
  k = std::max(0, std::min(k, n - 2));
  const double t = (x - grid_point(k)) / h_;
  return (1.0 - t) * values_[k] + t * values_[k + 1];
}

FDReference fd_solve_heat1d(int n, double source_scale) {
  if (n < 16) throw ConfigError("fd_solve_heat1d needs at least 16 intervals");
  const double a0 = 0.0, b0 = 3.0;
  const double h = (b0 - a0) / n;
  auto cond = [](double x) { return 0.5 * std::atan(20.0 * (x - 1.0)) + 1.0; };
  auto src = [source_scale](double x) {
    return source_scale * std::exp(-(x - 2.0) * (x - 2.0));
  };

  // Grid x_k = k h, k = 0..n. Unknowns q_i = u_{i+1}, i = 0..m-1. The
  // Dirichlet value u_n = 0 is substituted out and the Neumann stencil
  // (-3u_0 + 4u_1 - u_2)/(2h) = 0 eliminates u_0 = (4u_1 - u_2)/3 from the
  // first flux row. Rows are the h^2-scaled conservative form
  //   -a_{k-1/2} u_{k-1} + (a_{k-1/2}+a_{k+1/2} - h^2/2) u_k - a_{k+1/2} u_{k+1} = h^2 f_k.
  const int m = n - 1;
  std::vector<double> sub(m, 0.0), diag(m, 0.0), sup(m, 0.0), rhs(m, 0.0);
  for (int k = 1; k <= n - 1; ++k) {
    const double x = a0 + h * k;
    const double am = cond(x - 0.5 * h);
    const double ap = cond(x + 0.5 * h);
    const int i = k - 1;
    sub[i] = -am;
    diag[i] = am + ap - 0.5 * h * h;
    sup[i] = -ap;
    rhs[i] = h * h * src(x);
  }
  {
    // Fold -a_{1/2} u_0 with u_0 = (4u_1 - u_2)/3 into the first row:
    // -(4/3) a_{1/2} to the diagonal and +(1/3) a_{1/2} to the upper band.
    const double am = cond(a0 + 0.5 * h);
    diag[0] -= 4.0 / 3.0 * am;
    sup[0] += am / 3.0;
    sub[0] = 0.0;
  }

  std::vector<double> cp(m, 0.0), dp(m, 0.0);
  if (diag[0] == 0.0) throw NumericalBreakdownError("singular tridiagonal system");
  cp[0] = sup[0] / diag[0];
  dp[0] = rhs[0] / diag[0];
  for (int i = 1; i < m; ++i) {
    const double w = diag[i] - sub[i] * cp[i - 1];
    if (w == 0.0 || !std::isfinite(w))
      throw NumericalBreakdownError("singular tridiagonal system");
    cp[i] = sup[i] / w;
    dp[i] = (rhs[i] - sub[i] * dp[i - 1]) / w;
  }
  std::vector<double> q(m, 0.0);
  q[m - 1] = dp[m - 1];
  for (int i = m - 2; i >= 0; --i) q[i] = dp[i] - cp[i] * q[i + 1];

  double residual = 0.0;
  for (int i = 0; i < m; ++i) {
    double lhs = diag[i] * q[i];
    if (i > 0) lhs += sub[i] * q[i - 1];
    if (i + 1 < m) lhs += sup[i] * q[i + 1];
    residual = std::max(residual, std::abs(lhs - rhs[i]));
  }

  std::vector<double> u(n + 1, 0.0);
  u[0] = (4.0 * q[0] - q[1]) / 3.0;
  for (int i = 0; i < m; ++i) u[i + 1] = q[i];
  u[n] = 0.0;
  return FDReference(a0, b0, std::move(u), residual);
}

}  // namespace gpbvp
