#include "gpbvp/gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "gpbvp/errors.hpp"

namespace gpbvp {

namespace {

constexpr double kBaseJitterScale = 1e-10;
constexpr double kMaxJitterScale = 1e-4;
constexpr double kVarianceFloorScale = -1e-10;

bool same_operator(const LinearDiffOperator& a, const LinearDiffOperator& b) {
  if (a.dimension() != b.dimension()) return false;
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  if (ta.size() != tb.size()) return false;
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (!(ta[i].alpha == tb[i].alpha)) return false;
    if (!ta[i].coefficient.same_ast(tb[i].coefficient)) return false;
  }
  return true;
}

bool same_domain(const Domain& a, const Domain& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Domain::Kind::interval:
      return a.interval_a() == b.interval_a() && a.interval_b() == b.interval_b();
    case Domain::Kind::unit_disk:
      return true;
    case Domain::Kind::star_shaped:
      return a.star_radius().same_ast(b.star_radius());
  }
  return false;
}

}  // namespace

bool BoundaryDatum::operator==(const BoundaryDatum& other) const {
  return point == other.point && same_operator(op, other.op) && value == other.value;
}

ProblemSpec::ProblemSpec(Domain domain, LinearDiffOperator interior_op, Expression source,
                         std::vector<Point> interior, std::vector<BoundaryDatum> boundary,
                         SEKernel kernel)
    : domain_(std::move(domain)),
      interior_op_(std::move(interior_op)),
      source_(std::move(source)),
      interior_(std::move(interior)),
      boundary_(std::move(boundary)),
      kernel_(std::move(kernel)) {
  const int d = domain_.dimension();
  if (interior_op_.dimension() != d)
    throw ConfigError("interior operator dimension does not match the domain");
  if (kernel_.dimension() != d) throw ConfigError("kernel dimension does not match the domain");
  if (source_.min_dimension() > d)
    throw ConfigError("source expression uses more variables than the domain has");
  for (const auto& p : interior_) {
    if (static_cast<int>(p.size()) != d)
      throw ConfigError("interior point dimension does not match the domain");
    if (!domain_.contains(p) || domain_.on_boundary(p))
      throw ConfigError("interior point is not strictly inside the domain");
  }
  for (const auto& bd : boundary_) {
    if (static_cast<int>(bd.point.size()) != d)
      throw ConfigError("boundary point dimension does not match the domain");
    if (!domain_.on_boundary(bd.point, 1e-9))
      throw ConfigError("boundary point does not lie on the domain boundary");
    auto check = check_boundary_order(interior_op_, bd.op);
    if (!check.ok && order_warning_.empty()) order_warning_ = check.warning;
  }
}

ProblemSpec ProblemSpec::with_lengthscale(double ell) const {
  ProblemSpec copy = *this;
  copy.kernel_ = kernel_.with_lengthscale(ell);
  return copy;
}

bool ProblemSpec::operator==(const ProblemSpec& other) const {
  return same_domain(domain_, other.domain_) && same_operator(interior_op_, other.interior_op_) &&
         source_.same_ast(other.source_) && interior_ == other.interior_ &&
         boundary_ == other.boundary_ && kernel_.signal() == other.kernel_.signal() &&
         kernel_.lengthscales() == other.kernel_.lengthscales();
}

AssembledSystem assemble(const ProblemSpec& spec) {
  const auto& L = spec.interior_op();
  const auto& kern = spec.kernel();
  const auto& xi = spec.interior();
  const auto& bd = spec.boundary();
  const auto ni = static_cast<Eigen::Index>(xi.size());
  const auto nb = static_cast<Eigen::Index>(bd.size());
  const Eigen::Index n = ni + nb;

  AssembledSystem sys;
  sys.C.resize(n, n);
  sys.y.resize(n);

  for (Eigen::Index i = 0; i < ni; ++i) sys.y(i) = spec.source()(xi[i]);
  for (Eigen::Index j = 0; j < nb; ++j) sys.y(ni + j) = bd[j].value;

  // Upper triangle (including the diagonal), then mirrored, so C is
  // exactly symmetric despite coefficient evaluation at both points.
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = r; c < n; ++c) {
      const bool ri = r < ni;
      const bool ci = c < ni;
      const auto& op_r = ri ? L : bd[r - ni].op;
      const auto& op_c = ci ? L : bd[c - ni].op;
      const auto& pr = ri ? xi[r] : bd[r - ni].point;
      const auto& pc = ci ? xi[c] : bd[c - ni].point;
      const double v = apply_to_kernel(op_r, op_c, kern, pr, pc);
      sys.C(r, c) = v;
      sys.C(c, r) = v;
    }
  }

  if (n == 0) return sys;

  if (!sys.y.allFinite())
    throw ConfigError("source or boundary value is not finite at a collocation point");
  if (!sys.C.allFinite())
    throw IllConditionedError("covariance entries are not finite", 0.0);

  const double max_diag = sys.C.diagonal().maxCoeff();
  double jitter = kBaseJitterScale * max_diag;
  const double jitter_cap = kMaxJitterScale * max_diag;
  while (true) {
    Eigen::MatrixXd regularized = sys.C;
    regularized.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(regularized);
    if (llt.info() == Eigen::Success) {
      sys.chol = llt.matrixL();
      sys.jitter_used = jitter;
      return sys;
    }
    if (jitter >= jitter_cap || !(jitter > 0.0))
      throw IllConditionedError("covariance factorization failed at the maximum jitter", jitter);
    jitter = std::min(jitter * 10.0, jitter_cap);
  }
}

PosteriorField::PosteriorField(ProblemSpec spec, AssembledSystem system)
    : spec_(std::move(spec)), system_(std::move(system)) {
  if (system_.y.size() == 0) {
    weights_.resize(0);
    return;
  }
  weights_ = refined_solve(system_.y);
}

// Solves C v = rhs. The jittered factor yields (C + jI)^{-1} rhs, whose
// residual against the raw C is -j (C + jI)^{-1} rhs; refinement removes
// that bias to near machine precision whenever C itself is numerically
// nonsingular. Each step is kept only while it clearly reduces the
// residual, so on a truly singular system the regularized solution is
// returned unchanged.
Eigen::VectorXd PosteriorField::refined_solve(const Eigen::VectorXd& rhs) const {
  const auto solve_regularized = [this](const Eigen::VectorXd& b) {
    const Eigen::VectorXd half = system_.chol.triangularView<Eigen::Lower>().solve(b);
    return Eigen::VectorXd(system_.chol.transpose().triangularView<Eigen::Upper>().solve(half));
  };
  Eigen::VectorXd v = solve_regularized(rhs);
  Eigen::VectorXd resid = rhs - system_.C * v;
  double rnorm = resid.lpNorm<Eigen::Infinity>();
  for (int it = 0; it < 3 && rnorm > 0.0; ++it) {
    const Eigen::VectorXd candidate = v + solve_regularized(resid);
    const Eigen::VectorXd candidate_resid = rhs - system_.C * candidate;
    const double candidate_norm = candidate_resid.lpNorm<Eigen::Infinity>();
    if (!(candidate_norm < 0.5 * rnorm)) break;
    v = candidate;
    resid = candidate_resid;
    rnorm = candidate_norm;
  }
  return v;
}

Eigen::VectorXd PosteriorField::cross_covariance(std::span<const double> x) const {
  const auto& xi = spec_.interior();
  const auto& bd = spec_.boundary();
  const auto ni = static_cast<Eigen::Index>(xi.size());
  const auto nb = static_cast<Eigen::Index>(bd.size());
  const auto id = LinearDiffOperator::identity(spec_.domain().dimension());

  Eigen::VectorXd c(ni + nb);
  for (Eigen::Index j = 0; j < ni; ++j)
    c(j) = apply_to_kernel(id, spec_.interior_op(), spec_.kernel(), x, xi[j]);
  for (Eigen::Index j = 0; j < nb; ++j)
    c(ni + j) = apply_to_kernel(id, bd[j].op, spec_.kernel(), x, bd[j].point);
  return c;
}

double PosteriorField::mean(std::span<const double> x) const {
  if (weights_.size() == 0) return 0.0;
  return cross_covariance(x).dot(weights_);
}

double PosteriorField::variance(std::span<const double> x) const {
  const double prior = spec_.kernel()(x, x);
  if (weights_.size() == 0) return prior;
  const Eigen::VectorXd c = cross_covariance(x);
  const double v = prior - c.dot(refined_solve(c));
  const double s = spec_.kernel().signal();
  if (v < kVarianceFloorScale * s * s)
    throw NumericalBreakdownError("posterior variance is far below zero: " + std::to_string(v));
  return std::max(v, 0.0);
}

double PosteriorField::covariance(std::span<const double> x, std::span<const double> xp) const {
  const double prior = spec_.kernel()(x, xp);
  if (weights_.size() == 0) return prior;
  return prior - cross_covariance(x).dot(refined_solve(cross_covariance(xp)));
}

double PosteriorField::apply_operator_to_mean(const LinearDiffOperator& op,
                                              std::span<const double> x) const {
  if (weights_.size() == 0) return 0.0;
  const auto& xi = spec_.interior();
  const auto& bd = spec_.boundary();
  const auto ni = static_cast<Eigen::Index>(xi.size());
  double acc = 0.0;
  for (Eigen::Index j = 0; j < ni; ++j)
    acc += weights_(j) * apply_to_kernel(op, spec_.interior_op(), spec_.kernel(), x, xi[j]);
  for (std::size_t j = 0; j < bd.size(); ++j)
    acc += weights_(ni + static_cast<Eigen::Index>(j)) *
           apply_to_kernel(op, bd[j].op, spec_.kernel(), x, bd[j].point);
  return acc;
}

PosteriorField solve(const ProblemSpec& spec) { return PosteriorField(spec, assemble(spec)); }

double log_marginal_likelihood(const AssembledSystem& system) {
  const Eigen::Index n = system.y.size();
  if (n == 0) return 0.0;
  const Eigen::VectorXd z = system.chol.triangularView<Eigen::Lower>().solve(system.y);
  const double log_det = 2.0 * system.chol.diagonal().array().log().sum();
  return -0.5 * z.squaredNorm() - 0.5 * log_det -
         0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
}

double log_marginal_likelihood(const ProblemSpec& spec) {
  return log_marginal_likelihood(assemble(spec));
}

LengthscaleGrid default_lengthscale_grid(const Domain& domain) {
  const double diam = domain.diameter();
  return LengthscaleGrid{diam / 100.0, 3.0 * diam, 40, true};
}

LengthscaleSelection select_lengthscale(const ProblemSpec& spec_template,
                                        const LengthscaleGrid& grid) {
  if (grid.count < 2) throw ConfigError("lengthscale grid needs at least 2 points");
  if (!(grid.ell_min > 0.0) || !(grid.ell_max >= grid.ell_min))
    throw ConfigError("lengthscale grid bounds must satisfy 0 < min <= max");

  std::vector<ProfilePoint> profile;
  profile.reserve(static_cast<std::size_t>(grid.count));
  const double inf = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(grid.count - 1);
    const double ell = grid.log_spaced
                           ? std::exp(std::log(grid.ell_min) +
                                      t * (std::log(grid.ell_max) - std::log(grid.ell_min)))
                           : grid.ell_min + t * (grid.ell_max - grid.ell_min);
    double ll = -inf;
    try {
      ll = log_marginal_likelihood(spec_template.with_lengthscale(ell));
    } catch (const IllConditionedError&) {
    }
    profile.push_back(ProfilePoint{ell, ll, 0.0});
  }

  const auto best = std::max_element(
      profile.begin(), profile.end(),
      [](const ProfilePoint& a, const ProfilePoint& b) { return a.log_likelihood < b.log_likelihood; });
  if (best == profile.end() || !std::isfinite(best->log_likelihood))
    throw NumericalBreakdownError("lengthscale search failed at every grid point");

  for (auto& p : profile)
    p.normalized_likelihood =
        std::isfinite(p.log_likelihood) ? std::exp(p.log_likelihood - best->log_likelihood) : 0.0;
  return LengthscaleSelection{best->ell, std::move(profile)};
}

}  // namespace gpbvp
