#include "gpbvp/kernel.hpp"

#include <cmath>

namespace gpbvp {

double hermite_prob(int n, double t) {
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = t;
  for (int k = 1; k < n; ++k) {
    double next = t * cur - static_cast<double>(k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

SEKernel::SEKernel(double signal, std::vector<double> lengthscales)
    : signal_(signal), lengthscales_(std::move(lengthscales)) {
  if (!(signal_ > 0.0)) throw ConfigError("kernel signal strength must be positive");
  if (lengthscales_.empty() || lengthscales_.size() > 3)
    throw ConfigError("kernel dimension must be in [1, 3]");
  for (double ell : lengthscales_)
    if (!(ell > 0.0)) throw ConfigError("kernel lengthscales must be positive");
}

SEKernel SEKernel::isotropic(double signal, double lengthscale, int dimension) {
  if (dimension < 1 || dimension > 3) throw ConfigError("kernel dimension must be in [1, 3]");
  return SEKernel(signal, std::vector<double>(static_cast<std::size_t>(dimension), lengthscale));
}

SEKernel SEKernel::with_lengthscale(double ell) const {
  return isotropic(signal_, ell, dimension());
}

double SEKernel::operator()(std::span<const double> x, std::span<const double> xp) const {
  const std::size_t d = lengthscales_.size();
  if (x.size() != d || xp.size() != d)
    throw ConfigError("kernel evaluated at points of the wrong dimension");
  double q = 0.0;
  for (std::size_t r = 0; r < d; ++r) {
    double t = (x[r] - xp[r]) / lengthscales_[r];
    q += t * t;
  }
  return signal_ * signal_ * std::exp(-0.5 * q);
}

double SEKernel::derivative(const MultiIndex& alpha, const MultiIndex& beta,
                            std::span<const double> x, std::span<const double> xp) const {
  const int d = dimension();
  if (alpha.dimension() != d || beta.dimension() != d)
    throw ConfigError("derivative multi-indices must match the kernel dimension");
  if (x.size() != static_cast<std::size_t>(d) || xp.size() != static_cast<std::size_t>(d))
    throw ConfigError("kernel evaluated at points of the wrong dimension");

  double result = signal_ * signal_;
  for (int r = 0; r < d; ++r) {
    const int n = alpha[r] + beta[r];
    if (n > kMaxOrderPerCoordinate)
      throw ConfigError("kernel derivative order " + std::to_string(n) + " in coordinate " +
                        std::to_string(r + 1) + " exceeds the cap of " +
                        std::to_string(kMaxOrderPerCoordinate));
    const double ell = lengthscales_[static_cast<std::size_t>(r)];
    const double t = (x[static_cast<std::size_t>(r)] - xp[static_cast<std::size_t>(r)]) / ell;
    double factor = hermite_prob(n, t) * std::exp(-0.5 * t * t);
    for (int k = 0; k < n; ++k) factor /= ell;
    if (alpha[r] % 2 == 1) factor = -factor;
    result *= factor;
  }
  return result;
}

}  // namespace gpbvp
