#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "gpbvp/errors.hpp"
#include "gpbvp/multi_index.hpp"

namespace gpbvp {

/// Squared-exponential covariance
///
///   c(x, x') = s^2 exp{ -1/2 sum_r (x_r - x'_r)^2 / ell_r^2 }
///
/// with signal strength s > 0 and one lengthscale per spatial dimension,
/// plus closed-form evaluation of its mixed partial derivatives of
/// arbitrary order (capped per coordinate, see kMaxOrderPerCoordinate).
/// Immutable value type; evaluation is pure and thread-safe.
class SEKernel {
 public:
  /// Total derivative order a_r + b_r allowed per coordinate.
  static constexpr int kMaxOrderPerCoordinate = 8;

  SEKernel(double signal, std::vector<double> lengthscales);

  /// All lengthscales tied to the same value.
  static SEKernel isotropic(double signal, double lengthscale, int dimension);

  int dimension() const { return static_cast<int>(lengthscales_.size()); }
  double signal() const { return signal_; }
  const std::vector<double>& lengthscales() const { return lengthscales_; }

  /// Copy with every lengthscale replaced by `ell` (used by the tied
  /// lengthscale search).
  SEKernel with_lengthscale(double ell) const;

  /// c(x, x').
  double operator()(std::span<const double> x, std::span<const double> xp) const;

  /// Exact value of d^alpha_x (d')^beta_x' c(x, x').
  ///
  /// With t_r = (x_r - x'_r)/ell_r and phi(t) = exp(-t^2/2):
  ///
  ///   s^2 prod_r (-1)^{a_r} ell_r^{-(a_r+b_r)} He_{a_r+b_r}(t_r) phi(t_r)
  ///
  /// where He_n is the probabilists' Hermite polynomial. Throws if any
  /// a_r + b_r exceeds kMaxOrderPerCoordinate.
  double derivative(const MultiIndex& alpha, const MultiIndex& beta,
                    std::span<const double> x, std::span<const double> xp) const;

  double operator()(std::initializer_list<double> x, std::initializer_list<double> xp) const {
    return (*this)(std::span<const double>(x.begin(), x.size()),
                   std::span<const double>(xp.begin(), xp.size()));
  }
  double derivative(const MultiIndex& alpha, const MultiIndex& beta,
                    std::initializer_list<double> x, std::initializer_list<double> xp) const {
    return derivative(alpha, beta, std::span<const double>(x.begin(), x.size()),
                      std::span<const double>(xp.begin(), xp.size()));
  }

 private:
  double signal_;
  std::vector<double> lengthscales_;
};

/// He_n(t) by the recursion He_{n+1} = t He_n - n He_{n-1}, He_0 = 1, He_1 = t.
double hermite_prob(int n, double t);

}  // namespace gpbvp
