#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "phasecoh/tensor.hpp"

namespace phasecoh {

/// 2π-periodic penalty C(φ) on the phase error, with Fourier coefficients
/// c_k = ∫ dφ/2π C(φ) e^{iφk}.
class CostFunction {
 public:
  enum class Kind { FourierSeries, Sampled, Holevo, Window, PeriodizedMse };

  static CostFunction holevo();
  static CostFunction window(double delta);
  static CostFunction periodized_mse();
  static CostFunction constant(double c);
  /// Coefficients c_k for k in [−K, K]; keys missing from the map are zero.
  static CostFunction fourier_series(const std::map<int, cd>& coeffs);
  static CostFunction sampled(std::function<double(double)> f, int order = 4096);
  /// Periodic piecewise-linear interpolant of samples on φ_j = 2πj/n.
  static CostFunction from_samples(const std::vector<double>& samples);

  Kind kind() const { return kind_; }
  double shift() const { return shift_; }
  double window_delta() const { return delta_; }
  int quadrature_order() const { return order_; }
  const std::map<int, cd>& series() const { return series_; }
  const std::vector<double>& samples() const { return samples_; }

  /// Cost as given and with the non-negativity shift applied.
  double raw(double phi) const;
  double operator()(double phi) const { return raw(phi) + shift_; }
  cd raw_coefficient(int k) const;
  /// Coefficient of the shifted cost.
  cd coefficient(int k) const { return raw_coefficient(k) + (k == 0 ? shift_ : 0.0); }
  /// True when c_k = 0 for |k| > bandwidth(); −1 means unbounded.
  int bandwidth() const;
  /// Short human-readable description, e.g. "window:0.5".
  std::string describe() const;

 private:
  CostFunction() = default;
  void finalize();

  Kind kind_ = Kind::Holevo;
  double shift_ = 0.0;
  double delta_ = 0.0;
  int order_ = 4096;
  std::map<int, cd> series_;
  std::vector<double> samples_;
  std::shared_ptr<const std::function<double(double)>> eval_;
};

cd fourier_coefficient(const CostFunction& c, int k);
double c_zero(const CostFunction& c);

/// Trapezoid estimate of ∫ dφ/2π f(φ) e^{iφk} on n points.
cd trapezoid_coefficient(const std::function<double(double)>& f, int k, int n);

/// Toeplitz cost matrix Y_{nm} = c_{n−m} of the shifted cost.
struct CostMatrix {
  int m = 0;
  CMatrix matrix;
  double c0 = 0.0;
  double lambda_min = 0.0;
  VecC nu;
  double shift = 0.0;
};

CostMatrix cost_matrix(const CostFunction& c, int m);

}  // namespace phasecoh
