#include "phasecoh/cost.hpp"

#include <cmath>
#include <sstream>

namespace phasecoh {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kShiftGrid = 4096;

// Representative of φ in [−π, π).
double wrap(double phi) {
  double w = std::fmod(phi + kPi, 2 * kPi);
  if (w < 0) w += 2 * kPi;
  return w - kPi;
}

}  // namespace

CostFunction CostFunction::holevo() {
  CostFunction c;
  c.kind_ = Kind::Holevo;
  c.finalize();
  return c;
}

CostFunction CostFunction::window(double delta) {
  require(delta > 0.0 && delta <= kPi, "window cost: delta must lie in (0, π]");
  CostFunction c;
  c.kind_ = Kind::Window;
  c.delta_ = delta;
  c.finalize();
  return c;
}

CostFunction CostFunction::periodized_mse() {
  CostFunction c;
  c.kind_ = Kind::PeriodizedMse;
  c.finalize();
  return c;
}

CostFunction CostFunction::constant(double v) { return fourier_series({{0, v}}); }

CostFunction CostFunction::fourier_series(const std::map<int, cd>& coeffs) {
  CostFunction c;
  c.kind_ = Kind::FourierSeries;
  for (const auto& [k, v] : coeffs) {
    if (v == 0.0) continue;
    auto it = coeffs.find(-k);
    cd partner = it == coeffs.end() ? cd(0.0) : it->second;
    require(std::abs(partner - std::conj(v)) <= 1e-12 * (1 + std::abs(v)),
            "fourier-series cost: c_{-k} must equal conj(c_k) for a real cost");
    c.series_[k] = v;
  }
  c.finalize();
  return c;
}

CostFunction CostFunction::sampled(std::function<double(double)> f, int order) {
  require(static_cast<bool>(f), "sampled cost: empty evaluator");
  require(order >= 8, "sampled cost: quadrature order must be >= 8");
  CostFunction c;
  c.kind_ = Kind::Sampled;
  c.order_ = order;
  c.eval_ = std::make_shared<const std::function<double(double)>>(std::move(f));
  c.finalize();
  return c;
}

CostFunction CostFunction::from_samples(const std::vector<double>& samples) {
  require(samples.size() >= 8, "sampled cost: need at least 8 samples");
  auto s = samples;
  auto f = [s](double phi) {
    double n = static_cast<double>(s.size());
    double t = std::fmod(phi, 2 * kPi);
    if (t < 0) t += 2 * kPi;
    double x = t / (2 * kPi) * n;
    auto i = static_cast<size_t>(std::floor(x)) % s.size();
    double frac = x - std::floor(x);
    return (1 - frac) * s[i] + frac * s[(i + 1) % s.size()];
  };
  CostFunction c = sampled(f, static_cast<int>(samples.size()));
  c.samples_ = samples;
  return c;
}

void CostFunction::finalize() {
  double mn = raw(0.0);
  for (int j = 0; j < kShiftGrid; ++j) mn = std::min(mn, raw(2 * kPi * j / kShiftGrid));
  shift_ = mn < 0.0 ? -mn : 0.0;
}

double CostFunction::raw(double phi) const {
  switch (kind_) {
    case Kind::Holevo: {
      double s = std::sin(phi / 2);
      return 4 * s * s;
    }
    case Kind::Window:
      return std::abs(wrap(phi)) <= delta_ ? 0.0 : 1.0;
    case Kind::PeriodizedMse: {
      double w = wrap(phi);
      return w * w;
    }
    case Kind::FourierSeries: {
      // C(φ) = Σ_k c_k e^{−iφk}
      cd acc = 0.0;
      for (const auto& [k, v] : series_) acc += v * std::exp(cd(0.0, -phi * k));
      return acc.real();
    }
    case Kind::Sampled:
      return (*eval_)(phi);
  }
  return 0.0;
}

cd CostFunction::raw_coefficient(int k) const {
  switch (kind_) {
    case Kind::Holevo:
      if (k == 0) return 2.0;
      if (k == 1 || k == -1) return -1.0;
      return 0.0;
    case Kind::Window:
      if (k == 0) return 1.0 - delta_ / kPi;
      return -std::sin(k * delta_) / (k * kPi);
    case Kind::PeriodizedMse:
      if (k == 0) return kPi * kPi / 3.0;
      return 2.0 * ((k % 2 == 0) ? 1.0 : -1.0) / (static_cast<double>(k) * k);
    case Kind::FourierSeries: {
      auto it = series_.find(k);
      return it == series_.end() ? cd(0.0) : it->second;
    }
    case Kind::Sampled:
      require(2 * std::abs(k) < order_, "sampled cost: |k| = " + std::to_string(std::abs(k)) +
                                            " exceeds the resolvable bandwidth of a " + std::to_string(order_) +
                                            "-point quadrature");
      if (!samples_.empty()) {
        // exact discrete transform of the stored samples
        cd acc = 0.0;
        int n = static_cast<int>(samples_.size());
        for (int j = 0; j < n; ++j) acc += samples_[j] * std::exp(cd(0.0, 2 * kPi * j * k / n));
        return acc / static_cast<double>(n);
      }
      return trapezoid_coefficient(*eval_, k, order_);
  }
  return 0.0;
}

int CostFunction::bandwidth() const {
  switch (kind_) {
    case Kind::Holevo:
      return 1;
    case Kind::FourierSeries: {
      int b = 0;
      for (const auto& kv : series_) b = std::max(b, std::abs(kv.first));
      return b;
    }
    default:
      return -1;
  }
}

std::string CostFunction::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::Holevo:
      return "holevo";
    case Kind::Window:
      os << "window:" << delta_;
      return os.str();
    case Kind::PeriodizedMse:
      return "periodized-mse";
    case Kind::FourierSeries:
      if (series_.size() <= 1 && (series_.empty() || series_.begin()->first == 0)) {
        os << "constant:" << (series_.empty() ? 0.0 : series_.begin()->second.real());
        return os.str();
      }
      return "fourier-series";
    case Kind::Sampled:
      return "sampled";
  }
  return "?";
}

cd fourier_coefficient(const CostFunction& c, int k) { return c.coefficient(k); }

double c_zero(const CostFunction& c) { return c.coefficient(0).real(); }

cd trapezoid_coefficient(const std::function<double(double)>& f, int k, int n) {
  cd acc = 0.0;
  for (int j = 0; j < n; ++j) {
    double phi = 2 * kPi * j / n;
    acc += f(phi) * std::exp(cd(0.0, phi * k));
  }
  return acc / static_cast<double>(n);
}

CostMatrix cost_matrix(const CostFunction& c, int m) {
  require(m >= 1, "cost_matrix: m must be >= 1");
  std::vector<cd> coef(2 * m - 1);
  for (int k = -(m - 1); k <= m - 1; ++k) coef[k + m - 1] = c.coefficient(k);
  MatC y(m, m);
  for (int r = 0; r < m; ++r)
    for (int s = 0; s < m; ++s) y(r, s) = coef[r - s + m - 1];
  CostMatrix out;
  out.m = m;
  out.matrix = CMatrix("Y", y);
  out.c0 = coef[m - 1].real();
  out.shift = c.shift();
  auto es = eig_hermitian(y, 1e-10);
  out.lambda_min = es.values(0);
  VecC nu = es.vectors.col(0);
  Eigen::Index imax = 0;
  nu.cwiseAbs().maxCoeff(&imax);
  nu *= std::conj(nu(imax)) / std::abs(nu(imax));
  out.nu = nu;
  return out;
}

}  // namespace phasecoh
