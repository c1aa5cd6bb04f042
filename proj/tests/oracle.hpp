#pragma once

// Independent frequency-domain model of the force loop, linearized: no
// saturation, no sensor noise or quantization, continuous-time controller.
//
// Locked load, carriage mass m, spring k with damping b, controller
//   u = F_s + kp (w F_d - F_s) + ki/s (F_d - F_s) - kd s F_s
// gives
//   F_s / F_d = k (w kp s + ki) / (m s^3 + (b + kd k) s^2 + kp k s + ki k)
// and, with the load driven along x_l and F_d = 0,
//   F_s / x_l = -k m s^2 / (m s^2 + b s + k (kp + ki/s + kd s)).

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace limbkit::testing {

struct LoopModel {
  double m = 0.0;
  double b = 0.0;
  double k = 0.0;
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
  double w = 1.0;

  // Closed-loop poles from the companion matrix of the denominator.
  std::vector<std::complex<double>> poles() const {
    const double a2 = (b + kd * k) / m;
    const double a1 = kp * k / m;
    const double a0 = ki * k / m;
    Eigen::Matrix3d c;
    c << -a2, -a1, -a0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0;
    Eigen::EigenSolver<Eigen::Matrix3d> es(c);
    std::vector<std::complex<double>> out;
    for (int i = 0; i < 3; ++i) out.push_back(es.eigenvalues()[i]);
    return out;
  }

  bool stable() const {
    for (const auto& p : poles()) {
      if (!(p.real() < 0.0)) return false;
    }
    return true;
  }

  // |F_s / F_d| at omega, from the pole-zero factorization.
  double force_gain(double omega) const {
    const std::complex<double> s(0.0, omega);
    std::complex<double> num;
    if (w * kp != 0.0) {
      const double zero = -ki / (w * kp);
      num = (k * w * kp / m) * (s - zero);
    } else {
      num = k * ki / m;
    }
    std::complex<double> den = 1.0;
    for (const auto& p : poles()) den *= (s - p);
    return std::abs(num / den);
  }

  // First -3 dB crossing in Hz; NaN if none below 1e5 rad/s.
  double bandwidth_hz() const {
    const double target = 1.0 / std::sqrt(2.0);
    double lo = 1e-3;
    for (double hi = lo * 1.01; hi < 1e5; lo = hi, hi *= 1.01) {
      if (force_gain(hi) < target) {
        for (int i = 0; i < 100; ++i) {
          const double mid = std::sqrt(lo * hi);
          (force_gain(mid) < target ? hi : lo) = mid;
        }
        return std::sqrt(lo * hi) / (2.0 * M_PI);
      }
    }
    return std::nan("");
  }

  // |F_s / x_l| in N/m.
  double impedance(double omega) const {
    const std::complex<double> s(0.0, omega);
    const std::complex<double> c = kp + ki / s + kd * s;
    return std::abs(-k * m * s * s / (m * s * s + b * s + k * c));
  }
};

}  // namespace limbkit::testing
