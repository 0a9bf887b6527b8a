#include "annulus/euler_lagrange.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace annulus {

namespace {

// s^{3n-4} q^{2-n/2} Phi''(s^{n-2} v), the scaled volumetric weight shared
// by X_n and Z_n after dividing both by s^4 q^{n/2}.
double volumetric_weight(int n, const StoredEnergy& phi, double s, double v,
                         double q) {
  const double dd = phi.ddphi(std::pow(s, n - 2) * v);
  if (std::isinf(dd)) return dd;
  return dd * std::exp((3 * n - 4) * std::log(s) + (2.0 - 0.5 * n) * std::log(q));
}

double scaled_z(int n, double s, double v, double w) {
  return n * (n - 1) * s * (s * s * s * s + v * v) + s * w;
}

// Weights of the first-derivative stencil at x0 over nodes x (Fornberg).
template <std::size_t M>
std::array<double, M> first_derivative_weights(double x0,
                                               const std::array<double, M>& x) {
  std::array<std::array<double, M>, 2> c{};
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < M; ++i) {
    const std::size_t mn = std::min<std::size_t>(i, 1);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn + 1; k-- > 1;)
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (std::size_t k = mn + 1; k-- > 1;)
        c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c[1];
}

}  // namespace

std::string_view to_string(ElForm f) {
  switch (f) {
    case ElForm::general_m: return "general_m";
    case ElForm::planar_direct: return "planar_direct";
    case ElForm::reduced: return "reduced";
  }
  return "reduced";
}

double aux_x(int n, const StoredEnergy& phi, double s, double v) {
  const double q = (n - 1) * std::pow(s, 4) + v * v;
  const double p6 = (n - 1) * std::pow(s, 6) +
                    v * ((n - 3) * std::pow(s, 4) + (s * s - v) * v);
  return (n - 1) * n * std::pow(s, 4) * std::pow(q, 0.5 * n) * p6 +
         (n - 2) * std::pow(s, 3 * n) * v * q * q * phi.ddphi(std::pow(s, n - 2) * v);
}

double aux_y(int n, double s, double v) {
  const double q = (n - 1) * std::pow(s, 4) + v * v;
  return (n - 1) * n * std::pow(s, 4) * (v - s * s) * std::pow(q, 0.5 * n) *
         ((n - 1) * std::pow(s, 4) + (n - 2) * s * s * v + (n - 1) * v * v);
}

double aux_z(int n, const StoredEnergy& phi, double s, double v) {
  const double q = (n - 1) * std::pow(s, 4) + v * v;
  return (n - 1) * n * std::pow(s, 5) * (std::pow(s, 4) + v * v) * std::pow(q, 0.5 * n) +
         std::pow(s, 1 + 3 * n) * q * q * phi.ddphi(std::pow(s, n - 2) * v);
}

double aux_rhs(int n, const StoredEnergy& phi, double s, double v) {
  if (!(s > 0.0)) throw InvalidArgument("aux_rhs needs s > 0");
  const double s2 = s * s;
  const double q = (n - 1) * s2 * s2 + v * v;
  const double w = volumetric_weight(n, phi, s, v, q);
  if (std::isinf(w)) return -(n - 2) * v / s;
  const double p6 = (n - 1) * s2 * s2 * s2 + v * ((n - 3) * s2 * s2 + (s2 - v) * v);
  const double x = n * (n - 1) * p6 + (n - 2) * v * w;
  const double z = scaled_z(n, s, v, w);
  if (!(z > 0.0)) throw DegenerateState("aux_rhs: Z_n vanishes");
  return -x / z;
}

double aux_rhs_split(int n, const StoredEnergy& phi, double s, double v) {
  if (!(s > 0.0)) throw InvalidArgument("aux_rhs needs s > 0");
  const double s2 = s * s;
  const double q = (n - 1) * s2 * s2 + v * v;
  const double w = volumetric_weight(n, phi, s, v, q);
  if (std::isinf(w)) return -(n - 2) * v / s;
  const double y = n * (n - 1) * (v - s2) *
                   ((n - 1) * s2 * s2 + (n - 2) * s2 * v + (n - 1) * v * v);
  const double z = scaled_z(n, s, v, w);
  if (!(z > 0.0)) throw DegenerateState("aux_rhs: Z_n vanishes");
  return -(n - 2) * v / s + y / z;
}

double growth_bound(int n, double s, double v) {
  return (3 * n - 5) * v / s + (n - 1) * s;
}

double hdot_from_aux(double t, double H, const std::function<double(double)>& v_at) {
  if (!(t > 0.0) || !(H > 0.0)) throw InvalidArgument("hdot_from_aux needs t, H > 0");
  return (t / H) * v_at(H / t);
}

double el_rhs(ElForm form, int n, const StoredEnergy& phi, double t, double H,
              double Hdot) {
  if (!(t > 0.0)) throw InvalidArgument("el_rhs needs t > 0");
  if (!(H > 0.0)) throw DegenerateState("el_rhs: H <= 0");
  const double gap = H - t * Hdot;
  switch (form) {
    case ElForm::planar_direct: {
      if (n != 2) throw InvalidArgument("planar_direct form is only defined for n = 2");
      const double dd = phi.ddphi(H * Hdot / t);
      if (std::isinf(dd)) return gap * Hdot / (t * H);
      const double den = t * H * H * dd + 2.0 * t * t * t;
      if (!(den > 0.0)) throw DegenerateState("el_rhs: denominator underflow");
      return gap * (H * Hdot * dd + 2.0 * t) / den;
    }
    case ElForm::general_m: {
      const double a = frobenius_sq(n, t, H, Hdot);
      const double an2 = std::pow(a, 0.5 * n);
      const double q = (n - 1) * H * H + t * t * Hdot * Hdot;
      const double s2n = std::pow(H / t, 2 * n);
      const double dd = phi.ddphi(jacobian(n, t, H, Hdot));
      const double B = n * H * H * H * an2 *
                       ((n - 1) * H * H + (n - 2) * t * H * Hdot + t * t * Hdot * Hdot);
      const double D = (n - 1) * n * H * H * an2 * (H * H + t * t * Hdot * Hdot);
      double ratio;
      if (std::isinf(dd)) {
        ratio = Hdot;  // (B + C)/(D + E) -> C/E
      } else {
        const double C = s2n * Hdot * q * q * dd;
        const double E = s2n * q * q * dd;
        if (!(D + E > 0.0)) throw DegenerateState("el_rhs: denominator underflow");
        ratio = (B + C) / (D + E);
      }
      return gap * (n - 1) / (t * t * H) * ratio;
    }
    case ElForm::reduced: {
      const double s = H / t;
      const double v = s * Hdot;
      const double G = aux_rhs(n, phi, s, v);
      return gap * (v - s * G) / (H * H);
    }
  }
  return 0.0;
}

std::vector<double> variational_residual(int n, const StoredEnergy& phi,
                                         const RadialProfile& profile) {
  const std::size_t m = profile.size();
  if (m < 5) throw InvalidArgument("variational_residual needs >= 5 nodes");
  constexpr double rel = 1e-5;
  std::vector<double> dH(m), dK(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double t = profile.t[i];
    const double H = profile.H[i];
    const double K = profile.Hdot[i];
    const double hH = rel * std::abs(H);
    dH[i] = (lagrangian_density(n, phi, t, H + hH, K) -
             lagrangian_density(n, phi, t, H - hH, K)) / (2.0 * hH);
    const double hK = rel * std::max(std::abs(K), 1e-3);
    const double Klo = std::max(K - hK, 0.0);
    dK[i] = (lagrangian_density(n, phi, t, H, K + hK) -
             lagrangian_density(n, phi, t, H, Klo)) / (K + hK - Klo);
  }
  std::vector<double> residual;
  residual.reserve(m - 2);
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const std::size_t first = std::clamp<std::size_t>(i, 2, m - 3) - 2;
    std::array<double, 5> x{};
    for (std::size_t k = 0; k < 5; ++k) x[k] = profile.t[first + k];
    const auto w = first_derivative_weights(profile.t[i], x);
    double ddt = 0.0;
    for (std::size_t k = 0; k < 5; ++k) ddt += w[k] * dK[first + k];
    residual.push_back(std::abs(dH[i] - ddt));
  }
  return residual;
}

}  // namespace annulus
