#pragma once

// Embedded Dormand-Prince 5(4) integrator with cubic Hermite dense output.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <utility>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace annulus {

template <std::size_t N>
using State = std::array<double, N>;

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double t)
      : std::runtime_error(what + " at t = " + std::to_string(t)), t_(t) {}
  double where() const { return t_; }

 private:
  double t_;
};

class StepSizeCollapse : public IntegrationError {
 public:
  using IntegrationError::IntegrationError;
};

struct OdeOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.1;
  /// Steps below min_step * max(1, |t|) abort the integration.
  double min_step = 1e-14;
  std::size_t max_steps = 1'000'000;
};

template <std::size_t N>
struct OdeStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evals = 0;
  /// Sum over accepted steps of the embedded local error estimate.
  State<N> error_estimate{};
};

/// Accepted steps of an integration, with Hermite interpolation between them.
template <std::size_t N>
class OdeSolution {
 public:
  void push(double t, const State<N>& y, const State<N>& f) {
    t_.push_back(t);
    y_.push_back(y);
    f_.push_back(f);
  }

  std::size_t size() const { return t_.size(); }
  double t_front() const { return t_.front(); }
  double t_back() const { return t_.back(); }
  const std::vector<double>& times() const { return t_; }
  const std::vector<State<N>>& states() const { return y_; }
  const State<N>& back() const { return y_.back(); }

  /// Cubic Hermite interpolation; clamps outside the integrated range.
  State<N> operator()(double t) const { return eval(t).first; }

  /// Interpolated state and its time derivative.
  std::pair<State<N>, State<N>> eval(double t) const {
    if (t_.size() == 1) return {y_[0], f_[0]};
    const bool forward = t_.back() >= t_.front();
    std::size_t i;
    if (forward) {
      auto it = std::upper_bound(t_.begin(), t_.end(), t);
      i = it == t_.begin() ? 0 : static_cast<std::size_t>(it - t_.begin()) - 1;
    } else {
      auto it = std::upper_bound(t_.begin(), t_.end(), t, std::greater<>());
      i = it == t_.begin() ? 0 : static_cast<std::size_t>(it - t_.begin()) - 1;
    }
    i = std::min(i, t_.size() - 2);
    const double h = t_[i + 1] - t_[i];
    const double x = std::clamp((t - t_[i]) / h, 0.0, 1.0);
    const double h00 = (1 + 2 * x) * (1 - x) * (1 - x);
    const double h10 = x * (1 - x) * (1 - x);
    const double h01 = x * x * (3 - 2 * x);
    const double h11 = x * x * (x - 1);
    const double d00 = (6 * x * x - 6 * x) / h;
    const double d10 = 3 * x * x - 4 * x + 1;
    const double d11 = 3 * x * x - 2 * x;
    State<N> y{}, dy{};
    for (std::size_t k = 0; k < N; ++k) {
      y[k] = h00 * y_[i][k] + h10 * h * f_[i][k] + h01 * y_[i + 1][k] +
             h11 * h * f_[i + 1][k];
      dy[k] = d00 * (y_[i][k] - y_[i + 1][k]) + d10 * f_[i][k] + d11 * f_[i + 1][k];
    }
    return {y, dy};
  }

 private:
  std::vector<double> t_;
  std::vector<State<N>> y_;
  std::vector<State<N>> f_;
};

template <std::size_t N>
struct OdeResult {
  OdeSolution<N> solution;
  OdeStats<N> stats;
};

namespace detail {

template <std::size_t N>
double scaled_norm(const State<N>& e, const State<N>& y0, const State<N>& y1,
                   const OdeOptions& o) {
  double acc = 0.0;
  for (std::size_t k = 0; k < N; ++k) {
    const double sc = o.abs_tol + o.rel_tol * std::max(std::abs(y0[k]), std::abs(y1[k]));
    acc += (e[k] / sc) * (e[k] / sc);
  }
  return std::sqrt(acc / N);
}

}  // namespace detail

/// Integrates y' = f(t, y) from t0 to t1 (either direction).
///
/// Steps are shortened to land exactly on every entry of `landing` (sorted in
/// the direction of integration) and on t1. `on_accept(t, y)` runs after each
/// accepted step and may throw to abort.
template <std::size_t N, class Rhs, class OnAccept>
OdeResult<N> integrate_dopri(Rhs&& f, double t0, State<N> y0, double t1,
                             const OdeOptions& opt, std::span<const double> landing,
                             OnAccept&& on_accept) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                   a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                   b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  OdeResult<N> out;
  auto& stats = out.stats;
  auto rhs = [&](double t, const State<N>& y) {
    ++stats.rhs_evals;
    return f(t, y);
  };
  auto combo = [](const State<N>& y, double h, std::initializer_list<std::pair<double, const State<N>*>> terms) {
    State<N> r = y;
    for (const auto& [c, k] : terms)
      if (c != 0.0)
        for (std::size_t i = 0; i < N; ++i) r[i] += h * c * (*k)[i];
    return r;
  };

  State<N> k1 = rhs(t0, y0);
  out.solution.push(t0, y0, k1);
  if (t1 == t0) return out;

  const double dir = t1 > t0 ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);

  // Starting step (Hairer, Norsett and Wanner, II.4).
  double h;
  {
    State<N> zero{};
    const double d0 = detail::scaled_norm(y0, y0, zero, opt);
    const double d1 = detail::scaled_norm(k1, y0, zero, opt);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, span);
    const State<N> y1 = combo(y0, dir * h0, {{1.0, &k1}});
    const State<N> f1 = rhs(t0 + dir * h0, y1);
    State<N> df{};
    for (std::size_t i = 0; i < N; ++i) df[i] = (f1[i] - k1[i]) / h0;
    const double d2 = detail::scaled_norm(df, y0, zero, opt);
    const double h1 = std::max(d1, d2) <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                                : std::pow(0.01 / std::max(d1, d2), 0.2);
    h = std::min({100 * h0, h1, opt.max_step, span});
  }

  std::size_t next_land = 0;
  while (next_land < landing.size() && dir * (landing[next_land] - t0) <= 0.0) ++next_land;

  double t = t0;
  State<N> y = y0;
  bool last_rejected = false;
  while (dir * (t1 - t) > 0.0) {
    if (stats.accepted + stats.rejected >= opt.max_steps)
      throw IntegrationError("step budget exhausted", t);
    const double target = next_land < landing.size() && dir * (landing[next_land] - t1) < 0.0
                              ? landing[next_land]
                              : t1;
    bool lands = false;
    double hs = std::min(h, opt.max_step);
    if (hs >= std::abs(target - t) * (1.0 - 1e-12)) {
      hs = std::abs(target - t);
      lands = true;
    }
    if (hs < opt.min_step * std::max(1.0, std::abs(t)))
      throw StepSizeCollapse("step size collapsed", t);
    const double hh = dir * hs;

    const State<N> y2 = combo(y, hh, {{a21, &k1}});
    const State<N> k2 = rhs(t + c2 * hh, y2);
    const State<N> y3 = combo(y, hh, {{a31, &k1}, {a32, &k2}});
    const State<N> k3 = rhs(t + c3 * hh, y3);
    const State<N> y4 = combo(y, hh, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
    const State<N> k4 = rhs(t + c4 * hh, y4);
    const State<N> y5 = combo(y, hh, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    const State<N> k5 = rhs(t + c5 * hh, y5);
    const State<N> y6 = combo(y, hh, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    const State<N> k6 = rhs(t + hh, y6);
    const State<N> yn = combo(y, hh, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const double tn = lands ? target : t + hh;
    const State<N> k7 = rhs(tn, yn);

    State<N> err{};
    for (std::size_t i = 0; i < N; ++i)
      err[i] = hh * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    const double en = detail::scaled_norm(err, y, yn, opt);
    if (!std::isfinite(en)) {
      ++stats.rejected;
      last_rejected = true;
      h = 0.25 * hs;
      continue;
    }

    if (en <= 1.0) {
      ++stats.accepted;
      for (std::size_t i = 0; i < N; ++i) stats.error_estimate[i] += std::abs(err[i]);
      t = tn;
      y = yn;
      k1 = k7;
      out.solution.push(t, y, k1);
      on_accept(t, y);
      if (lands && target != t1) ++next_land;
      double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
      if (last_rejected) fac = std::min(fac, 1.0);
      // A landing step may be artificially short; keep the previous proposal.
      h = lands ? std::max(h, hs * fac) : hs * fac;
      last_rejected = false;
    } else {
      ++stats.rejected;
      last_rejected = true;
      h = hs * std::max(0.2, 0.9 * std::pow(en, -0.2));
    }
  }
  return out;
}

template <std::size_t N, class Rhs>
OdeResult<N> integrate_dopri(Rhs&& f, double t0, State<N> y0, double t1,
                             const OdeOptions& opt) {
  return integrate_dopri<N>(std::forward<Rhs>(f), t0, y0, t1, opt, {},
                            [](double, const State<N>&) {});
}

}  // namespace annulus
