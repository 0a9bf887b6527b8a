#pragma once

#include <functional>
#include <span>
#include <vector>

#include "annulus/kinematics.hpp"
#include "annulus/material.hpp"

namespace annulus {

/// Right-hand side forms for the radial Euler-Lagrange equation
/// Hddot = M(t) (H - t Hdot).
enum class ElForm {
  /// M as displayed for general n, with B, C, D, E taken verbatim.
  general_m,
  /// The planar equation (H - t Hdot)(H Hdot Phi'' + 2t) / (t H^2 Phi'' + 2t^3); n = 2 only.
  planar_direct,
  /// M = (v - s G(v, s)) / H^2 obtained from the auxiliary equation with
  /// s = H/t, v = s Hdot. Valid for every n; used by the solver.
  reduced,
};

std::string_view to_string(ElForm f);

/// Throws DegenerateState when the denominator underflows or H <= 0.
double el_rhs(ElForm form, int n, const StoredEnergy& phi, double t, double H,
              double Hdot);

/// Terms of the auxiliary equation vdot = -X_n / Z_n. These are the raw
/// displayed polynomials; they overflow for large n or s and are meant for
/// checks, not for the solver.
double aux_x(int n, const StoredEnergy& phi, double s, double v);
double aux_y(int n, double s, double v);
double aux_z(int n, const StoredEnergy& phi, double s, double v);

/// vdot = G(v, s) = -X_n/Z_n, evaluated in a scaled form that avoids
/// overflow. Phi'' is taken at the Jacobian s^{n-2} v.
double aux_rhs(int n, const StoredEnergy& phi, double s, double v);

/// The same quantity written as -(n-2) v/s + Y_n/Z_n.
double aux_rhs_split(int n, const StoredEnergy& phi, double s, double v);

/// (3n - 5) v / s + (n - 1) s; |aux_rhs| never exceeds it for convex Phi and v >= 0.
double growth_bound(int n, double s, double v);

/// Hdot = (t/H) v(H/t).
double hdot_from_aux(double t, double H, const std::function<double(double)>& v_at);

/// |Lambda_H - d/dt Lambda_Hdot| at the interior nodes of `profile`.
///
/// Partial derivatives of the density in H and Hdot are central differences
/// with relative step 1e-5; the t-derivative uses five-point stencils on
/// the profile nodes. Needs at least 5 nodes.
std::vector<double> variational_residual(int n, const StoredEnergy& phi,
                                         const RadialProfile& profile);

class DegenerateState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace annulus
