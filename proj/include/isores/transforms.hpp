#pragma once

#include "isores/isometry.hpp"

namespace isores {

class ExcludedPoint : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// V_z = (V - conj(z) E)(E - z V)^{-1}, |z| < 1. The result has domain M_z and
/// range M_{1/conj(z)}; its domain basis is the Gram-Schmidt basis of
/// (E - zV)D(V), images are carried along by the same triangular factor.
IsometricOperator cayley(const IsometricOperator& v, Complex z, const TolerancePolicy& tol);

/// V = (W + conj(z) E)(E + z W)^{-1} = W_{-z}; inverts `cayley` at the same z.
IsometricOperator inverse_cayley(const IsometricOperator& w, Complex z, const TolerancePolicy& tol);

/// The disk automorphism t(u) = (u - conj(z0)) / (1 - z0 u) and its inverse.
class MoebiusMap {
public:
    /// Requires |z0| < 1 - eps_unit.
    MoebiusMap(Complex z0, const TolerancePolicy& tol);

    Complex z0() const { return z0_; }
    /// Throws ExcludedPoint at the pole u = 1/z0.
    Complex t(Complex u) const;
    /// u(t) = (t + conj(z0)) / (1 + z0 t); throws at t = -1/z0.
    Complex u(Complex t) const;

private:
    Complex z0_;
    TolerancePolicy tol_;
};

MoebiusMap scalar_maps(Complex z0, const TolerancePolicy& tol);

/// |(z0 - z0p) / (1 - z0p conj(z0))|; throws std::logic_error if it is not < 1.
double disk_bound(Complex z0, Complex z0p);

struct Prop21Result {
    bool cond_i;    // zeta^{-1} of regular type for V
    bool cond_ii;   // (1 - zeta conj(z0)) / (zeta - z0) of regular type for V_{z0}
    double sigma_i;
    double sigma_ii;
};

/// Evaluates both conditions; zeta must avoid {0, z0}.
Prop21Result prop21_check(const IsometricOperator& v, Complex z0, Complex zeta, const TolerancePolicy& tol);

/// The inner point (u - z0) / (1 - conj(z0) u) at which R(V_{z0}) is evaluated.
Complex inner_resolvent_point(Complex z0, Complex u_tilde);

/// R_u(V) = -z0/(u - z0) E + u (1 - |z0|^2) / ((u - z0)(1 - conj(z0) u)) R_t(V_{z0})
/// with t = inner_resolvent_point(z0, u). Requires 0 < |z0| < 1 and
/// u outside {0, z0, 1/conj(z0)}.
ComplexMatrix relate_resolvents(const ComplexMatrix& r_inner, Complex z0, Complex u_tilde,
                                const TolerancePolicy& tol);

}  // namespace isores
