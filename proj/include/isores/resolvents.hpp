#pragma once

#include "isores/extensions.hpp"

#include <vector>

namespace isores {

/// An open arc {e^{it} : t1 < t < t2} with t1 < t2 <= t1 + 2 pi. Angles are
/// not reduced, so (-pi/4, pi/4) is the arc through 1.
struct Arc {
    double t1;
    double t2;

    /// Throws std::invalid_argument unless t1 < t2 <= t1 + 2 pi, both finite.
    void validate() const;
    /// True when e^{i angle} lies on the open arc.
    bool contains(double angle) const;
    /// n points equispaced in angle, endpoints excluded.
    std::vector<double> sample_angles(std::size_t n) const;
};

/// A generalized resolvent given by a parameter family at base point fam.z0():
/// Chumakin's formula when z0 = 0, Inin's formula otherwise. Values inside the
/// disk come from the formula, values outside from R_z = E - (R_{1/conj z})^H.
class ResolventFn {
public:
    ResolventFn(IsometricOperator v, ParameterFamily fam, TolerancePolicy tol);

    const IsometricOperator& op() const { return v_; }
    const ParameterFamily& family() const { return fam_; }
    Complex z0() const { return fam_.z0(); }
    const TolerancePolicy& tolerance() const { return tol_; }

    /// |z| < 1: formula value; |z| > 1: exterior branch. Throws on |z| = 1.
    ComplexMatrix operator()(Complex z) const;

    /// The extension V_{C(zeta;z0);z0} whose resolvent gives the value at zeta.
    ComplexMatrix frozen_extension(Complex zeta) const;

private:
    IsometricOperator v_;
    ParameterFamily fam_;
    TolerancePolicy tol_;
};

/// [E - zeta (V (+) F(zeta))]^{-1}, |zeta| < 1, family based at 0.
ComplexMatrix chumakin(const IsometricOperator& v, const ParameterFamily& fam, Complex zeta,
                       const TolerancePolicy& tol);

/// [E - zeta V_{C(zeta;z0);z0}]^{-1}, |zeta| < 1, z0 = fam.z0().
ComplexMatrix inin(const IsometricOperator& v, const ParameterFamily& fam, Complex zeta,
                   const TolerancePolicy& tol);

/// E - (R_{1/conj z})^H for |z| > 1.
ComplexMatrix exterior_value(const ResolventFn& r, Complex z);

UnitarySpectralData spectral_data(const ComplexMatrix& u, const TolerancePolicy& tol);

struct InversionSample {
    Complex z;  // |z| < 1
    ComplexVector h;
    ComplexVector g;
};

/// max |((I - zU)^{-1} h, g) - sum_k (P_k h, g) / (1 - z lambda_k)| over the samples.
double verify_inversion(const ComplexMatrix& u, const std::vector<InversionSample>& samples,
                        const TolerancePolicy& tol);

/// min over grid x vectors of Re[(R_z h, h) - |h|^2 / 2].
double herglotz_check(const ResolventFn& r, const std::vector<Complex>& grid,
                      const std::vector<ComplexVector>& vectors);

struct ArcGapResult {
    bool gap;
    std::vector<std::size_t> witnesses;  // indices of atoms in the arc with nonzero compressed weight
};

/// F(arc) = 0 for the spectral measure compressed to `embed`.
ArcGapResult gap_on_arc(const UnitarySpectralData& sd, const Subspace& embed, const Arc& arc,
                        const TolerancePolicy& tol);

/// |(E - conj(lam) T^H)^{-1} + (E - lam T)^{-1} - E|_max for the frozen
/// extension T = V_{C(lam;z0);z0}. Throws SingularOperator if E - lam T is singular.
double continuation_consistency(const ResolventFn& r, Complex lam);
double continuation_consistency(const ComplexMatrix& t, Complex lam, const TolerancePolicy& tol);

}  // namespace isores
