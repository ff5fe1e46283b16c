#include "isores/resolvents.hpp"

#include <cmath>

namespace isores {

void Arc::validate() const {
    if (!std::isfinite(t1) || !std::isfinite(t2)) throw std::invalid_argument("arc endpoints must be finite");
    if (!(t1 < t2)) throw std::invalid_argument("arc requires t1 < t2");
    if (t2 - t1 > 2.0 * kPi) throw std::invalid_argument("arc longer than the full circle");
}

bool Arc::contains(double angle) const {
    const double offset = std::fmod(std::fmod(angle - t1, 2.0 * kPi) + 2.0 * kPi, 2.0 * kPi);
    return offset > 0.0 && offset < t2 - t1;
}

std::vector<double> Arc::sample_angles(std::size_t n) const {
    std::vector<double> out;
    out.reserve(n);
    const double step = (t2 - t1) / static_cast<double>(n + 1);
    for (std::size_t k = 1; k <= n; ++k) out.push_back(t1 + step * static_cast<double>(k));
    return out;
}

ResolventFn::ResolventFn(IsometricOperator v, ParameterFamily fam, TolerancePolicy tol)
    : v_(std::move(v)), fam_(std::move(fam)), tol_(tol) {
    if (!same_subspace(fam_.src(), defect_source(v_, fam_.z0(), tol_), tol_) ||
        !same_subspace(fam_.dst(), defect_target(v_, fam_.z0(), tol_), tol_)) {
        throw ParameterMismatch("resolvent: family defect spaces do not match the operator");
    }
}

ComplexMatrix ResolventFn::frozen_extension(Complex zeta) const {
    return orthogonal_extension(v_, fam_.z0(), fam_.at(zeta), tol_).matrix;
}

ComplexMatrix ResolventFn::operator()(Complex z) const {
    const double r = std::abs(z);
    if (r < 1.0) return inin(v_, fam_, z, tol_);
    if (r > 1.0) return exterior_value(*this, z);
    throw std::domain_error("resolvent: the unit circle is not in the domain of the formulas");
}

namespace {

ComplexMatrix resolvent_of(const ComplexMatrix& t, Complex zeta, const TolerancePolicy& tol) {
    const auto n = t.rows();
    return guarded_inverse(ComplexMatrix::Identity(n, n) - zeta * t, tol);
}

}  // namespace

ComplexMatrix chumakin(const IsometricOperator& v, const ParameterFamily& fam, Complex zeta,
                       const TolerancePolicy& tol) {
    if (fam.z0() != Complex{0.0, 0.0}) {
        throw PreconditionViolated("chumakin: family must be based at z0 = 0");
    }
    if (!(std::abs(zeta) < 1.0)) throw PreconditionViolated("chumakin: |zeta| must be < 1");
    const ExtensionOp t = extend_full(v, Complex{0.0, 0.0}, fam.at(zeta), tol);
    return resolvent_of(t.matrix, zeta, tol);
}

ComplexMatrix inin(const IsometricOperator& v, const ParameterFamily& fam, Complex zeta,
                   const TolerancePolicy& tol) {
    if (!(std::abs(zeta) < 1.0)) throw PreconditionViolated("inin: |zeta| must be < 1");
    if (fam.z0() == Complex{0.0, 0.0}) return chumakin(v, fam, zeta, tol);
    const ExtensionOp t = orthogonal_extension(v, fam.z0(), fam.at(zeta), tol);
    return resolvent_of(t.matrix, zeta, tol);
}

ComplexMatrix exterior_value(const ResolventFn& r, Complex z) {
    if (!(std::abs(z) > 1.0)) throw PreconditionViolated("exterior_value: |z| must be > 1");
    const ComplexMatrix inner = r(1.0 / std::conj(z));
    const auto n = inner.rows();
    return ComplexMatrix::Identity(n, n) - inner.adjoint();
}

UnitarySpectralData spectral_data(const ComplexMatrix& u, const TolerancePolicy& tol) {
    return unitary_eig(u, tol);
}

double verify_inversion(const ComplexMatrix& u, const std::vector<InversionSample>& samples,
                        const TolerancePolicy& tol) {
    const UnitarySpectralData sd = unitary_eig(u, tol);
    double worst = 0.0;
    for (const auto& s : samples) {
        if (!(std::abs(s.z) < 1.0)) throw PreconditionViolated("verify_inversion: sample z must be in the disk");
        const ComplexMatrix r = resolvent_of(u, s.z, tol);
        // (x, y) = y^H x
        const Complex lhs = s.g.dot(r * s.h);
        Complex rhs{0.0, 0.0};
        for (const auto& atom : sd.atoms) {
            rhs += s.g.dot(atom.projector * s.h) / (1.0 - s.z * atom.lambda);
        }
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

double herglotz_check(const ResolventFn& r, const std::vector<Complex>& grid,
                      const std::vector<ComplexVector>& vectors) {
    double worst = std::numeric_limits<double>::infinity();
    for (Complex z : grid) {
        if (!(std::abs(z) < 1.0)) throw PreconditionViolated("herglotz_check: grid must lie inside the disk");
        const ComplexMatrix rz = r(z);
        for (const auto& h : vectors) {
            const Complex f = h.dot(rz * h) - 0.5 * h.squaredNorm();
            worst = std::min(worst, f.real());
        }
    }
    return worst;
}

ArcGapResult gap_on_arc(const UnitarySpectralData& sd, const Subspace& embed, const Arc& arc,
                        const TolerancePolicy& tol) {
    arc.validate();
    const ComplexMatrix pe = projector(embed);
    ArcGapResult out{true, {}};
    for (std::size_t k = 0; k < sd.atoms.size(); ++k) {
        const auto& atom = sd.atoms[k];
        if (!arc.contains(atom.angle)) continue;
        if (max_abs(pe * atom.projector * pe) > tol.eps_eq) {
            out.gap = false;
            out.witnesses.push_back(k);
        }
    }
    return out;
}

double continuation_consistency(const ComplexMatrix& t, Complex lam, const TolerancePolicy& tol) {
    const auto n = t.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const ComplexMatrix inner = resolvent_of(t, lam, tol);
    const ComplexMatrix outer = guarded_inverse(id - std::conj(lam) * t.adjoint(), tol);
    return max_abs(outer + inner - id);
}

double continuation_consistency(const ResolventFn& r, Complex lam) {
    const auto& tol = r.tolerance();
    if (std::abs(std::abs(lam) - 1.0) > tol.eps_unit) {
        throw PreconditionViolated("continuation_consistency: lambda must be unimodular");
    }
    return continuation_consistency(r.frozen_extension(lam), lam, tol);
}

}  // namespace isores
