#include "isores/transforms.hpp"

#include <cmath>

namespace isores {

namespace {

// Maps each column a_j of `from` to b_j, returning the operator with an
// orthonormal domain basis spanning the columns of `from`.
IsometricOperator rebase(const ComplexMatrix& from, const ComplexMatrix& to, const TolerancePolicy& tol) {
    Subspace q = orthonormalize_columns(from, tol);
    if (static_cast<Eigen::Index>(q.dim()) != from.cols()) {
        throw SingularOperator("cayley: (E - zV) is not injective on D(V)", 0.0);
    }
    const ComplexMatrix r = q.basis().adjoint() * from;  // from = Q R
    const ComplexMatrix r_inv = guarded_inverse(r, tol);
    ComplexMatrix img = to * r_inv;
    return IsometricOperator::trusted(q.basis(), std::move(img));
}

void require_in_disk(Complex z, const char* where) {
    if (!(std::abs(z) < 1.0)) throw PreconditionViolated(std::string(where) + ": |z| must be < 1");
}

}  // namespace

IsometricOperator cayley(const IsometricOperator& v, Complex z, const TolerancePolicy& tol) {
    require_in_disk(z, "cayley");
    const ComplexMatrix& d = v.domain_basis();
    const ComplexMatrix& y = v.image_basis();
    return rebase(d - z * y, y - std::conj(z) * d, tol);
}

IsometricOperator inverse_cayley(const IsometricOperator& w, Complex z, const TolerancePolicy& tol) {
    require_in_disk(z, "inverse_cayley");
    return cayley(w, -z, tol);
}

MoebiusMap::MoebiusMap(Complex z0, const TolerancePolicy& tol) : z0_(z0), tol_(tol) {
    if (!(std::abs(z0) < 1.0 - tol.eps_unit)) {
        throw PreconditionViolated("MoebiusMap: |z0| must be < 1");
    }
}

Complex MoebiusMap::t(Complex u) const {
    const Complex den = 1.0 - z0_ * u;
    if (std::abs(den) <= tol_.eps_rank) throw ExcludedPoint("MoebiusMap::t: evaluation at the pole 1/z0");
    return (u - std::conj(z0_)) / den;
}

Complex MoebiusMap::u(Complex t) const {
    const Complex den = 1.0 + z0_ * t;
    if (std::abs(den) <= tol_.eps_rank) throw ExcludedPoint("MoebiusMap::u: evaluation at the pole -1/z0");
    return (t + std::conj(z0_)) / den;
}

MoebiusMap scalar_maps(Complex z0, const TolerancePolicy& tol) {
    return MoebiusMap(z0, tol);
}

double disk_bound(Complex z0, Complex z0p) {
    if (!(std::abs(z0) < 1.0 && std::abs(z0p) < 1.0)) {
        throw PreconditionViolated("disk_bound: both points must lie in the unit disk");
    }
    const double b = std::abs((z0 - z0p) / (1.0 - z0p * std::conj(z0)));
    if (!(b < 1.0)) throw std::logic_error("disk_bound: image left the unit disk");
    return b;
}

Prop21Result prop21_check(const IsometricOperator& v, Complex z0, Complex zeta, const TolerancePolicy& tol) {
    require_in_disk(z0, "prop21_check");
    if (std::abs(zeta) <= tol.eps_rank) throw ExcludedPoint("prop21_check: zeta = 0 is excluded");
    if (std::abs(zeta - z0) <= tol.eps_rank) throw ExcludedPoint("prop21_check: zeta = z0 is excluded");
    const auto ri = regular_type(v, 1.0 / zeta, tol);
    const Complex mapped = (1.0 - zeta * std::conj(z0)) / (zeta - z0);
    const auto rii = regular_type(cayley(v, z0, tol), mapped, tol);
    return {ri.is_regular, rii.is_regular, ri.sigma_min, rii.sigma_min};
}

Complex inner_resolvent_point(Complex z0, Complex u_tilde) {
    return (u_tilde - z0) / (1.0 - std::conj(z0) * u_tilde);
}

ComplexMatrix relate_resolvents(const ComplexMatrix& r_inner, Complex z0, Complex u_tilde,
                                const TolerancePolicy& tol) {
    if (!(std::abs(z0) < 1.0)) throw PreconditionViolated("relate_resolvents: |z0| must be < 1");
    if (std::abs(z0) <= tol.eps_rank) {
        throw ExcludedPoint("relate_resolvents: z0 = 0 is handled by Chumakin's formula directly");
    }
    if (std::abs(u_tilde) <= tol.eps_rank) throw ExcludedPoint("relate_resolvents: u = 0 is excluded");
    if (std::abs(u_tilde - z0) <= tol.eps_rank) throw ExcludedPoint("relate_resolvents: u = z0 is excluded");
    const Complex den = 1.0 - std::conj(z0) * u_tilde;
    if (std::abs(den) <= tol.eps_rank) throw ExcludedPoint("relate_resolvents: u = 1/conj(z0) is excluded");
    if (r_inner.rows() != r_inner.cols()) throw DimensionMismatch("relate_resolvents: r_inner not square");

    const double w = 1.0 - std::norm(z0);
    const Complex a = -z0 / (u_tilde - z0);
    const Complex b = u_tilde * w / ((u_tilde - z0) * den);
    const auto n = r_inner.rows();
    return a * ComplexMatrix::Identity(n, n) + b * r_inner;
}

}  // namespace isores
