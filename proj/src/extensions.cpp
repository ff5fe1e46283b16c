#include "isores/extensions.hpp"

#include <cmath>

namespace isores {

ContractionOp::ContractionOp(Subspace s, Subspace d, ComplexMatrix m)
    : src(std::move(s)), dst(std::move(d)), matrix(std::move(m)) {
    if (matrix.rows() != static_cast<Eigen::Index>(dst.dim()) ||
        matrix.cols() != static_cast<Eigen::Index>(src.dim())) {
        throw DimensionMismatch("contraction: matrix shape must be dim(dst) x dim(src)");
    }
    if (src.ambient_dim() != dst.ambient_dim()) {
        throw DimensionMismatch("contraction: src and dst live in different ambient spaces");
    }
}

Complex blaschke_factor(Complex a, Complex zeta) {
    return (zeta - a) / (1.0 - std::conj(a) * zeta);
}

ParameterFamily::ParameterFamily(Kind kind, const IsometricOperator& v, Complex z0, const TolerancePolicy& tol)
    : kind_(std::move(kind)),
      z0_(z0),
      src_(defect_source(v, z0, tol)),
      dst_(defect_target(v, z0, tol)),
      match_tol_(tol.eps_eq) {
    if (!(std::abs(z0) < 1.0)) throw PreconditionViolated("parameter family: |z0| must be < 1");
    const auto rows = static_cast<Eigen::Index>(dst_.dim());
    const auto cols = static_cast<Eigen::Index>(src_.dim());
    auto check = [&](const ComplexMatrix& m) {
        if (m.rows() != rows || m.cols() != cols) {
            throw DimensionMismatch("parameter family: matrix must be " + std::to_string(rows) + " x " +
                                    std::to_string(cols) + " (dim N_{1/conj z0} x dim N_{z0})");
        }
        if (!m.allFinite()) throw std::invalid_argument("parameter family: non-finite entries");
    };
    std::visit(
        [&](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Constant>) {
                check(k.matrix);
            } else if constexpr (std::is_same_v<K, Blaschke>) {
                check(k.u0);
                if (!(std::abs(k.a) < 1.0)) throw PreconditionViolated("blaschke family: |a| must be < 1");
            } else {
                if (k.points.empty()) throw std::invalid_argument("table family: no points");
                for (const auto& [z, m] : k.points) check(m);
            }
        },
        kind_);
}

ParameterFamily ParameterFamily::constant(const IsometricOperator& v, Complex z0, ComplexMatrix c,
                                          const TolerancePolicy& tol) {
    return ParameterFamily(Constant{std::move(c)}, v, z0, tol);
}

std::string ParameterFamily::kind_name() const {
    switch (kind_.index()) {
        case 0: return "constant";
        case 1: return "blaschke";
        default: return "table";
    }
}

bool ParameterFamily::evaluable_at(Complex zeta) const {
    if (const auto* t = std::get_if<Table>(&kind_)) {
        for (const auto& p : t->points) {
            if (std::abs(p.first - zeta) <= match_tol_) return true;
        }
        return false;
    }
    if (const auto* b = std::get_if<Blaschke>(&kind_)) {
        return std::abs(1.0 - std::conj(b->a) * zeta) > 0.0;
    }
    return true;
}

ContractionOp ParameterFamily::at(Complex zeta) const {
    return std::visit(
        [&](const auto& k) -> ContractionOp {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Constant>) {
                return ContractionOp(src_, dst_, k.matrix);
            } else if constexpr (std::is_same_v<K, Blaschke>) {
                return ContractionOp(src_, dst_, blaschke_factor(k.a, zeta) * k.u0);
            } else {
                for (const auto& [z, m] : k.points) {
                    if (std::abs(z - zeta) <= match_tol_) return ContractionOp(src_, dst_, m);
                }
                throw NotEvaluable("table family: no tabulated value at the requested point");
            }
        },
        kind_);
}

namespace {

void require_matching(const IsometricOperator& v, Complex z0, const ContractionOp& c, const TolerancePolicy& tol) {
    if (c.src.ambient_dim() != v.ambient_dim()) {
        throw ParameterMismatch("parameter lives in a different ambient space");
    }
    if (!same_subspace(c.src, defect_source(v, z0, tol), tol)) {
        throw ParameterMismatch("parameter domain is not N_{z0}(V)");
    }
    if (!same_subspace(c.dst, defect_target(v, z0, tol), tol)) {
        throw ParameterMismatch("parameter target is not N_{1/conj z0}(V)");
    }
}

}  // namespace

ExtensionOp extend_full(const IsometricOperator& v, Complex z0, const ContractionOp& c, const TolerancePolicy& tol) {
    require_matching(v, z0, c, tol);
    const IsometricOperator vz = cayley(v, z0, tol);
    ComplexMatrix m = vz.partial_matrix() + c.ambient();
    return ExtensionOp{std::move(m), z0, c, ExtensionFlavor::Plus};
}

ExtensionOp orthogonal_extension(const IsometricOperator& v, Complex z0, const ContractionOp& c,
                                 const TolerancePolicy& tol) {
    ExtensionOp plus = extend_full(v, z0, c, tol);
    if (z0 == Complex{0.0, 0.0}) {
        plus.flavor = ExtensionFlavor::Orthogonal;
        return plus;
    }
    const auto n = plus.matrix.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    ComplexMatrix k_inv;
    try {
        k_inv = guarded_inverse(id + z0 * plus.matrix, tol);
    } catch (const SingularOperator& e) {
        throw std::logic_error(std::string("orthogonal_extension: E + z0 V+ singular for a contraction: ") + e.what());
    }
    const double bound = 1.0 / (1.0 - std::abs(z0));
    if (sigma_max(k_inv) > bound + tol.eps_eq) {
        throw std::logic_error("orthogonal_extension: |(E + z0 V+)^{-1}| exceeds 1/(1 - |z0|)");
    }
    ComplexMatrix t = (plus.matrix + std::conj(z0) * id) * k_inv;
    return ExtensionOp{std::move(t), z0, c, ExtensionFlavor::Orthogonal};
}

ContractionOp recover_parameter(const ComplexMatrix& t, const IsometricOperator& v, Complex z0,
                                const TolerancePolicy& tol) {
    if (t.rows() != t.cols() || t.rows() != static_cast<Eigen::Index>(v.ambient_dim())) {
        throw DimensionMismatch("recover_parameter: extension must be n x n");
    }
    const auto n = t.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    ComplexMatrix plus = t;
    if (z0 != Complex{0.0, 0.0}) {
        const ComplexMatrix inv = guarded_inverse(id - z0 * t, tol);
        plus = (t - std::conj(z0) * id) * inv;
    }
    const IsometricOperator vz = cayley(v, z0, tol);
    const double on_m = max_deviation(plus * vz.domain_basis(), vz.image_basis());
    if (on_m > 10.0 * tol.eps_eq) {
        throw ReconstructionMismatch("recover_parameter: reconstructed V+ differs from V_{z0} on M_{z0} by " +
                                     std::to_string(on_m));
    }
    Subspace src = defect_source(v, z0, tol);
    Subspace dst = defect_target(v, z0, tol);
    const ComplexMatrix leak = defect_target_complement(v, z0, tol).basis().adjoint() * plus * src.basis();
    if (max_abs(leak) > 10.0 * tol.eps_eq) {
        throw ReconstructionMismatch("recover_parameter: V+ does not map N_{z0} into N_{1/conj z0}");
    }
    ComplexMatrix c = dst.basis().adjoint() * plus * src.basis();
    return ContractionOp(std::move(src), std::move(dst), std::move(c));
}

ContractionOp recover_parameter(const ExtensionOp& t, const IsometricOperator& v, Complex z0,
                                const TolerancePolicy& tol) {
    if (t.flavor != ExtensionFlavor::Orthogonal) {
        throw std::invalid_argument("recover_parameter: expects an orthogonal extension");
    }
    return recover_parameter(t.matrix, v, z0, tol);
}

FamilyReport validate_family(const ParameterFamily& fam, const IsometricOperator& v,
                             const std::vector<Complex>& grid, const TolerancePolicy& tol) {
    FamilyReport rep;
    auto fail = [&](std::string msg) {
        rep.ok = false;
        rep.violations.push_back(std::move(msg));
    };
    if (!same_subspace(fam.src(), defect_source(v, fam.z0(), tol), tol) ||
        !same_subspace(fam.dst(), defect_target(v, fam.z0(), tol), tol)) {
        fail("family defect spaces do not match the operator at z0");
    }
    auto check_point = [&](Complex z) {
        const double nrm = fam.at(z).norm();
        rep.max_norm = std::max(rep.max_norm, nrm);
        if (nrm > 1.0 + tol.eps_unit) {
            fail("value at (" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) +
                 ") is not a contraction: norm " + std::to_string(nrm));
        }
    };
    if (const auto* t = std::get_if<ParameterFamily::Table>(&fam.kind())) {
        for (const auto& p : t->points) check_point(p.first);
    } else {
        for (Complex z : grid) {
            if (!(std::abs(z) < 1.0)) {
                fail("grid point outside the open unit disk");
                continue;
            }
            check_point(z);
        }
    }
    if (const auto* b = std::get_if<ParameterFamily::Blaschke>(&fam.kind())) {
        if (!is_unitary(b->u0, tol)) fail("blaschke family: U0 is not unitary");
        constexpr int kSamples = 16;
        for (int k = 0; k < kSamples; ++k) {
            const Complex z = std::polar(1.0, 2.0 * kPi * k / kSamples);
            const double dev = std::abs(std::abs(blaschke_factor(b->a, z)) - 1.0);
            if (dev > tol.eps_unit) fail("blaschke family: |b| != 1 on the unit circle");
        }
    }
    return rep;
}

ComplexMatrix random_contraction(std::size_t rows, std::size_t cols, double norm, std::mt19937_64& rng) {
    const auto r = static_cast<Eigen::Index>(rows);
    const auto c = static_cast<Eigen::Index>(cols);
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix m(r, c);
    for (Eigen::Index j = 0; j < c; ++j) {
        for (Eigen::Index i = 0; i < r; ++i) m(i, j) = Complex(g(rng), g(rng));
    }
    const double s = sigma_max(m);
    if (s > 0.0) m *= norm / s;
    return m;
}

}  // namespace isores
