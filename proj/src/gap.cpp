#include "isores/gap.hpp"

#include <cmath>

namespace isores {

namespace {

std::string sample_tag(std::size_t j, double angle) {
    return "sample " + std::to_string(j) + " (angle " + std::to_string(angle) + ")";
}

void require_unimodular(Complex lam, const TolerancePolicy& tol, const char* where) {
    if (std::abs(std::abs(lam) - 1.0) > tol.eps_unit) {
        throw PreconditionViolated(std::string(where) + ": lambda must be unimodular");
    }
}

Subspace m_lambda(const IsometricOperator& v, Complex lam, const TolerancePolicy& tol) {
    return orthonormalize_columns(v.domain_basis() - lam * v.image_basis(), tol);
}

// C in the bases of defect_source / defect_target at z0.
ComplexMatrix in_standard_bases(const IsometricOperator& v, const ContractionOp& c, Complex z0,
                                const TolerancePolicy& tol, const Subspace& bs, const Subspace& bd) {
    if (c.src.ambient_dim() != v.ambient_dim()) throw ParameterMismatch("parameter lives in a different space");
    if (!same_subspace(c.src, bs, tol) || !same_subspace(c.dst, bd, tol)) {
        throw ParameterMismatch("parameter is not a map N_{z0} -> N_{1/conj z0} at z0 = (" +
                                std::to_string(z0.real()) + ", " + std::to_string(z0.imag()) + ")");
    }
    return bd.basis().adjoint() * c.ambient() * bs.basis();
}

ComplexMatrix plus_extension(const IsometricOperator& v, const ContractionOp& c, Complex z0,
                             const TolerancePolicy& tol) {
    return cayley(v, z0, tol).partial_matrix() + c.ambient();
}

}  // namespace

GapOperators build_W(const IsometricOperator& v, Complex lam, Complex z0, const TolerancePolicy& tol) {
    require_unimodular(lam, tol, "build_W");
    if (!(std::abs(z0) < 1.0)) throw PreconditionViolated("build_W: |z0| must be < 1");
    const auto rt = regular_type(v, 1.0 / lam, tol);
    if (!rt.is_regular) {
        throw PreconditionViolated("build_W: 1/lambda is not of regular type (sigma_min = " +
                                   std::to_string(rt.sigma_min) + ")");
    }
    Subspace n_lam = orthogonal_complement(m_lambda(v, lam, tol), tol);
    const Subspace bs = defect_source(v, z0, tol);
    const Subspace bd = defect_target(v, z0, tol);
    ComplexMatrix s = bs.basis().adjoint() * n_lam.basis();
    ComplexMatrix q = bd.basis().adjoint() * n_lam.basis();
    if (s.rows() != s.cols() || q.rows() != q.cols()) {
        throw PreconditionViolated("build_W: defect dimensions differ from dim N_lambda");
    }
    const double ss = sigma_min(s);
    const double sq = sigma_min(q);
    if (ss <= tol.eps_rank || sq <= tol.eps_rank) {
        throw PreconditionViolated("build_W: S or Q singular (sigma_min " + std::to_string(ss) + ", " +
                                   std::to_string(sq) + ")");
    }
    const Complex scalar = (1.0 - std::conj(z0) * lam) / (lam - z0);
    ComplexMatrix w = scalar * q * guarded_inverse(s, tol);
    ContractionOp w_op(bs, bd, std::move(w));
    return GapOperators{std::move(s), std::move(q), std::move(w_op), std::move(n_lam), scalar};
}

EigenCriterion eigen_criterion(const IsometricOperator& v, const ContractionOp& c, Complex lam,
                               const TolerancePolicy& tol, Complex z0) {
    const GapOperators g = build_W(v, lam, z0, tol);
    const ComplexMatrix cm = in_standard_bases(v, c, z0, tol, g.w_op.src, g.w_op.dst);
    const ComplexMatrix k = cm - g.w_op.matrix;
    EigenCriterion out{false, sigma_min(k), std::nullopt, 0.0};
    out.is_eigenvalue = out.sigma <= tol.eps_rank;
    if (out.is_eigenvalue) {
        Eigen::JacobiSVD<ComplexMatrix> svd(k, Eigen::ComputeFullV);
        const ComplexVector kernel = svd.matrixV().col(k.cols() - 1);
        ComplexVector f = g.n_lam.basis() * guarded_inverse(g.s_op, tol) * kernel;
        f.normalize();
        const ComplexMatrix vp = plus_extension(v, c, z0, tol);
        out.witness_residual = (vp * f - g.scalar * f).norm();
        out.witness = std::move(f);
    }
    return out;
}

CriteriaReport surjectivity_criterion(const IsometricOperator& v, const ContractionOp& c, Complex lam,
                                      const TolerancePolicy& tol, Complex z0) {
    const GapOperators g = build_W(v, lam, z0, tol);
    const ComplexMatrix cm = in_standard_bases(v, c, z0, tol, g.w_op.src, g.w_op.dst);
    const ComplexMatrix k = cm - g.w_op.matrix;

    CriteriaReport out{};
    out.eigen = eigen_criterion(v, c, lam, tol, z0);
    // onto <=> full row rank <=> K^H injective
    out.sigma_CW_onto = sigma_min(k.adjoint());
    out.cond_CW_onto = out.sigma_CW_onto > tol.eps_rank;

    const ComplexMatrix pm = defect_target_complement(v, z0, tol).basis().adjoint() * m_lambda(v, lam, tol).basis();
    out.sigma_PM = sigma_min(pm.adjoint());
    out.cond_PM = out.sigma_PM > tol.eps_rank;
    out.surjective = out.cond_CW_onto && out.cond_PM;

    const ComplexMatrix vp = plus_extension(v, c, z0, tol);
    const auto n = vp.rows();
    out.sigma_direct = sigma_min(vp - g.scalar * ComplexMatrix::Identity(n, n));
    out.crosscheck_rank = out.sigma_direct > tol.eps_rank;
    return out;
}

GapReport arc_scan(const IsometricOperator& v, const ParameterFamily& fam, const Arc& arc, std::size_t n_samples,
                   const TolerancePolicy& tol, const ScanOptions& options) {
    arc.validate();
    if (n_samples == 0) throw std::invalid_argument("arc_scan: n_samples must be positive");
    const Complex z0 = fam.z0();
    if (!same_subspace(fam.src(), defect_source(v, z0, tol), tol) ||
        !same_subspace(fam.dst(), defect_target(v, z0, tol), tol)) {
        throw ParameterMismatch("arc_scan: family defect spaces do not match the operator");
    }

    GapReport rep;
    rep.arc = arc;
    rep.z0 = z0;
    rep.family_kind = fam.kind_name();
    rep.continuity = fam.is_tabulated() ? ContinuityCertification::Sampled : ContinuityCertification::Structural;

    const auto angles = arc.sample_angles(n_samples);
    const auto n = static_cast<Eigen::Index>(v.ambient_dim());
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    std::optional<ComplexMatrix> prev;

    for (std::size_t j = 0; j < angles.size(); ++j) {
        const double t = angles[j];
        const Complex lam = std::polar(1.0, t);
        const auto rt = regular_type(v, 1.0 / lam, tol);
        if (!rt.is_regular) {
            throw PreconditionViolated("arc_scan: " + sample_tag(j, t) + ": 1/lambda is not of regular type");
        }
        if (!fam.evaluable_at(lam)) {
            throw PreconditionViolated("arc_scan: " + sample_tag(j, t) + ": family has no value at lambda");
        }
        const ContractionOp c = fam.at(lam);

        SampleVerdict s{};
        s.index = j;
        s.angle = t;
        s.lambda = lam;

        if (rep.continuity == ContinuityCertification::Sampled && prev) {
            s.cond1_deviation = sigma_max(c.matrix - *prev);
        }
        s.cond1 = s.cond1_deviation <= options.continuity_modulus;
        prev = c.matrix;

        s.cond2_defect = c.matrix.rows() == c.matrix.cols() ? isometry_defect(c.matrix)
                                                            : std::numeric_limits<double>::infinity();
        s.cond2 = s.cond2_defect <= tol.eps_unit;

        const ComplexMatrix t_ext = orthogonal_extension(v, z0, c, tol).matrix;
        s.sigma_direct = sigma_min(id - lam * t_ext);
        s.cond3 = s.sigma_direct > tol.eps_rank;

        s.w_route = surjectivity_criterion(v, c, lam, tol, z0);
        s.cond3_w = !s.w_route.eigen.is_eigenvalue && s.w_route.cond_CW_onto && s.w_route.cond_PM;
        s.routes_agree = s.cond3 == s.cond3_w;
        if (!s.routes_agree) ++rep.route_disagreements;

        // A disagreement between the routes is treated as a failure.
        s.pass = s.cond1 && s.cond2 && s.cond3 && s.cond3_w;
        if (!s.pass) rep.witnesses.push_back(j);
        rep.samples.push_back(std::move(s));
    }
    rep.certified = rep.witnesses.empty();
    return rep;
}

}  // namespace isores
