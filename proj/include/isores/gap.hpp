#pragma once

#include "isores/resolvents.hpp"

#include <optional>

namespace isores {

/// W_{lam;z0} = s Q S^{-1} with S = P_{N_{z0}}|N_lam, Q = P_{N_{1/conj z0}}|N_lam
/// in the stored bases and s = (1 - conj(z0) lam) / (lam - z0) (= conj(lam) at z0 = 0).
struct GapOperators {
    ComplexMatrix s_op;   // dim N_{z0} x dim N_lam
    ComplexMatrix q_op;   // dim N_{1/conj z0} x dim N_lam
    ContractionOp w_op;   // N_{z0} -> N_{1/conj z0}
    Subspace n_lam;
    Complex scalar;
};

/// Requires |lam| = 1, lam != z0 and 1/lam of regular type for v; throws
/// PreconditionViolated otherwise or when S or Q is singular.
GapOperators build_W(const IsometricOperator& v, Complex lam, Complex z0, const TolerancePolicy& tol);

struct EigenCriterion {
    bool is_eigenvalue;
    double sigma;                        // sigma_min(C - W) as an injectivity measure
    std::optional<ComplexVector> witness;  // f in N_lam with V+ f = s f
    double witness_residual = 0.0;       // |V+ f - s f|, f normalized
};

/// s is an eigenvalue of V+_{z0;C} = V_{z0} (+) C iff C - W_{lam;z0} has a kernel;
/// at z0 = 0 this is conj(lam) as an eigenvalue of V (+) C.
EigenCriterion eigen_criterion(const IsometricOperator& v, const ContractionOp& c, Complex lam,
                               const TolerancePolicy& tol, Complex z0 = Complex{0.0, 0.0});

struct CriteriaReport {
    EigenCriterion eigen;
    bool surjective;       // cond_CW_onto && cond_PM
    bool cond_CW_onto;     // (C - W) N_{z0} = N_{1/conj z0}
    bool cond_PM;          // P_{M_{1/conj z0}} M_lam = M_{1/conj z0}
    bool crosscheck_rank;  // V+ - s E has full rank
    double sigma_CW_onto;
    double sigma_PM;
    double sigma_direct;
};

CriteriaReport surjectivity_criterion(const IsometricOperator& v, const ContractionOp& c, Complex lam,
                                      const TolerancePolicy& tol, Complex z0 = Complex{0.0, 0.0});

struct ScanOptions {
    /// Tabulated families: bound on |C(lam_j) - C(lam_{j-1})| between successive samples.
    double continuity_modulus = 0.5;
};

enum class ContinuityCertification { Structural, Sampled };

struct SampleVerdict {
    std::size_t index;
    double angle;
    Complex lambda;
    bool cond1;
    double cond1_deviation;  // 0 for structural certification
    bool cond2;
    double cond2_defect;     // |C^H C - I|_max, +inf when C is not square
    bool cond3;              // direct route: E - lam T invertible
    double sigma_direct;
    bool cond3_w;            // C - W invertible and onto, projection condition holds
    CriteriaReport w_route;
    bool routes_agree;
    bool pass;
};

struct GapReport {
    Arc arc;
    Complex z0;
    std::string family_kind;
    ContinuityCertification continuity;
    std::vector<SampleVerdict> samples;
    std::vector<std::size_t> witnesses;  // indices of failing samples
    std::size_t route_disagreements = 0;
    bool certified = false;

    std::string verdict() const { return certified ? "GAP_CERTIFIED" : "NOT_CERTIFIED"; }
};

/// Samples lam_j = e^{i t_j} equispaced inside the open arc and checks
/// continuity of the family, unitarity of C(lam_j) from N_{z0} onto
/// N_{1/conj z0}, and invertibility of E - lam_j V_{C(lam_j);z0}.
/// Throws PreconditionViolated naming the sample when 1/lam_j is not of
/// regular type or the family has no value at lam_j.
GapReport arc_scan(const IsometricOperator& v, const ParameterFamily& fam, const Arc& arc,
                   std::size_t n_samples, const TolerancePolicy& tol, const ScanOptions& options = {});

}  // namespace isores
