#pragma once

#include "isores/transforms.hpp"

#include <variant>
#include <vector>

namespace isores {

class ParameterMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ReconstructionMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotEvaluable : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A bounded operator src -> dst given by its matrix in the stored bases; the
/// ambient action on C^n is dst.basis * matrix * src.basis^H.
struct ContractionOp {
    Subspace src;
    Subspace dst;
    ComplexMatrix matrix;  // dim(dst) x dim(src)

    ContractionOp(Subspace src, Subspace dst, ComplexMatrix matrix);

    ComplexMatrix ambient() const { return dst.basis() * matrix * src.basis().adjoint(); }
    double norm() const { return sigma_max(matrix); }
    bool is_contraction(const TolerancePolicy& tol) const { return norm() <= 1.0 + tol.eps_unit; }
    /// Isometric from src onto the whole of dst.
    bool is_unitary(const TolerancePolicy& tol) const { return isores::is_unitary(matrix, tol); }
};

/// The parameter space of the resolvent formulas based at z0: functions
/// zeta -> C(zeta) with values contractions N_{z0} -> N_{1/conj(z0)}.
class ParameterFamily {
public:
    struct Constant {
        ComplexMatrix matrix;
    };
    /// zeta -> b(zeta) U0 with b(zeta) = (zeta - a) / (1 - conj(a) zeta).
    struct Blaschke {
        Complex a;
        ComplexMatrix u0;
    };
    /// Values known only at the listed points; no interpolation.
    struct Table {
        std::vector<std::pair<Complex, ComplexMatrix>> points;
    };
    using Kind = std::variant<Constant, Blaschke, Table>;

    /// src/dst are set to N_{z0}(v) and N_{1/conj(z0)}(v); matrix shapes are checked.
    ParameterFamily(Kind kind, const IsometricOperator& v, Complex z0, const TolerancePolicy& tol);

    static ParameterFamily constant(const IsometricOperator& v, Complex z0, ComplexMatrix c,
                                    const TolerancePolicy& tol);

    const Kind& kind() const { return kind_; }
    Complex z0() const { return z0_; }
    const Subspace& src() const { return src_; }
    const Subspace& dst() const { return dst_; }
    bool is_constant() const { return std::holds_alternative<Constant>(kind_); }
    bool is_tabulated() const { return std::holds_alternative<Table>(kind_); }
    std::string kind_name() const;

    /// Value at zeta; throws NotEvaluable off-grid for tabulated families.
    ContractionOp at(Complex zeta) const;
    bool evaluable_at(Complex zeta) const;

private:
    Kind kind_;
    Complex z0_;
    Subspace src_;
    Subspace dst_;
    double match_tol_;
};

Complex blaschke_factor(Complex a, Complex zeta);

enum class ExtensionFlavor { Plus, Orthogonal };

struct ExtensionOp {
    ComplexMatrix matrix;  // n x n
    Complex z0;
    ContractionOp parameter;
    ExtensionFlavor flavor;
};

/// V+_{z0;C} = V_{z0} (+) C as an n x n contraction.
ExtensionOp extend_full(const IsometricOperator& v, Complex z0, const ContractionOp& c,
                        const TolerancePolicy& tol);

/// The orthogonal extension V_{C;z0} = (V+ + conj(z0) E)(E + z0 V+)^{-1}.
/// Also asserts |(E + z0 V+)^{-1}| <= 1/(1 - |z0|).
ExtensionOp orthogonal_extension(const IsometricOperator& v, Complex z0, const ContractionOp& c,
                                 const TolerancePolicy& tol);

/// Recovers C from an orthogonal extension T of V at z0: V+ = (T - conj(z0) E)(E - z0 T)^{-1}
/// restricted to N_{z0}. Throws ReconstructionMismatch when V+ does not agree
/// with V_{z0} on M_{z0}.
ContractionOp recover_parameter(const ComplexMatrix& t, const IsometricOperator& v, Complex z0,
                                const TolerancePolicy& tol);
ContractionOp recover_parameter(const ExtensionOp& t, const IsometricOperator& v, Complex z0,
                                const TolerancePolicy& tol);

struct FamilyReport {
    bool ok = true;
    std::vector<std::string> violations;
    double max_norm = 0.0;
};

/// Per-point contractivity on `grid` (tabulated families: at their own points),
/// defect-space agreement with v, and for Blaschke families |b| = 1 on sampled
/// circle points and a unitary U0.
FamilyReport validate_family(const ParameterFamily& fam, const IsometricOperator& v,
                             const std::vector<Complex>& grid, const TolerancePolicy& tol);

/// Random matrices used by property suites.
ComplexMatrix random_contraction(std::size_t rows, std::size_t cols, double norm, std::mt19937_64& rng);

}  // namespace isores
