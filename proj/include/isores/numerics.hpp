#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace isores {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

/// Thresholds shared by every rank, equality and unitarity decision.
struct TolerancePolicy {
    double eps_rank = 1e-9;  // singular values at or below count as zero
    double eps_eq = 1e-8;    // max entrywise deviation for operator equality
    double eps_unit = 1e-8;  // allowed defect from isometry / unitarity

    /// Throws std::invalid_argument unless every field lies in (0, 1e-3).
    void validate() const;
};

// ---------------------------------------------------------------------------
// Errors

/// A "(.)^{-1}" in some formula was requested at a point where the operator
/// is (numerically) not invertible.
class SingularOperator : public std::runtime_error {
public:
    SingularOperator(const std::string& what, double sigma_min)
        : std::runtime_error(what + " (sigma_min = " + std::to_string(sigma_min) + ")"),
          sigma_min_(sigma_min) {}
    double sigma_min() const noexcept { return sigma_min_; }

private:
    double sigma_min_;
};

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class PreconditionViolated : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// Subspace

/// A closed subspace of C^n represented by an orthonormal basis (n x k, k may be 0).
class Subspace {
public:
    /// Checks orthonormality within tol.eps_unit; throws std::invalid_argument otherwise.
    Subspace(ComplexMatrix basis, const TolerancePolicy& tol);

    static Subspace zero(std::size_t ambient_dim);
    static Subspace full(std::size_t ambient_dim);
    /// Skips the orthonormality check; for bases produced by this library.
    static Subspace trusted(ComplexMatrix basis) { return Subspace(std::move(basis)); }

    std::size_t ambient_dim() const { return static_cast<std::size_t>(basis_.rows()); }
    std::size_t dim() const { return static_cast<std::size_t>(basis_.cols()); }
    const ComplexMatrix& basis() const { return basis_; }

private:
    explicit Subspace(ComplexMatrix basis) : basis_(std::move(basis)) {}

    ComplexMatrix basis_;
};

// ---------------------------------------------------------------------------
// Unitary spectral data

struct SpectralAtom {
    Complex lambda;            // unimodular
    double angle;              // in [0, 2*pi)
    ComplexMatrix projector;   // orthogonal projector onto the eigenspace
};

/// Eigen-decomposition of a unitary matrix into unimodular atoms; atoms are
/// sorted by strictly increasing angle and their projectors sum to I.
struct UnitarySpectralData {
    std::vector<SpectralAtom> atoms;
};

// ---------------------------------------------------------------------------
// Operations

/// Modified Gram-Schmidt in input order (with one reorthogonalization pass).
/// A vector whose residual norm is <= eps_rank * max(1, |v|) is dropped.
Subspace orthonormalize(std::span<const ComplexVector> vectors, std::size_t ambient_dim,
                        const TolerancePolicy& tol);

/// Same as above with the columns of `columns` as input vectors.
Subspace orthonormalize_columns(const ComplexMatrix& columns, const TolerancePolicy& tol);

/// Orthonormal basis of the complement. Built by projecting the standard basis
/// vectors onto the complement and accepting them greedily, largest residual
/// first (ties broken by lowest index), so the result is deterministic.
Subspace orthogonal_complement(const Subspace& s, const TolerancePolicy& tol);

ComplexMatrix projector(const Subspace& s);

/// Largest principal angle between two subspaces; pi/2 when dimensions differ.
double largest_principal_angle(const Subspace& a, const Subspace& b);

/// Subspaces are equal when they have the same dimension and their
/// projectors agree entrywise within eps_eq.
bool same_subspace(const Subspace& a, const Subspace& b, const TolerancePolicy& tol);

UnitarySpectralData unitary_eig(const ComplexMatrix& u, const TolerancePolicy& tol);

ComplexMatrix guarded_inverse(const ComplexMatrix& m, const TolerancePolicy& tol);

// ---------------------------------------------------------------------------
// Small helpers used throughout

/// Smallest singular value; +inf for a matrix with no columns, 0 for a
/// matrix with more columns than rows.
double sigma_min(const ComplexMatrix& m);
double sigma_max(const ComplexMatrix& m);

inline double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// max |a - b| entrywise; +inf on shape mismatch.
double max_deviation(const ComplexMatrix& a, const ComplexMatrix& b);

/// max |m^H m - I| entrywise.
double isometry_defect(const ComplexMatrix& m);

bool is_unitary(const ComplexMatrix& m, const TolerancePolicy& tol);

/// Angle of a nonzero complex number mapped into [0, 2*pi).
double angle_of(Complex z);

/// Distance between two angles measured along the circle.
double circular_distance(double a, double b);

}  // namespace isores
