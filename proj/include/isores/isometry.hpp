#pragma once

#include "isores/numerics.hpp"

#include <array>
#include <optional>
#include <random>
#include <string>

namespace isores {

/// A closed isometric operator V on C^n, stored extensionally: column j of
/// `image_basis` is V applied to column j of the orthonormal `domain_basis`.
class IsometricOperator {
public:
    /// Validates shapes and both orthonormality conditions within eps_unit.
    IsometricOperator(ComplexMatrix domain_basis, ComplexMatrix image_basis, const TolerancePolicy& tol);

    static IsometricOperator trusted(ComplexMatrix domain_basis, ComplexMatrix image_basis);

    std::size_t ambient_dim() const { return static_cast<std::size_t>(domain_.rows()); }
    std::size_t domain_dim() const { return static_cast<std::size_t>(domain_.cols()); }
    const ComplexMatrix& domain_basis() const { return domain_; }
    const ComplexMatrix& image_basis() const { return image_; }

    Subspace domain() const { return Subspace::trusted(domain_); }
    /// R(V); the image basis is orthonormal because V is isometric.
    Subspace range() const { return Subspace::trusted(image_); }

    /// The n x n contraction V P_{D(V)}; basis independent, so it is the
    /// representation used for operator comparisons.
    ComplexMatrix partial_matrix() const { return image_ * domain_.adjoint(); }

    /// True when D(V) = C^n.
    bool is_unitary() const { return domain_.cols() == domain_.rows(); }

private:
    IsometricOperator(ComplexMatrix domain_basis, ComplexMatrix image_basis, bool)
        : domain_(std::move(domain_basis)), image_(std::move(image_basis)) {}

    ComplexMatrix domain_;
    ComplexMatrix image_;
};

/// A point at which defect subspaces are taken: a finite complex number or
/// the distinguished point at infinity.
struct DefectPoint {
    std::optional<Complex> value;  // empty means INF

    static DefectPoint at(Complex z) { return DefectPoint{z}; }
    static DefectPoint infinity() { return DefectPoint{std::nullopt}; }
    bool is_infinity() const { return !value.has_value(); }
};

/// M_zeta = (E - zeta V) D(V) and N_zeta = H (-) M_zeta.
struct DefectPair {
    Subspace m;
    Subspace n;
    DefectPoint zeta;
};

DefectPair defect_spaces(const IsometricOperator& v, DefectPoint zeta, const TolerancePolicy& tol);
DefectPair defect_spaces(const IsometricOperator& v, Complex zeta, const TolerancePolicy& tol);

/// N_{z0} and N_{1/conj(z0)} for |z0| < 1 (for z0 = 0 these are N_0 and N_inf).
/// Bases are produced by the deterministic orthonormalizer, so repeated calls
/// give identical matrices.
Subspace defect_source(const IsometricOperator& v, Complex z0, const TolerancePolicy& tol);
Subspace defect_target(const IsometricOperator& v, Complex z0, const TolerancePolicy& tol);
/// M_{1/conj(z0)} = R(V_{z0}); M_inf = R(V) when z0 = 0.
Subspace defect_target_complement(const IsometricOperator& v, Complex z0, const TolerancePolicy& tol);

struct RegularTypeResult {
    bool is_regular;
    double sigma_min;  // of (image_basis - z * domain_basis); +inf for D(V) = {0}
};

RegularTypeResult regular_type(const IsometricOperator& v, Complex z, const TolerancePolicy& tol);

enum class Decomposition : std::size_t {
    DomainPlusN = 0,          // D(V) + N_zeta = H
    RangePlusN = 1,           // R(V) + N_zeta = H
    DomainComplPlusM = 2,     // (H - D(V)) + M_zeta = H
    RangeComplPlusM = 3,      // (H - R(V)) + M_zeta = H
};

struct DecompositionReport {
    std::array<bool, 4> direct{};
    std::array<bool, 4> spanning{};
    std::array<double, 4> directness{};  // sigma_min of the concatenated bases

    double directness_measure() const;  // minimum over the four
    bool all_valid() const;
};

/// Requires |zeta| = 1 and conj(zeta) = zeta^{-1} of regular type.
DecompositionReport decompositions(const IsometricOperator& v, Complex zeta, const TolerancePolicy& tol);

/// Max over an orthonormal basis f of N_zeta of
///   |V P_{M0} f - conj(zeta) P_{Minf} f|,  | |P_{M0} f| - |P_{Minf} f| |,
///   | |P_{N0} f| - |P_{Ninf} f| |.
double lemma51_identity(const IsometricOperator& v, Complex zeta, const TolerancePolicy& tol);

// ---------------------------------------------------------------------------
// Random instances

/// Haar-distributed n x n unitary.
ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng);

/// V = U restricted to a random d-dimensional subspace, U Haar. With
/// `coordinate_domain` the domain is spanned by d distinct standard basis
/// vectors, otherwise it is spanned by d columns of a second Haar unitary.
IsometricOperator random_isometric(std::size_t n, std::size_t d, std::mt19937_64& rng,
                                   bool coordinate_domain = true);

/// An isometric operator with a planted eigenvector: D(V) contains an
/// eigenvector of a Haar-conjugated diagonal unitary with eigenvalue `mu`.
IsometricOperator random_isometric_with_eigenvalue(std::size_t n, std::size_t d, Complex mu,
                                                   std::mt19937_64& rng);

Complex random_unimodular(std::mt19937_64& rng);
/// Uniform in the disk of the given radius.
Complex random_in_disk(std::mt19937_64& rng, double radius);

}  // namespace isores
