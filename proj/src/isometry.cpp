#include "isores/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace isores {

IsometricOperator::IsometricOperator(ComplexMatrix domain_basis, ComplexMatrix image_basis,
                                     const TolerancePolicy& tol)
    : domain_(std::move(domain_basis)), image_(std::move(image_basis)) {
    if (domain_.rows() != image_.rows() || domain_.cols() != image_.cols()) {
        throw DimensionMismatch("isometric operator: domain and image bases differ in shape");
    }
    if (domain_.cols() > domain_.rows()) {
        throw DimensionMismatch("isometric operator: more domain vectors than the ambient dimension");
    }
    if (!domain_.allFinite() || !image_.allFinite()) {
        throw std::invalid_argument("isometric operator: non-finite entries");
    }
    if (isometry_defect(domain_) > tol.eps_unit) {
        throw std::invalid_argument("isometric operator: domain basis is not orthonormal");
    }
    if (isometry_defect(image_) > tol.eps_unit) {
        throw std::invalid_argument("isometric operator: images do not form an orthonormal system");
    }
}

IsometricOperator IsometricOperator::trusted(ComplexMatrix domain_basis, ComplexMatrix image_basis) {
    return IsometricOperator(std::move(domain_basis), std::move(image_basis), true);
}

DefectPair defect_spaces(const IsometricOperator& v, DefectPoint zeta, const TolerancePolicy& tol) {
    ComplexMatrix cols;
    if (zeta.is_infinity()) {
        cols = v.image_basis();
    } else {
        const Complex z = *zeta.value;
        // Same span as (E - zV)D(V); rescaled outside the unit disk.
        cols = std::abs(z) <= 1.0 ? ComplexMatrix(v.domain_basis() - z * v.image_basis())
                                  : ComplexMatrix(v.domain_basis() / z - v.image_basis());
    }
    Subspace m = orthonormalize_columns(cols, tol);
    Subspace n = orthogonal_complement(m, tol);
    return DefectPair{std::move(m), std::move(n), zeta};
}

DefectPair defect_spaces(const IsometricOperator& v, Complex zeta, const TolerancePolicy& tol) {
    return defect_spaces(v, DefectPoint::at(zeta), tol);
}

Subspace defect_source(const IsometricOperator& v, Complex z0, const TolerancePolicy& tol) {
    return defect_spaces(v, z0, tol).n;
}

Subspace defect_target_complement(const IsometricOperator& v, Complex z0, const TolerancePolicy& tol) {
    return orthonormalize_columns(v.image_basis() - std::conj(z0) * v.domain_basis(), tol);
}

Subspace defect_target(const IsometricOperator& v, Complex z0, const TolerancePolicy& tol) {
    return orthogonal_complement(defect_target_complement(v, z0, tol), tol);
}

RegularTypeResult regular_type(const IsometricOperator& v, Complex z, const TolerancePolicy& tol) {
    if (v.domain_dim() == 0) return {true, std::numeric_limits<double>::infinity()};
    const double s = sigma_min(v.image_basis() - z * v.domain_basis());
    return {s > tol.eps_rank, s};
}

double DecompositionReport::directness_measure() const {
    return *std::min_element(directness.begin(), directness.end());
}

bool DecompositionReport::all_valid() const {
    return std::all_of(direct.begin(), direct.end(), [](bool b) { return b; }) &&
           std::all_of(spanning.begin(), spanning.end(), [](bool b) { return b; });
}

namespace {

ComplexMatrix hcat(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows(), a.cols() + b.cols());
    out << a, b;
    return out;
}

std::size_t numerical_rank(const ComplexMatrix& m, double eps) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    const auto& s = svd.singularValues();
    return static_cast<std::size_t>((s.array() > eps).count());
}

void require_unimodular(Complex zeta, const TolerancePolicy& tol, const char* where) {
    if (std::abs(std::abs(zeta) - 1.0) > tol.eps_unit) {
        throw PreconditionViolated(std::string(where) + ": zeta must be unimodular");
    }
}

}  // namespace

DecompositionReport decompositions(const IsometricOperator& v, Complex zeta, const TolerancePolicy& tol) {
    require_unimodular(zeta, tol, "decompositions");
    // zeta^{-1} = conj(zeta) on the circle.
    const auto reg = regular_type(v, std::conj(zeta), tol);
    if (!reg.is_regular) {
        throw PreconditionViolated("decompositions: zeta^{-1} is not a point of regular type (sigma_min = " +
                                   std::to_string(reg.sigma_min) + ")");
    }
    const auto n = v.ambient_dim();
    const DefectPair dp = defect_spaces(v, zeta, tol);
    const Subspace n0 = orthogonal_complement(v.domain(), tol);
    const Subspace ninf = orthogonal_complement(v.range(), tol);

    const std::array<ComplexMatrix, 4> blocks = {
        hcat(v.domain_basis(), dp.n.basis()),
        hcat(v.image_basis(), dp.n.basis()),
        hcat(n0.basis(), dp.m.basis()),
        hcat(ninf.basis(), dp.m.basis()),
    };
    DecompositionReport rep;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const double s = blocks[i].cols() == 0 ? std::numeric_limits<double>::infinity() : sigma_min(blocks[i]);
        rep.directness[i] = s;
        rep.direct[i] = s > tol.eps_rank;
        rep.spanning[i] = numerical_rank(blocks[i], tol.eps_rank) == n;
    }
    return rep;
}

double lemma51_identity(const IsometricOperator& v, Complex zeta, const TolerancePolicy& tol) {
    require_unimodular(zeta, tol, "lemma51_identity");
    const DefectPair dp = defect_spaces(v, zeta, tol);
    const ComplexMatrix& d = v.domain_basis();
    const ComplexMatrix& y = v.image_basis();
    const ComplexMatrix p_n0 = projector(orthogonal_complement(v.domain(), tol));
    const ComplexMatrix p_ninf = projector(orthogonal_complement(v.range(), tol));
    const Complex zeta_inv = std::conj(zeta);

    double worst = 0.0;
    for (Eigen::Index j = 0; j < dp.n.basis().cols(); ++j) {
        const ComplexVector f = dp.n.basis().col(j);
        const ComplexVector coeff_dom = d.adjoint() * f;
        const ComplexVector coeff_img = y.adjoint() * f;
        const ComplexVector lhs = y * coeff_dom;              // V P_{M0} f
        const ComplexVector rhs = zeta_inv * (y * coeff_img);  // zeta^{-1} P_{Minf} f
        worst = std::max(worst, (lhs - rhs).norm());
        worst = std::max(worst, std::abs(coeff_dom.norm() - coeff_img.norm()));
        worst = std::max(worst, std::abs((p_n0 * f).norm() - (p_ninf * f).norm()));
    }
    return worst;
}

// ---------------------------------------------------------------------------

ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
    const auto m = static_cast<Eigen::Index>(n);
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix z(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        for (Eigen::Index i = 0; i < m; ++i) z(i, j) = Complex(g(rng), g(rng));
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(m, m);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Phase correction makes the distribution Haar.
    for (Eigen::Index j = 0; j < m; ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

IsometricOperator random_isometric(std::size_t n, std::size_t d, std::mt19937_64& rng,
                                   bool coordinate_domain) {
    const ComplexMatrix u = random_unitary(n, rng);
    const auto rows = static_cast<Eigen::Index>(n);
    const auto cols = static_cast<Eigen::Index>(d);
    ComplexMatrix dom(rows, cols);
    if (coordinate_domain) {
        std::vector<Eigen::Index> idx(n);
        std::iota(idx.begin(), idx.end(), Eigen::Index{0});
        std::shuffle(idx.begin(), idx.end(), rng);
        std::sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(d));
        for (Eigen::Index j = 0; j < cols; ++j) dom.col(j) = ComplexVector::Unit(rows, idx[static_cast<std::size_t>(j)]);
    } else {
        dom = random_unitary(n, rng).leftCols(cols);
    }
    ComplexMatrix img = u * dom;
    return IsometricOperator::trusted(std::move(dom), std::move(img));
}

IsometricOperator random_isometric_with_eigenvalue(std::size_t n, std::size_t d, Complex mu,
                                                   std::mt19937_64& rng) {
    const auto rows = static_cast<Eigen::Index>(n);
    const auto cols = static_cast<Eigen::Index>(d);
    const ComplexMatrix q = random_unitary(n, rng);
    ComplexVector diag(rows);
    diag(0) = mu;
    for (Eigen::Index i = 1; i < rows; ++i) diag(i) = random_unimodular(rng);
    const ComplexMatrix u = q * diag.asDiagonal() * q.adjoint();

    const ComplexMatrix w = random_unitary(n, rng);
    ComplexMatrix seed(rows, cols);
    if (cols > 0) {
        seed.col(0) = q.col(0);
        for (Eigen::Index j = 1; j < cols; ++j) seed.col(j) = w.col(j);
    }
    TolerancePolicy tol;
    ComplexMatrix dom = orthonormalize_columns(seed, tol).basis();
    ComplexMatrix img = u * dom;
    return IsometricOperator::trusted(std::move(dom), std::move(img));
}

Complex random_unimodular(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> a(0.0, 2.0 * kPi);
    return std::polar(1.0, a(rng));
}

Complex random_in_disk(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> a(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> r(0.0, 1.0);
    return std::polar(radius * std::sqrt(r(rng)), a(rng));
}

}  // namespace isores
