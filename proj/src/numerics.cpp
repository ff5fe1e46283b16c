#include "isores/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace isores {

void TolerancePolicy::validate() const {
    auto check = [](double v, const char* name) {
        if (!(v > 0.0 && v < 1e-3)) {
            throw std::invalid_argument(std::string("tolerance ") + name + " must lie in (0, 1e-3)");
        }
    };
    check(eps_rank, "eps_rank");
    check(eps_eq, "eps_eq");
    check(eps_unit, "eps_unit");
}

Subspace::Subspace(ComplexMatrix basis, const TolerancePolicy& tol) : basis_(std::move(basis)) {
    if (basis_.cols() > basis_.rows()) {
        throw std::invalid_argument("subspace basis has more columns than the ambient dimension");
    }
    if (!basis_.allFinite()) {
        throw std::invalid_argument("subspace basis has non-finite entries");
    }
    if (isometry_defect(basis_) > tol.eps_unit) {
        throw std::invalid_argument("subspace basis is not orthonormal");
    }
}

Subspace Subspace::zero(std::size_t ambient_dim) {
    return Subspace(ComplexMatrix(static_cast<Eigen::Index>(ambient_dim), 0));
}

Subspace Subspace::full(std::size_t ambient_dim) {
    const auto n = static_cast<Eigen::Index>(ambient_dim);
    return Subspace(ComplexMatrix::Identity(n, n));
}

namespace {

// Removes the components of v along the accepted columns, twice.
void project_out(ComplexVector& v, const std::vector<ComplexVector>& accepted) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : accepted) {
            v -= q * q.dot(v);
        }
    }
}

ComplexMatrix stack(const std::vector<ComplexVector>& cols, Eigen::Index rows) {
    ComplexMatrix out(rows, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        out.col(static_cast<Eigen::Index>(j)) = cols[j];
    }
    return out;
}

}  // namespace

Subspace orthonormalize(std::span<const ComplexVector> vectors, std::size_t ambient_dim,
                        const TolerancePolicy& tol) {
    const auto n = static_cast<Eigen::Index>(ambient_dim);
    std::vector<ComplexVector> accepted;
    for (const auto& input : vectors) {
        if (input.size() != n) {
            throw DimensionMismatch("orthonormalize: vectors do not share one ambient dimension");
        }
        ComplexVector v = input;
        const double scale = std::max(1.0, input.norm());
        project_out(v, accepted);
        const double r = v.norm();
        if (r <= tol.eps_rank * scale || static_cast<Eigen::Index>(accepted.size()) == n) {
            continue;
        }
        accepted.emplace_back(v / r);
    }
    return Subspace::trusted(stack(accepted, n));
}

Subspace orthonormalize_columns(const ComplexMatrix& columns, const TolerancePolicy& tol) {
    std::vector<ComplexVector> cols;
    cols.reserve(static_cast<std::size_t>(columns.cols()));
    for (Eigen::Index j = 0; j < columns.cols(); ++j) {
        cols.emplace_back(columns.col(j));
    }
    return orthonormalize(cols, static_cast<std::size_t>(columns.rows()), tol);
}

Subspace orthogonal_complement(const Subspace& s, const TolerancePolicy& tol) {
    const auto n = static_cast<Eigen::Index>(s.ambient_dim());
    const auto want = n - static_cast<Eigen::Index>(s.dim());
    std::vector<ComplexVector> accepted;
    for (Eigen::Index j = 0; j < s.basis().cols(); ++j) {
        accepted.emplace_back(s.basis().col(j));
    }
    std::vector<ComplexVector> result;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    while (static_cast<Eigen::Index>(result.size()) < want) {
        Eigen::Index best = -1;
        double best_norm = 0.0;
        ComplexVector best_vec;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (used[static_cast<std::size_t>(i)]) continue;
            ComplexVector v = ComplexVector::Unit(n, i);
            project_out(v, accepted);
            const double r = v.norm();
            if (r > best_norm + 1e-12) {
                best = i;
                best_norm = r;
                best_vec = std::move(v);
            }
        }
        if (best < 0 || best_norm <= tol.eps_rank) break;
        used[static_cast<std::size_t>(best)] = true;
        best_vec /= best_norm;
        accepted.push_back(best_vec);
        result.push_back(std::move(best_vec));
    }
    return Subspace::trusted(stack(result, n));
}

ComplexMatrix projector(const Subspace& s) {
    return s.basis() * s.basis().adjoint();
}

double largest_principal_angle(const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim() || a.ambient_dim() != b.ambient_dim()) return kPi / 2;
    if (a.dim() == 0) return 0.0;
    const ComplexMatrix overlap = a.basis().adjoint() * b.basis();
    const double c = std::clamp(sigma_min(overlap), 0.0, 1.0);
    return std::acos(c);
}

bool same_subspace(const Subspace& a, const Subspace& b, const TolerancePolicy& tol) {
    if (a.dim() != b.dim() || a.ambient_dim() != b.ambient_dim()) return false;
    return max_deviation(projector(a), projector(b)) <= tol.eps_eq;
}

UnitarySpectralData unitary_eig(const ComplexMatrix& u, const TolerancePolicy& tol) {
    if (u.rows() != u.cols()) throw DimensionMismatch("unitary_eig: matrix is not square");
    if (!is_unitary(u, tol)) throw PreconditionViolated("unitary_eig: matrix is not unitary");
    const Eigen::Index n = u.rows();
    UnitarySpectralData out;
    if (n == 0) return out;

    // For a normal matrix the Schur form is diagonal and the Schur vectors are
    // an orthonormal eigenbasis, also inside degenerate eigenspaces.
    Eigen::ComplexSchur<ComplexMatrix> schur(u);
    const ComplexMatrix& q = schur.matrixU();
    const ComplexMatrix& t = schur.matrixT();

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::vector<double> angles(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) angles[static_cast<std::size_t>(i)] = angle_of(t(i, i));
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return angles[static_cast<std::size_t>(a)] < angles[static_cast<std::size_t>(b)];
    });

    // Group consecutive eigenvalues whose angular gap is within eps_rank.
    std::vector<std::vector<Eigen::Index>> groups;
    for (Eigen::Index idx : order) {
        if (!groups.empty() &&
            circular_distance(angles[static_cast<std::size_t>(groups.back().back())],
                              angles[static_cast<std::size_t>(idx)]) <= tol.eps_rank) {
            groups.back().push_back(idx);
        } else {
            groups.push_back({idx});
        }
    }
    // The last group may wrap around to the first one through angle 0.
    if (groups.size() > 1 &&
        circular_distance(angles[static_cast<std::size_t>(groups.back().back())],
                          angles[static_cast<std::size_t>(groups.front().front())]) <= tol.eps_rank) {
        auto tail = std::move(groups.back());
        groups.pop_back();
        groups.front().insert(groups.front().begin(), tail.begin(), tail.end());
    }

    for (const auto& g : groups) {
        Complex mean{0.0, 0.0};
        ComplexMatrix p = ComplexMatrix::Zero(n, n);
        for (Eigen::Index idx : g) {
            mean += t(idx, idx);
            p += q.col(idx) * q.col(idx).adjoint();
        }
        const Complex lambda = mean / std::abs(mean);
        out.atoms.push_back(SpectralAtom{lambda, angle_of(lambda), std::move(p)});
    }
    std::sort(out.atoms.begin(), out.atoms.end(),
              [](const SpectralAtom& a, const SpectralAtom& b) { return a.angle < b.angle; });
    return out;
}

ComplexMatrix guarded_inverse(const ComplexMatrix& m, const TolerancePolicy& tol) {
    if (m.rows() != m.cols()) throw DimensionMismatch("guarded_inverse: matrix is not square");
    const Eigen::Index n = m.rows();
    if (n == 0) return m;
    const double smin = sigma_min(m);
    if (!(smin > tol.eps_rank)) {
        throw SingularOperator("guarded_inverse: operator is not invertible", smin);
    }
    ComplexMatrix inv = m.partialPivLu().inverse();
    const double residual = max_deviation(m * inv, ComplexMatrix::Identity(n, n));
    if (!(residual <= tol.eps_eq)) {
        throw SingularOperator("guarded_inverse: inverse residual exceeds eps_eq", smin);
    }
    return inv;
}

double sigma_min(const ComplexMatrix& m) {
    if (m.cols() == 0) return std::numeric_limits<double>::infinity();
    if (m.cols() > m.rows()) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

double sigma_max(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues()(0);
}

double max_deviation(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
    return max_abs(a - b);
}

double isometry_defect(const ComplexMatrix& m) {
    const ComplexMatrix gram = m.adjoint() * m;
    return max_abs(gram - ComplexMatrix::Identity(gram.rows(), gram.cols()));
}

bool is_unitary(const ComplexMatrix& m, const TolerancePolicy& tol) {
    return m.rows() == m.cols() && isometry_defect(m) <= tol.eps_unit &&
           isometry_defect(m.adjoint()) <= tol.eps_unit;
}

double angle_of(Complex z) {
    double a = std::arg(z);
    if (a < 0.0) a += 2.0 * kPi;
    if (a >= 2.0 * kPi) a -= 2.0 * kPi;
    return a;
}

double circular_distance(double a, double b) {
    double d = std::fmod(std::abs(a - b), 2.0 * kPi);
    return std::min(d, 2.0 * kPi - d);
}

}  // namespace isores
