#include "support.hpp"

using namespace testing;

TEST_CASE("orthonormalize keeps an orthonormal pair") {
    const std::vector<ComplexVector> vs{vec({1.0, 0.0}), vec({0.0, 1.0})};
    const Subspace s = orthonormalize(vs, 2, kTol);
    CHECK(dev(s.basis(), eye(2)) <= 1e-15);
}

TEST_CASE("orthonormalize normalizes a single vector") {
    const std::vector<ComplexVector> vs{vec({1.0, -0.5})};
    const Subspace s = orthonormalize(vs, 2, kTol);
    REQUIRE(s.dim() == 1);
    CHECK(dev(s.basis(), vec({2.0, -1.0}) / std::sqrt(5.0)) <= 1e-15);
}

TEST_CASE("orthonormalize drops dependent vectors") {
    const std::vector<ComplexVector> vs{vec({1.0, 0.0}), vec({2.0, 0.0})};
    const Subspace s = orthonormalize(vs, 2, kTol);
    REQUIRE(s.dim() == 1);
    CHECK(same_subspace(s, Subspace(vec({1.0, 0.0}), kTol), kTol));
}

TEST_CASE("orthonormalize rejects wrong vector lengths") {
    const std::vector<ComplexVector> vs{vec({1.0, 0.0, 0.0})};
    CHECK_THROWS_AS(orthonormalize(vs, 2, kTol), DimensionMismatch);
}

TEST_CASE("orthogonal complement examples") {
    const Subspace e1(vec({1.0, 0.0}), kTol);
    CHECK(same_subspace(orthogonal_complement(e1, kTol), Subspace(vec({0.0, 1.0}), kTol), kTol));

    const Subspace s(vec({1.0, -I}) / std::sqrt(2.0), kTol);
    const Subspace c = orthogonal_complement(s, kTol);
    REQUIRE(c.dim() == 1);
    // kernel of the adjoint of (1, -i): spanned by (-i, 1)
    const ComplexVector oracle = vec({-I, 1.0}) / std::sqrt(2.0);
    CHECK(std::abs(s.basis().col(0).dot(c.basis().col(0))) <= 1e-15);
    CHECK(same_subspace(c, Subspace(oracle, kTol), kTol));

    CHECK(orthogonal_complement(Subspace::full(2), kTol).dim() == 0);
    CHECK(orthogonal_complement(Subspace::zero(3), kTol).dim() == 3);
}

TEST_CASE("orthogonal complement is deterministic and basis independent") {
    std::mt19937_64 rng(5);
    const ComplexMatrix u = random_unitary(5, rng);
    const Subspace a = orthonormalize_columns(u.leftCols(2), kTol);
    const Subspace b = orthonormalize_columns(u.leftCols(2) * mat({{1.0, 2.0}, {I, -1.0}}), kTol);
    CHECK(dev(orthogonal_complement(a, kTol).basis(), orthogonal_complement(b, kTol).basis()) <= 1e-12);
}

TEST_CASE("projector examples") {
    CHECK(dev(projector(Subspace::full(2)), eye(2)) <= 1e-15);
    CHECK(dev(projector(Subspace(vec({1.0, 0.0}), kTol)), mat({{1.0, 0.0}, {0.0, 0.0}})) <= 1e-15);
    const Subspace d(vec({1.0, 1.0}) / std::sqrt(2.0), kTol);
    CHECK(dev(projector(d), mat({{0.5, 0.5}, {0.5, 0.5}})) <= 1e-15);
}

TEST_CASE("subspace constructor rejects non-orthonormal bases") {
    CHECK_THROWS_AS(Subspace(mat({{1.0, 1.0}, {0.0, 0.0}}), kTol), std::invalid_argument);
    CHECK_THROWS_AS(Subspace(vec({2.0, 0.0}), kTol), std::invalid_argument);
}

TEST_CASE("unitary_eig on diag(1, -1)") {
    const auto sd = unitary_eig(mat({{1.0, 0.0}, {0.0, -1.0}}), kTol);
    REQUIRE(sd.atoms.size() == 2);
    CHECK(std::abs(sd.atoms[0].lambda - 1.0) <= 1e-12);
    CHECK(std::abs(sd.atoms[0].angle) <= 1e-12);
    CHECK(dev(sd.atoms[0].projector, mat({{1.0, 0.0}, {0.0, 0.0}})) <= 1e-12);
    CHECK(std::abs(sd.atoms[1].lambda + 1.0) <= 1e-12);
    CHECK(std::abs(sd.atoms[1].angle - kPi) <= 1e-12);
    CHECK(dev(sd.atoms[1].projector, mat({{0.0, 0.0}, {0.0, 1.0}})) <= 1e-12);
}

TEST_CASE("unitary_eig on the swap") {
    const auto sd = unitary_eig(mat({{0.0, 1.0}, {1.0, 0.0}}), kTol);
    REQUIRE(sd.atoms.size() == 2);
    CHECK(dev(sd.atoms[0].projector, mat({{0.5, 0.5}, {0.5, 0.5}})) <= 1e-12);
    CHECK(dev(sd.atoms[1].projector, mat({{0.5, -0.5}, {-0.5, 0.5}})) <= 1e-12);
}

TEST_CASE("unitary_eig merges a repeated eigenvalue") {
    const auto sd = unitary_eig(eye(3), kTol);
    REQUIRE(sd.atoms.size() == 1);
    CHECK(dev(sd.atoms[0].projector, eye(3)) <= 1e-12);
}

TEST_CASE("unitary_eig reconstructs random unitaries") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 20; ++k) {
        const ComplexMatrix u = random_unitary(6, rng);
        const auto sd = unitary_eig(u, kTol);
        ComplexMatrix sum = ComplexMatrix::Zero(6, 6);
        ComplexMatrix total = ComplexMatrix::Zero(6, 6);
        for (const auto& a : sd.atoms) {
            sum += a.lambda * a.projector;
            total += a.projector;
        }
        CHECK(dev(sum, u) <= 1e-10);
        CHECK(dev(total, eye(6)) <= 1e-10);
    }
}

TEST_CASE("unitary_eig rejects non-unitary input") {
    CHECK_THROWS_AS(unitary_eig(mat({{0.5, 0.0}, {0.0, 1.0}}), kTol), PreconditionViolated);
}

TEST_CASE("guarded_inverse examples") {
    CHECK(dev(guarded_inverse(eye(2), kTol), eye(2)) <= 1e-15);
    const ComplexMatrix m = mat({{1.0, -0.5}, {-0.5, 1.0}});
    CHECK(dev(guarded_inverse(m, kTol), adjugate_inverse(m)) <= 1e-14);
    CHECK(dev(guarded_inverse(m, kTol), (4.0 / 3.0) * mat({{1.0, 0.5}, {0.5, 1.0}})) <= 1e-14);
    CHECK_THROWS_AS(guarded_inverse(mat({{1.0, 1.0}, {1.0, 1.0}}), kTol), SingularOperator);
}

TEST_CASE("sigma_min conventions") {
    CHECK(std::isinf(sigma_min(ComplexMatrix(3, 0))));
    CHECK(sigma_min(ComplexMatrix::Ones(2, 3)) == 0.0);
    CHECK(std::abs(sigma_min(mat({{3.0, 0.0}, {0.0, 0.5}})) - 0.5) <= 1e-15);
}

TEST_CASE("tolerance policy validation") {
    TolerancePolicy t;
    CHECK_NOTHROW(t.validate());
    t.eps_rank = 0.0;
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
}

TEST_CASE("angles") {
    CHECK(std::abs(angle_of(Complex{-1.0, -1e-18}) - kPi) <= 1e-12);
    CHECK(std::abs(angle_of(-I) - 1.5 * kPi) <= 1e-12);
    CHECK(std::abs(circular_distance(0.1, 2.0 * kPi - 0.1) - 0.2) <= 1e-12);
}
