#include "support.hpp"

using namespace testing;

TEST_CASE("isometric operator validation") {
    CHECK_NOTHROW(e1_operator());
    CHECK_THROWS_AS(IsometricOperator(mat({{1.0}, {0.0}}), mat({{0.0}, {2.0}}), kTol), std::invalid_argument);
    CHECK_THROWS_AS(IsometricOperator(mat({{1.0}, {1.0}}), mat({{0.0}, {1.0}}), kTol), std::invalid_argument);
    CHECK_THROWS_AS(IsometricOperator(mat({{1.0}, {0.0}}), mat({{1.0, 0.0}, {0.0, 1.0}}), kTol), DimensionMismatch);
    const IsometricOperator empty(ComplexMatrix(1, 0), ComplexMatrix(1, 0), kTol);
    CHECK(empty.domain_dim() == 0);
}

TEST_CASE("defect spaces of E1") {
    const auto v = e1_operator();
    const auto p0 = defect_spaces(v, Complex{0.0, 0.0}, kTol);
    CHECK(same_subspace(p0.m, v.domain(), kTol));
    CHECK(same_subspace(p0.n, Subspace(vec({0.0, 1.0}), kTol), kTol));
    const auto pinf = defect_spaces(v, DefectPoint::infinity(), kTol);
    CHECK(same_subspace(pinf.m, v.range(), kTol));
    CHECK(same_subspace(pinf.n, Subspace(vec({1.0, 0.0}), kTol), kTol));
    // M_1 = span{e1 - e2}
    const auto p1 = defect_spaces(v, Complex{1.0, 0.0}, kTol);
    CHECK(same_subspace(p1.n, Subspace(vec({1.0, 1.0}) / std::sqrt(2.0), kTol), kTol));
    // |zeta| > 1 uses the scaled spanning set and gives the same space
    const auto p2 = defect_spaces(v, Complex{2.0, 0.0}, kTol);
    CHECK(same_subspace(p2.m, Subspace(vec({1.0, -2.0}) / std::sqrt(5.0), kTol), kTol));
}

TEST_CASE("defect numbers agree in finite dimensions") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 50; ++k) {
        const std::size_t n = 2 + k % 6;
        const auto v = random_isometric(n, 1 + k % (n - 1), rng, false);
        const auto z = random_in_disk(rng, 3.0);
        const auto p = defect_spaces(v, z, kTol);
        CHECK(p.m.dim() + p.n.dim() == n);
        CHECK(defect_spaces(v, Complex{0.0, 0.0}, kTol).n.dim() == defect_spaces(v, DefectPoint::infinity(), kTol).n.dim());
    }
}

TEST_CASE("regular type examples") {
    const auto e1 = regular_type(e1_operator(), I, kTol);
    CHECK(e1.is_regular);
    CHECK(std::abs(e1.sigma_min - std::sqrt(2.0)) <= 1e-14);
    const auto id1 = regular_type(identity_c1(), Complex{1.0, 0.0}, kTol);
    CHECK_FALSE(id1.is_regular);
    CHECK(id1.sigma_min <= 1e-15);
    const auto id2 = regular_type(identity_c1(), Complex{2.0, 0.0}, kTol);
    CHECK(id2.is_regular);
    CHECK(std::abs(id2.sigma_min - 1.0) <= 1e-15);
    const IsometricOperator empty(ComplexMatrix(1, 0), ComplexMatrix(1, 0), kTol);
    CHECK(regular_type(empty, Complex{1.0, 0.0}, kTol).is_regular);
}

TEST_CASE("decompositions of E1 at 1") {
    const auto rep = decompositions(e1_operator(), Complex{1.0, 0.0}, kTol);
    CHECK(rep.all_valid());
    // sigma_min of [e1 | (1,1)/sqrt2]: s^2 = (|A|_F^2 - sqrt(|A|_F^4 - 4 det^2)) / 2
    const double fro2 = 2.0;
    const double det = 1.0 / std::sqrt(2.0);
    const double oracle = std::sqrt((fro2 - std::sqrt(fro2 * fro2 - 4.0 * det * det)) / 2.0);
    CHECK(std::abs(rep.directness[0] - oracle) <= 1e-12);
    CHECK(std::abs(oracle - 0.5412) <= 1e-4);
}

TEST_CASE("decompositions of E1 at i") {
    CHECK(decompositions(e1_operator(), I, kTol).all_valid());
}

TEST_CASE("decompositions preconditions") {
    CHECK_THROWS_AS(decompositions(identity_c1(), Complex{1.0, 0.0}, kTol), PreconditionViolated);
    CHECK_THROWS_AS(decompositions(e1_operator(), Complex{0.5, 0.0}, kTol), PreconditionViolated);
}

TEST_CASE("decompositions on random operators") {
    std::mt19937_64 rng(17);
    int checked = 0;
    for (int k = 0; k < 60; ++k) {
        const std::size_t n = 2 + k % 7;
        const auto v = random_isometric(n, 1 + k % (n - 1), rng, k % 2 == 0);
        const Complex zeta = random_unimodular(rng);
        if (!regular_type(v, std::conj(zeta), kTol).is_regular) continue;
        const auto rep = decompositions(v, zeta, kTol);
        CHECK(rep.all_valid());
        CHECK(rep.directness_measure() > 1e-9);
        ++checked;
    }
    CHECK(checked > 50);
}

TEST_CASE("lemma identity on E1") {
    CHECK(lemma51_identity(e1_operator(), Complex{1.0, 0.0}, kTol) <= 1e-15);
    CHECK(lemma51_identity(e1_operator(), I, kTol) <= 1e-15);
    // by hand at zeta = i: f = (-i, 1)/sqrt2, V P_{M0} f = -i e2/sqrt2 = conj(i) P_{Minf} f
    const ComplexVector f = vec({-I, 1.0}) / std::sqrt(2.0);
    const ComplexVector lhs = vec({0.0, f(0)});
    const ComplexVector rhs = std::conj(I) * vec({0.0, f(1)});
    CHECK((lhs - rhs).norm() <= 1e-15);
}

TEST_CASE("lemma identity is vacuous for unitary operators") {
    const IsometricOperator u(eye(2), mat({{0.0, 1.0}, {1.0, 0.0}}), kTol);
    CHECK(lemma51_identity(u, I, kTol) == 0.0);
}

TEST_CASE("lemma identity on random operators") {
    std::mt19937_64 rng(23);
    for (int k = 0; k < 50; ++k) {
        const std::size_t n = 2 + k % 6;
        const auto v = random_isometric(n, 1 + k % (n - 1), rng, false);
        CHECK(lemma51_identity(v, random_unimodular(rng), kTol) <= 1e-8);
    }
}

TEST_CASE("planted eigenvalue is detected by regular type") {
    std::mt19937_64 rng(29);
    for (int k = 0; k < 10; ++k) {
        const Complex mu = random_unimodular(rng);
        const auto v = random_isometric_with_eigenvalue(5, 3, mu, rng);
        CHECK_FALSE(regular_type(v, mu, kTol).is_regular);
        CHECK(regular_type(v, -mu, kTol).is_regular);
    }
}

TEST_CASE("random generators") {
    std::mt19937_64 rng(31);
    const ComplexMatrix u = random_unitary(7, rng);
    CHECK(is_unitary(u, kTol));
    for (int k = 0; k < 100; ++k) {
        CHECK(std::abs(std::abs(random_unimodular(rng)) - 1.0) <= 1e-15);
        CHECK(std::abs(random_in_disk(rng, 0.7)) < 0.7);
    }
}
