#include "support.hpp"

using namespace testing;

namespace {

ContractionOp param(const IsometricOperator& v, Complex z0, ComplexMatrix m) {
    return ContractionOp(defect_source(v, z0, kTol), defect_target(v, z0, kTol), std::move(m));
}

// Scalar-plus-inverse form of the orthogonal extension, z0 != 0.
ComplexMatrix extension_by_inverse(const ComplexMatrix& plus, Complex z0) {
    const auto n = plus.rows();
    return eye(n) / z0 + (std::norm(z0) - 1.0) / z0 * (eye(n) + z0 * plus).inverse();
}

// The matching formula for V+ in terms of the orthogonal extension, z0 != 0.
ComplexMatrix plus_by_inverse(const ComplexMatrix& t, Complex z0) {
    const auto n = t.rows();
    return -eye(n) / z0 + (1.0 - std::norm(z0)) / z0 * (eye(n) - z0 * t).inverse();
}

struct Draw {
    IsometricOperator v;
    Complex z0;
    ContractionOp c;
};

Draw random_draw(std::mt19937_64& rng, bool unitary) {
    const std::size_t n = 2 + rng() % 6;
    auto v = random_isometric(n, 1 + rng() % (n - 1), rng, false);
    const Complex z0 = random_in_disk(rng, 0.8);
    const std::size_t k = defect_source(v, z0, kTol).dim();
    ComplexMatrix m = unitary ? random_unitary(k, rng) : random_contraction(k, k, 0.9, rng);
    auto c = param(v, z0, std::move(m));
    return Draw{std::move(v), z0, std::move(c)};
}

}  // namespace

TEST_CASE("extend_full on E1") {
    const auto v = e1_operator();
    for (Complex g : {Complex{1.0, 0.0}, I, std::polar(1.0, 2.0)}) {
        const auto t = extend_full(v, Complex{0.0, 0.0}, param(v, Complex{0.0, 0.0}, scalar_c(g)), kTol);
        CHECK(dev(t.matrix, mat({{0.0, g}, {1.0, 0.0}})) <= 1e-15);
        CHECK(t.flavor == ExtensionFlavor::Plus);
    }
    const auto zero = extend_full(v, Complex{0.0, 0.0}, param(v, Complex{0.0, 0.0}, scalar_c(0.0)), kTol);
    CHECK(dev(zero.matrix, mat({{0.0, 0.0}, {1.0, 0.0}})) <= 1e-15);
    // partial isometry: M M^H M = M
    CHECK(dev(zero.matrix * zero.matrix.adjoint() * zero.matrix, zero.matrix) <= 1e-15);
}

TEST_CASE("extend_full with a unitary parameter is unitary") {
    std::mt19937_64 rng(61);
    for (int k = 0; k < 30; ++k) {
        const auto d = random_draw(rng, true);
        CHECK(is_unitary(extend_full(d.v, d.z0, d.c, kTol).matrix, kTol));
    }
}

TEST_CASE("extend_full rejects a parameter on the wrong spaces") {
    const auto v = e1_operator();
    const ContractionOp wrong(Subspace(vec({1.0, 0.0}), kTol), Subspace(vec({0.0, 1.0}), kTol), scalar_c(1.0));
    CHECK_THROWS_AS(extend_full(v, Complex{0.0, 0.0}, wrong, kTol), ParameterMismatch);
    CHECK_THROWS_AS(ContractionOp(Subspace(vec({1.0, 0.0}), kTol), Subspace(vec({0.0, 1.0}), kTol), eye(2)),
                    DimensionMismatch);
}

TEST_CASE("orthogonal extension at zero equals extend_full") {
    const auto v = e1_operator();
    const auto c = param(v, Complex{0.0, 0.0}, scalar_c(I));
    CHECK(dev(orthogonal_extension(v, Complex{0.0, 0.0}, c, kTol).matrix,
              extend_full(v, Complex{0.0, 0.0}, c, kTol).matrix) == 0.0);
}

TEST_CASE("orthogonal extension of E1 at one half") {
    const auto v = e1_operator();
    const Complex z0{0.5, 0.0};
    const auto t = orthogonal_extension(v, z0, param(v, z0, scalar_c(std::polar(1.0, 1.1))), kTol);
    CHECK(is_unitary(t.matrix, kTol));
    CHECK((t.matrix * vec({1.0, 0.0}) - vec({0.0, 1.0})).norm() <= 1e-14);
    const auto plus = extend_full(v, z0, t.parameter, kTol).matrix;
    CHECK(dev(t.matrix, extension_by_inverse(plus, z0)) <= 1e-13);
}

TEST_CASE("orthogonal extension agrees with the scalar-plus-inverse form") {
    std::mt19937_64 rng(67);
    for (int k = 0; k < 100; ++k) {
        const auto d = random_draw(rng, k % 2 == 0);
        if (std::abs(d.z0) < 0.05) continue;
        const auto t = orthogonal_extension(d.v, d.z0, d.c, kTol);
        const auto plus = extend_full(d.v, d.z0, d.c, kTol).matrix;
        CHECK(dev(t.matrix, extension_by_inverse(plus, d.z0)) <= 1e-9);
        CHECK(dev(plus, plus_by_inverse(t.matrix, d.z0)) <= 1e-9);
    }
}

TEST_CASE("orthogonal extensions extend V and are contractions") {
    std::mt19937_64 rng(71);
    for (int k = 0; k < 200; ++k) {
        const auto d = random_draw(rng, false);
        const auto t = orthogonal_extension(d.v, d.z0, d.c, kTol).matrix;
        CHECK(sigma_max(t) <= 1.0 + kTol.eps_unit);
        CHECK(dev(t * d.v.domain_basis(), d.v.image_basis()) <= 1e-10);
    }
}

TEST_CASE("orthogonal extensions map N_0 into N_inf") {
    std::mt19937_64 rng(73);
    for (int k = 0; k < 50; ++k) {
        const auto d = random_draw(rng, false);
        const auto t = orthogonal_extension(d.v, d.z0, d.c, kTol).matrix;
        const ComplexMatrix n0 = defect_source(d.v, Complex{0.0, 0.0}, kTol).basis();
        CHECK(max_abs(d.v.image_basis().adjoint() * t * n0) <= 1e-10);
    }
}

TEST_CASE("recover_parameter roundtrips") {
    const auto v = e1_operator();
    const auto c0 = param(v, Complex{0.0, 0.0}, scalar_c(std::polar(1.0, 0.3)));
    const auto t0 = orthogonal_extension(v, Complex{0.0, 0.0}, c0, kTol);
    CHECK(dev(recover_parameter(t0, v, Complex{0.0, 0.0}, kTol).matrix, c0.matrix) <= 1e-15);

    const Complex z0{0.5, 0.0};
    const auto c = param(v, z0, scalar_c(std::polar(1.0, -0.9)));
    const auto t = orthogonal_extension(v, z0, c, kTol);
    CHECK(dev(recover_parameter(t, v, z0, kTol).matrix, c.matrix) <= 1e-13);

    std::mt19937_64 rng(79);
    for (int k = 0; k < 100; ++k) {
        const auto d = random_draw(rng, k % 3 == 0);
        const auto tk = orthogonal_extension(d.v, d.z0, d.c, kTol);
        CHECK(dev(recover_parameter(tk, d.v, d.z0, kTol).matrix, d.c.matrix) <= 1e-8);
    }
}

TEST_CASE("recover at another base point and re-extend gives the same operator") {
    std::mt19937_64 rng(83);
    for (int k = 0; k < 50; ++k) {
        const auto d = random_draw(rng, false);
        const auto t = orthogonal_extension(d.v, d.z0, d.c, kTol).matrix;
        for (Complex z1 : {Complex{0.3, 0.0}, Complex{-0.2, 0.4}, Complex{0.0, 0.5}}) {
            const auto c1 = recover_parameter(t, d.v, z1, kTol);
            CHECK(c1.is_contraction(kTol));
            CHECK(dev(orthogonal_extension(d.v, z1, c1, kTol).matrix, t) <= 1e-8);
        }
    }
}

TEST_CASE("recover_parameter rejects a matrix that does not extend V") {
    const auto v = e1_operator();
    CHECK_THROWS_AS(recover_parameter(eye(2), v, Complex{0.0, 0.0}, kTol), ReconstructionMismatch);
    CHECK_THROWS_AS(recover_parameter(eye(3), v, Complex{0.0, 0.0}, kTol), DimensionMismatch);
}

TEST_CASE("family validation") {
    const auto v = e1_operator();
    const std::vector<Complex> grid{Complex{0.0, 0.0}, Complex{0.5, 0.0}, Complex{0.0, -0.7}};
    const auto bad = ParameterFamily::constant(v, Complex{0.0, 0.0}, scalar_c(1.2), kTol);
    const auto rep = validate_family(bad, v, grid, kTol);
    CHECK_FALSE(rep.ok);
    CHECK_FALSE(rep.violations.empty());
    CHECK(std::abs(rep.max_norm - 1.2) <= 1e-15);

    const auto good = ParameterFamily::constant(v, Complex{0.0, 0.0}, scalar_c(I), kTol);
    CHECK(validate_family(good, v, grid, kTol).ok);

    const ParameterFamily b(ParameterFamily::Blaschke{Complex{0.5, 0.0}, scalar_c(1.0)}, v, Complex{0.0, 0.0}, kTol);
    CHECK(std::abs(std::abs(b.at(Complex{0.0, 0.0}).matrix(0, 0)) - 0.5) <= 1e-15);
    CHECK(std::abs(std::abs(b.at(std::polar(1.0, kPi / 3.0)).matrix(0, 0)) - 1.0) <= 1e-15);
    CHECK(validate_family(b, v, grid, kTol).ok);

    const ParameterFamily nonunitary(ParameterFamily::Blaschke{Complex{0.5, 0.0}, scalar_c(0.5)}, v,
                                     Complex{0.0, 0.0}, kTol);
    CHECK_FALSE(validate_family(nonunitary, v, grid, kTol).ok);
}

TEST_CASE("tabulated families") {
    const auto v = e1_operator();
    ParameterFamily::Table t;
    t.points.emplace_back(Complex{0.1, 0.0}, scalar_c(0.5));
    t.points.emplace_back(I, scalar_c(1.5));
    const ParameterFamily fam(std::move(t), v, Complex{0.0, 0.0}, kTol);
    CHECK(fam.is_tabulated());
    CHECK(fam.evaluable_at(Complex{0.1, 0.0}));
    CHECK_FALSE(fam.evaluable_at(Complex{0.2, 0.0}));
    CHECK_THROWS_AS(fam.at(Complex{0.2, 0.0}), NotEvaluable);
    const auto rep = validate_family(fam, v, {}, kTol);
    CHECK_FALSE(rep.ok);
    CHECK(rep.violations.size() == 1);
}

TEST_CASE("family shape checks") {
    const auto v = e1_operator();
    CHECK_THROWS_AS(ParameterFamily::constant(v, Complex{0.0, 0.0}, eye(2), kTol), DimensionMismatch);
    CHECK_THROWS_AS(ParameterFamily::constant(v, Complex{1.0, 0.0}, scalar_c(1.0), kTol), PreconditionViolated);
}
