#include "isores/cli.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace isores {

namespace {

// Property whose figure of merit must stay at or below `tolerance`.
struct UpperCheck {
    PropertyResult r;
    UpperCheck(std::string name, std::string scope, double tolerance) {
        r.name = std::move(name);
        r.scope = std::move(scope);
        r.tolerance = tolerance;
    }
    void add(double x) {
        ++r.trials;
        if (!(x <= r.worst)) r.worst = std::isnan(x) ? std::numeric_limits<double>::infinity() : x;
    }
    PropertyResult done() {
        r.pass = r.worst <= r.tolerance;
        if (r.trials == 0) r.skipped = true;
        return r;
    }
};

// Property whose figure of merit must stay at or above `tolerance`.
struct LowerCheck {
    PropertyResult r;
    LowerCheck(std::string name, std::string scope, double tolerance) {
        r.name = std::move(name);
        r.scope = std::move(scope);
        r.tolerance = tolerance;
        r.worst = std::numeric_limits<double>::infinity();
    }
    void add(double x) {
        ++r.trials;
        if (!(x >= r.worst)) r.worst = std::isnan(x) ? -std::numeric_limits<double>::infinity() : x;
    }
    PropertyResult done() {
        r.pass = r.worst >= r.tolerance;
        if (r.trials == 0) r.skipped = true;
        return r;
    }
};

ComplexMatrix identity(const IsometricOperator& v) {
    const auto n = static_cast<Eigen::Index>(v.ambient_dim());
    return ComplexMatrix::Identity(n, n);
}

ComplexVector random_vector(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexVector h(n);
    for (Eigen::Index i = 0; i < n; ++i) h(i) = Complex(g(rng), g(rng));
    return h;
}

IsometricOperator random_instance(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> dim(2, 6);
    const std::size_t n = dim(rng);
    std::uniform_int_distribution<std::size_t> dd(1, n - 1);
    return random_isometric(n, dd(rng), rng, false);
}

ParameterFamily random_constant_family(const IsometricOperator& v, Complex z0, bool unitary, std::mt19937_64& rng,
                                       const TolerancePolicy& tol) {
    const std::size_t k = defect_source(v, z0, tol).dim();
    std::uniform_real_distribution<double> norm(0.2, 1.0);
    ComplexMatrix c = unitary ? random_unitary(k, rng) : random_contraction(k, k, norm(rng), rng);
    return ParameterFamily::constant(v, z0, std::move(c), tol);
}

// Chumakin's formula for V with the parameter read off the extension T.
ComplexMatrix chumakin_via_recovered(const IsometricOperator& v, const ComplexMatrix& t, Complex zeta,
                                     const TolerancePolicy& tol) {
    const ContractionOp f = recover_parameter(t, v, Complex{0.0, 0.0}, tol);
    return chumakin(v, ParameterFamily::constant(v, Complex{0.0, 0.0}, f.matrix, tol), zeta, tol);
}

// R_u(V) rebuilt from the resolvent of V_{z0} at t(u) through the scalar relation.
ComplexMatrix relation_value(const ResolventFn& r, Complex u, const TolerancePolicy& tol) {
    const Complex z0 = r.z0();
    const IsometricOperator vz = cayley(r.op(), z0, tol);
    const Complex w = std::abs(u) < 1.0 ? u : 1.0 / std::conj(u);
    const ContractionOp c = r.family().at(w);
    const Subspace bs = defect_source(vz, Complex{0.0, 0.0}, tol);
    const Subspace bd = defect_target(vz, Complex{0.0, 0.0}, tol);
    ParameterFamily::Table table;
    table.points.emplace_back(inner_resolvent_point(z0, w), bd.basis().adjoint() * c.ambient() * bs.basis());
    const ResolventFn inner(vz, ParameterFamily(std::move(table), vz, Complex{0.0, 0.0}, tol), tol);
    return relate_resolvents(inner(inner_resolvent_point(z0, u)), z0, u, tol);
}

double z0_roundtrip(const IsometricOperator& v, const ComplexMatrix& t, const TolerancePolicy& tol) {
    double worst = 0.0;
    for (Complex z1 : {Complex{0.0, 0.0}, Complex{0.3, 0.0}, Complex{-0.2, 0.4}, Complex{0.0, 0.5}}) {
        const ContractionOp c1 = recover_parameter(t, v, z1, tol);
        const ComplexMatrix t1 = orthogonal_extension(v, z1, c1, tol).matrix;
        worst = std::max(worst, max_deviation(t1, t));
    }
    return worst;
}

std::vector<Complex> circle_points(std::size_t n, double phase) {
    std::vector<Complex> out;
    for (std::size_t k = 0; k < n; ++k) out.push_back(std::polar(1.0, phase + 2.0 * kPi * k / n));
    return out;
}

std::vector<Complex> interior_points(const Scenario& s, std::mt19937_64& rng) {
    std::vector<Complex> pts;
    if (const auto* t = std::get_if<ParameterFamily::Table>(&s.family.kind())) {
        for (const auto& p : t->points) {
            if (std::abs(p.first) < 1.0) pts.push_back(p.first);
        }
        return pts;
    }
    pts = {Complex{0.0, 0.0}, Complex{0.3, 0.0}, Complex{-0.2, 0.5}, Complex{0.0, 0.6}, s.z0()};
    for (int k = 0; k < 4; ++k) pts.push_back(random_in_disk(rng, 0.9));
    return pts;
}

bool is_at(Complex a, Complex b) { return std::abs(a - b) <= 1e-6; }

void scenario_properties(const Scenario& s, std::mt19937_64& rng, std::vector<PropertyResult>& out) {
    const auto& v = s.op;
    const auto& tol = s.tol;
    const Complex z0 = s.z0();
    const ResolventFn r(v, s.family, tol);
    const auto pts = interior_points(s, rng);

    {
        const FamilyReport fr = validate_family(s.family, v, pts, tol);
        PropertyResult p;
        p.name = "family_contractive";
        p.scope = "scenario";
        p.pass = fr.ok;
        p.worst = fr.max_norm;
        p.tolerance = 1.0 + tol.eps_unit;
        p.trials = pts.size();
        out.push_back(p);
    }
    {
        UpperCheck c("cayley_roundtrip", "scenario", 10.0 * tol.eps_eq);
        for (Complex z : {z0, Complex{0.5, 0.0}, Complex{-0.3, 0.4}, random_in_disk(rng, 0.9)}) {
            c.add(max_deviation(inverse_cayley(cayley(v, z, tol), z, tol).partial_matrix(), v.partial_matrix()));
        }
        out.push_back(c.done());
    }
    UpperCheck contractive("extension_contractive", "scenario", tol.eps_unit);
    UpperCheck inin_chum("inin_matches_chumakin", "scenario", 10.0 * tol.eps_eq);
    UpperCheck z0_ind("z0_independence", "scenario", 10.0 * tol.eps_eq);
    for (Complex z : pts) {
        const ComplexMatrix t = r.frozen_extension(z);
        contractive.add(sigma_max(t) - 1.0);
        inin_chum.add(max_deviation(r(z), chumakin_via_recovered(v, t, z, tol)));
        z0_ind.add(z0_roundtrip(v, t, tol));
    }
    out.push_back(contractive.done());
    out.push_back(inin_chum.done());
    out.push_back(z0_ind.done());

    {
        UpperCheck c("resolvent_relation", "scenario", 10.0 * tol.eps_eq);
        if (z0 != Complex{0.0, 0.0}) {
            for (Complex u : pts) {
                if (std::abs(u) <= 1e-6 || is_at(u, z0)) continue;
                c.add(max_deviation(relation_value(r, u, tol), r(u)));
                const Complex ext = 1.0 / std::conj(u);
                if (!is_at(ext, 1.0 / std::conj(z0))) c.add(max_deviation(relation_value(r, ext, tol), r(ext)));
            }
        }
        out.push_back(c.done());
    }
    {
        LowerCheck c("herglotz", "scenario", -tol.eps_eq);
        std::vector<ComplexVector> hs;
        const auto n = static_cast<Eigen::Index>(v.ambient_dim());
        for (Eigen::Index i = 0; i < n; ++i) hs.push_back(ComplexVector::Unit(n, i));
        for (int k = 0; k < 3; ++k) hs.push_back(random_vector(n, rng));
        for (Complex z : pts) c.add(herglotz_check(r, {z}, hs));
        out.push_back(c.done());
    }

    LowerCheck decomp("decompositions_direct", "scenario", tol.eps_rank);
    UpperCheck lemma("lemma51_identity", "scenario", tol.eps_eq);
    UpperCheck w_iso("W_isometric", "scenario", tol.eps_unit);
    UpperCheck agree("criteria_agreement", "scenario", 0.0);
    for (Complex zeta : circle_points(8, 0.1)) {
        if (!regular_type(v, std::conj(zeta), tol).is_regular) continue;
        const auto d = decompositions(v, zeta, tol);
        decomp.add(d.all_valid() ? d.directness_measure() : 0.0);
        lemma.add(lemma51_identity(v, zeta, tol));
        for (Complex base : {Complex{0.0, 0.0}, z0}) {
            const auto g = build_W(v, zeta, base, tol);
            w_iso.add(std::max(isometry_defect(g.w_op.matrix), isometry_defect(g.w_op.matrix.adjoint())));
        }
        if (s.family.evaluable_at(zeta)) {
            const auto cr = surjectivity_criterion(v, s.family.at(zeta), zeta, tol, z0);
            const bool bad = (cr.surjective != cr.crosscheck_rank) || (cr.eigen.is_eigenvalue == cr.crosscheck_rank);
            agree.add(bad ? 1.0 : 0.0);
        }
    }
    out.push_back(decomp.done());
    out.push_back(lemma.done());
    out.push_back(w_iso.done());
    out.push_back(agree.done());

    {
        UpperCheck c("prop21_agreement", "scenario", 0.0);
        for (Complex base : {z0, Complex{0.3, 0.2}}) {
            for (int k = 0; k < 8; ++k) {
                const Complex zeta = random_in_disk(rng, 3.0);
                if (std::abs(zeta) <= 1e-6 || is_at(zeta, base)) continue;
                const auto p = prop21_check(v, base, zeta, tol);
                c.add(p.cond_i == p.cond_ii ? 0.0 : 1.0);
            }
        }
        out.push_back(c.done());
    }
}

void random_properties(std::mt19937_64& rng, std::size_t count, std::vector<PropertyResult>& out) {
    const TolerancePolicy tol;
    UpperCheck inin_chum("inin_matches_chumakin", "random", 10.0 * tol.eps_eq);
    UpperCheck relation("resolvent_relation", "random", 10.0 * tol.eps_eq);
    UpperCheck inversion("inversion_formula", "random", 10.0 * tol.eps_eq);
    UpperCheck exterior("exterior_branch", "random", 10.0 * tol.eps_eq);
    UpperCheck prop21("prop21_agreement", "random", 0.0);
    LowerCheck decomp("decompositions_direct", "random", tol.eps_rank);
    UpperCheck lemma("lemma51_identity", "random", tol.eps_eq);
    UpperCheck eigen("eigen_criterion_vs_eigensolve", "random", 0.0);
    UpperCheck witness("eigen_witness_residual", "random", 1e-7);
    UpperCheck surj("surjectivity_agreement", "random", 0.0);
    UpperCheck z0_ind("z0_independence", "random", 10.0 * tol.eps_eq);
    LowerCheck herglotz("herglotz", "random", -tol.eps_eq);
    UpperCheck roundtrip("cayley_roundtrip", "random", 10.0 * tol.eps_eq);

    for (std::size_t trial = 0; trial < count; ++trial) {
        const IsometricOperator v = random_instance(rng);
        const auto n = static_cast<Eigen::Index>(v.ambient_dim());
        const ComplexMatrix id = identity(v);
        const Complex z0 = random_in_disk(rng, 0.7);

        roundtrip.add(max_deviation(inverse_cayley(cayley(v, z0, tol), z0, tol).partial_matrix(), v.partial_matrix()));

        const ResolventFn r(v, random_constant_family(v, z0, false, rng, tol), tol);
        const ComplexMatrix t = r.frozen_extension(Complex{0.0, 0.0});
        z0_ind.add(z0_roundtrip(v, t, tol));
        std::vector<ComplexVector> hs{random_vector(n, rng), random_vector(n, rng)};
        for (int k = 0; k < 4; ++k) {
            const Complex u = random_in_disk(rng, 0.95);
            inin_chum.add(max_deviation(r(u), chumakin_via_recovered(v, t, u, tol)));
            herglotz.add(herglotz_check(r, {u}, hs));
            if (std::abs(u) > 1e-6 && !is_at(u, z0)) {
                relation.add(max_deviation(relation_value(r, u, tol), r(u)));
                relation.add(max_deviation(relation_value(r, 1.0 / std::conj(u), tol), r(1.0 / std::conj(u))));
            }
        }

        {
            const ComplexMatrix u = random_unitary(static_cast<std::size_t>(n), rng);
            std::vector<InversionSample> samples;
            for (int k = 0; k < 5; ++k) samples.push_back({random_in_disk(rng, 0.95), random_vector(n, rng), random_vector(n, rng)});
            inversion.add(verify_inversion(u, samples, tol));
        }

        {
            const ResolventFn ru(v, random_constant_family(v, z0, true, rng, tol), tol);
            const ComplexMatrix tu = ru.frozen_extension(Complex{0.0, 0.0});
            for (int k = 0; k < 3; ++k) {
                const Complex z = std::polar(1.1 + 1.8 * std::uniform_real_distribution<double>(0.0, 1.0)(rng),
                                             std::uniform_real_distribution<double>(0.0, 2.0 * kPi)(rng));
                exterior.add(max_deviation(exterior_value(ru, z), guarded_inverse(id - z * tu, tol)));
            }
        }

        {
            const Complex mu = random_unimodular(rng);
            const auto d = v.domain_dim();
            const IsometricOperator planted =
                random_isometric_with_eigenvalue(static_cast<std::size_t>(n), d, mu, rng);
            for (const auto& [op, zeta] : {std::pair{&v, random_in_disk(rng, 3.0)}, std::pair{&planted, 1.0 / mu}}) {
                if (std::abs(zeta) <= 1e-6 || is_at(zeta, z0)) continue;
                const auto p = prop21_check(*op, z0, zeta, tol);
                prop21.add(p.cond_i == p.cond_ii ? 0.0 : 1.0);
            }
        }

        const Complex zeta = random_unimodular(rng);
        if (regular_type(v, std::conj(zeta), tol).is_regular) {
            const auto d = decompositions(v, zeta, tol);
            decomp.add(d.all_valid() ? d.directness_measure() : 0.0);
            lemma.add(lemma51_identity(v, zeta, tol));
        }

        {
            // Unitary V (+) C: each eigenvalue mu makes lam = conj(mu) an eigenvalue point.
            const std::size_t k = defect_source(v, Complex{0.0, 0.0}, tol).dim();
            const ContractionOp c(defect_source(v, Complex{0.0, 0.0}, tol), defect_target(v, Complex{0.0, 0.0}, tol),
                                  random_unitary(k, rng));
            const ComplexMatrix u = v.partial_matrix() + c.ambient();
            Eigen::ComplexEigenSolver<ComplexMatrix> es(u);
            const auto ev = es.eigenvalues();
            for (Eigen::Index j = 0; j < ev.size(); ++j) {
                const Complex lam = std::conj(ev(j)) / std::abs(ev(j));
                if (!regular_type(v, 1.0 / lam, tol).is_regular) continue;
                const auto e = eigen_criterion(v, c, lam, tol);
                eigen.add(e.is_eigenvalue ? 0.0 : 1.0);
                if (e.witness) witness.add(e.witness_residual);
                const auto cr = surjectivity_criterion(v, c, lam, tol);
                surj.add(cr.surjective == cr.crosscheck_rank ? 0.0 : 1.0);
            }
            for (int m = 0; m < 5; ++m) {
                const Complex lam = random_unimodular(rng);
                if (!regular_type(v, 1.0 / lam, tol).is_regular) continue;
                double gap = std::numeric_limits<double>::infinity();
                for (Eigen::Index j = 0; j < ev.size(); ++j) gap = std::min(gap, std::abs(std::conj(lam) - ev(j)));
                if (gap < 1e-6) continue;
                const auto cr = surjectivity_criterion(v, c, lam, tol);
                eigen.add(cr.eigen.is_eigenvalue ? 1.0 : 0.0);
                surj.add(cr.surjective == cr.crosscheck_rank ? 0.0 : 1.0);
            }
        }
    }
    for (auto* c : {&inin_chum, &relation, &inversion, &exterior, &prop21, &lemma, &eigen, &witness, &surj, &z0_ind,
                    &roundtrip}) {
        out.push_back(c->done());
    }
    out.push_back(decomp.done());
    out.push_back(herglotz.done());
}

}  // namespace

std::vector<PropertyResult> run_property_suite(const Scenario& scenario, std::uint64_t seed,
                                               std::size_t random_instances) {
    std::mt19937_64 rng(seed);
    std::vector<PropertyResult> out;
    scenario_properties(scenario, rng, out);
    random_properties(rng, random_instances, out);
    return out;
}

}  // namespace isores
