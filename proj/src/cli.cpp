#include "isores/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace isores {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw InputError(where + ": " + what);
}

Complex parse_complex(const Json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    bad(where, "expected a complex number [re, im] or a real number");
}

ComplexVector parse_vector(const Json& j, std::size_t n, const std::string& where) {
    if (!j.is_array() || j.size() != n) bad(where, "expected a vector of length " + std::to_string(n));
    ComplexVector out(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) out(static_cast<Eigen::Index>(i)) = parse_complex(j[i], where);
    return out;
}

ComplexMatrix parse_columns(const Json& j, std::size_t n, const std::string& where) {
    if (!j.is_array()) bad(where, "expected a list of column vectors");
    if (j.size() > n) bad(where, "more vectors than the ambient dimension");
    ComplexMatrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(j.size()));
    for (std::size_t k = 0; k < j.size(); ++k) {
        out.col(static_cast<Eigen::Index>(k)) = parse_vector(j[k], n, where + "[" + std::to_string(k) + "]");
    }
    return out;
}

ComplexMatrix parse_matrix(const Json& j, std::size_t rows, std::size_t cols, const std::string& where) {
    const std::string shape = std::to_string(rows) + " x " + std::to_string(cols);
    if (!j.is_array()) bad(where, "expected a " + shape + " matrix as a list of rows");
    if (rows == 0 && j.empty()) return ComplexMatrix(0, static_cast<Eigen::Index>(cols));
    if (j.size() != rows) bad(where, "expected a " + shape + " matrix, got " + std::to_string(j.size()) + " rows");
    ComplexMatrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) bad(where, "expected a " + shape + " matrix");
        for (std::size_t c = 0; c < cols; ++c) {
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = parse_complex(j[r][c], where);
        }
    }
    return out;
}

void check_basis(const ComplexMatrix& b, const TolerancePolicy& tol, const std::string& which) {
    if (!b.allFinite()) bad(which, "non-finite entries");
    const double residual = isometry_defect(b);
    if (residual > tol.eps_unit) {
        const bool deficient = sigma_min(b) <= tol.eps_rank;
        std::ostringstream msg;
        msg << (deficient ? "rank-deficient" : "not orthonormal") << " (Gram residual " << residual << ")";
        bad(which, msg.str());
    }
}

TolerancePolicy parse_tolerance(const Json& doc) {
    TolerancePolicy tol;
    if (!doc.contains("toler")) return tol;
    const Json& t = doc["toler"];
    if (!t.is_object()) bad("toler", "expected an object");
    auto field = [&](const char* key, double& dst) {
        if (!t.contains(key)) return;
        if (!t[key].is_number()) bad(std::string("toler.") + key, "expected a number");
        dst = t[key].get<double>();
    };
    field("eps_rank", tol.eps_rank);
    field("eps_eq", tol.eps_eq);
    field("eps_unit", tol.eps_unit);
    try {
        tol.validate();
    } catch (const std::invalid_argument& e) {
        bad("toler", e.what());
    }
    return tol;
}

ParameterFamily parse_family(const Json& doc, const IsometricOperator& v, Complex z0, const TolerancePolicy& tol) {
    if (!doc.contains("family") || !doc["family"].is_object()) bad("family", "missing or not an object");
    const Json& f = doc["family"];
    if (!f.contains("kind") || !f["kind"].is_string()) bad("family.kind", "missing");
    const std::string kind = f["kind"].get<std::string>();
    const std::size_t cols = defect_source(v, z0, tol).dim();
    const std::size_t rows = defect_target(v, z0, tol).dim();
    auto matrix = [&](const Json& j, const std::string& where) {
        return parse_matrix(j, rows, cols, where);
    };
    try {
        if (kind == "constant") {
            if (!f.contains("matrix")) bad("family.matrix", "missing");
            return ParameterFamily(ParameterFamily::Constant{matrix(f["matrix"], "family.matrix")}, v, z0, tol);
        }
        if (kind == "blaschke") {
            if (!f.contains("matrix") || !f.contains("a")) bad("family", "blaschke needs \"a\" and \"matrix\"");
            return ParameterFamily(
                ParameterFamily::Blaschke{parse_complex(f["a"], "family.a"), matrix(f["matrix"], "family.matrix")}, v,
                z0, tol);
        }
        if (kind == "table") {
            if (!f.contains("points") || !f["points"].is_array()) bad("family.points", "missing");
            ParameterFamily::Table table;
            for (std::size_t k = 0; k < f["points"].size(); ++k) {
                const Json& p = f["points"][k];
                const std::string where = "family.points[" + std::to_string(k) + "]";
                if (!p.is_object() || !p.contains("zeta") || !p.contains("matrix")) {
                    bad(where, "expected {\"zeta\": ..., \"matrix\": ...}");
                }
                table.points.emplace_back(parse_complex(p["zeta"], where + ".zeta"), matrix(p["matrix"], where + ".matrix"));
            }
            return ParameterFamily(std::move(table), v, z0, tol);
        }
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        bad("family", e.what());
    }
    bad("family.kind", "unknown kind \"" + kind + "\"");
}

std::vector<Complex> validation_grid(Complex z0) {
    std::vector<Complex> grid{Complex{0.0, 0.0}, z0};
    for (double r : {0.5, 0.9}) {
        for (int k = 0; k < 8; ++k) grid.push_back(std::polar(r, 2.0 * kPi * k / 8.0));
    }
    return grid;
}

Json num(double x) {
    return std::isfinite(x) ? Json(x) : Json(nullptr);
}

Json columns_json(const ComplexMatrix& b) {
    Json out = Json::array();
    for (Eigen::Index c = 0; c < b.cols(); ++c) {
        Json col = Json::array();
        for (Eigen::Index r = 0; r < b.rows(); ++r) col.push_back(to_json(b(r, c)));
        out.push_back(std::move(col));
    }
    return out;
}

Json header(const Scenario& s, const std::string& command, std::uint64_t seed) {
    Json h;
    h["tool"] = "isoresolvent";
    h["command"] = command;
    h["seed"] = seed;
    h["scenario"] = {{"ambient_dim", s.op.ambient_dim()},
                     {"domain_dim", s.op.domain_dim()},
                     {"z0", to_json(s.z0())},
                     {"family_kind", s.family.kind_name()}};
    h["tolerance"] = {{"eps_rank", s.tol.eps_rank}, {"eps_eq", s.tol.eps_eq}, {"eps_unit", s.tol.eps_unit}};
    return h;
}

Json defect_entry(const Scenario& s, DefectPoint p) {
    Json e;
    const DefectPair pair = defect_spaces(s.op, p, s.tol);
    e["zeta"] = p.is_infinity() ? Json("inf") : to_json(*p.value);
    e["dim_M"] = pair.m.dim();
    e["dim_N"] = pair.n.dim();
    e["M_basis"] = columns_json(pair.m.basis());
    e["N_basis"] = columns_json(pair.n.basis());
    if (p.is_infinity()) return e;
    const Complex z = *p.value;
    const auto rt = regular_type(s.op, z, s.tol);
    e["regular_type"] = {{"is_regular", rt.is_regular}, {"sigma_min", num(rt.sigma_min)}};
    if (std::abs(std::abs(z) - 1.0) <= s.tol.eps_unit) {
        if (regular_type(s.op, std::conj(z), s.tol).is_regular) {
            const auto d = decompositions(s.op, z, s.tol);
            Json dj;
            dj["all_valid"] = d.all_valid();
            dj["directness_measure"] = num(d.directness_measure());
            dj["direct"] = d.direct;
            dj["spanning"] = d.spanning;
            Json dir = Json::array();
            for (double x : d.directness) dir.push_back(num(x));
            dj["directness"] = std::move(dir);
            e["decompositions"] = std::move(dj);
        } else {
            e["decompositions"] = "precondition not met: conj(zeta) is not of regular type";
        }
    }
    return e;
}

CommandOutput run_defect(const Scenario& s, const CommandOptions& o) {
    CommandOutput out;
    out.report = header(s, "defect", o.seed);
    std::vector<DefectPoint> points;
    if (o.zeta) {
        points.push_back(DefectPoint::at(*o.zeta));
    } else {
        points = {DefectPoint::at(Complex{0.0, 0.0}), DefectPoint::infinity()};
        if (s.z0() != Complex{0.0, 0.0}) {
            points.push_back(DefectPoint::at(s.z0()));
            points.push_back(DefectPoint::at(1.0 / std::conj(s.z0())));
        }
    }
    Json entries = Json::array();
    for (const auto& p : points) entries.push_back(defect_entry(s, p));
    out.report["points"] = std::move(entries);
    return out;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

CommandOutput run_resolvent(const Scenario& s, const CommandOptions& o) {
    if (!o.zeta && !o.grid) throw InputError("resolvent: give --zeta re im or --grid N");
    std::vector<Complex> points;
    if (o.zeta) points.push_back(*o.zeta);
    if (o.grid) {
        if (*o.grid == 0) throw InputError("resolvent: --grid must be positive");
        for (double r : {0.5, 2.0}) {
            for (std::size_t k = 0; k < *o.grid; ++k) points.push_back(std::polar(r, 2.0 * kPi * k / *o.grid));
        }
    }
    const ResolventFn r(s.op, s.family, s.tol);
    CommandOutput out;
    out.report = header(s, "resolvent", o.seed);
    Json values = Json::array();
    std::ostringstream csv;
    csv << "zeta_re,zeta_im,entry_row,entry_col,value_re,value_im\n";
    for (Complex z : points) {
        const double a = std::abs(z);
        if (std::abs(a - 1.0) <= s.tol.eps_unit) throw InputError("resolvent: zeta on the unit circle");
        ComplexMatrix m;
        try {
            m = r(z);
        } catch (const NotEvaluable& e) {
            throw InputError(std::string("resolvent: ") + e.what());
        }
        const char* branch = a > 1.0 ? "exterior" : (s.z0() == Complex{0.0, 0.0} ? "chumakin" : "inin");
        values.push_back({{"zeta", to_json(z)}, {"branch", branch}, {"matrix", to_json(m)}});
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                csv << fmt(z.real()) << ',' << fmt(z.imag()) << ',' << i << ',' << j << ',' << fmt(m(i, j).real())
                    << ',' << fmt(m(i, j).imag()) << '\n';
            }
        }
    }
    out.report["values"] = std::move(values);
    if (o.grid) out.csv = csv.str();
    return out;
}

CommandOutput run_gap_scan(const Scenario& s, const CommandOptions& o) {
    if (!o.arc) throw InputError("gap-scan: --arc t1 t2 is required");
    if (o.samples == 0) throw InputError("gap-scan: --samples must be positive");
    GapReport rep;
    try {
        o.arc->validate();
        rep = arc_scan(s.op, s.family, *o.arc, o.samples, s.tol);
    } catch (const PreconditionViolated& e) {
        throw InputError(std::string("gap-scan: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("gap-scan: ") + e.what());
    }
    CommandOutput out;
    out.report = header(s, "gap-scan", o.seed);
    out.report["gap_report"] = to_json(rep);
    out.report["verdict"] = rep.verdict();
    out.exit_code = rep.certified ? kExitOk : kExitViolation;
    return out;
}

CommandOutput run_verify(const Scenario& s, const CommandOptions& o) {
    CommandOutput out;
    out.report = header(s, "verify", o.seed);
    const auto results = run_property_suite(s, o.seed);
    Json props = Json::array();
    bool all = true;
    for (const auto& p : results) {
        all = all && p.pass;
        props.push_back({{"name", p.name},
                         {"scope", p.scope},
                         {"pass", p.pass},
                         {"skipped", p.skipped},
                         {"worst", num(p.worst)},
                         {"tolerance", p.tolerance},
                         {"trials", p.trials}});
    }
    out.report["properties"] = std::move(props);
    out.report["all_pass"] = all;
    out.exit_code = all ? kExitOk : kExitViolation;
    return out;
}

}  // namespace

Json to_json(Complex z) {
    return Json::array({z.real(), z.imag()});
}

Json to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const GapReport& rep) {
    Json j;
    j["arc"] = {rep.arc.t1, rep.arc.t2};
    j["z0"] = to_json(rep.z0);
    j["family_kind"] = rep.family_kind;
    j["continuity_certification"] =
        rep.continuity == ContinuityCertification::Structural ? "structural" : "sampled";
    j["verdict"] = rep.verdict();
    j["witnesses"] = rep.witnesses;
    j["route_disagreements"] = rep.route_disagreements;
    Json samples = Json::array();
    for (const auto& s : rep.samples) {
        Json e;
        e["index"] = s.index;
        e["angle"] = s.angle;
        e["lambda"] = to_json(s.lambda);
        e["cond1"] = s.cond1;
        e["cond1_deviation"] = num(s.cond1_deviation);
        e["cond2"] = s.cond2;
        e["cond2_defect"] = num(s.cond2_defect);
        e["cond3"] = s.cond3;
        e["sigma_direct"] = num(s.sigma_direct);
        e["w_route"] = {{"cond3", s.cond3_w},
                        {"eigen", s.w_route.eigen.is_eigenvalue},
                        {"sigma_C_minus_W", num(s.w_route.eigen.sigma)},
                        {"cond_CW_onto", s.w_route.cond_CW_onto},
                        {"cond_PM", s.w_route.cond_PM},
                        {"crosscheck_rank", s.w_route.crosscheck_rank}};
        e["routes_agree"] = s.routes_agree;
        e["pass"] = s.pass;
        samples.push_back(std::move(e));
    }
    j["samples"] = std::move(samples);
    return j;
}

Scenario parse_scenario(std::string_view document) {
    Json doc;
    try {
        doc = Json::parse(document);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("scenario is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) bad("scenario", "expected a JSON object");
    const TolerancePolicy tol = parse_tolerance(doc);

    if (!doc.contains("ambient_dim") || !doc["ambient_dim"].is_number_integer() || doc["ambient_dim"].get<long>() <= 0) {
        bad("ambient_dim", "expected a positive integer");
    }
    const auto n = static_cast<std::size_t>(doc["ambient_dim"].get<long>());
    if (!doc.contains("domain_basis")) bad("domain_basis", "missing");
    if (!doc.contains("image_basis")) bad("image_basis", "missing");
    const ComplexMatrix d = parse_columns(doc["domain_basis"], n, "domain_basis");
    const ComplexMatrix y = parse_columns(doc["image_basis"], n, "image_basis");
    if (d.cols() != y.cols()) bad("image_basis", "must list as many vectors as domain_basis");
    check_basis(d, tol, "domain_basis");
    check_basis(y, tol, "image_basis");

    const Complex z0 = doc.contains("z0") ? parse_complex(doc["z0"], "z0") : Complex{0.0, 0.0};
    if (!(std::abs(z0) < 1.0)) bad("z0", "must lie in the open unit disk");

    IsometricOperator v = [&] {
        try {
            return IsometricOperator(d, y, tol);
        } catch (const std::exception& e) {
            bad("operator", e.what());
        }
    }();
    ParameterFamily fam = parse_family(doc, v, z0, tol);
    const FamilyReport fr = validate_family(fam, v, validation_grid(z0), tol);
    if (!fr.ok) {
        std::string msg;
        for (const auto& m : fr.violations) msg += (msg.empty() ? "" : "; ") + m;
        bad("family", msg);
    }
    return Scenario{std::move(v), std::move(fam), tol};
}

Scenario parse_scenario(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open scenario file " + path);
    return parse_scenario(in);
}

CommandOutput run_command(const Scenario& scenario, const std::string& command, const CommandOptions& options) {
    if (command == "defect") return run_defect(scenario, options);
    if (command == "resolvent") return run_resolvent(scenario, options);
    if (command == "gap-scan") return run_gap_scan(scenario, options);
    if (command == "verify") return run_verify(scenario, options);
    throw InputError("unknown command \"" + command + "\" (expected defect, resolvent, gap-scan or verify)");
}

}  // namespace isores
