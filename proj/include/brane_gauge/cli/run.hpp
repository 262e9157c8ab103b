#pragma once

// Batch front end: one command per invocation, a JSON report plus TSV tables.
// Exit status: 0 success, 2 validation failure, 3 schema error or malformed input,
// 64 unknown command.

#include "brane_gauge/cech/cech_line.hpp"
#include "brane_gauge/char_classes/char_classes.hpp"
#include "brane_gauge/io/json_io.hpp"
#include "brane_gauge/projective/twisted_complex.hpp"
#include "brane_gauge/torus/constant_complex.hpp"
#include "brane_gauge/yang_mills/ym.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace brane_gauge::cli {

using io::json;

enum ExitCode : int { kOk = 0, kValidationFailure = 2, kSchemaError = 3, kUnknownCommand = 64 };

enum class Backend { exact, floating };

struct JobConfig {
    std::string command;
    std::string input;   // JSON document; optional for cech and chi-check
    std::string output;  // directory for report.json and *.tsv; empty: report on stdout
    double tol = 1e-8;
    std::size_t seeds = 200;
    std::uint64_t seed = 42;
    int grid = 512;
    Backend backend = Backend::exact;
    ym::Mode mode = ym::Mode::total;
    std::optional<int> k;             // cech
    std::optional<std::string> lambda;  // ym-eval: "re,im;re,im;..."
    std::optional<std::string> space;   // chi-check without input: projective | torus
    int dim = 1;
    int rank = 1;
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> c{"validate", "gauge-exists", "gauge-space", "ym-solve",
                                            "ym-eval",  "euler-check",  "cech",        "chi-check"};
    return c;
}

struct Report {
    json body = json::object();
    std::map<std::string, std::string> tables;  // name -> TSV text
};

/// %.17g: round-trips every double.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Table {
public:
    explicit Table(std::vector<std::string> header) : cols_(header.size()) { row(header); }
    void row(const std::vector<std::string>& cells) {
        if (cells.size() != cols_) throw std::logic_error("Table: wrong number of cells");
        for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "\t" : "") << cells[i];
        out_ << '\n';
    }
    [[nodiscard]] std::string str() const { return out_.str(); }

private:
    std::size_t cols_;
    std::ostringstream out_;
};

namespace detail {

struct Failure {
    int code;
    std::string message;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io::SchemaError("cannot read input file " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline json strings(const std::vector<std::string>& v) { return json(v); }

inline json exact_scalar(const GaussRational& x) { return io::write_scalar(x); }
inline json exact_scalar(const Complex& x) { return io::write_scalar(x); }

inline std::vector<Complex> parse_lambda(const std::string& text) {
    std::vector<Complex> out;
    if (text.empty()) return out;
    std::stringstream all(text);
    std::string item;
    while (std::getline(all, item, ';')) {
        auto comma = item.find(',');
        try {
            std::size_t pos = 0;
            double re = std::stod(item.substr(0, comma), &pos);
            double im = comma == std::string::npos ? 0.0 : std::stod(item.substr(comma + 1));
            out.emplace_back(re, im);
        } catch (const std::exception&) {
            throw io::SchemaError("malformed --lambda entry \"" + item + "\" (expected re,im)");
        }
    }
    return out;
}

template <class S>
io::TorusDoc<Complex> to_float(const io::TorusDoc<S>& d) {
    if constexpr (std::is_same_v<S, Complex>) {
        return d;
    } else {
        io::TorusDoc<Complex> f;
        f.g = d.g;
        for (const auto& [i, r] : d.complex.dims()) f.complex.set_dim(i, r);
        for (const auto& [i, m] : d.complex.differentials()) f.complex.set_differential(i, convert<Complex>(m));
        f.connection.g = d.connection.g;
        for (const auto& [i, mats] : d.connection.a)
            for (const auto& m : mats) f.connection.a[i].push_back(convert<Complex>(m));
        for (const auto& [i, h] : d.metrics) f.metrics[i] = convert<Complex>(h);
        for (const auto& v : d.variations) {
            torus::VariationClass<Complex> w;
            w.element.degree = v.element.degree;
            w.element.nblocks = v.element.nblocks;
            for (const auto& [i, mats] : v.element.components)
                for (const auto& m : mats) w.element.components[i].push_back(convert<Complex>(m));
            f.variations.push_back(std::move(w));
        }
        f.lambda = d.lambda;
        return f;
    }
}

inline ym::YMPolynomialSet<RealPoly> to_float(const ym::YMPolynomialSet<RealPoly>& p) { return p; }
inline ym::YMPolynomialSet<RealPoly> to_float(const ym::YMPolynomialSet<ExactRealPoly>& p) {
    ym::YMPolynomialSet<RealPoly> f;
    f.nvars = p.nvars;
    f.signs = p.signs;
    f.total = brane_gauge::to_float(p.total);
    for (const auto& [i, q] : p.per_degree) f.per_degree[i] = brane_gauge::to_float(q);
    return f;
}

template <class S>
std::vector<std::string> torus_violations(const io::TorusDoc<S>& d, double tol) {
    std::vector<std::string> v = torus::validate_connection(d.complex, d.connection, tol).violations;
    for (const auto& [i, h] : d.metrics) {
        if (d.complex.dim(i) == 0) {
            v.push_back("metric given at degree " + std::to_string(i) + " where the complex is zero");
            continue;
        }
        if (!(h - h.adjoint()).is_zero(tol)) v.push_back("metric at degree " + std::to_string(i) + " is not Hermitian");
        else {
            Eigen::MatrixXcd e = la::to_eigen(convert<Complex>(h));
            Eigen::LLT<Eigen::MatrixXcd> llt(e);
            if (llt.info() != Eigen::Success) v.push_back("metric at degree " + std::to_string(i) + " is not positive definite");
        }
    }
    for (std::size_t a = 0; a < d.variations.size(); ++a) {
        const auto& e = d.variations[a].element;
        try {
            check_hom_shape(e, d.complex, d.complex);
            if (!hom_differential(e, d.complex, d.complex).is_zero(tol))
                v.push_back("variation " + std::to_string(a) + " is not a cocycle");
        } catch (const std::invalid_argument& ex) {
            v.push_back("variation " + std::to_string(a) + ": " + ex.what());
        }
    }
    if (d.lambda && !d.variations.empty() && d.lambda->size() != d.variations.size())
        v.push_back("lambda has " + std::to_string(d.lambda->size()) + " entries for " +
                    std::to_string(d.variations.size()) + " variations");
    return v;
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

inline int validation_result(Report& r, const std::vector<std::string>& violations,
                             const std::vector<std::string>& warnings = {}) {
    r.body["valid"] = violations.empty();
    r.body["violations"] = strings(violations);
    r.body["warnings"] = strings(warnings);
    Table t({"kind", "message"});
    for (const auto& s : violations) t.row({"violation", s});
    for (const auto& s : warnings) t.row({"warning", s});
    r.tables["validation"] = t.str();
    return violations.empty() ? kOk : kValidationFailure;
}

template <class S>
int validate_doc(const io::Document<S>& doc, const JobConfig& cfg, Report& r) {
    if (auto* p = std::get_if<projective::TwistedComplex>(&doc)) {
        auto v = projective::validate(*p);
        return validation_result(r, v.violations, v.warnings);
    }
    if (auto* t = std::get_if<io::TorusDoc<S>>(&doc)) return validation_result(r, torus_violations(*t, cfg.tol));
    if (auto* c = std::get_if<io::ConeDoc<S>>(&doc)) {
        auto v = torus::compatible_map_violations(c->compatible_map(), cfg.tol);
        for (const auto& s : torus_violations(c->source, cfg.tol)) v.push_back("source: " + s);
        for (const auto& s : torus_violations(c->target, cfg.tol)) v.push_back("target: " + s);
        return validation_result(r, v);
    }
    const auto& l = std::get<cech::CechLineBundle>(doc);
    std::vector<std::string> v;
    if (!cech::metric_consistent(l))
        v.push_back("metric (1+|z|^2)^" + std::to_string(l.metric.s) + " does not glue for k = " + std::to_string(l.k));
    return validation_result(r, v);
}

/// Shared by `cech` and the line-bundle route of `gauge-exists`.
inline int cech_pipeline(const cech::CechLineBundle& l, const JobConfig& cfg, Report& r) {
    auto zeta = cech::zeta_cocycle(l);
    auto dec = cech::is_coboundary(zeta);
    json z = json::object();
    for (const auto& [n, c] : zeta.coeffs) z[std::to_string(n)] = format_rational(c);
    r.body["k"] = l.k;
    r.body["metric_exponent"] = l.metric.s;
    r.body["zeta"] = z;
    r.body["exists"] = dec.is_coboundary;
    r.body["obstruction"] = format_rational(dec.obstruction);
    if (dec.is_coboundary) {
        json b0 = json::object(), b1 = json::object();
        for (const auto& [n, c] : dec.beta0) b0[std::to_string(n)] = format_rational(c);
        for (const auto& [n, c] : dec.beta1) b1[std::to_string(n)] = format_rational(c);
        r.body["beta0"] = b0;
        r.body["beta1"] = b1;
    }
    r.body["metric_consistent"] = cech::metric_consistent(l);
    if (!cech::metric_consistent(l)) {
        r.body["error"] = "metric does not glue across the charts";
        return kValidationFailure;
    }
    auto c1 = cech::chern_integral(l, cfg.grid);
    r.body["grid"] = cfg.grid;
    r.body["c1"] = c1.value;
    r.body["c1_coarse"] = c1.coarse;
    r.body["c1_fine"] = c1.fine;
    r.body["c1_error_estimate"] = c1.error_estimate;
    Table t({"k", "exists", "obstruction", "c1", "c1_error_estimate"});
    t.row({std::to_string(l.k), dec.is_coboundary ? "1" : "0", format_rational(dec.obstruction), fmt17(c1.value),
           fmt17(c1.error_estimate)});
    r.tables["cech"] = t.str();
    return kOk;
}

template <class S>
int gauge_exists(const io::Document<S>& doc, const JobConfig& cfg, Report& r) {
    if (auto* p = std::get_if<projective::TwistedComplex>(&doc)) {
        auto v = projective::validate(*p);
        if (!v.valid) return validation_result(r, v.violations, v.warnings);
        auto g = projective::gauge_field_exists(*p);
        r.body["route"] = "minimal_twists";
        r.body["exists"] = g.exists;
        r.body["minimized"] = io::write_projective(g.minimized);
        json steps = json::array();
        Table t({"step", "degree", "source", "target", "twist", "pivot_re", "pivot_im"});
        for (std::size_t s = 0; s < g.steps.size(); ++s) {
            const auto& e = g.steps[s];
            steps.push_back({{"degree", e.degree}, {"source", e.source}, {"target", e.target}, {"twist", e.twist},
                             {"pivot", io::write_scalar(e.pivot)}});
            t.row({std::to_string(s), std::to_string(e.degree), std::to_string(e.source), std::to_string(e.target),
                   std::to_string(e.twist), format_rational(e.pivot.re()), format_rational(e.pivot.im())});
        }
        r.body["eliminations"] = steps;
        r.tables["eliminations"] = t.str();
        if (g.offending) r.body["offending"] = {{"degree", g.offending->first}, {"twist", g.offending->second}};
        if (g.exists) {
            json field = json::object();
            for (const auto& [q, m] : g.canonical_field) field[std::to_string(q)] = io::write_matrix(m);
            r.body["canonical_field"] = field;
        }
        return kOk;
    }
    if (auto* t = std::get_if<io::TorusDoc<S>>(&doc)) {
        // trivial bundles with constant differentials: d itself is a holomorphic gauge field
        auto v = torus_violations(*t, cfg.tol);
        if (!v.empty()) return validation_result(r, v);
        r.body["route"] = "constant_connection";
        r.body["exists"] = true;
        r.body["given_connection_compatible"] = true;
        Table tab({"degree", "rank"});
        for (const auto& [i, rank] : t->complex.dims()) tab.row({std::to_string(i), std::to_string(rank)});
        r.tables["terms"] = tab.str();
        return kOk;
    }
    if (auto* l = std::get_if<cech::CechLineBundle>(&doc)) {
        r.body["route"] = "cech_residue";
        return cech_pipeline(*l, cfg, r);
    }
    throw io::SchemaError("gauge-exists: unsupported model torus_cone");
}

template <class S>
int gauge_space(const io::Document<S>& doc, const JobConfig& cfg, Report& r) {
    if (auto* p = std::get_if<projective::TwistedComplex>(&doc)) {
        auto v = projective::validate(*p);
        if (!v.valid) return validation_result(r, v.violations, v.warnings);
        auto s = projective::gauge_space_dimension(*p);
        r.body["dimension"] = s.dimension;
        r.body["cochain_dimension"] = s.cochain_dimension;
        r.body["cocycle_dimension"] = s.cocycle_dimension;
        r.body["coboundary_dimension"] = s.coboundary_dimension;
        r.body["max_twist_difference"] = s.max_twist_difference;
        Table t({"dimension", "cochain_dimension", "cocycle_dimension", "coboundary_dimension", "max_twist_difference"});
        t.row({std::to_string(s.dimension), std::to_string(s.cochain_dimension), std::to_string(s.cocycle_dimension),
               std::to_string(s.coboundary_dimension), std::to_string(s.max_twist_difference)});
        r.tables["gauge_space"] = t.str();
        return kOk;
    }
    if (auto* t = std::get_if<io::TorusDoc<S>>(&doc)) {
        auto v = torus_violations(*t, cfg.tol);
        if (!v.empty()) return validation_result(r, v);
        auto gs = torus::gauge_space_basis(t->complex, t->g, cfg.tol);
        r.body["g"] = t->g;
        r.body["dimension"] = gs.dimension();
        r.body["endo_dimension"] = gs.endo_dimension;
        json basis = json::array();
        for (const auto& b : gs.basis) basis.push_back(io::write_blocks(b.element.components));
        r.body["basis"] = basis;
        Table tab({"g", "endo_dimension", "dimension"});
        tab.row({std::to_string(t->g), std::to_string(gs.endo_dimension), std::to_string(gs.dimension())});
        r.tables["gauge_space"] = tab.str();
        return kOk;
    }
    throw io::SchemaError("gauge-space: expects a projective or torus document");
}

/// Instance and assembled functional for the YM commands.
struct YMSetup {
    ym::YMInstance<Complex> inst;
    ym::YMPolynomialSet<RealPoly> polys;
};

template <class S>
std::optional<YMSetup> ym_setup(const io::TorusDoc<S>& d, const JobConfig& cfg, Report& r, int& status) {
    auto v = torus_violations(d, cfg.tol);
    if (!v.empty()) {
        status = validation_result(r, v);
        return std::nullopt;
    }
    std::vector<std::string> warnings;
    if (!d.metrics.empty()) warnings.push_back("term metrics are ignored: the functional uses the standard metric on each F^i");
    r.body["warnings"] = strings(warnings);
    auto basis = d.variations.empty() ? torus::gauge_space_basis(d.complex, d.g, cfg.tol).basis : d.variations;
    auto inst = ym::make_instance(d.complex, d.connection, basis, cfg.tol);
    YMSetup s;
    s.polys = to_float(ym::assemble(inst, cfg.tol));
    auto fd = to_float(d);
    auto fbasis = fd.variations.empty() ? torus::gauge_space_basis(fd.complex, fd.g, cfg.tol).basis : fd.variations;
    if constexpr (!std::is_same_v<S, Complex>) {
        // keep the exact basis so both backends parametrize the same family
        fbasis.clear();
        for (const auto& b : basis) {
            torus::VariationClass<Complex> w;
            w.element.degree = b.element.degree;
            w.element.nblocks = b.element.nblocks;
            for (const auto& [i, mats] : b.element.components)
                for (const auto& m : mats) w.element.components[i].push_back(convert<Complex>(m));
            fbasis.push_back(std::move(w));
        }
    }
    s.inst = ym::make_instance(fd.complex, fd.connection, fbasis, cfg.tol);
    r.body["g"] = d.g;
    r.body["m"] = basis.size();
    r.body["nvars"] = s.polys.nvars;
    json sg = json::object();
    for (const auto& [i, sign] : s.polys.signs) sg[std::to_string(i)] = sign;
    r.body["signs"] = sg;
    return s;
}

inline const char* mode_name(ym::Mode m) { return m == ym::Mode::total ? "total" : "per-degree"; }

template <class S>
int ym_solve(const io::TorusDoc<S>& d, const JobConfig& cfg, Report& r) {
    int status = kOk;
    auto setup = ym_setup(d, cfg, r, status);
    if (!setup) return status;
    auto eqs = ym::stationarity_system(setup->polys, cfg.mode);
    ym::SolveOptions opt;
    opt.seeds = cfg.seeds;
    opt.seed = cfg.seed;
    opt.tol = cfg.tol;
    auto res = ym::solve(setup->polys, cfg.mode, opt);
    auto count = ym::count_report(res);
    r.body["mode"] = mode_name(cfg.mode);
    r.body["seeds"] = cfg.seeds;
    r.body["seed"] = cfg.seed;
    r.body["equations"] = eqs.size();
    r.body["max_equation_degree"] = ym::max_equation_degree(eqs);
    std::size_t escaped = 0;
    for (const auto& s : res.starts) escaped += s.escaped ? 1 : 0;
    r.body["converged_starts"] = res.converged_starts();
    r.body["escaped_starts"] = escaped;
    r.body["count_report"] = {{"m", count.m},
                              {"isolated", count.isolated},
                              {"degenerate", count.degenerate},
                              {"all_critical", count.all_critical},
                              {"bezout_ceiling", count.bezout_ceiling},
                              {"bound_applies", count.bound_applies},
                              {"bound_holds", count.bound_holds}};
    const std::size_t m = res.nvars / 2;
    std::vector<std::string> header{"cluster"};
    for (std::size_t a = 0; a < m; ++a) {
        header.push_back("lambda" + std::to_string(a + 1) + "_re");
        header.push_back("lambda" + std::to_string(a + 1) + "_im");
    }
    header.insert(header.end(), {"residual", "hessian_rank", "ym_value"});
    for (const auto& [i, p] : setup->polys.per_degree) header.push_back("flat_" + std::to_string(i));
    Table t(header);
    json clusters = json::array();
    for (std::size_t c = 0; c < res.clusters.size(); ++c) {
        const auto& cp = res.clusters[c];
        std::vector<std::string> row{std::to_string(c)};
        json lam = json::array();
        for (const auto& z : cp.lambda) {
            row.push_back(fmt17(z.real()));
            row.push_back(fmt17(z.imag()));
            lam.push_back(io::write_scalar(z));
        }
        row.push_back(fmt17(cp.residual));
        row.push_back(std::to_string(cp.hessian_rank));
        row.push_back(fmt17(cp.ym_value));
        json flat = json::object();
        for (const auto& [i, p] : setup->polys.per_degree) {
            bool f = cp.flat.count(i) ? cp.flat.at(i) : false;
            row.push_back(f ? "1" : "0");
            flat[std::to_string(i)] = f;
        }
        t.row(row);
        json pd = json::object();
        for (const auto& [i, v] : ym::is_yang_mills_per_degree(setup->inst, cp.lambda, cfg.tol)) pd[std::to_string(i)] = v;
        clusters.push_back({{"cluster", c},
                            {"lambda", lam},
                            {"residual", cp.residual},
                            {"hessian_rank", cp.hessian_rank},
                            {"isolated", cp.hessian_rank == res.nvars},
                            {"ym_value", cp.ym_value},
                            {"flat", flat},
                            {"per_degree_residual", pd},
                            {"members", cp.members}});
    }
    r.body["clusters"] = clusters;
    r.tables["clusters"] = t.str();
    return kOk;
}

template <class S>
int ym_eval(const io::TorusDoc<S>& d, const JobConfig& cfg, Report& r) {
    int status = kOk;
    auto setup = ym_setup(d, cfg, r, status);
    if (!setup) return status;
    std::vector<Complex> lambda;
    if (cfg.lambda) lambda = parse_lambda(*cfg.lambda);
    else if (d.lambda) lambda = *d.lambda;
    const std::size_t m = setup->polys.nvars / 2;
    if (!cfg.lambda && !d.lambda) lambda.assign(m, Complex(0, 0));
    if (lambda.size() != m)
        return validation_result(r, {"lambda has " + std::to_string(lambda.size()) + " entries, the gauge space has dimension " +
                                     std::to_string(m)});
    std::vector<double> x;
    for (const auto& z : lambda) {
        x.push_back(z.real());
        x.push_back(z.imag());
    }
    double total = setup->polys.total.evaluate(x);
    double grad = 0.0;
    for (const auto& e : ym::stationarity_system(setup->polys, ym::Mode::total)) grad = std::max(grad, std::abs(e.evaluate(x)));
    // direct curvature computation as a cross-check of the assembled polynomial
    auto pieces = ym::induced_pieces(setup->inst, cfg.tol);
    auto theta = ym::theta_at(setup->inst, pieces, lambda);
    double direct = std::real(torus::ym_value(theta, setup->inst.metrics));
    auto pd = ym::is_yang_mills_per_degree(setup->inst, lambda, cfg.tol);
    json lam = json::array();
    for (const auto& z : lambda) lam.push_back(io::write_scalar(z));
    r.body["lambda"] = lam;
    r.body["ym_value"] = total;
    r.body["ym_value_direct"] = direct;
    r.body["gradient_max"] = grad;
    json per = json::object();
    Table t({"degree", "sign", "norm", "flat", "per_degree_residual"});
    for (const auto& [i, p] : setup->polys.per_degree) {
        double v = p.evaluate(x);
        double res = pd.count(i) ? pd.at(i) : 0.0;
        per[std::to_string(i)] = {{"sign", setup->polys.signs.at(i)}, {"norm", v}, {"flat", v <= cfg.tol}, {"per_degree_residual", res}};
        t.row({std::to_string(i), std::to_string(setup->polys.signs.at(i)), fmt17(v), v <= cfg.tol ? "1" : "0", fmt17(res)});
    }
    r.body["per_degree"] = per;
    r.tables["ym_eval"] = t.str();
    return kOk;
}

template <class S>
int euler_check(const io::Document<S>& doc, const JobConfig& cfg, Report& r) {
    constexpr bool exact = ScalarTraits<S>::exact;
    const double bound = exact ? 0.0 : 1e-9;
    if (auto* t = std::get_if<io::TorusDoc<S>>(&doc)) {
        auto v = torus_violations(*t, cfg.tol);
        if (!v.empty()) return validation_result(r, v);
        auto e = torus::euler_poincare_check(t->complex, t->connection, cfg.tol);
        r.body["check"] = "trace_form_alternating_sum";
        r.body["lhs"] = io::write_scalar(e.lhs);
        r.body["rhs"] = io::write_scalar(e.rhs);
        r.body["residual"] = e.residual;
        r.body["holds"] = e.residual <= bound;
        Table tab({"lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual"});
        auto l = ScalarTraits<S>::to_complex(e.lhs), rr = ScalarTraits<S>::to_complex(e.rhs);
        tab.row({fmt17(l.real()), fmt17(l.imag()), fmt17(rr.real()), fmt17(rr.imag()), fmt17(e.residual)});
        r.tables["euler"] = tab.str();
        return kOk;
    }
    if (auto* c = std::get_if<io::ConeDoc<S>>(&doc)) {
        auto v = torus::compatible_map_violations(c->compatible_map(), cfg.tol);
        if (!v.empty()) return validation_result(r, v);
        auto a = torus::cone_additivity(c->compatible_map(), cfg.tol);
        r.body["check"] = "cone_additivity";
        r.body["ym_source"] = io::write_scalar(a.ym_alpha);
        r.body["ym_target"] = io::write_scalar(a.ym_beta);
        r.body["ym_cone"] = io::write_scalar(a.ym_cone);
        r.body["residual"] = a.residual;
        r.body["holds"] = a.residual <= bound;
        Table tab({"ym_source", "ym_target", "ym_cone", "residual"});
        tab.row({fmt17(std::real(ScalarTraits<S>::to_complex(a.ym_alpha))), fmt17(std::real(ScalarTraits<S>::to_complex(a.ym_beta))),
                 fmt17(std::real(ScalarTraits<S>::to_complex(a.ym_cone))), fmt17(a.residual)});
        r.tables["cone"] = tab.str();
        return kOk;
    }
    throw io::SchemaError("euler-check: expects a torus or torus_cone document");
}

inline json rational_json(const Rational& q) { return format_rational(q); }

inline void chi_prediction(const chars::Model& model, int rank, Report& r, Table& t) {
    auto p = chars::predict_chi(model, rank);
    const char* space = model.kind == chars::ModelKind::torus ? "torus" : "projective";
    r.body["predictions"].push_back({{"space", space},
                                     {"dim", model.dim},
                                     {"rank", rank},
                                     {"chi_omega", rational_json(p.chi_omega)},
                                     {"chi_a0", rational_json(p.chi_a0)}});
    t.row({space, std::to_string(model.dim), std::to_string(rank), format_rational(p.chi_omega), format_rational(p.chi_a0)});
}

template <class S>
int chi_check(const std::optional<io::Document<S>>& doc, const JobConfig& cfg, Report& r) {
    r.body["predictions"] = json::array();
    Table pred({"space", "dim", "rank", "chi_omega", "chi_a0"});
    auto discrepancy = [&](int n, int rank) {
        auto d = chars::projective_discrepancy(n, rank);
        r.body["projective_discrepancy"] = {{"n", d.n},
                                            {"r", d.r},
                                            {"chi_global_sections", rational_json(d.chi_global_sections)},
                                            {"chi_index", rational_json(d.chi_index)},
                                            {"chi_a0_index", rational_json(d.chi_a0_index)},
                                            {"agree", d.agree}};
    };
    if (!doc) {
        if (!cfg.space) throw io::SchemaError("chi-check needs --input or --space");
        if (cfg.dim < 1 || cfg.rank < 1) return validation_result(r, {"--dim and --rank must be at least 1"});
        if (*cfg.space == "projective") {
            chi_prediction(chars::Model::projective(cfg.dim), cfg.rank, r, pred);
            discrepancy(cfg.dim, cfg.rank);
        } else if (*cfg.space == "torus") {
            chi_prediction(chars::Model::torus(cfg.dim), cfg.rank, r, pred);
            std::vector<Matrix<S>> zero(static_cast<std::size_t>(cfg.dim), Matrix<S>(static_cast<std::size_t>(cfg.rank), static_cast<std::size_t>(cfg.rank)));
            auto c = chars::torus_chi_check(cfg.dim, static_cast<std::size_t>(cfg.rank), zero, cfg.tol);
            r.body["torus"] = json::array({{{"degree", 0}, {"naive", c.naive}, {"cohomological", c.cohomological},
                                            {"prediction", c.prediction}, {"cohomology_dims", c.cohomology_dims}}});
        } else {
            throw io::SchemaError("--space must be projective or torus");
        }
        r.tables["predictions"] = pred.str();
        return kOk;
    }
    if (auto* p = std::get_if<projective::TwistedComplex>(&*doc)) {
        auto v = projective::validate(*p);
        if (!v.valid) return validation_result(r, v.violations, v.warnings);
        int rank = static_cast<int>(p->total_terms());
        if (rank < 1) return validation_result(r, {"the complex has no terms"});
        chi_prediction(chars::Model::projective(p->n), rank, r, pred);
        discrepancy(p->n, rank);
        r.tables["predictions"] = pred.str();
        return kOk;
    }
    if (auto* t = std::get_if<io::TorusDoc<S>>(&*doc)) {
        auto v = torus_violations(*t, cfg.tol);
        if (!v.empty()) return validation_result(r, v);
        const int g = static_cast<int>(t->g);
        r.body["torus"] = json::array();
        Table tab({"degree", "rank", "naive", "cohomological", "prediction"});
        std::vector<std::string> flat_errors;
        for (const auto& [i, rank] : t->complex.dims()) {
            std::vector<Matrix<S>> a;
            for (std::size_t k = 0; k < t->g; ++k) a.push_back(t->connection.at(i, k, rank));
            try {
                auto c = chars::torus_chi_check(g, rank, a, cfg.tol);
                chi_prediction(chars::Model::torus(g), static_cast<int>(rank), r, pred);
                r.body["torus"].push_back({{"degree", i}, {"rank", rank}, {"naive", c.naive}, {"cohomological", c.cohomological},
                                           {"prediction", c.prediction}, {"cohomology_dims", c.cohomology_dims}});
                tab.row({std::to_string(i), std::to_string(rank), std::to_string(c.naive), std::to_string(c.cohomological),
                         std::to_string(c.prediction)});
            } catch (const std::invalid_argument& e) {
                flat_errors.push_back("degree " + std::to_string(i) + ": " + e.what());
            }
        }
        if (!flat_errors.empty()) return validation_result(r, flat_errors);
        r.tables["torus_chi"] = tab.str();
        r.tables["predictions"] = pred.str();
        return kOk;
    }
    throw io::SchemaError("chi-check: expects a projective or torus document");
}

template <class S>
int dispatch(const JobConfig& cfg, Report& r) {
    std::optional<io::Document<S>> doc;
    if (!cfg.input.empty()) doc = io::parse_document<S>(read_file(cfg.input));
    if (doc) r.body["model"] = io::model_name(doc->index());
    const std::string& c = cfg.command;
    if (c == "cech") {
        cech::CechLineBundle l;
        if (cfg.k) l = cech::CechLineBundle::with_default_metric(*cfg.k);
        else if (doc && std::holds_alternative<cech::CechLineBundle>(*doc)) l = std::get<cech::CechLineBundle>(*doc);
        else throw io::SchemaError("cech needs --k or a cech_line document");
        return cech_pipeline(l, cfg, r);
    }
    if (c == "chi-check") return chi_check<S>(doc, cfg, r);
    if (!doc) throw io::SchemaError(c + " needs --input");
    if (c == "validate") return validate_doc<S>(*doc, cfg, r);
    if (c == "gauge-exists") return gauge_exists<S>(*doc, cfg, r);
    if (c == "gauge-space") return gauge_space<S>(*doc, cfg, r);
    if (c == "euler-check") return euler_check<S>(*doc, cfg, r);
    auto* t = std::get_if<io::TorusDoc<S>>(&*doc);
    if (!t) throw io::SchemaError(c + " expects a torus document");
    if (c == "ym-solve") return ym_solve<S>(*t, cfg, r);
    return ym_eval<S>(*t, cfg, r);
}

}  // namespace detail

inline void write_outputs(const JobConfig& cfg, const Report& r, std::ostream& out) {
    const std::string text = r.body.dump(2) + "\n";
    if (cfg.output.empty()) {
        out << text;
        return;
    }
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output);
    std::ofstream(fs::path(cfg.output) / "report.json", std::ios::binary) << text;
    for (const auto& [name, tsv] : r.tables) std::ofstream(fs::path(cfg.output) / (name + ".tsv"), std::ios::binary) << tsv;
}

/// Runs one job and writes its report. Never throws; failures map to exit codes.
inline int run(const JobConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    Report r;
    r.body["command"] = cfg.command;
    int status = kOk;
    if (std::find(commands().begin(), commands().end(), cfg.command) == commands().end()) {
        err << "unknown command: " << cfg.command << "\n";
        return kUnknownCommand;
    }
    try {
        if (!(cfg.tol > 0)) throw io::SchemaError("--tol must be positive");
        if (cfg.seeds < 1) throw io::SchemaError("--seeds must be at least 1");
        if (cfg.grid < 2 || cfg.grid % 2 != 0) throw io::SchemaError("--grid must be even and at least 2");
        status = cfg.backend == Backend::exact ? detail::dispatch<GaussRational>(cfg, r) : detail::dispatch<Complex>(cfg, r);
    } catch (const io::SchemaError& e) {
        err << "schema error: " << e.what() << "\n";
        return kSchemaError;
    } catch (const std::invalid_argument& e) {
        // shape and consistency problems surfaced by the library after parsing
        r.body["error"] = e.what();
        status = kValidationFailure;
    } catch (const std::logic_error& e) {
        r.body["error"] = e.what();
        status = kValidationFailure;
    }
    r.body["status"] = status;
    try {
        write_outputs(cfg, r, out);
    } catch (const std::exception& e) {
        err << "cannot write report: " << e.what() << "\n";
        return kSchemaError;
    }
    if (status == kValidationFailure) err << "validation failed\n";
    return status;
}

}  // namespace brane_gauge::cli
