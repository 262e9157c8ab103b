#pragma once

// JSON documents for the four input models. Exact scalars are written as "a/b"
// strings, float scalars as JSON numbers (shortest round-trip form, so nothing is
// lost). Readers accept integers, "a/b" strings and floats for either backend.

#include "brane_gauge/cech/cech_line.hpp"
#include "brane_gauge/projective/twisted_complex.hpp"
#include "brane_gauge/torus/constant_complex.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace brane_gauge::io {

using json = nlohmann::json;

/// Input does not match the schema of its model (exit status 3 in the CLI).
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
    throw SchemaError(where + ": " + what);
}

inline const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
    return *it;
}

inline int int_value(const json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<int>();
}

inline int int_key(const std::string& key, const std::string& where) {
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(key, &pos);
    } catch (const std::exception&) {
        fail(where, "key \"" + key + "\" is not an integer");
    }
    if (pos != key.size()) fail(where, "key \"" + key + "\" is not an integer");
    return v;
}

inline std::size_t size_value(const json& j, const std::string& where) {
    int v = int_value(j, where);
    if (v < 0) fail(where, "expected a nonnegative integer");
    return static_cast<std::size_t>(v);
}

inline Rational rational_value(const json& j, const std::string& where) {
    try {
        if (j.is_number_integer()) return Rational(j.get<long long>());
        if (j.is_number_float()) return rational_from_double(j.get<double>());
        if (j.is_string()) return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
    fail(where, "expected a number or an \"a/b\" string");
}

inline double double_value(const json& j, const std::string& where) {
    if (j.is_number()) return j.get<double>();
    return rational_value(j, where).convert_to<double>();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Scalars and matrices
// ---------------------------------------------------------------------------

/// [re, im], or a bare real value.
template <class S>
S read_scalar(const json& j, const std::string& where) {
    json re = j, im = 0;
    if (j.is_array()) {
        if (j.size() != 2) detail::fail(where, "a scalar is [re, im]");
        re = j[0];
        im = j[1];
    }
    if constexpr (ScalarTraits<S>::exact) {
        return GaussRational(detail::rational_value(re, where), detail::rational_value(im, where));
    } else {
        return Complex(detail::double_value(re, where), detail::double_value(im, where));
    }
}

inline json write_scalar(const GaussRational& x) { return json::array({format_rational(x.re()), format_rational(x.im())}); }
inline json write_scalar(const Complex& x) { return json::array({x.real(), x.imag()}); }

/// Row-major list of rows. An empty list is a 0 x cols matrix.
template <class S>
Matrix<S> read_matrix(const json& j, std::size_t rows, std::size_t cols, const std::string& where) {
    if (!j.is_array()) detail::fail(where, "expected a matrix (list of rows)");
    if (j.size() != rows)
        detail::fail(where, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
    Matrix<S> m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const json& row = j[r];
        if (!row.is_array() || row.size() != cols)
            detail::fail(where, "row " + std::to_string(r) + " must have " + std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = read_scalar<S>(row[c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
    return m;
}

template <class S>
json write_matrix(const Matrix<S>& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(write_scalar(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Projective model
// ---------------------------------------------------------------------------

inline projective::Form read_form(const json& j, std::size_t nvars, const std::string& where) {
    if (!j.is_array()) detail::fail(where, "a polynomial is a list of [re, im, exponents]");
    projective::Form f(nvars);
    for (std::size_t t = 0; t < j.size(); ++t) {
        const json& term = j[t];
        const std::string at = where + " term " + std::to_string(t);
        if (!term.is_array() || term.size() != 3 || !term[2].is_array())
            detail::fail(at, "expected [re, im, [exponents]]");
        if (term[2].size() != nvars) detail::fail(at, "exponent vector must have n+1 entries");
        Exponent e;
        for (const auto& x : term[2]) {
            int v = detail::int_value(x, at);
            if (v < 0) detail::fail(at, "negative exponent");
            e.push_back(v);
        }
        f.add_term(e, GaussRational(detail::rational_value(term[0], at), detail::rational_value(term[1], at)));
    }
    return f;
}

inline json write_form(const projective::Form& f) {
    json out = json::array();
    for (const auto& [e, c] : f.terms())
        out.push_back(json::array({format_rational(c.re()), format_rational(c.im()), json(std::vector<int>(e.begin(), e.end()))}));
    return out;
}

inline projective::TwistedComplex read_projective(const json& j) {
    projective::TwistedComplex c;
    c.n = detail::int_value(detail::field(j, "n", "projective"), "projective.n");
    if (c.n < 0) detail::fail("projective.n", "must be nonnegative");
    const json& terms = detail::field(j, "terms", "projective");
    if (!terms.is_object()) detail::fail("projective.terms", "expected an object keyed by degree");
    for (const auto& [key, list] : terms.items()) {
        const std::string at = "projective.terms." + key;
        int p = detail::int_key(key, at);
        if (!list.is_array()) detail::fail(at, "expected a list of twists");
        std::vector<int> t;
        for (const auto& k : list) t.push_back(detail::int_value(k, at));
        c.terms[p] = t;
    }
    auto dit = j.find("differentials");
    if (dit != j.end()) {
        if (!dit->is_object()) detail::fail("projective.differentials", "expected an object keyed by degree");
        for (const auto& [key, rows] : dit->items()) {
            const std::string at = "projective.differentials." + key;
            int p = detail::int_key(key, at);
            std::size_t nr = c.size(p + 1), nc = c.size(p);
            if (!rows.is_array() || rows.size() != nr)
                detail::fail(at, "expected " + std::to_string(nr) + " rows (terms at degree " + std::to_string(p + 1) + ")");
            projective::PolyMatrix m(nr, nc, c.nvars());
            for (std::size_t r = 0; r < nr; ++r) {
                if (!rows[r].is_array() || rows[r].size() != nc)
                    detail::fail(at, "row " + std::to_string(r) + " must have " + std::to_string(nc) + " entries");
                for (std::size_t col = 0; col < nc; ++col)
                    m(r, col) = read_form(rows[r][col], c.nvars(), at + "[" + std::to_string(r) + "][" + std::to_string(col) + "]");
            }
            c.differentials[p] = std::move(m);
        }
    }
    return c;
}

inline json write_projective(const projective::TwistedComplex& c) {
    json j;
    j["model"] = "projective";
    j["n"] = c.n;
    json terms = json::object();
    for (const auto& [p, t] : c.terms) terms[std::to_string(p)] = t;
    j["terms"] = terms;
    json diffs = json::object();
    for (const auto& [p, m] : c.differentials) {
        json rows = json::array();
        for (std::size_t r = 0; r < m.rows(); ++r) {
            json row = json::array();
            for (std::size_t col = 0; col < m.cols(); ++col) row.push_back(write_form(m(r, col)));
            rows.push_back(std::move(row));
        }
        diffs[std::to_string(p)] = std::move(rows);
    }
    j["differentials"] = diffs;
    return j;
}

// ---------------------------------------------------------------------------
// Torus model
// ---------------------------------------------------------------------------

template <class S>
struct TorusDoc {
    std::size_t g = 1;
    torus::ConstantComplex<S> complex;
    torus::ConnectionFamily<S> connection;
    torus::HermitianData<S> metrics;                // per-term Gram matrices, optional
    std::vector<torus::VariationClass<S>> variations;  // gauge directions, optional
    std::optional<std::vector<Complex>> lambda;
};

template <class S>
std::map<int, std::vector<Matrix<S>>> read_blocks(const json& j, const torus::ConstantComplex<S>& f, std::size_t g,
                                                  const std::string& where) {
    if (!j.is_object()) detail::fail(where, "expected an object keyed by degree");
    std::map<int, std::vector<Matrix<S>>> out;
    for (const auto& [key, list] : j.items()) {
        const std::string at = where + "." + key;
        int i = detail::int_key(key, at);
        if (!list.is_array() || list.size() != g) detail::fail(at, "expected g = " + std::to_string(g) + " matrices");
        std::vector<Matrix<S>> mats;
        for (std::size_t k = 0; k < g; ++k)
            mats.push_back(read_matrix<S>(list[k], f.dim(i), f.dim(i), at + "[" + std::to_string(k) + "]"));
        out[i] = std::move(mats);
    }
    return out;
}

template <class S>
json write_blocks(const std::map<int, std::vector<Matrix<S>>>& blocks) {
    json out = json::object();
    for (const auto& [i, mats] : blocks) {
        json list = json::array();
        for (const auto& m : mats) list.push_back(write_matrix(m));
        out[std::to_string(i)] = std::move(list);
    }
    return out;
}

/// The complex, connection and optional metrics of a torus-model object (no "model" tag needed).
template <class S>
TorusDoc<S> read_torus(const json& j, const std::string& where = "torus") {
    TorusDoc<S> d;
    int g = detail::int_value(detail::field(j, "g", where), where + ".g");
    if (g < 1) detail::fail(where + ".g", "must be at least 1");
    d.g = static_cast<std::size_t>(g);
    const json& ranks = detail::field(j, "ranks", where);
    if (!ranks.is_object()) detail::fail(where + ".ranks", "expected an object keyed by degree");
    for (const auto& [key, r] : ranks.items())
        d.complex.set_dim(detail::int_key(key, where + ".ranks"), detail::size_value(r, where + ".ranks." + key));
    if (auto it = j.find("differentials"); it != j.end()) {
        if (!it->is_object()) detail::fail(where + ".differentials", "expected an object keyed by degree");
        for (const auto& [key, m] : it->items()) {
            int i = detail::int_key(key, where + ".differentials");
            auto mat = read_matrix<S>(m, d.complex.dim(i + 1), d.complex.dim(i), where + ".differentials." + key);
            if (mat.rows() > 0 && mat.cols() > 0) d.complex.set_differential(i, mat);
        }
    }
    d.connection = torus::ConnectionFamily<S>::zero(d.complex, d.g);
    if (auto it = j.find("connection"); it != j.end())
        for (auto& [i, mats] : read_blocks(*it, d.complex, d.g, where + ".connection")) d.connection.a[i] = std::move(mats);
    if (auto it = j.find("metrics"); it != j.end()) {
        if (!it->is_object()) detail::fail(where + ".metrics", "expected an object keyed by degree");
        for (const auto& [key, m] : it->items()) {
            int i = detail::int_key(key, where + ".metrics");
            d.metrics[i] = read_matrix<S>(m, d.complex.dim(i), d.complex.dim(i), where + ".metrics." + key);
        }
    }
    if (auto it = j.find("variations"); it != j.end()) {
        if (!it->is_array()) detail::fail(where + ".variations", "expected a list");
        for (std::size_t a = 0; a < it->size(); ++a) {
            torus::VariationClass<S> v;
            v.element.degree = 0;
            v.element.nblocks = d.g;
            v.element.components = read_blocks((*it)[a], d.complex, d.g, where + ".variations[" + std::to_string(a) + "]");
            d.variations.push_back(std::move(v));
        }
    }
    if (auto it = j.find("lambda"); it != j.end()) {
        if (!it->is_array()) detail::fail(where + ".lambda", "expected a list of [re, im]");
        std::vector<Complex> lam;
        for (const auto& z : *it) lam.push_back(read_scalar<Complex>(z, where + ".lambda"));
        d.lambda = lam;
    }
    return d;
}

template <class S>
json write_torus(const TorusDoc<S>& d, bool tagged = true) {
    json j;
    if (tagged) j["model"] = "torus";
    j["g"] = d.g;
    json ranks = json::object();
    for (const auto& [i, r] : d.complex.dims()) ranks[std::to_string(i)] = r;
    j["ranks"] = ranks;
    json diffs = json::object();
    for (const auto& [i, m] : d.complex.differentials()) diffs[std::to_string(i)] = write_matrix(m);
    j["differentials"] = diffs;
    j["connection"] = write_blocks(d.connection.a);
    if (!d.metrics.empty()) {
        json m = json::object();
        for (const auto& [i, h] : d.metrics) m[std::to_string(i)] = write_matrix(h);
        j["metrics"] = m;
    }
    if (!d.variations.empty()) {
        json v = json::array();
        for (const auto& x : d.variations) v.push_back(write_blocks(x.element.components));
        j["variations"] = v;
    }
    if (d.lambda) {
        json l = json::array();
        for (const auto& z : *d.lambda) l.push_back(write_scalar(z));
        j["lambda"] = l;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Chain map between torus complexes, and Cech line bundles
// ---------------------------------------------------------------------------

template <class S>
struct ConeDoc {
    TorusDoc<S> source;
    TorusDoc<S> target;
    std::map<int, Matrix<S>> map;

    [[nodiscard]] torus::CompatibleMap<S> compatible_map() const {
        torus::CompatibleMap<S> m;
        m.source = source.complex;
        m.alpha = source.connection;
        m.target = target.complex;
        m.beta = target.connection;
        m.f = map;
        m.source_metrics = source.metrics;
        m.target_metrics = target.metrics;
        return m;
    }
};

template <class S>
ConeDoc<S> read_cone(const json& j) {
    ConeDoc<S> d;
    d.source = read_torus<S>(detail::field(j, "source", "torus_cone"), "torus_cone.source");
    d.target = read_torus<S>(detail::field(j, "target", "torus_cone"), "torus_cone.target");
    const json& m = detail::field(j, "map", "torus_cone");
    if (!m.is_object()) detail::fail("torus_cone.map", "expected an object keyed by degree");
    for (const auto& [key, mat] : m.items()) {
        int i = detail::int_key(key, "torus_cone.map");
        d.map[i] = read_matrix<S>(mat, d.target.complex.dim(i), d.source.complex.dim(i), "torus_cone.map." + key);
    }
    return d;
}

template <class S>
json write_cone(const ConeDoc<S>& d) {
    json j;
    j["model"] = "torus_cone";
    j["source"] = write_torus(d.source, false);
    j["target"] = write_torus(d.target, false);
    json m = json::object();
    for (const auto& [i, f] : d.map) m[std::to_string(i)] = write_matrix(f);
    j["map"] = m;
    return j;
}

inline cech::CechLineBundle read_cech(const json& j) {
    int k = detail::int_value(detail::field(j, "k", "cech_line"), "cech_line.k");
    auto l = cech::CechLineBundle::with_default_metric(k);
    if (auto it = j.find("metric_exponent"); it != j.end()) l.metric.s = detail::int_value(*it, "cech_line.metric_exponent");
    return l;
}

inline json write_cech(const cech::CechLineBundle& l) {
    return json{{"model", "cech_line"}, {"k", l.k}, {"metric_exponent", l.metric.s}};
}

// ---------------------------------------------------------------------------
// Tagged documents
// ---------------------------------------------------------------------------

template <class S>
using Document = std::variant<projective::TwistedComplex, TorusDoc<S>, ConeDoc<S>, cech::CechLineBundle>;

template <class S>
Document<S> read_document(const json& j) {
    const json& tag = detail::field(j, "model", "document");
    if (!tag.is_string()) detail::fail("document.model", "expected a string");
    const auto model = tag.get<std::string>();
    if (model == "projective") return read_projective(j);
    if (model == "torus") return read_torus<S>(j);
    if (model == "torus_cone") return read_cone<S>(j);
    if (model == "cech_line") return read_cech(j);
    detail::fail("document.model", "unknown model \"" + model + "\"");
}

/// Parses JSON text; syntax errors become SchemaError.
template <class S>
Document<S> parse_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
    return read_document<S>(j);
}

template <class S>
json write_document(const Document<S>& d) {
    return std::visit(
        [](const auto& x) -> json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, projective::TwistedComplex>) return write_projective(x);
            else if constexpr (std::is_same_v<T, TorusDoc<S>>) return write_torus(x);
            else if constexpr (std::is_same_v<T, ConeDoc<S>>) return write_cone(x);
            else return write_cech(x);
        },
        d);
}

inline const char* model_name(std::size_t index) {
    static const char* names[] = {"projective", "torus", "torus_cone", "cech_line"};
    return names[index];
}

}  // namespace brane_gauge::io
