#pragma once

// Front-end plumbing shared by the command-line tool and its tests: run
// configurations (flags over key=value files), the classify, tower and
// descent pipelines, and their text / JSON renderings. Needs json.hpp from
// vendor/ on the include path.

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "maxmodel/verify.hpp"

namespace maxmodel::cli {

using Json = nlohmann::ordered_json;

enum ExitCode { kOk = 0, kUsage = 2, kPrecision = 3, kVerification = 4, kStage = 5 };

struct RunConfig {
    std::uint64_t p = 2;
    unsigned e = 1;
    std::optional<std::vector<std::uint64_t>> modulus;  // lowest degree first
    int precision = 40;
    std::string group = "mu_p";
    std::string lambda;
    std::string f;
    std::string format = "text";
    std::uint64_t seed = 0;  // 0: the pinned default seeds
    bool reduce = false;
    std::vector<std::string> stages;
};

// ---------------------------------------------------------------- parsing

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

template <class Int>
Int parse_int(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    Int out{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
        throw ParseError("bad integer for " + key + ": '" + value + "'");
    return out;
}

inline bool parse_bool(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (v == "1" || v == "true" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "no") return false;
    throw ParseError("bad boolean for " + key + ": '" + value + "'");
}

}  // namespace detail

/// "1,1,1" -> {1, 1, 1}.
inline std::vector<std::uint64_t> parse_modulus(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(detail::parse_int<std::uint64_t>("modulus", item));
    if (out.empty()) throw ParseError("empty modulus");
    return out;
}

/// Known keys: p, e, modulus, precision, group, lambda, f, format, seed, reduce, stage.
inline void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
    if (key == "p")
        c.p = detail::parse_int<std::uint64_t>(key, value);
    else if (key == "e")
        c.e = detail::parse_int<unsigned>(key, value);
    else if (key == "modulus")
        c.modulus = parse_modulus(value);
    else if (key == "precision")
        c.precision = detail::parse_int<int>(key, value);
    else if (key == "group")
        c.group = detail::trim(value);
    else if (key == "lambda")
        c.lambda = detail::trim(value);
    else if (key == "f")
        c.f = detail::trim(value);
    else if (key == "format")
        c.format = detail::trim(value);
    else if (key == "seed")
        c.seed = detail::parse_int<std::uint64_t>(key, value);
    else if (key == "reduce")
        c.reduce = detail::parse_bool(key, value);
    else if (key == "stage")
        c.stages.push_back(detail::trim(value));
    else
        throw ParseError("unknown setting '" + key + "'");
}

/// Flat key=value lines; '#' starts a comment line.
inline std::vector<std::pair<std::string, std::string>> read_key_values(std::istream& in,
                                                                        const std::string& origin) {
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        const std::string s = detail::trim(line);
        if (s.empty() || s[0] == '#') continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ParseError(origin + ":" + std::to_string(n) + ": expected key=value");
        out.emplace_back(detail::trim(s.substr(0, eq)), detail::trim(s.substr(eq + 1)));
    }
    return out;
}

inline std::vector<std::pair<std::string, std::string>> read_key_values_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file " + path);
    return read_key_values(in, path);
}

inline void validate(const RunConfig& c) {
    if (c.precision < 10) throw ParseError("precision must be >= 10");
    if (c.format != "text" && c.format != "json") throw ParseError("format must be text or json");
    const GroupKind k = parse_group_kind(c.group);
    if (k == GroupKind::HLambda && c.lambda.empty()) throw ParseError("h_lambda needs --lambda");
    if (k != GroupKind::HLambda && !c.lambda.empty()) throw ParseError("--lambda only applies to h_lambda");
}

inline FieldPtr make_field(const RunConfig& c) { return FieldSpec::make(c.p, c.e, c.modulus); }

inline GroupSchemeSpec make_group(const RunConfig& c, const FieldPtr& f) {
    const GroupKind k = parse_group_kind(c.group);
    std::optional<LaurentSeries> lambda;
    if (!c.lambda.empty()) lambda = LaurentSeries::parse(c.lambda, f);
    return GroupSchemeSpec::make(k, lambda);
}

inline std::string group_label(const RunConfig& c) {
    return c.lambda.empty() ? c.group : c.group + "(" + c.lambda + ")";
}

/// Maps the library error types onto the exit-code contract.
inline int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const DomainError*>(&e)) return kUsage;
    if (dynamic_cast<const PrecisionError*>(&e)) return kPrecision;
    if (dynamic_cast<const StageError*>(&e)) return kStage;
    return kVerification;
}

// ---------------------------------------------------------------- classify

struct Check {
    std::string name;
    bool ok = false;
};

struct ClassificationReport {
    std::string field;
    std::string group;
    std::string class_text;
    std::string case_label;
    std::string relation;
    std::string coaction;
    bool is_torsor = false;
    bool is_regular = false;
    int different = 0;
    std::vector<Check> checks;
    int precision = 0;

    bool ok() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
};

inline std::vector<Check> verify_model(const ModelPresentation& m, const DifferentReport& d) {
    const CoactionReport cr = check_coaction_axioms(m);
    std::vector<Check> out{
        {"coaction_relation", cr.relation},
        {"counit", cr.counit},
        {"coassociativity", cr.coassociativity},
        {"generic_fiber", cr.generic_fiber},
        {"torsor_test", torsor_test(m) == m.is_torsor},
        {"different_consistency", d.is_torsor_consistent && (d.exponent == 0) == m.is_torsor},
    };
    if (m.label == CaseLabel::HTorsor) out.push_back({"explicit_inverse", hlambda_inverse_check(m)});
    return out;
}

inline ClassificationReport make_report(const std::string& group, const ModelPresentation& m,
                                        const DifferentReport& d, std::vector<Check> checks) {
    ClassificationReport r;
    r.field = m.algebra->field()->name() + "((t))";
    r.group = group;
    r.class_text = describe_class(m.torsor_class.normalized, *m.algebra->field());
    r.case_label = case_label_name(m.label);
    r.relation = m.relation().to_string(m.variable());
    r.coaction = m.coaction.to_string();
    r.is_torsor = m.is_torsor;
    r.is_regular = m.is_regular;
    r.different = d.exponent;
    r.checks = std::move(checks);
    r.precision = m.precision;
    return r;
}

/// normalize -> build_model -> different -> verify.
inline ClassificationReport classify(const RunConfig& c) {
    validate(c);
    if (c.f.empty()) throw ParseError("classify needs --f");
    const FieldPtr field = make_field(c);
    const GroupSchemeSpec group = make_group(c, field);
    const LaurentSeries f = LaurentSeries::parse(c.f, field);
    NormalizeOptions no;
    no.precision = c.precision;
    no.reduce = c.reduce;
    ModelOptions mo;
    mo.precision = c.precision;
    const ModelPresentation m = build_model(normalize(f, group, no), mo);
    const DifferentReport d = different_exponent(m);
    return make_report(group_label(c), m, d, verify_model(m, d));
}

inline Json to_json(const ClassificationReport& r) {
    Json checks = Json::object();
    for (const auto& c : r.checks) checks[c.name] = c.ok;
    return Json{{"field", r.field},           {"group", r.group},         {"class", r.class_text},
                {"case", r.case_label},       {"relation", r.relation},   {"coaction", r.coaction},
                {"is_torsor", r.is_torsor},   {"is_regular", r.is_regular}, {"different", r.different},
                {"checks", checks},           {"precision", r.precision}};
}

inline std::string render_text(const ClassificationReport& r) {
    std::ostringstream os;
    os << "field       " << r.field << "\n"
       << "group       " << r.group << "\n"
       << "class       " << r.class_text << "\n"
       << "case        " << r.case_label << "\n"
       << "relation    " << r.relation << "\n"
       << "coaction    " << r.coaction << "\n"
       << "is_torsor   " << (r.is_torsor ? "true" : "false") << "\n"
       << "is_regular  " << (r.is_regular ? "true" : "false") << "\n"
       << "different   " << r.different << "\n"
       << "precision   " << r.precision << "\n";
    for (const auto& c : r.checks) os << "check       " << c.name << ": " << (c.ok ? "PASS" : "FAIL") << "\n";
    return os.str();
}

// ---------------------------------------------------------------- tower

/// "kind:f", "kind:f:base" or "h_lambda(lambda):f". Later stages are read in
/// the uniformizer of the previous stage unless marked base.
inline TowerStage parse_stage(const std::string& text, const FieldPtr& field, int precision, bool reduce) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("stage '" + text + "' must look like kind:f");
    std::string head = detail::trim(text.substr(0, colon));
    std::string rest = text.substr(colon + 1);
    bool native = true;
    if (const auto b = rest.rfind(':'); b != std::string::npos) {
        if (detail::trim(rest.substr(b + 1)) != "base")
            throw ParseError("stage '" + text + "': unknown suffix");
        native = false;
        rest = rest.substr(0, b);
    }
    std::optional<LaurentSeries> lambda;
    if (const auto open = head.find('('); open != std::string::npos) {
        if (head.back() != ')') throw ParseError("stage '" + text + "': unbalanced parenthesis");
        lambda = LaurentSeries::parse(head.substr(open + 1, head.size() - open - 2), field);
        head = head.substr(0, open);
    }
    TowerStage s{GroupSchemeSpec::make(parse_group_kind(head), lambda),
                 LaurentSeries::parse(detail::trim(rest), field), native, {}};
    s.normalize.precision = precision;
    s.normalize.reduce = reduce;
    return s;
}

inline TowerReport run_tower(const RunConfig& c) {
    if (c.precision < 10) throw ParseError("precision must be >= 10");
    if (c.stages.size() < 2) throw ParseError("a tower needs at least two --stage entries");
    const FieldPtr field = make_field(c);
    TowerSpec spec;
    spec.precision = c.precision;
    for (const auto& s : c.stages) spec.stages.push_back(parse_stage(s, field, c.precision, c.reduce));
    return verify_tower_transitivity(spec);
}

inline Json tower_json(const RunConfig& c, const TowerReport& r) {
    Json stages = Json::array();
    for (std::size_t i = 0; i < r.stages.size(); ++i) {
        const auto& s = r.stages[i];
        stages.push_back(Json{{"stage", c.stages[i]},
                              {"class", describe_class(s.model.torsor_class.normalized, *s.model.algebra->field())},
                              {"case", case_label_name(s.model.label)},
                              {"relation", s.model.relation().to_string(s.model.variable())},
                              {"different", s.different.exponent},
                              {"ramification", s.ramification}});
    }
    Json direct = r.direct_total ? Json(*r.direct_total) : Json(nullptr);
    return Json{{"field", r.stages.front().model.algebra->field()->name() + "((t))"},
                {"stages", stages},
                {"formula_total", r.formula_total},
                {"direct_total", direct},
                {"verified", r.verified},
                {"mode", r.mode},
                {"precision", c.precision}};
}

inline std::string render_tower_text(const RunConfig& c, const TowerReport& r) {
    std::ostringstream os;
    for (std::size_t i = 0; i < r.stages.size(); ++i) {
        const auto& s = r.stages[i];
        os << "stage " << i + 1 << "  " << c.stages[i] << "  " << case_label_name(s.model.label)
           << "  different " << s.different.exponent << "  e " << s.ramification << "\n";
    }
    os << "formula total  " << r.formula_total << "\n";
    if (r.direct_total) os << "direct total   " << *r.direct_total << "\n";
    os << "mode           " << r.mode << "\n";
    if (r.direct_total)
        os << "transitivity   " << (r.verified ? "PASS" : "FAIL") << "\n";
    else
        os << "transitivity   formula only\n";
    return os.str();
}

// ---------------------------------------------------------------- descent

/// {"basis": [...], "table": [[[c_ij^k]]], "unit": [...]} with series strings;
/// "unit" defaults to the first basis vector.
inline FiniteFreeAlgebra algebra_from_json(const Json& j, const FieldPtr& field) {
    try {
        FiniteFreeAlgebra a;
        a.field = field;
        a.labels = j.at("basis").get<std::vector<std::string>>();
        const std::size_t n = a.labels.size();
        if (n == 0) throw ParseError("algebra with empty basis");
        const auto& t = j.at("table");
        if (t.size() != n) throw ParseError("table must be n x n x n");
        a.table.assign(n, std::vector<std::vector<LaurentSeries>>(n));
        for (std::size_t i = 0; i < n; ++i) {
            if (t[i].size() != n) throw ParseError("table must be n x n x n");
            for (std::size_t k = 0; k < n; ++k) {
                if (t[i][k].size() != n) throw ParseError("table must be n x n x n");
                for (const auto& s : t[i][k]) a.table[i][k].push_back(LaurentSeries::parse(s.get<std::string>(), field));
            }
        }
        if (j.contains("unit")) {
            for (const auto& s : j.at("unit")) a.unit.push_back(LaurentSeries::parse(s.get<std::string>(), field));
            if (a.unit.size() != n) throw ParseError("unit has the wrong length");
        } else {
            a.unit = a.basis_vector(0);
        }
        if (!a.is_valid()) throw ParseError("structure constants are not an integral commutative unital algebra");
        return a;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed algebra: ") + e.what());
    }
}

inline Json algebra_to_json(const FiniteFreeAlgebra& a) {
    Json table = Json::array();
    for (const auto& row : a.table) {
        Json r = Json::array();
        for (const auto& cell : row) {
            Json c = Json::array();
            for (const auto& s : cell) c.push_back(s.to_string());
            r.push_back(c);
        }
        table.push_back(r);
    }
    Json unit = Json::array();
    for (const auto& s : a.unit) unit.push_back(s.to_string());
    return Json{{"basis", a.labels}, {"table", table}, {"unit", unit}};
}

struct DescentInput {
    AlgebraMap incl;
    EqualizerOptions options;
};

/// {"p", "e"?, "modulus"?, "precision"?, "source", "target", "matrix"}; the
/// matrix is target-rank x source-rank, column j the image of basis vector j.
inline DescentInput descent_input_from_json(const Json& j) {
    try {
        RunConfig c;
        c.p = j.at("p").get<std::uint64_t>();
        c.e = j.value("e", 1u);
        if (j.contains("modulus")) c.modulus = j.at("modulus").get<std::vector<std::uint64_t>>();
        const FieldPtr field = make_field(c);
        DescentInput in;
        in.options.precision = j.value("precision", 40);
        if (in.options.precision < 10) throw ParseError("precision must be >= 10");
        in.incl.source = algebra_from_json(j.at("source"), field);
        in.incl.target = algebra_from_json(j.at("target"), field);
        const auto& mj = j.at("matrix");
        const std::size_t rows = in.incl.target.rank(), cols = in.incl.source.rank();
        if (mj.size() != rows) throw ParseError("matrix must be target rank x source rank");
        in.incl.matrix = Matrix(field, rows, cols);
        for (std::size_t r = 0; r < rows; ++r) {
            if (mj[r].size() != cols) throw ParseError("matrix must be target rank x source rank");
            for (std::size_t k = 0; k < cols; ++k)
                in.incl.matrix(r, k) = LaurentSeries::parse(mj[r][k].get<std::string>(), field);
        }
        if (!in.incl.is_homomorphism()) throw ParseError("matrix is not an algebra homomorphism");
        return in;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed descent input: ") + e.what());
    }
}

inline Json descent_input_to_json(const AlgebraMap& m, std::uint64_t p, unsigned e = 1, int precision = 40) {
    Json mat = Json::array();
    for (std::size_t r = 0; r < m.matrix.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.matrix.cols(); ++k) row.push_back(m.matrix(r, k).to_string());
        mat.push_back(row);
    }
    return Json{{"p", p},
                {"e", e},
                {"precision", precision},
                {"source", algebra_to_json(m.source)},
                {"target", algebra_to_json(m.target)},
                {"matrix", mat}};
}

inline DescentInput read_descent_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON in ") + path + ": " + e.what());
    }
    return descent_input_from_json(j);
}

inline std::string divisors_text(const std::vector<int>& d) {
    std::string s = "[";
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? ", " : "") + std::to_string(d[i]);
    return s + "]";
}

inline std::string render_descent_text(const EqualizerReport& r) {
    return std::string("equalizer = A: ") + (r.equalizer_is_image ? "PASS" : "FAIL") + ", divisors " +
           divisors_text(r.divisors) + "\n" + "smith check: " + (r.smith_check.ok() ? "PASS" : "FAIL") + "\n";
}

inline Json descent_json(const EqualizerReport& r) {
    return Json{{"equalizer_is_image", r.equalizer_is_image},
                {"divisors", r.divisors},
                {"generic_dimension", r.generic_dimension},
                {"socle_dimension", r.socle_dimension},
                {"smith_check", r.smith_check.ok()}};
}

}  // namespace maxmodel::cli
