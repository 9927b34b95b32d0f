#pragma once

// The acceptance grid: eleven seeded criteria over the whole pipeline, each
// reduced to PASS / FAIL with a time limit and a reproducer for the first
// failing case. Shared by the acceptance binary and `maxmodel suite`.

#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "maxmodel/verify.hpp"

namespace maxmodel::suite {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    std::string reproducer;  // first failing case, as a CLI line when there is one
    double seconds = 0;
    double limit_seconds = 0;
};

struct Options {
    std::uint64_t seed = 0;  // 0: pinned per-criterion seeds
    bool mutate = false;     // negative control: corrupt one coaction
    int scale = 1;           // precision multiplier
};

/// Precision-free view of a report; equal across precisions when the
/// computation is stable.
struct Snapshot {
    std::string key;
    std::string scalars;
    std::optional<ModelPresentation> model;
};

struct TableRow {
    std::set<std::string> torsor, regular;
    std::set<int> different;
};

struct Context {
    Options opts;
    std::vector<Snapshot> snapshots;
    std::vector<ModelPresentation> models;  // for the torsor criterion
    std::map<std::string, TableRow> table;

    Rng rng_for(int criterion) const {
        return Rng(opts.seed ? opts.seed * 1000 + static_cast<std::uint64_t>(criterion)
                             : 20240 + static_cast<std::uint64_t>(criterion));
    }
    int prec(int base) const { return base * opts.scale; }

    void record(const std::string& key, const ModelPresentation& m, const DifferentReport& d) {
        std::ostringstream s;
        s << case_label_name(m.label) << " torsor=" << m.is_torsor << " regular=" << m.is_regular
          << " different=" << d.exponent;
        snapshots.push_back({key, s.str(), m});
        models.push_back(m);
        auto& row = table[case_label_name(m.label)];
        row.torsor.insert(m.is_torsor ? "true" : "false");
        row.regular.insert(m.is_regular ? "true" : "false");
        row.different.insert(d.exponent);
    }
};

/// Time limits pinned per criterion, in seconds (per-case limits times the
/// number of cases where the criterion is stated per case).
inline constexpr double kLimits[12] = {0, 3, 1, 10, 10, 10, 60, 60, 60, 60, 60, 300};

namespace detail {

struct Failure {
    std::string what;
    std::string reproducer;
};

inline std::string classify_line(int p, const std::string& group, const std::string& f,
                                 const std::string& lambda = {}, bool reduce = false) {
    std::string s = "maxmodel classify --p " + std::to_string(p) + " --group " + group + " --f \"" + f + "\"";
    if (!lambda.empty()) s += " --lambda \"" + lambda + "\"";
    if (reduce) s += " --reduce";
    return s;
}

inline ModelPresentation build(const LaurentSeries& f, const GroupSchemeSpec& g, int precision,
                               bool reduce = false) {
    NormalizeOptions no;
    no.precision = precision;
    no.reduce = reduce;
    ModelOptions mo;
    mo.precision = precision;
    return build_model(normalize(f, g, no), mo);
}

inline bool zero_on_window(const QElement& x, int cap) { return x.truncated(cap).vanishes_to_precision(); }

// T^p - c, written out coefficient by coefficient.
inline Poly binomial(const FieldPtr& f, const LaurentSeries& c) {
    std::vector<LaurentSeries> lower(f->p(), LaurentSeries::zero(f));
    lower[0] = -c;
    return Poly::monic(f, std::move(lower));
}

}  // namespace detail

// ---------------------------------------------------------------- criteria

/// alpha_p with f = t^-1: relation T^p - t, coaction T/(1 + aT) expanded.
inline std::optional<detail::Failure> criterion1(Context& ctx) {
    for (int p : {2, 3, 5}) {
        const auto F = FieldSpec::make(static_cast<std::uint64_t>(p));
        const auto t_inv = LaurentSeries::t_power(F, -1);
        ModelPresentation m = detail::build(t_inv, GroupSchemeSpec::make(GroupKind::AlphaP), ctx.prec(40));
        if (ctx.opts.mutate) m.coaction += m.group_coordinate();
        const DifferentReport d = different_exponent(m);
        ctx.record("alpha_p p=" + std::to_string(p) + " t^-1", m, d);
        // sum_{k<p} (-a)^k T^{k+1}
        const QElement a = m.group_coordinate(), T = m.model_generator();
        QElement expected = QElement::zero(m.bialgebra), term = T;
        for (int k = 0; k < p; ++k) {
            expected += term;
            term = -(term * a * T);
        }
        const bool ok = m.label == CaseLabel::AlphaCaseII &&
                        agree_on_window(m.relation(), detail::binomial(F, LaurentSeries::t_power(F, 1))) &&
                        (m.coaction - expected).is_exact_zero() && !m.is_torsor && m.is_regular &&
                        d.exponent == 2 && check_coaction_axioms(m).all();
        if (!ok)
            return detail::Failure{"p=" + std::to_string(p) + ": " + case_label_name(m.label) + ", relation " +
                                       m.relation().to_string() + ", coaction " + m.coaction.to_string() +
                                       ", different " + std::to_string(d.exponent),
                                   detail::classify_line(p, "alpha_p", "t^-1")};
    }
    return std::nullopt;
}

/// a -> e t accepted, seeded single-coefficient mutations rejected.
inline std::optional<detail::Failure> criterion2(Context& ctx) {
    Rng rng = ctx.rng_for(2);
    for (int p : {2, 3, 5}) {
        const auto F = FieldSpec::make(static_cast<std::uint64_t>(p));
        const auto c = katz_mazur_candidate(F, ctx.prec(40));
        if (!check_model_morphism(c) || !check_coaction_axioms(c.target).all() ||
            !check_coaction_axioms(c.source).all())
            return detail::Failure{"p=" + std::to_string(p) + ": a -> e t rejected", {}};
        for (int i = 0; i < 20; ++i) {
            std::string what;
            const auto bad = mutate_candidate(c, rng, &what);
            if (check_model_morphism(bad))
                return detail::Failure{"p=" + std::to_string(p) + ": mutation accepted: " + what, {}};
        }
    }
    return std::nullopt;
}

/// mu_p Case II: T^p - u^m t, coaction z^m, different 1, Eisenstein.
inline std::optional<detail::Failure> criterion3(Context& ctx) {
    Rng rng = ctx.rng_for(3);
    for (int p : {2, 3, 5}) {
        const auto F = FieldSpec::make(static_cast<std::uint64_t>(p));
        for (int i = 1; i < p; ++i)
            for (int trial = 0; trial < 5; ++trial) {
                const LaurentSeries u = random_unit(F, rng, 4);
                const LaurentSeries f = u.shifted(i);
                const ModelPresentation m = detail::build(f, GroupSchemeSpec::make(GroupKind::MuP), ctx.prec(40));
                const DifferentReport d = different_exponent(m);
                ctx.record("mu_p p=" + std::to_string(p) + " " + f.to_string(), m, d);
                int mm = 1;
                while ((mm * i) % p != 1) ++mm;
                bool ok = m.label == CaseLabel::MuCaseII && m.bezout && m.bezout->m == mm;
                if (ok) {
                    const auto& r = std::get<cls::Ramified>(m.torsor_class.normalized);
                    const int cap = ctx.prec(40);
                    // same class: the normalized unit differs from u by a p-th power
                    const LaurentSeries ratio = (r.u * u.invert(cap)).truncated(cap);
                    const std::string z = mm == 1 ? "z*T" : "z^" + std::to_string(mm) + "*T";
                    ok = ratio.is_pth_power() &&
                         agree_on_window(m.relation(), detail::binomial(F, r.u.pow(mm, cap).shifted(1))) &&
                         m.coaction.to_string() == z && d.exponent == 1 && m.relation().is_eisenstein() &&
                         m.is_regular && !m.is_torsor;
                }
                if (!ok)
                    return detail::Failure{"p=" + std::to_string(p) + " i=" + std::to_string(i) + ": " +
                                               case_label_name(m.label) + ", relation " + m.relation().to_string(),
                                           detail::classify_line(p, "mu_p", f.to_string())};
            }
    }
    return std::nullopt;
}

/// mu_p Case I: u = 1 + t^r beta is a torsor, regular iff r = 1, different 0.
inline std::optional<detail::Failure> criterion4(Context& ctx) {
    Rng rng = ctx.rng_for(4);
    for (int p : {2, 3, 5}) {
        const auto F = FieldSpec::make(static_cast<std::uint64_t>(p));
        for (int r = 1; r <= 3; ++r) {
            LaurentSeries u = LaurentSeries::one(F);
            do {
                u = LaurentSeries::one(F) + random_unit(F, rng, 4).shifted(r);
            } while (u.is_pth_power());
            const ModelPresentation m = detail::build(u, GroupSchemeSpec::make(GroupKind::MuP), ctx.prec(40));
            const DifferentReport d = different_exponent(m);
            ctx.record("mu_p p=" + std::to_string(p) + " " + u.to_string(), m, d);
            const bool ok = m.label == CaseLabel::MuCaseI && m.is_torsor && m.is_regular == (r == 1) &&
                            d.exponent == 0 && check_coaction_axioms(m).all();
            if (!ok)
                return detail::Failure{"p=" + std::to_string(p) + " r=" + std::to_string(r) + ": " +
                                           case_label_name(m.label) + " regular=" + std::to_string(m.is_regular),
                                       detail::classify_line(p, "mu_p", u.to_string())};
        }
    }
    return std::nullopt;
}

/// H_lambda: f = t torsor with explicit inverse; v(f) < 0 grid against the
/// closed-form relation and coaction.
inline std::optional<detail::Failure> criterion5(Context& ctx) {
    Rng rng = ctx.rng_for(5);
    for (int p : {2, 3}) {
        const auto F = FieldSpec::make(static_cast<std::uint64_t>(p));
        const auto t = LaurentSeries::t_power(F, 1);
        const auto spec = GroupSchemeSpec::make(GroupKind::HLambda, t);
        {
            const ModelPresentation m = detail::build(t, spec, ctx.prec(40));
            const DifferentReport d = different_exponent(m);
            ctx.record("h_lambda p=" + std::to_string(p) + " t", m, d);
            if (m.label != CaseLabel::HTorsor || !m.is_regular || !m.is_torsor || !hlambda_inverse_check(m, 50))
                return detail::Failure{"f = t: " + case_label_name(m.label),
                                       detail::classify_line(p, "h_lambda", "t", "t")};
        }
        for (int i : {1, 2}) {
            const LaurentSeries f = random_unit(F, rng, 3).shifted(-i);
            const bool reduce = i % p == 0;
            const ModelPresentation m = detail::build(f, spec, ctx.prec(40), reduce);
            const DifferentReport d = different_exponent(m);
            ctx.record("h_lambda p=" + std::to_string(p) + " " + f.to_string(), m, d);
            const auto repro = detail::classify_line(p, "h_lambda", f.to_string(), "t", reduce);
            const auto* c = std::get_if<cls::HRamified>(&m.torsor_class.normalized);
            if (m.label != CaseLabel::HRamified || !c || !m.bezout)
                return detail::Failure{"i=" + std::to_string(i) + ": " + case_label_name(m.label), repro};
            const int cap = m.precision;
            const int mm = m.bezout->m, nn = m.bezout->n;
            // T^p - delta^{-m} t
            const LaurentSeries c0 = c->delta.invert(cap).pow(mm, cap).shifted(1);
            // sigma (1 + delta^n T^i x + lambda x)^m = T
            const QElement x = m.group_coordinate(), T = m.model_generator();
            const QElement w = QElement::one(m.bialgebra) + (x * T.pow(c->i)).scaled(c->delta.pow(nn, cap)) +
                               x.scaled(t);
            const QElement lhs = (m.coaction * w.pow(mm, cap)).truncated(cap);
            const bool ok = agree_on_window(m.relation(), detail::binomial(F, c0)) &&
                            detail::zero_on_window(lhs - T, cap - 1) && !m.is_torsor && m.is_regular &&
                            check_coaction_axioms(m).all();
            if (!ok) return detail::Failure{"i=" + std::to_string(i) + ": relation or coaction mismatch", repro};
        }
    }
    return std::nullopt;
}

/// Z/pZ different via v_L(g'(pi_L)) against (p - 1)(m + 1).
inline std::optional<detail::Failure> criterion6(Context& ctx) {
    for (int p : {2, 3}) {
        const auto F = FieldSpec::make(static_cast<std::uint64_t>(p));
        for (int mbreak : {1, 2, 4, 5}) {
            if (mbreak % p == 0) continue;
            const LaurentSeries f = LaurentSeries::t_power(F, -mbreak);
            const ModelPresentation m = detail::build(f, GroupSchemeSpec::make(GroupKind::ZmodP), ctx.prec(60));
            const DifferentReport d = different_exponent(m);
            ctx.record("z_mod_p p=" + std::to_string(p) + " " + f.to_string(), m, d);
            if (m.label != CaseLabel::ASRamified || d.method != DifferentMethod::EtaleMinPolyDerivative ||
                d.exponent != classical_as_different(p, mbreak))
                return detail::Failure{"p=" + std::to_string(p) + " m=" + std::to_string(mbreak) + ": different " +
                                           std::to_string(d.exponent),
                                       detail::classify_line(p, "z_mod_p", f.to_string()) + " --precision 60"};
        }
    }
    return std::nullopt;
}

/// exponent 0 iff torsor, over every model above plus trivial classes.
inline std::optional<detail::Failure> criterion7(Context& ctx) {
    std::vector<ModelPresentation> all = ctx.models;
    for (int p : {2, 3, 5}) {
        const auto F = FieldSpec::make(static_cast<std::uint64_t>(p));
        const auto tp = LaurentSeries::t_power(F, p);
        const auto t = LaurentSeries::t_power(F, 1);
        all.push_back(detail::build(tp, GroupSchemeSpec::make(GroupKind::MuP), ctx.prec(40)));
        all.push_back(detail::build(tp, GroupSchemeSpec::make(GroupKind::AlphaP), ctx.prec(40)));
        all.push_back(detail::build(t, GroupSchemeSpec::make(GroupKind::ZmodP), ctx.prec(40)));
        all.push_back(detail::build(LaurentSeries::zero(F), GroupSchemeSpec::make(GroupKind::HLambda, t), ctx.prec(40)));
    }
    for (const auto& m : all) {
        const DifferentReport d = different_exponent(m);
        if ((d.exponent == 0) != m.is_torsor || torsor_test(m) != m.is_torsor)
            return detail::Failure{case_label_name(m.label) + " class " + m.torsor_class.raw.to_string() +
                                       ": different " + std::to_string(d.exponent),
                                   detail::classify_line(static_cast<int>(m.p()), group_kind_name(m.group.kind),
                                                         m.torsor_class.raw.to_string())};
    }
    return std::nullopt;
}

/// Z/2Z towers with breaks (1,1) and (1,3).
inline std::optional<detail::Failure> criterion8(Context& ctx) {
    const auto F = FieldSpec::make(2);
    const std::vector<std::pair<int, int>> towers = {{1, 1}, {1, 3}};
    for (const auto& [b1, b2] : towers) {
        TowerSpec ts;
        ts.precision = ctx.prec(80);
        const auto g = GroupSchemeSpec::make(GroupKind::ZmodP);
        ts.stages = {TowerStage{g, LaurentSeries::t_power(F, -b1), false, {}},
                     TowerStage{g, LaurentSeries::t_power(F, -b2), true, {}}};
        const TowerReport r = verify_tower_transitivity(ts);
        const int e = r.stages[1].ramification;
        const int expected = r.stages[1].different.exponent + e * r.stages[0].different.exponent;
        std::ostringstream s;
        s << "formula=" << r.formula_total << " direct=" << (r.direct_total ? *r.direct_total : -1) << " e=" << e;
        ctx.snapshots.push_back({"tower " + std::to_string(b1) + "," + std::to_string(b2), s.str(), std::nullopt});
        const std::string repro = "maxmodel tower --p 2 --precision " + std::to_string(ts.precision) +
                                  " --stage \"z_mod_p:t^-" + std::to_string(b1) + "\" --stage \"z_mod_p:t^-" +
                                  std::to_string(b2) + "\"";
        if (e != 2 || !r.direct_total || *r.direct_total != expected || !r.verified)
            return detail::Failure{"breaks (" + std::to_string(b1) + "," + std::to_string(b2) + "): " + s.str(), repro};
    }
    return std::nullopt;
}

/// normalize is constant on classes: f y^p, f + y^p, f + y^p - y.
inline std::optional<detail::Failure> criterion9(Context& ctx) {
    Rng rng = ctx.rng_for(9);
    for (int trial = 0; trial < 100; ++trial) {
        const int p = std::array<int, 3>{2, 3, 5}[static_cast<std::size_t>(trial % 3)];
        const auto F = FieldSpec::make(static_cast<std::uint64_t>(p));
        const LaurentSeries fm = random_unit(F, rng, 6).shifted(random_int(rng, -3, 3));
        const LaurentSeries y = random_unit(F, rng, 5).shifted(random_int(rng, -2, 2));
        if (normalize_mu(fm * y.pow(p, kExact)).normalized != normalize_mu(fm).normalized)
            return detail::Failure{"mu_p p=" + std::to_string(p) + " f=" + fm.to_string() + " y=" + y.to_string(), {}};
        const LaurentSeries fa = random_polynomial(F, rng, -5, 5);
        const LaurentSeries ya = random_polynomial(F, rng, -3, 3);
        if (normalize_alpha(fa + ya.pow(p, kExact)).normalized != normalize_alpha(fa).normalized)
            return detail::Failure{"alpha_p p=" + std::to_string(p) + " f=" + fa.to_string(), {}};
        const LaurentSeries z = random_polynomial(F, rng, -3, 4);
        if (normalize_as(fa + z.pow(p, kExact) - z).normalized != normalize_as(fa).normalized)
            return detail::Failure{"z_mod_p p=" + std::to_string(p) + " f=" + fa.to_string() + " z=" + z.to_string(), {}};
    }
    return std::nullopt;
}

/// Every seeded schematically dominant inclusion has equalizer A.
inline std::optional<detail::Failure> criterion10(Context& ctx) {
    Rng rng = ctx.rng_for(10);
    const auto F = FieldSpec::make(2);
    EqualizerOptions eo;
    eo.precision = ctx.prec(40);
    int bad = 0;
    std::string first;
    for (int i = 0; i < 50; ++i) {
        const RandomInclusion ri = random_inclusion(F, rng);
        const EqualizerReport r = equalizer_check(ri.incl, eo);
        if (!r.smith_check.ok()) return detail::Failure{"Smith check failed for " + ri.description, {}};
        if (!r.equalizer_is_image) {
            if (!bad) first = ri.description + ", divisors " + [&] {
                std::string s = "[";
                for (std::size_t k = 0; k < r.divisors.size(); ++k) s += (k ? ", " : "") + std::to_string(r.divisors[k]);
                return s + "]";
            }();
            ++bad;
        }
    }
    if (bad) return detail::Failure{std::to_string(bad) + " of 50 inclusions have equalizer != A; first: " + first, {}};
    return std::nullopt;
}

/// Criteria 1-8 recomputed at double precision give the same reports.
inline std::optional<detail::Failure> criterion11(Context& ctx) {
    Context hi;
    hi.opts = ctx.opts;
    hi.opts.scale = ctx.opts.scale * 2;
    hi.opts.mutate = false;
    Context lo;
    lo.opts = ctx.opts;
    lo.opts.mutate = false;
    for (auto* c : {&lo, &hi}) {
        criterion1(*c);
        criterion3(*c);
        criterion4(*c);
        criterion5(*c);
        criterion6(*c);
        criterion8(*c);
    }
    if (lo.snapshots.size() != hi.snapshots.size()) return detail::Failure{"report counts differ", {}};
    for (std::size_t i = 0; i < lo.snapshots.size(); ++i) {
        const auto& a = lo.snapshots[i];
        const auto& b = hi.snapshots[i];
        bool same = a.key == b.key && a.scalars == b.scalars && a.model.has_value() == b.model.has_value();
        if (same && a.model) {
            same = agree_on_window(a.model->torsor_class.normalized, b.model->torsor_class.normalized) &&
                   agree_on_window(a.model->relation(), b.model->relation()) &&
                   agree_on_window(a.model->coaction, b.model->coaction);
        }
        if (!same) return detail::Failure{"report differs at double precision: " + a.key, {}};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- driver

inline const std::vector<std::pair<std::string, std::function<std::optional<detail::Failure>(Context&)>>>&
criteria() {
    static const std::vector<std::pair<std::string, std::function<std::optional<detail::Failure>(Context&)>>> all = {
        {"alpha_p example, p in {2,3,5}", criterion1},
        {"model morphism a -> e t and 20 mutations", criterion2},
        {"mu_p Case II grid", criterion3},
        {"mu_p Case I, u = 1 + t^r beta", criterion4},
        {"H_lambda torsor and ramified grid", criterion5},
        {"Artin-Schreier different (p-1)(m+1)", criterion6},
        {"torsor criterion: different 0 iff torsor", criterion7},
        {"tower transitivity, breaks (1,1) and (1,3)", criterion8},
        {"class normalization invariance, 100 trials per kind", criterion9},
        {"descent: equalizer = A for 50 inclusions", criterion10},
        {"precision doubling leaves reports unchanged", criterion11},
    };
    return all;
}

inline CriterionResult run_one(int id, Context& ctx) {
    const auto& [name, fn] = criteria().at(static_cast<std::size_t>(id - 1));
    CriterionResult r;
    r.id = id;
    r.name = name;
    r.limit_seconds = kLimits[id];
    const auto start = std::chrono::steady_clock::now();
    std::optional<detail::Failure> fail;
    try {
        fail = fn(ctx);
    } catch (const std::exception& e) {
        fail = detail::Failure{std::string("exception: ") + e.what(), {}};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (fail) {
        r.detail = fail->what;
        r.reproducer = fail->reproducer;
        if (r.reproducer.empty() || ctx.opts.mutate) {
            r.reproducer = "maxmodel suite --only " + std::to_string(id);
            if (ctx.opts.seed) r.reproducer += " --seed " + std::to_string(ctx.opts.seed);
            if (ctx.opts.mutate) r.reproducer += " --mutate";
        }
    } else if (r.seconds > r.limit_seconds) {
        std::ostringstream s;
        s << "took " << r.seconds << " s, limit " << r.limit_seconds << " s";
        r.detail = s.str();
    } else {
        r.pass = true;
    }
    return r;
}

/// Runs the listed criteria (all when empty) in order.
inline std::vector<CriterionResult> run(const Options& opts, Context* out = nullptr,
                                        const std::vector<int>& only = {}) {
    Context ctx;
    ctx.opts = opts;
    std::vector<CriterionResult> results;
    for (int id = 1; id <= static_cast<int>(criteria().size()); ++id) {
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        results.push_back(run_one(id, ctx));
    }
    if (out) *out = std::move(ctx);
    return results;
}

template <class T>
std::string join(const std::set<T>& s) {
    std::ostringstream out;
    for (auto it = s.begin(); it != s.end(); ++it) out << (it == s.begin() ? "" : ",") << *it;
    return out.str();
}

/// case label x (torsor, regular, different), one row per label seen.
inline std::string render_table(const Context& ctx) {
    std::ostringstream os;
    os << "| case | is_torsor | is_regular | different |\n|---|---|---|---|\n";
    for (const auto& [label, row] : ctx.table)
        os << "| " << label << " | " << join(row.torsor) << " | " << join(row.regular) << " | "
           << join(row.different) << " |\n";
    return os.str();
}

}  // namespace maxmodel::suite
