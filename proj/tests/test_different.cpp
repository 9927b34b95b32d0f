#include <gtest/gtest.h>

#include "maxmodel/different.hpp"
#include "maxmodel/random.hpp"
#include "support.hpp"

using namespace maxmodel;

namespace {

LaurentSeries S(const char* text, const FieldPtr& f, int prec = kExact) {
    return LaurentSeries::parse(text, f, prec);
}

ModelPresentation build(int, GroupKind kind, const LaurentSeries& f, int precision = 40,
                        std::optional<LaurentSeries> lambda = std::nullopt) {
    ModelOptions mo;
    mo.precision = precision;
    return build_model(normalize(f, GroupSchemeSpec::make(kind, lambda)), mo);
}

ModelPresentation build(int p, GroupKind kind, const char* f) {
    return build(p, kind, S(f, FieldSpec::make(p)));
}

TowerStage stage(GroupKind k, const LaurentSeries& f, bool native) {
    return TowerStage{GroupSchemeSpec::make(k), f, native, {}};
}

}  // namespace

TEST(Different, AlphaCaseTwo) {
    const auto m = build(3, GroupKind::AlphaP, "t^-1");
    const auto d = different_exponent(m);
    EXPECT_EQ(d.exponent, 2);
    EXPECT_EQ(d.method, DifferentMethod::InvariantDerivation);
    // D(T) = -T^2
    EXPECT_EQ(d.derivation_value, "D(T) = 2*T^2");
    EXPECT_TRUE(d.is_torsor_consistent);
}

TEST(Different, MuCaseTwo) {
    const auto m = build(3, GroupKind::MuP, "t");
    const auto d = different_exponent(m);
    EXPECT_EQ(m.coaction.to_string(), "z*T");
    EXPECT_EQ(d.derivation_value, "D(T) = T");
    EXPECT_EQ(d.exponent, 1);
}

TEST(Different, ArtinSchreierBreakOne) {
    const auto m = build(2, GroupKind::ZmodP, "t^-1");
    EXPECT_EQ(m.relation().to_string("Z"), "Z^2 + t*Z + t");
    const auto d = different_exponent(m);
    EXPECT_EQ(d.method, DifferentMethod::EtaleMinPolyDerivative);
    EXPECT_EQ(d.exponent, 2);
    EXPECT_EQ(d.exponent, classical_as_different(2, 1));
}

TEST(Different, ClassicalOracle) {
    EXPECT_EQ(classical_as_different(2, 1), 2);
    EXPECT_EQ(classical_as_different(3, 2), 6);
    EXPECT_THROW(classical_as_different(2, 2), DomainError);
}

TEST(Different, ArtinSchreierMatchesClassicalGrid) {
    for (int p : {2, 3})
        for (int m : {1, 2, 4, 5}) {
            if (m % p == 0) continue;
            auto F = FieldSpec::make(p);
            const auto model = build(p, GroupKind::ZmodP, LaurentSeries::t_power(F, -m), 60);
            EXPECT_EQ(model.label, CaseLabel::ASRamified);
            EXPECT_EQ(different_exponent(model).exponent, classical_as_different(p, m)) << p << " " << m;
        }
}

TEST(Different, ArtinSchreierRandomUnits) {
    for (int p : {2, 3}) {
        auto F = FieldSpec::make(p);
        Rng rng(40 + p);
        for (int i = 0; i < 6; ++i) {
            int m = random_int(rng, 1, 5);
            if (m % p == 0) ++m;
            const auto f = random_unit(F, rng, 3).shifted(-m);
            const auto model = build(p, GroupKind::ZmodP, f, 60);
            const auto& c = std::get<cls::RamifiedAS>(model.torsor_class.normalized);
            EXPECT_EQ(different_exponent(model).exponent, classical_as_different(p, c.m)) << f.to_string();
        }
    }
}

TEST(Different, AlphaCaseTwoLaw) {
    for (int p : {2, 3, 5})
        for (int i = -7; i <= -1; ++i) {
            if (i % p == 0) continue;
            auto F = FieldSpec::make(p);
            const auto m = build(p, GroupKind::AlphaP, LaurentSeries::t_power(F, i));
            EXPECT_EQ(different_exponent(m).exponent, -i + 1) << p << " " << i;
        }
}

TEST(Different, HRamifiedLaw) {
    // min(i + 1, p v(lambda) + 1)
    for (int p : {2, 3})
        for (int i : {1, 2, 4, 5})
            for (int vl : {1, 2}) {
                if (i % p == 0) continue;
                auto F = FieldSpec::make(p);
                const auto m = build(p, GroupKind::HLambda, LaurentSeries::t_power(F, -i), 40,
                                     LaurentSeries::t_power(F, vl));
                EXPECT_EQ(different_exponent(m).exponent, std::min(i + 1, p * vl + 1)) << p << " " << i << " " << vl;
            }
}

TEST(Different, TorsorCriterionOnGrid) {
    std::vector<ModelPresentation> all;
    for (int p : {2, 3, 5}) {
        auto F = FieldSpec::make(p);
        for (const char* f : {"t^-1", "t", "t^2 + t^3", "t^-2 + 1", "1 + t", "t^2", "0"}) {
            const auto x = S(f, F);
            for (auto k : {GroupKind::MuP, GroupKind::AlphaP, GroupKind::ZmodP}) {
                if (k == GroupKind::MuP && x.is_exact_zero()) continue;
                all.push_back(build(p, k, x));
            }
            if (x.known_nonzero() && x.valuation() < 0 && x.valuation() % p == 0) {
                EXPECT_THROW(build(p, GroupKind::HLambda, x, 40, S("t", F)), DomainError);
                continue;
            }
            all.push_back(build(p, GroupKind::HLambda, x, 40, S("t", F)));
        }
    }
    for (const auto& m : all) {
        const auto d = different_exponent(m);
        EXPECT_EQ(d.exponent == 0, m.is_torsor) << case_label_name(m.label) << " " << m.torsor_class.raw.to_string();
        EXPECT_EQ(torsor_test(m), m.is_torsor) << case_label_name(m.label);
        EXPECT_TRUE(d.is_torsor_consistent);
    }
}

TEST(BaseChange, EisensteinFixpoint) {
    auto F = FieldSpec::make(2);
    // T^2 = (1 + t) t
    const auto m = build(2, GroupKind::MuP, S("t + t^2", F));
    ASSERT_EQ(m.label, CaseLabel::MuCaseII);
    const auto t_of_T = base_uniformizer_in_model(m, 30);
    // back-substitution: T^2 - (1 + t(T)) t(T) = 0
    const auto T2 = LaurentSeries::t_power(F, 2);
    const auto back = T2 - (LaurentSeries::one(F) + t_of_T) * t_of_T;
    EXPECT_FALSE(back.truncated(30).known_nonzero());
    EXPECT_TRUE(agree_on_window(t_of_T, S("t^2 + t^4 + O(t^6)", F)));

    // T^3 = t exactly
    const auto m3 = build(3, GroupKind::AlphaP, "t^-1");
    EXPECT_TRUE(agree_on_window(base_uniformizer_in_model(m3, 20), S("t^3", FieldSpec::make(3))));
}

TEST(BaseChange, RejectsNonRegularStage) {
    const auto m = build(3, GroupKind::AlphaP, "t^2");
    EXPECT_FALSE(m.is_regular);
    EXPECT_THROW(base_uniformizer_in_model(m, 20), StageError);
}

TEST(Tower, EtaleBreaksOneOne) {
    auto F = FieldSpec::make(2);
    TowerSpec ts;
    ts.stages = {stage(GroupKind::ZmodP, S("t^-1", F), false), stage(GroupKind::ZmodP, S("t^-1", F), true)};
    const auto r = verify_tower_transitivity(ts);
    EXPECT_EQ(r.stages[0].different.exponent, 2);
    EXPECT_EQ(r.stages[1].different.exponent, 2);
    EXPECT_EQ(r.stages[1].ramification, 2);
    EXPECT_EQ(r.formula_total, 6);
    ASSERT_TRUE(r.direct_total);
    EXPECT_EQ(*r.direct_total, 6);
    EXPECT_TRUE(r.verified);
}

TEST(Tower, EtaleBreaksOneThree) {
    auto F = FieldSpec::make(2);
    TowerSpec ts;
    ts.stages = {stage(GroupKind::ZmodP, S("t^-1", F), false), stage(GroupKind::ZmodP, S("t^-3", F), true)};
    const auto r = verify_tower_transitivity(ts);
    EXPECT_EQ(r.formula_total, 8);
    ASSERT_TRUE(r.direct_total);
    EXPECT_EQ(*r.direct_total, 8);
}

TEST(Tower, TrivialTopStage) {
    auto F = FieldSpec::make(2);
    TowerSpec ts;
    ts.stages = {stage(GroupKind::ZmodP, S("t^-1", F), false), stage(GroupKind::ZmodP, S("t", F), true)};
    const auto r = verify_tower_transitivity(ts);
    EXPECT_EQ(r.formula_total, 2);
    EXPECT_EQ(*r.direct_total, 2);
}

TEST(Tower, InfinitesimalIsFormulaOnly) {
    auto F = FieldSpec::make(3);
    TowerSpec ts;
    ts.precision = 40;
    ts.stages = {stage(GroupKind::MuP, S("t", F), false), stage(GroupKind::AlphaP, S("t^-1", F), true)};
    const auto r = verify_tower_transitivity(ts);
    EXPECT_EQ(r.formula_total, 2 + 3 * 1);
    EXPECT_FALSE(r.direct_total);
    EXPECT_EQ(r.mode, "formula-derived, not independently verified");
}

TEST(Tower, Errors) {
    auto F = FieldSpec::make(3);
    TowerSpec one;
    one.stages = {stage(GroupKind::MuP, S("t", F), false)};
    EXPECT_THROW(verify_tower_transitivity(one), DomainError);
    TowerSpec bad;
    bad.precision = 40;
    bad.stages = {stage(GroupKind::MuP, S("1 + t^3", F), false), stage(GroupKind::AlphaP, S("t^-1", F), true)};
    EXPECT_THROW(verify_tower_transitivity(bad), StageError);
}
