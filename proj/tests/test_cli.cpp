#include <gtest/gtest.h>

#include <set>

#include "maxmodel/cli.hpp"
#include "maxmodel/suite.hpp"
#include "support.hpp"

using namespace maxmodel;
using namespace maxmodel::cli;

namespace {

RunConfig config(std::uint64_t p, const char* group, const char* f, const char* lambda = "") {
    RunConfig c;
    c.p = p;
    c.group = group;
    c.f = f;
    c.lambda = lambda;
    return c;
}

}  // namespace

// ---------------------------------------------------------------- config

TEST(Config, KeyValueFileAndFlagsWin) {
    std::istringstream in("# comment\np = 3\n\ngroup=z_mod_p\nf = t^-2 + 1\nprecision=20\n");
    RunConfig c;
    for (const auto& [k, v] : read_key_values(in, "cfg")) apply_setting(c, k, v);
    EXPECT_EQ(c.p, 3u);
    EXPECT_EQ(c.group, "z_mod_p");
    EXPECT_EQ(c.f, "t^-2 + 1");
    EXPECT_EQ(c.precision, 20);
    apply_setting(c, "p", "2");
    EXPECT_EQ(c.p, 2u);
}

TEST(Config, Errors) {
    RunConfig c;
    EXPECT_THROW(apply_setting(c, "q", "2"), ParseError);
    EXPECT_THROW(apply_setting(c, "p", "two"), ParseError);
    EXPECT_THROW(apply_setting(c, "p", "2x"), ParseError);
    EXPECT_THROW(apply_setting(c, "reduce", "maybe"), ParseError);
    std::istringstream bad("p 2\n");
    EXPECT_THROW(read_key_values(bad, "cfg"), ParseError);
    EXPECT_EQ(parse_modulus("1,1,1"), (std::vector<std::uint64_t>{1, 1, 1}));

    auto low = config(2, "mu_p", "t");
    low.precision = 9;
    EXPECT_THROW(validate(low), ParseError);
    EXPECT_THROW(validate(config(2, "h_lambda", "t")), ParseError);
    EXPECT_THROW(validate(config(2, "mu_p", "t", "t")), ParseError);
    auto fmt = config(2, "mu_p", "t");
    fmt.format = "xml";
    EXPECT_THROW(validate(fmt), ParseError);
}

TEST(Config, ExitCodes) {
    EXPECT_EQ(exit_code_for(ParseError("x")), 2);
    EXPECT_EQ(exit_code_for(DomainError("x")), 2);
    EXPECT_EQ(exit_code_for(PrecisionError("x")), 3);
    EXPECT_EQ(exit_code_for(VerificationError("x")), 4);
    EXPECT_EQ(exit_code_for(StageError("x")), 5);
}

// ---------------------------------------------------------------- classify

TEST(Classify, AlphaExample) {
    const auto r = classify(config(2, "alpha_p", "t^-1"));
    EXPECT_EQ(r.case_label, "AlphaCaseII");
    EXPECT_EQ(r.relation, "T^2 + t");
    EXPECT_FALSE(r.is_torsor);
    EXPECT_EQ(r.different, 2);
    EXPECT_TRUE(r.ok());
}

TEST(Classify, TrivialMu) {
    const auto r = classify(config(2, "mu_p", "t^2"));
    EXPECT_EQ(r.case_label, "TrivialTorsor");
    EXPECT_TRUE(r.is_torsor);
    EXPECT_EQ(r.different, 0);
    EXPECT_TRUE(r.ok());
}

TEST(Classify, HTorsor) {
    const auto r = classify(config(2, "h_lambda", "t", "t"));
    EXPECT_EQ(r.case_label, "HTorsor");
    EXPECT_TRUE(r.is_regular);
    EXPECT_EQ(r.group, "h_lambda(t)");
    ASSERT_FALSE(r.checks.empty());
    EXPECT_EQ(r.checks.back().name, "explicit_inverse");
    EXPECT_TRUE(r.ok());
}

TEST(Classify, ErrorsSurface) {
    EXPECT_THROW(classify(config(4, "mu_p", "t")), DomainError);
    EXPECT_THROW(classify(config(2, "mu_p", "t^")), ParseError);
    EXPECT_THROW(classify(config(2, "mu_p", "")), ParseError);
    EXPECT_THROW(classify(config(2, "mu_p", "1 + t^2 + O(t^3)")), PrecisionError);
    EXPECT_THROW(classify(config(2, "nu_p", "t")), ParseError);
}

TEST(Classify, JsonKeySetIsFixed) {
    const std::set<std::string> keys = {"field",    "group",    "class",      "case",      "relation", "coaction",
                                        "is_torsor", "is_regular", "different", "checks", "precision"};
    for (const auto& c : {config(2, "alpha_p", "t^-1"), config(3, "z_mod_p", "t^-2"), config(2, "mu_p", "1 + t"),
                          config(3, "h_lambda", "t^-1", "t"), config(5, "mu_p", "t^5")}) {
        const Json j = to_json(classify(c));
        std::set<std::string> seen;
        for (const auto& [k, v] : j.items()) seen.insert(k);
        EXPECT_EQ(seen, keys);
    }
}

TEST(Classify, Deterministic) {
    for (const auto& c : {config(3, "mu_p", "t + t^4"), config(2, "z_mod_p", "t^-5 + t^-1"),
                          config(3, "h_lambda", "t^-2 + t", "t")}) {
        EXPECT_EQ(to_json(classify(c)).dump(), to_json(classify(c)).dump());
        EXPECT_EQ(render_text(classify(c)), render_text(classify(c)));
    }
}

TEST(Classify, ExtensionFieldWithModulus) {
    auto c = config(2, "z_mod_p", "[0,1]");
    c.e = 2;
    c.modulus = std::vector<std::uint64_t>{1, 1, 1};
    const auto r = classify(c);
    EXPECT_EQ(r.field, "F_4((t))");
    EXPECT_EQ(r.case_label, "ASUnramified");
    EXPECT_TRUE(r.is_torsor);
}

// ---------------------------------------------------------------- tower

TEST(TowerCli, StageSyntax) {
    auto f = FieldSpec::make(2);
    const auto a = parse_stage("z_mod_p:t^-1", f, 40, false);
    EXPECT_EQ(a.group.kind, GroupKind::ZmodP);
    EXPECT_TRUE(a.native);
    EXPECT_FALSE(parse_stage("z_mod_p:t^-1:base", f, 40, false).native);
    const auto h = parse_stage("h_lambda(t^2):t^-1", f, 40, false);
    EXPECT_EQ(h.group.kind, GroupKind::HLambda);
    EXPECT_THROW(parse_stage("z_mod_p", f, 40, false), ParseError);
    EXPECT_THROW(parse_stage("z_mod_p:t:top", f, 40, false), ParseError);
    EXPECT_THROW(parse_stage("h_lambda(t:t", f, 40, false), ParseError);
}

TEST(TowerCli, Examples) {
    RunConfig c;
    c.p = 2;
    c.stages = {"z_mod_p:t^-1", "z_mod_p:t^-1"};
    const auto r = run_tower(c);
    EXPECT_EQ(r.formula_total, 6);
    EXPECT_TRUE(r.verified);
    const Json j = tower_json(c, r);
    EXPECT_EQ(j["direct_total"], 6);

    c.stages = {"z_mod_p:t^-1"};
    EXPECT_THROW(run_tower(c), ParseError);

    RunConfig m;
    m.p = 3;
    m.stages = {"mu_p:t", "alpha_p:t^-1"};
    const auto r2 = run_tower(m);
    EXPECT_EQ(r2.mode, "formula-derived, not independently verified");
    EXPECT_TRUE(tower_json(m, r2)["direct_total"].is_null());
}

// ---------------------------------------------------------------- descent

TEST(DescentCli, RoundTripMatchesDirectCheck) {
    auto f = FieldSpec::make(2);
    Rng rng(77);
    for (int i = 0; i < 15; ++i) {
        const auto ri = random_inclusion(f, rng);
        const auto in = descent_input_from_json(Json::parse(descent_input_to_json(ri.incl, 2).dump()));
        const auto a = equalizer_check(ri.incl);
        const auto b = equalizer_check(in.incl, in.options);
        EXPECT_EQ(a.equalizer_is_image, b.equalizer_is_image) << ri.description;
        EXPECT_EQ(a.divisors, b.divisors);
    }
}

TEST(DescentCli, RankTwoExampleText) {
    const Json j = Json::parse(R"({
      "p": 2,
      "source": {"basis": ["1", "s"], "table": [[["1","0"],["0","1"]], [["0","1"],["0","t"]]]},
      "target": {"basis": ["1", "e"], "table": [[["1","0"],["0","1"]], [["0","1"],["0","1"]]]},
      "matrix": [["1","0"],["0","t"]]
    })");
    const auto in = descent_input_from_json(j);
    const auto r = equalizer_check(in.incl, in.options);
    EXPECT_EQ(render_descent_text(r).substr(0, 33), "equalizer = A: PASS, divisors [1]");
}

TEST(DescentCli, MalformedInputs) {
    EXPECT_THROW(descent_input_from_json(Json::parse(R"({"p": 2})")), ParseError);
    // s * 1 = 0: not unital
    const Json bad = Json::parse(R"({
      "p": 2,
      "source": {"basis": ["1", "s"], "table": [[["1","0"],["0","1"]], [["0","0"],["0","1"]]]},
      "target": {"basis": ["1", "e"], "table": [[["1","0"],["0","1"]], [["0","1"],["0","1"]]]},
      "matrix": [["1","0"],["0","t"]]
    })");
    EXPECT_THROW(descent_input_from_json(bad), ParseError);
    const Json not_hom = Json::parse(R"({
      "p": 2,
      "source": {"basis": ["1", "s"], "table": [[["1","0"],["0","1"]], [["0","1"],["0","1"]]]},
      "target": {"basis": ["1", "e"], "table": [[["1","0"],["0","1"]], [["0","1"],["0","1"]]]},
      "matrix": [["1","0"],["0","t"]]
    })");
    EXPECT_THROW(descent_input_from_json(not_hom), ParseError);
}

// ---------------------------------------------------------------- suite

TEST(Suite, CriteriaOtherThanDescentPass) {
    const auto results = suite::run({}, nullptr, {1, 2, 3, 4, 5, 6, 7, 8, 9, 11});
    ASSERT_EQ(results.size(), 10u);
    for (const auto& r : results) EXPECT_TRUE(r.pass) << r.id << " " << r.detail;
}

TEST(Suite, OtherSeedsPass) {
    for (std::uint64_t seed : {7u, 123u}) {
        suite::Options o;
        o.seed = seed;
        for (const auto& r : suite::run(o, nullptr, {2, 3, 4, 5, 9})) EXPECT_TRUE(r.pass) << r.id << " " << r.detail;
    }
}

TEST(Suite, MutationIsCaught) {
    suite::Options o;
    o.mutate = true;
    const auto r = suite::run(o, nullptr, {1});
    ASSERT_EQ(r.size(), 1u);
    EXPECT_FALSE(r[0].pass);
    EXPECT_EQ(r[0].reproducer, "maxmodel suite --only 1 --mutate");
}

TEST(Suite, TableCoversCases) {
    suite::Context ctx;
    suite::run({}, &ctx, {1, 3, 4, 5, 6});
    const std::string t = suite::render_table(ctx);
    for (const char* label : {"AlphaCaseII", "MuCaseII", "MuCaseI", "HTorsor", "HRamified", "ASRamified"})
        EXPECT_NE(t.find(label), std::string::npos) << label;
}
