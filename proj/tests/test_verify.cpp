#include <gtest/gtest.h>

#include "maxmodel/verify.hpp"
#include "support.hpp"

using namespace maxmodel;

namespace {

LaurentSeries S(const char* text, const FieldPtr& f, int prec = kExact) {
    return LaurentSeries::parse(text, f, prec);
}

ModelPresentation build(int p, GroupKind kind, const char* f, const char* lambda = nullptr) {
    auto F = FieldSpec::make(p);
    std::optional<LaurentSeries> l;
    if (lambda) l = S(lambda, F);
    return build_model(normalize(S(f, F), GroupSchemeSpec::make(kind, l)));
}

AlgebraMap scaled_generator(const FieldPtr& f, const Poly& h, int k) {
    const auto ap = monogenic(f, "X", h);
    const auto a = monogenic(f, "Y", detail::scaled_relation(h, k));
    return AlgebraMap::from_generators(a, ap, {QElement::variable(ap, 0).scaled(LaurentSeries::t_power(f, k))});
}

}  // namespace

// ---------------------------------------------------------------- coactions

TEST(Coaction, HandExpansions) {
    auto m = build(2, GroupKind::AlphaP, "t^-1");
    EXPECT_EQ(m.coaction.to_string(), "t*a + T");  // T + aT^2 with T^2 = t
    EXPECT_TRUE(check_coaction_axioms(m).all());

    auto triv = build(3, GroupKind::MuP, "t^3");
    EXPECT_EQ(triv.label, CaseLabel::TrivialTorsor);
    EXPECT_EQ(triv.coaction.to_string(), "z*T");
    EXPECT_TRUE(check_coaction_axioms(triv).all());

    auto h = build(2, GroupKind::HLambda, "t", "t");
    EXPECT_TRUE(check_coaction_axioms(h).all());
}

TEST(Coaction, EveryModelPasses) {
    struct C {
        int p;
        GroupKind k;
        const char* f;
        const char* l;
    };
    const std::vector<C> grid = {
        {2, GroupKind::AlphaP, "t^-1", nullptr}, {3, GroupKind::AlphaP, "t^-2", nullptr},
        {5, GroupKind::AlphaP, "t^-3", nullptr}, {3, GroupKind::AlphaP, "t + t^2", nullptr},
        {2, GroupKind::MuP, "t", nullptr},       {5, GroupKind::MuP, "t^2 + t^3", nullptr},
        {3, GroupKind::MuP, "1 + t + t^2", nullptr}, {2, GroupKind::MuP, "t^4", nullptr},
        {2, GroupKind::ZmodP, "t^-1", nullptr},  {3, GroupKind::ZmodP, "t^-2 + t^-1", nullptr},
        {2, GroupKind::ZmodP, "1", nullptr},     {3, GroupKind::ZmodP, "t^2", nullptr},
        {2, GroupKind::HLambda, "t^-1", "t"},    {3, GroupKind::HLambda, "t^-1", "t^2"},
        {3, GroupKind::HLambda, "t^2", "t"},     {2, GroupKind::AlphaP, "0", nullptr},
    };
    for (const auto& c : grid) {
        const auto m = build(c.p, c.k, c.f, c.l);
        const auto r = check_coaction_axioms(m);
        EXPECT_TRUE(r.relation) << case_label_name(m.label) << " " << c.f;
        EXPECT_TRUE(r.counit) << case_label_name(m.label) << " " << c.f;
        EXPECT_TRUE(r.coassociativity) << case_label_name(m.label) << " " << c.f;
        EXPECT_TRUE(r.generic_fiber) << case_label_name(m.label) << " " << c.f;
    }
}

TEST(Coaction, DetectsBrokenCoaction) {
    auto m = build(3, GroupKind::AlphaP, "t^-1");
    m.coaction = m.coaction + m.group_coordinate();
    EXPECT_FALSE(check_coaction_axioms(m).all());
}

// ---------------------------------------------------------------- morphisms

TEST(Morphism, KatzMazurAccepted) {
    for (int p : {2, 3, 5}) {
        auto f = FieldSpec::make(p);
        const auto c = katz_mazur_candidate(f);
        const auto r = check_model_morphism_report(c);
        EXPECT_TRUE(r.relation);
        EXPECT_TRUE(r.equivariant);
        EXPECT_TRUE(r.generic_identity);
        EXPECT_TRUE(check_coaction_axioms(c.target).all());
    }
}

TEST(Morphism, OmittingTRejected) {
    auto f = FieldSpec::make(3);
    auto c = katz_mazur_candidate(f);
    c.image = QElement::variable(c.source.algebra, 0);
    const auto r = check_model_morphism_report(c);
    EXPECT_FALSE(r.relation);
    EXPECT_FALSE(check_model_morphism(c));
}

TEST(Morphism, IdentityAccepted) {
    const auto m = build(3, GroupKind::ZmodP, "t^-1");
    const auto im = IntegralModel::from(m);
    ModelMorphismCandidate c{im, im, QElement::variable(m.algebra, 0)};
    EXPECT_TRUE(check_model_morphism(c));
}

TEST(Morphism, SeededMutationsRejected) {
    for (int p : {2, 3}) {
        auto f = FieldSpec::make(p);
        const auto base = katz_mazur_candidate(f);
        Rng rng(2024 + p);
        for (int i = 0; i < 20; ++i) {
            std::string what;
            const auto bad = mutate_candidate(base, rng, &what);
            EXPECT_FALSE(check_model_morphism(bad)) << what;
        }
    }
}

// ---------------------------------------------------------------- algebras

TEST(FiniteFree, TablesFromRingsAreValid) {
    auto f = FieldSpec::make(2);
    auto r = QuotientRing::make(f, {Relation{"X", Poly::monic(f, {S("t", f), S("1", f)})},
                                     Relation{"Z", Poly::monic(f, {S("1", f), S("t", f)})}});
    const auto a = FiniteFreeAlgebra::from_ring(r);
    EXPECT_EQ(a.rank(), 4u);
    EXPECT_TRUE(a.is_valid());
    auto broken = a;
    broken.table[1][1][0] = broken.table[1][1][0] + S("1", f);
    broken.table[1][1][3] = broken.table[1][1][3] + S("1", f);
    EXPECT_FALSE(broken.is_valid());
}

TEST(FiniteFree, InclusionsAreHomomorphisms) {
    auto f = FieldSpec::make(3);
    Rng rng(17);
    for (int i = 0; i < 20; ++i) {
        const auto ri = random_inclusion(f, rng);
        EXPECT_TRUE(ri.incl.is_homomorphism()) << ri.description;
        EXPECT_TRUE(ri.incl.source.is_valid());
        EXPECT_TRUE(ri.incl.target.is_valid());
    }
}

// ---------------------------------------------------------------- Smith form

TEST(Smith, Examples) {
    auto f = FieldSpec::make(2);
    Matrix d(f, 2, 2);
    d(0, 0) = S("1", f);
    d(1, 1) = S("t^2", f);
    EXPECT_EQ(smith_normal_form(d).exponents, (std::vector<int>{0, 2}));

    Matrix m(f, 2, 2);
    m(0, 0) = S("t", f);
    m(0, 1) = S("t", f);
    m(1, 0) = S("t", f);
    m(1, 1) = S("t + t^2", f);
    const auto s = smith_normal_form(m);
    // gcd of entries t, determinant t^3
    EXPECT_EQ(s.exponents, (std::vector<int>{1, 2}));
    EXPECT_TRUE(check_smith(m, s, 40).ok());

    Matrix z(f, 2, 2);
    z(0, 0) = S("1", f);
    z(1, 1) = LaurentSeries::zero(f, 10);
    SmithOptions so;
    so.margin = 5;
    EXPECT_THROW(smith_normal_form(z, so), PrecisionError);
}

TEST(Smith, InvariantUnderPrecisionDoubling) {
    auto f = FieldSpec::make(3);
    Rng rng(8);
    for (int i = 0; i < 15; ++i) {
        Matrix m(f, 3, 3);
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 0; b < 3; ++b) m(a, b) = random_polynomial(f, rng, 0, 3);
        SmithOptions lo, hi;
        lo.cap = 40;
        hi.cap = 80;
        lo.known_rank = hi.known_rank = exact_rank(m);
        const auto s1 = smith_normal_form(m, lo);
        const auto s2 = smith_normal_form(m, hi);
        EXPECT_EQ(s1.exponents, s2.exponents);
        EXPECT_TRUE(check_smith(m, s1, 40).ok());
        EXPECT_TRUE(check_smith(m, s2, 80).ok());
    }
}

// ---------------------------------------------------------------- descent

TEST(Descent, IdempotentExample) {
    // A' = R[e]/(e^2 - e), A = span{1, t e}
    auto f = FieldSpec::make(2);
    const auto incl = scaled_generator(f, Poly::monic(f, {LaurentSeries::zero(f), S("1", f)}), 1);
    const auto r = equalizer_check(incl);
    EXPECT_TRUE(r.equalizer_is_image);
    EXPECT_EQ(r.divisors, (std::vector<int>{1}));
    EXPECT_TRUE(r.smith_check.ok());
}

TEST(Descent, IdentityInclusion) {
    auto f = FieldSpec::make(2);
    const auto incl = scaled_generator(f, Poly::monic(f, {S("t", f), S("1", f), S("1", f)}), 0);
    const auto r = equalizer_check(incl);
    EXPECT_TRUE(r.equalizer_is_image);
    EXPECT_TRUE(r.divisors.empty());
}

TEST(Descent, ConstantsInSplitEtale) {
    auto f = FieldSpec::make(2);
    const auto ap = monogenic(f, "e", Poly::monic(f, {LaurentSeries::zero(f), S("1", f)}));
    const auto a = monogenic(f, "s", Poly::monic(f, {LaurentSeries::zero(f)}));
    const auto incl = AlgebraMap::from_generators(a, ap, {QElement::zero(ap)});
    ASSERT_EQ(incl.source.rank(), 1u);
    const auto r = equalizer_check(incl);
    EXPECT_EQ(r.generic_dimension, 1u);
    EXPECT_TRUE(r.equalizer_is_image);
}

TEST(Descent, NotSchematicallyDominant) {
    auto f = FieldSpec::make(2);
    const auto ap = monogenic(f, "e", Poly::monic(f, {LaurentSeries::zero(f), S("1", f)}));
    const auto a = monogenic(f, "s", Poly::monic(f, {LaurentSeries::zero(f), LaurentSeries::zero(f)}));
    // s -> 0 kills s
    const auto incl = AlgebraMap::from_generators(a, ap, {QElement::zero(ap)});
    EXPECT_THROW(equalizer_check(incl), DomainError);
}

// R[tX] inside R[X]/(h) with deg h >= 3: x = t X^2 satisfies
// x (x) 1 - 1 (x) x = (Y (x) 1 - 1 (x) Y)(X (x) 1 + 1 (x) X) with Y = tX,
// so x lies in the equalizer, but A = span{1, tX, t^2X^2, t^3X^3} misses it.
TEST(Descent, ScaledGeneratorCounterexample) {
    auto f = FieldSpec::make(2);
    const auto h = Poly::monic(f, {S("1", f), S("1 + t", f), S("1", f), S("t^2", f)});
    const auto incl = scaled_generator(f, h, 1);

    // oracle in A' (x)_R A' = R[X1, X2]/(h(X1), h(X2))
    const auto tt = QuotientRing::make(f, {Relation{"X1", h}, Relation{"X2", h}});
    const auto x1 = QElement::variable(tt, 0), x2 = QElement::variable(tt, 1);
    const auto t = S("t", f);
    const auto lhs = (x1 * x1).scaled(t) - (x2 * x2).scaled(t);
    const auto rhs = (x1.scaled(t) - x2.scaled(t)) * (x1 + x2);
    ASSERT_TRUE((lhs - rhs).is_exact_zero());
    // t X^2 has X^2-coordinate t; elements of A have X^2-coordinate in t^2 R
    const auto img = incl.apply({LaurentSeries::zero(f), LaurentSeries::zero(f), S("1", f), LaurentSeries::zero(f)});
    EXPECT_EQ(img[2].valuation(), 2);

    const auto r = equalizer_check(incl);
    EXPECT_EQ(r.generic_dimension, 4u);
    EXPECT_EQ(r.divisors, (std::vector<int>{1, 2, 3}));
    EXPECT_TRUE(r.smith_check.ok());
    EXPECT_FALSE(r.equalizer_is_image);
}

TEST(Descent, RandomSuiteMatchesTheory) {
    // free extensions descend (faithfully flat); R[t^k X] fails exactly when
    // k >= 1 and deg h >= 3 (the t^k X^2 element above)
    auto f = FieldSpec::make(2);
    Rng rng(40);
    for (int i = 0; i < 50; ++i) {
        const auto ri = random_inclusion(f, rng);
        const auto r = equalizer_check(ri.incl);
        EXPECT_TRUE(r.smith_check.ok()) << ri.description;
        EXPECT_EQ(r.generic_dimension, ri.incl.source.rank()) << ri.description;
        const bool expected = !(ri.family == 0 && ri.k >= 1 && ri.h_degree >= 3);
        EXPECT_EQ(r.equalizer_is_image, expected) << ri.description;
    }
}

TEST(Descent, ExtensionField) {
    auto f = FieldSpec::make(2, 2);
    const auto incl = scaled_generator(f, Poly::monic(f, {LaurentSeries::zero(f), S("1", f)}), 2);
    const auto r = equalizer_check(incl);
    EXPECT_EQ(r.divisors, (std::vector<int>{2}));
    EXPECT_TRUE(r.equalizer_is_image);
}
