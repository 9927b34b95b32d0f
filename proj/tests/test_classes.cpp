#include <gtest/gtest.h>

#include "maxmodel/classes.hpp"
#include "maxmodel/random.hpp"
#include "support.hpp"

using namespace maxmodel;

namespace {

LaurentSeries S(const char* text, const FieldPtr& f, int prec = kExact) {
    return LaurentSeries::parse(text, f, prec);
}

GroupSchemeSpec G(GroupKind k) { return GroupSchemeSpec::make(k); }

LaurentSeries wp(const LaurentSeries& y, int p) { return y.pow(p, kExact) - y; }

}  // namespace

TEST(GroupSpec, LambdaRules) {
    auto f = FieldSpec::make(2);
    EXPECT_THROW(GroupSchemeSpec::make(GroupKind::HLambda), DomainError);
    EXPECT_THROW(GroupSchemeSpec::make(GroupKind::HLambda, S("1 + t", f)), DomainError);
    EXPECT_THROW(GroupSchemeSpec::make(GroupKind::MuP, S("t", f)), DomainError);
    EXPECT_NO_THROW(GroupSchemeSpec::make(GroupKind::HLambda, S("t^2", f)));
    EXPECT_EQ(parse_group_kind("alpha_p"), GroupKind::AlphaP);
    EXPECT_THROW(parse_group_kind("beta_p"), ParseError);
}

TEST(Mu, Examples) {
    auto f = FieldSpec::make(2);
    auto c = normalize_mu(S("t^5", f));
    ASSERT_TRUE(std::holds_alternative<cls::Ramified>(c.normalized));
    EXPECT_EQ(std::get<cls::Ramified>(c.normalized).i, 1);
    EXPECT_EQ(std::get<cls::Ramified>(c.normalized).u, S("1", f, 40));

    EXPECT_TRUE(std::holds_alternative<cls::Trivial>(normalize_mu(S("t^2", f)).normalized));

    auto k = normalize_mu(S("1 + t", f));
    ASSERT_TRUE(std::holds_alternative<cls::UnitKummer>(k.normalized));
    EXPECT_TRUE(agree_on_window(std::get<cls::UnitKummer>(k.normalized).u, S("1 + t", f)));
}

TEST(Mu, RejectsZero) {
    auto f = FieldSpec::make(3);
    EXPECT_THROW(normalize_mu(LaurentSeries::zero(f)), DomainError);
}

TEST(Alpha, Examples) {
    auto f2 = FieldSpec::make(2);
    auto a = normalize_alpha(S("t^-2 + t^-1", f2));
    ASSERT_TRUE(std::holds_alternative<cls::Ramified>(a.normalized));
    EXPECT_EQ(std::get<cls::Ramified>(a.normalized).i, -1);
    EXPECT_EQ(std::get<cls::Ramified>(a.normalized).u, S("1", f2));

    auto f3 = FieldSpec::make(3);
    EXPECT_TRUE(std::holds_alternative<cls::Trivial>(normalize_alpha(S("t^3", f3)).normalized));
    auto b = normalize_alpha(S("t^-1", f3));
    EXPECT_EQ(std::get<cls::Ramified>(b.normalized).i, -1);
}

TEST(ArtinSchreier, Examples) {
    auto f = FieldSpec::make(2);
    auto a = normalize_as(S("t^-2", f));
    ASSERT_TRUE(std::holds_alternative<cls::RamifiedAS>(a.normalized));
    EXPECT_EQ(std::get<cls::RamifiedAS>(a.normalized).m, 1);
    EXPECT_EQ(std::get<cls::RamifiedAS>(a.normalized).u, S("1", f));

    auto b = normalize_as(S("1", f));
    ASSERT_TRUE(std::holds_alternative<cls::UnramifiedAS>(b.normalized));
    EXPECT_EQ(std::get<cls::UnramifiedAS>(b.normalized).c, f->one());

    EXPECT_TRUE(std::holds_alternative<cls::Trivial>(normalize_as(S("t", f)).normalized));
    EXPECT_TRUE(std::holds_alternative<cls::Trivial>(normalize_as(LaurentSeries::zero(f)).normalized));
}

TEST(ArtinSchreier, TailRootSolvesEquation) {
    auto f = FieldSpec::make(2);
    const auto y = artin_schreier_tail_root(S("t", f), 40);
    // y = t + t^2 + t^4 + ... up to sign; y^2 - y = t mod t^40
    EXPECT_TRUE(agree_on_window(wp(y, 2), S("t", f, 40)));
    auto g = FieldSpec::make(3);
    const auto z = artin_schreier_tail_root(S("t + 2*t^2", g), 40);
    EXPECT_TRUE(agree_on_window(wp(z, 3), S("t + 2*t^2", g, 40)));
}

TEST(ArtinSchreier, ExtensionFieldConstantTransversal) {
    // over F_4, c and c + (b^2 - b) give the same class
    auto f = FieldSpec::make(2, 2);
    for (std::uint32_t c = 0; c < 4; ++c)
        for (std::uint32_t b = 0; b < 4; ++b) {
            const FieldElement shift = f->sub(f->mul(FieldElement{b}, FieldElement{b}), FieldElement{b});
            auto x = normalize_as(LaurentSeries::constant(f, FieldElement{c}));
            auto y = normalize_as(LaurentSeries::constant(f, f->add(FieldElement{c}, shift)));
            EXPECT_EQ(x.normalized, y.normalized);
        }
}

TEST(HLambda, Examples) {
    auto f = FieldSpec::make(2);
    auto spec = GroupSchemeSpec::make(GroupKind::HLambda, S("t", f));
    auto a = normalize_hlambda(S("t", f), spec);
    ASSERT_TRUE(std::holds_alternative<cls::HExtendable>(a.normalized));
    auto b = normalize_hlambda(S("t^-1", f), spec);
    ASSERT_TRUE(std::holds_alternative<cls::HRamified>(b.normalized));
    EXPECT_EQ(std::get<cls::HRamified>(b.normalized).i, 1);
    EXPECT_EQ(std::get<cls::HRamified>(b.normalized).delta, S("1", f));
    EXPECT_TRUE(std::holds_alternative<cls::Trivial>(normalize_hlambda(LaurentSeries::zero(f), spec).normalized));
}

TEST(HLambda, ReduceFlagOnlyDropsPthPowers) {
    auto f = FieldSpec::make(2);
    auto spec = GroupSchemeSpec::make(GroupKind::HLambda, S("t", f));
    NormalizeOptions opts;
    opts.reduce = true;
    auto r = normalize_hlambda(S("t^-4 + t^-1", f), spec, opts);
    EXPECT_EQ(std::get<cls::HRamified>(r.normalized).i, 1);
    auto raw = normalize_hlambda(S("t^-4 + t^-1", f), spec);
    EXPECT_EQ(std::get<cls::HRamified>(raw.normalized).i, 4);
}

// ---------------------------------------------------------------- properties

class ClassInvariance : public ::testing::TestWithParam<int> {};

TEST_P(ClassInvariance, MuAlphaArtinSchreier) {
    const int p = GetParam();
    auto f = FieldSpec::make(p);
    Rng rng(7 + p);
    for (int trial = 0; trial < 40; ++trial) {
        const auto y = random_unit(f, rng, 5).shifted(random_int(rng, -2, 2));
        const auto fm = random_unit(f, rng, 6).shifted(random_int(rng, -3, 3));
        const auto ref_mu = normalize_mu(fm);
        EXPECT_EQ(normalize_mu(fm * y.pow(p, kExact)).normalized, ref_mu.normalized) << fm.to_string();

        const auto fa = random_polynomial(f, rng, -5, 5);
        EXPECT_EQ(normalize_alpha(fa + y.pow(p, kExact)).normalized, normalize_alpha(fa).normalized);

        const auto z = random_polynomial(f, rng, -3, 4);
        const auto ref_as = normalize_as(fa);
        EXPECT_EQ(normalize_as(fa + wp(z, p)).normalized, ref_as.normalized) << fa.to_string();
    }
}

TEST_P(ClassInvariance, Idempotence) {
    const int p = GetParam();
    auto f = FieldSpec::make(p);
    Rng rng(31 * p);
    auto rebuild = [&](const NormalizedClass& c) -> std::optional<LaurentSeries> {
        if (auto* r = std::get_if<cls::Ramified>(&c)) return r->u.shifted(r->i);
        if (auto* r = std::get_if<cls::UnitKummer>(&c)) return r->u;
        if (auto* r = std::get_if<cls::RamifiedAS>(&c)) return r->u.shifted(-r->m);
        if (auto* r = std::get_if<cls::UnramifiedAS>(&c)) return LaurentSeries::constant(f, r->c);
        return std::nullopt;
    };
    for (int trial = 0; trial < 30; ++trial) {
        const auto x = random_unit(f, rng, 6).shifted(random_int(rng, -4, 4));
        for (auto kind : {GroupKind::MuP, GroupKind::AlphaP, GroupKind::ZmodP}) {
            const auto once = normalize(x, G(kind));
            const auto again = rebuild(once.normalized);
            if (!again) continue;
            EXPECT_TRUE(agree_on_window(normalize(*again, G(kind)).normalized, once.normalized))
                << group_kind_name(kind) << " " << x.to_string();
        }
    }
}

TEST_P(ClassInvariance, OutputInvariants) {
    const int p = GetParam();
    auto f = FieldSpec::make(p);
    Rng rng(1000 + p);
    for (int trial = 0; trial < 40; ++trial) {
        const auto x = random_polynomial(f, rng, -6, 6);
        if (x.is_exact_zero()) continue;
        const auto ca = normalize_alpha(x), cs = normalize_as(x), cm = normalize_mu(x);
        if (auto* r = std::get_if<cls::Ramified>(&ca.normalized)) {
            EXPECT_NE(r->i % p, 0);
            EXPECT_TRUE(r->u.is_unit());
        }
        if (auto* r = std::get_if<cls::RamifiedAS>(&cs.normalized)) {
            EXPECT_GE(r->m, 1);
            EXPECT_NE(r->m % p, 0);
        }
        if (auto* r = std::get_if<cls::Ramified>(&cm.normalized)) {
            EXPECT_GE(r->i, 1);
            EXPECT_LE(r->i, p - 1);
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Primes, ClassInvariance, ::testing::Values(2, 3, 5));
