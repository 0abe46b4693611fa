#include <gtest/gtest.h>

#include "oracles.hpp"
#include "printers.hpp"
#include "properties.hpp"
#include "syzmod/variety.hpp"

using namespace syzmod;

namespace {

GradedClass poly(const RingPtr& ring, std::vector<Rational> coeffs) { return GradedClass::from_degrees(ring, coeffs); }

ChernPolynomial chern(const RingPtr& ring, std::vector<Rational> coeffs, std::int64_t rank) {
    return {poly(ring, std::move(coeffs)), rank};
}

}  // namespace

TEST(Ring, GeneratorProductsTruncate) {
    const auto p2 = RingSpec::projective_space(2);
    const auto h = GradedClass::hyperplane(p2);
    EXPECT_EQ(h * h, poly(p2, {0, 0, 1}));
    EXPECT_TRUE((h * h * h).is_zero());
    EXPECT_EQ(poly(p2, {1, -2}) * poly(p2, {1, -2}), poly(p2, {1, -4, 4}));
}

TEST(Ring, MismatchedRingsAreRejected) {
    const auto a = GradedClass::one(RingSpec::projective_space(2));
    const auto b = GradedClass::one(RingSpec::projective_space(3));
    EXPECT_THROW(class_mul(a, b), StructuralError);
}

TEST(Ring, ComponentsAboveTopDegreeDoNotExist) {
    EXPECT_THROW(poly(RingSpec::projective_space(2), {1, 2, 3, 4}), StructuralError);
}

TEST(Ring, ProjectiveSpaceSatisfiesRingAxioms) {
    for (int n = 1; n <= 5; ++n) EXPECT_NO_THROW(RingSpec::projective_space(n)->verify_axioms());
}

TEST(Ring, CustomRingMustBeAssociative) {
    // rank-1 pieces in degrees 0..2, but h*h = 2 e2 and degree map e2 -> 1
    std::vector<StructureConstant> ok{{{1, 0}, {1, 0}, {{{2, 0}, Rational(2)}}}};
    EXPECT_NO_THROW(RingSpec::custom({1, 1, 1}, ok, {Rational(1)}, std::vector<Rational>{Rational(1)}));

    // a, b in degree 1, c in degree 2: a*a = c, a*b = 0, a*c = b*c = top,
    // so (a*a)*b != a*(a*b)
    std::vector<StructureConstant> bad{{{1, 0}, {1, 0}, {{{2, 0}, Rational(1)}}},
                                       {{1, 0}, {2, 0}, {{{3, 0}, Rational(1)}}},
                                       {{1, 1}, {2, 0}, {{{3, 0}, Rational(1)}}}};
    EXPECT_THROW(RingSpec::custom({1, 2, 1, 1}, bad, {Rational(1)}, std::nullopt), StructuralError);
    std::vector<StructureConstant> ungraded{{{1, 0}, {1, 0}, {{{1, 0}, Rational(1)}}}};
    EXPECT_THROW(RingSpec::custom({1, 1, 1}, ungraded, {Rational(1)}), StructuralError);
}

TEST(Chern, InvertExamples) {
    const auto p2 = RingSpec::projective_space(2);
    EXPECT_EQ(chern_invert(chern(p2, {1, 3}, 1), 2).total(), poly(p2, {1, -3, 9}));
    EXPECT_EQ(chern_invert(chern(p2, {1, 4, 12}, 2), 2).total(), poly(p2, {1, -4, 4}));
    EXPECT_EQ(chern_invert(chern(p2, {1}, 3), 3).total(), GradedClass::one(p2));
    EXPECT_EQ(chern_invert(chern(p2, {1, 3}, 1), 2).rank(), 2);
}

TEST(Chern, InvalidLeadingCoefficient) {
    const auto p2 = RingSpec::projective_space(2);
    EXPECT_THROW(chern(p2, {2, 1}, 1), PreconditionError);
    EXPECT_THROW(chern(p2, {0}, 1), PreconditionError);
}

TEST(Chern, InvertRoundTripProperty) { EXPECT_EQ(props::chern_invert_roundtrip(1000, 11), ""); }

TEST(Chern, TwistExamples) {
    const auto p2 = RingSpec::projective_space(2);
    const auto h = GradedClass::hyperplane(p2);
    EXPECT_EQ(chern_of_twist(chern(p2, {1, -2}, 1), h * Rational(2)).total(), GradedClass::one(p2));
    for (int N = -4; N <= 4; ++N)
        EXPECT_EQ(chern_of_twist(chern(p2, {1, 3}, 1), h * Rational(N)).total(), poly(p2, {1, 3 + N}));
    EXPECT_EQ(chern_of_twist(chern(p2, {1, -3, 9}, 2), h).total(), poly(p2, {1, -1, 7}));
}

TEST(Chern, TwistAgreesWithCharacterProduct) {
    // ch(E (x) L) = ch(E) ch(L), on random rank-2 and rank-3 data over P^3
    const auto p3 = RingSpec::projective_space(3);
    const auto h = GradedClass::hyperplane(p3);
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> c(-6, 6);
    for (int trial = 0; trial < 200; ++trial) {
        const ChernPolynomial e = chern(p3, {1, c(rng), c(rng), c(rng)}, 2 + trial % 2);
        const int k = c(rng);
        const ChernPolynomial l = chern(p3, {1, k}, 1);
        EXPECT_EQ(chern_character(chern_of_twist(e, h * Rational(k))), chern_character(e) * chern_character(l));
        EXPECT_EQ(chern_of_twist(chern_of_twist(e, h * Rational(k)), h * Rational(-k)), e);
    }
}

TEST(Chern, TwistNeedsDegreeOneClass) {
    const auto p2 = RingSpec::projective_space(2);
    EXPECT_THROW(chern_of_twist(chern(p2, {1, 1}, 1), poly(p2, {0, 0, 1})), PreconditionError);
}

TEST(Chern, DualNegatesOddClasses) {
    const auto p3 = RingSpec::projective_space(3);
    EXPECT_EQ(chern_dual(chern(p3, {1, 2, 3, 4}, 3)).total(), poly(p3, {1, -2, 3, -4}));
}

TEST(Character, Examples) {
    const auto p2 = RingSpec::projective_space(2);
    EXPECT_EQ(chern_character(chern(p2, {1, -3, 9}, 2)), poly(p2, {2, -3, Rational(-9, 2)}));
    EXPECT_EQ(chern_character(chern(p2, {1, 0, 27}, 4)), poly(p2, {4, 0, -27}));
}

TEST(Character, LineBundlesMatchExponential) {
    for (int n = 1; n <= 4; ++n) {
        const auto ring = RingSpec::projective_space(n);
        for (int d = -5; d <= 5; ++d) {
            const auto ch = chern_character(chern(ring, {1, d}, 1));
            EXPECT_EQ(ch, GradedClass::from_degrees(ring, oracle::exp_series(d, n))) << "n=" << n << " d=" << d;
        }
    }
}

TEST(Character, SplitBundlesMatchSumOfExponentials) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> deg(-4, 4), count(1, 4);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + trial % 3;
        const auto ring = RingSpec::projective_space(n);
        std::vector<std::int64_t> ds;
        GradedClass total = GradedClass::one(ring);
        for (int k = count(rng); k > 0; --k) {
            ds.push_back(deg(rng));
            total = total * poly(ring, {1, ds.back()});
        }
        const ChernPolynomial c(total, static_cast<std::int64_t>(ds.size()));
        EXPECT_EQ(chern_character(c), GradedClass::from_degrees(ring, oracle::ch_split(ds, n)));
        EXPECT_EQ(chern_from_character(chern_character(c)), c);
    }
}

TEST(Character, AdditiveUnderWhitneyProduct) {
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> c(-5, 5), r(0, 4);
    for (int trial = 0; trial < 300; ++trial) {
        const auto ring = RingSpec::projective_space(2 + trial % 2);
        std::vector<Rational> a{1, c(rng), c(rng), c(rng)}, b{1, c(rng), c(rng), c(rng)};
        a.resize(ring->size());
        b.resize(ring->size());
        const ChernPolynomial x(poly(ring, a), r(rng)), y(poly(ring, b), r(rng));
        EXPECT_EQ(chern_character(whitney_sum(x, y)), chern_character(x) + chern_character(y));
    }
}

TEST(Todd, ProjectiveSpaces) {
    EXPECT_EQ(todd_class(projective_space(2)), poly(*projective_space(2).ring, {1, Rational(3, 2), 1}));
    EXPECT_EQ(todd_class(projective_space(3)), poly(*projective_space(3).ring, {1, 2, Rational(11, 6), 1}));
    const auto p1 = RingSpec::projective_space(1);
    EXPECT_EQ(todd_class(chern(p1, {1, 2}, 1)), poly(p1, {1, 1}));
}

TEST(Todd, MatchesPowerSeriesOracle) {
    for (int n = 1; n <= 3; ++n) {
        const auto ring = RingSpec::projective_space(n);
        std::vector<Rational> tc;
        for (int k = 0; k <= n; ++k) tc.push_back(binom64(n + 1, k));
        EXPECT_EQ(todd_class(ChernPolynomial(poly(ring, tc), n)), GradedClass::from_degrees(ring, oracle::todd_pn(n)));
    }
}

TEST(Todd, UnsupportedAboveDegreeThree) {
    EXPECT_THROW(todd_class(projective_space(4)), UnsupportedError);
    const VarietySpec p4 = projective_space(4);
    EXPECT_THROW(euler_char_hrr(ChernPolynomial::trivial(*p4.ring, 1), p4), UnsupportedError);
    EXPECT_THROW(euler_char_hrr(ChernPolynomial::trivial(*projective_space(2).ring, 1), calabi_yau_quintic()),
                 UnsupportedError);
}

TEST(Hrr, Examples) {
    const VarietySpec p2 = projective_space(2);
    EXPECT_EQ(euler_char_hrr(ChernPolynomial::trivial(*p2.ring, 1), p2), 1);
    EXPECT_EQ(euler_char_hrr(chern(*p2.ring, {1, 3}, 1), p2), 10);
    EXPECT_EQ(euler_char_of_character(endomorphism_character(chern(*p2.ring, {1, -3, 9}, 2)), p2), -23);
    EXPECT_EQ(euler_char_of_character(chern_character(chern(*p2.ring, {1, 0, 27}, 4)), p2), -23);
}

TEST(Hrr, SplitBundlesMatchOracle) {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> deg(-6, 6), count(1, 3);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + trial % 2;
        const VarietySpec x = projective_space(n);
        std::vector<std::int64_t> ds;
        GradedClass total = GradedClass::one(*x.ring);
        for (int k = count(rng); k > 0; --k) {
            ds.push_back(deg(rng));
            total = total * poly(*x.ring, {1, ds.back()});
        }
        const std::int64_t chi = euler_char_hrr(ChernPolynomial(total, static_cast<std::int64_t>(ds.size())), x);
        EXPECT_EQ(Rational(chi), oracle::hrr_pn(oracle::ch_split(ds, n), n));
        EXPECT_EQ(chi, oracle::alternating(oracle::bott_sum(n, ds)));
    }
}

TEST(Hrr, NonIntegralResultRaises) {
    const VarietySpec p2 = projective_space(2);
    EXPECT_THROW(euler_char_of_character(poly(*p2.ring, {1, Rational(1, 3)}), p2), InternalError);
}

TEST(Hrr, AgreesWithTablesForLineBundles) {
    EXPECT_EQ(props::hrr_matches_tables(2, 6), "");
    EXPECT_EQ(props::hrr_matches_tables(3, 6), "");
}
