#include "sidv/operators.hpp"

#include <gtest/gtest.h>

using namespace sidv;

namespace {

bool same(const DiffExpr& a, const DiffExpr& b) { return (a - b).isZero(); }

const CheckRecord& find(const std::vector<CheckRecord>& v, const std::string& id) {
    for (auto& r : v)
        if (r.id == id) return r;
    throw std::runtime_error("no record " + id);
}

}  // namespace

TEST(ApplyOp, IdentityAndMinus) {
    DiffExpr q = parse("x*u_x^2/u + u_3x");
    EXPECT_TRUE(same(applyOp(PseudoDiffOp::identity(), q), q));
    EXPECT_TRUE(same(applyOp(recursionMinus(), U(1)), parse("u_3x + 3*u_x*u_xx/u")));
    EXPECT_TRUE(same(applyOp(recursionMinus(), U()), parse("2*u_xx + 2*u_x^2/u")));
}

TEST(ApplyOp, NonlocalNotExact) {
    // (u^-2 u_xx - u^-3 u_x^2) u^2 = u_xx - u_x^2/u is not exact
    EXPECT_THROW(applyOp(recursionPlusDerived(), U().pow(2)), NotExact);
    EXPECT_NO_THROW(applyOp(recursionPlusDerived(), U()));
}

TEST(Symmetry, Generators) {
    DiffExpr K = familyRhs(P(kEps), P(kA));
    EXPECT_TRUE(checkSymmetry(K, U(1)).isZero());
    EXPECT_TRUE(checkSymmetry(K, U()).isZero());
    EXPECT_TRUE(checkSymmetry(K, 3 * T() * Ut() + X() * U(1)).isZero());
    EXPECT_FALSE(checkSymmetry(K, U().pow(2)).isZero());
}

TEST(Symmetry, MinusChain) {
    EquationSpec eq = EquationSpec::family(Rational(-2, 3), Rational(-3, 2));
    DiffExpr q = U(1);
    for (int k = 0; k < 3; ++k) {
        EXPECT_TRUE(checkSymmetry(eq, q).isZero()) << k;
        q = applyOp(recursionMinus(), q);
    }
}

TEST(RecursionPlus, OnlyDerivedReadingMapsToFlow) {
    EquationSpec eq = EquationSpec::family(Rational(2, 3), Rational(3, 2));
    EXPECT_TRUE(same(applyOp(recursionPlusDerived(), U(1)), eq.rhs()));
    EXPECT_FALSE(checkSymmetry(eq, applyOp(recursionPlusPrinted(), U(1))).isZero());
    EXPECT_FALSE(checkSymmetry(eq, applyOp(recursionPlusSuggested(), U(1))).isZero());
}

TEST(Conservation, Examples) {
    DiffExpr a = P(kA), eps = P(kEps);
    RuleSet r1 = {{Sym::U, familyRhs(eps, a)}};
    EXPECT_TRUE(checkConservation({U().pow(2), (2 + eps) * a * U(1).pow(2) - 2 * eps * a * U() * U(2), r1}).isZero());
    RuleSet r2 = {{Sym::U, familyRhs(2, a)}};
    EXPECT_TRUE(logDensityCheck({Log(), -2 * a * U(2) / U(), r2}).isZero());
    RuleSet bad = {{Sym::U, familyRhs(1, a)}};
    EXPECT_FALSE(logDensityCheck({Log(), -2 * a * U(2) / U(), bad}).isZero());
}

TEST(Conservation, MissingRhoRule) {
    RuleSet r = {{Sym::U, familyRhs(rat(-2, 3), P(kA))}};
    EXPECT_THROW(checkConservation({Rho() * U().pow(2), DiffExpr(0), r}), MissingRule);
}

TEST(Conservation, TrivialVectorInvariance) {
    RuleSet r = {{Sym::U, familyRhs(P(kEps), P(kA))}};
    ConservedVector v{U().pow(2), (2 + P(kEps)) * P(kA) * U(1).pow(2) - 2 * P(kEps) * P(kA) * U() * U(2), r};
    for (auto f : {parse("u_x*u/x"), parse("u^3*u_xx"), parse("t*u_x^2/u")}) {
        ConservedVector w{v.density + totalDx(f), v.flux - totalDt(f, r), r};
        EXPECT_TRUE(same(checkConservation(v), checkConservation(w)));
    }
}

TEST(Hierarchy, DensitiesAndEuler) {
    EXPECT_TRUE(same(hierarchyDensity(0), U().pow(3) * (3 * T() * Ut() + X() * U(1))));
    EXPECT_TRUE(same(hierarchyDensity(1), parse(hierarchyReferenceDensity(1))));
    EXPECT_TRUE(eulerOperator(hierarchyDensity(2)).isZero());
    for (int n = 1; n <= 4; ++n)
        EXPECT_TRUE(same(eulerOperator(hierarchyDensity(n)), parse(hierarchyReferenceEuler(n)))) << n;
    EXPECT_TRUE(same(hierarchyDensity(3), parse(hierarchyReferenceDensity(3))));
    EXPECT_TRUE(same(hierarchyDensity(4), parse(hierarchyReferenceDensity(4))));
}

TEST(Lax, ZeroCurvature) {
    Mat2 r = zeroCurvatureResidual(laxPairFromOperators());
    EXPECT_TRUE(r[0][0].isZero());
    EXPECT_TRUE(r[0][1].isZero());
    EXPECT_TRUE(r[1][1].isZero());
    EXPECT_TRUE(same(r[1][0], miuraFactorization()));
    RuleSet plus = {{Sym::U, U(3) - 3 * U(1) * U(2) / U()}};
    EXPECT_TRUE(reduceByRules(r[1][0], plus).isZero());
    ZeroCurvaturePair p = laxPairFromOperators();
    p.V[0][0] += P(kLam);
    EXPECT_FALSE(zeroCurvatureResidual(p)[0][1].isZero());
}

TEST(Lax, PrintedDiffersOnlyInV12) {
    ZeroCurvaturePair d = laxPairFromOperators(), p = laxPairPrinted();
    EXPECT_TRUE(same(d.U[1][0], p.U[1][0]));
    EXPECT_TRUE(same(d.V[0][0], p.V[0][0]));
    EXPECT_TRUE(same(d.V[1][0], p.V[1][0]));
    EXPECT_TRUE(same(d.V[1][1], p.V[1][1]));
    EXPECT_TRUE(same(d.V[0][1], parse("-2*u_xx/u - 4*lam")));
}

TEST(Mikhailov, Cases) {
    auto m = mikhailovWithLogSigmas(EquationSpec::family(Rational(-2, 3), Rational(-3, 2)));
    EXPECT_TRUE(m.pass);
    EXPECT_TRUE(same(*m.sigma[0], totalDt(3 * Log(), {{Sym::U, familyRhs(rat(-2, 3), rat(-3, 2))}})));
    auto airy = mikhailovTest(U(3));
    EXPECT_TRUE(airy.pass);
    for (auto& s : airy.sigma) EXPECT_TRUE(s->isZero());
    auto notApplicable = mikhailovTest(EquationSpec::family(1, 2));
    EXPECT_FALSE(notApplicable.applicable);
}

TEST(Dispersion, Law) {
    auto r = dispersionCheck(P(kEps), P(kA));
    EXPECT_TRUE(r.matchesLaw);
    EXPECT_TRUE(r.oddInK);
    EXPECT_TRUE(dispersionCheck(2, P(kA)).omega.isZero());
    EXPECT_TRUE(same(dispersionCheck(0, 1).omega.substitute(kK, 1), DiffExpr(-2)));
}

TEST(Suites, Statuses) {
    auto c = suiteConservation();
    for (auto& r : c) EXPECT_NE(r.status, "fail") << r.id;
    EXPECT_EQ(find(c, "conservation.rho.v2").status, "typo-suspect");
    auto h = suiteHierarchy();
    EXPECT_EQ(find(h, "hierarchy.n2.density").status, "typo-suspect");
    EXPECT_EQ(find(h, "hierarchy.n2.euler").status, "pass");
    for (auto& r : suiteLax()) EXPECT_NE(r.status, "fail") << r.id;
    for (auto& r : suiteMikhailov()) EXPECT_NE(r.status, "fail") << r.id;
    for (auto& r : suiteDispersion()) EXPECT_EQ(r.status, "pass") << r.id;
    EXPECT_EQ(find(suiteDispersion(Rational(2)), "dispersion.eps=2").note, "stationary: omega=0");
}
