#include "sidv/diffexpr.hpp"

#include <gtest/gtest.h>

using namespace sidv;

namespace {

// (1.1) rearranged: u_t = eps*a*u_xxx - 2a*u_x*u_xx/u
RuleSet familyRule(const DiffExpr& eps, const DiffExpr& a) {
    return {{Sym::U, eps * a * U(3) - 2 * a * U(1) * U(2) / U()}};
}

}  // namespace

TEST(TotalDx, Definitions) {
    EXPECT_EQ(totalDx(U()), U(1));
    EXPECT_EQ(totalDx(X() * U()), U() + X() * U(1));
    EXPECT_EQ(totalDx(parse("u_x^2/(2*u^2)")), parse("u_x*u_xx/u^2 - u_x^3/u^3"));
    EXPECT_EQ(totalDx(T()), DiffExpr(0));
    EXPECT_EQ(totalDx(Log()), U(1) / U());
}

TEST(TotalDt, SubstitutionMode) {
    auto r = familyRule(1, 1);
    EXPECT_EQ(totalDt(U(), r), parse("u_3x - 2*u_x*u_xx/u"));
    EXPECT_TRUE(totalDt(DiffExpr(5), r).isZero());
    auto r2 = familyRule(rat(-2, 3), rat(-3, 2));
    DiffExpr eps = rat(-2, 3), a = rat(-3, 2);
    DiffExpr flux = (2 + eps) * a * U(1).pow(2) - 2 * eps * a * U() * U(2);
    EXPECT_TRUE((totalDt(U().pow(2), r2) + totalDx(flux)).isZero());
}

TEST(TotalDt, FormalModeAndErrors) {
    EXPECT_EQ(totalDt(U(2), {}, true), Ut(2));
    EXPECT_THROW(totalDt(U(), {}), MissingRule);
    EXPECT_THROW(totalDt(Ut(), {}, true), SecondTimeDerivative);
    EXPECT_EQ(totalDt(T() * U(), {}, true), U() + T() * Ut());
}

TEST(Euler, Examples) {
    EXPECT_EQ(eulerOperator(U().pow(2)), 2 * U());
    DiffExpr c01 = parse(
        "2*u^3*u_xx + 3*t*u^3*u_txx + x*u^3*u_3x + 2*u^2*u_x^2 + 6*t*u^2*u_x*u_tx + "
        "3*t*u^2*u_t*u_xx + 3*x*u^2*u_x*u_xx");
    EXPECT_EQ(eulerOperator(c01), parse("-4*u*(u_x^2 + u*u_xx)"));
    DiffExpr f = parse("u_x^3/u + x*u*u_2x + eps*u^2");
    EXPECT_TRUE(eulerOperator(totalDx(f)).isZero());
}

TEST(Frechet, Examples) {
    DiffExpr Q = parse("x*u_x + u^2");
    EXPECT_EQ(frechet(U(), Q), Q);
    EXPECT_EQ(frechet(U().pow(2), Q), 2 * U() * Q);
    DiffExpr K = parse("u_3x - 3*u_x*u_xx/u");
    EXPECT_EQ(frechet(K, U(1)), totalDx(K));
}

TEST(IntegrateX, Examples) {
    EXPECT_EQ(integrateX(U(1)), U());
    EXPECT_EQ(integrateX(parse("u_x*u_xx/u^2 - u_x^3/u^3")), parse("u_x^2/(2*u^2)"));
    EXPECT_THROW(integrateX(U().pow(2)), NotExact);
    EXPECT_EQ(integrateX(U(1) / U()), Log());
    EXPECT_EQ(integrateX(parse("x^2")), parse("x^3/3"));
    EXPECT_EQ(totalDx(integrateX(parse("a*u_t3x*u_t2x + x*u_x + u"))), parse("a*u_t3x*u_t2x + x*u_x + u"));
}

TEST(Parser, RoundTripAndSyntax) {
    for (const char* s : {"u", "u_x", "u_3x", "u_t", "u_t2x", "rho", "rho_x", "eps*a + c/lam",
                          "3/2*u^-2*u_x - 1/7*rho_tx", "(u + 1)/(u_x - eps)", "x*t*logu"}) {
        DiffExpr e = parse(s);
        EXPECT_EQ(parse(print(e)), e) << s << " -> " << print(e);
    }
    EXPECT_EQ(parse("u_xx"), U(2));
    EXPECT_EQ(parse("u_txx"), Ut(2));
    EXPECT_EQ(parse("u_t,4x"), Ut(4));
    EXPECT_THROW(parse("u_y"), ParseError);
    EXPECT_THROW(parse("2 +"), ParseError);
    EXPECT_THROW(parse("w"), ParseError);
}

TEST(Canonical, EqualityBasics) {
    DiffExpr a = parse("(u^2 - 1)/(u - 1)");
    EXPECT_EQ(a, parse("u + 1"));
    EXPECT_TRUE(a.isPolyDen());
    DiffExpr b = parse("1/(eps - 2)");
    EXPECT_EQ(b * parse("eps - 2"), DiffExpr(1));
    EXPECT_EQ(parse("I^2"), parse("I^2"));
    EXPECT_EQ(parse("I^3").reduceImaginary(), -parse("I"));
}
