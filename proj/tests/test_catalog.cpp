#include "sidv/catalog.hpp"
#include "sidv/grid.hpp"
#include "sidv/miura.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace sidv;

namespace {

ClosedFormSolution make(SolutionKind k, double c = 1, std::optional<Rational> a = std::nullopt) {
    SolutionParams p;
    p.c = c;
    p.a = a;
    return ClosedFormSolution(k, p);
}

}  // namespace

TEST(Catalog, PointValues) {
    EXPECT_NEAR(make(SolutionKind::Kink, 2).eval(-2 * 0.7, 0.7), 0, 1e-15);
    EXPECT_NEAR(make(SolutionKind::Sech2, 1).eval(0.3, 0.3), 0.5, 1e-15);
    EXPECT_NEAR(make(SolutionKind::PeakonExp, 2).eval(2 * 0.4, 0.4), 1, 1e-15);
}

TEST(Catalog, ParameterConstraints) {
    SolutionParams p;
    p.eps = Rational(1, 2);
    EXPECT_THROW(ClosedFormSolution(SolutionKind::Sech2, p), InvalidParameters);
    EXPECT_THROW(make(SolutionKind::Sech2, -1), InvalidParameters);
    EXPECT_THROW(make(SolutionKind::Kink, 0), InvalidParameters);
    EXPECT_THROW(make(SolutionKind::PeakonExp, 2, Rational(-1)), InvalidParameters);
    EXPECT_THROW(make(SolutionKind::PeakonSin, 2, Rational(1)), InvalidParameters);
    EXPECT_NO_THROW(make(SolutionKind::PeakonSin, 2, Rational(-1)));
    // eps=a=1, c=1: radicand c/(a(2-eps)) = 1 > 0 so only the exponential kind exists
    EXPECT_THROW(make(SolutionKind::Sinusoidal, 1), InvalidParameters);
    SolutionParams z;
    z.c1 = z.c2 = 0;
    EXPECT_THROW(ClosedFormSolution(SolutionKind::Airy, z), InvalidParameters);
    EXPECT_THROW(kindFromName("nope"), InvalidParameters);
    EXPECT_EQ(kindFromName("soliton"), SolutionKind::KdvSoliton);
}

TEST(Catalog, ImpliedParameters) {
    auto k = make(SolutionKind::Kink, 2);
    EXPECT_EQ(*k.params().eps, Rational(2, 3));
    EXPECT_EQ(*k.params().a, Rational(3, 2));
    auto g = k.governs();
    ASSERT_TRUE(g.has_value());
}

TEST(Catalog, ExponentialParams) {
    auto w = exponentialParams(0, 1, 2);
    EXPECT_EQ(w.kind, WaveKind::Exponential);
    EXPECT_NEAR(w.k, 1, 1e-15);
    auto o = exponentialParams(3, 1, 1);
    EXPECT_EQ(o.kind, WaveKind::Oscillatory);
    EXPECT_NEAR(o.k, 1, 1e-15);
    EXPECT_THROW(exponentialParams(2, 1, 1), StationaryCase);
}

TEST(Catalog, ResidualOnGrid) {
    GridGeometry g{-10, 10, 1024};
    EXPECT_LE(residualOnGrid(make(SolutionKind::Kink, 2), g, 0.5), 1e-6);
    EXPECT_LE(residualOnGrid(make(SolutionKind::Sech2, 1), g, 0.5), 1e-6);
    EXPECT_LE(residualOnGrid(make(SolutionKind::KdvSoliton, 2), g, 0.5), 1e-6);
    SolutionParams p;
    EXPECT_LE(residualOnGrid(ClosedFormSolution(SolutionKind::Airy, p), GridGeometry{-5, 5, 2048}, 0.5), 1e-6);
    EXPECT_LE(residualOnGrid(ClosedFormSolution(SolutionKind::Airy, p), GridGeometry{-5, 5, 2048}, 1.0), 1e-6);
    EXPECT_LE(residualOnGrid(ClosedFormSolution(SolutionKind::KernelExp, p), GridGeometry{-2, 2, 512}, 0.3), 1e-6);
}

TEST(Catalog, ResidualOrder) {
    for (auto k : {SolutionKind::Kink, SolutionKind::Sech2}) {
        auto s = make(k, 2);
        double r1 = residualOnGrid(s, {-10, 10, 128}, 0.3), r2 = residualOnGrid(s, {-10, 10, 256}, 0.3);
        EXPECT_GE(std::log2(r1 / r2), 3.5) << kindName(k);
    }
}

TEST(Catalog, KinkOddAndBounded) {
    auto k = make(SolutionKind::Kink, 2);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> Z(-20, 20), T(0, 3);
    for (int i = 0; i < 200; ++i) {
        double t = T(rng), z = Z(rng), x = z - 2 * t;
        double v = k.eval(x, t);
        EXPECT_LT(std::abs(v), 1);
        EXPECT_NEAR(k.eval(-2 * t + z, t), -k.eval(-2 * t - z, t), 1e-15);
    }
}

TEST(Catalog, KinkMiuraImageIsSoliton) {
    auto k = make(SolutionKind::Kink, 2);
    auto s = make(SolutionKind::KdvSoliton, 2);
    ReferenceFn ref = [k](double x, double t) { return k.eval(x, t); };
    // N even: no node on the zero at x = 0, the nearest sits h/2 away
    auto f = GridField::clamped(2048, -10, 10, ref);
    auto w = miuraMap(f, DerivativeScheme::FD4, 1e-12);
    double e = 0;
    for (int i = kClampMargin; i < f.size() - kClampMargin; ++i)
        e = std::max(e, std::abs(w.values[i] - s.eval(f.x(i), 0)));
    EXPECT_LE(e, 1e-6);
    EXPECT_THROW(miuraMap(GridField::clamped(2049, -10, 10, ref)), DegenerateField);
}

TEST(Catalog, Airy) {
    EXPECT_NEAR(airyAi(0), 0.3550280538878172, 1e-12);
    for (double z : {-5.0, -1.0, 0.0, 0.7, 3.0})
        EXPECT_NEAR(airyWronskian(z), 1 / std::numbers::pi, 1e-10) << z;
}

TEST(Catalog, PeakonSlopesAtCrest) {
    auto p = make(SolutionKind::PeakonExp, 2);
    double h = 1e-7;
    double right = (p.eval(h, 0) - p.eval(0, 0)) / h, left = (p.eval(0, 0) - p.eval(-h, 0)) / h;
    EXPECT_NEAR(right, -1, 1e-6);
    EXPECT_NEAR(left, 1, 1e-6);
    EXPECT_EQ(p.derivative(0, 0, 1), 0);  // sgn(0) = 0
}

TEST(Catalog, DerivativesMatchFiniteDifferences) {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> X(-4, 4);
    for (auto k : {SolutionKind::Sech2, SolutionKind::Kink, SolutionKind::KdvSoliton, SolutionKind::Exponential}) {
        auto s = make(k, 1.5);
        for (int i = 0; i < 25; ++i) {
            double x = X(rng), h = 1e-4;
            for (int n = 1; n <= 3; ++n) {
                double fd = (s.derivative(x + h, 0.2, n - 1) - s.derivative(x - h, 0.2, n - 1)) / (2 * h);
                EXPECT_NEAR(s.derivative(x, 0.2, n), fd, 1e-6 * (1 + std::abs(fd))) << kindName(k) << " n=" << n;
            }
        }
    }
}
