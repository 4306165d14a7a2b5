#include "sidv/conserve.hpp"
#include "sidv/grid.hpp"
#include "sidv/solver.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace sidv;

namespace {

const EquationSpec kUnit = EquationSpec::family(1, 1);

ReferenceFn sech2(double c = 1) {
    return [s = ClosedFormSolution(SolutionKind::Sech2, SolutionParams{.c = c})](double x, double t) {
        return s.eval(x, t);
    };
}

}  // namespace

TEST(Grid, Spacing) {
    auto p = GridField::periodic(100, -1, 1, [](double, double) { return 1.0; });
    EXPECT_DOUBLE_EQ(p.dx(), 0.02);
    auto c = GridField::clamped(101, -1, 1, [](double, double) { return 1.0; });
    EXPECT_DOUBLE_EQ(c.dx(), 0.02);
    EXPECT_DOUBLE_EQ(c.x(100), 1);
}

TEST(Grid, DerivativeAccuracy) {
    auto f = GridField::periodic(256, 0, 2 * std::numbers::pi, [](double x, double) { return std::sin(x); });
    for (int n = 1; n <= 3; ++n) {
        auto d = derivative(f, n, DerivativeScheme::Spectral);
        auto e = derivative(f, n, DerivativeScheme::FD4);
        double es = 0, ef = 0;
        for (int i = 0; i < f.size(); ++i) {
            double ex = std::sin(f.x(i) + n * std::numbers::pi / 2);
            es = std::max(es, std::abs(d[i] - ex));
            ef = std::max(ef, std::abs(e[i] - ex));
        }
        EXPECT_LE(es, 1e-9) << n;  // roundoff grows like (N/2)^n
        EXPECT_LE(ef, 1e-6) << n;
    }
}

TEST(Grid, ClampedDerivativeOrder) {
    auto g = [](int N) {
        auto f = GridField::clamped(N, -1, 2, [](double x, double) { return std::exp(x); });
        auto d = derivative(f, 3, DerivativeScheme::FD4);
        double e = 0;
        for (int i = 0; i < N; ++i) e = std::max(e, std::abs(d[i] - std::exp(f.x(i))));
        return e;
    };
    EXPECT_GE(std::log2(g(101) / g(201)), 3.5);
    EXPECT_THROW(derivative(GridField::clamped(64, 0, 1, [](double x, double) { return x; }), 1,
                            DerivativeScheme::Spectral),
                 SchemeMismatch);
}

TEST(Grid, Quadrature) {
    auto p = GridField::periodic(512, -20, 20, sech2());
    std::vector<double> sq(p.size());
    for (int i = 0; i < p.size(); ++i) sq[i] = p.values[i] * p.values[i];
    EXPECT_NEAR(integrate(p, sq), 2.0 / 3, 1e-12);
    for (int N : {200, 201}) {
        auto c = GridField::clamped(N, 0, 1, [](double x, double) { return x * x * x; });
        EXPECT_NEAR(integrate(c, c.values), 0.25, 1e-12) << N;
    }
}

TEST(Solver, RhsConstantIsZero) {
    auto f = GridField::periodic(64, 0, 1, [](double, double) { return 3.0; });
    for (auto& v : rhsEval(kUnit, f).values) EXPECT_NEAR(v, 0, 1e-12);
}

TEST(Solver, RhsTravellingWave) {
    ClosedFormSolution s(SolutionKind::Sech2, {.c = 1});
    auto f = GridField::clamped(1024, -10, 10, sech2(), 0.3);
    auto r = rhsEval(kUnit, f);
    double e = 0;
    for (int i = kClampMargin; i < f.size() - kClampMargin; ++i)
        e = std::max(e, std::abs(r.values[i] + s.derivative(f.x(i), 0.3, 1)));
    EXPECT_LE(e, 1e-6);
}

TEST(Solver, RhsDegenerate) {
    auto f = GridField::periodic(64, 0, 2 * std::numbers::pi, [](double x, double) { return std::sin(x); });
    EXPECT_THROW(rhsEval(kUnit, f), DegenerateField);
}

TEST(Solver, Sech2ClampedRun) {
    SolveOptions o;
    o.tEnd = 1;
    o.uFloor = 1e-12;
    auto tr = solve(kUnit, GridField::clamped(256, -20, 20, sech2()), o);
    EXPECT_LE(maxAbsError(tr.snapshots.back(), sech2()), 1e-4);
    auto d = driftReport({IntegralKind::H0}, tr.snapshots);
    EXPECT_LE(d.maxDrift, 1e-4);
}

TEST(Solver, ConvergenceOrderClamped) {
    SolveOptions o;
    o.tEnd = 0.5;
    o.uFloor = 1e-12;
    ClosedFormSolution s(SolutionKind::Sech2, {.c = 1});
    auto r = convergenceOrder(kUnit, s, {64, 128, 256}, -15, 15, BoundaryMode::Clamped, o);
    EXPECT_GE(r.order, 3.5);
    EXPECT_LE(r.order, 5.0);
}

TEST(Solver, LogFormMatchesDirect) {
    auto eq = EquationSpec::family(Rational(-2, 3), Rational(-3, 2));
    ReferenceFn bump = [](double x, double) { return std::exp(0.3 * std::exp(-x * x / 4)); };
    SolveOptions o;
    o.tEnd = 0.5;
    auto d = solve(eq, GridField::periodic(512, -20, 20, bump), o);
    o.form = SolveForm::LogForm;
    auto l = solve(eq, GridField::periodic(512, -20, 20, bump), o);
    EXPECT_LE(maxAbsError(d.snapshots.back(), [&](double x, double) {
                  int i = static_cast<int>(std::lround((x + 20) / l.snapshots.back().dx()));
                  return l.snapshots.back().values[i];
              }),
              1e-6);
}

TEST(Solver, KinkLiftClamped) {
    SolutionParams p;
    p.c = 2;
    ClosedFormSolution k(SolutionKind::Kink, p);
    ReferenceFn ref = [k](double x, double t) { return k.eval(x, t); };
    SolveOptions o;
    o.tEnd = 0.5;
    o.form = SolveForm::MiuraLift;
    auto sol = ClosedFormSolution(SolutionKind::KdvSoliton, p);
    o.potentialReference = [sol](double x, double t) { return sol.eval(x, t); };
    auto tr = solve(k.governs().value(), GridField::clamped(256, -12, 12, ref), o);
    EXPECT_LE(maxAbsError(tr.snapshots.back(), ref), 1e-4);
}

TEST(Solver, LiftRequiresKinkMember) {
    SolveOptions o;
    o.form = SolveForm::MiuraLift;
    EXPECT_THROW(solve(kUnit, GridField::clamped(64, -10, 10, sech2()), o), InvalidParameters);
}

// Homogeneity of degree one: lambda*u solves the same equation.
TEST(SolverProperty, Homogeneity) {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> L(0.1, 10), A(0.05, 0.5), X0(-3, 3);
    auto eq = EquationSpec::family(Rational(-2, 3), Rational(-3, 2));
    for (int i = 0; i < 100; ++i) {
        double lam = L(rng), amp = A(rng), x0 = X0(rng);
        ReferenceFn f = [=](double x, double) { return 1 + amp * std::exp(-(x - x0) * (x - x0)); };
        SolveOptions o;
        o.tEnd = 0.02;
        auto a = solve(eq, GridField::periodic(64, -10, 10, f), o).snapshots.back();
        auto b = solve(eq, GridField::periodic(64, -10, 10, [&](double x, double t) { return lam * f(x, t); }), o)
                     .snapshots.back();
        double e = 0;
        for (int j = 0; j < a.size(); ++j) e = std::max(e, std::abs(b.values[j] - lam * a.values[j]));
        EXPECT_LE(e, 1e-12 * lam) << "lambda=" << lam;
    }
}

// Shifting the initial data by whole grid cells shifts the result.
TEST(SolverProperty, TranslationEquivariance) {
    std::mt19937 rng(12);
    std::uniform_int_distribution<int> S(1, 63);
    std::uniform_real_distribution<double> A(0.05, 0.5);
    auto eq = EquationSpec::family(Rational(-2, 3), Rational(-3, 2));
    const int N = 64;
    for (int i = 0; i < 100; ++i) {
        int s = S(rng);
        double amp = A(rng);
        auto g = [amp](double x) { return 1 + amp * std::exp(-x * x) + 0.5 * amp * std::exp(-(x - 3) * (x - 3)); };
        SolveOptions o;
        o.tEnd = 0.02;
        auto f = GridField::periodic(N, -10, 10, [&](double x, double) { return g(x); });
        auto shifted = f;
        for (int j = 0; j < N; ++j) shifted.values[(j + s) % N] = f.values[j];
        auto a = solve(eq, f, o);
        auto b = solve(eq, shifted, o);
        double e = 0;
        for (int j = 0; j < N; ++j)
            e = std::max(e, std::abs(b.snapshots.back().values[(j + s) % N] - a.snapshots.back().values[j]));
        EXPECT_LE(e, 1e-13) << "shift=" << s;
    }
}
