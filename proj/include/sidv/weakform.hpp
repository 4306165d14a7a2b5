#pragma once
// Weak formulation for peakons: bump test functions, the space-time residual,
// crest slopes and the small-t gap of the initial data.

#include "sidv/catalog.hpp"

#include <vector>

namespace sidv {

/// psi(xi) = exp(-1/(1-xi^2)) on |xi| < 1, zero outside; n-th derivative, n <= 3.
double bump(double xi, int n = 0);

/// phi(x,t) = psi((x-x0)/rx) * psi((t-t0)/rt)
struct TestFunction {
    double x0 = 0, t0 = 0.5, rx = 1, rt = 0.25;

    double operator()(double x, double t) const;
    double dt(double x, double t) const;
    double dxxx(double x, double t) const;
};

/// sum_k w_k phi_k, for checking linearity of the residual in phi.
struct TestFunctionSum {
    std::vector<std::pair<double, TestFunction>> terms;

    double operator()(double x, double t) const;
    double dt(double x, double t) const;
    double dxxx(double x, double t) const;
};

/// Space-time box the test function must live in: x in (xMin, xMax), t < T.
struct WeakWindow {
    double xMin = -10, xMax = 10, T = 1;
};

/// Peakon (or any catalog solution) with the a.e. value of u_x*u_xx/u.
struct PeakonData {
    ClosedFormSolution sol;

    explicit PeakonData(ClosedFormSolution s) : sol(std::move(s)) {}
    double u(double x, double t) const { return sol.eval(x, t); }
    double ux(double x, double t) const { return sol.derivative(x, t, 1); }
    /// u_x*u_xx/u; on peakons taken from the closed form so u = 0 is harmless.
    double nonlinear(double x, double t) const;
    /// Location of the non-smooth line at time t, if any.
    bool hasCrest() const { return !sol.smooth(); }
    double crest(double t) const { return sol.params().c * t; }
};

/// int u0 phi(.,0) dx + int int (u phi_t - 2a N phi - eps*a u phi_xxx) dx dt.
/// Throws SupportViolation when supp phi leaves the window or starts at t >= T.
double weakResidual(const PeakonData& u, const Rational& eps, const Rational& a, const TestFunction& phi,
                    const WeakWindow& w);
double weakResidual(const PeakonData& u, const Rational& eps, const Rational& a, const TestFunctionSum& phi,
                    const WeakWindow& w);

struct PeakSlopes {
    double left, right;
};
/// One-sided derivatives at x = ct by 8th-order one-sided differences.
PeakSlopes peakProfileCheck(const PeakonData& u, double t = 0);

struct InitialGap {
    double t;
    double valueGap;  ///< sup |u(.,t) - u0|
    double slopeGap;  ///< sup |u_x(.,t) - u0_x| over a.e. points
    double total() const { return valueGap + slopeGap; }
};
/// Gaps for each t on [-L, L] sampled at M points plus a refined set between the
/// two crest positions.
std::vector<InitialGap> initialConvergenceCheck(const PeakonData& u, const std::vector<double>& ts = {1e-2, 1e-3, 1e-4},
                                                double L = 10, int M = 20001);

}  // namespace sidv
