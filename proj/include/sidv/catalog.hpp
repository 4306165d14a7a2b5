#pragma once
// Closed-form solutions, pointwise evaluators and grid residual self-checks.

#include "sidv/equation.hpp"
#include "sidv/errors.hpp"

#include <optional>
#include <string>

namespace sidv {

enum class SolutionKind {
    Sech2,
    Exponential,
    Sinusoidal,
    PlanePhase,
    Kink,
    Airy,
    PeakonExp,
    PeakonSin,
    KdvSoliton,
    KernelExp,   // w = 1
    KernelTrig,  // w = -1
};

std::string kindName(SolutionKind k);
SolutionKind kindFromName(const std::string& name);  // throws InvalidParameters

struct SolutionParams {
    std::optional<Rational> eps, a;  ///< filled from the kind when it implies them
    double c = 1;
    double x0 = 0;  ///< phase offset (x0 or phi0)
    double c1 = 1, c2 = 0;
    double k = 1;    ///< wave number, planePhase only
    int branch = 1;  ///< sign in the exponent, exponential only
};

/// Uniform node set x_i = xMin + i*(xMax-xMin)/(N-1).
struct GridGeometry {
    double xMin = -10, xMax = 10;
    int N = 1024;
    double x(int i) const { return xMin + i * (xMax - xMin) / (N - 1); }
    double dx() const { return (xMax - xMin) / (N - 1); }
};

class ClosedFormSolution {
public:
    /// Validates the per-kind parameter constraints (InvalidParameters).  Unset
    /// eps, a take the values the kind implies (sech2: 1,1; kink: 2/3,3/2;
    /// peakons: eps=0, a=1); otherwise eps=a=1.
    ClosedFormSolution(SolutionKind kind, SolutionParams p);

    SolutionKind kind() const { return kind_; }
    const SolutionParams& params() const { return p_; }

    double eval(double x, double t) const;
    /// n-th x-derivative, n <= 3; peakons give the a.e. value with sgn(0) = 0.
    double derivative(double x, double t, int n) const;
    double operator()(double x, double t) const { return eval(x, t); }

    bool smooth() const { return kind_ != SolutionKind::PeakonExp && kind_ != SolutionKind::PeakonSin; }
    /// Family member this solves, if any.
    std::optional<EquationSpec> governs() const;
    /// "kind=sech2, params=c=1,x0=0"
    std::string describe() const;

private:
    SolutionKind kind_;
    SolutionParams p_;
};

/// Max |residual| of the governing equation(s) on the grid, by 6th-order central
/// differences in x and 4th-order in t, excluding a 4-node margin.
/// Family kinds use the family; kdvSoliton uses w_t = w_xxx - 6 w w_x; airy and
/// the kernel kinds use both equations of u_t + 3 w u_x = u_xxx, u_xx = w u.
double residualOnGrid(const ClosedFormSolution& s, const GridGeometry& g, double t);

enum class WaveKind { Exponential, Oscillatory };
struct WaveNumber {
    WaveKind kind;
    double k;
};
/// sqrt(c/(a(2-eps))) if positive radicand (exponential), else sqrt(c/(a(eps-2))).
WaveNumber exponentialParams(const Rational& eps, const Rational& a, double c);

double airyAi(double z);
double airyBi(double z);
double airyAiPrime(double z);
double airyBiPrime(double z);
/// Ai Bi' - Ai' Bi, equal to 1/pi
double airyWronskian(double z);

}  // namespace sidv
