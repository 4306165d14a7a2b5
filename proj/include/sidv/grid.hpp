#pragma once
// Sampled fields on a uniform 1-D grid and their spatial derivatives.

#include "sidv/errors.hpp"

#include <functional>
#include <vector>

namespace sidv {

enum class BoundaryMode { Periodic, Clamped };
enum class DerivativeScheme { FD4, Spectral };

using ReferenceFn = std::function<double(double x, double t)>;

/// Periodic: N nodes x_i = xMin + i (xMax-xMin)/N, xMax excluded.
/// Clamped: N nodes including both endpoints; the reference pins the margins.
struct GridField {
    std::vector<double> values;
    double xMin = 0, xMax = 1;
    BoundaryMode mode = BoundaryMode::Periodic;
    ReferenceFn reference;
    double time = 0;

    int size() const { return static_cast<int>(values.size()); }
    double dx() const;
    double x(int i) const { return xMin + i * dx(); }

    static GridField periodic(int N, double xMin, double xMax, const ReferenceFn& f, double t = 0);
    static GridField clamped(int N, double xMin, double xMax, const ReferenceFn& ref, double t = 0);
    /// Same geometry and mode, new values.
    GridField withValues(std::vector<double> v) const;
};

/// Margin width pinned to the reference in clamped mode.
inline constexpr int kClampMargin = 4;

/// n-th derivative (n >= 1).  FD4: fourth-order central stencils, one-sided
/// fourth-order stencils near clamped ends.  Spectral: periodic only, with the
/// 2/3 truncation when dealias is set.
/// `accuracy` (even, FD only) raises the stencil order for diagnostics.
std::vector<double> derivative(const GridField& f, int n, DerivativeScheme scheme = DerivativeScheme::FD4,
                               bool dealias = false, int accuracy = 4);

/// Removes the top third of the spectrum (periodic only).
std::vector<double> dealiasFilter(const GridField& f);

/// Finite-difference weights for the m-th derivative at z from nodes xs.
std::vector<double> fornbergWeights(double z, const std::vector<double>& xs, int m);

/// delta^8 u / h^3 (eighth central difference); zero within 4 nodes of clamped ends.
std::vector<double> eighthDifference(const GridField& f);

/// Largest |symbol| of the FD4 third-derivative stencil times h^3.
double fd4ThirdDerivativeSymbolMax();

/// Composite trapezoid (periodic) or Simpson (clamped) quadrature.
double integrate(const GridField& f, const std::vector<double>& integrand);

}  // namespace sidv
