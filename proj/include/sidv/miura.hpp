#pragma once
// The bridge to KdV: w = u_xx/u forward, and the inverse construction that
// evolves members of the kernel of -D^2 + w by u_t = u_xxx - 3 w u_x.

#include "sidv/catalog.hpp"
#include "sidv/solver.hpp"

#include <string>
#include <vector>

namespace sidv {

/// A KdV potential w(x,t), closed form or grid backed.
struct KdvPotential {
    ReferenceFn eval;
    std::string description;

    double operator()(double x, double t) const { return eval(x, t); }

    static KdvPotential constant(double w);
    static KdvPotential selfSimilar();  ///< x/(6t)
    static KdvPotential soliton(double c, double x0 = 0);
    /// Cubic Lagrange interpolation in x on each snapshot and across the four
    /// nearest snapshot times.
    static KdvPotential fromSnapshots(std::vector<GridField> snaps);
};

/// (D^2 u)/u.  Throws DegenerateField if min|u| < uFloor.
GridField miuraMap(const GridField& u, DerivativeScheme scheme = DerivativeScheme::FD4, double uFloor = 1e-8);

struct KernelBasis {
    GridGeometry geom;
    double t0 = 0;
    std::vector<double> u1, u2, u1x, u2x;  ///< (u, u') = (1,0) and (0,1) at the left end
    std::vector<double> wronskian;

    /// max |W - W(left)| / |W(left)|
    double wronskianDrift() const;
};

/// RK4 march of u'' = w(x, t0) u across the grid.  BlowUp on overflow.
KernelBasis kernelSolve(const KdvPotential& w, double t0, const GridGeometry& geom);

struct Projection {
    double alpha, beta;  ///< target ~ alpha u1 + beta u2
    double residual;     ///< max |target - fit|
};
Projection projectOntoKernel(const KernelBasis& b, const std::vector<double>& target);

/// Least-squares slopes of ln(u1 + u2) and ln(u1 - u2); (1, -1) for w = 1.
std::pair<double, double> exponentialRates(const KernelBasis& b);
/// Slope of the unwrapped atan2(u2, u1); 1 for w = -1 (up to sign).
double oscillationFrequency(const KernelBasis& b);

/// max |u_xx - w u| / max |u| away from clamped margins.
double kernelResidual(const GridField& u, const KdvPotential& w);

struct LiftOptions {
    SolveOptions solve;
    double initialTol = 1e-6;
    double evolvedTol = 1e-4;
};

struct LiftResult {
    Trajectory trajectory;
    std::vector<double> kernelResiduals;  ///< one per snapshot
};

/// Evolves u_t = u_xxx - 3 w u_x from u0 and certifies kernel membership at
/// each snapshot.  KernelDrift if u0 or a snapshot leaves the kernel.
LiftResult evolveInKernel(const KdvPotential& w, const GridField& u0, const LiftOptions& opts);

/// Least-squares (A, B) of u against tanh(th) and 1 - th tanh(th), th = sqrt(c)/2 (x + c t).
std::pair<double, double> legendreCoefficients(const GridField& u, double c);

/// c1 t^{1/6} Ai(x/(6t)^{1/3}) + c2 t^{1/6} Bi(...), clamped to that closed form.
GridField airySolution(double c1, double c2, const GridGeometry& geom, double t);

}  // namespace sidv
