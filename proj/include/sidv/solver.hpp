#pragma once
// Method-of-lines integration of the family, the sech2-sharing variants and
// the logarithmic form, with classical RK4 in time.

#include "sidv/catalog.hpp"
#include "sidv/equation.hpp"
#include "sidv/grid.hpp"

#include <optional>
#include <vector>

namespace sidv {

enum class SolveForm {
    Direct,
    LogForm,    ///< evolve w = ln u (positive solutions)
    MiuraLift,  ///< eps*a = 1, eps = 2/3: evolve w = u_xx/u by KdV and u by u_t = u_xxx - 3 w u_x
};

struct SolveOptions {
    double cfl = 0.5;
    double tEnd = 1;
    double outputEvery = 0;  ///< 0: initial and final snapshots only
    DerivativeScheme scheme = DerivativeScheme::FD4;
    bool dealias = true;         ///< spectral only
    double uFloor = 1e-8;
    SolveForm form = SolveForm::Direct;
    double hyperdiffusion = 0.05;  ///< gamma of the -gamma delta^8 u / h^3 term, FD4 only
    ReferenceFn potentialReference;  ///< MiuraLift clamped margins for w; default is ref_xx/ref
};

struct Trajectory {
    std::vector<GridField> snapshots;
    std::vector<GridField> potential;  ///< w snapshots (MiuraLift only)
    long steps = 0;
    double dt = 0;
};

/// u_t of the direct form.  Throws DegenerateField if min|u| < uFloor away from
/// clamped margins, SchemeMismatch for spectral on a clamped grid.
GridField rhsEval(const EquationSpec& eq, const GridField& f, const SolveOptions& opts = {});

/// Stable RK4 step for dispersion coefficient d on this grid.
double stableTimeStep(double dispersion, const GridField& f, const SolveOptions& opts);

Trajectory solve(const EquationSpec& eq, const GridField& init, const SolveOptions& opts);

struct ConvergenceResult {
    double order;
    std::vector<int> Ns;
    std::vector<double> h, errors;
};
/// Least-squares slope of log(L_inf error at tEnd) against log h.  The grid
/// mode follows `mode`; clamped runs pin to `exact`.
ConvergenceResult convergenceOrder(const EquationSpec& eq, const ClosedFormSolution& exact,
                                   const std::vector<int>& Ns, double xMin, double xMax, BoundaryMode mode,
                                   const SolveOptions& opts);

double maxAbsError(const GridField& f, const ReferenceFn& exact, int margin = 0);

// ------------------------------------------------------------ generic engine

/// A coupled system of fields on one grid.  rhs fills d/dt of every field;
/// margins of clamped fields are driven by their references.
struct MolSystem {
    std::function<void(const std::vector<GridField>& state, std::vector<std::vector<double>>& rhs)> rhs;
    double dispersion = 1;
    /// called on each snapshot; may throw to abort
    std::function<void(const std::vector<GridField>& state)> onSnapshot;
};

/// RK4 from `init` (all fields share geometry and mode) to opts.tEnd.
/// Returns snapshots per field.
std::vector<std::vector<GridField>> integrateSystem(const MolSystem& sys, std::vector<GridField> init,
                                                    const SolveOptions& opts, long* steps = nullptr,
                                                    double* dt = nullptr);

/// (D^2 u)/u with removable zeros of u bridged by Lagrange interpolation from
/// three neighbours on each side; margins of clamped fields use the one-sided stencils.
std::vector<double> schrodingerPotential(const GridField& u, DerivativeScheme scheme = DerivativeScheme::FD4,
                                         double uFloor = 1e-8);

}  // namespace sidv
