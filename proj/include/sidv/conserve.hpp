#pragma once
// First-integral monitors evaluated on sampled fields.

#include "sidv/diffexpr.hpp"
#include "sidv/equation.hpp"
#include "sidv/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sidv {

enum class IntegralKind { H0, H1, H2, H3, Hn };

struct IntegralSpec {
    IntegralKind kind = IntegralKind::H0;
    int n = 1;  ///< hierarchy index for Hn
    std::string name() const;
};

struct IntegralAux {
    std::optional<GridField> rho;     ///< H3
    std::optional<EquationSpec> eq;   ///< Hn: u_t = rhsEval(eq, u)
    SolveOptions solve;               ///< scheme and uFloor for rhsEval
};

/// H0 = int u^2, H1 = int u^4, H2 = int u^2 ln|u|, H3 = int rho u^2,
/// Hn = int of the n-th hierarchy density.  Trapezoid on periodic grids,
/// Simpson on clamped grids.
/// Errors: NonPositiveField (H2), MissingAux (H3 without rho, Hn without eq),
/// DomainMismatch (H0/H1/H2 on a clamped field that does not decay at the ends).
double evaluate(const IntegralSpec& spec, const GridField& f, const IntegralAux& aux = {});

struct DriftReport {
    double maxDrift = 0;  ///< relative to the initial value, absolute if that is 0
    bool relative = true;
    std::vector<std::pair<double, double>> series;  ///< (t, value)
};
DriftReport driftReport(const IntegralSpec& spec, const std::vector<GridField>& trajectory,
                        const IntegralAux& aux = {});

/// Pointwise evaluator of a DiffExpr in x, t, u-jets (tOrder <= 1), logu and
/// fixed parameter values.
class CompiledDensity {
public:
    explicit CompiledDensity(const DiffExpr& e);
    /// ut: samples of u_t on the same grid (needed if the expression has u_t jets).
    std::vector<double> evaluate(const GridField& u, const std::vector<double>* ut,
                                 DerivativeScheme scheme = DerivativeScheme::FD4) const;
    int maxXOrder() const { return maxX_; }
    bool needsUt() const { return needsUt_; }

private:
    DiffExpr expr_;
    int maxX_ = 0;
    bool needsUt_ = false;
};

}  // namespace sidv
