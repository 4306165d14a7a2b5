#include "sidv/conserve.hpp"

#include "sidv/operators.hpp"

#include <algorithm>
#include <cmath>

namespace sidv {

std::string IntegralSpec::name() const {
    switch (kind) {
        case IntegralKind::H0: return "H0";
        case IntegralKind::H1: return "H1";
        case IntegralKind::H2: return "H2";
        case IntegralKind::H3: return "H3";
        case IntegralKind::Hn: return "H" + std::to_string(n) + "_hierarchy";
    }
    return "?";
}

CompiledDensity::CompiledDensity(const DiffExpr& e) : expr_(e) {
    for (VarId v : e.vars()) {
        if (isJet(v)) {
            if (jetSym(v) != Sym::U) throw SymbolicError("compiled densities support u-jets only");
            maxX_ = std::max(maxX_, jetX(v));
            needsUt_ = needsUt_ || jetT(v) == 1;
        } else if (v != kX && v != kT && v != kLog) {
            throw SymbolicError("unsubstituted parameter " + varName(v) + " in density");
        }
    }
}

namespace {

double evalPoly(const Poly& p, const std::function<double(VarId)>& value) {
    double s = 0;
    for (const auto& [mono, c] : p.terms()) {
        double term = c.get_d();
        for (const auto& [v, e] : mono) term *= std::pow(value(v), e);
        s += term;
    }
    return s;
}

}  // namespace

std::vector<double> CompiledDensity::evaluate(const GridField& u, const std::vector<double>* ut,
                                              DerivativeScheme scheme) const {
    if (needsUt_ && !ut) throw MissingAux("density contains u_t; supply its samples");
    const int N = u.size();
    std::vector<std::vector<double>> du(maxX_ + 1), dut(maxX_ + 1);
    du[0] = u.values;
    for (int k = 1; k <= maxX_; ++k) du[k] = derivative(u, k, scheme);
    if (needsUt_) {
        GridField g = u.withValues(*ut);
        dut[0] = *ut;
        for (int k = 1; k <= maxX_; ++k) dut[k] = derivative(g, k, scheme);
    }
    std::vector<double> out(N);
    for (int i = 0; i < N; ++i) {
        auto value = [&](VarId v) -> double {
            if (v == kX) return u.x(i);
            if (v == kT) return u.time;
            if (v == kLog) return std::log(std::abs(u.values[i]));
            return jetT(v) ? dut[jetX(v)][i] : du[jetX(v)][i];
        };
        out[i] = evalPoly(expr_.num(), value) / evalPoly(expr_.den(), value);
    }
    return out;
}

double evaluate(const IntegralSpec& spec, const GridField& f, const IntegralAux& aux) {
    const auto& u = f.values;
    const int N = f.size();
    if (f.mode == BoundaryMode::Clamped && spec.kind != IntegralKind::H3 && spec.kind != IntegralKind::Hn) {
        double m = 0;
        for (double v : u) m = std::max(m, std::abs(v));
        // catches non-decaying data (kinks sit at +-1); a 1e-4 tail costs ~1e-8 of H0
        if (std::max(std::abs(u.front()), std::abs(u.back())) > 1e-4 * m)
            throw DomainMismatch(spec.name() + " needs a field decaying at both ends");
    }
    std::vector<double> g(N);
    switch (spec.kind) {
        case IntegralKind::H0:
            for (int i = 0; i < N; ++i) g[i] = u[i] * u[i];
            break;
        case IntegralKind::H1:
            for (int i = 0; i < N; ++i) g[i] = u[i] * u[i] * u[i] * u[i];
            break;
        case IntegralKind::H2:
            for (int i = 0; i < N; ++i) {
                if (!(u[i] > 0)) throw NonPositiveField("H2 needs a strictly positive field");
                g[i] = u[i] * u[i] * std::log(u[i]);
            }
            break;
        case IntegralKind::H3:
            if (!aux.rho) throw MissingAux("H3 needs the rho field");
            if (aux.rho->size() != N) throw InvalidParameters("rho and u grids differ");
            for (int i = 0; i < N; ++i) g[i] = aux.rho->values[i] * u[i] * u[i];
            break;
        case IntegralKind::Hn: {
            if (!aux.eq) throw MissingAux("Hn needs the equation to evaluate u_t");
            CompiledDensity d(hierarchyDensity(spec.n));
            std::vector<double> ut = rhsEval(*aux.eq, f, aux.solve).values;
            g = d.evaluate(f, &ut, aux.solve.scheme);
            break;
        }
    }
    return integrate(f, g);
}

DriftReport driftReport(const IntegralSpec& spec, const std::vector<GridField>& traj, const IntegralAux& aux) {
    DriftReport r;
    if (traj.empty()) return r;
    for (const auto& f : traj) r.series.emplace_back(f.time, evaluate(spec, f, aux));
    double v0 = r.series.front().second;
    r.relative = v0 != 0;
    for (auto& [t, v] : r.series) r.maxDrift = std::max(r.maxDrift, std::abs(v - v0) / (r.relative ? std::abs(v0) : 1));
    return r;
}

}  // namespace sidv
