#include "sidv/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sidv {

namespace {

int interiorBegin(const GridField& f) { return f.mode == BoundaryMode::Clamped ? kClampMargin : 0; }
int interiorEnd(const GridField& f) { return f.mode == BoundaryMode::Clamped ? f.size() - kClampMargin : f.size(); }

void checkFloor(const GridField& f, double uFloor) {
    for (int i = interiorBegin(f); i < interiorEnd(f); ++i)
        if (!(std::abs(f.values[i]) >= uFloor))
            throw DegenerateField("|u| < uFloor at x=" + std::to_string(f.x(i)) + "; the 1/u terms are unsafe");
}

struct Derivs {
    std::vector<double> d1, d2, d3;
};

Derivs derivs(const GridField& f, const SolveOptions& o) {
    return {derivative(f, 1, o.scheme, o.dealias), derivative(f, 2, o.scheme, o.dealias),
            derivative(f, 3, o.scheme, o.dealias)};
}

double dispersionOf(const EquationSpec& eq, SolveForm form) {
    if (form == SolveForm::MiuraLift) return 1;
    return eq.dispersion();
}

void addDamping(const GridField& f, const SolveOptions& o, std::vector<double>& r) {
    if (o.scheme == DerivativeScheme::Spectral) {
        if (o.dealias) r = dealiasFilter(f.withValues(r));
        return;
    }
    if (o.hyperdiffusion == 0) return;
    auto d8 = eighthDifference(f);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= o.hyperdiffusion * d8[i];
}

/// d/dt of a reference by fourth-order central differences in t.
double refDt(const ReferenceFn& ref, double x, double t) {
    const double ht = 1e-3;
    return (ref(x, t - 2 * ht) - 8 * ref(x, t - ht) + 8 * ref(x, t + ht) - ref(x, t + 2 * ht)) / (12 * ht);
}

/// ref_xx / ref by sixth-order central differences in x.
ReferenceFn potentialOf(const ReferenceFn& ref) {
    return [ref](double x, double t) {
        const double h = 1e-2;
        static const double w2[] = {1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18, 3.0 / 2, -3.0 / 20, 1.0 / 90};
        double d2 = 0;
        for (int k = -3; k <= 3; ++k) d2 += w2[k + 3] * ref(x + k * h, t);
        return d2 / (h * h) / ref(x, t);
    };
}

std::vector<double> familyRhsValues(const EquationSpec& eq, const GridField& f, const SolveOptions& o) {
    Derivs d = derivs(f, o);
    const auto& u = f.values;
    const int N = f.size();
    std::vector<double> r(N, 0.0);
    const double eps = eq.eps.get_d(), a = eq.a.get_d(), de = eq.delta.get_d();
    for (int i = interiorBegin(f); i < interiorEnd(f); ++i) {
        switch (eq.kind) {
            case EqKind::Family: r[i] = eps * a * d.d3[i] - 2 * a * d.d1[i] * d.d2[i] / u[i]; break;
            case EqKind::VariantL2:
                r[i] = de * d.d3[i] - 3 * (1 - de) * u[i] * d.d1[i] - (1 + de) * d.d1[i] * d.d2[i] / u[i];
                break;
            case EqKind::VariantCubic:
                r[i] = de * d.d3[i] - 2 * (1 - 2 * de) * u[i] * d.d1[i] -
                       (1 + de) * d.d1[i] * d.d1[i] * d.d1[i] / (u[i] * u[i]);
                break;
        }
    }
    return r;
}

std::vector<double> logRhsValues(const EquationSpec& eq, const GridField& w, const SolveOptions& o) {
    Derivs d = derivs(w, o);
    const double eps = eq.eps.get_d(), a = eq.a.get_d();
    std::vector<double> r(w.size(), 0.0);
    for (int i = interiorBegin(w); i < interiorEnd(w); ++i)
        r[i] = eps * a * d.d3[i] + (3 * eps - 2) * a * d.d1[i] * d.d2[i] + (eps - 2) * a * std::pow(d.d1[i], 3);
    return r;
}

GridField mapField(const GridField& f, double (*fn)(double), ReferenceFn ref) {
    GridField g = f;
    for (auto& v : g.values) v = fn(v);
    g.reference = std::move(ref);
    return g;
}

}  // namespace

GridField rhsEval(const EquationSpec& eq, const GridField& f, const SolveOptions& opts) {
    if (opts.scheme == DerivativeScheme::Spectral && f.mode != BoundaryMode::Periodic)
        throw SchemeMismatch("spectral derivatives need a periodic grid");
    checkFloor(f, opts.uFloor);
    return f.withValues(familyRhsValues(eq, f, opts));
}

double stableTimeStep(double dispersion, const GridField& f, const SolveOptions& o) {
    const double h = f.dx(), h3 = h * h * h;
    if (o.scheme == DerivativeScheme::Spectral)
        return o.cfl * h3 / (std::abs(dispersion) * std::pow(std::numbers::pi, 3) + 1);
    static const double s3 = fd4ThirdDerivativeSymbolMax();
    return o.cfl * 2.6 * h3 / (std::abs(dispersion) * s3 + o.hyperdiffusion * 256 + 1e-300);
}

std::vector<std::vector<GridField>> integrateSystem(const MolSystem& sys, std::vector<GridField> state,
                                                    const SolveOptions& o, long* stepsOut, double* dtOut) {
    if (state.empty()) throw InvalidParameters("empty system");
    if (!(o.tEnd >= 0)) throw InvalidParameters("tEnd must be non-negative");
    if (!(o.cfl > 0 && o.cfl <= 1)) throw InvalidParameters("cfl must be in (0, 1]");
    const int nf = static_cast<int>(state.size());
    const int N = state[0].size();
    const bool clamped = state[0].mode == BoundaryMode::Clamped;
    if (o.scheme == DerivativeScheme::Spectral && clamped)
        throw SchemeMismatch("spectral derivatives need a periodic grid");
    for (auto& f : state)
        if (clamped && !f.reference) throw InvalidParameters("clamped field without reference");

    const double t0 = state[0].time;
    double dtMax = stableTimeStep(sys.dispersion, state[0], o);
    long n = std::max<long>(1, static_cast<long>(std::ceil(o.tEnd / dtMax - 1e-12)));
    if (o.tEnd == 0) n = 0;
    const double dt = n ? o.tEnd / n : 0;
    long every = n;
    if (o.outputEvery > 0 && n > 0) every = std::max<long>(1, std::lround(o.outputEvery / dt));

    std::vector<std::vector<GridField>> snaps(nf);
    auto record = [&]() {
        if (sys.onSnapshot) sys.onSnapshot(state);
        for (int k = 0; k < nf; ++k) snaps[k].push_back(state[k]);
    };
    record();

    const int M = kClampMargin;
    auto evalRhs = [&](const std::vector<GridField>& s, std::vector<std::vector<double>>& r) {
        r.assign(nf, std::vector<double>(N, 0.0));
        sys.rhs(s, r);
        if (clamped) {
            double t = s[0].time;
            for (int k = 0; k < nf; ++k)
                for (int i = 0; i < N; ++i)
                    if (i < M || i >= N - M) r[k][i] = refDt(s[k].reference, s[k].x(i), t);
        }
    };
    auto pin = [&](std::vector<GridField>& s) {
        if (!clamped) return;
        for (auto& f : s)
            for (int i = 0; i < N; ++i)
                if (i < M || i >= N - M) f.values[i] = f.reference(f.x(i), f.time);
    };
    auto stage = [&](const std::vector<std::vector<double>>& k, double c, double t) {
        std::vector<GridField> s = state;
        for (int f = 0; f < nf; ++f) {
            for (int i = 0; i < N; ++i) s[f].values[i] += c * k[f][i];
            s[f].time = t;
        }
        pin(s);
        return s;
    };

    std::vector<std::vector<double>> k1, k2, k3, k4;
    for (long step = 1; step <= n; ++step) {
        double t = t0 + (step - 1) * dt;
        evalRhs(state, k1);
        evalRhs(stage(k1, dt / 2, t + dt / 2), k2);
        evalRhs(stage(k2, dt / 2, t + dt / 2), k3);
        evalRhs(stage(k3, dt, t + dt), k4);
        for (int f = 0; f < nf; ++f) {
            auto& v = state[f].values;
            for (int i = 0; i < N; ++i) v[i] += dt / 6 * (k1[f][i] + 2 * k2[f][i] + 2 * k3[f][i] + k4[f][i]);
            state[f].time = t0 + step * dt;
        }
        pin(state);
        for (int f = 0; f < nf; ++f)
            for (int i = 0; i < N; ++i)
                if (!std::isfinite(state[f].values[i])) throw BlowUp(state[f].time, state[f].x(i));
        if (step % every == 0 || step == n)
            if (snaps[0].back().time != state[0].time) record();
    }
    if (stepsOut) *stepsOut = n;
    if (dtOut) *dtOut = dt;
    return snaps;
}

std::vector<double> schrodingerPotential(const GridField& u, DerivativeScheme scheme, double uFloor) {
    const int N = u.size();
    auto d1 = derivative(u, 1, scheme);
    auto d2 = derivative(u, 2, scheme);
    double slope = 0;
    for (double v : d1) slope = std::max(slope, std::abs(v));
    const double tau = std::max(uFloor, 0.1 * u.dx() * slope);
    std::vector<double> q(N);
    std::vector<char> bad(N, 0);
    for (int i = 0; i < N; ++i) {
        if (std::abs(u.values[i]) >= tau) q[i] = d2[i] / u.values[i];
        else bad[i] = 1;
    }
    const int K = 3;
    for (int i = 0; i < N;) {
        if (!bad[i]) {
            ++i;
            continue;
        }
        int lo = i, hi = i;
        while (hi + 1 < N && bad[hi + 1]) ++hi;
        std::vector<double> xs, ys;
        for (int j = lo - K; j <= hi + K; ++j) {
            int jj = u.mode == BoundaryMode::Periodic ? (j % N + N) % N : j;
            if (jj < 0 || jj >= N || bad[jj]) continue;
            xs.push_back(j);
            ys.push_back(q[jj]);
        }
        if (xs.size() < 2) throw DegenerateField("u vanishes on too many neighbouring nodes");
        for (int j = lo; j <= hi; ++j) {
            auto w = fornbergWeights(j, xs, 0);
            double s = 0;
            for (size_t k = 0; k < xs.size(); ++k) s += w[k] * ys[k];
            q[j] = s;
        }
        i = hi + 1;
    }
    return q;
}

Trajectory solve(const EquationSpec& eq, const GridField& init, const SolveOptions& opts) {
    Trajectory tr;
    if (opts.scheme == DerivativeScheme::Spectral && init.mode != BoundaryMode::Periodic)
        throw SchemeMismatch("spectral derivatives need a periodic grid");
    MolSystem sys;
    sys.dispersion = dispersionOf(eq, opts.form);
    switch (opts.form) {
        case SolveForm::Direct: {
            checkFloor(init, opts.uFloor);
            sys.rhs = [&](const std::vector<GridField>& s, std::vector<std::vector<double>>& r) {
                checkFloor(s[0], opts.uFloor);
                r[0] = familyRhsValues(eq, s[0], opts);
                addDamping(s[0], opts, r[0]);
            };
            auto snaps = integrateSystem(sys, {init}, opts, &tr.steps, &tr.dt);
            tr.snapshots = std::move(snaps[0]);
            break;
        }
        case SolveForm::LogForm: {
            if (eq.kind != EqKind::Family) throw InvalidParameters("logForm applies to the family only");
            for (double v : init.values)
                if (!(v > 0)) throw NonPositiveField("logForm needs a strictly positive field");
            ReferenceFn logRef;
            if (init.reference) {
                ReferenceFn ref = init.reference;
                logRef = [ref](double x, double t) { return std::log(ref(x, t)); };
            }
            GridField w = mapField(init, [](double v) { return std::log(v); }, logRef);
            sys.rhs = [&](const std::vector<GridField>& s, std::vector<std::vector<double>>& r) {
                r[0] = logRhsValues(eq, s[0], opts);
                addDamping(s[0], opts, r[0]);
            };
            auto snaps = integrateSystem(sys, {w}, opts, &tr.steps, &tr.dt);
            for (auto& g : snaps[0]) tr.snapshots.push_back(mapField(g, [](double v) { return std::exp(v); },
                                                                     init.reference));
            break;
        }
        case SolveForm::MiuraLift: {
            if (eq.kind != EqKind::Family || eq.eps != Rational(2, 3) || eq.eps * eq.a != 1)
                throw InvalidParameters("miuraLift needs eps=2/3 and eps*a=1");
            GridField w = init.withValues(schrodingerPotential(init, opts.scheme, opts.uFloor));
            if (init.mode == BoundaryMode::Clamped)
                w.reference = opts.potentialReference ? opts.potentialReference : potentialOf(init.reference);
            sys.rhs = [&](const std::vector<GridField>& s, std::vector<std::vector<double>>& r) {
                const GridField &u = s[0], &wf = s[1];
                auto u1 = derivative(u, 1, opts.scheme, opts.dealias), u3 = derivative(u, 3, opts.scheme, opts.dealias);
                auto w1 = derivative(wf, 1, opts.scheme, opts.dealias), w3 = derivative(wf, 3, opts.scheme, opts.dealias);
                for (int i = interiorBegin(u); i < interiorEnd(u); ++i) {
                    r[0][i] = u3[i] - 3 * wf.values[i] * u1[i];
                    r[1][i] = w3[i] - 6 * wf.values[i] * w1[i];
                }
                addDamping(u, opts, r[0]);
                addDamping(wf, opts, r[1]);
            };
            auto snaps = integrateSystem(sys, {init, w}, opts, &tr.steps, &tr.dt);
            tr.snapshots = std::move(snaps[0]);
            tr.potential = std::move(snaps[1]);
            break;
        }
    }
    return tr;
}

double maxAbsError(const GridField& f, const ReferenceFn& exact, int margin) {
    double e = 0;
    for (int i = margin; i < f.size() - margin; ++i) e = std::max(e, std::abs(f.values[i] - exact(f.x(i), f.time)));
    return e;
}

ConvergenceResult convergenceOrder(const EquationSpec& eq, const ClosedFormSolution& exact, const std::vector<int>& Ns,
                                   double xMin, double xMax, BoundaryMode mode, const SolveOptions& opts) {
    if (Ns.size() < 2) throw InvalidParameters("convergenceOrder needs at least two grid sizes");
    if (!exact.smooth()) throw NonSmoothSolution("convergence needs a smooth exact solution");
    ConvergenceResult res;
    ReferenceFn ref = [exact](double x, double t) { return exact.eval(x, t); };
    for (int N : Ns) {
        GridField g = mode == BoundaryMode::Periodic ? GridField::periodic(N, xMin, xMax, ref)
                                                     : GridField::clamped(N, xMin, xMax, ref);
        Trajectory tr = solve(eq, g, opts);
        res.Ns.push_back(N);
        res.h.push_back(g.dx());
        res.errors.push_back(maxAbsError(tr.snapshots.back(), ref));
    }
    double mx = 0, my = 0;
    const double n = static_cast<double>(Ns.size());
    for (size_t i = 0; i < Ns.size(); ++i) {
        mx += std::log(res.h[i]) / n;
        my += std::log(res.errors[i]) / n;
    }
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < Ns.size(); ++i) {
        double dx = std::log(res.h[i]) - mx;
        sxy += dx * (std::log(res.errors[i]) - my);
        sxx += dx * dx;
    }
    res.order = sxy / sxx;
    return res;
}

}  // namespace sidv
