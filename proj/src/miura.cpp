#include "sidv/miura.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

namespace sidv {

namespace {

double cubicAt(const GridField& f, double x) {
    const int N = f.size();
    const double h = f.dx();
    double s = (x - f.xMin) / h;
    int i0 = static_cast<int>(std::floor(s)) - 1;
    if (f.mode == BoundaryMode::Clamped) i0 = std::clamp(i0, 0, N - 4);
    std::vector<double> xs(4), ys(4);
    for (int k = 0; k < 4; ++k) {
        int j = i0 + k;
        xs[k] = j;
        ys[k] = f.values[f.mode == BoundaryMode::Periodic ? ((j % N) + N) % N : j];
    }
    auto w = fornbergWeights(s, xs, 0);
    return w[0] * ys[0] + w[1] * ys[1] + w[2] * ys[2] + w[3] * ys[3];
}

}  // namespace

KdvPotential KdvPotential::constant(double w) {
    std::ostringstream os;
    os << "constant:w=" << w;
    return {[w](double, double) { return w; }, os.str()};
}

KdvPotential KdvPotential::selfSimilar() {
    return {[](double x, double t) {
                if (t <= 0) throw OutOfDomain("w = x/(6t) needs t > 0");
                return x / (6 * t);
            },
            "selfSimilar:w=x/(6t)"};
}

KdvPotential KdvPotential::soliton(double c, double x0) {
    SolutionParams p;
    p.c = c;
    p.x0 = x0;
    ClosedFormSolution s(SolutionKind::KdvSoliton, p);
    std::ostringstream os;
    os << "soliton:c=" << c << ",x0=" << x0;
    return {[s](double x, double t) { return s.eval(x, t); }, os.str()};
}

KdvPotential KdvPotential::fromSnapshots(std::vector<GridField> snaps) {
    if (snaps.empty()) throw InvalidParameters("no snapshots");
    auto shared = std::make_shared<std::vector<GridField>>(std::move(snaps));
    return {[shared](double x, double t) {
                const auto& s = *shared;
                if (s.size() == 1) return cubicAt(s[0], x);
                auto it = std::lower_bound(s.begin(), s.end(), t,
                                           [](const GridField& g, double tt) { return g.time < tt; });
                int j = static_cast<int>(it - s.begin());
                int lo = std::clamp(j - 2, 0, std::max(0, static_cast<int>(s.size()) - 4));
                int hi = std::min<int>(static_cast<int>(s.size()), lo + 4);
                std::vector<double> ts, vs;
                for (int k = lo; k < hi; ++k) {
                    ts.push_back(s[k].time);
                    vs.push_back(cubicAt(s[k], x));
                }
                auto w = fornbergWeights(t, ts, 0);
                double r = 0;
                for (size_t k = 0; k < w.size(); ++k) r += w[k] * vs[k];
                return r;
            },
            "grid"};
}

GridField miuraMap(const GridField& u, DerivativeScheme scheme, double uFloor) {
    for (int i = 0; i < u.size(); ++i)
        if (!(std::abs(u.values[i]) >= uFloor))
            throw DegenerateField("miuraMap: |u| < uFloor at x=" + std::to_string(u.x(i)));
    GridField w = u.withValues(schrodingerPotential(u, scheme, uFloor));
    w.reference = nullptr;
    return w;
}

double KernelBasis::wronskianDrift() const {
    double w0 = wronskian.front(), d = 0;
    for (double w : wronskian) d = std::max(d, std::abs(w - w0));
    return d / std::abs(w0);
}

KernelBasis kernelSolve(const KdvPotential& w, double t0, const GridGeometry& g) {
    if (g.N < 2) throw InvalidParameters("kernelSolve needs at least 2 nodes");
    KernelBasis b;
    b.geom = g;
    b.t0 = t0;
    const int N = g.N;
    const double h = g.dx();
    b.u1.resize(N);
    b.u2.resize(N);
    b.u1x.resize(N);
    b.u2x.resize(N);
    b.wronskian.resize(N);
    std::array<double, 4> y = {1, 0, 0, 1};  // (u1, u1', u2, u2')
    auto f = [&](double x, const std::array<double, 4>& s) {
        double wx = w(x, t0);
        return std::array<double, 4>{s[1], wx * s[0], s[3], wx * s[2]};
    };
    auto store = [&](int i) {
        b.u1[i] = y[0];
        b.u1x[i] = y[1];
        b.u2[i] = y[2];
        b.u2x[i] = y[3];
        b.wronskian[i] = y[0] * y[3] - y[2] * y[1];
    };
    store(0);
    for (int i = 1; i < N; ++i) {
        double x = g.x(i - 1);
        auto add = [](const std::array<double, 4>& a, const std::array<double, 4>& k, double c) {
            std::array<double, 4> r;
            for (int j = 0; j < 4; ++j) r[j] = a[j] + c * k[j];
            return r;
        };
        auto k1 = f(x, y), k2 = f(x + h / 2, add(y, k1, h / 2)), k3 = f(x + h / 2, add(y, k2, h / 2)),
             k4 = f(x + h, add(y, k3, h));
        for (int j = 0; j < 4; ++j) y[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
        for (double v : y)
            if (!std::isfinite(v)) throw BlowUp(t0, g.x(i));
        store(i);
    }
    return b;
}

Projection projectOntoKernel(const KernelBasis& b, const std::vector<double>& target) {
    double s11 = 0, s12 = 0, s22 = 0, r1 = 0, r2 = 0;
    for (size_t i = 0; i < target.size(); ++i) {
        s11 += b.u1[i] * b.u1[i];
        s12 += b.u1[i] * b.u2[i];
        s22 += b.u2[i] * b.u2[i];
        r1 += b.u1[i] * target[i];
        r2 += b.u2[i] * target[i];
    }
    double det = s11 * s22 - s12 * s12;
    Projection p;
    p.alpha = (r1 * s22 - r2 * s12) / det;
    p.beta = (s11 * r2 - s12 * r1) / det;
    p.residual = 0;
    for (size_t i = 0; i < target.size(); ++i)
        p.residual = std::max(p.residual, std::abs(target[i] - p.alpha * b.u1[i] - p.beta * b.u2[i]));
    return p;
}

namespace {

double slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double mx = 0, my = 0;
    const double n = static_cast<double>(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i] / n;
        my += ys[i] / n;
    }
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace

std::pair<double, double> exponentialRates(const KernelBasis& b) {
    std::vector<double> xs, lp, lm;
    for (int i = 0; i < b.geom.N; ++i) {
        double p = b.u1[i] + b.u2[i], m = b.u1[i] - b.u2[i];
        if (p <= 0 || m <= 0) throw InvalidParameters("basis is not of exponential type");
        xs.push_back(b.geom.x(i));
        lp.push_back(std::log(p));
        lm.push_back(std::log(m));
    }
    return {slope(xs, lp), slope(xs, lm)};
}

double oscillationFrequency(const KernelBasis& b) {
    std::vector<double> xs, ph;
    double prev = 0, offset = 0;
    for (int i = 0; i < b.geom.N; ++i) {
        double a = std::atan2(b.u2[i], b.u1[i]);
        if (i > 0) {
            double d = a + offset - prev;
            while (d > std::numbers::pi) offset -= 2 * std::numbers::pi, d -= 2 * std::numbers::pi;
            while (d < -std::numbers::pi) offset += 2 * std::numbers::pi, d += 2 * std::numbers::pi;
        }
        prev = a + offset;
        xs.push_back(b.geom.x(i));
        ph.push_back(prev);
    }
    return slope(xs, ph);
}

double kernelResidual(const GridField& u, const KdvPotential& w) {
    auto d2 = derivative(u, 2, DerivativeScheme::FD4, false, 6);
    int lo = u.mode == BoundaryMode::Clamped ? kClampMargin : 0;
    int hi = u.mode == BoundaryMode::Clamped ? u.size() - kClampMargin : u.size();
    double r = 0, m = 0;
    for (int i = lo; i < hi; ++i) {
        r = std::max(r, std::abs(d2[i] - w(u.x(i), u.time) * u.values[i]));
        m = std::max(m, std::abs(u.values[i]));
    }
    if (m == 0) throw InvalidParameters("identically vanishing field");
    return r / m;
}

LiftResult evolveInKernel(const KdvPotential& w, const GridField& u0, const LiftOptions& opts) {
    LiftResult res;
    double r0 = kernelResidual(u0, w);
    if (r0 > opts.initialTol)
        throw KernelDrift("initial field is not in the kernel: residual " + std::to_string(r0));
    MolSystem sys;
    sys.dispersion = 1;
    const SolveOptions& so = opts.solve;
    sys.rhs = [&](const std::vector<GridField>& s, std::vector<std::vector<double>>& r) {
        const GridField& u = s[0];
        auto u1 = derivative(u, 1, so.scheme, so.dealias), u3 = derivative(u, 3, so.scheme, so.dealias);
        int lo = u.mode == BoundaryMode::Clamped ? kClampMargin : 0;
        int hi = u.mode == BoundaryMode::Clamped ? u.size() - kClampMargin : u.size();
        for (int i = lo; i < hi; ++i) r[0][i] = u3[i] - 3 * w(u.x(i), u.time) * u1[i];
        if (so.scheme == DerivativeScheme::FD4 && so.hyperdiffusion != 0) {
            auto d8 = eighthDifference(u);
            for (int i = 0; i < u.size(); ++i) r[0][i] -= so.hyperdiffusion * d8[i];
        } else if (so.scheme == DerivativeScheme::Spectral && so.dealias) {
            r[0] = dealiasFilter(u.withValues(r[0]));
        }
    };
    sys.onSnapshot = [&](const std::vector<GridField>& s) {
        double r = kernelResidual(s[0], w);
        res.kernelResiduals.push_back(r);
        if (r > opts.evolvedTol)
            throw KernelDrift("kernel residual " + std::to_string(r) + " at t=" + std::to_string(s[0].time));
    };
    auto snaps = integrateSystem(sys, {u0}, so, &res.trajectory.steps, &res.trajectory.dt);
    res.trajectory.snapshots = std::move(snaps[0]);
    return res;
}

std::pair<double, double> legendreCoefficients(const GridField& u, double c) {
    const double m = std::sqrt(c) / 2;
    double s11 = 0, s12 = 0, s22 = 0, r1 = 0, r2 = 0;
    for (int i = 0; i < u.size(); ++i) {
        double th = m * (u.x(i) + c * u.time), T = std::tanh(th);
        double b1 = T, b2 = 1 - th * T;
        s11 += b1 * b1;
        s12 += b1 * b2;
        s22 += b2 * b2;
        r1 += b1 * u.values[i];
        r2 += b2 * u.values[i];
    }
    double det = s11 * s22 - s12 * s12;
    return {(r1 * s22 - r2 * s12) / det, (s11 * r2 - s12 * r1) / det};
}

GridField airySolution(double c1, double c2, const GridGeometry& geom, double t) {
    if (t <= 0) throw OutOfDomain("airy solution requires t > 0");
    SolutionParams p;
    p.c1 = c1;
    p.c2 = c2;
    ClosedFormSolution s(SolutionKind::Airy, p);  // rejects c1 = c2 = 0
    return GridField::clamped(geom.N, geom.xMin, geom.xMax, [s](double x, double tt) { return s.eval(x, tt); }, t);
}

}  // namespace sidv
