#include "sidv/weakform.hpp"

#include "sidv/grid.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <memory>

namespace sidv {

namespace {

// 16-point Gauss-Legendre on [-1, 1], built once.
struct GL16 {
    std::array<double, 16> x{}, w{};
    GL16() {
        std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> t(
            gsl_integration_glfixed_table_alloc(16), gsl_integration_glfixed_table_free);
        for (size_t i = 0; i < 16; ++i) gsl_integration_glfixed_point(-1, 1, i, &x[i], &w[i], t.get());
    }
};
const GL16& gl16() {
    static const GL16 g;
    return g;
}

using Fn = std::function<double(double)>;

struct Panel {
    double value, mass;  ///< integral of f and of |f|
};

Panel panel(const Fn& f, double a, double b) {
    const auto& g = gl16();
    double h = (b - a) / 2, m = (a + b) / 2, s = 0, s1 = 0;
    for (int i = 0; i < 16; ++i) {
        double v = g.w[i] * f(m + h * g.x[i]);
        s += v;
        s1 += std::abs(v);
    }
    return {s * h, s1 * std::abs(h)};
}

// Halve until the panel and its two halves agree to tol, or to rounding
// relative to the panel's own mass.
double adapt(const Fn& f, double a, double b, Panel whole, double tol, int depth) {
    double m = (a + b) / 2;
    Panel l = panel(f, a, m), r = panel(f, m, b);
    double diff = std::abs(l.value + r.value - whole.value);
    if (diff <= std::max(tol, 1e-14 * (l.mass + r.mass)) || depth >= 24) return l.value + r.value;
    return adapt(f, a, m, l, tol / 2, depth + 1) + adapt(f, m, b, r, tol / 2, depth + 1);
}

// Composite over [a, b] with forced breakpoints.
double integrate1d(const Fn& f, double a, double b, std::vector<double> breaks, double tol) {
    breaks.erase(std::remove_if(breaks.begin(), breaks.end(), [&](double c) { return c <= a || c >= b; }),
                 breaks.end());
    breaks.push_back(a);
    breaks.push_back(b);
    std::sort(breaks.begin(), breaks.end());
    double s = 0;
    for (size_t i = 0; i + 1 < breaks.size(); ++i) {
        double lo = breaks[i], hi = breaks[i + 1];
        double share = tol * (hi - lo) / (b - a);
        // start from four panels so the flat ends of the bump are not sampled too coarsely
        double q = (hi - lo) / 4;
        for (int k = 0; k < 4; ++k) {
            double p0 = lo + k * q, p1 = p0 + q;
            s += adapt(f, p0, p1, panel(f, p0, p1), share / 4, 0);
        }
    }
    return s;
}

}  // namespace

double bump(double xi, int n) {
    double q = 1 - xi * xi;
    if (q <= 0) return 0;
    double psi = std::exp(-1 / q);
    if (psi == 0) return 0;
    double q2 = q * q, q3 = q2 * q, q4 = q3 * q;
    double g1 = -2 * xi / q2;
    double g2 = -2 / q2 - 8 * xi * xi / q3;
    double g3 = -24 * xi / q3 - 48 * xi * xi * xi / q4;
    switch (n) {
        case 0: return psi;
        case 1: return g1 * psi;
        case 2: return (g2 + g1 * g1) * psi;
        case 3: return (g3 + 3 * g1 * g2 + g1 * g1 * g1) * psi;
    }
    throw std::invalid_argument("bump derivative order must be 0..3");
}

double TestFunction::operator()(double x, double t) const { return bump((x - x0) / rx) * bump((t - t0) / rt); }

double TestFunction::dt(double x, double t) const { return bump((x - x0) / rx) * bump((t - t0) / rt, 1) / rt; }

double TestFunction::dxxx(double x, double t) const {
    return bump((x - x0) / rx, 3) * bump((t - t0) / rt) / (rx * rx * rx);
}

double PeakonData::nonlinear(double x, double t) const {
    const auto& p = sol.params();
    double c = p.c, a = p.a->get_d(), z = x - c * t;
    double s = (z > 0) - (z < 0);
    switch (sol.kind()) {
        case SolutionKind::PeakonExp: {
            double A = std::sqrt(c / (2 * a));
            return -A * A * A * s * u(x, t);
        }
        case SolutionKind::PeakonSin: {
            double B2 = -c / (2 * a);
            return -B2 * ux(x, t);
        }
        default: return sol.derivative(x, t, 1) * sol.derivative(x, t, 2) / sol.eval(x, t);
    }
}

double TestFunctionSum::operator()(double x, double t) const {
    double s = 0;
    for (auto& [w, f] : terms) s += w * f(x, t);
    return s;
}

double TestFunctionSum::dt(double x, double t) const {
    double s = 0;
    for (auto& [w, f] : terms) s += w * f.dt(x, t);
    return s;
}

double TestFunctionSum::dxxx(double x, double t) const {
    double s = 0;
    for (auto& [w, f] : terms) s += w * f.dxxx(x, t);
    return s;
}

namespace {

void checkSupport(const TestFunction& phi, const WeakWindow& w) {
    if (phi.rx <= 0 || phi.rt <= 0) throw SupportViolation("test function radii must be positive");
    if (phi.x0 - phi.rx <= w.xMin || phi.x0 + phi.rx >= w.xMax)
        throw SupportViolation("test function support leaves the x window");
    if (phi.t0 + phi.rt >= w.T) throw SupportViolation("test function support reaches t = T");
    if (phi.t0 + phi.rt <= 0) throw SupportViolation("test function support lies before t = 0");
}

template <class Phi>
double residualOver(const PeakonData& u, const Rational& eps, const Rational& a, const Phi& phi,
                    const std::vector<TestFunction>& parts) {
    const double ad = Rational(a).get_d(), ea = Rational(eps * a).get_d();
    const double tolX = 1e-13, tolT = 1e-11;

    // every support edge is a breakpoint, so each panel sees one smooth piece
    double xa = 1e300, xb = -1e300, ta = 1e300, tb = -1e300;
    std::vector<double> xEdges, tEdges;
    for (const auto& p : parts) {
        xa = std::min(xa, p.x0 - p.rx);
        xb = std::max(xb, p.x0 + p.rx);
        ta = std::min(ta, p.t0 - p.rt);
        tb = std::max(tb, p.t0 + p.rt);
        xEdges.insert(xEdges.end(), {p.x0 - p.rx, p.x0 + p.rx});
        tEdges.insert(tEdges.end(), {p.t0 - p.rt, p.t0 + p.rt});
    }
    auto breaksAt = [&](double t) {
        auto b = xEdges;
        if (u.hasCrest()) b.push_back(u.crest(t));
        return b;
    };

    double initial = 0;
    if (ta < 0) initial = integrate1d([&](double x) { return u.u(x, 0) * phi(x, 0); }, xa, xb, breaksAt(0), tolX);

    auto slice = [&](double t) {
        auto g = [&](double x) {
            double uv = u.u(x, t);
            return uv * phi.dt(x, t) - 2 * ad * u.nonlinear(x, t) * phi(x, t) - ea * uv * phi.dxxx(x, t);
        };
        return integrate1d(g, xa, xb, breaksAt(t), tolX);
    };
    return initial + integrate1d(slice, std::max(0.0, ta), tb, tEdges, tolT);
}

}  // namespace

double weakResidual(const PeakonData& u, const Rational& eps, const Rational& a, const TestFunction& phi,
                    const WeakWindow& w) {
    checkSupport(phi, w);
    return residualOver(u, eps, a, phi, {phi});
}

double weakResidual(const PeakonData& u, const Rational& eps, const Rational& a, const TestFunctionSum& phi,
                    const WeakWindow& w) {
    if (phi.terms.empty()) throw SupportViolation("empty test function");
    std::vector<TestFunction> parts;
    for (auto& [wt, f] : phi.terms) {
        checkSupport(f, w);
        parts.push_back(f);
    }
    return residualOver(u, eps, a, phi, parts);
}

PeakSlopes peakProfileCheck(const PeakonData& u, double t) {
    const double xc = u.hasCrest() ? u.crest(t) : u.sol.params().x0, h = 1e-3;
    const int m = 8;
    std::vector<double> offs(m + 1);
    for (int k = 0; k <= m; ++k) offs[k] = k * h;
    auto wR = fornbergWeights(0, offs, 1);
    PeakSlopes s{0, 0};
    // weights for the left side are those of the right side with x -> -x
    for (int k = 0; k <= m; ++k) {
        s.right += wR[k] * u.u(xc + offs[k], t);
        s.left -= wR[k] * u.u(xc - offs[k], t);
    }
    return s;
}

std::vector<InitialGap> initialConvergenceCheck(const PeakonData& u, const std::vector<double>& ts, double L, int M) {
    std::vector<InitialGap> out;
    for (double t : ts) {
        std::vector<double> xs;
        xs.reserve(M + 202);
        for (int i = 0; i < M; ++i) xs.push_back(-L + 2 * L * i / (M - 1));
        if (u.hasCrest()) {
            double lo = std::min(0.0, u.crest(t)), hi = std::max(0.0, u.crest(t));
            for (int i = 1; i <= 200; ++i) xs.push_back(lo + (hi - lo) * i / 201);
        }
        InitialGap g{t, 0, 0};
        for (double x : xs) {
            g.valueGap = std::max(g.valueGap, std::abs(u.u(x, t) - u.u(x, 0)));
            g.slopeGap = std::max(g.slopeGap, std::abs(u.ux(x, t) - u.ux(x, 0)));
        }
        out.push_back(g);
    }
    return out;
}

}  // namespace sidv
