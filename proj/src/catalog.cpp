#include "sidv/catalog.hpp"

#include <gsl/gsl_mode.h>
#include <gsl/gsl_sf_airy.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace sidv {

namespace {

const std::map<SolutionKind, std::string>& kindNames() {
    static const std::map<SolutionKind, std::string> m = {
        {SolutionKind::Sech2, "sech2"},          {SolutionKind::Exponential, "exponential"},
        {SolutionKind::Sinusoidal, "sinusoidal"}, {SolutionKind::PlanePhase, "planePhase"},
        {SolutionKind::Kink, "kink"},            {SolutionKind::Airy, "airy"},
        {SolutionKind::PeakonExp, "peakonExp"},  {SolutionKind::PeakonSin, "peakonSin"},
        {SolutionKind::KdvSoliton, "kdvSoliton"}, {SolutionKind::KernelExp, "kernelExp"},
        {SolutionKind::KernelTrig, "kernelTrig"},
    };
    return m;
}

double sgn(double z) { return (z > 0) - (z < 0); }
double toD(const Rational& r) { return r.get_d(); }

void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidParameters(what);
}

}  // namespace

std::string kindName(SolutionKind k) { return kindNames().at(k); }

SolutionKind kindFromName(const std::string& name) {
    for (auto& [k, n] : kindNames())
        if (n == name) return k;
    if (name == "soliton") return SolutionKind::KdvSoliton;
    throw InvalidParameters("unknown solution kind '" + name + "'");
}

ClosedFormSolution::ClosedFormSolution(SolutionKind kind, SolutionParams p) : kind_(kind), p_(std::move(p)) {
    auto fix = [&](const Rational& e, const Rational& a, const char* why) {
        if (!p_.eps) p_.eps = e;
        if (!p_.a) p_.a = a;
        require(*p_.eps == e && *p_.a == a, kindName(kind) + " requires " + why);
    };
    switch (kind) {
        case SolutionKind::Sech2:
            fix(1, 1, "eps=a=1");
            require(p_.c > 0, "sech2 requires c > 0");
            break;
        case SolutionKind::Kink:
            fix(Rational(2, 3), Rational(3, 2), "eps=2/3, eps*a=1");
            require(p_.c > 0, "kink requires c > 0");
            break;
        case SolutionKind::KdvSoliton:
            require(p_.c > 0, "kdvSoliton requires c > 0");
            break;
        case SolutionKind::PeakonExp:
        case SolutionKind::PeakonSin: {
            if (!p_.eps) p_.eps = 0;
            if (!p_.a) p_.a = 1;
            require(*p_.eps == 0, "peakons require eps=0");
            require(p_.c != 0 && *p_.a != 0, "peakons require c != 0, a != 0");
            bool same = (p_.c > 0) == (*p_.a > 0);
            require(kind == SolutionKind::PeakonExp ? same : !same,
                    kind == SolutionKind::PeakonExp ? "peakonExp requires sgn(c)=sgn(a)"
                                                    : "peakonSin requires sgn(c)=-sgn(a)");
            break;
        }
        case SolutionKind::Airy:
            require(p_.c1 != 0 || p_.c2 != 0, "airy requires a non-vanishing combination (c1, c2)");
            break;
        case SolutionKind::KernelExp:
        case SolutionKind::KernelTrig:
            require(p_.c1 != 0 || p_.c2 != 0, "kernel solutions require (c1, c2) != 0");
            break;
        case SolutionKind::Exponential:
        case SolutionKind::Sinusoidal: {
            if (!p_.eps) p_.eps = 1;
            if (!p_.a) p_.a = 1;
            WaveNumber w = exponentialParams(*p_.eps, *p_.a, p_.c);
            require((w.kind == WaveKind::Exponential) == (kind == SolutionKind::Exponential),
                    kind == SolutionKind::Exponential ? "exponential requires c/(a(2-eps)) > 0"
                                                      : "sinusoidal requires c/(a(eps-2)) > 0");
            require(p_.branch == 1 || p_.branch == -1, "branch must be +1 or -1");
            break;
        }
        case SolutionKind::PlanePhase:
            if (!p_.eps) p_.eps = 1;
            if (!p_.a) p_.a = 1;
            require(*p_.a != 0, "a must be nonzero");
            break;
    }
    if (!p_.eps) p_.eps = 1;
    if (!p_.a) p_.a = 1;
}

double ClosedFormSolution::eval(double x, double t) const { return derivative(x, t, 0); }

double ClosedFormSolution::derivative(double x, double t, int n) const {
    if (n < 0 || n > 3) throw std::invalid_argument("derivative order must be 0..3");
    const double c = p_.c, a = toD(*p_.a), eps = toD(*p_.eps);
    switch (kind_) {
        case SolutionKind::Sech2:
        case SolutionKind::KdvSoliton: {
            double m = std::sqrt(c) / 2;
            bool kdv = kind_ == SolutionKind::KdvSoliton;
            double th = m * (kdv ? x + c * t - p_.x0 : x - c * t - p_.x0);
            double T = std::tanh(th), s = 1 / std::cosh(th), S = s * s;
            std::array<double, 4> d = {S, -2 * S * T, 4 * S * T * T - 2 * S * S, -8 * S * T * T * T + 16 * S * S * T};
            return (kdv ? -c / 2 : c / 2) * std::pow(m, n) * d[n];
        }
        case SolutionKind::Kink: {
            double m = std::sqrt(c) / 2, th = m * (x + c * t - p_.x0);
            double T = std::tanh(th), S = 1 - T * T;
            std::array<double, 4> d = {T, S, -2 * T * S, -2 * S * S + 4 * T * T * S};
            return std::pow(m, n) * d[n];
        }
        case SolutionKind::Exponential: {
            double K = p_.branch * exponentialParams(*p_.eps, *p_.a, c).k;
            return std::pow(K, n) * std::exp(K * (x - c * t - p_.x0));
        }
        case SolutionKind::Sinusoidal:
        case SolutionKind::PlanePhase: {
            double k, phase;
            if (kind_ == SolutionKind::Sinusoidal) {
                k = exponentialParams(*p_.eps, *p_.a, c).k;
                phase = k * (x - c * t - p_.x0);
            } else {
                k = p_.k;
                phase = k * x - (eps - 2) * a * k * k * k * t + p_.x0;
            }
            return std::pow(k, n) * std::cos(phase + n * std::numbers::pi / 2);
        }
        case SolutionKind::PeakonExp: {
            double A = std::sqrt(c / (2 * a)), z = x - c * t, u = std::exp(-A * std::abs(z)), s = sgn(z);
            std::array<double, 4> d = {u, -A * s * u, A * A * u, -A * A * A * s * u};
            return d[n];
        }
        case SolutionKind::PeakonSin: {
            double B = std::sqrt(-c / (2 * a)), z = x - c * t, s = sgn(z);
            double u = std::sin(B * std::abs(z)), ux = B * s * std::cos(B * std::abs(z));
            std::array<double, 4> d = {u, ux, -B * B * u, -B * B * ux};
            return d[n];
        }
        case SolutionKind::KernelExp: {
            double e1 = p_.c1 * std::exp(x - 2 * t), e2 = p_.c2 * std::exp(-x + 2 * t);
            return e1 + (n % 2 ? -e2 : e2);
        }
        case SolutionKind::KernelTrig: {
            double th = x + 2 * t;
            return p_.c1 * std::cos(th + n * std::numbers::pi / 2) + p_.c2 * std::sin(th + n * std::numbers::pi / 2);
        }
        case SolutionKind::Airy: {
            if (t <= 0) throw OutOfDomain("airy solution requires t > 0");
            double lam = std::cbrt(1 / (6 * t)), z = x * lam, pre = std::pow(t, 1.0 / 6);
            double y = p_.c1 * airyAi(z) + p_.c2 * airyBi(z);
            double yp = p_.c1 * airyAiPrime(z) + p_.c2 * airyBiPrime(z);
            std::array<double, 4> d = {y, lam * yp, lam * lam * z * y, lam * lam * lam * (y + z * yp)};
            return pre * d[n];
        }
    }
    return 0;
}

std::optional<EquationSpec> ClosedFormSolution::governs() const {
    switch (kind_) {
        case SolutionKind::KdvSoliton: return std::nullopt;
        case SolutionKind::Airy:
        case SolutionKind::KernelExp:
        case SolutionKind::KernelTrig: return EquationSpec::family(Rational(2, 3), Rational(3, 2));
        default: return EquationSpec::family(*p_.eps, *p_.a);
    }
}

std::string ClosedFormSolution::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "kind=" << kindName(kind_) << ", params=eps=" << p_.eps->get_str() << ",a=" << p_.a->get_str();
    switch (kind_) {
        case SolutionKind::Airy:
        case SolutionKind::KernelExp:
        case SolutionKind::KernelTrig: os << ",c1=" << p_.c1 << ",c2=" << p_.c2; break;
        case SolutionKind::PlanePhase: os << ",k=" << p_.k << ",x0=" << p_.x0; break;
        case SolutionKind::Exponential: os << ",c=" << p_.c << ",x0=" << p_.x0 << ",branch=" << p_.branch; break;
        case SolutionKind::PeakonExp:
        case SolutionKind::PeakonSin: os << ",c=" << p_.c; break;
        default: os << ",c=" << p_.c << ",x0=" << p_.x0;
    }
    return os.str();
}

// ------------------------------------------------------------ residuals

double residualOnGrid(const ClosedFormSolution& s, const GridGeometry& g, double t) {
    if (!s.smooth()) throw NonSmoothSolution("peakon residuals are checked in the weak form");
    if (g.N < 16) throw InvalidParameters("grid too small for the residual stencil");
    const int N = g.N, M = 4;
    const double h = g.dx(), ht = 2e-3 * std::max(1.0, std::abs(t));
    if (s.kind() == SolutionKind::Airy && t - 2 * ht <= 0) throw OutOfDomain("airy residual needs t > 0");

    std::vector<double> u(N), ut(N);
    for (int i = 0; i < N; ++i) {
        double x = g.x(i);
        u[i] = s.eval(x, t);
        ut[i] = (s.eval(x, t - 2 * ht) - 8 * s.eval(x, t - ht) + 8 * s.eval(x, t + ht) - s.eval(x, t + 2 * ht)) /
                (12 * ht);
    }
    // sixth-order central weights
    static const double w1[] = {-1.0 / 60, 3.0 / 20, -3.0 / 4, 0, 3.0 / 4, -3.0 / 20, 1.0 / 60};
    static const double w2[] = {1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18, 3.0 / 2, -3.0 / 20, 1.0 / 90};
    static const double w3[] = {-7.0 / 240, 3.0 / 10, -169.0 / 120, 61.0 / 30, 0,
                                -61.0 / 30, 169.0 / 120, -3.0 / 10, 7.0 / 240};

    const double eps = s.params().eps->get_d(), a = s.params().a->get_d();
    double worst = 0;
    for (int i = M; i < N - M; ++i) {
        double d1 = 0, d2 = 0, d3 = 0;
        for (int k = -3; k <= 3; ++k) {
            d1 += w1[k + 3] * u[i + k];
            d2 += w2[k + 3] * u[i + k];
        }
        for (int k = -4; k <= 4; ++k) d3 += w3[k + 4] * u[i + k];
        d1 /= h;
        d2 /= h * h;
        d3 /= h * h * h;
        double r;
        switch (s.kind()) {
            case SolutionKind::KdvSoliton: r = ut[i] - d3 + 6 * u[i] * d1; break;
            case SolutionKind::Airy:
            case SolutionKind::KernelExp:
            case SolutionKind::KernelTrig: {
                double w = s.kind() == SolutionKind::Airy ? g.x(i) / (6 * t)
                                                          : (s.kind() == SolutionKind::KernelExp ? 1.0 : -1.0);
                r = std::max(std::abs(ut[i] + 3 * w * d1 - d3), std::abs(d2 - w * u[i]));
                break;
            }
            default: r = ut[i] + 2 * a * d1 * d2 / u[i] - eps * a * d3;
        }
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

WaveNumber exponentialParams(const Rational& eps, const Rational& a, double c) {
    if (a == 0) throw InvalidParameters("a must be nonzero");
    if (eps == 2) throw StationaryCase("eps=2: plane waves are stationary");
    if (c == 0) throw ZeroSpeed("c=0 gives no travelling wave");
    double r = c / (a.get_d() * (2 - eps.get_d()));
    if (r > 0) return {WaveKind::Exponential, std::sqrt(r)};
    return {WaveKind::Oscillatory, std::sqrt(-r)};
}

double airyAi(double z) { return gsl_sf_airy_Ai(z, GSL_PREC_DOUBLE); }
double airyBi(double z) { return gsl_sf_airy_Bi(z, GSL_PREC_DOUBLE); }
double airyAiPrime(double z) { return gsl_sf_airy_Ai_deriv(z, GSL_PREC_DOUBLE); }
double airyBiPrime(double z) { return gsl_sf_airy_Bi_deriv(z, GSL_PREC_DOUBLE); }
double airyWronskian(double z) { return airyAi(z) * airyBiPrime(z) - airyAiPrime(z) * airyBi(z); }

}  // namespace sidv
