#include "sidv/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>

namespace sidv {

double GridField::dx() const {
    int N = size();
    return mode == BoundaryMode::Periodic ? (xMax - xMin) / N : (xMax - xMin) / (N - 1);
}

GridField GridField::periodic(int N, double xMin, double xMax, const ReferenceFn& f, double t) {
    if (N < 8) throw InvalidParameters("grid needs at least 8 nodes");
    GridField g;
    g.xMin = xMin;
    g.xMax = xMax;
    g.mode = BoundaryMode::Periodic;
    g.time = t;
    g.values.resize(N);
    for (int i = 0; i < N; ++i) g.values[i] = f(g.x(i), t);
    return g;
}

GridField GridField::clamped(int N, double xMin, double xMax, const ReferenceFn& ref, double t) {
    if (N < 4 * kClampMargin) throw InvalidParameters("clamped grid needs at least 16 nodes");
    if (!ref) throw InvalidParameters("clamped grid needs a reference solution");
    GridField g;
    g.xMin = xMin;
    g.xMax = xMax;
    g.mode = BoundaryMode::Clamped;
    g.reference = ref;
    g.time = t;
    g.values.resize(N);
    for (int i = 0; i < N; ++i) g.values[i] = ref(g.x(i), t);
    return g;
}

GridField GridField::withValues(std::vector<double> v) const {
    GridField g = *this;
    g.values = std::move(v);
    return g;
}

std::vector<double> fornbergWeights(double z, const std::vector<double>& xs, int m) {
    const int n = static_cast<int>(xs.size()) - 1;
    std::vector<std::vector<double>> c(n + 1, std::vector<double>(m + 1, 0.0));
    double c1 = 1, c4 = xs[0] - z;
    c[0][0] = 1;
    for (int i = 1; i <= n; ++i) {
        int mn = std::min(i, m);
        double c2 = 1, c5 = c4;
        c4 = xs[i] - z;
        for (int j = 0; j < i; ++j) {
            double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n + 1);
    for (int i = 0; i <= n; ++i) w[i] = c[i][m];
    return w;
}

namespace {

struct Stencil {
    int first;  // offset of the first node relative to the evaluation point
    std::vector<double> w;
};

/// Weights on unit spacing, cached by (order, first offset, width).
const Stencil& stencil(int n, int first, int width) {
    static std::map<std::tuple<int, int, int>, Stencil> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(n, first, width);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<double> xs(width);
    for (int k = 0; k < width; ++k) xs[k] = first + k;
    return cache.emplace(key, Stencil{first, fornbergWeights(0, xs, n)}).first->second;
}

int halfWidth(int n, int accuracy) { return (n + 1) / 2 + accuracy / 2 - 1; }

std::vector<double> spectralDerivative(const GridField& f, int n, bool dealias) {
    const int N = f.size();
    const int M = N / 2 + 1;
    std::vector<double> in = f.values, out(N);
    std::vector<std::complex<double>> spec(M);
    auto* cspec = reinterpret_cast<fftw_complex*>(spec.data());
    fftw_plan fwd, bwd;
    {
        static std::mutex planMu;  // planner is not thread safe
        std::lock_guard<std::mutex> lock(planMu);
        fwd = fftw_plan_dft_r2c_1d(N, in.data(), cspec, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(N, cspec, out.data(), FFTW_ESTIMATE);
    }
    fftw_execute(fwd);
    const double L = f.xMax - f.xMin;
    for (int k = 0; k < M; ++k) {
        bool nyquist = (N % 2 == 0) && k == N / 2;
        if ((dealias && 3 * k > N) || (nyquist && n % 2 == 1)) {
            spec[k] = 0;
            continue;
        }
        std::complex<double> ik(0, 2 * std::numbers::pi * k / L);
        spec[k] *= std::pow(ik, n) / static_cast<double>(N);
    }
    fftw_execute(bwd);
    {
        static std::mutex planMu2;
        std::lock_guard<std::mutex> lock(planMu2);
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }
    return out;
}

}  // namespace

std::vector<double> dealiasFilter(const GridField& f) {
    if (f.mode != BoundaryMode::Periodic) throw SchemeMismatch("spectral filtering needs a periodic grid");
    return spectralDerivative(f, 0, true);
}

std::vector<double> derivative(const GridField& f, int n, DerivativeScheme scheme, bool dealias, int accuracy) {
    if (n < 1) throw std::invalid_argument("derivative order must be positive");
    const int N = f.size();
    if (scheme == DerivativeScheme::Spectral) {
        if (f.mode != BoundaryMode::Periodic) throw SchemeMismatch("spectral derivatives need a periodic grid");
        return spectralDerivative(f, n, dealias);
    }
    const double scale = std::pow(f.dx(), -n);
    if (accuracy < 2 || accuracy % 2) throw std::invalid_argument("accuracy must be even and >= 2");
    const int p = halfWidth(n, accuracy);
    std::vector<double> d(N);
    const Stencil& central = stencil(n, -p, 2 * p + 1);
    const auto& u = f.values;
    if (f.mode == BoundaryMode::Periodic) {
        if (N < 2 * p + 1) throw InvalidParameters("grid smaller than the stencil");
        std::vector<double> pad(N + 2 * p);
        for (int i = 0; i < N + 2 * p; ++i) pad[i] = u[((i - p) % N + N) % N];
        for (int i = 0; i < N; ++i) {
            double s = 0;
            for (int k = 0; k <= 2 * p; ++k) s += central.w[k] * pad[i + k];
            d[i] = s * scale;
        }
        return d;
    }
    const int width = n + accuracy;
    if (N < width) throw InvalidParameters("grid smaller than the stencil");
    for (int i = 0; i < N; ++i) {
        const Stencil* st;
        if (i - p >= 0 && i + p < N) {
            st = &central;
        } else if (i - p < 0) {
            st = &stencil(n, -i, width);
        } else {
            st = &stencil(n, N - width - i, width);
        }
        double s = 0;
        for (size_t k = 0; k < st->w.size(); ++k) s += st->w[k] * u[i + st->first + k];
        d[i] = s * scale;
    }
    return d;
}

std::vector<double> eighthDifference(const GridField& f) {
    static const double c8[9] = {1, -8, 28, -56, 70, -56, 28, -8, 1};
    const int N = f.size();
    const double s = 1 / std::pow(f.dx(), 3);
    std::vector<double> d(N, 0.0);
    const auto& u = f.values;
    if (f.mode == BoundaryMode::Periodic) {
        std::vector<double> pad(N + 8);
        for (int i = 0; i < N + 8; ++i) pad[i] = u[((i - 4) % N + N) % N];
        for (int i = 0; i < N; ++i) {
            double acc = 0;
            for (int k = 0; k < 9; ++k) acc += c8[k] * pad[i + k];
            d[i] = acc * s;
        }
    } else {
        for (int i = 4; i < N - 4; ++i) {
            double acc = 0;
            for (int k = 0; k < 9; ++k) acc += c8[k] * u[i + k - 4];
            d[i] = acc * s;
        }
    }
    return d;
}

double fd4ThirdDerivativeSymbolMax() {
    const Stencil& st = stencil(3, -3, 7);
    double best = 0;
    for (int j = 0; j <= 4000; ++j) {
        double th = std::numbers::pi * j / 4000, s = 0;
        for (int k = 0; k < 7; ++k) s += st.w[k] * std::sin((st.first + k) * th);
        best = std::max(best, std::abs(s));
    }
    return best;
}

double integrate(const GridField& f, const std::vector<double>& g) {
    const int N = static_cast<int>(g.size());
    const double h = f.dx();
    double s = 0;
    if (f.mode == BoundaryMode::Periodic) {
        for (double v : g) s += v;
        return s * h;
    }
    if (N < 4) throw InvalidParameters("Simpson quadrature needs at least 4 nodes");
    int end = (N % 2 == 1) ? N - 1 : N - 4;  // Simpson on [0,end], 3/8 rule on the rest
    for (int i = 0; i < end; i += 2) s += h / 3 * (g[i] + 4 * g[i + 1] + g[i + 2]);
    if (end != N - 1) s += 3 * h / 8 * (g[N - 4] + 3 * g[N - 3] + 3 * g[N - 2] + g[N - 1]);
    return s;
}

}  // namespace sidv
