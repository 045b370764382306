#include "mtvlab/quadrature.hpp"

#include "mtvlab/constants.hpp"
#include "mtvlab/errors.hpp"
#include "mtvlab/series.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <vector>

namespace mtvlab {

namespace {

double ipow(double base, int e) {
    double r = 1.0, b = base;
    for (int n = e; n > 0; n >>= 1) {
        if (n & 1) r *= b;
        b *= b;
    }
    return r;
}

struct Node {
    double t;   // abscissa in (0,1)
    double lr;  // log((1-t)/(1+t)) evaluated without cancellation
    double w;   // trapezoid weight including the step
};

// u-cutoff 4.3 puts the dropped tail far below double precision; weights
// underflow to exact zero slightly inside it and those nodes are skipped.
const std::vector<Node>& de_nodes(int level) {
    constexpr int kMaxLevel = 13;
    static std::vector<std::vector<Node>> cache(kMaxLevel + 1);
    static std::mutex build_mutex;
    std::lock_guard lock(build_mutex);
    auto& nodes = cache[level];
    if (!nodes.empty()) return nodes;
    const double pi = 3.14159265358979323846;
    const double h = 1.0 / static_cast<double>(1 << level);
    const long long kmax = static_cast<long long>(std::ceil(4.3 / h));
    nodes.reserve(2 * kmax + 1);
    for (long long k = -kmax; k <= kmax; ++k) {
        const double u = k * h;
        const double s = 0.5 * pi * std::sinh(u);
        double t, lr;
        if (s >= 0.0) {
            const double e = std::exp(-2.0 * s);
            t = 1.0 / (1.0 + e);
            lr = (s < 300.0) ? -std::log(1.0 + 2.0 * std::exp(2.0 * s))
                             : -(2.0 * s + std::log(2.0));
        } else {
            const double e = std::exp(2.0 * s);
            t = e / (1.0 + e);
            lr = std::log1p(-2.0 * t / (1.0 + t));
        }
        const double sech = (std::fabs(s) < 300.0) ? 2.0 / (std::exp(s) + std::exp(-s)) : 0.0;
        const double w = 0.25 * pi * std::cosh(u) * sech * sech * h;
        if (w == 0.0) continue;
        nodes.push_back({t, lr, w});
    }
    return nodes;
}

using Integrand = std::function<double(double, double)>;

QuadratureResult integrate_fn(const Integrand& f, double tol, int max_level = 13) {
    double prev = 0.0, s = 0.0;
    bool have_prev = false;
    for (int L = 2; L <= max_level; ++L) {
        long double acc = 0.0L;
        for (const Node& nd : de_nodes(L)) acc += nd.w * f(nd.t, nd.lr);
        s = static_cast<double>(acc);
        if (have_prev) {
            const double est = std::fabs(s - prev);
            if (est <= tol * std::max(1.0, std::fabs(s))) return {s, est, L};
        }
        prev = s;
        have_prev = true;
    }
    throw convergence_error("tanh-sinh levels exhausted before tolerance", s,
                            std::fabs(s - prev), max_level);
}

double kernel_value(const KernelSpec& k, double t, double lr) {
    double v = ipow(t, k.tpow) * ipow(lr, k.logpow);
    switch (k.weight) {
        case KernelWeight::none:
            break;
        case KernelWeight::inv_one_plus_t2:
            v /= 1.0 + t * t;
            break;
        case KernelWeight::atan_power:
            v *= ipow(std::atan(t), k.weight_power) / (1.0 + t * t);
            break;
        case KernelWeight::pi4_minus_atan_power:
            // pi/4 - arctan t = arctan((1-t)/(1+t)), stable near t = 1
            v *= ipow(std::atan(std::exp(lr)), k.weight_power) / (1.0 + t * t);
            break;
    }
    return v;
}

}  // namespace

QuadratureResult integrate(const KernelSpec& kernel, double tol) {
    if (kernel.tpow < 0 || kernel.logpow < 0 || kernel.weight_power < 0)
        throw usage_error("integrate: powers must be >= 0");
    return integrate_fn([&](double t, double lr) { return kernel_value(kernel, t, lr); }, tol);
}

TwoSided log_moment_check(int n, int m, LogMomentCase c, double tol) {
    if (n < 1 || m < 1) throw usage_error("log_moment_check: need n >= 1 and m >= 1");
    const auto& t = shared_tables();
    if (2 * m > t.Jmax || n > t.N)
        throw usage_error("log_moment_check: n or m too large for the tables");
    const auto& cs = ConstantsTable::instance();
    auto fact = [](int a) {
        double f = 1.0;
        for (int i = 2; i <= a; ++i) f *= i;
        return f;
    };

    KernelSpec spec;
    double rhs = 0.0, mag = 0.0;
    auto add = [&](double x) {
        rhs += x;
        mag += std::fabs(x);
    };
    switch (c) {
        case LogMomentCase::ee: {
            spec = {2 * n - 2, 2 * m, KernelWeight::none, 0};
            double s = 0.0;
            for (int j = 0; j <= m; ++j) s += cs.eta(2 * m - 2 * j) * t.T_ones[2 * j][n];
            add(2.0 * fact(2 * m) / (2.0 * n - 1.0) * s);
            break;
        }
        case LogMomentCase::eo: {
            spec = {2 * n - 2, 2 * m - 1, KernelWeight::none, 0};
            double s = 0.0;
            for (int j = 0; j < m; ++j) s += cs.eta(2 * m - 1 - 2 * j) * t.T_ones[2 * j][n];
            add(-2.0 * fact(2 * m - 1) / (2.0 * n - 1.0) * s);
            add(-fact(2 * m - 1) / (2.0 * n - 1.0) * t.S_ones[2 * m - 1][n]);
            break;
        }
        case LogMomentCase::oe: {
            spec = {2 * n - 1, 2 * m, KernelWeight::none, 0};
            double s = 0.0;
            for (int j = 0; j < m; ++j) s += cs.eta(2 * m - 1 - 2 * j) * t.T_ones[2 * j + 1][n];
            add(fact(2 * m) / static_cast<double>(n) * s);
            add(fact(2 * m) / (2.0 * n) * t.S_ones[2 * m][n]);
            break;
        }
        case LogMomentCase::oo: {
            spec = {2 * n - 1, 2 * m - 1, KernelWeight::none, 0};
            double s = 0.0;
            for (int j = 0; j < m; ++j) s += cs.eta(2 * m - 2 - 2 * j) * t.T_ones[2 * j + 1][n];
            add(-fact(2 * m - 1) / static_cast<double>(n) * s);
            break;
        }
    }
    QuadratureResult q = integrate(spec, tol);
    TwoSided out;
    out.lhs = {q.value, q.error_estimate, q.levels_used, Method::quadrature};
    out.rhs = {rhs, 1e-14 * mag + 1e-16, 0, Method::closed_form};
    return out;
}

namespace {

ValueWithError reduced_integral(int k, int r, KernelWeight weight, double tol) {
    if (k < 1 || r < 1) throw usage_error("reduced integral: need k >= 1 and r >= 1");
    double pref = ipow(2.0, r);
    for (int i = 2; i < k; ++i) pref /= i;
    for (int i = 2; i < r; ++i) pref /= i;
    if ((k + r - 1) % 2 == 1) pref = -pref;
    KernelSpec spec{0, k - 1, weight, r - 1};
    QuadratureResult q = integrate(spec, tol);
    return {pref * q.value, std::fabs(pref) * q.error_estimate, q.levels_used,
            Method::quadrature};
}

}  // namespace

ValueWithError w_reduced_integral(int k, int r, double tol) {
    return reduced_integral(k, r, KernelWeight::atan_power, tol);
}

ValueWithError tbar_reduced_integral(int k, int r, double tol) {
    return reduced_integral(k, r, KernelWeight::pi4_minus_atan_power, tol);
}

namespace {

QuadratureResult integrate_scaled(const Integrand& f, double upper, double tol,
                                  int max_level = 10) {
    if (upper <= 0.0) return {0.0, 0.0, 0};
    double prev = 0.0, s = 0.0;
    bool have_prev = false;
    for (int L = 2; L <= max_level; ++L) {
        long double acc = 0.0L;
        for (const Node& nd : de_nodes(L)) {
            const double t = upper * nd.t;
            const double lr = (upper == 1.0) ? nd.lr : std::log1p(-2.0 * t / (1.0 + t));
            acc += nd.w * f(t, lr);
        }
        s = static_cast<double>(acc) * upper;
        if (have_prev && std::fabs(s - prev) <= tol * std::max(1.0, std::fabs(s)))
            return {s, std::fabs(s - prev), L};
        prev = s;
        have_prev = true;
    }
    return {s, std::fabs(s - prev), max_level};
}

}  // namespace

QuadratureResult nested_integral(const std::vector<NestedKernel>& fs, double tol) {
    const int m = static_cast<int>(fs.size());
    if (m < 1) throw usage_error("nested_integral: need at least one kernel");
    if (m > 3) throw usage_error("nested_integral: dimension capped at 3");
    const double per_tol = tol / 8.0;
    std::function<QuadratureResult(int, double)> level = [&](int i, double upper) {
        Integrand g;
        if (i == m - 1) {
            g = [&fs, i](double t, double lr) {
                return ipow(lr, fs[i].logpow) / (1.0 + t * t);
            };
        } else {
            g = [&fs, &level, i](double t, double lr) {
                return ipow(lr, fs[i].logpow) / (1.0 + t * t) * level(i + 1, t).value;
            };
        }
        return integrate_scaled(g, upper, per_tol);
    };
    return level(0, 1.0);
}

}  // namespace mtvlab
