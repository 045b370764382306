#include "mtvlab/tvalues.hpp"

#include "mtvlab/constants.hpp"
#include "mtvlab/errors.hpp"
#include "mtvlab/index.hpp"
#include "mtvlab/series.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <tuple>
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

// sum_{n>=1} (-1)^n coeff(n) / denom(n), closed by the averaging triangle.
ValueWithError series_alt(const std::function<double(long long)>& coeff,
                          const std::function<double(long long)>& denom,
                          long long nmax = 8192) {
    std::vector<double> partials(nmax);
    double acc = 0.0;
    for (long long n = 1; n <= nmax; ++n) {
        double sign = (n % 2 == 1) ? -1.0 : 1.0;
        acc += sign * coeff(n) / denom(n);
        partials[n - 1] = acc;
    }
    return accelerate_alternating(partials);
}

}  // namespace

ValueWithError W(int m, int k, int r, double tol) {
    if (m < 1 || r < 1 || k < r) throw usage_error("W: need m >= 1 and k >= r >= 1");
    static std::map<std::tuple<int, int, int, double>, ValueWithError> memo;
    static std::mutex memo_mutex;
    const auto key = std::make_tuple(m, k, r, tol);
    {
        std::lock_guard lock(memo_mutex);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
    }
    const auto comps = compositions(k, r);
    const double per = tol / static_cast<double>(comps.size());
    double tot = 0.0, est = 0.0;
    long long terms = 0;
    for (const auto& c : comps) {
        double coeff = Rational::binomial(c.back() + m - 2, m - 1).to_double();
        std::vector<int> ks(c.begin(), c.end() - 1);
        ks.push_back(c.back() + m - 1);
        ValueWithError v = eval_signed_mtv(SignedIndex::bar_last(ks), per);
        tot += coeff * v.value;
        est += coeff * v.error_estimate;
        terms = std::max(terms, v.terms_used);
    }
    ValueWithError out{tot, est, terms, Method::accelerated};
    std::lock_guard lock(memo_mutex);
    memo.emplace(key, out);
    return out;
}

ValueWithError W_series(int p, int m, WSeriesForm form, double tol) {
    if (p < 1 || m < 1) throw usage_error("W_series: need p >= 1 and m >= 1");
    const auto& t = shared_tables();
    const auto& cs = ConstantsTable::instance();
    const long long nmax = std::min<long long>(8192, t.N);
    auto need = [&](int j) {
        if (j > t.Jmax) throw usage_error("W_series: p or m too large for the tables");
    };
    auto TT = [&](int j, long long n) { return t.T_ones[j][n]; };
    auto SS = [&](int j, long long n) { return t.S_ones[j][n]; };

    double tot = 0.0, est = 0.0;
    switch (form) {
        case WSeriesForm::even_depth_odd_weight: {
            need(2 * m - 1);
            need(2 * p - 1);
            for (int j = 0; j < p; ++j) {
                double c = cs.eta(2 * p - 2 - 2 * j);
                auto v = series_alt([&](long long n) { return TT(2 * m - 1, n) * TT(2 * j + 1, n); },
                                    [](long long n) { return static_cast<double>(n); }, nmax);
                tot += c * v.value;
                est += std::fabs(c) * v.error_estimate;
            }
            tot *= 2.0 * ((m % 2 == 0) ? 1.0 : -1.0);
            est *= 2.0;
            break;
        }
        case WSeriesForm::even_depth_even_weight: {
            need(2 * m - 1);
            need(std::max(2 * p - 3, 2 * p - 2));
            for (int j = 0; j < p - 1; ++j) {
                double c = cs.eta(2 * p - 3 - 2 * j);
                auto v = series_alt([&](long long n) { return TT(2 * m - 1, n) * TT(2 * j + 1, n); },
                                    [](long long n) { return static_cast<double>(n); }, nmax);
                tot += 2.0 * c * v.value;
                est += 2.0 * std::fabs(c) * v.error_estimate;
            }
            {
                auto v = series_alt([&](long long n) { return TT(2 * m - 1, n) * SS(2 * p - 2, n); },
                                    [](long long n) { return static_cast<double>(n); }, nmax);
                tot += v.value;
                est += v.error_estimate;
            }
            tot *= (m % 2 == 0) ? 1.0 : -1.0;
            break;
        }
        case WSeriesForm::odd_depth_even_weight: {
            need(std::max(2 * m - 2, 2 * p - 1));
            for (int j = 0; j < p; ++j) {
                double c = cs.eta(2 * p - 1 - 2 * j);
                auto v = series_alt([&](long long n) { return TT(2 * m - 2, n) * TT(2 * j, n); },
                                    [](long long n) { return 2.0 * n - 1.0; }, nmax);
                tot += 4.0 * c * v.value;
                est += 4.0 * std::fabs(c) * v.error_estimate;
            }
            {
                auto v = series_alt([&](long long n) { return TT(2 * m - 2, n) * SS(2 * p - 1, n); },
                                    [](long long n) { return 2.0 * n - 1.0; }, nmax);
                tot += 2.0 * v.value;
                est += 2.0 * v.error_estimate;
            }
            tot *= (m % 2 == 1) ? 1.0 : -1.0;
            break;
        }
        case WSeriesForm::odd_depth_odd_weight: {
            need(std::max(2 * m - 2, 2 * p - 2));
            for (int j = 0; j < p; ++j) {
                double c = cs.eta(2 * p - 2 - 2 * j);
                auto v = series_alt([&](long long n) { return TT(2 * m - 2, n) * TT(2 * j, n); },
                                    [](long long n) { return 2.0 * n - 1.0; }, nmax);
                tot += 4.0 * c * v.value;
                est += 4.0 * std::fabs(c) * v.error_estimate;
            }
            tot *= (m % 2 == 1) ? 1.0 : -1.0;
            break;
        }
    }
    if (est > tol)
        throw convergence_error("W_series closure estimate above tolerance", tot, est, nmax);
    return {tot, est, nmax, Method::accelerated};
}

ZValue Z_comb(int j, int p) {
    if (j < 1 || p < j) throw usage_error("Z: need 1 <= j <= p");
    ZValue z{j, p, PiMonomial{Rational(0), 2 * (p - j)}};
    if (j == p) {
        z.exact = PiMonomial{Rational(1), 0};
        return z;
    }
    std::function<void(int, const Rational&, int)> chains = [&](int cur, const Rational& prod,
                                                                int k) {
        if (cur == p) {
            Rational sign = (k % 2 == 0) ? Rational(1) : Rational(-1);
            z.exact += PiMonomial{sign * Rational::pow2(k) * prod, 2 * (p - j)};
            return;
        }
        for (int nxt = cur + 1; nxt <= p; ++nxt)
            chains(nxt, prod * eta_even_exact(2 * (nxt - cur)).coeff, k + 1);
    };
    chains(j, Rational(1), 0);
    return z;
}

ZValue Z_closed(int j, int p) {
    if (j < 1 || p < j) throw usage_error("Z: need 1 <= j <= p");
    const int d = p - j;
    BigInt fact = 1;
    for (int i = 2; i <= 2 * d + 1; ++i) fact *= i;
    Rational coeff(BigInt((d % 2 == 0) ? 1 : -1), fact);
    return {j, p, PiMonomial{coeff, 2 * d}};
}

PiMonomial tbar_ones_exact(int r) {
    if (r < 0) throw usage_error("tbar_ones_exact: need r >= 0");
    BigInt den = 1;
    for (int i = 2; i <= r; ++i) den *= i;
    den <<= r;
    return PiMonomial{Rational(BigInt((r % 2 == 0) ? 1 : -1), den), r};
}

ValueWithError w_odd2_closed(int k, double tol) {
    if (k < 1) throw usage_error("w_odd2_closed: need k >= 1");
    const auto& cs = ConstantsTable::instance();
    double tot = 0.0, mag = 0.0;
    for (int j = 1; j <= k; ++j) {
        double term = cs.t_frak(2 * j + 1) * cs.eta(2 * k - 2 * j);
        tot += term;
        mag += std::fabs(term);
    }
    double scale = ipow(2.0, 2 * k - 1);
    tot /= scale;
    double est = 1e-13 * (mag / scale) + 1e-16;
    if (est > tol) throw convergence_error("w_odd2_closed estimate above tolerance", tot, est, 0);
    return {tot, est, 0, Method::closed_form};
}

ValueWithError linear_hsum(int p, int q, double tol) {
    if (p < 1 || q < 1) throw usage_error("linear_hsum: need p >= 1 and q >= 1");
    const long long nmax = 8192;
    std::vector<double> partials(nmax);
    double h = 0.0, acc = 0.0;
    for (long long n = 1; n <= nmax; ++n) {
        h += ipow(1.0 / (n - 0.5), p);
        double sign = (n % 2 == 1) ? 1.0 : -1.0;
        acc += sign * h / ipow(static_cast<double>(n), q);
        partials[n - 1] = acc;
    }
    ValueWithError v = accelerate_alternating(partials);
    if (v.error_estimate > tol)
        throw convergence_error("linear_hsum closure estimate above tolerance", v.value,
                                v.error_estimate, nmax);
    return v;
}

ValueWithError hsum_closed_rhs(int p, int q) {
    if (p < 1 || q < 1) throw usage_error("hsum_closed_rhs: need p >= 1 and q >= 1");
    if ((p + q) % 2 == 0)
        throw usage_error("hsum_closed_rhs: defined only for odd p + q");
    const auto& cs = ConstantsTable::instance();
    const double sp = (p % 2 == 0) ? 1.0 : -1.0;
    const double sq = (q % 2 == 0) ? 1.0 : -1.0;
    double tot = 0.0, mag = 0.0;
    auto add = [&](double x) {
        tot += x;
        mag += std::fabs(x);
    };
    add(-sp * (1.0 + sq) * cs.t_frak(p) * cs.eta(q));
    add(sp * Rational::binomial(p + q - 1, p - 1).to_double() * cs.t_frak(p + q));
    for (int k = 0; k < p; ++k) {
        double sk = (k % 2 == 0) ? 1.0 : -1.0;
        add(-sp * (sk + 1.0) * Rational::binomial(p + q - k - 2, q - 1).to_double() *
            cs.tbar(k + 1) * cs.tbar(p + q - k - 1));
    }
    for (int j = 1; j <= q / 2; ++j)
        add(2.0 * sp * Rational::binomial(p + q - 2 * j - 1, p - 1).to_double() * cs.eta(2 * j) *
            cs.t_frak(p + q - 2 * j));
    return {tot, 1e-13 * mag + 1e-16, 0, Method::closed_form};
}

}  // namespace mtvlab
