#include "mtvlab/series.hpp"

#include "mtvlab/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
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

}  // namespace

HarmonicTables build_tables(int N, int Jmax, int Pmax) {
    if (N < 1) throw usage_error("build_tables: N must be >= 1");
    HarmonicTables t;
    t.N = N;
    t.Jmax = Jmax;
    t.Pmax = Pmax;

    // Layered recurrences over the constraint chains. B feeds the T table,
    // C the S table; the odd/even slot alternation decides both the
    // denominator parity and whether the previous layer enters at a-1 (a
    // strict step) or at a (a non-strict step).
    std::vector<std::vector<double>> B(Jmax + 1, std::vector<double>(N + 1, 0.0));
    std::vector<std::vector<double>> C(Jmax + 1, std::vector<double>(N + 1, 0.0));
    std::fill(B[0].begin(), B[0].end(), 1.0);
    std::fill(C[0].begin(), C[0].end(), 1.0);
    for (int j = 1; j <= Jmax; ++j) {
        double acc;
        if (j % 2 == 1) {
            acc = 0.0;  // odd slot of T: denominator 2a-1, strict step before it
            for (int a = 1; a <= N; ++a) {
                acc += 2.0 / (2.0 * a - 1.0) * B[j - 1][a - 1];
                B[j][a] = acc;
            }
            acc = 0.0;  // odd slot of S: denominator 2a, non-strict step
            for (int a = 1; a <= N; ++a) {
                acc += 2.0 / (2.0 * a) * C[j - 1][a];
                C[j][a] = acc;
            }
        } else {
            acc = 0.0;  // even slot of T: denominator 2a, non-strict step
            for (int a = 1; a <= N; ++a) {
                acc += 2.0 / (2.0 * a) * B[j - 1][a];
                B[j][a] = acc;
            }
            acc = 0.0;  // even slot of S: denominator 2a-1, strict step
            for (int a = 1; a <= N; ++a) {
                acc += 2.0 / (2.0 * a - 1.0) * C[j - 1][a - 1];
                C[j][a] = acc;
            }
        }
    }
    t.T_ones.assign(Jmax + 1, std::vector<double>(N + 1, 0.0));
    t.S_ones.assign(Jmax + 1, std::vector<double>(N + 1, 0.0));
    std::fill(t.T_ones[0].begin(), t.T_ones[0].end(), 1.0);
    std::fill(t.S_ones[0].begin(), t.S_ones[0].end(), 1.0);
    for (int j = 1; j <= Jmax; ++j) {
        for (int n = 0; n <= N; ++n) {
            if (j % 2 == 1) {
                t.T_ones[j][n] = B[j][n];
                t.S_ones[j][n] = n >= 1 ? C[j][n - 1] : 0.0;
            } else {
                t.T_ones[j][n] = n >= 1 ? B[j][n - 1] : 0.0;
                t.S_ones[j][n] = C[j][n];
            }
        }
    }

    t.h.assign(Pmax + 1, std::vector<double>(N + 1, 0.0));
    t.hbar.assign(Pmax + 1, std::vector<double>(N + 1, 0.0));
    for (int p = 1; p <= Pmax; ++p) {
        double acc = 0.0, accbar = 0.0;
        for (int n = 1; n <= N; ++n) {
            double term = ipow(1.0 / (n - 0.5), p);
            acc += term;
            accbar += (n % 2 == 1) ? term : -term;
            t.h[p][n] = acc;
            t.hbar[p][n] = accbar;
        }
    }
    return t;
}

const HarmonicTables& shared_tables() {
    static const HarmonicTables tables = build_tables(16384, 7, 6);
    return tables;
}

namespace {

// Literal loops over the interleaved constraint chains: slot i uses
// denominator 2a-1 (T) or 2a (S) when i is odd, the other when even; the step
// into slot i+1 is non-strict after an odd T slot / even S slot and strict
// otherwise; the final bound tightens to < when the last slot's step parity
// says so.
double brute_T_rec(int n, int j, int i, int lo, double prod) {
    int hi = (j % 2 == 1) ? n : n - 1;
    double total = 0.0;
    for (int a = lo; a <= hi; ++a) {
        double d = (i % 2 == 1) ? (2.0 * a - 1.0) : (2.0 * a);
        double p2 = prod * 2.0 / d;
        if (i == j)
            total += p2;
        else
            total += brute_T_rec(n, j, i + 1, (i % 2 == 1) ? a : a + 1, p2);
    }
    return total;
}

double brute_S_rec(int n, int j, int i, int lo, double prod) {
    int hi = (j % 2 == 1) ? n - 1 : n;
    double total = 0.0;
    for (int a = lo; a <= hi; ++a) {
        double d = (i % 2 == 1) ? (2.0 * a) : (2.0 * a - 1.0);
        double p2 = prod * 2.0 / d;
        if (i == j)
            total += p2;
        else
            total += brute_S_rec(n, j, i + 1, (i % 2 == 1) ? a + 1 : a, p2);
    }
    return total;
}

}  // namespace

double brute_T(int n, int j) {
    if (j == 0) return 1.0;
    if (n < 1) return 0.0;
    return brute_T_rec(n, j, 1, 1, 1.0);
}

double brute_S(int n, int j) {
    if (j == 0) return 1.0;
    if (n < 1) return 0.0;
    return brute_S_rec(n, j, 1, 1, 1.0);
}

ValueWithError accelerate_alternating(std::span<const double> partials, int tail_window) {
    if (tail_window < 1) throw usage_error("accelerate_alternating: window must be >= 1");
    if (partials.size() < static_cast<std::size_t>(tail_window) + 2)
        throw usage_error("accelerate_alternating: need at least tail_window + 2 partials");
    std::vector<double> v(partials.end() - (tail_window + 1), partials.end());
    double prev_depth = v[0];
    while (v.size() > 1) {
        if (v.size() == 2) prev_depth = v[0];
        for (std::size_t i = 0; i + 1 < v.size(); ++i) v[i] = 0.5 * (v[i] + v[i + 1]);
        v.pop_back();
    }
    double value = v[0];
    double est = std::fabs(value - prev_depth) + 1e-15 * std::fabs(value);
    return {value, est, static_cast<long long>(partials.size()), Method::accelerated};
}

long long default_term_cap() {
    static const long long cap = [] {
        if (const char* s = std::getenv("MTVLAB_MAX_TERMS")) {
            char* end = nullptr;
            long long v = std::strtoll(s, &end, 10);
            if (end && *end == '\0' && v > 0) return v;
        }
        return 2'000'000LL;
    }();
    return cap;
}

std::vector<double> mtv_partial_sums(const SignedIndex& idx, long long N) {
    const int r = idx.depth();
    std::vector<double> prev(N + 1, 1.0);
    if (r == 0) return prev;
    std::vector<double> cur(N + 1, 0.0);
    for (int j = 1; j <= r; ++j) {
        const int k = idx.entries[j - 1].exponent;
        const bool barred = idx.entries[j - 1].barred;
        long double acc = 0.0L;  // extended accumulation keeps layer rounding below the tails we bound
        cur[0] = 0.0;
        for (long long n = 1; n <= N; ++n) {
            double d = 2.0 * n - j;
            if (d >= 1.0) {
                double w = ipow(1.0 / d, k);
                if (barred && (n % 2 == 1)) w = -w;
                acc += static_cast<long double>(prev[n - 1]) * w;
            }
            cur[n] = static_cast<double>(acc);
        }
        std::swap(prev, cur);
    }
    double scale = ipow(2.0, r);
    for (auto& x : prev) x *= scale;
    return prev;
}

double mtv_partial(const SignedIndex& idx, long long N) {
    return mtv_partial_sums(idx, N).back();
}

namespace {

// One averaging sweep per pass over a copy of the given window; returns the
// single deepest element.
double iter_avg(const double* s, int len, int passes) {
    std::vector<double> v(s, s + len);
    for (int pass = 0; pass < passes && v.size() > 1; ++pass) {
        for (std::size_t i = 0; i + 1 < v.size(); ++i) v[i] = 0.5 * (v[i] + v[i + 1]);
        v.pop_back();
    }
    return v.back();
}

struct Closure {
    double value;
    double est;
};

Closure plain_close(const std::vector<double>& s, int window = 32) {
    const int n = static_cast<int>(s.size());
    const double* tail = s.data() + (n - (window + 1));
    double deep = iter_avg(tail, window + 1, window);
    double prev = iter_avg(tail, window, window - 1);
    return {deep, std::fabs(deep - prev) + 1e-15 * std::fabs(deep)};
}

// Interior bars leave a smooth log^j(n)/n^q tail on top of the oscillation.
// De-oscillate with V averaging passes at geometric checkpoints, then fit
//   v(n) = S + sum_{q=1..Q} sum_{j=J..0} c_{jq} log^j(nn)/nn^q,  nn = n - V/2,
// by column-normalized least squares (SVD); S is the limit. The estimate is
// the shift when the deepest 1/n^Q block is dropped from the basis.
Closure ls_close(const std::vector<double>& s, int J, int Q = 4, int V = 24,
                 int max_nodes = 24, int nmin = 400) {
    const long long N = static_cast<long long>(s.size()) - 1;
    const double ratio = std::pow(2.0, 1.0 / 3.0);
    std::set<long long> picked;
    double n = static_cast<double>(N);
    const long long lo = std::max<long long>(nmin, V + 8);
    while (static_cast<int>(picked.size()) < max_nodes && n >= lo) {
        picked.insert(static_cast<long long>(n));
        n /= ratio;
    }
    std::vector<long long> ns(picked.begin(), picked.end());
    const int rows = static_cast<int>(ns.size());
    const int cols = 1 + Q * (J + 1);
    Eigen::MatrixXd A(rows, cols);
    Eigen::VectorXd b(rows);
    for (int i = 0; i < rows; ++i) {
        const long long m = ns[i];
        b(i) = iter_avg(s.data() + (m - V), V + 1, V);
        double nn = static_cast<double>(m) - V / 2.0;
        double logn = std::log(nn);
        A(i, 0) = 1.0;
        int c = 1;
        for (int q = 1; q <= Q; ++q) {
            double invq = ipow(1.0 / nn, q);
            for (int j = J; j >= 0; --j) A(i, c++) = ipow(logn, j) * invq;
        }
    }
    Eigen::VectorXd scale(cols);
    for (int c = 0; c < cols; ++c) {
        scale(c) = A.col(c).norm();
        if (scale(c) == 0.0) scale(c) = 1.0;
        A.col(c) /= scale(c);
    }
    auto solve0 = [&](const Eigen::MatrixXd& M) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
        svd.setThreshold(std::numeric_limits<double>::epsilon() *
                         std::max(M.rows(), M.cols()));
        Eigen::VectorXd x = svd.solve(b);
        return x(0);
    };
    double S = solve0(A) / scale(0);
    const int cols2 = 1 + (Q - 1) * (J + 1);
    double S2 = solve0(A.leftCols(cols2)) / scale(0);
    return {S, std::fabs(S - S2) + 1e-15 * std::fabs(S)};
}

}  // namespace

ValueWithError eval_signed_mtv(const SignedIndex& idx, double tol, long long max_terms) {
    const int r = idx.depth();
    if (r == 0) return {1.0, 0.0, 0, Method::closed_form};
    IndexInfo info = classify(idx);
    if (info.convergence == ConvergenceClass::divergent)
        throw usage_error("divergent index: " + format_index(idx));
    const long long cap = max_terms > 0 ? max_terms : default_term_cap();
    const int k_r = idx.entries.back().exponent;
    const bool barred_r = idx.entries.back().barred;
    int interior_bars = 0, interior_ones = 0;
    for (int j = 0; j + 1 < r; ++j) {
        if (idx.entries[j].barred) ++interior_bars;
        if (idx.entries[j].exponent == 1 && !idx.entries[j].barred) ++interior_ones;
    }

    double last = 0.0;
    bool have_last = false;
    if (!barred_r) {
        // positive outer layer, k_r >= 2: analytic tail bound, doubling check
        for (long long N = std::min<long long>(4096, std::max<long long>(cap, 64));;) {
            std::vector<double> s = mtv_partial_sums(idx, N);
            double term = std::fabs(s[N] - s[N - 1]);
            double est = 4.0 * term * static_cast<double>(N) / (k_r - 1);
            if (have_last) est = std::max(est, std::fabs(s[N] - last));
            if (est <= tol) return {s[N], est, N, Method::direct_tail};
            if (2 * N > cap)
                throw convergence_error("term cap before tolerance for " + format_index(idx),
                                        s[N], est, N);
            last = s[N];
            have_last = true;
            N *= 2;
        }
    }
    if (interior_bars == 0) {
        for (long long N = std::min<long long>(4096, std::max<long long>(cap, 64));;) {
            std::vector<double> s = mtv_partial_sums(idx, N);
            Closure c = plain_close(s);
            if (have_last) c.est = std::max(c.est, 0.25 * std::fabs(c.value - last));
            if (c.est <= tol) return {c.value, c.est, N, Method::accelerated};
            if (2 * N > cap)
                throw convergence_error("term cap before tolerance for " + format_index(idx),
                                        c.value, c.est, N);
            last = c.value;
            have_last = true;
            N *= 2;
        }
    }
    for (long long N = std::min<long long>(1 << 17, std::max<long long>(cap, 2048));;) {
        std::vector<double> s = mtv_partial_sums(idx, N);
        Closure c = ls_close(s, std::min(interior_ones, 4));
        if (have_last) c.est = std::max(c.est, 0.25 * std::fabs(c.value - last));
        if (c.est <= tol) return {c.value, c.est, N, Method::accelerated};
        if (2 * N > cap)
            throw convergence_error("term cap before tolerance for " + format_index(idx),
                                    c.value, c.est, N);
        last = c.value;
        have_last = true;
        N *= 2;
    }
}

ValueWithError eval_a(const std::vector<int>& ks, double z, double tol, long long max_terms) {
    const int r = static_cast<int>(ks.size());
    if (r == 0) return {1.0, 0.0, 0, Method::closed_form};
    for (int k : ks)
        if (k < 1) throw usage_error("eval_a: exponents must be >= 1");
    if (z == 1.0) {
        if (ks.back() < 2) throw usage_error("eval_a: z = 1 needs last exponent >= 2");
        return eval_signed_mtv(SignedIndex::plain(ks), tol, max_terms);
    }
    if (std::fabs(z) >= 1.0) throw usage_error("eval_a: need |z| < 1 (or admissible z = 1)");
    const long long cap = max_terms > 0 ? max_terms : default_term_cap();
    const double zq = z * z;
    double last = 0.0;
    bool have_last = false;
    for (long long N = std::min<long long>(256, std::max<long long>(cap, 64));;) {
        std::vector<double> prev(N + 1, 1.0), cur(N + 1, 0.0);
        for (int j = 1; j <= r; ++j) {
            double acc = 0.0;
            cur[0] = 0.0;
            bool outer = (j == r);
            double zp = 0.0;
            bool zp_started = false;
            for (long long n = 1; n <= N; ++n) {
                double d = 2.0 * n - j;
                if (d >= 1.0) {
                    double w = ipow(1.0 / d, ks[j - 1]);
                    if (outer) {
                        if (!zp_started) {
                            zp = ipow(z, static_cast<int>(d));
                            zp_started = true;
                        } else {
                            zp *= zq;
                        }
                        w *= zp;
                    }
                    acc += prev[n - 1] * w;
                }
                cur[n] = acc;
            }
            std::swap(prev, cur);
        }
        double scale = ipow(2.0, r);
        double value = scale * prev[N];
        double term = scale * std::fabs(prev[N] - prev[N - 1]);
        double est = 4.0 * term * zq / (1.0 - zq);
        if (have_last) est = std::max(est, std::fabs(value - last));
        if (est <= tol) return {value, est, N, Method::direct_tail};
        if (2 * N > cap)
            throw convergence_error("term cap before tolerance in eval_a", value, est, N);
        last = value;
        have_last = true;
        N *= 2;
    }
}

}  // namespace mtvlab
