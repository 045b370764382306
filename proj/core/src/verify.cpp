#include "mtvlab/verify.hpp"

#include "mtvlab/constants.hpp"
#include "mtvlab/errors.hpp"
#include "mtvlab/index.hpp"
#include "mtvlab/quadrature.hpp"
#include "mtvlab/rational.hpp"
#include "mtvlab/series.hpp"
#include "mtvlab/tvalues.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <random>
#include <thread>
#include <vector>

namespace mtvlab {

namespace {

using Params = std::vector<std::pair<std::string, double>>;

double ipow(double base, int e) {
    double r = 1.0, b = base;
    for (int n = e; n > 0; n >>= 1) {
        if (n & 1) r *= b;
        b *= b;
    }
    return r;
}

CaseOutcome num(double lhs, double rhs, std::string notes = {}) {
    CaseOutcome o;
    o.lhs = lhs;
    o.rhs = rhs;
    o.notes = std::move(notes);
    return o;
}

// T({1}_{k-2}, 1~, {1}_{j-1}, 1~); the leading block is empty for k = 1.
SignedIndex mixed_bar_index(int k, int j) {
    SignedIndex idx;
    if (k >= 2) {
        for (int i = 0; i < k - 2; ++i) idx.entries.push_back({1, false});
        idx.entries.push_back({1, true});
    }
    for (int i = 0; i < j - 1; ++i) idx.entries.push_back({1, false});
    idx.entries.push_back({1, true});
    return idx;
}

// sum_{n>=1} (-1)^n coeff(n)/denom(n) over the shared tables, closed by the
// averaging triangle.
ValueWithError table_series(const std::function<double(long long)>& coeff,
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

std::vector<IdentityCase> registry(const RunConfig& cfg) {
    std::vector<IdentityCase> cases;
    const double ts = cfg.tol_default;  // series-family case tolerance
    const long long cap = cfg.max_terms;
    auto ev = [cap](const SignedIndex& idx, double tol) {
        return eval_signed_mtv(idx, tol, cap);
    };
    auto add = [&cases](std::string id, Params params, double tol, CaseKind kind,
                        std::function<CaseOutcome()> fn) {
        std::sort(params.begin(), params.end());
        cases.push_back({std::move(id), std::move(params), tol, kind, std::move(fn)});
    };

    // THM1 / THM2: the (m,p) <-> (p,m) transfer through the Z ladder.
    for (int variant = 0; variant < 2; ++variant) {
        const char* id = variant == 0 ? "THM1" : "THM2";
        for (int m = 1; m <= 3; ++m)
            for (int p = 1; p <= 3; ++p)
                add(id, {{"m", double(m)}, {"p", double(p)}}, ts, CaseKind::numeric,
                    [variant, m, p] {
                        auto Wv = [variant](int j, int mm) {
                            return variant == 0 ? W(1, 2 * j + 2 * mm - 1, 2 * mm, 1e-9)
                                                : W(1, 2 * j + 2 * mm - 3, 2 * mm - 1, 1e-9);
                        };
                        double lhs = 0.0, rhs = 0.0;
                        for (int j = 1; j <= p; ++j)
                            lhs += Wv(j, m).value * Z_closed(j, p).exact.to_double();
                        for (int j = 1; j <= m; ++j)
                            rhs += Wv(j, p).value * Z_closed(j, m).exact.to_double();
                        lhs *= (m % 2 == 0) ? 1.0 : -1.0;
                        rhs *= (p % 2 == 0) ? 1.0 : -1.0;
                        return num(lhs, rhs, "W by composition series; Z closed form");
                    });
    }

    // THM3: symmetric W sum against the mixed-bar product expansion
    // (variant 0), and the same with the reshaped last-barred factors
    // (variant 1).
    for (int variant = 0; variant < 2; ++variant)
        for (int k = 1; k <= 3; ++k)
            for (int m = 1; m <= 3; ++m)
                for (int r = 2; r <= 4; ++r)
                    add("THM3",
                        {{"k", double(k)},
                         {"m", double(m)},
                         {"r", double(r)},
                         {"variant", double(variant)}},
                        ts, CaseKind::numeric, [ev, variant, k, m, r] {
                            double lhs = W(m, k + r - 1, r, 1e-9).value +
                                         ((r % 2 == 0) ? 1.0 : -1.0) *
                                             W(k, m + r - 1, r, 1e-9).value;
                            double rhs = 0.0;
                            for (int j = 1; j < r; ++j) {
                                double f1, f2;
                                if (variant == 0) {
                                    f1 = ev(mixed_bar_index(k, j), 1e-9).value;
                                    f2 = ev(mixed_bar_index(m, r - j), 1e-9).value;
                                } else {
                                    f1 = ev(SignedIndex::ones_then(j - 1, k), 1e-10).value;
                                    f2 = ev(SignedIndex::ones_then(r - j - 1, m), 1e-10).value;
                                }
                                rhs += ((j % 2 == 1) ? 1.0 : -1.0) * f1 * f2;
                            }
                            return num(lhs, rhs,
                                       variant == 0 ? "mixed-bar factors"
                                                    : "reshaped last-barred factors");
                        });

    // THM23: definitional W against its four single-series parity forms.
    {
        const WSeriesForm forms[4] = {
            WSeriesForm::even_depth_odd_weight, WSeriesForm::even_depth_even_weight,
            WSeriesForm::odd_depth_even_weight, WSeriesForm::odd_depth_odd_weight};
        const char* names[4] = {"even depth, odd weight", "even depth, even weight",
                                "odd depth, even weight", "odd depth, odd weight"};
        for (int f = 0; f < 4; ++f)
            for (int m = 1; m <= 2; ++m)
                for (int p = 1; p <= 2; ++p)
                    add("THM23",
                        {{"form", double(f)}, {"m", double(m)}, {"p", double(p)}}, ts,
                        CaseKind::numeric, [f, m, p, forms, names, ts] {
                            int wgt, dep;
                            switch (f) {
                                case 0: wgt = 2 * p + 2 * m - 1; dep = 2 * m; break;
                                case 1: wgt = 2 * p + 2 * m - 2; dep = 2 * m; break;
                                case 2: wgt = 2 * p + 2 * m - 2; dep = 2 * m - 1; break;
                                default: wgt = 2 * p + 2 * m - 3; dep = 2 * m - 1; break;
                            }
                            double lhs = W_series(p, m, forms[f], ts).value;
                            double rhs = W(1, wgt, dep, 1e-9).value;
                            return num(lhs, rhs, names[f]);
                        });
    }

    // THMB3: last-barred all-ones expansion of Tbar({1}_{r-1}, k).
    for (int k = 2; k <= 3; ++k)
        for (int r = 1; r <= 3; ++r)
            add("THMB3", {{"k", double(k)}, {"r", double(r)}}, ts, CaseKind::numeric,
                [ev, k, r] {
                    double lhs = ev(SignedIndex::ones_then(r - 1, k), 1e-10).value;
                    double rhs = 0.0;
                    for (int j = 1; j <= r; ++j)
                        rhs += ((j % 2 == 1) ? 1.0 : -1.0) *
                               tbar_ones_exact(r - j).to_double() *
                               W(1, k + j - 1, j, 1e-9).value;
                    return num(lhs, rhs);
                });

    // C3 / C4: bilinear T-sums transferred through the Z ladder, plus the two
    // displayed closed-value sums.
    for (int m = 1; m <= 2; ++m)
        for (int p = 1; p <= 2; ++p) {
            add("C3", {{"m", double(m)}, {"p", double(p)}}, ts, CaseKind::numeric, [m, p] {
                const auto& t = shared_tables();
                auto lhsv = table_series(
                    [&](long long n) {
                        return t.T_ones[2 * m - 1][n] * t.T_ones[2 * p - 1][n];
                    },
                    [](long long n) { return double(n); });
                double rhs = 0.0;
                for (int j = 1; j <= p; ++j)
                    rhs += W(1, 2 * j + 2 * m - 1, 2 * m, 1e-9).value *
                           Z_closed(j, p).exact.to_double();
                rhs *= (m % 2 == 0) ? 1.0 : -1.0;
                return num(lhsv.value, rhs);
            });
            add("C4", {{"m", double(m)}, {"p", double(p)}}, ts, CaseKind::numeric, [m, p] {
                const auto& t = shared_tables();
                auto lhsv = table_series(
                    [&](long long n) {
                        return t.T_ones[2 * m - 2][n] * t.T_ones[2 * p - 2][n];
                    },
                    [](long long n) { return 2.0 * n - 1.0; });
                double rhs = 0.0;
                for (int j = 1; j <= p; ++j)
                    rhs += W(1, 2 * j + 2 * m - 3, 2 * m - 1, 1e-9).value *
                           Z_closed(j, p).exact.to_double();
                rhs *= (m % 2 == 1) ? 1.0 : -1.0;
                return num(2.0 * lhsv.value, rhs);
            });
        }
    add("C3", {{"display", 1.0}}, ts, CaseKind::numeric, [] {
        const auto& t = shared_tables();
        const auto& cs = ConstantsTable::instance();
        auto v = table_series(
            [&](long long n) { return t.T_ones[1][n] * t.T_ones[3][n]; },
            [](long long n) { return double(n); });
        double rhs = 21.0 / 16 * cs.zeta(2) * cs.zeta(3) - 31.0 / 16 * cs.zeta(5);
        return num(v.value, rhs, "displayed value");
    });
    add("C4", {{"display", 1.0}}, ts, CaseKind::numeric, [ev] {
        const auto& t = shared_tables();
        const auto& cs = ConstantsTable::instance();
        auto v = table_series(
            [&](long long n) { return t.T_ones[2][n] * t.T_ones[2][n]; },
            [](long long n) { return 2.0 * n - 1.0; });
        double rhs = -W(1, 5, 3, 1e-9).value +
                     2.0 * cs.eta(2) * ev(SignedIndex::bar_last({1, 1, 1}), 1e-10).value;
        return num(2.0 * v.value, rhs, "displayed identity");
    });

    // C5 / C6: collapse of the even-depth ladder to depth 2 / depth 1.
    for (int p = 1; p <= 2; ++p) {
        add("C5", {{"p", double(p)}}, ts, CaseKind::numeric, [p] {
            double lhs = W(1, 2 * p + 1, 2 * p, 1e-9).value;
            double rhs = 0.0;
            for (int j = 1; j <= p; ++j)
                rhs += W(1, 2 * j + 1, 2, 1e-9).value * Z_closed(j, p).exact.to_double();
            rhs *= (p % 2 == 1) ? 1.0 : -1.0;
            return num(lhs, rhs);
        });
        add("C6", {{"p", double(p)}}, ts, CaseKind::numeric, [ev, p] {
            double lhs = ev(SignedIndex::ones_then(2 * p - 2, 1), 1e-10).value;
            double rhs = 0.0;
            for (int j = 1; j <= p; ++j)
                rhs += ev(SignedIndex::bar_last({2 * j - 1}), 1e-10).value *
                       Z_closed(j, p).exact.to_double();
            rhs *= (p % 2 == 1) ? 1.0 : -1.0;
            return num(lhs, rhs);
        });
    }

    // C7: W(2k+1,2) against its eta/t-frak closed form.
    for (int k = 1; k <= 3; ++k)
        add("C7", {{"k", double(k)}}, ts, CaseKind::numeric, [k, ts] {
            return num(W(1, 2 * k + 1, 2, 1e-9).value, w_odd2_closed(k, ts).value);
        });

    // C8: alternating odd-harmonic linear sums, series vs closed form.
    for (auto [p, q] : {std::pair{1, 2}, std::pair{2, 3}, std::pair{1, 4}})
        add("C8", {{"p", double(p)}, {"q", double(q)}}, ts, CaseKind::numeric, [p, q, ts] {
            double sgn = ((p + q) % 2 == 0) ? 1.0 : -1.0;
            double lhs = (1.0 - sgn) * linear_hsum(p, q, ts).value;
            return num(lhs, hsum_closed_rhs(p, q).value);
        });

    // D456: the duality cluster. "eq" picks the sub-identity.
    for (int p = 0; p <= 3; ++p)
        for (int r = 1; r <= 4; ++r)
            add("D456", {{"eq", 6.0}, {"p", double(p)}, {"r", double(r)}}, 1e-8,
                CaseKind::numeric, [ev, p, r] {
                    SignedIndex lhs_idx;
                    if (p >= 1) {
                        for (int i = 0; i < p - 1; ++i) lhs_idx.entries.push_back({1, false});
                        lhs_idx.entries.push_back({1, true});
                    }
                    for (int i = 0; i < r - 1; ++i) lhs_idx.entries.push_back({1, false});
                    lhs_idx.entries.push_back({1, true});
                    double lhs = ev(lhs_idx, 1e-9).value;
                    double rhs = ev(SignedIndex::ones_then(r - 1, p + 1), 1e-10).value;
                    return num(lhs, rhs, "bar-separated vs last-barred");
                });
    for (int p = 1; p <= 4; ++p)
        add("D456", {{"eq", 7.0}, {"p", double(p)}}, p == 1 ? 1e-9 : 1e-8,
            CaseKind::numeric, [ev, p] {
                SignedIndex idx;
                for (int i = 0; i < p - 1; ++i) idx.entries.push_back({1, false});
                idx.entries.push_back({1, true});
                idx.entries.push_back({1, true});
                double lhs = ev(idx, 1e-9).value;
                const auto& cs = ConstantsTable::instance();
                double rhs = -cs.tbar(p + 1) / ipow(2.0, p);
                return num(lhs, rhs, "adjacent double bar");
            });
    for (int k = 2; k <= 4; ++k) {
        add("D456", {{"eq", 8.0}, {"k", double(k)}}, 1e-8, CaseKind::numeric, [ev, k] {
            const auto& cs = ConstantsTable::instance();
            double lhs = W(1, k + 1, 2, 1e-9).value;
            double rhs = cs.pi() * cs.tbar(k) / ipow(2.0, k) -
                         ev(SignedIndex::bar_last({1, k}), 1e-10).value;
            return num(lhs, rhs);
        });
        add("D456", {{"eq", 5.0}, {"k", double(k)}}, 1e-8, CaseKind::numeric, [ev, k] {
            const auto& cs = ConstantsTable::instance();
            double lhs = W(1, k + 1, 2, 1e-9).value +
                         ev(SignedIndex::bar_last({1, k}), 1e-10).value;
            SignedIndex dbl;
            for (int i = 0; i < k - 2; ++i) dbl.entries.push_back({1, false});
            dbl.entries.push_back({1, true});
            dbl.entries.push_back({1, true});
            double rhs = ev(dbl, 1e-9).value * (-cs.pi() / 2.0);
            return num(lhs, rhs);
        });
    }
    for (int k = 2; k <= 3; ++k)
        for (int r = 2; r <= 4; ++r) {
            add("D456", {{"eq", 4.0}, {"k", double(k)}, {"r", double(r)}}, 1e-8,
                CaseKind::numeric, [ev, k, r] {
                    double lhs = W(1, k + r - 1, r, 1e-9).value +
                                 ((r % 2 == 0) ? 1.0 : -1.0) *
                                     ev(SignedIndex::ones_then(r - 1, k), 1e-10).value;
                    double rhs = 0.0;
                    for (int j = 1; j < r; ++j)
                        rhs += ((j % 2 == 1) ? 1.0 : -1.0) *
                               ev(mixed_bar_index(k, j), 1e-9).value *
                               tbar_ones_exact(r - j).to_double();
                    return num(lhs, rhs, "mixed-bar factors");
                });
            add("D456", {{"eq", 10.0}, {"k", double(k)}, {"r", double(r)}}, 1e-8,
                CaseKind::numeric, [ev, k, r] {
                    double lhs = W(1, k + r - 1, r, 1e-9).value +
                                 ((r % 2 == 0) ? 1.0 : -1.0) *
                                     ev(SignedIndex::ones_then(r - 1, k), 1e-10).value;
                    double rhs = 0.0;
                    for (int j = 1; j < r; ++j)
                        rhs += ((j % 2 == 1) ? 1.0 : -1.0) *
                               ev(SignedIndex::ones_then(j - 1, k), 1e-10).value *
                               tbar_ones_exact(r - j).to_double();
                    return num(lhs, rhs, "reshaped last-barred factors");
                });
        }

    // D11: composition symmetry of the level-2 polylog at real z.
    for (double z : {0.3, 0.6})
        for (int k = 1; k <= 2; ++k)
            for (int m = 1; m <= 2; ++m)
                for (int r = 2; r <= 3; ++r)
                    add("D11",
                        {{"k", double(k)}, {"m", double(m)}, {"r", double(r)}, {"z", z}},
                        1e-8, CaseKind::numeric, [cap, k, m, r, z] {
                            auto A = [cap, z](std::vector<int> ks) {
                                return eval_a(ks, z, 1e-12, cap).value;
                            };
                            double lhs = 0.0;
                            for (const auto& c : compositions(k + r - 1, r)) {
                                double coeff =
                                    Rational::binomial(c.back() + m - 2, m - 1).to_double();
                                std::vector<int> ks(c.begin(), c.end() - 1);
                                ks.push_back(c.back() + m - 1);
                                lhs += coeff * A(ks);
                            }
                            for (const auto& c : compositions(m + r - 1, r)) {
                                double coeff =
                                    Rational::binomial(c.back() + k - 2, k - 1).to_double();
                                std::vector<int> ks(c.begin(), c.end() - 1);
                                ks.push_back(c.back() + k - 1);
                                lhs += ((r % 2 == 0) ? 1.0 : -1.0) * coeff * A(ks);
                            }
                            double rhs = 0.0;
                            for (int j = 1; j < r; ++j) {
                                std::vector<int> a(r - 1 - j, 1), b(j - 1, 1);
                                a.push_back(m);
                                b.push_back(k);
                                rhs += ((j % 2 == 1) ? 1.0 : -1.0) * A(a) * A(b);
                            }
                            return num(lhs, rhs);
                        });

    // ZEXACT: chain form of Z equals the closed form, as exact rationals.
    for (int p = 1; p <= 8; ++p)
        for (int j = 1; j <= p; ++j)
            add("ZEXACT", {{"j", double(j)}, {"p", double(p)}}, 0.0, CaseKind::exact,
                [j, p] {
                    ZValue a = Z_comb(j, p), b = Z_closed(j, p);
                    CaseOutcome o;
                    o.lhs = a.exact.to_double();
                    o.rhs = b.exact.to_double();
                    o.lhs_exact = a.exact.str();
                    o.rhs_exact = b.exact.str();
                    o.exact_equal = a.exact == b.exact;
                    return o;
                });

    // B15: the all-ones last-barred series against its exact pi-power value.
    for (int r = 1; r <= 5; ++r)
        add("B15", {{"r", double(r)}}, 1e-9, CaseKind::numeric, [ev, r] {
            double lhs = ev(SignedIndex::ones_then(r - 1, 1), 1e-10).value;
            return num(lhs, tbar_ones_exact(r).to_double(), "rhs exact");
        });

    // T17: odd-argument half-integer alternating sums, Euler-number closed
    // form against a directly accelerated series.
    for (int k = 1; k <= 5; ++k)
        add("T17", {{"k", double(k)}}, 1e-10, CaseKind::numeric, [k] {
            double lhs = tbar(2 * k + 1, 1e-13).value;
            const long long n = 2000;
            std::vector<double> partials(n);
            double acc = 0.0;
            for (long long i = 1; i <= n; ++i) {
                double sign = (i % 2 == 1) ? 1.0 : -1.0;
                acc += sign * ipow(1.0 / (i - 0.5), 2 * k + 1);
                partials[i - 1] = acc;
            }
            return num(lhs, accelerate_alternating(partials).value,
                       "closed form vs accelerated series");
        });

    // SPECIAL: headline evaluations. Case 2 is the relation exactly as
    // displayed; it omits a W(7,3) term and fails by that amount. Case 3 is
    // the corrected relation, which verifies.
    add("SPECIAL", {{"case", 1.0}}, ts, CaseKind::numeric, [] {
        const auto& cs = ConstantsTable::instance();
        double lhs = W(1, 5, 4, 1e-9).value + W(1, 5, 2, 1e-9).value;
        return num(lhs, 7.0 / 4 * cs.zeta(2) * cs.zeta(3));
    });
    add("SPECIAL", {{"case", 2.0}}, ts, CaseKind::numeric, [] {
        const auto& cs = ConstantsTable::instance();
        double lhs = W(1, 7, 5, 1e-9).value - cs.zeta(2) * W(1, 5, 3, 1e-9).value;
        double rhs = ipow(cs.pi(), 7) / 7680.0;
        return num(lhs, rhs,
                   "as displayed; the relation omits a W(7,3) term and the "
                   "difference equals -W(7,3) (see case 3)");
    });
    add("SPECIAL", {{"case", 3.0}}, ts, CaseKind::numeric, [] {
        const auto& cs = ConstantsTable::instance();
        double lhs = W(1, 7, 5, 1e-9).value + W(1, 7, 3, 1e-9).value;
        double rhs = ipow(cs.pi(), 7) / 7680.0 + cs.zeta(2) * W(1, 5, 3, 1e-9).value;
        return num(lhs, rhs, "corrected relation including the W(7,3) term");
    });
    add("SPECIAL", {{"case", 4.0}}, 1e-8, CaseKind::numeric, [] {
        const auto& t = shared_tables();
        const auto& cs = ConstantsTable::instance();
        auto v = table_series(
            [&](long long n) { return t.T_ones[1][n] * t.T_ones[1][n]; },
            [](long long n) { return double(n); });
        return num(-v.value, 7.0 / 4 * cs.zeta(3), "alternating square sum");
    });
    add("SPECIAL", {{"case", 5.0}}, 1e-8, CaseKind::numeric, [ev] {
        const auto& cs = ConstantsTable::instance();
        double lhs = ev(SignedIndex::bar_last({1, 2}), 1e-10).value;
        double rhs = -7.0 / 4 * cs.zeta(3) + cs.pi() / 4.0 * cs.tbar(2);
        return num(lhs, rhs);
    });
    add("SPECIAL", {{"case", 6.0}}, 1e-8, CaseKind::numeric, [ev] {
        const auto& cs = ConstantsTable::instance();
        double lhs = ev(SignedIndex::bar_last({2, 1}), 1e-10).value;
        double rhs = 7.0 / 2 * cs.zeta(3) - cs.pi() / 4.0 * cs.tbar(2);
        return num(lhs, rhs);
    });

    // LEM22: log-moment quadrature against the table-assembled right side.
    for (int n = 1; n <= 8; ++n)
        for (int m = 1; m <= 3; ++m)
            for (int c = 0; c < 4; ++c)
                add("LEM22",
                    {{"m", double(m)}, {"n", double(n)}, {"parity", double(c)}}, 1e-8,
                    CaseKind::numeric, [n, m, c] {
                        TwoSided t =
                            log_moment_check(n, m, static_cast<LogMomentCase>(c), 1e-10);
                        const char* names[4] = {"even t, even log", "even t, odd log",
                                                "odd t, even log", "odd t, odd log"};
                        return num(t.lhs.value, t.rhs.value, names[c]);
                    });

    // LEM41: simplex reversal identities and the 2-D spot value.
    add("LEM41", {{"dim", 2.0}, {"variant", 0.0}}, 1e-6, CaseKind::numeric, [] {
        NestedKernel f1{1}, f2{0};
        double lhs = nested_integral({f1, f2}, 1e-8).value +
                     nested_integral({f2, f1}, 1e-8).value;
        double rhs =
            nested_integral({f1}, 1e-8).value * nested_integral({f2}, 1e-8).value;
        return num(lhs, rhs, "reversal, kernels log^1, log^0");
    });
    add("LEM41", {{"dim", 3.0}, {"variant", 1.0}}, 1e-6, CaseKind::numeric, [] {
        NestedKernel f1{1}, f2{0}, f3{2};
        double lhs = nested_integral({f1, f2, f3}, 1e-8).value -
                     nested_integral({f3, f2, f1}, 1e-8).value;
        double rhs = nested_integral({f1}, 1e-8).value *
                         nested_integral({f2, f3}, 1e-8).value -
                     nested_integral({f2, f1}, 1e-8).value *
                         nested_integral({f3}, 1e-8).value;
        return num(lhs, rhs, "reversal, kernels log^1, log^0, log^2");
    });
    add("LEM41", {{"dim", 3.0}, {"variant", 2.0}}, 1e-6, CaseKind::numeric, [] {
        NestedKernel lg{1}, w{0};
        double lhs = nested_integral({lg, w, w}, 1e-8).value -
                     nested_integral({w, w, lg}, 1e-8).value;
        double rhs =
            nested_integral({lg}, 1e-8).value * nested_integral({w, w}, 1e-8).value -
            nested_integral({w, lg}, 1e-8).value * nested_integral({w}, 1e-8).value;
        return num(lhs, rhs, "reversal, kernels log^1, log^0, log^0");
    });
    add("LEM41", {{"dim", 2.0}, {"variant", 3.0}}, 1e-6, CaseKind::numeric, [] {
        double lhs = -4.0 * nested_integral({NestedKernel{1}, NestedKernel{0}}, 1e-8).value;
        return num(lhs, W(1, 3, 2, 1e-9).value, "2-D simplex vs depth-2 value");
    });
    add("LEM41", {{"dim", 2.0}, {"variant", 4.0}}, 1e-6, CaseKind::numeric, [] {
        const auto& cs = ConstantsTable::instance();
        double lhs = nested_integral({NestedKernel{0}, NestedKernel{0}}, 1e-8).value;
        return num(lhs, ipow(cs.pi() / 4.0, 2) / 2.0, "arctan simplex, dim 2");
    });
    add("LEM41", {{"dim", 3.0}, {"variant", 5.0}}, 1e-6, CaseKind::numeric, [] {
        const auto& cs = ConstantsTable::instance();
        double lhs =
            nested_integral({NestedKernel{0}, NestedKernel{0}, NestedKernel{0}}, 1e-8)
                .value;
        return num(lhs, ipow(cs.pi() / 4.0, 3) / 6.0, "arctan simplex, dim 3");
    });

    // REDUCED: the 1-D integral reductions against the series path.
    for (int k = 1; k <= 5; ++k)
        for (int r = 1; k + r <= 6; ++r) {
            add("REDUCED", {{"k", double(k)}, {"kind", 0.0}, {"r", double(r)}}, 1e-8,
                CaseKind::numeric, [k, r] {
                    double lhs = w_reduced_integral(k, r, 1e-10).value;
                    return num(lhs, W(1, k + r - 1, r, 1e-9).value,
                               "log-arctan moment vs composition series");
                });
            add("REDUCED", {{"k", double(k)}, {"kind", 1.0}, {"r", double(r)}}, 1e-8,
                CaseKind::numeric, [ev, k, r] {
                    double lhs = tbar_reduced_integral(k, r, 1e-10).value;
                    return num(lhs, ev(SignedIndex::ones_then(r - 1, k), 1e-10).value,
                               "complementary-arctan moment vs series");
                });
        }

    // INV: triangular inversion through signed chains, exact rationals,
    // fixed-seed property trial.
    add("INV", {{"trials", 100.0}}, 0.0, CaseKind::exact, [] {
        std::mt19937_64 rng(12345);
        auto rnd_int = [&rng](int lo, int hi) {
            return std::uniform_int_distribution<int>(lo, hi)(rng);
        };
        int failures = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const int p = rnd_int(1, 6);
            // A[j][q], 1 <= j <= q <= p, unit diagonal
            std::vector<std::vector<Rational>> A(p + 1, std::vector<Rational>(p + 1));
            std::vector<Rational> B(p + 1), C(p + 1);
            for (int q = 1; q <= p; ++q)
                for (int j = 1; j <= q; ++j)
                    A[j][q] = (j == q) ? Rational(1)
                                       : Rational(BigInt(rnd_int(-9, 9)),
                                                  BigInt(rnd_int(1, 9)));
            for (int j = 1; j <= p; ++j)
                B[j] = Rational(BigInt(rnd_int(-9, 9)), BigInt(rnd_int(1, 9)));
            for (int q = 1; q <= p; ++q) {
                C[q] = Rational(0);
                for (int j = 1; j <= q; ++j) C[q] += A[j][q] * B[j];
            }
            // chains(j,p): sum over strictly increasing chains j -> p of
            // (-1)^len prod A[steps]
            std::function<Rational(int)> chains = [&](int j) {
                if (j == p) return Rational(1);
                Rational total(0);
                std::function<void(int, int, Rational)> rec = [&](int cur, int len,
                                                                  Rational prod) {
                    if (cur == p) {
                        total += (len % 2 == 0) ? prod : Rational(-1) * prod;
                        return;
                    }
                    for (int nxt = cur + 1; nxt <= p; ++nxt)
                        rec(nxt, len + 1, prod * A[cur][nxt]);
                };
                rec(j, 0, Rational(1));
                return total;
            };
            Rational back(0);
            for (int j = 1; j <= p; ++j) back += C[j] * chains(j);
            if (!(back == B[p])) ++failures;
        }
        CaseOutcome o;
        o.lhs = 100;
        o.rhs = 100 - failures;
        o.exact_equal = failures == 0;
        o.notes = "100 random trials, p <= 6, fixed seed";
        return o;
    });

    return cases;
}

namespace {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    return out;
}

// "p/q * pi^e" -> {"coeff":"p/q","pi_exp":e}
std::string exact_json(const std::string& s) {
    const std::string sep = " * pi^";
    auto pos = s.find(sep);
    std::string coeff = pos == std::string::npos ? s : s.substr(0, pos);
    std::string exp = pos == std::string::npos ? "0" : s.substr(pos + sep.size());
    return "{\"coeff\":\"" + json_escape(coeff) + "\",\"pi_exp\":" + exp + "}";
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += "\"";
    return out;
}

std::string params_compact(const Params& params) {
    std::string out;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) out += ";";
        out += params[i].first + "=" + fmt17(params[i].second);
    }
    return out;
}

}  // namespace

std::string report_json(const Report& report) {
    std::string out = "{\n  \"summary\": {\"total\": " + std::to_string(report.summary.total) +
                      ", \"passed\": " + std::to_string(report.summary.passed) +
                      ", \"failed\": " + std::to_string(report.summary.failed) +
                      ", \"skipped\": " + std::to_string(report.summary.skipped) +
                      "},\n  \"records\": [\n";
    for (std::size_t i = 0; i < report.records.size(); ++i) {
        const CaseRecord& r = report.records[i];
        out += "    {\"id\": \"" + json_escape(r.id) + "\", \"params\": {";
        for (std::size_t j = 0; j < r.params.size(); ++j) {
            if (j) out += ", ";
            out += "\"" + json_escape(r.params[j].first) + "\": " + fmt17(r.params[j].second);
        }
        out += "}, \"kind\": \"";
        out += (r.kind == CaseKind::exact ? "exact" : "numeric");
        out += "\", \"lhs_value\": " + fmt17(r.lhs_value) +
               ", \"rhs_value\": " + fmt17(r.rhs_value);
        if (!r.lhs_exact.empty()) out += ", \"lhs_exact\": " + exact_json(r.lhs_exact);
        if (!r.rhs_exact.empty()) out += ", \"rhs_exact\": " + exact_json(r.rhs_exact);
        out += ", \"abs_err\": " + fmt17(r.abs_err) + ", \"rel_err\": " + fmt17(r.rel_err) +
               ", \"tol\": " + fmt17(r.tol) + ", \"pass\": " + (r.pass ? "true" : "false") +
               ", \"runtime_ms\": " + fmt17(r.runtime_ms) + ", \"method_notes\": \"" +
               json_escape(r.method_notes) + "\"}";
        out += (i + 1 < report.records.size()) ? ",\n" : "\n";
    }
    out += "  ]\n}\n";
    return out;
}

std::string report_csv(const Report& report) {
    std::string out =
        "id,params,kind,lhs_value,rhs_value,lhs_exact,rhs_exact,abs_err,rel_err,tol,pass,"
        "runtime_ms,method_notes\n";
    for (const CaseRecord& r : report.records) {
        out += csv_field(r.id) + "," + csv_field(params_compact(r.params)) + ",";
        out += (r.kind == CaseKind::exact ? "exact" : "numeric");
        out += "," + fmt17(r.lhs_value) + "," + fmt17(r.rhs_value) + "," +
               csv_field(r.lhs_exact) + "," + csv_field(r.rhs_exact) + "," +
               fmt17(r.abs_err) + "," + fmt17(r.rel_err) + "," + fmt17(r.tol) + "," +
               (r.pass ? "true" : "false") + "," + fmt17(r.runtime_ms) + "," +
               csv_field(r.method_notes) + "\n";
    }
    return out;
}

bool glob_match(const std::string& pattern, const std::string& text) {
    std::size_t p = 0, t = 0, star = std::string::npos, mark = 0;
    while (t < text.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
            ++p;
            ++t;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = t;
        } else if (star != std::string::npos) {
            p = star + 1;
            t = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

namespace {

CaseRecord evaluate_case(const IdentityCase& c) {
    CaseRecord rec;
    rec.id = c.id;
    rec.params = c.params;
    rec.kind = c.kind;
    rec.tol = c.tol;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        CaseOutcome o = c.eval();
        rec.lhs_value = o.lhs;
        rec.rhs_value = o.rhs;
        rec.lhs_exact = o.lhs_exact;
        rec.rhs_exact = o.rhs_exact;
        rec.method_notes = o.notes;
        rec.abs_err = std::fabs(o.lhs - o.rhs);
        double denom = std::max(std::fabs(o.lhs), std::fabs(o.rhs));
        rec.rel_err = denom > 0.0 ? rec.abs_err / denom : 0.0;
        if (c.kind == CaseKind::exact)
            rec.pass = o.exact_equal;
        else
            rec.pass = rec.abs_err <= c.tol || rec.rel_err <= c.tol;
    } catch (const convergence_error& e) {
        rec.lhs_value = e.best_value();
        rec.abs_err = e.best_estimate();
        rec.rel_err = 0.0;
        rec.pass = false;
        rec.method_notes = std::string("unconverged: ") + e.what();
    } catch (const std::exception& e) {
        rec.pass = false;
        rec.method_notes = std::string("error: ") + e.what();
    }
    const auto t1 = std::chrono::steady_clock::now();
    rec.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return rec;
}

}  // namespace

Report run(const RunConfig& cfg) {
    std::vector<IdentityCase> all = registry(cfg);
    std::vector<IdentityCase> selected;
    for (auto& c : all)
        if (cfg.filter.empty() || glob_match(cfg.filter, c.id)) selected.push_back(std::move(c));

    Report report;
    report.records.resize(selected.size());
    if (cfg.parallel && selected.size() > 1) {
        std::atomic<std::size_t> next{0};
        unsigned nthreads = std::min<unsigned>(std::thread::hardware_concurrency(),
                                               static_cast<unsigned>(selected.size()));
        if (nthreads == 0) nthreads = 2;
        std::vector<std::future<void>> workers;
        for (unsigned w = 0; w < nthreads; ++w)
            workers.push_back(std::async(std::launch::async, [&] {
                for (std::size_t i = next.fetch_add(1); i < selected.size();
                     i = next.fetch_add(1))
                    report.records[i] = evaluate_case(selected[i]);
            }));
        for (auto& f : workers) f.get();
    } else {
        for (std::size_t i = 0; i < selected.size(); ++i)
            report.records[i] = evaluate_case(selected[i]);
    }

    std::sort(report.records.begin(), report.records.end(),
              [](const CaseRecord& a, const CaseRecord& b) {
                  if (a.id != b.id) return a.id < b.id;
                  return a.params < b.params;
              });
    report.summary.total = static_cast<int>(report.records.size());
    for (const auto& r : report.records)
        (r.pass ? report.summary.passed : report.summary.failed) += 1;

    if (!cfg.out.empty()) {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) throw usage_error("cannot open report file: " + cfg.out);
        f << (cfg.format == ReportFormat::json ? report_json(report) : report_csv(report));
        if (!f) throw usage_error("failed writing report file: " + cfg.out);
    }

    std::cout << "verify: " << report.summary.total << " cases, " << report.summary.passed
              << " passed, " << report.summary.failed << " failed, " << report.summary.skipped
              << " skipped\n";
    for (const auto& r : report.records)
        if (!r.pass) {
            std::cout << "  FAIL " << r.id;
            if (!r.params.empty()) std::cout << " " << params_compact(r.params);
            std::cout << "  abs_err=" << fmt17(r.abs_err) << " tol=" << fmt17(r.tol);
            if (!r.method_notes.empty()) std::cout << "  (" << r.method_notes << ")";
            std::cout << "\n";
        }
    return report;
}

}  // namespace mtvlab
