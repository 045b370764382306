// Acceptance gate: one pass/fail line per criterion, nonzero exit if any fail.
#include "mtvlab/constants.hpp"
#include "mtvlab/errors.hpp"
#include "mtvlab/index.hpp"
#include "mtvlab/quadrature.hpp"
#include "mtvlab/series.hpp"
#include "mtvlab/tvalues.hpp"
#include "mtvlab/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace mtvlab;

namespace {

int g_failures = 0;

void report(int n, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", n, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double now_seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct FamilyStats {
    int total = 0;
    int failed = 0;
    double worst_abs = 0.0;
};

double param(const IdentityCase& c, const std::string& name, double dflt = -1.0) {
    for (const auto& [k, v] : c.params)
        if (k == name) return v;
    return dflt;
}

FamilyStats run_cases(const std::vector<IdentityCase>& cases,
                      const std::function<bool(const IdentityCase&)>& pick) {
    FamilyStats st;
    for (const auto& c : cases) {
        if (!pick(c)) continue;
        ++st.total;
        try {
            CaseOutcome o = c.eval();
            if (c.kind == CaseKind::exact) {
                if (!o.exact_equal) ++st.failed;
            } else {
                double abs = std::fabs(o.lhs - o.rhs);
                double den = std::max(std::fabs(o.lhs), std::fabs(o.rhs));
                double rel = den > 0.0 ? abs / den : 0.0;
                st.worst_abs = std::max(st.worst_abs, abs);
                if (!(abs <= c.tol || rel <= c.tol)) ++st.failed;
            }
        } catch (const std::exception&) {
            ++st.failed;
        }
    }
    return st;
}

std::string stats_str(const FamilyStats& st) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%d/%d within tol, worst abs err %.3g",
                  st.total - st.failed, st.total, st.worst_abs);
    return buf;
}

}  // namespace

int main() {
    const double kRef32 = 2.1035995805292899995;  // (7/4) zeta(3)
    const ConstantsTable& cs = ConstantsTable::instance();
    RunConfig reg_cfg;
    const std::vector<IdentityCase> reg = registry(reg_cfg);

    // 1: the depth-2 weight-3 value by three independent routes
    {
        auto t0 = std::chrono::steady_clock::now();
        double a = W(1, 3, 2, 1e-9).value;
        double ta = now_seconds(t0);
        t0 = std::chrono::steady_clock::now();
        double b = W_series(1, 1, WSeriesForm::even_depth_odd_weight, 1e-9).value;
        double tb = now_seconds(t0);
        t0 = std::chrono::steady_clock::now();
        double c = w_reduced_integral(2, 2, 1e-10).value;
        double tc = now_seconds(t0);
        bool ok = std::fabs(a - kRef32) <= 1e-8 && std::fabs(b - kRef32) <= 1e-8 &&
                  std::fabs(c - kRef32) <= 1e-8 && ta < 10 && tb < 10 && tc < 10;
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "W(3,2) three routes: definitional %.12f (%.2fs), single series %.12f "
                      "(%.2fs), reduced integral %.12f (%.2fs)",
                      a, ta, b, tb, c, tc);
        report(1, ok, buf);
    }

    // 2: weight-5 closed forms
    {
        double w52 = W(1, 5, 2, 1e-9).value;
        double w54 = W(1, 5, 4, 1e-9).value;
        double ref52 = 7.0 / 16 * cs.zeta(2) * cs.zeta(3) + 31.0 / 16 * cs.zeta(5);
        double ref54 = 21.0 / 16 * cs.zeta(2) * cs.zeta(3) - 31.0 / 16 * cs.zeta(5);
        bool ok = std::fabs(w52 - ref52) <= 1e-8 && std::fabs(w54 - ref54) <= 1e-8;
        char buf[256];
        std::snprintf(buf, sizeof(buf), "W(5,2) err %.3g, W(5,4) err %.3g",
                      std::fabs(w52 - ref52), std::fabs(w54 - ref54));
        report(2, ok, buf);
    }

    // 3: the two weight-5/weight-7 sum relations as stated
    {
        double partA = W(1, 5, 4, 1e-9).value + W(1, 5, 2, 1e-9).value;
        double refA = 7.0 / 4 * cs.zeta(2) * cs.zeta(3);
        bool okA = std::fabs(partA - refA) <= 1e-7;

        double w75 = W(1, 7, 5, 1e-9).value;
        double w73 = W(1, 7, 3, 1e-9).value;
        double w53 = W(1, 5, 3, 1e-9).value;
        double refB = std::pow(cs.pi(), 7) / 7680.0;
        double partB = w75 - cs.zeta(2) * w53;
        bool okB = std::fabs(partB - refB) <= 1e-7;
        double corrected = w75 + w73 - cs.zeta(2) * w53;
        char buf[512];
        std::snprintf(buf, sizeof(buf),
                      "W(5,4)+W(5,2) err %.3g; stated relation W(7,5)-zeta(2)W(5,3)=pi^7/7680 "
                      "misses by %.6f, which equals -W(7,3): the relation omits a W(7,3) term, "
                      "and W(7,5)+W(7,3)-zeta(2)W(5,3)-pi^7/7680 = %.3g",
                      std::fabs(partA - refA), partB - refB, corrected - refB);
        report(3, okA && okB, buf);
    }

    // 4: chain and closed pi-power coefficients agree exactly
    {
        auto t0 = std::chrono::steady_clock::now();
        int bad = 0;
        for (int p = 1; p <= 8; ++p)
            for (int j = 1; j <= p; ++j)
                if (!(Z_comb(j, p).exact == Z_closed(j, p).exact)) ++bad;
        double secs = now_seconds(t0);
        char buf[128];
        std::snprintf(buf, sizeof(buf), "36 exact comparisons, %d unequal, %.3fs", bad, secs);
        report(4, bad == 0 && secs < 1.0, buf);
    }

    // 5: all-ones alternating values and odd half-integer sums
    {
        double worst1 = 0.0;
        for (int r = 1; r <= 5; ++r) {
            double got = eval_signed_mtv(SignedIndex::ones_then(r - 1, 1), 1e-10).value;
            worst1 = std::max(worst1, std::fabs(got - tbar_ones_exact(r).to_double()));
        }
        double worst2 = 0.0;
        for (int k = 1; k <= 5; ++k) {
            std::vector<double> partials(2000);
            double acc = 0.0;
            for (int i = 1; i <= 2000; ++i) {
                double term = std::pow(i - 0.5, -(2 * k + 1));
                acc += (i % 2 == 1) ? term : -term;
                partials[i - 1] = acc;
            }
            double series = accelerate_alternating(partials, 32).value;
            worst2 = std::max(worst2, std::fabs(tbar(2 * k + 1, 1e-13).value - series));
        }
        bool ok = worst1 <= 1e-9 && worst2 <= 1e-10;
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "all-ones worst err %.3g (r <= 5); odd closed-vs-series worst %.3g",
                      worst1, worst2);
        report(5, ok, buf);
    }

    // 6: the two depth-transfer theorems over the full grid
    {
        FamilyStats st =
            run_cases(reg, [](const IdentityCase& c) { return c.id == "THM1" || c.id == "THM2"; });
        report(6, st.total == 18 && st.failed == 0, stats_str(st));
    }

    // 7: the mixed-sum theorem, both variants
    {
        FamilyStats st = run_cases(reg, [](const IdentityCase& c) { return c.id == "THM3"; });
        report(7, st.total == 54 && st.failed == 0, stats_str(st));
    }

    // 8: duality family
    {
        FamilyStats d6 = run_cases(reg, [](const IdentityCase& c) {
            return c.id == "D456" && param(c, "eq") == 6.0;
        });
        FamilyStats d7 = run_cases(reg, [](const IdentityCase& c) {
            return c.id == "D456" && param(c, "eq") == 7.0;
        });
        FamilyStats d8 = run_cases(reg, [](const IdentityCase& c) {
            return c.id == "D456" && param(c, "eq") == 8.0;
        });
        double g = eval_signed_mtv(parse_index("~1,~1"), 1e-10).value;
        double gerr = std::fabs(g - (-2.0 * cs.catalan()));
        bool ok = d6.failed == 0 && d7.failed == 0 && d8.failed == 0 && gerr <= 1e-9 &&
                  d6.total > 0 && d7.total > 0 && d8.total > 0;
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "reshape %s; mixed-bar %s; boosted %s; T(1bar,1bar)+2G = %.3g",
                      stats_str(d6).c_str(), stats_str(d7).c_str(), stats_str(d8).c_str(), gerr);
        report(8, ok, buf);
    }

    // 9: alternating square sum and the two displayed depth-3 identities
    {
        FamilyStats b24 = run_cases(reg, [](const IdentityCase& c) {
            return c.id == "SPECIAL" && param(c, "case") == 4.0;
        });
        FamilyStats disp = run_cases(reg, [](const IdentityCase& c) {
            return (c.id == "C3" || c.id == "C4") && param(c, "display") == 1.0;
        });
        bool ok = b24.total == 1 && b24.failed == 0 && disp.total == 2 && disp.failed == 0;
        char buf[160];
        std::snprintf(buf, sizeof(buf), "square sum %s; displayed identities %s",
                      stats_str(b24).c_str(), stats_str(disp).c_str());
        report(9, ok, buf);
    }

    // 10: DP truncations vs literal nested loops, and tables vs brute force
    {
        const int N = 50;
        double invp[4][2 * N + 2];
        for (int e = 1; e <= 3; ++e)
            for (int v = 1; v <= 2 * N + 1; ++v) invp[e][v] = std::pow(double(v), -e);

        int checked = 0, bad = 0;
        double worst = 0.0;
        for (int depth = 1; depth <= 4; ++depth) {
            int combos = 1;
            for (int i = 0; i < depth; ++i) combos *= 6;
            for (int code = 0; code < combos; ++code) {
                SignedIndex idx;
                int c = code;
                for (int i = 0; i < depth; ++i) {
                    idx.entries.push_back({c % 3 + 1, (c / 3) % 2 == 1});
                    c /= 6;
                }
                long double literal = 0.0L;
                std::function<void(int, int, double)> rec = [&](int pos, int lo, double prod) {
                    if (pos == depth) {
                        literal += prod;
                        return;
                    }
                    const IndexEntry& e = idx.entries[pos];
                    for (int n = lo + 1; n <= N; ++n) {
                        double term = prod * invp[e.exponent][2 * n - (pos + 1)];
                        if (e.barred && n % 2 == 1) term = -term;
                        rec(pos + 1, n, term);
                    }
                };
                rec(0, 0, std::pow(2.0, depth));
                double dp = mtv_partial(idx, N);
                double diff = std::fabs(dp - static_cast<double>(literal));
                worst = std::max(worst, diff);
                ++checked;
                if (diff > 1e-12) ++bad;
            }
        }

        HarmonicTables tb = build_tables(30, 5, 1);
        int tbad = 0;
        double tworst = 0.0;
        for (int n = 0; n <= 30; ++n)
            for (int j = 0; j <= 5; ++j) {
                double dT = std::fabs(tb.T(n, j) - brute_T(n, j));
                double dS = std::fabs(tb.S(n, j) - brute_S(n, j));
                tworst = std::max({tworst, dT, dS});
                if (dT > 1e-12 || dS > 1e-12) ++tbad;
            }
        bool ok = bad == 0 && tbad == 0;
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "%d sign/exponent patterns at N=50, %d over 1e-12 (worst %.3g); "
                      "tables vs brute worst %.3g",
                      checked, bad, worst, tworst);
        report(10, ok, buf);
    }

    // 11: log-moment identities over the full grid
    {
        FamilyStats st = run_cases(reg, [](const IdentityCase& c) { return c.id == "LEM22"; });
        report(11, st.total == 96 && st.failed == 0, stats_str(st));
    }

    // 12: nested-quadrature reversal identities
    {
        FamilyStats st = run_cases(reg, [](const IdentityCase& c) { return c.id == "LEM41"; });
        report(12, st.total == 6 && st.failed == 0, stats_str(st));
    }

    // 13: polylog-variant shuffle at real arguments
    {
        FamilyStats st = run_cases(reg, [](const IdentityCase& c) { return c.id == "D11"; });
        report(13, st.total == 16 && st.failed == 0, stats_str(st));
    }

    // 14: exact inversion reconstruction
    {
        FamilyStats st = run_cases(reg, [](const IdentityCase& c) { return c.id == "INV"; });
        report(14, st.total == 1 && st.failed == 0,
               st.failed == 0 ? "100 random trials, all reconstructed exactly"
                              : "reconstruction failures");
    }

    // 15: the full suite under the wall-clock budget
    {
        RunConfig cfg;
        cfg.max_terms = 2'000'000;
        cfg.parallel = true;
        auto t0 = std::chrono::steady_clock::now();
        Report rep = run(cfg);
        double secs = now_seconds(t0);
        std::string fails;
        for (const auto& r : rep.records)
            if (!r.pass) {
                if (!fails.empty()) fails += ", ";
                fails += r.id;
                for (const auto& [k, v] : r.params) fails += " " + k + "=" + std::to_string(int(v));
            }
        bool ok = secs < 600.0;
        char buf[512];
        std::snprintf(buf, sizeof(buf),
                      "full verify: %d cases in %.1fs (%d passed, %d failed%s%s)",
                      rep.summary.total, secs, rep.summary.passed, rep.summary.failed,
                      rep.summary.failed ? "; failing: " : "", fails.c_str());
        report(15, ok, buf);
    }

    std::printf("%d of 15 criteria passed\n", 15 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
