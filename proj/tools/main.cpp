#include <CLI11.hpp>

#include "mtvlab/constants.hpp"
#include "mtvlab/errors.hpp"
#include "mtvlab/index.hpp"
#include "mtvlab/quadrature.hpp"
#include "mtvlab/series.hpp"
#include "mtvlab/tvalues.hpp"
#include "mtvlab/verify.hpp"

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

namespace {

void print_value(const mtvlab::ValueWithError& v) {
    std::printf("value = %.17g\n", v.value);
    std::printf("estimate = %.3g\n", v.error_estimate);
    std::printf("terms = %lld\n", v.terms_used);
    std::printf("method = %s\n", mtvlab::method_name(v.method));
}

// "tpow=A,logpow=B,weight=none|invt2|atan:K|pi4atan:K", every key optional
mtvlab::KernelSpec parse_kernel_spec(const std::string& text) {
    mtvlab::KernelSpec spec;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string::npos) end = text.size();
        const std::string item = text.substr(pos, end - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw mtvlab::parse_error("kernel spec item needs key=value: " + item, pos);
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        auto as_int = [&](const std::string& s) {
            try {
                std::size_t used = 0;
                int v = std::stoi(s, &used);
                if (used != s.size()) throw std::invalid_argument(s);
                return v;
            } catch (const std::exception&) {
                throw mtvlab::parse_error("kernel spec: bad integer '" + s + "'", pos);
            }
        };
        if (key == "tpow") {
            spec.tpow = as_int(val);
        } else if (key == "logpow") {
            spec.logpow = as_int(val);
        } else if (key == "weight") {
            if (val == "none") {
                spec.weight = mtvlab::KernelWeight::none;
            } else if (val == "invt2") {
                spec.weight = mtvlab::KernelWeight::inv_one_plus_t2;
            } else if (val.rfind("atan:", 0) == 0) {
                spec.weight = mtvlab::KernelWeight::atan_power;
                spec.weight_power = as_int(val.substr(5));
            } else if (val.rfind("pi4atan:", 0) == 0) {
                spec.weight = mtvlab::KernelWeight::pi4_minus_atan_power;
                spec.weight_power = as_int(val.substr(8));
            } else {
                throw mtvlab::parse_error("kernel spec: unknown weight '" + val + "'", pos);
            }
        } else {
            throw mtvlab::parse_error("kernel spec: unknown key '" + key + "'", pos);
        }
        pos = end + (end < text.size() ? 1 : 0);
    }
    return spec;
}

std::vector<int> plain_exponents(const std::string& text) {
    mtvlab::SignedIndex idx = mtvlab::parse_index(text);
    std::vector<int> ks;
    for (const auto& e : idx.entries) {
        if (e.barred) throw mtvlab::usage_error("a: barred entries are not allowed here");
        ks.push_back(e.exponent);
    }
    return ks;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiple T-value computation and identity verification"};
    app.require_subcommand(1);

    std::string index_text, a_index_text, kernel_text;
    double tol = 1e-10, a_z = 0.5;
    long long max_terms = 0;
    int w_m = 1, w_k = 1, w_r = 1;
    int z_j = 1, z_p = 1;
    bool z_exact = false;
    int tab_n = 64, tab_jmax = 5, tab_pmax = 4;
    bool tab_dump = false;
    mtvlab::RunConfig cfg;
    std::string format_text = "json";

    auto* eval_cmd = app.add_subcommand("eval", "evaluate a signed T-value");
    eval_cmd->add_option("index", index_text, "index, e.g. 1,~2 (~ marks a bar)")->required();
    eval_cmd->add_option("--tol", tol, "target absolute error");
    eval_cmd->add_option("--max-terms", max_terms, "term cap (0 = default)");

    auto* a_cmd = app.add_subcommand("a", "evaluate the level-2 polylog A(k;z)");
    a_cmd->add_option("index", a_index_text, "unbarred index, e.g. 1,1,2")->required();
    a_cmd->add_option("--z", a_z, "evaluation point")->required();
    a_cmd->add_option("--tol", tol, "target absolute error");
    a_cmd->add_option("--max-terms", max_terms, "term cap (0 = default)");

    auto* w_cmd = app.add_subcommand("w", "binomially weighted composition sum W_m(k,r)");
    w_cmd->add_option("--m", w_m, "binomial boost")->required();
    w_cmd->add_option("--k", w_k, "composition weight")->required();
    w_cmd->add_option("--r", w_r, "composition depth")->required();
    w_cmd->add_option("--tol", tol, "target absolute error");

    auto* z_cmd = app.add_subcommand("z", "pi-power transfer coefficient Z(j,p)");
    z_cmd->add_option("j", z_j, "lower index")->required();
    z_cmd->add_option("p", z_p, "upper index")->required();
    z_cmd->add_flag("--exact", z_exact, "print the exact rational pi-power form");

    auto* tab_cmd = app.add_subcommand("tables", "harmonic prefix-sum tables");
    tab_cmd->add_option("--n", tab_n, "table length");
    tab_cmd->add_option("--jmax", tab_jmax, "maximum depth");
    tab_cmd->add_option("--pmax", tab_pmax, "maximum harmonic order");
    tab_cmd->add_flag("--dump", tab_dump, "print the tables as CSV");

    auto* int_cmd = app.add_subcommand("integral", "tanh-sinh quadrature of a kernel");
    int_cmd->add_option("kernel", kernel_text,
                        "tpow=A,logpow=B,weight=none|invt2|atan:K|pi4atan:K")
        ->required();
    int_cmd->add_option("--tol", tol, "relative agreement target");

    auto* verify_cmd = app.add_subcommand("verify", "run the identity suite");
    verify_cmd->add_option("--filter", cfg.filter, "id glob, e.g. 'THM*'");
    verify_cmd->add_option("--tol", cfg.tol_default, "series-family tolerance");
    verify_cmd->add_option("--out", cfg.out, "report file path");
    verify_cmd->add_option("--format", format_text, "json or csv");
    verify_cmd->add_option("--max-terms", cfg.max_terms, "term cap (0 = default)");
    verify_cmd->add_flag("--parallel", cfg.parallel, "evaluate cases concurrently");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (*eval_cmd) {
            print_value(mtvlab::eval_signed_mtv(mtvlab::parse_index(index_text), tol, max_terms));
        } else if (*a_cmd) {
            print_value(mtvlab::eval_a(plain_exponents(a_index_text), a_z, tol, max_terms));
        } else if (*w_cmd) {
            print_value(mtvlab::W(w_m, w_k, w_r, tol));
        } else if (*z_cmd) {
            if (z_exact) {
                std::printf("%s\n", mtvlab::Z_comb(z_j, z_p).exact.str().c_str());
            } else {
                std::printf("value = %.17g\n", mtvlab::Z_closed(z_j, z_p).exact.to_double());
            }
        } else if (*tab_cmd) {
            mtvlab::HarmonicTables t = mtvlab::build_tables(tab_n, tab_jmax, tab_pmax);
            if (tab_dump) {
                std::printf("n,j,T_ones,S_ones\n");
                for (int n = 0; n <= t.N; ++n)
                    for (int j = 0; j <= t.Jmax; ++j)
                        std::printf("%d,%d,%.17g,%.17g\n", n, j, t.T(n, j), t.S(n, j));
            } else {
                std::printf("tables built: N=%d Jmax=%d Pmax=%d\n", t.N, t.Jmax, t.Pmax);
            }
        } else if (*int_cmd) {
            mtvlab::QuadratureResult q = mtvlab::integrate(parse_kernel_spec(kernel_text), tol);
            std::printf("value = %.17g\n", q.value);
            std::printf("estimate = %.3g\n", q.error_estimate);
            std::printf("levels = %d\n", q.levels_used);
        } else if (*verify_cmd) {
            if (format_text == "json") {
                cfg.format = mtvlab::ReportFormat::json;
            } else if (format_text == "csv") {
                cfg.format = mtvlab::ReportFormat::csv;
            } else {
                throw mtvlab::usage_error("--format must be json or csv");
            }
            mtvlab::Report report = mtvlab::run(cfg);
            return report.summary.failed == 0 ? 0 : 1;
        }
    } catch (const mtvlab::convergence_error& e) {
        std::fprintf(stderr, "convergence failure: %s\n", e.what());
        std::fprintf(stderr, "best value = %.17g (estimate %.3g, terms %lld)\n", e.best_value(),
                     e.best_estimate(), e.terms_used());
        return 3;
    } catch (const mtvlab::parse_error& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
