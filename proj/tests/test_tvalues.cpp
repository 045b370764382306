#include <doctest.h>

#include "mtvlab/constants.hpp"
#include "mtvlab/errors.hpp"
#include "mtvlab/index.hpp"
#include "mtvlab/series.hpp"
#include "mtvlab/tvalues.hpp"

#include <cmath>

using namespace mtvlab;

namespace {
constexpr double kZeta3 = 1.2020569031595942854;
constexpr double kZeta5 = 1.0369277551433699263;
constexpr double kCatalan = 0.91596559417721901505;
}  // namespace

TEST_CASE("composition-sum values against closed forms") {
    double z2 = M_PI * M_PI / 6.0;
    CHECK(std::fabs(W(1, 3, 2, 1e-9).value - 2.10359958052928999945) < 1e-8);
    CHECK(std::fabs(W(1, 5, 2, 1e-9).value -
                    (7.0 / 16.0 * z2 * kZeta3 + 31.0 / 16.0 * kZeta5)) < 1e-8);
    CHECK(std::fabs(W(1, 5, 4, 1e-9).value -
                    (21.0 / 16.0 * z2 * kZeta3 - 31.0 / 16.0 * kZeta5)) < 1e-8);
    CHECK(std::fabs(W(1, 1, 1, 1e-9).value - (-M_PI / 2.0)) < 1e-10);

    // memoized: identical arguments give the identical double
    CHECK(W(1, 3, 2, 1e-9).value == W(1, 3, 2, 1e-9).value);

    CHECK_THROWS_AS(W(1, 2, 3, 1e-8), usage_error);
    CHECK_THROWS_AS(W(0, 3, 2, 1e-8), usage_error);
}

TEST_CASE("single-series forms reproduce the composition sums") {
    struct Row {
        int p, m;
        WSeriesForm form;
        int k, r;
    };
    const Row rows[] = {
        {1, 1, WSeriesForm::even_depth_odd_weight, 3, 2},
        {1, 1, WSeriesForm::even_depth_even_weight, 2, 2},
        {1, 1, WSeriesForm::odd_depth_even_weight, 2, 1},
        {1, 1, WSeriesForm::odd_depth_odd_weight, 1, 1},
        {2, 1, WSeriesForm::even_depth_odd_weight, 5, 2},
        {2, 2, WSeriesForm::odd_depth_even_weight, 6, 3},
    };
    for (const Row& row : rows) {
        double lhs = W_series(row.p, row.m, row.form, 1e-8).value;
        double rhs = W(1, row.k, row.r, 1e-9).value;
        CHECK(std::fabs(lhs - rhs) < 1e-7);
    }
    // cross-check one form against a direct constant: depth 2, weight 2
    CHECK(std::fabs(W_series(1, 1, WSeriesForm::even_depth_even_weight, 1e-8).value -
                    M_PI * M_PI / 8.0) < 1e-7);
    CHECK(std::fabs(W_series(1, 1, WSeriesForm::odd_depth_even_weight, 1e-8).value -
                    (-2.0 * kCatalan)) < 1e-7);
}

TEST_CASE("pi-power transfer coefficients") {
    CHECK(Z_comb(1, 3).exact.str() == "1/120 * pi^4");
    for (int p = 1; p <= 3; ++p) CHECK(Z_comb(p, p).exact.str() == "1");
    for (int p = 1; p <= 5; ++p)
        for (int j = 1; j <= p; ++j) CHECK(Z_comb(j, p).exact == Z_closed(j, p).exact);
    CHECK_THROWS_AS(Z_comb(3, 2), usage_error);
    CHECK_THROWS_AS(Z_comb(0, 2), usage_error);
    CHECK_THROWS_AS(Z_closed(3, 2), usage_error);
}

TEST_CASE("all-ones alternating closed form") {
    CHECK(tbar_ones_exact(0).str() == "1");
    CHECK(tbar_ones_exact(1).str() == "-1/2 * pi^1");
    CHECK(tbar_ones_exact(2).str() == "1/8 * pi^2");
    CHECK(std::fabs(tbar_ones_exact(2).to_double() - M_PI * M_PI / 8.0) < 1e-15);
    CHECK(std::fabs(eval_signed_mtv(SignedIndex::ones_then(1, 1), 1e-10).value -
                    tbar_ones_exact(2).to_double()) < 1e-9);
}

TEST_CASE("odd-weight depth-2 closed form") {
    CHECK(std::fabs(w_odd2_closed(1, 1e-12).value - 1.75 * kZeta3) < 1e-12);
    double z2 = M_PI * M_PI / 6.0;
    // k = 2: 2^{-3} (t(3) eta(2) + t(5) eta(0)) with t(k) = (2^k - 1) zeta(k)
    double want = (7.0 * kZeta3 * (z2 / 2.0) + 31.0 * kZeta5 * 0.5) / 8.0;
    CHECK(std::fabs(w_odd2_closed(2, 1e-12).value - want) < 1e-12);
    CHECK(std::fabs(w_odd2_closed(2, 1e-12).value - W(1, 5, 2, 1e-10).value) < 1e-9);
    CHECK_THROWS_AS(w_odd2_closed(0, 1e-8), usage_error);
}

TEST_CASE("alternating odd-harmonic linear sums") {
    CHECK(std::fabs(linear_hsum(1, 1, 1e-10).value - M_PI * M_PI / 8.0) < 1e-9);
    CHECK(std::fabs(linear_hsum(1, 2, 1e-10).value - 1.5479824021577423047) < 1e-9);

    for (auto [p, q] : {std::pair{1, 2}, {2, 3}, {1, 4}}) {
        double lhs = (1.0 - std::pow(-1.0, p + q)) * linear_hsum(p, q, 1e-9).value;
        double rhs = hsum_closed_rhs(p, q).value;
        CHECK(std::fabs(lhs - rhs) < 1e-7);
    }
    CHECK_THROWS_AS(hsum_closed_rhs(1, 3), usage_error);
    CHECK_THROWS_AS(linear_hsum(0, 1, 1e-8), usage_error);
}
