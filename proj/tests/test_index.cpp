#include <doctest.h>

#include "mtvlab/errors.hpp"
#include "mtvlab/index.hpp"
#include "mtvlab/rational.hpp"

#include <random>
#include <string>

using namespace mtvlab;

TEST_CASE("index parsing basics") {
    SignedIndex idx = parse_index("1,~2,13");
    REQUIRE(idx.depth() == 3);
    CHECK(idx.entries[0].exponent == 1);
    CHECK_FALSE(idx.entries[0].barred);
    CHECK(idx.entries[1].exponent == 2);
    CHECK(idx.entries[1].barred);
    CHECK(idx.entries[2].exponent == 13);
    CHECK_FALSE(idx.entries[2].barred);
    CHECK(idx.weight() == 16);

    CHECK(parse_index("").depth() == 0);
    CHECK(format_index(parse_index("")) == "");
    CHECK(format_index(idx) == "1,~2,13");
}

TEST_CASE("index parse errors carry positions") {
    CHECK_THROWS_AS(parse_index("1,,2"), parse_error);
    CHECK_THROWS_AS(parse_index("~"), parse_error);
    CHECK_THROWS_AS(parse_index("0"), parse_error);
    CHECK_THROWS_AS(parse_index("01"), parse_error);
    CHECK_THROWS_AS(parse_index("1,~02"), parse_error);
    CHECK_THROWS_AS(parse_index("1,"), parse_error);
    CHECK_THROWS_AS(parse_index("a"), parse_error);
    CHECK_THROWS_AS(parse_index("1 ,2"), parse_error);
    CHECK_THROWS_AS(parse_index("1000001"), parse_error);
    try {
        parse_index("1,x");
    } catch (const parse_error& e) {
        CHECK(e.position() == 2);
    }
}

TEST_CASE("format/parse round trip on random indices") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> depth_d(0, 6), exp_d(1, 9), bar_d(0, 1);
    for (int trial = 0; trial < 200; ++trial) {
        SignedIndex idx;
        int r = depth_d(rng);
        for (int i = 0; i < r; ++i) idx.entries.push_back({exp_d(rng), bar_d(rng) == 1});
        CHECK(parse_index(format_index(idx)) == idx);
    }
}

TEST_CASE("convergence classification") {
    CHECK(classify(parse_index("")).convergence == ConvergenceClass::absolute);
    CHECK(classify(parse_index("2")).convergence == ConvergenceClass::absolute);
    CHECK(classify(parse_index("1")).convergence == ConvergenceClass::divergent);
    CHECK(classify(parse_index("~1")).convergence == ConvergenceClass::conditional);
    CHECK(classify(parse_index("~2")).convergence == ConvergenceClass::absolute);
    CHECK(classify(parse_index("1,1,2")).convergence == ConvergenceClass::absolute);
    CHECK(classify(parse_index("~1,~1")).convergence == ConvergenceClass::conditional);
    CHECK(classify(parse_index("3,1")).convergence == ConvergenceClass::divergent);

    // only the last entry decides
    for (int e1 = 1; e1 <= 3; ++e1)
        for (int b1 = 0; b1 < 2; ++b1)
            for (int e2 = 1; e2 <= 3; ++e2)
                for (int b2 = 0; b2 < 2; ++b2) {
                    SignedIndex idx;
                    idx.entries.push_back({e1, b1 == 1});
                    idx.entries.push_back({e2, b2 == 1});
                    auto c = classify(idx).convergence;
                    if (e2 == 1 && b2 == 0)
                        CHECK(c == ConvergenceClass::divergent);
                    else if (e2 == 1)
                        CHECK(c == ConvergenceClass::conditional);
                    else
                        CHECK(c == ConvergenceClass::absolute);
                }
}

TEST_CASE("index helpers") {
    CHECK(SignedIndex::plain({1, 2}) == parse_index("1,2"));
    CHECK(SignedIndex::bar_last({1, 2}) == parse_index("1,~2"));
    CHECK(SignedIndex::ones_then(2, 3) == parse_index("1,1,~3"));
    CHECK(SignedIndex::ones_then(0, 1) == parse_index("~1"));
}

TEST_CASE("compositions enumerate correctly") {
    auto cs = compositions(4, 2);
    REQUIRE(cs.size() == 3);
    CHECK(cs[0] == Composition{1, 3});
    CHECK(cs[1] == Composition{2, 2});
    CHECK(cs[2] == Composition{3, 1});

    CHECK(compositions(3, 4).empty());
    CHECK(compositions(3, 0).empty());

    for (int k = 1; k <= 14; ++k)
        for (int r = 1; r <= k; ++r) {
            auto all = compositions(k, r);
            CHECK(double(all.size()) == Rational::binomial(k - 1, r - 1).to_double());
            for (const auto& c : all) {
                int sum = 0;
                for (int part : c) {
                    CHECK(part >= 1);
                    sum += part;
                }
                CHECK(sum == k);
            }
            for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1] < all[i]);
        }
}
