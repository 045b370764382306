#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace mtvlab {

// One position of a signed index: exponent k_j >= 1, optionally barred.
// A bar means the sign factor (-1)^{n_j} multiplies that position's term.
struct IndexEntry {
    int exponent = 1;
    bool barred = false;
    friend auto operator<=>(const IndexEntry&, const IndexEntry&) = default;
};

// Ordered entry list; empty is legal and denotes the empty index (value 1).
struct SignedIndex {
    std::vector<IndexEntry> entries;

    int depth() const { return static_cast<int>(entries.size()); }
    int weight() const {
        int w = 0;
        for (const auto& e : entries) w += e.exponent;
        return w;
    }

    // (k_1,...,k_r) with a bar on the last position only.
    static SignedIndex bar_last(const std::vector<int>& ks);
    // all positions unbarred
    static SignedIndex plain(const std::vector<int>& ks);
    // ({1}_ones, k) with the bar on the last position; ones = 0 gives (k~).
    static SignedIndex ones_then(int ones, int k);

    friend auto operator<=>(const SignedIndex&, const SignedIndex&) = default;
};

enum class ConvergenceClass { absolute, conditional, divergent };

inline const char* convergence_name(ConvergenceClass c) {
    switch (c) {
        case ConvergenceClass::absolute: return "absolute";
        case ConvergenceClass::conditional: return "conditional";
        case ConvergenceClass::divergent: return "divergent";
    }
    return "?";
}

struct IndexInfo {
    int weight = 0;
    int depth = 0;
    ConvergenceClass convergence = ConvergenceClass::absolute;
};

// Wire grammar (used verbatim by the CLI and report files):
//   index := "" | entry ("," entry)*
//   entry := "~"? [1-9][0-9]*
// "~" is the bar marker. parse_error on anything else, with the byte position.
SignedIndex parse_index(std::string_view text);
std::string format_index(const SignedIndex& idx);

// weight, depth, and the convergence class:
//   divergent    iff depth >= 1 and the last entry is an unbarred 1
//   conditional  iff the last entry is a barred 1
//   absolute     otherwise (the empty index included)
IndexInfo classify(const SignedIndex& idx);

using Composition = std::vector<int>;

// All compositions of k into r parts >= 1, lexicographic. Empty when k < r
// or r < 1. Count is binom(k-1, r-1).
std::vector<Composition> compositions(int k, int r);

}  // namespace mtvlab
