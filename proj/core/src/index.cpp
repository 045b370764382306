#include "mtvlab/index.hpp"

#include "mtvlab/errors.hpp"

#include <cctype>

namespace mtvlab {

SignedIndex SignedIndex::bar_last(const std::vector<int>& ks) {
    SignedIndex idx;
    idx.entries.reserve(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i)
        idx.entries.push_back({ks[i], i + 1 == ks.size()});
    return idx;
}

SignedIndex SignedIndex::plain(const std::vector<int>& ks) {
    SignedIndex idx;
    idx.entries.reserve(ks.size());
    for (int k : ks) idx.entries.push_back({k, false});
    return idx;
}

SignedIndex SignedIndex::ones_then(int ones, int k) {
    SignedIndex idx;
    idx.entries.reserve(ones + 1);
    for (int i = 0; i < ones; ++i) idx.entries.push_back({1, false});
    idx.entries.push_back({k, true});
    return idx;
}

SignedIndex parse_index(std::string_view text) {
    SignedIndex idx;
    if (text.empty()) return idx;
    std::size_t pos = 0;
    while (true) {
        IndexEntry entry;
        if (pos < text.size() && text[pos] == '~') {
            entry.barred = true;
            ++pos;
        }
        std::size_t start = pos;
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            throw parse_error("expected exponent at position " + std::to_string(pos), pos);
        if (text[pos] == '0')
            throw parse_error("exponent must be >= 1 at position " + std::to_string(pos), pos);
        long long value = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            value = value * 10 + (text[pos] - '0');
            if (value > 1'000'000)
                throw parse_error("exponent too large at position " + std::to_string(start), start);
            ++pos;
        }
        entry.exponent = static_cast<int>(value);
        idx.entries.push_back(entry);
        if (pos == text.size()) break;
        if (text[pos] != ',')
            throw parse_error("expected ',' at position " + std::to_string(pos), pos);
        ++pos;
        if (pos == text.size())
            throw parse_error("trailing ',' at position " + std::to_string(pos - 1), pos - 1);
    }
    return idx;
}

std::string format_index(const SignedIndex& idx) {
    std::string out;
    for (std::size_t i = 0; i < idx.entries.size(); ++i) {
        if (i) out += ',';
        if (idx.entries[i].barred) out += '~';
        out += std::to_string(idx.entries[i].exponent);
    }
    return out;
}

IndexInfo classify(const SignedIndex& idx) {
    IndexInfo info;
    info.depth = idx.depth();
    info.weight = idx.weight();
    if (info.depth == 0) {
        info.convergence = ConvergenceClass::absolute;
        return info;
    }
    const IndexEntry& last = idx.entries.back();
    if (last.exponent == 1 && !last.barred)
        info.convergence = ConvergenceClass::divergent;
    else if (last.exponent == 1 && last.barred)
        info.convergence = ConvergenceClass::conditional;
    else
        info.convergence = ConvergenceClass::absolute;
    return info;
}

namespace {

void compositions_rec(int rem, int parts_left, Composition& cur,
                      std::vector<Composition>& out) {
    if (parts_left == 1) {
        cur.push_back(rem);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int first = 1; first <= rem - parts_left + 1; ++first) {
        cur.push_back(first);
        compositions_rec(rem - first, parts_left - 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Composition> compositions(int k, int r) {
    std::vector<Composition> out;
    if (r < 1 || k < r) return out;
    Composition cur;
    cur.reserve(r);
    compositions_rec(k, r, cur, out);
    return out;
}

}  // namespace mtvlab
