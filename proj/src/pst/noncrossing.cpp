#include "pst/noncrossing.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

namespace pst {

bool is_noncrossing(const ValueSeq& x) {
    int n = static_cast<int>(x.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int l = k + 1; l < n; ++l)
                    if (x[i] == x[k] && x[j] == x[l] && x[i] != x[j]) return false;
    return true;
}

bool is_minimal_seq(const ValueSeq& x) {
    for (size_t i = 2; i < x.size(); ++i)
        if (x[i] == x[i - 1] && x[i] == x[i - 2]) return false;
    return true;
}

bool can_append(const ValueSeq& x, int v) {
    size_t n = x.size();
    if (n >= 2 && x[n - 1] == v && x[n - 2] == v) return false;
    // Appending v crosses iff some occurrence of v lies strictly between two
    // occurrences of another value u.
    for (size_t j = 0; j < n; ++j) {
        if (x[j] != v) continue;
        for (size_t i = 0; i < j; ++i) {
            if (x[i] == v) continue;
            for (size_t k = j + 1; k < n; ++k)
                if (x[k] == x[i]) return false;
        }
    }
    return true;
}

namespace {

void enumerate_rec(int l, int cap, ValueSeq& cur, std::vector<ValueSeq>& out) {
    if (!cur.empty()) {
        std::set<int> used(cur.begin(), cur.end());
        if (static_cast<int>(used.size()) == l) out.push_back(cur);
    }
    if (static_cast<int>(cur.size()) >= cap) return;
    for (int v = 1; v <= l; ++v) {
        if (!can_append(cur, v)) continue;
        cur.push_back(v);
        enumerate_rec(l, cap, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<ValueSeq> enumerate_minimal_noncrossing(int l, int n) {
    if (l < 1) throw std::invalid_argument("enumerate_minimal_noncrossing: l must be >= 1");
    int cap = std::min(4 * l, n);
    std::vector<ValueSeq> out;
    ValueSeq cur;
    enumerate_rec(l, cap, cur, out);
    return out;
}

std::pair<ValueSeq, std::vector<int>> compress_assignment(const ValueSeq& x) {
    ValueSeq s;
    std::vector<int> pos;
    int n = static_cast<int>(x.size());
    int i = 0;
    while (i < n) {
        int j = i;
        while (j + 1 < n && x[j + 1] == x[i]) ++j;
        s.push_back(x[i]);
        pos.push_back(i);
        if (j > i) {
            s.push_back(x[j]);
            pos.push_back(j);
        }
        i = j + 1;
    }
    assert(is_minimal_seq(s));
    return {s, pos};
}

ValueSeq expand_assignment(const ValueSeq& s, const std::vector<int>& pos, int n) {
    if (s.size() != pos.size()) throw std::invalid_argument("expand_assignment: size mismatch");
    if (s.empty()) {
        if (n != 0) throw std::invalid_argument("expand_assignment: empty sequence, nonzero length");
        return {};
    }
    if (pos.front() != 0 || pos.back() != n - 1)
        throw std::invalid_argument("expand_assignment: positions must span the full range");
    ValueSeq x(n, 0);
    for (size_t i = 0; i < s.size(); ++i) {
        if (i > 0 && pos[i] <= pos[i - 1])
            throw std::invalid_argument("expand_assignment: positions must increase");
        x[pos[i]] = s[i];
        if (i > 0 && pos[i] > pos[i - 1] + 1) {
            if (s[i] != s[i - 1])
                throw std::invalid_argument("expand_assignment: gap between unequal values");
            for (int p = pos[i - 1] + 1; p < pos[i]; ++p) x[p] = s[i];
        }
    }
    return x;
}

NoncrossingReport verify_noncrossing_bound(int l) {
    NoncrossingReport rep;
    rep.l = l;
    int cap = 4 * l + 1;
    // Depth-first over all minimal non-crossing sequences with values in [l];
    // prefixes of minimal non-crossing sequences are themselves minimal
    // non-crossing, so pruning is exact.
    ValueSeq cur;
    std::vector<int> distinct_count(cap + 1, 0);
    struct Walker {
        int l, cap;
        NoncrossingReport& rep;
        ValueSeq& cur;
        void go() {
            if (!cur.empty()) {
                std::set<int> used(cur.begin(), cur.end());
                int lp = static_cast<int>(used.size());
                int len = static_cast<int>(cur.size());
                if (lp == l) {
                    rep.sequence_count++;
                    rep.max_length = std::max(rep.max_length, len);
                }
                if (len > 4 * lp) rep.overlong_count++;
            }
            if (static_cast<int>(cur.size()) >= cap) return;
            for (int v = 1; v <= l; ++v) {
                if (!can_append(cur, v)) continue;
                cur.push_back(v);
                go();
                cur.pop_back();
            }
        }
    } walker{l, cap, rep, cur};
    walker.go();
    return rep;
}

}  // namespace pst
