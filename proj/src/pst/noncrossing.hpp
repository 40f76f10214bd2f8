#pragma once

#include <utility>
#include <vector>

namespace pst {

// Value sequences over [l] = {1..l} describing which solution component each
// face terminal attaches to, in face-walk order. A sequence is non-crossing
// when no two values interleave as x_i = x_k, x_j = x_l with i<j<k<l (unless
// all four are equal), and minimal when it contains no run of three equal
// values.
using ValueSeq = std::vector<int>;

bool is_noncrossing(const ValueSeq& x);
bool is_minimal_seq(const ValueSeq& x);

// True if appending v to x keeps the sequence non-crossing and minimal.
// Assumes x itself is already non-crossing and minimal.
bool can_append(const ValueSeq& x, int v);

// All minimal non-crossing sequences that use exactly the values 1..l, each
// of length at most min(4*l, n). Enumeration order is lexicographic.
std::vector<ValueSeq> enumerate_minimal_noncrossing(int l, int n);

// Compress a non-crossing sequence to its minimal form by keeping the first
// and last element of every maximal run. Returns the minimal sequence and
// the kept 0-based positions.
std::pair<ValueSeq, std::vector<int>> compress_assignment(const ValueSeq& x);

// Inverse of compress_assignment: rebuild a full assignment of length n from
// a minimal sequence and the positions its elements came from. Gaps between
// consecutive kept positions are filled with their common value; a gap
// between unequal values is invalid. Throws std::invalid_argument on
// malformed input.
ValueSeq expand_assignment(const ValueSeq& s, const std::vector<int>& pos, int n);

struct NoncrossingReport {
    int l = 0;
    long long sequence_count = 0;       // minimal non-crossing over exactly [l]
    int max_length = 0;                 // longest such sequence found
    long long overlong_count = 0;       // sequences exceeding 4*l' for their value count l'
};

// Brute-force sweep behind `verify noncrossing`: enumerate every minimal
// non-crossing sequence over value subsets of [l] up to length 4*l + 1 and
// check the 4*l length bound for each distinct-value count.
NoncrossingReport verify_noncrossing_bound(int l);

}  // namespace pst
