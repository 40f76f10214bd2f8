#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace pst {

// Exact nonnegative edge weights. Reduction gadgets use weights around M^7
// with M in the hundreds, far past 64 bits, so everything user-facing is
// arbitrary precision and serialized as decimal strings.
using Weight = mpz_class;

inline std::string weight_to_string(const Weight& w) { return w.get_str(); }

inline Weight weight_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty weight string");
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '-' && i == 0) continue;
        if (c < '0' || c > '9') throw std::invalid_argument("bad weight string: " + s);
    }
    return Weight(s, 10);
}

inline Weight weight_pow(const Weight& base, unsigned long e) {
    Weight r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Weight weight_gcd(const Weight& a, const Weight& b) {
    Weight r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

}  // namespace pst
