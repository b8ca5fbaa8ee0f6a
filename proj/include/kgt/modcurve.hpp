#ifndef KGT_MODCURVE_HPP
#define KGT_MODCURVE_HPP

#include <cstdint>
#include <stdexcept>

#include "kgt/arith.hpp"

namespace kgt::modcurve {

using arith::u64;

struct CongruenceIndexReport {
    u64 n;
    u64 index_gamma0;  // n prod_{p|n} (1 + 1/p)
    u64 index_gamma1;  // n^2 prod_{p|n} (1 - 1/p^2)
};

inline u64 index_gamma0(u64 n) {
    if (n == 0) throw std::invalid_argument("index_gamma0: n must be positive");
    u64 idx = 1;
    for (auto& [p, e] : arith::factorize(n).factors) {
        for (int i = 0; i + 1 < e; ++i) idx *= p;
        idx *= p + 1;
    }
    return idx;
}

inline u64 index_gamma1(u64 n) {
    if (n == 0) throw std::invalid_argument("index_gamma1: n must be positive");
    u64 idx = 1;
    for (auto& [p, e] : arith::factorize(n).factors) {
        for (int i = 0; i + 1 < e; ++i) idx *= p * p;
        idx *= (p - 1) * (p + 1);
    }
    return idx;
}

inline CongruenceIndexReport indices(u64 n) { return {n, index_gamma0(n), index_gamma1(n)}; }

// count of order-3 elliptic points: 0 when 9 | e, otherwise
// prod_{p | e} (1 + kronecker(-3, p))
inline u64 epsilon3(u64 e) {
    if (e == 0) throw std::invalid_argument("epsilon3: e must be positive");
    if (e % 9 == 0) return 0;
    u64 out = 1;
    for (auto& [p, ex] : arith::factorize(e).factors)
        out *= static_cast<u64>(1 + arith::kronecker(-3, static_cast<long long>(p)));
    return out;
}

// independent root count: x in [0, e) with x^2 + x + 1 = 0 mod e
inline u64 epsilon3_oracle(u64 e) {
    if (e == 0) throw std::invalid_argument("epsilon3_oracle: e must be positive");
    if (e > 1000000) throw std::invalid_argument("epsilon3_oracle: e exceeds the 10^6 cap");
    u64 count = 0;
    for (u64 x = 0; x < e; ++x)
        if ((x * x + x + 1) % e == 0) ++count;
    return count;
}

// (index_gamma1(ae) / index_gamma0(e)) * epsilon3(e); the quotient is the
// index of the smaller congruence subgroup in the larger one and must be exact.
inline u64 eta_bound(u64 a, u64 e) {
    if (a == 0 || e == 0) throw std::invalid_argument("eta_bound: a, e must be positive");
    u64 g1 = index_gamma1(a * e);
    u64 g0 = index_gamma0(e);
    if (g1 % g0 != 0) throw std::logic_error("eta_bound: index quotient not integral");
    return (g1 / g0) * epsilon3(e);
}

}  // namespace kgt::modcurve

#endif
