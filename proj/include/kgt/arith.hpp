#ifndef KGT_ARITH_HPP
#define KGT_ARITH_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kgt/rational.hpp"
#include "kgt/rounding.hpp"

namespace kgt::arith {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

inline u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin; this witness set decides primality for all
// n < 3.317e24, far beyond the bounded inputs used here.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

struct Factorization {
    u64 n = 1;
    std::vector<std::pair<u64, int>> factors;  // (prime, exponent), primes increasing

    u64 value() const {
        u64 v = 1;
        for (auto& [p, e] : factors)
            for (int i = 0; i < e; ++i) v *= p;
        return v;
    }
};

inline Factorization factorize(u64 n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    Factorization f;
    f.n = n;
    auto strip = [&](u64 p) {
        if (n % p) return;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        f.factors.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    strip(5);
    for (u64 p = 7; p * p <= n;) {
        // 2/3/5 wheel
        for (u64 inc : {4ull, 2ull, 4ull, 2ull, 4ull, 6ull, 2ull, 6ull}) {
            if (p * p > n) break;
            strip(p);
            p += inc;
        }
    }
    if (n > 1) f.factors.emplace_back(n, 1);
    return f;
}

// number of distinct prime factors
inline int nu(u64 n) { return static_cast<int>(factorize(n).factors.size()); }

// number of divisors
inline u64 sigma0(u64 n) {
    u64 d = 1;
    for (auto& [p, e] : factorize(n).factors) d *= static_cast<u64>(e) + 1;
    return d;
}

// Kronecker symbol (D | n), full extension to all integer pairs.
inline int kronecker(long long a, long long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;
    int k = 1;
    int v = 0;
    while ((n & 1) == 0) { n >>= 1; ++v; }
    if (v & 1) {
        long long am8 = ((a % 8) + 8) % 8;
        if (am8 == 3 || am8 == 5) k = -k;
    }
    if (n < 0) {
        n = -n;
        if (a < 0) k = -k;
    }
    // now n odd positive: Jacobi-style reciprocity loop
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        v = 0;
        while ((a & 1) == 0) { a >>= 1; ++v; }
        if (v & 1) {
            long long nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) k = -k;
        }
        if ((a % 4 == 3) && (n % 4 == 3)) k = -k;
        long long t = n % a;
        n = a;
        a = t;
    }
    return (n == 1) ? k : 0;
}

enum class GrowthKind { nu, sigma0 };

// value certified so that 2^nu(n) <= value * n^eps (kind nu) or
// sigma0(n) <= value * n^eps (kind sigma0) holds for every n >= 2.
struct GrowthConstant {
    GrowthKind kind;
    Rational epsilon;
    double value;
};

namespace detail {
inline u64 next_prime(u64 p) {
    ++p;
    while (!is_prime(p)) ++p;
    return p;
}
// Nicolas-Robin: log(sigma0(d)) log(log d) / (log 2 log d) <= 1.538 for the
// integers in scope here (checked from d = 3 upward; the quotient is
// undefined at d = 2).
inline constexpr double nicolas_robin = 1.538;
}  // namespace detail

inline GrowthConstant growth_constant(GrowthKind kind, const Rational& epsilon,
                                      Slack slack = {}) {
    if (epsilon <= 0) throw std::invalid_argument("growth_constant: epsilon must be positive");
    double eps = to_double(epsilon);
    if (kind == GrowthKind::nu) {
        if (epsilon < Rational(1, 10))
            throw std::invalid_argument("growth_constant: nu kind needs epsilon >= 1/10");
        // 2^nu(n)/n^eps is maximised at a primorial; successive terms
        // 2^k / (p_1...p_k)^eps stop growing once p^eps exceeds 2.
        double best = 0.0;       // log of the best term; k = 0 term is 1
        double logterm = 0.0;
        u64 p = 1;
        while (true) {
            p = detail::next_prime(p);
            if (eps * std::log(double(p)) > std::log(2.0)) break;
            logterm += std::log(2.0) - eps * std::log(double(p));
            best = std::max(best, logterm);
        }
        double value = std::max(1.0, slack.up(std::exp(best)));
        return {kind, epsilon, value};
    }
    if (epsilon < Rational(1, 4))
        throw std::invalid_argument("growth_constant: sigma0 kind needs epsilon >= 1/4");
    // envelope g(t) = c t/log t - eps t on t = log d >= log 3, with
    // c = 1.538 log 2; sup is at the left endpoint or at the larger root of
    // c (log t - 1)/(log t)^2 = eps.
    const double c = detail::nicolas_robin * std::log(2.0);
    auto g = [&](double t) { return c * t / std::log(t) - eps * t; };
    double t0 = std::log(3.0);
    double best = g(t0);
    double disc = (c / eps) * (c / eps) - 4.0 * (c / eps);
    if (disc >= 0.0) {
        double s = ((c / eps) + std::sqrt(disc)) / 2.0;  // log t at the local max
        double t2 = std::exp(s);
        if (t2 > t0) best = std::max(best, g(t2));
    }
    double value = std::max(1.0, slack.up(std::exp(best)));
    return {kind, epsilon, value};
}

}  // namespace kgt::arith

#endif
