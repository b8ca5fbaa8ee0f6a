#ifndef KGT_BQF_HPP
#define KGT_BQF_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "kgt/arith.hpp"
#include "kgt/rational.hpp"
#include "kgt/rounding.hpp"

namespace kgt::bqf {

// Euler-Mascheroni constant, OEIS A001620.
inline constexpr double euler_gamma = 0.57721566490153286060651209008240;

struct BinaryQuadraticForm {
    long long a, b, c;  // a x^2 + b xy + c y^2

    long long discriminant() const { return b * b - 4 * a * c; }

    bool is_primitive() const {
        return std::gcd(std::gcd(std::llabs(a), std::llabs(b)), std::llabs(c)) == 1;
    }

    // reduced positive definite: |b| <= a <= c, and b >= 0 when |b| = a or a = c
    bool is_reduced() const {
        if (a <= 0 || discriminant() >= 0) return false;
        if (!(std::llabs(b) <= a && a <= c)) return false;
        if (b < 0 && (-b == a || a == c)) return false;
        return true;
    }
};

inline void check_discriminant(long long d) {
    if (d >= 0) throw std::invalid_argument("discriminant must be negative");
    long long r = ((d % 4) + 4) % 4;
    if (r != 0 && r != 1) throw std::invalid_argument("discriminant must be 0 or 1 mod 4");
}

// h(D): number of classes of primitive positive definite forms of
// discriminant D, by enumerating reduced representatives with a <= sqrt(|D|/3).
inline long long class_number_exact(long long d) {
    check_discriminant(d);
    long long h = 0;
    for (long long a = 1; 3 * a * a <= -d; ++a) {
        long long b0 = (d % 2 == 0) ? 0 : 1;
        for (long long b = b0; b <= a; b += 2) {
            long long num = b * b - d;
            if (num % (4 * a) != 0) continue;
            long long c = num / (4 * a);
            if (c < a) continue;
            BinaryQuadraticForm f{a, b, c};
            if (!f.is_primitive()) continue;
            ++h;
            // the (a,-b,c) partner is a distinct class unless b = 0, b = a or a = c
            if (b != 0 && b != a && a != c) ++h;
        }
    }
    return h;
}

enum class Parity { even, odd };

struct CharacterDecomposition {
    long long modulus;                  // |D|, modulus of the Kronecker character of D
    long long fundamental_discriminant; // D0 with D = D0 f^2
    long long f;
    long long conductor;                // |D0|, conductor of the inducing primitive character
    Parity parity;

    // primitive character psi inducing the Kronecker character of D
    int psi(long long n) const { return arith::kronecker(fundamental_discriminant, n); }
};

inline CharacterDecomposition decompose_character(long long d) {
    check_discriminant(d);
    // squarefree kernel with sign
    long long core = -1;
    long long f = 1;
    for (auto& [p, e] : arith::factorize(static_cast<arith::u64>(-d)).factors) {
        for (int i = 0; i < e / 2; ++i) f *= static_cast<long long>(p);
        if (e % 2) core *= static_cast<long long>(p);
    }
    long long d0;
    if (((core % 4) + 4) % 4 == 1) {
        d0 = core;
    } else {
        d0 = 4 * core;
        f /= 2;  // D = D0 f^2 forces a factor 2 out of f
    }
    if (d0 * f * f != d) throw std::logic_error("decompose_character: internal inconsistency");
    return {-d, d0, f, -d0, Parity::odd};
}

// kappa constant of the L(1, chi) bound
inline double kappa(Parity p) {
    double pi = std::numbers::pi;
    return p == Parity::even ? 2.0 + euler_gamma - std::log(4.0 * pi)
                             : 2.0 + euler_gamma - std::log(pi);
}

inline double kappa_prime() { return kappa(Parity::odd); }

// Upper bound for the number of classes of the negative definite binary
// block of determinant beta (discriminant -4 beta):
//   (sqrt(beta)/pi) (log(4 beta) + kappa) prod_{p | 4 beta} (1 - psi(p)/p),
// with psi the primitive character attached to -4 beta. Always >= h(-4 beta).
inline double count_B_classes_bound(long long beta, Slack slack = {}) {
    if (beta <= 1) throw std::invalid_argument("count_B_classes_bound: beta must exceed 1");
    CharacterDecomposition cd = decompose_character(-4 * beta);
    Rational prod(1);
    for (auto& [p, e] : arith::factorize(static_cast<arith::u64>(4 * beta)).factors) {
        long long pl = static_cast<long long>(p);
        prod *= Rational(pl - cd.psi(pl), pl);
    }
    double value = std::sqrt(double(beta)) / std::numbers::pi *
                   (std::log(4.0 * double(beta)) + kappa(cd.parity)) * to_double(prod);
    return slack.up(value);
}

}  // namespace kgt::bqf

#endif
