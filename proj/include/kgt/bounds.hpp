#ifndef KGT_BOUNDS_HPP
#define KGT_BOUNDS_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "kgt/arith.hpp"
#include "kgt/lattice.hpp"
#include "kgt/rational.hpp"
#include "kgt/rounding.hpp"

namespace kgt::bounds {

// Apery's constant zeta(3), OEIS A002117, 30 digits.
inline constexpr double zeta3 = 1.20205690315959428539973816151;

inline constexpr double euler_gamma = 0.57721566490153286060651209008240;

inline void require_d48(long long d) {
    if (d < 48) throw std::invalid_argument("bound requires d >= 48");
}

// (12d)^(5/2) / (497664 zeta(3) pi^3), rounded down
inline double alpha0_lower(long long d, Slack slack = {}) {
    require_d48(d);
    double pi = std::numbers::pi;
    double v = std::pow(12.0 * double(d), 2.5) / (497664.0 * zeta3 * pi * pi * pi);
    return slack.down(v);
}

// (108199 / 360 pi^2) d^2 + (3243945 / 64 pi^2) d^(1/6), rounded up
inline double alpha1_upper(long long d, Slack slack = {}) {
    require_d48(d);
    double pi2 = std::numbers::pi * std::numbers::pi;
    double v = 108199.0 / (360.0 * pi2) * double(d) * double(d) +
               3243945.0 / (64.0 * pi2) * std::pow(double(d), 1.0 / 6.0);
    return slack.up(v);
}

// 2(4-a)^3 + 6(4-a)^2 + 8(4-a) + 4
inline long long D_of_a(int a) {
    if (a < 1 || a > 3) throw std::invalid_argument("D_of_a: a must be 1, 2 or 3");
    long long t = 4 - a;
    return 2 * t * t * t + 6 * t * t + 8 * t + 4;
}

// per-embedding contribution cap: 16 D(a) r^2 / (675 pi^2)
inline double beta_K_bound(int a, long long r, Slack slack = {}) {
    if (r <= 0) throw std::invalid_argument("beta_K_bound: r must be positive");
    double pi2 = std::numbers::pi * std::numbers::pi;
    return slack.up(16.0 * double(D_of_a(a)) * double(r) * double(r) / (675.0 * pi2));
}

// (256 D(a) / 225 pi^2) (K_nu^3 K_sigma0 / (3+eps)) 3^eps 8^(3+eps)
//   * d^(3/2 + 3 eps/2 + eps), rounded up; the divisor-count growth exponent
// is taken equal to eps.
inline double alpha2_upper(long long d, const Rational& epsilon, int a, Slack slack = {}) {
    require_d48(d);
    double eps = to_double(epsilon);
    double knu = arith::growth_constant(arith::GrowthKind::nu, epsilon, slack).value;
    double ksig = arith::growth_constant(arith::GrowthKind::sigma0, epsilon, slack).value;
    double pi2 = std::numbers::pi * std::numbers::pi;
    double v = 256.0 * double(D_of_a(a)) / (225.0 * pi2) * (knu * knu * knu * ksig) /
               (3.0 + eps) * std::pow(3.0, eps) * std::pow(8.0, 3.0 + eps) *
               std::pow(double(d), 1.5 + 1.5 * eps + eps);
    return slack.up(v);
}

// full boundary point-count bound with leading constant 11520/pi and
// det L = 12d (asserted against the lattice)
inline double pcount_upper(long long d, const Rational& epsilon, const Rational& gamma,
                           Slack slack = {}, double leading = 11520.0) {
    if (d < 1) throw std::invalid_argument("pcount_upper: d must be positive");
    if (lattice::kummer_lattice(d).determinant() != Int(12) * d)
        throw std::logic_error("pcount_upper: lattice determinant is not 12d");
    double eps = to_double(epsilon);
    double gam = to_double(gamma);
    double knu = arith::growth_constant(arith::GrowthKind::nu, epsilon, slack).value;
    double ksig = arith::growth_constant(arith::GrowthKind::sigma0, gamma, slack).value;
    double detl = 12.0 * double(d);
    double kap = 2.0 + euler_gamma - std::log(std::numbers::pi);
    double v = leading / std::numbers::pi * std::sqrt(detl) *
               (std::log(4.0 * detl) + kap) * std::exp(euler_gamma) *
               std::log(std::log(4.0 * detl)) * std::pow(knu, 1.0 + eps) *
               std::pow(detl, 1.5 + 0.5 * eps) *
               (ksig * ksig * std::pow(detl, 2.0 * gam) + 4.0 * ksig * std::pow(detl, gam) + 4.0);
    return slack.up(v);
}

// same product with leading constant 40/pi: the per-point obstruction space
// has quartic coefficient 1/288 and 11520/288 = 40 exactly
inline double alpha3_upper(long long d, const Rational& epsilon, const Rational& gamma,
                           Slack slack = {}) {
    static_assert(11520 % 288 == 0 && 11520 / 288 == 40);
    return pcount_upper(d, epsilon, gamma, slack, 40.0);
}

enum class RoundDir { down, up };

struct Directed {
    double value;
    RoundDir dir;
};

struct CertificateParams {
    long long d = 48;
    Rational epsilon{1, 4};
    Rational gamma{1, 4};
    int a = 3;
    int slack_bits = 40;
};

struct BoundConstants {
    double K_nu;       // growth constant for 2^nu at epsilon
    double K_sigma0;   // growth constant for sigma0 at gamma
    double kappa_prime;
};

struct BoundReport {
    long long d;
    double epsilon, gamma;
    int a;
    Directed alpha0, alpha1, alpha2, alpha3;
    BoundConstants constants;
    double margin;  // alpha0 - alpha1 - alpha2 - alpha3
    bool verdict;   // margin > 0
};

inline BoundReport certify(const CertificateParams& p) {
    require_d48(p.d);
    Slack slack{p.slack_bits};
    BoundReport r;
    r.d = p.d;
    r.epsilon = to_double(p.epsilon);
    r.gamma = to_double(p.gamma);
    r.a = p.a;
    r.alpha0 = {alpha0_lower(p.d, slack), RoundDir::down};
    r.alpha1 = {alpha1_upper(p.d, slack), RoundDir::up};
    r.alpha2 = {alpha2_upper(p.d, p.epsilon, p.a, slack), RoundDir::up};
    r.alpha3 = {alpha3_upper(p.d, p.epsilon, p.gamma, slack), RoundDir::up};
    r.constants = {arith::growth_constant(arith::GrowthKind::nu, p.epsilon, slack).value,
                   arith::growth_constant(arith::GrowthKind::sigma0, p.gamma, slack).value,
                   2.0 + euler_gamma - std::log(std::numbers::pi)};
    r.margin = r.alpha0.value - r.alpha1.value - r.alpha2.value - r.alpha3.value;
    r.verdict = r.margin > 0.0;
    return r;
}

// d-growth exponents of the four terms; the margin is eventually positive
// only when e0 strictly dominates the rest (log factors are subpolynomial)
struct ExponentComparison {
    Rational e0, e1, e2, e3;
    bool dominant;
};

inline ExponentComparison alpha_exponents(const Rational& epsilon, const Rational& gamma) {
    ExponentComparison c;
    c.e0 = Rational(5, 2);
    c.e1 = Rational(2);
    c.e2 = Rational(3, 2) + Rational(3, 2) * epsilon + epsilon;
    c.e3 = Rational(2) + epsilon / 2 + 2 * gamma;
    c.dominant = c.e1 < c.e0 && c.e2 < c.e0 && c.e3 < c.e0;
    return c;
}

// least x in [lo, hi] with pred(x) true, assuming pred is monotone
// (false then true); nullopt when pred is false on all of [lo, hi]
inline std::optional<long long> find_least_true(const std::function<bool(long long)>& pred,
                                                long long lo, long long hi) {
    if (lo > hi) return std::nullopt;
    if (pred(lo)) return lo;
    // exponential probe for some true point
    long long step = 1;
    long long last_false = lo;
    long long found = -1;
    while (true) {
        long long next = (hi - last_false > step) ? last_false + step : hi;
        if (pred(next)) { found = next; break; }
        last_false = next;
        if (next == hi) return std::nullopt;
        if (step > (hi - next) / 2) step = hi - next; else step *= 2;
    }
    long long a = last_false, b = found;  // pred(a) false, pred(b) true
    while (b - a > 1) {
        long long mid = a + (b - a) / 2;
        if (pred(mid)) b = mid; else a = mid;
    }
    return b;
}

// least d >= 48 with a positive certified margin, scanning up to d_max;
// verifies the verdict stays true on a spread of sample points above
inline std::optional<long long> threshold_scan(const Rational& epsilon, const Rational& gamma,
                                               long long d_max, int slack_bits = 40) {
    if (d_max > 1000000000000LL)
        throw std::invalid_argument("threshold_scan: d_max exceeds the 10^12 cap");
    if (d_max < 48) return std::nullopt;
    auto verdict = [&](long long d) {
        CertificateParams p{d, epsilon, gamma, 3, slack_bits};
        return certify(p).verdict;
    };
    auto d0 = find_least_true(verdict, 48, d_max);
    if (!d0) return std::nullopt;
    long long span = d_max - *d0;
    for (int i = 1; i <= 100; ++i) {
        long long d = *d0 + (span / 100) * i;
        if (d > d_max) d = d_max;
        if (!verdict(d))
            throw std::logic_error("threshold_scan: verdict flipped back above the threshold");
    }
    return d0;
}

}  // namespace kgt::bounds

#endif
