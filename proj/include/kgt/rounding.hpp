#ifndef KGT_ROUNDING_HPP
#define KGT_ROUNDING_HPP

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace kgt {

// Outward rounding for certified bounds: upper bounds are nudged up and
// lower bounds down by a relative slack of 2^-bits, which dominates the
// accumulated double-precision evaluation error of the closed forms here.
struct Slack {
    int bits = 40;

    double eps() const { return std::ldexp(1.0, -bits); }
    double up(double x) const { return x + std::fabs(x) * eps(); }
    double down(double x) const { return x - std::fabs(x) * eps(); }
};

// Default slack, overridable through KGT_SLACK_BITS.
inline Slack slack_from_env() {
    Slack s;
    if (const char* v = std::getenv("KGT_SLACK_BITS")) {
        int b = std::atoi(v);
        if (b < 1 || b > 52) throw std::invalid_argument("KGT_SLACK_BITS out of range [1,52]");
        s.bits = b;
    }
    return s;
}

}  // namespace kgt

#endif
