#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "kgt/bqf.hpp"

using namespace kgt;

TEST_CASE("form predicates") {
    REQUIRE(bqf::BinaryQuadraticForm{1, 1, 6}.is_reduced());
    REQUIRE(bqf::BinaryQuadraticForm{2, -1, 3}.is_reduced());
    REQUIRE_FALSE(bqf::BinaryQuadraticForm{2, -2, 3}.is_reduced());  // b < 0 with |b| = a
    REQUIRE_FALSE(bqf::BinaryQuadraticForm{3, 1, 2}.is_reduced());   // a > c
    REQUIRE_FALSE(bqf::BinaryQuadraticForm{1, 0, -1}.is_reduced());  // indefinite
    REQUIRE(bqf::BinaryQuadraticForm{2, 2, 2}.discriminant() == -12);
    REQUIRE_FALSE(bqf::BinaryQuadraticForm{2, 2, 2}.is_primitive());
}

TEST_CASE("exact class numbers by reduced-form enumeration") {
    REQUIRE(bqf::class_number_exact(-3) == 1);
    REQUIRE(bqf::class_number_exact(-4) == 1);
    REQUIRE(bqf::class_number_exact(-23) == 3);
    REQUIRE(bqf::class_number_exact(-8) == 1);
    REQUIRE(bqf::class_number_exact(-24) == 2);
    // a few classical values
    REQUIRE(bqf::class_number_exact(-163) == 1);
    REQUIRE(bqf::class_number_exact(-5460) == 16);

    REQUIRE_THROWS_AS(bqf::class_number_exact(-5), std::invalid_argument);
    REQUIRE_THROWS_AS(bqf::class_number_exact(5), std::invalid_argument);
}

TEST_CASE("character decomposition") {
    auto c = bqf::decompose_character(-12);
    REQUIRE(c.fundamental_discriminant == -3);
    REQUIRE(c.f == 2);
    REQUIRE(c.conductor == 3);
    REQUIRE(c.parity == bqf::Parity::odd);

    auto c2 = bqf::decompose_character(-4);
    REQUIRE(c2.fundamental_discriminant == -4);
    REQUIRE(c2.f == 1);

    auto c3 = bqf::decompose_character(-108);
    REQUIRE(c3.fundamental_discriminant == -3);
    REQUIRE(c3.f == 6);

    SECTION("D0 f^2 = D and psi matches the Kronecker character off the bad primes") {
        for (long long d = -3; d >= -400; --d) {
            long long r = ((d % 4) + 4) % 4;
            if (r != 0 && r != 1) continue;
            auto cd = bqf::decompose_character(d);
            REQUIRE(cd.fundamental_discriminant * cd.f * cd.f == d);
            for (long long n = 1; n <= 100; ++n) {
                if (std::gcd(n, -d) != 1) continue;
                REQUIRE(cd.psi(n) == arith::kronecker(d, n));
            }
        }
    }
}

TEST_CASE("kappa constants") {
    REQUIRE(bqf::kappa(bqf::Parity::even) == Catch::Approx(0.046191).margin(1e-5));
    REQUIRE(bqf::kappa(bqf::Parity::odd) == Catch::Approx(1.432486).margin(1e-5));
    REQUIRE(bqf::kappa(bqf::Parity::odd) - bqf::kappa(bqf::Parity::even) ==
            Catch::Approx(std::log(4.0)).epsilon(1e-12));
    REQUIRE(bqf::kappa_prime() == bqf::kappa(bqf::Parity::odd));
}

TEST_CASE("analytic bound dominates the exact class number") {
    REQUIRE(bqf::count_B_classes_bound(6) >= bqf::class_number_exact(-24));
    REQUIRE(bqf::count_B_classes_bound(2) >= bqf::class_number_exact(-8));
    REQUIRE_THROWS_AS(bqf::count_B_classes_bound(1), std::invalid_argument);

    for (long long beta = 2; beta <= 2000; ++beta)
        REQUIRE(bqf::class_number_exact(-4 * beta) <= bqf::count_B_classes_bound(beta));
}

namespace {

// analytic class number via a truncated character sum; the cutoff makes the
// partial-sum tail contribute less than 0.4 to the class number
double analytic_h_truncated(long long d) {
    long long q = -d;
    std::vector<int> chi(q);
    for (long long r = 0; r < q; ++r) chi[r] = arith::kronecker(d, r);
    double sqd = std::sqrt(double(q));
    long long cutoff =
        (long long)(double(q) * sqd / (0.4 * std::numbers::pi)) + 1;
    double l = 0;
    for (long long n = 1; n <= cutoff; ++n) l += double(chi[n % q]) / double(n);
    return sqd * l / std::numbers::pi;
}

}  // namespace

TEST_CASE("exact count matches the analytic class number formula") {
    // 100 fundamental discriminants below -4, spread over [-10^4, -7]
    std::vector<long long> sample;
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<long long> dist(7, 10000);
    while (sample.size() < 100) {
        long long q = dist(rng);
        long long d = -q;
        long long r = ((d % 4) + 4) % 4;
        if (r != 0 && r != 1) continue;
        if (bqf::decompose_character(d).f != 1) continue;  // fundamental only
        sample.push_back(d);
    }
    for (long long d : sample) {
        double approx = analytic_h_truncated(d);
        double exact = double(bqf::class_number_exact(d));
        REQUIRE(std::abs(approx - exact) < 0.5);
    }
}
