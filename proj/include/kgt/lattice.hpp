#ifndef KGT_LATTICE_HPP
#define KGT_LATTICE_HPP

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "kgt/arith.hpp"
#include "kgt/linalg.hpp"
#include "kgt/rational.hpp"

namespace kgt::lattice {

using arith::u64;

struct GramMatrix {
    IMat m;

    GramMatrix() = default;
    explicit GramMatrix(IMat mm) : m(std::move(mm)) {
        if (m.rows() != m.cols()) throw std::invalid_argument("GramMatrix: not square");
        if (!m.is_symmetric()) throw std::invalid_argument("GramMatrix: not symmetric");
    }

    std::size_t dim() const { return m.rows(); }
    Int determinant() const { return det(m); }
    std::tuple<int, int, int> signature() const { return kgt::signature(to_rational(m)); }
};

// U + U + <-6> + <-2d>
inline GramMatrix kummer_lattice(long long d) {
    if (d <= 0) throw std::invalid_argument("kummer_lattice: d must be positive");
    IMat g(6, 6);
    g(0, 1) = g(1, 0) = 1;
    g(2, 3) = g(3, 2) = 1;
    g(4, 4) = -6;
    g(5, 5) = Int(-2) * d;
    return GramMatrix(g);
}

struct PrimaryPart {
    Int prime;
    int exponent;
    Int order;      // prime^exponent
    Rational norm;  // q on the distinguished generator of this part, in [0, 2)
};

struct DiscriminantGroup {
    std::vector<Int> cyclic_orders;        // invariant factors > 1, ascending divisibility
    std::vector<Rational> generator_norms; // q-values of the matching generators, in [0, 2)
    Int order;
    std::vector<PrimaryPart> primary;      // prime-power splitting of the cyclic factors
};

inline DiscriminantGroup discriminant_group(const GramMatrix& g) {
    std::size_t n = g.dim();
    SmithForm f = smith_normal_form(g.m);
    Int detabs = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (f.s(i, i) == 0) throw std::invalid_argument("discriminant_group: singular Gram matrix");
        detabs *= f.s(i, i);
    }
    RMat ginv = inverse(g.m);
    RMat uinv = inverse(f.u);
    DiscriminantGroup out;
    out.order = detabs;
    for (std::size_t i = 0; i < n; ++i) {
        Int s = f.s(i, i);
        if (s == 1) continue;
        // generator of the Z/s factor, as a dual-basis coordinate vector
        std::vector<Rational> gen(n);
        for (std::size_t r = 0; r < n; ++r) gen[r] = uinv(r, i);
        Rational norm = 0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) norm += gen[r] * ginv(r, c) * gen[c];
        norm = mod_2z(norm);
        out.cyclic_orders.push_back(s);
        out.generator_norms.push_back(norm);
        for (auto& [p, e] : arith::factorize(s.convert_to<u64>()).factors) {
            Int pk = 1;
            for (int t = 0; t < e; ++t) pk *= p;
            Int mult = s / pk;
            out.primary.push_back({Int(p), e, pk, mod_2z(Rational(mult * mult) * norm)});
        }
    }
    return out;
}

// A finite quadratic form on a product of cyclic groups, given by fixed
// generators with q-values in Q/2Z and pairings in Q/Z.
struct FiniteQuadraticForm {
    std::vector<Int> orders;
    std::vector<Rational> norms;  // q(g_i) mod 2Z
    RMat pairing;                 // b(g_i, g_j) mod 1

    std::size_t ngens() const { return orders.size(); }

    Int order() const {
        Int n = 1;
        for (const Int& o : orders) n *= o;
        return n;
    }

    Rational q(const std::vector<Int>& x) const {
        Rational out = 0;
        for (std::size_t i = 0; i < ngens(); ++i) {
            out += Rational(x[i] * x[i]) * norms[i];
            for (std::size_t j = i + 1; j < ngens(); ++j)
                out += Rational(2 * x[i] * x[j]) * pairing(i, j);
        }
        return mod_2z(out);
    }

    Rational b(const std::vector<Int>& x, const std::vector<Int>& y) const {
        Rational out = 0;
        for (std::size_t i = 0; i < ngens(); ++i)
            for (std::size_t j = 0; j < ngens(); ++j) out += Rational(x[i] * y[j]) * pairing(i, j);
        return mod_1z(out);
    }
};

// discriminant form of U + U + <-6> + <-2d>: C_6 x C_2d with generator
// q-values -1/6 and -1/(2d)
inline FiniteQuadraticForm kummer_discriminant_form(long long d) {
    if (d <= 0) throw std::invalid_argument("kummer_discriminant_form: d must be positive");
    FiniteQuadraticForm f;
    f.orders = {Int(6), Int(2) * d};
    f.norms = {mod_2z(Rational(-1, 6)), mod_2z(Rational(-1, Int(2) * d))};
    f.pairing = RMat(2, 2);
    f.pairing(0, 0) = mod_1z(f.norms[0]);
    f.pairing(1, 1) = mod_1z(f.norms[1]);
    return f;
}

// expected prime-power decomposition of the discriminant group of
// kummer_lattice(d): (order 2, norm -3/2) and (order 3, norm -2/3) from the
// <-6> part, plus (order p^k, norm -2d/p^2k) for every p^k exactly dividing 2d
inline std::vector<std::pair<Int, Rational>> kummer_expected_primary(long long d) {
    std::vector<std::pair<Int, Rational>> parts;
    parts.emplace_back(Int(2), mod_2z(Rational(-3, 2)));
    parts.emplace_back(Int(3), mod_2z(Rational(-2, 3)));
    Int twod = Int(2) * d;
    for (auto& [p, e] : arith::factorize(static_cast<u64>(2) * d).factors) {
        Int pk = 1;
        for (int t = 0; t < e; ++t) pk *= p;
        parts.emplace_back(pk, mod_2z(Rational(-twod, pk * pk)));
    }
    return parts;
}

// Count automorphisms of a finite quadratic form by enumerating generator
// images; exact but exponential in the group order, so capped.
inline u64 automorphism_count(const FiniteQuadraticForm& f, u64 cap = 400) {
    Int n_big = f.order();
    if (n_big > cap) throw std::invalid_argument("automorphism_count: group order exceeds cap");
    u64 n = n_big.convert_to<u64>();
    std::size_t k = f.ngens();
    if (k == 0) return 1;

    // all elements as coordinate tuples
    std::vector<std::vector<Int>> elems;
    elems.reserve(n);
    std::vector<Int> cur(k, 0);
    while (true) {
        elems.push_back(cur);
        std::size_t i = 0;
        while (i < k) {
            cur[i] += 1;
            if (cur[i] < f.orders[i]) break;
            cur[i] = 0;
            ++i;
        }
        if (i == k) break;
    }

    auto add = [&](const std::vector<Int>& x, const std::vector<Int>& y) {
        std::vector<Int> z(k);
        for (std::size_t i = 0; i < k; ++i) z[i] = (x[i] + y[i]) % f.orders[i];
        return z;
    };
    auto key = [&](const std::vector<Int>& x) {
        u64 id = 0;
        for (std::size_t i = 0; i < k; ++i)
            id = id * f.orders[i].convert_to<u64>() + x[i].convert_to<u64>();
        return id;
    };

    // per-generator candidate images: must kill the generator's order and
    // carry the same q-value
    std::vector<std::vector<std::size_t>> cand(k);
    for (std::size_t gi = 0; gi < k; ++gi) {
        for (std::size_t e = 0; e < elems.size(); ++e) {
            bool killed = true;
            for (std::size_t i = 0; i < k && killed; ++i)
                killed = ((f.orders[gi] * elems[e][i]) % f.orders[i] == 0);
            if (!killed) continue;
            if (f.q(elems[e]) != f.norms[gi]) continue;
            cand[gi].push_back(e);
        }
    }

    std::vector<Int> unit(k, 0);
    u64 count = 0;
    std::vector<std::size_t> pick(k);
    auto generates = [&](const std::vector<std::size_t>& sel) {
        std::set<u64> seen;
        std::vector<std::vector<Int>> frontier{std::vector<Int>(k, 0)};
        seen.insert(key(frontier[0]));
        while (!frontier.empty()) {
            std::vector<Int> x = frontier.back();
            frontier.pop_back();
            for (std::size_t gi = 0; gi < k; ++gi) {
                std::vector<Int> y = add(x, elems[sel[gi]]);
                if (seen.insert(key(y)).second) frontier.push_back(y);
            }
        }
        return seen.size() == n;
    };
    // depth-first over image tuples with pairwise pairing checks
    auto dfs = [&](auto&& self, std::size_t gi) -> void {
        if (gi == k) {
            if (generates(pick)) ++count;
            return;
        }
        for (std::size_t c : cand[gi]) {
            bool ok = true;
            for (std::size_t j = 0; j < gi && ok; ++j) {
                std::vector<Int> gj(k, 0);
                gj[j] = 1;
                std::vector<Int> gicoord(k, 0);
                gicoord[gi] = 1;
                ok = (f.b(elems[pick[j]], elems[c]) == f.b(gj, gicoord));
            }
            if (!ok) continue;
            pick[gi] = c;
            self(self, gi + 1);
        }
    };
    dfs(dfs, 0);
    return count;
}

// exact automorphism count of the discriminant form of kummer_lattice(d)
inline u64 oqL_order_oracle(long long d, u64 cap = 400) {
    if (d <= 0) throw std::invalid_argument("oqL_order_oracle: d must be positive");
    if (Int(12) * d > cap) throw std::invalid_argument("oqL_order_oracle: 12d exceeds cap");
    return automorphism_count(kummer_discriminant_form(d), cap);
}

// 2880 * 2^nu(2d)
inline Int index_bound(long long d) {
    if (d <= 0) throw std::invalid_argument("index_bound: d must be positive");
    return Int(2880) << arith::nu(static_cast<u64>(2) * d);
}

// Exhaustive residue count for the norm congruences in the 2- and 3-primary
// parts of the discriminant group. For prime_part 2 this counts q mod 2^a
// (2^a || 2d) with
//   3 p^2 2^(2a-1) + 2d (q^2 - 1) = 0  mod 2^(2a+1),   p in {0, 1};
// for prime_part 3 it counts q mod 3^b (3^b || 2d) with
//   p^2 3^(2b) + 3d (q^2 - 1) = 0  mod 3^(2b+1),       p in {0, 1, 2}.
inline u64 count_congruence_solutions(long long d, int p_fixed, int prime_part) {
    if (d <= 0) throw std::invalid_argument("count_congruence_solutions: d must be positive");
    Int twod = Int(2) * d;
    if (prime_part == 2) {
        if (p_fixed != 0 && p_fixed != 1)
            throw std::invalid_argument("count_congruence_solutions: p_fixed must be 0 or 1");
        int a = 0;
        Int t = twod;
        while (t % 2 == 0) { t /= 2; ++a; }
        Int pow_a = Int(1) << a;
        Int mod = Int(1) << (2 * a + 1);
        Int fixed_term = Int(3) * p_fixed * p_fixed * (Int(1) << (2 * a - 1));
        u64 count = 0;
        for (Int q = 0; q < pow_a; ++q) {
            Int v = fixed_term + twod * (q * q - 1);
            if (v % mod == 0) ++count;
        }
        return count;
    }
    if (prime_part == 3) {
        if (p_fixed < 0 || p_fixed > 2)
            throw std::invalid_argument("count_congruence_solutions: p_fixed must be in {0,1,2}");
        int b = 0;
        Int t = twod;
        while (t % 3 == 0) { t /= 3; ++b; }
        Int pow_b = 1;
        for (int i = 0; i < b; ++i) pow_b *= 3;
        Int mod = pow_b * pow_b * 3;
        Int fixed_term = Int(p_fixed) * p_fixed * pow_b * pow_b;
        u64 count = 0;
        for (Int q = 0; q < pow_b; ++q) {
            Int v = fixed_term + Int(3) * d * (q * q - 1);
            if (v % mod == 0) ++count;
        }
        return count;
    }
    throw std::invalid_argument("count_congruence_solutions: prime_part must be 2 or 3");
}

// --- normal forms of the pairing block D of a rank-2 isotropic sublattice ---

struct IsotropicNormalForm {
    long long a = 1, e = 1;
    IMat b;  // 2x2 negative definite
    IMat d;  // 2x2 symmetric, entries reduced

    bool is_valid() const {
        if (a < 1 || e < 1) return false;
        if (b.rows() != 2 || !b.is_symmetric()) return false;
        if (!(b(0, 0) < 0 && det(b) > 0)) return false;  // negative definite
        if (d.rows() != 2 || !d.is_symmetric()) return false;
        Int two_ae = Int(2) * a * e;
        return d(0, 0) >= 0 && d(0, 0) < two_ae && d(0, 1) >= 0 && d(0, 1) < a &&
               d(1, 1) >= 0 && d(1, 1) < Int(2) * a;
    }
};

// effect of the unipotent base change with top-right block W on the D block:
// with W = [[w, x], [y, z]], D gains a * [[2ey, ez + w], [ez + w, 2x]]
inline IMat cob_effect(const IMat& w, long long a, long long e) {
    IMat out(2, 2);
    out(0, 0) = Int(2) * a * e * w(1, 0);
    out(0, 1) = out(1, 0) = a * (Int(e) * w(1, 1) + w(0, 0));
    out(1, 1) = Int(2) * a * w(0, 1);
    return out;
}

struct DReduction {
    IMat reduced;  // D11 in [0, 2ae), D12 in [0, a), D22 in [0, 2a)
    IMat w;        // base-change block realizing the reduction
};

inline DReduction reduce_D_block(const IMat& d, long long a, long long e) {
    if (a < 1 || e < 1) throw std::invalid_argument("reduce_D_block: a, e must be positive");
    if (d.rows() != 2 || d.cols() != 2 || !d.is_symmetric())
        throw std::invalid_argument("reduce_D_block: D must be 2x2 symmetric");
    IMat w(2, 2);
    w(1, 0) = -floor_div(d(0, 0), Int(2) * a * e);
    w(0, 1) = -floor_div(d(1, 1), Int(2) * a);
    w(0, 0) = -floor_div(d(0, 1), Int(a));
    // w(1,1) stays 0: the off-diagonal residue needs only one free entry
    DReduction r{d + cob_effect(w, a, e), w};
    return r;
}

// --- explicit embedding of a congruence subgroup element ---

inline bool in_gamma1(const IMat& z, long long n) {
    if (z.rows() != 2 || z.cols() != 2) return false;
    if (det(z) != 1) return false;
    auto cong = [&](const Int& x, long long r) { return (x - r) % n == 0; };
    return cong(z(0, 0), 1) && cong(z(1, 0), 0) && cong(z(1, 1), 1);
}

// g_Z = [[U, 0, U W], [0, I, 0], [0, 0, Z]] with U = (A Z^-1 A^-1)^T and W an
// integral solution of W^T A + A W + Z^T D Z = D. Throws invalid_argument when
// Z is not in Gamma1(ae) and domain_error when no integral U or W exists
// (a precondition violation for valid inputs).
inline IMat build_gZ(const IMat& z, long long a, long long e, const IMat& d) {
    if (a < 1 || e < 1) throw std::invalid_argument("build_gZ: a, e must be positive");
    if (d.rows() != 2 || d.cols() != 2 || !d.is_symmetric())
        throw std::invalid_argument("build_gZ: D must be 2x2 symmetric");
    if (!in_gamma1(z, a * e)) throw std::invalid_argument("build_gZ: Z not in Gamma1(ae)");

    if (z(0, 1) % e != 0) throw std::domain_error("build_gZ: U = (A Z^-1 A^-1)^T not integral");
    IMat u(2, 2);
    u(0, 0) = z(1, 1);
    u(0, 1) = -Int(e) * z(1, 0);
    u(1, 0) = -z(0, 1) / e;
    u(1, 1) = z(0, 0);

    IMat m = d - z.transpose() * d * z;
    Int two_a = Int(2) * a;
    Int two_ae = two_a * e;
    if (m(0, 0) % two_a != 0 || m(1, 1) % two_ae != 0 || m(0, 1) % a != 0)
        throw std::domain_error("build_gZ: no integral W solves the pairing equation");
    IMat w(2, 2);
    w(0, 0) = m(0, 0) / two_a;
    w(1, 1) = m(1, 1) / two_ae;
    Int s = m(0, 1) / a;  // w12 + e w21 = s, both entries reduced toward zero
    w(1, 0) = s / e;      // integer division truncates toward zero
    w(0, 1) = s - e * w(1, 0);

    IMat g(6, 6);
    IMat uw = u * w;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            g(i, j) = u(i, j);
            g(i, 4 + j) = uw(i, j);
            g(4 + i, 4 + j) = z(i, j);
        }
    g(2, 2) = g(3, 3) = 1;

    // exact self-check on the U U part: [[0, A], [A, D]] must be preserved
    IMat a_blk(2, 2);
    a_blk(0, 0) = a;
    a_blk(1, 1) = Int(a) * e;
    IMat q4(4, 4), g4(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            q4(i, 2 + j) = a_blk(i, j);
            q4(2 + i, j) = a_blk(i, j);
            q4(2 + i, 2 + j) = d(i, j);
            g4(i, j) = u(i, j);
            g4(i, 2 + j) = uw(i, j);
            g4(2 + i, 2 + j) = z(i, j);
        }
    if (!(g4.transpose() * q4 * g4 == q4))
        throw std::logic_error("build_gZ: output does not preserve the pairing");
    return g;
}

// Membership test for the stabiliser conditions of a block upper triangular
// isometry against a Gram matrix [[0,0,A],[0,B,0],[A,0,D]]:
//   U^T A Z = A, X^T B X = B, X^T B Y + V^T A Z = 0,
//   Y^T B Y + Z^T A W + W^T A Z + Z^T D Z - D = 0, det U > 0.
inline bool is_in_NE(const IMat& g, const GramMatrix& q) {
    if (g.rows() != 6 || g.cols() != 6 || q.dim() != 6)
        throw std::invalid_argument("is_in_NE: expected 6x6 inputs");
    auto blk = [](const IMat& m, int bi, int bj) {
        IMat out(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) out(i, j) = m(2 * bi + i, 2 * bj + j);
        return out;
    };
    auto is_zero = [](const IMat& m) {
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (m(i, j) != 0) return false;
        return true;
    };
    if (!is_zero(blk(g, 1, 0)) || !is_zero(blk(g, 2, 0)) || !is_zero(blk(g, 2, 1)))
        throw std::invalid_argument("is_in_NE: g not block upper triangular");
    if (!is_zero(blk(q.m, 0, 0)) || !is_zero(blk(q.m, 0, 1)) || !is_zero(blk(q.m, 1, 2)))
        throw std::invalid_argument("is_in_NE: Gram matrix not in normal shape");
    IMat a = blk(q.m, 0, 2), b = blk(q.m, 1, 1), d = blk(q.m, 2, 2);
    IMat u = blk(g, 0, 0), v = blk(g, 0, 1), w = blk(g, 0, 2);
    IMat x = blk(g, 1, 1), y = blk(g, 1, 2), z = blk(g, 2, 2);
    IMat zero(2, 2);
    if (!(u.transpose() * a * z == a)) return false;
    if (!(x.transpose() * b * x == b)) return false;
    if (!(x.transpose() * b * y + v.transpose() * a * z == zero)) return false;
    IMat cond4 = y.transpose() * b * y + z.transpose() * a * w + w.transpose() * a * z +
                 z.transpose() * d * z - d;
    if (!is_zero(cond4)) return false;
    return det(u) > 0;
}

}  // namespace kgt::lattice

#endif
