#ifndef KGT_TORIC_HPP
#define KGT_TORIC_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "kgt/linalg.hpp"
#include "kgt/rational.hpp"

namespace kgt::toric {

using IVec = std::vector<Int>;
using QVec = std::vector<Rational>;

// Overlattice of Z^rank generated by finitely many rational vectors.
// A canonical Z-basis is extracted by Hermite reduction; all lattice points
// are handled through integer coordinates on that basis.
class AmbientLattice {
public:
    AmbientLattice(int rank, std::vector<QVec> gens) : rank_(rank), gens_(std::move(gens)) {
        Int q = 1;
        for (const auto& g : gens_) {
            if (static_cast<int>(g.size()) != rank_)
                throw std::invalid_argument("AmbientLattice: generator dimension mismatch");
            for (const auto& x : g) q = q * rat_den(x) / boost::multiprecision::gcd(q, rat_den(x));
        }
        IMat stacked(rank_ + gens_.size(), rank_);
        for (int i = 0; i < rank_; ++i) stacked(i, i) = q;
        for (std::size_t g = 0; g < gens_.size(); ++g)
            for (int j = 0; j < rank_; ++j) {
                Rational scaled = gens_[g][j] * Rational(q);
                if (rat_den(scaled) != 1)
                    throw std::logic_error("AmbientLattice: denominator clearing failed");
                stacked(rank_ + g, j) = rat_num(scaled);
            }
        IMat h = hermite_normal_form(stacked);
        if (static_cast<int>(h.rows()) != rank_)
            throw std::invalid_argument("AmbientLattice: generators do not span full rank");
        basis_ = RMat(rank_, rank_);
        for (int i = 0; i < rank_; ++i)
            for (int j = 0; j < rank_; ++j) basis_(i, j) = Rational(h(i, j), q);
        basis_inv_ = inverse(basis_);
        Rational d = det(basis_);
        Rational idx = 1 / (d < 0 ? -d : d);
        if (rat_den(idx) != 1) throw std::logic_error("AmbientLattice: non-integral index");
        index_ = rat_num(idx);
    }

    int rank() const { return rank_; }
    Int index() const { return index_; }
    const RMat& basis() const { return basis_; }

    // lattice coordinates of an ambient rational vector, if it lies in the lattice
    std::optional<IVec> try_coords(const QVec& v) const {
        IVec c(rank_);
        for (int j = 0; j < rank_; ++j) {
            Rational cj = 0;
            for (int i = 0; i < rank_; ++i) cj += v[i] * basis_inv_(i, j);
            if (rat_den(cj) != 1) return std::nullopt;
            c[j] = rat_num(cj);
        }
        return c;
    }

    bool contains(const QVec& v) const { return try_coords(v).has_value(); }

    IVec coords(const QVec& v) const {
        auto c = try_coords(v);
        if (!c) throw std::invalid_argument("AmbientLattice: vector not in lattice");
        return *c;
    }

    QVec from_coords(const IVec& c) const {
        QVec v(rank_, Rational(0));
        for (int j = 0; j < rank_; ++j)
            for (int i = 0; i < static_cast<int>(c.size()); ++i)
                v[j] += Rational(c[i]) * basis_(i, j);
        return v;
    }

private:
    int rank_;
    std::vector<QVec> gens_;
    RMat basis_, basis_inv_;
    Int index_;
};

inline IVec primitive(IVec v) {
    Int g = 0;
    for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
    if (g == 0) throw std::invalid_argument("primitive: zero vector");
    for (Int& x : v) x /= g;
    return v;
}

struct Cone {
    std::vector<IVec> rays;  // primitive, lattice coordinates
};

struct Fan {
    AmbientLattice lattice;
    std::vector<IVec> rays;                   // primitive, lattice coordinates
    std::vector<std::vector<int>> max_cones;  // ray indices per maximal cone

    Cone cone(std::size_t i) const {
        Cone c;
        for (int r : max_cones.at(i)) c.rays.push_back(rays.at(r));
        return c;
    }
    QVec ray_ambient(int i) const { return lattice.from_coords(rays.at(i)); }
};

// Subdivided cone over e1..e4 in the overlattice generated by (1,1,1,2)/6:
// rays e1..e4, (1,1,1,0)/2, (1,1,1,2)/6 and the six maximal cones through
// the last ray.
inline Fan kummer_resolution_fan() {
    QVec g = {Rational(1, 6), Rational(1, 6), Rational(1, 6), Rational(1, 3)};
    AmbientLattice lat(4, {g});
    auto ray = [&](QVec v) { return primitive(lat.coords(v)); };
    Fan f{lat, {}, {}};
    f.rays = {
        ray({Rational(1), Rational(0), Rational(0), Rational(0)}),
        ray({Rational(0), Rational(1), Rational(0), Rational(0)}),
        ray({Rational(0), Rational(0), Rational(1), Rational(0)}),
        ray({Rational(0), Rational(0), Rational(0), Rational(1)}),
        ray({Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(0)}),
        ray(g),
    };
    f.max_cones = {{0, 1, 3, 5}, {0, 1, 4, 5}, {0, 2, 3, 5},
                   {0, 2, 4, 5}, {1, 2, 3, 5}, {1, 2, 4, 5}};
    return f;
}

// the undivided singular cone over e1..e4 in the same overlattice
inline Fan kummer_singular_cone() {
    Fan f = kummer_resolution_fan();
    f.max_cones = {{0, 1, 2, 3}};
    return f;
}

inline IMat ray_matrix(const Fan& f, const std::vector<int>& cone) {
    IMat m(cone.size(), f.lattice.rank());
    for (std::size_t i = 0; i < cone.size(); ++i)
        for (int j = 0; j < f.lattice.rank(); ++j) m(i, j) = f.rays[cone[i]][j];
    return m;
}

// true per maximal cone iff its rays form a basis of the lattice
inline std::vector<bool> verify_smooth(const Fan& f) {
    std::vector<bool> out;
    for (const auto& c : f.max_cones) {
        if (static_cast<int>(c.size()) != f.lattice.rank())
            throw std::invalid_argument("verify_smooth: non-simplicial cone");
        Int d = det(ray_matrix(f, c));
        if (d == 0) throw std::invalid_argument("verify_smooth: degenerate cone");
        out.push_back(d == 1 || d == -1);
    }
    return out;
}

// coefficients of a rational ambient point over the rays of a simplicial
// full-dimensional cone: all nonnegative means membership, all positive means
// interior
inline std::optional<QVec> cone_coefficients(const Fan& f, const std::vector<int>& cone,
                                             const QVec& point) {
    RMat rt(f.lattice.rank(), cone.size());
    for (std::size_t i = 0; i < cone.size(); ++i) {
        QVec amb = f.ray_ambient(cone[i]);
        for (int j = 0; j < f.lattice.rank(); ++j) rt(j, i) = amb[j];
    }
    std::vector<Rational> rhs(point.begin(), point.end());
    try {
        auto c = solve(rt, rhs);
        return QVec(c.begin(), c.end());
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
}

// Unimodular matrix P with P * v = e1; the remaining rows give coordinates on
// the quotient lattice modulo v.
inline IMat quotient_map(const IVec& v) {
    std::size_t n = v.size();
    IMat col(n, 1);
    for (std::size_t i = 0; i < n; ++i) col(i, 0) = v[i];
    SmithForm f = smith_normal_form(col);
    if (f.s(0, 0) != 1) throw std::invalid_argument("quotient_map: vector not primitive");
    IMat p = f.u;
    // u * v * (+-1) = e1; absorb the 1x1 column transform into the first row
    if (f.v(0, 0) == -1) p.scale_row(0, Int(-1));
    IMat check = p * col;
    if (check(0, 0) != 1) throw std::logic_error("quotient_map: normalisation failed");
    for (std::size_t i = 1; i < n; ++i)
        if (check(i, 0) != 0) throw std::logic_error("quotient_map: normalisation failed");
    return p;
}

struct TorusInvariantDivisor {
    QVec coeff;  // aligned with fan.rays
};

inline TorusInvariantDivisor canonical_divisor(const Fan& f) {
    return {QVec(f.rays.size(), Rational(-1))};
}

inline TorusInvariantDivisor ray_divisor(const Fan& f, int i) {
    TorusInvariantDivisor d{QVec(f.rays.size(), Rational(0))};
    d.coeff.at(i) = 1;
    return d;
}

inline TorusInvariantDivisor scale(const TorusInvariantDivisor& d, const Rational& c) {
    TorusInvariantDivisor out = d;
    for (auto& x : out.coeff) x *= c;
    return out;
}

inline TorusInvariantDivisor add(const TorusInvariantDivisor& a, const TorusInvariantDivisor& b) {
    TorusInvariantDivisor out = a;
    for (std::size_t i = 0; i < out.coeff.size(); ++i) out.coeff[i] += b.coeff[i];
    return out;
}

// Replace a divisor by the linearly equivalent one whose support misses the
// given ray: subtract the principal divisor of the character dual to the ray.
inline TorusInvariantDivisor move_support_off_ray(const TorusInvariantDivisor& d, const Fan& f,
                                                  int ray) {
    IMat p = quotient_map(f.rays.at(ray));
    // m0 = first row of p pairs to 1 with the ray
    Rational target = -d.coeff.at(ray);
    TorusInvariantDivisor out = d;
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
        Rational pair = 0;
        for (std::size_t j = 0; j < f.rays[i].size(); ++j)
            pair += Rational(p(0, j)) * Rational(f.rays[i][j]);
        out.coeff[i] += target * pair;
    }
    return out;
}

// Per-cone support vectors m(delta) with <m(delta), v> = coeff(v) on every ray
// v of delta, integral on the dual lattice; this is the chart data whose local
// character cuts out the divisor.
inline std::vector<QVec> cartier_data(const TorusInvariantDivisor& d, const Fan& f) {
    std::vector<QVec> out;
    for (const auto& c : f.max_cones) {
        IMat r = ray_matrix(f, c);
        RMat rr = to_rational(r);
        std::vector<Rational> rhs;
        for (int idx : c) rhs.push_back(d.coeff.at(idx));
        std::vector<Rational> m;
        try {
            m = solve(rr, rhs);
        } catch (const std::domain_error&) {
            throw std::domain_error("cartier_data: no support vector on a degenerate cone");
        }
        for (const auto& x : m)
            if (rat_den(x) != 1)
                throw std::domain_error("cartier_data: divisor is not Cartier on a cone");
        out.push_back(QVec(m.begin(), m.end()));
    }
    return out;
}

struct StarFan {
    Fan fan;                    // fan of the orbit closure, in the quotient lattice
    int center;                 // ray index in the parent fan
    std::vector<int> ray_map;   // parent ray index -> star ray index (-1 if absent)
    IMat projection;            // quotient_map of the center ray
};

// Fan of the orbit closure of a ray: images of the adjacent rays in the
// quotient lattice, with the images of the maximal cones through the ray.
inline StarFan star_fan(const Fan& f, int ray) {
    if (ray < 0 || ray >= static_cast<int>(f.rays.size()))
        throw std::invalid_argument("star_fan: ray not in fan");
    IMat p = quotient_map(f.rays[ray]);
    int n = f.lattice.rank();
    StarFan s{Fan{AmbientLattice(n - 1, {}), {}, {}}, ray, std::vector<int>(f.rays.size(), -1), p};
    auto project = [&](int ri) {
        IVec img(n - 1);
        for (int i = 1; i < n; ++i) {
            Int acc = 0;
            for (int j = 0; j < n; ++j) acc += p(i, j) * f.rays[ri][j];
            img[i - 1] = acc;
        }
        return primitive(img);
    };
    // star rays in the parent's ray order
    for (std::size_t ri = 0; ri < f.rays.size(); ++ri) {
        if (static_cast<int>(ri) == ray) continue;
        bool adjacent = false;
        for (const auto& c : f.max_cones)
            if (std::find(c.begin(), c.end(), ray) != c.end() &&
                std::find(c.begin(), c.end(), static_cast<int>(ri)) != c.end()) {
                adjacent = true;
                break;
            }
        if (!adjacent) continue;
        s.ray_map[ri] = static_cast<int>(s.fan.rays.size());
        s.fan.rays.push_back(project(static_cast<int>(ri)));
    }
    for (const auto& c : f.max_cones) {
        if (std::find(c.begin(), c.end(), ray) == c.end()) continue;
        std::vector<int> image_cone;
        for (int ri : c)
            if (ri != ray) image_cone.push_back(s.ray_map[ri]);
        s.fan.max_cones.push_back(image_cone);
    }
    return s;
}

// Restriction of a Cartier divisor missing the ray to the ray's orbit closure;
// coefficients are read off the projected chart vectors.
inline TorusInvariantDivisor restrict_to_orbit_closure(const TorusInvariantDivisor& d,
                                                       const Fan& f, int ray,
                                                       const StarFan& star) {
    if (d.coeff.at(ray) != 0)
        throw std::invalid_argument("restrict_to_orbit_closure: divisor meets the orbit closure");
    std::vector<QVec> charts = cartier_data(d, f);
    int n = f.lattice.rank();
    TorusInvariantDivisor out{QVec(star.fan.rays.size(), Rational(0))};
    std::vector<bool> seen(star.fan.rays.size(), false);
    for (std::size_t ci = 0; ci < f.max_cones.size(); ++ci) {
        const auto& c = f.max_cones[ci];
        if (std::find(c.begin(), c.end(), ray) == c.end()) continue;
        // chart vector descends to the quotient dual since <m, center> = 0
        QVec mbar(n - 1, Rational(0));
        RMat pinv = inverse(star.projection);
        for (int k = 1; k < n; ++k)
            for (int j = 0; j < n; ++j) mbar[k - 1] += charts[ci][j] * pinv(j, k);
        for (int ri : c) {
            if (ri == ray) continue;
            int sj = star.ray_map[ri];
            Rational v = 0;
            for (int k = 0; k < n - 1; ++k) v += mbar[k] * Rational(star.fan.rays[sj][k]);
            if (seen[sj] && out.coeff[sj] != v)
                throw std::logic_error("restrict_to_orbit_closure: inconsistent chart data");
            out.coeff[sj] = v;
            seen[sj] = true;
        }
    }
    return out;
}

inline TorusInvariantDivisor restrict_to_orbit_closure(const TorusInvariantDivisor& d,
                                                       const Fan& f, int ray) {
    return restrict_to_orbit_closure(d, f, ray, star_fan(f, ray));
}

// Divisor of the k-pluricanonical sections on the resolution: the coefficient
// on each ray is -k times the coordinate sum of its primitive generator in
// the original basis (exceptional rays pick up the fractional age excess).
inline TorusInvariantDivisor form_bundle_divisor(const Fan& f, long long k) {
    if (k <= 0 || k % 6 != 0) throw std::invalid_argument("form_bundle_divisor: need 6 | k, k > 0");
    TorusInvariantDivisor out{QVec(f.rays.size(), Rational(0))};
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
        QVec amb = f.lattice.from_coords(f.rays[i]);
        Rational s = 0;
        for (const auto& x : amb) s += x;
        out.coeff[i] = Rational(-k) * s;
    }
    return out;
}

// ---------------- polytopes and Ehrhart counting ----------------

struct LatticePolytope {
    struct Ineq {
        IVec normal;      // integer normal
        Rational offset;  // <u, normal> >= offset
    };
    std::vector<Ineq> ineqs;

    std::size_t dim() const { return ineqs.empty() ? 0 : ineqs.front().normal.size(); }

    LatticePolytope dilate(const Int& k) const {
        LatticePolytope p = *this;
        for (auto& q : p.ineqs) q.offset *= Rational(k);
        return p;
    }
};

// {u : <u, v> >= -coeff(v) for every ray v}
inline LatticePolytope divisor_polytope(const TorusInvariantDivisor& d, const Fan& f) {
    LatticePolytope p;
    for (std::size_t i = 0; i < f.rays.size(); ++i)
        p.ineqs.push_back({f.rays[i], -d.coeff[i]});
    return p;
}

namespace detail {

using Row = std::pair<QVec, Rational>;  // sum a_i u_i >= rhs

inline Row normalize_row(Row r) {
    for (const auto& a : r.first) {
        if (a != 0) {
            Rational s = a < 0 ? -a : a;
            for (auto& x : r.first) x /= s;
            r.second /= s;
            break;
        }
    }
    return r;
}

// Fourier-Motzkin feasibility for a system of >= rows.
inline bool fm_feasible(std::vector<Row> rows, std::size_t dim) {
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<Row> pos, neg, rest;
        for (auto& r : rows) {
            if (r.first[j] > 0) pos.push_back(r);
            else if (r.first[j] < 0) neg.push_back(r);
            else rest.push_back(r);
        }
        std::set<std::pair<std::vector<Rational>, Rational>> dedupe;
        auto push = [&](Row r) {
            r = normalize_row(std::move(r));
            if (dedupe.insert({r.first, r.second}).second) rest.push_back(std::move(r));
        };
        for (const auto& p : pos)
            for (const auto& n : neg) {
                Rational cp = p.first[j], cn = -n.first[j];
                Row comb;
                comb.first.resize(dim);
                for (std::size_t t = 0; t < dim; ++t)
                    comb.first[t] = p.first[t] * cn + n.first[t] * cp;
                comb.second = p.second * cn + n.second * cp;
                push(std::move(comb));
            }
        rows = std::move(rest);
    }
    for (const auto& r : rows)
        if (r.second > 0) return false;
    return true;
}

inline std::vector<Row> polytope_rows(const LatticePolytope& p) {
    std::vector<Row> rows;
    for (const auto& q : p.ineqs) {
        QVec a(q.normal.size());
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = Rational(q.normal[i]);
        rows.push_back({a, q.offset});
    }
    return rows;
}

}  // namespace detail

inline bool polytope_empty(const LatticePolytope& p) {
    return !detail::fm_feasible(detail::polytope_rows(p), p.dim());
}

// bounded iff the recession cone {<u, n> >= 0} admits no unit coordinate ray
inline bool polytope_bounded(const LatticePolytope& p) {
    std::size_t d = p.dim();
    auto rec = detail::polytope_rows(p);
    for (auto& r : rec) r.second = 0;
    for (std::size_t j = 0; j < d; ++j) {
        for (int sign : {+1, -1}) {
            auto rows = rec;
            detail::Row extra;
            extra.first.assign(d, Rational(0));
            extra.first[j] = sign;
            extra.second = 1;  // sign * u_j >= 1
            rows.push_back(extra);
            if (detail::fm_feasible(rows, d)) return false;
        }
    }
    return true;
}

inline std::vector<QVec> polytope_vertices(const LatticePolytope& p) {
    std::size_t d = p.dim();
    std::size_t m = p.ineqs.size();
    std::vector<QVec> verts;
    if (d == 0 || m < d) return verts;
    std::set<std::vector<Rational>> seen;
    auto satisfies = [&](const QVec& u) {
        for (const auto& q : p.ineqs) {
            Rational acc = 0;
            for (std::size_t i = 0; i < d; ++i) acc += u[i] * Rational(q.normal[i]);
            if (acc < q.offset) return false;
        }
        return true;
    };
    // basic solutions over all d-subsets of the inequalities
    std::vector<std::size_t> comb(d);
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
        RMat a(d, d);
        std::vector<Rational> b(d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) a(i, j) = Rational(p.ineqs[comb[i]].normal[j]);
            b[i] = p.ineqs[comb[i]].offset;
        }
        try {
            auto u = solve(a, b);
            QVec uu(u.begin(), u.end());
            if (satisfies(uu) && seen.insert(u).second) verts.push_back(uu);
        } catch (const std::domain_error&) {
        }
        std::size_t i = d;
        while (i > 0 && comb[i - 1] == i - 1 + m - d) --i;
        if (i == 0) break;
        ++comb[i - 1];
        for (std::size_t t = i; t < d; ++t) comb[t] = comb[t - 1] + 1;
    }
    return verts;
}

// exact lattice point count by bounding-box scan with integer threshold tests
inline Int count_lattice_points(const LatticePolytope& p) {
    if (polytope_empty(p)) return 0;
    if (!polytope_bounded(p)) throw std::invalid_argument("count_lattice_points: unbounded polytope");
    std::size_t d = p.dim();
    auto verts = polytope_vertices(p);
    if (verts.empty()) throw std::logic_error("count_lattice_points: bounded nonempty, no vertex");
    std::vector<Int> lo(d), hi(d);
    for (std::size_t j = 0; j < d; ++j) {
        Rational mn = verts[0][j], mx = verts[0][j];
        for (const auto& v : verts) {
            mn = std::min(mn, v[j]);
            mx = std::max(mx, v[j]);
        }
        lo[j] = ceil_rat(mn);
        hi[j] = floor_rat(mx);
    }
    // integer form: <u, n> >= ceil(offset) since the left side is integral
    std::vector<Int> thresh;
    for (const auto& q : p.ineqs) thresh.push_back(ceil_rat(q.offset));

    // machine-word fast path: |acc| <= d * 2^20 * 2^20 fits comfortably
    const Int word_cap = Int(1) << 20;
    bool small = true;
    for (std::size_t j = 0; j < d && small; ++j)
        small = abs(lo[j]) < word_cap && abs(hi[j]) < word_cap;
    for (const auto& q : p.ineqs)
        for (std::size_t j = 0; j < d && small; ++j) small = abs(q.normal[j]) < word_cap;
    for (const auto& t : thresh)
        if (!(abs(t) < (Int(1) << 62))) small = false;

    Int count = 0;
    if (small) {
        std::vector<std::vector<long long>> normals;
        std::vector<long long> th;
        for (std::size_t q = 0; q < p.ineqs.size(); ++q) {
            std::vector<long long> n(d);
            for (std::size_t j = 0; j < d; ++j) n[j] = p.ineqs[q].normal[j].convert_to<long long>();
            normals.push_back(n);
            th.push_back(thresh[q].convert_to<long long>());
        }
        std::vector<long long> u(d);
        auto scan = [&](auto&& self, std::size_t j) -> void {
            if (j == d) {
                for (std::size_t q = 0; q < normals.size(); ++q) {
                    long long acc = 0;
                    for (std::size_t t = 0; t < d; ++t) acc += normals[q][t] * u[t];
                    if (acc < th[q]) return;
                }
                ++count;
                return;
            }
            for (long long x = lo[j].convert_to<long long>(); x <= hi[j].convert_to<long long>(); ++x) {
                u[j] = x;
                self(self, j + 1);
            }
        };
        scan(scan, 0);
        return count;
    }
    std::vector<Int> u(d);
    auto scan = [&](auto&& self, std::size_t j) -> void {
        if (j == d) {
            for (std::size_t q = 0; q < p.ineqs.size(); ++q) {
                Int acc = 0;
                for (std::size_t t = 0; t < d; ++t) acc += p.ineqs[q].normal[t] * u[t];
                if (acc < thresh[q]) return;
            }
            ++count;
            return;
        }
        for (Int x = lo[j]; x <= hi[j]; ++x) {
            u[j] = x;
            self(self, j + 1);
        }
    };
    scan(scan, 0);
    return count;
}

inline Rational eval_poly(const std::vector<Rational>& coeffs, const Rational& x) {
    Rational acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

// Ehrhart polynomial by exact interpolation on dilates 0..degree_hint+2,
// verified against two further raw counts.
inline std::vector<Rational> ehrhart(const LatticePolytope& p, int degree_hint) {
    if (degree_hint < 0) throw std::invalid_argument("ehrhart: degree_hint must be >= 0");
    if (polytope_empty(p)) return {};
    if (!polytope_bounded(p)) throw std::invalid_argument("ehrhart: unbounded polytope");
    int m = degree_hint + 2;
    std::vector<Rational> counts;
    for (int k = 0; k <= m; ++k) counts.push_back(Rational(count_lattice_points(p.dilate(k))));
    // solve the Vandermonde system for the interpolating polynomial
    RMat a(m + 1, m + 1);
    for (int i = 0; i <= m; ++i) {
        Rational pw = 1;
        for (int j = 0; j <= m; ++j) {
            a(i, j) = pw;
            pw *= i;
        }
    }
    std::vector<Rational> coeffs = solve(a, counts);
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    for (int k = m + 1; k <= m + 2; ++k) {
        Rational raw(count_lattice_points(p.dilate(k)));
        if (eval_poly(coeffs, Rational(k)) != raw)
            throw std::logic_error("ehrhart: verification dilate disagrees with interpolation");
    }
    return coeffs;
}

// ---------------- quotient singularity age test ----------------

struct ReidTaiPower {
    long long t;
    Rational age;
    bool unit_eigenvalue;  // some exponent of this power vanishes mod m
};

struct ReidTaiReport {
    Rational age;  // age of the given representative
    bool noncanonical;
    std::vector<ReidTaiPower> powers;
    long long witness = 0;  // least power with age < 1, if any
    bool witness_has_unit_eigenvalue = false;
};

inline Rational reid_tai_age(const std::vector<long long>& exps, long long m) {
    if (m <= 0) throw std::invalid_argument("reid_tai_age: m must be positive");
    long long s = 0;
    bool all_zero = true;
    for (long long e : exps) {
        if (e < 0 || e >= m) throw std::invalid_argument("reid_tai_age: exponents must lie in [0, m)");
        if (e != 0) all_zero = false;
        s += e;
    }
    if (all_zero) throw std::invalid_argument("reid_tai_age: exponent vector is zero");
    return Rational(s, m);
}

// Ages of all nonidentity powers; the singularity is flagged non-canonical
// when some power has age < 1. Powers carrying eigenvalue 1 cannot be settled
// by the bare age test and are marked so callers can treat them separately.
inline ReidTaiReport reid_tai_report(const std::vector<long long>& exps, long long m) {
    ReidTaiReport rep;
    rep.age = reid_tai_age(exps, m);
    rep.noncanonical = false;
    for (long long t = 1; t < m; ++t) {
        std::vector<long long> pw(exps.size());
        bool identity = true, unit = false;
        long long s = 0;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            pw[i] = (exps[i] * t) % m;
            if (pw[i] != 0) identity = false;
            else unit = true;
            s += pw[i];
        }
        if (identity) continue;
        Rational age(s, m);
        rep.powers.push_back({t, age, unit});
        if (age < 1 && rep.witness == 0) {
            rep.noncanonical = true;
            rep.witness = t;
            rep.witness_has_unit_eigenvalue = unit;
        }
    }
    return rep;
}

inline bool is_noncanonical(const std::vector<long long>& exps, long long m) {
    return reid_tai_report(exps, m).noncanonical;
}

// ---------------- obstruction dimension bound ----------------

struct ObstructionBound {
    Int exact_sum;         // sum of Ehrhart values of the 6-fold dilated polytope
    Rational closed_form;  // (k^4 + 34 k^3 + 430 k^2 + 2400)/288
};

// Ehrhart polynomial of the 6-fold dilate of the section polytope of the
// restricted moved canonical divisor on the exceptional orbit closure.
inline const std::vector<Rational>& obstruction_ehrhart() {
    static const std::vector<Rational> coeffs = [] {
        Fan fan = kummer_resolution_fan();
        StarFan star = star_fan(fan, 5);
        TorusInvariantDivisor kprime = move_support_off_ray(canonical_divisor(fan), fan, 5);
        TorusInvariantDivisor z1 = restrict_to_orbit_closure(kprime, fan, 5, star);
        LatticePolytope p = divisor_polytope(z1, star.fan).dilate(6);
        return ehrhart(p, 3);
    }();
    return coeffs;
}

inline ObstructionBound obstruction_dim_bound(long long k) {
    if (k <= 0 || k % 6 != 0)
        throw std::invalid_argument("obstruction_dim_bound: need 6 | k, k > 0");
    const auto& ehr = obstruction_ehrhart();
    Rational sum = 0;
    for (long long a = 1; a <= k / 6; ++a) sum += eval_poly(ehr, Rational(a));
    if (rat_den(sum) != 1) throw std::logic_error("obstruction_dim_bound: non-integral sum");
    Int kk(k);
    Rational closed(kk * kk * kk * kk + 34 * kk * kk * kk + 430 * kk * kk + 2400, 288);
    ObstructionBound out{rat_num(sum), closed};
    if (Rational(out.exact_sum) > closed)
        throw std::logic_error("obstruction_dim_bound: exact sum exceeds the closed form");
    return out;
}

// the other reading of the summand, with the dilate fixed at k
inline Rational obstruction_literal_sum(long long k) {
    if (k <= 0 || k % 6 != 0)
        throw std::invalid_argument("obstruction_literal_sum: need 6 | k, k > 0");
    return Rational(k, 6) * eval_poly(obstruction_ehrhart(), Rational(k));
}

}  // namespace kgt::toric

#endif
