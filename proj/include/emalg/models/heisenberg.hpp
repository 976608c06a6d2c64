#pragma once

#include <cmath>
#include <sstream>
#include <vector>

#include "../model.hpp"

namespace emalg {

struct HeisenbergPoint {
    Rat x, y, z;
    bool operator==(const HeisenbergPoint&) const = default;
};

/// The polarized Heisenberg group over Q^3:
///   (x1,y1,z1)(x2,y2,z2) = (x1+x2, y1+y2, z1+z2 + (x1 y2 - y1 x2)/2)
/// with graded dilations delta_eps(x,y,z) = (eps x, eps y, eps^2 z) and the
/// parity element acting first through the involutive automorphism
/// (x,y,z) -> (-x,-y,z). The polarized law keeps both maps exact group
/// automorphisms over the rationals.
class HeisenbergModel {
public:
    using Point = HeisenbergPoint;
    using Scalar = Rat;
    static constexpr bool exact = true;

    std::string name() const { return "heisenberg"; }

    Point identity() const { return {Rat(0), Rat(0), Rat(0)}; }

    Point mul(const Point& a, const Point& b) const {
        return {a.x + b.x, a.y + b.y, a.z + b.z + (a.x * b.y - a.y * b.x) / 2};
    }

    Point inverse(const Point& a) const { return {-a.x, -a.y, -a.z}; }

    static Point parity_flip(const Point& a) { return {-a.x, -a.y, a.z}; }

    Point dilate(const Scale& s, const Point& w) const {
        const Point v = s.flips() ? parity_flip(w) : w;
        const Rat& f = s.factor();
        return {f * v.x, f * v.y, f * f * v.z};
    }

    Point circle(const Scale& s, const Point& x, const Point& u) const {
        return mul(x, dilate(s, mul(inverse(x), u)));
    }

    Point bullet(const Scale& s, const Point& x, const Point& u) const {
        return circle(s.inverse(), x, u);
    }

    bool equal(const Point& a, const Point& b) const { return a == b; }

    Point sample(Rng& rng) const { return {rng.small_rat(), rng.small_rat(), rng.small_rat()}; }

    Scale sample_scale(Rng& rng) const {
        return Scale(rng.positive_rat(), rng.coin() ? Parity::sigma : Parity::plus);
    }

    /// Fourth power of the homogeneous gauge, exact: ((x^2+y^2)^2 + 16 z^2).
    Rat gauge4(const Point& a) const {
        const Rat q = a.x * a.x + a.y * a.y;
        return q * q + 16 * a.z * a.z;
    }

    double gauge(const Point& a) const { return std::pow(to_double(gauge4(a)), 0.25); }

    Rat dist_pow(const Point& a, const Point& b) const { return gauge4(mul(inverse(a), b)); }
    static constexpr int dist_degree = 4;
    double distance(const Point& a, const Point& b) const {
        return std::pow(to_double(dist_pow(a, b)), 0.25);
    }

    std::vector<Scalar> coords(const Point& p) const { return {p.x, p.y, p.z}; }
    Point from_coords(const std::vector<Scalar>& c) const {
        if (c.size() != 3) throw std::invalid_argument("HeisenbergModel: need 3 coordinates");
        return {c[0], c[1], c[2]};
    }

    std::string describe(const Point& p) const {
        std::ostringstream os;
        os << "(" << p.x << ", " << p.y << ", " << p.z << ")";
        return os.str();
    }
};

inline HeisenbergPoint heis_mul(const HeisenbergPoint& a, const HeisenbergPoint& b) {
    return HeisenbergModel{}.mul(a, b);
}
inline HeisenbergPoint heis_inv(const HeisenbergPoint& a) { return HeisenbergModel{}.inverse(a); }
inline HeisenbergPoint heis_dilate(const Scale& s, const HeisenbergPoint& a) {
    return HeisenbergModel{}.dilate(s, a);
}
inline Rat cygan_gauge4(const HeisenbergPoint& a) { return HeisenbergModel{}.gauge4(a); }
inline double cygan_gauge(const HeisenbergPoint& a) { return HeisenbergModel{}.gauge(a); }

}  // namespace emalg
