#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "../model.hpp"

namespace emalg {

/// Q^k with dilations delta_eps(w) = eps * w; the parity element acts as the
/// central symmetry w -> -w. Base-pointed operations reduce to the affine
/// form x + eps(u - x), kept exact in rationals.
class EuclideanModel {
public:
    using Point = std::vector<Rat>;
    using Scalar = Rat;
    static constexpr bool exact = true;

    explicit EuclideanModel(int dim) : dim_(dim) {
        if (dim < 1) throw std::invalid_argument("EuclideanModel: dimension must be >= 1");
    }

    std::string name() const { return "euclidean:" + std::to_string(dim_); }
    int dim() const { return dim_; }

    Point identity() const { return Point(static_cast<size_t>(dim_), Rat(0)); }

    Point mul(const Point& a, const Point& b) const {
        Point r(a);
        for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
        return r;
    }

    Point inverse(const Point& a) const {
        Point r(a);
        for (auto& c : r) c = -c;
        return r;
    }

    Point dilate(const Scale& s, const Point& w) const {
        const Rat f = s.flips() ? Rat(-s.factor()) : s.factor();
        Point r(w);
        for (auto& c : r) c *= f;
        return r;
    }

    Point circle(const Scale& s, const Point& x, const Point& u) const {
        const Rat f = s.flips() ? Rat(-s.factor()) : s.factor();
        Point r(x);
        for (size_t i = 0; i < r.size(); ++i) r[i] += f * (u[i] - x[i]);
        return r;
    }

    Point bullet(const Scale& s, const Point& x, const Point& u) const {
        return circle(s.inverse(), x, u);
    }

    bool equal(const Point& a, const Point& b) const { return a == b; }

    Point sample(Rng& rng) const {
        Point p(static_cast<size_t>(dim_));
        for (auto& c : p) c = rng.small_rat();
        return p;
    }

    Scale sample_scale(Rng& rng) const {
        return Scale(rng.positive_rat(), rng.coin() ? Parity::sigma : Parity::plus);
    }

    Rat dist_pow(const Point& a, const Point& b) const {
        Rat q(0);
        for (size_t i = 0; i < a.size(); ++i) q += (a[i] - b[i]) * (a[i] - b[i]);
        return q;
    }
    static constexpr int dist_degree = 2;
    double distance(const Point& a, const Point& b) const { return std::sqrt(to_double(dist_pow(a, b))); }
    double gauge(const Point& a) const { return distance(a, identity()); }

    std::vector<Scalar> coords(const Point& p) const { return p; }
    Point from_coords(const std::vector<Scalar>& c) const {
        if (static_cast<int>(c.size()) != dim_)
            throw std::invalid_argument("EuclideanModel: coordinate size mismatch");
        return c;
    }

    std::string describe(const Point& p) const {
        std::ostringstream os;
        os << "(";
        for (size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
        os << ")";
        return os.str();
    }

private:
    int dim_;
};

}  // namespace emalg
