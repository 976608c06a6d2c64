#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "../model.hpp"

namespace emalg {

/// Euclidean dilations conjugated by a smooth chart pair (fwd, back):
///   circle(eps, x, u) = fwd(back(x) + eps * (back(u) - back(x)))
/// The carrier axioms hold exactly in real arithmetic because conjugation
/// preserves them; equality is tolerance-based on the double carrier. The
/// default quadratic chart produces base-pointed operations with a genuine
/// O(eps) correction, so the limit machinery has something to converge on.
class ConjugatedModel {
public:
    using Point = std::array<double, 2>;
    using Scalar = double;
    static constexpr bool exact = false;

    using Map = std::function<Point(const Point&)>;
    using Jacobian = std::function<std::array<Point, 2>(const Point&)>;

    ConjugatedModel(std::string name, Map fwd, Map back, Jacobian fwd_jacobian,
                    double tolerance = 1e-9)
        : name_(std::move(name)),
          fwd_(std::move(fwd)),
          back_(std::move(back)),
          jac_(std::move(fwd_jacobian)),
          tol_(tolerance) {
        // round-trip validation on a probe grid; a broken pair is a
        // construction error, not something audits should chase later
        for (double a = -2.0; a <= 2.0; a += 0.5) {
            for (double b = -2.0; b <= 2.0; b += 0.5) {
                const Point p{a, b};
                const Point q = fwd_(back_(p));
                if (std::abs(q[0] - p[0]) > 1e-12 || std::abs(q[1] - p[1]) > 1e-12)
                    throw std::invalid_argument(name_ + ": chart pair fails round-trip at " + describe(p));
            }
        }
    }

    /// fwd(a,b) = (a, b + a^2), back(a,b) = (a, b - a^2).
    static ConjugatedModel quadratic() {
        return ConjugatedModel(
            "conjugated:default",
            [](const Point& p) { return Point{p[0], p[1] + p[0] * p[0]}; },
            [](const Point& p) { return Point{p[0], p[1] - p[0] * p[0]}; },
            [](const Point& p) { return std::array<Point, 2>{Point{1.0, 0.0}, Point{2.0 * p[0], 1.0}}; });
    }

    const std::string& name() const { return name_; }
    double tolerance() const { return tol_; }

    Point circle(const Scale& s, const Point& x, const Point& u) const {
        const double f = s.flips() ? -to_double(s.factor()) : to_double(s.factor());
        const Point a = back_(x), b = back_(u);
        return fwd_({a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1])});
    }

    Point bullet(const Scale& s, const Point& x, const Point& u) const {
        return circle(s.inverse(), x, u);
    }

    bool equal(const Point& a, const Point& b) const { return distance(a, b) <= tol_; }

    /// Dyadic coordinates in [-2, 2]; exactly representable, so repeated
    /// chart round-trips stay reproducible.
    Point sample(Rng& rng) const {
        return {static_cast<double>(rng.uniform(-128, 128)) / 64.0,
                static_cast<double>(rng.uniform(-128, 128)) / 64.0};
    }

    Scale sample_scale(Rng& rng) const {
        return Scale::dyadic(static_cast<int>(rng.uniform(1, 3)),
                             rng.coin() ? Parity::sigma : Parity::plus);
    }

    double distance(const Point& a, const Point& b) const {
        return std::hypot(a[0] - b[0], a[1] - b[1]);
    }

    /// Tangent metric at x: |Dfwd(back(x)) (back(u) - back(v))|.
    double tangent_distance(const Point& x, const Point& u, const Point& v) const {
        const Point pu = back_(u), pv = back_(v);
        const Point w{pu[0] - pv[0], pu[1] - pv[1]};
        const auto J = jac_(back_(x));
        return std::hypot(J[0][0] * w[0] + J[0][1] * w[1], J[1][0] * w[0] + J[1][1] * w[1]);
    }

    Point chart_forward(const Point& p) const { return fwd_(p); }
    Point chart_back(const Point& p) const { return back_(p); }

    std::vector<Scalar> coords(const Point& p) const { return {p[0], p[1]}; }
    Point from_coords(const std::vector<Scalar>& c) const {
        if (c.size() != 2) throw std::invalid_argument("ConjugatedModel: need 2 coordinates");
        return {c[0], c[1]};
    }

    std::string describe(const Point& p) const {
        char buf[64];
        std::snprintf(buf, sizeof buf, "(%.17g, %.17g)", p[0], p[1]);
        return buf;
    }

private:
    std::string name_;
    Map fwd_, back_;
    Jacobian jac_;
    double tol_;
};

}  // namespace emalg
