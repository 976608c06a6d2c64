#pragma once

#include <concepts>
#include <string>
#include <vector>

#include "rng.hpp"
#include "scale.hpp"

namespace emalg {

/// A scaled idempotent right quasigroup carrier: circle is u -> x o_eps u,
/// bullet its inverse at the same scale. Implementations must satisfy
///   P1: circle(e, x, bullet(e, x, y)) = bullet(e, x, circle(e, x, y)) = y
///   P2: circle(e, x, x) = x
///   scale axiom: circle(e1, x, circle(e2, x, y)) = circle(e1*e2, x, y)
/// which the audit engine verifies on samples. `exact` selects structural
/// equality (rational carriers) versus tolerance comparison.
template <class M>
concept Model = requires(const M m, const typename M::Point& p, const Scale& s, Rng& rng) {
    typename M::Point;
    { M::exact } -> std::convertible_to<bool>;
    { m.name() } -> std::convertible_to<std::string>;
    { m.circle(s, p, p) } -> std::same_as<typename M::Point>;
    { m.bullet(s, p, p) } -> std::same_as<typename M::Point>;
    { m.equal(p, p) } -> std::same_as<bool>;
    { m.sample(rng) } -> std::same_as<typename M::Point>;
    { m.sample_scale(rng) } -> std::same_as<Scale>;
    { m.describe(p) } -> std::convertible_to<std::string>;
};

template <class M>
concept MetricModel = Model<M> && requires(const M m, const typename M::Point& p) {
    { m.distance(p, p) } -> std::convertible_to<double>;
};

/// Distance known exactly as a rational at the dist_degree-th power,
/// e.g. squared Euclidean distance or the fourth power of a homogeneous gauge.
template <class M>
concept ExactDistanceModel = MetricModel<M> && requires(const M m, const typename M::Point& p) {
    { m.dist_pow(p, p) } -> std::same_as<Rat>;
    { M::dist_degree } -> std::convertible_to<int>;
};

/// Group with dilations: mul/inverse/identity plus a one-parameter family
/// of dilations (each a group endomorphism for conical models).
template <class M>
concept GroupModel = Model<M> && requires(const M m, const typename M::Point& p, const Scale& s) {
    { m.mul(p, p) } -> std::same_as<typename M::Point>;
    { m.inverse(p) } -> std::same_as<typename M::Point>;
    { m.identity() } -> std::same_as<typename M::Point>;
    { m.dilate(s, p) } -> std::same_as<typename M::Point>;
};

/// Points convertible to/from a flat coordinate vector; the limit engine
/// works coordinatewise in Scalar (Rat or double).
template <class M>
concept CoordModel = Model<M> && requires(const M m, const typename M::Point& p,
                                          const std::vector<typename M::Scalar>& c) {
    typename M::Scalar;
    { m.coords(p) } -> std::same_as<std::vector<typename M::Scalar>>;
    { m.from_coords(c) } -> std::same_as<typename M::Point>;
};

/// Closed-form tangent metric d^x, used by the A2 residual check on models
/// where the ambient distance is not already scale-invariant.
template <class M>
concept TangentMetricModel = MetricModel<M> && requires(const M m, const typename M::Point& p) {
    { m.tangent_distance(p, p, p) } -> std::convertible_to<double>;
};

/// Equality with the model's notion of closeness: structural on exact
/// carriers, distance <= tol otherwise.
template <Model M>
bool points_close(const M& m, const typename M::Point& a, const typename M::Point& b, double tol) {
    if constexpr (M::exact) {
        (void)tol;
        return m.equal(a, b);
    } else {
        static_assert(MetricModel<M>, "non-exact models need a distance");
        return m.distance(a, b) <= tol;
    }
}

/// Base-pointed dilation of a group with dilations: x * delta_eps(x^-1 * u).
/// Group-backed models implement their circle operation by this formula.
template <GroupModel M>
typename M::Point group_dilation(const M& m, const Scale& s, const typename M::Point& x,
                                 const typename M::Point& u) {
    return m.mul(x, m.dilate(s, m.mul(m.inverse(x), u)));
}

/// d(a, b) = gauge(a^-1 * b) for a group model carrying a gauge.
template <GroupModel M>
double distance_from_norm(const M& m, const typename M::Point& a, const typename M::Point& b) {
    return m.gauge(m.mul(m.inverse(a), b));
}

}  // namespace emalg
