#pragma once

#include <cfloat>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "audit.hpp"
#include "derived_ops.hpp"
#include "model.hpp"

namespace emalg {

/// Strictly decreasing sequence of contraction scales; all moduli <= 1/2.
class Schedule {
  public:
    explicit Schedule(std::vector<Scale> scales) : scales_(std::move(scales)) {
        if (scales_.empty()) throw std::invalid_argument("schedule must be nonempty");
        const Rat half = frac(1, 2);
        for (size_t i = 0; i < scales_.size(); ++i) {
            const Rat m = scales_[i].modulus();
            if (m > half) throw std::invalid_argument("schedule moduli must be at most 1/2");
            if (i > 0 && !(m < scales_[i - 1].modulus()))
                throw std::invalid_argument("schedule moduli must be strictly decreasing");
        }
    }

    static Schedule dyadic(int first = 1, int last = 20, Parity parity = Parity::plus) {
        if (first < 1 || last < first)
            throw std::invalid_argument("dyadic schedule needs 1 <= first <= last");
        std::vector<Scale> s;
        s.reserve(static_cast<size_t>(last - first + 1));
        for (int j = first; j <= last; ++j) s.push_back(Scale::dyadic(j, parity));
        return Schedule(std::move(s));
    }

    const std::vector<Scale>& scales() const { return scales_; }
    size_t size() const { return scales_.size(); }

  private:
    std::vector<Scale> scales_;
};

inline double scalar_to_double(const Rat& r) { return to_double(r); }
inline double scalar_to_double(double d) { return d; }

struct InfNorm {
    template <class S>
    double operator()(const std::vector<S>& a, const std::vector<S>& b) const {
        double m = 0.0;
        for (size_t i = 0; i < a.size(); ++i) {
            const S d = a[i] - b[i];
            m = std::max(m, std::fabs(scalar_to_double(d)));
        }
        return m;
    }
};

template <class S>
struct ConvergenceReport {
    std::vector<double> moduli;            // schedule moduli, largest first
    std::vector<std::string> scale_labels; // exact renderings, e.g. "1/2"
    std::vector<std::vector<S>> values;    // coordinate tuple per scale
    std::optional<std::vector<S>> limit;  // absent when divergence was flagged
    std::vector<double> residuals;        // dist(value_j, limit); empty when diverged
    double rate = std::numeric_limits<double>::quiet_NaN();
    bool exact = false;  // every evaluation identical
    bool diverged = false;

    bool converged() const { return !diverged && limit.has_value(); }
};

/// Polynomial extrapolation to 0 (Neville), componentwise in S arithmetic.
template <class S>
std::vector<S> neville0(const std::vector<S>& xs, std::vector<std::vector<S>> ys) {
    const size_t m = xs.size();
    for (size_t k = 1; k < m; ++k)
        for (size_t i = 0; i + k < m; ++i) {
            const S denom = xs[i] - xs[i + k];
            for (size_t c = 0; c < ys[i].size(); ++c)
                ys[i][c] = (xs[i] * ys[i + 1][c] - xs[i + k] * ys[i][c]) / denom;
        }
    return ys[0];
}

namespace detail {

inline double least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const size_t n = xs.size();
    double mx = 0, my = 0;
    for (size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double num = 0, den = 0;
    for (size_t i = 0; i < n; ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    return den == 0 ? std::numeric_limits<double>::quiet_NaN() : num / den;
}

}  // namespace detail

/// Evaluates the family along the schedule and extrapolates to scale 0.
/// Exact flag when all evaluations agree; divergence flagged (and no limit
/// invented) when the tail of successive differences stops decreasing.
/// Rational carriers extrapolate in exact arithmetic; floating carriers stop
/// refining once differences fall under 10x machine epsilon.
template <class Family, class Dist = InfNorm>
auto estimate_limit(Family&& family, const Schedule& sched, Dist dist = Dist{}) {
    using Vec = std::remove_cvref_t<std::invoke_result_t<Family&, const Scale&>>;
    using S = typename Vec::value_type;
    constexpr bool exact_carrier = std::is_same_v<S, Rat>;

    ConvergenceReport<S> rep;
    const auto& scales = sched.scales();
    const size_t m = scales.size();
    for (const Scale& sc : scales) {
        rep.moduli.push_back(to_double(sc.modulus()));
        rep.scale_labels.push_back(scale_str(sc));
        rep.values.push_back(family(sc));
    }

    std::vector<double> diffs;
    diffs.reserve(m - 1);
    bool all_zero = true;
    for (size_t j = 0; j + 1 < m; ++j) {
        const double d =
            rep.values[j + 1] == rep.values[j] ? 0.0 : dist(rep.values[j + 1], rep.values[j]);
        diffs.push_back(d);
        if (d != 0.0) all_zero = false;
    }

    if (all_zero) {
        rep.exact = true;
        rep.limit = rep.values.back();
        rep.residuals.assign(m, 0.0);
        return rep;
    }

    size_t cut = diffs.size();
    if (!exact_carrier) {
        double magnitude = 1.0;
        for (const auto& v : rep.values)
            for (const S& c : v) magnitude = std::max(magnitude, std::fabs(scalar_to_double(c)));
        const double noise = 10.0 * DBL_EPSILON * magnitude;
        for (size_t j = 0; j < diffs.size(); ++j)
            if (diffs[j] < noise) {
                cut = j;
                break;
            }
    }

    std::vector<size_t> nz;
    for (size_t j = 0; j < cut; ++j)
        if (diffs[j] > 0.0) nz.push_back(j);

    if (nz.size() >= 2) {
        const std::vector<size_t> tail(nz.begin() + static_cast<long>(nz.size() / 2), nz.end());
        if (tail.size() >= 2 && diffs[tail.back()] >= diffs[tail.front()]) {
            rep.diverged = true;
            return rep;
        }
        std::vector<double> lx, ly;
        for (size_t j : tail) {
            lx.push_back(std::log(rep.moduli[j + 1]));
            ly.push_back(std::log(diffs[j]));
        }
        rep.rate = detail::least_squares_slope(lx, ly);
    }

    if (cut == 0) {
        rep.limit = rep.values.back();
    } else {
        const size_t w = cut + 1;  // usable values v_0 .. v_cut
        const size_t win = std::min<size_t>(6, w);
        std::vector<S> xs;
        std::vector<std::vector<S>> ys;
        for (size_t j = w - win; j < w; ++j) {
            if constexpr (exact_carrier)
                xs.push_back(scales[j].modulus());
            else
                xs.push_back(rep.moduli[j]);
            ys.push_back(rep.values[j]);
        }
        rep.limit = neville0(xs, std::move(ys));
    }
    for (size_t j = 0; j < m; ++j)
        rep.residuals.push_back(rep.values[j] == *rep.limit ? 0.0
                                                            : dist(rep.values[j], *rep.limit));
    return rep;
}

template <CoordModel M>
struct TangentReport {
    ConvergenceReport<typename M::Scalar> seq;
    std::optional<typename M::Point> point;  // from_coords(limit) when converged
};

namespace detail {

template <CoordModel M, class Op>
TangentReport<M> tangent_limit(const M& m, const Schedule& sched, Op&& op) {
    TangentReport<M> r;
    r.seq = estimate_limit([&](const Scale& e) { return m.coords(op(e)); }, sched);
    if (r.seq.converged()) r.point = m.from_coords(*r.seq.limit);
    return r;
}

}  // namespace detail

template <CoordModel M>
TangentReport<M> tangent_difference(const M& m, const typename M::Point& x,
                                    const typename M::Point& u, const typename M::Point& v,
                                    const Schedule& sched) {
    return detail::tangent_limit(m, sched,
                                 [&](const Scale& e) { return rel_difference(m, x, u, v, e); });
}

template <CoordModel M>
TangentReport<M> tangent_sum(const M& m, const typename M::Point& x, const typename M::Point& u,
                             const typename M::Point& v, const Schedule& sched) {
    return detail::tangent_limit(m, sched,
                                 [&](const Scale& e) { return rel_sum(m, x, u, v, e); });
}

template <CoordModel M>
TangentReport<M> tangent_inverse(const M& m, const typename M::Point& x,
                                 const typename M::Point& u, const Schedule& sched) {
    return detail::tangent_limit(m, sched,
                                 [&](const Scale& e) { return rel_inverse(m, x, u, e); });
}

/// Conical-group axioms for the extrapolated tangent operations at x:
/// associativity, neutrality of x, inverses, the dilations acting as
/// morphisms, and (at a group identity) agreement with the ambient law.
template <CoordModel M>
AuditReport audit_conical(const M& m, const typename M::Point& x, std::uint64_t seed,
                          long n_samples, const Schedule& sched, double tol = 1e-9) {
    AuditReport report;
    report.subject = m.name();
    report.seed = seed;
    report.tolerance = M::exact ? 0.0 : tol;
    using P = typename M::Point;

    const auto eq = [&](const P& a, const P& b) { return points_close(m, a, b, report.tolerance); };
    const auto sum = [&](const P& a, const P& b) { return tangent_sum(m, x, a, b, sched).point; };
    const auto wit = [&](const P& u, const P& v) {
        return "x=" + m.describe(x) + " u=" + m.describe(u) + " v=" + m.describe(v);
    };
    const auto check = [&](const std::string& name, auto&& prop) {
        report.checks.push_back(
            detail::run_check(name, n_samples, 1, [&](long i) -> std::optional<std::string> {
                Rng rng = Rng::for_sample(seed, static_cast<std::uint64_t>(i));
                return prop(rng);
            }));
    };

    check("sum_associative", [&](Rng& rng) -> std::optional<std::string> {
        const P u = m.sample(rng), v = m.sample(rng), w = m.sample(rng);
        const auto vw = sum(v, w);
        const auto uv = sum(u, v);
        if (!vw || !uv) return wit(u, v) + " (no convergence)";
        const auto lhs = sum(u, *vw);
        const auto rhs = sum(*uv, w);
        if (!lhs || !rhs) return wit(u, v) + " (no convergence)";
        if (eq(*lhs, *rhs)) return std::nullopt;
        return wit(u, v) + " w=" + m.describe(w);
    });
    check("sum_neutral", [&](Rng& rng) -> std::optional<std::string> {
        const P u = m.sample(rng);
        const auto l = sum(x, u);
        const auto r = sum(u, x);
        if (l && r && eq(*l, u) && eq(*r, u)) return std::nullopt;
        return "x=" + m.describe(x) + " u=" + m.describe(u);
    });
    check("sum_inverse", [&](Rng& rng) -> std::optional<std::string> {
        const P u = m.sample(rng);
        const auto i = tangent_inverse(m, x, u, sched).point;
        if (!i) return "x=" + m.describe(x) + " u=" + m.describe(u) + " (no convergence)";
        const auto l = sum(u, *i);
        const auto r = sum(*i, u);
        if (l && r && eq(*l, x) && eq(*r, x)) return std::nullopt;
        return "x=" + m.describe(x) + " u=" + m.describe(u);
    });
    check("dilation_morphism", [&](Rng& rng) -> std::optional<std::string> {
        const P u = m.sample(rng), v = m.sample(rng);
        const Scale mu = m.sample_scale(rng);
        const auto uv = sum(u, v);
        const auto rhs = sum(m.circle(mu, x, u), m.circle(mu, x, v));
        if (!uv || !rhs) return wit(u, v) + " (no convergence)";
        if (eq(m.circle(mu, x, *uv), *rhs)) return std::nullopt;
        return wit(u, v) + " mu=" + scale_str(mu);
    });
    if constexpr (GroupModel<M>) {
        if (m.equal(x, m.identity())) {
            check("group_law_at_identity", [&](Rng& rng) -> std::optional<std::string> {
                const P u = m.sample(rng), v = m.sample(rng);
                const auto l = sum(u, v);
                if (l && eq(*l, m.mul(u, v))) return std::nullopt;
                return wit(u, v);
            });
        }
    }
    return report;
}

/// Metric-cone law at the power level: dist_pow(delta u, delta v) equals
/// modulus^degree * dist_pow(u, v), exactly in rationals.
template <ExactDistanceModel M>
AuditReport check_cone(const M& m, std::uint64_t seed, long n_samples, int jobs = 1) {
    AuditReport report;
    report.subject = m.name();
    report.seed = seed;
    report.tolerance = 0.0;
    report.checks.push_back(
        detail::run_check("cone_homogeneity", n_samples, jobs, [&](long i) -> std::optional<std::string> {
            Rng rng = Rng::for_sample(seed, static_cast<std::uint64_t>(i));
            const auto x = m.sample(rng), u = m.sample(rng), v = m.sample(rng);
            const Scale lam = m.sample_scale(rng);
            const Rat lhs = m.dist_pow(m.circle(lam, x, u), m.circle(lam, x, v));
            const Rat rhs = rat_pow(lam.modulus(), M::dist_degree) * m.dist_pow(u, v);
            if (lhs == rhs) return std::nullopt;
            return "x=" + m.describe(x) + " u=" + m.describe(u) + " v=" + m.describe(v) +
                   " lambda=" + scale_str(lam);
        }));
    return report;
}

namespace detail {

template <MetricModel M>
typename M::Point pull_into_ball(const M& m, const typename M::Point& x,
                                 typename M::Point u) {
    const Scale half(frac(1, 2));
    for (int i = 0; i < 200 && m.distance(x, u) > 1.0; ++i) u = m.circle(half, x, u);
    return u;
}

}  // namespace detail

/// Sup over sampled pairs in the unit ball of |(1/eps) d(delta_eps u,
/// delta_eps v) - d^x(u,v)|, per scale. d^x is the ambient distance on exact
/// models (where agreement is certified in rationals, giving literal zeros)
/// and the chart-derivative pullback metric on tangent-metric models.
template <MetricModel M>
ConvergenceReport<double> check_A2(const M& m, const typename M::Point& x, std::uint64_t seed,
                                   long n_pairs, const Schedule& sched) {
    using P = typename M::Point;
    std::vector<std::pair<P, P>> pairs;
    pairs.reserve(static_cast<size_t>(n_pairs));
    for (long i = 0; i < n_pairs; ++i) {
        Rng rng = Rng::for_sample(seed, static_cast<std::uint64_t>(i));
        pairs.emplace_back(detail::pull_into_ball(m, x, m.sample(rng)),
                           detail::pull_into_ball(m, x, m.sample(rng)));
    }
    const auto family = [&](const Scale& e) {
        double sup = 0.0;
        const double inv_mod = 1.0 / to_double(e.modulus());
        for (const auto& [u, v] : pairs) {
            double r;
            if constexpr (ExactDistanceModel<M>) {
                const Rat lhs = m.dist_pow(m.circle(e, x, u), m.circle(e, x, v));
                const Rat rhs = rat_pow(e.modulus(), M::dist_degree) * m.dist_pow(u, v);
                r = lhs == rhs ? 0.0
                              : std::fabs(inv_mod * m.distance(m.circle(e, x, u),
                                                               m.circle(e, x, v)) -
                                          m.distance(u, v));
            } else {
                static_assert(TangentMetricModel<M>);
                r = std::fabs(inv_mod * m.distance(m.circle(e, x, u), m.circle(e, x, v)) -
                              m.tangent_distance(x, u, v));
            }
            sup = std::max(sup, r);
        }
        return std::vector<double>{sup};
    };
    return estimate_limit(family, sched);
}

}  // namespace emalg
