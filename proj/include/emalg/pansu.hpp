#pragma once

#include <cstdint>
#include <functional>

#include "limits.hpp"

namespace emalg {

/// Difference quotient for a map f between two carriers: at scale eps the
/// value is f(x) pulled back against f(x circled toward u), i.e.
/// bullet_eps(f(x), f(circle_eps(x, u))); the limit is the derivative Tf(x,u).
template <CoordModel MX, CoordModel MY, class F>
TangentReport<MY> pansu_derivative(const MX& mx, const MY& my, F&& f, const typename MX::Point& x,
                                   const typename MX::Point& u, const Schedule& sched) {
    const typename MY::Point fx = f(x);
    return detail::tangent_limit(
        my, sched, [&](const Scale& e) { return my.bullet(e, fx, f(mx.circle(e, x, u))); });
}

template <CoordModel MX, CoordModel MY>
struct DerivativeProbe {
    std::function<typename MY::Point(const typename MX::Point&)> f;
    typename MX::Point x;
    typename MX::Point u;
    Schedule schedule;
    TangentReport<MY> result{};

    void run(const MX& mx, const MY& my) { result = pansu_derivative(mx, my, f, x, u, schedule); }
};

/// Tf(x, .) as a morphism of the tangent groups: additivity over the
/// extrapolated sums and homogeneity against every dilation.
template <CoordModel MX, CoordModel MY, class F>
AuditReport audit_morphism(const MX& mx, const MY& my, F&& f, const typename MX::Point& x,
                           std::uint64_t seed, long n_samples, const Schedule& sched,
                           double tol = 1e-9) {
    AuditReport report;
    report.subject = mx.name() + "->" + my.name();
    report.seed = seed;
    report.tolerance = MY::exact ? 0.0 : tol;
    using PX = typename MX::Point;
    using PY = typename MY::Point;

    const PY fx = f(x);
    const auto eq = [&](const PY& a, const PY& b) {
        return points_close(my, a, b, report.tolerance);
    };
    const auto deriv = [&](const PX& u) { return pansu_derivative(mx, my, f, x, u, sched).point; };
    const auto check = [&](const std::string& name, auto&& prop) {
        report.checks.push_back(
            detail::run_check(name, n_samples, 1, [&](long i) -> std::optional<std::string> {
                Rng rng = Rng::for_sample(seed, static_cast<std::uint64_t>(i));
                return prop(rng);
            }));
    };

    check("additive", [&](Rng& rng) -> std::optional<std::string> {
        const PX u = mx.sample(rng), v = mx.sample(rng);
        const std::string wit = "x=" + mx.describe(x) + " u=" + mx.describe(u) +
                                " v=" + mx.describe(v);
        const auto suv = tangent_sum(mx, x, u, v, sched).point;
        const auto tu = deriv(u);
        const auto tv = deriv(v);
        if (!suv || !tu || !tv) return wit + " (no convergence)";
        const auto lhs = deriv(*suv);
        const auto rhs = tangent_sum(my, fx, *tu, *tv, sched).point;
        if (!lhs || !rhs) return wit + " (no convergence)";
        if (eq(*lhs, *rhs)) return std::nullopt;
        return wit;
    });
    check("homogeneous", [&](Rng& rng) -> std::optional<std::string> {
        const PX u = mx.sample(rng);
        const Scale e = mx.sample_scale(rng);
        const std::string wit =
            "x=" + mx.describe(x) + " u=" + mx.describe(u) + " eps=" + scale_str(e);
        const auto tu = deriv(u);
        const auto lhs = deriv(mx.circle(e, x, u));
        if (!tu || !lhs) return wit + " (no convergence)";
        if (eq(*lhs, my.circle(e, fx, *tu))) return std::nullopt;
        return wit;
    });
    return report;
}

}  // namespace emalg
