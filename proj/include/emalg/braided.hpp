#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "limits.hpp"

namespace emalg {

/// Wraps a model whose scale action includes the parity flip, exposing the
/// point symmetry sigma^x = circle at the sigma scale. Models where sigma^x
/// degenerates to the identity near some sampled x are rejected.
template <Model M>
class SigmaExtension {
  public:
    using Point = typename M::Point;

    explicit SigmaExtension(M model, std::uint64_t probe_seed = 1) : model_(std::move(model)) {
        Rng rng(probe_seed);
        for (int i = 0; i < 16; ++i) {
            const Point x = model_.sample(rng);
            bool witness = false;
            for (int t = 0; t < 32 && !witness; ++t) {
                const Point y = model_.sample(rng);
                witness = !model_.equal(sigma(x, y), y);
            }
            if (!witness)
                throw std::invalid_argument("sigma^x degenerates to the identity near x=" +
                                            model_.describe(x));
        }
    }

    const M& base() const { return model_; }

    Point sigma(const Point& x, const Point& y) const {
        return model_.circle(Scale::sigma(), x, y);
    }

  private:
    M model_;
};

template <Model M>
typename M::Point sigma_apply(const SigmaExtension<M>& e, const typename M::Point& x,
                              const typename M::Point& y) {
    return e.sigma(x, y);
}

/// Point-symmetry audit: involutivity, commutation with every dilation,
/// isometry of the distance at x, and morphism of the tangent difference.
template <CoordModel M>
AuditReport audit_sigma(const SigmaExtension<M>& ext, std::uint64_t seed, long n_samples,
                        const Schedule& sched, double tol = 1e-9) {
    const M& m = ext.base();
    AuditReport report;
    report.subject = m.name();
    report.seed = seed;
    report.tolerance = M::exact ? 0.0 : tol;
    using P = typename M::Point;

    const auto eq = [&](const P& a, const P& b) { return points_close(m, a, b, report.tolerance); };
    const auto check = [&](const std::string& name, auto&& prop) {
        report.checks.push_back(
            detail::run_check(name, n_samples, 1, [&](long i) -> std::optional<std::string> {
                Rng rng = Rng::for_sample(seed, static_cast<std::uint64_t>(i));
                return prop(rng);
            }));
    };
    const auto wit = [&](const P& x, const P& u, const P& v) {
        return "x=" + m.describe(x) + " u=" + m.describe(u) + " v=" + m.describe(v);
    };

    check("involutive", [&](Rng& rng) -> std::optional<std::string> {
        const P x = m.sample(rng), y = m.sample(rng);
        if (eq(ext.sigma(x, ext.sigma(x, y)), y)) return std::nullopt;
        return "x=" + m.describe(x) + " y=" + m.describe(y);
    });
    check("commutes_with_dilation", [&](Rng& rng) -> std::optional<std::string> {
        const P x = m.sample(rng), y = m.sample(rng);
        const Scale e = m.sample_scale(rng);
        if (eq(ext.sigma(x, m.circle(e, x, y)), m.circle(e, x, ext.sigma(x, y))))
            return std::nullopt;
        return "x=" + m.describe(x) + " y=" + m.describe(y) + " eps=" + scale_str(e);
    });
    check("isometry_dx", [&](Rng& rng) -> std::optional<std::string> {
        const P x = m.sample(rng), u = m.sample(rng), v = m.sample(rng);
        const P su = ext.sigma(x, u), sv = ext.sigma(x, v);
        if constexpr (ExactDistanceModel<M>) {
            if (m.dist_pow(su, sv) == m.dist_pow(u, v)) return std::nullopt;
        } else {
            static_assert(TangentMetricModel<M>);
            if (std::fabs(m.tangent_distance(x, su, sv) - m.tangent_distance(x, u, v)) <= tol)
                return std::nullopt;
        }
        return wit(x, u, v);
    });
    check("tangent_morphism", [&](Rng& rng) -> std::optional<std::string> {
        const P x = m.sample(rng), u = m.sample(rng), v = m.sample(rng);
        const auto duv = tangent_difference(m, x, u, v, sched).point;
        const auto dss = tangent_difference(m, x, ext.sigma(x, u), ext.sigma(x, v), sched).point;
        if (!duv || !dss) return wit(x, u, v) + " (no convergence)";
        if (eq(ext.sigma(x, *duv), *dss)) return std::nullopt;
        return wit(x, u, v);
    });
    return report;
}

/// Braid relation for S(x, y) = (sigma^x y, x) on sampled triples, plus
/// sampled nondegeneracy; involutivity of S is reported informationally
/// (S is not expected to be involutive).
template <Model M>
AuditReport braid_audit_continuous(const SigmaExtension<M>& ext, std::uint64_t seed,
                                   long n_triples, double tol = 1e-9) {
    const M& m = ext.base();
    AuditReport report;
    report.subject = m.name();
    report.seed = seed;
    report.tolerance = M::exact ? 0.0 : tol;
    using P = typename M::Point;
    using Triple = std::array<P, 3>;

    const auto eq = [&](const P& a, const P& b) { return points_close(m, a, b, report.tolerance); };
    const auto s12 = [&](const Triple& t) { return Triple{ext.sigma(t[0], t[1]), t[0], t[2]}; };
    const auto s23 = [&](const Triple& t) { return Triple{t[0], ext.sigma(t[1], t[2]), t[1]}; };
    const auto draw = [&](long i) {
        Rng rng = Rng::for_sample(seed, static_cast<std::uint64_t>(i));
        return Triple{m.sample(rng), m.sample(rng), m.sample(rng)};
    };
    const auto wit = [&](const Triple& t) {
        return "x=" + m.describe(t[0]) + " y=" + m.describe(t[1]) + " z=" + m.describe(t[2]);
    };

    report.checks.push_back(
        detail::run_check("braid_relation", n_triples, 1, [&](long i) -> std::optional<std::string> {
            const Triple t = draw(i);
            const Triple lhs = s12(s23(s12(t)));
            const Triple rhs = s23(s12(s23(t)));
            for (int c = 0; c < 3; ++c)
                if (!eq(lhs[static_cast<size_t>(c)], rhs[static_cast<size_t>(c)])) return wit(t);
            return std::nullopt;
        }));
    report.checks.push_back(detail::run_check(
        "nondegenerate_rows", n_triples, 1, [&](long i) -> std::optional<std::string> {
            const Triple t = draw(i);
            if (eq(ext.sigma(t[0], ext.sigma(t[0], t[1])), t[1])) return std::nullopt;
            return wit(t);
        }));
    {
        CheckResult c = detail::run_check("involutive_pairs", n_triples, 1,
                                          [&](long i) -> std::optional<std::string> {
                                              const Triple t = draw(i);
                                              const auto [a, b] =
                                                  std::pair{ext.sigma(t[0], t[1]), t[0]};
                                              const auto [a2, b2] = std::pair{ext.sigma(a, b), a};
                                              if (eq(a2, t[0]) && eq(b2, t[1])) return std::nullopt;
                                              return wit(t);
                                          });
        c.gating = false;
        report.checks.push_back(std::move(c));
    }
    return report;
}

}  // namespace emalg
