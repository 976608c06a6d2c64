#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "derived_ops.hpp"
#include "model.hpp"

namespace emalg {

struct CheckResult {
    std::string name;
    long samples = 0;
    bool pass = true;
    bool gating = true;  // informational rows report but do not fail the audit
    std::string witness; // first counterexample, replayable through public ops
};

struct AuditReport {
    std::string subject;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (c.gating && !c.pass) return false;
        return true;
    }

    const CheckResult* find(std::string_view name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

struct SampleFailure {
    long index = -1;
    std::string witness;
};

/// Runs fn(i) for i in [0, n); fn returns a witness string on failure.
/// The lowest failing index wins, so the result is identical for any worker
/// count: each worker scans a contiguous block and block minima are merged.
template <class Fn>
std::optional<SampleFailure> scan_samples(long n, int jobs, Fn&& fn) {
    if (jobs < 2 || n < 64) {
        for (long i = 0; i < n; ++i)
            if (auto w = fn(i)) return SampleFailure{i, *w};
        return std::nullopt;
    }
    const int workers = jobs;
    std::vector<std::optional<SampleFailure>> found(static_cast<size_t>(workers));
    std::vector<std::thread> pool;
    const long chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            const long lo = w * chunk, hi = std::min(n, lo + chunk);
            for (long i = lo; i < hi; ++i) {
                if (auto wit = fn(i)) {
                    found[static_cast<size_t>(w)] = SampleFailure{i, *wit};
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    std::optional<SampleFailure> best;
    for (const auto& f : found)
        if (f && (!best || f->index < best->index)) best = f;
    return best;
}

namespace detail {

template <Model M>
std::string tuple_witness(const M& m, const typename M::Point& x, const typename M::Point& y,
                          const Scale& e1, const Scale& e2) {
    return "x=" + m.describe(x) + " y=" + m.describe(y) + " eps=" + scale_str(e1) +
           " mu=" + scale_str(e2);
}

template <class Fn>
CheckResult run_check(const std::string& name, long n, int jobs, Fn&& fn) {
    CheckResult r;
    r.name = name;
    r.samples = n;
    if (auto fail = scan_samples(n, jobs, fn)) {
        r.pass = false;
        r.witness = "sample " + std::to_string(fail->index) + ": " + fail->witness;
    }
    return r;
}

}  // namespace detail

/// Carrier axioms on random tuples: both P1 cancellations, both P2
/// idempotency forms, and the scale-composition axiom.
template <Model M>
AuditReport audit_irq(const M& m, std::uint64_t seed, long n_samples, int jobs = 1,
                      double tol = 1e-9) {
    AuditReport report;
    report.subject = m.name();
    report.seed = seed;
    report.tolerance = M::exact ? 0.0 : tol;
    using P = typename M::Point;

    struct Tuple {
        P x, y;
        Scale e1, e2;
    };
    const auto draw = [&](long i) {
        Rng rng = Rng::for_sample(seed, static_cast<std::uint64_t>(i));
        Tuple t{m.sample(rng), m.sample(rng), m.sample_scale(rng), m.sample_scale(rng)};
        return t;
    };
    const auto eq = [&](const P& a, const P& b) { return points_close(m, a, b, report.tolerance); };
    const auto check = [&](const std::string& name, auto&& prop) {
        report.checks.push_back(detail::run_check(name, n_samples, jobs, [&](long i) -> std::optional<std::string> {
            const Tuple t = draw(i);
            if (prop(t)) return std::nullopt;
            return detail::tuple_witness(m, t.x, t.y, t.e1, t.e2);
        }));
    };

    check("P1_circle_after_bullet",
          [&](const Tuple& t) { return eq(m.circle(t.e1, t.x, m.bullet(t.e1, t.x, t.y)), t.y); });
    check("P1_bullet_after_circle",
          [&](const Tuple& t) { return eq(m.bullet(t.e1, t.x, m.circle(t.e1, t.x, t.y)), t.y); });
    check("P2_circle", [&](const Tuple& t) { return eq(m.circle(t.e1, t.x, t.x), t.x); });
    check("P2_bullet", [&](const Tuple& t) { return eq(m.bullet(t.e1, t.x, t.x), t.x); });
    check("scale_compose", [&](const Tuple& t) {
        return eq(m.circle(t.e1, t.x, m.circle(t.e2, t.x, t.y)), m.circle(t.e1 * t.e2, t.x, t.y));
    });
    return report;
}

/// The eight derived-operation identities. The unsubscripted base point in
/// items (c), (d), (e) is read as circle(e, x, u); item (k) is checked over
/// the full scale group.
template <Model M>
AuditReport audit_identities(const M& m, std::uint64_t seed, long n_samples, int jobs = 1,
                             double tol = 1e-9) {
    AuditReport report;
    report.subject = m.name();
    report.seed = seed;
    report.tolerance = M::exact ? 0.0 : tol;
    using P = typename M::Point;

    struct Tuple {
        P x, u, v, w;
        Scale e, mu;
    };
    const auto draw = [&](long i) {
        Rng rng = Rng::for_sample(seed, static_cast<std::uint64_t>(i));
        return Tuple{m.sample(rng), m.sample(rng), m.sample(rng), m.sample(rng),
                     m.sample_scale(rng), m.sample_scale(rng)};
    };
    const auto eq = [&](const P& a, const P& b) { return points_close(m, a, b, report.tolerance); };
    const auto check = [&](const std::string& name, auto&& prop) {
        report.checks.push_back(detail::run_check(name, n_samples, jobs, [&](long i) -> std::optional<std::string> {
            const Tuple t = draw(i);
            if (prop(t)) return std::nullopt;
            return "x=" + m.describe(t.x) + " u=" + m.describe(t.u) + " v=" + m.describe(t.v) +
                   " w=" + m.describe(t.w) + " eps=" + scale_str(t.e) + " mu=" + scale_str(t.mu);
        }));
    };

    check("a_difference_of_sum", [&](const Tuple& t) {
        return eq(rel_difference(m, t.x, t.u, rel_sum(m, t.x, t.u, t.v, t.e), t.e), t.v);
    });
    check("b_sum_of_difference", [&](const Tuple& t) {
        return eq(rel_sum(m, t.x, t.u, rel_difference(m, t.x, t.u, t.v, t.e), t.e), t.v);
    });
    check("c_difference_via_inverse", [&](const Tuple& t) {
        const P base = m.circle(t.e, t.x, t.u);
        return eq(rel_difference(m, t.x, t.u, t.v, t.e),
                  rel_sum(m, base, rel_inverse(m, t.x, t.u, t.e), t.v, t.e));
    });
    check("d_inverse_of_inverse", [&](const Tuple& t) {
        const P base = m.circle(t.e, t.x, t.u);
        return eq(rel_inverse(m, base, rel_inverse(m, t.x, t.u, t.e), t.e), t.u);
    });
    check("e_shifted_associativity", [&](const Tuple& t) {
        const P base = m.circle(t.e, t.x, t.u);
        return eq(rel_sum(m, t.x, t.u, rel_sum(m, base, t.v, t.w, t.e), t.e),
                  rel_sum(m, t.x, rel_sum(m, t.x, t.u, t.v, t.e), t.w, t.e));
    });
    check("f_inverse_as_difference", [&](const Tuple& t) {
        return eq(rel_inverse(m, t.x, t.u, t.e), rel_difference(m, t.x, t.u, t.x, t.e));
    });
    check("g_sum_at_base", [&](const Tuple& t) { return eq(rel_sum(m, t.x, t.x, t.u, t.e), t.u); });
    check("k_distributivity", [&](const Tuple& t) {
        const Scale em = t.e * t.mu;
        const P lhs = rel_difference(m, t.x, m.circle(t.mu, t.x, t.u), m.circle(t.mu, t.x, t.v), t.e);
        const P rhs = m.circle(t.mu, m.circle(em, t.x, t.u), rel_difference(m, t.x, t.u, t.v, em));
        return eq(lhs, rhs);
    });
    return report;
}

}  // namespace emalg
