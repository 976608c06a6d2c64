#pragma once

#include "model.hpp"

namespace emalg {

/// Difference based at x: apply bullet at base circle(e, x, u) to circle(e, x, v).
/// At scale e this is the approximate difference of v and u seen from x.
template <Model M>
typename M::Point rel_difference(const M& m, const typename M::Point& x, const typename M::Point& u,
                                 const typename M::Point& v, const Scale& e) {
    return m.bullet(e, m.circle(e, x, u), m.circle(e, x, v));
}

/// Sum based at x: bullet(e, x, circle(e, circle(e, x, u), v)).
template <Model M>
typename M::Point rel_sum(const M& m, const typename M::Point& x, const typename M::Point& u,
                          const typename M::Point& v, const Scale& e) {
    return m.bullet(e, x, m.circle(e, m.circle(e, x, u), v));
}

/// Inverse based at x: bullet(e, circle(e, x, u), x).
template <Model M>
typename M::Point rel_inverse(const M& m, const typename M::Point& x, const typename M::Point& u,
                              const Scale& e) {
    return m.bullet(e, m.circle(e, x, u), x);
}

/// k-fold iterate of x o . at the given base ratio: positive k composes
/// circle, negative k composes bullet, k = 0 returns u.
template <Model M>
typename M::Point iterate(const M& m, const typename M::Point& x, const typename M::Point& u,
                          long k, const Rat& ratio = frac(1, 2)) {
    const Scale s{ratio};
    typename M::Point p = u;
    for (long i = 0, steps = k < 0 ? -k : k; i < steps; ++i)
        p = k > 0 ? m.circle(s, x, p) : m.bullet(s, x, p);
    return p;
}

/// sigma^x y: the parity element of the scale group acting at base x.
template <Model M>
typename M::Point sigma_apply(const M& m, const typename M::Point& x, const typename M::Point& y) {
    return m.circle(Scale::sigma(), x, y);
}

}  // namespace emalg
