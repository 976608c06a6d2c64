#pragma once

#include <stdexcept>
#include <string>

#include "../finite.hpp"
#include "../rng.hpp"
#include "../scale.hpp"

namespace emalg {

/// Finite carrier {0, ..., n-1} with one generating operation table; the
/// scale ratio^k acts as the k-th operation iterate (negative k through the
/// row inverse). Only pure powers of the ratio are representable: any other
/// factor, or a sigma component, raises std::domain_error.
class FiniteIrqModel {
  public:
    using Point = int;
    static constexpr bool exact = true;

    explicit FiniteIrqModel(const OpTable& circ, const Rat& ratio = frac(1, 2))
        : FiniteIrqModel(circ, row_inverse_checked(circ), ratio) {
        for (int x = 0; x < circ_.n; ++x)
            if (circ_.at(x, x) != x)
                throw std::invalid_argument("table is not idempotent at x=" + std::to_string(x));
    }

    /// Bypasses validation; for exercising audits against broken tables.
    static FiniteIrqModel with_tables(const OpTable& circ, const OpTable& bull,
                                      const Rat& ratio = frac(1, 2)) {
        return FiniteIrqModel(circ, bull, ratio);
    }

    std::string name() const { return "finite_irq:n=" + std::to_string(circ_.n); }
    int order() const { return circ_.n; }
    const Rat& ratio() const { return ratio_; }

    Point circle(const Scale& s, Point x, Point y) const {
        long k = power_of(s);
        Point out = y;
        for (; k > 0; --k) out = circ_.at(x, out);
        for (; k < 0; ++k) out = bull_.at(x, out);
        return out;
    }

    Point bullet(const Scale& s, Point x, Point y) const { return circle(s.inverse(), x, y); }

    bool equal(Point a, Point b) const { return a == b; }

    Point sample(Rng& rng) const {
        return static_cast<Point>(rng.uniform(0, static_cast<long>(circ_.n) - 1));
    }

    Scale sample_scale(Rng& rng) const {
        const long k = rng.uniform(-3, 3);
        Rat f = 1;
        for (long i = 0; i < k; ++i) f *= ratio_;
        for (long i = 0; i > k; --i) f /= ratio_;
        return Scale(f);
    }

    std::string describe(Point p) const { return std::to_string(p); }

  private:
    FiniteIrqModel(OpTable circ, OpTable bull, Rat ratio)
        : circ_(std::move(circ)), bull_(std::move(bull)), ratio_(std::move(ratio)) {
        if (ratio_ <= 0 || ratio_ == 1)
            throw std::invalid_argument("generating ratio must be positive and not 1");
    }

    static OpTable row_inverse_checked(const OpTable& t) {
        OpTable inv{t.n, std::vector<int>(static_cast<size_t>(t.n) * t.n, -1)};
        for (int x = 0; x < t.n; ++x)
            for (int y = 0; y < t.n; ++y) {
                const int v = t.at(x, y);
                if (v < 0 || v >= t.n || inv.at(x, v) != -1)
                    throw std::invalid_argument("row " + std::to_string(x) +
                                                " is not a permutation");
                inv.set(x, v, y);
            }
        return inv;
    }

    long power_of(const Scale& s) const {
        if (s.parity() == Parity::sigma)
            throw std::domain_error("finite carrier does not represent the sigma scale");
        const Rat f = s.factor();
        if (f == 1) return 0;
        Rat acc = 1;
        for (long k = 1; k <= 64; ++k) {
            acc *= ratio_;
            if (acc == f) return k;
        }
        acc = 1;
        for (long k = 1; k <= 64; ++k) {
            acc /= ratio_;
            if (acc == f) return -k;
        }
        throw std::domain_error("scale factor " + rat_str(f) + " is not a power of " +
                                rat_str(ratio_));
    }

    OpTable circ_;
    OpTable bull_;
    Rat ratio_;
};

}  // namespace emalg
