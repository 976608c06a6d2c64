#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "rational.hpp"

namespace emalg {

/// Order-2 component of the scale group. `sigma` composes to `plus` with
/// itself and commutes with every factor.
enum class Parity : unsigned char { plus = 0, sigma = 1 };

inline Parity operator*(Parity a, Parity b) {
    return static_cast<Parity>(static_cast<unsigned char>(a) ^ static_cast<unsigned char>(b));
}

/// Element of the scale group (0, inf) x Z2: a positive rational factor
/// and a parity bit. The modulus forgets parity and is multiplicative.
class Scale {
public:
    Scale() : factor_(1), parity_(Parity::plus) {}

    explicit Scale(Rat factor, Parity parity = Parity::plus)
        : factor_(std::move(factor)), parity_(parity) {
        if (factor_ <= 0) throw std::invalid_argument("Scale: factor must be positive");
    }

    static const Scale& one() {
        static const Scale s;
        return s;
    }

    static Scale sigma() { return Scale(Rat(1), Parity::sigma); }

    /// 2^-j with plus parity.
    static Scale dyadic(int j, Parity parity = Parity::plus) {
        return Scale(rat_pow(frac(1, 2), j), parity);
    }

    const Rat& factor() const { return factor_; }
    Parity parity() const { return parity_; }
    bool flips() const { return parity_ == Parity::sigma; }
    const Rat& modulus() const { return factor_; }
    bool is_one() const { return factor_ == 1 && parity_ == Parity::plus; }

    Scale inverse() const { return Scale(Rat(1) / factor_, parity_); }

    Scale pow(long k) const {
        return Scale(rat_pow(factor_, k), (k % 2 != 0) ? parity_ : Parity::plus);
    }

    friend Scale operator*(const Scale& a, const Scale& b) {
        return Scale(a.factor_ * b.factor_, a.parity_ * b.parity_);
    }

    friend bool operator==(const Scale& a, const Scale& b) {
        return a.factor_ == b.factor_ && a.parity_ == b.parity_;
    }

private:
    Rat factor_;
    Parity parity_;
};

inline Scale scale_combine(const Scale& a, const Scale& b) { return a * b; }
inline Scale scale_invert(const Scale& a) { return a.inverse(); }
inline const Rat& modulus(const Scale& a) { return a.modulus(); }

inline std::string scale_str(const Scale& s) {
    return s.flips() ? rat_str(s.factor()) + "*s" : rat_str(s.factor());
}

inline std::ostream& operator<<(std::ostream& os, const Scale& s) { return os << scale_str(s); }

}  // namespace emalg
