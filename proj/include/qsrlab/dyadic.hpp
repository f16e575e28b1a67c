#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qsrlab {

using BigInt = boost::multiprecision::cpp_int;

/// Exact dyadic rational num / 2^exp. Every probability produced by the
/// matrix scheme has a power-of-two denominator, so this type makes the
/// security computations exact instead of tolerance-based.
///
/// Normal form: num odd, or num == 0 with exp == 0.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(long long value) : num_(value) {}

    /// num / 2^exp.
    static Dyadic scaled(BigInt num, unsigned exp) {
        Dyadic d;
        d.num_ = std::move(num);
        d.exp_ = exp;
        d.normalize();
        return d;
    }

    /// 2^k for any integer k.
    static Dyadic pow2(int k) {
        if (k >= 0) return Dyadic::scaled(BigInt(1) << k, 0);
        return Dyadic::scaled(1, static_cast<unsigned>(-k));
    }

    const BigInt& numerator() const { return num_; }
    unsigned exponent() const { return exp_; }

    bool is_zero() const { return num_.is_zero(); }
    int sign() const { return num_.sign(); }

    Dyadic operator-() const { return Dyadic::scaled(-num_, exp_); }

    Dyadic& operator+=(const Dyadic& o) {
        unsigned e = std::max(exp_, o.exp_);
        num_ = (num_ << (e - exp_)) + (o.num_ << (e - o.exp_));
        exp_ = e;
        normalize();
        return *this;
    }
    Dyadic& operator-=(const Dyadic& o) { return *this += -o; }
    Dyadic& operator*=(const Dyadic& o) {
        num_ *= o.num_;
        exp_ += o.exp_;
        normalize();
        return *this;
    }

    friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
    friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a -= b; }
    friend Dyadic operator*(Dyadic a, const Dyadic& b) { return a *= b; }

    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.exp_ == b.exp_ && a.num_ == b.num_;
    }
    friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
    friend bool operator<(const Dyadic& a, const Dyadic& b) {
        unsigned e = std::max(a.exp_, b.exp_);
        return (a.num_ << (e - a.exp_)) < (b.num_ << (e - b.exp_));
    }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return b < a; }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return !(b < a); }
    friend bool operator>=(const Dyadic& a, const Dyadic& b) { return !(a < b); }

    Dyadic abs() const { return num_.sign() < 0 ? -*this : *this; }

    double to_double() const {
        return num_.convert_to<double>() / std::ldexp(1.0, static_cast<int>(exp_));
    }

    /// "21/32", "2", "-3/4", "0": reduced fraction with decimal denominator.
    std::string to_fraction() const {
        if (exp_ == 0) return num_.str();
        return num_.str() + "/" + (BigInt(1) << exp_).str();
    }

    /// "21/2^5": numerator over an explicit power of two.
    std::string to_caret() const {
        if (exp_ == 0) return num_.str();
        return num_.str() + "/2^" + std::to_string(exp_);
    }

    /// Parses both to_fraction() and to_caret() forms; denominator must be a
    /// power of two.
    static Dyadic parse(std::string_view text);

private:
    BigInt num_ = 0;
    unsigned exp_ = 0;

    void normalize() {
        if (num_.is_zero()) {
            exp_ = 0;
            return;
        }
        unsigned tz = boost::multiprecision::lsb(boost::multiprecision::abs(num_));
        unsigned shift = std::min(tz, exp_);
        num_ >>= shift;
        exp_ -= shift;
    }
};

inline Dyadic Dyadic::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Dyadic::scaled(BigInt(std::string(text)), 0);
    }
    BigInt num{std::string(text.substr(0, slash))};
    std::string_view den = text.substr(slash + 1);
    if (den.rfind("2^", 0) == 0) {
        return Dyadic::scaled(std::move(num), static_cast<unsigned>(std::stoul(std::string(den.substr(2)))));
    }
    BigInt d{std::string(den)};
    if (d <= 0) throw std::invalid_argument("dyadic: denominator must be positive");
    unsigned k = boost::multiprecision::lsb(d);
    if ((BigInt(1) << k) != d) throw std::invalid_argument("dyadic: denominator must be a power of two");
    return Dyadic::scaled(std::move(num), k);
}

}  // namespace qsrlab
