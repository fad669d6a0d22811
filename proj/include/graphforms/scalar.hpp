#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

#include "graphforms/error.hpp"

namespace graphforms {

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator. Thin wrapper over GMP's mpq_class pinning the canonical
/// text form used throughout reports: "p" when the denominator is 1,
/// "p/q" otherwise.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(static_cast<signed long>(n)) {}
    Rational(int n) : v_(n) {}
    Rational(long n, long d) {
        if (d == 0) raise("DivisionByZero", "rational with zero denominator");
        v_ = mpq_class(n, d);
        v_.canonicalize();
    }
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    static Rational parse(std::string_view text) {
        auto parsed = try_parse(text);
        if (!parsed) raise("ParseError", "invalid rational literal '" + std::string(text) + "'");
        return *parsed;
    }

    static std::optional<Rational> try_parse(std::string_view text) {
        if (text.empty()) return std::nullopt;
        std::string s(text);
        // mpq accepts "p/q" directly; validate digits ourselves so garbage
        // like "1/2/3" or "+ 1" is rejected deterministically.
        std::size_t slash = s.find('/');
        auto digits_ok = [](std::string_view t, bool allow_sign) {
            if (t.empty()) return false;
            std::size_t i = 0;
            if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
            if (i == t.size()) return false;
            for (; i < t.size(); ++i)
                if (t[i] < '0' || t[i] > '9') return false;
            return true;
        };
        if (slash == std::string::npos) {
            if (!digits_ok(s, true)) return std::nullopt;
        } else {
            if (!digits_ok(s.substr(0, slash), true)) return std::nullopt;
            if (!digits_ok(s.substr(slash + 1), false)) return std::nullopt;
            if (s.substr(slash + 1).find_first_not_of('0') == std::string::npos) return std::nullopt;
        }
        mpq_class q;
        if (q.set_str(s, 10) != 0) return std::nullopt;
        q.canonicalize();
        return Rational(std::move(q));
    }

    std::string to_string() const {
        if (v_.get_den() == 1) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    const mpq_class& value() const { return v_; }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) raise("DivisionByZero", "rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

private:
    mpq_class v_;
};

/// Element of Q(i): re + im*i with exact rational parts. The ground field of
/// every matrix in the engine. Canonical form is inherited from Rational.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long n) : re_(n) {}
    GaussianRational(int n) : re_(n) {}
    GaussianRational(Rational re) : re_(std::move(re)) {}
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return GaussianRational(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    GaussianRational conj() const { return GaussianRational(re_, -im_); }

    /// |z|^2 = z * conj(z), always a nonnegative rational.
    Rational norm2() const { return re_ * re_ + im_ * im_; }

    GaussianRational operator-() const { return GaussianRational(-re_, -im_); }
    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) raise("DivisionByZero", "gaussian rational division by zero");
        Rational n = o.norm2();
        GaussianRational c = o.conj();
        *this *= c;
        re_ /= n;
        im_ /= n;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    /// Compact display form for witnesses and logs, e.g. "3/2-i" or "0".
    /// Reports use the structured {re, im} rendering from io.hpp instead.
    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        if (!re_.is_zero()) out += re_.to_string();
        if (!im_.is_zero()) {
            if (im_ == Rational(1))
                out += out.empty() ? "i" : "+i";
            else if (im_ == Rational(-1))
                out += "-i";
            else {
                if (!out.empty() && im_.sign() > 0) out += "+";
                out += im_.to_string() + "i";
            }
        }
        return out;
    }

private:
    Rational re_;
    Rational im_;
};

}  // namespace graphforms
