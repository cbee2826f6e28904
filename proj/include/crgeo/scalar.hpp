#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

namespace crgeo {

// Gaussian rational a + b*i with arbitrary-precision rational parts. All
// arithmetic is exact; this is the coefficient field for every polynomial in
// the toolkit.
class Scalar {
public:
    Scalar() : re_(0), im_(0) {}
    Scalar(long v) : re_(v), im_(0) {}
    Scalar(mpq_class re) : re_(std::move(re)), im_(0) {}
    Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

    static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }

    static Scalar rational(long num, long den) {
        mpq_class q(num, den);
        q.canonicalize();
        return Scalar(q);
    }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    Scalar conj() const { return Scalar(re_, -im_); }

    // |s|^2 = s * conj(s), always a nonnegative rational.
    mpq_class norm2() const { return re_ * re_ + im_ * im_; }

    Scalar operator-() const { return Scalar(-re_, -im_); }

    Scalar operator+(const Scalar& o) const { return Scalar(re_ + o.re_, im_ + o.im_); }
    Scalar operator-(const Scalar& o) const { return Scalar(re_ - o.re_, im_ - o.im_); }
    Scalar operator*(const Scalar& o) const {
        return Scalar(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
    }
    Scalar operator/(const Scalar& o) const {
        mpq_class n = o.norm2();
        if (n == 0) throw std::logic_error("Scalar: division by zero");
        return Scalar((re_ * o.re_ + im_ * o.im_) / n, (im_ * o.re_ - re_ * o.im_) / n);
    }

    Scalar& operator+=(const Scalar& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Deterministic total order, used only for canonical tie-breaking.
    friend bool operator<(const Scalar& a, const Scalar& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

    // Canonical string, re-parseable by the expression grammar:
    // "3/4", "-2", "i", "-1/2*i", "1-1/2*i".
    std::string str() const {
        if (im_ == 0) return re_.get_str();
        std::string ims;
        if (im_ == 1)
            ims = "i";
        else if (im_ == -1)
            ims = "-i";
        else
            ims = im_.get_str() + "*i";
        if (re_ == 0) return ims;
        if (im_ > 0) return re_.get_str() + "+" + ims;
        return re_.get_str() + ims; // negative imaginary part carries its own '-'
    }

private:
    mpq_class re_, im_;
};

inline Scalar operator*(long a, const Scalar& s) { return Scalar(a) * s; }

} // namespace crgeo
