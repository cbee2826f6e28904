#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace crgeo {

// Exact rational extended with a single +infinity, ordered above every
// rational. Arithmetic is only defined between finite values; infinity exists
// for comparisons and reporting.
class QExt {
public:
    QExt() : v_(0) {}
    QExt(long v) : v_(v) {}
    QExt(mpq_class v) : v_(std::move(v)) {}

    static QExt infinity() {
        QExt q;
        q.inf_ = true;
        return q;
    }

    bool is_inf() const { return inf_; }
    bool is_finite() const { return !inf_; }

    const mpq_class& value() const {
        if (inf_) throw std::logic_error("QExt: value() on infinity");
        return v_;
    }

    // Exact integer value; throws when infinite or not an integer.
    long integer() const {
        const mpq_class& v = value();
        if (v.get_den() != 1) throw std::logic_error("QExt: not an integer");
        if (!v.get_num().fits_slong_p()) throw std::logic_error("QExt: integer overflow");
        return v.get_num().get_si();
    }

    friend bool operator==(const QExt& a, const QExt& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.v_ == b.v_;
    }
    friend bool operator<(const QExt& a, const QExt& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.v_ < b.v_;
    }
    friend bool operator>(const QExt& a, const QExt& b) { return b < a; }
    friend bool operator<=(const QExt& a, const QExt& b) { return !(b < a); }
    friend bool operator>=(const QExt& a, const QExt& b) { return !(a < b); }
    friend bool operator!=(const QExt& a, const QExt& b) { return !(a == b); }

    QExt operator+(const QExt& o) const { return QExt(value() + o.value()); }
    QExt operator-(const QExt& o) const { return QExt(value() - o.value()); }

    std::string str() const { return inf_ ? "inf" : v_.get_str(); }

private:
    bool inf_ = false;
    mpq_class v_;
};

// Lowest integer >= v.
inline mpz_class ceil_int(const mpq_class& v) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
    return q;
}

// Small deterministic linear congruential generator; used wherever seeded
// draws feed a report, so outputs are identical across platforms and runs.
class Lcg {
public:
    explicit Lcg(std::uint64_t seed) : state_(seed * 0x9E3779B97F4A7C15ULL + 1) {}

    std::uint64_t next() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_;
    }

    // Uniform-ish draw in [0, m); m must be positive and small.
    int below(int m) { return static_cast<int>((next() >> 33) % static_cast<std::uint64_t>(m)); }

private:
    std::uint64_t state_;
};

} // namespace crgeo
