#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

#include "starorder/error.hpp"

namespace starorder {

// Coefficient backing of a polynomial instance. Exact mode is required for
// certificate verification, float mode for solver interop.
enum class CoeffMode { exact, real };

// Complex number backed either by exact rationals (GMP) or by doubles.
// Arithmetic between the two modes is a programming error and throws;
// conversions are explicit via to_real()/to_exact().
class Scalar {
public:
    Scalar() : mode_(CoeffMode::real), re_d_(0.0), im_d_(0.0) {}

    static Scalar exact(mpq_class re, mpq_class im = 0) {
        Scalar s;
        s.mode_ = CoeffMode::exact;
        s.re_q_ = std::move(re);
        s.im_q_ = std::move(im);
        s.re_q_.canonicalize();
        s.im_q_.canonicalize();
        return s;
    }

    static Scalar real(double re, double im = 0.0) {
        Scalar s;
        s.mode_ = CoeffMode::real;
        s.re_d_ = re;
        s.im_d_ = im;
        return s;
    }

    static Scalar zero(CoeffMode mode) {
        return mode == CoeffMode::exact ? exact(0) : real(0.0);
    }

    static Scalar one(CoeffMode mode) {
        return mode == CoeffMode::exact ? exact(1) : real(1.0);
    }

    CoeffMode mode() const { return mode_; }
    bool is_exact() const { return mode_ == CoeffMode::exact; }

    bool is_zero() const {
        if (is_exact()) return re_q_ == 0 && im_q_ == 0;
        return re_d_ == 0.0 && im_d_ == 0.0;
    }

    bool is_real() const { return is_exact() ? im_q_ == 0 : im_d_ == 0.0; }

    const mpq_class& re_exact() const { require_exact(); return re_q_; }
    const mpq_class& im_exact() const { require_exact(); return im_q_; }

    double re() const { return is_exact() ? re_q_.get_d() : re_d_; }
    double im() const { return is_exact() ? im_q_.get_d() : im_d_; }
    std::complex<double> to_complex() const { return {re(), im()}; }

    Scalar to_real() const { return real(re(), im()); }

    // Doubles are dyadic rationals, so this conversion is value-exact.
    Scalar to_exact() const {
        if (is_exact()) return *this;
        return exact(mpq_class(re_d_), mpq_class(im_d_));
    }

    Scalar conj() const {
        if (is_exact()) return exact(re_q_, -im_q_);
        return real(re_d_, -im_d_);
    }

    Scalar operator-() const {
        if (is_exact()) return exact(-re_q_, -im_q_);
        return real(-re_d_, -im_d_);
    }

    Scalar operator+(const Scalar& o) const {
        check(o);
        if (is_exact()) return exact(re_q_ + o.re_q_, im_q_ + o.im_q_);
        return real(re_d_ + o.re_d_, im_d_ + o.im_d_);
    }

    Scalar operator-(const Scalar& o) const { return *this + (-o); }

    Scalar operator*(const Scalar& o) const {
        check(o);
        if (is_exact())
            return exact(re_q_ * o.re_q_ - im_q_ * o.im_q_,
                         re_q_ * o.im_q_ + im_q_ * o.re_q_);
        return real(re_d_ * o.re_d_ - im_d_ * o.im_d_,
                    re_d_ * o.im_d_ + im_d_ * o.re_d_);
    }

    Scalar operator/(long den) const {
        if (is_exact()) return exact(re_q_ / den, im_q_ / den);
        return real(re_d_ / double(den), im_d_ / double(den));
    }

    // Division by i: (a+bi)/i = b - ai.
    Scalar div_i() const {
        if (is_exact()) return exact(im_q_, -re_q_);
        return real(im_d_, -re_d_);
    }

    bool operator==(const Scalar& o) const {
        check(o);
        if (is_exact()) return re_q_ == o.re_q_ && im_q_ == o.im_q_;
        return re_d_ == o.re_d_ && im_d_ == o.im_d_;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    double abs2() const {
        const double r = re(), i = im();
        return r * r + i * i;
    }

private:
    void require_exact() const {
        if (!is_exact())
            throw Error(Errc::mode_mismatch, "exact coefficient access on float-mode scalar");
    }
    void check(const Scalar& o) const {
        if (mode_ != o.mode_)
            throw Error(Errc::mode_mismatch, "mixed exact/float scalar arithmetic");
    }

    CoeffMode mode_;
    mpq_class re_q_, im_q_;
    double re_d_ = 0.0, im_d_ = 0.0;
};

} // namespace starorder
