#pragma once

// Minimal RAII wrapper over MPFR at fixed 128-bit precision. Private to the
// heights implementation; everything user-facing collapses to double plus an
// explicit error bound.

#include <mpfr.h>

#include <utility>

#include "pelldescent/integer_kernel.hpp"

namespace pelldescent::detail {

class Real {
  public:
    static constexpr mpfr_prec_t kPrec = 128;

    Real() { mpfr_init2(v_, kPrec); mpfr_set_zero(v_, 1); }
    explicit Real(double d) { mpfr_init2(v_, kPrec); mpfr_set_d(v_, d, MPFR_RNDN); }
    explicit Real(const Int& z) { mpfr_init2(v_, kPrec); mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN); }
    Real(const Real& o) { mpfr_init2(v_, kPrec); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, kPrec); mpfr_swap(v_, o.v_); }
    Real& operator=(Real o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~Real() { mpfr_clear(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    friend Real operator+(const Real& a, const Real& b) { Real r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator-(const Real& a, const Real& b) { Real r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator*(const Real& a, const Real& b) { Real r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator/(const Real& a, const Real& b) { Real r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }

    Real abs() const { Real r; mpfr_abs(r.v_, v_, MPFR_RNDN); return r; }
    Real log() const { Real r; mpfr_log(r.v_, v_, MPFR_RNDN); return r; }
    Real sqrt() const { Real r; mpfr_sqrt(r.v_, v_, MPFR_RNDN); return r; }

    /// log of an exact positive integer, full input precision.
    static Real log_of(const Int& z) { return Real(z).log(); }

  private:
    mpfr_t v_;
};

}  // namespace pelldescent::detail
