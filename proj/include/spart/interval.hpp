#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace spart {

// Certified real interval [lo, hi] with outward rounding on MPFR.
//
// Every operation returns an interval guaranteed to contain the exact result
// of applying the operation pointwise to the operands.  Precision is a width
// control, never a correctness control: results are sound at any precision.
//
// Invariant: lo <= hi, both finite unless explicitly made unbounded by an
// overflowing op (MPFR saturates to +-inf, which keeps enclosures sound).
class RI {
public:
    explicit RI(mpfr_prec_t prec = 64);
    RI(const RI& o);
    RI(RI&& o) noexcept;
    RI& operator=(const RI& o);
    RI& operator=(RI&& o) noexcept;
    ~RI();

    // Exact point intervals (value representable => lo == hi).
    static RI from_si(long v, mpfr_prec_t prec = 64);
    static RI from_ui(unsigned long v, mpfr_prec_t prec = 64);
    static RI from_double(double v, mpfr_prec_t prec = 64);
    static RI from_mpz(const mpz_class& v, mpfr_prec_t prec);
    static RI from_mpq(const mpq_class& v, mpfr_prec_t prec);
    static RI from_endpoints(const mpfr_t lo, const mpfr_t hi, mpfr_prec_t prec);

    // log(v) for v > 0, outward rounded.
    static RI log_of(const mpz_class& v, mpfr_prec_t prec);
    // pi enclosure.
    static RI pi(mpfr_prec_t prec);

    mpfr_prec_t prec() const { return prec_; }
    const mpfr_t& lo() const { return lo_; }
    const mpfr_t& hi() const { return hi_; }

    // --- arithmetic -------------------------------------------------------
    RI operator+(const RI& o) const;
    RI operator-(const RI& o) const;
    RI operator*(const RI& o) const;
    RI operator/(const RI& o) const; // throws DomainError if o contains 0
    RI operator-() const;

    RI& operator+=(const RI& o) { *this = *this + o; return *this; }
    RI& operator-=(const RI& o) { *this = *this - o; return *this; }
    RI& operator*=(const RI& o) { *this = *this * o; return *this; }
    RI& operator/=(const RI& o) { *this = *this / o; return *this; }

    // --- queries ----------------------------------------------------------
    bool contains_zero() const;
    bool is_positive() const;        // lo > 0
    bool is_negative() const;        // hi < 0
    bool definitely_lt(const RI& o) const; // hi <  o.lo
    bool definitely_le(const RI& o) const; // hi <= o.lo
    bool definitely_gt(const RI& o) const { return o.definitely_lt(*this); }
    bool definitely_ge(const RI& o) const { return o.definitely_le(*this); }
    bool overlaps(const RI& o) const;

    double lo_d() const; // rounded down
    double hi_d() const; // rounded up
    double mid_d() const;
    double width_d() const;

    // Decimal rendering of both endpoints, for reports.
    std::string str(int digits = 8) const;

private:
    friend RI abs(const RI& x);
    friend RI sqrt(const RI& x);
    friend RI log(const RI& x);
    friend RI exp(const RI& x);
    friend RI pow_ui(const RI& x, unsigned long n);
    friend RI max(const RI& a, const RI& b);
    friend RI min(const RI& a, const RI& b);
    friend RI hull(const RI& a, const RI& b);

    mpfr_t lo_, hi_;
    mpfr_prec_t prec_;
};

RI abs(const RI& x);
RI sqrt(const RI& x);             // requires hi >= 0; clamps lo to 0
RI log(const RI& x);              // requires lo > 0
RI exp(const RI& x);
RI pow_ui(const RI& x, unsigned long n);
RI max(const RI& a, const RI& b);
RI min(const RI& a, const RI& b);
RI hull(const RI& a, const RI& b);

inline RI operator*(long a, const RI& x) { return RI::from_si(a, x.prec()) * x; }
inline RI operator+(long a, const RI& x) { return RI::from_si(a, x.prec()) + x; }

// Certified complex rectangle re + i*im.
struct CRect {
    RI re, im;

    explicit CRect(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    CRect(RI r, RI i) : re(std::move(r)), im(std::move(i)) {}

    mpfr_prec_t prec() const { return re.prec(); }

    CRect operator+(const CRect& o) const { return {re + o.re, im + o.im}; }
    CRect operator-(const CRect& o) const { return {re - o.re, im - o.im}; }
    CRect operator-() const { return {-re, -im}; }
    CRect operator*(const CRect& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    CRect operator/(const CRect& o) const; // throws DomainError if |o|^2 contains 0
    CRect conj() const { return {re, -im}; }

    CRect scale(const RI& s) const { return {re * s, im * s}; }
    CRect pow_ui(unsigned long n) const;

    RI mod_sq() const { return spart::pow_ui(re, 2) + spart::pow_ui(im, 2); }
    RI mod() const { return sqrt(mod_sq()); }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
};

} // namespace spart
