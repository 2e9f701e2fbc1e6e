#include "spart/interval.hpp"

#include "spart/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace spart {

RI::RI(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

RI::RI(const RI& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

RI::RI(RI&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

RI& RI::operator=(const RI& o) {
    if (this != &o) {
        mpfr_set_prec(lo_, o.prec_);
        mpfr_set_prec(hi_, o.prec_);
        prec_ = o.prec_;
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
}

RI& RI::operator=(RI&& o) noexcept {
    if (this != &o) {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        std::swap(prec_, o.prec_);
    }
    return *this;
}

RI::~RI() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

RI RI::from_si(long v, mpfr_prec_t prec) {
    RI r(prec);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

RI RI::from_ui(unsigned long v, mpfr_prec_t prec) {
    RI r(prec);
    mpfr_set_ui(r.lo_, v, MPFR_RNDD);
    mpfr_set_ui(r.hi_, v, MPFR_RNDU);
    return r;
}

RI RI::from_double(double v, mpfr_prec_t prec) {
    RI r(prec);
    mpfr_set_d(r.lo_, v, MPFR_RNDD);
    mpfr_set_d(r.hi_, v, MPFR_RNDU);
    return r;
}

RI RI::from_mpz(const mpz_class& v, mpfr_prec_t prec) {
    RI r(prec);
    mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
    return r;
}

RI RI::from_mpq(const mpq_class& v, mpfr_prec_t prec) {
    RI r(prec);
    mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
    return r;
}

RI RI::from_endpoints(const mpfr_t lo, const mpfr_t hi, mpfr_prec_t prec) {
    RI r(prec);
    mpfr_set(r.lo_, lo, MPFR_RNDD);
    mpfr_set(r.hi_, hi, MPFR_RNDU);
    if (mpfr_greater_p(r.lo_, r.hi_))
        throw DomainError("RI::from_endpoints: lo > hi");
    return r;
}

RI RI::log_of(const mpz_class& v, mpfr_prec_t prec) {
    if (v <= 0) throw DomainError("RI::log_of: argument must be positive");
    return log(from_mpz(v, prec));
}

RI RI::pi(mpfr_prec_t prec) {
    RI r(prec);
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

RI RI::operator+(const RI& o) const {
    RI r(std::max(prec_, o.prec_));
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

RI RI::operator-(const RI& o) const {
    RI r(std::max(prec_, o.prec_));
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

RI RI::operator*(const RI& o) const {
    // [a,b]*[c,d]: lo = min of the four products rounded down, hi = max rounded up.
    RI r(std::max(prec_, o.prec_));
    mpfr_t p;
    mpfr_init2(p, r.prec_);

    mpfr_mul(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_mul(p, lo_, o.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, p, MPFR_RNDD);
    mpfr_mul(p, hi_, o.lo_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, p, MPFR_RNDD);
    mpfr_mul(p, hi_, o.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, p, MPFR_RNDD);

    mpfr_mul(r.hi_, lo_, o.lo_, MPFR_RNDU);
    mpfr_mul(p, lo_, o.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, p, MPFR_RNDU);
    mpfr_mul(p, hi_, o.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, p, MPFR_RNDU);
    mpfr_mul(p, hi_, o.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, p, MPFR_RNDU);

    mpfr_clear(p);
    return r;
}

RI RI::operator/(const RI& o) const {
    if (o.contains_zero())
        throw DomainError("RI::operator/: divisor interval contains zero");
    // 1/[c,d] with 0 outside: [1/d, 1/c]; then multiply.
    RI inv(o.prec_);
    mpfr_ui_div(inv.lo_, 1, o.hi_, MPFR_RNDD);
    mpfr_ui_div(inv.hi_, 1, o.lo_, MPFR_RNDU);
    return *this * inv;
}

RI RI::operator-() const {
    RI r(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

bool RI::contains_zero() const {
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool RI::is_positive() const { return mpfr_sgn(lo_) > 0; }
bool RI::is_negative() const { return mpfr_sgn(hi_) < 0; }

bool RI::definitely_lt(const RI& o) const { return mpfr_less_p(hi_, o.lo_); }
bool RI::definitely_le(const RI& o) const { return mpfr_lessequal_p(hi_, o.lo_); }

bool RI::overlaps(const RI& o) const {
    return !definitely_lt(o) && !o.definitely_lt(*this);
}

double RI::lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double RI::hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double RI::mid_d() const {
    mpfr_t m;
    mpfr_init2(m, prec_);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    double d = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return d;
}

double RI::width_d() const {
    mpfr_t w;
    mpfr_init2(w, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

std::string RI::str(int digits) const {
    char fmt[32];
    std::snprintf(fmt, sizeof fmt, "[%%.%dRDg, %%.%dRUg]", digits, digits);
    char buf[256];
    mpfr_snprintf(buf, sizeof buf, fmt, lo_, hi_);
    return buf;
}

RI abs(const RI& x) {
    RI r(x.prec_);
    if (mpfr_sgn(x.lo_) >= 0) {
        mpfr_set(r.lo_, x.lo_, MPFR_RNDD);
        mpfr_set(r.hi_, x.hi_, MPFR_RNDU);
    } else if (mpfr_sgn(x.hi_) <= 0) {
        mpfr_neg(r.lo_, x.hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, x.lo_, MPFR_RNDU);
    } else {
        mpfr_set_zero(r.lo_, 1);
        mpfr_neg(r.hi_, x.lo_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, x.hi_, MPFR_RNDU);
    }
    return r;
}

RI sqrt(const RI& x) {
    if (mpfr_sgn(x.hi_) < 0)
        throw DomainError("sqrt(RI): interval entirely negative");
    RI r(x.prec_);
    if (mpfr_sgn(x.lo_) <= 0)
        mpfr_set_zero(r.lo_, 1);
    else
        mpfr_sqrt(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, x.hi_, MPFR_RNDU);
    return r;
}

RI log(const RI& x) {
    if (mpfr_sgn(x.lo_) <= 0)
        throw DomainError("log(RI): interval not strictly positive");
    RI r(x.prec_);
    mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
    return r;
}

RI exp(const RI& x) {
    RI r(x.prec_);
    mpfr_exp(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, x.hi_, MPFR_RNDU);
    return r;
}

RI pow_ui(const RI& x, unsigned long n) {
    if (n == 0) return RI::from_ui(1, x.prec_);
    if (n % 2 == 1 || mpfr_sgn(x.lo_) >= 0) {
        // monotone on the whole line (odd n) or on [0,inf) (even n, x >= 0)
        RI r(x.prec_);
        mpfr_pow_ui(r.lo_, x.lo_, n, MPFR_RNDD);
        mpfr_pow_ui(r.hi_, x.hi_, n, MPFR_RNDU);
        return r;
    }
    // even n with possibly-negative values: go through |x|
    RI a = abs(x);
    RI r(x.prec_);
    mpfr_pow_ui(r.lo_, a.lo(), n, MPFR_RNDD);
    mpfr_pow_ui(r.hi_, a.hi(), n, MPFR_RNDU);
    return r;
}

RI max(const RI& a, const RI& b) {
    RI r(std::max(a.prec_, b.prec_));
    mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

RI min(const RI& a, const RI& b) {
    RI r(std::max(a.prec_, b.prec_));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

RI hull(const RI& a, const RI& b) {
    RI r(std::max(a.prec_, b.prec_));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

CRect CRect::operator/(const CRect& o) const {
    RI d = o.mod_sq();
    if (d.contains_zero())
        throw DomainError("CRect::operator/: divisor rectangle may contain zero");
    CRect num = *this * o.conj();
    return {num.re / d, num.im / d};
}

CRect CRect::pow_ui(unsigned long n) const {
    CRect acc(prec());
    acc.re = RI::from_ui(1, prec());
    CRect base = *this;
    while (n > 0) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

} // namespace spart
