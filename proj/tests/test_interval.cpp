#include "doctest.h"

#include "spart/errors.hpp"
#include "spart/interval.hpp"

#include <gmpxx.h>

#include <random>

using namespace spart;

namespace {

bool contains_q(const RI& x, const mpq_class& q) {
    return mpfr_cmp_q(x.lo(), q.get_mpq_t()) <= 0 &&
           mpfr_cmp_q(x.hi(), q.get_mpq_t()) >= 0;
}

mpq_class random_q(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-1000000, 1000000);
    std::uniform_int_distribution<long> den(1, 999);
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

} // namespace

TEST_CASE("point constructions are exact") {
    RI a = RI::from_si(-7, 64);
    CHECK(mpfr_cmp_si(a.lo(), -7) == 0);
    CHECK(mpfr_cmp_si(a.hi(), -7) == 0);

    mpz_class big("123456789012345678901234567890");
    RI b = RI::from_mpz(big, 256);
    CHECK(contains_q(b, mpq_class(big)));
    CHECK(b.width_d() == 0.0);

    // 1/3 is not representable: enclosure must be proper and contain it
    RI c = RI::from_mpq(mpq_class(1, 3), 64);
    CHECK(contains_q(c, mpq_class(1, 3)));
    CHECK(mpfr_cmp(c.lo(), c.hi()) < 0);
}

TEST_CASE("field ops contain exact rational results") {
    std::mt19937_64 rng(20240817);
    for (int i = 0; i < 200; ++i) {
        mpq_class qa = random_q(rng), qb = random_q(rng);
        RI a = RI::from_mpq(qa, 64), b = RI::from_mpq(qb, 64);
        CHECK(contains_q(a + b, qa + qb));
        CHECK(contains_q(a - b, qa - qb));
        CHECK(contains_q(a * b, qa * qb));
        if (sgn(qb) != 0 && !b.contains_zero())
            CHECK(contains_q(a / b, qa / qb));
        CHECK(contains_q(-a, -qa));
        CHECK(contains_q(abs(a), abs(qa)));
        CHECK(contains_q(pow_ui(a, 3), qa * qa * qa));
        CHECK(contains_q(pow_ui(a, 4), qa * qa * qa * qa));
    }
}

TEST_CASE("division by interval containing zero throws") {
    RI a = RI::from_si(1, 64);
    RI z = RI::from_si(-1, 64) + RI::from_si(2, 64) * RI::from_mpq(mpq_class(1, 2), 64);
    // z encloses 0
    CHECK(z.contains_zero());
    CHECK_THROWS_AS(a / z, DomainError);
}

TEST_CASE("sqrt, log, exp") {
    RI four = RI::from_si(4, 64);
    RI two = sqrt(four);
    CHECK(contains_q(two, mpq_class(2)));
    CHECK(two.width_d() == 0.0);

    CHECK_THROWS_AS(log(RI::from_si(0, 64)), DomainError);
    CHECK_THROWS_AS(sqrt(RI::from_si(-1, 64)), DomainError);

    // exp(log(x)) contains x
    for (long v : {2L, 3L, 10L, 1000L}) {
        RI x = RI::from_si(v, 128);
        CHECK(contains_q(exp(log(x)), mpq_class(v)));
    }

    // log(6)/log(2) enclosure brackets the true value ~2.5849625
    RI r = RI::log_of(6, 128) / RI::log_of(2, 128);
    CHECK(r.lo_d() < 2.5849626);
    CHECK(r.hi_d() > 2.5849625);
    CHECK(r.width_d() < 1e-30);
}

TEST_CASE("even powers of sign-crossing intervals") {
    // enclosure of [-2, 1]
    RI x = hull(RI::from_si(-2, 64), RI::from_si(1, 64));
    RI sq = pow_ui(x, 2);
    CHECK(mpfr_sgn(sq.lo()) >= 0);
    CHECK(contains_q(sq, mpq_class(4)));
    CHECK(contains_q(sq, mpq_class(0)));
    CHECK(!contains_q(sq, mpq_class(5)));
}

TEST_CASE("x^5.5 via pow_ui and sqrt") {
    RI x = RI::from_si(4, 128);
    RI v = pow_ui(x, 5) * sqrt(x);
    CHECK(contains_q(v, mpq_class(2048)));
}

TEST_CASE("pi enclosure") {
    RI p = RI::pi(64);
    CHECK(p.lo_d() > 3.14159);
    CHECK(p.hi_d() < 3.14160);
}

TEST_CASE("definite comparisons") {
    RI a = RI::from_si(1, 64), b = RI::from_si(2, 64);
    CHECK(a.definitely_lt(b));
    CHECK(a.definitely_le(a));
    CHECK(!a.definitely_lt(a));
    CHECK(b.definitely_gt(a));
    CHECK(a.overlaps(a));
    CHECK(!a.overlaps(b));
    CHECK(hull(a, b).overlaps(a));
}

TEST_CASE("complex rectangle arithmetic") {
    auto mk = [](long re, long im) {
        return CRect(RI::from_si(re, 64), RI::from_si(im, 64));
    };
    CRect z = mk(1, 2) * mk(3, -1); // = 5 + 5i
    CHECK(contains_q(z.re, mpq_class(5)));
    CHECK(contains_q(z.im, mpq_class(5)));

    CRect w = mk(1, 1).pow_ui(4); // (1+i)^4 = -4
    CHECK(contains_q(w.re, mpq_class(-4)));
    CHECK(contains_q(w.im, mpq_class(0)));

    CHECK(contains_q(mk(3, 4).mod(), mpq_class(5)));

    // z/w*w contains z
    CRect q = mk(7, -3) / mk(2, 5);
    CRect back = q * mk(2, 5);
    CHECK(contains_q(back.re, mpq_class(7)));
    CHECK(contains_q(back.im, mpq_class(-3)));

    CHECK_THROWS_AS(mk(1, 0) / mk(0, 0), DomainError);
    CHECK(mk(0, 0).contains_zero());
    CHECK(!mk(1, 0).contains_zero());
}
