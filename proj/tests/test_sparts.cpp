#include "doctest.h"

#include "spart/errors.hpp"
#include "spart/intpoly.hpp"
#include "spart/sparts.hpp"

#include <gmpxx.h>

#include <map>
#include <random>

using namespace spart;

namespace {

// Independent oracle: complete factorization by pure trial division (uint64).
std::map<unsigned long, unsigned long> trial_oracle(unsigned long m) {
    std::map<unsigned long, unsigned long> f;
    for (unsigned long p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        while (m % p == 0) {
            ++f[p];
            m /= p;
        }
    }
    if (m > 1) ++f[m];
    return f;
}

} // namespace

TEST_CASE("primality: known primes and composites") {
    CHECK(is_probable_prime(2));
    CHECK(is_probable_prime(3));
    CHECK(is_probable_prime(97));
    CHECK(is_probable_prime(mpz_class("2147483647")));          // 2^31-1
    CHECK(is_probable_prime(mpz_class("1000000007")));
    CHECK(is_probable_prime(mpz_class("2305843009213693951"))); // 2^61-1
    CHECK(is_probable_prime(mpz_class("618970019642690137449562111")));        // 2^89-1
    CHECK(is_probable_prime(mpz_class("162259276829213363391578010288127"))); // 2^107-1

    CHECK(!is_probable_prime(0));
    CHECK(!is_probable_prime(1));
    CHECK(!is_probable_prime(-7));
    CHECK(!is_probable_prime(561));        // Carmichael
    CHECK(!is_probable_prime(41041));      // Carmichael
    CHECK(!is_probable_prime(25326001));   // strong pseudoprime to 2, 3, 5
    CHECK(!is_probable_prime(mpz_class("3215031751"))); // spsp to 2, 3, 5, 7
    CHECK(!is_probable_prime(mpz_class("2305843009213693951") * 997));
}

TEST_CASE("factorize matches trial-division oracle") {
    std::mt19937_64 rng(20240822);
    std::uniform_int_distribution<unsigned long> md(2, 1000000000UL);
    for (int i = 0; i < 200; ++i) {
        unsigned long m = md(rng);
        auto oracle = trial_oracle(m);
        Factorization f = factorize(mpz_class(m));
        REQUIRE(f.complete());
        REQUIRE(f.factors.size() == oracle.size());
        size_t idx = 0;
        for (const auto& [p, e] : oracle) {
            CHECK(f.factors[idx].first == p);
            CHECK(f.factors[idx].second == e);
            ++idx;
        }
    }
}

TEST_CASE("factorize: fixed cases") {
    Factorization f = factorize(1024);
    REQUIRE(f.complete());
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0] == std::make_pair(mpz_class(2), 10UL));

    f = factorize(mpz_class("600851475143"));
    REQUIRE(f.complete());
    REQUIRE(f.factors.size() == 4);
    CHECK(f.factors[3].first == 6857);

    f = factorize(1);
    CHECK(f.complete());
    CHECK(f.factors.empty());

    f = factorize(-12);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == std::make_pair(mpz_class(2), 2UL));
    CHECK(f.factors[1] == std::make_pair(mpz_class(3), 1UL));

    CHECK_THROWS_AS(factorize(0), DomainError);

    // prime square beyond the trial limit: perfect-power path
    mpz_class p2 = mpz_class(1000003) * 1000003;
    f = factorize(p2);
    REQUIRE(f.complete());
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0] == std::make_pair(mpz_class(1000003), 2UL));
}

TEST_CASE("factorize: rho splits a 62-bit semiprime") {
    mpz_class p("2147483647"), q("2147483629");
    Factorization f = factorize(p * q);
    REQUIRE(f.complete());
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].first == q);
    CHECK(f.factors[1].first == p);

    GpfResult g = greatest_prime_factor(p * q);
    CHECK(g.complete);
    CHECK(g.value == p);
}

TEST_CASE("factorize is deterministic") {
    mpz_class n = mpz_class("2147483647") * 999983 * 999983;
    Factorization a = factorize(n), b = factorize(n);
    CHECK(a.factors == b.factors);
    CHECK(a.unfactored == b.unfactored);
}

TEST_CASE("budget exhaustion reported honestly") {
    // product of two Mersenne primes far beyond any tiny budget
    mpz_class n = mpz_class("618970019642690137449562111") *
                  mpz_class("162259276829213363391578010288127");
    FactorOptions opt;
    opt.trial_limit = 1000;
    opt.rho_budget = 200;
    Factorization f = factorize(n, opt);
    CHECK(!f.complete());
    CHECK(f.unfactored == n);
    CHECK(f.factors.empty());

    GpfResult g = greatest_prime_factor(n, opt);
    CHECK(!g.complete);
    CHECK(g.value == 1000); // certified lower bound: the trial limit
}

TEST_CASE("greatest prime factor conventions") {
    CHECK(greatest_prime_factor(0).value == 1);
    CHECK(greatest_prime_factor(0).complete);
    CHECK(greatest_prime_factor(1).value == 1);
    CHECK(greatest_prime_factor(-1).value == 1);
    CHECK(greatest_prime_factor(-30).value == 5);
    CHECK(greatest_prime_factor(97).value == 97);
}

TEST_CASE("prime set validation") {
    PrimeSet s({mpz_class(5), mpz_class(2), mpz_class(3)});
    REQUIRE(s.size() == 3);
    CHECK(s.primes()[0] == 2); // sorted
    CHECK(s.primes()[2] == 5);
    CHECK(s.contains(3));
    CHECK(!s.contains(7));
    CHECK(s.str() == "{2, 3, 5}");

    CHECK_THROWS_AS(PrimeSet({mpz_class(4)}), DomainError);
    CHECK_THROWS_AS(PrimeSet({mpz_class(2), mpz_class(2)}), DomainError);
    CHECK_THROWS_AS(PrimeSet({mpz_class(1)}), DomainError);
    CHECK(PrimeSet{}.empty());
}

TEST_CASE("s-part decomposition: fixed values") {
    PrimeSet s23({mpz_class(2), mpz_class(3)});
    auto d = s_part_decompose(864, s23); // 2^5 * 3^3
    CHECK(d.s_part == 864);
    CHECK(d.cofactor == 1);
    REQUIRE(d.exponents.size() == 2);
    CHECK(d.exponents[0].second == 5);
    CHECK(d.exponents[1].second == 3);

    PrimeSet s25({mpz_class(2), mpz_class(5)});
    d = s_part_decompose(-50, s25);
    CHECK(d.s_part == 50);
    CHECK(d.cofactor == -1);

    d = s_part_decompose(7, s23);
    CHECK(d.s_part == 1);
    CHECK(d.cofactor == 7);
    CHECK(d.exponents[0].second == 0);

    CHECK_THROWS_AS(s_part_decompose(0, s23), DomainError);
}

TEST_CASE("s-part properties on random inputs") {
    PrimeSet s({mpz_class(2), mpz_class(3), mpz_class(7)});
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> md(1, 2000000000L);
    for (int i = 0; i < 200; ++i) {
        mpz_class a = md(rng), b = md(rng);
        // multiplicativity
        CHECK(s_part(a * b, s) == s_part(a, s) * s_part(b, s));
        // idempotence
        CHECK(s_part(s_part(a, s), s) == s_part(a, s));
        // decomposition identity and coprimality of the cofactor
        auto d = s_part_decompose(a, s);
        CHECK(d.s_part * d.cofactor == a);
        for (const auto& q : s.primes()) CHECK(d.cofactor % q != 0);
        // exponents match direct valuations
        for (const auto& [q, e] : d.exponents)
            CHECK(e == padic_valuation(a, q));
        // sign carried by the cofactor
        auto dn = s_part_decompose(-a, s);
        CHECK(dn.s_part == d.s_part);
        CHECK(dn.cofactor == -d.cofactor);
    }
}
