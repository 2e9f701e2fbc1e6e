#include "doctest.h"

#include "spart/delta.hpp"
#include "spart/errors.hpp"

#include <gmpxx.h>

#include <cmath>
#include <random>

using namespace spart;

namespace {

RecurrenceSpec make(std::vector<long> coeffs, std::vector<long> init,
                    std::string name = "seq") {
    RecurrenceSpec s;
    s.name = std::move(name);
    for (long c : coeffs) s.coeffs.emplace_back(c);
    for (long u : init) s.init.emplace_back(u);
    return s;
}

bool ri_contains_d(const RI& r, double v) {
    return r.lo_d() <= v && v <= r.hi_d();
}

const RecurrenceSpec kPow26 = make({8, -12}, {2, 8}, "2^n+6^n");
const RecurrenceSpec kFib = make({1, 1}, {0, 1}, "fibonacci");

} // namespace

TEST_CASE("limit exponent for the 2^n + 6^n sequence") {
    // roots 2 and 6; for p = 2 both have valuation 1, so the polygon's first
    // slope is 1 and delta = log 2 / log 6.
    const double expect = std::log(2.0) / std::log(6.0); // 0.38685...
    const DeltaReport r2 = compute_delta(kPow26, PrimeSet({2}));
    REQUIRE(r2.terms.size() == 1);
    CHECK(r2.terms[0].exponent == 1);
    CHECK(ri_contains_d(r2.delta, expect));
    CHECK(r2.delta.width_d() < 1e-20);
    CHECK_FALSE(r2.gcd_shortcut);
    CHECK(ri_contains_d(r2.log_a, std::log(6.0)));

    // adding 3 changes nothing: min valuation at 3 is 0 (the root 2)
    const DeltaReport r23 = compute_delta(kPow26, PrimeSet({2, 3}));
    REQUIRE(r23.terms.size() == 2);
    CHECK(r23.terms[0].exponent == 1);
    CHECK(r23.terms[1].exponent == 0);
    CHECK(ri_contains_d(r23.delta, expect));

    const DeltaReport r3 = compute_delta(kPow26, PrimeSet({3}));
    CHECK(ri_contains_d(r3.delta, 0.0));
    CHECK(r3.delta.width_d() == 0.0);
}

TEST_CASE("limit exponent vanishes when the primes avoid the coefficients") {
    for (const auto& primes :
         {PrimeSet({2}), PrimeSet({2, 3, 5}), PrimeSet({97})}) {
        const DeltaReport r = compute_delta(kFib, primes);
        CHECK(r.gcd_shortcut); // coefficient product is 1
        CHECK(ri_contains_d(r.delta, 0.0));
        for (const auto& t : r.terms) CHECK(t.exponent == 0);
    }
}

TEST_CASE("limit exponent reaches 1 on a pure power sequence") {
    // u_n = 2^n via (x-2)^2 with both initial terms on the line
    const RecurrenceSpec s = make({4, -4}, {1, 2}, "2^n");
    const DeltaReport r = compute_delta(s, PrimeSet({2}));
    CHECK(r.terms[0].exponent == 1);
    CHECK(ri_contains_d(r.delta, 1.0));
    CHECK(r.delta.width_d() < 1e-20);
}

TEST_CASE("limit exponent with a ramified prime") {
    // x^2 - 6x + 3: roots 3 +- sqrt6, both of 3-adic valuation 1/2
    const RecurrenceSpec s = make({6, -3}, {0, 1}, "ram");
    const DeltaReport r = compute_delta(s, PrimeSet({3}));
    CHECK(r.terms[0].exponent == mpq_class(1, 2));
    const double expect = 0.5 * std::log(3.0) / std::log(3.0 + std::sqrt(6.0));
    CHECK(ri_contains_d(r.delta, expect));
    // and at p = 2 the constant term is odd, so the exponent is 0
    const DeltaReport r2 = compute_delta(s, PrimeSet({2}));
    CHECK(r2.terms[0].exponent == 0);
    CHECK(ri_contains_d(r2.delta, 0.0));
}

TEST_CASE("limit exponent requires a dominant root of modulus above 1") {
    // roots +-1: no dominant root
    CHECK_THROWS_AS(compute_delta(make({0, 1}, {0, 1}), PrimeSet({2})),
                    HypothesisError);
    // double root at 1: dominant but not above 1
    CHECK_THROWS_AS(compute_delta(make({2, -1}, {0, 1}), PrimeSet({2})),
                    HypothesisError);
}

TEST_CASE("limit exponent stays within [0, 1] on random specs") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<long> cdist(-9, 9);
    const PrimeSet primes({2, 3, 5, 7});
    int accepted = 0;
    for (int trial = 0; trial < 60 && accepted < 25; ++trial) {
        std::vector<long> cs = {cdist(rng), cdist(rng)};
        if (cs.back() == 0) cs.back() = 6;
        const RecurrenceSpec s = make(cs, {1, cdist(rng)});
        DeltaReport r;
        try {
            r = compute_delta(s, primes);
        } catch (const HypothesisError&) {
            continue; // no certified dominant root above 1
        }
        ++accepted;
        CHECK(r.delta.lo_d() >= -1e-15);
        CHECK(r.delta.hi_d() <= 1.0 + 1e-12);
        if (r.gcd_shortcut)
            for (const auto& t : r.terms) CHECK(t.exponent == 0);
        // recomputed numerator matches delta * log A
        double num = 0.0;
        for (const auto& t : r.terms)
            num += t.exponent.get_d() * std::log(t.prime.get_d());
        CHECK(std::fabs(r.delta.mid_d() * r.log_a.mid_d() - num) < 1e-9);
    }
    CHECK(accepted >= 10);
}

TEST_CASE("empirical ratio tracks the limit exponent") {
    // exact limit on 2^n: ratio is exactly 1 at every index
    const auto pure = empirical_ratio(make({4, -4}, {1, 2}), PrimeSet({2}), 200);
    REQUIRE(pure.has_value());
    CHECK(*pure == doctest::Approx(1.0).epsilon(1e-12));

    // 2^n + 6^n at p=2: converges to log2/log6 from above
    const auto mix = empirical_ratio(kPow26, PrimeSet({2}), 400);
    REQUIRE(mix.has_value());
    const double expect = std::log(2.0) / std::log(6.0);
    CHECK(*mix >= expect - 1e-12);
    CHECK(*mix <= expect + 0.01);

    // fibonacci: S-parts are asymptotically negligible
    const auto fib = empirical_ratio(kFib, PrimeSet({2, 3, 5}), 800);
    REQUIRE(fib.has_value());
    CHECK(*fib >= 0.0);
    CHECK(*fib < 0.05);

    // degenerate window: nothing usable
    CHECK_FALSE(empirical_ratio(kFib, PrimeSet({2}), 3).has_value());
}
