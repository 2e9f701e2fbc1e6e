#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace spart {

// Validated finite set of distinct primes, kept sorted.
class PrimeSet {
public:
    PrimeSet() = default;
    explicit PrimeSet(std::vector<mpz_class> primes); // throws DomainError on non-prime or duplicate

    const std::vector<mpz_class>& primes() const { return primes_; }
    size_t size() const { return primes_.size(); }
    bool empty() const { return primes_.empty(); }
    bool contains(const mpz_class& p) const;
    std::string str() const; // "{2, 3, 5}"

private:
    std::vector<mpz_class> primes_;
};

// [m]_S = prod_{q in S} q^{v_q(m)} for m != 0, together with the cofactor
// m / [m]_S (which carries the sign) and the exponent of every prime of S in
// set order (zeros included).
struct SPartDecomposition {
    mpz_class s_part;
    mpz_class cofactor;
    std::vector<std::pair<mpz_class, unsigned long>> exponents;
};
SPartDecomposition s_part_decompose(const mpz_class& m, const PrimeSet& S);
mpz_class s_part(const mpz_class& m, const PrimeSet& S);

struct FactorOptions {
    unsigned long trial_limit = 100000;    // trial division bound
    unsigned long rho_budget = 100000000;  // total Pollard-Brent squarings
    int mr_rounds = 64;                    // rounds beyond the deterministic witness set
};

// Primality: exact for n below 3.317e24 (fixed Miller-Rabin witness set),
// probabilistic with mr extra rounds above.
bool is_probable_prime(const mpz_class& n, int extra_rounds = 64);

// Factorization within budgets.  `unfactored` is 1 when complete; otherwise a
// composite whose prime factors all exceed the trial-division limit.
struct Factorization {
    std::vector<std::pair<mpz_class, unsigned long>> factors; // (prime, exponent), ascending
    mpz_class unfactored = 1;
    bool complete() const { return unfactored == 1; }
};
Factorization factorize(const mpz_class& m, const FactorOptions& opt = {});

// Greatest prime factor P[m], with P[0] = P[1] = P[-1] = 1.  When the
// factorization is incomplete, `value` is a certified lower bound on P[m]:
// every prime factor of the surviving composite exceeds the trial limit, so
// value = max(largest prime found, trial_limit) and complete = false.
struct GpfResult {
    mpz_class value;
    bool complete = true;
};
GpfResult greatest_prime_factor(const mpz_class& m, const FactorOptions& opt = {});

} // namespace spart
