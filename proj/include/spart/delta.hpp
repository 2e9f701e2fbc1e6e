#pragma once

#include "spart/interval.hpp"
#include "spart/recurrence.hpp"
#include "spart/sparts.hpp"

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace spart {

// One prime's contribution to the limit exponent: the minimum p-adic
// valuation among the nonzero roots of the characteristic polynomial
// (the first Newton polygon slope; a nonnegative rational).
struct DeltaTerm {
    mpz_class prime;
    mpq_class exponent;
};

// Limit exponent delta = (sum_p exponent_p * log p) / log |dominant root|
// for the growth of S-parts along the sequence.  Defined only when a unique
// dominant root of modulus > 1 is certified.
struct DeltaReport {
    std::vector<DeltaTerm> terms;
    RI log_a;          // log of the dominant root's modulus
    RI delta;          // in [0, 1]
    bool gcd_shortcut; // prod(primes) coprime to prod(coeffs): all exponents 0
    size_t dominant_index = 0;
    mpfr_prec_t prec = 0;
};

DeltaReport compute_delta(const RecurrenceSpec& spec, const PrimeSet& s,
                          const ClassifyOptions& opt = {});

// Empirical estimate of limsup log([u_n]_S) / log|u_n|: the maximum ratio
// over the second half of the scan window [2, n_max] (indices with
// |u_n| <= 1 are skipped).  nullopt when no index in the window qualifies.
std::optional<double> empirical_ratio(const RecurrenceSpec& spec, const PrimeSet& s,
                                      unsigned long n_max);

} // namespace spart
