#pragma once

#include "spart/algnum.hpp"
#include "spart/interval.hpp"
#include "spart/intpoly.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace spart {

// Integer linear recurrence u_n = a_1 u_{n-1} + ... + a_k u_{n-k}.
struct RecurrenceSpec {
    std::string name;
    std::vector<mpz_class> coeffs; // a_1 ... a_k, a_k != 0
    std::vector<mpz_class> init;   // u_0 ... u_{k-1}, not all zero

    unsigned order() const { return static_cast<unsigned>(coeffs.size()); }
    void validate() const; // throws DomainError
};

// X^k - a_1 X^{k-1} - ... - a_k (monic; nonzero constant term since a_k != 0).
IntPoly characteristic_polynomial(const RecurrenceSpec& spec);

// u_n by forward iteration.
mpz_class term(const RecurrenceSpec& spec, unsigned long n);

// [u_n, ..., u_{n+k-1}] by companion-matrix binary exponentiation; O(k^3 log n)
// big-integer work, used to seed scans at arbitrary offsets.
std::vector<mpz_class> term_window(const RecurrenceSpec& spec, unsigned long n);

// Certified closed form u_n = sum_i f_i(n) alpha_i^n: coefficient enclosures
// for each distinct root, |det V| of the confluent Vandermonde system, and
// absolute-height upper bounds per power of n (valid for every cluster's
// coefficient of that power, by conjugation symmetry).
struct ClosedForm {
    CertifiedRoots roots;
    std::vector<std::vector<CRect>> coeff; // coeff[i][j]: of n^j alpha_i^n, j < mult_i
    RI det_v_abs;                          // |det V| >= 1
    std::vector<RI> height_bound;          // [j]: h(coeff[i][j]) <= this, all i
    std::vector<Tri> f_nonzero;            // some coefficient of f_i certified nonzero
    std::vector<Tri> f_leading_nonzero;    // top coefficient of f_i certified nonzero
    mpfr_prec_t prec = 0;
};
ClosedForm closed_form(const RecurrenceSpec& spec, mpfr_prec_t start = 128,
                       mpfr_prec_t ceiling = 4096);

enum class Dominance { unique, none_proved, undecided };

struct Classification {
    bool degenerate = false;
    std::vector<unsigned> unit_orders; // witness orders of root-of-unity ratios
    unsigned t = 0;                    // number of distinct roots
    Dominance dominance = Dominance::undecided;
    size_t dominant_index = 0;         // valid when dominance == unique
    mpfr_prec_t prec = 0;
};

struct ClassifyOptions {
    mpfr_prec_t start = 128;
    mpfr_prec_t ceiling = 4096;
};

// Degeneracy is decided exactly (cyclotomic divisibility of the root-ratio
// polynomial).  Dominance escalates precision; exact modulus ties (negation
// pairs, conjugate pairs) are proved and reported as none_proved; ties that
// resist proof at the ceiling stay undecided.
Classification classify(const RecurrenceSpec& spec, const ClassifyOptions& opt = {});

// True iff, among the distinct roots, exactly one is a p-adic unit and all
// others have strictly positive valuation: the Newton polygon of the
// squarefree part starts with a slope-0 segment of length 1.
bool padic_unit_dominant(const IntPoly& g, const mpz_class& p);

// Certified tail envelope around the dominant term:
//   sum_{i != dom} |f_i(n)| |alpha_i|^n  <=  C * |alpha_dom|^{theta n}  for n >= 1,
// with 0 < theta < 1.  Requires |alpha_dom| > 1 and strict modulus dominance.
struct Envelope {
    double theta;
    RI C;
    unsigned long n_cap; // scan bound behind the sup
};
Envelope dominant_envelope(const ClosedForm& cf, size_t dominant);

// floor(lambda * theta^n) sequences; theta > 1 either rational or a real
// algebraic number given by an integer polynomial it is a root of, selected
// by a real hint.  Give the minimal polynomial: with a reducible polynomial,
// a power whose exact value lands on a rational cannot be recognized as such
// and raises UndecidedError instead of deciding the floor.
struct FloorPowerSpec {
    std::string name;
    mpq_class lambda;                     // > 0
    std::optional<mpq_class> theta_rational;
    std::optional<IntPoly> theta_minpoly; // squarefree, nonzero at 0, real root > 1
    double theta_root_hint = 0.0;

    void validate() const;
};

// Exact floor(lambda * theta^n): exact rational arithmetic when theta^n is
// rational (decided by reduction modulo the defining polynomial), otherwise
// interval evaluation.  `ceiling` caps the root-separation precision; the
// floor decision itself refines the enclosure past it by interval Newton
// steps, with a size-proportional give-up guard (UndecidedError).
mpz_class floorpower_term(const FloorPowerSpec& spec, unsigned long n,
                          mpfr_prec_t ceiling = 4096);

// Streaming form: maintains theta^n incrementally for linear scans.
class FloorPowerStream {
public:
    FloorPowerStream(const FloorPowerSpec& spec, unsigned long start,
                     mpfr_prec_t ceiling = 4096);
    unsigned long position() const { return n_; }
    mpz_class value() const;
    void advance();

private:
    const FloorPowerSpec spec_;
    mpfr_prec_t ceiling_;
    unsigned long n_;
    std::vector<mpq_class> power_; // theta^n reduced mod the defining polynomial
};

} // namespace spart
