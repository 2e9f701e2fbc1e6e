#pragma once

#include "spart/interval.hpp"
#include "spart/intpoly.hpp"

#include <cstddef>
#include <vector>

namespace spart {

enum class Tri { yes, no, undecided };

// One distinct root of an integer polynomial, certified: the disk
// |w - center| <= radius contains exactly one root, of the stated
// multiplicity.  center is a point enclosure (the approximation), radius a
// certified residual bound.  is_real is decided by matching possibly-real
// disk counts against an exact Sturm count, so "no" and "yes" are proofs.
struct RootCluster {
    CRect center;
    RI radius;
    unsigned multiplicity = 1;
    Tri is_real = Tri::undecided;
    size_t factor = 0; // index into CertifiedRoots::factors

    CRect box() const;      // axis-aligned rectangle containing the root
    RI modulus() const;     // |root| enclosure, lower end clamped at 0
    RI real_part() const;   // [center.re - radius, center.re + radius]
};

struct CertifiedRoots {
    std::vector<RootCluster> clusters;      // one per distinct root
    std::vector<SquarefreeFactor> factors;  // Yun factors of the input
    mpfr_prec_t prec = 0;                   // precision that certified
};

// Certified roots of g (deg >= 1, g(0) != 0; strip zero roots first).
// Escalates precision from `start` by doubling up to `ceiling` until all
// inclusion disks are pairwise disjoint and realness is decided; returns
// with is_real == undecided on clusters whose realness survives the ceiling,
// and throws UndecidedError if the disks cannot be separated at the ceiling.
CertifiedRoots certified_roots(const IntPoly& g, mpfr_prec_t start = 128,
                               mpfr_prec_t ceiling = 4096);

// Interval evaluation of p at a complex rectangle.
CRect eval_ball(const IntPoly& p, const CRect& z);

// Number of distinct real roots of a squarefree polynomial (exact Sturm count).
int real_root_count(const IntPoly& h);

// Enclosure of max_i |alpha_i| over clusters, plus the indices that cannot be
// excluded from attaining it (a singleton certifies a strict maximum).
struct MaxModulus {
    RI value;
    std::vector<size_t> attaining;
};
MaxModulus max_modulus(const std::vector<RootCluster>& clusters);

// Enclosure of log M(g) = log|lc(g)| + sum_i mult_i * log+ |alpha_i|, given
// clusters enclosing the roots of g.  Its upper end bounds every conjugate's
// log+ modulus, hence deg*h(alpha) for monic g.
RI log_mahler(const IntPoly& g, const std::vector<RootCluster>& clusters);

// max(0, log x) with endpoint-wise evaluation; tolerates x.lo <= 0.
RI log_plus(const RI& x);

// Absolute logarithmic height of a rational number: log max(|num|, den).
RI rational_height(const mpq_class& q, mpfr_prec_t prec);

} // namespace spart
