#include "spart/delta.hpp"

#include "spart/errors.hpp"
#include "spart/intpoly.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace spart {

namespace {

// Minimum p-adic valuation among the nonzero roots: first polygon slope.
mpq_class min_root_valuation(const IntPoly& g, const mpz_class& p) {
    const NewtonPolygon np = newton_polygon(g, p);
    if (np.segments.empty())
        throw DomainError("characteristic polynomial has no nonzero root");
    return np.segments.front().slope;
}

double log_of_mpz(const mpz_class& v) {
    signed long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp2) * 0.6931471805599453;
}

} // namespace

DeltaReport compute_delta(const RecurrenceSpec& spec, const PrimeSet& s,
                          const ClassifyOptions& opt) {
    spec.validate();
    const Classification cls = classify(spec, opt);
    if (cls.dominance != Dominance::unique)
        throw HypothesisError(
            "limit exponent needs a certified unique dominant root");

    const ClosedForm cf = closed_form(spec, opt.start, opt.ceiling);
    const mpfr_prec_t wp = cf.prec;
    const RI a1 = cf.roots.clusters[cls.dominant_index].modulus();
    if (!a1.definitely_gt(RI::from_si(1, wp)))
        throw HypothesisError(
            "limit exponent needs a dominant root of modulus > 1");

    const IntPoly g = characteristic_polynomial(spec);

    DeltaReport rep;
    rep.dominant_index = cls.dominant_index;
    rep.prec = wp;
    rep.log_a = log(a1);

    mpz_class coeff_prod = 1, prime_prod = 1;
    for (const auto& a : spec.coeffs) coeff_prod *= a;
    RI num = RI::from_si(0, wp);
    for (const auto& p : s.primes()) {
        DeltaTerm t;
        t.prime = p;
        t.exponent = min_root_valuation(g, p);
        num += RI::from_mpq(t.exponent, wp) * RI::log_of(p, wp);
        rep.terms.push_back(std::move(t));
        prime_prod *= p;
    }
    mpz_class gg;
    mpz_gcd(gg.get_mpz_t(), prime_prod.get_mpz_t(), coeff_prod.get_mpz_t());
    rep.gcd_shortcut = (gg == 1);
    rep.delta = num / rep.log_a;
    return rep;
}

std::optional<double> empirical_ratio(const RecurrenceSpec& spec, const PrimeSet& s,
                                      unsigned long n_max) {
    spec.validate();
    if (n_max < 4) return std::nullopt;
    const unsigned k = spec.order();
    std::vector<mpz_class> win(spec.init);
    mpz_class next, cur;
    double best = -1.0;
    const unsigned long lo = n_max / 2 + 1;
    for (unsigned long n = 0; n <= n_max; ++n) {
        if (n < k) {
            cur = spec.init[static_cast<size_t>(n)];
        } else {
            next = 0;
            for (unsigned i = 0; i < k; ++i) next += spec.coeffs[i] * win[k - 1 - i];
            std::rotate(win.begin(), win.begin() + 1, win.end());
            win.back() = next;
            cur = win.back();
        }
        if (n < lo) continue;
        if (mpz_cmpabs_ui(cur.get_mpz_t(), 1) <= 0) continue;
        const SPartDecomposition d = s_part_decompose(cur, s);
        const double r = (d.s_part == 1)
                             ? 0.0
                             : log_of_mpz(d.s_part) / log_of_mpz(cur);
        best = std::max(best, r);
    }
    if (best < 0.0) return std::nullopt;
    return best;
}

} // namespace spart
