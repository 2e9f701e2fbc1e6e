#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <vector>

namespace spart {

// Dense univariate polynomial over Z.  coeffs[i] is the coefficient of X^i;
// the representation is normalized (no trailing zero coefficient), so the
// zero polynomial is the empty vector and has degree -1.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs);
    IntPoly(std::initializer_list<long> coeffs); // ascending powers

    static IntPoly constant(const mpz_class& c);
    static IntPoly x_power(unsigned n); // X^n

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const mpz_class& operator[](size_t i) const; // 0 beyond degree
    const mpz_class& leading() const;            // requires nonzero
    const std::vector<mpz_class>& coeffs() const { return c_; }
    bool is_monic() const { return !is_zero() && leading() == 1; }

    bool operator==(const IntPoly& o) const { return c_ == o.c_; }
    bool operator!=(const IntPoly& o) const { return c_ != o.c_; }

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator-() const;
    IntPoly operator*(const mpz_class& s) const;

    mpz_class eval(const mpz_class& x) const;
    mpq_class eval_q(const mpq_class& x) const;
    IntPoly derivative() const;

    mpz_class content() const;      // gcd of coefficients, >= 0; 0 for zero poly
    IntPoly primitive_part() const; // content and leading sign removed
    IntPoly negated_variable() const; // p(-X)

    // Largest v with X^v | p; *this == X^v * q with q(0) != 0.  Zero poly: v=0.
    IntPoly strip_zero_roots(unsigned* v = nullptr) const;

    std::string str() const; // ascending coefficient list, for diagnostics

private:
    void trim();
    std::vector<mpz_class> c_;
};

// Quotient a/b when the division is exact over Z[x]; throws DomainError otherwise.
IntPoly divide_exact(const IntPoly& a, const IntPoly& b);

// Primitive gcd with positive leading coefficient (subresultant PRS).
IntPoly gcd(const IntPoly& a, const IntPoly& b);

// Resultant via the subresultant PRS.  Res(a, b) = lc(a)^{deg b} * prod b(alpha_i).
mpz_class resultant(const IntPoly& a, const IntPoly& b);

// Yun decomposition: input = content-unit * prod_i factor[i].poly^{factor[i].mult},
// factors squarefree, pairwise coprime, positive leading coefficients, mult
// strictly increasing.  The constant content is discarded (callers here use
// monic or primitive inputs).
struct SquarefreeFactor {
    IntPoly poly;
    unsigned mult;
};
std::vector<SquarefreeFactor> squarefree_decomposition(const IntPoly& g);

// Product of the distinct irreducible factors, each once.
IntPoly squarefree_part(const IntPoly& g);

// m-th cyclotomic polynomial, m >= 1.
IntPoly cyclotomic(unsigned m);

// Characteristic polynomial of the ratios of roots: eliminates y from
// {g(y) = 0, g(x*y) = 0}.  Its roots include every ratio alpha_i/alpha_j of
// nonzero roots of g.  Requires g nonzero; zero roots are stripped first.
IntPoly ratio_polynomial(const IntPoly& g);

// Orders m >= 2 such that the m-th cyclotomic polynomial divides the ratio
// polynomial of g, i.e. some ratio of distinct roots of g is a primitive m-th
// root of unity.  Empty result certifies no root ratio is a root of unity
// (other than the trivial ratio 1 of a root with itself).
std::vector<unsigned> unit_ratio_orders(const IntPoly& g);

// Euler totient by trial division (small m utility).
unsigned long euler_phi(unsigned long m);

// Multiplicity of r as a root (0 if not a root).
unsigned root_multiplicity(const IntPoly& g, const mpz_class& r);

// Newton polygon with respect to prime p, in root-valuation form: segment
// slopes are exactly the p-adic valuations of the nonzero roots, listed in
// strictly increasing order, and each segment's length counts the roots with
// that valuation.  Zero roots are stripped first; segment lengths sum to the
// degree of the stripped polynomial.
struct PolygonSegment {
    mpq_class slope;
    unsigned length;
};
struct NewtonPolygon {
    mpz_class prime;
    std::vector<PolygonSegment> segments;
};
NewtonPolygon newton_polygon(const IntPoly& g, const mpz_class& p);

// p-adic valuation of a nonzero integer.
unsigned long padic_valuation(const mpz_class& n, const mpz_class& p);

} // namespace spart
