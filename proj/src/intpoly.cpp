#include "spart/intpoly.hpp"

#include "spart/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

namespace spart {

namespace {

const mpz_class kZero = 0;

} // namespace

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    c_.reserve(coeffs.size());
    for (long v : coeffs) c_.emplace_back(v);
    trim();
}

IntPoly IntPoly::constant(const mpz_class& c) {
    IntPoly p;
    if (c != 0) p.c_.push_back(c);
    return p;
}

IntPoly IntPoly::x_power(unsigned n) {
    IntPoly p;
    p.c_.assign(n + 1, 0);
    p.c_[n] = 1;
    return p;
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const mpz_class& IntPoly::operator[](size_t i) const {
    return i < c_.size() ? c_[i] : kZero;
}

const mpz_class& IntPoly::leading() const {
    if (is_zero()) throw DomainError("IntPoly::leading: zero polynomial");
    return c_.back();
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] + o[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] - o[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-() const {
    std::vector<mpz_class> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<mpz_class> r(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] += c_[i] * o.c_[j];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const mpz_class& s) const {
    std::vector<mpz_class> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * s;
    return IntPoly(std::move(r));
}

mpz_class IntPoly::eval(const mpz_class& x) const {
    mpz_class acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

mpq_class IntPoly::eval_q(const mpq_class& x) const {
    mpq_class acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + mpq_class(c_[i]);
    return acc;
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<mpz_class> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
    return IntPoly(std::move(r));
}

mpz_class IntPoly::content() const {
    mpz_class g = 0;
    for (const auto& c : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero()) return {};
    mpz_class g = content();
    if (sgn(leading()) < 0) g = -g;
    std::vector<mpz_class> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i)
        mpz_divexact(r[i].get_mpz_t(), c_[i].get_mpz_t(), g.get_mpz_t());
    return IntPoly(std::move(r));
}

IntPoly IntPoly::negated_variable() const {
    std::vector<mpz_class> r(c_);
    for (size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::strip_zero_roots(unsigned* v) const {
    size_t k = 0;
    while (k < c_.size() && c_[k] == 0) ++k;
    if (v) *v = static_cast<unsigned>(c_.empty() ? 0 : k);
    if (k == 0) return *this;
    return IntPoly(std::vector<mpz_class>(c_.begin() + static_cast<long>(k), c_.end()));
}

std::string IntPoly::str() const {
    std::ostringstream os;
    os << "poly[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ", ";
        os << c_[i];
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// Generic dense polynomial machinery over a ring R, used with R = mpz_class
// (ordinary resultants / gcd) and R = IntPoly (eliminating one variable of a
// bivariate polynomial).  All divisions below are exact by the subresultant
// theory; div_exact verifies and throws on violation.

namespace {

template <class R>
struct RingOps;

template <>
struct RingOps<mpz_class> {
    static bool is_zero(const mpz_class& a) { return a == 0; }
    static mpz_class one() { return 1; }
    static mpz_class mul(const mpz_class& a, const mpz_class& b) { return a * b; }
    static mpz_class sub(const mpz_class& a, const mpz_class& b) { return a - b; }
    static mpz_class div_exact(const mpz_class& a, const mpz_class& b) {
        mpz_class q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        if (r != 0) throw DomainError("ring division not exact (mpz)");
        return q;
    }
    static mpz_class pow(const mpz_class& a, unsigned long e) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
        return r;
    }
};

template <>
struct RingOps<IntPoly> {
    static bool is_zero(const IntPoly& a) { return a.is_zero(); }
    static IntPoly one() { return IntPoly::constant(1); }
    static IntPoly mul(const IntPoly& a, const IntPoly& b) { return a * b; }
    static IntPoly sub(const IntPoly& a, const IntPoly& b) { return a - b; }
    static IntPoly div_exact(const IntPoly& a, const IntPoly& b) {
        return divide_exact(a, b);
    }
    static IntPoly pow(IntPoly a, unsigned long e) {
        IntPoly acc = one();
        while (e > 0) {
            if (e & 1) acc = acc * a;
            a = a * a;
            e >>= 1;
        }
        return acc;
    }
};

template <class R>
using PolyVec = std::vector<R>; // dense over R, trimmed

template <class R>
void trim_vec(PolyVec<R>& p) {
    while (!p.empty() && RingOps<R>::is_zero(p.back())) p.pop_back();
}

template <class R>
int deg(const PolyVec<R>& p) {
    return static_cast<int>(p.size()) - 1;
}

// Pseudo-remainder: lc(B)^(deg A - deg B + 1) * A  mod  B.
template <class R>
PolyVec<R> prem(PolyVec<R> A, const PolyVec<R>& B) {
    using Ops = RingOps<R>;
    const R& d = B.back();
    long e = deg(A) - deg(B) + 1;
    while (!A.empty() && A.size() >= B.size()) {
        size_t shift = A.size() - B.size();
        R lcA = A.back();
        PolyVec<R> nA(A.size());
        for (size_t i = 0; i < A.size(); ++i) nA[i] = Ops::mul(d, A[i]);
        for (size_t j = 0; j < B.size(); ++j)
            nA[shift + j] = Ops::sub(nA[shift + j], Ops::mul(lcA, B[j]));
        trim_vec(nA);
        A = std::move(nA);
        --e;
    }
    if (e > 0) {
        R f = Ops::pow(d, static_cast<unsigned long>(e));
        for (auto& c : A) c = Ops::mul(c, f);
    }
    return A;
}

// Resultant by the subresultant PRS (contents not extracted; degrees here are
// small enough that the quadratic-in-theory coefficient growth is irrelevant).
template <class R>
R resultant_prs(PolyVec<R> A, PolyVec<R> B) {
    using Ops = RingOps<R>;
    trim_vec(A);
    trim_vec(B);
    if (A.empty() || B.empty()) return R{};
    bool negate = false;
    if (deg(A) < deg(B)) {
        std::swap(A, B);
        if ((deg(A) & 1) && (deg(B) & 1)) negate = !negate;
    }
    if (deg(B) == 0) {
        R r = Ops::pow(B[0], static_cast<unsigned long>(deg(A)));
        return r; // deg A == 0 gives the empty-matrix convention: 1
    }
    R g = Ops::one(), h = Ops::one();
    while (deg(B) > 0) {
        long delta = deg(A) - deg(B);
        if ((deg(A) & 1) && (deg(B) & 1)) negate = !negate;
        PolyVec<R> rem = prem(A, B);
        if (rem.empty()) return R{}; // common factor of positive degree
        A = std::move(B);
        R div = Ops::mul(g, Ops::pow(h, static_cast<unsigned long>(delta)));
        B = std::move(rem);
        for (auto& c : B) c = Ops::div_exact(c, div);
        g = A.back();
        if (delta == 1)
            h = g;
        else if (delta > 1)
            h = Ops::div_exact(Ops::pow(g, static_cast<unsigned long>(delta)),
                               Ops::pow(h, static_cast<unsigned long>(delta - 1)));
        // delta == 0 (possible only on the first round): h unchanged
    }
    long dA = deg(A);
    R num = Ops::pow(B[0], static_cast<unsigned long>(dA));
    R res = Ops::div_exact(num, Ops::pow(h, static_cast<unsigned long>(dA - 1)));
    if (negate) res = Ops::sub(R{}, res);
    return res;
}

// gcd of primitive polynomials via the subresultant PRS; result primitive with
// positive leading coefficient.
PolyVec<mpz_class> primitive_gcd(PolyVec<mpz_class> A, PolyVec<mpz_class> B) {
    using Ops = RingOps<mpz_class>;
    trim_vec(A);
    trim_vec(B);
    if (A.empty()) std::swap(A, B);
    if (B.empty()) {
        IntPoly p{std::vector<mpz_class>(A)};
        p = p.primitive_part();
        return p.coeffs();
    }
    if (deg(A) < deg(B)) std::swap(A, B);
    mpz_class g = 1, h = 1;
    while (true) {
        long delta = deg(A) - deg(B);
        PolyVec<mpz_class> rem = prem(A, B);
        if (rem.empty()) break; // B is the gcd
        if (deg(rem) == 0) {
            // coprime: gcd is a constant
            return {mpz_class(1)};
        }
        A = std::move(B);
        mpz_class div = g * Ops::pow(h, static_cast<unsigned long>(delta));
        B = std::move(rem);
        for (auto& c : B) c = Ops::div_exact(c, div);
        g = A.back();
        if (delta == 1)
            h = g;
        else if (delta > 1)
            h = Ops::div_exact(Ops::pow(g, static_cast<unsigned long>(delta)),
                               Ops::pow(h, static_cast<unsigned long>(delta - 1)));
    }
    IntPoly p{std::vector<mpz_class>(B)};
    p = p.primitive_part();
    return p.coeffs();
}

} // namespace

IntPoly divide_exact(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw DomainError("divide_exact: division by zero polynomial");
    if (a.is_zero()) return {};
    if (a.degree() < b.degree())
        throw DomainError("divide_exact: division not exact (degree)");
    std::vector<mpz_class> rem = a.coeffs();
    std::vector<mpz_class> q(static_cast<size_t>(a.degree() - b.degree()) + 1);
    const auto& bc = b.coeffs();
    while (rem.size() >= bc.size()) {
        size_t shift = rem.size() - bc.size();
        mpz_class qc, r;
        mpz_tdiv_qr(qc.get_mpz_t(), r.get_mpz_t(), rem.back().get_mpz_t(),
                    bc.back().get_mpz_t());
        if (r != 0) throw DomainError("divide_exact: division not exact");
        q[shift] = qc;
        for (size_t j = 0; j < bc.size(); ++j) rem[shift + j] -= qc * bc[j];
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
        if (rem.empty()) break;
    }
    if (!rem.empty()) throw DomainError("divide_exact: division not exact (remainder)");
    return IntPoly(std::move(q));
}

namespace {

// Non-throwing divisibility test: does d divide a over Z[x]?
bool divides_poly(const IntPoly& d, const IntPoly& a) {
    if (d.is_zero()) return a.is_zero();
    if (a.is_zero()) return true;
    if (a.degree() < d.degree()) return false;
    std::vector<mpz_class> rem = a.coeffs();
    const auto& dc = d.coeffs();
    while (rem.size() >= dc.size()) {
        size_t shift = rem.size() - dc.size();
        mpz_class qc, r;
        mpz_tdiv_qr(qc.get_mpz_t(), r.get_mpz_t(), rem.back().get_mpz_t(),
                    dc.back().get_mpz_t());
        if (r != 0) return false;
        for (size_t j = 0; j < dc.size(); ++j) rem[shift + j] -= qc * dc[j];
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
        if (rem.empty()) return true;
    }
    return rem.empty();
}

} // namespace

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() && b.is_zero()) return {};
    // gcd(p, 0) = p normalized to positive leading coefficient
    if (a.is_zero()) return b.primitive_part() * b.content();
    if (b.is_zero()) return a.primitive_part() * a.content();
    mpz_class cg;
    mpz_gcd(cg.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
    auto core = primitive_gcd(a.primitive_part().coeffs(), b.primitive_part().coeffs());
    return IntPoly(std::move(core)) * cg;
}

mpz_class resultant(const IntPoly& a, const IntPoly& b) {
    return resultant_prs<mpz_class>(a.coeffs(), b.coeffs());
}

std::vector<SquarefreeFactor> squarefree_decomposition(const IntPoly& g) {
    if (g.is_zero()) throw DomainError("squarefree_decomposition: zero polynomial");
    IntPoly f = g.primitive_part();
    std::vector<SquarefreeFactor> out;
    if (f.degree() <= 0) return out;
    IntPoly fd = f.derivative();
    IntPoly a = gcd(f, fd); // primitive, positive lead
    if (a.degree() == 0) {
        out.push_back({f, 1});
        return out;
    }
    IntPoly w = divide_exact(f, a);
    IntPoly y = divide_exact(fd, a);
    IntPoly z = y - w.derivative();
    unsigned i = 1;
    while (w.degree() > 0) {
        IntPoly h = gcd(w, z);
        if (h.degree() > 0) out.push_back({h, i});
        w = divide_exact(w, h);
        y = z.is_zero() ? IntPoly{} : divide_exact(z, h);
        z = y - w.derivative();
        ++i;
    }
    return out;
}

IntPoly squarefree_part(const IntPoly& g) {
    if (g.is_zero()) throw DomainError("squarefree_part: zero polynomial");
    IntPoly f = g.primitive_part();
    if (f.degree() <= 0) return IntPoly::constant(1);
    IntPoly a = gcd(f, f.derivative());
    return divide_exact(f, a);
}

IntPoly cyclotomic(unsigned m) {
    if (m == 0) throw DomainError("cyclotomic: m must be positive");
    static std::map<unsigned, IntPoly> memo;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;

    // Phi_m = (X^m - 1) / prod_{d | m, d < m} Phi_d, computed bottom-up.
    std::vector<unsigned> divisors;
    for (unsigned d = 1; d <= m; ++d)
        if (m % d == 0) divisors.push_back(d);
    for (unsigned d : divisors) {
        if (memo.count(d)) continue;
        IntPoly q = IntPoly::x_power(d) - IntPoly{1};
        for (unsigned e : divisors) {
            if (e >= d || d % e != 0) continue;
            q = divide_exact(q, memo.at(e));
        }
        memo.emplace(d, std::move(q));
    }
    return memo.at(m);
}

IntPoly ratio_polynomial(const IntPoly& g) {
    if (g.is_zero()) throw DomainError("ratio_polynomial: zero polynomial");
    IntPoly gt = g.strip_zero_roots();
    int n = gt.degree();
    if (n <= 0) return IntPoly::constant(1);
    // Eliminate y from A(y) = g(y), B(y) = g(x*y); coefficients live in Z[x].
    PolyVec<IntPoly> A(static_cast<size_t>(n) + 1), B(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        A[static_cast<size_t>(i)] = IntPoly::constant(gt[static_cast<size_t>(i)]);
        B[static_cast<size_t>(i)] =
            IntPoly::x_power(static_cast<unsigned>(i)) * gt[static_cast<size_t>(i)];
    }
    IntPoly res = resultant_prs<IntPoly>(std::move(A), std::move(B));
    if (res.is_zero())
        throw DomainError("ratio_polynomial: unexpected zero resultant");
    return res.primitive_part();
}

unsigned long euler_phi(unsigned long m) {
    unsigned long result = m;
    for (unsigned long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

std::vector<unsigned> unit_ratio_orders(const IntPoly& g) {
    if (g.is_zero()) throw DomainError("unit_ratio_orders: zero polynomial");
    IntPoly sf = squarefree_part(g.strip_zero_roots());
    if (sf.degree() <= 1) return {};
    IntPoly R = ratio_polynomial(sf);
    unsigned long B = static_cast<unsigned long>(R.degree());
    std::vector<unsigned> orders;
    // phi(m) <= B forces m <= 2*B^2 (phi(m) >= sqrt(m/2)); 4*B^2 for margin.
    for (unsigned long m = 2; m <= 4 * B * B; ++m) {
        if (euler_phi(m) > B) continue;
        if (divides_poly(cyclotomic(static_cast<unsigned>(m)), R))
            orders.push_back(static_cast<unsigned>(m));
    }
    return orders;
}

unsigned root_multiplicity(const IntPoly& g, const mpz_class& r) {
    if (g.is_zero()) throw DomainError("root_multiplicity: zero polynomial");
    IntPoly p = g;
    IntPoly lin{std::vector<mpz_class>{-r, 1}};
    unsigned mult = 0;
    while (!p.is_zero() && p.eval(r) == 0) {
        p = divide_exact(p, lin);
        ++mult;
    }
    return mult;
}

unsigned long padic_valuation(const mpz_class& n, const mpz_class& p) {
    if (n == 0) throw DomainError("padic_valuation: zero argument");
    if (p < 2) throw DomainError("padic_valuation: p must be >= 2");
    mpz_class rem;
    return mpz_remove(rem.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

NewtonPolygon newton_polygon(const IntPoly& g, const mpz_class& p) {
    if (p < 2) throw DomainError("newton_polygon: p must be >= 2");
    IntPoly gt = g.strip_zero_roots();
    if (gt.degree() < 0) throw DomainError("newton_polygon: zero polynomial");
    NewtonPolygon np;
    np.prime = p;
    int n = gt.degree();
    if (n == 0) return np;

    // Points (j, v_p(c_{n-j})) for nonzero coefficients; slopes of the lower
    // convex hull are the root valuations in increasing order.
    struct Pt {
        long x;
        mpz_class y;
    };
    std::vector<Pt> pts;
    for (int j = 0; j <= n; ++j) {
        const mpz_class& c = gt[static_cast<size_t>(n - j)];
        if (c == 0) continue; // infinite valuation, never on the lower hull
        pts.push_back({j, mpz_class(padic_valuation(c, p))});
    }
    // Monotone-chain lower hull; cross <= 0 also drops collinear interior
    // points, which merges equal-slope runs into single segments.
    std::vector<Pt> hull;
    for (const auto& q : pts) {
        while (hull.size() >= 2) {
            const Pt& a = hull[hull.size() - 2];
            const Pt& b = hull[hull.size() - 1];
            mpz_class cross = (b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(q);
    }
    for (size_t i = 1; i < hull.size(); ++i) {
        mpq_class slope(hull[i].y - hull[i - 1].y, mpz_class(hull[i].x - hull[i - 1].x));
        slope.canonicalize();
        np.segments.push_back({slope, static_cast<unsigned>(hull[i].x - hull[i - 1].x)});
    }
    return np;
}

} // namespace spart
