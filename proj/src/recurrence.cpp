#include "spart/recurrence.hpp"

#include "spart/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <utility>

namespace spart {

namespace {

constexpr mpfr_prec_t kMinPrec = 64;

mpfr_prec_t clamp_prec(mpfr_prec_t p) { return std::max(p, kMinPrec); }

} // namespace

// ---------------------------------------------------------------------------
// Spec and terms
// ---------------------------------------------------------------------------

void RecurrenceSpec::validate() const {
    if (coeffs.empty()) throw DomainError("recurrence order must be at least 1");
    if (init.size() != coeffs.size())
        throw DomainError("need exactly k initial terms for an order-k recurrence");
    if (coeffs.back() == 0)
        throw DomainError("trailing coefficient a_k must be nonzero");
    bool all_zero = true;
    for (const auto& u : init)
        if (u != 0) { all_zero = false; break; }
    if (all_zero) throw DomainError("initial terms must not all be zero");
}

IntPoly characteristic_polynomial(const RecurrenceSpec& spec) {
    spec.validate();
    const unsigned k = spec.order();
    std::vector<mpz_class> c(k + 1);
    c[k] = 1;
    for (unsigned i = 1; i <= k; ++i) c[k - i] = -spec.coeffs[i - 1];
    return IntPoly(std::move(c));
}

mpz_class term(const RecurrenceSpec& spec, unsigned long n) {
    spec.validate();
    const unsigned k = spec.order();
    if (n < k) return spec.init[static_cast<size_t>(n)];
    std::vector<mpz_class> win(spec.init); // win[i] = u_{m+i}
    mpz_class next;
    for (unsigned long m = k; m <= n; ++m) {
        next = 0;
        for (unsigned i = 0; i < k; ++i) next += spec.coeffs[i] * win[k - 1 - i];
        std::rotate(win.begin(), win.begin() + 1, win.end());
        win.back() = next;
    }
    return win.back();
}

namespace {

using Mat = std::vector<std::vector<mpz_class>>;

Mat mat_mul(const Mat& a, const Mat& b) {
    const size_t k = a.size();
    Mat r(k, std::vector<mpz_class>(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < k; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

} // namespace

std::vector<mpz_class> term_window(const RecurrenceSpec& spec, unsigned long n) {
    spec.validate();
    const unsigned k = spec.order();
    if (n <= 4 * static_cast<unsigned long>(k)) {
        // cheap direct walk for small offsets
        std::vector<mpz_class> win(spec.init);
        mpz_class next;
        for (unsigned long m = 0; m < n; ++m) {
            next = 0;
            for (unsigned i = 0; i < k; ++i) next += spec.coeffs[i] * win[k - 1 - i];
            std::rotate(win.begin(), win.begin() + 1, win.end());
            win.back() = next;
        }
        return win;
    }
    // companion matrix on the state (u_{m+k-1}, ..., u_m)
    Mat m(k, std::vector<mpz_class>(k));
    for (unsigned j = 0; j < k; ++j) m[0][j] = spec.coeffs[j];
    for (unsigned i = 1; i < k; ++i) m[i][i - 1] = 1;
    Mat acc(k, std::vector<mpz_class>(k));
    for (unsigned i = 0; i < k; ++i) acc[i][i] = 1;
    unsigned long e = n;
    Mat base = m;
    while (e > 0) {
        if (e & 1UL) acc = mat_mul(acc, base);
        e >>= 1;
        if (e > 0) base = mat_mul(base, base);
    }
    // state_0 = (u_{k-1}, ..., u_0)
    std::vector<mpz_class> out(k);
    for (unsigned i = 0; i < k; ++i) {
        mpz_class s = 0;
        for (unsigned j = 0; j < k; ++j) s += acc[i][j] * spec.init[k - 1 - j];
        out[k - 1 - i] = s; // state row i is u_{n+k-1-i}
    }
    return out;
}

// ---------------------------------------------------------------------------
// Closed form
// ---------------------------------------------------------------------------

namespace {

CRect crect_from_mpz(const mpz_class& v, mpfr_prec_t p) {
    return {RI::from_mpz(v, p), RI::from_si(0, p)};
}

// Gaussian elimination with partial pivoting by modulus lower bound.
// Returns false when no pivot with certified nonzero modulus exists.
bool solve_crect(std::vector<std::vector<CRect>>& a, std::vector<CRect>& rhs,
                 RI& det_abs) {
    const size_t k = a.size();
    det_abs = RI::from_si(1, rhs[0].prec());
    for (size_t col = 0; col < k; ++col) {
        size_t best = col;
        double best_mig = -1.0;
        bool found = false;
        for (size_t r = col; r < k; ++r) {
            if (!a[r][col].mod_sq().is_positive()) continue;
            const double mig = a[r][col].mod().lo_d();
            if (!found || mig > best_mig) { best_mig = mig; best = r; found = true; }
        }
        if (!found) return false;
        std::swap(a[best], a[col]);
        std::swap(rhs[best], rhs[col]);
        const CRect piv = a[col][col];
        det_abs *= piv.mod();
        for (size_t r = col + 1; r < k; ++r) {
            if (a[r][col].contains_zero() && a[r][col].mod_sq().hi_d() == 0.0) continue;
            const CRect f = a[r][col] / piv;
            for (size_t cc = col; cc < k; ++cc) a[r][cc] = a[r][cc] - f * a[col][cc];
            rhs[r] = rhs[r] - f * rhs[col];
        }
    }
    for (size_t col = k; col-- > 0;) {
        CRect s = rhs[col];
        for (size_t cc = col + 1; cc < k; ++cc) s = s - a[col][cc] * rhs[cc];
        rhs[col] = s / a[col][col];
    }
    return true;
}

} // namespace

ClosedForm closed_form(const RecurrenceSpec& spec, mpfr_prec_t start,
                       mpfr_prec_t ceiling) {
    spec.validate();
    const IntPoly g = characteristic_polynomial(spec);
    const unsigned k = spec.order();

    for (mpfr_prec_t p = clamp_prec(start);;) {
        CertifiedRoots cr = certified_roots(g, p, ceiling);
        const mpfr_prec_t wp = cr.prec;
        const size_t t = cr.clusters.size();

        // Column layout: for each cluster i, powers j = 0..mult_i-1.
        std::vector<std::pair<size_t, unsigned>> cols;
        for (size_t i = 0; i < t; ++i)
            for (unsigned j = 0; j < cr.clusters[i].multiplicity; ++j)
                cols.emplace_back(i, j);

        std::vector<std::vector<CRect>> a(k, std::vector<CRect>(k, CRect(wp)));
        std::vector<CRect> rhs;
        rhs.reserve(k);
        for (unsigned n = 0; n < k; ++n) {
            std::vector<CRect> pw;
            pw.reserve(t);
            for (size_t i = 0; i < t; ++i) pw.push_back(cr.clusters[i].box().pow_ui(n));
            for (size_t c = 0; c < cols.size(); ++c) {
                const auto [i, j] = cols[c];
                mpz_class nj;
                mpz_ui_pow_ui(nj.get_mpz_t(), n, j); // 0^0 == 1
                a[n][c] = pw[i].scale(RI::from_mpz(nj, wp));
            }
            rhs.push_back(crect_from_mpz(spec.init[n], wp));
        }

        RI det_abs(wp);
        if (!solve_crect(a, rhs, det_abs)) {
            if (wp >= ceiling)
                throw UndecidedError(
                    "coefficient system not solvable at the precision ceiling");
            p = wp * 2;
            continue;
        }

        ClosedForm cf;
        cf.prec = wp;
        cf.det_v_abs = det_abs;
        cf.coeff.assign(t, {});
        for (size_t c = 0; c < cols.size(); ++c)
            cf.coeff[cols[c].first].push_back(rhs[c]);

        unsigned max_mult = 0;
        for (const auto& cl : cr.clusters) max_mult = std::max(max_mult, cl.multiplicity);
        const RI log_det = log(det_abs);
        for (unsigned j = 0; j < max_mult; ++j) {
            RI m = RI::from_si(0, wp);
            for (size_t i = 0; i < t; ++i)
                if (cr.clusters[i].multiplicity > j) m = max(m, cf.coeff[i][j].mod());
            const RI hb = log_det + log_plus(m);
            cf.height_bound.push_back(RI::from_endpoints(hb.hi(), hb.hi(), wp));
        }

        for (size_t i = 0; i < t; ++i) {
            Tri any = Tri::undecided;
            for (const auto& c : cf.coeff[i])
                if (!c.contains_zero()) { any = Tri::yes; break; }
            cf.f_nonzero.push_back(any);
            cf.f_leading_nonzero.push_back(
                cf.coeff[i].back().contains_zero() ? Tri::undecided : Tri::yes);
        }
        cf.roots = std::move(cr);
        return cf;
    }
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

namespace {

bool boxes_overlap(const CRect& a, const CRect& b) {
    return a.re.overlaps(b.re) && a.im.overlaps(b.im);
}

// Clusters whose boxes meet `region`, excluding `self`.  A root known to lie
// in `region` but distinct from root `self` lies in exactly one cluster, and
// that cluster is in the returned set; a singleton is therefore a proof.
std::vector<size_t> candidate_clusters(const std::vector<RootCluster>& cl,
                                       const CRect& region, size_t self) {
    std::vector<size_t> out;
    for (size_t m = 0; m < cl.size(); ++m)
        if (m != self && boxes_overlap(region, cl[m].box())) out.push_back(m);
    return out;
}

// Marks clusters certified to hold a root alpha with -alpha also a root,
// using the exact gcd(g(x), g(-x)) and its certified roots.
std::vector<bool> negation_paired_marks(const IntPoly& q,
                                        const CertifiedRoots& cr,
                                        mpfr_prec_t ceiling) {
    std::vector<bool> mark(cr.clusters.size(), false);
    if (q.degree() < 1) return mark;
    CertifiedRoots qr;
    try {
        qr = certified_roots(q, cr.prec, ceiling);
    } catch (const UndecidedError&) {
        return mark; // no negation information this round
    }
    for (const auto& qc : qr.clusters) {
        std::vector<size_t> cand;
        for (size_t m = 0; m < cr.clusters.size(); ++m)
            if (boxes_overlap(qc.box(), cr.clusters[m].box())) cand.push_back(m);
        if (cand.size() == 1) mark[cand[0]] = true;
    }
    return mark;
}

// True when every attaining cluster is provably modulus-tied to another
// attaining cluster, so the maximum is shared and no unique dominant root
// exists.  Ties proved exactly: conjugate pairs (real coefficients) and
// negation pairs (gcd with the sign-flipped polynomial).
bool attaining_all_tied(const CertifiedRoots& cr, const std::vector<size_t>& att,
                        const std::vector<bool>& neg_mark) {
    const auto& cl = cr.clusters;
    std::set<size_t> att_set(att.begin(), att.end());
    for (size_t i : att) {
        bool tied = false;
        if (cl[i].is_real == Tri::no) {
            const auto cand = candidate_clusters(cl, cl[i].box().conj(), i);
            if (cand.size() == 1 && att_set.count(cand[0])) tied = true;
        }
        if (!tied && neg_mark[i]) {
            const auto cand = candidate_clusters(cl, -cl[i].box(), i);
            if (cand.size() == 1 && att_set.count(cand[0])) tied = true;
        }
        if (!tied) return false;
    }
    return true;
}

} // namespace

Classification classify(const RecurrenceSpec& spec, const ClassifyOptions& opt) {
    spec.validate();
    const IntPoly g = characteristic_polynomial(spec);

    Classification out;
    out.unit_orders = unit_ratio_orders(g);
    out.degenerate = !out.unit_orders.empty();

    const IntPoly q = gcd(g, g.negated_variable());

    for (mpfr_prec_t p = clamp_prec(opt.start);;) {
        CertifiedRoots cr = certified_roots(g, p, opt.ceiling);
        out.t = static_cast<unsigned>(cr.clusters.size());
        out.prec = cr.prec;

        const MaxModulus mm = max_modulus(cr.clusters);
        if (mm.attaining.size() == 1) {
            out.dominance = Dominance::unique;
            out.dominant_index = mm.attaining[0];
            return out;
        }
        const auto neg_mark = negation_paired_marks(q, cr, opt.ceiling);
        if (attaining_all_tied(cr, mm.attaining, neg_mark)) {
            out.dominance = Dominance::none_proved;
            return out;
        }
        if (cr.prec >= opt.ceiling) {
            out.dominance = Dominance::undecided;
            return out;
        }
        p = cr.prec * 2;
    }
}

bool padic_unit_dominant(const IntPoly& g, const mpz_class& p) {
    const IntPoly sf = squarefree_part(g);
    unsigned zeros = 0;
    const IntPoly stripped = sf.strip_zero_roots(&zeros);
    if (stripped.degree() < 1) {
        if (stripped.degree() == 0 && zeros > 0)
            return false; // only the zero root: nothing p-adically dominant
        throw DomainError("polynomial must have a nonzero root");
    }
    const NewtonPolygon np = newton_polygon(sf, p);
    return np.segments.front().slope == 0 && np.segments.front().length == 1;
}

// ---------------------------------------------------------------------------
// Dominant-term envelope
// ---------------------------------------------------------------------------

Envelope dominant_envelope(const ClosedForm& cf, size_t dominant) {
    const auto& cl = cf.roots.clusters;
    if (dominant >= cl.size()) throw DomainError("dominant index out of range");
    const mpfr_prec_t wp = cf.prec;
    const RI one = RI::from_si(1, wp);
    const RI a1 = cl[dominant].modulus();
    if (!a1.definitely_gt(one))
        throw HypothesisError("dominant root modulus is not certified > 1");

    Envelope env;
    if (cl.size() == 1) {
        env.theta = 0.05;
        env.C = RI::from_si(0, wp);
        env.n_cap = 0;
        return env;
    }

    double r2 = 0.0;
    for (size_t i = 0; i < cl.size(); ++i) {
        if (i == dominant) continue;
        if (!cl[i].modulus().definitely_lt(a1))
            throw HypothesisError("dominance is not strict at this precision");
        r2 = std::max(r2, cl[i].modulus().hi_d());
    }
    const double a1lo = a1.lo_d();
    const double ratio = std::log(r2) / std::log(a1lo);
    double theta;
    if (!(ratio > 0.0)) theta = 0.05;
    else if (ratio >= 0.8) theta = ratio + (1.0 - ratio) / 4.0;
    else theta = ratio + 0.05;

    // Per-cluster decay ratios rho_i = |alpha_i| / |alpha_dom|^theta < 1,
    // certified in interval arithmetic; widen theta if marginal.
    std::vector<RI> rho;
    std::vector<size_t> tail;
    for (int attempt = 0;; ++attempt) {
        rho.clear();
        tail.clear();
        const RI a1th = exp(RI::from_double(theta, wp) * log(a1));
        bool ok = true;
        for (size_t i = 0; i < cl.size(); ++i) {
            if (i == dominant) continue;
            RI r = cl[i].modulus() / a1th;
            if (!r.definitely_lt(one)) { ok = false; break; }
            tail.push_back(i);
            rho.push_back(r);
        }
        if (ok) break;
        if (attempt >= 3)
            throw HypothesisError("could not certify an envelope exponent below 1");
        theta = theta + (1.0 - theta) / 2.0;
    }
    env.theta = theta;

    // Certified per-term decrease beyond n_cap: rho_i * (1 + 1/n_cap)^{d_i} < 1.
    unsigned long n_cap = 16;
    for (int tries = 0;; ++tries) {
        const RI growth = one + one / RI::from_ui(n_cap, wp);
        bool dec = true;
        for (size_t s = 0; s < tail.size(); ++s) {
            const unsigned d = cl[tail[s]].multiplicity - 1;
            if (!(rho[s] * pow_ui(growth, d)).definitely_lt(one)) { dec = false; break; }
        }
        if (dec) break;
        if (tries >= 48) throw HypothesisError("envelope cap diverged");
        n_cap *= 2;
    }

    // C = sup over n >= 1 of sum_i Fbar_i(n) rho_i^n, attained on [1, n_cap].
    std::vector<std::vector<RI>> fbar;
    for (size_t s = 0; s < tail.size(); ++s) {
        std::vector<RI> row;
        for (const auto& c : cf.coeff[tail[s]]) row.push_back(c.mod());
        fbar.push_back(std::move(row));
    }
    RI c_env = RI::from_si(0, wp);
    std::vector<RI> rho_pow(tail.size(), one);
    for (unsigned long n = 1; n <= n_cap; ++n) {
        const RI nn = RI::from_ui(n, wp);
        RI total = RI::from_si(0, wp);
        for (size_t s = 0; s < tail.size(); ++s) {
            rho_pow[s] = rho_pow[s] * rho[s];
            RI val = RI::from_si(0, wp);
            for (size_t j = fbar[s].size(); j-- > 0;) val = val * nn + fbar[s][j];
            total += val * rho_pow[s];
        }
        c_env = max(c_env, total);
    }
    env.C = RI::from_endpoints(c_env.hi(), c_env.hi(), wp);
    env.n_cap = n_cap;
    return env;
}

// ---------------------------------------------------------------------------
// Floor-power sequences
// ---------------------------------------------------------------------------

void FloorPowerSpec::validate() const {
    if (lambda <= 0) throw DomainError("lambda must be positive");
    if (theta_rational.has_value() == theta_minpoly.has_value())
        throw DomainError("theta must be given exactly one way");
    if (theta_rational) {
        if (*theta_rational <= 1) throw DomainError("theta must exceed 1");
        return;
    }
    const IntPoly& m = *theta_minpoly;
    if (m.degree() < 1) throw DomainError("theta polynomial must be nonconstant");
    if (m[0] == 0) throw DomainError("theta polynomial must not vanish at 0");
    if (squarefree_part(m) != m.primitive_part())
        throw DomainError("theta polynomial must be squarefree");
}

namespace {

// Reduce a rational-coefficient polynomial modulo m (not necessarily monic).
void qreduce(std::vector<mpq_class>& v, const IntPoly& m) {
    const size_t d = static_cast<size_t>(m.degree());
    const mpq_class lead(m.leading());
    for (size_t i = v.size(); i-- > d;) {
        if (v[i] == 0) continue;
        const mpq_class f = v[i] / lead;
        for (size_t j = 0; j <= d; ++j) {
            mpq_class t = f * mpq_class(m[j]);
            v[i - d + j] -= t;
        }
        v[i] = 0; // exact by construction
    }
    v.resize(d);
}

// theta * current, reduced: multiply by x.
void qshift_reduce(std::vector<mpq_class>& v, const IntPoly& m) {
    v.insert(v.begin(), mpq_class(0));
    qreduce(v, m);
}

std::vector<mpq_class> qpower_mod(const IntPoly& m, unsigned long n) {
    const size_t d = static_cast<size_t>(m.degree());
    std::vector<mpq_class> acc(d, 0), base(d, 0);
    acc[0] = 1;
    if (d == 1) {
        // theta is rational: x == -m0/m1
        mpq_class th = mpq_class(-m[0]) / mpq_class(m[1]);
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), th.get_num().get_mpz_t(), n);
        mpz_pow_ui(den.get_mpz_t(), th.get_den().get_mpz_t(), n);
        acc[0] = mpq_class(num) / mpq_class(den);
        return acc;
    }
    base[1] = 1;
    unsigned long e = n;
    auto mul = [&](const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
        std::vector<mpq_class> r(2 * d - 1, 0);
        for (size_t i = 0; i < d; ++i) {
            if (a[i] == 0) continue;
            for (size_t j = 0; j < d; ++j) {
                if (b[j] == 0) continue;
                r[i + j] += a[i] * b[j];
            }
        }
        qreduce(r, m);
        return r;
    };
    while (e > 0) {
        if (e & 1UL) acc = mul(acc, base);
        e >>= 1;
        if (e > 0) base = mul(base, base);
    }
    return acc;
}

mpz_class floor_mpq(const mpq_class& v) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
    return r;
}

// Real interval Horner evaluation of an integer polynomial.
RI eval_ri(const IntPoly& p, const RI& x) {
    RI acc = RI::from_si(0, x.prec());
    for (int i = p.degree(); i >= 0; --i)
        acc = acc * x + RI::from_mpz(p[static_cast<size_t>(i)], x.prec());
    return acc;
}

// Certified real enclosure of the theta root selected by the spec.
RI theta_enclosure(const FloorPowerSpec& spec, mpfr_prec_t ceiling) {
    const IntPoly m = spec.theta_minpoly->primitive_part();
    const CertifiedRoots cr = certified_roots(m, 192, ceiling);
    const RI one = RI::from_si(1, cr.prec);
    std::vector<size_t> cand;
    for (size_t i = 0; i < cr.clusters.size(); ++i) {
        const auto& c = cr.clusters[i];
        if (c.is_real != Tri::yes) continue;
        if (!c.real_part().definitely_gt(one)) continue;
        cand.push_back(i);
    }
    if (cand.empty())
        throw DomainError("theta polynomial has no certified real root above 1");
    size_t pick = cand[0];
    if (cand.size() > 1) {
        if (spec.theta_root_hint == 0.0)
            throw DomainError("several real roots above 1: a root hint is required");
        double best = 0.0;
        bool first = true;
        for (size_t i : cand) {
            const double dist =
                std::fabs(cr.clusters[i].real_part().mid_d() - spec.theta_root_hint);
            if (first || dist < best) { best = dist; pick = i; first = false; }
        }
    }
    return cr.clusters[pick].real_part();
}

// One interval Newton contraction of a simple-real-root enclosure at higher
// precision; keeps soundness by intersecting with the input.
RI newton_refine(const IntPoly& m, const RI& x, mpfr_prec_t p) {
    const RI xi = RI::from_endpoints(x.lo(), x.hi(), p);
    mpfr_t mid;
    mpfr_init2(mid, p);
    mpfr_add(mid, x.lo(), x.hi(), MPFR_RNDN);
    mpfr_div_ui(mid, mid, 2, MPFR_RNDN);
    const RI midi = RI::from_endpoints(mid, mid, p);
    mpfr_clear(mid);
    const RI den = eval_ri(m.derivative(), xi);
    if (den.contains_zero()) return xi;
    const RI nxt = midi - eval_ri(m, midi) / den;
    mpfr_t lo, hi;
    mpfr_init2(lo, p);
    mpfr_init2(hi, p);
    mpfr_max(lo, nxt.lo(), xi.lo(), MPFR_RNDD);
    mpfr_min(hi, nxt.hi(), xi.hi(), MPFR_RNDU);
    const bool empty = mpfr_greater_p(lo, hi) != 0;
    RI out = empty ? xi : RI::from_endpoints(lo, hi, p);
    mpfr_clear(lo);
    mpfr_clear(hi);
    return out;
}

// floor of lambda * theta^n from an enclosure; nullopt when undecided.
std::optional<mpz_class> try_floor(const mpq_class& lambda, const RI& theta,
                                   unsigned long n) {
    const mpfr_prec_t p = theta.prec();
    const RI v = RI::from_mpq(lambda, p) * pow_ui(theta, n);
    if (!mpfr_number_p(v.lo()) || !mpfr_number_p(v.hi())) return std::nullopt;
    mpz_class flo, fhi;
    mpfr_get_z(flo.get_mpz_t(), v.lo(), MPFR_RNDD);
    mpfr_get_z(fhi.get_mpz_t(), v.hi(), MPFR_RNDD);
    if (flo == fhi) return flo;
    return std::nullopt;
}

mpz_class floorpower_ball(const FloorPowerSpec& spec, unsigned long n,
                          mpfr_prec_t ceiling) {
    const IntPoly m = spec.theta_minpoly->primitive_part();
    RI th = theta_enclosure(spec, ceiling);
    // precision proportional to the digit size of the value, with headroom
    const double bits_per_step = std::log2(std::max(th.hi_d(), 1.0 + 1e-9));
    const mpfr_prec_t needed = static_cast<mpfr_prec_t>(
        n * bits_per_step + mpz_sizeinbase(spec.lambda.get_num().get_mpz_t(), 2) +
        mpz_sizeinbase(spec.lambda.get_den().get_mpz_t(), 2) + 128);
    const mpfr_prec_t guard = 4 * needed + 8192;
    for (mpfr_prec_t p = th.prec();;) {
        if (auto f = try_floor(spec.lambda, th, n)) return *f;
        if (p >= guard)
            throw UndecidedError("power value is numerically indistinguishable "
                                 "from an integer");
        p *= 2;
        th = newton_refine(m, th, p);
    }
}

} // namespace

mpz_class floorpower_term(const FloorPowerSpec& spec, unsigned long n,
                          mpfr_prec_t ceiling) {
    spec.validate();
    if (spec.theta_rational) {
        const mpq_class& th = *spec.theta_rational;
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), th.get_num().get_mpz_t(), n);
        mpz_pow_ui(den.get_mpz_t(), th.get_den().get_mpz_t(), n);
        return floor_mpq(spec.lambda * mpq_class(num) / mpq_class(den));
    }
    const IntPoly m = spec.theta_minpoly->primitive_part();
    const std::vector<mpq_class> pw = qpower_mod(m, n);
    bool rational = true;
    for (size_t j = 1; j < pw.size(); ++j)
        if (pw[j] != 0) { rational = false; break; }
    if (rational) return floor_mpq(spec.lambda * pw[0]);
    return floorpower_ball(spec, n, ceiling);
}

FloorPowerStream::FloorPowerStream(const FloorPowerSpec& spec, unsigned long start,
                                   mpfr_prec_t ceiling)
    : spec_(spec), ceiling_(ceiling), n_(start) {
    spec_.validate();
    if (spec_.theta_rational) {
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), spec_.theta_rational->get_num().get_mpz_t(), start);
        mpz_pow_ui(den.get_mpz_t(), spec_.theta_rational->get_den().get_mpz_t(), start);
        power_ = {mpq_class(num) / mpq_class(den)};
    } else {
        power_ = qpower_mod(spec_.theta_minpoly->primitive_part(), start);
    }
}

mpz_class FloorPowerStream::value() const {
    if (spec_.theta_rational) return floor_mpq(spec_.lambda * power_[0]);
    bool rational = true;
    for (size_t j = 1; j < power_.size(); ++j)
        if (power_[j] != 0) { rational = false; break; }
    if (rational) return floor_mpq(spec_.lambda * power_[0]);
    return floorpower_ball(spec_, n_, ceiling_);
}

void FloorPowerStream::advance() {
    ++n_;
    if (spec_.theta_rational) {
        power_[0] *= *spec_.theta_rational;
    } else {
        qshift_reduce(power_, spec_.theta_minpoly->primitive_part());
    }
}

} // namespace spart
