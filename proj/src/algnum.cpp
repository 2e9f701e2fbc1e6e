#include "spart/algnum.hpp"

#include "spart/errors.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace spart {

CRect RootCluster::box() const {
    return {hull(center.re - radius, center.re + radius),
            hull(center.im - radius, center.im + radius)};
}

RI RootCluster::modulus() const {
    RI m = center.mod();
    RI lo = m - radius;
    RI hi = m + radius;
    // clamp below at 0
    RI r = hull(lo, hi);
    return max(r, RI::from_ui(0, r.prec()));
}

RI RootCluster::real_part() const {
    return hull(center.re - radius, center.re + radius);
}

CRect eval_ball(const IntPoly& p, const CRect& z) {
    mpfr_prec_t prec = z.prec();
    CRect acc(prec);
    for (int i = p.degree(); i >= 0; --i) {
        acc = acc * z;
        acc.re = acc.re + RI::from_mpz(p[static_cast<size_t>(i)], prec);
    }
    return acc;
}

RI log_plus(const RI& x) {
    RI r(x.prec());
    mpfr_t one;
    mpfr_init2(one, 8);
    mpfr_set_ui(one, 1, MPFR_RNDN);
    mpfr_t lo, hi;
    mpfr_init2(lo, x.prec());
    mpfr_init2(hi, x.prec());
    if (mpfr_cmp(x.lo(), one) <= 0)
        mpfr_set_zero(lo, 1);
    else
        mpfr_log(lo, x.lo(), MPFR_RNDD);
    if (mpfr_cmp(x.hi(), one) <= 0)
        mpfr_set_zero(hi, 1);
    else
        mpfr_log(hi, x.hi(), MPFR_RNDU);
    RI out = RI::from_endpoints(lo, hi, x.prec());
    mpfr_clears(one, lo, hi, nullptr);
    return out;
}

RI rational_height(const mpq_class& q, mpfr_prec_t prec) {
    mpz_class num = abs(q.get_num());
    mpz_class den = q.get_den();
    mpz_class m = num > den ? num : den;
    if (m == 0) return RI::from_ui(0, prec); // h(0) = 0 by convention
    if (m == 1) return RI::from_ui(0, prec);
    return RI::log_of(m, prec);
}

// ---------------------------------------------------------------------------
// Point complex arithmetic on MPFR (round-to-nearest), for the Aberth solver.

namespace {

struct PC {
    mpfr_t re, im;

    explicit PC(mpfr_prec_t p) {
        mpfr_init2(re, p);
        mpfr_init2(im, p);
        mpfr_set_zero(re, 1);
        mpfr_set_zero(im, 1);
    }
    PC(const PC& o) {
        mpfr_init2(re, mpfr_get_prec(o.re));
        mpfr_init2(im, mpfr_get_prec(o.im));
        mpfr_set(re, o.re, MPFR_RNDN);
        mpfr_set(im, o.im, MPFR_RNDN);
    }
    PC(PC&& o) noexcept {
        mpfr_init2(re, mpfr_get_prec(o.re));
        mpfr_init2(im, mpfr_get_prec(o.im));
        mpfr_swap(re, o.re);
        mpfr_swap(im, o.im);
    }
    PC& operator=(const PC& o) {
        if (this != &o) {
            mpfr_set_prec(re, mpfr_get_prec(o.re));
            mpfr_set_prec(im, mpfr_get_prec(o.im));
            mpfr_set(re, o.re, MPFR_RNDN);
            mpfr_set(im, o.im, MPFR_RNDN);
        }
        return *this;
    }
    PC& operator=(PC&& o) noexcept {
        mpfr_swap(re, o.re);
        mpfr_swap(im, o.im);
        return *this;
    }
    ~PC() {
        mpfr_clear(re);
        mpfr_clear(im);
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(re); }
    bool finite() const { return mpfr_number_p(re) && mpfr_number_p(im); }
};

PC pc_sub(const PC& a, const PC& b) {
    PC r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.re, a.re, b.re, MPFR_RNDN);
    mpfr_sub(r.im, a.im, b.im, MPFR_RNDN);
    return r;
}

PC pc_mul(const PC& a, const PC& b) {
    PC r(std::max(a.prec(), b.prec()));
    mpfr_t t1, t2;
    mpfr_init2(t1, r.prec());
    mpfr_init2(t2, r.prec());
    mpfr_mul(t1, a.re, b.re, MPFR_RNDN);
    mpfr_mul(t2, a.im, b.im, MPFR_RNDN);
    mpfr_sub(r.re, t1, t2, MPFR_RNDN);
    mpfr_mul(t1, a.re, b.im, MPFR_RNDN);
    mpfr_mul(t2, a.im, b.re, MPFR_RNDN);
    mpfr_add(r.im, t1, t2, MPFR_RNDN);
    mpfr_clears(t1, t2, nullptr);
    return r;
}

PC pc_div(const PC& a, const PC& b) {
    PC r(std::max(a.prec(), b.prec()));
    mpfr_t d, t1, t2;
    mpfr_init2(d, r.prec());
    mpfr_init2(t1, r.prec());
    mpfr_init2(t2, r.prec());
    mpfr_mul(t1, b.re, b.re, MPFR_RNDN);
    mpfr_mul(t2, b.im, b.im, MPFR_RNDN);
    mpfr_add(d, t1, t2, MPFR_RNDN);
    mpfr_mul(t1, a.re, b.re, MPFR_RNDN);
    mpfr_mul(t2, a.im, b.im, MPFR_RNDN);
    mpfr_add(t1, t1, t2, MPFR_RNDN);
    mpfr_div(r.re, t1, d, MPFR_RNDN);
    mpfr_mul(t1, a.im, b.re, MPFR_RNDN);
    mpfr_mul(t2, a.re, b.im, MPFR_RNDN);
    mpfr_sub(t1, t1, t2, MPFR_RNDN);
    mpfr_div(r.im, t1, d, MPFR_RNDN);
    mpfr_clears(d, t1, t2, nullptr);
    return r;
}

void pc_abs(mpfr_t out, const PC& a) { mpfr_hypot(out, a.re, a.im, MPFR_RNDN); }

PC pc_eval(const IntPoly& p, const PC& z) {
    PC acc(z.prec());
    mpfr_t t1, t2;
    mpfr_init2(t1, z.prec());
    mpfr_init2(t2, z.prec());
    for (int i = p.degree(); i >= 0; --i) {
        // acc = acc*z + c_i
        mpfr_mul(t1, acc.re, z.re, MPFR_RNDN);
        mpfr_mul(t2, acc.im, z.im, MPFR_RNDN);
        mpfr_sub(t1, t1, t2, MPFR_RNDN);
        mpfr_mul(t2, acc.re, z.im, MPFR_RNDN);
        mpfr_fma(acc.im, acc.im, z.re, t2, MPFR_RNDN);
        mpfr_set(acc.re, t1, MPFR_RNDN);
        mpfr_add_z(acc.re, acc.re, p[static_cast<size_t>(i)].get_mpz_t(), MPFR_RNDN);
    }
    mpfr_clears(t1, t2, nullptr);
    return acc;
}

// Simultaneous root refinement (Aberth-Ehrlich, sequential updates).  Point
// arithmetic only; certification happens separately, so convergence here is
// best-effort.  Returns false if iteration failed to settle.
bool aberth(const IntPoly& h, mpfr_prec_t prec, std::vector<PC>& z) {
    int d = h.degree();
    IntPoly hd = h.derivative();

    if (static_cast<int>(z.size()) != d) {
        z.clear();
        // initial ring at the Cauchy-style radius 1 + max |c_i / c_d|
        mpfr_t R, t;
        mpfr_init2(R, 64);
        mpfr_init2(t, 64);
        mpfr_set_ui(R, 0, MPFR_RNDN);
        for (int i = 0; i < d; ++i) {
            mpfr_set_z(t, h[static_cast<size_t>(i)].get_mpz_t(), MPFR_RNDN);
            mpfr_div_z(t, t, h.leading().get_mpz_t(), MPFR_RNDN);
            mpfr_abs(t, t, MPFR_RNDN);
            mpfr_max(R, R, t, MPFR_RNDN);
        }
        mpfr_add_ui(R, R, 1, MPFR_RNDN);
        for (int i = 0; i < d; ++i) {
            PC p(prec);
            mpfr_t ang;
            mpfr_init2(ang, prec);
            // angle 2*pi*i/d + 0.4 (offset avoids real-axis symmetry traps)
            mpfr_const_pi(ang, MPFR_RNDN);
            mpfr_mul_ui(ang, ang, 2 * static_cast<unsigned long>(i), MPFR_RNDN);
            mpfr_div_ui(ang, ang, static_cast<unsigned long>(d), MPFR_RNDN);
            mpfr_add_d(ang, ang, 0.4, MPFR_RNDN);
            mpfr_cos(p.re, ang, MPFR_RNDN);
            mpfr_sin(p.im, ang, MPFR_RNDN);
            mpfr_mul(p.re, p.re, R, MPFR_RNDN);
            mpfr_mul(p.im, p.im, R, MPFR_RNDN);
            mpfr_clear(ang);
            z.push_back(std::move(p));
        }
        mpfr_clears(R, t, nullptr);
    } else {
        for (auto& p : z) {
            PC q(prec);
            mpfr_set(q.re, p.re, MPFR_RNDN);
            mpfr_set(q.im, p.im, MPFR_RNDN);
            p = std::move(q);
        }
    }

    mpfr_t wabs, zabs, tol;
    mpfr_init2(wabs, prec);
    mpfr_init2(zabs, prec);
    mpfr_init2(tol, prec);

    const int max_iter = 400;
    bool settled = false;
    for (int iter = 0; iter < max_iter && !settled; ++iter) {
        settled = true;
        for (int i = 0; i < d; ++i) {
            PC hv = pc_eval(h, z[static_cast<size_t>(i)]);
            PC hdv = pc_eval(hd, z[static_cast<size_t>(i)]);
            PC N = pc_div(hv, hdv);
            PC S(prec);
            PC one(prec);
            mpfr_set_ui(one.re, 1, MPFR_RNDN);
            for (int j = 0; j < d; ++j) {
                if (j == i) continue;
                PC diff = pc_sub(z[static_cast<size_t>(i)], z[static_cast<size_t>(j)]);
                PC inv = pc_div(one, diff);
                mpfr_add(S.re, S.re, inv.re, MPFR_RNDN);
                mpfr_add(S.im, S.im, inv.im, MPFR_RNDN);
            }
            PC denom = pc_sub(one, pc_mul(N, S));
            PC w = pc_div(N, denom);
            if (!w.finite()) {
                // derivative vanished or points collided: nudge and go on
                mpfr_add_d(z[static_cast<size_t>(i)].re, z[static_cast<size_t>(i)].re,
                           1e-3 * (i + 1), MPFR_RNDN);
                mpfr_add_d(z[static_cast<size_t>(i)].im, z[static_cast<size_t>(i)].im,
                           2e-3, MPFR_RNDN);
                settled = false;
                continue;
            }
            mpfr_sub(z[static_cast<size_t>(i)].re, z[static_cast<size_t>(i)].re, w.re,
                     MPFR_RNDN);
            mpfr_sub(z[static_cast<size_t>(i)].im, z[static_cast<size_t>(i)].im, w.im,
                     MPFR_RNDN);
            pc_abs(wabs, w);
            pc_abs(zabs, z[static_cast<size_t>(i)]);
            mpfr_add_ui(zabs, zabs, 1, MPFR_RNDN);
            mpfr_mul_2si(tol, zabs, -static_cast<long>(3 * prec / 4), MPFR_RNDN);
            if (mpfr_cmp(wabs, tol) > 0) settled = false;
        }
    }
    mpfr_clears(wabs, zabs, tol, nullptr);
    return settled;
}

// Inclusion disk around the point z: the nearest root of h lies within
// deg(h) * |h(z) / h'(z)|, provided |h'(z)| is certifiedly nonzero.
std::optional<std::pair<CRect, RI>> certify_disk(const IntPoly& h, const IntPoly& hd,
                                                 const PC& z, mpfr_prec_t prec) {
    CRect zr(RI::from_endpoints(z.re, z.re, prec), RI::from_endpoints(z.im, z.im, prec));
    RI h_mod = eval_ball(h, zr).mod();
    RI hd_mod = eval_ball(hd, zr).mod();
    if (!hd_mod.is_positive()) return std::nullopt;
    RI r = RI::from_ui(static_cast<unsigned long>(h.degree()), prec) * h_mod / hd_mod;
    RI rad = RI::from_endpoints(r.hi(), r.hi(), prec);
    return std::make_pair(zr, rad);
}

bool disks_disjoint(const RootCluster& a, const RootCluster& b) {
    RI dist = (a.center - b.center).mod();
    return dist.definitely_gt(a.radius + b.radius);
}

} // namespace

int real_root_count(const IntPoly& h) {
    if (h.is_zero()) throw DomainError("real_root_count: zero polynomial");
    if (h.degree() == 0) return 0;
    using RatPoly = std::vector<mpq_class>;
    auto degree = [](const RatPoly& p) { return static_cast<int>(p.size()) - 1; };
    auto trim = [](RatPoly& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    };
    auto rem = [&](RatPoly a, const RatPoly& b) {
        while (a.size() >= b.size()) {
            mpq_class q = a.back() / b.back();
            size_t shift = a.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= q * b[j];
            trim(a);
            if (a.empty()) break;
        }
        return a;
    };

    RatPoly p0(h.coeffs().begin(), h.coeffs().end());
    RatPoly p1;
    {
        IntPoly hd = h.derivative();
        p1.assign(hd.coeffs().begin(), hd.coeffs().end());
    }
    std::vector<RatPoly> chain{p0, p1};
    while (degree(chain.back()) > 0) {
        RatPoly r = rem(chain[chain.size() - 2], chain.back());
        if (r.empty()) {
            throw DomainError("real_root_count: input not squarefree");
        }
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }

    auto variations = [&](bool at_minus_inf) {
        int count = 0, prev = 0;
        for (const auto& p : chain) {
            int s = sgn(p.back());
            if (at_minus_inf && (degree(p) % 2 == 1)) s = -s;
            if (s != 0 && prev != 0 && s != prev) ++count;
            if (s != 0) prev = s;
        }
        return count;
    };
    return variations(true) - variations(false);
}

CertifiedRoots certified_roots(const IntPoly& g, mpfr_prec_t start, mpfr_prec_t ceiling) {
    if (g.is_zero() || g.degree() < 1)
        throw DomainError("certified_roots: need degree >= 1");
    if (g[0] == 0)
        throw DomainError("certified_roots: zero root present; strip zero roots first");

    CertifiedRoots out;
    out.factors = squarefree_decomposition(g);

    std::vector<int> nreal(out.factors.size(), 0);
    for (size_t fi = 0; fi < out.factors.size(); ++fi)
        if (out.factors[fi].poly.degree() > 1)
            nreal[fi] = real_root_count(out.factors[fi].poly);

    std::vector<std::vector<PC>> warm(out.factors.size());

    for (mpfr_prec_t prec = start;; prec *= 2) {
        bool last_chance = prec * 2 > ceiling;
        std::vector<RootCluster> clusters;
        bool certified = true;
        bool realness_open = false;

        for (size_t fi = 0; fi < out.factors.size() && certified; ++fi) {
            const IntPoly& f = out.factors[fi].poly;
            unsigned mult = out.factors[fi].mult;
            if (f.degree() == 1) {
                mpq_class root(-f[0], f[1]);
                root.canonicalize();
                RootCluster c;
                c.center = CRect(RI::from_mpq(root, prec), RI::from_ui(0, prec));
                c.radius = RI::from_ui(0, prec);
                c.multiplicity = mult;
                c.is_real = Tri::yes;
                c.factor = fi;
                clusters.push_back(std::move(c));
                continue;
            }

            if (!aberth(f, prec, warm[fi])) {
                // stuck iteration: drop the warm start so the next precision
                // reseeds from scratch
                warm[fi].clear();
                certified = false;
                break;
            }

            IntPoly fd = f.derivative();
            size_t base = clusters.size();
            for (const PC& zp : warm[fi]) {
                auto disk = certify_disk(f, fd, zp, prec);
                if (!disk) {
                    certified = false;
                    break;
                }
                RootCluster c;
                c.center = std::move(disk->first);
                c.radius = std::move(disk->second);
                c.multiplicity = mult;
                c.is_real = Tri::undecided;
                c.factor = fi;
                clusters.push_back(std::move(c));
            }
            if (!certified) break;

            // realness by count matching: disks touching the real axis vs the
            // exact number of real roots of this factor
            int touching = 0;
            for (size_t i = base; i < clusters.size(); ++i) {
                if (!abs(clusters[i].center.im).definitely_gt(clusters[i].radius))
                    ++touching;
                else
                    clusters[i].is_real = Tri::no;
            }
            if (touching == nreal[fi]) {
                for (size_t i = base; i < clusters.size(); ++i)
                    if (clusters[i].is_real == Tri::undecided)
                        clusters[i].is_real = Tri::yes;
            } else {
                realness_open = true;
            }
        }

        if (certified) {
            bool disjoint = true;
            for (size_t i = 0; i < clusters.size() && disjoint; ++i)
                for (size_t j = i + 1; j < clusters.size() && disjoint; ++j)
                    if (!disks_disjoint(clusters[i], clusters[j])) disjoint = false;

            if (disjoint && (!realness_open || last_chance)) {
                out.clusters = std::move(clusters);
                out.prec = prec;
                return out;
            }
            certified = disjoint;
        }

        if (last_chance && !certified)
            throw UndecidedError("certified_roots: could not separate roots of " +
                                 g.str() + " at precision ceiling");
    }
}

MaxModulus max_modulus(const std::vector<RootCluster>& clusters) {
    if (clusters.empty()) throw DomainError("max_modulus: no clusters");
    MaxModulus mm{clusters[0].modulus(), {}};
    for (size_t i = 1; i < clusters.size(); ++i) mm.value = max(mm.value, clusters[i].modulus());
    for (size_t i = 0; i < clusters.size(); ++i) {
        RI m = clusters[i].modulus();
        if (mpfr_cmp(m.hi(), mm.value.lo()) >= 0) mm.attaining.push_back(i);
    }
    return mm;
}

RI log_mahler(const IntPoly& g, const std::vector<RootCluster>& clusters) {
    if (g.is_zero()) throw DomainError("log_mahler: zero polynomial");
    mpfr_prec_t prec = clusters.empty() ? 64 : clusters[0].center.prec();
    mpz_class lead = abs(g.leading());
    RI acc = RI::log_of(lead, prec);
    for (const auto& c : clusters) {
        RI lp = log_plus(c.modulus());
        acc = acc + RI::from_ui(c.multiplicity, prec) * lp;
    }
    return acc;
}

} // namespace spart
