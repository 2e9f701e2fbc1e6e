#include "spart/sparts.hpp"

#include "spart/errors.hpp"

#include <algorithm>
#include <sstream>

namespace spart {

namespace {

// Below this bound the fixed witness set {2, 3, ..., 37} decides primality.
const mpz_class kDeterministicBound("3317044064679887385961981");
const long kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool witness_says_composite(const mpz_class& n, const mpz_class& a,
                            const mpz_class& d, unsigned long r) {
    mpz_class x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return false;
    for (unsigned long i = 1; i < r; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return false;
    }
    return true;
}

} // namespace

bool is_probable_prime(const mpz_class& n, int extra_rounds) {
    if (n < 2) return false;
    for (long w : kWitnesses) {
        if (n == w) return true;
        if (n % w == 0) return false;
    }
    mpz_class d = n - 1;
    unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);
    for (long w : kWitnesses)
        if (witness_says_composite(n, w, d, r)) return false;
    if (n < kDeterministicBound) return true;
    return mpz_probab_prime_p(n.get_mpz_t(), std::max(extra_rounds, 25)) != 0;
}

PrimeSet::PrimeSet(std::vector<mpz_class> primes) : primes_(std::move(primes)) {
    std::sort(primes_.begin(), primes_.end());
    for (size_t i = 0; i < primes_.size(); ++i) {
        if (i > 0 && primes_[i] == primes_[i - 1])
            throw DomainError("PrimeSet: duplicate prime " + primes_[i].get_str());
        if (!is_probable_prime(primes_[i]))
            throw DomainError("PrimeSet: " + primes_[i].get_str() + " is not prime");
    }
}

bool PrimeSet::contains(const mpz_class& p) const {
    return std::binary_search(primes_.begin(), primes_.end(), p);
}

std::string PrimeSet::str() const {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < primes_.size(); ++i) {
        if (i) os << ", ";
        os << primes_[i];
    }
    os << "}";
    return os.str();
}

SPartDecomposition s_part_decompose(const mpz_class& m, const PrimeSet& S) {
    if (m == 0) throw DomainError("s_part: S-part of zero is undefined");
    SPartDecomposition d;
    d.s_part = 1;
    mpz_class rest = m;
    for (const mpz_class& q : S.primes()) {
        mpz_class reduced;
        unsigned long e =
            mpz_remove(reduced.get_mpz_t(), rest.get_mpz_t(), q.get_mpz_t());
        if (e > 0) {
            mpz_class qe;
            mpz_pow_ui(qe.get_mpz_t(), q.get_mpz_t(), e);
            d.s_part *= qe;
            rest = reduced;
        }
        d.exponents.emplace_back(q, e);
    }
    d.cofactor = rest;
    return d;
}

mpz_class s_part(const mpz_class& m, const PrimeSet& S) {
    return s_part_decompose(m, S).s_part;
}

namespace {

// Brent-variant Pollard rho with batched gcds.  Deterministic: the constant c
// advances with each retry.  Returns a nontrivial factor, or 0 when the
// squaring budget is exhausted.  n must be odd, composite, > 1.
mpz_class pollard_brent(const mpz_class& n, unsigned long& budget) {
    for (unsigned long c = 1; budget > 0; ++c) {
        mpz_class y = 2, g = 1, q = 1, x, ys;
        unsigned long r = 1;
        const unsigned long batch = 128;
        bool stale = false; // walker met its own cycle: this c is spent
        while (g == 1 && budget > 0 && !stale) {
            x = y;
            for (unsigned long i = 0; i < r && budget > 0; ++i) {
                y = (y * y + c) % n;
                --budget;
            }
            unsigned long k = 0;
            while (k < r && g == 1 && budget > 0 && !stale) {
                ys = y;
                unsigned long lim = std::min(batch, r - k);
                for (unsigned long i = 0; i < lim && budget > 0; ++i) {
                    y = (y * y + c) % n;
                    --budget;
                    mpz_class diff = x - y;
                    if (diff == 0) {
                        stale = true;
                        break;
                    }
                    q = (q * abs(diff)) % n;
                    if (q == 0) {
                        g = n; // a factor hides in this batch: backtrack finds it
                        break;
                    }
                }
                if (g == 1 && !stale)
                    mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += lim;
            }
            r *= 2;
        }
        if (g == n && !stale) {
            // batched gcd overshot: re-walk the last batch one step at a time
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                mpz_class diff = abs(x - ys);
                if (diff == 0) {
                    stale = true;
                    break;
                }
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (!stale && g != n && g != 1) return g;
        // otherwise retry with the next c
    }
    return 0;
}

} // namespace

Factorization factorize(const mpz_class& m, const FactorOptions& opt) {
    if (m == 0) throw DomainError("factorize: zero has no factorization");
    Factorization out;
    mpz_class rest = abs(m);
    if (rest == 1) return out;

    std::vector<std::pair<mpz_class, unsigned long>> found;
    auto strip = [&](unsigned long p) {
        mpz_class reduced;
        unsigned long e =
            mpz_remove(reduced.get_mpz_t(), rest.get_mpz_t(), mpz_class(p).get_mpz_t());
        if (e) {
            found.emplace_back(p, e);
            rest = reduced;
        }
    };
    strip(2);
    strip(3);
    bool below_square = false; // exited because p^2 outgrew the remainder
    for (unsigned long p = 5; p <= opt.trial_limit && rest > 1; p += 6) {
        // p and p+2 cover all primes > 3
        if (mpz_class(p) * p > rest) {
            below_square = true;
            break;
        }
        strip(p);
        strip(p + 2);
    }
    if (rest > 1 &&
        (below_square || mpz_class(opt.trial_limit) * opt.trial_limit >= rest)) {
        // no factor up to sqrt(rest): the remainder is prime
        found.emplace_back(rest, 1);
        rest = 1;
    }

    unsigned long budget = opt.rho_budget;
    std::vector<mpz_class> pending;
    if (rest > 1) pending.push_back(rest);
    mpz_class unfactored = 1;
    while (!pending.empty()) {
        mpz_class n = pending.back();
        pending.pop_back();
        if (is_probable_prime(n, opt.mr_rounds)) {
            // collect exponent by merging later
            found.emplace_back(n, 1);
            continue;
        }
        // perfect power of a prime escapes rho's reach cheaply
        if (mpz_perfect_power_p(n.get_mpz_t())) {
            for (unsigned long k = 2; k <= mpz_sizeinbase(n.get_mpz_t(), 2); ++k) {
                mpz_class root;
                if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
                    for (unsigned long i = 0; i < k; ++i) pending.push_back(root);
                    break;
                }
            }
            continue;
        }
        mpz_class f = pollard_brent(n, budget);
        if (f == 0) {
            unfactored *= n;
            continue;
        }
        pending.push_back(f);
        pending.push_back(n / f);
    }

    std::sort(found.begin(), found.end());
    for (auto& [p, e] : found) {
        if (!out.factors.empty() && out.factors.back().first == p)
            out.factors.back().second += e;
        else
            out.factors.emplace_back(p, e);
    }
    out.unfactored = unfactored;
    return out;
}

GpfResult greatest_prime_factor(const mpz_class& m, const FactorOptions& opt) {
    mpz_class a = abs(m);
    if (a <= 1) return {mpz_class(1), true};
    Factorization f = factorize(a, opt);
    GpfResult r;
    r.complete = f.complete();
    r.value = 1;
    for (const auto& [p, e] : f.factors)
        if (p > r.value) r.value = p;
    if (!r.complete) {
        // every prime factor of the leftover exceeds the trial limit
        mpz_class floor_bound(opt.trial_limit);
        if (r.value < floor_bound) r.value = floor_bound;
    }
    return r;
}

} // namespace spart
