// Integer factorization: trial division, perfect-power detection, Brent's
// variant of Pollard rho, then elliptic-curve stages on Montgomery curves.
// Every randomized choice is drawn from a generator seeded by
// FactorOptions::seed, so results and effort are reproducible.

#include "ntlab/arith.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace ntlab {

namespace {

constexpr std::uint32_t kTrialLimit = 1U << 14;
constexpr std::uint32_t kStageTwoLimit = 25'000'000;

class Budget {
public:
    explicit Budget(std::uint64_t limit) : left_(limit) {}

    bool spend(std::uint64_t ops) {
        if (ops > left_) {
            left_ = 0;
            return false;
        }
        left_ -= ops;
        return true;
    }
    bool exhausted() const { return left_ == 0; }

private:
    std::uint64_t left_;
};

struct Modulus {
    const Natural& n;
    Budget& budget;
    std::uint64_t ops = 0;

    void mul(Natural& r, const Natural& a, const Natural& b) {
        mpz_mul(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
        ++ops;
    }
    void sub(Natural& r, const Natural& a, const Natural& b) {
        mpz_sub(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        if (r < 0) r += n;
    }
    void add(Natural& r, const Natural& a, const Natural& b) {
        mpz_add(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        if (r >= n) r -= n;
    }
    // Flushes accumulated work into the budget; false once it runs dry.
    bool settle() {
        bool ok = budget.spend(ops);
        ops = 0;
        return ok;
    }
};

// Brent's cycle finding with batched gcds. Returns a nontrivial factor or 0.
Natural brent_rho(const Natural& n, std::mt19937_64& rng, Budget& budget,
                  std::uint64_t max_iterations) {
    Modulus mod{n, budget};
    gmp_randclass gen(gmp_randinit_mt);
    gen.seed(static_cast<unsigned long>(rng()));
    const Natural c = gen.get_z_range(n - 3) + 1;
    Natural y = gen.get_z_range(n);
    Natural x, ys, q = 1, g = 1, tmp;
    constexpr std::uint64_t m = 128;
    std::uint64_t r = 1, iterations = 0;

    auto step = [&](Natural& v) {
        mod.mul(v, v, v);
        mod.add(v, v, c);
    };

    while (g == 1) {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) step(y);
        std::uint64_t k = 0;
        while (k < r && g == 1) {
            ys = y;
            const std::uint64_t lim = std::min(m, r - k);
            for (std::uint64_t i = 0; i < lim; ++i) {
                step(y);
                mod.sub(tmp, x, y);
                mod.mul(q, q, tmp);
            }
            g = gcd(q, n);
            k += lim;
            iterations += lim;
            if (!mod.settle()) return 0;
        }
        r *= 2;
        if (iterations > max_iterations) return 0;
    }
    if (g == n) {
        // Batch overshot; replay one step at a time from the saved point.
        do {
            step(ys);
            mod.sub(tmp, x, ys);
            g = gcd(tmp, n);
        } while (g == 1);
        mod.settle();
    }
    return (g == n) ? Natural(0) : g;
}

// Montgomery curve arithmetic in projective (X : Z) coordinates.
struct Point {
    Natural x, z;
};

class Curve {
public:
    Curve(Modulus& mod, Natural a24) : mod_(mod), a24_(std::move(a24)) {}

    void dbl(Point& r, const Point& p) {
        mod_.add(s_, p.x, p.z);
        mod_.mul(s_, s_, s_);
        mod_.sub(d_, p.x, p.z);
        mod_.mul(d_, d_, d_);
        mod_.sub(t_, s_, d_);  // 4XZ
        mod_.mul(r.x, s_, d_);
        mod_.mul(u_, a24_, t_);
        mod_.add(u_, u_, d_);
        mod_.mul(r.z, t_, u_);
    }

    // r = p + q given diff = p - q.
    void add(Point& r, const Point& p, const Point& q, const Point& diff) {
        mod_.sub(s_, p.x, p.z);
        mod_.add(t_, q.x, q.z);
        mod_.mul(u_, s_, t_);
        mod_.add(s_, p.x, p.z);
        mod_.sub(t_, q.x, q.z);
        mod_.mul(v_, s_, t_);
        mod_.add(s_, u_, v_);
        mod_.mul(s_, s_, s_);
        mod_.sub(t_, u_, v_);
        mod_.mul(t_, t_, t_);
        Natural nx, nz;
        mod_.mul(nx, diff.z, s_);
        mod_.mul(nz, diff.x, t_);
        r.x = std::move(nx);
        r.z = std::move(nz);
    }

    void multiply(Point& r, const Point& p, const Natural& k) {
        if (k == 1) {
            r = p;
            return;
        }
        Point r0 = p, r1;
        dbl(r1, p);
        for (long bit = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2)) - 2; bit >= 0; --bit) {
            if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) {
                add(r0, r1, r0, p);
                dbl(r1, r1);
            } else {
                add(r1, r1, r0, p);
                dbl(r0, r0);
            }
        }
        r = std::move(r0);
    }

private:
    Modulus& mod_;
    Natural a24_;
    Natural s_, d_, t_, u_, v_;
};

struct EcmStage {
    std::uint64_t b1;
    unsigned curves;
};

// One curve with Suyama's parametrisation. Returns a factor, 0 on failure.
Natural ecm_curve(const Natural& n, std::uint64_t sigma, std::uint64_t b1,
                  const std::vector<std::uint32_t>& primes, Budget& budget) {
    Modulus mod{n, budget};
    const Natural s = from_u64(sigma);
    Natural u = s * s - 5;
    Natural v = 4 * s;
    u %= n;
    v %= n;
    Point p{u * u * u % n, v * v * v % n};
    Natural vmu = v - u;
    Natural num = vmu * vmu % n * vmu % n * ((3 * u + v) % n) % n;
    Natural den = 16 * p.x % n * v % n;
    Natural inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), n.get_mpz_t()) == 0) {
        Natural g = gcd(den, n);
        return (g > 1 && g < n) ? g : Natural(0);
    }
    Curve curve(mod, num * inv % n);

    // Stage 1: multiply by every prime power up to b1.
    for (std::uint32_t pr : primes) {
        if (pr > b1) break;
        std::uint64_t q = pr;
        while (q <= b1 / pr) q *= pr;
        curve.multiply(p, p, from_u64(q));
        if (!mod.settle()) return 0;
    }
    Natural g = gcd(p.z, n);
    if (g == n) return 0;
    if (g > 1) return g;

    // Stage 2: baby-step giant-step over primes in (b1, 100*b1].
    constexpr std::uint64_t D = 2310;
    const std::uint64_t b2 = std::min<std::uint64_t>(100 * b1, kStageTwoLimit);
    std::vector<Point> baby(D / 2 + 1);
    Point twice;
    curve.dbl(twice, p);
    baby[1] = p;
    Point three;
    curve.add(three, twice, p, p);
    baby[3] = three;
    for (std::uint64_t j = 5; j <= D / 2; j += 2) curve.add(baby[j], baby[j - 2], twice, baby[j - 4]);

    Point giant_step, giant, giant_prev;
    curve.multiply(giant_step, p, from_u64(D));
    std::uint64_t m = b1 / D;
    if (m == 0) m = 1;
    curve.multiply(giant, giant_step, from_u64(m));
    curve.multiply(giant_prev, giant_step, from_u64(m - 1 == 0 ? 1 : m - 1));
    bool prev_is_zero_multiple = (m == 1);
    if (!mod.settle()) return 0;

    Natural acc = 1, t1, t2;
    auto it = std::upper_bound(primes.begin(), primes.end(), static_cast<std::uint32_t>(b1));
    for (; m * D <= b2 + D; ++m) {
        const std::uint64_t lo = m * D > D / 2 ? m * D - D / 2 : 0;
        const std::uint64_t hi = m * D + D / 2;
        while (it != primes.end() && *it <= hi && *it <= b2) {
            if (*it >= lo) {
                const std::uint64_t j = (*it > m * D) ? *it - m * D : m * D - *it;
                if (j >= 1 && j <= D / 2 && j % 2 == 1) {
                    mod.mul(t1, giant.x, baby[j].z);
                    mod.mul(t2, baby[j].x, giant.z);
                    mod.sub(t1, t1, t2);
                    mod.mul(acc, acc, t1);
                }
            }
            ++it;
        }
        if (it == primes.end() || *it > b2) break;
        Point next;
        if (prev_is_zero_multiple) {
            curve.dbl(next, giant);
            prev_is_zero_multiple = false;
        } else {
            curve.add(next, giant, giant_step, giant_prev);
        }
        giant_prev = std::move(giant);
        giant = std::move(next);
        if (!mod.settle()) return 0;
    }
    mod.settle();
    g = gcd(acc, n);
    return (g > 1 && g < n) ? g : Natural(0);
}

const std::vector<std::uint32_t>& stage_primes() {
    static const std::vector<std::uint32_t> primes = primes_up_to(kStageTwoLimit);
    return primes;
}

class Factorizer {
public:
    Factorizer(const FactorOptions& opts) : budget_(opts.budget), rng_(opts.seed) {}

    Factorization run(const Natural& n) {
        Natural rest = n;
        for (std::uint32_t p : small_primes()) {
            if (static_cast<Natural>(p) * p > rest) break;
            while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
                mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
                found_[from_u64(p)] += 1;
            }
        }
        if (rest > 1) split(rest, 1);

        Factorization f;
        for (auto& [prime, exp] : found_) {
            f.factors.push_back({prime, exp, is_prime(prime).certainty});
        }
        std::sort(stuck_.begin(), stuck_.end());
        f.unfactored = std::move(stuck_);
        return f;
    }

private:
    static const std::vector<std::uint32_t>& small_primes() {
        static const std::vector<std::uint32_t> primes = primes_up_to(kTrialLimit);
        return primes;
    }

    void split(const Natural& c, unsigned multiplicity) {
        if (c == 1) return;
        if (is_prime(c).prime) {
            found_[c] += multiplicity;
            return;
        }
        for (unsigned long k = mpz_sizeinbase(c.get_mpz_t(), 2); k >= 2; --k) {
            RootResult r = integer_nth_root(c, k);
            if (r.exact) {
                split(r.root, multiplicity * static_cast<unsigned>(k));
                return;
            }
        }
        Natural d = find_factor(c);
        if (d == 0) {
            for (unsigned i = 0; i < multiplicity; ++i) stuck_.push_back(c);
            return;
        }
        Natural other = c / d;
        // Factors sharing primes are fine: split() merges through found_.
        split(d, multiplicity);
        split(other, multiplicity);
    }

    Natural find_factor(const Natural& c) {
        for (int attempt = 0; attempt < 3 && !budget_.exhausted(); ++attempt) {
            Natural d = brent_rho(c, rng_, budget_, 1U << 16);
            if (d != 0) return d;
        }
        static constexpr EcmStage stages[] = {
            {2'000, 25},    {11'000, 90},   {50'000, 300},
            {250'000, 700}, {1'000'000, 1800},
        };
        const auto& primes = stage_primes();
        for (const auto& stage : stages) {
            for (unsigned i = 0; i < stage.curves; ++i) {
                if (budget_.exhausted()) return 0;
                const std::uint64_t sigma = 6 + rng_() % 0xFFFFFFF0ULL;
                Natural d = ecm_curve(c, sigma, stage.b1, primes, budget_);
                if (d != 0) return d;
            }
        }
        while (!budget_.exhausted()) {
            Natural d = brent_rho(c, rng_, budget_, ~0ULL);
            if (d != 0) return d;
        }
        return 0;
    }

    Budget budget_;
    std::mt19937_64 rng_;
    std::map<Natural, unsigned> found_;
    std::vector<Natural> stuck_;
};

}  // namespace

Factorization factorize(const Natural& n, const FactorOptions& opts) {
    if (n < 2) throw DomainError("factorize: n must be >= 2");
    return Factorizer(opts).run(n);
}

}  // namespace ntlab
