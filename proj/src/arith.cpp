#include "ntlab/arith.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace ntlab {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod64(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod64(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, b, m);
        b = mulmod64(b, b, m);
        e >>= 1;
    }
    return r;
}

bool strong_probable_prime64(u64 n, u64 a) {
    a %= n;
    if (a == 0) return true;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    u64 x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod64(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

bool strong_probable_prime(const Natural& n, const Natural& a) {
    Natural d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    Natural x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    const Natural nm1 = n - 1;
    if (x == 1 || x == nm1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == nm1) return true;
    }
    return false;
}

constexpr int kProbableRounds = 64;  // error < 4^-64 = 2^-128

}  // namespace

std::uint64_t to_u64(const Natural& n) {
    if (!fits_u64(n)) throw DomainError("value does not fit in 64 bits");
    return mpz_get_ui(n.get_mpz_t());
}

Natural from_u64(std::uint64_t v) {
    Natural r;
    mpz_set_ui(r.get_mpz_t(), static_cast<unsigned long>(v));
    return r;
}

Natural power(const Natural& base, unsigned long exp) {
    Natural r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

Natural mod_pow(const Natural& base, const Natural& exp, const Natural& modulus) {
    if (modulus < 2) throw DomainError("mod_pow: modulus must be >= 2");
    if (exp < 0) throw DomainError("mod_pow: negative exponent");
    Natural r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

Natural gcd(const Natural& a, const Natural& b) {
    Natural r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

RootResult integer_nth_root(const Natural& n, unsigned long k) {
    if (k == 0) throw DomainError("integer_nth_root: k must be >= 1");
    if (n < 0) throw DomainError("integer_nth_root: negative radicand");
    RootResult r;
    r.exact = mpz_root(r.root.get_mpz_t(), n.get_mpz_t(), k) != 0;
    return r;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    if (n < 37 * 37) return true;
    // Witness set verified for every n < 2^64.
    for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
        if (!strong_probable_prime64(n, a)) return false;
    }
    return true;
}

PrimeTest is_prime(const Natural& n) {
    if (n < 2) return {false, Certainty::proven};
    if (fits_u64(n)) return {is_prime_u64(to_u64(n)), Certainty::proven};
    for (unsigned long p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return {false, Certainty::proven};
    }
    // Bases are a deterministic function of n so repeated calls agree.
    std::mt19937_64 rng(mpz_get_ui(n.get_mpz_t()) ^ mpz_sizeinbase(n.get_mpz_t(), 2));
    gmp_randclass gen(gmp_randinit_mt);
    gen.seed(static_cast<unsigned long>(rng()));
    const Natural span = n - 3;
    for (int round = 0; round < kProbableRounds; ++round) {
        Natural a = gen.get_z_range(span) + 2;
        if (!strong_probable_prime(n, a)) return {false, Certainty::proven};
    }
    return {true, Certainty::probable};
}

Natural Factorization::product() const {
    Natural r = 1;
    for (const auto& f : factors) r *= power(f.prime, f.exponent);
    for (const auto& c : unfactored) r *= c;
    return r;
}

bool Factorization::all_proven() const {
    return std::all_of(factors.begin(), factors.end(),
                       [](const PrimePower& f) { return f.certainty == Certainty::proven; });
}

std::vector<Natural> Factorization::distinct_primes() const {
    std::vector<Natural> out;
    out.reserve(factors.size());
    for (const auto& f : factors) out.push_back(f.prime);
    return out;
}

std::string Factorization::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& f : factors) {
        if (!first) os << '*';
        os << f.prime.get_str() << '^' << f.exponent;
        first = false;
    }
    for (const auto& c : unfactored) {
        if (!first) os << '*';
        os << '[' << c.get_str() << ']';
        first = false;
    }
    return os.str();
}

Natural euler_phi(const Factorization& f) {
    if (!f.complete()) throw DomainError("euler_phi: incomplete factorization");
    Natural phi = 1;
    for (const auto& pp : f.factors) phi *= (pp.prime - 1) * power(pp.prime, pp.exponent - 1);
    return phi;
}

Natural multiplicative_order_dividing(const Natural& a, const Natural& m,
                                      const Natural& multiple, const FactorOptions& opts) {
    if (m < 2) throw DomainError("multiplicative_order: modulus must be >= 2");
    if (gcd(a, m) != 1) throw DomainError("multiplicative_order: gcd(a, m) != 1");
    if (multiple < 1 || mod_pow(a, multiple, m) != 1)
        throw DomainError("multiplicative_order: a^multiple is not 1 mod m");
    if (multiple == 1) return 1;
    const Factorization f = factorize(multiple, opts);
    if (!f.complete()) throw DomainError("multiplicative_order: could not factor exponent");
    Natural e = multiple;
    for (const auto& pp : f.factors) {
        for (unsigned i = 0; i < pp.exponent; ++i) {
            Natural candidate = e / pp.prime;
            if (mod_pow(a, candidate, m) != 1) break;
            e = candidate;
        }
    }
    return e;
}

Natural multiplicative_order(const Natural& a, const Natural& m, const FactorOptions& opts) {
    if (m < 2) throw DomainError("multiplicative_order: modulus must be >= 2");
    if (gcd(a, m) != 1) throw DomainError("multiplicative_order: gcd(a, m) != 1");
    const Factorization fm = factorize(m, opts);
    if (!fm.complete()) throw DomainError("multiplicative_order: could not factor modulus");
    return multiplicative_order_dividing(a, m, euler_phi(fm), opts);
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
    std::vector<std::uint32_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

}  // namespace ntlab
