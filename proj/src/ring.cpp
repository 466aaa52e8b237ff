#include "morphcat/ring.hpp"

namespace morphcat {

bool is_prime(const mpz_class& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    mpz_class d = 5;
    while (d * d <= n) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
        d += 6;
    }
    return true;
}

bool is_prime_power(const mpz_class& n, mpz_class* p_out, unsigned* k_out) {
    if (n < 2) return false;
    mpz_class m = n;
    mpz_class p = 2;
    while (p * p <= m) {
        if (m % p == 0) break;
        p += (p == 2) ? 1 : 2;
    }
    if (p * p > m) p = m;  // n itself is prime
    unsigned k = 0;
    while (m % p == 0) {
        m /= p;
        ++k;
    }
    if (m != 1) return false;
    if (p_out) *p_out = p;
    if (k_out) *k_out = k;
    return true;
}

Ring Ring::prime_field(const mpz_class& p) {
    if (!is_prime(p)) fail("InvalidRing", "prime-field modulus " + p.get_str() + " is not prime");
    return Ring(RingKind::PrimeField, p, p, 1);
}

Ring Ring::rational() { return Ring(RingKind::Rational, 0, 0, 0); }

Ring Ring::integer() { return Ring(RingKind::Integer, 0, 0, 0); }

Ring Ring::residue(const mpz_class& n) {
    mpz_class p;
    unsigned k = 0;
    if (!is_prime_power(n, &p, &k))
        fail("InvalidRing", "residue modulus " + n.get_str() + " is not a prime power");
    return Ring(RingKind::Residue, n, p, k);
}

mpq_class Ring::normalize(const mpq_class& x) const {
    mpq_class v = x;
    v.canonicalize();
    switch (kind_) {
        case RingKind::Rational:
            return v;
        case RingKind::Integer:
            if (v.get_den() != 1) fail("InvalidElement", "non-integral element over Z");
            return v;
        case RingKind::PrimeField:
        case RingKind::Residue: {
            if (v.get_den() != 1) {
                // Fractions are admitted only when the denominator is a unit.
                mpq_class num(v.get_num());
                mpq_class den(v.get_den());
                return mul(normalize(num), inv(normalize(den)));
            }
            mpz_class r;
            mpz_mod(r.get_mpz_t(), v.get_num().get_mpz_t(), modulus_.get_mpz_t());
            return mpq_class(r);
        }
    }
    fail("InvalidRing", "unreachable");
}

bool Ring::is_unit(const mpq_class& a) const {
    mpq_class v = normalize(a);
    switch (kind_) {
        case RingKind::Rational:
            return v != 0;
        case RingKind::PrimeField:
            return v != 0;
        case RingKind::Integer:
            return v == 1 || v == -1;
        case RingKind::Residue: {
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), v.get_num().get_mpz_t(), modulus_.get_mpz_t());
            return g == 1;
        }
    }
    return false;
}

mpq_class Ring::inv(const mpq_class& a) const {
    mpq_class v = normalize(a);
    if (!is_unit(v)) fail("NotAUnit", "element " + v.get_str() + " is not a unit in " + describe());
    switch (kind_) {
        case RingKind::Rational:
            return 1 / v;
        case RingKind::Integer:
            return v;  // 1 or -1
        case RingKind::PrimeField:
        case RingKind::Residue: {
            mpz_class r;
            if (mpz_invert(r.get_mpz_t(), v.get_num().get_mpz_t(), modulus_.get_mpz_t()) == 0)
                fail("NotAUnit", "no modular inverse");
            return mpq_class(r);
        }
    }
    fail("InvalidRing", "unreachable");
}

bool Ring::divides(const mpq_class& b, const mpq_class& a, mpq_class* quotient) const {
    mpq_class bv = normalize(b);
    mpq_class av = normalize(a);
    switch (kind_) {
        case RingKind::Rational:
        case RingKind::PrimeField: {
            if (is_zero(bv)) {
                if (!is_zero(av)) return false;
                if (quotient) *quotient = 0;
                return true;
            }
            if (quotient) *quotient = mul(av, inv(bv));
            return true;
        }
        case RingKind::Integer: {
            if (bv == 0) {
                if (av != 0) return false;
                if (quotient) *quotient = 0;
                return true;
            }
            mpz_class q, r;
            mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), av.get_num().get_mpz_t(), bv.get_num().get_mpz_t());
            if (r != 0) return false;
            if (quotient) *quotient = mpq_class(q);
            return true;
        }
        case RingKind::Residue: {
            // b | a in Z/p^k  iff  val(b) <= val(a).
            unsigned vb = valuation(bv), va = valuation(av);
            if (vb > va) return false;
            if (quotient) {
                mpz_class pe;
                mpz_pow_ui(pe.get_mpz_t(), prime_.get_mpz_t(), vb);
                mpz_class bu = bv.get_num() == 0 ? mpz_class(1) : mpz_class(bv.get_num() / pe);
                mpz_class au = av.get_num() / pe;
                *quotient = mul(mpq_class(au), inv(mpq_class(bu)));
            }
            return true;
        }
    }
    return false;
}

unsigned Ring::valuation(const mpq_class& a) const {
    if (kind_ != RingKind::Residue && kind_ != RingKind::PrimeField)
        fail("InvalidRing", "valuation is defined for residue rings");
    mpq_class v = normalize(a);
    if (v == 0) return exponent_;
    mpz_class m = v.get_num();
    unsigned e = 0;
    while (m % prime_ == 0) {
        m /= prime_;
        ++e;
    }
    return e;
}

std::string Ring::describe() const {
    switch (kind_) {
        case RingKind::PrimeField: return "F_" + modulus_.get_str();
        case RingKind::Rational: return "Q";
        case RingKind::Integer: return "Z";
        case RingKind::Residue: return "Z/" + modulus_.get_str();
    }
    return "?";
}

}  // namespace morphcat
