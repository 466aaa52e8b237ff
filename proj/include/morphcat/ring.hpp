#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace morphcat {

// Error with a stable machine-readable code ("NonFieldRing", "TooLarge", ...)
// next to the human message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const char* code, const std::string& message) {
    throw Error(code, message);
}

enum class RingKind { PrimeField, Rational, Integer, Residue };

// Exact base ring. Elements are carried as canonicalized mpq_class values:
// prime-field and residue elements are integers in [0, n), integer-ring
// elements are arbitrary mpz values (denominator 1), rationals are reduced
// fractions with positive denominator.
class Ring {
public:
    static Ring prime_field(const mpz_class& p);
    static Ring rational();
    static Ring integer();
    static Ring residue(const mpz_class& n);  // n = p^k, a prime power

    RingKind kind() const { return kind_; }
    bool is_field() const { return kind_ == RingKind::PrimeField || kind_ == RingKind::Rational; }
    bool is_finite() const { return kind_ == RingKind::PrimeField || kind_ == RingKind::Residue; }

    // modulus(): p for prime fields, p^k for residue rings; 0 otherwise.
    const mpz_class& modulus() const { return modulus_; }
    const mpz_class& prime() const { return prime_; }   // p (prime field / residue)
    unsigned exponent() const { return exponent_; }     // k (residue); 1 for prime field

    mpq_class normalize(const mpq_class& x) const;
    mpq_class zero() const { return mpq_class(0); }
    mpq_class one() const { return mpq_class(1); }

    mpq_class add(const mpq_class& a, const mpq_class& b) const { return normalize(a + b); }
    mpq_class sub(const mpq_class& a, const mpq_class& b) const { return normalize(a - b); }
    mpq_class mul(const mpq_class& a, const mpq_class& b) const { return normalize(a * b); }
    mpq_class neg(const mpq_class& a) const { return normalize(-a); }

    bool is_zero(const mpq_class& a) const { return normalize(a) == 0; }
    bool is_one(const mpq_class& a) const { return normalize(a) == 1; }
    bool is_unit(const mpq_class& a) const;

    // Multiplicative inverse of a unit; throws NotAUnit otherwise.
    mpq_class inv(const mpq_class& a) const;

    // True (with quotient) when b divides a in the ring.
    bool divides(const mpq_class& b, const mpq_class& a, mpq_class* quotient = nullptr) const;

    // p-adic valuation of a residue element; exponent() for the zero class.
    unsigned valuation(const mpq_class& a) const;

    bool operator==(const Ring& other) const {
        return kind_ == other.kind_ && modulus_ == other.modulus_;
    }
    bool operator!=(const Ring& other) const { return !(*this == other); }

    std::string describe() const;

private:
    Ring(RingKind kind, mpz_class modulus, mpz_class prime, unsigned exponent)
        : kind_(kind), modulus_(std::move(modulus)), prime_(std::move(prime)), exponent_(exponent) {}

    RingKind kind_;
    mpz_class modulus_;
    mpz_class prime_;
    unsigned exponent_;
};

// Deterministic primality check (trial division; desk-scale inputs).
bool is_prime(const mpz_class& n);

// Writes p and k when n = p^k with p prime, k >= 1.
bool is_prime_power(const mpz_class& n, mpz_class* p = nullptr, unsigned* k = nullptr);

}  // namespace morphcat
