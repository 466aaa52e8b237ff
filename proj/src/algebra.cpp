#include "morphcat/algebra.hpp"

#include <algorithm>
#include <random>

namespace morphcat {

Poly poly_normalize(const Ring& ring, Poly p) {
    for (auto& c : p) c = ring.normalize(c);
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

std::size_t poly_degree(const Poly& p) { return p.empty() ? 0 : p.size() - 1; }

Poly poly_add(const Ring& ring, const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        mpq_class v = (i < a.size() ? a[i] : mpq_class(0)) + (i < b.size() ? b[i] : mpq_class(0));
        out[i] = v;
    }
    return poly_normalize(ring, std::move(out));
}

Poly poly_sub(const Ring& ring, const Poly& a, const Poly& b) {
    Poly nb = b;
    for (auto& c : nb) c = -c;
    return poly_add(ring, a, nb);
}

Poly poly_mul(const Ring& ring, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return poly_normalize(ring, std::move(out));
}

std::pair<Poly, Poly> poly_divmod(const Ring& ring, const Poly& a, const Poly& b) {
    Poly bb = poly_normalize(ring, b);
    if (bb.empty()) fail("DivisionByZero", "polynomial division by zero");
    Poly r = poly_normalize(ring, a);
    if (r.size() < bb.size()) return {Poly{}, r};
    Poly q(r.size() - bb.size() + 1, 0);
    mpq_class lead_inv = ring.inv(bb.back());
    for (std::size_t k = q.size(); k-- > 0;) {
        if (r.size() < bb.size() + k) continue;
        if (r.size() != bb.size() + k) continue;
        mpq_class c = ring.mul(r.back(), lead_inv);
        q[k] = c;
        for (std::size_t i = 0; i < bb.size(); ++i)
            r[k + i] = ring.sub(r[k + i], ring.mul(c, bb[i]));
        r = poly_normalize(ring, std::move(r));
    }
    return {poly_normalize(ring, std::move(q)), r};
}

Poly poly_gcd(const Ring& ring, Poly a, Poly b) {
    a = poly_normalize(ring, std::move(a));
    b = poly_normalize(ring, std::move(b));
    while (!b.empty()) {
        Poly r = poly_divmod(ring, a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        mpq_class inv = ring.inv(a.back());
        for (auto& c : a) c = ring.mul(c, inv);
    }
    return a;
}

Poly poly_derivative(const Ring& ring, const Poly& p) {
    if (p.size() <= 1) return {};
    Poly out(p.size() - 1, 0);
    for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = ring.mul(p[i], mpq_class(static_cast<long>(i)));
    return poly_normalize(ring, std::move(out));
}

PolyExtGcd poly_ext_gcd(const Ring& ring, const Poly& a, const Poly& b) {
    Poly r0 = poly_normalize(ring, a), r1 = poly_normalize(ring, b);
    Poly s0{mpq_class(1)}, s1{}, t0{}, t1{mpq_class(1)};
    while (!r1.empty()) {
        auto [q, r] = poly_divmod(ring, r0, r1);
        Poly s2 = poly_sub(ring, s0, poly_mul(ring, q, s1));
        Poly t2 = poly_sub(ring, t0, poly_mul(ring, q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (!r0.empty()) {
        mpq_class inv = ring.inv(r0.back());
        for (auto& c : r0) c = ring.mul(c, inv);
        for (auto& c : s0) c = ring.mul(c, inv);
        for (auto& c : t0) c = ring.mul(c, inv);
    }
    return {r0, s0, t0};
}

mpq_class poly_eval(const Ring& ring, const Poly& p, const mpq_class& x) {
    mpq_class acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = ring.add(ring.mul(acc, x), p[i]);
    return acc;
}

Poly char_poly(const Matrix& a) {
    if (!a.ring().is_field()) fail("NonFieldRing", "char_poly requires a field");
    if (a.rows() != a.cols()) fail("NonSquare", "char_poly of a non-square matrix");
    const Ring& ring = a.ring();
    std::size_t n = a.rows();
    if (n == 0) return Poly{mpq_class(1)};

    // Similarity reduction to upper Hessenberg form.
    Matrix h = a;
    for (std::size_t j = 0; j + 2 < n; ++j) {
        std::size_t piv = j + 1;
        while (piv < n && h.at(piv, j) == 0) ++piv;
        if (piv == n) continue;
        if (piv != j + 1) {
            h.swap_rows(j + 1, piv);
            h.swap_cols(j + 1, piv);
        }
        mpq_class inv = ring.inv(h.at(j + 1, j));
        for (std::size_t i = j + 2; i < n; ++i) {
            if (h.at(i, j) == 0) continue;
            mpq_class f = ring.mul(h.at(i, j), inv);
            h.add_row_multiple(i, j + 1, ring.neg(f));
            h.add_col_multiple(j + 1, i, f);
        }
    }

    // p_m(x) = char poly of the leading m x m block.
    std::vector<Poly> p(n + 1);
    p[0] = Poly{mpq_class(1)};
    for (std::size_t m = 1; m <= n; ++m) {
        Poly xm{ring.neg(h.at(m - 1, m - 1)), mpq_class(1)};  // (x - h_mm)
        p[m] = poly_mul(ring, xm, p[m - 1]);
        mpq_class subprod = 1;
        for (std::size_t k = 2; k <= m; ++k) {
            subprod = ring.mul(subprod, h.at(m - k + 1, m - k));
            if (subprod == 0) break;
            mpq_class c = ring.mul(h.at(m - k, m - 1), subprod);
            Poly term = p[m - k];
            for (auto& t : term) t = ring.mul(t, c);
            p[m] = poly_sub(ring, p[m], term);
        }
    }
    return p[n];
}

std::vector<mpq_class> poly_roots(const Ring& field, const Poly& p) {
    std::vector<mpq_class> roots;
    Poly q = poly_normalize(field, p);
    if (q.size() <= 1) return roots;
    if (field.kind() == RingKind::PrimeField) {
        if (field.modulus() > 100000) fail("TooLarge", "root scan over a large prime field");
        for (mpz_class x = 0; x < field.modulus(); ++x) {
            if (poly_eval(field, q, mpq_class(x)) == 0) roots.emplace_back(x);
        }
        return roots;
    }
    // Q: candidate roots num/den with num | constant, den | leading (after
    // clearing denominators).
    mpz_class lcm = 1;
    for (const auto& c : q) {
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
        lcm = l;
    }
    std::vector<mpz_class> zc;
    for (const auto& c : q) zc.push_back(mpz_class(c * mpq_class(lcm)));
    std::size_t lo = 0;
    while (lo < zc.size() && zc[lo] == 0) {
        roots.emplace_back(0);
        ++lo;
    }
    if (lo > 0) {
        roots.resize(1);  // report the root 0 once
        zc.erase(zc.begin(), zc.begin() + lo);
    } else {
        roots.clear();
        if (lo > 0) roots.emplace_back(0);
    }
    if (zc.size() <= 1) return roots;
    auto divisors = [](mpz_class v) {
        std::vector<mpz_class> out;
        v = abs(v);
        if (v == 0) return out;
        for (mpz_class d = 1; d * d <= v; ++d)
            if (v % d == 0) {
                out.push_back(d);
                out.push_back(v / d);
            }
        return out;
    };
    if (abs(zc.front()) > mpz_class("1000000000000")) return roots;  // desk-scale bail-out
    for (const auto& num : divisors(zc.front()))
        for (const auto& den : divisors(zc.back()))
            for (int sgn : {1, -1}) {
                mpq_class cand(sgn * num, den);
                cand.canonicalize();
                if (poly_eval(field, q, cand) == 0 &&
                    std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
    return roots;
}

namespace {

Poly poly_mulmod(const Ring& ring, const Poly& a, const Poly& b, const Poly& m) {
    return poly_divmod(ring, poly_mul(ring, a, b), m).second;
}

Poly poly_powmod(const Ring& ring, Poly base, mpz_class e, const Poly& m) {
    Poly acc{mpq_class(1)};
    base = poly_divmod(ring, base, m).second;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = poly_mulmod(ring, acc, base, m);
        base = poly_mulmod(ring, base, base, m);
        e >>= 1;
    }
    return acc;
}

}  // namespace

bool poly_irreducible_mod_p(const Ring& fp, const Poly& m_in) {
    Poly m = poly_normalize(fp, m_in);
    std::size_t d = poly_degree(m);
    if (m.empty() || d == 0) return false;
    if (d == 1) return true;
    Poly x{mpq_class(0), mpq_class(1)};
    mpz_class p = fp.modulus();
    // Rabin: x^(p^d) = x mod m, and gcd(x^(p^(d/r)) - x, m) = 1 for primes r | d.
    mpz_class pd;
    mpz_pow_ui(pd.get_mpz_t(), p.get_mpz_t(), d);
    Poly xp = poly_powmod(fp, x, pd, m);
    if (!poly_sub(fp, xp, x).empty()) return false;
    for (std::size_t r = 2; r <= d; ++r) {
        if (d % r != 0) continue;
        bool r_prime = true;
        for (std::size_t q = 2; q * q <= r; ++q)
            if (r % q == 0) r_prime = false;
        if (!r_prime) continue;
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), d / r);
        Poly g = poly_gcd(fp, poly_sub(fp, poly_powmod(fp, x, pe, m), x), m);
        if (poly_degree(g) != 0 || g.empty()) return false;
    }
    return true;
}

bool poly_irreducible_over_q_certified(const Ring& q, const Poly& m_in) {
    Poly m = poly_normalize(q, m_in);
    if (poly_degree(m) <= 1) return poly_degree(m) == 1;
    mpz_class lcm = 1;
    for (const auto& c : m) {
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
        lcm = l;
    }
    std::vector<mpz_class> zc;
    for (const auto& c : m) zc.push_back(mpz_class(c * mpq_class(lcm)));
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L}) {
        if (zc.back() % p == 0) continue;  // degree must survive reduction
        Ring fp = Ring::prime_field(p);
        Poly mp;
        for (const auto& c : zc) mp.push_back(fp.normalize(mpq_class(c)));
        mp = poly_normalize(fp, std::move(mp));
        if (poly_degree(mp) != poly_degree(m)) continue;
        if (poly_irreducible_mod_p(fp, mp)) return true;
    }
    return false;
}

Algebra::Algebra(Ring field, std::vector<std::vector<Matrix>> products, Matrix unit_coords)
    : field_(std::move(field)), dim_(products.size()), prod_(std::move(products)),
      unit_(std::move(unit_coords)) {
    if (!field_.is_field()) fail("UnsupportedRing", "algebras are built over fields");
    for (const auto& row : prod_)
        if (row.size() != dim_) fail("InvalidAlgebra", "product table is not square");
    if (unit_.rows() != dim_ || unit_.cols() != 1) fail("InvalidAlgebra", "unit coordinate shape");
}

Matrix Algebra::basis_vector(std::size_t i) const {
    Matrix v(field_, dim_, 1);
    v.set(i, 0, 1);
    return v;
}

Matrix Algebra::multiply(const Matrix& x, const Matrix& y) const {
    Matrix out(field_, dim_, 1);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (x.at(i, 0) == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (y.at(j, 0) == 0) continue;
            out = out + prod_[i][j].scaled(field_.mul(x.at(i, 0), y.at(j, 0)));
        }
    }
    return out;
}

Matrix Algebra::left_mult_matrix(const Matrix& x) const {
    Matrix out(field_, dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
        Matrix col = multiply(x, basis_vector(j));
        for (std::size_t i = 0; i < dim_; ++i) out.set(i, j, col.at(i, 0));
    }
    return out;
}

Matrix Algebra::right_mult_matrix(const Matrix& x) const {
    Matrix out(field_, dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
        Matrix col = multiply(basis_vector(j), x);
        for (std::size_t i = 0; i < dim_; ++i) out.set(i, j, col.at(i, 0));
    }
    return out;
}

Matrix Algebra::evaluate_poly(const Poly& p, const Matrix& x) const {
    Matrix acc(field_, dim_, 1);
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = multiply(acc, x);
        if (p[i] != 0) acc = acc + unit_.scaled(p[i]);
    }
    return acc;
}

bool Algebra::is_unit_element(const Matrix& x) const { return is_invertible(left_mult_matrix(x)); }

Poly Algebra::min_poly(const Matrix& x) const {
    // Smallest monic dependency among 1, x, x^2, ...
    std::vector<Matrix> powers{unit_};
    for (;;) {
        Matrix next = multiply(powers.back(), x);
        Matrix sys(field_, dim_, powers.size());
        for (std::size_t j = 0; j < powers.size(); ++j)
            for (std::size_t i = 0; i < dim_; ++i) sys.set(i, j, powers[j].at(i, 0));
        LinearSolution s = solve_linear(sys, next);
        if (s.solvable) {
            Poly m(powers.size() + 1, 0);
            m[powers.size()] = 1;
            for (std::size_t j = 0; j < powers.size(); ++j) m[j] = field_.neg(s.particular.at(j, 0));
            return poly_normalize(field_, std::move(m));
        }
        powers.push_back(std::move(next));
        if (powers.size() > dim_ + 1) fail("InvalidAlgebra", "min_poly found no dependency");
    }
}

bool in_span(const Ring& field, const std::vector<Matrix>& span, const Matrix& x) {
    if (span.empty()) return x.is_zero();
    Matrix sys(field, x.rows(), span.size());
    for (std::size_t j = 0; j < span.size(); ++j)
        for (std::size_t i = 0; i < x.rows(); ++i) sys.set(i, j, span[j].at(i, 0));
    return solve_linear(sys, x).solvable;
}

std::vector<Matrix> span_column_basis(const Ring& field, const std::vector<Matrix>& vectors) {
    std::vector<Matrix> basis;
    for (const auto& v : vectors)
        if (!in_span(field, basis, v)) basis.push_back(v);
    return basis;
}

Matrix coords_in_basis(const Ring& field, const std::vector<Matrix>& basis, const Matrix& x) {
    Matrix sys(field, x.rows(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < x.rows(); ++i) sys.set(i, j, basis[j].at(i, 0));
    LinearSolution s = solve_linear(sys, x);
    if (!s.solvable) fail("InvalidAlgebra", "element lies outside the spanning basis");
    return s.particular;
}

Algebra algebra_from_basis(const Ring& field, const std::vector<Matrix>& basis_ambient,
                           const std::function<Matrix(std::size_t, std::size_t)>& mult,
                           const Matrix& unit_ambient) {
    std::size_t d = basis_ambient.size();
    std::vector<std::vector<Matrix>> products(d, std::vector<Matrix>(d, Matrix(field, d, 1)));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            products[i][j] = coords_in_basis(field, basis_ambient, mult(i, j));
    Matrix unit = coords_in_basis(field, basis_ambient, unit_ambient);
    return Algebra(field, std::move(products), std::move(unit));
}

namespace {

// Coefficient of lambda^(n-k) in the monic char poly (elementary symmetric
// up to sign; vanishes on nilpotent matrices for every k >= 1).
mpq_class char_coeff(const Ring& field, const Poly& cp, std::size_t n, std::size_t k) {
    if (n - k >= cp.size()) return field.zero();
    return cp[n - k];
}

std::vector<Matrix> radical_char_p(const Algebra& a) {
    const Ring& f = a.field();
    std::size_t n = a.dim();
    mpz_class p = f.modulus();

    // Current subspace, as coordinate columns. Starts as all of A.
    std::vector<Matrix> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(a.basis_vector(i));

    std::vector<Matrix> lmul;
    for (std::size_t i = 0; i < n; ++i) lmul.push_back(a.left_mult_matrix(a.basis_vector(i)));
    auto lmat = [&](const Matrix& x) {
        Matrix out(f, n, n);
        for (std::size_t i = 0; i < n; ++i)
            if (x.at(i, 0) != 0) out = out + lmul[i].scaled(x.at(i, 0));
        return out;
    };

    mpz_class pk = 1;
    while (pk * p <= static_cast<long>(n)) pk *= p;  // largest p-power <= n

    for (mpz_class k = 1; k <= pk && !v.empty(); k *= p) {
        // x = sum a_j v_j lies in the next stage iff the p^i-th char
        // coefficient of L_x L_y vanishes for all y in the current stage.
        std::vector<Matrix> ly;
        for (const auto& y : v) ly.push_back(lmat(y));
        Matrix sys(f, v.size(), v.size());
        for (std::size_t yi = 0; yi < v.size(); ++yi) {
            for (std::size_t j = 0; j < v.size(); ++j) {
                Poly cp = char_poly(lmat(v[j]) * ly[yi]);
                sys.set(yi, j, char_coeff(f, cp, n, k.get_ui()));
            }
        }
        std::vector<Matrix> next;
        for (const auto& coeffs : nullspace(sys)) {
            Matrix x(f, n, 1);
            for (std::size_t j = 0; j < v.size(); ++j)
                if (coeffs.at(j, 0) != 0) x = x + v[j].scaled(coeffs.at(j, 0));
            if (!x.is_zero()) next.push_back(std::move(x));
        }
        v = span_column_basis(f, next);
    }
    return v;
}

std::vector<Matrix> radical_char_zero(const Algebra& a) {
    const Ring& f = a.field();
    std::size_t n = a.dim();
    std::vector<Matrix> lmul;
    for (std::size_t i = 0; i < n; ++i) lmul.push_back(a.left_mult_matrix(a.basis_vector(i)));
    Matrix form(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Matrix prod = lmul[i] * lmul[j];
            mpq_class tr = 0;
            for (std::size_t d = 0; d < n; ++d) tr += prod.at(d, d);
            form.set(i, j, tr);
        }
    return nullspace(form);
}

void verify_radical(const Algebra& a, const std::vector<Matrix>& rad) {
    // Two-sided ideal closure.
    for (const auto& r : rad)
        for (std::size_t i = 0; i < a.dim(); ++i) {
            if (!in_span(a.field(), rad, a.multiply(r, a.basis_vector(i))))
                fail("RadicalCheck", "radical candidate is not a right ideal");
            if (!in_span(a.field(), rad, a.multiply(a.basis_vector(i), r)))
                fail("RadicalCheck", "radical candidate is not a left ideal");
        }
    // Nilpotency: successive product spans must reach zero.
    std::vector<Matrix> power = rad;
    for (std::size_t step = 0; step <= a.dim() && !power.empty(); ++step) {
        std::vector<Matrix> next;
        for (const auto& x : power)
            for (const auto& r : rad) {
                Matrix y = a.multiply(x, r);
                if (!y.is_zero()) next.push_back(std::move(y));
            }
        power = span_column_basis(a.field(), next);
        if (step == a.dim() && !power.empty())
            fail("RadicalCheck", "radical candidate is not nilpotent");
    }
}

}  // namespace

std::vector<Matrix> radical_basis(const Algebra& a) {
    std::vector<Matrix> rad = a.field().kind() == RingKind::Rational ? radical_char_zero(a)
                                                                     : radical_char_p(a);
    rad = span_column_basis(a.field(), rad);
    verify_radical(a, rad);
    return rad;
}

QuotientAlgebra quotient_by_ideal(const Algebra& a, const std::vector<Matrix>& ideal_basis) {
    const Ring& f = a.field();
    std::size_t n = a.dim();
    // Extend the ideal basis to a basis of A by standard vectors.
    std::vector<Matrix> full = ideal_basis;
    std::vector<std::size_t> comp_idx;
    for (std::size_t i = 0; i < n && full.size() < n; ++i) {
        Matrix e = a.basis_vector(i);
        if (!in_span(f, full, e)) {
            full.push_back(e);
            comp_idx.push_back(i);
        }
    }
    std::size_t s = comp_idx.size();
    Matrix base(f, n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) base.set(i, j, full[j].at(i, 0));
    auto base_inv = inverse(base);
    if (!base_inv) fail("InvalidAlgebra", "ideal basis extension failed");

    // project = last s rows of base⁻¹; lift = complement columns.
    Matrix project(f, s, n);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < n; ++j) project.set(i, j, base_inv->at(ideal_basis.size() + i, j));
    Matrix lift(f, n, s);
    for (std::size_t j = 0; j < s; ++j) lift.set(comp_idx[j], j, 1);

    std::vector<std::vector<Matrix>> products(s, std::vector<Matrix>(s, Matrix(f, s, 1)));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j)
            products[i][j] = project * a.multiply(lift.col(i), lift.col(j));
    Matrix unit = project * a.unit();
    return QuotientAlgebra{Algebra(f, std::move(products), std::move(unit)), std::move(project),
                           std::move(lift)};
}

std::vector<Matrix> center_basis(const Algebra& a) {
    const Ring& f = a.field();
    std::size_t n = a.dim();
    if (n == 0) return {};
    Matrix sys(f, n * n, n);
    for (std::size_t b = 0; b < n; ++b) {
        Matrix d = a.left_mult_matrix(a.basis_vector(b)) - a.right_mult_matrix(a.basis_vector(b));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) sys.set(b * n + i, j, d.at(i, j));
    }
    return nullspace(sys);
}

namespace {

// Commutative algebra utilities for center splitting. Elements are coords in
// the ambient (semisimple) algebra S; the center is handled through its own
// basis.
struct CenterContext {
    const Algebra& s;
    std::vector<Matrix> zbasis;  // coords in S

    Matrix z_to_s(const Matrix& zc) const {
        Matrix out(s.field(), s.dim(), 1);
        for (std::size_t i = 0; i < zbasis.size(); ++i)
            if (zc.at(i, 0) != 0) out = out + zbasis[i].scaled(zc.at(i, 0));
        return out;
    }
};

// Idempotents found by exhaustive scan of a small center.
std::vector<Matrix> idempotents_by_enumeration(const CenterContext& cc) {
    const Ring& f = cc.s.field();
    std::size_t t = cc.zbasis.size();
    std::vector<Matrix> out;
    std::vector<mpz_class> ranges(t, f.modulus());
    std::vector<mpz_class> c(t, 0);
    for (;;) {
        Matrix z(f, cc.s.dim(), 1);
        for (std::size_t i = 0; i < t; ++i)
            if (c[i] != 0) z = z + cc.zbasis[i].scaled(mpq_class(c[i]));
        if (cc.s.multiply(z, z) == z && !z.is_zero()) out.push_back(z);
        std::size_t i = 0;
        while (i < t) {
            c[i] += 1;
            if (c[i] < ranges[i]) break;
            c[i] = 0;
            ++i;
        }
        if (i == t) break;
        if (t == 0) break;
    }
    return out;
}

std::vector<Matrix> primitive_from_all(const Algebra& s, std::vector<Matrix> idems) {
    std::vector<Matrix> prim;
    for (const auto& e : idems) {
        bool primitive = true;
        for (const auto& g : idems) {
            if (g == e) continue;
            if (s.multiply(e, g) == g) {  // g <= e, a smaller nonzero idempotent
                primitive = false;
                break;
            }
        }
        if (primitive) prim.push_back(e);
    }
    return prim;
}

// Splitting route: factor minimal polynomials of center elements.
std::vector<Matrix> primitive_by_splitting(const CenterContext& cc, std::uint64_t seed) {
    const Ring& f = cc.s.field();
    std::mt19937_64 rng(seed);
    std::vector<Matrix> done;
    std::vector<Matrix> work{cc.s.unit()};

    auto component_dim = [&](const Matrix& e) {
        std::vector<Matrix> vs;
        for (const auto& z : cc.zbasis) vs.push_back(cc.s.multiply(z, e));
        return span_column_basis(f, vs).size();
    };

    while (!work.empty()) {
        Matrix e = work.back();
        work.pop_back();
        std::size_t cdim = component_dim(e);
        if (cdim == 1) {
            done.push_back(e);
            continue;
        }
        bool split = false, certified_field = false;
        for (unsigned attempt = 0; attempt < 40 + cc.zbasis.size() && !split && !certified_field;
             ++attempt) {
            Matrix z(f, cc.s.dim(), 1);
            if (attempt < cc.zbasis.size()) {
                z = cc.s.multiply(cc.zbasis[attempt], e);
            } else {
                for (const auto& zb : cc.zbasis) {
                    long c = f.is_finite() ? static_cast<long>(rng() % f.modulus().get_ui())
                                           : static_cast<long>(rng() % 21) - 10;
                    if (c != 0) z = z + cc.s.multiply(zb, e).scaled(c);
                }
            }
            // Minimal polynomial of z within the component (unit = e).
            std::vector<Matrix> powers{e};
            Poly m;
            for (;;) {
                Matrix next = cc.s.multiply(powers.back(), z);
                Matrix sys(f, cc.s.dim(), powers.size());
                for (std::size_t j = 0; j < powers.size(); ++j)
                    for (std::size_t i = 0; i < cc.s.dim(); ++i) sys.set(i, j, powers[j].at(i, 0));
                LinearSolution sol = solve_linear(sys, next);
                if (sol.solvable) {
                    m.assign(powers.size() + 1, 0);
                    m[powers.size()] = 1;
                    for (std::size_t j = 0; j < powers.size(); ++j)
                        m[j] = f.neg(sol.particular.at(j, 0));
                    m = poly_normalize(f, std::move(m));
                    break;
                }
                powers.push_back(std::move(next));
            }
            if (poly_degree(m) < 2) continue;

            // Try to split m = (x - r) * rest at a root r.
            auto roots = poly_roots(f, m);
            if (!roots.empty()) {
                Poly lin{f.neg(roots[0]), mpq_class(1)};
                Poly rest = poly_divmod(f, m, lin).first;
                if (poly_degree(rest) >= 1 && poly_gcd(f, lin, rest).size() == 1) {
                    PolyExtGcd eg = poly_ext_gcd(f, lin, rest);
                    // e1 = (v * rest)(z), Horner against the component unit e.
                    Poly vg = poly_mul(f, eg.v, rest);
                    Matrix e1(f, cc.s.dim(), 1);
                    for (std::size_t i = vg.size(); i-- > 0;) {
                        e1 = cc.s.multiply(e1, z);
                        if (vg[i] != 0) e1 = e1 + e.scaled(vg[i]);
                    }
                    Matrix e2 = e - e1;
                    if (!e1.is_zero() && !e2.is_zero() && cc.s.multiply(e1, e1) == e1) {
                        work.push_back(std::move(e1));
                        work.push_back(std::move(e2));
                        split = true;
                        continue;
                    }
                }
            }
            // No split from this element; a full-degree irreducible minimal
            // polynomial certifies a field component.
            if (poly_degree(m) == cdim) {
                bool irred = f.kind() == RingKind::Rational
                                 ? poly_irreducible_over_q_certified(f, m)
                                 : poly_irreducible_mod_p(f, m);
                if (irred) certified_field = true;
            }
        }
        if (split) continue;
        if (certified_field) {
            done.push_back(e);
            continue;
        }
        fail("IndeterminateCenter", "could not split or certify a center component");
    }
    return done;
}

}  // namespace

AlgebraClassification classify_algebra(const Algebra& a, std::uint64_t seed) {
    const Ring& f = a.field();
    AlgebraClassification out;
    out.dim = a.dim();
    out.radical = radical_basis(a);
    out.radical_dim = out.radical.size();
    out.semisimple_dim = out.dim - out.radical_dim;
    if (out.semisimple_dim == 0) fail("InvalidAlgebra", "unital algebra with trivial semisimple part");

    QuotientAlgebra q = quotient_by_ideal(a, out.radical);
    const Algebra& s = q.algebra;
    CenterContext cc{s, center_basis(s)};

    std::vector<Matrix> prim;
    bool small_finite = false;
    if (f.is_finite()) {
        mpz_class total = 1;
        for (std::size_t i = 0; i < cc.zbasis.size(); ++i) total *= f.modulus();
        small_finite = total <= 4096;
    }
    if (small_finite)
        prim = primitive_from_all(s, idempotents_by_enumeration(cc));
    else
        prim = primitive_by_splitting(cc, seed);

    // Deterministic block order.
    std::sort(prim.begin(), prim.end(), [&](const Matrix& x, const Matrix& y) {
        for (std::size_t i = 0; i < s.dim(); ++i) {
            if (x.at(i, 0) != y.at(i, 0)) return x.at(i, 0) < y.at(i, 0);
        }
        return false;
    });

    // Sanity: orthogonal idempotent decomposition of 1.
    Matrix esum(f, s.dim(), 1);
    for (const auto& e : prim) esum = esum + e;
    if (!(esum == s.unit())) fail("InvalidAlgebra", "central idempotents do not sum to 1");
    for (std::size_t i = 0; i < prim.size(); ++i)
        for (std::size_t j = i + 1; j < prim.size(); ++j)
            if (!s.multiply(prim[i], prim[j]).is_zero())
                fail("InvalidAlgebra", "central idempotents are not orthogonal");

    out.num_blocks = prim.size();
    std::size_t block_dim_total = 0;
    for (const auto& e : prim) {
        BlockInfo info;
        std::vector<Matrix> block_vecs;
        for (std::size_t i = 0; i < s.dim(); ++i) block_vecs.push_back(s.multiply(s.basis_vector(i), e));
        std::vector<Matrix> block = span_column_basis(f, block_vecs);
        info.dim = block.size();
        std::vector<Matrix> zc;
        for (const auto& z : cc.zbasis) zc.push_back(s.multiply(z, e));
        info.center_dim = span_column_basis(f, zc).size();

        if (info.dim == info.center_dim) {
            info.kind = BlockInfo::Kind::Division;
        } else if (f.is_finite()) {
            info.kind = BlockInfo::Kind::MatrixBlock;  // Wedderburn: finite division rings are fields
        } else {
            // Over Q look for a certified zero divisor: an element whose
            // minimal polynomial inside the block is reducible.
            info.kind = BlockInfo::Kind::Indeterminate;
            std::mt19937_64 rng(seed + 17);
            for (unsigned attempt = 0; attempt < 24 + block.size(); ++attempt) {
                Matrix x(f, s.dim(), 1);
                if (attempt < block.size()) {
                    x = block[attempt];
                } else {
                    for (const auto& b : block) {
                        long c = static_cast<long>(rng() % 7) - 3;
                        if (c != 0) x = x + b.scaled(c);
                    }
                }
                std::vector<Matrix> powers{e};
                Poly m;
                for (;;) {
                    Matrix next = s.multiply(powers.back(), x);
                    Matrix sys(f, s.dim(), powers.size());
                    for (std::size_t j = 0; j < powers.size(); ++j)
                        for (std::size_t i2 = 0; i2 < s.dim(); ++i2)
                            sys.set(i2, j, powers[j].at(i2, 0));
                    LinearSolution sol = solve_linear(sys, next);
                    if (sol.solvable) {
                        m.assign(powers.size() + 1, 0);
                        m[powers.size()] = 1;
                        for (std::size_t j = 0; j < powers.size(); ++j)
                            m[j] = f.neg(sol.particular.at(j, 0));
                        m = poly_normalize(f, std::move(m));
                        break;
                    }
                    powers.push_back(std::move(next));
                }
                if (poly_degree(m) >= 2 && !poly_roots(f, m).empty()) {
                    info.kind = BlockInfo::Kind::MatrixBlock;
                    break;
                }
            }
        }
        block_dim_total += info.dim;
        out.blocks.push_back(info);

        // Maximal two-sided ideal: radical plus all other blocks, in A coords.
        std::vector<Matrix> ideal = out.radical;
        for (const auto& e2 : prim) {
            if (e2 == e) continue;
            for (std::size_t i = 0; i < s.dim(); ++i) {
                Matrix v = q.lift * s.multiply(s.basis_vector(i), e2);
                if (!in_span(f, ideal, v)) ideal.push_back(std::move(v));
            }
        }
        out.maximal_ideals.push_back(std::move(ideal));
    }
    if (block_dim_total != out.semisimple_dim)
        fail("InvalidAlgebra", "block dimensions do not add up");

    out.is_finite_type = true;
    for (const auto& b : out.blocks)
        if (b.kind != BlockInfo::Kind::Division) out.is_finite_type = false;
    out.type_n = out.is_finite_type ? std::optional<std::size_t>(out.num_blocks) : std::nullopt;
    out.is_local = out.num_blocks == 1 && out.blocks[0].kind == BlockInfo::Kind::Division;
    out.is_semilocal = true;
    return out;
}

}  // namespace morphcat
