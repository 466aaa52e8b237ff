#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "morphcat/matrix.hpp"

namespace morphcat {

// Dense univariate polynomials over a field ring, little-endian coefficients.
// The empty vector is the zero polynomial.
using Poly = std::vector<mpq_class>;

Poly poly_normalize(const Ring& ring, Poly p);
std::size_t poly_degree(const Poly& p);  // degree of 0 reported as 0
Poly poly_add(const Ring& ring, const Poly& a, const Poly& b);
Poly poly_sub(const Ring& ring, const Poly& a, const Poly& b);
Poly poly_mul(const Ring& ring, const Poly& a, const Poly& b);
std::pair<Poly, Poly> poly_divmod(const Ring& ring, const Poly& a, const Poly& b);
Poly poly_gcd(const Ring& ring, Poly a, Poly b);  // monic
Poly poly_derivative(const Ring& ring, const Poly& p);
struct PolyExtGcd {
    Poly g, u, v;  // g = a*u + b*v, g monic
};
PolyExtGcd poly_ext_gcd(const Ring& ring, const Poly& a, const Poly& b);
mpq_class poly_eval(const Ring& ring, const Poly& p, const mpq_class& x);

// Monic characteristic polynomial via Hessenberg reduction (any field).
Poly char_poly(const Matrix& a);

// Roots in the base field: full scan over small prime fields, divisor-based
// search over Q.
std::vector<mpq_class> poly_roots(const Ring& field, const Poly& p);

// Rabin irreducibility test over a prime field.
bool poly_irreducible_mod_p(const Ring& fp, const Poly& m);

// Sufficient certificate of irreducibility over Q (reduction mod small primes).
bool poly_irreducible_over_q_certified(const Ring& q, const Poly& m);

// Finite-dimensional unital associative algebra over a field, given by the
// products of a fixed basis.
class Algebra {
public:
    // products[i][j] = coordinates (dim x 1 column) of basis_i * basis_j.
    Algebra(Ring field, std::vector<std::vector<Matrix>> products, Matrix unit_coords);

    const Ring& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    const Matrix& unit() const { return unit_; }

    Matrix multiply(const Matrix& x, const Matrix& y) const;
    Matrix left_mult_matrix(const Matrix& x) const;
    Matrix right_mult_matrix(const Matrix& x) const;
    Matrix basis_vector(std::size_t i) const;
    Matrix evaluate_poly(const Poly& p, const Matrix& x) const;
    bool is_unit_element(const Matrix& x) const;  // L_x invertible
    Poly min_poly(const Matrix& x) const;

private:
    Ring field_;
    std::size_t dim_;
    std::vector<std::vector<Matrix>> prod_;
    Matrix unit_;
};

// Basis of the Jacobson radical: kernel of the trace form in characteristic
// zero, the characteristic-p chain of char-poly coefficient forms otherwise.
// The result is post-verified (two-sided ideal, nilpotent).
std::vector<Matrix> radical_basis(const Algebra& a);

struct QuotientAlgebra {
    Algebra algebra;
    Matrix project;  // dim_S x dim_A
    Matrix lift;     // dim_A x dim_S section
};
QuotientAlgebra quotient_by_ideal(const Algebra& a, const std::vector<Matrix>& ideal_basis);

std::vector<Matrix> center_basis(const Algebra& a);

struct BlockInfo {
    std::size_t dim = 0;
    std::size_t center_dim = 0;
    enum class Kind { Division, MatrixBlock, Indeterminate } kind = Kind::Indeterminate;
};

struct AlgebraClassification {
    std::size_t dim = 0;
    std::size_t radical_dim = 0;
    std::size_t semisimple_dim = 0;
    std::size_t num_blocks = 0;
    std::vector<BlockInfo> blocks;
    bool is_local = false;
    bool is_semilocal = true;
    bool is_finite_type = false;
    std::optional<std::size_t> type_n;
    std::vector<Matrix> radical;                      // coords in A
    std::vector<std::vector<Matrix>> maximal_ideals;  // per block, bases in A coords
};

AlgebraClassification classify_algebra(const Algebra& a, std::uint64_t seed = 0);

// Membership of x (coords) in the span of the given vectors.
bool in_span(const Ring& field, const std::vector<Matrix>& span, const Matrix& x);

// Greedy column-space basis of a list of coordinate vectors.
std::vector<Matrix> span_column_basis(const Ring& field, const std::vector<Matrix>& vectors);

// Coordinates of x in the given independent basis; throws when x lies outside.
Matrix coords_in_basis(const Ring& field, const std::vector<Matrix>& basis, const Matrix& x);

// Algebra from an independent basis of ambient vectors and a multiplication
// callback on basis indices (must return ambient vectors inside the span).
Algebra algebra_from_basis(const Ring& field, const std::vector<Matrix>& basis_ambient,
                           const std::function<Matrix(std::size_t, std::size_t)>& mult,
                           const Matrix& unit_ambient);

}  // namespace morphcat
