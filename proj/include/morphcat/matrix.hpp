#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "morphcat/ring.hpp"

namespace morphcat {

// Dense exact matrix over a Ring. Row-major, immutable in spirit: operations
// return fresh values. Zero-row / zero-column matrices are legal.
class Matrix {
public:
    Matrix(Ring ring, std::size_t rows, std::size_t cols)
        : ring_(std::move(ring)), rows_(rows), cols_(cols), e_(rows * cols, mpq_class(0)) {}

    Matrix(Ring ring, std::size_t rows, std::size_t cols, std::vector<mpq_class> entries);

    static Matrix identity(const Ring& ring, std::size_t n);
    static Matrix zero(const Ring& ring, std::size_t rows, std::size_t cols) {
        return Matrix(ring, rows, cols);
    }
    // Builder from row-major initializer data (long/string convertible handled by callers).
    static Matrix from_rows(const Ring& ring, const std::vector<std::vector<mpq_class>>& rows);

    const Ring& ring() const { return ring_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const mpq_class& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, const mpq_class& v) { e_[i * cols_ + j] = ring_.normalize(v); }

    Matrix operator*(const Matrix& other) const;
    Matrix operator+(const Matrix& other) const;
    Matrix operator-(const Matrix& other) const;
    Matrix scaled(const mpq_class& c) const;
    Matrix negated() const;
    Matrix transposed() const;

    bool operator==(const Matrix& other) const;
    bool operator!=(const Matrix& other) const { return !(*this == other); }
    bool is_zero() const;

    Matrix col(std::size_t j) const;
    Matrix hstack(const Matrix& other) const;   // [this | other]
    Matrix vstack(const Matrix& other) const;   // [this ; other]
    Matrix submatrix(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const;

    // In-place elementary operations (used by the normal-form kernels).
    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    void scale_row(std::size_t i, const mpq_class& c);
    void scale_col(std::size_t j, const mpq_class& c);
    void add_row_multiple(std::size_t dst, std::size_t src, const mpq_class& c);
    void add_col_multiple(std::size_t dst, std::size_t src, const mpq_class& c);

    std::string describe() const;

private:
    Ring ring_;
    std::size_t rows_, cols_;
    std::vector<mpq_class> e_;
};

struct RrefResult {
    Matrix r;           // reduced row-echelon form
    std::size_t rank;
    Matrix transform;   // invertible, transform * input = r
    std::vector<std::size_t> pivot_cols;
};

// Gauss-Jordan over a field; throws NonFieldRing otherwise.
RrefResult rref(const Matrix& a);

// Basis of { v : a*v = 0 } over a field, one column vector per basis element.
std::vector<Matrix> nullspace(const Matrix& a);

struct SmithDecomposition {
    Matrix u, d, v;     // u * input * v = d, u and v unit-determinant
    // Canonical divisor labels, one per diagonal slot: nonnegative over Z
    // (0 = free), p^e with 0 <= e <= k over Z/p^k (p^k labels the zero class),
    // 1/0 over fields.
    std::vector<mpq_class> elementary_divisors;
};

// Smith normal form over Z or Z/p^k; over fields delegates to the rank-based
// diagonal form. Pivots: minimal |entry| (Z) / minimal p-valuation (residue),
// ties broken by lowest (row, col).
SmithDecomposition smith_normal_form(const Matrix& a);

struct LinearSolution {
    bool solvable = false;
    Matrix particular;                // cols() == 1 when solvable
    std::vector<Matrix> homogeneous;  // module generators of { x : a*x = 0 }
};

// Solves a*x = b exactly over any supported ring (b a single column).
LinearSolution solve_linear(const Matrix& a, const Matrix& b);

// Generators of the solution module of a*x = 0 over any supported ring.
std::vector<Matrix> kernel_generators(const Matrix& a);

// Solves a*X = B column-by-column; nullopt when some column is unsolvable.
std::optional<Matrix> solve_matrix(const Matrix& a, const Matrix& b);

mpq_class determinant(const Matrix& a);
bool is_invertible(const Matrix& a);
std::optional<Matrix> inverse(const Matrix& a);

std::size_t rank(const Matrix& a);  // field rings

}  // namespace morphcat
