#include "morphcat/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace morphcat {

Matrix::Matrix(Ring ring, std::size_t rows, std::size_t cols, std::vector<mpq_class> entries)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows_ * cols_)
        fail("InvalidMatrix", "entry count does not match shape");
    for (auto& x : e_) x = ring_.normalize(x);
}

Matrix Matrix::identity(const Ring& ring, std::size_t n) {
    Matrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Matrix Matrix::from_rows(const Ring& ring, const std::vector<std::vector<mpq_class>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows[0].size();
    Matrix m(ring, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) fail("InvalidMatrix", "ragged rows");
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

Matrix Matrix::operator*(const Matrix& other) const {
    if (ring_ != other.ring_) fail("RingMismatch", "matrix product over different rings");
    if (cols_ != other.rows_) fail("ShapeMismatch", "matrix product shape");
    Matrix out(ring_, rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const mpq_class& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) {
                if (other.at(k, j) == 0) continue;
                out.e_[i * out.cols_ + j] += a * other.at(k, j);
            }
        }
    for (auto& x : out.e_) x = ring_.normalize(x);
    return out;
}

Matrix Matrix::operator+(const Matrix& other) const {
    if (ring_ != other.ring_ || rows_ != other.rows_ || cols_ != other.cols_)
        fail("ShapeMismatch", "matrix sum");
    Matrix out(ring_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = ring_.normalize(e_[i] + other.e_[i]);
    return out;
}

Matrix Matrix::operator-(const Matrix& other) const { return *this + other.negated(); }

Matrix Matrix::scaled(const mpq_class& c) const {
    Matrix out(ring_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = ring_.normalize(e_[i] * c);
    return out;
}

Matrix Matrix::negated() const { return scaled(-1); }

Matrix Matrix::transposed() const {
    Matrix out(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.set(j, i, at(i, j));
    return out;
}

bool Matrix::operator==(const Matrix& other) const {
    return ring_ == other.ring_ && rows_ == other.rows_ && cols_ == other.cols_ && e_ == other.e_;
}

bool Matrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const mpq_class& x) { return x == 0; });
}

Matrix Matrix::col(std::size_t j) const {
    Matrix out(ring_, rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) out.set(i, 0, at(i, j));
    return out;
}

Matrix Matrix::hstack(const Matrix& other) const {
    if (rows_ != other.rows_) fail("ShapeMismatch", "hstack");
    Matrix out(ring_, rows_, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out.set(i, j, at(i, j));
        for (std::size_t j = 0; j < other.cols_; ++j) out.set(i, cols_ + j, other.at(i, j));
    }
    return out;
}

Matrix Matrix::vstack(const Matrix& other) const {
    if (cols_ != other.cols_) fail("ShapeMismatch", "vstack");
    Matrix out(ring_, rows_ + other.rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.set(i, j, at(i, j));
    for (std::size_t i = 0; i < other.rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.set(rows_ + i, j, other.at(i, j));
    return out;
}

Matrix Matrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const {
    Matrix out(ring_, nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < ncols; ++j) out.set(i, j, at(r0 + i, c0 + j));
    return out;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(e_[a * cols_ + j], e_[b * cols_ + j]);
}

void Matrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap(e_[i * cols_ + a], e_[i * cols_ + b]);
}

void Matrix::scale_row(std::size_t i, const mpq_class& c) {
    for (std::size_t j = 0; j < cols_; ++j) set(i, j, at(i, j) * c);
}

void Matrix::scale_col(std::size_t j, const mpq_class& c) {
    for (std::size_t i = 0; i < rows_; ++i) set(i, j, at(i, j) * c);
}

void Matrix::add_row_multiple(std::size_t dst, std::size_t src, const mpq_class& c) {
    for (std::size_t j = 0; j < cols_; ++j) set(dst, j, at(dst, j) + c * at(src, j));
}

void Matrix::add_col_multiple(std::size_t dst, std::size_t src, const mpq_class& c) {
    for (std::size_t i = 0; i < rows_; ++i) set(i, dst, at(i, dst) + c * at(i, src));
}

std::string Matrix::describe() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).get_str();
    }
    os << "]";
    return os.str();
}

RrefResult rref(const Matrix& a) {
    if (!a.ring().is_field()) fail("NonFieldRing", "rref requires a field; got " + a.ring().describe());
    const Ring& ring = a.ring();
    Matrix r = a;
    Matrix t = Matrix::identity(ring, a.rows());
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t p = row;
        while (p < a.rows() && r.at(p, col) == 0) ++p;
        if (p == a.rows()) continue;
        r.swap_rows(row, p);
        t.swap_rows(row, p);
        mpq_class inv = ring.inv(r.at(row, col));
        r.scale_row(row, inv);
        t.scale_row(row, inv);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || r.at(i, col) == 0) continue;
            mpq_class c = ring.neg(r.at(i, col));
            r.add_row_multiple(i, row, c);
            t.add_row_multiple(i, row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return RrefResult{std::move(r), pivots.size(), std::move(t), std::move(pivots)};
}

std::vector<Matrix> nullspace(const Matrix& a) {
    RrefResult rr = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<Matrix> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        Matrix v(a.ring(), a.cols(), 1);
        v.set(f, 0, 1);
        for (std::size_t i = 0; i < rr.rank; ++i)
            v.set(rr.pivot_cols[i], 0, a.ring().neg(rr.r.at(i, f)));
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t rank(const Matrix& a) { return rref(a).rank; }

namespace {

// Smith pivot measure: |entry| over Z, p-valuation over residue rings.
// Returns true when x beats the current best strictly.
bool better_pivot(const Ring& ring, const mpq_class& x, bool have_best, const mpq_class& best) {
    if (!have_best) return true;
    if (ring.kind() == RingKind::Integer) return abs(x.get_num()) < abs(best.get_num());
    return ring.valuation(x) < ring.valuation(best);
}

struct SmithState {
    Matrix s, u, v;
};

// Clears row/column t assuming the pivot sits at (t,t). Returns false when a
// non-exact division left a remainder (integer case), meaning another pivot
// round is needed.
bool clear_cross(SmithState& st, std::size_t t) {
    const Ring& ring = st.s.ring();
    bool clean = true;
    for (std::size_t i = t + 1; i < st.s.rows(); ++i) {
        if (st.s.at(i, t) == 0) continue;
        mpq_class q;
        if (ring.divides(st.s.at(t, t), st.s.at(i, t), &q)) {
            st.s.add_row_multiple(i, t, ring.neg(q));
            st.u.add_row_multiple(i, t, ring.neg(q));
        } else {
            mpz_class qi;
            mpz_tdiv_q(qi.get_mpz_t(), st.s.at(i, t).get_num().get_mpz_t(),
                       st.s.at(t, t).get_num().get_mpz_t());
            st.s.add_row_multiple(i, t, mpq_class(-qi));
            st.u.add_row_multiple(i, t, mpq_class(-qi));
            clean = false;
        }
    }
    for (std::size_t j = t + 1; j < st.s.cols(); ++j) {
        if (st.s.at(t, j) == 0) continue;
        mpq_class q;
        if (ring.divides(st.s.at(t, t), st.s.at(t, j), &q)) {
            st.s.add_col_multiple(j, t, ring.neg(q));
            st.v.add_col_multiple(j, t, ring.neg(q));
        } else {
            mpz_class qi;
            mpz_tdiv_q(qi.get_mpz_t(), st.s.at(t, j).get_num().get_mpz_t(),
                       st.s.at(t, t).get_num().get_mpz_t());
            st.s.add_col_multiple(j, t, mpq_class(-qi));
            st.v.add_col_multiple(j, t, mpq_class(-qi));
            clean = false;
        }
    }
    return clean;
}

SmithDecomposition smith_field(const Matrix& a) {
    RrefResult rr = rref(a);
    Matrix d = rr.r;
    Matrix v = Matrix::identity(a.ring(), a.cols());
    // Move pivot columns into leading position, then clear the free columns.
    for (std::size_t i = 0; i < rr.rank; ++i) {
        std::size_t c = rr.pivot_cols[i];
        if (c != i) {
            // Pivot columns are produced in increasing order, so a plain swap
            // cannot displace an earlier pivot.
            d.swap_cols(i, c);
            v.swap_cols(i, c);
        }
        for (std::size_t j = i + 1; j < d.cols(); ++j) {
            if (d.at(i, j) == 0) continue;
            mpq_class c2 = a.ring().neg(d.at(i, j));
            d.add_col_multiple(j, i, c2);
            v.add_col_multiple(j, i, c2);
        }
    }
    std::vector<mpq_class> divisors;
    std::size_t slots = std::min(a.rows(), a.cols());
    for (std::size_t i = 0; i < slots; ++i) divisors.push_back(i < rr.rank ? 1 : 0);
    return SmithDecomposition{std::move(rr.transform), std::move(d), std::move(v), std::move(divisors)};
}

}  // namespace

SmithDecomposition smith_normal_form(const Matrix& a) {
    const Ring& ring = a.ring();
    if (ring.is_field()) return smith_field(a);

    SmithState st{a, Matrix::identity(ring, a.rows()), Matrix::identity(ring, a.cols())};
    std::size_t slots = std::min(a.rows(), a.cols());

    for (std::size_t t = 0; t < slots; ++t) {
        for (;;) {
            bool have = false;
            std::size_t pi = t, pj = t;
            mpq_class best = 0;
            for (std::size_t i = t; i < st.s.rows(); ++i)
                for (std::size_t j = t; j < st.s.cols(); ++j) {
                    if (st.s.at(i, j) == 0) continue;
                    if (better_pivot(ring, st.s.at(i, j), have, best)) {
                        have = true;
                        best = st.s.at(i, j);
                        pi = i;
                        pj = j;
                    }
                }
            if (!have) break;  // rest of the matrix is zero
            st.s.swap_rows(t, pi);
            st.u.swap_rows(t, pi);
            st.s.swap_cols(t, pj);
            st.v.swap_cols(t, pj);
            if (clear_cross(st, t)) break;
        }
    }

    // Canonicalize diagonal entries: nonnegative over Z, p^e over Z/p^k.
    for (std::size_t t = 0; t < slots; ++t) {
        const mpq_class& d = st.s.at(t, t);
        if (d == 0) continue;
        if (ring.kind() == RingKind::Integer) {
            if (d < 0) {
                st.s.scale_row(t, -1);
                st.u.scale_row(t, -1);
            }
        } else {
            mpz_class pe;
            mpz_pow_ui(pe.get_mpz_t(), ring.prime().get_mpz_t(), ring.valuation(d));
            mpq_class unit;
            ring.divides(mpq_class(pe), d, &unit);
            mpq_class unit_inv = ring.inv(unit);
            st.s.scale_row(t, unit_inv);
            st.u.scale_row(t, unit_inv);
        }
    }

    // Enforce the divisibility chain d_t | d_{t+1}.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t t = 0; t + 1 < slots; ++t) {
            const mpq_class& dt = st.s.at(t, t);
            const mpq_class& dn = st.s.at(t + 1, t + 1);
            bool bad = (dt == 0 && dn != 0) || (dt != 0 && !ring.divides(dt, dn, nullptr));
            if (!bad) continue;
            st.s.add_col_multiple(t, t + 1, 1);
            st.v.add_col_multiple(t, t + 1, 1);
            for (;;) {
                bool have = false;
                std::size_t pi = t, pj = t;
                mpq_class best = 0;
                for (std::size_t i = t; i < st.s.rows(); ++i)
                    for (std::size_t j = t; j < st.s.cols(); ++j)
                        if (st.s.at(i, j) != 0 && better_pivot(ring, st.s.at(i, j), have, best)) {
                            have = true;
                            best = st.s.at(i, j);
                            pi = i;
                            pj = j;
                        }
                if (!have) break;
                st.s.swap_rows(t, pi);
                st.u.swap_rows(t, pi);
                st.s.swap_cols(t, pj);
                st.v.swap_cols(t, pj);
                if (clear_cross(st, t)) break;
            }
            if (ring.kind() == RingKind::Integer) {
                if (st.s.at(t, t) < 0) {
                    st.s.scale_row(t, -1);
                    st.u.scale_row(t, -1);
                }
                if (st.s.at(t + 1, t + 1) < 0) {
                    st.s.scale_row(t + 1, -1);
                    st.u.scale_row(t + 1, -1);
                }
            } else {
                for (std::size_t r = t; r <= t + 1; ++r) {
                    const mpq_class& d = st.s.at(r, r);
                    if (d == 0) continue;
                    mpz_class pe;
                    mpz_pow_ui(pe.get_mpz_t(), ring.prime().get_mpz_t(), ring.valuation(d));
                    mpq_class unit;
                    ring.divides(mpq_class(pe), d, &unit);
                    mpq_class unit_inv = ring.inv(unit);
                    st.s.scale_row(r, unit_inv);
                    st.u.scale_row(r, unit_inv);
                }
            }
            changed = true;
        }
    }

    std::vector<mpq_class> divisors;
    for (std::size_t t = 0; t < slots; ++t) {
        const mpq_class& d = st.s.at(t, t);
        if (ring.kind() == RingKind::Integer) {
            divisors.push_back(d);
        } else {
            mpz_class pe;
            mpz_pow_ui(pe.get_mpz_t(), ring.prime().get_mpz_t(), ring.valuation(d));
            divisors.push_back(mpq_class(pe));
        }
    }
    return SmithDecomposition{std::move(st.u), std::move(st.s), std::move(st.v), std::move(divisors)};
}

namespace {

LinearSolution solve_field(const Matrix& a, const Matrix& b) {
    RrefResult rr = rref(a);
    Matrix c = rr.transform * b;
    for (std::size_t i = rr.rank; i < a.rows(); ++i)
        if (c.at(i, 0) != 0) return LinearSolution{false, Matrix(a.ring(), 0, 0), nullspace(a)};
    Matrix x(a.ring(), a.cols(), 1);
    for (std::size_t i = 0; i < rr.rank; ++i) x.set(rr.pivot_cols[i], 0, c.at(i, 0));
    return LinearSolution{true, std::move(x), nullspace(a)};
}

LinearSolution solve_smith(const Matrix& a, const Matrix& b) {
    const Ring& ring = a.ring();
    SmithDecomposition sd = smith_normal_form(a);
    Matrix c = sd.u * b;
    std::size_t slots = std::min(a.rows(), a.cols());

    std::vector<Matrix> hom;
    Matrix y(ring, a.cols(), 1);
    bool ok = true;
    for (std::size_t i = 0; i < slots && ok; ++i) {
        const mpq_class& d = sd.d.at(i, i);
        if (d == 0) {
            if (c.at(i, 0) != 0) ok = false;
        } else {
            mpq_class q;
            if (!ring.divides(d, c.at(i, 0), &q)) ok = false;
            else y.set(i, 0, q);
        }
    }
    for (std::size_t i = slots; i < a.rows() && ok; ++i)
        if (c.at(i, 0) != 0) ok = false;

    for (std::size_t i = 0; i < slots; ++i) {
        const mpq_class& d = sd.d.at(i, i);
        if (d == 0) {
            hom.push_back(sd.v.col(i));
        } else if (ring.kind() == RingKind::Residue) {
            unsigned e = ring.valuation(d);
            if (e > 0) {
                mpz_class co;
                mpz_pow_ui(co.get_mpz_t(), ring.prime().get_mpz_t(), ring.exponent() - e);
                hom.push_back(sd.v.col(i).scaled(mpq_class(co)));
            }
        }
    }
    for (std::size_t j = slots; j < a.cols(); ++j) hom.push_back(sd.v.col(j));

    if (!ok) return LinearSolution{false, Matrix(ring, 0, 0), std::move(hom)};
    return LinearSolution{true, sd.v * y, std::move(hom)};
}

}  // namespace

LinearSolution solve_linear(const Matrix& a, const Matrix& b) {
    if (a.ring() != b.ring()) fail("RingMismatch", "solve_linear");
    if (b.cols() != 1 || b.rows() != a.rows()) fail("ShapeMismatch", "solve_linear rhs");
    if (a.ring().is_field()) return solve_field(a, b);
    return solve_smith(a, b);
}

std::vector<Matrix> kernel_generators(const Matrix& a) {
    if (a.ring().is_field()) return nullspace(a);
    return solve_smith(a, Matrix::zero(a.ring(), a.rows(), 1)).homogeneous;
}

std::optional<Matrix> solve_matrix(const Matrix& a, const Matrix& b) {
    if (b.rows() != a.rows()) fail("ShapeMismatch", "solve_matrix rhs");
    Matrix x(a.ring(), a.cols(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        LinearSolution s = solve_linear(a, b.col(j));
        if (!s.solvable) return std::nullopt;
        for (std::size_t i = 0; i < a.cols(); ++i) x.set(i, j, s.particular.at(i, 0));
    }
    return x;
}

mpq_class determinant(const Matrix& a) {
    if (a.rows() != a.cols()) fail("NonSquare", "determinant of non-square matrix");
    const Ring& ring = a.ring();
    std::size_t n = a.rows();
    if (n == 0) return ring.one();

    // Fraction-based Gaussian elimination over Q on lifted entries; the
    // result is reduced back into the ring (valid for Z and Z/p^k since
    // reduction mod n commutes with the determinant).
    std::vector<mpq_class> m;
    m.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.push_back(a.at(i, j));
    mpq_class det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && m[p * n + col] == 0) ++p;
        if (p == n) return ring.zero();
        if (p != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m[p * n + j], m[col * n + j]);
            det = -det;
        }
        det *= m[col * n + col];
        mpq_class inv = 1 / m[col * n + col];
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m[i * n + col] == 0) continue;
            mpq_class f = m[i * n + col] * inv;
            for (std::size_t j = col; j < n; ++j) m[i * n + j] -= f * m[col * n + j];
        }
    }
    return ring.normalize(det);
}

bool is_invertible(const Matrix& a) {
    if (a.rows() != a.cols()) fail("NonSquare", "is_invertible on non-square matrix");
    return a.ring().is_unit(determinant(a));
}

std::optional<Matrix> inverse(const Matrix& a) {
    if (a.rows() != a.cols()) fail("NonSquare", "inverse of non-square matrix");
    const Ring& ring = a.ring();
    if (!is_invertible(a)) return std::nullopt;
    if (ring.is_field()) {
        RrefResult rr = rref(a);
        return rr.transform;
    }
    SmithDecomposition sd = smith_normal_form(a);
    Matrix dinv(ring, a.rows(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) dinv.set(i, i, ring.inv(sd.d.at(i, i)));
    return sd.v * dinv * sd.u;
}

}  // namespace morphcat
