#include <functional>

#include "doctest.h"
#include "morphcat/algebra.hpp"
#include "test_util.hpp"

using namespace morphcat;
using namespace morphcat::testutil;

namespace {

Matrix vec_of(const Matrix& m) {
    Matrix v(m.ring(), m.rows() * m.cols(), 1);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v.set(i * m.cols() + j, 0, m.at(i, j));
    return v;
}

// The subalgebra of M_n(F) generated by the given matrices (with identity).
struct MatrixAlgebra {
    Algebra alg;
    std::vector<Matrix> basis_mats;
};

MatrixAlgebra closure_algebra(const Ring& f, std::size_t n, std::vector<Matrix> gens) {
    std::vector<Matrix> basis_mats{Matrix::identity(f, n)};
    std::vector<Matrix> basis_vecs{vec_of(basis_mats[0])};
    std::vector<Matrix> work = gens;
    while (!work.empty()) {
        Matrix m = work.back();
        work.pop_back();
        if (in_span(f, basis_vecs, vec_of(m))) continue;
        basis_mats.push_back(m);
        basis_vecs.push_back(vec_of(m));
        for (const auto& b : basis_mats) {
            work.push_back(b * m);
            work.push_back(m * b);
        }
    }
    auto mult = [&](std::size_t i, std::size_t j) { return vec_of(basis_mats[i] * basis_mats[j]); };
    Algebra a = algebra_from_basis(f, basis_vecs, mult, vec_of(Matrix::identity(f, n)));
    return MatrixAlgebra{std::move(a), std::move(basis_mats)};
}

// Exhaustive radical oracle for small algebras over a prime field:
// x is in J(A) iff 1 - y*x is a unit for every y.
std::vector<Matrix> radical_oracle(const Algebra& a) {
    const Ring& f = a.field();
    long p = static_cast<long>(f.modulus().get_ui());
    std::vector<Matrix> elements;
    std::vector<long> counter(a.dim(), 0);
    for (;;) {
        Matrix x(f, a.dim(), 1);
        for (std::size_t i = 0; i < a.dim(); ++i) x.set(i, 0, counter[i]);
        elements.push_back(std::move(x));
        std::size_t i = 0;
        while (i < a.dim()) {
            if (++counter[i] < p) break;
            counter[i] = 0;
            ++i;
        }
        if (i == a.dim()) break;
    }
    std::vector<Matrix> rad;
    for (const auto& x : elements) {
        bool in_j = true;
        for (const auto& y : elements) {
            Matrix z = a.unit() - a.multiply(y, x);
            if (!a.is_unit_element(z)) {
                in_j = false;
                break;
            }
        }
        if (in_j && !x.is_zero()) rad.push_back(x);
    }
    return rad;
}

}  // namespace

TEST_CASE("polynomial toolkit") {
    Ring q = Ring::rational();
    Poly a{mpq_class(-1), mpq_class(0), mpq_class(1)};  // x^2 - 1
    Poly b{mpq_class(1), mpq_class(1)};                 // x + 1
    auto [quo, rem] = poly_divmod(q, a, b);
    CHECK(rem.empty());
    CHECK(quo == Poly{mpq_class(-1), mpq_class(1)});
    CHECK(poly_gcd(q, a, b) == Poly{mpq_class(1), mpq_class(1)});

    auto eg = poly_ext_gcd(q, Poly{mpq_class(-1), mpq_class(1)}, Poly{mpq_class(1), mpq_class(1)});
    CHECK(poly_degree(eg.g) == 0);  // coprime
    // Verify Bezout.
    Poly lhs = poly_add(q, poly_mul(q, Poly{mpq_class(-1), mpq_class(1)}, eg.u),
                        poly_mul(q, Poly{mpq_class(1), mpq_class(1)}, eg.v));
    CHECK(lhs == eg.g);

    auto roots = poly_roots(q, a);
    CHECK(roots.size() == 2);

    Ring f2 = Ring::prime_field(2);
    Poly irr{mpq_class(1), mpq_class(1), mpq_class(1)};  // x^2 + x + 1
    CHECK(poly_irreducible_mod_p(f2, irr));
    Poly red{mpq_class(1), mpq_class(0), mpq_class(1)};  // x^2 + 1 = (x+1)^2 over F_2
    CHECK(!poly_irreducible_mod_p(f2, red));

    Poly xx1{mpq_class(1), mpq_class(0), mpq_class(1)};  // x^2 + 1 over Q
    CHECK(poly_irreducible_over_q_certified(q, xx1));
}

TEST_CASE("char_poly matches the determinant expansion") {
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 40; ++trial) {
        Ring f = trial % 2 ? Ring::prime_field(5) : Ring::rational();
        std::size_t n = 2 + rand_below(rng, 2);
        Matrix m = random_matrix(rng, f, n, n);
        Poly cp = char_poly(m);
        REQUIRE(cp.size() == n + 1);
        CHECK(cp[n] == 1);
        // Oracle: trace and determinant coefficients.
        mpq_class tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += m.at(i, i);
        CHECK(cp[n - 1] == f.neg(tr));
        mpq_class dc = determinant(m);
        mpq_class sign = (n % 2 == 0) ? 1 : -1;
        CHECK(cp[0] == f.normalize(sign * dc));
        // And the Cayley-Hamilton identity.
        Matrix acc(f, n, n);
        for (std::size_t i = cp.size(); i-- > 0;) {
            acc = acc * m;
            if (cp[i] != 0) acc = acc + Matrix::identity(f, n).scaled(cp[i]);
        }
        CHECK(acc.is_zero());
    }
}

TEST_CASE("radical of hand-picked algebras") {
    Ring f2 = Ring::prime_field(2);

    // Full matrix algebra M_2(F_2): semisimple, one matrix block. The trace
    // form is identically zero here, so this exercises the char-p chain.
    {
        auto e12 = mat(f2, {{0, 1}, {0, 0}});
        auto e21 = mat(f2, {{0, 0}, {1, 0}});
        MatrixAlgebra m2 = closure_algebra(f2, 2, {e12, e21});
        CHECK(m2.alg.dim() == 4);
        CHECK(radical_basis(m2.alg).empty());
        auto cls = classify_algebra(m2.alg);
        CHECK(cls.num_blocks == 1);
        CHECK(cls.blocks[0].dim == 4);
        CHECK(cls.blocks[0].center_dim == 1);
        CHECK(cls.blocks[0].kind == BlockInfo::Kind::MatrixBlock);
        CHECK(!cls.is_finite_type);
        CHECK(!cls.is_local);
        CHECK(!cls.type_n.has_value());
    }

    // Upper-triangular 2x2: radical dim 1, two division blocks.
    {
        auto e11 = mat(f2, {{1, 0}, {0, 0}});
        auto e12 = mat(f2, {{0, 1}, {0, 0}});
        MatrixAlgebra t2 = closure_algebra(f2, 2, {e11, e12});
        CHECK(t2.alg.dim() == 3);
        CHECK(radical_basis(t2.alg).size() == 1);
        auto cls = classify_algebra(t2.alg);
        CHECK(cls.num_blocks == 2);
        CHECK(cls.is_finite_type);
        CHECK(cls.type_n == 2);
        CHECK(!cls.is_local);
        CHECK(cls.maximal_ideals.size() == 2);
        for (const auto& mi : cls.maximal_ideals) CHECK(mi.size() == 2);
    }

    // F_2[t]/(t^2-1): local with 1-dimensional radical (t+1 is nilpotent).
    // Another case where the trace form degenerates.
    {
        auto t = mat(f2, {{0, 1}, {1, 0}});
        MatrixAlgebra g = closure_algebra(f2, 2, {t});
        CHECK(g.alg.dim() == 2);
        auto rad = radical_basis(g.alg);
        CHECK(rad.size() == 1);
        auto cls = classify_algebra(g.alg);
        CHECK(cls.is_local);
        CHECK(cls.type_n == 1);
        CHECK(cls.num_blocks == 1);
    }

    // F_4 as an F_2-algebra: a field, one division block of center dim 2.
    {
        auto t = mat(f2, {{0, 1}, {1, 1}});  // companion of x^2 + x + 1
        MatrixAlgebra f4 = closure_algebra(f2, 2, {t});
        CHECK(f4.alg.dim() == 2);
        CHECK(radical_basis(f4.alg).empty());
        auto cls = classify_algebra(f4.alg);
        CHECK(cls.num_blocks == 1);
        CHECK(cls.blocks[0].kind == BlockInfo::Kind::Division);
        CHECK(cls.blocks[0].center_dim == 2);
        CHECK(cls.is_local);
    }

    // F_3[t]/(t^2-1) = F_3 x F_3: two blocks in odd characteristic.
    {
        Ring f3 = Ring::prime_field(3);
        auto t = mat(f3, {{0, 1}, {1, 0}});
        MatrixAlgebra g = closure_algebra(f3, 2, {t});
        auto cls = classify_algebra(g.alg);
        CHECK(radical_basis(g.alg).empty());
        CHECK(cls.num_blocks == 2);
        CHECK(cls.type_n == 2);
    }
}

TEST_CASE("radical over the rationals") {
    Ring q = Ring::rational();

    // Q[i]: division block certified via mod-p irreducibility.
    {
        auto i = mat(q, {{0, -1}, {1, 0}});
        MatrixAlgebra qi = closure_algebra(q, 2, {i});
        CHECK(radical_basis(qi.alg).empty());
        auto cls = classify_algebra(qi.alg);
        CHECK(cls.num_blocks == 1);
        CHECK(cls.blocks[0].kind == BlockInfo::Kind::Division);
        CHECK(cls.is_local);
    }

    // Q[t]/(t^2-1) = Q x Q: rational-root splitting.
    {
        auto t = mat(q, {{0, 1}, {1, 0}});
        MatrixAlgebra g = closure_algebra(q, 2, {t});
        auto cls = classify_algebra(g.alg);
        CHECK(cls.num_blocks == 2);
        CHECK(cls.type_n == 2);
    }

    // M_2(Q): one block, certified not division via a reducible min poly.
    {
        auto e12 = mat(q, {{0, 1}, {0, 0}});
        auto e21 = mat(q, {{0, 0}, {1, 0}});
        MatrixAlgebra m2 = closure_algebra(q, 2, {e12, e21});
        auto cls = classify_algebra(m2.alg);
        CHECK(cls.num_blocks == 1);
        CHECK(cls.blocks[0].kind == BlockInfo::Kind::MatrixBlock);
        CHECK(!cls.is_finite_type);
    }

    // Rational upper-triangular: trace-form radical.
    {
        auto e11 = mat(q, {{1, 0}, {0, 0}});
        auto e12 = mat(q, {{0, 1}, {0, 0}});
        MatrixAlgebra t2 = closure_algebra(q, 2, {e11, e12});
        CHECK(radical_basis(t2.alg).size() == 1);
        CHECK(classify_algebra(t2.alg).num_blocks == 2);
    }
}

TEST_CASE("radical agrees with the exhaustive unit-criterion oracle") {
    std::mt19937_64 rng(6001);
    int done = 0;
    while (done < 25) {
        Ring f = (done % 3 == 2) ? Ring::prime_field(3) : Ring::prime_field(2);
        std::size_t n = 2 + rand_below(rng, 2);
        std::vector<Matrix> gens;
        std::size_t k = 1 + rand_below(rng, 2);
        for (std::size_t i = 0; i < k; ++i) gens.push_back(random_matrix(rng, f, n, n));
        MatrixAlgebra ma = closure_algebra(f, n, gens);
        mpz_class sz = 1;
        for (std::size_t i = 0; i < ma.alg.dim(); ++i) sz *= f.modulus();
        if (sz > 512) continue;

        std::vector<Matrix> fast = radical_basis(ma.alg);
        std::vector<Matrix> slow = radical_oracle(ma.alg);
        // Same subspace: equal dimension and mutual membership.
        mpz_class slow_count = 1;
        for (std::size_t i = 0; i < fast.size(); ++i) slow_count *= f.modulus();
        CHECK(slow.size() + 1 == slow_count);  // oracle excludes zero
        for (const auto& x : slow) CHECK(in_span(f, fast, x));
        ++done;
    }
}

TEST_CASE("quotient and center") {
    Ring f2 = Ring::prime_field(2);
    auto e11 = mat(f2, {{1, 0}, {0, 0}});
    auto e12 = mat(f2, {{0, 1}, {0, 0}});
    MatrixAlgebra t2 = closure_algebra(f2, 2, {e11, e12});
    CHECK(center_basis(t2.alg).size() == 1);  // scalars only

    auto rad = radical_basis(t2.alg);
    QuotientAlgebra q = quotient_by_ideal(t2.alg, rad);
    CHECK(q.algebra.dim() == 2);
    CHECK(center_basis(q.algebra).size() == 2);  // k x k is commutative

    auto e21 = mat(f2, {{0, 0}, {1, 0}});
    MatrixAlgebra m2 = closure_algebra(f2, 2, {e12, e21});
    CHECK(center_basis(m2.alg).size() == 1);
}

TEST_CASE("classification is deterministic") {
    Ring f3 = Ring::prime_field(3);
    auto t = mat(f3, {{0, 1}, {1, 0}});
    MatrixAlgebra g = closure_algebra(f3, 2, {t});
    auto c1 = classify_algebra(g.alg);
    auto c2 = classify_algebra(g.alg);
    REQUIRE(c1.num_blocks == c2.num_blocks);
    for (std::size_t i = 0; i < c1.num_blocks; ++i) {
        CHECK(c1.blocks[i].dim == c2.blocks[i].dim);
        CHECK(c1.blocks[i].center_dim == c2.blocks[i].center_dim);
    }
}

TEST_CASE("min_poly and evaluate_poly") {
    Ring f2 = Ring::prime_field(2);
    auto t = mat(f2, {{0, 1}, {1, 1}});
    MatrixAlgebra f4 = closure_algebra(f2, 2, {t});
    Matrix tc = coords_in_basis(f2, {vec_of(f4.basis_mats[0]), vec_of(f4.basis_mats[1])}, vec_of(t));
    Poly m = f4.alg.min_poly(tc);
    CHECK(m == Poly{mpq_class(1), mpq_class(1), mpq_class(1)});  // x^2 + x + 1
    CHECK(f4.alg.evaluate_poly(m, tc).is_zero());
}
