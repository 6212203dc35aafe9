#include <random>
#include <set>

#include "doctest.h"
#include "grassmann/errors.hpp"
#include "grassmann/finfield.hpp"

using namespace grassmann;

namespace {

Matrix random_matrix(std::mt19937_64& rng, unsigned p, std::size_t rows, std::size_t cols) {
    Matrix m(p, rows, cols);
    std::uniform_int_distribution<unsigned> d(0, p - 1);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, d(rng));
    return m;
}

// Every vector of the row space, by enumerating all coefficient choices.
std::set<Vector> row_space(const Matrix& m) {
    const unsigned p = m.modulus();
    std::set<Vector> out;
    std::vector<unsigned> coeff(m.rows(), 0);
    while (true) {
        Vector v(m.cols(), 0);
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) v[c] = static_cast<std::uint8_t>((v[c] + coeff[r] * m.get(r, c)) % p);
        out.insert(v);
        std::size_t i = 0;
        while (i < coeff.size() && ++coeff[i] == p) coeff[i++] = 0;
        if (i == coeff.size()) break;
    }
    return out;
}

std::vector<Vector> all_vectors(unsigned p, std::size_t n) {
    std::vector<Vector> out;
    Vector v(n, 0);
    while (true) {
        out.push_back(v);
        std::size_t i = 0;
        while (i < n && ++v[i] == p) v[i++] = 0;
        if (i == n) break;
    }
    return out;
}

bool brute_independent(const std::vector<Vector>& vs, unsigned p) {
    // no nontrivial combination vanishes
    std::vector<unsigned> coeff(vs.size(), 0);
    while (true) {
        std::size_t i = 0;
        while (i < coeff.size() && ++coeff[i] == p) coeff[i++] = 0;
        if (i == coeff.size()) return true;
        Vector acc(vs.front().size(), 0);
        for (std::size_t j = 0; j < vs.size(); ++j)
            for (std::size_t c = 0; c < acc.size(); ++c) acc[c] = static_cast<std::uint8_t>((acc[c] + coeff[j] * vs[j][c]) % p);
        if (is_zero(acc)) return false;
    }
}

}  // namespace

TEST_CASE("field elements reject composite moduli and do modular arithmetic") {
    CHECK_THROWS_AS(FieldElement(1, 4), DomainError);
    CHECK_THROWS_AS(FieldElement(1, 1), DomainError);
    FieldElement a(2, 5), b(4, 5);
    CHECK((a + b).value() == 1);
    CHECK((a - b).value() == 3);
    CHECK((a * b).value() == 3);
    CHECK((a / b).value() == 3);  // 2 * 4^{-1} = 2 * 4 = 8 = 3
    CHECK((-a).value() == 3);
    CHECK((a * a.inverse()).value() == 1);
    CHECK_THROWS_AS(a + FieldElement(1, 3), DomainError);
    CHECK_THROWS_AS(FieldElement(0, 7).inverse(), DomainError);
}

TEST_CASE("rref examples") {
    SUBCASE("identity over GF(2) is already reduced") {
        auto r = rref(Matrix::identity(2, 3));
        CHECK(r.rank == 3);
        CHECK(r.matrix == Matrix::identity(2, 3));
    }
    SUBCASE("third row is the sum of the first two") {
        auto m = Matrix::parse(2, "1100\n0110\n1010\n");
        auto r = rref(m);
        CHECK(r.rank == 2);
        CHECK(r.matrix.row_strings() == std::vector<std::string>{"1010", "0110"});
    }
    SUBCASE("rows 12 and 21 over GF(3) are proportional") {
        // 2 * (1,2) = (2,4) = (2,1), so the determinant vanishes mod 3.
        auto r = rref(Matrix::parse(3, "12\n21\n"));
        CHECK(r.rank == 1);
        CHECK(r.matrix.row_strings() == std::vector<std::string>{"12"});
    }
    SUBCASE("rows 12 and 11 over GF(3) are invertible") {
        auto r = rref(Matrix::parse(3, "12\n11\n"));
        CHECK(r.rank == 2);
        CHECK(r.matrix.row_strings() == std::vector<std::string>{"10", "01"});
    }
    SUBCASE("empty matrix") {
        auto r = rref(Matrix(5, 0, 4));
        CHECK(r.rank == 0);
        CHECK(r.matrix.rows() == 0);
    }
}

TEST_CASE("kernel examples") {
    CHECK(kernel(Matrix(2, 2, 3)) == Matrix::identity(2, 3));
    CHECK(kernel(Matrix::identity(2, 3)).rows() == 0);

    const auto k = kernel(Matrix::parse(2, "1111"));
    CHECK(k.rows() == 3);
    std::set<Vector> expected;
    for (const auto& v : all_vectors(2, 4))
        if ((v[0] + v[1] + v[2] + v[3]) % 2 == 0) expected.insert(v);
    CHECK(row_space(k) == expected);
    for (std::size_t r = 0; r < k.rows(); ++r) {
        unsigned weight = 0;
        for (auto x : k.row(r)) weight += x;
        CHECK(weight % 2 == 0);
    }
}

TEST_CASE("m-independence examples") {
    auto x = Matrix::parse(2, "1000\n0100\n0010\n0001\n1111\n");
    CHECK(is_m_independent(x, 4));
    CHECK_FALSE(is_m_independent(x, 5));
    CHECK_FALSE(is_m_independent(Matrix::parse(2, "100\n010\n110\n"), 3));
    CHECK_THROWS_AS(is_m_independent(Matrix::parse(2, "100\n010\n"), 3), DomainError);
}

TEST_CASE("row_combination and apply") {
    auto rows = Matrix::parse(3, "110\n012\n");
    // c1*(1,1,0) + c2*(0,1,2) = (c1, c1+c2, 2*c2)
    CHECK_FALSE(row_combination(rows, Vector{1, 2, 1}).has_value());
    auto c = row_combination(rows, Vector{2, 1, 1});
    REQUIRE(c.has_value());
    CHECK(*c == Vector{2, 2});
    CHECK(apply(Vector{2, 2}, rows) == Vector{2, 1, 1});
}

TEST_CASE("property: rref, kernel and rank agree with brute-force oracles") {
    std::mt19937_64 rng(20240501);
    for (unsigned p : {2u, 3u, 5u}) {
        for (int trial = 0; trial < 60; ++trial) {
            const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
            const Matrix m = random_matrix(rng, p, rows, cols);
            const auto r = rref(m);

            CHECK(rref(r.matrix).matrix == r.matrix);  // idempotent
            CHECK(row_space(r.matrix) == row_space(m));
            for (std::size_t i = 1; i < r.pivots.size(); ++i) CHECK(r.pivots[i - 1] < r.pivots[i]);
            for (std::size_t i = 0; i < r.rank; ++i) {
                CHECK(r.matrix.get(i, r.pivots[i]) == 1);
                for (std::size_t j = 0; j < r.rank; ++j)
                    if (j != i) CHECK(r.matrix.get(j, r.pivots[i]) == 0);
            }

            const Matrix k = kernel(m);
            CHECK(r.rank + k.rows() == cols);
            std::set<Vector> null;
            for (const auto& v : all_vectors(p, cols))
                if (is_zero(apply(v, m.transpose()))) null.insert(v);
            CHECK(row_space(k) == null);

            // equal RREF iff equal row spaces
            const Matrix other = random_matrix(rng, p, rows, cols);
            CHECK((rref(other).matrix == r.matrix) == (row_space(other) == row_space(m)));
        }
    }
}

TEST_CASE("property: is_m_independent agrees with exhaustive combination search") {
    std::mt19937_64 rng(7);
    for (unsigned p : {2u, 3u}) {
        for (int trial = 0; trial < 40; ++trial) {
            const std::size_t count = 2 + rng() % 4, dim = 2 + rng() % 3;
            const Matrix m = random_matrix(rng, p, count, dim);
            for (std::size_t mm = 1; mm <= std::min(count, dim); ++mm) {
                bool expected = true;
                // all mm-subsets via bitmask
                for (unsigned mask = 0; mask < (1u << count); ++mask) {
                    if (static_cast<std::size_t>(__builtin_popcount(mask)) != mm) continue;
                    std::vector<Vector> sub;
                    for (std::size_t i = 0; i < count; ++i)
                        if (mask >> i & 1) sub.push_back(m.row_vector(i));
                    if (!brute_independent(sub, p)) expected = false;
                }
                CHECK(is_m_independent(m, mm) == expected);
            }
        }
    }
}

TEST_CASE("text round trip uses base-p digits") {
    auto m = Matrix::parse(5, "0143\n2200\n");
    CHECK(m.to_text() == "0143\n2200\n");
    CHECK_THROWS_AS(Matrix::parse(3, "0130"), DomainError);
    CHECK(normalized(Vector{0, 2, 1}, 3) == Vector{0, 1, 2});
}
