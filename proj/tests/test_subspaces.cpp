#include <random>
#include <set>

#include "doctest.h"
#include "grassmann/errors.hpp"
#include "grassmann/subspaces.hpp"

using namespace grassmann;

namespace {

Subspace sp(unsigned p, std::initializer_list<const char*> rows) {
    std::vector<std::string> r(rows.begin(), rows.end());
    return Subspace::span(Matrix::from_strings(p, r));
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

// Membership oracle: the set of vectors of a subspace, by enumeration.
std::set<Vector> points_of(const Subspace& s) {
    std::set<Vector> out;
    for (const auto& v : all_vectors(s.modulus(), s.ambient()))
        if (s.contains(v)) out.insert(v);
    return out;
}

std::vector<Subspace> all_subspaces(unsigned p, std::size_t n) {
    std::vector<Subspace> out;
    for (std::size_t k = 0; k <= n; ++k)
        for (auto& s : grassmannian(p, n, k)) out.push_back(s);
    return out;
}

}  // namespace

TEST_CASE("span examples") {
    auto a = sp(2, {"1000", "0100"});
    CHECK(a.dim() == 2);
    CHECK(a.basis().row_strings() == std::vector<std::string>{"1000", "0100"});
    CHECK(sp(2, {"1100", "0100"}) == a);
    auto z = Subspace::span(2, 4, std::vector<Vector>{});
    CHECK(z.dim() == 0);
    CHECK(z == Subspace::zero(2, 4));
    CHECK_THROWS_AS(Subspace::span(2, 4, std::vector<Vector>{Vector{1, 0, 0}}), DomainError);
}

TEST_CASE("from_canonical rejects non-reduced input") {
    CHECK_THROWS_AS(Subspace::from_canonical(Matrix::parse(2, "1100\n0100\n")), DomainError);
    CHECK_NOTHROW(Subspace::from_canonical(Matrix::parse(2, "1000\n0100\n")));
}

TEST_CASE("sum, intersection and containment examples") {
    auto a = sp(2, {"1000", "0100"});
    auto b = sp(2, {"0100", "0010"});
    CHECK(sum(a, b).dim() == 3);
    CHECK(intersect(a, b) == sp(2, {"0100"}));
    CHECK(sum(a, a) == a);
    CHECK(intersect(a, a) == a);
    auto c = sp(2, {"0010", "0001"});
    CHECK(intersect(a, c).dim() == 0);
    CHECK(sum(a, c) == Subspace::full(2, 4));
    CHECK(contains(sum(a, b), a));
    CHECK_FALSE(contains(a, b));
    CHECK_THROWS_AS(sum(a, Subspace::zero(2, 3)), DomainError);
    CHECK_THROWS_AS(intersect(a, Subspace::zero(3, 4)), DomainError);
}

TEST_CASE("annihilator examples") {
    CHECK(annihilator(sp(2, {"1000", "0100"})) == sp(2, {"0010", "0001"}));
    CHECK(annihilator(Subspace::zero(2, 4)) == Subspace::full(2, 4));
    std::set<Vector> even;
    for (const auto& v : all_vectors(2, 4))
        if ((v[0] + v[1] + v[2] + v[3]) % 2 == 0) even.insert(v);
    const auto ann = annihilator(sp(2, {"1111"}));
    CHECK(ann.dim() == 3);
    CHECK(points_of(ann) == even);
}

TEST_CASE("annihilator laws") {
    CHECK(annihilator_laws(std::vector{sp(3, {"120"})}).pass);

    const auto planes = grassmannian(2, 4, 2);
    REQUIRE(planes.size() == 35);
    std::size_t checked = 0;
    for (const auto& a : planes)
        for (const auto& b : planes) {
            CHECK(annihilator_laws(std::vector{a, b}).pass);
            ++checked;
        }
    CHECK(checked == 35 * 35);

    const auto points = grassmannian(3, 3, 1);
    REQUIRE(points.size() == 13);
    bool all = true;
    for (const auto& a : points)
        for (const auto& b : points)
            for (const auto& c : points) all = all && annihilator_laws(std::vector{a, b, c}).pass;
    CHECK(all);
}

TEST_CASE("property: lattice operations against the membership oracle") {
    for (auto [p, n] : {std::pair{2u, std::size_t{4}}, std::pair{3u, std::size_t{3}}}) {
        const auto subs = all_subspaces(p, n);
        for (const auto& a : subs) {
            CHECK(annihilator(annihilator(a)) == a);
            CHECK(annihilator(a).dim() == n - a.dim());
            for (const auto& b : subs) {
                const auto s = sum(a, b), i = intersect(a, b);
                CHECK(a.dim() + b.dim() == s.dim() + i.dim());
                std::set<Vector> pa = points_of(a), pb = points_of(b), meet;
                for (const auto& v : pa)
                    if (pb.count(v)) meet.insert(v);
                CHECK(points_of(i) == meet);
                CHECK(contains(a, b) == std::includes(pa.begin(), pa.end(), pb.begin(), pb.end()));
                // inclusion reversing
                CHECK(contains(b, a) == contains(annihilator(a), annihilator(b)));
            }
        }
    }
}

TEST_CASE("canonical value equality matches equality of point sets") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const unsigned p = trial % 2 ? 3 : 2;
        Matrix a(p, 2, 3), b(p, 2, 3);
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 3; ++c) {
                a.set(r, c, rng() % p);
                b.set(r, c, rng() % p);
            }
        CHECK((Subspace::span(a) == Subspace::span(b)) == (points_of(Subspace::span(a)) == points_of(Subspace::span(b))));
    }
}

TEST_CASE("quotient push and lift") {
    auto s = sp(2, {"1000"});
    auto pushed = quotient_push(sp(2, {"1000", "0100"}), s);
    CHECK(pushed.ambient() == 3);
    CHECK(pushed.dim() == 1);
    CHECK(pushed == sp(2, {"100"}));
    CHECK(quotient_lift(Subspace::zero(2, 3), s) == s);
    CHECK_THROWS_AS(quotient_push(sp(2, {"0100"}), s), DomainError);

    // exhaustive round trips for every 1-dim S in GF(2)^4
    for (const auto& line : grassmannian(2, 4, 1)) {
        for (const auto& x : grassmannian(2, 3, 2)) {
            const auto lifted = quotient_lift(x, line);
            CHECK(lifted.dim() == 3);
            CHECK(contains(lifted, line));
            CHECK(quotient_push(lifted, line) == x);
        }
        for (const auto& big : grassmannian(2, 4, 2))
            if (contains(big, line)) CHECK(quotient_lift(quotient_push(big, line), line) == big);
    }
}

TEST_CASE("gaussian binomials and interval members") {
    CHECK(gaussian_binomial(4, 2, 2) == 35);
    CHECK(gaussian_binomial(3, 1, 2) == 7);
    CHECK(gaussian_binomial(4, 2, 3) == 130);
    CHECK(gaussian_binomial(5, 2, 2) == 155);
    CHECK(gaussian_binomial(6, 3, 2) == 1395);
    CHECK(binomial(5, 2) == 10);

    for (auto [p, n] : {std::pair{2u, std::size_t{4}}, std::pair{3u, std::size_t{3}}, std::pair{2u, std::size_t{5}}})
        for (std::size_t k = 0; k <= n; ++k)
            CHECK(grassmannian(p, n, k).size() == gaussian_binomial(static_cast<unsigned>(n), static_cast<unsigned>(k), p));

    const auto full = ParabolicInterval(Subspace::zero(2, 4), Subspace::full(2, 4), 2);
    CHECK(full.members().size() == 35);
    CHECK(full.members() == grassmannian(2, 4, 2));

    const auto star = ParabolicInterval(sp(2, {"1000"}), Subspace::full(2, 4), 2);
    CHECK(star.members().size() == 7);
    const auto top = ParabolicInterval(Subspace::zero(2, 4), sp(2, {"1000", "0100", "0010"}), 2);
    CHECK(top.members().size() == 7);
    for (const auto& m : top.members()) CHECK(top.spans_between(m));

    CHECK(ParabolicInterval(sp(2, {"1000"}), Subspace::full(2, 4), 0).members().empty());
    CHECK_THROWS_AS(ParabolicInterval(sp(2, {"1000"}), sp(2, {"0100", "0010"}), 2), DomainError);
}

TEST_CASE("interval members match a filter over the whole Grassmannian") {
    const auto planes = grassmannian(3, 4, 2);
    for (const auto& lower : grassmannian(3, 4, 1)) {
        const auto upper = sum(lower, sp(3, {"0110", "0012"}));
        if (upper.dim() != 3) continue;
        ParabolicInterval iv(lower, upper, 2);
        std::vector<Subspace> expected;
        for (const auto& pl : planes)
            if (contains(pl, lower) && contains(upper, pl)) expected.push_back(pl);
        CHECK(iv.members() == expected);
        CHECK(expected.size() == gaussian_binomial(2, 1, 3));
        for (const auto& m : expected) CHECK(iv.embed(iv.pull(m)) == m);
    }
}

TEST_CASE("interval embedding preserves Grassmann distance") {
    // [S,U]_3 inside GF(2)^6 with dim S = 1, dim U = 5: model dimension 4
    const auto lower = sp(2, {"100000"});
    const auto upper = sp(2, {"100000", "010000", "001000", "000100", "000011"});
    ParabolicInterval iv(lower, upper, 3);
    const auto model = grassmannian(2, 4, 2);
    for (const auto& x : model)
        for (const auto& y : model) {
            const auto dx = 2 - intersect(x, y).dim();
            const auto ex = iv.embed(x), ey = iv.embed(y);
            CHECK(ex.dim() == 3);
            CHECK(3 - intersect(ex, ey).dim() == dx);
        }
}
