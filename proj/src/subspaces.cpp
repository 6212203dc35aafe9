#include "grassmann/subspaces.hpp"

#include <algorithm>

#include "grassmann/errors.hpp"

namespace grassmann {

namespace {

void require_same_ambient(const Subspace& a, const Subspace& b) {
    if (a.modulus() != b.modulus() || a.ambient() != b.ambient())
        throw DomainError("subspaces live in different ambient spaces: GF(" + std::to_string(a.modulus()) + ")^" +
                          std::to_string(a.ambient()) + " vs GF(" + std::to_string(b.modulus()) + ")^" +
                          std::to_string(b.ambient()));
}

bool is_rref(const Matrix& m) {
    const auto reduced = rref(m);
    return reduced.rank == m.rows() && reduced.matrix == m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Subspace

Subspace Subspace::zero(unsigned p, std::size_t n) { return Subspace(Matrix(p, 0, n), {}); }

Subspace Subspace::full(unsigned p, std::size_t n) {
    std::vector<std::size_t> pivots(n);
    for (std::size_t i = 0; i < n; ++i) pivots[i] = i;
    return Subspace(Matrix::identity(p, n), std::move(pivots));
}

Subspace Subspace::span(const Matrix& rows) {
    auto reduced = rref(rows);
    return Subspace(std::move(reduced.matrix), std::move(reduced.pivots));
}

Subspace Subspace::span(unsigned p, std::size_t n, std::span<const Vector> vectors) {
    return span(Matrix::from_rows(p, n, vectors));
}

Subspace Subspace::from_canonical(const Matrix& basis) {
    if (!is_rref(basis)) throw DomainError("basis is not in reduced row echelon form");
    return span(basis);
}

bool Subspace::contains(std::span<const std::uint8_t> v) const { return is_zero(reduce(v)); }

Vector Subspace::reduce(std::span<const std::uint8_t> v) const {
    if (v.size() != ambient()) throw DomainError("vector length does not match ambient dimension");
    const unsigned p = modulus();
    Vector out(v.begin(), v.end());
    for (std::size_t r = 0; r < dim(); ++r) {
        const unsigned f = out[pivots_[r]];
        if (f == 0) continue;
        const unsigned neg = p - f;
        auto row = basis_.row(r);
        for (std::size_t c = 0; c < out.size(); ++c) out[c] = static_cast<std::uint8_t>((out[c] + neg * row[c]) % p);
    }
    return out;
}

std::string Subspace::to_string() const {
    std::string s = "<";
    for (std::size_t r = 0; r < dim(); ++r) {
        if (r) s += ',';
        s += to_digits(basis_.row(r));
    }
    if (dim() == 0) s += std::string(ambient(), '0');
    s += '>';
    return s;
}

std::size_t Subspace::hash() const {
    std::size_t h = 1469598103934665603ull ^ (modulus() * 131 + ambient());
    for (auto x : basis_.data()) h = (h ^ x) * 1099511628211ull;
    return h ^ dim();
}

std::strong_ordering Subspace::operator<=>(const Subspace& other) const {
    if (auto c = modulus() <=> other.modulus(); c != 0) return c;
    if (auto c = ambient() <=> other.ambient(); c != 0) return c;
    if (auto c = dim() <=> other.dim(); c != 0) return c;
    const auto& a = basis_.data();
    const auto& b = other.basis_.data();
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

// ---------------------------------------------------------------------------
// Lattice operations

Subspace sum(const Subspace& a, const Subspace& b) {
    require_same_ambient(a, b);
    return Subspace::span(a.basis().stacked(b.basis()));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    require_same_ambient(a, b);
    // Zassenhaus: rows [a|a] and [b|0]; rows with a zero left half span a ∩ b.
    const std::size_t n = a.ambient();
    const unsigned p = a.modulus();
    Matrix m(p, 0, 2 * n);
    Vector row(2 * n, 0);
    for (std::size_t r = 0; r < a.dim(); ++r) {
        auto src = a.basis().row(r);
        std::copy(src.begin(), src.end(), row.begin());
        std::copy(src.begin(), src.end(), row.begin() + static_cast<std::ptrdiff_t>(n));
        m.append_row(row);
    }
    for (std::size_t r = 0; r < b.dim(); ++r) {
        auto src = b.basis().row(r);
        std::copy(src.begin(), src.end(), row.begin());
        std::fill(row.begin() + static_cast<std::ptrdiff_t>(n), row.end(), 0);
        m.append_row(row);
    }
    const auto reduced = rref(m);
    Matrix meet(p, 0, n);
    for (std::size_t r = 0; r < reduced.rank; ++r) {
        if (reduced.pivots[r] < n) continue;
        auto full = reduced.matrix.row(r);
        meet.append_row(full.subspan(n, n));
    }
    return Subspace::span(meet);
}

Subspace sum(std::span<const Subspace> parts) {
    if (parts.empty()) throw DomainError("sum of an empty list has no ambient space");
    Subspace acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = sum(acc, parts[i]);
    return acc;
}

Subspace intersect(std::span<const Subspace> parts) {
    if (parts.empty()) throw DomainError("intersection of an empty list has no ambient space");
    Subspace acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = intersect(acc, parts[i]);
    return acc;
}

bool contains(const Subspace& a, const Subspace& b) {
    require_same_ambient(a, b);
    if (b.dim() > a.dim()) return false;
    for (std::size_t r = 0; r < b.dim(); ++r)
        if (!a.contains(b.basis().row(r))) return false;
    return true;
}

Subspace annihilator(const Subspace& s) {
    if (s.dim() == 0) return Subspace::full(s.modulus(), s.ambient());
    return Subspace::span(kernel(s.basis()));
}

LawVerdict annihilator_laws(std::span<const Subspace> parts) {
    LawVerdict verdict;
    if (parts.empty()) return verdict;
    std::vector<Subspace> duals;
    duals.reserve(parts.size());
    for (const auto& s : parts) duals.push_back(annihilator(s));

    if (annihilator(sum(parts)) != intersect(duals)) {
        verdict.pass = false;
        verdict.failed_law = "annihilator of sum equals intersection of annihilators";
    } else if (annihilator(intersect(parts)) != sum(duals)) {
        verdict.pass = false;
        verdict.failed_law = "annihilator of intersection equals sum of annihilators";
    }
    if (!verdict.pass) verdict.counterexample.assign(parts.begin(), parts.end());
    return verdict;
}

// ---------------------------------------------------------------------------
// Quotients

namespace {

std::vector<std::size_t> free_columns_of(const Subspace& sub) {
    std::vector<bool> pivot(sub.ambient(), false);
    for (auto c : sub.pivots()) pivot[c] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < sub.ambient(); ++c)
        if (!pivot[c]) free.push_back(c);
    return free;
}

Vector lift_vector(std::span<const std::uint8_t> coords, const std::vector<std::size_t>& free, std::size_t n) {
    Vector v(n, 0);
    for (std::size_t i = 0; i < free.size(); ++i) v[free[i]] = coords[i];
    return v;
}

}  // namespace

Vector quotient_vector(std::span<const std::uint8_t> v, const Subspace& sub) {
    const Vector r = sub.reduce(v);
    Vector out;
    out.reserve(sub.ambient() - sub.dim());
    for (auto c : free_columns_of(sub)) out.push_back(r[c]);
    return out;
}

Subspace quotient_push(const Subspace& s, const Subspace& sub) {
    if (!contains(s, sub)) throw DomainError("quotient_push: " + sub.to_string() + " is not contained in " + s.to_string());
    const auto free = free_columns_of(sub);
    Matrix rows(s.modulus(), 0, free.size());
    for (std::size_t r = 0; r < s.dim(); ++r) {
        const Vector red = sub.reduce(s.basis().row(r));
        Vector q;
        q.reserve(free.size());
        for (auto c : free) q.push_back(red[c]);
        rows.append_row(q);
    }
    return Subspace::span(rows);
}

Subspace quotient_lift(const Subspace& x, const Subspace& sub) {
    if (x.modulus() != sub.modulus() || x.ambient() + sub.dim() != sub.ambient())
        throw DomainError("quotient_lift: subspace does not live in the quotient model");
    const auto free = free_columns_of(sub);
    Matrix rows = sub.basis();
    for (std::size_t r = 0; r < x.dim(); ++r) rows.append_row(lift_vector(x.basis().row(r), free, sub.ambient()));
    return Subspace::span(rows);
}

// ---------------------------------------------------------------------------
// Counting and enumeration

std::uint64_t binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    unsigned __int128 r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return static_cast<std::uint64_t>(r);
}

std::uint64_t gaussian_binomial(unsigned n, unsigned k, unsigned q) {
    if (k > n) return 0;
    auto qpow = [q](unsigned e) {
        unsigned __int128 r = 1;
        for (unsigned i = 0; i < e; ++i) r *= q;
        return r;
    };
    // After step t the accumulator equals [n choose t]_q, so every division is exact.
    unsigned __int128 r = 1;
    for (unsigned i = 0; i < k; ++i) r = r * (qpow(n - i) - 1) / (qpow(i + 1) - 1);
    return static_cast<std::uint64_t>(r);
}

std::vector<Subspace> grassmannian(unsigned p, std::size_t n, std::size_t k) {
    require_supported_prime(p);
    if (k > n) return {};
    std::vector<Subspace> out;
    std::vector<std::size_t> piv(k);
    for (std::size_t i = 0; i < k; ++i) piv[i] = i;

    while (true) {
        std::vector<bool> is_piv(n, false);
        for (auto c : piv) is_piv[c] = true;
        std::vector<std::pair<std::size_t, std::size_t>> free;
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = piv[r] + 1; c < n; ++c)
                if (!is_piv[c]) free.emplace_back(r, c);

        Matrix m(p, k, n);
        for (std::size_t r = 0; r < k; ++r) m.set(r, piv[r], 1);
        std::vector<unsigned> digits(free.size(), 0);
        while (true) {
            for (std::size_t i = 0; i < free.size(); ++i) m.set(free[i].first, free[i].second, digits[i]);
            out.push_back(Subspace::from_canonical(m));
            std::size_t i = 0;
            while (i < digits.size() && ++digits[i] == p) digits[i++] = 0;
            if (i == digits.size()) break;
        }

        std::size_t pos = k;
        while (pos > 0 && piv[pos - 1] == n - k + (pos - 1)) --pos;
        if (pos == 0) break;
        ++piv[pos - 1];
        for (std::size_t j = pos; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// ParabolicInterval

ParabolicInterval::ParabolicInterval(Subspace lower, Subspace upper, std::size_t k)
    : lower_(std::move(lower)),
      upper_(std::move(upper)),
      k_(k),
      model_basis_(lower_.modulus(), 0, 0) {
    if (!contains(upper_, lower_))
        throw DomainError("parabolic interval needs lower ⊆ upper, got " + lower_.to_string() + " and " +
                          upper_.to_string());
    const Subspace pushed = quotient_push(upper_, lower_);
    model_basis_ = pushed.basis();
    model_pivots_ = pushed.pivots();
    free_columns_ = free_columns_of(lower_);
}

bool ParabolicInterval::spans_between(const Subspace& p) const {
    return contains(p, lower_) && contains(upper_, p);
}

Vector ParabolicInterval::embed_vector(std::span<const std::uint8_t> coords) const {
    if (coords.size() != model_dim()) throw DomainError("coordinate vector does not match interval model dimension");
    const unsigned p = lower_.modulus();
    Vector q(model_basis_.cols(), 0);
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] == 0) continue;
        auto row = model_basis_.row(i);
        for (std::size_t c = 0; c < q.size(); ++c) q[c] = static_cast<std::uint8_t>((q[c] + coords[i] * row[c]) % p);
    }
    return lift_vector(q, free_columns_, lower_.ambient());
}

Subspace ParabolicInterval::embed(const Subspace& x) const {
    if (x.modulus() != lower_.modulus() || x.ambient() != model_dim())
        throw DomainError("subspace does not live in the interval model");
    Matrix rows = lower_.basis();
    for (std::size_t r = 0; r < x.dim(); ++r) rows.append_row(embed_vector(x.basis().row(r)));
    return Subspace::span(rows);
}

Subspace ParabolicInterval::pull(const Subspace& p) const {
    if (!spans_between(p)) throw DomainError("subspace " + p.to_string() + " is not inside the interval");
    Matrix rows(lower_.modulus(), 0, model_dim());
    for (std::size_t r = 0; r < p.dim(); ++r) {
        const Vector q = quotient_vector(p.basis().row(r), lower_);
        Vector coords(model_dim(), 0);
        for (std::size_t i = 0; i < model_pivots_.size(); ++i) coords[i] = q[model_pivots_[i]];
        rows.append_row(coords);
    }
    return Subspace::span(rows);
}

std::vector<Subspace> ParabolicInterval::members() const {
    if (k_ < lower_.dim() || k_ > upper_.dim()) return {};
    std::vector<Subspace> out;
    for (const auto& x : grassmannian(lower_.modulus(), model_dim(), k_ - lower_.dim())) out.push_back(embed(x));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Subspace> interval_members(const ParabolicInterval& interval) { return interval.members(); }

}  // namespace grassmann
