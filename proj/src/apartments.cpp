#include "grassmann/apartments.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>

#include "grassmann/errors.hpp"

namespace grassmann {

namespace {

constexpr std::size_t kSmall = 16;

// Rank of up to kSmall vectors of length up to kSmall, without allocation.
std::size_t small_rank(const Vector* const* rows, std::size_t count, std::size_t len, unsigned p) {
    std::array<std::array<std::uint8_t, kSmall>, kSmall> m{};
    for (std::size_t r = 0; r < count; ++r)
        for (std::size_t c = 0; c < len; ++c) m[r][c] = (*rows[r])[c];
    std::size_t rank = 0;
    for (std::size_t c = 0; c < len && rank < count; ++c) {
        std::size_t piv = rank;
        while (piv < count && m[piv][c] == 0) ++piv;
        if (piv == count) continue;
        std::swap(m[piv], m[rank]);
        const unsigned inv = inverse_mod(m[rank][c], p);
        for (std::size_t r = rank + 1; r < count; ++r) {
            if (m[r][c] == 0) continue;
            const unsigned f = (m[r][c] * inv) % p;
            for (std::size_t cc = c; cc < len; ++cc)
                m[r][cc] = static_cast<std::uint8_t>((m[r][cc] + (p - f) * m[rank][cc]) % p);
        }
        ++rank;
    }
    return rank;
}

std::size_t rank_of(std::span<const Vector* const> rows, std::size_t len, unsigned p) {
    if (rows.size() <= kSmall && len <= kSmall) return small_rank(rows.data(), rows.size(), len, p);
    Matrix m(p, 0, len);
    for (const Vector* r : rows) m.append_row(*r);
    return rank(m);
}

// Calls f on every size-t subset of {0..n-1} given as ascending indices.
template <typename F>
bool for_each_combination(int n, int t, F&& f) {
    if (t < 0 || t > n) return true;
    std::vector<int> idx(t);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        if (!f(idx)) return false;
        int pos = t;
        while (pos > 0 && idx[pos - 1] == n - t + pos - 1) --pos;
        if (pos == 0) return true;
        ++idx[pos - 1];
        for (int j = pos; j < t; ++j) idx[j] = idx[j - 1] + 1;
    }
}

IndexedFamily span_family(unsigned p, std::size_t ambient, std::span<const Vector> x, int k) {
    IndexedFamily fam;
    fam.p = p;
    fam.ambient = ambient;
    fam.n = static_cast<int>(x.size());
    fam.k = k;
    fam.index = k_subsets(fam.n, k);
    fam.generators.assign(x.begin(), x.end());
    fam.members.reserve(fam.index.size());
    for (const auto& a : fam.index) {
        std::vector<Vector> rows;
        for (int i : a.elements()) rows.push_back(x[i - 1]);
        fam.members.push_back(Subspace::span(p, ambient, rows));
    }
    return fam;
}

void require_vectors(unsigned p, std::span<const Vector> x) {
    require_supported_prime(p);
    if (x.empty()) throw DomainError("expected a nonempty vector family");
    for (const auto& v : x) {
        if (v.size() != x.front().size()) throw DomainError("vectors of the family have different lengths");
        for (auto c : v)
            if (c >= p) throw DomainError("vector entry out of range for GF(" + std::to_string(p) + ")");
    }
}

std::string describe_subset(const std::vector<int>& ids) {
    std::string s = "{";
    for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? "," : "") + std::to_string(ids[i] + 1);
    return s + "}";
}

void require_mask_size(const IndexedFamily& f) {
    if (f.size() > 64) throw DomainError("families above 64 members are not supported here");
}

}  // namespace

// ---------------------------------------------------------------------------
// Frames and families

Frame::Frame(unsigned p, std::vector<Vector> vectors) : p_(p) {
    require_vectors(p, vectors);
    const std::size_t n = vectors.front().size();
    if (vectors.size() != n) throw DomainError("a frame needs exactly n vectors in GF(p)^n");
    if (rank(Matrix::from_rows(p, n, vectors)) != n) throw DomainError("frame vectors are linearly dependent");
    points_.reserve(n);
    for (const auto& v : vectors) points_.push_back(normalized(v, p));
}

Frame Frame::canonical() const {
    Frame f = *this;
    std::sort(f.points_.begin(), f.points_.end());
    return f;
}

int IndexedFamily::id_of(const KSubset& a) const {
    auto it = std::lower_bound(index.begin(), index.end(), a);
    if (it == index.end() || *it != a) throw DomainError("index set is not a k-subset of this family");
    return static_cast<int>(it - index.begin());
}

std::optional<int> IndexedFamily::find(const Subspace& s) const {
    for (int i = 0; i < size(); ++i)
        if (members[i] == s) return i;
    return std::nullopt;
}

std::uint64_t IndexedFamily::full_mask() const {
    require_mask_size(*this);
    return size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size()) - 1;
}

Apartment apartment_from_frame(const Frame& frame, int k) {
    const int n = static_cast<int>(frame.dim());
    if (k < 1 || k > n - 1) throw DomainError("apartments need 1 <= k <= n-1");
    return Apartment{frame, span_family(frame.modulus(), frame.dim(), frame.points(), k)};
}

Apartment apartment_containing(const Subspace& s, const Subspace& u) {
    if (s.dim() != u.dim() || s.ambient() != u.ambient() || s.modulus() != u.modulus())
        throw DomainError("apartment_containing needs two k-subspaces of one space");
    const unsigned p = s.modulus();
    const std::size_t n = s.ambient();
    if (s.dim() == 0 || s.dim() >= n) throw DomainError("apartments need 1 <= k <= n-1");

    // Basis adapted to s∩u ⊆ s, u ⊆ V.
    Matrix basis(p, 0, n);
    auto extend = [&](const Matrix& source) {
        for (std::size_t r = 0; r < source.rows(); ++r) {
            Matrix trial = basis;
            trial.append_row(source.row(r));
            if (rank(trial) == trial.rows()) basis = std::move(trial);
        }
    };
    extend(intersect(s, u).basis());
    extend(s.basis());
    extend(u.basis());
    extend(Matrix::identity(p, n));
    return apartment_from_frame(Frame(p, basis.row_vectors()), static_cast<int>(s.dim()));
}

std::vector<Vector> projective_points(unsigned p, std::size_t d) {
    std::vector<Vector> out;
    for (const auto& line : grassmannian(p, d, 1)) out.push_back(line.representative());
    std::sort(out.begin(), out.end());
    return out;
}

void for_each_independent_point_set(const std::vector<Vector>& points, unsigned p, int n, int m,
                                    std::uint64_t budget,
                                    const std::function<bool(const std::vector<int>&)>& visit) {
    if (n < 0 || m < 0) throw DomainError("negative set size");
    const std::size_t len = points.empty() ? 0 : points.front().size();
    std::vector<int> chosen;
    std::vector<const Vector*> rows;
    std::uint64_t visited = 0;
    bool stop = false;

    // True iff every subset of size min(m, |chosen|+1) that contains c is independent.
    auto compatible = [&](int c) {
        const int t = std::min<int>(m, static_cast<int>(chosen.size()) + 1);
        if (t == 0) return true;
        return for_each_combination(static_cast<int>(chosen.size()), t - 1, [&](const std::vector<int>& sub) {
            rows.clear();
            for (int s : sub) rows.push_back(&points[chosen[s]]);
            rows.push_back(&points[c]);
            return rank_of(rows, len, p) == static_cast<std::size_t>(t);
        });
    };

    std::function<void(int)> grow = [&](int start) {
        if (stop) return;
        if (static_cast<int>(chosen.size()) == n) {
            if (++visited > budget)
                throw ResourceError("point-set enumeration exceeded its budget of " + std::to_string(budget));
            if (!visit(chosen)) stop = true;
            return;
        }
        const int need = n - static_cast<int>(chosen.size());
        for (int c = start; c + need <= static_cast<int>(points.size()) && !stop; ++c) {
            if (!compatible(c)) continue;
            chosen.push_back(c);
            grow(c + 1);
            chosen.pop_back();
        }
    };
    grow(0);
}

std::vector<Apartment> all_apartments(unsigned p, std::size_t n, int k, std::uint64_t budget) {
    require_supported_prime(p);
    if (k < 1 || k > static_cast<int>(n) - 1) throw DomainError("apartments need 1 <= k <= n-1");
    const auto points = projective_points(p, n);
    std::vector<Apartment> out;
    for_each_independent_point_set(points, p, static_cast<int>(n), static_cast<int>(n), budget,
                                   [&](const std::vector<int>& ids) {
                                       std::vector<Vector> vs;
                                       for (int i : ids) vs.push_back(points[i]);
                                       out.push_back(apartment_from_frame(Frame(p, std::move(vs)), k));
                                       return true;
                                   });
    return out;
}

Frame random_frame(unsigned p, std::size_t n, std::mt19937_64& rng) {
    require_supported_prime(p);
    std::uniform_int_distribution<unsigned> d(0, p - 1);
    while (true) {
        std::vector<Vector> rows(n, Vector(n));
        for (auto& r : rows)
            for (auto& c : r) c = static_cast<std::uint8_t>(d(rng));
        if (rank(Matrix::from_rows(p, n, rows)) == n) return Frame(p, std::move(rows));
    }
}

std::optional<std::vector<int>> dependent_subset(std::span<const Vector> vectors, unsigned p, int m) {
    if (vectors.empty()) return std::nullopt;
    const std::size_t len = vectors.front().size();
    std::optional<std::vector<int>> bad;
    std::vector<const Vector*> rows;
    for_each_combination(static_cast<int>(vectors.size()), m, [&](const std::vector<int>& sub) {
        rows.clear();
        for (int s : sub) rows.push_back(&vectors[s]);
        if (rank_of(rows, len, p) == static_cast<std::size_t>(m)) return true;
        bad = sub;
        return false;
    });
    return bad;
}

IndexedFamily j_family_from_vectors(unsigned p, std::span<const Vector> x, int k) {
    require_vectors(p, x);
    const int n = static_cast<int>(x.size());
    if (k < 1 || n < 2 * k) throw DomainError("span families need k >= 1 and n >= 2k");
    if (static_cast<int>(x.front().size()) < 2 * k) throw DomainError("ambient dimension is below 2k");
    if (auto bad = dependent_subset(x, p, 2 * k))
        throw DomainError("family is not " + std::to_string(2 * k) + "-independent: vectors " + describe_subset(*bad) +
                          " are dependent");
    return span_family(p, x.front().size(), x, k);
}

IndexedFamily j_family_dual(unsigned p, std::span<const Vector> y, int k) {
    require_vectors(p, y);
    const int n = static_cast<int>(y.size());
    if (k < 1 || n < 2 * k) throw DomainError("dual families need k >= 1 and n >= 2k");
    if (static_cast<int>(y.front().size()) < 2 * k) throw DomainError("ambient dimension is below 2k");
    if (auto bad = dependent_subset(y, p, 2 * k))
        throw DomainError("dual family is not " + std::to_string(2 * k) + "-independent: vectors " +
                          describe_subset(*bad) + " are dependent");
    IndexedFamily fam = span_family(p, y.front().size(), y, k);
    for (auto& m : fam.members) m = annihilator(m);
    fam.dual = true;
    return fam;
}

// ---------------------------------------------------------------------------
// Special and complement subsets

namespace {

std::vector<MarkedSubset> marked(const IndexedFamily& family, MarkKind kind) {
    require_mask_size(family);
    std::vector<MarkedSubset> out;
    for (int i = 1; i <= family.n; ++i)
        for (int j = 1; j <= family.n; ++j) {
            if (i == j) continue;
            MarkedSubset m{kind, i, j, {}, 0};
            for (int id = 0; id < family.size(); ++id) {
                const auto& a = family.index[id];
                const bool in = kind == MarkKind::Special ? (a.contains(i) ? a.contains(j) : true)
                                                          : (a.contains(i) && !a.contains(j));
                if (in) {
                    m.members.push_back(id);
                    m.mask |= std::uint64_t{1} << id;
                }
            }
            out.push_back(std::move(m));
        }
    return out;
}

}  // namespace

std::vector<MarkedSubset> special_subsets(const IndexedFamily& family) { return marked(family, MarkKind::Special); }
std::vector<MarkedSubset> complement_subsets(const IndexedFamily& family) {
    return marked(family, MarkKind::Complement);
}

std::uint64_t a_of(int n, int k) {
    if (k < 2 || n < 2 * k) throw DomainError("a(n,k) needs n >= 2k >= 4");
    return binomial(n - 2, k - 2) + binomial(n - 1, k);
}

boost::rational<std::int64_t> b_of(int n, int k) {
    if (k < 2 || n <= 2 * k) throw DomainError("b(n,k) needs k >= 2 and n > 2k");
    return boost::rational<std::int64_t>(static_cast<std::int64_t>(binomial(2 * k - 1, k)) * n, k);
}

bool a_exceeds_b(int n, int k) { return boost::rational<std::int64_t>(static_cast<std::int64_t>(a_of(n, k))) > b_of(n, k); }

void require_complement_count_injective(int n, int k) {
    std::set<int> seen;
    for (int m = 0; m <= std::min(k, n - k); ++m)
        if (!seen.insert((k - m) * (n - k - m)).second)
            throw InvariantViolation("complement counts do not determine the distance for (n,k) = (" +
                                     std::to_string(n) + "," + std::to_string(k) + ")");
}

int distance_via_complements(const IndexedFamily& family, int member_p, int member_q) {
    if (member_p < 0 || member_q < 0 || member_p >= family.size() || member_q >= family.size())
        throw DomainError("member id out of range");
    const std::uint64_t both = (std::uint64_t{1} << member_p) | (std::uint64_t{1} << member_q);
    int count = 0;
    for (const auto& c : complement_subsets(family))
        if ((c.mask & both) == both) ++count;
    const int n = family.n, k = family.k;
    std::optional<int> found;
    for (int m = 0; m <= std::min(k, n - k); ++m)
        if ((k - m) * (n - k - m) == count) {
            if (found) throw InvariantViolation("complement count " + std::to_string(count) + " is ambiguous");
            found = m;
        }
    if (!found) throw InvariantViolation("complement count " + std::to_string(count) + " matches no distance");
    return *found;
}

// ---------------------------------------------------------------------------
// Inexactness

bool InexactAnalysis::is_inexact(std::uint64_t subset) const {
    return std::any_of(maximal.begin(), maximal.end(), [&](std::uint64_t m) { return (subset & ~m) == 0; });
}

std::optional<std::vector<Vector>> InexactAnalysis::witness_for(std::uint64_t subset) const {
    for (const auto& [mask, y] : witnesses)
        if ((subset & ~mask) == 0) return y;
    return std::nullopt;
}

namespace {

// Calls visit(mask, Y) for every (2k)-independent n-set Y with J_k(Y) != J,
// where mask is J ∩ J_k(Y). A member lies in J_k(Y) iff it contains at least
// k points of Y, since any k points of Y are independent.
void scan_replacements(const IndexedFamily& family, std::uint64_t budget, std::uint64_t& examined,
                       const std::function<bool(std::uint64_t, const std::vector<Vector>&)>& visit) {
    require_mask_size(family);
    if (family.dual) throw DomainError("inexactness is defined for span families");
    if (family.n < 2 * family.k) throw DomainError("inexactness needs n >= 2k");
    const auto points = projective_points(family.p, family.ambient);
    const std::uint64_t full = family.full_mask();
    std::vector<std::vector<bool>> holds(family.size(), std::vector<bool>(points.size()));
    for (int m = 0; m < family.size(); ++m)
        for (std::size_t q = 0; q < points.size(); ++q) holds[m][q] = family.members[m].contains(points[q]);

    for_each_independent_point_set(points, family.p, family.n, 2 * family.k, budget, [&](const std::vector<int>& ids) {
        ++examined;
        std::uint64_t mask = 0;
        for (int m = 0; m < family.size(); ++m) {
            int inside = 0;
            for (int q : ids) inside += holds[m][q];
            if (inside >= family.k) mask |= std::uint64_t{1} << m;
        }
        if (mask == full) return true;
        std::vector<Vector> y;
        for (int q : ids) y.push_back(points[q]);
        return visit(mask, y);
    });
}

}  // namespace

InexactAnalysis analyze_inexact(const IndexedFamily& family, std::uint64_t budget) {
    InexactAnalysis out;
    scan_replacements(family, budget, out.candidates, [&](std::uint64_t mask, const std::vector<Vector>& y) {
        out.witnesses.emplace(mask, y);
        return true;
    });
    for (const auto& [mask, y] : out.witnesses) {
        const bool dominated = std::any_of(out.witnesses.begin(), out.witnesses.end(), [&](const auto& other) {
            return other.first != mask && (mask & ~other.first) == 0;
        });
        if (!dominated) out.maximal.push_back(mask);
    }
    return out;
}

std::optional<std::vector<Vector>> inexact_witness(const IndexedFamily& family, std::uint64_t subset,
                                                   std::uint64_t budget) {
    std::optional<std::vector<Vector>> found;
    std::uint64_t examined = 0;
    scan_replacements(family, budget, examined, [&](std::uint64_t mask, const std::vector<Vector>& y) {
        if ((subset & ~mask) != 0) return true;
        found = y;
        return false;
    });
    return found;
}

// ---------------------------------------------------------------------------
// Apartment graph

bool apartments_adjacent(const Apartment& a, const Apartment& b) {
    if (a.frame.modulus() != b.frame.modulus() || a.frame.dim() != b.frame.dim() || a.k() != b.k())
        throw DomainError("apartments of different Grassmannians");
    std::uint64_t common = 0;
    for (int id = 0; id < a.family.size(); ++id)
        if (b.family.find(a.family.members[id])) common |= std::uint64_t{1} << id;
    for (const auto& s : special_subsets(a.family))
        if (s.mask == common) return true;
    return false;
}

std::vector<Apartment> connect_apartments(const Apartment& a, const Apartment& b) {
    if (a.frame.modulus() != b.frame.modulus() || a.frame.dim() != b.frame.dim() || a.k() != b.k())
        throw DomainError("apartments of different Grassmannians");
    if (a.same_as(b)) return {a};
    const unsigned p = a.frame.modulus();
    const std::size_t n = a.frame.dim();
    const int k = a.k();
    const auto& target = b.frame.points();
    auto in_target = [&](const Vector& v) { return std::find(target.begin(), target.end(), v) != target.end(); };

    std::vector<Apartment> path{a};
    std::vector<Vector> cur = a.frame.points();
    auto push = [&] { path.push_back(apartment_from_frame(Frame(p, cur), k)); };

    while (true) {
        auto missing = std::find_if(target.begin(), target.end(), [&](const Vector& v) {
            return std::find(cur.begin(), cur.end(), v) == cur.end();
        });
        if (missing == target.end()) break;
        const Vector& xp = *missing;
        const auto coeff = row_combination(Matrix::from_rows(p, n, cur), xp);
        if (!coeff) throw InvariantViolation("frame does not span the space");
        // The lowest i outside the target frame whose hyperplane misses x'.
        std::size_t i = n;
        for (std::size_t t = 0; t < n; ++t)
            if ((*coeff)[t] != 0 && !in_target(cur[t])) {
                i = t;
                break;
            }
        if (i == n) throw InvariantViolation("no replaceable frame point");
        // Peel x' = c_i x_i + sum c_j x_j one term at a time.
        Vector y(n);
        for (std::size_t c = 0; c < n; ++c) y[c] = static_cast<std::uint8_t>((*coeff)[i] * cur[i][c] % p);
        const Vector base = cur[i];
        std::vector<Vector> others = cur;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || (*coeff)[j] == 0) continue;
            for (std::size_t c = 0; c < n; ++c) y[c] = static_cast<std::uint8_t>((y[c] + (*coeff)[j] * others[j][c]) % p);
            cur[i] = normalized(y, p);
            push();
        }
        if (cur[i] == base) throw InvariantViolation("peeling made no progress");
    }
    path.back() = b;
    std::vector<Apartment> out;
    for (auto& ap : path)
        if (out.empty() || !out.back().same_as(ap)) out.push_back(std::move(ap));
    if (!out.back().same_as(b)) throw InvariantViolation("path does not end at the target apartment");
    out.back() = b;
    return out;
}

// ---------------------------------------------------------------------------
// Mixed configurations

MixedConfig make_mixed_config(unsigned p, int k, std::vector<Vector> x, const std::vector<std::vector<int>>& spanning) {
    require_vectors(p, x);
    MixedConfig cfg{p, k, std::move(x), {}, {}};
    const std::size_t w = cfg.x.front().size();
    for (const auto& t : spanning) {
        std::vector<Vector> rows;
        for (int i : t) {
            if (i < 0 || i >= cfg.n()) throw DomainError("spanning index out of range");
            rows.push_back(cfg.x[i]);
        }
        auto u = Subspace::span(p, w, rows);
        const auto normal = annihilator(u);
        if (normal.dim() != 1) throw DomainError("spanning set does not give a hyperplane");
        cfg.y.push_back(normal.representative());
        cfg.hyperplanes.push_back(std::move(u));
    }
    return cfg;
}

std::vector<std::string> check_mixed_config(const MixedConfig& cfg) {
    std::vector<std::string> bad;
    const std::size_t w = static_cast<std::size_t>(2 * cfg.k);
    const int n = cfg.n();
    if (cfg.y.size() != cfg.x.size() || cfg.hyperplanes.size() != cfg.x.size())
        bad.push_back("sizes: X, Y and the hyperplanes must all have n entries");
    for (const auto& v : cfg.x)
        if (v.size() != w) bad.push_back("X: vector outside W = GF(p)^(2k)");
    for (const auto& v : cfg.y)
        if (v.size() != w) bad.push_back("Y: vector outside the dual of W");
    for (const auto& u : cfg.hyperplanes)
        if (u.ambient() != w || u.dim() + 1 != w) bad.push_back("U: not a hyperplane of W");
    if (!bad.empty()) return bad;

    if (auto d = dependent_subset(cfg.x, cfg.p, 2 * cfg.k)) bad.push_back("X: vectors " + describe_subset(*d) + " are dependent");
    if (auto d = dependent_subset(cfg.y, cfg.p, 2 * cfg.k)) bad.push_back("Y: vectors " + describe_subset(*d) + " are dependent");
    for (int i = 0; i < n; ++i) {
        if (annihilator(Subspace::span(cfg.p, w, std::span<const Vector>(&cfg.y[i], 1))) != cfg.hyperplanes[i])
            bad.push_back("U_" + std::to_string(i + 1) + ": not the annihilator of y_" + std::to_string(i + 1));
        std::vector<Vector> inside;
        for (const auto& x : cfg.x)
            if (cfg.hyperplanes[i].contains(x)) inside.push_back(x);
        if (Subspace::span(cfg.p, w, inside) != cfg.hyperplanes[i])
            bad.push_back("U_" + std::to_string(i + 1) + ": not spanned by vectors of X");
    }
    for (int i = 0; i < n; ++i) {
        std::vector<Subspace> through;
        for (const auto& u : cfg.hyperplanes)
            if (u.contains(cfg.x[i])) through.push_back(u);
        const auto point = Subspace::span(cfg.p, w, std::span<const Vector>(&cfg.x[i], 1));
        if (through.empty() || intersect(through) != point)
            bad.push_back("x_" + std::to_string(i + 1) + ": not an intersection of hyperplanes U_j");
    }
    return bad;
}

MixedIntersection mixed_intersection(const MixedConfig& cfg) {
    const auto bad = check_mixed_config(cfg);
    if (!bad.empty()) throw DomainError("invalid mixed config: " + bad.front());
    const auto spans = j_family_from_vectors(cfg.p, cfg.x, cfg.k);
    const auto meets = j_family_dual(cfg.p, cfg.y, cfg.k);
    std::set<Subspace> dual(meets.members.begin(), meets.members.end());
    MixedIntersection out;
    for (const auto& m : spans.members)
        if (dual.count(m)) out.z.push_back(m);
    std::sort(out.z.begin(), out.z.end());
    return out;
}

MixedSearchResult search_mixed_configs(unsigned p, int k, int n, std::uint64_t budget, std::size_t keep) {
    require_supported_prime(p);
    if (k < 1 || n <= 2 * k) throw DomainError("mixed configs need n > 2k");
    const int w = 2 * k;
    const int span_size = w - 1;

    // Each U_i is spanned by exactly 2k-1 vectors of X: a hyperplane holds at
    // most 2k-1 of them by (2k)-independence.
    std::vector<std::vector<int>> spanning;
    std::vector<std::uint32_t> span_mask;
    for_each_combination(n, span_size, [&](const std::vector<int>& t) {
        spanning.push_back(t);
        std::uint32_t m = 0;
        for (int i : t) m |= 1u << i;
        span_mask.push_back(m);
        return true;
    });
    const int c = static_cast<int>(spanning.size());
    if (c > 24 || n > 31) throw DomainError("mixed config search is limited to desk-scale parameters");

    std::vector<std::uint32_t> choices;
    for_each_combination(c, n, [&](const std::vector<int>& sel) {
        std::uint32_t m = 0;
        for (int s : sel) m |= 1u << s;
        choices.push_back(m);
        return true;
    });
    std::vector<std::uint32_t> k_masks;
    for_each_combination(n, k, [&](const std::vector<int>& a) {
        std::uint32_t m = 0;
        for (int i : a) m |= 1u << i;
        k_masks.push_back(m);
        return true;
    });

    MixedSearchResult out;
    const auto points = projective_points(p, w);
    std::vector<Vector> normals(c);
    std::vector<const Vector*> rows;
    try {
        for_each_independent_point_set(points, p, n, w, budget, [&](const std::vector<int>& ids) {
            ++out.x_sets;
            std::vector<Vector> x;
            for (int id : ids) x.push_back(points[id]);
            for (int t = 0; t < c; ++t) {
                Matrix m(p, 0, w);
                for (int i : spanning[t]) m.append_row(x[i]);
                normals[t] = kernel(m).row_vector(0);
            }
            for (std::uint32_t choice : choices) {
                // x_i lies in U_t iff i is in the spanning set of t.
                bool ok = true;
                for (int i = 0; i < n && ok; ++i) {
                    rows.clear();
                    for (int t = 0; t < c; ++t)
                        if ((choice >> t & 1) && (span_mask[t] >> i & 1)) rows.push_back(&normals[t]);
                    ok = static_cast<int>(rows.size()) >= w - 1 && rank_of(rows, w, p) == static_cast<std::size_t>(w - 1);
                }
                if (!ok) continue;
                std::vector<int> chosen;
                for (int t = 0; t < c; ++t)
                    if (choice >> t & 1) chosen.push_back(t);
                ok = for_each_combination(n, w, [&](const std::vector<int>& sub) {
                    rows.clear();
                    for (int s : sub) rows.push_back(&normals[chosen[s]]);
                    return rank_of(rows, w, p) == static_cast<std::size_t>(w);
                });
                if (!ok) continue;
                // span(x_A) is a meet of k hyperplanes iff at least k chosen
                // hyperplanes contain it, since every such meet has dim k.
                int z = 0;
                for (std::uint32_t a : k_masks) {
                    int above = 0;
                    for (int t : chosen) above += (span_mask[t] & a) == a;
                    z += above >= k;
                }
                ++out.configs;
                ++out.z_histogram[z];
                if (out.kept.size() < keep) {
                    std::vector<std::vector<int>> sel;
                    for (int t : chosen) sel.push_back(spanning[t]);
                    auto cfg = make_mixed_config(p, k, x, sel);
                    if (mixed_intersection(cfg).size() != z)
                        throw InvariantViolation("combinatorial |Z| disagrees with subspace arithmetic");
                    out.kept.push_back(std::move(cfg));
                }
            }
            return true;
        });
        out.complete = true;
    } catch (const ResourceError&) {
        out.complete = false;
    }
    return out;
}

}  // namespace grassmann
