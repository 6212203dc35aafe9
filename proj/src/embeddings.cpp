#include "grassmann/embeddings.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

#include "grassmann/errors.hpp"

namespace grassmann {

namespace {

struct JohnsonLayout {
    std::vector<KSubset> vertices;
    DistanceMatrix dist;
    std::vector<int> order;   // BFS order from vertex 0
    std::vector<int> parent;  // BFS parent, -1 for the root
    std::vector<int> profile;  // sorted distances from any vertex
};

JohnsonLayout johnson_layout(int n, int k) {
    JohnsonLayout j;
    j.vertices = k_subsets(n, k);
    const int m = static_cast<int>(j.vertices.size());
    j.dist.assign(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) j.dist[a][b] = johnson_distance(j.vertices[a], j.vertices[b]);
    j.parent.assign(m, -1);
    std::vector<bool> seen(m, false);
    std::deque<int> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        j.order.push_back(v);
        for (int w = 0; w < m; ++w)
            if (!seen[w] && j.dist[v][w] == 1) {
                seen[w] = true;
                j.parent[w] = v;
                queue.push_back(w);
            }
    }
    j.profile = j.dist[0];
    std::sort(j.profile.begin(), j.profile.end());
    return j;
}

std::string frame_text(const Frame& f) {
    std::string s = "[";
    for (std::size_t i = 0; i < f.points().size(); ++i) s += (i ? "," : "") + to_digits(f.point(i));
    return s + "]";
}

Subspace point_of(unsigned p, std::span<const std::uint8_t> v) {
    return Subspace::span(p, v.size(), std::vector<Vector>{Vector(v.begin(), v.end())});
}

}  // namespace

// ---------------------------------------------------------------------------
// Maps and linear embeddings

SubspaceMap SubspaceMap::build(std::shared_ptr<const GrassmannGraph> source, std::size_t target_n,
                               std::size_t target_k, const std::function<Subspace(const Subspace&)>& image) {
    SubspaceMap f;
    f.source = std::move(source);
    f.target_n = target_n;
    f.target_k = target_k;
    f.table.reserve(f.source->size());
    for (const auto& v : f.source->vertices()) {
        Subspace img = image(v);
        if (img.modulus() != f.source->p() || img.ambient() != target_n || img.dim() != target_k)
            throw DomainError("image " + img.to_string() + " is not a " + std::to_string(target_k) +
                              "-subspace of GF(p)^" + std::to_string(target_n));
        f.table.push_back(std::move(img));
    }
    return f;
}

const Subspace& SubspaceMap::at(const Subspace& s) const {
    const auto id = source->id_of(s);
    if (!id) throw DomainError(s.to_string() + " is not a vertex of the source graph");
    return table[*id];
}

LinearEmbedding::LinearEmbedding(Matrix m) : m_(std::move(m)) {
    grade_ = rank(m_) == m_.rows() ? m_.rows() : 0;
}

Vector LinearEmbedding::apply(std::span<const std::uint8_t> v) const { return grassmann::apply(v, m_); }

Subspace LinearEmbedding::image(const Subspace& s) const {
    if (s.ambient() != source_dim()) throw DomainError("subspace does not live in the source of the linear map");
    return Subspace::span(s.basis() * m_);
}

std::size_t exhaustive_grade(const Matrix& m) {
    const unsigned p = m.modulus();
    const auto points = projective_points(p, m.rows());
    std::size_t grade = 0;
    for (std::size_t level = 1; level <= m.rows(); ++level) {
        bool ok = true;
        for_each_independent_point_set(points, p, static_cast<int>(level), static_cast<int>(level),
                                       ~std::uint64_t{0}, [&](const std::vector<int>& ids) {
                                           Matrix img(p, 0, m.cols());
                                           for (int id : ids) img.append_row(grassmann::apply(points[id], m));
                                           ok = rank(img) == level;
                                           return ok;
                                       });
        if (!ok) break;
        grade = level;
    }
    return grade;
}

bool is_injective(const SubspaceMap& f) {
    std::unordered_set<Subspace> seen(f.table.begin(), f.table.end());
    return seen.size() == f.table.size();
}

MapVerdict is_isometric_embedding(const SubspaceMap& f) {
    MapVerdict v;
    const auto& g = *f.source;
    for (int a = 0; a < g.size(); ++a)
        for (int b = a + 1; b < g.size(); ++b) {
            ++v.checked;
            if (f.table[a] == f.table[b]) {
                v.pass = false;
                v.reason = "not injective: " + g.vertex(a).to_string() + " and " + g.vertex(b).to_string() +
                           " share the image " + f.table[a].to_string();
                v.counterexample = {a, b};
                return v;
            }
            const int ds = g.distance(a, b), dt = grassmann_distance(f.table[a], f.table[b]);
            if (ds != dt) {
                v.pass = false;
                v.reason = "distance " + std::to_string(ds) + " between " + g.vertex(a).to_string() + " and " +
                           g.vertex(b).to_string() + " becomes " + std::to_string(dt);
                v.counterexample = {a, b};
                return v;
            }
        }
    return v;
}

namespace {

void require_compatible(const GrassmannGraph& g, const LinearEmbedding& l, const std::optional<ParabolicInterval>& iv) {
    if (l.matrix().modulus() != g.p() || l.source_dim() != g.n())
        throw DomainError("linear map does not start at the source space");
    if (l.grade() < g.k() + 1)
        throw DomainError("linear map has grade " + std::to_string(l.grade()) + ", below k+1 = " +
                          std::to_string(g.k() + 1));
    if (iv && iv->model_dim() != l.target_dim())
        throw DomainError("linear map target does not match the interval model dimension");
}

}  // namespace

SubspaceMap embedding_from_linear(std::shared_ptr<const GrassmannGraph> source, const LinearEmbedding& l,
                                  const std::optional<ParabolicInterval>& interval) {
    require_compatible(*source, l, interval);
    const std::size_t k = source->k();
    const std::size_t tn = interval ? interval->upper().ambient() : l.target_dim();
    const std::size_t tk = k + (interval ? interval->lower().dim() : 0);
    return SubspaceMap::build(std::move(source), tn, tk, [&](const Subspace& s) {
        auto img = l.image(s);
        return interval ? interval->embed(img) : img;
    });
}

SubspaceMap dual_embedding_from_linear(std::shared_ptr<const GrassmannGraph> source, const LinearEmbedding& l,
                                       const std::optional<ParabolicInterval>& interval) {
    require_compatible(*source, l, interval);
    const std::size_t k = source->k();
    const std::size_t tn = interval ? interval->upper().ambient() : l.target_dim();
    const std::size_t tk = l.target_dim() - k + (interval ? interval->lower().dim() : 0);
    return SubspaceMap::build(std::move(source), tn, tk, [&](const Subspace& s) {
        auto img = annihilator(l.image(s));
        return interval ? interval->embed(img) : img;
    });
}

// ---------------------------------------------------------------------------
// Isometries from J(n,k)

DistanceMatrix distance_matrix(std::span<const Subspace> members) {
    const std::size_t m = members.size();
    DistanceMatrix d(m, std::vector<int>(m, -1));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            if (members[a].dim() == members[b].dim() && members[a].ambient() == members[b].ambient())
                d[a][b] = grassmann_distance(members[a], members[b]);
    return d;
}

namespace {

std::optional<std::vector<int>> isometry_search(const JohnsonLayout& j, const DistanceMatrix& dist) {
    const int m = static_cast<int>(j.vertices.size());
    if (static_cast<int>(dist.size()) != m || m == 0) return std::nullopt;
    for (const auto& row : dist) {
        std::vector<int> sorted = row;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != j.profile) return std::nullopt;
    }
    // J(n,k) is vertex transitive, so vertex 0 may go to position 0.
    std::vector<int> iso(m, -1);
    std::vector<bool> used(m, false);
    iso[0] = 0;
    used[0] = true;
    std::function<bool(int)> place = [&](int step) {
        if (step == m) return true;
        const int v = j.order[step];
        const int anchor = iso[j.parent[v]];
        for (int u = 0; u < m; ++u) {
            if (used[u] || dist[anchor][u] != 1) continue;
            bool ok = true;
            for (int s = 0; s < step && ok; ++s) ok = dist[iso[j.order[s]]][u] == j.dist[j.order[s]][v];
            if (!ok) continue;
            iso[v] = u;
            used[u] = true;
            if (place(step + 1)) return true;
            used[u] = false;
            iso[v] = -1;
        }
        return false;
    };
    if (!place(1)) return std::nullopt;
    return iso;
}

}  // namespace

std::optional<std::vector<int>> find_johnson_isometry(const DistanceMatrix& dist, int n, int k) {
    if (k < 0 || k > n) return std::nullopt;
    return isometry_search(johnson_layout(n, k), dist);
}

std::optional<std::vector<int>> find_johnson_isometry(std::span<const Subspace> members, int n, int k) {
    return find_johnson_isometry(distance_matrix(members), n, k);
}

const char* to_string(JKind kind) {
    switch (kind) {
        case JKind::ApartmentInParabolic: return "apartment-in-parabolic";
        case JKind::FirstType: return "first";
        case JKind::SecondType: return "second";
        case JKind::Clique: return "clique";
        case JKind::NotJSubset: return "not-j-subset";
    }
    return "?";
}

namespace {

// Distinct sizes of the member sets inside the star and top of each adjacent pair.
void clique_census(std::span<const Subspace> members, JSubsetWitness& w) {
    std::set<Subspace> stars, tops;
    std::set<int> star_sizes, top_sizes;
    for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = a + 1; b < members.size(); ++b) {
            if (grassmann_distance(members[a], members[b]) != 1) continue;
            const auto s = intersect(members[a], members[b]);
            if (stars.insert(s).second)
                star_sizes.insert(static_cast<int>(std::count_if(members.begin(), members.end(),
                                                                 [&](const Subspace& m) { return contains(m, s); })));
            const auto t = sum(members[a], members[b]);
            if (tops.insert(t).second)
                top_sizes.insert(static_cast<int>(std::count_if(members.begin(), members.end(),
                                                                [&](const Subspace& m) { return contains(t, m); })));
        }
    w.star_sizes.assign(star_sizes.begin(), star_sizes.end());
    w.top_sizes.assign(top_sizes.begin(), top_sizes.end());
}

// Position of the member indexed by the family_k-subset b.
int position_of(const JSubsetWitness& w, const KSubset& b) {
    static thread_local std::map<std::pair<int, int>, std::vector<KSubset>> cache;
    auto& idx = cache[{w.n, w.k}];
    if (idx.empty()) idx = k_subsets(w.n, w.k);
    const KSubset a = w.family_k == w.k ? b : b.complement();
    const auto it = std::lower_bound(idx.begin(), idx.end(), a);
    return w.iso[it - idx.begin()];
}

Subspace span_of(unsigned p, std::size_t dim, const std::vector<Vector>& vectors, const KSubset& b) {
    std::vector<Vector> rows;
    for (int i : b.elements()) rows.push_back(vectors[i - 1]);
    return Subspace::span(p, dim, rows);
}

}  // namespace

std::vector<Subspace> reconstruct_members(const JSubsetWitness& w) {
    if (w.kind == JKind::NotJSubset || w.kind == JKind::Clique)
        throw DomainError("witness of kind " + std::string(to_string(w.kind)) + " carries no construction");
    const ParabolicInterval iv(*w.lower, *w.upper, 0);
    const unsigned p = w.lower->modulus();
    std::vector<std::optional<Subspace>> out(w.iso.size());
    for (const auto& b : k_subsets(w.n, w.family_k)) {
        Subspace model = span_of(p, iv.model_dim(), w.vectors, b);
        if (w.kind == JKind::SecondType) model = annihilator(model);
        out[position_of(w, b)] = iv.embed(model);
    }
    std::vector<Subspace> members;
    for (auto& m : out) members.push_back(std::move(*m));
    return members;
}

JSubsetWitness classify_j_subset(std::span<const Subspace> members, int n, int k, std::optional<std::vector<int>> iso) {
    if (k < 1 || k >= n) throw DomainError("classification needs 1 <= k <= n-1");
    JSubsetWitness w;
    w.n = n;
    w.k = k;
    w.family_k = std::min(k, n - k);
    if (!iso) iso = find_johnson_isometry(members, n, k);
    if (!iso) return w;
    w.iso = *iso;
    clique_census(members, w);
    const int kk = w.family_k;
    if (kk == 1) {
        w.kind = JKind::Clique;
        return w;
    }
    const unsigned p = members.front().modulus();
    const std::size_t ambient = members.front().ambient();
    const std::size_t kp = members.front().dim();
    const auto index = k_subsets(n, kk);
    auto member = [&](const KSubset& b) -> const Subspace& { return members[position_of(w, b)]; };

    auto finish = [&](const ParabolicInterval& iv) {
        w.lower = iv.lower();
        w.upper = iv.upper();
        const auto rebuilt = reconstruct_members(w);
        for (std::size_t i = 0; i < rebuilt.size(); ++i)
            if (rebuilt[i] != members[i])
                throw InvariantViolation(std::string("recovered ") + to_string(w.kind) + " witness rebuilds " +
                                         rebuilt[i].to_string() + " instead of " + members[i].to_string());
    };

    if (n == 2 * kk) {
        const KSubset b0 = index.front();
        const auto& first = member(b0);
        const auto& opposite = member(b0.complement());
        const ParabolicInterval iv(intersect(first, opposite), sum(first, opposite), kp);
        std::vector<Subspace> model;
        for (const auto& b : index) {
            if (!iv.spans_between(member(b)))
                throw InvariantViolation("member " + member(b).to_string() + " leaves the interval of two opposite members");
            model.push_back(iv.pull(member(b)));
        }
        auto recover_points = [&] {
            w.vectors.clear();
            for (int i = 1; i <= n; ++i) {
                std::vector<Subspace> through;
                for (std::size_t id = 0; id < index.size(); ++id)
                    if (index[id].contains(i)) through.push_back(model[id]);
                const auto pt = intersect(through);
                if (pt.dim() != 1) return i;
                w.vectors.push_back(pt.representative());
            }
            return 0;
        };
        if (recover_points() != 0) {
            // J(2k,k) also has the automorphism A -> A^c; undo it and retry.
            std::vector<int> flipped(w.iso.size());
            std::vector<Subspace> flipped_model;
            for (std::size_t id = 0; id < index.size(); ++id) {
                const auto c = static_cast<std::size_t>(
                    std::lower_bound(index.begin(), index.end(), index[id].complement()) - index.begin());
                flipped[id] = w.iso[c];
                flipped_model.push_back(model[c]);
            }
            w.iso = std::move(flipped);
            model = std::move(flipped_model);
            if (const int i = recover_points(); i != 0)
                throw InvariantViolation("frame point " + std::to_string(i) + " is not recovered");
        }
        if (rank(Matrix::from_rows(p, iv.model_dim(), w.vectors)) != static_cast<std::size_t>(n))
            throw InvariantViolation("recovered frame points are dependent");
        w.kind = JKind::ApartmentInParabolic;
        finish(iv);
        return w;
    }

    // A star of J(n,kk) lands in a star of the Grassmannian for the first type
    // and in a top for the second.
    std::vector<Subspace> star;
    for (const auto& b : index) {
        bool holds = true;
        for (int i = 1; i < kk; ++i) holds = holds && b.contains(i);
        if (holds) star.push_back(member(b));
    }
    if (intersect(star).dim() + 1 == kp) {
        w.kind = JKind::FirstType;
        std::vector<Subspace> all(members.begin(), members.end());
        const ParabolicInterval iv(intersect(all), Subspace::full(p, ambient), kp);
        for (int i = 1; i <= n; ++i) {
            std::vector<Subspace> through;
            for (const auto& b : index)
                if (b.contains(i)) through.push_back(member(b));
            const auto si = intersect(through);
            if (si.dim() != iv.lower().dim() + 1)
                throw InvariantViolation("point S_" + std::to_string(i) + " has the wrong dimension");
            w.vectors.push_back(iv.pull(si).representative());
        }
        if (dependent_subset(w.vectors, p, 2 * kk))
            throw InvariantViolation("recovered X is not " + std::to_string(2 * kk) + "-independent");
        finish(iv);
    } else if (sum(star).dim() == kp + 1) {
        w.kind = JKind::SecondType;
        std::vector<Subspace> all(members.begin(), members.end());
        const ParabolicInterval iv(Subspace::zero(p, ambient), sum(all), kp);
        for (int i = 1; i <= n; ++i) {
            std::vector<Subspace> through;
            for (const auto& b : index)
                if (b.contains(i)) through.push_back(member(b));
            const auto ui = sum(through);
            if (ui.dim() + 1 != iv.upper().dim())
                throw InvariantViolation("hyperplane U_" + std::to_string(i) + " has the wrong dimension");
            w.vectors.push_back(annihilator(iv.pull(ui)).representative());
        }
        if (dependent_subset(w.vectors, p, 2 * kk))
            throw InvariantViolation("recovered Y is not " + std::to_string(2 * kk) + "-independent");
        finish(iv);
    } else {
        throw InvariantViolation("a star of J(n,k) lands in neither a star nor a top");
    }
    return w;
}

JSubsetSearch find_all_j_subsets(const GrassmannGraph& g, int n, int k, std::uint64_t budget) {
    if (k < 1 || k >= n) throw DomainError("J(n,k) search needs 1 <= k <= n-1");
    if (g.size() > 20000) throw DomainError("graph too large for the all-pairs distance table");
    const auto j = johnson_layout(n, k);
    const int m = static_cast<int>(j.vertices.size());
    const int vcount = g.size();
    std::vector<std::uint8_t> dist(static_cast<std::size_t>(vcount) * vcount);
    for (int v = 0; v < vcount; ++v) {
        const auto row = bfs_distances(g.adjacency(), v);
        for (int w = 0; w < vcount; ++w) dist[static_cast<std::size_t>(v) * vcount + w] = static_cast<std::uint8_t>(row[w]);
    }
    auto d = [&](int a, int b) { return static_cast<int>(dist[static_cast<std::size_t>(a) * vcount + b]); };

    JSubsetSearch out;
    std::set<std::vector<int>> seen;
    std::vector<int> iso(m, -1);
    std::vector<bool> used(vcount, false);
    bool stop = false;
    std::function<void(int)> place = [&](int step) {
        if (stop) return;
        if (++out.nodes > budget) {
            out.complete = false;
            stop = true;
            return;
        }
        if (step == m) {
            std::vector<int> ids(iso.begin(), iso.end());
            std::sort(ids.begin(), ids.end());
            if (!seen.insert(ids).second) return;
            FoundJSubset found{ids, iso, {}};
            std::vector<Subspace> members;
            std::vector<int> positions(m);
            for (int i = 0; i < m; ++i) members.push_back(g.vertex(ids[i]));
            for (int a = 0; a < m; ++a) positions[a] = static_cast<int>(std::lower_bound(ids.begin(), ids.end(), iso[a]) - ids.begin());
            found.witness = classify_j_subset(members, n, k, positions);
            out.found.push_back(std::move(found));
            return;
        }
        const int v = j.order[step];
        const auto& candidates = g.adjacency().neighbors[iso[j.parent[v]]];
        for (int u : candidates) {
            if (used[u]) continue;
            bool ok = true;
            for (int s = 0; s < step && ok; ++s) ok = d(iso[j.order[s]], u) == j.dist[j.order[s]][v];
            if (!ok) continue;
            iso[v] = u;
            used[u] = true;
            place(step + 1);
            used[u] = false;
            if (stop) return;
        }
    };
    for (int start = 0; start < vcount && !stop; ++start) {
        iso[j.order[0]] = start;
        used[start] = true;
        place(1);
        used[start] = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Apartment scans

void scan_apartment_images(
    const SubspaceMap& f, const ScanOptions& opts,
    const std::function<bool(const Frame&, const std::vector<Subspace>&, const std::optional<std::vector<int>>&)>&
        visit) {
    const auto& g = *f.source;
    const unsigned p = g.p();
    const int n = static_cast<int>(g.n()), k = static_cast<int>(g.k());
    if (k < 1 || k >= n) throw DomainError("apartments need 1 <= k <= n-1");
    const auto layout = johnson_layout(n, k);
    const int m = static_cast<int>(layout.vertices.size());
    const int vcount = g.size();
    std::vector<std::int8_t> cache(static_cast<std::size_t>(vcount) * vcount, -2);
    auto dist = [&](int a, int b) {
        auto& c = cache[static_cast<std::size_t>(a) * vcount + b];
        if (c == -2) c = static_cast<std::int8_t>(grassmann_distance(f.table[a], f.table[b]));
        return static_cast<int>(c);
    };

    auto handle = [&](const Frame& frame) {
        std::vector<int> ids;
        ids.reserve(m);
        for (const auto& a : layout.vertices) {
            std::vector<Vector> rows;
            for (int i : a.elements()) rows.push_back(frame.point(i - 1));
            ids.push_back(*g.id_of(Subspace::span(p, g.n(), rows)));
        }
        DistanceMatrix dm(m, std::vector<int>(m));
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) dm[a][b] = dist(ids[a], ids[b]);
        std::vector<Subspace> images;
        for (int id : ids) images.push_back(f.table[id]);
        return visit(frame, images, isometry_search(layout, dm));
    };

    if (opts.mode == ScanMode::Exhaustive) {
        const auto points = projective_points(p, g.n());
        for_each_independent_point_set(points, p, n, n, opts.budget, [&](const std::vector<int>& chosen) {
            std::vector<Vector> vs;
            for (int c : chosen) vs.push_back(points[c]);
            return handle(Frame(p, std::move(vs)));
        });
    } else {
        // Cycle through the vertices so each lies in some sampled apartment.
        std::mt19937_64 rng(opts.seed);
        std::uniform_int_distribution<int> other(0, g.size() - 1);
        for (std::uint64_t s = 0; s < opts.samples; ++s) {
            const int v = static_cast<int>(s % static_cast<std::uint64_t>(g.size()));
            if (!handle(apartment_containing(g.vertex(v), g.vertex(other(rng))).frame)) break;
        }
    }
}

MapVerdict is_j_mapping(const SubspaceMap& f, const ScanOptions& opts) {
    MapVerdict v;
    v.exhaustive = opts.mode == ScanMode::Exhaustive;
    scan_apartment_images(f, opts, [&](const Frame& frame, const std::vector<Subspace>& images,
                                      const std::optional<std::vector<int>>& iso) {
        ++v.checked;
        if (iso) return true;
        v.pass = false;
        v.reason = "apartment on frame " + frame_text(frame) + " does not map onto a J(n,k)-subset";
        for (const auto& a : k_subsets(static_cast<int>(f.source->n()), static_cast<int>(f.source->k()))) {
            std::vector<Vector> rows;
            for (int i : a.elements()) rows.push_back(frame.point(i - 1));
            v.counterexample.push_back(*f.source->id_of(Subspace::span(f.p(), f.source->n(), rows)));
        }
        (void)images;
        return false;
    });
    return v;
}

TheoremMainReport verify_theorem_main(const SubspaceMap& f, const ScanOptions& opts, std::uint64_t classify_limit) {
    TheoremMainReport r;
    r.isometric = is_isometric_embedding(f);
    r.injective = is_injective(f);
    const int n = static_cast<int>(f.source->n()), k = static_cast<int>(f.source->k());
    std::set<JKind> kinds;
    std::set<Subspace> lowers, uppers;

    r.j_mapping.exhaustive = opts.mode == ScanMode::Exhaustive;
    scan_apartment_images(f, opts, [&](const Frame& frame, const std::vector<Subspace>& images,
                                      const std::optional<std::vector<int>>& iso) {
        ++r.j_mapping.checked;
        if (!iso) {
            r.j_mapping.pass = false;
            r.j_mapping.reason = "apartment on frame " + frame_text(frame) + " does not map onto a J(n,k)-subset";
            return false;
        }
        if (r.classified < classify_limit) {
            ++r.classified;
            try {
                const auto w = classify_j_subset(images, n, k, *iso);
                kinds.insert(w.kind);
                if (w.lower) lowers.insert(*w.lower);
                if (w.upper) uppers.insert(*w.upper);
            } catch (const InvariantViolation& e) {
                r.uniform_type = false;
                r.note = std::string("classification failed: ") + e.what();
            }
        }
        return true;
    });

    r.agree = r.j_mapping.pass == r.isometric.pass && (!r.j_mapping.pass || r.injective);
    if (r.j_mapping.pass && 1 < k && k < n - k) {
        if (kinds.size() == 1) r.common_type = *kinds.begin();
        else r.uniform_type = false;
        if (r.common_type == JKind::FirstType && lowers.size() == 1) {
            r.common_lower = *lowers.begin();
            for (const auto& img : f.table)
                if (!contains(img, *r.common_lower)) r.uniform_type = false;
        } else if (r.common_type == JKind::SecondType && uppers.size() == 1) {
            r.common_upper = *uppers.begin();
            for (const auto& img : f.table)
                if (!contains(*r.common_upper, img)) r.uniform_type = false;
        } else {
            r.uniform_type = false;
        }
        if (!r.uniform_type && r.note.empty()) r.note = "apartment images do not share one type and one S or U";
    }
    if (!r.agree) r.note = "J-mapping and isometric-embedding verdicts disagree" + (r.note.empty() ? "" : "; " + r.note);
    return r;
}

const char* to_string(NormalForm form) {
    switch (form) {
        case NormalForm::None: return "none";
        case NormalForm::Span: return "span";
        case NormalForm::DualSpan: return "dual-span";
    }
    return "?";
}

namespace {

// l with h(P) = span l(P) for every vertex, recovered from the points
// ∩{h(P) : P ∋ v} at v = e_i and v = e_1 + ... + e_n.
std::optional<Matrix> recover_linear(const GrassmannGraph& g, const std::vector<Subspace>& h, std::size_t model_dim) {
    const unsigned p = g.p();
    const std::size_t n = g.n();
    auto point_image = [&](const Vector& v) -> std::optional<Vector> {
        const auto pt = point_of(p, v);
        std::vector<Subspace> through;
        for (int id = 0; id < g.size(); ++id)
            if (contains(g.vertex(id), pt)) through.push_back(h[id]);
        const auto meet = intersect(through);
        if (meet.dim() != 1) return std::nullopt;
        return meet.representative();
    };
    Matrix rows(p, 0, model_dim);
    for (std::size_t i = 0; i < n; ++i) {
        Vector e(n, 0);
        e[i] = 1;
        const auto w = point_image(e);
        if (!w) return std::nullopt;
        rows.append_row(*w);
    }
    const auto total = point_image(Vector(n, 1));
    if (!total) return std::nullopt;
    const auto c = row_combination(rows, *total);
    if (!c) return std::nullopt;
    Matrix l(p, n, model_dim);
    for (std::size_t i = 0; i < n; ++i) {
        if ((*c)[i] == 0) return std::nullopt;
        for (std::size_t col = 0; col < model_dim; ++col) l.set(i, col, (*c)[i] * rows.get(i, col) % p);
    }
    for (int id = 0; id < g.size(); ++id)
        if (Subspace::span(g.vertex(id).basis() * l) != h[id]) return std::nullopt;
    return l;
}

}  // namespace

CorollaryReport verify_strong_corollaries(const SubspaceMap& f) {
    CorollaryReport r;
    const auto& g = *f.source;
    const int n = static_cast<int>(g.n()), k = static_cast<int>(g.k());
    if (!(1 < k && k < n - 1)) {
        r.note = "recovery needs 1 < k < n-1";
        return r;
    }
    if (k > n - k) {
        r.note = "no recovery attempted for n-k < k < n-1";
        return r;
    }
    r.applicable = true;

    // Strong: some apartment lands on an apartment of a parabolic subspace.
    ScanOptions opts;
    opts.budget = ~std::uint64_t{0};
    std::uint64_t looked = 0;
    scan_apartment_images(f, opts, [&](const Frame&, const std::vector<Subspace>& images,
                                      const std::optional<std::vector<int>>& iso) {
        if (!iso) return ++looked < 5000;
        const auto w = classify_j_subset(images, n, k, *iso);
        if (w.kind == JKind::ApartmentInParabolic) r.strong = true;
        else if ((w.kind == JKind::FirstType || w.kind == JKind::SecondType) &&
                 rank(Matrix::from_rows(f.p(), w.vectors.front().size(), w.vectors)) == static_cast<std::size_t>(n))
            r.strong = true;
        return !r.strong && ++looked < 5000;
    });

    const Subspace lower = intersect(f.table), upper = sum(f.table);
    r.lower = lower;
    r.upper = upper;
    const ParabolicInterval iv(lower, upper, f.target_k);
    const std::size_t d = iv.model_dim();
    std::vector<Subspace> pulled;
    for (const auto& img : f.table) pulled.push_back(iv.pull(img));

    if (f.target_k - lower.dim() == static_cast<std::size_t>(k)) {
        if (auto l = recover_linear(g, pulled, d)) {
            r.form = NormalForm::Span;
            r.recovered = std::move(*l);
        }
    }
    if (r.form == NormalForm::None && d >= f.target_k - lower.dim() && d - (f.target_k - lower.dim()) == static_cast<std::size_t>(k)) {
        std::vector<Subspace> dual;
        for (const auto& s : pulled) dual.push_back(annihilator(s));
        if (auto l = recover_linear(g, dual, d)) {
            r.form = NormalForm::DualSpan;
            r.recovered = std::move(*l);
        }
    }
    if (r.form == NormalForm::None) {
        r.note = "no linear map reproduces f";
        return r;
    }
    // Rebuild f from l alone and compare on every vertex.
    const LinearEmbedding l(*r.recovered);
    r.reproduces = true;
    for (int id = 0; id < g.size(); ++id) {
        Subspace model = l.image(g.vertex(id));
        if (r.form == NormalForm::DualSpan) model = annihilator(model);
        if (iv.embed(model) != f.table[id]) r.reproduces = false;
    }
    return r;
}

}  // namespace grassmann
