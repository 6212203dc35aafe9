#include "grassmann/graphs.hpp"

#include <algorithm>
#include <deque>

#include "grassmann/errors.hpp"

namespace grassmann {

std::size_t AdjacencyGraph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& n : neighbors) twice += n.size();
    return twice / 2;
}

std::vector<int> bfs_distances(const AdjacencyGraph& g, int src) {
    std::vector<int> dist(g.neighbors.size(), -1);
    std::deque<int> queue{src};
    dist[src] = 0;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int w : g.neighbors[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
    }
    return dist;
}

std::optional<int> bfs_distance(const AdjacencyGraph& g, int src, int dst) {
    const int d = bfs_distances(g, src)[dst];
    if (d < 0) return std::nullopt;
    return d;
}

std::optional<int> diameter(const AdjacencyGraph& g) {
    int best = 0;
    for (int v = 0; v < g.size(); ++v) {
        for (int d : bfs_distances(g, v)) {
            if (d < 0) return std::nullopt;
            best = std::max(best, d);
        }
    }
    return best;
}

bool is_connected(const AdjacencyGraph& g) {
    if (g.size() == 0) return true;
    const auto d = bfs_distances(g, 0);
    return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

// ---------------------------------------------------------------------------
// KSubset

KSubset::KSubset(int n, std::span<const int> elements) : n_(n), mask_(0) {
    if (n < 0 || n > 64) throw DomainError("KSubset supports 0 <= n <= 64");
    int prev = 0;
    for (int e : elements) {
        if (e <= prev || e > n)
            throw DomainError("KSubset elements must be strictly increasing within 1.." + std::to_string(n));
        mask_ |= std::uint64_t{1} << (e - 1);
        prev = e;
    }
}

KSubset KSubset::from_mask(int n, std::uint64_t mask) {
    if (n < 0 || n > 64 || (n < 64 && (mask >> n) != 0)) throw DomainError("mask outside {1..n}");
    return KSubset(n, mask, 0);
}

std::vector<int> KSubset::elements() const {
    std::vector<int> out;
    for (int i = 1; i <= n_; ++i)
        if (contains(i)) out.push_back(i);
    return out;
}

KSubset KSubset::complement() const {
    const std::uint64_t all = n_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1);
    return KSubset(n_, all & ~mask_, 0);
}

std::strong_ordering KSubset::operator<=>(const KSubset& other) const {
    if (auto c = n_ <=> other.n_; c != 0) return c;
    const auto a = elements(), b = other.elements();
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<KSubset> k_subsets(int n, int k) {
    std::vector<KSubset> out;
    if (k < 0 || k > n) return out;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i + 1;
    while (true) {
        out.emplace_back(n, idx);
        int pos = k;
        while (pos > 0 && idx[pos - 1] == n - k + pos) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (int j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

int johnson_distance(const KSubset& x, const KSubset& y) {
    if (x.n() != y.n() || x.size() != y.size()) throw DomainError("johnson_distance needs subsets of one J(n,k)");
    return x.size() - __builtin_popcountll(x.mask() & y.mask());
}

KSubset complement_iso(const KSubset& x) { return x.complement(); }

JohnsonGraph::JohnsonGraph(int n, int k) : n_(n), k_(k), vertices_(k_subsets(n, k)) {
    adjacency_.neighbors.resize(vertices_.size());
    for (std::size_t a = 0; a < vertices_.size(); ++a)
        for (std::size_t b = a + 1; b < vertices_.size(); ++b)
            if (__builtin_popcountll(vertices_[a].mask() & vertices_[b].mask()) == k - 1) {
                adjacency_.neighbors[a].push_back(static_cast<int>(b));
                adjacency_.neighbors[b].push_back(static_cast<int>(a));
            }
}

std::optional<int> JohnsonGraph::id_of(const KSubset& x) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), x);
    if (it == vertices_.end() || *it != x) return std::nullopt;
    return static_cast<int>(it - vertices_.begin());
}

// ---------------------------------------------------------------------------
// Grassmann graph

int grassmann_distance(const Subspace& s, const Subspace& u) {
    if (s.dim() != u.dim()) throw DomainError("grassmann_distance needs subspaces of equal dimension");
    return static_cast<int>(s.dim() - intersect(s, u).dim());
}

GrassmannGraph GrassmannGraph::build(unsigned p, std::size_t n, std::size_t k, std::uint64_t vertex_ceiling) {
    require_supported_prime(p);
    if (k > n) throw DomainError("Grassmann graph needs k <= n");
    const auto count = gaussian_binomial(static_cast<unsigned>(n), static_cast<unsigned>(k), p);
    if (count > vertex_ceiling)
        throw ResourceError("Grassmann graph would have " + std::to_string(count) + " vertices, above the ceiling " +
                            std::to_string(vertex_ceiling));
    GrassmannGraph g;
    g.p_ = p;
    g.n_ = n;
    g.k_ = k;
    g.vertices_ = grassmannian(p, n, k);
    g.ids_.reserve(g.vertices_.size());
    for (std::size_t i = 0; i < g.vertices_.size(); ++i) g.ids_.emplace(g.vertices_[i], static_cast<int>(i));

    auto& nb = g.adjacency_.neighbors;
    nb.resize(g.vertices_.size());
    if (k >= 1 && k < n) {
        for (std::size_t a = 0; a < g.vertices_.size(); ++a) {
            const Matrix& ba = g.vertices_[a].basis();
            for (std::size_t b = a + 1; b < g.vertices_.size(); ++b)
                if (rank(ba.stacked(g.vertices_[b].basis())) == k + 1) {
                    nb[a].push_back(static_cast<int>(b));
                    nb[b].push_back(static_cast<int>(a));
                }
        }
    }
    return g;
}

std::optional<int> GrassmannGraph::id_of(const Subspace& s) const {
    auto it = ids_.find(s);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

bool GrassmannGraph::adjacent(int a, int b) const {
    const auto& nb = adjacency_.neighbors[a];
    return std::find(nb.begin(), nb.end(), b) != nb.end();
}

const char* to_string(CliqueKind kind) {
    switch (kind) {
        case CliqueKind::Star: return "star";
        case CliqueKind::Top: return "top";
        case CliqueKind::Whole: return "whole";
    }
    return "?";
}

std::vector<Clique> maximal_cliques(const GrassmannGraph& g) {
    std::vector<Clique> out;
    const std::size_t n = g.n(), k = g.k();
    if (k == 0 || k >= n) return out;
    if (k == 1 || k == n - 1) {
        Clique whole{CliqueKind::Whole, Subspace::full(g.p(), n), {}};
        for (int v = 0; v < g.size(); ++v) whole.members.push_back(v);
        out.push_back(std::move(whole));
        return out;
    }
    for (auto& witness : grassmannian(g.p(), n, k - 1)) {
        Clique c{CliqueKind::Star, witness, {}};
        for (int v = 0; v < g.size(); ++v)
            if (contains(g.vertex(v), witness)) c.members.push_back(v);
        out.push_back(std::move(c));
    }
    for (auto& witness : grassmannian(g.p(), n, k + 1)) {
        Clique c{CliqueKind::Top, witness, {}};
        for (int v = 0; v < g.size(); ++v)
            if (contains(witness, g.vertex(v))) c.members.push_back(v);
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace grassmann
