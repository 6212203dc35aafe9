#pragma once

// Grassmann graphs, Johnson graphs, and shortest-path utilities on interned
// vertex ids.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "grassmann/subspaces.hpp"

namespace grassmann {

struct AdjacencyGraph {
    std::vector<std::vector<int>> neighbors;

    int size() const { return static_cast<int>(neighbors.size()); }
    std::size_t edge_count() const;
};

/// Distances from src; -1 marks unreachable vertices.
std::vector<int> bfs_distances(const AdjacencyGraph& g, int src);
std::optional<int> bfs_distance(const AdjacencyGraph& g, int src, int dst);
/// nullopt when the graph is disconnected.
std::optional<int> diameter(const AdjacencyGraph& g);
bool is_connected(const AdjacencyGraph& g);

/// A k-element subset of {1..n}, n <= 64.
class KSubset {
public:
    KSubset(int n, std::span<const int> elements);
    static KSubset from_mask(int n, std::uint64_t mask);

    int n() const { return n_; }
    int size() const { return __builtin_popcountll(mask_); }
    std::uint64_t mask() const { return mask_; }
    bool contains(int i) const { return i >= 1 && i <= n_ && (mask_ >> (i - 1) & 1u); }
    std::vector<int> elements() const;
    KSubset complement() const;

    bool operator==(const KSubset&) const = default;
    /// Lexicographic on the increasing element tuples.
    std::strong_ordering operator<=>(const KSubset& other) const;

private:
    KSubset(int n, std::uint64_t mask, int) : n_(n), mask_(mask) {}
    int n_;
    std::uint64_t mask_;
};

/// All k-subsets of {1..n} in lexicographic order.
std::vector<KSubset> k_subsets(int n, int k);

int johnson_distance(const KSubset& x, const KSubset& y);
/// X -> {1..n} \ X.
KSubset complement_iso(const KSubset& x);

class JohnsonGraph {
public:
    JohnsonGraph(int n, int k);

    int n() const { return n_; }
    int k() const { return k_; }
    int size() const { return static_cast<int>(vertices_.size()); }
    const std::vector<KSubset>& vertices() const { return vertices_; }
    const AdjacencyGraph& adjacency() const { return adjacency_; }
    std::optional<int> id_of(const KSubset& x) const;
    int distance(int a, int b) const { return johnson_distance(vertices_[a], vertices_[b]); }

private:
    int n_, k_;
    std::vector<KSubset> vertices_;
    AdjacencyGraph adjacency_;
};

/// d(S, U) = k - dim(S ∩ U); throws DomainError unless dims and ambients agree.
int grassmann_distance(const Subspace& s, const Subspace& u);

inline constexpr std::uint64_t kDefaultVertexCeiling = 1'000'000;

class GrassmannGraph {
public:
    /// Throws ResourceError when [n choose k]_p exceeds the ceiling.
    static GrassmannGraph build(unsigned p, std::size_t n, std::size_t k,
                                std::uint64_t vertex_ceiling = kDefaultVertexCeiling);

    unsigned p() const { return p_; }
    std::size_t n() const { return n_; }
    std::size_t k() const { return k_; }
    int size() const { return static_cast<int>(vertices_.size()); }
    const std::vector<Subspace>& vertices() const { return vertices_; }
    const Subspace& vertex(int id) const { return vertices_[id]; }
    std::optional<int> id_of(const Subspace& s) const;
    const AdjacencyGraph& adjacency() const { return adjacency_; }
    bool adjacent(int a, int b) const;
    /// Closed-form distance.
    int distance(int a, int b) const { return grassmann_distance(vertices_[a], vertices_[b]); }

private:
    GrassmannGraph() = default;
    unsigned p_ = 2;
    std::size_t n_ = 0, k_ = 0;
    std::vector<Subspace> vertices_;
    std::unordered_map<Subspace, int> ids_;
    AdjacencyGraph adjacency_;
};

enum class CliqueKind { Star, Top, Whole };

const char* to_string(CliqueKind kind);

struct Clique {
    CliqueKind kind;
    Subspace witness;          // (k-1)-dim for stars, (k+1)-dim for tops, V for Whole
    std::vector<int> members;  // ascending vertex ids
};

/// Stars then tops, each sorted by witness. When k is 1 or n-1 the whole
/// vertex set is the only maximal clique.
std::vector<Clique> maximal_cliques(const GrassmannGraph& g);

}  // namespace grassmann
