#pragma once

// Maps between Grassmannians: linear constructions, isometry checks, J(n,k)
// subset search and classification, and the apartment-based mapping test.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "grassmann/apartments.hpp"
#include "grassmann/graphs.hpp"
#include "grassmann/subspaces.hpp"

namespace grassmann {

/// A total map from the vertices of a Grassmann graph to k'-subspaces of
/// GF(p)^n'. table[id] is the image of source->vertex(id).
struct SubspaceMap {
    std::shared_ptr<const GrassmannGraph> source;
    std::size_t target_n = 0;
    std::size_t target_k = 0;
    std::vector<Subspace> table;

    /// Validates totality and image dimensions.
    static SubspaceMap build(std::shared_ptr<const GrassmannGraph> source, std::size_t target_n, std::size_t target_k,
                             const std::function<Subspace(const Subspace&)>& image);

    unsigned p() const { return source->p(); }
    const Subspace& operator()(int id) const { return table[id]; }
    /// Image of an arbitrary source subspace; throws if it is not a vertex.
    const Subspace& at(const Subspace& s) const;
};

/// A linear map GF(p)^n -> GF(p)^d given by v -> v M, with the largest m such
/// that every m independent vectors stay independent.
class LinearEmbedding {
public:
    explicit LinearEmbedding(Matrix m);

    const Matrix& matrix() const { return m_; }
    std::size_t source_dim() const { return m_.rows(); }
    std::size_t target_dim() const { return m_.cols(); }
    /// n for an injection, 0 otherwise: over a field a kernel vector already
    /// breaks independence of a single vector.
    std::size_t grade() const { return grade_; }

    Vector apply(std::span<const std::uint8_t> v) const;
    Subspace image(const Subspace& s) const;

private:
    Matrix m_;
    std::size_t grade_;
};

/// Grade by checking every set of m independent points, for each m.
std::size_t exhaustive_grade(const Matrix& m);

struct MapVerdict {
    bool pass = true;
    std::string reason;                // empty on pass
    std::vector<int> counterexample;   // source vertex ids
    std::uint64_t checked = 0;         // pairs or apartments examined
    bool exhaustive = true;
};

/// Injective and distance preserving on every pair.
MapVerdict is_isometric_embedding(const SubspaceMap& f);
bool is_injective(const SubspaceMap& f);

/// P -> span l(P), then through the interval when given. Throws DomainError
/// when the grade of l is below k+1.
SubspaceMap embedding_from_linear(std::shared_ptr<const GrassmannGraph> source, const LinearEmbedding& l,
                                  const std::optional<ParabolicInterval>& interval = std::nullopt);
/// P -> annihilator of span l(P) in the model, then through the interval.
SubspaceMap dual_embedding_from_linear(std::shared_ptr<const GrassmannGraph> source, const LinearEmbedding& l,
                                       const std::optional<ParabolicInterval>& interval = std::nullopt);

/// Square matrix of pairwise distances.
using DistanceMatrix = std::vector<std::vector<int>>;

DistanceMatrix distance_matrix(std::span<const Subspace> members);

/// A bijection iso from the k-subsets of {1..n} (lexicographic ids) onto
/// positions 0..m-1 with dist[iso[a]][iso[b]] equal to the Johnson distance.
std::optional<std::vector<int>> find_johnson_isometry(const DistanceMatrix& dist, int n, int k);
std::optional<std::vector<int>> find_johnson_isometry(std::span<const Subspace> members, int n, int k);

enum class JKind { ApartmentInParabolic, FirstType, SecondType, Clique, NotJSubset };

const char* to_string(JKind kind);

/// How a J(n,k)-subset is built. For k > n-k the family is read as a
/// J(n,n-k)-subset through complements, and `family_k` is n-k.
struct JSubsetWitness {
    JKind kind = JKind::NotJSubset;
    int n = 0, k = 0;
    int family_k = 0;
    std::optional<Subspace> lower, upper;
    /// Frame points, X, or Y in the coordinates of the interval model.
    std::vector<Vector> vectors;
    std::vector<int> iso;  // k-subset id -> member position
    /// Distinct sizes of the member sets cut out by the star S∩T and the top
    /// S+T of each adjacent pair.
    std::vector<int> star_sizes, top_sizes;
};

/// Throws InvariantViolation if an isometric copy fails to rebuild from its
/// recovered witness.
JSubsetWitness classify_j_subset(std::span<const Subspace> members, int n, int k,
                                 std::optional<std::vector<int>> iso = std::nullopt);
/// Members rebuilt from the witness, in member-position order.
std::vector<Subspace> reconstruct_members(const JSubsetWitness& w);

struct FoundJSubset {
    std::vector<int> members;  // ascending vertex ids
    std::vector<int> iso;      // k-subset id -> vertex id
    JSubsetWitness witness;
};

struct JSubsetSearch {
    std::vector<FoundJSubset> found;
    std::uint64_t nodes = 0;
    bool complete = true;
};

/// Every vertex set of g whose induced distances are those of J(n,k),
/// classified. Stops with complete = false after budget search nodes.
JSubsetSearch find_all_j_subsets(const GrassmannGraph& g, int n, int k, std::uint64_t budget = 50'000'000);

enum class ScanMode { Exhaustive, Sampled };

struct ScanOptions {
    ScanMode mode = ScanMode::Exhaustive;
    std::uint64_t budget = kDefaultApartmentBudget;  // apartments, exhaustive mode
    std::uint64_t samples = 200;                     // apartments, sampled mode
    std::uint64_t seed = 1;
};

/// Calls visit(frame, image subspaces, iso or nullopt) for every apartment of
/// the source, or for `samples` apartments where the s-th contains vertex
/// s mod |G| and a random vertex. Stops when visit returns false.
void scan_apartment_images(
    const SubspaceMap& f, const ScanOptions& opts,
    const std::function<bool(const Frame&, const std::vector<Subspace>&, const std::optional<std::vector<int>>&)>&
        visit);

/// Every examined apartment maps onto a J(n,k)-subset. Exhaustive mode throws
/// ResourceError when the budget runs out.
MapVerdict is_j_mapping(const SubspaceMap& f, const ScanOptions& opts = {});

struct TheoremMainReport {
    MapVerdict j_mapping;
    MapVerdict isometric;
    bool injective = false;
    bool agree = false;
    /// Filled when f is a J-mapping with 1 < k < n-k.
    std::optional<JKind> common_type;
    bool uniform_type = true;
    std::optional<Subspace> common_lower, common_upper;
    std::uint64_t classified = 0;
    std::string note;
};

/// `classify_limit` caps how many apartment images are classified.
TheoremMainReport verify_theorem_main(const SubspaceMap& f, const ScanOptions& opts = {},
                                      std::uint64_t classify_limit = 5000);

enum class NormalForm { None, Span, DualSpan };

const char* to_string(NormalForm form);

struct CorollaryReport {
    bool applicable = false;
    bool strong = false;
    NormalForm form = NormalForm::None;
    std::optional<Subspace> lower, upper;
    std::optional<Matrix> recovered;  // l as rows l(e_1), ..., l(e_n) in the interval model
    bool reproduces = false;
    std::string note;
};

/// Recovers l with f = Φ^U_S ∘ (l)_k or f = Φ^U_S ∘ (l)*_k and audits it on
/// every vertex. Applies when n = n' and 1 < k < n-1 with k <= n-k.
CorollaryReport verify_strong_corollaries(const SubspaceMap& f);

}  // namespace grassmann
