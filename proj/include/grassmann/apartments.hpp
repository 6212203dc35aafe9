#pragma once

// Apartments from frames, span families J_k(X) and their duals, special and
// complement subsets, inexactness, the apartment graph, and mixed
// span/intersection configurations.

#include <boost/rational.hpp>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "grassmann/graphs.hpp"
#include "grassmann/subspaces.hpp"

namespace grassmann {

/// A base of GF(p)^n modulo scalars. Points keep the caller's order; each is
/// stored with leading coordinate 1.
class Frame {
public:
    /// Throws DomainError unless the vectors form a base.
    Frame(unsigned p, std::vector<Vector> vectors);

    unsigned modulus() const { return p_; }
    std::size_t dim() const { return points_.size(); }
    const std::vector<Vector>& points() const { return points_; }
    const Vector& point(std::size_t i) const { return points_[i]; }
    /// Same point set, sorted.
    Frame canonical() const;
    bool same_points(const Frame& other) const { return canonical().points_ == other.canonical().points_; }

    bool operator==(const Frame&) const = default;

private:
    unsigned p_;
    std::vector<Vector> points_;
};

/// Subspaces indexed by the k-subsets of {1..n} in lexicographic order.
struct IndexedFamily {
    unsigned p = 2;
    std::size_t ambient = 0;
    int n = 0, k = 0;
    std::vector<KSubset> index;
    std::vector<Subspace> members;
    /// The vectors whose spans (or whose annihilated spans, when dual) give
    /// the members.
    std::vector<Vector> generators;
    bool dual = false;

    int size() const { return static_cast<int>(members.size()); }
    int id_of(const KSubset& a) const;
    std::optional<int> find(const Subspace& s) const;
    /// Bitmask over member ids; only for families of at most 64 members.
    std::uint64_t full_mask() const;
};

struct Apartment {
    Frame frame;
    IndexedFamily family;

    int k() const { return family.k; }
    bool same_as(const Apartment& other) const { return frame.same_points(other.frame) && family.k == other.family.k; }
};

/// Throws DomainError unless 1 <= k <= n-1.
Apartment apartment_from_frame(const Frame& frame, int k);
/// An apartment whose members include both s and u.
Apartment apartment_containing(const Subspace& s, const Subspace& u);

/// Calls visit with the ascending ids (into points) of every n-element set of
/// points that is m-independent. Stops early when visit returns false.
/// Throws ResourceError once more than budget sets have been visited.
void for_each_independent_point_set(const std::vector<Vector>& points, unsigned p, int n, int m,
                                     std::uint64_t budget,
                                     const std::function<bool(const std::vector<int>&)>& visit);
/// Normalized representatives of all points of GF(p)^d, ascending.
std::vector<Vector> projective_points(unsigned p, std::size_t d);

inline constexpr std::uint64_t kDefaultApartmentBudget = 2'000'000;

/// One apartment per unordered frame, in ascending canonical-frame order.
std::vector<Apartment> all_apartments(unsigned p, std::size_t n, int k,
                                      std::uint64_t budget = kDefaultApartmentBudget);

Frame random_frame(unsigned p, std::size_t n, std::mt19937_64& rng);

/// The index of the first size-m subset of vectors that is dependent, if any.
std::optional<std::vector<int>> dependent_subset(std::span<const Vector> vectors, unsigned p, int m);

/// J_k(X): member(A) = span{x_i : i in A}. Requires n >= 2k and X
/// (2k)-independent; the error names a dependent subset.
IndexedFamily j_family_from_vectors(unsigned p, std::span<const Vector> x, int k);
/// J*_k(Y): member(A) = annihilator of span{y_i : i in A}.
IndexedFamily j_family_dual(unsigned p, std::span<const Vector> y, int k);

enum class MarkKind { Special, Complement };

/// J(+i,+j) ∪ J(-i) for Special, J(+i,-j) for Complement. Indices are 1-based.
struct MarkedSubset {
    MarkKind kind;
    int i, j;
    std::vector<int> members;  // ascending member ids
    std::uint64_t mask = 0;
};

std::vector<MarkedSubset> special_subsets(const IndexedFamily& family);
std::vector<MarkedSubset> complement_subsets(const IndexedFamily& family);

std::uint64_t a_of(int n, int k);
boost::rational<std::int64_t> b_of(int n, int k);
/// a(n,k) > b(n,k), compared exactly.
bool a_exceeds_b(int n, int k);

/// Solves count = (k-m)(n-k-m) for m, where count is the number of complement
/// subsets containing both members.
int distance_via_complements(const IndexedFamily& family, int member_p, int member_q);
/// Throws InvariantViolation if m -> (k-m)(n-k-m) is not injective on
/// 0 <= m <= min(k, n-k).
void require_complement_count_injective(int n, int k);

/// Outcome of enumerating every (2k)-independent n-set Y of points of the
/// ambient space and intersecting J_k(Y) with the family.
struct InexactAnalysis {
    /// Distinct masks J ∩ J_k(Y) over all Y with J_k(Y) != J, each with one
    /// witness Y. Every inexact subset lies below one of these.
    std::map<std::uint64_t, std::vector<Vector>> witnesses;
    std::vector<std::uint64_t> maximal;  // inclusion-maximal witness masks
    std::uint64_t candidates = 0;        // Y sets examined

    bool is_inexact(std::uint64_t subset) const;
    std::optional<std::vector<Vector>> witness_for(std::uint64_t subset) const;
};

InexactAnalysis analyze_inexact(const IndexedFamily& family, std::uint64_t budget = kDefaultApartmentBudget);
/// Stops at the first witness. nullopt means the search space was exhausted.
std::optional<std::vector<Vector>> inexact_witness(const IndexedFamily& family, std::uint64_t subset,
                                                   std::uint64_t budget = kDefaultApartmentBudget);

/// The member set a ∩ b equals a special subset of a.
bool apartments_adjacent(const Apartment& a, const Apartment& b);
/// A walk from a to b in which consecutive apartments are adjacent.
std::vector<Apartment> connect_apartments(const Apartment& a, const Apartment& b);

/// W = GF(p)^(2k); U_i = annihilator of y_i.
struct MixedConfig {
    unsigned p = 2;
    int k = 2;
    std::vector<Vector> x;
    std::vector<Vector> y;
    std::vector<Subspace> hyperplanes;

    int n() const { return static_cast<int>(x.size()); }
};

/// Builds a config from X and the index sets whose spans give the hyperplanes.
MixedConfig make_mixed_config(unsigned p, int k, std::vector<Vector> x, const std::vector<std::vector<int>>& spanning);

/// Violated conditions, one message per failing field; empty when valid.
std::vector<std::string> check_mixed_config(const MixedConfig& cfg);

struct MixedIntersection {
    std::vector<Subspace> z;  // J_k(X) ∩ J*_k(Y), ascending
    int size() const { return static_cast<int>(z.size()); }
};

/// Throws DomainError when the config is invalid.
MixedIntersection mixed_intersection(const MixedConfig& cfg);

struct MixedSearchResult {
    std::uint64_t x_sets = 0;    // X candidates examined
    std::uint64_t configs = 0;   // valid configs found
    std::map<int, std::uint64_t> z_histogram;
    std::vector<MixedConfig> kept;  // the first few configs, materialized
    bool complete = false;
};

/// Every unordered (X, {U_i}) satisfying the config conditions, where X runs
/// over (2k)-independent n-sets of points of GF(p)^(2k). |Z| is counted from
/// the spanning index sets; kept configs are rechecked with subspace
/// arithmetic. Requires n > 2k. Stops with complete = false once budget X
/// sets have been examined.
MixedSearchResult search_mixed_configs(unsigned p, int k, int n, std::uint64_t budget, std::size_t keep = 16);

}  // namespace grassmann
