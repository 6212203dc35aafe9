#pragma once

// Canonical subspaces of GF(p)^n and the lattice operations on them.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "grassmann/finfield.hpp"

namespace grassmann {

/// A subspace of GF(p)^n held by its reduced-row-echelon basis. Two values
/// compare equal exactly when the subspaces coincide.
class Subspace {
public:
    static Subspace zero(unsigned p, std::size_t n);
    static Subspace full(unsigned p, std::size_t n);
    /// Row space of `rows`.
    static Subspace span(const Matrix& rows);
    static Subspace span(unsigned p, std::size_t n, std::span<const Vector> vectors);
    /// Adopts `basis` as-is; throws DomainError unless it is already in RREF
    /// with no zero rows.
    static Subspace from_canonical(const Matrix& basis);

    unsigned modulus() const { return basis_.modulus(); }
    std::size_t ambient() const { return basis_.cols(); }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool contains(std::span<const std::uint8_t> v) const;
    /// v minus its projection along the basis; zero at every pivot column.
    Vector reduce(std::span<const std::uint8_t> v) const;
    /// First basis row; the normalized spanning vector when dim() == 1.
    Vector representative() const { return basis_.row_vector(0); }

    std::string to_string() const;
    std::size_t hash() const;

    bool operator==(const Subspace& other) const { return basis_ == other.basis_; }
    /// Orders by (p, n, dim) and then lexicographically on basis digits.
    std::strong_ordering operator<=>(const Subspace& other) const;

private:
    explicit Subspace(Matrix basis, std::vector<std::size_t> pivots)
        : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

struct SubspaceHash {
    std::size_t operator()(const Subspace& s) const { return s.hash(); }
};

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(std::span<const Subspace> parts);
Subspace intersect(std::span<const Subspace> parts);
/// True iff b is a subspace of a.
bool contains(const Subspace& a, const Subspace& b);

/// Annihilator under the standard dot-product pairing of GF(p)^n with itself.
Subspace annihilator(const Subspace& s);

struct LawVerdict {
    bool pass = true;
    std::string failed_law;               // empty on pass
    std::vector<Subspace> counterexample;  // the offending list
};

/// Checks (S1+...+Sm)^0 = S1^0 ∩ ... ∩ Sm^0 and (S1∩...∩Sm)^0 = S1^0 + ... + Sm^0.
LawVerdict annihilator_laws(std::span<const Subspace> parts);

/// Image of v in V/sub. Coordinates of V/sub are the non-pivot columns of
/// sub's canonical basis, in increasing order.
Vector quotient_vector(std::span<const std::uint8_t> v, const Subspace& sub);
/// Image of s in V/sub; requires sub ⊆ s.
Subspace quotient_push(const Subspace& s, const Subspace& sub);
/// Preimage in V of a subspace of V/sub; right inverse of quotient_push.
Subspace quotient_lift(const Subspace& x, const Subspace& sub);

std::uint64_t binomial(unsigned n, unsigned k);
std::uint64_t gaussian_binomial(unsigned n, unsigned k, unsigned q);

/// All k-dimensional subspaces of GF(p)^n in ascending order.
std::vector<Subspace> grassmannian(unsigned p, std::size_t n, std::size_t k);

/// The k-dimensional subspaces between lower and upper, together with a fixed
/// coordinate model of upper/lower of dimension dim(upper) - dim(lower).
class ParabolicInterval {
public:
    ParabolicInterval(Subspace lower, Subspace upper, std::size_t k);

    const Subspace& lower() const { return lower_; }
    const Subspace& upper() const { return upper_; }
    std::size_t k() const { return k_; }
    std::size_t model_dim() const { return upper_.dim() - lower_.dim(); }

    /// True iff lower ⊆ p ⊆ upper.
    bool spans_between(const Subspace& p) const;

    /// Vector of upper whose coset has the given model coordinates.
    Vector embed_vector(std::span<const std::uint8_t> coords) const;
    /// Sends a subspace of the model to the corresponding subspace of V that
    /// contains lower.
    Subspace embed(const Subspace& x) const;
    /// Inverse of embed on subspaces between lower and upper.
    Subspace pull(const Subspace& p) const;

    std::vector<Subspace> members() const;

private:
    Subspace lower_;
    Subspace upper_;
    std::size_t k_;
    Matrix model_basis_;  // basis of upper/lower inside V/lower, in RREF
    std::vector<std::size_t> model_pivots_;
    std::vector<std::size_t> free_columns_;  // non-pivot columns of lower
};

std::vector<Subspace> interval_members(const ParabolicInterval& interval);

}  // namespace grassmann

template <>
struct std::hash<grassmann::Subspace> {
    std::size_t operator()(const grassmann::Subspace& s) const { return s.hash(); }
};
