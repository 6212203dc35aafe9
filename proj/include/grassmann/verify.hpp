#pragma once

// Verification suites, one per lemma id, and the reports they produce.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "grassmann/embeddings.hpp"
#include "grassmann/io.hpp"

namespace grassmann::verify {

using nlohmann::json;

struct Check {
    std::string name;
    bool pass = true;
    std::string detail;
    json data;  // counterexample or witness, null when there is none
};

struct Report {
    std::string command;
    json params = json::object();
    std::vector<Check> checks;
    bool exhaustive = true;
    bool budget_exhausted = false;
    std::vector<std::string> notes;
    std::optional<double> seconds;

    bool pass() const;
    Check& add(std::string name, bool pass, std::string detail = {}, json data = nullptr);
};

json to_json(const Report& r);
Report report_from_json(const json& j, const std::string& where = "report");
std::string to_text(const Report& r);
/// Columns: command,check,pass,detail.
std::string to_csv(const Report& r);
/// Checks and notes of all inputs, sorted so the result does not depend on
/// input order. Passing iff every input passes.
Report merge_reports(std::span<const Report> reports);

struct GridBound {
    int max_n = 12;
    int max_k = 5;
};
/// Parses "n<=12,k<=5".
GridBound parse_grid(const std::string& text);

struct Params {
    unsigned p = 2;
    int n = 4, k = 2;
    std::optional<int> nprime, kprime;
    std::uint64_t budget = kDefaultApartmentBudget;
    std::uint64_t seed = 1;
    std::uint64_t samples = 50;
    GridBound grid;
};

const std::vector<std::string>& suite_ids();
/// Throws DomainError when the parameters lie outside the suite's range.
/// Budget exhaustion is recorded in the report, not thrown.
Report run_suite(const std::string& id, const Params& params);

/// A map under test with the verdict its construction predicts.
struct NamedMap {
    std::string name;
    bool expect_isometric;
    SubspaceMap map;
};

/// Identity, annihilator, (l)_k, (l)*_k, Φ_S ∘ (l)_k and Φ^U ∘ (l)*_k shapes
/// plus mutated and degenerate maps, over GF(p).
std::vector<NamedMap> theorem_main_battery(unsigned p, std::uint64_t seed);
/// Exhaustive when the source has at most this many apartments.
inline constexpr std::uint64_t kExhaustiveApartmentLimit = 5000;
std::uint64_t apartment_count(unsigned p, int n);

Matrix random_invertible(unsigned p, std::size_t n, std::mt19937_64& rng);
/// A random n x d matrix of rank n.
Matrix random_injective(unsigned p, std::size_t n, std::size_t d, std::mt19937_64& rng);

}  // namespace grassmann::verify
