#include "grassmann/verify.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <regex>
#include <set>
#include <sstream>

namespace grassmann::verify {

// ---------------------------------------------------------------------------
// Reports

bool Report::pass() const {
    return !budget_exhausted && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Check& Report::add(std::string name, bool ok, std::string detail, json data) {
    checks.push_back({std::move(name), ok, std::move(detail), std::move(data)});
    return checks.back();
}

json to_json(const Report& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        json entry = {{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}};
        if (!c.data.is_null()) entry["data"] = c.data;
        checks.push_back(entry);
    }
    json out = {{"command", r.command},
                {"params", r.params},
                {"pass", r.pass()},
                {"outcome", r.pass() ? "pass" : r.budget_exhausted ? "budget-exhausted" : "falsified"},
                {"exhaustive", r.exhaustive},
                {"budget_exhausted", r.budget_exhausted},
                {"notes", r.notes},
                {"checks", checks}};
    if (r.seconds) out["seconds"] = *r.seconds;
    return out;
}

Report report_from_json(const json& j, const std::string& where) {
    auto req = [&](const char* key) -> const json& {
        if (!j.is_object() || !j.contains(key)) throw FormatError(where + "." + key, "missing");
        return j.at(key);
    };
    Report r;
    try {
        r.command = req("command").get<std::string>();
        r.params = req("params");
        r.exhaustive = req("exhaustive").get<bool>();
        r.budget_exhausted = req("budget_exhausted").get<bool>();
        r.notes = req("notes").get<std::vector<std::string>>();
        const auto& checks = req("checks");
        if (!checks.is_array()) throw FormatError(where + ".checks", "expected an array");
        for (std::size_t i = 0; i < checks.size(); ++i) {
            const auto& c = checks[i];
            const std::string at = where + ".checks[" + std::to_string(i) + "]";
            if (!c.is_object() || !c.contains("name") || !c.contains("pass"))
                throw FormatError(at, "expected {name, pass, detail}");
            r.add(c.at("name").get<std::string>(), c.at("pass").get<bool>(), c.value("detail", std::string{}),
                  c.contains("data") ? c.at("data") : json(nullptr));
        }
        if (j.contains("seconds")) r.seconds = j.at("seconds").get<double>();
    } catch (const json::type_error& e) {
        throw FormatError(where, e.what());
    }
    return r;
}

std::string to_text(const Report& r) {
    std::ostringstream out;
    out << r.command << ": " << (r.pass() ? "PASS" : r.budget_exhausted ? "BUDGET EXHAUSTED" : "FAIL")
        << (r.exhaustive ? " (exhaustive)" : " (sampled)") << "\n";
    if (!r.params.empty()) out << "  params " << r.params.dump() << "\n";
    for (const auto& c : r.checks) {
        out << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name;
        if (!c.detail.empty()) out << ": " << c.detail;
        out << "\n";
        if (!c.pass && !c.data.is_null()) out << "         " << c.data.dump() << "\n";
    }
    for (const auto& n : r.notes) out << "  note: " << n << "\n";
    if (r.seconds) out << "  seconds " << *r.seconds << "\n";
    return out.str();
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string to_csv(const Report& r) {
    std::ostringstream out;
    out << "command,check,pass,detail\n";
    for (const auto& c : r.checks)
        out << csv_field(r.command) << "," << csv_field(c.name) << "," << (c.pass ? "true" : "false") << ","
            << csv_field(c.detail) << "\n";
    return out.str();
}

Report merge_reports(std::span<const Report> reports) {
    Report out;
    std::set<std::string> commands;
    for (const auto& r : reports) {
        commands.insert(r.command);
        out.exhaustive = out.exhaustive && r.exhaustive;
        out.budget_exhausted = out.budget_exhausted || r.budget_exhausted;
        for (auto c : r.checks) {
            c.name = r.command + "/" + c.name;
            out.checks.push_back(std::move(c));
        }
        for (const auto& n : r.notes) out.notes.push_back(r.command + ": " + n);
    }
    std::stable_sort(out.checks.begin(), out.checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
    std::sort(out.notes.begin(), out.notes.end());
    out.notes.erase(std::unique(out.notes.begin(), out.notes.end()), out.notes.end());
    out.command = "report-merge";
    out.params = {{"inputs", std::vector<std::string>(commands.begin(), commands.end())}};
    return out;
}

GridBound parse_grid(const std::string& text) {
    static const std::regex pattern(R"(\s*n\s*<=\s*(\d+)\s*,\s*k\s*<=\s*(\d+)\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern)) throw DomainError("grid must look like n<=12,k<=5, got '" + text + "'");
    GridBound g{std::stoi(m[1]), std::stoi(m[2])};
    if (g.max_k < 2 || g.max_n > 62) throw DomainError("grid needs k <= K with K >= 2 and n <= 62");
    return g;
}

// ---------------------------------------------------------------------------
// Random linear maps

Matrix random_injective(unsigned p, std::size_t n, std::size_t d, std::mt19937_64& rng) {
    std::uniform_int_distribution<unsigned> digit(0, p - 1);
    while (true) {
        Matrix m(p, n, d);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < d; ++c) m.set(r, c, digit(rng));
        if (rank(m) == n) return m;
    }
}

Matrix random_invertible(unsigned p, std::size_t n, std::mt19937_64& rng) { return random_injective(p, n, n, rng); }

std::uint64_t apartment_count(unsigned p, int n) {
    // |GL(n,p)| / ((p-1)^n n!), saturating.
    long double v = 1;
    for (int i = 0; i < n; ++i) {
        long double pn = 1, pi = 1;
        for (int j = 0; j < n; ++j) pn *= p;
        for (int j = 0; j < i; ++j) pi *= p;
        v *= (pn - pi) / (p - 1) / (i + 1);
    }
    return v > 1.8e19L ? ~std::uint64_t{0} : static_cast<std::uint64_t>(v + 0.5L);
}

namespace {

using SuiteFn = std::function<void(const Params&, Report&)>;

json digits_json(std::span<const Vector> vs) {
    json out = json::array();
    for (const auto& v : vs) out.push_back(to_digits(v));
    return out;
}

json mask_members(const IndexedFamily& f, std::uint64_t mask) {
    json out = json::array();
    for (int id = 0; id < f.size(); ++id)
        if (mask >> id & 1) out.push_back(f.index[id].elements());
    return out;
}

void require_range(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

void require_host(const Params& q) {
    require_range(q.k >= 2 && q.n >= 2 * q.k, "this suite needs n >= 2k and k >= 2");
    require_range(q.n <= 8, "this suite is limited to n <= 8");
}

const std::vector<Vector> kFiveSet = {parse_digits(2, "1000"), parse_digits(2, "0100"), parse_digits(2, "0010"),
                                      parse_digits(2, "0001"), parse_digits(2, "1111")};

std::optional<std::vector<Vector>> independent_set(unsigned p, int n, int m, std::size_t dim, std::uint64_t budget) {
    const auto points = projective_points(p, dim);
    std::optional<std::vector<Vector>> found;
    for_each_independent_point_set(points, p, n, m, budget, [&](const std::vector<int>& ids) {
        std::vector<Vector> x;
        for (int id : ids) x.push_back(points[id]);
        found = std::move(x);
        return false;
    });
    return found;
}

IndexedFamily base_family(const Params& q, std::mt19937_64& rng, Report& r) {
    const auto frame = random_frame(q.p, q.n, rng);
    r.params["frame"] = digits_json(frame.points());
    return apartment_from_frame(frame, q.k).family;
}

// Annihilator laws.
void suite_lemma21(const Params& q, Report& r) {
    require_range(q.n >= 1 && q.k >= 0 && q.k <= q.n, "lemma2.1 needs 0 <= k <= n");
    const auto all = grassmannian(q.p, q.n, q.k);
    const std::uint64_t pairs = static_cast<std::uint64_t>(all.size()) * all.size();
    std::uint64_t checked = 0;
    std::optional<LawVerdict> bad;
    if (pairs <= q.budget) {
        for (const auto& a : all)
            for (const auto& b : all) {
                ++checked;
                const std::vector parts{a, b};
                if (auto v = annihilator_laws(parts); !v.pass && !bad) bad = v;
            }
    } else {
        r.exhaustive = false;
        r.notes.push_back("pairs sampled: " + std::to_string(pairs) + " exceed the budget");
    }
    std::mt19937_64 rng(q.seed);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    std::uniform_int_distribution<int> dims(0, q.n);
    for (std::uint64_t s = 0; s < q.samples; ++s) {
        std::vector<Subspace> parts;
        for (int i = 0; i < 3; ++i) {
            const auto pool = grassmannian(q.p, q.n, static_cast<std::size_t>(dims(rng)));
            parts.push_back(pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]);
        }
        ++checked;
        if (auto v = annihilator_laws(parts); !v.pass && !bad) bad = v;
    }
    json data = nullptr;
    if (bad) {
        data = json::array();
        for (const auto& s : bad->counterexample) data.push_back(io::to_json(s));
    }
    r.add("sum and intersection laws", !bad, bad ? bad->failed_law : std::to_string(checked) + " lists checked", data);

    bool involution = true, codim = true;
    for (const auto& s : all) {
        const auto a = annihilator(s);
        involution = involution && annihilator(a) == s;
        codim = codim && a.dim() + s.dim() == static_cast<std::size_t>(q.n);
    }
    r.add("annihilator is an involution", involution);
    r.add("dim S + dim S^0 = n", codim);
}

// Star and top sizes of first and second type families.
void suite_lemma22(const Params& q, Report& r) {
    require_range(q.k >= 2 && q.k < q.n - q.k, "lemma2.2 needs 1 < k < n-k");
    require_range(q.n <= 8, "lemma2.2 is limited to n <= 8");
    std::vector<std::pair<std::string, std::vector<Vector>>> sets;
    if (auto x = independent_set(q.p, q.n, 2 * q.k, static_cast<std::size_t>(2 * q.k), q.budget))
        sets.emplace_back("(2k)-independent set in dimension 2k", *x);
    else
        r.notes.push_back("no (2k)-independent n-set in dimension 2k; only the base is used");
    std::vector<Vector> base;
    for (int i = 0; i < q.n; ++i) {
        Vector e(q.n, 0);
        e[i] = 1;
        base.push_back(e);
    }
    sets.emplace_back("base", base);
    const std::vector<int> first_star{q.n - q.k + 1}, first_top{q.k + 1};
    for (const auto& [label, x] : sets) {
        const auto fam = j_family_from_vectors(q.p, x, q.k);
        const auto w1 = classify_j_subset(fam.members, q.n, q.k);
        r.add(label + ": J_k(X) is first type", w1.kind == JKind::FirstType, to_string(w1.kind),
              {{"x", digits_json(x)}});
        r.add(label + ": stars n-k+1, tops k+1", w1.star_sizes == first_star && w1.top_sizes == first_top,
              "stars " + json(w1.star_sizes).dump() + " tops " + json(w1.top_sizes).dump());
        std::vector<Subspace> dual;
        for (const auto& m : fam.members) dual.push_back(annihilator(m));
        const auto w2 = classify_j_subset(dual, q.n, q.k);
        r.add(label + ": annihilator image is second type", w2.kind == JKind::SecondType, to_string(w2.kind));
        r.add(label + ": sizes swap under the annihilator", w2.star_sizes == first_top && w2.top_sizes == first_star,
              "stars " + json(w2.star_sizes).dump() + " tops " + json(w2.top_sizes).dump());
        const auto yfam = j_family_dual(q.p, x, q.k);
        const auto w3 = classify_j_subset(yfam.members, q.n, q.k);
        r.add(label + ": J*_k(Y) is second type", w3.kind == JKind::SecondType, to_string(w3.kind));
    }
}

std::vector<std::uint64_t> special_masks(const IndexedFamily& f) {
    std::vector<std::uint64_t> out;
    for (const auto& s : special_subsets(f)) out.push_back(s.mask);
    return out;
}

void inexact_suite(const Params& q, Report& r, int lemma) {
    require_host(q);
    std::mt19937_64 rng(q.seed);
    const auto fam = base_family(q, rng, r);
    const auto analysis = analyze_inexact(fam, q.budget);
    const auto specials = special_masks(fam);
    const std::set<std::uint64_t> special_set(specials.begin(), specials.end());
    r.params["candidates"] = analysis.candidates;
    auto below_special = [&](std::uint64_t m) {
        return std::any_of(specials.begin(), specials.end(), [&](std::uint64_t s) { return (m & ~s) == 0; });
    };
    if (lemma == 1) {
        std::optional<std::uint64_t> bad;
        for (const auto& [mask, y] : analysis.witnesses)
            if (!below_special(mask) && !bad) bad = mask;
        r.add("every inexact subset lies in a special subset", !bad,
              std::to_string(analysis.witnesses.size()) + " maximal-candidate masks",
              bad ? json{{"members", mask_members(fam, *bad)}, {"witness", digits_json(analysis.witnesses.at(*bad))}}
                  : json(nullptr));
        if (q.p == 2 && q.k == 2) {
            const auto five = j_family_from_vectors(2, kFiveSet, 2);
            const auto a5 = analyze_inexact(five, q.budget);
            const auto s5 = special_masks(five);
            bool ok = true;
            for (const auto& [mask, y] : a5.witnesses)
                ok = ok && std::any_of(s5.begin(), s5.end(), [&](std::uint64_t s) { return (mask & ~s) == 0; });
            r.add("4-independent 5-set over GF(2): every inexact subset lies in a special subset", ok);
        }
    } else if (lemma == 2) {
        const std::set<std::uint64_t> maximal(analysis.maximal.begin(), analysis.maximal.end());
        json extra = json::array(), missing = json::array();
        for (auto m : maximal)
            if (!special_set.count(m)) extra.push_back(mask_members(fam, m));
        for (auto m : special_set)
            if (!maximal.count(m)) missing.push_back(mask_members(fam, m));
        r.add("maximal inexact subsets are the special subsets", maximal == special_set,
              std::to_string(maximal.size()) + " maximal, " + std::to_string(special_set.size()) + " special",
              maximal == special_set ? json(nullptr) : json{{"not_special", extra}, {"special_not_maximal", missing}});
        bool witnessed = true;
        for (const auto& s : special_subsets(fam)) {
            const auto y = analysis.witness_for(s.mask);
            witnessed = witnessed && y.has_value();
        }
        r.add("every special subset has an explicit witness", witnessed);
        r.add("the whole family is not inexact", !analysis.is_inexact(fam.full_mask()));
        if (q.p == 2) {
            const auto five = j_family_from_vectors(2, kFiveSet, 2);
            const auto a5 = analyze_inexact(five, q.budget);
            json bad = json::array();
            for (const auto& s : special_subsets(five))
                if (a5.is_inexact(s.mask)) bad.push_back(mask_members(five, s.mask));
            r.add("4-independent 5-set over GF(2): no special subset is inexact", bad.empty(),
                  std::to_string(a5.candidates) + " candidate Y sets", bad.empty() ? json(nullptr) : bad);
        }
    } else {
        const auto a = a_of(q.n, q.k);
        std::optional<std::uint64_t> bad;
        std::uint64_t large = 0;
        for (const auto& [mask, y] : analysis.witnesses) {
            if (static_cast<std::uint64_t>(std::popcount(mask)) < a) continue;
            ++large;
            if (!special_set.count(mask) && !bad) bad = mask;
        }
        r.add("every inexact subset of size a(n,k) is special", !bad,
              std::to_string(large) + " witness masks of size >= a(n,k) = " + std::to_string(a),
              bad ? mask_members(fam, *bad) : json(nullptr));
    }
}

// Complement counts give distances.
void suite_lemma44(const Params& q, Report& r) {
    require_host(q);
    require_complement_count_injective(q.n, q.k);
    r.add("m -> (k-m)(n-k-m) is injective on 0..min(k,n-k)", true);
    std::mt19937_64 rng(q.seed);
    std::uint64_t pairs = 0;
    json bad = nullptr;
    for (std::uint64_t s = 0; s < q.samples; ++s) {
        const auto frame = random_frame(q.p, q.n, rng);
        const auto fam = apartment_from_frame(frame, q.k).family;
        const auto complements = complement_subsets(fam);
        for (int a = 0; a < fam.size(); ++a)
            for (int b = 0; b < fam.size(); ++b) {
                ++pairs;
                int count = 0;
                for (const auto& c : complements) count += (c.mask >> a & 1) && (c.mask >> b & 1);
                const int m = grassmann_distance(fam.members[a], fam.members[b]);
                if (count != (q.k - m) * (q.n - q.k - m) && bad.is_null())
                    bad = {{"frame", digits_json(frame.points())}, {"p", fam.index[a].elements()},
                           {"q", fam.index[b].elements()}, {"count", count}, {"distance", m}};
            }
    }
    r.exhaustive = false;
    r.add("complement count equals (k-m)(n-k-m)", bad.is_null(),
          std::to_string(pairs) + " member pairs over " + std::to_string(q.samples) + " random frames", bad);
}

// The apartment graph is connected.
void suite_prop41(const Params& q, Report& r) {
    require_range(q.k >= 2 && q.k <= q.n - q.k, "prop4.1 needs 1 < k <= n-k");
    require_range(q.n <= 8, "prop4.1 is limited to n <= 8");
    const std::uint64_t count = apartment_count(q.p, q.n);
    if (count <= kExhaustiveApartmentLimit) {
        const auto aps = all_apartments(q.p, q.n, q.k, q.budget);
        AdjacencyGraph g;
        g.neighbors.resize(aps.size());
        for (std::size_t i = 0; i < aps.size(); ++i)
            for (std::size_t j = i + 1; j < aps.size(); ++j)
                if (apartments_adjacent(aps[i], aps[j])) {
                    g.neighbors[i].push_back(static_cast<int>(j));
                    g.neighbors[j].push_back(static_cast<int>(i));
                }
        r.params["apartments"] = aps.size();
        r.params["edges"] = g.edge_count();
        r.add("apartment count is |GL(n,p)|/((p-1)^n n!)", aps.size() == count,
              std::to_string(aps.size()) + " vs " + std::to_string(count));
        r.add("apartment graph is connected", is_connected(g), std::to_string(aps.size()) + " nodes");
    } else {
        r.exhaustive = false;
        r.notes.push_back(std::to_string(count) + " apartments exceed the exhaustive limit; only paths are checked");
    }
    std::mt19937_64 rng(q.seed);
    json bad = nullptr;
    std::size_t longest = 0;
    for (std::uint64_t s = 0; s < q.samples && bad.is_null(); ++s) {
        const auto a = apartment_from_frame(random_frame(q.p, q.n, rng), q.k);
        const auto b = apartment_from_frame(random_frame(q.p, q.n, rng), q.k);
        const auto path = connect_apartments(a, b);
        bool ok = !path.empty() && path.front().same_as(a) && path.back().same_as(b);
        for (std::size_t i = 1; i < path.size(); ++i) ok = ok && apartments_adjacent(path[i - 1], path[i]);
        longest = std::max(longest, path.size());
        if (!ok) {
            bad = json::array();
            for (const auto& ap : path) bad.push_back(io::to_json(ap));
        }
    }
    r.add("connect_apartments gives adjacent steps between the endpoints", bad.is_null(),
          std::to_string(q.samples) + " random pairs, longest path " + std::to_string(longest), bad);
}

void mixed_suite(const Params& q, Report& r, int lemma) {
    require_range(q.k >= 2 && q.n > 2 * q.k, "mixed configurations need k >= 2 and n > 2k");
    require_range(q.n <= 8, "mixed configurations are limited to n <= 8");
    if (lemma == 7) require_range(q.n == 5 && q.k == 2, "lemma4.7 is stated for n = 5, k = 2");
    const auto res = search_mixed_configs(q.p, q.k, q.n, q.budget);
    r.params["x_sets"] = res.x_sets;
    r.params["configs"] = res.configs;
    json hist = json::object();
    for (auto [z, c] : res.z_histogram) hist[std::to_string(z)] = c;
    r.params["z_histogram"] = hist;
    if (!res.complete) {
        r.budget_exhausted = true;
        r.exhaustive = false;
        r.notes.push_back("search stopped after " + std::to_string(res.x_sets) + " X sets");
    }
    if (res.configs == 0) r.notes.push_back("vacuous: no configuration exists at these parameters");
    const int zmax = res.z_histogram.empty() ? 0 : res.z_histogram.rbegin()->first;
    bool kept_ok = true;
    for (const auto& cfg : res.kept)
        kept_ok = kept_ok && check_mixed_config(cfg).empty() &&
                  res.z_histogram.count(mixed_intersection(cfg).size()) > 0;
    r.add("kept configurations pass the checker and subspace recount", kept_ok,
          std::to_string(res.kept.size()) + " kept");
    const std::string count = std::to_string(res.configs) + " configs, max |Z| = " + std::to_string(zmax);
    if (lemma == 5) {
        const auto b = b_of(q.n, q.k);
        r.add("|Z| <= b(n,k)", boost::rational<std::int64_t>(zmax) <= b,
              count + ", b = " + std::to_string(b.numerator()) + "/" + std::to_string(b.denominator()));
    } else if (lemma == 7) {
        r.add("|Z| <= 5 < 7 = a(5,2)", zmax <= 5 && a_of(5, 2) == 7, count);
    } else {
        r.add("|Z| < a(n,k)", static_cast<std::uint64_t>(zmax) < a_of(q.n, q.k),
              count + ", a = " + std::to_string(a_of(q.n, q.k)));
    }
}

// a(n,k) > b(n,k) on the grid except (5,2).
void suite_lemma46(const Params& q, Report& r) {
    r.params["grid"] = "n<=" + std::to_string(q.grid.max_n) + ",k<=" + std::to_string(q.grid.max_k);
    json exceptions = json::array();
    int cells = 0;
    for (int k = 2; k <= q.grid.max_k; ++k)
        for (int n = 2 * k + 1; n <= q.grid.max_n; ++n) {
            ++cells;
            if (!a_exceeds_b(n, k)) exceptions.push_back({n, k});
        }
    const bool in_grid = q.grid.max_k >= 2 && q.grid.max_n >= 5;
    const json expected = in_grid ? json::array({json::array({5, 2})}) : json::array();
    r.add("a(n,k) > b(n,k) except the stated case", exceptions == expected,
          std::to_string(cells) + " cells, exceptions " + exceptions.dump(), exceptions);
    if (in_grid) {
        const auto b = b_of(5, 2);
        r.add("(5,2) is the stated exception: a = 7, b = 15/2",
              a_of(5, 2) == 7 && b == boost::rational<std::int64_t>(15, 2));
        r.notes.push_back("(5,2) is the exception named in the lemma, not a failure");
    }
}

// J-mapping and isometry verdicts over the battery.
void suite_thm_main(const Params& q, Report& r) {
    require_range(q.p <= 3, "thm-main uses GF(2) or GF(3)");
    const auto battery = theorem_main_battery(q.p, q.seed);
    int positives = 0, negatives = 0;
    for (const auto& m : battery) {
        ScanOptions opts;
        const int n = static_cast<int>(m.map.source->n());
        if (apartment_count(q.p, n) > kExhaustiveApartmentLimit) {
            opts.mode = ScanMode::Sampled;
            opts.samples = std::max<std::uint64_t>(q.samples, 300);
            opts.seed = q.seed;
            r.exhaustive = false;
        } else {
            opts.budget = q.budget;
        }
        const auto t = verify_theorem_main(m.map, opts);
        (m.expect_isometric ? positives : negatives) += 1;
        json data = {{"j_mapping", t.j_mapping.pass},
                     {"isometric", t.isometric.pass},
                     {"injective", t.injective},
                     {"exhaustive", t.j_mapping.exhaustive},
                     {"apartments", t.j_mapping.checked}};
        if (!t.j_mapping.pass) data["j_mapping_reason"] = t.j_mapping.reason;
        if (!t.isometric.pass) data["isometric_reason"] = t.isometric.reason;
        if (t.common_type) data["type"] = to_string(*t.common_type);
        if (!t.note.empty()) data["note"] = t.note;
        r.add(m.name + ": J-mapping and isometric verdicts agree", t.agree,
              std::string(t.j_mapping.pass ? "J-mapping" : "not J-mapping") + ", " +
                  (t.isometric.pass ? "isometric" : "not isometric"),
              data);
        if (t.j_mapping.pass) r.add(m.name + ": injective", t.injective);
        r.add(m.name + ": verdict matches the construction", t.isometric.pass == m.expect_isometric,
              m.expect_isometric ? "built isometric" : "built non-isometric");
        if (t.common_type) r.add(m.name + ": all apartment images share one type", t.uniform_type);
    }
    r.params["positives"] = positives;
    r.params["negatives"] = negatives;
    if (!r.exhaustive) r.notes.push_back("sources with more than 5000 apartments are scanned by sampling");
}

struct CorCase {
    std::string name;
    SubspaceMap map;
    NormalForm form;
    std::optional<Matrix> l;  // compared up to one scalar when given
    bool lower_zero = true;
};

bool proportional(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (unsigned c = 1; c < a.modulus(); ++c) {
        bool all = true;
        for (std::size_t i = 0; i < a.rows() && all; ++i)
            for (std::size_t j = 0; j < a.cols() && all; ++j) all = b.get(i, j) == (c * a.get(i, j)) % a.modulus();
        if (all) return true;
    }
    return false;
}

void corollary_suite(const Params& q, Report& r, bool normal_forms) {
    require_range(q.k >= 2 && q.k < q.n - 1 && q.k <= q.n - q.k, "corollaries need 1 < k < n-1 and k <= n-k");
    require_range(q.n <= 6, "corollaries are limited to n <= 6");
    const auto g = std::make_shared<const GrassmannGraph>(GrassmannGraph::build(q.p, q.n, q.k));
    std::mt19937_64 rng(q.seed);
    std::vector<CorCase> cases;
    const std::size_t n = static_cast<std::size_t>(q.n);
    if (!normal_forms) {
        for (std::uint64_t s = 0; s < std::max<std::uint64_t>(3, std::min<std::uint64_t>(q.samples, 8)); ++s) {
            const Matrix l = random_invertible(q.p, n, rng);
            cases.push_back({"(l)_k #" + std::to_string(s + 1), embedding_from_linear(g, LinearEmbedding(l)),
                             NormalForm::Span, l});
        }
    } else {
        cases.push_back({"identity", embedding_from_linear(g, LinearEmbedding(Matrix::identity(q.p, n))),
                         NormalForm::Span, Matrix::identity(q.p, n)});
        Matrix incl = Matrix::identity(q.p, n);
        for (std::size_t c = 0; c < n; ++c) incl.set(n - 1, c, 1);
        cases.push_back({"inclusion-shaped l", embedding_from_linear(g, LinearEmbedding(incl)), NormalForm::Span, incl});
        const Matrix l = random_invertible(q.p, n, rng);
        cases.push_back({"random (l)_k", embedding_from_linear(g, LinearEmbedding(l)), NormalForm::Span, l});
        if (q.n == 2 * q.k) {
            cases.push_back({"annihilator", SubspaceMap::build(g, n, n - q.k, [](const Subspace& s) { return annihilator(s); }),
                             NormalForm::DualSpan, std::nullopt});
            cases.push_back({"random (l)*_k", dual_embedding_from_linear(g, LinearEmbedding(l)), NormalForm::DualSpan,
                             std::nullopt});
        }
    }
    for (const auto& c : cases) {
        const auto rep = verify_strong_corollaries(c.map);
        json data = {{"form", to_string(rep.form)}, {"strong", rep.strong}, {"reproduces", rep.reproduces}};
        if (rep.recovered) data["recovered"] = io::to_json(*rep.recovered);
        if (!rep.note.empty()) data["note"] = rep.note;
        r.add(c.name + ": strong", rep.strong);
        r.add(c.name + ": normal form " + to_string(c.form), rep.form == c.form, to_string(rep.form), data);
        r.add(c.name + ": recovered map reproduces f on every vertex", rep.reproduces);
        if (c.lower_zero) r.add(c.name + ": S = 0", rep.lower && rep.lower->dim() == 0);
        if (c.l && rep.recovered && c.form == NormalForm::Span)
            r.add(c.name + ": recovered l equals l up to a scalar", proportional(*c.l, *rep.recovered));
    }
}

const std::map<std::string, SuiteFn>& registry() {
    static const std::map<std::string, SuiteFn> suites = {
        {"lemma2.1", suite_lemma21},
        {"lemma2.2", suite_lemma22},
        {"lemma4.1", [](const Params& q, Report& r) { inexact_suite(q, r, 1); }},
        {"lemma4.2", [](const Params& q, Report& r) { inexact_suite(q, r, 2); }},
        {"lemma4.3", [](const Params& q, Report& r) { inexact_suite(q, r, 3); }},
        {"lemma4.4", suite_lemma44},
        {"prop4.1", suite_prop41},
        {"lemma4.5", [](const Params& q, Report& r) { mixed_suite(q, r, 5); }},
        {"lemma4.6", suite_lemma46},
        {"lemma4.7", [](const Params& q, Report& r) { mixed_suite(q, r, 7); }},
        {"lemma4.8", [](const Params& q, Report& r) { mixed_suite(q, r, 8); }},
        {"thm-main", suite_thm_main},
        {"cor1", [](const Params& q, Report& r) { corollary_suite(q, r, false); }},
        {"cor2", [](const Params& q, Report& r) { corollary_suite(q, r, true); }},
    };
    return suites;
}

}  // namespace

const std::vector<std::string>& suite_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const auto& [id, fn] : registry()) out.push_back(id);
        return out;
    }();
    return ids;
}

Report run_suite(const std::string& id, const Params& q) {
    const auto it = registry().find(id);
    if (it == registry().end()) throw DomainError("unknown lemma id '" + id + "'");
    require_supported_prime(q.p);
    Report r;
    r.command = "verify " + id;
    r.params = {{"p", q.p}, {"n", q.n}, {"k", q.k}, {"budget", q.budget}, {"seed", q.seed}, {"samples", q.samples}};
    try {
        it->second(q, r);
    } catch (const ResourceError& e) {
        r.budget_exhausted = true;
        r.exhaustive = false;
        r.add("search completed within budget", false, e.what());
    }
    return r;
}

// ---------------------------------------------------------------------------
// Map battery

namespace {

Subspace random_subspace(unsigned p, std::size_t n, std::size_t k, std::mt19937_64& rng) {
    return Subspace::span(random_injective(p, k, n, rng));
}

Subspace random_above(const Subspace& s, std::size_t k, std::mt19937_64& rng) {
    Subspace out = s;
    while (out.dim() < k) {
        const auto v = random_subspace(s.modulus(), s.ambient(), 1, rng);
        out = sum(out, v);
    }
    return out;
}

SubspaceMap replace(const SubspaceMap& f, int vertex, Subspace image) {
    SubspaceMap out = f;
    out.table[vertex] = std::move(image);
    return out;
}

}  // namespace

std::vector<NamedMap> theorem_main_battery(unsigned p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto graph = [&](std::size_t n, std::size_t k) {
        return std::make_shared<const GrassmannGraph>(GrassmannGraph::build(p, n, k));
    };
    const auto g42 = graph(4, 2), g41 = graph(4, 1), g43 = graph(4, 3), g52 = graph(5, 2);
    auto inv = [&](std::size_t n) { return LinearEmbedding(random_invertible(p, n, rng)); };
    auto id = [&](std::size_t n) { return LinearEmbedding(Matrix::identity(p, n)); };
    auto ann = [](const std::shared_ptr<const GrassmannGraph>& g) {
        return SubspaceMap::build(g, g->n(), g->n() - g->k(), [](const Subspace& s) { return annihilator(s); });
    };
    auto phi_s = [&](std::size_t n) {  // S a line of GF(p)^(n+1)
        return ParabolicInterval(random_subspace(p, n + 1, 1, rng), Subspace::full(p, n + 1), 0);
    };
    auto phi_u = [&](std::size_t n) {  // U a hyperplane of GF(p)^(n+1)
        return ParabolicInterval(Subspace::zero(p, n + 1), random_subspace(p, n + 1, n, rng), 0);
    };

    std::vector<NamedMap> out;
    auto pos = [&](std::string name, SubspaceMap f) { out.push_back({std::move(name), true, std::move(f)}); };
    pos("identity G(4,2)", embedding_from_linear(g42, id(4)));
    pos("annihilator G(4,2)", ann(g42));
    for (int i = 1; i <= 3; ++i) pos("(l)_2 G(4,2) #" + std::to_string(i), embedding_from_linear(g42, inv(4)));
    for (int i = 1; i <= 2; ++i) pos("(l)*_2 G(4,2) #" + std::to_string(i), dual_embedding_from_linear(g42, inv(4)));
    for (int i = 1; i <= 2; ++i) pos("Φ_S(l)_2 G(4,2) #" + std::to_string(i), embedding_from_linear(g42, inv(4), phi_s(4)));
    for (int i = 1; i <= 2; ++i)
        pos("Φ^U(l)*_2 G(4,2) #" + std::to_string(i), dual_embedding_from_linear(g42, inv(4), phi_u(4)));
    pos("(l)_2 injective into GF(p)^5", embedding_from_linear(g42, LinearEmbedding(random_injective(p, 4, 5, rng))));
    {
        const auto s = random_subspace(p, 6, 1, rng);
        const auto u = random_above(s, 5, rng);
        pos("Φ^U_S(l)_2 G(4,2)", embedding_from_linear(g42, inv(4), ParabolicInterval(s, u, 0)));
    }
    pos("identity G(4,1)", embedding_from_linear(g41, id(4)));
    pos("(l)_1 G(4,1)", embedding_from_linear(g41, inv(4)));
    pos("identity G(4,3)", embedding_from_linear(g43, id(4)));
    pos("annihilator G(4,3)", ann(g43));
    pos("(l)_3 G(4,3)", embedding_from_linear(g43, inv(4)));
    pos("identity G(5,2)", embedding_from_linear(g52, id(5)));
    pos("(l)_2 G(5,2)", embedding_from_linear(g52, inv(5)));
    pos("Φ_S(l)_2 G(5,2)", embedding_from_linear(g52, inv(5), phi_s(5)));
    pos("Φ^U(l)*_2 G(5,2)", dual_embedding_from_linear(g52, inv(5), phi_u(5)));

    auto neg = [&](std::string name, SubspaceMap f) { out.push_back({std::move(name), false, std::move(f)}); };
    auto vertex = [&](const SubspaceMap& f) {
        return std::uniform_int_distribution<int>(0, f.source->size() - 1)(rng);
    };
    // Merges: two vertices share an image.
    for (std::size_t i : {0u, 1u, 2u, 5u, 7u, 13u}) {
        const auto& f = out[i].map;
        const int v = vertex(f);
        int w = vertex(f);
        while (w == v) w = vertex(f);
        neg(out[i].name + " merged at " + std::to_string(v), replace(f, v, f.table[w]));
    }
    // Swaps of two images.
    for (std::size_t i : {0u, 1u, 3u, 4u, 6u, 9u}) {
        const auto& f = out[i].map;
        const int v = vertex(f);
        int w = vertex(f);
        while (w == v) w = vertex(f);
        SubspaceMap m = replace(f, v, f.table[w]);
        m.table[w] = f.table[v];
        neg(out[i].name + " swapped at " + std::to_string(v) + "," + std::to_string(w), std::move(m));
    }
    // One image moved to a fresh subspace that breaks some distance.
    for (std::size_t i : {7u, 9u, 11u, 12u}) {
        const auto& f = out[i].map;
        const int v = vertex(f);
        const auto pool = grassmannian(p, f.target_n, f.target_k);
        std::vector<std::size_t> order(pool.size());
        for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t j : order) {
            const auto& q = pool[j];
            bool breaks = false;
            for (int w = 0; w < f.source->size() && !breaks; ++w)
                breaks = w != v && grassmann_distance(q, f.table[w]) != f.source->distance(v, w);
            if (breaks) {
                neg(out[i].name + " moved at " + std::to_string(v), replace(f, v, q));
                break;
            }
        }
    }
    // Degenerate maps.
    {
        const auto c = g42->vertex(0);
        neg("constant G(4,2)", SubspaceMap::build(g42, 4, 2, [&](const Subspace&) { return c; }));
        const auto e1 = parse_digits(p, "1000");
        const auto plane = Subspace::span(p, 4, std::vector<Vector>{e1, parse_digits(p, "0100")});
        neg("collapse of the star at e1 G(4,2)",
            SubspaceMap::build(g42, 4, 2, [&](const Subspace& s) { return s.contains(e1) ? plane : s; }));
        auto widen = [&](const Subspace& s) {
            for (const char* d : {"1000", "0100", "0010"}) {
                const auto v = parse_digits(p, d);
                if (!s.contains(v)) return sum(s, Subspace::span(p, 4, std::vector<Vector>{v}));
            }
            return s;
        };
        neg("widen by a coordinate line G(4,2)", SubspaceMap::build(g42, 4, 3, widen));
        neg("widen by a coordinate line G(4,1)", SubspaceMap::build(g41, 4, 2, widen));
    }
    return out;
}

}  // namespace grassmann::verify
