#include <doctest.h>

#include <algorithm>

#include "grassmann/verify.hpp"

using namespace grassmann;
using nlohmann::json;

namespace {

Subspace sp(unsigned p, std::initializer_list<const char*> rows) {
    std::vector<Vector> vs;
    for (const char* r : rows) vs.push_back(parse_digits(p, r));
    return Subspace::span(p, vs.front().size(), vs);
}

std::shared_ptr<const GrassmannGraph> graph(unsigned p, std::size_t n, std::size_t k) {
    return std::make_shared<const GrassmannGraph>(GrassmannGraph::build(p, n, k));
}

}  // namespace

TEST_CASE("matrix and subspace json round trips") {
    const Matrix m = Matrix::parse(3, "120\n012\n");
    CHECK(io::to_json(m) == json::parse(R"({"p":3,"rows":["120","012"]})"));
    CHECK(io::matrix_from_json(io::to_json(m)) == m);

    const auto s = sp(2, {"1100", "0010"});
    CHECK(io::to_json(s) == json::parse(R"({"p":2,"n":4,"rows":["1100","0010"]})"));
    CHECK(io::subspace_from_json(io::to_json(s)) == s);

    const json raw = json::parse(R"({"p":2,"n":4,"rows":["0010","1110"]})");
    CHECK_THROWS_AS(io::subspace_from_json(raw), FormatError);
    CHECK(io::subspace_from_json(raw, "s", true) == sp(2, {"1100", "0010"}));

    CHECK_THROWS_AS(io::subspace_from_json(json::parse(R"({"p":4,"n":2,"rows":["10"]})")), FormatError);
    CHECK_THROWS_AS(io::subspace_from_json(json::parse(R"({"p":2,"n":3,"rows":["10"]})")), FormatError);
    CHECK_THROWS_AS(io::subspace_from_json(json::parse(R"({"p":2,"rows":["10"]})")), FormatError);
    try {
        io::subspace_from_json(json::parse(R"({"p":2,"n":2,"rows":["12"]})"), "x");
        FAIL("expected a FormatError");
    } catch (const FormatError& e) {
        CHECK(e.where() == "x.rows[0]");
    }
}

TEST_CASE("graph json follows the vertex order and edge set") {
    const auto g = GrassmannGraph::build(2, 4, 2);
    const auto j = io::graph_json(g);
    CHECK(j["kind"] == "grassmann");
    CHECK(j["vertices"].size() == 35);
    CHECK(j["edges"].size() == static_cast<std::size_t>(g.adjacency().edge_count()));
    for (const auto& e : j["edges"]) CHECK(g.adjacent(e[0].get<int>(), e[1].get<int>()));
    for (int v = 0; v < g.size(); ++v) CHECK(io::subspace_from_json(j["vertices"][v]) == g.vertex(v));

    const auto jj = io::graph_json(JohnsonGraph(5, 2));
    CHECK(jj["vertices"].size() == 10);
    CHECK(jj["edges"].size() == 30);
    CHECK(jj["vertices"][0] == json::array({1, 2}));
}

TEST_CASE("apartment, family, config and map round trips") {
    std::mt19937_64 rng(5);
    const auto ap = apartment_from_frame(random_frame(3, 4, rng), 2);
    const auto back = io::apartment_from_json(io::to_json(ap));
    CHECK(back.same_as(ap));
    CHECK(back.family.members == ap.family.members);

    const auto fam = j_family_dual(2, std::vector<Vector>{parse_digits(2, "1000"), parse_digits(2, "0100"),
                                                          parse_digits(2, "0010"), parse_digits(2, "0001"),
                                                          parse_digits(2, "1111")},
                                   2);
    const auto fback = io::family_from_json(io::to_json(fam));
    CHECK(fback.members == fam.members);
    CHECK(fback.dual);
    CHECK(fback.generators == fam.generators);
    json broken = io::to_json(fam);
    broken["members"][1]["index"] = broken["members"][0]["index"];
    CHECK_THROWS_AS(io::family_from_json(broken), FormatError);

    const auto search = search_mixed_configs(2, 2, 5, 10, 1);
    REQUIRE_FALSE(search.kept.empty());
    const auto cfg = io::config_from_json(io::to_json(search.kept.front()));
    CHECK(check_mixed_config(cfg).empty());
    CHECK(mixed_intersection(cfg).z == mixed_intersection(search.kept.front()).z);

    const auto g = graph(2, 4, 2);
    const auto f = embedding_from_linear(g, LinearEmbedding(Matrix::parse(2, "1100\n0110\n0011\n0001\n")));
    const auto fj = io::to_json(f);
    const auto f2 = io::map_from_json(fj);
    CHECK(f2.table == f.table);
    json short_table = fj;
    short_table["table"].erase(short_table["table"].begin());
    CHECK_THROWS_AS(io::map_from_json(short_table), FormatError);
}

TEST_CASE("reports merge independently of input order") {
    verify::Report a, b;
    a.command = "verify x";
    a.add("one", true);
    a.add("two", false, "broken", json{{"at", 3}});
    a.notes.push_back("sampled");
    b.command = "verify y";
    b.add("three", true);
    b.exhaustive = false;
    const std::vector ab{a, b}, ba{b, a};
    const auto m1 = verify::merge_reports(ab), m2 = verify::merge_reports(ba);
    CHECK(verify::to_json(m1) == verify::to_json(m2));
    CHECK_FALSE(m1.pass());
    CHECK_FALSE(m1.exhaustive);
    CHECK(m1.checks.size() == 3);

    const auto again = verify::report_from_json(verify::to_json(a));
    CHECK(verify::to_json(again) == verify::to_json(a));
    CHECK(verify::to_csv(a).find("verify x,two,false,broken") != std::string::npos);
    CHECK_THROWS_AS(verify::report_from_json(json::parse(R"({"command":"x"})")), FormatError);
}

TEST_CASE("grid bounds and apartment counts") {
    const auto g = verify::parse_grid("n<=12,k<=5");
    CHECK(g.max_n == 12);
    CHECK(g.max_k == 5);
    CHECK_THROWS_AS(verify::parse_grid("n<12"), DomainError);
    CHECK(verify::apartment_count(2, 4) == 840);
    CHECK(verify::apartment_count(2, 3) == 28);
    CHECK(verify::apartment_count(3, 4) == 63180);
    CHECK(verify::apartment_count(2, 5) == 83328);
}

TEST_CASE("suites reject parameters outside their range") {
    verify::Params q;
    q.n = 4;
    q.k = 2;
    CHECK_THROWS_AS(verify::run_suite("lemma4.5", q), DomainError);
    CHECK_THROWS_AS(verify::run_suite("lemma2.2", q), DomainError);
    CHECK_THROWS_AS(verify::run_suite("no-such-lemma", q), DomainError);
    q.n = 6;
    CHECK_THROWS_AS(verify::run_suite("lemma4.7", q), DomainError);
}

TEST_CASE("suites pass at desk scale and are deterministic") {
    verify::Params q;
    for (const char* id : {"lemma2.1", "lemma4.1", "lemma4.2", "lemma4.3", "prop4.1", "cor1", "cor2"}) {
        const auto r1 = verify::run_suite(id, q), r2 = verify::run_suite(id, q);
        INFO(verify::to_text(r1));
        CHECK(r1.pass());
        CHECK(verify::to_json(r1).dump() == verify::to_json(r2).dump());
    }
    q.n = 5;
    for (const char* id : {"lemma2.2", "lemma4.4", "lemma4.5", "lemma4.7", "lemma4.8"}) {
        const auto r = verify::run_suite(id, q);
        INFO(verify::to_text(r));
        CHECK(r.pass());
    }
    const auto r46 = verify::run_suite("lemma4.6", q);
    CHECK(r46.pass());
    CHECK(r46.checks.front().data == json::array({json::array({5, 2})}));
}

TEST_CASE("budget exhaustion is reported, not thrown") {
    verify::Params q;
    q.budget = 10;
    const auto r = verify::run_suite("lemma4.2", q);
    CHECK(r.budget_exhausted);
    CHECK_FALSE(r.pass());
    CHECK(verify::to_json(r)["outcome"] == "budget-exhausted");

    q.n = 5;
    const auto m = verify::run_suite("lemma4.5", q);
    CHECK(m.budget_exhausted);
}

TEST_CASE("theorem main battery: predicted verdicts and agreement") {
    const auto battery = verify::theorem_main_battery(2, 1);
    const auto positives = std::count_if(battery.begin(), battery.end(), [](const auto& m) { return m.expect_isometric; });
    CHECK(positives >= 20);
    CHECK(battery.size() - positives >= 20);
    for (const auto& m : battery) {
        INFO(m.name);
        CHECK(is_isometric_embedding(m.map).pass == m.expect_isometric);
    }
    verify::Params q;
    const auto r = verify::run_suite("thm-main", q);
    INFO(verify::to_text(r));
    CHECK(r.pass());
}
