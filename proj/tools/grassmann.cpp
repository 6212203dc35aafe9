// Command-line front end: enumerate, verify, classify, path, report-merge.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "grassmann/verify.hpp"

using namespace grassmann;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0, kExitFail = 1, kExitUsage = 2;

struct Options {
    unsigned p = 2;
    int n = 4, k = 2;
    std::optional<int> nprime, kprime;
    std::uint64_t budget = kDefaultApartmentBudget;
    std::uint64_t seed = 1;
    std::uint64_t samples = 50;
    unsigned jobs = 1;
    std::string format = "json";
    std::string out;
    bool timing = false;
    std::string grid = "n<=12,k<=5";
    bool normalize = false;

    std::string what;
    std::string lemma;
    std::vector<std::string> files;
};

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw FormatError(o.out, "cannot write output file");
    f << text;
}

std::string render(const Options& o, const verify::Report& r) {
    if (o.format == "csv") return verify::to_csv(r);
    if (o.format == "text") return verify::to_text(r);
    return verify::to_json(r).dump(2) + "\n";
}

int finish(const Options& o, verify::Report& r, std::chrono::steady_clock::time_point start) {
    if (o.timing) r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(o, render(o, r));
    return r.pass() ? kExitPass : kExitFail;
}

void check_graph_params(const Options& o, bool grassmann) {
    if (grassmann) require_supported_prime(o.p);
    if (o.n < 1 || o.n > 16) throw DomainError("--n must lie in [1, 16]");
    if (o.k < 0 || o.k > o.n) throw DomainError("--k must lie in [0, n]");
}

int cmd_enum(const Options& o) {
    std::ostringstream text;
    if (o.what == "johnson") {
        check_graph_params(o, false);
        const JohnsonGraph g(o.n, o.k);
        if (o.format == "json") {
            text << io::graph_json(g).dump(2) << "\n";
        } else if (o.format == "csv") {
            text << "id,vertex,degree\n";
            for (int v = 0; v < g.size(); ++v)
                text << v << ",\"" << json(g.vertices()[v].elements()).dump() << "\"," << g.adjacency().neighbors[v].size()
                     << "\n";
        } else {
            text << "J(" << o.n << "," << o.k << "): " << g.size() << " vertices, " << g.adjacency().edge_count()
                 << " edges\n";
        }
    } else if (o.what == "grassmann") {
        check_graph_params(o, true);
        const auto g = GrassmannGraph::build(o.p, o.n, o.k);
        if (o.format == "json") {
            text << io::graph_json(g).dump(2) << "\n";
        } else if (o.format == "csv") {
            text << "id,vertex,degree\n";
            for (int v = 0; v < g.size(); ++v)
                text << v << "," << g.vertex(v).to_string() << "," << g.adjacency().neighbors[v].size() << "\n";
        } else {
            text << "Grassmann graph G_" << o.k << "(GF(" << o.p << ")^" << o.n << "): " << g.size() << " vertices, "
                 << g.adjacency().edge_count() << " edges\n";
        }
    } else {
        check_graph_params(o, true);
        if (o.k < 1 || o.k >= o.n) throw DomainError("apartments need 1 <= k <= n-1");
        const auto aps = all_apartments(o.p, o.n, o.k, o.budget);
        if (o.format == "json") {
            json list = json::array();
            for (const auto& a : aps) list.push_back(io::to_json(a));
            json doc = {{"p", o.p}, {"n", o.n}, {"k", o.k}, {"count", aps.size()}, {"apartments", list}};
            text << doc.dump(2) << "\n";
        } else if (o.format == "csv") {
            text << "id,frame\n";
            for (std::size_t i = 0; i < aps.size(); ++i) {
                text << i << ",";
                for (std::size_t j = 0; j < aps[i].frame.dim(); ++j)
                    text << (j ? " " : "") << to_digits(aps[i].frame.point(j));
                text << "\n";
            }
        } else {
            text << aps.size() << " apartments of G_" << o.k << "(GF(" << o.p << ")^" << o.n << ")\n";
        }
    }
    emit(o, text.str());
    return kExitPass;
}

int cmd_verify(const Options& o, std::chrono::steady_clock::time_point start) {
    verify::Params q;
    q.p = o.p;
    q.n = o.n;
    q.k = o.k;
    q.nprime = o.nprime;
    q.kprime = o.kprime;
    q.budget = o.budget;
    q.seed = o.seed;
    q.samples = o.samples;
    q.grid = verify::parse_grid(o.grid);
    auto r = verify::run_suite(o.lemma, q);
    return finish(o, r, start);
}

IndexedFamily load_family(const json& j, const std::string& path, bool normalize) {
    if (j.is_object() && j.contains("frame")) return io::apartment_from_json(j, path, normalize).family;
    return io::family_from_json(j, path, normalize);
}

int cmd_classify(const Options& o, std::chrono::steady_clock::time_point start) {
    const std::string& path = o.files.front();
    const auto fam = load_family(io::read_json_file(path), path, o.normalize);
    if (o.nprime && static_cast<std::size_t>(*o.nprime) != fam.ambient)
        throw FormatError(path, "members live in dimension " + std::to_string(fam.ambient) + ", not --nprime");
    if (o.kprime)
        for (const auto& m : fam.members)
            if (m.dim() != static_cast<std::size_t>(*o.kprime))
                throw FormatError(path, "member " + m.to_string() + " is not of dimension --kprime");
    verify::Report r;
    r.command = "classify";
    r.params = {{"file", path}, {"p", fam.p}, {"n", fam.n}, {"k", fam.k}, {"ambient", fam.ambient}};
    try {
        const auto w = classify_j_subset(fam.members, fam.n, fam.k);
        r.add("classification", true, to_string(w.kind), io::to_json(w));
        if (w.kind != JKind::NotJSubset && w.kind != JKind::Clique) {
            const auto rebuilt = reconstruct_members(w);
            r.add("witness rebuilds every member", rebuilt == fam.members);
        }
    } catch (const InvariantViolation& e) {
        r.add("classification", false, e.what());
    }
    return finish(o, r, start);
}

json step_certificate(const Apartment& a, const Apartment& b) {
    std::uint64_t shared = 0;
    for (int id = 0; id < a.family.size(); ++id)
        if (b.family.find(a.family.members[id])) shared |= std::uint64_t{1} << id;
    for (const auto& s : special_subsets(a.family))
        if (s.mask == shared)
            return {{"adjacent", true}, {"shared", std::popcount(shared)}, {"special", {s.i, s.j}}};
    return {{"adjacent", false}, {"shared", std::popcount(shared)}};
}

int cmd_path(const Options& o, std::chrono::steady_clock::time_point start) {
    const auto a = io::apartment_from_json(io::read_json_file(o.files[0]), o.files[0], o.normalize);
    const auto b = io::apartment_from_json(io::read_json_file(o.files[1]), o.files[1], o.normalize);
    if (a.frame.modulus() != b.frame.modulus() || a.frame.dim() != b.frame.dim() || a.k() != b.k())
        throw FormatError(o.files[1], "apartments differ in p, n or k");
    const int n = static_cast<int>(a.frame.dim()), k = a.k();
    if (!(1 < k && k <= n - k)) throw DomainError("path needs 1 < k <= n-k");
    const auto path = connect_apartments(a, b);
    verify::Report r;
    r.command = "path";
    r.params = {{"from", o.files[0]}, {"to", o.files[1]}, {"length", path.size()}};
    json apartments = json::array(), steps = json::array();
    for (const auto& ap : path) apartments.push_back(io::to_json(ap));
    bool valid = !path.empty() && path.front().same_as(a) && path.back().same_as(b);
    for (std::size_t i = 1; i < path.size(); ++i) {
        auto cert = step_certificate(path[i - 1], path[i]);
        valid = valid && cert["adjacent"].get<bool>();
        cert["step"] = i;
        steps.push_back(cert);
    }
    r.add("path joins the endpoints through adjacent apartments", valid, std::to_string(path.size()) + " apartments",
          {{"path", apartments}, {"steps", steps}});
    return finish(o, r, start);
}

int cmd_merge(const Options& o, std::chrono::steady_clock::time_point start) {
    std::vector<verify::Report> reports;
    for (const auto& f : o.files) reports.push_back(verify::report_from_json(io::read_json_file(f), f));
    auto merged = verify::merge_reports(reports);
    return finish(o, merged, start);
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Grassmann and Johnson graphs over GF(p): enumeration and lemma verification"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--p", o.p, "field size, a prime <= 31")->capture_default_str();
    app.add_option("--n", o.n, "dimension of V / size of the index set")->capture_default_str();
    app.add_option("--k", o.k, "subspace dimension / subset size")->capture_default_str();
    app.add_option("--nprime", o.nprime, "expected target dimension n' (classify)");
    app.add_option("--kprime", o.kprime, "expected member dimension k' (classify)");
    app.add_option("--budget", o.budget, "search budget (candidate sets)")->capture_default_str();
    app.add_option("--seed", o.seed, "seed for sampled checks")->capture_default_str();
    app.add_option("--samples", o.samples, "random instances for sampled checks")->capture_default_str();
    app.add_option("--jobs", o.jobs, "worker count (runs single-threaded)")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--format", o.format,
                   "json | csv | text. CSV columns: reports command,check,pass,detail; "
                   "enum graphs id,vertex,degree; enum apartments id,frame")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--out", o.out, "output file (default stdout)");
    app.add_flag("--timing", o.timing, "include wall-clock seconds in reports");
    app.add_flag("--normalize", o.normalize, "accept subspace rows that are not in reduced row echelon form");

    auto* en = app.add_subcommand("enum", "enumerate a graph or the apartments");
    en->add_option("what", o.what, "grassmann | johnson | apartments")
        ->required()
        ->check(CLI::IsMember({"grassmann", "johnson", "apartments"}));

    auto* ve = app.add_subcommand("verify", "run one verification suite");
    ve->add_option("lemma", o.lemma, "lemma id")->required()->check(CLI::IsMember(verify::suite_ids()));
    ve->add_option("--grid", o.grid, "lemma4.6 grid, e.g. n<=12,k<=5")->capture_default_str();

    auto* cl = app.add_subcommand("classify", "classify a family or apartment file");
    cl->add_option("file", o.files, "family JSON")->required()->expected(1);

    auto* pa = app.add_subcommand("path", "apartment path between two apartment files");
    pa->add_option("files", o.files, "two apartment JSON files")->required()->expected(2);

    auto* me = app.add_subcommand("report-merge", "merge report files");
    me->add_option("files", o.files, "report JSON files")->required()->expected(1, -1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        if (*en) return cmd_enum(o);
        if (*ve) return cmd_verify(o, start);
        if (*cl) return cmd_classify(o, start);
        if (*pa) return cmd_path(o, start);
        return cmd_merge(o, start);
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ResourceError& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kExitFail;
    } catch (const InvariantViolation& e) {
        std::cerr << "falsified: " << e.what() << "\n";
        return kExitFail;
    }
}
