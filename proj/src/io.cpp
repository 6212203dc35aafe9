#include "grassmann/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace grassmann::io {

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw FormatError(where, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) throw FormatError(where + "." + key, "missing");
    return *it;
}

std::int64_t integer(const json& j, const char* key, const std::string& where, std::int64_t lo, std::int64_t hi) {
    const auto& v = field(j, key, where);
    if (!v.is_number_integer()) throw FormatError(where + "." + key, "expected an integer");
    const auto x = v.get<std::int64_t>();
    if (x < lo || x > hi)
        throw FormatError(where + "." + key,
                          "value " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return x;
}

unsigned modulus(const json& j, const std::string& where) {
    const auto p = static_cast<unsigned>(integer(j, "p", where, 2, 31));
    if (!is_prime(p)) throw FormatError(where + ".p", std::to_string(p) + " is not prime");
    return p;
}

Vector digits(unsigned p, const json& v, std::size_t n, const std::string& where) {
    if (!v.is_string()) throw FormatError(where, "expected a digit string");
    Vector out;
    try {
        out = parse_digits(p, v.get<std::string>());
    } catch (const DomainError& e) {
        throw FormatError(where, e.what());
    }
    if (n != 0 && out.size() != n)
        throw FormatError(where, "expected " + std::to_string(n) + " digits, got " + std::to_string(out.size()));
    return out;
}

const json& array(const json& j, const char* key, const std::string& where) {
    const auto& v = field(j, key, where);
    if (!v.is_array()) throw FormatError(where + "." + key, "expected an array");
    return v;
}

json digit_list(std::span<const Vector> vs) {
    json out = json::array();
    for (const auto& v : vs) out.push_back(to_digits(v));
    return out;
}

std::vector<Vector> read_digit_list(unsigned p, const json& j, const char* key, std::size_t n,
                                    const std::string& where) {
    std::vector<Vector> out;
    const auto& a = array(j, key, where);
    for (std::size_t i = 0; i < a.size(); ++i)
        out.push_back(digits(p, a[i], n, where + "." + key + "[" + std::to_string(i) + "]"));
    return out;
}

json edges_of(const AdjacencyGraph& g) {
    json edges = json::array();
    for (std::size_t a = 0; a < g.neighbors.size(); ++a)
        for (int b : g.neighbors[a])
            if (static_cast<int>(a) < b) edges.push_back({static_cast<int>(a), b});
    return edges;
}

}  // namespace

json to_json(const Matrix& m) { return {{"p", m.modulus()}, {"rows", m.row_strings()}}; }

Matrix matrix_from_json(const json& j, const std::string& where) {
    const unsigned p = modulus(j, where);
    const auto rows = read_digit_list(p, j, "rows", 0, where);
    if (rows.empty()) throw FormatError(where + ".rows", "a matrix needs at least one row");
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].size() != rows[0].size())
            throw FormatError(where + ".rows[" + std::to_string(i) + "]", "row length differs from row 0");
    return Matrix::from_rows(p, rows[0].size(), rows);
}

json to_json(const Subspace& s) {
    return {{"p", s.modulus()}, {"n", s.ambient()}, {"rows", s.basis().row_strings()}};
}

Subspace subspace_from_json(const json& j, const std::string& where, bool normalize) {
    const unsigned p = modulus(j, where);
    const auto n = static_cast<std::size_t>(integer(j, "n", where, 1, 64));
    const auto rows = read_digit_list(p, j, "rows", n, where);
    const Matrix m = Matrix::from_rows(p, n, rows);
    const Subspace s = Subspace::span(m);
    if (!normalize && !(s.basis() == m))
        throw FormatError(where + ".rows", "not in reduced row echelon form (canonical form is " +
                                               s.to_string() + ")");
    return s;
}

json graph_json(const GrassmannGraph& g) {
    json vertices = json::array();
    for (const auto& v : g.vertices()) vertices.push_back(to_json(v));
    return {{"kind", "grassmann"}, {"p", g.p()},         {"n", g.n()},
            {"k", g.k()},          {"vertices", vertices}, {"edges", edges_of(g.adjacency())}};
}

json graph_json(const JohnsonGraph& g) {
    json vertices = json::array();
    for (const auto& v : g.vertices()) vertices.push_back(v.elements());
    return {{"kind", "johnson"}, {"n", g.n()}, {"k", g.k()}, {"vertices", vertices}, {"edges", edges_of(g.adjacency())}};
}

json to_json(const Apartment& a) {
    json frame = json::array();
    const unsigned p = a.frame.modulus();
    for (const auto& pt : a.frame.points()) frame.push_back(to_json(Subspace::span(p, pt.size(), std::vector<Vector>{pt})));
    return {{"frame", frame}, {"k", a.k()}};
}

Apartment apartment_from_json(const json& j, const std::string& where, bool normalize) {
    const auto& f = array(j, "frame", where);
    if (f.empty()) throw FormatError(where + ".frame", "empty frame");
    std::vector<Vector> points;
    unsigned p = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const std::string at = where + ".frame[" + std::to_string(i) + "]";
        const Subspace s = subspace_from_json(f[i], at, normalize);
        if (s.dim() != 1) throw FormatError(at, "a frame point must be one-dimensional");
        if (p != 0 && s.modulus() != p) throw FormatError(at, "field differs from frame[0]");
        p = s.modulus();
        points.push_back(s.representative());
    }
    const auto k = static_cast<int>(integer(j, "k", where, 1, static_cast<std::int64_t>(points.size()) - 1));
    try {
        return apartment_from_frame(Frame(p, points), k);
    } catch (const DomainError& e) {
        throw FormatError(where + ".frame", e.what());
    }
}

json to_json(const IndexedFamily& f) {
    json members = json::array();
    for (std::size_t i = 0; i < f.members.size(); ++i)
        members.push_back({{"index", f.index[i].elements()}, {"subspace", to_json(f.members[i])}});
    return {{"p", f.p},       {"ambient", f.ambient},
            {"n", f.n},       {"k", f.k},
            {"dual", f.dual}, {"generators", digit_list(f.generators)},
            {"members", members}};
}

IndexedFamily family_from_json(const json& j, const std::string& where, bool normalize) {
    IndexedFamily f;
    f.p = modulus(j, where);
    f.ambient = static_cast<std::size_t>(integer(j, "ambient", where, 1, 64));
    f.n = static_cast<int>(integer(j, "n", where, 2, 64));
    f.k = static_cast<int>(integer(j, "k", where, 1, f.n - 1));
    if (j.contains("dual")) {
        if (!j["dual"].is_boolean()) throw FormatError(where + ".dual", "expected a boolean");
        f.dual = j["dual"].get<bool>();
    }
    if (j.contains("generators")) f.generators = read_digit_list(f.p, j, "generators", f.ambient, where);
    f.index = k_subsets(f.n, f.k);
    if (f.index.size() > 64) throw FormatError(where + ".n", "families are limited to 64 members");
    std::vector<std::optional<Subspace>> slots(f.index.size());
    const auto& members = array(j, "members", where);
    for (std::size_t i = 0; i < members.size(); ++i) {
        const std::string at = where + ".members[" + std::to_string(i) + "]";
        const auto& idx = array(members[i], "index", at);
        std::vector<int> elements;
        for (const auto& e : idx) {
            if (!e.is_number_integer()) throw FormatError(at + ".index", "expected integers");
            elements.push_back(e.get<int>());
        }
        std::optional<KSubset> a;
        try {
            a = KSubset(f.n, elements);
        } catch (const DomainError& e) {
            throw FormatError(at + ".index", e.what());
        }
        if (a->size() != f.k) throw FormatError(at + ".index", "expected " + std::to_string(f.k) + " elements");
        const int id = f.id_of(*a);
        if (slots[id]) throw FormatError(at + ".index", "index listed twice");
        const Subspace s = subspace_from_json(field(members[i], "subspace", at), at + ".subspace", normalize);
        if (s.modulus() != f.p || s.ambient() != f.ambient)
            throw FormatError(at + ".subspace", "field or ambient dimension differs from the family");
        slots[id] = s;
    }
    for (std::size_t id = 0; id < slots.size(); ++id) {
        if (!slots[id]) throw FormatError(where + ".members", "no member for index " + json(f.index[id].elements()).dump());
        f.members.push_back(*slots[id]);
    }
    return f;
}

json to_json(const MixedConfig& c) {
    json hyper = json::array();
    for (const auto& h : c.hyperplanes) hyper.push_back(to_json(h));
    return {{"p", c.p}, {"k", c.k}, {"x", digit_list(c.x)}, {"y", digit_list(c.y)}, {"hyperplanes", hyper}};
}

MixedConfig config_from_json(const json& j, const std::string& where, bool normalize) {
    MixedConfig c;
    c.p = modulus(j, where);
    c.k = static_cast<int>(integer(j, "k", where, 1, 16));
    const auto dim = static_cast<std::size_t>(2 * c.k);
    c.x = read_digit_list(c.p, j, "x", dim, where);
    c.y = read_digit_list(c.p, j, "y", dim, where);
    const auto& h = array(j, "hyperplanes", where);
    for (std::size_t i = 0; i < h.size(); ++i)
        c.hyperplanes.push_back(subspace_from_json(h[i], where + ".hyperplanes[" + std::to_string(i) + "]", normalize));
    if (c.hyperplanes.empty())
        for (const auto& y : c.y) c.hyperplanes.push_back(annihilator(Subspace::span(c.p, dim, std::vector<Vector>{y})));
    return c;
}

json to_json(const SubspaceMap& f) {
    json table = json::array();
    for (std::size_t id = 0; id < f.table.size(); ++id) table.push_back({static_cast<int>(id), to_json(f.table[id])});
    return {{"source", {{"p", f.p()}, {"n", f.source->n()}, {"k", f.source->k()}}},
            {"target", {{"n", f.target_n}, {"k", f.target_k}}},
            {"table", table}};
}

SubspaceMap map_from_json(const json& j, const std::string& where, bool normalize) {
    const auto& src = field(j, "source", where);
    const unsigned p = modulus(src, where + ".source");
    const auto n = static_cast<std::size_t>(integer(src, "n", where + ".source", 2, 16));
    const auto k = static_cast<std::size_t>(integer(src, "k", where + ".source", 1, static_cast<std::int64_t>(n) - 1));
    const auto& tgt = field(j, "target", where);
    const auto tn = static_cast<std::size_t>(integer(tgt, "n", where + ".target", 1, 64));
    const auto tk = static_cast<std::size_t>(integer(tgt, "k", where + ".target", 1, static_cast<std::int64_t>(tn)));
    std::shared_ptr<const GrassmannGraph> g;
    try {
        g = std::make_shared<const GrassmannGraph>(GrassmannGraph::build(p, n, k));
    } catch (const ResourceError& e) {
        throw FormatError(where + ".source", e.what());
    }
    std::vector<std::optional<Subspace>> slots(g->size());
    const auto& table = array(j, "table", where);
    for (std::size_t i = 0; i < table.size(); ++i) {
        const std::string at = where + ".table[" + std::to_string(i) + "]";
        if (!table[i].is_array() || table[i].size() != 2 || !table[i][0].is_number_integer())
            throw FormatError(at, "expected [source id, subspace]");
        const int id = table[i][0].get<int>();
        if (id < 0 || id >= g->size()) throw FormatError(at, "source id " + std::to_string(id) + " out of range");
        if (slots[id]) throw FormatError(at, "source id " + std::to_string(id) + " listed twice");
        const Subspace s = subspace_from_json(table[i][1], at, normalize);
        if (s.modulus() != p || s.ambient() != tn || s.dim() != tk)
            throw FormatError(at, "image is not a " + std::to_string(tk) + "-subspace of GF(" + std::to_string(p) + ")^" +
                                      std::to_string(tn));
        slots[id] = s;
    }
    for (int id = 0; id < g->size(); ++id)
        if (!slots[id]) throw FormatError(where + ".table", "no image for source id " + std::to_string(id));
    return SubspaceMap::build(g, tn, tk, [&](const Subspace& s) { return *slots[*g->id_of(s)]; });
}

json to_json(const JSubsetWitness& w) {
    json out = {{"kind", to_string(w.kind)}, {"n", w.n}, {"k", w.k}, {"family_k", w.family_k}};
    if (w.lower) out["lower"] = to_json(*w.lower);
    if (w.upper) out["upper"] = to_json(*w.upper);
    if (!w.vectors.empty()) out["vectors"] = digit_list(w.vectors);
    if (!w.iso.empty()) out["iso"] = w.iso;
    out["star_sizes"] = w.star_sizes;
    out["top_sizes"] = w.top_sizes;
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError(path, "cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path, e.what());
    }
}

}  // namespace grassmann::io
