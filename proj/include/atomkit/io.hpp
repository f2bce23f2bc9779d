#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "atomkit/blur.hpp"
#include "atomkit/cylalg.hpp"
#include "atomkit/ef_game.hpp"
#include "atomkit/error.hpp"
#include "atomkit/fincof.hpp"
#include "atomkit/graph.hpp"
#include "atomkit/network_game.hpp"
#include "atomkit/partition.hpp"
#include "atomkit/relalg.hpp"
#include "atomkit/report.hpp"
#include "atomkit/vec.hpp"

namespace atomkit::io {

using Json = nlohmann::ordered_json;

inline constexpr int format_version = 1;
inline constexpr const char* format_name = "atomkit";

inline Json header(const std::string& kind)
{
    Json j;
    j["format"] = format_name;
    j["version"] = format_version;
    j["kind"] = kind;
    return j;
}

inline std::string kind_of(const Json& j)
{
    if (!j.is_object() || !j.contains("format") || j["format"] != format_name)
        throw FormatError("not an atomkit document (missing \"format\": \"atomkit\")");
    if (!j.contains("version") || !j["version"].is_number_integer())
        throw FormatError("atomkit document has no integer version");
    int v = j["version"].get<int>();
    if (v != format_version)
        throw FormatError("unsupported format version " + std::to_string(v) + "; this build reads version "
                          + std::to_string(format_version));
    if (!j.contains("kind") || !j["kind"].is_string())
        throw FormatError("atomkit document has no kind");
    return j["kind"].get<std::string>();
}

inline void expect_kind(const Json& j, const std::string& kind)
{
    auto k = kind_of(j);
    if (k != kind)
        throw FormatError("expected a '" + kind + "' document, found '" + k + "'");
}

inline std::string read_text(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw IoError("error while reading '" + path + "'");
    return ss.str();
}

inline void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out)
        throw IoError("error while writing '" + path + "'");
}

inline Json parse(const std::string& text, const std::string& source = "input")
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(source + ": " + e.what());
    }
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

namespace detail {

/// Runs a loader, turning nlohmann type/lookup errors into FormatError.
template <typename F>
auto guarded(const std::string& what, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("malformed " + what + " document: " + e.what());
    }
}

inline const Json& field(const Json& j, const char* key, const std::string& what)
{
    if (!j.contains(key))
        throw FormatError(what + " document lacks field '" + key + "'");
    return j.at(key);
}

inline std::string triple_text(const RaAtomStructure& s, const Triple& t)
{
    return "(" + s.name(t.a) + "," + s.name(t.b) + "," + s.name(t.c) + ")";
}

} // namespace detail

// ---- relation algebra atom structures -------------------------------------

inline Json to_json(const RaAtomStructure& s)
{
    Json j = header("ra");
    j["atoms"] = s.atoms();
    j["identity"] = Json::array({s.name(s.identity())});
    Json conv = Json::object();
    for (std::size_t a = 0; a < s.size(); ++a)
        conv[s.name(a)] = s.name(s.converse(a));
    j["converse"] = conv;
    Json tr = Json::array();
    for (const auto& t : s.diversity_triples())
        tr.push_back({s.name(t.a), s.name(t.b), s.name(t.c)});
    j["triples"] = tr;
    return j;
}

/**
 * Loads an RA atom structure. The file lists diversity triples only; they must
 * already be closed under the cycle transforms. Identity triples are implied.
 */
inline RaAtomStructure ra_from_json(const Json& j)
{
    expect_kind(j, "ra");
    return detail::guarded("ra", [&] {
        auto atoms = detail::field(j, "atoms", "ra").get<std::vector<std::string>>();
        if (atoms.empty())
            throw FormatError("ra document has no atoms");
        std::map<std::string, std::size_t> idx;
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if (!idx.emplace(atoms[i], i).second)
                throw FormatError("duplicate atom '" + atoms[i] + "'");
        auto lookup = [&](const std::string& nm) {
            auto it = idx.find(nm);
            if (it == idx.end())
                throw FormatError("unknown atom '" + nm + "'");
            return it->second;
        };
        auto ids = detail::field(j, "identity", "ra").get<std::vector<std::string>>();
        if (ids.size() != 1)
            throw FormatError("ra document lists " + std::to_string(ids.size())
                              + " identity atoms; exactly one is supported");
        std::size_t e = lookup(ids[0]);
        const auto& cj = detail::field(j, "converse", "ra");
        std::vector<std::size_t> conv(atoms.size());
        for (std::size_t a = 0; a < atoms.size(); ++a) {
            if (!cj.contains(atoms[a]))
                throw FormatError("converse map has no entry for '" + atoms[a] + "'");
            conv[a] = lookup(cj.at(atoms[a]).get<std::string>());
        }
        if (cj.size() != atoms.size())
            throw FormatError("converse map mentions atoms outside the atom list");
        std::set<Triple> tr;
        for (const auto& t : detail::field(j, "triples", "ra")) {
            auto names = t.get<std::vector<std::string>>();
            if (names.size() != 3)
                throw FormatError("triple entries need exactly three atoms");
            Triple x{lookup(names[0]), lookup(names[1]), lookup(names[2])};
            if (x.a == e || x.b == e || x.c == e)
                throw FormatError("triple (" + names[0] + "," + names[1] + "," + names[2]
                                  + ") mentions the identity atom; list diversity triples only");
            tr.insert(x);
        }
        auto probe = RaAtomStructure::from_raw(atoms, e, conv, {});
        for (const auto& t : tr) {
            for (Triple v : {Triple{conv[t.a], t.c, t.b}, Triple{t.c, conv[t.b], t.a}})
                if (!tr.count(v))
                    throw FormatError("triples are not cycle-closed: " + detail::triple_text(probe, t)
                                      + " is listed but its cycle variant " + detail::triple_text(probe, v)
                                      + " is not");
        }
        return RaAtomStructure::build(atoms, e, conv, std::vector<Triple>(tr.begin(), tr.end()));
    });
}

// ---- cylindric atom structures ---------------------------------------------

inline Json to_json(const CaAtomStructure& s)
{
    Json j = header("ca");
    j["dimension"] = s.dimension();
    j["atoms"] = s.atoms();
    Json rel = Json::array();
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        Json r = Json::object();
        for (std::size_t x = 0; x < s.size(); ++x) {
            Json row = Json::array();
            for (auto y : s.related(i, x))
                row.push_back(s.name(y));
            r[s.name(x)] = row;
        }
        rel.push_back(r);
    }
    j["relations"] = rel;
    Json diag = Json::array();
    for (std::size_t i = 0; i < s.dimension(); ++i)
        for (std::size_t jj = 0; jj < s.dimension(); ++jj)
            diag.push_back({{"i", i}, {"j", jj}, {"atoms", s.names_of(s.diagonal_set(i, jj))}});
    j["diagonals"] = diag;
    return j;
}

inline CaAtomStructure ca_from_json(const Json& j)
{
    expect_kind(j, "ca");
    return detail::guarded("ca", [&] {
        auto n = detail::field(j, "dimension", "ca").get<std::size_t>();
        if (n == 0)
            throw FormatError("ca dimension must be positive");
        auto atoms = detail::field(j, "atoms", "ca").get<std::vector<std::string>>();
        std::map<std::string, std::size_t> idx;
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if (!idx.emplace(atoms[i], i).second)
                throw FormatError("duplicate atom '" + atoms[i] + "'");
        auto lookup = [&](const std::string& nm) {
            auto it = idx.find(nm);
            if (it == idx.end())
                throw FormatError("unknown atom '" + nm + "'");
            return it->second;
        };
        const auto& rj = detail::field(j, "relations", "ca");
        if (rj.size() != n)
            throw FormatError("ca document needs one relation block per index");
        std::vector<CaAtomStructure::Adjacency> rel(n, CaAtomStructure::Adjacency(atoms.size()));
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& [from, row] : rj[i].items()) {
                auto x = lookup(from);
                for (const auto& to : row)
                    rel[i][x].push_back(lookup(to.get<std::string>()));
            }
        std::vector<AtomSet> diag(n * n, AtomSet::full(atoms.size()));
        std::vector<bool> seen(n * n, false);
        for (const auto& d : detail::field(j, "diagonals", "ca")) {
            auto i = d.at("i").get<std::size_t>();
            auto jj = d.at("j").get<std::size_t>();
            if (i >= n || jj >= n)
                throw FormatError("diagonal index out of range");
            AtomSet set(atoms.size());
            for (const auto& a : d.at("atoms"))
                set.insert(lookup(a.get<std::string>()));
            diag[i * n + jj] = set;
            seen[i * n + jj] = true;
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t jj = 0; jj < n; ++jj)
                if (i != jj && !seen[i * n + jj])
                    throw FormatError("missing diagonal D" + std::to_string(i) + std::to_string(jj));
        return CaAtomStructure(n, atoms, std::move(rel), std::move(diag));
    });
}

// ---- finite/cofinite sets ----------------------------------------------------

inline Json to_json(const FinCofSet& x)
{
    Json j = header("fincof");
    Json blocks = Json::array();
    for (const auto& b : x.carrier()) {
        Json bj{{"name", b.name}, {"infinite", b.infinite}};
        if (!b.infinite)
            bj["size"] = b.size;
        blocks.push_back(bj);
    }
    j["blocks"] = blocks;
    Json parts = Json::array();
    for (std::size_t b = 0; b < x.parts().size(); ++b) {
        const auto& p = x.parts()[b];
        parts.push_back({{"block", x.carrier()[b].name},
                         {"mode", p.mode == BlockPart::Mode::finite ? "finite" : "cofinite"},
                         {"listed", p.listed}});
    }
    j["set"] = parts;
    return j;
}

inline FinCofSet fincof_from_json(const Json& j)
{
    expect_kind(j, "fincof");
    return detail::guarded("fincof", [&] {
        FinCofCarrier carrier;
        for (const auto& b : detail::field(j, "blocks", "fincof")) {
            CarrierBlock blk{b.at("name").get<std::string>(), b.at("infinite").get<bool>(), 0};
            if (!blk.infinite)
                blk.size = b.at("size").get<std::uint64_t>();
            carrier.push_back(blk);
        }
        std::vector<BlockPart> parts(carrier.size());
        std::vector<bool> seen(carrier.size(), false);
        for (const auto& p : detail::field(j, "set", "fincof")) {
            auto name = p.at("block").get<std::string>();
            std::size_t b = 0;
            while (b < carrier.size() && carrier[b].name != name)
                ++b;
            if (b == carrier.size())
                throw FormatError("set refers to unknown block '" + name + "'");
            if (seen[b])
                throw FormatError("block '" + name + "' appears twice in the set");
            seen[b] = true;
            auto mode = p.at("mode").get<std::string>();
            if (mode != "finite" && mode != "cofinite")
                throw FormatError("block mode must be 'finite' or 'cofinite', got '" + mode + "'");
            parts[b].mode = mode == "finite" ? BlockPart::Mode::finite : BlockPart::Mode::cofinite;
            for (const auto& v : p.at("listed"))
                parts[b].listed.insert(v.get<std::uint64_t>());
        }
        try {
            return FinCofSet(carrier, std::move(parts));
        } catch (const DomainError& e) {
            throw FormatError(e.what());
        }
    });
}

// ---- partition structures ----------------------------------------------------

inline Json to_json(const PartitionStructure& p)
{
    Json j = header("partition");
    Json units = Json::array();
    for (std::size_t u = 0; u < p.units().size(); ++u)
        units.push_back({{"name", p.units()[u]}, {"size", p.sizes()[u]}});
    j["units"] = units;
    j["large"] = p.large();
    return j;
}

inline PartitionStructure partition_from_json(const Json& j)
{
    expect_kind(j, "partition");
    return detail::guarded("partition", [&] {
        std::vector<std::string> units;
        std::vector<std::size_t> sizes;
        for (const auto& u : detail::field(j, "units", "partition")) {
            units.push_back(u.at("name").get<std::string>());
            sizes.push_back(u.at("size").get<std::size_t>());
        }
        auto large = detail::field(j, "large", "partition").get<std::set<std::string>>();
        try {
            return PartitionStructure(units, sizes, large);
        } catch (const ParameterError& e) {
            throw FormatError(e.what());
        }
    });
}

// ---- vector-space atoms --------------------------------------------------------

inline Json to_json(const VecAtom& s)
{
    Json j = header("vecatom");
    j["alpha"] = s.alpha();
    Json e = Json::object();
    for (const auto& [i, v] : s.support())
        e[std::to_string(i)] = rational_text(v);
    j["entries"] = e;
    return j;
}

inline VecAtom vecatom_from_json(const Json& j)
{
    expect_kind(j, "vecatom");
    return detail::guarded("vecatom", [&] {
        auto alpha = detail::field(j, "alpha", "vecatom").get<std::size_t>();
        std::map<std::size_t, Rational> entries;
        for (const auto& [k, v] : detail::field(j, "entries", "vecatom").items()) {
            std::size_t pos = 0;
            std::size_t i = 0;
            try {
                i = std::stoul(k, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != k.size() || k.empty())
                throw FormatError("vecatom entry key '" + k + "' is not an index");
            try {
                entries[i] = parse_rational(v.get<std::string>());
            } catch (const ParameterError& e) {
                throw FormatError(e.what());
            }
        }
        try {
            return VecAtom(alpha, entries);
        } catch (const std::logic_error& e) {
            throw FormatError(e.what());
        }
    });
}

// ---- graphs ------------------------------------------------------------------

inline Json to_json(const Graph& g)
{
    Json j = header("graph");
    j["vertices"] = g.vertex_count();
    Json e = Json::array();
    for (auto [u, v] : g.edges())
        e.push_back({u, v});
    j["edges"] = e;
    return j;
}

inline Graph graph_from_json(const Json& j)
{
    expect_kind(j, "graph");
    return detail::guarded("graph", [&] {
        auto n = detail::field(j, "vertices", "graph").get<std::size_t>();
        if (n > 64)
            throw FormatError("graph has more than 64 vertices");
        Graph g(n);
        for (const auto& e : detail::field(j, "edges", "graph")) {
            auto p = e.get<std::vector<std::size_t>>();
            if (p.size() != 2)
                throw FormatError("edges need exactly two endpoints");
            try {
                g.add_edge(p[0], p[1]);
            } catch (const DomainError& err) {
                throw FormatError(err.what());
            }
        }
        return g;
    });
}

inline std::string graph_to_dot(const Graph& g)
{
    std::string out = "graph G {\n";
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        out += "  " + std::to_string(v) + ";\n";
    for (auto [u, v] : g.edges())
        out += "  " + std::to_string(u) + " -- " + std::to_string(v) + ";\n";
    return out + "}\n";
}

/// Reads the DOT subset written by graph_to_dot: numeric vertex and edge statements.
inline Graph graph_from_dot(const std::string& text)
{
    auto open = text.find('{');
    auto close = text.rfind('}');
    if (open == std::string::npos || close == std::string::npos || close < open
        || text.substr(0, open).find("graph") == std::string::npos)
        throw FormatError("not an undirected DOT graph");
    std::string body = text.substr(open + 1, close - open - 1);
    static const std::regex edge_re(R"(^\s*(\d+)\s*--\s*(\d+)\s*$)");
    static const std::regex node_re(R"(^\s*(\d+)\s*$)");
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::size_t n = 0;
    std::string stmt;
    std::istringstream ss(body);
    while (std::getline(ss, stmt, ';')) {
        for (auto& c : stmt)
            if (c == '\n' || c == '\r' || c == '\t')
                c = ' ';
        if (stmt.find_first_not_of(' ') == std::string::npos)
            continue;
        std::smatch m;
        if (std::regex_match(stmt, m, edge_re)) {
            std::size_t u = std::stoul(m[1]), v = std::stoul(m[2]);
            edges.emplace_back(u, v);
            n = std::max({n, u + 1, v + 1});
        } else if (std::regex_match(stmt, m, node_re)) {
            n = std::max(n, std::size_t(std::stoul(m[1])) + 1);
        } else {
            throw FormatError("unsupported DOT statement '" + stmt + "'");
        }
    }
    if (n > 64)
        throw FormatError("graph has more than 64 vertices");
    Graph g(n);
    for (auto [u, v] : edges) {
        try {
            g.add_edge(u, v);
        } catch (const DomainError& e) {
            throw FormatError(e.what());
        }
    }
    return g;
}

// ---- CSV exports -------------------------------------------------------------

/// One row per stored triple, identity triples included.
inline std::string ra_triples_csv(const RaAtomStructure& s)
{
    std::string out = "a,b,c\n";
    for (const auto& t : s.triples())
        out += s.name(t.a) + "," + s.name(t.b) + "," + s.name(t.c) + "\n";
    return out;
}

/// Full consistency tensor over all atoms: one row per (a,b,c) with 0/1.
inline std::string ra_tensor_csv(const RaAtomStructure& s)
{
    std::string out = "a,b,c,consistent\n";
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = 0; b < s.size(); ++b)
            for (std::size_t c = 0; c < s.size(); ++c)
                out += s.name(a) + "," + s.name(b) + "," + s.name(c) + "," + (s.holds(a, b, c) ? "1" : "0") + "\n";
    return out;
}

/// Composition table: rows a, columns b, cells list a;b separated by '|'.
inline std::string ra_composition_csv(const RaAtomStructure& s)
{
    std::string out = ";";
    for (std::size_t b = 0; b < s.size(); ++b)
        out += "," + s.name(b);
    out += "\n";
    for (std::size_t a = 0; a < s.size(); ++a) {
        out += s.name(a);
        for (std::size_t b = 0; b < s.size(); ++b) {
            out += ",";
            auto names = s.names_of(s.composition(a, b));
            for (std::size_t i = 0; i < names.size(); ++i)
                out += (i ? "|" : "") + names[i];
        }
        out += "\n";
    }
    return out;
}

/// Blown-up carrier with both partitions: fibre cell (base atom) and colour cell (blur member).
inline std::string carrier_csv(const RaAtomStructure& s, const BlurSpec& b, const BlownUp& u)
{
    std::string out = "index,base,blur,fiber,colour\n";
    for (const auto& x : u.carrier) {
        std::string blur;
        auto names = blur_member_names(s, b, b.members[x.blur]);
        for (std::size_t i = 0; i < names.size(); ++i)
            blur += (i ? "|" : "") + names[i];
        std::size_t fiber = 0;
        while (u.fiber_atoms[fiber] != x.base)
            ++fiber;
        out += std::to_string(x.index) + "," + s.name(x.base) + "," + blur + "," + std::to_string(fiber) + ","
               + std::to_string(x.blur) + "\n";
    }
    return out;
}

// ---- reports -----------------------------------------------------------------

inline Json to_json(const Violation& v)
{
    return Json{{"law", v.law}, {"atoms", v.atoms}, {"detail", v.detail}, {"occurrences", v.occurrences}};
}

inline Violation violation_from_json(const Json& j)
{
    return detail::guarded("violation", [&] {
        return Violation{j.at("law").get<std::string>(), j.at("atoms").get<std::vector<std::string>>(),
                         j.value("detail", std::string{}), j.value("occurrences", std::size_t{1})};
    });
}

// ---- structures for games ----------------------------------------------------

using AnyStructure = std::variant<PartitionStructure, CaAtomStructure, RaAtomStructure>;

inline AnyStructure structure_from_json(const Json& j)
{
    auto k = kind_of(j);
    if (k == "partition")
        return partition_from_json(j);
    if (k == "ca")
        return ca_from_json(j);
    if (k == "ra")
        return ra_from_json(j);
    throw FormatError("a '" + k + "' document is not a game structure (need partition, ca or ra)");
}

inline Json to_json(const AnyStructure& s)
{
    return std::visit([](const auto& x) { return to_json(x); }, s);
}

inline RelationalStructure view_of(const AnyStructure& s)
{
    return std::visit([](const auto& x) { return relational_view(x); }, s);
}

// ---- game outcomes -------------------------------------------------------------

namespace detail {

inline Json canon_move(const EfCanonMove& m)
{
    return Json::array({m.side == Side::A ? "A" : "B", m.partner, m.played, m.first, m.second});
}

inline EfCanonMove canon_move_from(const Json& j)
{
    if (!j.is_array() || j.size() != 5)
        throw FormatError("canonical move must be [side, partner, played, first, second]");
    auto side = j[0].get<std::string>();
    if (side != "A" && side != "B")
        throw FormatError("move side must be A or B");
    return {side == "A" ? Side::A : Side::B, j[1].get<bool>(), j[2].get<bool>(), j[3].get<std::uint32_t>(),
            j[4].get<std::uint32_t>()};
}

inline Json demand_json(const NetDemand& d)
{
    return Json{{"tuple", d.tuple}, {"index", d.index}, {"target", d.target}, {"node", d.node}};
}

inline NetDemand demand_from(const Json& j)
{
    return {j.at("tuple").get<std::vector<std::uint32_t>>(), j.at("index").get<std::uint32_t>(),
            j.at("target").get<std::uint32_t>(), j.at("node").get<std::uint32_t>()};
}

} // namespace detail

inline Json to_json(const EfOutcome& o, const AnyStructure& a, const AnyStructure& b, bool reduced = true)
{
    Json j = header("outcome");
    j["game"] = "ef";
    j["winner"] = to_string(o.winner);
    j["rounds"] = o.rounds;
    j["exhaustive"] = o.exhaustive;
    j["positions"] = o.positions;
    j["symmetry_reduction"] = reduced;
    j["a"] = to_json(a);
    j["b"] = to_json(b);
    Json cert = Json::object();
    Json replies = Json::array();
    for (const auto& [k, mv] : o.certificate.replies) {
        Json entries = Json::array();
        for (const auto& [m, r] : mv)
            entries.push_back({{"move", detail::canon_move(m)}, {"reply", detail::canon_move(r)}});
        replies.push_back({{"key", k}, {"entries", entries}});
    }
    Json moves = Json::array();
    for (const auto& [k, m] : o.certificate.moves)
        moves.push_back({{"key", k}, {"move", detail::canon_move(m)}});
    cert["replies"] = replies;
    cert["moves"] = moves;
    j["certificate"] = cert;
    return j;
}

inline Json to_json(const NetOutcome& o, const CaAtomStructure& s, std::size_t pebbles)
{
    Json j = header("outcome");
    j["game"] = "net";
    j["winner"] = to_string(o.winner);
    j["rounds"] = o.rounds;
    j["exhaustive"] = o.exhaustive;
    j["positions"] = o.positions;
    j["pebbles"] = pebbles;
    if (!o.certificate.interpretation.empty())
        j["interpretation"] = o.certificate.interpretation;
    j["structure"] = to_json(s);
    Json cert = Json::object();
    Json openings = Json::array();
    for (const auto& [a, lab] : o.certificate.openings)
        openings.push_back({{"atom", a}, {"labels", lab}});
    cert["openings"] = openings;
    if (o.certificate.forall_opening)
        cert["forall_opening"] = *o.certificate.forall_opening;
    Json replies = Json::array();
    for (const auto& [k, mv] : o.certificate.replies) {
        Json entries = Json::array();
        for (const auto& [d, lab] : mv)
            entries.push_back({{"demand", detail::demand_json(d)}, {"labels", lab}});
        replies.push_back({{"key", k}, {"entries", entries}});
    }
    cert["replies"] = replies;
    Json demands = Json::array();
    for (const auto& [k, d] : o.certificate.demands)
        demands.push_back({{"key", k}, {"demand", detail::demand_json(d)}});
    cert["demands"] = demands;
    j["certificate"] = cert;
    return j;
}

inline Player player_from(const std::string& s)
{
    if (s == "Exists")
        return Player::Exists;
    if (s == "ForAll")
        return Player::ForAll;
    throw FormatError("winner must be Exists or ForAll, got '" + s + "'");
}

struct LoadedEfOutcome {
    EfOutcome outcome;
    AnyStructure a, b;
    bool reduced = true;
};

inline LoadedEfOutcome ef_outcome_from_json(const Json& j)
{
    expect_kind(j, "outcome");
    return detail::guarded("outcome", [&] {
        if (j.at("game") != "ef")
            throw FormatError("outcome is not an EF game record");
        LoadedEfOutcome l{{}, structure_from_json(j.at("a")), structure_from_json(j.at("b")),
                          j.value("symmetry_reduction", true)};
        l.outcome.winner = player_from(j.at("winner").get<std::string>());
        l.outcome.rounds = j.at("rounds").get<std::size_t>();
        l.outcome.exhaustive = j.at("exhaustive").get<bool>();
        l.outcome.positions = j.at("positions").get<std::uint64_t>();
        const auto& c = j.at("certificate");
        for (const auto& r : c.at("replies")) {
            auto& mv = l.outcome.certificate.replies[r.at("key").get<EfKey>()];
            for (const auto& e : r.at("entries"))
                mv[detail::canon_move_from(e.at("move"))] = detail::canon_move_from(e.at("reply"));
        }
        for (const auto& m : c.at("moves"))
            l.outcome.certificate.moves[m.at("key").get<EfKey>()] = detail::canon_move_from(m.at("move"));
        return l;
    });
}

struct LoadedNetOutcome {
    NetOutcome outcome;
    CaAtomStructure structure;
    std::size_t pebbles = 0;
};

inline LoadedNetOutcome net_outcome_from_json(const Json& j)
{
    expect_kind(j, "outcome");
    return detail::guarded("outcome", [&] {
        if (j.at("game") != "net")
            throw FormatError("outcome is not a network game record");
        LoadedNetOutcome l{{}, ca_from_json(j.at("structure")), j.at("pebbles").get<std::size_t>()};
        l.outcome.winner = player_from(j.at("winner").get<std::string>());
        l.outcome.rounds = j.at("rounds").get<std::size_t>();
        l.outcome.exhaustive = j.at("exhaustive").get<bool>();
        l.outcome.positions = j.at("positions").get<std::uint64_t>();
        l.outcome.certificate.interpretation = j.value("interpretation", std::string{});
        const auto& c = j.at("certificate");
        for (const auto& o : c.at("openings"))
            l.outcome.certificate.openings[o.at("atom").get<std::uint32_t>()] = o.at("labels").get<NetLabels>();
        if (c.contains("forall_opening"))
            l.outcome.certificate.forall_opening = c.at("forall_opening").get<std::uint32_t>();
        for (const auto& r : c.at("replies")) {
            auto& mv = l.outcome.certificate.replies[r.at("key").get<NetKey>()];
            for (const auto& e : r.at("entries"))
                mv[detail::demand_from(e.at("demand"))] = e.at("labels").get<NetLabels>();
        }
        for (const auto& d : c.at("demands"))
            l.outcome.certificate.demands[d.at("key").get<NetKey>()] = detail::demand_from(d.at("demand"));
        return l;
    });
}

} // namespace atomkit::io
