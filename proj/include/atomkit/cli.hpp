#pragma once

#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "atomkit/basis.hpp"
#include "atomkit/blur.hpp"
#include "atomkit/ef_game.hpp"
#include "atomkit/graph.hpp"
#include "atomkit/io.hpp"
#include "atomkit/network_game.hpp"
#include "atomkit/partition.hpp"
#include "atomkit/relalg.hpp"
#include "atomkit/vec.hpp"

namespace atomkit::cli {

/// Everything a single invocation needs; filled by the argument parser.
struct RunConfig {
    std::string command;
    std::string input, output, second_input, second_output, witness_out;
    std::size_t k = 0, l = 0, n = 0, mu = 0, rounds = 0, alpha = 0, vertices = 0;
    std::size_t truncation = 0, threshold = 0, graph_cap = 16;
    std::uint64_t samples = 0;
    std::optional<std::uint64_t> seed;
    double p = 0.5;
    bool exhaustive = false, naive = false, strategy = false, no_symmetry = false, list = false, dot = false;
    std::string kind, role, format = "native", table = "triples", sizes_a, sizes_b, large, values, sizes;
};

namespace detail {

inline std::string join(const std::vector<std::string>& parts, const std::string& sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i)
        out += (i ? sep : "") + parts[i];
    return out;
}

inline std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty())
            out.push_back(cur);
    return out;
}

inline std::size_t parse_size(const std::string& s)
{
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size() || s.empty() || s[0] == '-')
        throw ParameterError("expected a non-negative integer, got '" + s + "'");
    return std::size_t(v);
}

/// "u=4,v=2" -> [(u,4), (v,2)]
inline UnitSizes parse_units(const std::string& s)
{
    UnitSizes out;
    for (const auto& item : split(s, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ParameterError("unit sizes must look like name=size, got '" + item + "'");
        out.emplace_back(item.substr(0, eq), parse_size(item.substr(eq + 1)));
    }
    if (out.empty())
        throw ParameterError("no units given");
    return out;
}

inline void emit(const RunConfig& c, std::ostream& out, const std::string& text)
{
    if (c.output.empty())
        out << text;
    else
        io::write_text(c.output, text);
}

inline io::Json load(const std::string& path) { return io::parse(io::read_text(path), path); }

inline std::string set_text(const std::vector<std::string>& names) { return "{" + join(names, ",") + "}"; }

inline std::string report_text(const ConsistencyReport& r)
{
    std::string out;
    for (const auto& v : r.violations()) {
        out += "violation " + v.law + " at " + set_text(v.atoms);
        if (v.occurrences > 1)
            out += " (" + std::to_string(v.occurrences) + " instances)";
        if (!v.detail.empty())
            out += ": " + v.detail;
        out += "\n";
    }
    return out;
}

inline io::Json report_witness(const std::string& check, const io::Json& structure, const ConsistencyReport& r)
{
    io::Json w = io::header("witness");
    w["check"] = check;
    w["structure"] = structure;
    io::Json vs = io::Json::array();
    for (const auto& v : r.violations())
        vs.push_back(io::to_json(v));
    w["violations"] = vs;
    return w;
}

// ---- build ---------------------------------------------------------------

inline int build_maddux(const RunConfig& c, std::ostream& out)
{
    auto s = atomkit::build_maddux(c.k);
    emit(c, out, io::dump(io::to_json(s)));
    return 0;
}

inline int build_partition(const RunConfig& c, std::ostream& out)
{
    std::set<std::string> large;
    for (const auto& u : split(c.large, ','))
        large.insert(u);
    auto [a, b] = build_partition_pair(parse_units(c.sizes_a), parse_units(c.sizes_b), large);
    if (c.output.empty() || c.second_output.empty()) {
        out << io::dump(io::to_json(a)) << io::dump(io::to_json(b));
    } else {
        io::write_text(c.output, io::dump(io::to_json(a)));
        io::write_text(c.second_output, io::dump(io::to_json(b)));
    }
    return 0;
}

inline Graph make_graph(const RunConfig& c)
{
    if (c.kind == "complete")
        return complete_graph(c.vertices);
    if (c.kind == "cycle" || c.kind == "odd_cycle")
        return cycle_graph(c.vertices);
    if (c.kind == "petersen")
        return petersen_graph();
    if (c.kind == "random") {
        Rng rng(c.seed.value_or(0));
        return random_graph(c.vertices, c.p, rng);
    }
    if (c.kind == "empty")
        return Graph(c.vertices);
    throw ParameterError("unknown graph kind '" + c.kind + "'");
}

inline int build_graph(const RunConfig& c, std::ostream& out)
{
    auto g = make_graph(c);
    emit(c, out, c.dot ? io::graph_to_dot(g) : io::dump(io::to_json(g)));
    return 0;
}

inline VecAtom parse_vec(std::size_t alpha, const std::string& values)
{
    std::vector<Rational> v;
    for (const auto& t : split(values, ','))
        v.push_back(parse_rational(t));
    if (alpha == 0)
        alpha = std::max<std::size_t>(2, v.size());
    return VecAtom(alpha, v);
}

inline int build_vec(const RunConfig& c, std::ostream& out)
{
    emit(c, out, io::dump(io::to_json(parse_vec(c.alpha, c.values))));
    return 0;
}

// ---- checks ----------------------------------------------------------------

inline int check_ra(const RunConfig& c, std::ostream& out)
{
    auto j = load(c.input);
    auto s = io::ra_from_json(j);
    auto r = check_ra_axioms(s);
    out << "atoms: " << s.size() << "\ntriples: " << s.triples().size() << "\n" << report_text(r);
    out << "result: " << (r.pass() ? "pass" : "fail") << "\n";
    if (!r.pass() && !c.witness_out.empty())
        io::write_text(c.witness_out, io::dump(report_witness("ra", io::to_json(s), r)));
    return r.pass() ? 0 : 1;
}

inline int check_ca(const RunConfig& c, std::ostream& out)
{
    auto s = io::ca_from_json(load(c.input));
    auto r = check_ca_atomstructure(s);
    out << "dimension: " << s.dimension() << "\natoms: " << s.size() << "\n" << report_text(r);
    out << "result: " << (r.pass() ? "pass" : "fail") << "\n";
    if (!r.pass() && !c.witness_out.empty())
        io::write_text(c.witness_out, io::dump(report_witness("ca", io::to_json(s), r)));
    return r.pass() ? 0 : 1;
}

inline RaAtomStructure ra_source(const RunConfig& c)
{
    if (!c.input.empty())
        return io::ra_from_json(load(c.input));
    if (c.k == 0)
        throw ParameterError("give --in FILE or --k K");
    return atomkit::build_maddux(c.k);
}

inline int basis_enum(const RunConfig& c, std::ostream& out)
{
    auto s = ra_source(c);
    auto mats = enumerate_basic_matrices(s, c.n);
    out << "dimension: " << c.n << "\nbasic matrices: " << mats.size() << "\n";
    if (c.list)
        for (const auto& m : mats)
            out << matrix_name(s, m) << "\n";
    if (!c.output.empty())
        io::write_text(c.output, io::dump(io::to_json(ca_from_basic_matrices(s, c.n))));
    return 0;
}

// ---- blur ------------------------------------------------------------------

inline std::vector<std::vector<std::string>> member_lists(const RaAtomStructure& s, const BlurSpec& b,
                                                          const std::vector<std::size_t>& idx)
{
    std::vector<std::vector<std::string>> out;
    for (auto i : idx)
        out.push_back(blur_member_names(s, b, b.members[i]));
    return out;
}

inline int blur_check(RunConfig& c, std::ostream& out)
{
    auto s = atomkit::build_maddux(c.k);
    auto b = blur_index(s, c.l);
    CheckMode mode;
    std::string mode_name = "exhaustive";
    if (c.samples > 0) {
        if (!c.seed)
            c.seed = (std::uint64_t(std::random_device{}()) << 32) ^ std::random_device{}();
        mode = CheckMode::sampled(c.samples, *c.seed);
        mode_name = "sampled";
    } else if (c.naive) {
        mode = CheckMode::naive();
        mode_name = "naive";
    }
    mode.cap = env_cap(mode.cap);
    out << "blur check n=" << c.n << " l=" << c.l << " k=" << c.k << " |J|=" << b.size() << " mode=" << mode_name
        << "\n";
    if (mode.kind == CheckMode::Kind::sampled)
        out << "samples: " << c.samples << "\nseed: " << *c.seed << "\n";
    auto rep = is_n_blur(s, b, c.n, mode);
    auto line = [&](const char* name, const auto& r) {
        out << name << ": " << (r.holds ? "holds" : "fails") << " (instances " << r.instances;
        if (!r.holds)
            out << ", violations " << r.violations;
        out << ")\n";
        if (r.witness)
            out << "  witness: " << describe(s, b, *r.witness) << "\n";
    };
    line("J4", rep.j4);
    line("J5", rep.j5);
    out << "E-symmetric: " << (rep.report.has("E-symmetric") ? "fails" : "holds") << "\n";
    out << "result: " << (rep.report.pass() ? "n-blur" : "not an n-blur") << "\n";
    if (!rep.report.pass() && !c.witness_out.empty()) {
        io::Json w = io::header("witness");
        w["check"] = "blur";
        w["k"] = c.k;
        w["l"] = c.l;
        w["n"] = c.n;
        if (rep.j4.witness)
            w["j4"] = {{"v", member_lists(s, b, rep.j4.witness->v)}, {"w", member_lists(s, b, rep.j4.witness->w)}};
        if (rep.j5.witness) {
            std::vector<std::string> p, q;
            for (auto x : rep.j5.witness->p)
                p.push_back(s.name(b.diversity[x]));
            for (auto x : rep.j5.witness->q)
                q.push_back(s.name(b.diversity[x]));
            w["j5"] = {{"p", p}, {"q", q}, {"w", blur_member_names(s, b, b.members[rep.j5.witness->w])}};
        }
        io::write_text(c.witness_out, io::dump(w));
    }
    return rep.report.pass() ? 0 : 1;
}

inline int blur_carrier(const RunConfig& c, std::ostream& out)
{
    auto s = atomkit::build_maddux(c.k);
    auto b = blur_index(s, c.l);
    auto u = blow_up(s, b, c.truncation);
    emit(c, out, io::carrier_csv(s, b, u));
    return 0;
}

// ---- games -----------------------------------------------------------------

inline std::string move_text(const EfGame& g, EfMove m)
{
    return std::string(m.side == Side::A ? "A " : "B ") + g.structure(m.side).atoms()[m.atom];
}

inline std::string play_text(const EfGame& g, const EfPlay& play)
{
    std::vector<std::string> parts;
    for (auto [x, y] : play)
        parts.push_back(g.a().atoms()[x] + "~" + g.b().atoms()[y]);
    return "[" + join(parts, " ") + "]";
}

/// Principal lines of the winner's strategy: the opening round, answered concretely.
inline void print_strategy(EfGame& g, const EfOutcome& o, std::ostream& out)
{
    EfPlay root;
    if (o.winner == Player::Exists) {
        out << "strategy (Exists replies in round 1):\n";
        for (auto m : g.forall_moves(root)) {
            auto ans = g.exists_answer(root, m, o.rounds);
            Side other = m.side == Side::A ? Side::B : Side::A;
            out << "  " << move_text(g, m) << " -> " << move_text(g, {other, *ans}) << "\n";
        }
    } else {
        EfPlay play;
        out << "strategy (ForAll line against least replies):\n";
        for (std::size_t r = o.rounds; r > 0; --r) {
            auto m = g.forall_winning_move(play, r);
            if (!m)
                break;
            auto legal = g.legal_answers(play, *m);
            out << "  round " << (o.rounds - r + 1) << ": " << move_text(g, *m);
            if (legal.empty()) {
                out << " (no legal reply)\n";
                break;
            }
            Side other = m->side == Side::A ? Side::B : Side::A;
            out << " -> " << move_text(g, {other, legal.front()}) << "\n";
            play = EfGame::extend(play, *m, legal.front());
        }
    }
    out << "certificate entries: " << (o.certificate.replies.size() + o.certificate.moves.size()) << "\n";
}

inline int game_ef(const RunConfig& c, std::ostream& out)
{
    auto a = io::structure_from_json(load(c.input));
    auto b = io::structure_from_json(load(c.second_input));
    EfOptions opts{!c.no_symmetry};
    auto va = io::view_of(a), vb = io::view_of(b);
    auto o = ef_decide(va, vb, c.mu, opts);
    out << "game ef mu=" << c.mu << " |A|=" << va.size() << " |B|=" << vb.size() << "\n";
    out << "winner: " << to_string(o.winner) << "\npositions: " << o.positions << "\n";
    if (c.strategy) {
        EfGame g(va, vb, opts);
        print_strategy(g, o, out);
    }
    if (!c.output.empty())
        io::write_text(c.output, io::dump(io::to_json(o, a, b, opts.symmetry_reduction)));
    return o.winner == Player::Exists ? 0 : 1;
}

inline int game_net(const RunConfig& c, std::ostream& out)
{
    auto s = io::ca_from_json(load(c.input));
    auto o = network_game_decide(s, c.k, c.rounds);
    out << "game net n=" << s.dimension() << " pebbles=" << c.k << " rounds=" << c.rounds << "\n";
    out << "winner: " << to_string(o.winner) << "\npositions: " << o.positions << "\n";
    if (o.winner == Player::ForAll) {
        out << "opening: " << s.name(*o.certificate.forall_opening) << "\n";
        out << "interpretation: " << o.certificate.interpretation << "\n";
    }
    if (!c.output.empty())
        io::write_text(c.output, io::dump(io::to_json(o, s, c.k)));
    return o.winner == Player::Exists ? 0 : 1;
}

inline int classify_cmd(const RunConfig& c, std::ostream& out)
{
    auto s = io::ca_from_json(load(c.input));
    auto cl = classify(s, c.k, c.rounds);
    out << "classify n=" << s.dimension() << " extra=" << c.k << " pebbles=" << s.dimension() + c.k
        << " rounds=" << c.rounds << "\n";
    out << "certificate: " << cl.text() << "\n";
    out << "scope: bounded one-sided certificate, not a membership proof\n";
    if (!c.output.empty())
        io::write_text(c.output, io::dump(io::to_json(cl.outcome, s, s.dimension() + c.k)));
    return cl.verdict == Classification::Verdict::consistent ? 0 : 1;
}

// ---- graphs and vectors ----------------------------------------------------------

inline Graph load_graph(const std::string& path)
{
    auto text = io::read_text(path);
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        return io::graph_from_json(io::parse(text, path));
    return io::graph_from_dot(text);
}

inline std::string coloring_text(const std::vector<std::size_t>& col)
{
    std::vector<std::string> parts;
    for (std::size_t v = 0; v < col.size(); ++v)
        parts.push_back(std::to_string(v) + ":" + std::to_string(col[v]));
    return join(parts, " ");
}

inline void chi_lines(const ChromaticResult& r, std::ostream& out)
{
    out << "chi: " << r.chi << "\ncoloring: " << coloring_text(r.coloring) << "\n";
    std::vector<std::string> cl;
    for (auto v : r.clique)
        cl.push_back(std::to_string(v));
    out << "clique: {" << join(cl, ",") << "}\n";
    if (r.chi >= 2)
        out << "infeasible with " << r.chi - 1 << " colours: "
            << (r.infeasibility_exhaustive ? "exhaustive" : "not established") << " (" << r.infeasibility_nodes
            << " nodes)\n";
}

inline int graph_chi(const RunConfig& c, std::ostream& out)
{
    auto g = load_graph(c.input);
    auto r = chromatic_number(g, c.graph_cap);
    out << "vertices: " << g.vertex_count() << "\nedges: " << g.edges().size() << "\n";
    chi_lines(r, out);
    if (c.threshold > 0)
        out << "class: " << (r.chi >= c.threshold ? "good" : "bad") << " (threshold " << c.threshold << ")\n";
    return 0;
}

inline int graph_seq(RunConfig& c, std::ostream& out)
{
    GraphSequenceParams p;
    if (c.kind == "complete")
        p.kind = GraphKind::complete;
    else if (c.kind == "odd_cycle")
        p.kind = GraphKind::odd_cycle;
    else if (c.kind == "random")
        p.kind = GraphKind::random;
    else
        throw ParameterError("unknown sequence kind '" + c.kind + "' (complete, odd_cycle, random)");
    for (const auto& t : split(c.sizes, ','))
        p.sizes.push_back(parse_size(t));
    p.p = c.p;
    if (p.kind == GraphKind::random) {
        if (!c.seed)
            c.seed = (std::uint64_t(std::random_device{}()) << 32) ^ std::random_device{}();
        p.seed = *c.seed;
        out << "seed: " << p.seed << "\n";
    }
    for (const auto& g : graph_sequence(p)) {
        auto r = chromatic_number(g, c.graph_cap);
        out << "n=" << g.vertex_count() << " edges=" << g.edges().size() << " chi=" << r.chi;
        if (c.threshold > 0)
            out << " class=" << (r.chi >= c.threshold ? "good" : "bad");
        out << "\n";
    }
    return 0;
}

inline int vec_in_y(const RunConfig& c, std::ostream& out)
{
    VecAtom s = c.input.empty() ? parse_vec(c.alpha, c.values) : io::vecatom_from_json(load(c.input));
    std::vector<std::string> parts;
    for (const auto& [i, v] : s.support())
        parts.push_back(std::to_string(i) + ":" + rational_text(v));
    out << "support: {" << join(parts, ",") << "}\n";
    bool y = in_y(s);
    out << "in_y: " << (y ? "true" : "false") << "\n";
    return y ? 0 : 1;
}

// ---- export and verify -------------------------------------------------------------

inline int export_cmd(const RunConfig& c, std::ostream& out)
{
    auto text = io::read_text(c.input);
    auto first = text.find_first_not_of(" \t\r\n");
    bool json = first != std::string::npos && text[first] == '{';
    if (!json) {
        auto g = io::graph_from_dot(text);
        if (c.format == "native") {
            emit(c, out, io::dump(io::to_json(g)));
            return 0;
        }
        if (c.format == "dot") {
            emit(c, out, io::graph_to_dot(g));
            return 0;
        }
        throw ParameterError("cannot export a graph as '" + c.format + "'");
    }
    auto j = io::parse(text, c.input);
    auto kind = io::kind_of(j);
    auto unsupported = [&] {
        return ParameterError("cannot export a '" + kind + "' document as '" + c.format + "'");
    };
    if (c.format != "native" && c.format != "csv" && c.format != "dot")
        throw ParameterError("unknown format '" + c.format + "' (native, csv, dot)");
    if (kind == "ra") {
        auto s = io::ra_from_json(j);
        if (c.format == "native")
            emit(c, out, io::dump(io::to_json(s)));
        else if (c.format == "csv") {
            if (c.table == "triples")
                emit(c, out, io::ra_triples_csv(s));
            else if (c.table == "tensor")
                emit(c, out, io::ra_tensor_csv(s));
            else if (c.table == "composition")
                emit(c, out, io::ra_composition_csv(s));
            else
                throw ParameterError("unknown table '" + c.table + "' (triples, tensor, composition)");
        } else
            throw unsupported();
        return 0;
    }
    if (kind == "graph") {
        auto g = io::graph_from_json(j);
        if (c.format == "native")
            emit(c, out, io::dump(io::to_json(g)));
        else if (c.format == "dot")
            emit(c, out, io::graph_to_dot(g));
        else {
            std::string csv = "u,v\n";
            for (auto [u, v] : g.edges())
                csv += std::to_string(u) + "," + std::to_string(v) + "\n";
            emit(c, out, csv);
        }
        return 0;
    }
    if (c.format != "native")
        throw unsupported();
    if (kind == "ca")
        emit(c, out, io::dump(io::to_json(io::ca_from_json(j))));
    else if (kind == "fincof")
        emit(c, out, io::dump(io::to_json(io::fincof_from_json(j))));
    else if (kind == "partition")
        emit(c, out, io::dump(io::to_json(io::partition_from_json(j))));
    else if (kind == "vecatom")
        emit(c, out, io::dump(io::to_json(io::vecatom_from_json(j))));
    else
        emit(c, out, io::dump(j));
    return 0;
}

/// Every recorded violation must reappear, with the same atoms, when the check is re-run.
inline bool violations_reproduce(const io::Json& w, const ConsistencyReport& r, std::ostream& out)
{
    bool all = true;
    for (const auto& vj : w.at("violations")) {
        auto v = io::violation_from_json(vj);
        const auto* now = r.find(v.law);
        bool same = now && now->atoms == v.atoms;
        out << (same ? "reproduced " : "not reproduced ") << v.law << " at " << set_text(v.atoms) << "\n";
        all = all && same;
    }
    return all && !w.at("violations").empty();
}

inline int verify_blur(const io::Json& w, std::ostream& out)
{
    auto s = atomkit::build_maddux(w.at("k").get<std::size_t>());
    auto b = blur_index(s, w.at("l").get<std::size_t>());
    auto n = w.at("n").get<std::size_t>();
    auto member = [&](const std::vector<std::string>& names) {
        auto one = make_blur(s, b.l, {names}).members[0];
        if (std::find(b.members.begin(), b.members.end(), one) == b.members.end())
            throw FormatError("witness set " + set_text(names) + " is not a blur member");
        return one;
    };
    bool all = true, any = false;
    if (w.contains("j4")) {
        any = true;
        auto vs = w["j4"].at("v").get<std::vector<std::vector<std::string>>>();
        auto ws = w["j4"].at("w").get<std::vector<std::vector<std::string>>>();
        if (vs.size() != n - 1 || ws.size() != n - 1)
            throw FormatError("J4 witness needs n-1 pairs");
        // Direct evaluation: no T in J makes every a <= b;c hold.
        bool some_t = false;
        for (auto t : b.members) {
            bool ok = true;
            for (std::size_t i = 0; i < vs.size() && ok; ++i) {
                auto vm = member(vs[i]), wm = member(ws[i]);
                for (std::size_t pa = 0; pa < b.diversity.size() && ok; ++pa)
                    for (std::size_t pb = 0; pb < b.diversity.size() && ok; ++pb)
                        for (std::size_t pc = 0; pc < b.diversity.size() && ok; ++pc)
                            if ((vm >> pa & 1) && (wm >> pb & 1) && (t >> pc & 1)
                                && !s.holds(b.diversity[pb], b.diversity[pc], b.diversity[pa]))
                                ok = false;
            }
            if (ok) {
                some_t = true;
                break;
            }
        }
        out << (some_t ? "not reproduced" : "reproduced") << " J4 violation\n";
        all = all && !some_t;
    }
    if (w.contains("j5")) {
        any = true;
        auto ps = w["j5"].at("p").get<std::vector<std::string>>();
        auto qs = w["j5"].at("q").get<std::vector<std::string>>();
        auto wm = member(w["j5"].at("w").get<std::vector<std::string>>());
        if (ps.size() != n - 1 || qs.size() != n - 1)
            throw FormatError("J5 witness needs n-1 pairs");
        AtomSet acc = AtomSet::full(s.size());
        for (std::size_t i = 0; i < ps.size(); ++i)
            acc &= compose_sets(s, s.make_set({ps[i]}), s.make_set({qs[i]}));
        bool empty = true;
        for (std::size_t p = 0; p < b.diversity.size(); ++p)
            if ((wm >> p & 1) && acc.contains(b.diversity[p]))
                empty = false;
        out << (empty ? "reproduced" : "not reproduced") << " J5 violation\n";
        all = all && empty;
    }
    return any && all ? 0 : 1;
}

inline int verify(const RunConfig& c, std::ostream& out)
{
    auto w = load(c.input);
    auto kind = io::kind_of(w);
    if (kind == "outcome") {
        bool ok = false;
        if (w.at("game") == "ef") {
            auto l = io::ef_outcome_from_json(w);
            ok = replay_ef_certificate(io::view_of(l.a), io::view_of(l.b), l.outcome, EfOptions{l.reduced});
        } else {
            auto l = io::net_outcome_from_json(w);
            ok = replay_net_certificate(l.structure, l.pebbles, l.outcome);
        }
        out << "claimed winner: " << w.at("winner").get<std::string>() << "\ncertificate: "
            << (ok ? "replays" : "does not replay") << "\n";
        return ok ? 0 : 1;
    }
    if (kind != "witness")
        throw FormatError("verify expects a witness or outcome document, found '" + kind + "'");
    auto check = w.at("check").get<std::string>();
    bool ok = false;
    if (check == "ra")
        ok = violations_reproduce(w, check_ra_axioms(io::ra_from_json(w.at("structure"))), out);
    else if (check == "ca")
        ok = violations_reproduce(w, check_ca_atomstructure(io::ca_from_json(w.at("structure"))), out);
    else if (check == "blur")
        return verify_blur(w, out);
    else
        throw FormatError("unknown witness check '" + check + "'");
    return ok ? 0 : 1;
}

// ---- interactive play ------------------------------------------------------------

inline std::optional<std::string> prompt(std::istream& in, std::ostream& out, const std::string& text)
{
    out << text << std::flush;
    std::string line;
    if (!std::getline(in, line))
        return std::nullopt;
    auto b = line.find_first_not_of(" \t\r");
    auto e = line.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : line.substr(b, e - b + 1);
}

inline std::optional<std::size_t> find_atom(const RelationalStructure& s, const std::string& name)
{
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s.atoms()[i] == name)
            return i;
    return std::nullopt;
}

inline int play(const RunConfig& c, std::istream& in, std::ostream& out)
{
    if (c.role != "forall" && c.role != "exists")
        throw ParameterError("--role must be forall or exists");
    auto va = io::view_of(io::structure_from_json(load(c.input)));
    auto vb = io::view_of(io::structure_from_json(load(c.second_input)));
    EfGame g(va, vb);
    if (c.mu == 0)
        throw ParameterError("--mu must be positive");
    EfPlay play;
    out << "EF game, " << c.mu << " rounds. You play " << (c.role == "forall" ? "ForAll" : "Exists") << ".\n";
    for (std::size_t round = 1; round <= c.mu; ++round) {
        std::size_t left = c.mu - round + 1;
        EfMove m;
        std::size_t answer = 0;
        if (c.role == "forall") {
            while (true) {
                auto line = prompt(in, out, "round " + std::to_string(round) + " move (A|B atom): ");
                if (!line)
                    throw IoError("input ended before the game finished");
                auto parts = split(*line, ' ');
                if (parts.size() == 2 && (parts[0] == "A" || parts[0] == "B")) {
                    Side side = parts[0] == "A" ? Side::A : Side::B;
                    if (auto a = find_atom(g.structure(side), parts[1])) {
                        m = {side, *a};
                        break;
                    }
                }
                out << "illegal move '" << *line << "', try again\n";
            }
            auto ans = g.exists_answer(play, m, left);
            if (!ans) {
                // Losing position: answer legally if possible, otherwise concede.
                Side other = m.side == Side::A ? Side::B : Side::A;
                std::vector<std::size_t> all;
                for (std::size_t v = 0; v < g.structure(other).size(); ++v)
                    if (m.side == Side::A ? g.extends(play, m.atom, v) : g.extends(play, v, m.atom))
                        all.push_back(v);
                if (all.empty()) {
                    out << "Exists has no legal reply\nwinner: ForAll\n";
                    return 1;
                }
                ans = all.front();
            }
            answer = *ans;
            Side other = m.side == Side::A ? Side::B : Side::A;
            out << "Exists answers " << move_text(g, {other, answer}) << "\n";
        } else {
            auto best = g.forall_winning_move(play, left);
            m = best ? *best : g.forall_moves(play).front();
            Side other = m.side == Side::A ? Side::B : Side::A;
            out << "ForAll plays " << move_text(g, m) << "\n";
            while (true) {
                auto line = prompt(in, out, "round " + std::to_string(round) + " answer in "
                                                + (other == Side::A ? "A" : "B") + ": ");
                if (!line)
                    throw IoError("input ended before the game finished");
                if (auto a = find_atom(g.structure(other), *line)) {
                    answer = *a;
                    break;
                }
                out << "illegal move '" << *line << "', try again\n";
            }
            bool ok = m.side == Side::A ? g.extends(play, m.atom, answer) : g.extends(play, answer, m.atom);
            if (!ok) {
                out << "that answer breaks the partial isomorphism\nwinner: ForAll\n";
                return 1;
            }
        }
        play = EfGame::extend(play, m, answer);
        out << "play: " << play_text(g, play) << "\n";
    }
    out << "winner: Exists\n";
    return 0;
}

} // namespace detail

/// Parses `args` (without the program name) and runs the command. Returns the exit status.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    RunConfig c;
    CLI::App app{"Finite atom structures, blur checks and EF/network games", "atomkit"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    auto cmd = [&](CLI::App* parent, const std::string& name, const std::string& desc, const std::string& id) {
        auto* sub = parent->add_subcommand(name, desc);
        sub->callback([&c, id] { c.command = id; });
        return sub;
    };

    auto* build = app.add_subcommand("build", "Construct a structure and write it in the native format");
    build->require_subcommand(1);
    auto* bm = cmd(build, "maddux", "Maddux atom structure with k diversity atoms", "build maddux");
    bm->add_option("--k", c.k, "Number of diversity atoms")->required();
    bm->add_option("--out", c.output, "Output file (default stdout)");
    auto* bp = cmd(build, "partition", "Pair of partition structures", "build partition");
    bp->add_option("--a", c.sizes_a, "Unit sizes of A, e.g. u=4,v=2")->required();
    bp->add_option("--b", c.sizes_b, "Unit sizes of B")->required();
    bp->add_option("--large", c.large, "Comma-separated large units");
    bp->add_option("--out-a", c.output, "Output file for A");
    bp->add_option("--out-b", c.second_output, "Output file for B");
    auto* bg = cmd(build, "graph", "Graph: complete, cycle, petersen, random or empty", "build graph");
    bg->add_option("--kind", c.kind)->required();
    bg->add_option("--n", c.vertices, "Vertex count");
    bg->add_option("--p", c.p, "Edge probability (random)");
    bg->add_option("--seed", c.seed, "Seed (random)");
    bg->add_flag("--dot", c.dot, "Write DOT instead of the native format");
    bg->add_option("--out", c.output);
    auto* bv = cmd(build, "vec", "Finitely supported rational sequence", "build vec");
    bv->add_option("--values", c.values, "Comma-separated rationals, e.g. 1,2,0 or 1/2,3")->required();
    bv->add_option("--alpha", c.alpha, "Dimension bound (default: max(2, #values))");
    bv->add_option("--out", c.output);

    auto* check = app.add_subcommand("check", "Check structural laws");
    check->require_subcommand(1);
    for (const auto& [name, id] : {std::pair{"ra", "check ra"}, std::pair{"ca", "check ca"}}) {
        auto* sub = cmd(check, name, std::string("Check a '") + name + "' structure file", id);
        sub->add_option("--in", c.input)->required();
        sub->add_option("--witness-out", c.witness_out, "Write failing witnesses here");
    }

    auto* basis = app.add_subcommand("basis", "Basic matrices");
    basis->require_subcommand(1);
    auto* be = cmd(basis, "enum", "Enumerate basic matrices", "basis enum");
    be->add_option("--in", c.input, "RA structure file");
    be->add_option("--k", c.k, "Use the Maddux structure with k diversity atoms");
    be->add_option("--n", c.n, "Dimension")->required();
    be->add_flag("--list", c.list, "Print every matrix");
    be->add_option("--out", c.output, "Write the resulting cylindric atom structure");

    auto* blur = app.add_subcommand("blur", "Blur conditions and blow-up carrier");
    blur->require_subcommand(1);
    auto* bc = cmd(blur, "check", "Check J4, J5 and E for J = all l-subsets", "blur check");
    bc->add_option("--n", c.n)->required();
    bc->add_option("--l", c.l)->required();
    bc->add_option("--k", c.k)->required();
    auto* ex = bc->add_flag("--exhaustive", c.exhaustive, "Enumerate every quantifier instance (default)");
    auto* sm = bc->add_option("--samples", c.samples, "Sample this many instances per condition");
    bc->add_option("--seed", c.seed, "Sampling seed (generated and printed when omitted)");
    auto* nv = bc->add_flag("--naive", c.naive, "Plain enumeration without pruning");
    ex->excludes(sm);
    nv->excludes(sm);
    bc->add_option("--witness-out", c.witness_out);
    auto* bcar = cmd(blur, "carrier", "Blow-up carrier with both partitions as CSV", "blur carrier");
    bcar->add_option("--k", c.k)->required();
    bcar->add_option("--l", c.l)->required();
    bcar->add_option("--truncation", c.truncation, "Copies per atom and blur member")->required();
    bcar->add_option("--out", c.output);

    auto* game = app.add_subcommand("game", "Decide bounded games");
    game->require_subcommand(1);
    auto* ge = cmd(game, "ef", "EF game on two structures", "game ef");
    ge->add_option("--a", c.input)->required();
    ge->add_option("--b", c.second_input)->required();
    ge->add_option("--mu", c.mu, "Rounds")->required();
    ge->add_flag("--strategy", c.strategy, "Print the winner's strategy");
    ge->add_flag("--no-symmetry", c.no_symmetry, "Search without twin-class reduction");
    ge->add_option("--out", c.output, "Write the outcome record");
    auto* gn = cmd(game, "net", "Network game on a cylindric atom structure", "game net");
    gn->add_option("--s", c.input)->required();
    gn->add_option("--k", c.k, "Pebbles")->required();
    gn->add_option("--rounds", c.rounds)->required();
    gn->add_option("--out", c.output, "Write the outcome record");

    auto* cl = cmd(&app, "classify", "Bounded certificate from the network game with n+k pebbles", "classify");
    cl->add_option("--s", c.input)->required();
    cl->add_option("--k", c.k, "Extra dimensions")->required();
    cl->add_option("--rounds", c.rounds)->required();
    cl->add_option("--out", c.output, "Write the outcome record");

    auto* graph = app.add_subcommand("graph", "Chromatic numbers");
    graph->require_subcommand(1);
    auto* gc = cmd(graph, "chi", "Exact chromatic number of a graph file (native or DOT)", "graph chi");
    gc->add_option("--in", c.input)->required();
    gc->add_option("--cap", c.graph_cap, "Vertex cap for exact search");
    gc->add_option("--threshold", c.threshold, "Tag good (chi >= threshold) or bad");
    auto* gs = cmd(graph, "seq", "Chromatic numbers along a graph sequence", "graph seq");
    gs->add_option("--kind", c.kind, "complete, odd_cycle or random")->required();
    gs->add_option("--sizes", c.sizes, "Comma-separated sizes")->required();
    gs->add_option("--p", c.p);
    gs->add_option("--seed", c.seed);
    gs->add_option("--cap", c.graph_cap);
    gs->add_option("--threshold", c.threshold);

    auto* vec = app.add_subcommand("vec", "Vector-space atoms");
    vec->require_subcommand(1);
    auto* vy = cmd(vec, "in-y", "Membership in y", "vec in-y");
    vy->add_option("--in", c.input, "vecatom file");
    vy->add_option("--values", c.values, "Comma-separated rationals");
    vy->add_option("--alpha", c.alpha);

    auto* pl = cmd(&app, "play", "Play the EF game interactively", "play");
    pl->add_option("--a", c.input)->required();
    pl->add_option("--b", c.second_input)->required();
    pl->add_option("--mu", c.mu)->required();
    pl->add_option("--role", c.role, "forall or exists")->required();

    auto* exp = cmd(&app, "export", "Re-export a file as native, csv or dot", "export");
    exp->add_option("--in", c.input)->required();
    exp->add_option("--format", c.format, "native, csv or dot");
    exp->add_option("--table", c.table, "RA csv table: triples, tensor or composition");
    exp->add_option("--out", c.output);

    auto* ver = cmd(&app, "verify", "Re-check a witness or replay an outcome record", "verify");
    ver->add_option("--in", c.input)->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        const auto& id = c.command;
        if (id == "build maddux")
            return detail::build_maddux(c, out);
        if (id == "build partition")
            return detail::build_partition(c, out);
        if (id == "build graph")
            return detail::build_graph(c, out);
        if (id == "build vec")
            return detail::build_vec(c, out);
        if (id == "check ra")
            return detail::check_ra(c, out);
        if (id == "check ca")
            return detail::check_ca(c, out);
        if (id == "basis enum")
            return detail::basis_enum(c, out);
        if (id == "blur check")
            return detail::blur_check(c, out);
        if (id == "blur carrier")
            return detail::blur_carrier(c, out);
        if (id == "game ef")
            return detail::game_ef(c, out);
        if (id == "game net")
            return detail::game_net(c, out);
        if (id == "classify")
            return detail::classify_cmd(c, out);
        if (id == "graph chi")
            return detail::graph_chi(c, out);
        if (id == "graph seq")
            return detail::graph_seq(c, out);
        if (id == "vec in-y")
            return detail::vec_in_y(c, out);
        if (id == "play")
            return detail::play(c, in, out);
        if (id == "export")
            return detail::export_cmd(c, out);
        if (id == "verify")
            return detail::verify(c, out);
        err << "usage error: no command given\n";
        return 2;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << "\n";
    } catch (const FormatError& e) {
        err << "format error: " << e.what() << "\n";
    } catch (const CapError& e) {
        err << "cap exceeded: " << e.what() << "\n";
    } catch (const ParameterError& e) {
        err << "parameter error: " << e.what() << "\n";
    } catch (const IndexError& e) {
        err << "index error: " << e.what() << "\n";
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
    } catch (const nlohmann::json::exception& e) {
        err << "format error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return 2;
}

} // namespace atomkit::cli
