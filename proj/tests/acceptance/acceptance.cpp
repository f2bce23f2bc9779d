// Acceptance run: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "atomkit/basis.hpp"
#include "atomkit/blur.hpp"
#include "atomkit/ca_samples.hpp"
#include "atomkit/cli.hpp"
#include "atomkit/ef_game.hpp"
#include "atomkit/fincof.hpp"
#include "atomkit/graph.hpp"
#include "atomkit/network_game.hpp"
#include "atomkit/partition.hpp"
#include "atomkit/relalg.hpp"
#include "atomkit/rng.hpp"
#include "atomkit/vec.hpp"
#include "oracles/oracles.hpp"

using namespace atomkit;
namespace fs = std::filesystem;

namespace {

// Wall-clock budgets, seconds.
constexpr double limit_maddux_each = 1.0;
constexpr double limit_blur_exhaustive = 60.0;
constexpr double limit_blur_sampled = 60.0;
constexpr double limit_basis = 30.0;
constexpr double limit_partition_battery = 120.0;
constexpr double limit_network = 60.0;
constexpr double limit_chromatic_each = 5.0;
constexpr double limit_vec = 5.0;
constexpr double limit_fincof = 5.0;
constexpr double limit_cli = 120.0;

constexpr std::uint64_t blur_samples = 100000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Check {
    bool ok = true;
    std::string why;
    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            why = what;
        }
    }
};

int failures = 0;

void report(int id, const std::string& title, double limit, const std::function<void(Check&)>& body)
{
    Check c;
    auto t0 = Clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
    double dt = seconds_since(t0);
    c.require(dt < limit, "over time limit");
    if (!c.ok)
        ++failures;
    std::printf("[%s] %d: %s (%.2fs, limit %.0fs)%s%s\n", c.ok ? "PASS" : "FAIL", id, title.c_str(), dt, limit,
                c.ok ? "" : " -- ", c.ok ? "" : c.why.c_str());
    std::fflush(stdout);
}

std::string tag(const char* what, std::size_t a, std::size_t b)
{
    return std::string(what) + " (" + std::to_string(a) + "," + std::to_string(b) + ")";
}

// ---- 1 -----------------------------------------------------------------------------

void maddux(Check& c)
{
    for (std::size_t k = 1; k <= 6; ++k) {
        auto t0 = Clock::now();
        auto s = build_maddux(k);
        c.require(check_ra_axioms(s).pass(), "axioms fail at k=" + std::to_string(k));
        c.require(oracle::cycle_closed(s) && oracle::associative(s) && oracle::identity_law(s),
                  "oracle laws fail at k=" + std::to_string(k));
        std::set<std::array<std::size_t, 3>> got;
        for (auto t : s.diversity_triples())
            got.insert({t.a - 1, t.b - 1, t.c - 1});
        c.require(got == oracle::maddux_diversity_triples(k), "triples differ at k=" + std::to_string(k));
        c.require(got.size() == k * k * k - k, "count wrong at k=" + std::to_string(k));
        c.require(seconds_since(t0) < limit_maddux_each, "k=" + std::to_string(k) + " over 1s");
    }
}

// ---- 2, 3 --------------------------------------------------------------------------

void blur_exhaustive(Check& c)
{
    for (std::size_t k = 3; k <= 9; ++k)
        for (std::size_t l = 1; l <= 3 && l <= k; ++l) {
            auto s = build_maddux(k);
            auto b = blur_index(s, l);
            auto fam = oracle::l_subsets(s, l);
            auto j4 = check_J4(s, b, 3);
            auto o4 = oracle::j4(s, fam, 3);
            c.require(j4.holds == o4.holds, tag("J4 verdict", k, l));
            if (!o4.holds && j4.witness)
                c.require(j4.witness->v == o4.v && j4.witness->w == o4.w, tag("J4 witness", k, l));
            auto j5 = check_J5(s, b, 3);
            auto o5 = oracle::j5(s, fam, 3);
            c.require(j5.holds == o5.holds, tag("J5 verdict", k, l));
            if (!o5.holds && j5.witness)
                c.require(j5.witness->p == o5.p && j5.witness->q == o5.q && j5.witness->w == o5.w,
                          tag("J5 witness", k, l));
        }
}

void blur_sampled(Check& c)
{
    auto s = build_maddux(25);
    auto b = blur_index(s, 5);
    auto j4 = check_J4(s, b, 3, CheckMode::sampled(blur_samples, 1));
    auto j5 = check_J5(s, b, 3, CheckMode::sampled(blur_samples, 2));
    c.require(j4.instances == blur_samples && j5.instances == blur_samples, "sample count");
    c.require(j4.holds && j4.violations == 0, "J4 violations " + std::to_string(j4.violations));
    c.require(j5.holds && j5.violations == 0, "J5 violations " + std::to_string(j5.violations));
}

// ---- 4 -----------------------------------------------------------------------------

std::vector<std::vector<std::size_t>> flat(const std::vector<BasicMatrix>& ms)
{
    std::vector<std::vector<std::size_t>> out;
    for (const auto& m : ms) {
        std::vector<std::size_t> e;
        for (std::size_t i = 0; i < m.dimension(); ++i)
            for (std::size_t j = 0; j < m.dimension(); ++j)
                e.push_back(m(i, j));
        out.push_back(e);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void basis(Check& c)
{
    auto s3 = build_maddux(3);
    c.require(flat(enumerate_basic_matrices(s3, 3)) == oracle::basic_matrices_bruteforce(s3, 3),
              "E_3 n=3 differs from brute force");
    auto ca = ca_from_basic_matrices(build_maddux(6), 3);
    c.require(check_ca_atomstructure(ca).pass(), "CA(E_6,3) fails its laws");
}

// ---- 5 -----------------------------------------------------------------------------

void partition_battery(Check& c)
{
    Rng g(20240501);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t blocks = 1 + uniform_below(g, 5);
        UnitSizes sa, sb;
        std::set<std::string> large;
        for (std::size_t u = 0; u < blocks; ++u) {
            std::string name = "u" + std::to_string(u);
            std::size_t x = 1 + uniform_below(g, 6), y = x;
            if (g() & 1) {
                large.insert(name);
                y = 1 + uniform_below(g, x);
            }
            sa.push_back({name, x});
            sb.push_back({name, y});
        }
        auto [a, b] = build_partition_pair(sa, sb, large);
        auto va = relational_view(a), vb = relational_view(b);
        auto st = ef_partition_strategy(a, b);
        bool lost = false;
        for (std::size_t mu = 1; mu <= 5; ++mu) {
            auto o = ef_decide(va, vb, mu);
            bool win = o.winner == Player::Exists;
            std::string at = "trial " + std::to_string(trial) + " mu " + std::to_string(mu);
            c.require(win == oracle::ef_partition_closed_form(a, b, mu), "closed form, " + at);
            c.require(replay_ef_certificate(va, vb, o), "certificate replay, " + at);
            c.require(!(lost && win), "round monotonicity, " + at);
            c.require(replay_partition_strategy(st, mu, true).survives == win, "strategy, " + at);
            lost = lost || !win;
        }
    }
}

// ---- 6 -----------------------------------------------------------------------------

void network(Check& c)
{
    auto full = full_tuple_structure(2, 4);
    for (std::size_t r = 1; r <= 6; ++r)
        c.require(network_game_decide(full, 3, r).winner == Player::Exists,
                  "full tuple loses at r=" + std::to_string(r));
    auto dead = dead_end_structure();
    for (std::size_t r = 1; r <= 2; ++r) {
        auto o = network_game_decide(dead, 2, r);
        c.require(o.winner == Player::ForAll, "dead end survives at r=" + std::to_string(r));
        c.require(replay_net_certificate(dead, 2, o), "dead end certificate fails replay");
    }
    std::vector<CaAtomStructure> battery{full_tuple_structure(2, 2), full_tuple_structure(2, 3), dead,
                                         ca_from_basic_matrices(build_maddux(1), 2),
                                         ca_from_basic_matrices(build_maddux(2), 2)};
    for (std::size_t i = 0; i < battery.size(); ++i)
        for (std::size_t k = 2; k <= 3; ++k)
            for (std::size_t r = 1; r <= 3; ++r) {
                auto win = [&](std::size_t kk, std::size_t rr) {
                    return network_game_decide(battery[i], kk, rr).winner == Player::Exists;
                };
                bool here = win(k, r);
                c.require(!win(k + 1, r) || here, "pebble monotonicity, structure " + std::to_string(i));
                c.require(!win(k, r + 1) || here, "round monotonicity, structure " + std::to_string(i));
            }
}

// ---- 7 -----------------------------------------------------------------------------

void chromatic_case(Check& c, const std::string& name, const Graph& g, std::size_t expect)
{
    auto t0 = Clock::now();
    auto r = chromatic_number(g);
    c.require(r.chi == expect, name + " chi " + std::to_string(r.chi));
    c.require(is_proper_coloring(g, r.coloring), name + " witness colouring improper");
    c.require(r.infeasibility_exhaustive, name + " infeasibility not exhaustive");
    c.require(!oracle::colourable(g, expect - 1), name + " oracle colours with chi-1");
    c.require(seconds_since(t0) < limit_chromatic_each, name + " over 5s");
}

// ---- 8, 9 --------------------------------------------------------------------------

VecAtom random_vec(Rng& g)
{
    std::map<std::size_t, Rational> e;
    for (std::size_t i = 0; i < 8; ++i)
        if (uniform_below(g, 2) == 0)
            e[i] = Rational(std::int64_t(uniform_below(g, 9)) - 4, std::int64_t(1 + uniform_below(g, 3)));
    return VecAtom(8, e);
}

void vec(Check& c)
{
    Rng g(8);
    for (int trial = 0; trial < 1000; ++trial) {
        auto s = random_vec(g), t = random_vec(g), u = random_vec(g);
        std::size_t i = uniform_below(g, 8), j = uniform_below(g, 8);
        c.require(equiv_i(s, s, i), "reflexive");
        c.require(equiv_i(s, t, i) == equiv_i(t, s, i), "symmetric");
        c.require(!(equiv_i(s, t, i) && equiv_i(t, u, i)) || equiv_i(s, u, i), "transitive");
        auto w = swap_ij(s, i, j);
        c.require(swap_ij(w, i, j) == s, "swap involution");
        c.require(swap_ij(s, j, i) == w, "swap symmetric");
        c.require(w[i] == s[j] && w[j] == s[i], "swap moves coordinates");
        if (i > 0 && j > 0)
            c.require(in_y(w) == in_y(s), "y invariant under swaps away from 0");
    }
}

using Window = std::set<std::pair<std::size_t, std::uint64_t>>;

void fincof(Check& c)
{
    using M = BlockPart::Mode;
    const FinCofCarrier carrier{{"p", true, 0}, {"q", false, 5}, {"r", true, 0}};
    Rng g(9);
    auto random_fc = [&] {
        std::vector<BlockPart> parts(carrier.size());
        for (std::size_t b = 0; b < carrier.size(); ++b) {
            parts[b].mode = carrier[b].infinite && (g() & 1) ? M::cofinite : M::finite;
            std::uint64_t bound = carrier[b].infinite ? 12 : carrier[b].size;
            for (std::uint64_t i = 0; i < bound; ++i)
                if (uniform_below(g, 3) == 0)
                    parts[b].listed.insert(i);
        }
        return FinCofSet(carrier, parts);
    };
    auto window = [](const FinCofSet& x, std::uint64_t n) {
        Window w;
        for (auto a : fc_materialize(x, n))
            w.insert({a.block, a.index});
        return w;
    };
    const std::uint64_t n = 20;
    Window all;
    for (std::size_t b = 0; b < carrier.size(); ++b)
        for (std::uint64_t i = 0; i < (carrier[b].infinite ? n : carrier[b].size); ++i)
            all.insert({b, i});
    for (int trial = 0; trial < 1000; ++trial) {
        auto x = random_fc(), y = random_fc();
        auto wx = oracle::window_set(x, n), wy = oracle::window_set(y, n);
        c.require(window(x, n) == wx, "materialization");
        Window un, in, comp;
        std::set_union(wx.begin(), wx.end(), wy.begin(), wy.end(), std::inserter(un, un.end()));
        std::set_intersection(wx.begin(), wx.end(), wy.begin(), wy.end(), std::inserter(in, in.end()));
        std::set_difference(all.begin(), all.end(), wx.begin(), wx.end(), std::inserter(comp, comp.end()));
        c.require(window(fc_union(x, y), n) == un, "union");
        c.require(window(fc_intersect(x, y), n) == in, "intersection");
        c.require(window(fc_complement(x), n) == comp, "complement");
    }
    auto even = fc_membership(carrier, "p", {{}, {true, false}});
    c.require(even.status == TermMembership::Status::not_representable, "even indices reported representable");
}

// ---- 10 ----------------------------------------------------------------------------

struct RunOut {
    int code;
    std::string out, err;
    bool operator==(const RunOut&) const = default;
};

RunOut run_cli(const std::vector<std::string>& args)
{
    std::istringstream in;
    std::ostringstream out, err;
    int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

void cli_determinism(Check& c)
{
    auto dir = fs::temp_directory_path() / ("atomkit_accept_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto p = [&](const char* f) { return (dir / f).string(); };
    run_cli({"build", "maddux", "--k", "3", "--out", p("m.json")});
    run_cli({"build", "partition", "--a", "u=4,v=2", "--b", "u=3,v=2", "--large", "u", "--out-a", p("a.json"),
             "--out-b", p("b.json")});
    run_cli({"build", "graph", "--kind", "petersen", "--out", p("g.json")});
    run_cli({"basis", "enum", "--k", "2", "--n", "2", "--out", p("ca.json")});
    run_cli({"blur", "check", "--n", "3", "--l", "1", "--k", "3", "--witness-out", p("w.json")});
    run_cli({"game", "ef", "--a", p("a.json"), "--b", p("b.json"), "--mu", "4", "--out", p("o.json")});
    std::vector<std::vector<std::string>> cmds{
        {"build", "maddux", "--k", "4"},
        {"build", "vec", "--values", "1/2,1/2,0"},
        {"build", "graph", "--kind", "random", "--n", "9", "--p", "0.4", "--seed", "7"},
        {"check", "ra", "--in", p("m.json")},
        {"check", "ca", "--in", p("ca.json")},
        {"basis", "enum", "--in", p("m.json"), "--n", "3", "--list"},
        {"blur", "check", "--n", "3", "--l", "2", "--k", "6"},
        {"blur", "check", "--n", "3", "--l", "3", "--k", "12", "--samples", "2000", "--seed", "5"},
        {"blur", "carrier", "--k", "3", "--l", "1", "--truncation", "2"},
        {"game", "ef", "--a", p("a.json"), "--b", p("b.json"), "--mu", "4", "--strategy"},
        {"game", "net", "--s", p("ca.json"), "--k", "3", "--rounds", "2"},
        {"classify", "--s", p("ca.json"), "--k", "1", "--rounds", "2"},
        {"graph", "chi", "--in", p("g.json")},
        {"graph", "seq", "--kind", "random", "--sizes", "6,8", "--seed", "3", "--threshold", "3"},
        {"vec", "in-y", "--values", "1,2,0"},
        {"export", "--in", p("m.json"), "--format", "csv", "--table", "tensor"},
        {"export", "--in", p("g.json"), "--format", "dot"},
        {"verify", "--in", p("w.json")},
        {"verify", "--in", p("o.json")},
    };
    for (const auto& cmd : cmds) {
        auto x = run_cli(cmd), y = run_cli(cmd);
        std::string name = cmd[0] + " " + cmd[1];
        c.require(x == y, "output differs between runs: " + name);
        c.require(x.code != 2, "command errored: " + name + ": " + x.err);
    }
    fs::remove_all(dir);
}

} // namespace

int main()
{
    report(1, "Maddux structures k=1..6 satisfy the axioms; triple sets match enumeration", 6 * limit_maddux_each,
           maddux);
    report(2, "J4/J5 exhaustive verdicts and witnesses match the oracle, n=3, l=1..3, k=3..9", limit_blur_exhaustive,
           blur_exhaustive);
    report(3, "n=3 l=5 k=25: 100000 sampled instances per condition, no violations", limit_blur_sampled,
           blur_sampled);
    report(4, "basic matrices of E_3 at n=3 match brute force; CA(E_6,3) passes", limit_basis, basis);
    report(5, "200 seeded partition pairs: closed form, replay, round monotonicity, strategy", limit_partition_battery,
           partition_battery);
    report(6, "network game: full tuple survives r<=6, dead end refuted with replay, monotone", limit_network,
           network);
    report(7, "chromatic numbers K4=4 C5=3 C7=3 Petersen=3 with witnesses", 4 * limit_chromatic_each, [](Check& c) {
        chromatic_case(c, "K4", complete_graph(4), 4);
        chromatic_case(c, "C5", cycle_graph(5), 3);
        chromatic_case(c, "C7", cycle_graph(7), 3);
        chromatic_case(c, "Petersen", petersen_graph(), 3);
    });
    report(8, "vector atoms: equivalence, transpositions, y over 1000 seeded atoms", limit_vec, vec);
    report(9, "fin/cofinite operations over 1000 seeded cases; even indices not representable", limit_fincof,
           fincof);
    report(10, "CLI output is byte-identical across repeated runs", limit_cli, cli_determinism);
    std::printf("%s: %d failing\n", failures ? "FAILED" : "OK", failures);
    return failures ? 1 : 0;
}
