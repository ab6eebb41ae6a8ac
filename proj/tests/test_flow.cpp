#include <fstream>
#include <iterator>

#include "doctest.h"
#include "sks/bridge.hpp"

using namespace sks;

namespace {

AtomicFlow load_json(const std::string& name) {
    std::ifstream in(std::string(SKS_CORPUS_DIR) + "/" + name);
    REQUIRE(in);
    return flow_from_json(std::string(std::istreambuf_iterator<char>(in), {}));
}

// aid over acd over aiu, with a weakening into the acd and a free edge into the aiu
AtomicFlow paths_example() {
    AtomicFlow p;
    p.add_vertex(Label::aid, 1);
    p.add_vertex(Label::acd, 2);
    p.add_vertex(Label::awd, 3);
    p.add_vertex(Label::aiu, 4);
    p.add_edge(1, BOT, "", 1);
    p.add_edge(1, 2, "", 2);
    p.add_edge(3, 2, "", 3);
    p.add_edge(2, 4, "", 4);
    p.add_edge(TOP, 4, "", 5);
    return p;
}

// three simple edges in a row, no cycles
AtomicFlow extremal_example() {
    AtomicFlow x;
    x.add_vertex(Label::acd, 1);
    x.add_vertex(Label::aiu, 2);
    x.add_vertex(Label::aid, 3);
    x.add_vertex(Label::aiu, 4);
    x.add_vertex(Label::aid, 5);
    x.add_vertex(Label::acd, 6);
    x.add_edge(3, 2, "", 1);
    x.add_edge(3, 4, "", 2);
    x.add_edge(5, 4, "", 3);
    x.add_edge(1, 2, "", 4);
    x.add_edge(TOP, 1, "", 5);
    x.add_edge(TOP, 1, "", 6);
    x.add_edge(5, 6, "", 7);
    x.add_edge(TOP, 6, "", 8);
    x.add_edge(6, BOT, "", 9);
    return x;
}

std::set<std::vector<int>> cycle_sets(const AtomicFlow& a) {
    std::set<std::vector<int>> out;
    for (auto& c : ai_cycles(a)) {
        std::vector<int> e = c.edges;
        std::sort(e.begin(), e.end());
        out.insert(e);
    }
    return out;
}

}  // namespace

TEST_CASE("validation") {
    AtomicFlow a = load_json("flow_a.json");
    CHECK(validate(a).ok);
    CHECK(a.inputs.size() == 3);
    CHECK(a.outputs.empty());

    AtomicFlow bad;
    bad.add_vertex(Label::aid, 1);
    bad.add_vertex(Label::acd, 2);
    bad.add_edge(1, 2, "", 1);
    bad.add_edge(1, 2, "", 2);
    bad.add_edge(2, BOT, "", 3);
    auto r = validate(bad);
    CHECK_FALSE(r.ok);
    CHECK(r.condition == "polarity");

    CHECK(validate(AtomicFlow{}).ok);

    AtomicFlow arity;
    arity.add_vertex(Label::acd, 1);
    arity.add_edge(TOP, 1, "", 1);
    arity.add_edge(1, BOT, "", 2);
    CHECK(validate(arity).condition == "arity");
}

TEST_CASE("polarity assignments") {
    AtomicFlow a = load_json("flow_a.json");
    CHECK(polarity_assignments(a).size() == 2);
    AtomicFlow two;
    two.add_edge(TOP, BOT, "", 1);
    two.add_edge(TOP, BOT, "", 2);
    CHECK(polarity_assignments(two).size() == 4);
    AtomicFlow w;
    w.add_vertex(Label::awd, 1);
    w.add_edge(1, BOT, "", 1);
    CHECK(polarity_assignments(w).size() == 2);
    for (std::uint64_t s = 0; s < 100; ++s) {
        RandomFlowParams p;
        p.vertices = 5;
        AtomicFlow f = random_flow(s, p);
        std::size_t k = components(f).size();
        if (k <= 4) CHECK(polarity_assignments(f).size() == (std::size_t{1} << k));
    }
}

TEST_CASE("paths and connections") {
    AtomicFlow p = paths_example();
    REQUIRE(validate(p).ok);
    auto conn = ai_connections(p);
    REQUIRE(conn.size() == 1);
    CHECK(conn[0] == std::vector<int>{2, 4});
    std::set<std::vector<int>> maximal;
    for (auto& m : maximal_ai_paths(p)) maximal.insert(m.edges);
    CHECK(maximal == std::set<std::vector<int>>{{1, 2, 4, 5}, {3, 4, 5}});
    CHECK(ai_cycles(p).empty());
    for (auto& [e, _] : p.edges) CHECK_FALSE(is_simple_edge(p, e));
}

TEST_CASE("overlapping cycles") {
    AtomicFlow c = load_json("two_cycles.json");
    REQUIRE(validate(c).ok);
    CHECK(cycle_sets(c) == std::set<std::vector<int>>{{1, 2, 4, 5, 6, 7}, {1, 2, 3, 8}});
    std::set<int> simple;
    for (auto& [e, _] : c.edges)
        if (is_simple_edge(c, e)) simple.insert(e);
    CHECK(simple == std::set<int>{5, 6});
    CHECK(classify_edge(c, 5).in_cycle);
    CHECK_FALSE(classify_edge(c, 3).simple);
    CHECK(edges_on_cycles(c).size() == 8);
}

TEST_CASE("simple and extremal edges") {
    AtomicFlow x = extremal_example();
    REQUIRE(validate(x).ok);
    CHECK(ai_cycles(x).empty());
    CHECK(all_ai_paths_clean(x));
    for (int e : {1, 2, 3}) CHECK(is_simple_edge(x, e));
    CHECK(classify_edge(x, 1).extremal);
    CHECK_FALSE(classify_edge(x, 2).extremal);
    CHECK(classify_edge(x, 3).extremal);
    for (auto& m : maximal_ai_paths(x)) {
        std::set<int> seen(m.edges.begin(), m.edges.end());
        CHECK(seen.size() == m.edges.size());
    }
}

TEST_CASE("streamlining predicates") {
    AtomicFlow first;
    first.add_vertex(Label::acd, 1);
    first.add_vertex(Label::awd, 2);
    first.add_vertex(Label::aiu, 3);
    first.add_edge(TOP, 1, "", 1);
    first.add_edge(TOP, 1, "", 2);
    first.add_edge(1, 3, "", 3);
    first.add_edge(2, 3, "", 4);
    REQUIRE(validate(first).ok);
    CHECK_FALSE(is_streamlined(first));

    AtomicFlow second;
    second.add_vertex(Label::acd, 1);
    second.add_vertex(Label::awd, 2);
    second.add_vertex(Label::acu, 3);
    second.add_vertex(Label::aiu, 4);
    second.add_edge(2, 1, "", 1);
    second.add_edge(3, 1, "", 2);
    second.add_edge(1, BOT, "", 3);
    second.add_edge(TOP, 3, "", 4);
    second.add_edge(3, 4, "", 5);
    second.add_edge(TOP, 4, "", 6);
    REQUIRE(validate(second).ok);
    CHECK(is_streamlined(second));
    CHECK_FALSE(is_super_streamlined(second));

    AtomicFlow third;
    third.add_vertex(Label::acu, 1);
    third.add_vertex(Label::aid, 2);
    third.add_vertex(Label::aiu, 3);
    third.add_vertex(Label::acd, 4);
    third.add_edge(TOP, 1, "", 1);
    third.add_edge(1, 4, "", 2);
    third.add_edge(1, 3, "", 3);
    third.add_edge(TOP, 3, "", 4);
    third.add_edge(2, BOT, "", 5);
    third.add_edge(2, 4, "", 6);
    third.add_edge(4, BOT, "", 7);
    REQUIRE(validate(third).ok);
    CHECK(is_hyper_streamlined(third));

    AtomicFlow empty;
    CHECK(is_hyper_streamlined(empty));
}

TEST_CASE("isomorphism") {
    AtomicFlow a = load_json("flow_a.json");
    // same flow with renumbered vertices and edges, inputs listed in another order
    AtomicFlow b;
    b.add_vertex(Label::aiu, 7);
    b.add_vertex(Label::acu, 3);
    b.add_vertex(Label::aiu, 9);
    b.add_edge(TOP, 9, "", 11);
    b.add_edge(3, 9, "", 12);
    b.add_edge(3, 7, "", 13);
    b.add_edge(TOP, 3, "", 14);
    b.add_edge(TOP, 7, "", 15);
    AtomicFlow c = b;
    c.inputs = {15, 11, 14};
    CHECK(isomorphic(a, b));
    CHECK(isomorphic(b, c));
    CHECK(isomorphic(a, c));

    AtomicFlow aid, awd;
    aid.add_vertex(Label::aid, 1);
    aid.add_edge(1, BOT, "", 1);
    aid.add_edge(1, BOT, "", 2);
    awd.add_vertex(Label::awd, 1);
    awd.add_edge(1, BOT, "", 1);
    awd.add_edge(TOP, BOT, "", 2);
    CHECK_FALSE(isomorphic(aid, awd));

    AtomicFlow two, acd;
    two.add_edge(TOP, BOT, "", 1);
    two.add_edge(TOP, BOT, "", 2);
    acd.add_vertex(Label::acd, 1);
    acd.add_edge(TOP, 1, "", 1);
    acd.add_edge(TOP, 1, "", 2);
    acd.add_edge(1, BOT, "", 3);
    CHECK_FALSE(isomorphic(two, acd));

    // cycles survive renumbering
    AtomicFlow cyc = load_json("two_cycles.json");
    AtomicFlow ren;
    for (auto& [v, l] : cyc.vertices) ren.add_vertex(l, 100 - v);
    for (auto& [e, x] : cyc.edges) ren.add_edge(100 - x.up, 100 - x.lo, "", 50 - e);
    CHECK(isomorphic(cyc, ren));
    CHECK(ai_cycles(ren).size() == ai_cycles(cyc).size());
}

TEST_CASE("json and dot") {
    AtomicFlow a = load_json("flow_a.json");
    CHECK(flow_to_json(flow_from_json(flow_to_json(a))) == flow_to_json(a));
    CHECK_THROWS_AS(flow_from_json("{\"vertices\": 3}"), DomainError);
    std::string dot = to_dot(a);
    CHECK(dot == to_dot(a));
    CHECK(dot.find("digraph") == 0);
    CHECK(std::count(dot.begin(), dot.end(), '>') == 5);
    AtomicFlow e;
    e.add_edge(TOP, BOT, "a", 1);
    CHECK(to_dot(e).find("TOP -> BOT") != std::string::npos);
    DotOptions o;
    o.polarity = true;
    std::string pd = to_dot(a, o);
    CHECK(pd.find('+') != std::string::npos);
}
