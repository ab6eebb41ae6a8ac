#include <iostream>

#include "doctest.h"
#include "sks/global_reductions.hpp"
#include "sks/local_rules.hpp"

using namespace sks;

namespace {

std::optional<int> any_simple(const AtomicFlow& a) {
    for (auto& [e, _] : a.edges)
        if (is_simple_edge(a, e)) return e;
    return std::nullopt;
}

}  // namespace

TEST_CASE("se on a bare axiom/cut pair") {
    AtomicFlow a;
    a.add_vertex(Label::aid, 1);
    a.add_vertex(Label::aiu, 2);
    a.add_edge(1, 2, "a", 1);
    a.add_edge(1, 2, "-a", 2);
    SeSite s = se_site(a, 1);
    AtomicFlow c = reduce_se_flow(a, s);
    CHECK(validate(c).ok);
    CHECK(label_summary(c) == "awd:1 awu:1");
    CHECK(c.edges.size() == 1);
}

TEST_CASE("se flow law and derivation soundness") {
    int done = 0;
    for (std::uint64_t seed = 0; seed < 1000 && done < 100; ++seed) {
        RandomFlowParams p;
        p.vertices = 6;
        Derivation d = random_derivation(seed, p);
        AtomicFlow f = flow_of(d);
        auto e = any_simple(f);
        if (!e) continue;
        ++done;
        SeSite s = se_site(f, *e);
        AtomicFlow c = reduce_se_flow(f, s);
        REQUIRE(validate(c).ok);
        CHECK(c.vertices.size() == 2 * (f.vertices.size() - 2) + 2 + f.inputs.size() + f.outputs.size());
        if (ai_cycles(f).empty()) CHECK(ai_cycles(c).empty());
        Derivation r = reduce_se_derivation(d, s);
        auto rep = check(r);
        if (!rep.ok) std::cerr << to_text(d) << "---\n" << to_text(r) << rep.to_string(r.size()) << "\n";
        REQUIRE(rep.ok);
        CHECK(equal(r.premiss, d.premiss));
        CHECK(equal(r.conclusion(), d.conclusion()));
        bool iso = isomorphic(flow_of(r), c).has_value();
        if (!iso) std::cerr << to_text(d) << flow_to_json(flow_of(r)) << flow_to_json(c);
        REQUIRE(iso);
    }
    CHECK(done == 100);
}

TEST_CASE("bc and ex on flows") {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        RandomFlowParams p;
        p.vertices = 7;
        AtomicFlow f = random_flow(seed, p);
        auto [g, t] = make_cycles_fragile(f);
        AtomicFlow b = reduce_bc(g);
        CHECK(validate(b).ok);
        CHECK(ai_cycles(b).empty());
        auto [n, t2] = normalize_c(b);
        AtomicFlow x = reduce_ex(n);
        CHECK(validate(x).ok);
        CHECK(ai_connections(x).empty());
    }
}

TEST_CASE("bc and ex base cases are identities") {
    RandomFlowParams p;
    p.weights = {0, 0, 1, 1, 1, 1};
    AtomicFlow f = random_flow(3, p);
    CHECK(isomorphic(reduce_bc(f), f, true).has_value());
    CHECK(isomorphic(reduce_ex(f), f, true).has_value());
}

TEST_CASE("algorithms BC and EX") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        RandomFlowParams p;
        p.vertices = 6;
        Derivation d = random_derivation(seed, p);
        Derivation b = algorithm_bc(d);
        REQUIRE(check(b).ok);
        CHECK(equal(b.premiss, d.premiss));
        CHECK(equal(b.conclusion(), d.conclusion()));
        CHECK(ai_cycles(flow_of(b)).empty());
        GlobalOptions o;
        o.jobs = 4;
        Derivation x = algorithm_ex(b, o);
        REQUIRE(check(x).ok);
        CHECK(equal(x.conclusion(), d.conclusion()));
        CHECK(ai_connections(flow_of(x)).empty());
    }
}
