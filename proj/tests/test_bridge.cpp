#include <fstream>
#include <iostream>
#include <iterator>

#include "doctest.h"
#include "sks/bridge.hpp"

using namespace sks;

namespace {

Derivation load(const std::string& name) {
    std::ifstream in(std::string(SKS_CORPUS_DIR) + "/" + name);
    REQUIRE(in);
    return parse_derivation(std::string(std::istreambuf_iterator<char>(in), {}));
}

int structural_steps(const Derivation& d) {
    int n = 0;
    for (auto& s : d.steps) n += is_structural(s.rule);
    return n;
}

}  // namespace

TEST_CASE("extraction of the corpus") {
    AtomicFlow left = flow_of(load("axiom_cut.sks"));
    CHECK(label_summary(left) == "aid:1 aiu:1");
    REQUIRE(left.edges.size() == 2);
    for (auto& [_, e] : left.edges) {
        CHECK(left.vertices.at(e.up) == Label::aid);
        CHECK(left.vertices.at(e.lo) == Label::aiu);
    }
    CHECK(label_summary(flow_of(load("cocontraction.sks"))) == "acu:3");

    Derivation bare{parse_formula("[a,b]"), {}};
    AtomicFlow f = flow_of(bare);
    CHECK(f.vertices.empty());
    CHECK(f.edges.size() == 2);
    CHECK(f.inputs == f.outputs);
}

TEST_CASE("linear steps add no vertices") {
    for (const char* name : {"axiom_cut.sks", "contraction_cuts.sks", "streamline_input.sks", "ss_example.sks"}) {
        Derivation d = load(name);
        Extraction x = extract_flow(d);
        CHECK(validate(x.flow).ok);
        CHECK(static_cast<int>(x.flow.vertices.size()) == structural_steps(d));
    }
}

TEST_CASE("redundant equations do not change the flow") {
    for (std::uint64_t s = 0; s < 40; ++s) {
        RandomFlowParams p;
        p.vertices = 5;
        Derivation d = random_derivation(s, p);
        Builder b(d.premiss);
        std::size_t mid = d.size() / 2;
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (i == mid && is_bin(b.current())) {
                b.comm("");
                b.comm("");
            }
            b.emit(d.steps[i].rule, d.steps[i].pos, subformula_at(d.steps[i].conclusion, d.steps[i].pos),
                   d.steps[i].eq);
        }
        Derivation e = b.finish();
        REQUIRE(check(e).ok);
        CHECK(isomorphic(flow_of(e), flow_of(d), true));
    }
}

TEST_CASE("sequentialize") {
    AtomicFlow aid;
    aid.add_vertex(Label::aid, 1);
    aid.add_edge(1, BOT, "a", 1);
    aid.add_edge(1, BOT, "-a", 2);
    Derivation d = sequentialize(aid);
    CHECK(check(d).ok);
    CHECK(rule_counts(d)[Rule::aid] == 1);
    CHECK(isomorphic(flow_of(d), aid));

    AtomicFlow two;
    two.add_edge(TOP, BOT, "a", 1);
    two.add_edge(TOP, BOT, "b", 2);
    Derivation e = sequentialize(two);
    CHECK(check(e).ok);
    CHECK(structural_steps(e) == 0);

    std::ifstream in(std::string(SKS_CORPUS_DIR) + "/flow_a.json");
    AtomicFlow a = flow_from_json(std::string(std::istreambuf_iterator<char>(in), {}));
    Derivation da = sequentialize(a);
    CHECK(check(da).ok);
    auto rc = rule_counts(da);
    CHECK(rc[Rule::acu] == 1);
    CHECK(rc[Rule::aiu] == 2);
    CHECK(structural_steps(da) == 3);
    CHECK(isomorphic(flow_of(da), a));

    AtomicFlow bad;
    bad.add_vertex(Label::acd, 1);
    CHECK_THROWS_AS(sequentialize(bad), DomainError);
}

TEST_CASE("round trip on random flows") {
    for (std::uint64_t s = 0; s < 80; ++s) {
        RandomFlowParams p;
        p.vertices = static_cast<int>(s % 9);
        AtomicFlow f = random_flow(s, p);
        REQUIRE(validate(f).ok);
        Derivation d = sequentialize(f);
        auto c = check(d);
        if (!c.ok) std::cerr << to_text(d) << c.to_string(d.size()) << "\n";
        REQUIRE(c.ok);
        CHECK(structural_steps(d) == static_cast<int>(f.vertices.size()));
        CHECK(isomorphic(flow_of(d), f));
    }
}

TEST_CASE("generators are deterministic and valid") {
    RandomFlowParams p;
    p.vertices = 8;
    CHECK(flow_to_json(random_flow(5, p)) == flow_to_json(random_flow(5, p)));
    CHECK(to_text(random_derivation(5, p)) == to_text(random_derivation(5, p)));
    for (std::uint64_t s = 0; s < 1000; ++s) {
        p.vertices = static_cast<int>(s % 13);
        REQUIRE(validate(random_flow(s, p)).ok);
    }
    RandomFlowParams none;
    none.vertices = 0;
    none.min_inputs = none.max_inputs = 2;
    AtomicFlow bare = random_flow(1, none);
    CHECK(bare.vertices.empty());
    for (std::uint64_t s = 0; s < 20; ++s) {
        Derivation pr = random_proof(s);
        CHECK(is_proof(pr));
        CHECK(rule_counts(pr)[Rule::aiu] >= 1);
        CHECK(check(pr).ok);
    }
}
