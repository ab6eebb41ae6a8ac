#include "doctest.h"
#include "sks/streamliner.hpp"

using namespace sks;

TEST_CASE("Str and HStr on random derivations") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        RandomFlowParams p;
        p.vertices = 6;
        Derivation d = random_derivation(seed, p);
        auto [s, rep] = streamline(d);
        CHECK(check(s).ok);
        CHECK(equal(s.conclusion(), d.conclusion()));
        CHECK(is_super_streamlined(flow_of(s)));
        CHECK(rep.stages.size() == 3);
        CHECK(rep.stages[0].cycles == 0);
        CHECK(rep.stages[1].connections == 0);
        auto [h, rep2] = hyper_streamline(d);
        CHECK(is_hyper_streamlined(flow_of(h)));
        PipelineOptions o;
        o.minimal_w = true;
        o.eager_weakening = true;
        auto [m, rep3] = streamline(d, o);
        CHECK(is_streamlined(flow_of(m)));
        CHECK(rep3.stages.size() == 5);
    }
}

TEST_CASE("cut elimination on proofs") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Derivation pr = random_proof(seed);
        REQUIRE(rule_counts(pr)[Rule::aiu] > 0);
        Derivation c = eliminate_cuts(pr);
        auto rc = rule_counts(c);
        CHECK(rc[Rule::aiu] == 0);
        CHECK(rc[Rule::awu] == 0);
        CHECK(equal(c.conclusion(), pr.conclusion()));
        auto [h, rep] = hyper_streamline(pr);
        CHECK(is_ks(h));
    }
    Derivation bad = random_derivation(1);
    if (bad.premiss->kind != Kind::True) CHECK_THROWS_AS(eliminate_cuts(bad), DomainError);
}
