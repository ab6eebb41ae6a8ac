#include <iostream>

#include "doctest.h"
#include "sks/local_rules.hpp"

using namespace sks;

namespace {

Derivation sample(std::uint64_t seed, int v) {
    RandomFlowParams p;
    p.vertices = v;
    return random_derivation(seed, p);
}

}  // namespace

TEST_CASE("rule tables") {
    CHECK(all_rules().size() == 10);
    for (RuleId r : all_rules()) {
        CHECK(rule_id_from_name(rule_id_name(r)) == r);
        ReductionRule rr = reduction_rule(r);
        CHECK(validate(rr.lhs).ok);
        CHECK(validate(rr.rhs).ok);
        CHECK(rr.lhs.inputs.size() == rr.rhs.inputs.size());
        CHECK(rr.lhs.outputs.size() == rr.rhs.outputs.size());
    }
    CHECK(reduction_rule(RuleId::cd_cu).rhs.vertices.size() == 4);
    CHECK(reduction_rule(RuleId::wd_wu).rhs.vertices.empty());
}

TEST_CASE("apply_rule keeps flows valid and shrinks the w measure") {
    for (std::uint64_t s = 0; s < 200; ++s) {
        RandomFlowParams p;
        p.vertices = 7;
        AtomicFlow f = random_flow(s, p);
        for (RuleId r : all_rules()) {
            for (auto& m : find_matches(f, r)) {
                AtomicFlow g = apply_rule(f, m);
                auto rep = validate(g);
                if (!rep.ok) std::cerr << rule_id_name(r) << " " << flow_to_json(f);
                REQUIRE(rep.ok);
                CHECK(g.inputs.size() == f.inputs.size());
                CHECK(g.outputs.size() == f.outputs.size());
                if (std::find(w_rules().begin(), w_rules().end(), r) != w_rules().end())
                    CHECK(w_measure(g) < w_measure(f));
            }
        }
    }
}

TEST_CASE("normal forms") {
    for (std::uint64_t s = 0; s < 100; ++s) {
        RandomFlowParams p;
        p.vertices = 8;
        AtomicFlow f = random_flow(s, p);
        auto [w, tw] = normalize_w(f);
        CHECK_FALSE(has_w_redex(w));
        for (auto& t : tw) CHECK(t.after < t.before);
        if (ai_cycles(f).empty()) {
            auto [c, tc] = normalize_c(f);
            CHECK_FALSE(has_c_redex(c));
            for (auto& t : tc) CHECK(t.after[0] < t.before[0]);
        }
        auto [g, tg] = make_cycles_fragile(f);
        CHECK(all_cycles_fragile(g));
    }
}

TEST_CASE("lifting matches the flow rewrite") {
    int lifted = 0;
    for (std::uint64_t s = 0; s < 150; ++s) {
        Derivation d = sample(s, 6);
        AtomicFlow f = flow_of(d);
        for (RuleId r : all_rules()) {
            for (auto& m : find_matches(f, r)) {
                Derivation e = lift_local(d, m);
                auto c = check(e);
                if (!c.ok) std::cerr << rule_id_name(r) << "\n" << to_text(d) << "---\n" << to_text(e) << c.to_string(e.size()) << "\n";
                REQUIRE(c.ok);
                CHECK(equal(e.premiss, d.premiss));
                CHECK(equal(e.conclusion(), d.conclusion()));
                bool iso = isomorphic(flow_of(e), apply_rule(f, m)).has_value();
                if (!iso) std::cerr << rule_id_name(r) << "\n" << to_text(d) << flow_to_json(flow_of(e));
                REQUIRE(iso);
                ++lifted;
            }
        }
    }
    CHECK(lifted > 100);
}

TEST_CASE("lifted normalisers") {
    for (std::uint64_t s = 0; s < 40; ++s) {
        Derivation d = sample(s, 6);
        Derivation w = normalize_w_lifted(d);
        CHECK(check(w).ok);
        CHECK_FALSE(has_w_redex(flow_of(w)));
        if (ai_cycles(flow_of(d)).empty()) {
            Derivation c = normalize_c_lifted(d);
            CHECK(check(c).ok);
            CHECK_FALSE(has_c_redex(flow_of(c)));
        }
    }
}

TEST_CASE("bounce flow diverges under c") {
    AtomicFlow b = bounce_flow();
    CHECK(validate(b).ok);
    CHECK_FALSE(ai_cycles(b).empty());
    auto r = diverge_demo(20);
    CHECK(r.cap_hit);
    CHECK(r.vertex_counts.size() == 21);
    CHECK(r.vertex_counts.back() > r.vertex_counts.front());
    CHECK_THROWS_AS(normalize_c(b), DomainError);
}

TEST_CASE("batched lifting agrees with one-by-one flow rewriting") {
    int batches = 0;
    for (std::uint64_t s = 0; s < 150; ++s) {
        Derivation d = sample(s, 8);
        AtomicFlow f = flow_of(d);
        for (const auto* sys : {&w_rules(), &c_rules()}) {
            auto ms = disjoint_matches(f, *sys);
            if (ms.size() < 2) continue;
            ++batches;
            AtomicFlow g = f;
            for (auto& m : ms) g = apply_rule(g, m);
            Derivation e = lift_many(d, ms);
            REQUIRE(check(e).ok);
            CHECK(equal(e.conclusion(), d.conclusion()));
            CHECK(isomorphic(flow_of(e), g).has_value());
        }
    }
    CHECK(batches > 20);
}

TEST_CASE("tower blow-up keeps path counts") {
    for (int n = 1; n <= 5; ++n) {
        AtomicFlow t = tower_flow(n);
        REQUIRE(validate(t).ok);
        auto [c, tr] = normalize_c(t);
        CHECK_FALSE(has_c_redex(c));
        CHECK(maximal_ai_paths(c).size() == (std::size_t{1} << n));
        CHECK(maximal_path_lengths(c) == maximal_path_lengths(t));
    }
}
