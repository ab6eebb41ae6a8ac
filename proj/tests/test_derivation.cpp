#include <fstream>
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

Derivation one_step(const char* premiss, Rule r, const Position& p, const char* conclusion) {
    Derivation d{parse_formula(premiss), {}};
    d.steps.push_back(Step{r, p, parse_formula(conclusion)});
    return d;
}

}  // namespace

TEST_CASE("formula parsing and printing") {
    for (const char* s : {"t", "f", "a", "-a", "[a,-b]", "([a,b],(c,[t,f]))"})
        CHECK(to_string(parse_formula(s)) == s);
    CHECK_THROWS_AS(parse_formula("[a"), ParseError);
    CHECK_THROWS_AS(parse_formula("(a,b"), ParseError);
    CHECK_THROWS_AS(parse_formula("a b"), ParseError);
    CHECK(to_string(dual(parse_formula("([a,-b],t)"))) == "[(-a,b),f]");
    Formula f = parse_formula("([a,b],c)");
    CHECK(to_string(subformula_at(f, "LR")) == "b");
    CHECK(to_string(replace_at(f, "R", mk_true())) == "([a,b],t)");
    CHECK(atom_offset(f, "R") == 2);
    CHECK(path_string("LR") == "L/R");
    CHECK(parse_path("/").empty());
}

TEST_CASE("equations") {
    CHECK(match_eq(parse_formula("[a,b]"), parse_formula("[b,a]")) == Eq::Comm);
    CHECK(match_eq(parse_formula("[a,f]"), parse_formula("a")) == Eq::UnitF);
    CHECK(match_eq(parse_formula("(a,t)"), parse_formula("a")) == Eq::UnitT);
    CHECK(match_eq(parse_formula("[[a,b],c]"), parse_formula("[a,[b,c]]")) == Eq::Assoc);
    CHECK(match_eq(parse_formula("[t,t]"), parse_formula("t")) == Eq::TT);
    CHECK(match_eq(parse_formula("(f,f)"), parse_formula("f")) == Eq::FF);
    CHECK(match_eq(parse_formula("[a,b]"), parse_formula("(a,b)")) == Eq::None);
}

TEST_CASE("check on single steps") {
    CHECK(check(one_step("t", Rule::aid, "", "[a,-a]")).ok);
    auto bad = check(one_step("t", Rule::aid, "", "[a,b]"));
    CHECK_FALSE(bad.ok);
    CHECK(bad.step == 0);
    CHECK(bad.reason.find("dual") != std::string::npos);
    CHECK(check(one_step("(a,[b,c])", Rule::s, "", "[(a,b),c]")).ok);
    CHECK_FALSE(check(one_step("(a,[b,c])", Rule::s, "", "[(a,c),b]")).ok);
    CHECK(check(one_step("[(a,b),(c,d)]", Rule::m, "", "([a,c],[b,d])")).ok);
    CHECK(check(one_step("[a,a]", Rule::acd, "", "a")).ok);
    CHECK_FALSE(check(one_step("[a,-a]", Rule::acd, "", "a")).ok);
    CHECK(check(one_step("(a,-a)", Rule::aiu, "", "f")).ok);
    CHECK(check(one_step("[f,b]", Rule::awd, "L", "[a,b]")).ok);
    CHECK_FALSE(check(one_step("[f,b]", Rule::awd, "L", "[a,c]")).ok);
}

TEST_CASE("corpus derivations check") {
    for (const char* f : {"axiom_cut.sks", "contraction_cuts.sks", "cocontraction.sks", "streamline_input.sks", "ss_example.sks"}) {
        Derivation d = load(f);
        CAPTURE(f);
        CHECK(check(d).ok);
        CHECK(to_text(parse_derivation(to_text(d))) == to_text(d));
    }
    Derivation left = load("axiom_cut.sks");
    CHECK(to_string(left.premiss) == "t");
    CHECK(to_string(left.conclusion()) == "t");
}

TEST_CASE("text format errors") {
    CHECK_THROWS_AS(parse_derivation("t\n-- aid\n[a,-a]\n"), ParseError);
    CHECK_THROWS_AS(parse_derivation("t\n-- bogus @ /\n[a,-a]\n"), ParseError);
    CHECK_THROWS_AS(parse_derivation(""), ParseError);
    Derivation d = parse_derivation("# comment\nt\n-- aid @ /\n[a,-a]\n");
    CHECK(d.size() == 1);
}

TEST_CASE("include_in_context and compose") {
    Derivation phi = one_step("t", Rule::aid, "", "[a,-a]");
    Derivation in = include_in_context(parse_formula("[t,b]"), "L", phi);
    CHECK(check(in).ok);
    CHECK(to_string(in.premiss) == "[t,b]");
    CHECK(to_string(in.conclusion()) == "[[a,-a],b]");
    CHECK(in.steps[0].pos == "L");
    CHECK(to_text(include_in_context(parse_formula("x"), "", phi)) == to_text(phi));
    // nesting composes hole paths
    Derivation twice = include_in_context(parse_formula("(t,c)"), "L", in);
    Derivation once = include_in_context(parse_formula("([t,b],c)"), "LL", phi);
    CHECK(to_text(twice) == to_text(once));

    Derivation empty{phi.conclusion(), {}};
    CHECK(to_text(compose(phi, empty)) == to_text(phi));
    Builder b(phi.conclusion());
    b.comm("");
    b.comm("");
    Derivation back = compose(phi, b.finish());
    CHECK(check(back).ok);
    CHECK(equal(back.conclusion(), phi.conclusion()));
    CHECK_THROWS_AS(compose(phi, Derivation{parse_formula("[b,-b]"), {}}), DomainError);
}

TEST_CASE("substitution candidates") {
    Derivation phi = one_step("t", Rule::aid, "", "[a,-a]");
    SubstTarget tg;
    tg.edges = {1};
    SubstResult r = substitute(phi, tg, mk_false());
    CHECK(to_string(r.candidate.conclusion()) == "[f,-a]");
    CHECK_FALSE(r.report.ok);
    CHECK(r.report.step == 0);

    SubstResult same = substitute(phi, tg, mk_atom("a"));
    CHECK(same.report.ok);
    CHECK(to_text(same.candidate) == to_text(phi));
}

TEST_CASE("super switch and generic contraction") {
    Derivation ss = load("ss_example.sks");
    CHECK(to_string(ss.premiss) == "(([t,b],c),[(d,a),e])");
    CHECK(to_string(ss.conclusion()) == "[([a,b],c),[(d,f),e]]");
    for (auto& [r, n] : rule_counts(ss))
        if (n) CHECK((r == Rule::s || r == Rule::eq));

    Derivation plain = build_super_switch(mk_true(), "", mk_true(), "", mk_atom("a"));
    CHECK(check(plain).ok);
    CHECK(to_string(plain.premiss) == "(t,a)");
    CHECK(to_string(plain.conclusion()) == "[a,f]");
    CHECK(rule_counts(plain)[Rule::s] == 1);
    Derivation unit = build_super_switch(mk_true(), "", mk_true(), "", mk_true());
    CHECK(check(unit).ok);
    CHECK(rule_counts(unit)[Rule::s] <= 1);

    Derivation down = build_generic_contraction(mk_atom("a"), Direction::Down);
    CHECK(down.size() == 1);
    CHECK(down.steps[0].rule == Rule::acd);
    Derivation up = build_generic_contraction(parse_formula("[a,b]"), Direction::Up);
    CHECK(check(up).ok);
    CHECK(to_string(up.conclusion()) == "([a,b],[a,b])");
    CHECK(label_summary(flow_of(up)) == "acu:2");
    Derivation tt = build_generic_contraction(mk_true(), Direction::Down);
    CHECK(check(tt).ok);
    CHECK(rule_counts(tt)[Rule::eq] == static_cast<int>(tt.size()));
    for (std::uint64_t s = 0; s < 30; ++s) {
        RandomFlowParams p;
        p.vertices = 4;
        Formula f = random_derivation(s, p).conclusion();
        Derivation d = build_generic_contraction(f, Direction::Down);
        Derivation u = build_generic_contraction(f, Direction::Up);
        REQUIRE(check(d).ok);
        REQUIRE(check(u).ok);
        auto rd = rule_counts(d), ru = rule_counts(u);
        CHECK(rd[Rule::aiu] + rd[Rule::awu] + rd[Rule::acu] == 0);
        CHECK(ru[Rule::aid] + ru[Rule::awd] + ru[Rule::acd] == 0);
    }
}

TEST_CASE("dual derivations check") {
    for (std::uint64_t s = 0; s < 60; ++s) {
        RandomFlowParams p;
        p.vertices = 6;
        Derivation d = random_derivation(s, p);
        Derivation e = dual_derivation(d);
        REQUIRE(check(e).ok);
        CHECK(equal(e.premiss, dual(d.conclusion())));
        CHECK(equal(e.conclusion(), dual(d.premiss)));
    }
}
