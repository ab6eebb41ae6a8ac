#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sks/formula.hpp"

namespace sks {

enum class Rule : unsigned char { aid, aiu, awd, awu, acd, acu, s, m, eq };

const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view s);
bool is_structural(Rule r);
Rule dual_rule(Rule r);

struct Step {
    Rule rule;
    Position pos;
    Formula conclusion;
    Eq eq = Eq::None;  // which equation, for eq steps; None means "infer"
    std::string tag;   // macro provenance (ss, cd_generic, ...), informational only
};

struct Derivation {
    Formula premiss;
    std::vector<Step> steps;

    Formula conclusion() const { return steps.empty() ? premiss : steps.back().conclusion; }
    // k = 0 is the premiss
    const Formula& formula(std::size_t k) const { return k == 0 ? premiss : steps[k - 1].conclusion; }
    std::size_t size() const { return steps.size(); }
};

struct CheckReport {
    bool ok = true;
    int step = -1;
    std::string reason;
    std::string to_string(std::size_t nsteps) const;
};

// atom ranges of the redex; positions left of the redex keep their indices
struct StepShape {
    int lo = 0;      // first atom index of the redex (same in premiss and conclusion)
    int n_prem = 0;  // atoms in the premiss redex
    int n_conc = 0;  // atoms in the conclusion redex
    // linear steps: perm[i] = conclusion-local index of premiss-local atom i
    std::vector<int> perm;
    Eq eq = Eq::None;
};

// validates one step against its premiss; nullopt on success
std::optional<std::string> analyze_step(const Formula& premiss, const Step& st, StepShape* out = nullptr);

CheckReport check(const Derivation& d);

struct OccMap {
    // per premiss atom: conclusion atoms it continues into (empty if destroyed)
    std::vector<std::vector<int>> image;
    std::vector<int> created;  // conclusion atoms with no preimage
};
OccMap occ_map(const Formula& premiss, const Step& st);

bool is_ks(const Derivation& d);
bool is_proof(const Derivation& d);
bool is_cut_free(const Derivation& d);
std::map<Rule, int> rule_counts(const Derivation& d);

std::string to_text(const Derivation& d);
Derivation parse_derivation(std::string_view text);

// edge identities along a derivation. premiss atoms get ids first..first+n-1,
// fresh ids are handed out on creation, left to right
class EdgeTracker {
public:
    struct Event {
        Rule rule;
        std::vector<int> upper, lower;
    };

    explicit EdgeTracker(const Formula& premiss, int first_id = 1);
    const std::vector<int>& current() const { return cur_; }
    int next_id() const { return next_; }
    // applies a checked step; returns the vertex event for structural rules
    std::optional<Event> advance(const Formula& premiss, const Step& st);

private:
    std::vector<int> cur_;
    int next_;
};

// xi{Phi}
Derivation include_in_context(const Formula& ctx, const Position& hole, const Derivation& d);
Derivation compose(const Derivation& a, const Derivation& b);
// premiss dual(conclusion), conclusion dual(premiss)
Derivation dual_derivation(const Derivation& d);
// only for derivations made of eq steps
Derivation reverse_linear(const Derivation& d);

// rebuild a subformula with some atoms replaced; ids holds the edge of each atom of f
Formula substitute_atoms(const Formula& f, const int* ids, const std::map<int, Formula>& sigma);

enum class SubstMode { AtomToFormula, UnitToFormula };

struct SubstTarget {
    std::set<int> edges;  // AtomToFormula: edge ids as numbered by EdgeTracker(premiss, 1)
    std::size_t unit_formula = 0;  // UnitToFormula: a unit occurrence, followed forwards
    Position unit_pos;
};

struct SubstResult {
    Derivation candidate;
    CheckReport report;
};

SubstResult substitute(const Derivation& d, const SubstTarget& target, const Formula& replacement,
                       SubstMode mode = SubstMode::AtomToFormula);

// incremental construction; every call emits exactly the named steps
class Builder {
public:
    explicit Builder(Formula start);

    const Formula& current() const { return cur_; }
    Formula at(const Position& p) const { return subformula_at(cur_, p); }
    std::size_t size() const { return d_.steps.size(); }

    void emit(Rule r, const Position& p, const Formula& contractum, Eq eq = Eq::None);

    void comm(const Position& p);
    void assoc_lr(const Position& p);  // [[a,b],c] -> [a,[b,c]]
    void assoc_rl(const Position& p);  // [a,[b,c]] -> [[a,b],c]
    void unit_out(const Position& p);  // [a,f] -> a, (a,t) -> a, [t,t] -> t, (f,f) -> f
    void unit_in_f(const Position& p); // a -> [a,f]
    void unit_in_t(const Position& p); // a -> (a,t)
    void tt_in(const Position& p);     // t -> [t,t]
    void ff_in(const Position& p);     // f -> (f,f)
    void s(const Position& p);
    void m(const Position& p);
    void aid(const Position& p, const Atom& x);  // t -> [x,-x]
    void aiu(const Position& p);
    void awd(const Position& p, const Atom& x);
    void awu(const Position& p);
    void acd(const Position& p);
    void acu(const Position& p);

    // d.premiss must sit at prefix
    void append(const Derivation& d, const Position& prefix = "");
    void set_tag(const std::string& t) { tag_ = t; }

    Derivation finish() const { return d_; }

private:
    Derivation d_;
    Formula cur_;
    std::string tag_;
};

// (ctx{beta}, alpha) at p  =>  ctx{(beta, alpha)}
void bring_in(Builder& b, const Position& p, const Position& hole);
// ctx{Y} at p  =>  [ctx{f}, Y]
void move_out(Builder& b, const Position& p, const Position& hole);
// (xi{t}, zeta{alpha}) at p  =>  [xi{alpha}, zeta{f}]
void super_switch(Builder& b, const Position& p, const Position& xi_hole, const Position& zeta_hole);
// alpha -> (alpha, alpha) / [alpha, alpha] -> alpha at p
void cocontract_generic(Builder& b, const Position& p);
void contract_generic(Builder& b, const Position& p);
// [[a,b],t] => [(a,b),t] at p
void psi_block(Builder& b, const Position& p);
// unit-only formula at p to its truth value
void unit_normalize(Builder& b, const Position& p);

enum class Direction { Down, Up };

Derivation build_super_switch(const Formula& xi, const Position& xi_hole, const Formula& zeta,
                              const Position& zeta_hole, const Formula& alpha);
Derivation build_generic_contraction(const Formula& alpha, Direction dir);

}  // namespace sks
