#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sks/bridge.hpp"
#include "sks/derivation.hpp"
#include "sks/flow.hpp"

namespace sks {

enum class RuleId : unsigned char { wd_cd, cu_wu, wd_iu, id_wu, wd_wu, wd_cu, cd_wu, cd_iu, id_cu, cd_cu };

const char* rule_id_name(RuleId r);
std::optional<RuleId> rule_id_from_name(std::string_view s);
const std::vector<RuleId>& w_rules();
const std::vector<RuleId>& c_rules();
const std::vector<RuleId>& all_rules();
// labels of the upper and lower vertex of the redex
std::pair<Label, Label> rule_pattern(RuleId r);

// the two vertices of a redex and the internal edge joining them
struct FlowMatch {
    RuleId rule;
    int upper = 0, lower = 0, edge = 0;
};

struct ReductionRule {
    RuleId name;
    AtomicFlow lhs, rhs;
    // boundary edges keep their ids across a rewrite, so these are identities
    std::map<int, int> upper_corr, lower_corr;
};
ReductionRule reduction_rule(RuleId r);

std::vector<FlowMatch> find_matches(const AtomicFlow& a, RuleId r);
// lowest upper-vertex id first, then rule order, then edge id
std::optional<FlowMatch> first_match(const AtomicFlow& a, const std::vector<RuleId>& system);
AtomicFlow apply_rule(const AtomicFlow& a, const FlowMatch& m);

struct TraceRecord {
    std::string rule;
    std::vector<int> site;
    std::vector<std::int64_t> before, after;
};
using Trace = std::vector<TraceRecord>;
std::string trace_to_json(const Trace& t);

std::vector<std::int64_t> w_measure(const AtomicFlow& a);
std::int64_t c_rank(const AtomicFlow& a);

std::pair<AtomicFlow, Trace> normalize_w(AtomicFlow a, std::size_t cap = 1000000);
std::pair<AtomicFlow, Trace> normalize_c(AtomicFlow a, std::size_t cap = 1000000);
std::pair<AtomicFlow, Trace> make_cycles_fragile(AtomicFlow a);
// next c-step the fragility procedure would take, if any
std::optional<FlowMatch> fragile_step(const AtomicFlow& a);
bool all_cycles_fragile(const AtomicFlow& a);

// derivation-level versions; matches refer to flow_of(d)
Derivation lift_local(const Derivation& d, const FlowMatch& m);
// several vertex-disjoint redexes in a single replay
Derivation lift_many(const Derivation& d, const std::vector<FlowMatch>& ms);
// greedy vertex-disjoint selection, lowest upper vertex first
std::vector<FlowMatch> disjoint_matches(const AtomicFlow& a, const std::vector<RuleId>& system);
Derivation normalize_w_lifted(Derivation d, Trace* trace = nullptr, std::size_t cap = 100000);
Derivation normalize_c_lifted(Derivation d, Trace* trace = nullptr, std::size_t cap = 100000);
Derivation make_cycles_fragile_lifted(Derivation d, Trace* trace = nullptr);

// the cyclic aid/acd/aiu flow on which c never stops
AtomicFlow bounce_flow();
// n stacked acu/acd pairs on a single input
AtomicFlow tower_flow(int n);

struct DivergeResult {
    std::vector<int> vertex_counts;  // after each step, starting with the input
    bool cap_hit = false;
};
DivergeResult diverge_demo(int max_steps);

}  // namespace sks
