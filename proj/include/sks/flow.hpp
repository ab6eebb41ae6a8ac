#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sks/formula.hpp"

namespace sks {

constexpr int TOP = -1;
constexpr int BOT = -2;

enum class Label : unsigned char { aid, aiu, awd, awu, acd, acu };

const char* label_name(Label l);
std::optional<Label> label_from_name(std::string_view s);
int lower_arity(Label l);  // |L|
int upper_arity(Label l);  // |U|

struct FlowEdge {
    int up = TOP;
    int lo = BOT;
    std::string atom;  // literal hint like "a" or "-a"; empty when unknown
};

struct AtomicFlow {
    std::map<int, Label> vertices;
    std::map<int, FlowEdge> edges;
    // edges leaving top / entering bottom, in boundary order
    std::vector<int> inputs, outputs;

    int next_vertex_id() const { return vertices.empty() ? 1 : vertices.rbegin()->first + 1; }
    int next_edge_id() const { return edges.empty() ? 1 : edges.rbegin()->first + 1; }

    int add_vertex(Label l, int id = 0);
    int add_edge(int up, int lo, const std::string& atom = "", int id = 0);
    void remove_edge(int e);
    void remove_vertex(int v);  // incident edges must be gone or rewired
    void set_up(int e, int v);
    void set_lo(int e, int v);
};

// lower/upper edge lists per vertex, sorted by edge id
struct Incidence {
    std::map<int, std::vector<int>> lower, upper;
    const std::vector<int>& L(int v) const;
    const std::vector<int>& U(int v) const;
};
Incidence incidence(const AtomicFlow& a);

struct ValidationReport {
    bool ok = true;
    std::string condition;  // incidence | ports | arity | acyclicity | polarity
    std::string witness;
};
ValidationReport validate(const AtomicFlow& a);

using Polarity = std::map<int, int>;  // edge -> +1 / -1

// edge sets of the connected components, ordered by least edge id
std::vector<std::vector<int>> components(const AtomicFlow& a);
std::optional<Polarity> first_polarity(const AtomicFlow& a);
std::vector<Polarity> polarity_assignments(const AtomicFlow& a, int max_components = 20);
// sign read from atom hints when every edge carries one
std::optional<Polarity> literal_polarity(const AtomicFlow& a);

struct AiState {
    int edge;
    bool down;
    bool operator<(const AiState& o) const { return edge != o.edge ? edge < o.edge : down < o.down; }
    bool operator==(const AiState& o) const { return edge == o.edge && down == o.down; }
};

struct AiPath {
    std::vector<int> edges;
    std::vector<bool> down;
    bool operator<(const AiPath& o) const { return edges != o.edges ? edges < o.edges : down < o.down; }
    bool operator==(const AiPath& o) const { return edges == o.edges && down == o.down; }
};

std::vector<AiState> ai_successors(const AtomicFlow& a, const Incidence& inc, AiState s);

std::vector<AiPath> ai_cycles(const AtomicFlow& a, std::size_t cap = 100000);
std::set<int> edges_on_cycles(const AtomicFlow& a, std::size_t cap = 100000);
// walks extendable at neither end, one per inverse pair
std::vector<AiPath> maximal_ai_paths(const AtomicFlow& a, std::size_t cap = 1000000);
std::vector<int> maximal_path_lengths(const AtomicFlow& a);  // sorted

// downward paths from an aid to an aiu
std::vector<std::vector<int>> ai_connections(const AtomicFlow& a);
bool all_ai_paths_clean(const AtomicFlow& a);

struct EdgeClass {
    bool simple = false;
    bool in_cycle = false;
    bool extremal = false;
};
EdgeClass classify_edge(const AtomicFlow& a, int e);
bool is_simple_edge(const AtomicFlow& a, int e);
bool is_extremal(const AtomicFlow& a, const Incidence& inc, int e);

// counts for walks from a state: number of maximal continuations and their total length
struct WalkStats {
    std::uint64_t count = 0, total = 0;
};
WalkStats walk_stats(const AtomicFlow& a, const Incidence& inc, AiState s, std::map<AiState, WalkStats>& memo);

bool has_w_redex(const AtomicFlow& a);
bool has_c_redex(const AtomicFlow& a);
bool is_streamlined(const AtomicFlow& a);
bool is_super_streamlined(const AtomicFlow& a);
bool is_hyper_streamlined(const AtomicFlow& a);

struct FlowIso {
    std::map<int, int> vertex, edge;
};
std::optional<FlowIso> isomorphic(const AtomicFlow& a, const AtomicFlow& b, bool respect_ports = false);

std::map<Label, int> label_counts(const AtomicFlow& a);
std::string label_summary(const AtomicFlow& a);  // like "aid:1 aiu:1"

struct DotOptions {
    bool polarity = false;
    std::string name = "flow";
};
std::string to_dot(const AtomicFlow& a, const DotOptions& opt = {});

std::string flow_to_json(const AtomicFlow& a);
AtomicFlow flow_from_json(const std::string& text);

}  // namespace sks
