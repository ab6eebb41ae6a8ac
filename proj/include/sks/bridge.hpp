#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "sks/derivation.hpp"
#include "sks/flow.hpp"

namespace sks {

struct ExtractionMap {
    // edge id of every atom occurrence, per formula (index 0 = premiss)
    std::vector<std::vector<int>> occ_edges;
    std::map<int, std::size_t> vertex_step;  // vertex id -> step index
    std::map<std::size_t, int> step_vertex;
};

struct Extraction {
    AtomicFlow flow;
    ExtractionMap map;
};

// vertices are numbered in step order, premiss edges first then by creation
Extraction extract_flow(const Derivation& d, bool keep_occurrences = true);
AtomicFlow flow_of(const Derivation& d);

Derivation sequentialize(const AtomicFlow& a);

struct RandomFlowParams {
    int vertices = 8;
    int min_inputs = 0;
    int max_inputs = 3;
    std::array<int, 6> weights{1, 1, 1, 1, 1, 1};  // aid aiu awd awu acd acu
};

AtomicFlow random_flow(std::uint64_t seed, const RandomFlowParams& p = {});
Derivation random_derivation(std::uint64_t seed, const RandomFlowParams& p = {});
// premiss t and at least one cut
Derivation random_proof(std::uint64_t seed, int vertices = 6);

}  // namespace sks
