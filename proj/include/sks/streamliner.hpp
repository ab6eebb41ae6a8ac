#pragma once

#include <string>
#include <vector>

#include "sks/global_reductions.hpp"

namespace sks {

struct StageStats {
    std::string name;
    std::map<Label, int> labels;
    std::size_t vertices = 0, cycles = 0, simple_edges = 0, connections = 0;
    std::size_t steps = 0;  // derivation length after the stage
    double millis = 0;
};

struct PipelineReport {
    std::vector<StageStats> stages;
    std::vector<Derivation> snapshots;  // filled when keep_stages is set
    std::string target;                 // predicate checked on the final flow
    double millis = 0;
    std::string to_text() const;
};

struct PipelineOptions {
    bool minimal_w = false;     // stop weakening reductions once the flow is streamlined
    bool eager_weakening = false;
    bool keep_stages = false;
    GlobalOptions global;
};

std::pair<Derivation, PipelineReport> streamline(const Derivation& d, const PipelineOptions& o = {});
std::pair<Derivation, PipelineReport> hyper_streamline(const Derivation& d, const PipelineOptions& o = {});
Derivation eliminate_cuts(const Derivation& proof, const PipelineOptions& o = {});

StageStats stage_stats(const std::string& name, const Derivation& d);

}  // namespace sks
