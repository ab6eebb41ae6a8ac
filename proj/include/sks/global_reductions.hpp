#pragma once

#include <optional>

#include "sks/bridge.hpp"
#include "sks/derivation.hpp"
#include "sks/flow.hpp"

namespace sks {

struct SeSite {
    int edge = 0;        // the simple edge
    int aid = 0, aiu = 0;
    int partner_down = 0;  // other lower edge of the aid
    int partner_up = 0;    // other upper edge of the aiu
};

// throws DomainError unless e is a simple edge
SeSite se_site(const AtomicFlow& a, int e);

// B' keeps the awd-capped copy (inputs as A, outputs as A then the freed edge),
// B'' the awu-capped one (inputs as A then the freed edge, outputs as A)
struct SeSplit {
    AtomicFlow weak_down, weak_up;
    std::size_t h = 0, k = 0;  // boundary sizes of the original flow
};
SeSplit split_flow(const AtomicFlow& a, const SeSite& s);
// joins D' and D'' through contractions on the shared boundary
AtomicFlow stitch_flows(const AtomicFlow& d1, const AtomicFlow& d2, std::size_t h, std::size_t k);

AtomicFlow reduce_se_flow(const AtomicFlow& a, const SeSite& s);

// same split on derivations; premisses (P,t) / (P,-x), conclusions [Q,-x] / [Q,f]
struct DerivationSplit {
    Derivation weak_down, weak_up;
};
DerivationSplit split_derivation(const Derivation& d, const SeSite& s);
Derivation glue(const Formula& premiss, const Derivation& d1, const Derivation& d2);

Derivation reduce_se_derivation(const Derivation& d, const SeSite& s);

// qualifying edges, lowest id first; nullopt at the base case
std::optional<int> bc_edge(const AtomicFlow& a);
std::optional<int> ex_edge(const AtomicFlow& a);

struct GlobalOptions {
    int jobs = 1;
    std::size_t max_vertices = 2000000;
};

AtomicFlow reduce_bc(const AtomicFlow& a, const GlobalOptions& o = {});
AtomicFlow reduce_ex(const AtomicFlow& a, const GlobalOptions& o = {});
Derivation reduce_bc_derivation(const Derivation& d, const GlobalOptions& o = {});
Derivation reduce_ex_derivation(const Derivation& d, const GlobalOptions& o = {});

Derivation algorithm_bc(const Derivation& d, const GlobalOptions& o = {});
Derivation algorithm_ex(const Derivation& d, const GlobalOptions& o = {});

}  // namespace sks
