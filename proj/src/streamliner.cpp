#include "sks/streamliner.hpp"

#include <chrono>
#include <sstream>

#include "sks/local_rules.hpp"

namespace sks {

StageStats stage_stats(const std::string& name, const Derivation& d) {
    AtomicFlow f = flow_of(d);
    StageStats s;
    s.name = name;
    s.labels = label_counts(f);
    s.vertices = f.vertices.size();
    s.cycles = ai_cycles(f).size();
    for (auto& [e, _] : f.edges)
        if (is_simple_edge(f, e)) ++s.simple_edges;
    if (s.cycles == 0) s.connections = ai_connections(f).size();
    s.steps = d.size();
    return s;
}

std::string PipelineReport::to_text() const {
    std::ostringstream o;
    o << "target: " << target << "\n";
    for (auto& s : stages) {
        o << "stage " << s.name << ": steps " << s.steps << ", vertices " << s.vertices;
        for (auto& [l, n] : s.labels)
            if (n) o << " " << label_name(l) << ":" << n;
        o << ", cycles " << s.cycles << ", simple edges " << s.simple_edges << ", ai-connections " << s.connections
          << ", " << s.millis << " ms\n";
    }
    o << "total: " << millis << " ms\n";
    return o.str();
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

struct Runner {
    const PipelineOptions& opt;
    PipelineReport rep;
    Derivation cur;

    template <class F>
    void stage(const std::string& name, F f) {
        auto t = Clock::now();
        cur = f(cur);
        StageStats s = stage_stats(name, cur);
        s.millis = ms_since(t);
        rep.stages.push_back(std::move(s));
        if (opt.keep_stages) rep.snapshots.push_back(cur);
    }
};

Derivation weaken_minimal(Derivation d) {
    for (;;) {
        AtomicFlow f = flow_of(d);
        if (is_streamlined(f)) return d;
        auto m = first_match(f, w_rules());
        if (!m) throw DomainError("internal: not streamlined but w-normal");
        d = lift_local(d, *m);
    }
}

void run_str(Runner& r) {
    const PipelineOptions& o = r.opt;
    auto w = [](const Derivation& d) { return normalize_w_lifted(d); };
    if (o.eager_weakening) r.stage("w0", w);
    r.stage("bc", [&](const Derivation& d) { return algorithm_bc(d, o.global); });
    if (o.eager_weakening) r.stage("w1", w);
    r.stage("ex", [&](const Derivation& d) { return algorithm_ex(d, o.global); });
    if (o.minimal_w) r.stage("w", weaken_minimal);
    else r.stage("w", w);
}

void finish(Runner& r, const Derivation& in, bool (*pred)(const AtomicFlow&), const char* target,
            Clock::time_point t0) {
    r.rep.target = target;
    r.rep.millis = ms_since(t0);
    if (auto c = check(r.cur); !c.ok) throw DomainError("internal: pipeline output does not check: " + c.reason);
    if (!equal(r.cur.premiss, in.premiss) || !equal(r.cur.conclusion(), in.conclusion()))
        throw DomainError("internal: pipeline changed premiss or conclusion");
    if (!pred(flow_of(r.cur))) throw DomainError(std::string("internal: output flow is not ") + target);
}

void require_checked(const Derivation& d) {
    if (auto c = check(d); !c.ok) throw DomainError("input derivation does not check: " + c.to_string(d.size()));
}

}  // namespace

std::pair<Derivation, PipelineReport> streamline(const Derivation& d, const PipelineOptions& o) {
    require_checked(d);
    auto t0 = Clock::now();
    Runner r{o, {}, d};
    run_str(r);
    if (o.minimal_w) finish(r, d, is_streamlined, "streamlined", t0);
    else finish(r, d, is_super_streamlined, "super-streamlined", t0);
    return {r.cur, r.rep};
}

std::pair<Derivation, PipelineReport> hyper_streamline(const Derivation& d, const PipelineOptions& o) {
    require_checked(d);
    auto t0 = Clock::now();
    PipelineOptions full = o;
    full.minimal_w = false;
    Runner r{full, {}, d};
    run_str(r);
    r.stage("c", [](const Derivation& x) { return normalize_c_lifted(x); });
    finish(r, d, is_hyper_streamlined, "hyper-streamlined", t0);
    return {r.cur, r.rep};
}

Derivation eliminate_cuts(const Derivation& proof, const PipelineOptions& o) {
    if (proof.premiss->kind != Kind::True) throw DomainError("eliminate_cuts: premiss is not t");
    auto [out, rep] = streamline(proof, o);
    auto rc = rule_counts(out);
    if (rc[Rule::aiu] || rc[Rule::awu]) throw DomainError("internal: streamlined proof still has cuts or coweakenings");
    return out;
}

}  // namespace sks
