#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "sks/local_rules.hpp"
#include "sks/streamliner.hpp"

using namespace sks;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot read " + path);
    return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write " + path.string());
    out << text;
}

bool looks_like_json(const std::string& s) {
    auto i = s.find_first_not_of(" \t\r\n");
    return i != std::string::npos && s[i] == '{';
}

AtomicFlow read_flow(const std::string& text) {
    if (looks_like_json(text)) return flow_from_json(text);
    return flow_of(parse_derivation(text));
}

Derivation read_checked(const std::string& text) {
    Derivation d = parse_derivation(text);
    if (auto c = check(d); !c.ok) throw DomainError("input does not check: " + c.to_string(d.size()));
    return d;
}

std::string stats_text(const AtomicFlow& a) {
    std::ostringstream o;
    auto rep = validate(a);
    o << "valid: " << (rep.ok ? "yes" : "no (" + rep.condition + ")") << "\n";
    o << "vertices: " << a.vertices.size() << "\n";
    o << "edges: " << a.edges.size() << "\n";
    o << "labels: " << label_summary(a) << "\n";
    o << "inputs: " << a.inputs.size() << ", outputs: " << a.outputs.size() << "\n";
    if (!rep.ok) return o.str();
    auto cycles = ai_cycles(a);
    std::size_t simple = 0;
    for (auto& [e, _] : a.edges) simple += is_simple_edge(a, e);
    o << "components: " << components(a).size() << "\n";
    o << "ai-cycles: " << cycles.size() << "\n";
    o << "simple edges: " << simple << "\n";
    if (cycles.empty()) {
        o << "ai-connections: " << ai_connections(a).size() << "\n";
        o << "maximal ai-paths: " << maximal_ai_paths(a).size() << "\n";
    }
    o << "w-normal: " << (has_w_redex(a) ? "no" : "yes") << ", c-normal: " << (has_c_redex(a) ? "no" : "yes") << "\n";
    o << "streamlined: " << (is_streamlined(a) ? "yes" : "no") << ", super: " << (is_super_streamlined(a) ? "yes" : "no")
      << ", hyper: " << (is_hyper_streamlined(a) ? "yes" : "no") << "\n";
    return o.str();
}

struct NormalizeArgs {
    std::string strategy = "str", input = "-", trace;
    bool minimal_w = false, eager = false;
    int jobs = 1;
};

void dump_trace(const NormalizeArgs& a, const Trace& t) {
    if (a.trace.empty()) return;
    fs::create_directories(a.trace);
    spit(fs::path(a.trace) / "trace.json", trace_to_json(t));
}

AtomicFlow normalize_flow(const NormalizeArgs& a, AtomicFlow f) {
    GlobalOptions g;
    g.jobs = a.jobs;
    Trace all;
    auto add = [&](const Trace& t) { all.insert(all.end(), t.begin(), t.end()); };
    auto w = [&] {
        auto [r, t] = normalize_w(f);
        add(t);
        f = r;
    };
    auto c = [&] {
        auto [r, t] = normalize_c(f);
        add(t);
        f = r;
    };
    auto bc = [&] {
        auto [r, t] = make_cycles_fragile(f);
        add(t);
        f = reduce_bc(r, g);
    };
    auto ex = [&] {
        c();
        f = reduce_ex(f, g);
    };
    const std::string& s = a.strategy;
    if (s == "w") w();
    else if (s == "c") c();
    else if (s == "bc") bc();
    else if (s == "ex") ex();
    else {
        bc();
        ex();
        w();
        if (s == "hstr") c();
    }
    dump_trace(a, all);
    return f;
}

Derivation normalize_derivation(const NormalizeArgs& a, const Derivation& d) {
    PipelineOptions o;
    o.minimal_w = a.minimal_w;
    o.eager_weakening = a.eager;
    o.keep_stages = !a.trace.empty();
    o.global.jobs = a.jobs;
    const std::string& s = a.strategy;
    if (s == "w" || s == "c") {
        Trace t;
        Derivation r = s == "w" ? normalize_w_lifted(d, &t) : normalize_c_lifted(d, &t);
        dump_trace(a, t);
        return r;
    }
    if (s == "bc") return algorithm_bc(d, o.global);
    if (s == "ex") return algorithm_ex(d, o.global);
    auto [r, rep] = s == "str" ? streamline(d, o) : hyper_streamline(d, o);
    if (!a.trace.empty()) {
        fs::create_directories(a.trace);
        spit(fs::path(a.trace) / "report.txt", rep.to_text());
        for (std::size_t i = 0; i < rep.snapshots.size(); ++i) {
            std::string stem = (i < 9 ? "0" : "") + std::to_string(i + 1) + "-" + rep.stages[i].name;
            spit(fs::path(a.trace) / (stem + ".json"), flow_to_json(flow_of(rep.snapshots[i])));
        }
    }
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"atomic flows and streamlining for SKS derivations"};
    app.require_subcommand(1);

    std::string input = "-";
    auto* check_cmd = app.add_subcommand("check", "check a derivation");
    check_cmd->add_option("input", input, "derivation file or -");

    std::string dot_path;
    bool json = false;
    auto* flow_cmd = app.add_subcommand("flow", "extract the atomic flow of a derivation");
    flow_cmd->add_option("input", input, "derivation file or -");
    flow_cmd->add_flag("--json", json, "print the flow as JSON");
    flow_cmd->add_option("--dot", dot_path, "write Graphviz output (- for stdout)");

    auto* seq_cmd = app.add_subcommand("seq", "build a derivation with the given flow");
    seq_cmd->add_option("input", input, "flow JSON file or -");

    NormalizeArgs na;
    auto* norm_cmd = app.add_subcommand("normalize", "normalise a derivation (or a JSON flow)");
    norm_cmd->add_option("input", na.input, "derivation/flow file or -");
    norm_cmd->add_option("--strategy", na.strategy, "w | c | bc | ex | str | hstr")
        ->check(CLI::IsMember({"w", "c", "bc", "ex", "str", "hstr"}));
    norm_cmd->add_option("--trace", na.trace, "directory for traces and stage dumps");
    norm_cmd->add_flag("--minimal-w", na.minimal_w, "only the weakening steps needed to streamline");
    norm_cmd->add_flag("--eager-weakening", na.eager, "also normalise weakenings before each stage");
    norm_cmd->add_option("--jobs", na.jobs, "threads for the global reductions")->check(CLI::Range(1, 64));

    std::uint64_t seed = 0;
    int vertices = 8;
    std::string kind = "derivation";
    auto* gen_cmd = app.add_subcommand("gen", "seeded random flow, derivation or proof");
    gen_cmd->add_option("--seed", seed, "random seed");
    gen_cmd->add_option("--vertices", vertices, "vertex count")->check(CLI::Range(0, 10000));
    gen_cmd->add_option("--kind", kind, "flow | derivation | proof")
        ->check(CLI::IsMember({"flow", "derivation", "proof"}));

    auto* stats_cmd = app.add_subcommand("stats", "flow statistics of a derivation or JSON flow");
    stats_cmd->add_option("input", input, "file or -");

    int max_steps = 10;
    auto* div_cmd = app.add_subcommand("diverge-demo", "run c on the bouncing cyclic flow");
    div_cmd->add_option("--max-steps", max_steps, "step cap")->check(CLI::Range(0, 100000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? 0 : 2;
    }

    try {
        if (*check_cmd) {
            Derivation d = parse_derivation(slurp(input));
            CheckReport c = check(d);
            std::cout << c.to_string(d.size()) << "\n";
            return c.ok ? 0 : 1;
        }
        if (*flow_cmd) {
            AtomicFlow f = flow_of(read_checked(slurp(input)));
            if (!dot_path.empty()) {
                if (dot_path == "-") std::cout << to_dot(f);
                else spit(dot_path, to_dot(f));
            }
            if (json || dot_path.empty()) std::cout << flow_to_json(f) << "\n";
            return 0;
        }
        if (*seq_cmd) {
            std::cout << to_text(sequentialize(flow_from_json(slurp(input))));
            return 0;
        }
        if (*norm_cmd) {
            std::string text = slurp(na.input);
            if (looks_like_json(text)) {
                std::cout << flow_to_json(normalize_flow(na, flow_from_json(text))) << "\n";
            } else {
                std::cout << to_text(normalize_derivation(na, read_checked(text)));
            }
            return 0;
        }
        if (*gen_cmd) {
            RandomFlowParams p;
            p.vertices = vertices;
            if (kind == "flow") std::cout << flow_to_json(random_flow(seed, p)) << "\n";
            else if (kind == "derivation") std::cout << to_text(random_derivation(seed, p));
            else std::cout << to_text(random_proof(seed, vertices));
            return 0;
        }
        if (*stats_cmd) {
            std::cout << stats_text(read_flow(slurp(input)));
            return 0;
        }
        if (*div_cmd) {
            DivergeResult r = diverge_demo(max_steps);
            for (std::size_t i = 0; i < r.vertex_counts.size(); ++i)
                std::cout << "step " << i << ": " << r.vertex_counts[i] << " vertices\n";
            if (r.cap_hit) std::cout << "cap of " << max_steps << " steps reached, c-redexes remain\n";
            else std::cout << "normal form reached\n";
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
