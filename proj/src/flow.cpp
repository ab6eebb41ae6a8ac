#include "sks/flow.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace sks {

const char* label_name(Label l) {
    switch (l) {
    case Label::aid: return "aid";
    case Label::aiu: return "aiu";
    case Label::awd: return "awd";
    case Label::awu: return "awu";
    case Label::acd: return "acd";
    case Label::acu: return "acu";
    }
    return "?";
}

std::optional<Label> label_from_name(std::string_view s) {
    for (Label l : {Label::aid, Label::aiu, Label::awd, Label::awu, Label::acd, Label::acu})
        if (s == label_name(l)) return l;
    return std::nullopt;
}

int lower_arity(Label l) {
    switch (l) {
    case Label::aid: return 2;
    case Label::awd: return 1;
    case Label::acd: return 1;
    case Label::acu: return 2;
    default: return 0;
    }
}

int upper_arity(Label l) {
    switch (l) {
    case Label::aiu: return 2;
    case Label::awu: return 1;
    case Label::acd: return 2;
    case Label::acu: return 1;
    default: return 0;
    }
}

int AtomicFlow::add_vertex(Label l, int id) {
    if (id == 0) id = next_vertex_id();
    vertices[id] = l;
    return id;
}

int AtomicFlow::add_edge(int up, int lo, const std::string& atom, int id) {
    if (id == 0) id = next_edge_id();
    edges[id] = FlowEdge{up, lo, atom};
    if (up == TOP) inputs.push_back(id);
    if (lo == BOT) outputs.push_back(id);
    return id;
}

void AtomicFlow::remove_edge(int e) {
    auto it = edges.find(e);
    if (it == edges.end()) return;
    if (it->second.up == TOP) inputs.erase(std::find(inputs.begin(), inputs.end(), e));
    if (it->second.lo == BOT) outputs.erase(std::find(outputs.begin(), outputs.end(), e));
    edges.erase(it);
}

void AtomicFlow::remove_vertex(int v) { vertices.erase(v); }

void AtomicFlow::set_up(int e, int v) {
    FlowEdge& x = edges.at(e);
    if (x.up == v) return;
    if (x.up == TOP) inputs.erase(std::find(inputs.begin(), inputs.end(), e));
    x.up = v;
    if (v == TOP) inputs.push_back(e);
}

void AtomicFlow::set_lo(int e, int v) {
    FlowEdge& x = edges.at(e);
    if (x.lo == v) return;
    if (x.lo == BOT) outputs.erase(std::find(outputs.begin(), outputs.end(), e));
    x.lo = v;
    if (v == BOT) outputs.push_back(e);
}

const std::vector<int>& Incidence::L(int v) const {
    static const std::vector<int> none;
    auto it = lower.find(v);
    return it == lower.end() ? none : it->second;
}

const std::vector<int>& Incidence::U(int v) const {
    static const std::vector<int> none;
    auto it = upper.find(v);
    return it == upper.end() ? none : it->second;
}

Incidence incidence(const AtomicFlow& a) {
    Incidence inc;
    for (auto& [id, e] : a.edges) {
        if (e.up != TOP) inc.lower[e.up].push_back(id);
        if (e.lo != BOT) inc.upper[e.lo].push_back(id);
    }
    return inc;
}

namespace {

std::string vname(int v) {
    if (v == TOP) return "top";
    if (v == BOT) return "bot";
    return "v" + std::to_string(v);
}

std::string ename(int e) { return "e" + std::to_string(e); }

// parity union-find over edges
struct Dsu {
    std::map<int, int> parent, parity;
    int find(int x, int& par) {
        par = 0;
        int r = x;
        while (parent.at(r) != r) {
            par ^= parity.at(r);
            r = parent.at(r);
        }
        return r;
    }
    // returns false on a parity conflict
    bool unite(int a, int b, int differ) {
        int pa, pb;
        int ra = find(a, pa), rb = find(b, pb);
        if (ra == rb) return (pa ^ pb) == differ;
        if (ra > rb) std::swap(ra, rb);
        parent[rb] = ra;
        parity[rb] = pa ^ pb ^ differ;
        return true;
    }
};

struct PolarityData {
    bool ok = true;
    std::string witness;
    Dsu dsu;
};

PolarityData solve_polarity(const AtomicFlow& a, const Incidence& inc) {
    PolarityData pd;
    for (auto& [id, e] : a.edges) {
        pd.dsu.parent[id] = id;
        pd.dsu.parity[id] = 0;
    }
    for (auto& [v, l] : a.vertices) {
        std::vector<int> all = inc.L(v);
        all.insert(all.end(), inc.U(v).begin(), inc.U(v).end());
        if (all.size() < 2) continue;
        int differ = (l == Label::aid || l == Label::aiu) ? 1 : 0;
        for (std::size_t i = 1; i < all.size(); ++i) {
            if (!pd.dsu.unite(all[0], all[i], differ)) {
                pd.ok = false;
                pd.witness = vname(v);
                return pd;
            }
        }
    }
    return pd;
}

}  // namespace

ValidationReport validate(const AtomicFlow& a) {
    ValidationReport rep;
    auto fail = [&](const std::string& c, const std::string& w) {
        rep.ok = false;
        rep.condition = c;
        rep.witness = w;
        return rep;
    };
    for (auto& [id, e] : a.edges) {
        if (e.up == BOT || (e.up != TOP && !a.vertices.count(e.up))) return fail("incidence", ename(id));
        if (e.lo == TOP || (e.lo != BOT && !a.vertices.count(e.lo))) return fail("incidence", ename(id));
    }
    {
        std::vector<int> in, out;
        for (auto& [id, e] : a.edges) {
            if (e.up == TOP) in.push_back(id);
            if (e.lo == BOT) out.push_back(id);
        }
        auto si = a.inputs, so = a.outputs;
        std::sort(si.begin(), si.end());
        std::sort(so.begin(), so.end());
        if (si != in) return fail("ports", "inputs");
        if (so != out) return fail("ports", "outputs");
    }
    Incidence inc = incidence(a);
    for (auto& [v, l] : a.vertices) {
        if (static_cast<int>(inc.L(v).size()) != lower_arity(l) || static_cast<int>(inc.U(v).size()) != upper_arity(l))
            return fail("arity", vname(v));
    }
    // Kahn on vertices
    std::map<int, int> indeg;
    for (auto& [v, l] : a.vertices) {
        int d = 0;
        for (int e : inc.U(v))
            if (a.edges.at(e).up != TOP) ++d;
        indeg[v] = d;
    }
    std::vector<int> stack;
    for (auto& [v, d] : indeg)
        if (d == 0) stack.push_back(v);
    std::size_t seen = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++seen;
        for (int e : inc.L(v)) {
            int w = a.edges.at(e).lo;
            if (w != BOT && --indeg[w] == 0) stack.push_back(w);
        }
    }
    if (seen != a.vertices.size()) {
        for (auto& [v, d] : indeg)
            if (d > 0) return fail("acyclicity", vname(v));
    }
    PolarityData pd = solve_polarity(a, inc);
    if (!pd.ok) return fail("polarity", pd.witness);
    return rep;
}

std::vector<std::vector<int>> components(const AtomicFlow& a) {
    Incidence inc = incidence(a);
    Dsu d;
    for (auto& [id, e] : a.edges) {
        d.parent[id] = id;
        d.parity[id] = 0;
    }
    for (auto& [v, l] : a.vertices) {
        std::vector<int> all = inc.L(v);
        all.insert(all.end(), inc.U(v).begin(), inc.U(v).end());
        for (std::size_t i = 1; i < all.size(); ++i) d.unite(all[0], all[i], 0);
    }
    std::map<int, std::vector<int>> by_root;
    for (auto& [id, e] : a.edges) {
        int p;
        by_root[d.find(id, p)].push_back(id);
    }
    std::vector<std::vector<int>> out;
    for (auto& [r, es] : by_root) out.push_back(es);
    return out;
}

std::optional<Polarity> first_polarity(const AtomicFlow& a) {
    Incidence inc = incidence(a);
    PolarityData pd = solve_polarity(a, inc);
    if (!pd.ok) return std::nullopt;
    Polarity pol;
    for (auto& [id, e] : a.edges) {
        int p;
        pd.dsu.find(id, p);
        pol[id] = p ? -1 : 1;
    }
    return pol;
}

std::vector<Polarity> polarity_assignments(const AtomicFlow& a, int max_components) {
    auto base = first_polarity(a);
    if (!base) throw DomainError("flow has no polarity assignment");
    auto comps = components(a);
    if (static_cast<int>(comps.size()) > max_components)
        throw ResourceError("too many components to enumerate: " + std::to_string(comps.size()));
    std::vector<Polarity> out;
    std::uint64_t n = std::uint64_t{1} << comps.size();
    for (std::uint64_t mask = 0; mask < n; ++mask) {
        Polarity p = *base;
        for (std::size_t c = 0; c < comps.size(); ++c)
            if (mask >> c & 1)
                for (int e : comps[c]) p[e] = -p[e];
        out.push_back(std::move(p));
    }
    return out;
}

std::optional<Polarity> literal_polarity(const AtomicFlow& a) {
    Polarity p;
    for (auto& [id, e] : a.edges) {
        if (e.atom.empty()) return std::nullopt;
        p[id] = e.atom[0] == '-' ? -1 : 1;
    }
    Incidence inc = incidence(a);
    for (auto& [v, l] : a.vertices) {
        std::vector<int> all = inc.L(v);
        all.insert(all.end(), inc.U(v).begin(), inc.U(v).end());
        if (all.size() < 2) continue;
        bool differ = l == Label::aid || l == Label::aiu;
        for (std::size_t i = 1; i < all.size(); ++i)
            if ((p[all[0]] != p[all[i]]) != differ) return std::nullopt;
    }
    return p;
}

std::vector<AiState> ai_successors(const AtomicFlow& a, const Incidence& inc, AiState s) {
    std::vector<AiState> out;
    const FlowEdge& e = a.edges.at(s.edge);
    if (s.down) {
        int v = e.lo;
        if (v == BOT) return out;
        for (int x : inc.L(v)) out.push_back({x, true});
        if (a.vertices.at(v) == Label::aiu)
            for (int x : inc.U(v))
                if (x != s.edge) out.push_back({x, false});
    } else {
        int v = e.up;
        if (v == TOP) return out;
        for (int x : inc.U(v)) out.push_back({x, false});
        if (a.vertices.at(v) == Label::aid)
            for (int x : inc.L(v))
                if (x != s.edge) out.push_back({x, true});
    }
    return out;
}

namespace {

AiState rev(AiState s) { return {s.edge, !s.down}; }

AiPath reversed(const AiPath& p) {
    AiPath r;
    for (std::size_t i = p.edges.size(); i-- > 0;) {
        r.edges.push_back(p.edges[i]);
        r.down.push_back(!p.down[i]);
    }
    return r;
}

}  // namespace

std::vector<AiPath> ai_cycles(const AtomicFlow& a, std::size_t cap) {
    Incidence inc = incidence(a);
    std::set<AiPath> found;
    std::set<int> used;
    AiPath cur;
    std::function<void(AiState, AiState)> dfs = [&](AiState start, AiState s) {
        for (AiState n : ai_successors(a, inc, s)) {
            if (n == start) {
                // rotate the reverse so it also starts at the minimum edge
                AiPath r = reversed(cur);
                std::rotate(r.edges.begin(), r.edges.end() - 1, r.edges.end());
                std::rotate(r.down.begin(), r.down.end() - 1, r.down.end());
                found.insert(std::min(cur, r));
                if (found.size() > cap) throw ResourceError("ai-cycle cap exceeded");
                continue;
            }
            if (n.edge <= start.edge || used.count(n.edge)) continue;
            used.insert(n.edge);
            cur.edges.push_back(n.edge);
            cur.down.push_back(n.down);
            dfs(start, n);
            cur.edges.pop_back();
            cur.down.pop_back();
            used.erase(n.edge);
        }
    };
    for (auto& [id, e] : a.edges) {
        for (bool d : {true, false}) {
            AiState st{id, d};
            cur.edges = {id};
            cur.down = {d};
            used = {id};
            dfs(st, st);
        }
    }
    return {found.begin(), found.end()};
}

std::set<int> edges_on_cycles(const AtomicFlow& a, std::size_t cap) {
    std::set<int> s;
    for (auto& c : ai_cycles(a, cap)) s.insert(c.edges.begin(), c.edges.end());
    return s;
}

std::vector<AiPath> maximal_ai_paths(const AtomicFlow& a, std::size_t cap) {
    Incidence inc = incidence(a);
    std::set<AiPath> found;
    std::set<int> used;
    AiPath cur;
    std::function<void(AiState)> dfs = [&](AiState s) {
        bool extended = false;
        for (AiState n : ai_successors(a, inc, s)) {
            if (used.count(n.edge)) continue;
            extended = true;
            used.insert(n.edge);
            cur.edges.push_back(n.edge);
            cur.down.push_back(n.down);
            dfs(n);
            cur.edges.pop_back();
            cur.down.pop_back();
            used.erase(n.edge);
        }
        if (!extended) {
            found.insert(std::min(cur, reversed(cur)));
            if (found.size() > cap) throw ResourceError("maximal ai-path cap exceeded");
        }
    };
    for (auto& [id, e] : a.edges) {
        for (bool d : {true, false}) {
            AiState st{id, d};
            if (!ai_successors(a, inc, rev(st)).empty()) continue;
            cur.edges = {id};
            cur.down = {d};
            used = {id};
            dfs(st);
        }
    }
    return {found.begin(), found.end()};
}

std::vector<int> maximal_path_lengths(const AtomicFlow& a) {
    std::vector<int> out;
    for (auto& p : maximal_ai_paths(a)) out.push_back(static_cast<int>(p.edges.size()));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> ai_connections(const AtomicFlow& a) {
    Incidence inc = incidence(a);
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> go = [&](int e) {
        cur.push_back(e);
        int v = a.edges.at(e).lo;
        if (v != BOT) {
            Label l = a.vertices.at(v);
            if (l == Label::aiu) out.push_back(cur);
            else
                for (int x : inc.L(v)) go(x);
        }
        cur.pop_back();
    };
    for (auto& [v, l] : a.vertices)
        if (l == Label::aid)
            for (int e : inc.L(v)) go(e);
    return out;
}

bool all_ai_paths_clean(const AtomicFlow& a) {
    Incidence inc = incidence(a);
    std::map<int, bool> memo;
    std::function<bool(int)> reaches = [&](int v) -> bool {
        if (v == BOT) return false;
        auto it = memo.find(v);
        if (it != memo.end()) return it->second;
        bool r = a.vertices.at(v) == Label::aiu;
        if (!r)
            for (int x : inc.L(v))
                if (reaches(a.edges.at(x).lo)) r = true;
        memo[v] = r;
        return r;
    };
    for (auto& [v, l] : a.vertices) {
        if (l != Label::aid) continue;
        for (int e : inc.L(v)) {
            int w = a.edges.at(e).lo;
            if (w == BOT || a.vertices.at(w) == Label::aiu) continue;
            if (reaches(w)) return false;
        }
    }
    return true;
}

bool is_simple_edge(const AtomicFlow& a, int e) {
    const FlowEdge& x = a.edges.at(e);
    return x.up != TOP && x.lo != BOT && a.vertices.at(x.up) == Label::aid && a.vertices.at(x.lo) == Label::aiu;
}

namespace {

int other(const std::vector<int>& v, int e) {
    for (int x : v)
        if (x != e) return x;
    return e;
}

struct ExtremalSearch {
    const AtomicFlow& a;
    const Incidence& inc;
    std::map<std::pair<int, bool>, bool> mono;
    std::map<std::tuple<int, bool, bool, bool>, bool> clean;

    // from edge e in direction down, can we reach a dead end without turning
    bool monotone_dead_end(int e, bool down) {
        auto key = std::make_pair(e, down);
        if (auto it = mono.find(key); it != mono.end()) return it->second;
        bool r = false;
        const FlowEdge& x = a.edges.at(e);
        int v = down ? x.lo : x.up;
        if (v == BOT || v == TOP) r = true;
        else {
            Label l = a.vertices.at(v);
            if (down) {
                if (l == Label::awu) r = true;
                else if (l == Label::acd || l == Label::acu)
                    for (int y : inc.L(v)) r = r || monotone_dead_end(y, true);
            } else {
                if (l == Label::awd) r = true;
                else if (l == Label::acd || l == Label::acu)
                    for (int y : inc.U(v)) r = r || monotone_dead_end(y, false);
            }
        }
        mono[key] = r;
        return r;
    }

    // some maximal continuation from s keeps every internal run at length one
    bool clean_tail(AiState s, bool from_turn, bool long_run) {
        auto key = std::make_tuple(s.edge, s.down, from_turn, long_run);
        if (auto it = clean.find(key); it != clean.end()) return it->second;
        clean[key] = false;  // guards against cycles
        auto succ = ai_successors(a, inc, s);
        bool r = succ.empty();
        for (AiState n : succ) {
            if (r) break;
            if (n.down == s.down) r = clean_tail(n, from_turn, true);
            else if (!(from_turn && long_run)) r = clean_tail(n, true, false);
        }
        clean[key] = r;
        return r;
    }
};

}  // namespace

bool is_extremal(const AtomicFlow& a, const Incidence& inc, int e) {
    if (!is_simple_edge(a, e)) return false;
    const FlowEdge& x = a.edges.at(e);
    int e2 = other(inc.L(x.up), e);
    int e3 = other(inc.U(x.lo), e);
    ExtremalSearch es{a, inc, {}, {}};
    // walking down e: prefix arrives up e2, suffix climbs e3
    if (es.monotone_dead_end(e3, false) && es.clean_tail({e2, true}, true, false)) return true;
    // walking up e: suffix descends e2
    if (es.monotone_dead_end(e2, true) && es.clean_tail({e3, false}, true, false)) return true;
    return false;
}

EdgeClass classify_edge(const AtomicFlow& a, int e) {
    if (!a.edges.count(e)) throw DomainError("no edge " + std::to_string(e));
    EdgeClass c;
    c.simple = is_simple_edge(a, e);
    c.in_cycle = edges_on_cycles(a).count(e) > 0;
    Incidence inc = incidence(a);
    c.extremal = c.simple && is_extremal(a, inc, e);
    return c;
}

WalkStats walk_stats(const AtomicFlow& a, const Incidence& inc, AiState s, std::map<AiState, WalkStats>& memo) {
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    WalkStats w;
    auto succ = ai_successors(a, inc, s);
    if (succ.empty()) w = {1, 1};
    for (AiState n : succ) {
        WalkStats sub = walk_stats(a, inc, n, memo);
        if (w.count > UINT64_MAX - sub.count || w.total > UINT64_MAX - sub.total - sub.count)
            throw ResourceError("walk count overflow");
        w.count += sub.count;
        w.total += sub.total;
    }
    if (!succ.empty()) w.total += w.count;
    memo[s] = w;
    return w;
}

namespace {

bool pair_in(Label u, Label l, std::initializer_list<std::pair<Label, Label>> pairs) {
    for (auto& p : pairs)
        if (p.first == u && p.second == l) return true;
    return false;
}

bool has_pair(const AtomicFlow& a, std::initializer_list<std::pair<Label, Label>> pairs) {
    for (auto& [id, e] : a.edges) {
        if (e.up == TOP || e.lo == BOT) continue;
        if (pair_in(a.vertices.at(e.up), a.vertices.at(e.lo), pairs)) return true;
    }
    return false;
}

}  // namespace

bool has_w_redex(const AtomicFlow& a) {
    using L = Label;
    return has_pair(a, {{L::awd, L::acd}, {L::acu, L::awu}, {L::awd, L::aiu}, {L::aid, L::awu},
                        {L::awd, L::awu}, {L::awd, L::acu}, {L::acd, L::awu}});
}

bool has_c_redex(const AtomicFlow& a) {
    using L = Label;
    return has_pair(a, {{L::acd, L::aiu}, {L::aid, L::acu}, {L::acd, L::acu}});
}

bool is_streamlined(const AtomicFlow& a) {
    Incidence inc = incidence(a);
    std::set<int> seen;
    std::vector<int> stack;
    for (auto& [v, l] : a.vertices)
        if (l == Label::aid || l == Label::awd) stack.push_back(v);
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int e : inc.L(v)) {
            int w = a.edges.at(e).lo;
            if (w == BOT) continue;
            Label l = a.vertices.at(w);
            if (l == Label::aiu || l == Label::awu) return false;
            if (seen.insert(w).second) stack.push_back(w);
        }
    }
    return true;
}

bool is_super_streamlined(const AtomicFlow& a) { return is_streamlined(a) && !has_w_redex(a); }
bool is_hyper_streamlined(const AtomicFlow& a) { return is_super_streamlined(a) && !has_c_redex(a); }

// ---- isomorphism by colour refinement plus individualisation

namespace {

struct IsoGraph {
    // nodes: [vertices of A][edges of A][vertices of B][edges of B]
    std::vector<long> colour;
    std::vector<std::vector<std::pair<int, int>>> adj;  // (relation, node)
    std::vector<int> id;                               // original id
    std::vector<bool> is_vertex;
    std::size_t split = 0;                             // first node of B
};

void add_side(IsoGraph& g, const AtomicFlow& f, bool ports) {
    std::map<int, int> vnode, enode;
    for (auto& [v, l] : f.vertices) {
        vnode[v] = static_cast<int>(g.colour.size());
        g.colour.push_back(1 + static_cast<long>(l));
        g.adj.emplace_back();
        g.id.push_back(v);
        g.is_vertex.push_back(true);
    }
    std::map<int, long> port;
    if (ports) {
        for (std::size_t i = 0; i < f.inputs.size(); ++i) port[f.inputs[i]] += 4 * static_cast<long>(i + 1);
        for (std::size_t i = 0; i < f.outputs.size(); ++i) port[f.outputs[i]] += 4096 * static_cast<long>(i + 1);
    }
    for (auto& [id, e] : f.edges) {
        int n = static_cast<int>(g.colour.size());
        enode[id] = n;
        long c = 100 + (e.up == TOP ? 1 : 0) + (e.lo == BOT ? 2 : 0);
        if (ports) c += 8 * port[id];
        g.colour.push_back(c);
        g.adj.emplace_back();
        g.id.push_back(id);
        g.is_vertex.push_back(false);
        if (e.up != TOP) {
            g.adj[n].push_back({0, vnode[e.up]});
            g.adj[vnode[e.up]].push_back({2, n});
        }
        if (e.lo != BOT) {
            g.adj[n].push_back({1, vnode[e.lo]});
            g.adj[vnode[e.lo]].push_back({3, n});
        }
    }
}

void refine(std::vector<long>& col, const IsoGraph& g) {
    std::size_t classes = std::set<long>(col.begin(), col.end()).size();
    for (;;) {
        std::map<std::vector<long>, long> ids;
        std::vector<std::vector<long>> sig(col.size());
        for (std::size_t i = 0; i < col.size(); ++i) {
            std::vector<long> nb;
            nb.reserve(g.adj[i].size());
            for (auto& [rel, j] : g.adj[i]) nb.push_back(col[j] * 4 + rel);
            std::sort(nb.begin(), nb.end());
            sig[i].push_back(col[i]);
            sig[i].insert(sig[i].end(), nb.begin(), nb.end());
            ids.emplace(sig[i], 0);
        }
        long k = 0;
        for (auto& [s, v] : ids) v = k++;
        for (std::size_t i = 0; i < col.size(); ++i) col[i] = ids[sig[i]];
        std::size_t now = ids.size();
        if (now == classes) return;
        classes = now;
    }
}

bool balanced(const std::vector<long>& col, std::size_t split) {
    std::map<long, long> cnt;
    for (std::size_t i = 0; i < col.size(); ++i) cnt[col[i]] += i < split ? 1 : -1;
    for (auto& [c, n] : cnt)
        if (n != 0) return false;
    return true;
}

bool search(const IsoGraph& g, std::vector<long> col, std::vector<int>& match, const AtomicFlow& A,
            const AtomicFlow& B) {
    refine(col, g);
    if (!balanced(col, g.split)) return false;
    std::map<long, std::vector<int>> cls;
    for (std::size_t i = 0; i < col.size(); ++i) cls[col[i]].push_back(static_cast<int>(i));
    const std::vector<int>* pick = nullptr;
    for (auto& [c, members] : cls)
        if (members.size() > 2 && (!pick || members.size() < pick->size())) pick = &members;
    if (!pick) {
        match.assign(g.split, -1);
        for (auto& [c, m] : cls) match[m[0]] = m[1];
        std::map<int, int> vimg{{TOP, TOP}, {BOT, BOT}};
        for (std::size_t i = 0; i < g.split; ++i)
            if (g.is_vertex[i]) vimg[g.id[i]] = g.id[match[i]];
        for (std::size_t i = 0; i < g.split; ++i) {
            if (g.is_vertex[i]) {
                if (A.vertices.at(g.id[i]) != B.vertices.at(g.id[match[i]])) return false;
                continue;
            }
            const FlowEdge& ea = A.edges.at(g.id[i]);
            const FlowEdge& eb = B.edges.at(g.id[match[i]]);
            if (vimg.at(ea.up) != eb.up || vimg.at(ea.lo) != eb.lo) return false;
        }
        return true;
    }
    int x = (*pick)[0];
    for (int y : *pick) {
        if (static_cast<std::size_t>(y) < g.split) continue;
        std::vector<long> c2 = col;
        for (auto& c : c2) c += 1;
        c2[x] = 0;
        c2[y] = 0;
        if (search(g, c2, match, A, B)) return true;
    }
    return false;
}

}  // namespace

std::optional<FlowIso> isomorphic(const AtomicFlow& a, const AtomicFlow& b, bool respect_ports) {
    if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size()) return std::nullopt;
    if (label_counts(a) != label_counts(b)) return std::nullopt;
    if (respect_ports && (a.inputs.size() != b.inputs.size() || a.outputs.size() != b.outputs.size()))
        return std::nullopt;
    IsoGraph g;
    add_side(g, a, respect_ports);
    g.split = g.colour.size();
    add_side(g, b, respect_ports);
    std::vector<int> match;
    if (!search(g, g.colour, match, a, b)) return std::nullopt;
    FlowIso iso;
    for (std::size_t i = 0; i < g.split; ++i) {
        if (g.is_vertex[i]) iso.vertex[g.id[i]] = g.id[match[i]];
        else iso.edge[g.id[i]] = g.id[match[i]];
    }
    return iso;
}

std::map<Label, int> label_counts(const AtomicFlow& a) {
    std::map<Label, int> c;
    for (auto& [v, l] : a.vertices) ++c[l];
    return c;
}

std::string label_summary(const AtomicFlow& a) {
    std::string s;
    for (auto& [l, n] : label_counts(a)) {
        if (!s.empty()) s += ' ';
        s += std::string(label_name(l)) + ":" + std::to_string(n);
    }
    return s.empty() ? "empty" : s;
}

std::string to_dot(const AtomicFlow& a, const DotOptions& opt) {
    std::optional<Polarity> pol;
    if (opt.polarity) pol = first_polarity(a);
    std::ostringstream os;
    os << "digraph " << opt.name << " {\n";
    os << "  rankdir=TB;\n";
    os << "  TOP [shape=plaintext, label=\"top\"];\n";
    os << "  BOT [shape=plaintext, label=\"bot\"];\n";
    for (auto& [v, l] : a.vertices) {
        const char* shape = "circle";
        switch (l) {
        case Label::aid: shape = "invtriangle"; break;
        case Label::aiu: shape = "triangle"; break;
        case Label::awd: shape = "invhouse"; break;
        case Label::awu: shape = "house"; break;
        case Label::acd: shape = "invtrapezium"; break;
        case Label::acu: shape = "trapezium"; break;
        }
        os << "  v" << v << " [shape=" << shape << ", label=\"" << label_name(l) << "\"];\n";
    }
    auto node = [](int v) { return v == TOP ? std::string("TOP") : v == BOT ? std::string("BOT") : "v" + std::to_string(v); };
    for (auto& [id, e] : a.edges) {
        std::string lab = e.atom;
        if (pol) {
            if (!lab.empty()) lab += ' ';
            lab += pol->at(id) > 0 ? "+" : "-";
        }
        os << "  " << node(e.up) << " -> " << node(e.lo) << " [id=\"e" << id << "\"";
        if (!lab.empty()) os << ", label=\"" << lab << "\"";
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

std::string flow_to_json(const AtomicFlow& a) {
    nlohmann::ordered_json j;
    j["vertices"] = nlohmann::ordered_json::array();
    for (auto& [v, l] : a.vertices) j["vertices"].push_back({{"id", vname(v)}, {"label", label_name(l)}});
    j["edges"] = nlohmann::ordered_json::array();
    for (auto& [id, e] : a.edges) {
        nlohmann::ordered_json x = {{"id", ename(id)}, {"up", vname(e.up)}, {"lo", vname(e.lo)}};
        if (!e.atom.empty()) x["atom"] = e.atom;
        j["edges"].push_back(x);
    }
    j["inputs"] = nlohmann::ordered_json::array();
    for (int e : a.inputs) j["inputs"].push_back(ename(e));
    j["outputs"] = nlohmann::ordered_json::array();
    for (int e : a.outputs) j["outputs"].push_back(ename(e));
    return j.dump(2) + "\n";
}

namespace {

int numeric_suffix(const std::string& s, char prefix) {
    if (s.size() < 2 || s[0] != prefix) return 0;
    int n = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9' || n > 100000000) return 0;
        n = n * 10 + (s[i] - '0');
    }
    return n;
}

std::map<std::string, int> assign_ids(const std::vector<std::string>& names, char prefix) {
    std::map<std::string, int> ids;
    std::set<int> taken;
    for (auto& n : names) {
        if (ids.count(n)) throw DomainError("duplicate id '" + n + "'");
        int k = numeric_suffix(n, prefix);
        if (k > 0 && !taken.count(k)) {
            ids[n] = k;
            taken.insert(k);
        } else {
            ids[n] = 0;
        }
    }
    int next = taken.empty() ? 1 : *taken.rbegin() + 1;
    for (auto& n : names)
        if (ids[n] == 0) ids[n] = next++;
    return ids;
}

}  // namespace

AtomicFlow flow_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("bad json: ") + e.what(), e.byte);
    }
    try {
        AtomicFlow f;
        std::vector<std::string> vn, en;
        for (auto& v : j.value("vertices", nlohmann::json::array())) vn.push_back(v.at("id").get<std::string>());
        for (auto& e : j.value("edges", nlohmann::json::array())) en.push_back(e.at("id").get<std::string>());
        auto vid = assign_ids(vn, 'v');
        auto eid = assign_ids(en, 'e');
        for (auto& v : j.value("vertices", nlohmann::json::array())) {
            auto l = label_from_name(v.at("label").get<std::string>());
            if (!l) throw DomainError("unknown label " + v.at("label").dump());
            f.vertices[vid.at(v.at("id").get<std::string>())] = *l;
        }
        auto endpoint = [&](const std::string& s, int boundary) {
            if (s == "top") return boundary == TOP ? TOP : 0;
            if (s == "bot") return boundary == BOT ? BOT : 0;
            auto it = vid.find(s);
            if (it == vid.end()) throw DomainError("unknown vertex '" + s + "'");
            return it->second;
        };
        for (auto& e : j.value("edges", nlohmann::json::array())) {
            int id = eid.at(e.at("id").get<std::string>());
            int up = endpoint(e.at("up").get<std::string>(), TOP);
            int lo = endpoint(e.at("lo").get<std::string>(), BOT);
            if (up == 0 || lo == 0) throw DomainError("edge " + e.at("id").dump() + " has a misplaced boundary");
            std::string atom = e.value("atom", "");
            f.edges[id] = FlowEdge{up, lo, atom};
        }
        auto port_list = [&](const char* key, int boundary, std::vector<int>& out) {
            if (j.contains(key)) {
                for (auto& x : j.at(key)) out.push_back(eid.at(x.get<std::string>()));
                return;
            }
            for (auto& e : j.value("edges", nlohmann::json::array())) {
                int id = eid.at(e.at("id").get<std::string>());
                const FlowEdge& fe = f.edges.at(id);
                if ((boundary == TOP ? fe.up : fe.lo) == boundary) out.push_back(id);
            }
        };
        port_list("inputs", TOP, f.inputs);
        port_list("outputs", BOT, f.outputs);
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed flow: ") + e.what());
    }
}

}  // namespace sks
