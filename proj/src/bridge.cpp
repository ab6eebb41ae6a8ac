#include "sks/bridge.hpp"

#include <algorithm>
#include <random>

namespace sks {

namespace {

Label label_of(Rule r) {
    switch (r) {
    case Rule::aid: return Label::aid;
    case Rule::aiu: return Label::aiu;
    case Rule::awd: return Label::awd;
    case Rule::awu: return Label::awu;
    case Rule::acd: return Label::acd;
    case Rule::acu: return Label::acu;
    default: throw DomainError("not a structural rule");
    }
}

}  // namespace

Extraction extract_flow(const Derivation& d, bool keep_occurrences) {
    Extraction ex;
    AtomicFlow& f = ex.flow;
    EdgeTracker tr(d.premiss);
    {
        auto lits = atoms(d.premiss);
        for (std::size_t i = 0; i < lits.size(); ++i) {
            int id = tr.current()[i];
            f.edges[id] = FlowEdge{TOP, BOT, to_string(lits[i])};
            f.inputs.push_back(id);
        }
    }
    if (keep_occurrences) ex.map.occ_edges.push_back(tr.current());
    int vid = 0;
    for (std::size_t k = 0; k < d.steps.size(); ++k) {
        const Step& st = d.steps[k];
        auto ev = tr.advance(d.formula(k), st);
        if (ev) {
            int v = ++vid;
            f.vertices[v] = label_of(st.rule);
            ex.map.vertex_step[v] = k;
            ex.map.step_vertex[k] = v;
            for (int e : ev->upper) f.edges.at(e).lo = v;
            if (!ev->lower.empty()) {
                auto lits = atoms(subformula_at(st.conclusion, st.pos));
                for (std::size_t i = 0; i < ev->lower.size(); ++i)
                    f.edges[ev->lower[i]] = FlowEdge{v, BOT, to_string(lits[i])};
            }
        }
        if (keep_occurrences) ex.map.occ_edges.push_back(tr.current());
    }
    f.outputs = tr.current();
    return ex;
}

AtomicFlow flow_of(const Derivation& d) { return extract_flow(d, false).flow; }

// ---- sequentialisation

namespace {

using Names = std::map<int, Atom>;

// literals from hints when they are coherent, otherwise a1, a2, ... per component
Names edge_literals(const AtomicFlow& a) {
    Names n;
    bool hints = literal_polarity(a).has_value();
    if (hints) {
        for (auto& [id, e] : a.edges) {
            std::string s = e.atom;
            bool neg = s[0] == '-';
            std::string name = neg ? s.substr(1) : s;
            if (!valid_atom_name(name)) {
                hints = false;
                break;
            }
            n[id] = Atom{name, neg};
        }
        if (hints) {
            Incidence inc = incidence(a);
            for (auto& [v, l] : a.vertices) {
                std::vector<int> all = inc.L(v);
                all.insert(all.end(), inc.U(v).begin(), inc.U(v).end());
                for (int e : all)
                    if (n[e].name != n[all[0]].name) hints = false;
            }
        }
    }
    if (hints) return n;
    n.clear();
    auto pol = first_polarity(a);
    if (!pol) throw DomainError("flow has no polarity assignment");
    int k = 0;
    for (auto& comp : components(a)) {
        std::string name = "a" + std::to_string(++k);
        for (int e : comp) n[e] = Atom{name, pol->at(e) < 0};
    }
    return n;
}

struct SeqOut {
    Derivation d;
    std::vector<int> in;  // premiss atoms, left to right
};

SeqOut seq_rec(AtomicFlow a, const Names& lit) {
    if (a.vertices.empty()) {
        SeqOut out;
        Formula f;
        // every edge is top-to-bottom here; follow output order so the conclusion keeps it
        for (auto it = a.outputs.rbegin(); it != a.outputs.rend(); ++it) {
            Formula x = mk_atom(lit.at(*it));
            f = f ? mk_dis(x, f) : x;
        }
        out.d.premiss = f ? f : mk_true();
        out.in = a.outputs;
        return out;
    }
    Incidence inc = incidence(a);
    int nu = 0;
    for (auto& [v, l] : a.vertices) {
        bool top = true;
        for (int e : inc.U(v))
            if (a.edges.at(e).up != TOP) top = false;
        if (top) {
            nu = v;
            break;
        }
    }
    if (!nu) throw DomainError("sequentialize: no maximal vertex (cyclic flow?)");
    Label lab = a.vertices.at(nu);
    std::vector<int> U = inc.U(nu), L = inc.L(nu);

    AtomicFlow c = a;
    c.remove_vertex(nu);
    for (int e : U) c.remove_edge(e);
    for (int e : L) c.set_up(e, TOP);
    SeqOut sub = seq_rec(std::move(c), lit);

    auto at = [&](int e) { return mk_atom(lit.at(e)); };
    Formula gamma, delta;
    std::vector<Position> holes;  // positions of L inside delta
    Rule rule = Rule::eq;
    switch (lab) {
    case Label::aid: gamma = mk_true(); rule = Rule::aid; holes = {"L", "R"}; break;
    case Label::awd: gamma = mk_false(); rule = Rule::awd; holes = {""}; break;
    case Label::acd: gamma = mk_dis(at(U[0]), at(U[1])); rule = Rule::acd; holes = {""}; break;
    case Label::acu: gamma = at(U[0]); rule = Rule::acu; holes = {"L", "R"}; break;
    case Label::aiu: gamma = mk_con(at(U[0]), at(U[1])); rule = Rule::aiu; break;
    case Label::awu: gamma = at(U[0]); rule = Rule::awu; break;
    }

    const Formula& pi = sub.d.premiss;
    auto pos = atom_positions(pi);
    std::map<int, Position> where;
    for (std::size_t i = 0; i < sub.in.size(); ++i) where[sub.in[i]] = pos[i];
    Formula xi = pi;
    for (int e : L) xi = replace_at(xi, where.at(e), mk_true());

    Builder b(mk_dis(mk_con(xi, gamma), mk_true()));
    switch (rule) {
    case Rule::aid: b.aid("LR", lit.at(L[0])); break;
    case Rule::awd: b.awd("LR", lit.at(L[0])); break;
    case Rule::acd: b.acd("LR"); break;
    case Rule::acu: b.acu("LR"); break;
    case Rule::aiu: b.aiu("LR"); break;
    case Rule::awu: b.awu("LR"); break;
    default: break;
    }
    for (std::size_t i = 0; i < L.size(); ++i) {
        super_switch(b, "L", where.at(L[i]), holes[i]);
        psi_block(b, "");
    }
    b.append(sub.d, "LL");

    SeqOut out;
    out.d = b.finish();
    std::set<int> lowers(L.begin(), L.end());
    for (int e : sub.in)
        if (!lowers.count(e)) out.in.push_back(e);
    for (int e : U) out.in.push_back(e);
    return out;
}

}  // namespace

Derivation sequentialize(const AtomicFlow& a) {
    auto rep = validate(a);
    if (!rep.ok) throw DomainError("invalid flow: " + rep.condition + " at " + rep.witness);
    Names lit = edge_literals(a);
    SeqOut out = seq_rec(a, lit);
    if (out.d.premiss->atoms == 0 && out.d.premiss->kind != Kind::True) {
        Builder b(out.d.premiss);
        unit_normalize(b, "");
        Derivation down = b.finish();
        if (down.conclusion()->kind != Kind::True) throw DomainError("sequentialize: premiss is not true");
        return compose(reverse_linear(down), out.d);
    }
    return out.d;
}

// ---- random flows

namespace {

struct ParityDsu {
    std::vector<int> parent, parity;
    int add() {
        parent.push_back(static_cast<int>(parent.size()));
        parity.push_back(0);
        return parent.back();
    }
    int find(int x, int& p) {
        p = 0;
        while (parent[x] != x) {
            p ^= parity[x];
            x = parent[x];
        }
        return x;
    }
    bool can(int a, int b, int differ) {
        int pa, pb;
        int ra = find(a, pa), rb = find(b, pb);
        return ra != rb || (pa ^ pb) == differ;
    }
    void unite(int a, int b, int differ) {
        int pa, pb;
        int ra = find(a, pa), rb = find(b, pb);
        if (ra == rb) return;
        parent[rb] = ra;
        parity[rb] = pa ^ pb ^ differ;
    }
};

std::string component_name(int k) {
    std::string s(1, static_cast<char>('a' + k % 26));
    if (k >= 26) s += std::to_string(k / 26);
    if (s == "t" || s == "f") s += "x";
    return s;
}

}  // namespace

AtomicFlow random_flow(std::uint64_t seed, const RandomFlowParams& p) {
    std::mt19937_64 rng(seed);
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    AtomicFlow f;
    ParityDsu dsu;  // indexed by edge id
    dsu.add();      // slot 0 unused
    std::vector<int> open;
    auto new_edge = [&](int up) {
        int id = static_cast<int>(dsu.parent.size());
        dsu.add();
        f.edges[id] = FlowEdge{up, BOT, ""};
        if (up == TOP) f.inputs.push_back(id);
        open.push_back(id);
        return id;
    };
    auto take = [&](std::size_t i) {
        int e = open[i];
        open.erase(open.begin() + static_cast<long>(i));
        return e;
    };
    int nin = uni(p.min_inputs, std::max(p.min_inputs, p.max_inputs));
    for (int i = 0; i < nin; ++i) new_edge(TOP);

    std::discrete_distribution<int> pick(p.weights.begin(), p.weights.end());
    int placed = 0, guard = 0;
    while (placed < p.vertices && guard++ < p.vertices * 200) {
        Label l = static_cast<Label>(pick(rng));
        int v = placed + 1;
        if (l == Label::aiu || l == Label::acd) {
            if (open.size() < 2) continue;
            int differ = l == Label::aiu ? 1 : 0;
            bool ok = false;
            std::size_t i = 0, j = 0;
            for (int tries = 0; tries < 12 && !ok; ++tries) {
                i = static_cast<std::size_t>(uni(0, static_cast<int>(open.size()) - 1));
                j = static_cast<std::size_t>(uni(0, static_cast<int>(open.size()) - 1));
                ok = i != j && dsu.can(open[i], open[j], differ);
            }
            if (!ok) continue;
            int e1 = open[i], e2 = open[j];
            dsu.unite(e1, e2, differ);
            if (i > j) std::swap(i, j);
            take(j);
            take(i);
            f.vertices[v] = l;
            f.edges[e1].lo = v;
            f.edges[e2].lo = v;
            if (l == Label::acd) {
                int e3 = new_edge(v);
                dsu.unite(e1, e3, 0);
            }
        } else if (l == Label::awu || l == Label::acu) {
            if (open.empty()) continue;
            int e1 = take(static_cast<std::size_t>(uni(0, static_cast<int>(open.size()) - 1)));
            f.vertices[v] = l;
            f.edges[e1].lo = v;
            if (l == Label::acu) {
                int a = new_edge(v), b = new_edge(v);
                dsu.unite(e1, a, 0);
                dsu.unite(e1, b, 0);
            }
        } else if (l == Label::aid) {
            f.vertices[v] = l;
            int a = new_edge(v), b = new_edge(v);
            dsu.unite(a, b, 1);
        } else {
            f.vertices[v] = l;
            new_edge(v);
        }
        ++placed;
    }
    // shuffle the remaining ends a little so outputs are not in creation order
    std::shuffle(open.begin(), open.end(), rng);
    for (int e : open) f.outputs.push_back(e);

    std::map<int, int> comp;
    std::map<int, bool> flip;
    for (auto& [id, e] : f.edges) {
        int par;
        int r = dsu.find(id, par);
        if (!comp.count(r)) {
            int k = static_cast<int>(comp.size());
            comp[r] = k;
            flip[r] = uni(0, 1) == 1;
        }
        bool neg = (par == 1) != flip[r];
        e.atom = (neg ? "-" : "") + component_name(comp[r]);
    }
    return f;
}

Derivation random_derivation(std::uint64_t seed, const RandomFlowParams& p) {
    return sequentialize(random_flow(seed, p));
}

Derivation random_proof(std::uint64_t seed, int vertices) {
    RandomFlowParams p;
    p.vertices = vertices;
    p.min_inputs = p.max_inputs = 0;
    p.weights = {3, 2, 1, 1, 1, 1};
    for (std::uint64_t k = 0;; ++k) {
        AtomicFlow f = random_flow(seed * 1000003 + k, p);
        if (label_counts(f)[Label::aiu] > 0) return sequentialize(f);
    }
}

}  // namespace sks
