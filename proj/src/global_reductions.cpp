#include "sks/global_reductions.hpp"

#include <algorithm>
#include <functional>
#include <future>

#include "sks/local_rules.hpp"

namespace sks {

namespace {

int other(const std::vector<int>& v, int e) {
    for (int x : v)
        if (x != e) return x;
    throw DomainError("internal: no partner edge");
}

Atom literal(const std::string& s) {
    if (!s.empty() && s[0] == '-') return {s.substr(1), true};
    return {s, false};
}

int port_index(const std::vector<int>& ports, int e) {
    auto it = std::find(ports.begin(), ports.end(), e);
    return it == ports.end() ? -1 : static_cast<int>(it - ports.begin());
}

}  // namespace

SeSite se_site(const AtomicFlow& a, int e) {
    if (!a.edges.count(e) || !is_simple_edge(a, e)) throw DomainError("edge " + std::to_string(e) + " is not a simple edge");
    Incidence inc = incidence(a);
    SeSite s;
    s.edge = e;
    s.aid = a.edges.at(e).up;
    s.aiu = a.edges.at(e).lo;
    s.partner_down = other(inc.L(s.aid), e);
    s.partner_up = other(inc.U(s.aiu), e);
    return s;
}

SeSplit split_flow(const AtomicFlow& a, const SeSite& s) {
    SeSplit out;
    out.h = a.inputs.size();
    out.k = a.outputs.size();
    AtomicFlow base = a;
    base.edges.erase(s.edge);
    base.vertices.erase(s.aid);
    base.vertices.erase(s.aiu);

    AtomicFlow& w1 = out.weak_down = base;
    int wd = w1.add_vertex(Label::awd);
    w1.edges.at(s.partner_down).up = wd;
    w1.edges.at(s.partner_up).lo = BOT;
    w1.outputs.push_back(s.partner_up);

    AtomicFlow& w2 = out.weak_up = base;
    int wu = w2.add_vertex(Label::awu);
    w2.edges.at(s.partner_up).lo = wu;
    w2.edges.at(s.partner_down).up = TOP;
    w2.inputs.push_back(s.partner_down);
    return out;
}

AtomicFlow stitch_flows(const AtomicFlow& d1, const AtomicFlow& d2, std::size_t h, std::size_t k) {
    if (d1.inputs.size() != h || d1.outputs.size() != k + 1 || d2.inputs.size() != h + 1 || d2.outputs.size() != k)
        throw DomainError("stitch: boundary sizes do not fit");
    AtomicFlow c;
    std::vector<int> cu(h), cd(k);
    for (std::size_t i = 0; i < h; ++i) cu[i] = c.add_vertex(Label::acu);
    std::map<int, int> v2, v1;
    for (auto& [v, l] : d2.vertices) v2[v] = c.add_vertex(l);
    for (auto& [v, l] : d1.vertices) v1[v] = c.add_vertex(l);
    for (std::size_t j = 0; j < k; ++j) cd[j] = c.add_vertex(Label::acd);
    for (std::size_t i = 0; i < h; ++i) c.add_edge(TOP, cu[i], d2.edges.at(d2.inputs[i]).atom);

    auto up_of = [&](const AtomicFlow& d, const std::map<int, int>& vm, int e) {
        int u = d.edges.at(e).up;
        return u == TOP ? cu.at(port_index(d.inputs, e)) : vm.at(u);
    };
    auto lo_of = [&](const AtomicFlow& d, const std::map<int, int>& vm, int e) {
        int l = d.edges.at(e).lo;
        return l == BOT ? cd.at(port_index(d.outputs, e)) : vm.at(l);
    };
    int shared2 = d2.inputs[h], shared1 = d1.outputs[k];
    for (auto& [id, e] : d2.edges)
        if (id != shared2) c.add_edge(up_of(d2, v2, id), lo_of(d2, v2, id), e.atom);
    for (auto& [id, e] : d1.edges)
        if (id != shared1) c.add_edge(up_of(d1, v1, id), lo_of(d1, v1, id), e.atom);
    c.add_edge(up_of(d1, v1, shared1), lo_of(d2, v2, shared2), d2.edges.at(shared2).atom);
    for (std::size_t j = 0; j < k; ++j) c.add_edge(cd[j], BOT, d2.edges.at(d2.outputs[j]).atom);
    return c;
}

AtomicFlow reduce_se_flow(const AtomicFlow& a, const SeSite& s) {
    SeSplit sp = split_flow(a, s);
    return stitch_flows(sp.weak_down, sp.weak_up, sp.h, sp.k);
}

namespace {

// one half of the split; down = awd-capped copy
Derivation half(const Derivation& d, const SeSite& s, bool down) {
    Extraction ex = extract_flow(d, false);
    if (ex.flow.edges.count(s.edge) == 0 || ex.flow.edges.at(s.edge).up != s.aid ||
        ex.flow.edges.at(s.edge).lo != s.aiu)
        throw DomainError("site does not belong to this derivation");
    std::size_t ku = ex.map.vertex_step.at(s.aid), kl = ex.map.vertex_step.at(s.aiu);
    Atom x = literal(ex.flow.edges.at(s.partner_down).atom);
    Formula alpha = down ? mk_true() : mk_atom(x);
    std::map<int, Formula> sigma{{s.edge, down ? mk_true() : mk_false()}};

    Builder b(mk_con(d.premiss, alpha));
    EdgeTracker tr(d.premiss);
    for (std::size_t k = 0; k < d.steps.size(); ++k) {
        const Step& st = d.steps[k];
        const Formula& prem = d.formula(k);
        StepShape sh;
        if (auto why = analyze_step(prem, st, &sh)) throw DomainError("split on unchecked derivation: " + *why);
        std::vector<int> before(tr.current().begin() + sh.lo, tr.current().begin() + sh.lo + sh.n_prem);
        tr.advance(prem, st);
        std::vector<int> after(tr.current().begin() + sh.lo, tr.current().begin() + sh.lo + sh.n_conc);
        const Position& p = st.pos;
        if (k == ku) {
            // float the extra unit or atom into the hole of the interaction
            bring_in(b, "", p);
            b.comm(p);
            b.unit_out(p);
            int i = static_cast<int>(std::find(after.begin(), after.end(), s.edge) - after.begin());
            b.unit_in_f(p);
            if (down) {
                if (i == 1) b.comm(p);
                b.awd(p + (i == 0 ? "R" : "L"), x);
            } else if (i == 0) {
                b.comm(p);
            }
            continue;
        }
        if (k == kl) {
            int j = static_cast<int>(std::find(before.begin(), before.end(), s.edge) - before.begin());
            if (!down) b.awu(p + (j == 0 ? "R" : "L"));
            if (j == (down ? 0 : 1)) b.comm(p);
            b.unit_out(p);
            move_out(b, "", p);
            continue;
        }
        Position q = (k < ku || k > kl) ? "L" + p : p;
        Formula c = subformula_at(st.conclusion, p);
        Formula cs = substitute_atoms(c, tr.current().data() + sh.lo, sigma);
        Eq e = st.eq;
        if (st.rule == Rule::eq && e == Eq::None) e = sh.eq;
        if (cs != c && st.rule == Rule::eq && e == Eq::Comm && equal(cs, b.at(q))) {
            b.comm(q);
            continue;
        }
        b.emit(st.rule, q, cs, e);
    }
    return b.finish();
}

}  // namespace

DerivationSplit split_derivation(const Derivation& d, const SeSite& s) {
    return {half(d, s, true), half(d, s, false)};
}

Derivation glue(const Formula& premiss, const Derivation& d1, const Derivation& d2) {
    Builder b(premiss);
    b.set_tag("se");
    b.unit_in_t("");
    cocontract_generic(b, "");
    b.append(d1, "R");
    super_switch(b, "", "R", "R");
    b.append(d2, "L");
    contract_generic(b, "");
    b.unit_out("");
    return b.finish();
}

Derivation reduce_se_derivation(const Derivation& d, const SeSite& s) {
    DerivationSplit sp = split_derivation(d, s);
    return glue(d.premiss, sp.weak_down, sp.weak_up);
}

std::optional<int> bc_edge(const AtomicFlow& a) {
    for (int e : edges_on_cycles(a))
        if (is_simple_edge(a, e)) return e;
    return std::nullopt;
}

std::optional<int> ex_edge(const AtomicFlow& a) {
    Incidence inc = incidence(a);
    for (auto& [e, _] : a.edges)
        if (is_simple_edge(a, e) && is_extremal(a, inc, e)) return e;
    return std::nullopt;
}

namespace {

using Picker = std::optional<int> (*)(const AtomicFlow&);

void guard_ex(const AtomicFlow& a, const SeSite& s) {
    bool up_cut = a.edges.at(s.partner_down).lo != BOT && a.vertices.at(a.edges.at(s.partner_down).lo) == Label::aiu;
    bool low_ax = a.edges.at(s.partner_up).up != TOP && a.vertices.at(a.edges.at(s.partner_up).up) == Label::aid;
    if (up_cut && low_ax) throw DomainError("internal: stitching would create an ai-connection");
}

template <class T, class F>
std::pair<T, T> both(const GlobalOptions& o, F f1, F f2) {
    if (o.jobs > 1) {
        auto fut = std::async(std::launch::async, f1);
        T r2 = f2();
        return {fut.get(), std::move(r2)};
    }
    T r1 = f1();
    return {std::move(r1), f2()};
}

AtomicFlow rec_flow(const AtomicFlow& a, Picker pick, bool ex, const GlobalOptions& o) {
    auto e = pick(a);
    if (!e) return a;
    if (a.vertices.size() > o.max_vertices) throw ResourceError("global reduction: flow too large");
    SeSite s = se_site(a, *e);
    if (ex) guard_ex(a, s);
    SeSplit sp = split_flow(a, s);
    GlobalOptions sub = o;
    sub.jobs = std::max(1, o.jobs / 2);
    std::function<AtomicFlow()> f1 = [&] { return rec_flow(sp.weak_down, pick, ex, sub); };
    std::function<AtomicFlow()> f2 = [&] { return rec_flow(sp.weak_up, pick, ex, sub); };
    auto [d1, d2] = both<AtomicFlow>(o, f1, f2);
    return stitch_flows(d1, d2, sp.h, sp.k);
}

Derivation rec_derivation(const Derivation& d, Picker pick, bool ex, const GlobalOptions& o) {
    AtomicFlow a = flow_of(d);
    auto e = pick(a);
    if (!e) return d;
    if (a.vertices.size() > o.max_vertices) throw ResourceError("global reduction: derivation too large");
    SeSite s = se_site(a, *e);
    if (ex) guard_ex(a, s);
    DerivationSplit sp = split_derivation(d, s);
    GlobalOptions sub = o;
    sub.jobs = std::max(1, o.jobs / 2);
    std::function<Derivation()> f1 = [&] { return rec_derivation(sp.weak_down, pick, ex, sub); };
    std::function<Derivation()> f2 = [&] { return rec_derivation(sp.weak_up, pick, ex, sub); };
    auto [d1, d2] = both<Derivation>(o, f1, f2);
    return glue(d.premiss, d1, d2);
}

void require_bc(const AtomicFlow& a) {
    if (!all_cycles_fragile(a)) throw DomainError("bc: some ai-cycle is not fragile");
}

void require_ex(const AtomicFlow& a) {
    if (!ai_cycles(a).empty()) throw DomainError("ex: flow has ai-cycles");
    if (!all_ai_paths_clean(a)) throw DomainError("ex: some ai-path is not clean");
}

}  // namespace

AtomicFlow reduce_bc(const AtomicFlow& a, const GlobalOptions& o) {
    require_bc(a);
    AtomicFlow c = rec_flow(a, bc_edge, false, o);
    if (!ai_cycles(c).empty()) throw DomainError("internal: bc left an ai-cycle");
    return c;
}

AtomicFlow reduce_ex(const AtomicFlow& a, const GlobalOptions& o) {
    require_ex(a);
    AtomicFlow c = rec_flow(a, ex_edge, true, o);
    if (!ai_connections(c).empty()) throw DomainError("internal: ex left an ai-connection");
    return c;
}

Derivation reduce_bc_derivation(const Derivation& d, const GlobalOptions& o) {
    require_bc(flow_of(d));
    Derivation r = rec_derivation(d, bc_edge, false, o);
    if (!ai_cycles(flow_of(r)).empty()) throw DomainError("internal: bc left an ai-cycle");
    return r;
}

Derivation reduce_ex_derivation(const Derivation& d, const GlobalOptions& o) {
    require_ex(flow_of(d));
    Derivation r = rec_derivation(d, ex_edge, true, o);
    if (!ai_connections(flow_of(r)).empty()) throw DomainError("internal: ex left an ai-connection");
    return r;
}

Derivation algorithm_bc(const Derivation& d, const GlobalOptions& o) {
    if (auto c = check(d); !c.ok) throw DomainError("BC: input does not check: " + c.reason);
    return reduce_bc_derivation(make_cycles_fragile_lifted(d), o);
}

Derivation algorithm_ex(const Derivation& d, const GlobalOptions& o) {
    if (auto c = check(d); !c.ok) throw DomainError("EX: input does not check: " + c.reason);
    if (!ai_cycles(flow_of(d)).empty()) throw DomainError("EX: input flow has ai-cycles");
    return reduce_ex_derivation(normalize_c_lifted(d), o);
}

}  // namespace sks
