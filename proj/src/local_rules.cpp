#include "sks/local_rules.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace sks {

const char* rule_id_name(RuleId r) {
    switch (r) {
    case RuleId::wd_cd: return "wd_cd";
    case RuleId::cu_wu: return "cu_wu";
    case RuleId::wd_iu: return "wd_iu";
    case RuleId::id_wu: return "id_wu";
    case RuleId::wd_wu: return "wd_wu";
    case RuleId::wd_cu: return "wd_cu";
    case RuleId::cd_wu: return "cd_wu";
    case RuleId::cd_iu: return "cd_iu";
    case RuleId::id_cu: return "id_cu";
    case RuleId::cd_cu: return "cd_cu";
    }
    return "?";
}

std::optional<RuleId> rule_id_from_name(std::string_view s) {
    for (RuleId r : all_rules())
        if (s == rule_id_name(r)) return r;
    return std::nullopt;
}

const std::vector<RuleId>& w_rules() {
    static const std::vector<RuleId> w{RuleId::wd_cd, RuleId::cu_wu, RuleId::wd_iu, RuleId::id_wu,
                                       RuleId::wd_wu, RuleId::wd_cu, RuleId::cd_wu};
    return w;
}

const std::vector<RuleId>& c_rules() {
    static const std::vector<RuleId> c{RuleId::cd_iu, RuleId::id_cu, RuleId::cd_cu};
    return c;
}

const std::vector<RuleId>& all_rules() {
    static const std::vector<RuleId> all = [] {
        auto v = w_rules();
        v.insert(v.end(), c_rules().begin(), c_rules().end());
        return v;
    }();
    return all;
}

std::pair<Label, Label> rule_pattern(RuleId r) {
    using L = Label;
    switch (r) {
    case RuleId::wd_cd: return {L::awd, L::acd};
    case RuleId::cu_wu: return {L::acu, L::awu};
    case RuleId::wd_iu: return {L::awd, L::aiu};
    case RuleId::id_wu: return {L::aid, L::awu};
    case RuleId::wd_wu: return {L::awd, L::awu};
    case RuleId::wd_cu: return {L::awd, L::acu};
    case RuleId::cd_wu: return {L::acd, L::awu};
    case RuleId::cd_iu: return {L::acd, L::aiu};
    case RuleId::id_cu: return {L::aid, L::acu};
    case RuleId::cd_cu: return {L::acd, L::acu};
    }
    return {L::aid, L::aid};
}

std::vector<FlowMatch> find_matches(const AtomicFlow& a, RuleId r) {
    auto [lu, ll] = rule_pattern(r);
    std::vector<FlowMatch> out;
    for (auto& [id, e] : a.edges) {
        if (e.up == TOP || e.lo == BOT) continue;
        if (a.vertices.at(e.up) == lu && a.vertices.at(e.lo) == ll) out.push_back({r, e.up, e.lo, id});
    }
    std::sort(out.begin(), out.end(), [](const FlowMatch& x, const FlowMatch& y) {
        return x.upper != y.upper ? x.upper < y.upper : x.edge < y.edge;
    });
    return out;
}

std::optional<FlowMatch> first_match(const AtomicFlow& a, const std::vector<RuleId>& system) {
    std::optional<FlowMatch> best;
    std::size_t best_rank = 0;
    for (auto& [id, e] : a.edges) {
        if (e.up == TOP || e.lo == BOT) continue;
        Label lu = a.vertices.at(e.up), ll = a.vertices.at(e.lo);
        for (std::size_t i = 0; i < system.size(); ++i) {
            auto [pu, pl] = rule_pattern(system[i]);
            if (pu != lu || pl != ll) continue;
            bool better = !best || e.up < best->upper || (e.up == best->upper && i < best_rank) ||
                          (e.up == best->upper && i == best_rank && id < best->edge);
            if (better) {
                best = FlowMatch{system[i], e.up, e.lo, id};
                best_rank = i;
            }
        }
    }
    return best;
}

namespace {

int other(const std::vector<int>& v, int e) {
    for (int x : v)
        if (x != e) return x;
    throw DomainError("internal: no partner edge");
}

// keep takes over drop's lower end (and its output slot)
void fuse(AtomicFlow& a, int keep, int drop) {
    int lo = a.edges.at(drop).lo;
    if (lo == BOT) *std::find(a.outputs.begin(), a.outputs.end(), drop) = keep;
    a.edges.erase(drop);
    a.edges.at(keep).lo = lo;
}

void check_match(const AtomicFlow& a, const FlowMatch& m) {
    auto it = a.edges.find(m.edge);
    auto [lu, ll] = rule_pattern(m.rule);
    if (it == a.edges.end() || it->second.up != m.upper || it->second.lo != m.lower || !a.vertices.count(m.upper) ||
        !a.vertices.count(m.lower) || a.vertices.at(m.upper) != lu || a.vertices.at(m.lower) != ll)
        throw DomainError(std::string("stale match for ") + rule_id_name(m.rule));
}

}  // namespace

AtomicFlow apply_rule(const AtomicFlow& in, const FlowMatch& m) {
    check_match(in, m);
    AtomicFlow a = in;
    Incidence inc = incidence(a);
    int u = m.upper, l = m.lower, e = m.edge;
    auto drop_edge = [&](int x) { a.edges.erase(x); };
    switch (m.rule) {
    case RuleId::wd_cd: {
        int e2 = other(inc.U(l), e), e3 = inc.L(l)[0];
        drop_edge(e);
        fuse(a, e2, e3);
        a.remove_vertex(u);
        a.remove_vertex(l);
        break;
    }
    case RuleId::cu_wu: {
        int e1 = inc.U(u)[0], e3 = other(inc.L(u), e);
        drop_edge(e);
        fuse(a, e1, e3);
        a.remove_vertex(u);
        a.remove_vertex(l);
        break;
    }
    case RuleId::wd_iu: {
        drop_edge(e);
        a.remove_vertex(u);
        a.vertices[l] = Label::awu;
        break;
    }
    case RuleId::id_wu: {
        drop_edge(e);
        a.remove_vertex(l);
        a.vertices[u] = Label::awd;
        break;
    }
    case RuleId::wd_wu: {
        drop_edge(e);
        a.remove_vertex(u);
        a.remove_vertex(l);
        break;
    }
    case RuleId::wd_cu: {
        auto low = inc.L(l);
        drop_edge(e);
        a.remove_vertex(l);
        int w2 = a.add_vertex(Label::awd);
        a.edges.at(low[0]).up = u;
        a.edges.at(low[1]).up = w2;
        break;
    }
    case RuleId::cd_wu: {
        auto up = inc.U(u);
        drop_edge(e);
        a.remove_vertex(u);
        int w2 = a.add_vertex(Label::awu);
        a.edges.at(up[0]).lo = l;
        a.edges.at(up[1]).lo = w2;
        break;
    }
    case RuleId::cd_iu: {
        auto up = inc.U(u);
        int e3 = other(inc.U(l), e);
        std::string h = a.edges.at(e3).atom;
        drop_edge(e);
        a.remove_vertex(u);
        int c = a.add_vertex(Label::acu);
        int i2 = a.add_vertex(Label::aiu);
        a.edges.at(e3).lo = c;
        a.edges.at(up[0]).lo = l;
        a.edges.at(up[1]).lo = i2;
        a.add_edge(c, l, h);
        a.add_edge(c, i2, h);
        break;
    }
    case RuleId::id_cu: {
        auto low = inc.L(l);
        int e3 = other(inc.L(u), e);
        std::string h = a.edges.at(e3).atom;
        drop_edge(e);
        a.remove_vertex(l);
        int d = a.add_vertex(Label::acd);
        int i2 = a.add_vertex(Label::aid);
        a.edges.at(e3).up = d;
        a.edges.at(low[0]).up = u;
        a.edges.at(low[1]).up = i2;
        a.add_edge(u, d, h);
        a.add_edge(i2, d, h);
        break;
    }
    case RuleId::cd_cu: {
        auto up = inc.U(u);
        auto low = inc.L(l);
        std::string h1 = a.edges.at(up[0]).atom, h2 = a.edges.at(up[1]).atom;
        drop_edge(e);
        a.remove_vertex(u);
        a.remove_vertex(l);
        int c1 = a.add_vertex(Label::acu);
        int c2 = a.add_vertex(Label::acu);
        int d1 = a.add_vertex(Label::acd);
        int d2 = a.add_vertex(Label::acd);
        a.edges.at(up[0]).lo = c1;
        a.edges.at(up[1]).lo = c2;
        a.edges.at(low[0]).up = d1;
        a.edges.at(low[1]).up = d2;
        a.add_edge(c1, d1, h1);
        a.add_edge(c1, d2, h1);
        a.add_edge(c2, d1, h2);
        a.add_edge(c2, d2, h2);
        break;
    }
    }
    return a;
}

ReductionRule reduction_rule(RuleId r) {
    auto [lu, ll] = rule_pattern(r);
    AtomicFlow a;
    a.add_vertex(lu, 1);
    a.add_vertex(ll, 2);
    a.add_edge(1, 2);
    for (int i = 0; i < upper_arity(lu); ++i) a.add_edge(TOP, 1);
    for (int i = 1; i < lower_arity(lu); ++i) a.add_edge(1, BOT);
    for (int i = 1; i < upper_arity(ll); ++i) a.add_edge(TOP, 2);
    for (int i = 0; i < lower_arity(ll); ++i) a.add_edge(2, BOT);
    ReductionRule rr;
    rr.name = r;
    rr.lhs = a;
    rr.rhs = apply_rule(a, FlowMatch{r, 1, 2, 1});
    for (std::size_t i = 0; i < a.inputs.size(); ++i) rr.upper_corr[a.inputs[i]] = rr.rhs.inputs.at(i);
    for (std::size_t i = 0; i < a.outputs.size(); ++i) rr.lower_corr[a.outputs[i]] = rr.rhs.outputs.at(i);
    return rr;
}

std::string trace_to_json(const Trace& t) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (auto& r : t) j.push_back({{"rule", r.rule}, {"site", r.site}, {"before", r.before}, {"after", r.after}});
    return j.dump(2) + "\n";
}

std::vector<std::int64_t> w_measure(const AtomicFlow& a) {
    auto c = label_counts(a);
    return {static_cast<std::int64_t>(a.vertices.size()), c[Label::acd] + c[Label::acu]};
}

std::int64_t c_rank(const AtomicFlow& a) {
    Incidence inc = incidence(a);
    std::map<AiState, WalkStats> memo;
    std::uint64_t sum = 0;
    for (auto& [v, l] : a.vertices) {
        if (l == Label::acd) sum += walk_stats(a, inc, {inc.L(v)[0], true}, memo).total;
        else if (l == Label::acu) sum += walk_stats(a, inc, {inc.U(v)[0], false}, memo).total;
    }
    return static_cast<std::int64_t>(sum);
}

std::pair<AtomicFlow, Trace> normalize_w(AtomicFlow a, std::size_t cap) {
    Trace t;
    while (auto m = first_match(a, w_rules())) {
        if (t.size() >= cap) throw ResourceError("normalize_w step cap");
        auto before = w_measure(a);
        a = apply_rule(a, *m);
        t.push_back({rule_id_name(m->rule), {m->upper, m->lower}, before, w_measure(a)});
    }
    return {std::move(a), std::move(t)};
}

std::pair<AtomicFlow, Trace> normalize_c(AtomicFlow a, std::size_t cap) {
    if (!ai_cycles(a).empty()) throw DomainError("normalize_c: cyclic input refused");
    Trace t;
    while (auto m = first_match(a, c_rules())) {
        if (t.size() >= cap) throw ResourceError("normalize_c step cap");
        std::int64_t before = c_rank(a);
        a = apply_rule(a, *m);
        t.push_back({rule_id_name(m->rule), {m->upper, m->lower}, {before}, {c_rank(a)}});
    }
    return {std::move(a), std::move(t)};
}

namespace {

// flows without coherent literals get a1, a2, ... from the first assignment
void ensure_literals(AtomicFlow& a) {
    if (literal_polarity(a)) return;
    auto pol = first_polarity(a);
    if (!pol) throw DomainError("flow has no polarity assignment");
    int k = 0;
    for (auto& comp : components(a)) {
        std::string name = "a" + std::to_string(++k);
        for (int e : comp) a.edges.at(e).atom = (pol->at(e) < 0 ? "-" : "") + name;
    }
}

}  // namespace

std::optional<FlowMatch> fragile_step(const AtomicFlow& a) {
    auto on = edges_on_cycles(a);
    if (on.empty()) return std::nullopt;
    auto pol = literal_polarity(a);
    if (!pol) throw DomainError("fragile_step needs literal hints");
    Incidence inc = incidence(a);
    auto touches = [&](int v) {
        for (int e : inc.L(v))
            if (on.count(e)) return true;
        for (int e : inc.U(v))
            if (on.count(e)) return true;
        return false;
    };
    std::optional<FlowMatch> best;
    std::size_t best_rank = 0;
    for (std::size_t i = 0; i < c_rules().size(); ++i) {
        for (auto& m : find_matches(a, c_rules()[i])) {
            if (pol->at(m.edge) > 0) continue;
            bool ok = false;
            if (m.rule == RuleId::cd_iu) ok = touches(m.upper);
            else if (m.rule == RuleId::id_cu) ok = touches(m.lower);
            else ok = touches(m.upper) || touches(m.lower);
            if (!ok) continue;
            if (!best || m.upper < best->upper || (m.upper == best->upper && i < best_rank)) {
                best = m;
                best_rank = i;
            }
            break;
        }
    }
    return best;
}

bool all_cycles_fragile(const AtomicFlow& a) {
    for (auto& c : ai_cycles(a)) {
        bool fragile = false;
        for (int e : c.edges) fragile = fragile || is_simple_edge(a, e);
        if (!fragile) return false;
    }
    return true;
}

std::pair<AtomicFlow, Trace> make_cycles_fragile(AtomicFlow a) {
    ensure_literals(a);
    std::size_t cap = 10 * a.edges.size() * a.edges.size() + 10;
    Trace t;
    while (auto m = fragile_step(a)) {
        if (t.size() >= cap) throw ResourceError("make_cycles_fragile step cap");
        auto before = static_cast<std::int64_t>(a.vertices.size());
        a = apply_rule(a, *m);
        t.push_back({rule_id_name(m->rule), {m->upper, m->lower}, {before},
                     {static_cast<std::int64_t>(a.vertices.size())}});
    }
    if (!all_cycles_fragile(a)) throw DomainError("internal: a non-fragile ai-cycle survived");
    return {std::move(a), std::move(t)};
}

// ---- lifting to derivations

namespace {

Atom literal(const std::string& s) {
    if (!s.empty() && s[0] == '-') return {s.substr(1), true};
    return {s, false};
}

// ([x1,x2], y) => f, through one cocontraction of y and two cuts
void cut_block(Builder& b, const Position& p) {
    b.acu(p + "R");
    b.comm(p);
    b.assoc_lr(p);
    b.comm(p + "RR");
    b.s(p + "R");
    b.aiu(p + "RL");
    b.comm(p + "R");
    b.unit_out(p + "R");
    b.aiu(p);
}

Formula image_of(const AtomicFlow& f, const FlowMatch& m) {
    switch (m.rule) {
    case RuleId::wd_cd:
    case RuleId::wd_iu:
    case RuleId::wd_wu:
    case RuleId::wd_cu:
        return mk_false();
    case RuleId::cu_wu:
    case RuleId::id_wu:
    case RuleId::cd_wu:
        return mk_true();
    default: {
        Formula x = mk_atom(literal(f.edges.at(m.edge).atom));
        return m.rule == RuleId::id_cu ? mk_con(x, x) : mk_dis(x, x);
    }
    }
}

// replays a derivation while rewriting the matched steps; matches must be vertex-disjoint
Derivation rewrite(const Derivation& d, const Extraction& ex, const std::vector<FlowMatch>& ms) {
    std::map<std::size_t, std::pair<const FlowMatch*, bool>> at_step;  // true = upper vertex
    std::map<int, Formula> sigma;
    for (auto& m : ms) {
        check_match(ex.flow, m);
        if (!at_step.emplace(ex.map.vertex_step.at(m.upper), std::pair{&m, true}).second ||
            !at_step.emplace(ex.map.vertex_step.at(m.lower), std::pair{&m, false}).second)
            throw DomainError("internal: overlapping redexes");
        sigma[m.edge] = image_of(ex.flow, m);
    }

    Builder b(d.premiss);
    if (ms.size() == 1) b.set_tag(rule_id_name(ms[0].rule));
    EdgeTracker tr(d.premiss);
    for (std::size_t k = 0; k < d.steps.size(); ++k) {
        const Step& st = d.steps[k];
        const Formula& prem = d.formula(k);
        StepShape sh;
        if (auto why = analyze_step(prem, st, &sh)) throw DomainError("lift on unchecked derivation: " + *why);
        std::vector<int> before(tr.current().begin() + sh.lo, tr.current().begin() + sh.lo + sh.n_prem);
        tr.advance(prem, st);
        std::vector<int> after(tr.current().begin() + sh.lo, tr.current().begin() + sh.lo + sh.n_conc);
        auto hit = at_step.find(k);
        if (hit == at_step.end()) {
            const Position& p = st.pos;
            Formula c = subformula_at(st.conclusion, p);
            Formula cs = sigma.empty() ? c : substitute_atoms(c, tr.current().data() + sh.lo, sigma);
            Eq e = st.eq;
            if (st.rule == Rule::eq && e == Eq::None) e = sh.eq;
            if (cs != c && st.rule == Rule::eq && e == Eq::Comm && equal(cs, b.at(p))) {
                b.comm(p);  // both halves became the same formula
                continue;
            }
            b.emit(st.rule, p, cs, e);
            continue;
        }
        const FlowMatch& m = *hit->second.first;
        Atom x = literal(ex.flow.edges.at(m.edge).atom);
        const Position& p = st.pos;
        auto idx = [&](const std::vector<int>& v) {
            return static_cast<int>(std::find(v.begin(), v.end(), m.edge) - v.begin());
        };
        if (hit->second.second) {
            int i = idx(after);
            switch (m.rule) {
            case RuleId::cu_wu:  // x -> (x,t)
                b.unit_in_t(p);
                if (i == 0) b.comm(p);
                break;
            case RuleId::id_wu: {  // t -> [t,y]
                Atom y = atoms(subformula_at(st.conclusion, p))[1 - i];
                b.unit_in_f(p);
                if (i == 1) {
                    b.comm(p);
                    b.awd(p + "L", y);
                } else {
                    b.awd(p + "R", y);
                }
                break;
            }
            case RuleId::cd_wu:  // [x,x] -> t
                b.awu(p + "L");
                b.awu(p + "R");
                b.unit_out(p);
                break;
            case RuleId::id_cu: {  // t -> [(x,x),y]
                Atom y = atoms(subformula_at(st.conclusion, p))[1 - i];
                Builder cb(mk_con(mk_dis(mk_atom(dual(x)), mk_atom(dual(x))), mk_atom(dual(y))));
                cut_block(cb, "");
                Derivation blk = dual_derivation(cb.finish());
                b.append(blk, p);
                if (i == 1) b.comm(p);
                break;
            }
            default:  // the step collapses to an identity
                break;
            }
            continue;
        }
        {
            int i = idx(before);
            switch (m.rule) {
            case RuleId::wd_cd:  // [f,x] -> x
                if (i == 0) b.comm(p);
                b.unit_out(p);
                break;
            case RuleId::wd_iu:  // (f,y) -> f
                if (i == 0) {
                    b.awu(p + "R");
                } else {
                    b.awu(p + "L");
                    b.comm(p);
                }
                b.unit_out(p);
                break;
            case RuleId::wd_wu:  // f -> t
                b.unit_in_t(p);
                b.unit_in_f(p + "R");
                b.comm(p + "R");
                b.s(p);
                b.unit_out(p + "L");
                b.comm(p);
                b.unit_out(p);
                break;
            case RuleId::wd_cu:  // f -> (x,x)
                b.ff_in(p);
                b.awd(p + "L", x);
                b.awd(p + "R", x);
                break;
            case RuleId::cd_iu:  // ([x,x],y) -> f
                if (i == 1) b.comm(p);
                cut_block(b, p);
                break;
            case RuleId::cd_cu:  // [x,x] -> (x,x)
                b.acu(p + "L");
                b.acu(p + "R");
                b.m(p);
                b.acd(p + "L");
                b.acd(p + "R");
                break;
            default:
                break;
            }
        }
    }
    Derivation out = b.finish();
    if (!equal(out.conclusion(), d.conclusion())) throw DomainError("internal: lift changed the conclusion");
    return out;
}

}  // namespace

Derivation lift_local(const Derivation& d, const FlowMatch& m) {
    return rewrite(d, extract_flow(d, false), {m});
}

Derivation lift_many(const Derivation& d, const std::vector<FlowMatch>& ms) {
    return rewrite(d, extract_flow(d, false), ms);
}

std::vector<FlowMatch> disjoint_matches(const AtomicFlow& a, const std::vector<RuleId>& system) {
    std::vector<FlowMatch> all;
    for (RuleId r : system)
        for (auto& m : find_matches(a, r)) all.push_back(m);
    std::stable_sort(all.begin(), all.end(), [](const FlowMatch& x, const FlowMatch& y) { return x.upper < y.upper; });
    std::set<int> used;
    std::vector<FlowMatch> out;
    for (auto& m : all) {
        if (used.count(m.upper) || used.count(m.lower)) continue;
        used.insert(m.upper);
        used.insert(m.lower);
        out.push_back(m);
    }
    return out;
}

namespace {

// one round = one replay of the derivation, rewriting every picked redex
template <class Pick>
Derivation lifted_loop(Derivation d, Trace* trace, std::size_t cap, Pick pick, bool rank) {
    Extraction ex = extract_flow(d, false);
    for (std::size_t n = 0;;) {
        std::vector<FlowMatch> ms = pick(ex.flow);
        if (ms.empty()) return d;
        n += ms.size();
        if (n > cap) throw ResourceError("lifted normalisation step cap");
        std::vector<std::int64_t> before = rank ? std::vector<std::int64_t>{c_rank(ex.flow)} : w_measure(ex.flow);
        d = rewrite(d, ex, ms);
        ex = extract_flow(d, false);
        if (trace) {
            std::vector<std::int64_t> after = rank ? std::vector<std::int64_t>{c_rank(ex.flow)} : w_measure(ex.flow);
            for (auto& m : ms) trace->push_back({rule_id_name(m.rule), {m.upper, m.lower}, before, after});
        }
    }
}

std::vector<FlowMatch> one(std::optional<FlowMatch> m) {
    if (!m) return {};
    return {*m};
}

}  // namespace

Derivation normalize_w_lifted(Derivation d, Trace* trace, std::size_t cap) {
    return lifted_loop(std::move(d), trace, cap, [](const AtomicFlow& f) { return disjoint_matches(f, w_rules()); }, false);
}

Derivation normalize_c_lifted(Derivation d, Trace* trace, std::size_t cap) {
    if (!ai_cycles(flow_of(d)).empty()) throw DomainError("normalize_c: cyclic input refused");
    return lifted_loop(std::move(d), trace, cap, [](const AtomicFlow& f) { return disjoint_matches(f, c_rules()); }, true);
}

Derivation make_cycles_fragile_lifted(Derivation d, Trace* trace) {
    AtomicFlow f0 = flow_of(d);
    std::size_t cap = 10 * f0.edges.size() * f0.edges.size() + 10;
    Derivation out = lifted_loop(std::move(d), trace, cap, [](const AtomicFlow& f) { return one(fragile_step(f)); }, false);
    if (!all_cycles_fragile(flow_of(out))) throw DomainError("internal: a non-fragile ai-cycle survived");
    return out;
}

AtomicFlow bounce_flow() {
    AtomicFlow a;
    a.add_vertex(Label::aid, 1);
    a.add_vertex(Label::acd, 2);
    a.add_vertex(Label::aiu, 3);
    a.add_edge(1, 2, "a", 1);
    a.add_edge(1, 3, "-a", 2);
    a.add_edge(TOP, 2, "a", 3);
    a.add_edge(2, 3, "a", 4);
    return a;
}

AtomicFlow tower_flow(int n) {
    AtomicFlow a;
    int above = TOP;
    for (int i = 0; i < n; ++i) {
        int u = a.add_vertex(Label::acu);
        int d = a.add_vertex(Label::acd);
        a.add_edge(above, u, "a");
        a.add_edge(u, d, "a");
        a.add_edge(u, d, "a");
        above = d;
    }
    a.add_edge(above, BOT, "a");
    return a;
}

DivergeResult diverge_demo(int max_steps) {
    DivergeResult r;
    AtomicFlow a = bounce_flow();
    r.vertex_counts.push_back(static_cast<int>(a.vertices.size()));
    for (int i = 0; i < max_steps; ++i) {
        auto m = first_match(a, c_rules());
        if (!m) return r;
        a = apply_rule(a, *m);
        r.vertex_counts.push_back(static_cast<int>(a.vertices.size()));
    }
    r.cap_hit = static_cast<bool>(first_match(a, c_rules()));
    return r;
}

}  // namespace sks
