#include "sks/derivation.hpp"

#include <sstream>

namespace sks {

const char* rule_name(Rule r) {
    switch (r) {
    case Rule::aid: return "aid";
    case Rule::aiu: return "aiu";
    case Rule::awd: return "awd";
    case Rule::awu: return "awu";
    case Rule::acd: return "acd";
    case Rule::acu: return "acu";
    case Rule::s: return "s";
    case Rule::m: return "m";
    case Rule::eq: return "eq";
    }
    return "?";
}

std::optional<Rule> rule_from_name(std::string_view s) {
    for (Rule r : {Rule::aid, Rule::aiu, Rule::awd, Rule::awu, Rule::acd, Rule::acu, Rule::s, Rule::m, Rule::eq})
        if (s == rule_name(r)) return r;
    return std::nullopt;
}

bool is_structural(Rule r) { return r != Rule::s && r != Rule::m && r != Rule::eq; }

Rule dual_rule(Rule r) {
    switch (r) {
    case Rule::aid: return Rule::aiu;
    case Rule::aiu: return Rule::aid;
    case Rule::awd: return Rule::awu;
    case Rule::awu: return Rule::awd;
    case Rule::acd: return Rule::acu;
    case Rule::acu: return Rule::acd;
    default: return r;
    }
}

std::string CheckReport::to_string(std::size_t nsteps) const {
    if (ok) return "ok, " + std::to_string(nsteps) + " steps";
    return "fail at step " + std::to_string(step) + ": " + reason;
}

namespace {

bool dual_atoms(const Formula& a, const Formula& b) {
    return is_atom(a) && is_atom(b) && a->name == b->name && a->neg != b->neg;
}

// premiss and conclusion agree off the path p
bool same_outside(const Formula& a, const Formula& b, const Position& p) {
    const Node* x = a.get();
    const Node* y = b.get();
    for (char c : p) {
        if ((x->kind != Kind::Dis && x->kind != Kind::Con) || x->kind != y->kind) return false;
        if (c == 'L') {
            if (!equal(x->r, y->r)) return false;
            x = x->l.get();
            y = y->l.get();
        } else {
            if (!equal(x->l, y->l)) return false;
            x = x->r.get();
            y = y->r.get();
        }
    }
    return true;
}

Eq dual_eq(Eq e) {
    switch (e) {
    case Eq::UnitF: return Eq::UnitT;
    case Eq::UnitT: return Eq::UnitF;
    case Eq::TT: return Eq::FF;
    case Eq::FF: return Eq::TT;
    default: return e;
    }
}

}  // namespace

std::optional<std::string> analyze_step(const Formula& prem, const Step& st, StepShape* out) {
    if (!valid_position(prem, st.pos) || !valid_position(st.conclusion, st.pos))
        return "invalid position " + path_string(st.pos);
    if (!same_outside(prem, st.conclusion, st.pos)) return "premiss and conclusion differ outside the redex";
    Formula A = subformula_at(prem, st.pos);
    Formula B = subformula_at(st.conclusion, st.pos);
    std::string bad = std::string("schema mismatch for ") + rule_name(st.rule);
    Eq eq = Eq::None;
    switch (st.rule) {
    case Rule::aid:
        if (A->kind != Kind::True || B->kind != Kind::Dis) return bad;
        if (!dual_atoms(B->l, B->r)) return std::string("not dual atoms");
        break;
    case Rule::aiu:
        if (B->kind != Kind::False || A->kind != Kind::Con) return bad;
        if (!dual_atoms(A->l, A->r)) return std::string("not dual atoms");
        break;
    case Rule::awd:
        if (A->kind != Kind::False || !is_atom(B)) return bad;
        break;
    case Rule::awu:
        if (!is_atom(A) || B->kind != Kind::True) return bad;
        break;
    case Rule::acd:
        if (A->kind != Kind::Dis || !is_atom(A->l) || !equal(A->l, A->r) || !equal(A->l, B)) return bad;
        break;
    case Rule::acu:
        if (B->kind != Kind::Con || !is_atom(A) || !equal(B->l, A) || !equal(B->r, A)) return bad;
        break;
    case Rule::s:
        if (A->kind != Kind::Con || A->r->kind != Kind::Dis || B->kind != Kind::Dis || B->l->kind != Kind::Con ||
            !equal(A->l, B->l->l) || !equal(A->r->l, B->l->r) || !equal(A->r->r, B->r))
            return bad;
        break;
    case Rule::m:
        if (A->kind != Kind::Dis || A->l->kind != Kind::Con || A->r->kind != Kind::Con || B->kind != Kind::Con ||
            B->l->kind != Kind::Dis || B->r->kind != Kind::Dis || !equal(A->l->l, B->l->l) ||
            !equal(A->l->r, B->r->l) || !equal(A->r->l, B->l->r) || !equal(A->r->r, B->r->r))
            return bad;
        break;
    case Rule::eq:
        if (st.eq != Eq::None) {
            if (!eq_holds(st.eq, A, B)) return std::string("not an instance of ") + eq_name(st.eq);
            eq = st.eq;
        } else {
            eq = match_eq(A, B);
            if (eq == Eq::None) return std::string("not an instance of any equation");
        }
        break;
    }
    if (out) {
        out->lo = atom_offset(prem, st.pos);
        out->n_prem = A->atoms;
        out->n_conc = B->atoms;
        out->eq = eq;
        out->perm.clear();
        if (!is_structural(st.rule)) {
            int n = A->atoms;
            out->perm.resize(n);
            for (int i = 0; i < n; ++i) out->perm[i] = i;
            if (st.rule == Rule::m) {
                int na = A->l->l->atoms, nb = A->l->r->atoms, nc = A->r->l->atoms;
                for (int j = 0; j < nb; ++j) out->perm[na + j] = na + nc + j;
                for (int j = 0; j < nc; ++j) out->perm[na + nb + j] = na + j;
            } else if (st.rule == Rule::eq && eq == Eq::Comm) {
                int nx = A->l->atoms, ny = A->r->atoms;
                for (int j = 0; j < nx; ++j) out->perm[j] = ny + j;
                for (int j = 0; j < ny; ++j) out->perm[nx + j] = j;
            }
        }
    }
    return std::nullopt;
}

CheckReport check(const Derivation& d) {
    CheckReport rep;
    for (std::size_t k = 0; k < d.steps.size(); ++k) {
        if (auto why = analyze_step(d.formula(k), d.steps[k])) {
            rep.ok = false;
            rep.step = static_cast<int>(k);
            rep.reason = *why;
            return rep;
        }
    }
    return rep;
}

OccMap occ_map(const Formula& prem, const Step& st) {
    StepShape sh;
    if (auto why = analyze_step(prem, st, &sh)) throw DomainError("occ_map on bad step: " + *why);
    OccMap om;
    int n = prem->atoms;
    om.image.resize(n);
    int delta = sh.n_conc - sh.n_prem;
    for (int i = 0; i < sh.lo; ++i) om.image[i] = {i};
    for (int i = sh.lo + sh.n_prem; i < n; ++i) om.image[i] = {i + delta};
    int lo = sh.lo;
    switch (st.rule) {
    case Rule::aid: om.created = {lo, lo + 1}; break;
    case Rule::awd: om.created = {lo}; break;
    case Rule::acd: om.image[lo] = {lo}; om.image[lo + 1] = {lo}; break;
    case Rule::acu: om.image[lo] = {lo, lo + 1}; break;
    case Rule::aiu:
    case Rule::awu: break;
    default:
        for (int i = 0; i < sh.n_prem; ++i) om.image[lo + i] = {lo + sh.perm[i]};
    }
    return om;
}

bool is_ks(const Derivation& d) {
    for (auto& s : d.steps)
        if (s.rule == Rule::aiu || s.rule == Rule::awu || s.rule == Rule::acu) return false;
    return true;
}

bool is_proof(const Derivation& d) { return d.premiss->kind == Kind::True; }

bool is_cut_free(const Derivation& d) {
    for (auto& s : d.steps)
        if (s.rule == Rule::aiu) return false;
    return true;
}

std::map<Rule, int> rule_counts(const Derivation& d) {
    std::map<Rule, int> c;
    for (auto& s : d.steps) ++c[s.rule];
    return c;
}

std::string to_text(const Derivation& d) {
    std::string out = to_string(d.premiss) + "\n";
    for (std::size_t k = 0; k < d.steps.size(); ++k) {
        const Step& st = d.steps[k];
        out += "-- ";
        out += rule_name(st.rule);
        out += " @ " + path_string(st.pos);
        if (st.rule == Rule::eq && st.eq != Eq::None) {
            // only spelled out when inference would pick another equation
            Formula A = subformula_at(d.formula(k), st.pos);
            Formula B = subformula_at(st.conclusion, st.pos);
            if (match_eq(A, B) != st.eq) out += "  # " + std::string(eq_name(st.eq));
        }
        out += "\n" + to_string(st.conclusion) + "\n";
    }
    return out;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

Derivation parse_derivation(std::string_view text) {
    Derivation d;
    bool have_premiss = false;
    std::optional<Step> pending;
    std::size_t off = 0;
    while (off <= text.size()) {
        std::size_t nl = text.find('\n', off);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view raw = text.substr(off, nl - off);
        std::size_t line_off = off;
        off = nl + 1;
        std::string_view comment;
        if (auto h = raw.find('#'); h != std::string_view::npos) {
            comment = trim(raw.substr(h + 1));
            raw = raw.substr(0, h);
        }
        std::string_view line = trim(raw);
        if (line.empty()) {
            if (nl == text.size()) break;
            continue;
        }
        std::size_t lead = static_cast<std::size_t>(line.data() - text.data());
        if (line.substr(0, 2) == "--") {
            if (!have_premiss) throw ParseError("rule line before premiss", line_off);
            if (pending) throw ParseError("two rule lines in a row", line_off);
            std::string_view rest = trim(line.substr(2));
            auto at = rest.find('@');
            if (at == std::string_view::npos) throw ParseError("expected '@'", lead);
            auto r = rule_from_name(trim(rest.substr(0, at)));
            if (!r) throw ParseError("unknown rule '" + std::string(trim(rest.substr(0, at))) + "'", lead);
            Step st;
            st.rule = *r;
            try {
                st.pos = parse_path(trim(rest.substr(at + 1)));
            } catch (const DomainError&) {
                throw ParseError("bad path", lead + at + 1);
            }
            if (st.rule == Rule::eq && !comment.empty()) st.eq = eq_from_name(comment);
            pending = st;
        } else {
            Formula f;
            try {
                f = parse_formula(line);
            } catch (const ParseError& e) {
                throw ParseError("bad formula", lead + e.offset);
            }
            if (!have_premiss) {
                d.premiss = f;
                have_premiss = true;
            } else {
                if (!pending) throw ParseError("formula without a rule line", lead);
                pending->conclusion = f;
                d.steps.push_back(*pending);
                pending.reset();
            }
        }
        if (nl == text.size()) break;
    }
    if (!have_premiss) throw ParseError("empty derivation", 0);
    if (pending) throw ParseError("rule line without conclusion", text.size());
    return d;
}

EdgeTracker::EdgeTracker(const Formula& premiss, int first_id) : next_(first_id) {
    cur_.resize(premiss->atoms);
    for (auto& x : cur_) x = next_++;
}

std::optional<EdgeTracker::Event> EdgeTracker::advance(const Formula& prem, const Step& st) {
    StepShape sh;
    if (auto why = analyze_step(prem, st, &sh)) throw DomainError("unchecked step: " + *why);
    auto it = cur_.begin() + sh.lo;
    if (!is_structural(st.rule)) {
        std::vector<int> tmp(it, it + sh.n_prem);
        for (int i = 0; i < sh.n_prem; ++i) it[sh.perm[i]] = tmp[i];
        return std::nullopt;
    }
    Event ev{st.rule, {}, {}};
    switch (st.rule) {
    case Rule::aid:
        ev.lower = {next_, next_ + 1};
        next_ += 2;
        cur_.insert(it, ev.lower.begin(), ev.lower.end());
        break;
    case Rule::awd:
        ev.lower = {next_++};
        cur_.insert(it, ev.lower[0]);
        break;
    case Rule::aiu:
        ev.upper = {it[0], it[1]};
        cur_.erase(it, it + 2);
        break;
    case Rule::awu:
        ev.upper = {it[0]};
        cur_.erase(it);
        break;
    case Rule::acd:
        ev.upper = {it[0], it[1]};
        ev.lower = {next_++};
        it[0] = ev.lower[0];
        cur_.erase(it + 1);
        break;
    case Rule::acu:
        ev.upper = {it[0]};
        ev.lower = {next_, next_ + 1};
        next_ += 2;
        it[0] = ev.lower[0];
        cur_.insert(cur_.begin() + sh.lo + 1, ev.lower[1]);
        break;
    default: break;
    }
    return ev;
}

Derivation include_in_context(const Formula& ctx, const Position& hole, const Derivation& d) {
    if (!valid_position(ctx, hole)) throw DomainError("invalid hole position " + path_string(hole));
    Derivation r;
    r.premiss = replace_at(ctx, hole, d.premiss);
    r.steps.reserve(d.steps.size());
    for (auto& st : d.steps) {
        Step s2 = st;
        s2.pos = hole + st.pos;
        s2.conclusion = replace_at(ctx, hole, st.conclusion);
        r.steps.push_back(std::move(s2));
    }
    return r;
}

Derivation compose(const Derivation& a, const Derivation& b) {
    if (!equal(a.conclusion(), b.premiss))
        throw DomainError("interface mismatch: " + to_string(a.conclusion()) + " vs " + to_string(b.premiss));
    Derivation r = a;
    r.steps.insert(r.steps.end(), b.steps.begin(), b.steps.end());
    return r;
}

Derivation dual_derivation(const Derivation& d) {
    Builder b(dual(d.conclusion()));
    for (std::size_t k = d.steps.size(); k-- > 0;) {
        const Step& st = d.steps[k];
        const Position& p = st.pos;
        Formula before = subformula_at(d.formula(k), p);
        if (st.rule == Rule::s) {
            // ([A,B],C) -> [A,(B,C)] needs the switch wrapped in commutations
            b.comm(p);
            b.comm(p + "R");
            b.s(p);
            b.comm(p);
            b.comm(p + "R");
            continue;
        }
        Eq e = st.eq;
        if (st.rule == Rule::eq && e == Eq::None) e = match_eq(before, subformula_at(st.conclusion, p));
        b.emit(dual_rule(st.rule), p, dual(before), dual_eq(e));
    }
    return b.finish();
}

Derivation reverse_linear(const Derivation& d) {
    Derivation r;
    r.premiss = d.conclusion();
    for (std::size_t k = d.steps.size(); k-- > 0;) {
        const Step& st = d.steps[k];
        if (st.rule != Rule::eq) throw DomainError("reverse_linear: non-eq step");
        Step s2 = st;
        s2.conclusion = d.formula(k);
        r.steps.push_back(std::move(s2));
    }
    return r;
}

Formula substitute_atoms(const Formula& f, const int* ids, const std::map<int, Formula>& sigma) {
    if (f->atoms == 0) return f;
    if (is_atom(f)) {
        auto it = sigma.find(ids[0]);
        return it == sigma.end() ? f : it->second;
    }
    bool touched = false;
    for (int i = 0; i < f->atoms && !touched; ++i) touched = sigma.count(ids[i]) > 0;
    if (!touched) return f;
    Formula l = substitute_atoms(f->l, ids, sigma);
    Formula r = substitute_atoms(f->r, ids + f->l->atoms, sigma);
    return f->kind == Kind::Dis ? mk_dis(l, r) : mk_con(l, r);
}

namespace {

using PathMap = std::vector<std::pair<Position, Position>>;

// metavariable placement for a checked step, premiss-relative -> conclusion-relative
PathMap metavariables(const Step& st, const Formula& A, const Formula& B) {
    switch (st.rule) {
    case Rule::s: return {{"L", "LL"}, {"RL", "LR"}, {"RR", "R"}};
    case Rule::m: return {{"LL", "LL"}, {"LR", "RL"}, {"RL", "LR"}, {"RR", "RR"}};
    case Rule::eq: {
        Eq e = st.eq != Eq::None ? st.eq : match_eq(A, B);
        switch (e) {
        case Eq::Comm: return {{"L", "R"}, {"R", "L"}};
        case Eq::Assoc:
            if (A->l->kind == A->kind && B->r->kind == A->kind && equal(A->l->l, B->l) && equal(A->r, B->r->r))
                return {{"LL", "L"}, {"LR", "RL"}, {"R", "RR"}};
            return {{"L", "LL"}, {"RL", "LR"}, {"RR", "R"}};
        case Eq::UnitF:
        case Eq::UnitT:
            if (A->size > B->size) return {{"L", ""}};
            return {{"", "L"}};
        default: return {};
        }
    }
    default: return {};
    }
}

}  // namespace

SubstResult substitute(const Derivation& d, const SubstTarget& target, const Formula& replacement, SubstMode mode) {
    SubstResult res;
    std::vector<Formula> fs(d.steps.size() + 1);
    if (mode == SubstMode::AtomToFormula) {
        std::map<int, Formula> sigma;
        for (int e : target.edges) sigma[e] = replacement;
        EdgeTracker tr(d.premiss);
        int max_id = 0;
        for (std::size_t k = 0; k <= d.steps.size(); ++k) {
            const Formula& F = d.formula(k);
            for (int x : tr.current()) max_id = std::max(max_id, x);
            fs[k] = substitute_atoms(F, tr.current().data(), sigma);
            if (k < d.steps.size()) tr.advance(F, d.steps[k]);
        }
        max_id = std::max(max_id, tr.next_id() - 1);
        for (int e : target.edges)
            if (e < 1 || e > max_id) throw DomainError("incoherent tracked set: no edge " + std::to_string(e));
    } else {
        for (std::size_t k = 0; k <= d.steps.size(); ++k) fs[k] = d.formula(k);
        std::size_t k = target.unit_formula;
        if (k > d.steps.size()) throw DomainError("incoherent tracked set: no formula " + std::to_string(k));
        Position p = target.unit_pos;
        if (!valid_position(fs[k], p) || !is_unit(subformula_at(fs[k], p)))
            throw DomainError("incoherent tracked set: no unit at " + path_string(p));
        for (;; ++k) {
            fs[k] = replace_at(fs[k], p, replacement);
            if (k == d.steps.size()) break;
            const Step& st = d.steps[k];
            const Position& q = st.pos;
            if (p.compare(0, q.size(), q) != 0) continue;
            Position rel = p.substr(q.size());
            Formula A = subformula_at(d.formula(k), q);
            Formula B = subformula_at(st.conclusion, q);
            bool moved = false;
            for (auto& [from, to] : metavariables(st, A, B)) {
                if (rel.compare(0, from.size(), from) == 0) {
                    p = q + to + rel.substr(from.size());
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            if (rel.empty() && (st.rule == Rule::aid || st.rule == Rule::awd)) break;
            throw DomainError("incoherent tracked set: unit consumed by " + std::string(rule_name(st.rule)) +
                              " at step " + std::to_string(k));
        }
    }
    res.candidate.premiss = fs[0];
    for (std::size_t k = 0; k < d.steps.size(); ++k) {
        Step s2 = d.steps[k];
        s2.conclusion = fs[k + 1];
        res.candidate.steps.push_back(std::move(s2));
    }
    res.report = check(res.candidate);
    return res;
}

// ---- builder

Builder::Builder(Formula start) : cur_(std::move(start)) { d_.premiss = cur_; }

void Builder::emit(Rule r, const Position& p, const Formula& contractum, Eq eq) {
    Formula next = replace_at(cur_, p, contractum);
    if (r == Rule::eq && eq != Eq::None && !d_.steps.empty()) {
        const Step& last = d_.steps.back();
        if (last.rule == Rule::eq && last.eq == eq && last.pos == p) {
            const Formula& before = d_.formula(d_.steps.size() - 1);
            if (equal(before, next)) {
                d_.steps.pop_back();
                cur_ = before;
                return;
            }
        }
    }
    d_.steps.push_back(Step{r, p, next, eq, tag_});
    cur_ = std::move(next);
}

namespace {

[[noreturn]] void shape_fail(const char* what, const Formula& f) {
    throw DomainError(std::string("builder: ") + what + " does not apply to " + to_string(f));
}

Formula rebin(Kind k, Formula a, Formula b) { return k == Kind::Dis ? mk_dis(a, b) : mk_con(a, b); }

}  // namespace

void Builder::comm(const Position& p) {
    Formula x = at(p);
    if (!is_bin(x)) shape_fail("comm", x);
    if (equal(x->l, x->r)) {
        if (x->l->atoms == 0) return;
        // identical sides: [a,a]=[a,a] is no equation, so go round through a unit
        // to keep the occurrences swapped
        bool dis = x->kind == Kind::Dis;
        if (dis) unit_in_f(p);
        else unit_in_t(p);
        assoc_lr(p);
        comm(p + "R");
        assoc_rl(p);
        comm(p);
        unit_out(p + "R");
        return;
    }
    emit(Rule::eq, p, rebin(x->kind, x->r, x->l), Eq::Comm);
}

void Builder::assoc_lr(const Position& p) {
    Formula x = at(p);
    if (!is_bin(x) || x->l->kind != x->kind) shape_fail("assoc_lr", x);
    emit(Rule::eq, p, rebin(x->kind, x->l->l, rebin(x->kind, x->l->r, x->r)), Eq::Assoc);
}

void Builder::assoc_rl(const Position& p) {
    Formula x = at(p);
    if (!is_bin(x) || x->r->kind != x->kind) shape_fail("assoc_rl", x);
    emit(Rule::eq, p, rebin(x->kind, rebin(x->kind, x->l, x->r->l), x->r->r), Eq::Assoc);
}

void Builder::unit_out(const Position& p) {
    Formula x = at(p);
    if (x->kind == Kind::Dis && x->r->kind == Kind::False) emit(Rule::eq, p, x->l, Eq::UnitF);
    else if (x->kind == Kind::Con && x->r->kind == Kind::True) emit(Rule::eq, p, x->l, Eq::UnitT);
    else if (x->kind == Kind::Dis && x->l->kind == Kind::True && x->r->kind == Kind::True)
        emit(Rule::eq, p, mk_true(), Eq::TT);
    else if (x->kind == Kind::Con && x->l->kind == Kind::False && x->r->kind == Kind::False)
        emit(Rule::eq, p, mk_false(), Eq::FF);
    else shape_fail("unit_out", x);
}

void Builder::unit_in_f(const Position& p) { emit(Rule::eq, p, mk_dis(at(p), mk_false()), Eq::UnitF); }
void Builder::unit_in_t(const Position& p) { emit(Rule::eq, p, mk_con(at(p), mk_true()), Eq::UnitT); }

void Builder::tt_in(const Position& p) {
    if (at(p)->kind != Kind::True) shape_fail("tt_in", at(p));
    emit(Rule::eq, p, mk_dis(mk_true(), mk_true()), Eq::TT);
}

void Builder::ff_in(const Position& p) {
    if (at(p)->kind != Kind::False) shape_fail("ff_in", at(p));
    emit(Rule::eq, p, mk_con(mk_false(), mk_false()), Eq::FF);
}

void Builder::s(const Position& p) {
    Formula x = at(p);
    if (x->kind != Kind::Con || x->r->kind != Kind::Dis) shape_fail("s", x);
    emit(Rule::s, p, mk_dis(mk_con(x->l, x->r->l), x->r->r));
}

void Builder::m(const Position& p) {
    Formula x = at(p);
    if (x->kind != Kind::Dis || x->l->kind != Kind::Con || x->r->kind != Kind::Con) shape_fail("m", x);
    emit(Rule::m, p, mk_con(mk_dis(x->l->l, x->r->l), mk_dis(x->l->r, x->r->r)));
}

void Builder::aid(const Position& p, const Atom& x) {
    if (at(p)->kind != Kind::True) shape_fail("aid", at(p));
    emit(Rule::aid, p, mk_dis(mk_atom(x), mk_atom(dual(x))));
}

void Builder::aiu(const Position& p) {
    Formula x = at(p);
    if (x->kind != Kind::Con || !dual_atoms(x->l, x->r)) shape_fail("aiu", x);
    emit(Rule::aiu, p, mk_false());
}

void Builder::awd(const Position& p, const Atom& x) {
    if (at(p)->kind != Kind::False) shape_fail("awd", at(p));
    emit(Rule::awd, p, mk_atom(x));
}

void Builder::awu(const Position& p) {
    if (!is_atom(at(p))) shape_fail("awu", at(p));
    emit(Rule::awu, p, mk_true());
}

void Builder::acd(const Position& p) {
    Formula x = at(p);
    if (x->kind != Kind::Dis || !is_atom(x->l) || !equal(x->l, x->r)) shape_fail("acd", x);
    emit(Rule::acd, p, x->l);
}

void Builder::acu(const Position& p) {
    Formula x = at(p);
    if (!is_atom(x)) shape_fail("acu", x);
    emit(Rule::acu, p, mk_con(x, x));
}

void Builder::append(const Derivation& d, const Position& prefix) {
    if (!equal(at(prefix), d.premiss))
        throw DomainError("builder: append mismatch, have " + to_string(at(prefix)) + " want " +
                          to_string(d.premiss));
    for (std::size_t k = 0; k < d.steps.size(); ++k) {
        const Step& st = d.steps[k];
        Formula c = subformula_at(st.conclusion, st.pos);
        Eq e = st.eq;
        if (st.rule == Rule::eq && e == Eq::None) e = match_eq(subformula_at(d.formula(k), st.pos), c);
        emit(st.rule, prefix + st.pos, c, e);
    }
}

// ---- macro constructions

void bring_in(Builder& b, const Position& p, const Position& hole) {
    if (hole.empty()) return;
    Formula x = b.at(p + "L");
    Position rest = hole.substr(1);
    if (x->kind == Kind::Dis) {
        if (hole[0] == 'R') {
            b.comm(p + "L");
            bring_in(b, p, "L" + rest);
            b.comm(p);
            return;
        }
        b.comm(p);
        b.s(p);
        b.comm(p + "L");
        bring_in(b, p + "L", rest);
    } else if (x->kind == Kind::Con) {
        if (hole[0] == 'R') {
            b.assoc_lr(p);
            bring_in(b, p + "R", rest);
            return;
        }
        b.assoc_lr(p);
        b.comm(p + "R");
        b.assoc_rl(p);
        bring_in(b, p + "L", rest);
    } else {
        throw DomainError("bring_in: hole runs into a leaf");
    }
}

void move_out(Builder& b, const Position& p, const Position& hole) {
    if (hole.empty()) {
        b.unit_in_f(p);
        b.comm(p);
        return;
    }
    Formula x = b.at(p);
    Position rest = hole.substr(1);
    if (x->kind == Kind::Con) {
        if (hole[0] == 'L') {
            move_out(b, p + "L", rest);
            b.comm(p);
            b.s(p);
            b.comm(p + "L");
        } else {
            move_out(b, p + "R", rest);
            b.s(p);
        }
    } else if (x->kind == Kind::Dis) {
        if (hole[0] == 'L') {
            move_out(b, p + "L", rest);
            b.assoc_lr(p);
            b.comm(p + "R");
            b.assoc_rl(p);
        } else {
            move_out(b, p + "R", rest);
            b.assoc_rl(p);
        }
    } else {
        throw DomainError("move_out: hole runs into a leaf");
    }
}

void super_switch(Builder& b, const Position& p, const Position& xi_hole, const Position& zeta_hole) {
    if (b.at(p + "L" + xi_hole)->kind != Kind::True) throw DomainError("super switch: xi hole is not t");
    if (xi_hole.empty() && zeta_hole.empty()) {
        // (t,a) -> (t,[a,f]) -> [(t,a),f] -> [a,f]
        b.unit_in_f(p + "R");
        b.s(p);
        b.comm(p + "L");
        b.unit_out(p + "L");
        return;
    }
    b.comm(p);
    bring_in(b, p, zeta_hole);
    Position q = p + zeta_hole;
    b.comm(q);
    bring_in(b, q, xi_hole);
    b.comm(q + xi_hole);
    b.unit_out(q + xi_hole);
    move_out(b, p, zeta_hole);
    b.comm(p);
}

void cocontract_generic(Builder& b, const Position& p) {
    Formula x = b.at(p);
    switch (x->kind) {
    case Kind::Atom: b.acu(p); return;
    case Kind::True: b.unit_in_t(p); return;
    case Kind::False: b.ff_in(p); return;
    case Kind::Dis:
        cocontract_generic(b, p + "L");
        cocontract_generic(b, p + "R");
        b.m(p);
        return;
    case Kind::Con:
        cocontract_generic(b, p + "L");
        cocontract_generic(b, p + "R");
        // ((a,a'),(b,b')) -> ((a,b),(a',b'))
        b.assoc_lr(p);
        b.assoc_rl(p + "R");
        b.comm(p + "RL");
        b.assoc_lr(p + "R");
        b.assoc_rl(p);
        return;
    }
}

void contract_generic(Builder& b, const Position& p) {
    Formula x = b.at(p);
    if (x->kind != Kind::Dis) throw DomainError("contract_generic: not a disjunction");
    Formula a = x->l;
    switch (a->kind) {
    case Kind::Atom: b.acd(p); return;
    case Kind::True: b.unit_out(p); return;
    case Kind::False: b.unit_out(p); return;
    case Kind::Con:
        b.m(p);
        contract_generic(b, p + "L");
        contract_generic(b, p + "R");
        return;
    case Kind::Dis:
        // [[a,b],[a',b']] -> [[a,a'],[b,b']]
        b.assoc_lr(p);
        b.assoc_rl(p + "R");
        b.comm(p + "RL");
        b.assoc_lr(p + "R");
        b.assoc_rl(p);
        contract_generic(b, p + "L");
        contract_generic(b, p + "R");
        return;
    }
}

void psi_block(Builder& b, const Position& p) {
    Position L = p + "L";
    b.unit_in_t(L + "L");
    b.unit_in_t(L + "R");
    b.comm(L + "R");
    b.m(L);
    b.comm(L + "R");
    b.s(L);
    b.comm(L + "L");
    b.s(L + "L");
    b.assoc_lr(L);
    b.unit_out(L + "R");
    b.assoc_lr(p);
    b.unit_out(p + "R");
    b.comm(L);
}

void unit_normalize(Builder& b, const Position& p) {
    Formula x = b.at(p);
    if (x->atoms != 0) throw DomainError("unit_normalize: formula has atoms");
    if (!is_bin(x)) return;
    unit_normalize(b, p + "L");
    unit_normalize(b, p + "R");
    x = b.at(p);
    bool lt = x->l->kind == Kind::True, rt = x->r->kind == Kind::True;
    if (x->kind == Kind::Dis) {
        if (lt && rt) b.unit_out(p);        // [t,t]
        else if (!rt) b.unit_out(p);        // [a,f]
        else {                              // [f,t]
            b.comm(p);
            b.unit_out(p);
        }
    } else {
        if (rt) b.unit_out(p);              // (a,t)
        else if (!lt) b.unit_out(p);        // (f,f)
        else {                              // (t,f)
            b.comm(p);
            b.unit_out(p);
        }
    }
}

Derivation build_super_switch(const Formula& xi, const Position& xi_hole, const Formula& zeta,
                              const Position& zeta_hole, const Formula& alpha) {
    Builder b(mk_con(replace_at(xi, xi_hole, mk_true()), replace_at(zeta, zeta_hole, alpha)));
    b.set_tag("ss");
    super_switch(b, "", xi_hole, zeta_hole);
    return b.finish();
}

Derivation build_generic_contraction(const Formula& alpha, Direction dir) {
    if (dir == Direction::Up) {
        Builder b(alpha);
        b.set_tag("cu_generic");
        cocontract_generic(b, "");
        return b.finish();
    }
    Builder b(mk_dis(alpha, alpha));
    b.set_tag("cd_generic");
    contract_generic(b, "");
    return b.finish();
}

}  // namespace sks
