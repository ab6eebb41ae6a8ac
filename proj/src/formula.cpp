#include "sks/formula.hpp"

#include <functional>

namespace sks {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

Formula make_leaf(Kind k, const std::string& name, bool neg) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->name = name;
    n->neg = neg;
    n->atoms = k == Kind::Atom ? 1 : 0;
    n->hash = mix(mix(static_cast<std::size_t>(k), std::hash<std::string>{}(name)), neg);
    return n;
}

Formula make_bin(Kind k, Formula a, Formula b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->atoms = a->atoms + b->atoms;
    n->size = a->size + b->size + 1;
    n->hash = mix(mix(static_cast<std::size_t>(k) * 31, a->hash), b->hash);
    n->l = std::move(a);
    n->r = std::move(b);
    return n;
}

}  // namespace

Atom dual(const Atom& a) { return {a.name, !a.neg}; }

std::string to_string(const Atom& a) { return (a.neg ? "-" : "") + a.name; }

Formula mk_true() {
    static const Formula t = make_leaf(Kind::True, "", false);
    return t;
}

Formula mk_false() {
    static const Formula f = make_leaf(Kind::False, "", false);
    return f;
}

Formula mk_atom(const std::string& name, bool neg) {
    if (!valid_atom_name(name)) throw DomainError("bad atom name '" + name + "'");
    return make_leaf(Kind::Atom, name, neg);
}

Formula mk_atom(const Atom& a) { return mk_atom(a.name, a.neg); }
Formula mk_dis(Formula a, Formula b) { return make_bin(Kind::Dis, std::move(a), std::move(b)); }
Formula mk_con(Formula a, Formula b) { return make_bin(Kind::Con, std::move(a), std::move(b)); }

Atom atom_of(const Formula& f) {
    if (!is_atom(f)) throw DomainError("not an atom: " + to_string(f));
    return {f->name, f->neg};
}

bool equal(const Formula& a, const Formula& b) {
    if (a == b) return true;
    if (a->hash != b->hash || a->kind != b->kind || a->size != b->size) return false;
    switch (a->kind) {
    case Kind::True:
    case Kind::False:
        return true;
    case Kind::Atom:
        return a->neg == b->neg && a->name == b->name;
    default:
        return equal(a->l, b->l) && equal(a->r, b->r);
    }
}

namespace {

void print(const Formula& f, std::string& out) {
    switch (f->kind) {
    case Kind::True: out += 't'; break;
    case Kind::False: out += 'f'; break;
    case Kind::Atom:
        if (f->neg) out += '-';
        out += f->name;
        break;
    case Kind::Dis:
    case Kind::Con:
        out += f->kind == Kind::Dis ? '[' : '(';
        print(f->l, out);
        out += ',';
        print(f->r, out);
        out += f->kind == Kind::Dis ? ']' : ')';
        break;
    }
}

struct Parser {
    std::string_view s;
    std::size_t i = 0;

    void ws() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
    }
    [[noreturn]] void fail(const std::string& what) { throw ParseError(what, i); }
    void expect(char c) {
        ws();
        if (i >= s.size() || s[i] != c) fail(std::string("expected '") + c + "'");
        ++i;
    }
    std::string ident() {
        std::size_t b = i;
        if (i >= s.size() || s[i] < 'a' || s[i] > 'z') fail("expected atom");
        while (i < s.size() && ((s[i] >= 'a' && s[i] <= 'z') || (s[i] >= '0' && s[i] <= '9') || s[i] == '_')) ++i;
        return std::string(s.substr(b, i - b));
    }
    Formula formula() {
        ws();
        if (i >= s.size()) fail("unexpected end of input");
        char c = s[i];
        if (c == '[' || c == '(') {
            ++i;
            Formula a = formula();
            expect(',');
            Formula b = formula();
            expect(c == '[' ? ']' : ')');
            return c == '[' ? mk_dis(a, b) : mk_con(a, b);
        }
        if (c == '-') {
            ++i;
            ws();
            std::size_t at = i;
            std::string n = ident();
            if (n == "t" || n == "f") throw ParseError("units cannot be negated", at);
            return mk_atom(n, true);
        }
        std::string n = ident();
        if (n == "t") return mk_true();
        if (n == "f") return mk_false();
        return mk_atom(n, false);
    }
};

}  // namespace

std::string to_string(const Formula& f) {
    std::string out;
    print(f, out);
    return out;
}

bool valid_atom_name(std::string_view s) {
    if (s.empty() || s == "t" || s == "f") return false;
    if (s[0] < 'a' || s[0] > 'z') return false;
    for (char c : s)
        if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
    return true;
}

Formula parse_formula(std::string_view text) {
    Parser p{text};
    Formula f = p.formula();
    p.ws();
    if (p.i != text.size()) p.fail("trailing input");
    return f;
}

Formula dual(const Formula& f) {
    switch (f->kind) {
    case Kind::True: return mk_false();
    case Kind::False: return mk_true();
    case Kind::Atom: return make_leaf(Kind::Atom, f->name, !f->neg);
    case Kind::Dis: return mk_con(dual(f->l), dual(f->r));
    case Kind::Con: return mk_dis(dual(f->l), dual(f->r));
    }
    return f;
}

bool valid_position(const Formula& f, const Position& p) {
    const Node* n = f.get();
    for (char c : p) {
        if (n->kind != Kind::Dis && n->kind != Kind::Con) return false;
        if (c == 'L') n = n->l.get();
        else if (c == 'R') n = n->r.get();
        else return false;
    }
    return true;
}

Formula subformula_at(const Formula& f, const Position& p) {
    Formula n = f;
    for (char c : p) {
        if (!is_bin(n) || (c != 'L' && c != 'R'))
            throw DomainError("invalid position " + path_string(p) + " in " + to_string(f));
        n = c == 'L' ? n->l : n->r;
    }
    return n;
}

namespace {

Formula replace_rec(const Formula& f, const Position& p, std::size_t k, const Formula& g) {
    if (k == p.size()) return g;
    if (!is_bin(f) || (p[k] != 'L' && p[k] != 'R')) throw DomainError("invalid position " + path_string(p));
    if (p[k] == 'L') return make_bin(f->kind, replace_rec(f->l, p, k + 1, g), f->r);
    return make_bin(f->kind, f->l, replace_rec(f->r, p, k + 1, g));
}

void collect(const Formula& f, Position& cur, std::vector<Position>& out) {
    if (is_atom(f)) {
        out.push_back(cur);
        return;
    }
    if (!is_bin(f)) return;
    cur.push_back('L');
    collect(f->l, cur, out);
    cur.back() = 'R';
    collect(f->r, cur, out);
    cur.pop_back();
}

void collect_atoms(const Formula& f, std::vector<Atom>& out) {
    if (is_atom(f)) out.push_back(atom_of(f));
    else if (is_bin(f)) {
        collect_atoms(f->l, out);
        collect_atoms(f->r, out);
    }
}

}  // namespace

Formula replace_at(const Formula& f, const Position& p, const Formula& g) { return replace_rec(f, p, 0, g); }

int atom_offset(const Formula& f, const Position& p) {
    int off = 0;
    const Node* n = f.get();
    for (char c : p) {
        if (n->kind != Kind::Dis && n->kind != Kind::Con) throw DomainError("invalid position " + path_string(p));
        if (c == 'R') {
            off += n->l->atoms;
            n = n->r.get();
        } else {
            n = n->l.get();
        }
    }
    return off;
}

std::vector<Position> atom_positions(const Formula& f) {
    std::vector<Position> out;
    Position cur;
    collect(f, cur, out);
    return out;
}

std::vector<Atom> atoms(const Formula& f) {
    std::vector<Atom> out;
    collect_atoms(f, out);
    return out;
}

std::string path_string(const Position& p) {
    if (p.empty()) return "/";
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += '/';
        s += p[i];
    }
    return s;
}

Position parse_path(std::string_view s) {
    Position p;
    for (char c : s) {
        if (c == 'L' || c == 'R') p.push_back(c);
        else if (c != '/' && c != ' ') throw DomainError("bad path '" + std::string(s) + "'");
    }
    return p;
}

const char* eq_name(Eq e) {
    switch (e) {
    case Eq::Comm: return "comm";
    case Eq::UnitF: return "unit_f";
    case Eq::UnitT: return "unit_t";
    case Eq::Assoc: return "assoc";
    case Eq::TT: return "tt";
    case Eq::FF: return "ff";
    default: return "none";
    }
}

Eq eq_from_name(std::string_view s) {
    for (Eq e : {Eq::Comm, Eq::UnitF, Eq::UnitT, Eq::Assoc, Eq::TT, Eq::FF})
        if (s == eq_name(e)) return e;
    return Eq::None;
}

namespace {

// a is the left-hand side as printed
bool eq_oriented(Eq e, const Formula& a, const Formula& b) {
    switch (e) {
    case Eq::Comm:
        return is_bin(a) && a->kind == b->kind && equal(a->l, b->r) && equal(a->r, b->l);
    case Eq::UnitF:
        return a->kind == Kind::Dis && a->r->kind == Kind::False && equal(a->l, b);
    case Eq::UnitT:
        return a->kind == Kind::Con && a->r->kind == Kind::True && equal(a->l, b);
    case Eq::Assoc:
        return is_bin(a) && a->kind == b->kind && a->l->kind == a->kind && b->r->kind == a->kind &&
               equal(a->l->l, b->l) && equal(a->l->r, b->r->l) && equal(a->r, b->r->r);
    case Eq::TT:
        return a->kind == Kind::Dis && a->l->kind == Kind::True && a->r->kind == Kind::True && b->kind == Kind::True;
    case Eq::FF:
        return a->kind == Kind::Con && a->l->kind == Kind::False && a->r->kind == Kind::False &&
               b->kind == Kind::False;
    default:
        return false;
    }
}

}  // namespace

bool eq_holds(Eq e, const Formula& a, const Formula& b) {
    if (equal(a, b)) return false;
    return eq_oriented(e, a, b) || eq_oriented(e, b, a);
}

Eq match_eq(const Formula& a, const Formula& b) {
    for (Eq e : {Eq::Comm, Eq::UnitF, Eq::UnitT, Eq::Assoc, Eq::TT, Eq::FF})
        if (eq_holds(e, a, b)) return e;
    return Eq::None;
}

bool check_eq_instance(const Formula& a, const Formula& b) { return match_eq(a, b) != Eq::None; }

}  // namespace sks
