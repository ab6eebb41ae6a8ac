#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sks {

// invalid input or violated precondition; the cli maps this to exit 1
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : DomainError {
    std::size_t offset;
    ParseError(const std::string& msg, std::size_t off)
        : DomainError(msg + " at offset " + std::to_string(off)), offset(off) {}
};

// cap hit (cycle enumeration, rewriting loops)
struct ResourceError : DomainError {
    using DomainError::DomainError;
};

enum class Kind : unsigned char { False, True, Atom, Dis, Con };

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
    Kind kind;
    bool neg = false;
    std::string name;
    Formula l, r;
    int atoms = 0;  // atom leaves below
    int size = 1;
    std::size_t hash = 0;
};

struct Atom {
    std::string name;
    bool neg = false;
    bool operator==(const Atom&) const = default;
};

Atom dual(const Atom& a);
std::string to_string(const Atom& a);

Formula mk_true();
Formula mk_false();
Formula mk_atom(const std::string& name, bool neg = false);
Formula mk_atom(const Atom& a);
Formula mk_dis(Formula a, Formula b);
Formula mk_con(Formula a, Formula b);

inline bool is_unit(const Formula& f) { return f->kind == Kind::True || f->kind == Kind::False; }
inline bool is_atom(const Formula& f) { return f->kind == Kind::Atom; }
inline bool is_bin(const Formula& f) { return f->kind == Kind::Dis || f->kind == Kind::Con; }
Atom atom_of(const Formula& f);

bool equal(const Formula& a, const Formula& b);

std::string to_string(const Formula& f);
Formula parse_formula(std::string_view text);
bool valid_atom_name(std::string_view s);

// de Morgan dual: swap connectives and units, flip atoms
Formula dual(const Formula& f);

// position = string over {'L','R'}; "" is the root
using Position = std::string;

bool valid_position(const Formula& f, const Position& p);
Formula subformula_at(const Formula& f, const Position& p);
Formula replace_at(const Formula& f, const Position& p, const Formula& g);
// index of the first atom of the subformula at p, in left-to-right order
int atom_offset(const Formula& f, const Position& p);
std::vector<Position> atom_positions(const Formula& f);
std::vector<Atom> atoms(const Formula& f);

// "L/R" style; root is "/"
std::string path_string(const Position& p);
Position parse_path(std::string_view s);

// one equation, applied at the root
enum class Eq : unsigned char { None, Comm, UnitF, UnitT, Assoc, TT, FF };

const char* eq_name(Eq e);
Eq eq_from_name(std::string_view s);
// first equation (in the listed order) with (a,b) as opposite sides, else None
Eq match_eq(const Formula& a, const Formula& b);
bool eq_holds(Eq e, const Formula& a, const Formula& b);
bool check_eq_instance(const Formula& a, const Formula& b);

}  // namespace sks
