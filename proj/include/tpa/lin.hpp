#pragma once

#include "tpa/rational.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace tpa {

using AtomId = int;

// Solver atoms: time variables, canonicalized symbolic distances d(A,B),
// named symbolic constants (the neighbourhood bound d) and monus values.
struct Atom {
    enum class Kind { Time, Dist, Sym, Monus };
    Kind kind;
    std::string a; // Time/Sym/Monus: name; Dist: first participant
    std::string b; // Dist: second participant

    auto operator<=>(const Atom&) const = default;
};

// Process-wide atom interner. d(A,B) and d(B,A) map to one atom; d(A,A)
// has no atom at all (callers fold it to the constant 0).
class AtomTable {
  public:
    static AtomTable& instance();

    AtomId time_var(const std::string& name);
    // Returns -1 when a == b (distance is identically zero).
    AtomId dist(const std::string& a, const std::string& b);
    AtomId sym(const std::string& name);
    AtomId fresh_monus();

    const Atom& atom(AtomId id) const;
    std::string name(AtomId id) const;     // display name, e.g. "d(p,v)"
    std::string smt_name(AtomId id) const; // sanitized SMT-LIB2 symbol
    std::size_t size() const { return atoms_.size(); }

  private:
    AtomId intern(const Atom& a);
    std::vector<Atom> atoms_;
    std::map<Atom, AtomId> index_;
    int monus_counter_ = 0;
};

// Linear expression: rational constant plus rational coefficients per atom.
class LinExpr {
  public:
    LinExpr() = default;
    explicit LinExpr(Rat constant) : cst_(std::move(constant)) {}
    static LinExpr var(AtomId id) {
        LinExpr e;
        e.coeffs_[id] = 1;
        return e;
    }

    LinExpr& operator+=(const LinExpr& o);
    LinExpr& operator-=(const LinExpr& o);
    LinExpr& operator*=(const Rat& k);
    friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
    friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
    friend LinExpr operator*(LinExpr a, const Rat& k) { return a *= k; }

    const Rat& constant() const { return cst_; }
    const std::map<AtomId, Rat>& coeffs() const { return coeffs_; }
    Rat coeff(AtomId id) const;
    bool is_constant() const { return coeffs_.empty(); }

    // Replaces `id` by `by` (used by equality elimination).
    LinExpr substituted(AtomId id, const LinExpr& by) const;
    Rat evaluate(const std::map<AtomId, Rat>& assignment) const;
    std::string to_string() const;

  private:
    Rat cst_ = 0;
    std::map<AtomId, Rat> coeffs_; // zero coefficients are never stored
};

enum class Rel { Eq, Le, Lt }; // expr = 0, expr <= 0, expr < 0

struct LinConstraint {
    LinExpr expr;
    Rel rel;

    bool evaluate(const std::map<AtomId, Rat>& assignment) const;
    std::string to_string() const;
};

LinConstraint make_eq(LinExpr lhs, LinExpr rhs);
LinConstraint make_le(LinExpr lhs, LinExpr rhs); // lhs <= rhs
LinConstraint make_lt(LinExpr lhs, LinExpr rhs);
LinConstraint make_ge(LinExpr lhs, LinExpr rhs);
LinConstraint make_gt(LinExpr lhs, LinExpr rhs);

// x (-.) y: eliminated before solving by the two-way case split.
struct MonusDef {
    AtomId atom;
    LinExpr x;
    LinExpr y;
};

// Append-only constraint store with mark/undo so a search can conjoin,
// test satisfiability and backtrack cheaply.
class ConstraintSet {
  public:
    void add(LinConstraint c) { items_.push_back(std::move(c)); }
    // Registers x (-.) y and returns the atom standing for its value.
    AtomId add_monus(LinExpr x, LinExpr y);

    const std::vector<LinConstraint>& items() const { return items_; }
    const std::vector<MonusDef>& monus_defs() const { return monus_defs_; }
    bool monus_free() const { return monus_defs_.empty(); }
    std::size_t size() const { return items_.size(); }

    struct Mark {
        std::size_t items;
        std::size_t monus;
    };
    Mark mark() const { return {items_.size(), monus_defs_.size()}; }
    void undo(Mark m);

    // Evaluates every constraint and monus definition under `assignment`.
    bool evaluate(const std::map<AtomId, Rat>& assignment) const;

  private:
    std::vector<LinConstraint> items_;
    std::vector<MonusDef> monus_defs_;
};

// Disjunctive case split over all pending monus definitions: for m = x(-.)y
// one branch adds {y < x, m = x-y}, the other {y >= x, m = 0}. The union of
// branch solution sets equals the input's.
std::vector<ConstraintSet> eliminate_monus(const ConstraintSet& cs);

struct SatResult {
    bool sat = false;
    std::map<AtomId, Rat> witness; // populated iff sat
};

class SolverLimitError : public std::runtime_error {
  public:
    explicit SolverLimitError(const std::string& what) : std::runtime_error(what) {}
};

// Fourier-Motzkin with exact rationals. Requires a monus-free set. The
// returned witness is verified against the input inside the solver.
// `force_order`, when nonempty, pins the elimination order (used by the
// order-independence tests). Throws SolverLimitError past `max_constraints`.
SatResult solve_monus_free(const ConstraintSet& cs,
                           const std::vector<AtomId>& force_order = {},
                           std::size_t max_constraints = 2000000);

// Satisfiability of a set with monus: ORs the eliminate_monus branches.
SatResult is_satisfiable(const ConstraintSet& cs);

// SMT-LIB2 rendering (QF_LRA); monus definitions become ite assertions.
std::string export_smtlib(const ConstraintSet& cs);

} // namespace tpa
