#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tpa {

// The four variable kinds of the process algebra. They are disjoint: a
// variable's identity is its (name, kind) pair.
enum class VarKind { Fresh, Choice, Pattern, Time };

// Small sort lattice: Agent < Msg and Fresh < Msg; Real is only used for
// time variables, which never occur inside messages.
enum class Sort { Msg, Agent, Fresh, Real };

bool sort_leq(Sort sub, Sort sup);

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Message terms. Instances are immutable and freely shared between search
// workers. Xor nodes keep their operands flattened, sorted and cancelled
// (nilpotence), Cat nodes keep operands flattened; both invariants are
// maintained by the builders below, so structural equality coincides with
// equality modulo AC(xor) + unit + nilpotence + associativity of ";".
struct Term {
    enum class Tag { Zero, True, Const, Var, App, Cat, Xor };

    Tag tag = Tag::Zero;
    std::string sym;                // Const/App/Var name
    VarKind vkind = VarKind::Pattern; // Var only
    Sort sort = Sort::Msg;
    std::vector<TermPtr> args;      // App arguments, Cat sequence, Xor operand set

    Sort term_sort() const;
};

TermPtr mk_zero();
TermPtr mk_true();
TermPtr mk_const(std::string name, Sort sort = Sort::Msg);
TermPtr mk_agent(std::string name);
TermPtr mk_var(std::string name, VarKind kind, Sort sort = Sort::Msg);
TermPtr mk_app(std::string sym, std::vector<TermPtr> args);
TermPtr mk_cat(std::vector<TermPtr> parts);      // ";" concatenation
TermPtr mk_xor(std::vector<TermPtr> parts);

// Convenience constructors for the protocol signature.
TermPtr mk_nonce(TermPtr agent, TermPtr fresh);
TermPtr mk_secret(TermPtr agent, TermPtr fresh);
TermPtr mk_commit(TermPtr n, TermPtr s);
TermPtr mk_open(TermPtr n, TermPtr s, TermPtr c);
TermPtr mk_sign(TermPtr agent, TermPtr body);

int term_cmp(const Term& a, const Term& b);
bool term_eq(const TermPtr& a, const TermPtr& b);
std::string term_to_string(const TermPtr& t);

// Unique normal form under: xor AC + unit + nilpotence, ";" associativity,
// and open(N,S,commit(N,S)) -> true. Total and idempotent.
TermPtr normalize(const TermPtr& t);

struct VarId {
    std::string name;
    VarKind kind;
    auto operator<=>(const VarId&) const = default;
};

void collect_vars(const TermPtr& t, std::set<VarId>& out);
std::set<VarId> vars_of(const TermPtr& t);
bool is_ground(const TermPtr& t); // no choice/pattern variables

// Finite idempotent map from variables to terms.
class Subst {
  public:
    Subst() = default;

    bool bind(const VarId& v, const TermPtr& t); // false on conflicting rebind
    const TermPtr* lookup(const VarId& v) const;
    bool empty() const { return map_.empty(); }
    std::size_t size() const { return map_.size(); }
    const std::map<VarId, TermPtr>& entries() const { return map_; }

    // Extends this substitution with every binding of `other`; false if any
    // binding conflicts.
    bool merge(const Subst& other);

  private:
    std::map<VarId, TermPtr> map_;
};

// Homomorphic application followed by normalize.
TermPtr apply(const Subst& sigma, const TermPtr& t);

// Matching modulo AC(xor) + unit + nilpotence and ";" associativity,
// restricted to cancellation-free solutions: every binding is built from
// the ground term's own subterms (plus 0). Enumerates up to `limit`
// distinct solutions; `match` returns the first.
std::vector<Subst> match_all(const TermPtr& pattern, const TermPtr& ground,
                             std::size_t limit = 64);
std::optional<Subst> match(const TermPtr& pattern, const TermPtr& ground);

// Renames every fresh variable `f` in t to `f@<role><instance>`; the result
// only depends on (t, role, instance).
TermPtr fresh_rename(const TermPtr& t, const std::string& role, int instance);

} // namespace tpa
