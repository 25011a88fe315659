#include "tpa/lin.hpp"

#include <algorithm>
#include <mutex>

namespace tpa {

namespace {
std::mutex g_atom_mutex;
}

AtomTable& AtomTable::instance() {
    static AtomTable table;
    return table;
}

AtomId AtomTable::intern(const Atom& a) {
    std::lock_guard<std::mutex> lock(g_atom_mutex);
    auto it = index_.find(a);
    if (it != index_.end()) return it->second;
    AtomId id = static_cast<AtomId>(atoms_.size());
    atoms_.push_back(a);
    index_.emplace(a, id);
    return id;
}

AtomId AtomTable::time_var(const std::string& name) {
    return intern(Atom{Atom::Kind::Time, name, ""});
}

AtomId AtomTable::dist(const std::string& a, const std::string& b) {
    if (a == b) return -1;
    if (a < b) return intern(Atom{Atom::Kind::Dist, a, b});
    return intern(Atom{Atom::Kind::Dist, b, a});
}

AtomId AtomTable::sym(const std::string& name) {
    return intern(Atom{Atom::Kind::Sym, name, ""});
}

AtomId AtomTable::fresh_monus() {
    std::string name;
    {
        std::lock_guard<std::mutex> lock(g_atom_mutex);
        name = "m" + std::to_string(++monus_counter_);
    }
    return intern(Atom{Atom::Kind::Monus, name, ""});
}

const Atom& AtomTable::atom(AtomId id) const { return atoms_.at(static_cast<std::size_t>(id)); }

std::string AtomTable::name(AtomId id) const {
    const Atom& a = atom(id);
    switch (a.kind) {
    case Atom::Kind::Dist: return "d(" + a.a + "," + a.b + ")";
    default: return a.a;
    }
}

std::string AtomTable::smt_name(AtomId id) const {
    const Atom& a = atom(id);
    std::string raw;
    if (a.kind == Atom::Kind::Dist)
        raw = "d_" + a.a + "_" + a.b;
    else
        raw = a.a;
    for (char& c : raw)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') c = '_';
    return raw;
}

LinExpr& LinExpr::operator+=(const LinExpr& o) {
    cst_ += o.cst_;
    for (const auto& [id, k] : o.coeffs_) {
        Rat& c = coeffs_[id];
        c += k;
        if (c == 0) coeffs_.erase(id);
    }
    return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& o) {
    cst_ -= o.cst_;
    for (const auto& [id, k] : o.coeffs_) {
        Rat& c = coeffs_[id];
        c -= k;
        if (c == 0) coeffs_.erase(id);
    }
    return *this;
}

LinExpr& LinExpr::operator*=(const Rat& k) {
    if (k == 0) {
        coeffs_.clear();
        cst_ = 0;
        return *this;
    }
    cst_ *= k;
    for (auto& [id, c] : coeffs_) c *= k;
    return *this;
}

Rat LinExpr::coeff(AtomId id) const {
    auto it = coeffs_.find(id);
    return it == coeffs_.end() ? Rat(0) : it->second;
}

LinExpr LinExpr::substituted(AtomId id, const LinExpr& by) const {
    auto it = coeffs_.find(id);
    if (it == coeffs_.end()) return *this;
    LinExpr out = *this;
    Rat k = it->second;
    out.coeffs_.erase(id);
    LinExpr scaled = by;
    scaled *= k;
    out += scaled;
    return out;
}

Rat LinExpr::evaluate(const std::map<AtomId, Rat>& assignment) const {
    Rat v = cst_;
    for (const auto& [id, k] : coeffs_) {
        auto it = assignment.find(id);
        Rat value = it == assignment.end() ? Rat(0) : it->second;
        v += k * value;
    }
    return v;
}

std::string LinExpr::to_string() const {
    std::string out;
    bool first = true;
    for (const auto& [id, k] : coeffs_) {
        std::string term = AtomTable::instance().name(id);
        if (k != 1 && k != -1) term = rat_to_string(k < 0 ? Rat(-k) : k) + "*" + term;
        if (first) {
            out += (k < 0 ? "-" : "") + term;
            first = false;
        } else {
            out += (k < 0 ? " - " : " + ") + term;
        }
    }
    if (cst_ != 0 || first) {
        std::string c = rat_to_string(cst_ < 0 ? Rat(-cst_) : cst_);
        if (first)
            out += (cst_ < 0 ? "-" : "") + c;
        else
            out += (cst_ < 0 ? " - " : " + ") + c;
    }
    return out;
}

bool LinConstraint::evaluate(const std::map<AtomId, Rat>& assignment) const {
    Rat v = expr.evaluate(assignment);
    switch (rel) {
    case Rel::Eq: return v == 0;
    case Rel::Le: return v <= 0;
    case Rel::Lt: return v < 0;
    }
    return false;
}

std::string LinConstraint::to_string() const {
    const char* op = rel == Rel::Eq ? " = 0" : rel == Rel::Le ? " <= 0" : " < 0";
    return expr.to_string() + op;
}

LinConstraint make_eq(LinExpr lhs, LinExpr rhs) { return {lhs - rhs, Rel::Eq}; }
LinConstraint make_le(LinExpr lhs, LinExpr rhs) { return {lhs - rhs, Rel::Le}; }
LinConstraint make_lt(LinExpr lhs, LinExpr rhs) { return {lhs - rhs, Rel::Lt}; }
LinConstraint make_ge(LinExpr lhs, LinExpr rhs) { return {rhs - lhs, Rel::Le}; }
LinConstraint make_gt(LinExpr lhs, LinExpr rhs) { return {rhs - lhs, Rel::Lt}; }

AtomId ConstraintSet::add_monus(LinExpr x, LinExpr y) {
    AtomId m = AtomTable::instance().fresh_monus();
    monus_defs_.push_back(MonusDef{m, std::move(x), std::move(y)});
    return m;
}

void ConstraintSet::undo(Mark m) {
    items_.resize(m.items);
    monus_defs_.resize(m.monus);
}

bool ConstraintSet::evaluate(const std::map<AtomId, Rat>& assignment) const {
    for (const auto& c : items_)
        if (!c.evaluate(assignment)) return false;
    for (const auto& d : monus_defs_) {
        Rat x = d.x.evaluate(assignment);
        Rat y = d.y.evaluate(assignment);
        Rat expect = y < x ? Rat(x - y) : Rat(0);
        auto it = assignment.find(d.atom);
        Rat got = it == assignment.end() ? Rat(0) : it->second;
        if (got != expect) return false;
    }
    return true;
}

std::vector<ConstraintSet> eliminate_monus(const ConstraintSet& cs) {
    std::vector<ConstraintSet> branches;
    ConstraintSet base;
    for (const auto& c : cs.items()) base.add(c);
    branches.push_back(std::move(base));
    for (const auto& def : cs.monus_defs()) {
        std::vector<ConstraintSet> next;
        next.reserve(branches.size() * 2);
        for (const auto& br : branches) {
            LinExpr m = LinExpr::var(def.atom);
            ConstraintSet pos = br; // y < x, m = x - y
            pos.add(make_lt(def.y, def.x));
            pos.add(make_eq(m, def.x - def.y));
            next.push_back(std::move(pos));
            ConstraintSet zero = br; // y >= x, m = 0
            zero.add(make_le(def.x, def.y));
            zero.add(make_eq(m, LinExpr(Rat(0))));
            next.push_back(std::move(zero));
        }
        branches = std::move(next);
    }
    return branches;
}

SatResult is_satisfiable(const ConstraintSet& cs) {
    for (auto& branch : eliminate_monus(cs)) {
        SatResult r = solve_monus_free(branch);
        if (r.sat) return r;
    }
    return SatResult{};
}

} // namespace tpa
