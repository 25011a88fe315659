#include "tpa/lin.hpp"

#include <set>

namespace tpa {

namespace {

std::string smt_monomial(const Rat& k, AtomId id) {
    const auto& table = AtomTable::instance();
    if (k == 1) return table.smt_name(id);
    return "(* " + rat_to_smt(k) + " " + table.smt_name(id) + ")";
}

std::string smt_sum(const std::vector<std::string>& parts) {
    if (parts.empty()) return "0";
    if (parts.size() == 1) return parts[0];
    std::string out = "(+";
    for (const auto& p : parts) out += " " + p;
    return out + ")";
}

// full linear rendering, used for monus definitions
std::string smt_expr(const LinExpr& e) {
    std::vector<std::string> parts;
    if (e.constant() != 0) parts.push_back(rat_to_smt(e.constant()));
    for (const auto& [id, k] : e.coeffs()) parts.push_back(smt_monomial(k, id));
    return smt_sum(parts);
}

// e rel 0 rendered as (rel positive-part negative-part)
std::string smt_constraint(const LinConstraint& c) {
    std::vector<std::string> lhs, rhs;
    if (c.expr.constant() > 0) lhs.push_back(rat_to_smt(c.expr.constant()));
    if (c.expr.constant() < 0) rhs.push_back(rat_to_smt(Rat(-c.expr.constant())));
    for (const auto& [id, k] : c.expr.coeffs()) {
        if (k > 0)
            lhs.push_back(smt_monomial(k, id));
        else
            rhs.push_back(smt_monomial(Rat(-k), id));
    }
    const char* op = c.rel == Rel::Eq ? "=" : c.rel == Rel::Le ? "<=" : "<";
    return std::string("(") + op + " " + smt_sum(lhs) + " " + smt_sum(rhs) + ")";
}

} // namespace

std::string export_smtlib(const ConstraintSet& cs) {
    const auto& table = AtomTable::instance();
    std::set<AtomId> atoms;
    auto collect = [&](const LinExpr& e) {
        for (const auto& [id, k] : e.coeffs()) atoms.insert(id);
    };
    for (const auto& c : cs.items()) collect(c.expr);
    for (const auto& d : cs.monus_defs()) {
        atoms.insert(d.atom);
        collect(d.x);
        collect(d.y);
    }

    std::vector<AtomId> ordered(atoms.begin(), atoms.end());
    std::sort(ordered.begin(), ordered.end(), [&](AtomId a, AtomId b) {
        return table.smt_name(a) < table.smt_name(b);
    });

    std::string out = "(set-logic QF_LRA)\n";
    for (AtomId id : ordered)
        out += "(declare-const " + table.smt_name(id) + " Real)\n";
    for (AtomId id : ordered)
        if (table.atom(id).kind == Atom::Kind::Dist)
            out += "(assert (>= " + table.smt_name(id) + " 0))\n";
    for (const auto& d : cs.monus_defs())
        out += "(assert (= " + table.smt_name(d.atom) + " (ite (< " + smt_expr(d.y) + " " +
               smt_expr(d.x) + ") (- " + smt_expr(d.x) + " " + smt_expr(d.y) + ") 0)))\n";
    for (const auto& c : cs.items()) out += "(assert " + smt_constraint(c) + ")\n";
    out += "(check-sat)\n";
    return out;
}

} // namespace tpa
