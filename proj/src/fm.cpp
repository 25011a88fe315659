#include "tpa/lin.hpp"

#include <algorithm>
#include <optional>
#include <set>

// Fourier-Motzkin elimination over exact rationals, with a Gaussian
// pre-pass on equalities. Strictness is tracked through combinations: a
// combination of bounds is strict iff either side is.

namespace tpa {

namespace {

struct Bound {
    Rat value;
    bool strict;
};

void tighten_lower(std::optional<Bound>& lo, const Rat& v, bool strict) {
    if (!lo || v > lo->value || (v == lo->value && strict)) lo = Bound{v, strict};
}

void tighten_upper(std::optional<Bound>& hi, const Rat& v, bool strict) {
    if (!hi || v < hi->value || (v == hi->value && strict)) hi = Bound{v, strict};
}

std::set<AtomId> atoms_in(const std::vector<LinConstraint>& cs) {
    std::set<AtomId> out;
    for (const auto& c : cs)
        for (const auto& [id, k] : c.expr.coeffs()) out.insert(id);
    return out;
}

bool ground_ok(const LinConstraint& c) {
    switch (c.rel) {
    case Rel::Eq: return c.expr.constant() == 0;
    case Rel::Le: return c.expr.constant() <= 0;
    case Rel::Lt: return c.expr.constant() < 0;
    }
    return false;
}

} // namespace

SatResult solve_monus_free(const ConstraintSet& cs, const std::vector<AtomId>& force_order,
                           std::size_t max_constraints) {
    if (!cs.monus_free())
        throw std::invalid_argument("solve_monus_free: call eliminate_monus first");

    std::vector<LinConstraint> work;
    std::vector<std::pair<AtomId, LinExpr>> eq_stack; // v = expr, in elimination order

    if (force_order.empty()) {
        // Gaussian pre-pass: every equality eliminates one atom.
        std::vector<LinConstraint> pending = cs.items();
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < pending.size(); ++i) {
                const LinConstraint& c = pending[i];
                if (c.rel != Rel::Eq) continue;
                if (c.expr.is_constant()) {
                    if (!ground_ok(c)) return SatResult{};
                    pending.erase(pending.begin() + static_cast<long>(i));
                    changed = true;
                    break;
                }
                AtomId v = c.expr.coeffs().begin()->first;
                Rat k = c.expr.coeffs().begin()->second;
                // v = -(expr - k*v)/k
                LinExpr rest = c.expr.substituted(v, LinExpr(Rat(0)));
                rest *= Rat(-1) / k;
                eq_stack.emplace_back(v, rest);
                pending.erase(pending.begin() + static_cast<long>(i));
                for (auto& other : pending) other.expr = other.expr.substituted(v, rest);
                changed = true;
                break;
            }
        }
        work = std::move(pending);
    } else {
        // pinned elimination order: equalities become two inequalities
        for (const auto& c : cs.items()) {
            if (c.rel == Rel::Eq) {
                work.push_back(LinConstraint{c.expr, Rel::Le});
                LinExpr neg;
                neg -= c.expr;
                work.push_back(LinConstraint{neg, Rel::Le});
            } else {
                work.push_back(c);
            }
        }
    }

    // FM elimination over the remaining inequalities.
    std::vector<std::pair<AtomId, std::vector<LinConstraint>>> elim;
    std::set<AtomId> remaining = atoms_in(work);
    std::size_t force_pos = 0;

    while (!remaining.empty()) {
        AtomId v = -1;
        while (force_pos < force_order.size()) {
            AtomId cand = force_order[force_pos++];
            if (remaining.count(cand)) {
                v = cand;
                break;
            }
        }
        if (v < 0) {
            // greedy: smallest lower*upper product
            long best = -1;
            for (AtomId cand : remaining) {
                long lows = 0, ups = 0;
                for (const auto& c : work) {
                    Rat k = c.expr.coeff(cand);
                    if (k < 0) ++lows;
                    else if (k > 0) ++ups;
                }
                long score = lows * ups;
                if (best < 0 || score < best) {
                    best = score;
                    v = cand;
                }
            }
        }

        std::vector<LinConstraint> lowers, uppers, rest, involved;
        for (const auto& c : work) {
            Rat k = c.expr.coeff(v);
            if (k == 0) {
                rest.push_back(c);
            } else {
                involved.push_back(c);
                (k < 0 ? lowers : uppers).push_back(c);
            }
        }
        elim.emplace_back(v, involved);

        for (const auto& l : lowers) {
            Rat kl = l.expr.coeff(v); // < 0: v >= rl/(-kl)
            LinExpr low = l.expr.substituted(v, LinExpr(Rat(0)));
            low *= Rat(1) / Rat(-kl);
            for (const auto& u : uppers) {
                Rat ku = u.expr.coeff(v); // > 0: v <= -ru/ku
                LinExpr up = u.expr.substituted(v, LinExpr(Rat(0)));
                up *= Rat(-1) / ku;
                bool strict = l.rel == Rel::Lt || u.rel == Rel::Lt;
                rest.push_back(LinConstraint{low - up, strict ? Rel::Lt : Rel::Le});
                if (rest.size() > max_constraints)
                    throw SolverLimitError("fourier-motzkin exceeded the constraint budget");
            }
        }
        work = std::move(rest);
        remaining = atoms_in(work);
    }

    for (const auto& c : work)
        if (!ground_ok(c)) return SatResult{};

    // witness: walk the eliminations backwards, picking a point inside the
    // interval each atom was left with
    SatResult result;
    result.sat = true;
    auto& w = result.witness;

    for (auto it = elim.rbegin(); it != elim.rend(); ++it) {
        AtomId v = it->first;
        std::optional<Bound> lo, hi;
        for (const auto& c : it->second) {
            Rat k = c.expr.coeff(v);
            LinExpr rest = c.expr.substituted(v, LinExpr(Rat(0)));
            Rat bound = -rest.evaluate(w) / k;
            if (k > 0)
                tighten_upper(hi, bound, c.rel == Rel::Lt);
            else
                tighten_lower(lo, bound, c.rel == Rel::Lt);
        }
        Rat value = 0;
        if (lo && hi)
            value = lo->value == hi->value ? lo->value : Rat((lo->value + hi->value) / 2);
        else if (lo)
            value = lo->strict ? Rat(lo->value + 1) : lo->value;
        else if (hi)
            value = hi->strict ? Rat(hi->value - 1) : hi->value;
        w[v] = value;
    }

    for (auto it = eq_stack.rbegin(); it != eq_stack.rend(); ++it)
        w[it->first] = it->second.evaluate(w);

    // every atom of the input gets a value (free atoms default to 0)
    for (const auto& c : cs.items())
        for (const auto& [id, k] : c.expr.coeffs())
            if (!w.count(id)) w[id] = 0;

    for (const auto& c : cs.items()) {
        if (!c.evaluate(w))
            throw std::logic_error("fm witness failed re-verification: " + c.to_string());
    }
    return result;
}

} // namespace tpa
