#include "tpa/term.hpp"

#include <algorithm>
#include <functional>

// Matching modulo AC(xor) + unit + nilpotence and associativity of ";".
// Solutions are cancellation-free: every binding is assembled from the
// ground term's own xor/cat elements, so the enumeration below is finite.
// The equational fragment is deliberately not full XOR unification; see the
// README for the scope of the matcher.

namespace tpa {

namespace {

using Elems = std::vector<TermPtr>;

Elems xor_view(const TermPtr& g) {
    if (g->tag == Term::Tag::Xor) return g->args;
    if (g->tag == Term::Tag::Zero) return {};
    return {g};
}

Elems cat_view(const TermPtr& g) {
    if (g->tag == Term::Tag::Cat) return g->args;
    return {g};
}

struct Matcher {
    std::size_t limit;
    std::vector<Subst> out;
    TermPtr root_pattern;
    TermPtr root_ground;

    bool done() const { return out.size() >= limit; }

    void emit(const Subst& s) {
        // soundness gate: re-apply and compare
        if (!term_eq(apply(s, root_pattern), root_ground)) return;
        for (const auto& prev : out) {
            if (prev.entries() == s.entries()) return;
        }
        out.push_back(s);
    }

    // k is invoked for every extension of s matching p against g.
    void match_term(const TermPtr& p, const TermPtr& g, Subst& s,
                    const std::function<void(Subst&)>& k) {
        if (done()) return;
        switch (p->tag) {
        case Term::Tag::Var: {
            if (p->vkind == VarKind::Fresh) {
                // fresh names are constants once renamed
                if (g->tag == Term::Tag::Var && g->vkind == VarKind::Fresh && g->sym == p->sym)
                    k(s);
                return;
            }
            VarId id{p->sym, p->vkind};
            if (const TermPtr* bound = s.lookup(id)) {
                if (term_eq(*bound, g)) k(s);
                return;
            }
            if (!sort_leq(g->term_sort(), p->sort)) return;
            Subst s2 = s;
            s2.bind(id, g);
            k(s2);
            return;
        }
        case Term::Tag::Zero:
            if (g->tag == Term::Tag::Zero) k(s);
            return;
        case Term::Tag::True:
            if (g->tag == Term::Tag::True) k(s);
            return;
        case Term::Tag::Const:
            if (g->tag == Term::Tag::Const && g->sym == p->sym) k(s);
            return;
        case Term::Tag::App: {
            if (g->tag != Term::Tag::App || g->sym != p->sym ||
                g->args.size() != p->args.size())
                return;
            match_args(p->args, g->args, 0, s, k);
            return;
        }
        case Term::Tag::Cat:
            match_cat(p->args, cat_view(g), 0, 0, s, k);
            return;
        case Term::Tag::Xor:
            match_xor(p->args, xor_view(g), s, k);
            return;
        }
    }

    void match_args(const Elems& ps, const Elems& gs, std::size_t i, Subst& s,
                    const std::function<void(Subst&)>& k) {
        if (done()) return;
        if (i == ps.size()) {
            k(s);
            return;
        }
        match_term(ps[i], gs[i], s,
                   [&](Subst& s2) { match_args(ps, gs, i + 1, s2, k); });
    }

    // Ordered split of the ground sequence among the pattern parts; an
    // unbound variable part may absorb a slice of length >= 1.
    void match_cat(const Elems& ps, const Elems& gs, std::size_t pi, std::size_t gi,
                   Subst& s, const std::function<void(Subst&)>& k) {
        if (done()) return;
        if (pi == ps.size()) {
            if (gi == gs.size()) k(s);
            return;
        }
        std::size_t rest = ps.size() - pi - 1; // later parts need >= 1 element each
        if (gs.size() - gi < rest + 1) return;
        const TermPtr& part = ps[pi];
        bool unbound_var = part->tag == Term::Tag::Var && part->vkind != VarKind::Fresh &&
                           !s.lookup(VarId{part->sym, part->vkind});
        if (unbound_var) {
            std::size_t max_take = gs.size() - gi - rest;
            for (std::size_t take = 1; take <= max_take && !done(); ++take) {
                Elems slice(gs.begin() + gi, gs.begin() + gi + take);
                TermPtr val = mk_cat(std::move(slice));
                match_term(part, val, s,
                           [&](Subst& s2) { match_cat(ps, gs, pi + 1, gi + take, s2, k); });
            }
        } else {
            TermPtr value = part;
            if (part->tag == Term::Tag::Var) {
                if (const TermPtr* bound = s.lookup(VarId{part->sym, part->vkind}))
                    value = *bound;
            }
            if (value->tag == Term::Tag::Cat) {
                // a bound variable may cover several consecutive elements
                std::size_t n = value->args.size();
                if (gs.size() - gi < n + rest) return;
                for (std::size_t j = 0; j < n; ++j)
                    if (!term_eq(value->args[j], gs[gi + j])) return;
                match_cat(ps, gs, pi + 1, gi + n, s, k);
            } else {
                match_term(part, gs[gi], s,
                           [&](Subst& s2) { match_cat(ps, gs, pi + 1, gi + 1, s2, k); });
            }
        }
    }

    void match_xor(const Elems& ps, Elems gs, Subst& s,
                   const std::function<void(Subst&)>& k) {
        // split pattern elements into unbound variables and the rest
        Elems vars, rigid;
        for (const auto& p : ps) {
            if (p->tag == Term::Tag::Var && p->vkind != VarKind::Fresh &&
                !s.lookup(VarId{p->sym, p->vkind}))
                vars.push_back(p);
            else
                rigid.push_back(p);
        }
        match_xor_rigid(rigid, 0, vars, std::move(gs), s, k);
    }

    // Each non-variable element consumes ground elements; bound variables
    // consume the element multiset of their value.
    void match_xor_rigid(const Elems& rigid, std::size_t ri, const Elems& vars, Elems gs,
                         Subst& s, const std::function<void(Subst&)>& k) {
        if (done()) return;
        if (ri == rigid.size()) {
            match_xor_vars(vars, std::move(gs), s, k);
            return;
        }
        const TermPtr& part = rigid[ri];
        TermPtr value = part;
        if (part->tag == Term::Tag::Var) {
            const TermPtr* bound = s.lookup(VarId{part->sym, part->vkind});
            if (bound) value = *bound;
        }
        bool is_ground_part = is_ground(value);
        if (is_ground_part) {
            // remove value's own element multiset from gs
            Elems need = xor_view(normalize(value));
            Elems remaining = gs;
            for (const auto& n : need) {
                auto it = std::find_if(remaining.begin(), remaining.end(),
                                       [&](const TermPtr& e) { return term_eq(e, n); });
                if (it == remaining.end()) return;
                remaining.erase(it);
            }
            match_xor_rigid(rigid, ri + 1, vars, std::move(remaining), s, k);
        } else {
            // a structured element with open variables matches exactly one
            // ground element
            for (std::size_t gi = 0; gi < gs.size() && !done(); ++gi) {
                Elems remaining = gs;
                remaining.erase(remaining.begin() + gi);
                match_term(value, gs[gi], s, [&](Subst& s2) {
                    match_xor_rigid(rigid, ri + 1, vars, remaining, s2, k);
                });
            }
        }
    }

    void match_xor_vars(const Elems& vars, Elems gs, Subst& s,
                        const std::function<void(Subst&)>& k) {
        if (done()) return;
        if (vars.empty()) {
            if (gs.empty()) k(s);
            return;
        }
        if (vars.size() == 1) {
            TermPtr val = gs.empty() ? mk_zero() : mk_xor(std::move(gs));
            match_term(vars[0], val, s, k);
            return;
        }
        // distribute each ground element to one of the variables
        std::size_t n = gs.size(), kvars = vars.size();
        std::vector<std::size_t> assign(n, 0);
        while (true) {
            std::vector<Elems> buckets(kvars);
            for (std::size_t i = 0; i < n; ++i) buckets[assign[i]].push_back(gs[i]);
            bind_buckets(vars, buckets, 0, s, k);
            if (done()) return;
            std::size_t pos = 0;
            while (pos < n && assign[pos] + 1 == kvars) assign[pos++] = 0;
            if (pos == n) break;
            ++assign[pos];
        }
    }

    void bind_buckets(const Elems& vars, const std::vector<Elems>& buckets, std::size_t i,
                      Subst& s, const std::function<void(Subst&)>& k) {
        if (done()) return;
        if (i == vars.size()) {
            k(s);
            return;
        }
        TermPtr val = buckets[i].empty() ? mk_zero() : mk_xor(buckets[i]);
        match_term(vars[i], val, s,
                   [&](Subst& s2) { bind_buckets(vars, buckets, i + 1, s2, k); });
    }
};

} // namespace

std::vector<Subst> match_all(const TermPtr& pattern, const TermPtr& ground,
                             std::size_t limit) {
    Matcher m;
    m.limit = limit;
    m.root_pattern = normalize(pattern);
    m.root_ground = normalize(ground);
    Subst s;
    m.match_term(m.root_pattern, m.root_ground, s, [&](Subst& s2) { m.emit(s2); });
    return std::move(m.out);
}

std::optional<Subst> match(const TermPtr& pattern, const TermPtr& ground) {
    auto all = match_all(pattern, ground, 1);
    if (all.empty()) return std::nullopt;
    return all.front();
}

} // namespace tpa
