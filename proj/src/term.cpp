#include "tpa/term.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace tpa {

bool sort_leq(Sort sub, Sort sup) {
    if (sub == sup) return true;
    if (sup == Sort::Msg) return sub == Sort::Agent || sub == Sort::Fresh;
    return false;
}

Sort Term::term_sort() const {
    switch (tag) {
    case Tag::Const: return sort;
    case Tag::Var: return sort;
    default: return Sort::Msg;
    }
}

namespace {

TermPtr make(Term t) { return std::make_shared<const Term>(std::move(t)); }

int vec_cmp(const std::vector<TermPtr>& a, const std::vector<TermPtr>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = term_cmp(*a[i], *b[i]);
        if (c != 0) return c;
    }
    return 0;
}

} // namespace

int term_cmp(const Term& a, const Term& b) {
    if (a.tag != b.tag) return a.tag < b.tag ? -1 : 1;
    switch (a.tag) {
    case Term::Tag::Zero:
    case Term::Tag::True:
        return 0;
    case Term::Tag::Const:
        if (a.sym != b.sym) return a.sym < b.sym ? -1 : 1;
        if (a.sort != b.sort) return a.sort < b.sort ? -1 : 1;
        return 0;
    case Term::Tag::Var:
        if (a.sym != b.sym) return a.sym < b.sym ? -1 : 1;
        if (a.vkind != b.vkind) return a.vkind < b.vkind ? -1 : 1;
        return 0;
    case Term::Tag::App:
        if (a.sym != b.sym) return a.sym < b.sym ? -1 : 1;
        return vec_cmp(a.args, b.args);
    case Term::Tag::Cat:
    case Term::Tag::Xor:
        return vec_cmp(a.args, b.args);
    }
    return 0;
}

bool term_eq(const TermPtr& a, const TermPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return term_cmp(*a, *b) == 0;
}

TermPtr mk_zero() {
    static const TermPtr zero = make(Term{Term::Tag::Zero});
    return zero;
}

TermPtr mk_true() {
    static const TermPtr tru = make(Term{Term::Tag::True});
    return tru;
}

TermPtr mk_const(std::string name, Sort sort) {
    Term t;
    t.tag = Term::Tag::Const;
    t.sym = std::move(name);
    t.sort = sort;
    return make(std::move(t));
}

TermPtr mk_agent(std::string name) { return mk_const(std::move(name), Sort::Agent); }

TermPtr mk_var(std::string name, VarKind kind, Sort sort) {
    Term t;
    t.tag = Term::Tag::Var;
    t.sym = std::move(name);
    t.vkind = kind;
    t.sort = sort;
    return make(std::move(t));
}

TermPtr mk_app(std::string sym, std::vector<TermPtr> args) {
    Term t;
    t.tag = Term::Tag::App;
    t.sym = std::move(sym);
    t.args = std::move(args);
    return make(std::move(t));
}

TermPtr mk_cat(std::vector<TermPtr> parts) {
    std::vector<TermPtr> flat;
    for (auto& p : parts) {
        if (p->tag == Term::Tag::Cat)
            flat.insert(flat.end(), p->args.begin(), p->args.end());
        else
            flat.push_back(p);
    }
    if (flat.empty()) throw std::invalid_argument("mk_cat: empty sequence");
    if (flat.size() == 1) return flat[0];
    Term t;
    t.tag = Term::Tag::Cat;
    t.args = std::move(flat);
    return make(std::move(t));
}

TermPtr mk_xor(std::vector<TermPtr> parts) {
    std::vector<TermPtr> flat;
    for (auto& p : parts) {
        if (p->tag == Term::Tag::Xor)
            flat.insert(flat.end(), p->args.begin(), p->args.end());
        else if (p->tag == Term::Tag::Zero)
            continue;
        else
            flat.push_back(p);
    }
    std::sort(flat.begin(), flat.end(),
              [](const TermPtr& a, const TermPtr& b) { return term_cmp(*a, *b) < 0; });
    // nilpotence: equal neighbours cancel pairwise
    std::vector<TermPtr> kept;
    for (std::size_t i = 0; i < flat.size();) {
        if (i + 1 < flat.size() && term_cmp(*flat[i], *flat[i + 1]) == 0)
            i += 2;
        else
            kept.push_back(flat[i++]);
    }
    if (kept.empty()) return mk_zero();
    if (kept.size() == 1) return kept[0];
    Term t;
    t.tag = Term::Tag::Xor;
    t.args = std::move(kept);
    return make(std::move(t));
}

TermPtr mk_nonce(TermPtr agent, TermPtr fresh) { return mk_app("n", {std::move(agent), std::move(fresh)}); }
TermPtr mk_secret(TermPtr agent, TermPtr fresh) { return mk_app("s", {std::move(agent), std::move(fresh)}); }
TermPtr mk_commit(TermPtr n, TermPtr s) { return mk_app("commit", {std::move(n), std::move(s)}); }
TermPtr mk_open(TermPtr n, TermPtr s, TermPtr c) {
    return mk_app("open", {std::move(n), std::move(s), std::move(c)});
}
TermPtr mk_sign(TermPtr agent, TermPtr body) { return mk_app("sign", {std::move(agent), std::move(body)}); }

std::string term_to_string(const TermPtr& t) {
    switch (t->tag) {
    case Term::Tag::Zero: return "0";
    case Term::Tag::True: return "true";
    case Term::Tag::Const: return t->sym;
    case Term::Tag::Var:
        switch (t->vkind) {
        case VarKind::Fresh: return "#" + t->sym;
        case VarKind::Choice: return t->sym + "?";
        case VarKind::Time: return "$" + t->sym;
        case VarKind::Pattern: return t->sym;
        }
        return t->sym;
    case Term::Tag::App: {
        std::string out = t->sym + "(";
        for (std::size_t i = 0; i < t->args.size(); ++i) {
            if (i) out += ", ";
            out += term_to_string(t->args[i]);
        }
        return out + ")";
    }
    case Term::Tag::Cat: {
        std::string out;
        for (std::size_t i = 0; i < t->args.size(); ++i) {
            if (i) out += " ; ";
            const auto& a = t->args[i];
            bool paren = a->tag == Term::Tag::Xor;
            out += paren ? "(" + term_to_string(a) + ")" : term_to_string(a);
        }
        return out;
    }
    case Term::Tag::Xor: {
        std::string out;
        for (std::size_t i = 0; i < t->args.size(); ++i) {
            if (i) out += " xor ";
            const auto& a = t->args[i];
            bool paren = a->tag == Term::Tag::Cat;
            out += paren ? "(" + term_to_string(a) + ")" : term_to_string(a);
        }
        return out;
    }
    }
    return "?";
}

TermPtr normalize(const TermPtr& t) {
    switch (t->tag) {
    case Term::Tag::Zero:
    case Term::Tag::True:
    case Term::Tag::Const:
    case Term::Tag::Var:
        return t;
    case Term::Tag::App: {
        std::vector<TermPtr> args;
        args.reserve(t->args.size());
        bool changed = false;
        for (const auto& a : t->args) {
            auto na = normalize(a);
            changed = changed || na != a;
            args.push_back(std::move(na));
        }
        // open(N, S, commit(N, S)) -> true
        if (t->sym == "open" && args.size() == 3 && args[2]->tag == Term::Tag::App &&
            args[2]->sym == "commit" && args[2]->args.size() == 2 &&
            term_eq(args[0], args[2]->args[0]) && term_eq(args[1], args[2]->args[1]))
            return mk_true();
        if (!changed) return t;
        return mk_app(t->sym, std::move(args));
    }
    case Term::Tag::Cat: {
        std::vector<TermPtr> args;
        for (const auto& a : t->args) args.push_back(normalize(a));
        return mk_cat(std::move(args));
    }
    case Term::Tag::Xor: {
        std::vector<TermPtr> args;
        for (const auto& a : t->args) args.push_back(normalize(a));
        return mk_xor(std::move(args));
    }
    }
    return t;
}

void collect_vars(const TermPtr& t, std::set<VarId>& out) {
    if (t->tag == Term::Tag::Var) {
        out.insert(VarId{t->sym, t->vkind});
        return;
    }
    for (const auto& a : t->args) collect_vars(a, out);
}

std::set<VarId> vars_of(const TermPtr& t) {
    std::set<VarId> out;
    collect_vars(t, out);
    return out;
}

bool is_ground(const TermPtr& t) {
    if (t->tag == Term::Tag::Var)
        return t->vkind == VarKind::Fresh; // renamed fresh names act as constants
    for (const auto& a : t->args)
        if (!is_ground(a)) return false;
    return true;
}

bool Subst::bind(const VarId& v, const TermPtr& t) {
    auto it = map_.find(v);
    if (it != map_.end()) return term_eq(it->second, t);
    map_.emplace(v, t);
    return true;
}

const TermPtr* Subst::lookup(const VarId& v) const {
    auto it = map_.find(v);
    return it == map_.end() ? nullptr : &it->second;
}

bool Subst::merge(const Subst& other) {
    for (const auto& [v, t] : other.map_)
        if (!bind(v, t)) return false;
    return true;
}

namespace {

TermPtr apply_raw(const Subst& sigma, const TermPtr& t) {
    switch (t->tag) {
    case Term::Tag::Var: {
        if (const TermPtr* bound = sigma.lookup(VarId{t->sym, t->vkind})) return *bound;
        return t;
    }
    case Term::Tag::App: {
        std::vector<TermPtr> args;
        for (const auto& a : t->args) args.push_back(apply_raw(sigma, a));
        return mk_app(t->sym, std::move(args));
    }
    case Term::Tag::Cat: {
        std::vector<TermPtr> args;
        for (const auto& a : t->args) args.push_back(apply_raw(sigma, a));
        return mk_cat(std::move(args));
    }
    case Term::Tag::Xor: {
        std::vector<TermPtr> args;
        for (const auto& a : t->args) args.push_back(apply_raw(sigma, a));
        return mk_xor(std::move(args));
    }
    default:
        return t;
    }
}

} // namespace

TermPtr apply(const Subst& sigma, const TermPtr& t) {
    if (sigma.empty()) return normalize(t);
    return normalize(apply_raw(sigma, t));
}

TermPtr fresh_rename(const TermPtr& t, const std::string& role, int instance) {
    switch (t->tag) {
    case Term::Tag::Var:
        if (t->vkind == VarKind::Fresh && t->sym.find('@') == std::string::npos)
            return mk_var(t->sym + "@" + role + std::to_string(instance), VarKind::Fresh,
                          Sort::Fresh);
        return t;
    case Term::Tag::App: {
        std::vector<TermPtr> args;
        for (const auto& a : t->args) args.push_back(fresh_rename(a, role, instance));
        return mk_app(t->sym, std::move(args));
    }
    case Term::Tag::Cat: {
        std::vector<TermPtr> args;
        for (const auto& a : t->args) args.push_back(fresh_rename(a, role, instance));
        return mk_cat(std::move(args));
    }
    case Term::Tag::Xor: {
        std::vector<TermPtr> args;
        for (const auto& a : t->args) args.push_back(fresh_rename(a, role, instance));
        return mk_xor(std::move(args));
    }
    default:
        return t;
    }
}

} // namespace tpa
