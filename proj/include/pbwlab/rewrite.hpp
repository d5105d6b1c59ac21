#pragma once

#include <optional>
#include <queue>
#include <vector>

#include "pbwlab/group.hpp"
#include "pbwlab/skew.hpp"

namespace pbwlab {

/// kG inverse via the regular representation; nullopt for non-units.
template <Field K>
std::optional<GroupAlgebraElement<K>> ga_inverse(K k, const FiniteGroup& g,
                                                 const GroupAlgebraElement<K>& c) {
    const std::size_t n = g.order;
    Matrix<K> L(k, n, n);  // left multiplication by c
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) L(g.mul(GIdx(x), GIdx(y)), y) = c.coeffs[x];
    std::vector<typename K::Elem> e(n, k.zero());
    e[g.identity] = k.one();
    try {
        auto x = solve_linear(L, e);
        GroupAlgebraElement<K> inv{x};
        auto check = ga_multiply(k, g, inv, c);  // left inverse is two-sided here
        for (std::size_t i = 0; i < n; ++i) {
            auto want = i == g.identity ? k.one() : k.zero();
            if (!k.eq(check.coeffs[i], want)) return std::nullopt;
        }
        return inv;
    } catch (const InconsistentSystem&) {
        return std::nullopt;
    }
}

/// One rewrite rule (lm | e) -> rhs with every rhs term strictly below lm in
/// (degree, word); group parts of rhs terms are unrestricted. The leading
/// coefficient is 1 tensor identity, which keeps rule application a plain
/// monomial factorization even though right remainders get twisted.
template <Field K>
struct RewriteRule {
    Word lm;
    SkewElement<K> rhs;
};

inline bool word_contains_at(const Word& w, const Word& sub, std::size_t pos) {
    if (pos + sub.size() > w.size()) return false;
    for (std::size_t i = 0; i < sub.size(); ++i)
        if (w[pos + i] != sub[i]) return false;
    return true;
}

inline std::optional<std::size_t> first_match(const Word& w, const Word& sub) {
    if (sub.size() > w.size()) return std::nullopt;
    for (std::size_t pos = 0; pos + sub.size() <= w.size(); ++pos)
        if (word_contains_at(w, sub, pos)) return pos;
    return std::nullopt;
}

template <Field K>
class RewriteSystem {
public:
    using Elem = typename K::Elem;

    enum class Orient { Zero, Added, Unorientable };

    explicit RewriteSystem(const SkewContext<K>& ctx) : ctx_(&ctx), k_(ctx.field()) {}

    const std::vector<RewriteRule<K>>& rules() const { return rules_; }
    bool complete() const { return complete_; }
    std::size_t truncation_degree() const { return cap_; }
    const SkewContext<K>& ctx() const { return *ctx_; }

    /// Fully reduce: rewrite the largest reducible term, first rule,
    /// leftmost position, until normal.
    SkewElement<K> reduce(SkewElement<K> e) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto it = e.terms.rbegin(); it != e.terms.rend(); ++it) {
                const SkewMonomial t = it->first;
                const Elem c = it->second;
                for (std::size_t ri = 0; ri < rules_.size() && !changed; ++ri) {
                    auto pos = first_match(t.word, rules_[ri].lm);
                    if (!pos) continue;
                    e.terms.erase(std::next(it).base());
                    apply_rule_at(e, t, c, ri, *pos);
                    changed = true;
                }
                if (changed) break;
            }
        }
        return e;
    }

    bool is_normal(const SkewMonomial& m) const {
        for (const auto& r : rules_)
            if (first_match(m.word, r.lm)) return false;
        return true;
    }

    /// Number of normal monomials of degree exactly d (including the group
    /// factor).
    std::size_t normal_count(std::size_t d) const {
        for (const auto& r : rules_)
            if (r.lm.empty()) return 0;
        std::size_t cnt = 0;
        Word w;
        count_rec(w, d, cnt);
        return cnt * ctx_->group().order;
    }

    /// Cumulative normal-monomial counts; exact dims of T/<P> when complete.
    std::vector<std::size_t> normal_filtered_dims(std::size_t max_degree) const {
        std::vector<std::size_t> dims(max_degree + 1, 0);
        std::size_t acc = 0;
        for (std::size_t d = 0; d <= max_degree; ++d) {
            acc += normal_count(d);
            dims[d] = acc;
        }
        return dims;
    }

    // -- construction hooks used by truncated_completion --

    void set_cap(std::size_t cap) { cap_ = cap; }
    void set_complete(bool c) { complete_ = c; }
    bool unorientable_seen() const { return unorientable_; }

    /// Reduce f and install it as a rule. Right-normalizes by the inverse of
    /// the leading kG-coefficient; polynomials whose leading coefficient is
    /// not a unit of kG cannot feed a word-indexed rule and are recorded as
    /// an incompleteness obstruction. Rules whose leading word becomes
    /// divisible by the new one are removed and handed back for requeueing.
    Orient orient_and_add(SkewElement<K> f, std::vector<SkewElement<K>>& requeued) {
        f = reduce(std::move(f));
        if (f.is_zero()) return Orient::Zero;
        const Word top_word = f.leading_monomial().word;
        GroupAlgebraElement<K> c = GroupAlgebraElement<K>::zero(k_, ctx_->group().order);
        for (auto it = f.terms.rbegin(); it != f.terms.rend(); ++it) {
            if (it->first.word != top_word) break;
            c.coeffs[it->first.g] = it->second;
        }
        std::size_t nterms = 0;
        for (const auto& x : c.coeffs)
            if (!k_.is_zero(x)) ++nterms;
        if (nterms == 1 && !k_.is_zero(c.coeffs[ctx_->group().identity])) {
            f = ctx_->scale(f, k_.inv(c.coeffs[ctx_->group().identity]));
        } else {
            auto inv = ga_inverse(k_, ctx_->group(), c);
            if (!inv) {
                unorientable_ = true;
                return Orient::Unorientable;
            }
            SkewElement<K> u;
            for (std::size_t g = 0; g < ctx_->group().order; ++g)
                add_term(k_, u, SkewMonomial{{}, GIdx(g)}, inv->coeffs[g]);
            f = ctx_->multiply(f, u);
        }
        RewriteRule<K> rule;
        rule.lm = f.leading_monomial().word;
        f.terms.erase(std::prev(f.terms.end()));
        rule.rhs = ctx_->scale(f, k_.neg(k_.one()));
        std::vector<RewriteRule<K>> kept;
        for (auto& r : rules_) {
            if (first_match(r.lm, rule.lm)) {
                requeued.push_back(rule_polynomial(r));
            } else {
                kept.push_back(std::move(r));
            }
        }
        kept.push_back(std::move(rule));
        rules_ = std::move(kept);
        return Orient::Added;
    }

    SkewElement<K> rule_polynomial(const RewriteRule<K>& r) const {
        return ctx_->sub(ctx_->monomial(r.lm, ctx_->group().identity, k_.one()), r.rhs);
    }

    void inter_reduce_rhs() {
        // a rule can never apply to its own rhs: those terms are strictly
        // below lm in (degree, word), so they cannot contain lm as a subword
        for (auto& r : rules_) r.rhs = reduce(r.rhs);
    }

    /// Some pair of rules has an overlap whose combined word exceeds cap
    /// (so its resolution was never checked).
    bool has_overlap_beyond(std::size_t cap) const {
        for (const auto& a : rules_)
            for (const auto& b : rules_) {
                std::size_t smax = std::min(a.lm.size(), b.lm.size());
                if (smax > 0) --smax;  // proper overlap on both sides
                for (std::size_t s = 1; s <= smax; ++s) {
                    bool match = true;
                    for (std::size_t i = 0; i < s; ++i)
                        if (a.lm[a.lm.size() - s + i] != b.lm[i]) { match = false; break; }
                    if (match && a.lm.size() + b.lm.size() - s > cap) return true;
                }
            }
        return false;
    }

private:
    void apply_rule_at(SkewElement<K>& e, const SkewMonomial& t, const Elem& c, std::size_t ri,
                       std::size_t pos) const {
        const auto& rule = rules_[ri];
        Word prefix(t.word.begin(), t.word.begin() + pos);
        Word suffix(t.word.begin() + pos + rule.lm.size(), t.word.end());
        auto rest = ctx_->multiply(rule.rhs, ctx_->monomial(std::move(suffix), t.g, k_.one()));
        for (const auto& [m, x] : rest.terms) {
            Word w = prefix;
            w.insert(w.end(), m.word.begin(), m.word.end());
            add_term(k_, e, SkewMonomial{std::move(w), m.g}, k_.mul(c, x));
        }
    }

    void count_rec(Word& w, std::size_t target, std::size_t& cnt) const {
        if (w.size() == target) {
            ++cnt;
            return;
        }
        for (std::size_t l = 0; l < ctx_->dim_V(); ++l) {
            w.push_back(std::uint8_t(l));
            bool ok = true;
            for (const auto& r : rules_) {
                if (r.lm.empty() || r.lm.size() > w.size()) continue;
                if (word_contains_at(w, r.lm, w.size() - r.lm.size())) { ok = false; break; }
            }
            if (ok) count_rec(w, target, cnt);
            w.pop_back();
        }
    }

    const SkewContext<K>* ctx_;
    [[no_unique_address]] K k_;
    std::vector<RewriteRule<K>> rules_;
    std::size_t cap_ = 0;
    bool complete_ = false;
    bool unorientable_ = false;
};

/// Knuth-Bendix style completion truncated at word degree `cap`; ambiguities
/// processed in increasing degree with FIFO ties. The ambiguity set is the
/// word overlaps of rule leading terms plus the group twists (1|g) f, which
/// are exactly the commutation overlaps of the smash product.
template <Field K>
RewriteSystem<K> truncated_completion(const SkewContext<K>& ctx,
                                      const std::vector<SkewElement<K>>& P, std::size_t cap) {
    RewriteSystem<K> sys(ctx);
    sys.set_cap(cap);
    const K k = ctx.field();

    struct QItem {
        std::size_t degree;
        std::uint64_t seq;
        SkewElement<K> poly;
        bool operator>(const QItem& o) const {
            return degree != o.degree ? degree > o.degree : seq > o.seq;
        }
    };
    std::priority_queue<QItem, std::vector<QItem>, std::greater<QItem>> q;
    std::uint64_t seq = 0;
    auto push = [&](SkewElement<K> f) {
        if (f.is_zero()) return;
        std::size_t d = f.degree();
        if (d <= cap) q.push(QItem{d, seq++, std::move(f)});
    };
    for (const auto& p : P) push(p);

    bool skipped_overlap = false;
    bool budget_hit = false;
    std::size_t steps = 0;
    const std::size_t step_budget = 200000;

    while (!q.empty()) {
        if (++steps > step_budget) { budget_hit = true; break; }
        SkewElement<K> f = std::move(const_cast<QItem&>(q.top()).poly);
        q.pop();
        std::vector<SkewElement<K>> requeued;
        if (sys.orient_and_add(std::move(f), requeued) != RewriteSystem<K>::Orient::Added)
            continue;
        for (auto& r : requeued) push(std::move(r));

        const Word added_lm = sys.rules().back().lm;
        SkewElement<K> poly = sys.rule_polynomial(sys.rules().back());
        for (std::size_t g = 0; g < ctx.group().order; ++g) {
            if (GIdx(g) == ctx.group().identity) continue;
            push(ctx.multiply(ctx.group_elt(GIdx(g)), poly));
        }
        for (const auto& other : sys.rules()) {
            bool self = other.lm == added_lm;
            for (int dir = 0; dir < (self ? 1 : 2); ++dir) {
                const RewriteRule<K>& ra = dir == 0 ? sys.rules().back() : other;  // lm = u s
                const RewriteRule<K>& rb = dir == 0 ? other : sys.rules().back();  // lm = s v
                const Word& a = ra.lm;
                const Word& b = rb.lm;
                std::size_t smax = std::min(a.size(), b.size());
                if (smax > 0) --smax;
                for (std::size_t s = 1; s <= smax; ++s) {
                    bool match = true;
                    for (std::size_t i = 0; i < s; ++i)
                        if (a[a.size() - s + i] != b[i]) { match = false; break; }
                    if (!match) continue;
                    if (a.size() + b.size() - s > cap) {
                        skipped_overlap = true;
                        continue;
                    }
                    Word u(a.begin(), a.end() - s);
                    Word v(b.begin() + s, b.end());
                    auto spoly =
                        ctx.sub(ctx.multiply(ra.rhs, ctx.monomial(std::move(v), ctx.group().identity, k.one())),
                                ctx.multiply(ctx.monomial(std::move(u), ctx.group().identity, k.one()), rb.rhs));
                    push(std::move(spoly));
                }
            }
        }
    }
    sys.inter_reduce_rhs();
    bool complete = !sys.unorientable_seen() && !skipped_overlap && !budget_hit &&
                    !sys.has_overlap_beyond(cap);
    sys.set_complete(complete);
    return sys;
}

}  // namespace pbwlab
