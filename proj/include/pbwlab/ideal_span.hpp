#pragma once

#include <cstdint>
#include <queue>
#include <type_traits>
#include <vector>

#include "pbwlab/skew.hpp"
#include "pbwlab/subspace.hpp"

namespace pbwlab {

struct CapTooSmall : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Coordinates of monomials of degree <= cap ordered by degree DESCENDING
/// (then word, then group index). With this ordering a plain echelon basis
/// has, for every m, its span-intersect-F^m equal to the span of the rows
/// whose pivot sits in a degree <= m block.
class DescIndexer {
public:
    DescIndexer(std::size_t dim_V, std::size_t group_order, std::size_t cap)
        : n_(dim_V), ng_(group_order), cap_(cap) {
        block_.resize(cap + 1);
        std::vector<std::size_t> pw(cap + 1, 1);
        for (std::size_t d = 1; d <= cap; ++d) pw[d] = pw[d - 1] * n_;
        std::size_t off = 0;
        for (std::size_t d = cap + 1; d-- > 0;) {
            block_[d] = off;
            off += pw[d] * ng_;
        }
        dim_ = off;
        degree_of_.resize(dim_);
        for (std::size_t d = 0; d <= cap; ++d)
            for (std::size_t i = 0; i < pw[d] * ng_; ++i) degree_of_[block_[d] + i] = d;
    }

    std::size_t dim() const { return dim_; }
    std::size_t cap() const { return cap_; }

    std::size_t index(const SkewMonomial& m) const {
        std::size_t wr = 0;
        for (auto l : m.word) wr = wr * n_ + l;
        return block_[m.degree()] + wr * ng_ + m.g;
    }

    std::size_t degree_of(std::size_t idx) const { return degree_of_[idx]; }

    SkewMonomial monomial(std::size_t idx) const {
        std::size_t d = degree_of_[idx];
        std::size_t rel = idx - block_[d];
        GIdx g = GIdx(rel % ng_);
        std::size_t wr = rel / ng_;
        Word w(d);
        for (std::size_t i = d; i-- > 0;) {
            w[i] = std::uint8_t(wr % n_);
            wr /= n_;
        }
        return SkewMonomial{std::move(w), g};
    }

private:
    std::size_t n_, ng_, cap_, dim_ = 0;
    std::vector<std::size_t> block_;
    std::vector<std::size_t> degree_of_;
};

/// Echelon closure of span{ a p b : deg(a p b) <= cap } built product by
/// product in nondecreasing product degree, so that after finishing phase d
/// the span equals the degree-d-capped ideal span. Lazy-reduction fast path
/// for small prime fields.
template <Field K>
class IdealSpanEngine {
public:
    using Elem = typename K::Elem;

    IdealSpanEngine(const SkewContext<K>& ctx, std::size_t cap)
        : ctx_(&ctx),
          k_(ctx.field()),
          ix_(ctx.dim_V(), ctx.group().order, cap),
          pivot_row_(ix_.dim(), -1),
          pivot_count_by_degree_(cap + 1, 0),
          snapshots_(cap + 1),
          rows_at_phase_(cap + 1, 0) {
        if constexpr (std::is_same_v<K, GFpField>) {
            lazy_ok_ = k_.p < (1u << 15);
            ubuf_.assign(ix_.dim(), 0);
        }
        buf_.assign(ix_.dim(), k_.zero());
    }

    void add_generator(const SkewElement<K>& p) {
        if (p.is_zero()) return;
        if (p.degree() > ix_.cap()) throw CapTooSmall("generator degree exceeds cap");
        gens_.push_back(p);
        queue_.push(Item{p.degree(), seq_++, Item::Gen, gens_.size() - 1, 0});
    }

    /// Process everything up to the cap, recording per-phase section dims.
    void run() {
        while (!queue_.empty()) {
            Item it = queue_.top();
            while (phase_ < it.degree) finish_phase();
            queue_.pop();
            SkewElement<K> e = realize(it);
            insert(e);
        }
        while (phase_ <= ix_.cap()) finish_phase();
    }

    /// dim( span of products of degree <= d  intersect  F^m ).
    std::size_t section_dim(std::size_t d, std::size_t m) const {
        const auto& snap = snapshots_.at(d);
        std::size_t s = 0;
        for (std::size_t j = 0; j <= m && j < snap.size(); ++j) s += snap[j];
        return s;
    }

    std::size_t final_section_dim(std::size_t m) const { return section_dim(ix_.cap(), m); }

    /// Rows of the phase-d span with pivot degree <= m, re-expressed over a
    /// canonical indexer. Rows are inserted in phase order, so the first
    /// rows_at_phase_[d] rows span exactly the degree-d-capped ideal span.
    Subspace<K> section_subspace(std::size_t d, std::size_t m, const MonomialIndexer& canon) const {
        Matrix<K> rows(k_, 0, canon.dim());
        std::size_t nrows = rows_at_phase_.at(d);
        for (std::size_t i = 0; i < nrows; ++i) {
            const auto& r = rows_[i];
            if (ix_.degree_of(r.ents[0].first) > m) continue;
            std::vector<Elem> v(canon.dim(), k_.zero());
            for (const auto& [c, x] : r.ents) v[canon.index(ix_.monomial(c))] = x;
            rows.append_row(v);
        }
        return Subspace<K>::span(rows);
    }

    const DescIndexer& indexer() const { return ix_; }

private:
    struct SparseRow {
        std::vector<std::pair<std::uint32_t, Elem>> ents;  // sorted, leading coeff 1
    };

    struct Item {
        std::size_t degree;
        std::uint64_t seq;
        enum Kind { Gen, LeftLetter, RightLetter, LeftGroup, RightGroup } kind;
        std::size_t src;   // generator index or row index
        std::uint32_t op;  // letter index or group index
        bool operator>(const Item& o) const {
            return degree != o.degree ? degree > o.degree : seq > o.seq;
        }
    };

    SkewElement<K> realize(const Item& it) const {
        switch (it.kind) {
            case Item::Gen: return gens_[it.src];
            case Item::LeftLetter:
                return ctx_->multiply(ctx_->letter(std::uint8_t(it.op)), row_elems_[it.src]);
            case Item::RightLetter:
                return ctx_->multiply(row_elems_[it.src], ctx_->letter(std::uint8_t(it.op)));
            case Item::LeftGroup:
                return ctx_->multiply(ctx_->group_elt(GIdx(it.op)), row_elems_[it.src]);
            case Item::RightGroup:
                return ctx_->multiply(row_elems_[it.src], ctx_->group_elt(GIdx(it.op)));
        }
        return {};
    }

    void finish_phase() {
        std::vector<std::size_t> snap(ix_.cap() + 1, 0);
        for (std::size_t d = 0; d <= ix_.cap(); ++d) snap[d] = pivot_count_by_degree_[d];
        snapshots_[phase_] = std::move(snap);
        rows_at_phase_[phase_] = rows_.size();
        ++phase_;
    }

    void insert(const SkewElement<K>& e) {
        if (e.is_zero()) return;
        if constexpr (std::is_same_v<K, GFpField>) {
            if (lazy_ok_) {
                insert_lazy(e);
                return;
            }
        }
        insert_generic(e);
    }

    void insert_generic(const SkewElement<K>& e) {
        for (const auto& [m, c] : e.terms) buf_[ix_.index(m)] = c;
        std::size_t lead = ix_.dim();
        for (std::size_t c = 0; c < ix_.dim(); ++c) {
            if (k_.is_zero(buf_[c])) continue;
            if (pivot_row_[c] < 0) {
                lead = c;
                break;
            }
            const Elem f = buf_[c];
            for (const auto& [c2, v2] : rows_[pivot_row_[c]].ents)
                buf_[c2] = k_.sub(buf_[c2], k_.mul(f, v2));
        }
        if (lead == ix_.dim()) {  // reduced to zero
            clear_buf(0);
            return;
        }
        SparseRow row;
        const Elem inv = k_.inv(buf_[lead]);
        for (std::size_t c = lead; c < ix_.dim(); ++c) {
            if (!k_.is_zero(buf_[c])) row.ents.emplace_back(std::uint32_t(c), k_.mul(buf_[c], inv));
            buf_[c] = k_.zero();
        }
        clear_buf(lead);
        commit_row(std::move(row), lead);
    }

    void insert_lazy(const SkewElement<K>& e)
        requires std::is_same_v<K, GFpField>
    {
        const std::uint64_t p = k_.p;
        for (const auto& [m, c] : e.terms) ubuf_[ix_.index(m)] = c;
        std::size_t lead = ix_.dim();
        for (std::size_t c = 0; c < ix_.dim(); ++c) {
            std::uint64_t v = ubuf_[c] % p;
            ubuf_[c] = v;
            if (v == 0) continue;
            if (pivot_row_[c] < 0) {
                lead = c;
                break;
            }
            const std::uint64_t f = p - v;  // add f * row == subtract v * row
            const auto& ents = rows_[pivot_row_[c]].ents;
            for (const auto& [c2, v2] : ents) ubuf_[c2] += f * v2;
            ubuf_[c] = 0;
        }
        if (lead == ix_.dim()) {
            std::fill(ubuf_.begin(), ubuf_.end(), 0);
            return;
        }
        SparseRow row;
        const std::uint32_t inv = k_.inv(std::uint32_t(ubuf_[lead] % p));
        for (std::size_t c = lead; c < ix_.dim(); ++c) {
            std::uint32_t v = std::uint32_t(ubuf_[c] % p);
            if (v) row.ents.emplace_back(std::uint32_t(c), k_.mul(v, inv));
            ubuf_[c] = 0;
        }
        commit_row(std::move(row), lead);
    }

    void clear_buf(std::size_t from) {
        for (std::size_t c = from; c < ix_.dim(); ++c) buf_[c] = k_.zero();
    }

    void commit_row(SparseRow row, std::size_t lead) {
        std::size_t ri = rows_.size();
        pivot_row_[lead] = std::int64_t(ri);
        pivot_count_by_degree_[ix_.degree_of(lead)]++;

        SkewElement<K> elem;
        for (const auto& [c, x] : row.ents) elem.terms.emplace(ix_.monomial(c), x);
        rows_.push_back(std::move(row));
        row_elems_.push_back(std::move(elem));

        const std::size_t d = row_elems_[ri].degree();
        const std::size_t cap = ix_.cap();
        for (std::size_t i = 0; i < ctx_->dim_V(); ++i) {
            if (d + 1 <= cap) {
                queue_.push(Item{d + 1, seq_++, Item::LeftLetter, ri, std::uint32_t(i)});
                queue_.push(Item{d + 1, seq_++, Item::RightLetter, ri, std::uint32_t(i)});
            }
        }
        for (std::size_t g = 0; g < ctx_->group().order; ++g) {
            if (GIdx(g) == ctx_->group().identity) continue;
            queue_.push(Item{d, seq_++, Item::LeftGroup, ri, std::uint32_t(g)});
            queue_.push(Item{d, seq_++, Item::RightGroup, ri, std::uint32_t(g)});
        }
    }

    const SkewContext<K>* ctx_;
    [[no_unique_address]] K k_;
    DescIndexer ix_;
    std::vector<SkewElement<K>> gens_;
    std::vector<SparseRow> rows_;
    std::vector<SkewElement<K>> row_elems_;
    std::vector<std::int64_t> pivot_row_;
    std::vector<std::size_t> pivot_count_by_degree_;
    std::vector<std::vector<std::size_t>> snapshots_;  // per finished phase
    std::vector<std::size_t> rows_at_phase_;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue_;
    std::uint64_t seq_ = 0;
    std::size_t phase_ = 0;
    std::vector<Elem> buf_;
    std::vector<std::uint64_t> ubuf_;
    bool lazy_ok_ = false;
};

/// span{ a p b : deg <= gen_cap } intersect F^m, plus a stabilization flag
/// (the gen_cap and gen_cap+1 spans agree on F^m).
template <Field K>
struct FilteredSpan {
    Subspace<K> space;
    bool stabilized = false;
};

template <Field K>
FilteredSpan<K> ideal_filtered_span(const SkewContext<K>& ctx,
                                    const std::vector<SkewElement<K>>& P,
                                    std::size_t target_degree, std::size_t gen_cap) {
    if (gen_cap < target_degree) throw CapTooSmall("gen_cap below target degree");
    for (const auto& p : P)
        if (p.degree() > 2) throw std::invalid_argument("ideal generators must have degree <= 2");
    IdealSpanEngine<K> eng(ctx, gen_cap + 1);
    for (const auto& p : P) eng.add_generator(p);
    eng.run();
    MonomialIndexer canon(ctx.dim_V(), ctx.group().order, target_degree);
    FilteredSpan<K> out;
    out.stabilized =
        eng.section_dim(gen_cap, target_degree) == eng.section_dim(gen_cap + 1, target_degree);
    out.space = eng.section_subspace(gen_cap, target_degree, canon);
    return out;
}

/// Filtered dimensions of T/<P> with upper-bound semantics:
/// dims[m] = dim F^m(T) - dim(degree-capped ideal span intersect F^m).
template <Field K>
struct OracleDims {
    std::vector<std::size_t> filtered_dims;  // index m = 0..max_degree
    std::vector<bool> stabilized;            // per m: cap and cap+1 spans agree
    std::vector<std::vector<std::size_t>> span_dims_by_phase;  // [d][m]
};

template <Field K>
OracleDims<K> oracle_dims(const SkewContext<K>& ctx, const std::vector<SkewElement<K>>& P,
                          std::size_t max_degree, std::size_t gen_cap) {
    if (gen_cap < max_degree) throw CapTooSmall("gen_cap below max_degree");
    IdealSpanEngine<K> eng(ctx, gen_cap + 1);
    for (const auto& p : P) {
        if (p.degree() > 2) throw std::invalid_argument("ideal generators must have degree <= 2");
        eng.add_generator(p);
    }
    eng.run();
    MonomialIndexer canon(ctx.dim_V(), ctx.group().order, max_degree);
    OracleDims<K> out;
    out.filtered_dims.resize(max_degree + 1);
    out.stabilized.resize(max_degree + 1);
    for (std::size_t m = 0; m <= max_degree; ++m) {
        out.filtered_dims[m] = canon.dim_filtered(m) - eng.section_dim(gen_cap, m);
        out.stabilized[m] = eng.section_dim(gen_cap, m) == eng.section_dim(gen_cap + 1, m);
    }
    out.span_dims_by_phase.resize(gen_cap + 1);
    for (std::size_t d = 0; d <= gen_cap; ++d) {
        out.span_dims_by_phase[d].resize(max_degree + 1);
        for (std::size_t m = 0; m <= max_degree; ++m)
            out.span_dims_by_phase[d][m] = eng.section_dim(d, m);
    }
    return out;
}

/// Exact graded dims of T/<H> for homogeneous degree-2 generators H,
/// degrees 0..max_degree (products up to degree m generate the full
/// degree-m ideal component, so a cap of max_degree is exact).
template <Field K>
std::vector<std::size_t> homogeneous_quotient_dims(const SkewContext<K>& ctx,
                                                   const std::vector<SkewElement<K>>& H,
                                                   std::size_t max_degree) {
    IdealSpanEngine<K> eng(ctx, max_degree);
    for (const auto& h : H) {
        if (!h.is_zero() && leading_homogeneous(h).terms.size() != h.terms.size())
            throw std::invalid_argument("homogeneous generators expected");
        if (!h.is_zero() && h.degree() <= max_degree) eng.add_generator(h);
    }
    eng.run();
    MonomialIndexer canon(ctx.dim_V(), ctx.group().order, max_degree);
    std::vector<std::size_t> dims(max_degree + 1);
    std::size_t prev_amb = 0, prev_sec = 0;
    for (std::size_t m = 0; m <= max_degree; ++m) {
        std::size_t amb = canon.dim_filtered(m), sec = eng.final_section_dim(m);
        dims[m] = (amb - prev_amb) - (sec - prev_sec);
        prev_amb = amb;
        prev_sec = sec;
    }
    return dims;
}

}  // namespace pbwlab
