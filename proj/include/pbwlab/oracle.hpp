#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pbwlab/ideal_span.hpp"
#include "pbwlab/rewrite.hpp"

namespace pbwlab {

/// Semi-decision of the PBW property by degree-truncated rewriting and
/// ideal-span dimension counts.
struct OracleVerdict {
    enum class Kind { NotPBW, PBWUpTo, Inconclusive };
    Kind kind = Kind::Inconclusive;

    // NotPBW data: lowest filtered degree with a dimension defect, and the
    // lowest product-degree cap at which the defect becomes visible (the
    // degree of the cancellation that produces the witness element).
    std::size_t defect_degree = 0;
    std::size_t detected_at_cap = 0;

    // PBWUpTo data
    std::size_t upto = 0;

    bool completion_complete = false;
    std::vector<std::size_t> oracle_dims;      // filtered dims of T/<P>, upper bounds
    std::vector<std::size_t> homogeneous_cum;  // cumulative dims of T/<pi(P)>
    std::vector<bool> stabilized;

    std::string kind_str() const {
        switch (kind) {
            case Kind::NotPBW: return "NotPBW";
            case Kind::PBWUpTo: return "PBWUpTo";
            default: return "Inconclusive";
        }
    }
};

/// Compare filtered dims of T/<P> against the graded dims of T/<pi(P)>
/// accumulated to the same degree. A drop below the homogeneous count is a
/// definitive refutation (the canonical surjection forces equality under
/// PBW); equality certifies PBW up to max_degree only when the truncated
/// completion closed.
template <Field K>
OracleVerdict pbw_oracle_verdict(const SkewContext<K>& ctx, const std::vector<SkewElement<K>>& P,
                                 std::size_t max_degree, std::size_t gen_cap) {
    if (max_degree < 3) throw std::invalid_argument("pbw_oracle_verdict needs max_degree >= 3");
    if (gen_cap < max_degree) throw CapTooSmall("gen_cap below max_degree");

    OracleVerdict v;

    std::vector<SkewElement<K>> H;
    for (const auto& p : P) H.push_back(pi(p));
    auto hom = homogeneous_quotient_dims(ctx, H, max_degree);
    v.homogeneous_cum.resize(max_degree + 1);
    std::size_t acc = 0;
    for (std::size_t m = 0; m <= max_degree; ++m) {
        acc += hom[m];
        v.homogeneous_cum[m] = acc;
    }

    auto od = oracle_dims(ctx, P, max_degree, gen_cap);
    v.oracle_dims = od.filtered_dims;
    v.stabilized = od.stabilized;

    auto sys = truncated_completion(ctx, P, gen_cap);
    v.completion_complete = sys.complete();

    std::vector<std::size_t> best = od.filtered_dims;
    if (sys.complete()) {
        // the completion's normal-monomial counts are exact dims
        best = sys.normal_filtered_dims(max_degree);
    }

    MonomialIndexer canon(ctx.dim_V(), ctx.group().order, max_degree);
    for (std::size_t m = 0; m <= max_degree; ++m) {
        if (best[m] < v.homogeneous_cum[m]) {
            v.kind = OracleVerdict::Kind::NotPBW;
            v.defect_degree = m;
            // smallest span cap at which some defect is visible
            v.detected_at_cap = gen_cap;
            for (std::size_t d = 0; d <= gen_cap; ++d) {
                bool seen = false;
                for (std::size_t mm = 0; mm <= max_degree && !seen; ++mm)
                    if (canon.dim_filtered(mm) - od.span_dims_by_phase[d][mm] <
                        v.homogeneous_cum[mm])
                        seen = true;
                if (seen) {
                    v.detected_at_cap = d;
                    break;
                }
            }
            return v;
        }
    }
    bool all_equal = true;
    for (std::size_t m = 0; m <= max_degree; ++m)
        if (best[m] != v.homogeneous_cum[m]) all_equal = false;
    if (all_equal && sys.complete()) {
        v.kind = OracleVerdict::Kind::PBWUpTo;
        v.upto = max_degree;
    } else {
        v.kind = OracleVerdict::Kind::Inconclusive;
    }
    return v;
}

}  // namespace pbwlab
