#include "vl/generate.hpp"

#include <functional>
#include <stdexcept>

namespace vl {

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Formula gen(std::mt19937_64& rng, const FormulaPoolParams& p, int depth) {
    if (depth <= 0) {
        // Leaf: mostly propositions, occasionally a literal.
        int r = pick(rng, 0, 9);
        if (r == 0) return lit_true();
        if (r == 1) return lit_false();
        return prop(p.props[pick(rng, 0, static_cast<int>(p.props.size()) - 1)]);
    }
    int hi = p.surface_connectives ? 7 : 5;
    switch (pick(rng, 0, hi)) {
        case 0:
            return gen(rng, p, 0);
        case 1:
            return !gen(rng, p, depth - 1);
        case 2:
            return gen(rng, p, depth - 1) && gen(rng, p, depth - 1);
        case 3:
            return report(pick(rng, 1, p.agents), gen(rng, p, depth - 1));
        case 4:
            return definitely(pick(rng, 1, p.agents), gen(rng, p, depth - 1));
        case 5:
            return gen(rng, p, depth - 1) && gen(rng, p, depth - 1);
        case 6:
            return gen(rng, p, depth - 1) || gen(rng, p, depth - 1);
        default:
            return implies(gen(rng, p, depth - 1), gen(rng, p, depth - 1));
    }
}

}  // namespace

Formula random_formula(std::mt19937_64& rng, const FormulaPoolParams& params) {
    if (params.agents < 1 || params.props.empty())
        throw std::invalid_argument("random_formula: need agents and props");
    return gen(rng, params, pick(rng, 0, params.max_depth));
}

Formula random_nai_formula(std::mt19937_64& rng,
                           const FormulaPoolParams& params) {
    if (params.agents < 1 || params.props.empty())
        throw std::invalid_argument("random_nai_formula: need agents and props");
    // Modal-rooted base cases, combined with boolean connectives only.
    int depth = pick(rng, 0, 2);
    std::function<Formula(int)> build = [&](int d) -> Formula {
        if (d <= 0) {
            Formula body = gen(rng, params, pick(rng, 0, 2));
            int j = pick(rng, 1, params.agents);
            return pick(rng, 0, 1) == 0 ? report(j, body) : definitely(j, body);
        }
        switch (pick(rng, 0, 3)) {
            case 0:
                return !build(d - 1);
            case 1:
                return build(d - 1) && build(d - 1);
            case 2:
                return build(d - 1) || build(d - 1);
            default:
                return implies(build(d - 1), build(d - 1));
        }
    };
    return build(depth);
}

}  // namespace vl
