// ============================================================================
// vl/generate.hpp — Random formula pools
// ============================================================================

#ifndef VL_GENERATE_HPP
#define VL_GENERATE_HPP

#include <random>
#include <string>
#include <vector>

#include "vl/formula.hpp"

namespace vl {

struct FormulaPoolParams {
    int agents = 2;
    std::vector<std::string> props = {"p", "q", "r"};
    int max_depth = 4;
    bool surface_connectives = true;  // emit Or/Implies nodes as well
};

// Uniform-ish random formula; deterministic in the rng state.
Formula random_formula(std::mt19937_64& rng, const FormulaPoolParams& params);

// Random necessarily-agent-independent formula: a boolean combination of
// Report/Def-rooted subformulas (and boolean literals).
Formula random_nai_formula(std::mt19937_64& rng, const FormulaPoolParams& params);

}  // namespace vl

#endif  // VL_GENERATE_HPP
