// ============================================================================
// vl/checker.hpp — Exact model checking over vagueness structures
// ============================================================================
//
// Truth is relative to a world AND an evaluating agent:
//
//   (M,w,i) |= p        iff w in pi_i(p)
//   (M,w,i) |= Rj f     iff (M,v,j) |= f for all v in P_j with w ~j v
//   (M,w,i) |= Dj f     iff (M,v,j) |= f for all v with w ~o v
//
// Note both modalities switch the evaluating agent to j, which makes
// R/D-rooted formulas agent-independent.
//
// ============================================================================

#ifndef VL_CHECKER_HPP
#define VL_CHECKER_HPP

#include <map>
#include <optional>
#include <string>

#include <boost/rational.hpp>

#include "vl/formula.hpp"
#include "vl/structure.hpp"

namespace vl {

using Rational = boost::rational<long long>;

struct EvalPoint {
    int world = 0;
    int agent = 1;  // 1-based
    friend bool operator==(const EvalPoint&, const EvalPoint&) = default;
};

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Throws EvalError for unknown worlds/propositions and agent indices
// beyond the structure's n (an unknown proposition is an error, never
// silently false).  Caches by (subformula, world, agent) within the query.
bool eval(const VagueStructure& m, int world, int agent, const Formula& f);

// First falsifying point in (world index, agent) order, or nullopt when f
// holds at every point.
std::optional<EvalPoint> counterexample_in_model(const VagueStructure& m,
                                                 const Formula& f);
bool valid_in_model(const VagueStructure& m, const Formula& f);

// True iff the truth of f never depends on the evaluating agent.
bool agent_independent_in_model(const VagueStructure& m, const Formula& f);

// True iff the truth of f depends only on the objective coordinate (implies
// agent independence).
bool objective_in_model(const VagueStructure& m, const Formula& f);

// Fraction of agents satisfying f at a world, kept unreduced: the numerator
// counts agents, the denominator is n.
struct Degree {
    long long satisfied = 0;
    long long agents = 1;
    Rational value() const { return Rational(satisfied, agents); }
    std::string str() const {
        return std::to_string(satisfied) + "/" + std::to_string(agents);
    }
    friend bool operator==(const Degree&, const Degree&) = default;
};

Degree degree(const VagueStructure& m, int world, const Formula& f);

// Expectation of degree(.) under a distribution on the worlds of one
// objective state.  Every key must belong to that state; weights must be
// nonnegative and sum to exactly 1 (EvalError otherwise).
Rational expected_degree(const VagueStructure& m, int objective_state,
                         const std::map<int, Rational>& dist, const Formula& f);

}  // namespace vl

#endif  // VL_CHECKER_HPP
