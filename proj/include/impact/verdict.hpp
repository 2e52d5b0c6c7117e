#pragma once

#include <map>
#include <string>
#include <vector>

#include "impact/piecewise_linear.hpp"

namespace impact {

/// Outcome of checking one axiom or property on a family. "holds_on_family"
/// is explicitly family-relative; the lab never claims universal truth from
/// search. "vacuous" means the antecedent was never satisfied.
enum class Outcome { holds_on_family, vacuous, violated, undetermined };

inline const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::holds_on_family: return "holds_on_family";
        case Outcome::vacuous: return "vacuous";
        case Outcome::violated: return "violated";
        case Outcome::undetermined: return "undetermined";
    }
    return "?";
}

/// A replayable piece of evidence: the functions involved plus named scalars.
struct Witness {
    std::string description;
    std::vector<PiecewiseLinear> functions;
    std::map<std::string, double> params;
};

struct AxiomVerdict {
    std::string axiom;
    Outcome outcome = Outcome::undetermined;
    std::vector<Witness> witnesses;
    std::string notes;
};

}  // namespace impact
