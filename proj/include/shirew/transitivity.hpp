#pragma once

#include <vector>

#include "shirew/dd.hpp"
#include "shirew/ontology.hpp"

namespace shirew {

// The output of transitivity elimination: a transitivity-free TBox plus the
// datalog role program that must be applied to the data first.
struct TransitivitySplit {
    TBox omega;
    std::vector<Rule> xi;  // R(x,y)->S(x,y), R(x,y)->S(y,x), R(x,y),R(y,z)->R(x,z)
};

// T minus its transitivity axioms, extended (unless T is a Bool-TBox) with
// Exists R.A <= B^R, Exists R.B^R <= B^R, B^R <= B for each Exists S.A <= B
// in T and each transitive role R with R below S in the hierarchy. The fresh
// B^R concepts are named Q__B__R.
TBox upsilon(const TBox& t);

// Omega: upsilon plus A <= HasSelf(R) for every atomic A and atomic
// transitive R such that some A <= Exists S.B in T has S below both R and
// Inv(R); Xi: the datalog rules of the role inclusion and transitivity
// axioms. `with_self_extension` exists so the effect of the Self axioms can
// be demonstrated in isolation.
TransitivitySplit split(const TBox& t, bool with_self_extension = true);

}  // namespace shirew
