#pragma once

#include "twin/category.hpp"
#include "twin/subcat.hpp"

namespace twin {

// Minimal right C-approximation C0 -> B: start from ⊕ X^{dim Hom(X,B)} over members X with all
// basis maps, then strip copies whose component factors through the remaining ones.
Outcome<Mor> min_right_approx(const Category& cat, const Obj& b, const Subcat& c);
Outcome<Mor> min_left_approx(const Category& cat, const Obj& b, const Subcat& c);
// the unstripped starting points of the two algorithms
Mor right_approx_all(const Category& cat, const Obj& b, const Subcat& c);
Mor left_approx_all(const Category& cat, const Obj& b, const Subcat& c);

// every map from (to) a member factors through f
bool is_right_approx(const Category& cat, const Mor& f, const Subcat& c);
bool is_left_approx(const Category& cat, const Mor& f, const Subcat& c);
// no copy of the source (target) can be stripped
bool is_right_minimal(const Category& cat, const Mor& f);
bool is_left_minimal(const Category& cat, const Mor& f);

}  // namespace twin
