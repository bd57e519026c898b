#pragma once

#include <string>
#include <vector>

#include "twin/category.hpp"
#include "twin/exec.hpp"

namespace twin {

// A subcategory closed under sums, summands and isomorphism, given by its indecomposables.
struct Subcat {
    std::vector<int> ids;   // sorted, unique
    std::string provenance = "literal";

    bool has(int id) const;
    bool has(const Obj& x) const;   // every summand is a member; true for the zero object
    int size() const { return static_cast<int>(ids.size()); }
    bool operator==(const Subcat& o) const { return ids == o.ids; }
    bool operator!=(const Subcat& o) const { return ids != o.ids; }
};

Subcat make_subcat(std::vector<int> ids, std::string provenance = "literal");
Subcat unite(const Subcat& a, const Subcat& b);
Subcat intersect(const Subcat& a, const Subcat& b);
Subcat minus(const Subcat& a, const Subcat& b);
Subcat restrict_to(const Subcat& a, const std::vector<int>& scope);
bool subset_of(const Subcat& a, const Subcat& b);
// members whose shift by s exists in the category
Subcat shift_sub(const Category& cat, const Subcat& a, int s);

// {B in scope : E(X, B) = 0} and {B in scope : E(B, Y) = 0}
Subcat perp_right(const Category& cat, const Subcat& x, const std::vector<int>& scope, Exec ex = Exec::parallel);
Subcat perp_left(const Category& cat, const Subcat& y, const std::vector<int>& scope, Exec ex = Exec::parallel);

// Budget: the largest number of distinct indecomposables combined on the decomposable side of a
// searched triangle (classes in E(C, A1⊕...⊕Ak) or maps A -> B1⊕...⊕Bk, and duals).
struct Budget {
    int width = 3;
};

enum class ClosureMode { extensions, cones, cocones };

struct ClosureResult {
    Subcat sub;
    Status status = Status::ok;
    std::vector<int> escaped;   // summands produced outside the scope
    std::string why;
};

// least fixed point inside scope; objects produced outside scope are reported, not added
ClosureResult closure(const Category& cat, const Subcat& s0, ClosureMode mode, const std::vector<int>& scope,
                      Budget budget = {}, Exec ex = Exec::parallel);

// E-triangles realized from generic classes in E(C, A) with C indecomposable in `cs` and A a sum of
// up to budget.width distinct members of `as`, together with the dual family (A indecomposable).
struct TriangleBatch {
    std::vector<ETriangle> triangles;
    int window_errors = 0;
    int failures = 0;
};
TriangleBatch class_triangles(const Category& cat, const std::vector<int>& cs, const std::vector<int>& as,
                              Budget budget = {}, Exec ex = Exec::parallel);
// cones of generic maps A -> B1⊕..⊕Bk (and A1⊕..⊕Ak -> B), A and B drawn from the given lists
TriangleBatch map_triangles(const Category& cat, const std::vector<int>& as, const std::vector<int>& bs, bool cones,
                            Budget budget = {}, Exec ex = Exec::parallel);

// C ∗ D: summands of middle terms of E-triangles C' -> B -> D' with C' in C, D' in D
Subcat star(const Category& cat, const Subcat& c, const Subcat& d, const std::vector<int>& scope, Budget budget = {},
            Exec ex = Exec::parallel);

struct Membership {
    Subcat members;
    std::vector<int> undecided;   // objects the search could not settle
    Status status() const { return undecided.empty() ? Status::ok : Status::inconclusive; }
};

// S_L = {B : exists Y' -> X' -> B}, S_R = {B : exists B -> Y' -> X'}, X' in X, Y' in Y
Membership s_left(const Category& cat, const Subcat& x, const Subcat& y, const std::vector<int>& scope,
                  Budget budget = {}, Exec ex = Exec::parallel);
Membership s_right(const Category& cat, const Subcat& x, const Subcat& y, const std::vector<int>& scope,
                   Budget budget = {}, Exec ex = Exec::parallel);

struct ThickReport {
    bool thick = true;
    int triangles = 0;
    std::vector<ETriangle> violations;
};
ThickReport is_thick(const Category& cat, const Subcat& s, const std::vector<int>& core, const std::vector<int>& scope,
                     Budget budget = {}, Exec ex = Exec::parallel);

struct HoveyReport {
    bool hovey = false;
    Subcat s_left, s_right;
    std::vector<int> witness;   // symmetric difference
    Status status = Status::ok;
};
HoveyReport is_hovey(const Category& cat, const Subcat& x, const Subcat& y, const std::vector<int>& scope,
                     Budget budget = {}, Exec ex = Exec::parallel);

}  // namespace twin
