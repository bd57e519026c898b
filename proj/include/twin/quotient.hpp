#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twin/cotorsion.hpp"
#include "twin/report.hpp"
#include "twin/subcat.hpp"

namespace twin {

// Hom(A,B) modulo the maps factoring through W.
class StableHom {
public:
    StableHom(const Category& cat, const Obj& a, const Obj& b, const Subcat& w);

    int hom_dim() const { return n_; }
    int dim() const { return n_ - sub_.dim(); }
    int ideal_dim() const { return sub_.dim(); }
    bool is_zero(const Vec& f) const { return sub_.contains(f); }
    bool is_zero(const Mor& f) const { return is_zero(f.c); }
    bool equal(const Mor& f, const Mor& g) const { return is_zero(sub(f.c, g.c)); }
    const Span& ideal() const { return sub_; }
    // spanning set of [W](A,B) as coefficient vectors
    const std::vector<Vec>& generators() const { return gens_; }

private:
    int n_;
    Span sub_;
    std::vector<Vec> gens_;
};

// two-sided inverse of f in the quotient by [W], by an exact linear solve
std::optional<Mor> stable_inverse(const Category& cat, const Mor& f, const Subcat& w);

// Data fixed for one object: B -> V_B -> X_B and Y^B -> Z_B -> V_B.
struct GEntry {
    Obj b;
    Mor v;   // v_B : B -> V_B
    Mor z;   // z_B : Z_B -> V_B
    Obj xb, yb;
    Status status = Status::ok;
    std::string why;

    const Obj& vb() const { return v.dst; }
    const Obj& zb() const { return z.src; }
};

// The functor G : B -> Z/[W] of a twin cotorsion pair.
class GFunctor {
public:
    // entries are built for every window indecomposable; those whose triangles leave the window are
    // kept with a window_error status
    GFunctor(const Category& cat, const TwinCertificate& twin, Exec ex = Exec::parallel);

    const Category& cat() const { return cat_; }
    const TwinCertificate& twin() const { return twin_; }
    const Subcat& w() const { return twin_.w; }
    const GEntry& entry(int id) const { return table_[id]; }
    // entry of a direct sum, assembled summand by summand
    Outcome<GEntry> entry(const Obj& b) const;
    Outcome<Obj> object(const Obj& b) const;

    // lifts for f : B -> C; alt > 0 perturbs both lifts by seeded kernel elements
    struct Lifts {
        Mor vf, zf;
    };
    Outcome<Lifts> lifts(const Mor& f, unsigned alt = 0) const;
    Outcome<Mor> map(const Mor& f, unsigned alt = 0) const;   // representative of G(f)
    bool stably_equal(const Mor& f, const Mor& g) const;
    bool stably_invertible(const Mor& f) const;
    // G(f) invertible in Z/[W]; inconclusive if G(f) cannot be formed inside the window
    Outcome<bool> inverts(const Mor& f) const;

    // non-W summands of Z_B
    Outcome<Obj> essential(const Obj& b) const;

private:
    GEntry build(int id) const;

    const Category& cat_;
    const TwinCertificate& twin_;
    std::vector<GEntry> table_;
};

enum class MorClass { R, W1, W2, W, V1, V2, V };
const char* to_string(MorClass c);

enum class Verdict { yes, no, unknown };

// R, W1, W2, V1, V2 are decided exactly from the (co)cone of f. W and V search a few
// factorizations; failing to find one is reported as unknown, never as no.
Verdict class_membership(const Category& cat, const Mor& f, MorClass cls, const TwinCertificate& twin,
                         const Subcat& s);

// For f in R with cone in S: the factorization f = d2 ∘ d1 with d1 in W1 and d2 in W2 obtained
// by pulling back along a right X-approximation of the cone.
struct Factorization {
    Mor first, second;
};
Outcome<Factorization> factor_r_through_w(const Category& cat, const Mor& f, const TwinCertificate& twin,
                                          const Subcat& s);

bool iso_in_localization(const GFunctor& g, const Obj& a, const Obj& b);

// morphisms used by the theorem-level checks: generic maps between core indecomposables and small
// sums of them, identities and maps from/to zero
std::vector<Mor> sample_morphisms(const Category& cat, const std::vector<int>& core, Budget budget = {});

Check check_prop_im(const GFunctor& g, const Subcat& s, const std::vector<Mor>& maps, Exec ex = Exec::parallel);
Check check_prop_sigma(const GFunctor& g, const std::vector<Mor>& maps, Exec ex = Exec::parallel);
Check check_bmlcor(const GFunctor& g, const std::vector<Mor>& maps, Exec ex = Exec::parallel);
Check check_well_defined(const GFunctor& g, const std::vector<Mor>& maps, Exec ex = Exec::parallel);
Check check_functorial(const GFunctor& g, const std::vector<Mor>& maps, Exec ex = Exec::parallel);
// f' stably zero (factors through W) ⇒ G(f + f') = G(f)
Check check_perturbation(const GFunctor& g, const std::vector<Mor>& maps, Exec ex = Exec::parallel);
// G restricted to Z is the quotient functor: G(B) ≅ B and G(f) = f̄ up to the fixed isos
Check check_on_z(const GFunctor& g, const std::vector<Mor>& maps, Exec ex = Exec::parallel);
// every f in R admits the W2 ∘ W1 factorization
Check check_r_in_w(const GFunctor& g, const Subcat& s, const std::vector<Mor>& maps, Exec ex = Exec::parallel);
// for indecomposable A outside W, id_A does not factor through W
Check check_local_rule(const GFunctor& g, const std::vector<int>& core);

// A -> W_A -> A<1> from a left W-approximation; minimal or the full unstripped one
struct Suspension {
    ETriangle t;
    Obj shifted() const { return t.c; }
};
Outcome<Suspension> suspension(const Category& cat, const Obj& a, const Subcat& w, bool minimal = true);

// A -f-> B -g-> C -h-> A<1> for an E-triangle in Z
struct StdTriangle {
    Mor f, g, h;
    Suspension sus;
};
Outcome<StdTriangle> standard_triangle(const Category& cat, const ETriangle& t, const Subcat& w);
// the two suspension choices for A give stably isomorphic objects via the map induced by id_A
Check check_suspension(const Category& cat, const std::vector<int>& objs, const Subcat& w, Exec ex = Exec::parallel);

// Shift on B/S: A[1] = U_A from a minimal left Y-approximation A -> Y_A -> U_A.
Outcome<Obj> shift_bs(const Category& cat, const Obj& a, const TwinCertificate& twin);

// The recipe turning an E-triangle A -> B -> C into one inside Z, with each step a morphism of
// E-triangles whose components G inverts.
struct InduceStep {
    std::string name;
    ETriangle from, to;
    Mor a, b, c;   // components from -> to (direction recorded in `forward`)
    bool forward = true;
};
struct InduceResult {
    ETriangle z;   // Z^A -> Z^B -> Z^C
    std::vector<InduceStep> steps;
};
Outcome<InduceResult> induce(const GFunctor& g, const ETriangle& t);
Check check_prop_induce(const GFunctor& g, const std::vector<ETriangle>& triangles,
                        Exec ex = Exec::parallel);

}  // namespace twin
