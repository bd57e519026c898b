#pragma once

#include <map>
#include <tuple>

#include "twin/category.hpp"
#include "twin/oracle.hpp"

namespace twin {

// Finite window of D^b(kA_n), quiver 1 -> 2 -> ... -> n. Indecomposables sit on the
// mesh ZA_n with coords (x, row); arrows (x,r) -> (x,r+1) and (x,r) -> (x+1,r-1).
// Column x = 0 holds the projectives: (0, r) = P_{n+1-r}.
class DerivedAn : public Category {
public:
    DerivedAn(int n, int x_min, int x_max, int core_margin);

    std::string kind() const override { return "derived_a" + std::to_string(n_); }
    bool triangulated() const override { return true; }

    int n() const { return n_; }
    int x(int id) const { return ind_[id].coords[0]; }
    int row(int id) const { return ind_[id].coords[1]; }
    const oracle::LineAlgebra& algebra() const { return alg_; }

    struct Chart {
        int a, b, k;   // interval module [a,b] placed in degree -k, i.e. [a,b][k]
    };
    const Chart& chart(int id) const { return chart_[id]; }
    std::optional<int> from_chart(int a, int b, int k) const;
    const oracle::PComplex& model(int id) const { return model_[id]; }
    oracle::PComplex model(const Obj& x) const;
    oracle::PMap model_map(const Mor& f) const;
    // coefficients of a chain map model(src) -> model(dst); throws if it is not one
    Mor coefficients(const Obj& src, const Obj& dst, const oracle::PMap& m) const;

    std::optional<int> shift(int id, int s = 1) const override;
    std::optional<int> tau(int id, int s = 1) const;
    std::optional<int> ext2_dim(int c, int a) const override;

    ExtClass ext_push(const Mor& f, const ExtClass& d) const override;
    ExtClass ext_pull(const ExtClass& d, const Mor& g) const override;
    Outcome<ETriangle> realize(const ExtClass& d) const override;
    Outcome<ETriangle> cone(const Mor& f) const override;
    Outcome<ETriangle> cocone(const Mor& g) const override;
    bool is_inflation(const Mor&) const override { return true; }
    bool is_deflation(const Mor&) const override { return true; }

    // the class δ ∈ E(C, A) as the morphism C -> A[1] and back
    Mor ext_as_mor(const ExtClass& d) const;
    ExtClass mor_as_ext(const Mor& m, const Obj& a) const;
    Obj shift_obj(const Obj& a, int s = 1) const;

    struct Split {
        Obj obj;
        oracle::PMap iso;   // model(obj) -> input
    };
    Outcome<Split> decompose(const oracle::PComplex& raw) const;
    // multiplicities from the Hom fingerprint alone
    std::optional<std::map<int, int>> fingerprint(const oracle::PComplex& raw) const;

private:
    void knit(int x_lo, int x_hi);
    void build_tables();
    std::optional<Chart> identify(const oracle::PComplex& c) const;
    // solve u ∘ g ≃ h for g : src -> obj(u), with h : model(src) -> target of u
    std::optional<Mor> solve_through(const Obj& src, const Split& sp, const oracle::PComplex& target,
                                     const oracle::PMap& h) const;

    int n_, xmin_, xmax_, pad_;
    oracle::LineAlgebra alg_;
    std::vector<Chart> chart_;
    std::vector<oracle::PComplex> model_;
    std::map<std::tuple<int, int, int>, int> by_chart_;
    std::vector<int> shift_, unshift_;
    std::map<std::pair<int, int>, oracle::PHom> phom_;
    std::map<std::pair<int, int>, std::vector<oracle::PMap>> basis_;
    std::map<std::pair<int, int>, Mat> shift_mat_;   // basis(a,b)[1] in basis(a[1], b[1])
};

}  // namespace twin
