#pragma once

#include <map>
#include <utility>

#include "twin/category.hpp"
#include "twin/oracle.hpp"

namespace twin {

// mod A for A a line quiver v -> v+1 with monomial relations. Indecomposables are the
// relation-compatible intervals [a,b]; coords = (a, b).
class IntervalCategory : public Category {
public:
    // alg covers the padded range; full/core ranges are vertex intervals inside it
    IntervalCategory(oracle::LineAlgebra alg, std::pair<int, int> full, std::pair<int, int> core,
                     std::string name);
    static IntervalCategory type_a(int n);
    static IntervalCategory lambda(int lo, int hi, int core_margin, int pad = 3);

    std::string kind() const override { return name_; }
    bool triangulated() const override { return false; }

    const oracle::LineAlgebra& algebra() const { return alg_; }
    std::pair<int, int> full_range() const { return full_; }
    std::pair<int, int> core_range() const { return core_; }
    int start(int id) const { return ind_[id].coords[0]; }
    int end(int id) const { return ind_[id].coords[1]; }

    // projective cover and syzygy; -1 = zero (projective input), -2 = leaves the padded range
    int proj_cover(int id) const { return pcover_[id]; }
    int syzygy(int id) const { return omega_[id]; }
    int inj_hull(int id) const { return ihull_[id]; }

    std::optional<int> ext2_dim(int c, int a) const override;

    ExtClass ext_push(const Mor& f, const ExtClass& d) const override;
    ExtClass ext_pull(const ExtClass& d, const Mor& g) const override;
    Outcome<ETriangle> realize(const ExtClass& d) const override;
    Outcome<ETriangle> cone(const Mor& f) const override;
    Outcome<ETriangle> cocone(const Mor& g) const override;
    bool is_inflation(const Mor& f) const override;
    bool is_deflation(const Mor& g) const override;
    std::vector<int> projectives() const override;
    std::vector<int> injectives() const override;

    // explicit representations; the list need not be sorted
    oracle::Rep rep(const std::vector<int>& ids) const;
    oracle::RepMap rep_map(const Mor& f) const;
    Mor from_rep_map(const std::vector<int>& src, const std::vector<int>& dst, const oracle::RepMap& m) const;

    struct Split {
        Obj obj;
        oracle::RepMap iso;   // rep(obj) -> input
    };
    Outcome<Split> decompose(const oracle::Rep& m) const;
    // multiplicities from the Hom fingerprint alone; nullopt when the system is not solvable in N
    std::optional<std::map<int, int>> fingerprint(const oracle::Rep& m) const;

    // representative of an E class in Hom(Ω c, a), and back
    Vec ext_rep(int c, int a, const Vec& coords) const;
    Vec ext_coords(int c, int a, const Vec& hom_vec) const;

private:
    void build();
    Outcome<ETriangle> finish_cone(const Mor& f, const oracle::Rep& coker, const oracle::RepMap& q) const;

    oracle::LineAlgebra alg_;
    std::pair<int, int> full_, core_;
    std::string name_;
    std::vector<int> pcover_, omega_, ihull_;
    std::map<std::pair<int, int>, Subquotient> ext_q_;    // (c, a) -> Hom(Ωc, a) / image of ι^*
    std::map<std::pair<int, int>, std::vector<Vec>> omega_map_;   // (c', c) -> Ω of each basis map
};

}  // namespace twin
