#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twin/report.hpp"
#include "twin/subcat.hpp"

namespace twin {

// Certificate for a cotorsion pair (U,V) inside an ambient subcategory: E(U,V) = 0 and, for every
// ambient object B of the core, triangles V^B -> U^B -> B and B -> V_B -> U_B with all terms ambient.
struct CotorsionCertificate {
    Subcat u, v, ambient;
    std::vector<int> objects;
    std::vector<std::optional<ETriangle>> right;   // V^B -> U^B -> B
    std::vector<std::optional<ETriangle>> left;    // B -> V_B -> U_B
    std::vector<std::pair<int, int>> ext_witnesses;
    std::vector<int> missing;                      // objects lacking one of the two triangles
    bool ambient_closed = true;
    bool valid = false;
    Status status = Status::ok;
    std::string why;
};

// objects = ambient ∩ core. Membership of approximation terms is decided on the window-level sets,
// so u and v should be given over the whole window.
CotorsionCertificate verify_cotorsion(const Category& cat, const Subcat& u, const Subcat& v, const Subcat& ambient,
                                      const std::vector<int>& core, Budget budget = {}, Exec ex = Exec::parallel);

struct HereditaryReport {
    bool e2_zero = true;
    bool u_cocone_closed = true;
    bool v_cone_closed = true;
    bool agree = true;
    bool hereditary = false;
    int triangles = 0;
    std::vector<std::pair<int, int>> e2_witnesses;
    std::vector<ETriangle> u_witnesses, v_witnesses;
    Status status = Status::ok;
};

// The three equivalent conditions evaluated separately on the core; disagreement is a hard failure.
HereditaryReport is_hereditary(const Category& cat, const Subcat& u, const Subcat& v, const std::vector<int>& core,
                               Budget budget = {}, Exec ex = Exec::parallel);

struct TwinCertificate {
    CotorsionCertificate xv, uy;
    bool x_in_u = false;
    bool ext_xy_zero = false;
    Subcat z, w;   // U ∩ V and X ∩ Y
    bool valid = false;

    const Subcat& x() const { return xv.u; }
    const Subcat& v() const { return xv.v; }
    const Subcat& u() const { return uy.u; }
    const Subcat& y() const { return uy.v; }
};

TwinCertificate verify_twin(const Category& cat, const Subcat& x, const Subcat& v, const Subcat& u, const Subcat& y,
                            const std::vector<int>& core, Budget budget = {}, Exec ex = Exec::parallel);

// Hovey ⇒ S_L thick and (X,Y) cotorsion in S_L
Check check_prop_hot(const Category& cat, const TwinCertificate& t, const std::vector<int>& core, Budget budget = {},
                     Exec ex = Exec::parallel);
// X∩V = U∩Y and both pairs hereditary ⇒ Hovey and every candidate M with (X,Y) cotorsion in M equals S_L.
// Only the supplied candidates can be compared, so uniqueness is a bounded check.
Check check_prop_here(const Category& cat, const TwinCertificate& t, const std::vector<Subcat>& candidates,
                      const std::vector<int>& core, Budget budget = {}, Exec ex = Exec::parallel);

}  // namespace twin
