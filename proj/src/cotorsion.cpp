#include "twin/cotorsion.hpp"

#include <algorithm>

#include "twin/approx.hpp"

namespace twin {

namespace {

bool covers(const Subcat& s, const std::vector<int>& ids) {
    return std::all_of(ids.begin(), ids.end(), [&](int i) { return s.has(i); });
}

std::vector<std::pair<int, int>> ext_pairs(const Category& cat, const Subcat& a, const Subcat& b,
                                           const Subcat& core) {
    std::vector<std::pair<int, int>> out;
    for (int i : a.ids)
        for (int j : b.ids)
            if ((core.has(i) || core.has(j)) && cat.ext_dim(i, j)) out.emplace_back(i, j);
    return out;
}

Status worst(Status a, Status b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }

}  // namespace

CotorsionCertificate verify_cotorsion(const Category& cat, const Subcat& u, const Subcat& v, const Subcat& ambient,
                                      const std::vector<int>& core, Budget budget, Exec ex) {
    CotorsionCertificate cert;
    cert.u = u;
    cert.v = v;
    cert.ambient = ambient;
    Subcat core_set = make_subcat(core);
    cert.objects = restrict_to(ambient, core).ids;

    if (!subset_of(restrict_to(u, core), ambient) || !subset_of(restrict_to(v, core), ambient)) {
        cert.status = Status::failed;
        cert.why = "pair is not contained in the ambient subcategory";
        return cert;
    }
    if (!covers(ambient, core)) {
        Subcat inner = restrict_to(ambient, core);
        auto cl = closure(cat, inner, ClosureMode::extensions, core, budget, ex);
        cert.ambient_closed = cl.sub == inner;
        if (!cert.ambient_closed) {
            cert.status = Status::failed;
            cert.why = "ambient subcategory is not closed under extensions";
            return cert;
        }
    }

    cert.ext_witnesses = ext_pairs(cat, u, v, core_set);

    int n = static_cast<int>(cert.objects.size());
    cert.right.assign(n, std::nullopt);
    cert.left.assign(n, std::nullopt);
    std::vector<Status> st(n, Status::ok);
    for_each_index(n, ex, [&](int i) {
        Obj b{cert.objects[i]};
        Mor f = *min_right_approx(cat, b, u);
        if (cat.is_deflation(f)) {
            auto t = cat.cocone(f);
            if (!t.ok()) st[i] = worst(st[i], t.status);
            else if (v.has(t->a) && ambient.has(t->a) && ambient.has(t->b)) cert.right[i] = *t;
        }
        Mor g = *min_left_approx(cat, b, v);
        if (cat.is_inflation(g)) {
            auto t = cat.cone(g);
            if (!t.ok()) st[i] = worst(st[i], t.status);
            else if (u.has(t->c) && ambient.has(t->b) && ambient.has(t->c)) cert.left[i] = *t;
        }
    });

    for (int i = 0; i < n; ++i) {
        if (!cert.right[i] || !cert.left[i]) {
            cert.missing.push_back(cert.objects[i]);
            cert.status = worst(cert.status, st[i] == Status::ok ? Status::failed : st[i]);
        }
    }
    if (!cert.ext_witnesses.empty()) cert.status = Status::failed;
    cert.valid = cert.status == Status::ok;
    if (!cert.ext_witnesses.empty()) {
        auto [a, b] = cert.ext_witnesses.front();
        cert.why = "E(" + cat.indec(a).label + ", " + cat.indec(b).label + ") != 0";
    } else if (!cert.missing.empty()) {
        cert.why = "no approximation triangle for " + cat.indec(cert.missing.front()).label;
    }
    return cert;
}

HereditaryReport is_hereditary(const Category& cat, const Subcat& u, const Subcat& v, const std::vector<int>& core,
                               Budget budget, Exec ex) {
    HereditaryReport rep;
    Subcat core_set = make_subcat(core);
    auto uc = restrict_to(u, core).ids, vc = restrict_to(v, core).ids;

    bool unknown = false;
    for (int a : uc)
        for (int b : vc) {
            auto d = cat.ext2_dim(a, b);
            if (!d) unknown = true;
            else if (*d) rep.e2_witnesses.emplace_back(a, b);
        }
    rep.e2_zero = rep.e2_witnesses.empty();

    auto in_core = [&](const ETriangle& t) {
        return core_set.has(t.a) && core_set.has(t.b) && core_set.has(t.c);
    };
    TriangleBatch cocones = map_triangles(cat, uc, uc, false, budget, ex);
    for (auto& t : cocones.triangles) {
        if (!in_core(t)) continue;
        ++rep.triangles;
        if (!u.has(t.a)) rep.u_witnesses.push_back(t);
    }
    TriangleBatch cones = map_triangles(cat, vc, vc, true, budget, ex);
    for (auto& t : cones.triangles) {
        if (!in_core(t)) continue;
        ++rep.triangles;
        if (!v.has(t.c)) rep.v_witnesses.push_back(t);
    }
    rep.u_cocone_closed = rep.u_witnesses.empty();
    rep.v_cone_closed = rep.v_witnesses.empty();
    rep.agree = rep.e2_zero == rep.u_cocone_closed && rep.e2_zero == rep.v_cone_closed;
    rep.hereditary = rep.agree && rep.e2_zero;
    if (cocones.failures || cones.failures || !rep.agree) rep.status = Status::failed;
    else if (unknown) rep.status = Status::inconclusive;
    return rep;
}

TwinCertificate verify_twin(const Category& cat, const Subcat& x, const Subcat& v, const Subcat& u, const Subcat& y,
                            const std::vector<int>& core, Budget budget, Exec ex) {
    TwinCertificate t;
    Subcat whole = make_subcat(cat.window_ids(), "window");
    t.xv = verify_cotorsion(cat, x, v, whole, core, budget, ex);
    t.uy = verify_cotorsion(cat, u, y, whole, core, budget, ex);
    t.x_in_u = subset_of(restrict_to(x, core), u);
    t.ext_xy_zero = ext_pairs(cat, x, y, make_subcat(core)).empty();
    t.z = intersect(u, v);
    t.z.provenance = "Z";
    t.w = intersect(x, y);
    t.w.provenance = "W";
    t.valid = t.xv.valid && t.uy.valid && t.x_in_u && t.ext_xy_zero;
    return t;
}

Check check_prop_hot(const Category& cat, const TwinCertificate& t, const std::vector<int>& core, Budget budget,
                     Exec ex) {
    Check c("prop_hot");
    HoveyReport h = is_hovey(cat, t.x(), t.y(), core, budget, ex);
    if (h.status != Status::ok) {
        c.unknown("S_L/S_R undecided");
        return c;
    }
    if (!h.hovey) {
        c.vacuous = true;
        return c;
    }
    // the ambient must also be known around the core, so recompute S_L over the window
    Subcat sl = s_left(cat, t.x(), t.y(), cat.window_ids(), budget, ex).members;
    ThickReport th = is_thick(cat, restrict_to(sl, core), core, core, budget, ex);
    if (th.thick) c.pass();
    else c.fail("S_L not thick: " + tri_str(cat, th.violations.front()));
    auto cert = verify_cotorsion(cat, t.x(), t.y(), sl, core, budget, ex);
    if (cert.valid) c.pass();
    else if (cert.status == Status::failed) c.fail("(X,Y) not cotorsion in S_L: " + cert.why);
    else c.unknown(cert.why);
    return c;
}

Check check_prop_here(const Category& cat, const TwinCertificate& t, const std::vector<Subcat>& candidates,
                      const std::vector<int>& core, Budget budget, Exec ex) {
    Check c("prop_here");
    bool caps = restrict_to(intersect(t.x(), t.v()), core) == restrict_to(intersect(t.u(), t.y()), core);
    auto h1 = is_hereditary(cat, t.x(), t.v(), core, budget, ex);
    auto h2 = is_hereditary(cat, t.u(), t.y(), core, budget, ex);
    if (h1.status == Status::failed || h2.status == Status::failed) {
        c.fail("hereditary conditions disagree");
        return c;
    }
    if (!caps || !h1.hereditary || !h2.hereditary) {
        c.vacuous = true;
        return c;
    }
    HoveyReport h = is_hovey(cat, t.x(), t.y(), core, budget, ex);
    if (h.status != Status::ok) c.unknown("S_L/S_R undecided");
    else if (h.hovey) c.pass();
    else c.fail("not Hovey, witness " + ids_str(cat, h.witness));
    for (const auto& m : candidates) {
        auto cert = verify_cotorsion(cat, t.x(), t.y(), m, core, budget, ex);
        if (!cert.valid) continue;   // (X,Y) is not cotorsion in this candidate; nothing to compare
        if (restrict_to(m, core) == h.s_left) c.pass();
        else c.fail("candidate " + m.provenance + " differs from S_L");
    }
    return c;
}

}  // namespace twin
