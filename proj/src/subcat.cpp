#include "twin/subcat.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "twin/approx.hpp"

namespace twin {

bool Subcat::has(int id) const { return std::binary_search(ids.begin(), ids.end(), id); }

bool Subcat::has(const Obj& x) const {
    return std::all_of(x.begin(), x.end(), [&](int i) { return has(i); });
}

Subcat make_subcat(std::vector<int> ids, std::string provenance) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return Subcat{std::move(ids), std::move(provenance)};
}

Subcat unite(const Subcat& a, const Subcat& b) {
    std::vector<int> v;
    std::set_union(a.ids.begin(), a.ids.end(), b.ids.begin(), b.ids.end(), std::back_inserter(v));
    return Subcat{v, "union"};
}

Subcat intersect(const Subcat& a, const Subcat& b) {
    std::vector<int> v;
    std::set_intersection(a.ids.begin(), a.ids.end(), b.ids.begin(), b.ids.end(), std::back_inserter(v));
    return Subcat{v, "intersection"};
}

Subcat minus(const Subcat& a, const Subcat& b) {
    std::vector<int> v;
    std::set_difference(a.ids.begin(), a.ids.end(), b.ids.begin(), b.ids.end(), std::back_inserter(v));
    return Subcat{v, "difference"};
}

Subcat restrict_to(const Subcat& a, const std::vector<int>& scope) {
    Subcat s = intersect(a, make_subcat(scope));
    s.provenance = a.provenance;
    return s;
}

bool subset_of(const Subcat& a, const Subcat& b) {
    return std::includes(b.ids.begin(), b.ids.end(), a.ids.begin(), a.ids.end());
}

Subcat shift_sub(const Category& cat, const Subcat& a, int s) {
    std::vector<int> v;
    for (int i : a.ids)
        if (auto t = cat.shift(i, s)) v.push_back(*t);
    return make_subcat(v, "shift");
}

Subcat perp_right(const Category& cat, const Subcat& x, const std::vector<int>& scope, Exec ex) {
    std::vector<char> keep(scope.size(), 0);
    for_each_index(static_cast<int>(scope.size()), ex, [&](int i) {
        keep[i] = std::all_of(x.ids.begin(), x.ids.end(), [&](int m) { return cat.ext_dim(m, scope[i]) == 0; });
    });
    std::vector<int> v;
    for (std::size_t i = 0; i < scope.size(); ++i)
        if (keep[i]) v.push_back(scope[i]);
    return make_subcat(v, "perp_right");
}

Subcat perp_left(const Category& cat, const Subcat& y, const std::vector<int>& scope, Exec ex) {
    std::vector<char> keep(scope.size(), 0);
    for_each_index(static_cast<int>(scope.size()), ex, [&](int i) {
        keep[i] = std::all_of(y.ids.begin(), y.ids.end(), [&](int m) { return cat.ext_dim(scope[i], m) == 0; });
    });
    std::vector<int> v;
    for (std::size_t i = 0; i < scope.size(); ++i)
        if (keep[i]) v.push_back(scope[i]);
    return make_subcat(v, "perp_left");
}

namespace {

void subsets(const std::vector<int>& pool, int lo, int hi, const std::function<void(const Obj&)>& emit) {
    Obj cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (static_cast<int>(cur.size()) >= lo) emit(cur);
        if (static_cast<int>(cur.size()) == hi) return;
        for (std::size_t i = start; i < pool.size(); ++i) {
            cur.push_back(pool[i]);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

using Job = std::pair<Obj, Obj>;

// (C, A) pairs: C indecomposable from c1 with A ⊆ a1, and A indecomposable from a2 with C ⊆ c2
std::vector<Job> class_jobs(const Category& cat, const std::vector<int>& c1, const std::vector<int>& a1,
                            const std::vector<int>& a2, const std::vector<int>& c2, int width) {
    std::set<Job> seen;
    std::vector<Job> out;
    auto add = [&](Obj c, Obj a) {
        Job j{std::move(c), std::move(a)};
        if (seen.insert(j).second) out.push_back(j);
    };
    for (int c : c1) {
        std::vector<int> nb;
        for (int a : a1)
            if (cat.ext_dim(c, a)) nb.push_back(a);
        subsets(nb, 1, width, [&](const Obj& s) { add({c}, s); });
    }
    for (int a : a2) {
        std::vector<int> nb;
        for (int c : c2)
            if (cat.ext_dim(c, a)) nb.push_back(c);
        subsets(nb, 1, width, [&](const Obj& s) { add(s, {a}); });
    }
    return out;
}

// (A, B) pairs for maps A -> B: A indecomposable with B ⊆ b-pool (possibly empty), and dually
std::vector<Job> map_jobs(const Category& cat, const std::vector<int>& a1, const std::vector<int>& b1,
                          const std::vector<int>& b2, const std::vector<int>& a2, int width, bool allow_zero_target,
                          bool allow_zero_source) {
    std::set<Job> seen;
    std::vector<Job> out;
    auto add = [&](Obj a, Obj b) {
        Job j{std::move(a), std::move(b)};
        if (seen.insert(j).second) out.push_back(j);
    };
    for (int a : a1) {
        std::vector<int> nb;
        for (int b : b1)
            if (cat.hom_dim(a, b)) nb.push_back(b);
        subsets(nb, allow_zero_target ? 0 : 1, width, [&](const Obj& s) { add({a}, s); });
    }
    for (int b : b2) {
        std::vector<int> nb;
        for (int a : a2)
            if (cat.hom_dim(a, b)) nb.push_back(a);
        subsets(nb, allow_zero_source ? 0 : 1, width, [&](const Obj& s) { add(s, {b}); });
    }
    return out;
}

ExtClass generic_class(const Category& cat, const Obj& c, const Obj& a) {
    ExtClass e = cat.zero_ext(c, a);
    for (auto& x : e.v) x = 1;
    return e;
}

Mor generic_map(const Category& cat, const Obj& a, const Obj& b) {
    Mor m = cat.zero(a, b);
    for (auto& x : m.c) x = 1;
    return m;
}

TriangleBatch run_class_jobs(const Category& cat, const std::vector<Job>& jobs, Exec ex) {
    std::vector<Outcome<ETriangle>> res(jobs.size());
    for_each_index(static_cast<int>(jobs.size()), ex,
                   [&](int i) { res[i] = cat.realize(generic_class(cat, jobs[i].first, jobs[i].second)); });
    TriangleBatch b;
    for (auto& r : res) {
        if (r.ok()) b.triangles.push_back(std::move(*r.value));
        else if (r.status == Status::window_error) ++b.window_errors;
        else ++b.failures;
    }
    return b;
}

TriangleBatch run_map_jobs(const Category& cat, const std::vector<Job>& jobs, bool cones, Exec ex) {
    std::vector<std::optional<Outcome<ETriangle>>> res(jobs.size());
    for_each_index(static_cast<int>(jobs.size()), ex, [&](int i) {
        Mor f = generic_map(cat, jobs[i].first, jobs[i].second);
        if (cones) {
            if (cat.is_inflation(f)) res[i] = cat.cone(f);
        } else {
            if (cat.is_deflation(f)) res[i] = cat.cocone(f);
        }
    });
    TriangleBatch b;
    for (auto& r : res) {
        if (!r) continue;
        if (r->ok()) b.triangles.push_back(std::move(*r->value));
        else if (r->status == Status::window_error) ++b.window_errors;
        else ++b.failures;
    }
    return b;
}

}  // namespace

TriangleBatch class_triangles(const Category& cat, const std::vector<int>& cs, const std::vector<int>& as,
                              Budget budget, Exec ex) {
    return run_class_jobs(cat, class_jobs(cat, cs, as, cs, as, budget.width), ex);
}

TriangleBatch map_triangles(const Category& cat, const std::vector<int>& as, const std::vector<int>& bs, bool cones,
                            Budget budget, Exec ex) {
    // cones may use A -> 0, cocones 0 -> B
    auto jobs = map_jobs(cat, as, bs, bs, as, budget.width, cones, !cones);
    return run_map_jobs(cat, jobs, cones, ex);
}

ClosureResult closure(const Category& cat, const Subcat& s0, ClosureMode mode, const std::vector<int>& scope,
                      Budget budget, Exec ex) {
    ClosureResult res;
    Subcat in_scope = make_subcat(scope);
    Subcat cur = restrict_to(s0, scope);
    std::set<Job> done;
    std::set<int> escaped;
    for (;;) {
        std::vector<Job> jobs;
        if (mode == ClosureMode::extensions) jobs = class_jobs(cat, cur.ids, cur.ids, cur.ids, cur.ids, budget.width);
        else {
            bool cones = mode == ClosureMode::cones;
            jobs = map_jobs(cat, cur.ids, cur.ids, cur.ids, cur.ids, budget.width, cones, !cones);
        }
        std::vector<Job> fresh;
        for (auto& j : jobs)
            if (done.insert(j).second) fresh.push_back(std::move(j));
        if (fresh.empty()) break;
        TriangleBatch b = mode == ClosureMode::extensions ? run_class_jobs(cat, fresh, ex)
                                                          : run_map_jobs(cat, fresh, mode == ClosureMode::cones, ex);
        if (b.failures) {
            res.status = Status::failed;
            res.why = "triangle construction failed during closure";
        }
        if (b.window_errors && res.status == Status::ok) {
            res.status = Status::window_error;
            res.why = "a triangle left the padded window";
        }
        std::vector<int> add;
        for (const auto& t : b.triangles) {
            const Obj& out = mode == ClosureMode::extensions ? t.b : mode == ClosureMode::cones ? t.c : t.a;
            for (int i : out) {
                if (in_scope.has(i)) add.push_back(i);
                else escaped.insert(i);
            }
        }
        Subcat next = unite(cur, make_subcat(add));
        if (next == cur) break;
        cur = next;
    }
    cur.provenance = mode == ClosureMode::extensions ? "closure:extensions"
                     : mode == ClosureMode::cones    ? "closure:cones"
                                                     : "closure:cocones";
    res.sub = cur;
    res.escaped.assign(escaped.begin(), escaped.end());
    return res;
}

Subcat star(const Category& cat, const Subcat& c, const Subcat& d, const std::vector<int>& scope, Budget budget,
            Exec ex) {
    // triangles C' -> B -> D' come from classes in E(D', C'); split ones contribute C ∪ D
    auto jobs = class_jobs(cat, d.ids, c.ids, c.ids, d.ids, budget.width);
    TriangleBatch b = run_class_jobs(cat, jobs, ex);
    std::vector<int> v = unite(c, d).ids;
    for (const auto& t : b.triangles) v.insert(v.end(), t.b.begin(), t.b.end());
    Subcat s = restrict_to(make_subcat(v), scope);
    s.provenance = "star";
    return s;
}

namespace {

bool ext_vanishes(const Category& cat, const Subcat& x, const Subcat& y) {
    for (int a : x.ids)
        for (int b : y.ids)
            if (cat.ext_dim(a, b)) return false;
    return true;
}

enum class Verdict { yes, no, unknown };

Membership collect(const std::vector<int>& scope, const std::vector<Verdict>& v, const char* prov) {
    Membership m;
    std::vector<int> ids;
    for (std::size_t i = 0; i < scope.size(); ++i) {
        if (v[i] == Verdict::yes) ids.push_back(scope[i]);
        if (v[i] == Verdict::unknown) m.undecided.push_back(scope[i]);
    }
    m.members = make_subcat(ids, prov);
    return m;
}

}  // namespace

Membership s_left(const Category& cat, const Subcat& x, const Subcat& y, const std::vector<int>& scope, Budget budget,
                  Exec ex) {
    std::vector<Verdict> v(scope.size(), Verdict::unknown);
    bool exact = ext_vanishes(cat, x, y);
    for_each_index(static_cast<int>(scope.size()), ex, [&](int i) {
        Obj b{scope[i]};
        if (x.has(scope[i])) {
            v[i] = Verdict::yes;
            return;
        }
        if (exact) {
            // with E(X,Y) = 0 the deflation of such a triangle is a right X-approximation,
            // so the minimal one decides membership
            Mor f = *min_right_approx(cat, b, x);
            if (!cat.is_deflation(f)) {
                v[i] = Verdict::no;
                return;
            }
            auto t = cat.cocone(f);
            if (!t.ok()) return;
            v[i] = y.has(t->a) ? Verdict::yes : Verdict::no;
            return;
        }
        std::vector<int> nb;
        for (int m : y.ids)
            if (cat.ext_dim(scope[i], m)) nb.push_back(m);
        subsets(nb, 1, budget.width, [&](const Obj& s) {
            if (v[i] == Verdict::yes) return;
            auto t = cat.realize(generic_class(cat, b, s));
            if (t.ok() && x.has(t->b)) v[i] = Verdict::yes;
        });
    });
    return collect(scope, v, "s_left");
}

Membership s_right(const Category& cat, const Subcat& x, const Subcat& y, const std::vector<int>& scope,
                   Budget budget, Exec ex) {
    std::vector<Verdict> v(scope.size(), Verdict::unknown);
    bool exact = ext_vanishes(cat, x, y);
    for_each_index(static_cast<int>(scope.size()), ex, [&](int i) {
        Obj b{scope[i]};
        if (y.has(scope[i])) {
            v[i] = Verdict::yes;
            return;
        }
        if (exact) {
            Mor g = *min_left_approx(cat, b, y);
            if (!cat.is_inflation(g)) {
                v[i] = Verdict::no;
                return;
            }
            auto t = cat.cone(g);
            if (!t.ok()) return;
            v[i] = x.has(t->c) ? Verdict::yes : Verdict::no;
            return;
        }
        std::vector<int> nb;
        for (int m : x.ids)
            if (cat.ext_dim(m, scope[i])) nb.push_back(m);
        subsets(nb, 1, budget.width, [&](const Obj& s) {
            if (v[i] == Verdict::yes) return;
            auto t = cat.realize(generic_class(cat, s, b));
            if (t.ok() && y.has(t->b)) v[i] = Verdict::yes;
        });
    });
    return collect(scope, v, "s_right");
}

ThickReport is_thick(const Category& cat, const Subcat& s, const std::vector<int>& core, const std::vector<int>& scope,
                     Budget budget, Exec ex) {
    ThickReport rep;
    TriangleBatch b = run_class_jobs(cat, class_jobs(cat, core, scope, core, scope, budget.width), ex);
    rep.triangles = static_cast<int>(b.triangles.size());
    for (auto& t : b.triangles) {
        int in = s.has(t.a) + s.has(t.b) + s.has(t.c);
        if (in == 2) {
            rep.thick = false;
            rep.violations.push_back(std::move(t));
        }
    }
    return rep;
}

HoveyReport is_hovey(const Category& cat, const Subcat& x, const Subcat& y, const std::vector<int>& scope,
                     Budget budget, Exec ex) {
    HoveyReport rep;
    Membership l = s_left(cat, x, y, scope, budget, ex);
    Membership r = s_right(cat, x, y, scope, budget, ex);
    rep.s_left = l.members;
    rep.s_right = r.members;
    std::set_symmetric_difference(l.members.ids.begin(), l.members.ids.end(), r.members.ids.begin(),
                                  r.members.ids.end(), std::back_inserter(rep.witness));
    rep.hovey = rep.witness.empty();
    if (!l.undecided.empty() || !r.undecided.empty()) rep.status = Status::inconclusive;
    return rep;
}

}  // namespace twin
