#include "twin/suite.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "twin/approx.hpp"
#include "twin/intervals.hpp"
#include "twin/render.hpp"

namespace twin {

namespace {

struct Result {
    json value;
    Check detail;
    json extra;
};

std::string labels(const Category& cat, const std::vector<int>& ids) { return ids_str(cat, ids); }

json label_list(const Category& cat, const std::vector<int>& ids) {
    json out = json::array();
    for (int id : ids) out.push_back(cat.indec(id).label);
    return out;
}

json check_value(const Check& c) {
    if (c.vacuous) return "vacuous";
    switch (c.status()) {
        case Status::ok: return "pass";
        case Status::failed: return "fail";
        default: return "inconclusive";
    }
}

bool is_theorem_check(const std::string& name) {
    static const std::vector<std::string> t = {"prop_im",    "prop_sigma", "bmlcor",    "lemma_unique", "functorial",
                                               "perturbation", "quasi_inverse", "prop_rw", "local_rule", "induce",
                                               "suspension", "prop_hot",   "prop_here", "les",
                                               "pair_perps", "pair_closed", "summand_closed", "cap_equal",
                                               "star_closed", "cone_closed"};
    return std::find(t.begin(), t.end(), name) != t.end();
}

class Runner {
public:
    Runner(World& w, const SuiteOptions& opt) : w_(w), opt_(opt) {}

    Result run(const AssertionSpec& a) {
        const std::string& k = a.check;
        const Category& cat = w_.cat();
        auto arg = [&](std::size_t i) -> const Subcat& {
            if (i >= a.args.size()) throw ConfigError("/assertions/" + a.id, "check '" + k + "' needs more arguments");
            return w_.set(a.args[i]);
        };
        Subcat core = make_subcat(w_.core());
        Result r;
        r.detail.name = k;

        if (k == "equal" || k == "subset") {
            Subcat x = restrict_to(arg(0), w_.core()), y = restrict_to(arg(1), w_.core());
            Subcat only_x = minus(x, y), only_y = minus(y, x);
            bool ok = k == "equal" ? only_x.ids.empty() && only_y.ids.empty() : only_x.ids.empty();
            r.detail.checked = x.size() + y.size();
            if (!only_x.ids.empty()) r.detail.witnesses.push_back("only in " + a.args[0] + ": " + labels(cat, only_x.ids));
            if (k == "equal" && !only_y.ids.empty())
                r.detail.witnesses.push_back("only in " + a.args[1] + ": " + labels(cat, only_y.ids));
            r.value = ok;
            return r;
        }
        if (k == "ext_closed") {
            const Subcat& s = arg(0);
            auto cl = closure(cat, s, ClosureMode::extensions, w_.window(), w_.budget(), w_.exec());
            Subcat extra = minus(restrict_to(cl.sub, w_.core()), s);
            if (!extra.ids.empty()) r.detail.witnesses.push_back("extensions outside: " + labels(cat, extra.ids));
            r.value = cl.status != Status::ok ? json("inconclusive") : json(extra.ids.empty());
            return r;
        }
        if (k == "shift_closed") {
            const Subcat& s = arg(0);
            bool ok = true;
            for (int id : restrict_to(s, w_.core()).ids) {
                auto t = cat.shift(id);
                if (!t) continue;
                r.detail.pass();
                if (!s.has(*t)) {
                    ok = false;
                    r.detail.witnesses.push_back(cat.indec(id).label + "[1] = " + cat.indec(*t).label);
                }
            }
            r.value = ok;
            return r;
        }
        if (k == "cotorsion") {
            auto c = verify_cotorsion(cat, arg(0), arg(1), arg(2), w_.core(), w_.budget(), w_.exec());
            r.detail.checked = static_cast<int>(c.objects.size());
            for (auto [i, j] : c.ext_witnesses)
                r.detail.witnesses.push_back("E(" + cat.indec(i).label + ", " + cat.indec(j).label + ") != 0");
            if (!c.missing.empty()) r.detail.witnesses.push_back("no approximation triangles: " + labels(cat, c.missing));
            if (!c.why.empty()) r.detail.witnesses.push_back(c.why);
            r.value = c.status == Status::inconclusive ? json("inconclusive") : json(c.valid);
            return r;
        }
        if (k == "hovey" || k == "hovey_witness") {
            const HoveyReport& h = hovey(a.args.at(0), a.args.at(1));
            Subcat wit = restrict_to(make_subcat(h.witness), w_.core());
            r.extra["witness"] = label_list(cat, wit.ids);
            if (h.status != Status::ok) {
                r.value = "inconclusive";
                return r;
            }
            if (k == "hovey") {
                r.value = h.hovey;
                return r;
            }
            Subcat want = restrict_to(arg(2), w_.core());
            Subcat miss = minus(want, wit), extra = minus(wit, want);
            if (!miss.ids.empty()) r.detail.witnesses.push_back("not in the witness: " + labels(cat, miss.ids));
            if (!extra.ids.empty()) r.detail.witnesses.push_back("unexpected in the witness: " + labels(cat, extra.ids));
            r.value = miss.ids.empty() && extra.ids.empty();
            return r;
        }
        if (k == "thick") {
            auto t = is_thick(cat, restrict_to(arg(0), w_.core()), w_.core(), w_.core(), w_.budget(), w_.exec());
            r.detail.checked = t.triangles;
            for (std::size_t i = 0; i < t.violations.size() && i < 12; ++i)
                r.detail.witnesses.push_back(tri_str(cat, t.violations[i]));
            r.value = t.thick;
            return r;
        }
        if (k == "hereditary") {
            auto h = is_hereditary(cat, arg(0), arg(1), w_.core(), w_.budget(), w_.exec());
            r.detail.checked = h.triangles;
            r.extra["e2_zero"] = h.e2_zero;
            r.extra["u_cocone_closed"] = h.u_cocone_closed;
            r.extra["v_cone_closed"] = h.v_cone_closed;
            if (h.status == Status::inconclusive) r.value = "inconclusive";
            else r.value = h.agree ? json(h.hereditary) : json("disagree");
            return r;
        }
        if (k == "twin") {
            const auto& t = w_.twin();
            r.extra["Z"] = label_list(cat, restrict_to(t.z, w_.core()).ids);
            r.extra["W"] = label_list(cat, restrict_to(t.w, w_.core()).ids);
            if (!t.x_in_u) r.detail.witnesses.push_back("X is not inside U");
            if (!t.xv.valid) r.detail.witnesses.push_back("(X,V): " + t.xv.why);
            if (!t.uy.valid) r.detail.witnesses.push_back("(U,Y): " + t.uy.why);
            r.value = t.valid;
            return r;
        }
        if (k == "zero_in_localization") {
            const GFunctor& g = w_.g();
            for (int id : restrict_to(arg(0), w_.core()).ids) {
                if (iso_in_localization(g, {id}, {})) r.detail.pass();
                else r.detail.fail(cat.indec(id).label + " is not zero");
            }
            r.value = r.detail.ok();
            return r;
        }
        if (k == "g_fixed") {
            const GFunctor& g = w_.g();
            auto ids = restrict_to(arg(0), w_.core()).ids;
            for (int id : ids) {
                auto e = g.essential({id});
                if (!e.ok()) r.detail.unknown(cat.indec(id).label + ": " + e.why);
                else if (*e == Obj{id}) r.detail.pass();
                else r.detail.fail("G(" + cat.indec(id).label + ") = " + labels(cat, *e));
            }
            for (std::size_t i = 0; i < ids.size(); ++i)
                for (std::size_t j = i + 1; j < ids.size(); ++j) {
                    if (iso_in_localization(g, {ids[i]}, {ids[j]}))
                        r.detail.fail(cat.indec(ids[i]).label + " ≅ " + cat.indec(ids[j]).label);
                    else
                        r.detail.pass();
                }
            r.value = r.detail.inconclusive && r.detail.ok() ? json("inconclusive") : json(r.detail.ok());
            return r;
        }
        if (k == "g_partner") {
            const GFunctor& g = w_.g();
            const Subcat& to = arg(1);
            json pairs = json::array();
            for (int id : restrict_to(arg(0), w_.core()).ids) {
                auto e = g.essential({id});
                if (!e.ok()) {
                    r.detail.unknown(cat.indec(id).label + ": " + e.why);
                    continue;
                }
                if (e->size() == 1 && to.has((*e)[0]) && iso_in_localization(g, {id}, *e)) {
                    r.detail.pass();
                    pairs.push_back({cat.indec(id).label, cat.indec((*e)[0]).label});
                } else {
                    r.detail.fail("G(" + cat.indec(id).label + ") = " + labels(cat, *e));
                }
            }
            r.extra["pairs"] = pairs;
            r.value = r.detail.inconclusive && r.detail.ok() ? json("inconclusive") : json(r.detail.ok());
            return r;
        }
        if (k == "stable") {
            r.value = stable(a, r.detail);
            return r;
        }
        if (k == "figure") {
            r.value = figure(a, r);
            return r;
        }
        if (is_theorem_check(k)) {
            r.detail = theorem(a, arg);
            r.value = check_value(r.detail);
            return r;
        }
        throw ConfigError("/assertions/" + a.id, "unknown check '" + k + "'");
    }

private:
    const HoveyReport& hovey(const std::string& x, const std::string& y) {
        auto key = x + "|" + y;
        auto it = hovey_.find(key);
        if (it == hovey_.end())
            it = hovey_.emplace(key, is_hovey(w_.cat(), w_.set(x), w_.set(y), w_.window(), w_.budget(), w_.exec())).first;
        return it->second;
    }

    const std::vector<Mor>& maps() {
        if (!maps_) maps_ = sample_morphisms(w_.cat(), w_.core(), w_.budget());
        return *maps_;
    }

    const std::vector<ETriangle>& triangles() {
        if (!tris_) tris_ = class_triangles(w_.cat(), w_.core(), w_.core(), w_.budget(), w_.exec()).triangles;
        return *tris_;
    }

    Check theorem(const AssertionSpec& a, const std::function<const Subcat&(std::size_t)>& arg) {
        const std::string& k = a.check;
        const Category& cat = w_.cat();
        Exec ex = w_.exec();
        if (k == "les") {
            Check c("les");
            for (const auto& t : triangles())
                for (int x : w_.core()) {
                    auto l = check_les(cat, t, x);
                    if (l.exact) c.pass();
                    else c.fail(tri_str(cat, t) + " at " + cat.indec(x).label + ": " + l.where);
                }
            return c;
        }
        if (k == "pair_perps" || k == "pair_closed") return pair_property(k, arg(0), arg(1));
        if (k == "summand_closed") return summand_closed(arg(0), arg(1));
        if (k == "cap_equal") {
            Check c("cap_equal");
            auto cert = verify_cotorsion(cat, arg(0), arg(1), arg(4), w_.core(), w_.budget(), ex);
            if (!cert.valid) {
                c.vacuous = true;
                return c;
            }
            Subcat l = restrict_to(intersect(arg(0), arg(2)), w_.core()), r = restrict_to(intersect(arg(1), arg(3)), w_.core());
            if (l == r) c.pass();
            else c.fail("X∩V = " + ids_str(cat, l.ids) + " but Y∩U = " + ids_str(cat, r.ids));
            return c;
        }
        if (k == "star_closed") {
            Check c("star_closed");
            const Subcat &x = arg(0), &y = arg(1);
            bool pre = closed(x) && closed(y);
            for (int a : x.ids)
                for (int b : y.ids)
                    if (cat.ext_dim(a, b)) pre = false;
            if (!pre) {
                c.vacuous = true;
                return c;
            }
            Subcat st = star(cat, x, y, w_.window(), w_.budget(), ex);
            auto cl = closure(cat, st, ClosureMode::extensions, w_.window(), w_.budget(), ex);
            Subcat extra = minus(restrict_to(cl.sub, w_.core()), st);
            if (cl.status != Status::ok) c.unknown(cl.why);
            else if (extra.ids.empty()) c.pass();
            else c.fail("C*D misses extensions " + ids_str(cat, extra.ids));
            return c;
        }
        if (k == "cone_closed") {
            // hereditary (U,Y) makes S closed under cones and equal to S_L
            Check c("cone_closed");
            auto h = is_hereditary(cat, arg(0), arg(1), w_.core(), w_.budget(), ex);
            if (!h.agree) {
                c.fail("hereditary conditions disagree");
                return c;
            }
            if (!h.hereditary) {
                c.vacuous = true;
                return c;
            }
            const Subcat &s = arg(2), &sl = arg(3);
            auto cl = closure(cat, s, ClosureMode::cones, w_.window(), w_.budget(), ex);
            Subcat extra = minus(restrict_to(cl.sub, w_.core()), s);
            if (cl.status != Status::ok) c.unknown(cl.why);
            else if (extra.ids.empty()) c.pass();
            else c.fail("cones outside S: " + ids_str(cat, extra.ids));
            if (restrict_to(s, w_.core()) == restrict_to(sl, w_.core())) c.pass();
            else c.fail("S differs from S_L");
            return c;
        }
        if (k == "prop_hot") return check_prop_hot(cat, w_.twin(), w_.core(), w_.budget(), ex);
        if (k == "prop_here") {
            std::vector<Subcat> cands;
            for (std::size_t i = 0; i < a.args.size(); ++i) cands.push_back(arg(i));
            return check_prop_here(cat, w_.twin(), cands, w_.core(), w_.budget(), ex);
        }
        if (k == "suspension") return check_suspension(cat, restrict_to(arg(0), w_.core()).ids, w_.twin().w, ex);
        const GFunctor& g = w_.g();
        if (k == "prop_im") return check_prop_im(g, arg(0), maps(), ex);
        if (k == "prop_rw") return check_r_in_w(g, arg(0), maps(), ex);
        if (k == "prop_sigma") return check_prop_sigma(g, maps(), ex);
        if (k == "bmlcor") return check_bmlcor(g, maps(), ex);
        if (k == "lemma_unique") return check_well_defined(g, maps(), ex);
        if (k == "functorial") return check_functorial(g, maps(), ex);
        if (k == "perturbation") return check_perturbation(g, maps(), ex);
        if (k == "quasi_inverse") return check_on_z(g, maps(), ex);
        if (k == "local_rule") return check_local_rule(g, w_.core());
        return check_prop_induce(g, triangles(), ex);
    }

    bool closed(const Subcat& s) {
        auto cl = closure(w_.cat(), s, ClosureMode::extensions, w_.window(), w_.budget(), w_.exec());
        return cl.status == Status::ok && restrict_to(cl.sub, w_.core()) == restrict_to(s, w_.core());
    }

    // a cotorsion pair (U,V) of the whole category: V and U are each other's perpendiculars, both are
    // extension closed, projectives lie in U and injectives in V
    Check pair_property(const std::string& k, const Subcat& u, const Subcat& v) {
        const Category& cat = w_.cat();
        Check c(k);
        auto cert = verify_cotorsion(cat, u, v, make_subcat(w_.window()), w_.core(), w_.budget(), w_.exec());
        if (!cert.valid) {
            c.vacuous = true;
            return c;
        }
        Subcat core = make_subcat(w_.core());
        if (k == "pair_perps") {
            Subcat pr = perp_right(cat, u, w_.core(), w_.exec()), pl = perp_left(cat, v, w_.core(), w_.exec());
            if (pr == restrict_to(v, w_.core())) c.pass();
            else c.fail("V differs from U-perp at " + ids_str(cat, minus(unite(pr, restrict_to(v, w_.core())), intersect(pr, v)).ids));
            if (pl == restrict_to(u, w_.core())) c.pass();
            else c.fail("U differs from perp-V at " + ids_str(cat, minus(unite(pl, restrict_to(u, w_.core())), intersect(pl, u)).ids));
            return c;
        }
        if (closed(u)) c.pass();
        else c.fail("U not closed under extensions");
        if (closed(v)) c.pass();
        else c.fail("V not closed under extensions");
        if (auto* ic = dynamic_cast<const IntervalCategory*>(&cat)) {
            const auto& alg = ic->algebra();
            for (int id : w_.core()) {
                if (ic->end(id) == alg.proj_end(ic->start(id))) {
                    if (u.has(id)) c.pass();
                    else c.fail("projective " + cat.indec(id).label + " not in U");
                }
                if (ic->start(id) == alg.inj_start(ic->end(id))) {
                    if (v.has(id)) c.pass();
                    else c.fail("injective " + cat.indec(id).label + " not in V");
                }
            }
        }
        return c;
    }

    // membership of a direct sum in S_L (S_R) agrees with membership of both summands; decided by
    // approximations, which is exact when E(X,Y) = 0
    Check summand_closed(const Subcat& x, const Subcat& y) {
        const Category& cat = w_.cat();
        Check c("summand_closed");
        for (int a : x.ids)
            for (int b : y.ids)
                if (cat.ext_dim(a, b)) {
                    c.vacuous = true;
                    return c;
                }
        using Test = std::function<std::optional<bool>(const Obj&)>;
        Test in_left = [&](const Obj& b) -> std::optional<bool> {
            auto f = min_right_approx(cat, b, x);
            if (!f.ok()) return std::nullopt;
            auto t = cat.cocone(*f);
            if (!t.ok()) return std::nullopt;
            return y.has(t->a);
        };
        Test in_right = [&](const Obj& b) -> std::optional<bool> {
            auto f = min_left_approx(cat, b, y);
            if (!f.ok()) return std::nullopt;
            auto t = cat.cone(*f);
            if (!t.ok()) return std::nullopt;
            return x.has(t->c);
        };
        const auto& core = w_.core();
        std::mt19937 rng(20240611);
        std::uniform_int_distribution<std::size_t> pick(0, core.size() - 1);
        for (int n = 0; n < 300 && !core.empty(); ++n) {
            int a = core[pick(rng)], b = core[pick(rng)];
            Obj ab = make_obj({a, b});
            for (int side = 0; side < 2; ++side) {
                const Test& in = side ? in_right : in_left;
                auto s = in(ab), sa = in(Obj{a}), sb = in(Obj{b});
                if (!s || !sa || !sb) {
                    c.unknown("approximation left the window at " + ids_str(cat, ab));
                    continue;
                }
                if (*s == (*sa && *sb)) c.pass();
                else c.fail((side ? "S_R at " : "S_L at ") + ids_str(cat, ab));
            }
        }
        return c;
    }

    // recompute the named sets on a window one step larger and compare them on the core
    json stable(const AssertionSpec& a, Check& c) {
        Fixture big = w_.fixture();
        big.backend = w_.enlarged_backend();
        World wb(big, Overrides{std::nullopt, std::nullopt, w_.budget().width}, w_.exec());
        bool ok = true;
        for (const auto& n : a.args) {
            const Subcat& small = w_.set(n);
            const Subcat& large = wb.set(n);
            for (int id : w_.core()) {
                const auto& co = w_.cat().indec(id).coords;
                auto other = wb.cat().find(co[0], co[1]);
                bool in_small = small.has(id), in_large = other && large.has(*other);
                if (in_small == in_large) {
                    c.pass();
                } else {
                    ok = false;
                    c.fail(n + " changes at " + w_.cat().indec(id).label);
                }
            }
        }
        return ok;
    }

    json figure(const AssertionSpec& a, Result& r) {
        const FigureSpec* f = nullptr;
        for (const auto& x : w_.fixture().figures)
            if ("figure:" + x.name == a.id) f = &x;
        if (!f) throw ConfigError("/figures", "no figure for " + a.id);
        std::string text = render_text(w_, *f);
        namespace fs = std::filesystem;
        fs::path dir = opt_.golden_dir.empty() ? fs::path(w_.fixture().path).parent_path() / ".." / "golden"
                                               : fs::path(opt_.golden_dir);
        fs::path file = dir / (f->golden.empty() ? f->name + ".txt" : f->golden);
        std::ifstream in(file);
        if (!in) {
            r.detail.unknown("no golden file " + file.filename().string());
            return "inconclusive";
        }
        std::stringstream ss;
        ss << in.rdbuf();
        std::string want = ss.str();
        if (want == text) {
            r.detail.pass();
            return true;
        }
        std::istringstream x(text), y(want);
        std::string lx, ly;
        for (int line = 1; std::getline(y, ly); ++line) {
            if (!std::getline(x, lx)) lx.clear();
            if (lx != ly) {
                r.detail.fail("line " + std::to_string(line) + ": got '" + lx + "' want '" + ly + "'");
                break;
            }
        }
        if (r.detail.ok()) r.detail.fail("rendering has extra lines");
        return false;
    }

    World& w_;
    const SuiteOptions& opt_;
    std::map<std::string, HoveyReport> hovey_;
    std::optional<std::vector<Mor>> maps_;
    std::optional<std::vector<ETriangle>> tris_;
};

json default_expectation(const AssertionSpec& a) {
    if (a.check == "figure") return true;
    if (is_theorem_check(a.check)) return "pass";
    return nullptr;
}

std::vector<AssertionSpec> all_assertions(const Fixture& fx) {
    std::vector<AssertionSpec> out = fx.assertions;
    for (const auto& f : fx.figures) out.push_back({"figure:" + f.name, "figures", "figure", {}});
    return out;
}

}  // namespace

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> k = {
        "equal",      "subset",       "ext_closed",   "shift_closed", "cotorsion",  "hovey",         "hovey_witness",
        "thick",      "hereditary",   "twin",         "zero_in_localization",       "g_fixed",       "g_partner",
        "stable",     "prop_im",      "prop_sigma",   "bmlcor",       "lemma_unique", "functorial",  "perturbation",
        "quasi_inverse", "prop_rw",   "local_rule",   "induce",       "suspension", "prop_hot",      "prop_here",
        "les",        "pair_perps",   "pair_closed",  "summand_closed", "cap_equal", "star_closed",   "cone_closed"};
    return k;
}

SuiteResult run_suite(World& w, const SuiteOptions& opt) {
    const Fixture& fx = w.fixture();
    Runner run(w, opt);
    SuiteResult out;
    json rows = json::array();
    int pass = 0, fail = 0, inc = 0, unchecked = 0;
    for (const auto& a : all_assertions(fx)) {
        if (opt.suites && std::find(opt.suites->begin(), opt.suites->end(), a.suite) == opt.suites->end()) continue;
        Result r = run.run(a);
        json expected = fx.expected.contains(a.id) ? fx.expected[a.id] : default_expectation(a);
        std::string verdict;
        if (r.value == "inconclusive") verdict = "inconclusive";
        else if (expected.is_null()) verdict = "unchecked";
        else verdict = r.value == expected ? "pass" : "fail";
        if (verdict == "pass") ++pass;
        else if (verdict == "fail") ++fail;
        else if (verdict == "inconclusive") ++inc;
        else ++unchecked;

        json row;
        row["id"] = a.id;
        row["suite"] = a.suite;
        row["check"] = a.check;
        row["args"] = a.args;
        row["value"] = r.value;
        row["expected"] = expected;
        row["verdict"] = verdict;
        row["counts"] = {{"checked", r.detail.checked}, {"failed", r.detail.failed}, {"inconclusive", r.detail.inconclusive}};
        row["witnesses"] = r.detail.witnesses;
        if (!r.extra.is_null()) row["detail"] = r.extra;
        rows.push_back(row);
    }

    json& rep = out.report;
    rep["fixture"] = fx.name;
    rep["backend"] = w.backend();
    rep["window_size"] = w.window().size();
    rep["core_size"] = w.core().size();
    rep["suites"] = opt.suites ? json(*opt.suites) : json("all");
    rep["assertions"] = rows;
    if (w.has_g()) {
        const Category& cat = w.cat();
        json table = json::array();
        for (int id : w.core()) {
            const GEntry& e = w.g().entry(id);
            json row;
            row["object"] = cat.indec(id).label;
            row["status"] = to_string(e.status);
            if (e.status == Status::ok) {
                row["V_B"] = ids_str(cat, e.vb());
                row["X_B"] = ids_str(cat, e.xb);
                row["Z_B"] = ids_str(cat, e.zb());
                row["Y^B"] = ids_str(cat, e.yb);
                auto ess = w.g().essential({id});
                row["G"] = ess.ok() ? json(ids_str(cat, *ess)) : json(nullptr);
            }
            table.push_back(row);
        }
        rep["g_table"] = table;
    }
    rep["summary"] = {{"pass", pass}, {"fail", fail}, {"inconclusive", inc}, {"unchecked", unchecked}};
    out.exit_code = fail ? exit_fail : inc ? exit_inconclusive : exit_pass;
    return out;
}

json patch_expected(const Fixture& fx, const json& report) {
    json out = fx.raw;
    json exp = fx.expected;
    for (const auto& row : report.at("assertions")) {
        if (row.at("value") == "inconclusive") continue;
        exp[row.at("id").get<std::string>()] = row.at("value");
    }
    out["expected"] = exp;
    return out;
}

}  // namespace twin
