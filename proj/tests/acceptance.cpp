// One line per acceptance criterion; exit status 1 when any of them fails.
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "kit/agreement.hpp"
#include "twin/quotient.hpp"
#include "twin/render.hpp"
#include "twin/suite.hpp"

using namespace twin;
namespace fs = std::filesystem;

namespace {

// runtime limits in seconds
constexpr double kPerpLimit = 10.0;
constexpr double kLambdaLimit = 60.0;
constexpr double kOracleLimit = 120.0;
constexpr double kTrivialLimit = 5.0;

constexpr int kMinMorphisms = 100;
constexpr int kMinComparisons = 2000;
constexpr int kGoldenFigures = 8;
constexpr int kLambdaWidth = 16;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Tally {
    bool ok = true;
    std::ostringstream note;

    void need(bool cond, const std::string& why) {
        if (!cond) {
            ok = false;
            note << " [" << why << "]";
        }
    }
};

// every listed assertion ran and passed; the others in the report are ignored
void need_pass(Tally& o, const json& report, const std::vector<std::string>& ids) {
    for (const auto& id : ids) {
        bool seen = false;
        for (const auto& row : report["assertions"])
            if (row["id"] == id) {
                seen = true;
                o.need(row["verdict"] == "pass", id + " " + row["verdict"].get<std::string>());
            }
        o.need(seen, id + " missing");
    }
}

void need_all_pass(Tally& o, const json& report) {
    int n = 0;
    for (const auto& row : report["assertions"]) {
        ++n;
        o.need(row["verdict"] == "pass", row["id"].get<std::string>() + " " + row["verdict"].get<std::string>());
    }
    o.need(n > 0, "no assertions ran");
}

json run(World& w, std::vector<std::string> suites) { return run_suite(w, {std::move(suites), ""}).report; }

int failures = 0;

void report_line(int n, const std::string& what, Tally& o, double secs = -1, double limit = -1) {
    if (limit > 0) o.need(secs < limit, "over the time limit");
    std::cout << "criterion " << (n < 10 ? " " : "") << n << ": " << (o.ok ? "PASS" : "FAIL") << "  " << what;
    if (secs >= 0) {
        std::cout.precision(2);
        std::cout << std::fixed << " (" << secs << " s";
        if (limit > 0) std::cout << " < " << limit << " s";
        std::cout << ")";
    }
    std::cout << o.note.str() << std::endl;
    if (!o.ok) ++failures;
}

}  // namespace

int main(int argc, char** argv) {
    fs::path root = argc > 1 ? fs::path(argv[1]) : fs::path(TWIN_SOURCE_DIR);
    Fixture a4 = load_fixture((root / "fixtures/a4.json").string());
    Fixture lam = load_fixture((root / "fixtures/lambda.json").string());

    auto t0 = Clock::now();
    World wa(a4);
    {
        Tally o;
        json r = run(wa, {"perps"});
        o.need(wa.core().size() > 0, "empty core");
        o.need(a4.backend["x_max"].get<int>() - a4.backend["x_min"].get<int>() >= 12, "window narrower than 12");
        o.need(a4.backend["core_margin"].get<int>() >= 3, "core margin below 3");
        need_pass(o, r, {"perp_right_x", "perp_left_y"});
        report_line(1, "A4 perpendiculars of the dot and club sets", o, since(t0), kPerpLimit);
    }
    {
        Tally o;
        need_pass(o, run(wa, {"hovey"}), {"hovey", "hovey_witness"});
        report_line(2, "A4 twin pair is not Hovey, witness = star set", o);
    }
    {
        Tally o;
        need_pass(o, run(wa, {"cotorsion"}), {"s_ext_closed", "s_shift_closed", "cotorsion_in_s"});
        report_line(3, "A4 closure S is extension and shift closed, (X,Y) cotorsion in S", o);
    }
    {
        Tally o;
        json r = run(wa, {"prop_im", "prop_sigma", "bmlcor", "lemma_unique", "functorial", "G"});
        need_pass(o, r, {"prop_im", "prop_sigma", "bmlcor", "lemma_unique", "functorial", "star_zero", "maltese_fixed"});
        int maps = static_cast<int>(sample_morphisms(wa.cat(), wa.core(), wa.budget()).size());
        o.need(maps >= kMinMorphisms, "only " + std::to_string(maps) + " morphisms");
        report_line(4, "A4 localization checks over " + std::to_string(maps) + " morphisms", o);
    }
    {
        Tally o;
        auto t = Clock::now();
        int lo = lam.backend["lo"].get<int>() + 6, hi = lo + kLambdaWidth;
        Overrides ov;
        ov.window = std::array<int, 2>{lo, hi};
        World w(lam, ov);
        json r = run(w, {"thick", "cotorsion", "hereditary", "G"});
        need_all_pass(o, r);
        need_pass(o, r, {"s_thick", "cotorsion_in_s", "hereditary_p_all", "hereditary_u_s", "z_minus_w", "club_partner"});
        report_line(5, "Lambda on window [" + std::to_string(lo) + "," + std::to_string(hi) + "]", o, since(t),
                    kLambdaLimit);
    }
    World wl(lam);
    {
        Tally o;
        need_pass(o, run(wl, {"induce", "suspension"}), {"induce", "suspension"});
        report_line(6, "Lambda induced triangles and suspension choices", o);
    }
    {
        Tally o;
        auto t = Clock::now();
        testkit::Agreement all;
        const auto& b = a4.backend;
        all.merge(testkit::agree(DerivedAn(2, -6, 10, 3)));
        all.merge(testkit::agree(DerivedAn(3, -6, 12, 4)));
        all.merge(testkit::agree(DerivedAn(4, b["x_min"], b["x_max"], b["core_margin"])));
        for (int n = 2; n <= 4; ++n) all.merge(testkit::agree(IntervalCategory::type_a(n)));
        all.merge(testkit::agree(IntervalCategory::lambda(lam.backend["lo"], lam.backend["hi"], lam.backend["core_margin"])));
        o.need(all.comparisons >= kMinComparisons, "too few comparisons");
        o.need(all.mismatches.empty(), std::to_string(all.mismatches.size()) + " mismatches, first: " +
                                           (all.mismatches.empty() ? "" : all.mismatches.front()));
        report_line(7, "oracle agreement, " + std::to_string(all.comparisons) + " comparisons", o, since(t),
                    kOracleLimit);
    }
    {
        Tally o;
        need_all_pass(o, run(wa, {"properties"}));
        need_all_pass(o, run(wl, {"properties"}));
        report_line(8, "property suites on every fixture", o);
    }
    {
        Tally o;
        auto t = Clock::now();
        std::vector<IntervalCategory> mods;
        for (int n = 2; n <= 5; ++n) mods.push_back(IntervalCategory::type_a(n));
        mods.push_back(IntervalCategory::lambda(-8, 8, 3));
        for (const auto& c : mods) {
            Subcat all = make_subcat(c.window_ids());
            Subcat p = restrict_to(make_subcat(c.projectives()), c.window_ids());
            Subcat i = restrict_to(make_subcat(c.injectives()), c.window_ids());
            o.need(verify_cotorsion(c, p, all, all, c.core_ids()).valid, c.kind() + " (P,all)");
            o.need(verify_cotorsion(c, all, i, all, c.core_ids()).valid, c.kind() + " (all,I)");
        }
        DerivedAn d(4, -6, 12, 4);
        Subcat all = make_subcat(d.window_ids()), none;
        auto tw = verify_twin(d, all, none, all, none, d.core_ids());
        o.need(tw.valid, "trivial twin does not verify");
        if (tw.valid) {
            GFunctor g(d, tw);
            for (int a : d.core_ids()) {
                auto e = g.object({a});
                o.need(e.ok() && e->empty(), "G(" + d.indec(a).label + ") is not zero");
                for (int b : d.core_ids())
                    if (!iso_in_localization(g, {a}, {b})) {
                        o.need(false, d.indec(a).label + " and " + d.indec(b).label + " not iso");
                        break;
                    }
            }
        }
        report_line(9, "trivial cotorsion pairs and the trivial twin", o, since(t), kTrivialLimit);
    }
    {
        Tally o;
        int figures = 0;
        for (const Fixture* fx : {&lam, &a4}) {
            std::vector<std::string> suites{"figures"};
            if (fx == &lam) suites = {"thick", "G", "induce", "figures"};
            World w1(*fx), w2(*fx), w3(*fx, {}, Exec::serial);
            json r1 = run(w1, suites), r2 = run(w2, suites), r3 = run(w3, suites);
            o.need(r1.dump(2) == r2.dump(2), fx->name + " reports differ between runs");
            o.need(r1.dump(2) == r3.dump(2), fx->name + " serial report differs");
            need_all_pass(o, r1);
            for (const auto& f : fx->figures) {
                o.need(render_text(w1, f) == render_text(w2, f) && render_svg(w1, f) == render_svg(w3, f),
                       f.name + " renders differ");
                ++figures;
            }
        }
        o.need(figures == kGoldenFigures, std::to_string(figures) + " figures");
        report_line(10, "deterministic reports and " + std::to_string(figures) + " golden diagrams", o);
    }
    std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria pass")) << "\n";
    return failures ? 1 : 0;
}
