#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "twin/render.hpp"
#include "twin/suite.hpp"

using namespace twin;

namespace {

struct Common {
    std::string window;
    std::optional<int> core_margin;
    int budget = 3;
    bool serial = false;

    void add(CLI::App* app) {
        app->add_option("--window", window, "window range lo:hi (mesh columns or quiver vertices)");
        app->add_option("--core-margin", core_margin, "distance of the safe core from the window edge");
        app->add_option("--budget", budget, "summands searched on the decomposable side of a triangle")->capture_default_str();
        app->add_flag("--serial", serial, "use the serial reference kernels");
    }

    Overrides overrides() const {
        Overrides o;
        if (!window.empty()) {
            auto colon = window.find(':');
            try {
                if (colon == std::string::npos) throw std::invalid_argument("");
                o.window = std::array<int, 2>{std::stoi(window.substr(0, colon)), std::stoi(window.substr(colon + 1))};
            } catch (const std::exception&) {
                throw ConfigError("--window", "expected lo:hi");
            }
        }
        o.core_margin = core_margin;
        o.budget = budget;
        return o;
    }
    Exec exec() const { return serial ? Exec::serial : Exec::parallel; }
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ConfigError(path, "cannot write");
    out << text;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

int cmd_build(const std::string& path, const Common& cm) {
    Fixture fx = load_fixture(path);
    World w(fx, cm.overrides(), cm.exec());
    const Category& cat = w.cat();
    json out;
    out["fixture"] = fx.name;
    out["backend"] = w.backend();
    out["kind"] = cat.kind();
    out["window_size"] = w.window().size();
    out["core_size"] = w.core().size();
    json rows = json::array();
    for (int id : w.window()) {
        const Indec& x = cat.indec(id);
        json r;
        r["label"] = x.label;
        r["coords"] = x.coords;
        if (auto c = w.cell_of(id)) r["cell"] = {c->c, c->r};
        r["core"] = x.core;
        rows.push_back(r);
    }
    out["indecomposables"] = rows;
    std::cout << out.dump(2) << "\n";
    return exit_pass;
}

int cmd_subcat(const std::string& path, const std::vector<std::string>& names, const Common& cm) {
    Fixture fx = load_fixture(path);
    World w(fx, cm.overrides(), cm.exec());
    json out = json::array();
    for (const auto& n : names.empty() ? std::vector<std::string>{} : names) {
        const Subcat& s = w.set(n);
        json r;
        r["name"] = n;
        r["provenance"] = s.provenance;
        json core = json::array(), all = json::array();
        for (int id : s.ids) {
            all.push_back(w.cat().indec(id).label);
            if (w.cat().indec(id).core) core.push_back(w.cat().indec(id).label);
        }
        r["core"] = core;
        r["window"] = all;
        out.push_back(r);
    }
    if (names.empty())
        for (const auto& s : fx.subcats) out.push_back({{"name", s.name}, {"kind", s.kind}, {"glyph", s.glyph}});
    std::cout << out.dump(2) << "\n";
    return exit_pass;
}

int cmd_check(const std::string& path, const std::optional<std::string>& suite, const std::string& report,
              const std::string& golden, const std::string& patch, const Common& cm) {
    Fixture fx = load_fixture(path);
    World w(fx, cm.overrides(), cm.exec());
    SuiteOptions opt;
    if (suite) opt.suites = split(*suite);
    opt.golden_dir = golden;
    SuiteResult r = run_suite(w, opt);
    std::string text = r.report.dump(2) + "\n";
    if (report.empty()) std::cout << text;
    else write_file(report, text);
    if (!patch.empty()) write_file(patch, patch_expected(fx, r.report).dump(2) + "\n");
    const json& s = r.report["summary"];
    std::cerr << fx.name << ": " << s["pass"] << " pass, " << s["fail"] << " fail, " << s["inconclusive"]
              << " inconclusive, " << s["unchecked"] << " unchecked\n";
    return r.exit_code;
}

int cmd_render(const std::string& path, const std::string& figure, const std::string& svg_dir, const Common& cm) {
    Fixture fx = load_fixture(path);
    World w(fx, cm.overrides(), cm.exec());
    bool found = false;
    for (const auto& f : fx.figures) {
        if (!figure.empty() && f.name != figure) continue;
        found = true;
        if (figure.empty()) std::cout << "# " << f.name << "\n";
        std::cout << render_text(w, f);
        if (!svg_dir.empty()) write_file((std::filesystem::path(svg_dir) / (f.name + ".svg")).string(), render_svg(w, f));
    }
    if (!found) throw ConfigError("--figure", "no figure named '" + figure + "'");
    return exit_pass;
}

int cmd_fixtures_run(const std::vector<std::string>& paths, const std::string& report_dir, const std::string& golden,
                     const Common& cm) {
    int code = exit_pass;
    for (const auto& path : paths) {
        Fixture fx = load_fixture(path);
        World w(fx, cm.overrides(), cm.exec());
        SuiteOptions opt;
        opt.golden_dir = golden;
        SuiteResult r = run_suite(w, opt);
        if (!report_dir.empty())
            write_file((std::filesystem::path(report_dir) / (fx.name + ".json")).string(), r.report.dump(2) + "\n");
        const json& s = r.report["summary"];
        std::cout << fx.name << ": " << s["pass"] << " pass, " << s["fail"] << " fail, " << s["inconclusive"]
                  << " inconclusive, " << s["unchecked"] << " unchecked\n";
        for (const auto& row : r.report["assertions"])
            if (row["verdict"] == "fail" || row["verdict"] == "inconclusive")
                std::cout << "  " << row["verdict"].get<std::string>() << " " << row["id"].get<std::string>() << "\n";
        if (r.exit_code == exit_fail || (r.exit_code == exit_inconclusive && code == exit_pass)) code = r.exit_code;
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"twincot: cotorsion pair computations on finite windows"};
    app.require_subcommand(1);
    Common cm;

    std::string fixture, report, golden, patch, figure, svg_dir;
    std::optional<std::string> suite;
    std::vector<std::string> names, paths;

    auto* build = app.add_subcommand("build", "build the window and list its indecomposables");
    build->add_option("fixture", fixture, "fixture file")->required();
    cm.add(build);

    auto* subcat = app.add_subcommand("subcat", "resolve named subcategories");
    subcat->add_option("fixture", fixture, "fixture file")->required();
    subcat->add_option("names", names, "set names (all declared sets listed when omitted)");
    cm.add(subcat);

    auto* check = app.add_subcommand("check", "run assertions of a fixture");
    check->add_option("fixture", fixture, "fixture file")->required();
    check->add_option("--suite", suite, "comma separated suite names; empty runs nothing");
    check->add_option("--report", report, "write the JSON report here instead of stdout");
    check->add_option("--golden", golden, "directory of golden diagrams");
    check->add_option("--patch", patch, "write the fixture with a regenerated expected block");
    cm.add(check);

    auto* render = app.add_subcommand("render", "draw the fixture's figures");
    render->add_option("fixture", fixture, "fixture file")->required();
    render->add_option("--figure", figure, "only this figure");
    render->add_option("--svg", svg_dir, "also write SVG files into this directory");
    cm.add(render);

    auto* fixtures = app.add_subcommand("fixtures", "fixture collections");
    fixtures->require_subcommand(1);
    auto* run = fixtures->add_subcommand("run", "run every assertion of every fixture");
    run->add_option("paths", paths, "fixture files")->required();
    run->add_option("--report", report, "directory for per-fixture JSON reports");
    run->add_option("--golden", golden, "directory of golden diagrams");
    cm.add(run);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        if (*build) return cmd_build(fixture, cm);
        if (*subcat) return cmd_subcat(fixture, names, cm);
        if (*check) return cmd_check(fixture, suite, report, golden, patch, cm);
        if (*render) return cmd_render(fixture, figure, svg_dir, cm);
        if (*run) return cmd_fixtures_run(paths, report, golden, cm);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    }
    return exit_config;
}
