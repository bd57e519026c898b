#include "agreement.hpp"

#include <map>

#include "twin/exec.hpp"

namespace twin::testkit {

namespace oc = twin::oracle;

void Agreement::merge(const Agreement& o) {
    comparisons += o.comparisons;
    mismatches.insert(mismatches.end(), o.mismatches.begin(), o.mismatches.end());
}

namespace {

std::string pair_label(const Category& cat, const char* what, int a, int b, int got, int want) {
    return std::string(what) + "(" + cat.indec(a).label + ", " + cat.indec(b).label + ") backend " +
           std::to_string(got) + " oracle " + std::to_string(want);
}

// Runs per-source work in parallel and merges in source order so the tally is deterministic.
template <class F>
Agreement over_core(const Category& cat, F&& row) {
    auto core = cat.core_ids();
    std::vector<Agreement> parts(core.size());
    for_each_index(static_cast<int>(core.size()), Exec::parallel, [&](int i) { parts[i] = row(core[i], core); });
    Agreement out;
    for (const auto& p : parts) out.merge(p);
    return out;
}

}  // namespace

Agreement agree(const DerivedAn& d) {
    const auto& alg = d.algebra();
    Agreement out;
    for (int id : d.core_ids()) {
        const auto& ch = d.chart(id);
        auto rc = oc::to_rep(alg, d.model(id));
        bool good = oc::admissible(alg, d.model(id));
        for (int k = d.model(id).lo(); k <= d.model(id).hi() && good; ++k) {
            auto bars = oc::barcode(oc::homology(rc, k));
            std::map<std::pair<int, int>, int> want;
            if (k == -ch.k) want[{ch.a, ch.b}] = 1;
            std::erase_if(bars, [](const auto& kv) { return kv.second == 0; });
            good = bars == want;
        }
        good = good && -ch.k >= d.model(id).lo() && -ch.k <= d.model(id).hi();
        ++out.comparisons;
        if (!good) out.mismatches.push_back("model of " + d.indec(id).label + " has the wrong homology");
    }
    out.merge(over_core(d, [&](int a, const std::vector<int>& core) {
        Agreement r;
        for (int b : core) {
            const auto& ma = d.model(a);
            int want[3];
            for (int s = 0; s < 3; ++s) want[s] = oc::PHom(alg, ma, oc::shift(d.model(b), s)).dim();
            std::optional<int> got[3] = {d.hom_dim(a, b), d.ext_dim(a, b), d.ext2_dim(a, b)};
            const char* names[3] = {"Hom", "E", "E2"};
            for (int s = 0; s < 3; ++s) {
                ++r.comparisons;
                if (!got[s] || *got[s] != want[s])
                    r.mismatches.push_back(pair_label(d, names[s], a, b, got[s].value_or(-1), want[s]));
            }
        }
        return r;
    }));
    return out;
}

Agreement agree(const IntervalCategory& c) {
    const auto& alg = c.algebra();
    return over_core(c, [&](int a, const std::vector<int>& core) {
        Agreement r;
        auto m = oc::interval_rep(alg, c.start(a), c.end(a));
        auto res = oc::resolution(alg, m, 3);
        for (int b : core) {
            auto n = oc::interval_rep(alg, c.start(b), c.end(b));
            int want[3];
            for (int s = 0; s < 3; ++s) want[s] = oc::ChainHom(alg, res, oc::stalk(n, -s)).dim();
            std::optional<int> got[3] = {c.hom_dim(a, b), c.ext_dim(a, b), c.ext2_dim(a, b)};
            const char* names[3] = {"Hom", "E", "E2"};
            for (int s = 0; s < 3; ++s) {
                ++r.comparisons;
                if (!got[s] || *got[s] != want[s])
                    r.mismatches.push_back(pair_label(c, names[s], a, b, got[s].value_or(-1), want[s]));
            }
        }
        return r;
    });
}

}  // namespace twin::testkit
