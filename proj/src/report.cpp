#include "twin/report.hpp"

namespace twin {

namespace {
constexpr std::size_t kMaxWitnesses = 12;
}

void Check::fail(const std::string& w) {
    ++checked;
    ++failed;
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(w);
}

void Check::unknown(const std::string& w) {
    ++inconclusive;
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back("inconclusive: " + w);
}

void Check::merge(const Check& o) {
    checked += o.checked;
    failed += o.failed;
    inconclusive += o.inconclusive;
    for (const auto& w : o.witnesses)
        if (witnesses.size() < kMaxWitnesses) witnesses.push_back(w);
}

Status Check::status() const {
    if (failed) return Status::failed;
    if (inconclusive) return Status::inconclusive;
    return Status::ok;
}

std::string ids_str(const Category& cat, const std::vector<int>& ids) {
    if (ids.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? "+" : "") + cat.indec(ids[i]).label;
    return s;
}

std::string tri_str(const Category& cat, const ETriangle& t) {
    return ids_str(cat, t.a) + " -> " + ids_str(cat, t.b) + " -> " + ids_str(cat, t.c);
}

std::string mor_str(const Category& cat, const Mor& f) {
    return ids_str(cat, f.src) + " -> " + ids_str(cat, f.dst) + " " + str(f.c);
}

}  // namespace twin
