#pragma once

#include <string>
#include <utility>
#include <vector>

#include "twin/category.hpp"

namespace twin {

// Tally for one named verification. Witness strings are capped so reports stay small.
struct Check {
    Check() = default;
    explicit Check(std::string n) : name(std::move(n)) {}

    std::string name;
    int checked = 0;
    int failed = 0;
    int inconclusive = 0;
    std::vector<std::string> witnesses;
    bool vacuous = false;   // hypothesis did not hold, nothing was asserted

    void pass() { ++checked; }
    void fail(const std::string& w);
    void unknown(const std::string& w);
    void merge(const Check& o);
    bool ok() const { return failed == 0; }
    Status status() const;
};

std::string tri_str(const Category& cat, const ETriangle& t);
std::string mor_str(const Category& cat, const Mor& f);
std::string ids_str(const Category& cat, const std::vector<int>& ids);

}  // namespace twin
