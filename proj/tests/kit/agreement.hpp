#pragma once

#include <string>
#include <vector>

#include "twin/derived.hpp"
#include "twin/intervals.hpp"

namespace twin::testkit {

struct Agreement {
    int comparisons = 0;
    std::vector<std::string> mismatches;

    void merge(const Agreement& o);
};

// Hom, E and E² of every ordered pair of core indecomposables, backend against the
// brute-force oracle: chain maps between projective models for derived windows, maps
// out of a projective resolution for module categories. The derived route also checks
// that each model has the homology its chart claims.
Agreement agree(const DerivedAn& d);
Agreement agree(const IntervalCategory& c);

}  // namespace twin::testkit
