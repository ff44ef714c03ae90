#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nosreg/modal.hpp"
#include "nosreg/noscert.hpp"

namespace nosreg {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Interval i constrains lambda_i. Candidates are drawn uniformly and
// independently per interval; draws that are not strictly increasing with
// gaps >= sep_min are rejected and still count as trials.
struct SearchSpec {
    static constexpr std::size_t kDefaultMaxTrials = 10000;

    std::vector<Interval> intervals;
    std::size_t max_trials = kDefaultMaxTrials;
    std::uint64_t seed = 0;
    double sep_min = PoleSet::kDefaultSeparation;

    void validate() const;
};

struct SearchResult {
    PoleSet poles;
    Certificate cert;
    std::size_t trials_used = 0;
};

// Returns the first candidate whose certificate passes. The draw sequence is
// a function of the seed only (mt19937_64 mapped to [0, 1) with 53-bit
// resolution), so results reproduce across platforms.
SearchResult search(const SearchSpec& spec, std::span<const double> x0);

}  // namespace nosreg
