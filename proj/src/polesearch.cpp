#include "nosreg/polesearch.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <string>

#include "nosreg/errors.hpp"

namespace nosreg {

void SearchSpec::validate() const {
    if (intervals.empty()) {
        throw InvalidArgument("polesearch", "no pole intervals given");
    }
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        const Interval& iv = intervals[i];
        if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
            throw InvalidArgument("polesearch", "interval " + std::to_string(i) + " is not finite");
        }
        if (iv.lo > iv.hi) {
            throw InvalidArgument("polesearch", "interval " + std::to_string(i) + " has lo > hi");
        }
        if (iv.hi > 0.0) {
            throw InvalidArgument("polesearch", "interval " + std::to_string(i) + " reaches into the right half-plane");
        }
    }
    if (max_trials == 0) {
        throw InvalidArgument("polesearch", "max_trials must be positive");
    }
    if (!(sep_min >= 0.0)) {
        throw InvalidArgument("polesearch", "sep_min must be nonnegative");
    }
}

namespace {

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::optional<PoleSet> admissible(const std::vector<double>& draw, double sep_min) {
    for (std::size_t i = 0; i < draw.size(); ++i) {
        if (!(draw[i] < 0.0)) return std::nullopt;
        if (i > 0 && !(draw[i] - draw[i - 1] >= sep_min && draw[i] > draw[i - 1])) return std::nullopt;
    }
    return PoleSet(draw, sep_min);
}

}  // namespace

SearchResult search(const SearchSpec& spec, std::span<const double> x0) {
    spec.validate();
    const std::size_t n = spec.intervals.size();
    if (x0.size() != n) {
        throw DimensionMismatch("polesearch", std::to_string(n) + " intervals for an initial condition of length " +
                                                  std::to_string(x0.size()));
    }

    std::mt19937_64 rng(spec.seed);
    std::vector<double> draw(n);
    double best_p = -std::numeric_limits<double>::infinity();

    for (std::size_t trial = 1; trial <= spec.max_trials; ++trial) {
        for (std::size_t i = 0; i < n; ++i) {
            const Interval& iv = spec.intervals[i];
            draw[i] = iv.lo + unit_draw(rng) * (iv.hi - iv.lo);
        }
        std::optional<PoleSet> poles = admissible(draw, spec.sep_min);
        if (!poles) continue;

        Certificate cert;
        try {
            cert = certify(modal_coeffs(*poles, x0));
        } catch (const SingularMatrix&) {
            continue;
        }
        if (cert.p_value > best_p) best_p = cert.p_value;
        if (cert.passed) {
            return SearchResult{std::move(*poles), std::move(cert), trial};
        }
    }
    throw SearchExhausted(spec.max_trials, best_p);
}

}  // namespace nosreg
