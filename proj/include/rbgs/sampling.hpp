#pragma once

#include "rbgs/element.hpp"

#include <random>

namespace rbgs {

// Bounds for randomized suites. Words are drawn with breadth up to
// max_breadth at every nesting level and total deg_R up to max_rdeg.
struct SampleBounds {
    int max_breadth = 3;
    int max_rdeg = 2;
    std::uint32_t max_level = 2;
    int max_terms = 3;
};

// Deterministic bounded draw (same sequence on every platform).
std::size_t rand_below(std::mt19937_64& rng, std::size_t n);

RBWord random_word(std::mt19937_64& rng, std::size_t gen_count, const SampleBounds& b);
Element random_element(std::mt19937_64& rng, std::size_t gen_count, const SampleBounds& b);

}  // namespace rbgs
