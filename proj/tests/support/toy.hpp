#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "sseq/deduce.hpp"

namespace sseq::testing {

// F2[h] with h at (0,1), acting on a module with one source g at (10,2) and
// targets t_i at (9,4). Each generator carries an h-tower that stops at its
// height. A value of d_2(g) is planted and d_2(h^j g) is recorded for j in J.
struct ToyInstance {
    uint64_t seed = 0;
    std::vector<int> heights;  // heights[0] for g, heights[i] for t_i
    std::vector<int> recorded;  // J
    IndexSet plant;             // over t_1..t_m, as indices 0..m-1 at (9,4)
    World world;
    Loc source{0, {10, 2}};

    int targets() const { return static_cast<int>(heights.size()) - 1; }
    // h^j v for v over the targets at (9,4), as an index set at (9,4+j).
    IndexSet h_power(const IndexSet& v, int j) const;
    std::string key() const;
};

inline constexpr int kToyRingTop = 8;

std::shared_ptr<const SpectrumData> toy_ring();
ToyInstance make_toy(uint64_t seed);

// First instance with two targets, both with towers, and a single consistent value.
ToyInstance four_way_toy();

// Every d_2(g) value compatible with the recorded facts and the tower relations.
std::vector<IndexSet> brute_force(const ToyInstance& toy);

}  // namespace sseq::testing
