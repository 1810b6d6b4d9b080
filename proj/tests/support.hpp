#ifndef CHARSPACE_TESTS_SUPPORT_HPP
#define CHARSPACE_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "charspace/gf2.hpp"
#include "charspace/nilmod.hpp"

namespace testing {

using charspace::BitVector;
using charspace::ModuleSpace;
using charspace::SegreChar;
using charspace::Subspace;

// Nondecreasing partitions of n.
inline void partitions_rec(std::size_t left, std::size_t min_part, std::vector<std::size_t>& cur,
                           std::vector<SegreChar>& out) {
    if (left == 0) {
        out.emplace_back(cur);
        return;
    }
    for (std::size_t p = min_part; p <= left; ++p) {
        cur.push_back(p);
        partitions_rec(left - p, p, cur, out);
        cur.pop_back();
    }
}

inline std::vector<SegreChar> partitions(std::size_t n) {
    std::vector<SegreChar> out;
    std::vector<std::size_t> cur;
    partitions_rec(n, 1, cur, out);
    return out;
}

inline std::vector<SegreChar> partitions_up_to(std::size_t n) {
    std::vector<SegreChar> out;
    for (std::size_t k = 1; k <= n; ++k) {
        for (auto& t : partitions(k)) out.push_back(std::move(t));
    }
    return out;
}

inline ModuleSpace module(std::vector<std::size_t> parts) { return ModuleSpace(SegreChar(std::move(parts))); }

inline BitVector bits(const std::string& s) { return BitVector::from_string(s); }

inline BitVector from_word(std::uint64_t w, std::size_t n) {
    BitVector v(n);
    for (std::size_t i = 0; i < n; ++i) {
        if ((w >> i) & 1U) v.set(i);
    }
    return v;
}

// Every vector of F_2^n, n <= 20.
inline std::vector<BitVector> all_vectors(std::size_t n) {
    std::vector<BitVector> out;
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w) out.push_back(from_word(w, n));
    return out;
}

inline BitVector random_vector(std::mt19937_64& rng, std::size_t n) {
    BitVector v(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rng() & 1U) v.set(i);
    }
    return v;
}

// The f-submodule generated by gens: the sum of the cyclic subspaces.
inline Subspace submodule(const ModuleSpace& v, const std::vector<BitVector>& gens) {
    Subspace out(v.dim());
    for (const auto& g : gens) out = charspace::subspace_sum(out, charspace::cyclic(v, g));
    return out;
}

inline Subspace span_of(const std::vector<BitVector>& vs, std::size_t n) { return charspace::span(vs, n); }

// Set membership by brute force over all 2^dim elements.
inline std::vector<std::uint64_t> element_words(const Subspace& s) {
    std::vector<std::uint64_t> out;
    for (const auto& e : s.elements()) out.push_back(e.words().empty() ? 0 : e.words()[0]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace testing

#endif
