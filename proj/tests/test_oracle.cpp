#include <doctest.h>

#include <atomic>
#include <set>
#include <tuple>

#include "charspace/classify.hpp"
#include "charspace/commutant.hpp"
#include "charspace/errors.hpp"
#include "charspace/hinv_lattice.hpp"
#include "charspace/oracle.hpp"
#include "charspace/report.hpp"
#include "support.hpp"

using namespace charspace;
using testing::module;

namespace {

// sum_k [n choose k]_2
std::uint64_t gaussian_sum(std::size_t n) {
    std::uint64_t total = 0;
    for (std::size_t k = 0; k <= n; ++k) {
        // [n k]_2 = prod_{i<k} (2^{n-i} - 1) / (2^{i+1} - 1)
        unsigned __int128 num = 1, den = 1;
        for (std::size_t i = 0; i < k; ++i) {
            num *= (std::uint64_t{1} << (n - i)) - 1;
            den *= (std::uint64_t{1} << (i + 1)) - 1;
        }
        total += static_cast<std::uint64_t>(num / den);
    }
    return total;
}

const OracleOptions kSerial{kDefaultSubspaceBudget, kDefaultAutBudget, false};

}  // namespace

TEST_CASE("Galois numbers") {
    const std::vector<std::uint64_t> g{1, 2, 5, 16, 67, 374, 2825, 29212, 417199, 8283458};
    for (std::size_t n = 0; n < g.size(); ++n) {
        CHECK(galois_number(n) == g[n]);
        CHECK(gaussian_sum(n) == g[n]);
    }
    CHECK(galois_number(12) == gaussian_sum(12));
    CHECK(galois_number(200) == UINT64_MAX);
}

TEST_CASE("subspace enumeration") {
    CHECK(enumerate_subspaces(0).size() == 1);
    CHECK(enumerate_subspaces(2).size() == 5);
    CHECK(enumerate_subspaces(4).size() == 67);
    CHECK_THROWS_AS(enumerate_subspaces(10), BudgetExceeded);
    CHECK_THROWS_AS(enumerate_subspaces(5, 100), BudgetExceeded);

    for (std::size_t n = 1; n <= 6; ++n) {
        const auto all = enumerate_subspaces(n);
        const std::set<Subspace> distinct(all.begin(), all.end());
        CHECK(distinct.size() == all.size());
        CHECK(all.size() == galois_number(n));
    }
    // Every visited row set is already canonical.
    std::atomic<std::uint64_t> count{0}, bad{0};
    for_each_subspace(7, kDefaultSubspaceBudget, [&](const std::uint64_t* rows, std::size_t k) {
        ++count;
        std::vector<BitVector> vs;
        for (std::size_t r = 0; r < k; ++r) vs.push_back(testing::from_word(rows[r], 7));
        const Subspace s = span(vs, 7);
        if (s.dim() != k) ++bad;
        for (std::size_t r = 0; r < k && s.dim() == k; ++r) {
            if (s.basis_vectors()[r] != vs[r]) ++bad;
        }
    });
    CHECK(count == galois_number(7));
    CHECK(bad == 0);
}

TEST_CASE("brute-force classification") {
    const auto a = classify_brute(module({1, 3}));
    CHECK(a.counts.ch_not_hinv == 1);
    CHECK(a.counts.hyperinvariant == 6);
    CHECK(a.aut_mode == OracleAutMode::FullEnumeration);
    CHECK(a.aut_order == 16);
    CHECK(classify_brute(module({2, 2})).counts.ch_not_hinv == 0);
    CHECK(classify_brute(module({1, 2})).counts.ch_not_hinv == 0);

    // (1,1,1,1,1) has a 25-dimensional commutant; only the fallback applies.
    const auto ones = classify_brute(module({1, 1, 1, 1, 1}));
    CHECK(ones.aut_mode == OracleAutMode::UnitsSpanCommutant);
    CHECK(ones.counts.hyperinvariant == 2);
    CHECK(ones.counts.ch_not_hinv == 0);
}

TEST_CASE("parallel and serial sweeps agree") {
    for (const auto& t : testing::partitions(6)) {
        const ModuleSpace v(t);
        const auto p = classify_brute(v);
        const auto s = classify_brute(v, kSerial);
        CHECK(p.counts == s.counts);
        CHECK(p.characteristic == s.characteristic);
        CHECK(p.ch_not_hinv == s.ch_not_hinv);
    }
}

TEST_CASE("cross validation, n <= 6") {
    CHECK(cross_validate(module({1, 3})).mismatches.empty());
    CHECK(cross_validate(module({1, 2, 2})).mismatches.empty());
    for (const auto& t : testing::partitions_up_to(6)) {
        const auto rep = cross_validate(ModuleSpace(t));
        CHECK_MESSAGE(rep.mismatches.empty(), t.to_string());
        CHECK(rep.counts.hyperinvariant == count_hinv(t));
    }
}

TEST_CASE("properties of characteristic subspaces, n <= 7") {
    for (const auto& t : testing::partitions_up_to(7)) {
        const ModuleSpace v(t);
        const Commutant c(v);
        const auto rep = classify_brute(v);
        for (const auto& x : rep.characteristic) {
            const Subspace xh = c.largest_hyperinvariant_inside(x);
            CHECK(c.is_hyperinvariant(xh));
            CHECK(xh.is_subspace_of(x));
            // Blocks of repeated size: the projection stays inside X.
            for (std::size_t j = 0; j < v.blocks(); ++j) {
                if (t.multiplicity(v.block_size(j)) < 2) continue;
                EchelonBuilder proj(v.dim());
                for (const auto& b : x.basis_vectors()) proj.insert(project(v, b, j));
                CHECK(proj.build() == subspace_intersect(x, v.block_subspace(j)));
            }
            CHECK(check_decomposition(v, x));
        }
        for (const auto& x : rep.ch_not_hinv) {
            const Subspace xh = c.largest_hyperinvariant_inside(x);
            std::vector<BitVector> outside;
            for (const auto& e : x.elements()) {
                if (!xh.contains(e)) outside.push_back(e);
            }
            CHECK(span(outside, v.dim()) == x);
            CHECK(c.hull(outside) == x);
        }
        // X_H is the largest hyperinvariant subspace inside X.
        for (const auto& x : rep.characteristic) {
            const Subspace xh = c.largest_hyperinvariant_inside(x);
            for (const auto& h : rep.hyperinvariant) {
                if (h.is_subspace_of(x)) CHECK(h.is_subspace_of(xh));
            }
        }
    }
}

TEST_CASE("hulls restrict to blocks of unrepeated size, n <= 7") {
    for (const auto& t : testing::partitions_up_to(7)) {
        const ModuleSpace v(t);
        const Commutant c(v);
        std::vector<std::size_t> un;
        for (std::size_t i = 0; i < v.blocks(); ++i) {
            if (t.multiplicity(v.block_size(i)) == 1) un.push_back(i);
        }
        for (std::uint64_t subset = 1; subset < (std::uint64_t{1} << un.size()); ++subset) {
            std::vector<std::size_t> blocks;
            for (std::size_t j = 0; j < un.size(); ++j) {
                if ((subset >> j) & 1U) blocks.push_back(un[j]);
            }
            const BlockRestriction T(v, blocks);
            const Commutant ct(*T.module());
            for (const auto& y : testing::all_vectors(T.dim())) {
                const Subspace in_v = c.hull(T.embed(y));
                CHECK(subspace_intersect(in_v, T.as_subspace()) == T.embed(ct.hull(y)));
                EchelonBuilder proj(v.dim());
                for (const auto& b : in_v.basis_vectors()) {
                    BitVector p = v.zero();
                    for (auto k : blocks) p ^= project(v, b, k);
                    proj.insert(p);
                }
                CHECK(proj.build() == T.embed(ct.hull(y)));
            }
        }
    }
}

TEST_CASE("decomposition over (1,2,2) is exhaustive") {
    const auto v = module({1, 2, 2});
    const auto rep = classify_brute(v);
    CHECK_FALSE(rep.characteristic.empty());
    for (const auto& x : rep.characteristic) CHECK(check_decomposition(v, x));
}

TEST_CASE("three unrepeated sizes: the constructive family is a subset") {
    // Oracle counts, and how many of them the constructive family reaches.
    const std::vector<std::tuple<SegreChar, std::size_t, std::size_t>> known{
        {SegreChar({1, 2, 3}), 1, 1}, {SegreChar({1, 2, 4}), 4, 4}, {SegreChar({1, 3, 4}), 3, 3},
        {SegreChar({1, 2, 5}), 7, 7}, {SegreChar({1, 3, 5}), 12, 8}, {SegreChar({2, 3, 4}), 2, 2},
    };
    OracleOptions opts;
    opts.aut_budget = std::size_t{1} << 24;
    for (const auto& [t, in_oracle, constructed] : known) {
        const ModuleSpace v(t);
        const OracleReport r = classify_brute(v, opts);
        const std::set<Subspace> oracle(r.ch_not_hinv.begin(), r.ch_not_hinv.end());
        std::size_t inside = 0;
        for (const auto& e : constructive_entries(v)) inside += oracle.count(e.subspace);
        CHECK_MESSAGE(oracle.size() == in_oracle, t.to_string());
        CHECK_MESSAGE(constructive_entries(v).size() == constructed, t.to_string());
        CHECK_MESSAGE(inside == constructed, t.to_string());
    }
}

TEST_CASE("two generators: one normal-form vector outside X_H") {
    // Each X in Chinv \ Hinv holds exactly one f^a u1 + f^b u2 outside X_H.
    for (std::size_t S = 3; S <= 8; ++S) {
        for (std::size_t R = 1; R + 1 < S && R + S <= 9; ++R) {
            const ModuleSpace v(SegreChar({R, S}));
            const Commutant c(v);
            for (const auto& x : classify_brute(v).ch_not_hinv) {
                const Subspace xh = c.largest_hyperinvariant_inside(x);
                std::size_t hits = 0;
                for (std::size_t a = 0; a < R; ++a) {
                    for (std::size_t b = 0; b < S; ++b) {
                        const BitVector z = v.basis_vector(0, a) ^ v.basis_vector(1, b);
                        hits += x.contains(z) && !xh.contains(z);
                    }
                }
                CHECK_MESSAGE(hits == 1, "(" << R << "," << S << ")");
            }
        }
    }
}
