#ifndef CHARSPACE_ORACLE_HPP
#define CHARSPACE_ORACLE_HPP

// Brute-force ground truth. Every subspace of F_2^n is visited and tested
// against End(V,f) and Aut(V,f) computed from their definitions, without
// the transvection generators or the lattice formulas.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "charspace/commutant.hpp"
#include "charspace/gf2.hpp"
#include "charspace/nilmod.hpp"

namespace charspace {

inline constexpr std::uint64_t kDefaultSubspaceBudget = 10'000'000;

// Number of subspaces of F_2^n; saturates at UINT64_MAX.
std::uint64_t galois_number(std::size_t n);

// Visits every subspace of F_2^n (n <= 63) once as k packed RREF rows, row i
// having its pivot at its lowest set bit. Throws BudgetExceeded when the
// Galois number exceeds the budget. The parallel version splits by pivot
// set; `visit` must then be safe to call concurrently.
using RowVisitor = std::function<void(const std::uint64_t* rows, std::size_t k)>;
void for_each_subspace(std::size_t n, std::uint64_t budget, const RowVisitor& visit);
void for_each_subspace_serial(std::size_t n, std::uint64_t budget, const RowVisitor& visit);

std::vector<Subspace> enumerate_subspaces(std::size_t n, std::uint64_t budget = kDefaultSubspaceBudget);

// Basis of {A : A f = f A}, solved as a linear system in the n^2 entries.
std::vector<BitMatrix> sylvester_kernel(const ModuleSpace& v);

enum class OracleAutMode {
    // Every unit of the commutant was listed.
    FullEnumeration,
    // 2^dim was over the aut budget, but units found among the basis and
    // its translates by I generate the whole commutant, so characteristic
    // and hyperinvariant coincide.
    UnitsSpanCommutant,
};

struct OracleOptions {
    std::uint64_t subspace_budget = kDefaultSubspaceBudget;
    std::size_t aut_budget = kDefaultAutBudget;
    bool parallel = true;
};

struct OracleCounts {
    std::uint64_t subspaces = 0;
    std::uint64_t invariant = 0;
    std::uint64_t characteristic = 0;
    std::uint64_t hyperinvariant = 0;
    std::uint64_t ch_not_hinv = 0;
    friend bool operator==(const OracleCounts&, const OracleCounts&) = default;
};

struct Mismatch {
    Subspace subspace;
    std::string check;
    bool structured = false;
    bool oracle = false;
};

struct OracleReport {
    SegreChar segre;
    OracleCounts counts;
    OracleAutMode aut_mode = OracleAutMode::FullEnumeration;
    std::uint64_t aut_order = 0;  // 0 unless the units were enumerated
    // Sorted. `characteristic` includes the hyperinvariant subspaces.
    std::vector<Subspace> characteristic;
    std::vector<Subspace> hyperinvariant;
    std::vector<Subspace> ch_not_hinv;
    std::vector<Mismatch> mismatches;
};

OracleReport classify_brute(const ModuleSpace& v, const OracleOptions& opts = {});

// classify_brute, plus per-subspace comparison with Commutant's tests and
// set comparison with the lattice and the classification routines.
OracleReport cross_validate(const ModuleSpace& v, const OracleOptions& opts = {});

}  // namespace charspace

#endif
