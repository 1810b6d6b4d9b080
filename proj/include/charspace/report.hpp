#ifndef CHARSPACE_REPORT_HPP
#define CHARSPACE_REPORT_HPP

// Serialization of results: JSON with sorted keys, DOT Hasse diagrams and
// short plain-text summaries. Subspace bases are lists of bitstrings in
// canonical row order.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "charspace/classify.hpp"
#include "charspace/hinv_lattice.hpp"
#include "charspace/nilmod.hpp"
#include "charspace/oracle.hpp"

namespace charspace {

struct ClassificationReport {
    SegreChar segre;
    ShodaWitness shoda;
    std::uint64_t n_hinv = 0;
    std::vector<HinvElement> hinv;
    std::vector<ChNotHinvEntry> ch_not_hinv;
    // False when three or more unrepeated sizes exist: the list then holds
    // the constructive family only.
    bool complete = true;
};

ClassificationReport build_classification(const ModuleSpace& v);

// Every hull from construct_k_unrepeated over subsets of at least two
// unrepeated blocks, deduplicated and ordered by mu.
std::vector<ChNotHinvEntry> constructive_entries(const ModuleSpace& v);

nlohmann::json segre_json(const SegreChar& t);
nlohmann::json basis_json(const Subspace& x);
// Full length n, with "-inf" and "inf" for the sentinels.
nlohmann::json indicator_json(const Indicator& ind, std::size_t n);
nlohmann::json to_json(const ClassificationReport& r);
nlohmann::json to_json(const OracleReport& r);
nlohmann::json hinv_json(const std::vector<HinvElement>& elems);

std::string hasse_dot(const SegreChar& t, const std::vector<HinvElement>& elems);
std::string to_text(const ClassificationReport& r);
std::string to_text(const OracleReport& r);

std::string aut_mode_name(OracleAutMode m);

}  // namespace charspace

#endif
