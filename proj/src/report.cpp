#include "charspace/report.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "charspace/commutant.hpp"
#include "charspace/errors.hpp"

namespace charspace {

using nlohmann::json;

namespace {

std::string tuple_text(const std::vector<std::size_t>& r) {
    std::string s = "(";
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
    return s + ")";
}

void mu_choices(const ModuleSpace& v, const std::vector<std::size_t>& blocks, std::size_t at,
                std::map<std::size_t, std::size_t>& mu, std::vector<std::map<std::size_t, std::size_t>>& out) {
    if (at == blocks.size()) {
        out.push_back(mu);
        return;
    }
    for (std::size_t m = 0; m < v.block_size(blocks[at]); ++m) {
        mu[blocks[at]] = m;
        mu_choices(v, blocks, at + 1, mu, out);
    }
    mu.erase(blocks[at]);
}

}  // namespace

std::vector<ChNotHinvEntry> constructive_entries(const ModuleSpace& v) {
    std::vector<std::size_t> un;
    for (std::size_t i = 0; i < v.blocks(); ++i) {
        if (v.segre().multiplicity(v.block_size(i)) == 1) un.push_back(i);
    }
    const Commutant comm(v);
    std::vector<ChNotHinvEntry> out;
    std::unordered_set<Subspace> seen;
    for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << un.size()); ++subset) {
        std::vector<std::size_t> blocks;
        for (std::size_t j = 0; j < un.size(); ++j) {
            if ((subset >> j) & 1U) blocks.push_back(un[j]);
        }
        if (blocks.size() < 2) continue;
        std::map<std::size_t, std::size_t> mu;
        std::vector<std::map<std::size_t, std::size_t>> choices;
        mu_choices(v, blocks, 0, mu, choices);
        for (const auto& choice : choices) {
            Subspace x;
            try {
                x = construct_k_unrepeated(v, choice);
            } catch (const ConstraintViolation&) {
                continue;
            }
            if (!seen.insert(x).second) continue;
            ChNotHinvEntry e;
            for (std::size_t i = 0; i < v.blocks(); ++i) {
                auto it = choice.find(i);
                e.mu.push_back(it == choice.end() ? v.block_size(i) : it->second);
            }
            e.x_h = comm.largest_hyperinvariant_inside(x);
            e.restriction_segre = segre_of_restriction(v, x);
            e.subspace = std::move(x);
            out.push_back(std::move(e));
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.mu < b.mu; });
    return out;
}

ClassificationReport build_classification(const ModuleSpace& v) {
    ClassificationReport r;
    r.segre = v.segre();
    r.shoda = shoda(r.segre);
    r.n_hinv = count_hinv(r.segre);
    r.hinv = enumerate_hinv(v);
    if (r.segre.unrepeated_parts().size() > 2) {
        r.ch_not_hinv = constructive_entries(v);
        r.complete = false;
    } else {
        r.ch_not_hinv = classify_two_unrepeated(v);
    }
    return r;
}

json segre_json(const SegreChar& t) { return json(t.parts()); }

json basis_json(const Subspace& x) {
    json a = json::array();
    for (const auto& b : x.basis_vectors()) a.push_back(b.to_string());
    return a;
}

json indicator_json(const Indicator& ind, std::size_t n) {
    json a = json::array();
    for (int h : ind.full_sequence(n)) {
        if (h == kNegInfinity) {
            a.push_back("-inf");
        } else if (h == kInfinity) {
            a.push_back("inf");
        } else {
            a.push_back(h);
        }
    }
    return a;
}

json hinv_json(const std::vector<HinvElement>& elems) {
    json a = json::array();
    for (const auto& e : elems) a.push_back({{"r", e.r}, {"dim", e.w.dim()}, {"basis", basis_json(e.w)}});
    return a;
}

json to_json(const ClassificationReport& r) {
    json sh = {{"satisfied", r.shoda.satisfied}, {"R", nullptr}, {"S", nullptr}};
    if (r.shoda.R) sh["R"] = *r.shoda.R;
    if (r.shoda.S) sh["S"] = *r.shoda.S;
    json entries = json::array();
    for (const auto& e : r.ch_not_hinv) {
        entries.push_back({{"mu", e.mu},
                           {"dim", e.dim()},
                           {"basis", basis_json(e.subspace)},
                           {"x_h_basis", basis_json(e.x_h)},
                           {"restriction_segre", segre_json(e.restriction_segre)}});
    }
    return {{"segre", segre_json(r.segre)}, {"shoda", sh},           {"n_hinv", r.n_hinv},
            {"hinv", hinv_json(r.hinv)},   {"ch_not_hinv", entries}, {"complete", r.complete}};
}

std::string aut_mode_name(OracleAutMode m) {
    return m == OracleAutMode::FullEnumeration ? "full_enumeration" : "units_span_commutant";
}

json to_json(const OracleReport& r) {
    json mism = json::array();
    for (const auto& m : r.mismatches) {
        mism.push_back({{"check", m.check},
                        {"basis", basis_json(m.subspace)},
                        {"structured", m.structured},
                        {"oracle", m.oracle}});
    }
    json chnh = json::array();
    for (const auto& x : r.ch_not_hinv) chnh.push_back(basis_json(x));
    return {{"segre", segre_json(r.segre)},
            {"counts",
             {{"subspaces", r.counts.subspaces},
              {"invariant", r.counts.invariant},
              {"characteristic", r.counts.characteristic},
              {"hyperinvariant", r.counts.hyperinvariant},
              {"ch_not_hinv", r.counts.ch_not_hinv}}},
            {"aut_mode", aut_mode_name(r.aut_mode)},
            {"aut_order", r.aut_order},
            {"ch_not_hinv", chnh},
            {"mismatches", mism}};
}

std::string hasse_dot(const SegreChar& t, const std::vector<HinvElement>& elems) {
    std::vector<LatticeTuple> tuples;
    for (const auto& e : elems) tuples.push_back(e.r);
    std::ostringstream os;
    os << "digraph hinv {\n";
    os << "  label=\"Hinv" << t.to_string() << "\";\n";
    os << "  node [shape=box];\n";
    for (std::size_t i = 0; i < elems.size(); ++i) {
        os << "  n" << i << " [label=\"r=" << tuple_text(elems[i].r) << "\\ndim " << elems[i].w.dim() << "\"];\n";
    }
    // r -> s when W(r) covers W(s)
    for (const auto& [a, b] : hasse_covers(tuples)) os << "  n" << a << " -> n" << b << ";\n";
    os << "}\n";
    return os.str();
}

std::string to_text(const ClassificationReport& r) {
    std::ostringstream os;
    os << "segre " << r.segre.to_string() << "\n";
    os << "shoda " << (r.shoda.satisfied ? "satisfied" : "not satisfied");
    if (r.shoda.satisfied) os << " (R,S) = (" << *r.shoda.R << "," << *r.shoda.S << ")";
    os << "\n";
    os << "hyperinvariant subspaces: " << r.n_hinv << "\n";
    for (const auto& e : r.hinv) os << "  r=" << tuple_text(e.r) << " dim " << e.w.dim() << "\n";
    os << "characteristic, not hyperinvariant: " << r.ch_not_hinv.size()
       << (r.complete ? "" : " (constructive family, not known to be complete)") << "\n";
    for (const auto& e : r.ch_not_hinv) {
        os << "  mu=" << tuple_text(e.mu) << " dim " << e.dim() << " dim X_H " << e.x_h.dim() << " restriction "
           << e.restriction_segre.to_string() << "\n";
    }
    return os.str();
}

std::string to_text(const OracleReport& r) {
    std::ostringstream os;
    os << "segre " << r.segre.to_string() << "\n";
    os << "subspaces " << r.counts.subspaces << "\n";
    os << "invariant " << r.counts.invariant << "\n";
    os << "characteristic " << r.counts.characteristic << "\n";
    os << "hyperinvariant " << r.counts.hyperinvariant << "\n";
    os << "ch_not_hinv " << r.counts.ch_not_hinv << "\n";
    os << "aut " << aut_mode_name(r.aut_mode);
    if (r.aut_order) os << " order " << r.aut_order;
    os << "\n";
    os << "mismatches " << r.mismatches.size() << "\n";
    for (const auto& m : r.mismatches) {
        os << "  " << m.check << " structured=" << m.structured << " oracle=" << m.oracle << " basis";
        for (const auto& b : m.subspace.basis_vectors()) os << " " << b.to_string();
        os << "\n";
    }
    return os.str();
}

}  // namespace charspace
