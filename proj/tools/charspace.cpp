// charspace: characteristic and hyperinvariant subspaces of nilpotent maps
// over GF(2).
//
// Exit codes: 0 ok, 1 usage or parse error, 2 constraint violation,
// 3 budget exceeded, 4 oracle mismatch or failed internal check.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef CHARSPACE_HAVE_OPENMP
#include <omp.h>
#endif

#include "charspace/classify.hpp"
#include "charspace/commutant.hpp"
#include "charspace/errors.hpp"
#include "charspace/hinv_lattice.hpp"
#include "charspace/oracle.hpp"
#include "charspace/report.hpp"
#include "charspace/vector_expr.hpp"

using namespace charspace;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kConstraint = 2, kBudget = 3, kMismatch = 4 };

struct Options {
    std::string segre;
    std::vector<std::string> vectors;
    std::string format = "text";
    std::uint64_t budget = kDefaultSubspaceBudget;
    std::uint64_t aut_budget = kDefaultAutBudget;
    std::size_t cap = kDefaultOrbitCap;
    std::size_t show = 64;
};

ModuleSpace load_module(const Options& o) {
    const SegreInput in = parse_segre(o.segre);
    if (in.resorted) std::cerr << "warning: segre sorted to " << in.segre.to_string() << "\n";
    return ModuleSpace(in.segre);
}

// A ParseError rethrown with the flag and the offending text attached.
class InputError : public Error {
public:
    using Error::Error;
};

template <class Fn>
auto with_input(const char* flag, const std::string& text, Fn fn) {
    try {
        return fn();
    } catch (const ParseError& e) {
        throw InputError(std::string(flag) + " \"" + text + "\": " + e.what());
    }
}

std::vector<BitVector> load_vectors(const ModuleSpace& v, const Options& o) {
    std::vector<BitVector> out;
    for (const auto& s : o.vectors) {
        out.push_back(with_input("--vector", s, [&] { return VectorExpr::parse(s).evaluate(v); }));
    }
    return out;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_module(const Options& o) {
    const ModuleSpace v = with_input("--segre", o.segre, [&] { return load_module(o); });
    const SegreChar& t = v.segre();
    const ShodaWitness w = shoda(t);
    json j;
    j["segre"] = segre_json(t);
    j["dim"] = v.dim();
    j["commutant_dim"] = commutant_dim(t);
    j["unrepeated"] = t.unrepeated_parts();
    j["n_hinv"] = count_hinv(t);
    j["shoda"] = {{"satisfied", w.satisfied},
                  {"R", w.R ? json(*w.R) : json(nullptr)},
                  {"S", w.S ? json(*w.S) : json(nullptr)}};
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < v.dim(); ++i) rows.push_back(v.f_matrix().row(i).to_string());
    j["f"] = rows;
    if (o.format == "json") {
        emit(j);
        return kOk;
    }
    std::cout << "segre " << t.to_string() << "\n"
              << "dim " << v.dim() << "\n"
              << "commutant dim " << commutant_dim(t) << "\n"
              << "hyperinvariant subspaces " << count_hinv(t) << "\n"
              << "shoda " << (w.satisfied ? "satisfied" : "not satisfied") << "\n"
              << "f\n";
    for (const auto& r : rows) std::cout << "  " << r << "\n";
    return kOk;
}

int cmd_hull(const Options& o) {
    const ModuleSpace v = with_input("--segre", o.segre, [&] { return load_module(o); });
    const std::vector<BitVector> seeds = load_vectors(v, o);
    const Commutant c(v);
    const Subspace h = c.hull(seeds);
    const bool ch = c.is_characteristic(h);
    const bool hinv = c.is_hyperinvariant(h);
    json seeds_json = json::array();
    for (const auto& x : seeds) {
        seeds_json.push_back({{"vector", x.to_string()},
                              {"expr", VectorExpr::from_vector(v, x).to_string()},
                              {"indicator", indicator_json(indicator(v, x), v.dim())},
                              {"gap", has_gap(indicator(v, x))}});
    }
    json j;
    j["segre"] = segre_json(v.segre());
    j["seeds"] = seeds_json;
    j["dim"] = h.dim();
    j["basis"] = basis_json(h);
    j["characteristic"] = ch;
    j["hyperinvariant"] = hinv;
    j["x_h_basis"] = basis_json(c.largest_hyperinvariant_inside(h));
    if (o.format == "json") {
        emit(j);
        return kOk;
    }
    std::cout << "dim " << h.dim() << "\n";
    for (const auto& b : h.basis_vectors()) {
        std::cout << "  " << b.to_string() << "  " << VectorExpr::from_vector(v, b).to_string() << "\n";
    }
    std::cout << "characteristic " << (ch ? "true" : "false") << "\n"
              << "hyperinvariant " << (hinv ? "true" : "false") << "\n";
    return kOk;
}

int cmd_classify(const Options& o) {
    const ModuleSpace v = with_input("--segre", o.segre, [&] { return load_module(o); });
    const ClassificationReport r = build_classification(v);
    if (o.format == "json") {
        emit(to_json(r));
    } else {
        std::cout << to_text(r);
    }
    return kOk;
}

int cmd_hinv(const Options& o) {
    const ModuleSpace v = with_input("--segre", o.segre, [&] { return load_module(o); });
    const auto elems = enumerate_hinv(v);
    if (o.format == "dot") {
        std::cout << hasse_dot(v.segre(), elems);
    } else if (o.format == "json") {
        emit(hinv_json(elems));
    } else {
        std::cout << "hyperinvariant subspaces " << elems.size() << "\n";
        for (const auto& e : elems) {
            std::cout << "  r=(";
            for (std::size_t i = 0; i < e.r.size(); ++i) std::cout << (i ? "," : "") << e.r[i];
            std::cout << ") dim " << e.w.dim() << "\n";
        }
    }
    return kOk;
}

int cmd_oracle(const Options& o) {
    const ModuleSpace v = with_input("--segre", o.segre, [&] { return load_module(o); });
    OracleOptions opts;
    opts.subspace_budget = o.budget;
    opts.aut_budget = o.aut_budget;
    const OracleReport r = cross_validate(v, opts);
    if (o.format == "json") {
        emit(to_json(r));
    } else {
        std::cout << to_text(r);
    }
    return r.mismatches.empty() ? kOk : kMismatch;
}

int cmd_orbit(const Options& o) {
    const ModuleSpace v = with_input("--segre", o.segre, [&] { return load_module(o); });
    const auto xs = load_vectors(v, o);
    const auto orb = orbit(v, xs.front(), o.cap);
    std::vector<BitVector> members(orb.begin(), orb.end());
    std::sort(members.begin(), members.end());
    const std::size_t shown = std::min(members.size(), o.show);
    if (o.format == "json") {
        json j;
        j["segre"] = segre_json(v.segre());
        j["vector"] = xs.front().to_string();
        j["size"] = members.size();
        j["truncated"] = shown < members.size();
        json m = json::array();
        for (std::size_t i = 0; i < shown; ++i) m.push_back(members[i].to_string());
        j["members"] = m;
        emit(j);
        return kOk;
    }
    std::cout << "orbit size " << members.size() << "\n";
    for (std::size_t i = 0; i < shown; ++i) {
        std::cout << "  " << members[i].to_string() << "  " << VectorExpr::from_vector(v, members[i]).to_string()
                  << "\n";
    }
    if (shown < members.size()) std::cout << "  ... " << members.size() - shown << " more\n";
    return kOk;
}

void apply_thread_cap() {
    const char* env = std::getenv("CHARSPACE_THREADS");
    if (!env) return;
    const int n = std::atoi(env);
    if (n <= 0) {
        std::cerr << "warning: ignoring CHARSPACE_THREADS=" << env << "\n";
        return;
    }
#ifdef CHARSPACE_HAVE_OPENMP
    omp_set_num_threads(n);
#endif
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_cap();

    CLI::App app{"Characteristic and hyperinvariant subspaces of nilpotent maps over GF(2)"};
    app.require_subcommand(1);
    Options o;

    auto add_segre = [&](CLI::App* sub) {
        sub->add_option("--segre", o.segre, "Jordan block sizes, e.g. 1,3,7,7")->required();
    };
    auto add_format = [&](CLI::App* sub, std::vector<std::string> allowed) {
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember(allowed));
    };

    auto* module = app.add_subcommand("module", "Describe V and f");
    add_segre(module);
    add_format(module, {"text", "json"});

    auto* hull = app.add_subcommand("hull", "Characteristic hull of one or more vectors");
    add_segre(hull);
    hull->add_option("--vector", o.vectors, "Vector such as \"u1 + f u2\"; repeatable")->required();
    add_format(hull, {"text", "json"});

    auto* classify = app.add_subcommand("classify", "Characteristic, non-hyperinvariant subspaces");
    add_segre(classify);
    add_format(classify, {"text", "json"});

    auto* hinv = app.add_subcommand("hinv", "Lattice of hyperinvariant subspaces");
    add_segre(hinv);
    add_format(hinv, {"text", "json", "dot"});

    auto* oracle = app.add_subcommand("oracle", "Brute-force cross-validation over all subspaces");
    add_segre(oracle);
    oracle->add_option("--budget", o.budget, "Maximum number of subspaces to enumerate");
    oracle->add_option("--aut-budget", o.aut_budget, "Maximum 2^dim(End) for unit enumeration");
    add_format(oracle, {"text", "json"});

    auto* orb = app.add_subcommand("orbit", "Orbit of a vector under Aut(V,f)");
    add_segre(orb);
    orb->add_option("--vector", o.vectors, "Vector such as \"u1 + f u2\"")->required()->expected(1);
    orb->add_option("--cap", o.cap, "Give up past this many orbit elements");
    orb->add_option("--show", o.show, "Print at most this many members");
    add_format(orb, {"text", "json"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*module) return cmd_module(o);
        if (*hull) return cmd_hull(o);
        if (*classify) return cmd_classify(o);
        if (*hinv) return cmd_hinv(o);
        if (*oracle) return cmd_oracle(o);
        if (*orb) return cmd_orbit(o);
    } catch (const InputError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const ConstraintViolation& e) {
        std::cerr << "constraint violation: " << e.what() << "\n";
        return kConstraint;
    } catch (const PreconditionViolated& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return kConstraint;
    } catch (const InternalCheckFailed& e) {
        std::cerr << "internal check failed: " << e.what() << "\n";
        return kMismatch;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
