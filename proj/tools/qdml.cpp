// qdml: encode distance-magic hypercube searches to DIMACS, solve them,
// verify and analyze labelings, enumerate small cases, and print the
// bundled published labelings.

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdml/encoder.hpp"
#include "qdml/hypercube.hpp"
#include "qdml/oracle.hpp"
#include "qdml/paper_data.hpp"
#include "qdml/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUnsat = 20;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw std::runtime_error("write to " + path + " failed");
}

struct EncodeFlags {
    int n = 0;
    bool fix_paper_prefix = false;
    bool no_distinct = false;
    bool no_sums = false;

    qdml::BuildOptions options() const {
        return {!no_distinct, !no_sums, fix_paper_prefix};
    }
};

void add_encode_flags(CLI::App* cmd, EncodeFlags& flags) {
    cmd->add_option("--n", flags.n, "hypercube dimension")->required();
    cmd->add_flag("--fix-paper-prefix", flags.fix_paper_prefix,
                  "fix label(0)=0 and the published neighbor labels (n=6 only)");
    cmd->add_flag("--no-distinct", flags.no_distinct, "omit pairwise-distinctness constraints");
    cmd->add_flag("--no-sums", flags.no_sums, "omit neighbor-sum constraints");
}

void print_labeling_summary(const qdml::Labeling& lab) {
    auto verdict = qdml::verify_dml(lab);
    if (verdict.valid()) {
        std::cout << "valid, magic constant " << qdml::magic_constant(lab.n);
        if (lab.n % 2 == 0) {
            auto rep = qdml::balance_report(lab);
            std::cout << (rep.balanced ? ", neighbor-balanced" : ", non-neighbor-balanced");
        }
        std::cout << "\n";
    } else {
        std::cout << "invalid: " << verdict.detail << "\n";
    }
}

int cmd_encode(const EncodeFlags& flags, const std::string& out_path) {
    auto art = qdml::build_instance(flags.n, flags.options());
    write_file(out_path, art.cnf.write_dimacs());
    auto st = art.cnf.stats();
    std::cout << "wrote " << out_path << ": " << st.num_vars << " variables, " << st.num_clauses
              << " clauses\n";
    if (!qdml::dml_exists(flags.n))
        std::cout << "warning: no distance magic labeling exists for n=" << flags.n
                  << " (n mod 4 != 2); instance expected UNSAT\n";
    return kExitOk;
}

int cmd_solve(const EncodeFlags& flags, const std::string& solver_template, bool builtin,
              std::uint64_t seed, bool force, const std::string& out_labeling) {
    if (builtin && flags.n > 3 && !force) {
        std::cerr << "error: built-in solver limited to n <= 3 (use --force to override)\n";
        return kExitError;
    }
    if (!builtin && solver_template.empty()) {
        std::cerr << "error: pass --builtin or --solver CMD_TEMPLATE\n";
        return kExitError;
    }
    auto art = qdml::build_instance(flags.n, flags.options());
    auto st = art.cnf.stats();
    std::cout << "instance: " << st.num_vars << " variables, " << st.num_clauses << " clauses\n";

    qdml::SolverOutcome outcome;
    if (builtin) {
        outcome = qdml::solve_builtin(art.cnf, {seed, -1});
    } else {
        auto tmp = std::filesystem::temp_directory_path() /
                   ("qdml_q" + std::to_string(flags.n) + "_" + std::to_string(::getpid()) + ".cnf");
        write_file(tmp.string(), art.cnf.write_dimacs());
        outcome = qdml::solve_external(tmp.string(), art.cnf, solver_template, seed);
        std::filesystem::remove(tmp);
    }

    switch (outcome.status) {
        case qdml::SolveStatus::Unsat:
            std::cout << "s UNSATISFIABLE\n";
            return kExitUnsat;
        case qdml::SolveStatus::Unknown:
            std::cerr << "error: solver outcome unknown: " << outcome.reason << "\n";
            return kExitError;
        case qdml::SolveStatus::Sat:
            break;
    }

    auto lab = qdml::decode_model(art, outcome.model);
    std::cout << "s SATISFIABLE (model verified)\n";
    std::cout << qdml::store_labeling(lab);
    print_labeling_summary(lab);
    if (!out_labeling.empty()) {
        write_file(out_labeling, qdml::store_labeling(lab));
        std::cout << "labeling written to " << out_labeling << "\n";
    }
    auto verdict = qdml::verify_dml(lab);
    return verdict.valid() ? kExitOk : kExitError;
}

int cmd_verify(const std::string& path) {
    auto lab = qdml::load_labeling(read_file(path));
    auto verdict = qdml::verify_dml(lab);
    print_labeling_summary(lab);
    return verdict.valid() ? kExitOk : kExitError;
}

int cmd_report(const std::string& path, bool as_json) {
    auto lab = qdml::load_labeling(read_file(path));
    auto rep = qdml::balance_report(lab);
    if (as_json) {
        nlohmann::json j;
        j["n"] = rep.n;
        j["balanced"] = rep.balanced;
        j["counts"] = rep.counts;
        auto& w = j["witnesses"] = nlohmann::json::array();
        for (auto [v, i] : rep.witnesses) w.push_back({{"vertex", v}, {"bit", i}});
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }
    std::cout << "n " << rep.n << "\nbalanced: " << (rep.balanced ? "yes" : "no") << "\n";
    std::cout << "per-vertex 1-digit counts among neighbor labels (bit 0.." << rep.n - 1 << "):\n";
    for (int v = 0; v < qdml::vertex_count(rep.n); ++v) {
        std::cout << "v=" << v << ":";
        for (int c : rep.counts[v]) std::cout << ' ' << c;
        std::cout << "\n";
    }
    if (!rep.balanced) std::cout << rep.witnesses.size() << " deviating (vertex, bit) entries\n";
    return kExitOk;
}

int cmd_enumerate(int n, int max_models, std::uint64_t seed) {
    if (n > 3) {
        std::cerr << "error: enumeration supported only for n <= 3\n";
        return kExitError;
    }
    auto oracle = qdml::brute_force_dmls(n);
    std::vector<qdml::Labeling> found;
    if (n % 2 == 0) {
        auto art = qdml::build_instance(n, {true, true, false});
        auto models = qdml::enumerate_models(art.cnf, art.primary_vars(), max_models, {seed, -1});
        for (const auto& m : models) found.push_back(qdml::decode_model(art, m));
    }
    // non-integer magic constant: no instance to solve, the DML set is empty
    std::cout << found.size() << " labeling(s)\n";
    for (const auto& lab : found) std::cout << qdml::store_labeling(lab) << "\n";
    auto as_set = [](std::vector<qdml::Labeling> v) {
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.labels < b.labels; });
        return v;
    };
    bool agree = static_cast<int>(found.size()) >= max_models ||
                 as_set(found) == as_set(oracle);
    std::cout << "oracle agreement: " << (agree ? "OK" : "MISMATCH") << "\n";
    return agree ? kExitOk : kExitError;
}

int cmd_paper(int index) {
    std::cout << qdml::store_labeling(qdml::paper_labeling(index));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distance magic labelings of hypercubes via SAT"};
    app.require_subcommand(1);

    EncodeFlags enc_flags;
    std::string out_path;
    auto* enc = app.add_subcommand("encode", "write the CNF instance as DIMACS");
    add_encode_flags(enc, enc_flags);
    enc->add_option("--out", out_path, "output DIMACS path")->required();

    EncodeFlags solve_flags;
    std::string solver_template, out_labeling;
    bool builtin = false, force = false;
    std::uint64_t seed = 0;
    auto* slv = app.add_subcommand("solve", "encode, solve, decode, and verify");
    add_encode_flags(slv, solve_flags);
    slv->add_option("--solver", solver_template,
                    "external solver command with {cnf} and optional {seed} placeholders");
    slv->add_flag("--builtin", builtin, "use the built-in DPLL engine");
    slv->add_option("--seed", seed, "solver seed");
    slv->add_flag("--force", force, "allow the built-in engine beyond n=3");
    slv->add_option("--out-labeling", out_labeling, "write the decoded labeling here");

    std::string verify_path;
    auto* ver = app.add_subcommand("verify", "check a labeling file");
    ver->add_option("--labeling", verify_path, "labeling file")->required();

    std::string report_path;
    bool as_json = false;
    auto* rep = app.add_subcommand("report", "neighbor-balance analysis of a labeling file");
    rep->add_option("--labeling", report_path, "labeling file")->required();
    rep->add_flag("--json", as_json, "machine-readable output");

    int enum_n = 2, enum_max = 1000;
    std::uint64_t enum_seed = 0;
    auto* en = app.add_subcommand("enumerate", "enumerate all DMLs of a small hypercube");
    en->add_option("--n", enum_n, "hypercube dimension (<= 3)")->required();
    en->add_option("--max", enum_max, "maximum number of labelings to list");
    en->add_option("--seed", enum_seed, "solver seed");

    int paper_index = 0;
    auto* pap = app.add_subcommand("paper", "print a bundled published labeling (1..5)");
    pap->add_option("--index", paper_index, "labeling index, 1..5")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (enc->parsed()) return cmd_encode(enc_flags, out_path);
        if (slv->parsed())
            return cmd_solve(solve_flags, solver_template, builtin, seed, force, out_labeling);
        if (ver->parsed()) return cmd_verify(verify_path);
        if (rep->parsed()) return cmd_report(report_path, as_json);
        if (en->parsed()) return cmd_enumerate(enum_n, enum_max, enum_seed);
        if (pap->parsed()) return cmd_paper(paper_index);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
