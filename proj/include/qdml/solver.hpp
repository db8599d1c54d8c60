#pragma once

// Satisfiability: a built-in DPLL engine (two-watched-literal propagation,
// chronological backtracking, seeded decision order) for small instances,
// a subprocess driver for external DIMACS solvers, and model enumeration
// via projected blocking clauses. Every SAT outcome carries a model that
// has been checked against the full clause set.

#include <sys/wait.h>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdml/cnf.hpp"

namespace qdml {

struct Model {
    std::vector<char> values;  // index 1..num_vars; index 0 unused

    bool value(int var) const { return values[var] != 0; }
    int num_vars() const { return static_cast<int>(values.size()) - 1; }
    bool operator==(const Model&) const = default;
};

inline bool satisfies(const Cnf& cnf, const Model& m) {
    if (m.num_vars() < cnf.num_vars()) return false;
    for (const auto& cl : cnf.clauses()) {
        bool sat = false;
        for (Lit l : cl) {
            if (m.value(var_of(l)) == (l > 0)) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

enum class SolveStatus { Sat, Unsat, Unknown };

struct SolverOutcome {
    SolveStatus status = SolveStatus::Unknown;
    Model model;         // meaningful only for Sat
    std::string reason;  // diagnostic for Unknown
};

enum class DecisionHeuristic {
    RandomOrder,      // seeded shuffle of the variable order, random phases
    SequentialOrder,  // ascending variable index, false phase first
};

struct SolverConfig {
    std::uint64_t seed = 0;
    long long conflict_budget = -1;  // < 0 means unlimited
    DecisionHeuristic heuristic = DecisionHeuristic::RandomOrder;
};

namespace detail {

class Dpll {
  public:
    Dpll(const Cnf& cnf, SolverConfig config) : nvars_(cnf.num_vars()), config_(config) {
        assign_.assign(nvars_ + 1, 0);
        watches_.assign(2 * (nvars_ + 1), {});
        for (const auto& cl : cnf.clauses()) {
            if (cl.size() == 1) {
                root_units_.push_back(cl[0]);
            } else {
                clauses_.push_back(cl);
                int ci = static_cast<int>(clauses_.size()) - 1;
                watches_[lit_index(cl[0])].push_back(ci);
                watches_[lit_index(cl[1])].push_back(ci);
            }
        }
        order_.resize(nvars_);
        std::iota(order_.begin(), order_.end(), 1);
        phase_.assign(nvars_ + 1, 0);
        if (config.heuristic == DecisionHeuristic::RandomOrder) {
            std::mt19937_64 rng(config.seed);
            std::shuffle(order_.begin(), order_.end(), rng);
            for (int v = 1; v <= nvars_; ++v) phase_[v] = static_cast<char>(rng() & 1);
        }
    }

    SolverOutcome solve(const Cnf& cnf) {
        for (Lit u : root_units_) {
            if (!enqueue(u)) return {SolveStatus::Unsat, {}, ""};
        }
        if (!propagate()) return {SolveStatus::Unsat, {}, ""};
        long long conflicts = 0;
        for (;;) {
            Lit dec = pick_decision();
            if (dec == 0) {
                Model m = extract_model();
                if (!satisfies(cnf, m))
                    return {SolveStatus::Unknown, {}, "internal error: model failed verification"};
                return {SolveStatus::Sat, std::move(m), ""};
            }
            decisions_.push_back({trail_.size(), dec, false});
            enqueue(dec);
            while (!propagate()) {
                ++conflicts;
                if (config_.conflict_budget >= 0 && conflicts > config_.conflict_budget)
                    return {SolveStatus::Unknown, {}, "conflict budget exhausted"};
                while (!decisions_.empty() && decisions_.back().flipped) {
                    undo_to(decisions_.back().trail_pos);
                    decisions_.pop_back();
                }
                if (decisions_.empty()) return {SolveStatus::Unsat, {}, ""};
                Decision& d = decisions_.back();
                undo_to(d.trail_pos);
                d.flipped = true;
                enqueue(-d.lit);
            }
        }
    }

  private:
    struct Decision {
        std::size_t trail_pos;
        Lit lit;
        bool flipped;
    };

    static std::size_t lit_index(Lit l) {
        return 2 * static_cast<std::size_t>(var_of(l)) + (l < 0 ? 1 : 0);
    }

    int lit_value(Lit l) const {  // 1 true, -1 false, 0 unassigned
        int a = assign_[var_of(l)];
        return l > 0 ? a : -a;
    }

    bool enqueue(Lit l) {
        int val = lit_value(l);
        if (val == 1) return true;
        if (val == -1) return false;
        assign_[var_of(l)] = (l > 0) ? 1 : -1;
        trail_.push_back(l);
        return true;
    }

    void undo_to(std::size_t pos) {
        while (trail_.size() > pos) {
            assign_[var_of(trail_.back())] = 0;
            trail_.pop_back();
        }
        qhead_ = pos;
    }

    // Two-watched-literal unit propagation. False on conflict.
    bool propagate() {
        while (qhead_ < trail_.size()) {
            Lit p = trail_[qhead_++];
            auto& watch_list = watches_[lit_index(-p)];
            std::size_t keep = 0;
            bool conflict = false;
            for (std::size_t wi = 0; wi < watch_list.size(); ++wi) {
                int ci = watch_list[wi];
                auto& cl = clauses_[ci];
                if (cl[0] == -p) std::swap(cl[0], cl[1]);
                // cl[1] == -p now
                if (lit_value(cl[0]) == 1) {
                    watch_list[keep++] = ci;
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < cl.size(); ++k) {
                    if (lit_value(cl[k]) != -1) {
                        std::swap(cl[1], cl[k]);
                        watches_[lit_index(cl[1])].push_back(ci);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                watch_list[keep++] = ci;
                if (!enqueue(cl[0])) {
                    // conflict: keep remaining watchers intact
                    for (std::size_t rest = wi + 1; rest < watch_list.size(); ++rest)
                        watch_list[keep++] = watch_list[rest];
                    conflict = true;
                    break;
                }
            }
            watch_list.resize(keep);
            if (conflict) return false;
        }
        return true;
    }

    Lit pick_decision() {
        while (order_pos_ < order_.size() && assign_[order_[order_pos_]] != 0) ++order_pos_;
        // Earlier backtracking may have unassigned variables behind the cursor.
        if (order_pos_ >= order_.size()) {
            for (std::size_t i = 0; i < order_.size(); ++i) {
                if (assign_[order_[i]] == 0) {
                    order_pos_ = i;
                    break;
                }
            }
            if (order_pos_ >= order_.size() || assign_[order_[order_pos_]] != 0) return 0;
        }
        int v = order_[order_pos_];
        return phase_[v] ? v : -v;
    }

    Model extract_model() const {
        Model m;
        m.values.assign(nvars_ + 1, 0);
        for (int v = 1; v <= nvars_; ++v) m.values[v] = (assign_[v] == 1) ? 1 : 0;
        return m;
    }

    int nvars_;
    SolverConfig config_;
    std::vector<std::vector<Lit>> clauses_;
    std::vector<std::vector<int>> watches_;
    std::vector<Lit> root_units_;
    std::vector<int8_t> assign_;
    std::vector<Lit> trail_;
    std::size_t qhead_ = 0;
    std::vector<Decision> decisions_;
    std::vector<int> order_;
    std::size_t order_pos_ = 0;
    std::vector<char> phase_;
};

}  // namespace detail

inline SolverOutcome solve_builtin(const Cnf& cnf, SolverConfig config = {}) {
    detail::Dpll engine(cnf, config);
    return engine.solve(cnf);
}

// Substitutes {cnf} (required) and {seed} (optional) into the template.
inline std::string expand_command_template(const std::string& command_template,
                                           const std::string& dimacs_path,
                                           std::optional<std::uint64_t> seed) {
    std::string cmd = command_template;
    auto pos = cmd.find("{cnf}");
    if (pos == std::string::npos)
        throw std::invalid_argument("solver command template lacks a {cnf} placeholder");
    while ((pos = cmd.find("{cnf}")) != std::string::npos) cmd.replace(pos, 5, dimacs_path);
    while ((pos = cmd.find("{seed}")) != std::string::npos)
        cmd.replace(pos, 6, seed ? std::to_string(*seed) : "0");
    return cmd;
}

// Runs an external DIMACS solver and parses the "s"/"v" output convention.
// Exit codes 10/20 are accepted as corroboration. Returned models are
// re-verified against the Cnf; anything that does not verify is Unknown.
inline SolverOutcome solve_external(const std::string& dimacs_path, const Cnf& cnf,
                                    const std::string& command_template,
                                    std::optional<std::uint64_t> seed = std::nullopt) {
    std::string cmd = expand_command_template(command_template, dimacs_path, seed);

    std::string output;
    int exit_code = -1;
    {
        std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
        if (!pipe) return {SolveStatus::Unknown, {}, "failed to launch solver: " + cmd};
        char buf[4096];
        std::size_t got;
        while ((got = fread(buf, 1, sizeof buf, pipe.get())) > 0) output.append(buf, got);
        int raw = pclose(pipe.release());
        if (raw >= 0 && WIFEXITED(raw)) exit_code = WEXITSTATUS(raw);
    }

    std::optional<bool> s_line_sat;
    std::vector<Lit> value_lits;
    bool values_terminated = false;
    std::istringstream in(output);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("s ", 0) == 0) {
            std::string verdict = line.substr(2);
            while (!verdict.empty() && (verdict.back() == '\r' || verdict.back() == ' '))
                verdict.pop_back();
            if (verdict == "SATISFIABLE")
                s_line_sat = true;
            else if (verdict == "UNSATISFIABLE")
                s_line_sat = false;
            else
                return {SolveStatus::Unknown, {}, "unrecognized status line: " + line};
        } else if (line.rfind("v", 0) == 0 && (line.size() == 1 || line[1] == ' ')) {
            std::istringstream vs(line.substr(1));
            Lit l;
            while (vs >> l) {
                if (l == 0) {
                    values_terminated = true;
                    break;
                }
                value_lits.push_back(l);
            }
        }
    }

    bool exit_says_sat = (exit_code == 10);
    bool exit_says_unsat = (exit_code == 20);
    if (s_line_sat.has_value()) {
        if ((*s_line_sat && exit_says_unsat) || (!*s_line_sat && exit_says_sat))
            return {SolveStatus::Unknown, {},
                    "status line contradicts exit code " + std::to_string(exit_code)};
    } else {
        if (exit_says_unsat) return {SolveStatus::Unsat, {}, ""};
        return {SolveStatus::Unknown, {},
                "no status line in solver output (exit code " + std::to_string(exit_code) + ")"};
    }

    if (!*s_line_sat) return {SolveStatus::Unsat, {}, ""};

    if (value_lits.empty() || !values_terminated)
        return {SolveStatus::Unknown, {}, "SAT claimed but value lines missing or unterminated"};
    Model m;
    m.values.assign(cnf.num_vars() + 1, 0);
    for (Lit l : value_lits) {
        int v = var_of(l);
        if (v > cnf.num_vars()) continue;  // solvers may report extra variables
        m.values[v] = (l > 0) ? 1 : 0;
    }
    if (!satisfies(cnf, m))
        return {SolveStatus::Unknown, {}, "external model failed local re-verification"};
    return {SolveStatus::Sat, std::move(m), ""};
}

// Repeatedly solves, blocking each model projected onto the given variables,
// so the count is over distinct projections rather than distinct total
// assignments. Stops at UNSAT or max_models. Unknown propagates as an error.
inline std::vector<Model> enumerate_models(Cnf cnf, const std::vector<int>& projection,
                                           int max_models, SolverConfig config = {}) {
    if (max_models < 1) throw std::invalid_argument("enumerate_models: max_models must be >= 1");
    std::vector<Model> out;
    while (static_cast<int>(out.size()) < max_models) {
        SolverOutcome res = solve_builtin(cnf, config);
        if (res.status == SolveStatus::Unsat) break;
        if (res.status == SolveStatus::Unknown)
            throw std::runtime_error("enumeration aborted: " + res.reason);
        std::vector<Lit> block;
        block.reserve(projection.size());
        for (int v : projection) block.push_back(res.model.value(v) ? -v : v);
        out.push_back(std::move(res.model));
        cnf.add_clause(std::move(block));
    }
    return out;
}

}  // namespace qdml
