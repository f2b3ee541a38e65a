#pragma once

// A compact conflict-driven clause-learning SAT solver.
//
// Two watched literals with blockers, first-UIP learning with clause
// minimization, VSIDS ordering, phase saving, Luby restarts and LBD-based
// learnt clause reduction. Runs are deterministic for a fixed seed; the
// deadline only decides whether a run is abandoned, never which model is found.

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace wangtori::sat {

enum class Result { Sat, Unsat, Unknown };

struct Stats {
    uint64_t decisions = 0;
    uint64_t propagations = 0;
    uint64_t conflicts = 0;
    uint64_t restarts = 0;
};

class Solver {
public:
    explicit Solver(int num_vars, uint64_t seed = 0);

    /// DIMACS-style literals: +v / -v with v in [1, num_vars].
    /// Returns false if the formula became trivially unsatisfiable.
    bool add_clause(const std::vector<int>& lits);

    Result solve(std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt);

    /// Truth value of DIMACS variable v after a Sat result.
    bool value(int v) const { return model_[static_cast<size_t>(v - 1)]; }
    int num_vars() const { return num_vars_; }
    const Stats& stats() const { return stats_; }

private:
    using Lit = uint32_t;
    static constexpr uint32_t kNoReason = UINT32_MAX;
    static Lit to_lit(int dimacs) {
        return dimacs > 0 ? static_cast<Lit>(2 * (dimacs - 1))
                          : static_cast<Lit>(2 * (-dimacs - 1) + 1);
    }
    static uint32_t var_of(Lit l) { return l >> 1; }
    static Lit neg(Lit l) { return l ^ 1U; }

    struct Clause {
        std::vector<Lit> lits;
        bool learnt = false;
        bool deleted = false;
        uint32_t lbd = 0;
        double activity = 0;
    };
    struct Watcher {
        uint32_t cref;
        Lit blocker;
        bool binary;
    };

    // lit value: 0 = false, 1 = true, 2 = unassigned
    uint8_t lit_value(Lit l) const {
        const uint8_t v = assigns_[var_of(l)];
        return v == 2 ? 2 : static_cast<uint8_t>(v ^ (l & 1U));
    }

    void attach(uint32_t cref);
    void enqueue(Lit l, uint32_t reason);
    uint32_t propagate();  // returns conflicting clause or kNoReason
    void analyze(uint32_t confl, std::vector<Lit>& learnt, int& backtrack_level, uint32_t& lbd);
    bool redundant(Lit l, uint32_t abstract_levels);
    void backtrack(int level);
    Lit pick_branch();
    void bump_var(uint32_t v);
    void bump_clause(Clause& c);
    void reduce_db();
    void heap_insert(uint32_t v);
    void heap_up(size_t i);
    void heap_down(size_t i);
    uint32_t heap_pop();
    int level() const { return static_cast<int>(trail_lim_.size()); }

    int num_vars_;
    std::mt19937_64 rng_;
    bool inconsistent_ = false;

    std::vector<Clause> clauses_;
    std::vector<std::vector<Watcher>> watches_;
    std::vector<uint8_t> assigns_;
    std::vector<uint8_t> polarity_;
    std::vector<int> levels_;
    std::vector<uint32_t> reasons_;
    std::vector<Lit> trail_;
    std::vector<size_t> trail_lim_;
    size_t qhead_ = 0;

    std::vector<double> activity_;
    double var_inc_ = 1.0;
    double clause_inc_ = 1.0;
    std::vector<uint32_t> heap_;
    std::vector<int> heap_index_;

    std::vector<uint8_t> seen_;
    std::vector<Lit> analyze_stack_;
    std::vector<Lit> analyze_clear_;
    std::vector<uint32_t> level_stamp_;
    uint32_t stamp_ = 0;

    std::vector<bool> model_;
    Stats stats_;
    size_t num_learnts_ = 0;
};

}  // namespace wangtori::sat
