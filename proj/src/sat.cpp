#include "wangtori/sat.hpp"

#include <algorithm>
#include <stdexcept>

namespace wangtori::sat {

namespace {

double luby(double y, uint64_t x) {
    uint64_t size = 1;
    int seq = 0;
    while (size < x + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    while (size - 1 != x) {
        size = (size - 1) >> 1;
        --seq;
        x = x % size;
    }
    double r = 1;
    for (int i = 0; i < seq; ++i) r *= y;
    return r;
}

}  // namespace

Solver::Solver(int num_vars, uint64_t seed) : num_vars_(num_vars), rng_(seed) {
    if (num_vars < 0) throw std::invalid_argument("negative variable count");
    const auto n = static_cast<size_t>(num_vars);
    watches_.resize(2 * n);
    assigns_.assign(n, 2);
    polarity_.assign(n, 1);  // 1 = try false first
    levels_.assign(n, 0);
    reasons_.assign(n, kNoReason);
    activity_.assign(n, 0.0);
    heap_index_.assign(n, -1);
    seen_.assign(n, 0);
    level_stamp_.assign(n + 1, 0);
    // Small seeded perturbation of the initial order keeps runs reproducible
    // while letting different seeds explore different solutions.
    std::uniform_real_distribution<double> jitter(0.0, 1e-5);
    for (size_t v = 0; v < n; ++v) {
        activity_[v] = seed == 0 ? 0.0 : jitter(rng_);
        heap_insert(static_cast<uint32_t>(v));
    }
}

bool Solver::add_clause(const std::vector<int>& dimacs) {
    if (inconsistent_) return false;
    std::vector<Lit> lits;
    lits.reserve(dimacs.size());
    for (int d : dimacs) {
        if (d == 0 || std::abs(d) > num_vars_) throw std::invalid_argument("literal out of range");
        lits.push_back(to_lit(d));
    }
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (size_t i = 1; i < lits.size(); ++i)
        if (lits[i] == neg(lits[i - 1])) return true;  // tautology
    // Remove literals already false at level 0; drop satisfied clauses.
    std::vector<Lit> kept;
    for (Lit l : lits) {
        const uint8_t v = lit_value(l);
        if (v == 1) return true;
        if (v == 2) kept.push_back(l);
    }
    if (kept.empty()) {
        inconsistent_ = true;
        return false;
    }
    if (kept.size() == 1) {
        enqueue(kept[0], kNoReason);
        if (propagate() != kNoReason) inconsistent_ = true;
        return !inconsistent_;
    }
    clauses_.push_back({std::move(kept), false, false, 0, 0});
    attach(static_cast<uint32_t>(clauses_.size() - 1));
    return true;
}

void Solver::attach(uint32_t cref) {
    const Clause& c = clauses_[cref];
    const bool bin = c.lits.size() == 2;
    watches_[neg(c.lits[0])].push_back({cref, c.lits[1], bin});
    watches_[neg(c.lits[1])].push_back({cref, c.lits[0], bin});
}

void Solver::enqueue(Lit l, uint32_t reason) {
    const uint32_t v = var_of(l);
    assigns_[v] = static_cast<uint8_t>((l & 1U) ^ 1U);  // 1 = variable true
    levels_[v] = level();
    reasons_[v] = reason;
    trail_.push_back(l);
}

uint32_t Solver::propagate() {
    uint32_t confl = kNoReason;
    while (qhead_ < trail_.size()) {
        const Lit p = trail_[qhead_++];  // p became true; visit clauses watching ~p
        ++stats_.propagations;
        std::vector<Watcher>& ws = watches_[p];
        size_t i = 0, j = 0;
        const size_t n = ws.size();
        while (i < n) {
            Watcher w = ws[i++];
            if (lit_value(w.blocker) == 1) {
                ws[j++] = w;
                continue;
            }
            if (w.binary) {
                ws[j++] = w;
                if (lit_value(w.blocker) == 0) {
                    confl = w.cref;
                    while (i < n) ws[j++] = ws[i++];
                } else {
                    enqueue(w.blocker, w.cref);
                }
                continue;
            }
            Clause& c = clauses_[w.cref];
            if (c.deleted) continue;
            const Lit false_lit = neg(p);
            if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
            const Lit first = c.lits[0];
            if (first != w.blocker && lit_value(first) == 1) {
                ws[j++] = {w.cref, first, false};
                continue;
            }
            bool moved = false;
            for (size_t k = 2; k < c.lits.size(); ++k) {
                if (lit_value(c.lits[k]) != 0) {
                    std::swap(c.lits[1], c.lits[k]);
                    watches_[neg(c.lits[1])].push_back({w.cref, first, false});
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            ws[j++] = {w.cref, first, false};
            if (lit_value(first) == 0) {
                confl = w.cref;
                while (i < n) ws[j++] = ws[i++];
            } else {
                enqueue(first, w.cref);
            }
        }
        ws.resize(j);
        if (confl != kNoReason) break;
    }
    return confl;
}

void Solver::bump_var(uint32_t v) {
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) {
        for (double& a : activity_) a *= 1e-100;
        var_inc_ *= 1e-100;
    }
    if (heap_index_[v] >= 0) heap_up(static_cast<size_t>(heap_index_[v]));
}

void Solver::bump_clause(Clause& c) {
    c.activity += clause_inc_;
    if (c.activity > 1e20) {
        for (Clause& d : clauses_)
            if (d.learnt) d.activity *= 1e-20;
        clause_inc_ *= 1e-20;
    }
}

void Solver::analyze(uint32_t confl, std::vector<Lit>& learnt, int& backtrack_level,
                     uint32_t& lbd) {
    learnt.clear();
    learnt.push_back(0);  // placeholder for the asserting literal
    int path = 0;
    Lit p = 0;
    bool have_p = false;
    size_t index = trail_.size();

    for (;;) {
        Clause& c = clauses_[confl];
        if (c.learnt) bump_clause(c);
        for (size_t k = (have_p ? 1 : 0); k < c.lits.size(); ++k) {
            Lit q = c.lits[k];
            if (have_p && q == p) continue;
            const uint32_t v = var_of(q);
            if (seen_[v] || levels_[v] == 0) continue;
            seen_[v] = 1;
            bump_var(v);
            if (levels_[v] >= level()) {
                ++path;
            } else {
                learnt.push_back(q);
            }
        }
        // Next literal on the trail that took part in the conflict.
        do {
            --index;
        } while (!seen_[var_of(trail_[index])]);
        p = trail_[index];
        have_p = true;
        confl = reasons_[var_of(p)];
        seen_[var_of(p)] = 0;
        if (--path == 0) break;
        // Binary reasons may list p second; normalize so lits[0] is the implied literal.
        Clause& r = clauses_[confl];
        if (r.lits[0] != p) {
            auto it = std::find(r.lits.begin(), r.lits.end(), p);
            std::iter_swap(r.lits.begin(), it);
        }
    }
    learnt[0] = neg(p);

    // Recursive minimization.
    uint32_t abstract_levels = 0;
    for (size_t k = 1; k < learnt.size(); ++k)
        abstract_levels |= 1U << (levels_[var_of(learnt[k])] & 31);
    analyze_clear_.assign(learnt.begin(), learnt.end());
    size_t keep = 1;
    for (size_t k = 1; k < learnt.size(); ++k) {
        const uint32_t v = var_of(learnt[k]);
        if (reasons_[v] == kNoReason || !redundant(learnt[k], abstract_levels))
            learnt[keep++] = learnt[k];
    }
    learnt.resize(keep);

    backtrack_level = 0;
    if (learnt.size() > 1) {
        size_t max_i = 1;
        for (size_t k = 2; k < learnt.size(); ++k)
            if (levels_[var_of(learnt[k])] > levels_[var_of(learnt[max_i])]) max_i = k;
        std::swap(learnt[1], learnt[max_i]);
        backtrack_level = levels_[var_of(learnt[1])];
    }

    ++stamp_;
    lbd = 0;
    for (Lit l : learnt) {
        const int lv = levels_[var_of(l)];
        if (level_stamp_[static_cast<size_t>(lv)] != stamp_) {
            level_stamp_[static_cast<size_t>(lv)] = stamp_;
            ++lbd;
        }
    }

    for (Lit l : analyze_clear_) seen_[var_of(l)] = 0;
}

bool Solver::redundant(Lit l, uint32_t abstract_levels) {
    analyze_stack_.clear();
    analyze_stack_.push_back(l);
    const size_t top = analyze_clear_.size();
    while (!analyze_stack_.empty()) {
        const Lit cur = analyze_stack_.back();
        analyze_stack_.pop_back();
        const Clause& c = clauses_[reasons_[var_of(cur)]];
        for (Lit q : c.lits) {
            const uint32_t v = var_of(q);
            if (v == var_of(cur) || seen_[v] || levels_[v] == 0) continue;
            if (reasons_[v] != kNoReason && ((1U << (levels_[v] & 31)) & abstract_levels) != 0) {
                seen_[v] = 1;
                analyze_stack_.push_back(q);
                analyze_clear_.push_back(q);
            } else {
                for (size_t k = top; k < analyze_clear_.size(); ++k)
                    seen_[var_of(analyze_clear_[k])] = 0;
                analyze_clear_.resize(top);
                return false;
            }
        }
    }
    return true;
}

void Solver::backtrack(int lvl) {
    if (level() <= lvl) return;
    const size_t lim = trail_lim_[static_cast<size_t>(lvl)];
    for (size_t k = trail_.size(); k-- > lim;) {
        const uint32_t v = var_of(trail_[k]);
        polarity_[v] = static_cast<uint8_t>(trail_[k] & 1U);
        assigns_[v] = 2;
        reasons_[v] = kNoReason;
        if (heap_index_[v] < 0) heap_insert(v);
    }
    trail_.resize(lim);
    trail_lim_.resize(static_cast<size_t>(lvl));
    qhead_ = trail_.size();
}

Solver::Lit Solver::pick_branch() {
    while (!heap_.empty()) {
        const uint32_t v = heap_pop();
        if (assigns_[v] == 2) return static_cast<Lit>(2 * v + polarity_[v]);
    }
    return UINT32_MAX;
}

void Solver::reduce_db() {
    std::vector<uint32_t> learnts;
    for (uint32_t i = 0; i < clauses_.size(); ++i) {
        const Clause& c = clauses_[i];
        if (!c.learnt || c.deleted || c.lits.size() <= 2 || c.lbd <= 2) continue;
        // Keep clauses that are currently reasons.
        const uint32_t v0 = var_of(c.lits[0]);
        if (reasons_[v0] == i && lit_value(c.lits[0]) == 1) continue;
        learnts.push_back(i);
    }
    std::sort(learnts.begin(), learnts.end(), [&](uint32_t a, uint32_t b) {
        const Clause& ca = clauses_[a];
        const Clause& cb = clauses_[b];
        if (ca.lbd != cb.lbd) return ca.lbd > cb.lbd;
        if (ca.activity != cb.activity) return ca.activity < cb.activity;
        return a < b;
    });
    for (size_t k = 0; k < learnts.size() / 2; ++k) {
        Clause& c = clauses_[learnts[k]];
        c.deleted = true;
        c.lits.clear();
        c.lits.shrink_to_fit();
        --num_learnts_;
    }
    // Purge watchers of deleted clauses.
    for (auto& ws : watches_)
        ws.erase(std::remove_if(ws.begin(), ws.end(),
                                [&](const Watcher& w) { return clauses_[w.cref].deleted; }),
                 ws.end());
}

Result Solver::solve(std::optional<std::chrono::steady_clock::time_point> deadline) {
    if (inconsistent_) return Result::Unsat;
    if (propagate() != kNoReason) {
        inconsistent_ = true;
        return Result::Unsat;
    }
    std::vector<Lit> learnt;
    uint64_t restart_count = 0;
    uint64_t next_reduce = 2000;
    std::uniform_int_distribution<int> coin(0, 999);

    for (;;) {
        const auto budget = static_cast<uint64_t>(luby(2.0, restart_count) * 100);
        uint64_t conflicts_here = 0;
        for (;;) {
            const uint32_t confl = propagate();
            if (confl != kNoReason) {
                ++stats_.conflicts;
                ++conflicts_here;
                if (level() == 0) {
                    inconsistent_ = true;
                    return Result::Unsat;
                }
                int bt = 0;
                uint32_t lbd = 0;
                analyze(confl, learnt, bt, lbd);
                backtrack(bt);
                if (learnt.size() == 1) {
                    enqueue(learnt[0], kNoReason);
                } else {
                    clauses_.push_back({learnt, true, false, lbd, 0});
                    const auto cref = static_cast<uint32_t>(clauses_.size() - 1);
                    attach(cref);
                    bump_clause(clauses_[cref]);
                    ++num_learnts_;
                    enqueue(learnt[0], cref);
                }
                var_inc_ /= 0.95;
                clause_inc_ /= 0.999;
                if ((stats_.conflicts & 1023) == 0 && deadline &&
                    std::chrono::steady_clock::now() > *deadline)
                    return Result::Unknown;
                continue;
            }
            if (conflicts_here >= budget) {
                backtrack(0);
                ++stats_.restarts;
                break;
            }
            if (stats_.conflicts >= next_reduce) {
                next_reduce = stats_.conflicts + 2000 + 300 * (next_reduce / 2000);
                reduce_db();
            }
            Lit next = pick_branch();
            if (next == UINT32_MAX) {
                model_.assign(static_cast<size_t>(num_vars_), false);
                for (size_t v = 0; v < model_.size(); ++v) model_[v] = assigns_[v] == 1;
                backtrack(0);
                return Result::Sat;
            }
            if (coin(rng_) < 2) next = neg(next);  // rare seeded phase flip
            ++stats_.decisions;
            trail_lim_.push_back(trail_.size());
            enqueue(next, kNoReason);
        }
        ++restart_count;
    }
}

void Solver::heap_insert(uint32_t v) {
    heap_index_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    heap_up(heap_.size() - 1);
}

void Solver::heap_up(size_t i) {
    const uint32_t v = heap_[i];
    while (i > 0) {
        const size_t parent = (i - 1) / 2;
        if (activity_[heap_[parent]] >= activity_[v]) break;
        heap_[i] = heap_[parent];
        heap_index_[heap_[i]] = static_cast<int>(i);
        i = parent;
    }
    heap_[i] = v;
    heap_index_[v] = static_cast<int>(i);
}

void Solver::heap_down(size_t i) {
    const uint32_t v = heap_[i];
    const size_t n = heap_.size();
    for (;;) {
        size_t child = 2 * i + 1;
        if (child >= n) break;
        if (child + 1 < n && activity_[heap_[child + 1]] > activity_[heap_[child]]) ++child;
        if (activity_[heap_[child]] <= activity_[v]) break;
        heap_[i] = heap_[child];
        heap_index_[heap_[i]] = static_cast<int>(i);
        i = child;
    }
    heap_[i] = v;
    heap_index_[v] = static_cast<int>(i);
}

uint32_t Solver::heap_pop() {
    const uint32_t top = heap_[0];
    heap_index_[top] = -1;
    const uint32_t last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
        heap_[0] = last;
        heap_index_[last] = 0;
        heap_down(0);
    }
    return top;
}

}  // namespace wangtori::sat
