#pragma once

// Exact-rational linear programming. A dense two-phase tableau simplex with
// Bland's rule guarantees termination and returns basic (vertex) solutions;
// separation oracles feed a row-generation loop around it. Everything is
// deterministic: fixed pivot rule, fixed oracle order, ordered containers.

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "frac_point.hpp"
#include "graph.hpp"
#include "rational.hpp"

namespace lamthin {

enum class Rel { le, eq, ge };
enum class RowKind { rank, bound, cut, other };

struct LinRow {
    std::map<int, Rat> coeffs;  // variable (edge id) -> coefficient
    Rel rel = Rel::le;
    Rat rhs = 0;
    RowKind kind = RowKind::other;
    std::string label;
};

inline Rat row_activity(const LinRow& row, const FracPoint& x) {
    Rat s = 0;
    for (const auto& [id, a] : row.coeffs) s += a * x.at(id);
    return s;
}

inline bool row_satisfied(const LinRow& row, const FracPoint& x) {
    Rat lhs = row_activity(row, x);
    switch (row.rel) {
        case Rel::le: return lhs <= row.rhs;
        case Rel::eq: return lhs == row.rhs;
        case Rel::ge: return lhs >= row.rhs;
    }
    return false;
}

inline bool row_tight(const LinRow& row, const FracPoint& x) {
    return row_activity(row, x) == row.rhs;
}

/// An oracle returns violated rows for implicit constraint families (empty
/// when the point satisfies the whole family).
using SeparationOracle = std::function<std::vector<LinRow>(const FracPoint&)>;

enum class VarDomain { unit_interval, nonneg };

class LinearProgram {
public:
    void add_variable(int id, VarDomain dom = VarDomain::unit_interval) {
        require_input(!domain_.count(id), "duplicate variable");
        var_ids_.push_back(id);
        std::sort(var_ids_.begin(), var_ids_.end());
        domain_[id] = dom;
    }

    void set_objective(int id, Rat c) {
        require_input(domain_.count(id) > 0, "objective on unknown variable");
        objective_[id] = std::move(c);
    }

    void add_row(LinRow row) {
        for (const auto& [id, _] : row.coeffs)
            require_input(domain_.count(id) > 0, "row references unknown variable");
        rows_.push_back(std::move(row));
    }

    void add_oracle(SeparationOracle o) { oracles_.push_back(std::move(o)); }

    const std::vector<int>& variables() const { return var_ids_; }
    VarDomain domain(int id) const { return domain_.at(id); }
    const std::map<int, Rat>& objective() const { return objective_; }
    const std::vector<LinRow>& rows() const { return rows_; }
    const std::vector<SeparationOracle>& oracles() const { return oracles_; }

    Rat objective_value(const FracPoint& x) const {
        Rat s = 0;
        for (const auto& [id, c] : objective_) s += c * x.at(id);
        return s;
    }

private:
    std::vector<int> var_ids_;
    std::map<int, VarDomain> domain_;
    std::map<int, Rat> objective_;
    std::vector<LinRow> rows_;
    std::vector<SeparationOracle> oracles_;
};

namespace detail {

enum class SimplexStatus { optimal, infeasible, unbounded };

struct SimplexResult {
    SimplexStatus status = SimplexStatus::infeasible;
    std::vector<Rat> x;
    Rat value = 0;
};

/// minimize c.x  s.t.  A x (rel) b, x >= 0, via two-phase tableau simplex
/// with Bland's rule (smallest eligible index everywhere).
class Simplex {
public:
    Simplex(std::vector<std::vector<Rat>> a, std::vector<Rel> rel, std::vector<Rat> b,
            std::vector<Rat> c)
        : a_(std::move(a)), rel_(std::move(rel)), b_(std::move(b)), c_(std::move(c)) {}

    SimplexResult solve() {
        const int m = static_cast<int>(a_.size());
        const int n = m == 0 ? static_cast<int>(c_.size()) : static_cast<int>(a_[0].size());
        // normalize rhs >= 0
        for (int i = 0; i < m; ++i) {
            if (b_[i] < 0) {
                b_[i] = -b_[i];
                for (Rat& v : a_[i]) v = -v;
                rel_[i] = rel_[i] == Rel::le ? Rel::ge : (rel_[i] == Rel::ge ? Rel::le : Rel::eq);
            }
        }
        // layout: structural 0..n-1, then one slack/surplus per inequality,
        // then one artificial per row that needs it
        int cols = n;
        std::vector<int> slack_col(m, -1), art_col(m, -1);
        for (int i = 0; i < m; ++i)
            if (rel_[i] != Rel::eq) slack_col[i] = cols++;
        int first_art = cols;
        for (int i = 0; i < m; ++i)
            if (rel_[i] != Rel::le) art_col[i] = cols++;
        ncols_ = cols;
        tab_.assign(m, std::vector<Rat>(cols + 1, Rat(0)));
        basis_.assign(m, -1);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) tab_[i][j] = a_[i][j];
            tab_[i][cols] = b_[i];
            if (slack_col[i] >= 0) tab_[i][slack_col[i]] = rel_[i] == Rel::le ? 1 : -1;
            if (art_col[i] >= 0) {
                tab_[i][art_col[i]] = 1;
                basis_[i] = art_col[i];
            } else {
                basis_[i] = slack_col[i];
            }
        }
        banned_.assign(cols, false);

        if (first_art < cols) {
            // phase 1: minimize the artificial sum
            obj_.assign(cols + 1, Rat(0));
            for (int j = first_art; j < cols; ++j) obj_[j] = 1;
            for (int i = 0; i < m; ++i)
                if (basis_[i] >= first_art)
                    for (int j = 0; j <= cols; ++j) obj_[j] -= tab_[i][j];
            if (!pivot_until_optimal()) return {SimplexStatus::unbounded, {}, 0};
            if (-obj_[cols] != 0) return {SimplexStatus::infeasible, {}, 0};
            drive_out_artificials(first_art);
            for (int j = first_art; j < ncols_; ++j) banned_[j] = true;
        }

        // phase 2: the real objective, priced out over the current basis
        obj_.assign(ncols_ + 1, Rat(0));
        for (int j = 0; j < n; ++j) obj_[j] = c_[j];
        for (int i = 0; i < static_cast<int>(tab_.size()); ++i) {
            int bj = basis_[i];
            if (bj < n && c_[bj] != 0) {
                Rat f = c_[bj];
                for (int j = 0; j <= ncols_; ++j) obj_[j] -= f * tab_[i][j];
            }
        }
        if (!pivot_until_optimal()) return {SimplexStatus::unbounded, {}, 0};

        SimplexResult res;
        res.status = SimplexStatus::optimal;
        res.x.assign(n, Rat(0));
        for (int i = 0; i < static_cast<int>(tab_.size()); ++i)
            if (basis_[i] < n) res.x[basis_[i]] = tab_[i][ncols_];
        res.value = -obj_[ncols_];
        return res;
    }

private:
    bool pivot_until_optimal() {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < ncols_; ++j)
                if (!banned_[j] && obj_[j] < 0) {
                    enter = j;
                    break;  // Bland: smallest negative index
                }
            if (enter < 0) return true;
            int leave = -1;
            Rat best;
            for (int i = 0; i < static_cast<int>(tab_.size()); ++i) {
                if (tab_[i][enter] <= 0) continue;
                Rat ratio = tab_[i][ncols_] / tab_[i][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return false;  // unbounded
            pivot(leave, enter);
        }
    }

    void pivot(int row, int col) {
        Rat p = tab_[row][col];
        for (int j = 0; j <= ncols_; ++j) tab_[row][j] /= p;
        for (int i = 0; i < static_cast<int>(tab_.size()); ++i) {
            if (i == row || tab_[i][col] == 0) continue;
            Rat f = tab_[i][col];
            for (int j = 0; j <= ncols_; ++j) tab_[i][j] -= f * tab_[row][j];
        }
        if (obj_[col] != 0) {
            Rat f = obj_[col];
            for (int j = 0; j <= ncols_; ++j) obj_[j] -= f * tab_[row][j];
        }
        basis_[row] = col;
    }

    void drive_out_artificials(int first_art) {
        for (int i = static_cast<int>(tab_.size()) - 1; i >= 0; --i) {
            if (basis_[i] < first_art) continue;
            int col = -1;
            for (int j = 0; j < first_art; ++j)
                if (tab_[i][j] != 0) {
                    col = j;
                    break;
                }
            if (col >= 0) {
                pivot(i, col);
            } else {
                // redundant constraint: the row is all zeros outside artificials
                tab_.erase(tab_.begin() + i);
                basis_.erase(basis_.begin() + i);
            }
        }
    }

    std::vector<std::vector<Rat>> a_;
    std::vector<Rel> rel_;
    std::vector<Rat> b_;
    std::vector<Rat> c_;
    std::vector<std::vector<Rat>> tab_;
    std::vector<Rat> obj_;
    std::vector<int> basis_;
    std::vector<bool> banned_;
    int ncols_ = 0;
};

}  // namespace detail

enum class SolveStatus { optimal, infeasible, unbounded, iteration_limit };

struct BasicSolution {
    FracPoint x;
    Rat value = 0;
    /// A maximal linearly independent set of tight rows (variable bounds
    /// included), preferring rank/polytope rows over cut rows. Its rank always
    /// equals the number of variables.
    std::vector<LinRow> tight;
};

struct SolveOutcome {
    SolveStatus status = SolveStatus::infeasible;
    std::optional<BasicSolution> solution;
    LinearProgram final_lp;  // input rows plus everything generated
    int oracle_rounds = 0;
};

namespace detail {

inline int kind_preference(RowKind k) {
    switch (k) {
        case RowKind::rank: return 0;
        case RowKind::bound: return 1;
        case RowKind::cut: return 2;
        case RowKind::other: return 3;
    }
    return 3;
}

/// Greedy maximal independent subset of the tight rows, preferred kinds first.
inline std::vector<LinRow> select_tight_rows(const LinearProgram& lp, const FracPoint& x,
                                             int* rank_out) {
    const std::vector<int>& vars = lp.variables();
    std::map<int, int> col_of;
    for (std::size_t i = 0; i < vars.size(); ++i) col_of[vars[i]] = static_cast<int>(i);

    std::vector<LinRow> candidates;
    for (const LinRow& row : lp.rows())
        if (row_tight(row, x)) candidates.push_back(row);
    for (int id : vars) {
        if (x.at(id) == 0) {
            LinRow r;
            r.coeffs[id] = 1;
            r.rel = Rel::ge;
            r.rhs = 0;
            r.kind = RowKind::bound;
            r.label = "x_" + std::to_string(id) + " >= 0";
            candidates.push_back(std::move(r));
        }
        if (lp.domain(id) == VarDomain::unit_interval && x.at(id) == 1) {
            LinRow r;
            r.coeffs[id] = 1;
            r.rel = Rel::le;
            r.rhs = 1;
            r.kind = RowKind::bound;
            r.label = "x_" + std::to_string(id) + " <= 1";
            candidates.push_back(std::move(r));
        }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const LinRow& a, const LinRow& b) {
                         return kind_preference(a.kind) < kind_preference(b.kind);
                     });

    std::vector<LinRow> chosen;
    std::vector<std::vector<Rat>> reduced;  // eliminated row vectors
    std::vector<int> lead;                  // leading column of reduced[i]
    for (const LinRow& row : candidates) {
        std::vector<Rat> v(vars.size(), Rat(0));
        for (const auto& [id, a] : row.coeffs) v[col_of[id]] = a;
        for (std::size_t r = 0; r < reduced.size(); ++r) {
            if (v[lead[r]] == 0) continue;
            Rat f = v[lead[r]];
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * reduced[r][j];
        }
        int l = -1;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) {
                l = static_cast<int>(j);
                break;
            }
        if (l < 0) continue;
        Rat f = v[l];
        for (Rat& vj : v) vj /= f;
        reduced.push_back(std::move(v));
        lead.push_back(l);
        chosen.push_back(row);
        if (reduced.size() == vars.size()) break;
    }
    if (rank_out) *rank_out = static_cast<int>(reduced.size());
    return chosen;
}

}  // namespace detail

/// Row generation around the exact simplex: solve the explicit system to a
/// vertex, ask every oracle, add whatever is violated, repeat. The vertex of
/// the final restricted system is a vertex of the full system, because the
/// full feasible region is contained in the restricted one and contains the
/// point. Infeasibility of the restricted system certifies infeasibility of
/// the full one.
inline SolveOutcome solve_basic(LinearProgram lp, int max_rounds = 10000) {
    const std::vector<int>& vars = lp.variables();
    std::map<int, int> col_of;
    for (std::size_t i = 0; i < vars.size(); ++i) col_of[vars[i]] = static_cast<int>(i);

    SolveOutcome out;
    for (int round = 0; round < max_rounds; ++round) {
        std::vector<std::vector<Rat>> a;
        std::vector<Rel> rel;
        std::vector<Rat> b;
        for (const LinRow& row : lp.rows()) {
            std::vector<Rat> v(vars.size(), Rat(0));
            for (const auto& [id, coef] : row.coeffs) v[col_of[id]] = coef;
            a.push_back(std::move(v));
            rel.push_back(row.rel);
            b.push_back(row.rhs);
        }
        std::vector<Rat> c(vars.size(), Rat(0));
        for (const auto& [id, coef] : lp.objective()) c[col_of[id]] = coef;

        detail::SimplexResult res = detail::Simplex(std::move(a), rel, std::move(b), c).solve();
        if (res.status == detail::SimplexStatus::infeasible) {
            out.status = SolveStatus::infeasible;
            out.final_lp = std::move(lp);
            out.oracle_rounds = round;
            return out;
        }
        if (res.status == detail::SimplexStatus::unbounded) {
            out.status = SolveStatus::unbounded;
            out.final_lp = std::move(lp);
            out.oracle_rounds = round;
            return out;
        }
        FracPoint x;
        for (std::size_t i = 0; i < vars.size(); ++i) x.set(vars[i], res.x[i]);

        std::vector<LinRow> violated;
        // unit-interval bounds are enforced lazily, like an oracle
        for (int id : vars)
            if (lp.domain(id) == VarDomain::unit_interval && x.at(id) > 1) {
                LinRow r;
                r.coeffs[id] = 1;
                r.rel = Rel::le;
                r.rhs = 1;
                r.kind = RowKind::bound;
                r.label = "x_" + std::to_string(id) + " <= 1";
                violated.push_back(std::move(r));
            }
        if (violated.empty())
            for (const SeparationOracle& oracle : lp.oracles())
                for (LinRow& r : oracle(x)) {
                    require_invariant(!row_satisfied(r, x),
                                      "oracle returned a non-violated row");
                    violated.push_back(std::move(r));
                }
        if (violated.empty()) {
            BasicSolution sol;
            sol.x = std::move(x);
            sol.value = res.value;
            int rank = 0;
            sol.tight = detail::select_tight_rows(lp, sol.x, &rank);
            require_invariant(rank == static_cast<int>(vars.size()),
                              "simplex returned a non-vertex solution");
            out.status = SolveStatus::optimal;
            out.solution = std::move(sol);
            out.final_lp = std::move(lp);
            out.oracle_rounds = round;
            return out;
        }
        for (LinRow& r : violated) lp.add_row(std::move(r));
    }
    out.status = SolveStatus::iteration_limit;
    out.final_lp = std::move(lp);
    out.oracle_rounds = max_rounds;
    return out;
}

/// Recomputes feasibility and the tight-row rank at x. Returns a defect
/// description, or nullopt when x is a vertex of the explicit system.
inline std::optional<std::string> check_vertex(const LinearProgram& lp, const FracPoint& x) {
    for (int id : lp.variables()) {
        if (x.at(id) < 0) return "variable below zero: x_" + std::to_string(id);
        if (lp.domain(id) == VarDomain::unit_interval && x.at(id) > 1)
            return "variable above one: x_" + std::to_string(id);
    }
    for (std::size_t i = 0; i < lp.rows().size(); ++i)
        if (!row_satisfied(lp.rows()[i], x))
            return "violated row " + std::to_string(i) + " (" + lp.rows()[i].label + ")";
    int rank = 0;
    detail::select_tight_rows(lp, x, &rank);
    if (rank != static_cast<int>(lp.variables().size()))
        return "tight system has rank " + std::to_string(rank) + " over " +
               std::to_string(lp.variables().size()) + " variables";
    return std::nullopt;
}

/// Human-readable dump with exact rationals, for external cross-checking.
inline void write_lp_text(const LinearProgram& lp, std::ostream& os) {
    os << "min:";
    for (const auto& [id, c] : lp.objective())
        if (c != 0) os << " + " << rat_str(c) << " x_" << id;
    os << "\n";
    for (std::size_t i = 0; i < lp.rows().size(); ++i) {
        const LinRow& r = lp.rows()[i];
        os << "r" << i << (r.label.empty() ? "" : " (" + r.label + ")") << ":";
        for (const auto& [id, a] : r.coeffs)
            if (a != 0) os << " + " << rat_str(a) << " x_" << id;
        os << (r.rel == Rel::le ? " <= " : r.rel == Rel::eq ? " = " : " >= ")
           << rat_str(r.rhs) << "\n";
    }
    for (int id : lp.variables())
        os << "0 <= x_" << id << (lp.domain(id) == VarDomain::unit_interval ? " <= 1" : "")
           << "\n";
}

}  // namespace lamthin
