#include "mpg/lp.hpp"

#include <stdexcept>

namespace mpg {

namespace {

// Tableau in canonical form: rows 0..m-1 are constraints with basis columns
// forming an identity, row m is the (phase-2) objective, row m+1 the phase-1
// objective. Column layout: structural | slack | artificial | rhs.
struct Tableau {
    int m = 0;
    int cols = 0;      // total columns excluding rhs
    int rhs = 0;       // rhs column index
    int art_begin = 0; // first artificial column
    std::vector<std::vector<Rat>> a;
    std::vector<int> basis;

    Rat& at(int r, int c) { return a[r][c]; }

    void pivot(int row, int col) {
        Rat p = a[row][col];
        for (int c = 0; c <= rhs; ++c) a[row][c] /= p;
        for (int r = 0; r < static_cast<int>(a.size()); ++r) {
            if (r == row || a[r][col] == 0) continue;
            Rat f = a[r][col];
            for (int c = 0; c <= rhs; ++c) a[r][c] -= f * a[row][c];
        }
        basis[row] = col;
    }

    // Bland's rule on the given objective row; columns with allowed(c) false
    // never enter. Returns false when the objective row proves unbounded.
    bool minimize(int obj_row, const std::vector<bool>& allowed) {
        while (true) {
            int enter = -1;
            for (int c = 0; c < cols; ++c) {
                if (allowed[c] && a[obj_row][c] < 0) {
                    enter = c;
                    break;
                }
            }
            if (enter == -1) return true;
            int leave = -1;
            Rat best;
            for (int r = 0; r < m; ++r) {
                if (a[r][enter] <= 0) continue;
                Rat ratio = a[r][rhs] / a[r][enter];
                if (leave == -1 || ratio < best ||
                    (ratio == best && basis[r] < basis[leave])) {
                    best = ratio;
                    leave = r;
                }
            }
            if (leave == -1) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
    const int nvars = static_cast<int>(lp.vars.size());
    if (static_cast<int>(lp.objective.size()) != nvars)
        throw std::invalid_argument("solve_lp: objective arity mismatch");
    for (const auto& c : lp.constraints)
        if (static_cast<int>(c.coeffs.size()) != nvars)
            throw std::invalid_argument("solve_lp: constraint arity mismatch");

    // Rewrite over nonnegative internal variables: a variable with a finite
    // lower bound becomes lb + y, a variable unbounded below becomes
    // y+ - y-. Finite upper bounds turn into extra rows.
    struct VarMap {
        int pos;            // internal column of the positive part
        int neg = -1;       // internal column of the negative part (free vars)
        Rat shift;          // added constant (finite lower bound)
    };
    std::vector<VarMap> vmap(nvars);
    int ny = 0;
    for (int j = 0; j < nvars; ++j) {
        vmap[j].pos = ny++;
        if (lp.vars[j].lower)
            vmap[j].shift = *lp.vars[j].lower;
        else
            vmap[j].neg = ny++;
    }

    struct Row {
        std::vector<Rat> coef;
        Relation rel;
        Rat rhs;
    };
    std::vector<Row> rows;
    auto add_row = [&](const std::vector<Rat>& orig, Relation rel, Rat rhs) {
        Row row;
        row.coef.assign(ny, Rat(0));
        row.rel = rel;
        for (int j = 0; j < nvars; ++j) {
            if (orig[j] == 0) continue;
            row.coef[vmap[j].pos] += orig[j];
            if (vmap[j].neg >= 0) row.coef[vmap[j].neg] -= orig[j];
            rhs -= orig[j] * vmap[j].shift;
        }
        row.rhs = std::move(rhs);
        rows.push_back(std::move(row));
    };
    for (const auto& c : lp.constraints) add_row(c.coeffs, c.rel, c.rhs);
    for (int j = 0; j < nvars; ++j) {
        if (!lp.vars[j].upper) continue;
        std::vector<Rat> unit(nvars, Rat(0));
        unit[j] = 1;
        add_row(unit, Relation::LessEq, *lp.vars[j].upper);
    }

    // Empty rows degenerate to constant comparisons.
    {
        std::vector<Row> kept;
        for (auto& row : rows) {
            bool all_zero = true;
            for (const Rat& v : row.coef)
                if (v != 0) all_zero = false;
            if (!all_zero) {
                kept.push_back(std::move(row));
                continue;
            }
            bool ok = row.rel == Relation::LessEq    ? Rat(0) <= row.rhs
                      : row.rel == Relation::Equal   ? Rat(0) == row.rhs
                                                     : Rat(0) >= row.rhs;
            if (!ok) return {LpStatus::Infeasible, {}, Rat(0)};
        }
        rows = std::move(kept);
    }

    const int m = static_cast<int>(rows.size());
    int slack_count = 0;
    for (const auto& row : rows)
        if (row.rel != Relation::Equal) ++slack_count;

    Tableau t;
    t.m = m;
    t.art_begin = ny + slack_count;
    t.cols = t.art_begin + m;  // one artificial slot per row, used as needed
    t.rhs = t.cols;
    t.a.assign(m + 2, std::vector<Rat>(t.cols + 1, Rat(0)));
    t.basis.assign(m, -1);

    int next_slack = ny;
    int used_arts = 0;
    for (int r = 0; r < m; ++r) {
        Row row = rows[r];
        if (row.rhs < 0) {
            for (Rat& v : row.coef) v = -v;
            row.rhs = -row.rhs;
            row.rel = row.rel == Relation::LessEq    ? Relation::GreaterEq
                      : row.rel == Relation::GreaterEq ? Relation::LessEq
                                                       : Relation::Equal;
        }
        for (int c = 0; c < ny; ++c) t.a[r][c] = row.coef[c];
        t.a[r][t.rhs] = row.rhs;
        if (row.rel == Relation::LessEq) {
            t.a[r][next_slack] = 1;
            t.basis[r] = next_slack++;
        } else {
            if (row.rel == Relation::GreaterEq) t.a[r][next_slack++] = -1;
            int art = t.art_begin + used_arts++;
            t.a[r][art] = 1;
            t.basis[r] = art;
        }
    }

    // Phase-2 objective as minimization.
    for (int j = 0; j < nvars; ++j) {
        Rat c = lp.direction == LpObjective::Maximize ? Rat(-lp.objective[j]) : lp.objective[j];
        if (c == 0) continue;
        t.a[m][vmap[j].pos] += c;
        if (vmap[j].neg >= 0) t.a[m][vmap[j].neg] -= c;
    }
    // Phase-1 objective: sum of artificials, canonicalized against the
    // starting basis (basic columns must have zero reduced cost).
    for (int r = 0; r < m; ++r)
        if (t.basis[r] >= t.art_begin) t.a[m + 1][t.basis[r]] = 1;
    for (int r = 0; r < m; ++r) {
        if (t.basis[r] < t.art_begin) continue;
        for (int c = 0; c <= t.rhs; ++c) t.a[m + 1][c] -= t.a[r][c];
    }

    std::vector<bool> allow_all(t.cols, true);
    if (!t.minimize(m + 1, allow_all))
        throw std::logic_error("solve_lp: phase 1 unbounded");
    if (t.a[m + 1][t.rhs] != 0) return {LpStatus::Infeasible, {}, Rat(0)};

    // Drive leftover zero-value artificials out of the basis; a row with no
    // eligible pivot is redundant and can be neutralized in place.
    std::vector<bool> structural(t.cols, false);
    for (int c = 0; c < t.art_begin; ++c) structural[c] = true;
    for (int r = 0; r < m; ++r) {
        if (t.basis[r] < t.art_begin) continue;
        int col = -1;
        for (int c = 0; c < t.art_begin; ++c) {
            if (t.a[r][c] != 0) {
                col = c;
                break;
            }
        }
        if (col >= 0) t.pivot(r, col);
    }

    if (!t.minimize(m, structural)) return {LpStatus::Unbounded, {}, Rat(0)};

    std::vector<Rat> y(ny, Rat(0));
    for (int r = 0; r < m; ++r)
        if (t.basis[r] < ny) y[t.basis[r]] = t.a[r][t.rhs];

    LpResult res;
    res.status = LpStatus::Optimal;
    res.assignment.resize(nvars);
    res.objective = 0;
    for (int j = 0; j < nvars; ++j) {
        Rat v = y[vmap[j].pos] + vmap[j].shift;
        if (vmap[j].neg >= 0) v -= y[vmap[j].neg];
        res.assignment[j] = v;
        res.objective += lp.objective[j] * res.assignment[j];
    }
    return res;
}

}  // namespace mpg
