//! Exact rational linear programming: minimization.
//!
//! Two independent routes compute the same minima. [`solve_min`] is a dense
//! two-phase simplex with Bland's anti-cycling pivot rule over exact
//! rationals, so it terminates on every input and never rounds.
//! [`oracle_min`] enumerates candidate basic points (every `num_vars`-sized
//! subsystem of tight constraints) plus extreme rays, which is exponentially
//! slower but structurally unlike a simplex; tests require the two to agree.

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{dot, null_space, solve_square};
use crate::rational::Rational;

/// Constraint relation; all relations are nonstrict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        }
    }

    /// Holds exactly for `lhs` vs `rhs`?
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

/// One linear constraint `coeffs . x  <relation>  rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Constraint { coeffs, relation, rhs }
    }

    /// Exact check of this constraint at a point.
    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        self.relation.holds(&dot(&self.coeffs, x), &self.rhs)
    }
}

/// Minimization program over `num_vars` variables. When `nonneg` is set,
/// every variable additionally satisfies `x_i >= 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    num_vars: usize,
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
    nonneg: bool,
}

impl LinearProgram {
    pub fn new(
        objective: Vec<Rational>,
        constraints: Vec<Constraint>,
        nonneg: bool,
    ) -> Result<Self> {
        let num_vars = objective.len();
        if num_vars == 0 {
            return Err(Error::InvalidInput("program needs at least one variable".into()));
        }
        for (i, c) in constraints.iter().enumerate() {
            if c.coeffs.len() != num_vars {
                return Err(Error::InvalidInput(format!(
                    "constraint {i} has {} coefficients, program has {num_vars} variables",
                    c.coeffs.len()
                )));
            }
        }
        Ok(LinearProgram { num_vars, objective, constraints, nonneg })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn nonneg(&self) -> bool {
        self.nonneg
    }

    /// Exact feasibility of a point, including the nonnegativity bounds.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars
            && (!self.nonneg || x.iter().all(|v| !v.is_negative()))
            && self.constraints.iter().all(|c| c.satisfied_by(x))
    }
}

/// Result of a minimization.
#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rational, witness: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Optimal { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn status_name(&self) -> &'static str {
        match self {
            LpOutcome::Optimal { .. } => "optimal",
            LpOutcome::Infeasible => "infeasible",
            LpOutcome::Unbounded => "unbounded",
        }
    }
}

/// Enumeration limits for [`oracle_min`].
pub const ORACLE_MAX_VARS: usize = 8;
pub const ORACLE_MAX_CONSTRAINTS: usize = 40;

/// Brute-force verification oracle.
///
/// Candidate optima are the solutions of every `num_vars`-sized subsystem of
/// tight constraints (nonnegativity bounds included); unboundedness is
/// decided by enumerating the extreme rays of the recession cone. Regions
/// containing lines are first sliced by the orthogonal complement of their
/// lineality space, which changes neither feasibility nor boundedness and
/// preserves the optimum whenever one exists.
pub fn oracle_min(lp: &LinearProgram) -> Result<LpOutcome> {
    if lp.num_vars > ORACLE_MAX_VARS {
        return Err(Error::UnsupportedSize(format!(
            "oracle_min handles at most {ORACLE_MAX_VARS} variables, got {}",
            lp.num_vars
        )));
    }
    if lp.constraints.len() > ORACLE_MAX_CONSTRAINTS {
        return Err(Error::UnsupportedSize(format!(
            "oracle_min handles at most {ORACLE_MAX_CONSTRAINTS} constraints, got {}",
            lp.constraints.len()
        )));
    }

    let n = lp.num_vars;
    let mut rows: Vec<Constraint> = lp.constraints.clone();
    if lp.nonneg {
        for i in 0..n {
            let mut coeffs = vec![Rational::zero(); n];
            coeffs[i] = Rational::one();
            rows.push(Constraint::new(coeffs, Relation::Ge, Rational::zero()));
        }
    }

    // Lineality space of the region: null space of the full coefficient
    // matrix. Slicing by its orthogonal complement makes the region pointed.
    let coeff_matrix: Vec<Vec<Rational>> = rows.iter().map(|c| c.coeffs.clone()).collect();
    let lineality = null_space(&coeff_matrix, n);
    let objective_moves_along_lineality =
        lineality.iter().any(|d| !dot(&lp.objective, d).is_zero());

    let mut sliced = rows.clone();
    for d in &lineality {
        sliced.push(Constraint::new(d.clone(), Relation::Eq, Rational::zero()));
    }

    let feasible_in_slice =
        |x: &[Rational]| sliced.iter().all(|c| c.satisfied_by(x));

    // Candidate vertices of the (pointed) sliced region.
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    for combo in (0..sliced.len()).combinations(n) {
        let a: Vec<Vec<Rational>> = combo.iter().map(|&i| sliced[i].coeffs.clone()).collect();
        let b: Vec<Rational> = combo.iter().map(|&i| sliced[i].rhs.clone()).collect();
        let Some(x) = solve_square(&a, &b) else { continue };
        if !feasible_in_slice(&x) {
            continue;
        }
        let v = dot(&lp.objective, &x);
        match &best {
            Some((bv, _)) if *bv <= v => {}
            _ => best = Some((v, x)),
        }
    }

    if objective_moves_along_lineality {
        // A whole line through any feasible point changes the objective.
        return Ok(if best.is_some() {
            LpOutcome::Unbounded
        } else {
            LpOutcome::Infeasible
        });
    }

    let Some((value, witness)) = best else {
        // A nonempty pointed region always has a vertex.
        return Ok(LpOutcome::Infeasible);
    };

    // Extreme rays: directions fixed by n-1 linearly independent tight rows.
    let is_recession = |d: &[Rational]| {
        sliced.iter().all(|c| {
            let along = dot(&c.coeffs, d);
            match c.relation {
                Relation::Le => !along.is_positive(),
                Relation::Ge => !along.is_negative(),
                Relation::Eq => along.is_zero(),
            }
        })
    };
    for combo in (0..sliced.len()).combinations(n - 1) {
        let a: Vec<Vec<Rational>> = combo.iter().map(|&i| sliced[i].coeffs.clone()).collect();
        let ns = null_space(&a, n);
        if ns.len() != 1 {
            continue;
        }
        let d = ns.into_iter().next().unwrap();
        let neg: Vec<Rational> = d.iter().map(|v| -v).collect();
        for dir in [d, neg] {
            if is_recession(&dir) && dot(&lp.objective, &dir).is_negative() {
                return Ok(LpOutcome::Unbounded);
            }
        }
    }

    Ok(LpOutcome::Optimal { value, witness })
}

/// Exact minimization by the two-phase simplex method with Bland's rule.
///
/// Deterministic: the same program always yields the same outcome and the
/// same witness. Termination is guaranteed by the pivot rule; an internal
/// pivot budget turns a (provably impossible) cycle into a loud panic rather
/// than a hang.
pub fn solve_min(lp: &LinearProgram) -> LpOutcome {
    let outcome = Tableau::build(lp).run();
    if let LpOutcome::Optimal { value, witness } = &outcome {
        debug_assert!(lp.is_feasible(witness), "simplex witness infeasible");
        debug_assert_eq!(&dot(&lp.objective, witness), value, "simplex value mismatch");
    }
    outcome
}

const PIVOT_BUDGET: usize = 1_000_000;

struct Tableau {
    /// `rows[i]` has `width` entries: structural columns then rhs.
    rows: Vec<Vec<Rational>>,
    /// Reduced-cost row, same width; last entry is minus the objective value.
    obj: Vec<Rational>,
    /// `basis[i]` = column index basic in row `i`.
    basis: Vec<usize>,
    /// Structural columns (originals + slacks); artificials live beyond.
    n_struct: usize,
    n_cols: usize,
    /// Objective over structural columns, for phase 2.
    cost: Vec<Rational>,
    /// Per original variable: positive column, and negative column when the
    /// variable is free and was split.
    var_cols: Vec<(usize, Option<usize>)>,
    num_orig: usize,
    pivots: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let n = lp.num_vars;
        let m = lp.constraints.len();

        let mut var_cols = Vec::with_capacity(n);
        let mut next = 0usize;
        for _ in 0..n {
            if lp.nonneg {
                var_cols.push((next, None));
                next += 1;
            } else {
                var_cols.push((next, Some(next + 1)));
                next += 2;
            }
        }
        let n_split = next;
        let n_slack: usize = lp
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        let n_struct = n_split + n_slack;
        let n_cols = n_struct + m; // one artificial per row

        // Equality rows over split + slack columns, rhs made nonnegative.
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
        let mut slack_at = n_split;
        for c in &lp.constraints {
            let mut row = vec![Rational::zero(); n_cols + 1];
            for (j, coef) in c.coeffs.iter().enumerate() {
                let (pos, negcol) = var_cols[j];
                row[pos] = coef.clone();
                if let Some(ncol) = negcol {
                    row[ncol] = -coef;
                }
            }
            match c.relation {
                Relation::Le => {
                    row[slack_at] = Rational::one();
                    slack_at += 1;
                }
                Relation::Ge => {
                    row[slack_at] = -Rational::one();
                    slack_at += 1;
                }
                Relation::Eq => {}
            }
            row[n_cols] = c.rhs.clone();
            if row[n_cols].is_negative() {
                for entry in row.iter_mut() {
                    *entry = -entry.clone();
                }
            }
            rows.push(row);
        }

        // Artificial columns form the initial basis.
        let mut basis = Vec::with_capacity(m);
        for (i, row) in rows.iter_mut().enumerate() {
            row[n_struct + i] = Rational::one();
            basis.push(n_struct + i);
        }

        // Phase-2 cost over structural columns.
        let mut cost = vec![Rational::zero(); n_struct];
        for (j, coef) in lp.objective.iter().enumerate() {
            let (pos, negcol) = var_cols[j];
            cost[pos] = coef.clone();
            if let Some(ncol) = negcol {
                cost[ncol] = -coef;
            }
        }

        // Phase-1 reduced costs: minimize the sum of artificials.
        let mut obj = vec![Rational::zero(); n_cols + 1];
        obj[n_struct..n_cols].fill(Rational::one());
        let snapshot: Vec<Vec<Rational>> = rows.clone();
        for row in &snapshot {
            for (o, r) in obj.iter_mut().zip(row) {
                *o -= r;
            }
        }

        Tableau {
            rows,
            obj,
            basis,
            n_struct,
            n_cols,
            cost,
            var_cols,
            num_orig: n,
            pivots: 0,
        }
    }

    fn run(mut self) -> LpOutcome {
        // Phase 1: drive artificial infeasibility to zero.
        if self.iterate().is_err() {
            unreachable!("phase-1 objective is bounded below by zero");
        }
        let infeasibility = -self.obj.last().unwrap().clone();
        debug_assert!(!infeasibility.is_negative());
        if infeasibility.is_positive() {
            return LpOutcome::Infeasible;
        }
        self.evict_artificials();

        // Phase 2: original objective, artificial columns removed.
        let width = self.n_struct;
        for row in &mut self.rows {
            let rhs = row.pop().unwrap();
            row.truncate(width);
            row.push(rhs);
        }
        self.n_cols = width;
        self.obj = self.cost.clone();
        self.obj.push(Rational::zero());
        let reductions: Vec<(usize, Rational)> = self
            .basis
            .iter()
            .enumerate()
            .map(|(i, &b)| (i, self.cost[b].clone()))
            .collect();
        for (i, cb) in reductions {
            if !cb.is_zero() {
                let row = self.rows[i].clone();
                for (o, r) in self.obj.iter_mut().zip(&row) {
                    *o -= &cb * r;
                }
            }
        }

        if self.iterate().is_err() {
            return LpOutcome::Unbounded;
        }

        let mut x = vec![Rational::zero(); self.n_struct];
        for (i, &b) in self.basis.iter().enumerate() {
            x[b] = self.rows[i].last().unwrap().clone();
        }
        let witness: Vec<Rational> = (0..self.num_orig)
            .map(|j| {
                let (pos, negcol) = self.var_cols[j];
                match negcol {
                    Some(ncol) => &x[pos] - &x[ncol],
                    None => x[pos].clone(),
                }
            })
            .collect();
        let value = -self.obj.last().unwrap().clone();
        LpOutcome::Optimal { value, witness }
    }

    /// Bland's rule iteration until optimal (`Ok`) or unbounded (`Err`).
    fn iterate(&mut self) -> std::result::Result<(), ()> {
        loop {
            // entering: lowest-index column with a negative reduced cost
            let Some(enter) = (0..self.n_cols).find(|&j| self.obj[j].is_negative()) else {
                return Ok(());
            };
            // leaving: minimum ratio, ties by lowest basic variable index
            let rhs_col = self.n_cols;
            let mut leave: Option<(Rational, usize)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rows[i][rhs_col] / a;
                let better = match &leave {
                    None => true,
                    Some((best, row)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*row])
                    }
                };
                if better {
                    leave = Some((ratio, i));
                }
            }
            let Some((_, pivot_row)) = leave else {
                return Err(());
            };
            self.pivot(pivot_row, enter);
        }
    }

    fn pivot(&mut self, pivot_row: usize, enter: usize) {
        self.pivots += 1;
        assert!(
            self.pivots <= PIVOT_BUDGET,
            "pivot budget exceeded; anti-cycling invariant broken"
        );
        let pivot = self.rows[pivot_row][enter].clone();
        for entry in &mut self.rows[pivot_row] {
            *entry /= &pivot;
        }
        let prow = self.rows[pivot_row].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == pivot_row || row[enter].is_zero() {
                continue;
            }
            let factor = row[enter].clone();
            for (entry, p) in row.iter_mut().zip(&prow) {
                *entry -= &factor * p;
            }
        }
        if !self.obj[enter].is_zero() {
            let factor = self.obj[enter].clone();
            for (entry, p) in self.obj.iter_mut().zip(&prow) {
                *entry -= &factor * p;
            }
        }
        self.basis[pivot_row] = enter;
    }

    /// After phase 1 at zero infeasibility, pivot artificial variables out of
    /// the basis; rows that cannot be pivoted are redundant and are dropped.
    fn evict_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < self.n_struct {
                i += 1;
                continue;
            }
            match (0..self.n_struct).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    debug_assert!(self.rows[i].last().unwrap().is_zero());
                    self.rows.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }
}
