//! Exact linear programming over arbitrary-precision rationals.
//!
//! The problems this crate produces are tiny (at most a few dozen variables)
//! but their optima must be known exactly, since downstream tests compare
//! them against integer powers of q.  A dense two-phase simplex with Bland's
//! rule does the job: no tolerances, no cycling, and a status that is
//! definitive rather than numerical.

use crate::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        }
    }
}

/// One linear constraint: `row . x REL rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub row: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

/// Domain of a single variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarBound {
    /// x >= the given constant (the default is zero).
    AtLeast(BigRational),
    /// Unrestricted in sign.
    Free,
}

impl VarBound {
    pub fn zero() -> VarBound {
        VarBound::AtLeast(BigRational::zero())
    }
}

/// A validated linear program.  Rows, the objective, and the bounds vector
/// all share one length; construction rejects anything ragged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    sense: Sense,
    objective: Vec<BigRational>,
    constraints: Vec<Constraint>,
    bounds: Vec<VarBound>,
}

impl LinearProgram {
    pub fn new(
        sense: Sense,
        objective: Vec<BigRational>,
        constraints: Vec<Constraint>,
        bounds: Vec<VarBound>,
    ) -> Result<LinearProgram> {
        if objective.is_empty() {
            return Err(Error::MalformedProgram(
                "a program needs at least one variable".to_string(),
            ));
        }
        if bounds.len() != objective.len() {
            return Err(Error::MalformedProgram(format!(
                "{} bounds for {} variables",
                bounds.len(),
                objective.len()
            )));
        }
        for (i, c) in constraints.iter().enumerate() {
            if c.row.len() != objective.len() {
                return Err(Error::MalformedProgram(format!(
                    "constraint {i} has {} coefficients, expected {}",
                    c.row.len(),
                    objective.len()
                )));
            }
        }
        Ok(LinearProgram {
            sense,
            objective,
            constraints,
            bounds,
        })
    }

    /// Convenience constructor with every variable bounded below by zero.
    pub fn nonneg(
        sense: Sense,
        objective: Vec<BigRational>,
        constraints: Vec<Constraint>,
    ) -> Result<LinearProgram> {
        let bounds = vec![VarBound::zero(); objective.len()];
        LinearProgram::new(sense, objective, constraints, bounds)
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn objective(&self) -> &[BigRational] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Deterministic plain-text rendering with exact rational coefficients.
    pub fn dump(&self) -> String {
        fn term(buf: &mut String, first: &mut bool, coeff: &BigRational, var: usize) {
            if coeff.is_zero() {
                return;
            }
            if *first {
                if coeff.is_negative() {
                    buf.push_str("- ");
                }
            } else if coeff.is_negative() {
                buf.push_str(" - ");
            } else {
                buf.push_str(" + ");
            }
            *first = false;
            let mag = coeff.abs();
            let _ = write!(buf, "{mag} x{var}");
        }

        let mut out = String::new();
        out.push_str(match self.sense {
            Sense::Minimize => "minimize ",
            Sense::Maximize => "maximize ",
        });
        let mut first = true;
        for (i, c) in self.objective.iter().enumerate() {
            term(&mut out, &mut first, c, i);
        }
        if first {
            out.push('0');
        }
        out.push_str("\nsubject to\n");
        for (idx, c) in self.constraints.iter().enumerate() {
            let _ = write!(out, "  r{idx}: ");
            let mut first = true;
            for (i, coeff) in c.row.iter().enumerate() {
                term(&mut out, &mut first, coeff, i);
            }
            if first {
                out.push('0');
            }
            let _ = writeln!(out, " {} {}", c.relation.symbol(), c.rhs);
        }
        for (i, b) in self.bounds.iter().enumerate() {
            match b {
                VarBound::AtLeast(l) => {
                    let _ = writeln!(out, "  x{i} >= {l}");
                }
                VarBound::Free => {
                    let _ = writeln!(out, "  x{i} free");
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Outcome of a solve.  `value` and `assignment` are present exactly when
/// the status is optimal; `basis` names the final basic columns of the
/// internal standard-form tableau as a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: Option<BigRational>,
    pub assignment: Option<Vec<BigRational>>,
    pub basis: Option<Vec<String>>,
}

impl LpSolution {
    fn of_status(status: LpStatus) -> LpSolution {
        LpSolution {
            status,
            value: None,
            assignment: None,
            basis: None,
        }
    }
}

/// How an original variable maps into standard-form columns.
enum VarMap {
    Shifted { col: usize, lower: BigRational },
    Split { plus: usize, minus: usize },
}

struct Tableau {
    /// m rows by (ncols + 1) entries; the last entry of each row is the rhs.
    rows: Vec<Vec<BigRational>>,
    /// Reduced-cost row, same width; its rhs cell holds minus the objective.
    cost: Vec<BigRational>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, e: usize) {
        let inv = self.rows[r][e].clone().recip();
        for cell in self.rows[r].iter_mut() {
            *cell = &*cell * &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[e].is_zero() {
                continue;
            }
            let f = row[e].clone();
            for (cell, p) in row.iter_mut().zip(&pivot_row) {
                *cell = &*cell - &f * p;
            }
        }
        if !self.cost[e].is_zero() {
            let f = self.cost[e].clone();
            for (cell, p) in self.cost.iter_mut().zip(&pivot_row) {
                *cell = &*cell - &f * p;
            }
        }
        self.basis[r] = e;
    }

    /// Bland's rule iteration until no reduced cost is negative.  Columns at
    /// or past `col_limit` are never entered (used to freeze artificials).
    /// Returns false when an entering column proves the program unbounded.
    fn run_simplex(&mut self, col_limit: usize) -> bool {
        loop {
            let entering = (0..col_limit).find(|&j| self.cost[j].is_negative());
            let Some(e) = entering else {
                return true;
            };
            let mut leave: Option<usize> = None;
            for r in 0..self.rows.len() {
                if !self.rows[r][e].is_positive() {
                    continue;
                }
                let better = match leave {
                    None => true,
                    Some(cur) => {
                        let lhs = &self.rows[r][self.ncols] * &self.rows[cur][e];
                        let rhs = &self.rows[cur][self.ncols] * &self.rows[r][e];
                        match lhs.cmp(&rhs) {
                            std::cmp::Ordering::Less => true,
                            std::cmp::Ordering::Greater => false,
                            std::cmp::Ordering::Equal => self.basis[r] < self.basis[cur],
                        }
                    }
                };
                if better {
                    leave = Some(r);
                }
            }
            match leave {
                Some(r) => self.pivot(r, e),
                None => return false,
            }
        }
    }
}

/// Two-phase exact simplex.  Free variables split into differences of
/// nonnegative parts, shifted lower bounds substitute out, and the returned
/// assignment is re-checked against every original constraint before the
/// solution leaves this function.
pub fn solve(lp: &LinearProgram) -> LpSolution {
    let nvars = lp.num_vars();

    // Standard-form columns: structural expansions first, then one slack or
    // surplus per inequality, then artificials.
    let mut maps = Vec::with_capacity(nvars);
    let mut col_names = Vec::new();
    for (i, b) in lp.bounds.iter().enumerate() {
        match b {
            VarBound::AtLeast(l) => {
                maps.push(VarMap::Shifted {
                    col: col_names.len(),
                    lower: l.clone(),
                });
                col_names.push(format!("x{i}"));
            }
            VarBound::Free => {
                let plus = col_names.len();
                col_names.push(format!("x{i}+"));
                col_names.push(format!("x{i}-"));
                maps.push(VarMap::Split {
                    plus,
                    minus: plus + 1,
                });
            }
        }
    }
    let structural = col_names.len();
    for (idx, c) in lp.constraints.iter().enumerate() {
        match c.relation {
            Relation::Le => col_names.push(format!("slack{idx}")),
            Relation::Ge => col_names.push(format!("surplus{idx}")),
            Relation::Eq => {}
        }
    }
    let with_slacks = col_names.len();
    let m = lp.constraints.len();
    let ncols = with_slacks + m;
    for idx in 0..m {
        col_names.push(format!("art{idx}"));
    }

    // Minimization costs over structural columns, with the sign flip for
    // maximization and the constant from shifted lower bounds tracked apart.
    let mut cost_structural = vec![BigRational::zero(); structural];
    let mut shift_constant = BigRational::zero();
    for (i, map) in maps.iter().enumerate() {
        let c = match lp.sense {
            Sense::Minimize => lp.objective[i].clone(),
            Sense::Maximize => -lp.objective[i].clone(),
        };
        match map {
            VarMap::Shifted { col, lower } => {
                shift_constant += &c * lower;
                cost_structural[*col] = c;
            }
            VarMap::Split { plus, minus } => {
                cost_structural[*plus] = c.clone();
                cost_structural[*minus] = -c;
            }
        }
    }

    let mut rows = Vec::with_capacity(m);
    let mut slack_cursor = structural;
    for (idx, c) in lp.constraints.iter().enumerate() {
        let mut row = vec![BigRational::zero(); ncols + 1];
        let mut rhs = c.rhs.clone();
        for (i, coeff) in c.row.iter().enumerate() {
            match &maps[i] {
                VarMap::Shifted { col, lower } => {
                    row[*col] = &row[*col] + coeff;
                    rhs -= coeff * lower;
                }
                VarMap::Split { plus, minus } => {
                    row[*plus] = &row[*plus] + coeff;
                    row[*minus] = &row[*minus] - coeff;
                }
            }
        }
        match c.relation {
            Relation::Le => {
                row[slack_cursor] = BigRational::one();
                slack_cursor += 1;
            }
            Relation::Ge => {
                row[slack_cursor] = -BigRational::one();
                slack_cursor += 1;
            }
            Relation::Eq => {}
        }
        if rhs.is_negative() {
            for cell in row.iter_mut() {
                *cell = -std::mem::take(cell);
            }
            rhs = -rhs;
        }
        row[with_slacks + idx] = BigRational::one();
        row[ncols] = rhs;
        rows.push(row);
    }

    // Phase one: minimize the sum of artificials, starting from the
    // all-artificial basis, whose reduced costs are column sums negated.
    let mut cost = vec![BigRational::zero(); ncols + 1];
    for j in 0..=ncols {
        if (with_slacks..ncols).contains(&j) {
            continue;
        }
        let mut s = BigRational::zero();
        for row in &rows {
            s += &row[j];
        }
        cost[j] = -s;
    }
    let basis: Vec<usize> = (0..m).map(|idx| with_slacks + idx).collect();
    let mut t = Tableau {
        rows,
        cost,
        basis,
        ncols,
    };
    let finished = t.run_simplex(with_slacks);
    assert!(finished, "phase one is bounded below by zero");
    if t.cost[ncols].is_negative() {
        return LpSolution::of_status(LpStatus::Infeasible);
    }

    // Drive any artificial still basic out of the basis, dropping rows that
    // turn out to be redundant.
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] < with_slacks {
            r += 1;
            continue;
        }
        match (0..with_slacks).find(|&j| !t.rows[r][j].is_zero()) {
            Some(j) => {
                t.pivot(r, j);
                r += 1;
            }
            None => {
                t.rows.remove(r);
                t.basis.remove(r);
            }
        }
    }

    // Phase two: real reduced costs relative to the current basis.
    let mut cost = vec![BigRational::zero(); ncols + 1];
    cost[..structural].clone_from_slice(&cost_structural);
    for (r, &b) in t.basis.iter().enumerate() {
        let cb = if b < structural {
            cost_structural[b].clone()
        } else {
            BigRational::zero()
        };
        if cb.is_zero() {
            continue;
        }
        let row = t.rows[r].clone();
        for (cell, p) in cost.iter_mut().zip(&row) {
            *cell = &*cell - &cb * p;
        }
    }
    t.cost = cost;
    if !t.run_simplex(with_slacks) {
        return LpSolution::of_status(LpStatus::Unbounded);
    }

    // Read the standard-form point off the basis, then fold shifts and
    // splits back into original coordinates.
    let mut point = vec![BigRational::zero(); ncols];
    for (r, &b) in t.basis.iter().enumerate() {
        point[b] = t.rows[r][t.ncols].clone();
    }
    let assignment: Vec<BigRational> = maps
        .iter()
        .map(|map| match map {
            VarMap::Shifted { col, lower } => lower + &point[*col],
            VarMap::Split { plus, minus } => &point[*plus] - &point[*minus],
        })
        .collect();

    let mut value = BigRational::zero();
    for (c, x) in lp.objective.iter().zip(&assignment) {
        value += c * x;
    }
    let internal = match lp.sense {
        Sense::Minimize => value.clone(),
        Sense::Maximize => -value.clone(),
    };
    assert_eq!(
        internal,
        shift_constant + -t.cost[ncols].clone(),
        "tableau objective must match the recomputed one"
    );
    for (idx, c) in lp.constraints.iter().enumerate() {
        let mut lhs = BigRational::zero();
        for (coeff, x) in c.row.iter().zip(&assignment) {
            lhs += coeff * x;
        }
        let ok = match c.relation {
            Relation::Le => lhs <= c.rhs,
            Relation::Eq => lhs == c.rhs,
            Relation::Ge => lhs >= c.rhs,
        };
        assert!(ok, "optimal point violates constraint {idx}");
    }
    for (b, x) in lp.bounds.iter().zip(&assignment) {
        if let VarBound::AtLeast(l) = b {
            assert!(x >= l, "optimal point violates a variable bound");
        }
    }

    let basis_names = t.basis.iter().map(|&b| col_names[b].clone()).collect();
    LpSolution {
        status: LpStatus::Optimal,
        value: Some(value),
        assignment: Some(assignment),
        basis: Some(basis_names),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ratf(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn le(row: Vec<BigRational>, rhs: BigRational) -> Constraint {
        Constraint {
            row,
            relation: Relation::Le,
            rhs,
        }
    }

    #[test]
    fn one_variable_cases() {
        let lp = LinearProgram::nonneg(
            Sense::Maximize,
            vec![rat(1)],
            vec![le(vec![rat(1)], rat(3))],
        )
        .unwrap();
        let sol = solve(&lp);
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.value.unwrap(), rat(3));
        assert_eq!(sol.assignment.unwrap(), vec![rat(3)]);

        let unbounded = LinearProgram::nonneg(Sense::Maximize, vec![rat(1)], vec![]).unwrap();
        assert_eq!(solve(&unbounded).status, LpStatus::Unbounded);

        let infeasible = LinearProgram::nonneg(
            Sense::Maximize,
            vec![rat(1), rat(1)],
            vec![
                le(vec![rat(1), rat(1)], rat(1)),
                Constraint {
                    row: vec![rat(1), rat(0)],
                    relation: Relation::Ge,
                    rhs: rat(2),
                },
            ],
        )
        .unwrap();
        assert_eq!(solve(&infeasible).status, LpStatus::Infeasible);
    }

    #[test]
    fn rejects_ragged_input() {
        let bad = LinearProgram::nonneg(
            Sense::Minimize,
            vec![rat(1), rat(2)],
            vec![le(vec![rat(1)], rat(3))],
        );
        assert!(matches!(bad, Err(Error::MalformedProgram(_))));
        assert!(LinearProgram::nonneg(Sense::Minimize, vec![], vec![]).is_err());
        assert!(LinearProgram::new(
            Sense::Minimize,
            vec![rat(1)],
            vec![],
            vec![VarBound::zero(), VarBound::Free]
        )
        .is_err());
    }

    #[test]
    fn equality_and_free_variables() {
        // minimize y with y free and y = -7/2.
        let lp = LinearProgram::new(
            Sense::Minimize,
            vec![rat(1)],
            vec![Constraint {
                row: vec![rat(1)],
                relation: Relation::Eq,
                rhs: ratf(-7, 2),
            }],
            vec![VarBound::Free],
        )
        .unwrap();
        let sol = solve(&lp);
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.value.unwrap(), ratf(-7, 2));
        assert_eq!(sol.assignment.unwrap(), vec![ratf(-7, 2)]);
    }

    #[test]
    fn shifted_lower_bounds() {
        // minimize x + y with x >= 5/3 and x + y >= 4.
        let lp = LinearProgram::new(
            Sense::Minimize,
            vec![rat(1), rat(1)],
            vec![Constraint {
                row: vec![rat(1), rat(1)],
                relation: Relation::Ge,
                rhs: rat(4),
            }],
            vec![VarBound::AtLeast(ratf(5, 3)), VarBound::zero()],
        )
        .unwrap();
        let sol = solve(&lp);
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.value.unwrap(), rat(4));
    }

    #[test]
    fn degenerate_and_redundant_rows() {
        // The duplicated equality makes one artificial row redundant.
        let lp = LinearProgram::nonneg(
            Sense::Maximize,
            vec![rat(2), rat(3)],
            vec![
                Constraint {
                    row: vec![rat(1), rat(1)],
                    relation: Relation::Eq,
                    rhs: rat(2),
                },
                Constraint {
                    row: vec![rat(2), rat(2)],
                    relation: Relation::Eq,
                    rhs: rat(4),
                },
                le(vec![rat(0), rat(1)], rat(2)),
            ],
        )
        .unwrap();
        let sol = solve(&lp);
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.value.unwrap(), rat(6));
        assert_eq!(sol.assignment.unwrap(), vec![rat(0), rat(2)]);
    }

    #[test]
    fn dump_is_deterministic_and_exact() {
        let lp = LinearProgram::new(
            Sense::Minimize,
            vec![ratf(1, 2), rat(-3), rat(0)],
            vec![Constraint {
                row: vec![rat(1), ratf(-2, 5), rat(0)],
                relation: Relation::Ge,
                rhs: ratf(7, 3),
            }],
            vec![VarBound::zero(), VarBound::Free, VarBound::zero()],
        )
        .unwrap();
        let text = lp.dump();
        assert_eq!(
            text,
            "minimize 1/2 x0 - 3 x1\nsubject to\n  r0: 1 x0 - 2/5 x1 >= 7/3\n  x0 >= 0\n  x1 free\n  x2 >= 0\n"
        );
        assert_eq!(text, lp.dump());
    }

    #[test]
    fn identical_input_identical_solution() {
        let lp = LinearProgram::nonneg(
            Sense::Maximize,
            vec![rat(1), rat(1), rat(1)],
            vec![
                le(vec![rat(1), rat(2), rat(0)], rat(4)),
                le(vec![rat(0), rat(1), rat(3)], rat(6)),
                le(vec![rat(1), rat(0), rat(1)], rat(3)),
            ],
        )
        .unwrap();
        let first = solve(&lp);
        for _ in 0..5 {
            assert_eq!(solve(&lp), first);
        }
    }

    proptest! {
        /// Box programs with a planted optimum: maximize the coordinate sum
        /// under per-coordinate caps plus redundant nonnegative combinations
        /// that pass through or above the planted corner.
        #[test]
        fn recovers_planted_box_optima(
            corner in proptest::collection::vec((0i64..40, 1i64..6), 1..5),
            extra in proptest::collection::vec(
                (proptest::collection::vec(0i64..4, 5), 0i64..10),
                0..4
            ),
        ) {
            let v: Vec<BigRational> = corner.iter().map(|&(n, d)| ratf(n, d)).collect();
            let k = v.len();
            let mut cons = Vec::new();
            for (i, vi) in v.iter().enumerate() {
                let mut row = vec![rat(0); k];
                row[i] = rat(1);
                cons.push(le(row, vi.clone()));
            }
            for (coeffs, slack) in &extra {
                let row: Vec<BigRational> = coeffs[..k].iter().map(|&c| rat(c)).collect();
                let mut rhs = rat(*slack);
                for (c, vi) in row.iter().zip(&v) {
                    rhs += c * vi;
                }
                cons.push(le(row, rhs));
            }
            let lp = LinearProgram::nonneg(Sense::Maximize, vec![rat(1); k], cons).unwrap();
            let sol = solve(&lp);
            prop_assert_eq!(sol.status, LpStatus::Optimal);
            let expect: BigRational = v.iter().sum();
            prop_assert_eq!(sol.value.unwrap(), expect);
            prop_assert_eq!(sol.assignment.unwrap(), v);
        }
    }
}
