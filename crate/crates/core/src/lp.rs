//! Exact rational linear programming.
//!
//! Dense two-phase simplex over `BigRational` with Bland's anti-cycling rule.
//! Sizes in this crate are tiny (tens of rows), so the tableau is recomputed
//! naively and nothing is cached between solves.

use num_traits::{Signed, Zero};

use crate::number::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `minimize objective · x` subject to the constraints. Variables are
/// nonnegative unless marked free.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    num_vars: usize,
    free: Vec<bool>,
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { point: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }

    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            free: vec![false; num_vars],
            objective: vec![Rational::zero(); num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn set_free(&mut self, var: usize) -> &mut Self {
        self.free[var] = true;
        self
    }

    pub fn set_all_free(&mut self) -> &mut Self {
        self.free.iter_mut().for_each(|f| *f = true);
        self
    }

    pub fn minimize(&mut self, objective: Vec<Rational>) -> &mut Self {
        assert_eq!(objective.len(), self.num_vars);
        self.objective = objective;
        self
    }

    pub fn constrain(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars);
        self.constraints.push(Constraint { coeffs, relation, rhs });
        self
    }

    pub fn solve(&self) -> LpOutcome {
        Simplex::build(self).run(self)
    }
}

struct Simplex {
    rows: Vec<Vec<Rational>>, // each row: structural + slack + artificial columns, then rhs
    basis: Vec<usize>,
    num_structural: usize,
    num_real: usize, // structural + slack; artificial columns follow
    // structural column -> (variable, sign)
    column_var: Vec<(usize, bool)>,
}

impl Simplex {
    fn build(lp: &LinearProgram) -> Self {
        let mut column_var = Vec::new();
        for v in 0..lp.num_vars {
            column_var.push((v, true));
            if lp.free[v] {
                column_var.push((v, false));
            }
        }
        let num_structural = column_var.len();
        let num_slack = lp
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        let num_real = num_structural + num_slack;
        let m = lp.constraints.len();
        let width = num_real + m + 1;

        let mut rows = Vec::with_capacity(m);
        let mut slack = num_structural;
        for (i, c) in lp.constraints.iter().enumerate() {
            let mut row = vec![Rational::zero(); width];
            for (col, &(v, positive)) in column_var.iter().enumerate() {
                row[col] = if positive { c.coeffs[v].clone() } else { -c.coeffs[v].clone() };
            }
            match c.relation {
                Relation::Le => {
                    row[slack] = Rational::from_integer(1.into());
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = Rational::from_integer((-1).into());
                    slack += 1;
                }
                Relation::Eq => {}
            }
            row[width - 1] = c.rhs.clone();
            if c.rhs.is_negative() {
                row.iter_mut().for_each(|x| *x = -x.clone());
            }
            row[num_real + i] = Rational::from_integer(1.into());
            rows.push(row);
        }
        let basis = (0..m).map(|i| num_real + i).collect();
        Simplex {
            rows,
            basis,
            num_structural,
            num_real,
            column_var,
        }
    }

    fn rhs(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len() - 1)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        self.rows[r].iter_mut().for_each(|x| *x = &*x / &p);
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs the simplex loop for `cost` over columns `< allowed`.
    /// Returns false when unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut d = cost[j].clone();
                for (i, row) in self.rows.iter().enumerate() {
                    if !row[j].is_zero() {
                        d -= &cost[self.basis[i]] * &row[j];
                    }
                }
                d.is_negative()
            });
            let Some(j) = entering else { return true };
            let rhs = self.rhs();
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[j].is_positive() {
                    let ratio = &row[rhs] / &row[j];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, j),
                None => return false,
            }
        }
    }

    fn objective_value(&self, cost: &[Rational]) -> Rational {
        let rhs = self.rhs();
        self.rows
            .iter()
            .zip(&self.basis)
            .map(|(row, &b)| &cost[b] * &row[rhs])
            .sum()
    }

    fn run(mut self, lp: &LinearProgram) -> LpOutcome {
        let m = self.rows.len();
        let total = self.num_real + m;
        if m > 0 {
            let mut phase1 = vec![Rational::zero(); total];
            phase1[self.num_real..].iter_mut().for_each(|c| *c = Rational::from_integer(1.into()));
            self.optimize(&phase1, total);
            if self.objective_value(&phase1).is_positive() {
                return LpOutcome::Infeasible;
            }
            // Drive remaining artificial columns out of the basis, dropping redundant rows.
            let mut i = 0;
            while i < self.rows.len() {
                if self.basis[i] >= self.num_real {
                    match (0..self.num_real).find(|&j| !self.rows[i][j].is_zero()) {
                        Some(j) => self.pivot(i, j),
                        None => {
                            self.rows.remove(i);
                            self.basis.remove(i);
                            continue;
                        }
                    }
                }
                i += 1;
            }
        }

        let mut cost = vec![Rational::zero(); total];
        for (col, &(v, positive)) in self.column_var.iter().enumerate() {
            cost[col] = if positive { lp.objective[v].clone() } else { -lp.objective[v].clone() };
        }
        if !self.optimize(&cost, self.num_real) {
            return LpOutcome::Unbounded;
        }

        let rhs = self.rhs();
        let mut point = vec![Rational::zero(); lp.num_vars];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.num_structural {
                let (v, positive) = self.column_var[b];
                if positive {
                    point[v] += &self.rows[i][rhs];
                } else {
                    point[v] -= &self.rows[i][rhs];
                }
            }
        }
        let value = point
            .iter()
            .zip(&lp.objective)
            .map(|(x, c)| x * c)
            .sum();
        LpOutcome::Optimal { point, value }
    }
}
