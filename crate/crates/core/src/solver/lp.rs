//! Dense two-phase simplex over exact rationals.
//!
//! Solves `maximize c·x` subject to linear rows and `x ≥ 0`. Bland's rule
//! keeps pivoting finite under degeneracy.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Sparse coefficients, relation and right-hand side.
type SparseRow = (Vec<(usize, Rational)>, RowKind, Rational);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Row {
    /// Sparse coefficients `(variable, value)`.
    pub coeffs: Vec<(usize, Rational)>,
    pub kind: RowKind,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Unbounded,
    Infeasible,
}

#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<(usize, Rational)>,
    pub rows: Vec<Row>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn add_row(&mut self, coeffs: Vec<(usize, Rational)>, kind: RowKind, rhs: Rational) {
        self.rows.push(Row { coeffs, kind, rhs });
    }

    pub fn maximize(&mut self, objective: Vec<(usize, Rational)>) {
        self.objective = objective;
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).solve(self)
    }
}

/// Column layout: structural vars, then one slack/surplus per inequality
/// row, then one artificial per row that needs it, then the rhs column.
struct Tableau {
    m: usize,
    cols: usize,
    artificial_start: usize,
    a: Vec<Vec<Rational>>,
    basis: Vec<usize>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let m = lp.rows.len();
        let n = lp.num_vars;
        let slacks = lp.rows.iter().filter(|r| r.kind != RowKind::Eq).count();
        // Normalize to non-negative rhs first so we know which rows need artificials.
        let mut norm: Vec<SparseRow> = lp
            .rows
            .iter()
            .map(|r| {
                if r.rhs.is_negative() {
                    let kind = match r.kind {
                        RowKind::Le => RowKind::Ge,
                        RowKind::Ge => RowKind::Le,
                        RowKind::Eq => RowKind::Eq,
                    };
                    (r.coeffs.iter().map(|(j, v)| (*j, -v)).collect(), kind, -&r.rhs)
                } else {
                    (r.coeffs.clone(), r.kind, r.rhs.clone())
                }
            })
            .collect();
        let artificials = norm.iter().filter(|(_, k, _)| *k != RowKind::Le).count();
        let artificial_start = n + slacks;
        let cols = artificial_start + artificials;
        let mut a = vec![vec![Rational::zero(); cols + 1]; m];
        let mut basis = vec![0; m];
        let (mut s, mut art) = (n, artificial_start);
        for (i, (coeffs, kind, rhs)) in norm.iter_mut().enumerate() {
            for (j, v) in coeffs.iter() {
                a[i][*j] += v;
            }
            a[i][cols] = rhs.clone();
            match kind {
                RowKind::Le => {
                    a[i][s] = Rational::one();
                    basis[i] = s;
                    s += 1;
                }
                RowKind::Ge => {
                    a[i][s] = -Rational::one();
                    s += 1;
                    a[i][art] = Rational::one();
                    basis[i] = art;
                    art += 1;
                }
                RowKind::Eq => {
                    a[i][art] = Rational::one();
                    basis[i] = art;
                    art += 1;
                }
            }
        }
        Tableau {
            m,
            cols,
            artificial_start,
            a,
            basis,
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.a[row][col].clone();
        if !p.is_one() {
            for v in self.a[row].iter_mut() {
                *v /= &p;
            }
        }
        let pivot_row = self.a[row].clone();
        for (i, r) in self.a.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (v, pv) in r.iter_mut().zip(pivot_row.iter()) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Reduced costs for maximizing `obj` over the allowed columns; returns
    /// whether an improving column exists after iterating to optimality.
    fn optimize(&mut self, obj: &[Rational], allowed: usize) -> bool {
        loop {
            // reduced cost d_j = c_j - c_B · column_j
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut d = obj[j].clone();
                for i in 0..self.m {
                    let cb = &obj[self.basis[i]];
                    if !cb.is_zero() && !self.a[i][j].is_zero() {
                        d -= cb * &self.a[i][j];
                    }
                }
                if d.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(col) = entering else { return true };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.m {
                let coef = &self.a[i][col];
                if coef.is_positive() {
                    let ratio = &self.a[i][self.cols] / coef;
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((row, _)) => self.pivot(row, col),
                None => return false,
            }
        }
    }

    fn solve(mut self, lp: &LinearProgram) -> LpOutcome {
        let total = self.cols;
        // Phase 1: maximize -(sum of artificials).
        if self.artificial_start < total {
            let mut obj = vec![Rational::zero(); total];
            for v in obj.iter_mut().skip(self.artificial_start) {
                *v = -Rational::one();
            }
            self.optimize(&obj, total);
            let infeasibility: Rational = (0..self.m)
                .filter(|&i| self.basis[i] >= self.artificial_start)
                .map(|i| self.a[i][self.cols].clone())
                .sum();
            if !infeasibility.is_zero() {
                return LpOutcome::Infeasible;
            }
            // Drive remaining zero-level artificials out of the basis.
            for i in 0..self.m {
                if self.basis[i] >= self.artificial_start {
                    if let Some(j) = (0..self.artificial_start).find(|&j| !self.a[i][j].is_zero()) {
                        self.pivot(i, j);
                    }
                }
            }
        }
        // Phase 2 over non-artificial columns; redundant rows keep a zero artificial.
        let mut obj = vec![Rational::zero(); total];
        for (j, v) in &lp.objective {
            obj[*j] += v;
        }
        if !self.optimize(&obj, self.artificial_start) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Rational::zero(); lp.num_vars];
        for i in 0..self.m {
            if self.basis[i] < lp.num_vars {
                x[self.basis[i]] = self.a[i][self.cols].clone();
            }
        }
        let value = lp.objective.iter().map(|(j, v)| v * &x[*j]).sum();
        LpOutcome::Optimal { value, x }
    }
}
