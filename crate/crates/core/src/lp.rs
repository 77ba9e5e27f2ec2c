//! Exact rational linear programming: a two-phase tableau simplex with
//! Bland's rule. Small and slow by design; every polyhedral predicate in
//! this crate reduces to it, so correctness beats speed.

use crate::Rat;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rat, point: Vec<Rat> },
}

struct Tableau {
    rows: Vec<Vec<Rat>>, // coefficients, last entry is the rhs
    basis: Vec<usize>,
    ncols: usize, // structural + artificial columns, excluding rhs
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.rows[r][c].clone();
        debug_assert!(!piv.is_zero());
        for x in self.rows[r].iter_mut() {
            *x = &*x / &piv;
        }
        for i in 0..self.rows.len() {
            if i != r && !self.rows[i][c].is_zero() {
                let f = self.rows[i][c].clone();
                for j in 0..=self.ncols {
                    let t = &self.rows[r][j] * &f;
                    self.rows[i][j] = &self.rows[i][j] - t;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs Bland-rule simplex maximizing `obj` over columns < `allowed`.
    /// Returns false when unbounded.
    fn optimize(&mut self, obj: &[Rat], allowed: usize) -> bool {
        loop {
            // Reduced costs: obj[c] - sum over rows of obj[basis] * row.
            let mut entering = None;
            for c in 0..allowed {
                if self.basis.contains(&c) {
                    continue;
                }
                let mut red = obj[c].clone();
                for (r, &b) in self.basis.iter().enumerate() {
                    if !obj[b].is_zero() && !self.rows[r][c].is_zero() {
                        let t = &obj[b] * &self.rows[r][c];
                        red = red - t;
                    }
                }
                if red.is_positive() {
                    entering = Some(c);
                    break;
                }
            }
            let Some(c) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for r in 0..self.rows.len() {
                if self.rows[r][c].is_positive() {
                    let ratio = &self.rows[r][self.ncols] / &self.rows[r][c];
                    let better = match &leave {
                        None => true,
                        Some((lr, lratio)) => {
                            ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, c);
        }
    }

    fn objective_value(&self, obj: &[Rat]) -> Rat {
        self.basis
            .iter()
            .enumerate()
            .map(|(r, &b)| &obj[b] * &self.rows[r][self.ncols])
            .sum()
    }
}

/// Maximizes `objective · x` over `{x | a·x >= b for (a,b) in ge, e·x = f
/// for (e,f) in eq}` with free variables.
pub fn maximize(
    n: usize,
    objective: &[Rat],
    ge: &[(Vec<Rat>, Rat)],
    eq: &[(Vec<Rat>, Rat)],
) -> LpOutcome {
    debug_assert_eq!(objective.len(), n);
    let m = ge.len();
    let k = eq.len();
    let nrows = m + k;
    // Structural columns: u (n), w (n) with x = u - w, then slacks (m).
    let nstruct = 2 * n + m;
    let ncols = nstruct + nrows;
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(nrows);
    let build_row = |a: &[Rat], b: &Rat, slack: Option<usize>| -> Vec<Rat> {
        let mut row = vec![Rat::zero(); ncols + 1];
        for j in 0..n {
            row[j] = a[j].clone();
            row[n + j] = -a[j].clone();
        }
        if let Some(s) = slack {
            row[2 * n + s] = -Rat::one();
        }
        row[ncols] = b.clone();
        row
    };
    for (i, (a, b)) in ge.iter().enumerate() {
        rows.push(build_row(a, b, Some(i)));
    }
    for (e, f) in eq {
        rows.push(build_row(e, f, None));
    }
    let mut basis = Vec::with_capacity(nrows);
    for (r, row) in rows.iter_mut().enumerate() {
        if row[ncols].is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
        row[nstruct + r] = Rat::one();
        basis.push(nstruct + r);
    }
    let mut t = Tableau { rows, basis, ncols };

    // Phase one: maximize minus the sum of artificials.
    let mut phase1 = vec![Rat::zero(); ncols];
    for c in nstruct..ncols {
        phase1[c] = -Rat::one();
    }
    let ok = t.optimize(&phase1, ncols);
    debug_assert!(ok, "phase one is always bounded");
    if !t.objective_value(&phase1).is_zero() {
        return LpOutcome::Infeasible;
    }
    // Remove artificials from the basis; drop rows that became redundant.
    let mut r = 0;
    while r < t.basis.len() {
        if t.basis[r] >= nstruct {
            if let Some(c) = (0..nstruct).find(|&c| !t.rows[r][c].is_zero()) {
                t.pivot(r, c);
            } else {
                t.rows.remove(r);
                t.basis.remove(r);
                continue;
            }
        }
        r += 1;
    }

    // Phase two over structural columns only.
    let mut obj = vec![Rat::zero(); ncols];
    for j in 0..n {
        obj[j] = objective[j].clone();
        obj[n + j] = -objective[j].clone();
    }
    if !t.optimize(&obj, nstruct) {
        return LpOutcome::Unbounded;
    }
    let mut point = vec![Rat::zero(); n];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < n {
            point[b] = &point[b] + &t.rows[r][t.ncols];
        } else if b < 2 * n {
            point[b - n] = &point[b - n] - &t.rows[r][t.ncols];
        }
    }
    LpOutcome::Optimal { value: t.objective_value(&obj), point }
}

/// A point of the constraint set, if one exists.
pub fn feasible_point(n: usize, ge: &[(Vec<Rat>, Rat)], eq: &[(Vec<Rat>, Rat)]) -> Option<Vec<Rat>> {
    match maximize(n, &vec![Rat::zero(); n], ge, eq) {
        LpOutcome::Optimal { point, .. } => Some(point),
        LpOutcome::Unbounded => unreachable!("zero objective cannot be unbounded"),
        LpOutcome::Infeasible => None,
    }
}
