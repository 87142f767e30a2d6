//! Exact two-phase simplex for small dense linear programs.
//!
//! Bland's rule throughout, so the method terminates without cycling. All
//! arithmetic is rational; there is no tolerance anywhere.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::rational::{zero, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Le,
    Ge,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coefficients: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `maximize objective · x` subject to the constraints and `x >= 0`.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].recip();
        for x in self.rows[row].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rhs[row] *= &inv;
        let pivot_row = self.rows[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        for r in 0..self.rows.len() {
            if r == row || self.rows[r][col].is_zero() {
                continue;
            }
            let factor = self.rows[r][col].clone();
            for (x, p) in self.rows[r].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= p * &factor;
                }
            }
            self.rhs[r] -= &pivot_rhs * &factor;
        }
        self.basis[row] = col;
    }

    /// Minimizes `cost · x` over columns where `allowed` holds.
    /// Returns false if unbounded.
    fn minimize(&mut self, cost: &[Rational], allowed: &dyn Fn(usize) -> bool) -> bool {
        let width = cost.len();
        loop {
            let entering = (0..width).filter(|&j| allowed(j)).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut reduced = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        reduced -= &cost[b] * &self.rows[i][j];
                    }
                }
                reduced.is_negative()
            });
            let Some(col) = entering else { return true };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((row, _)) = best else { return false };
            self.pivot(row, col);
        }
    }
}

impl LinearProgram {
    pub fn solve(&self) -> LpOutcome {
        let n = self.objective.len();
        let m = self.constraints.len();
        let slack_count = self.constraints.iter().filter(|c| c.relation != Relation::Eq).count();
        let width = n + slack_count + m; // structural | slack | artificial
        let first_artificial = n + slack_count;

        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut slack = n;
        for (i, c) in self.constraints.iter().enumerate() {
            assert_eq!(c.coefficients.len(), n, "constraint width");
            let mut row = vec![zero(); width];
            row[..n].clone_from_slice(&c.coefficients);
            match c.relation {
                Relation::Eq => {}
                Relation::Le => {
                    row[slack] = Rational::from_integer(1.into());
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = Rational::from_integer((-1).into());
                    slack += 1;
                }
            }
            let mut b = c.rhs.clone();
            if b.is_negative() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
                b = -b;
            }
            row[first_artificial + i] = Rational::from_integer(1.into());
            rows.push(row);
            rhs.push(b);
        }
        let mut t = Tableau { rows, rhs, basis: (first_artificial..width).collect() };

        let mut phase1 = vec![zero(); width];
        for c in phase1.iter_mut().skip(first_artificial) {
            *c = Rational::from_integer(1.into());
        }
        t.minimize(&phase1, &|_| true);
        let infeasibility: Rational = t
            .basis
            .iter()
            .zip(&t.rhs)
            .filter(|(b, _)| **b >= first_artificial)
            .fold(zero(), |acc, (_, v)| acc + v);
        if infeasibility.is_positive() {
            return LpOutcome::Infeasible;
        }

        // drive zero-valued artificials out of the basis; drop redundant rows
        let mut r = 0;
        while r < t.rows.len() {
            if t.basis[r] >= first_artificial {
                match (0..first_artificial).find(|&j| !t.rows[r][j].is_zero()) {
                    Some(j) => t.pivot(r, j),
                    None => {
                        t.rows.remove(r);
                        t.rhs.remove(r);
                        t.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }

        let mut phase2 = vec![zero(); width];
        for (c, o) in phase2.iter_mut().zip(&self.objective) {
            *c = -o.clone();
        }
        if !t.minimize(&phase2, &|j| j < first_artificial) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![zero(); n];
        for (i, &b) in t.basis.iter().enumerate() {
            if b < n {
                x[b] = t.rhs[i].clone();
            }
        }
        let value = crate::rational::dot(&x, &self.objective);
        LpOutcome::Optimal { x, value }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn c(coefficients: &[i64], relation: Relation, rhs: i64) -> Constraint {
        Constraint { coefficients: coefficients.iter().map(|&x| int(x)).collect(), relation, rhs: int(rhs) }
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
        let lp = LinearProgram {
            objective: vec![int(3), int(5)],
            constraints: vec![
                c(&[1, 0], Relation::Le, 4),
                c(&[0, 2], Relation::Le, 12),
                c(&[3, 2], Relation::Le, 18),
            ],
        };
        assert_eq!(lp.solve(), LpOutcome::Optimal { x: vec![int(2), int(6)], value: int(36) });
    }

    #[test]
    fn equality_and_fractional_optimum() {
        // max x, x + y = 1, 3x - y <= 0 -> x = 1/4
        let lp = LinearProgram {
            objective: vec![int(1), int(0)],
            constraints: vec![c(&[1, 1], Relation::Eq, 1), c(&[3, -1], Relation::Le, 0)],
        };
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, ratio(1, 4)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let lp = LinearProgram {
            objective: vec![int(1)],
            constraints: vec![c(&[1], Relation::Ge, 2), c(&[1], Relation::Le, 1)],
        };
        assert_eq!(lp.solve(), LpOutcome::Infeasible);
        let lp = LinearProgram { objective: vec![int(1), int(0)], constraints: vec![c(&[-1, 1], Relation::Le, 1)] };
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_equalities() {
        let lp = LinearProgram {
            objective: vec![int(0), int(1)],
            constraints: vec![
                c(&[1, 1], Relation::Eq, 2),
                c(&[2, 2], Relation::Eq, 4),
                c(&[-1, -1], Relation::Eq, -2),
            ],
        };
        assert_eq!(lp.solve(), LpOutcome::Optimal { x: vec![int(0), int(2)], value: int(2) });
    }
}
