//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Sized for the small systems that arise from envelopes (tens of
//! constraints in at most a handful of dimensions).

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, point: Vec<Rational> },
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &factor * y;
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `objective` over the current basic feasible solution using
    /// only `allowed` columns. Returns false if unbounded.
    fn optimize(&mut self, objective: &[Rational], allowed: &[bool]) -> bool {
        loop {
            let entering = (0..self.width).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let mut reduced = objective[j].clone();
                for (i, row) in self.rows.iter().enumerate() {
                    reduced -= &objective[self.basis[i]] * &row[j];
                }
                reduced.is_positive()
            });
            let Some(j) = entering else { return true };
            let mut leaving: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[j].is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / &row[j];
                let better = match &leaving {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l]),
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            let Some((r, _)) = leaving else { return false };
            self.pivot(r, j);
        }
    }

    fn value(&self, objective: &[Rational]) -> Rational {
        self.rows
            .iter()
            .zip(&self.basis)
            .map(|(row, &b)| &objective[b] * &row[self.width])
            .sum()
    }
}

/// Maximizes `c·x` subject to `a_i·x >= b_i` for every row, `x` free.
pub fn maximize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    // Columns: x+ (n), x- (n), surplus (m), artificial (m), then rhs.
    let width = 2 * n + 2 * m;
    let mut rows = Vec::with_capacity(m);
    for (i, (ai, bi)) in a.iter().zip(b).enumerate() {
        let mut row = vec![Rational::zero(); width + 1];
        for j in 0..n {
            row[j] = ai[j].clone();
            row[n + j] = -ai[j].clone();
        }
        row[2 * n + i] = -Rational::one();
        row[width] = bi.clone();
        if bi.is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
        row[2 * n + m + i] = Rational::one();
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis: (0..m).map(|i| 2 * n + m + i).collect(),
        width,
    };

    let mut phase_one = vec![Rational::zero(); width];
    for x in &mut phase_one[2 * n + m..] {
        *x = -Rational::one();
    }
    t.optimize(&phase_one, &vec![true; width]);
    if t.value(&phase_one).is_negative() {
        return LpOutcome::Infeasible;
    }

    let artificial = |j: usize| j >= 2 * n + m;
    let mut i = 0;
    while i < t.rows.len() {
        if artificial(t.basis[i]) {
            match (0..2 * n + m).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut objective = vec![Rational::zero(); width];
    for j in 0..n {
        objective[j] = c[j].clone();
        objective[n + j] = -c[j].clone();
    }
    let allowed: Vec<bool> = (0..width).map(|j| !artificial(j)).collect();
    if !t.optimize(&objective, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut z = vec![Rational::zero(); width];
    for (row, &bcol) in t.rows.iter().zip(&t.basis) {
        z[bcol] = row[width].clone();
    }
    let point = (0..n).map(|j| &z[j] - &z[n + j]).collect();
    LpOutcome::Optimal {
        value: t.value(&objective),
        point,
    }
}
