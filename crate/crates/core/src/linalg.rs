//! Small dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Reduces `rows` to row echelon form in place and returns the pivot columns.
fn echelon(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in c..cols {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut rows = rows.to_vec();
    echelon(&mut rows).len()
}

/// Solves `sum_i coeffs[i] * columns[i] = target` exactly. Returns `None` when
/// inconsistent; when the columns are dependent an arbitrary solution is
/// returned (free variables set to zero).
pub fn solve_columns(columns: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let n = columns.len();
    let mut rows: Vec<Vec<Rational>> = (0..target.len())
        .map(|i| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = echelon(&mut rows);
    if pivots.contains(&n) {
        return None;
    }
    let mut solution = vec![Rational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        solution[c] = rows[r][n].clone();
    }
    Some(solution)
}

/// Basis of `{x : rows · x = 0}`.
pub fn null_space(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut rows = rows.to_vec();
    let pivots = echelon(&mut rows);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -rows[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&m(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 1]])), 3);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn solve_and_null_space() {
        let cols = m(&[&[1, 0], &[0, 2]]);
        assert_eq!(solve_columns(&cols, &[int(3), int(4)]).unwrap(), vec![int(3), int(2)]);
        let parallel = m(&[&[1, 1]]);
        assert!(solve_columns(&parallel, &[int(1), int(2)]).is_none());
        let ns = null_space(&m(&[&[1, 1, 0]]), 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!((&v[0] + &v[1]).is_zero());
        }
    }
}
