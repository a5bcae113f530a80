//! Small dense linear systems over the rationals.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::Constant;

/// One exact solution of `matrix · x = rhs` by Gaussian elimination, or
/// `None` if the system is inconsistent. Free variables are set to zero.
#[allow(clippy::needless_range_loop)]
pub fn solve_linear_system(matrix: &[Vec<Constant>], rhs: &[Constant]) -> Option<Vec<Constant>> {
    let rows = matrix.len();
    assert_eq!(rows, rhs.len(), "row count mismatch");
    let cols = matrix.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Constant>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            assert_eq!(row.len(), cols, "ragged matrix");
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();

    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(row, p);
        let inv = aug[row][col].recip();
        for k in col..=cols {
            aug[row][k] = &aug[row][k] * &inv;
        }
        for r in 0..rows {
            if r != row && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for k in col..=cols {
                    let delta = &f * &aug[row][k];
                    aug[r][k] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    if aug[row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Constant::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Constant {
        Constant::from_integer(n.into())
    }

    #[test]
    fn identity() {
        let m = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
        assert_eq!(solve_linear_system(&m, &[q(2), q(3)]), Some(vec![q(2), q(3)]));
    }

    #[test]
    fn underdetermined_picks_a_solution() {
        let m = vec![vec![q(1), q(1)]];
        assert_eq!(solve_linear_system(&m, &[q(0)]), Some(vec![q(0), q(0)]));
    }

    #[test]
    fn inconsistent() {
        let m = vec![vec![q(1)], vec![q(1)]];
        assert_eq!(solve_linear_system(&m, &[q(1), q(2)]), None);
    }

    #[test]
    fn fractional_solution() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let x = solve_linear_system(&m, &[q(1), q(2)]).unwrap();
        assert_eq!(x, vec![Constant::new(1.into(), 5.into()), Constant::new(3.into(), 5.into())]);
    }
}
