//! Exact Gaussian elimination over rationals, used by the enumeration oracle.

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Solves the square system `a x = b` exactly.
/// Returns `None` when the matrix is singular.
#[allow(clippy::needless_range_loop)] // two rows are indexed per step
pub(crate) fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), n);

    // augmented matrix
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot_row);
        let pivot = m[col][col].clone();
        for entry in &mut m[col] {
            *entry /= &pivot;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=n {
                    let delta = &factor * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Basis of the null space `{ x : a x = 0 }` for an arbitrary `rows x n`
/// matrix. An empty matrix has the full standard basis as its null space.
#[allow(clippy::needless_range_loop)] // two rows are indexed per step
pub(crate) fn null_space(a: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = a.to_vec();
    let rows = m.len();
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;

    for col in 0..n {
        if rank == rows {
            break;
        }
        let Some(pivot_row) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let pivot = m[rank][col].clone();
        for entry in &mut m[rank] {
            *entry /= &pivot;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..n {
                    let delta = &factor * &m[rank][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }

    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); n];
        v[free] = Rational::one();
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn solves_unique_system() {
        // x + y = 3, x - y = 1 => (2, 1)
        let a = vec![vec![rat(1, 1), rat(1, 1)], vec![rat(1, 1), rat(-1, 1)]];
        let b = vec![rat(3, 1), rat(1, 1)];
        assert_eq!(solve_square(&a, &b).unwrap(), vec![rat(2, 1), rat(1, 1)]);
    }

    #[test]
    fn rejects_singular_system() {
        let a = vec![vec![rat(1, 1), rat(1, 1)], vec![rat(2, 1), rat(2, 1)]];
        let b = vec![rat(1, 1), rat(2, 1)];
        assert!(solve_square(&a, &b).is_none());
    }

    #[test]
    fn null_space_of_empty_matrix_is_everything() {
        let basis = null_space(&[], 3);
        assert_eq!(basis.len(), 3);
    }

    #[test]
    fn null_space_of_rank_one_matrix() {
        // x + y + z = 0 has a 2-dimensional null space
        let a = vec![vec![rat(1, 1), rat(1, 1), rat(1, 1)]];
        let basis = null_space(&a, 3);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(dot(&a[0], v).is_zero());
        }
    }

    #[test]
    fn null_space_of_full_rank_is_trivial() {
        let a = vec![
            vec![rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1)],
            vec![rat(1, 1), rat(1, 1)],
        ];
        assert!(null_space(&a, 2).is_empty());
    }
}
