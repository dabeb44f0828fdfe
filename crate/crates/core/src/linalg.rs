//! Exact rank computation over the integers, fraction-free.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Divide a row by the gcd of its entries to keep sizes small.
fn reduce_row(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for c in row.iter() {
        g = g.gcd(c);
        if g == BigInt::from(1) {
            return;
        }
    }
    if g.is_zero() || g.abs() == BigInt::from(1) {
        return;
    }
    for c in row.iter_mut() {
        *c = &*c / &g;
    }
}

/// Rank of an integer matrix by cross-multiplication elimination; exact, no
/// fractions ever appear.
pub fn rank_integer_matrix(mut rows: Vec<Vec<BigInt>>) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    for row in rows.iter_mut() {
        reduce_row(row);
    }
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let pivot = (rank..nrows).find(|&r| !rows[r][col].is_zero());
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        let (pivot_row, rest) = {
            let (a, b) = rows.split_at_mut(rank + 1);
            (&a[rank], b)
        };
        let pv = pivot_row[col].clone();
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for c in col..ncols {
                row[c] = &row[c] * &pv - &pivot_row[c] * &factor;
            }
            reduce_row(row);
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
            .collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_integer_matrix(m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank_integer_matrix(m(&[&[1, 2], &[3, 4]])), 2);
        assert_eq!(rank_integer_matrix(m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(
            rank_integer_matrix(m(&[&[2, 0, 1], &[0, 3, 1], &[2, 3, 2]])),
            2
        );
        assert_eq!(rank_integer_matrix(Vec::new()), 0);
    }

    #[test]
    fn rank_is_row_count_for_staircase() {
        let rows = m(&[&[5, 7, 0, 0], &[0, 0, 3, 1], &[0, 0, 0, 11]]);
        assert_eq!(rank_integer_matrix(rows), 3);
    }
}
