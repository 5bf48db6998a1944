//! Exact solution of overdetermined integer systems.
//!
//! Forward elimination is fraction-free (Bareiss), so every intermediate entry
//! stays an integer minor; rationals only appear in back substitution.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Solves `A x = b` for `A` of shape `m x k` with full column rank.
///
/// Fails with [`Error::SingularBasis`] if the columns of `A` are dependent and
/// with [`Error::InconsistentSystem`] if `b` is not in the column span.
pub fn solve_exact(a: &[Vec<BigInt>], b: &[BigInt]) -> Result<Vec<BigRational>> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let k = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), k, "ragged matrix");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let rows = m.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::with_capacity(k);
    let mut r = 0;
    for col in 0..k {
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in col + 1..=k {
                let v = &m[r][col] * &m[i][j] - &m[i][col] * &m[r][j];
                debug_assert!((&v % &prev).is_zero());
                m[i][j] = v / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[r][col].clone();
        pivots.push(col);
        r += 1;
        if r == rows {
            break;
        }
    }

    if m[r..].iter().any(|row| !row[k].is_zero()) {
        return Err(Error::InconsistentSystem);
    }
    if r < k {
        return Err(Error::SingularBasis { rank: r, size: k });
    }

    let mut x = vec![BigRational::zero(); k];
    for (row, &col) in pivots.iter().enumerate().rev() {
        let mut acc = BigRational::from_integer(m[row][k].clone());
        for j in col + 1..k {
            if !m[row][j].is_zero() {
                acc -= BigRational::from_integer(m[row][j].clone()) * &x[j];
            }
        }
        x[col] = acc / BigRational::from_integer(m[row][col].clone());
    }
    Ok(x)
}
