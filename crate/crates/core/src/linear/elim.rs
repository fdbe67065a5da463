//! Exact elimination over the rationals.
//!
//! Rows are cleared of denominators, reduced to echelon form with Bareiss'
//! fraction-free update (every intermediate entry is a minor of the input, so
//! each division is exact), and only then brought to reduced row echelon form
//! over the rationals. The RREF is unique, so the pivot rule affects cost only.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::{primitive_integer_vector, Rational};

/// Reduced row echelon form of a rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub cols: usize,
    /// Nonzero rows only, one per pivot.
    pub rows: Vec<Vec<Rational>>,
    pub pivot_cols: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    pub fn free_cols(&self) -> Vec<usize> {
        (0..self.cols).filter(|c| !self.pivot_cols.contains(c)).collect()
    }

    /// Kernel basis, one vector per free column in ascending order, each
    /// scaled to coprime integers with a positive leading entry.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        self.free_cols()
            .into_iter()
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (row, &pc) in self.rows.iter().zip(&self.pivot_cols) {
                    v[pc] = -row[free].clone();
                }
                primitive_integer_vector(&v)
            })
            .collect()
    }
}

fn to_integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Fraction-free echelon form. Returns the integer echelon rows (first
/// `pivots.len()` rows are nonzero) and the pivot columns.
pub fn bareiss_echelon(rows: &[Vec<Rational>], cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "ragged matrix");
            to_integer_row(r)
        })
        .collect();
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..cols {
        if top == nrows {
            break;
        }
        // Smallest nonzero pivot by bit length keeps the minors short.
        let Some(p) = (top..nrows)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].bits())
        else {
            continue;
        };
        a.swap(top, p);
        let (upper, lower) = a.split_at_mut(top + 1);
        let pivot_row = &upper[top];
        let pivot = &pivot_row[col];
        for row in lower.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..cols {
                let num = pivot * &row[j] - &factor * &pivot_row[j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "inexact Bareiss division");
                row[j] = q;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot.clone();
        pivots.push(col);
        top += 1;
    }
    (a, pivots)
}

pub fn rref(rows: &[Vec<Rational>], cols: usize) -> Rref {
    let (echelon, pivot_cols) = bareiss_echelon(rows, cols);
    let rank = pivot_cols.len();
    let mut out: Vec<Vec<Rational>> = echelon
        .into_iter()
        .take(rank)
        .map(|r| r.into_iter().map(Rational::from_integer).collect())
        .collect();
    for k in (0..rank).rev() {
        let pc = pivot_cols[k];
        let inv = out[k][pc].recip();
        for x in out[k].iter_mut() {
            *x *= &inv;
        }
        let (above, rest) = out.split_at_mut(k);
        let pivot_row = &rest[0];
        for row in above.iter_mut() {
            let factor = row[pc].clone();
            if factor.is_zero() {
                continue;
            }
            for (x, p) in row.iter_mut().zip(pivot_row).skip(pc) {
                *x -= &factor * p;
            }
        }
    }
    Rref { cols, rows: out, pivot_cols }
}

pub fn rank(rows: &[Vec<Rational>], cols: usize) -> usize {
    bareiss_echelon(rows, cols).1.len()
}

/// Coefficients `β` with `Σ β_k · basis[k] = target`, if the target lies in
/// the span of linearly independent `basis` vectors.
pub fn span_representation(basis: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let len = target.len();
    let width = basis.len() + 1;
    // Columns are the basis vectors followed by the target.
    let rows: Vec<Vec<Rational>> = (0..len)
        .map(|coord| {
            basis
                .iter()
                .map(|b| b[coord].clone())
                .chain(std::iter::once(target[coord].clone()))
                .collect()
        })
        .collect();
    let kernel = rref(&rows, width).kernel();
    let v = kernel.into_iter().find(|v| !v[basis.len()].is_zero())?;
    let scale = -v[basis.len()].recip();
    Some(v[..basis.len()].iter().map(|x| x * &scale).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{dot, rat, ratio};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn rref_of_small_matrix() {
        let a = m(&[&[2, 4, 6], &[1, 2, 4], &[3, 6, 10]]);
        let r = rref(&a, 3);
        assert_eq!(r.pivot_cols, vec![0, 2]);
        assert_eq!(r.rows, m(&[&[1, 2, 0], &[0, 0, 1]]));
        assert_eq!(r.kernel(), m(&[&[2, -1, 0]]));
    }

    #[test]
    fn fractional_entries() {
        let a = vec![vec![ratio(1, 2), ratio(1, 3)], vec![ratio(1, 4), ratio(1, 6)]];
        let r = rref(&a, 2);
        assert_eq!(r.rank(), 1);
        let k = r.kernel();
        assert_eq!(k, m(&[&[2, -3]]));
        assert!(dot(&a[0], &k[0]).is_zero());
    }

    #[test]
    fn degenerate_shapes() {
        assert_eq!(rank(&[], 4), 0);
        assert_eq!(rref(&[], 3).kernel().len(), 3);
        let zero = m(&[&[0, 0], &[0, 0]]);
        assert_eq!(rank(&zero, 2), 0);
    }

    #[test]
    fn span_membership() {
        let basis = m(&[&[1, 0, 1], &[0, 1, 1]]);
        let inside = vec![rat(2), rat(3), rat(5)];
        assert_eq!(span_representation(&basis, &inside), Some(vec![rat(2), rat(3)]));
        assert_eq!(span_representation(&basis, &[rat(0), rat(0), rat(1)]), None);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix() -> impl Strategy<Value = (usize, Vec<Vec<Rational>>)> {
            (1usize..7).prop_flat_map(|cols| {
                let row = proptest::collection::vec((-6i64..6, 1i64..4), cols)
                    .prop_map(|v| v.into_iter().map(|(n, d)| ratio(n, d)).collect::<Vec<_>>());
                (Just(cols), proptest::collection::vec(row, 0..6))
            })
        }

        proptest! {
            #[test]
            fn kernel_annihilates_and_has_full_dimension((cols, a) in matrix()) {
                let r = rref(&a, cols);
                let kernel = r.kernel();
                prop_assert_eq!(kernel.len(), cols - r.rank());
                for v in &kernel {
                    for row in &a {
                        prop_assert!(dot(row, v).is_zero());
                    }
                    prop_assert!(v.iter().all(|x| x.is_integer()));
                    prop_assert!(v.iter().find(|x| !x.is_zero()).unwrap() > &rat(0));
                }
                // Rank is invariant under row order.
                let mut rev = a.clone();
                rev.reverse();
                prop_assert_eq!(rank(&rev, cols), r.rank());
            }
        }
    }
}
