//! Exact linear algebra over the Gaussian rationals.
//!
//! Two elimination routines are provided. [`rank_fraction_free`] clears
//! each row to Gaussian integers and runs Bareiss one-step elimination,
//! which keeps every intermediate entry a minor of the original matrix and
//! so bounds coefficient growth. [`Rref`] is a plain Gauss-Jordan reduced
//! echelon form over the field, used where explicit coordinates in a
//! quotient basis are needed; pivots are chosen by smallest bit size. The
//! two ranks are cross-checked in the tests.

use num::{BigInt, BigRational, Zero};

use crate::scalar::Scalar;

/// Gaussian integer, the Bareiss working domain.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Gint {
    re: BigInt,
    im: BigInt,
}

impl Gint {
    fn one() -> Self {
        Gint { re: 1.into(), im: BigInt::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, rhs: &Gint) -> Gint {
        Gint {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    fn sub(&self, rhs: &Gint) -> Gint {
        Gint { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }

    /// Exact division; panics if the quotient is not a Gaussian integer,
    /// which cannot happen along a Bareiss elimination.
    fn exact_div(&self, rhs: &Gint) -> Gint {
        let norm = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        let re_num = &self.re * &rhs.re + &self.im * &rhs.im;
        let im_num = &self.im * &rhs.re - &self.re * &rhs.im;
        let (qr, rr) = num::integer::div_rem(re_num, norm.clone());
        let (qi, ri) = num::integer::div_rem(im_num, norm);
        assert!(rr.is_zero() && ri.is_zero(), "non-exact division in fraction-free elimination");
        Gint { re: qr, im: qi }
    }

    fn bits(&self) -> u64 {
        self.re.bits() + self.im.bits()
    }
}

fn clear_row(row: &[Scalar]) -> Vec<Gint> {
    let mut lcm = BigInt::from(1);
    for s in row {
        lcm = num::integer::lcm(lcm, s.denom_lcm());
    }
    row.iter()
        .map(|s| {
            let re = (&s.re * BigRational::from_integer(lcm.clone())).to_integer();
            let im = (&s.im * BigRational::from_integer(lcm.clone())).to_integer();
            Gint { re, im }
        })
        .collect()
}

/// Exact rank by fraction-free (Bareiss) elimination with bit-size
/// pivoting.
pub fn rank_fraction_free(rows: &[Vec<Scalar>]) -> usize {
    let mut mat: Vec<Vec<Gint>> = rows
        .iter()
        .filter(|r| r.iter().any(|s| !s.is_zero()))
        .map(|r| clear_row(r))
        .collect();
    if mat.is_empty() {
        return 0;
    }
    let ncols = mat[0].len();
    let mut rank = 0;
    let mut prev = Gint::one();
    for col in 0..ncols {
        if rank == mat.len() {
            break;
        }
        let pivot = (rank..mat.len())
            .filter(|&r| !mat[r][col].is_zero())
            .min_by_key(|&r| mat[r][col].bits());
        let Some(p) = pivot else { continue };
        mat.swap(rank, p);
        let (top, rest) = mat.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pv = pivot_row[col].clone();
        for row in rest.iter_mut() {
            let factor = row[col].clone();
            for c in 0..ncols {
                let num = pv.mul(&row[c]).sub(&factor.mul(&pivot_row[c]));
                row[c] = num.exact_div(&prev);
            }
        }
        prev = pv;
        rank += 1;
    }
    rank
}

/// Reduced row echelon form over the Gaussian rationals.
#[derive(Clone, Debug)]
pub struct Rref {
    ncols: usize,
    /// Echelon rows, each normalized to a unit pivot.
    rows: Vec<Vec<Scalar>>,
    /// Pivot column of each row, strictly increasing.
    pivots: Vec<usize>,
}

impl Rref {
    pub fn new(ncols: usize, input: Vec<Vec<Scalar>>) -> Self {
        let mut rref = Rref { ncols, rows: Vec::new(), pivots: Vec::new() };
        for row in input {
            rref.insert(row);
        }
        rref
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns without a pivot, the quotient basis.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Reduce a vector against the echelon rows, in place.
    pub fn reduce(&self, vec: &mut [Scalar]) {
        debug_assert_eq!(vec.len(), self.ncols);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if vec[p].is_zero() {
                continue;
            }
            let factor = vec[p].clone();
            for c in p..self.ncols {
                let delta = &factor * &row[c];
                vec[c] = &vec[c] - &delta;
            }
        }
    }

    /// Insert a row, keeping the reduced echelon structure. Returns true
    /// if the row was independent of the span so far.
    pub fn insert(&mut self, mut row: Vec<Scalar>) -> bool {
        debug_assert_eq!(row.len(), self.ncols);
        self.reduce(&mut row);
        let Some(pivot_col) = row.iter().position(|s| !s.is_zero()) else {
            return false;
        };
        let inv = row[pivot_col].inv();
        for c in pivot_col..self.ncols {
            row[c] = &row[c] * &inv;
        }
        // eliminate the new pivot from the existing rows
        for r in 0..self.rows.len() {
            if !self.rows[r][pivot_col].is_zero() {
                let factor = self.rows[r][pivot_col].clone();
                for c in pivot_col..self.ncols {
                    let delta = &factor * &row[c];
                    self.rows[r][c] = &self.rows[r][c] - &delta;
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pivot_col);
        self.pivots.insert(at, pivot_col);
        self.rows.insert(at, row);
        true
    }

    /// Whether the vector lies in the row span.
    pub fn contains(&self, vec: &[Scalar]) -> bool {
        let mut v = vec.to_vec();
        self.reduce(&mut v);
        v.iter().all(Scalar::is_zero)
    }
}
