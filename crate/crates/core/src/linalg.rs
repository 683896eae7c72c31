//! Exact vectors and matrices over [`Rat`], plus the elimination kernel.
//!
//! Rank and linear solves use fraction-free (Bareiss) elimination on rows that
//! have first been cleared of denominators, so intermediate entries stay
//! integral minors of the input.

use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rat;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RVec(Vec<Rat>);

impl RVec {
    pub fn new(entries: Vec<Rat>) -> RVec {
        RVec(entries)
    }

    pub fn zeros(dim: usize) -> RVec {
        RVec(vec![Rat::zero(); dim])
    }

    pub fn unit(dim: usize, index: usize) -> RVec {
        let mut v = RVec::zeros(dim);
        v.0[index] = Rat::one();
        v
    }

    pub fn from_ints(entries: &[i64]) -> RVec {
        RVec(entries.iter().map(|&e| Rat::from(e)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rat> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rat::is_zero)
    }

    /// Exact inner product. Panics on a dimension mismatch; callers that take
    /// user input check dimensions first.
    pub fn dot(&self, other: &RVec) -> Rat {
        assert_eq!(self.dim(), other.dim(), "dot product of mismatched vectors");
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, factor: &Rat) -> RVec {
        RVec(self.0.iter().map(|a| a * factor).collect())
    }

    pub fn add(&self, other: &RVec) -> RVec {
        assert_eq!(self.dim(), other.dim());
        RVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RVec) -> RVec {
        assert_eq!(self.dim(), other.dim());
        RVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> RVec {
        RVec(self.0.iter().map(|a| -a).collect())
    }

    /// `self + factor * other`
    pub fn add_scaled(&self, factor: &Rat, other: &RVec) -> RVec {
        assert_eq!(self.dim(), other.dim());
        RVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + factor * b)
                .collect(),
        )
    }

    pub fn concat(parts: &[&RVec]) -> RVec {
        RVec(parts.iter().flat_map(|p| p.0.iter().cloned()).collect())
    }

    /// Positive rescaling to a primitive integer vector (coprime integer
    /// entries). The zero vector is returned unchanged.
    pub fn primitive(&self) -> RVec {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|r| r.numer() * (&lcm / r.denom()))
            .collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        RVec(ints.into_iter().map(|n| Rat::from_int(n / &gcd)).collect())
    }

    /// Coordinates rendered in the rational string format.
    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(Rat::to_string).collect()
    }
}

impl From<Vec<Rat>> for RVec {
    fn from(v: Vec<Rat>) -> RVec {
        RVec(v)
    }
}

impl Index<usize> for RVec {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl IndexMut<usize> for RVec {
    fn index_mut(&mut self, i: usize) -> &mut Rat {
        &mut self.0[i]
    }
}

impl std::fmt::Debug for RVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

/// Kronecker product with the left factor as the slow index:
/// `result[i * w.dim() + j] = v[i] * w[j]`.
pub fn kron(v: &RVec, w: &RVec) -> RVec {
    let mut out = Vec::with_capacity(v.dim() * w.dim());
    for a in v.iter() {
        for b in w.iter() {
            out.push(a * b);
        }
    }
    RVec(out)
}

/// Left fold of [`kron`]; the empty product is the scalar vector `(1)`.
pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a RVec>) -> RVec {
    factors
        .into_iter()
        .fold(RVec::from_ints(&[1]), |acc, f| kron(&acc, f))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RMat {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl RMat {
    pub fn zeros(rows: usize, cols: usize) -> RMat {
        RMat {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> RMat {
        let mut m = RMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// Builds a matrix whose rows are `rows`; every row must have `cols` entries.
    pub fn from_rows(rows: &[RVec], cols: usize) -> Result<RMat> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.dim() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.dim(),
                });
            }
            entries.extend(r.iter().cloned());
        }
        Ok(RMat {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> RVec {
        RVec(self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> RVec {
        RVec((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn transpose(&self) -> RMat {
        let mut t = RMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &RVec) -> RVec {
        assert_eq!(self.cols, v.dim());
        RVec((0..self.rows).map(|i| self.row(i).dot(v)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }
}

impl Index<(usize, usize)> for RMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.entries[i * self.cols + j]
    }
}

impl std::fmt::Debug for RMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<RVec> = (0..self.rows).map(|i| self.row(i)).collect();
        f.debug_list().entries(rows.iter()).finish()
    }
}

/// Row-scaled integer copy of a rational matrix. Scaling a row by a positive
/// integer changes neither rank nor the solution set once the right-hand side
/// is scaled with it.
fn integer_rows(rows: impl Iterator<Item = Vec<Rat>>) -> Vec<Vec<BigInt>> {
    rows.map(|row| {
        let lcm = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        row.iter().map(|r| r.numer() * (&lcm / r.denom())).collect()
    })
    .collect()
}

/// Fraction-free forward elimination over the first `pivot_cols` columns;
/// trailing columns are carried along. Returns the pivot column of each
/// pivot row, in order.
fn bareiss(a: &mut [Vec<BigInt>], pivot_cols: usize) -> Vec<usize> {
    let rows = a.len();
    let width = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..rows {
            for j in col + 1..width {
                let v = &a[r][col] * &a[i][j] - &a[i][col] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[r][col].clone();
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub fn rank(m: &RMat) -> usize {
    let mut a = integer_rows((0..m.rows).map(|i| m.row(i).0));
    bareiss(&mut a, m.cols).len()
}

/// Dimension of the span of `vs`; all vectors must share one dimension.
pub fn span_dim(vs: &[RVec]) -> Result<usize> {
    let Some(first) = vs.first() else {
        return Ok(0);
    };
    Ok(rank(&RMat::from_rows(vs, first.dim())?))
}

/// Some exact solution of `m x = b`, or `None` when the system is
/// inconsistent. Free variables are set to zero.
pub fn solve_linear(m: &RMat, b: &RVec) -> Result<Option<RVec>> {
    if m.rows != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            found: b.dim(),
        });
    }
    let mut a = integer_rows((0..m.rows).map(|i| {
        let mut row = m.row(i).0;
        row.push(b[i].clone());
        row
    }));
    let pivots = bareiss(&mut a, m.cols);
    let rhs = m.cols;
    if a[pivots.len()..].iter().any(|row| !row[rhs].is_zero()) {
        return Ok(None);
    }
    let mut x = RVec::zeros(m.cols);
    for (k, &pc) in pivots.iter().enumerate().rev() {
        let mut acc = Rat::from_int(a[k][rhs].clone());
        for j in pc + 1..m.cols {
            if !a[k][j].is_zero() && !x[j].is_zero() {
                acc -= Rat::from_int(a[k][j].clone()) * &x[j];
            }
        }
        x[pc] = acc / Rat::from_int(a[k][pc].clone());
    }
    Ok(Some(x))
}

/// Basis of `{x : m x = 0}` read off the reduced row echelon form; one basis
/// vector per free column, with a 1 in that column.
pub fn null_space(m: &RMat) -> Vec<RVec> {
    let mut a = integer_rows((0..m.rows).map(|i| m.row(i).0));
    let pivots = bareiss(&mut a, m.cols);
    // back-substitute into reduced form over the rationals
    let mut rref: Vec<Vec<Rat>> = a[..pivots.len()]
        .iter()
        .map(|row| row.iter().cloned().map(Rat::from_int).collect())
        .collect();
    for (k, &pc) in pivots.iter().enumerate().rev() {
        let lead = rref[k][pc].clone();
        for v in rref[k].iter_mut() {
            *v = &*v / &lead;
        }
        for i in 0..k {
            let factor = rref[i][pc].clone();
            if factor.is_zero() {
                continue;
            }
            let pivot_row = rref[k].clone();
            for (x, y) in rref[i].iter_mut().zip(&pivot_row) {
                *x -= &factor * y;
            }
        }
    }
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = RVec::zeros(m.cols);
            v[f] = Rat::one();
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = -&rref[k][f];
            }
            v
        })
        .collect()
}

/// Sign of a rational as -1, 0 or 1.
pub(crate) fn sign(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.numer().is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rv(xs: &[(i64, i64)]) -> RVec {
        RVec::new(xs.iter().map(|&(p, q)| Rat::new(p, q)).collect())
    }

    #[test]
    fn kron_examples() {
        assert_eq!(
            kron(&RVec::from_ints(&[1, 0]), &RVec::from_ints(&[0, 1])),
            RVec::from_ints(&[0, 1, 0, 0])
        );
        let v = rv(&[(2, 3), (-1, 5)]);
        assert_eq!(kron(&v, &RVec::from_ints(&[1])), v);
        assert_eq!(
            kron(&rv(&[(1, 2), (1, 2)]), &rv(&[(1, 3), (2, 3)])),
            rv(&[(1, 6), (1, 3), (1, 6), (1, 3)])
        );
    }

    #[test]
    fn kron_all_folds_left() {
        let a = RVec::from_ints(&[1, 2]);
        let b = RVec::from_ints(&[3, 5]);
        let c = RVec::from_ints(&[7, 11]);
        assert_eq!(kron_all([&a, &b, &c]), kron(&kron(&a, &b), &c));
        assert_eq!(kron_all([]), RVec::from_ints(&[1]));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RMat::identity(3)), 3);
        assert_eq!(rank(&RMat::zeros(2, 4)), 0);
        let m = RMat::from_rows(
            &[
                RVec::from_ints(&[1, 2]),
                RVec::from_ints(&[2, 4]),
                RVec::from_ints(&[0, 1]),
            ],
            2,
        )
        .unwrap();
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn span_dim_examples() {
        assert_eq!(
            span_dim(&[RVec::from_ints(&[1, 0, 0]), RVec::from_ints(&[0, 1, 0])]).unwrap(),
            2
        );
        assert_eq!(span_dim(&[]).unwrap(), 0);
        let square: Vec<RVec> = [[1, 1, 1], [1, -1, 1], [-1, 1, 1], [-1, -1, 1]]
            .iter()
            .map(|g| RVec::from_ints(g))
            .collect();
        assert_eq!(span_dim(&square).unwrap(), 3);
        assert!(span_dim(&[RVec::zeros(2), RVec::zeros(3)]).is_err());
    }

    #[test]
    fn solve_examples() {
        let b = rv(&[(1, 2), (-3, 1), (5, 7)]);
        assert_eq!(solve_linear(&RMat::identity(3), &b).unwrap(), Some(b));
        assert_eq!(
            solve_linear(&RMat::zeros(2, 2), &RVec::from_ints(&[1, 0])).unwrap(),
            None
        );
        let diag =
            RMat::from_rows(&[RVec::from_ints(&[2, 0]), RVec::from_ints(&[0, 4])], 2).unwrap();
        assert_eq!(
            solve_linear(&diag, &RVec::from_ints(&[1, 1])).unwrap(),
            Some(rv(&[(1, 2), (1, 4)]))
        );
        assert!(solve_linear(&diag, &RVec::from_ints(&[1])).is_err());
    }

    #[test]
    fn solve_underdetermined_and_redundant() {
        // x + y = 2, 2x + 2y = 4, z free
        let m = RMat::from_rows(
            &[RVec::from_ints(&[1, 1, 0]), RVec::from_ints(&[2, 2, 0])],
            3,
        )
        .unwrap();
        let x = solve_linear(&m, &RVec::from_ints(&[2, 4]))
            .unwrap()
            .unwrap();
        assert_eq!(m.mul_vec(&x), RVec::from_ints(&[2, 4]));
        assert_eq!(solve_linear(&m, &RVec::from_ints(&[2, 5])).unwrap(), None);
    }

    #[test]
    fn null_space_basis() {
        let m = RMat::from_rows(
            &[RVec::from_ints(&[1, 1, 1]), RVec::from_ints(&[1, -1, 1])],
            3,
        )
        .unwrap();
        let ns = null_space(&m);
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).is_zero());
        assert_eq!(ns[0].primitive(), RVec::from_ints(&[-1, 0, 1]));
        assert_eq!(null_space(&RMat::zeros(0, 1)), vec![RVec::from_ints(&[1])]);
    }

    #[test]
    fn primitive_scaling() {
        assert_eq!(
            rv(&[(1, 2), (0, 1), (1, 2)]).primitive(),
            RVec::from_ints(&[1, 0, 1])
        );
        assert_eq!(
            rv(&[(-2, 3), (4, 9)]).primitive(),
            RVec::from_ints(&[-3, 2])
        );
        assert!(RVec::zeros(3).primitive().is_zero());
    }

    fn arb_vec(dim: usize) -> impl Strategy<Value = RVec> {
        proptest::collection::vec((-9i64..10, 1i64..6), dim)
            .prop_map(|xs| RVec::new(xs.into_iter().map(|(p, q)| Rat::new(p, q)).collect()))
    }

    fn arb_mat() -> impl Strategy<Value = RMat> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(arb_vec(c), r)
                .prop_map(move |rows| RMat::from_rows(&rows, c).unwrap())
        })
    }

    proptest! {
        #[test]
        fn kron_is_bilinear(u in arb_vec(3), v in arb_vec(3), w in arb_vec(2),
                            a in (-5i64..6, 1i64..4), b in (-5i64..6, 1i64..4)) {
            let (a, b) = (Rat::new(a.0, a.1), Rat::new(b.0, b.1));
            let lhs = kron(&u.scale(&a).add(&v.scale(&b)), &w);
            let rhs = kron(&u, &w).scale(&a).add(&kron(&v, &w).scale(&b));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn rank_of_transpose(m in arb_mat()) {
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }

        #[test]
        fn null_space_is_complementary(m in arb_mat()) {
            let ns = null_space(&m);
            prop_assert_eq!(ns.len() + rank(&m), m.cols());
            for v in &ns {
                prop_assert!(m.mul_vec(v).is_zero());
            }
        }

        #[test]
        fn solve_recovers_consistent_rhs(m in arb_mat(), seed in arb_vec(4)) {
            let x0 = RVec::new(seed.entries()[..m.cols()].to_vec());
            let b = m.mul_vec(&x0);
            let x = solve_linear(&m, &b).unwrap().expect("consistent system");
            prop_assert_eq!(m.mul_vec(&x), b);
        }
    }
}
