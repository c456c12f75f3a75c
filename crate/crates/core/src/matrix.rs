//! Dense integer matrices over arbitrary-precision integers, and the Smith
//! normal form with tracked unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Row-major dense matrix over `BigInt`. Entries never overflow; unimodular
/// reduction is allowed to blow entries up arbitrarily.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl std::fmt::Debug for IntMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Convenience constructor used heavily by tests.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntMat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j).is_one()
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, other: &IntMat) -> Result<IntMat> {
        if self.cols != other.rows {
            return Err(Error::IncompatibleHomomorphisms(format!(
                "matrix product {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j) + a * b;
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &IntMat) -> Result<IntMat> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::IncompatibleHomomorphisms(format!(
                "matrix sum {}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, out.get(i, j) + other.get(i, j));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> IntMat {
        let mut out = self.clone();
        for v in out.data.iter_mut() {
            *v = -std::mem::take(v);
        }
        out
    }

    /// `[self | other]` side by side.
    pub fn hstack(&self, other: &IntMat) -> Result<IntMat> {
        if self.rows != other.rows {
            return Err(Error::IncompatibleHomomorphisms(format!(
                "hstack {}x{} | {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    /// row_i += q * row_k
    fn add_row_multiple(&mut self, i: usize, k: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(i, j) + q * self.get(k, j);
            self.set(i, j, v);
        }
    }

    /// col_j += q * col_k
    fn add_col_multiple(&mut self, j: usize, k: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, j) + q * self.get(i, k);
            self.set(i, j, v);
        }
    }
}

/// Smith normal form `u * a * v = d` with `u`, `v` unimodular; inverses are
/// tracked during the reduction so callers never have to invert an integer
/// matrix themselves.
pub struct Snf {
    pub d: IntMat,
    pub u: IntMat,
    pub u_inv: IntMat,
    pub v: IntMat,
    pub v_inv: IntMat,
}

impl Snf {
    /// Diagonal entries of `d` (all non-negative, divisibility chain).
    pub fn diagonal(&self) -> Vec<BigInt> {
        self.d.diagonal()
    }
}

pub fn smith_normal_form(a: &IntMat) -> Snf {
    let mut d = a.clone();
    let rows = d.rows();
    let cols = d.cols();
    let mut u = IntMat::identity(rows);
    let mut u_inv = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);
    let mut v_inv = IntMat::identity(cols);

    // Elementary operations applied to `d` are mirrored on the transforms:
    // row ops on `u` (and inverse column ops on `u_inv`), column ops on `v`
    // (and inverse row ops on `v_inv`).
    let row_add = |d: &mut IntMat, u: &mut IntMat, u_inv: &mut IntMat, i: usize, k: usize, q: &BigInt| {
        d.add_row_multiple(i, k, q);
        u.add_row_multiple(i, k, q);
        let nq = -q;
        u_inv.add_col_multiple(k, i, &nq);
    };
    let col_add = |d: &mut IntMat, v: &mut IntMat, v_inv: &mut IntMat, j: usize, k: usize, q: &BigInt| {
        d.add_col_multiple(j, k, q);
        v.add_col_multiple(j, k, q);
        let nq = -q;
        v_inv.add_row_multiple(k, j, &nq);
    };

    let n = rows.min(cols);
    for t in 0..n {
        'pivot: loop {
            // Smallest nonzero entry of the trailing submatrix becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !d.get(i, j).is_zero()
                        && best.map_or(true, |(bi, bj)| d.get(i, j).abs() < d.get(bi, bj).abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'pivot; // trailing submatrix is zero
            };
            if pi != t {
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                u_inv.swap_cols(t, pi);
            }
            if pj != t {
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                v_inv.swap_rows(t, pj);
            }

            // Clear column t, then row t, with truncated division; leftover
            // remainders shrink the candidate pivot, so this loop terminates.
            let mut dirty = false;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t).div_rem(d.get(t, t)).0;
                if !q.is_zero() {
                    let nq = -q;
                    row_add(&mut d, &mut u, &mut u_inv, i, t, &nq);
                }
                if !d.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j).div_rem(d.get(t, t)).0;
                if !q.is_zero() {
                    let nq = -q;
                    col_add(&mut d, &mut v, &mut v_inv, j, t, &nq);
                }
                if !d.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot;
            }

            // Divisibility fix-up: the pivot must divide the whole trailing
            // submatrix so that the diagonal forms a chain.
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if !d.get(i, j).mod_floor(d.get(t, t)).is_zero() {
                        let one = BigInt::one();
                        row_add(&mut d, &mut u, &mut u_inv, t, i, &one);
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }

        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }

    Snf { d, u, u_inv, v, v_inv }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    /// Independent check via determinantal divisors: the product
    /// d_1 * ... * d_k equals the gcd of all k-by-k minors, which is invariant
    /// under unimodular transforms. Computed straight from the definition.
    fn determinantal_divisor(a: &IntMat, k: usize) -> BigInt {
        fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = Vec::new();
            for first in 0..=n - k {
                for mut rest in combinations(n - first - 1, k - 1) {
                    for r in rest.iter_mut() {
                        *r += first + 1;
                    }
                    let mut c = vec![first];
                    c.extend(rest);
                    out.push(c);
                }
            }
            out
        }
        fn minor(a: &IntMat, rs: &[usize], cs: &[usize]) -> BigInt {
            // Laplace expansion along the first selected row; fine for k <= 4.
            if rs.len() == 1 {
                return a.get(rs[0], cs[0]).clone();
            }
            let mut acc = BigInt::zero();
            for (pos, &c) in cs.iter().enumerate() {
                let sub_rows = &rs[1..];
                let sub_cols: Vec<usize> =
                    cs.iter().copied().filter(|&x| x != c).collect();
                let m = minor(a, sub_rows, &sub_cols);
                let term = a.get(rs[0], c) * m;
                if pos % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        let mut g = BigInt::zero();
        for rs in combinations(a.rows(), k) {
            for cs in combinations(a.cols(), k) {
                g = g.gcd(&minor(a, &rs, &cs));
            }
        }
        g
    }

    fn check_snf(a: &IntMat) {
        let snf = smith_normal_form(a);
        // Reconstruction.
        let uav = snf.u.mul(a).unwrap().mul(&snf.v).unwrap();
        assert_eq!(uav, snf.d, "u*a*v != d for {a:?}");
        // Tracked inverses really invert.
        assert!(snf.u.mul(&snf.u_inv).unwrap().is_identity());
        assert!(snf.v.mul(&snf.v_inv).unwrap().is_identity());
        // Diagonal, non-negative, divisibility chain.
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    assert!(snf.d.get(i, j).is_zero(), "off-diagonal in {:?}", snf.d);
                }
            }
        }
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative() && !w[1].is_negative());
            if !w[0].is_zero() {
                assert!(w[1].mod_floor(&w[0]).is_zero(), "chain broken: {diag:?}");
            } else {
                assert!(w[1].is_zero(), "nonzero after zero: {diag:?}");
            }
        }
        // Determinantal-divisor oracle (independent of the reduction).
        let mut prod = BigInt::one();
        for (k, dk) in diag.iter().enumerate() {
            prod *= dk;
            assert_eq!(
                prod.abs(),
                determinantal_divisor(a, k + 1).abs(),
                "determinantal divisor mismatch at k={} for {a:?}",
                k + 1
            );
        }
    }

    #[test]
    fn snf_2x2_example() {
        let a = IntMat::from_rows(&[&[2, 4], &[6, 8]]);
        let snf = smith_normal_form(&a);
        let diag: Vec<i64> = snf.diagonal().iter().map(|d| d.to_i64().unwrap()).collect();
        assert_eq!(diag, vec![2, 4]);
        check_snf(&a);
    }

    #[test]
    fn snf_zero_and_identity() {
        check_snf(&IntMat::zeros(3, 2));
        check_snf(&IntMat::identity(4));
        let a = IntMat::from_rows(&[&[0, 0, 5]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.diagonal(), vec![BigInt::from(5)]);
    }

    #[test]
    fn snf_rectangular_and_rank_deficient() {
        check_snf(&IntMat::from_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        check_snf(&IntMat::from_rows(&[&[1, 2], &[2, 4]]));
        check_snf(&IntMat::from_rows(&[&[6, 10], &[15, 25], &[9, 15]]));
        check_snf(&IntMat::from_rows(&[&[0, 3], &[9, 0]]));
    }

    #[test]
    fn snf_diagonal_input_gets_chained() {
        // diag(2,3) presents Z/2 + Z/3 which is cyclic of order 6.
        let a = IntMat::from_rows(&[&[2, 0], &[0, 3]]);
        let snf = smith_normal_form(&a);
        let diag: Vec<i64> = snf.diagonal().iter().map(|d| d.to_i64().unwrap()).collect();
        assert_eq!(diag, vec![1, 6]);
        check_snf(&a);
    }

    proptest! {
        #[test]
        fn snf_random_small(rows in 1usize..4, cols in 1usize..4,
                            entries in prop::collection::vec(-30i64..30, 16)) {
            let mut a = IntMat::zeros(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    a.set(i, j, BigInt::from(entries[i * cols + j]));
                }
            }
            check_snf(&a);
        }
    }
}
