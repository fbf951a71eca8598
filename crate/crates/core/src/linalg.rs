//! Exact dense linear algebra over a prime field F_p.
//!
//! Matrices are row-major with entries stored as least nonnegative residues.
//! Everything is a pure value; no operation mutates its receiver. Row
//! reduction is fully deterministic (leftmost pivot, topmost row), so every
//! derived basis is canonical for its input.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A prime field, given by its characteristic.
///
/// The characteristic is capped below 2^31 so that products of two residues
/// never overflow u64.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub prime: u64,
}

impl FieldSpec {
    pub fn new(prime: u64) -> Result<Self> {
        if prime < 2 || !is_prime(prime) {
            return Err(Error::invalid(format!("{prime} is not a prime")));
        }
        if prime >= 1 << 31 {
            return Err(Error::invalid(format!(
                "prime {prime} too large; residue products must fit in u64"
            )));
        }
        Ok(FieldSpec { prime })
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        x % self.prime
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.prime
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.prime - b % self.prime) % self.prime
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        (self.prime - a % self.prime) % self.prime
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a % self.prime) * (b % self.prime) % self.prime
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        base %= self.prime;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.prime != 0, "inverse of zero");
        self.pow(a, self.prime - 2)
    }

    /// All residues, in ascending order.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.prime
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense matrix over a prime field. Row-major; `rows * cols` entries, each a
/// least nonnegative residue. Zero-by-n and n-by-zero shapes are legal and
/// arise constantly (zero modules at a vertex).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Output of Gaussian elimination: rank, the reduced row echelon form, and a
/// basis of the right null space (as columns).
#[derive(Debug, Clone)]
pub struct Reduction {
    pub rank: usize,
    pub rref: Mat,
    pub pivots: Vec<usize>,
    pub kernel: Mat,
}

impl Mat {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Mat {
        Mat { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Mat {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from explicit rows; entries are reduced mod p.
    pub fn from_rows(field: FieldSpec, rows: &[Vec<u64>]) -> Result<Mat> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::invalid("ragged rows in matrix literal"));
        }
        let data = rows.iter().flatten().map(|&x| field.reduce(x)).collect();
        Ok(Mat { field, rows: r, cols: c, data })
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u64,
    ) -> Mat {
        let mut m = Mat::zero(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, field.reduce(f(i, j)));
            }
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c] = v % self.field.prime;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sub");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.sub(a, b))
            .collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Mat {
        let data = self.data.iter().map(|&a| self.field.neg(a)).collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u64) -> Mat {
        let data = self.data.iter().map(|&a| self.field.mul(a, c)).collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let p = self.field.prime;
        let mut out = Mat::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, (cur + a * other.get(k, j)) % p);
                }
            }
        }
        out
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len(), "shape mismatch in apply");
        let p = self.field.prime;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &x)| (acc + a % p * (x % p)) % p)
            })
            .collect()
    }

    /// Stack side by side: [self | others...].
    pub fn hstack(parts: &[&Mat]) -> Mat {
        assert!(!parts.is_empty());
        let field = parts[0].field;
        let rows = parts[0].rows;
        assert!(parts.iter().all(|m| m.rows == rows), "row mismatch in hstack");
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zero(field, rows, cols);
        for i in 0..rows {
            let mut off = 0;
            for m in parts {
                for j in 0..m.cols {
                    out.set(i, off + j, m.get(i, j));
                }
                off += m.cols;
            }
        }
        out
    }

    /// Stack on top of each other.
    pub fn vstack(parts: &[&Mat]) -> Mat {
        assert!(!parts.is_empty());
        let field = parts[0].field;
        let cols = parts[0].cols;
        assert!(parts.iter().all(|m| m.cols == cols), "col mismatch in vstack");
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Mat::zero(field, rows, cols);
        let mut off = 0;
        for m in parts {
            for i in 0..m.rows {
                for j in 0..cols {
                    out.set(off + i, j, m.get(i, j));
                }
            }
            off += m.rows;
        }
        out
    }

    /// Block-diagonal assembly.
    pub fn block_diag(field: FieldSpec, parts: &[&Mat]) -> Mat {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zero(field, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for m in parts {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.set(ro + i, co + j, m.get(i, j));
                }
            }
            ro += m.rows;
            co += m.cols;
        }
        out
    }

    /// Gauss-Jordan elimination. Deterministic: pivots chosen leftmost, in
    /// the topmost unused row. The kernel basis columns are in one-to-one
    /// correspondence with the free columns, each normalized with entry 1 at
    /// its free coordinate.
    pub fn reduce(&self) -> Reduction {
        let p = self.field.prime;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let hit = (pivot_row..m.rows).find(|&r| m.get(r, col) != 0);
            let Some(hit) = hit else { continue };
            if hit != pivot_row {
                for j in 0..m.cols {
                    let (a, b) = (m.get(pivot_row, j), m.get(hit, j));
                    m.set(pivot_row, j, b);
                    m.set(hit, j, a);
                }
            }
            let inv = m.field.inv(m.get(pivot_row, col));
            for j in 0..m.cols {
                m.set(pivot_row, j, m.field.mul(m.get(pivot_row, j), inv));
            }
            for r in 0..m.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = (m.get(r, j) + (p - factor) * m.get(pivot_row, j)) % p;
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        let rank = pivots.len();
        let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
        let mut kernel = Mat::zero(self.field, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            kernel.set(fc, k, 1);
            for (prow, &pc) in pivots.iter().enumerate() {
                kernel.set(pc, k, self.field.neg(m.get(prow, fc)));
            }
        }
        Reduction { rank, rref: m, pivots, kernel }
    }

    pub fn rank(&self) -> usize {
        self.reduce().rank
    }

    /// Basis of the column space: the pivot columns of the original matrix.
    pub fn col_space_basis(&self) -> Mat {
        let red = self.reduce();
        let mut out = Mat::zero(self.field, self.rows, red.rank);
        for (k, &c) in red.pivots.iter().enumerate() {
            for r in 0..self.rows {
                out.set(r, k, self.get(r, c));
            }
        }
        out
    }

    /// Basis of the right null space, as columns.
    pub fn kernel_basis(&self) -> Mat {
        self.reduce().kernel
    }

    /// Basis of the left null space, as rows of the returned matrix.
    pub fn left_kernel_basis(&self) -> Mat {
        self.transpose().kernel_basis().transpose()
    }

    /// One solution of `self * x = b`, if consistent. Dimension mismatch is
    /// an error value, not a panic: callers feed externally supplied data
    /// through here.
    pub fn solve(&self, b: &[u64]) -> Result<Option<Vec<u64>>> {
        if b.len() != self.rows {
            return Err(Error::invalid(format!(
                "solve: rhs length {} does not match {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut bm = Mat::zero(self.field, self.rows, 1);
        for (i, &x) in b.iter().enumerate() {
            bm.set(i, 0, x);
        }
        Ok(self.solve_mat(&bm).map(|m| m.col(0)))
    }

    /// One solution X of `self * X = rhs`, if consistent (columnwise).
    pub fn solve_mat(&self, rhs: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, rhs.rows, "shape mismatch in solve_mat");
        let aug = Mat::hstack(&[self, rhs]);
        let red = aug.reduce();
        // Any pivot in the rhs block signals inconsistency.
        if red.pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Mat::zero(self.field, self.cols, rhs.cols);
        for (prow, &pc) in red.pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, red.rref.get(prow, self.cols + j));
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let inv = self.solve_mat(&Mat::identity(self.field, self.rows))?;
        if self.mul(&inv) == Mat::identity(self.field, self.rows) {
            Some(inv)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Matrix power; exponent 0 yields the identity.
    pub fn pow(&self, mut e: u64) -> Mat {
        assert_eq!(self.rows, self.cols, "pow needs a square matrix");
        let mut acc = Mat::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Canonical form of the column span: reduced row echelon form of the
    /// transpose with zero rows dropped. Equal spans give equal outputs, so
    /// this doubles as a memoization key for subspaces.
    pub fn col_span_canonical(&self) -> Mat {
        let red = self.transpose().reduce();
        let mut out = Mat::zero(self.field, red.rank, self.rows);
        for i in 0..red.rank {
            for j in 0..self.rows {
                out.set(i, j, red.rref.get(i, j));
            }
        }
        out
    }

    /// Concatenate the columns of `self` and `other` and return a basis of
    /// the combined span.
    pub fn span_sum(&self, other: &Mat) -> Mat {
        Mat::hstack(&[self, other]).col_space_basis()
    }

    /// Flat row-major entries, for serialization layers.
    pub fn entries(&self) -> &[u64] {
        &self.data
    }
}

/// All coefficient tuples of the given length over 0..p, in odometer order
/// starting from the all-zero tuple. Exhaustive searches over small
/// hom-spaces iterate through this.
pub fn all_tuples(p: u64, len: usize) -> impl Iterator<Item = Vec<u64>> {
    let mut cur = Some(vec![0u64; len]);
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let next = cur.as_mut().unwrap();
        let mut i = 0;
        loop {
            if i == len {
                cur = None;
                break;
            }
            next[i] += 1;
            if next[i] < p {
                break;
            }
            next[i] = 0;
            i += 1;
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldSpec {
        FieldSpec::new(5).unwrap()
    }

    /// Determinant by Laplace expansion; independent of `reduce`.
    fn det_naive(m: &Mat) -> u64 {
        let n = m.rows();
        assert_eq!(n, m.cols());
        if n == 0 {
            return 1;
        }
        let f = m.field();
        let mut acc = 0u64;
        for j in 0..n {
            let a = m.get(0, j);
            if a == 0 {
                continue;
            }
            let minor = Mat::from_fn(f, n - 1, n - 1, |r, c| {
                m.get(r + 1, if c < j { c } else { c + 1 })
            });
            let term = f.mul(a, det_naive(&minor));
            acc = if j % 2 == 0 { f.add(acc, term) } else { f.sub(acc, term) };
        }
        acc
    }

    /// Rank as the largest k admitting a k-by-k submatrix with nonzero
    /// determinant. Exponential, only for small oracle checks.
    fn rank_by_minors(m: &Mat) -> usize {
        let max = m.rows().min(m.cols());
        for k in (1..=max).rev() {
            for rs in subsets_of_size(m.rows(), k) {
                for cs in subsets_of_size(m.cols(), k) {
                    let sub = Mat::from_fn(m.field(), k, k, |r, c| m.get(rs[r], cs[c]));
                    if det_naive(&sub) != 0 {
                        return k;
                    }
                }
            }
        }
        0
    }

    fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                go(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        go(0, n, k, &mut cur, &mut out);
        out
    }

    #[test]
    fn field_spec_rejects_composites_and_huge_primes() {
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(4).is_err());
        assert!(FieldSpec::new(2).is_ok());
        assert!(FieldSpec::new(5).is_ok());
        assert!(FieldSpec::new(1 << 32).is_err());
    }

    #[test]
    fn field_arithmetic_basics() {
        let f = f5();
        assert_eq!(f.add(3, 4), 2);
        assert_eq!(f.sub(1, 3), 3);
        assert_eq!(f.mul(3, 4), 2);
        assert_eq!(f.neg(0), 0);
        for a in 1..5 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn reduce_identity_is_identity() {
        let id = Mat::identity(f5(), 4);
        let red = id.reduce();
        assert_eq!(red.rank, 4);
        assert_eq!(red.rref, id);
        assert_eq!(red.kernel.cols(), 0);
    }

    #[test]
    fn reduce_zero_matrix() {
        let z = Mat::zero(f5(), 3, 2);
        let red = z.reduce();
        assert_eq!(red.rank, 0);
        assert_eq!(red.kernel.cols(), 2);
        // Kernel of the zero map is everything.
        assert_eq!(red.kernel.rank(), 2);
    }

    #[test]
    fn reduce_empty_shapes() {
        for (r, c) in [(0, 0), (0, 3), (3, 0)] {
            let m = Mat::zero(f5(), r, c);
            let red = m.reduce();
            assert_eq!(red.rank, 0);
            assert_eq!(red.kernel.rows(), c);
            assert_eq!(red.kernel.cols(), c);
        }
    }

    #[test]
    fn rank_matches_exhaustive_minor_oracle_over_f5() {
        // Deterministic pseudo-random 4x4 samples; the oracle knows nothing
        // about Gaussian elimination.
        let f = f5();
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..40 {
            let m = Mat::from_fn(f, 4, 4, |_, _| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 33) % 5
            });
            assert_eq!(m.rank(), rank_by_minors(&m), "matrix {m:?}");
        }
    }

    #[test]
    fn kernel_vectors_are_killed_and_complete() {
        let f = f5();
        let m = Mat::from_rows(f, &[vec![1, 2, 3, 4], vec![2, 4, 1, 3]]).unwrap();
        let red = m.reduce();
        assert_eq!(red.rank + red.kernel.cols(), m.cols());
        let prod = m.mul(&red.kernel);
        assert!(prod.is_zero());
        assert_eq!(red.kernel.rank(), red.kernel.cols());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = f5();
        let a = Mat::from_rows(f, &[vec![1, 2], vec![2, 4]]).unwrap();
        // Columns span the line through (1,2); (1,1) is off it mod 5.
        let x = a.solve(&[1, 1]).unwrap();
        assert!(x.is_none(), "rhs off the column span must be inconsistent");
        let x = a.solve(&[1, 2]).unwrap().expect("consistent system");
        assert_eq!(a.apply(&x), vec![1, 2]);
        assert!(a.solve(&[1, 2, 3]).is_err(), "dimension mismatch is an error value");
    }

    #[test]
    fn inverse_round_trip() {
        let f = f5();
        let a = Mat::from_rows(f, &[vec![1, 2], vec![3, 4]]).unwrap();
        let inv = a.inverse().expect("det = -2 is nonzero mod 5");
        assert_eq!(a.mul(&inv), Mat::identity(f, 2));
        assert_eq!(inv.mul(&a), Mat::identity(f, 2));
        let sing = Mat::from_rows(f, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn col_span_canonical_identifies_equal_spans() {
        let f = f5();
        let b1 = Mat::from_rows(f, &[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        // Same span, different generating set (scaled and mixed).
        let b2 = Mat::from_rows(f, &[vec![2, 1], vec![1, 1], vec![3, 2]]).unwrap();
        assert_eq!(b1.col_span_canonical(), b2.col_span_canonical());
        let other = Mat::from_rows(f, &[vec![1, 0], vec![0, 1], vec![0, 0]]).unwrap();
        assert_ne!(b1.col_span_canonical(), other.col_span_canonical());
    }

    #[test]
    fn left_kernel_annihilates() {
        let f = f5();
        let m = Mat::from_rows(f, &[vec![1, 2], vec![2, 4], vec![0, 1]]).unwrap();
        let lk = m.left_kernel_basis();
        assert!(lk.mul(&m).is_zero());
        assert_eq!(lk.rows() + m.rank(), m.rows());
    }

    #[test]
    fn tuple_enumeration_is_exhaustive() {
        let tuples: Vec<Vec<u64>> = all_tuples(3, 2).collect();
        assert_eq!(tuples.len(), 9);
        assert_eq!(tuples[0], vec![0, 0]);
        assert_eq!(tuples[8], vec![2, 2]);
        let distinct: std::collections::BTreeSet<Vec<u64>> = tuples.into_iter().collect();
        assert_eq!(distinct.len(), 9);
        assert_eq!(all_tuples(5, 0).count(), 1, "one empty tuple");
    }
}
