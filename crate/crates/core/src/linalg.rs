//! Exact linear algebra over arbitrary-precision rationals.
//!
//! Elimination is fraction-free (Bareiss): rows are scaled to integers and
//! pivoting uses the two-step division-exact update, so intermediate entries
//! stay bounded by minors of the input instead of blowing up. Rational
//! divisions happen only once, when reading results off the echelon form.

use num::{BigInt, BigRational, One, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (maintained by `BigRational` itself).
pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Formats as `p/q`, or `p` when the denominator is one.
pub fn fmt_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `p/q` or `-p/q`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num: BigInt = p
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator {p:?}")))?;
    let den: BigInt = q
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator {q:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(num, den))
}

/// Which side a kernel is taken on: vectors `v` with `v·m = 0` (left) or
/// `m·v = 0` (right).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Dense row-major matrix over `Rat`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatQ {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Rat>,
}

impl MatQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatQ {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        MatQ {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                *m.at_mut(i, j) = f(i, j);
            }
        }
        m
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> MatQ {
        MatQ::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rat) -> MatQ {
        let mut m = self.clone();
        for e in &mut m.entries {
            *e *= c;
        }
        m
    }

    pub fn add(&self, other: &MatQ) -> MatQ {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (e, o) in m.entries.iter_mut().zip(&other.entries) {
            *e += o;
        }
        m
    }

    pub fn sub(&self, other: &MatQ) -> MatQ {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (e, o) in m.entries.iter_mut().zip(&other.entries) {
            *e -= o;
        }
        m
    }

    pub fn mul(&self, other: &MatQ) -> MatQ {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = MatQ::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        *out.at_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn row_mul(v: &[Rat], m: &MatQ) -> Vec<Rat> {
        assert_eq!(v.len(), m.rows, "shape mismatch in row_mul");
        let mut out = vec![Rat::zero(); m.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..m.cols {
                let b = m.at(i, j);
                if !b.is_zero() {
                    out[j] += a * b;
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn mul_col(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "shape mismatch in mul_col");
        (0..self.rows)
            .map(|i| {
                let mut s = Rat::zero();
                for j in 0..self.cols {
                    let a = self.at(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        s += a * &v[j];
                    }
                }
                s
            })
            .collect()
    }

    pub fn vstack(top: &MatQ, bottom: &MatQ) -> MatQ {
        assert_eq!(top.cols, bottom.cols);
        let mut rows = top.rows_vec();
        rows.extend(bottom.rows_vec());
        MatQ::from_rows(rows)
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[&MatQ]) -> MatQ {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = MatQ::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    *out.at_mut(r0 + i, c0 + j) = b.at(i, j).clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub mat: MatQ,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Fraction-free elimination to integer row echelon form, then one rational
/// normalization pass to RREF.
pub fn rref(m: &MatQ) -> Rref {
    // Scale each row to integers.
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let mut lcm = BigInt::one();
            for e in row {
                lcm = num::integer::lcm(lcm, e.denom().clone());
            }
            row.iter()
                .map(|e| e.numer() * (&lcm / e.denom()))
                .collect()
        })
        .collect();

    let ncols = m.cols;
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        // Find a pivot row; prefer short entries.
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                if i != r {
                    // Still must scale untouched rows below to keep the
                    // Bareiss invariant; rows above are already reduced.
                    if i > r {
                        for j in 0..ncols {
                            let v = &rows[i][j] * &pivot;
                            rows[i][j] = &v / &prev;
                        }
                    }
                }
                continue;
            }
            if i < r {
                continue; // back-substitution happens in the rational pass
            }
            for j in 0..ncols {
                if j == c {
                    continue;
                }
                let v = &rows[i][j] * &pivot - &rows[i][c] * &rows[r][j];
                rows[i][j] = &v / &prev;
            }
            rows[i][c] = BigInt::zero();
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }

    // Rational pass: normalize pivots to 1 and clear entries above them.
    let mut q = MatQ::zeros(rows.len(), ncols);
    for (i, row) in rows.iter().enumerate() {
        for j in 0..ncols {
            *q.at_mut(i, j) = Rat::from_integer(row[j].clone());
        }
    }
    for (i, &c) in pivots.iter().enumerate() {
        let inv = q.at(i, c).clone();
        for j in 0..ncols {
            let v = q.at(i, j) / &inv;
            *q.at_mut(i, j) = v;
        }
        for k in 0..i {
            let f = q.at(k, c).clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..ncols {
                let v = q.at(k, j) - &f * q.at(i, j);
                *q.at_mut(k, j) = v;
            }
        }
    }
    Rref { mat: q, pivots }
}

pub fn rank(m: &MatQ) -> usize {
    rref(m).rank()
}

/// Basis of the kernel, as vectors `v` with `v·m = 0` (left) or `m·v = 0`
/// (right). The count always equals the corank on the chosen side.
pub fn kernel_basis(m: &MatQ, side: Side) -> Vec<Vec<Rat>> {
    let work = match side {
        Side::Right => m.clone(),
        Side::Left => m.transpose(),
    };
    let Rref { mat, pivots } = rref(&work);
    let n = work.cols;
    let mut basis = Vec::new();
    let pivot_set: Vec<Option<usize>> = {
        let mut v = vec![None; n];
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = Some(i);
        }
        v
    };
    for free in 0..n {
        if pivot_set[free].is_some() {
            continue;
        }
        let mut vec = vec![Rat::zero(); n];
        vec[free] = Rat::one();
        for (j, p) in pivot_set.iter().enumerate() {
            if let Some(i) = p {
                vec[j] = -mat.at(*i, free).clone();
            }
        }
        basis.push(vec);
    }
    basis
}

/// Basis of the row span of `vs`, in echelon form.
pub fn span_basis(vs: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if vs.is_empty() {
        return Vec::new();
    }
    let m = MatQ::from_rows(vs.to_vec());
    let r = rref(&m);
    (0..r.rank()).map(|i| r.mat.row(i).to_vec()).collect()
}

/// Exact membership of `v` in the span of `vs`.
pub fn span_membership(vs: &[Vec<Rat>], v: &[Rat]) -> Result<bool> {
    if let Some(first) = vs.first() {
        if first.len() != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "span vectors have length {}, query has length {}",
                first.len(),
                v.len()
            )));
        }
    }
    let base = span_basis(vs);
    let mut with = base.clone();
    with.push(v.to_vec());
    Ok(span_basis(&with).len() == base.len())
}

/// Basis of a complement of the span of `vs` inside the ambient space: the
/// standard basis vectors at non-pivot coordinates of the echelonized span.
pub fn span_complement(vs: &[Vec<Rat>], ambient: usize) -> Vec<Vec<Rat>> {
    let pivots: Vec<usize> = if vs.is_empty() {
        Vec::new()
    } else {
        rref(&MatQ::from_rows(vs.to_vec())).pivots
    };
    (0..ambient)
        .filter(|j| !pivots.contains(j))
        .map(|j| {
            let mut e = vec![Rat::zero(); ambient];
            e[j] = Rat::one();
            e
        })
        .collect()
}

/// One exact solution of `m·x = b` (column convention), if any.
pub fn solve(m: &MatQ, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(b.len(), m.rows, "rhs length must match rows");
    let mut aug = MatQ::zeros(m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            *aug.at_mut(i, j) = m.at(i, j).clone();
        }
        *aug.at_mut(i, m.cols) = b[i].clone();
    }
    let r = rref(&aug);
    if r.pivots.contains(&m.cols) {
        return None; // inconsistent
    }
    let mut x = vec![Rat::zero(); m.cols];
    for (i, &c) in r.pivots.iter().enumerate() {
        x[c] = r.mat.at(i, m.cols).clone();
    }
    Some(x)
}

/// One exact solution of `x·m = b` (row convention), if any.
pub fn solve_left(m: &MatQ, b: &[Rat]) -> Option<Vec<Rat>> {
    solve(&m.transpose(), b)
}

/// Coordinates of each row of `targets` in the row basis `basis`, if all lie
/// in its span. Used to restrict module actions to invariant subspaces.
pub fn coordinates_in(basis: &[Vec<Rat>], targets: &[Vec<Rat>]) -> Option<MatQ> {
    if basis.is_empty() {
        return if targets.iter().all(|t| t.iter().all(Zero::is_zero)) {
            Some(MatQ::zeros(targets.len(), 0))
        } else {
            None
        };
    }
    let bmat = MatQ::from_rows(basis.to_vec()).transpose();
    let mut out = MatQ::zeros(targets.len(), basis.len());
    for (i, t) in targets.iter().enumerate() {
        let x = solve(&bmat, t)?;
        for (j, v) in x.into_iter().enumerate() {
            *out.at_mut(i, j) = v;
        }
    }
    Some(out)
}

/// Incrementally maintained row echelon span, for membership-heavy loops.
#[derive(Debug, Clone)]
pub struct IncrementalSpan {
    width: usize,
    /// normalized echelon rows, sorted by pivot
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl IncrementalSpan {
    pub fn new(width: usize) -> Self {
        IncrementalSpan {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.width);
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (t, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *t -= &c * r;
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].clone();
        for x in &mut r {
            *x /= &inv;
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    let mut s = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

pub fn vec_is_zero(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Inverse of a square matrix, if invertible.
pub fn inverse(m: &MatQ) -> Option<MatQ> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut aug = MatQ::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            *aug.at_mut(i, j) = m.at(i, j).clone();
        }
        *aug.at_mut(i, n + i) = Rat::one();
    }
    let r = rref(&aug);
    if r.pivots.len() < n || r.pivots[n - 1] >= n {
        return None;
    }
    Some(MatQ::from_fn(n, n, |i, j| r.mat.at(i, n + j).clone()))
}

/// Determinant by fraction-free elimination.
pub fn det(m: &MatQ) -> Rat {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    if n == 0 {
        return Rat::one();
    }
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    let mut denom = BigInt::one();
    for i in 0..n {
        let row = m.row(i);
        let mut lcm = BigInt::one();
        for e in row {
            lcm = num::integer::lcm(lcm, e.denom().clone());
        }
        denom *= &lcm;
        rows.push(row.iter().map(|e| e.numer() * (&lcm / e.denom())).collect());
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !rows[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            rows.swap(c, p);
            sign = -sign;
        }
        let pivot = rows[c][c].clone();
        for i in c + 1..n {
            for j in c + 1..n {
                let v = &rows[i][j] * &pivot - &rows[i][c] * &rows[c][j];
                rows[i][j] = &v / &prev;
            }
            rows[i][c] = BigInt::zero();
        }
        prev = pivot;
    }
    let mut d = Rat::new(rows[n - 1][n - 1].clone(), denom);
    if sign < 0 {
        d = -d;
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn kernel_of_zero_matrix_is_standard_basis() {
        let m = MatQ::zeros(2, 2);
        let k = kernel_basis(&m, Side::Right);
        assert_eq!(k, vec![v(&[1, 0]), v(&[0, 1])]);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let m = MatQ::identity(3);
        assert!(kernel_basis(&m, Side::Right).is_empty());
        assert!(kernel_basis(&m, Side::Left).is_empty());
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let m = MatQ::from_int_rows(&[&[1, 2], &[2, 4]]);
        let k = kernel_basis(&m, Side::Right);
        assert_eq!(k.len(), 1);
        // proportional to (2, -1)
        let kv = &k[0];
        assert_eq!(kv[0].clone() * rat_int(-1), kv[1].clone() * rat_int(2));
        assert!(vec_is_zero(&m.mul_col(kv)));
    }

    #[test]
    fn span_membership_examples() {
        let e1 = v(&[1, 0]);
        let e2 = v(&[0, 1]);
        assert!(span_membership(&[e1.clone()], &e1).unwrap());
        assert!(!span_membership(&[e1.clone()], &e2).unwrap());
        let comp = span_complement(&[e1.clone()], 2);
        assert_eq!(comp, vec![e2.clone()]);
        assert!(span_membership(&[v(&[1, 2]), v(&[2, 4])], &v(&[3, 6])).unwrap());
        assert!(span_membership(&[e1], &v(&[1])).is_err());
    }

    #[test]
    fn solve_examples() {
        let id = MatQ::identity(2);
        assert_eq!(solve(&id, &v(&[5, -3])), Some(v(&[5, -3])));
        let m = MatQ::from_int_rows(&[&[1, 1]]);
        let x = solve(&m, &v(&[2])).unwrap();
        assert_eq!(x[0].clone() + &x[1], rat_int(2));
        let m = MatQ::from_int_rows(&[&[1], &[1]]);
        assert_eq!(solve(&m, &v(&[1, 2])), None);
    }

    #[test]
    fn inverse_and_det() {
        let m = MatQ::from_int_rows(&[&[2, 1], &[1, 1]]);
        assert_eq!(det(&m), rat_int(1));
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), MatQ::identity(2));
        let sing = MatQ::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert!(inverse(&sing).is_none());
        assert_eq!(det(&sing), rat_int(0));
    }

    #[test]
    fn rational_entries_round_trip() {
        assert_eq!(fmt_rat(&rat(3, 6)), "1/2");
        assert_eq!(fmt_rat(&rat(-4, 2)), "-2");
        assert_eq!(parse_rat("7/3").unwrap(), rat(7, 3));
        assert_eq!(parse_rat("-5").unwrap(), rat_int(-5));
        assert!(parse_rat("1/0").is_err());
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in 1usize..6, cols in 1usize..6, seed in any::<u64>()) {
            use rand::{RngExt, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let m = MatQ::from_fn(rows, cols, |_, _| rat_int(rng.random_range(-4..5)));
            let k = kernel_basis(&m, Side::Right);
            prop_assert_eq!(rank(&m) + k.len(), cols);
            // every kernel vector and every random combination multiplies to zero
            for kv in &k {
                prop_assert!(vec_is_zero(&m.mul_col(kv)));
            }
            if !k.is_empty() {
                let mut combo = vec![Rat::zero(); cols];
                for kv in &k {
                    let c = rat_int(rng.random_range(-3..4));
                    for (t, x) in combo.iter_mut().zip(kv) {
                        *t += &c * x;
                    }
                }
                prop_assert!(vec_is_zero(&m.mul_col(&combo)));
            }
        }

        #[test]
        fn complement_spans_whole_space(rows in 1usize..5, cols in 1usize..5, seed in any::<u64>()) {
            use rand::{RngExt, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let vs: Vec<Vec<Rat>> = (0..rows)
                .map(|_| (0..cols).map(|_| rat_int(rng.random_range(-3..4))).collect())
                .collect();
            let mut all = span_basis(&vs);
            all.extend(span_complement(&vs, cols));
            prop_assert_eq!(span_basis(&all).len(), cols);
        }
    }
}
