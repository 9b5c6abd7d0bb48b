//! Euler-form arithmetic on the Grothendieck group: the bilinear form from
//! the Cartan matrix, the quadratic form `chi`, the rank-2 radical lattice
//! with its canonical vectors `h0`, `hinf`, slopes, the finite set Omega of
//! root cosets, and the indecomposable-dimension-vector predicate.
//!
//! Omega is computed by enumerating the roots of the induced form on
//! `K_0 / rad chi`, which is positive definite for tubular algebras; the
//! finiteness certificate is the positive definiteness itself, not a search
//! heuristic.

use num::{One, Signed, Zero};

use crate::algebra::{cartan_matrix, AlgebraPresentation};
use crate::linalg::{self, rat_int, MatQ, Rat};
use crate::module::DimVector;
use crate::{Error, Result};

/// The slope of a vector: `-(g0 . x) / (ginf . x)` in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SlopeValue {
    Finite(Rat),
    Infinity,
    /// both pairings vanish
    Undefined,
}

impl SlopeValue {
    pub fn as_string(&self) -> String {
        match self {
            SlopeValue::Finite(q) => linalg::fmt_rat(q),
            SlopeValue::Infinity => "inf".to_string(),
            SlopeValue::Undefined => "undefined".to_string(),
        }
    }
}

/// Euler data of a tubular canonical algebra, computed once and shared.
#[derive(Debug, Clone)]
pub struct EulerData {
    pub algebra_name: String,
    pub n: usize,
    pub cartan: Vec<Vec<i64>>,
    /// `<x,y> = x E y^T`.
    pub euler_matrix: Vec<Vec<i64>>,
    /// `S = E + E^T`; the radical is its integer kernel.
    pub symmetrized: Vec<Vec<i64>>,
    /// Basis of `rad chi` as a pure sublattice, in Hermite normal form.
    pub radical_basis: Vec<DimVector>,
    pub h0: DimVector,
    pub hinf: DimVector,
    /// `<h0, x> = g0 . x` and `<hinf, x> = ginf . x`.
    pub g0: DimVector,
    pub ginf: DimVector,
    /// `(<h0,hinf>, -<hinf,h0>)`, recorded for diagnostics.
    pub band_bounds: (i64, i64),
    /// Rows of `U`: quotient coordinates of `x` are the last `n-2` entries
    /// of `U x` (Smith form of the radical inclusion).
    quotient_u: Vec<Vec<i64>>,
    /// Lift of quotient coordinates: columns `2..n` of `U^{-1}`.
    lift_cols: Vec<Vec<i64>>,
    /// Gram matrix of the induced form on the quotient (rational).
    quotient_gram: MatQ,
    pub adjacency: Vec<Vec<usize>>,
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn mat_vec(m: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    m.iter().map(|row| dot(row, x)).collect()
}

fn vec_mat(x: &[i64], m: &[Vec<i64>]) -> Vec<i64> {
    let n = m[0].len();
    (0..n).map(|j| (0..x.len()).map(|i| x[i] * m[i][j]).sum()).collect()
}

impl EulerData {
    pub fn new(alg: &AlgebraPresentation) -> Result<EulerData> {
        let n = alg.vertex_count();
        let cmat = cartan_matrix(alg);
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| rat_to_i64(cmat.at(i, j))).collect())
            .collect();
        let einv = linalg::inverse(&cmat.transpose()).ok_or_else(|| {
            Error::Validation("Cartan matrix is singular".into())
        })?;
        let euler_matrix: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| rat_to_i64(einv.at(i, j))).collect())
            .collect();
        let mut symmetrized = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                symmetrized[i][j] = euler_matrix[i][j] + euler_matrix[j][i];
            }
        }

        // Radical lattice: integer kernel of S, saturated (S has integer
        // entries and the rational kernel of an integer matrix meets Z^n in
        // a pure sublattice).
        let smat = MatQ::from_fn(n, n, |i, j| rat_int(symmetrized[i][j]));
        let ker = linalg::kernel_basis(&smat, linalg::Side::Left);
        if ker.len() != 2 {
            return Err(Error::NotTubular);
        }
        let rad_rows: Vec<DimVector> = saturate_lattice(&ker, n);
        let radical_basis = hnf_rows(&rad_rows);

        // chi must be positive semidefinite: the quotient Gram must be
        // positive definite (checked below by principal minors).

        // Canonical radical vectors: the primitive positive radical vector
        // vanishing at the last vertex (h0), and at vertex 0 (hinf).
        let h0 = primitive_radical_with_zero_at(&radical_basis, n - 1)?;
        let hinf = primitive_radical_with_zero_at(&radical_basis, 0)?;
        let g0 = vec_mat(&h0, &euler_matrix);
        let ginf = vec_mat(&hinf, &euler_matrix);
        let band_a = dot(&g0, &hinf);
        let band_b = -dot(&ginf, &h0);

        // Smith form of the radical inclusion for quotient coordinates.
        let (u, uinv) = smith_u_for_radical(&radical_basis, n)?;
        let lift_cols: Vec<Vec<i64>> = (2..n)
            .map(|c| (0..n).map(|r| uinv[r][c]).collect())
            .collect();
        // Gram of chi on the quotient: G[a][b] = L_a (S/2) L_b
        let qdim = n - 2;
        let quotient_gram = MatQ::from_fn(qdim, qdim, |a, b| {
            let sv = mat_vec(&symmetrized, &lift_cols[b]);
            Rat::new(dot(&lift_cols[a], &sv).into(), 2.into())
        });
        if !is_positive_definite(&quotient_gram) {
            return Err(Error::NotTubular);
        }

        let adjacency = alg.adjacency();
        Ok(EulerData {
            algebra_name: alg.name.clone(),
            n,
            cartan,
            euler_matrix,
            symmetrized,
            radical_basis,
            h0,
            hinf,
            g0,
            ginf,
            band_bounds: (band_a, band_b),
            quotient_u: u,
            lift_cols,
            quotient_gram,
            adjacency,
        })
    }

    pub fn pair(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        if x.len() != self.n || y.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "vectors must have length {}",
                self.n
            )));
        }
        Ok(dot(x, &mat_vec(&self.euler_matrix, y)))
    }

    pub fn chi(&self, x: &[i64]) -> i64 {
        dot(x, &mat_vec(&self.euler_matrix, x))
    }

    pub fn is_radical(&self, x: &[i64]) -> bool {
        vec_mat(x, &self.symmetrized).iter().all(|&v| v == 0)
    }

    pub fn slope_of(&self, x: &[i64]) -> SlopeValue {
        let num = -dot(&self.g0, x);
        let den = dot(&self.ginf, x);
        if den == 0 {
            if num == 0 {
                SlopeValue::Undefined
            } else {
                SlopeValue::Infinity
            }
        } else {
            SlopeValue::Finite(Rat::new(num.into(), den.into()))
        }
    }

    /// Canonical representative of `x + rad chi` (HNF reduction).
    pub fn coset_reduce(&self, x: &[i64]) -> DimVector {
        let mut v = x.to_vec();
        for row in &self.radical_basis {
            let c = row.iter().position(|&e| e != 0).expect("nonzero basis row");
            let p = row[c];
            debug_assert!(p > 0);
            let q = v[c].div_euclid(p);
            if q != 0 {
                for (t, r) in v.iter_mut().zip(row) {
                    *t -= q * r;
                }
            }
        }
        v
    }

    /// Positivity and support-connectivity of a dimension vector.
    pub fn is_positive_connected(&self, x: &[i64]) -> bool {
        if x.iter().any(|&v| v < 0) || x.iter().all(|&v| v == 0) {
            return false;
        }
        let support: Vec<usize> = (0..self.n).filter(|&i| x[i] > 0).collect();
        let mut seen = vec![false; self.n];
        let mut stack = vec![support[0]];
        seen[support[0]] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if x[w] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        support.into_iter().all(|v| seen[v])
    }

    /// Whether `x` is the dimension vector of a finite-dimensional
    /// indecomposable: positive, connected and `chi(x)` is 0 or 1.
    pub fn is_indec_dimvector(&self, x: &[i64]) -> bool {
        if x.len() != self.n {
            return false;
        }
        let c = self.chi(x);
        (c == 0 || c == 1) && self.is_positive_connected(x)
    }

    /// Quotient coordinates of `x` modulo the radical.
    pub fn quotient_coords(&self, x: &[i64]) -> Vec<i64> {
        let ux = mat_vec(&self.quotient_u, x);
        ux[2..].to_vec()
    }

    fn quotient_chi(&self, q: &[i64]) -> Rat {
        let qr: Vec<Rat> = q.iter().map(|&v| rat_int(v)).collect();
        let gv = self.quotient_gram.mul_col(&qr);
        linalg::dot(&qr, &gv)
    }

    fn lift(&self, q: &[i64]) -> DimVector {
        let mut x = vec![0i64; self.n];
        for (qc, col) in q.iter().zip(&self.lift_cols) {
            for (t, c) in x.iter_mut().zip(col) {
                *t += qc * c;
            }
        }
        x
    }

    /// The finite set of root-coset representatives: all solutions of
    /// `chi = 1` on `K_0 / rad chi`, lifted and coset-reduced.
    ///
    /// `radius_factor` scales the enumeration radius: vectors with
    /// `chi <= radius_factor` are enumerated (Fincke-Pohst pruning on the
    /// exact rational Cholesky decomposition) and the roots kept, so the
    /// result must be independent of the factor.
    pub fn compute_omega_with_radius(&self, radius_factor: u32) -> Vec<DimVector> {
        let mut out = Vec::new();
        let budget = rat_int(radius_factor as i64);
        enumerate_short_vectors(&self.quotient_gram, &budget, &mut |q| {
            if self.quotient_chi(q) == Rat::one() {
                out.push(self.coset_reduce(&self.lift(q)));
            }
        });
        out.sort();
        out.dedup();
        out
    }

    pub fn compute_omega(&self) -> Vec<DimVector> {
        self.compute_omega_with_radius(1)
    }
}

fn rat_to_i64(r: &Rat) -> i64 {
    assert!(r.denom().is_one(), "expected integer entry");
    let n = r.numer();
    i64::try_from(n.clone()).expect("entry fits i64")
}

/// Saturation: rational kernel vectors scaled to a basis of the pure
/// integer sublattice (clear denominators, then divide rows by content and
/// HNF-reduce; purity follows because the lattice is `ker(S) cap Z^n`).
fn saturate_lattice(rational_basis: &[Vec<Rat>], n: usize) -> Vec<DimVector> {
    let mut rows = Vec::new();
    for v in rational_basis {
        let mut lcm: num::BigInt = 1.into();
        for e in v {
            lcm = num::integer::lcm(lcm, e.denom().clone());
        }
        let ints: Vec<i64> = v
            .iter()
            .map(|e| i64::try_from(e.numer() * (&lcm / e.denom())).expect("fits"))
            .collect();
        let g = ints.iter().fold(0i64, |a, &b| num::integer::gcd(a, b.abs()));
        rows.push(ints.iter().map(|&x| x / g.max(1)).collect::<Vec<i64>>());
    }
    debug_assert!(rows.iter().all(|r| r.len() == n));
    rows
}

/// Row Hermite normal form for a full-rank set of integer rows (small
/// matrices only): positive pivots, entries above pivots reduced.
fn hnf_rows(rows: &[DimVector]) -> Vec<DimVector> {
    let mut m: Vec<DimVector> = rows.to_vec();
    let ncols = m[0].len();
    let mut r = 0;
    for c in 0..ncols {
        // gcd-reduce column c among rows r..
        loop {
            let mut idx: Vec<usize> = (r..m.len()).filter(|&i| m[i][c] != 0).collect();
            if idx.is_empty() {
                break;
            }
            idx.sort_by_key(|&i| m[i][c].abs());
            let p = idx[0];
            m.swap(r, p);
            if m[r][c] < 0 {
                for e in &mut m[r] {
                    *e = -*e;
                }
            }
            let mut done = true;
            let pivot = m[r][c];
            for i in r + 1..m.len() {
                let q = m[i][c].div_euclid(pivot);
                if q != 0 {
                    for j in 0..ncols {
                        m[i][j] -= q * m[r][j];
                    }
                }
                if m[i][c] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[r][c] != 0 {
            // reduce above
            let pivot = m[r][c];
            for i in 0..r {
                let q = m[i][c].div_euclid(pivot);
                if q != 0 {
                    for j in 0..ncols {
                        m[i][j] -= q * m[r][j];
                    }
                }
            }
            r += 1;
            if r == m.len() {
                break;
            }
        }
    }
    m
}

fn primitive_radical_with_zero_at(rad: &[DimVector], coord: usize) -> Result<DimVector> {
    let [a, b] = rad else {
        return Err(Error::NotTubular);
    };
    // integer combinations s*a + t*b with zero at `coord`, primitive
    let (pa, pb) = (a[coord], b[coord]);
    let (s, t) = if pa == 0 && pb == 0 {
        return Err(Error::NotTubular);
    } else if pa == 0 {
        (1i64, 0i64)
    } else if pb == 0 {
        (0, 1)
    } else {
        let g = num::integer::gcd(pa, pb);
        (pb / g, -pa / g)
    };
    let mut v: DimVector = a.iter().zip(b).map(|(x, y)| s * x + t * y).collect();
    let g = v.iter().fold(0i64, |acc, &x| num::integer::gcd(acc, x.abs()));
    if g > 1 {
        for e in &mut v {
            *e /= g;
        }
    }
    if v.iter().sum::<i64>() < 0 {
        for e in &mut v {
            *e = -*e;
        }
    }
    if v.iter().any(|&x| x < 0) {
        return Err(Error::NotTubular);
    }
    Ok(v)
}

/// Smith-style transform for the radical sublattice: returns `(U, U^{-1})`
/// with `U` unimodular such that the radical is spanned by the first two
/// columns of `U^{-1}` (purity makes the invariant factors 1).
fn smith_u_for_radical(rad: &[DimVector], n: usize) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    // B: n x 2 with the radical basis as columns. Row-reduce U B to
    // (I_2; 0) by unimodular row operations, tracking U.
    let mut b: Vec<Vec<i64>> = (0..n).map(|r| vec![rad[0][r], rad[1][r]]).collect();
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for col in 0..2 {
        loop {
            let mut idx: Vec<usize> = (col..n).filter(|&i| b[i][col] != 0).collect();
            if idx.is_empty() {
                return Err(Error::NotTubular);
            }
            idx.sort_by_key(|&i| b[i][col].abs());
            let p = idx[0];
            b.swap(col, p);
            u.swap(col, p);
            let pivot = b[col][col];
            let mut done = true;
            for i in 0..n {
                if i == col {
                    continue;
                }
                let q = b[i][col].div_euclid(pivot);
                if q != 0 {
                    for j in 0..2 {
                        b[i][j] -= q * b[col][j];
                    }
                    for j in 0..n {
                        u[i][j] -= q * u[col][j];
                    }
                }
                if b[i][col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if b[col][col] < 0 {
            for j in 0..2 {
                b[col][j] = -b[col][j];
            }
            for j in 0..n {
                u[col][j] = -u[col][j];
            }
        }
    }
    if b[0][0] != 1 || b[1][1] != 1 || b[0][1] != 0 {
        // purity failed (cannot happen for a saturated kernel)
        return Err(Error::NotTubular);
    }
    // U^{-1} by rational inversion (entries stay small).
    let umat = MatQ::from_fn(n, n, |i, j| rat_int(u[i][j]));
    let uinv = linalg::inverse(&umat).ok_or(Error::NotTubular)?;
    let uinv_i: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| rat_to_i64(uinv.at(i, j))).collect())
        .collect();
    Ok((u, uinv_i))
}

fn is_positive_definite(g: &MatQ) -> bool {
    // leading principal minors all positive
    for k in 1..=g.rows {
        let sub = MatQ::from_fn(k, k, |i, j| g.at(i, j).clone());
        if linalg::det(&sub) <= Rat::zero() {
            return false;
        }
    }
    true
}

/// All integer vectors with `q G q^T <= budget` for positive definite `G`,
/// via the exact rational Cholesky form `sum_i d_i (q_i + sum_{j>i} r_ij q_j)^2`.
fn enumerate_short_vectors(g: &MatQ, budget: &Rat, f: &mut impl FnMut(&[i64])) {
    let n = g.rows;
    // d, r: G = R^T D R with R unit upper triangular.
    let mut a = g.clone();
    let mut d = vec![Rat::zero(); n];
    let mut r = MatQ::identity(n);
    for i in 0..n {
        d[i] = a.at(i, i).clone();
        assert!(d[i] > Rat::zero(), "form not positive definite");
        for j in i + 1..n {
            let v = a.at(i, j) / &d[i];
            *r.at_mut(i, j) = v;
        }
        for k in i + 1..n {
            for l in i + 1..n {
                let v = a.at(k, l) - r.at(i, k) * r.at(i, l) * &d[i];
                *a.at_mut(k, l) = v;
            }
        }
    }
    // enumerate from the last coordinate inward
    let mut q = vec![0i64; n];
    fn rec(
        level: isize,
        n: usize,
        d: &[Rat],
        r: &MatQ,
        budget: Rat,
        q: &mut Vec<i64>,
        f: &mut impl FnMut(&[i64]),
    ) {
        if level < 0 {
            f(q);
            return;
        }
        let i = level as usize;
        // center: c = sum_{j>i} r_ij q_j
        let mut c = Rat::zero();
        for j in i + 1..n {
            if q[j] != 0 {
                c += r.at(i, j) * rat_int(q[j]);
            }
        }
        // d_i (q_i + c)^2 <= budget; scan outward from the nearest integers
        let start = (-c.clone()).floor().numer().clone();
        let start: i64 = i64::try_from(start).expect("fits");
        for dir in [1i64, -1i64] {
            let mut v = if dir == 1 { start + 1 } else { start };
            loop {
                let t = rat_int(v) + &c;
                let used = &d[i] * &t * &t;
                if used > budget {
                    break;
                }
                q[i] = v;
                rec(
                    level - 1,
                    n,
                    d,
                    r,
                    budget.clone() - used,
                    q,
                    f,
                );
                v += dir;
            }
        }
        q[i] = 0;
    }
    rec(n as isize - 1, n, &d, &r, budget.clone(), &mut q, f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::canonical_2222;

    fn euler() -> EulerData {
        EulerData::new(&canonical_2222(2)).unwrap()
    }

    #[test]
    fn euler_matrix_matches_closed_formula() {
        let e = euler();
        // <x,y> = sum x_i y_i - y_0 (x_1+..+x_4) - x_inf (y_1+..+y_4) + 2 x_inf y_0
        let closed = |x: &[i64], y: &[i64]| -> i64 {
            let mids_x: i64 = x[1..5].iter().sum();
            let mids_y: i64 = y[1..5].iter().sum();
            let diag: i64 = (0..6).map(|i| x[i] * y[i]).sum();
            diag - y[0] * mids_x - x[5] * mids_y + 2 * x[5] * y[0]
        };
        use rand::{RngExt, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let x: Vec<i64> = (0..6).map(|_| rng.random_range(-30..31)).collect();
            let y: Vec<i64> = (0..6).map(|_| rng.random_range(-30..31)).collect();
            assert_eq!(e.pair(&x, &y).unwrap(), closed(&x, &y));
        }
    }

    #[test]
    fn chi_identity_four_chi_equals_sum_of_squares() {
        let e = euler();
        use rand::{RngExt, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let x: Vec<i64> = (0..6).map(|_| rng.random_range(-20..21)).collect();
            let sq: i64 = (1..5).map(|i| (2 * x[i] - x[0] - x[5]).pow(2)).sum();
            assert_eq!(4 * e.chi(&x), sq);
        }
    }

    #[test]
    fn canonical_radical_vectors() {
        let e = euler();
        assert_eq!(e.h0, vec![2, 1, 1, 1, 1, 0]);
        assert_eq!(e.hinf, vec![0, 1, 1, 1, 1, 2]);
        assert!(e.is_radical(&e.h0));
        assert!(e.is_radical(&e.hinf));
        assert_eq!(e.chi(&e.h0), 0);
        assert_eq!(e.chi(&e.hinf), 0);
        assert_eq!(e.band_bounds, (4, 4));
    }

    #[test]
    fn claim_one_functional_is_symbolically_correct() {
        let e = euler();
        let x = [1i64, 0, 1, 1, 1, 1];
        let functional = vec_mat(&x, &e.euler_matrix);
        assert_eq!(functional, vec![0, -1, 0, 0, 0, 1]);
        let p = [2i64, 1, 1, 1, 1, 1];
        assert_eq!(vec_mat(&p, &e.euler_matrix), vec![0, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn slope_anchors_and_claim_three() {
        let e = euler();
        assert_eq!(e.slope_of(&e.h0), SlopeValue::Finite(rat_int(0)));
        assert_eq!(e.slope_of(&e.hinf), SlopeValue::Infinity);
        assert_eq!(
            e.slope_of(&[2, 1, 1, 1, 1, 1]),
            SlopeValue::Finite(rat_int(0))
        );
        assert_eq!(e.slope_of(&[1, 1, 1, 1, 1, 2]), SlopeValue::Infinity);
        for n in 1..=50i64 {
            let x = [n, n + 1, n, n, n, n + 1];
            assert_eq!(e.chi(&x), 1);
            assert_eq!(
                e.slope_of(&x),
                SlopeValue::Finite(crate::linalg::rat(2 * n + 1, 2 * n - 1))
            );
        }
        // slope(a h0 + b hinf) = b/a
        for a in 1..=6i64 {
            for b in 1..=6i64 {
                let x: Vec<i64> = e
                    .h0
                    .iter()
                    .zip(&e.hinf)
                    .map(|(p, q)| a * p + b * q)
                    .collect();
                assert_eq!(e.slope_of(&x), SlopeValue::Finite(crate::linalg::rat(b, a)));
            }
        }
    }

    #[test]
    fn radical_rank_two_and_coset_invariance() {
        let e = euler();
        assert_eq!(e.radical_basis.len(), 2);
        use rand::{RngExt, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let x: Vec<i64> = (0..6).map(|_| rng.random_range(-9..10)).collect();
            let shifted: Vec<i64> = x.iter().zip(&e.h0).map(|(a, b)| a + b).collect();
            assert_eq!(e.coset_reduce(&x), e.coset_reduce(&shifted));
            let shifted: Vec<i64> = x.iter().zip(&e.hinf).map(|(a, b)| a + b).collect();
            assert_eq!(e.coset_reduce(&x), e.coset_reduce(&shifted));
        }
    }

    #[test]
    fn omega_has_24_cosets_and_contains_the_slope_one_root() {
        let e = euler();
        let omega = e.compute_omega();
        assert_eq!(omega.len(), 24);
        let x = [1i64, 0, 1, 1, 1, 1];
        assert_eq!(e.chi(&x), 1);
        let r = e.coset_reduce(&x);
        assert!(omega.contains(&r));
        // stability under radius doubling
        assert_eq!(omega, e.compute_omega_with_radius(2));
    }

    #[test]
    fn indecomposable_dimension_vector_predicate() {
        let e = euler();
        assert!(e.is_indec_dimvector(&[0, 1, 0, 0, 0, 0]));
        assert!(e.is_indec_dimvector(&[2, 2, 2, 2, 2, 2]));
        assert!(e.is_indec_dimvector(&[1, 0, 1, 1, 1, 1]));
        // disconnected support: 0 and inf are not adjacent
        assert!(!e.is_indec_dimvector(&[1, 0, 0, 0, 0, 1]));
        assert!(!e.is_indec_dimvector(&[0, 0, 0, 0, 0, 0]));
        assert!(!e.is_indec_dimvector(&[3, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn other_tubular_types_have_rank_two_radical_and_finite_omega() {
        for arms in [vec![3usize, 3, 3], vec![2, 4, 4], vec![2, 3, 6]] {
            let alg = crate::algebra::build_canonical(&arms, &[]).unwrap();
            let e = EulerData::new(&alg).unwrap();
            assert_eq!(e.radical_basis.len(), 2);
            assert!(e.is_radical(&e.h0));
            assert!(e.is_radical(&e.hinf));
            let omega = e.compute_omega();
            assert!(!omega.is_empty());
            assert_eq!(omega, e.compute_omega_with_radius(2));
        }
    }
}
