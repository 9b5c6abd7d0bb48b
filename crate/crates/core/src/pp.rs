//! The pp-formula calculus: lattice operations, elementary duality,
//! evaluation on module presentations, pp-type generators, free
//! realizations and the functor pairs for `Hom(M,-)` and `- (x) M*`.
//!
//! A right pp-formula is `exists y (x,y)H = 0` with `H` an `(n+l) x m`
//! matrix of algebra elements; a left formula uses the transposed
//! convention `H (x,y)^T = 0` with `H` of shape `m x (n+l)`. Left formulas
//! over `A` are evaluated on presentations over the opposite algebra.

use std::sync::Arc;

use num::{One, Zero};

use crate::algebra::{opposite_name, AlgebraElement, AlgebraPresentation};
use crate::linalg::{self, MatQ, Rat, Side};
use crate::module::{direct_sum, ModulePresentation};
#[cfg(test)]
use crate::module::hom_basis;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaSide {
    Right,
    Left,
}

/// A pp-formula in the language of the stored algebra.
#[derive(Debug, Clone)]
pub struct PpFormula {
    pub algebra: Arc<AlgebraPresentation>,
    pub side: FormulaSide,
    pub free_count: usize,
    pub bound_count: usize,
    /// Right side: `(free+bound) x m`; left side: `m x (free+bound)`.
    pub h: Vec<Vec<AlgebraElement>>,
}

impl PpFormula {
    pub fn column_count(&self) -> usize {
        match self.side {
            FormulaSide::Right => self.h.first().map_or(0, Vec::len),
            FormulaSide::Left => self.h.len(),
        }
    }

    /// Coefficient attached to variable `p` in equation `q`.
    fn coefficient(&self, p: usize, q: usize) -> &AlgebraElement {
        match self.side {
            FormulaSide::Right => &self.h[p][q],
            FormulaSide::Left => &self.h[q][p],
        }
    }

    pub fn structurally_equal(&self, other: &PpFormula) -> bool {
        self.algebra.name == other.algebra.name
            && self.side == other.side
            && self.free_count == other.free_count
            && self.bound_count == other.bound_count
            && self.h == other.h
    }

    /// `x = x` in `n` variables.
    pub fn top(algebra: Arc<AlgebraPresentation>, side: FormulaSide, n: usize) -> Self {
        let h = match side {
            FormulaSide::Right => vec![Vec::new(); n],
            FormulaSide::Left => Vec::new(),
        };
        PpFormula {
            algebra,
            side,
            free_count: n,
            bound_count: 0,
            h,
        }
    }

    /// `x = 0` in `n` variables.
    pub fn bottom(algebra: Arc<AlgebraPresentation>, side: FormulaSide, n: usize) -> Self {
        let s = algebra.dim();
        let unit = AlgebraElement::basis(s, algebra.unit_index);
        let h = match side {
            FormulaSide::Right => (0..n)
                .map(|p| {
                    (0..n)
                        .map(|q| {
                            if p == q {
                                unit.clone()
                            } else {
                                AlgebraElement::zero(s)
                            }
                        })
                        .collect()
                })
                .collect(),
            FormulaSide::Left => (0..n)
                .map(|q| {
                    (0..n)
                        .map(|p| {
                            if p == q {
                                unit.clone()
                            } else {
                                AlgebraElement::zero(s)
                            }
                        })
                        .collect()
                })
                .collect(),
        };
        PpFormula {
            algebra,
            side,
            free_count: n,
            bound_count: 0,
            h,
        }
    }

    /// Divisibility `e | x` (single free variable).
    pub fn divisibility(algebra: Arc<AlgebraPresentation>, e: &AlgebraElement) -> Self {
        // exists y: x - y e = 0
        let s = algebra.dim();
        let unit = AlgebraElement::basis(s, algebra.unit_index);
        PpFormula {
            algebra,
            side: FormulaSide::Right,
            free_count: 1,
            bound_count: 1,
            h: vec![vec![unit], vec![e.neg()]],
        }
    }

    /// Annihilation `x e = 0` (single free variable).
    pub fn annihilator(algebra: Arc<AlgebraPresentation>, e: &AlgebraElement) -> Self {
        PpFormula {
            algebra,
            side: FormulaSide::Right,
            free_count: 1,
            bound_count: 0,
            h: vec![vec![e.clone()]],
        }
    }
}

fn check_same_shape(a: &PpFormula, b: &PpFormula) -> Result<()> {
    if a.side != b.side {
        return Err(Error::ArityMismatch("formula sides differ".into()));
    }
    if a.free_count != b.free_count {
        return Err(Error::ArityMismatch(format!(
            "free variable counts differ: {} vs {}",
            a.free_count, b.free_count
        )));
    }
    if a.algebra.name != b.algebra.name {
        return Err(Error::AlgebraMismatch);
    }
    Ok(())
}

/// Conjunction: solution sets intersect.
pub fn meet(a: &PpFormula, b: &PpFormula) -> Result<PpFormula> {
    check_same_shape(a, b)?;
    let s = a.algebra.dim();
    let n = a.free_count;
    let (la, lb) = (a.bound_count, b.bound_count);
    let (ma, mb) = (a.column_count(), b.column_count());
    let zero = AlgebraElement::zero(s);
    match a.side {
        FormulaSide::Right => {
            // rows: x (n), ya (la), yb (lb); cols: ma + mb
            let mut h = vec![vec![zero.clone(); ma + mb]; n + la + lb];
            for p in 0..n {
                for q in 0..ma {
                    h[p][q] = a.h[p][q].clone();
                }
                for q in 0..mb {
                    h[p][ma + q] = b.h[p][q].clone();
                }
            }
            for p in 0..la {
                for q in 0..ma {
                    h[n + p][q] = a.h[n + p][q].clone();
                }
            }
            for p in 0..lb {
                for q in 0..mb {
                    h[n + la + p][ma + q] = b.h[n + p][q].clone();
                }
            }
            Ok(PpFormula {
                algebra: a.algebra.clone(),
                side: a.side,
                free_count: n,
                bound_count: la + lb,
                h,
            })
        }
        FormulaSide::Left => {
            let mut h = vec![vec![zero.clone(); n + la + lb]; ma + mb];
            for q in 0..ma {
                for p in 0..n {
                    h[q][p] = a.h[q][p].clone();
                }
                for p in 0..la {
                    h[q][n + p] = a.h[q][n + p].clone();
                }
            }
            for q in 0..mb {
                for p in 0..n {
                    h[ma + q][p] = b.h[q][p].clone();
                }
                for p in 0..lb {
                    h[ma + q][n + la + p] = b.h[q][n + p].clone();
                }
            }
            Ok(PpFormula {
                algebra: a.algebra.clone(),
                side: a.side,
                free_count: n,
                bound_count: la + lb,
                h,
            })
        }
    }
}

/// Sum: solution sets add.
pub fn join(a: &PpFormula, b: &PpFormula) -> Result<PpFormula> {
    check_same_shape(a, b)?;
    if a.side != FormulaSide::Right {
        // dualize: D(phi + psi) ~ D phi /\ D psi
        let da = dual(a);
        let db = dual(b);
        return Ok(dual(&meet(&da, &db)?));
    }
    let s = a.algebra.dim();
    let n = a.free_count;
    let (la, lb) = (a.bound_count, b.bound_count);
    let (ma, mb) = (a.column_count(), b.column_count());
    let zero = AlgebraElement::zero(s);
    // x = x' + x'': rows x (n), x' (n), ya, yb; columns: a on (x'), b on (x - x')
    let mut h = vec![vec![zero.clone(); ma + mb]; 2 * n + la + lb];
    for p in 0..n {
        for q in 0..ma {
            h[n + p][q] = a.h[p][q].clone();
        }
        for q in 0..mb {
            h[p][ma + q] = b.h[p][q].clone();
            h[n + p][ma + q] = b.h[p][q].neg();
        }
    }
    for p in 0..la {
        for q in 0..ma {
            h[2 * n + p][q] = a.h[n + p][q].clone();
        }
    }
    for p in 0..lb {
        for q in 0..mb {
            h[2 * n + la + p][ma + q] = b.h[n + p][q].clone();
        }
    }
    Ok(PpFormula {
        algebra: a.algebra.clone(),
        side: FormulaSide::Right,
        free_count: n,
        bound_count: n + la + lb,
        h,
    })
}

/// Elementary dual: an anti-isomorphism onto the opposite-side lattice.
pub fn dual(f: &PpFormula) -> PpFormula {
    let s = f.algebra.dim();
    let unit = AlgebraElement::basis(s, f.algebra.unit_index);
    let zero = AlgebraElement::zero(s);
    let n = f.free_count;
    let l = f.bound_count;
    let m = f.column_count();
    match f.side {
        FormulaSide::Right => {
            // D phi: left formula, bound m, matrix (n+l) x (n+m):
            // rows < n: x_r + sum_q H'[r][q] z_q = 0
            // rows >= n: sum_q H''[r-n][q] z_q = 0
            let mut h = vec![vec![zero.clone(); n + m]; n + l];
            for r in 0..n + l {
                if r < n {
                    h[r][r] = unit.clone();
                }
                for q in 0..m {
                    h[r][n + q] = f.h[r][q].clone();
                }
            }
            PpFormula {
                algebra: f.algebra.clone(),
                side: FormulaSide::Left,
                free_count: n,
                bound_count: m,
                h,
            }
        }
        FormulaSide::Left => {
            // D phi: right formula, bound m, matrix (n+m) x (n+l)
            let mut h = vec![vec![zero.clone(); n + l]; n + m];
            for p in 0..n {
                h[p][p] = unit.clone();
            }
            for q in 0..m {
                for c in 0..n + l {
                    h[n + q][c] = f.h[q][c].clone();
                }
            }
            PpFormula {
                algebra: f.algebra.clone(),
                side: FormulaSide::Right,
                free_count: n,
                bound_count: m,
                h,
            }
        }
    }
}

/// Reinterprets a right formula over `B` as the same condition written as a
/// left formula over `B^op` (or back), transposing the matrix.
pub fn reinterpret_over_opposite(
    f: &PpFormula,
    target_algebra: Arc<AlgebraPresentation>,
) -> PpFormula {
    let rows = f.h.len();
    let cols = f.h.first().map_or(0, Vec::len);
    let mut ht = vec![Vec::with_capacity(rows); cols];
    for r in 0..rows {
        for (c, row) in ht.iter_mut().enumerate() {
            row.push(f.h[r][c].clone());
        }
    }
    PpFormula {
        algebra: target_algebra,
        side: match f.side {
            FormulaSide::Right => FormulaSide::Left,
            FormulaSide::Left => FormulaSide::Right,
        },
        free_count: f.free_count,
        bound_count: f.bound_count,
        h: ht,
    }
}

fn check_module_compatible(f: &PpFormula, m: &ModulePresentation) -> Result<()> {
    let ok = match f.side {
        FormulaSide::Right => m.algebra.name == f.algebra.name,
        FormulaSide::Left => m.algebra.name == opposite_name(&f.algebra.name),
    };
    if !ok || m.algebra.dim() != f.algebra.dim() {
        return Err(Error::AlgebraMismatch);
    }
    Ok(())
}

/// `dim_k phi(M)`: the dimension of the solution subgroup of `M^n`,
/// computed as the full solution dimension minus the dimension of the
/// solutions with vanishing free part.
pub fn evaluate(f: &PpFormula, m: &ModulePresentation) -> Result<usize> {
    check_module_compatible(f, m)?;
    let d = m.dim;
    let n = f.free_count;
    let l = f.bound_count;
    let cols = f.column_count();
    if d == 0 {
        return Ok(0);
    }
    if cols == 0 {
        return Ok(n * d);
    }
    // big matrix: (n+l)d rows, cols*d columns; row block p, column block q
    // holds the action of the coefficient of variable p in equation q.
    let mut big = MatQ::zeros((n + l) * d, cols * d);
    for p in 0..n + l {
        for q in 0..cols {
            let coeff = f.coefficient(p, q);
            if coeff.is_zero() {
                continue;
            }
            let act = m.action_of(coeff);
            for i in 0..d {
                for j in 0..d {
                    let v = act.at(i, j);
                    if !v.is_zero() {
                        *big.at_mut(p * d + i, q * d + j) = v.clone();
                    }
                }
            }
        }
    }
    let full_rank = linalg::rank(&big);
    let y_rank = if l == 0 {
        0
    } else {
        let yrows: Vec<Vec<Rat>> = (n * d..(n + l) * d).map(|r| big.row(r).to_vec()).collect();
        linalg::span_basis(&yrows).len()
    };
    Ok(n * d + y_rank - full_rank)
}

/// Does the tuple (rows of `m` coordinates) satisfy `f` in `module`?
pub fn satisfies(f: &PpFormula, module: &ModulePresentation, tuple: &[Vec<Rat>]) -> Result<bool> {
    check_module_compatible(f, module)?;
    if tuple.len() != f.free_count {
        return Err(Error::ArityMismatch(format!(
            "tuple length {} vs {} free variables",
            tuple.len(),
            f.free_count
        )));
    }
    let d = module.dim;
    let l = f.bound_count;
    let cols = f.column_count();
    if cols == 0 {
        return Ok(true);
    }
    // solve for y: sum_y y_p coeff(n+p, q) = -(x part) for each equation
    let mut lhs = MatQ::zeros(l * d, cols * d);
    let mut rhs = vec![Rat::zero(); cols * d];
    for q in 0..cols {
        for p in 0..f.free_count {
            let coeff = f.coefficient(p, q);
            if coeff.is_zero() {
                continue;
            }
            let img = module.apply(&tuple[p], coeff);
            for j in 0..d {
                rhs[q * d + j] -= &img[j];
            }
        }
        for p in 0..l {
            let coeff = f.coefficient(f.free_count + p, q);
            if coeff.is_zero() {
                continue;
            }
            let act = module.action_of(coeff);
            for i in 0..d {
                for j in 0..d {
                    let v = act.at(i, j);
                    if !v.is_zero() {
                        *lhs.at_mut(p * d + i, q * d + j) = v.clone();
                    }
                }
            }
        }
    }
    // x . lhs = rhs (row convention)
    Ok(linalg::solve(&lhs.transpose(), &rhs).is_some())
}

/// A pp-pair; the smaller formula is stored as `phi /\ psi_raw`, making the
/// containment `psi <= phi` syntactic.
#[derive(Debug, Clone)]
pub struct PpPair {
    pub phi: PpFormula,
    pub psi: PpFormula,
}

impl PpPair {
    pub fn new(phi: PpFormula, psi_raw: &PpFormula) -> Result<Self> {
        let psi = meet(&phi, psi_raw)?;
        Ok(PpPair { phi, psi })
    }

    pub fn algebra(&self) -> &Arc<AlgebraPresentation> {
        &self.phi.algebra
    }

    pub fn free_count(&self) -> usize {
        self.phi.free_count
    }

    pub fn dim_at(&self, m: &ModulePresentation) -> Result<usize> {
        let top = evaluate(&self.phi, m)?;
        let bot = evaluate(&self.psi, m)?;
        debug_assert!(top >= bot);
        Ok(top - bot)
    }

    pub fn open_on(&self, m: &ModulePresentation) -> Result<bool> {
        Ok(self.dim_at(m)? > 0)
    }

    /// The dual pair `D psi / D phi` over the opposite side.
    pub fn dual_pair(&self) -> Result<PpPair> {
        PpPair::new(dual(&self.psi), &dual(&self.phi))
    }

    pub fn structurally_equal(&self, other: &PpPair) -> bool {
        self.phi.structurally_equal(&other.phi) && self.psi.structurally_equal(&other.psi)
    }

    /// Exact test for "closed on every module": `phi <= psi`.
    pub fn closed_everywhere(&self) -> Result<bool> {
        implies(&self.phi, &self.psi)
    }
}

/// Whether a pp-pair is asserted open (`|phi/psi| > 1`) or closed (`= 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Open,
    Closed,
}

/// An invariant-sentence atom.
#[derive(Debug, Clone)]
pub struct InvariantCondition {
    pub pair: PpPair,
    pub sense: Sense,
}

/// Exact implication test `a <= b` (right formulas): `b` must hold on the
/// free-realization tuple of `a`. Complete by the defining property of free
/// realizations.
pub fn implies(a: &PpFormula, b: &PpFormula) -> Result<bool> {
    check_same_shape(a, b)?;
    match a.side {
        FormulaSide::Right => {
            let fr = free_realization(a)?;
            satisfies(b, &fr.module, &fr.tuple)
        }
        FormulaSide::Left => implies(&dual(b), &dual(a)),
    }
}

pub fn equivalent(a: &PpFormula, b: &PpFormula) -> Result<bool> {
    Ok(implies(a, b)? && implies(b, a)?)
}

/// A finitely presented module together with a tuple whose pp-type the
/// formula generates.
#[derive(Debug, Clone)]
pub struct FreeRealization {
    pub module: ModulePresentation,
    pub tuple: Vec<Vec<Rat>>,
    /// presentation of the quotient by the tuple (the "cokernel of m")
    pub cokernel: ModulePresentation,
}

/// Free realization of a right pp-formula: the free module of rank
/// `free + bound` modulo the submodule generated by the columns of `H`; the
/// tuple is the image of the first `free` generators.
pub fn free_realization(f: &PpFormula) -> Result<FreeRealization> {
    if f.side != FormulaSide::Right {
        return Err(Error::ArityMismatch(
            "free realizations are built for right formulas".into(),
        ));
    }
    let alg = f.algebra.clone();
    let s = alg.dim();
    let nl = f.free_count + f.bound_count;
    let reg = ModulePresentation::regular(alg.clone());
    let free = if nl == 0 {
        ModulePresentation::zero(alg.clone())
    } else {
        let parts: Vec<&ModulePresentation> = (0..nl).map(|_| &reg).collect();
        direct_sum(&parts)
    };
    let cols = f.column_count();
    let mut col_rows = Vec::with_capacity(cols);
    for q in 0..cols {
        let mut row = Vec::with_capacity(nl * s);
        for p in 0..nl {
            row.extend(f.h[p][q].coeffs.iter().cloned());
        }
        col_rows.push(row);
    }
    let (module, proj) = free.quotient_by_tuple(&col_rows);
    let tuple: Vec<Vec<Rat>> = (0..f.free_count)
        .map(|p| proj.row(p * s + alg.unit_index).to_vec())
        .collect();
    let (cokernel, _) = module.quotient_by_tuple(&tuple);
    Ok(FreeRealization {
        module,
        tuple,
        cokernel,
    })
}

/// Quantifier-free pp-formula generating the pp-type of a generating tuple;
/// for non-generating tuples the standard-basis generator is wrapped in an
/// existential substitution.
pub fn pp_type_generator(
    m: &ModulePresentation,
    tuple: &[Vec<Rat>],
) -> Result<PpFormula> {
    let alg = m.algebra.clone();
    let s = alg.dim();
    if m.is_generated_by(tuple) {
        let n = tuple.len();
        // kernel of R^n -> M, e_p r_j -> m_p r_j
        let mut rows = Vec::with_capacity(n * s);
        for t in tuple {
            for j in 0..s {
                rows.push(MatQ::row_mul(t, &m.actions[j]));
            }
        }
        let map = MatQ::from_rows(rows);
        let kernel = linalg::kernel_basis(&map, Side::Left);
        let cols = prune_generating_columns(&alg, n, &kernel);
        let mut h = vec![Vec::with_capacity(cols.len()); n];
        for col in &cols {
            for p in 0..n {
                h[p].push(AlgebraElement {
                    coeffs: col[p * s..(p + 1) * s].to_vec(),
                });
            }
        }
        Ok(PpFormula {
            algebra: alg,
            side: FormulaSide::Right,
            free_count: n,
            bound_count: 0,
            h,
        })
    } else {
        // wrapper: exists y (gen(y) /\ x_t = sum_i y_i a_it)
        let basis: Vec<Vec<Rat>> = (0..m.dim)
            .map(|i| {
                let mut e = vec![Rat::zero(); m.dim];
                e[i] = Rat::one();
                e
            })
            .collect();
        let gen = pp_type_generator(m, &basis)?;
        let n = tuple.len();
        let d = m.dim;
        let mg = gen.column_count();
        let zero = AlgebraElement::zero(s);
        let unit = AlgebraElement::basis(s, alg.unit_index);
        // rows: x (n), y (d); columns: mg generator relations + n substitutions
        let mut h = vec![vec![zero.clone(); mg + n]; n + d];
        for q in 0..mg {
            for i in 0..d {
                h[n + i][q] = gen.h[i][q].clone();
            }
        }
        for (t, mt) in tuple.iter().enumerate() {
            h[t][mg + t] = unit.clone();
            for i in 0..d {
                if !mt[i].is_zero() {
                    let mut e = AlgebraElement::zero(s);
                    e.coeffs[alg.unit_index] = -mt[i].clone();
                    h[n + i][mg + t] = e;
                }
            }
        }
        Ok(PpFormula {
            algebra: alg,
            side: FormulaSide::Right,
            free_count: n,
            bound_count: d,
            h,
        })
    }
}

/// Keeps only columns that generate the same submodule of the free module
/// `R^n`; the discarded columns are right-multiple combinations of the kept
/// ones, so the formula is unchanged up to equivalence.
fn prune_generating_columns(
    alg: &Arc<AlgebraPresentation>,
    n: usize,
    kernel: &[Vec<Rat>],
) -> Vec<Vec<Rat>> {
    if kernel.is_empty() {
        return Vec::new();
    }
    let reg = ModulePresentation::regular(alg.clone());
    let parts: Vec<&ModulePresentation> = (0..n).map(|_| &reg).collect();
    let free = direct_sum(&parts);
    let mut kept: Vec<Vec<Rat>> = Vec::new();
    let mut span = linalg::IncrementalSpan::new(free.dim);
    for col in kernel {
        if span.contains(col) {
            continue;
        }
        kept.push(col.clone());
        for a in &free.actions {
            span.insert(&MatQ::row_mul(col, a));
        }
    }
    kept
}

/// pp-pair equivalent to the functor `Hom(M, -)`.
pub fn rep_functor_pair(m: &ModulePresentation) -> Result<PpPair> {
    let basis: Vec<Vec<Rat>> = (0..m.dim)
        .map(|i| {
            let mut e = vec![Rat::zero(); m.dim];
            e[i] = Rat::one();
            e
        })
        .collect();
    let phi = pp_type_generator(m, &basis)?;
    let n = phi.free_count;
    let bottom = PpFormula::bottom(m.algebra.clone(), FormulaSide::Right, n);
    PpPair::new(phi, &bottom)
}

/// pp-pair equivalent to the functor `- (x) M*`: the pair
/// `(x = x) / D phi` where `phi` generates the rep functor of the dual.
pub fn tensor_functor_pair(m: &ModulePresentation) -> Result<PpPair> {
    let dual_mod = m.dual();
    let basis: Vec<Vec<Rat>> = (0..dual_mod.dim)
        .map(|i| {
            let mut e = vec![Rat::zero(); dual_mod.dim];
            e[i] = Rat::one();
            e
        })
        .collect();
    // right formula over A^op = left formula over A
    let phi_op = pp_type_generator(&dual_mod, &basis)?;
    let phi_left = reinterpret_over_opposite(&phi_op, m.algebra.clone());
    let dphi = dual(&phi_left); // right formula over A
    let n = dphi.free_count;
    let top = PpFormula::top(m.algebra.clone(), FormulaSide::Right, n);
    PpPair::new(top, &dphi)
}

/// Parses the surface syntax for right pp-formulas: an optional quantifier
/// prefix `E y1 .. yl .`, conjuncts separated by `&`, each a sum of terms
/// equal to zero. A term is `var`, `-var`, or `var * elem` where `elem` is
/// an algebra basis symbol, a rational, or `rational * symbol`. Free
/// variables are `x1, x2, ...`; bound variables must be declared in the
/// prefix.
///
/// Example: `E y1 . x1 - y1*einf = 0 & x1*pi1 = 0`.
pub fn parse_text(algebra: Arc<AlgebraPresentation>, text: &str) -> Result<PpFormula> {
    let s = algebra.dim();
    let text = text.trim();
    let (bound, rest) = if let Some(stripped) = text.strip_prefix('E') {
        let (decl, rest) = stripped
            .split_once('.')
            .ok_or_else(|| Error::Parse("missing '.' after quantifier prefix".into()))?;
        let mut count = 0usize;
        for tok in decl.split_whitespace() {
            let idx: usize = tok
                .strip_prefix('y')
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad bound variable {tok:?}")))?;
            count = count.max(idx);
        }
        (count, rest)
    } else {
        (0, text)
    };
    let atoms: Vec<&str> = rest.split('&').map(str::trim).collect();
    // first pass: find the number of free variables
    let mut free = 0usize;
    let mut parsed_atoms = Vec::new();
    for atom in &atoms {
        let body = atom
            .strip_suffix("= 0")
            .or_else(|| atom.strip_suffix("=0"))
            .ok_or_else(|| Error::Parse(format!("atom {atom:?} must end with '= 0'")))?;
        // split into signed terms
        let mut terms: Vec<(Rat, String, Option<String>)> = Vec::new();
        let mut current = String::new();
        let mut sign = Rat::one();
        let mut chars = body.chars().peekable();
        let mut flush =
            |current: &mut String, sign: &mut Rat, terms: &mut Vec<(Rat, String, Option<String>)>| -> Result<()> {
                let t = current.trim().to_string();
                *current = String::new();
                if t.is_empty() {
                    return Ok(());
                }
                let (var, elem) = match t.split_once('*') {
                    Some((v, e)) => (v.trim().to_string(), Some(e.trim().to_string())),
                    None => (t, None),
                };
                terms.push((sign.clone(), var, elem));
                *sign = Rat::one();
                Ok(())
            };
        while let Some(c) = chars.next() {
            match c {
                '+' => flush(&mut current, &mut sign, &mut terms)?,
                '-' => {
                    flush(&mut current, &mut sign, &mut terms)?;
                    sign = -Rat::one();
                }
                _ => {
                    current.push(c);
                    let _ = &chars;
                }
            }
        }
        flush(&mut current, &mut sign, &mut terms)?;
        for (_, var, _) in &terms {
            if let Some(ix) = var.strip_prefix('x').and_then(|t| t.parse::<usize>().ok()) {
                free = free.max(ix);
            }
        }
        parsed_atoms.push(terms);
    }
    // second pass: build the column for each atom
    let zero = AlgebraElement::zero(s);
    let mut h = vec![vec![zero.clone(); parsed_atoms.len()]; free + bound];
    for (col, terms) in parsed_atoms.iter().enumerate() {
        for (sign, var, elem) in terms {
            let row = if let Some(ix) = var.strip_prefix('x').and_then(|t| t.parse::<usize>().ok())
            {
                ix - 1
            } else if let Some(iy) = var.strip_prefix('y').and_then(|t| t.parse::<usize>().ok()) {
                if iy > bound {
                    return Err(Error::Parse(format!("undeclared bound variable y{iy}")));
                }
                free + iy - 1
            } else {
                return Err(Error::Parse(format!("bad variable {var:?}")));
            };
            let mut coeff = match elem {
                None => AlgebraElement::basis(s, algebra.unit_index),
                Some(e) => parse_element(&algebra, e)?,
            };
            coeff = coeff.scale(sign);
            h[row][col] = h[row][col].add(&coeff);
        }
    }
    Ok(PpFormula {
        algebra,
        side: FormulaSide::Right,
        free_count: free,
        bound_count: bound,
        h,
    })
}

/// Parses `symbol`, `rational`, or `rational * symbol`.
fn parse_element(algebra: &Arc<AlgebraPresentation>, text: &str) -> Result<AlgebraElement> {
    let s = algebra.dim();
    let text = text.trim();
    if let Some((c, name)) = text.split_once('*') {
        let coeff = crate::linalg::parse_rat(c.trim())?;
        let idx = algebra
            .basis_index_of(name.trim())
            .ok_or_else(|| Error::Parse(format!("unknown basis symbol {name:?}")))?;
        return Ok(AlgebraElement::basis(s, idx).scale(&coeff));
    }
    if let Some(idx) = algebra.basis_index_of(text) {
        return Ok(AlgebraElement::basis(s, idx));
    }
    let coeff = crate::linalg::parse_rat(text)?;
    Ok(AlgebraElement::basis(s, algebra.unit_index).scale(&coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::canonical_2222;
    use crate::module::module_from_rep;
    use std::collections::HashMap;

    fn alg() -> Arc<AlgebraPresentation> {
        Arc::new(canonical_2222(2))
    }

    fn simple(a: &Arc<AlgebraPresentation>, v: usize) -> ModulePresentation {
        let mut comps = vec![0usize; 6];
        comps[v] = 1;
        module_from_rep(a.clone(), &comps, &HashMap::new()).unwrap()
    }

    #[test]
    fn top_and_bottom_evaluate_to_extremes() {
        let a = alg();
        let r = ModulePresentation::regular(a.clone());
        let top = PpFormula::top(a.clone(), FormulaSide::Right, 1);
        let bot = PpFormula::bottom(a.clone(), FormulaSide::Right, 1);
        assert_eq!(evaluate(&top, &r).unwrap(), 16);
        assert_eq!(evaluate(&bot, &r).unwrap(), 0);
        let top2 = PpFormula::top(a.clone(), FormulaSide::Right, 2);
        assert_eq!(evaluate(&top2, &r).unwrap(), 32);
    }

    #[test]
    fn meet_and_join_satisfy_the_modular_dimension_law() {
        let a = alg();
        let r = ModulePresentation::regular(a.clone());
        let s = a.dim();
        // phi: e_inf | x, psi: x * (pi1) = 0
        let inf_idem = a.vertex_elements[5].clone();
        let pi1 = AlgebraElement::basis(
            s,
            a.basis_symbols.iter().position(|x| x == "pi1").unwrap(),
        );
        let phi = PpFormula::divisibility(a.clone(), &inf_idem);
        let psi = PpFormula::annihilator(a.clone(), &pi1);
        let dm = evaluate(&meet(&phi, &psi).unwrap(), &r).unwrap();
        let dj = evaluate(&join(&phi, &psi).unwrap(), &r).unwrap();
        let dphi = evaluate(&phi, &r).unwrap();
        let dpsi = evaluate(&psi, &r).unwrap();
        assert_eq!(dm + dj, dphi + dpsi);
        // top is neutral for meet, bottom for join
        let top = PpFormula::top(a.clone(), FormulaSide::Right, 1);
        let bot = PpFormula::bottom(a.clone(), FormulaSide::Right, 1);
        assert_eq!(evaluate(&meet(&top, &phi).unwrap(), &r).unwrap(), dphi);
        assert_eq!(evaluate(&join(&bot, &phi).unwrap(), &r).unwrap(), dphi);
    }

    #[test]
    fn dual_swaps_top_and_bottom() {
        let a = alg();
        let rop = ModulePresentation::regular(Arc::new(a.opposite()));
        let top = PpFormula::top(a.clone(), FormulaSide::Right, 1);
        let dtop = dual(&top);
        assert_eq!(dtop.side, FormulaSide::Left);
        // D(x=x) defines 0 in every module
        assert_eq!(evaluate(&dtop, &rop).unwrap(), 0);
        let bot = PpFormula::bottom(a.clone(), FormulaSide::Right, 1);
        let dbot = dual(&bot);
        assert_eq!(evaluate(&dbot, &rop).unwrap(), rop.dim);
    }

    #[test]
    fn dual_exchanges_annihilator_and_divisibility() {
        let a = alg();
        let s = a.dim();
        let pi1 = AlgebraElement::basis(
            s,
            a.basis_symbols.iter().position(|x| x == "pi1").unwrap(),
        );
        // D(x a = 0) ~ a | x on the opposite side: compare dimensions on
        // the regular representation of the opposite algebra
        let ann = PpFormula::annihilator(a.clone(), &pi1);
        let dann = dual(&ann);
        let aop = Arc::new(a.opposite());
        let rop = ModulePresentation::regular(aop.clone());
        let div_op = PpFormula::divisibility(aop.clone(), &pi1);
        assert_eq!(
            evaluate(&dann, &rop).unwrap(),
            evaluate(&div_op, &rop).unwrap()
        );
    }

    #[test]
    fn double_dual_preserves_evaluation() {
        let a = alg();
        let r = ModulePresentation::regular(a.clone());
        let s_mod = simple(&a, 1);
        let s = a.dim();
        let pi1_idx = a.basis_symbols.iter().position(|x| x == "pi1").unwrap();
        let formulas = vec![
            PpFormula::top(a.clone(), FormulaSide::Right, 1),
            PpFormula::bottom(a.clone(), FormulaSide::Right, 1),
            PpFormula::divisibility(a.clone(), &a.vertex_elements[0]),
            PpFormula::annihilator(a.clone(), &AlgebraElement::basis(s, pi1_idx)),
        ];
        for f in &formulas {
            let dd = dual(&dual(f));
            assert_eq!(dd.side, FormulaSide::Right);
            for m in [&r, &s_mod] {
                assert_eq!(
                    evaluate(f, m).unwrap(),
                    evaluate(&dd, m).unwrap(),
                    "double dual changed evaluation"
                );
            }
        }
    }

    #[test]
    fn free_realization_of_top_is_the_regular_module() {
        let a = alg();
        let top = PpFormula::top(a.clone(), FormulaSide::Right, 1);
        let fr = free_realization(&top).unwrap();
        assert_eq!(fr.module.dim, 16);
        assert_eq!(fr.cokernel.dim, 0);
        let bot = PpFormula::bottom(a.clone(), FormulaSide::Right, 1);
        let fr0 = free_realization(&bot).unwrap();
        assert_eq!(fr0.module.dim, 0);
    }

    #[test]
    fn generator_of_regular_module_is_equivalent_to_top() {
        let a = alg();
        let r = ModulePresentation::regular(a.clone());
        let mut one = vec![Rat::zero(); 16];
        one[a.unit_index] = Rat::one();
        let gen = pp_type_generator(&r, &[one]).unwrap();
        let top = PpFormula::top(a.clone(), FormulaSide::Right, 1);
        assert!(equivalent(&gen, &top).unwrap());
    }

    #[test]
    fn generator_of_simple_module_constrains_vertices() {
        let a = alg();
        let s1 = simple(&a, 1);
        let basis = vec![vec![Rat::one()]];
        let gen = pp_type_generator(&s1, &basis).unwrap();
        // on the simple itself the basis tuple satisfies the generator
        assert!(satisfies(&gen, &s1, &basis).unwrap());
        // evaluation dimensions match hom transport: dim phi(N) counts
        // images of the generator under Hom(S1, N)
        let r = ModulePresentation::regular(a.clone());
        let expected = hom_basis(&s1, &r).unwrap().len();
        // cokernel of the generating tuple is zero, so dim phi(N) = dim Hom
        assert_eq!(evaluate(&gen, &r).unwrap(), expected);
    }

    #[test]
    fn rep_functor_pair_of_regular_module_measures_dimension() {
        let a = alg();
        let r = ModulePresentation::regular(a.clone());
        let pair = rep_functor_pair(&r).unwrap();
        let s1 = simple(&a, 1);
        assert_eq!(pair.dim_at(&s1).unwrap(), 1);
        assert_eq!(pair.dim_at(&r).unwrap(), 16);
    }

    #[test]
    fn implication_decides_pair_closedness() {
        let a = alg();
        let top = PpFormula::top(a.clone(), FormulaSide::Right, 1);
        let bot = PpFormula::bottom(a.clone(), FormulaSide::Right, 1);
        assert!(implies(&bot, &top).unwrap());
        assert!(!implies(&top, &bot).unwrap());
        let pair = PpPair::new(top.clone(), &top).unwrap();
        assert!(pair.closed_everywhere().unwrap());
        let pair2 = PpPair::new(top, &bot).unwrap();
        assert!(!pair2.closed_everywhere().unwrap());
    }

    #[test]
    fn text_grammar_round_trips_through_evaluation() {
        let a = alg();
        let r = ModulePresentation::regular(a.clone());
        // divisibility by e_inf written in the surface syntax
        let parsed = parse_text(a.clone(), "E y1 . x1 - y1*einf = 0").unwrap();
        let built = PpFormula::divisibility(a.clone(), &AlgebraElement::basis(16, 5));
        assert_eq!(
            evaluate(&parsed, &r).unwrap(),
            evaluate(&built, &r).unwrap()
        );
        // annihilator with a conjunct
        let parsed = parse_text(a.clone(), "x1*pi1 = 0 & x1*pi2 = 0").unwrap();
        assert_eq!(parsed.free_count, 1);
        assert_eq!(parsed.column_count(), 2);
        assert!(evaluate(&parsed, &r).unwrap() > 0);
        // scalar coefficients
        let parsed = parse_text(a.clone(), "x1*2 - x2 = 0").unwrap();
        assert_eq!(parsed.free_count, 2);
        assert_eq!(evaluate(&parsed, &r).unwrap(), 16);
        assert!(parse_text(a.clone(), "x1*nosuch = 0").is_err());
        assert!(parse_text(a, "x1 + y1 = 0").is_err());
    }

    #[test]
    fn tensor_pair_of_zero_module_is_closed_everywhere() {
        let a = alg();
        let z = ModulePresentation::zero(a.clone());
        let pair = tensor_functor_pair(&z).unwrap();
        let r = ModulePresentation::regular(a.clone());
        assert_eq!(pair.dim_at(&r).unwrap(), 0);
        assert_eq!(pair.dim_at(&simple(&a, 0)).unwrap(), 0);
    }
}
