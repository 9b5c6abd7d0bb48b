//! Presentations of finite-dimensional algebras by a basis and structure
//! constants, and constructors for the canonical algebras of tubular type.
//!
//! A canonical algebra `C(p_1,...,p_t; lambda)` is presented on the path
//! basis of a star-shaped quiver with two poles. Arrows run from the pole
//! `inf` down each arm to the pole `0`, and the full arm paths satisfy
//! `pi_j + pi_1 + mu_j pi_2 = 0` for `j >= 3` (`mu_3 = 1`, the remaining
//! coefficients are the lambda parameters). This orientation is the one
//! under which the projective with dimension vector (2,1,1,1,1,1) has slope
//! zero and the injective with dimension vector (1,1,1,1,1,2) has slope
//! infinity, which calibrates every Euler-form convention downstream.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::linalg::{fmt_rat, rat_int, MatQ, Rat};
use crate::{Error, Result};

/// Sparse linear combination of basis elements.
pub type SparseVec = Vec<(usize, Rat)>;

fn sparse_add(acc: &mut BTreeMap<usize, Rat>, k: usize, c: Rat) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(k).or_insert_with(Rat::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&k);
    }
}

fn sparse_from(acc: BTreeMap<usize, Rat>) -> SparseVec {
    acc.into_iter().collect()
}

/// An element of the algebra, as coordinates in the algebra basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    pub coeffs: Vec<Rat>,
}

impl AlgebraElement {
    pub fn zero(s: usize) -> Self {
        AlgebraElement {
            coeffs: vec![Rat::zero(); s],
        }
    }

    pub fn basis(s: usize, k: usize) -> Self {
        let mut e = Self::zero(s);
        e.coeffs[k] = Rat::one();
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        AlgebraElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        AlgebraElement {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }
}

/// What a basis element is, when the presentation was built from a quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisInfo {
    /// The two-sided unit.
    Unit,
    /// The trivial path at a vertex.
    Idempotent(usize),
    /// A genuine path; `arrows` lists arrow basis indices in composition
    /// order (first arrow first).
    Path {
        src: usize,
        tgt: usize,
        arrows: Vec<usize>,
    },
    /// No quiver interpretation (e.g. loaded from raw structure constants).
    Other,
}

/// A finite-dimensional algebra given by a basis, structure constants and
/// quiver metadata. Immutable after construction.
#[derive(Debug, Clone)]
pub struct AlgebraPresentation {
    pub name: String,
    pub basis_symbols: Vec<String>,
    pub unit_index: usize,
    /// Orthogonal primitive idempotents summing to the unit, one per vertex.
    pub vertex_elements: Vec<AlgebraElement>,
    pub vertex_names: Vec<String>,
    /// Undirected vertex adjacency (used for support connectivity).
    pub quiver_edges: Vec<(usize, usize)>,
    /// `mul[i*s + j]` is the sparse expansion of `r_i r_j`.
    mul: Vec<SparseVec>,
    /// Basis indices which, together with the vertex idempotents, generate.
    pub generator_indices: Vec<usize>,
    pub basis_info: Vec<BasisInfo>,
    /// Arm lengths when this is a canonical algebra.
    pub canonical_arms: Option<Vec<usize>>,
}

impl AlgebraPresentation {
    pub fn dim(&self) -> usize {
        self.basis_symbols.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_elements.len()
    }

    pub fn product_table(&self, i: usize, j: usize) -> &SparseVec {
        &self.mul[i * self.dim() + j]
    }

    pub fn unit_element(&self) -> AlgebraElement {
        AlgebraElement::basis(self.dim(), self.unit_index)
    }

    pub fn mul_elements(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let s = self.dim();
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        for (i, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let c = ca * cb;
                for (k, alpha) in self.product_table(i, j) {
                    sparse_add(&mut acc, *k, &c * alpha);
                }
            }
        }
        let mut out = AlgebraElement::zero(s);
        for (k, c) in acc {
            out.coeffs[k] = c;
        }
        out
    }

    /// Structure constants as sparse `(i, j, k, alpha)` quadruples.
    pub fn structure_triples(&self) -> Vec<(usize, usize, usize, Rat)> {
        let s = self.dim();
        let mut out = Vec::new();
        for i in 0..s {
            for j in 0..s {
                for (k, c) in self.product_table(i, j) {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn from_structure(
        name: String,
        basis_symbols: Vec<String>,
        unit_index: usize,
        triples: &[(usize, usize, usize, Rat)],
        vertex_elements: Vec<AlgebraElement>,
        vertex_names: Vec<String>,
        quiver_edges: Vec<(usize, usize)>,
    ) -> Self {
        let s = basis_symbols.len();
        let mut mul: Vec<BTreeMap<usize, Rat>> = vec![BTreeMap::new(); s * s];
        for (i, j, k, c) in triples {
            sparse_add(&mut mul[i * s + j], *k, c.clone());
        }
        let generator_indices = (0..s).filter(|&i| i != unit_index).collect();
        AlgebraPresentation {
            name,
            basis_symbols,
            unit_index,
            vertex_elements,
            vertex_names,
            quiver_edges,
            mul: mul.into_iter().map(sparse_from).collect(),
            generator_indices,
            basis_info: (0..s)
                .map(|i| {
                    if i == unit_index {
                        BasisInfo::Unit
                    } else {
                        BasisInfo::Other
                    }
                })
                .collect(),
            canonical_arms: None,
        }
    }

    /// The opposite algebra: same basis, products reversed. Paths keep their
    /// endpoints swapped and their arrow lists reversed.
    pub fn opposite(&self) -> AlgebraPresentation {
        let s = self.dim();
        let mut mul = vec![SparseVec::new(); s * s];
        for i in 0..s {
            for j in 0..s {
                mul[i * s + j] = self.product_table(j, i).clone();
            }
        }
        let basis_info = self
            .basis_info
            .iter()
            .map(|b| match b {
                BasisInfo::Path { src, tgt, arrows } => BasisInfo::Path {
                    src: *tgt,
                    tgt: *src,
                    arrows: arrows.iter().rev().copied().collect(),
                },
                other => other.clone(),
            })
            .collect();
        AlgebraPresentation {
            name: opposite_name(&self.name),
            basis_symbols: self.basis_symbols.clone(),
            unit_index: self.unit_index,
            vertex_elements: self.vertex_elements.clone(),
            vertex_names: self.vertex_names.clone(),
            quiver_edges: self.quiver_edges.clone(),
            mul,
            generator_indices: self.generator_indices.clone(),
            basis_info,
            canonical_arms: self.canonical_arms.clone(),
        }
    }

    /// Checks every presentation invariant, reporting the first violation.
    pub fn validate(&self) -> Result<()> {
        let s = self.dim();
        if self.mul.len() != s * s {
            return Err(Error::Validation("structure constant table size".into()));
        }
        // unit
        let u = self.unit_element();
        for j in 0..s {
            let b = AlgebraElement::basis(s, j);
            if self.mul_elements(&u, &b) != b || self.mul_elements(&b, &u) != b {
                return Err(Error::Validation(format!(
                    "basis element {} is not fixed by the unit",
                    self.basis_symbols[j]
                )));
            }
        }
        // associativity on all basis triples
        for i in 0..s {
            for j in 0..s {
                let pij = self.product_table(i, j).clone();
                for k in 0..s {
                    let mut lhs: BTreeMap<usize, Rat> = BTreeMap::new();
                    for (m, c) in &pij {
                        for (t, d) in self.product_table(*m, k) {
                            sparse_add(&mut lhs, *t, c * d);
                        }
                    }
                    let mut rhs: BTreeMap<usize, Rat> = BTreeMap::new();
                    for (m, c) in self.product_table(j, k) {
                        for (t, d) in self.product_table(i, *m) {
                            sparse_add(&mut rhs, *t, c * d);
                        }
                    }
                    if lhs != rhs {
                        return Err(Error::Validation(format!(
                            "associativity fails at ({}, {}, {})",
                            self.basis_symbols[i], self.basis_symbols[j], self.basis_symbols[k]
                        )));
                    }
                }
            }
        }
        // vertex idempotents: orthogonal, idempotent, summing to the unit
        let mut sum = AlgebraElement::zero(s);
        for (a, ea) in self.vertex_elements.iter().enumerate() {
            sum = sum.add(ea);
            for (b, eb) in self.vertex_elements.iter().enumerate() {
                let prod = self.mul_elements(ea, eb);
                let expected = if a == b {
                    ea.clone()
                } else {
                    AlgebraElement::zero(s)
                };
                if prod != expected {
                    return Err(Error::Validation(format!(
                        "vertex idempotents {} and {} are not orthogonal idempotents",
                        self.vertex_names[a], self.vertex_names[b]
                    )));
                }
            }
        }
        if sum != u {
            return Err(Error::Validation(
                "vertex idempotents do not sum to the unit".into(),
            ));
        }
        Ok(())
    }

    /// Vertex adjacency as a neighbour list.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for &(a, b) in &self.quiver_edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn same_as(&self, other: &AlgebraPresentation) -> bool {
        self.name == other.name && self.dim() == other.dim()
    }

    /// Basis index of the arrow from `src` to `tgt`, when present.
    pub fn arrow_basis_index(&self, src: usize, tgt: usize) -> Option<usize> {
        self.basis_info.iter().position(|b| {
            matches!(b, BasisInfo::Path { src: s, tgt: t, arrows } if *s == src && *t == tgt && arrows.len() == 1)
        })
    }

    pub fn basis_index_of(&self, symbol: &str) -> Option<usize> {
        self.basis_symbols.iter().position(|s| s == symbol)
    }
}

pub fn opposite_name(name: &str) -> String {
    match name.strip_suffix("^op") {
        Some(base) => base.to_string(),
        None => format!("{name}^op"),
    }
}

/// Tubular types admitted by `build_canonical`.
pub const TUBULAR_TYPES: [&[usize]; 4] = [&[2, 2, 2, 2], &[3, 3, 3], &[2, 4, 4], &[2, 3, 6]];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PathElt {
    Vertex(usize),
    /// Segment of an arm, from position `hi` down to position `lo`.
    Seg {
        arm: usize,
        hi: usize,
        lo: usize,
    },
    /// Independent full arm path (arm 0 or 1).
    Full(usize),
}

struct CanonicalBuilder {
    arms: Vec<usize>,
    /// vertex index at (arm, pos); pos 0 = vertex `0`, pos p_i = `inf`.
    vpos: Vec<Vec<usize>>,
    nverts: usize,
    mu: Vec<Rat>,
}

impl CanonicalBuilder {
    fn vertex(&self, arm: usize, pos: usize) -> usize {
        self.vpos[arm][pos]
    }

    fn src(&self, p: &PathElt) -> usize {
        match p {
            PathElt::Vertex(v) => *v,
            PathElt::Seg { arm, hi, .. } => self.vertex(*arm, *hi),
            PathElt::Full(_) => self.nverts - 1,
        }
    }

    fn tgt(&self, p: &PathElt) -> usize {
        match p {
            PathElt::Vertex(v) => *v,
            PathElt::Seg { arm, lo, .. } => self.vertex(*arm, *lo),
            PathElt::Full(_) => 0,
        }
    }

    /// Product of two path elements as a combination of path elements,
    /// reducing eliminated full paths through the defining relations.
    fn mul(&self, p: &PathElt, q: &PathElt) -> Vec<(PathElt, Rat)> {
        match (p, q) {
            (PathElt::Vertex(v), _) => {
                if *v == self.src(q) {
                    vec![(*q, Rat::one())]
                } else {
                    vec![]
                }
            }
            (_, PathElt::Vertex(v)) => {
                if self.tgt(p) == *v {
                    vec![(*p, Rat::one())]
                } else {
                    vec![]
                }
            }
            (
                PathElt::Seg { arm, hi, lo },
                PathElt::Seg {
                    arm: arm2,
                    hi: hi2,
                    lo: lo2,
                },
            ) => {
                if arm != arm2 || lo != hi2 {
                    return vec![];
                }
                self.reduce_seg(*arm, *hi, *lo2)
            }
            _ => vec![], // compositions through the poles vanish
        }
    }

    fn reduce_seg(&self, arm: usize, hi: usize, lo: usize) -> Vec<(PathElt, Rat)> {
        if hi == self.arms[arm] && lo == 0 {
            // a full arm path
            if arm < 2 {
                vec![(PathElt::Full(arm), Rat::one())]
            } else {
                vec![
                    (PathElt::Full(0), -Rat::one()),
                    (PathElt::Full(1), -self.mu[arm].clone()),
                ]
            }
        } else {
            vec![(PathElt::Seg { arm, hi, lo }, Rat::one())]
        }
    }
}

/// Builds the canonical algebra of the given tubular type.
///
/// `lambdas` supplies the extra relation coefficients: none for the three-arm
/// types, exactly one (distinct from 0 and 1) for type (2,2,2,2).
pub fn build_canonical(arms: &[usize], lambdas: &[Rat]) -> Result<AlgebraPresentation> {
    let mut sorted = arms.to_vec();
    sorted.sort_unstable();
    if !TUBULAR_TYPES.iter().any(|t| *t == sorted.as_slice()) {
        return Err(Error::InvalidParams(format!(
            "arm lengths {arms:?} are not a tubular type"
        )));
    }
    let t = arms.len();
    if lambdas.len() != t - 3 {
        return Err(Error::InvalidParams(format!(
            "expected {} lambda parameter(s), got {}",
            t - 3,
            lambdas.len()
        )));
    }
    for l in lambdas {
        if l.is_zero() || l.is_one() {
            return Err(Error::InvalidParams(format!(
                "lambda = {} is not allowed",
                fmt_rat(l)
            )));
        }
    }
    // mu[arm]: coefficient of pi_2 in the relation for that arm (arms >= 2).
    let mut mu = vec![Rat::zero(); t];
    if t >= 3 {
        mu[2] = Rat::one();
    }
    for (i, l) in lambdas.iter().enumerate() {
        mu[3 + i] = l.clone();
    }
    {
        let mut seen: Vec<&Rat> = Vec::new();
        for m in &mu[2..] {
            if seen.contains(&m) {
                return Err(Error::InvalidParams(
                    "lambda parameters must be pairwise distinct (and distinct from 1)".into(),
                ));
            }
            seen.push(m);
        }
    }

    // Vertices: 0, then the arm interiors, then inf.
    let mut vertex_names = vec!["0".to_string()];
    let mut vpos: Vec<Vec<usize>> = Vec::new();
    let single_middles = arms.iter().all(|&p| p == 2);
    for (i, &p) in arms.iter().enumerate() {
        let mut pos = vec![0usize];
        for j in 1..p {
            let name = if single_middles {
                format!("{}", i + 1)
            } else {
                format!("v{}_{}", i + 1, j)
            };
            vertex_names.push(name);
            pos.push(vertex_names.len() - 1);
        }
        vpos.push(pos);
    }
    vertex_names.push("inf".to_string());
    let nverts = vertex_names.len();
    for pos in &mut vpos {
        pos.push(nverts - 1);
    }

    let builder = CanonicalBuilder {
        arms: arms.to_vec(),
        vpos,
        nverts,
        mu,
    };

    // Internal path basis: vertices, proper segments, two full paths.
    let mut paths: Vec<PathElt> = (0..nverts).map(PathElt::Vertex).collect();
    let mut segs: Vec<PathElt> = Vec::new();
    for (i, &p) in arms.iter().enumerate() {
        for hi in 1..=p {
            for lo in 0..hi {
                if hi == p && lo == 0 {
                    continue;
                }
                segs.push(PathElt::Seg { arm: i, hi, lo });
            }
        }
    }
    segs.push(PathElt::Full(0));
    segs.push(PathElt::Full(1));
    // fixed output order: by (source, target, arm)
    segs.sort_by_key(|p| {
        let arm = match p {
            PathElt::Seg { arm, .. } => *arm,
            PathElt::Full(j) => *j,
            PathElt::Vertex(_) => 0,
        };
        (builder.src(p), builder.tgt(p), arm)
    });
    paths.extend(segs);
    let np = paths.len();
    let pindex = |p: &PathElt| paths.iter().position(|q| q == p).unwrap();

    // Final basis: unit, idempotents except e_0, then the path part.
    // e_0 = 1 - sum of the other idempotents.
    let final_syms: Vec<String> = std::iter::once("1".to_string())
        .chain((1..nverts).map(|v| format!("e{}", vertex_names[v])))
        .chain(paths[nverts..].iter().map(|p| match p {
            PathElt::Seg { arm, hi, lo } => format!(
                "p_{}_{}",
                vertex_names[builder.vertex(*arm, *hi)],
                vertex_names[builder.vertex(*arm, *lo)]
            ),
            PathElt::Full(j) => format!("pi{}", j + 1),
            PathElt::Vertex(_) => unreachable!(),
        }))
        .collect();
    // Disambiguate duplicate segment symbols (several full paths share
    // endpoints only through pi1/pi2, but parallel arms of length 2 share
    // arrow endpoint names never - arm interiors are distinct vertices).
    let s = final_syms.len();
    debug_assert_eq!(s, np);

    // final index -> path combo
    let to_paths = |i: usize| -> Vec<(usize, Rat)> {
        if i == 0 {
            (0..nverts).map(|v| (v, Rat::one())).collect()
        } else if i < nverts {
            vec![(i, Rat::one())]
        } else {
            vec![(i, Rat::one())]
        }
    };
    // path index -> final combo
    let from_path = |p: usize| -> Vec<(usize, Rat)> {
        if p == 0 {
            // e_0 = 1 - sum_{v >= 1} e_v
            let mut v = vec![(0usize, Rat::one())];
            v.extend((1..nverts).map(|w| (w, -Rat::one())));
            v
        } else {
            vec![(p, Rat::one())]
        }
    };

    let mut mul = vec![SparseVec::new(); s * s];
    for i in 0..s {
        for j in 0..s {
            let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
            for (pi, ci) in to_paths(i) {
                for (pj, cj) in to_paths(j) {
                    for (prod, c) in builder.mul(&paths[pi], &paths[pj]) {
                        let scaled = &ci * &cj * c;
                        for (f, d) in from_path(pindex(&prod)) {
                            sparse_add(&mut acc, f, &scaled * d);
                        }
                    }
                }
            }
            mul[i * s + j] = sparse_from(acc);
        }
    }

    // Vertex elements.
    let mut vertex_elements = Vec::with_capacity(nverts);
    {
        let mut e0 = AlgebraElement::zero(s);
        e0.coeffs[0] = Rat::one();
        for v in 1..nverts {
            e0.coeffs[v] = -Rat::one();
        }
        vertex_elements.push(e0);
        for v in 1..nverts {
            vertex_elements.push(AlgebraElement::basis(s, v));
        }
    }

    // Quiver adjacency along the arms.
    let mut quiver_edges = Vec::new();
    for (i, &p) in arms.iter().enumerate() {
        for j in 0..p {
            quiver_edges.push((builder.vertex(i, j), builder.vertex(i, j + 1)));
        }
    }

    // Basis info and generators (the arrows).
    let mut basis_info = vec![BasisInfo::Unit];
    for v in 1..nverts {
        basis_info.push(BasisInfo::Idempotent(v));
    }
    // arrow index lookup by (arm, hi): arrow from pos hi to pos hi-1
    let arrow_index = |arm: usize, hi: usize| -> usize {
        paths[nverts..]
            .iter()
            .position(|p| matches!(p, PathElt::Seg { arm: a, hi: h, lo } if *a == arm && *h == hi && *lo == hi - 1))
            .map(|k| k + nverts)
            .expect("arrow present in basis")
    };
    for p in &paths[nverts..] {
        let info = match p {
            PathElt::Seg { arm, hi, lo } => BasisInfo::Path {
                src: builder.vertex(*arm, *hi),
                tgt: builder.vertex(*arm, *lo),
                arrows: (*lo + 1..=*hi).rev().map(|h| arrow_index(*arm, h)).collect(),
            },
            PathElt::Full(j) => BasisInfo::Path {
                src: nverts - 1,
                tgt: 0,
                arrows: (1..=arms[*j]).rev().map(|h| arrow_index(*j, h)).collect(),
            },
            PathElt::Vertex(_) => unreachable!(),
        };
        basis_info.push(info);
    }
    let generator_indices: Vec<usize> = basis_info
        .iter()
        .enumerate()
        .filter(|(_, b)| matches!(b, BasisInfo::Path { arrows, .. } if arrows.len() == 1))
        .map(|(i, _)| i)
        .collect();

    let lam_str = lambdas.iter().map(fmt_rat).collect::<Vec<_>>().join(",");
    let name = if lam_str.is_empty() {
        format!(
            "C({})",
            arms.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
        )
    } else {
        format!(
            "C({};{})",
            arms.iter().map(ToString::to_string).collect::<Vec<_>>().join(","),
            lam_str
        )
    };

    Ok(AlgebraPresentation {
        name,
        basis_symbols: final_syms,
        unit_index: 0,
        vertex_elements,
        vertex_names,
        quiver_edges,
        mul,
        generator_indices,
        basis_info,
        canonical_arms: Some(arms.to_vec()),
    })
}

/// The standard example algebra `C(2,2,2,2; lambda)`.
pub fn canonical_2222(lambda: i64) -> AlgebraPresentation {
    build_canonical(&[2, 2, 2, 2], &[rat_int(lambda)]).expect("valid lambda")
}

/// The Cartan matrix, with `C[i][j] = dim Hom(P_i, P_j) = dim e_j R e_i`.
pub fn cartan_matrix(alg: &AlgebraPresentation) -> MatQ {
    let n = alg.vertex_count();
    // dim e_j R e_i: count basis contributions of e_j r e_i over the basis.
    let s = alg.dim();
    let mut m = MatQ::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            // dimension of e_j R e_i = rank of the linear map r -> e_j r e_i
            let mut rows = Vec::with_capacity(s);
            for k in 0..s {
                let b = AlgebraElement::basis(s, k);
                let v = alg.mul_elements(
                    &alg.vertex_elements[j],
                    &alg.mul_elements(&b, &alg.vertex_elements[i]),
                );
                rows.push(v.coeffs);
            }
            let rank = crate::linalg::span_basis(&rows).len();
            *m.at_mut(i, j) = rat_int(rank as i64);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_2222_has_dimension_sixteen() {
        let alg = canonical_2222(2);
        assert_eq!(alg.dim(), 16);
        assert_eq!(alg.vertex_count(), 6);
        assert_eq!(
            alg.vertex_names,
            vec!["0", "1", "2", "3", "4", "inf"]
        );
    }

    #[test]
    fn canonical_algebras_validate_for_all_tubular_types() {
        for (arms, lambdas) in [
            (vec![2usize, 2, 2, 2], vec![rat_int(2)]),
            (vec![3, 3, 3], vec![]),
            (vec![2, 4, 4], vec![]),
            (vec![2, 3, 6], vec![]),
        ] {
            let alg = build_canonical(&arms, &lambdas).unwrap();
            alg.validate()
                .unwrap_or_else(|e| panic!("{arms:?}: {e}"));
        }
    }

    #[test]
    fn invalid_lambda_is_rejected() {
        assert!(build_canonical(&[2, 2, 2, 2], &[rat_int(0)]).is_err());
        assert!(build_canonical(&[2, 2, 2, 2], &[rat_int(1)]).is_err());
        assert!(build_canonical(&[2, 2, 2, 2], &[]).is_err());
        assert!(build_canonical(&[2, 2, 2], &[]).is_err());
    }

    #[test]
    fn cartan_matrix_matches_expected_table() {
        let alg = canonical_2222(2);
        let c = cartan_matrix(&alg);
        let expected = MatQ::from_int_rows(&[
            &[1, 1, 1, 1, 1, 2],
            &[0, 1, 0, 0, 0, 1],
            &[0, 0, 1, 0, 0, 1],
            &[0, 0, 0, 1, 0, 1],
            &[0, 0, 0, 0, 1, 1],
            &[0, 0, 0, 0, 0, 1],
        ]);
        assert_eq!(c, expected);
    }

    #[test]
    fn opposite_is_involutive_and_valid() {
        let alg = canonical_2222(3);
        let op = alg.opposite();
        op.validate().unwrap();
        assert_eq!(op.name, "C(2,2,2,2;3)^op");
        let back = op.opposite();
        assert_eq!(back.name, alg.name);
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                assert_eq!(back.product_table(i, j), alg.product_table(i, j));
            }
        }
    }
}
