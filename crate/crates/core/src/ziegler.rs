//! Symbolic model of the Ziegler spectrum restricted to a rational slope:
//! finite-dimensional tube points `E_i[l]`, one Pruefer and one adic point
//! per quasi-simple, and the generic point. Compact open sets are either
//! cofinite or finite unions of rays and corays plus finitely many points,
//! and containment is decided exactly by the case analysis on those forms.
//!
//! Tube coordinates: the length-`l` member of the coray anchored at `E_i`
//! is `E_{i+l-1 mod r}[l]`; equivalently, the point `E_b[l]` lies on the
//! coray of `E_i` when `b = i + l - 1 (mod r)`. The `+1` orientation of the
//! index shift is a global convention; its consistency is enforced by the
//! truncated-model oracle rather than by external anchors.

use crate::linalg::Rat;
use crate::{Error, Result};

/// The tubular family at one rational slope: finitely many inhomogeneous
/// tubes with their ranks, homogeneous tubes addressed by index `>= ranks.len()`.
#[derive(Debug, Clone, PartialEq)]
pub struct TubularFamilyModel {
    pub slope: Rat,
    pub ranks: Vec<usize>,
}

impl TubularFamilyModel {
    pub fn new(slope: Rat, ranks: Vec<usize>) -> Result<Self> {
        if ranks.iter().any(|&r| r < 2) {
            return Err(Error::ModelMismatch(
                "inhomogeneous tube ranks must be at least 2".into(),
            ));
        }
        Ok(TubularFamilyModel { slope, ranks })
    }

    pub fn rank(&self, tube: usize) -> usize {
        self.ranks.get(tube).copied().unwrap_or(1)
    }
}

/// A point of the spectrum at this slope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointQ {
    Fd { tube: usize, idx: usize, len: usize },
    Prufer { tube: usize, idx: usize },
    Adic { tube: usize, idx: usize },
    Generic,
}

impl PointQ {
    pub fn reduce(self, model: &TubularFamilyModel) -> PointQ {
        match self {
            PointQ::Fd { tube, idx, len } => PointQ::Fd {
                tube,
                idx: idx % model.rank(tube),
                len,
            },
            PointQ::Prufer { tube, idx } => PointQ::Prufer {
                tube,
                idx: idx % model.rank(tube),
            },
            PointQ::Adic { tube, idx } => PointQ::Adic {
                tube,
                idx: idx % model.rank(tube),
            },
            PointQ::Generic => PointQ::Generic,
        }
    }

    pub fn is_fd(&self) -> bool {
        matches!(self, PointQ::Fd { .. })
    }
}

/// A ray `R(E_idx[start])` or coray `C([start]E_idx)` in a tube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct HalfLine {
    pub tube: usize,
    pub idx: usize,
    pub start: usize,
}

/// Canonical compact open subsets.
#[derive(Debug, Clone, PartialEq)]
pub enum CompactOpenForm {
    /// everything except finitely many finite-dimensional points
    Cofinite { excluded: Vec<PointQ> },
    Union {
        rays: Vec<HalfLine>,
        corays: Vec<HalfLine>,
        extras: Vec<PointQ>,
    },
}

/// Building blocks accepted by `normalize`.
#[derive(Debug, Clone)]
pub enum Primitive {
    Ray(HalfLine),
    Coray(HalfLine),
    Singleton(PointQ),
    CofiniteSet(Vec<PointQ>),
}

fn ray_contains(model: &TubularFamilyModel, ray: &HalfLine, p: &PointQ) -> bool {
    let r = model.rank(ray.tube);
    match *p {
        PointQ::Fd { tube, idx, len } => {
            tube == ray.tube && idx % r == ray.idx % r && len >= ray.start
        }
        PointQ::Prufer { tube, idx } => tube == ray.tube && idx % r == ray.idx % r,
        _ => false,
    }
}

fn coray_contains(model: &TubularFamilyModel, coray: &HalfLine, p: &PointQ) -> bool {
    let r = model.rank(coray.tube);
    match *p {
        PointQ::Fd { tube, idx, len } => {
            tube == coray.tube && len >= coray.start && idx % r == (coray.idx + len - 1) % r
        }
        PointQ::Adic { tube, idx } => tube == coray.tube && idx % r == coray.idx % r,
        _ => false,
    }
}

/// Membership of a point in a compact open form.
pub fn membership(model: &TubularFamilyModel, p: &PointQ, u: &CompactOpenForm) -> bool {
    let p = p.reduce(model);
    match u {
        CompactOpenForm::Cofinite { excluded } => {
            !excluded.iter().any(|x| x.reduce(model) == p)
        }
        CompactOpenForm::Union {
            rays,
            corays,
            extras,
        } => {
            rays.iter().any(|r| ray_contains(model, r, &p))
                || corays.iter().any(|c| coray_contains(model, c, &p))
                || extras.iter().any(|x| x.reduce(model) == p)
        }
    }
}

fn member_of_primitives(model: &TubularFamilyModel, p: &PointQ, prims: &[Primitive]) -> bool {
    let p = p.reduce(model);
    prims.iter().any(|prim| match prim {
        Primitive::Ray(r) => ray_contains(model, r, &p),
        Primitive::Coray(c) => coray_contains(model, c, &p),
        Primitive::Singleton(x) => x.reduce(model) == p,
        Primitive::CofiniteSet(excl) => !excl.iter().any(|x| x.reduce(model) == p),
    })
}

/// Canonical form of a finite union of primitives: cofinite forms list
/// exactly the non-members; union forms carry each ray and coray from its
/// minimal start, and only leftover finite-dimensional points as extras.
pub fn normalize(model: &TubularFamilyModel, prims: &[Primitive]) -> CompactOpenForm {
    let cofinites: Vec<&Vec<PointQ>> = prims
        .iter()
        .filter_map(|p| match p {
            Primitive::CofiniteSet(e) => Some(e),
            _ => None,
        })
        .collect();
    if !cofinites.is_empty() {
        // excluded = points excluded by every cofinite and by every other
        // primitive
        let mut excluded: Vec<PointQ> = cofinites[0]
            .iter()
            .map(|p| p.reduce(model))
            .filter(|p| p.is_fd())
            .collect();
        excluded.retain(|p| {
            cofinites
                .iter()
                .all(|e| e.iter().any(|x| x.reduce(model) == *p))
        });
        excluded.retain(|p| !member_of_union_primitives_without_cofinite(model, p, prims));
        excluded.sort();
        excluded.dedup();
        return CompactOpenForm::Cofinite { excluded };
    }

    // group rays and corays by (tube, idx mod rank) with minimal start
    let mut rays: Vec<HalfLine> = Vec::new();
    let mut corays: Vec<HalfLine> = Vec::new();
    let mut extras: Vec<PointQ> = Vec::new();
    for p in prims {
        match p {
            Primitive::Ray(h) => {
                let key = (h.tube, h.idx % model.rank(h.tube));
                match rays.iter_mut().find(|r| (r.tube, r.idx) == key) {
                    Some(r) => r.start = r.start.min(h.start.max(1)),
                    None => rays.push(HalfLine {
                        tube: key.0,
                        idx: key.1,
                        start: h.start.max(1),
                    }),
                }
            }
            Primitive::Coray(h) => {
                let key = (h.tube, h.idx % model.rank(h.tube));
                match corays.iter_mut().find(|r| (r.tube, r.idx) == key) {
                    Some(r) => r.start = r.start.min(h.start.max(1)),
                    None => corays.push(HalfLine {
                        tube: key.0,
                        idx: key.1,
                        start: h.start.max(1),
                    }),
                }
            }
            Primitive::Singleton(x) => {
                let x = x.reduce(model);
                if x.is_fd() {
                    extras.push(x);
                }
            }
            Primitive::CofiniteSet(_) => unreachable!(),
        }
    }
    // lower each start while the previous layer is already in the union
    for k in 0..rays.len() {
        while rays[k].start > 1 {
            let probe = PointQ::Fd {
                tube: rays[k].tube,
                idx: rays[k].idx,
                len: rays[k].start - 1,
            };
            if member_of_primitives(model, &probe, prims) {
                rays[k].start -= 1;
            } else {
                break;
            }
        }
    }
    for k in 0..corays.len() {
        while corays[k].start > 1 {
            let r = model.rank(corays[k].tube);
            let len = corays[k].start - 1;
            let probe = PointQ::Fd {
                tube: corays[k].tube,
                idx: (corays[k].idx + len - 1) % r,
                len,
            };
            if member_of_primitives(model, &probe, prims) {
                corays[k].start -= 1;
            } else {
                break;
            }
        }
    }
    let keep_form = CompactOpenForm::Union {
        rays: rays.clone(),
        corays: corays.clone(),
        extras: Vec::new(),
    };
    extras.retain(|p| !membership(model, p, &keep_form));
    extras.sort();
    extras.dedup();
    rays.sort();
    corays.sort();
    CompactOpenForm::Union {
        rays,
        corays,
        extras,
    }
}

fn member_of_union_primitives_without_cofinite(
    model: &TubularFamilyModel,
    p: &PointQ,
    prims: &[Primitive],
) -> bool {
    let non_cof: Vec<Primitive> = prims
        .iter()
        .filter(|q| !matches!(q, Primitive::CofiniteSet(_)))
        .cloned()
        .collect();
    member_of_primitives(model, p, &non_cof)
}

/// Primitives of a form, for renormalization.
pub fn form_primitives(form: &CompactOpenForm) -> Vec<Primitive> {
    match form {
        CompactOpenForm::Cofinite { excluded } => {
            vec![Primitive::CofiniteSet(excluded.clone())]
        }
        CompactOpenForm::Union {
            rays,
            corays,
            extras,
        } => {
            let mut out: Vec<Primitive> = rays.iter().map(|r| Primitive::Ray(*r)).collect();
            out.extend(corays.iter().map(|c| Primitive::Coray(*c)));
            out.extend(extras.iter().map(|x| Primitive::Singleton(*x)));
            out
        }
    }
}

/// A finitely described point set, the input of `closure_adjoin`: unions of
/// full ray tails, full coray tails, whole tubes, and individual points.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PointSetDescr {
    /// FD members of the ray at (tube, idx), all lengths
    pub full_rays: Vec<(usize, usize)>,
    /// FD members of the coray anchored at (tube, idx), all lengths
    pub full_corays: Vec<(usize, usize)>,
    /// every FD point of the tube
    pub full_tubes: Vec<usize>,
    pub points: Vec<PointQ>,
}

impl PointSetDescr {
    pub fn contains(&self, model: &TubularFamilyModel, p: &PointQ) -> bool {
        let p = p.reduce(model);
        if self.points.iter().any(|x| x.reduce(model) == p) {
            return true;
        }
        match p {
            PointQ::Fd { tube, idx, len } => {
                if self.full_tubes.contains(&tube) {
                    return true;
                }
                let r = model.rank(tube);
                if self
                    .full_rays
                    .iter()
                    .any(|&(t, i)| t == tube && i % r == idx)
                {
                    return true;
                }
                self.full_corays
                    .iter()
                    .any(|&(t, i)| t == tube && (i + len - 1) % r == idx)
            }
            _ => false,
        }
    }

    fn is_infinite(&self) -> bool {
        !self.full_rays.is_empty() || !self.full_corays.is_empty() || !self.full_tubes.is_empty()
    }
}

/// Adds the closure points required by the three closure clauses: a
/// Pruefer point for every quasi-simple with infinitely many members
/// mapping from it, an adic point for every quasi-simple with infinitely
/// many members mapping to it, and the generic point when the set is
/// infinite or already contains an infinite-dimensional point.
pub fn closure_adjoin(model: &TubularFamilyModel, s: &PointSetDescr) -> PointSetDescr {
    let mut out = s.clone();
    let mut add = |p: PointQ| {
        let p = p.reduce(model);
        if !out.points.contains(&p) {
            out.points.push(p);
        }
    };
    // clause 1: sources with infinite fibres. A full ray at (t,i) has every
    // member with source index i; corays and tubes cycle through all
    // residues of the tube.
    for &(t, i) in &s.full_rays {
        add(PointQ::Prufer { tube: t, idx: i });
        for j in 0..model.rank(t) {
            add(PointQ::Adic { tube: t, idx: j });
        }
    }
    for &(t, i) in &s.full_corays {
        add(PointQ::Adic { tube: t, idx: i });
        for j in 0..model.rank(t) {
            add(PointQ::Prufer { tube: t, idx: j });
        }
    }
    for &t in &s.full_tubes {
        for j in 0..model.rank(t) {
            add(PointQ::Prufer { tube: t, idx: j });
            add(PointQ::Adic { tube: t, idx: j });
        }
    }
    // clause 3
    if s.is_infinite() || s.points.iter().any(|p| !p.is_fd()) {
        add(PointQ::Generic);
    }
    // infinite-dimensional members pull in the generic, and adics/pruefers
    // of the closure do too (already covered by the clause above since the
    // added points are infinite-dimensional only when the set was infinite)
    let out2 = out.clone();
    if out2.points.iter().any(|p| !p.is_fd()) {
        let mut with_gen = out2;
        if !with_gen.points.contains(&PointQ::Generic) {
            with_gen.points.push(PointQ::Generic);
        }
        return with_gen;
    }
    out
}

fn member_of_union(model: &TubularFamilyModel, p: &PointQ, ws: &[CompactOpenForm]) -> bool {
    ws.iter().any(|w| membership(model, p, w))
}

/// The length beyond which the tail of the given ray is covered by `w`,
/// when `w` contains the ray's Pruefer point.
fn ray_tail_threshold(
    model: &TubularFamilyModel,
    tube: usize,
    idx: usize,
    w: &CompactOpenForm,
) -> Option<usize> {
    let prufer = PointQ::Prufer { tube, idx };
    if !membership(model, &prufer, w) {
        return None;
    }
    match w {
        CompactOpenForm::Cofinite { excluded } => {
            let r = model.rank(tube);
            let max_excl = excluded
                .iter()
                .filter_map(|p| match p.reduce(model) {
                    PointQ::Fd {
                        tube: t,
                        idx: i,
                        len,
                    } if t == tube && i == idx % r => Some(len),
                    _ => None,
                })
                .max()
                .unwrap_or(0);
            Some(max_excl + 1)
        }
        CompactOpenForm::Union { rays, .. } => {
            let r = model.rank(tube);
            rays.iter()
                .filter(|h| h.tube == tube && h.idx % r == idx % r)
                .map(|h| h.start)
                .min()
        }
    }
}

fn coray_tail_threshold(
    model: &TubularFamilyModel,
    tube: usize,
    idx: usize,
    w: &CompactOpenForm,
) -> Option<usize> {
    let adic = PointQ::Adic { tube, idx };
    if !membership(model, &adic, w) {
        return None;
    }
    match w {
        CompactOpenForm::Cofinite { excluded } => {
            let r = model.rank(tube);
            let max_excl = excluded
                .iter()
                .filter_map(|p| match p.reduce(model) {
                    PointQ::Fd {
                        tube: t,
                        idx: i,
                        len,
                    } if t == tube && i == (idx + len - 1) % r => Some(len),
                    _ => None,
                })
                .max()
                .unwrap_or(0);
            Some(max_excl + 1)
        }
        CompactOpenForm::Union { corays, .. } => {
            let r = model.rank(tube);
            corays
                .iter()
                .filter(|h| h.tube == tube && h.idx % r == idx % r)
                .map(|h| h.start)
                .min()
        }
    }
}

/// Exact decision of `U subseteq W_1 cup ... cup W_n`.
pub fn contains(
    model: &TubularFamilyModel,
    u: &CompactOpenForm,
    ws: &[CompactOpenForm],
) -> bool {
    match u {
        CompactOpenForm::Cofinite { excluded } => {
            // the generic point must be covered, so some W is cofinite
            if !member_of_union(model, &PointQ::Generic, ws) {
                return false;
            }
            // residual candidates: points excluded by every cofinite W
            let cof_exclusions: Vec<Vec<PointQ>> = ws
                .iter()
                .filter_map(|w| match w {
                    CompactOpenForm::Cofinite { excluded } => Some(
                        excluded
                            .iter()
                            .map(|p| p.reduce(model))
                            .collect::<Vec<_>>(),
                    ),
                    _ => None,
                })
                .collect();
            let mut candidates = cof_exclusions[0].clone();
            candidates.retain(|p| cof_exclusions.iter().all(|e| e.contains(p)));
            candidates
                .into_iter()
                .filter(|p| !excluded.iter().any(|x| x.reduce(model) == *p))
                .all(|p| member_of_union(model, &p, ws))
        }
        CompactOpenForm::Union {
            rays,
            corays,
            extras,
        } => {
            for p in extras {
                if !member_of_union(model, p, ws) {
                    return false;
                }
            }
            for h in rays {
                let threshold = ws
                    .iter()
                    .filter_map(|w| ray_tail_threshold(model, h.tube, h.idx, w))
                    .min();
                let Some(th) = threshold else {
                    return false; // the Pruefer point is uncovered
                };
                for len in h.start..th.max(h.start) {
                    let p = PointQ::Fd {
                        tube: h.tube,
                        idx: h.idx,
                        len,
                    };
                    if !member_of_union(model, &p, ws) {
                        return false;
                    }
                }
            }
            for h in corays {
                let threshold = ws
                    .iter()
                    .filter_map(|w| coray_tail_threshold(model, h.tube, h.idx, w))
                    .min();
                let Some(th) = threshold else {
                    return false; // the adic point is uncovered
                };
                let r = model.rank(h.tube);
                for len in h.start..th.max(h.start) {
                    let p = PointQ::Fd {
                        tube: h.tube,
                        idx: (h.idx + len - 1) % r,
                        len,
                    };
                    if !member_of_union(model, &p, ws) {
                        return false;
                    }
                }
            }
            true
        }
    }
}

/// All points of the truncated model: lengths up to `max_len` and
/// homogeneous tube tokens `ranks.len()..ranks.len()+homog`.
pub fn truncated_points(
    model: &TubularFamilyModel,
    max_len: usize,
    homog: usize,
) -> Vec<PointQ> {
    let mut out = vec![PointQ::Generic];
    let tubes = model.ranks.len() + homog;
    for tube in 0..tubes {
        for idx in 0..model.rank(tube) {
            out.push(PointQ::Prufer { tube, idx });
            out.push(PointQ::Adic { tube, idx });
            for len in 1..=max_len {
                out.push(PointQ::Fd { tube, idx, len });
            }
        }
    }
    out
}

/// Brute-force containment over the truncated model.
pub fn contains_truncated(
    model: &TubularFamilyModel,
    u: &CompactOpenForm,
    ws: &[CompactOpenForm],
    max_len: usize,
    homog: usize,
) -> bool {
    truncated_points(model, max_len, homog)
        .into_iter()
        .filter(|p| membership(model, p, u))
        .all(|p| member_of_union(model, &p, ws))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat_int;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn model_2222() -> TubularFamilyModel {
        TubularFamilyModel::new(rat_int(1), vec![2, 2, 2, 2]).unwrap()
    }

    #[test]
    fn ray_and_coray_membership() {
        let m = model_2222();
        let ray = HalfLine {
            tube: 0,
            idx: 0,
            start: 3,
        };
        assert!(ray_contains(&m, &ray, &PointQ::Fd { tube: 0, idx: 0, len: 5 }));
        assert!(!ray_contains(&m, &ray, &PointQ::Fd { tube: 0, idx: 0, len: 2 }));
        assert!(ray_contains(&m, &ray, &PointQ::Prufer { tube: 0, idx: 0 }));
        // rank-2 tube: E_0[2] lies on the coray anchored at E_1 from level 1
        let coray = HalfLine {
            tube: 0,
            idx: 1,
            start: 1,
        };
        assert!(coray_contains(
            &m,
            &coray,
            &PointQ::Fd { tube: 0, idx: 0, len: 2 }
        ));
        assert!(coray_contains(&m, &coray, &PointQ::Adic { tube: 0, idx: 1 }));
        assert!(!coray_contains(
            &m,
            &coray,
            &PointQ::Fd { tube: 0, idx: 1, len: 2 }
        ));
        // generic lies in every cofinite set
        let cof = CompactOpenForm::Cofinite {
            excluded: vec![PointQ::Fd { tube: 0, idx: 0, len: 1 }],
        };
        assert!(membership(&m, &PointQ::Generic, &cof));
    }

    #[test]
    fn normalize_absorbs_and_minimizes() {
        let m = model_2222();
        let r3 = Primitive::Ray(HalfLine { tube: 1, idx: 0, start: 3 });
        let r1 = Primitive::Ray(HalfLine { tube: 1, idx: 0, start: 1 });
        let out = normalize(&m, &[r3, r1]);
        assert_eq!(
            out,
            CompactOpenForm::Union {
                rays: vec![HalfLine { tube: 1, idx: 0, start: 1 }],
                corays: vec![],
                extras: vec![]
            }
        );
        // singleton extras below a ray lower its start
        let prims = vec![
            Primitive::Ray(HalfLine { tube: 1, idx: 0, start: 3 }),
            Primitive::Singleton(PointQ::Fd { tube: 1, idx: 0, len: 2 }),
        ];
        let out = normalize(&m, &prims);
        assert_eq!(
            out,
            CompactOpenForm::Union {
                rays: vec![HalfLine { tube: 1, idx: 0, start: 2 }],
                corays: vec![],
                extras: vec![]
            }
        );
        let single = normalize(
            &m,
            &[Primitive::Singleton(PointQ::Fd { tube: 0, idx: 1, len: 1 })],
        );
        assert_eq!(
            single,
            CompactOpenForm::Union {
                rays: vec![],
                corays: vec![],
                extras: vec![PointQ::Fd { tube: 0, idx: 1, len: 1 }]
            }
        );
    }

    #[test]
    fn normalize_cofinite_drops_covered_exclusions() {
        let m = model_2222();
        let x1 = PointQ::Fd { tube: 0, idx: 0, len: 1 };
        let x2 = PointQ::Fd { tube: 2, idx: 1, len: 4 };
        let prims = vec![
            Primitive::CofiniteSet(vec![x1, x2]),
            Primitive::Ray(HalfLine { tube: 2, idx: 1, start: 1 }),
        ];
        let out = normalize(&m, &prims);
        assert_eq!(out, CompactOpenForm::Cofinite { excluded: vec![x1] });
    }

    #[test]
    fn normalize_is_idempotent_and_membership_equivalent_randomly() {
        let m = model_2222();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..300 {
            let prims = random_primitives(&mut rng, &m);
            let form = normalize(&m, &prims);
            let again = normalize(&m, &form_primitives(&form));
            assert_eq!(form, again, "normalize not idempotent");
            for p in truncated_points(&m, 12, 4) {
                assert_eq!(
                    member_of_primitives(&m, &p, &prims),
                    membership(&m, &p, &form),
                    "membership changed by normalize at {p:?}"
                );
            }
        }
    }

    fn random_point(rng: &mut ChaCha8Rng, m: &TubularFamilyModel) -> PointQ {
        let tube = rng.random_range(0..m.ranks.len() + 3);
        let idx = rng.random_range(0..m.rank(tube));
        PointQ::Fd {
            tube,
            idx,
            len: rng.random_range(1..=9),
        }
    }

    fn random_primitives(rng: &mut ChaCha8Rng, m: &TubularFamilyModel) -> Vec<Primitive> {
        let mut prims = Vec::new();
        if rng.random_range(0..5) == 0 {
            let k = rng.random_range(0..4);
            prims.push(Primitive::CofiniteSet(
                (0..k).map(|_| random_point(rng, m)).collect(),
            ));
        }
        for _ in 0..rng.random_range(0..3) {
            let tube = rng.random_range(0..m.ranks.len() + 3);
            prims.push(Primitive::Ray(HalfLine {
                tube,
                idx: rng.random_range(0..m.rank(tube)),
                start: rng.random_range(1..=5),
            }));
        }
        for _ in 0..rng.random_range(0..3) {
            let tube = rng.random_range(0..m.ranks.len() + 3);
            prims.push(Primitive::Coray(HalfLine {
                tube,
                idx: rng.random_range(0..m.rank(tube)),
                start: rng.random_range(1..=5),
            }));
        }
        for _ in 0..rng.random_range(0..3) {
            prims.push(Primitive::Singleton(random_point(rng, m)));
        }
        if prims.is_empty() {
            prims.push(Primitive::Singleton(random_point(rng, m)));
        }
        prims
    }

    #[test]
    fn containment_examples() {
        let m = model_2222();
        let ray = |idx, start| CompactOpenForm::Union {
            rays: vec![HalfLine { tube: 0, idx, start }],
            corays: vec![],
            extras: vec![],
        };
        // tail inclusion
        assert!(contains(&m, &ray(0, 2), &[ray(0, 1)]));
        assert!(!contains(&m, &ray(0, 1), &[ray(0, 2)]));
        // ray covered by later ray plus the missing points
        let filler = CompactOpenForm::Union {
            rays: vec![],
            corays: vec![],
            extras: vec![
                PointQ::Fd { tube: 0, idx: 0, len: 1 },
                PointQ::Fd { tube: 0, idx: 0, len: 2 },
            ],
        };
        assert!(contains(&m, &ray(0, 1), &[ray(0, 3), filler]));
        // a cofinite set is never inside a union of rays and corays
        let cof = CompactOpenForm::Cofinite { excluded: vec![] };
        let coray = CompactOpenForm::Union {
            rays: vec![],
            corays: vec![HalfLine { tube: 1, idx: 0, start: 1 }],
            extras: vec![],
        };
        assert!(!contains(&m, &cof, &[ray(0, 1), coray.clone()]));
        assert!(contains(
            &m,
            &cof,
            &[CompactOpenForm::Cofinite { excluded: vec![] }]
        ));
        // cofinite inside cofinite with residual points covered elsewhere
        let u = CompactOpenForm::Cofinite {
            excluded: vec![PointQ::Fd { tube: 0, idx: 0, len: 1 }],
        };
        let w = CompactOpenForm::Cofinite {
            excluded: vec![
                PointQ::Fd { tube: 0, idx: 0, len: 1 },
                PointQ::Fd { tube: 1, idx: 1, len: 2 },
            ],
        };
        assert!(!contains(&m, &u, &[w.clone()]));
        let patch = CompactOpenForm::Union {
            rays: vec![],
            corays: vec![],
            extras: vec![PointQ::Fd { tube: 1, idx: 1, len: 2 }],
        };
        assert!(contains(&m, &u, &[w, patch]));
    }

    #[test]
    fn closure_of_descriptions() {
        let m = model_2222();
        // full ray: adds its Pruefer, every adic of the tube, and the generic
        let s = PointSetDescr {
            full_rays: vec![(0, 0)],
            ..Default::default()
        };
        let c = closure_adjoin(&m, &s);
        assert!(c.points.contains(&PointQ::Prufer { tube: 0, idx: 0 }));
        assert!(c.points.contains(&PointQ::Adic { tube: 0, idx: 0 }));
        assert!(c.points.contains(&PointQ::Adic { tube: 0, idx: 1 }));
        assert!(c.points.contains(&PointQ::Generic));
        // finite sets are closed
        let s = PointSetDescr {
            points: vec![PointQ::Fd { tube: 0, idx: 0, len: 3 }],
            ..Default::default()
        };
        let c = closure_adjoin(&m, &s);
        assert_eq!(c.points.len(), 1);
        // an adic point pulls in the generic
        let s = PointSetDescr {
            points: vec![PointQ::Adic { tube: 1, idx: 0 }],
            ..Default::default()
        };
        let c = closure_adjoin(&m, &s);
        assert!(c.points.contains(&PointQ::Generic));
    }

    #[test]
    fn contains_agrees_with_truncated_brute_force() {
        // all four tubular rank patterns
        for ranks in [vec![2usize, 2, 2, 2], vec![3, 3, 3], vec![2, 4, 4], vec![2, 3, 6]] {
            let m = TubularFamilyModel::new(rat_int(1), ranks).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..150 {
                let u = normalize(&m, &random_primitives(&mut rng, &m));
                let k = rng.random_range(1..4);
                let ws: Vec<CompactOpenForm> = (0..k)
                    .map(|_| normalize(&m, &random_primitives(&mut rng, &m)))
                    .collect();
                let exact = contains(&m, &u, &ws);
                let brute = contains_truncated(&m, &u, &ws, 12, 6);
                assert_eq!(exact, brute, "disagree on u={u:?} ws={ws:?}");
            }
        }
    }

    #[test]
    fn complements_of_forms_are_closed() {
        // clause check on the truncated model: if the Pruefer of (t,i) lies
        // in the form, only finitely many FD points with source index i are
        // outside it; counts at two truncation levels must agree.
        let m = model_2222();
        let mut rng = ChaCha8Rng::seed_from_u64(123);
        for _ in 0..100 {
            let form = normalize(&m, &random_primitives(&mut rng, &m));
            for tube in 0..m.ranks.len() + 3 {
                for idx in 0..m.rank(tube) {
                    let prufer_in = membership(&m, &PointQ::Prufer { tube, idx }, &form);
                    if prufer_in {
                        let count = |max: usize| {
                            (1..=max)
                                .filter(|&len| {
                                    !membership(&m, &PointQ::Fd { tube, idx, len }, &form)
                                })
                                .count()
                        };
                        assert_eq!(count(20), count(40), "complement gains FD points forever");
                    }
                }
            }
        }
    }
}
