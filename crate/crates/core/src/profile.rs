//! Slope profiles: for a pp-pair, the finite set of interior breakpoints
//! and the linear functional giving the pair's dimension on every
//! indecomposable whose slope lies strictly inside each interval.
//!
//! The profile of a formula comes from its free realization: breakpoints
//! are the interior slopes of the indecomposable factors of the realizing
//! module and of the cokernel of its tuple, and the interval functionals
//! are Euler pairings against the accumulated factor dimension vectors.
//! Pair profiles subtract formula profiles on the common breakpoint
//! refinement. At a breakpoint itself the profile makes no claim.

use num::Zero;

use crate::decomp::decompose;
use crate::euler::{EulerData, SlopeValue};
use crate::linalg::Rat;
use crate::module::DimVector;
use crate::pp::{PpFormula, PpPair};
use crate::{Error, Result};

/// Location of an indecomposable in the module category.
#[derive(Debug, Clone, PartialEq)]
pub enum ComponentClass {
    Preprojective,
    Preinjective,
    Slope(SlopeValue),
}

/// Classifies an indecomposable dimension vector by the sign pattern of its
/// pairings with the canonical radical vectors.
pub fn classify_component(e: &EulerData, x: &[i64]) -> Result<ComponentClass> {
    if !e.is_indec_dimvector(x) {
        return Err(Error::Validation(format!(
            "{x:?} is not an indecomposable dimension vector"
        )));
    }
    let p0 = crate::euler::dot(&e.g0, x);
    let pinf = crate::euler::dot(&e.ginf, x);
    if p0 < 0 && pinf <= 0 {
        Ok(ComponentClass::Preprojective)
    } else if p0 >= 0 && pinf > 0 {
        Ok(ComponentClass::Preinjective)
    } else {
        Ok(ComponentClass::Slope(e.slope_of(x)))
    }
}

/// Breakpoints and per-interval dimension functionals.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeProfile {
    /// strictly increasing rationals in (0, inf)
    pub breakpoints: Vec<Rat>,
    /// one functional per open interval; `vectors[i]` is valid on
    /// `(q_i, q_{i+1})` with `q_0 = 0` and `q_{n+1} = inf`
    pub vectors: Vec<DimVector>,
}

impl SlopeProfile {
    pub fn interval_count(&self) -> usize {
        self.breakpoints.len() + 1
    }

    /// Index of the open interval strictly containing `q`, unless `q` is a
    /// breakpoint.
    pub fn interval_of(&self, q: &Rat) -> Option<usize> {
        if self.breakpoints.contains(q) {
            return None;
        }
        Some(self.breakpoints.iter().filter(|b| *b < q).count())
    }

    /// Functional on the interval whose left endpoint is `q` (left-adjacent
    /// interval of a breakpoint: index of the interval just below `q`).
    pub fn vector_left_of(&self, q: &Rat) -> &DimVector {
        let idx = self.breakpoints.iter().filter(|b| *b < q).count();
        &self.vectors[idx]
    }

    pub fn vector_right_of(&self, q: &Rat) -> &DimVector {
        let idx = self.breakpoints.iter().filter(|b| *b <= q).count();
        &self.vectors[idx]
    }
}

struct ClassifiedFactors {
    /// (dimension vector, class) of each indecomposable factor
    factors: Vec<(DimVector, ComponentClass)>,
}

fn classify_module_factors(
    e: &EulerData,
    m: &crate::module::ModulePresentation,
    seed: u64,
) -> Result<ClassifiedFactors> {
    let d = decompose(m, seed)?;
    if !d.all_absolute {
        return Err(Error::NonAbsoluteDecomposition(
            "a free-realization factor is indecomposable but not absolutely".into(),
        ));
    }
    let mut factors = Vec::new();
    for f in &d.factors {
        let dv = f.module.dim_vector();
        let class = classify_component(e, &dv)?;
        factors.push((dv, class));
    }
    Ok(ClassifiedFactors { factors })
}

fn interior_slopes(parts: &[&ClassifiedFactors]) -> Vec<Rat> {
    let mut out: Vec<Rat> = Vec::new();
    for p in parts {
        for (_, class) in &p.factors {
            if let ComponentClass::Slope(SlopeValue::Finite(q)) = class {
                if *q > Rat::zero() {
                    out.push(q.clone());
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Sum of the dimension vectors of the factors visible from the interval
/// with left endpoint `left`: preprojectives and slopes `<= left`.
fn accumulate(e: &EulerData, f: &ClassifiedFactors, left: &Rat) -> DimVector {
    let mut acc = vec![0i64; e.n];
    for (dv, class) in &f.factors {
        let include = match class {
            ComponentClass::Preprojective => true,
            ComponentClass::Preinjective => false,
            ComponentClass::Slope(SlopeValue::Finite(q)) => q <= left,
            ComponentClass::Slope(SlopeValue::Infinity) => false,
            ComponentClass::Slope(SlopeValue::Undefined) => false,
        };
        if include {
            for (a, b) in acc.iter_mut().zip(dv) {
                *a += b;
            }
        }
    }
    acc
}

fn pair_with_euler(e: &EulerData, w: &[i64]) -> DimVector {
    // v_j = <w, e_j>: the row w . E
    (0..e.n)
        .map(|j| (0..e.n).map(|i| w[i] * e.euler_matrix[i][j]).sum())
        .collect()
}

/// Profile of a single right pp-formula.
pub fn formula_profile(e: &EulerData, f: &PpFormula, seed: u64) -> Result<SlopeProfile> {
    let fr = crate::pp::free_realization(f)?;
    let mf = classify_module_factors(e, &fr.module, seed)?;
    let cf = classify_module_factors(e, &fr.cokernel, seed)?;
    let breakpoints = interior_slopes(&[&mf, &cf]);
    let mut lefts: Vec<Rat> = vec![Rat::zero()];
    lefts.extend(breakpoints.iter().cloned());
    let vectors = lefts
        .iter()
        .map(|left| {
            let w = accumulate(e, &mf, left);
            let u = accumulate(e, &cf, left);
            let diff: DimVector = w.iter().zip(&u).map(|(a, b)| a - b).collect();
            pair_with_euler(e, &diff)
        })
        .collect();
    Ok(SlopeProfile {
        breakpoints,
        vectors,
    })
}

/// Profile of a pp-pair: the formula profiles subtracted on the common
/// refinement of their breakpoints.
pub fn slope_profile(e: &EulerData, pair: &PpPair, seed: u64) -> Result<SlopeProfile> {
    let top = formula_profile(e, &pair.phi, seed)?;
    let bot = formula_profile(e, &pair.psi, seed)?;
    Ok(subtract_profiles(&top, &bot))
}

fn subtract_profiles(a: &SlopeProfile, b: &SlopeProfile) -> SlopeProfile {
    let mut breakpoints: Vec<Rat> = a
        .breakpoints
        .iter()
        .chain(b.breakpoints.iter())
        .cloned()
        .collect();
    breakpoints.sort();
    breakpoints.dedup();
    let mut lefts: Vec<Rat> = vec![Rat::zero()];
    lefts.extend(breakpoints.iter().cloned());
    let vectors = lefts
        .iter()
        .map(|left| {
            let ia = a.breakpoints.iter().filter(|q| *q <= left).count();
            let ib = b.breakpoints.iter().filter(|q| *q <= left).count();
            a.vectors[ia]
                .iter()
                .zip(&b.vectors[ib])
                .map(|(x, y)| x - y)
                .collect()
        })
        .collect();
    SlopeProfile {
        breakpoints,
        vectors,
    }
}

/// Verdict of the homogeneous-tube uniformity test at a rational slope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Uniformity {
    UniformlyClosed,
    OpenOnHomogeneous,
}

/// The primitive positive radical vector of slope `q = b/a`:
/// content-normalized `a h0 + b hinf`.
pub fn homogeneous_radical_at(e: &EulerData, q: &Rat) -> Result<DimVector> {
    if *q <= Rat::zero() {
        return Err(Error::InvalidWindow(format!(
            "slope {} is not strictly positive",
            crate::linalg::fmt_rat(q)
        )));
    }
    let b = i64::try_from(q.numer().clone()).expect("slope numerator fits");
    let a = i64::try_from(q.denom().clone()).expect("slope denominator fits");
    let mut w: DimVector = e
        .h0
        .iter()
        .zip(&e.hinf)
        .map(|(p, r)| a * p + b * r)
        .collect();
    let g = w.iter().fold(0i64, |acc, &x| num::integer::gcd(acc, x));
    if g > 1 {
        for x in &mut w {
            *x /= g;
        }
    }
    Ok(w)
}

/// On the homogeneous tubes of slope `q`, a functional `v` valid on an
/// adjacent interval is either identically zero (pairs closed there) or
/// positive (pairs open there): decided by `v . w_q`.
pub fn uniformity_at_q(e: &EulerData, v: &[i64], q: &Rat) -> Result<Uniformity> {
    let w = homogeneous_radical_at(e, q)?;
    if crate::euler::dot(v, &w) == 0 {
        Ok(Uniformity::UniformlyClosed)
    } else {
        Ok(Uniformity::OpenOnHomogeneous)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::canonical_2222;
    use crate::fixtures::Catalog;
    use crate::linalg::{rat, rat_int};
    use crate::pp::{rep_functor_pair, FormulaSide, PpFormula, PpPair};
    use std::sync::Arc;

    fn setup() -> (Catalog, EulerData) {
        let cat = Catalog::standard(2).unwrap();
        let e = EulerData::new(&cat.algebra).unwrap();
        (cat, e)
    }

    #[test]
    fn classification_trichotomy_anchors() {
        let (_, e) = setup();
        assert_eq!(
            classify_component(&e, &[1, 0, 0, 0, 0, 0]).unwrap(),
            ComponentClass::Preprojective
        );
        assert_eq!(
            classify_component(&e, &[0, 0, 0, 0, 0, 1]).unwrap(),
            ComponentClass::Preinjective
        );
        assert_eq!(
            classify_component(&e, &[2, 1, 1, 1, 1, 1]).unwrap(),
            ComponentClass::Slope(SlopeValue::Finite(rat_int(0)))
        );
        assert_eq!(
            classify_component(&e, &[1, 0, 1, 1, 1, 1]).unwrap(),
            ComponentClass::Slope(SlopeValue::Finite(rat_int(1)))
        );
        assert!(classify_component(&e, &[1, 0, 0, 0, 0, 1]).is_err());
    }

    #[test]
    fn trivial_pair_profiles() {
        let (cat, e) = setup();
        let a: Arc<_> = cat.algebra.clone();
        let top = PpFormula::top(a.clone(), FormulaSide::Right, 1);
        let bot = PpFormula::bottom(a.clone(), FormulaSide::Right, 1);
        // (x=x)/(x=x): no breakpoints, zero functionals
        let pair = PpPair::new(top.clone(), &top).unwrap();
        let p = slope_profile(&e, &pair, 1).unwrap();
        assert!(p.breakpoints.is_empty());
        assert!(p.vectors.iter().all(|v| v.iter().all(|&c| c == 0)));
        // (x=x)/(x=0): total dimension
        let pair = PpPair::new(top, &bot).unwrap();
        let p = slope_profile(&e, &pair, 1).unwrap();
        assert!(p.breakpoints.is_empty());
        assert_eq!(p.vectors, vec![vec![1, 1, 1, 1, 1, 1]]);
    }

    #[test]
    fn profile_of_hom_functor_of_x() {
        let (cat, e) = setup();
        let x = &cat.x_module().module;
        let pair = rep_functor_pair(x).unwrap();
        let p = slope_profile(&e, &pair, 1).unwrap();
        assert_eq!(p.breakpoints, vec![rat_int(1)]);
        assert_eq!(p.vectors[0], vec![0, 0, 0, 0, 0, 0]);
        assert_eq!(p.vectors[1], vec![0, -1, 0, 0, 0, 1]);
    }

    #[test]
    fn profile_predicts_hom_dimensions_on_interior_fixtures() {
        let (cat, e) = setup();
        let x = &cat.x_module().module;
        let pair = rep_functor_pair(x).unwrap();
        let p = slope_profile(&e, &pair, 1).unwrap();
        // interval (0,1): K-family and Jhalf; interval (1,inf): L-family, M5
        for name in ["Jhalf", "K1", "K2", "K3", "K4"] {
            let f = cat.get(name).unwrap();
            let dv = f.module.dim_vector();
            let predicted: i64 = p.vectors[0]
                .iter()
                .zip(&dv)
                .map(|(a, b)| a * b)
                .sum();
            assert_eq!(
                pair.dim_at(&f.module).unwrap() as i64,
                predicted,
                "at {name}"
            );
        }
        for name in ["L1", "L2", "L3", "L4", "M5"] {
            let f = cat.get(name).unwrap();
            let dv = f.module.dim_vector();
            let predicted: i64 = p.vectors[1]
                .iter()
                .zip(&dv)
                .map(|(a, b)| a * b)
                .sum();
            assert_eq!(
                pair.dim_at(&f.module).unwrap() as i64,
                predicted,
                "at {name}"
            );
        }
    }

    #[test]
    fn uniformity_tests_match_radical_pairings() {
        let (_, e) = setup();
        assert_eq!(
            uniformity_at_q(&e, &[0; 6], &rat_int(1)).unwrap(),
            Uniformity::UniformlyClosed
        );
        assert_eq!(
            uniformity_at_q(&e, &[0, -1, 0, 0, 0, 1], &rat(3, 2)).unwrap(),
            Uniformity::OpenOnHomogeneous
        );
        // w_{3/2} = 2 h0 + 3 hinf = (4,5,5,5,5,6), pairing (b-a)/c = 1
        let w = homogeneous_radical_at(&e, &rat(3, 2)).unwrap();
        assert_eq!(w, vec![4, 5, 5, 5, 5, 6]);
        assert_eq!(crate::euler::dot(&[0, -1, 0, 0, 0, 1], &w), 1);
        assert_eq!(
            uniformity_at_q(&e, &[1; 6], &rat_int(1)).unwrap(),
            Uniformity::OpenOnHomogeneous
        );
        // Claim-1 functional is closed on the homogeneous tubes at slope 1
        assert_eq!(
            uniformity_at_q(&e, &[0, -1, 0, 0, 0, 1], &rat_int(1)).unwrap(),
            Uniformity::UniformlyClosed
        );
        assert!(uniformity_at_q(&e, &[1; 6], &rat_int(0)).is_err());
    }
}
