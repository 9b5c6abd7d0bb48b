//! A catalog of concrete indecomposable modules over `C(2,2,2,2; lambda)`
//! spread across the components: preprojectives, the slope-0 and slope-inf
//! families, the four rank-2 tubes at slope 1 with their length-2 layers
//! and homogeneous neighbours, and representatives strictly inside (0,1)
//! and (1,inf). Tube fixtures carry their tau-translate as metadata so
//! Ext dimensions can be cross-checked through AR duality without
//! computing translates.

use std::collections::HashMap;
use std::sync::Arc;

use num::{One, Zero};

use crate::algebra::{canonical_2222, AlgebraPresentation};
use crate::linalg::{rat_int, MatQ, Rat};
use crate::module::{module_from_rep, ModulePresentation};
use crate::Result;

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub module: ModulePresentation,
    /// name of the AR translate when it is part of the catalog
    pub tau: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Catalog {
    pub algebra: Arc<AlgebraPresentation>,
    pub lambda: i64,
    pub items: Vec<Fixture>,
}

fn m1(x: i64) -> MatQ {
    MatQ::from_int_rows(&[&[x]])
}

fn m1r(x: Rat) -> MatQ {
    let mut m = MatQ::zeros(1, 1);
    *m.at_mut(0, 0) = x;
    m
}

impl Catalog {
    pub fn standard(lambda: i64) -> Result<Catalog> {
        let algebra = Arc::new(canonical_2222(lambda));
        let lam = rat_int(lambda);
        let mut items: Vec<Fixture> = Vec::new();

        // arm j has middle vertex j+1; arrows inf -> j+1 -> 0
        let arrow_in = |j: usize| algebra.arrow_basis_index(5, j + 1).unwrap();
        let arrow_out = |j: usize| algebra.arrow_basis_index(j + 1, 0).unwrap();

        let rep = |comps: [usize; 6],
                   arms: &[(usize, MatQ, MatQ)]|
         -> Result<ModulePresentation> {
            let mut mats = HashMap::new();
            for (j, a, b) in arms {
                if a.rows * a.cols > 0 {
                    mats.insert(arrow_in(*j), a.clone());
                }
                if b.rows * b.cols > 0 {
                    mats.insert(arrow_out(*j), b.clone());
                }
            }
            module_from_rep(algebra.clone(), &comps, &mats)
        };

        let mut push = |name: &str, module: ModulePresentation, tau: Option<&str>| {
            items.push(Fixture {
                name: name.to_string(),
                module,
                tau: tau.map(str::to_string),
            });
        };

        // simples
        for (v, name) in ["S0", "S1", "S2", "S3", "S4", "Sinf"].iter().enumerate() {
            let mut comps = [0usize; 6];
            comps[v] = 1;
            let tau = match v {
                1 => Some("X1"),
                2 => Some("X2"),
                3 => Some("X3"),
                4 => Some("X4"),
                _ => None,
            };
            push(name, rep(comps, &[])?, tau);
        }

        // projectives P_v = e_v R as submodules of the regular module
        let reg = ModulePresentation::regular(algebra.clone());
        for (v, name) in ["P0", "P1", "P2", "P3", "P4", "Pinf"].iter().enumerate() {
            let gen = algebra.vertex_elements[v].coeffs.clone();
            let rows = reg.submodule_spanned_by(&[gen]);
            let (pv, _) = reg.restrict_to_invariant(&rows);
            push(name, pv, None);
        }
        // injectives I_v = duals of the opposite projectives
        let op = Arc::new(algebra.opposite());
        let reg_op = ModulePresentation::regular(op.clone());
        for (v, name) in ["I0", "I1", "I2", "I3", "I4", "Iinf"].iter().enumerate() {
            let gen = op.vertex_elements[v].coeffs.clone();
            let rows = reg_op.submodule_spanned_by(&[gen]);
            let (pv, _) = reg_op.restrict_to_invariant(&rows);
            push(name, pv.dual(), None);
        }

        // rank-2 tube quasi-simples at slope 1: X_i has dimension vector
        // (1, ..0 at vertex i.., 1) and pairs with S_i in its tube.
        // Composite scalars c_j along arm j must satisfy
        // c_2 = -c_0 - c_1 and c_3 = -c_0 - lambda c_1.
        let xmod = |czero: usize, lam: &Rat| -> [Rat; 4] {
            let mut c = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
            match czero {
                0 => {
                    c[1] = rat_int(1);
                    c[2] = rat_int(-1);
                    c[3] = -lam.clone();
                }
                1 => {
                    c[0] = rat_int(1);
                    c[2] = rat_int(-1);
                    c[3] = rat_int(-1);
                }
                2 => {
                    c[0] = rat_int(-1);
                    c[1] = rat_int(1);
                    c[3] = rat_int(1) - lam.clone();
                }
                _ => {
                    c[0] = -lam.clone();
                    c[1] = rat_int(1);
                    c[2] = lam.clone() - rat_int(1);
                }
            }
            c
        };
        for i in 0..4usize {
            let c = xmod(i, &lam);
            let mut comps = [1usize; 6];
            comps[i + 1] = 0;
            let arms: Vec<(usize, MatQ, MatQ)> = (0..4)
                .filter(|j| *j != i)
                .map(|j| (j, m1(1), m1r(c[j].clone())))
                .collect();
            push(
                &format!("X{}", i + 1),
                rep(comps, &arms)?,
                Some(&format!("S{}", i + 1)),
            );
        }

        // length-2 modules in the tube at vertex 1 (equal dimension vectors,
        // non-isomorphic): arm 0 carries (a, b) = (1, 0) and (0, 1).
        {
            let base: Vec<(usize, MatQ, MatQ)> = vec![
                (1, m1(1), m1(1)),
                (2, m1(1), m1(-1)),
                (3, m1(1), m1r(-lam.clone())),
            ];
            let mut arms_a = base.clone();
            arms_a.push((0, m1(1), MatQ::zeros(1, 1)));
            let mut arms_b = base;
            arms_b.push((0, MatQ::zeros(1, 1), m1(1)));
            push("Y1a", rep([1; 6], &arms_a)?, Some("Y1b"));
            push("Y1b", rep([1; 6], &arms_b)?, Some("Y1a"));
        }

        // homogeneous quasi-simples at slope 1 with parameters (s : t);
        // degenerate values are (0:1), (1:0), (1:-1), (lambda:-1)
        for (name, s, t) in [("H11", 1i64, 1i64), ("H12", 1, 2)] {
            let c0 = rat_int(s);
            let c1 = rat_int(t);
            let c2 = -c0.clone() - c1.clone();
            let c3 = -c0.clone() - lam.clone() * c1.clone();
            assert!(![&c0, &c1, &c2, &c3].iter().any(|c| c.is_zero() && lambda != 0));
            let arms: Vec<(usize, MatQ, MatQ)> = [c0, c1, c2, c3]
                .into_iter()
                .enumerate()
                .map(|(j, c)| (j, m1(1), m1r(c)))
                .collect();
            push(name, rep([1; 6], &arms)?, Some(name));
        }

        // level 2 of the homogeneous tube at (1:1): a non-split
        // self-extension with local two-dimensional endomorphism ring
        {
            let eye = MatQ::identity(2);
            let nil = MatQ::from_int_rows(&[&[0, 1], &[0, 0]]);
            let c0 = eye.add(&nil); // I + N
            let c1 = eye.clone();
            let c2 = c0.add(&c1).scale(&rat_int(-1));
            let c3 = c0.add(&c1.scale(&lam)).scale(&rat_int(-1));
            let arms: Vec<(usize, MatQ, MatQ)> = [c0, c1, c2, c3]
                .into_iter()
                .enumerate()
                .map(|(j, c)| (j, eye.clone(), c))
                .collect();
            push("H11L2", rep([2; 6], &arms)?, Some("H11L2"));
        }

        // slope 0: the homogeneous quasi-simple (2,1,1,1,1,0) (lines
        // (1,0),(0,1),(1,1),(1,lambda) into the center) and an
        // inhomogeneous representative (1,1,1,0,0,0)
        {
            let lines = [
                MatQ::from_int_rows(&[&[1, 0]]),
                MatQ::from_int_rows(&[&[0, 1]]),
                MatQ::from_int_rows(&[&[1, 1]]),
                MatQ::from_rows(vec![vec![Rat::one(), lam.clone()]]),
            ];
            let arms: Vec<(usize, MatQ, MatQ)> = lines
                .into_iter()
                .enumerate()
                .map(|(j, b)| (j, MatQ::zeros(0, 1), b))
                .collect();
            push("Z0h", rep([2, 1, 1, 1, 1, 0], &arms)?, None);
            let arms = vec![
                (0usize, MatQ::zeros(0, 1), m1(1)),
                (1, MatQ::zeros(0, 1), m1(1)),
            ];
            push("Z0r", rep([1, 1, 1, 0, 0, 0], &arms)?, None);
        }

        // strictly inside (0,1): slope 1/2 and four modules of slope 1/3
        {
            let arms: Vec<(usize, MatQ, MatQ)> =
                (0..4).map(|j| (j, MatQ::zeros(0, 1), m1(1))).collect();
            push("Jhalf", rep([1, 1, 1, 1, 1, 0], &arms)?, None);
        }
        for i in 0..4usize {
            let mut comps = [1usize; 6];
            comps[i + 1] = 0;
            comps[5] = 0;
            let arms: Vec<(usize, MatQ, MatQ)> = (0..4)
                .filter(|j| *j != i)
                .map(|j| (j, MatQ::zeros(0, 1), m1(1)))
                .collect();
            push(&format!("K{}", i + 1), rep(comps, &arms)?, None);
        }

        // strictly inside (1,inf): four modules of slope 3 and one of slope 5
        for i in 0..4usize {
            let mut comps = [1usize; 6];
            comps[0] = 0;
            comps[i + 1] = 0;
            let arms: Vec<(usize, MatQ, MatQ)> = (0..4)
                .filter(|j| *j != i)
                .map(|j| (j, m1(1), MatQ::zeros(1, 0)))
                .collect();
            push(&format!("L{}", i + 1), rep(comps, &arms)?, None);
        }
        {
            let arms = vec![
                (0usize, MatQ::from_int_rows(&[&[1], &[0]]), MatQ::zeros(1, 0)),
                (1, MatQ::from_int_rows(&[&[0], &[1]]), MatQ::zeros(1, 0)),
                (2, MatQ::from_int_rows(&[&[1], &[1]]), MatQ::zeros(1, 0)),
                (3, MatQ::identity(2), MatQ::zeros(2, 0)),
            ];
            push("M5", rep([0, 1, 1, 1, 2, 2], &arms)?, None);
        }

        // slope inf example besides the injectives
        {
            let arms = vec![(0usize, m1(1), MatQ::zeros(1, 0)), (1, m1(1), MatQ::zeros(1, 0))];
            push("Winf", rep([0, 1, 1, 0, 0, 1], &arms)?, None);
        }

        Ok(Catalog {
            algebra,
            lambda,
            items,
        })
    }

    pub fn get(&self, name: &str) -> Result<&Fixture> {
        self.items
            .iter()
            .find(|f| f.name == name)
            .ok_or_else(|| crate::Error::MissingFixture(name.to_string()))
    }

    /// The distinguished exceptional module with dimension vector
    /// (1,0,1,1,1,1) at slope 1.
    pub fn x_module(&self) -> &Fixture {
        self.items.iter().find(|f| f.name == "X1").unwrap()
    }

    pub fn names(&self) -> Vec<&str> {
        self.items.iter().map(|f| f.name.as_str()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{is_indecomposable, Indecomposability};
    use crate::euler::{EulerData, SlopeValue};
    use crate::linalg::rat;

    #[test]
    fn all_fixtures_validate_and_are_absolutely_indecomposable() {
        let cat = Catalog::standard(2).unwrap();
        for f in &cat.items {
            f.module.validate().unwrap_or_else(|e| panic!("{}: {e}", f.name));
            match is_indecomposable(&f.module, 1).unwrap() {
                Indecomposability::AbsolutelyIndecomposable => {}
                other => panic!("{} is not absolutely indecomposable: {other:?}", f.name),
            }
        }
    }

    #[test]
    fn fixture_slopes_match_expectations() {
        let cat = Catalog::standard(2).unwrap();
        let e = EulerData::new(&cat.algebra).unwrap();
        let slope = |name: &str| -> SlopeValue {
            e.slope_of(&cat.get(name).unwrap().module.dim_vector())
        };
        assert_eq!(slope("X1"), SlopeValue::Finite(rat_int(1)));
        assert_eq!(slope("S1"), SlopeValue::Finite(rat_int(1)));
        assert_eq!(slope("H11"), SlopeValue::Finite(rat_int(1)));
        assert_eq!(slope("Pinf"), SlopeValue::Finite(rat_int(0)));
        assert_eq!(slope("Z0h"), SlopeValue::Finite(rat_int(0)));
        assert_eq!(slope("Z0r"), SlopeValue::Finite(rat_int(0)));
        assert_eq!(slope("Jhalf"), SlopeValue::Finite(rat(1, 2)));
        assert_eq!(slope("K1"), SlopeValue::Finite(rat(1, 3)));
        assert_eq!(slope("L1"), SlopeValue::Finite(rat_int(3)));
        assert_eq!(slope("M5"), SlopeValue::Finite(rat_int(5)));
        assert_eq!(slope("I0"), SlopeValue::Infinity);
        assert_eq!(slope("Winf"), SlopeValue::Infinity);
        // the unique slope-zero projective and slope-infinity injective
        assert_eq!(
            cat.get("Pinf").unwrap().module.dim_vector(),
            vec![2, 1, 1, 1, 1, 1]
        );
        assert_eq!(
            cat.get("I0").unwrap().module.dim_vector(),
            vec![1, 1, 1, 1, 1, 2]
        );
        assert_eq!(
            cat.get("X1").unwrap().module.dim_vector(),
            vec![1, 0, 1, 1, 1, 1]
        );
    }

    #[test]
    fn x_fixture_matches_paper_data() {
        let cat = Catalog::standard(3).unwrap();
        let x = cat.x_module();
        assert_eq!(x.module.dim_vector(), vec![1, 0, 1, 1, 1, 1]);
        // dual of the slope-1 module again has slope 1 = 1/1
        let e_op = EulerData::new(&x.module.dual().algebra).unwrap();
        assert_eq!(
            e_op.slope_of(&x.module.dual().dim_vector()),
            SlopeValue::Finite(rat_int(1))
        );
    }

    #[test]
    fn length_two_tube_layers_share_dim_vector_but_are_not_isomorphic() {
        use crate::decomp::{are_isomorphic, IsoResult};
        let cat = Catalog::standard(2).unwrap();
        let a = &cat.get("Y1a").unwrap().module;
        let b = &cat.get("Y1b").unwrap().module;
        assert_eq!(a.dim_vector(), b.dim_vector());
        assert!(matches!(
            are_isomorphic(a, b, 5, 16).unwrap(),
            IsoResult::No(_)
        ));
    }

    #[test]
    fn euler_pairing_matches_hom_minus_ext_on_tube_fixtures() {
        use crate::module::hom_dim;
        let cat = Catalog::standard(2).unwrap();
        let e = EulerData::new(&cat.algebra).unwrap();
        let tube_fixtures = ["X1", "S1", "X2", "S2", "Y1a", "Y1b", "H11", "H12"];
        for m in tube_fixtures {
            for n in tube_fixtures {
                let fm = cat.get(m).unwrap();
                let fn_ = cat.get(n).unwrap();
                let tau_m = cat.get(fm.tau.as_deref().unwrap()).unwrap();
                let hom = hom_dim(&fm.module, &fn_.module).unwrap() as i64;
                let ext = hom_dim(&fn_.module, &tau_m.module).unwrap() as i64;
                let pairing = e
                    .pair(&fm.module.dim_vector(), &fn_.module.dim_vector())
                    .unwrap();
                assert_eq!(pairing, hom - ext, "pairing mismatch for ({m}, {n})");
            }
        }
    }

    #[test]
    fn endo_radical_of_self_extension_is_nilpotent_and_nonzero() {
        use crate::decomp::endo_radical;
        let cat = Catalog::standard(2).unwrap();
        let h2 = &cat.get("H11L2").unwrap().module;
        let rad = endo_radical(h2).unwrap();
        assert_eq!(rad.len(), 1);
        let sq = rad[0].mul(&rad[0]);
        assert!(sq.is_zero());
    }
}
