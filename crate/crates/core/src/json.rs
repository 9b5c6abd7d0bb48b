//! JSON wire formats. Rationals travel as strings `p/q` (`p` when the
//! denominator is one); algebra elements as coefficient vectors over the
//! algebra basis.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, AlgebraPresentation};
use crate::decide::{SentenceExpr, SuppliedForms};
use crate::linalg::{fmt_rat, parse_rat, MatQ};
use crate::module::ModulePresentation;
use crate::pp::{FormulaSide, InvariantCondition, PpFormula, PpPair, Sense};
use crate::ziegler::{CompactOpenForm, HalfLine, PointQ, TubularFamilyModel};
use crate::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub name: String,
    pub basis: Vec<String>,
    pub unit_index: usize,
    /// sparse structure constants `(i, j, k, coefficient)`
    pub structure: Vec<(usize, usize, usize, String)>,
    /// primitive idempotents as coefficient vectors
    pub vertices: Vec<Vec<String>>,
    pub quiver: QuiverJson,
}

pub fn algebra_to_json(a: &AlgebraPresentation) -> AlgebraJson {
    AlgebraJson {
        name: a.name.clone(),
        basis: a.basis_symbols.clone(),
        unit_index: a.unit_index,
        structure: a
            .structure_triples()
            .into_iter()
            .map(|(i, j, k, c)| (i, j, k, fmt_rat(&c)))
            .collect(),
        vertices: a
            .vertex_elements
            .iter()
            .map(|e| e.coeffs.iter().map(fmt_rat).collect())
            .collect(),
        quiver: QuiverJson {
            vertices: a.vertex_names.clone(),
            edges: a.quiver_edges.clone(),
        },
    }
}

pub fn algebra_from_json(j: &AlgebraJson) -> Result<AlgebraPresentation> {
    let s = j.basis.len();
    let triples: Vec<(usize, usize, usize, crate::linalg::Rat)> = j
        .structure
        .iter()
        .map(|(a, b, c, v)| Ok((*a, *b, *c, parse_rat(v)?)))
        .collect::<Result<_>>()?;
    let vertices: Vec<AlgebraElement> = j
        .vertices
        .iter()
        .map(|coeffs| {
            if coeffs.len() != s {
                return Err(Error::Parse("vertex element length mismatch".into()));
            }
            Ok(AlgebraElement {
                coeffs: coeffs.iter().map(|c| parse_rat(c)).collect::<Result<_>>()?,
            })
        })
        .collect::<Result<_>>()?;
    let alg = AlgebraPresentation::from_structure(
        j.name.clone(),
        j.basis.clone(),
        j.unit_index,
        &triples,
        vertices,
        j.quiver.vertices.clone(),
        j.quiver.edges.clone(),
    );
    alg.validate()?;
    Ok(alg)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ModuleJson {
    pub algebra_ref: String,
    pub dim: usize,
    /// one row-major matrix per algebra basis element
    pub actions: Vec<Vec<Vec<String>>>,
}

pub fn module_to_json(m: &ModulePresentation) -> ModuleJson {
    ModuleJson {
        algebra_ref: m.algebra.name.clone(),
        dim: m.dim,
        actions: m
            .actions
            .iter()
            .map(|a| {
                (0..a.rows)
                    .map(|i| a.row(i).iter().map(fmt_rat).collect())
                    .collect()
            })
            .collect(),
    }
}

pub fn module_from_json(
    j: &ModuleJson,
    algebra: Arc<AlgebraPresentation>,
) -> Result<ModulePresentation> {
    if j.algebra_ref != algebra.name {
        return Err(Error::Parse(format!(
            "module references algebra {:?}, loaded algebra is {:?}",
            j.algebra_ref, algebra.name
        )));
    }
    if j.actions.len() != algebra.dim() {
        return Err(Error::Parse(format!(
            "expected {} action matrices",
            algebra.dim()
        )));
    }
    let actions: Vec<MatQ> = j
        .actions
        .iter()
        .map(|rows| {
            if rows.len() != j.dim || rows.iter().any(|r| r.len() != j.dim) {
                return Err(Error::Parse("action matrix shape mismatch".into()));
            }
            let parsed: Vec<Vec<crate::linalg::Rat>> = rows
                .iter()
                .map(|r| r.iter().map(|c| parse_rat(c)).collect::<Result<_>>())
                .collect::<Result<_>>()?;
            Ok(MatQ::from_rows(parsed))
        })
        .collect::<Result<_>>()?;
    let m = ModulePresentation {
        algebra,
        dim: j.dim,
        actions,
    };
    m.validate()?;
    Ok(m)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FormulaJson {
    pub side: String,
    pub n: usize,
    pub l: usize,
    /// matrix of algebra elements, each a coefficient vector
    pub h: Vec<Vec<Vec<String>>>,
}

pub fn formula_to_json(f: &PpFormula) -> FormulaJson {
    FormulaJson {
        side: match f.side {
            FormulaSide::Right => "right".into(),
            FormulaSide::Left => "left".into(),
        },
        n: f.free_count,
        l: f.bound_count,
        h: f
            .h
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| e.coeffs.iter().map(fmt_rat).collect())
                    .collect()
            })
            .collect(),
    }
}

pub fn formula_from_json(
    j: &FormulaJson,
    algebra: Arc<AlgebraPresentation>,
) -> Result<PpFormula> {
    let side = match j.side.as_str() {
        "right" => FormulaSide::Right,
        "left" => FormulaSide::Left,
        other => return Err(Error::Parse(format!("unknown formula side {other:?}"))),
    };
    let (rows, cols_fixed) = match side {
        FormulaSide::Right => (j.n + j.l, None),
        FormulaSide::Left => (usize::MAX, Some(j.n + j.l)),
    };
    if side == FormulaSide::Right && j.h.len() != rows {
        return Err(Error::Parse(format!(
            "H must have {} rows for a right formula",
            j.n + j.l
        )));
    }
    let s = algebra.dim();
    let h: Vec<Vec<AlgebraElement>> = j
        .h
        .iter()
        .map(|row| {
            if let Some(c) = cols_fixed {
                if row.len() != c {
                    return Err(Error::Parse(format!(
                        "H rows must have {} entries for a left formula",
                        c
                    )));
                }
            }
            row.iter()
                .map(|coeffs| {
                    if coeffs.len() != s {
                        return Err(Error::Parse(
                            "algebra element coefficient length mismatch".into(),
                        ));
                    }
                    Ok(AlgebraElement {
                        coeffs: coeffs.iter().map(|c| parse_rat(c)).collect::<Result<_>>()?,
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    // ragged/consistency checks for the right side
    if side == FormulaSide::Right {
        let m = h.first().map_or(0, Vec::len);
        if h.iter().any(|r| r.len() != m) {
            return Err(Error::Parse("ragged H matrix".into()));
        }
    }
    Ok(PpFormula {
        algebra,
        side,
        free_count: j.n,
        bound_count: j.l,
        h,
    })
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PairJson {
    pub phi: FormulaJson,
    pub psi: FormulaJson,
}

pub fn pair_to_json(p: &PpPair) -> PairJson {
    PairJson {
        phi: formula_to_json(&p.phi),
        psi: formula_to_json(&p.psi),
    }
}

pub fn pair_from_json(j: &PairJson, algebra: Arc<AlgebraPresentation>) -> Result<PpPair> {
    let phi = formula_from_json(&j.phi, algebra.clone())?;
    let psi = formula_from_json(&j.psi, algebra)?;
    PpPair::new(phi, &psi)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FamilyJson {
    /// rational slope as `b/a`
    pub slope: String,
    pub ranks: Vec<usize>,
}

pub fn family_from_json(j: &FamilyJson) -> Result<TubularFamilyModel> {
    TubularFamilyModel::new(parse_rat(&j.slope)?, j.ranks.clone())
}

/// Points serialize as `[kind, tube, idx, len]` with kind one of
/// `"fd" | "prufer" | "adic" | "generic"`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointJson {
    Fd(String, usize, usize, usize),
    Infinite(String, usize, usize),
    Generic(String),
}

pub fn point_to_json(p: &PointQ) -> PointJson {
    match *p {
        PointQ::Fd { tube, idx, len } => PointJson::Fd("fd".into(), tube, idx, len),
        PointQ::Prufer { tube, idx } => PointJson::Infinite("prufer".into(), tube, idx),
        PointQ::Adic { tube, idx } => PointJson::Infinite("adic".into(), tube, idx),
        PointQ::Generic => PointJson::Generic("generic".into()),
    }
}

pub fn point_from_json(j: &PointJson) -> Result<PointQ> {
    match j {
        PointJson::Fd(kind, tube, idx, len) if kind == "fd" => Ok(PointQ::Fd {
            tube: *tube,
            idx: *idx,
            len: *len,
        }),
        PointJson::Infinite(kind, tube, idx) => match kind.as_str() {
            "prufer" => Ok(PointQ::Prufer {
                tube: *tube,
                idx: *idx,
            }),
            "adic" => Ok(PointQ::Adic {
                tube: *tube,
                idx: *idx,
            }),
            other => Err(Error::Parse(format!("unknown point kind {other:?}"))),
        },
        PointJson::Generic(kind) if kind == "generic" => Ok(PointQ::Generic),
        _ => Err(Error::Parse("malformed point".into())),
    }
}

#[derive(Debug, Serialize, Deserialize, Default)]
pub struct FormJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cofinite: Option<Vec<PointJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rays: Option<Vec<(usize, usize, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corays: Option<Vec<(usize, usize, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extras: Option<Vec<PointJson>>,
}

pub fn form_to_json(f: &CompactOpenForm) -> FormJson {
    match f {
        CompactOpenForm::Cofinite { excluded } => FormJson {
            cofinite: Some(excluded.iter().map(point_to_json).collect()),
            ..Default::default()
        },
        CompactOpenForm::Union {
            rays,
            corays,
            extras,
        } => FormJson {
            cofinite: None,
            rays: Some(rays.iter().map(|h| (h.tube, h.idx, h.start)).collect()),
            corays: Some(corays.iter().map(|h| (h.tube, h.idx, h.start)).collect()),
            extras: Some(extras.iter().map(point_to_json).collect()),
        },
    }
}

pub fn form_from_json(j: &FormJson) -> Result<CompactOpenForm> {
    if let Some(cof) = &j.cofinite {
        let excluded: Vec<PointQ> = cof.iter().map(point_from_json).collect::<Result<_>>()?;
        if excluded.iter().any(|p| !p.is_fd()) {
            return Err(Error::Parse(
                "cofinite exclusions must be finite-dimensional points".into(),
            ));
        }
        return Ok(CompactOpenForm::Cofinite { excluded });
    }
    let lines = |v: &Option<Vec<(usize, usize, usize)>>| -> Vec<HalfLine> {
        v.as_deref()
            .unwrap_or(&[])
            .iter()
            .map(|&(tube, idx, start)| HalfLine {
                tube,
                idx,
                start: start.max(1),
            })
            .collect()
    };
    Ok(CompactOpenForm::Union {
        rays: lines(&j.rays),
        corays: lines(&j.corays),
        extras: j
            .extras
            .as_deref()
            .unwrap_or(&[])
            .iter()
            .map(point_from_json)
            .collect::<Result<_>>()?,
    })
}

/// Boolean sentence trees: `{"atom": {"pair": PAIR, "sense": "open"}}`,
/// `{"and": [...]}`, `{"or": [...]}`, `{"not": EXPR}`.
#[derive(Debug, Serialize, Deserialize)]
pub enum SentenceJson {
    #[serde(rename = "atom")]
    Atom { pair: PairJson, sense: String },
    #[serde(rename = "and")]
    And(Vec<SentenceJson>),
    #[serde(rename = "or")]
    Or(Vec<SentenceJson>),
    #[serde(rename = "not")]
    Not(Box<SentenceJson>),
}

pub fn sentence_from_json(
    j: &SentenceJson,
    algebra: Arc<AlgebraPresentation>,
) -> Result<SentenceExpr> {
    Ok(match j {
        SentenceJson::Atom { pair, sense } => {
            let sense = match sense.as_str() {
                "open" => Sense::Open,
                "closed" => Sense::Closed,
                // |phi/psi| >= n with n >= 2 collapses to open
                other => {
                    if let Ok(n) = other.parse::<u64>() {
                        if n >= 2 {
                            Sense::Open
                        } else {
                            Sense::Closed
                        }
                    } else {
                        return Err(Error::Parse(format!("unknown sense {other:?}")));
                    }
                }
            };
            SentenceExpr::Atom(InvariantCondition {
                pair: pair_from_json(pair, algebra)?,
                sense,
            })
        }
        SentenceJson::And(parts) => SentenceExpr::And(
            parts
                .iter()
                .map(|p| sentence_from_json(p, algebra.clone()))
                .collect::<Result<_>>()?,
        ),
        SentenceJson::Or(parts) => SentenceExpr::Or(
            parts
                .iter()
                .map(|p| sentence_from_json(p, algebra.clone()))
                .collect::<Result<_>>()?,
        ),
        SentenceJson::Not(inner) => {
            SentenceExpr::Not(Box::new(sentence_from_json(inner, algebra)?))
        }
    })
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BreakpointFormsJson {
    pub slope: String,
    pub family: FamilyJson,
    pub u: FormJson,
    pub ws: Vec<FormJson>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FormsFileJson {
    pub at: Vec<BreakpointFormsJson>,
}

pub fn forms_from_json(j: &FormsFileJson) -> Result<Vec<SuppliedForms>> {
    j.at.iter()
        .map(|b| {
            Ok(SuppliedForms {
                slope: parse_rat(&b.slope)?,
                model: family_from_json(&b.family)?,
                u: form_from_json(&b.u)?,
                ws: b.ws.iter().map(form_from_json).collect::<Result<_>>()?,
            })
        })
        .collect()
}

/// Builds a canonical algebra from a spec string like `C(2,2,2,2;2)` or
/// `C(3,3,3)`, or loads an algebra JSON file.
pub fn algebra_from_spec(spec: &str) -> Result<Arc<AlgebraPresentation>> {
    let spec = spec.trim();
    if let Some(body) = spec.strip_prefix("C(").and_then(|s| s.strip_suffix(')')) {
        let (arms_str, lambda_str) = match body.split_once(';') {
            Some((a, l)) => (a, Some(l)),
            None => (body, None),
        };
        let arms: Vec<usize> = arms_str
            .split(',')
            .map(|x| {
                x.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad arm length {x:?}")))
            })
            .collect::<Result<_>>()?;
        let lambdas: Vec<crate::linalg::Rat> = match lambda_str {
            None => Vec::new(),
            Some(l) => l
                .split(',')
                .map(|x| parse_rat(x.trim()))
                .collect::<Result<_>>()?,
        };
        Ok(Arc::new(crate::algebra::build_canonical(&arms, &lambdas)?))
    } else {
        let text = std::fs::read_to_string(spec)?;
        let j: AlgebraJson = serde_json::from_str(&text)?;
        Ok(Arc::new(algebra_from_json(&j)?))
    }
}

/// Loads a module file against an algebra context; accepts either a module
/// JSON or the name of a catalog fixture when the algebra is canonical
/// `C(2,2,2,2;lambda)` with integer lambda.
pub fn module_from_spec(
    spec: &str,
    algebra: &Arc<AlgebraPresentation>,
) -> Result<ModulePresentation> {
    if std::path::Path::new(spec).exists() {
        let text = std::fs::read_to_string(spec)?;
        let j: ModuleJson = serde_json::from_str(&text)?;
        return module_from_json(&j, algebra.clone());
    }
    // fixture catalog lookup for the standard algebras
    if let Some(rest) = algebra.name.strip_prefix("C(2,2,2,2;") {
        if let Some(lam) = rest.strip_suffix(')') {
            if let Ok(lambda) = lam.parse::<i64>() {
                let cat = crate::fixtures::Catalog::standard(lambda)?;
                return Ok(cat.get(spec)?.module.clone());
            }
        }
    }
    Err(Error::MissingFixture(spec.to_string()))
}
