//! JSON schemas for group, cocycle and category inputs, with resolvers
//! into validated in-memory objects.
//!
//! Phases serialize as reduced fraction strings `"num/den"`. Table-backed
//! cocycles list only their non-neutral values; fusion data files list
//! only non-trivial F-entries (unlisted admissible entries default to 1)
//! and are accepted only when the pentagon, grading and rigidity checkers
//! pass.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cohomology::{
    cyclic_generator, product_generator, pullback, GroupCochain, ProductGenerator,
};
use crate::fusion::SkeletalCategory;
use crate::groups::{FiniteGroup, GroupHom};
use crate::phase::Phase;
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("group: {0}")]
    Group(#[from] crate::groups::GroupError),
    #[error("cohomology: {0}")]
    Cohomology(#[from] crate::cohomology::CohomologyError),
    #[error("category: {0}")]
    Category(#[from] crate::fusion::CategoryError),
    #[error("cocycle spec needs a --group context")]
    MissingGroup,
    #[error("provided group does not match the cocycle spec")]
    GroupMismatch,
    #[error("bad table key {0:?}: expected comma-separated element indices")]
    BadTableKey(String),
    #[error("table values have inconsistent tuple lengths")]
    InconsistentDegree,
    #[error("field {field} has wrong length: expected {expected}, got {got}")]
    BadLength {
        field: &'static str,
        expected: usize,
        got: usize,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic { n: usize },
    Product { factors: Vec<u32> },
    Table {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
        table: Vec<Vec<usize>>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomSpec {
    pub source: GroupSpec,
    pub target: GroupSpec,
    pub map: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CocycleSpec {
    /// The degree-3 generator `ω^k` on `Z/n`.
    Cyclic { n: usize, k: usize },
    /// Per-factor cyclic generator on a product group (0-based factor).
    ProductI { i: usize, k: usize },
    ProductIj { i: usize, j: usize },
    ProductIjk { i: usize, j: usize, k: usize },
    Pullback {
        hom: HomSpec,
        inner: Box<CocycleSpec>,
    },
    PointwiseProduct { factors: Vec<CocycleSpec> },
    /// Explicit values keyed `"a,b,c"`; unlisted tuples are neutral.
    Table {
        #[serde(default = "default_degree")]
        degree: usize,
        values: BTreeMap<String, Phase>,
    },
}

fn default_degree() -> usize {
    3
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FEntry {
    pub labels: [usize; 6],
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CategorySpec {
    Pointed {
        group: GroupSpec,
        cocycle: CocycleSpec,
    },
    Skeletal {
        simples: Vec<String>,
        dual: Vec<usize>,
        fusion: Vec<[usize; 3]>,
        grading_group: GroupSpec,
        grading: Vec<usize>,
        #[serde(rename = "F", default)]
        f: Vec<FEntry>,
        qdim: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        duality_coeff: Option<Vec<FEntry2>>,
    },
}

/// A complex scalar in data files.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FEntry2 {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

pub fn resolve_group(spec: &GroupSpec) -> Result<Arc<FiniteGroup>, SpecError> {
    let g = match spec {
        GroupSpec::Cyclic { n } => FiniteGroup::cyclic(*n)?,
        GroupSpec::Product { factors } => FiniteGroup::product(factors)?,
        GroupSpec::Table { labels, table } => {
            FiniteGroup::from_table(table.clone(), labels.clone())?
        }
    };
    Ok(Arc::new(g))
}

fn same_structure(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    a.order() == b.order()
        && a.elements()
            .all(|x| a.elements().all(|y| a.mul(x, y) == b.mul(x, y)))
}

/// Resolves a cocycle spec, optionally against a provided group. Specs that
/// do not carry their own group (`product_*`, `table`) require one.
pub fn resolve_cocycle(
    spec: &CocycleSpec,
    group: Option<&Arc<FiniteGroup>>,
) -> Result<GroupCochain, SpecError> {
    match spec {
        CocycleSpec::Cyclic { n, k } => {
            let c = cyclic_generator(*n, *k)?;
            match group {
                None => Ok(c),
                Some(g) => {
                    if !same_structure(g, &c.group) {
                        return Err(SpecError::GroupMismatch);
                    }
                    Ok(GroupCochain::from_fn(g.clone(), 3, |t| c.value(t).clone()))
                }
            }
        }
        CocycleSpec::ProductI { i, k } => {
            let g = group.ok_or(SpecError::MissingGroup)?;
            Ok(product_generator(g, ProductGenerator::Factor {
                i: *i,
                level: *k,
            })?)
        }
        CocycleSpec::ProductIj { i, j } => {
            let g = group.ok_or(SpecError::MissingGroup)?;
            Ok(product_generator(g, ProductGenerator::Pair { i: *i, j: *j })?)
        }
        CocycleSpec::ProductIjk { i, j, k } => {
            let g = group.ok_or(SpecError::MissingGroup)?;
            Ok(product_generator(g, ProductGenerator::Triple {
                i: *i,
                j: *j,
                k: *k,
            })?)
        }
        CocycleSpec::Pullback { hom, inner } => {
            let source = resolve_group(&hom.source)?;
            let target = resolve_group(&hom.target)?;
            if let Some(g) = group {
                if !same_structure(g, &source) {
                    return Err(SpecError::GroupMismatch);
                }
            }
            let h = GroupHom::new(source, target.clone(), hom.map.clone())?;
            let c = resolve_cocycle(inner, Some(&target))?;
            Ok(pullback(&h, &c)?)
        }
        CocycleSpec::PointwiseProduct { factors } => {
            let mut acc: Option<GroupCochain> = None;
            for f in factors {
                let c = resolve_cocycle(f, group)?;
                acc = Some(match acc {
                    None => c,
                    Some(prev) => prev.pointwise_mul(&c)?,
                });
            }
            acc.ok_or(SpecError::MissingGroup)
        }
        CocycleSpec::Table { degree, values } => {
            let g = group.ok_or(SpecError::MissingGroup)?;
            let mut parsed: HashMap<Vec<usize>, Phase> = HashMap::new();
            for (key, phase) in values {
                let tuple: Result<Vec<usize>, _> =
                    key.split(',').map(|p| p.trim().parse::<usize>()).collect();
                let tuple = tuple.map_err(|_| SpecError::BadTableKey(key.clone()))?;
                if tuple.len() != *degree {
                    return Err(SpecError::InconsistentDegree);
                }
                if tuple.iter().any(|&x| x >= g.order()) {
                    return Err(SpecError::BadTableKey(key.clone()));
                }
                parsed.insert(tuple, phase.clone());
            }
            Ok(GroupCochain::from_fn(g.clone(), *degree, |t| {
                parsed.get(t).cloned().unwrap_or_else(Phase::one)
            }))
        }
    }
}

/// Serializes a cochain as a table spec (only non-neutral values listed).
pub fn cochain_to_table_spec(c: &GroupCochain) -> CocycleSpec {
    let order = c.group.order();
    let degree = c.degree();
    let mut values = BTreeMap::new();
    for (idx, v) in c.values().iter().enumerate() {
        if v.is_one() {
            continue;
        }
        let tuple = crate::cohomology::index_tuple(order, degree, idx);
        let key = tuple
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",");
        values.insert(key, v.clone());
    }
    CocycleSpec::Table { degree, values }
}

/// Resolves and fully validates a category spec. Skeletal data is accepted
/// only when all checkers pass.
pub fn resolve_category(spec: &CategorySpec) -> Result<Arc<SkeletalCategory>, SpecError> {
    match spec {
        CategorySpec::Pointed { group, cocycle } => {
            let g = resolve_group(group)?;
            let omega = resolve_cocycle(cocycle, Some(&g))?;
            Ok(Arc::new(SkeletalCategory::pointed(g, &omega)?))
        }
        CategorySpec::Skeletal {
            simples,
            dual,
            fusion,
            grading_group,
            grading,
            f,
            qdim,
            duality_coeff,
        } => {
            let n = simples.len();
            let expect = |field: &'static str, got: usize| {
                if got == n {
                    Ok(())
                } else {
                    Err(SpecError::BadLength {
                        field,
                        expected: n,
                        got,
                    })
                }
            };
            expect("dual", dual.len())?;
            expect("grading", grading.len())?;
            expect("qdim", qdim.len())?;
            if let Some(d) = duality_coeff {
                expect("duality_coeff", d.len())?;
            }
            let g = resolve_group(grading_group)?;
            let mut entries = HashMap::new();
            for e in f {
                entries.insert(e.labels, Scalar::complex(e.re, e.im));
            }
            let cat = SkeletalCategory::from_parts(
                simples.clone(),
                dual.clone(),
                fusion,
                g,
                grading.clone(),
                entries,
                qdim.iter().map(|&d| Scalar::real(d)).collect(),
                duality_coeff
                    .as_ref()
                    .map(|d| d.iter().map(|c| Scalar::complex(c.re, c.im)).collect()),
            )?;
            cat.validate()?;
            Ok(Arc::new(cat))
        }
    }
}
