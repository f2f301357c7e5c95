//! Batch front end: resolves JSON specs, runs the requested computation
//! and emits a deterministic JSON report plus a one-line summary.
//!
//! Exit codes: 0 on success/pass, 1 when a verification fails (the report
//! carries the witness), 2 on input or schema errors.

use std::path::PathBuf;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::cohomology::{solve_coboundary, GroupoidCochain};
use crate::groupoid::{centralizer_cocycle, induce_big_psi, induce_psi, normalize_psi};
use crate::groups::FiniteGroup;
use crate::specs::{
    cochain_to_table_spec, resolve_category, resolve_cocycle, resolve_group, CategorySpec,
    CocycleSpec, GroupSpec,
};
use crate::spectrum::{self, wedderburn};
use crate::tube::{verify_twist_theorem, TubeAlgebra};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Clone, Debug)]
pub enum Command {
    Group {
        spec: PathBuf,
    },
    CocycleCheck {
        spec: PathBuf,
        group: Option<PathBuf>,
    },
    CocycleSolve {
        spec: PathBuf,
        group: Option<PathBuf>,
    },
    Induce {
        group: PathBuf,
        cocycle: PathBuf,
    },
    TubeBuild {
        category: PathBuf,
    },
    TubeTwist {
        category: PathBuf,
        cocycle: PathBuf,
    },
    Verify {
        category: Option<PathBuf>,
        group: Option<PathBuf>,
        cocycle: PathBuf,
        /// Optional ψ table (as emitted by `induce`) replacing the induced
        /// cocycle on the bundle route; a corrupted table is the negative
        /// control.
        psi: Option<PathBuf>,
    },
    Spectrum {
        category: PathBuf,
    },
    Compare {
        category: PathBuf,
        other: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Summary,
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub command: Command,
    pub output: Option<PathBuf>,
    pub seed: u64,
    pub tolerance: Option<f64>,
    pub format: OutputFormat,
}

pub struct RunOutcome {
    pub exit_code: i32,
    pub report: Value,
    pub summary: String,
}

fn fail(exit_code: i32, message: String) -> RunOutcome {
    RunOutcome {
        exit_code,
        report: json!({ "error": message }),
        summary: format!("error: {message}"),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_group(path: &PathBuf) -> Result<Arc<FiniteGroup>, String> {
    let spec: GroupSpec = read_json(path)?;
    resolve_group(&spec).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_cocycle(
    path: &PathBuf,
    group: Option<&Arc<FiniteGroup>>,
) -> Result<crate::cohomology::GroupCochain, String> {
    let spec: CocycleSpec = read_json(path)?;
    resolve_cocycle(&spec, group).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_category(path: &PathBuf) -> Result<Arc<crate::fusion::SkeletalCategory>, String> {
    let spec: CategorySpec = read_json(path)?;
    resolve_category(&spec).map_err(|e| format!("{}: {e}", path.display()))
}

fn arrow_key(g: &crate::groupoid::Arrow) -> String {
    format!("{},{}", g.s, g.dom)
}

/// Parses a ψ table keyed `"s1,d1|s2,d2"` with `"num/den"` phase values;
/// unlisted composable pairs are neutral.
fn load_psi_table(
    path: &PathBuf,
    group: &Arc<FiniteGroup>,
) -> Result<GroupoidCochain, String> {
    use crate::groupoid::{ActionGroupoid, Arrow};
    let raw: std::collections::BTreeMap<String, String> = read_json(path)?;
    let mut parsed = std::collections::HashMap::new();
    for (key, value) in raw {
        let parts: Vec<&str> = key.split('|').collect();
        if parts.len() != 2 {
            return Err(format!("bad ψ key {key:?}"));
        }
        let arrow = |s: &str| -> Result<Arrow, String> {
            let nums: Vec<usize> = s
                .split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            if nums.len() != 2 || nums[0] >= group.order() || nums[1] >= group.order() {
                return Err(format!("bad arrow {s:?}"));
            }
            Ok(Arrow {
                s: nums[0],
                dom: nums[1],
            })
        };
        let g1 = arrow(parts[0])?;
        let g2 = arrow(parts[1])?;
        if g1.dom != g2.codom(group) {
            return Err(format!("ψ key {key:?} is not a composable pair"));
        }
        let phase: crate::phase::Phase = value.parse()?;
        parsed.insert((g1, g2), phase);
    }
    let gd = Arc::new(ActionGroupoid::new(group.clone()));
    Ok(GroupoidCochain::from_fn(gd, 2, |pair| {
        parsed
            .get(&(pair[0], pair[1]))
            .cloned()
            .unwrap_or_else(crate::phase::Phase::one)
    }))
}

/// The theorem check against an explicitly supplied ψ table.
fn verify_twist_theorem_with_psi(
    cat: &Arc<crate::fusion::SkeletalCategory>,
    omega: &crate::cohomology::GroupCochain,
    psi: &GroupoidCochain,
) -> Result<crate::tube::TwistReport, crate::tube::TubeError> {
    let twisted_cat = Arc::new(
        cat.twist(omega)
            .map_err(|_| crate::tube::TubeError::BadTwistCocycle)?,
    );
    let direct = TubeAlgebra::build(twisted_cat)?;
    let base = TubeAlgebra::build(cat.clone())?;
    let bundled = base.twist_fell_bundle(psi)?;
    crate::tube::compare_tables(&direct, &bundled)
}

fn groupoid_table(c: &GroupoidCochain) -> Value {
    let gd = &c.groupoid;
    let mut map = serde_json::Map::new();
    match c.degree() {
        1 => {
            for g in gd.arrows() {
                map.insert(arrow_key(&g), Value::String(c.value(&[g]).to_string()));
            }
        }
        2 => {
            for pair in gd.composable_tuples(2) {
                let key = format!("{}|{}", arrow_key(&pair[0]), arrow_key(&pair[1]));
                map.insert(key, Value::String(c.value(&pair).to_string()));
            }
        }
        _ => {}
    }
    Value::Object(map)
}

fn algebra_report(t: &TubeAlgebra) -> Value {
    let basis: Vec<Value> = t
        .basis
        .iter()
        .map(|b| json!([b.s, b.j, b.k, b.u]))
        .collect();
    let degree: Vec<Value> = (0..t.dim())
        .map(|i| {
            let d = t.degree(i);
            json!([d.s, d.dom])
        })
        .collect();
    let mut pairs: Vec<(usize, usize)> = t.product_pairs().map(|(&k, _)| k).collect();
    pairs.sort_unstable();
    let product: Vec<Value> = pairs
        .iter()
        .map(|&(i, j)| {
            let terms: Vec<Value> = t
                .product_entry(i, j)
                .iter()
                .map(|(target, c)| json!({"target": target, "value": c}))
                .collect();
            json!({"left": i, "right": j, "terms": terms})
        })
        .collect();
    let involution = if t.has_involution() {
        let table: Vec<Value> = (0..t.dim())
            .map(|i| {
                let terms: Vec<Value> = t
                    .involution_entry(i)
                    .unwrap()
                    .iter()
                    .map(|(target, c)| json!({"target": target, "value": c}))
                    .collect();
                Value::Array(terms)
            })
            .collect();
        Value::Array(table)
    } else {
        Value::Null
    };
    let trace: Vec<Value> = (0..t.dim())
        .map(|i| serde_json::to_value(t.trace_coeff(i)).unwrap())
        .collect();
    json!({
        "dim": t.dim(),
        "exact": t.is_exact(),
        "basis": basis,
        "degree": degree,
        "product": product,
        "involution": involution,
        "trace": trace,
    })
}

pub fn run(job: &JobSpec) -> RunOutcome {
    match &job.command {
        Command::Group { spec } => {
            let g = match load_group(spec) {
                Ok(g) => g,
                Err(e) => return fail(EXIT_INPUT_ERROR, e),
            };
            let sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.len()).collect();
            RunOutcome {
                exit_code: EXIT_OK,
                report: json!({
                    "order": g.order(),
                    "abelian": g.is_abelian(),
                    "exponent": g.exponent(),
                    "conjugacy_class_sizes": sizes,
                }),
                summary: format!("group of order {} validated", g.order()),
            }
        }
        Command::CocycleCheck { spec, group } => {
            let g = match group.as_ref().map(load_group).transpose() {
                Ok(g) => g,
                Err(e) => return fail(EXIT_INPUT_ERROR, e),
            };
            let c = match load_cocycle(spec, g.as_ref()) {
                Ok(c) => c,
                Err(e) => return fail(EXIT_INPUT_ERROR, e),
            };
            let witness = c.cocycle_witness();
            let ok = witness.is_none();
            RunOutcome {
                exit_code: if ok { EXIT_OK } else { EXIT_VERIFICATION_FAILED },
                report: json!({
                    "degree": c.degree(),
                    "is_cocycle": ok,
                    "normalized": c.is_normalized(),
                    "witness": witness,
                }),
                summary: if ok {
                    format!("cocycle of degree {} on a group of order {}", c.degree(), c.group.order())
                } else {
                    "not a cocycle; see witness".into()
                },
            }
        }
        Command::CocycleSolve { spec, group } => {
            let g = match group.as_ref().map(load_group).transpose() {
                Ok(g) => g,
                Err(e) => return fail(EXIT_INPUT_ERROR, e),
            };
            let target = match load_cocycle(spec, g.as_ref()) {
                Ok(c) => c,
                Err(e) => return fail(EXIT_INPUT_ERROR, e),
            };
            match solve_coboundary(&target) {
                Ok(eta) => RunOutcome {
                    exit_code: EXIT_OK,
                    report: json!({
                        "solved": true,
                        "eta": serde_json::to_value(cochain_to_table_spec(&eta)).unwrap(),
                    }),
                    summary: "coboundary solution found".into(),
                },
                Err(crate::cohomology::CohomologyError::NoSolution(tried)) => RunOutcome {
                    exit_code: EXIT_VERIFICATION_FAILED,
                    report: json!({
                        "solved": false,
                        "tried_denominators": tried.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                    }),
                    summary: "no coboundary solution at the searched denominators".into(),
                },
                Err(e) => fail(EXIT_INPUT_ERROR, e.to_string()),
            }
        }
        Command::Induce { group, cocycle } => {
            let g = match load_group(group) {
                Ok(g) => g,
                Err(e) => return fail(EXIT_INPUT_ERROR, e),
            };
            let omega = match load_cocycle(cocycle, Some(&g)) {
                Ok(c) => c,
                Err(e) => return fail(EXIT_INPUT_ERROR, e),
            };
            let psi = match induce_psi(&omega) {
                Ok(p) => p,
                Err(e) => return fail(EXIT_INPUT_ERROR, e.to_string()),
            };
            let big = induce_big_psi(&omega).expect("checked above");
            let np = match normalize_psi(&psi) {
                Ok(np) => np,
                Err(e) => return fail(EXIT_INPUT_ERROR, e.to_string()),
            };
            let mut big_map = serde_json::Map::new();
            for s in g.elements() {
                for t in g.elements() {
                    for x in g.elements() {
                        big_map.insert(
                            format!("{s},{t}|{x}"),
                            Value::String(big.value(&[s, t], x).to_string()),
                        );
                    }
                }
            }
            let mut phi = Vec::new();
            for class in g.conjugacy_classes() {
                let a = class[0];
                let cc = centralizer_cocycle(&omega, a).expect("validated cocycle");
                let mut values = serde_json::Map::new();
                for s in 0..cc.subgroup.order() {
                    for t in 0..cc.subgroup.order() {
                        values.insert(
                            format!("{},{}", cc.embed[s], cc.embed[t]),
                            Value::String(cc.cochain.value(&[s, t]).to_string()),
                        );
                    }
                }
                phi.push(json!({
                    "a": a,
                    "centralizer": cc.embed,
                    "values": Value::Object(values),
                }));
            }
            RunOutcome {
                exit_code: EXIT_OK,
                report: json!({
                    "group_order": g.order(),
                    "psi": groupoid_table(&psi),
                    "Psi": Value::Object(big_map),
                    "phi": phi,
                    "xi": groupoid_table(&np.xi),
                    "psi_prime": groupoid_table(&np.psi_prime),
                }),
                summary: format!(
                    "induced 2-cocycle tables over {} arrows",
                    g.order() * g.order()
                ),
            }
        }
        Command::TubeBuild { category } => {
            let cat = match load_category(category) {
                Ok(c) => c,
                Err(e) => return fail(EXIT_INPUT_ERROR, e),
            };
            match TubeAlgebra::build(cat) {
                Ok(t) => RunOutcome {
                    exit_code: EXIT_OK,
                    summary: format!("tube algebra of dimension {}", t.dim()),
                    report: algebra_report(&t),
                },
                Err(e) => fail(EXIT_INPUT_ERROR, e.to_string()),
            }
        }
        Command::TubeTwist { category, cocycle } => {
            let cat = match load_category(category) {
                Ok(c) => c,
                Err(e) => return fail(EXIT_INPUT_ERROR, e),
            };
            let omega = match load_cocycle(cocycle, Some(&cat.grading_group)) {
                Ok(c) => c,
                Err(e) => return fail(EXIT_INPUT_ERROR, e),
            };
            let result = TubeAlgebra::build(cat)
                .and_then(|t| Ok(t.twist_fell_bundle(&induce_psi(&omega)?)?));
            match result {
                Ok(t) => RunOutcome {
                    exit_code: EXIT_OK,
                    summary: format!("twisted tube algebra of dimension {}", t.dim()),
                    report: algebra_report(&t),
                },
                Err(e) => fail(EXIT_INPUT_ERROR, e.to_string()),
            }
        }
        Command::Verify {
            category,
            group,
            cocycle,
            psi,
        } => {
            let cat = match (category, group) {
                (Some(c), _) => match load_category(c) {
                    Ok(c) => c,
                    Err(e) => return fail(EXIT_INPUT_ERROR, e),
                },
                (None, Some(gpath)) => {
                    let g = match load_group(gpath) {
                        Ok(g) => g,
                        Err(e) => return fail(EXIT_INPUT_ERROR, e),
                    };
                    let trivial = crate::fusion::neutral_cocycle(&g);
                    match crate::fusion::SkeletalCategory::pointed(g, &trivial) {
                        Ok(c) => Arc::new(c),
                        Err(e) => return fail(EXIT_INPUT_ERROR, e.to_string()),
                    }
                }
                (None, None) => {
                    return fail(
                        EXIT_INPUT_ERROR,
                        "verify needs --category or --group".into(),
                    )
                }
            };
            let omega = match load_cocycle(cocycle, Some(&cat.grading_group)) {
                Ok(c) => c,
                Err(e) => return fail(EXIT_INPUT_ERROR, e),
            };
            let verification = match psi {
                None => verify_twist_theorem(&cat, &omega),
                Some(path) => {
                    let table = match load_psi_table(path, &cat.grading_group) {
                        Ok(t) => t,
                        Err(e) => return fail(EXIT_INPUT_ERROR, e),
                    };
                    verify_twist_theorem_with_psi(&cat, &omega, &table)
                }
            };
            match verification {
                Ok(mut rep) => {
                    if let Some(tol) = job.tolerance {
                        if !rep.exact {
                            rep.pass = rep.max_discrepancy < tol;
                        }
                    }
                    RunOutcome {
                        exit_code: if rep.pass { EXIT_OK } else { EXIT_VERIFICATION_FAILED },
                        report: json!({
                            "pass": rep.pass,
                            "exact": rep.exact,
                            "max_discrepancy": rep.max_discrepancy,
                            "witness": rep.witness,
                        }),
                        summary: if rep.pass {
                            format!(
                                "twist theorem verified, discrepancy {:.3e}{}",
                                rep.max_discrepancy,
                                if rep.exact { " (exact)" } else { "" },
                            )
                        } else {
                            "twist theorem check FAILED".into()
                        },
                    }
                }
                Err(e) => fail(EXIT_INPUT_ERROR, e.to_string()),
            }
        }
        Command::Spectrum { category } => {
            let cat = match load_category(category) {
                Ok(c) => c,
                Err(e) => return fail(EXIT_INPUT_ERROR, e),
            };
            let t = match TubeAlgebra::build(cat) {
                Ok(t) => t,
                Err(e) => return fail(EXIT_INPUT_ERROR, e.to_string()),
            };
            match wedderburn(&t, job.seed) {
                Ok(rep) => RunOutcome {
                    exit_code: EXIT_OK,
                    summary: format!(
                        "dim {}, center {}, blocks {:?}",
                        rep.algebra_dim, rep.center_dim, rep.block_dims
                    ),
                    report: serde_json::to_value(&rep).unwrap(),
                },
                Err(e) => fail(EXIT_INPUT_ERROR, e.to_string()),
            }
        }
        Command::Compare { category, other } => {
            let ta = match load_category(category).and_then(|c| {
                TubeAlgebra::build(c).map_err(|e| e.to_string())
            }) {
                Ok(t) => t,
                Err(e) => return fail(EXIT_INPUT_ERROR, e),
            };
            let tb = match load_category(other).and_then(|c| {
                TubeAlgebra::build(c).map_err(|e| e.to_string())
            }) {
                Ok(t) => t,
                Err(e) => return fail(EXIT_INPUT_ERROR, e),
            };
            let ra = match wedderburn(&ta, job.seed) {
                Ok(r) => r,
                Err(e) => return fail(EXIT_INPUT_ERROR, e.to_string()),
            };
            let rb = match wedderburn(&tb, job.seed) {
                Ok(r) => r,
                Err(e) => return fail(EXIT_INPUT_ERROR, e.to_string()),
            };
            let cmp = spectrum::compare_spectra(&ra, &rb);
            RunOutcome {
                exit_code: EXIT_OK,
                summary: format!(
                    "centers {} vs {}; blocks {}",
                    cmp.center_left,
                    cmp.center_right,
                    if cmp.equal_blocks { "equal" } else { "differ" }
                ),
                report: json!({
                    "left": serde_json::to_value(&ra).unwrap(),
                    "right": serde_json::to_value(&rb).unwrap(),
                    "comparison": serde_json::to_value(&cmp).unwrap(),
                }),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(name: &str) -> PathBuf {
        PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("../../data")
            .join(name)
    }

    fn job(command: Command) -> JobSpec {
        JobSpec {
            command,
            output: None,
            seed: spectrum::DEFAULT_SEED,
            tolerance: None,
            format: OutputFormat::Json,
        }
    }

    #[test]
    fn cocycle_check_examples() {
        let out = run(&job(Command::CocycleCheck {
            spec: data("cyclic_n4_k1.json"),
            group: None,
        }));
        assert_eq!(out.exit_code, EXIT_OK);
        assert_eq!(out.report["is_cocycle"], Value::Bool(true));

        let out = run(&job(Command::CocycleCheck {
            spec: data("does_not_exist.json"),
            group: None,
        }));
        assert_eq!(out.exit_code, EXIT_INPUT_ERROR);
    }

    #[test]
    fn verify_pointed_shortcut() {
        let out = run(&job(Command::Verify {
            category: None,
            group: Some(data("z2cubed.json")),
            cocycle: data("phi123.json"),
            psi: None,
        }));
        assert_eq!(out.exit_code, EXIT_OK);
        assert_eq!(out.report["pass"], Value::Bool(true));
        assert_eq!(out.report["exact"], Value::Bool(true));
        assert_eq!(out.report["max_discrepancy"], json!(0.0));
    }

    #[test]
    fn determinism_of_spectrum_reports() {
        let j = job(Command::Spectrum {
            category: data("pointed_z2cubed_phi123.json"),
        });
        let a = serde_json::to_string(&run(&j).report).unwrap();
        let b = serde_json::to_string(&run(&j).report).unwrap();
        assert_eq!(a, b);
    }
}
