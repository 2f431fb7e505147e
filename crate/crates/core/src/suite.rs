//! Catalog-driven check runner.
//!
//! A catalog is a TOML file of `[[check]]` tables:
//!
//! ```toml
//! [[check]]
//! kind = "gacc1"
//! group = "builtin: dihedral(4)"
//! n = 2
//! criterion = 2
//! ```
//!
//! Each check yields a JSON report and a status. Checks whose preconditions
//! fail are skipped with a reason rather than failed.

use std::collections::BTreeSet;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::abelian::{class_count, AbelianInvariants};
use crate::arith;
use crate::error::{Error, Result};
use crate::graph::{
    abelianization_coessential, components, diameter_inequality_report, gacc1_check,
    labels_match_partition, move_equivalence_check, nielsen_labels, recalcitrance_group, Distance,
    MoveGraph, MoveSet,
};
use crate::group::{is_soluble, quotient, rank, w_subgroup, weight, GroupTable};
use crate::limits::Limits;
use crate::poly::phi_at_1;
use crate::builtin::{builtin_group, Builtin};
use crate::spec::parse_group_spec;
use crate::units::{bs_coessential, bs_scan, xi_unit_check, Verdict};
use crate::wreath::{wreath_weight_one_verify, WreathSpec};

pub const DEFAULT_CATALOG: &str = include_str!("../catalog/default.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    /// Nielsen components of abelian groups against the class count and labels.
    AbelianClassification,
    Gacc1,
    Recalcitrance,
    BsCoessential,
    BsRange,
    Wreath,
    WStructure,
    MoveEquivalence,
    DiameterInequality,
    Cyclotomic,
    /// `d_2(Z/p)` over a list of primes, reported as data.
    CyclicDiameters,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSpec {
    pub kind: Option<CheckKind>,
    pub name: Option<String>,
    pub criterion: Option<u32>,
    pub group: Option<String>,
    pub n: Option<usize>,
    /// Cyclic orders for `abelian-classification`.
    pub cyclic_max: Option<u64>,
    /// Further invariant factor lists for `abelian-classification`.
    pub factors: Option<Vec<Vec<u64>>>,
    pub max_states: Option<u64>,
    pub expect: Option<String>,
    pub image: Option<Vec<u64>>,
    pub witness_in: Option<Vec<u64>>,
    pub expect_zero: Option<bool>,
    pub range: Option<[u64; 2]>,
    pub orders: Option<Vec<u64>>,
    pub max: Option<u64>,
    pub phi_max: Option<u64>,
    pub values: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Catalog {
    #[serde(default)]
    pub check: Vec<CheckSpec>,
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Catalog> {
        let catalog: Catalog = toml::from_str(text).map_err(|e| {
            let (line, column) = e
                .span()
                .map(|s| line_column(text, s.start))
                .unwrap_or((1, 1));
            Error::Parse { line, column, message: e.message().to_string() }
        })?;
        for (i, c) in catalog.check.iter().enumerate() {
            if c.kind.is_none() {
                return Err(Error::Parse { line: 1, column: 1, message: format!("check {i} has no kind") });
            }
        }
        Ok(catalog)
    }

    pub fn default_catalog() -> Catalog {
        Catalog::parse(DEFAULT_CATALOG).expect("embedded catalog parses")
    }
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub index: usize,
    pub name: String,
    pub kind: CheckKind,
    pub criterion: Option<u32>,
    pub status: Status,
    pub reason: Option<String>,
    pub report: Value,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SummaryEntry {
    pub index: usize,
    pub name: String,
    pub criterion: Option<u32>,
    pub status: Status,
    pub reason: Option<String>,
    pub file: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub pass: bool,
    pub checks: Vec<SummaryEntry>,
}

impl CheckOutcome {
    pub fn file_name(&self) -> String {
        let slug: String = self
            .name
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c.to_ascii_lowercase() } else { '-' })
            .collect();
        let mut slug = slug.split('-').filter(|s| !s.is_empty()).collect::<Vec<_>>().join("-");
        slug.truncate(60);
        format!("{:03}-{slug}.json", self.index)
    }
}

fn default_name(spec: &CheckSpec) -> String {
    let kind = serde_json::to_value(spec.kind.unwrap()).unwrap();
    let mut name = kind.as_str().unwrap().to_string();
    if let Some(g) = &spec.group {
        name.push(' ');
        name.push_str(g);
    }
    if let Some(o) = &spec.orders {
        name.push_str(&format!(" {o:?}"));
    }
    match spec.values.as_deref() {
        Some([v]) => name.push_str(&format!(" {v}")),
        Some(v) if !v.is_empty() => name.push_str(&format!(" {v:?}")),
        _ => {}
    }
    if let Some([a, b]) = spec.range {
        name.push_str(&format!(" {a}..{b}"));
    }
    if let Some(m) = spec.max {
        name.push_str(&format!(" max={m}"));
    }
    if let Some(n) = spec.n {
        name.push_str(&format!(" n={n}"));
    }
    name
}

pub fn run_suite(catalog: &Catalog, limits: &Limits) -> (Vec<CheckOutcome>, SuiteSummary) {
    let outcomes: Vec<CheckOutcome> = catalog
        .check
        .par_iter()
        .enumerate()
        .map(|(index, spec)| run_check(index, spec, limits))
        .collect();
    let summary = summarize(&outcomes);
    (outcomes, summary)
}

pub fn summarize(outcomes: &[CheckOutcome]) -> SuiteSummary {
    let count = |s: Status| outcomes.iter().filter(|o| o.status == s).count();
    let failed = count(Status::Fail) + count(Status::Error);
    SuiteSummary {
        total: outcomes.len(),
        passed: count(Status::Pass),
        failed,
        skipped: count(Status::Skipped),
        pass: failed == 0,
        checks: outcomes
            .iter()
            .map(|o| SummaryEntry {
                index: o.index,
                name: o.name.clone(),
                criterion: o.criterion,
                status: o.status,
                reason: o.reason.clone(),
                file: o.file_name(),
            })
            .collect(),
    }
}

/// Writes one JSON file per check and `summary.json`.
pub fn write_reports(dir: &Path, outcomes: &[CheckOutcome], summary: &SuiteSummary) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    for o in outcomes {
        let text = serde_json::to_string_pretty(&serde_json::to_value(o).unwrap()).unwrap();
        std::fs::write(dir.join(o.file_name()), text + "\n").map_err(io)?;
    }
    let text = serde_json::to_string_pretty(&serde_json::to_value(summary).unwrap()).unwrap();
    std::fs::write(dir.join("summary.json"), text + "\n").map_err(io)?;
    Ok(())
}

type CheckResult = Result<(Status, Option<String>, Value)>;

pub fn run_check(index: usize, spec: &CheckSpec, limits: &Limits) -> CheckOutcome {
    let start = Instant::now();
    let kind = spec.kind.expect("catalog checks have a kind");
    let result = dispatch(kind, spec, limits);
    let (status, reason, report) = match result {
        Ok(r) => r,
        Err(e) => (Status::Error, Some(e.to_string()), Value::Null),
    };
    CheckOutcome {
        index,
        name: spec.name.clone().unwrap_or_else(|| default_name(spec)),
        kind,
        criterion: spec.criterion,
        status,
        reason,
        report,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

fn verdict(pass: bool) -> Status {
    if pass {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn missing(field: &str) -> Error {
    Error::RangeError(format!("check needs `{field}`"))
}

fn group_of(spec: &CheckSpec, limits: &Limits) -> Result<GroupTable> {
    parse_group_spec(spec.group.as_deref().ok_or_else(|| missing("group"))?, limits)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn dispatch(kind: CheckKind, spec: &CheckSpec, limits: &Limits) -> CheckResult {
    match kind {
        CheckKind::AbelianClassification => abelian_classification(spec, limits),
        CheckKind::Gacc1 => {
            let g = group_of(spec, limits)?;
            if !is_soluble(&g) {
                return Ok((Status::Skipped, Some("group is not soluble".into()), Value::Null));
            }
            let r = gacc1_check(&g, spec.n.ok_or_else(|| missing("n"))?, limits)?;
            Ok((verdict(r.pass), None, to_value(&r)))
        }
        CheckKind::Recalcitrance => recalcitrance_check(spec, limits),
        CheckKind::BsCoessential => bs_check(spec),
        CheckKind::BsRange => {
            let [a, b] = spec.range.ok_or_else(|| missing("range"))?;
            let start = Instant::now();
            let table = bs_scan(a..=b);
            let scan_ms = start.elapsed().as_millis() as u64;
            let bad: Vec<u64> = table
                .iter()
                .filter(|c| c.trivial_target && c.verdict != Verdict::Surjective)
                .map(|c| c.n)
                .collect();
            let rows: Vec<Value> = table
                .iter()
                .map(|c| json!({"n": c.n, "verdict": c.verdict, "witness": c.witness}))
                .collect();
            let report = json!({"range": [a, b], "rows": rows, "trivial_target_failures": bad, "elapsed_ms": scan_ms});
            Ok((verdict(bad.is_empty() && scan_ms < 1000), None, report))
        }
        CheckKind::Wreath => {
            let w = WreathSpec::new(spec.orders.clone().ok_or_else(|| missing("orders"))?)?;
            let r = wreath_weight_one_verify(&w, limits)?;
            Ok((verdict(r.pass), None, to_value(&r)))
        }
        CheckKind::WStructure => w_structure(spec, limits),
        CheckKind::MoveEquivalence => {
            let g = group_of(spec, limits)?;
            let n = spec.n.ok_or_else(|| missing("n"))?;
            let equal = move_equivalence_check(&g, n, limits)?;
            Ok((verdict(equal), None, json!({"n": n, "partitions_equal": equal})))
        }
        CheckKind::DiameterInequality => {
            let g = group_of(spec, limits)?;
            let n = spec.n.ok_or_else(|| missing("n"))?;
            let w = weight(&g, limits)?;
            if n <= w {
                return Ok((Status::Skipped, Some(format!("n = {n} is not above w(G) = {w}")), Value::Null));
            }
            let r = diameter_inequality_report(&g, n, limits)?;
            Ok((verdict(r.pass), None, to_value(&r)))
        }
        CheckKind::Cyclotomic => cyclotomic_check(spec),
        CheckKind::CyclicDiameters => {
            let primes = spec.values.clone().ok_or_else(|| missing("values"))?;
            let mut rows = Vec::new();
            for p in primes {
                let g = builtin_group(&Builtin::Cyclic(p), limits)?;
                let r = components(&g, 2, MoveSet::MPlusInversion, limits)?;
                rows.push(json!({"p": p, "d_2": r.d_n, "approximate": r.d_n_approximate, "components": r.components.len()}));
            }
            let finite = rows.iter().all(|r| r["components"] == json!(1));
            let d: Vec<u64> = rows.iter().map(|r| r["d_2"].as_u64().unwrap()).collect();
            let non_decreasing = d.windows(2).all(|w| w[0] <= w[1]);
            let report = json!({"rows": rows, "connected": finite, "non_decreasing": non_decreasing});
            Ok((verdict(finite), None, report))
        }
    }
}

fn abelian_classification(spec: &CheckSpec, limits: &Limits) -> CheckResult {
    let mut groups: Vec<Vec<u64>> = (2..=spec.cyclic_max.unwrap_or(30)).map(|d| vec![d]).collect();
    groups.extend(spec.factors.clone().unwrap_or_default());
    let max_states = spec.max_states.unwrap_or(1_000_000);
    let max_n = spec.n.unwrap_or(3);
    let mut rows = Vec::new();
    let mut all = true;
    for factors in groups {
        let g = builtin_group(&Builtin::Abelian(factors.clone()), limits)?;
        for n in factors.len()..=max_n {
            if (g.order() as u128).pow(n as u32) > max_states as u128 {
                continue;
            }
            let graph = MoveGraph::build(&g, n, MoveSet::Nielsen, limits)?;
            let partition = graph.components();
            let labels = nielsen_labels(&g, &graph)?;
            let deltas: Vec<_> = labels.iter().map(|c| c.delta).collect();
            let expected = class_count(&AbelianInvariants::from_moduli(&factors), n)?;
            let labels_agree = labels_match_partition(&partition, &deltas);
            let ok = partition.count() as u64 == expected && labels_agree;
            all &= ok;
            rows.push(json!({
                "factors": factors, "n": n, "components": partition.count(),
                "class_count": expected, "labels_agree": labels_agree, "pass": ok,
            }));
        }
    }
    Ok((verdict(all), None, json!({"rows": rows})))
}

fn recalcitrance_check(spec: &CheckSpec, limits: &Limits) -> CheckResult {
    let g = group_of(spec, limits)?;
    if !is_soluble(&g) {
        return Ok((Status::Skipped, Some("group is not soluble".into()), Value::Null));
    }
    let n = match spec.n {
        Some(n) => n,
        None => rank(&g, limits)?,
    };
    let coessential = abelianization_coessential(&g, n, limits)?;
    let expect_zero = spec.expect_zero.unwrap_or(false);
    if !coessential && !expect_zero {
        return Ok((
            Status::Skipped,
            Some(format!("abelianization is not coessential at n = {n}")),
            json!({"n": n, "coessential": false}),
        ));
    }
    let r = recalcitrance_group(&g, n, limits)?;
    let bound = Distance::Finite(2 * n as u64 - 1);
    let within = r.recalcitrance <= bound;
    let zero = r.recalcitrance == Distance::Finite(0);
    let pass = (!coessential || within) && (!expect_zero || zero);
    let mut report = to_value(&r);
    report["coessential"] = json!(coessential);
    report["bound"] = json!(2 * n - 1);
    report["expect_zero"] = json!(expect_zero);
    Ok((verdict(pass), None, report))
}

/// `{+-p^k mod m}`, the image of `<-1, p>` listed directly.
fn signed_powers(p: u64, m: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut x = 1 % m;
    for _ in 0..=m {
        out.insert(x);
        out.insert((m - x) % m);
        x = x * p % m;
    }
    out
}

fn bs_check(spec: &CheckSpec) -> CheckResult {
    let values = spec.values.clone().ok_or_else(|| missing("values"))?;
    let mut rows = Vec::new();
    let mut all = true;
    for n in values {
        let c = bs_coessential(n);
        let mut ok = true;
        if let Some(expect) = &spec.expect {
            ok &= match expect.as_str() {
                "surjective" => c.surjective,
                "not-surjective" => c.verdict == Verdict::NotSurjective,
                other => return Err(Error::RangeError(format!("unknown expectation `{other}`"))),
            };
        }
        if let Some(image) = &spec.image {
            ok &= &c.image.members == image;
        }
        if let Some(allowed) = &spec.witness_in {
            ok &= c.witness.is_some_and(|w| allowed.contains(&w));
        }
        // prime powers: the image is {+-p^k}, enumerated without the closure
        let independent = c.prime_power.map(|(p, _)| {
            let direct: Vec<u64> = signed_powers(p, c.modulus).into_iter().collect();
            direct == c.image.members
        });
        ok &= independent.unwrap_or(true);
        all &= ok;
        let mut row = to_value(&c);
        row["independent_image_agrees"] = json!(independent);
        row["pass"] = json!(ok);
        rows.push(row);
    }
    Ok((verdict(all), None, json!({"rows": rows})))
}

fn w_structure(spec: &CheckSpec, limits: &Limits) -> CheckResult {
    let g = group_of(spec, limits)?;
    if !is_soluble(&g) {
        return Ok((Status::Skipped, Some("group is not soluble".into()), Value::Null));
    }
    let w = w_subgroup(&g)?;
    let q = quotient(&g, &w)?;
    let abelian = q.table.is_abelian();
    let wg = weight(&g, limits)?;
    let wq = weight(&q.table, limits)?;
    let weights_agree = w.is_whole() || wg == wq;
    let report = json!({
        "w_size": w.size(), "quotient_order": q.table.order(), "quotient_abelian": abelian,
        "weight": wg, "quotient_weight": wq, "weights_agree": weights_agree,
    });
    Ok((verdict(abelian && weights_agree), None, report))
}

fn cyclotomic_check(spec: &CheckSpec) -> CheckResult {
    let max = spec.max.unwrap_or(64);
    let phi_max = spec.phi_max.unwrap_or(200);
    let cases: Vec<(u64, u64)> = (2..=max)
        .filter(|&n| arith::prime_power(n).is_some())
        .flat_map(|n| (1..n).filter(move |&a| arith::gcd(a, n) == 1).map(move |a| (n, a)))
        .collect();
    let failures: Vec<Value> = cases
        .par_iter()
        .filter_map(|&(n, a)| match xi_unit_check(n, a as i64) {
            Ok(r) if r.is_unit && r.residue_matches => None,
            Ok(r) => Some(json!({"n": n, "a": a, "is_unit": r.is_unit, "residue": r.residue})),
            Err(e) => Some(json!({"n": n, "a": a, "error": e.to_string()})),
        })
        .collect();
    let phi: Vec<Value> = (2..=phi_max)
        .map(|n| json!({"n": n, "phi_at_1": phi_at_1(n)}))
        .collect();
    let report = json!({"xi_cases": cases.len(), "xi_failures": failures, "phi_at_1": phi});
    Ok((verdict(failures.is_empty()), None, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_catalog_is_a_vacuous_pass() {
        let (outcomes, summary) = run_suite(&Catalog::parse("").unwrap(), &Limits::default());
        assert!(outcomes.is_empty());
        assert!(summary.pass);
        assert_eq!(summary.total, 0);
    }

    #[test]
    fn insoluble_groups_are_skipped_under_gacc1() {
        let c = Catalog::parse("[[check]]\nkind = \"gacc1\"\ngroup = \"builtin: symmetric(5)\"\nn = 2\n").unwrap();
        let (outcomes, summary) = run_suite(&c, &Limits::default());
        assert_eq!(outcomes[0].status, Status::Skipped);
        assert_eq!(outcomes[0].reason.as_deref(), Some("group is not soluble"));
        assert!(summary.pass);
        assert_eq!(summary.skipped, 1);
    }

    #[test]
    fn catalog_errors_have_positions() {
        match Catalog::parse("[[check]]\nkind = \"gacc1\"\nbogus = 1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(Catalog::parse("[[check]]\nkind = \"nope\"\n").is_err());
    }

    #[test]
    fn default_catalog_parses() {
        let c = Catalog::default_catalog();
        assert!(c.check.len() > 20);
        for k in &c.check {
            assert!(k.criterion.is_some());
        }
    }

    #[test]
    fn failing_checks_fail_the_summary() {
        let c = Catalog::parse("[[check]]\nkind = \"bs-coessential\"\nvalues = [11]\nexpect = \"surjective\"\n").unwrap();
        let (_, summary) = run_suite(&c, &Limits::default());
        assert!(!summary.pass);
        assert_eq!(summary.failed, 1);
    }

    #[test]
    fn signed_power_listing() {
        assert_eq!(signed_powers(11, 10), BTreeSet::from([1, 9]));
        assert_eq!(signed_powers(2, 15).len(), 8);
    }
}
