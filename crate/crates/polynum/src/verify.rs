//! Verification suites behind the CLI: named batteries of exact
//! cross-checks at desk scale. A check fails by assertion or by returned
//! error; budget exhaustion aborts the whole run instead, so a tight
//! budget is distinguishable from a mathematical disagreement.

use std::panic::{catch_unwind, AssertUnwindSafe};

use serde_json::{json, Value};

use crate::budget::Budget;
use crate::decompose::{
    convert_to_t1, decompose_t1_shelling, decompose_t1_solve, decompose_t2, decompose_t2_solve,
    decompose_t31, decompose_t31_solve, decompose_t32, decompose_t4, DecompositionForm,
};
use crate::expr::PolytopeExpr;
use crate::identities::{
    ballot_path_coeffs, eulerian_row, lattice_path_coeffs, macmahon_box, multinomial,
    narayana, plane_partition_oracle, stirling_descent_check, worpitzky_check,
    young_poly_coeffs, young_tableaux_count,
};
use crate::lattice::Polytope;
use crate::moebius::moebius_check;
use crate::numbers::{geometric_sets, vertex_description_sets, NumberContext};
use crate::triangulate::{build_triangulation, GenericFunctional, PointedTriangulation};
use crate::{Error, Result};

/// Knobs for a suite run.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Largest dimension the standard families reach.
    pub max_d: u32,
    /// Largest n for sequence agreements.
    pub max_n: u32,
    /// Restrict polytope-driven suites to this expression.
    pub expr: Option<PolytopeExpr>,
    pub budget: Budget,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig {
            max_d: 4,
            max_n: 6,
            expr: None,
            budget: Budget::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "passed": self.passed(),
            "failed": self.failed(),
            "checks": self
                .checks
                .iter()
                .map(|c| json!({ "name": c.name, "pass": c.pass, "detail": c.detail }))
                .collect::<Vec<_>>(),
        })
    }
}

/// One named check: the closure passes by returning a detail line.
struct Check<'a> {
    name: String,
    run: Box<dyn FnOnce() -> Result<String> + 'a>,
}

impl<'a> Check<'a> {
    fn new(name: impl Into<String>, run: impl FnOnce() -> Result<String> + 'a) -> Check<'a> {
        Check {
            name: name.into(),
            run: Box::new(run),
        }
    }
}

fn panic_text(payload: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "panic".to_string()
    }
}

fn execute(suite: &str, checks: Vec<Check>) -> Result<SuiteReport> {
    let mut outcomes = Vec::with_capacity(checks.len());
    for check in checks {
        let name = check.name;
        let run = check.run;
        let outcome = match catch_unwind(AssertUnwindSafe(run)) {
            Ok(Ok(detail)) => CheckOutcome {
                name,
                pass: true,
                detail,
            },
            Ok(Err(Error::Budget(msg))) => return Err(Error::Budget(msg)),
            Ok(Err(e)) => CheckOutcome {
                name,
                pass: false,
                detail: e.to_string(),
            },
            Err(payload) => CheckOutcome {
                name,
                pass: false,
                detail: panic_text(payload),
            },
        };
        outcomes.push(outcome);
    }
    outcomes.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(SuiteReport {
        suite: suite.to_string(),
        checks: outcomes,
    })
}

/// The small polytope zoo driving the polytope-based suites.
fn standard_exprs(cfg: &SuiteConfig) -> Vec<PolytopeExpr> {
    if let Some(e) = &cfg.expr {
        return vec![e.clone()];
    }
    let mut out: Vec<PolytopeExpr> = Vec::new();
    let d_cap = cfg.max_d.clamp(1, 4);
    for d in 1..=d_cap {
        out.push(PolytopeExpr::Simplex(d));
        out.push(PolytopeExpr::Cross(d));
        out.push(PolytopeExpr::Cube(d));
    }
    for k in 1..=3 {
        out.push(PolytopeExpr::Hypersimplex(4, k));
    }
    if cfg.max_d >= 4 {
        out.push(PolytopeExpr::Hypersimplex(5, 2));
    }
    out.push(PolytopeExpr::Pyr(Box::new(PolytopeExpr::Cube(2))));
    out.push(PolytopeExpr::Bipyr(Box::new(PolytopeExpr::Simplex(2))));
    out.push(PolytopeExpr::Prod(vec![
        PolytopeExpr::Simplex(1),
        PolytopeExpr::Simplex(2),
    ]));
    out.push(PolytopeExpr::Prod(vec![
        PolytopeExpr::Cube(2),
        PolytopeExpr::Simplex(1),
    ]));
    out
}

fn built(expr: &PolytopeExpr) -> Result<(Polytope, PointedTriangulation)> {
    let p = expr.build()?;
    let f = GenericFunctional::index(p.ambient_dim);
    let t = build_triangulation(&p, &f)?;
    Ok((p, t))
}

/// Three-way agreement of the recurrence, the simplex grids, and the
/// chain sums, for totals and interiors.
fn counts_checks<'a>(cfg: &'a SuiteConfig) -> Vec<Check<'a>> {
    standard_exprs(cfg)
        .into_iter()
        .map(|expr| {
            let name = format!("counts/{expr}");
            Check::new(name, move || {
                let (p, t) = built(&expr)?;
                let mut ctx = NumberContext::with_apexes(&p, t.apexes.clone());
                for n in 0..=cfg.max_n {
                    let total = ctx.number(n);
                    let inner = ctx.interior(n);
                    let (geo_all, geo_in) = geometric_sets(&p, &t, n, &cfg.budget)?;
                    let (ver_all, ver_in) =
                        vertex_description_sets(&p, ctx.apexes(), n, &cfg.budget)?;
                    let ok = total == geo_all.len() as i128
                        && total == ver_all.len() as i128
                        && inner == geo_in.len() as i128
                        && inner == ver_in.len() as i128;
                    if !ok {
                        return Err(Error::Inconsistent(format!(
                            "{expr} at n = {n}: recurrence {total}/{inner}, \
                             grids {}/{}, chains {}/{}",
                            geo_all.len(),
                            geo_in.len(),
                            ver_all.len(),
                            ver_in.len()
                        )));
                    }
                }
                Ok(format!(
                    "three descriptions and interiors agree for n <= {}",
                    cfg.max_n
                ))
            })
        })
        .collect()
}

fn assert_form_matches(
    ctx: &mut NumberContext,
    form: &DecompositionForm,
    what: &str,
) -> Result<()> {
    let top = ctx.polytope().top_id();
    let hi = 2 * ctx.polytope().dim.max(0) as u32 + 2;
    for n in 0..=hi {
        let direct = ctx.poly_number(top, n);
        let via = form.eval(n as i128);
        if direct != via {
            return Err(Error::Inconsistent(format!(
                "{what} at n = {n}: form gives {via}, sequence gives {direct}"
            )));
        }
    }
    Ok(())
}

/// The five decomposition shapes, their dual extraction paths, and their
/// reductions to the base form.
fn decomposition_checks<'a>(cfg: &'a SuiteConfig) -> Vec<Check<'a>> {
    let mut checks = Vec::new();
    for expr in standard_exprs(cfg) {
        let name = format!("decompositions/{expr}");
        checks.push(Check::new(name, move || {
            let (p, t) = built(&expr)?;
            let f = GenericFunctional::index(p.ambient_dim);
            let mut ctx = NumberContext::with_apexes(&p, t.apexes.clone());
            if p.dim < 1 {
                return Ok("point has only trivial forms".to_string());
            }

            let t1_counted = decompose_t1_shelling(&p, &t, &f, &cfg.budget)?;
            let t1_solved = decompose_t1_solve(&mut ctx);
            if t1_counted.coeffs != t1_solved.coeffs {
                return Err(Error::Inconsistent(format!(
                    "shelling gives {:?}, solve gives {:?}",
                    t1_counted.coeffs, t1_solved.coeffs
                )));
            }
            if t1_counted.coeffs[0] != 1
                || t1_counted.coeffs.iter().sum::<i128>() != t.simplexes.len() as i128
            {
                return Err(Error::Inconsistent(format!(
                    "base form invariants broken: {:?}",
                    t1_counted.coeffs
                )));
            }
            assert_form_matches(&mut ctx, &t1_counted, "base form")?;

            let t2 = decompose_t2(&p, &t);
            let t2_solved = decompose_t2_solve(&mut ctx);
            if t2.coeffs != t2_solved.coeffs {
                return Err(Error::Inconsistent(format!(
                    "alternating form: count {:?}, solve {:?}",
                    t2.coeffs, t2_solved.coeffs
                )));
            }
            assert_form_matches(&mut ctx, &t2, "alternating form")?;

            let t31 = decompose_t31(&p, &t);
            let t31_solved = decompose_t31_solve(&mut ctx);
            if t31.coeffs != t31_solved.coeffs {
                return Err(Error::Inconsistent(format!(
                    "apex form: count {:?}, solve {:?}",
                    t31.coeffs, t31_solved.coeffs
                )));
            }
            assert_form_matches(&mut ctx, &t31, "apex form")?;

            let t32 = decompose_t32(&p, &t);
            assert_form_matches(&mut ctx, &t32, "grouped form")?;

            let t4 = decompose_t4(&t);
            assert_form_matches(&mut ctx, &t4, "complex form")?;

            for form in [&t2, &t31, &t32, &t4] {
                let reduced = convert_to_t1(form);
                if reduced.coeffs != t1_counted.coeffs {
                    return Err(Error::Inconsistent(format!(
                        "conversion of theorem {} gives {:?}, base form is {:?}",
                        form.theorem, reduced.coeffs, t1_counted.coeffs
                    )));
                }
            }
            Ok("five forms, dual paths, and conversions agree".to_string())
        }));
    }
    checks
}

fn identity_checks<'a>(cfg: &'a SuiteConfig) -> Vec<Check<'a>> {
    let max_d = cfg.max_d.max(4);
    let mut checks: Vec<Check> = Vec::new();

    checks.push(Check::new("identities/worpitzky", move || {
        for d in 1..=max_d.min(6) {
            for n in 0..=20 {
                let c = worpitzky_check(d, n)?;
                if !c.ok() {
                    return Err(Error::Inconsistent(format!(
                        "{}: {} vs {}",
                        c.label, c.lhs, c.rhs
                    )));
                }
            }
        }
        Ok(format!("n^d recovered for d <= {}, n <= 20", max_d.min(6)))
    }));

    checks.push(Check::new("identities/stirling-descent", || {
        for d in 1..=8 {
            for r in 1..=d {
                let c = stirling_descent_check(d, r)?;
                if !c.ok() {
                    return Err(Error::Inconsistent(format!(
                        "{}: {} vs {}",
                        c.label, c.lhs, c.rhs
                    )));
                }
            }
        }
        Ok("surjection counts match descent sums for d <= 8".to_string())
    }));

    checks.push(Check::new("identities/macmahon-box", || {
        for a in 0..=3u32 {
            for b in 0..=3 {
                for c in 0..=6 {
                    let lhs = macmahon_box(a, b, c);
                    let rhs = plane_partition_oracle(a, b, c)?;
                    if lhs != rhs {
                        return Err(Error::Inconsistent(format!(
                            "box {a}x{b}x{c}: product {lhs}, enumeration {rhs}"
                        )));
                    }
                }
            }
        }
        Ok("box product matches enumeration for a,b <= 3, c <= 6".to_string())
    }));

    checks.push(Check::new("identities/lattice-paths", || {
        let lists: [&[u32]; 5] = [&[2, 2], &[3, 2], &[2, 2, 1], &[1, 1, 1, 1], &[3, 3]];
        for list in lists {
            let v = lattice_path_coeffs(list)?;
            if v.total() != multinomial(list) {
                return Err(Error::Inconsistent(format!(
                    "path total for {list:?}: {} vs {}",
                    v.total(),
                    multinomial(list)
                )));
            }
        }
        let ones = vec![1u32; 5];
        if lattice_path_coeffs(&ones)?.counts != eulerian_row(5) {
            return Err(Error::Inconsistent("unit path row is not Eulerian".into()));
        }
        Ok("descent rows match enumeration and totals".to_string())
    }));

    checks.push(Check::new("identities/ballot-paths", || {
        for (d1, d2) in [(3, 3), (4, 2), (4, 4), (5, 3), (5, 5), (6, 6)] {
            ballot_path_coeffs(d1, d2)?;
        }
        for d1 in 1..=6u32 {
            let total: i128 = (1..=d1).map(|k| narayana(d1, k).unwrap()).sum();
            if ballot_path_coeffs(d1, d1)?.total() != total {
                return Err(Error::Inconsistent(format!(
                    "diagonal ballot total at {d1} is not the Narayana sum"
                )));
            }
        }
        Ok("ballot refinements match enumeration and Narayana rows".to_string())
    }));

    checks.push(Check::new("identities/young-tableaux", || {
        for (l, m) in [(2, 2), (2, 3), (3, 2), (3, 3), (2, 5), (3, 4)] {
            let v = young_poly_coeffs(l, m)?;
            if v.total() != young_tableaux_count(l, m) {
                return Err(Error::Inconsistent(format!(
                    "tableau total for {l}x{m}: {} vs {}",
                    v.total(),
                    young_tableaux_count(l, m)
                )));
            }
        }
        Ok("descent totals match the hook length counts".to_string())
    }));

    checks
}

fn moebius_checks<'a>(cfg: &'a SuiteConfig) -> Vec<Check<'a>> {
    let exprs = match &cfg.expr {
        Some(e) => vec![e.clone()],
        None => vec![
            PolytopeExpr::Simplex(3),
            PolytopeExpr::Cube(2),
            PolytopeExpr::Cube(3),
            PolytopeExpr::Cross(3),
        ],
    };
    exprs
        .into_iter()
        .map(|expr| {
            let name = format!("moebius/{expr}");
            Check::new(name, move || {
                let (p, t) = built(&expr)?;
                let report = moebius_check(&p, &t, cfg.max_n.min(8));
                if !report.ok() {
                    let mut all = report.full_complex;
                    all.extend(report.boundary_complex);
                    all.extend(report.telescoping);
                    return Err(Error::Inconsistent(all.join("; ")));
                }
                Ok(format!(
                    "sign pattern and layer sums hold ({} pairs)",
                    report.pairs_checked
                ))
            })
        })
        .collect()
}

fn product_checks<'a>(cfg: &'a SuiteConfig) -> Vec<Check<'a>> {
    let pairs = [
        (PolytopeExpr::Simplex(1), PolytopeExpr::Simplex(1)),
        (PolytopeExpr::Simplex(1), PolytopeExpr::Cube(2)),
        (PolytopeExpr::Simplex(2), PolytopeExpr::Simplex(2)),
        (PolytopeExpr::Simplex(1), PolytopeExpr::Simplex(3)),
        (PolytopeExpr::Simplex(2), PolytopeExpr::Simplex(3)),
        (PolytopeExpr::Cube(2), PolytopeExpr::Cross(2)),
    ];
    pairs
        .into_iter()
        .map(|(a, b)| {
            let name = format!("product/{a}*{b}");
            Check::new(name, move || {
                let (pa, ta) = built(&a)?;
                let (pb, tb) = built(&b)?;
                let prod = PolytopeExpr::Prod(vec![a.clone(), b.clone()]);
                let (pp, tp) = built(&prod)?;
                let mut ca = NumberContext::with_apexes(&pa, ta.apexes.clone());
                let mut cb = NumberContext::with_apexes(&pb, tb.apexes.clone());
                let mut cp = NumberContext::with_apexes(&pp, tp.apexes.clone());
                let hi = cfg.max_n.max(8).min(10);
                for n in 0..=hi {
                    if cp.number(n) != ca.number(n) * cb.number(n) {
                        return Err(Error::Inconsistent(format!(
                            "totals at n = {n}: {} vs {} * {}",
                            cp.number(n),
                            ca.number(n),
                            cb.number(n)
                        )));
                    }
                    if cp.interior(n) != ca.interior(n) * cb.interior(n) {
                        return Err(Error::Inconsistent(format!(
                            "interiors at n = {n}: {} vs {} * {}",
                            cp.interior(n),
                            ca.interior(n),
                            cb.interior(n)
                        )));
                    }
                }
                Ok(format!("factor sequences multiply for n <= {hi}"))
            })
        })
        .collect()
}

/// Runs one named suite, or `all` of them.
pub fn run_suite(suite: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let checks = match suite {
        "counts" => counts_checks(cfg),
        "decompositions" => decomposition_checks(cfg),
        "identities" => identity_checks(cfg),
        "moebius" => moebius_checks(cfg),
        "product" => product_checks(cfg),
        "all" => {
            let mut all = counts_checks(cfg);
            all.extend(decomposition_checks(cfg));
            all.extend(identity_checks(cfg));
            all.extend(moebius_checks(cfg));
            all.extend(product_checks(cfg));
            all
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown suite '{other}'; expected counts, decompositions, \
                 identities, moebius, product, or all"
            )))
        }
    };
    execute(suite, checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            max_d: 3,
            max_n: 5,
            expr: None,
            budget: Budget::default(),
        }
    }

    #[test]
    fn all_suites_pass_at_small_scale() {
        for suite in ["counts", "decompositions", "identities", "moebius", "product"] {
            let report = run_suite(suite, &small()).unwrap();
            assert!(
                report.ok(),
                "{suite}: {:?}",
                report
                    .checks
                    .iter()
                    .filter(|c| !c.pass)
                    .collect::<Vec<_>>()
            );
            assert!(report.failed() == 0 && report.passed() > 0);
        }
    }

    #[test]
    fn unknown_suite_is_a_usage_error() {
        assert!(matches!(
            run_suite("bogus", &small()),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn expr_restricts_the_run() {
        let mut cfg = small();
        cfg.expr = Some("cube:2".parse().unwrap());
        let report = run_suite("decompositions", &cfg).unwrap();
        assert_eq!(report.checks.len(), 1);
        assert!(report.checks[0].name.contains("cube:2"));
        assert!(report.ok());
    }

    #[test]
    fn reports_are_sorted_and_serializable() {
        let report = run_suite("product", &small()).unwrap();
        let names: Vec<&String> = report.checks.iter().map(|c| &c.name).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        let v = report.to_json();
        assert_eq!(v["suite"], "product");
        assert_eq!(v["failed"], 0);
    }

    #[test]
    fn budget_exhaustion_aborts_instead_of_failing() {
        let mut cfg = small();
        cfg.budget = Budget {
            max_points: 3,
            max_shelling_expansions: 3,
        };
        match run_suite("counts", &cfg) {
            Err(Error::Budget(_)) => {}
            other => panic!("expected budget abort, got {other:?}"),
        }
    }
}
