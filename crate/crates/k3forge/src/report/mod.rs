//! Batch runs over every verification family and their JSON / markdown reports.

use std::collections::HashSet;
use std::fmt::Write as _;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::divisor::{
    builtin_graph, chain_type, divisor_table, is_nef_against_listed, ns_check, verify_polarization_decomposition, DivisorRow,
};
use crate::fibration::{even_eight_pencil, frame_instance, rank10_pencil, PencilInstance};
use crate::lattice::{
    discriminant_form, lattice_catalog, parse_lattice, two_elementary_invariants, Lattice, LatticeRow, TwoElementaryInvariants,
};
use crate::poly::MultiPoly;
use crate::random::Sampler;
use crate::singularity::{rdp_rows, rdp_suite, RdpCell};
use crate::surface::{
    branch_singular_locus, build_s_rank9, del_pezzo_model, linear_system, map_catalog, random_points, verify_tangent_conic, Certificate,
};

pub const SCHEMA: &str = "k3forge-report/1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReportError {
    #[error("unknown suite `{0}` (known: {known})", known = suite_ids().join(", "))]
    UnknownSuite(String),
    #[error("configuration value `{0}` must be positive")]
    NonPositive(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Seeded instances per family.
    pub trials: usize,
    /// Bound on numerators and denominators of random coefficients.
    pub height: i64,
    pub retry_cap: u32,
    /// Jet order for singularity germs.
    pub truncation: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            trials: 5,
            height: 20,
            retry_cap: 32,
            truncation: 20,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), ReportError> {
        for (name, ok) in [
            ("seed", true),
            ("trials", self.trials > 0),
            ("height", self.height > 0),
            ("retry_cap", self.retry_cap > 0),
            ("truncation", self.truncation > 0),
        ] {
            if !ok {
                return Err(ReportError::NonPositive(name));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Holds as far as the available data allows, without a full certificate.
    Partial,
    Skipped,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn mark(&self) -> &'static str {
        match self {
            Status::Pass => "✓",
            Status::Fail => "✗",
            Status::Partial => "◐",
            Status::Skipped => "-",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub details: String,
}

fn check(id: String, anchor: &str, status: Status, details: impl Into<String>) -> Check {
    Check {
        id,
        anchor: anchor.to_string(),
        status,
        details: details.into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub config: SuiteConfig,
    pub suites: Vec<String>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    pub fn any_failed(&self) -> bool {
        self.count(Status::Fail) > 0
    }

    pub fn suite(&self, id: &str) -> impl Iterator<Item = &Check> {
        let prefix = format!("{id}/");
        self.checks.iter().filter(move |c| c.id.starts_with(&prefix))
    }
}

type SuiteFn = fn(&SuiteConfig) -> Vec<Check>;

/// `(id, description, runner)` in report order.
pub const SUITES: &[(&str, &str, SuiteFn)] = &[
    ("lattices", "2-elementary invariants of every listed presentation", lattices),
    ("frames", "alternate fibration frames for every framed lattice", frames),
    ("pencils", "pencil fibrations with 7I2+10I1 and 8I2+8I1", pencils),
    ("overlattice", "glue overlattice and the Nikulin lattice", overlattice),
    ("maps", "explicit birational maps and polynomial identities", maps),
    ("rdp", "rational double points of S and K", rdp),
    ("graphs", "divisor identities on the dual graphs", graphs),
    ("del_pezzo", "del Pezzo linear systems and the rank nine sextic", del_pezzo),
    ("witnesses", "tangent conic witnesses", witnesses),
];

pub fn suite_ids() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.0).collect()
}

/// Runs the selected suites (all of them when `selection` is empty). Suites
/// run in parallel; the check order depends only on the configuration.
pub fn run_suite(config: &SuiteConfig, selection: &[String]) -> Result<Report, ReportError> {
    config.validate()?;
    for s in selection {
        if !suite_ids().contains(&s.as_str()) {
            return Err(ReportError::UnknownSuite(s.clone()));
        }
    }
    let chosen: Vec<_> = SUITES
        .iter()
        .filter(|(id, _, _)| selection.is_empty() || selection.iter().any(|s| s == id))
        .collect();
    let results: Vec<Vec<Check>> = std::thread::scope(|sc| {
        let handles: Vec<_> = chosen.iter().map(|(_, _, f)| sc.spawn(move || f(config))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let checks: Vec<Check> = results.into_iter().flatten().collect();
    let mut seen = HashSet::new();
    for c in &checks {
        assert!(seen.insert(&c.id), "duplicate check id {}", c.id);
    }
    Ok(Report {
        schema: SCHEMA,
        config: config.clone(),
        suites: chosen.iter().map(|s| s.0.to_string()).collect(),
        checks,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        Format::Markdown => markdown(report),
    }
}

fn cell_text(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

fn markdown(report: &Report) -> String {
    let mut out = String::from("# k3forge report\n\n");
    let c = &report.config;
    let _ = writeln!(
        out,
        "seed {}, trials {}, height {}, retries {}, truncation {}\n",
        c.seed, c.trials, c.height, c.retry_cap, c.truncation
    );
    let _ = writeln!(
        out,
        "{} pass, {} fail, {} partial, {} skipped\n",
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::Partial),
        report.count(Status::Skipped)
    );
    for id in &report.suites {
        let desc = SUITES.iter().find(|s| s.0 == id).map_or("", |s| s.1);
        let _ = writeln!(out, "## {id}: {desc}\n");
        if id == "rdp" {
            rdp_grid(&mut out, report);
            continue;
        }
        out.push_str("| check | | details |\n|---|---|---|\n");
        for ch in report.suite(id) {
            let _ = writeln!(
                out,
                "| {} | {} | {} |",
                cell_text(&ch.id[id.len() + 1..]),
                ch.status.mark(),
                cell_text(&ch.details)
            );
        }
        out.push('\n');
    }
    out
}

/// One line per family and seed, one column per location.
fn rdp_grid(out: &mut String, report: &Report) {
    out.push_str("| family | seed | S at p | K at p2 | K at p1 |\n|---|---|---|---|---|\n");
    let mut rows: Vec<(String, Vec<&Check>)> = Vec::new();
    for ch in report.suite("rdp") {
        let key = ch.id.rsplit_once('/').map_or(ch.id.as_str(), |(k, _)| k).to_string();
        match rows.last_mut() {
            Some((k, v)) if *k == key => v.push(ch),
            _ => rows.push((key, vec![ch])),
        }
    }
    for (key, cs) in rows {
        let mut parts = key.splitn(3, '/').skip(1);
        let (family, seed) = (parts.next().unwrap_or(""), parts.next().unwrap_or(""));
        let mut cells = vec!["".to_string(); 3];
        for ch in cs {
            let loc = ch.id.rsplit('/').next().unwrap_or("");
            let text = format!("{} {}", ch.details, ch.status.mark());
            match loc {
                "S at p" => cells[0] = text,
                "K at p2" => cells[1] = text,
                "K at p1" => cells[2] = text,
                _ => cells = vec![text; 3],
            }
        }
        let _ = writeln!(
            out,
            "| {family} | {} | {} | {} | {} |",
            seed.trim_start_matches("seed "),
            cells[0],
            cells[1],
            cells[2]
        );
    }
    out.push('\n');
}

// ------------------------------------------------------------------ suites

fn triple(r: &LatticeRow) -> TwoElementaryInvariants {
    TwoElementaryInvariants {
        rho: r.rho,
        ell: r.ell,
        delta: r.delta,
    }
}

fn lattices(_: &SuiteConfig) -> Vec<Check> {
    const ANCHOR: &str = "2-elementary Picard lattices with automorphism group (Z/2)^2";
    let mut out = Vec::new();
    for row in lattice_catalog() {
        for form in row.forms {
            let got = parse_lattice(form)
                .map_err(|e| e.to_string())
                .and_then(|l| two_elementary_invariants(&l).map_err(|e| e.to_string()));
            let (status, details) = match got {
                Ok(t) => (Status::of(t == triple(row)), format!("({}, {}, {})", t.rho, t.ell, t.delta)),
                Err(e) => (Status::Fail, e),
            };
            out.push(check(format!("lattices/{}/{form}", row.label), ANCHOR, status, details));
        }
    }
    out
}

fn frames(cfg: &SuiteConfig) -> Vec<Check> {
    const ANCHOR: &str = "frames of the alternate fibration";
    let mut out = Vec::new();
    for row in LatticeRow::framed() {
        for t in 0..cfg.trials as u64 {
            let seed = cfg.seed.wrapping_add(t);
            let mut s = Sampler::derived(seed, cfg.height, row.label);
            let id = format!("frames/{}/seed {seed}", row.label);
            out.push(match frame_instance(row, &mut s, cfg.retry_cap) {
                Ok(inst) => check(
                    id,
                    ANCHOR,
                    Status::of(inst.matches()),
                    format!("{} ({})", inst.root_config, inst.configuration),
                ),
                Err(e) => check(id, ANCHOR, Status::Fail, e.to_string()),
            });
        }
    }
    out
}

fn pencils(cfg: &SuiteConfig) -> Vec<Check> {
    type PencilFn = fn(u64, u32) -> Result<PencilInstance, crate::fibration::FibrationError>;
    let families: [(&str, &str, &str, PencilFn); 2] = [
        (
            "even_eight",
            "pencil of lines through a node of the rank nine branch",
            "7I2+10I1",
            even_eight_pencil,
        ),
        (
            "rank10",
            "pencil of lines through a conic point of the rank ten quartic",
            "8I2+8I1",
            rank10_pencil,
        ),
    ];
    let mut out = Vec::new();
    for (name, anchor, want, f) in families {
        for t in 0..cfg.trials as u64 {
            let seed = cfg.seed.wrapping_add(t);
            let id = format!("pencils/{name}/seed {seed}");
            out.push(match f(seed, cfg.retry_cap) {
                Ok(p) => {
                    let ok = p.summary == want && p.mw_rank == 0 && p.configuration.euler_sum() == 24;
                    check(id, anchor, Status::of(ok), format!("{}, MW rank {}", p.summary, p.mw_rank))
                }
                Err(e) => check(id, anchor, Status::Fail, e.to_string()),
            });
        }
    }
    out
}

fn overlattice(_: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    let glue = parse_lattice("<2>+<-2>+A1^8").map_err(|e| e.to_string()).and_then(|l| {
        let half = num_rational::BigRational::new(1.into(), 2.into());
        let mut w = vec![num_rational::BigRational::zero(); 10];
        w[2..].fill(half);
        let o = l.overlattice_from_glue(&w).map_err(|e| e.to_string())?;
        let t = two_elementary_invariants(&o).map_err(|e| e.to_string())?;
        Ok((o.det(), t))
    });
    let anchor = "overlattice of <2>+<-2>+A1^8 glued by the half-sum of the eight nodes";
    out.push(match glue {
        Ok((det, t)) => {
            let ok = det.magnitude() == &num_bigint::BigUint::from(256u32) && (t.rho, t.ell, t.delta) == (10, 8, 1);
            check(
                "overlattice/glue".into(),
                anchor,
                Status::of(ok),
                format!("det {det}, ({}, {}, {})", t.rho, t.ell, t.delta),
            )
        }
        Err(e) => check("overlattice/glue".into(), anchor, Status::Fail, e),
    });
    let n = Lattice::nikulin();
    let anchor = "Nikulin lattice from eight nodes and their half-sum";
    out.push(match discriminant_form(&n) {
        Ok(d) => {
            let ok = d.cyclic_orders.len() == 6 && d.cyclic_orders.iter().all(|o| *o == num_bigint::BigInt::from(2));
            let orders: Vec<String> = d.cyclic_orders.iter().map(|o| o.to_string()).collect();
            check(
                "overlattice/nikulin".into(),
                anchor,
                Status::of(ok),
                format!("rank {}, group orders [{}]", n.rank(), orders.join(", ")),
            )
        }
        Err(e) => check("overlattice/nikulin".into(), anchor, Status::Fail, e.to_string()),
    });
    out
}

/// Instances per catalogued map, independent of `trials`.
const MAP_INSTANCES: usize = 3;

fn maps(cfg: &SuiteConfig) -> Vec<Check> {
    map_catalog(cfg.seed, MAP_INSTANCES)
        .into_iter()
        .map(|m| check(format!("maps/{}/{}", m.id, m.instance), m.anchor, Status::of(m.holds), m.detail))
        .collect()
}

fn rdp(cfg: &SuiteConfig) -> Vec<Check> {
    const ANCHOR: &str = "rational double points of S and K";
    rdp_suite(cfg.seed, cfg.trials)
        .into_iter()
        .map(|c| {
            let details = if c.pass {
                c.observed
            } else {
                format!("{} (expected {})", c.observed, c.expected)
            };
            check(
                format!("rdp/{}/seed {}/{}", c.label, c.seed, c.location),
                ANCHOR,
                Status::of(c.pass),
                details,
            )
        })
        .collect()
}

fn rdp_cell(graph: &str, rho: usize) -> Option<(RdpCell, RdpCell)> {
    let label = BUILTIN_LABELS.iter().find(|(g, _)| *g == graph)?.1;
    rdp_rows()
        .iter()
        .find(|r| r.label == label && r.rho == rho)
        .map(|r| (r.k_at_p2, r.k_at_p1))
}

/// Shipped graph name and the family label it belongs to.
const BUILTIN_LABELS: &[(&str, &str)] = &[
    ("rho11", "11 (7,1)"),
    ("rho12", "12 (6,1)"),
    ("rho13", "13 (5,1)"),
    ("rho14_40", "14 (4,0)"),
    ("rho14_41", "14 (4,1)"),
    ("rho15", "15 (3,1)"),
    ("rho16", "16 (2,1)"),
    ("rho17", "17 (1,1)"),
    ("rho18", "18 (0,0)"),
];

fn graphs(_: &SuiteConfig) -> Vec<Check> {
    const ANCHOR: &str = "dual graphs of rational curves and the divisors D2, H";
    let mut out = Vec::new();
    let table = divisor_table();
    for (name, t, _) in crate::divisor::BUILTIN_GRAPHS {
        let id = |what: &str| format!("graphs/{name}/{what}");
        let g = match builtin_graph(name) {
            Ok(g) => g,
            Err(e) => {
                out.push(check(id("load"), ANCHOR, Status::Fail, e.to_string()));
                continue;
            }
        };
        let expected = TwoElementaryInvariants {
            rho: t.0,
            ell: t.1,
            delta: t.2,
        };
        let ns = ns_check(&g, expected);
        let got = ns.computed.map_or_else(
            || ns.error.clone().unwrap_or_default(),
            |c| format!("({}, {}, {})", c.rho, c.ell, c.delta),
        );
        out.push(check(id("lattice"), ANCHOR, Status::of(ns.pass), got));

        let Some(row) = table.iter().find(|r| r.graph == *name) else {
            out.push(check(id("divisors"), ANCHOR, Status::Skipped, "no divisor data"));
            continue;
        };
        out.extend(divisor_checks(&g, row, t.0, &id));
    }
    out
}

fn divisor_checks(g: &crate::divisor::DualGraph, row: &DivisorRow, rho: usize, id: &dyn Fn(&str) -> String) -> Vec<Check> {
    const ANCHOR: &str = "dual graphs of rational curves and the divisors D2, H";
    let mut out = Vec::new();
    let d2 = match g.parse_divisor(&row.d2) {
        Ok(d) => d,
        Err(e) => return vec![check(id("D2"), ANCHOR, Status::Fail, e.to_string())],
    };
    let sq = g.square(&d2).unwrap_or(i64::MIN);
    out.push(check(id("D2^2"), ANCHOR, Status::of(sq == 2), format!("{sq}")));
    out.push(match is_nef_against_listed(g, &d2) {
        Ok(n) if !n.nef => check(id("D2 nef"), ANCHOR, Status::Fail, format!("{:?}", n.witness)),
        Ok(n) if n.certificate => check(id("D2 nef"), ANCHOR, Status::Pass, "nef, curve list complete"),
        Ok(_) => check(id("D2 nef"), ANCHOR, Status::Partial, "nonnegative on the listed curves only"),
        Err(e) => check(id("D2 nef"), ANCHOR, Status::Fail, e.to_string()),
    });
    if row.b_set.is_empty() {
        return out;
    }
    let sets = DivisorRow::classes(g, &row.a_set).and_then(|a| Ok((a, DivisorRow::classes(g, &row.b_set)?)));
    let (a, b) = match sets {
        Ok(x) => x,
        Err(e) => {
            out.push(check(id("H"), ANCHOR, Status::Fail, e.to_string()));
            return out;
        }
    };
    let h = row.polarization(g);
    out.push(
        match h
            .as_ref()
            .map_err(|e| e.to_string())
            .and_then(|h| verify_polarization_decomposition(g, h, &d2, &a, &b, row.b_weights.as_deref()).map_err(|e| e.to_string()))
        {
            Ok(list) => check(id("H"), ANCHOR, Status::of(list.ok()), list.to_string()),
            Err(e) => check(id("H"), ANCHOR, Status::Fail, e),
        },
    );
    if let Some((p2, p1)) = rdp_cell(&row.graph, rho) {
        for (what, set, cell) in [("b chain", &b, p2), ("a chain", &a, p1)] {
            let RdpCell::Ade(t) = cell else { continue };
            let (status, details) = match chain_type(g, set) {
                Ok(c) => (
                    Status::of(c.single() == Some(t) && set.len() as u32 == t.rank()),
                    format!("{c}, {} curves", set.len()),
                ),
                Err(e) => (Status::Fail, e.to_string()),
            };
            out.push(check(id(what), ANCHOR, status, details));
        }
    }
    out
}

/// Point configurations tried by the del Pezzo suite, independent of `trials`.
const DEL_PEZZO_CONFIGURATIONS: u64 = 3;
const POINT_HEIGHT: i64 = 4;

fn del_pezzo(cfg: &SuiteConfig) -> Vec<Check> {
    const ANCHOR: &str = "del Pezzo surface of degree one through eight points";
    let mut out = Vec::new();
    for t in 0..DEL_PEZZO_CONFIGURATIONS {
        let seed = cfg.seed.wrapping_add(t);
        let id = |what: &str| format!("del_pezzo/seed {seed}/{what}");
        let mut s = Sampler::derived(seed, POINT_HEIGHT, "del pezzo points");
        let pts = match random_points(&mut s, cfg.retry_cap as usize) {
            Ok(p) => p,
            Err(e) => {
                out.push(check(id("points"), ANCHOR, Status::Fail, e.to_string()));
                continue;
            }
        };
        let dims: Vec<usize> = [(3, 1), (6, 2), (9, 3)]
            .iter()
            .map(|&(d, m)| linear_system(d, &pts, &[m; 8]).map_or(usize::MAX, |b| b.len()))
            .collect();
        out.push(check(id("dimensions"), ANCHOR, Status::of(dims == [2, 4, 7]), format!("{dims:?}")));
        let model = match del_pezzo_model(&pts) {
            Ok(m) => m,
            Err(e) => {
                out.push(check(id("relation"), ANCHOR, Status::Fail, e.to_string()));
                continue;
            }
        };
        let res = model.identity_residual();
        out.push(check(id("relation"), ANCHOR, Status::of(res.is_zero()), format!("residual {res}")));
        out.push(match model.sextic_model().and_then(|m| branch_singular_locus(&m, &[])) {
            Ok(rep) => {
                let status = match (rep.is_exact(), rep.certificate) {
                    (true, Certificate::Complete) => Status::Pass,
                    (true, Certificate::Partial) => Status::Partial,
                    (false, _) => Status::Fail,
                };
                check(
                    id("smooth branch"),
                    ANCHOR,
                    status,
                    format!("{} singular points", rep.unexpected_count()),
                )
            }
            Err(e) => check(id("smooth branch"), ANCHOR, Status::Fail, e.to_string()),
        });
    }
    out
}

/// Non-witnesses tested against each constructed sextic.
const NON_WITNESSES: usize = 10;

fn witnesses(cfg: &SuiteConfig) -> Vec<Check> {
    const ANCHOR: &str = "conics tangent to the rank nine branch sextic";
    let mut out = Vec::new();
    for t in 0..cfg.trials as u64 {
        let seed = cfg.seed.wrapping_add(t);
        let id = |what: &str| format!("witnesses/seed {seed}/{what}");
        let mut s = Sampler::derived(seed, cfg.height, "tangent conic");
        let (p2, q3) = (nonzero_form(&mut s, 2), nonzero_form(&mut s, 3));
        let (c0, c2, c4) = (s.nonzero_small(), s.form("u", "v", 2), s.form("u", "v", 4));
        let p22 = &p2 * &p2;
        let c6 = &q3 * &q3 - &(&(&(&p22 * &p2).scale(&c0) + &(&c2 * &p22)) + &(&c4 * &p2));
        let sx = match build_s_rank9(&c0, &c2, &c4, &c6) {
            Ok(x) => x,
            Err(e) => {
                out.push(check(id("witness"), ANCHOR, Status::Fail, e.to_string()));
                continue;
            }
        };
        out.push(check(
            id("witness"),
            ANCHOR,
            Status::of(verify_tangent_conic(&p2, &q3, &sx)),
            format!("p2 = {p2}"),
        ));
        let rejected = (0..NON_WITNESSES)
            .filter(|_| {
                let (a, b) = (nonzero_form(&mut s, 2), nonzero_form(&mut s, 3));
                !verify_tangent_conic(&a, &b, &sx)
            })
            .count();
        out.push(check(
            id("non-witnesses"),
            ANCHOR,
            Status::of(rejected == NON_WITNESSES),
            format!("{rejected}/{NON_WITNESSES} rejected"),
        ));
    }
    out
}

fn nonzero_form(s: &mut Sampler, d: u32) -> MultiPoly {
    loop {
        let f = s.form("u", "v", d);
        if !f.is_zero() && f.total_degree() == Some(d) {
            return f;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn only(ids: &[&str]) -> Vec<String> {
        ids.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn unknown_suite_rejected() {
        let e = run_suite(&SuiteConfig::default(), &only(&["nope"])).unwrap_err();
        assert_eq!(e, ReportError::UnknownSuite("nope".into()));
    }

    #[test]
    fn zero_trials_rejected() {
        let cfg = SuiteConfig {
            trials: 0,
            ..Default::default()
        };
        assert_eq!(run_suite(&cfg, &[]), Err(ReportError::NonPositive("trials")));
    }

    #[test]
    fn lattice_suite() {
        let r = run_suite(&SuiteConfig::default(), &only(&["lattices"])).unwrap();
        assert_eq!(r.checks.len(), 23);
        assert_eq!(r.count(Status::Pass), 23);
        assert!(r.checks.iter().all(|c| !c.anchor.is_empty()));
    }

    #[test]
    fn empty_report_documents() {
        let r = Report {
            schema: SCHEMA,
            config: SuiteConfig::default(),
            suites: vec![],
            checks: vec![],
        };
        let v: serde_json::Value = serde_json::from_str(&emit(&r, Format::Json)).unwrap();
        assert_eq!(v["checks"].as_array().unwrap().len(), 0);
        assert!(emit(&r, Format::Markdown).starts_with("# k3forge report"));
    }

    #[test]
    fn json_is_reproducible() {
        let cfg = SuiteConfig {
            trials: 1,
            ..Default::default()
        };
        let sel = only(&["overlattice", "witnesses", "pencils"]);
        let a = emit(&run_suite(&cfg, &sel).unwrap(), Format::Json);
        let b = emit(&run_suite(&cfg, &sel).unwrap(), Format::Json);
        assert_eq!(a, b);
        assert!(!a.contains("\"fail\""), "{a}");
    }

    #[test]
    fn markdown_lattice_table() {
        let r = run_suite(&SuiteConfig::default(), &only(&["lattices"])).unwrap();
        let md = emit(&r, Format::Markdown);
        assert_eq!(md.lines().filter(|l| l.starts_with("| ") && l.contains('✓')).count(), 23);
    }

    #[test]
    fn status_serializes_lowercase() {
        assert_eq!(serde_json::to_string(&Status::Partial).unwrap(), "\"partial\"");
    }
}
