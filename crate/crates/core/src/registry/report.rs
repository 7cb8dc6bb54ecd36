//! Check orchestration and report serialization.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{Map, Value};

use super::cache::{digest, CacheKey, CachedResult, ResultCache};
use super::spec::RepSpec;
use super::table::{entries, lookup, Expected, Provenance, RegistryEntry};
use crate::curvature::{is_skew_berger, nabla_space_with, skew_curvature_space_with, weak_space_with};
use crate::error::{Error, Result};
use crate::lie::{irreducibility_probe, FormKind, LieRep, Probe};
use crate::linalg::{Arithmetic, SolveOptions};
use crate::prolong::{skew_prolongation_with, spencer_h22_from};

pub const STAGES: &[&str] = &["rbar", "nabla", "prolong", "spencer", "weak"];

#[derive(Debug, Clone)]
pub struct CheckOptions {
    pub solve: SolveOptions,
    pub cache_dir: Option<PathBuf>,
    /// Record per-stage timings; off for byte-identical output.
    pub timings: bool,
    /// Fraction of cache hits recomputed and compared.
    pub spot_check_rate: f64,
    pub probe_trials: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            solve: SolveOptions::default(),
            cache_dir: None,
            timings: true,
            spot_check_rate: 0.1,
            probe_trials: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Delta {
    pub field: String,
    pub row: String,
    pub expected: Value,
    pub actual: Value,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckReport {
    pub spec: String,
    #[serde(rename = "dimV")]
    pub dim_v: usize,
    #[serde(rename = "dimG")]
    pub dim_g: usize,
    pub dim_rbar: Option<usize>,
    #[serde(rename = "dimL")]
    pub dim_l: Option<usize>,
    pub is_skew_berger: Option<bool>,
    pub dim_rnabla: Option<usize>,
    pub is_symmetric: Option<bool>,
    pub dim_prolong1: Option<usize>,
    pub dim_prolong2: Option<usize>,
    #[serde(rename = "dimH22")]
    pub dim_h22: Option<usize>,
    pub weak_dim: Option<usize>,
    pub form_kind: Option<FormKind>,
    pub arithmetic: Option<Arithmetic>,
    pub primes: Vec<u64>,
    pub elapsed_ms_by_stage: Option<Map<String, Value>>,
    pub cache_hits: Option<BTreeMap<String, bool>>,
    pub expected_deltas: Vec<Delta>,
    /// Stage and reason when a resource cap or error stopped the run.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aborted: Option<String>,
}

pub const FIELDS: &[&str] = &[
    "spec",
    "dimV",
    "dimG",
    "dimRbar",
    "dimL",
    "isSkewBerger",
    "dimRnabla",
    "isSymmetric",
    "dimProlong1",
    "dimProlong2",
    "dimH22",
    "weakDim",
    "formKind",
    "arithmetic",
    "primes",
    "elapsedMsByStage",
    "cacheHits",
    "expectedDeltas",
];

impl CheckReport {
    fn empty(spec: &RepSpec) -> Self {
        CheckReport {
            spec: spec.to_string(),
            dim_v: spec.dim_v(),
            dim_g: spec.dim_g(),
            dim_rbar: None,
            dim_l: None,
            is_skew_berger: None,
            dim_rnabla: None,
            is_symmetric: None,
            dim_prolong1: None,
            dim_prolong2: None,
            dim_h22: None,
            weak_dim: None,
            form_kind: None,
            arithmetic: None,
            primes: Vec::new(),
            elapsed_ms_by_stage: None,
            cache_hits: None,
            expected_deltas: Vec::new(),
            aborted: None,
        }
    }

    fn fill(&mut self, r: &CachedResult, primes: &[u64]) {
        self.dim_v = r.dim_v;
        self.dim_g = r.dim_g;
        self.dim_rbar = Some(r.dim_rbar);
        self.dim_l = Some(r.dim_l);
        self.is_skew_berger = Some(r.is_skew_berger);
        self.dim_rnabla = Some(r.dim_rnabla);
        self.is_symmetric = Some(r.is_skew_berger && r.dim_rnabla == 0);
        self.dim_prolong1 = Some(r.dim_prolong1);
        self.dim_prolong2 = Some(r.dim_prolong2);
        self.dim_h22 = Some(r.dim_h22);
        self.weak_dim = r.weak_dim;
        self.form_kind = r.form_kind;
        self.arithmetic = Some(r.arithmetic);
        self.primes = if r.arithmetic == Arithmetic::Modular {
            primes.to_vec()
        } else {
            Vec::new()
        };
    }

    /// All expectations met and the run completed.
    pub fn passed(&self) -> bool {
        self.expected_deltas.is_empty() && self.aborted.is_none()
    }
}

struct Timer {
    on: bool,
    map: Map<String, Value>,
}

impl Timer {
    fn run<T>(&mut self, stage: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
        let t = Instant::now();
        let out = f().map_err(|e| match e {
            Error::ResourceLimit { progress, .. } => Error::ResourceLimit {
                stage: stage.to_string(),
                progress,
            },
            e => e,
        });
        if self.on {
            let ms = (t.elapsed().as_secs_f64() * 1e6).round() / 1e3;
            self.map.insert(stage.to_string(), serde_json::json!(ms));
        }
        out
    }
}

/// Runs every stage on a built representation.
fn compute(rep: &LieRep, opts: &CheckOptions, timer: &mut Timer) -> Result<CachedResult> {
    let so = &opts.solve;
    let probe = timer.run("probe", || Ok(irreducibility_probe(rep, opts.probe_trials)))?;
    if let Probe::Reducible(s) = probe {
        log::warn!("{} is reducible: invariant subspace of dimension {}", rep.name(), s.dim());
    }
    let cs = timer.run("rbar", || skew_curvature_space_with(rep, so))?;
    let sb = timer.run("span", || Ok(is_skew_berger(&cs)))?;
    let nabla = timer.run("nabla", || nabla_space_with(&cs, so))?;
    let chain = timer.run("prolong", || skew_prolongation_with(rep, 2, so))?;
    let spencer = timer.run("spencer", || spencer_h22_from(rep, &cs, &chain, so))?;
    if !(spencer.image_in_kernel && spencer.kernel_is_g2) {
        return Err(Error::Construction(format!(
            "{}: Spencer sequence is not exact (image in kernel {}, kernel is g^[2] {})",
            rep.name(),
            spencer.image_in_kernel,
            spencer.kernel_is_g2
        )));
    }
    let weak = match rep.form() {
        Some(_) => Some(timer.run("weak", || weak_space_with(rep, so))?),
        None => None,
    };
    let g2 = chain.g2.as_ref().expect("order 2 requested");
    let mut digests = BTreeMap::new();
    digests.insert("rbar".to_string(), digest(&cs.basis));
    digests.insert("nabla".to_string(), digest(&nabla));
    digests.insert("g1".to_string(), digest(&chain.g1));
    digests.insert("g2".to_string(), digest(g2));
    if let Some(w) = &weak {
        digests.insert("weak".to_string(), digest(&w.space));
    }
    Ok(CachedResult {
        dim_v: rep.dim_v(),
        dim_g: rep.dim_g(),
        dim_rbar: cs.dim(),
        dim_l: sb.dim_l,
        is_skew_berger: sb.is_skew_berger,
        dim_rnabla: nabla.dim(),
        dim_prolong1: chain.dim1(),
        dim_prolong2: g2.dim(),
        rank_spencer: spencer.rank_spencer,
        dim_h22: spencer.dim_h22,
        weak_dim: weak.map(|w| w.dim()),
        form_kind: rep.form().map(|f| f.kind),
        arithmetic: cs.arithmetic,
        digests,
    })
}

/// Recomputes a cached result from scratch.
pub fn recompute(spec: &RepSpec, opts: &CheckOptions) -> Result<CachedResult> {
    let rep = spec.build()?;
    let mut timer = Timer {
        on: false,
        map: Map::new(),
    };
    compute(&rep, opts, &mut timer)
}

fn delta<T: Serialize + PartialEq>(
    out: &mut Vec<Delta>,
    field: &str,
    entry: &RegistryEntry,
    exp: &Option<Expected<T>>,
    actual: Option<T>,
    partial: bool,
) {
    if let Some(e) = exp {
        if partial && actual.is_none() {
            return;
        }
        if actual.as_ref() != Some(&e.value) {
            out.push(Delta {
                field: field.to_string(),
                row: entry.label(),
                expected: serde_json::to_value(&e.value).unwrap_or(Value::Null),
                actual: serde_json::to_value(&actual).unwrap_or(Value::Null),
                provenance: e.provenance.clone(),
            });
        }
    }
}

/// Mismatches between a report and the registry entries for its spec.
pub fn compare(report: &CheckReport, registry: &[RegistryEntry]) -> Vec<Delta> {
    let mut out = Vec::new();
    for entry in registry {
        let x = &entry.expected;
        let p = report.aborted.is_some();
        delta(&mut out, "dimRbar", entry, &x.dim_rbar, report.dim_rbar, p);
        delta(&mut out, "isSkewBerger", entry, &x.is_skew_berger, report.is_skew_berger, p);
        delta(&mut out, "isSymmetric", entry, &x.is_symmetric, report.is_symmetric, p);
        delta(&mut out, "dimProlong1", entry, &x.dim_g1, report.dim_prolong1, p);
        delta(&mut out, "dimProlong2", entry, &x.dim_g2, report.dim_prolong2, p);
        delta(&mut out, "dimH22", entry, &x.dim_h22, report.dim_h22, p);
        if !p {
            delta(&mut out, "formKind", entry, &x.form_kind, report.form_kind, p);
        }
    }
    out
}

pub fn run_check(spec: &RepSpec, opts: &CheckOptions) -> Result<CheckReport> {
    let mut report = CheckReport::empty(spec);
    let cache = opts.cache_dir.as_ref().map(ResultCache::open).transpose()?;
    let key = CacheKey::new(&spec.to_string(), opts.solve.arithmetic);
    let mut timer = Timer {
        on: opts.timings,
        map: Map::new(),
    };
    let hit = cache.as_ref().and_then(|c| c.get(&key));
    let was_hit = hit.is_some();
    let result = match hit {
        Some(cached) => {
            if rand::random::<f64>() < opts.spot_check_rate {
                let fresh = recompute(spec, opts)?;
                if fresh != cached {
                    return Err(Error::Construction(format!(
                        "cache entry for {spec} does not replay: cached {cached:?}, recomputed {fresh:?}"
                    )));
                }
            }
            Some(cached)
        }
        None => {
            let run = timer.run("build", || spec.build()).and_then(|rep| compute(&rep, opts, &mut timer));
            match run {
                Ok(r) => {
                    if let Some(c) = &cache {
                        c.put(&key, &r)?;
                    }
                    Some(r)
                }
                Err(Error::ResourceLimit { stage, progress }) => {
                    report.aborted = Some(format!("resource limit in stage {stage}: {progress}"));
                    None
                }
                Err(e) => return Err(e),
            }
        }
    };
    if let Some(r) = &result {
        report.fill(r, &opts.solve.primes);
    }
    if opts.timings {
        report.elapsed_ms_by_stage = Some(timer.map);
    }
    if cache.is_some() {
        let h = was_hit;
        report.cache_hits = Some(STAGES.iter().map(|s| (s.to_string(), h)).collect());
    }
    report.expected_deltas = compare(&report, &lookup(spec));
    Ok(report)
}

/// Runs every instantiated row of a table; failures become aborted reports.
pub fn run_table(table: u8, max_dim: usize, opts: &CheckOptions) -> Result<Vec<CheckReport>> {
    let mut specs: Vec<RepSpec> = entries(table, max_dim)?.into_iter().map(|e| e.spec).collect();
    specs.sort_by_key(|s| s.to_string());
    specs.dedup();
    let mut reports: Vec<CheckReport> = specs
        .par_iter()
        .map(|s| {
            run_check(s, opts).unwrap_or_else(|e| {
                let mut r = CheckReport::empty(s);
                r.aborted = Some(format!("error: {e}"));
                r.expected_deltas = compare(&r, &lookup(s));
                r
            })
        })
        .collect();
    reports.sort_by(|a, b| a.spec.cmp(&b.spec));
    Ok(reports)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            o => Err(Error::InvalidParameter(format!("unknown format {o:?}"))),
        }
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(a) if a.iter().all(Value::is_number) => {
            a.iter().map(Value::to_string).collect::<Vec<_>>().join(";")
        }
        other => other.to_string(),
    }
}

/// Deterministic serialization; a list is sorted by spec.
pub fn emit_report(reports: &[CheckReport], single: bool, format: Format) -> Result<Vec<u8>> {
    let mut sorted: Vec<&CheckReport> = reports.iter().collect();
    sorted.sort_by(|a, b| a.spec.cmp(&b.spec));
    match format {
        Format::Json => {
            let mut out = if single && sorted.len() == 1 {
                serde_json::to_vec_pretty(sorted[0])?
            } else {
                serde_json::to_vec_pretty(&sorted)?
            };
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(FIELDS).map_err(csv_err)?;
            for r in sorted {
                let v = serde_json::to_value(r)?;
                let row: Vec<String> = FIELDS.iter().map(|f| csv_cell(&v[*f])).collect();
                w.write_record(&row).map_err(csv_err)?;
            }
            w.into_inner().map_err(|e| Error::Io(e.into_error()))
        }
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::parse_spec;

    fn quiet() -> CheckOptions {
        CheckOptions {
            timings: false,
            ..Default::default()
        }
    }

    #[test]
    fn field_order_is_fixed() {
        let r = run_check(&parse_spec("sl(2):std").unwrap(), &quiet()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, FIELDS);
        assert_eq!(r.dim_rbar, Some(1));
        assert!(r.passed(), "{:?}", r.expected_deltas);
    }

    #[test]
    fn deltas_are_surfaced() {
        let r = run_check(&parse_spec("sl(6)+z:wedge(2)").unwrap(), &quiet()).unwrap();
        assert!(r.expected_deltas.iter().any(|d| d.field == "dimH22" && d.row == "Table 3 row 6"));
    }

    #[test]
    fn csv_has_header_and_rows() {
        let a = run_check(&parse_spec("sl(3):std").unwrap(), &quiet()).unwrap();
        let b = run_check(&parse_spec("sl(2):std").unwrap(), &quiet()).unwrap();
        let text = String::from_utf8(emit_report(&[a, b], false, Format::Csv).unwrap()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("spec,dimV,dimG,dimRbar"));
        assert!(lines[1].starts_with("sl(2):std,2,3,1"));
    }

    #[test]
    fn row_cap_gives_partial_report() {
        let mut o = quiet();
        o.solve.max_rows = Some(10);
        let r = run_check(&parse_spec("sl(3):std").unwrap(), &o).unwrap();
        assert!(r.aborted.as_deref().unwrap().contains("rbar"));
        assert_eq!(r.dim_rbar, None);
        assert!(r.expected_deltas.is_empty());
        assert!(!r.passed());
    }
}
