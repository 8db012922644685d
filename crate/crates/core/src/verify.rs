//! Batch verification of code parameters and report output.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{
    build_cn, build_cn1, build_repetition, min_distance, same_code, sum_codes, CyclicCode,
    DEFAULT_BUDGET,
};
use crate::cyclotomic::{self, profile};
use crate::error::{Error, Result};
use crate::field::{parse_literal, FieldCtx, FIELD_CAP};
use crate::poly::Poly;
use crate::tensor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "CN-DIST")]
    CnDist,
    #[serde(rename = "CN1-DIST")]
    Cn1Dist,
    #[serde(rename = "CN-DUAL-DIST")]
    CnDualDist,
    #[serde(rename = "TENSOR-EQUIV")]
    TensorEquiv,
    #[serde(rename = "CN1-DUAL-SUM")]
    Cn1DualSum,
    #[serde(rename = "FACTORIZATION")]
    Factorization,
    #[serde(rename = "CONJECTURE-CN1-DUAL")]
    ConjectureCn1Dual,
}

impl TheoremId {
    pub const ALL: [TheoremId; 7] = [
        TheoremId::CnDist,
        TheoremId::Cn1Dist,
        TheoremId::CnDualDist,
        TheoremId::TensorEquiv,
        TheoremId::Cn1DualSum,
        TheoremId::Factorization,
        TheoremId::ConjectureCn1Dual,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::CnDist => "CN-DIST",
            TheoremId::Cn1Dist => "CN1-DIST",
            TheoremId::CnDualDist => "CN-DUAL-DIST",
            TheoremId::TensorEquiv => "TENSOR-EQUIV",
            TheoremId::Cn1DualSum => "CN1-DUAL-SUM",
            TheoremId::Factorization => "FACTORIZATION",
            TheoremId::ConjectureCn1Dual => "CONJECTURE-CN1-DUAL",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "skipped")]
    Skipped,
    #[serde(rename = "n/a")]
    NotApplicable,
    #[serde(rename = "observed")]
    Observed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::NotApplicable => "n/a",
            Status::Observed => "observed",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `[n, k, d]`; `d` is absent when it was not measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub theorem_id: TheoremId,
    pub q: u64,
    pub n: Option<u64>,
    pub n1: Option<u64>,
    pub n2: Option<u64>,
    pub claimed: Option<Params>,
    pub measured: Option<Params>,
    pub status: Status,
    pub elapsed_s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerificationRecord {
    fn new(theorem_id: TheoremId, q: u64, n: u64) -> VerificationRecord {
        VerificationRecord {
            theorem_id,
            q,
            n: Some(n),
            n1: None,
            n2: None,
            claimed: None,
            measured: None,
            status: Status::NotApplicable,
            elapsed_s: None,
            note: None,
        }
    }

    fn with_status(mut self, status: Status, note: impl Into<String>) -> VerificationRecord {
        self.status = status;
        self.note = Some(note.into());
        self
    }
}

pub fn has_failures(records: &[VerificationRecord]) -> bool {
    records.iter().any(|r| r.status == Status::Fail)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: PathBuf,
    #[serde(default)]
    pub format: Format,
}

/// A field given either as an order (`4`) or a literal (`"2^2"`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Order(u64),
    Literal(String),
}

impl FieldSpec {
    fn literal(&self) -> String {
        match self {
            FieldSpec::Order(q) => q.to_string(),
            FieldSpec::Literal(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default = "default_fields")]
    pub fields: Vec<FieldSpec>,
    #[serde(default = "default_range")]
    pub n_range: [u64; 2],
    #[serde(default = "default_budget")]
    pub budget: u64,
    #[serde(default)]
    pub output: Option<OutputSpec>,
    #[serde(default = "default_theorems")]
    pub theorems: Vec<TheoremId>,
    /// Record wall-clock time per row. Off by default so that reports are reproducible.
    #[serde(default)]
    pub timing: bool,
}

fn default_fields() -> Vec<FieldSpec> {
    [2, 3, 4, 5, 7, 8, 9]
        .into_iter()
        .map(FieldSpec::Order)
        .collect()
}

fn default_range() -> [u64; 2] {
    [2, 30]
}

fn default_budget() -> u64 {
    DEFAULT_BUDGET
}

fn default_theorems() -> Vec<TheoremId> {
    TheoremId::ALL.to_vec()
}

impl Default for SweepConfig {
    fn default() -> SweepConfig {
        SweepConfig {
            fields: default_fields(),
            n_range: default_range(),
            budget: default_budget(),
            output: None,
            theorems: default_theorems(),
            timing: false,
        }
    }
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<SweepConfig> {
        let cfg: SweepConfig =
            serde_json::from_str(text).map_err(|e| Error::ConfigInvalid(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<SweepConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::ConfigInvalid(format!("{}: {e}", path.display())))?;
        SweepConfig::from_json(&text)
    }

    /// Checks bounds and resolves the field list.
    pub fn validate(&self) -> Result<Vec<Arc<FieldCtx>>> {
        if self.budget < 1 {
            return Err(Error::ConfigInvalid("budget must be at least 1".into()));
        }
        let [lo, hi] = self.n_range;
        if lo < 2 {
            return Err(Error::ConfigInvalid(
                "n_range lower bound must be at least 2".into(),
            ));
        }
        if lo > hi {
            return Err(Error::ConfigInvalid(format!("empty n_range [{lo}, {hi}]")));
        }
        if self.fields.is_empty() {
            return Err(Error::ConfigInvalid("no fields given".into()));
        }
        if self.theorems.is_empty() {
            return Err(Error::ConfigInvalid("no theorems selected".into()));
        }
        self.fields
            .iter()
            .map(|spec| {
                let lit = spec.literal();
                let (p, l) = parse_literal(&lit)
                    .map_err(|e| Error::ConfigInvalid(format!("field {lit}: {e}")))?;
                let order = (p as u128).pow(l);
                if order > FIELD_CAP as u128 {
                    return Err(Error::ConfigInvalid(format!(
                        "field {lit} exceeds the cap {FIELD_CAP}"
                    )));
                }
                FieldCtx::new(p, l).map_err(|e| Error::ConfigInvalid(format!("field {lit}: {e}")))
            })
            .collect()
    }
}

/// Runs the selected checks for every field and every `n` in range.
///
/// Rows come out field-major, then by `n`, then in theorem order; failures inside
/// a row are recorded in that row.
pub fn sweep(cfg: &SweepConfig) -> Result<Vec<VerificationRecord>> {
    let fields = cfg.validate()?;
    let mut theorems = cfg.theorems.clone();
    theorems.sort();
    theorems.dedup();
    let [lo, hi] = cfg.n_range;
    let jobs: Vec<(Arc<FieldCtx>, u64, TheoremId)> = fields
        .iter()
        .flat_map(|ctx| {
            let theorems = &theorems;
            (lo..=hi).flat_map(move |n| theorems.iter().map(move |&t| (ctx.clone(), n, t)))
        })
        .collect();
    Ok(jobs
        .into_par_iter()
        .map(|(ctx, n, t)| timed(cfg.timing, || row(t, &ctx, n, cfg.budget)))
        .collect())
}

/// Conjecture rows for every composite `n` in range coprime to the characteristic.
pub fn conjecture_check(cfg: &SweepConfig) -> Result<Vec<VerificationRecord>> {
    let fields = cfg.validate()?;
    let [lo, hi] = cfg.n_range;
    let jobs: Vec<(Arc<FieldCtx>, u64)> = fields
        .iter()
        .flat_map(|ctx| {
            (lo..=hi)
                .filter(|&n| profile(n).is_composite() && n % ctx.characteristic() != 0)
                .map(move |n| (ctx.clone(), n))
        })
        .collect();
    Ok(jobs
        .into_par_iter()
        .map(|(ctx, n)| timed(cfg.timing, || conjecture_row(&ctx, n, cfg.budget)))
        .collect())
}

fn timed(timing: bool, f: impl FnOnce() -> VerificationRecord) -> VerificationRecord {
    let start = Instant::now();
    let mut rec = f();
    rec.elapsed_s = timing.then(|| start.elapsed().as_secs_f64());
    rec
}

/// One verification row; never fails, errors become the row's note.
pub fn row(theorem: TheoremId, ctx: &Arc<FieldCtx>, n: u64, budget: u64) -> VerificationRecord {
    let q = ctx.order();
    let base = VerificationRecord::new(theorem, q, n);
    let p = ctx.characteristic();
    if n.is_multiple_of(p) {
        return base.with_status(
            Status::NotApplicable,
            format!("characteristic {p} divides n"),
        );
    }
    let prof = profile(n);
    let composite_only = matches!(
        theorem,
        TheoremId::Cn1Dist | TheoremId::Cn1DualSum | TheoremId::ConjectureCn1Dual
    );
    if composite_only && !prof.is_composite() {
        return base.with_status(
            Status::NotApplicable,
            "n is prime; C_(n,1) is the zero code",
        );
    }
    let result = match theorem {
        TheoremId::CnDist => build_cn(n, ctx).and_then(|c| {
            let claimed = Params {
                n: n as usize,
                k: (n - prof.phi) as usize,
                d: Some(prof.lpf()? as usize),
            };
            distance_row(base.clone(), &c, claimed, budget)
        }),
        TheoremId::Cn1Dist => build_cn1(n, ctx).and_then(|c| {
            let claimed = Params {
                n: n as usize,
                k: (n - prof.phi - 1) as usize,
                d: Some(2 * prof.lpf()? as usize),
            };
            distance_row(base.clone(), &c, claimed, budget)
        }),
        TheoremId::CnDualDist => build_cn(n, ctx).and_then(|c| {
            let claimed = Params {
                n: n as usize,
                k: prof.phi as usize,
                d: Some(1 << prof.omega),
            };
            distance_row(base.clone(), &c.dual(), claimed, budget)
        }),
        TheoremId::TensorEquiv => tensor_row(base.clone(), ctx, n, budget),
        TheoremId::Cn1DualSum => dual_sum_row(base.clone(), ctx, n),
        TheoremId::Factorization => factorization_row(base.clone(), ctx, n),
        TheoremId::ConjectureCn1Dual => Ok(conjecture_row(ctx, n, budget)),
    };
    result.unwrap_or_else(|e| base.with_status(Status::Skipped, e.to_string()))
}

fn distance_row(
    mut rec: VerificationRecord,
    code: &CyclicCode,
    claimed: Params,
    budget: u64,
) -> Result<VerificationRecord> {
    rec.claimed = Some(claimed);
    let mut measured = Params {
        n: code.n(),
        k: code.k(),
        d: None,
    };
    match min_distance(code, budget) {
        Ok(rep) => {
            measured.d = Some(rep.d);
            rec.status = if measured == claimed {
                Status::Pass
            } else {
                Status::Fail
            };
        }
        Err(Error::BudgetExceeded { required, budget }) => {
            rec.status = Status::Skipped;
            rec.note = Some(format!("budget: {required} codewords > {budget}"));
        }
        Err(e) => return Err(e),
    }
    rec.measured = Some(measured);
    Ok(rec)
}

/// The coprime split `n = n1 n2` with `n1` the power of the least prime factor.
fn canonical_split(n: u64) -> Option<(u64, u64)> {
    let prof = profile(n);
    if prof.omega < 2 {
        return None;
    }
    let (p, e) = prof.factorization[0];
    let n1 = p.pow(e);
    Some((n1, n / n1))
}

fn tensor_row(
    base: VerificationRecord,
    ctx: &Arc<FieldCtx>,
    n: u64,
    budget: u64,
) -> Result<VerificationRecord> {
    let Some((n1, n2)) = canonical_split(n) else {
        return Ok(base.with_status(Status::NotApplicable, "n is a prime power"));
    };
    let mut rec = tensor::verify_tensor_dual(n1, n2, ctx, budget)?;
    rec.elapsed_s = None;
    Ok(rec)
}

fn dual_sum_row(
    mut rec: VerificationRecord,
    ctx: &Arc<FieldCtx>,
    n: u64,
) -> Result<VerificationRecord> {
    let prof = profile(n);
    let lhs = build_cn1(n, ctx)?.dual();
    let rhs = sum_codes(&build_cn(n, ctx)?.dual(), &build_repetition(n, ctx)?)?;
    let equal = same_code(&lhs, &rhs)?;
    rec.claimed = Some(Params {
        n: n as usize,
        k: (prof.phi + 1) as usize,
        d: None,
    });
    rec.measured = Some(Params {
        n: n as usize,
        k: rhs.rank(),
        d: None,
    });
    rec.status = if equal && rec.claimed == rec.measured {
        Status::Pass
    } else {
        Status::Fail
    };
    if !equal {
        rec.note = Some("row spaces differ".into());
    }
    Ok(rec)
}

/// Claimed `[n, phi(n), n]` reads: `prod_(d|n) Q_d` has degree `n` and equals
/// `x^n - 1`, `deg Q_n = phi(n)`, and `ord(Q_n) = n`.
fn factorization_row(
    mut rec: VerificationRecord,
    ctx: &Arc<FieldCtx>,
    n: u64,
) -> Result<VerificationRecord> {
    let prof = profile(n);
    let mut product = Poly::one(ctx);
    for &d in &prof.divisors {
        product = &product * &cyclotomic::cyclotomic_poly(d, ctx)?;
    }
    let qn = cyclotomic::cyclotomic_poly(n, ctx)?;
    let factors = product == Poly::x_n_minus_one(ctx, n as usize);
    rec.claimed = Some(Params {
        n: n as usize,
        k: prof.phi as usize,
        d: Some(n as usize),
    });
    rec.measured = Some(Params {
        n: product.degree().unwrap_or(0),
        k: qn.degree().unwrap_or(0),
        d: Some(qn.order()? as usize),
    });
    rec.status = if factors && rec.claimed == rec.measured {
        Status::Pass
    } else {
        Status::Fail
    };
    if !factors {
        rec.note = Some("product of Q_d differs from x^n - 1".into());
    }
    Ok(rec)
}

/// Observed distance of `C_(n,1)^perp` against `2^omega(n)`.
///
/// The dimension and the decomposition `C_(n,1)^perp = C_n^perp + R_n` are
/// proved and checked as pass/fail. The distance is only asserted when `n`
/// has exactly two distinct prime factors; otherwise it is reported as observed.
pub fn conjecture_row(ctx: &Arc<FieldCtx>, n: u64, budget: u64) -> VerificationRecord {
    let base = VerificationRecord::new(TheoremId::ConjectureCn1Dual, ctx.order(), n);
    let prof = profile(n);
    let p = ctx.characteristic();
    if n.is_multiple_of(p) {
        return base.with_status(
            Status::NotApplicable,
            format!("characteristic {p} divides n"),
        );
    }
    if !prof.is_composite() {
        return base.with_status(
            Status::NotApplicable,
            "n is prime; C_(n,1) is the zero code",
        );
    }
    let run = || -> Result<VerificationRecord> {
        let mut rec = base.clone();
        let dual = build_cn1(n, ctx)?.dual();
        let sum = sum_codes(&build_cn(n, ctx)?.dual(), &build_repetition(n, ctx)?)?;
        let lemma = same_code(&dual, &sum)?;
        let claimed = Params {
            n: n as usize,
            k: (prof.phi + 1) as usize,
            d: Some(1 << prof.omega),
        };
        rec.claimed = Some(claimed);
        let mut measured = Params {
            n: n as usize,
            k: dual.k(),
            d: None,
        };
        let distance = min_distance(&dual, budget);
        if let Ok(rep) = &distance {
            measured.d = Some(rep.d);
        }
        rec.measured = Some(measured);
        if !lemma || measured.k != claimed.k {
            return Ok(rec.with_status(Status::Fail, "decomposition C_n^perp + R_n does not hold"));
        }
        rec = match distance {
            Err(Error::BudgetExceeded { required, budget }) => rec.with_status(
                Status::Skipped,
                format!("budget: {required} codewords > {budget}"),
            ),
            Err(e) => return Err(e),
            Ok(_) if prof.omega == 2 => {
                let status = if measured.d == claimed.d {
                    Status::Pass
                } else {
                    Status::Fail
                };
                rec.with_status(status, "two prime factors: distance asserted")
            }
            Ok(_) => rec.with_status(Status::Observed, "distance observed, not asserted"),
        };
        Ok(rec)
    };
    run().unwrap_or_else(|e| base.with_status(Status::Skipped, e.to_string()))
}

pub const CSV_HEADER: [&str; 13] = [
    "theorem_id",
    "q",
    "n",
    "n1",
    "n2",
    "claimed_n",
    "claimed_k",
    "claimed_d",
    "measured_n",
    "measured_k",
    "measured_d",
    "status",
    "elapsed_s",
];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn params_cells(p: Option<Params>) -> [String; 3] {
    match p {
        Some(p) => [p.n.to_string(), p.k.to_string(), opt(p.d)],
        None => Default::default(),
    }
}

/// Writes records as CSV (fixed columns) or as a JSON array.
pub fn emit_report(records: &[VerificationRecord], format: Format, out: impl Write) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let io = |e: csv::Error| Error::Io(e.to_string());
            w.write_record(CSV_HEADER).map_err(io)?;
            for r in records {
                let [cn, ck, cd] = params_cells(r.claimed);
                let [mn, mk, md] = params_cells(r.measured);
                w.write_record([
                    r.theorem_id.to_string(),
                    r.q.to_string(),
                    opt(r.n),
                    opt(r.n1),
                    opt(r.n2),
                    cn,
                    ck,
                    cd,
                    mn,
                    mk,
                    md,
                    r.status.to_string(),
                    opt(r.elapsed_s),
                ])
                .map_err(io)?;
            }
            w.flush()?;
        }
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, records)
                .map_err(|e| Error::Io(e.to_string()))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

pub fn write_report(records: &[VerificationRecord], spec: &OutputSpec) -> Result<()> {
    let file = std::fs::File::create(&spec.path)?;
    let mut buf = std::io::BufWriter::new(file);
    emit_report(records, spec.format, &mut buf)?;
    buf.flush()?;
    Ok(())
}
