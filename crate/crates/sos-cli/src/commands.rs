use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use sos_core::lattice::{box_points, lattice_length};
use sos_core::numeric::{AlphaSpec, Decimal, Rational};
use sos_core::predictor::{armleg_sample, evaluate, lsvk_curve, shape_prediction, Evaluation, Prediction};
use sos_core::schensted::{rsk, shape, TableauPair};
use sos_core::sosperm::{enumerate_sos, sos_permutation};
use sos_core::{Error, Result};

use crate::config::{Command, Format, RunConfig};
use crate::svg::plot_svg;

/// Largest modulus accepted by `lattice-dump`.
const DUMP_CAP: i64 = 100_000;

/// Text produced by a command and whether every verified bound held.
pub struct Output {
    pub body: String,
    pub verified: bool,
}

fn ok(body: String) -> Result<Output> {
    Ok(Output { body, verified: true })
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn dec(r: &Rational, digits: u32) -> String {
    Decimal::round(r, digits).to_string()
}

fn alpha(s: &str) -> Result<AlphaSpec> {
    AlphaSpec::parse(s)
}

fn usize_n(n: u64) -> Result<usize> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    usize::try_from(n).map_err(|_| Error::Resource(format!("n = {n} is too large")))
}

#[derive(Serialize)]
struct ShapeJson {
    n: u64,
    alpha: String,
    permutation: Vec<usize>,
    shape: Vec<usize>,
    arm: usize,
    leg: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<Vec<Vec<usize>>>,
}

#[derive(Serialize)]
struct PredictJson {
    n: u64,
    alpha: String,
    trivial: Option<String>,
    arm_lo: Option<String>,
    arm_hi: Option<String>,
    leg_lo: Option<String>,
    leg_hi: Option<String>,
    x0: Option<String>,
    y0: Option<String>,
    slope1: Option<String>,
    slope2: Option<String>,
    boundary: Option<[String; 4]>,
    rows: Vec<[String; 3]>,
}

/// One line of `verify` and `scan` output.
#[derive(Serialize)]
pub struct ScanRow {
    pub n: u64,
    pub alpha_id: String,
    pub arm: usize,
    pub leg: usize,
    pub arm_lo: String,
    pub arm_hi: String,
    pub leg_lo: String,
    pub leg_hi: String,
    pub x0: String,
    pub y0: String,
    pub slope1: String,
    pub slope2: String,
    pub max_dist: String,
    pub case: String,
    pub max_row_dev: String,
    pub max_col_dev: String,
    pub trivial: bool,
    pub violations: Vec<String>,
}

const SCAN_HEADER: &str = "n,alpha_id,arm,leg,arm_lo,arm_hi,leg_lo,leg_hi,x0,y0,slope1,slope2,max_dist";

impl ScanRow {
    fn from_eval(ev: &Evaluation, digits: u32) -> Self {
        let blank = String::new;
        let mut row = ScanRow {
            n: ev.n,
            alpha_id: ev.alpha.clone(),
            arm: ev.arm,
            leg: ev.leg,
            arm_lo: blank(),
            arm_hi: blank(),
            leg_lo: blank(),
            leg_hi: blank(),
            x0: blank(),
            y0: blank(),
            slope1: blank(),
            slope2: blank(),
            max_dist: blank(),
            case: ev.trivial.map(|t| format!("{t:?}").to_lowercase()).unwrap_or_default(),
            max_row_dev: blank(),
            max_col_dev: blank(),
            trivial: ev.trivial.is_some(),
            violations: ev.violations.clone(),
        };
        if let Some(d) = &ev.detail {
            let p = &d.prediction;
            let (s1, s2) = p.slopes();
            row.arm_lo = dec(&p.arm_bounds.lo, digits);
            row.arm_hi = dec(&p.arm_bounds.hi, digits);
            row.leg_lo = dec(&p.leg_bounds.lo, digits);
            row.leg_hi = dec(&p.leg_bounds.hi, digits);
            row.x0 = dec(&p.corner.0, digits);
            row.y0 = dec(&p.corner.1, digits);
            row.slope1 = dec(&s1, digits);
            row.slope2 = dec(&s2, digits);
            row.max_dist = format!("{:.*}", digits as usize, d.distance.max);
            row.case = d.frame.case_tag.to_string();
            row.max_row_dev = format!("{:.*}", digits as usize, d.max_row_dev);
            row.max_col_dev = format!("{:.*}", digits as usize, d.max_col_dev);
        }
        row
    }

    fn csv(&self) -> String {
        let id = if self.alpha_id.contains(',') { format!("\"{}\"", self.alpha_id) } else { self.alpha_id.clone() };
        format!(
            "{},{id},{},{},{},{},{},{},{},{},{},{},{}",
            self.n, self.arm, self.leg, self.arm_lo, self.arm_hi, self.leg_lo, self.leg_hi, self.x0, self.y0, self.slope1, self.slope2, self.max_dist
        )
    }

    fn text(&self) -> String {
        let mut s = format!("{} n={}: arm {} leg {}", self.alpha_id, self.n, self.arm, self.leg);
        if self.trivial {
            let _ = write!(s, " (trivial {})", self.case);
        } else {
            let _ = write!(
                s,
                " | case {} arm ({}, {}] leg ({}, {}] corner ({}, {}) slopes {} {} max_dist {}",
                self.case, self.arm_lo, self.arm_hi, self.leg_lo, self.leg_hi, self.x0, self.y0, self.slope1, self.slope2, self.max_dist
            );
        }
        let status = if self.violations.is_empty() { "ok".to_string() } else { format!("VIOLATED: {}", self.violations.join("; ")) };
        format!("{s} | {status}")
    }
}

fn perm(cfg: &RunConfig, a: &str, n: u64, inverse: bool) -> Result<Output> {
    let al = alpha(a)?;
    let mut w = sos_permutation(usize_n(n)?, &al)?;
    if inverse {
        w = w.inverse();
    }
    match cfg.format.unwrap_or(Format::Text) {
        Format::Text => ok(format!("{w}\n")),
        Format::Csv => {
            let mut s = String::from("i,w_i\n");
            for (i, v) in w.values().iter().enumerate() {
                let _ = writeln!(s, "{},{v}", i + 1);
            }
            ok(s)
        }
        Format::Json => ok(json(&serde_json::json!({ "n": n, "alpha": al.label(), "inverse": inverse, "permutation": w.values() }))),
        Format::Svg => Err(Error::Parse("perm has no svg output".into())),
    }
}

fn shape_cmd(cfg: &RunConfig, a: &str, n: u64, tableaux: bool) -> Result<Output> {
    let al = alpha(a)?;
    let w = sos_permutation(usize_n(n)?, &al)?;
    let t: Option<TableauPair> = tableaux.then(|| rsk(&w));
    let lam = t.as_ref().map(|t| t.shape()).unwrap_or_else(|| shape(&w));
    match cfg.format.unwrap_or(Format::Text) {
        Format::Text => {
            let mut s = format!("w = {w}\nshape = {lam}\narm = {}\nleg = {}\n", lam.part(1), lam.len());
            if let Some(t) = &t {
                let _ = write!(s, "P:\n{}\nQ:\n{}\n", TableauPair::render_french(&t.p), TableauPair::render_french(&t.q));
            }
            ok(s)
        }
        Format::Json => ok(json(&ShapeJson {
            n,
            alpha: al.label().to_string(),
            permutation: w.values().to_vec(),
            shape: lam.rows().to_vec(),
            arm: lam.part(1),
            leg: lam.len(),
            p: t.as_ref().map(|t| t.p.clone()),
            q: t.as_ref().map(|t| t.q.clone()),
        })),
        Format::Csv => {
            let mut s = String::from("k,lambda_k\n");
            for (k, r) in lam.rows().iter().enumerate() {
                let _ = writeln!(s, "{},{r}", k + 1);
            }
            ok(s)
        }
        Format::Svg => ok(plot_svg(&lam, n, None, None)),
    }
}

fn predict(cfg: &RunConfig, a: &str, n: u64) -> Result<Output> {
    let al = alpha(a)?;
    let d = cfg.digits;
    let mut out = PredictJson {
        n,
        alpha: al.label().to_string(),
        trivial: None,
        arm_lo: None,
        arm_hi: None,
        leg_lo: None,
        leg_hi: None,
        x0: None,
        y0: None,
        slope1: None,
        slope2: None,
        boundary: None,
        rows: Vec::new(),
    };
    match shape_prediction(n, &al)? {
        Prediction::Trivial(t) => out.trivial = Some(format!("{t:?}").to_lowercase()),
        Prediction::Shape(p) => {
            let (s1, s2) = p.slopes();
            out.arm_lo = Some(p.arm_bounds.lo.to_string());
            out.arm_hi = Some(p.arm_bounds.hi.to_string());
            out.leg_lo = Some(p.leg_bounds.lo.to_string());
            out.leg_hi = Some(p.leg_bounds.hi.to_string());
            out.x0 = Some(p.corner.0.to_string());
            out.y0 = Some(p.corner.1.to_string());
            out.slope1 = Some(dec(&s1, d));
            out.slope2 = Some(dec(&s2, d));
            out.boundary = Some([
                p.first.intercept.to_string(),
                p.first.slope.to_string(),
                p.second.intercept.to_string(),
                p.second.slope.to_string(),
            ]);
            out.rows = (1..=p.row_limit())
                .filter_map(|k| p.row_estimate(k).map(|e| [k.to_string(), dec(&e.center, d), dec(&e.radius, d)]))
                .collect();
        }
    }
    match cfg.format.unwrap_or(Format::Text) {
        Format::Json => ok(json(&out)),
        Format::Text => {
            if let Some(t) = &out.trivial {
                return ok(format!("n = {n}, α = {}: trivial shape ({t})\n", out.alpha));
            }
            let b = out.boundary.as_ref().expect("nontrivial");
            let mut s = format!("n = {n}, α = {}\n", out.alpha);
            let _ = writeln!(s, "arm in ({}, {}]", out.arm_lo.as_ref().unwrap(), out.arm_hi.as_ref().unwrap());
            let _ = writeln!(s, "leg in ({}, {}]", out.leg_lo.as_ref().unwrap(), out.leg_hi.as_ref().unwrap());
            let _ = writeln!(s, "corner ({}, {})", out.x0.as_ref().unwrap(), out.y0.as_ref().unwrap());
            let _ = writeln!(s, "L(x) = {} + ({})x, then {} + ({})x", b[0], b[1], b[2], b[3]);
            let _ = writeln!(s, "slopes {} {}", out.slope1.as_ref().unwrap(), out.slope2.as_ref().unwrap());
            for r in &out.rows {
                let _ = writeln!(s, "λ_{} ≈ {} ± {}", r[0], r[1], r[2]);
            }
            ok(s)
        }
        Format::Csv => {
            let mut s = String::from("k,center,radius\n");
            for r in &out.rows {
                let _ = writeln!(s, "{},{},{}", r[0], r[1], r[2]);
            }
            ok(s)
        }
        Format::Svg => Err(Error::Parse("use `sos plot` for svg".into())),
    }
}

fn emit_rows(rows: &[ScanRow], format: Format) -> Result<String> {
    Ok(match format {
        Format::Csv => {
            let mut s = format!("{SCAN_HEADER}\n");
            for r in rows {
                s.push_str(&r.csv());
                s.push('\n');
            }
            s
        }
        Format::Json if rows.len() == 1 => json(&rows[0]),
        Format::Json => json(&rows),
        Format::Text => rows.iter().map(|r| r.text() + "\n").collect(),
        Format::Svg => return Err(Error::Parse("use `sos plot` for svg".into())),
    })
}

fn evaluate_all(tasks: &[(AlphaSpec, u64)], jobs: usize, digits: u32) -> Result<Vec<ScanRow>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Resource(format!("thread pool: {e}")))?;
    let results: Vec<Result<ScanRow>> = pool.install(|| {
        tasks.par_iter().map(|(al, n)| evaluate(*n, al).map(|ev| ScanRow::from_eval(&ev, digits))).collect()
    });
    results.into_iter().collect()
}

fn verify(cfg: &RunConfig, alphas: &[String], ns: &[u64], jobs: usize, default: Format) -> Result<Output> {
    let specs = alphas.iter().map(|a| alpha(a)).collect::<Result<Vec<_>>>()?;
    let tasks: Vec<(AlphaSpec, u64)> = specs.iter().flat_map(|al| ns.iter().map(move |&n| (al.clone(), n))).collect();
    let rows = evaluate_all(&tasks, jobs, cfg.digits)?;
    let verified = rows.iter().all(|r| r.violations.is_empty());
    Ok(Output { body: emit_rows(&rows, cfg.format.unwrap_or(default))?, verified })
}

fn armleg(cfg: &RunConfig, alphas: &[String], ns: &[u64], jobs: usize) -> Result<Output> {
    let specs = alphas.iter().map(|a| alpha(a)).collect::<Result<Vec<_>>>()?;
    let tasks: Vec<(AlphaSpec, u64)> = specs.iter().flat_map(|al| ns.iter().map(move |&n| (al.clone(), n))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Resource(format!("thread pool: {e}")))?;
    let samples: Vec<Result<(String, sos_core::predictor::ArmLegSample)>> = pool.install(|| {
        tasks.par_iter().map(|(al, n)| armleg_sample(*n, al).map(|s| (al.label().to_string(), s))).collect()
    });
    let samples = samples.into_iter().collect::<Result<Vec<_>>>()?;
    let d = cfg.digits as usize;
    let body = match cfg.format.unwrap_or(Format::Csv) {
        Format::Json => json(
            &samples
                .iter()
                .map(|(id, s)| serde_json::json!({"n": s.n, "alpha_id": id, "arm": s.arm, "leg": s.leg, "arm_norm": s.arm_norm, "leg_norm": s.leg_norm}))
                .collect::<Vec<_>>(),
        ),
        _ => {
            let mut s = String::from("n,alpha_id,arm,leg,arm_norm,leg_norm\n");
            for (id, x) in &samples {
                let _ = writeln!(s, "{},{id},{},{},{:.d$},{:.d$}", x.n, x.arm, x.leg, x.arm_norm, x.leg_norm);
            }
            s
        }
    };
    ok(body)
}

fn enumerate(cfg: &RunConfig, n: u64) -> Result<Output> {
    let items: Vec<_> = enumerate_sos(n)?.collect();
    match cfg.format.unwrap_or(Format::Text) {
        Format::Csv => {
            let mut s = String::from("left,right,probability,permutation\n");
            for (iv, w) in &items {
                let _ = writeln!(s, "{}/{},{}/{},{},{w}", iv.a, iv.b, iv.c, iv.d, iv.width());
            }
            ok(s)
        }
        Format::Json => ok(json(
            &items
                .iter()
                .map(|(iv, w)| serde_json::json!({"left": iv.left().to_string(), "right": iv.right().to_string(), "probability": iv.width().to_string(), "permutation": w.values()}))
                .collect::<Vec<_>>(),
        )),
        Format::Text => ok(items.iter().map(|(iv, w)| format!("[{iv})  {w}\n")).collect()),
        Format::Svg => Err(Error::Parse("enumerate has no svg output".into())),
    }
}

fn lattice_dump(cfg: &RunConfig, a: &str, b: &str) -> Result<Output> {
    let parse = |s: &str| s.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("not an integer: {s:?}")));
    let (ab, bb) = (parse(a)?, parse(b)?);
    let bi = bb.to_i64().filter(|&b| b <= DUMP_CAP).ok_or_else(|| Error::Resource(format!("lattice dump is limited to b ≤ {DUMP_CAP}")))?;
    let ai = ab.to_i64().ok_or_else(|| Error::Domain(format!("a = {ab} out of range")))?;
    // validates coprimality before enumerating the box
    lattice_length(&ab, &bb, &BigInt::from(0), &BigInt::from(0))?;
    let mut rows = Vec::new();
    for (x, y) in box_points(ai, bi) {
        let (up, down) = lattice_length(&ab, &bb, &BigInt::from(x), &BigInt::from(y))?;
        rows.push((x, y, up, down));
    }
    match cfg.format.unwrap_or(Format::Csv) {
        Format::Json => ok(json(
            &rows.iter().map(|&(x, y, u, d)| serde_json::json!({"x": x, "y": y, "ell_plus": u, "ell_minus": d})).collect::<Vec<_>>(),
        )),
        _ => {
            let mut s = String::from("x,y,ell_plus,ell_minus\n");
            for (x, y, u, d) in rows {
                let _ = writeln!(s, "{x},{y},{u},{d}");
            }
            ok(s)
        }
    }
}

fn plot(a: &str, n: u64, with_lsvk: bool) -> Result<Output> {
    let al = alpha(a)?;
    let lam = shape(&sos_permutation(usize_n(n)?, &al)?);
    let pred = match shape_prediction(n, &al)? {
        Prediction::Shape(p) => Some(p),
        Prediction::Trivial(_) => None,
    };
    let curve = if with_lsvk { Some(lsvk_curve(200)?) } else { None };
    ok(plot_svg(&lam, n, pred.as_deref(), curve.as_deref()))
}

pub fn run(cfg: &RunConfig) -> Result<Output> {
    match &cfg.command {
        Command::Perm { alpha, n, inverse } => perm(cfg, alpha, *n, *inverse),
        Command::Shape { alpha, n, tableaux } => shape_cmd(cfg, alpha, *n, *tableaux),
        Command::Predict { alpha, n } => predict(cfg, alpha, *n),
        Command::Verify { alpha, range } => verify(cfg, std::slice::from_ref(alpha), &range.values()?, 1, Format::Text),
        Command::Scan { alpha, range, jobs, armleg: true } => armleg(cfg, alpha, &range.values()?, *jobs),
        Command::Scan { alpha, range, jobs, armleg: false } => verify(cfg, alpha, &range.values()?, *jobs, Format::Csv),
        Command::Enumerate { n } => enumerate(cfg, *n),
        Command::LatticeDump { a, b } => lattice_dump(cfg, a, b),
        Command::Plot { alpha, n, lsvk } => plot(alpha, *n, *lsvk),
    }
}
