//! Batch runs over enumerated families of instances.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{build_qm_instance, classify, ClassificationWitness, ProblemInstance, SizeMode};
use crate::error::{Error, Result};
use crate::field::{parse_field, Elem, Field};
use crate::graph::{girth_at_least_8, Engine};
use crate::iso::{chain_to_gamma3, gamma3_eight_cycle, pullback_cycle, VerifiedChain, VerifyMode};
use crate::poly::{parse_bipoly, parse_unipoly, BiPoly, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum UniFamily {
    /// Every monic polynomial of degree `1..=m` with zero constant term.
    All,
    Fixed {
        poly: String,
    },
    List {
        polys: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum HFamily {
    Fixed {
        poly: String,
    },
    List {
        polys: Vec<String>,
    },
    /// Every nonzero `Σ h_ij x^i y^j`, `1 ≤ i, j ≤ n`, with coefficients drawn
    /// from `values` (default: the whole field).
    Coefficients {
        #[serde(default)]
        values: Option<Vec<u32>>,
    },
    /// `count` nonzero polynomials with uniform coefficients on the mixed
    /// terms of degree at most `n` in each variable.
    Random {
        count: usize,
        seed: u64,
    },
    Union {
        parts: Vec<HFamily>,
    },
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pipeline {
    Girth,
    Classify,
    #[default]
    Equivalence,
    IsoVerify,
}

fn default_engine() -> Engine {
    Engine::Bfs
}

fn default_samples() -> usize {
    100_000
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CensusJob {
    #[serde(default)]
    pub name: String,
    pub q: String,
    pub m: u32,
    pub n: u32,
    pub f: UniFamily,
    pub g: UniFamily,
    pub h: HFamily,
    #[serde(default)]
    pub pipeline: Pipeline,
    #[serde(default = "default_engine")]
    pub engine: Engine,
    #[serde(default)]
    pub warn_only: bool,
    /// Sampled checks per chain in the `iso-verify` pipeline.
    #[serde(default = "default_samples")]
    pub iso_samples: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub out: Option<String>,
    #[serde(default)]
    pub jobs: Option<usize>,
    /// Write `millis` as 0 so that output is byte-identical across runs.
    #[serde(default)]
    pub deterministic: bool,
}

impl CensusJob {
    pub fn from_json(text: &str) -> Result<CensusJob> {
        serde_json::from_str(text).map_err(|e| Error::Job(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<CensusJob> {
        CensusJob::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn field(&self) -> Result<Field> {
        parse_field(&self.q)
    }

    /// The instance stream, in enumeration order.
    pub fn instances(&self) -> Result<Vec<ProblemInstance>> {
        let fl = self.field()?;
        let fs = uni_family(&fl, &self.f, self.m)?;
        let gs = uni_family(&fl, &self.g, self.m)?;
        let hs = h_family(&fl, &self.h, self.n)?;
        let mut out = Vec::with_capacity(fs.len() * gs.len() * hs.len());
        for f in &fs {
            for g in &gs {
                for h in &hs {
                    out.push(ProblemInstance::new(
                        &fl,
                        self.m,
                        self.n,
                        f.clone(),
                        g.clone(),
                        h.clone(),
                    ));
                }
            }
        }
        Ok(out)
    }
}

fn uni_family(fl: &Field, fam: &UniFamily, m: u32) -> Result<Vec<UniPoly>> {
    match fam {
        UniFamily::All => {
            let mut out = Vec::new();
            for d in 1..=m as usize {
                // coefficients of x^1 .. x^{d-1}, odometer over the field
                let mut c = vec![0u32; d - 1];
                loop {
                    let mut coeffs = vec![Elem::ZERO];
                    coeffs.extend(c.iter().map(|&v| Elem(v)));
                    coeffs.push(Elem::ONE);
                    out.push(UniPoly::new(fl, coeffs));
                    if !odometer(&mut c, fl.q()) {
                        break;
                    }
                }
            }
            Ok(out)
        }
        UniFamily::Fixed { poly } => Ok(vec![parse_unipoly(fl, poly)?]),
        UniFamily::List { polys } => polys.iter().map(|p| parse_unipoly(fl, p)).collect(),
    }
}

/// Advance `c` as a base-`q` counter, least significant first; false on wrap.
fn odometer(c: &mut [u32], q: u32) -> bool {
    for d in c.iter_mut() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}

fn mixed_terms(n: u32) -> Vec<(u32, u32)> {
    (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect()
}

fn h_family(fl: &Field, fam: &HFamily, n: u32) -> Result<Vec<BiPoly>> {
    let terms = mixed_terms(n);
    match fam {
        HFamily::Fixed { poly } => Ok(vec![parse_bipoly(fl, poly)?]),
        HFamily::List { polys } => polys.iter().map(|p| parse_bipoly(fl, p)).collect(),
        HFamily::Coefficients { values } => {
            let values: Vec<Elem> = match values {
                Some(v) => v.iter().map(|&x| fl.elem(x as u64)).collect::<Result<_>>()?,
                None => fl.elements().collect(),
            };
            let mut out = Vec::new();
            if values.is_empty() {
                return Ok(out);
            }
            let mut idx = vec![0u32; terms.len()];
            loop {
                let h = BiPoly::from_terms(fl, terms.iter().zip(&idx).map(|(&t, &i)| (t, values[i as usize])));
                if !h.is_zero() {
                    out.push(h);
                }
                if !odometer(&mut idx, values.len() as u32) {
                    break;
                }
            }
            Ok(out)
        }
        HFamily::Random { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut out = Vec::with_capacity(*count);
            while out.len() < *count {
                let h = BiPoly::from_terms(fl, terms.iter().map(|&t| (t, Elem(rng.gen_range(0..fl.q())))));
                if !h.is_zero() {
                    out.push(h);
                }
            }
            Ok(out)
        }
        HFamily::Union { parts } => {
            let mut out = Vec::new();
            for p in parts {
                out.extend(h_family(fl, p, n)?);
            }
            Ok(out)
        }
    }
}

/// One CSV row; the column set is fixed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRow {
    pub instance: String,
    pub case: Option<String>,
    pub a: Option<u32>,
    pub zeta: Option<u32>,
    pub u: Option<u64>,
    pub v: Option<u64>,
    pub s: Option<u64>,
    pub girth8: Option<bool>,
    pub agree: Option<bool>,
    pub millis: u64,
}

/// A row together with what does not fit the CSV schema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    #[serde(flatten)]
    pub row: ResultRow,
    pub short_cycle: Option<u32>,
    pub seed: Option<String>,
    pub iso: Option<bool>,
    pub chain_steps: Option<usize>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub agree: usize,
    pub disagree: usize,
    pub accepted: usize,
    pub rejected: usize,
    pub iso_verified: usize,
    pub iso_failed: usize,
    pub errors: usize,
}

impl Summary {
    pub fn exit_code(&self) -> i32 {
        if self.disagree > 0 || self.iso_failed > 0 {
            2
        } else if self.errors > 0 {
            3
        } else {
            0
        }
    }
}

impl std::fmt::Display for Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "total = {}, agree = {}, disagree = {}, accepted = {}, rejected = {}, iso verified = {}, iso failed = {}, errors = {}",
            self.total,
            self.agree,
            self.disagree,
            self.accepted,
            self.rejected,
            self.iso_verified,
            self.iso_failed,
            self.errors
        )
    }
}

#[derive(Clone, Debug)]
pub struct CensusResult {
    pub outcomes: Vec<Outcome>,
    pub summary: Summary,
}

fn witness_columns(row: &mut ResultRow, w: &Option<ClassificationWitness>) {
    match w {
        Some(w) => {
            row.case = Some(w.case.to_string());
            row.a = Some(w.a.0);
            row.zeta = Some(w.zeta.0);
            (row.u, row.v, row.s) = (Some(w.u), Some(w.v), Some(w.s));
        }
        None => row.case = Some("none".into()),
    }
}

fn run_one(job: &CensusJob, inst: &ProblemInstance) -> Outcome {
    let start = Instant::now();
    let mut out = Outcome {
        row: ResultRow {
            instance: inst.to_string(),
            case: None,
            a: None,
            zeta: None,
            u: None,
            v: None,
            s: None,
            girth8: None,
            agree: None,
            millis: 0,
        },
        short_cycle: None,
        seed: None,
        iso: None,
        chain_steps: None,
        error: None,
    };
    if let Err(e) = fill(job, inst, &mut out) {
        out.error = Some(e.to_string());
    }
    if !job.deterministic {
        out.row.millis = start.elapsed().as_millis() as u64;
    }
    out
}

fn fill(job: &CensusJob, inst: &ProblemInstance, out: &mut Outcome) -> Result<()> {
    let mode = if job.warn_only {
        SizeMode::WarnOnly
    } else {
        SizeMode::Enforce
    };
    let witness = match job.pipeline {
        Pipeline::Girth => None,
        _ => {
            let w = classify(inst, mode)?;
            witness_columns(&mut out.row, &w);
            Some(w)
        }
    };
    if job.pipeline == Pipeline::Classify {
        return Ok(());
    }
    let (spec, _) = build_qm_instance(inst)?;
    let verdict = girth_at_least_8(&spec, job.engine)?;
    out.row.girth8 = Some(verdict.at_least_8);
    out.short_cycle = verdict.short_cycle;
    out.seed = verdict.seed.map(|s| s.to_string());
    let Some(witness) = witness else { return Ok(()) };
    out.row.agree = Some(witness.is_some() == verdict.at_least_8);
    if let (Pipeline::IsoVerify, Some(w)) = (job.pipeline, witness) {
        out.iso = Some(false);
        let chain = chain_to_gamma3(&w, inst)?;
        out.chain_steps = Some(chain.len());
        let vc = VerifiedChain::verify(
            chain,
            VerifyMode::Sampled {
                n: job.iso_samples,
                seed: job.seed,
            },
        )?;
        let cycle = pullback_cycle(&vc, &gamma3_eight_cycle(vc.chain().target().field()))?;
        out.seed = Some(cycle.seed().to_string());
        out.iso = Some(cycle.len() == 8);
    }
    Ok(())
}

/// Run every instance of `job` on `jobs` worker threads; outcomes come back
/// in enumeration order regardless of completion order.
pub fn run_census(job: &CensusJob, jobs: usize) -> Result<CensusResult> {
    let instances = job.instances()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Job(e.to_string()))?;
    let outcomes: Vec<Outcome> = pool.install(|| instances.par_iter().map(|i| run_one(job, i)).collect());
    let mut summary = Summary {
        total: outcomes.len(),
        ..Summary::default()
    };
    for o in &outcomes {
        match o.row.agree {
            Some(true) => summary.agree += 1,
            Some(false) => summary.disagree += 1,
            None => {}
        }
        match o.row.case.as_deref() {
            Some("none") => summary.rejected += 1,
            Some(_) => summary.accepted += 1,
            None => {}
        }
        match o.iso {
            Some(true) => summary.iso_verified += 1,
            Some(false) => summary.iso_failed += 1,
            None => {}
        }
        if o.error.is_some() {
            summary.errors += 1;
        }
    }
    Ok(CensusResult { outcomes, summary })
}

pub fn write_csv<W: Write>(outcomes: &[Outcome], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    if outcomes.is_empty() {
        wr.write_record([
            "instance", "case", "a", "zeta", "u", "v", "s", "girth8", "agree", "millis",
        ])
        .map_err(|e| Error::Io(e.to_string()))?;
    }
    for o in outcomes {
        wr.serialize(&o.row).map_err(|e| Error::Io(e.to_string()))?;
    }
    wr.flush()?;
    Ok(())
}

pub fn write_jsonl<W: Write>(outcomes: &[Outcome], mut w: W) -> Result<()> {
    for o in outcomes {
        writeln!(w, "{}", serde_json::to_string(o).expect("plain data"))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(json: &str) -> CensusJob {
        CensusJob::from_json(json).unwrap()
    }

    #[test]
    fn family_sizes() {
        let j = job(
            r#"{"q": "9", "m": 2, "n": 1, "f": {"family": "all"}, "g": {"family": "all"}, "h": {"family": "coefficients"}}"#,
        );
        assert_eq!(j.instances().unwrap().len(), 800);
        let j = job(
            r#"{"q": "8", "m": 2, "n": 1, "f": {"family": "all"}, "g": {"family": "all"}, "h": {"family": "coefficients"}}"#,
        );
        assert_eq!(j.instances().unwrap().len(), 567);
        let j = job(
            r#"{"q": "11", "m": 1, "n": 2, "f": {"family": "fixed", "poly": "x"}, "g": {"family": "fixed", "poly": "y"},
                "h": {"family": "union", "parts": [{"family": "coefficients", "values": [0, 1, 2]}, {"family": "random", "count": 50, "seed": 3}]}}"#,
        );
        let insts = j.instances().unwrap();
        assert_eq!(insts.len(), 130);
        assert_eq!(insts[0].to_string(), "q=11 m=1 n=2 f=x g=y h=x*y");
        assert_eq!(j.instances().unwrap(), insts);
    }

    #[test]
    fn all_family_is_the_listed_set() {
        let fl = parse_field("5").unwrap();
        let polys: Vec<String> = uni_family(&fl, &UniFamily::All, 2)
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(polys, ["x", "x^2", "x^2 + x", "x^2 + 2*x", "x^2 + 3*x", "x^2 + 4*x"]);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(CensusJob::from_json(r#"{"q": "9", "m": 2, "n": 1, "f": {"family": "all"}, "g": {"family": "all"}, "h": {"family": "coefficients"}, "bogus": 1}"#).is_err());
    }

    #[test]
    fn empty_family_gives_header_only() {
        let j = job(
            r#"{"q": "7", "m": 1, "n": 1, "f": {"family": "list", "polys": []}, "g": {"family": "all"}, "h": {"family": "coefficients"}}"#,
        );
        let r = run_census(&j, 1).unwrap();
        assert_eq!(r.summary, Summary::default());
        let mut buf = Vec::new();
        write_csv(&r.outcomes, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "instance,case,a,zeta,u,v,s,girth8,agree,millis\n"
        );
    }

    #[test]
    fn small_census_is_deterministic() {
        let text = r#"{"q": "7", "m": 1, "n": 1, "f": {"family": "all"}, "g": {"family": "all"},
                       "h": {"family": "coefficients"}, "pipeline": "iso-verify", "iso_samples": 2000, "deterministic": true}"#;
        let j = job(text);
        let a = run_census(&j, 1).unwrap();
        let b = run_census(&j, 3).unwrap();
        assert_eq!(a.summary.total, 6);
        assert_eq!(a.summary.disagree, 0);
        assert_eq!(a.summary.accepted, 0);
        let (mut ca, mut cb) = (Vec::new(), Vec::new());
        write_csv(&a.outcomes, &mut ca).unwrap();
        write_csv(&b.outcomes, &mut cb).unwrap();
        assert_eq!(ca, cb);
        let text = String::from_utf8(ca).unwrap();
        assert!(
            text.lines()
                .nth(1)
                .unwrap()
                .starts_with("q=7 m=1 n=1 f=x g=y h=x*y,none,,,,,,false,true,0"),
            "{text}"
        );
    }
}
