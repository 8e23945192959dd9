use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use logform::baselocus::analyze;
use logform::singular::HilbertRow;
use logform::{
    hilbert_check, identity_suite, j2_presentation, stability_certificate, DegreeVector, Error, Field, FieldSpec,
    IdentityReport, InstanceDigest, InstanceJson, LogInstance, PrimeField, Rationals, StabilityReport,
};

use crate::{Command, Shape, Source};

const DEFAULT_SEEDS: [u64; 5] = [1, 2, 3, 4, 5];

pub struct Outcome {
    pub success: bool,
    pub summary: Vec<String>,
    pub summary_to_stdout: bool,
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BaseLocusPoint
            | Error::ZeroForm
            | Error::NotIntegrable
            | Error::RetryExhausted(_)
            | Error::Internal(_) => 1,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn input(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// Runs `$body` with `$f` bound to the field named by `$spec`.
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            FieldSpec::Rational => {
                let $f = Rationals;
                $body
            }
            FieldSpec::Prime(p) => {
                let $f = PrimeField::new(p)?;
                $body
            }
        }
    };
}

pub fn run(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Gen { shape, seed, out } => gen(&shape, seed, out.as_deref()),
        Command::Check { source, out } => {
            let loaded = load(&source)?;
            with_field!(loaded.field, |f| check(&loaded.instances(f)?, out.as_deref()))
        }
        Command::Certify { source, out } => {
            let loaded = load(&source)?;
            with_field!(loaded.field, |f| certify(&loaded.instances(f)?, out.as_deref()))
        }
        Command::Baselocus { degrees, out } => baselocus(&degrees, out.as_deref()),
        Command::Hilbert { source, k, out } => {
            let loaded = load(&source)?;
            with_field!(loaded.field, |f| hilbert(&loaded.instances(f)?, k, out.as_deref()))
        }
    }
}

/// Writes `value` to `out`, or to standard output when no path is given.
fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<bool, Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| input(e.to_string()))?;
    text.push('\n');
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| input(format!("cannot write {}: {e}", path.display())))?;
            Ok(true)
        }
        None => {
            print!("{text}");
            Ok(false)
        }
    }
}

fn gen(shape: &Shape, seed: u64, out: Option<&Path>) -> Result<Outcome, Failure> {
    let doc = with_field!(shape.field, |f| {
        let inst = LogInstance::generate(f, shape.n, shape.degrees.clone(), seed)?;
        InstanceJson::from_instance(&inst)
    });
    let to_stdout = emit(&doc, out)?;
    Ok(Outcome {
        success: true,
        summary: vec![format!(
            "generated d={} on P^{} over {} with seed {seed}",
            shape.degrees, shape.n, shape.field
        )],
        summary_to_stdout: to_stdout,
    })
}

/// Instances named on the command line, either as files or as a seeded
/// generation request.
enum Loaded {
    Files(Vec<(PathBuf, InstanceJson)>),
    Generated {
        n: usize,
        degrees: DegreeVector,
        seeds: Vec<u64>,
    },
}

struct LoadedSet {
    field: FieldSpec,
    what: Loaded,
}

impl LoadedSet {
    fn instances<K: Field>(&self, field: K) -> Result<Vec<LogInstance<K>>, Failure> {
        match &self.what {
            Loaded::Files(docs) => docs
                .iter()
                .map(|(path, doc)| {
                    doc.to_instance(field)
                        .map_err(|e| input(format!("{}: {e}", path.display())))
                })
                .collect(),
            Loaded::Generated { n, degrees, seeds } => seeds
                .par_iter()
                .map(|&s| LogInstance::generate(field, *n, degrees.clone(), s).map_err(Failure::from))
                .collect(),
        }
    }
}

fn load(source: &Source) -> Result<LoadedSet, Failure> {
    if !source.instances.is_empty() {
        let mut docs = Vec::new();
        for path in &source.instances {
            let text = fs::read_to_string(path).map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
            let doc = InstanceJson::parse(&text).map_err(|e| input(format!("{}: {e}", path.display())))?;
            docs.push((path.clone(), doc));
        }
        let field = docs[0].1.field;
        if let Some((path, doc)) = docs.iter().find(|(_, d)| d.field != field) {
            return Err(input(format!(
                "{} is over {}, the first instance is over {field}",
                path.display(),
                doc.field
            )));
        }
        return Ok(LoadedSet {
            field,
            what: Loaded::Files(docs),
        });
    }
    let n = source.n.ok_or_else(|| input("--n is required"))?;
    let degrees = source.degrees.clone().ok_or_else(|| input("--degrees is required"))?;
    let seeds = match (source.seed, source.seeds.is_empty()) {
        (Some(s), _) => vec![s],
        (None, false) => source.seeds.clone(),
        (None, true) => DEFAULT_SEEDS.to_vec(),
    };
    Ok(LoadedSet {
        field: source.field,
        what: Loaded::Generated { n, degrees, seeds },
    })
}

fn label(d: &InstanceDigest) -> String {
    let degrees = d.degrees.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    match d.seed {
        Some(s) => format!("n={} d=({}) seed={s}", d.n, degrees),
        None => format!("n={} d=({})", d.n, degrees),
    }
}

#[derive(Serialize)]
struct CheckEntry {
    instance: InstanceDigest,
    identities: IdentityReport,
    pass: bool,
}

#[derive(Serialize)]
struct CheckReport {
    instances: Vec<CheckEntry>,
    pass: bool,
}

fn check<K: Field>(instances: &[LogInstance<K>], out: Option<&Path>) -> Result<Outcome, Failure> {
    let entries: Vec<CheckEntry> = instances
        .par_iter()
        .map(|inst| {
            let identities = identity_suite(inst);
            CheckEntry {
                instance: InstanceDigest::of(inst),
                pass: identities.all_pass(),
                identities,
            }
        })
        .collect();
    let pass = entries.iter().all(|e| e.pass);
    let mut summary = Vec::new();
    for e in &entries {
        let failed: Vec<String> = e
            .identities
            .entries()
            .into_iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| name)
            .collect();
        summary.push(if failed.is_empty() {
            format!("{}: all identities hold", label(&e.instance))
        } else {
            format!("{}: FAILED {}", label(&e.instance), failed.join(", "))
        });
    }
    let to_stdout = emit(&CheckReport { instances: entries, pass }, out)?;
    Ok(Outcome {
        success: pass,
        summary,
        summary_to_stdout: to_stdout,
    })
}

#[derive(Serialize)]
struct CertifyReport {
    reports: Vec<StabilityReport>,
    /// Every instance is certified surjective with image inside `T(ω)`.
    unanimous: bool,
}

fn certify<K: Field>(instances: &[LogInstance<K>], out: Option<&Path>) -> Result<Outcome, Failure> {
    let reports = instances
        .par_iter()
        .map(stability_certificate)
        .collect::<Result<Vec<_>, Error>>()?;
    let unanimous = reports.iter().all(|r| r.surjective && r.image_in_tangent);
    let summary = reports
        .iter()
        .map(|r| {
            let mut line = format!(
                "{}: dim V={} dim T={} rank={} ker={} -> {}",
                label(&r.instance),
                r.dim_v,
                r.dim_t,
                r.rank_dmu,
                r.ker_dmu_dim,
                if r.surjective { "surjective" } else { "NOT surjective" }
            );
            if !r.image_in_tangent {
                line.push_str(" (image leaves T)");
            }
            if !r.within_hypothesis {
                line.push_str(" (n < 3)");
            }
            if r.degenerate {
                line.push_str(" (degenerate residues)");
            }
            line
        })
        .collect();
    let to_stdout = emit(&CertifyReport { reports, unanimous }, out)?;
    Ok(Outcome {
        success: unanimous,
        summary,
        summary_to_stdout: to_stdout,
    })
}

#[derive(Serialize)]
struct BaseLocusReport {
    degrees: Vec<u32>,
    factorizations: Vec<logform::BaseLocusComponent>,
    maximal: Vec<logform::BaseLocusComponent>,
}

fn baselocus(degrees: &DegreeVector, out: Option<&Path>) -> Result<Outcome, Failure> {
    let factorizations = analyze(degrees);
    let maximal: Vec<_> = factorizations
        .iter()
        .filter(|c| c.is_maximal && c.lambda_dim > 0)
        .cloned()
        .collect();
    let mut summary = vec![format!(
        "d={degrees}: {} factorizations, {} components",
        factorizations.len(),
        maximal.len()
    )];
    summary.extend(maximal.iter().map(|c| format!("  {} dim Λ(e)={}", c.phi, c.lambda_dim)));
    let report = BaseLocusReport {
        degrees: degrees.parts().to_vec(),
        factorizations,
        maximal,
    };
    let to_stdout = emit(&report, out)?;
    Ok(Outcome {
        success: true,
        summary,
        summary_to_stdout: to_stdout,
    })
}

#[derive(Serialize)]
struct HilbertTable {
    instance: InstanceDigest,
    syzygies_vanish: bool,
    rows: Vec<HilbertRow>,
}

#[derive(Serialize)]
struct HilbertReport {
    tables: Vec<HilbertTable>,
    pass: bool,
}

fn hilbert<K: Field>(
    instances: &[LogInstance<K>],
    k: Option<(u32, u32)>,
    out: Option<&Path>,
) -> Result<Outcome, Failure> {
    let tables = instances
        .par_iter()
        .map(|inst| {
            let lo = (0..inst.m()).map(|i| inst.degrees().hat(i)).min().unwrap_or(0);
            let (a, b) = k.unwrap_or((lo, lo + 4));
            let syzygies_vanish = j2_presentation(inst)?.composite_vanishes();
            Ok(HilbertTable {
                instance: InstanceDigest::of(inst),
                syzygies_vanish,
                rows: (a..=b).into_par_iter().map(|k| hilbert_check(inst, k)).collect(),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let pass = tables
        .iter()
        .all(|t| t.syzygies_vanish && t.rows.iter().all(|r| r.matched));
    let mut summary = Vec::new();
    for t in &tables {
        summary.push(label(&t.instance));
        for r in &t.rows {
            summary.push(format!(
                "  k={:<3} direct={:<6} predicted={:<6} {}",
                r.k,
                r.direct,
                r.predicted,
                if r.matched { "ok" } else { "MISMATCH" }
            ));
        }
    }
    let to_stdout = emit(&HilbertReport { tables, pass }, out)?;
    Ok(Outcome {
        success: pass,
        summary,
        summary_to_stdout: to_stdout,
    })
}
