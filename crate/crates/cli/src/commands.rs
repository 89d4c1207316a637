//! One function per subcommand. Each returns a JSON report, an optional CSV
//! rendering, and whether the instance contradicted a certified result.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};
use snspec_core::birkhoff::{self, TupleMatrix};
use snspec_core::characters::character_table;
use snspec_core::engine::{self, ProbeOutcome};
use snspec_core::extremal::{self, CertificateMode, SearchOptions};
use snspec_core::group_algebra::{self, GroupFunction};
use snspec_core::perm::{factorial, Perm};
use snspec_core::spectrum::{class_spectrum, fpf_spectrum, EigenEntry};
use snspec_core::{rational, Error, Partition};

use crate::args::{CertifyMode, Command};
use crate::caps::Caps;

/// A CLI failure, split by exit status.
#[derive(Debug)]
pub enum Failure {
    /// Exit 1: bad flags, rejected input, exceeded caps, unreadable files.
    Usage(String),
    /// Exit 2: the instance contradicted a certified result.
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TheoremViolation(_) => Failure::Violation(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

pub struct Report {
    pub json: Value,
    pub csv: Option<String>,
    /// Set when the report itself records a failed certificate.
    pub violation: Option<String>,
}

impl Report {
    fn ok(json: Value) -> Self {
        Report {
            json,
            csv: None,
            violation: None,
        }
    }
}

type Outcome = Result<Report, Failure>;

fn to_value<T: Serialize>(v: &T) -> Result<Value, Failure> {
    serde_json::to_value(v).map_err(|e| Failure::Usage(format!("serialization failed: {e}")))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("invalid input in {}: {e}", path.display())))
}

fn cap(what: &str, value: usize, limit: usize) -> Result<(), Failure> {
    if value > limit {
        Err(Failure::Usage(format!(
            "{what} = {value} exceeds the cap {limit} (raise with SNSPEC_MAX_N)"
        )))
    } else {
        Ok(())
    }
}

fn positive(n: usize) -> Result<(), Failure> {
    if n == 0 {
        Err(Failure::Usage("n must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn spectrum_csv(entries: &[EigenEntry]) -> String {
    let mut out = String::from("partition,value,class\n");
    for e in entries {
        let class = e.class.map(|c| c.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{}\n",
            e.partition.label(),
            rational::to_string(&e.value),
            class
        ));
    }
    out
}

pub fn run(command: &Command, caps: &Caps) -> Outcome {
    match command {
        Command::Chartab { n } => chartab(*n, caps),
        Command::Spectrum { n, k, class } => spectrum(*n, *k, class.as_deref(), caps),
        Command::BuildY { n, k, variant } => build_y(*n, *k, (*variant).into(), caps),
        Command::Probe { n, k } => probe(*n, *k, caps),
        Command::Hoffman { n, k, cross } => hoffman(*n, *k, *cross, caps),
        Command::Vk {
            n,
            k,
            check_rank,
            input,
        } => vk(*n, *k, *check_rank, input.as_deref(), caps),
        Command::Peel { n, k, input } => peel(*n, *k, input, caps),
        Command::Birkhoff {
            input,
            check,
            decompose,
        } => birkhoff_cmd(input, *check, *decompose, caps),
        Command::Search {
            n,
            k,
            all_extremal,
            symmetry_reduce,
        } => search(
            *n,
            *k,
            SearchOptions {
                all_extremal: *all_extremal,
                symmetry_reduce: *symmetry_reduce,
            },
            caps,
        ),
        Command::Certify { mode, n, q } => certify(*mode, *n, *q, caps),
    }
}

fn chartab(n: usize, caps: &Caps) -> Outcome {
    positive(n)?;
    cap("chartab n", n, caps.table)?;
    let table = character_table(n)?;
    Ok(Report {
        json: to_value(&table)?,
        csv: Some(table.to_csv()),
        violation: None,
    })
}

fn spectrum(n: usize, k: Option<usize>, class: Option<&str>, caps: &Caps) -> Outcome {
    positive(n)?;
    cap("spectrum n", n, caps.table)?;
    let table = character_table(n)?;
    match class {
        Some(label) => {
            let generating: Partition = label.parse()?;
            if generating.n() != n {
                return Err(Failure::Usage(format!("class {label} is not a partition of {n}")));
            }
            let spec = class_spectrum(&generating, &table, k)?;
            Ok(Report {
                csv: Some(spectrum_csv(&spec.eigenvalues)),
                json: to_value(&spec)?,
                violation: None,
            })
        }
        None => {
            let k = k.expect("clap requires --k or --class");
            let spec = fpf_spectrum(n, k, &table)?;
            Ok(Report {
                csv: Some(spectrum_csv(&spec.eigenvalues)),
                json: to_value(&spec)?,
                violation: None,
            })
        }
    }
}

fn build_y(n: usize, k: usize, variant: engine::Variant, caps: &Caps) -> Outcome {
    positive(n)?;
    cap("build-y n", n, caps.engine)?;
    let table = character_table(n)?;
    let y = engine::build_y(&table, k, variant)?;
    let mut json = to_value(&y)?;
    json["spectrum"] = to_value(&y.verdict.eigenvalues)?;
    json["equalities_hold"] = json!(y.verdict.equalities_hold());
    Ok(Report::ok(json))
}

fn probe(n: usize, k: usize, caps: &Caps) -> Outcome {
    positive(n)?;
    cap("probe n", n, caps.engine)?;
    let table = character_table(n)?;
    let report = engine::feasibility_probe(&table, k)?;
    let mut json = to_value(&report)?;
    json["status"] = json!(if report.feasible { "feasible" } else { "infeasible" });
    match &report.strict {
        ProbeOutcome::Feasible { witness } => json["witness"] = to_value(witness)?,
        ProbeOutcome::Infeasible { certificate } => json["certificate"] = to_value(certificate)?,
    }
    let violation = (!report.verified).then(|| format!("probe outcome for n={n}, k={k} failed re-verification"));
    Ok(Report {
        json,
        csv: None,
        violation,
    })
}

fn hoffman(n: usize, k: usize, cross: bool, caps: &Caps) -> Outcome {
    positive(n)?;
    cap("hoffman n", n, caps.engine)?;
    let omega = engine::omega(n, k)?;
    let order = rational::int(factorial(n) as i64);
    let one = rational::int(1);
    // Y has λ_1 = 1 and λ_min = ω.
    let ratio = engine::hoffman_ratio(&one, &omega.value)?;
    let bound = &ratio * &order;
    let coset_size = factorial(n - k);
    let mut json = json!({
        "n": n,
        "k": k,
        "omega": rational::to_string(&omega.value),
        "ratio": rational::to_string(&ratio),
        "bound": rational::to_string(&bound),
        "coset_size": coset_size,
        "gamma_k_bound": extremal::gamma_k_hoffman_bound(n, k)?,
    });
    if cross {
        let ratio = engine::cross_ratio(&one, &rational::abs(&omega.value))?;
        let product_bound = &ratio * &ratio * &order * &order;
        json["cross"] = json!({
            "ratio": rational::to_string(&ratio),
            "product_bound": rational::to_string(&product_bound),
        });
    }
    let violation = (bound != rational::int(coset_size as i64))
        .then(|| format!("Hoffman bound {bound} differs from the coset size {coset_size}"));
    Ok(Report {
        json,
        csv: None,
        violation,
    })
}

fn vk(n: usize, k: usize, check_rank: bool, input: Option<&Path>, caps: &Caps) -> Outcome {
    positive(n)?;
    cap("vk n", n, caps.group)?;
    if k == 0 || k >= n {
        return Err(Failure::Usage(format!("vk needs 1 <= k <= n-1 (n={n}, k={k})")));
    }
    let mut json = json!({ "n": n, "k": k, "dimension": group_algebra::vk_dimension(n, k) });
    if check_rank {
        json["rank"] = to_value(&group_algebra::coset_span_rank(n, k)?)?;
    }
    if let Some(path) = input {
        let f: GroupFunction = read_json(path)?;
        if f.n != n {
            return Err(Failure::Usage(format!(
                "input is a function on S_{}, expected S_{n}",
                f.n
            )));
        }
        let table = character_table(n)?;
        json["in_vk"] = json!(group_algebra::is_in_vk(&f, k, &table)?);
        json["fourier_support"] = to_value(&group_algebra::fourier_support(&f, &table)?)?;
    }
    Ok(Report::ok(json))
}

fn peel(n: usize, k: usize, input: &Path, caps: &Caps) -> Outcome {
    positive(n)?;
    cap("peel n", n, caps.peel)?;
    let f: GroupFunction = read_json(input)?;
    if f.n != n {
        return Err(Failure::Usage(format!(
            "input is a function on S_{}, expected S_{n}",
            f.n
        )));
    }
    let cosets = birkhoff::boolean_peel(&f, k)?;
    Ok(Report::ok(
        json!({ "n": n, "k": k, "terms": cosets.len(), "cosets": to_value(&cosets)? }),
    ))
}

fn birkhoff_cmd(input: &Path, check: bool, decompose: bool, caps: &Caps) -> Outcome {
    let m: TupleMatrix = read_json(input)?;
    cap("birkhoff n", m.n, caps.tuple)?;
    let verdict = birkhoff::check_k_bistochastic(&m);
    let mut json = json!({ "n": m.n, "k": m.k, "k_bistochastic": verdict.holds, "reason": verdict.reason });
    if check {
        return Ok(Report::ok(json));
    }
    debug_assert!(decompose);
    if !verdict.holds {
        return Err(Failure::Usage(format!(
            "matrix is not {}-bistochastic: {}",
            m.k,
            verdict.reason.unwrap_or_default()
        )));
    }
    cap("decomposition n", m.n, caps.peel)?;
    let terms = if m.k == 1 {
        birkhoff::birkhoff_decompose(&m)?
    } else {
        birkhoff::gen_birkhoff_decompose(&m)?
    };
    json["terms"] = json!(terms.len());
    json["decomposition"] = to_value(&terms)?;
    Ok(Report::ok(json))
}

fn search(n: usize, k: usize, options: SearchOptions, caps: &Caps) -> Outcome {
    positive(n)?;
    cap("search n", n, caps.search)?;
    let report = extremal::max_k_intersecting(n, k, options)?;
    let mut json = to_value(&report)?;
    if options.all_extremal {
        let families: Vec<Vec<Perm>> = report
            .extremal_families
            .iter()
            .map(|f| f.iter().map(|&r| Perm::unrank(n, r)).collect())
            .collect();
        json["families_one_line"] = to_value(&families)?;
    }
    let violation = (report.max_size > report.hoffman_bound).then(|| {
        format!(
            "family of size {} exceeds the Hoffman bound {}",
            report.max_size, report.hoffman_bound
        )
    });
    Ok(Report {
        json,
        csv: None,
        violation,
    })
}

fn certify(mode: CertifyMode, n: Option<usize>, q: Option<usize>, caps: &Caps) -> Outcome {
    let order = n.or(q).expect("clap requires --n or --q");
    positive(order)?;
    cap("certificate order", order, caps.certificate)?;
    let mode = match mode {
        CertifyMode::Cyclic => CertificateMode::Cyclic(order),
        CertifyMode::Affine => CertificateMode::Affine(order),
    };
    let cert = extremal::sharply_transitive_certificate(mode)?;
    let violation = (!cert.verified).then(|| format!("certificate {mode:?} failed verification"));
    Ok(Report {
        json: to_value(&cert)?,
        csv: None,
        violation,
    })
}
