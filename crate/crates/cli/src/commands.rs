//! The subcommands.

use std::path::Path;

use serde::Serialize;

use sa2::arith::parse::{is_symmetric_with_identity, parse_set, symmetrize};
use sa2::arith::rational::ratvec;
use sa2::paradox::{
    dekker_pieces, nonamenability_report, orbit_decompose, NonamenabilityReport, PieceAssignment,
    StabilizerStatus,
};
use sa2::pingpong::{certify_pair, recheck, FreePairCertificate, RecheckReport};
use sa2::spectral::{
    closure_check, operator_norm_est, schreier_operator, Closure, GapEstimate, GAP_TABLE_HEADER,
    DEFAULT_CLOSURE_LIMIT,
};
use sa2::verify::{
    freeness_check, local_commutativity_check, sample_points, CommutativityReport, FreenessReport,
};
use sa2::{AffineElement, RationalPoint};

use crate::config::{CommandKind, RunConfig};
use crate::exit::CliError;
use crate::output::{json_document, sha256_hex, table_preamble};

/// A rendered document, and the error to exit with once it is written.
pub struct Outcome {
    pub text: String,
    pub failure: Option<CliError>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, failure: None }
    }
}

struct Input {
    text: String,
    hash: String,
}

fn read_input(path: &Path) -> Result<Input, CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
    let hash = sha256_hex(&bytes);
    let text = String::from_utf8(bytes)
        .map_err(|_| CliError::parse(format!("{} is not UTF-8", path.display())))?;
    Ok(Input { text, hash })
}

pub fn run(cfg: &RunConfig, input: &Path) -> Result<Outcome, CliError> {
    let inp = read_input(input)?;
    match cfg.subcommand {
        CommandKind::Certify => certify(cfg, &inp),
        CommandKind::Recheck => recheck_cmd(cfg, &inp),
        CommandKind::FreeCheck => free_check(cfg, &inp),
        CommandKind::Paradox => paradox(cfg, &inp),
        CommandKind::Gap => gap(cfg, &inp),
        CommandKind::QuotientCheck => quotient_check(cfg, &inp),
    }
}

fn generating_set(inp: &Input) -> Result<(Vec<AffineElement>, bool), CliError> {
    let s = parse_set(&inp.text)?;
    if is_symmetric_with_identity(&s) {
        return Ok((s, false));
    }
    let sym = symmetrize(&s);
    eprintln!(
        "warning: input is not symmetric with identity; added {} inverse(s){}",
        sym.added_inverses,
        if sym.added_identity { " and the identity" } else { "" }
    );
    Ok((sym.set, true))
}

/// Certificates are accepted bare or wrapped in a `certify` document.
fn certificate(inp: &Input) -> Result<FreePairCertificate, CliError> {
    let v: serde_json::Value =
        serde_json::from_str(&inp.text).map_err(|e| CliError::parse(format!("certificate: {e}")))?;
    let inner = v
        .get("result")
        .and_then(|r| r.get("certificate"))
        .unwrap_or(&v);
    Ok(FreePairCertificate::from_json(&inner.to_string())?)
}

#[derive(Serialize)]
struct CertifyResult<'a> {
    symmetrized: bool,
    certificate: &'a FreePairCertificate,
}

fn certify(cfg: &RunConfig, inp: &Input) -> Result<Outcome, CliError> {
    let (s, symmetrized) = generating_set(inp)?;
    let cert = certify_pair(&s, &cfg.certify())?;
    let result = CertifyResult {
        symmetrized,
        certificate: &cert,
    };
    Ok(Outcome::ok(json_document(cfg, &inp.hash, &result)?))
}

#[derive(Serialize)]
struct RecheckResult {
    pass: bool,
    report: RecheckReport,
}

fn recheck_cmd(cfg: &RunConfig, inp: &Input) -> Result<Outcome, CliError> {
    let cert = certificate(inp)?;
    let report = recheck(&cert)?;
    let result = RecheckResult { pass: true, report };
    Ok(Outcome::ok(json_document(cfg, &inp.hash, &result)?))
}

#[derive(Serialize)]
struct FreeCheckResult {
    a: AffineElement,
    b: AffineElement,
    freeness: FreenessReport,
    local_commutativity: CommutativityReport,
}

fn pair(inp: &Input) -> Result<(AffineElement, AffineElement), CliError> {
    if inp.text.trim_start().starts_with('{') {
        let c = certificate(inp)?;
        return Ok((c.a_final, c.b_final));
    }
    let s = parse_set(&inp.text)?;
    match <[AffineElement; 2]>::try_from(s) {
        Ok([a, b]) => Ok((a, b)),
        Err(s) => Err(CliError::parse(format!(
            "free-check expects a certificate or exactly two elements, found {}",
            s.len()
        ))),
    }
}

fn free_check(cfg: &RunConfig, inp: &Input) -> Result<Outcome, CliError> {
    let (a, b) = pair(inp)?;
    let freeness = freeness_check(&a, &b, cfg.lfree as usize);
    let local_commutativity = local_commutativity_check(&a, &b, cfg.lcomm as usize);
    let failure = if let Some(w) = &freeness.counterexample {
        Some(CliError::validation(format!(
            "freeness counterexample of length {}: {w}",
            w.len()
        )))
    } else if !local_commutativity.pass() {
        Some(CliError::validation(format!(
            "{} local commutativity violation(s)",
            local_commutativity.violations_total
        )))
    } else {
        None
    };
    let result = FreeCheckResult {
        a,
        b,
        freeness,
        local_commutativity,
    };
    Ok(Outcome {
        text: json_document(cfg, &inp.hash, &result)?,
        failure,
    })
}

#[derive(Serialize)]
struct OrbitSummary {
    #[serde(with = "ratvec")]
    representative: RationalPoint,
    radius: usize,
    size: usize,
    status: StabilizerStatus,
}

#[derive(Serialize)]
struct ParadoxResult {
    #[serde(with = "ratvec")]
    seed_point: RationalPoint,
    orbits: Vec<OrbitSummary>,
    pass: bool,
    assignment: PieceAssignment,
    nonamenability: NonamenabilityReport,
}

fn paradox(cfg: &RunConfig, inp: &Input) -> Result<Outcome, CliError> {
    let cert = certificate(inp)?;
    let seed_point = sample_points(cfg.seed, 1)
        .pop()
        .expect("one seeded point");
    let orbits = orbit_decompose(
        &cert.a_final,
        &cert.b_final,
        std::slice::from_ref(&seed_point),
        cfg.orbit_radius as usize,
    );
    let assignment = dekker_pieces(&cert.a_final, &cert.b_final, &orbits)?;
    let nonamenability = nonamenability_report(&cert, &assignment, 3)?;
    let pass = assignment.pass() && nonamenability.pass();
    let result = ParadoxResult {
        seed_point,
        orbits: orbits
            .into_iter()
            .map(|o| OrbitSummary {
                representative: o.representative,
                radius: o.radius,
                size: o.members.len(),
                status: o.status,
            })
            .collect(),
        pass,
        assignment,
        nonamenability,
    };
    Ok(Outcome {
        text: json_document(cfg, &inp.hash, &result)?,
        failure: (!pass).then(|| CliError::validation("piece decomposition failed")),
    })
}

fn gap_row(s: &[AffineElement], n: u64, cfg: &RunConfig) -> sa2::Result<GapEstimate> {
    let op = schreier_operator(s, n, cfg.action())?;
    operator_norm_est(&op, &cfg.norm())
}

fn gap(cfg: &RunConfig, inp: &Input) -> Result<Outcome, CliError> {
    let (s, _) = generating_set(inp)?;
    let mut out = table_preamble(cfg, &inp.hash)?;
    out.push_str(GAP_TABLE_HEADER);
    out.push_str(",status\n");
    let mode = match cfg.action() {
        sa2::spectral::ActionMode::Plane => "plane",
        sa2::spectral::ActionMode::Cayley => "cayley",
    };
    for &n in &cfg.moduli {
        match gap_row(&s, n, cfg) {
            Ok(est) => {
                let table = sa2::spectral::gap_table(std::slice::from_ref(&est));
                let row = table.lines().nth(1).expect("one row");
                out.push_str(row);
                out.push_str(",ok\n");
            }
            Err(e) => {
                let reason = e.to_string().replace(',', ";");
                out.push_str(&format!("{n},{mode},,,,,,,,,failed: {reason}\n"));
            }
        }
    }
    Ok(Outcome::ok(out))
}

#[derive(Serialize)]
struct QuotientRow {
    p: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    closure: Option<Closure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn quotient_check(cfg: &RunConfig, inp: &Input) -> Result<Outcome, CliError> {
    let (s, _) = generating_set(inp)?;
    let rows: Vec<QuotientRow> = cfg
        .moduli
        .iter()
        .map(|&p| match closure_check(&s, p, DEFAULT_CLOSURE_LIMIT) {
            Ok(c) => QuotientRow {
                p,
                closure: Some(c),
                error: None,
            },
            Err(e) => QuotientRow {
                p,
                closure: None,
                error: Some(e.to_string()),
            },
        })
        .collect();
    Ok(Outcome::ok(json_document(cfg, &inp.hash, &rows)?))
}
