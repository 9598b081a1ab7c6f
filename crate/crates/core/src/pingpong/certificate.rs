//! The certificate document and its independent re-check.

use serde::{Deserialize, Serialize};

use super::certify::{choose_eta, conjugated, frame_norm, EtaMode};
use super::frame::Frame;
use super::search::{exceeds_twice_norm, is_general_position, theta_norm};
use super::separation::{case_pair, separation_select, Budgets, GeometryReport};
use super::table::{all_checks, ell_checks_pass, schedule_params, CheckedInequality, Radii, TableGeometry, TableParams};
use crate::arith::affine::AffineElement;
use crate::arith::ball::{eval_word, SWord};
use crate::arith::interval::NormInterval;
use crate::arith::norm::spectral_radius;
use crate::arith::parse::is_symmetric_with_identity;
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Norms {
    /// `‖θ(S)‖` of the input.
    pub theta_s: NormInterval,
    /// `‖γθ(S)γ⁻¹‖` after conjugation.
    pub theta_s_reduced: NormInterval,
    /// `‖S‖` through the 3×3 embedding `ι`.
    pub iota_s: NormInterval,
}

/// Witness that `(a_final, b_final)` freely generate a free group acting
/// locally commutatively.
///
/// `a`, `h`, `b` and the frame live in the conjugated coordinates
/// `S' = γSγ⁻¹`; `a_final = γ⁻¹a^ℓγ` and `b_final` are in the input coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FreePairCertificate {
    pub format_version: u32,
    pub generators: Vec<AffineElement>,
    pub gamma: AffineElement,
    pub a0_word: SWord,
    pub h0_word: SWord,
    pub budgets: Budgets,
    pub case: u8,
    pub a: AffineElement,
    pub h: AffineElement,
    pub b: AffineElement,
    pub eta_mode: EtaMode,
    pub params: TableParams,
    pub radii: Radii,
    pub norm_h: NormInterval,
    pub frame: Frame,
    pub geometry: TableGeometry,
    pub norms: Norms,
    pub separation: GeometryReport,
    pub ell: u64,
    pub ell_apriori: u64,
    pub within_apriori_bound: bool,
    pub checks: Vec<CheckedInequality>,
    pub apriori_checks: Option<Vec<CheckedInequality>>,
    pub pair_word_length: u64,
    pub a_final: AffineElement,
    pub b_final: AffineElement,
}

impl FreePairCertificate {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Parses a document, checking the format version before anything else.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: serde_json::Value = serde_json::from_str(text)?;
        let found = raw
            .get("format_version")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::Invalid("missing format_version".into()))?;
        if found != FORMAT_VERSION as u64 {
            return Err(Error::VersionMismatch {
                found: found as u32,
                expected: FORMAT_VERSION,
            });
        }
        Ok(serde_json::from_value(raw)?)
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecheckReport {
    pub inequalities: usize,
    pub apriori_inequalities: usize,
    /// `ℓ − 1` fails some `ℓ`-dependent check.
    pub ell_minimal: bool,
    pub within_apriori_bound: bool,
}

fn fail(name: &str, reason: impl Into<String>) -> Error {
    Error::CheckFailed {
        name: name.into(),
        reason: reason.into(),
    }
}

fn expect_eq<T: PartialEq>(name: &str, stored: &T, computed: &T) -> Result<()> {
    if stored == computed {
        Ok(())
    } else {
        Err(fail(name, "stored value differs from recomputation"))
    }
}

fn compare_checks(stored: &[CheckedInequality], computed: &[CheckedInequality]) -> Result<()> {
    for (i, c) in computed.iter().enumerate() {
        let Some(s) = stored.get(i) else {
            return Err(fail(&c.name, "missing from certificate"));
        };
        if s.name != c.name {
            return Err(fail(&s.name, format!("expected '{}' at position {i}", c.name)));
        }
        expect_eq(&c.name, s, c)?;
    }
    if let Some(extra) = stored.get(computed.len()) {
        return Err(fail(&extra.name, "unexpected inequality"));
    }
    if let Some(c) = computed.iter().find(|c| !c.pass) {
        return Err(fail(&c.name, format!("inequality fails: {c}")));
    }
    Ok(())
}

/// Recomputes every stored quantity from the generators, the word paths and
/// the recorded choices, and compares.
pub fn recheck(cert: &FreePairCertificate) -> Result<RecheckReport> {
    if cert.format_version != FORMAT_VERSION {
        return Err(Error::VersionMismatch {
            found: cert.format_version,
            expected: FORMAT_VERSION,
        });
    }
    let s = &cert.generators;
    if !is_symmetric_with_identity(s) {
        return Err(fail("generators", "not symmetric with identity"));
    }
    if !cert.gamma.translation.is_zero() {
        return Err(fail("gamma", "conjugator must be linear"));
    }
    let sr = conjugated(s, &cert.gamma);
    if cert.a0_word.iter().chain(&cert.h0_word).any(|&i| i >= s.len()) {
        return Err(fail("words", "letter outside the generating set"));
    }

    let a0 = eval_word(&sr, &cert.a0_word);
    let radius = spectral_radius(&a0.linear)?;
    if !exceeds_twice_norm(&radius, &sr)? {
        return Err(fail("search.hyperbolic", "Λ(θ(a₀)) <= 2‖θ(S)‖"));
    }
    let h0 = eval_word(&sr, &cert.h0_word);
    if !is_general_position(&a0, &h0)? {
        return Err(fail("search.general_position", "h₀ not in general position"));
    }
    let budgets = Budgets::new(
        cert.a0_word.len() as u64,
        cert.h0_word.len() as u64,
        Some(cert.budgets.n4),
    );
    expect_eq("budgets", &cert.budgets, &budgets)?;

    let theta_s = theta_norm(&sr, super::certify::NORM_BITS);
    let report = separation_select(&a0, &h0, &theta_s, &budgets)?;
    expect_eq("separation.case", &cert.case, &report.chosen)?;
    expect_eq("separation", &cert.separation, &report)?;
    let (a, h) = case_pair(cert.case, &a0, &h0, budgets.n4);
    expect_eq("pair.a", &cert.a, &a)?;
    expect_eq("pair.h", &cert.h, &h)?;
    expect_eq("pair.b", &cert.b, &h.compose(&a).compose(&h.inverse_elem()))?;

    let frame = Frame::build(&a, &h)?;
    expect_eq("frame", &cert.frame, &frame)?;
    let geometry = TableGeometry::from_frame(&frame)?;
    expect_eq("geometry", &cert.geometry, &geometry)?;
    let norm_h = frame_norm(&frame);
    expect_eq("norm_h", &cert.norm_h, &norm_h)?;

    let eta = choose_eta(cert.eta_mode, &geometry, &theta_s, &budgets)?;
    expect_eq("schedule.eta", &cert.params.eta, &eta)?;
    let params = schedule_params(&eta, &norm_h)?;
    let p = &cert.params;
    for (name, stored, computed) in [
        ("schedule.eps1", &p.eps1, &params.eps1),
        ("schedule.eps2", &p.eps2, &params.eps2),
        ("schedule.gamma1", &p.gamma1, &params.gamma1),
        ("schedule.gamma2", &p.gamma2, &params.gamma2),
        ("schedule.xi1", &p.xi1, &params.xi1),
        ("schedule.xi2", &p.xi2, &params.xi2),
        ("schedule.h_upper", &p.h_upper, &params.h_upper),
    ] {
        expect_eq(name, stored, computed)?;
    }
    expect_eq(
        "radii",
        &cert.radii,
        &params.radii(&geometry.distances.v0_norm_sq, super::certify::NORM_BITS),
    )?;

    compare_checks(&cert.checks, &all_checks(&params, &geometry, cert.ell)?)?;
    let apriori_inequalities = match (&cert.eta_mode, &cert.apriori_checks) {
        (EtaMode::Paper, Some(stored)) => {
            compare_checks(stored, &all_checks(&params, &geometry, budgets.ell_apriori())?)?;
            stored.len()
        }
        (EtaMode::Paper, None) => return Err(fail("apriori_checks", "missing")),
        (EtaMode::Data, Some(_)) => return Err(fail("apriori_checks", "unexpected")),
        (EtaMode::Data, None) => 0,
    };
    expect_eq("ell_apriori", &cert.ell_apriori, &budgets.ell_apriori())?;

    let gamma_inv = cert.gamma.inverse_elem();
    let a_orig = a.conjugate_by(&gamma_inv);
    let h_orig = h.conjugate_by(&gamma_inv);
    let a_final = a_orig.pow(cert.ell);
    expect_eq("pair.a_final", &cert.a_final, &a_final)?;
    expect_eq(
        "pair.b_final",
        &cert.b_final,
        &h_orig.compose(&a_final).compose(&h_orig.inverse_elem()),
    )?;
    expect_eq(
        "pair_word_length",
        &cert.pair_word_length,
        &super::certify::pair_word_length(cert.case, &budgets, cert.ell),
    )?;

    Ok(RecheckReport {
        inequalities: cert.checks.len(),
        apriori_inequalities,
        ell_minimal: cert.ell == 1 || !ell_checks_pass(&params, &geometry, cert.ell - 1)?,
        within_apriori_bound: cert.within_apriori_bound,
    })
}
