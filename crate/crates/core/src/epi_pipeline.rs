//! End-to-end reports for candidate epimorphisms `G(K(rtilde)) → G(K(r))`:
//! the combinatorial plan of the branched fold map behind a certificate,
//! degree and longitude bookkeeping, towers, and the verification layers.

use std::fmt;

use serde::Serialize;

use crate::charvar::{contains_subvariety, ContainmentReport, SamplingOptions};
use crate::error::{Error, Result};
use crate::farey_action::OrbitCertificate;
use crate::invariants::{alexander, alexander_from_even_cf, divides, finite_quotient_with, FiniteQuotientResult, Sl2};
use crate::presentation::{epi_generator_map, GeneratorMap};
use crate::rational_cf::{cf_even, ContFrac, Slope};
use crate::schubert::{components, epi_candidate, CandidateReport};

pub const SCHEMA_VERSION: u32 = 1;

/// One `b`-domain, carrying the tangle `b_ε^δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PlanBlock {
    pub epsilon: i8,
    pub delta: i8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainKind {
    Rotation,
    Mirror,
}

/// The `c`-domain between two consecutive `b`-domains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CDomain {
    /// The even continued fraction entry between the two blocks.
    pub twist: i64,
    pub kind: DomainKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapPlan {
    pub blocks: Vec<PlanBlock>,
    pub cdomains: Vec<CDomain>,
    pub degree: i64,
    pub branch_lines: usize,
    pub fold_spheres: usize,
    /// The signs `ε_j` of the certificate's continued fraction.
    pub certificate_signs: Vec<i8>,
}

/// The plan of the branched fold map realizing a certificate.
///
/// The `δ_j` alternate `+1, -1, ...` along the blocks, and the plan's
/// `ε_j` is chosen so that `δ_j ε_j` is the certificate sign. A `c`-domain
/// between blocks with equal plan `ε` is folded by a mirror reflection
/// (two branch lines, one fold sphere); otherwise it is a rotation with a
/// single branch line.
pub fn build_map_plan(cert: &OrbitCertificate) -> Result<MapPlan> {
    cert.validate()?;
    if cert.blocks == 0 {
        return Err(Error::BadCertificate("the empty word has no map plan".into()));
    }
    let (_, signs, mids) = cert.pattern();
    let blocks: Vec<PlanBlock> = signs
        .iter()
        .enumerate()
        .map(|(j, &e)| {
            let delta = if j % 2 == 0 { 1 } else { -1 };
            PlanBlock { epsilon: delta * e, delta }
        })
        .collect();
    let cdomains: Vec<CDomain> = blocks
        .windows(2)
        .zip(&mids)
        .map(|(w, &m)| CDomain {
            twist: 2 * m,
            kind: if w[0].epsilon == w[1].epsilon { DomainKind::Mirror } else { DomainKind::Rotation },
        })
        .collect();
    let mirrors = cdomains.iter().filter(|c| c.kind == DomainKind::Mirror).count();
    let rotations = cdomains.len() - mirrors;
    Ok(MapPlan {
        degree: blocks.iter().map(|b| i64::from(b.delta) * i64::from(b.epsilon)).sum(),
        branch_lines: rotations + 2 * mirrors,
        fold_spheres: mirrors,
        certificate_signs: signs,
        blocks,
        cdomains,
    })
}

impl MapPlan {
    /// `Σ ε_j` over the certificate signs; equal to [`MapPlan::degree`].
    pub fn certificate_degree(&self) -> i64 {
        self.certificate_signs.iter().map(|&e| i64::from(e)).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoveringKind {
    Homeomorphism,
    Cyclic,
    IrregularDihedral,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoveringInfo {
    pub applicable: bool,
    pub sheets: Option<usize>,
    pub kind: Option<CoveringKind>,
    /// Components of the trivial link the covering is branched over.
    pub branch_link_components: Option<usize>,
    /// Exactly one of "all certificate signs are +" and "all plan `ε` are
    /// +" holds, so the two readings of the sign condition disagree.
    pub readings_disagree: bool,
    pub reason: Option<String>,
}

/// When every certificate sign is `+`, the map is an `n`-fold branched
/// covering over a trivial `(n-1)`-component link, `n` the number of
/// blocks: cyclic for `n = 2`, irregular dihedral for `n ≥ 3`.
pub fn covering_info(plan: &MapPlan) -> CoveringInfo {
    let cert_plus = plan.certificate_signs.iter().all(|&e| e > 0);
    let plan_plus = plan.blocks.iter().all(|b| b.epsilon > 0);
    let readings_disagree = cert_plus != plan_plus;
    if !cert_plus {
        return CoveringInfo {
            applicable: false,
            sheets: None,
            kind: None,
            branch_link_components: None,
            readings_disagree,
            reason: Some("certificate signs are not all +".into()),
        };
    }
    let n = plan.blocks.len();
    let kind = match n {
        1 => CoveringKind::Homeomorphism,
        2 => CoveringKind::Cyclic,
        _ => CoveringKind::IrregularDihedral,
    };
    CoveringInfo {
        applicable: true,
        sheets: Some(n),
        kind: Some(kind),
        branch_link_components: Some(n - 1),
        readings_disagree,
        reason: None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LongitudeCase {
    KnotToKnot,
    LinkToKnot,
    LinkToLink,
}

/// `λ^e μ^f`, with `f` possibly the unknown linking number `lk`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LongitudeImage {
    pub case: LongitudeCase,
    pub lambda_exp: i64,
    /// `None` when there is no meridian factor.
    pub mu_exp: Option<MuExponent>,
    pub expression: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MuExponent {
    Known(i64),
    Lk,
}

fn power(base: &str, e: &str) -> String {
    match e {
        "0" => String::new(),
        "1" => base.to_string(),
        _ => format!("{base}^{e}"),
    }
}

/// The image of the longitude (or of each longitude `λ̃_j`) of
/// `K(rtilde)` under the map with the plan's degree `d`.
///
/// Knot to knot gives `λ^d`; a link onto a knot gives `λ^{d/2} μ^{lk}`,
/// with `lk` the linking number of the source when known; link to link
/// gives `λ_j^d`.
pub fn longitude_image(plan: &MapPlan, rtilde: Slope, r: Slope, lk: Option<i64>) -> Result<LongitudeImage> {
    let d = plan.degree;
    let (source_knot, target_knot) = (components(rtilde) == 1, components(r) == 1);
    let image = match (source_knot, target_knot) {
        (true, true) => {
            let expression = power("λ", &d.to_string());
            LongitudeImage { case: LongitudeCase::KnotToKnot, lambda_exp: d, mu_exp: None, expression }
        }
        (false, true) => {
            if d % 2 != 0 {
                return Err(Error::ParityMismatch(format!(
                    "degree {d} is odd, but a link onto a knot needs an even degree"
                )));
            }
            let (mu, mu_text) = match lk {
                Some(k) => (MuExponent::Known(k), k.to_string()),
                None => (MuExponent::Lk, "lk".to_string()),
            };
            let parts: Vec<String> =
                [power("λ", &(d / 2).to_string()), power("μ", &mu_text)].into_iter().filter(|p| !p.is_empty()).collect();
            let expression = if parts.is_empty() { "1".into() } else { parts.join("·") };
            LongitudeImage { case: LongitudeCase::LinkToKnot, lambda_exp: d / 2, mu_exp: Some(mu), expression }
        }
        (false, false) => {
            let expression = power("λ_j", &d.to_string());
            LongitudeImage { case: LongitudeCase::LinkToLink, lambda_exp: d, mu_exp: None, expression }
        }
        (true, false) => {
            return Err(Error::ParityMismatch(format!("K({rtilde}) is a knot and K({r}) a link")));
        }
    };
    Ok(LongitudeImage {
        expression: if image.expression.is_empty() { "1".into() } else { image.expression.clone() },
        ..image
    })
}

/// Sign and middle-entry choices for one tower step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerParams {
    pub signs: Vec<i8>,
    /// Nonzero; the middle entries of the expansion are twice these.
    pub mids: Vec<i64>,
}

impl Default for TowerParams {
    fn default() -> Self {
        TowerParams { signs: vec![1, 1, 1], mids: vec![-1, -1] }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tower {
    pub slopes: Vec<Slope>,
    pub expansions: Vec<ContFrac>,
    /// `certificates[i]` exhibits `slopes[i + 1]` in the orbit of `slopes[i]`.
    pub certificates: Vec<OrbitCertificate>,
    pub alexander_degrees: Vec<usize>,
}

/// `[a_1, ..., a_m]` with checked arithmetic.
fn eval_checked(cf: &ContFrac) -> Result<Slope> {
    let overflow = || Error::Overflow("tower slope");
    let (mut x, mut y): (i128, i128) = (0, 1);
    for &a in cf.entries().iter().rev() {
        let next = i128::from(a).checked_mul(y).and_then(|v| v.checked_add(x)).ok_or_else(overflow)?;
        (x, y) = (y, next);
    }
    Slope::new(x, y)
}

/// A chain `r = s_0, s_1, ..., s_steps` of knots in which each `s_{i+1}`
/// has the expansion `[ε_1 a, 2m_1, ε_2 a⁻¹, ...]` built from the even
/// expansion `a` of `s_i`, so every step is certified and the Alexander
/// degree (the expansion length) strictly increases.
pub fn tower_generate(r: Slope, steps: usize, params: &TowerParams) -> Result<Tower> {
    let a = cf_even(r)?;
    if a.shift() != 0 || a.is_empty() {
        return Err(Error::BadExpansion(format!("{r} needs an even expansion without an integer part")));
    }
    if a.len() % 2 != 0 {
        return Err(Error::Unsupported(format!("K({r}) is a link; towers are built over knots")));
    }
    if params.signs.len().is_multiple_of(2) {
        return Err(Error::ParityMismatch(format!(
            "{} blocks over an even-length expansion give a link",
            params.signs.len()
        )));
    }
    if params.mids.contains(&0) {
        return Err(Error::BadExpansion("tower middle entries must be nonzero".into()));
    }
    let mut tower = Tower {
        slopes: vec![r],
        expansions: vec![a.clone()],
        certificates: Vec::new(),
        alexander_degrees: vec![alexander_from_even_cf(&a)?.span().unwrap_or(0)],
    };
    let mut current = a;
    for step in 0..steps {
        let cert = OrbitCertificate::from_pattern(&current, 0, &params.signs, &params.mids)?;
        let next = cert.continued_fraction()?;
        let slope = eval_checked(&next)?;
        let degree = alexander_from_even_cf(&next)?.span().unwrap_or(0);
        let previous = *tower.alexander_degrees.last().expect("nonempty");
        if degree <= previous {
            return Err(Error::TowerNotIncreasing { step, previous, next: degree });
        }
        tower.slopes.push(slope);
        tower.expansions.push(next.clone());
        tower.certificates.push(cert);
        tower.alexander_degrees.push(degree);
        current = next;
    }
    Ok(tower)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    CandidateVerified,
    NotCandidate,
    VerificationFailed,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::CandidateVerified => "CANDIDATE_VERIFIED",
            Status::NotCandidate => "NOT_CANDIDATE",
            Status::VerificationFailed => "VERIFICATION_FAILED",
        })
    }
}

/// Verdict of one verification layer.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Layer<T> {
    Pass { detail: T },
    Fail { detail: T },
    Skipped { reason: String },
}

impl<T> Layer<T> {
    pub fn failed(&self) -> bool {
        matches!(self, Layer::Fail { .. })
    }

    pub fn passed(&self) -> bool {
        matches!(self, Layer::Pass { .. })
    }

    fn judge(ok: bool, detail: T) -> Self {
        if ok {
            Layer::Pass { detail }
        } else {
            Layer::Fail { detail }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlexanderCheck {
    pub delta_rtilde: String,
    pub delta_r: String,
    pub divides: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpiOptions {
    /// Field orders for the `SL(2, F_q)` layer.
    pub fq_orders: Vec<u32>,
    pub sampling: SamplingOptions,
    /// Presentations with longer relators skip the presentation-based
    /// layers.
    pub max_relator_len: i128,
}

impl Default for EpiOptions {
    fn default() -> Self {
        EpiOptions { fq_orders: vec![3, 4, 5], sampling: SamplingOptions::default(), max_relator_len: 4000 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpiReport {
    pub schema_version: u32,
    pub rtilde: Slope,
    pub r: Slope,
    pub status: Status,
    pub candidate: CandidateReport,
    pub certificate: Option<OrbitCertificate>,
    pub map_plan: Option<MapPlan>,
    pub covering: Option<CoveringInfo>,
    pub meridian_mapping: Option<GeneratorMap>,
    pub longitude_image: Layer<LongitudeImage>,
    pub alexander_divides: Layer<AlexanderCheck>,
    pub finite_quotient_results: Vec<Layer<FiniteQuotientResult>>,
    pub charvar_containment: Layer<ContainmentReport>,
}

fn relator_len(s: Slope) -> i128 {
    if s.is_infinite() {
        0
    } else {
        2 * s.den()
    }
}

/// Runs every layer on the pair and aggregates the verdicts.
///
/// A negative candidate test yields `NOT_CANDIDATE`, which says only that
/// the orbit criterion does not apply. The finite-quotient layer still runs
/// on the given slopes so that a separating pair can be reported.
pub fn epi_report(rtilde: Slope, r: Slope, opts: &EpiOptions) -> Result<EpiReport> {
    let candidate = epi_candidate(rtilde, r)?;
    let knots = !rtilde.is_infinite() && !r.is_infinite() && components(rtilde) == 1 && components(r) == 1;
    let (rt_rep, r_rep) = match (candidate.rtilde_rep, candidate.r_rep) {
        (Some(a), Some(b)) => (a, b),
        _ => (rtilde, r),
    };
    let too_long = |s: Slope| relator_len(s) > opts.max_relator_len;

    let certificate = candidate.certificate().cloned();
    let map_plan = match &certificate {
        Some(c) if c.blocks > 0 => Some(build_map_plan(c)?),
        _ => None,
    };
    let covering = map_plan.as_ref().map(covering_info);
    let meridian_mapping = if candidate.orbit_candidate { Some(epi_generator_map(rtilde, r)?) } else { None };

    let longitude_image = match &map_plan {
        Some(plan) => match longitude_image(plan, rtilde, r, None) {
            Ok(img) => Layer::Pass { detail: img },
            Err(e) => Layer::Skipped { reason: e.to_string() },
        },
        None => Layer::Skipped { reason: "no map plan".into() },
    };

    let alexander_divides = if !candidate.orbit_candidate {
        Layer::Skipped { reason: "not a candidate".into() }
    } else if !knots {
        Layer::Skipped { reason: "Alexander divisibility is checked for knots".into() }
    } else if too_long(rt_rep) || too_long(r_rep) {
        Layer::Skipped { reason: "presentation too long".into() }
    } else {
        let (dt, d) = (alexander(rt_rep), alexander(r_rep));
        let ok = divides(&d, &dt);
        Layer::judge(ok, AlexanderCheck { delta_rtilde: dt.to_string(), delta_r: d.to_string(), divides: ok })
    };

    let mut finite_quotient_results = Vec::new();
    for &q in &opts.fq_orders {
        if too_long(rt_rep) || too_long(r_rep) {
            finite_quotient_results.push(Layer::Skipped { reason: format!("q={q}: presentation too long") });
            continue;
        }
        let group = Sl2::new(q)?;
        let res = finite_quotient_with(&group, q, rt_rep, r_rep, crate::invariants::MAX_PAIRS)?;
        finite_quotient_results.push(Layer::judge(res.holds, res));
    }

    let charvar_containment = if !candidate.orbit_candidate {
        Layer::Skipped { reason: "not a candidate".into() }
    } else if !knots {
        Layer::Skipped { reason: "character varieties are computed for knots".into() }
    } else if rt_rep.den() < 3 || r_rep.den() < 3 {
        Layer::Skipped { reason: "trivial knot".into() }
    } else if too_long(rt_rep) || too_long(r_rep) {
        Layer::Skipped { reason: "presentation too long".into() }
    } else {
        match contains_subvariety(rtilde, r, &opts.sampling) {
            Ok(rep) => Layer::judge(rep.pass, rep),
            Err(Error::Overflow(_)) => Layer::Skipped { reason: "coefficient overflow".into() },
            Err(e) => return Err(e),
        }
    };

    let status = if !candidate.orbit_candidate {
        Status::NotCandidate
    } else if alexander_divides.failed()
        || finite_quotient_results.iter().any(Layer::failed)
        || charvar_containment.failed()
        || longitude_image.failed()
    {
        Status::VerificationFailed
    } else {
        Status::CandidateVerified
    };

    Ok(EpiReport {
        schema_version: SCHEMA_VERSION,
        rtilde,
        r,
        status,
        candidate,
        certificate,
        map_plan,
        covering,
        meridian_mapping,
        longitude_image,
        alexander_divides,
        finite_quotient_results,
        charvar_containment,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey_action::Target;

    fn s(x: &str) -> Slope {
        x.parse().unwrap()
    }

    fn cf(e: &[i64]) -> ContFrac {
        ContFrac::new(e.to_vec())
    }

    #[test]
    fn plans() {
        let c = OrbitCertificate::from_pattern(&cf(&[2, 2]), 0, &[1, -1], &[1]).unwrap();
        assert_eq!(c.continued_fraction().unwrap(), cf(&[2, 2, 2, -2, -2]));
        let plan = build_map_plan(&c).unwrap();
        assert_eq!(plan.degree, 0);
        assert_eq!(plan.cdomains[0].kind, DomainKind::Mirror);
        assert_eq!((plan.branch_lines, plan.fold_spheres), (2, 1));

        let c = OrbitCertificate::from_pattern(&cf(&[3]), 0, &[1, 1, 1], &[1, 1]).unwrap();
        let plan = build_map_plan(&c).unwrap();
        assert_eq!(plan.degree, 3);
        assert!(plan.cdomains.iter().all(|d| d.kind == DomainKind::Rotation));
        assert_eq!((plan.branch_lines, plan.fold_spheres), (2, 0));
        let cov = covering_info(&plan);
        assert_eq!((cov.sheets, cov.kind), (Some(3), Some(CoveringKind::IrregularDihedral)));
        assert!(cov.readings_disagree);

        let single = OrbitCertificate::from_factors(&cf(&[3]), Target::R, &[(1, 0)]).unwrap();
        let plan = build_map_plan(&single).unwrap();
        assert_eq!((plan.degree, plan.cdomains.len()), (1, 0));
        assert!(build_map_plan(&OrbitCertificate::empty(&cf(&[3])).unwrap()).is_err());
    }

    #[test]
    fn coverings() {
        let two = build_map_plan(&OrbitCertificate::from_pattern(&cf(&[3]), 0, &[1, 1], &[2]).unwrap()).unwrap();
        assert_eq!(covering_info(&two).kind, Some(CoveringKind::Cyclic));
        let mixed = build_map_plan(&OrbitCertificate::from_pattern(&cf(&[3]), 0, &[1, -1], &[2]).unwrap()).unwrap();
        let info = covering_info(&mixed);
        assert!(!info.applicable);
        assert!(info.readings_disagree);
    }

    #[test]
    fn longitudes() {
        let c = OrbitCertificate::from_pattern(&cf(&[3]), 0, &[1, 1, 1], &[1, 1]).unwrap();
        let plan = build_map_plan(&c).unwrap();
        assert_eq!(longitude_image(&plan, s("1/9"), s("1/3"), None).unwrap().expression, "λ^3");
        let c = OrbitCertificate::from_pattern(&cf(&[2, 2]), 0, &[1, -1], &[1]).unwrap();
        let plan = build_map_plan(&c).unwrap();
        let img = longitude_image(&plan, s("21/50"), s("2/5"), None).unwrap();
        assert_eq!((img.case, img.expression.as_str()), (LongitudeCase::LinkToKnot, "μ^lk"));
        assert_eq!(longitude_image(&plan, s("21/50"), s("2/5"), Some(2)).unwrap().expression, "μ^2");
        let one = OrbitCertificate::from_factors(&cf(&[2]), Target::R, &[(1, 0)]).unwrap();
        let plan = build_map_plan(&one).unwrap();
        assert_eq!(longitude_image(&plan, s("1/2"), s("1/2"), None).unwrap().expression, "λ_j");
        assert!(matches!(longitude_image(&plan, s("1/4"), s("1/3"), None), Err(Error::ParityMismatch(_))));
    }

    #[test]
    fn towers() {
        let t = tower_generate(s("2/5"), 2, &TowerParams::default()).unwrap();
        assert_eq!(t.slopes.len(), 3);
        assert_eq!(t.alexander_degrees, vec![2, 8, 26]);
        assert!(t.slopes.iter().all(|&x| components(x) == 1));
        assert_eq!(tower_generate(s("2/5"), 0, &TowerParams::default()).unwrap().slopes, vec![s("2/5")]);
        let even = TowerParams { signs: vec![1, -1], mids: vec![1] };
        assert!(matches!(tower_generate(s("2/5"), 1, &even), Err(Error::ParityMismatch(_))));
        assert!(tower_generate(s("1/3"), 1, &TowerParams::default()).is_err());
    }

    #[test]
    fn reports() {
        let rep = epi_report(s("1/9"), s("1/3"), &EpiOptions::default()).unwrap();
        assert_eq!(rep.status, Status::CandidateVerified);
        assert_eq!(rep.map_plan.as_ref().unwrap().degree, 3);
        assert!(rep.alexander_divides.passed() && rep.charvar_containment.passed());

        let rep = epi_report(s("2/5"), s("1/3"), &EpiOptions::default()).unwrap();
        assert_eq!(rep.status, Status::NotCandidate);
        assert!(rep.finite_quotient_results.iter().any(|l| matches!(l, Layer::Fail { detail } if detail.witness.is_some())));

        let rep = epi_report(s("5/17"), s("5/17"), &EpiOptions::default()).unwrap();
        assert_eq!(rep.status, Status::CandidateVerified);
        assert_eq!(rep.map_plan.as_ref().map(|p| p.degree), Some(1));
    }
}
