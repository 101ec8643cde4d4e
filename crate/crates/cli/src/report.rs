//! Report rendering: deterministic one-line verdict summaries plus JSON
//! detail. Verdict and evidence are kept in separate fields so bounded
//! verdicts cannot be misread as theorems.

use axtight_core::axes::{
    AxesTestReport, AxesTestVerdict, FallbackReason, ValuativeOutcome,
};
use axtight_core::frobenius::{SpecialVerdict, TightVerdict};
use axtight_core::reduction::{Luckiness, SweepAggregate, SweepReport};
use serde_json::{json, Value};

pub fn tight_summary(v: &TightVerdict) -> String {
    match v {
        TightVerdict::ExactMember => "ExactMember".into(),
        TightVerdict::ExactNonMember => "ExactNonMember".into(),
        TightVerdict::BoundedCertified(cert) => format!(
            "BoundedCertified(c={}, e={}..{})",
            cert.c, cert.e_checked.0, cert.e_checked.1
        ),
        TightVerdict::InconclusiveNegative {
            e_max,
            c_degree,
            candidates_tried,
        } => format!(
            "InconclusiveNegative(e_max={e_max}, c_deg={c_degree}, candidates={candidates_tried})"
        ),
    }
}

pub fn tight_detail(v: &TightVerdict) -> Value {
    match v {
        TightVerdict::BoundedCertified(cert) => json!({
            "kind": "bounded_certified",
            "certificate": cert.c.to_string(),
            "e_range": [cert.e_checked.0, cert.e_checked.1],
            "checks": cert.per_e_log.iter().map(|c| json!({
                "e": c.e,
                "q": c.q,
                "member": c.member,
                "millis": c.millis,
            })).collect::<Vec<_>>(),
        }),
        TightVerdict::ExactMember => json!({ "kind": "exact_member" }),
        TightVerdict::ExactNonMember => json!({ "kind": "exact_non_member" }),
        TightVerdict::InconclusiveNegative {
            e_max,
            c_degree,
            candidates_tried,
        } => json!({
            "kind": "inconclusive_negative",
            "e_max": e_max,
            "c_deg": c_degree,
            "candidates_tried": candidates_tried,
        }),
    }
}

pub fn special_summary(v: &SpecialVerdict) -> String {
    match v.q0 {
        Some(q0) => format!("SpecialCertified(q0={}, {})", q0.q, tight_summary(&v.verdict)),
        None => {
            let max_q0 = v.attempts.last().map(|(q, _)| q.q).unwrap_or(1);
            format!("SpecialInconclusive(q0_max={max_q0})")
        }
    }
}

pub fn special_detail(v: &SpecialVerdict) -> Value {
    json!({
        "q0": v.q0.map(|q| q.q),
        "attempts": v.attempts.iter().map(|(q, verdict)| json!({
            "q0": q.q,
            "verdict": tight_summary(verdict),
            "detail": tight_detail(verdict),
        })).collect::<Vec<_>>(),
    })
}

pub fn valuative_summary(outcome: &ValuativeOutcome, branch_vars: &[String]) -> String {
    match outcome {
        ValuativeOutcome::MemberWithWitness { .. } => "MemberWithWitness".into(),
        ValuativeOutcome::NonMemberAtBranch { branch } => {
            format!("NonMemberAtBranch({})", branch_vars[*branch])
        }
        ValuativeOutcome::BoundaryFallback { member, .. } => {
            if *member {
                "BoundaryFallback(member)".into()
            } else {
                "BoundaryFallback(nonmember)".into()
            }
        }
    }
}

pub fn fallback_reason_tag(reason: FallbackReason) -> &'static str {
    match reason {
        FallbackReason::BoundaryTie => "boundary-tie",
        FallbackReason::WitnessSolveFailed => "witness-solve-failed",
    }
}

pub fn axes_test_summary(report: &AxesTestReport) -> String {
    match &report.verdict {
        AxesTestVerdict::Refuted { hom } => format!("Refuted(hom={hom})"),
        AxesTestVerdict::PassedAllTests => "PassedAllTests".into(),
    }
}

pub fn luckiness_tag(l: &Luckiness) -> &'static str {
    match l {
        Luckiness::Lucky => "lucky",
        Luckiness::StaircaseChanged => "staircase-changed",
        Luckiness::BasisDenominator => "basis-denominator",
    }
}

pub fn sweep_summary(report: &SweepReport) -> String {
    match report.aggregate {
        SweepAggregate::CertifiedInAllLuckyFibers => "CertifiedInAllLuckyFibers".into(),
        SweepAggregate::ExactNegative => "ExactNegative".into(),
        SweepAggregate::Mixed => "Mixed".into(),
    }
}

pub fn sweep_detail(report: &SweepReport) -> Value {
    json!({
        "fibers": report.fibers.iter().map(|f| json!({
            "p": f.p,
            "lucky": f.lucky,
            "luckiness": luckiness_tag(&f.luckiness),
            "verdict": f.verdict.as_ref().map(tight_summary),
            "certificate": f.verdict.as_ref().and_then(|v| match v {
                TightVerdict::BoundedCertified(cert) => Some(cert.c.to_string()),
                _ => None,
            }),
            "millis": f.millis,
        })).collect::<Vec<_>>(),
    })
}
