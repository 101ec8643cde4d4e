//! The bundled example corpus: each case runs one command on one of the
//! shipped problem files and compares the verdict line against a frozen
//! expectation. Two consecutive runs produce byte-identical reports; timing
//! goes to standard error only.

use rayon::prelude::*;

use crate::commands::{self, CommandError, Context, Overrides};
use crate::problem::parse_problem;

#[derive(Debug, Clone)]
pub enum Invocation {
    Tight { ideal: &'static str, element: &'static str },
    SpecialTight {
        ideal: &'static str,
        maximal: &'static str,
        element: &'static str,
    },
    Member { ideal: &'static str, element: &'static str },
    AxesTest { ideal: &'static str, element: &'static str },
    AxesMember { ideal: &'static str, element: &'static str },
    IsAxes { via: Option<&'static str> },
    Sweep { ideal: &'static str, element: &'static str },
}

pub struct CorpusCase {
    pub id: &'static str,
    /// What the case demonstrates, and whether the ring is normal (the
    /// normal cases with membership-kind tight verdicts are the ones the
    /// closure-inclusion check quantifies over).
    pub note: &'static str,
    pub ring_is_normal: bool,
    pub file: &'static str,
    pub invocation: Invocation,
    pub expected: &'static str,
}

pub fn cases() -> Vec<CorpusCase> {
    use Invocation::*;
    vec![
        CorpusCase {
            id: "cusp-tight-f5",
            note: "nonnormal surface: X certified inside (Z)* with c = X",
            ring_is_normal: false,
            file: include_str!("../problems/intro_cusp_f5.prob"),
            invocation: Tight { ideal: "I", element: "f" },
            expected: "BoundedCertified(c=X, e=1..4)",
        },
        CorpusCase {
            id: "cusp-tight-f7",
            note: "nonnormal surface over F_7",
            ring_is_normal: false,
            file: include_str!("../problems/intro_cusp_f7.prob"),
            invocation: Tight { ideal: "I", element: "f" },
            expected: "BoundedCertified(c=X, e=1..4)",
        },
        CorpusCase {
            id: "cusp-axes-f5",
            note: "the two-lines quotient refutes X from the axes closure",
            ring_is_normal: false,
            file: include_str!("../problems/intro_cusp_f5.prob"),
            invocation: AxesTest { ideal: "I", element: "f" },
            expected: "Refuted(hom=two_lines)",
        },
        CorpusCase {
            id: "cusp-axes-f7",
            note: "axes refutation over F_7",
            ring_is_normal: false,
            file: include_str!("../problems/intro_cusp_f7.prob"),
            invocation: AxesTest { ideal: "I", element: "f" },
            expected: "Refuted(hom=two_lines)",
        },
        CorpusCase {
            id: "regular-negative-f5",
            note: "regular ring: X^2*Y^2 outside (X^3, Y^3)* exactly",
            ring_is_normal: true,
            file: include_str!("../problems/regular_f5.prob"),
            invocation: Tight { ideal: "cubes", element: "g" },
            expected: "ExactNonMember",
        },
        CorpusCase {
            id: "regular-negative-f7",
            note: "regular-ring control over F_7",
            ring_is_normal: true,
            file: include_str!("../problems/regular_f7.prob"),
            invocation: Tight { ideal: "cubes", element: "g" },
            expected: "ExactNonMember",
        },
        CorpusCase {
            id: "regular-negative-q",
            note: "regular-ring control over the rationals",
            ring_is_normal: true,
            file: include_str!("../problems/regular_q.prob"),
            invocation: Tight { ideal: "cubes", element: "g" },
            expected: "ExactNonMember",
        },
        CorpusCase {
            id: "fermat-tight-z2",
            note: "Fermat cubic: Z^2 certified inside (X, Y)*",
            ring_is_normal: true,
            file: include_str!("../problems/fermat_f7.prob"),
            invocation: Tight { ideal: "I", element: "z2" },
            expected: "BoundedCertified(c=X, e=1..3)",
        },
        CorpusCase {
            id: "fermat-tight-z",
            note: "Fermat cubic: the search finds nothing for Z at the same bounds",
            ring_is_normal: true,
            file: include_str!("../problems/fermat_f7.prob"),
            invocation: Tight { ideal: "I", element: "z" },
            expected: "InconclusiveNegative(e_max=3, c_deg=4, candidates=35)",
        },
        CorpusCase {
            id: "fermat-axes-z",
            note: "roots-of-unity map refutes Z from the axes closure",
            ring_is_normal: true,
            file: include_str!("../problems/fermat_f7.prob"),
            invocation: AxesTest { ideal: "I", element: "z" },
            expected: "Refuted(hom=xi)",
        },
        CorpusCase {
            id: "fermat-axes-member",
            note: "plain members pass every axes test",
            ring_is_normal: true,
            file: include_str!("../problems/fermat_f7.prob"),
            invocation: AxesTest { ideal: "I", element: "x" },
            expected: "PassedAllTests",
        },
        CorpusCase {
            id: "cross-member-deep",
            note: "valuative criterion with constructed witness",
            ring_is_normal: false,
            file: include_str!("../problems/axes_pair_q.prob"),
            invocation: AxesMember { ideal: "deep", element: "inside" },
            expected: "MemberWithWitness",
        },
        CorpusCase {
            id: "cross-member-boundary",
            note: "equal valuations force the exact fallback; shared-constant obstruction",
            ring_is_normal: false,
            file: include_str!("../problems/axes_pair_q.prob"),
            invocation: AxesMember { ideal: "deep", element: "diagonal" },
            expected: "BoundaryFallback(nonmember)",
        },
        CorpusCase {
            id: "cross-member-shallow",
            note: "valuation below the ideal valuation refutes at branch 1",
            ring_is_normal: false,
            file: include_str!("../problems/axes_pair_q.prob"),
            invocation: AxesMember { ideal: "offset", element: "shallow" },
            expected: "NonMemberAtBranch(X1)",
        },
        CorpusCase {
            id: "cross-is-axes",
            note: "the coordinate cross is accepted as presented",
            ring_is_normal: false,
            file: include_str!("../problems/axes_pair_q.prob"),
            invocation: IsAxes { via: None },
            expected: "AxesRing(branches=2)",
        },
        CorpusCase {
            id: "two-lines-via-change",
            note: "X^2 = Z^2 becomes the coordinate cross after a change of variables",
            ring_is_normal: false,
            file: include_str!("../problems/two_lines_f5.prob"),
            invocation: IsAxes { via: Some("cv") },
            expected: "AxesRing(branches=2)",
        },
        CorpusCase {
            id: "two-lines-raw",
            note: "without the change of variables the presentation is rejected",
            ring_is_normal: false,
            file: include_str!("../problems/two_lines_f5.prob"),
            invocation: IsAxes { via: None },
            expected: "NotAxes",
        },
        CorpusCase {
            id: "three-lines-reject",
            note: "three concurrent coplanar lines are not transversal axes",
            ring_is_normal: false,
            file: include_str!("../problems/three_lines_f7.prob"),
            invocation: IsAxes { via: None },
            expected: "NotAxes",
        },
        CorpusCase {
            id: "three-lines-nonmember",
            note: "Z^2 outside (X) there, by exact membership",
            ring_is_normal: false,
            file: include_str!("../problems/three_lines_f7.prob"),
            invocation: Member { ideal: "I", element: "z2" },
            expected: "NonMember",
        },
        CorpusCase {
            id: "special-certified",
            note: "X*Y enters m*(X) exactly at q0 = 1",
            ring_is_normal: true,
            file: include_str!("../problems/special_f5.prob"),
            invocation: SpecialTight { ideal: "I", maximal: "m", element: "f" },
            expected: "SpecialCertified(q0=1, ExactMember)",
        },
        CorpusCase {
            id: "special-negative",
            note: "X itself never enters, exactly, at the attempted exponents",
            ring_is_normal: true,
            file: include_str!("../problems/special_f5.prob"),
            invocation: SpecialTight { ideal: "I", maximal: "m", element: "g" },
            expected: "SpecialInconclusive(q0_max=5)",
        },
        CorpusCase {
            id: "unibranch-remark-tight",
            note: "X^2 = (W+1)*Z^2 puts X tightly inside (Z), multiplier X",
            ring_is_normal: false,
            file: include_str!("../problems/remark_f5.prob"),
            invocation: Tight { ideal: "I", element: "f" },
            expected: "BoundedCertified(c=X, e=1..4)",
        },
        CorpusCase {
            id: "fermat-sweep",
            note: "rational Fermat cubic certifies in every lucky fiber",
            ring_is_normal: true,
            file: include_str!("../problems/fermat_q.prob"),
            invocation: Sweep { ideal: "I", element: "z2" },
            expected: "CertifiedInAllLuckyFibers",
        },
        CorpusCase {
            id: "regular-sweep",
            note: "rational regular control is exactly negative in every fiber",
            ring_is_normal: true,
            file: include_str!("../problems/regular_sweep_q.prob"),
            invocation: Sweep { ideal: "cubes", element: "g" },
            expected: "ExactNegative",
        },
    ]
}

fn run_case(case: &CorpusCase) -> Result<commands::Report, CommandError> {
    let problem =
        parse_problem(case.file).map_err(|e| CommandError::Input(e.to_string()))?;
    let ctx = Context::new(problem, &Overrides::default())?;
    match &case.invocation {
        Invocation::Tight { ideal, element } => commands::cmd_tight(&ctx, ideal, element),
        Invocation::SpecialTight {
            ideal,
            maximal,
            element,
        } => commands::cmd_special_tight(&ctx, ideal, maximal, element),
        Invocation::Member { ideal, element } => commands::cmd_member(&ctx, ideal, element),
        Invocation::AxesTest { ideal, element } => {
            commands::cmd_axes_test(&ctx, ideal, element, None)
        }
        Invocation::AxesMember { ideal, element } => {
            commands::cmd_axes_member(&ctx, ideal, element)
        }
        Invocation::IsAxes { via } => commands::cmd_is_axes(&ctx, *via),
        Invocation::Sweep { ideal, element } => commands::cmd_sweep(&ctx, ideal, element),
    }
}

pub struct CorpusOutcome {
    pub lines: Vec<String>,
    pub timing_lines: Vec<String>,
    pub passed: usize,
    pub total: usize,
}

/// Runs the corpus (optionally filtered by a case-id substring). Cases run
/// in parallel; the report is assembled in case order. `corrupt` flips the
/// expectation of one case, for exercising the failure path.
pub fn run_corpus(filter: Option<&str>, corrupt: Option<&str>) -> CorpusOutcome {
    let mut selected: Vec<CorpusCase> = cases()
        .into_iter()
        .filter(|c| filter.map(|f| c.id.contains(f)).unwrap_or(true))
        .collect();
    selected.sort_by_key(|c| c.id);
    let results: Vec<(String, String, u128)> = selected
        .par_iter()
        .map(|case| {
            let expected = match corrupt {
                Some(id) if id == case.id => "CORRUPTED-EXPECTATION".to_string(),
                _ => case.expected.to_string(),
            };
            match run_case(case) {
                Ok(report) => (expected, report.verdict, report.millis),
                Err(e) => (expected, format!("ERROR({e})"), 0),
            }
        })
        .collect();
    let mut lines = Vec::new();
    let mut timing_lines = Vec::new();
    let mut passed = 0;
    for (case, (expected, actual, millis)) in selected.iter().zip(&results) {
        let ok = expected == actual;
        if ok {
            passed += 1;
        }
        lines.push(format!(
            "CASE {}: expected={} actual={} -> {}",
            case.id,
            expected,
            actual,
            if ok { "PASS" } else { "FAIL" }
        ));
        timing_lines.push(format!("# timing {} {} ms", case.id, millis));
    }
    lines.push(format!("corpus: {}/{} passed", passed, selected.len()));
    CorpusOutcome {
        lines,
        timing_lines,
        passed,
        total: selected.len(),
    }
}
