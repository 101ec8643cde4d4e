//! Command implementations over a parsed problem file.

use std::sync::Arc;

use axtight_core::axes::{
    axes_closure_test, canonicalize, is_axes_presentation, valuative_membership, AxesDecision,
    AxesRing, AxesTestHom, ChangeOfVars, ValuativeOutcome,
};
use axtight_core::error::AlgebraError;
use axtight_core::field::FieldSpec;
use axtight_core::frobenius::{
    bracket_power, special_tight_membership, tight_membership, PrimePower, SpecialTightQuery,
    TightParams,
};
use axtight_core::poly::Ambient;
use axtight_core::reduction::{clear_denominators, fiber_sweep, reduce_mod_p, IntegralModel};
use axtight_core::ring::{validate_hom, RingHom, RingPresentation};
use axtight_core::{GroebnerConfig, Ideal, MonomialOrder, Polynomial};
use serde_json::{json, Value};

use crate::problem::{parse_order, ChangeBlock, HomBlock, ProblemFile, TargetSpec};
use crate::report;

/// A command failure: either bad input (exit code 1) or an exhausted
/// resource budget (exit code 2).
#[derive(Debug)]
pub enum CommandError {
    Input(String),
    Resource(String),
}

impl std::fmt::Display for CommandError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CommandError::Input(m) => write!(f, "input error: {m}"),
            CommandError::Resource(m) => write!(f, "resource exhausted: {m}"),
        }
    }
}

impl From<AlgebraError> for CommandError {
    fn from(e: AlgebraError) -> Self {
        if e.is_resource() {
            CommandError::Resource(e.to_string())
        } else {
            CommandError::Input(e.to_string())
        }
    }
}

pub type CommandResult = Result<Report, CommandError>;

/// The machine-readable result of one command: a verdict summary line plus
/// JSON detail. Timing is kept separate from the comparable fields.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub verdict: String,
    pub detail: Value,
    pub millis: u128,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "verdict": self.verdict,
            "detail": self.detail,
            "timing_ms": self.millis,
        })
    }
}

/// Effective knobs after merging command-line flags over file parameters.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub e_max: Option<u32>,
    pub c_deg: Option<u32>,
    pub q0_max: Option<u32>,
    pub primes: Option<Vec<u64>>,
    /// `(k, m)`: the first `k` primes congruent to 1 mod `m`, skipping the
    /// model's bad primes.
    pub auto_primes: Option<(usize, u64)>,
    pub order: Option<String>,
    pub budget: Option<usize>,
}

pub struct Context {
    pub problem: ProblemFile,
    pub order: MonomialOrder,
    pub cfg: GroebnerConfig,
    pub e_max: u32,
    pub c_deg: u32,
    pub q0_max: u32,
    pub primes: Option<Vec<u64>>,
    pub auto_primes: Option<(usize, u64)>,
}

impl Context {
    pub fn new(problem: ProblemFile, over: &Overrides) -> Result<Self, CommandError> {
        let order = match &over.order {
            Some(text) => parse_order(text, Some(&problem.vars))
                .map_err(CommandError::Input)?,
            None => problem
                .params
                .order
                .clone()
                .unwrap_or_default(),
        };
        order
            .validate(problem.vars.len())
            .map_err(|e| CommandError::Input(e.to_string()))?;
        let cfg = GroebnerConfig {
            max_pairs: over
                .budget
                .or(problem.params.budget)
                .unwrap_or_else(|| GroebnerConfig::default().max_pairs),
        };
        Ok(Context {
            e_max: over.e_max.or(problem.params.e_max).unwrap_or(4),
            c_deg: over.c_deg.or(problem.params.c_deg).unwrap_or(4),
            q0_max: over.q0_max.or(problem.params.q0_max).unwrap_or(1),
            primes: over.primes.clone().or_else(|| {
                // an auto-primes flag overrides a prime list from the file
                if over.auto_primes.is_some() {
                    None
                } else {
                    problem.params.primes.clone()
                }
            }),
            auto_primes: over.auto_primes,
            problem,
            order,
            cfg,
        })
    }

    pub fn ring(&self) -> Result<RingPresentation, CommandError> {
        let relations = Ideal::new(&self.problem.ambient, self.problem.relations.clone())?;
        Ok(RingPresentation::new(
            &self.problem.ambient,
            relations,
            &self.cfg,
        )?)
    }

    pub fn ideal(&self, name: &str) -> Result<Ideal, CommandError> {
        let gens = self
            .problem
            .ideal(name)
            .ok_or_else(|| CommandError::Input(format!("no ideal named `{name}`")))?;
        Ok(Ideal::new(&self.problem.ambient, gens.to_vec())?)
    }

    pub fn element(&self, name: &str) -> Result<Polynomial, CommandError> {
        self.problem
            .element(name)
            .cloned()
            .ok_or_else(|| CommandError::Input(format!("no element named `{name}`")))
    }

    fn characteristic(&self) -> Result<u64, CommandError> {
        match self.problem.field {
            FieldSpec::Prime(p) => Ok(p),
            FieldSpec::Rationals => Err(CommandError::Input(
                "this command needs a prime field".into(),
            )),
        }
    }

    pub fn tight_params(&self) -> TightParams {
        TightParams {
            e_max: self.e_max,
            c_degree: self.c_deg,
            ..TightParams::default()
        }
    }

    fn target_presentation(
        &self,
        block: &HomBlock,
    ) -> Result<RingPresentation, CommandError> {
        match &block.target {
            TargetSpec::Axes { vars } => {
                let axes = AxesRing::new(self.problem.field.clone(), vars.clone())?;
                Ok(axes.presentation(&self.cfg)?)
            }
            TargetSpec::Presented { vars, relations } => {
                let ambient = Ambient::new(vars.clone(), self.problem.field.clone());
                let ideal = Ideal::new(&ambient, relations.clone())?;
                Ok(RingPresentation::new(&ambient, ideal, &self.cfg)?)
            }
            TargetSpec::SelfRing => self.ring(),
        }
    }

    fn images_in_order(
        &self,
        block: &HomBlock,
        target: &Arc<Ambient>,
    ) -> Result<Vec<Polynomial>, CommandError> {
        self.problem
            .vars
            .iter()
            .map(|v| {
                block
                    .images
                    .iter()
                    .find(|(name, _)| name == v)
                    .map(|(_, img)| img.clone())
                    .ok_or_else(|| {
                        CommandError::Input(format!("hom is missing an image for `{v}`"))
                    })
            })
            .collect::<Result<Vec<_>, _>>()
            .inspect(|images| {
                debug_assert!(images.iter().all(|i| i.ambient() == target));
            })
    }

    fn change_of_vars(
        &self,
        change: &ChangeBlock,
        target: &RingPresentation,
    ) -> Result<ChangeOfVars, CommandError> {
        let axes = AxesRing::new(self.problem.field.clone(), change.axes_vars.clone())?;
        let axes_presentation = axes.presentation(&self.cfg)?;
        let to_images = target
            .ambient()
            .vars
            .iter()
            .map(|v| {
                change
                    .to_axes
                    .iter()
                    .find(|(name, _)| name == v)
                    .map(|(_, img)| img.clone())
                    .ok_or_else(|| {
                        CommandError::Input(format!("missing `to_axes` image for `{v}`"))
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let from_images = change
            .axes_vars
            .iter()
            .map(|v| {
                change
                    .from_axes
                    .iter()
                    .find(|(name, _)| name == v)
                    .map(|(_, img)| img.clone())
                    .ok_or_else(|| {
                        CommandError::Input(format!("missing `from_axes` image for `{v}`"))
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ChangeOfVars {
            to_axes: RingHom {
                source: target.clone(),
                target: axes_presentation.clone(),
                images: to_images,
            },
            from_axes: RingHom {
                source: axes_presentation,
                target: target.clone(),
                images: from_images,
            },
        })
    }

    /// Builds and validates one named hom as an axes-closure test input.
    pub fn axes_test_hom(&self, name: &str) -> Result<AxesTestHom, CommandError> {
        let block = self
            .problem
            .hom(name)
            .ok_or_else(|| CommandError::Input(format!("no hom named `{name}`")))?;
        if block.target == TargetSpec::SelfRing {
            return Err(CommandError::Input(format!(
                "hom `{name}` has no target and cannot be applied"
            )));
        }
        let source = self.ring()?;
        let target = self.target_presentation(block)?;
        let images = self.images_in_order(block, target.ambient())?;
        let hom = validate_hom(
            RingHom {
                source,
                target: target.clone(),
                images,
            },
            &self.order,
            &self.cfg,
        )?;
        let change = block
            .change
            .as_ref()
            .map(|c| self.change_of_vars(c, &target))
            .transpose()?;
        Ok(AxesTestHom {
            label: name.to_string(),
            hom,
            change,
        })
    }

    pub fn integral_model(
        &self,
        ideal_name: &str,
        element_name: &str,
    ) -> Result<IntegralModel, CommandError> {
        let ideal = self
            .problem
            .ideal(ideal_name)
            .ok_or_else(|| CommandError::Input(format!("no ideal named `{ideal_name}`")))?;
        let element = self.element(element_name)?;
        Ok(clear_denominators(
            &self.problem.relations,
            ideal,
            &element,
            &self.order,
        )?)
    }

    /// Explicit primes win; otherwise `--auto-primes k,m` derives them from
    /// the model's bad primes.
    pub fn primes_for_model(&self, model: &IntegralModel) -> Result<Vec<u64>, CommandError> {
        if let Some(primes) = &self.primes {
            return Ok(primes.clone());
        }
        if let Some((k, m)) = self.auto_primes {
            if m == 0 {
                return Err(CommandError::Input("auto-primes modulus must be positive".into()));
            }
            return Ok(axtight_core::reduction::lucky_prime_candidates(
                k,
                m,
                &model.bad_primes,
            ));
        }
        Err(CommandError::Input(
            "no primes given (use --primes, --auto-primes, or a params entry)".into(),
        ))
    }
}

fn timed<T>(f: impl FnOnce() -> Result<T, CommandError>) -> Result<(T, u128), CommandError> {
    let start = std::time::Instant::now();
    let value = f()?;
    Ok((value, start.elapsed().as_millis()))
}

pub fn cmd_gb(ctx: &Context, ideal: Option<&str>) -> CommandResult {
    let ((basis, label), millis) = timed(|| {
        let gens = match ideal {
            None => ctx.problem.relations.clone(),
            Some(name) => {
                let mut gens = ctx
                    .problem
                    .ideal(name)
                    .ok_or_else(|| CommandError::Input(format!("no ideal named `{name}`")))?
                    .to_vec();
                gens.extend(ctx.problem.relations.iter().cloned());
                gens
            }
        };
        let ideal_obj = Ideal::new(&ctx.problem.ambient, gens)?;
        let basis = ideal_obj.groebner(&ctx.order, &ctx.cfg)?;
        Ok((basis, ideal.unwrap_or("relations").to_string()))
    })?;
    Ok(Report {
        command: "gb",
        verdict: format!("Basis({} elements)", basis.len()),
        detail: json!({
            "ideal": label,
            "basis": basis.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        }),
        millis,
    })
}

pub fn cmd_member(ctx: &Context, ideal: &str, element: &str) -> CommandResult {
    let (result, millis) = timed(|| {
        let ring = ctx.ring()?;
        let ideal = ctx.ideal(ideal)?;
        let f = ctx.element(element)?;
        Ok(ring.ideal_membership_witnessed(&f, &ideal, &ctx.order, &ctx.cfg)?)
    })?;
    Ok(Report {
        command: "member",
        verdict: if result.member { "Member" } else { "NonMember" }.into(),
        detail: json!({
            "member": result.member,
            "witness": result.witness.map(|w| {
                w.iter().map(|h| h.to_string()).collect::<Vec<_>>()
            }),
        }),
        millis,
    })
}

pub fn cmd_bracket(ctx: &Context, ideal: &str, e: u32) -> CommandResult {
    let ((q, bracket), millis) = timed(|| {
        let p = ctx.characteristic()?;
        let q = PrimePower::new(p, e)?;
        let ideal = ctx.ideal(ideal)?;
        Ok((q, bracket_power(&ideal, q)?))
    })?;
    Ok(Report {
        command: "bracket",
        verdict: format!("Bracket(q={}, {} generators)", q.q, bracket.gens().len()),
        detail: json!({
            "q": q.q,
            "generators": bracket.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        }),
        millis,
    })
}

pub fn cmd_tight(ctx: &Context, ideal: &str, element: &str) -> CommandResult {
    let (verdict, millis) = timed(|| {
        let ring = ctx.ring()?;
        let ideal = ctx.ideal(ideal)?;
        let f = ctx.element(element)?;
        Ok(tight_membership(
            &ring,
            &ideal,
            &f,
            &ctx.tight_params(),
            &ctx.order,
            &ctx.cfg,
        )?)
    })?;
    Ok(Report {
        command: "tight",
        verdict: report::tight_summary(&verdict),
        detail: report::tight_detail(&verdict),
        millis,
    })
}

pub fn cmd_special_tight(
    ctx: &Context,
    ideal: &str,
    maximal: &str,
    element: &str,
) -> CommandResult {
    let (verdict, millis) = timed(|| {
        let ring = ctx.ring()?;
        let ideal = ctx.ideal(ideal)?;
        let maximal = ctx.ideal(maximal)?;
        let f = ctx.element(element)?;
        let query = SpecialTightQuery {
            maximal_ideal: maximal,
            q0_e_max: ctx.q0_max,
            inner: ctx.tight_params(),
        };
        Ok(special_tight_membership(
            &ring, &query, &ideal, &f, &ctx.order, &ctx.cfg,
        )?)
    })?;
    Ok(Report {
        command: "special-tight",
        verdict: report::special_summary(&verdict),
        detail: report::special_detail(&verdict),
        millis,
    })
}

pub fn cmd_is_axes(ctx: &Context, via: Option<&str>) -> CommandResult {
    let (decision, millis) = timed(|| {
        let ring = ctx.ring()?;
        let change = match via {
            None => None,
            Some(name) => {
                let block = ctx
                    .problem
                    .hom(name)
                    .ok_or_else(|| CommandError::Input(format!("no hom named `{name}`")))?;
                if block.target != TargetSpec::SelfRing {
                    return Err(CommandError::Input(format!(
                        "hom `{name}` has a target; `is-axes --via` expects a change block \
                         for the problem ring itself"
                    )));
                }
                let change_block = block.change.as_ref().ok_or_else(|| {
                    CommandError::Input(format!("hom `{name}` has no change-of-variables block"))
                })?;
                Some(ctx.change_of_vars(change_block, &ring)?)
            }
        };
        Ok(is_axes_presentation(
            &ring,
            change.as_ref(),
            &ctx.order,
            &ctx.cfg,
        )?)
    })?;
    let (verdict, detail) = match decision {
        AxesDecision::Accepted { ring, .. } => (
            format!("AxesRing(branches={})", ring.branches()),
            json!({
                "accepted": true,
                "branches": ring.branches(),
                "branch_vars": ring.ambient().vars.clone(),
            }),
        ),
        AxesDecision::Rejected { reason } => (
            "NotAxes".to_string(),
            json!({ "accepted": false, "reason": reason }),
        ),
    };
    Ok(Report {
        command: "is-axes",
        verdict,
        detail,
        millis,
    })
}

pub fn cmd_axes_member(ctx: &Context, ideal: &str, element: &str) -> CommandResult {
    let ((outcome, axes), millis) = timed(|| {
        let ring = ctx.ring()?;
        let axes = match is_axes_presentation(&ring, None, &ctx.order, &ctx.cfg)? {
            AxesDecision::Accepted { ring, .. } => ring,
            AxesDecision::Rejected { reason } => {
                return Err(CommandError::Input(format!(
                    "the problem ring is not a canonical axes ring: {reason}"
                )))
            }
        };
        let gens = ctx
            .problem
            .ideal(ideal)
            .ok_or_else(|| CommandError::Input(format!("no ideal named `{ideal}`")))?
            .iter()
            .map(|g| Ok(canonicalize(g, &axes)?))
            .collect::<Result<Vec<_>, CommandError>>()?;
        let f = canonicalize(&ctx.element(element)?, &axes)?;
        let outcome = valuative_membership(&f, &gens, &axes, &ctx.order, &ctx.cfg)?;
        Ok((outcome, axes))
    })?;
    let branch_vars = &axes.ambient().vars;
    let detail = match &outcome {
        ValuativeOutcome::MemberWithWitness { cofactors } => json!({
            "kind": "member_with_witness",
            "cofactors": cofactors.iter().map(|c| c.render(&axes)).collect::<Vec<_>>(),
        }),
        ValuativeOutcome::NonMemberAtBranch { branch } => json!({
            "kind": "non_member_at_branch",
            "branch": branch_vars[*branch],
        }),
        ValuativeOutcome::BoundaryFallback { member, reason } => json!({
            "kind": "boundary_fallback",
            "member": member,
            "method": report::fallback_reason_tag(*reason),
        }),
    };
    Ok(Report {
        command: "axes-member",
        verdict: report::valuative_summary(&outcome, branch_vars),
        detail,
        millis,
    })
}

pub fn cmd_axes_test(
    ctx: &Context,
    ideal: &str,
    element: &str,
    homs: Option<&str>,
) -> CommandResult {
    let (test_report, millis) = timed(|| {
        let ring = ctx.ring()?;
        let ideal = ctx.ideal(ideal)?;
        let f = ctx.element(element)?;
        let names: Vec<String> = match homs {
            Some(csv) => csv.split(',').map(|s| s.trim().to_string()).collect(),
            None => ctx
                .problem
                .homs
                .iter()
                .filter(|(_, block)| block.target != TargetSpec::SelfRing)
                .map(|(n, _)| n.clone())
                .collect(),
        };
        if names.is_empty() {
            return Err(CommandError::Input(
                "no applicable homs in the problem file".into(),
            ));
        }
        let tests = names
            .iter()
            .map(|n| ctx.axes_test_hom(n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(axes_closure_test(
            &ring, &ideal, &f, &tests, &ctx.order, &ctx.cfg,
        )?)
    })?;
    Ok(Report {
        command: "axes-test",
        verdict: report::axes_test_summary(&test_report),
        detail: json!({
            "per_hom": test_report.per_hom.iter().map(|h| json!({
                "hom": h.label,
                "branches": h.branches,
                "member": h.member,
            })).collect::<Vec<_>>(),
            "note": "passing all supplied tests is evidence, not a membership proof",
        }),
        millis,
    })
}

pub fn cmd_reduce(ctx: &Context, ideal: &str, element: &str) -> CommandResult {
    let ((model, rows), millis) = timed(|| {
        let model = ctx.integral_model(ideal, element)?;
        let primes = ctx.primes_for_model(&model)?;
        let mut rows = Vec::new();
        for p in primes {
            if model.bad_primes.contains(&p) {
                rows.push(json!({ "p": p, "status": "bad-prime" }));
                continue;
            }
            let fiber = reduce_mod_p(&model, p, &ctx.order, &ctx.cfg)?;
            rows.push(json!({
                "p": p,
                "status": report::luckiness_tag(&fiber.luckiness),
                "relations": fiber.ring.relations().gens().iter()
                    .map(|g| g.to_string()).collect::<Vec<_>>(),
                "ideal": fiber.ideal.gens().iter()
                    .map(|g| g.to_string()).collect::<Vec<_>>(),
                "element": fiber.element.to_string(),
            }));
        }
        Ok((model, rows))
    })?;
    let lucky = rows
        .iter()
        .filter(|r| r["status"] == "lucky")
        .count();
    Ok(Report {
        command: "reduce",
        verdict: format!("Reduced({} fibers, {} lucky)", rows.len(), lucky),
        detail: json!({
            "bad_primes": model.bad_primes.iter().copied().collect::<Vec<_>>(),
            "fibers": rows,
        }),
        millis,
    })
}

pub fn cmd_sweep(ctx: &Context, ideal: &str, element: &str) -> CommandResult {
    let (sweep, millis) = timed(|| {
        let model = ctx.integral_model(ideal, element)?;
        let primes = ctx.primes_for_model(&model)?;
        Ok(fiber_sweep(
            &model,
            &primes,
            &ctx.tight_params(),
            &ctx.order,
            &ctx.cfg,
        )?)
    })?;
    Ok(Report {
        command: "sweep",
        verdict: report::sweep_summary(&sweep),
        detail: report::sweep_detail(&sweep),
        millis,
    })
}
