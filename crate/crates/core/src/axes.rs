//! Axes rings `L[X_1..X_n]/(X_i X_j, i≠j)`, branch valuations, the valuative
//! membership criterion with constructive witnesses, and axes-closure testing
//! through validated homomorphisms.
//!
//! Axes rings are represented exactly in canonical polynomial form, not as
//! completions. The valuative criterion is applied to the polynomial model;
//! whenever its witness construction does not go through in polynomials, the
//! decision falls back to exact Gröbner membership, so every answer is exact.

use std::fmt;
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::field::{Coeff, FieldSpec};
use crate::groebner::GroebnerConfig;
use crate::ideal::Ideal;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{same_ambient, Ambient, Polynomial};
use crate::ring::{validate_hom, RingHom, RingPresentation, ValidatedHom};

/// The canonical axes ring on `n ≥ 1` named branch variables: the relation
/// ideal is exactly the set of pairwise products, so the embedding dimension
/// equals the number of branches (the branches meet transversally).
#[derive(Debug, Clone, PartialEq)]
pub struct AxesRing {
    ambient: Arc<Ambient>,
}

impl AxesRing {
    pub fn new(field: FieldSpec, branch_vars: Vec<String>) -> Result<Self, AlgebraError> {
        if branch_vars.is_empty() {
            return Err(AlgebraError::InvalidInput(
                "an axes ring needs at least one branch".into(),
            ));
        }
        for (i, v) in branch_vars.iter().enumerate() {
            if branch_vars[..i].contains(v) {
                return Err(AlgebraError::InvalidInput(format!(
                    "duplicate branch variable `{v}`"
                )));
            }
        }
        Ok(AxesRing {
            ambient: Ambient::new(branch_vars, field),
        })
    }

    pub fn branches(&self) -> usize {
        self.ambient.arity()
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn field(&self) -> &FieldSpec {
        &self.ambient.field
    }

    /// The pairwise products `X_i X_j`, `i < j`.
    pub fn relation_gens(&self) -> Vec<Polynomial> {
        let n = self.branches();
        let mut gens = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let m = Monomial::var(n, i).mul(&Monomial::var(n, j));
                gens.push(Polynomial::monomial(
                    &self.ambient,
                    m,
                    self.ambient.field.one(),
                ));
            }
        }
        gens
    }

    pub fn presentation(&self, cfg: &GroebnerConfig) -> Result<RingPresentation, AlgebraError> {
        let relations = Ideal::new(&self.ambient, self.relation_gens())?;
        RingPresentation::new(&self.ambient, relations, cfg)
    }
}

/// Canonical form of an element of an axes ring: a shared constant plus one
/// constant-free univariate polynomial per branch. Branch polynomials are
/// sparse `(exponent ≥ 1, coefficient)` lists, ascending by exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct AxesElement {
    pub constant: Coeff,
    pub branch_parts: Vec<Vec<(u32, Coeff)>>,
}

impl AxesElement {
    pub fn zero(ring: &AxesRing) -> Self {
        AxesElement {
            constant: ring.field().zero(),
            branch_parts: vec![Vec::new(); ring.branches()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.branch_parts.iter().all(|b| b.is_empty())
    }

    /// Unit test in the complete local model, where the units are exactly the
    /// elements with nonzero shared constant. (In the polynomial model such an
    /// element need not be invertible; membership decisions stay exact through
    /// the Gröbner fallback.)
    pub fn is_unit(&self) -> bool {
        !self.constant.is_zero()
    }

    pub fn to_polynomial(&self, ring: &AxesRing) -> Polynomial {
        let n = ring.branches();
        let mut terms = vec![(Monomial::one(n), self.constant.clone())];
        for (i, branch) in self.branch_parts.iter().enumerate() {
            for (e, c) in branch {
                terms.push((Monomial::var(n, i).pow(*e), c.clone()));
            }
        }
        Polynomial::from_terms(ring.ambient(), terms)
    }

    pub fn add(&self, other: &AxesElement, ring: &AxesRing) -> AxesElement {
        let field = ring.field();
        let branch_parts = self
            .branch_parts
            .iter()
            .zip(&other.branch_parts)
            .map(|(a, b)| uni_add(a, b, field))
            .collect();
        AxesElement {
            constant: field.add(&self.constant, &other.constant),
            branch_parts,
        }
    }

    pub fn neg(&self, ring: &AxesRing) -> AxesElement {
        let field = ring.field();
        AxesElement {
            constant: field.neg(&self.constant),
            branch_parts: self
                .branch_parts
                .iter()
                .map(|b| b.iter().map(|(e, c)| (*e, field.neg(c))).collect())
                .collect(),
        }
    }

    pub fn sub(&self, other: &AxesElement, ring: &AxesRing) -> AxesElement {
        self.add(&other.neg(ring), ring)
    }

    /// Product in the axes ring: cross-branch terms vanish, so
    /// `(α + Σ p_i)(β + Σ q_i) = αβ + Σ (α q_i + β p_i + p_i q_i)`.
    pub fn mul(&self, other: &AxesElement, ring: &AxesRing) -> AxesElement {
        let field = ring.field();
        let constant = field.mul(&self.constant, &other.constant);
        let branch_parts = self
            .branch_parts
            .iter()
            .zip(&other.branch_parts)
            .map(|(p, q)| {
                let a_q = uni_scale(q, &self.constant, field);
                let b_p = uni_scale(p, &other.constant, field);
                let pq = uni_mul(p, q, field);
                uni_add(&uni_add(&a_q, &b_p, field), &pq, field)
            })
            .collect();
        AxesElement {
            constant,
            branch_parts,
        }
    }

    /// Rendering in the `alpha | p1(X1) | ... | pn(Xn)` form.
    pub fn render(&self, ring: &AxesRing) -> String {
        let mut parts = vec![self.constant.to_string()];
        for (i, branch) in self.branch_parts.iter().enumerate() {
            if branch.is_empty() {
                parts.push("0".to_string());
                continue;
            }
            let var = &ring.ambient().vars[i];
            let terms: Vec<String> = branch
                .iter()
                .map(|(e, c)| {
                    let var_pow = if *e == 1 {
                        var.clone()
                    } else {
                        format!("{var}^{e}")
                    };
                    if c.is_one() {
                        var_pow
                    } else {
                        format!("{c}*{var_pow}")
                    }
                })
                .collect();
            parts.push(terms.join(" + "));
        }
        parts.join(" | ")
    }
}

fn uni_add(a: &[(u32, Coeff)], b: &[(u32, Coeff)], field: &FieldSpec) -> Vec<(u32, Coeff)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = field.add(&a[i].1, &b[j].1);
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().cloned());
    out
}

fn uni_scale(a: &[(u32, Coeff)], c: &Coeff, field: &FieldSpec) -> Vec<(u32, Coeff)> {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(e, x)| (*e, field.mul(x, c))).collect()
}

fn uni_mul(a: &[(u32, Coeff)], b: &[(u32, Coeff)], field: &FieldSpec) -> Vec<(u32, Coeff)> {
    let mut acc: Vec<(u32, Coeff)> = Vec::new();
    for (ea, ca) in a {
        let shifted: Vec<(u32, Coeff)> = b
            .iter()
            .map(|(eb, cb)| (ea + eb, field.mul(ca, cb)))
            .collect();
        acc = uni_add(&acc, &shifted, field);
    }
    acc
}

/// The value of a branch valuation: a nonnegative order of vanishing, or
/// infinity for the zero branch component. Infinity is maximal in the order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ValuationValue {
    Finite(u64),
    Infinite,
}

impl fmt::Display for ValuationValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValuationValue::Finite(v) => write!(f, "{v}"),
            ValuationValue::Infinite => write!(f, "inf"),
        }
    }
}

/// The comparison used by the valuative criterion: strictly greater, except
/// that an infinite pair also counts as strict.
pub fn criterion_exceeds(f: ValuationValue, ideal: ValuationValue) -> bool {
    f > ideal || (f == ValuationValue::Infinite && ideal == ValuationValue::Infinite)
}

/// Reduces a polynomial to canonical axes form by deleting mixed monomials.
/// Equals the normal form modulo the pairwise-product relations; idempotent.
pub fn canonicalize(f: &Polynomial, ring: &AxesRing) -> Result<AxesElement, AlgebraError> {
    same_ambient(f.ambient(), ring.ambient())?;
    let field = ring.field();
    let mut constant = field.zero();
    let mut branch_parts: Vec<Vec<(u32, Coeff)>> = vec![Vec::new(); ring.branches()];
    for (m, c) in f.terms() {
        let support: Vec<usize> = m.support().collect();
        match support.len() {
            0 => constant = field.add(&constant, c),
            1 => {
                let i = support[0];
                branch_parts[i] = uni_add(
                    &branch_parts[i],
                    &[(m.exponent(i), c.clone())],
                    field,
                );
            }
            _ => {} // mixed monomial: zero in the axes ring
        }
    }
    Ok(AxesElement {
        constant,
        branch_parts,
    })
}

/// Order of vanishing of `constant + branch_part_i` on branch `i` (0-based):
/// zero for elements with nonzero constant, infinite when both vanish.
pub fn val_branch(f: &AxesElement, i: usize) -> ValuationValue {
    if !f.constant.is_zero() {
        return ValuationValue::Finite(0);
    }
    match f.branch_parts[i].first() {
        Some((e, _)) => ValuationValue::Finite(*e as u64),
        None => ValuationValue::Infinite,
    }
}

/// `min { val_i(g) : g generator }`. By subadditivity this is the infimum of
/// the valuation over the whole ideal.
pub fn val_ideal(gens: &[AxesElement], i: usize) -> Result<ValuationValue, AlgebraError> {
    gens.iter()
        .map(|g| val_branch(g, i))
        .min()
        .ok_or_else(|| AlgebraError::InvalidInput("empty generator list".into()))
}

/// Why a valuative decision fell through to exact Gröbner membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FallbackReason {
    /// Some branch attains the ideal valuation exactly; the criterion is
    /// silent there.
    BoundaryTie,
    /// The valuative criterion passed but the branchwise division has no
    /// polynomial solution; the complete-model conclusion need not hold in
    /// the polynomial model.
    WitnessSolveFailed,
}

/// Outcome of the valuative membership criterion.
#[derive(Debug, Clone, PartialEq)]
pub enum ValuativeOutcome {
    /// `val_i(f)` exceeds `val_i(I)` on every branch and the witness was
    /// constructed: `f = Σ g_i y_i` with each `y_i` supported on branch `i`.
    /// Cofactors are aligned with the ideal generators and recompose exactly.
    MemberWithWitness { cofactors: Vec<AxesElement> },
    /// `val_i(f) < val_i(I)` at this branch (0-based); members always have
    /// valuation at least the ideal valuation, so this is an exact refusal.
    NonMemberAtBranch { branch: usize },
    /// Decided exactly by Gröbner membership in the presentation.
    BoundaryFallback {
        member: bool,
        reason: FallbackReason,
    },
}

impl ValuativeOutcome {
    pub fn is_member(&self) -> bool {
        match self {
            ValuativeOutcome::MemberWithWitness { .. } => true,
            ValuativeOutcome::NonMemberAtBranch { .. } => false,
            ValuativeOutcome::BoundaryFallback { member, .. } => *member,
        }
    }
}

/// The valuative membership criterion with constructive witnesses.
///
/// If `val_i(f) > val_i(I)` on every branch (infinite pairs counting as
/// strict), a generator attaining the ideal valuation is divided into `f`
/// branch by branch to produce the witness. A branch where `f` falls below
/// the ideal valuation refutes membership outright. Everything else is
/// decided exactly in the presentation.
pub fn valuative_membership(
    f: &AxesElement,
    gens: &[AxesElement],
    ring: &AxesRing,
    order: &MonomialOrder,
    cfg: &GroebnerConfig,
) -> Result<ValuativeOutcome, AlgebraError> {
    let n = ring.branches();
    if gens.is_empty() {
        return Err(AlgebraError::InvalidInput("empty generator list".into()));
    }
    let vf: Vec<ValuationValue> = (0..n).map(|i| val_branch(f, i)).collect();
    let vi: Vec<ValuationValue> = (0..n)
        .map(|i| val_ideal(gens, i))
        .collect::<Result<_, _>>()?;

    if let Some(branch) = (0..n).find(|&i| vf[i] < vi[i]) {
        return Ok(ValuativeOutcome::NonMemberAtBranch { branch });
    }

    if (0..n).all(|i| criterion_exceeds(vf[i], vi[i])) {
        match construct_witness(f, gens, ring, &vi) {
            Some(cofactors) => return Ok(ValuativeOutcome::MemberWithWitness { cofactors }),
            None => {
                let member = exact_membership(f, gens, ring, order, cfg)?;
                return Ok(ValuativeOutcome::BoundaryFallback {
                    member,
                    reason: FallbackReason::WitnessSolveFailed,
                });
            }
        }
    }

    let member = exact_membership(f, gens, ring, order, cfg)?;
    Ok(ValuativeOutcome::BoundaryFallback {
        member,
        reason: FallbackReason::BoundaryTie,
    })
}

fn exact_membership(
    f: &AxesElement,
    gens: &[AxesElement],
    ring: &AxesRing,
    order: &MonomialOrder,
    cfg: &GroebnerConfig,
) -> Result<bool, AlgebraError> {
    let presentation = ring.presentation(cfg)?;
    let ideal = Ideal::new(
        ring.ambient(),
        gens.iter().map(|g| g.to_polynomial(ring)).collect(),
    )?;
    presentation.ideal_membership(&f.to_polynomial(ring), &ideal, order, cfg)
}

// Builds the witness f = Σ g_i y_i branch by branch, or reports that some
// branchwise division has no polynomial solution.
fn construct_witness(
    f: &AxesElement,
    gens: &[AxesElement],
    ring: &AxesRing,
    vi: &[ValuationValue],
) -> Option<Vec<AxesElement>> {
    let field = ring.field();
    let n = ring.branches();
    let mut cofactors = vec![AxesElement::zero(ring); gens.len()];
    for i in 0..n {
        // branch component of f as a univariate polynomial (constant is zero
        // in the witness case)
        let target = &f.branch_parts[i];
        if target.is_empty() {
            continue;
        }
        let mut solved = false;
        for (k, g) in gens.iter().enumerate() {
            if val_branch(g, i) != vi[i] {
                continue;
            }
            // branch image of g includes its shared constant
            let mut divisor = vec![(0u32, g.constant.clone())];
            divisor.retain(|(_, c)| !c.is_zero());
            divisor = uni_add(&divisor, &g.branch_parts[i], field);
            if let Some(quotient) = uni_div_exact(target, &divisor, field) {
                // val(target) > val(divisor) makes the quotient constant-free
                debug_assert!(quotient.first().map(|(e, _)| *e >= 1).unwrap_or(true));
                cofactors[k].branch_parts[i] =
                    uni_add(&cofactors[k].branch_parts[i], &quotient, field);
                solved = true;
                break;
            }
        }
        if !solved {
            return None;
        }
    }
    Some(cofactors)
}

/// Exact univariate division `num / den` in `L[X]`; `None` unless it divides.
fn uni_div_exact(
    num: &[(u32, Coeff)],
    den: &[(u32, Coeff)],
    field: &FieldSpec,
) -> Option<Vec<(u32, Coeff)>> {
    if den.is_empty() {
        return None;
    }
    let mut rem: Vec<(u32, Coeff)> = num.to_vec();
    let (den_deg, den_lc) = den.last().map(|(e, c)| (*e, c.clone()))?;
    let den_lc_inv = field.inv(&den_lc).ok()?;
    let mut quotient: Vec<(u32, Coeff)> = Vec::new();
    while let Some((rem_deg, rem_lc)) = rem.last().map(|(e, c)| (*e, c.clone())) {
        if rem_deg < den_deg {
            return None;
        }
        let e = rem_deg - den_deg;
        let c = field.mul(&rem_lc, &den_lc_inv);
        quotient.push((e, c.clone()));
        let shifted: Vec<(u32, Coeff)> = den
            .iter()
            .map(|(de, dc)| (de + e, field.neg(&field.mul(dc, &c))))
            .collect();
        rem = uni_add(&rem, &shifted, field);
    }
    quotient.reverse();
    Some(quotient)
}

/// A change of variables identifying a presentation with a canonical axes
/// ring: both directions are supplied and must be mutually inverse.
#[derive(Debug, Clone)]
pub struct ChangeOfVars {
    /// From the presented ring to the canonical axes presentation.
    pub to_axes: RingHom,
    /// From the canonical axes presentation back to the presented ring.
    pub from_axes: RingHom,
}

/// Decision of [`is_axes_presentation`].
#[derive(Debug, Clone)]
pub enum AxesDecision {
    Accepted {
        ring: AxesRing,
        /// Validated map from the tested presentation into the canonical
        /// axes presentation (the identity when no change was needed).
        to_axes: ValidatedHom,
    },
    Rejected {
        reason: String,
    },
}

/// Accepts a presentation iff, under the (possibly identity) change of
/// variables, its relation ideal is exactly the pairwise-product ideal of the
/// target variables. An invalid change of variables (maps that fail to
/// validate or are not mutually inverse) is an error, reported distinctly
/// from "not an axes ring".
pub fn is_axes_presentation(
    ring: &RingPresentation,
    change: Option<&ChangeOfVars>,
    order: &MonomialOrder,
    cfg: &GroebnerConfig,
) -> Result<AxesDecision, AlgebraError> {
    match change {
        None => {
            let candidate = AxesRing {
                ambient: ring.ambient().clone(),
            };
            let expected = Ideal::new(ring.ambient(), candidate.relation_gens())?;
            if ring.relations().equals(&expected, order, cfg)? {
                let identity = validate_hom(crate::ring::identity_hom(ring), order, cfg)?;
                Ok(AxesDecision::Accepted {
                    ring: candidate,
                    to_axes: identity,
                })
            } else {
                Ok(AxesDecision::Rejected {
                    reason: "relation ideal is not the pairwise-product ideal of the variables"
                        .into(),
                })
            }
        }
        Some(change) => {
            let to_axes = validate_hom(change.to_axes.clone(), order, cfg)
                .map_err(|e| AlgebraError::InvalidChangeOfVars(e.to_string()))?;
            let from_axes = validate_hom(change.from_axes.clone(), order, cfg)
                .map_err(|e| AlgebraError::InvalidChangeOfVars(e.to_string()))?;
            if to_axes.source() != ring
                || to_axes.target() != from_axes.source()
                || from_axes.target() != ring
            {
                return Err(AlgebraError::InvalidChangeOfVars(
                    "change-of-variable endpoints do not match".into(),
                ));
            }
            // both compositions must be the identity modulo relations
            let round = to_axes.compose(&from_axes, order, cfg)?;
            for (i, img) in round.hom().images.iter().enumerate() {
                let var = Polynomial::var(ring.ambient(), i);
                let diff = img.sub(&var)?;
                if !ring.is_zero_in_quotient(&diff, order, cfg)? {
                    return Err(AlgebraError::InvalidChangeOfVars(format!(
                        "composite does not fix `{}`",
                        ring.ambient().vars[i]
                    )));
                }
            }
            let target = to_axes.target().clone();
            let back = from_axes.compose(&to_axes, order, cfg)?;
            for (i, img) in back.hom().images.iter().enumerate() {
                let var = Polynomial::var(target.ambient(), i);
                let diff = img.sub(&var)?;
                if !target.is_zero_in_quotient(&diff, order, cfg)? {
                    return Err(AlgebraError::InvalidChangeOfVars(format!(
                        "composite does not fix `{}`",
                        target.ambient().vars[i]
                    )));
                }
            }
            match is_axes_presentation(&target, None, order, cfg)? {
                AxesDecision::Accepted { ring: axes, .. } => Ok(AxesDecision::Accepted {
                    ring: axes,
                    to_axes,
                }),
                AxesDecision::Rejected { reason } => Ok(AxesDecision::Rejected { reason }),
            }
        }
    }
}

/// One homomorphism for an axes-closure test: a validated map from the ring
/// under test, with an optional change of variables identifying its target
/// with a canonical axes ring.
#[derive(Debug, Clone)]
pub struct AxesTestHom {
    pub label: String,
    pub hom: ValidatedHom,
    pub change: Option<ChangeOfVars>,
}

/// Per-homomorphism result of an axes-closure test.
#[derive(Debug, Clone)]
pub struct HomResult {
    pub label: String,
    pub branches: usize,
    pub member: bool,
    pub outcome: ValuativeOutcome,
}

/// Overall verdict of an axes-closure test. Passing every supplied test is
/// evidence, not a proof of axes-closure membership; a single refutation is
/// an exact disproof.
#[derive(Debug, Clone)]
pub enum AxesTestVerdict {
    Refuted { hom: String },
    PassedAllTests,
}

#[derive(Debug, Clone)]
pub struct AxesTestReport {
    pub per_hom: Vec<HomResult>,
    pub verdict: AxesTestVerdict,
}

/// Tests `φ(f) ∈ φ(I)·S` exactly for each homomorphism into an accepted axes
/// ring. Any failing homomorphism refutes axes-closure membership of `f`.
pub fn axes_closure_test(
    ring: &RingPresentation,
    ideal: &Ideal,
    f: &Polynomial,
    homs: &[AxesTestHom],
    order: &MonomialOrder,
    cfg: &GroebnerConfig,
) -> Result<AxesTestReport, AlgebraError> {
    same_ambient(ring.ambient(), f.ambient())?;
    let mut per_hom = Vec::new();
    let mut refuted: Option<String> = None;
    for test in homs {
        if test.hom.source() != ring {
            return Err(AlgebraError::AmbientMismatch(format!(
                "hom `{}` does not start at the ring under test",
                test.label
            )));
        }
        let decision =
            is_axes_presentation(test.hom.target(), test.change.as_ref(), order, cfg)?;
        let (axes, to_axes) = match decision {
            AxesDecision::Accepted { ring, to_axes } => (ring, to_axes),
            AxesDecision::Rejected { reason } => {
                return Err(AlgebraError::InvalidInput(format!(
                    "target of hom `{}` is not an accepted axes ring: {reason}",
                    test.label
                )))
            }
        };
        let into_axes = test.hom.compose(&to_axes, order, cfg)?;
        let f_image = canonicalize(&into_axes.apply(f, order, cfg)?, &axes)?;
        let gen_images = ideal
            .gens()
            .iter()
            .map(|g| canonicalize(&into_axes.apply(g, order, cfg)?, &axes))
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        let outcome = valuative_membership(&f_image, &gen_images, &axes, order, cfg)?;
        let member = outcome.is_member();
        if !member && refuted.is_none() {
            refuted = Some(test.label.clone());
        }
        per_hom.push(HomResult {
            label: test.label.clone(),
            branches: axes.branches(),
            member,
            outcome,
        });
    }
    let verdict = match refuted {
        Some(hom) => AxesTestVerdict::Refuted { hom },
        None => AxesTestVerdict::PassedAllTests,
    };
    Ok(AxesTestReport { per_hom, verdict })
}
