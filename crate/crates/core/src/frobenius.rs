//! Frobenius bracket powers and bounded certificate search for tight closure
//! and special tight closure in characteristic `p`.
//!
//! Tight-closure membership is not decided by any finite procedure here;
//! verdicts are three-valued and every bounded claim carries the exact
//! exponent range and multiplier that were checked.


use crate::error::AlgebraError;
use crate::field::FieldSpec;
use crate::groebner::{self, GroebnerConfig};
use crate::ideal::Ideal;
use crate::monomial::{monomials_of_degree, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::RingPresentation;

/// A prime power `q = p^e` with exact (checked) arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimePower {
    pub p: u64,
    pub e: u32,
    pub q: u64,
}

impl PrimePower {
    pub fn new(p: u64, e: u32) -> Result<Self, AlgebraError> {
        if !crate::field::is_prime_u64(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        let q = p
            .checked_pow(e)
            .ok_or_else(|| AlgebraError::Budget(format!("{p}^{e} overflows the exponent range")))?;
        Ok(PrimePower { p, e, q })
    }
}

/// `f^q` by repeated squaring. Requires positive characteristic matching `q.p`;
/// over `F_p` this satisfies `(f+g)^q = f^q + g^q`.
pub fn frobenius_power_of_element(
    f: &Polynomial,
    q: PrimePower,
) -> Result<Polynomial, AlgebraError> {
    check_char(f.field(), q.p)?;
    Ok(f.pow(q.q))
}

/// The bracket power `I^[q]`, generated by `g^q` for each generator `g`. As an
/// ideal this does not depend on the chosen generating set in characteristic `p`.
pub fn bracket_power(ideal: &Ideal, q: PrimePower) -> Result<Ideal, AlgebraError> {
    check_char(&ideal.ambient().field, q.p)?;
    let gens = ideal.gens().iter().map(|g| g.pow(q.q)).collect();
    Ideal::new(ideal.ambient(), gens)
}

fn check_char(field: &FieldSpec, p: u64) -> Result<(), AlgebraError> {
    match field {
        FieldSpec::Prime(fp) if *fp == p => Ok(()),
        FieldSpec::Prime(fp) => Err(AlgebraError::CharacteristicMismatch {
            expected: p,
            found: *fp,
        }),
        FieldSpec::Rationals => Err(AlgebraError::RequiresPositiveCharacteristic),
    }
}

/// Search parameters for the bounded certificate search.
#[derive(Debug, Clone)]
pub struct TightParams {
    /// Highest Frobenius exponent checked; the search covers `e ∈ [1, e_max]`.
    pub e_max: u32,
    /// Candidate multipliers are the monomials of total degree up to this
    /// bound with nonzero class in the ring.
    pub c_degree: u32,
    /// Extra user-supplied candidate multipliers, tried after the monomials.
    pub extra_candidates: Vec<Polynomial>,
    /// When the ring is a domain, any nonzero `c` is a legal multiplier. When
    /// unset, only `extra_candidates` are tried.
    pub assume_domain: bool,
    /// Test knob: skip the exact fast paths and run the grid search directly.
    pub force_search: bool,
}

impl Default for TightParams {
    fn default() -> Self {
        TightParams {
            e_max: 4,
            c_degree: 4,
            extra_candidates: Vec::new(),
            assume_domain: true,
            force_search: false,
        }
    }
}

/// One logged membership check `c * f^q ∈ I^[q]` (in the quotient ring).
#[derive(Debug, Clone)]
pub struct CertCheck {
    pub e: u32,
    pub q: u64,
    pub member: bool,
    pub millis: u128,
}

/// A bounded tight-closure certificate: the multiplier `c` together with the
/// verified exponent range. It asserts exactly the checked range and nothing
/// beyond it.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub c: Polynomial,
    pub e_checked: (u32, u32),
    pub per_e_log: Vec<CertCheck>,
}

/// Outcome of a tight-closure query.
#[derive(Debug, Clone)]
pub enum TightVerdict {
    /// `f ∈ I` holds exactly (plain membership in the quotient), or the ring
    /// is regular so the closure adds nothing.
    ExactMember,
    /// A multiplier passed every check in the stated range.
    BoundedCertified(Certificate),
    /// Exact non-membership; only emitted for relation-free (regular) rings,
    /// where the closure equals the ideal.
    ExactNonMember,
    /// The bounded search found nothing; the bounds are part of the verdict.
    InconclusiveNegative {
        e_max: u32,
        c_degree: u32,
        candidates_tried: usize,
    },
}

impl TightVerdict {
    pub fn is_membership(&self) -> bool {
        matches!(
            self,
            TightVerdict::ExactMember | TightVerdict::BoundedCertified(_)
        )
    }
}

/// Bounded tight-closure membership test.
///
/// Exact fast paths first: plain membership in the quotient, and the
/// regular-ring case (no relations) where the closure is the ideal itself.
/// Otherwise a deterministic `(c, e)` grid search over candidate multipliers
/// ordered by total degree and then by the monomial order; the first `c`
/// passing every `e ∈ [1, e_max]` wins.
pub fn tight_membership(
    ring: &RingPresentation,
    ideal: &Ideal,
    f: &Polynomial,
    params: &TightParams,
    order: &MonomialOrder,
    cfg: &GroebnerConfig,
) -> Result<TightVerdict, AlgebraError> {
    if !params.force_search {
        if ring.ideal_membership(f, ideal, order, cfg)? {
            return Ok(TightVerdict::ExactMember);
        }
        if ring.is_polynomial_ring() {
            // tight closure of an ideal in a regular ring is the ideal itself
            return Ok(TightVerdict::ExactNonMember);
        }
    }
    let p = match ring.ambient().field {
        FieldSpec::Prime(p) => p,
        FieldSpec::Rationals => return Err(AlgebraError::RequiresPositiveCharacteristic),
    };

    let relation_basis = ring.relations().groebner(order, cfg)?;

    // candidate multipliers: nonzero-class monomials by total degree,
    // descending under the monomial order within a degree, then extras
    let mut candidates: Vec<Polynomial> = Vec::new();
    if params.assume_domain {
        for d in 0..=params.c_degree {
            for m in monomials_of_degree(ring.ambient().arity(), d, order)
                .into_iter()
                .rev()
            {
                let poly = Polynomial::monomial(ring.ambient(), m, ring.ambient().field.one());
                if !groebner::normal_form(&poly, &relation_basis, order)?.is_zero() {
                    candidates.push(poly);
                }
            }
        }
    }
    for extra in &params.extra_candidates {
        let nf = groebner::normal_form(extra, &relation_basis, order)?;
        if !nf.is_zero() && !candidates.contains(extra) {
            candidates.push(extra.clone());
        }
    }
    let total = candidates.len();

    let mut survivors: Vec<(Polynomial, Vec<CertCheck>)> =
        candidates.into_iter().map(|c| (c, Vec::new())).collect();
    for e in 1..=params.e_max {
        if survivors.is_empty() {
            break;
        }
        let q = PrimePower::new(p, e)?;
        let bracket = bracket_power(ideal, q)?.sum(ring.relations())?;
        let basis = bracket.groebner(order, cfg)?;
        let f_q = groebner::normal_form(&f.pow(q.q), &relation_basis, order)?;
        let mut next = Vec::with_capacity(survivors.len());
        for (c, mut log) in survivors {
            let started = std::time::Instant::now();
            let test = c.mul(&f_q)?;
            let member = groebner::normal_form(&test, &basis, order)?.is_zero();
            log.push(CertCheck {
                e,
                q: q.q,
                member,
                millis: started.elapsed().as_millis(),
            });
            if member {
                next.push((c, log));
            }
        }
        survivors = next;
    }

    match survivors.into_iter().next() {
        Some((c, log)) => Ok(TightVerdict::BoundedCertified(Certificate {
            c,
            e_checked: (1, params.e_max),
            per_e_log: log,
        })),
        None => Ok(TightVerdict::InconclusiveNegative {
            e_max: params.e_max,
            c_degree: params.c_degree,
            candidates_tried: total,
        }),
    }
}

impl Certificate {
    /// Re-verifies every logged check from scratch via plain ideal membership.
    pub fn replay(
        &self,
        ring: &RingPresentation,
        ideal: &Ideal,
        f: &Polynomial,
        order: &MonomialOrder,
        cfg: &GroebnerConfig,
    ) -> Result<bool, AlgebraError> {
        let p = match ring.ambient().field {
            FieldSpec::Prime(p) => p,
            FieldSpec::Rationals => return Err(AlgebraError::RequiresPositiveCharacteristic),
        };
        if ring.is_zero_in_quotient(&self.c, order, cfg)? {
            return Ok(false);
        }
        for check in &self.per_e_log {
            let q = PrimePower::new(p, check.e)?;
            let bracket = bracket_power(ideal, q)?;
            let test = self.c.mul(&f.pow(q.q))?;
            if !ring.ideal_membership(&test, &bracket, order, cfg)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A special tight closure query: exponents `q0 = p^e0` for `e0 ∈ [0, q0_e_max]`.
#[derive(Debug, Clone)]
pub struct SpecialTightQuery {
    pub maximal_ideal: Ideal,
    pub q0_e_max: u32,
    pub inner: TightParams,
}

/// Outcome of a special tight closure search: the first exponent whose inner
/// tight-closure query succeeded, with the full attempt log.
#[derive(Debug, Clone)]
pub struct SpecialVerdict {
    /// The successful `q0`, if any.
    pub q0: Option<PrimePower>,
    /// The verdict of the successful attempt, or of the last attempt when all
    /// failed.
    pub verdict: TightVerdict,
    /// All attempts in `q0` order.
    pub attempts: Vec<(PrimePower, TightVerdict)>,
}

/// Special tight closure: searches for `q0 = p^e0` with
/// `f^q0 ∈ (m * I^[q0])^*`, running the bounded tight test on each attempt.
pub fn special_tight_membership(
    ring: &RingPresentation,
    query: &SpecialTightQuery,
    ideal: &Ideal,
    f: &Polynomial,
    order: &MonomialOrder,
    cfg: &GroebnerConfig,
) -> Result<SpecialVerdict, AlgebraError> {
    let p = match ring.ambient().field {
        FieldSpec::Prime(p) => p,
        FieldSpec::Rationals => return Err(AlgebraError::RequiresPositiveCharacteristic),
    };
    let mut attempts = Vec::new();
    for e0 in 0..=query.q0_e_max {
        let q0 = PrimePower::new(p, e0)?;
        let inner_ideal = query.maximal_ideal.product(&bracket_power(ideal, q0)?)?;
        let f_q0 = f.pow(q0.q);
        let verdict = tight_membership(ring, &inner_ideal, &f_q0, &query.inner, order, cfg)?;
        let success = verdict.is_membership();
        attempts.push((q0, verdict.clone()));
        if success {
            return Ok(SpecialVerdict {
                q0: Some(q0),
                verdict,
                attempts,
            });
        }
    }
    let last = attempts
        .last()
        .map(|(_, v)| v.clone())
        .unwrap_or(TightVerdict::InconclusiveNegative {
            e_max: query.inner.e_max,
            c_degree: query.inner.c_degree,
            candidates_tried: 0,
        });
    Ok(SpecialVerdict {
        q0: None,
        verdict: last,
        attempts,
    })
}
