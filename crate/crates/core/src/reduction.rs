//! Reduction of rational presentations modulo primes and fiberwise
//! tight-closure sweeps.
//!
//! The base of the reduction is the integers: input data must be defined over
//! the rationals. Reports carry per-fiber evidence only and never claim a
//! characteristic-zero conclusion.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed};
use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::field::{Coeff, FieldSpec};
use crate::frobenius::{tight_membership, TightParams, TightVerdict};
use crate::groebner::GroebnerConfig;
use crate::ideal::Ideal;
use crate::monomial::MonomialOrder;
use crate::poly::{Ambient, Polynomial};
use crate::ring::RingPresentation;

/// An integer model of a rational presentation: every polynomial scaled to
/// integer coefficients, together with the primes that must be avoided.
#[derive(Debug, Clone)]
pub struct IntegralModel {
    pub ambient: Arc<Ambient>,
    pub relations: Vec<Polynomial>,
    pub ideal: Vec<Polynomial>,
    pub element: Polynomial,
    /// Primes dividing any cleared denominator or any leading coefficient.
    pub bad_primes: BTreeSet<u64>,
}

/// Scales each polynomial by the least common multiple of its coefficient
/// denominators and collects the primes of those multipliers and of the
/// leading coefficients into `bad_primes`.
pub fn clear_denominators(
    relations: &[Polynomial],
    ideal: &[Polynomial],
    element: &Polynomial,
    order: &MonomialOrder,
) -> Result<IntegralModel, AlgebraError> {
    let ambient = element.ambient().clone();
    if ambient.field != FieldSpec::Rationals {
        return Err(AlgebraError::InvalidInput(
            "reduction needs input over the rationals".into(),
        ));
    }
    let mut bad = BTreeSet::new();
    let mut clear = |f: &Polynomial| -> Result<Polynomial, AlgebraError> {
        if f.is_zero() {
            return Ok(f.clone());
        }
        let mut lcm = BigInt::one();
        for (_, c) in f.terms() {
            let Coeff::Rat(r) = c else { unreachable!() };
            lcm = lcm.lcm(r.denom());
        }
        for p in prime_factors(&lcm)? {
            bad.insert(p);
        }
        let scaled = f.scale(&Coeff::Rat(num_rational::BigRational::from_integer(
            lcm.clone(),
        )));
        let (_, lc) = scaled.leading(order).expect("nonzero");
        let Coeff::Rat(lc) = lc else { unreachable!() };
        debug_assert!(lc.is_integer());
        for p in prime_factors(lc.numer())? {
            bad.insert(p);
        }
        Ok(scaled)
    };
    Ok(IntegralModel {
        ambient: ambient.clone(),
        relations: relations.iter().map(&mut clear).collect::<Result<_, _>>()?,
        ideal: ideal.iter().map(&mut clear).collect::<Result<_, _>>()?,
        element: clear(element)?,
        bad_primes: bad,
    })
}

fn prime_factors(n: &BigInt) -> Result<Vec<u64>, AlgebraError> {
    let mag: BigUint = n.abs().to_biguint().expect("nonnegative");
    let mut m = u64::try_from(mag).map_err(|_| {
        AlgebraError::InvalidInput("coefficient multiplier too large to factor".into())
    })?;
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    Ok(out)
}

/// Why a fiber is or is not lucky.
#[derive(Debug, Clone, PartialEq)]
pub enum Luckiness {
    /// The leading-term staircases of the rational bases survive reduction.
    Lucky,
    /// The fiber staircase differs from the reduced rational staircase.
    StaircaseChanged,
    /// A rational Gröbner basis coefficient has a denominator divisible by `p`.
    BasisDenominator,
}

/// The reduction of the model modulo one prime.
#[derive(Debug, Clone)]
pub struct PrimeFiber {
    pub p: u64,
    pub ring: RingPresentation,
    pub ideal: Ideal,
    pub element: Polynomial,
    pub luckiness: Luckiness,
}

impl PrimeFiber {
    pub fn is_lucky(&self) -> bool {
        self.luckiness == Luckiness::Lucky
    }
}

/// Coefficientwise reduction of the model modulo `p` (which must avoid
/// `bad_primes`). Luckiness compares, for the relations and for the ideal,
/// the leading-term staircase of the fiber's reduced Gröbner basis with the
/// reduction of the rational one.
pub fn reduce_mod_p(
    model: &IntegralModel,
    p: u64,
    order: &MonomialOrder,
    cfg: &GroebnerConfig,
) -> Result<PrimeFiber, AlgebraError> {
    if model.bad_primes.contains(&p) {
        return Err(AlgebraError::InvalidInput(format!(
            "{p} is a bad prime for this model (divides a cleared coefficient)"
        )));
    }
    let field = FieldSpec::prime(p)?;
    let fiber_ambient = Ambient::new(model.ambient.vars.clone(), field);
    let reduce_poly = |f: &Polynomial| -> Polynomial {
        Polynomial::from_terms(
            &fiber_ambient,
            f.terms().iter().map(|(m, c)| {
                let Coeff::Rat(r) = c else { unreachable!() };
                debug_assert!(r.is_integer());
                (m.clone(), fiber_ambient.field.from_bigint(r.numer()))
            }),
        )
    };

    let relations_p: Vec<Polynomial> = model.relations.iter().map(reduce_poly).collect();
    let ideal_p: Vec<Polynomial> = model.ideal.iter().map(reduce_poly).collect();
    let element_p = reduce_poly(&model.element);

    let mut luckiness = Luckiness::Lucky;
    for (rational_gens, fiber_gens) in [(&model.relations, &relations_p), (&model.ideal, &ideal_p)]
    {
        match staircase_matches(rational_gens, fiber_gens, &fiber_ambient, order, cfg)? {
            Luckiness::Lucky => {}
            other => {
                luckiness = other;
                break;
            }
        }
    }

    let relations_ideal = Ideal::new(&fiber_ambient, relations_p)?;
    let ring = RingPresentation::new(&fiber_ambient, relations_ideal, cfg)?;
    let ideal = Ideal::new(&fiber_ambient, ideal_p)?;
    Ok(PrimeFiber {
        p,
        ring,
        ideal,
        element: element_p,
        luckiness,
    })
}

fn staircase_matches(
    rational_gens: &[Polynomial],
    fiber_gens: &[Polynomial],
    fiber_ambient: &Arc<Ambient>,
    order: &MonomialOrder,
    cfg: &GroebnerConfig,
) -> Result<Luckiness, AlgebraError> {
    let rational_basis = crate::groebner::buchberger(rational_gens, order, cfg)?;
    // reduce the rational basis coefficientwise; a denominator divisible by p
    // blocks the comparison and marks the fiber unlucky
    let mut reduced_rational_lts = BTreeSet::new();
    for g in &rational_basis {
        for (_, c) in g.terms() {
            let Coeff::Rat(r) = c else { unreachable!() };
            let denom_mod_p = fiber_ambient.field.from_bigint(r.denom());
            if denom_mod_p.is_zero() {
                return Ok(Luckiness::BasisDenominator);
            }
        }
        if let Some((lt, _)) = g.leading(order) {
            reduced_rational_lts.insert(lt.clone());
        }
    }
    let fiber_basis = crate::groebner::buchberger(fiber_gens, order, cfg)?;
    let fiber_lts: BTreeSet<_> = fiber_basis
        .iter()
        .filter_map(|g| g.leading(order).map(|(m, _)| m.clone()))
        .collect();
    if fiber_lts == reduced_rational_lts {
        Ok(Luckiness::Lucky)
    } else {
        Ok(Luckiness::StaircaseChanged)
    }
}

/// The aggregate of a sweep; a pure function of the fiber verdicts.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepAggregate {
    /// Every lucky fiber returned a membership-kind verdict.
    CertifiedInAllLuckyFibers,
    /// Every lucky fiber returned exact non-membership.
    ExactNegative,
    Mixed,
}

/// One row of a sweep report.
#[derive(Debug, Clone)]
pub struct FiberReport {
    pub p: u64,
    pub lucky: bool,
    pub luckiness: Luckiness,
    pub verdict: Option<TightVerdict>,
    pub millis: u128,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub fibers: Vec<FiberReport>,
    pub aggregate: SweepAggregate,
}

/// Runs the bounded tight-closure test on every lucky fiber and aggregates.
/// Bad primes are rejected; an empty lucky set is an error.
pub fn fiber_sweep(
    model: &IntegralModel,
    primes: &[u64],
    params: &TightParams,
    order: &MonomialOrder,
    cfg: &GroebnerConfig,
) -> Result<SweepReport, AlgebraError> {
    let mut seen = BTreeSet::new();
    for &p in primes {
        if !seen.insert(p) {
            return Err(AlgebraError::InvalidInput(format!(
                "duplicate prime {p} in sweep"
            )));
        }
    }
    let mut fibers = Vec::new();
    let mut lucky_count = 0usize;
    let mut all_lucky_member = true;
    let mut all_lucky_nonmember = true;
    for &p in primes {
        let started = std::time::Instant::now();
        let fiber = reduce_mod_p(model, p, order, cfg)?;
        if !fiber.is_lucky() {
            fibers.push(FiberReport {
                p,
                lucky: false,
                luckiness: fiber.luckiness,
                verdict: None,
                millis: started.elapsed().as_millis(),
            });
            continue;
        }
        lucky_count += 1;
        let verdict =
            tight_membership(&fiber.ring, &fiber.ideal, &fiber.element, params, order, cfg)?;
        if verdict.is_membership() {
            all_lucky_nonmember = false;
        } else {
            all_lucky_member = false;
            if !matches!(verdict, TightVerdict::ExactNonMember) {
                all_lucky_nonmember = false;
            }
        }
        fibers.push(FiberReport {
            p,
            lucky: true,
            luckiness: Luckiness::Lucky,
            verdict: Some(verdict),
            millis: started.elapsed().as_millis(),
        });
    }
    if lucky_count == 0 {
        return Err(AlgebraError::InvalidInput(
            "no lucky fibers among the supplied primes".into(),
        ));
    }
    let aggregate = if all_lucky_member {
        SweepAggregate::CertifiedInAllLuckyFibers
    } else if all_lucky_nonmember {
        SweepAggregate::ExactNegative
    } else {
        SweepAggregate::Mixed
    };
    Ok(SweepReport { fibers, aggregate })
}

/// Convenience prime list: the first `k` primes congruent to 1 mod `m`,
/// skipping `bad`.
pub fn lucky_prime_candidates(k: usize, m: u64, bad: &BTreeSet<u64>) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut p = 2u64;
    while out.len() < k {
        if crate::field::is_prime_u64(p) && p % m == 1 % m && !bad.contains(&p) {
            out.push(p);
        }
        p += 1;
    }
    out
}
