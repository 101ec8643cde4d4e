//! Multivariate division and Buchberger's algorithm.
//!
//! The reduced Gröbner basis returned here is unique for a fixed monomial
//! order, so recomputation is canonical. All entry points take a
//! [`GroebnerConfig`] whose S-pair budget turns runaway computations into a
//! reported resource failure instead of a wrong answer.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::field::{Coeff, FieldSpec};
use crate::monomial::{Monomial, MonomialOrder, OrderKind};
use crate::poly::{same_ambient, Ambient, Polynomial};

/// Resource limits for basis computations.
#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerConfig {
    /// Maximum number of S-polynomials that may enter reduction.
    pub max_pairs: usize,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig { max_pairs: 100_000 }
    }
}

/// Quotients and remainder of multivariate division.
#[derive(Debug, Clone)]
pub struct Division {
    /// One quotient per divisor, aligned with the input list.
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

// Terms sorted descending under the active order. This is the working
// representation inside division and Buchberger; `Polynomial` keeps its own
// canonical storage order.
#[derive(Debug, Clone)]
struct OrdPoly {
    terms: Vec<(Monomial, Coeff)>,
}

impl OrdPoly {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn leading(&self) -> &(Monomial, Coeff) {
        &self.terms[0]
    }

    fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }
}

fn to_ord(f: &Polynomial, order: &MonomialOrder) -> OrdPoly {
    let mut terms = f.terms().to_vec();
    terms.sort_by(|(a, _), (b, _)| order.cmp(b, a));
    OrdPoly { terms }
}

fn from_ord(ambient: &Arc<Ambient>, p: OrdPoly) -> Polynomial {
    Polynomial::from_terms(ambient, p.terms)
}

/// p - c * m * g, all in descending order under the same active order.
fn sub_scaled(
    p: &OrdPoly,
    c: &Coeff,
    m: &Monomial,
    g: &OrdPoly,
    field: &FieldSpec,
    order: &MonomialOrder,
) -> OrdPoly {
    let mut out = Vec::with_capacity(p.terms.len() + g.terms.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < p.terms.len() && j < g.terms.len() {
        let (pm, pc) = &p.terms[i];
        let gm = g.terms[j].0.mul(m);
        match order.cmp(pm, &gm) {
            std::cmp::Ordering::Greater => {
                out.push(p.terms[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                let gc = field.neg(&field.mul(c, &g.terms[j].1));
                out.push((gm, gc));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let coeff = field.sub(pc, &field.mul(c, &g.terms[j].1));
                if !coeff.is_zero() {
                    out.push((pm.clone(), coeff));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(p.terms[i..].iter().cloned());
    while j < g.terms.len() {
        let gm = g.terms[j].0.mul(m);
        out.push((gm, field.neg(&field.mul(c, &g.terms[j].1))));
        j += 1;
    }
    OrdPoly { terms: out }
}

// Divisors are assumed monic. Returns quotient term lists (descending order
// by construction) when `want_quotients` is set.
fn divide_ord(
    mut p: OrdPoly,
    divisors: &[OrdPoly],
    field: &FieldSpec,
    order: &MonomialOrder,
    want_quotients: bool,
) -> (Option<Vec<Vec<(Monomial, Coeff)>>>, OrdPoly) {
    let mut quotients = want_quotients.then(|| vec![Vec::new(); divisors.len()]);
    let mut remainder = Vec::new();
    'outer: while !p.is_zero() {
        let (lm, lc) = p.leading().clone();
        for (k, g) in divisors.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            if let Some(t) = g.leading().0.try_div(&lm) {
                p = sub_scaled(&p, &lc, &t, g, field, order);
                if let Some(q) = quotients.as_mut() {
                    q[k].push((t, lc.clone()));
                }
                continue 'outer;
            }
        }
        // leading term irreducible; it joins the remainder
        remainder.push((lm, lc));
        p.terms.remove(0);
    }
    (quotients, OrdPoly { terms: remainder })
}

// A key that is monotone in the active order, usable inside a heap.
fn order_key(m: &Monomial, order: &MonomialOrder) -> (u64, Vec<u32>) {
    let perm = |k: usize| -> u32 {
        match &order.priority {
            Some(p) => m.exponent(p[k]),
            None => m.exponent(k),
        }
    };
    let n = m.arity();
    match order.kind {
        OrderKind::Lex => (0, (0..n).map(perm).collect()),
        OrderKind::DegLex => (m.total_degree(), (0..n).map(perm).collect()),
        OrderKind::DegRevLex => (
            m.total_degree(),
            (0..n).rev().map(|k| u32::MAX - perm(k)).collect(),
        ),
    }
}

struct Engine<'a> {
    ambient: Arc<Ambient>,
    order: &'a MonomialOrder,
    cfg: &'a GroebnerConfig,
    basis: Vec<OrdPoly>,
    // lifts[k][i] expresses basis[k] in terms of the original generators
    lifts: Option<Vec<Vec<Polynomial>>>,
    queue: BinaryHeap<Reverse<(u64, Vec<u32>, u32, u32)>>,
    processed: usize,
}

impl<'a> Engine<'a> {
    fn push_pairs(&mut self, new: usize) {
        let lt_new = self.basis[new].leading().0.clone();
        for j in 0..new {
            let lt_j = &self.basis[j].leading().0;
            // coprime leading terms reduce to zero (product criterion), and a
            // pair of monomials has an identically zero S-polynomial
            if lt_new.coprime(lt_j) {
                continue;
            }
            if self.basis[new].is_monomial() && self.basis[j].is_monomial() {
                continue;
            }
            let lcm = lt_new.lcm(lt_j);
            let (d, key) = order_key(&lcm, self.order);
            self.queue.push(Reverse((d, key, j as u32, new as u32)));
        }
    }

    fn add_element(
        &mut self,
        poly: OrdPoly,
        rep: Option<Vec<Polynomial>>,
    ) -> Result<(), AlgebraError> {
        let field = self.ambient.field.clone();
        let lc = poly.leading().1.clone();
        let inv = field.inv(&lc)?;
        let monic = OrdPoly {
            terms: poly
                .terms
                .into_iter()
                .map(|(m, c)| (m, field.mul(&c, &inv)))
                .collect(),
        };
        if let (Some(lifts), Some(rep)) = (self.lifts.as_mut(), rep) {
            lifts.push(rep.into_iter().map(|r| r.scale(&inv)).collect());
        }
        self.basis.push(monic);
        self.push_pairs(self.basis.len() - 1);
        Ok(())
    }

    fn run(&mut self) -> Result<(), AlgebraError> {
        let field = self.ambient.field.clone();
        while let Some(Reverse((_, _, i, j))) = self.queue.pop() {
            let (i, j) = (i as usize, j as usize);
            let lt_i = self.basis[i].leading().0.clone();
            let lt_j = self.basis[j].leading().0.clone();
            let lcm = lt_i.lcm(&lt_j);
            let ti = lt_i.try_div(&lcm).expect("lcm divisible");
            let tj = lt_j.try_div(&lcm).expect("lcm divisible");
            // S = ti * b_i - tj * b_j with monic b's
            let spoly = sub_scaled(
                &OrdPoly {
                    terms: self.basis[i]
                        .terms
                        .iter()
                        .map(|(m, c)| (m.mul(&ti), c.clone()))
                        .collect(),
                },
                &field.one(),
                &tj,
                &self.basis[j],
                &field,
                self.order,
            );
            if spoly.is_zero() {
                continue;
            }
            self.processed += 1;
            if self.processed > self.cfg.max_pairs {
                return Err(AlgebraError::Budget(format!(
                    "S-pair budget of {} exceeded",
                    self.cfg.max_pairs
                )));
            }
            let (quotients, remainder) = divide_ord(
                spoly,
                &self.basis,
                &field,
                self.order,
                self.lifts.is_some(),
            );
            if remainder.is_zero() {
                continue;
            }
            let rep = self.lifts.as_ref().map(|lifts| {
                let n_gens = lifts.first().map(|l| l.len()).unwrap_or(0);
                let mut rep: Vec<Polynomial> = (0..n_gens)
                    .map(|g| {
                        let a = lifts[i][g].mul_term(&ti, &field.one());
                        let b = lifts[j][g].mul_term(&tj, &field.one());
                        a.sub(&b).expect("same ambient")
                    })
                    .collect();
                if let Some(qs) = &quotients {
                    for (k, q) in qs.iter().enumerate() {
                        for (m, c) in q {
                            for g in 0..n_gens {
                                let delta = lifts[k][g].mul_term(m, c);
                                rep[g] = rep[g].sub(&delta).expect("same ambient");
                            }
                        }
                    }
                }
                rep
            });
            self.add_element(remainder, rep)?;
        }
        Ok(())
    }

    // Minimal then reduced basis; keeps lifts in sync.
    fn reduce(&mut self) -> Result<(), AlgebraError> {
        let field = self.ambient.field.clone();
        // minimalize, ascending leading terms
        let mut idx: Vec<usize> = (0..self.basis.len()).collect();
        idx.sort_by(|&a, &b| {
            self.order
                .cmp(&self.basis[a].leading().0, &self.basis[b].leading().0)
                .then(a.cmp(&b))
        });
        let mut kept: Vec<usize> = Vec::new();
        for &i in &idx {
            let lt = &self.basis[i].leading().0;
            if !kept.iter().any(|&k| self.basis[k].leading().0.divides(lt)) {
                kept.push(i);
            }
        }
        let mut basis: Vec<OrdPoly> = kept.iter().map(|&i| self.basis[i].clone()).collect();
        let mut lifts = self
            .lifts
            .as_ref()
            .map(|l| kept.iter().map(|&i| l[i].clone()).collect::<Vec<_>>());

        // tail reduction to the unique reduced basis
        loop {
            let mut changed = false;
            for i in 0..basis.len() {
                let others: Vec<OrdPoly> = basis
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != i)
                    .map(|(_, g)| g.clone())
                    .collect();
                let (quotients, remainder) = divide_ord(
                    basis[i].clone(),
                    &others,
                    &field,
                    self.order,
                    lifts.is_some(),
                );
                if remainder.terms != basis[i].terms {
                    changed = true;
                    if let (Some(lifts), Some(qs)) = (lifts.as_mut(), quotients) {
                        let n_gens = lifts[i].len();
                        let mut rep = lifts[i].clone();
                        for (k_other, q) in qs.iter().enumerate() {
                            // map index in `others` back to basis index
                            let k = if k_other < i { k_other } else { k_other + 1 };
                            for (m, c) in q {
                                for g in 0..n_gens {
                                    let delta = lifts[k][g].mul_term(m, c);
                                    rep[g] = rep[g].sub(&delta).expect("same ambient");
                                }
                            }
                        }
                        lifts[i] = rep;
                    }
                    basis[i] = remainder;
                }
            }
            if !changed {
                break;
            }
        }

        // deterministic output order: ascending leading terms
        let mut order_idx: Vec<usize> = (0..basis.len()).collect();
        order_idx.sort_by(|&a, &b| self.order.cmp(&basis[a].leading().0, &basis[b].leading().0));
        self.basis = order_idx.iter().map(|&i| basis[i].clone()).collect();
        self.lifts = lifts.map(|l| order_idx.iter().map(|&i| l[i].clone()).collect());
        Ok(())
    }
}

fn check_inputs(
    gens: &[Polynomial],
    order: &MonomialOrder,
) -> Result<Option<Arc<Ambient>>, AlgebraError> {
    let Some(first) = gens.first() else {
        return Ok(None);
    };
    order.validate(first.ambient().arity())?;
    for g in gens.iter().skip(1) {
        same_ambient(first.ambient(), g.ambient())?;
    }
    Ok(Some(first.ambient().clone()))
}

fn buchberger_impl(
    gens: &[Polynomial],
    order: &MonomialOrder,
    cfg: &GroebnerConfig,
    lift: bool,
) -> Result<(Vec<Polynomial>, Option<Vec<Vec<Polynomial>>>), AlgebraError> {
    let Some(ambient) = check_inputs(gens, order)? else {
        return Ok((Vec::new(), lift.then(Vec::new)));
    };
    let mut engine = Engine {
        ambient: ambient.clone(),
        order,
        cfg,
        basis: Vec::new(),
        lifts: lift.then(Vec::new),
        queue: BinaryHeap::new(),
        processed: 0,
    };
    for (k, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let rep = lift.then(|| {
            (0..gens.len())
                .map(|i| {
                    if i == k {
                        Polynomial::one(&ambient)
                    } else {
                        Polynomial::zero(&ambient)
                    }
                })
                .collect::<Vec<_>>()
        });
        engine.add_element(to_ord(g, order), rep)?;
    }
    engine.run()?;
    engine.reduce()?;
    let basis: Vec<Polynomial> = engine
        .basis
        .iter()
        .map(|p| from_ord(&ambient, p.clone()))
        .collect();
    Ok((basis, engine.lifts))
}

/// The reduced Gröbner basis of the ideal generated by `gens` under `order`.
/// Unique for fixed inputs; every input generator reduces to zero against it.
pub fn buchberger(
    gens: &[Polynomial],
    order: &MonomialOrder,
    cfg: &GroebnerConfig,
) -> Result<Vec<Polynomial>, AlgebraError> {
    buchberger_impl(gens, order, cfg, false).map(|(b, _)| b)
}

/// A reduced Gröbner basis together with an expression of each basis element
/// as a combination of the original generators.
#[derive(Debug, Clone)]
pub struct LiftedBasis {
    pub basis: Vec<Polynomial>,
    /// `lift[k][i]` is the cofactor of `gens[i]` in `basis[k]`.
    pub lifts: Vec<Vec<Polynomial>>,
}

pub fn buchberger_lifted(
    gens: &[Polynomial],
    order: &MonomialOrder,
    cfg: &GroebnerConfig,
) -> Result<LiftedBasis, AlgebraError> {
    let (basis, lifts) = buchberger_impl(gens, order, cfg, true)?;
    Ok(LiftedBasis {
        basis,
        lifts: lifts.expect("lift tracking requested"),
    })
}

/// Remainder of `f` on division by `basis` (not necessarily a Gröbner basis):
/// no remainder term is divisible by any leading term of `basis`, and
/// `f - remainder` lies in the ideal generated by `basis`.
pub fn normal_form(
    f: &Polynomial,
    basis: &[Polynomial],
    order: &MonomialOrder,
) -> Result<Polynomial, AlgebraError> {
    Ok(divide(f, basis, order)?.remainder)
}

/// Multivariate division with quotients: `f = Σ quotients[i] * basis[i] + remainder`.
pub fn divide(
    f: &Polynomial,
    basis: &[Polynomial],
    order: &MonomialOrder,
) -> Result<Division, AlgebraError> {
    order.validate(f.ambient().arity())?;
    for g in basis {
        same_ambient(f.ambient(), g.ambient())?;
    }
    let field = f.field().clone();
    // divide against monic divisors, then fold the scaling into the quotients
    let mut scales = Vec::with_capacity(basis.len());
    let mut monic = Vec::with_capacity(basis.len());
    for g in basis {
        if g.is_zero() {
            scales.push(field.one());
            monic.push(OrdPoly { terms: Vec::new() });
            continue;
        }
        let ord = to_ord(g, order);
        let lc = ord.leading().1.clone();
        let inv = field.inv(&lc)?;
        scales.push(inv.clone());
        monic.push(OrdPoly {
            terms: ord
                .terms
                .into_iter()
                .map(|(m, c)| (m, field.mul(&c, &inv)))
                .collect(),
        });
    }
    let (quotients, remainder) = divide_ord(to_ord(f, order), &monic, &field, order, true);
    let quotients = quotients
        .expect("quotients requested")
        .into_iter()
        .zip(&scales)
        .map(|(terms, s)| {
            Polynomial::from_terms(
                f.ambient(),
                terms
                    .into_iter()
                    .map(|(m, c)| (m, field.mul(&c, s))),
            )
        })
        .collect();
    Ok(Division {
        quotients,
        remainder: from_ord(f.ambient(), remainder),
    })
}

/// Mutual reduction test: do two generating sets span the same ideal?
pub fn ideals_equal(
    a: &[Polynomial],
    b: &[Polynomial],
    order: &MonomialOrder,
    cfg: &GroebnerConfig,
) -> Result<bool, AlgebraError> {
    let ga = buchberger(a, order, cfg)?;
    let gb = buchberger(b, order, cfg)?;
    for f in a {
        if !normal_form(f, &gb, order)?.is_zero() {
            return Ok(false);
        }
    }
    for f in b {
        if !normal_form(f, &ga, order)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
