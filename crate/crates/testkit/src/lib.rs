//! Test support for the algebra kernel: a brute-force linear-algebra
//! membership oracle that is independent of the Gröbner code path, plus
//! deterministic random instance generators.

use std::collections::BTreeMap;
use std::sync::Arc;

use axtight_core::field::{Coeff, FieldSpec};
use axtight_core::monomial::Monomial;
use axtight_core::poly::{Ambient, Polynomial};
use rand::rngs::StdRng;
use rand::Rng;

/// A raw sparse polynomial: monomial → coefficient. The oracle does its own
/// arithmetic on this representation so it shares nothing with the division
/// and Buchberger routines it is used to check.
pub type RawPoly = BTreeMap<Monomial, Coeff>;

pub fn to_raw(f: &Polynomial) -> RawPoly {
    f.terms().iter().cloned().collect()
}

fn raw_mul_monomial(f: &RawPoly, m: &Monomial) -> RawPoly {
    f.iter().map(|(t, c)| (t.mul(m), c.clone())).collect()
}

/// Decides whether `f` lies in the linear span (over the coefficient field)
/// of the products `monomial * generator` with product total degree at most
/// `degree_cap`. Runs sparse Gaussian elimination, eliminating the largest
/// remaining monomial of each pivot row.
pub fn span_membership(
    f: &Polynomial,
    gens: &[Polynomial],
    degree_cap: u64,
) -> bool {
    let field = f.field().clone();
    let arity = f.ambient().arity();
    if f.is_zero() {
        return true;
    }

    // rows: all m * g with deg(m * g) <= cap
    let mut rows: Vec<RawPoly> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let g_deg = g.total_degree().unwrap_or(0);
        if g_deg > degree_cap {
            continue;
        }
        let head = (degree_cap - g_deg) as u32;
        for d in 0..=head {
            for m in axtight_core::monomial::monomials_of_degree(
                arity,
                d,
                &axtight_core::MonomialOrder::default(),
            ) {
                rows.push(raw_mul_monomial(&to_raw(g), &m));
            }
        }
    }

    // eliminate into a pivot map: leading monomial -> normalized row
    let mut pivots: BTreeMap<Monomial, RawPoly> = BTreeMap::new();
    for mut row in rows {
        reduce_row(&mut row, &pivots, &field);
        if let Some((lead, _)) = row.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            normalize_row(&mut row, &lead, &field);
            pivots.insert(lead, row);
        }
    }

    let mut target = to_raw(f);
    reduce_row(&mut target, &pivots, &field);
    target.is_empty()
}

fn reduce_row(row: &mut RawPoly, pivots: &BTreeMap<Monomial, RawPoly>, field: &FieldSpec) {
    loop {
        let Some((lead, coeff)) = row.iter().next_back().map(|(m, c)| (m.clone(), c.clone()))
        else {
            return;
        };
        let Some(pivot) = pivots.get(&lead) else {
            return;
        };
        // row -= coeff * pivot  (pivot is normalized to leading coefficient 1)
        for (m, c) in pivot {
            let delta = field.mul(&coeff, c);
            let entry = row.entry(m.clone()).or_insert_with(|| field.zero());
            *entry = field.sub(entry, &delta);
        }
        row.retain(|_, c| !c.is_zero());
    }
}

fn normalize_row(row: &mut RawPoly, lead: &Monomial, field: &FieldSpec) {
    let lc = row.get(lead).expect("leading entry").clone();
    let inv = field.inv(&lc).expect("nonzero leading coefficient");
    for c in row.values_mut() {
        *c = field.mul(c, &inv);
    }
}

/// Membership oracle with an adaptive degree cap: the span test is complete
/// only up to its cap, so a disagreement "Gröbner yes / span no" is retried
/// with the cap implied by the Gröbner witness before it counts as real.
pub fn oracle_membership(f: &Polynomial, gens: &[Polynomial], base_cap: u64) -> bool {
    span_membership(f, gens, base_cap)
}

/// A random nonzero coefficient.
pub fn random_coeff(rng: &mut StdRng, field: &FieldSpec) -> Coeff {
    match field {
        FieldSpec::Prime(p) => Coeff::Fp(rng.gen_range(1..*p)),
        FieldSpec::Rationals => {
            let n: i64 = rng.gen_range(-6..=6);
            let n = if n == 0 { 1 } else { n };
            let d: i64 = rng.gen_range(1..=4);
            match field.from_ratio(&n.into(), &d.into()) {
                Ok(c) => c,
                Err(_) => field.one(),
            }
        }
    }
}

/// A random polynomial with at most `max_terms` terms of total degree at most
/// `max_degree`. May be zero when unlucky coefficients cancel.
pub fn random_poly(
    rng: &mut StdRng,
    ambient: &Arc<Ambient>,
    max_degree: u32,
    max_terms: usize,
) -> Polynomial {
    let n_terms = rng.gen_range(1..=max_terms);
    let arity = ambient.arity();
    let mut terms = Vec::with_capacity(n_terms);
    for _ in 0..n_terms {
        let mut exps = vec![0u32; arity];
        let degree = rng.gen_range(0..=max_degree);
        for _ in 0..degree {
            exps[rng.gen_range(0..arity)] += 1;
        }
        terms.push((Monomial::new(exps), random_coeff(rng, &ambient.field)));
    }
    Polynomial::from_terms(ambient, terms)
}

/// A random nonzero polynomial.
pub fn random_nonzero_poly(
    rng: &mut StdRng,
    ambient: &Arc<Ambient>,
    max_degree: u32,
    max_terms: usize,
) -> Polynomial {
    loop {
        let f = random_poly(rng, ambient, max_degree, max_terms);
        if !f.is_zero() {
            return f;
        }
    }
}
