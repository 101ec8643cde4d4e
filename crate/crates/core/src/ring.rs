//! Quotient-ring presentations `k[X]/J`, ideal membership with witnesses, and
//! validated ring homomorphisms.

use std::sync::Arc;

use crate::error::AlgebraError;
use crate::groebner::{self, GroebnerConfig};
use crate::ideal::Ideal;
use crate::monomial::MonomialOrder;
use crate::poly::{same_ambient, Ambient, Polynomial};

/// A presented ring `R = k[X_1..X_n] / J`. Elements are represented by
/// polynomials; canonical representatives are normal forms modulo a Gröbner
/// basis of `J`. Construction rejects presentations where `1 ∈ J`.
#[derive(Debug, Clone, PartialEq)]
pub struct RingPresentation {
    ambient: Arc<Ambient>,
    relations: Ideal,
}

impl RingPresentation {
    /// Builds the presentation and eagerly computes the relation basis under
    /// the default order, rejecting improper relation ideals.
    pub fn new(
        ambient: &Arc<Ambient>,
        relations: Ideal,
        cfg: &GroebnerConfig,
    ) -> Result<Self, AlgebraError> {
        same_ambient(ambient, relations.ambient())?;
        let basis = relations.groebner(&MonomialOrder::default(), cfg)?;
        if basis.iter().any(|g| g.is_constant() && !g.is_zero()) {
            return Err(AlgebraError::ImproperRelations);
        }
        Ok(RingPresentation {
            ambient: ambient.clone(),
            relations,
        })
    }

    /// The polynomial ring itself (no relations).
    pub fn polynomial_ring(ambient: &Arc<Ambient>) -> Self {
        RingPresentation {
            ambient: ambient.clone(),
            relations: Ideal::zero(ambient),
        }
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    /// True when the presentation has no (nonzero) relations.
    pub fn is_polynomial_ring(&self) -> bool {
        self.relations.is_zero_ideal()
    }

    /// Canonical representative of `f` in the quotient.
    pub fn normal_form(
        &self,
        f: &Polynomial,
        order: &MonomialOrder,
        cfg: &GroebnerConfig,
    ) -> Result<Polynomial, AlgebraError> {
        same_ambient(&self.ambient, f.ambient())?;
        let basis = self.relations.groebner(order, cfg)?;
        groebner::normal_form(f, &basis, order)
    }

    /// True when `f` is zero in the quotient ring.
    pub fn is_zero_in_quotient(
        &self,
        f: &Polynomial,
        order: &MonomialOrder,
        cfg: &GroebnerConfig,
    ) -> Result<bool, AlgebraError> {
        Ok(self.normal_form(f, order, cfg)?.is_zero())
    }

    /// Decides `f ∈ I` in this quotient ring (that is, membership in
    /// `I + relations` upstairs) exactly, without witness cofactors.
    pub fn ideal_membership(
        &self,
        f: &Polynomial,
        ideal: &Ideal,
        order: &MonomialOrder,
        cfg: &GroebnerConfig,
    ) -> Result<bool, AlgebraError> {
        same_ambient(&self.ambient, f.ambient())?;
        let combined = ideal.sum(&self.relations)?;
        let basis = combined.groebner(order, cfg)?;
        Ok(groebner::normal_form(f, &basis, order)?.is_zero())
    }

    /// Membership with a witness: on success returns cofactors `h_i`, one per
    /// generator of `ideal`, with `f - Σ h_i g_i ≡ 0` modulo the relations.
    pub fn ideal_membership_witnessed(
        &self,
        f: &Polynomial,
        ideal: &Ideal,
        order: &MonomialOrder,
        cfg: &GroebnerConfig,
    ) -> Result<Membership, AlgebraError> {
        same_ambient(&self.ambient, f.ambient())?;
        let mut combined = ideal.gens().to_vec();
        combined.extend(self.relations.gens().iter().cloned());
        let lifted = groebner::buchberger_lifted(&combined, order, cfg)?;
        let division = groebner::divide(f, &lifted.basis, order)?;
        if !division.remainder.is_zero() {
            return Ok(Membership {
                member: false,
                witness: None,
            });
        }
        // compose division quotients with the basis lifts, keeping only the
        // cofactors of the ideal generators (relation cofactors vanish in R)
        let n = ideal.gens().len();
        let mut witness = vec![Polynomial::zero(&self.ambient); n];
        for (k, q) in division.quotients.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for (i, w) in witness.iter_mut().enumerate().take(n) {
                let delta = q.mul(&lifted.lifts[k][i])?;
                *w = w.add(&delta)?;
            }
        }
        Ok(Membership {
            member: true,
            witness: Some(witness),
        })
    }
}

/// Outcome of an exact membership query.
#[derive(Debug, Clone)]
pub struct Membership {
    pub member: bool,
    /// Cofactors aligned with the ideal's generators; `Σ h_i g_i ≡ f` modulo
    /// the ring's relations.
    pub witness: Option<Vec<Polynomial>>,
}

/// A ring homomorphism `source → target` given by the images of the source
/// variables. Use [`validate_hom`] to obtain a [`ValidatedHom`] before
/// applying it.
#[derive(Debug, Clone, PartialEq)]
pub struct RingHom {
    pub source: RingPresentation,
    pub target: RingPresentation,
    /// One target polynomial per source variable.
    pub images: Vec<Polynomial>,
}

/// Proof record for one relation: its image and the (zero) normal form.
#[derive(Debug, Clone)]
pub struct RelationCheck {
    pub relation: Polynomial,
    pub image: Polynomial,
    pub normal_form: Polynomial,
}

/// A homomorphism that has been checked to send every source relation to zero
/// in the target. Carries the per-relation proof log.
#[derive(Debug, Clone)]
pub struct ValidatedHom {
    hom: RingHom,
    checks: Vec<RelationCheck>,
}

/// Validates a homomorphism: image count, matching coefficient fields, and
/// every source relation mapping to normal form zero in the target. The error
/// names the first offending relation and its nonzero normal form.
pub fn validate_hom(
    hom: RingHom,
    order: &MonomialOrder,
    cfg: &GroebnerConfig,
) -> Result<ValidatedHom, AlgebraError> {
    let n = hom.source.ambient().arity();
    if hom.images.len() != n {
        return Err(AlgebraError::HomImageCount {
            expected: n,
            found: hom.images.len(),
        });
    }
    if hom.source.ambient().field != hom.target.ambient().field {
        return Err(AlgebraError::AmbientMismatch(
            "source and target coefficient fields differ".into(),
        ));
    }
    for img in &hom.images {
        same_ambient(hom.target.ambient(), img.ambient())?;
    }
    let mut checks = Vec::new();
    for rel in hom.source.relations().gens() {
        let image = substitute(rel, hom.target.ambient(), &hom.images)?;
        let nf = hom.target.normal_form(&image, order, cfg)?;
        if !nf.is_zero() {
            return Err(AlgebraError::HomRelationNotPreserved {
                relation: rel.to_string(),
                normal_form: nf.to_string(),
            });
        }
        checks.push(RelationCheck {
            relation: rel.clone(),
            image,
            normal_form: nf,
        });
    }
    Ok(ValidatedHom { hom, checks })
}

/// The identity homomorphism on a presentation (always valid).
pub fn identity_hom(ring: &RingPresentation) -> RingHom {
    let images = (0..ring.ambient().arity())
        .map(|i| Polynomial::var(ring.ambient(), i))
        .collect();
    RingHom {
        source: ring.clone(),
        target: ring.clone(),
        images,
    }
}

impl ValidatedHom {
    pub fn hom(&self) -> &RingHom {
        &self.hom
    }

    pub fn source(&self) -> &RingPresentation {
        &self.hom.source
    }

    pub fn target(&self) -> &RingPresentation {
        &self.hom.target
    }

    pub fn checks(&self) -> &[RelationCheck] {
        &self.checks
    }

    /// Applies the homomorphism: substitution of variable images followed by
    /// normal form modulo the target relations.
    pub fn apply(
        &self,
        f: &Polynomial,
        order: &MonomialOrder,
        cfg: &GroebnerConfig,
    ) -> Result<Polynomial, AlgebraError> {
        same_ambient(self.hom.source.ambient(), f.ambient())?;
        let image = substitute(f, self.hom.target.ambient(), &self.hom.images)?;
        self.hom.target.normal_form(&image, order, cfg)
    }

    /// Applies the homomorphism to every generator of an ideal.
    pub fn apply_ideal(
        &self,
        ideal: &Ideal,
        order: &MonomialOrder,
        cfg: &GroebnerConfig,
    ) -> Result<Ideal, AlgebraError> {
        let gens = ideal
            .gens()
            .iter()
            .map(|g| self.apply(g, order, cfg))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(self.hom.target.ambient(), gens)
    }

    /// Composition `other ∘ self` (apply `self` first). The composite is
    /// re-validated from scratch.
    pub fn compose(
        &self,
        other: &ValidatedHom,
        order: &MonomialOrder,
        cfg: &GroebnerConfig,
    ) -> Result<ValidatedHom, AlgebraError> {
        if self.hom.target != other.hom.source {
            return Err(AlgebraError::AmbientMismatch(
                "composition requires matching middle presentation".into(),
            ));
        }
        let images = self
            .hom
            .images
            .iter()
            .map(|img| other.apply(img, order, cfg))
            .collect::<Result<Vec<_>, _>>()?;
        validate_hom(
            RingHom {
                source: self.hom.source.clone(),
                target: other.hom.target.clone(),
                images,
            },
            order,
            cfg,
        )
    }
}

/// Substitutes `images[i]` for variable `i` of `f`, producing a polynomial in
/// the target ambient. Powers of each image are built incrementally and
/// shared across terms.
fn substitute(
    f: &Polynomial,
    target: &Arc<Ambient>,
    images: &[Polynomial],
) -> Result<Polynomial, AlgebraError> {
    let src_arity = f.ambient().arity();
    if images.len() != src_arity {
        return Err(AlgebraError::HomImageCount {
            expected: src_arity,
            found: images.len(),
        });
    }
    // powers[i][k] = images[i]^k, built on demand
    let mut powers: Vec<Vec<Polynomial>> = images
        .iter()
        .map(|img| vec![Polynomial::one(target), img.clone()])
        .collect();
    let coeff_in_target = |c: &crate::field::Coeff| -> Polynomial {
        Polynomial::constant(target, c.clone())
    };
    let mut acc = Polynomial::zero(target);
    for (m, c) in f.terms() {
        let mut term = coeff_in_target(c);
        for i in m.support() {
            let e = m.exponent(i) as usize;
            while powers[i].len() <= e {
                let next = powers[i].last().unwrap().mul(&images[i])?;
                powers[i].push(next);
            }
            term = term.mul(&powers[i][e])?;
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}
