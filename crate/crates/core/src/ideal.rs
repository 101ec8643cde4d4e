//! Ideals with a write-once cached Gröbner basis.

use once_cell::sync::OnceCell;
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::groebner::{self, GroebnerConfig};
use crate::monomial::MonomialOrder;
use crate::poly::{same_ambient, Ambient, Polynomial};

/// A finitely generated ideal in the ambient polynomial ring. The first
/// Gröbner basis computed for it is cached together with its order; the cache
/// is write-once and the cached basis generates the same ideal as `gens`.
#[derive(Debug, Clone)]
pub struct Ideal {
    ambient: Arc<Ambient>,
    gens: Vec<Polynomial>,
    cache: OnceCell<(MonomialOrder, Vec<Polynomial>)>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.gens == other.gens
    }
}

impl Ideal {
    pub fn new(ambient: &Arc<Ambient>, gens: Vec<Polynomial>) -> Result<Self, AlgebraError> {
        for g in &gens {
            same_ambient(ambient, g.ambient())?;
        }
        Ok(Ideal {
            ambient: ambient.clone(),
            gens,
            cache: OnceCell::new(),
        })
    }

    /// The zero ideal.
    pub fn zero(ambient: &Arc<Ambient>) -> Self {
        Ideal {
            ambient: ambient.clone(),
            gens: Vec::new(),
            cache: OnceCell::new(),
        }
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// True when every generator is the zero polynomial.
    pub fn is_zero_ideal(&self) -> bool {
        self.gens.iter().all(|g| g.is_zero())
    }

    /// Reduced Gröbner basis under `order`. The first computed basis is
    /// cached; queries under a different order recompute without caching.
    pub fn groebner(
        &self,
        order: &MonomialOrder,
        cfg: &GroebnerConfig,
    ) -> Result<Vec<Polynomial>, AlgebraError> {
        if let Some((cached_order, basis)) = self.cache.get() {
            if cached_order == order {
                return Ok(basis.clone());
            }
            return groebner::buchberger(&self.gens, order, cfg);
        }
        let basis = groebner::buchberger(&self.gens, order, cfg)?;
        let _ = self.cache.set((order.clone(), basis.clone()));
        Ok(basis)
    }

    /// The sum ideal `self + other` (concatenated generators).
    pub fn sum(&self, other: &Ideal) -> Result<Ideal, AlgebraError> {
        same_ambient(&self.ambient, &other.ambient)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ambient, gens)
    }

    /// The product ideal, generated by pairwise products of generators.
    pub fn product(&self, other: &Ideal) -> Result<Ideal, AlgebraError> {
        same_ambient(&self.ambient, &other.ambient)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b)?);
            }
        }
        Ideal::new(&self.ambient, gens)
    }

    /// Mutual-reduction equality of ideals.
    pub fn equals(
        &self,
        other: &Ideal,
        order: &MonomialOrder,
        cfg: &GroebnerConfig,
    ) -> Result<bool, AlgebraError> {
        same_ambient(&self.ambient, &other.ambient)?;
        groebner::ideals_equal(&self.gens, &other.gens, order, cfg)
    }
}
