use std::fmt;

use super::probe::{probe_e_injective, ProbeReport};
use crate::eexact::{is_e_exact_at, CochainComplex};
use crate::error::{Error, Result};
use crate::fgab::{FgModule, ModMorphism};

/// An e-exact sequence `0 → M →η E^0 → E^1 → … → E^N → 0`.
#[derive(Clone)]
pub struct Resolution {
    target: FgModule,
    augmentation: ModMorphism,
    complex: CochainComplex,
    evidence: Vec<ProbeReport>,
}

impl Resolution {
    /// Validates e-exactness at `M` (position −1) and at every `E^n`.
    pub fn new(target: &FgModule, augmentation: ModMorphism, complex: CochainComplex) -> Result<Self> {
        if complex.lo() != 0 || complex.is_empty() {
            return Err(Error::DimensionMismatch("a resolution starts at degree 0 with at least one term".into()));
        }
        if augmentation.domain() != target || augmentation.codomain() != &complex.object(0) {
            return Err(Error::DimensionMismatch("augmentation must map the target into E^0".into()));
        }
        let r = Self { target: target.clone(), augmentation, complex, evidence: Vec::new() };
        if let Some(pos) = r.first_failure() {
            return Err(Error::NotEExactResolution(pos));
        }
        Ok(r)
    }

    /// Resolution-shaped data used internally where e-exactness is not needed.
    pub(crate) fn unchecked(target: &FgModule, augmentation: ModMorphism, complex: CochainComplex) -> Self {
        Self { target: target.clone(), augmentation, complex, evidence: Vec::new() }
    }

    /// `0 → E → E → 0` with the identity.
    pub fn trivial(e: &FgModule) -> Self {
        Self {
            target: e.clone(),
            augmentation: ModMorphism::identity(e),
            complex: CochainComplex::single(0, e.clone()),
            evidence: Vec::new(),
        }
    }

    /// Resolution from its augmentation and differentials.
    pub fn from_maps(target: &FgModule, augmentation: ModMorphism, maps: Vec<ModMorphism>) -> Result<Self> {
        let complex = if maps.is_empty() {
            CochainComplex::single(0, augmentation.codomain().clone())
        } else {
            CochainComplex::from_maps(0, maps)?
        };
        Self::new(target, augmentation, complex)
    }

    /// Attaches e-injectivity probes for every term.
    pub fn with_evidence(mut self, ideal_bound: u64, mono_samples: usize, seed: u64) -> Self {
        self.evidence = self
            .complex
            .objects()
            .iter()
            .enumerate()
            .map(|(k, e)| probe_e_injective(e, ideal_bound, mono_samples, seed.wrapping_add(k as u64)))
            .collect();
        self
    }

    pub fn target(&self) -> &FgModule {
        &self.target
    }

    pub fn augmentation(&self) -> &ModMorphism {
        &self.augmentation
    }

    /// The deleted complex `E^0 → … → E^N`.
    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn evidence(&self) -> &[ProbeReport] {
        &self.evidence
    }

    pub fn len(&self) -> usize {
        self.complex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }

    pub fn top(&self) -> i64 {
        self.complex.hi()
    }

    /// `M → E^0 → … → E^N` with `M` in degree −1.
    pub fn augmented(&self) -> CochainComplex {
        let mut objects = vec![self.target.clone()];
        objects.extend(self.complex.objects().iter().cloned());
        let mut maps = vec![self.augmentation.clone()];
        maps.extend(self.complex.maps().iter().cloned());
        CochainComplex::new(-1, objects, maps).expect("augmentation connects")
    }

    /// First position of the augmented sequence that is not e-exact.
    pub fn first_failure(&self) -> Option<i64> {
        let x = self.augmented();
        (x.lo()..=x.hi()).find(|&i| !is_e_exact_at(&x, i).expect("in range").holds())
    }
}

impl fmt::Debug for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Resolution(0 → {} → {:?})", self.target, self.complex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_resolution_is_valid() {
        let (z2, z8, z16) = (FgModule::cyclic(2), FgModule::cyclic(8), FgModule::cyclic(16));
        let f = ModMorphism::from_i64(&[4], &z2, &z8).unwrap();
        let g = ModMorphism::from_i64(&[8], &z8, &z16).unwrap();
        let r = Resolution::from_maps(&z2, f, vec![g]).unwrap();
        assert_eq!(r.top(), 1);
        assert_eq!(r.first_failure(), None);
    }

    #[test]
    fn failing_position_is_reported() {
        let (z2, z8) = (FgModule::cyclic(2), FgModule::cyclic(8));
        // 1 ↦ 4 then the identity: e-exactness fails at E^0 since Im = {0,4} and Ker = 0
        let f = ModMorphism::from_i64(&[4], &z2, &z8).unwrap();
        let id = ModMorphism::identity(&z8);
        assert_eq!(Resolution::from_maps(&z2, f, vec![id]).unwrap_err(), Error::NotEExactResolution(0));
        let zero = ModMorphism::zero(&z2, &z8);
        assert_eq!(Resolution::from_maps(&z2, zero, vec![]).unwrap_err(), Error::NotEExactResolution(-1));
    }

    #[test]
    fn trivial_resolution() {
        let r = Resolution::trivial(&FgModule::cyclic(6)).with_evidence(4, 1, 0);
        assert_eq!(r.first_failure(), None);
        assert_eq!(r.evidence().len(), 1);
    }
}
