//! e-injectivity: extension problems, e-Baer probes, comparison lifts,
//! e-homotopies and the horseshoe construction.

mod extend;
mod horseshoe;
mod lift;
mod probe;
mod resolution;

pub use extend::{
    baer_extend, canonical_baer_witness, essential_extend, extend_along, relevant_exponent, BaerExtension, Extension,
};
pub use horseshoe::{horseshoe, Horseshoe};
pub use lift::{comparison_lift, homotopy_witness, ChainLift, HomotopyWitness, LiftOptions};
pub use probe::{probe_e_injective, BaerProbe, ExtensionProbe, ProbeReport, PROBE_NOTE};
pub use resolution::Resolution;

pub(crate) use extend::{order_mod_image, solve_preimage};

use num_bigint::BigInt;

use crate::eexact::{is_short_e_exact, ShortSequence};
use crate::error::{Error, Result};
use crate::fgab::ModMorphism;

/// For `0 → E →i B → C → 0` e-exact with `E` torsion-free, a retraction
/// `g: B → E` with `g∘i = r·id_E`.
pub fn retraction_split(s: &ShortSequence, cap: Option<&BigInt>) -> Result<Extension> {
    if !s.a().is_torsion_free() {
        return Err(Error::Precondition("the first module must be torsion-free".into()));
    }
    if !is_short_e_exact(s).holds() {
        return Err(Error::Precondition("sequence is not short e-exact".into()));
    }
    let mut ext = essential_extend(s.f(), &ModMorphism::identity(s.a()), cap)?;
    ext.witness.relation = "g∘i = r·id_E".into();
    Ok(ext)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::FgModule;

    #[test]
    fn split_retraction() {
        let z = FgModule::free(1);
        let z2 = FgModule::free(2);
        let i = ModMorphism::from_i64(&[1, 0], &z, &z2).unwrap();
        let p = ModMorphism::from_i64(&[0, 1], &z2, &z).unwrap();
        let ext = retraction_split(&ShortSequence::new(i, p).unwrap(), None).unwrap();
        assert_eq!(ext.witness.r, BigInt::from(1));
        assert!(ext.witness.replay());
    }

    #[test]
    fn doubling_retraction() {
        let z = FgModule::free(1);
        let z2 = FgModule::cyclic(2);
        let s = ShortSequence::new(ModMorphism::multiplication(&z, &BigInt::from(2)), ModMorphism::from_i64(&[1], &z, &z2).unwrap()).unwrap();
        let ext = retraction_split(&s, None).unwrap();
        assert_eq!(ext.witness.r, BigInt::from(2));
        assert!(ext.f3.equals(&ModMorphism::identity(&z)));
    }

    #[test]
    fn torsion_gate() {
        let z2 = FgModule::cyclic(2);
        let id = ModMorphism::identity(&z2);
        let s = ShortSequence::new(id.clone(), ModMorphism::zero(&z2, &FgModule::zero())).unwrap();
        assert!(matches!(retraction_split(&s, None), Err(Error::Precondition(_))));
    }
}
