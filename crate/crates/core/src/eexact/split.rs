use num_bigint::BigInt;
use num_traits::Zero;

use super::{is_short_e_exact, ScalarWitness, ShortSequence};
use crate::error::{Error, Result};
use crate::fgab::{is_isomorphic, FgModule, IsoVerdict, ModMorphism, Submodule};
use crate::ladder::{bound, ladder};

/// `r·B`, the image of multiplication by `r`.
pub fn scaled_submodule(b: &FgModule, r: &BigInt) -> Submodule {
    ModMorphism::multiplication(b, r).image()
}

#[derive(Clone, Debug)]
pub struct ESplitReport {
    /// Certifies `p∘j = s·id_C`.
    pub split: ScalarWitness,
    /// The first ladder value with `rB ≅ A ⊕ C`.
    pub r: BigInt,
    pub rb: FgModule,
    pub target: FgModule,
    pub iso: IsoVerdict,
    /// Ladder values examined, including the successful one.
    pub tried: usize,
}

/// Verifies `p∘j = s·id_C` and searches the ladder for `r` with
/// `rB ≅ A ⊕ C`.
pub fn check_e_split(s: &ShortSequence, j: &ModMorphism, scalar: &BigInt, cap: Option<&BigInt>) -> Result<ESplitReport> {
    if !is_short_e_exact(s).holds() {
        return Err(Error::Precondition("sequence is not short e-exact".into()));
    }
    if j.domain() != s.c() || j.codomain() != s.b() {
        return Err(Error::DimensionMismatch("section must map C → B".into()));
    }
    let pj = s.g().compose(j)?;
    let id = ModMorphism::identity(s.c());
    if scalar.is_zero() || !pj.equals(&id.scale(scalar)) {
        return Err(Error::NotESplit { scalar: scalar.clone() });
    }
    let split = ScalarWitness::new(scalar.clone(), "p∘j = s·id_C", pj, id);
    let target = FgModule::direct_sum(&[s.a().clone(), s.c().clone()]);
    let candidates = ladder(&s.b().torsion_exponent(), cap);
    for (k, r) in candidates.iter().enumerate() {
        let rb = scaled_submodule(s.b(), r).source().clone();
        let iso = is_isomorphic(&rb, &target);
        if iso.isomorphic {
            return Ok(ESplitReport { split, r: r.clone(), rb, target, iso, tried: k + 1 });
        }
    }
    Err(Error::WitnessNotFound { bound: bound(&candidates) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::{summand_inclusion, summand_projection};

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn split_sequence(parts: &[FgModule]) -> (ShortSequence, ModMorphism) {
        let f = summand_inclusion(parts, 0);
        let g = summand_projection(parts, 1);
        let j = summand_inclusion(parts, 1);
        (ShortSequence::new(f, g).unwrap(), j)
    }

    #[test]
    fn split_sequence_has_witness_one() {
        let (s, j) = split_sequence(&[FgModule::cyclic(2), FgModule::cyclic(3)]);
        let rep = check_e_split(&s, &j, &b(1), None).unwrap();
        assert_eq!(rep.r, b(1));
        assert!(rep.split.replay());
    }

    #[test]
    fn scaled_section() {
        let (s, j) = split_sequence(&[FgModule::cyclic(5), FgModule::cyclic(7)]);
        let j3 = j.scale(&b(3));
        let rep = check_e_split(&s, &j3, &b(3), None).unwrap();
        assert!(rep.iso.isomorphic);
        assert!(check_e_split(&s, &j3, &b(1), None).is_err());
    }

    #[test]
    fn doubling_sequence_has_no_witness() {
        let z = FgModule::free(1);
        let z2 = FgModule::cyclic(2);
        let s = ShortSequence::new(ModMorphism::multiplication(&z, &b(2)), ModMorphism::from_i64(&[1], &z, &z2).unwrap()).unwrap();
        // the only map Z/2 → Z is zero, so p∘j = 0 = 2·id
        let j = ModMorphism::zero(&z2, &z);
        assert_eq!(check_e_split(&s, &j, &b(1), None).unwrap_err(), Error::NotESplit { scalar: b(1) });
        let err = check_e_split(&s, &j, &b(2), Some(&b(16))).unwrap_err();
        assert_eq!(err, Error::WitnessNotFound { bound: b(16) });
        for r in 1..=16 {
            assert!(!is_isomorphic(scaled_submodule(&z, &b(r)).source(), &FgModule::direct_sum(&[z.clone(), z2.clone()])).isomorphic);
        }
    }
}
