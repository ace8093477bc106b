use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::eexact::ScalarWitness;
use crate::error::{Error, Result};
use crate::fgab::{induced_hom, FgModule, LinearSolver, ModElement, ModMorphism, Order};
use crate::ladder::{bound, ladder};

/// Order of the class of `x` in `coker(f)`, or `None` when infinite.
pub(crate) fn order_mod_image(f: &ModMorphism, x: &[BigInt]) -> Option<BigInt> {
    let coker = f.cokernel();
    match coker.module.element(x.to_vec()).expect("shape").order() {
        Order::Finite(n) => Some(n),
        Order::Infinite => None,
    }
}

/// `y` with `f(y) = x` in the codomain, if any.
pub(crate) fn solve_preimage(f: &ModMorphism, x: &[BigInt]) -> Option<Vec<BigInt>> {
    let system = f.matrix().hstack(f.codomain().relations());
    let sol = LinearSolver::new(&system).solve(x)?;
    Some(f.domain().reduce(&sol[..f.domain().num_generators()]))
}

/// Solution of an extension problem along `f1`.
#[derive(Clone, Debug)]
pub struct Extension {
    /// Certifies `f3∘f1 = r·f2`.
    pub witness: ScalarWitness,
    pub f3: ModMorphism,
    /// Generator of the ideal of admissible scalars.
    pub minimal: BigInt,
}

/// Exponent governing the scalar search for extensions along `f1` into `E`:
/// `lcm` of the torsion exponents of `E` and of `coker f1`.
pub fn relevant_exponent(f1: &ModMorphism, e: &FgModule) -> BigInt {
    e.torsion_exponent().lcm(&f1.cokernel().module.torsion_exponent())
}

/// Finds `r` in `candidates` and `f3: A2 → E` with `f3∘f1 = r·f2`; `f1`
/// need not be monic. The admissible `r` form the ideal generated by the
/// order of `[f2]` in the cokernel of precomposition with `f1`.
pub fn extend_along(f1: &ModMorphism, f2: &ModMorphism, candidates: &[BigInt]) -> Result<Extension> {
    if f1.domain() != f2.domain() {
        return Err(Error::DimensionMismatch("f1 and f2 must share their domain".into()));
    }
    let e = f2.codomain();
    let (h2, h1, star) = induced_hom(f1, e);
    let x = h1.coordinates(f2)?;
    let fail = || Error::ProbeFailure { bound: bound(candidates), stage: None };
    let minimal = order_mod_image(&star, &x).ok_or_else(fail)?;
    let r = candidates.iter().find(|c| c.is_multiple_of(&minimal)).cloned().ok_or_else(fail)?;
    let target: Vec<BigInt> = x.iter().map(|v| v * &r).collect();
    let coords = solve_preimage(&star, &target).expect("r lies in the admissible ideal");
    let f3 = h2.evaluate(&coords);
    let lhs = f3.compose(f1)?;
    let witness = ScalarWitness::new(r, "f3∘f1 = r·f2", lhs, f2.clone());
    debug_assert!(witness.replay());
    Ok(Extension { witness, f3, minimal })
}

/// Extension along a monic `f1` with the default ladder up to `cap`.
pub fn essential_extend(f1: &ModMorphism, f2: &ModMorphism, cap: Option<&BigInt>) -> Result<Extension> {
    if !f1.is_monic() {
        return Err(Error::NotMonic);
    }
    let candidates = ladder(&relevant_exponent(f1, f2.codomain()), cap);
    extend_along(f1, f2, &candidates)
}

/// Solution of an ideal extension problem `nZ → E`.
#[derive(Clone, Debug)]
pub struct BaerExtension {
    /// Certifies `g∘i = r·f`, with `i: Z → Z` the inclusion `1 ↦ n` of the ideal.
    pub witness: ScalarWitness,
    /// `g: Z → E`.
    pub g: ModMorphism,
}

impl BaerExtension {
    pub fn r(&self) -> &BigInt {
        &self.witness.r
    }

    /// `g(1)` in generator coordinates of `E`.
    pub fn value(&self) -> Vec<BigInt> {
        self.g.matrix().column(0)
    }
}

fn ideal_maps(n: &BigInt, v: &ModElement) -> (FgModule, ModMorphism, ModMorphism) {
    let z = FgModule::free(1);
    let i = ModMorphism::multiplication(&z, n);
    let f = value_map(&z, v);
    (z, i, f)
}

fn value_map(z: &FgModule, v: &ModElement) -> ModMorphism {
    let m = crate::fgab::IntMatrix::from_columns(v.module().num_generators(), &[v.coords().to_vec()]);
    ModMorphism::new(m, z, v.module()).expect("maps out of Z are unconstrained")
}

/// e-Baer extension: given the value `v = f(n)` of a map `f: nZ → E`,
/// returns `g: Z → E` and the least positive `r` with `g(n) = r·v`.
///
/// `r` is the order of `v` in `E/nE`; it divides `n`, and the canonical
/// choice `g(1) = ±v`, `r = |n|` always works.
pub fn baer_extend(n: &BigInt, v: &ModElement) -> Result<BaerExtension> {
    if n.is_zero() {
        return Err(Error::Precondition("the ideal generator must be nonzero".into()));
    }
    let e = v.module();
    let (z, i, f) = ideal_maps(n, v);
    let times_n = ModMorphism::multiplication(e, n);
    let r = order_mod_image(&times_n, v.coords()).expect("n kills E/nE");
    let target: Vec<BigInt> = v.coords().iter().map(|c| c * &r).collect();
    let y = solve_preimage(&times_n, &target).expect("r·v lies in nE");
    let g = value_map(&z, &e.element(y)?);
    let witness = ScalarWitness::new(r, "g∘i = r·f", g.compose(&i)?, f);
    debug_assert!(witness.replay());
    Ok(BaerExtension { witness, g })
}

/// The canonical e-Baer witness `g(1) = sign(n)·v`, `r = |n|`.
pub fn canonical_baer_witness(n: &BigInt, v: &ModElement) -> Result<BaerExtension> {
    if n.is_zero() {
        return Err(Error::Precondition("the ideal generator must be nonzero".into()));
    }
    let (z, i, f) = ideal_maps(n, v);
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let g = value_map(&z, &v.scale(&sign));
    let witness = ScalarWitness::new(n.abs(), "g∘i = r·f", g.compose(&i)?, f);
    Ok(BaerExtension { witness, g })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn baer_examples() {
        let z = FgModule::free(1);
        let e = baer_extend(&b(2), &z.element_i64(&[3]).unwrap()).unwrap();
        assert_eq!((e.r().clone(), e.value()), (b(2), vec![b(3)]));
        let e = baer_extend(&b(4), &z.element_i64(&[20]).unwrap()).unwrap();
        assert_eq!((e.r().clone(), e.value()), (b(1), vec![b(5)]));
        let z8 = FgModule::cyclic(8);
        let e = baer_extend(&b(2), &z8.element_i64(&[1]).unwrap()).unwrap();
        assert_eq!(e.r(), &b(2));
        assert!(e.witness.replay());
        // brute force over g(1) ∈ Z/8 and r ∈ 1..8
        let best = (1..=8).find(|&r| (0..8).any(|y| (2 * y - r) % 8 == 0)).unwrap();
        assert_eq!(b(best), *e.r());
    }

    #[test]
    fn canonical_witness_with_negative_generator() {
        let z6 = FgModule::cyclic(6);
        let w = canonical_baer_witness(&b(-4), &z6.element_i64(&[5]).unwrap()).unwrap();
        assert_eq!(w.r(), &b(4));
        assert!(w.witness.replay());
    }

    #[test]
    fn identity_extension() {
        let m = FgModule::direct_sum(&[FgModule::cyclic(4), FgModule::free(1)]);
        let e = FgModule::cyclic(6);
        let f2 = ModMorphism::from_i64(&[3, 2], &m, &e).unwrap();
        let x = essential_extend(&ModMorphism::identity(&m), &f2, None).unwrap();
        assert_eq!(x.witness.r, b(1));
        assert!(x.f3.equals(&f2));
    }

    #[test]
    fn extension_along_doubling() {
        let z = FgModule::free(1);
        let f1 = ModMorphism::multiplication(&z, &b(2));
        let f2 = ModMorphism::multiplication(&z, &b(3));
        let x = essential_extend(&f1, &f2, None).unwrap();
        assert_eq!(x.witness.r, b(2));
        assert_eq!(x.f3.matrix().column(0), vec![b(3)]);
    }

    #[test]
    fn extension_from_z2_into_z8() {
        let (z2, z8) = (FgModule::cyclic(2), FgModule::cyclic(8));
        let f1 = ModMorphism::from_i64(&[4], &z2, &z8).unwrap();
        let f2 = ModMorphism::identity(&z2);
        let x = essential_extend(&f1, &f2, None).unwrap();
        assert_eq!(x.witness.r, b(2));
        assert!(x.witness.replay());
        // exhaustive: f3(1) ∈ Z/2, r ∈ 1..4
        let ok: Vec<(i64, i64)> = (0..2)
            .flat_map(|y| (1..=4).map(move |r| (y, r)))
            .filter(|&(y, r): &(i64, i64)| (4 * y - r).rem_euclid(2) == 0)
            .collect();
        assert_eq!(ok.iter().map(|p| p.1).min(), Some(2));
    }

    #[test]
    fn non_monic_is_rejected() {
        let z4 = FgModule::cyclic(4);
        let two = ModMorphism::multiplication(&z4, &b(2));
        assert_eq!(essential_extend(&two, &ModMorphism::identity(&z4), None).unwrap_err(), Error::NotMonic);
    }

    #[test]
    fn starved_ladder_fails() {
        let z = FgModule::free(1);
        let f1 = ModMorphism::multiplication(&z, &b(5));
        let f2 = ModMorphism::identity(&z);
        let err = essential_extend(&f1, &f2, Some(&b(4))).unwrap_err();
        assert_eq!(err, Error::ProbeFailure { bound: b(4), stage: None });
    }
}
