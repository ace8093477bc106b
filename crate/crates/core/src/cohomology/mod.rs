//! The torsion functor `Γ_a`, cohomology of complexes and e-cohomology.

mod long;

pub use long::{long_sequence_verify, ConnectingMap, LongSequenceReport};

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::coprime_split;
use crate::eexact::{e_exact_pair, is_short_e_exact, CochainComplex, EExactVerdict, ShortReport, ShortSequence};
use crate::einjective::Resolution;
use crate::error::{Error, Result};
use crate::fgab::{is_isomorphic, subquotient, FgModule, IntMatrix, ModMorphism, Submodule};

/// The ideal `nZ`, stored as `|n|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal(BigInt);

pub const UNIT_IDEAL_WARNING: &str = "unit ideal: a^k·x = 0 forces x = 0, so Γ is the zero functor";

impl Ideal {
    pub fn new(n: impl Into<BigInt>) -> Self {
        Ideal(n.into().abs())
    }

    pub fn generator(&self) -> &BigInt {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_one()
    }

    /// Warning attached to results over this ideal, if any.
    pub fn warning(&self) -> Option<&'static str> {
        self.is_unit().then_some(UNIT_IDEAL_WARNING)
    }

    fn check(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroIdeal)
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0)
    }
}

/// `Γ_a(M)`: per torsion factor `Z/d`, the subgroup of order `e`, the
/// largest divisor of `d` whose primes all divide the generator of `a`.
pub fn gamma(a: &Ideal, m: &FgModule) -> Result<Submodule> {
    a.check()?;
    let mut cols = Vec::new();
    for (i, d) in m.invariant_factors().iter().enumerate() {
        let e = coprime_split(d, a.generator());
        if e.is_one() {
            continue;
        }
        let k = d / &e;
        cols.push(m.canonical_generator(i).iter().map(|x| x * &k).collect());
    }
    Ok(Submodule::generated_by(m, &IntMatrix::from_columns(m.num_generators(), &cols)))
}

/// Restriction of `f: M → N` to `Γ_a(M) → Γ_a(N)`.
pub fn gamma_map(a: &Ideal, f: &ModMorphism) -> Result<ModMorphism> {
    let gs = gamma(a, f.domain())?;
    let gt = gamma(a, f.codomain())?;
    restrict(f, &gs, &gt)
}

/// `f` restricted to submodules `src ⊆ dom f` and `dst ⊆ cod f`, provided
/// `f(src) ⊆ dst`.
pub fn restrict(f: &ModMorphism, src: &Submodule, dst: &Submodule) -> Result<ModMorphism> {
    let imgs = f.matrix().mul(src.generators());
    let mut cols = Vec::with_capacity(imgs.cols());
    for j in 0..imgs.cols() {
        let pre = dst
            .preimage(&imgs.column(j))
            .ok_or_else(|| Error::Precondition("image of a generator leaves the target submodule".into()))?;
        cols.push(pre);
    }
    ModMorphism::new(IntMatrix::from_columns(dst.source().num_generators(), &cols), src.source(), dst.source())
}

/// `Γ_a` applied degreewise.
pub fn gamma_complex(a: &Ideal, x: &CochainComplex) -> Result<CochainComplex> {
    let objects: Vec<FgModule> = x.objects().iter().map(|m| gamma(a, m).map(|s| s.source().clone())).collect::<Result<_>>()?;
    let maps: Vec<ModMorphism> = x.maps().iter().map(|d| gamma_map(a, d)).collect::<Result<_>>()?;
    CochainComplex::new(x.lo(), objects, maps)
}

/// `Ker d^i / Im d^{i-1}` with its witnesses.
#[derive(Clone, Debug)]
pub struct CohomologyAt {
    pub degree: i64,
    pub module: FgModule,
    pub kernel: Submodule,
    pub image: Submodule,
    /// `Ker d^i → H^i`.
    pub projection: ModMorphism,
}

pub fn cohomology_at(x: &CochainComplex, i: i64) -> Result<CohomologyAt> {
    if !x.composes_to_zero_at(i) {
        return Err(Error::NotAComplexAt(i));
    }
    let kernel = x.map(i).kernel();
    let image = x.map(i - 1).image();
    let q = subquotient(&kernel, &image).ok_or(Error::NotAComplexAt(i))?;
    Ok(CohomologyAt { degree: i, module: q.module, kernel, image, projection: q.projection })
}

/// Map induced on `H^i` by chain maps `f^n: X^n → Y^n` given on degree
/// `i` (the map itself) between the two cohomology computations.
pub fn induced_on_cohomology(f: &ModMorphism, src: &CohomologyAt, dst: &CohomologyAt) -> Result<ModMorphism> {
    if f.domain() != src.kernel.ambient() || f.codomain() != dst.kernel.ambient() {
        return Err(Error::DimensionMismatch("map does not connect the two cohomology degrees".into()));
    }
    let gens = f.matrix().mul(src.kernel.generators());
    let mut cols = Vec::with_capacity(gens.cols());
    for j in 0..gens.cols() {
        let k = dst
            .kernel
            .preimage(&gens.column(j))
            .ok_or_else(|| Error::Precondition("map does not send cycles to cycles".into()))?;
        cols.push(dst.projection.apply_vec(&k));
    }
    let m = IntMatrix::from_columns(dst.module.num_generators(), &cols);
    // generators of H agree with those of the kernel source
    ModMorphism::new(m, &src.module, &dst.module)
}

#[derive(Clone, Debug)]
pub struct DegreeCohomology {
    pub degree: i64,
    pub module: FgModule,
    /// Absent for negative degrees, where `H^i = 0` by definition.
    pub witness: Option<CohomologyAt>,
}

/// `_eH^i_a(M)` over an explicitly supplied resolution.
#[derive(Clone, Debug)]
pub struct ECohomologyReport {
    pub module: FgModule,
    pub ideal: Ideal,
    pub resolution: Resolution,
    pub gamma_complex: CochainComplex,
    pub degrees: Vec<DegreeCohomology>,
    pub warnings: Vec<String>,
}

impl ECohomologyReport {
    pub fn h(&self, i: i64) -> Option<&FgModule> {
        self.degrees.iter().find(|d| d.degree == i).map(|d| &d.module)
    }
}

pub fn e_cohomology(a: &Ideal, m: &FgModule, res: &Resolution, range: RangeInclusive<i64>) -> Result<ECohomologyReport> {
    a.check()?;
    if res.target() != m {
        return Err(Error::DimensionMismatch("resolution does not resolve the given module".into()));
    }
    if let Some(pos) = res.first_failure() {
        return Err(Error::NotEExactResolution(pos));
    }
    let gx = gamma_complex(a, res.complex())?;
    let mut degrees = Vec::new();
    for i in range {
        if i < 0 {
            degrees.push(DegreeCohomology { degree: i, module: FgModule::zero(), witness: None });
        } else {
            let c = cohomology_at(&gx, i)?;
            degrees.push(DegreeCohomology { degree: i, module: c.module.clone(), witness: Some(c) });
        }
    }
    let warnings = a.warning().map(|w| vec![w.to_string()]).unwrap_or_default();
    Ok(ECohomologyReport { module: m.clone(), ideal: a.clone(), resolution: res.clone(), gamma_complex: gx, degrees, warnings })
}

/// Verdicts of `Γ_a` on a short e-exact sequence.
#[derive(Clone, Debug)]
pub struct GammaExactness {
    pub gamma_sequence: ShortSequence,
    /// `Γf` monic.
    pub left_monic: bool,
    /// `Im Γf ≤_e Ker Γg`.
    pub left_middle: EExactVerdict,
    pub full: ShortReport,
    pub n_torsion_free: bool,
}

impl GammaExactness {
    pub fn left_holds(&self) -> bool {
        self.left_monic && self.left_middle.holds()
    }

    /// Full e-exactness, asserted only when `N` is torsion-free.
    pub fn full_holds(&self) -> Option<bool> {
        self.n_torsion_free.then(|| self.full.holds())
    }
}

pub fn gamma_e_exactness_check(a: &Ideal, s: &ShortSequence) -> Result<GammaExactness> {
    if !is_short_e_exact(s).holds() {
        return Err(Error::Precondition("sequence is not short e-exact".into()));
    }
    let gf = gamma_map(a, s.f())?;
    let gg = gamma_map(a, s.g())?;
    let gamma_sequence = ShortSequence::new(gf.clone(), gg.clone())?;
    Ok(GammaExactness {
        left_monic: gf.is_monic(),
        left_middle: e_exact_pair(&gf, &gg),
        full: is_short_e_exact(&gamma_sequence),
        n_torsion_free: s.c().is_torsion_free(),
        gamma_sequence,
    })
}

/// `H^0` against `r·Γ_a(M)` for torsion-free `M`.
#[derive(Clone, Debug)]
pub struct H0Comparison {
    pub h0: FgModule,
    pub gamma: FgModule,
    pub r: BigInt,
    pub isomorphic: bool,
}

pub fn h0_vs_gamma(a: &Ideal, m: &FgModule, res: &Resolution) -> Result<H0Comparison> {
    if !m.is_torsion_free() {
        return Err(Error::Precondition("module must be torsion-free".into()));
    }
    let rep = e_cohomology(a, m, res, 0..=0)?;
    let h0 = rep.degrees[0].module.clone();
    let g = gamma(a, m)?;
    let r = BigInt::one();
    let rg = crate::eexact::scaled_submodule(g.source(), &r).source().clone();
    let isomorphic = is_isomorphic(&h0, &rg).isomorphic;
    Ok(H0Comparison { h0, gamma: g.source().clone(), r, isomorphic })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn example() -> (FgModule, Resolution, ModMorphism) {
        let (z2, z8, z16) = (FgModule::cyclic(2), FgModule::cyclic(8), FgModule::cyclic(16));
        let f = ModMorphism::from_i64(&[4], &z2, &z8).unwrap();
        let g = ModMorphism::from_i64(&[8], &z8, &z16).unwrap();
        (z2.clone(), Resolution::from_maps(&z2, f, vec![g.clone()]).unwrap(), g)
    }

    #[test]
    fn gamma_examples() {
        let two = Ideal::new(2);
        let z8 = FgModule::cyclic(8);
        assert!(gamma(&two, &z8).unwrap().same_as(&Submodule::whole(&z8)));
        let z12 = FgModule::cyclic(12);
        let g = gamma(&two, &z12).unwrap();
        assert_eq!(g.source().invariant_factors(), &[b(4)][..]);
        let by_enum: Vec<i64> = (0..12).filter(|x| (0..5).any(|k| (x << k) % 12 == 0)).collect();
        assert_eq!(by_enum, vec![0, 3, 6, 9]);
        assert!(g.contains_vec(&[b(3)]));
        assert!(gamma(&two, &FgModule::free(1)).unwrap().source().is_zero());
        assert_eq!(gamma(&Ideal::new(0), &z8).unwrap_err(), Error::ZeroIdeal);
        assert!(gamma(&Ideal::new(-1), &z8).unwrap().source().is_zero());
    }

    #[test]
    fn gamma_maps() {
        let two = Ideal::new(2);
        let (_, _, g) = example();
        let gg = gamma_map(&two, &g).unwrap();
        assert!(gg.domain().same_invariants(g.domain()));
        assert!(gg.kernel().source().same_invariants(&FgModule::cyclic(4)));
        let z = FgModule::free(1);
        let into_free = ModMorphism::zero(&FgModule::cyclic(6), &z);
        assert!(gamma_map(&two, &into_free).unwrap().is_zero());
        let z12 = FgModule::cyclic(12);
        let three = ModMorphism::multiplication(&z12, &b(3));
        let g3 = gamma_map(&two, &three).unwrap();
        assert!(g3.domain().same_invariants(&FgModule::cyclic(4)));
    }

    #[test]
    fn cohomology_examples() {
        let (_, _, g) = example();
        let x = CochainComplex::from_maps(0, vec![g]).unwrap();
        let h1 = cohomology_at(&x, 1).unwrap();
        assert_eq!(h1.module.invariant_factors(), &[b(8)][..]);
        let z = FgModule::free(1);
        let x = CochainComplex::from_maps(0, vec![ModMorphism::zero(&z, &z)]).unwrap();
        assert!(cohomology_at(&x, 0).unwrap().module.same_invariants(&z));
        assert!(cohomology_at(&x, 1).unwrap().module.same_invariants(&z));
        let id = ModMorphism::identity(&z);
        let x = CochainComplex::from_maps(0, vec![id.clone(), id]).unwrap();
        assert_eq!(cohomology_at(&x, 1).unwrap_err(), Error::NotAComplexAt(1));
    }

    #[test]
    fn example_e_cohomology() {
        let (m, res, _) = example();
        let rep = e_cohomology(&Ideal::new(2), &m, &res, -1..=2).unwrap();
        assert!(rep.h(-1).unwrap().is_zero());
        assert_eq!(rep.h(0).unwrap().invariant_factors(), &[b(4)][..]);
        assert_eq!(rep.h(1).unwrap().invariant_factors(), &[b(8)][..]);
        assert!(rep.h(2).unwrap().is_zero());
    }

    #[test]
    fn trivial_resolution_vanishes() {
        let e = FgModule::direct_sum(&[FgModule::cyclic(4), FgModule::free(1)]);
        let rep = e_cohomology(&Ideal::new(2), &e, &Resolution::trivial(&e), 1..=3).unwrap();
        assert!(rep.degrees.iter().all(|d| d.module.is_zero()));
    }

    #[test]
    fn h0_gate_and_values() {
        let z = FgModule::free(1);
        let c = h0_vs_gamma(&Ideal::new(2), &z, &Resolution::trivial(&z)).unwrap();
        assert!(c.h0.is_zero() && c.gamma.is_zero() && c.isomorphic);
        let z2 = FgModule::cyclic(2);
        assert!(matches!(h0_vs_gamma(&Ideal::new(2), &z2, &Resolution::trivial(&z2)), Err(Error::Precondition(_))));
    }

    #[test]
    fn gamma_on_example_sequence() {
        let (z2, z8, z16) = (FgModule::cyclic(2), FgModule::cyclic(8), FgModule::cyclic(16));
        let s = ShortSequence::new(ModMorphism::from_i64(&[4], &z2, &z8).unwrap(), ModMorphism::from_i64(&[8], &z8, &z16).unwrap()).unwrap();
        let v = gamma_e_exactness_check(&Ideal::new(2), &s).unwrap();
        assert!(v.left_holds());
        assert!(v.full.holds());
        assert_eq!(v.full_holds(), None);
    }
}
