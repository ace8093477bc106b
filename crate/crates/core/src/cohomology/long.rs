use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::{cohomology_at, gamma_complex, gamma_map, induced_on_cohomology, CohomologyAt, Ideal};
use crate::eexact::{is_e_exact_at, is_short_e_exact, CochainComplex, EExactVerdict, ShortReport, ShortSequence};
use crate::einjective::{horseshoe, order_mod_image, solve_preimage, Horseshoe, Resolution};
use crate::error::{Error, Result};
use crate::fgab::{FgModule, IntMatrix, ModMorphism};

/// `σ^n: H^n(ΓI'') → H^{n+1}(ΓI')`, scaled by `scalar` where a pullback
/// only succeeds after multiplying.
#[derive(Clone, Debug)]
pub struct ConnectingMap {
    pub degree: i64,
    pub map: ModMorphism,
    pub scalar: BigInt,
}

#[derive(Clone, Debug)]
pub struct LongSequenceReport {
    pub horseshoe: Horseshoe,
    /// `0 → ΓI'^n → ΓI^n → ΓI''^n → 0` per degree.
    pub columns: Vec<ShortReport>,
    /// `0 → H^0(ΓI') → H^0(ΓI) → H^0(ΓI'') → H^1(ΓI') → …` starting in degree 0.
    pub sequence: CochainComplex,
    pub labels: Vec<String>,
    pub connecting: Vec<ConnectingMap>,
    pub positions: Vec<(String, EExactVerdict)>,
}

impl LongSequenceReport {
    pub fn holds(&self) -> bool {
        self.positions.iter().all(|(_, v)| v.holds())
    }

    pub fn failures(&self) -> Vec<&str> {
        self.positions.iter().filter(|(_, v)| !v.holds()).map(|(l, _)| l.as_str()).collect()
    }
}

fn padded(x: &CochainComplex, top: i64) -> CochainComplex {
    let objects = (0..=top).map(|n| x.object(n)).collect();
    let maps = (0..top).map(|n| x.map(n)).collect();
    CochainComplex::new(0, objects, maps).expect("degreewise maps connect")
}

/// Builds the long sequence of e-cohomology for `0 → L → M → N → 0` with
/// torsion-free `N`, using the horseshoe resolution of `M`, and checks
/// e-exactness at every term in the degrees of `range` (the final term is
/// only the target of the last connecting map and is not checked).
pub fn long_sequence_verify(
    a: &Ideal,
    s: &ShortSequence,
    left: &Resolution,
    right: &Resolution,
    range: RangeInclusive<i64>,
    cap: Option<&BigInt>,
) -> Result<LongSequenceReport> {
    a.check()?;
    if !s.c().is_torsion_free() {
        return Err(Error::Precondition("third term must be torsion-free".into()));
    }
    let h = horseshoe(s, left, right, cap)?;
    let hi = (*range.end()).max(0);
    let top = hi + 1;
    let cl = padded(left.complex(), top);
    let cm = padded(h.resolution.complex(), top);
    let cr = padded(right.complex(), top);
    let (gl, gm, gr) = (gamma_complex(a, &cl)?, gamma_complex(a, &cm)?, gamma_complex(a, &cr)?);

    let column = |maps: &[ModMorphism], n: i64, dom: &FgModule, cod: &FgModule| -> ModMorphism {
        maps.get(n as usize).cloned().unwrap_or_else(|| ModMorphism::zero(dom, cod))
    };
    let mut gincl = Vec::new();
    let mut gproj = Vec::new();
    for n in 0..=top {
        gincl.push(gamma_map(a, &column(&h.inclusions, n, &cl.object(n), &cm.object(n)))?);
        gproj.push(gamma_map(a, &column(&h.projections, n, &cm.object(n), &cr.object(n)))?);
    }
    let columns = (0..=top as usize)
        .map(|n| ShortSequence::new(gincl[n].clone(), gproj[n].clone()).map(|c| is_short_e_exact(&c)))
        .collect::<Result<Vec<_>>>()?;

    let coh = |x: &CochainComplex| (0..=top).map(|n| cohomology_at(x, n)).collect::<Result<Vec<_>>>();
    let (hl, hm, hr) = (coh(&gl)?, coh(&gm)?, coh(&gr)?);

    let mut objects = Vec::new();
    let mut maps = Vec::new();
    let mut labels = Vec::new();
    let mut connecting = Vec::new();
    for n in 0..=hi as usize {
        objects.extend([hl[n].module.clone(), hm[n].module.clone(), hr[n].module.clone()]);
        labels.extend([format!("H^{n}(ΓL)"), format!("H^{n}(ΓM)"), format!("H^{n}(ΓN)")]);
        maps.push(induced_on_cohomology(&gincl[n], &hl[n], &hm[n])?);
        maps.push(induced_on_cohomology(&gproj[n], &hm[n], &hr[n])?);
        let sigma = connecting_map(n, &gproj[n], &gm, &gincl[n + 1], &hr[n], &hl[n + 1], cap)?;
        maps.push(sigma.map.clone());
        connecting.push(sigma);
    }
    objects.push(hl[top as usize].module.clone());
    labels.push(format!("H^{top}(ΓL)"));
    let sequence = CochainComplex::new(0, objects, maps)?;

    let lo = (*range.start()).max(0);
    let mut positions = Vec::new();
    for k in 0..sequence.hi() {
        if k / 3 >= lo {
            positions.push((labels[k as usize].clone(), is_e_exact_at(&sequence, k)?));
        }
    }
    Ok(LongSequenceReport { horseshoe: h, columns, sequence, labels, connecting, positions })
}

fn connecting_map(
    n: usize,
    gproj: &ModMorphism,
    gm: &CochainComplex,
    gincl_next: &ModMorphism,
    src: &CohomologyAt,
    dst: &CohomologyAt,
    cap: Option<&BigInt>,
) -> Result<ConnectingMap> {
    let degree = n as i64;
    let obstruction = |bound: BigInt| Error::ZigZagObstruction { degree, bound };
    let cap_bound = || cap.cloned().unwrap_or_else(|| BigInt::from(crate::ladder::FALLBACK));
    let gens = src.kernel.generators();
    let mut images = Vec::with_capacity(gens.cols());
    for j in 0..gens.cols() {
        let z = gens.column(j);
        let r = order_mod_image(gproj, &z).ok_or_else(|| obstruction(cap_bound()))?;
        let y = solve_preimage(gproj, &scaled(&z, &r)).expect("r·z lies in the image");
        let w = gm.map(degree).apply_vec(&y);
        let t = order_mod_image(gincl_next, &w).ok_or_else(|| obstruction(cap_bound()))?;
        let x = solve_preimage(gincl_next, &scaled(&w, &t)).expect("t·w lies in the image");
        let k = dst.kernel.preimage(&x).ok_or_else(|| obstruction(cap_bound()))?;
        images.push((r * t, dst.projection.apply_vec(&k)));
    }
    let scalar = images.iter().fold(BigInt::one(), |acc, (rt, _)| acc.lcm(rt));
    if let Some(c) = cap {
        if &scalar > c {
            return Err(obstruction(c.clone()));
        }
    }
    let cols: Vec<Vec<BigInt>> = images.iter().map(|(rt, v)| scaled(v, &(&scalar / rt))).collect();
    let m = IntMatrix::from_columns(dst.module.num_generators(), &cols);
    let map = ModMorphism::new(m, &src.module, &dst.module).map_err(|_| obstruction(scalar.clone()))?;
    Ok(ConnectingMap { degree, map, scalar })
}

fn scaled(v: &[BigInt], r: &BigInt) -> Vec<BigInt> {
    v.iter().map(|x| x * r).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::{summand_inclusion, summand_projection};

    #[test]
    fn split_sequence_with_torsion_free_quotient() {
        let (l, n) = (FgModule::cyclic(4), FgModule::free(1));
        let parts = [l.clone(), n.clone()];
        let s = ShortSequence::new(summand_inclusion(&parts, 0), summand_projection(&parts, 1)).unwrap();
        let rep = long_sequence_verify(&Ideal::new(2), &s, &Resolution::trivial(&l), &Resolution::trivial(&n), 0..=2, None).unwrap();
        assert!(rep.holds(), "{:?}", rep.failures());
        assert!(rep.sequence.object(0).same_invariants(&l));
        assert!(rep.columns.iter().all(|c| c.holds()));
    }

    #[test]
    fn torsion_quotient_is_rejected() {
        let z2 = FgModule::cyclic(2);
        let parts = [z2.clone(), z2.clone()];
        let s = ShortSequence::new(summand_inclusion(&parts, 0), summand_projection(&parts, 1)).unwrap();
        let t = Resolution::trivial(&z2);
        assert!(matches!(long_sequence_verify(&Ideal::new(2), &s, &t, &t, 0..=1, None), Err(Error::Precondition(_))));
    }

    #[test]
    fn nontrivial_left_cohomology() {
        // L = Z/2 resolved by Z/8 → Z/16 has H^0 = Z/4, H^1 = Z/8
        let (z2, z8, z16) = (FgModule::cyclic(2), FgModule::cyclic(8), FgModule::cyclic(16));
        let eta = ModMorphism::from_i64(&[4], &z2, &z8).unwrap();
        let d = ModMorphism::from_i64(&[8], &z8, &z16).unwrap();
        let left = Resolution::from_maps(&z2, eta, vec![d]).unwrap();
        let n = FgModule::free(1);
        let parts = [z2.clone(), n.clone()];
        let s = ShortSequence::new(summand_inclusion(&parts, 0), summand_projection(&parts, 1)).unwrap();
        let rep = long_sequence_verify(&Ideal::new(2), &s, &left, &Resolution::trivial(&n), 0..=2, None).unwrap();
        assert!(rep.holds(), "{:?}", rep.failures());
        assert!(rep.sequence.object(1).same_invariants(&FgModule::cyclic(4)));
        assert!(rep.sequence.object(4).same_invariants(&FgModule::cyclic(8)));
    }
}
