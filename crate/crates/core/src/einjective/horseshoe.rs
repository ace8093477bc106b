use num_bigint::BigInt;
use num_traits::One;

use super::lift::{comparison_lift, ChainLift, LiftOptions};
use super::resolution::Resolution;
use crate::eexact::{is_short_e_exact, CochainComplex, ShortSequence};
use crate::error::{Error, Result};
use crate::fgab::{summand_inclusion, summand_projection, FgModule, IntMatrix, ModMorphism};

/// Output of [`horseshoe`].
#[derive(Clone, Debug)]
pub struct Horseshoe {
    pub resolution: Resolution,
    /// `I'^n → I^n`.
    pub inclusions: Vec<ModMorphism>,
    /// `I^n → I''^n`.
    pub projections: Vec<ModMorphism>,
    /// Comparison maps `M → I'^0` and `I''^n → I'^{n+1}`.
    pub lift: ChainLift,
    /// Signs `c_{-1}, c_0, …, c_N` on the off-diagonal blocks.
    pub signs: Vec<BigInt>,
}

impl Horseshoe {
    /// `0 → I'^n → I^n → I''^n → 0`.
    pub fn column(&self, n: usize) -> ShortSequence {
        ShortSequence::new(self.inclusions[n].clone(), self.projections[n].clone()).expect("composable")
    }
}

/// Resolution of the middle term of `0 → M' →f M →p M'' → 0` with
/// `I^n = I'^n ⊕ I''^n`.
///
/// The comparison maps come from lifting `id_{M'}` from the complex
/// `M → I''^0 → I''^1 → …` (augmented by `f`) into `I'`. With per-stage
/// scalars `r_k` the differential is `δ^n(a, b) = (δ'a + c_n·f^{n+1}b, δ''b)`
/// and the augmentation `m ↦ (c_{-1}·f^0 m, ε''p m)`, where
/// `c_N = (−1)^N` and `c_{n} = −c_{n+1}·r_{n+2}`, `c_{-1} = −c_0·r_1`,
/// which makes consecutive differentials compose to zero.
pub fn horseshoe(s: &ShortSequence, left: &Resolution, right: &Resolution, cap: Option<&BigInt>) -> Result<Horseshoe> {
    if !is_short_e_exact(s).holds() {
        return Err(Error::Precondition("input sequence is not short e-exact".into()));
    }
    if left.target() != s.a() || right.target() != s.c() {
        return Err(Error::DimensionMismatch("resolutions must resolve the outer terms".into()));
    }
    let m = s.b();
    let top = left.top().max(right.top());
    let ip = |n: i64| left.complex().object(n);
    let ipp = |n: i64| right.complex().object(n);

    // X: M → I''^0 → … → I''^{top-1}, augmented by f
    let mut xmaps = vec![right.augmentation().compose(s.g())?];
    for n in 0..top - 1 {
        xmaps.push(right.complex().map(n));
    }
    let xcomplex = CochainComplex::from_maps(0, xmaps)?;
    let bottom = Resolution::unchecked(s.a(), s.f().clone(), xcomplex);
    let padded_left = pad(left, top);
    let lift = comparison_lift(&ModMorphism::identity(s.a()), &bottom, &padded_left, &LiftOptions { cap: cap.cloned(), perturb_seed: None })?;
    let r = lift.scalars();
    let lifted = |k: i64| -> ModMorphism {
        if (k as usize) < lift.maps.len() {
            lift.maps[k as usize].clone()
        } else {
            ModMorphism::zero(&ipp(k - 1), &ip(k))
        }
    };

    // signs: index 0 ↔ c_{-1}, index n+1 ↔ c_n
    let mut c = vec![BigInt::one(); (top + 2) as usize];
    c[(top + 1) as usize] = if top % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    for n in (0..top).rev() {
        let rn = r.get((n + 2) as usize).cloned().unwrap_or_else(BigInt::one);
        c[(n + 1) as usize] = -&c[(n + 2) as usize] * rn;
    }
    c[0] = -&c[1] * r.get(1).cloned().unwrap_or_else(BigInt::one);

    let sums: Vec<FgModule> = (0..=top).map(|n| FgModule::direct_sum(&[ip(n), ipp(n)])).collect();
    let aug = {
        let top_block = lifted(0).scale(&c[0]);
        let bot_block = right.augmentation().compose(s.g())?;
        stack_rows(&[top_block, bot_block], m, &sums[0])?
    };
    let mut diffs = Vec::new();
    for n in 0..top {
        let next = &sums[(n + 1) as usize];
        let dl = left.complex().map(n);
        let dr = right.complex().map(n);
        let off = lifted(n + 1).scale(&c[(n + 1) as usize]);
        let mut mat = IntMatrix::zeros(next.num_generators(), sums[n as usize].num_generators());
        let a0 = ip(n).num_generators();
        let a1 = ip(n + 1).num_generators();
        mat.set_block(0, 0, dl.matrix());
        mat.set_block(0, a0, off.matrix());
        mat.set_block(a1, a0, dr.matrix());
        diffs.push(ModMorphism::new(mat, &sums[n as usize], next)?);
    }
    let complex = if diffs.is_empty() {
        CochainComplex::single(0, sums[0].clone())
    } else {
        CochainComplex::from_maps(0, diffs)?
    };
    let resolution = Resolution::new(m, aug, complex)?;
    let inclusions = (0..=top).map(|n| summand_inclusion(&[ip(n), ipp(n)], 0)).collect();
    let projections = (0..=top).map(|n| summand_projection(&[ip(n), ipp(n)], 1)).collect();
    Ok(Horseshoe { resolution, inclusions, projections, lift, signs: c })
}

fn stack_rows(parts: &[ModMorphism], domain: &FgModule, codomain: &FgModule) -> Result<ModMorphism> {
    let mut mat = IntMatrix::zeros(codomain.num_generators(), domain.num_generators());
    let mut r0 = 0;
    for p in parts {
        mat.set_block(r0, 0, p.matrix());
        r0 += p.codomain().num_generators();
    }
    ModMorphism::new(mat, domain, codomain)
}

/// The resolution extended by zero terms up to degree `top`.
fn pad(r: &Resolution, top: i64) -> Resolution {
    if r.top() >= top {
        return r.clone();
    }
    let mut maps: Vec<ModMorphism> = r.complex().maps().to_vec();
    for n in r.top()..top {
        maps.push(ModMorphism::zero(&r.complex().object(n), &r.complex().object(n + 1)));
    }
    let complex = CochainComplex::from_maps(0, maps).expect("composable");
    Resolution::unchecked(r.target(), r.augmentation().clone(), complex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eexact::check_e_split;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn equal_outer_terms_with_trivial_resolutions() {
        let x = FgModule::cyclic(3);
        let parts = [x.clone(), x.clone()];
        let s = ShortSequence::new(summand_inclusion(&parts, 0), summand_projection(&parts, 1)).unwrap();
        let t = Resolution::trivial(&x);
        let h = horseshoe(&s, &t, &t, None).unwrap();
        assert!(h.resolution.first_failure().is_none());
        assert!(h.resolution.complex().object(0).same_invariants(&FgModule::direct_sum(&parts)));
        let j = summand_inclusion(&parts, 1);
        let col = h.column(0);
        assert_eq!(check_e_split(&col, &j, &b(1), None).unwrap().r, b(1));
    }

    #[test]
    fn non_split_extension_with_trivial_resolutions_fails() {
        // Z/4 cannot embed in Z/2 ⊕ Z/2
        let (z2, z4) = (FgModule::cyclic(2), FgModule::cyclic(4));
        let f = ModMorphism::from_i64(&[2], &z2, &z4).unwrap();
        let p = ModMorphism::from_i64(&[1], &z4, &z2).unwrap();
        let s = ShortSequence::new(f, p).unwrap();
        let t = Resolution::trivial(&z2);
        assert_eq!(horseshoe(&s, &t, &t, None).unwrap_err(), Error::NotEExactResolution(-1));
    }

    #[test]
    fn non_split_extension_with_longer_left_resolution() {
        // 0 → Z/2 → Z/4 → Z/2 → 0 with I' = (Z/4 → Z/2), I'' trivial
        let (z2, z4) = (FgModule::cyclic(2), FgModule::cyclic(4));
        let f = ModMorphism::from_i64(&[2], &z2, &z4).unwrap();
        let p = ModMorphism::from_i64(&[1], &z4, &z2).unwrap();
        let s = ShortSequence::new(f.clone(), p.clone()).unwrap();
        let left = Resolution::from_maps(&z2, f, vec![p]).unwrap();
        let right = Resolution::trivial(&z2);
        let h = horseshoe(&s, &left, &right, None).unwrap();
        let res = &h.resolution;
        assert!(res.first_failure().is_none());
        for n in 0..=res.top() {
            assert!(res.complex().composes_to_zero_at(n));
        }
        for n in 0..h.inclusions.len() {
            let col = h.column(n);
            let j = summand_inclusion(&[col.a().clone(), col.c().clone()], 1);
            assert!(check_e_split(&col, &j, &b(1), None).is_ok());
        }
    }
}
