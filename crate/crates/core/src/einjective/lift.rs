use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use super::extend::{extend_along, order_mod_image, relevant_exponent, solve_preimage};
use super::resolution::Resolution;
use crate::eexact::ScalarWitness;
use crate::error::{Error, Result};
use crate::fgab::{induced_hom, induced_post, FgModule, HomModule, IntMatrix, ModMorphism};
use crate::gen;
use crate::ladder::{bound, ladder};

/// Chain maps `f^n: X^n → E^n` over `f: A' → A`, with one scalar per square.
#[derive(Clone, Debug)]
pub struct ChainLift {
    pub base: ModMorphism,
    pub maps: Vec<ModMorphism>,
    /// `squares[0]`: `f^0∘ε' = r_0·(ε∘f)`; `squares[n+1]`: `f^{n+1}∘d'^n = r_{n+1}·(d^n∘f^n)`.
    pub squares: Vec<ScalarWitness>,
}

impl ChainLift {
    pub fn scalars(&self) -> Vec<BigInt> {
        self.squares.iter().map(|w| w.r.clone()).collect()
    }

    /// Product of the per-square scalars.
    pub fn total_scalar(&self) -> BigInt {
        self.squares.iter().map(|w| w.r.clone()).product()
    }

    pub fn replay(&self) -> bool {
        self.squares.iter().all(ScalarWitness::replay)
    }
}

/// Options for [`comparison_lift`].
#[derive(Clone, Debug, Default)]
pub struct LiftOptions {
    pub cap: Option<BigInt>,
    /// When set, each `f^n` is shifted by a random map killing the previous
    /// differential, which leaves every scalar unchanged.
    pub perturb_seed: Option<u64>,
}

/// Random `k: X → E` with `k∘d = 0`, `d: W → X`.
fn random_annihilator(rng: &mut gen::SeededRng, d: &ModMorphism, e: &FgModule) -> ModMorphism {
    let (hx, _, star) = induced_hom(d, e);
    let ker = star.kernel();
    let src = ker.source();
    let t: Vec<BigInt> = (0..src.num_generators()).map(|_| BigInt::from(rng.gen_range(-3..=3))).collect();
    let coords = ker.embedding().apply_vec(&src.reduce(&t));
    hx.evaluate(&hx.module().reduce(&coords))
}

/// Lifts `f: A' → A` to chain maps from the resolution `bottom` of `A'`
/// into the resolution `top` of `A`, extending stage by stage along
/// `ε'` and then along each differential of `bottom`.
pub fn comparison_lift(f: &ModMorphism, bottom: &Resolution, top: &Resolution, opts: &LiftOptions) -> Result<ChainLift> {
    if f.domain() != bottom.target() || f.codomain() != top.target() {
        return Err(Error::DimensionMismatch("f must map the bottom target to the top target".into()));
    }
    let mut rng = opts.perturb_seed.map(gen::rng);
    let x = bottom.complex();
    let e = top.complex();
    let mut maps: Vec<ModMorphism> = Vec::new();
    let mut squares = Vec::new();
    for n in 0..=x.hi() {
        // extend `src` along `along` into E^n
        let (along, src) = if n == 0 {
            (bottom.augmentation().clone(), top.augmentation().compose(f)?)
        } else {
            let prev = &maps[(n - 1) as usize];
            (x.map(n - 1), e.map(n - 1).compose(prev)?)
        };
        let candidates = ladder(&relevant_exponent(&along, src.codomain()), opts.cap.as_ref());
        let mut ext = extend_along(&along, &src, &candidates).map_err(|err| match err {
            Error::ProbeFailure { bound, .. } => Error::ProbeFailure { bound, stage: Some(n as usize) },
            other => other,
        })?;
        if let Some(rng) = rng.as_mut() {
            let k = random_annihilator(rng, &along, src.codomain());
            ext.f3 = ext.f3.add(&k)?;
            ext.witness.lhs = ext.f3.compose(&along)?;
        }
        let mut w = ext.witness;
        w.relation = if n == 0 { "f^0∘ε' = r·(ε∘f)".into() } else { format!("f^{n}∘d'^{} = r·(d^{}∘f^{})", n - 1, n - 1, n - 1) };
        squares.push(w);
        maps.push(ext.f3);
    }
    Ok(ChainLift { base: f.clone(), maps, squares })
}

/// `r·(h^n − f^n) = s^{n+1}∘d'^n + s·(d^{n−1}∘s^n)` for every `n`, with `s^0 = 0`.
#[derive(Clone, Debug)]
pub struct HomotopyWitness {
    pub r: BigInt,
    pub s: BigInt,
    /// `maps[n-1] = s^n: X^n → E^{n-1}` for `n = 1..=N`.
    pub maps: Vec<ModMorphism>,
    /// Left and right sides per degree, kept for replay.
    identities: Vec<(ModMorphism, ModMorphism)>,
}

impl HomotopyWitness {
    pub fn replay(&self) -> bool {
        !self.r.is_zero() && !self.s.is_zero() && self.identities.iter().all(|(l, r)| l.equals(r))
    }

    /// Both sides of the defining identity, one pair per degree.
    pub fn identities(&self) -> &[(ModMorphism, ModMorphism)] {
        &self.identities
    }
}

fn identities(
    f: &ChainLift,
    h: &ChainLift,
    bottom: &Resolution,
    top: &Resolution,
    r: &BigInt,
    s: &BigInt,
    maps: &[ModMorphism],
) -> Result<Vec<(ModMorphism, ModMorphism)>> {
    let x = bottom.complex();
    let e = top.complex();
    let top_deg = x.hi();
    let homotopy = |n: i64| -> ModMorphism {
        if n >= 1 && n <= top_deg {
            maps[(n - 1) as usize].clone()
        } else {
            ModMorphism::zero(&x.object(n), &e.object(n - 1))
        }
    };
    let mut out = Vec::new();
    for n in 0..=top_deg {
        let k = n as usize;
        let lhs = h.maps[k].sub(&f.maps[k])?.scale(r);
        let a = homotopy(n + 1).compose(&x.map(n))?;
        let b = e.map(n - 1).compose(&homotopy(n))?.scale(s);
        out.push((lhs, a.add(&b)?));
    }
    Ok(out)
}

/// Solves for an e-homotopy between two chain lifts over the same complexes.
///
/// For each candidate `s` the identity is one linear system in the
/// unknowns `s^1, …, s^N`; the admissible `r` form the ideal generated by
/// the order of `(h − f)` in the cokernel of that system.
pub fn homotopy_witness(f: &ChainLift, h: &ChainLift, bottom: &Resolution, top: &Resolution, cap: Option<&BigInt>) -> Result<HomotopyWitness> {
    let x = bottom.complex();
    let e = top.complex();
    let top_deg = x.hi();
    let len = (top_deg + 1) as usize;
    if f.maps.len() != len || h.maps.len() != len {
        return Err(Error::DimensionMismatch("chain maps must cover every degree of the bottom resolution".into()));
    }
    let diffs: Vec<ModMorphism> = (0..len).map(|k| h.maps[k].sub(&f.maps[k])).collect::<Result<_>>()?;
    let unknown_homs: Vec<HomModule> = (1..=top_deg).map(|n| HomModule::new(&x.object(n), &e.object(n - 1))).collect();
    if diffs.iter().all(ModMorphism::is_zero) {
        let maps: Vec<ModMorphism> = unknown_homs.iter().map(|hm| ModMorphism::zero(hm.domain(), hm.codomain())).collect();
        let (r, s) = (BigInt::one(), BigInt::one());
        let ids = identities(f, h, bottom, top, &r, &s, &maps)?;
        return Ok(HomotopyWitness { r, s, maps, identities: ids });
    }
    let target_homs: Vec<HomModule> = (0..=top_deg).map(|n| HomModule::new(&x.object(n), &e.object(n))).collect();
    let dom = FgModule::direct_sum(&unknown_homs.iter().map(|hm| hm.module().clone()).collect::<Vec<_>>());
    let cod = FgModule::direct_sum(&target_homs.iter().map(|hm| hm.module().clone()).collect::<Vec<_>>());
    let row_off: Vec<usize> = offsets(target_homs.iter().map(|hm| hm.module().num_generators()));
    let col_off: Vec<usize> = offsets(unknown_homs.iter().map(|hm| hm.module().num_generators()));
    // precomposition blocks: s^n ↦ s^n∘d'^{n-1} in degree n-1
    // postcomposition blocks: s^n ↦ d^{n-1}∘s^n in degree n
    let mut pre = IntMatrix::zeros(cod.num_generators(), dom.num_generators());
    let mut post = IntMatrix::zeros(cod.num_generators(), dom.num_generators());
    for n in 1..=top_deg {
        let k = (n - 1) as usize;
        let (_, _, star) = induced_hom(&x.map(n - 1), &e.object(n - 1));
        pre.set_block(row_off[k], col_off[k], star.matrix());
        let (_, _, push) = induced_post(&e.map(n - 1), &x.object(n));
        post.set_block(row_off[k + 1], col_off[k], push.matrix());
    }
    let mut d = Vec::new();
    for (hm, diff) in target_homs.iter().zip(&diffs) {
        d.extend(hm.coordinates(diff)?);
    }
    let exponent = (0..len).fold(BigInt::one(), |acc, k| {
        acc.lcm(&e.object(k as i64).torsion_exponent()).lcm(&x.object(k as i64).torsion_exponent())
    });
    let candidates = ladder(&exponent, cap);
    for s in &candidates {
        let phi = ModMorphism::new(pre.add(&post.scale(s)), &dom, &cod)?;
        let Some(minimal) = order_mod_image(&phi, &d) else { continue };
        let Some(r) = candidates.iter().find(|c| c.is_multiple_of(&minimal)).cloned() else { continue };
        let rhs: Vec<BigInt> = d.iter().map(|v| v * &r).collect();
        let sol = solve_preimage(&phi, &rhs).expect("r lies in the admissible ideal");
        let maps: Vec<ModMorphism> = unknown_homs
            .iter()
            .enumerate()
            .map(|(k, hm)| hm.evaluate(&sol[col_off[k]..col_off[k] + hm.module().num_generators()]))
            .collect();
        let ids = identities(f, h, bottom, top, &r, s, &maps)?;
        let w = HomotopyWitness { r, s: s.clone(), maps, identities: ids };
        debug_assert!(w.replay());
        return Ok(w);
    }
    Err(Error::ProbeFailure { bound: bound(&candidates), stage: None })
}

fn offsets(sizes: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut out = vec![0];
    for s in sizes {
        out.push(out.last().unwrap() + s);
    }
    out
}
