//! Seeded generators for modules, morphisms and sequences.
//!
//! Everything here is deterministic given the seed of the supplied RNG, so
//! randomized suites reproduce exactly.

use num_bigint::BigInt;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eexact::{NineGrid, NineMode, ShortSequence};
use crate::einjective::Resolution;
use crate::fgab::{summand_inclusion, summand_projection, FgModule, HomModule, IntMatrix, ModElement, ModMorphism};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

/// A random unimodular `n×n` matrix with its inverse, as a product of
/// `steps` elementary operations.
pub fn unimodular(rng: &mut SeededRng, n: usize, steps: usize) -> (IntMatrix, IntMatrix) {
    let mut w = IntMatrix::identity(n);
    let mut inv = IntMatrix::identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            w.negate_row(0);
            inv.negate_col(0);
        }
        return (w, inv);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let q = b(rng.gen_range(-2..=2));
        // W ← E·W with E = I + q·e_ij, so W⁻¹ ← W⁻¹·E⁻¹
        w.add_row_multiple(i, j, &q);
        inv.add_col_multiple(j, i, &-q);
    }
    (w, inv)
}

/// A cyclic order drawn from `2..=max_order`, or `0` for `Z`.
pub fn cyclic_order(rng: &mut SeededRng, max_order: i64, free_prob: f64) -> i64 {
    if rng.gen_bool(free_prob) {
        0
    } else {
        rng.gen_range(2..=max_order.max(2))
    }
}

/// Direct sum of up to `max_summands` random cyclic groups.
pub fn direct_sum_module(rng: &mut SeededRng, max_summands: usize, max_order: i64, free_prob: f64) -> FgModule {
    let k = rng.gen_range(0..=max_summands);
    let parts: Vec<FgModule> = (0..k).map(|_| FgModule::cyclic(cyclic_order(rng, max_order, free_prob))).collect();
    FgModule::direct_sum(&parts)
}

/// A change of presentation `M → M'` with relations `W·R`: returns `M'`
/// and the isomorphisms `M → M'` and `M' → M`.
pub fn represent(rng: &mut SeededRng, m: &FgModule) -> (FgModule, ModMorphism, ModMorphism) {
    let n = m.num_generators();
    let (w, winv) = unimodular(rng, n, 2 * n + 2);
    let m2 = FgModule::present(n, w.mul(m.relations())).expect("shape");
    let to = ModMorphism::new(w, m, &m2).expect("change of presentation");
    let back = ModMorphism::new(winv, &m2, m).expect("change of presentation");
    (m2, to, back)
}

/// A random module in a scrambled presentation.
pub fn module(rng: &mut SeededRng, max_summands: usize, max_order: i64, free_prob: f64) -> FgModule {
    let m = direct_sum_module(rng, max_summands, max_order, free_prob);
    represent(rng, &m).0
}

pub fn element(rng: &mut SeededRng, m: &FgModule, bound: i64) -> ModElement {
    let c: Vec<BigInt> = (0..m.num_generators()).map(|_| b(rng.gen_range(-bound..=bound))).collect();
    m.element(c).expect("shape")
}

/// A random morphism `A → B` from random hom-module coordinates.
pub fn morphism(rng: &mut SeededRng, a: &FgModule, c: &FgModule, bound: i64) -> ModMorphism {
    let h = HomModule::new(a, c);
    let m = h.module();
    let coords: Vec<BigInt> = (0..m.num_generators()).map(|_| b(rng.gen_range(-bound..=bound))).collect();
    h.evaluate(&m.reduce(&coords))
}

/// A nonzero scalar from `±1..=bound`.
pub fn nonzero(rng: &mut SeededRng, bound: i64) -> BigInt {
    let v = rng.gen_range(1..=bound.max(1));
    if rng.gen_bool(0.5) {
        b(v)
    } else {
        b(-v)
    }
}

/// A scalar in `1..=bound` coprime to `m`.
pub fn coprime_scalar(rng: &mut SeededRng, m: &BigInt, bound: i64) -> BigInt {
    use num_integer::Integer;
    let options: Vec<i64> = (1..=bound.max(1)).filter(|&k| b(k).gcd(m).is_one()).collect();
    b(*options.choose(rng).unwrap_or(&1))
}

/// A monic `f1: A1 → A2`: each cyclic summand `Z/a` of `A1` is sent into
/// `Z/(a·k)` by `1 ↦ k` (and `Z ↦ Z` by `×k`), an extra summand is
/// adjoined to the target, and both presentations are scrambled.
pub fn monic(rng: &mut SeededRng, max_summands: usize, max_order: i64, free_prob: f64) -> ModMorphism {
    let k = rng.gen_range(1..=max_summands.max(1));
    let mut src = Vec::new();
    let mut dst = Vec::new();
    let mut diag = Vec::new();
    for _ in 0..k {
        let a = cyclic_order(rng, max_order, free_prob);
        let s = rng.gen_range(1..=3);
        src.push(FgModule::cyclic(a));
        dst.push(FgModule::cyclic(a * s));
        diag.push(b(s));
    }
    if rng.gen_bool(0.5) {
        dst.push(FgModule::cyclic(cyclic_order(rng, max_order, free_prob)));
    }
    let a1 = FgModule::direct_sum(&src);
    let a2 = FgModule::direct_sum(&dst);
    let mut m = IntMatrix::zeros(a2.num_generators(), a1.num_generators());
    for (i, s) in diag.iter().enumerate() {
        m[(i, i)] = s.clone();
    }
    let f = ModMorphism::new(m, &a1, &a2).expect("summandwise multiplication");
    scramble(rng, &f)
}

/// Rewrites `f` over fresh presentations of its domain and codomain.
pub fn scramble(rng: &mut SeededRng, f: &ModMorphism) -> ModMorphism {
    let (_, _, back) = represent(rng, f.domain());
    let (_, to, _) = represent(rng, f.codomain());
    to.compose(f).and_then(|g| g.compose(&back)).expect("composable")
}

/// A split exact sequence `0 → A → A ⊕ C → C → 0` with section, over a
/// scrambled middle presentation: `(f, g, j)`.
pub fn split_exact(rng: &mut SeededRng, a: &FgModule, c: &FgModule) -> (ModMorphism, ModMorphism, ModMorphism) {
    let parts = [a.clone(), c.clone()];
    let (_, to, back) = represent(rng, &FgModule::direct_sum(&parts));
    let f = to.compose(&summand_inclusion(&parts, 0)).expect("composable");
    let g = summand_projection(&parts, 1).compose(&back).expect("composable");
    let j = to.compose(&summand_inclusion(&parts, 1)).expect("composable");
    (f, g, j)
}

/// Random subset of `0..n` of size at most `k`.
pub fn subset(rng: &mut SeededRng, n: usize, k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    idx.truncate(k.min(n));
    idx.sort_unstable();
    idx
}

/// An essential monic `A → A'`: each `Z/a` goes to `Z/(a·k)` by `1 ↦ k`
/// and each `Z` to `Z` by `×k`, where `k` is a power of a prime `p`
/// dividing every finite order of `A`. Returns `(f, p, k)`.
pub fn essential_monic(rng: &mut SeededRng, max_summands: usize, free_prob: f64) -> (ModMorphism, i64, i64) {
    let p = *[2i64, 3].choose(rng).expect("nonempty");
    let k = p.pow(rng.gen_range(0..=2));
    let n = rng.gen_range(1..=max_summands.max(1));
    let mut src = Vec::new();
    let mut dst = Vec::new();
    for _ in 0..n {
        if rng.gen_bool(free_prob) {
            src.push(FgModule::free(1));
            dst.push(FgModule::free(1));
        } else {
            let a = p.pow(rng.gen_range(1..=2)) * *[1i64, 1, 5, 7].choose(rng).expect("nonempty");
            src.push(FgModule::cyclic(a));
            dst.push(FgModule::cyclic(a * k));
        }
    }
    let a1 = FgModule::direct_sum(&src);
    let a2 = FgModule::direct_sum(&dst);
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = b(k);
    }
    (ModMorphism::new(m, &a1, &a2).expect("summandwise multiplication"), p, k)
}

/// A short e-exact sequence with its scaled section and resolutions of
/// the outer terms.
#[derive(Clone, Debug)]
pub struct EExactInstance {
    pub sequence: ShortSequence,
    /// `j: C → B` with `g∘j = scalar·id`.
    pub section: ModMorphism,
    pub scalar: BigInt,
    /// `A → A' → A'/A`.
    pub left: Resolution,
    /// `C → C` by multiplication with a scalar coprime to the torsion.
    pub right: Resolution,
    /// Expected `r` with `rB ≅ A ⊕ C`.
    pub k: BigInt,
}

/// `0 → A → A' ⊕ C → C → 0` built from an essential monic `A → A'`,
/// multiplication `C → C` by a scalar coprime to the torsion of `C`, and a
/// random shear of the middle term, all rewritten over fresh
/// presentations. `C` has no `p`-torsion, and is free when
/// `torsion_free_quotient` holds. With `exact_middle` the first map is the
/// summand inclusion of `A` itself, so `Im f = Ker g`, while `A → A'`
/// still serves as the start of the resolution of `A`.
pub fn e_exact_instance(rng: &mut SeededRng, torsion_free_quotient: bool, exact_middle: bool) -> EExactInstance {
    let (f0, p, k) = essential_monic(rng, 3, 0.25);
    let (first, k) = if exact_middle { (ModMorphism::identity(f0.domain()), 1) } else { (f0.clone(), k) };
    let c = if torsion_free_quotient {
        FgModule::free(rng.gen_range(0..=2))
    } else {
        let orders: Vec<i64> = (2..=15).filter(|d| d % p != 0).collect();
        let n = rng.gen_range(0..=2);
        let parts: Vec<FgModule> = (0..n)
            .map(|_| if rng.gen_bool(0.25) { FgModule::free(1) } else { FgModule::cyclic(*orders.choose(rng).expect("nonempty")) })
            .collect();
        FgModule::direct_sum(&parts)
    };
    let ac = first.codomain().clone();
    let parts = [ac.clone(), c.clone()];
    let mid = FgModule::direct_sum(&parts);
    let te = num_integer::Integer::lcm(&c.torsion_exponent(), &f0.domain().torsion_exponent());
    let s = coprime_scalar(rng, &te, 3);
    let u = coprime_scalar(rng, &te, 3);
    let (i0, i1, p1) = (summand_inclusion(&parts, 0), summand_inclusion(&parts, 1), summand_projection(&parts, 1));
    let h = morphism(rng, &c, &ac, 3);
    let shear_part = i0.compose(&h).and_then(|x| x.compose(&p1)).expect("composable");
    let shear = ModMorphism::identity(&mid).add(&shear_part).expect("same shape");
    let f = shear.compose(&i0).and_then(|x| x.compose(&first)).expect("composable");
    let g = ModMorphism::multiplication(&c, &s).compose(&p1).expect("composable");
    let j = shear.compose(&i1).expect("composable");

    let (a2, _, back_a) = represent(rng, f0.domain());
    let (b2, to_b, back_b) = represent(rng, &mid);
    let (c2, to_c, back_c) = represent(rng, &c);
    let f = f.conjugate(&back_a, &to_b).expect("composable");
    let g = g.conjugate(&back_b, &to_c).expect("composable");
    let j = j.conjugate(&back_c, &to_b).expect("composable");
    let sequence = ShortSequence::new(f, g).expect("composable");
    debug_assert!(sequence.a() == &a2 && sequence.b() == &b2);

    let eta = f0.compose(&back_a).expect("composable");
    let coker = f0.cokernel();
    let left = Resolution::from_maps(&a2, eta, vec![coker.projection]).expect("essential monic resolves");
    let right = Resolution::from_maps(&c2, ModMorphism::multiplication(&c2, &u), vec![]).expect("coprime scaling");
    EExactInstance { sequence, section: j, scalar: s, left, right, k: b(k) }
}

/// A resolution of a random module: trivial, `A → A' → A'/A` for an
/// essential monic `A → A'` multiplying by `k`, or the degree-two
/// `A → A' → ⊕Z/k² → ⊕Z/k` with `e_i ↦ k·e_i` and then reduction.
pub fn resolution(rng: &mut SeededRng) -> Resolution {
    let (f0, _, k) = essential_monic(rng, 2, 0.25);
    let (a2, _, back) = represent(rng, f0.domain());
    let eta = f0.compose(&back).expect("composable");
    match rng.gen_range(0..3) {
        0 => Resolution::trivial(&a2),
        1 => Resolution::from_maps(&a2, eta, vec![f0.cokernel().projection]).expect("essential monic resolves"),
        _ => {
            let n = f0.codomain().num_generators();
            let e1 = FgModule::direct_sum(&vec![FgModule::cyclic(k * k); n]);
            let e2 = FgModule::direct_sum(&vec![FgModule::cyclic(k); n]);
            let d0 = ModMorphism::new(IntMatrix::identity(n).scale(&b(k)), f0.codomain(), &e1).expect("k·(a·k) ≡ 0 mod k²");
            let d1 = ModMorphism::new(IntMatrix::identity(n), &e1, &e2).expect("reduction");
            Resolution::from_maps(&a2, eta, vec![d0, d1]).expect("stacked multiplications resolve")
        }
    }
}

/// Direct-sum 3×3 grid over blocks `K_{ij}`: the module in row `r`,
/// column `c` is the sum of `K_{ij}` with `i ∈ S(r)` and `j ∈ S(c)`, where
/// `S(0) = {0}`, `S(1) = {0,1}`, `S(2) = {1}`. Maps are inclusions and
/// projections, each scaled by a random scalar coprime to the torsion,
/// and every module is rewritten over a fresh presentation.
pub fn nine_grid(rng: &mut SeededRng, mode: NineMode) -> NineGrid {
    let free_block = |i: usize| match mode {
        NineMode::Middle => true,
        NineMode::Bottom => i == 1,
    };
    let mut k = [[FgModule::zero(), FgModule::zero()], [FgModule::zero(), FgModule::zero()]];
    for (i, row) in k.iter_mut().enumerate() {
        for block in row.iter_mut() {
            *block = if free_block(i) {
                FgModule::free(rng.gen_range(0..=2))
            } else {
                direct_sum_module(rng, 2, 12, 0.3)
            };
        }
    }
    let exponent = k.iter().flatten().fold(BigInt::one(), |acc, m| num_integer::Integer::lcm(&acc, &m.torsion_exponent()));
    let support = |r: usize| -> Vec<usize> {
        match r {
            0 => vec![0],
            1 => vec![0, 1],
            _ => vec![1],
        }
    };
    let blocks = |r: usize, c: usize| -> Vec<(usize, usize)> {
        support(r).into_iter().flat_map(|i| support(c).into_iter().map(move |j| (i, j))).collect()
    };
    let raw = |r: usize, c: usize| -> FgModule {
        FgModule::direct_sum(&blocks(r, c).iter().map(|&(i, j)| k[i][j].clone()).collect::<Vec<_>>())
    };
    // coordinate map between block sums that keeps shared blocks
    let transfer = |src: &[(usize, usize)], dst: &[(usize, usize)], a: &FgModule, bm: &FgModule| -> ModMorphism {
        let mut m = IntMatrix::zeros(bm.num_generators(), a.num_generators());
        let off = |list: &[(usize, usize)], key: (usize, usize)| -> Option<usize> {
            let mut o = 0;
            for &x in list {
                if x == key {
                    return Some(o);
                }
                o += k[x.0][x.1].num_generators();
            }
            None
        };
        for &key in src {
            if let Some(d) = off(dst, key) {
                let s = off(src, key).expect("listed");
                for t in 0..k[key.0][key.1].num_generators() {
                    m[(d + t, s + t)] = BigInt::one();
                }
            }
        }
        ModMorphism::new(m, a, bm).expect("block inclusion or projection")
    };
    let mut fresh = Vec::new();
    for r in 0..3 {
        let mut row = Vec::new();
        for c in 0..3 {
            row.push(represent(rng, &raw(r, c)));
        }
        fresh.push(row);
    }
    // row r scaled by A^{2-r}, column c by B^{2-c} with A = B·C: every square commutes up to C
    let bb = coprime_scalar(rng, &exponent, 3);
    let aa = &bb * coprime_scalar(rng, &exponent, 3);
    let row_scale = |r: usize| num_traits::pow(aa.clone(), 2 - r);
    let col_scale = |c: usize| num_traits::pow(bb.clone(), 2 - c);
    let edge = |(r0, c0): (usize, usize), (r1, c1): (usize, usize)| -> ModMorphism {
        let scalar = if r0 == r1 { row_scale(r0) } else { col_scale(c0) };
        let m = transfer(&blocks(r0, c0), &blocks(r1, c1), &raw(r0, c0), &raw(r1, c1)).scale(&scalar);
        let (_, _, back) = &fresh[r0][c0];
        let (_, to, _) = &fresh[r1][c1];
        m.conjugate(back, to).expect("composable")
    };
    let rows: Vec<ShortSequence> = (0..3)
        .map(|r| ShortSequence::new(edge((r, 0), (r, 1)), edge((r, 1), (r, 2))).expect("composable"))
        .collect();
    let cols: Vec<ShortSequence> = (0..3)
        .map(|c| ShortSequence::new(edge((0, c), (1, c)), edge((1, c), (2, c))).expect("composable"))
        .collect();
    let [r0, r1, r2]: [ShortSequence; 3] = rows.try_into().expect("three rows");
    let [c0, c1, c2]: [ShortSequence; 3] = cols.try_into().expect("three columns");
    NineGrid::new([r0, r1, r2], [c0, c1, c2]).expect("shared modules agree")
}

/// One module per isomorphism type of abelian group of order `n`, as a
/// direct sum of cyclic prime-power groups.
pub fn abelian_groups_of_order(n: u64) -> Vec<FgModule> {
    let mut choices: Vec<Vec<Vec<i64>>> = Vec::new();
    for p in crate::arith::prime_factors(&b(n as i64)) {
        let p = i64::try_from(p).expect("small prime");
        let mut e = 0;
        let mut m = n;
        while m % p as u64 == 0 {
            m /= p as u64;
            e += 1;
        }
        choices.push(partitions(e, e).into_iter().map(|part| part.into_iter().map(|k| p.pow(k)).collect()).collect());
    }
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for opts in &choices {
        out = out.iter().flat_map(|pre| opts.iter().map(move |o| [pre.clone(), o.clone()].concat())).collect();
    }
    out.into_iter().map(|orders| FgModule::direct_sum(&orders.into_iter().map(FgModule::cyclic).collect::<Vec<_>>())).collect()
}

/// Partitions of `n` into parts of size at most `max`.
fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (1..=max.min(n))
        .rev()
        .flat_map(|k| partitions(n - k, k).into_iter().map(move |mut rest| {
            rest.insert(0, k);
            rest
        }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unimodular_inverse() {
        let mut r = rng(7);
        for n in 0..5 {
            let (w, inv) = unimodular(&mut r, n, 12);
            assert_eq!(w.mul(&inv), IntMatrix::identity(n));
        }
    }

    #[test]
    fn monics_are_monic() {
        let mut r = rng(3);
        for _ in 0..20 {
            assert!(monic(&mut r, 3, 6, 0.3).is_monic());
        }
    }

    #[test]
    fn represented_modules_are_isomorphic() {
        let mut r = rng(11);
        for _ in 0..20 {
            let m = direct_sum_module(&mut r, 3, 9, 0.2);
            let (m2, to, back) = represent(&mut r, &m);
            assert!(m.same_invariants(&m2));
            assert!(back.compose(&to).unwrap().equals(&ModMorphism::identity(&m)));
        }
    }

    #[test]
    fn group_counts() {
        let counts: Vec<usize> = [1u64, 2, 4, 8, 12, 16, 32, 64, 72, 128].iter().map(|&n| abelian_groups_of_order(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 2, 5, 7, 11, 6, 15]);
        assert!(abelian_groups_of_order(72).iter().all(|m| m.order() == Some(b(72))));
    }
}
