//! Essential submodules.
//!
//! For a finitely generated abelian group `M`, a submodule `S` is essential
//! exactly when `M/S` is finite and `S` contains the socle of `M`, the sum
//! of all subgroups of prime order. [`essential_oracle`] decides the same
//! question by brute force on finite groups.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::prime_factors;
use crate::error::{Error, Result};
use crate::fgab::{FgModule, IntMatrix, Submodule};

/// Largest group the oracle is willing to enumerate.
pub const ORACLE_LIMIT: usize = 1 << 22;

/// Socle of `M`: per torsion factor `Z/d` and prime `p | d`, the subgroup
/// generated by `(d/p)` times the canonical generator.
pub fn socle(m: &FgModule) -> Submodule {
    let mut cols = Vec::new();
    for (i, d) in m.invariant_factors().iter().enumerate() {
        for p in prime_factors(d) {
            let g: Vec<BigInt> = m.canonical_generator(i).iter().map(|x| x * (d / &p)).collect();
            cols.push(g);
        }
    }
    Submodule::generated_by(m, &IntMatrix::from_columns(m.num_generators(), &cols))
}

/// The two halves of the essentiality criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialVerdict {
    /// `M/S` is finite.
    pub finite_index: bool,
    /// `socle(M) ⊆ S`.
    pub contains_socle: bool,
}

impl EssentialVerdict {
    pub fn holds(&self) -> bool {
        self.finite_index && self.contains_socle
    }
}

pub fn essential_verdict(s: &Submodule, m: &FgModule) -> EssentialVerdict {
    assert!(s.ambient() == m, "submodule lives in a different ambient module");
    let finite_index = s.source().free_rank() == m.free_rank();
    let contains_socle = s.contains(&socle(m));
    EssentialVerdict { finite_index, contains_socle }
}

/// `S ≤_e M`.
pub fn is_essential(s: &Submodule, m: &FgModule) -> bool {
    essential_verdict(s, m).holds()
}

/// `inner ≤_e outer` for nested submodules of a common ambient; `None`
/// when `inner ⊄ outer`.
pub fn is_essential_in(inner: &Submodule, outer: &Submodule) -> Option<bool> {
    let rel = inner.within(outer)?;
    Some(is_essential(&rel, outer.source()))
}

/// Dense enumeration of a finite group via mixed-radix indices over its
/// canonical coordinates.
pub(crate) struct Enumerator {
    radix: Vec<usize>,
    size: usize,
}

impl Enumerator {
    pub(crate) fn new(m: &FgModule) -> Result<Self> {
        if m.free_rank() > 0 {
            return Err(Error::InfiniteModule { free_rank: m.free_rank() });
        }
        let mut radix = Vec::new();
        let mut size = 1usize;
        for d in m.invariant_factors() {
            let d = d.to_usize().filter(|&d| d <= ORACLE_LIMIT).ok_or_else(too_large)?;
            size = size.checked_mul(d).filter(|&s| s <= ORACLE_LIMIT).ok_or_else(too_large)?;
            radix.push(d);
        }
        Ok(Self { radix, size })
    }

    pub(crate) fn size(&self) -> usize {
        self.size
    }

    /// Index of a reduced canonical coordinate vector.
    pub(crate) fn index(&self, c: &[BigInt]) -> usize {
        let mut k = 0;
        for (x, d) in c.iter().zip(&self.radix) {
            k = k * d + x.to_usize().expect("reduced coordinate");
        }
        k
    }

    pub(crate) fn digits(&self, mut k: usize) -> Vec<usize> {
        let mut out = vec![0; self.radix.len()];
        for (slot, d) in out.iter_mut().zip(&self.radix).rev() {
            *slot = k % d;
            k /= d;
        }
        out
    }

    pub(crate) fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.digits(a), self.digits(b));
        let mut k = 0;
        for ((u, v), d) in x.iter().zip(&y).zip(&self.radix) {
            k = k * d + (u + v) % d;
        }
        k
    }

    /// Membership table of the subgroup generated by `gens` (indices).
    pub(crate) fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.size];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.add(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }
}

fn too_large() -> Error {
    Error::Precondition(format!("module too large to enumerate (limit {ORACLE_LIMIT} elements)"))
}

/// Decides `S ≤_e M` by testing `S ∩ ⟨x⟩ ≠ 0` for every nonzero `x`.
pub fn essential_oracle(s: &Submodule, m: &FgModule) -> Result<bool> {
    assert!(s.ambient() == m, "submodule lives in a different ambient module");
    let en = Enumerator::new(m)?;
    let g = s.generators();
    let gens: Vec<usize> = (0..g.cols()).map(|j| en.index(&m.canonical_coords(&g.column(j)))).collect();
    let in_s = en.closure(&gens);
    for x in 1..en.size() {
        let mut y = x;
        let mut meets = false;
        while y != 0 {
            if in_s[y] {
                meets = true;
                break;
            }
            y = en.add(y, x);
        }
        if !meets {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All elements of a finite module as reduced generator coordinates.
pub fn enumerate_elements(m: &FgModule) -> Result<Vec<Vec<BigInt>>> {
    let en = Enumerator::new(m)?;
    Ok((0..en.size())
        .map(|k| {
            let c: Vec<BigInt> = en.digits(k).into_iter().map(BigInt::from).collect();
            m.from_canonical(&c)
        })
        .collect())
}

/// Every subgroup of a finite module, or an error once more than `limit`
/// have been found.
pub fn subgroup_lattice(m: &FgModule, limit: usize) -> Result<Vec<Submodule>> {
    let en = Enumerator::new(m)?;
    let n = en.size();
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| en.add(a, b)).collect()).collect();
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut zero = vec![false; n];
    zero[0] = true;
    let mut queue: Vec<(Vec<bool>, Vec<usize>)> = vec![(zero, Vec::new())];
    seen.insert(queue[0].0.clone());
    let mut out = Vec::new();
    while let Some((members, gens)) = queue.pop() {
        for x in 1..n {
            if members[x] {
                continue;
            }
            let grown = join_cyclic(&table, &members, x);
            if seen.insert(grown.clone()) {
                if seen.len() > limit {
                    return Err(Error::Precondition(format!("more than {limit} subgroups")));
                }
                let mut g = gens.clone();
                g.push(x);
                queue.push((grown, g));
            }
        }
        out.push(to_submodule(m, &en, &gens));
    }
    Ok(out)
}

/// `H + ⟨x⟩` as a membership table, from the cosets `H + k·x`.
fn join_cyclic(table: &[Vec<usize>], members: &[bool], x: usize) -> Vec<bool> {
    let h: Vec<usize> = (0..members.len()).filter(|&y| members[y]).collect();
    let mut out = members.to_vec();
    let mut kx = x;
    while !members[kx] {
        for &y in &h {
            out[table[y][kx]] = true;
        }
        kx = table[kx][x];
    }
    out
}

fn to_submodule(m: &FgModule, en: &Enumerator, gens: &[usize]) -> Submodule {
    let cols: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|&g| m.from_canonical(&en.digits(g).into_iter().map(BigInt::from).collect::<Vec<_>>()))
        .collect();
    Submodule::generated_by(m, &IntMatrix::from_columns(m.num_generators(), &cols))
}

/// The distinct cyclic subgroups `⟨x⟩` of a finite module.
pub fn cyclic_subgroups(m: &FgModule) -> Result<Vec<Submodule>> {
    let en = Enumerator::new(m)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in 0..en.size() {
        if seen.insert(en.closure(&[x])) {
            out.push(to_submodule(m, &en, &[x]));
        }
    }
    Ok(out)
}
