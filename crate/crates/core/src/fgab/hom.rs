//! `Hom(A, B)` as a presented module, built summand by summand from the
//! canonical decompositions: `Hom(Z/a, Z/b) ≅ Z/gcd(a, b)`, `Hom(Z, B) ≅ B`,
//! `Hom(Z/a, Z) = 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use super::module::{FgModule, ModElement};
use super::morphism::ModMorphism;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
struct Piece {
    /// Canonical summand of the domain.
    src: usize,
    /// Canonical summand of the codomain.
    dst: usize,
    /// Canonical coordinate that the piece generator sends `src` to.
    unit: BigInt,
    /// Order of the piece (0 when free).
    modulus: BigInt,
}

/// The hom-module `Hom(domain, codomain)` with evaluation both ways.
#[derive(Clone, Debug)]
pub struct HomModule {
    domain: FgModule,
    codomain: FgModule,
    module: FgModule,
    pieces: Vec<Piece>,
}

impl HomModule {
    pub fn new(domain: &FgModule, codomain: &FgModule) -> Self {
        let mut torsion = Vec::new();
        let mut free = Vec::new();
        for i in 0..domain.canonical_len() {
            let a = domain.canonical_modulus(i);
            for j in 0..codomain.canonical_len() {
                let b = codomain.canonical_modulus(j);
                match (a.is_zero(), b.is_zero()) {
                    (false, false) => {
                        let g = a.gcd(&b);
                        if !g.is_one() {
                            torsion.push(Piece { src: i, dst: j, unit: &b / &g, modulus: g });
                        }
                    }
                    (false, true) => {}
                    (true, false) => torsion.push(Piece { src: i, dst: j, unit: BigInt::one(), modulus: b }),
                    (true, true) => free.push(Piece { src: i, dst: j, unit: BigInt::one(), modulus: BigInt::zero() }),
                }
            }
        }
        let factors: Vec<BigInt> = torsion.iter().map(|p| p.modulus.clone()).collect();
        let module = FgModule::from_invariants(&factors, free.len());
        torsion.extend(free);
        Self { domain: domain.clone(), codomain: codomain.clone(), module, pieces: torsion }
    }

    pub fn module(&self) -> &FgModule {
        &self.module
    }

    pub fn domain(&self) -> &FgModule {
        &self.domain
    }

    pub fn codomain(&self) -> &FgModule {
        &self.codomain
    }

    /// Order of each hom-module coordinate (0 when free), aligned with
    /// [`HomModule::coordinates`].
    pub fn coordinate_moduli(&self) -> Vec<BigInt> {
        self.pieces.iter().map(|p| p.modulus.clone()).collect()
    }

    /// The morphism represented by hom-module coordinates `h`.
    pub fn evaluate(&self, h: &[BigInt]) -> ModMorphism {
        assert_eq!(h.len(), self.pieces.len(), "hom coordinates have wrong length");
        let mut phi = IntMatrix::zeros(self.codomain.canonical_len(), self.domain.canonical_len());
        for (p, c) in self.pieces.iter().zip(h) {
            phi[(p.dst, p.src)] += c * &p.unit;
        }
        let m = self.codomain.from_canon().mul(&phi).mul(self.domain.to_canon());
        ModMorphism::new(m, &self.domain, &self.codomain).expect("hom pieces are well defined")
    }

    pub fn evaluate_element(&self, h: &ModElement) -> ModMorphism {
        self.evaluate(h.coords())
    }

    /// Hom-module coordinates of `f`, reduced.
    pub fn coordinates(&self, f: &ModMorphism) -> Result<Vec<BigInt>> {
        if f.domain() != &self.domain || f.codomain() != &self.codomain {
            return Err(Error::DimensionMismatch("morphism does not belong to this hom-module".into()));
        }
        let phi = f.canonical_matrix();
        let mut out = Vec::with_capacity(self.pieces.len());
        for p in &self.pieces {
            let b = self.codomain.canonical_modulus(p.dst);
            let mut v = phi[(p.dst, p.src)].clone();
            if !b.is_zero() {
                v = v.mod_floor(&b);
            }
            debug_assert!(v.is_multiple_of(&p.unit));
            v /= &p.unit;
            if !p.modulus.is_zero() {
                v = v.mod_floor(&p.modulus);
            }
            out.push(v);
        }
        Ok(out)
    }

    pub fn element_of(&self, f: &ModMorphism) -> Result<ModElement> {
        self.module.element(self.coordinates(f)?)
    }

    /// Evaluations of the hom-module generators.
    pub fn generator_maps(&self) -> Vec<ModMorphism> {
        (0..self.pieces.len())
            .map(|k| {
                let mut e = vec![BigInt::zero(); self.pieces.len()];
                e[k] = BigInt::one();
                self.evaluate(&e)
            })
            .collect()
    }
}

/// Precomposition `f^*: Hom(B, E) → Hom(A, E)` for `f: A → B`.
pub fn induced_hom(f: &ModMorphism, e: &FgModule) -> (HomModule, HomModule, ModMorphism) {
    let hb = HomModule::new(f.codomain(), e);
    let ha = HomModule::new(f.domain(), e);
    let cols: Vec<Vec<BigInt>> = hb
        .generator_maps()
        .iter()
        .map(|g| ha.coordinates(&g.compose(f).expect("composable")).expect("same hom"))
        .collect();
    let m = IntMatrix::from_columns(ha.module().num_generators(), &cols);
    let map = ModMorphism::new(m, hb.module(), ha.module()).expect("precomposition is a morphism");
    (hb, ha, map)
}

/// Postcomposition `g_*: Hom(A, E) → Hom(A, F)` for `g: E → F`.
pub fn induced_post(g: &ModMorphism, a: &FgModule) -> (HomModule, HomModule, ModMorphism) {
    let he = HomModule::new(a, g.domain());
    let hf = HomModule::new(a, g.codomain());
    let cols: Vec<Vec<BigInt>> = he
        .generator_maps()
        .iter()
        .map(|h| hf.coordinates(&g.compose(h).expect("composable")).expect("same hom"))
        .collect();
    let m = IntMatrix::from_columns(hf.module().num_generators(), &cols);
    let map = ModMorphism::new(m, he.module(), hf.module()).expect("postcomposition is a morphism");
    (he, hf, map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_z2_z4() {
        let h = HomModule::new(&FgModule::cyclic(2), &FgModule::cyclic(4));
        assert_eq!(h.module().invariant_factors(), &[BigInt::from(2)][..]);
        // enumerate the 4 candidate matrices [k], k in 0..4: well-defined iff 2k ≡ 0 mod 4
        let (z2, z4) = (FgModule::cyclic(2), FgModule::cyclic(4));
        let valid: Vec<i64> = (0..4).filter(|&k| ModMorphism::from_i64(&[k], &z2, &z4).is_ok()).collect();
        assert_eq!(valid, vec![0, 2]);
        for k in valid {
            let f = ModMorphism::from_i64(&[k], &z2, &z4).unwrap();
            let c = h.coordinates(&f).unwrap();
            assert!(h.evaluate(&c).equals(&f));
        }
    }

    #[test]
    fn hom_from_z_and_into_z() {
        let m = FgModule::direct_sum(&[FgModule::cyclic(6), FgModule::free(1)]);
        let h = HomModule::new(&FgModule::free(1), &m);
        assert!(h.module().same_invariants(&m));
        let h = HomModule::new(&FgModule::cyclic(2), &FgModule::free(1));
        assert!(h.module().is_zero());
    }

    #[test]
    fn precomposition() {
        let z = FgModule::free(1);
        let two = ModMorphism::multiplication(&z, &BigInt::from(2));
        let (_, _, star) = induced_hom(&two, &z);
        assert_eq!(star.matrix(), &IntMatrix::from_i64(1, 1, &[2]));
    }
}
