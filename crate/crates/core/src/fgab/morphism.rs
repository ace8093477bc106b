use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::matrix::IntMatrix;
use super::module::{FgModule, ModElement};
use super::snf::LinearSolver;
use super::submodule::Submodule;
use crate::error::{Error, Result};

/// A homomorphism between presented modules, given by its matrix on
/// generator coordinates (`codomain.num_generators() × domain.num_generators()`).
///
/// Construction through [`ModMorphism::new`] certifies that every relator of
/// the domain lands in the relation span of the codomain.
#[derive(Clone)]
pub struct ModMorphism {
    domain: FgModule,
    codomain: FgModule,
    matrix: IntMatrix,
}

impl ModMorphism {
    pub fn new(matrix: IntMatrix, domain: &FgModule, codomain: &FgModule) -> Result<Self> {
        if matrix.rows() != codomain.num_generators() || matrix.cols() != domain.num_generators() {
            return Err(Error::DimensionMismatch(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                codomain.num_generators(),
                domain.num_generators()
            )));
        }
        let images = matrix.mul(domain.relations());
        for j in 0..images.cols() {
            if !codomain.is_zero_vector(&images.column(j)) {
                return Err(Error::NotAMorphism { relator: j });
            }
        }
        Ok(Self::unchecked(matrix, domain, codomain))
    }

    pub fn from_i64(entries: &[i64], domain: &FgModule, codomain: &FgModule) -> Result<Self> {
        let (r, c) = (codomain.num_generators(), domain.num_generators());
        if entries.len() != r * c {
            return Err(Error::DimensionMismatch(format!(
                "{} entries given for a {r}x{c} morphism matrix",
                entries.len()
            )));
        }
        Self::new(IntMatrix::from_i64(r, c, entries), domain, codomain)
    }

    /// Caller guarantees well-definedness (e.g. composition of morphisms).
    pub(crate) fn unchecked(matrix: IntMatrix, domain: &FgModule, codomain: &FgModule) -> Self {
        debug_assert_eq!(matrix.rows(), codomain.num_generators());
        debug_assert_eq!(matrix.cols(), domain.num_generators());
        Self { domain: domain.clone(), codomain: codomain.clone(), matrix }
    }

    pub fn identity(m: &FgModule) -> Self {
        Self::unchecked(IntMatrix::identity(m.num_generators()), m, m)
    }

    pub fn zero(domain: &FgModule, codomain: &FgModule) -> Self {
        Self::unchecked(IntMatrix::zeros(codomain.num_generators(), domain.num_generators()), domain, codomain)
    }

    /// Multiplication by `r` on `m`.
    pub fn multiplication(m: &FgModule, r: &BigInt) -> Self {
        Self::identity(m).scale(r)
    }

    pub fn domain(&self) -> &FgModule {
        &self.domain
    }

    pub fn codomain(&self) -> &FgModule {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Matrix in canonical coordinates (unreduced).
    pub fn canonical_matrix(&self) -> IntMatrix {
        self.codomain.to_canon().mul(&self.matrix).mul(self.domain.from_canon())
    }

    pub fn apply(&self, x: &ModElement) -> ModElement {
        assert!(x.module() == &self.domain, "element is not in the domain");
        self.codomain.element(self.matrix.mul_vec(x.coords())).expect("shape checked")
    }

    pub fn apply_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(x)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ModMorphism) -> Result<ModMorphism> {
        if inner.codomain != self.domain {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose: inner codomain {} differs from outer domain {}",
                inner.codomain, self.domain
            )));
        }
        Ok(Self::unchecked(self.matrix.mul(&inner.matrix), &inner.domain, &self.codomain))
    }

    fn check_parallel(&self, other: &ModMorphism) -> Result<()> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::DimensionMismatch("morphisms are not parallel".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &ModMorphism) -> Result<ModMorphism> {
        self.check_parallel(other)?;
        Ok(Self::unchecked(self.matrix.add(&other.matrix), &self.domain, &self.codomain))
    }

    pub fn sub(&self, other: &ModMorphism) -> Result<ModMorphism> {
        self.check_parallel(other)?;
        Ok(Self::unchecked(self.matrix.sub(&other.matrix), &self.domain, &self.codomain))
    }

    pub fn scale(&self, r: &BigInt) -> ModMorphism {
        Self::unchecked(self.matrix.scale(r), &self.domain, &self.codomain)
    }

    pub fn neg(&self) -> ModMorphism {
        self.scale(&BigInt::from(-1))
    }

    /// Block-diagonal morphism between the direct sums of domains and codomains.
    pub fn direct_sum(parts: &[ModMorphism]) -> ModMorphism {
        let dom = FgModule::direct_sum(&parts.iter().map(|p| p.domain.clone()).collect::<Vec<_>>());
        let cod = FgModule::direct_sum(&parts.iter().map(|p| p.codomain.clone()).collect::<Vec<_>>());
        let blocks: Vec<&IntMatrix> = parts.iter().map(|p| &p.matrix).collect();
        Self::unchecked(IntMatrix::block_diag(&blocks), &dom, &cod)
    }

    /// Whether every generator maps to zero.
    pub fn is_zero(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.codomain.is_zero_vector(&self.matrix.column(j)))
    }

    /// Equality as maps (same domain and codomain, equal on every generator).
    pub fn equals(&self, other: &ModMorphism) -> bool {
        self.sub(other).map(|d| d.is_zero()).unwrap_or(false)
    }

    pub fn kernel(&self) -> Submodule {
        let n = self.domain.num_generators();
        let system = self.matrix.hstack(self.codomain.relations());
        let basis = LinearSolver::new(&system).kernel_basis();
        let idx: Vec<usize> = (0..n).collect();
        Submodule::generated_by(&self.domain, &basis.select_rows(&idx))
    }

    pub fn image(&self) -> Submodule {
        Submodule::generated_by(&self.codomain, &self.matrix)
    }

    pub fn cokernel(&self) -> Cokernel {
        let rel = self.codomain.relations().hstack(&self.matrix);
        let module = FgModule::present(self.codomain.num_generators(), rel).expect("row count matches");
        let projection = Self::unchecked(IntMatrix::identity(module.num_generators()), &self.codomain, &module);
        Cokernel { module, projection }
    }

    pub fn is_monic(&self) -> bool {
        self.kernel().source().is_zero()
    }

    pub fn is_epic(&self) -> bool {
        self.cokernel().module.is_zero()
    }

    /// Morphism with the same action but rewritten over different
    /// presentations, via isomorphisms `dom_iso: new_domain → domain` and
    /// `cod_iso: codomain → new_codomain`.
    pub fn conjugate(&self, dom_iso: &ModMorphism, cod_iso: &ModMorphism) -> Result<ModMorphism> {
        cod_iso.compose(self)?.compose(dom_iso)
    }
}

impl fmt::Debug for ModMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModMorphism({} → {}, {})", self.domain, self.codomain, self.matrix)
    }
}

/// Quotient module with its projection from the original codomain.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub module: FgModule,
    pub projection: ModMorphism,
}

/// Result of [`is_isomorphic`]: the verdict and, when positive, an explicit
/// isomorphism `M → N`.
#[derive(Clone, Debug)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    pub witness: Option<ModMorphism>,
}

/// Decides `M ≅ N` by comparing canonical invariants; the witness maps each
/// element of `M` to the element of `N` with the same canonical coordinates.
pub fn is_isomorphic(m: &FgModule, n: &FgModule) -> IsoVerdict {
    if !m.same_invariants(n) {
        return IsoVerdict { isomorphic: false, witness: None };
    }
    let matrix = n.from_canon().mul(m.to_canon());
    let witness = ModMorphism::new(matrix, m, n).expect("canonical forms agree");
    IsoVerdict { isomorphic: true, witness: Some(witness) }
}

/// Inclusion of summand `k` into the direct sum of `parts`.
pub fn summand_inclusion(parts: &[FgModule], k: usize) -> ModMorphism {
    let sum = FgModule::direct_sum(parts);
    let offset: usize = parts[..k].iter().map(|p| p.num_generators()).sum();
    let mut m = IntMatrix::zeros(sum.num_generators(), parts[k].num_generators());
    for i in 0..parts[k].num_generators() {
        m[(offset + i, i)] = BigInt::one();
    }
    ModMorphism::unchecked(m, &parts[k], &sum)
}

/// Projection of the direct sum of `parts` onto summand `k`.
pub fn summand_projection(parts: &[FgModule], k: usize) -> ModMorphism {
    let sum = FgModule::direct_sum(parts);
    let offset: usize = parts[..k].iter().map(|p| p.num_generators()).sum();
    let mut m = IntMatrix::zeros(parts[k].num_generators(), sum.num_generators());
    for i in 0..parts[k].num_generators() {
        m[(i, offset + i)] = BigInt::one();
    }
    ModMorphism::unchecked(m, &sum, &parts[k])
}

/// `[f_1 … f_k]: A_1 ⊕ … ⊕ A_k → B` from maps out of each summand.
pub fn copair(parts: &[ModMorphism], codomain: &FgModule) -> Result<ModMorphism> {
    let doms: Vec<FgModule> = parts.iter().map(|p| p.domain().clone()).collect();
    let sum = FgModule::direct_sum(&doms);
    let mut m = IntMatrix::zeros(codomain.num_generators(), sum.num_generators());
    let mut c0 = 0;
    for p in parts {
        if p.codomain() != codomain {
            return Err(Error::DimensionMismatch("copair codomains differ".into()));
        }
        m.set_block(0, c0, p.matrix());
        c0 += p.domain().num_generators();
    }
    Ok(ModMorphism::unchecked(m, &sum, codomain))
}

/// `(f_1, …, f_k): A → B_1 ⊕ … ⊕ B_k` from maps into each summand.
pub fn pair(parts: &[ModMorphism], domain: &FgModule) -> Result<ModMorphism> {
    let cods: Vec<FgModule> = parts.iter().map(|p| p.codomain().clone()).collect();
    let sum = FgModule::direct_sum(&cods);
    let mut m = IntMatrix::zeros(sum.num_generators(), domain.num_generators());
    let mut r0 = 0;
    for p in parts {
        if p.domain() != domain {
            return Err(Error::DimensionMismatch("pair domains differ".into()));
        }
        m.set_block(r0, 0, p.matrix());
        r0 += p.codomain().num_generators();
    }
    Ok(ModMorphism::unchecked(m, domain, &sum))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_inclusion_is_accepted() {
        let z2 = FgModule::cyclic(2);
        let z8 = FgModule::cyclic(8);
        assert!(ModMorphism::from_i64(&[4], &z2, &z8).is_ok());
        assert!(matches!(ModMorphism::from_i64(&[1], &z2, &z8), Err(Error::NotAMorphism { relator: 0 })));
        let m = FgModule::present(2, IntMatrix::from_i64(2, 1, &[3, 6])).unwrap();
        assert!(ModMorphism::new(IntMatrix::identity(2), &m, &m).is_ok());
    }

    #[test]
    fn kernel_of_times_eight() {
        let z8 = FgModule::cyclic(8);
        let z16 = FgModule::cyclic(16);
        let g = ModMorphism::from_i64(&[8], &z8, &z16).unwrap();
        let k = g.kernel();
        assert_eq!(k.source().invariant_factors(), &[BigInt::from(4)][..]);
        // enumerate: 8n ≡ 0 mod 16 iff n even
        for n in 0..8 {
            let x = z8.element_i64(&[n]).unwrap();
            assert_eq!(k.membership(&x).is_some(), n % 2 == 0);
        }
        let im = g.image();
        assert_eq!(im.source().invariant_factors(), &[BigInt::from(2)][..]);
        let ck = g.cokernel();
        assert_eq!(ck.module.invariant_factors(), &[BigInt::from(8)][..]);
    }

    #[test]
    fn identity_and_zero_kernels() {
        let z6 = FgModule::cyclic(6);
        assert!(ModMorphism::identity(&z6).kernel().source().is_zero());
        let k = ModMorphism::zero(&z6, &z6).kernel();
        assert!(is_isomorphic(k.source(), &z6).isomorphic);
    }

    #[test]
    fn images_and_cokernels_on_z() {
        let z = FgModule::free(1);
        let zero = ModMorphism::zero(&z, &z);
        assert!(zero.image().source().is_zero());
        assert_eq!(zero.cokernel().module.free_rank(), 1);
        let two = ModMorphism::multiplication(&z, &BigInt::from(2));
        assert_eq!(two.image().source().free_rank(), 1);
        assert_eq!(two.cokernel().module.invariant_factors(), &[BigInt::from(2)][..]);
    }

    #[test]
    fn isomorphism_witnesses() {
        let a = FgModule::direct_sum(&[FgModule::cyclic(2), FgModule::cyclic(4)]);
        let b = FgModule::present(2, IntMatrix::from_i64(2, 2, &[2, 0, 0, 4])).unwrap();
        let v = is_isomorphic(&a, &b);
        assert!(v.isomorphic);
        let w = v.witness.unwrap();
        assert!(w.is_monic() && w.is_epic());
        assert!(!is_isomorphic(&FgModule::cyclic(8), &a).isomorphic);
        // Z/2 ⊕ Z/3 ≅ Z/6
        let s = FgModule::direct_sum(&[FgModule::cyclic(2), FgModule::cyclic(3)]);
        assert!(is_isomorphic(&s, &FgModule::cyclic(6)).isomorphic);
    }
}
