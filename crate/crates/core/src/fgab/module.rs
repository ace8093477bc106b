use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// A finitely generated abelian group, presented as the cokernel of an
/// integer relation matrix whose columns are relators written in generator
/// coordinates.
///
/// The canonical decomposition `Z/d_1 ⊕ … ⊕ Z/d_k ⊕ Z^r` (with `d_i | d_{i+1}`
/// and every `d_i ≥ 2`) is computed once at construction, together with the
/// coordinate changes between generators and canonical summands. Cloning is
/// cheap; the data is shared.
#[derive(Clone)]
pub struct FgModule(Arc<ModuleData>);

struct ModuleData {
    generators: usize,
    relations: IntMatrix,
    torsion: Vec<BigInt>,
    free_rank: usize,
    /// Canonical coordinates of a generator-coordinate vector: `to_canon · x`.
    to_canon: IntMatrix,
    /// Generator coordinates of the canonical summand generators, as columns.
    from_canon: IntMatrix,
}

impl FgModule {
    /// Presents `Z^generators / span(columns of relations)`.
    pub fn present(generators: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != generators {
            return Err(Error::DimensionMismatch(format!(
                "relation matrix has {} rows but the module has {} generators",
                relations.rows(),
                generators
            )));
        }
        let snf = smith_normal_form(&relations);
        let diag = snf.diagonal();
        let mut torsion = Vec::new();
        let mut kept = Vec::new();
        let mut free_rank = 0;
        for i in 0..generators {
            let d = diag.get(i).cloned().unwrap_or_default();
            if d.is_one() {
                continue;
            }
            kept.push(i);
            if d.is_zero() {
                free_rank += 1;
            } else {
                torsion.push(d);
            }
        }
        let to_canon = snf.u.select_rows(&kept);
        let from_canon = snf.u_inv.select_cols(&kept);
        Ok(Self(Arc::new(ModuleData { generators, relations, torsion, free_rank, to_canon, from_canon })))
    }

    /// The module `Z/d_1 ⊕ … ⊕ Z/d_k ⊕ Z^free_rank` with its diagonal
    /// presentation. Factors equal to 1 are allowed and contribute nothing.
    pub fn from_invariants(factors: &[BigInt], free_rank: usize) -> Self {
        let n = factors.len() + free_rank;
        let mut rel = IntMatrix::zeros(n, factors.len());
        for (i, d) in factors.iter().enumerate() {
            rel[(i, i)] = d.abs();
        }
        Self::present(n, rel).expect("diagonal presentation is consistent")
    }

    /// `Z/n`; `n = 0` gives `Z`.
    pub fn cyclic(n: i64) -> Self {
        if n == 0 {
            Self::free(1)
        } else {
            Self::from_invariants(&[BigInt::from(n)], 0)
        }
    }

    pub fn free(rank: usize) -> Self {
        Self::present(rank, IntMatrix::zeros(rank, 0)).expect("free presentation")
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    /// Direct sum with block-diagonal relations; generators are concatenated
    /// in order.
    pub fn direct_sum(parts: &[FgModule]) -> Self {
        let blocks: Vec<&IntMatrix> = parts.iter().map(|p| &p.0.relations).collect();
        let rel = IntMatrix::block_diag(&blocks);
        let n = parts.iter().map(|p| p.num_generators()).sum();
        Self::present(n, rel).expect("block presentation")
    }

    /// The same group presented by its canonical diagonal relations.
    pub fn canonical_module(&self) -> Self {
        Self::from_invariants(&self.0.torsion, self.0.free_rank)
    }

    pub fn num_generators(&self) -> usize {
        self.0.generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.0.relations
    }

    /// Torsion invariant factors, each at least 2, in divisibility order.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.0.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.0.free_rank
    }

    /// Number of canonical summands (torsion factors plus free rank).
    pub fn canonical_len(&self) -> usize {
        self.0.torsion.len() + self.0.free_rank
    }

    pub fn to_canon(&self) -> &IntMatrix {
        &self.0.to_canon
    }

    pub fn from_canon(&self) -> &IntMatrix {
        &self.0.from_canon
    }

    pub fn is_zero(&self) -> bool {
        self.canonical_len() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.0.free_rank == 0
    }

    pub fn is_torsion_free(&self) -> bool {
        self.0.torsion.is_empty()
    }

    /// Group order, or `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.0.torsion.iter().product())
    }

    /// Exponent of the torsion subgroup (1 when torsion-free).
    pub fn torsion_exponent(&self) -> BigInt {
        self.0.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    /// Modulus of canonical summand `i` (0 for free summands).
    pub fn canonical_modulus(&self, i: usize) -> BigInt {
        self.0.torsion.get(i).cloned().unwrap_or_default()
    }

    /// Canonical coordinates of `x`, torsion entries reduced into `[0, d_i)`.
    pub fn canonical_coords(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.num_generators(), "element has wrong number of coordinates");
        let mut c = self.0.to_canon.mul_vec(x);
        for (ci, d) in c.iter_mut().zip(&self.0.torsion) {
            *ci = ci.mod_floor(d);
        }
        c
    }

    /// Generator coordinates of the element with canonical coordinates `c`.
    pub fn from_canonical(&self, c: &[BigInt]) -> Vec<BigInt> {
        self.0.from_canon.mul_vec(c)
    }

    /// The unique coset representative of `x`.
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.from_canonical(&self.canonical_coords(x))
    }

    /// Whether `x` lies in the relation span, i.e. is zero in the module.
    pub fn is_zero_vector(&self, x: &[BigInt]) -> bool {
        let c = self.0.to_canon.mul_vec(x);
        c.iter().enumerate().all(|(i, ci)| match self.0.torsion.get(i) {
            Some(d) => ci.is_multiple_of(d),
            None => ci.is_zero(),
        })
    }

    pub fn element(&self, coords: Vec<BigInt>) -> Result<ModElement> {
        if coords.len() != self.num_generators() {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coordinates, module has {} generators",
                coords.len(),
                self.num_generators()
            )));
        }
        let coords = self.reduce(&coords);
        Ok(ModElement { module: self.clone(), coords })
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<ModElement> {
        self.element(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero_element(&self) -> ModElement {
        ModElement { module: self.clone(), coords: vec![BigInt::zero(); self.num_generators()] }
    }

    /// Generator coordinates of canonical summand generator `i`.
    pub fn canonical_generator(&self, i: usize) -> Vec<BigInt> {
        self.0.from_canon.column(i)
    }

    /// Whether two modules carry the identical presentation.
    pub fn same_presentation(&self, other: &FgModule) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.generators == other.0.generators && self.0.relations == other.0.relations)
    }

    /// Same invariant factors and free rank.
    pub fn same_invariants(&self, other: &FgModule) -> bool {
        self.0.torsion == other.0.torsion && self.0.free_rank == other.0.free_rank
    }
}

impl PartialEq for FgModule {
    fn eq(&self, other: &Self) -> bool {
        self.same_presentation(other)
    }
}

impl Eq for FgModule {}

impl fmt::Display for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.0.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.0.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl fmt::Debug for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgModule({self}; {} gens, relations {})", self.0.generators, self.0.relations)
    }
}

/// Additive order of an element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(BigInt),
    Infinite,
}

/// An element of an [`FgModule`], stored as its reduced coset representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModElement {
    module: FgModule,
    coords: Vec<BigInt>,
}

impl ModElement {
    pub fn module(&self) -> &FgModule {
        &self.module
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn canonical(&self) -> Vec<BigInt> {
        self.module.canonical_coords(&self.coords)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &ModElement) -> ModElement {
        assert!(self.module == other.module, "adding elements of different modules");
        let sum: Vec<BigInt> = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        ModElement { coords: self.module.reduce(&sum), module: self.module.clone() }
    }

    pub fn neg(&self) -> ModElement {
        self.scale(&BigInt::from(-1))
    }

    pub fn sub(&self, other: &ModElement) -> ModElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &BigInt) -> ModElement {
        let v: Vec<BigInt> = self.coords.iter().map(|a| a * r).collect();
        ModElement { coords: self.module.reduce(&v), module: self.module.clone() }
    }

    /// Least `n ≥ 1` with `n·x = 0`, or infinite.
    pub fn order(&self) -> Order {
        let c = self.canonical();
        let t = self.module.invariant_factors();
        if c[t.len()..].iter().any(|x| !x.is_zero()) {
            return Order::Infinite;
        }
        let n = c.iter().zip(t).fold(BigInt::one(), |acc, (ci, d)| acc.lcm(&(d / d.gcd(ci))));
        Order::Finite(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn present_examples() {
        let m = FgModule::present(2, IntMatrix::from_i64(2, 2, &[2, 0, 0, 0])).unwrap();
        assert_eq!(m.invariant_factors(), &big(&[2])[..]);
        assert_eq!(m.free_rank(), 1);

        let z8 = FgModule::present(1, IntMatrix::from_i64(1, 1, &[8])).unwrap();
        assert_eq!(z8.invariant_factors(), &big(&[8])[..]);
        assert_eq!(z8.free_rank(), 0);

        // columns are relators: (2,0) and (3,0); gcd 1 kills the first generator
        let z = FgModule::present(2, IntMatrix::from_i64(2, 2, &[2, 3, 0, 0])).unwrap();
        assert!(z.invariant_factors().is_empty());
        assert_eq!(z.free_rank(), 1);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(
            FgModule::present(3, IntMatrix::zeros(2, 2)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn element_orders() {
        let z8 = FgModule::cyclic(8);
        assert_eq!(z8.element_i64(&[4]).unwrap().order(), Order::Finite(BigInt::from(2)));
        assert_eq!(z8.element_i64(&[0]).unwrap().order(), Order::Finite(BigInt::one()));
        let z = FgModule::free(1);
        assert_eq!(z.element_i64(&[1]).unwrap().order(), Order::Infinite);
    }

    #[test]
    fn reduction_is_canonical() {
        let m = FgModule::present(2, IntMatrix::from_i64(2, 1, &[2, 4])).unwrap();
        // (1,2) is the relator halved; (2,4) is zero
        let a = m.element_i64(&[2, 4]).unwrap();
        assert!(a.is_zero());
        let x = m.element_i64(&[1, 1]).unwrap();
        let y = m.element_i64(&[3, 5]).unwrap();
        assert_eq!(x, y);
        assert_eq!(m.to_string(), "Z/2 ⊕ Z");
    }

    #[test]
    fn zero_module() {
        let z = FgModule::zero();
        assert!(z.is_zero());
        assert_eq!(z.num_generators(), 0);
        assert_eq!(z.relations().cols(), 0);
        assert_eq!(z.order(), Some(BigInt::one()));
    }
}
