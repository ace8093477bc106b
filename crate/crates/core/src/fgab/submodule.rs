use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;

use super::matrix::IntMatrix;
use super::module::{FgModule, ModElement};
use super::morphism::{Cokernel, ModMorphism};
use super::snf::LinearSolver;

/// A submodule carried as a monic embedding `source → ambient`.
///
/// The source is always presented in canonical diagonal form, so its
/// generators correspond one-to-one with its cyclic summands.
#[derive(Clone)]
pub struct Submodule {
    embedding: ModMorphism,
    solver: Arc<OnceLock<LinearSolver>>,
}

impl Submodule {
    /// The submodule of `ambient` generated by the columns of `gens`
    /// (generator coordinates of `ambient`).
    pub fn generated_by(ambient: &FgModule, gens: &IntMatrix) -> Submodule {
        assert_eq!(gens.rows(), ambient.num_generators(), "generator vectors have wrong length");
        let p = gens.cols();
        // t ∈ Z^p is a relation iff gens·t lies in the relation span of the ambient.
        let system = gens.hstack(ambient.relations());
        let kernel = LinearSolver::new(&system).kernel_basis();
        let idx: Vec<usize> = (0..p).collect();
        let raw = FgModule::present(p, kernel.select_rows(&idx)).expect("row count matches");
        let source = raw.canonical_module();
        let matrix = gens.mul(raw.from_canon());
        let embedding = ModMorphism::unchecked(matrix, &source, ambient);
        Submodule { embedding, solver: Arc::new(OnceLock::new()) }
    }

    /// Wraps a morphism already known to be monic.
    pub fn from_monic(embedding: ModMorphism) -> Submodule {
        debug_assert!(embedding.is_monic());
        Submodule { embedding, solver: Arc::new(OnceLock::new()) }
    }

    pub fn generated_by_elements(ambient: &FgModule, elements: &[ModElement]) -> Submodule {
        let cols: Vec<Vec<BigInt>> = elements.iter().map(|e| e.coords().to_vec()).collect();
        Self::generated_by(ambient, &IntMatrix::from_columns(ambient.num_generators(), &cols))
    }

    pub fn whole(m: &FgModule) -> Submodule {
        Self::generated_by(m, &IntMatrix::identity(m.num_generators()))
    }

    pub fn zero(m: &FgModule) -> Submodule {
        Self::generated_by(m, &IntMatrix::zeros(m.num_generators(), 0))
    }

    pub fn ambient(&self) -> &FgModule {
        self.embedding.codomain()
    }

    pub fn source(&self) -> &FgModule {
        self.embedding.domain()
    }

    pub fn embedding(&self) -> &ModMorphism {
        &self.embedding
    }

    /// Generator coordinates (in the ambient) of the source generators.
    pub fn generators(&self) -> &IntMatrix {
        self.embedding.matrix()
    }

    fn solver(&self) -> &LinearSolver {
        self.solver.get_or_init(|| LinearSolver::new(&self.generators().hstack(self.ambient().relations())))
    }

    /// Source coordinates of a preimage of `x`, if `x` lies in the submodule.
    pub fn preimage(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let sol = self.solver().solve(x)?;
        let t = &sol[..self.source().num_generators()];
        Some(self.source().reduce(t))
    }

    pub fn membership(&self, x: &ModElement) -> Option<ModElement> {
        assert!(x.module() == self.ambient(), "element is not in the ambient module");
        let t = self.preimage(x.coords())?;
        Some(self.source().element(t).expect("shape"))
    }

    pub fn contains_vec(&self, x: &[BigInt]) -> bool {
        self.solver().solve(x).is_some()
    }

    /// `other ⊆ self`, both inside the same ambient.
    pub fn contains(&self, other: &Submodule) -> bool {
        let g = other.generators();
        (0..g.cols()).all(|j| self.contains_vec(&g.column(j)))
    }

    pub fn same_as(&self, other: &Submodule) -> bool {
        self.contains(other) && other.contains(self)
    }

    /// Expresses `self` as a submodule of `outer.source()`, provided
    /// `self ⊆ outer` inside their common ambient.
    pub fn within(&self, outer: &Submodule) -> Option<Submodule> {
        let g = self.generators();
        let mut cols = Vec::with_capacity(g.cols());
        for j in 0..g.cols() {
            cols.push(outer.preimage(&g.column(j))?);
        }
        let m = IntMatrix::from_columns(outer.source().num_generators(), &cols);
        Some(Submodule::generated_by(outer.source(), &m))
    }

    /// `ambient / self` with its projection.
    pub fn quotient(&self) -> Cokernel {
        self.embedding.cokernel()
    }

    /// Image of the submodule under `f: ambient → N`.
    pub fn image_under(&self, f: &ModMorphism) -> Submodule {
        Submodule::generated_by(f.codomain(), &f.matrix().mul(self.generators()))
    }

    /// The submodule `r·self`.
    pub fn scaled(&self, r: &BigInt) -> Submodule {
        Submodule::generated_by(self.ambient(), &self.generators().scale(r))
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        Submodule::generated_by(self.ambient(), &self.generators().hstack(other.generators()))
    }
}

/// `outer / inner` for nested submodules `inner ⊆ outer` of a common
/// ambient, returned with the projection from `outer.source()`.
/// `None` when `inner` is not contained in `outer`.
pub fn subquotient(outer: &Submodule, inner: &Submodule) -> Option<Cokernel> {
    let rel = inner.within(outer)?;
    Some(rel.quotient())
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Submodule({} ≤ {}, generators {})", self.source(), self.ambient(), self.generators())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_in_z8() {
        let z8 = FgModule::cyclic(8);
        let s = Submodule::generated_by_elements(&z8, &[z8.element_i64(&[2]).unwrap()]);
        assert_eq!(s.source().invariant_factors(), &[BigInt::from(4)][..]);
        let pre = s.membership(&z8.element_i64(&[2]).unwrap()).unwrap();
        // the preimage maps back onto 2
        assert_eq!(s.embedding().apply(&pre), z8.element_i64(&[2]).unwrap());
        assert!(s.membership(&z8.element_i64(&[3]).unwrap()).is_none());
    }

    #[test]
    fn nested_subquotient() {
        let z12 = FgModule::cyclic(12);
        let outer = Submodule::generated_by_elements(&z12, &[z12.element_i64(&[2]).unwrap()]);
        let inner = Submodule::generated_by_elements(&z12, &[z12.element_i64(&[6]).unwrap()]);
        let q = subquotient(&outer, &inner).unwrap();
        assert_eq!(q.module.invariant_factors(), &[BigInt::from(3)][..]);
        assert!(subquotient(&inner, &outer).is_none());
    }
}
