//! Sequences, complexes and e-exactness.
//!
//! A sequence `X → Y → Z` is e-exact at `Y` when `Im ⊆ Ker` and the image
//! is an essential submodule of the kernel.

mod nine;
mod scalar;
mod split;

pub use nine::{verify_nine_lemma, NineGrid, NineMode, NineReport, SquareCheck};
pub use scalar::{solve_scalar, solve_scalar_commute, AdmissibleScalars, CommuteShape, ScalarCommute, ScalarWitness};
pub use split::{check_e_split, scaled_submodule, ESplitReport};

use std::fmt;

use crate::error::{Error, Result};
use crate::essential::is_essential_in;
use crate::fgab::{FgModule, ModMorphism};

/// Outcome of an e-exactness check at one position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EExactVerdict {
    pub image_in_kernel: bool,
    pub essential: bool,
}

impl EExactVerdict {
    pub fn holds(&self) -> bool {
        self.image_in_kernel && self.essential
    }
}

/// `Im f ≤_e Ker g` for composable `f`, `g`.
pub fn e_exact_pair(f: &ModMorphism, g: &ModMorphism) -> EExactVerdict {
    assert!(f.codomain() == g.domain(), "maps are not composable");
    let im = f.image();
    let ker = g.kernel();
    match is_essential_in(&im, &ker) {
        Some(essential) => EExactVerdict { image_in_kernel: true, essential },
        None => EExactVerdict { image_in_kernel: false, essential: false },
    }
}

/// Classical exactness `Im f = Ker g`.
pub fn exact_pair(f: &ModMorphism, g: &ModMorphism) -> bool {
    assert!(f.codomain() == g.domain(), "maps are not composable");
    f.image().same_as(&g.kernel())
}

/// Objects `X^lo, …, X^hi` with differentials `d^i: X^i → X^{i+1}`.
///
/// Outside `[lo, hi]` the objects are zero, so `d^{lo-1}` and `d^hi` are
/// zero maps. Consecutive differentials need not compose to zero.
#[derive(Clone)]
pub struct CochainComplex {
    lo: i64,
    objects: Vec<FgModule>,
    maps: Vec<ModMorphism>,
}

impl CochainComplex {
    pub fn new(lo: i64, objects: Vec<FgModule>, maps: Vec<ModMorphism>) -> Result<Self> {
        if maps.len() + 1 != objects.len() && !(objects.is_empty() && maps.is_empty()) {
            return Err(Error::DimensionMismatch(format!(
                "{} objects need {} maps, got {}",
                objects.len(),
                objects.len().saturating_sub(1),
                maps.len()
            )));
        }
        for (k, d) in maps.iter().enumerate() {
            if d.domain() != &objects[k] || d.codomain() != &objects[k + 1] {
                return Err(Error::DimensionMismatch(format!("differential {} does not connect its objects", lo + k as i64)));
            }
        }
        Ok(Self { lo, objects, maps })
    }

    /// Complex determined by a chain of composable maps starting at degree `lo`.
    pub fn from_maps(lo: i64, maps: Vec<ModMorphism>) -> Result<Self> {
        let Some(first) = maps.first() else {
            return Err(Error::DimensionMismatch("at least one map is required".into()));
        };
        let mut objects = vec![first.domain().clone()];
        objects.extend(maps.iter().map(|d| d.codomain().clone()));
        Self::new(lo, objects, maps)
    }

    pub fn single(lo: i64, object: FgModule) -> Self {
        Self { lo, objects: vec![object], maps: Vec::new() }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.objects.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[FgModule] {
        &self.objects
    }

    pub fn maps(&self) -> &[ModMorphism] {
        &self.maps
    }

    fn slot(&self, i: i64) -> Option<usize> {
        (i >= self.lo && i <= self.hi()).then(|| (i - self.lo) as usize)
    }

    pub fn in_range(&self, i: i64) -> bool {
        self.slot(i).is_some()
    }

    pub fn check_index(&self, i: i64) -> Result<()> {
        if self.in_range(i) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, lo: self.lo, hi: self.hi() })
        }
    }

    /// `X^i`, zero outside the range.
    pub fn object(&self, i: i64) -> FgModule {
        self.slot(i).map(|k| self.objects[k].clone()).unwrap_or_else(FgModule::zero)
    }

    /// `d^i: X^i → X^{i+1}`, zero outside the range.
    pub fn map(&self, i: i64) -> ModMorphism {
        match self.slot(i).filter(|&k| k < self.maps.len()) {
            Some(k) => self.maps[k].clone(),
            None => ModMorphism::zero(&self.object(i), &self.object(i + 1)),
        }
    }

    /// `d^i ∘ d^{i-1} = 0`.
    pub fn composes_to_zero_at(&self, i: i64) -> bool {
        self.map(i).compose(&self.map(i - 1)).expect("adjacent maps compose").is_zero()
    }

    /// The complex with every object and differential shifted by `k` degrees.
    pub fn shifted(&self, k: i64) -> Self {
        Self { lo: self.lo + k, ..self.clone() }
    }
}

impl fmt::Debug for CochainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CochainComplex[{}..{}](", self.lo, self.hi())?;
        for (k, m) in self.objects.iter().enumerate() {
            if k > 0 {
                write!(f, " → ")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

/// `X^{i-1} → X^i → X^{i+1}` is e-exact at `X^i`, for `i` in `[lo, hi]`.
pub fn is_e_exact_at(x: &CochainComplex, i: i64) -> Result<EExactVerdict> {
    x.check_index(i)?;
    Ok(e_exact_pair(&x.map(i - 1), &x.map(i)))
}

/// `0 → A →f B →g C → 0`.
#[derive(Clone, Debug)]
pub struct ShortSequence {
    f: ModMorphism,
    g: ModMorphism,
}

impl ShortSequence {
    pub fn new(f: ModMorphism, g: ModMorphism) -> Result<Self> {
        if f.codomain() != g.domain() {
            return Err(Error::DimensionMismatch("codomain of f differs from domain of g".into()));
        }
        Ok(Self { f, g })
    }

    pub fn f(&self) -> &ModMorphism {
        &self.f
    }

    pub fn g(&self) -> &ModMorphism {
        &self.g
    }

    pub fn a(&self) -> &FgModule {
        self.f.domain()
    }

    pub fn b(&self) -> &FgModule {
        self.f.codomain()
    }

    pub fn c(&self) -> &FgModule {
        self.g.codomain()
    }

    /// `A`, `B` or `C` by position.
    pub fn module(&self, k: usize) -> &FgModule {
        match k {
            0 => self.a(),
            1 => self.b(),
            2 => self.c(),
            _ => panic!("short sequences have three modules"),
        }
    }

    /// The first (`k = 0`) or second (`k = 1`) map.
    pub fn map(&self, k: usize) -> &ModMorphism {
        match k {
            0 => &self.f,
            1 => &self.g,
            _ => panic!("short sequences have two maps"),
        }
    }

    /// As a complex `A → B → C` in degrees 0..=2.
    pub fn as_complex(&self) -> CochainComplex {
        CochainComplex::from_maps(0, vec![self.f.clone(), self.g.clone()]).expect("composable")
    }
}

/// The three conditions of a short e-exact sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortReport {
    /// `Ker f = 0`.
    pub monic: bool,
    /// `Im f ≤_e Ker g`.
    pub middle: EExactVerdict,
    /// `Im g ≤_e C`.
    pub image_essential: bool,
}

impl ShortReport {
    pub fn holds(&self) -> bool {
        self.monic && self.middle.holds() && self.image_essential
    }

    /// Names of the failed conditions.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.monic {
            out.push("Ker f = 0");
        }
        if !self.middle.holds() {
            out.push("Im f ≤_e Ker g");
        }
        if !self.image_essential {
            out.push("Im g ≤_e C");
        }
        out
    }
}

pub fn is_short_e_exact(s: &ShortSequence) -> ShortReport {
    let monic = s.f.is_monic();
    let middle = e_exact_pair(&s.f, &s.g);
    let img = s.g.image();
    let image_essential = crate::essential::is_essential(&img, s.c());
    ShortReport { monic, middle, image_essential }
}

/// Classical exactness of `0 → A → B → C → 0`.
pub fn is_short_exact(s: &ShortSequence) -> bool {
    s.f.is_monic() && exact_pair(&s.f, &s.g) && s.g.is_epic()
}
