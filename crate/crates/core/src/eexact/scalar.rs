use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{crt, mod_inverse};
use crate::error::{Error, Result};
use crate::fgab::{HomModule, ModMorphism};

/// A nonzero `r` with `lhs = r·rhs` as morphisms.
#[derive(Clone)]
pub struct ScalarWitness {
    pub r: BigInt,
    pub relation: String,
    pub lhs: ModMorphism,
    pub rhs: ModMorphism,
}

impl ScalarWitness {
    pub fn new(r: BigInt, relation: impl Into<String>, lhs: ModMorphism, rhs: ModMorphism) -> Self {
        Self { r, relation: relation.into(), lhs, rhs }
    }

    /// Re-checks `r ≠ 0` and `lhs = r·rhs` exactly.
    pub fn replay(&self) -> bool {
        !self.r.is_zero() && self.lhs.equals(&self.rhs.scale(&self.r))
    }
}

impl fmt::Debug for ScalarWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarWitness(r = {}, {})", self.r, self.relation)
    }
}

/// The set of nonzero integers `r` satisfying a scaled identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdmissibleScalars {
    Empty,
    /// `r ≡ residue (mod modulus)`, `r ≠ 0`; modulus 1 means every nonzero `r`.
    Congruence { residue: BigInt, modulus: BigInt },
    /// Exactly one value, forced by a free summand.
    Fixed(BigInt),
}

impl AdmissibleScalars {
    pub fn is_empty(&self) -> bool {
        matches!(self, Self::Empty)
    }

    pub fn contains(&self, r: &BigInt) -> bool {
        if r.is_zero() {
            return false;
        }
        match self {
            Self::Empty => false,
            Self::Congruence { residue, modulus } => r.mod_floor(modulus) == *residue,
            Self::Fixed(v) => v == r,
        }
    }

    /// Smallest positive member of a congruence class, or the forced value.
    pub fn witness(&self) -> Option<BigInt> {
        match self {
            Self::Empty => None,
            Self::Congruence { residue, modulus } => {
                Some(if residue.is_zero() { modulus.clone() } else { residue.clone() })
            }
            Self::Fixed(v) => Some(v.clone()),
        }
    }
}

impl fmt::Display for AdmissibleScalars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Empty => write!(f, "none"),
            Self::Congruence { modulus, .. } if modulus.is_one() => write!(f, "all nonzero r"),
            Self::Congruence { residue, modulus } => write!(f, "r ≡ {residue} (mod {modulus}), r ≠ 0"),
            Self::Fixed(v) => write!(f, "r = {v}"),
        }
    }
}

/// Diagram shapes whose commutativity up to a scalar is solved for.
#[derive(Clone, Debug)]
pub enum CommuteShape {
    /// `g∘i = r·f` with `i: A → B`, `f: A → E`, `g: B → E`.
    Triangle { i: ModMorphism, f: ModMorphism, g: ModMorphism },
    /// `q∘f = r·(g∘t)` with `f: A → B`, `t: A → C`, `g: C → D`, `q: B → D`.
    Square { f: ModMorphism, t: ModMorphism, g: ModMorphism, q: ModMorphism },
}

#[derive(Clone, Debug)]
pub struct ScalarCommute {
    pub admissible: AdmissibleScalars,
    pub witness: Option<ScalarWitness>,
}

impl ScalarCommute {
    pub fn e_commutes(&self) -> bool {
        self.witness.is_some()
    }
}

pub fn solve_scalar_commute(shape: &CommuteShape) -> Result<ScalarCommute> {
    match shape {
        CommuteShape::Triangle { i, f, g } => solve_scalar(&g.compose(i)?, f, "g∘i = r·f"),
        CommuteShape::Square { f, t, g, q } => solve_scalar(&q.compose(f)?, &g.compose(t)?, "q∘f = r·(g∘t)"),
    }
}

/// All nonzero `r` with `lhs = r·rhs`, decided on hom-module coordinates.
pub fn solve_scalar(lhs: &ModMorphism, rhs: &ModMorphism, relation: &str) -> Result<ScalarCommute> {
    if lhs.domain() != rhs.domain() || lhs.codomain() != rhs.codomain() {
        return Err(Error::DimensionMismatch(format!("{relation}: the two sides are maps between different modules")));
    }
    let hom = HomModule::new(lhs.domain(), lhs.codomain());
    let x = hom.coordinates(lhs)?;
    let y = hom.coordinates(rhs)?;
    let admissible = admissible(&x, &y, &hom.coordinate_moduli());
    let witness = admissible
        .witness()
        .map(|r| ScalarWitness::new(r, relation, lhs.clone(), rhs.clone()));
    Ok(ScalarCommute { admissible, witness })
}

fn admissible(x: &[BigInt], y: &[BigInt], moduli: &[BigInt]) -> AdmissibleScalars {
    let mut residue = BigInt::zero();
    let mut modulus = BigInt::one();
    let mut fixed: Option<BigInt> = None;
    for ((xk, yk), n) in x.iter().zip(y).zip(moduli) {
        if n.is_zero() {
            if yk.is_zero() {
                if !xk.is_zero() {
                    return AdmissibleScalars::Empty;
                }
                continue;
            }
            if !xk.is_multiple_of(yk) {
                return AdmissibleScalars::Empty;
            }
            let v = xk / yk;
            match &fixed {
                Some(w) if *w != v => return AdmissibleScalars::Empty,
                _ => fixed = Some(v),
            }
        } else {
            // r·y ≡ x (mod n)
            let g = yk.gcd(n);
            if !xk.is_multiple_of(&g) {
                return AdmissibleScalars::Empty;
            }
            let n2 = n / &g;
            if n2.is_one() {
                continue;
            }
            let inv = mod_inverse(&(yk / &g), &n2).expect("coprime after dividing by gcd");
            let a = ((xk / &g) * inv).mod_floor(&n2);
            match crt(&residue, &modulus, &a, &n2) {
                Some((r, m)) => {
                    residue = r;
                    modulus = m;
                }
                None => return AdmissibleScalars::Empty,
            }
        }
    }
    match fixed {
        Some(v) if v.is_zero() || v.mod_floor(&modulus) != residue => AdmissibleScalars::Empty,
        Some(v) => AdmissibleScalars::Fixed(v),
        None if modulus.is_positive() => AdmissibleScalars::Congruence { residue, modulus },
        None => AdmissibleScalars::Empty,
    }
}
