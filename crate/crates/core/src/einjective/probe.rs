use num_bigint::BigInt;

use super::extend::{baer_extend, canonical_baer_witness, essential_extend};
use crate::error::Error;
use crate::fgab::{FgModule, ModElement};
use crate::gen;

/// Observation attached to every probe report.
pub const PROBE_NOTE: &str = "over the integers every ideal problem nZ → E is solved by g(1) = f(n), r = n, \
so every finitely generated module passes the ideal probes; a passing report is evidence, not proof";

#[derive(Clone, Debug)]
pub struct BaerProbe {
    pub n: BigInt,
    /// `f(n)` in generator coordinates.
    pub value: Vec<BigInt>,
    /// Least admissible scalar.
    pub r: BigInt,
    pub replayed: bool,
    pub canonical_replayed: bool,
}

#[derive(Clone, Debug)]
pub struct ExtensionProbe {
    pub domain: FgModule,
    pub codomain: FgModule,
    pub outcome: Result<BigInt, Error>,
    pub replayed: bool,
}

/// Evidence for e-injectivity of a module: ideal probes and random
/// extension problems along monics.
#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub module: FgModule,
    pub ideal_bound: u64,
    pub seed: u64,
    pub baer: Vec<BaerProbe>,
    pub extensions: Vec<ExtensionProbe>,
    pub note: &'static str,
}

impl ProbeReport {
    pub fn failures(&self) -> usize {
        let b = self.baer.iter().filter(|p| !p.replayed || !p.canonical_replayed).count();
        let e = self.extensions.iter().filter(|p| p.outcome.is_err() || !p.replayed).count();
        b + e
    }

    pub fn all_passed(&self) -> bool {
        self.failures() == 0
    }
}

/// Canonical generators of `E` together with their sum.
fn value_sample(e: &FgModule) -> Vec<ModElement> {
    let mut out: Vec<ModElement> = (0..e.canonical_len())
        .map(|i| e.element(e.canonical_generator(i)).expect("shape"))
        .collect();
    if out.len() > 1 {
        let sum = out.iter().skip(1).fold(out[0].clone(), |acc, x| acc.add(x));
        out.push(sum);
    }
    out
}

pub fn probe_e_injective(e: &FgModule, ideal_bound: u64, mono_samples: usize, seed: u64) -> ProbeReport {
    let mut baer = Vec::new();
    let values = value_sample(e);
    for n in 1..=ideal_bound {
        let n = BigInt::from(n);
        for v in &values {
            let (r, replayed) = match baer_extend(&n, v) {
                Ok(x) => (x.r().clone(), x.witness.replay()),
                Err(_) => (BigInt::default(), false),
            };
            let canonical_replayed = canonical_baer_witness(&n, v).map(|w| w.witness.replay()).unwrap_or(false);
            baer.push(BaerProbe { n: n.clone(), value: v.coords().to_vec(), r, replayed, canonical_replayed });
        }
    }
    let mut rng = gen::rng(seed);
    let mut extensions = Vec::new();
    for _ in 0..mono_samples {
        let f1 = gen::monic(&mut rng, 2, 6, 0.3);
        let f2 = gen::morphism(&mut rng, f1.domain(), e, 5);
        let (outcome, replayed) = match essential_extend(&f1, &f2, None) {
            Ok(x) => (Ok(x.witness.r.clone()), x.witness.replay()),
            Err(err) => (Err(err), false),
        };
        extensions.push(ExtensionProbe { domain: f1.domain().clone(), codomain: f1.codomain().clone(), outcome, replayed });
    }
    ProbeReport { module: e.clone(), ideal_bound, seed, baer, extensions, note: PROBE_NOTE }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_pass() {
        let rep = probe_e_injective(&FgModule::free(1), 10, 5, 0);
        assert_eq!(rep.baer.len(), 10);
        assert!(rep.all_passed());
    }

    #[test]
    fn z8_passes_with_canonical_witness() {
        let rep = probe_e_injective(&FgModule::cyclic(8), 16, 5, 1);
        assert!(rep.all_passed());
        assert!(rep.baer.iter().all(|p| p.canonical_replayed));
    }

    #[test]
    fn zero_module_is_vacuous() {
        let rep = probe_e_injective(&FgModule::zero(), 16, 3, 2);
        assert!(rep.baer.is_empty());
        assert!(rep.all_passed());
    }
}
