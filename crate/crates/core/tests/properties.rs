use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use essx_core::cohomology::{cohomology_at, gamma, gamma_complex, gamma_map, induced_on_cohomology, e_cohomology, Ideal};
use essx_core::eexact::{check_e_split, is_short_e_exact, is_short_exact, solve_scalar_commute, CochainComplex, CommuteShape, ShortSequence};
use essx_core::einjective::{canonical_baer_witness, comparison_lift, essential_extend, horseshoe, LiftOptions, Resolution};
use essx_core::essential::{enumerate_elements, is_essential, is_essential_in, subgroup_lattice};
use essx_core::{gen, is_isomorphic, smith_normal_form, FgModule, HomModule, IntMatrix, ModMorphism, Submodule};

fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-50i64..=50, r * c).prop_map(move |e| IntMatrix::from_i64(r, c, &e))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn smith_form_identity(a in matrix()) {
        let f = smith_normal_form(&a);
        prop_assert_eq!(f.u.mul(&a).mul(&f.v), f.s.clone());
        prop_assert!(f.u.determinant().abs().is_one());
        prop_assert!(f.v.determinant().abs().is_one());
        let d = f.diagonal();
        for i in 0..d.len() {
            prop_assert!(!d[i].is_negative());
            if i + 1 < d.len() && !d[i].is_zero() {
                prop_assert!(d[i + 1].is_multiple_of(&d[i]));
            }
            if d[i].is_zero() {
                prop_assert!(d[i..].iter().all(Zero::is_zero));
            }
        }
        for r in 0..f.s.rows() {
            for c in 0..f.s.cols() {
                if r != c {
                    prop_assert!(f.s[(r, c)].is_zero());
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_round_trip(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let m = gen::module(&mut rng, 4, 30, 0.3);
        let c = FgModule::from_invariants(m.invariant_factors(), m.free_rank());
        prop_assert!(is_isomorphic(&m, &c).isomorphic);
        let w = is_isomorphic(&c, &m).witness.unwrap();
        prop_assert!(w.is_monic() && w.is_epic());
    }

    #[test]
    fn kernel_image_sequence_is_exact(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let a = gen::module(&mut rng, 3, 12, 0.3);
        let c = gen::module(&mut rng, 3, 12, 0.3);
        let f = gen::morphism(&mut rng, &a, &c, 5);
        let ker = f.kernel();
        let im = f.image();
        let cols: Vec<Vec<BigInt>> = (0..a.num_generators()).map(|j| im.preimage(&f.matrix().column(j)).unwrap()).collect();
        let onto = ModMorphism::new(IntMatrix::from_columns(im.source().num_generators(), &cols), &a, im.source()).unwrap();
        let s = ShortSequence::new(ker.embedding().clone(), onto).unwrap();
        prop_assert!(is_short_exact(&s));
        prop_assert!(is_short_e_exact(&s).holds());
    }

    #[test]
    fn exact_implies_e_exact(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let a = gen::module(&mut rng, 2, 12, 0.3);
        let c = gen::module(&mut rng, 2, 12, 0.3);
        let (f, g, j) = gen::split_exact(&mut rng, &a, &c);
        let s = ShortSequence::new(f, g).unwrap();
        prop_assert!(is_short_exact(&s));
        prop_assert!(is_short_e_exact(&s).holds());
        let rep = check_e_split(&s, &j, &BigInt::one(), None).unwrap();
        prop_assert_eq!(rep.r, BigInt::one());
        prop_assert!(rep.rb.same_invariants(s.b()));
    }

    #[test]
    fn scalar_solver_matches_enumeration(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let a = gen::module(&mut rng, 2, 10, 0.0);
        let bm = gen::module(&mut rng, 2, 10, 0.0);
        let e = gen::module(&mut rng, 2, 10, 0.0);
        let i = gen::morphism(&mut rng, &a, &bm, 5);
        let g = gen::morphism(&mut rng, &bm, &e, 5);
        let f = if seed % 2 == 0 { g.compose(&i).unwrap().scale(&b((seed % 7) as i64)) } else { gen::morphism(&mut rng, &a, &e, 5) };
        let sol = solve_scalar_commute(&CommuteShape::Triangle { i: i.clone(), f: f.clone(), g: g.clone() }).unwrap();
        let gi = g.compose(&i).unwrap();
        let exponent = e.torsion_exponent().max(BigInt::one());
        prop_assume!(exponent <= b(30));
        for r in 1..=30i64 {
            let r = b(r);
            prop_assert_eq!(sol.admissible.contains(&r), gi.equals(&f.scale(&r)));
        }
        if let Some(w) = &sol.witness {
            prop_assert!(w.replay());
        }
    }

    #[test]
    fn gamma_is_functorial(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let a = Ideal::new(*[2i64, 3, 6, 4].iter().nth((seed % 4) as usize).unwrap());
        let x = gen::module(&mut rng, 3, 24, 0.2);
        let y = gen::module(&mut rng, 3, 24, 0.2);
        let z = gen::module(&mut rng, 3, 24, 0.2);
        let f = gen::morphism(&mut rng, &x, &y, 5);
        let g = gen::morphism(&mut rng, &y, &z, 5);
        let gx = gamma_map(&a, &ModMorphism::identity(&x)).unwrap();
        prop_assert!(gx.equals(&ModMorphism::identity(gx.domain())));
        let lhs = gamma_map(&a, &g.compose(&f).unwrap()).unwrap();
        let rhs = gamma_map(&a, &g).unwrap().compose(&gamma_map(&a, &f).unwrap()).unwrap();
        prop_assert!(lhs.equals(&rhs));
        let gs = gamma(&a, &x).unwrap();
        let again = gamma(&a, gs.source()).unwrap();
        prop_assert!(again.same_as(&Submodule::whole(gs.source())));
    }

    #[test]
    fn cohomology_vanishes_below_zero_and_on_trivial_resolutions(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let res = gen::resolution(&mut rng);
        let a = Ideal::new(2);
        let rep = e_cohomology(&a, res.target(), &res, -3..=-1).unwrap();
        prop_assert!(rep.degrees.iter().all(|d| d.module.is_zero()));
        let m = gen::module(&mut rng, 3, 16, 0.3);
        let rep = e_cohomology(&a, &m, &Resolution::trivial(&m), 0..=3).unwrap();
        prop_assert!(rep.degrees[1..].iter().all(|d| d.module.is_zero()));
        prop_assert!(rep.degrees[0].module.same_invariants(gamma(&a, &m).unwrap().source()));
    }

    #[test]
    fn lift_squares_are_confirmed(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let bottom = gen::resolution(&mut rng);
        let top = gen::resolution(&mut rng);
        let f = gen::morphism(&mut rng, bottom.target(), top.target(), 4);
        let lift = comparison_lift(&f, &bottom, &top, &LiftOptions::default()).unwrap();
        for (n, w) in lift.squares.iter().enumerate() {
            let shape = if n == 0 {
                CommuteShape::Square { f: bottom.augmentation().clone(), t: f.clone(), g: top.augmentation().clone(), q: lift.maps[0].clone() }
            } else {
                let k = n as i64 - 1;
                CommuteShape::Square { f: bottom.complex().map(k), t: lift.maps[n - 1].clone(), g: top.complex().map(k), q: lift.maps[n].clone() }
            };
            prop_assert!(solve_scalar_commute(&shape).unwrap().admissible.contains(&w.r));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn canonical_baer_identity(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let e = gen::module(&mut rng, 3, 20, 0.3);
        let n = gen::nonzero(&mut rng, 40);
        let v = gen::element(&mut rng, &e, 30);
        let w = canonical_baer_witness(&n, &v).unwrap();
        prop_assert!(w.witness.replay());
        prop_assert_eq!(w.r(), &n.abs());
        let scaled: Vec<BigInt> = v.coords().iter().map(|c| c * n.abs()).collect();
        prop_assert_eq!(e.reduce(&w.g.apply_vec(&[n.clone()])), e.reduce(&scaled));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn horseshoe_columns_split(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let inst = gen::e_exact_instance(&mut rng, seed % 2 == 0, true);
        let h = horseshoe(&inst.sequence, &inst.left, &inst.right, None).unwrap();
        prop_assert!(h.resolution.first_failure().is_none());
        for n in 0..h.inclusions.len() {
            let col = h.column(n);
            prop_assert!(is_short_exact(&col));
            let j = essx_core::summand_inclusion(&[col.a().clone(), col.c().clone()], 1);
            prop_assert_eq!(check_e_split(&col, &j, &BigInt::one(), None).unwrap().r, BigInt::one());
        }
    }

    #[test]
    fn essential_extension_agrees_with_enumeration(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let f1 = gen::monic(&mut rng, 2, 4, 0.0);
        let e = gen::module(&mut rng, 2, 6, 0.0);
        prop_assume!(f1.codomain().order().unwrap() <= b(32) && e.order().unwrap() <= b(32));
        let f2 = gen::morphism(&mut rng, f1.domain(), &e, 5);
        let ext = essential_extend(&f1, &f2, None).unwrap();
        prop_assert!(ext.witness.replay());
        let exponent = e.torsion_exponent().max(BigInt::one());
        let hom = HomModule::new(f1.codomain(), &e);
        let maps: Vec<ModMorphism> = enumerate_elements(hom.module()).unwrap().iter().map(|h| hom.evaluate(h)).collect();
        let lhs: Vec<ModMorphism> = maps.iter().map(|f3| f3.compose(&f1).unwrap()).collect();
        let brute = (1..=exponent.to_string().parse::<i64>().unwrap())
            .find(|&r| lhs.iter().any(|l| l.equals(&f2.scale(&b(r)))))
            .map(b);
        prop_assert_eq!(brute, Some(ext.minimal));
    }
}

#[test]
fn hom_evaluation_bijects_for_small_cyclics() {
    for m in 1..=12 {
        for n in 1..=12 {
            let (a, c) = (FgModule::cyclic(m), FgModule::cyclic(n));
            let hom = HomModule::new(&a, &c);
            let elems = enumerate_elements(hom.module()).unwrap();
            assert_eq!(elems.len() as i64, m.gcd(&n), "Hom(Z/{m}, Z/{n})");
            let maps: Vec<ModMorphism> = elems.iter().map(|h| hom.evaluate(h)).collect();
            for i in 0..maps.len() {
                for j in 0..i {
                    assert!(!maps[i].equals(&maps[j]));
                }
                assert_eq!(hom.coordinates(&maps[i]).unwrap(), elems[i]);
            }
        }
    }
}

#[test]
fn essentiality_laws_on_small_groups() {
    for order in 1..=24u64 {
        for m in gen::abelian_groups_of_order(order) {
            let lattice = subgroup_lattice(&m, 10_000).unwrap();
            assert!(is_essential(&Submodule::whole(&m), &m));
            assert_eq!(is_essential(&Submodule::zero(&m), &m), m.is_zero());
            for x in &lattice {
                for y in lattice.iter().filter(|y| y.contains(x)) {
                    if !is_essential_in(x, y).unwrap() || !is_essential(y, &m) {
                        continue;
                    }
                    assert!(is_essential(x, &m), "transitivity in {m}");
                }
            }
        }
    }
}

#[test]
fn additivity_on_example_resolution() {
    let (z8, z16) = (FgModule::cyclic(8), FgModule::cyclic(16));
    let d = ModMorphism::from_i64(&[8], &z8, &z16).unwrap();
    let x = CochainComplex::from_maps(0, vec![d]).unwrap();
    let a = Ideal::new(2);
    let gx = gamma_complex(&a, &x).unwrap();
    let chain = |u: i64, v: i64| [ModMorphism::multiplication(&z8, &b(u)), ModMorphism::multiplication(&z16, &b(v))];
    for (u0, u1, v0, v1) in [(1, 3, 2, 4), (3, 5, 5, 1), (2, 0, 7, 9), (6, 2, 1, 15)] {
        let (f, g) = (chain(u0, u1), chain(v0, v1));
        let sum = [f[0].add(&g[0]).unwrap(), f[1].add(&g[1]).unwrap()];
        for n in 0..2i64 {
            let h = cohomology_at(&gx, n).unwrap();
            let k = n as usize;
            let induced = |m: &ModMorphism| induced_on_cohomology(&gamma_map(&a, m).unwrap(), &h, &h).unwrap();
            let lhs = induced(&sum[k]);
            let rhs = induced(&f[k]).add(&induced(&g[k])).unwrap();
            assert!(lhs.equals(&rhs), "degree {n}");
        }
    }
}
