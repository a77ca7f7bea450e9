//! Randomized structural properties of the Witt group machinery.

use std::sync::{Arc, OnceLock};

use equiwitt::catalog::{Catalog, MType};
use equiwitt::equiforms::{
    anisotropic_rep, inv_a, inv_c, inv_d, invariants, is_metabolic, witt_equal, EquivForm,
};
use equiwitt::exactla::Mat;
use equiwitt::generators::Labeled;
use equiwitt::group::standard::*;
use equiwitt::meataxe::MeataxeConfig;
use equiwitt::quadspace::{arf, dickson, witt_decompose, QuadForm};
use equiwitt::rep::{invariant_quadratic, Rep};
use equiwitt::sampling::{random_base_change, random_form, random_metabolic};
use equiwitt::wittgroup::{
    coordinates, coordinates_unverified, describe_catalog, GroupWittDescription,
};
use equiwitt::FieldSpec;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MAX_DIM: usize = 8;

fn descriptions() -> &'static [GroupWittDescription] {
    static DESCS: OnceLock<Vec<GroupWittDescription>> = OnceLock::new();
    DESCS.get_or_init(|| {
        [
            (cyclic(2), 1),
            (cyclic(3), 1),
            (cyclic(3), 2),
            (symmetric3(), 1),
            (symmetric3(), 2),
            (quaternion8(), 1),
            (dihedral8(), 1),
            (alternating5(), 2),
        ]
        .into_iter()
        .map(|(g, e)| {
            let cat = Arc::new(
                equiwitt::catalog::simple_catalog(&Arc::new(g), &FieldSpec::gf(e)).unwrap(),
            );
            describe_catalog(&cat).unwrap()
        })
        .collect()
    })
}

struct Setup {
    desc: &'static GroupWittDescription,
    gens: Vec<Labeled>,
    rng: ChaCha8Rng,
}

impl Setup {
    fn new(which: usize, seed: u64) -> Setup {
        let descs = descriptions();
        let desc = &descs[which % descs.len()];
        let gens = desc.generators().into_iter().cloned().collect();
        Setup {
            desc,
            gens,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn form(&mut self) -> EquivForm {
        random_form(&self.desc.catalog, &self.gens, MAX_DIM, &mut self.rng).unwrap()
    }

    fn metabolic(&mut self) -> EquivForm {
        random_metabolic(&self.desc.catalog, &self.gens, MAX_DIM, &mut self.rng).unwrap()
    }
}

fn xor(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().zip(b).map(|(x, y)| x ^ y).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn invariants_survive_metabolic_padding(which in 0usize..8, seed in any::<u64>()) {
        let mut s = Setup::new(which, seed);
        let x = s.form();
        let m = s.metabolic();
        prop_assert_eq!(inv_a(&m).unwrap(), 0);
        let padded = random_base_change(&x.orth_sum(&m).unwrap(), &mut s.rng).unwrap();
        prop_assert_eq!(invariants(&padded).unwrap(), invariants(&x).unwrap());
    }

    #[test]
    fn invariants_are_additive(which in 0usize..8, seed in any::<u64>()) {
        let mut s = Setup::new(which, seed);
        let (x, y) = (s.form(), s.form());
        let sum = x.orth_sum(&y).unwrap();
        let (ax, ay) = (inv_a(&x).unwrap(), inv_a(&y).unwrap());
        prop_assert_eq!(inv_a(&sum).unwrap(), ax ^ ay);
        prop_assert_eq!(inv_c(&sum).unwrap(), xor(&inv_c(&x).unwrap(), &inv_c(&y).unwrap()));
        if ax == 0 && ay == 0 {
            prop_assert_eq!(inv_d(&sum).unwrap(), xor(&inv_d(&x).unwrap(), &inv_d(&y).unwrap()));
        }
        let (cx, cy) = (coordinates_unverified(s.desc, &x).unwrap(), coordinates_unverified(s.desc, &y).unwrap());
        prop_assert_eq!(
            coordinates_unverified(s.desc, &sum).unwrap().to_bits(),
            xor(&cx.to_bits(), &cy.to_bits())
        );
    }

    #[test]
    fn cancellation(which in 0usize..8, seed in any::<u64>()) {
        let mut s = Setup::new(which, seed);
        let w = s.form();
        let v = s.metabolic();
        prop_assert_eq!(is_metabolic(&w.orth_sum(&v).unwrap()).unwrap(), is_metabolic(&w).unwrap());
    }

    #[test]
    fn padded_equivalent_forms_share_a_representative(which in 0usize..8, seed in any::<u64>()) {
        let mut s = Setup::new(which, seed);
        let x = s.form();
        let y = random_base_change(&x.orth_sum(&s.metabolic()).unwrap(), &mut s.rng).unwrap();
        prop_assert!(witt_equal(&x, &y).unwrap());
        let xp = anisotropic_rep(&x.orth_sum(&s.metabolic()).unwrap()).unwrap();
        let yp = anisotropic_rep(&y.orth_sum(&s.metabolic()).unwrap()).unwrap();
        prop_assert_eq!(xp.dim(), yp.dim());
        prop_assert!(witt_equal(&xp, &yp).unwrap());
    }

    #[test]
    fn coordinates_are_class_functions(which in 0usize..8, seed in any::<u64>()) {
        let mut s = Setup::new(which, seed);
        let x = s.form();
        let m = s.metabolic();
        let c = coordinates(s.desc, &x).unwrap();
        prop_assert_eq!(coordinates(s.desc, &x.orth_sum(&m).unwrap()).unwrap(), c.clone());
        let mut flipped = c;
        flipped.a ^= 1;
        let with_n = x.orth_sum(&s.desc.norm.form).unwrap();
        prop_assert_eq!(coordinates(s.desc, &with_n).unwrap(), flipped);
    }

    #[test]
    fn residue_ignores_the_basis(e in 1u32..=3, n in 1usize..=3, seed in any::<u64>()) {
        let f = FieldSpec::gf(e);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = QuadForm::from_matrix(&Mat::random(&f, 2 * n, 2 * n, &mut rng));
        prop_assume!(q.is_nondegenerate());
        let p = Mat::random_invertible(&f, 2 * n, &mut rng);
        let moved = q.restrict(&p).unwrap();
        prop_assert_eq!(witt_decompose(&moved).unwrap().residue, witt_decompose(&q).unwrap().residue);
        prop_assert!(f.in_wp(arf(&q).unwrap() + arf(&moved).unwrap()));
    }

    #[test]
    fn dickson_is_a_homomorphism(e in 1u32..=2, n in 1usize..=3, seed in any::<u64>()) {
        let f = FieldSpec::gf(e);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut q = QuadForm::zero(&f, 0);
        for _ in 0..n {
            q = q.orth_sum(&QuadForm::hyperbolic_plane(&f)).unwrap();
        }
        let g = random_isometry(&q, &mut rng);
        let h = random_isometry(&q, &mut rng);
        let gh = g.mul(&h).unwrap();
        prop_assert_eq!(dickson(&gh, &q).unwrap(), dickson(&g, &q).unwrap() ^ dickson(&h, &q).unwrap());
    }
}

/// A product of random orthogonal transvections `v -> v + B(v, u) / Q(u) u`.
fn random_isometry(q: &QuadForm, rng: &mut ChaCha8Rng) -> Mat {
    let f = q.field();
    let n = q.dim();
    let b = q.polarize();
    let mut g = Mat::identity(f, n);
    for _ in 0..rng.gen_range(1..=5) {
        let u: Vec<_> = (0..n).map(|_| f.random(rng)).collect();
        let qu = q.eval(&u);
        if qu.is_zero() {
            continue;
        }
        let c = f.inv(qu).unwrap();
        let bu = b.mul(&Mat::row_vector(f, &u).transpose()).unwrap();
        let mut r = Mat::identity(f, n);
        for i in 0..n {
            for j in 0..n {
                r[(i, j)] += f.mul(c, f.mul(bu[(i, 0)], u[j]));
            }
        }
        g = g.mul(&r).unwrap();
    }
    g
}

#[test]
fn composition_factors_do_not_depend_on_the_seed() {
    for (g, e) in [
        (symmetric3(), 1),
        (dihedral8(), 1),
        (alternating5(), 2),
        (alternating5(), 1),
    ] {
        let g = Arc::new(g);
        let f = FieldSpec::gf(e);
        let perm = Rep::permutation(g.clone(), &f).unwrap();
        let mut seen = Vec::new();
        for seed in [1u64, 0x5717, 0xdead_beef] {
            let cfg = MeataxeConfig {
                seed,
                ..MeataxeConfig::default()
            };
            let cat = Catalog::build(&g, &f, cfg).unwrap();
            let keys: Vec<_> = cat.simples().iter().map(|s| s.key.clone()).collect();
            seen.push((keys, cat.multiplicities(&perm).unwrap()));
        }
        assert!(seen.windows(2).all(|w| w[0] == w[1]), "{seen:?}");
    }
}

#[test]
fn two_forms_on_one_simple_are_witt_equal() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut pairs = 0;
    for (g, e) in [(symmetric3(), 2), (alternating5(), 2), (symmetric3(), 3)] {
        let cat =
            Arc::new(equiwitt::catalog::simple_catalog(&Arc::new(g), &FieldSpec::gf(e)).unwrap());
        let f = cat.field().clone();
        for simple in cat
            .simples()
            .iter()
            .filter(|s| s.mtype == MType::Orthogonal)
        {
            let basis = invariant_quadratic(&simple.rep);
            let mut forms = Vec::new();
            while forms.len() < 4 {
                let mut u = Mat::zeros(&f, simple.dim(), simple.dim());
                for b in &basis {
                    u = u.add(&b.scale(f.random(&mut rng))).unwrap();
                }
                let q = QuadForm::new(u).unwrap();
                if q.is_nondegenerate() {
                    forms.push(EquivForm::new(&cat, simple.rep.clone(), q).unwrap());
                }
            }
            for w in forms.windows(2) {
                assert!(witt_equal(&w[0], &w[1]).unwrap());
                pairs += 1;
            }
        }
    }
    assert!(pairs > 0);
}
