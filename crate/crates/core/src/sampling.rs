//! Random equivariant forms, used for spanning checks and tests.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::catalog::Catalog;
use crate::equiforms::EquivForm;
use crate::error::Result;
use crate::exactla::Mat;
use crate::generators::Labeled;
use crate::gfield::Scalar;
use crate::quadspace::QuadForm;
use crate::rep::{dual_rep, invariant_quadratic, regular_rep, Rep};

/// `H(X) = X + X*` with `Q(x, xi) = xi(x)`; always metabolic.
pub fn hyperbolic(catalog: &Arc<Catalog>, x: &Rep) -> Result<EquivForm> {
    let f = catalog.field();
    let k = x.dim();
    let rep = x.direct_sum(&dual_rep(x))?;
    let mut u = Mat::zeros(f, 2 * k, 2 * k);
    for i in 0..k {
        u[(i, k + i)] = Scalar::ONE;
    }
    EquivForm::new(catalog, rep, QuadForm::new(u)?)
}

pub fn random_base_change<R: Rng + ?Sized>(x: &EquivForm, rng: &mut R) -> Result<EquivForm> {
    let p = Mat::random_invertible(x.rep().field(), x.dim(), rng);
    x.change_basis(&p)
}

/// Small modules to build forms on: the simples, the permutation module and
/// (for small groups) the regular module.
fn module_pool(catalog: &Arc<Catalog>, max_dim: usize) -> Vec<Rep> {
    let g = catalog.group();
    let f = catalog.field();
    let mut pool: Vec<Rep> = catalog.simples().iter().map(|s| s.rep.clone()).collect();
    if g.degree() <= max_dim {
        if let Ok(p) = Rep::permutation(g.clone(), f) {
            pool.push(p);
        }
    }
    if g.order() <= max_dim {
        if let Ok(r) = regular_rep(g.clone(), f) {
            pool.push(r);
        }
    }
    pool.retain(|r| r.dim() <= max_dim);
    pool
}

/// A random metabolic form of dimension at most `max_dim` (at least 2).
pub fn random_metabolic<R: Rng + ?Sized>(
    catalog: &Arc<Catalog>,
    generators: &[Labeled],
    max_dim: usize,
    rng: &mut R,
) -> Result<EquivForm> {
    let pool = module_pool(catalog, max_dim / 2);
    let doubles: Vec<&Labeled> = generators
        .iter()
        .filter(|g| 2 * g.form.dim() <= max_dim)
        .collect();
    let x = if !doubles.is_empty() && rng.gen_bool(0.3) {
        let g = doubles.choose(rng).expect("nonempty");
        g.form.orth_sum(&g.form)?
    } else {
        let mut m = pool.choose(rng).expect("trivial module fits").clone();
        while rng.gen_bool(0.3) {
            let extra = pool.choose(rng).expect("nonempty");
            if 2 * (m.dim() + extra.dim()) > max_dim {
                break;
            }
            m = m.direct_sum(extra)?;
        }
        hyperbolic(catalog, &m)?
    };
    random_base_change(&x, rng)
}

/// A random non-degenerate invariant form on a module from the pool, if one
/// is found within a few attempts.
pub fn random_invariant_form<R: Rng + ?Sized>(
    catalog: &Arc<Catalog>,
    max_dim: usize,
    rng: &mut R,
) -> Result<Option<EquivForm>> {
    let f = catalog.field();
    let pool = module_pool(catalog, max_dim);
    for _ in 0..8 {
        let mut m = pool.choose(rng).expect("trivial module fits").clone();
        while rng.gen_bool(0.5) {
            let extra = pool.choose(rng).expect("nonempty");
            if m.dim() + extra.dim() > max_dim {
                break;
            }
            m = m.direct_sum(extra)?;
        }
        let basis = invariant_quadratic(&m);
        for _ in 0..4 {
            let mut u = Mat::zeros(f, m.dim(), m.dim());
            for b in &basis {
                u = u.add(&b.scale(f.random(rng)))?;
            }
            let q = QuadForm::new(u)?;
            if m.dim() > 0 && q.is_nondegenerate() {
                let x = EquivForm::new(catalog, m.clone(), q)?;
                return Ok(Some(random_base_change(&x, rng)?));
            }
        }
    }
    Ok(None)
}

/// A random form: either a random sum of generators padded with a random
/// metabolic form, or a random invariant form on a small module. The
/// dimension stays within `max_dim` where possible.
pub fn random_form<R: Rng + ?Sized>(
    catalog: &Arc<Catalog>,
    generators: &[Labeled],
    max_dim: usize,
    rng: &mut R,
) -> Result<EquivForm> {
    if rng.gen_bool(0.4) {
        if let Some(x) = random_invariant_form(catalog, max_dim, rng)? {
            return Ok(x);
        }
    }
    let mut x = EquivForm::zero(catalog);
    let mut order: Vec<&Labeled> = generators.iter().collect();
    order.shuffle(rng);
    for g in order {
        if rng.gen_bool(0.5) && x.dim() + g.form.dim() <= max_dim {
            x = x.orth_sum(&g.form)?;
        }
    }
    if x.dim() + 2 <= max_dim && rng.gen_bool(0.7) {
        let m = random_metabolic(catalog, generators, max_dim - x.dim(), rng)?;
        x = x.orth_sum(&m)?;
    }
    random_base_change(&x, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::simple_catalog;
    use crate::equiforms::{is_metabolic, oracle_metabolic};
    use crate::gfield::FieldSpec;
    use crate::group::standard::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn metabolic_samples_are_metabolic() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (g, e) in [(cyclic(3), 1), (symmetric3(), 1), (cyclic(2), 2)] {
            let c = Arc::new(simple_catalog(&Arc::new(g), &FieldSpec::gf(e)).unwrap());
            for _ in 0..10 {
                let m = random_metabolic(&c, &[], 8, &mut rng).unwrap();
                assert!(m.dim() <= 8);
                assert!(is_metabolic(&m).unwrap());
                assert!(oracle_metabolic(&m).unwrap());
            }
        }
    }

    #[test]
    fn invariant_forms_are_found() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = Arc::new(simple_catalog(&Arc::new(quaternion8()), &FieldSpec::gf(1)).unwrap());
        let found = (0..10)
            .filter_map(|_| random_invariant_form(&c, 8, &mut rng).unwrap())
            .count();
        assert!(found > 0);
    }
}
