//! Meataxe: splitting modules, composition factors, canonical forms of
//! simple modules.
//!
//! Random algebra elements come from a pool of generator products. For an
//! element `theta` and an irreducible factor `p` of its characteristic
//! polynomial with `nullity(p(theta)) = deg p`, Norton's criterion is
//! conclusive: the module is simple iff one vector of the null space spins
//! to everything and one vector of the transposed null space spins to
//! everything under the transposed generators.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::{spin, EchelonBasis, Mat};
use crate::gfield::{FieldSpec, Scalar};
use crate::poly::factor;
use crate::rep::Rep;

pub const DEFAULT_SEED: u64 = 0x5717;
pub const DEFAULT_BUDGET: usize = 200;

// fixed, module-independent sequence of algebra words for canonical forms
const CANONICAL_SEED: u64 = 0xC0FFEE;
const CANONICAL_BUDGET: usize = 1000;
// largest null space (as a set) enumerated for a canonical form
const CANONICAL_NULL_CAP: usize = 1 << 16;
const POOL_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MeataxeConfig {
    pub seed: u64,
    /// Random algebra elements tried per split attempt.
    pub budget: usize,
}

impl Default for MeataxeConfig {
    fn default() -> Self {
        MeataxeConfig {
            seed: DEFAULT_SEED,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Split {
    Irreducible,
    /// Reduced echelon basis of a proper nonzero submodule.
    Proper(Mat),
}

struct AlgebraSampler {
    pool: Vec<Mat>,
    field: FieldSpec,
}

impl AlgebraSampler {
    fn new(gens: &[Mat], field: &FieldSpec, n: usize) -> AlgebraSampler {
        let mut pool = vec![Mat::identity(field, n)];
        pool.extend(gens.iter().cloned());
        AlgebraSampler {
            pool,
            field: field.clone(),
        }
    }

    fn next<R: Rng>(&mut self, rng: &mut R) -> Mat {
        let i = rng.gen_range(0..self.pool.len());
        let j = rng.gen_range(0..self.pool.len());
        let prod = self.pool[i].mul(&self.pool[j]).expect("square matrices");
        if self.pool.len() < POOL_CAP {
            self.pool.push(prod);
        } else {
            // keep the identity and the generators in slots 0..
            let k = rng.gen_range(1..self.pool.len());
            self.pool[k] = prod;
        }
        let mut theta = Mat::zeros(&self.field, self.pool[0].rows(), self.pool[0].cols());
        for m in &self.pool {
            let c = self.field.random(rng);
            if !c.is_zero() {
                theta = theta.add(&m.scale(c)).expect("same shape");
            }
        }
        theta
    }
}

fn transposes(gens: &[Mat]) -> Vec<Mat> {
    gens.iter().map(|m| m.transpose()).collect()
}

/// Finds a proper submodule or certifies irreducibility.
pub fn find_split<R: Rng>(
    gens: &[Mat],
    field: &FieldSpec,
    n: usize,
    rng: &mut R,
    budget: usize,
) -> Result<Split> {
    if n <= 1 {
        return Ok(Split::Irreducible);
    }
    let mut sampler = AlgebraSampler::new(gens, field, n);
    let mut frng = ChaCha8Rng::seed_from_u64(rng.gen());
    for _ in 0..budget {
        let theta = sampler.next(rng);
        let cp = theta.charpoly()?;
        for (p, _) in factor(&cp, field, &mut frng).into_iter().take(4) {
            let pt = theta.eval_poly(&p)?;
            let null = pt.left_kernel();
            let seed = null.select_rows(&[0]);
            let sub = spin(&seed, gens)?;
            if sub.rows() < n {
                return Ok(Split::Proper(sub));
            }
            if null.rows() == p.degree() as usize {
                let tnull = pt.transpose().left_kernel();
                let tseed = tnull.select_rows(&[0]);
                let tsub = spin(&tseed, &transposes(gens))?;
                if tsub.rows() < n {
                    // annihilator of a submodule of the dual
                    let ann = tsub.transpose().left_kernel();
                    return Ok(Split::Proper(ann));
                }
                return Ok(Split::Irreducible);
            }
        }
    }
    Err(Error::MeataxeBudget(budget))
}

pub fn is_irreducible(v: &Rep, cfg: &MeataxeConfig) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    Ok(find_split(v.mats(), v.field(), v.dim(), &mut rng, cfg.budget)? == Split::Irreducible)
}

/// Composition factors as raw generator matrices, in discovery order.
pub fn composition_factors(v: &Rep, cfg: &MeataxeConfig) -> Result<Vec<Rep>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    let mut stack = vec![v.clone()];
    while let Some(m) = stack.pop() {
        if m.dim() == 0 {
            continue;
        }
        match find_split(m.mats(), m.field(), m.dim(), &mut rng, cfg.budget)? {
            Split::Irreducible => out.push(m),
            Split::Proper(sub) => {
                let full = Mat::identity(m.field(), m.dim());
                let (quot, _) = m.subquotient(&full, &sub)?;
                stack.push(quot);
                stack.push(m.submodule(&sub)?);
            }
        }
    }
    Ok(out)
}

/// Isomorphism invariant of a simple module: its dimension followed by the
/// bit patterns of its canonical action matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(pub Vec<u32>);

/// Canonical representative of a simple module.
///
/// A fixed sequence of algebra words (independent of the module) picks the
/// first `theta` with an irreducible factor `p` satisfying
/// `nullity(p(theta)) = deg p`. Every normalized vector of that null space is
/// spun into a standard basis in a fixed order; the lexicographically least
/// resulting action is the canonical one. Isomorphic modules produce equal
/// output.
pub fn canonical_form(v: &Rep) -> Result<(Rep, CanonicalKey)> {
    let n = v.dim();
    let f = v.field().clone();
    let gens = v.mats();
    let q = f.size();
    let mut rng = ChaCha8Rng::seed_from_u64(CANONICAL_SEED);
    let mut frng = ChaCha8Rng::seed_from_u64(CANONICAL_SEED ^ 1);
    let mut sampler = AlgebraSampler::new(gens, &f, n);
    for _ in 0..CANONICAL_BUDGET {
        let theta = sampler.next(&mut rng);
        let cp = theta.charpoly()?;
        for (p, _) in factor(&cp, &f, &mut frng) {
            let d = p.degree() as usize;
            if (q as f64).powi(d as i32) > CANONICAL_NULL_CAP as f64 {
                continue;
            }
            let null = theta.eval_poly(&p)?.left_kernel();
            if null.rows() != d {
                continue;
            }
            return best_standard_basis(v, &null);
        }
    }
    Err(Error::MeataxeBudget(CANONICAL_BUDGET))
}

fn best_standard_basis(v: &Rep, null: &Mat) -> Result<(Rep, CanonicalKey)> {
    let n = v.dim();
    let f = v.field().clone();
    let q = f.size();
    let d = null.rows();
    let mut best: Option<(Vec<u32>, Vec<Mat>)> = None;
    let total = q.pow(d as u32);
    for idx in 1..total {
        // coefficient vector with leading (highest-index) nonzero entry 1
        let mut coeffs = Vec::with_capacity(d);
        let mut t = idx;
        for _ in 0..d {
            coeffs.push(Scalar((t % q) as u16));
            t /= q;
        }
        if coeffs.iter().rev().find(|c| !c.is_zero()) != Some(&Scalar::ONE) {
            continue;
        }
        let mut vec0 = vec![Scalar::ZERO; n];
        for (r, &c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (x, &y) in vec0.iter_mut().zip(null.row(r)) {
                *x += f.mul(c, y);
            }
        }
        let basis = standard_basis(&vec0, v.mats(), &f, n);
        if basis.len() < n {
            return Err(Error::Precondition(
                "canonical form requested for a non-simple module".into(),
            ));
        }
        let b = Mat::from_rows(&f, &basis, n)?;
        let binv = b.inverse()?;
        let mats: Vec<Mat> = v
            .mats()
            .iter()
            .map(|g| b.mul(g)?.mul(&binv))
            .collect::<Result<_>>()?;
        let mut key = vec![n as u32];
        for m in &mats {
            key.extend(m.data().iter().map(|s| s.0 as u32));
        }
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, mats));
        }
    }
    let (key, mats) = best.ok_or_else(|| Error::Internal("empty null space".into()))?;
    let rep = Rep::new_unchecked(v.group().clone(), &f, n, mats);
    Ok((rep, CanonicalKey(key)))
}

fn standard_basis(v: &[Scalar], gens: &[Mat], f: &FieldSpec, n: usize) -> Vec<Vec<Scalar>> {
    let mut ech = EchelonBasis::new(f, n);
    let mut out = Vec::new();
    if ech.insert(v) {
        out.push(v.to_vec());
    }
    let mut i = 0;
    while i < out.len() && out.len() < n {
        for g in gens {
            let w = g.apply(&out[i]);
            if ech.insert(&w) {
                out.push(w);
            }
        }
        i += 1;
    }
    out
}

/// A composition factor in canonical form.
#[derive(Clone, Debug)]
pub struct Factor {
    pub rep: Rep,
    pub key: CanonicalKey,
}

/// Composition factors with multiplicities, sorted by canonical key
/// (dimension first).
pub fn chop(v: &Rep, cfg: &MeataxeConfig) -> Result<Vec<(Factor, usize)>> {
    let mut groups: BTreeMap<CanonicalKey, (Rep, usize)> = BTreeMap::new();
    for m in composition_factors(v, cfg)? {
        let (rep, key) = canonical_form(&m)?;
        groups.entry(key).or_insert((rep, 0)).1 += 1;
    }
    Ok(groups
        .into_iter()
        .map(|(key, (rep, mult))| (Factor { rep, key }, mult))
        .collect())
}
