//! The equivariant Witt group `WQ(K, G)`: generators, coordinates and a
//! self-check of its structure `C_2^(s + t)`.

use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, MType};
use crate::equiforms::{
    anisotropic_rep, inv_a, inv_c, inv_d, is_metabolic, orth_sum_all, witt_equal, EquivForm,
};
use crate::error::{Error, Result};
use crate::generators::{gen_envelope, gen_norm, gen_orthogonal_simple, gen_rtau, Labeled, Sign};
use crate::gfield::FieldSpec;
use crate::group::{f2_coordinates, two_torsion_characters, Character2, PermGroup};
use crate::sampling::random_form;

/// Coordinates of a Witt class: one bit per nontrivial self-dual simple
/// class, the class in `WQ(K)`, and the Dickson character in the basis of
/// `Hom(G, C_2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WittCoords {
    pub c0: Vec<u8>,
    pub a: u8,
    pub d: Vec<u8>,
}

impl WittCoords {
    pub fn zero(s0: usize, t: usize) -> WittCoords {
        WittCoords {
            c0: vec![0; s0],
            a: 0,
            d: vec![0; t],
        }
    }

    pub fn to_bits(&self) -> Vec<u8> {
        let mut v = self.c0.clone();
        v.push(self.a);
        v.extend(&self.d);
        v
    }

    pub fn from_bits(s0: usize, t: usize, bits: &[u8]) -> Result<WittCoords> {
        if bits.len() != s0 + 1 + t {
            return Err(Error::Shape(format!(
                "{} coordinate bits, expected {}",
                bits.len(),
                s0 + 1 + t
            )));
        }
        Ok(WittCoords {
            c0: bits[..s0].to_vec(),
            a: bits[s0],
            d: bits[s0 + 1..].to_vec(),
        })
    }

    /// The `k`-th vector in binary counting order.
    pub fn enumerate(s0: usize, t: usize, k: usize) -> WittCoords {
        let n = s0 + 1 + t;
        let bits: Vec<u8> = (0..n).map(|i| ((k >> i) & 1) as u8).collect();
        WittCoords::from_bits(s0, t, &bits).expect("length matches")
    }
}

#[derive(Clone, Debug)]
pub struct GroupWittDescription {
    pub catalog: Arc<Catalog>,
    pub s: usize,
    pub t: usize,
    pub taus: Vec<Character2>,
    /// Nontrivial self-dual classes, in catalog order.
    pub s0: Vec<usize>,
    pub s0_generators: Vec<Labeled>,
    pub norm: Labeled,
    pub rtau: Vec<Labeled>,
}

impl GroupWittDescription {
    pub fn rank(&self) -> usize {
        self.s + self.t
    }

    /// All generators: simple-class ones, then `N`, then `R^+(tau_j)`.
    pub fn generators(&self) -> Vec<&Labeled> {
        self.s0_generators
            .iter()
            .chain(std::iter::once(&self.norm))
            .chain(&self.rtau)
            .collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.generators().iter().map(|g| g.label.clone()).collect()
    }

    pub fn field(&self) -> &FieldSpec {
        self.catalog.field()
    }
}

pub fn describe(group: &Arc<PermGroup>, field: &FieldSpec) -> Result<GroupWittDescription> {
    let catalog = Arc::new(crate::catalog::simple_catalog(group, field)?);
    describe_catalog(&catalog)
}

pub fn describe_catalog(catalog: &Arc<Catalog>) -> Result<GroupWittDescription> {
    let s0 = catalog.s0();
    let mut s0_generators = Vec::with_capacity(s0.len());
    for &id in &s0 {
        let g = match catalog.simples()[id].mtype {
            MType::Orthogonal => gen_orthogonal_simple(catalog, id)?,
            MType::Symplectic => gen_envelope(catalog, &[id])?,
            other => {
                return Err(Error::Internal(format!(
                    "self-dual class {id} has type {}",
                    other.as_str()
                )))
            }
        };
        s0_generators.push(g);
    }
    let (t, taus) = two_torsion_characters(catalog.group());
    let rtau = taus
        .iter()
        .enumerate()
        .map(|(j, tau)| gen_rtau(catalog, tau, Sign::Plus, j + 1))
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupWittDescription {
        catalog: catalog.clone(),
        s: catalog.s(),
        t,
        taus,
        s0,
        s0_generators,
        norm: gen_norm(catalog)?,
        rtau,
    })
}

fn check_same(desc: &GroupWittDescription, x: &EquivForm) -> Result<()> {
    desc.catalog.check_context(x.rep())
}

/// Orthogonal sum of the generators flagged by `c`, without reduction.
pub fn sum_of(desc: &GroupWittDescription, c: &WittCoords) -> Result<EquivForm> {
    if c.c0.len() != desc.s0.len() || c.d.len() != desc.t {
        return Err(Error::Shape(
            "coordinate lengths do not match the description".into(),
        ));
    }
    let mut parts: Vec<&EquivForm> = Vec::new();
    for (bit, g) in c.c0.iter().zip(&desc.s0_generators) {
        if bit & 1 == 1 {
            parts.push(&g.form);
        }
    }
    if c.a & 1 == 1 {
        parts.push(&desc.norm.form);
    }
    for (bit, g) in c.d.iter().zip(&desc.rtau) {
        if bit & 1 == 1 {
            parts.push(&g.form);
        }
    }
    orth_sum_all(&desc.catalog, parts)
}

pub fn from_coordinates(desc: &GroupWittDescription, c: &WittCoords) -> Result<EquivForm> {
    anisotropic_rep(&sum_of(desc, c)?)
}

// Returns the coordinates and the form whose metabolicity certifies them.
fn coordinates_inner(
    desc: &GroupWittDescription,
    x: &EquivForm,
) -> Result<(WittCoords, EquivForm)> {
    check_same(desc, x)?;
    let c = inv_c(x)?;
    // self_dual_ids starts with the trivial class
    let c0 = c[1..].to_vec();
    let flagged = WittCoords {
        c0: c0.clone(),
        a: 0,
        d: vec![0; desc.t],
    };
    let x1 = x.orth_sum(&sum_of(desc, &flagged)?)?;
    let a = inv_a(&x1)?;
    let x2 = if a == 1 {
        x1.orth_sum(&desc.norm.form)?
    } else {
        x1
    };
    let dchar = inv_d(&x2)?;
    let d = f2_coordinates(&desc.taus, &dchar).ok_or_else(|| {
        Error::Internal("Dickson character outside the span of the character basis".into())
    })?;
    let coords = WittCoords { c0, a, d };
    let rest = WittCoords {
        c0: vec![0; desc.s0.len()],
        a: 0,
        d: coords.d.clone(),
    };
    let residual = x2.orth_sum(&sum_of(desc, &rest)?)?;
    Ok((coords, residual))
}

/// Coordinates of `[x]`, computed from the invariants alone.
pub fn coordinates_unverified(desc: &GroupWittDescription, x: &EquivForm) -> Result<WittCoords> {
    Ok(coordinates_inner(desc, x)?.0)
}

/// Coordinates of `[x]`. Fails if subtracting the implied generators does
/// not leave a metabolic form.
pub fn coordinates(desc: &GroupWittDescription, x: &EquivForm) -> Result<WittCoords> {
    let (coords, residual) = coordinates_inner(desc, x)?;
    if !is_metabolic(&residual)? {
        return Err(Error::Internal(
            "form minus its coordinate generators is not metabolic".into(),
        ));
    }
    Ok(coords)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub s: usize,
    pub t: usize,
    pub rank: usize,
    pub generators: Vec<String>,
    pub checks: Vec<Check>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn timed(name: &str, f: impl FnOnce() -> Result<Option<String>>) -> Check {
    let start = Instant::now();
    let (pass, detail) = match f() {
        Ok(None) => (true, None),
        Ok(Some(why)) => (false, Some(why)),
        Err(e) => (false, Some(e.to_string())),
    };
    Check {
        name: name.into(),
        pass,
        ms: start.elapsed().as_millis() as u64,
        detail,
    }
}

pub const SAMPLE_MAX_DIM: usize = 10;

pub fn verify_theorem(
    group: &Arc<PermGroup>,
    field: &FieldSpec,
    samples: usize,
    seed: u64,
) -> Result<TheoremReport> {
    let desc = describe(group, field)?;
    Ok(verify_description(&desc, samples, seed))
}

/// Checks that every generator has order 2, that all `2^(s+t)` generator
/// sums have distinct invariants, and that random forms are recovered from
/// their coordinates.
pub fn verify_description(desc: &GroupWittDescription, samples: usize, seed: u64) -> TheoremReport {
    let mut checks = Vec::new();
    checks.push(timed("order_two", || {
        for g in desc.generators() {
            if !is_metabolic(&g.form.orth_sum(&g.form)?)? {
                return Ok(Some(format!("{} + {} is not metabolic", g.label, g.label)));
            }
        }
        Ok(None)
    }));
    checks.push(timed("injectivity", || {
        let s0 = desc.s0.len();
        for k in 0..1usize << desc.rank() {
            let c = WittCoords::enumerate(s0, desc.t, k);
            let got = coordinates_unverified(desc, &sum_of(desc, &c)?)?;
            if got != c {
                return Ok(Some(format!(
                    "sum for {:?} has invariants {:?}",
                    c.to_bits(),
                    got.to_bits()
                )));
            }
        }
        Ok(None)
    }));
    checks.push(timed("spanning", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens: Vec<Labeled> = desc.generators().into_iter().cloned().collect();
        for i in 0..samples {
            let x = random_form(&desc.catalog, &gens, SAMPLE_MAX_DIM, &mut rng)?;
            let c = coordinates(desc, &x)?;
            let y = from_coordinates(desc, &c)?;
            if !witt_equal(&x, &y)? || coordinates_unverified(desc, &y)? != c {
                return Ok(Some(format!("sample {i} does not round-trip")));
            }
        }
        Ok(None)
    }));
    TheoremReport {
        s: desc.s,
        t: desc.t,
        rank: desc.rank(),
        generators: desc.labels(),
        checks,
    }
}
