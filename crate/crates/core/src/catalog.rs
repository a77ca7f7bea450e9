//! Isomorphism classes of simple `KG`-modules and their types.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::gfield::FieldSpec;
use crate::group::PermGroup;
use crate::meataxe::{canonical_form, chop, CanonicalKey, MeataxeConfig};
use crate::rep::{
    dual_rep, hom_space, invariant_bilinear, invariant_quadratic, regular_rep, Rep, MAX_DIM,
};

/// Type of a simple module with respect to invariant forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MType {
    Trivial,
    Orthogonal,
    Symplectic,
    NonSelfDual,
}

impl MType {
    pub fn as_str(self) -> &'static str {
        match self {
            MType::Trivial => "trivial",
            MType::Orthogonal => "orthogonal",
            MType::Symplectic => "symplectic",
            MType::NonSelfDual => "nonselfdual",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SimpleClass {
    pub id: usize,
    /// Canonical representative.
    pub rep: Rep,
    pub key: CanonicalKey,
    pub self_dual: bool,
    pub dual_id: usize,
    pub mtype: MType,
    pub inv_bilinear: Vec<Mat>,
    pub inv_quadratic: Vec<Mat>,
}

impl SimpleClass {
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }
}

/// All simple modules of a group over a field, in canonical order. The
/// trivial module is always class 0.
#[derive(Clone, Debug)]
pub struct Catalog {
    field: FieldSpec,
    group: Arc<PermGroup>,
    simples: Vec<SimpleClass>,
    by_key: HashMap<CanonicalKey, usize>,
    config: MeataxeConfig,
}

pub fn simple_catalog(group: &Arc<PermGroup>, field: &FieldSpec) -> Result<Catalog> {
    Catalog::build(group, field, MeataxeConfig::default())
}

impl Catalog {
    /// Chops the regular module when it fits the dimension cap. Larger groups
    /// use the closure of the trivial module under tensoring with the
    /// composition factors of the (faithful) permutation module, which
    /// reaches every simple module as well.
    pub fn build(
        group: &Arc<PermGroup>,
        field: &FieldSpec,
        config: MeataxeConfig,
    ) -> Result<Catalog> {
        let factors = if group.order() <= MAX_DIM {
            let reg = regular_rep(group.clone(), field)?;
            chop(&reg, &config)?
                .into_iter()
                .map(|(f, _)| (f.key, f.rep))
                .collect()
        } else {
            tensor_closure(group, field, &config)?
        };
        Catalog::from_simples(group, field, factors, config)
    }

    fn from_simples(
        group: &Arc<PermGroup>,
        field: &FieldSpec,
        mut found: Vec<(CanonicalKey, Rep)>,
        config: MeataxeConfig,
    ) -> Result<Catalog> {
        found.sort_by(|a, b| a.0.cmp(&b.0));
        found.dedup_by(|a, b| a.0 == b.0);
        let by_key: HashMap<CanonicalKey, usize> = found
            .iter()
            .enumerate()
            .map(|(i, (k, _))| (k.clone(), i))
            .collect();
        let mut simples = Vec::with_capacity(found.len());
        for (id, (key, rep)) in found.into_iter().enumerate() {
            let (_, dual_key) = canonical_form(&dual_rep(&rep))?;
            let dual_id = *by_key.get(&dual_key).ok_or_else(|| {
                Error::Internal("dual of a simple module missing from the catalog".into())
            })?;
            let self_dual = dual_id == id;
            let inv_bilinear = invariant_bilinear(&rep);
            let inv_quadratic = invariant_quadratic(&rep);
            let n = rep.dim();
            let mtype = if n == 1 && rep.is_trivial_action() {
                MType::Trivial
            } else if !self_dual {
                MType::NonSelfDual
            } else if inv_quadratic.iter().any(|u| {
                u.add(&u.transpose())
                    .map(|b| b.rank() == n)
                    .unwrap_or(false)
            }) {
                MType::Orthogonal
            } else {
                MType::Symplectic
            };
            simples.push(SimpleClass {
                id,
                rep,
                key,
                self_dual,
                dual_id,
                mtype,
                inv_bilinear,
                inv_quadratic,
            });
        }
        if simples.first().map(|s| s.mtype) != Some(MType::Trivial) {
            return Err(Error::Internal(
                "trivial module is not the first simple class".into(),
            ));
        }
        Ok(Catalog {
            field: field.clone(),
            group: group.clone(),
            simples,
            by_key,
            config,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn config(&self) -> &MeataxeConfig {
        &self.config
    }

    pub fn simples(&self) -> &[SimpleClass] {
        &self.simples
    }

    pub fn len(&self) -> usize {
        self.simples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simples.is_empty()
    }

    /// Number of self-dual classes, the trivial one included.
    pub fn s(&self) -> usize {
        self.simples.iter().filter(|c| c.self_dual).count()
    }

    /// Self-dual nontrivial classes, in catalog order.
    pub fn s0(&self) -> Vec<usize> {
        self.simples
            .iter()
            .filter(|c| c.self_dual && c.mtype != MType::Trivial)
            .map(|c| c.id)
            .collect()
    }

    pub fn self_dual_ids(&self) -> Vec<usize> {
        self.simples
            .iter()
            .filter(|c| c.self_dual)
            .map(|c| c.id)
            .collect()
    }

    pub fn trivial(&self) -> &SimpleClass {
        &self.simples[0]
    }

    pub fn check_context(&self, v: &Rep) -> Result<()> {
        if v.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if !Arc::ptr_eq(v.group(), &self.group) && **v.group() != *self.group {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    /// Class id of a simple module.
    pub fn class_of(&self, simple: &Rep) -> Result<usize> {
        self.check_context(simple)?;
        let (_, key) = canonical_form(simple)?;
        self.by_key
            .get(&key)
            .copied()
            .ok_or_else(|| Error::Internal("simple module not found in catalog".into()))
    }

    /// Composition multiplicities `d(V, S)` indexed by class id.
    pub fn multiplicities(&self, v: &Rep) -> Result<Vec<usize>> {
        self.check_context(v)?;
        let mut out = vec![0; self.simples.len()];
        for (fac, m) in chop(v, &self.config)? {
            let id = self
                .by_key
                .get(&fac.key)
                .ok_or_else(|| Error::Internal("composition factor not found in catalog".into()))?;
            out[*id] += m;
        }
        Ok(out)
    }

    /// Hom-space bases from each simple class into `v`, omitting classes
    /// that do not occur in the socle.
    pub fn homogeneous_components(&self, v: &Rep) -> Result<Vec<(usize, Vec<Mat>)>> {
        self.check_context(v)?;
        let mut out = Vec::new();
        for c in &self.simples {
            if c.dim() > v.dim() {
                continue;
            }
            let h = hom_space(&c.rep, v)?;
            if !h.is_empty() {
                out.push((c.id, h));
            }
        }
        Ok(out)
    }

    /// Row basis (reduced echelon) of the socle of `v`.
    pub fn socle(&self, v: &Rep) -> Result<Mat> {
        let mut acc = Mat::zeros(&self.field, 0, v.dim());
        for (_, homs) in self.homogeneous_components(v)? {
            for h in homs {
                acc = acc.vstack(&h)?;
            }
        }
        Ok(acc.row_space())
    }
}

fn tensor_closure(
    group: &Arc<PermGroup>,
    field: &FieldSpec,
    config: &MeataxeConfig,
) -> Result<Vec<(CanonicalKey, Rep)>> {
    let perm = Rep::permutation(group.clone(), field)?;
    let blocks: Vec<Rep> = chop(&perm, config)?
        .into_iter()
        .map(|(f, _)| f.rep)
        .collect();
    let triv = Rep::trivial(group.clone(), field);
    let (triv, tkey) = canonical_form(&triv)?;
    let mut found: HashMap<CanonicalKey, Rep> = HashMap::from([(tkey, triv.clone())]);
    let mut queue = vec![triv];
    while let Some(s) = queue.pop() {
        for b in &blocks {
            let t = s.tensor(b)?;
            for (fac, _) in chop(&t, config)? {
                if !found.contains_key(&fac.key) {
                    found.insert(fac.key.clone(), fac.rep.clone());
                    queue.push(fac.rep);
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::standard::*;
    use crate::rep::iso_test;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn types(c: &Catalog) -> Vec<(usize, MType)> {
        c.simples().iter().map(|s| (s.dim(), s.mtype)).collect()
    }

    #[test]
    fn small_catalogs() {
        let gf2 = FieldSpec::gf(1);
        let gf4 = FieldSpec::gf(2);
        let c = simple_catalog(&Arc::new(cyclic(2)), &gf2).unwrap();
        assert_eq!(types(&c), vec![(1, MType::Trivial)]);
        assert_eq!(c.s(), 1);

        let c = simple_catalog(&Arc::new(symmetric3()), &gf2).unwrap();
        assert_eq!(types(&c), vec![(1, MType::Trivial), (2, MType::Orthogonal)]);
        assert_eq!(c.s(), 2);

        let c = simple_catalog(&Arc::new(cyclic(3)), &gf4).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.s(), 1);
        assert_eq!(c.simples()[1].dual_id, 2);
        assert_eq!(c.simples()[1].mtype, MType::NonSelfDual);

        let c = simple_catalog(&Arc::new(cyclic(3)), &gf2).unwrap();
        assert_eq!(types(&c), vec![(1, MType::Trivial), (2, MType::Orthogonal)]);
    }

    #[test]
    fn regular_s3_multiplicities() {
        let gf2 = FieldSpec::gf(1);
        let g = Arc::new(symmetric3());
        let c = simple_catalog(&g, &gf2).unwrap();
        let reg = regular_rep(g, &gf2).unwrap();
        assert_eq!(c.multiplicities(&reg).unwrap(), vec![2, 2]);
    }

    #[test]
    fn a5_over_gf4_has_symplectic_natural_modules() {
        let gf4 = FieldSpec::gf(2);
        let c = simple_catalog(&Arc::new(alternating5()), &gf4).unwrap();
        let t = types(&c);
        assert_eq!(
            t.iter().filter(|x| **x == (2, MType::Symplectic)).count(),
            2
        );
        assert!(t.contains(&(4, MType::Orthogonal)));
        assert_eq!(c.s(), 4);
    }

    #[test]
    fn classes_pairwise_non_isomorphic() {
        let gf4 = FieldSpec::gf(2);
        for g in [symmetric3(), dihedral8(), alternating5()] {
            let c = simple_catalog(&Arc::new(g), &gf4).unwrap();
            for a in c.simples() {
                for b in c.simples() {
                    let iso = iso_test(&a.rep, &b.rep).unwrap().is_some();
                    assert_eq!(iso, a.id == b.id);
                }
                let dual_iso = iso_test(&a.rep, &dual_rep(&a.rep)).unwrap().is_some();
                assert_eq!(dual_iso, a.self_dual);
            }
        }
    }

    #[test]
    fn tensor_closure_agrees_with_regular_chop() {
        let gf2 = FieldSpec::gf(1);
        for g in [symmetric3(), alternating5()] {
            let g = Arc::new(g);
            let via_reg = simple_catalog(&g, &gf2).unwrap();
            let mut via_tensor = tensor_closure(&g, &gf2, &MeataxeConfig::default()).unwrap();
            via_tensor.sort_by(|a, b| a.0.cmp(&b.0));
            let keys: Vec<_> = via_tensor.into_iter().map(|(k, _)| k).collect();
            let expect: Vec<_> = via_reg.simples().iter().map(|c| c.key.clone()).collect();
            assert_eq!(keys, expect);
        }
    }

    #[test]
    fn forms_on_simples_follow_the_dichotomy() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for (g, e) in [
            (symmetric3(), 1),
            (alternating5(), 2),
            (alternating5(), 1),
            (cyclic(3), 1),
            (cyclic(5), 1),
        ] {
            let f = FieldSpec::gf(e);
            let c = simple_catalog(&Arc::new(g), &f).unwrap();
            for s in c.simples() {
                let n = s.dim();
                // nonzero invariant bilinear forms are non-degenerate
                for b in &s.inv_bilinear {
                    assert_eq!(b.rank(), n);
                }
                assert_eq!(s.inv_bilinear.is_empty(), !s.self_dual);
                if s.mtype != MType::Trivial {
                    for b in &s.inv_bilinear {
                        for _ in 0..10 {
                            let v = Mat::random(&f, 1, n, &mut rng);
                            assert!(b.bilinear(v.row(0), v.row(0)).is_zero());
                        }
                    }
                    // polarization is injective: a quadratic form is determined by it
                    let pol: Vec<Mat> = s
                        .inv_quadratic
                        .iter()
                        .map(|u| u.add(&u.transpose()).unwrap())
                        .collect();
                    let mut flat = Mat::zeros(&f, 0, n * n);
                    for b in &pol {
                        flat = flat.vstack(&Mat::row_vector(&f, b.data())).unwrap();
                    }
                    assert_eq!(flat.rank(), pol.len());
                    for u in &s.inv_quadratic {
                        assert_eq!(u.add(&u.transpose()).unwrap().rank(), n);
                    }
                }
            }
        }
    }

    #[test]
    fn socle_examples() {
        let gf2 = FieldSpec::gf(1);
        let g = Arc::new(cyclic(2));
        let c = simple_catalog(&g, &gf2).unwrap();
        let reg = regular_rep(g.clone(), &gf2).unwrap();
        assert_eq!(c.socle(&reg).unwrap(), Mat::from_bits(&gf2, &[&[1, 1]]));
        let s3 = Arc::new(symmetric3());
        let c = simple_catalog(&s3, &gf2).unwrap();
        let semi = c.simples()[1].rep.direct_sum(&c.simples()[0].rep).unwrap();
        assert_eq!(c.socle(&semi).unwrap().rows(), 3);
    }
}
