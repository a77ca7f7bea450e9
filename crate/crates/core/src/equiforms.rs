//! Equivariant quadratic forms `(V, Q)`: a `KG`-module with a non-degenerate
//! G-invariant quadratic form.

use std::collections::HashSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{Catalog, MType};
use crate::error::{Error, Result};
use crate::exactla::{intersection, spin, Mat};
use crate::gfield::Scalar;
use crate::quadspace::{find_isotropic_vector, witt_decompose, QuadForm, Residue};
use crate::rep::{hom_space, Rep};

/// Largest number of hom-space combinations tried for one simple class.
pub const ISOTROPIC_SEARCH_CAP: usize = 1 << 20;
/// Largest `|K|^dim` accepted by [`oracle_metabolic`].
pub const ORACLE_CAP: usize = 1 << 20;
const DICKSON_SPOT_CHECKS: usize = 100;

#[derive(Clone, Debug)]
pub struct EquivForm {
    rep: Rep,
    form: QuadForm,
    catalog: Arc<Catalog>,
}

impl EquivForm {
    /// Validates G-invariance and non-degeneracy.
    pub fn new(catalog: &Arc<Catalog>, rep: Rep, form: QuadForm) -> Result<EquivForm> {
        catalog.check_context(&rep)?;
        if form.field() != rep.field() {
            return Err(Error::FieldMismatch);
        }
        if form.dim() != rep.dim() {
            return Err(Error::Shape(format!(
                "form of dimension {} on a module of dimension {}",
                form.dim(),
                rep.dim()
            )));
        }
        for (k, g) in rep.mats().iter().enumerate() {
            if let Some(w) = form.isometry_witness(g)? {
                return Err(Error::NotInvariant {
                    generator: k,
                    witness: w.iter().map(|s| s.0).collect(),
                });
            }
        }
        let rad = form.radical();
        if rad.rows() > 0 {
            return Err(Error::Degenerate {
                witness: rad.row(0).iter().map(|s| s.0).collect(),
            });
        }
        Ok(EquivForm {
            rep,
            form,
            catalog: catalog.clone(),
        })
    }

    pub fn zero(catalog: &Arc<Catalog>) -> EquivForm {
        let f = catalog.field();
        EquivForm {
            rep: Rep::zero(catalog.group().clone(), f),
            form: QuadForm::zero(f, 0),
            catalog: catalog.clone(),
        }
    }

    /// A plain quadratic space with every group element acting trivially.
    pub fn with_trivial_action(catalog: &Arc<Catalog>, form: QuadForm) -> Result<EquivForm> {
        let f = catalog.field();
        let n = form.dim();
        let mats = vec![Mat::identity(f, n); catalog.group().num_generators()];
        let rep = Rep::new_unchecked(catalog.group().clone(), f, n, mats);
        EquivForm::new(catalog, rep, form)
    }

    pub fn rep(&self) -> &Rep {
        &self.rep
    }

    pub fn form(&self) -> &QuadForm {
        &self.form
    }

    pub fn catalog(&self) -> &Arc<Catalog> {
        &self.catalog
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    fn same_catalog(&self, other: &EquivForm) -> Result<()> {
        if Arc::ptr_eq(&self.catalog, &other.catalog) {
            return Ok(());
        }
        self.rep.same_context(&other.rep)
    }

    pub fn orth_sum(&self, other: &EquivForm) -> Result<EquivForm> {
        self.same_catalog(other)?;
        Ok(EquivForm {
            rep: self.rep.direct_sum(&other.rep)?,
            form: self.form.orth_sum(&other.form)?,
            catalog: self.catalog.clone(),
        })
    }

    /// The same form written in the basis given by the rows of `p`.
    pub fn change_basis(&self, p: &Mat) -> Result<EquivForm> {
        Ok(EquivForm {
            rep: self.rep.change_basis(p)?,
            form: self.form.restrict(p)?,
            catalog: self.catalog.clone(),
        })
    }
}

pub fn orth_sum_all<'a>(
    catalog: &Arc<Catalog>,
    parts: impl IntoIterator<Item = &'a EquivForm>,
) -> Result<EquivForm> {
    let mut acc = EquivForm::zero(catalog);
    for p in parts {
        acc = acc.orth_sum(p)?;
    }
    Ok(acc)
}

/// Order in which simple classes (and hom-space bases) are searched.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SearchOrder {
    #[default]
    Forward,
    Reverse,
}

/// Basis of a simple submodule on which `Q` vanishes, if there is one.
///
/// Only the socle is searched. Trivial constituents are handled through the
/// quadratic form on the fixed space; other classes by running over the
/// lines of `Hom(S, V)`.
pub fn find_isotropic_simple(x: &EquivForm, order: SearchOrder) -> Result<Option<Mat>> {
    let cat = &x.catalog;
    let f = cat.field().clone();
    let mut comps = cat.homogeneous_components(&x.rep)?;
    if order == SearchOrder::Reverse {
        comps.reverse();
        for (_, h) in comps.iter_mut() {
            h.reverse();
        }
    }
    for (id, homs) in comps {
        let class = &cat.simples()[id];
        if class.mtype == MType::Trivial {
            let mut fixed = Mat::zeros(&f, 0, x.dim());
            for h in &homs {
                fixed = fixed.vstack(h)?;
            }
            let qf = x.form.restrict(&fixed)?;
            if let Some(c) = find_isotropic_vector(&qf)? {
                let v = Mat::row_vector(&f, &c).mul(&fixed)?;
                return Ok(Some(v.row_space()));
            }
            continue;
        }
        let q = f.size();
        let h = homs.len();
        if (q as f64).powi(h as i32) > ISOTROPIC_SEARCH_CAP as f64 {
            return Err(Error::Cap(format!(
                "isotropic search over a {h}-dimensional hom space"
            )));
        }
        for idx in 1..q.pow(h as u32) {
            let coeffs: Vec<Scalar> = (0..h)
                .map(|k| Scalar(((idx / q.pow(k as u32)) % q) as u16))
                .collect();
            // one representative per line: last nonzero coefficient is 1
            if coeffs.iter().rev().find(|c| !c.is_zero()) != Some(&Scalar::ONE) {
                continue;
            }
            let mut phi = Mat::zeros(&f, class.dim(), x.dim());
            for (c, hm) in coeffs.iter().zip(&homs) {
                if !c.is_zero() {
                    phi = phi.add(&hm.scale(*c))?;
                }
            }
            if x.form.restrict(&phi)?.upper().is_zero() {
                return Ok(Some(phi.row_space()));
            }
        }
    }
    Ok(None)
}

/// Perpendicular space of the row span of `u`.
pub fn perp(x: &EquivForm, u: &Mat) -> Result<Mat> {
    Ok(x.form.polarize().mul(&u.transpose())?.left_kernel())
}

/// The induced form on `U^perp / U` for an isotropic submodule `U`.
pub fn reduce_by(x: &EquivForm, u: &Mat) -> Result<EquivForm> {
    let u = u.row_space();
    if u.rows() == 0 {
        return Ok(x.clone());
    }
    if spin(&u, x.rep.mats())?.rows() != u.rows() {
        return Err(Error::Precondition("subspace is not a submodule".into()));
    }
    if !x.form.restrict(&u)?.upper().is_zero() {
        return Err(Error::Precondition(
            "form does not vanish on the submodule".into(),
        ));
    }
    let top = perp(x, &u)?;
    let (rep, lift) = x.rep.subquotient(&top, &u)?;
    let form = x.form.restrict(&lift)?;
    EquivForm::new(&x.catalog, rep, form)
}

/// Result of repeated reduction, with the isotropic submodule removed at
/// each step (in the coordinates of the form current at that step).
#[derive(Clone, Debug)]
pub struct Reduction {
    pub form: EquivForm,
    pub steps: Vec<Mat>,
}

pub fn anisotropic_rep_traced(x: &EquivForm, order: SearchOrder) -> Result<Reduction> {
    let mut cur = x.clone();
    let mut steps = Vec::new();
    while let Some(u) = find_isotropic_simple(&cur, order)? {
        cur = reduce_by(&cur, &u)?;
        steps.push(u);
    }
    Ok(Reduction { form: cur, steps })
}

pub fn anisotropic_rep(x: &EquivForm) -> Result<EquivForm> {
    Ok(anisotropic_rep_traced(x, SearchOrder::Forward)?.form)
}

pub fn is_metabolic(x: &EquivForm) -> Result<bool> {
    Ok(anisotropic_rep(x)?.dim() == 0)
}

pub fn witt_equal(x: &EquivForm, y: &EquivForm) -> Result<bool> {
    is_metabolic(&x.orth_sum(y)?)
}

/// Class of the underlying quadratic space: 0 if split, 1 if `N(K)` remains.
pub fn inv_a(x: &EquivForm) -> Result<u8> {
    Ok(match witt_decompose(&x.form)?.residue {
        Residue::Zero => 0,
        Residue::NormForm => 1,
    })
}

/// Composition multiplicities mod 2, indexed like `catalog.self_dual_ids()`.
pub fn inv_c(x: &EquivForm) -> Result<Vec<u8>> {
    let mults = x.catalog.multiplicities(&x.rep)?;
    Ok(x.catalog
        .self_dual_ids()
        .iter()
        .map(|&i| (mults[i] % 2) as u8)
        .collect())
}

/// Dickson invariant of each generator's action. Requires `inv_a(x) = 0`.
pub fn inv_d(x: &EquivForm) -> Result<Vec<u8>> {
    if inv_a(x)? != 0 {
        return Err(Error::Precondition(
            "Dickson character is only defined on the kernel of A".into(),
        ));
    }
    let id = Mat::identity(x.rep.field(), x.dim());
    let gens: Vec<u8> = x
        .rep
        .mats()
        .iter()
        .map(|g| Ok((g.add(&id)?.rank() % 2) as u8))
        .collect::<Result<_>>()?;
    // spot-check the homomorphism property along generator words
    let group = x.catalog.group();
    let mut rng = ChaCha8Rng::seed_from_u64(x.catalog.config().seed);
    for _ in 0..DICKSON_SPOT_CHECKS.min(group.order()) {
        let i = rng.gen_range(0..group.order());
        let m = x.rep.element_matrix(i);
        let direct = (m.add(&id)?.rank() % 2) as u8;
        let via_word = group.word(i).iter().fold(0u8, |acc, &s| acc ^ gens[s]);
        if direct != via_word {
            return Err(Error::Internal(format!(
                "Dickson invariant is not multiplicative at element {i}"
            )));
        }
    }
    Ok(gens)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittInvariants {
    pub a: u8,
    pub c: Vec<u8>,
    pub d: Option<Vec<u8>>,
}

pub fn invariants(x: &EquivForm) -> Result<WittInvariants> {
    let a = inv_a(x)?;
    let c = inv_c(x)?;
    let d = if a == 0 { Some(inv_d(x)?) } else { None };
    Ok(WittInvariants { a, c, d })
}

/// Shape of an anisotropic form's socle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnisoCase {
    /// No trivial constituent; `V` is a sum of distinct orthogonal simples.
    Orthogonal,
    /// The trivial part is a copy of `N(K)` split off orthogonally.
    Norm,
    /// The trivial part is a line `<e>` with `Q(e) = 1` in an indecomposable
    /// summand `R`; `symplectic` lists the classes of `<e>^perp / <e>`.
    Rump {
        e: Vec<Scalar>,
        symplectic: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnisoStructure {
    pub case: AnisoCase,
    /// Orthogonal classes in the socle outside the trivial part.
    pub orthogonal: Vec<usize>,
}

pub fn aniso_structure(x: &EquivForm) -> Result<AnisoStructure> {
    if find_isotropic_simple(x, SearchOrder::Forward)?.is_some() {
        return Err(Error::Precondition("form is not anisotropic".into()));
    }
    let cat = &x.catalog;
    let f = cat.field().clone();
    let n = x.dim();
    let mut trivial = Mat::zeros(&f, 0, n);
    let mut v0 = Mat::zeros(&f, 0, n);
    let mut orthogonal = Vec::new();
    for (id, homs) in cat.homogeneous_components(&x.rep)? {
        let class = &cat.simples()[id];
        let mut span = Mat::zeros(&f, 0, n);
        for h in &homs {
            span = span.vstack(h)?;
        }
        if class.mtype == MType::Trivial {
            trivial = span.row_space();
            continue;
        }
        let end = hom_space(&class.rep, &class.rep)?.len();
        if class.mtype != MType::Orthogonal || homs.len() != end {
            return Err(Error::Internal(format!(
                "socle constituent {id} is not a single orthogonal simple"
            )));
        }
        orthogonal.push(id);
        v0 = v0.vstack(&span)?;
    }
    let v0 = v0.row_space();
    if v0.rows() > 0 && !x.form.restrict(&v0)?.is_nondegenerate() {
        return Err(Error::Internal(
            "orthogonal part of the socle is degenerate".into(),
        ));
    }
    let case = match trivial.rows() {
        0 => {
            if v0.rows() != n {
                return Err(Error::Internal(
                    "socle without trivial part is not the whole module".into(),
                ));
            }
            AnisoCase::Orthogonal
        }
        2 => {
            let qt = x.form.restrict(&trivial)?;
            if !qt.is_nondegenerate() || find_isotropic_vector(&qt)?.is_some() || v0.rows() + 2 != n
            {
                return Err(Error::Internal(
                    "two-dimensional trivial part is not a split norm form".into(),
                ));
            }
            AnisoCase::Norm
        }
        1 => {
            let e0 = trivial.row(0);
            let r = f.sqrt(x.form.eval(e0));
            let rinv = f.inv(r)?;
            let e: Vec<Scalar> = e0.iter().map(|&c| f.mul(c, rinv)).collect();
            let rump = if v0.rows() > 0 {
                perp(x, &v0)?
            } else {
                Mat::identity(&f, n)
            };
            let em = Mat::row_vector(&f, &e);
            let top = intersection(&rump, &perp(x, &em)?)?;
            let (w, _) = x.rep.subquotient(&top, &em)?;
            let mut symplectic = Vec::new();
            if w.dim() > 0 {
                for (id, m) in cat.multiplicities(&w)?.into_iter().enumerate() {
                    if m == 0 {
                        continue;
                    }
                    if m != 1 || cat.simples()[id].mtype != MType::Symplectic {
                        return Err(Error::Internal(format!(
                            "class {id} occurs {m} times in the rump quotient"
                        )));
                    }
                    symplectic.push(id);
                }
                if cat.socle(&w)?.rows() != w.dim() {
                    return Err(Error::Internal("rump quotient is not semisimple".into()));
                }
            }
            AnisoCase::Rump { e, symplectic }
        }
        k => {
            return Err(Error::Internal(format!(
                "anisotropic form with {k}-dimensional trivial socle"
            )))
        }
    };
    Ok(AnisoStructure { case, orthogonal })
}

/// Brute-force metabolicity: depth-first search over isotropic submodules
/// generated by isotropic vectors, looking for one of half dimension.
pub fn oracle_metabolic(x: &EquivForm) -> Result<bool> {
    let n = x.dim();
    let q = x.rep.field().size();
    if (q as f64).powi(n as i32) > ORACLE_CAP as f64 {
        return Err(Error::Cap(format!(
            "oracle limited to |K|^dim <= {ORACLE_CAP}"
        )));
    }
    if n % 2 == 1 {
        return Ok(false);
    }
    let start = Mat::zeros(x.rep.field(), 0, n);
    let mut seen = HashSet::new();
    oracle_search(x, &start, &mut seen)
}

fn oracle_search(x: &EquivForm, u: &Mat, seen: &mut HashSet<Vec<u16>>) -> Result<bool> {
    let n = x.dim();
    if 2 * u.rows() == n {
        return Ok(true);
    }
    let f = x.rep.field().clone();
    let q = f.size();
    let up = perp(x, u)?;
    let k = up.rows();
    for idx in 1..q.pow(k as u32) {
        let mut v = vec![Scalar::ZERO; n];
        let mut t = idx;
        for r in 0..k {
            let c = Scalar((t % q) as u16);
            t /= q;
            if !c.is_zero() {
                for (a, &b) in v.iter_mut().zip(up.row(r)) {
                    *a += f.mul(c, b);
                }
            }
        }
        if !x.form.eval(&v).is_zero() {
            continue;
        }
        let grown = spin(&u.vstack(&Mat::row_vector(&f, &v))?, x.rep.mats())?;
        if grown.rows() == u.rows() {
            continue;
        }
        let key: Vec<u16> = grown.data().iter().map(|s| s.0).collect();
        if !seen.insert(key) {
            continue;
        }
        if !x.form.restrict(&grown)?.upper().is_zero() {
            continue;
        }
        if oracle_search(x, &grown, seen)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::simple_catalog;
    use crate::gfield::FieldSpec;
    use crate::group::standard::*;
    use crate::quadspace::norm_form;

    fn cat(g: crate::group::PermGroup, e: u32) -> Arc<Catalog> {
        Arc::new(simple_catalog(&Arc::new(g), &FieldSpec::gf(e)).unwrap())
    }

    fn rtau_plus(c: &Arc<Catalog>) -> EquivForm {
        let f = c.field();
        let m = Mat::from_bits(f, &[&[1, 1], &[0, 1]]);
        let rep = Rep::new(c.group().clone(), f, vec![m]).unwrap();
        let form = QuadForm::new(Mat::from_bits(f, &[&[0, 1], &[0, 1]])).unwrap();
        EquivForm::new(c, rep, form).unwrap()
    }

    #[test]
    fn validation() {
        let c = cat(cyclic(2), 1);
        let f = c.field();
        assert!(EquivForm::with_trivial_action(&c, norm_form(f)).is_ok());
        rtau_plus(&c);
        let line = QuadForm::new(Mat::from_bits(f, &[&[1]])).unwrap();
        assert!(matches!(
            EquivForm::with_trivial_action(&c, line),
            Err(Error::Degenerate { .. })
        ));
        let rep = Rep::new(
            c.group().clone(),
            f,
            vec![Mat::from_bits(f, &[&[1, 1], &[0, 1]])],
        )
        .unwrap();
        let bad = QuadForm::new(Mat::from_bits(f, &[&[1, 1], &[0, 0]])).unwrap();
        assert!(matches!(
            EquivForm::new(&c, rep, bad),
            Err(Error::NotInvariant { generator: 0, .. })
        ));
    }

    #[test]
    fn reduction_examples() {
        let c = cat(cyclic(2), 1);
        let f = c.field();
        let h = EquivForm::with_trivial_action(&c, QuadForm::hyperbolic_plane(f)).unwrap();
        let n = EquivForm::with_trivial_action(&c, norm_form(f)).unwrap();
        assert!(find_isotropic_simple(&n, SearchOrder::Forward)
            .unwrap()
            .is_none());
        let u = find_isotropic_simple(&h, SearchOrder::Forward)
            .unwrap()
            .unwrap();
        assert_eq!(reduce_by(&h, &u).unwrap().dim(), 0);
        let r = rtau_plus(&c);
        assert!(find_isotropic_simple(&r, SearchOrder::Forward)
            .unwrap()
            .is_none());
        assert!(!is_metabolic(&r).unwrap());
        assert!(is_metabolic(&h).unwrap());
        assert!(!is_metabolic(&n).unwrap());
        let nhh = n.orth_sum(&h).unwrap().orth_sum(&h).unwrap();
        let red = anisotropic_rep(&nhh).unwrap();
        assert_eq!(red.dim(), 2);
        assert_eq!(inv_a(&red).unwrap(), 1);
        // R+ (+) R+ by the diagonal
        let rr = r.orth_sum(&r).unwrap();
        let diag = Mat::from_bits(f, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        assert_eq!(reduce_by(&rr, &diag).unwrap().dim(), 0);
        assert!(oracle_metabolic(&rr).unwrap());
    }

    #[test]
    fn invariants_of_small_forms() {
        let c = cat(cyclic(2), 1);
        let f = c.field();
        let r = rtau_plus(&c);
        assert_eq!(inv_a(&r).unwrap(), 0);
        assert_eq!(inv_d(&r).unwrap(), vec![1]);
        let n = EquivForm::with_trivial_action(&c, norm_form(f)).unwrap();
        assert_eq!(inv_a(&n).unwrap(), 1);
        assert_eq!(inv_c(&n).unwrap(), vec![0]);
        assert!(inv_d(&n).is_err());
        let rminus = r.orth_sum(&n).unwrap();
        assert_eq!(inv_a(&rminus).unwrap(), 1);
    }

    #[test]
    fn structure_cases() {
        let c = cat(cyclic(2), 1);
        let f = c.field();
        let n = EquivForm::with_trivial_action(&c, norm_form(f)).unwrap();
        assert_eq!(aniso_structure(&n).unwrap().case, AnisoCase::Norm);
        let r = rtau_plus(&c);
        match aniso_structure(&r).unwrap().case {
            AnisoCase::Rump { e, symplectic } => {
                assert_eq!(e, vec![Scalar::ZERO, Scalar::ONE]);
                assert!(symplectic.is_empty());
            }
            other => panic!("unexpected {other:?}"),
        }
        let s3 = cat(symmetric3(), 1);
        let s = &s3.simples()[1];
        let qs = EquivForm::new(
            &s3,
            s.rep.clone(),
            QuadForm::new(s.inv_quadratic[0].clone()).unwrap(),
        )
        .unwrap();
        let st = aniso_structure(&qs).unwrap();
        assert_eq!(st.case, AnisoCase::Orthogonal);
        assert_eq!(st.orthogonal, vec![1]);
    }

    #[test]
    fn oracle_examples() {
        let c = cat(cyclic(2), 1);
        let f = c.field();
        let h = EquivForm::with_trivial_action(&c, QuadForm::hyperbolic_plane(f)).unwrap();
        let n = EquivForm::with_trivial_action(&c, norm_form(f)).unwrap();
        assert!(oracle_metabolic(&h).unwrap());
        assert!(!oracle_metabolic(&n).unwrap());
        assert!(oracle_metabolic(&n.orth_sum(&n).unwrap()).unwrap());
        assert!(!oracle_metabolic(&rtau_plus(&c)).unwrap());
    }
}
