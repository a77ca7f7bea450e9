//! Generators of the equivariant Witt group.

use std::sync::Arc;

use crate::catalog::{Catalog, MType};
use crate::equiforms::EquivForm;
use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::gfield::Scalar;
use crate::quadspace::{dickson, norm_form, symplectic_basis, QuadForm};
use crate::rep::Rep;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// A generator form together with its label.
#[derive(Clone, Debug)]
pub struct Labeled {
    pub label: String,
    pub form: EquivForm,
}

/// `N(K)` with trivial action.
pub fn gen_norm(catalog: &Arc<Catalog>) -> Result<Labeled> {
    let form = EquivForm::with_trivial_action(catalog, norm_form(catalog.field()))?;
    Ok(Labeled {
        label: "N".into(),
        form,
    })
}

/// The canonical invariant quadratic form on an orthogonal simple module,
/// scaled so that its first nonzero coefficient is 1.
pub fn gen_orthogonal_simple(catalog: &Arc<Catalog>, id: usize) -> Result<Labeled> {
    let class = catalog
        .simples()
        .get(id)
        .ok_or_else(|| Error::Precondition(format!("no simple class {id}")))?;
    if class.mtype != MType::Orthogonal {
        return Err(Error::Precondition(format!(
            "class {id} is {}, not orthogonal",
            class.mtype.as_str()
        )));
    }
    let f = catalog.field();
    let u = &class.inv_quadratic[0];
    let lead = u
        .data()
        .iter()
        .copied()
        .find(|s| !s.is_zero())
        .expect("nonzero form");
    let form = QuadForm::new(u.scale(f.inv(lead)?))?;
    let form = EquivForm::new(catalog, class.rep.clone(), form)?;
    Ok(Labeled {
        label: format!("S:{id}"),
        form,
    })
}

/// `R^+(tau)` or `R^-(tau)` on the basis `(f, e)`: `Q(e) = 1`,
/// `B(f, e) = 1`, `Q(f)` is 0 or `alpha`, and a generator acts by
/// `[[1, 1], [0, 1]]` exactly when `tau` sends it to 1.
pub fn gen_rtau(catalog: &Arc<Catalog>, tau: &[u8], sign: Sign, index: usize) -> Result<Labeled> {
    let f = catalog.field();
    let g = catalog.group();
    if tau.len() != g.num_generators() {
        return Err(Error::Shape(format!(
            "character has {} values for {} generators",
            tau.len(),
            g.num_generators()
        )));
    }
    if tau.iter().all(|&t| t == 0) {
        return Err(Error::Precondition("character is trivial".into()));
    }
    let shear = Mat::from_bits(f, &[&[1, 1], &[0, 1]]);
    let mats = tau
        .iter()
        .map(|&t| {
            if t & 1 == 1 {
                shear.clone()
            } else {
                Mat::identity(f, 2)
            }
        })
        .collect();
    let rep = Rep::new(g.clone(), f, mats)
        .map_err(|_| Error::Precondition("map is not a homomorphism to C2".into()))?;
    let mut u = Mat::from_bits(f, &[&[0, 1], &[0, 1]]);
    if sign == Sign::Minus {
        u[(0, 0)] = f.alpha();
    }
    let form = EquivForm::new(catalog, rep, QuadForm::new(u)?)?;
    Ok(Labeled {
        label: format!("Rtau:{index}:{}", sign.as_str()),
        form,
    })
}

/// Quadratic envelope `R^+(W)` of `W = W_1 + ... + W_r` (distinct symplectic
/// classes).
///
/// `W` carries the block-diagonal invariant alternating form, rewritten in a
/// symplectic basis `(w, v)`. The envelope lives on `(f, w_1..w_m, v_1..v_m, e)`
/// with `Q(f) = 0`, `Q(e) = 1`, `B(f, e) = 1` and hyperbolic pairs
/// `(w_i, v_i)`. Each generator with symplectic matrix `[[A, B], [C, D]]` is
/// lifted to the isometry fixing `e` with rows
/// `[1 a b x], [0 A B c], [0 C D d], [0 0 0 1]`, choosing the root `x` that
/// makes the Dickson invariant trivial.
pub fn gen_envelope(catalog: &Arc<Catalog>, ids: &[usize]) -> Result<Labeled> {
    let f = catalog.field().clone();
    if ids.is_empty() {
        return Err(Error::Precondition("envelope of an empty list".into()));
    }
    let mut sorted = ids.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != ids.len() {
        return Err(Error::Precondition(
            "envelope classes must be distinct".into(),
        ));
    }
    let mut w: Option<Rep> = None;
    let mut bform = Mat::zeros(&f, 0, 0);
    for &id in ids {
        let class = catalog
            .simples()
            .get(id)
            .ok_or_else(|| Error::Precondition(format!("no simple class {id}")))?;
        if class.mtype != MType::Symplectic {
            return Err(Error::Precondition(format!(
                "class {id} is {}, not symplectic",
                class.mtype.as_str()
            )));
        }
        bform = bform.block_diag(&class.inv_bilinear[0])?;
        w = Some(match w {
            None => class.rep.clone(),
            Some(acc) => acc.direct_sum(&class.rep)?,
        });
    }
    let w = w.expect("nonempty");
    let p = symplectic_basis(&bform)?;
    let w = w.change_basis(&p)?;
    let dim_w = w.dim();
    let m = dim_w / 2;
    let n = dim_w + 2;

    let mut upper = Mat::zeros(&f, n, n);
    upper[(0, n - 1)] = Scalar::ONE;
    upper[(n - 1, n - 1)] = Scalar::ONE;
    for i in 0..m {
        upper[(1 + i, 1 + m + i)] = Scalar::ONE;
    }
    let q = QuadForm::new(upper)?;

    let mut h = Mat::identity(&f, n);
    h[(0, n - 1)] = Scalar::ONE;

    let mut lifts = Vec::with_capacity(w.mats().len());
    for g in w.mats() {
        let a_blk = g.submatrix(0..m, 0..m);
        let b_blk = g.submatrix(0..m, m..dim_w);
        let c_blk = g.submatrix(m..dim_w, 0..m);
        let d_blk = g.submatrix(m..dim_w, m..dim_w);
        let ab = a_blk.mul(&b_blk.transpose())?;
        let cd = c_blk.mul(&d_blk.transpose())?;
        let mut cd_col = Mat::zeros(&f, dim_w, 1);
        for i in 0..m {
            cd_col[(i, 0)] = f.sqrt(ab[(i, i)]);
            cd_col[(m + i, 0)] = f.sqrt(cd[(i, i)]);
        }
        let ba = g.inverse()?.mul(&cd_col)?;
        let b_vec: Vec<Scalar> = (0..m).map(|i| ba[(i, 0)]).collect();
        let a_vec: Vec<Scalar> = (0..m).map(|i| ba[(m + i, 0)]).collect();
        let mut ab_dot = Scalar::ZERO;
        for i in 0..m {
            ab_dot += f.mul(a_vec[i], b_vec[i]);
        }
        let (x0, _) = f
            .artin_schreier_solve(ab_dot)
            .ok_or_else(|| Error::Internal("a.b is not in the Artin-Schreier image".into()))?;
        let mut lift = Mat::zeros(&f, n, n);
        lift[(0, 0)] = Scalar::ONE;
        for i in 0..m {
            lift[(0, 1 + i)] = a_vec[i];
            lift[(0, 1 + m + i)] = b_vec[i];
        }
        lift[(0, n - 1)] = x0;
        for r in 0..dim_w {
            for c in 0..dim_w {
                lift[(1 + r, 1 + c)] = g[(r, c)];
            }
            lift[(1 + r, n - 1)] = cd_col[(r, 0)];
        }
        lift[(n - 1, n - 1)] = Scalar::ONE;
        if dickson(&lift, &q)? == 1 {
            lift = lift.mul(&h)?;
        }
        if dickson(&lift, &q)? != 0 {
            return Err(Error::Internal(
                "both lifts have nontrivial Dickson invariant".into(),
            ));
        }
        lifts.push(lift);
    }
    let rep = Rep::new(catalog.group().clone(), &f, lifts)
        .map_err(|e| Error::Internal(format!("envelope lift is not a representation: {e}")))?;
    let form = EquivForm::new(catalog, rep, q)?;
    let label = format!(
        "Env:{}",
        ids.iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    Ok(Labeled { label, form })
}
