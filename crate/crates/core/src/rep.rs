//! Right `KG`-modules given by one invertible matrix per group generator.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{solve_linear, Mat};
use crate::gfield::{FieldSpec, Scalar};
use crate::group::PermGroup;

/// Largest module dimension handled.
pub const MAX_DIM: usize = 256;

/// A right `KG`-module: `v . g = v * mats[s]` for generator `s`.
#[derive(Clone, Debug)]
pub struct Rep {
    group: Arc<PermGroup>,
    field: FieldSpec,
    dim: usize,
    mats: Vec<Mat>,
}

impl PartialEq for Rep {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.field == other.field
            && self.mats == other.mats
            && *self.group == *other.group
    }
}

impl Rep {
    /// Validates shapes, invertibility, and that the generator images extend
    /// to a homomorphism on the element closure.
    pub fn new(group: Arc<PermGroup>, field: &FieldSpec, mats: Vec<Mat>) -> Result<Rep> {
        if mats.len() != group.num_generators() {
            return Err(Error::Rep(format!(
                "{} matrices for {} group generators",
                mats.len(),
                group.num_generators()
            )));
        }
        let dim = mats.first().map_or(0, |m| m.rows());
        if dim > MAX_DIM {
            return Err(Error::Cap(format!(
                "module dimension {dim} exceeds {MAX_DIM}"
            )));
        }
        for (k, m) in mats.iter().enumerate() {
            if m.field() != field {
                return Err(Error::FieldMismatch);
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Rep(format!(
                    "matrix {k} is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            if !m.is_invertible() {
                return Err(Error::Rep(format!("matrix {k} is singular")));
            }
        }
        let rep = Rep {
            group,
            field: field.clone(),
            dim,
            mats,
        };
        if !rep.relations_hold() {
            return Err(Error::Rep(
                "generator matrices do not satisfy the group relations".into(),
            ));
        }
        Ok(rep)
    }

    /// Skips validation; for modules derived from validated ones.
    pub fn new_unchecked(
        group: Arc<PermGroup>,
        field: &FieldSpec,
        dim: usize,
        mats: Vec<Mat>,
    ) -> Rep {
        debug_assert!(mats.iter().all(|m| m.rows() == dim && m.cols() == dim));
        Rep {
            group,
            field: field.clone(),
            dim,
            mats,
        }
    }

    fn relations_hold(&self) -> bool {
        let id = Mat::identity(&self.field, self.dim);
        self.group
            .is_hom(id, &self.mats, |a, b| a.mul(b).expect("square matrices"))
    }

    pub fn trivial(group: Arc<PermGroup>, field: &FieldSpec) -> Rep {
        let mats = vec![Mat::identity(field, 1); group.num_generators()];
        Rep {
            group,
            field: field.clone(),
            dim: 1,
            mats,
        }
    }

    pub fn zero(group: Arc<PermGroup>, field: &FieldSpec) -> Rep {
        let mats = vec![Mat::zeros(field, 0, 0); group.num_generators()];
        Rep {
            group,
            field: field.clone(),
            dim: 0,
            mats,
        }
    }

    /// The permutation module on the points the group acts on.
    pub fn permutation(group: Arc<PermGroup>, field: &FieldSpec) -> Result<Rep> {
        let n = group.degree();
        if n > MAX_DIM {
            return Err(Error::Cap(format!(
                "permutation degree {n} exceeds {MAX_DIM}"
            )));
        }
        let mats = group
            .generators()
            .iter()
            .map(|g| perm_matrix(field, g))
            .collect();
        Ok(Rep {
            group,
            field: field.clone(),
            dim: n,
            mats,
        })
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mats(&self) -> &[Mat] {
        &self.mats
    }

    pub fn same_context(&self, other: &Rep) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if !Arc::ptr_eq(&self.group, &other.group) && *self.group != *other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn is_trivial_action(&self) -> bool {
        self.mats.iter().all(|m| m.is_identity())
    }

    /// Matrix of every group element, in the group's element order.
    pub fn element_matrices(&self) -> Vec<Mat> {
        let id = Mat::identity(&self.field, self.dim);
        self.group
            .extend_hom(id, &self.mats, |a, b| a.mul(b).expect("square matrices"))
    }

    /// Matrix of a single element, by multiplying along its word.
    pub fn element_matrix(&self, i: usize) -> Mat {
        let mut m = Mat::identity(&self.field, self.dim);
        for s in self.group.word(i) {
            m = m.mul(&self.mats[s]).expect("square matrices");
        }
        m
    }

    pub fn direct_sum(&self, other: &Rep) -> Result<Rep> {
        self.same_context(other)?;
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| a.block_diag(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Rep {
            group: self.group.clone(),
            field: self.field.clone(),
            dim: self.dim + other.dim,
            mats,
        })
    }

    /// Kronecker product `V (x) W` with basis `v_i (x) w_j` in row-major order.
    pub fn tensor(&self, other: &Rep) -> Result<Rep> {
        self.same_context(other)?;
        let n = self.dim * other.dim;
        if n > MAX_DIM {
            return Err(Error::Cap(format!(
                "tensor product dimension {n} exceeds {MAX_DIM}"
            )));
        }
        let f = &self.field;
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| {
                let mut m = Mat::zeros(f, n, n);
                for i in 0..a.rows() {
                    for k in 0..a.cols() {
                        let x = a[(i, k)];
                        if x.is_zero() {
                            continue;
                        }
                        for j in 0..b.rows() {
                            for l in 0..b.cols() {
                                m[(i * b.rows() + j, k * b.cols() + l)] = f.mul(x, b[(j, l)]);
                            }
                        }
                    }
                }
                m
            })
            .collect();
        Ok(Rep {
            group: self.group.clone(),
            field: f.clone(),
            dim: n,
            mats,
        })
    }

    /// Same module written in the basis given by the rows of `p`.
    pub fn change_basis(&self, p: &Mat) -> Result<Rep> {
        let inv = p.inverse()?;
        let mats = self
            .mats
            .iter()
            .map(|m| p.mul(m)?.mul(&inv))
            .collect::<Result<Vec<_>>>()?;
        Ok(Rep {
            group: self.group.clone(),
            field: self.field.clone(),
            dim: self.dim,
            mats,
        })
    }

    /// Action on the submodule spanned by the rows of `basis` (which must be
    /// a submodule), in that basis.
    pub fn submodule(&self, basis: &Mat) -> Result<Rep> {
        let k = basis.rows();
        let mut mats = Vec::with_capacity(self.mats.len());
        for m in &self.mats {
            let img = basis.mul(m)?;
            let x = solve_linear(basis, &img)?
                .ok_or_else(|| Error::Precondition("subspace is not G-stable".into()))?;
            mats.push(x);
        }
        Ok(Rep {
            group: self.group.clone(),
            field: self.field.clone(),
            dim: k,
            mats,
        })
    }

    /// Action on `top / bottom` for submodules `bottom <= top`, returned with
    /// the lift (ambient coset representatives) used as its basis.
    pub fn subquotient(&self, top: &Mat, bottom: &Mat) -> Result<(Rep, Mat)> {
        let top = top.row_space();
        let bottom = bottom.row_space();
        let in_top = solve_linear(&top, &bottom)?
            .ok_or_else(|| Error::Precondition("bottom is not contained in top".into()))?
            .row_space();
        let (lift_top, project) = crate::exactla::quotient_basis(&in_top, top.rows())?;
        let lift = lift_top.mul(&top)?;
        let mut mats = Vec::with_capacity(self.mats.len());
        for m in &self.mats {
            let img = lift.mul(m)?;
            let coords = solve_linear(&top, &img)?
                .ok_or_else(|| Error::Precondition("top is not G-stable".into()))?;
            mats.push(coords.mul(&project)?);
        }
        let q = lift.rows();
        Ok((
            Rep {
                group: self.group.clone(),
                field: self.field.clone(),
                dim: q,
                mats,
            },
            lift,
        ))
    }

    pub fn transposed_mats(&self) -> Vec<Mat> {
        self.mats.iter().map(|m| m.transpose()).collect()
    }
}

pub fn perm_matrix(field: &FieldSpec, p: &[u32]) -> Mat {
    let n = p.len();
    let mut m = Mat::zeros(field, n, n);
    for (i, &j) in p.iter().enumerate() {
        m[(i, j as usize)] = Scalar::ONE;
    }
    m
}

/// Right regular module: basis `e_x` for `x` in `G`, `e_x . g = e_{xg}`.
pub fn regular_rep(group: Arc<PermGroup>, field: &FieldSpec) -> Result<Rep> {
    let n = group.order();
    if n > MAX_DIM {
        return Err(Error::Cap(format!(
            "regular module of a group of order {n} exceeds dimension cap {MAX_DIM}"
        )));
    }
    let mats = (0..group.num_generators())
        .map(|s| {
            let img: Vec<u32> = (0..n).map(|x| group.right_mul(x, s) as u32).collect();
            perm_matrix(field, &img)
        })
        .collect();
    Ok(Rep {
        group,
        field: field.clone(),
        dim: n,
        mats,
    })
}

/// Contragredient module: `g -> (rho(g)^-1)^T`.
pub fn dual_rep(v: &Rep) -> Rep {
    let mats = v
        .mats
        .iter()
        .map(|m| {
            m.inverse()
                .expect("representation matrices are invertible")
                .transpose()
        })
        .collect();
    Rep {
        group: v.group.clone(),
        field: v.field.clone(),
        dim: v.dim,
        mats,
    }
}

/// Basis of `{X : rho_a(g) X = X rho_b(g)}`, each `X` of shape `dim a x dim b`.
pub fn hom_space(a: &Rep, b: &Rep) -> Result<Vec<Mat>> {
    a.same_context(b)?;
    let f = &a.field;
    let (na, nb) = (a.dim, b.dim);
    let unknowns = na * nb;
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let per = na * nb;
    let mut coeffs = Mat::zeros(f, unknowns, per * a.mats.len());
    for (s, (ma, mb)) in a.mats.iter().zip(&b.mats).enumerate() {
        let base = s * per;
        for i in 0..na {
            for k in 0..na {
                let c = ma[(i, k)];
                if c.is_zero() {
                    continue;
                }
                for j in 0..nb {
                    coeffs[(k * nb + j, base + i * nb + j)] += c;
                }
            }
        }
        for l in 0..nb {
            for j in 0..nb {
                let c = mb[(l, j)];
                if c.is_zero() {
                    continue;
                }
                for i in 0..na {
                    coeffs[(i * nb + l, base + i * nb + j)] += c;
                }
            }
        }
    }
    let kernel = coeffs.left_kernel();
    Ok((0..kernel.rows())
        .map(|r| Mat::from_vec(f, na, nb, kernel.row(r).to_vec()).expect("shape"))
        .collect())
}

/// Maximum number of intertwiner combinations tried by [`iso_test`].
pub const ISO_SEARCH_CAP: usize = 1 << 12;

/// An invertible intertwiner `a -> b`, if one exists.
///
/// For simple modules any nonzero intertwiner is invertible. Otherwise
/// K-combinations of the hom-space basis are enumerated up to
/// [`ISO_SEARCH_CAP`] candidates.
pub fn iso_test(a: &Rep, b: &Rep) -> Result<Option<Mat>> {
    a.same_context(b)?;
    if a.dim != b.dim {
        return Ok(None);
    }
    if a.dim == 0 {
        return Ok(Some(Mat::zeros(&a.field, 0, 0)));
    }
    let basis = hom_space(a, b)?;
    if basis.is_empty() {
        return Ok(None);
    }
    for h in &basis {
        if h.is_invertible() {
            return Ok(Some(h.clone()));
        }
    }
    let q = a.field.size();
    let k = basis.len();
    let total = (q as f64).powi(k as i32);
    let f = &a.field;
    let limit = if total > ISO_SEARCH_CAP as f64 {
        ISO_SEARCH_CAP
    } else {
        total as usize
    };
    for idx in 1..limit {
        let mut m = Mat::zeros(f, a.dim, b.dim);
        let mut t = idx;
        for h in &basis {
            let c = Scalar((t % q) as u16);
            t /= q;
            if !c.is_zero() {
                m = m.add(&h.scale(c))?;
            }
        }
        if m.is_invertible() {
            return Ok(Some(m));
        }
    }
    if total > ISO_SEARCH_CAP as f64 {
        return Err(Error::Cap(format!(
            "isomorphism search over {k}-dimensional hom space exceeds {ISO_SEARCH_CAP} candidates"
        )));
    }
    Ok(None)
}

/// Basis of the symmetric `B` with `rho(g) B rho(g)^T = B` for all generators.
pub fn invariant_bilinear(v: &Rep) -> Vec<Mat> {
    let n = v.dim;
    let f = &v.field;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let m = pairs.len();
    if m == 0 {
        return Vec::new();
    }
    let mut coeffs = Mat::zeros(f, m, m * v.mats.len());
    for (s, g) in v.mats.iter().enumerate() {
        for (eq, &(i, j)) in pairs.iter().enumerate() {
            let col = s * m + eq;
            for (u, &(k, l)) in pairs.iter().enumerate() {
                let mut c = f.mul(g[(i, k)], g[(j, l)]);
                if k != l {
                    c += f.mul(g[(i, l)], g[(j, k)]);
                }
                if (k, l) == (i, j) {
                    c += Scalar::ONE;
                }
                coeffs[(u, col)] += c;
            }
        }
    }
    let kernel = coeffs.left_kernel();
    (0..kernel.rows())
        .map(|r| {
            let mut b = Mat::zeros(f, n, n);
            for (u, &(k, l)) in pairs.iter().enumerate() {
                b[(k, l)] = kernel[(r, u)];
                b[(l, k)] = kernel[(r, u)];
            }
            b
        })
        .collect()
}

/// Basis of the upper-triangular `U` with `fold(rho(g) U rho(g)^T) = U` for
/// all generators, i.e. of the G-invariant quadratic forms.
pub fn invariant_quadratic(v: &Rep) -> Vec<Mat> {
    let n = v.dim;
    let f = &v.field;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let m = pairs.len();
    if m == 0 {
        return Vec::new();
    }
    let mut coeffs = Mat::zeros(f, m, m * v.mats.len());
    for (s, g) in v.mats.iter().enumerate() {
        for (eq, &(i, j)) in pairs.iter().enumerate() {
            let col = s * m + eq;
            for (u, &(k, l)) in pairs.iter().enumerate() {
                let mut c = f.mul(g[(i, k)], g[(j, l)]);
                if i != j {
                    c += f.mul(g[(j, k)], g[(i, l)]);
                }
                if (k, l) == (i, j) {
                    c += Scalar::ONE;
                }
                coeffs[(u, col)] += c;
            }
        }
    }
    let kernel = coeffs.left_kernel();
    (0..kernel.rows())
        .map(|r| {
            let mut u = Mat::zeros(f, n, n);
            for (idx, &(k, l)) in pairs.iter().enumerate() {
                u[(k, l)] = kernel[(r, idx)];
            }
            u
        })
        .collect()
}
