//! Quadratic spaces over `GF(2^e)` without group action.
//!
//! A form is stored as an upper-triangular matrix `U` with
//! `Q(v) = sum_{i<=j} U_ij v_i v_j`; its polarization is `U + U^T`.

use crate::error::{Error, Result};
use crate::exactla::{quotient_basis, Mat};
use crate::gfield::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadForm {
    upper: Mat,
}

/// Upper-triangular matrix representing the same quadratic form as `m`:
/// diagonal kept, `(i, j)` for `i < j` set to `m_ij + m_ji`.
pub fn fold(m: &Mat) -> Mat {
    let n = m.rows();
    let mut u = Mat::zeros(m.field(), n, n);
    for i in 0..n {
        u[(i, i)] = m[(i, i)];
        for j in i + 1..n {
            u[(i, j)] = m[(i, j)] + m[(j, i)];
        }
    }
    u
}

impl QuadForm {
    pub fn new(upper: Mat) -> Result<QuadForm> {
        if upper.rows() != upper.cols() {
            return Err(Error::Shape(format!(
                "form matrix is {}x{}",
                upper.rows(),
                upper.cols()
            )));
        }
        for i in 0..upper.rows() {
            for j in 0..i {
                if !upper[(i, j)].is_zero() {
                    return Err(Error::Shape(format!(
                        "entry ({i}, {j}) below the diagonal is nonzero"
                    )));
                }
            }
        }
        Ok(QuadForm { upper })
    }

    /// Form `v -> v M v^T` for an arbitrary square `m`.
    pub fn from_matrix(m: &Mat) -> QuadForm {
        QuadForm { upper: fold(m) }
    }

    pub fn zero(f: &FieldSpec, n: usize) -> QuadForm {
        QuadForm {
            upper: Mat::zeros(f, n, n),
        }
    }

    /// `H = <x, y>` with `Q(x) = Q(y) = 0`, `B(x, y) = 1`.
    pub fn hyperbolic_plane(f: &FieldSpec) -> QuadForm {
        QuadForm {
            upper: Mat::from_bits(f, &[&[0, 1], &[0, 0]]),
        }
    }

    pub fn dim(&self) -> usize {
        self.upper.rows()
    }

    pub fn field(&self) -> &FieldSpec {
        self.upper.field()
    }

    pub fn upper(&self) -> &Mat {
        &self.upper
    }

    pub fn eval(&self, v: &[Scalar]) -> Scalar {
        let f = self.field();
        let n = self.dim();
        let mut acc = Scalar::ZERO;
        for i in 0..n {
            if v[i].is_zero() {
                continue;
            }
            let mut row = Scalar::ZERO;
            for (j, &vj) in v.iter().enumerate().skip(i) {
                row += f.mul(self.upper[(i, j)], vj);
            }
            acc += f.mul(v[i], row);
        }
        acc
    }

    pub fn polarize(&self) -> Mat {
        self.upper.add(&self.upper.transpose()).expect("square")
    }

    pub fn bilinear(&self, u: &[Scalar], w: &[Scalar]) -> Scalar {
        self.polarize().bilinear(u, w)
    }

    /// Basis of the radical of the polarization.
    pub fn radical(&self) -> Mat {
        self.polarize().left_kernel()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.polarize().rank() == self.dim()
    }

    /// The form pulled back along the rows of `basis`: `w -> Q(w basis)`.
    pub fn restrict(&self, basis: &Mat) -> Result<QuadForm> {
        let m = basis.mul(&self.upper)?.mul(&basis.transpose())?;
        Ok(QuadForm { upper: fold(&m) })
    }

    pub fn orth_sum(&self, other: &QuadForm) -> Result<QuadForm> {
        Ok(QuadForm {
            upper: self.upper.block_diag(&other.upper)?,
        })
    }

    /// A nonzero witness vector for which `Q(v g) != Q(v)`, if any; only
    /// basis vectors and pairwise sums are tested.
    pub fn isometry_witness(&self, g: &Mat) -> Result<Option<Vec<Scalar>>> {
        let n = self.dim();
        if g.rows() != n || g.cols() != n {
            return Err(Error::Shape(format!(
                "{}x{} matrix on a {n}-dim space",
                g.rows(),
                g.cols()
            )));
        }
        let moved = fold(&g.mul(&self.upper)?.mul(&g.transpose())?);
        for i in 0..n {
            if moved[(i, i)] != self.upper[(i, i)] {
                let mut v = vec![Scalar::ZERO; n];
                v[i] = Scalar::ONE;
                return Ok(Some(v));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if moved[(i, j)] != self.upper[(i, j)] {
                    let mut v = vec![Scalar::ZERO; n];
                    v[i] = Scalar::ONE;
                    v[j] = Scalar::ONE;
                    return Ok(Some(v));
                }
            }
        }
        Ok(None)
    }

    pub fn check_isometry(&self, g: &Mat) -> Result<()> {
        match self.isometry_witness(g)? {
            None => Ok(()),
            Some(w) => Err(Error::NotIsometry {
                witness: w.iter().map(|s| s.0).collect(),
            }),
        }
    }
}

/// The 2-dimensional anisotropic form: basis `(f, e)` with `Q(f) = alpha`,
/// `Q(e) = 1`, `B(f, e) = 1`.
pub fn norm_form(f: &FieldSpec) -> QuadForm {
    let mut u = Mat::from_bits(f, &[&[0, 1], &[0, 1]]);
    u[(0, 0)] = f.alpha();
    QuadForm { upper: u }
}

/// Symplectic basis `(w_1..w_m, v_1..v_m)` of a non-degenerate alternating
/// form, with `B(w_i, v_j) = delta_ij` and all other pairings zero.
pub fn symplectic_basis(b: &Mat) -> Result<Mat> {
    let n = b.rows();
    let f = b.field().clone();
    if b.cols() != n || b.transpose() != *b || (0..n).any(|i| !b[(i, i)].is_zero()) {
        return Err(Error::Precondition("form is not alternating".into()));
    }
    if n % 2 == 1 || b.rank() != n {
        return Err(Error::Precondition("alternating form is degenerate".into()));
    }
    let mut rest: Vec<Vec<Scalar>> = Mat::identity(&f, n).to_rows();
    let mut ws = Vec::new();
    let mut vs = Vec::new();
    while let Some(x) = rest.first().cloned() {
        rest.remove(0);
        let k = rest
            .iter()
            .position(|u| !b.bilinear(&x, u).is_zero())
            .ok_or_else(|| Error::Internal("no partner in symplectic reduction".into()))?;
        let y0 = rest.remove(k);
        let s = f.inv(b.bilinear(&x, &y0))?;
        let y: Vec<Scalar> = y0.iter().map(|&a| f.mul(a, s)).collect();
        for u in rest.iter_mut() {
            let by = b.bilinear(u, &y);
            let bx = b.bilinear(u, &x);
            for ((c, &xi), &yi) in u.iter_mut().zip(&x).zip(&y) {
                *c += f.mul(by, xi) + f.mul(bx, yi);
            }
        }
        ws.push(x);
        vs.push(y);
    }
    ws.extend(vs);
    Mat::from_rows(&f, &ws, n)
}

/// A nonzero vector with `Q(v) = 0`, or `None` if the form is anisotropic.
/// Works for degenerate forms as well and never enumerates the space.
pub fn find_isotropic_vector(q: &QuadForm) -> Result<Option<Vec<Scalar>>> {
    let n = q.dim();
    let f = q.field().clone();
    if n == 0 {
        return Ok(None);
    }
    let rad = q.radical();
    // On the radical Q(sum a_i r_i) = (sum a_i sqrt(Q(r_i)))^2.
    let roots: Vec<Scalar> = (0..rad.rows())
        .map(|i| f.sqrt(q.eval(rad.row(i))))
        .collect();
    if let Some(i) = roots.iter().position(|s| s.is_zero()) {
        return Ok(Some(rad.row(i).to_vec()));
    }
    if rad.rows() >= 2 {
        let v = combine(&f, roots[1], rad.row(0), roots[0], rad.row(1));
        return Ok(Some(v));
    }
    if rad.rows() == n {
        return Ok(None);
    }
    // Complement of the radical carries a non-degenerate polarization.
    let (lift, _) = quotient_basis(&rad.row_space(), n)?;
    let bc = lift.mul(&q.polarize())?.mul(&lift.transpose())?;
    let sb = symplectic_basis(&bc)?.mul(&lift)?;
    let m = sb.rows() / 2;
    let w1 = sb.row(0);
    let v1 = sb.row(m);
    let (qw, qv) = (q.eval(w1), q.eval(v1));
    if qw.is_zero() {
        return Ok(Some(w1.to_vec()));
    }
    if qv.is_zero() {
        return Ok(Some(v1.to_vec()));
    }
    if rad.rows() == 1 {
        // w1 + sqrt(Q(w1)/Q(r)) r, with B(w1, r) = 0
        let r = rad.row(0);
        let c = f.sqrt(f.div(qw, q.eval(r))?);
        return Ok(Some(combine(&f, Scalar::ONE, w1, c, r)));
    }
    if m >= 2 {
        let w2 = sb.row(1);
        let q2 = q.eval(w2);
        if q2.is_zero() {
            return Ok(Some(w2.to_vec()));
        }
        let c = f.sqrt(f.div(qw, q2)?);
        return Ok(Some(combine(&f, Scalar::ONE, w1, c, w2)));
    }
    // A single plane: Q(x w + v) = x^2 Q(w) + x + Q(v); put x = z / Q(w).
    match f.artin_schreier_solve(f.mul(qw, qv)) {
        Some((z, _)) => {
            let x = f.div(z, qw)?;
            Ok(Some(combine(&f, x, w1, Scalar::ONE, v1)))
        }
        None => Ok(None),
    }
}

fn combine(f: &FieldSpec, a: Scalar, u: &[Scalar], b: Scalar, w: &[Scalar]) -> Vec<Scalar> {
    u.iter()
        .zip(w)
        .map(|(&x, &y)| f.mul(a, x) + f.mul(b, y))
        .collect()
}

/// Class of a non-degenerate form in the Witt group of the field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Residue {
    Zero,
    NormForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittSplit {
    pub hyperbolic_count: usize,
    pub residue: Residue,
    /// Rows `x_1, y_1, ..., x_m, y_m` spanning hyperbolic planes
    /// (`Q(x) = Q(y) = 0`, `B(x, y) = 1`), followed by `f, e` of the norm
    /// form when the residue is nonzero.
    pub witness: Mat,
}

/// Arf invariant `sum Q(w_i) Q(v_i)` over a symplectic basis.
pub fn arf(q: &QuadForm) -> Result<Scalar> {
    let f = q.field();
    let sb = symplectic_basis(&q.polarize())?;
    let m = sb.rows() / 2;
    let mut acc = Scalar::ZERO;
    for i in 0..m {
        acc += f.mul(q.eval(sb.row(i)), q.eval(sb.row(m + i)));
    }
    Ok(acc)
}

/// Splits off hyperbolic planes until an anisotropic residue remains. The
/// residue is cross-checked against the Arf invariant.
pub fn witt_decompose(q: &QuadForm) -> Result<WittSplit> {
    let n = q.dim();
    let f = q.field().clone();
    if !q.is_nondegenerate() {
        return Err(Error::Degenerate {
            witness: q.radical().row(0).iter().map(|s| s.0).collect(),
        });
    }
    let b = q.polarize();
    let mut current = Mat::identity(&f, n);
    let mut witness = Mat::zeros(&f, 0, n);
    let mut pairs = 0;
    let mut residue = Residue::Zero;
    while current.rows() > 0 {
        let local = q.restrict(&current)?;
        let Some(xc) = find_isotropic_vector(&local)? else {
            witness = witness.vstack(&norm_basis(q, &current)?)?;
            residue = Residue::NormForm;
            break;
        };
        let x = Mat::row_vector(&f, &xc).mul(&current)?.row(0).to_vec();
        let k = (0..current.rows())
            .find(|&k| !b.bilinear(&x, current.row(k)).is_zero())
            .ok_or_else(|| Error::Internal("isotropic vector in the radical".into()))?;
        let s = f.inv(b.bilinear(&x, current.row(k)))?;
        let y0: Vec<Scalar> = current.row(k).iter().map(|&a| f.mul(a, s)).collect();
        let y = combine(&f, Scalar::ONE, &y0, q.eval(&y0), &x);
        let mut next = Vec::with_capacity(current.rows());
        for r in 0..current.rows() {
            let u = current.row(r);
            let (by, bx) = (b.bilinear(u, &y), b.bilinear(u, &x));
            let mut p = u.to_vec();
            for ((c, &xi), &yi) in p.iter_mut().zip(&x).zip(&y) {
                *c += f.mul(by, xi) + f.mul(bx, yi);
            }
            next.push(p);
        }
        witness = witness.vstack(&Mat::from_rows(&f, &[x, y], n)?)?;
        pairs += 1;
        current = Mat::from_rows(&f, &next, n)?.row_space();
    }
    let by_arf = if f.in_wp(arf(q)?) {
        Residue::Zero
    } else {
        Residue::NormForm
    };
    if by_arf != residue {
        return Err(Error::Internal(
            "Witt residue disagrees with the Arf invariant".into(),
        ));
    }
    Ok(WittSplit {
        hyperbolic_count: pairs,
        residue,
        witness,
    })
}

// Basis (f, e) of an anisotropic plane with Q(e) = 1, B(f, e) = 1, Q(f) = alpha.
fn norm_basis(q: &QuadForm, plane: &Mat) -> Result<Mat> {
    let f = q.field().clone();
    if plane.rows() != 2 {
        return Err(Error::Internal(format!(
            "anisotropic residue of dimension {}",
            plane.rows()
        )));
    }
    let (a, b0) = (plane.row(0), plane.row(1));
    let beta = q.bilinear(a, b0);
    let b: Vec<Scalar> = b0
        .iter()
        .map(|&x| f.div(x, beta).expect("non-degenerate plane"))
        .collect();
    let r = f.sqrt(q.eval(a));
    let rinv = f.inv(r)?;
    let e: Vec<Scalar> = a.iter().map(|&x| f.mul(x, rinv)).collect();
    let fv: Vec<Scalar> = b.iter().map(|&x| f.mul(x, r)).collect();
    let c = q.eval(&fv);
    let (t, _) = f.artin_schreier_solve(c + f.alpha()).ok_or_else(|| {
        Error::Internal("anisotropic plane with Arf class in the Artin-Schreier image".into())
    })?;
    let fv = combine(&f, Scalar::ONE, &fv, t, &e);
    Mat::from_rows(&f, &[fv, e], q.dim())
}

/// `rank(g - 1) mod 2` for an isometry `g`.
pub fn dickson(g: &Mat, q: &QuadForm) -> Result<u8> {
    q.check_isometry(g)?;
    let id = Mat::identity(q.field(), q.dim());
    Ok((g.add(&id)?.rank() % 2) as u8)
}

/// `dim(W / (W n Wg)) mod 2` for a Lagrangian `W = W^perp` spanned by the
/// rows of `w`.
pub fn dickson_lagrangian(g: &Mat, q: &QuadForm, w: &Mat) -> Result<u8> {
    q.check_isometry(g)?;
    let n = q.dim();
    if !q.is_nondegenerate() {
        return Err(Error::Precondition("form is degenerate".into()));
    }
    if w.cols() != n || w.rank() != w.rows() || 2 * w.rows() != n {
        return Err(Error::Precondition(
            "rows do not span a half-dimensional subspace".into(),
        ));
    }
    if !q.restrict(w)?.upper().is_zero() {
        return Err(Error::Precondition(
            "subspace is not totally isotropic".into(),
        ));
    }
    let wg = w.mul(g)?;
    let k = w.vstack(&wg)?.rank() - w.rows();
    Ok((k % 2) as u8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn all_vectors(f: &FieldSpec, n: usize) -> impl Iterator<Item = Vec<Scalar>> + '_ {
        let q = f.size();
        (0..q.pow(n as u32)).map(move |mut idx| {
            (0..n)
                .map(|_| {
                    let s = Scalar((idx % q) as u16);
                    idx /= q;
                    s
                })
                .collect()
        })
    }

    fn exhaustive_isotropic(q: &QuadForm) -> bool {
        all_vectors(q.field(), q.dim())
            .skip(1)
            .any(|v| q.eval(&v).is_zero())
    }

    #[test]
    fn polarization_examples() {
        let f = FieldSpec::gf(1);
        let n = norm_form(&f);
        assert_eq!(n.upper(), &Mat::from_bits(&f, &[&[1, 1], &[0, 1]]));
        assert_eq!(n.polarize(), Mat::from_bits(&f, &[&[0, 1], &[1, 0]]));
        assert_eq!(QuadForm::hyperbolic_plane(&f).polarize(), n.polarize());
        let d = QuadForm::new(Mat::from_bits(&f, &[&[1, 0], &[0, 1]])).unwrap();
        assert!(d.polarize().is_zero());
        for v in [[1, 0], [0, 1], [1, 1]] {
            let v: Vec<Scalar> = v.iter().map(|&b| Scalar(b)).collect();
            assert_eq!(n.eval(&v), Scalar::ONE);
        }
        let f4 = FieldSpec::gf(2);
        assert_eq!(
            norm_form(&f4).upper(),
            &Mat::from_bits(&f4, &[&[2, 1], &[0, 1]])
        );
    }

    #[test]
    fn radical_examples() {
        let f = FieldSpec::gf(1);
        assert_eq!(norm_form(&f).radical().rows(), 0);
        let line = QuadForm::new(Mat::from_bits(&f, &[&[1]])).unwrap();
        assert_eq!(line.radical().rows(), 1);
        let s = norm_form(&f).orth_sum(&line).unwrap();
        assert_eq!(s.radical(), Mat::from_bits(&f, &[&[0, 0, 1]]));
    }

    #[test]
    fn norm_form_is_anisotropic() {
        for e in 1..=4 {
            let f = FieldSpec::gf(e);
            assert!(!exhaustive_isotropic(&norm_form(&f)));
        }
    }

    #[test]
    fn symplectic_basis_examples() {
        let f = FieldSpec::gf(1);
        let std2 = Mat::from_bits(&f, &[&[0, 1], &[1, 0]]);
        assert_eq!(symplectic_basis(&std2).unwrap(), Mat::identity(&f, 2));
        let anti = Mat::from_bits(
            &f,
            &[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]],
        );
        let sb = symplectic_basis(&anti).unwrap();
        assert_eq!(
            sb,
            Mat::from_bits(
                &f,
                &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]
            )
        );
        let gram = sb.mul(&anti).unwrap().mul(&sb.transpose()).unwrap();
        assert_eq!(
            gram,
            Mat::from_bits(
                &f,
                &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]]
            )
        );
        assert!(symplectic_basis(&Mat::zeros(&f, 3, 3)).is_err());
    }

    #[test]
    fn witt_examples() {
        for e in 1..=3 {
            let f = FieldSpec::gf(e);
            let h = QuadForm::hyperbolic_plane(&f);
            let split = witt_decompose(&h).unwrap();
            assert_eq!((split.hyperbolic_count, split.residue), (1, Residue::Zero));
            let n = norm_form(&f);
            let split = witt_decompose(&n).unwrap();
            assert_eq!(
                (split.hyperbolic_count, split.residue),
                (0, Residue::NormForm)
            );
            let nn = n.orth_sum(&n).unwrap();
            let split = witt_decompose(&nn).unwrap();
            assert_eq!((split.hyperbolic_count, split.residue), (2, Residue::Zero));
            // the witness puts the form into standard shape
            let std = h.orth_sum(&h).unwrap();
            assert_eq!(nn.restrict(&split.witness).unwrap(), std);
        }
    }

    #[test]
    fn witness_of_nonsplit_form_is_standard() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for e in 1..=3 {
            let f = FieldSpec::gf(e);
            for _ in 0..50 {
                let n = 2 * rng.gen_range(1..4);
                let q = QuadForm::from_matrix(&Mat::random(&f, n, n, &mut rng));
                if !q.is_nondegenerate() {
                    continue;
                }
                let split = witt_decompose(&q).unwrap();
                let mut want = QuadForm::zero(&f, 0);
                for _ in 0..split.hyperbolic_count {
                    want = want.orth_sum(&QuadForm::hyperbolic_plane(&f)).unwrap();
                }
                if split.residue == Residue::NormForm {
                    want = want.orth_sum(&norm_form(&f)).unwrap();
                }
                assert_eq!(q.restrict(&split.witness).unwrap(), want);
            }
        }
    }

    #[test]
    fn isotropic_finder_matches_exhaustive_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for e in 1..=2 {
            let f = FieldSpec::gf(e);
            for _ in 0..300 {
                let n = rng.gen_range(1..5);
                let q = QuadForm::from_matrix(&Mat::random(&f, n, n, &mut rng));
                let found = find_isotropic_vector(&q).unwrap();
                if let Some(v) = &found {
                    assert!(v.iter().any(|s| !s.is_zero()));
                    assert!(q.eval(v).is_zero());
                }
                assert_eq!(found.is_some(), exhaustive_isotropic(&q));
            }
        }
    }

    #[test]
    fn every_four_dim_form_is_isotropic() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for e in 1..=3 {
            let f = FieldSpec::gf(e);
            for _ in 0..40 {
                let q = QuadForm::from_matrix(&Mat::random(&f, 4, 4, &mut rng));
                if q.is_nondegenerate() {
                    assert!(exhaustive_isotropic(&q));
                }
            }
        }
    }

    #[test]
    fn dickson_examples() {
        let f = FieldSpec::gf(1);
        let h = QuadForm::hyperbolic_plane(&f);
        assert_eq!(dickson(&Mat::identity(&f, 2), &h).unwrap(), 0);
        let swap = Mat::from_bits(&f, &[&[0, 1], &[1, 0]]);
        assert_eq!(dickson(&swap, &h).unwrap(), 1);
        // f -> f + e on the plane (f, e) with Q(f) = 0, Q(e) = 1
        let r = QuadForm::new(Mat::from_bits(&f, &[&[0, 1], &[0, 1]])).unwrap();
        let hm = Mat::from_bits(&f, &[&[1, 1], &[0, 1]]);
        assert_eq!(dickson(&hm, &r).unwrap(), 1);
        let w = Mat::from_bits(&f, &[&[1, 0]]);
        assert_eq!(dickson_lagrangian(&hm, &r, &w).unwrap(), 1);
        assert_eq!(
            dickson_lagrangian(&Mat::identity(&f, 2), &r, &w).unwrap(),
            0
        );
        let bad = Mat::from_bits(&f, &[&[1, 0], &[1, 1]]);
        assert!(matches!(dickson(&bad, &r), Err(Error::NotIsometry { .. })));
    }
}
