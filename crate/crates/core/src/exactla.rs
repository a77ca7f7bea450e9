//! Dense matrices over `GF(2^e)`.
//!
//! Row-vector convention throughout: a vector `v` is acted on as `v * m`,
//! so kernels are left kernels and subspaces are row spaces. Subspace bases
//! are kept in reduced row echelon form, which makes equality of subspaces
//! plain equality of matrices.

use std::fmt;
use std::ops::{Index, IndexMut};

use rand::Rng;

use crate::error::{Error, Result};
use crate::gfield::{FieldSpec, Scalar};
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
    field: FieldSpec,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Scalar;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Mat {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![Scalar::ZERO; rows * cols],
            field: field.clone(),
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::ONE;
        }
        m
    }

    pub fn from_vec(field: &FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat {
            rows,
            cols,
            data,
            field: field.clone(),
        })
    }

    pub fn from_rows(field: &FieldSpec, rows: &[Vec<Scalar>], cols: usize) -> Result<Mat> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Shape(format!(
                    "row of length {} where {cols} expected",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(Mat {
            rows: rows.len(),
            cols,
            data,
            field: field.clone(),
        })
    }

    /// Builds a matrix from integer bit patterns; panics on bad input. Meant for
    /// literals in tests and constructions.
    pub fn from_bits(field: &FieldSpec, rows: &[&[u32]]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols);
                r.iter().map(|&b| field.scalar(b).expect("scalar in range"))
            })
            .collect();
        Mat {
            rows: rows.len(),
            cols,
            data,
            field: field.clone(),
        }
    }

    pub fn row_vector(field: &FieldSpec, v: &[Scalar]) -> Mat {
        Mat {
            rows: 1,
            cols: v.len(),
            data: v.to_vec(),
            field: field.clone(),
        }
    }

    pub fn random<R: Rng + ?Sized>(
        field: &FieldSpec,
        rows: usize,
        cols: usize,
        rng: &mut R,
    ) -> Mat {
        let data = (0..rows * cols).map(|_| field.random(rng)).collect();
        Mat {
            rows,
            cols,
            data,
            field: field.clone(),
        }
    }

    pub fn random_invertible<R: Rng + ?Sized>(field: &FieldSpec, n: usize, rng: &mut R) -> Mat {
        loop {
            let m = Mat::random(field, n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Scalar] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols)
                    .all(|j| self[(i, j)] == if i == j { Scalar::ONE } else { Scalar::ZERO })
            })
    }

    fn check_field(&self, other: &Mat) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a + b)
            .collect();
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data,
            field: self.field.clone(),
        })
    }

    pub fn scale(&self, s: Scalar) -> Mat {
        let data = self.data.iter().map(|&a| self.field.mul(a, s)).collect();
        Mat {
            rows: self.rows,
            cols: self.cols,
            data,
            field: self.field.clone(),
        }
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d += f.mul(a, b);
                }
            }
        }
        Ok(out)
    }

    /// `v * self` for a row vector `v`.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(v.len(), self.rows);
        let f = &self.field;
        let mut out = vec![Scalar::ZERO; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (d, &b) in out.iter_mut().zip(self.row(k)) {
                *d += f.mul(a, b);
            }
        }
        out
    }

    /// Bilinear evaluation `u * self * w^T`.
    pub fn bilinear(&self, u: &[Scalar], w: &[Scalar]) -> Scalar {
        let uv = self.apply(u);
        dot(&self.field, &uv, w)
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Mat {
        let mut m = Mat::zeros(&self.field, rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                m[(i, j)] = self[(r, c)];
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Mat {
            rows: idx.len(),
            cols: self.cols,
            data,
            field: self.field.clone(),
        }
    }

    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        self.check_field(other)?;
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(Error::Shape("vstack with different column counts".into()));
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat {
            rows: self.rows + other.rows,
            cols,
            data,
            field: self.field.clone(),
        })
    }

    pub fn block_diag(&self, other: &Mat) -> Result<Mat> {
        self.check_field(other)?;
        let mut m = Mat::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = self[(r, c)];
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m[(self.rows + r, self.cols + c)] = other[(r, c)];
            }
        }
        Ok(m)
    }

    /// In-place Gauss-Jordan; returns pivot columns. Zero rows end up at the
    /// bottom.
    fn eliminate(&mut self, limit_cols: usize) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit_cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self[(r, c)]).expect("pivot is nonzero");
            for j in 0..self.cols {
                self[(r, j)] = f.mul(self[(r, j)], inv);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self[(i, c)];
                if factor.is_zero() {
                    continue;
                }
                for j in 0..self.cols {
                    let v = f.mul(factor, self[(r, j)]);
                    self[(i, j)] += v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form with zero rows dropped, and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.eliminate(self.cols);
        let k = pivots.len();
        m.data.truncate(k * m.cols);
        m.rows = k;
        (m, pivots)
    }

    /// Row space basis in reduced echelon form.
    pub fn row_space(&self) -> Mat {
        self.rref().0
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_rref(&self) -> bool {
        let (r, _) = self.rref();
        r == *self
    }

    /// Rank and a basis (reduced echelon) of the left kernel `{v : v m = 0}`.
    pub fn rank_kernel(&self) -> (usize, Mat) {
        let n = self.rows;
        let mut aug = Mat::zeros(&self.field, n, self.cols + n);
        for r in 0..n {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)];
            }
            aug[(r, self.cols + r)] = Scalar::ONE;
        }
        let pivots = aug.eliminate(self.cols);
        let rank = pivots.len();
        let kernel = aug.submatrix(rank..n, self.cols..self.cols + n);
        (rank, kernel.row_space())
    }

    pub fn left_kernel(&self) -> Mat {
        self.rank_kernel().1
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Mat::zeros(&self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)];
            }
            aug[(r, n + r)] = Scalar::ONE;
        }
        let pivots = aug.eliminate(n);
        if pivots.len() < n {
            return Err(Error::Precondition("matrix is singular".into()));
        }
        Ok(aug.submatrix(0..n, n..2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Characteristic polynomial via reduction to Hessenberg form.
    pub fn charpoly(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::Shape(
                "characteristic polynomial of a non-square matrix".into(),
            ));
        }
        let f = self.field.clone();
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h[(i, m - 1)].is_zero()) else {
                continue;
            };
            if i != m {
                for j in 0..n {
                    h.data.swap(i * n + j, m * n + j);
                }
                for j in 0..n {
                    h.data.swap(j * n + i, j * n + m);
                }
            }
            let t = f.inv(h[(m, m - 1)]).expect("nonzero pivot");
            for i in m + 1..n {
                let u = f.mul(h[(i, m - 1)], t);
                if u.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = f.mul(u, h[(m, j)]);
                    h[(i, j)] += v;
                }
                for j in 0..n {
                    let v = f.mul(u, h[(j, i)]);
                    h[(j, m)] += v;
                }
            }
        }
        let mut ps: Vec<Poly> = vec![Poly::one()];
        for m in 0..n {
            let lin = Poly::from_coeffs(vec![h[(m, m)], Scalar::ONE]);
            let mut pm = lin.mul(&ps[m], &f);
            let mut t = Scalar::ONE;
            for i in 1..=m {
                t = f.mul(t, h[(m - i + 1, m - i)]);
                let c = f.mul(t, h[(m - i, m)]);
                if !c.is_zero() {
                    pm = pm.add(&ps[m - i].scale(c, &f));
                }
            }
            ps.push(pm);
        }
        Ok(ps.pop().expect("at least the constant polynomial"))
    }

    /// `p(self)` by Horner's rule.
    pub fn eval_poly(&self, p: &Poly) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::Shape("polynomial of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut acc = Mat::zeros(&self.field, n, n);
        for &c in p.0.iter().rev() {
            acc = acc.mul(self)?;
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        Ok(acc)
    }

    /// One solution `X` of `X * self = rhs`, or `None` when inconsistent.
    pub fn solve_left(&self, rhs: &Mat) -> Result<Option<Mat>> {
        solve_linear(self, rhs)
    }

    /// Bit patterns, row-major; used for canonical keys and serialization.
    pub fn to_bits(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|s| s.0 as u32).collect())
            .collect()
    }
}

pub fn dot(f: &FieldSpec, a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .fold(Scalar::ZERO, |acc, (&x, &y)| acc + f.mul(x, y))
}

/// Rank and left kernel.
pub fn rank_kernel(m: &Mat) -> (usize, Mat) {
    m.rank_kernel()
}

/// One `X` with `X * coeffs = rhs`, pivoting on the first nonzero column;
/// `None` if the system is inconsistent.
pub fn solve_linear(coeffs: &Mat, rhs: &Mat) -> Result<Option<Mat>> {
    coeffs.check_field(rhs)?;
    if coeffs.cols != rhs.cols {
        return Err(Error::Shape(format!(
            "coefficients have {} columns, right-hand side {}",
            coeffs.cols, rhs.cols
        )));
    }
    let f = coeffs.field.clone();
    let n = coeffs.rows;
    let mut aug = Mat::zeros(&f, n, coeffs.cols + n);
    for r in 0..n {
        for c in 0..coeffs.cols {
            aug[(r, c)] = coeffs[(r, c)];
        }
        aug[(r, coeffs.cols + r)] = Scalar::ONE;
    }
    let pivots = aug.eliminate(coeffs.cols);
    let mut x = Mat::zeros(&f, rhs.rows, n);
    for r in 0..rhs.rows {
        let mut b = rhs.row(r).to_vec();
        let mut sol = vec![Scalar::ZERO; n];
        for (pi, &pc) in pivots.iter().enumerate() {
            let c = b[pc];
            if c.is_zero() {
                continue;
            }
            for j in 0..coeffs.cols {
                b[j] += f.mul(c, aug[(pi, j)]);
            }
            for j in 0..n {
                sol[j] += f.mul(c, aug[(pi, coeffs.cols + j)]);
            }
        }
        if b.iter().any(|s| !s.is_zero()) {
            return Ok(None);
        }
        x.row_mut(r).copy_from_slice(&sol);
    }
    Ok(Some(x))
}

/// Incrementally grown semi-echelon basis of a subspace.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: FieldSpec,
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(field: &FieldSpec, dim: usize) -> EchelonBasis {
        EchelonBasis {
            field: field.clone(),
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn reduce(&self, v: &mut [Scalar]) {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c.is_zero() {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                *x += f.mul(c, y);
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|s| s.is_zero())
    }

    /// Adds `v` if it is not in the span; returns whether it was added.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|s| !s.is_zero()) else {
            return false;
        };
        let inv = self.field.inv(w[p]).expect("nonzero");
        for x in w.iter_mut() {
            *x = self.field.mul(*x, inv);
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    pub fn to_mat(&self) -> Mat {
        Mat::from_rows(&self.field, &self.rows, self.dim)
            .expect("rows have the basis dimension")
            .row_space()
    }
}

/// Smallest subspace containing the seed rows and stable under every action
/// matrix, as a reduced echelon basis.
pub fn spin(seeds: &Mat, action: &[Mat]) -> Result<Mat> {
    let n = seeds.cols;
    for g in action {
        if g.rows != n || g.cols != n {
            return Err(Error::Shape(format!(
                "action matrix {}x{} on dimension {n}",
                g.rows, g.cols
            )));
        }
        seeds.check_field(g)?;
    }
    let mut basis = EchelonBasis::new(&seeds.field, n);
    let mut queue: Vec<Vec<Scalar>> = Vec::new();
    for r in 0..seeds.rows {
        if basis.insert(seeds.row(r)) {
            queue.push(seeds.row(r).to_vec());
        }
    }
    let mut i = 0;
    while i < queue.len() && basis.len() < n {
        let v = queue[i].clone();
        for g in action {
            let w = g.apply(&v);
            if basis.insert(&w) {
                queue.push(w);
            }
        }
        i += 1;
    }
    Ok(basis.to_mat())
}

/// Complement and projection for the quotient of `K^ambient_dim` by the row
/// space of `sub`, which must be in reduced echelon form.
///
/// `lift` rows are coset representatives (unit vectors at the non-pivot
/// columns); `project` maps ambient row vectors to quotient coordinates and
/// satisfies `lift * project = I`.
pub fn quotient_basis(sub: &Mat, ambient_dim: usize) -> Result<(Mat, Mat)> {
    if sub.rows > 0 && sub.cols != ambient_dim {
        return Err(Error::Shape(format!(
            "subspace in dimension {} vs ambient {ambient_dim}",
            sub.cols
        )));
    }
    let f = sub.field.clone();
    let (r, pivots) = sub.rref();
    if r != *sub {
        return Err(Error::Precondition(
            "subspace basis is not in reduced echelon form".into(),
        ));
    }
    let free: Vec<usize> = (0..ambient_dim).filter(|c| !pivots.contains(c)).collect();
    let q = free.len();
    let mut lift = Mat::zeros(&f, q, ambient_dim);
    let mut project = Mat::zeros(&f, ambient_dim, q);
    for (jj, &j) in free.iter().enumerate() {
        lift[(jj, j)] = Scalar::ONE;
        project[(j, jj)] = Scalar::ONE;
        for (ri, &p) in pivots.iter().enumerate() {
            // char 2: -sub = sub
            project[(p, jj)] = sub[(ri, j)];
        }
    }
    Ok((lift, project))
}

/// Dimension of the intersection of two row spaces.
pub fn intersection_dim(a: &Mat, b: &Mat) -> Result<usize> {
    let ra = a.rank();
    let rb = b.rank();
    let rs = a.vstack(b)?.rank();
    Ok(ra + rb - rs)
}

/// Basis (reduced echelon) of the intersection of two row spaces.
pub fn intersection(a: &Mat, b: &Mat) -> Result<Mat> {
    let a = a.row_space();
    let b = b.row_space();
    let stacked = a.vstack(&b)?;
    let ker = stacked.left_kernel();
    let ka = ker.submatrix(0..ker.rows, 0..a.rows);
    Ok(ka.mul(&a)?.row_space())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_and_zero_kernels() {
        let f = FieldSpec::gf(1);
        let (r, k) = Mat::identity(&f, 3).rank_kernel();
        assert_eq!((r, k.rows()), (3, 0));
        let (r, k) = Mat::zeros(&f, 2, 2).rank_kernel();
        assert_eq!(r, 0);
        assert_eq!(k, Mat::identity(&f, 2));
        let (r, k) = Mat::from_bits(&f, &[&[1, 1], &[1, 1]]).rank_kernel();
        assert_eq!(r, 1);
        assert_eq!(k, Mat::from_bits(&f, &[&[1, 1]]));
    }

    #[test]
    fn solve_examples() {
        let f = FieldSpec::gf(2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let rhs = Mat::random(&f, 2, 3, &mut rng);
        assert_eq!(
            solve_linear(&Mat::identity(&f, 3), &rhs).unwrap().unwrap(),
            rhs
        );

        let coeffs = Mat::from_bits(&f, &[&[1, 0], &[1, 0]]);
        let bad = Mat::from_bits(&f, &[&[0, 1]]);
        assert!(solve_linear(&coeffs, &bad).unwrap().is_none());

        let c = Mat::random_invertible(&f, 4, &mut rng);
        let ones = Mat::from_bits(&f, &[&[1, 1, 1, 1]]);
        let x = solve_linear(&c, &ones).unwrap().unwrap();
        assert_eq!(x.mul(&c).unwrap(), ones);

        assert!(matches!(
            solve_linear(&c, &Mat::zeros(&f, 1, 3)),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn spin_examples() {
        let f = FieldSpec::gf(1);
        let swap = Mat::from_bits(&f, &[&[0, 1], &[1, 0]]);
        let seed = Mat::from_bits(&f, &[&[1, 0]]);
        assert_eq!(spin(&seed, std::slice::from_ref(&swap)).unwrap(), Mat::identity(&f, 2));
        let id = Mat::identity(&f, 2);
        assert_eq!(spin(&seed, std::slice::from_ref(&id)).unwrap(), seed);
        assert_eq!(spin(&Mat::identity(&f, 2), &[swap]).unwrap(), id);
        assert!(spin(&seed, &[Mat::identity(&f, 3)]).is_err());
    }

    #[test]
    fn quotient_examples() {
        let f = FieldSpec::gf(1);
        let empty = Mat::zeros(&f, 0, 3);
        let (lift, project) = quotient_basis(&empty, 3).unwrap();
        assert_eq!(lift, Mat::identity(&f, 3));
        assert_eq!(project, Mat::identity(&f, 3));

        let (lift, _) = quotient_basis(&Mat::identity(&f, 3), 3).unwrap();
        assert_eq!(lift.rows(), 0);

        let sub = Mat::from_bits(&f, &[&[1, 1]]);
        let (lift, project) = quotient_basis(&sub, 2).unwrap();
        assert_eq!(lift.rows(), 1);
        assert_eq!(lift.mul(&project).unwrap(), Mat::identity(&f, 1));
        // the subspace itself projects to zero
        assert!(sub.mul(&project).unwrap().is_zero());

        let not_rref = Mat::from_bits(&f, &[&[0, 1], &[1, 0]]);
        assert!(quotient_basis(&not_rref, 2).is_err());
    }

    fn det(m: &Mat) -> Scalar {
        let f = m.field().clone();
        let mut a = m.clone();
        let n = a.rows();
        let mut d = Scalar::ONE;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
                return Scalar::ZERO;
            };
            if p != c {
                for j in 0..n {
                    let t = a[(p, j)];
                    a[(p, j)] = a[(c, j)];
                    a[(c, j)] = t;
                }
            }
            let piv = a[(c, c)];
            d = f.mul(d, piv);
            let inv = f.inv(piv).unwrap();
            for i in c + 1..n {
                let u = f.mul(a[(i, c)], inv);
                for j in 0..n {
                    let v = f.mul(u, a[(c, j)]);
                    a[(i, j)] += v;
                }
            }
        }
        d
    }

    #[test]
    fn charpoly_matches_determinant_evaluation() {
        // over GF(2^8) a degree <= 8 polynomial is pinned down by its values
        let f = FieldSpec::gf(8);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in 1..=7 {
            for _ in 0..5 {
                let mut m = Mat::random(&f, n, n, &mut rng);
                // sparse entries exercise the zero-pivot branches
                for i in 0..n {
                    for j in 0..n {
                        if rng.gen_bool(0.4) {
                            m[(i, j)] = Scalar::ZERO;
                        }
                    }
                }
                let p = m.charpoly().unwrap();
                assert_eq!(p.degree(), n as isize);
                for lam in f.elements().step_by(17) {
                    let mut shifted = m.clone();
                    for i in 0..n {
                        shifted[(i, i)] += lam;
                    }
                    assert_eq!(p.eval(lam, &f), det(&shifted));
                }
                assert!(m.eval_poly(&p).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn intersections() {
        let f = FieldSpec::gf(1);
        let a = Mat::from_bits(&f, &[&[1, 0, 0], &[0, 1, 0]]);
        let b = Mat::from_bits(&f, &[&[0, 1, 1], &[0, 1, 0]]);
        assert_eq!(intersection_dim(&a, &b).unwrap(), 1);
        assert_eq!(
            intersection(&a, &b).unwrap(),
            Mat::from_bits(&f, &[&[0, 1, 0]])
        );
    }

    #[test]
    fn inverse_roundtrip() {
        let f = FieldSpec::gf(3);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = Mat::random_invertible(&f, 5, &mut rng);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(Mat::zeros(&f, 2, 2).inverse().is_err());
    }
}
