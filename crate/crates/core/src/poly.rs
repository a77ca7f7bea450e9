//! Univariate polynomials over `GF(2^e)` and their factorization.
//!
//! Only what the Meataxe needs: characteristic polynomials are split into
//! their distinct monic irreducible factors (square-free decomposition,
//! distinct-degree splitting, then Cantor-Zassenhaus with the trace map).

use rand::Rng;

use crate::gfield::{FieldSpec, Scalar};

/// Coefficients from the constant term upward, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly(pub Vec<Scalar>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn one() -> Poly {
        Poly(vec![Scalar::ONE])
    }

    pub fn x() -> Poly {
        Poly(vec![Scalar::ZERO, Scalar::ONE])
    }

    pub fn from_coeffs(mut c: Vec<Scalar>) -> Poly {
        while c.last().is_some_and(|s| s.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0] == Scalar::ONE
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn lead(&self) -> Scalar {
        self.0.last().copied().unwrap_or(Scalar::ZERO)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let mut c = vec![Scalar::ZERO; n];
        for (i, &a) in self.0.iter().enumerate() {
            c[i] += a;
        }
        for (i, &b) in other.0.iter().enumerate() {
            c[i] += b;
        }
        Poly::from_coeffs(c)
    }

    pub fn mul(&self, other: &Poly, f: &FieldSpec) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Scalar::ZERO; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                c[i + j] += f.mul(a, b);
            }
        }
        Poly::from_coeffs(c)
    }

    pub fn scale(&self, s: Scalar, f: &FieldSpec) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|&a| f.mul(a, s)).collect())
    }

    pub fn monic(&self, f: &FieldSpec) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = f.inv(self.lead()).expect("nonzero leading coefficient");
        self.scale(inv, f)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Poly, f: &FieldSpec) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.0.clone();
        let dd = d.0.len() - 1;
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let inv = f.inv(d.lead()).expect("nonzero leading coefficient");
        let mut q = vec![Scalar::ZERO; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(r[k + dd], inv);
            if c.is_zero() {
                continue;
            }
            q[k] = c;
            for (j, &b) in d.0.iter().enumerate() {
                r[k + j] += f.mul(c, b);
            }
        }
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    pub fn rem(&self, d: &Poly, f: &FieldSpec) -> Poly {
        self.divrem(d, f).1
    }

    pub fn gcd(&self, other: &Poly, f: &FieldSpec) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self) -> Poly {
        // char 2: only odd powers survive
        let c = self
            .0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| if i % 2 == 1 { a } else { Scalar::ZERO })
            .collect();
        Poly::from_coeffs(c)
    }

    pub fn eval(&self, x: Scalar, f: &FieldSpec) -> Scalar {
        self.0
            .iter()
            .rev()
            .fold(Scalar::ZERO, |acc, &c| f.mul(acc, x) + c)
    }

    fn square_mod(&self, m: &Poly, f: &FieldSpec) -> Poly {
        self.mul(self, f).rem(m, f)
    }

    // p(x) = q(x)^2 with p' = 0
    fn sqrt_poly(&self, f: &FieldSpec) -> Poly {
        Poly::from_coeffs(self.0.iter().step_by(2).map(|&a| f.sqrt(a)).collect())
    }
}

fn squarefree_decomposition(p: &Poly, f: &FieldSpec) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if p.degree() < 1 {
        return out;
    }
    let d = p.derivative();
    if d.is_zero() {
        for (q, m) in squarefree_decomposition(&p.sqrt_poly(f), f) {
            out.push((q, 2 * m));
        }
        return out;
    }
    let mut c = p.gcd(&d, f);
    let mut w = p.divrem(&c, f).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c, f);
        let fac = w.divrem(&y, f).0;
        if fac.degree() > 0 {
            out.push((fac.monic(f), i));
        }
        w = y;
        c = c.divrem(&w, f).0;
        i += 1;
    }
    if c.degree() > 0 {
        for (q, m) in squarefree_decomposition(&c.sqrt_poly(f), f) {
            out.push((q, 2 * m));
        }
    }
    out
}

fn distinct_degree(p: &Poly, f: &FieldSpec) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut rest = p.clone();
    let mut h = Poly::x();
    let mut d = 1usize;
    let e = f.degree();
    while rest.degree() >= 2 * d as isize {
        for _ in 0..e {
            h = h.square_mod(&rest, f);
        }
        let g = rest.gcd(&h.add(&Poly::x()), f);
        if g.degree() > 0 {
            rest = rest.divrem(&g, f).0;
            h = h.rem(&rest, f);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.degree() > 0 {
        let deg = rest.degree() as usize;
        out.push((rest.monic(f), deg));
    }
    out
}

fn equal_degree<R: Rng + ?Sized>(
    p: &Poly,
    d: usize,
    f: &FieldSpec,
    rng: &mut R,
    out: &mut Vec<Poly>,
) {
    if p.degree() as usize == d {
        out.push(p.monic(f));
        return;
    }
    let n = p.degree() as usize;
    let steps = f.degree() as usize * d;
    loop {
        let a = Poly::from_coeffs((0..n).map(|_| f.random(rng)).collect());
        if a.degree() < 1 {
            continue;
        }
        // trace map a + a^2 + ... + a^(2^(ed-1)) mod p
        let mut t = a.rem(p, f);
        let mut acc = t.clone();
        for _ in 1..steps {
            t = t.square_mod(p, f);
            acc = acc.add(&t);
        }
        let g = p.gcd(&acc, f);
        if g.degree() > 0 && g.degree() < p.degree() {
            let h = p.divrem(&g, f).0;
            equal_degree(&g, d, f, rng, out);
            equal_degree(&h, d, f, rng, out);
            return;
        }
    }
}

/// Distinct monic irreducible factors with multiplicities, sorted by degree
/// then coefficients.
pub fn factor<R: Rng + ?Sized>(p: &Poly, f: &FieldSpec, rng: &mut R) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if p.degree() < 1 {
        return out;
    }
    let p = p.monic(f);
    for (sq, mult) in squarefree_decomposition(&p, f) {
        for (g, d) in distinct_degree(&sq, f) {
            let mut parts = Vec::new();
            equal_degree(&g, d, f, rng, &mut parts);
            out.extend(parts.into_iter().map(|q| (q, mult)));
        }
    }
    out.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.cmp(&b.0)));
    out
}
