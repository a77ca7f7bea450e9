//! Arithmetic in `GF(2^e)`.
//!
//! Elements are bit patterns of polynomial residues modulo a fixed
//! irreducible modulus, little-endian: bit `i` is the coefficient of `X^i`.
//! Multiplication goes through log/exp tables built once per field.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 16;

/// An element of `GF(2^e)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[repr(transparent)]
pub struct Scalar(pub u16);

impl Scalar {
    pub const ZERO: Scalar = Scalar(0);
    pub const ONE: Scalar = Scalar(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn bits(self) -> u16 {
        self.0
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

// addition in characteristic 2 is xor
#[allow(clippy::suspicious_arithmetic_impl)]
impl std::ops::Add for Scalar {
    type Output = Scalar;
    #[inline]
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl std::ops::AddAssign for Scalar {
    #[inline]
    fn add_assign(&mut self, rhs: Scalar) {
        self.0 ^= rhs.0;
    }
}

struct Tables {
    e: u32,
    modulus: u32,
    alpha: Scalar,
    log: Vec<u32>,
    // doubled so that exp[log a + log b] never needs a reduction
    exp: Vec<u16>,
    trace_mask: u16,
    // echelonized images of x -> x^2 + x, with the preimage combination
    wp_basis: Vec<(u16, u16)>,
}

/// The field `K = GF(2^e)` together with a distinguished `alpha` of trace 1.
#[derive(Clone)]
pub struct FieldSpec(Arc<Tables>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.e == other.0.e && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}; modulus {:#b})", self.0.e, self.0.modulus)
    }
}

fn poly_degree(p: u32) -> i32 {
    31 - p.leading_zeros() as i32
}

fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = poly_degree(b);
    while a != 0 && poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

/// Irreducibility over F2 by trial division with every polynomial of degree
/// at most half the degree.
pub fn is_irreducible_f2(p: u32) -> bool {
    let d = poly_degree(p);
    if d < 1 {
        return false;
    }
    for q in 2u32..(1u32 << (d / 2 + 1)) {
        let dq = poly_degree(q);
        if dq >= 1 && dq <= d / 2 && poly_rem(p, q) == 0 {
            return false;
        }
    }
    true
}

fn slow_mul(a: u32, b: u32, modulus: u32, e: u32) -> u32 {
    let mut acc = 0u32;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 != 0 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & (1 << e) != 0 {
            a ^= modulus;
        }
    }
    acc
}

impl FieldSpec {
    /// Builds `GF(2^e)`. Without a modulus the lexicographically smallest
    /// irreducible monic polynomial of degree `e` is used.
    pub fn new(e: u32, modulus_bits: Option<u32>) -> Result<FieldSpec> {
        if e == 0 {
            return Err(Error::Field("extension degree must be at least 1".into()));
        }
        if e > MAX_DEGREE {
            return Err(Error::Field(format!(
                "extension degree {e} exceeds cap {MAX_DEGREE}"
            )));
        }
        let modulus = match modulus_bits {
            Some(m) => {
                if poly_degree(m) != e as i32 {
                    return Err(Error::Field(format!(
                        "modulus {m:#b} has degree {} but e = {e}",
                        poly_degree(m)
                    )));
                }
                if !is_irreducible_f2(m) {
                    return Err(Error::Field(format!("modulus {m:#b} is reducible over F2")));
                }
                m
            }
            None => ((1u32 << e)..(1u32 << (e + 1)))
                .find(|&m| is_irreducible_f2(m))
                .expect("irreducible polynomials exist in every degree"),
        };
        let size = 1usize << e;
        let order = (size - 1) as u32;

        // primitive element
        let mut log = vec![0u32; size];
        let mut exp = vec![0u16; 2 * size];
        let mut found = false;
        for g in 1..size as u32 {
            let mut x = 1u32;
            let mut ok = true;
            for k in 0..order {
                exp[k as usize] = x as u16;
                if k > 0 && x == 1 {
                    ok = false;
                    break;
                }
                x = slow_mul(x, g, modulus, e);
            }
            if ok && x == 1 {
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::Internal("no primitive element found".into()));
        }
        for k in 0..order as usize {
            log[exp[k] as usize] = k as u32;
        }
        for k in order as usize..2 * size {
            exp[k] = exp[k % order as usize];
        }

        let mut tables = Tables {
            e,
            modulus,
            alpha: Scalar::ZERO,
            log,
            exp,
            trace_mask: 0,
            wp_basis: Vec::new(),
        };

        // trace is F2-linear; record the trace of each X^i
        let mut mask = 0u16;
        for i in 0..e {
            let x = 1u32 << i;
            let mut t = 0u32;
            let mut p = x;
            for _ in 0..e {
                t ^= p;
                p = slow_mul(p, p, modulus, e);
            }
            debug_assert!(t <= 1);
            if t == 1 {
                mask |= 1 << i;
            }
        }
        tables.trace_mask = mask;
        tables.alpha = Scalar(
            (0..size as u32)
                .find(|&a| (a as u16 & mask).count_ones() % 2 == 1)
                .expect("trace is surjective") as u16,
        );

        // echelon basis for the image of x -> x^2 + x
        let mut basis: Vec<(u16, u16)> = Vec::new();
        for i in 0..e {
            let x = 1u32 << i;
            let mut v = (slow_mul(x, x, modulus, e) ^ x) as u16;
            let mut comb = x as u16;
            for &(bv, bc) in &basis {
                let top = 1u16 << (15 - bv.leading_zeros());
                if v & top != 0 {
                    v ^= bv;
                    comb ^= bc;
                }
            }
            if v != 0 {
                basis.push((v, comb));
                basis.sort_by_key(|b| std::cmp::Reverse(b.0));
            }
        }
        tables.wp_basis = basis;
        Ok(FieldSpec(Arc::new(tables)))
    }

    /// Shorthand for `GF(2^e)` with the default modulus.
    pub fn gf(e: u32) -> FieldSpec {
        FieldSpec::new(e, None).expect("default field construction cannot fail for 1 <= e <= 16")
    }

    pub fn degree(&self) -> u32 {
        self.0.e
    }

    pub fn modulus_bits(&self) -> u32 {
        self.0.modulus
    }

    pub fn size(&self) -> usize {
        1usize << self.0.e
    }

    /// Element with `X^2 + X + alpha` irreducible: the smallest one of trace 1.
    pub fn alpha(&self) -> Scalar {
        self.0.alpha
    }

    pub fn scalar(&self, bits: u32) -> Result<Scalar> {
        if bits >= self.size() as u32 {
            return Err(Error::Field(format!(
                "scalar {bits} out of range for GF(2^{})",
                self.0.e
            )));
        }
        Ok(Scalar(bits as u16))
    }

    pub fn elements(&self) -> impl Iterator<Item = Scalar> {
        (0..self.size() as u32).map(|b| Scalar(b as u16))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        Scalar(rng.gen_range(0..self.size() as u32) as u16)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        Scalar(rng.gen_range(1..self.size() as u32) as u16)
    }

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        a + b
    }

    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        if a.0 == 0 || b.0 == 0 {
            return Scalar::ZERO;
        }
        let t = &self.0;
        Scalar(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let t = &self.0;
        let order = (self.size() - 1) as u32;
        Ok(Scalar(
            t.exp[((order - t.log[a.0 as usize]) % order) as usize],
        ))
    }

    pub fn div(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Scalar, k: u64) -> Scalar {
        if k == 0 {
            return Scalar::ONE;
        }
        if a.is_zero() {
            return Scalar::ZERO;
        }
        let order = (self.size() - 1) as u64;
        let l = (self.0.log[a.0 as usize] as u64 * (k % order)) % order;
        Scalar(self.0.exp[l as usize])
    }

    #[inline]
    pub fn square(&self, a: Scalar) -> Scalar {
        self.mul(a, a)
    }

    /// The unique square root, `a^(2^(e-1))`.
    pub fn sqrt(&self, a: Scalar) -> Scalar {
        let mut r = a;
        for _ in 1..self.0.e {
            r = self.square(r);
        }
        r
    }

    /// Absolute trace to F2.
    pub fn trace(&self, a: Scalar) -> u8 {
        ((a.0 & self.0.trace_mask).count_ones() % 2) as u8
    }

    /// Membership in the Artin-Schreier subgroup `{x^2 + x}`.
    pub fn in_wp(&self, a: Scalar) -> bool {
        self.trace(a) == 0
    }

    /// Both solutions of `x^2 + x = c`, smaller bit pattern first, or `None`
    /// when `c` has trace 1.
    pub fn artin_schreier_solve(&self, c: Scalar) -> Option<(Scalar, Scalar)> {
        let mut v = c.0;
        let mut x = 0u16;
        for &(bv, bc) in &self.0.wp_basis {
            let top = 1u16 << (15 - bv.leading_zeros());
            if v & top != 0 {
                v ^= bv;
                x ^= bc;
            }
        }
        if v != 0 {
            return None;
        }
        let x0 = Scalar(x);
        let x1 = Scalar(x ^ 1);
        Some(if x0 < x1 { (x0, x1) } else { (x1, x0) })
    }
}

/// Field operation selector for [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Inv,
}

pub fn arith(f: &FieldSpec, op: ArithOp, a: Scalar, b: Scalar) -> Result<Scalar> {
    match op {
        ArithOp::Add => Ok(f.add(a, b)),
        ArithOp::Mul => Ok(f.mul(a, b)),
        ArithOp::Inv => f.inv(a),
    }
}
