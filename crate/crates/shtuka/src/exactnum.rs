//! Exact arithmetic in a p-adic field described by numerical invariants.
//!
//! Elements of `F` are modeled as rational numbers embedded in `F`; elements
//! of a quadratic extension are written `a + b*sqrt(d)` with `d` a rational
//! non-square.  This keeps every valuation and norm exactly computable:
//! `val` is normalized so that `val(p) = 1`, and the norm is
//! `|x| = p^(-e*f*val(x))`, so `|p| = p^(-[F:Q_p])`.
//!
//! For a quadratic element the valuation is half the valuation of the field
//! norm `a^2 - d*b^2`.  When `e*f*val(x)` is not an integer (a ramified
//! quadratic element of odd norm valuation) the norm is not a rational
//! number and [`FieldElement::norm`] reports an error; the character
//! formulas in [`crate::chardist`] avoid this by taking a single norm of a
//! Galois-stable product.

use crate::error::Error;
use crate::ratjson;
use crate::Result;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Pow, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Numerical invariants of a finite extension `F / Q_p`: the residue degree
/// `f` and ramification index `e`, so `[F : Q_p] = e*f` and the residue
/// field has `q = p^f` elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldParams {
    pub p: u64,
    pub f: u32,
    pub e: u32,
}

impl FieldParams {
    pub fn new(p: u64, f: u32, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("p = {p} is not prime")));
        }
        if f == 0 || e == 0 {
            return Err(Error::Invalid("e and f must be positive".into()));
        }
        Ok(FieldParams { p, f, e })
    }

    /// The degree `[F : Q_p] = e*f`.
    pub fn degree(&self) -> u32 {
        self.e * self.f
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact element of `F` or of a quadratic extension `F(sqrt(d))`.
///
/// The `Quad` variant is kept normalized: `b != 0` (a vanishing irrational
/// part collapses to `Rat`) and `d` is not a square in Q.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldElement {
    Rat(#[serde(with = "ratjson")] BigRational),
    Quad {
        #[serde(with = "ratjson")]
        a: BigRational,
        #[serde(with = "ratjson")]
        b: BigRational,
        #[serde(with = "ratjson")]
        d: BigRational,
    },
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_i64(n).unwrap()
}

/// True when `r` is the square of a rational number.
pub fn is_rational_square(r: &BigRational) -> bool {
    if r.is_negative() {
        return false;
    }
    if r.is_zero() {
        return true;
    }
    let num = r.numer().abs();
    let den = r.denom().abs();
    let sn = num.sqrt();
    let sd = den.sqrt();
    &sn * &sn == num && &sd * &sd == den
}

impl FieldElement {
    pub fn from_rational(r: BigRational) -> Self {
        FieldElement::Rat(r)
    }

    pub fn from_int(n: i64) -> Self {
        FieldElement::Rat(int(n))
    }

    /// Construct `a + b*sqrt(d)`, normalizing `b = 0` to a rational element.
    pub fn quadratic(a: BigRational, b: BigRational, d: BigRational) -> Result<Self> {
        if b.is_zero() {
            return Ok(FieldElement::Rat(a));
        }
        if d.is_zero() || is_rational_square(&d) {
            return Err(Error::Invalid(format!(
                "d = {d} is a rational square; element is not quadratic"
            )));
        }
        Ok(FieldElement::Quad { a, b, d })
    }

    pub fn zero() -> Self {
        FieldElement::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        FieldElement::Rat(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, FieldElement::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, FieldElement::Rat(r) if r.is_one())
    }

    fn parts(&self) -> (BigRational, BigRational, Option<BigRational>) {
        match self {
            FieldElement::Rat(r) => (r.clone(), BigRational::zero(), None),
            FieldElement::Quad { a, b, d } => (a.clone(), b.clone(), Some(d.clone())),
        }
    }

    fn rebuild(a: BigRational, b: BigRational, d: Option<BigRational>) -> Self {
        match d {
            Some(d) if !b.is_zero() => FieldElement::Quad { a, b, d },
            _ => FieldElement::Rat(a),
        }
    }

    fn merged_d(x: &Self, y: &Self) -> Option<BigRational> {
        match (x, y) {
            (FieldElement::Quad { d: d1, .. }, FieldElement::Quad { d: d2, .. }) => {
                assert_eq!(d1, d2, "mixed quadratic extensions: sqrt({d1}) vs sqrt({d2})");
                Some(d1.clone())
            }
            (FieldElement::Quad { d, .. }, _) | (_, FieldElement::Quad { d, .. }) => {
                Some(d.clone())
            }
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = Self::merged_d(self, other);
        let (a1, b1, _) = self.parts();
        let (a2, b2, _) = other.parts();
        Self::rebuild(a1 + a2, b1 + b2, d)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let d = Self::merged_d(self, other);
        let (a1, b1, _) = self.parts();
        let (a2, b2, _) = other.parts();
        Self::rebuild(a1 - a2, b1 - b2, d)
    }

    pub fn neg(&self) -> Self {
        let (a, b, d) = self.parts();
        Self::rebuild(-a, -b, d)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = Self::merged_d(self, other);
        let (a1, b1, _) = self.parts();
        let (a2, b2, _) = other.parts();
        match &d {
            Some(dv) => {
                let a = &a1 * &a2 + dv * &b1 * &b2;
                let b = &a1 * &b2 + &b1 * &a2;
                Self::rebuild(a, b, d)
            }
            None => FieldElement::Rat(a1 * a2),
        }
    }

    /// Multiplicative inverse.  Panics on zero; callers validate inputs
    /// (eigenvalues are checked nonzero at construction).
    pub fn inv(&self) -> Self {
        match self {
            FieldElement::Rat(r) => {
                assert!(!r.is_zero(), "inverse of zero");
                FieldElement::Rat(r.recip())
            }
            FieldElement::Quad { a, b, d } => {
                // (a + b sqrt d)^-1 = (a - b sqrt d) / (a^2 - d b^2)
                let n = a * a - d * b * b;
                assert!(!n.is_zero(), "inverse of zero (degenerate quadratic)");
                FieldElement::Quad {
                    a: a / &n,
                    b: -(b / &n),
                    d: d.clone(),
                }
            }
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// Exact `1 - x` in the same field.
    pub fn one_minus(&self) -> Self {
        Self::one().sub(self)
    }

    /// Galois conjugate: `a - b*sqrt(d)` on quadratic elements, identity on
    /// rational ones.
    pub fn conjugate(&self) -> Self {
        match self {
            FieldElement::Rat(r) => FieldElement::Rat(r.clone()),
            FieldElement::Quad { a, b, d } => FieldElement::Quad {
                a: a.clone(),
                b: -b.clone(),
                d: d.clone(),
            },
        }
    }

    /// Field norm down to the rational model of F: `x * conj(x)` for
    /// quadratic elements, `x` itself for rational ones... returned as the
    /// rational `a^2 - d*b^2` in the quadratic case.
    pub fn galois_norm(&self) -> BigRational {
        match self {
            FieldElement::Rat(r) => r.clone(),
            FieldElement::Quad { a, b, d } => a * a - d * b * b,
        }
    }

    /// p-adic valuation normalized so that `val(p) = 1`.  Additive under
    /// multiplication; rational elements have integer valuation, quadratic
    /// elements half-integer valuation (half the valuation of the field
    /// norm).
    pub fn val(&self, params: &FieldParams) -> Result<BigRational> {
        if self.is_zero() {
            return Err(Error::ZeroValuation);
        }
        match self {
            FieldElement::Rat(r) => Ok(BigRational::from(BigInt::from(rational_val_p(
                r, params.p,
            )))),
            FieldElement::Quad { .. } => {
                let n = self.galois_norm();
                if n.is_zero() {
                    return Err(Error::ZeroValuation);
                }
                Ok(BigRational::new(rational_val_p(&n, params.p).into(), 2.into()))
            }
        }
    }

    /// Normalized norm `|x| = p^(-e*f*val(x))`, with `|0| = 0`.
    ///
    /// Errors with [`Error::IrrationalNorm`] when the exponent is not an
    /// integer (only possible for quadratic elements of half-integer
    /// valuation with `e*f` odd).
    pub fn norm(&self, params: &FieldParams) -> Result<BigRational> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        let exponent = self.val(params)? * BigRational::from(BigInt::from(params.degree()));
        if !exponent.is_integer() {
            return Err(Error::IrrationalNorm(format!("{self:?}")));
        }
        let k = exponent.to_integer();
        Ok(pow_rational(params.p, &-k))
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldElement::Rat(r) => write!(f, "{r}"),
            FieldElement::Quad { a, b, d } => write!(f, "{a} + {b}*sqrt({d})"),
        }
    }
}

/// `p^k` as an exact rational, for `k` of either sign.
pub fn pow_rational(p: u64, k: &BigInt) -> BigRational {
    let base = BigInt::from(p);
    if k.is_negative() {
        let e = (-k).to_biguint().unwrap();
        BigRational::new(BigInt::one(), base.pow(&e))
    } else {
        let e = k.to_biguint().unwrap();
        BigRational::from(base.pow(&e))
    }
}

fn int_val_p(n: &BigInt, p: u64) -> i64 {
    assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut m = n.abs();
    let mut v = 0i64;
    loop {
        let (q, r) = m.div_rem(&p);
        if r.is_zero() {
            v += 1;
            m = q;
        } else {
            return v;
        }
    }
}

/// p-adic valuation of a nonzero rational.
pub fn rational_val_p(r: &BigRational, p: u64) -> i64 {
    int_val_p(r.numer(), p) - int_val_p(r.denom(), p)
}

/// Whether a nonzero rational is a square in `Q_p`.
///
/// For odd p: the valuation must be even and the unit part a quadratic
/// residue mod p.  For p = 2: the valuation must be even and the unit part
/// congruent to 1 mod 8.
pub fn is_padic_square(r: &BigRational, p: u64) -> bool {
    assert!(!r.is_zero());
    let v = rational_val_p(r, p);
    if v.rem_euclid(2) != 0 {
        return false;
    }
    // unit part u = r / p^v as a rational with numerator and denominator
    // prime to p; reduce mod p (or mod 8 for p = 2)
    let unit = r / pow_rational(p, &BigInt::from(v));
    let modulus = BigInt::from(if p == 2 { 8u64 } else { p });
    let num = unit.numer().mod_floor(&modulus);
    let den = unit.denom().mod_floor(&modulus);
    let den_inv = mod_inverse(&den, &modulus).expect("denominator prime to p");
    let u = (num * den_inv).mod_floor(&modulus);
    if p == 2 {
        return u == BigInt::one();
    }
    // Euler criterion in F_p
    let exp = (p - 1) / 2;
    mod_pow(&u, exp, &modulus) == BigInt::one()
}

fn mod_pow(base: &BigInt, mut exp: u64, m: &BigInt) -> BigInt {
    let mut b = base.mod_floor(m);
    let mut acc = BigInt::one();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (&acc * &b).mod_floor(m);
        }
        b = (&b * &b).mod_floor(m);
        exp >>= 1;
    }
    acc
}

fn half_group_order(p: u64, f: u32) -> Result<u64> {
    let q = p
        .checked_pow(f)
        .ok_or_else(|| Error::GuardExceeded(format!("residue field size p^{f} overflows")))?;
    Ok((q - 1) / 2)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Classification of the quadratic extension `F(sqrt(d)) / F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadExtKind {
    /// `d` is a square in F: the algebra splits, no field extension.
    Split,
    Unramified,
    Ramified,
}

/// Classify `F(sqrt(d))` from the invariants of F.
///
/// Only the cases determined by `(p, f, e)` are decided: residue
/// characteristic 2 is excluded, and for `e > 1` an even `val_p(d)` with odd
/// p-valuation exponent structure cannot be resolved without knowing the
/// uniformizer of F, so that combination is rejected as indeterminate.
pub fn quadratic_extension_kind(d: &BigRational, params: &FieldParams) -> Result<QuadExtKind> {
    if d.is_zero() || is_rational_square(d) {
        return Err(Error::Invalid("d must be a rational non-square".into()));
    }
    if params.p == 2 {
        return Err(Error::UnsupportedTorus(
            "quadratic extensions in residue characteristic 2 are not classified".into(),
        ));
    }
    let v = rational_val_p(d, params.p);
    let val_f = i64::from(params.e) * v;
    if val_f.rem_euclid(2) != 0 {
        return Ok(QuadExtKind::Ramified);
    }
    if v.rem_euclid(2) != 0 {
        // val_F(d) even only because e is even; squareness in F depends on
        // the uniformizer of F, which (p, f, e) does not determine
        return Err(Error::UnsupportedTorus(
            "classification indeterminate: e even and val_p(d) odd".into(),
        ));
    }
    // unit part; a unit of Z_p is a square in O_F iff its image in the
    // residue field F_q is a square, q = p^f
    let unit = d / pow_rational(params.p, &BigInt::from(v));
    let modulus = BigInt::from(params.p);
    let num = unit.numer().mod_floor(&modulus);
    let den = unit.denom().mod_floor(&modulus);
    let den_inv = mod_inverse(&den, &modulus).expect("denominator prime to p");
    let u = (num * den_inv).mod_floor(&modulus);
    let q_minus_1_half = half_group_order(params.p, params.f)?;
    // compute u^((q-1)/2) in F_p; since u lies in the prime field this
    // decides squareness in F_q
    if mod_pow(&u, q_minus_1_half, &modulus) == BigInt::one() {
        Ok(QuadExtKind::Split)
    } else {
        Ok(QuadExtKind::Unramified)
    }
}
