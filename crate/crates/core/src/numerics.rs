//! Exact integer arithmetic for curve counts, cached binomials and factorials,
//! and logarithms of very large integers.

use alloc::vec::Vec;
use core::fmt;
use core::iter::Sum;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub};
use core::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericsError {
    #[error("subtraction would produce a negative value")]
    NegativeResult,
    #[error("logarithm of zero")]
    LogOfZero,
    #[error("invalid decimal integer: {0:?}")]
    Parse(alloc::string::String),
}

/// Arbitrary-precision non-negative integer.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Nat(BigUint);

impl Nat {
    pub fn zero() -> Self {
        Nat(BigUint::zero())
    }

    pub fn one() -> Self {
        Nat(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn bits(&self) -> u64 {
        self.0.bits()
    }

    /// `self - rhs`, or an error if `rhs > self`.
    pub fn checked_sub(&self, rhs: &Nat) -> Result<Nat, NumericsError> {
        if rhs.0 > self.0 {
            Err(NumericsError::NegativeResult)
        } else {
            Ok(Nat(&self.0 - &rhs.0))
        }
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl From<u64> for Nat {
    fn from(v: u64) -> Self {
        Nat(BigUint::from(v))
    }
}

impl From<u32> for Nat {
    fn from(v: u32) -> Self {
        Nat(BigUint::from(v))
    }
}

impl From<BigUint> for Nat {
    fn from(v: BigUint) -> Self {
        Nat(v)
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Nat {
    type Err = NumericsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(NumericsError::Parse(s.into()));
        }
        BigUint::parse_bytes(s.as_bytes(), 10).map(Nat).ok_or_else(|| NumericsError::Parse(s.into()))
    }
}

impl Add for Nat {
    type Output = Nat;
    fn add(self, rhs: Nat) -> Nat {
        Nat(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Nat> for &'a Nat {
    type Output = Nat;
    fn add(self, rhs: &Nat) -> Nat {
        Nat(&self.0 + &rhs.0)
    }
}

impl AddAssign<&Nat> for Nat {
    fn add_assign(&mut self, rhs: &Nat) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Nat {
    fn add_assign(&mut self, rhs: Nat) {
        self.0 += rhs.0;
    }
}

impl Mul for Nat {
    type Output = Nat;
    fn mul(self, rhs: Nat) -> Nat {
        Nat(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a Nat> for &'a Nat {
    type Output = Nat;
    fn mul(self, rhs: &Nat) -> Nat {
        Nat(&self.0 * &rhs.0)
    }
}

impl MulAssign<&Nat> for Nat {
    fn mul_assign(&mut self, rhs: &Nat) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Nat {
    fn sum<I: Iterator<Item = Nat>>(iter: I) -> Nat {
        iter.fold(Nat::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Nat> for Nat {
    fn sum<I: Iterator<Item = &'a Nat>>(iter: I) -> Nat {
        iter.fold(Nat::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Signed big integer used for the intermediate sums of alternating recursions.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedInt(BigInt);

impl SignedInt {
    pub fn zero() -> Self {
        SignedInt(BigInt::zero())
    }

    pub fn sign(&self) -> Sign {
        match self.0.sign() {
            BigSign::Minus => Sign::Negative,
            BigSign::NoSign => Sign::Zero,
            BigSign::Plus => Sign::Positive,
        }
    }

    pub fn magnitude(&self) -> Nat {
        Nat(self.0.magnitude().clone())
    }

    /// Converts to a [`Nat`], failing on negative values.
    pub fn into_nat(self) -> Result<Nat, NumericsError> {
        match self.0.into_parts() {
            (BigSign::Minus, _) => Err(NumericsError::NegativeResult),
            (_, mag) => Ok(Nat(mag)),
        }
    }
}

impl From<Nat> for SignedInt {
    fn from(n: Nat) -> Self {
        SignedInt(BigInt::from_biguint(BigSign::Plus, n.0))
    }
}

impl From<i64> for SignedInt {
    fn from(v: i64) -> Self {
        SignedInt(BigInt::from(v))
    }
}

impl fmt::Display for SignedInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for SignedInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Add for SignedInt {
    type Output = SignedInt;
    fn add(self, rhs: SignedInt) -> SignedInt {
        SignedInt(self.0 + rhs.0)
    }
}

impl AddAssign for SignedInt {
    fn add_assign(&mut self, rhs: SignedInt) {
        self.0 += rhs.0;
    }
}

impl Sub for SignedInt {
    type Output = SignedInt;
    fn sub(self, rhs: SignedInt) -> SignedInt {
        SignedInt(self.0 - rhs.0)
    }
}

impl Mul for SignedInt {
    type Output = SignedInt;
    fn mul(self, rhs: SignedInt) -> SignedInt {
        SignedInt(self.0 * rhs.0)
    }
}

impl Neg for SignedInt {
    type Output = SignedInt;
    fn neg(self) -> SignedInt {
        SignedInt(-self.0)
    }
}

/// Row-materialized Pascal triangle and incremental factorial table.
///
/// Insertion needs `&mut self`; share a filled table read-only or give each
/// worker its own.
#[derive(Debug, Clone)]
pub struct Combinatorics {
    rows: Vec<Vec<Nat>>,
    factorials: Vec<Nat>,
}

impl Default for Combinatorics {
    fn default() -> Self {
        Self::new()
    }
}

impl Combinatorics {
    pub fn new() -> Self {
        Combinatorics { rows: alloc::vec![alloc::vec![Nat::one()]], factorials: alloc::vec![Nat::one()] }
    }

    /// Row `n` of Pascal's triangle, materializing all rows up to `n`.
    pub fn row(&mut self, n: usize) -> &[Nat] {
        while self.rows.len() <= n {
            let prev = self.rows.last().expect("row 0 always present");
            let mut next = Vec::with_capacity(prev.len() + 1);
            next.push(Nat::one());
            for w in prev.windows(2) {
                next.push(&w[0] + &w[1]);
            }
            next.push(Nat::one());
            self.rows.push(next);
        }
        &self.rows[n]
    }

    /// `C(n, k)`, zero when `k < 0` or `k > n`.
    pub fn binomial(&mut self, n: i64, k: i64) -> Nat {
        if n < 0 || k < 0 || k > n {
            return Nat::zero();
        }
        self.row(n as usize)[k as usize].clone()
    }

    pub fn factorial(&mut self, n: usize) -> Nat {
        while self.factorials.len() <= n {
            let i = self.factorials.len() as u64;
            let next = self.factorials.last().expect("0! always present") * &Nat::from(i);
            self.factorials.push(next);
        }
        self.factorials[n].clone()
    }

    /// Read-only lookup for an already materialized row.
    pub fn cached_binomial(&self, n: i64, k: i64) -> Option<&Nat> {
        if n < 0 || k < 0 || k > n {
            return None;
        }
        self.rows.get(n as usize).map(|r| &r[k as usize])
    }
}

/// `C(n, k)` without a persistent cache.
pub fn binomial(n: i64, k: i64) -> Nat {
    if n < 0 || k < 0 || k > n {
        return Nat::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    Nat(acc)
}

pub fn factorial(n: u64) -> Nat {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= i;
    }
    Nat(acc)
}

const MANTISSA_BITS: u64 = 128;

/// Natural logarithm of a positive integer.
///
/// Uses the bit length and the leading 128 bits only, so the cost does not
/// depend on the size of `x` beyond the shift.
pub fn ln_nat(x: &Nat) -> Result<f64, NumericsError> {
    if x.is_zero() {
        return Err(NumericsError::LogOfZero);
    }
    let bits = x.bits();
    let (mantissa, shift) =
        if bits <= MANTISSA_BITS { (&x.0, 0) } else { (&(&x.0 >> (bits - MANTISSA_BITS)), bits - MANTISSA_BITS) };
    let lead = mantissa.to_u128().expect("at most 128 bits") as f64;
    Ok(libm::log(lead) + shift as f64 * core::f64::consts::LN_2)
}
