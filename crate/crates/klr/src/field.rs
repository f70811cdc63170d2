//! Prime-field scalars. The engine is generic over [`Field`]; `Fp<P>` is the only
//! implementation and the aliases below cover the primes the CLI dispatches over.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// A finite prime field usable as the engine's coefficient ring.
pub trait Field:
    Copy
    + Eq
    + Ord
    + Hash
    + Default
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    const CHARACTERISTIC: u32;

    fn from_i64(v: i64) -> Self;

    /// Multiplicative inverse; `None` for zero.
    fn inv(self) -> Option<Self>;

    /// Canonical representative in `0..p`.
    fn value(self) -> u32;

    /// Representative in `(-p/2, p/2]`, used for readable output.
    fn signed(self) -> i64 {
        let v = self.value() as i64;
        let p = Self::CHARACTERISTIC as i64;
        if v > p / 2 {
            v - p
        } else {
            v
        }
    }
}

/// `Z/PZ` for a prime `P`; the value is always reduced.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    pub const fn new(v: u32) -> Self {
        Fp(v % P)
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signed())
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u64 * o.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u32> AddAssign for Fp<P> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<const P: u32> SubAssign for Fp<P> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<const P: u32> MulAssign for Fp<P> {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl<const P: u32> Field for Fp<P> {
    const CHARACTERISTIC: u32 = P;

    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u32)
    }

    fn inv(self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // Fermat: a^(P-2).
        let (mut base, mut exp, mut acc) = (self, P - 2, Self::one());
        while exp > 0 {
            if exp & 1 == 1 {
                acc *= base;
            }
            base *= base;
            exp >>= 1;
        }
        Some(acc)
    }

    fn value(self) -> u32 {
        self.0
    }
}

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;
pub type F11 = Fp<11>;
pub type F13 = Fp<13>;
pub type F17 = Fp<17>;
pub type F19 = Fp<19>;
pub type F23 = Fp<23>;
pub type F29 = Fp<29>;
pub type F31 = Fp<31>;

/// The default coefficient field; `gcd(5, e) = 1` for both pinned contexts.
pub type DefaultField = F5;

/// Primes with a compiled field instance.
pub const SUPPORTED_PRIMES: [u32; 11] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

/// Runs `$body` with the type alias `$F` bound to `Fp<$p>`; evaluates `$fallback`
/// when `$p` has no compiled instance.
#[macro_export]
macro_rules! with_prime_field {
    ($p:expr, $F:ident => $body:expr, _ => $fallback:expr) => {
        match $p {
            2 => {
                type $F = $crate::field::F2;
                $body
            }
            3 => {
                type $F = $crate::field::F3;
                $body
            }
            5 => {
                type $F = $crate::field::F5;
                $body
            }
            7 => {
                type $F = $crate::field::F7;
                $body
            }
            11 => {
                type $F = $crate::field::F11;
                $body
            }
            13 => {
                type $F = $crate::field::F13;
                $body
            }
            17 => {
                type $F = $crate::field::F17;
                $body
            }
            19 => {
                type $F = $crate::field::F19;
                $body
            }
            23 => {
                type $F = $crate::field::F23;
                $body
            }
            29 => {
                type $F = $crate::field::F29;
                $body
            }
            31 => {
                type $F = $crate::field::F31;
                $body
            }
            _ => $fallback,
        }
    };
}
