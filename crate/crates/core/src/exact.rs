//! Exact arithmetic in Z[ζ₈, 1/√2].
//!
//! A value is `(c₀ + c₁ζ + c₂ζ² + c₃ζ³) / √2^k` with ζ = e^{iπ/4}. The
//! canonical form has the smallest `k`, so two values are equal exactly when
//! their fields are equal.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub};

use num_complex::Complex64;
use serde::{Serialize, Serializer};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    c: [i64; 4],
    k: u32,
}

fn ring_mul(a: &[i64; 4], b: &[i64; 4]) -> [i64; 4] {
    let mut out = [0i64; 4];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let p = x * y;
            let d = i + j;
            if d < 4 {
                out[d] += p;
            } else {
                out[d - 4] -= p;
            }
        }
    }
    out
}

// √2 = ζ − ζ³
const SQRT2: [i64; 4] = [0, 1, 0, -1];

impl ExactScalar {
    pub const ZERO: ExactScalar = ExactScalar { c: [0; 4], k: 0 };
    pub const ONE: ExactScalar = ExactScalar { c: [1, 0, 0, 0], k: 0 };
    pub const I: ExactScalar = ExactScalar { c: [0, 0, 1, 0], k: 0 };

    pub fn new(c: [i64; 4], k: u32) -> Self {
        let mut s = ExactScalar { c, k };
        s.reduce();
        s
    }

    pub fn int(n: i64) -> Self {
        Self::new([n, 0, 0, 0], 0)
    }

    /// ζ^m for any integer m.
    pub fn zeta(m: i64) -> Self {
        let m = m.rem_euclid(8) as usize;
        let mut c = [0i64; 4];
        if m < 4 {
            c[m] = 1;
        } else {
            c[m - 4] = -1;
        }
        ExactScalar { c, k: 0 }
    }

    /// 1/√2^p
    pub fn inv_sqrt2_pow(p: u32) -> Self {
        Self::new([1, 0, 0, 0], p)
    }

    pub fn coefficients(&self) -> [i64; 4] {
        self.c
    }

    pub fn sqrt2_power(&self) -> u32 {
        self.k
    }

    fn reduce(&mut self) {
        if self.c == [0; 4] {
            self.k = 0;
            return;
        }
        while self.k > 0 {
            let b = ring_mul(&self.c, &SQRT2);
            if b.iter().all(|x| x % 2 == 0) {
                self.c = [b[0] / 2, b[1] / 2, b[2] / 2, b[3] / 2];
                self.k -= 1;
            } else {
                break;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c == [0; 4]
    }

    /// Complex conjugate: ζ ↦ ζ⁻¹ = −ζ³.
    pub fn conj(&self) -> Self {
        let [a, b, c, d] = self.c;
        ExactScalar { c: [a, -d, -c, -b], k: self.k }
    }

    pub fn norm_sqr(&self) -> Self {
        *self * self.conj()
    }

    /// Multiply by √2^p.
    pub fn mul_sqrt2_pow(&self, p: u32) -> Self {
        let mut c = self.c;
        let mut k = self.k;
        for _ in 0..p {
            if k > 0 {
                k -= 1;
            } else {
                c = ring_mul(&c, &SQRT2);
            }
        }
        Self::new(c, k)
    }

    /// `Some((num, pow2))` with value `num / 2^pow2` when the value is a real
    /// rational.
    pub fn to_dyadic(&self) -> Option<(i64, u32)> {
        let [c0, c1, c2, c3] = self.c;
        // re = c0/√2^k + (c1 − c3)/√2^(k+1); im = c2/√2^k + (c1 + c3)/√2^(k+1)
        let k = self.k;
        let (num, sk) = if k.is_multiple_of(2) {
            if c1 - c3 != 0 || c2 != 0 || c1 + c3 != 0 {
                return None;
            }
            (c0, k)
        } else {
            if c0 != 0 || c2 != 0 || c1 + c3 != 0 {
                return None;
            }
            (c1 - c3, k + 1)
        };
        let mut num = num;
        let mut pow2 = sk / 2;
        while pow2 > 0 && num % 2 == 0 {
            num /= 2;
            pow2 -= 1;
        }
        Some((num, pow2))
    }

    pub fn to_f64_if_real(&self) -> Option<f64> {
        self.to_dyadic().map(|(n, p)| n as f64 / (1u64 << p) as f64)
    }

    pub fn to_complex(&self) -> Complex64 {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let [c0, c1, c2, c3] = self.c.map(|x| x as f64);
        let re = c0 + (c1 - c3) * h;
        let im = c2 + (c1 + c3) * h;
        let s = h.powi(self.k as i32);
        Complex64::new(re * s, im * s)
    }

    /// Exact quotient when the divisor has modulus √2^m for some integer m.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        let (n, p) = other.norm_sqr().to_dyadic()?;
        if n != 1 && n != -1 {
            return None;
        }
        let q = *self * other.conj() * ExactScalar::int(n);
        Some(q.mul_sqrt2_pow(2 * p))
    }

    /// `Some((m, p))` when the value equals ζ^m / √2^p.
    pub fn as_phase_power(&self) -> Option<(u8, u32)> {
        let p = self.k;
        for m in 0..8 {
            if *self * ExactScalar::zeta(-(m as i64)) == ExactScalar::inv_sqrt2_pow(p) {
                return Some((m, p));
            }
        }
        None
    }
}

impl Default for ExactScalar {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Add for ExactScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let k = self.k.max(rhs.k);
        let a = self.mul_raw(k - self.k);
        let b = rhs.mul_raw(k - rhs.k);
        Self::new([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]], k)
    }
}

impl ExactScalar {
    // numerator times √2^p without touching k
    fn mul_raw(&self, p: u32) -> [i64; 4] {
        let mut c = self.c;
        for _ in 0..p {
            c = ring_mul(&c, &SQRT2);
        }
        c
    }
}

impl AddAssign for ExactScalar {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Neg for ExactScalar {
    type Output = Self;
    fn neg(self) -> Self {
        ExactScalar { c: self.c.map(|x| -x), k: self.k }
    }
}

impl Sub for ExactScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for ExactScalar {
    type Output = Self;
    // denominators multiply, so their √2 exponents add
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Self) -> Self {
        Self::new(ring_mul(&self.c, &rhs.c), self.k + rhs.k)
    }
}

impl MulAssign for ExactScalar {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// Serialized through its display form.
impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if let Some((n, p)) = self.to_dyadic() {
            return if p == 0 { write!(f, "{n}") } else { write!(f, "{n}/{}", 1u64 << p) };
        }
        if let Some((m, p)) = self.as_phase_power() {
            let phase = match m {
                0 => "1".to_string(),
                2 => "i".to_string(),
                4 => "-1".to_string(),
                6 => "-i".to_string(),
                _ => format!("ζ^{m}"),
            };
            return if p == 0 { write!(f, "{phase}") } else { write!(f, "{phase}/√2^{p}") };
        }
        let [a, b, c, d] = self.c;
        write!(f, "({a} + {b}ζ + {c}ζ² + {d}ζ³)")?;
        if self.k > 0 {
            write!(f, "/√2^{}", self.k)?;
        }
        Ok(())
    }
}
