//! Binary extension fields GF(2^k) in polynomial basis.
//!
//! [`Gf64`] and [`Gf128`] use carry-less multiplication (PCLMULQDQ when the
//! CPU has it, a shift-and-xor loop otherwise). [`GfSmall`] covers small
//! degrees with a const-generic modulus and is mostly useful for tests and
//! for deliberately weak fields.

use std::fmt::Debug;

use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("zero has no multiplicative inverse")]
pub struct DivisionByZero;

pub trait BinaryField: Copy + Eq + Debug + Send + Sync + 'static {
    /// Extension degree `k`.
    const BITS: u32;
    const ZERO: Self;
    const ONE: Self;

    fn add(self, other: Self) -> Self;
    fn mul(self, other: Self) -> Self;
    fn inv(self) -> Result<Self, DivisionByZero>;
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Bits of the canonical representative; panics if `bits` has degree
    /// `BITS` or more.
    fn from_bits(bits: u128) -> Self;
    fn to_bits(self) -> u128;

    fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    fn square(self) -> Self {
        self.mul(self)
    }

    /// `dst[i] += c * src[i]`, the inner loop of elimination.
    fn mul_add_row(dst: &mut [Self], src: &[Self], c: Self) {
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = d.add(c.mul(s));
        }
    }
}

/// Carry-less 64 x 64 -> 128 bit product.
#[inline]
fn clmul64(a: u64, b: u64) -> u128 {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("pclmulqdq") {
            // SAFETY: the feature was detected at runtime.
            return unsafe { clmul64_hw(a, b) };
        }
    }
    clmul64_soft(a, b)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq,sse2")]
unsafe fn clmul64_hw(a: u64, b: u64) -> u128 {
    use std::arch::x86_64::*;
    let x = _mm_set_epi64x(0, a as i64);
    let y = _mm_set_epi64x(0, b as i64);
    let p = _mm_clmulepi64_si128(x, y, 0x00);
    let lo = _mm_cvtsi128_si64(p) as u64;
    let hi = _mm_cvtsi128_si64(_mm_unpackhi_epi64(p, p)) as u64;
    (hi as u128) << 64 | lo as u128
}

fn clmul64_soft(a: u64, b: u64) -> u128 {
    let a = a as u128;
    let mut acc = 0u128;
    let mut b = b;
    while b != 0 {
        let i = b.trailing_zeros();
        acc ^= a << i;
        b &= b - 1;
    }
    acc
}

/// GF(2^64) modulo x^64 + x^4 + x^3 + x + 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gf64(pub u64);

impl Debug for Gf64 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Gf64({:#018x})", self.0)
    }
}

#[inline]
fn reduce64(p: u128) -> u64 {
    let lo = p as u64;
    let hi = (p >> 64) as u64;
    // hi * (x^4 + x^3 + x + 1), with the overflow folded back once more
    let spill = (hi >> 60) ^ (hi >> 61) ^ (hi >> 63);
    let fold = hi ^ (hi << 1) ^ (hi << 3) ^ (hi << 4);
    lo ^ fold ^ spill ^ (spill << 1) ^ (spill << 3) ^ (spill << 4)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq,sse2")]
unsafe fn mul_add_row64_hw(dst: &mut [Gf64], src: &[Gf64], c: u64) {
    for (d, s) in dst.iter_mut().zip(src) {
        d.0 ^= reduce64(clmul64_hw(c, s.0));
    }
}

impl BinaryField for Gf64 {
    const BITS: u32 = 64;
    const ZERO: Self = Gf64(0);
    const ONE: Self = Gf64(1);

    #[inline]
    fn add(self, other: Self) -> Self {
        Gf64(self.0 ^ other.0)
    }

    #[inline]
    fn mul(self, other: Self) -> Self {
        Gf64(reduce64(clmul64(self.0, other.0)))
    }

    fn inv(self) -> Result<Self, DivisionByZero> {
        poly_inverse(self.0 as u128, MODULUS64, 64).map(|x| Gf64(x as u64))
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Gf64(rng.gen())
    }

    fn from_bits(bits: u128) -> Self {
        Gf64(u64::try_from(bits).expect("degree below 64"))
    }

    fn to_bits(self) -> u128 {
        self.0 as u128
    }

    fn mul_add_row(dst: &mut [Self], src: &[Self], c: Self) {
        #[cfg(target_arch = "x86_64")]
        {
            if std::arch::is_x86_feature_detected!("pclmulqdq") {
                // SAFETY: the feature was detected at runtime.
                unsafe { mul_add_row64_hw(dst, src, c.0) };
                return;
            }
        }
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = d.add(c.mul(s));
        }
    }
}

/// GF(2^128) modulo x^128 + x^7 + x^2 + x + 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gf128(pub u128);

impl Debug for Gf128 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Gf128({:#034x})", self.0)
    }
}

impl BinaryField for Gf128 {
    const BITS: u32 = 128;
    const ZERO: Self = Gf128(0);
    const ONE: Self = Gf128(1);

    #[inline]
    fn add(self, other: Self) -> Self {
        Gf128(self.0 ^ other.0)
    }

    fn mul(self, other: Self) -> Self {
        let (a0, a1) = (self.0 as u64, (self.0 >> 64) as u64);
        let (b0, b1) = (other.0 as u64, (other.0 >> 64) as u64);
        let lo = clmul64(a0, b0);
        let hi = clmul64(a1, b1);
        let mid = clmul64(a0, b1) ^ clmul64(a1, b0);
        let lo = lo ^ (mid << 64);
        let hi = hi ^ (mid >> 64);
        // hi * (x^7 + x^2 + x + 1), overflow folded back once more
        let spill = (hi >> 121) ^ (hi >> 126) ^ (hi >> 127);
        let fold = hi ^ (hi << 1) ^ (hi << 2) ^ (hi << 7);
        Gf128(lo ^ fold ^ spill ^ (spill << 1) ^ (spill << 2) ^ (spill << 7))
    }

    fn inv(self) -> Result<Self, DivisionByZero> {
        poly_inverse(self.0, 0x87, 128).map(Gf128)
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Gf128(rng.gen())
    }

    fn from_bits(bits: u128) -> Self {
        Gf128(bits)
    }

    fn to_bits(self) -> u128 {
        self.0
    }
}

/// GF(2^K) for `K < 64`, reducing modulo `POLY`, which includes the leading
/// `x^K` term.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GfSmall<const K: u32, const POLY: u64>(pub u64);

impl<const K: u32, const POLY: u64> Debug for GfSmall<K, POLY> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Gf{}({:#x})", K, self.0)
    }
}

/// GF(2^16) modulo x^16 + x^5 + x^3 + x + 1.
pub type Gf16 = GfSmall<16, 0x1_002B>;
/// GF(2^32) modulo x^32 + x^7 + x^3 + x^2 + 1.
pub type Gf32 = GfSmall<32, 0x1_0000_008D>;

impl<const K: u32, const POLY: u64> BinaryField for GfSmall<K, POLY> {
    const BITS: u32 = K;
    const ZERO: Self = GfSmall(0);
    const ONE: Self = GfSmall(1);

    #[inline]
    fn add(self, other: Self) -> Self {
        GfSmall(self.0 ^ other.0)
    }

    fn mul(self, other: Self) -> Self {
        let mut p = clmul64(self.0, other.0);
        let top = 2 * K as usize - 2;
        for i in (K as usize..=top).rev() {
            if p >> i & 1 == 1 {
                p ^= (POLY as u128) << (i - K as usize);
            }
        }
        GfSmall(p as u64)
    }

    fn inv(self) -> Result<Self, DivisionByZero> {
        let low = POLY as u128 ^ (1u128 << K);
        poly_inverse(self.0 as u128, low, K).map(|x| GfSmall(x as u64))
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        GfSmall(rng.gen::<u64>() & ((1u64 << K) - 1))
    }

    fn from_bits(bits: u128) -> Self {
        assert!(bits >> K == 0, "degree below {K}");
        GfSmall(bits as u64)
    }

    fn to_bits(self) -> u128 {
        self.0 as u128
    }
}

const MODULUS64: u128 = 0x1B;

/// Polynomials over GF(2) of degree below 192.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Poly([u64; 3]);

impl Poly {
    fn from_u128(x: u128) -> Self {
        Poly([x as u64, (x >> 64) as u64, 0])
    }

    /// `x^k + low`.
    fn modulus(low: u128, k: u32) -> Self {
        let mut p = Self::from_u128(low);
        p.0[k as usize / 64] |= 1 << (k % 64);
        p
    }

    fn degree(&self) -> Option<u32> {
        (0..3)
            .rev()
            .find(|&i| self.0[i] != 0)
            .map(|i| 64 * i as u32 + 63 - self.0[i].leading_zeros())
    }

    fn shl(&self, s: u32) -> Self {
        let mut out = [0u64; 3];
        let (words, bits) = ((s / 64) as usize, s % 64);
        for i in (words..3).rev() {
            let mut w = self.0[i - words] << bits;
            if bits > 0 && i > words {
                w |= self.0[i - words - 1] >> (64 - bits);
            }
            out[i] = w;
        }
        Poly(out)
    }

    fn xor(&mut self, other: &Poly) {
        for i in 0..3 {
            self.0[i] ^= other.0[i];
        }
    }

    fn is_one(&self) -> bool {
        self.0 == [1, 0, 0]
    }

    fn to_u128(self) -> u128 {
        debug_assert_eq!(self.0[2], 0);
        (self.0[1] as u128) << 64 | self.0[0] as u128
    }
}

/// Inverse of `a` modulo `x^k + low` by the binary extended Euclidean
/// algorithm.
fn poly_inverse(a: u128, low: u128, k: u32) -> Result<u128, DivisionByZero> {
    if a == 0 {
        return Err(DivisionByZero);
    }
    let mut u = Poly::from_u128(a);
    let mut v = Poly::modulus(low, k);
    let mut g1 = Poly::from_u128(1);
    let mut g2 = Poly::from_u128(0);
    while !u.is_one() {
        let du = u.degree().ok_or(DivisionByZero)?;
        let dv = v.degree().expect("modulus is nonzero");
        if du < dv {
            std::mem::swap(&mut u, &mut v);
            std::mem::swap(&mut g1, &mut g2);
            continue;
        }
        let j = du - dv;
        u.xor(&v.shl(j));
        g1.xor(&g2.shl(j));
    }
    Ok(g1.to_u128())
}
