//! Fixed-width signed integers built from 64-bit limbs.
//!
//! Every geometric predicate in this crate is evaluated on these types. The
//! widths are fixed at 128, 192 and 256 bits (plus a 512-bit scratch width
//! used for cross-multiplied distance comparisons); there are no dynamic
//! widths, so each predicate monomorphizes to a branch-free carry chain.
//!
//! Values are two's complement, little-endian limb order. Plain arithmetic
//! wraps like the machine integers it is built from; `overflowing_*` /
//! `checked_*` variants report when a result does not fit the width. Callers
//! that stay inside the precision budget (see [`crate::planes`]) never
//! overflow, which is what the plain operators rely on.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// Two's-complement signed integer with `L` 64-bit limbs, least significant
/// limb first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct WideInt<const L: usize> {
    limbs: [u64; L],
}

pub type I128 = WideInt<2>;
pub type I192 = WideInt<3>;
pub type I256 = WideInt<4>;
pub type I512 = WideInt<8>;

const SIGN_BIT: u64 = 1 << 63;

impl<const L: usize> WideInt<L> {
    pub const ZERO: Self = Self { limbs: [0; L] };

    pub const BITS: u32 = 64 * L as u32;

    pub const MAX: Self = {
        let mut limbs = [u64::MAX; L];
        limbs[L - 1] = u64::MAX >> 1;
        Self { limbs }
    };

    pub const MIN: Self = {
        let mut limbs = [0u64; L];
        limbs[L - 1] = SIGN_BIT;
        Self { limbs }
    };

    pub const fn from_limbs(limbs: [u64; L]) -> Self {
        Self { limbs }
    }

    pub const fn limbs(&self) -> &[u64; L] {
        &self.limbs
    }

    pub fn from_i64(v: i64) -> Self {
        let fill = if v < 0 { u64::MAX } else { 0 };
        let mut limbs = [fill; L];
        limbs[0] = v as u64;
        Self { limbs }
    }

    pub fn from_i128(v: i128) -> Self {
        debug_assert!(L >= 2);
        let fill = if v < 0 { u64::MAX } else { 0 };
        let mut limbs = [fill; L];
        limbs[0] = v as u64;
        limbs[1] = (v >> 64) as u64;
        Self { limbs }
    }

    pub fn from_u64(v: u64) -> Self {
        let mut limbs = [0; L];
        limbs[0] = v;
        Self { limbs }
    }

    /// The value as an `i128` if it fits.
    pub fn to_i128(&self) -> Option<i128> {
        let v = (self.limbs[0] as u128 | (self.limbs.get(1).copied().unwrap_or(0) as u128) << 64)
            as i128;
        let fill = if v < 0 { u64::MAX } else { 0 };
        for i in 2..L {
            if self.limbs[i] != fill {
                return None;
            }
        }
        if L >= 2 && (v < 0) != self.is_negative() {
            return None;
        }
        Some(v)
    }

    pub fn is_negative(&self) -> bool {
        self.limbs[L - 1] & SIGN_BIT != 0
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    /// Sign under two's-complement interpretation: -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        if self.is_negative() {
            -1
        } else if self.is_zero() {
            0
        } else {
            1
        }
    }

    pub fn overflowing_add(&self, rhs: &Self) -> (Self, bool) {
        let mut out = [0u64; L];
        let mut carry = false;
        for i in 0..L {
            let (s, c) = carrying_add(self.limbs[i], rhs.limbs[i], carry);
            out[i] = s;
            carry = c;
        }
        let res = Self { limbs: out };
        // Signed overflow: both operands share a sign the result lost.
        let ovf = self.is_negative() == rhs.is_negative() && res.is_negative() != self.is_negative();
        (res, ovf)
    }

    pub fn overflowing_sub(&self, rhs: &Self) -> (Self, bool) {
        let mut out = [0u64; L];
        let mut borrow = false;
        for i in 0..L {
            let (d, b) = borrowing_sub(self.limbs[i], rhs.limbs[i], borrow);
            out[i] = d;
            borrow = b;
        }
        let res = Self { limbs: out };
        let ovf = self.is_negative() != rhs.is_negative() && res.is_negative() != self.is_negative();
        (res, ovf)
    }

    pub fn overflowing_neg(&self) -> (Self, bool) {
        let (res, _) = Self::ZERO.overflowing_sub(self);
        (res, *self == Self::MIN)
    }

    pub fn checked_add(&self, rhs: &Self) -> Option<Self> {
        match self.overflowing_add(rhs) {
            (v, false) => Some(v),
            _ => None,
        }
    }

    pub fn checked_sub(&self, rhs: &Self) -> Option<Self> {
        match self.overflowing_sub(rhs) {
            (v, false) => Some(v),
            _ => None,
        }
    }

    pub fn checked_neg(&self) -> Option<Self> {
        match self.overflowing_neg() {
            (v, false) => Some(v),
            _ => None,
        }
    }

    pub fn wrapping_add(&self, rhs: &Self) -> Self {
        self.overflowing_add(rhs).0
    }

    pub fn wrapping_sub(&self, rhs: &Self) -> Self {
        self.overflowing_sub(rhs).0
    }

    pub fn wrapping_neg(&self) -> Self {
        self.overflowing_neg().0
    }

    /// Magnitude as unsigned limbs. `MIN`'s magnitude still fits because the
    /// unsigned range is twice the positive signed range.
    fn magnitude(&self) -> [u64; L] {
        if self.is_negative() {
            self.wrapping_neg().limbs
        } else {
            self.limbs
        }
    }

    fn from_sign_magnitude(negative: bool, mag: [u64; L]) -> Self {
        let v = Self { limbs: mag };
        if negative {
            v.wrapping_neg()
        } else {
            v
        }
    }

    /// Exact product at a caller-chosen output width. Requires
    /// `LO >= L + R`; the product of an `L`-limb and an `R`-limb value always
    /// fits there, so this never overflows.
    pub fn widening_mul<const R: usize, const LO: usize>(
        &self,
        rhs: &WideInt<R>,
    ) -> WideInt<LO> {
        debug_assert!(LO >= L + R, "output width too narrow for exact product");
        let a = self.magnitude();
        let b = rhs.magnitude();
        let mut acc = [0u64; LO];
        mag_mul_acc(&a, &b, &mut acc);
        WideInt::from_sign_magnitude(self.is_negative() != rhs.is_negative(), acc)
    }

    /// Truncating product with a 64-bit factor plus an overflow flag.
    pub fn overflowing_mul_i64(&self, k: i64) -> (Self, bool) {
        self.overflowing_mul_i128(k as i128)
    }

    /// Truncating product with a 128-bit factor plus an overflow flag.
    pub fn overflowing_mul_i128(&self, k: i128) -> (Self, bool) {
        let neg = self.is_negative() != (k < 0);
        let a = self.magnitude();
        let km = k.unsigned_abs();
        let b = [km as u64, (km >> 64) as u64];
        // Two spare limbs so the magnitude product is always exact.
        let mut acc = [0u64; 10];
        let acc = &mut acc[..L + 2];
        mag_mul_acc(&a, &b, acc);
        let fits_mag = acc[L] == 0 && acc[L + 1] == 0;
        let mut out = [0u64; L];
        out.copy_from_slice(&acc[..L]);
        let res = Self::from_sign_magnitude(neg, out);
        // The magnitude must also leave the sign bit free, except for MIN.
        let fits = fits_mag
            && (out[L - 1] & SIGN_BIT == 0 || (neg && out[L - 1] == SIGN_BIT && out[..L - 1].iter().all(|&l| l == 0)));
        (res, !fits)
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        let (v, ovf) = self.overflowing_mul_i64(k);
        debug_assert!(!ovf, "mul_i64 overflow outside precision budget");
        v
    }

    pub fn mul_i128(&self, k: i128) -> Self {
        let (v, ovf) = self.overflowing_mul_i128(k);
        debug_assert!(!ovf, "mul_i128 overflow outside precision budget");
        v
    }

    /// Compare magnitudes.
    pub fn cmp_abs(&self, rhs: &Self) -> Ordering {
        mag_cmp(&self.magnitude(), &rhs.magnitude())
    }

    /// Greatest common divisor, always non-negative. `None` when both inputs
    /// are zero. Binary (shift/subtract) so no wide division is needed.
    pub fn gcd(&self, rhs: &Self) -> Option<Self> {
        let mut a = self.magnitude();
        let mut b = rhs.magnitude();
        if mag_is_zero(&a) && mag_is_zero(&b) {
            return None;
        }
        if mag_is_zero(&a) {
            return Some(Self { limbs: b });
        }
        if mag_is_zero(&b) {
            return Some(Self { limbs: a });
        }
        let shift = mag_trailing_zeros(&a).min(mag_trailing_zeros(&b));
        mag_shr(&mut a, mag_trailing_zeros(&a));
        loop {
            mag_shr(&mut b, mag_trailing_zeros(&b));
            if mag_cmp(&a, &b) == Ordering::Greater {
                std::mem::swap(&mut a, &mut b);
            }
            mag_sub(&mut b, &a);
            if mag_is_zero(&b) {
                break;
            }
        }
        mag_shl(&mut a, shift);
        Some(Self { limbs: a })
    }

    /// Nearest `f64`, round-to-nearest-even. Never overflows: even 512-bit
    /// values are far below `f64::MAX`.
    pub fn to_f64(&self) -> f64 {
        let neg = self.is_negative();
        let mag = self.magnitude();
        let bits = mag_bit_len(&mag);
        let v = if bits <= 53 {
            mag_low_u128(&mag) as f64
        } else {
            // Top 54 bits decide the rounding, the rest collapses to sticky.
            let shift = bits - 54;
            let mut top = mag_shifted_low(&mag, shift) & ((1u128 << 54) - 1);
            let sticky = mag_any_bit_below(&mag, shift);
            let round_bit = top & 1;
            top >>= 1;
            if round_bit == 1 && (sticky || top & 1 == 1) {
                top += 1;
            }
            (top as f64) * exp2(shift as i32 + 1)
        };
        if neg {
            -v
        } else {
            v
        }
    }

    /// Correctly rounded `num / den` as `f64` (round-to-nearest-even).
    /// `den` must be nonzero. Uses only shift/subtract long division.
    pub fn div_to_f64(num: &Self, den: &Self) -> f64 {
        assert!(!den.is_zero(), "division by zero");
        if num.is_zero() {
            return 0.0;
        }
        let neg = num.is_negative() != den.is_negative();
        let nm = num.magnitude();
        let dm = den.magnitude();
        let nb = mag_bit_len(&nm) as i32;
        let db = mag_bit_len(&dm) as i32;
        // Scale so floor(n*2^k / d) carries 55 or 56 significant bits: enough
        // for the 53-bit mantissa plus round and sticky information.
        let k = 55 - (nb - db);
        let mut n = [0u64; 24];
        let mut d = [0u64; 24];
        n[..L].copy_from_slice(&nm);
        d[..L].copy_from_slice(&dm);
        if k >= 0 {
            mag_shl(&mut n, k as u32);
        } else {
            mag_shl(&mut d, (-k) as u32);
        }
        // Restoring division, walking the divisor down bit by bit.
        let diff = mag_bit_len(&n) as i32 - mag_bit_len(&d) as i32;
        let mut q: u128 = 0;
        if diff >= 0 {
            mag_shl(&mut d, diff as u32);
            for _ in 0..=diff {
                q <<= 1;
                if mag_cmp(&n, &d) != Ordering::Less {
                    mag_sub(&mut n, &d);
                    q |= 1;
                }
                mag_shr(&mut d, 1);
            }
        }
        let sticky = !mag_is_zero(&n);
        // value = (q + eps) * 2^-k with eps > 0 iff sticky.
        let t_bits = 128 - q.leading_zeros() as i32;
        debug_assert!((55..=56).contains(&t_bits));
        let drop = (t_bits - 53) as u32;
        let mut mant = q >> drop;
        let round_bit = (q >> (drop - 1)) & 1 == 1;
        let sticky = sticky || q & ((1 << (drop - 1)) - 1) != 0;
        if round_bit && (sticky || mant & 1 == 1) {
            mant += 1;
        }
        let v = (mant as f64) * exp2(t_bits - 53 - k);
        if neg {
            -v
        } else {
            v
        }
    }

    /// Quotient and remainder by a small unsigned divisor. Requires a
    /// non-negative value.
    pub fn div_rem_u64(&self, d: u64) -> (Self, u64) {
        assert!(!self.is_negative(), "div_rem_u64 on negative value");
        let (q, r) = Self::mag_div_rem_u64(&self.limbs, d);
        (Self { limbs: q }, r)
    }

    /// Quotient and remainder by a small unsigned divisor, on the magnitude.
    /// Used for decimal printing; the sign is reapplied by the caller.
    fn mag_div_rem_u64(mag: &[u64; L], d: u64) -> ([u64; L], u64) {
        assert!(d != 0);
        let mut q = [0u64; L];
        let mut rem: u128 = 0;
        for i in (0..L).rev() {
            let cur = rem << 64 | mag[i] as u128;
            q[i] = (cur / d as u128) as u64;
            rem = cur % d as u128;
        }
        (q, rem as u64)
    }

    pub fn to_le_bytes(&self) -> Vec<u8> {
        self.limbs.iter().flat_map(|l| l.to_le_bytes()).collect()
    }

    pub fn from_le_bytes(bytes: &[u8]) -> Option<Self> {
        if bytes.len() != 8 * L {
            return None;
        }
        let mut limbs = [0u64; L];
        for (i, chunk) in bytes.chunks_exact(8).enumerate() {
            limbs[i] = u64::from_le_bytes(chunk.try_into().unwrap());
        }
        Some(Self { limbs })
    }

    pub fn from_str_radix(s: &str, radix: u32) -> Result<Self, ParseWideIntError> {
        assert!(radix == 10 || radix == 16, "supported radices: 10, 16");
        let (neg, digits) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let digits = digits.strip_prefix("0x").unwrap_or(digits);
        if digits.is_empty() {
            return Err(ParseWideIntError::Empty);
        }
        let mut mag = [0u64; L];
        for ch in digits.chars() {
            let d = ch.to_digit(radix).ok_or(ParseWideIntError::InvalidDigit(ch))? as u64;
            if mag_mul_small_add(&mut mag, radix as u64, d) {
                return Err(ParseWideIntError::Overflow);
            }
        }
        // Magnitude must leave room for the sign, except exactly MIN.
        if mag[L - 1] & SIGN_BIT != 0 {
            let is_min = neg && mag[L - 1] == SIGN_BIT && mag[..L - 1].iter().all(|&l| l == 0);
            if !is_min {
                return Err(ParseWideIntError::Overflow);
            }
        }
        Ok(Self::from_sign_magnitude(neg, mag))
    }
}

impl<const L: usize> Ord for WideInt<L> {
    fn cmp(&self, other: &Self) -> Ordering {
        // Flip the top limb's sign bit, then compare as unsigned.
        let a = self.limbs[L - 1] ^ SIGN_BIT;
        let b = other.limbs[L - 1] ^ SIGN_BIT;
        a.cmp(&b).then_with(|| {
            for i in (0..L - 1).rev() {
                match self.limbs[i].cmp(&other.limbs[i]) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl<const L: usize> PartialOrd for WideInt<L> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<const L: usize> std::ops::Add for WideInt<L> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (v, ovf) = self.overflowing_add(&rhs);
        debug_assert!(!ovf, "add overflow outside precision budget");
        v
    }
}

impl<const L: usize> std::ops::Sub for WideInt<L> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let (v, ovf) = self.overflowing_sub(&rhs);
        debug_assert!(!ovf, "sub overflow outside precision budget");
        v
    }
}

impl<const L: usize> std::ops::Neg for WideInt<L> {
    type Output = Self;
    fn neg(self) -> Self {
        let (v, ovf) = self.overflowing_neg();
        debug_assert!(!ovf, "neg overflow (MIN)");
        v
    }
}

impl<const L: usize> fmt::Display for WideInt<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut mag = self.magnitude();
        let mut out = Vec::new();
        while !mag_is_zero(&mag) {
            let (q, r) = Self::mag_div_rem_u64(&mag, 10_000_000_000_000_000_000);
            mag = q;
            if mag_is_zero(&mag) {
                out.push(format!("{}", r));
            } else {
                out.push(format!("{:019}", r));
            }
        }
        if self.is_negative() {
            f.write_str("-")?;
        }
        for part in out.iter().rev() {
            f.write_str(part)?;
        }
        Ok(())
    }
}

impl<const L: usize> fmt::Debug for WideInt<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<const L: usize> fmt::LowerHex for WideInt<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_negative() {
            f.write_str("-")?;
        }
        let mag = self.magnitude();
        let mut started = false;
        for i in (0..L).rev() {
            if started {
                write!(f, "{:016x}", mag[i])?;
            } else if mag[i] != 0 || i == 0 {
                write!(f, "{:x}", mag[i])?;
                started = true;
            }
        }
        Ok(())
    }
}

impl<const L: usize> FromStr for WideInt<L> {
    type Err = ParseWideIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_str_radix(s, 10)
    }
}

impl<const L: usize> From<i64> for WideInt<L> {
    fn from(v: i64) -> Self {
        Self::from_i64(v)
    }
}

impl<const L: usize> From<i128> for WideInt<L> {
    fn from(v: i128) -> Self {
        Self::from_i128(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseWideIntError {
    #[error("empty integer literal")]
    Empty,
    #[error("invalid digit {0:?}")]
    InvalidDigit(char),
    #[error("literal does not fit the width")]
    Overflow,
}

#[inline]
fn carrying_add(a: u64, b: u64, carry: bool) -> (u64, bool) {
    let (s1, c1) = a.overflowing_add(b);
    let (s2, c2) = s1.overflowing_add(carry as u64);
    (s2, c1 | c2)
}

#[inline]
fn borrowing_sub(a: u64, b: u64, borrow: bool) -> (u64, bool) {
    let (d1, b1) = a.overflowing_sub(b);
    let (d2, b2) = d1.overflowing_sub(borrow as u64);
    (d2, b1 | b2)
}

/// Schoolbook `acc += a * b` over unsigned limb slices. `acc` must be long
/// enough for the exact product.
fn mag_mul_acc(a: &[u64], b: &[u64], acc: &mut [u64]) {
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        let mut carry: u128 = 0;
        for (j, &bj) in b.iter().enumerate() {
            let cur = acc[i + j] as u128 + ai as u128 * bj as u128 + carry;
            acc[i + j] = cur as u64;
            carry = cur >> 64;
        }
        let mut k = i + b.len();
        while carry != 0 {
            let cur = acc[k] as u128 + carry;
            acc[k] = cur as u64;
            carry = cur >> 64;
            k += 1;
        }
    }
}

fn mag_is_zero(m: &[u64]) -> bool {
    m.iter().all(|&l| l == 0)
}

fn mag_cmp(a: &[u64], b: &[u64]) -> Ordering {
    debug_assert_eq!(a.len(), b.len());
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

fn mag_trailing_zeros(m: &[u64]) -> u32 {
    for (i, &l) in m.iter().enumerate() {
        if l != 0 {
            return i as u32 * 64 + l.trailing_zeros();
        }
    }
    0
}

fn mag_bit_len(m: &[u64]) -> u32 {
    for i in (0..m.len()).rev() {
        if m[i] != 0 {
            return i as u32 * 64 + 64 - m[i].leading_zeros();
        }
    }
    0
}

fn mag_shr(m: &mut [u64], shift: u32) {
    let limbs = (shift / 64) as usize;
    let bits = shift % 64;
    let n = m.len();
    if limbs >= n {
        m.fill(0);
        return;
    }
    if limbs > 0 {
        m.copy_within(limbs..n, 0);
        m[n - limbs..].fill(0);
    }
    if bits > 0 {
        let mut carry = 0u64;
        for i in (0..n - limbs).rev() {
            let cur = m[i];
            m[i] = cur >> bits | carry;
            carry = cur << (64 - bits);
        }
    }
}

fn mag_shl(m: &mut [u64], shift: u32) {
    let limbs = (shift / 64) as usize;
    let bits = shift % 64;
    let n = m.len();
    if limbs >= n {
        m.fill(0);
        return;
    }
    if limbs > 0 {
        m.copy_within(0..n - limbs, limbs);
        m[..limbs].fill(0);
    }
    if bits > 0 {
        let mut carry = 0u64;
        for item in m.iter_mut().skip(limbs) {
            let cur = *item;
            *item = cur << bits | carry;
            carry = cur >> (64 - bits);
        }
    }
}

/// `a -= b`, requires `a >= b`.
fn mag_sub(a: &mut [u64], b: &[u64]) {
    let mut borrow = false;
    for i in 0..a.len() {
        let (d, br) = borrowing_sub(a[i], b[i], borrow);
        a[i] = d;
        borrow = br;
    }
    debug_assert!(!borrow, "mag_sub underflow");
}

/// `m = m * k + d`, returns true on overflow of the magnitude.
fn mag_mul_small_add(m: &mut [u64], k: u64, d: u64) -> bool {
    let mut carry = d as u128;
    for limb in m.iter_mut() {
        let cur = *limb as u128 * k as u128 + carry;
        *limb = cur as u64;
        carry = cur >> 64;
    }
    carry != 0
}

fn mag_low_u128(m: &[u64]) -> u128 {
    m[0] as u128 | (m.get(1).copied().unwrap_or(0) as u128) << 64
}

/// The 128 bits of `m >> shift` (low part).
fn mag_shifted_low(m: &[u64], shift: u32) -> u128 {
    let limb = (shift / 64) as usize;
    let bits = shift % 64;
    let get = |i: usize| m.get(i).copied().unwrap_or(0) as u128;
    let lo = get(limb) | get(limb + 1) << 64;
    if bits == 0 {
        lo
    } else {
        lo >> bits | get(limb + 2) << (128 - bits as usize)
    }
}

fn mag_any_bit_below(m: &[u64], shift: u32) -> bool {
    let limb = (shift / 64) as usize;
    let bits = shift % 64;
    for &l in m.iter().take(limb) {
        if l != 0 {
            return true;
        }
    }
    if bits > 0 {
        if let Some(&l) = m.get(limb) {
            if l & ((1u64 << bits) - 1) != 0 {
                return true;
            }
        }
    }
    false
}

/// Exact power of two as f64; inputs stay well inside the finite range here.
fn exp2(e: i32) -> f64 {
    f64::from_bits(((1023 + e) as u64) << 52)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i256(s: &str) -> I256 {
        s.parse().unwrap()
    }

    #[test]
    fn add_identities_and_carries() {
        let x = i256("123456789012345678901234567890");
        assert_eq!(I256::ZERO + x, x);
        // 2^100 + 2^100 = 2^101 at width 128
        let p100 = I128::from_str_radix("10000000000000000000000000", 16).unwrap();
        let p101 = I128::from_str_radix("20000000000000000000000000", 16).unwrap();
        assert_eq!(p100 + p100, p101);
    }

    #[test]
    fn add_overflow_at_boundary() {
        // (2^127 - 1) + 1 overflows width 128.
        let max = I128::MAX;
        assert_eq!(max.checked_add(&I128::from_i64(1)), None);
        let (wrapped, ovf) = max.overflowing_add(&I128::from_i64(1));
        assert!(ovf);
        assert_eq!(wrapped, I128::MIN);
        assert_eq!(I128::MIN.checked_neg(), None);
    }

    #[test]
    fn mul_schoolbook_expansion() {
        // (2^64 + 3) * (2^64 + 5) = 2^128 + 8*2^64 + 15
        let a = I128::from_le_bytes(&{
            let mut b = [0u8; 16];
            b[0] = 3;
            b[8] = 1;
            b
        })
        .unwrap();
        let b = I128::from_le_bytes(&{
            let mut b = [0u8; 16];
            b[0] = 5;
            b[8] = 1;
            b
        })
        .unwrap();
        let prod: I256 = a.widening_mul(&b);
        let expect = i256("340282366920938463463374607431768211456") // 2^128
            .wrapping_add(&I256::from_i128(8 * (1i128 << 64) + 15));
        assert_eq!(prod, expect);
        // multiplicative identity
        let one = I128::from_i64(1);
        let id: I256 = a.widening_mul(&one);
        assert_eq!(id.to_i128(), a.to_i128());
    }

    #[test]
    fn sign_cases() {
        assert_eq!(I256::ZERO.signum(), 0);
        assert_eq!(I256::from_i64(-5).signum(), -1);
        // 2^200 at width 256 is positive
        let mut limbs = [0u64; 4];
        limbs[3] = 1 << (200 - 192);
        assert_eq!(I256::from_limbs(limbs).signum(), 1);
    }

    #[test]
    fn gcd_basics() {
        let g = I192::from_i64(12).gcd(&I192::from_i64(18)).unwrap();
        assert_eq!(g, I192::from_i64(6));
        let g = I192::from_i64(-42).gcd(&I192::ZERO).unwrap();
        assert_eq!(g, I192::from_i64(42));
        assert_eq!(I192::ZERO.gcd(&I192::ZERO), None);
    }

    #[test]
    fn to_f64_rounding() {
        assert_eq!(I256::ZERO.to_f64(), 0.0);
        let p60 = I256::from_i128(1 << 60);
        assert_eq!(p60.to_f64(), (1u64 << 60) as f64);
        // 2^64 + 1 rounds down to 2^64 (53-bit mantissa, ties to even)
        let v = I256::from_i128((1i128 << 64) + 1);
        assert_eq!(v.to_f64(), 2f64.powi(64));
        // 2^64 + 2^11 is an exact tie -> even (also 2^64)
        let tie = I256::from_i128((1i128 << 64) + (1 << 11));
        assert_eq!(tie.to_f64(), 2f64.powi(64));
        // just above the tie rounds up
        let above = I256::from_i128((1i128 << 64) + (1 << 11) + 1);
        assert_eq!(above.to_f64(), 2f64.powi(64) + 2f64.powi(12));
    }

    #[test]
    fn div_to_f64_correctly_rounded() {
        let third = I256::div_to_f64(&I256::from_i64(1), &I256::from_i64(3));
        assert_eq!(third, 1.0f64 / 3.0f64);
        let v = I256::div_to_f64(&I256::from_i64(-7), &I256::from_i64(2));
        assert_eq!(v, -3.5);
        let exact = I256::div_to_f64(&I256::from_i128(1 << 80), &I256::from_i128(1 << 10));
        assert_eq!(exact, 2f64.powi(70));
    }

    #[test]
    fn decimal_and_hex_round_trip() {
        for s in ["0", "-1", "123456789", "-170141183460469231731687303715884105728"] {
            let v: I128 = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        let v = I256::from_str_radix("deadbeefcafebabe", 16).unwrap();
        assert_eq!(format!("{:x}", v), "deadbeefcafebabe");
        assert_eq!(I128::from_str_radix("fffffffffffffffffffffffffffffffff", 16), Err(ParseWideIntError::Overflow));
    }

    #[test]
    fn le_bytes_round_trip() {
        let v = i256("-98765432109876543210987654321");
        let bytes = v.to_le_bytes();
        assert_eq!(bytes.len(), 32);
        assert_eq!(I256::from_le_bytes(&bytes).unwrap(), v);
    }

    #[test]
    fn ordering_is_signed() {
        assert!(I128::from_i64(-1) < I128::ZERO);
        assert!(I128::MIN < I128::MAX);
        assert!(I128::from_i64(3) < I128::from_i64(4));
        assert_eq!(I128::from_i64(-3).cmp_abs(&I128::from_i64(3)), Ordering::Equal);
    }
}
