//! Integer planes, homogeneous 4D points, and the exact predicates over them.
//!
//! A [`Plane`] is the only geometric primitive in the system: `a*x + b*y +
//! c*z + d = 0` with integer coefficients, oriented (a plane and its negation
//! are distinct), and canonical (content divided out, sign preserved).
//! Vertices are never stored as coordinates; they exist as the intersection
//! of three planes, kept as homogeneous 4D integer points ([`HomoPoint`]).
//!
//! All predicates are exact. Overflow never happens as long as inputs respect
//! a [`PrecisionBudget`]; the budget inequality bounds the largest
//! intermediate (the classification dot product) by `2^(bits-1)`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use crate::error::Error;
use crate::wideint::{WideInt, I256, I512};

/// Which side of an oriented plane a point is on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Neg,
    On,
    Pos,
}

impl Side {
    pub fn sign(self) -> i8 {
        match self {
            Side::Neg => -1,
            Side::On => 0,
            Side::Pos => 1,
        }
    }

    pub fn from_sign(s: i8) -> Side {
        match s.cmp(&0) {
            Ordering::Less => Side::Neg,
            Ordering::Equal => Side::On,
            Ordering::Greater => Side::Pos,
        }
    }

    pub fn flip(self) -> Side {
        match self {
            Side::Neg => Side::Pos,
            Side::On => Side::On,
            Side::Pos => Side::Neg,
        }
    }

    pub fn is_on(self) -> bool {
        self == Side::On
    }
}

/// Oriented integer plane `a*x + b*y + c*z + d = 0`, canonical form
/// (gcd of all four coefficients is 1, orientation preserved).
///
/// The normal components fit 64 bits and the offset 128; within any supported
/// precision budget the actual magnitudes are far smaller (the 256-bit budget
/// caps normals near 2^56 and offsets near 2^84).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Plane {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i128,
}

impl Plane {
    /// Canonicalize and build. Panics if the normal is zero.
    pub fn new(a: i64, b: i64, c: i64, d: i128) -> Plane {
        assert!(a != 0 || b != 0 || c != 0, "plane normal must be nonzero");
        let g = gcd_u128(
            gcd_u128(a.unsigned_abs() as u128, b.unsigned_abs() as u128),
            gcd_u128(c.unsigned_abs() as u128, d.unsigned_abs()),
        ) as i128;
        debug_assert!(g != 0);
        Plane {
            a: (a as i128 / g) as i64,
            b: (b as i128 / g) as i64,
            c: (c as i128 / g) as i64,
            d: d / g,
        }
    }

    /// The same plane with reversed orientation.
    pub fn negated(&self) -> Plane {
        Plane {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }

    pub fn normal(&self) -> [i64; 3] {
        [self.a, self.b, self.c]
    }

    /// Axis-aligned plane `x_axis = coord`, oriented along +axis.
    pub fn axis(axis: usize, coord: i64) -> Plane {
        let mut n = [0i64; 3];
        n[axis] = 1;
        Plane {
            a: n[0],
            b: n[1],
            c: n[2],
            d: -(coord as i128),
        }
    }

    /// Exact sign of `n·v + d` for an integer point.
    pub fn side_of_int_point(&self, v: [i64; 3]) -> Side {
        let e = self.a as i128 * v[0] as i128
            + self.b as i128 * v[1] as i128
            + self.c as i128 * v[2] as i128
            + self.d;
        Side::from_sign(match e.cmp(&0) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        })
    }
}

/// Plane through three integer points with normal `(v2-v1) x (v3-v1)`,
/// divided by content. Orientation follows the winding.
pub fn plane_from_points(v1: [i64; 3], v2: [i64; 3], v3: [i64; 3]) -> Result<Plane, Error> {
    for v in [&v1, &v2, &v3] {
        if v.iter().any(|&c| c.unsigned_abs() > 1 << 61) {
            return Err(Error::BudgetExceeded);
        }
    }
    let e12 = [
        v2[0] as i128 - v1[0] as i128,
        v2[1] as i128 - v1[1] as i128,
        v2[2] as i128 - v1[2] as i128,
    ];
    let e13 = [
        v3[0] as i128 - v1[0] as i128,
        v3[1] as i128 - v1[1] as i128,
        v3[2] as i128 - v1[2] as i128,
    ];
    let n = [
        e12[1] * e13[2] - e12[2] * e13[1],
        e12[2] * e13[0] - e12[0] * e13[2],
        e12[0] * e13[1] - e12[1] * e13[0],
    ];
    if n == [0, 0, 0] {
        return Err(Error::CollinearPoints);
    }
    for &c in &n {
        if c.unsigned_abs() > i64::MAX as u128 {
            return Err(Error::BudgetExceeded);
        }
    }
    let d = -(n[0] * v1[0] as i128 + n[1] * v1[1] as i128 + n[2] * v1[2] as i128);
    Ok(Plane::new(n[0] as i64, n[1] as i64, n[2] as i64, d))
}

/// True iff the normals are parallel (cross product zero), regardless of
/// orientation or offset.
pub fn are_planes_parallel(p: &Plane, q: &Plane) -> bool {
    let cx = p.b as i128 * q.c as i128 - p.c as i128 * q.b as i128;
    let cy = p.c as i128 * q.a as i128 - p.a as i128 * q.c as i128;
    let cz = p.a as i128 * q.b as i128 - p.b as i128 * q.a as i128;
    cx == 0 && cy == 0 && cz == 0
}

/// Integer arithmetic width a predicate evaluation runs at.
///
/// Monomorphizing on this keeps the per-width hot paths branch-free; the
/// 512-bit scratch type is shared by all widths for cross-multiplied
/// comparisons.
pub trait Width: Copy + Clone + fmt::Debug + Default + Send + Sync + 'static {
    const BITS: u32;
    type Int: CoordInt;
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct W128;
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct W192;
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct W256;

impl Width for W128 {
    const BITS: u32 = 128;
    type Int = WideInt<2>;
}
impl Width for W192 {
    const BITS: u32 = 192;
    type Int = WideInt<3>;
}
impl Width for W256 {
    const BITS: u32 = 256;
    type Int = WideInt<4>;
}

/// Operations the predicates need from a fixed-width coordinate integer.
pub trait CoordInt:
    Copy + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    const BITS: u32;
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_i128(v: i128) -> Self;
    fn to_i128(&self) -> Option<i128>;
    fn is_zero(&self) -> bool;
    fn signum(&self) -> i8;
    fn neg(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn overflowing_add(&self, o: &Self) -> (Self, bool);
    fn overflowing_sub(&self, o: &Self) -> (Self, bool);
    fn mul_i64(&self, k: i64) -> Self;
    fn mul_i128(&self, k: i128) -> Self;
    fn overflowing_mul_i64(&self, k: i64) -> (Self, bool);
    fn overflowing_mul_i128(&self, k: i128) -> (Self, bool);
    /// Exact signed product of two 128-bit values, truncated to this width.
    fn prod_i128(a: i128, b: i128) -> Self;
    fn overflowing_prod_i128(a: i128, b: i128) -> (Self, bool);
    /// Exact signed product at the 512-bit scratch width.
    fn mul_full_512(&self, o: &Self) -> I512;
    fn cmp_abs(&self, o: &Self) -> Ordering;
    fn to_f64(&self) -> f64;
    fn div_to_f64(num: &Self, den: &Self) -> f64;
    fn to_le_bytes(&self) -> Vec<u8>;
}

macro_rules! impl_coord_int {
    ($limbs:expr) => {
        impl CoordInt for WideInt<$limbs> {
            const BITS: u32 = 64 * $limbs;
            fn zero() -> Self {
                Self::ZERO
            }
            fn from_i64(v: i64) -> Self {
                Self::from_i64(v)
            }
            fn from_i128(v: i128) -> Self {
                Self::from_i128(v)
            }
            fn to_i128(&self) -> Option<i128> {
                WideInt::to_i128(self)
            }
            fn is_zero(&self) -> bool {
                WideInt::is_zero(self)
            }
            fn signum(&self) -> i8 {
                WideInt::signum(self)
            }
            fn neg(&self) -> Self {
                -*self
            }
            fn add(&self, o: &Self) -> Self {
                *self + *o
            }
            fn sub(&self, o: &Self) -> Self {
                *self - *o
            }
            fn overflowing_add(&self, o: &Self) -> (Self, bool) {
                WideInt::overflowing_add(self, o)
            }
            fn overflowing_sub(&self, o: &Self) -> (Self, bool) {
                WideInt::overflowing_sub(self, o)
            }
            fn mul_i64(&self, k: i64) -> Self {
                WideInt::mul_i64(self, k)
            }
            fn mul_i128(&self, k: i128) -> Self {
                WideInt::mul_i128(self, k)
            }
            fn overflowing_mul_i64(&self, k: i64) -> (Self, bool) {
                WideInt::overflowing_mul_i64(self, k)
            }
            fn overflowing_mul_i128(&self, k: i128) -> (Self, bool) {
                WideInt::overflowing_mul_i128(self, k)
            }
            fn prod_i128(a: i128, b: i128) -> Self {
                let (v, ovf) = Self::overflowing_prod_i128(a, b);
                debug_assert!(!ovf, "prod_i128 overflow outside precision budget");
                v
            }
            fn overflowing_prod_i128(a: i128, b: i128) -> (Self, bool) {
                prod_i128_truncated(a, b)
            }
            fn mul_full_512(&self, o: &Self) -> I512 {
                self.widening_mul(o)
            }
            fn cmp_abs(&self, o: &Self) -> Ordering {
                WideInt::cmp_abs(self, o)
            }
            fn to_f64(&self) -> f64 {
                WideInt::to_f64(self)
            }
            fn div_to_f64(num: &Self, den: &Self) -> f64 {
                WideInt::div_to_f64(num, den)
            }
            fn to_le_bytes(&self) -> Vec<u8> {
                WideInt::to_le_bytes(self)
            }
        }
    };
}

impl_coord_int!(2);
impl_coord_int!(3);
impl_coord_int!(4);

/// Full 256-bit magnitude product of two u128.
fn u128_mul_mag(a: u128, b: u128) -> [u64; 4] {
    let (a0, a1) = (a as u64 as u128, a >> 64);
    let (b0, b1) = (b as u64 as u128, b >> 64);
    let ll = a0 * b0;
    let lh = a0 * b1;
    let hl = a1 * b0;
    let hh = a1 * b1;
    let mid = (ll >> 64) + (lh as u64 as u128) + (hl as u64 as u128);
    let high = hh + (lh >> 64) + (hl >> 64) + (mid >> 64);
    [ll as u64, mid as u64, high as u64, (high >> 64) as u64]
}

fn prod_i128_truncated<const L: usize>(a: i128, b: i128) -> (WideInt<L>, bool) {
    let neg = (a < 0) != (b < 0);
    let mag = u128_mul_mag(a.unsigned_abs(), b.unsigned_abs());
    let mut out = [0u64; L];
    let take = L.min(4);
    out[..take].copy_from_slice(&mag[..take]);
    let mut fits = mag[take..].iter().all(|&l| l == 0);
    // The truncated magnitude must leave the sign bit free (MIN excepted).
    if out[L - 1] >> 63 != 0 {
        fits = neg && out[L - 1] == 1 << 63 && out[..L - 1].iter().all(|&l| l == 0);
    }
    let v = WideInt::from_limbs(out);
    (if neg { v.wrapping_neg() } else { v }, !fits)
}

/// Homogeneous 4D integer point; Euclidean position is `(x[0],x[1],x[2])/x[3]`.
///
/// Produced by [`intersect_3_planes`]; `x[3]` is nonzero for every valid
/// point. Equality of geometric positions is projective, see
/// [`HomoPoint::projective_eq`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HomoPoint<W: Width> {
    pub x: [W::Int; 4],
}

impl<W: Width> HomoPoint<W> {
    pub fn from_int_point(v: [i64; 3]) -> Self {
        HomoPoint {
            x: [
                W::Int::from_i64(v[0]),
                W::Int::from_i64(v[1]),
                W::Int::from_i64(v[2]),
                W::Int::from_i64(1),
            ],
        }
    }

    /// Same geometric position, i.e. `x_i * y_4 == y_i * x_4` for i in 0..3.
    pub fn projective_eq(&self, other: &Self) -> bool {
        (0..3).all(|i| {
            self.x[i].mul_full_512(&other.x[3]) == other.x[i].mul_full_512(&self.x[3])
        })
    }

    /// Euclidean coordinates, each correctly rounded to the nearest f64.
    pub fn to_f64_point(&self) -> [f64; 3] {
        [
            W::Int::div_to_f64(&self.x[0], &self.x[3]),
            W::Int::div_to_f64(&self.x[1], &self.x[3]),
            W::Int::div_to_f64(&self.x[2], &self.x[3]),
        ]
    }

    /// Exact ordering of the Euclidean `axis` coordinates of two points.
    pub fn cmp_along_axis(&self, other: &Self, axis: usize) -> Ordering {
        let lhs = self.x[axis].mul_full_512(&other.x[3]);
        let rhs = other.x[axis].mul_full_512(&self.x[3]);
        let ord = lhs.cmp(&rhs);
        if self.x[3].signum() * other.x[3].signum() < 0 {
            ord.reverse()
        } else {
            ord
        }
    }
}

/// The classification dot product `x^T s`, exact within budget.
#[inline]
fn dot<W: Width>(x: &HomoPoint<W>, s: &Plane) -> W::Int {
    let t0 = x.x[0].mul_i64(s.a);
    let t1 = x.x[1].mul_i64(s.b);
    let t2 = x.x[2].mul_i64(s.c);
    let t3 = x.x[3].mul_i128(s.d);
    t0.add(&t1).add(&t2).add(&t3)
}

fn try_dot<W: Width>(x: &HomoPoint<W>, s: &Plane) -> Result<W::Int, Error> {
    let (t0, o0) = x.x[0].overflowing_mul_i64(s.a);
    let (t1, o1) = x.x[1].overflowing_mul_i64(s.b);
    let (t2, o2) = x.x[2].overflowing_mul_i64(s.c);
    let (t3, o3) = x.x[3].overflowing_mul_i128(s.d);
    let (s1, o4) = t0.overflowing_add(&t1);
    let (s2, o5) = s1.overflowing_add(&t2);
    let (s3, o6) = s2.overflowing_add(&t3);
    if o0 || o1 || o2 || o3 || o4 || o5 || o6 {
        Err(Error::PredicateOverflow)
    } else {
        Ok(s3)
    }
}

/// Which side of `s` the point `x` lies on: `sign(x^T s) * sign(x_4)`.
#[inline]
pub fn classify_vertex<W: Width>(x: &HomoPoint<W>, s: &Plane) -> Side {
    let n = dot(x, s);
    Side::from_sign(n.signum() * x.x[3].signum())
}

/// Checked classification; reports instead of relying on the budget.
pub fn try_classify_vertex<W: Width>(x: &HomoPoint<W>, s: &Plane) -> Result<Side, Error> {
    let n = try_dot(x, s)?;
    Ok(Side::from_sign(n.signum() * x.x[3].signum()))
}

/// Orders `|dist(x, s)|` against `|dist(y, s)|` exactly, by comparing
/// `|x^T s| * |y_4|` with `|y^T s| * |x_4|` at the 512-bit scratch width.
pub fn compare_abs_distance<W: Width>(
    x: &HomoPoint<W>,
    y: &HomoPoint<W>,
    s: &Plane,
) -> Ordering {
    let dx = dot(x, s);
    let dy = dot(y, s);
    let lhs = dx.mul_full_512(&y.x[3]);
    let rhs = dy.mul_full_512(&x.x[3]);
    lhs.cmp_abs(&rhs)
}

/// Intersection point of three planes as the cofactor expansion of the 4x4
/// determinant with unit-vector first row; `x[3]` is the (signed) normal
/// determinant. `None` when the planes do not meet in a unique point.
pub fn intersect_3_planes<W: Width>(p: &Plane, q: &Plane, r: &Plane) -> Option<HomoPoint<W>> {
    let x = HomoPoint {
        x: [
            det3::<W>(p.b, p.c, p.d, q.b, q.c, q.d, r.b, r.c, r.d),
            det3::<W>(p.a, p.c, p.d, q.a, q.c, q.d, r.a, r.c, r.d).neg(),
            det3::<W>(p.a, p.b, p.d, q.a, q.b, q.d, r.a, r.b, r.d),
            det3::<W>(p.a, p.b, p.c as i128, q.a, q.b, q.c as i128, r.a, r.b, r.c as i128)
                .neg(),
        ],
    };
    if x.x[3].is_zero() {
        None
    } else {
        Some(x)
    }
}

/// Checked variant of [`intersect_3_planes`].
pub fn try_intersect_3_planes<W: Width>(
    p: &Plane,
    q: &Plane,
    r: &Plane,
) -> Result<Option<HomoPoint<W>>, Error> {
    let x = HomoPoint {
        x: [
            try_det3::<W>(p.b, p.c, p.d, q.b, q.c, q.d, r.b, r.c, r.d)?,
            try_det3::<W>(p.a, p.c, p.d, q.a, q.c, q.d, r.a, r.c, r.d)?.neg(),
            try_det3::<W>(p.a, p.b, p.d, q.a, q.b, q.d, r.a, r.b, r.d)?,
            try_det3::<W>(p.a, p.b, p.c as i128, q.a, q.b, q.c as i128, r.a, r.b, r.c as i128)?
                .neg(),
        ],
    };
    if x.x[3].is_zero() {
        Ok(None)
    } else {
        Ok(Some(x))
    }
}

/// 3x3 determinant with 64-bit first two columns and a 128-bit third column,
/// expanded along the third column. The 2x2 minors of 64-bit entries are
/// exact in i128; the remaining products run at the target width.
#[inline]
fn det3<W: Width>(
    u1: i64,
    v1: i64,
    w1: i128,
    u2: i64,
    v2: i64,
    w2: i128,
    u3: i64,
    v3: i64,
    w3: i128,
) -> W::Int {
    let m1 = u2 as i128 * v3 as i128 - u3 as i128 * v2 as i128;
    let m2 = u1 as i128 * v3 as i128 - u3 as i128 * v1 as i128;
    let m3 = u1 as i128 * v2 as i128 - u2 as i128 * v1 as i128;
    let t1 = W::Int::prod_i128(w1, m1);
    let t2 = W::Int::prod_i128(w2, m2);
    let t3 = W::Int::prod_i128(w3, m3);
    t1.sub(&t2).add(&t3)
}

#[allow(clippy::too_many_arguments)]
fn try_det3<W: Width>(
    u1: i64,
    v1: i64,
    w1: i128,
    u2: i64,
    v2: i64,
    w2: i128,
    u3: i64,
    v3: i64,
    w3: i128,
) -> Result<W::Int, Error> {
    let m1 = u2 as i128 * v3 as i128 - u3 as i128 * v2 as i128;
    let m2 = u1 as i128 * v3 as i128 - u3 as i128 * v1 as i128;
    let m3 = u1 as i128 * v2 as i128 - u2 as i128 * v1 as i128;
    let (t1, o1) = W::Int::overflowing_prod_i128(w1, m1);
    let (t2, o2) = W::Int::overflowing_prod_i128(w2, m2);
    let (t3, o3) = W::Int::overflowing_prod_i128(w3, m3);
    let (s1, o4) = t1.overflowing_sub(&t2);
    let (s2, o5) = s1.overflowing_add(&t3);
    if o1 || o2 || o3 || o4 || o5 {
        Err(Error::PredicateOverflow)
    } else {
        Ok(s2)
    }
}

/// Input magnitude limits that guarantee overflow-free exact predicates at a
/// given bit budget.
///
/// The governing inequality is `48 * n+^4 * v+ <= 2^(bits-1)`; the offset
/// bound is the conservative `d+ = 3 * v+ * n+`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionBudget {
    pub bits: u32,
    pub v_plus: i64,
    pub n_plus: i64,
    pub d_plus: i128,
}

impl PrecisionBudget {
    pub fn new(bits: u32, v_plus: i64, n_plus: i64) -> Result<PrecisionBudget, Error> {
        if !matches!(bits, 128 | 192 | 256) || v_plus < 1 || n_plus < 1 {
            return Err(Error::BudgetExceeded);
        }
        // 48 * n^4 * v <= 2^(bits-1), evaluated exactly at 512 bits.
        let n2 = n_plus as i128 * n_plus as i128;
        let lhs = I512::from_i128(n2)
            .mul_i128(n2)
            .mul_i128(v_plus as i128)
            .mul_i64(48);
        let mut bound_limbs = [0u64; 8];
        bound_limbs[((bits - 1) / 64) as usize] = 1 << ((bits - 1) % 64);
        let bound = I512::from_limbs(bound_limbs);
        if lhs > bound {
            return Err(Error::BudgetExceeded);
        }
        let d_plus = 3i128
            .checked_mul(v_plus as i128)
            .and_then(|t| t.checked_mul(n_plus as i128))
            .ok_or(Error::BudgetExceeded)?;
        Ok(PrecisionBudget {
            bits,
            v_plus,
            n_plus,
            d_plus,
        })
    }

    /// The budget for meshes whose normals come from vertex cross products:
    /// `v+` maximal per the ninth-root bound, `n+ = 8 * v+^2`.
    pub fn for_cross_product_normals(bits: u32) -> Result<PrecisionBudget, Error> {
        let v = max_vertex_bound(bits, true)
            .to_i128()
            .ok_or(Error::BudgetExceeded)? as i64;
        PrecisionBudget::new(bits, v, 8 * v * v)
    }

    pub fn contains_vertex(&self, v: [i64; 3]) -> bool {
        v.iter().all(|&c| c.unsigned_abs() <= self.v_plus as u64)
    }

    pub fn contains_plane(&self, p: &Plane) -> bool {
        p.a.unsigned_abs() <= self.n_plus as u64
            && p.b.unsigned_abs() <= self.n_plus as u64
            && p.c.unsigned_abs() <= self.n_plus as u64
            && p.d.unsigned_abs() <= self.d_plus as u128
    }

    /// Grid resolution when a domain of `extent` model units maps onto the
    /// full vertex range (e.g. 1.0 => 0.22 mm at 128 bits).
    pub fn resolution(&self, extent: f64) -> f64 {
        extent / self.v_plus as f64
    }
}

/// Largest safe vertex coordinate for a bit budget.
///
/// With `normals_from_cross_products` the bound is the integer ninth root of
/// `2^(bits-1) / 196608`; otherwise normals are assumed unit (`n+ = 1`) and
/// the bound is `2^(bits-1) / 48`.
pub fn max_vertex_bound(bits: u32, normals_from_cross_products: bool) -> I256 {
    assert!(matches!(bits, 128 | 192 | 256));
    let mut bound_limbs = [0u64; 8];
    bound_limbs[((bits - 1) / 64) as usize] = 1 << ((bits - 1) % 64);
    let bound = I512::from_limbs(bound_limbs);
    if !normals_from_cross_products {
        // floor(2^(bits-1) / 48)
        let (q, _) = bound.div_rem_u64(48);
        let mut out = [0u64; 4];
        out.copy_from_slice(&q.limbs()[..4]);
        return I256::from_limbs(out);
    }
    // Largest v with 196608 * v^9 <= 2^(bits-1).
    let (mut lo, mut hi) = (1u64, 1u64 << 33);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if pow9_scaled(mid) <= bound {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    I256::from_i128(lo as i128)
}

/// `196608 * v^9` at 512 bits, exact for v < 2^34.
fn pow9_scaled(v: u64) -> I512 {
    let v3 = (v as i128) * (v as i128) * (v as i128);
    I512::from_i128(v3).mul_i128(v3).mul_i128(v3).mul_i64(196608)
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    let (mut a, mut b) = (a, b);
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            break;
        }
    }
    a << shift
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hp<W: Width>(x: [i128; 4]) -> HomoPoint<W> {
        HomoPoint {
            x: [
                W::Int::from_i128(x[0]),
                W::Int::from_i128(x[1]),
                W::Int::from_i128(x[2]),
                W::Int::from_i128(x[3]),
            ],
        }
    }

    #[test]
    fn plane_from_points_basics() {
        let p = plane_from_points([0, 0, 0], [1, 0, 0], [0, 1, 0]).unwrap();
        assert_eq!(p, Plane { a: 0, b: 0, c: 1, d: 0 });
        // raw normal (0,0,16), content divided out
        let p = plane_from_points([0, 0, 2], [4, 0, 2], [0, 4, 2]).unwrap();
        assert_eq!(p, Plane { a: 0, b: 0, c: 1, d: -2 });
        assert!(matches!(
            plane_from_points([0, 0, 0], [1, 1, 1], [2, 2, 2]),
            Err(Error::CollinearPoints)
        ));
    }

    #[test]
    fn parallel_planes() {
        let p = Plane::new(1, 0, 0, -1);
        let q = Plane::new(1, 0, 0, 5);
        let r = Plane::new(0, 1, 0, 0);
        assert!(are_planes_parallel(&p, &q));
        assert!(!are_planes_parallel(&p, &r));
        assert!(are_planes_parallel(&p, &p.negated()));
    }

    #[test]
    fn intersect_axis_planes_is_origin() {
        let p = Plane::new(1, 0, 0, 0);
        let q = Plane::new(0, 1, 0, 0);
        let r = Plane::new(0, 0, 1, 0);
        let x = intersect_3_planes::<W256>(&p, &q, &r).unwrap();
        assert!(x.projective_eq(&HomoPoint::from_int_point([0, 0, 0])));
    }

    #[test]
    fn intersect_cofactor_convention() {
        // x=1, y=2, z=3 planes meet at (1,2,3); the cofactor expansion gives
        // the representative (-1,-2,-3,-1).
        let p = Plane::new(1, 0, 0, -1);
        let q = Plane::new(0, 1, 0, -2);
        let r = Plane::new(0, 0, 1, -3);
        let x = intersect_3_planes::<W128>(&p, &q, &r).unwrap();
        assert_eq!(x, hp([-1, -2, -3, -1]));
        assert!(x.projective_eq(&HomoPoint::from_int_point([1, 2, 3])));
    }

    #[test]
    fn intersect_degenerate_triple() {
        let p = Plane::new(1, 0, 0, -1);
        let q = Plane::new(1, 0, 0, 5);
        let r = Plane::new(0, 0, 1, -3);
        assert!(intersect_3_planes::<W128>(&p, &q, &r).is_none());
    }

    #[test]
    fn classify_examples() {
        let x = hp::<W192>([0, 0, 0, 1]);
        assert_eq!(classify_vertex(&x, &Plane::new(1, 0, 0, -1)), Side::Neg);
        let x = hp::<W192>([-1, -2, -3, -1]);
        assert_eq!(classify_vertex(&x, &Plane::new(1, 1, 1, -6)), Side::On);
        let x = hp::<W192>([2, 0, 0, 2]);
        assert_eq!(classify_vertex(&x, &Plane::new(1, 0, 0, 0)), Side::Pos);
    }

    #[test]
    fn classify_flips_with_plane_negation_and_scaling() {
        let s = Plane::new(3, -2, 5, -7);
        let x = hp::<W256>([10, 4, -3, 2]);
        let xs = hp::<W256>([30, 12, -9, 6]);
        let xneg = hp::<W256>([-10, -4, 3, -2]);
        assert_eq!(classify_vertex(&x, &s.negated()), classify_vertex(&x, &s).flip());
        assert_eq!(classify_vertex(&xs, &s), classify_vertex(&x, &s));
        assert_eq!(classify_vertex(&xneg, &s), classify_vertex(&x, &s));
    }

    #[test]
    fn point_lies_on_defining_planes() {
        let p = Plane::new(3, 1, -2, 4);
        let q = Plane::new(-1, 5, 2, -9);
        let r = Plane::new(2, -3, 7, 1);
        let x = intersect_3_planes::<W256>(&p, &q, &r).unwrap();
        for s in [&p, &q, &r] {
            assert_eq!(classify_vertex(&x, s), Side::On);
        }
    }

    #[test]
    fn intersect_symmetric_under_permutation() {
        let p = Plane::new(3, 1, -2, 4);
        let q = Plane::new(-1, 5, 2, -9);
        let r = Plane::new(2, -3, 7, 1);
        let a = intersect_3_planes::<W256>(&p, &q, &r).unwrap();
        let b = intersect_3_planes::<W256>(&q, &r, &p).unwrap();
        let c = intersect_3_planes::<W256>(&r, &q, &p).unwrap();
        assert!(a.projective_eq(&b));
        assert!(a.projective_eq(&c));
    }

    #[test]
    fn compare_abs_distance_basics() {
        let s = Plane::new(1, 0, 0, -4);
        let x = HomoPoint::<W128>::from_int_point([4, 2, 2]); // on s
        let y = HomoPoint::<W128>::from_int_point([6, 0, 0]); // off s
        assert_eq!(compare_abs_distance(&x, &x, &s), Ordering::Equal);
        assert_eq!(compare_abs_distance(&x, &y, &s), Ordering::Less);
        assert_eq!(compare_abs_distance(&y, &x, &s), Ordering::Greater);
        // scaling a representative does not change the ordering
        let y2 = hp::<W128>([18, 0, 0, 3]);
        assert_eq!(compare_abs_distance(&y2, &x, &s), Ordering::Greater);
        assert_eq!(compare_abs_distance(&y2, &y, &s), Ordering::Equal);
    }

    #[test]
    fn vertex_bounds_match_published_numbers() {
        let v256 = max_vertex_bound(256, true).to_i128().unwrap();
        assert!((87_000_000..88_000_000).contains(&v256), "{v256}");
        assert!((v256 as f64 / 1e7 - 8.73).abs() < 0.01);
        let v128 = max_vertex_bound(128, true).to_i128().unwrap();
        assert!((4_400..4_700).contains(&v128), "{v128}");
        let v192 = max_vertex_bound(192, true).to_i128().unwrap();
        // 1.58 um resolution over 1 m
        assert!((1.0 / v192 as f64 - 1.58e-6).abs() < 0.03e-6, "{v192}");
        // unit normals: floor(2^(b-1)/48)
        let v = max_vertex_bound(128, false);
        let expect = (1i128 << 122) / 3; // 2^127/48
        assert_eq!(v.to_i128().unwrap(), expect);
    }

    #[test]
    fn budget_construction() {
        let b = PrecisionBudget::for_cross_product_normals(256).unwrap();
        assert!(b.contains_vertex([b.v_plus, -b.v_plus, 0]));
        assert!(!b.contains_vertex([b.v_plus + 1, 0, 0]));
        // one past the ninth-root bound must fail
        assert!(PrecisionBudget::new(256, b.v_plus + 1, 8 * (b.v_plus + 1) * (b.v_plus + 1)).is_err());
        assert!(PrecisionBudget::new(128, 4567, 8 * 4567 * 4567).is_ok());
    }

    #[test]
    fn canonicalization_divides_content_keeps_sign() {
        let p = Plane::new(2, 4, -6, 8);
        assert_eq!(p, Plane { a: 1, b: 2, c: -3, d: 4 });
        let n = Plane::new(-2, -4, 6, -8);
        assert_eq!(n, p.negated());
        assert_ne!(p, n);
    }
}
