//! The Heisenberg group `H_n` and the abelian group `R^m` over exact, float or
//! integer scalars.
//!
//! Heisenberg points are stored as `[x_1..x_n, y_1..y_n, t]` with the
//! polarized law `(x, y, t)(x', y', t') = (x + x', y + y', t + t' + <x, y'>)`.
//! It has no denominators, so `H_n(R)` is a subgroup for every ring `R`.
//!
//! The gauge is the box quasi-norm `max(|x|_inf, |y|_inf, |t|^(1/2))`, which is
//! homogeneous of degree one under the dilations `(x, y, t) -> (lx, ly, l^2 t)`.

use std::cmp::Ordering;
use std::fmt::{self, Debug};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{QuadNum, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupKind {
    Euclidean { m: usize },
    Heisenberg { n: usize },
}

impl GroupKind {
    pub fn euclidean(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("euclidean dimension must be positive".into()));
        }
        Ok(GroupKind::Euclidean { m })
    }

    pub fn heisenberg(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("heisenberg rank must be positive".into()));
        }
        Ok(GroupKind::Heisenberg { n })
    }

    /// Number of coordinates, which is also the manifold dimension.
    pub fn dim(&self) -> usize {
        match *self {
            GroupKind::Euclidean { m } => m,
            GroupKind::Heisenberg { n } => 2 * n + 1,
        }
    }

    /// Polynomial growth degree: `m` for `R^m`, `2n + 2` for `H_n`.
    pub fn homogeneous_dim(&self) -> usize {
        match *self {
            GroupKind::Euclidean { m } => m,
            GroupKind::Heisenberg { n } => 2 * n + 2,
        }
    }

    /// Dilation weight of coordinate `i` (2 for the central coordinate).
    pub fn weight(&self, i: usize) -> u32 {
        match *self {
            GroupKind::Heisenberg { n } if i == 2 * n => 2,
            _ => 1,
        }
    }

    pub fn is_heisenberg(&self) -> bool {
        matches!(self, GroupKind::Heisenberg { .. })
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Euclidean { m } => write!(f, "R^{m}"),
            GroupKind::Heisenberg { n } => write!(f, "H_{n}"),
        }
    }
}

/// Coordinate ring of a group point.
pub trait Scalar: Clone + PartialEq + Debug + Send + Sync {
    const MODE: &'static str;

    fn zero_like(&self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn to_f64(&self) -> f64;

    /// Whether two scalars may be combined (same quadratic field).
    fn compatible(&self, _other: &Self) -> bool {
        true
    }
}

impl Scalar for QuadNum {
    const MODE: &'static str = "exact";

    fn zero_like(&self) -> Self {
        QuadNum::zero(self.d())
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_f64(&self) -> f64 {
        QuadNum::to_f64(self)
    }
    fn compatible(&self, other: &Self) -> bool {
        self.d() == other.d()
    }
}

impl Scalar for f64 {
    const MODE: &'static str = "float";

    fn zero_like(&self) -> Self {
        0.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for i64 {
    const MODE: &'static str = "int";

    fn zero_like(&self) -> Self {
        0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_f64(&self) -> f64 {
        *self as f64
    }
}

/// An element of `R^m` or `H_n` with coordinates in `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupPoint<S> {
    kind: GroupKind,
    coords: Vec<S>,
}

pub type ExactPoint = GroupPoint<QuadNum>;
pub type FloatPoint = GroupPoint<f64>;
pub type IntPoint = GroupPoint<i64>;

impl<S: Scalar> GroupPoint<S> {
    pub fn new(kind: GroupKind, coords: Vec<S>) -> Result<Self> {
        if coords.len() != kind.dim() {
            return Err(Error::KindMismatch(format!(
                "{kind} needs {} coordinates, got {}",
                kind.dim(),
                coords.len()
            )));
        }
        if let Some(first) = coords.first() {
            if coords.iter().any(|c| !c.compatible(first)) {
                return Err(Error::KindMismatch("coordinates from different fields".into()));
            }
        }
        Ok(GroupPoint { kind, coords })
    }

    /// Builds a Heisenberg point from its `x`, `y` and `t` parts.
    pub fn heisenberg(x: Vec<S>, y: Vec<S>, t: S) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::KindMismatch("x and y lengths differ".into()));
        }
        let kind = GroupKind::heisenberg(x.len())?;
        let mut coords = x;
        coords.extend(y);
        coords.push(t);
        Self::new(kind, coords)
    }

    pub fn identity(kind: GroupKind, zero: S) -> Self {
        GroupPoint {
            kind,
            coords: vec![zero.zero_like(); kind.dim()],
        }
    }

    /// Standard generators: unit vectors for `R^m`, the `x_i` and `y_i`
    /// directions for `H_n`.
    pub fn standard_generators(kind: GroupKind, one: S) -> Vec<Self> {
        let count = match kind {
            GroupKind::Euclidean { m } => m,
            GroupKind::Heisenberg { n } => 2 * n,
        };
        (0..count)
            .map(|i| {
                let mut p = Self::identity(kind, one.clone());
                p.coords[i] = one.clone();
                p
            })
            .collect()
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<S> {
        self.coords
    }

    pub fn x(&self) -> &[S] {
        match self.kind {
            GroupKind::Heisenberg { n } => &self.coords[..n],
            GroupKind::Euclidean { .. } => &self.coords,
        }
    }

    pub fn y(&self) -> &[S] {
        match self.kind {
            GroupKind::Heisenberg { n } => &self.coords[n..2 * n],
            GroupKind::Euclidean { .. } => &[],
        }
    }

    pub fn t(&self) -> Option<&S> {
        match self.kind {
            GroupKind::Heisenberg { n } => Some(&self.coords[2 * n]),
            GroupKind::Euclidean { .. } => None,
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.kind != other.kind {
            return Err(Error::KindMismatch(format!("{} vs {}", self.kind, other.kind)));
        }
        match (self.coords.first(), other.coords.first()) {
            (Some(a), Some(b)) if !a.compatible(b) => {
                Err(Error::KindMismatch("points over different fields".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let mut coords: Vec<S> = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.add(b))
            .collect();
        if let GroupKind::Heisenberg { n } = self.kind {
            let mut t = coords[2 * n].clone();
            for i in 0..n {
                t = t.add(&self.coords[i].mul(&other.coords[n + i]));
            }
            coords[2 * n] = t;
        }
        GroupPoint {
            kind: self.kind,
            coords,
        }
    }

    /// `(x, y, t)^-1 = (-x, -y, <x, y> - t)`.
    pub fn inverse(&self) -> Self {
        let mut coords: Vec<S> = self.coords.iter().map(Scalar::neg).collect();
        if let GroupKind::Heisenberg { n } = self.kind {
            let mut t = self.coords[2 * n].neg();
            for i in 0..n {
                t = t.add(&self.coords[i].mul(&self.coords[n + i]));
            }
            coords[2 * n] = t;
        }
        GroupPoint {
            kind: self.kind,
            coords,
        }
    }

    /// `p^-1 q`.
    pub fn relative(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.inverse().mul_unchecked(other))
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|c| *c == c.zero_like())
    }

    /// Box quasi-norm as a float.
    pub fn qnorm(&self) -> f64 {
        let mut best = 0.0f64;
        for (i, c) in self.coords.iter().enumerate() {
            let v = c.to_f64().abs();
            let v = if self.kind.weight(i) == 2 { v.sqrt() } else { v };
            best = best.max(v);
        }
        best
    }

    /// Directed gauge distance `||p^-1 q||` as a float.
    pub fn qdist(&self, other: &Self) -> Result<f64> {
        Ok(self.relative(other)?.qnorm())
    }

    /// Symmetric distance `max(||p^-1 q||, ||q^-1 p||)` as a float.
    pub fn dist(&self, other: &Self) -> Result<f64> {
        let forward = self.relative(other)?;
        Ok(forward.qnorm().max(forward.inverse().qnorm()))
    }

    pub fn to_float(&self) -> FloatPoint {
        GroupPoint {
            kind: self.kind,
            coords: self.coords.iter().map(Scalar::to_f64).collect(),
        }
    }
}

impl ExactPoint {
    /// Exact test of `||p|| <= r`: `|x_i|, |y_i| <= r` and `|t| <= r^2`.
    pub fn qnorm_leq(&self, r: &Rational) -> bool {
        if r < &Rational::zero() {
            return false;
        }
        let r2 = r * r;
        self.coords.iter().enumerate().all(|(i, c)| {
            let bound = if self.kind.weight(i) == 2 { &r2 } else { r };
            c.abs().cmp_rational(bound) != Ordering::Greater
        })
    }

    /// Directed test `||p^-1 q|| <= r`. Left-invariant.
    pub fn qdist_leq(&self, other: &Self, r: &Rational) -> Result<bool> {
        Ok(self.relative(other)?.qnorm_leq(r))
    }

    /// Symmetric test `max(||p^-1 q||, ||q^-1 p||) <= r`.
    pub fn dist_leq(&self, other: &Self, r: &Rational) -> Result<bool> {
        let forward = self.relative(other)?;
        Ok(forward.qnorm_leq(r) && forward.inverse().qnorm_leq(r))
    }

    /// Homogeneous dilation by a rational factor.
    pub fn dilate(&self, lam: &Rational) -> Self {
        let lam2 = lam * lam;
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, c)| c.scale(if self.kind.weight(i) == 2 { &lam2 } else { lam }))
            .collect();
        GroupPoint {
            kind: self.kind,
            coords,
        }
    }

    pub fn field(&self) -> Option<u64> {
        self.coords.first().map(QuadNum::d)
    }
}

impl FloatPoint {
    pub fn dilate(&self, lam: f64) -> Self {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, c)| if self.kind.weight(i) == 2 { c * lam * lam } else { c * lam })
            .collect();
        GroupPoint {
            kind: self.kind,
            coords,
        }
    }
}

impl<S: Scalar + Ord> Ord for GroupPoint<S> {
    /// Lexicographic on `(x_1..x_n, y_1..y_n, t)`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.kind
            .cmp(&other.kind)
            .then_with(|| self.coords.cmp(&other.coords))
    }
}

impl<S: Scalar + Ord> PartialOrd for GroupPoint<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for GroupPoint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
