//! Cut-and-project schemes `(G, H, Gamma)` with `G = H` a copy of `R^m` or
//! `H_n(R)` and `Gamma` the group over a real quadratic ring, embedded
//! diagonally by `gamma -> (gamma, conj(gamma))` coordinatewise.
//!
//! Windows and regions are axis boxes, so the model set
//! `{ pi_G(gamma) : pi_H(gamma) in W, pi_G(gamma) in R }` is the product of
//! one-dimensional rectangle enumerations.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{
    enumerate_ring_in_rectangle, format_rational, int, parse_rational, rat, rational_to_f64,
    Interval, QuadNum, Rational, RingSpec,
};
use crate::heis::{ExactPoint, FloatPoint, GroupKind, GroupPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Scheme {
    group: GroupKind,
    ring: RingSpec,
}

impl Scheme {
    pub fn new(group: GroupKind, ring: RingSpec) -> Self {
        Scheme { group, ring }
    }

    pub fn group(&self) -> GroupKind {
        self.group
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn d(&self) -> u64 {
        self.ring.d()
    }

    /// `pi_H` on lattice elements: coordinatewise Galois conjugation, which is
    /// a group homomorphism for the polarized law.
    pub fn internal(&self, p: &ExactPoint) -> ExactPoint {
        let coords = p.coords().iter().map(QuadNum::conjugate).collect();
        GroupPoint::new(p.kind(), coords).expect("same shape")
    }

    pub fn is_lattice_point(&self, p: &ExactPoint) -> bool {
        p.kind() == self.group && p.coords().iter().all(|c| self.ring.contains(c))
    }

    pub fn identity(&self) -> ExactPoint {
        GroupPoint::identity(self.group, QuadNum::zero(self.d()))
    }
}

/// A closed axis-parallel box, one interval per coordinate in the layout
/// `[x_1..x_n, y_1..y_n, t]`. Used both for windows (internal space) and for
/// truncation regions (physical space).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AxisBox {
    kind: GroupKind,
    intervals: Vec<Interval>,
}

pub type Window = AxisBox;
pub type Region = AxisBox;

impl AxisBox {
    pub fn new(kind: GroupKind, intervals: Vec<Interval>) -> Result<Self> {
        if intervals.len() != kind.dim() {
            return Err(Error::KindMismatch(format!(
                "{kind} needs {} intervals, got {}",
                kind.dim(),
                intervals.len()
            )));
        }
        Ok(AxisBox { kind, intervals })
    }

    /// The coordinate box of gauge radius `r`: `[-r, r]` on horizontal
    /// coordinates and `[-r^2, r^2]` on the central one.
    pub fn gauge_box(kind: GroupKind, r: &Rational) -> Result<Self> {
        let r = r.abs();
        let intervals = (0..kind.dim())
            .map(|i| {
                let s = if kind.weight(i) == 2 { &r * &r } else { r.clone() };
                Interval::symmetric(s)
            })
            .collect::<Result<_>>()?;
        Self::new(kind, intervals)
    }

    /// The same interval on every coordinate.
    pub fn uniform(kind: GroupKind, interval: Interval) -> Self {
        AxisBox {
            kind,
            intervals: vec![interval; kind.dim()],
        }
    }

    /// Parses `"lo,hi;lo,hi;..."`. A single interval is broadcast to every
    /// coordinate.
    pub fn parse(kind: GroupKind, s: &str) -> Result<Self> {
        let intervals = s
            .split(';')
            .map(|part| {
                let (lo, hi) = part
                    .split_once(',')
                    .ok_or_else(|| Error::Format(format!("interval {part:?} is not lo,hi")))?;
                Interval::new(parse_rational(lo)?, parse_rational(hi)?)
            })
            .collect::<Result<Vec<_>>>()?;
        if intervals.len() == 1 && kind.dim() > 1 {
            return Ok(Self::uniform(kind, intervals[0].clone()));
        }
        Self::new(kind, intervals)
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn has_interior(&self) -> bool {
        self.intervals.iter().all(Interval::has_interior)
    }

    pub fn contains(&self, p: &ExactPoint) -> bool {
        p.kind() == self.kind
            && self
                .intervals
                .iter()
                .zip(p.coords())
                .all(|(iv, c)| iv.contains(c))
    }

    pub fn contains_box(&self, other: &AxisBox) -> bool {
        self.kind == other.kind
            && self
                .intervals
                .iter()
                .zip(&other.intervals)
                .all(|(a, b)| a.contains_interval(b))
    }

    /// Whether every `c * g` with `||g|| <= r` stays inside the box
    /// (right translates, the neighbourhoods used for patches).
    ///
    /// `(c g)_t = c_t + g_t + <c_x, g_y>`, so the central coordinate needs a
    /// margin of `r^2 + r * sum |c_x|`.
    pub fn contains_right_ball(&self, c: &ExactPoint, r: &Rational) -> bool {
        self.contains_ball_with(c, r, c.x())
    }

    /// Whether every `g * c` with `||g|| <= r` stays inside the box
    /// (left translates, used when testing candidate periods).
    pub fn contains_left_ball(&self, c: &ExactPoint, r: &Rational) -> bool {
        self.contains_ball_with(c, r, c.y())
    }

    fn contains_ball_with(&self, c: &ExactPoint, r: &Rational, shear: &[QuadNum]) -> bool {
        if c.kind() != self.kind {
            return false;
        }
        let d = c.coords()[0].d();
        let r = r.abs();
        self.intervals.iter().enumerate().all(|(i, iv)| {
            let margin = if self.kind.weight(i) == 2 {
                let mut m = QuadNum::from_rational(&r * &r, d).expect("validated field");
                for s in shear {
                    m = &m + &s.abs().scale(&r);
                }
                m
            } else {
                QuadNum::from_rational(r.clone(), d).expect("validated field")
            };
            let x = &c.coords()[i];
            iv.contains(&(x - &margin)) && iv.contains(&(x + &margin))
        })
    }

    /// Float version of [`AxisBox::contains_right_ball`] for grid probes.
    pub(crate) fn contains_right_ball_f64(&self, c: &[f64], r: f64) -> bool {
        let shear: f64 = match self.kind {
            GroupKind::Heisenberg { n } => c[..n].iter().map(|v| v.abs()).sum(),
            GroupKind::Euclidean { .. } => 0.0,
        };
        self.intervals.iter().enumerate().all(|(i, iv)| {
            let margin = if self.kind.weight(i) == 2 { r * r + r * shear } else { r };
            c[i] - margin >= rational_to_f64(iv.lo()) && c[i] + margin <= rational_to_f64(iv.hi())
        })
    }

    pub fn lo_f64(&self) -> Vec<f64> {
        self.intervals.iter().map(|iv| rational_to_f64(iv.lo())).collect()
    }

    pub fn hi_f64(&self) -> Vec<f64> {
        self.intervals.iter().map(|iv| rational_to_f64(iv.hi())).collect()
    }

    pub fn vertices(&self, d: u64) -> Vec<ExactPoint> {
        let dim = self.intervals.len();
        (0..1usize << dim)
            .map(|mask| {
                let coords = (0..dim)
                    .map(|i| {
                        let iv = &self.intervals[i];
                        let v = if mask >> i & 1 == 1 { iv.hi() } else { iv.lo() };
                        QuadNum::from_rational(v.clone(), d).expect("validated field")
                    })
                    .collect();
                GroupPoint::new(self.kind, coords).expect("same shape")
            })
            .collect()
    }
}

impl fmt::Display for AxisBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

/// A finite piece `Lambda cap R` of a model set together with the data that
/// produced it. Points are pairwise distinct and sorted lexicographically.
#[derive(Clone, Debug)]
pub struct ModelSet {
    scheme: Scheme,
    window: Window,
    region: Region,
    points: Vec<ExactPoint>,
    internal_points: Vec<ExactPoint>,
    float_points: Vec<Vec<f64>>,
}

impl ModelSet {
    /// Reassembles a model set from stored points, re-checking every
    /// invariant exactly.
    pub fn from_parts(
        scheme: Scheme,
        window: Window,
        region: Region,
        points: Vec<ExactPoint>,
    ) -> Result<Self> {
        check_shapes(&scheme, &window, &region)?;
        for (i, p) in points.iter().enumerate() {
            if !scheme.is_lattice_point(p) {
                return Err(Error::Format(format!("point {i} is not a lattice point")));
            }
            if !region.contains(p) {
                return Err(Error::Format(format!("point {i} lies outside the region")));
            }
            if !window.contains(&scheme.internal(p)) {
                return Err(Error::Format(format!("point {i} is rejected by the window")));
            }
        }
        for (i, w) in points.windows(2).enumerate() {
            match w[0].cmp(&w[1]) {
                Ordering::Less => {}
                Ordering::Equal => {
                    return Err(Error::Format(format!("duplicate point at index {}", i + 1)))
                }
                Ordering::Greater => {
                    return Err(Error::Format(format!("points unsorted at index {}", i + 1)))
                }
            }
        }
        Ok(Self::assemble(scheme, window, region, points))
    }

    fn assemble(scheme: Scheme, window: Window, region: Region, points: Vec<ExactPoint>) -> Self {
        let internal_points = points.iter().map(|p| scheme.internal(p)).collect();
        let float_points = points
            .iter()
            .map(|p| p.coords().iter().map(QuadNum::to_f64).collect())
            .collect();
        ModelSet {
            scheme,
            window,
            region,
            points,
            internal_points,
            float_points,
        }
    }

    pub fn scheme(&self) -> &Scheme {
        &self.scheme
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn points(&self) -> &[ExactPoint] {
        &self.points
    }

    pub fn internal_points(&self) -> &[ExactPoint] {
        &self.internal_points
    }

    pub fn float_points(&self) -> &[Vec<f64>] {
        &self.float_points
    }

    pub fn float_point(&self, i: usize) -> FloatPoint {
        GroupPoint::new(self.scheme.group(), self.float_points[i].clone()).expect("same shape")
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The points `g * lambda`, in the original index order.
    pub fn left_translate(&self, g: &ExactPoint) -> Result<Vec<ExactPoint>> {
        self.points.iter().map(|p| g.mul(p)).collect()
    }

    /// Counts points failing membership in region or window; zero for any
    /// correctly generated set.
    pub fn audit(&self) -> usize {
        self.points
            .iter()
            .zip(&self.internal_points)
            .filter(|(p, q)| !self.region.contains(p) || !self.window.contains(q))
            .count()
    }
}

fn check_shapes(scheme: &Scheme, window: &Window, region: &Region) -> Result<()> {
    if window.kind() != scheme.group() || region.kind() != scheme.group() {
        return Err(Error::KindMismatch(format!(
            "scheme over {} with window over {} and region over {}",
            scheme.group(),
            window.kind(),
            region.kind()
        )));
    }
    Ok(())
}

/// Lattice points with physical coordinates in `region` and internal
/// coordinates in `window`, in lexicographic order. Accepts degenerate
/// boxes; [`generate_model_set`] is the validated entry point.
pub fn enumerate_lattice_points(
    scheme: &Scheme,
    window: &Window,
    region: &Region,
) -> Result<Vec<ExactPoint>> {
    check_shapes(scheme, window, region)?;
    let ring = scheme.ring();
    let axes: Vec<Vec<QuadNum>> = region
        .intervals()
        .par_iter()
        .zip(window.intervals().par_iter())
        .map(|(phys, internal)| enumerate_ring_in_rectangle(&ring, phys, internal))
        .collect();
    if axes.iter().any(Vec::is_empty) {
        return Ok(Vec::new());
    }
    let kind = scheme.group();
    // slabs of the first coordinate are independent; nested order is lexicographic
    let points = axes[0]
        .par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            let mut prefix = vec![first.clone()];
            product_rec(&axes[1..], &mut prefix, &mut |coords| {
                out.push(GroupPoint::new(kind, coords.to_vec()).expect("same shape"))
            });
            out
        })
        .collect();
    Ok(points)
}

fn product_rec(
    axes: &[Vec<QuadNum>],
    prefix: &mut Vec<QuadNum>,
    emit: &mut impl FnMut(&[QuadNum]),
) {
    match axes.split_first() {
        None => emit(prefix),
        Some((head, rest)) => {
            for v in head {
                prefix.push(v.clone());
                product_rec(rest, prefix, emit);
                prefix.pop();
            }
        }
    }
}

/// `Lambda cap R = { pi_G(gamma) : gamma in Gamma, pi_H(gamma) in W, pi_G(gamma) in R }`.
pub fn generate_model_set(scheme: &Scheme, window: &Window, region: &Region) -> Result<ModelSet> {
    check_shapes(scheme, window, region)?;
    if !window.has_interior() {
        return Err(Error::DegenerateWindow(format!("window {window} has empty interior")));
    }
    let points = enumerate_lattice_points(scheme, window, region)?;
    Ok(ModelSet::assemble(
        *scheme,
        window.clone(),
        region.clone(),
        points,
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryWitness {
    /// Coordinate whose internal value sits on the window boundary.
    pub coordinate: usize,
    pub endpoint: String,
    /// Physical coordinates of a lattice point realizing it.
    pub point: Vec<[String; 4]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularityReport {
    pub boundary_clear: bool,
    pub boundary_witnesses: Vec<BoundaryWitness>,
    pub interior_nonempty: bool,
    /// Boxes have Lebesgue-null boundary.
    pub boundary_null: bool,
    pub stabilizer_candidates_checked: usize,
    pub stabilizer_found: bool,
    /// The stabilizer search only covers lattice translations up to the bound.
    pub stabilizer_check_partial: bool,
    pub search_bound: String,
}

impl RegularityReport {
    pub fn is_regular(&self) -> bool {
        self.boundary_clear && self.interior_nonempty && !self.stabilizer_found
    }
}

/// Exact checks of the regularity conditions for a box window.
///
/// Boundary: a lattice point `gamma` with `pi_H(gamma)` in the closed window
/// and some internal coordinate equal to an endpoint. Stabilizer: lattice
/// translations `g` with physical and internal gauge at most `search_bound`
/// such that `g W = W`, tested by mapping the vertices of `W`.
pub fn check_window_regular(
    scheme: &Scheme,
    window: &Window,
    search_bound: &Rational,
) -> Result<RegularityReport> {
    if !search_bound.is_positive() {
        return Err(Error::InvalidParameter("search bound must be positive".into()));
    }
    if window.kind() != scheme.group() {
        return Err(Error::KindMismatch("window shape does not match scheme".into()));
    }
    let kind = scheme.group();
    let d = scheme.d();
    let ring = scheme.ring();
    let search = AxisBox::gauge_box(kind, search_bound)?;

    // per coordinate: ring elements with |phys| bounded and conj in the window
    let axes: Vec<Vec<QuadNum>> = search
        .intervals()
        .iter()
        .zip(window.intervals())
        .map(|(phys, internal)| enumerate_ring_in_rectangle(&ring, phys, internal))
        .collect();

    let mut witnesses = Vec::new();
    if axes.iter().all(|a| !a.is_empty()) {
        for (i, iv) in window.intervals().iter().enumerate() {
            let mut endpoints = vec![iv.lo().clone()];
            if iv.hi() != iv.lo() {
                endpoints.push(iv.hi().clone());
            }
            for e in endpoints {
                let on_edge = axes[i]
                    .iter()
                    .find(|r| r.conjugate().cmp_rational(&e) == Ordering::Equal);
                if let Some(r) = on_edge {
                    let coords: Vec<QuadNum> = (0..kind.dim())
                        .map(|j| if j == i { r.clone() } else { smallest(&axes[j]) })
                        .collect();
                    let p = GroupPoint::new(kind, coords)?;
                    witnesses.push(BoundaryWitness {
                        coordinate: i,
                        endpoint: format_rational(&e),
                        point: p.coords().iter().map(QuadNum::to_tuple).collect(),
                    });
                }
            }
        }
    }

    // candidate internal translations: conj of lattice points in the search box
    let internal_search = AxisBox::gauge_box(kind, search_bound)?;
    let cand_axes: Vec<Vec<QuadNum>> = search
        .intervals()
        .iter()
        .zip(internal_search.intervals())
        .map(|(phys, internal)| enumerate_ring_in_rectangle(&ring, phys, internal))
        .collect();
    let window_vertices: HashSet<ExactPoint> = window.vertices(d).into_iter().collect();
    let mut checked = 0usize;
    let mut found = false;
    let mut prefix = Vec::new();
    product_rec(&cand_axes, &mut prefix, &mut |coords| {
        let gamma = GroupPoint::new(kind, coords.to_vec()).expect("same shape");
        if gamma.is_identity() {
            return;
        }
        checked += 1;
        let g = scheme.internal(&gamma);
        if window_vertices
            .iter()
            .all(|v| window_vertices.contains(&g.mul_unchecked(v)))
        {
            found = true;
        }
    });

    Ok(RegularityReport {
        boundary_clear: witnesses.is_empty(),
        boundary_witnesses: witnesses,
        interior_nonempty: window.has_interior(),
        boundary_null: true,
        stabilizer_candidates_checked: checked,
        stabilizer_found: found,
        stabilizer_check_partial: true,
        search_bound: format_rational(search_bound),
    })
}

fn smallest(axis: &[QuadNum]) -> QuadNum {
    axis.iter()
        .min_by(|a, b| a.abs().cmp(&b.abs()).then_with(|| a.cmp(b)))
        .cloned()
        .expect("nonempty axis")
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityRow {
    pub sample_bound: String,
    pub k: u32,
    pub subboxes: u64,
    pub hit: u64,
    pub fraction: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct IrreducibilityReport {
    pub samples: u64,
    pub physical_injective: bool,
    pub internal_injective: bool,
    pub density: Vec<DensityRow>,
}

/// Finite evidence that the lattice projects injectively to both factors and
/// densely to the internal one.
///
/// Samples are lattice points with physical and internal gauge at most
/// `sample_bound`. Since `Gamma` and both projections act coordinatewise,
/// injectivity on the product sample is equivalent to injectivity on each
/// coordinate sample. Density: each coordinate interval of `density_box` is
/// cut into `2^k` pieces and a subbox counts as hit when some projected
/// sample lands in it; rows cover `k = 1..=k_max` at bounds
/// `sample_bound / 4`, `/ 2` and `sample_bound`.
pub fn check_irreducibility(
    scheme: &Scheme,
    sample_bound: &Rational,
    density_box: &AxisBox,
    k_max: u32,
) -> Result<IrreducibilityReport> {
    if !sample_bound.is_positive() {
        return Err(Error::InvalidParameter("sample bound must be positive".into()));
    }
    if density_box.kind() != scheme.group() || !density_box.has_interior() {
        return Err(Error::InvalidParameter("density box must match the scheme and have interior".into()));
    }
    let kind = scheme.group();
    let ring = scheme.ring();
    let axes_for = |bound: &Rational| -> Result<Vec<Vec<QuadNum>>> {
        let b = AxisBox::gauge_box(kind, bound)?;
        Ok(b.intervals()
            .iter()
            .map(|iv| enumerate_ring_in_rectangle(&ring, iv, iv))
            .collect())
    };

    let axes = axes_for(sample_bound)?;
    let samples = axes.iter().map(|a| a.len() as u64).product();
    let distinct = |vals: Vec<&QuadNum>| {
        let n = vals.len();
        vals.into_iter().collect::<HashSet<_>>().len() == n
    };
    let physical_injective = axes.iter().all(|a| distinct(a.iter().collect()));
    let conj: Vec<Vec<QuadNum>> = axes
        .iter()
        .map(|a| a.iter().map(QuadNum::conjugate).collect())
        .collect();
    let internal_injective = conj.iter().all(|a| distinct(a.iter().collect()));

    let mut density = Vec::new();
    for divisor in [4i64, 2, 1] {
        let bound = sample_bound / int(divisor);
        let axes = if divisor == 1 { axes.clone() } else { axes_for(&bound)? };
        for k in 1..=k_max {
            let pieces = 1u64 << k;
            let mut hit_total = 1u64;
            for (axis, iv) in axes.iter().zip(density_box.intervals()) {
                let step = iv.width() / int(pieces as i64);
                let mut hit = vec![false; pieces as usize];
                for x in axis {
                    let c = x.conjugate();
                    if !iv.contains(&c) {
                        continue;
                    }
                    hit[bin_of(&c, iv.lo(), &step, pieces)] = true;
                }
                hit_total *= hit.iter().filter(|h| **h).count() as u64;
            }
            let subboxes = pieces.pow(kind.dim() as u32);
            density.push(DensityRow {
                sample_bound: format_rational(&bound),
                k,
                subboxes,
                hit: hit_total,
                fraction: hit_total as f64 / subboxes as f64,
            });
        }
    }
    Ok(IrreducibilityReport {
        samples,
        physical_injective,
        internal_injective,
        density,
    })
}

/// Index `j` of the half-open piece `[lo + j step, lo + (j+1) step)`, with the
/// right endpoint folded into the last piece.
fn bin_of(x: &QuadNum, lo: &Rational, step: &Rational, pieces: u64) -> usize {
    let (mut a, mut b) = (0u64, pieces);
    // invariant: lo + a*step <= x, and x < lo + b*step unless b == pieces
    while b - a > 1 {
        let mid = (a + b) / 2;
        let edge = lo + step * int(mid as i64);
        if x.cmp_rational(&edge) == Ordering::Less {
            b = mid;
        } else {
            a = mid;
        }
    }
    a as usize
}

/// Default box window with endpoints `lo, hi` on every coordinate.
pub fn default_window(kind: GroupKind) -> Window {
    let iv = match kind {
        GroupKind::Euclidean { .. } => Interval::new(rat(-9, 10), rat(11, 10)),
        GroupKind::Heisenberg { .. } => Interval::new(rat(-9, 10), rat(9, 10)),
    }
    .expect("valid default interval");
    AxisBox::uniform(kind, iv)
}

/// Default truncation region: gauge box of radius 100 for `R^m`, 8 for `H_n`.
pub fn default_region(kind: GroupKind) -> Region {
    let r = match kind {
        GroupKind::Euclidean { .. } => int(100),
        GroupKind::Heisenberg { .. } => int(8),
    };
    AxisBox::gauge_box(kind, &r).expect("valid default region")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::RingVariant;

    fn line(d: u64) -> Scheme {
        Scheme::new(GroupKind::euclidean(1).unwrap(), RingSpec::z_sqrt(d).unwrap())
    }

    fn iv(lo: Rational, hi: Rational) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    fn boxed(kind: GroupKind, lo: Rational, hi: Rational) -> AxisBox {
        AxisBox::uniform(kind, iv(lo, hi))
    }

    #[test]
    fn one_dimensional_generation_matches_brute_force() {
        let s = line(2);
        let kind = s.group();
        let w = boxed(kind, int(-1), int(1));
        let r = boxed(kind, int(0), int(3));
        let ms = generate_model_set(&s, &w, &r).unwrap();
        let mut brute = Vec::new();
        for a in -10..=10 {
            for b in -10..=10 {
                let x = QuadNum::from_ints(a, b, 2).unwrap();
                if r.intervals()[0].contains(&x) && w.intervals()[0].contains(&x.conjugate()) {
                    brute.push(x);
                }
            }
        }
        brute.sort();
        let got: Vec<QuadNum> = ms.points().iter().map(|p| p.coords()[0].clone()).collect();
        assert_eq!(got, brute);
        assert_eq!(ms.audit(), 0);
    }

    #[test]
    fn degenerate_window() {
        let s = line(2);
        let kind = s.group();
        let zero_box = boxed(kind, int(0), int(0));
        let pts = enumerate_lattice_points(&s, &zero_box, &zero_box).unwrap();
        assert_eq!(pts, vec![s.identity()]);
        assert!(matches!(
            generate_model_set(&s, &zero_box, &zero_box),
            Err(Error::DegenerateWindow(_))
        ));
    }

    #[test]
    fn heisenberg_is_triple_product() {
        let kind = GroupKind::heisenberg(1).unwrap();
        let s = Scheme::new(kind, RingSpec::z_sqrt(2).unwrap());
        let w = AxisBox::gauge_box(kind, &int(1)).unwrap();
        let r = AxisBox::gauge_box(kind, &int(10)).unwrap();
        let ms = generate_model_set(&s, &w, &r).unwrap();
        // componentwise brute force over integer pairs
        let axis = |phys: &Interval, internal: &Interval| {
            let mut out = Vec::new();
            for a in -160..=160 {
                for b in -120..=120 {
                    let x = QuadNum::from_ints(a, b, 2).unwrap();
                    if phys.contains(&x) && internal.contains(&x.conjugate()) {
                        out.push(x);
                    }
                }
            }
            out.sort();
            out
        };
        let xs = axis(&r.intervals()[0], &w.intervals()[0]);
        let ys = axis(&r.intervals()[1], &w.intervals()[1]);
        let ts = axis(&r.intervals()[2], &w.intervals()[2]);
        let mut expected = Vec::new();
        for x in &xs {
            for y in &ys {
                for t in &ts {
                    expected.push(
                        GroupPoint::heisenberg(vec![x.clone()], vec![y.clone()], t.clone())
                            .unwrap(),
                    );
                }
            }
        }
        assert_eq!(ms.points(), expected.as_slice());
        assert!(ms.points().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(ms.audit(), 0);
    }

    #[test]
    fn kind_mismatch() {
        let s = line(2);
        let other = GroupKind::heisenberg(1).unwrap();
        let w = AxisBox::gauge_box(other, &int(1)).unwrap();
        assert!(generate_model_set(&s, &w, &w).is_err());
    }

    #[test]
    fn boundary_witnesses() {
        let s = line(2);
        let kind = s.group();
        let w = boxed(kind, int(-1), int(1));
        let rep = check_window_regular(&s, &w, &int(5)).unwrap();
        assert!(!rep.boundary_clear);
        assert_eq!(rep.boundary_witnesses.len(), 2);
        assert!(!rep.stabilizer_found);
        assert!(rep.stabilizer_candidates_checked > 0);

        let w = boxed(kind, rat(-9, 10), rat(11, 10));
        let rep = check_window_regular(&s, &w, &int(5)).unwrap();
        assert!(rep.boundary_clear);
        assert!(rep.interior_nonempty);
        assert!(rep.is_regular());

        let w = boxed(kind, int(0), int(0));
        let rep = check_window_regular(&s, &w, &int(5)).unwrap();
        assert!(!rep.interior_nonempty);
    }

    #[test]
    fn golden_ratio_endpoint_witness() {
        // (1 - sqrt 5)/2 is the conjugate of the golden ratio, a ring element
        // of the full ring but not of Z[sqrt 5]; rational endpoints never are.
        let s = Scheme::new(
            GroupKind::euclidean(1).unwrap(),
            RingSpec::new(5, RingVariant::FullIntegers).unwrap(),
        );
        let w = boxed(s.group(), rat(-1, 2), rat(3, 2));
        let rep = check_window_regular(&s, &w, &int(4)).unwrap();
        assert!(rep.boundary_clear);
    }

    #[test]
    fn heisenberg_stabilizer_is_trivial() {
        let kind = GroupKind::heisenberg(1).unwrap();
        let s = Scheme::new(kind, RingSpec::z_sqrt(2).unwrap());
        let rep = check_window_regular(&s, &default_window(kind), &int(2)).unwrap();
        assert!(rep.boundary_clear);
        assert!(!rep.stabilizer_found);
        assert!(rep.stabilizer_candidates_checked > 10);
    }

    #[test]
    fn irreducibility_line() {
        let s = line(2);
        let dbox = boxed(s.group(), int(-1), int(1));
        let rep = check_irreducibility(&s, &int(50), &dbox, 4).unwrap();
        assert!(rep.physical_injective && rep.internal_injective);
        let last = rep.density.iter().rfind(|r| r.k == 4).unwrap();
        assert_eq!(last.sample_bound, "50");
        assert_eq!(last.fraction, 1.0);
        // fractions never decrease as the sample grows
        for k in 1..=4 {
            let fr: Vec<f64> = rep.density.iter().filter(|r| r.k == k).map(|r| r.fraction).collect();
            assert!(fr.windows(2).all(|w| w[0] <= w[1]));
        }

        let off_center = boxed(s.group(), rat(1, 2), int(1));
        let rep = check_irreducibility(&s, &rat(1, 100), &off_center, 3).unwrap();
        assert!(rep.density.iter().all(|r| r.fraction == 0.0));
    }

    #[test]
    fn rational_integers_are_not_dense() {
        let s = Scheme::new(
            GroupKind::euclidean(1).unwrap(),
            RingSpec::new(2, RingVariant::RationalIntegers).unwrap(),
        );
        let dbox = boxed(s.group(), int(-1), int(1));
        let rep = check_irreducibility(&s, &int(50), &dbox, 4).unwrap();
        let last = rep.density.last().unwrap();
        assert!(last.fraction < 0.5);
    }

    #[test]
    fn box_parsing() {
        let kind = GroupKind::heisenberg(1).unwrap();
        let b = AxisBox::parse(kind, "-1,1;-1,1;-9/10,11/10").unwrap();
        assert_eq!(b.to_string(), "-1,1;-1,1;-9/10,11/10");
        let b = AxisBox::parse(kind, "-2,2").unwrap();
        assert_eq!(b.intervals().len(), 3);
        assert!(AxisBox::parse(kind, "1,2;3,4").is_err());
        assert!(AxisBox::parse(kind, "2,1").is_err());
    }

    #[test]
    fn ball_containment() {
        let kind = GroupKind::heisenberg(1).unwrap();
        let region = AxisBox::gauge_box(kind, &int(8)).unwrap();
        let q = |v| QuadNum::from_ints(v, 0, 2).unwrap();
        let c = GroupPoint::heisenberg(vec![q(5)], vec![q(0)], q(59)).unwrap();
        // t margin is 1 + 5 = 6: 59 + 6 > 64
        assert!(!region.contains_right_ball(&c, &int(1)));
        assert!(region.contains_left_ball(&c, &int(1)));
        let c = GroupPoint::heisenberg(vec![q(5)], vec![q(0)], q(58)).unwrap();
        assert!(region.contains_right_ball(&c, &int(1)));
    }
}
