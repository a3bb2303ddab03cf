//! Finite-sample evidence for the Delone, FLC, repetitivity and aperiodicity
//! properties of a generated model set.
//!
//! All statistics that depend on a radius `K` only use centers whose whole
//! `K`-neighbourhood lies inside the truncation region, so the cut at the
//! region boundary cannot produce phantom patches. Patches are compared by
//! exact equality of their relative coordinates.

use std::collections::{HashMap, HashSet};

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::cutproject::{check_window_regular, ModelSet, RegularityReport};
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, int, rational_to_f64, QuadNum, Rational};
use crate::heis::{ExactPoint, GroupKind};
use crate::index::{ball_box, cell_for, nearest, sym_dist, CellIndex};

/// Grid probes above this count are refused.
pub const GRID_LIMIT: usize = 4_000_000;

const SLACK: f64 = 1e-9;

pub(crate) fn ser_f64_or_inf<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_str("inf")
    }
}

pub fn point_tuples(p: &ExactPoint) -> Vec<[String; 4]> {
    p.coords().iter().map(QuadNum::to_tuple).collect()
}

fn from_f64(v: f64) -> Rational {
    Rational::from_float(v).expect("finite value")
}

#[derive(Clone, Debug, Serialize)]
pub struct Separation {
    /// Minimum symmetric gauge distance; `inf` for fewer than two points.
    #[serde(serialize_with = "ser_f64_or_inf")]
    pub value: f64,
    /// Exact bracket: the certificate pair is at distance in `(lower, upper]`.
    pub lower: String,
    pub upper: String,
    pub pair: Option<[usize; 2]>,
    pub exact_positive: bool,
    /// Pairs within float noise of the minimum, all checked exactly.
    pub near_minimal_pairs: usize,
}

/// Minimum symmetric distance over all pairs with an exact certificate.
///
/// A float pass finds the near-minimal pairs; the distance of the closest one
/// is then bracketed by bisection on rational radii with exact `dist_leq`
/// tests, and every other near-minimal pair is checked against the lower end.
pub fn uniform_discreteness(ms: &ModelSet) -> Result<Separation> {
    let n = ms.len();
    if n < 2 {
        return Ok(Separation {
            value: f64::INFINITY,
            lower: "inf".into(),
            upper: "inf".into(),
            pair: None,
            exact_positive: true,
            near_minimal_pairs: 0,
        });
    }
    let kind = ms.scheme().group();
    let fp = ms.float_points();
    // consecutive points in lexicographic order give an upper bound
    let upper = fp
        .windows(2)
        .map(|w| sym_dist(kind, &w[0], &w[1]))
        .fold(f64::INFINITY, f64::min);
    let index = CellIndex::all(fp, cell_for(kind, upper));
    let mut pairs: Vec<(f64, usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let (lo, hi) = ball_box(kind, &fp[i], upper, true, SLACK);
            let mut out = Vec::new();
            index.query(fp, &lo, &hi, |j| {
                if j > i {
                    let dist = sym_dist(kind, &fp[i], &fp[j]);
                    if dist <= upper * (1.0 + SLACK) + SLACK {
                        out.push((dist, i, j));
                    }
                }
            });
            out
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let best = pairs[0].0;
    pairs.retain(|p| p.0 <= best + SLACK * (1.0 + best));

    let pts = ms.points();
    let (mut i, mut j) = (pairs[0].1, pairs[0].2);
    let (mut lower, mut upper_q) = bracket_distance(&pts[i], &pts[j], pairs[0].0)?;
    // another near-minimal pair inside the bracket is strictly closer or equal
    loop {
        let closer = pairs
            .iter()
            .find(|&&(_, a, b)| (a, b) != (i, j) && pts[a].dist_leq(&pts[b], &lower).unwrap_or(false));
        match closer {
            Some(&(dist, a, b)) if !lower.is_zero() => {
                (i, j) = (a, b);
                (lower, upper_q) = bracket_distance(&pts[i], &pts[j], dist)?;
            }
            _ => break,
        }
    }
    Ok(Separation {
        value: rational_to_f64(&((&lower + &upper_q) / int(2))),
        lower: format_rational(&lower),
        upper: format_rational(&upper_q),
        pair: Some([i, j]),
        exact_positive: lower.is_positive(),
        near_minimal_pairs: pairs.len(),
    })
}

/// Rational `(lo, hi)` with `dist(p, q) <= hi` and, unless `lo = 0`,
/// `dist(p, q) > lo`, and `hi - lo <= 2^-48 hi`.
fn bracket_distance(p: &ExactPoint, q: &ExactPoint, estimate: f64) -> Result<(Rational, Rational)> {
    let mut hi = from_f64(estimate * (1.0 + SLACK) + SLACK);
    while !p.dist_leq(q, &hi)? {
        hi = &hi * int(2);
    }
    let mut lo = Rational::zero();
    if p.dist_leq(q, &lo)? {
        return Ok((lo, Rational::zero()));
    }
    for _ in 0..48 {
        let mid = (&lo + &hi) / int(2);
        if p.dist_leq(q, &mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((lo, hi))
}

#[derive(Clone, Debug, Serialize)]
pub struct Covering {
    /// Largest distance from a grid probe in the core to the nearest point.
    #[serde(serialize_with = "ser_f64_or_inf")]
    pub value: f64,
    pub grid_step: String,
    /// Central-coordinate step is `grid_step^2` so the grid is homogeneous.
    pub grid_points: usize,
    pub erosion: String,
    pub core: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeloneReport {
    pub separation: Separation,
    pub covering: Covering,
}

/// Grid estimate of the covering radius on the region eroded by `erosion`.
pub fn covering_radius(ms: &ModelSet, grid_step: &Rational, erosion: &Rational) -> Result<Covering> {
    if !grid_step.is_positive() {
        return Err(Error::InvalidParameter("grid step must be positive".into()));
    }
    if erosion.is_negative() {
        return Err(Error::InvalidParameter("erosion must be nonnegative".into()));
    }
    let kind = ms.scheme().group();
    let region = ms.region();
    let step = rational_to_f64(grid_step);
    let er = rational_to_f64(erosion);
    let mut axes = Vec::new();
    let mut total = 1usize;
    for (i, iv) in region.intervals().iter().enumerate() {
        let s = if kind.weight(i) == 2 { step * step } else { step };
        if kind.weight(i) == 1 && grid_step > &iv.width() {
            return Err(Error::InvalidParameter(format!(
                "grid step {} exceeds the region width {}",
                format_rational(grid_step),
                format_rational(&iv.width())
            )));
        }
        let (lo, hi) = (rational_to_f64(iv.lo()), rational_to_f64(iv.hi()));
        let count = ((hi - lo) / s).floor() as usize + 1;
        total = total.saturating_mul(count);
        if total > GRID_LIMIT {
            return Err(Error::InvalidParameter(format!(
                "more than {GRID_LIMIT} grid probes; use a coarser grid step"
            )));
        }
        axes.push((0..count).map(|k| lo + k as f64 * s).collect::<Vec<f64>>());
    }
    let probes: Vec<Vec<f64>> = grid(&axes)
        .into_iter()
        .filter(|h| region.contains_right_ball_f64(h, er))
        .collect();
    if probes.is_empty() {
        return Err(Error::Erosion(format!(
            "core of region {region} eroded by {} is empty",
            format_rational(erosion)
        )));
    }
    let fp = ms.float_points();
    let index = CellIndex::all(fp, cell_for(kind, step.max(1.0)));
    let limit = region
        .lo_f64()
        .iter()
        .zip(region.hi_f64())
        .map(|(l, h)| h - l)
        .fold(0.0, f64::max)
        .max(1.0);
    let value = probes
        .par_iter()
        .map(|h| {
            nearest(kind, &index, fp, h, step, limit, None)
                .map(|(_, dist)| dist)
                .unwrap_or(f64::INFINITY)
        })
        .reduce(|| 0.0, f64::max);
    let core = probes[0]
        .iter()
        .enumerate()
        .map(|(i, _)| {
            let lo = probes.iter().map(|p| p[i]).fold(f64::INFINITY, f64::min);
            let hi = probes.iter().map(|p| p[i]).fold(f64::NEG_INFINITY, f64::max);
            [lo, hi]
        })
        .collect();
    Ok(Covering {
        value,
        grid_step: format_rational(grid_step),
        grid_points: probes.len(),
        erosion: format_rational(erosion),
        core,
    })
}

fn grid(axes: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out = vec![Vec::new()];
    for axis in axes {
        out = out
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(*v);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn delone(ms: &ModelSet, grid_step: &Rational, erosion: &Rational) -> Result<DeloneReport> {
    Ok(DeloneReport {
        separation: uniform_discreteness(ms)?,
        covering: covering_radius(ms, grid_step, erosion)?,
    })
}

/// A patch `lambda^-1 Lambda cap B_K` in canonical (sorted) form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatchClass {
    pub radius: Rational,
    pub relative_points: Vec<ExactPoint>,
    pub multiplicity: usize,
}

struct Neighbors<'a> {
    ms: &'a ModelSet,
    index: CellIndex,
}

impl<'a> Neighbors<'a> {
    fn new(ms: &'a ModelSet, r: f64) -> Self {
        let kind = ms.scheme().group();
        Neighbors {
            ms,
            index: CellIndex::all(ms.float_points(), cell_for(kind, r)),
        }
    }

    /// Exact symmetric `r`-neighbourhood of point `c`, itself included.
    fn within(&self, c: usize, r: &Rational) -> Vec<usize> {
        let kind = self.ms.scheme().group();
        let fp = self.ms.float_points();
        let rf = rational_to_f64(r);
        let (lo, hi) = ball_box(kind, &fp[c], rf, true, SLACK);
        let pts = self.ms.points();
        let mut out = Vec::new();
        self.index.query(fp, &lo, &hi, |j| {
            if sym_dist(kind, &fp[c], &fp[j]) <= rf + SLACK * (1.0 + rf)
                && pts[c].dist_leq(&pts[j], r).expect("same scheme")
            {
                out.push(j);
            }
        });
        out.sort_unstable();
        out
    }

    fn patch(&self, c: usize, r: &Rational) -> Vec<ExactPoint> {
        let pts = self.ms.points();
        let inv = pts[c].inverse();
        let mut rel: Vec<ExactPoint> = self
            .within(c, r)
            .into_iter()
            .map(|j| inv.mul(&pts[j]).expect("same scheme"))
            .collect();
        rel.sort();
        rel
    }
}

/// Centers whose whole `K`-neighbourhood lies in the region.
pub fn interior_centers(ms: &ModelSet, radius: &Rational) -> Vec<usize> {
    let region = ms.region();
    (0..ms.len())
        .into_par_iter()
        .filter(|&i| region.contains_right_ball(&ms.points()[i], radius))
        .collect()
}

pub fn patch_at(ms: &ModelSet, center: usize, radius: &Rational) -> Result<PatchClass> {
    if center >= ms.len() {
        return Err(Error::InvalidParameter(format!("no point with index {center}")));
    }
    if radius.is_negative() {
        return Err(Error::InvalidParameter("patch radius must be nonnegative".into()));
    }
    if !ms.region().contains_right_ball(&ms.points()[center], radius) {
        return Err(Error::Erosion(format!(
            "center {center} is closer than {} to the region boundary",
            format_rational(radius)
        )));
    }
    let nb = Neighbors::new(ms, rational_to_f64(radius));
    Ok(PatchClass {
        radius: radius.clone(),
        relative_points: nb.patch(center, radius),
        multiplicity: 1,
    })
}

/// Patch of `points[center]` inside an arbitrary finite point list, by
/// exhaustive exact scan and without any boundary check.
pub fn patch_in_points(points: &[ExactPoint], center: usize, radius: &Rational) -> Result<Vec<ExactPoint>> {
    let c = &points[center];
    let mut rel = Vec::new();
    for p in points {
        if c.dist_leq(p, radius)? {
            rel.push(c.relative(p)?);
        }
    }
    rel.sort();
    Ok(rel)
}

#[derive(Clone, Debug)]
pub struct PatchCatalog {
    pub radius: Rational,
    /// Sorted by canonical form.
    pub classes: Vec<PatchClass>,
    pub centers: Vec<usize>,
    /// Class index of each entry of `centers`.
    pub class_of: Vec<usize>,
}

impl PatchCatalog {
    pub fn row(&self) -> ComplexityRow {
        ComplexityRow {
            radius: format_rational(&self.radius),
            classes: self.classes.len(),
            centers_sampled: self.centers.len(),
        }
    }

    pub fn forms(&self) -> HashSet<&[ExactPoint]> {
        self.classes.iter().map(|c| c.relative_points.as_slice()).collect()
    }

    /// Whether every class found here also occurs in `other`.
    pub fn is_subset_of(&self, other: &PatchCatalog) -> bool {
        let theirs = other.forms();
        self.classes
            .iter()
            .all(|c| theirs.contains(c.relative_points.as_slice()))
    }

    pub fn same_classes(&self, other: &PatchCatalog) -> bool {
        self.forms() == other.forms()
    }
}

/// All patch classes of radius `K` over the interior centers.
pub fn patch_catalog(ms: &ModelSet, radius: &Rational) -> Result<PatchCatalog> {
    if radius.is_negative() {
        return Err(Error::InvalidParameter("patch radius must be nonnegative".into()));
    }
    let centers = interior_centers(ms, radius);
    if centers.is_empty() {
        return Err(Error::Erosion(format!(
            "no point lies at distance {} from the region boundary",
            format_rational(radius)
        )));
    }
    let nb = Neighbors::new(ms, rational_to_f64(radius));
    let patches: Vec<Vec<ExactPoint>> = centers.par_iter().map(|&c| nb.patch(c, radius)).collect();

    let mut first_seen: HashMap<&Vec<ExactPoint>, usize> = HashMap::new();
    let mut forms: Vec<&Vec<ExactPoint>> = Vec::new();
    let mut raw_class = Vec::with_capacity(patches.len());
    for p in &patches {
        let next = forms.len();
        let id = *first_seen.entry(p).or_insert(next);
        if id == next {
            forms.push(p);
        }
        raw_class.push(id);
    }
    let mut order: Vec<usize> = (0..forms.len()).collect();
    order.sort_by(|&a, &b| forms[a].cmp(forms[b]));
    let mut rank = vec![0; forms.len()];
    for (r, &id) in order.iter().enumerate() {
        rank[id] = r;
    }
    let class_of: Vec<usize> = raw_class.iter().map(|&id| rank[id]).collect();
    let mut classes: Vec<PatchClass> = order
        .iter()
        .map(|&id| PatchClass {
            radius: radius.clone(),
            relative_points: forms[id].clone(),
            multiplicity: 0,
        })
        .collect();
    for &c in &class_of {
        classes[c].multiplicity += 1;
    }
    Ok(PatchCatalog {
        radius: radius.clone(),
        classes,
        centers,
        class_of,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexityRow {
    pub radius: String,
    pub classes: usize,
    pub centers_sampled: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ComplexityTable {
    pub rows: Vec<ComplexityRow>,
}

impl ComplexityTable {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("K,p_K,centers\n");
        for r in &self.rows {
            s.push_str(&format!("{},{},{}\n", r.radius, r.classes, r.centers_sampled));
        }
        s
    }
}

pub fn complexity_table(ms: &ModelSet, radii: &[Rational]) -> Result<(ComplexityTable, Vec<PatchCatalog>)> {
    let catalogs = radii
        .iter()
        .map(|r| patch_catalog(ms, r))
        .collect::<Result<Vec<_>>>()?;
    let table = ComplexityTable {
        rows: catalogs.iter().map(PatchCatalog::row).collect(),
    };
    Ok((table, catalogs))
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReturn {
    pub class: usize,
    pub occurrences: usize,
    /// Max over interior centers of the distance to the nearest other
    /// occurrence of this class.
    #[serde(serialize_with = "ser_f64_or_inf")]
    pub return_radius: f64,
    /// Set when the class occurs once, so the radius is only a lower bound.
    pub lower_bound: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RepetitivityReport {
    pub radius: String,
    pub classes: Vec<ClassReturn>,
    #[serde(serialize_with = "ser_f64_or_inf")]
    pub max_return_radius: f64,
    /// Same statistic anchored at grid probes `h` instead of points.
    pub grid_return_radius: Option<f64>,
    pub any_lower_bound: bool,
    pub finite_sample_estimate: bool,
}

/// Return radii of each patch class among the interior centers of `catalog`.
/// With `grid_step`, also the max over grid probes `h` of the distance to
/// the farthest-away nearest class occurrence.
pub fn repetitivity_radii(
    ms: &ModelSet,
    catalog: &PatchCatalog,
    grid_step: Option<&Rational>,
) -> Result<RepetitivityReport> {
    if catalog.centers.is_empty() {
        return Err(Error::Erosion("catalog has no interior centers".into()));
    }
    let kind = ms.scheme().group();
    let fp = ms.float_points();
    let limit = region_diameter(ms);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); catalog.classes.len()];
    for (&c, &cls) in catalog.centers.iter().zip(&catalog.class_of) {
        members[cls].push(c);
    }
    // cells matched to each class's typical spacing keep the queries local
    let volume: f64 = ms
        .region()
        .lo_f64()
        .iter()
        .zip(ms.region().hi_f64())
        .map(|(l, h)| (h - l).max(1.0))
        .product();
    let hom = kind.homogeneous_dim() as f64;
    let spacing: Vec<f64> = members
        .iter()
        .map(|m| (volume / m.len() as f64).powf(1.0 / hom).max(0.5))
        .collect();
    let indexes: Vec<CellIndex> = members
        .iter()
        .zip(&spacing)
        .map(|(m, &s)| CellIndex::new(fp, m.clone(), cell_for(kind, s)))
        .collect();

    let classes: Vec<ClassReturn> = (0..catalog.classes.len())
        .into_par_iter()
        .map(|cls| {
            let r = catalog
                .centers
                .iter()
                .filter_map(|&c| {
                    nearest(kind, &indexes[cls], fp, &fp[c], spacing[cls] / 2.0, limit, Some(c)).map(|(_, d)| d)
                })
                .fold(0.0, f64::max);
            let occurrences = members[cls].len();
            ClassReturn {
                class: cls,
                occurrences,
                return_radius: r,
                lower_bound: occurrences < 2,
            }
        })
        .collect();
    let max_return_radius = classes.iter().map(|c| c.return_radius).fold(0.0, f64::max);

    let grid_return_radius = match grid_step {
        None => None,
        Some(step) => {
            let probes = core_probes(ms, step, &catalog.radius)?;
            let v = probes
                .par_iter()
                .map(|h| {
                    indexes
                        .iter()
                        .zip(&spacing)
                        .map(|(idx, &sp)| {
                            nearest(kind, idx, fp, h, sp / 2.0, limit, None)
                                .map(|(_, d)| d)
                                .unwrap_or(f64::INFINITY)
                        })
                        .fold(0.0, f64::max)
                })
                .reduce(|| 0.0, f64::max);
            Some(v)
        }
    };

    Ok(RepetitivityReport {
        radius: format_rational(&catalog.radius),
        any_lower_bound: classes.iter().any(|c| c.lower_bound),
        classes,
        max_return_radius,
        grid_return_radius,
        finite_sample_estimate: true,
    })
}

fn region_diameter(ms: &ModelSet) -> f64 {
    let r = ms.region();
    r.lo_f64()
        .iter()
        .zip(r.hi_f64())
        .map(|(l, h)| h - l)
        .fold(1.0, f64::max)
}

fn core_probes(ms: &ModelSet, step: &Rational, erosion: &Rational) -> Result<Vec<Vec<f64>>> {
    let kind = ms.scheme().group();
    let s = rational_to_f64(step);
    if s <= 0.0 {
        return Err(Error::InvalidParameter("grid step must be positive".into()));
    }
    let region = ms.region();
    let mut axes = Vec::new();
    let mut total = 1usize;
    for (i, iv) in region.intervals().iter().enumerate() {
        let si = if kind.weight(i) == 2 { s * s } else { s };
        let (lo, hi) = (rational_to_f64(iv.lo()), rational_to_f64(iv.hi()));
        let count = ((hi - lo) / si).floor() as usize + 1;
        total = total.saturating_mul(count);
        if total > GRID_LIMIT {
            return Err(Error::InvalidParameter("too many grid probes".into()));
        }
        axes.push((0..count).map(|k| lo + k as f64 * si).collect::<Vec<f64>>());
    }
    let er = rational_to_f64(erosion);
    Ok(grid(&axes)
        .into_iter()
        .filter(|h| region.contains_right_ball_f64(h, er))
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodReport {
    pub gauge_bound: String,
    pub erosion: String,
    pub candidates_tested: usize,
    pub core_points: usize,
    /// Candidates `g != e` with `g lambda` in the set for every core point.
    pub nontrivial_periods: Vec<Vec<[String; 4]>>,
}

/// Exhaustive exact search for left periods `g` with `||g|| <= gauge_bound`.
///
/// A period maps a fixed core point `lambda_0` to some point `mu` of the set
/// with `||mu lambda_0^-1|| <= gauge_bound`, so the right differences
/// `mu lambda_0^-1` form a complete candidate list. Each candidate is kept
/// when `g lambda` belongs to the set for every point `lambda` whose left
/// `erosion`-ball lies inside the region.
pub fn period_search(ms: &ModelSet, gauge_bound: &Rational, erosion: &Rational) -> Result<PeriodReport> {
    if gauge_bound.is_negative() {
        return Err(Error::InvalidParameter("gauge bound must be nonnegative".into()));
    }
    if erosion < gauge_bound {
        return Err(Error::Erosion(format!(
            "erosion {} is smaller than the gauge bound {}",
            format_rational(erosion),
            format_rational(gauge_bound)
        )));
    }
    let kind = ms.scheme().group();
    let region = ms.region();
    let pts = ms.points();
    let core: Vec<usize> = (0..ms.len())
        .into_par_iter()
        .filter(|&i| region.contains_left_ball(&pts[i], erosion))
        .collect();
    let Some(&base) = core.first() else {
        return Err(Error::Erosion(format!(
            "no point has its {}-ball inside the region",
            format_rational(erosion)
        )));
    };
    let fp = ms.float_points();
    let bf = rational_to_f64(gauge_bound);
    let (lo, hi) = ball_box(kind, &fp[base], bf, false, SLACK);
    let index = CellIndex::all(fp, cell_for(kind, bf));
    let base_inv = pts[base].inverse();
    let mut candidates = Vec::new();
    index.query(fp, &lo, &hi, |j| {
        if j == base {
            return;
        }
        let g = pts[j].mul(&base_inv).expect("same scheme");
        if g.qnorm_leq(gauge_bound) {
            candidates.push(g);
        }
    });
    candidates.sort();
    candidates.dedup();

    let members: HashSet<&ExactPoint> = pts.iter().collect();
    let periods: Vec<Vec<[String; 4]>> = candidates
        .par_iter()
        .filter(|g| core.iter().all(|&i| members.contains(&g.mul(&pts[i]).expect("same scheme"))))
        .map(point_tuples)
        .collect();
    Ok(PeriodReport {
        gauge_bound: format_rational(gauge_bound),
        erosion: format_rational(erosion),
        candidates_tested: candidates.len(),
        core_points: core.len(),
        nontrivial_periods: periods,
    })
}

/// Parameters of a full analysis run.
#[derive(Clone, Debug)]
pub struct AnalysisConfig {
    pub radii: Vec<Rational>,
    pub erosion: Rational,
    pub grid_step: Rational,
    pub period_bound: Rational,
    pub regularity_bound: Rational,
}

impl AnalysisConfig {
    pub fn defaults(kind: GroupKind) -> Self {
        match kind {
            GroupKind::Euclidean { .. } => AnalysisConfig {
                radii: (1..=5).map(int).collect(),
                erosion: int(10),
                grid_step: crate::exactnum::rat(1, 4),
                period_bound: int(5),
                regularity_bound: int(5),
            },
            GroupKind::Heisenberg { .. } => AnalysisConfig {
                radii: vec![int(1)],
                erosion: int(2),
                grid_step: int(1),
                period_bound: int(2),
                regularity_bound: int(2),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassSummary {
    pub radius: String,
    pub sizes: Vec<usize>,
    pub multiplicities: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub input_hash: String,
    pub group: GroupKind,
    pub points: usize,
    pub regularity: RegularityReport,
    pub delone: DeloneReport,
    pub complexity: ComplexityTable,
    pub classes: Vec<ClassSummary>,
    pub repetitivity: Vec<RepetitivityReport>,
    pub periods: PeriodReport,
}

pub fn analyze(ms: &ModelSet, config: &AnalysisConfig, input_hash: &str) -> Result<AnalysisReport> {
    let regularity = check_window_regular(ms.scheme(), ms.window(), &config.regularity_bound)?;
    let delone = delone(ms, &config.grid_step, &config.erosion)?;
    let (complexity, catalogs) = complexity_table(ms, &config.radii)?;
    let repetitivity = catalogs
        .iter()
        .map(|c| repetitivity_radii(ms, c, Some(&config.grid_step)))
        .collect::<Result<Vec<_>>>()?;
    let classes = catalogs
        .iter()
        .map(|c| ClassSummary {
            radius: format_rational(&c.radius),
            sizes: c.classes.iter().map(|p| p.relative_points.len()).collect(),
            multiplicities: c.classes.iter().map(|p| p.multiplicity).collect(),
        })
        .collect();
    let erosion = if config.erosion < config.period_bound {
        config.period_bound.clone()
    } else {
        config.erosion.clone()
    };
    let periods = period_search(ms, &config.period_bound, &erosion)?;
    Ok(AnalysisReport {
        input_hash: input_hash.to_string(),
        group: ms.scheme().group(),
        points: ms.len(),
        regularity,
        delone,
        complexity,
        classes,
        repetitivity,
        periods,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutproject::{generate_model_set, AxisBox, Scheme};
    use crate::exactnum::{rat, Interval, RingSpec, RingVariant};

    fn line_set(lo: Rational, hi: Rational, r: i64) -> ModelSet {
        let kind = GroupKind::euclidean(1).unwrap();
        let s = Scheme::new(kind, RingSpec::z_sqrt(2).unwrap());
        let w = AxisBox::uniform(kind, Interval::new(lo, hi).unwrap());
        let reg = AxisBox::gauge_box(kind, &int(r)).unwrap();
        generate_model_set(&s, &w, &reg).unwrap()
    }

    fn integers(r: i64) -> ModelSet {
        let kind = GroupKind::euclidean(1).unwrap();
        let s = Scheme::new(kind, RingSpec::new(2, RingVariant::RationalIntegers).unwrap());
        let w = AxisBox::uniform(kind, Interval::new(rat(-2001, 2), rat(2001, 2)).unwrap());
        let reg = AxisBox::gauge_box(kind, &int(r)).unwrap();
        generate_model_set(&s, &w, &reg).unwrap()
    }

    fn sorted_values(ms: &ModelSet) -> Vec<f64> {
        ms.float_points().iter().map(|p| p[0]).collect()
    }

    #[test]
    fn separation_matches_sort_and_scan() {
        let ms = line_set(rat(-9, 10), rat(11, 10), 50);
        let sep = uniform_discreteness(&ms).unwrap();
        let v = sorted_values(&ms);
        let gap = v.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        assert!((sep.value - gap).abs() < 1e-9);
        assert!(sep.exact_positive);
    }

    #[test]
    fn single_point_separation_is_infinite() {
        let kind = GroupKind::euclidean(1).unwrap();
        let s = Scheme::new(kind, RingSpec::z_sqrt(2).unwrap());
        let w = AxisBox::uniform(kind, Interval::new(rat(-1, 2), rat(1, 2)).unwrap());
        let reg = AxisBox::uniform(kind, Interval::new(rat(-1, 2), rat(1, 2)).unwrap());
        let ms = generate_model_set(&s, &w, &reg).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(uniform_discreteness(&ms).unwrap().value, f64::INFINITY);
    }

    #[test]
    fn covering_within_grid_step_of_half_gap() {
        let ms = line_set(rat(-9, 10), rat(11, 10), 50);
        let step = rat(1, 20);
        let erosion = int(10);
        let cov = covering_radius(&ms, &step, &erosion).unwrap();
        let v: Vec<f64> = sorted_values(&ms);
        let max_gap = v
            .windows(2)
            .filter(|w| w[0] >= -41.0 && w[1] <= 41.0)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max);
        assert!(cov.value <= max_gap / 2.0 + 1e-12);
        assert!(cov.value >= max_gap / 2.0 - 0.05);
        assert!(covering_radius(&ms, &int(200), &int(1)).is_err());
        assert!(matches!(covering_radius(&ms, &step, &int(60)), Err(Error::Erosion(_))));
    }

    #[test]
    fn zero_radius_patch_is_identity() {
        let ms = line_set(rat(-9, 10), rat(11, 10), 20);
        let p = patch_at(&ms, ms.len() / 2, &int(0)).unwrap();
        assert_eq!(p.relative_points, vec![ms.scheme().identity()]);
        assert!(matches!(patch_at(&ms, 0, &int(3)), Err(Error::Erosion(_))));
    }

    #[test]
    fn patch_offsets_use_few_gaps() {
        let ms = line_set(rat(-9, 10), rat(11, 10), 50);
        let v = sorted_values(&ms);
        let mut gaps: Vec<f64> = v.windows(2).map(|w| w[1] - w[0]).collect();
        gaps.sort_by(f64::total_cmp);
        gaps.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        assert!(gaps.len() <= 3);
        let c = ms.len() / 2;
        let p = patch_at(&ms, c, &int(3)).unwrap();
        let offs: Vec<f64> = p.relative_points.iter().map(|q| q.coords()[0].to_f64()).collect();
        for w in offs.windows(2) {
            assert!(gaps.iter().any(|g| (w[1] - w[0] - g).abs() < 1e-9));
        }
    }

    #[test]
    fn periodic_control_has_one_class_and_a_period() {
        let ms = integers(50);
        for k in 1..=4 {
            let cat = patch_catalog(&ms, &int(k)).unwrap();
            assert_eq!(cat.classes.len(), 1);
            let rep = repetitivity_radii(&ms, &cat, None).unwrap();
            assert_eq!(rep.max_return_radius, 1.0);
        }
        let per = period_search(&ms, &int(5), &int(5)).unwrap();
        assert_eq!(per.nontrivial_periods.len(), 10);
    }

    #[test]
    fn sturmian_complexity_grows_and_has_no_period() {
        let ms = line_set(rat(-9, 10), rat(11, 10), 100);
        let (table, cats) = complexity_table(&ms, &[int(1), int(2), int(3), int(5)]).unwrap();
        assert!(table.rows.windows(2).all(|w| w[0].classes <= w[1].classes));
        assert!(table.rows.last().unwrap().classes > 1);
        for c in &cats {
            let total: usize = c.classes.iter().map(|p| p.multiplicity).sum();
            assert_eq!(total, c.centers.len());
        }
        let rep = repetitivity_radii(&ms, &cats[2], None).unwrap();
        assert!(rep.max_return_radius.is_finite());
        assert!(rep.max_return_radius <= 200.0);
        let per = period_search(&ms, &int(5), &int(5)).unwrap();
        assert!(per.nontrivial_periods.is_empty());
        assert!(per.candidates_tested > 0);
        assert!(matches!(period_search(&ms, &int(5), &int(4)), Err(Error::Erosion(_))));
    }
}
