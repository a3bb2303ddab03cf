//! Uniform-grid bucketing of float coordinates. Only a prefilter: every
//! membership decision downstream is made exactly.

use std::collections::HashMap;

use crate::heis::GroupKind;

pub(crate) struct CellIndex {
    cell: Vec<f64>,
    members: Vec<usize>,
    cells: HashMap<Vec<i64>, Vec<usize>>,
}

impl CellIndex {
    pub(crate) fn new(points: &[Vec<f64>], members: Vec<usize>, cell: Vec<f64>) -> Self {
        let mut cells: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        for &i in &members {
            cells.entry(key(&points[i], &cell)).or_default().push(i);
        }
        CellIndex {
            cell,
            members,
            cells,
        }
    }

    pub(crate) fn all(points: &[Vec<f64>], cell: Vec<f64>) -> Self {
        Self::new(points, (0..points.len()).collect(), cell)
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Calls `f` for every indexed point inside the closed box `[lo, hi]`.
    pub(crate) fn query(
        &self,
        points: &[Vec<f64>],
        lo: &[f64],
        hi: &[f64],
        mut f: impl FnMut(usize),
    ) {
        let klo = key(lo, &self.cell);
        let khi = key(hi, &self.cell);
        let span: f64 = klo
            .iter()
            .zip(&khi)
            .map(|(a, b)| (b - a + 1) as f64)
            .product();
        let inside = |p: &[f64]| p.iter().zip(lo.iter().zip(hi)).all(|(v, (l, h))| l <= v && v <= h);
        if span > self.members.len() as f64 {
            for &i in &self.members {
                if inside(&points[i]) {
                    f(i);
                }
            }
            return;
        }
        let mut k = klo.clone();
        loop {
            if let Some(bucket) = self.cells.get(&k) {
                for &i in bucket {
                    if inside(&points[i]) {
                        f(i);
                    }
                }
            }
            // odometer increment over the key range
            let mut axis = 0;
            loop {
                if axis == k.len() {
                    return;
                }
                if k[axis] < khi[axis] {
                    k[axis] += 1;
                    break;
                }
                k[axis] = klo[axis];
                axis += 1;
            }
        }
    }
}

fn key(p: &[f64], cell: &[f64]) -> Vec<i64> {
    p.iter()
        .zip(cell)
        .map(|(v, c)| (v / c).floor() as i64)
        .collect()
}

/// Cell sizes suited to neighbourhoods of gauge radius `r`.
pub(crate) fn cell_for(kind: GroupKind, r: f64) -> Vec<f64> {
    let r = r.max(0.5);
    (0..kind.dim())
        .map(|i| if kind.weight(i) == 2 { r * r } else { r })
        .collect()
}

/// Bounding box of `{ c g : ||g|| <= r }` (right translates) when `right`,
/// of `{ g c : ||g|| <= r }` otherwise, padded by `slack`.
pub(crate) fn ball_box(
    kind: GroupKind,
    c: &[f64],
    r: f64,
    right: bool,
    slack: f64,
) -> (Vec<f64>, Vec<f64>) {
    let shear: f64 = match kind {
        GroupKind::Heisenberg { n } => {
            let part = if right { &c[..n] } else { &c[n..2 * n] };
            part.iter().map(|v| v.abs()).sum()
        }
        GroupKind::Euclidean { .. } => 0.0,
    };
    let mut lo = Vec::with_capacity(c.len());
    let mut hi = Vec::with_capacity(c.len());
    for (i, v) in c.iter().enumerate() {
        let m = if kind.weight(i) == 2 { r * r + r * shear } else { r };
        let pad = slack * (1.0 + v.abs() + m);
        lo.push(v - m - pad);
        hi.push(v + m + pad);
    }
    (lo, hi)
}

/// Directed gauge `||a^-1 b||` on raw float coordinates.
pub(crate) fn directed_gauge(kind: GroupKind, a: &[f64], b: &[f64]) -> f64 {
    match kind {
        GroupKind::Euclidean { .. } => a
            .iter()
            .zip(b)
            .map(|(x, y)| (y - x).abs())
            .fold(0.0, f64::max),
        GroupKind::Heisenberg { n } => {
            let mut g = 0.0f64;
            let mut t = b[2 * n] - a[2 * n];
            for i in 0..n {
                let dx = b[i] - a[i];
                let dy = b[n + i] - a[n + i];
                g = g.max(dx.abs()).max(dy.abs());
                t -= a[i] * dy;
            }
            g.max(t.abs().sqrt())
        }
    }
}

/// Symmetric distance `max(||a^-1 b||, ||b^-1 a||)` on float coordinates.
pub(crate) fn sym_dist(kind: GroupKind, a: &[f64], b: &[f64]) -> f64 {
    match kind {
        GroupKind::Euclidean { .. } => directed_gauge(kind, a, b),
        GroupKind::Heisenberg { n } => {
            let mut g = 0.0f64;
            let mut t = b[2 * n] - a[2 * n];
            let mut inner = 0.0;
            for i in 0..n {
                let dx = b[i] - a[i];
                let dy = b[n + i] - a[n + i];
                g = g.max(dx.abs()).max(dy.abs());
                t -= a[i] * dy;
                inner += dx * dy;
            }
            // (a^-1 b)^-1 has central coordinate <dx, dy> - t
            g.max(t.abs().sqrt()).max((inner - t).abs().sqrt())
        }
    }
}

/// Nearest indexed point to `q` under the symmetric distance, searching balls
/// of doubling radius from `start` up to `limit`.
pub(crate) fn nearest(
    kind: GroupKind,
    index: &CellIndex,
    points: &[Vec<f64>],
    q: &[f64],
    start: f64,
    limit: f64,
    exclude: Option<usize>,
) -> Option<(usize, f64)> {
    if index.is_empty() {
        return None;
    }
    let mut r = start.max(1e-9);
    loop {
        let (lo, hi) = ball_box(kind, q, r, true, 1e-9);
        let mut best: Option<(usize, f64)> = None;
        index.query(points, &lo, &hi, |i| {
            if Some(i) == exclude {
                return;
            }
            let dist = sym_dist(kind, q, &points[i]);
            if best.is_none_or(|(_, b)| dist < b) {
                best = Some((i, dist));
            }
        });
        if let Some((i, dist)) = best {
            if dist <= r {
                return Some((i, dist));
            }
        }
        if r > limit {
            return best;
        }
        r *= 2.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_distance_matches_definition() {
        let kind = GroupKind::Heisenberg { n: 1 };
        // a = (1, 1, 0), b = (1, 2, 0): a^-1 b = (0, 1, -1), inverse (0, -1, 1)
        let a = [1.0, 1.0, 0.0];
        let b = [1.0, 2.0, 0.0];
        assert_eq!(directed_gauge(kind, &a, &b), 1.0);
        assert_eq!(sym_dist(kind, &a, &b), 1.0);
        let b = [1.0, 1.0, 4.0];
        assert_eq!(sym_dist(kind, &a, &b), 2.0);
    }

    #[test]
    fn query_and_nearest() {
        let kind = GroupKind::Euclidean { m: 2 };
        let pts: Vec<Vec<f64>> = (0..10)
            .flat_map(|i| (0..10).map(move |j| vec![i as f64, j as f64]))
            .collect();
        let idx = CellIndex::all(&pts, vec![1.0, 1.0]);
        let mut hits = Vec::new();
        idx.query(&pts, &[1.5, 1.5], &[3.0, 2.0], |i| hits.push(i));
        hits.sort();
        assert_eq!(hits, vec![22, 32]);
        let (i, d) = nearest(kind, &idx, &pts, &[4.2, 7.9], 0.1, 100.0, None).unwrap();
        assert_eq!(i, 48);
        assert!((d - 0.2).abs() < 1e-12);
        let (_, d) = nearest(kind, &idx, &pts, &[4.0, 8.0], 0.1, 100.0, Some(48)).unwrap();
        assert_eq!(d, 1.0);
    }
}
