//! Word balls in `Z^m` and `H_n(Z)`, growth-exponent fits, and the greedy
//! packing/cover experiment on finite balls.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::heis::{GroupKind, IntPoint};

pub const DEFAULT_BUDGET: usize = 50_000_000;

/// Element budget, overridable through `APERCUT_BUDGET`.
pub fn budget_from_env() -> Result<usize> {
    match std::env::var("APERCUT_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("APERCUT_BUDGET={v} is not a count"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

/// Parses `z<m>` or `h<n>z`, e.g. `z2` or `h1z`.
pub fn parse_group(name: &str) -> Result<GroupKind> {
    let bad = || Error::InvalidParameter(format!("unknown group {name:?}; expected z<m> or h<n>z"));
    let s = name.trim().to_ascii_lowercase();
    if let Some(rest) = s.strip_prefix('h').and_then(|r| r.strip_suffix('z')) {
        GroupKind::heisenberg(rest.parse().map_err(|_| bad())?)
    } else if let Some(rest) = s.strip_prefix('z') {
        GroupKind::euclidean(rest.parse().map_err(|_| bad())?)
    } else {
        Err(bad())
    }
}

/// Symmetric generating set without the identity, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSet {
    group: GroupKind,
    generators: Vec<IntPoint>,
}

impl GenSet {
    pub fn new(group: GroupKind, gens: Vec<IntPoint>) -> Result<Self> {
        let mut all = Vec::with_capacity(2 * gens.len());
        for g in gens {
            if g.kind() != group {
                return Err(Error::KindMismatch(format!("generator {g} is not in {group}")));
            }
            if g.is_identity() {
                continue;
            }
            all.push(g.inverse());
            all.push(g);
        }
        all.sort();
        all.dedup();
        if all.is_empty() {
            return Err(Error::InvalidParameter("generating set is empty".into()));
        }
        Ok(GenSet {
            group,
            generators: all,
        })
    }

    /// Unit vectors of every horizontal coordinate and their inverses.
    pub fn standard(group: GroupKind) -> Self {
        let gens = IntPoint::standard_generators(group, 1);
        GenSet::new(group, gens).expect("standard generators are nonempty")
    }

    pub fn group(&self) -> GroupKind {
        self.group
    }

    pub fn generators(&self) -> &[IntPoint] {
        &self.generators
    }

    pub fn coordinate_lists(&self) -> Vec<Vec<i64>> {
        self.generators.iter().map(|g| g.coords().to_vec()).collect()
    }
}

/// Word balls `B_0 ⊆ ... ⊆ B_k` stored as spheres in discovery order.
#[derive(Clone, Debug)]
pub struct WordBalls {
    gens: GenSet,
    /// `spheres[j]` holds the elements of word length exactly `j`, sorted.
    spheres: Vec<Vec<IntPoint>>,
    length: HashMap<IntPoint, usize>,
}

impl WordBalls {
    /// Breadth-first enumeration up to radius `k_max`; fails once more than
    /// `budget` elements would be stored.
    pub fn compute(gens: &GenSet, k_max: usize, budget: usize) -> Result<Self> {
        let identity = IntPoint::identity(gens.group, 0);
        let mut length = HashMap::new();
        length.insert(identity.clone(), 0);
        let mut spheres = vec![vec![identity]];
        for k in 1..=k_max {
            let frontier = &spheres[k - 1];
            let mut next: Vec<IntPoint> = frontier
                .par_iter()
                .flat_map_iter(|g| gens.generators.iter().map(move |s| g.mul_unchecked(s)))
                .filter(|h| !length.contains_key(h))
                .collect();
            next.par_sort();
            next.dedup();
            if length.len() + next.len() > budget {
                return Err(Error::BudgetExceeded { budget });
            }
            for h in &next {
                length.insert(h.clone(), k);
            }
            spheres.push(next);
        }
        Ok(WordBalls {
            gens: gens.clone(),
            spheres,
            length,
        })
    }

    pub fn radius(&self) -> usize {
        self.spheres.len() - 1
    }

    pub fn gens(&self) -> &GenSet {
        &self.gens
    }

    pub fn count(&self, k: usize) -> u64 {
        self.spheres[..=k.min(self.radius())]
            .iter()
            .map(|s| s.len() as u64)
            .sum()
    }

    /// Word length of `g` if it is at most the computed radius.
    pub fn word_length(&self, g: &IntPoint) -> Option<usize> {
        self.length.get(g).copied()
    }

    pub fn in_ball(&self, g: &IntPoint, k: usize) -> bool {
        self.word_length(g).is_some_and(|l| l <= k)
    }

    /// Elements of `B_k` in canonical order: by word length, then
    /// lexicographically.
    pub fn ball(&self, k: usize) -> impl Iterator<Item = &IntPoint> {
        self.spheres[..=k.min(self.radius())].iter().flatten()
    }

    pub fn table(&self) -> BallTable {
        let mut total = 0u64;
        let rows = self
            .spheres
            .iter()
            .enumerate()
            .map(|(k, s)| {
                total += s.len() as u64;
                BallRow { k, count: total }
            })
            .collect();
        BallTable {
            group: self.gens.group,
            generators: self.gens.coordinate_lists(),
            rows,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BallRow {
    pub k: usize,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallTable {
    pub group: GroupKind,
    pub generators: Vec<Vec<i64>>,
    pub rows: Vec<BallRow>,
}

impl BallTable {
    pub fn counts(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.count).collect()
    }

    pub fn to_csv(&self) -> String {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("({})", g.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")))
            .collect();
        let mut s = format!("# group {}\n# generators {}\nk,count\n", self.group, gens.join(" "));
        for r in &self.rows {
            s.push_str(&format!("{},{}\n", r.k, r.count));
        }
        s
    }
}

pub fn bfs_balls(gens: &GenSet, k_max: usize, budget: usize) -> Result<BallTable> {
    Ok(WordBalls::compute(gens, k_max, budget)?.table())
}

#[derive(Clone, Debug, Serialize)]
pub struct FitReport {
    pub k_min: usize,
    pub rows_used: usize,
    /// Least-squares slope of `log |B_k|` against `log k`.
    pub exponent: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit.
    pub residual: f64,
    /// `(k, |B_2k| / |B_k|)` for every `k >= 1` with `2k` in the table.
    pub ratios: Vec<(usize, f64)>,
    pub d_used: Option<u32>,
    /// `(k, |B_k| / k^d)` for `k >= k_min`.
    pub c_estimates: Vec<(usize, f64)>,
}

pub fn fit_growth_exponent(table: &BallTable, k_min: usize, d: Option<u32>) -> Result<FitReport> {
    if let Some(w) = table.rows.windows(2).find(|w| w[1].count <= w[0].count) {
        return Err(Error::InvalidParameter(format!(
            "ball counts are non-increasing at k={}",
            w[1].k
        )));
    }
    let used: Vec<&BallRow> = table.rows.iter().filter(|r| r.k >= k_min.max(1)).collect();
    if used.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "{} rows with k >= {}; need at least 3",
            used.len(),
            k_min.max(1)
        )));
    }
    let xs: Vec<f64> = used.iter().map(|r| (r.k as f64).ln()).collect();
    let ys: Vec<f64> = used.iter().map(|r| (r.count as f64).ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let residual = (xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - exponent * x).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    let count: HashMap<usize, u64> = table.rows.iter().map(|r| (r.k, r.count)).collect();
    let ratios = table
        .rows
        .iter()
        .filter(|r| r.k >= 1)
        .filter_map(|r| count.get(&(2 * r.k)).map(|c2| (r.k, *c2 as f64 / r.count as f64)))
        .collect();
    let c_estimates = match d {
        Some(d) => used
            .iter()
            .map(|r| (r.k, r.count as f64 / (r.k as f64).powi(d as i32)))
            .collect(),
        None => Vec::new(),
    };
    Ok(FitReport {
        k_min,
        rows_used: used.len(),
        exponent,
        intercept,
        residual,
        ratios,
        d_used: d,
        c_estimates,
    })
}

/// Greedy maximal `2n`-separated subset of `B_{an}`: an element is kept when
/// no earlier kept `s` has `s^-1 g` in `B_{2n}`.
pub fn greedy_maximal_separated(balls: &WordBalls, a: usize, n: usize) -> Result<Vec<IntPoint>> {
    need_radius(balls, (a * n).max(2 * n))?;
    let mut kept: Vec<IntPoint> = Vec::new();
    let mut inverses: Vec<IntPoint> = Vec::new();
    for g in balls.ball(a * n) {
        let separated = inverses
            .par_iter()
            .all(|s_inv| !balls.in_ball(&s_inv.mul_unchecked(g), 2 * n));
        if separated {
            inverses.push(g.inverse());
            kept.push(g.clone());
        }
    }
    Ok(kept)
}

fn need_radius(balls: &WordBalls, k: usize) -> Result<()> {
    if balls.radius() < k {
        return Err(Error::InvalidParameter(format!(
            "word balls computed to radius {}, need {k}",
            balls.radius()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub group: GroupKind,
    pub generators: Vec<Vec<i64>>,
    pub a: usize,
    pub n: usize,
    pub packing_size: usize,
    pub d_used: u32,
    /// `(a+1)^d`, as a decimal string.
    pub bound: String,
    pub within_bound: bool,
    /// Every element of `B_{an}` lies in some `s B_{2n}`.
    pub covered: bool,
    /// The translates `s B_n` are pairwise disjoint.
    pub disjoint: bool,
    pub ball_n: u64,
    pub ball_a_plus_1_n: u64,
    /// `|S| |B_n| <= |B_{(a+1)n}|`.
    pub volume_check: bool,
}

pub fn verify_cover(balls: &WordBalls, s: &[IntPoint], a: usize, n: usize, d_used: u32) -> Result<CoverReport> {
    need_radius(balls, (a + 1) * n)?;
    let inverses: Vec<IntPoint> = s.iter().map(IntPoint::inverse).collect();
    let targets: Vec<&IntPoint> = balls.ball(a * n).collect();
    let covered = targets.par_iter().all(|g| {
        inverses
            .iter()
            .any(|si| balls.in_ball(&si.mul_unchecked(g), 2 * n))
    });
    let ball_n: Vec<&IntPoint> = balls.ball(n).collect();
    let mut union: HashSet<IntPoint> = HashSet::with_capacity(s.len() * ball_n.len());
    let mut disjoint = true;
    for si in s {
        for b in &ball_n {
            if !union.insert(si.mul_unchecked(b)) {
                disjoint = false;
            }
        }
    }
    let ball_n_count = balls.count(n);
    let ball_big = balls.count((a + 1) * n);
    let bound = BigUint::from(a + 1).pow(d_used);
    Ok(CoverReport {
        group: balls.gens.group,
        generators: balls.gens.coordinate_lists(),
        a,
        n,
        packing_size: s.len(),
        d_used,
        within_bound: BigUint::from(s.len()) <= bound,
        bound: bound.to_string(),
        covered,
        disjoint,
        ball_n: ball_n_count,
        ball_a_plus_1_n: ball_big,
        volume_check: BigUint::from(s.len()) * BigUint::from(ball_n_count) <= BigUint::from(ball_big),
    })
}

/// Computes the balls, the greedy packing and the cover report in one go.
pub fn cover_experiment(
    gens: &GenSet,
    a: usize,
    n: usize,
    d_used: u32,
    budget: usize,
) -> Result<(Vec<IntPoint>, CoverReport)> {
    if a == 0 || n == 0 {
        return Err(Error::InvalidParameter("a and n must be positive".into()));
    }
    let balls = WordBalls::compute(gens, (a + 1) * n, budget)?;
    let s = greedy_maximal_separated(&balls, a, n)?;
    let report = verify_cover(&balls, &s, a, n, d_used)?;
    Ok((s, report))
}
