//! Dimension-bound formulas and the hypothesis checklist for crossed-product
//! classifiability. Integers are arbitrary precision.

use num_bigint::BigUint;
use serde::Serialize;

use crate::analysis::AnalysisReport;
use crate::cutproject::RegularityReport;
use crate::error::{Error, Result};
use crate::heis::GroupKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundInput {
    pub d_g: u32,
    pub dim_x: u64,
}

/// `11^dG (dimX + 1) - 1`
pub fn tube_dim_bound(input: BoundInput) -> BigUint {
    BigUint::from(11u32).pow(input.d_g) * (input.dim_x + 1) - 1u32
}

/// `(dimX + 1)(dimTube + 1) - 1`
pub fn nuclear_dim_from_tube(dim_x: &BigUint, dim_tube: &BigUint) -> BigUint {
    (dim_x + 1u32) * (dim_tube + 1u32) - 1u32
}

/// `11^dG (dimX + 1)^2 - 1`
pub fn nuclear_dim_bound(input: BoundInput) -> BigUint {
    let direct = BigUint::from(11u32).pow(input.d_g) * BigUint::from(input.dim_x + 1).pow(2) - 1u32;
    let composed = nuclear_dim_from_tube(&BigUint::from(input.dim_x), &tube_dim_bound(input));
    assert_eq!(direct, composed, "bound composition identity");
    direct
}

/// Covering dimension of the group, which bounds that of the hull.
pub fn hull_dim_bound(group: GroupKind) -> u64 {
    group.dim() as u64
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub input: BoundInput,
    pub formulas: [&'static str; 3],
    pub tube_dim_bound: String,
    pub nuclear_dim_from_tube: String,
    pub nuclear_dim_bound: String,
}

pub fn bounds_report(input: BoundInput) -> BoundsReport {
    let tube = tube_dim_bound(input);
    BoundsReport {
        input,
        formulas: [
            "tube_dim <= 11^dG * (dimX + 1) - 1",
            "nuclear_dim <= (dimX + 1) * (tube_dim + 1) - 1",
            "nuclear_dim <= 11^dG * (dimX + 1)^2 - 1",
        ],
        nuclear_dim_from_tube: nuclear_dim_from_tube(&BigUint::from(input.dim_x), &tube).to_string(),
        tube_dim_bound: tube.to_string(),
        nuclear_dim_bound: nuclear_dim_bound(input).to_string(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Evidence {
    VerifiedFinite,
    EvidenceOnly,
    Failed,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifiabilityChecklist {
    pub input_hash: String,
    pub group: GroupKind,
    pub flc_evidence: Evidence,
    pub delone_evidence: Evidence,
    pub repetitivity_evidence: Evidence,
    pub aperiodicity_evidence: Evidence,
    pub window_regular: bool,
    pub d_g: u32,
    pub dim_x: u64,
    pub dim_bound_used: String,
    pub supported: bool,
    pub verdict: String,
}

/// Audits the finite-sample reports of one model set. `regularity` carries
/// the hash of the file it was computed on, which must match the analysis.
pub fn checklist(
    analysis: &AnalysisReport,
    regularity: (&str, &RegularityReport),
    d_g: u32,
) -> Result<ClassifiabilityChecklist> {
    let (reg_hash, reg) = regularity;
    if reg_hash != analysis.input_hash {
        return Err(Error::Provenance {
            expected: analysis.input_hash.clone(),
            found: reg_hash.to_string(),
        });
    }
    let sep = &analysis.delone.separation;
    let delone = if sep.exact_positive && analysis.delone.covering.value.is_finite() {
        Evidence::EvidenceOnly
    } else {
        Evidence::Failed
    };
    let rows = &analysis.complexity.rows;
    let flc = if !rows.is_empty()
        && rows.iter().all(|r| r.classes >= 1)
        && rows.windows(2).all(|w| w[0].classes <= w[1].classes)
    {
        Evidence::EvidenceOnly
    } else {
        Evidence::Failed
    };
    let repetitivity = if !analysis.repetitivity.is_empty()
        && analysis.repetitivity.iter().all(|r| r.max_return_radius.is_finite())
    {
        Evidence::EvidenceOnly
    } else {
        Evidence::Failed
    };
    let aperiodicity = if analysis.periods.nontrivial_periods.is_empty() {
        Evidence::EvidenceOnly
    } else {
        Evidence::Failed
    };
    let window_regular = reg.boundary_clear && reg.interior_nonempty;
    let dim_x = hull_dim_bound(analysis.group);
    let bound = nuclear_dim_bound(BoundInput { d_g, dim_x });
    let evidence = [
        ("FLC", flc),
        ("Delone", delone),
        ("repetitivity", repetitivity),
        ("aperiodicity", aperiodicity),
    ];
    let failed: Vec<&str> = evidence
        .iter()
        .filter(|(_, e)| *e == Evidence::Failed)
        .map(|(n, _)| *n)
        .collect();
    let supported = failed.is_empty() && window_regular;
    let verdict = if supported {
        format!(
            "hypotheses empirically supported at scale {} points; nuclear dimension bound {} applies if they hold for the infinite set",
            analysis.points, bound
        )
    } else {
        let mut why: Vec<String> = failed.iter().map(|n| format!("{n} failed")).collect();
        if !window_regular {
            why.push("window not regular".into());
        }
        format!(
            "hypotheses not supported at scale {} points: {}",
            analysis.points,
            why.join(", ")
        )
    };
    Ok(ClassifiabilityChecklist {
        input_hash: analysis.input_hash.clone(),
        group: analysis.group,
        flc_evidence: flc,
        delone_evidence: delone,
        repetitivity_evidence: repetitivity,
        aperiodicity_evidence: aperiodicity,
        window_regular,
        d_g,
        dim_x,
        dim_bound_used: bound.to_string(),
        supported,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(d_g: u32, dim_x: u64) -> BoundInput {
        BoundInput { d_g, dim_x }
    }

    #[test]
    fn formula_instances() {
        assert_eq!(tube_dim_bound(b(0, 0)), BigUint::from(0u32));
        assert_eq!(tube_dim_bound(b(1, 1)), BigUint::from(21u32));
        assert_eq!(tube_dim_bound(b(2, 0)), BigUint::from(120u32));
        let n = |x: u64, t: u64| nuclear_dim_from_tube(&BigUint::from(x), &BigUint::from(t));
        assert_eq!(n(0, 0), BigUint::from(0u32));
        assert_eq!(n(1, 21), BigUint::from(43u32));
        assert_eq!(n(2, 2), BigUint::from(8u32));
        assert_eq!(nuclear_dim_bound(b(1, 1)), BigUint::from(43u32));
        assert_eq!(nuclear_dim_bound(b(4, 3)), BigUint::from(234255u32));
    }

    #[test]
    fn monotone_and_large() {
        for d in 0..6 {
            for x in 0..6 {
                assert!(nuclear_dim_bound(b(d, x)) <= nuclear_dim_bound(b(d + 1, x)));
                assert!(nuclear_dim_bound(b(d, x)) <= nuclear_dim_bound(b(d, x + 1)));
                assert!(tube_dim_bound(b(d, x)) <= tube_dim_bound(b(d, x + 1)));
            }
        }
        assert_eq!(nuclear_dim_bound(b(40, 0)), BigUint::from(11u32).pow(40) - 1u32);
    }

    #[test]
    fn hull_dims() {
        assert_eq!(hull_dim_bound(GroupKind::heisenberg(1).unwrap()), 3);
        assert_eq!(hull_dim_bound(GroupKind::heisenberg(2).unwrap()), 5);
        assert_eq!(hull_dim_bound(GroupKind::euclidean(1).unwrap()), 1);
    }
}
