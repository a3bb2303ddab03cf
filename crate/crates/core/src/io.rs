//! Versioned JSON model-set files with a content hash, and CSV exports.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::cutproject::{AxisBox, ModelSet, Scheme};
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, Interval, QuadNum, RingSpec, RingVariant};
use crate::heis::{ExactPoint, GroupKind};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<usize>,
    pub d: u64,
    pub ring: String,
}

impl SchemeJson {
    pub fn from_scheme(s: &Scheme) -> Self {
        let (kind, n, m) = match s.group() {
            GroupKind::Heisenberg { n } => ("heisenberg", Some(n), None),
            GroupKind::Euclidean { m } => ("euclidean", None, Some(m)),
        };
        SchemeJson {
            kind: kind.into(),
            n,
            m,
            d: s.d(),
            ring: s.ring().variant().tag().into(),
        }
    }

    pub fn to_scheme(&self) -> Result<Scheme> {
        let group = match (self.kind.as_str(), self.n, self.m) {
            ("heisenberg", Some(n), None) => GroupKind::heisenberg(n)?,
            ("euclidean", None, Some(m)) => GroupKind::euclidean(m)?,
            _ => return Err(Error::Format(format!("bad scheme kind {:?}", self.kind))),
        };
        let ring = RingSpec::new(self.d, RingVariant::from_tag(&self.ring)?)?;
        Ok(Scheme::new(group, ring))
    }
}

pub fn box_to_json(b: &AxisBox) -> Vec<[String; 2]> {
    b.intervals()
        .iter()
        .map(|iv| [format_rational(iv.lo()), format_rational(iv.hi())])
        .collect()
}

pub fn box_from_json(kind: GroupKind, v: &[[String; 2]]) -> Result<AxisBox> {
    let intervals = v
        .iter()
        .map(|[lo, hi]| Interval::new(parse_rational(lo)?, parse_rational(hi)?))
        .collect::<Result<Vec<_>>>()?;
    AxisBox::new(kind, intervals)
}

type PointJson = Vec<[String; 4]>;

/// Everything the content hash covers, in a fixed field order.
#[derive(Serialize)]
struct Hashed<'a> {
    format: u32,
    scheme: &'a SchemeJson,
    window: &'a [[String; 2]],
    region: &'a [[String; 2]],
    points: &'a [PointJson],
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ModelSetFile {
    pub format: u32,
    pub content_hash: String,
    pub config: Value,
    pub scheme: SchemeJson,
    pub window: Vec<[String; 2]>,
    pub region: Vec<[String; 2]>,
    #[serde(default)]
    pub regularity: Value,
    pub count: usize,
    pub points: Vec<PointJson>,
    pub float_points: Vec<Vec<f64>>,
}

fn hash_of(scheme: &SchemeJson, window: &[[String; 2]], region: &[[String; 2]], points: &[PointJson]) -> String {
    let canon = serde_json::to_vec(&Hashed {
        format: FORMAT_VERSION,
        scheme,
        window,
        region,
        points,
    })
    .expect("plain data serializes");
    hex::encode(Sha256::digest(&canon))
}

/// Hex SHA-256 of the canonical JSON of scheme, window, region and points.
pub fn content_hash(ms: &ModelSet) -> String {
    let points: Vec<PointJson> = ms.points().iter().map(point_json).collect();
    hash_of(
        &SchemeJson::from_scheme(ms.scheme()),
        &box_to_json(ms.window()),
        &box_to_json(ms.region()),
        &points,
    )
}

fn point_json(p: &ExactPoint) -> PointJson {
    p.coords().iter().map(QuadNum::to_tuple).collect()
}

/// The file contents; `config` and `regularity` are stored verbatim.
pub fn model_set_file(ms: &ModelSet, config: Value, regularity: Value) -> ModelSetFile {
    let scheme = SchemeJson::from_scheme(ms.scheme());
    let window = box_to_json(ms.window());
    let region = box_to_json(ms.region());
    let points: Vec<PointJson> = ms.points().iter().map(point_json).collect();
    ModelSetFile {
        format: FORMAT_VERSION,
        content_hash: hash_of(&scheme, &window, &region, &points),
        config,
        scheme,
        window,
        region,
        regularity,
        count: points.len(),
        points,
        float_points: ms.float_points().to_vec(),
    }
}

pub fn to_json(file: &ModelSetFile) -> Result<String> {
    let mut s = serde_json::to_string(file)?;
    s.push('\n');
    Ok(s)
}

/// Parses a model-set file, rebuilds the exact set and checks its invariants
/// and content hash. Returns the set and the verified hash.
pub fn load_model_set(json: &str) -> Result<(ModelSet, String)> {
    let file: ModelSetFile = serde_json::from_str(json)?;
    if file.format != FORMAT_VERSION {
        return Err(Error::Format(format!("unsupported format version {}", file.format)));
    }
    let found = hash_of(&file.scheme, &file.window, &file.region, &file.points);
    if found != file.content_hash {
        return Err(Error::Provenance {
            expected: file.content_hash,
            found,
        });
    }
    let scheme = file.scheme.to_scheme()?;
    let kind = scheme.group();
    let window = box_from_json(kind, &file.window)?;
    let region = box_from_json(kind, &file.region)?;
    let points = file
        .points
        .iter()
        .map(|p| {
            let coords = p
                .iter()
                .map(|t| QuadNum::from_tuple(t, scheme.d()))
                .collect::<Result<Vec<_>>>()?;
            ExactPoint::new(kind, coords)
        })
        .collect::<Result<Vec<_>>>()?;
    let ms = ModelSet::from_parts(scheme, window, region, points)?;
    Ok((ms, found))
}

/// Float coordinates with a header naming each axis.
pub fn float_csv(ms: &ModelSet) -> String {
    let kind = ms.scheme().group();
    let header: Vec<String> = match kind {
        GroupKind::Heisenberg { n } => (1..=n)
            .map(|i| format!("x{i}"))
            .chain((1..=n).map(|i| format!("y{i}")))
            .chain(["t".to_string()])
            .collect(),
        GroupKind::Euclidean { m } => (1..=m).map(|i| format!("x{i}")).collect(),
    };
    let mut s = header.join(",");
    s.push('\n');
    for p in ms.float_points() {
        let row: Vec<String> = p.iter().map(f64::to_string).collect();
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutproject::{default_region, default_window, generate_model_set};
    use crate::exactnum::rat;

    fn sample() -> ModelSet {
        let kind = GroupKind::heisenberg(1).unwrap();
        let s = Scheme::new(kind, RingSpec::z_sqrt(2).unwrap());
        let reg = AxisBox::gauge_box(kind, &rat(3, 1)).unwrap();
        generate_model_set(&s, &default_window(kind), &reg).unwrap()
    }

    #[test]
    fn round_trip_preserves_points_and_hash() {
        let ms = sample();
        let json = to_json(&model_set_file(&ms, Value::Null, Value::Null)).unwrap();
        let (back, hash) = load_model_set(&json).unwrap();
        assert_eq!(back.points(), ms.points());
        assert_eq!(hash, content_hash(&ms));
        assert_eq!(to_json(&model_set_file(&back, Value::Null, Value::Null)).unwrap(), json);
    }

    #[test]
    fn tampering_is_detected() {
        let ms = sample();
        let mut file = model_set_file(&ms, Value::Null, Value::Null);
        file.content_hash = "0".repeat(64);
        let json = to_json(&file).unwrap();
        assert!(matches!(load_model_set(&json), Err(Error::Provenance { .. })));

        let mut file = model_set_file(&ms, Value::Null, Value::Null);
        file.points.pop();
        let json = to_json(&file).unwrap();
        assert!(matches!(load_model_set(&json), Err(Error::Provenance { .. })));
    }

    #[test]
    fn csv_header() {
        let kind = GroupKind::euclidean(1).unwrap();
        let s = Scheme::new(kind, RingSpec::z_sqrt(2).unwrap());
        let ms = generate_model_set(&s, &default_window(kind), &default_region(kind)).unwrap();
        let csv = float_csv(&ms);
        assert!(csv.starts_with("x1\n"));
        assert_eq!(csv.lines().count(), ms.len() + 1);
    }
}
