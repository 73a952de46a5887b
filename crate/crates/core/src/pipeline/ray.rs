//! Stretch factors along rays and one-parameter families of classes.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{analyze_class, ClassFailure, NormSource, Settings};
use super::scan::with_pool;
use crate::conelattice::{contains, is_primitive, level_range, ConeSpec};
use crate::error::{Error, Result};
use crate::groupring::{CohomClass, MultiLaurentPoly};
use crate::rootbox::MeasureInterval;
use rayon::prelude::*;

/// How the classes of a ray table are chosen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RayFamily {
    /// `k * direction` for each multiple `k`.
    Direction { direction: CohomClass, multiples: Vec<i64> },
    /// At each height, the primitive class of the cone with the largest
    /// free coordinate (2-dimensional cones only).
    Edge { heights: Vec<i64> },
    /// `(offset, h)` (free coordinate first) at each height `h`.
    Offset { offset: i64, heights: Vec<i64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum RayOutcome {
    Ok {
        lambda: MeasureInterval,
        log_lambda: MeasureInterval,
        norm: i64,
        norm_source: NormSource,
        /// `log lambda * norm`.
        product: MeasureInterval,
    },
    Skipped { note: String },
    Failed(ClassFailure),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayRow {
    /// The multiple or height that produced this row.
    pub param: i64,
    pub alpha: Option<CohomClass>,
    pub outcome: RayOutcome,
}

impl RayRow {
    pub fn lambda(&self) -> Option<&MeasureInterval> {
        match &self.outcome {
            RayOutcome::Ok { lambda, .. } => Some(lambda),
            _ => None,
        }
    }

    pub fn product(&self) -> Option<&MeasureInterval> {
        match &self.outcome {
            RayOutcome::Ok { product, .. } => Some(product),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayTable {
    pub family: RayFamily,
    pub rows: Vec<RayRow>,
}

impl RayTable {
    /// True when the certified upper bounds of `lambda` strictly decrease
    /// along the rows that succeeded.
    pub fn upper_bounds_decrease(&self) -> bool {
        let his: Vec<&BigRational> = self.rows.iter().filter_map(|r| r.lambda()).map(|l| &l.hi).collect();
        his.windows(2).all(|w| w[1] < w[0])
    }

    /// Row-by-row check `lambda.lo <= base.lambda.hi^2` (`None` where
    /// either row lacks a value).
    pub fn within_square_of(&self, base: &RayTable) -> Vec<Option<bool>> {
        self.rows
            .iter()
            .zip(&base.rows)
            .map(|(cover, base)| {
                let (c, b) = (cover.lambda()?, base.lambda()?);
                Some(c.lo <= &b.hi * &b.hi)
            })
            .collect()
    }
}

fn row(
    theta: &MultiLaurentPoly,
    cone: &ConeSpec,
    param: i64,
    alpha: Result<Option<CohomClass>>,
    settings: &Settings,
) -> RayRow {
    let alpha = match alpha {
        Ok(Some(a)) => a,
        Ok(None) => {
            return RayRow {
                param,
                alpha: None,
                outcome: RayOutcome::Skipped {
                    note: "no primitive class of the cone at this height".into(),
                },
            }
        }
        Err(e) => {
            return RayRow {
                param,
                alpha: None,
                outcome: RayOutcome::Skipped { note: e.to_string() },
            }
        }
    };
    let skip = |note: String| RayRow {
        param,
        alpha: Some(alpha.clone()),
        outcome: RayOutcome::Skipped { note },
    };
    match is_primitive(&alpha) {
        Ok(true) => {}
        Ok(false) => return skip(format!("{alpha} is not primitive")),
        Err(e) => return skip(e.to_string()),
    }
    match contains(cone, &alpha) {
        Ok(true) => {}
        Ok(false) => return skip(format!("{alpha} is not in the cone")),
        Err(e) => return skip(e.to_string()),
    }
    let outcome = match analyze_class(theta, cone, &alpha, settings) {
        Ok(r) => {
            let lambda = MeasureInterval::new(r.poly.lambda.re.lo.clone(), r.poly.lambda.re.hi.clone());
            let norm = r.norm_used();
            let n = MeasureInterval::exact(BigRational::from_integer(norm.into()));
            RayOutcome::Ok {
                product: r.poly.log_lambda.mul(&n),
                log_lambda: r.poly.log_lambda,
                lambda,
                norm,
                norm_source: r.norm_source,
            }
        }
        Err(e) => RayOutcome::Failed(ClassFailure::new(alpha.clone(), &e)),
    };
    RayRow {
        param,
        alpha: Some(alpha),
        outcome,
    }
}

/// Largest primitive class `(a, h)` of a 2-dimensional cone at height `h`.
fn edge_class(cone: &ConeSpec, height_index: usize, h: i64) -> Result<Option<CohomClass>> {
    let Some((lo, hi)) = level_range(cone, height_index, h)? else {
        return Ok(None);
    };
    for a in (lo..=hi).rev() {
        let c = with_height(a, h, height_index);
        if contains(cone, &c)? && c.gcd() == 1 {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

fn with_height(a: i64, h: i64, height_index: usize) -> CohomClass {
    let mut v = vec![a];
    v.insert(height_index, h);
    CohomClass::new(v)
}

/// Table for the classes `k * direction`; multiples that are not primitive
/// are kept as annotated rows.
pub fn ray_sequence(
    theta: &MultiLaurentPoly,
    cone: &ConeSpec,
    direction: &CohomClass,
    multiples: &[i64],
    settings: &Settings,
) -> Result<RayTable> {
    if !is_primitive(direction)? {
        return Err(Error::NotPrimitive(direction.to_string()));
    }
    if !contains(cone, direction)? {
        return Err(Error::NotInCone(direction.to_string()));
    }
    ray_family(
        theta,
        cone,
        0,
        &RayFamily::Direction {
            direction: direction.clone(),
            multiples: multiples.to_vec(),
        },
        settings,
    )
}

/// Table for any family; `height_index` locates the height coordinate for
/// the edge and offset families.
pub fn ray_family(
    theta: &MultiLaurentPoly,
    cone: &ConeSpec,
    height_index: usize,
    family: &RayFamily,
    settings: &Settings,
) -> Result<RayTable> {
    let jobs: Vec<(i64, Result<Option<CohomClass>>)> = match family {
        RayFamily::Direction { direction, multiples } => multiples
            .iter()
            .map(|&k| (k, Ok(Some(direction.scaled(k)))))
            .collect(),
        RayFamily::Edge { heights } => {
            if cone.dim() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    got: cone.dim(),
                });
            }
            heights
                .iter()
                .map(|&h| (h, edge_class(cone, height_index, h)))
                .collect()
        }
        RayFamily::Offset { offset, heights } => {
            if cone.dim() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    got: cone.dim(),
                });
            }
            heights
                .iter()
                .map(|&h| (h, Ok(Some(with_height(*offset, h, height_index)))))
                .collect()
        }
    };
    let rows = with_pool(settings.workers, || {
        jobs.into_par_iter()
            .map(|(param, alpha)| row(theta, cone, param, alpha, settings))
            .collect()
    });
    Ok(RayTable {
        family: family.clone(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    #[test]
    fn direction_skips_non_primitive() {
        let b = builtins::hironaka1();
        let t = ray_sequence(&b.theta, &b.cone, &CohomClass::new(vec![0, 1]), &[1, 2, 3], &Settings::default())
            .unwrap();
        assert!(t.rows[0].lambda().is_some());
        assert!(matches!(t.rows[1].outcome, RayOutcome::Skipped { .. }));
        assert!(matches!(t.rows[2].outcome, RayOutcome::Skipped { .. }));
    }

    #[test]
    fn edge_classes() {
        let b = builtins::hironaka1();
        assert_eq!(edge_class(&b.cone, 1, 5).unwrap(), Some(CohomClass::new(vec![4, 5])));
        let b = builtins::hironaka2();
        assert_eq!(edge_class(&b.cone, 1, 5).unwrap(), Some(CohomClass::new(vec![2, 5])));
        assert_eq!(edge_class(&b.cone, 1, 4).unwrap(), Some(CohomClass::new(vec![1, 4])));
        assert_eq!(edge_class(&b.cone, 1, 2).unwrap(), None);
    }

    #[test]
    fn edge_family_decreases() {
        let b = builtins::hironaka1();
        let t = ray_family(&b.theta, &b.cone, 1, &RayFamily::Edge { heights: vec![5, 10, 20] }, &Settings::default())
            .unwrap();
        assert!(t.upper_bounds_decrease());
    }
}
