//! Open polyhedral cones given by strict integer inequalities, and their
//! primitive lattice points.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupring::LatticePoint;

/// `{v : <r, v> > 0 for every row r}`, with an optional linear norm.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ConeRepr", into = "ConeRepr")]
pub struct ConeSpec {
    dim: usize,
    ineqs: Vec<Vec<i64>>,
    norm: Option<Vec<i64>>,
    witness: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConeRepr {
    ineqs: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    norm: Option<Vec<i64>>,
    witness: Vec<i64>,
}

impl TryFrom<ConeRepr> for ConeSpec {
    type Error = Error;
    fn try_from(r: ConeRepr) -> Result<Self> {
        ConeSpec::new(r.ineqs, r.norm, r.witness)
    }
}

impl From<ConeSpec> for ConeRepr {
    fn from(c: ConeSpec) -> Self {
        ConeRepr {
            ineqs: c.ineqs,
            norm: c.norm,
            witness: c.witness,
        }
    }
}

fn dot(r: &[i64], v: &[i64]) -> i128 {
    r.iter().zip(v).map(|(&a, &b)| a as i128 * b as i128).sum()
}

impl ConeSpec {
    /// The witness must lie strictly inside the cone, and the norm (if
    /// any) must be positive on it.
    pub fn new(ineqs: Vec<Vec<i64>>, norm: Option<Vec<i64>>, witness: Vec<i64>) -> Result<Self> {
        let dim = witness.len();
        if dim == 0 {
            return Err(Error::InvalidCone("empty witness".into()));
        }
        if ineqs.is_empty() {
            return Err(Error::InvalidCone("no inequalities".into()));
        }
        for row in ineqs.iter().chain(norm.iter()) {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
        }
        if let Some(r) = ineqs.iter().find(|r| dot(r, &witness) <= 0) {
            return Err(Error::InvalidCone(format!(
                "witness {witness:?} violates inequality {r:?}"
            )));
        }
        if let Some(n) = &norm {
            if dot(n, &witness) <= 0 {
                return Err(Error::InvalidCone("norm is not positive on the witness".into()));
            }
        }
        Ok(ConeSpec {
            dim,
            ineqs,
            norm,
            witness,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ineqs(&self) -> &[Vec<i64>] {
        &self.ineqs
    }

    pub fn norm(&self) -> Option<&[i64]> {
        self.norm.as_deref()
    }

    pub fn witness(&self) -> &[i64] {
        &self.witness
    }

    pub fn with_norm(mut self, norm: Option<Vec<i64>>) -> Result<Self> {
        let w = std::mem::take(&mut self.witness);
        self.norm = None;
        ConeSpec::new(self.ineqs, norm, w)
    }

    fn check_dim(&self, v: &LatticePoint) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.dim(),
            });
        }
        Ok(())
    }
}

/// Every inequality holds strictly at `v`.
pub fn contains(cone: &ConeSpec, v: &LatticePoint) -> Result<bool> {
    cone.check_dim(v)?;
    Ok(cone.ineqs.iter().all(|r| dot(r, v.coords()) > 0))
}

/// Gcd of the coordinates is 1.
pub fn is_primitive(v: &LatticePoint) -> Result<bool> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.gcd() == 1)
}

/// Integer constraint `sum a_i x_i >= b` over the free coordinates.
#[derive(Clone, Debug)]
struct Halfspace {
    a: Vec<BigInt>,
    b: BigInt,
}

impl Halfspace {
    fn normalized(mut self) -> Self {
        let g = self.a.iter().fold(self.b.clone(), |g, x| g.gcd(x));
        if g > BigInt::from(1) {
            for x in &mut self.a {
                *x /= &g;
            }
            self.b /= &g;
        }
        self
    }
}

/// Bounds of coordinate `j` over `{x : every halfspace holds}` by
/// Fourier-Motzkin elimination of the other coordinates. `None` means the
/// system is infeasible; an infinite side is reported as `None` in the pair.
fn coordinate_range(
    system: &[Halfspace],
    j: usize,
) -> Option<(Option<BigRational>, Option<BigRational>)> {
    let n = system.first().map_or(0, |h| h.a.len());
    let mut rows: Vec<Halfspace> = system.to_vec();
    for k in (0..n).filter(|&k| k != j) {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for h in rows {
            match h.a[k].sign() {
                num_bigint::Sign::Plus => pos.push(h),
                num_bigint::Sign::Minus => neg.push(h),
                num_bigint::Sign::NoSign => rest.push(h),
            }
        }
        for p in &pos {
            for q in &neg {
                let (cp, cq) = (-&q.a[k], p.a[k].clone());
                let a = p.a.iter().zip(&q.a).map(|(x, y)| x * &cp + y * &cq).collect();
                let b = &p.b * &cp + &q.b * &cq;
                rest.push(Halfspace { a, b }.normalized());
            }
        }
        rows = rest;
    }
    let (mut lo, mut hi): (Option<BigRational>, Option<BigRational>) = (None, None);
    for h in rows {
        let c = &h.a[j];
        if c.is_zero() {
            if h.b.is_positive() {
                return None;
            }
            continue;
        }
        let bound = BigRational::new(h.b.clone(), c.clone());
        if c.is_positive() {
            if lo.as_ref().is_none_or(|l| &bound > l) {
                lo = Some(bound);
            }
        } else if hi.as_ref().is_none_or(|u| &bound < u) {
            hi = Some(bound);
        }
    }
    if let (Some(l), Some(u)) = (&lo, &hi) {
        if l > u {
            return None;
        }
    }
    Some((lo, hi))
}

/// Bounding box of the closed height-1 slice, one `[lo, hi]` per
/// coordinate other than `height_index`; `None` if the slice is empty.
fn slice_box(cone: &ConeSpec, height_index: usize) -> Result<Option<Vec<(BigRational, BigRational)>>> {
    let free: Vec<usize> = (0..cone.dim).filter(|&i| i != height_index).collect();
    let system: Vec<Halfspace> = cone
        .ineqs
        .iter()
        .map(|r| Halfspace {
            a: free.iter().map(|&i| BigInt::from(r[i])).collect(),
            b: BigInt::from(-r[height_index]),
        })
        .collect();
    let mut out = Vec::with_capacity(free.len());
    for j in 0..free.len() {
        match coordinate_range(&system, j) {
            None => return Ok(None),
            Some((Some(lo), Some(hi))) => out.push((lo, hi)),
            Some(_) => return Err(Error::UnboundedSlice(height_index)),
        }
    }
    Ok(Some(out))
}

/// Primitive points of the open cone with `0 < v[height_index] < bound`,
/// in lexicographic order.
pub fn enumerate_primitive(
    cone: &ConeSpec,
    height_index: usize,
    bound: i64,
) -> Result<Vec<LatticePoint>> {
    if bound <= 0 {
        return Err(Error::NonPositiveBound(bound));
    }
    if height_index >= cone.dim {
        return Err(Error::DimensionMismatch {
            expected: cone.dim,
            got: height_index + 1,
        });
    }
    let Some(bbox) = slice_box(cone, height_index)? else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for h in 1..bound {
        let hq = BigRational::from_integer(h.into());
        let ranges: Vec<(i64, i64)> = bbox
            .iter()
            .map(|(lo, hi)| {
                let lo = (lo * &hq).floor().to_integer();
                let hi = (hi * &hq).ceil().to_integer();
                (
                    i64::try_from(lo).expect("slice box fits in i64"),
                    i64::try_from(hi).expect("slice box fits in i64"),
                )
            })
            .collect();
        let mut free: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        if ranges.iter().any(|r| r.0 > r.1) {
            continue;
        }
        'odometer: loop {
            let mut v = free.clone();
            v.insert(height_index, h);
            let p = LatticePoint::new(v);
            if contains(cone, &p)? && p.gcd() == 1 {
                out.push(p);
            }
            let mut k = free.len();
            loop {
                if k == 0 {
                    break 'odometer;
                }
                k -= 1;
                if free[k] < ranges[k].1 {
                    free[k] += 1;
                    continue 'odometer;
                }
                free[k] = ranges[k].0;
            }
        }
    }
    out.sort();
    Ok(out)
}

/// For a 2-dimensional cone: integer range `[lo, hi]` of the free
/// coordinate that covers the closed slice at height `h`; `None` if the
/// slice is empty.
pub fn level_range(cone: &ConeSpec, height_index: usize, h: i64) -> Result<Option<(i64, i64)>> {
    if cone.dim != 2 || height_index > 1 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: cone.dim,
        });
    }
    let Some(bbox) = slice_box(cone, height_index)? else {
        return Ok(None);
    };
    let hq = BigRational::from_integer(h.into());
    let (lo, hi) = &bbox[0];
    let lo = i64::try_from((lo * &hq).floor().to_integer()).expect("slice box fits in i64");
    let hi = i64::try_from((hi * &hq).ceil().to_integer()).expect("slice box fits in i64");
    Ok(Some((lo, hi)))
}

/// `min_r <r, v> / |v|_1`: how far `v` sits from the boundary, measured
/// projectively.
pub fn subcone_margin(cone: &ConeSpec, v: &LatticePoint) -> Result<BigRational> {
    if !contains(cone, v)? {
        return Err(Error::NotInCone(v.to_string()));
    }
    let l1: i128 = v.coords().iter().map(|&c| (c as i128).abs()).sum();
    let m = cone
        .ineqs
        .iter()
        .map(|r| dot(r, v.coords()))
        .min()
        .expect("cones have at least one inequality");
    Ok(BigRational::new(m.into(), l1.into()))
}

/// `<norm, v>`, or `None` when the cone carries no norm.
pub fn thurston_norm(cone: &ConeSpec, v: &LatticePoint) -> Result<Option<i64>> {
    let Some(n) = &cone.norm else {
        return Ok(None);
    };
    if !contains(cone, v)? {
        return Err(Error::NotInCone(v.to_string()));
    }
    let x = dot(n, v.coords());
    i64::try_from(x)
        .map(Some)
        .map_err(|_| Error::Precondition("norm value overflows i64".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{hironaka1, hironaka2};

    fn pt(v: &[i64]) -> LatticePoint {
        LatticePoint::new(v.to_vec())
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn membership() {
        let c = hironaka1().cone;
        assert!(contains(&c, &pt(&[1, 2])).unwrap());
        assert!(!contains(&c, &pt(&[2, 2])).unwrap());
        assert!(!contains(&c, &pt(&[0, -1])).unwrap());
        assert!(contains(&c, &pt(&[1, 2, 3])).is_err());
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&pt(&[9, 14])).unwrap());
        assert!(!is_primitive(&pt(&[2, 4])).unwrap());
        assert!(is_primitive(&pt(&[0, 1])).unwrap());
        assert_eq!(is_primitive(&pt(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn enumeration_examples() {
        let c1 = hironaka1().cone;
        let got = enumerate_primitive(&c1, 1, 4).unwrap();
        let want: Vec<_> = [[-2, 3], [-1, 2], [-1, 3], [0, 1], [1, 2], [1, 3], [2, 3]]
            .iter()
            .map(|v| pt(v))
            .collect();
        assert_eq!(got, want);
        assert_eq!(enumerate_primitive(&c1, 1, 2).unwrap(), vec![pt(&[0, 1])]);
        assert!(enumerate_primitive(&c1, 1, 1).unwrap().is_empty());
        let c2 = hironaka2().cone;
        assert_eq!(enumerate_primitive(&c2, 1, 3).unwrap(), vec![pt(&[0, 1])]);
        assert_eq!(
            enumerate_primitive(&c2, 1, 4).unwrap(),
            vec![pt(&[-1, 3]), pt(&[0, 1]), pt(&[1, 3])]
        );
        assert_eq!(enumerate_primitive(&c1, 1, 0), Err(Error::NonPositiveBound(0)));
    }

    #[test]
    fn unbounded_slice_rejected() {
        // b > 0, a > 0: slices b = h are rays.
        let c = ConeSpec::new(vec![vec![0, 1], vec![1, 0]], None, vec![1, 1]).unwrap();
        assert_eq!(enumerate_primitive(&c, 1, 5), Err(Error::UnboundedSlice(1)));
    }

    #[test]
    fn three_dimensional_cone() {
        // |x| < z, |y| < z
        let c = ConeSpec::new(
            vec![vec![1, 0, 1], vec![-1, 0, 1], vec![0, 1, 1], vec![0, -1, 1]],
            None,
            vec![0, 0, 1],
        )
        .unwrap();
        let pts = enumerate_primitive(&c, 2, 3).unwrap();
        // z = 1: (0,0,1); z = 2: odd x or y among |x|,|y| <= 1 -> 8 points
        assert_eq!(pts.len(), 1 + 8);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn margins() {
        let c = hironaka1().cone;
        assert_eq!(subcone_margin(&c, &pt(&[0, 1])).unwrap(), q(1, 1));
        assert_eq!(subcone_margin(&c, &pt(&[9, 14])).unwrap(), q(5, 23));
        assert_eq!(
            subcone_margin(&c, &pt(&[18, 28])).unwrap(),
            subcone_margin(&c, &pt(&[9, 14])).unwrap()
        );
        assert!(matches!(subcone_margin(&c, &pt(&[3, 2])), Err(Error::NotInCone(_))));
    }

    #[test]
    fn norms() {
        let c = hironaka1().cone.with_norm(Some(vec![0, 2])).unwrap();
        assert_eq!(thurston_norm(&c, &pt(&[9, 14])).unwrap(), Some(28));
        assert_eq!(thurston_norm(&c, &pt(&[0, 1])).unwrap(), Some(2));
        assert_eq!(thurston_norm(&hironaka1().cone, &pt(&[0, 1])).unwrap(), None);
    }

    #[test]
    fn cone_validation() {
        assert!(ConeSpec::new(vec![vec![1, 0]], None, vec![-1, 0]).is_err());
        assert!(ConeSpec::new(vec![vec![1, 0]], Some(vec![-1, 0]), vec![1, 0]).is_err());
        assert!(ConeSpec::new(vec![vec![1, 0, 0]], None, vec![1, 0]).is_err());
    }
}
