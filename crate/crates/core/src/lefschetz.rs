//! Lefschetz numbers of maps on cohomology, and fixed points of linear
//! toral automorphisms.
//!
//! For a toral automorphism `A` the Lefschetz number of `A^k` is available
//! three ways: `det(I - A^k)`, the alternating trace sum over exterior
//! powers, and the sum of indices over enumerated fixed points. The first
//! two are combined in [`toral_lefschetz`]; the third is
//! [`fixed_points_toral`].
//!
//! Sums of the form `Σ (-1)^i Tr(M_i)` always include degree 0.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rational_pq, signum_i8, IntMatrix, RationalMatrix};

/// Default cap on enumerated fixed points.
pub const ENUMERATION_CAP: u64 = 1_000_000;

/// Sign convention for the index of a simple fixed point with linearization `J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexConvention {
    /// `sign det(J - I)`.
    #[default]
    Paper,
    /// `sign det(I - J)`.
    Classical,
}

impl FromStr for IndexConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Self::Paper),
            "classical" => Ok(Self::Classical),
            other => Err(Error::Parse(format!("unknown convention {other:?}, expected paper|classical"))),
        }
    }
}

impl fmt::Display for IndexConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Paper => "paper",
            Self::Classical => "classical",
        })
    }
}

/// A matrix in GL(n, Z), acting on the torus R^n / Z^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToralAutomorphism {
    matrix: IntMatrix,
}

impl ToralAutomorphism {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        let det = matrix.determinant()?;
        if !det.abs().is_one() {
            return Err(Error::NotToral(det.abs().to_string()));
        }
        Ok(ToralAutomorphism { matrix })
    }

    /// Arnold's cat map `[[2,1],[1,1]]`.
    pub fn cat_map() -> Self {
        Self::new(crate::linalg::int_matrix(&[&[2, 1], &[1, 1]])).expect("unimodular")
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn power(&self, k: i64) -> IntMatrix {
        self.matrix.pow(k).expect("GL(n,Z) matrices have integral inverses")
    }

    /// Induced maps `Λ^i A` on `H^i(T^n)`, `i = 0..n`.
    pub fn graded_map(&self) -> GradedMap {
        let maps = (0..=self.dim())
            .map(|i| self.matrix.exterior_power(i).expect("degree in range").to_rational())
            .collect();
        GradedMap { maps }
    }
}

impl Serialize for ToralAutomorphism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ToralAutomorphism {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = IntMatrix::deserialize(d)?;
        ToralAutomorphism::new(m).map_err(serde::de::Error::custom)
    }
}

/// Induced maps on `H^0 .. H^dim` of a space, one square matrix per degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct GradedMap {
    maps: Vec<RationalMatrix>,
}

impl GradedMap {
    pub fn new(maps: Vec<RationalMatrix>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::Precondition("a graded map needs at least degree 0".into()));
        }
        for m in &maps {
            m.require_square()?;
        }
        Ok(GradedMap { maps })
    }

    /// Identity on a space with the given Betti numbers.
    pub fn identity(dims: &[usize]) -> Self {
        GradedMap { maps: dims.iter().map(|&d| RationalMatrix::identity(d)).collect() }
    }

    pub fn maps(&self) -> &[RationalMatrix] {
        &self.maps
    }

    pub fn betti(&self) -> Vec<usize> {
        self.maps.iter().map(|m| m.rows()).collect()
    }

    /// Connected spaces have `H^0 = R` with trivial action.
    pub fn is_connected_form(&self) -> bool {
        self.maps[0] == RationalMatrix::identity(1)
    }

    pub fn euler_characteristic(&self) -> BigInt {
        self.maps
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let d = BigInt::from(m.rows());
                if i % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
            .sum()
    }

    /// Degree-wise power; negative `k` requires every map to be invertible.
    pub fn pow(&self, k: i64) -> Result<GradedMap> {
        let maps = self.maps.iter().map(|m| m.pow(k)).collect::<Result<Vec<_>>>()?;
        Ok(GradedMap { maps })
    }
}

impl<'de> Deserialize<'de> for GradedMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let maps = Vec::<RationalMatrix>::deserialize(d)?;
        GradedMap::new(maps).map_err(serde::de::Error::custom)
    }
}

/// `Σ_i (-1)^i Tr(M_i)` over every degree, 0 included.
pub fn lefschetz_number_graded(g: &GradedMap) -> BigRational {
    g.maps
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let t = m.trace().expect("graded maps are square");
            if i % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .fold(BigRational::zero(), |acc, t| acc + t)
}

fn require_nonzero_k(k: i64) -> Result<()> {
    if k == 0 {
        Err(Error::Precondition("iterate k must be nonzero".into()))
    } else {
        Ok(())
    }
}

/// `L(A^k)`, computed as `det(I - A^k)` and as `Σ (-1)^i tr Λ^i(A^k)`;
/// the two must agree.
pub fn toral_lefschetz(t: &ToralAutomorphism, k: i64) -> Result<BigInt> {
    require_nonzero_k(k)?;
    let ak = t.power(k);
    let by_det = ak.identity_minus()?.determinant()?;
    let by_traces: BigInt = (0..=t.dim())
        .map(|i| {
            let tr = ak.exterior_power(i)?.trace()?;
            Ok(if i % 2 == 0 { tr } else { -tr })
        })
        .sum::<Result<BigInt>>()?;
    if by_det != by_traces {
        return Err(Error::Inconsistent(format!(
            "det(I - A^{k}) = {by_det} but alternating trace sum = {by_traces}"
        )));
    }
    Ok(by_det)
}

/// Number of fixed points of `A^k`, finite or not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixedPointCount {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for FixedPointCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixedPointCount::Finite(n) => write!(f, "{n}"),
            FixedPointCount::Infinite => f.write_str("infinite"),
        }
    }
}

/// Fixed-point count from the Smith invariants of `A^k - I`: the order of
/// `Z^n / (A^k - I) Z^n`, infinite when the matrix is singular.
pub fn fixed_point_count_smith(t: &ToralAutomorphism, k: i64) -> Result<FixedPointCount> {
    require_nonzero_k(k)?;
    let b = t.power(k).minus_identity()?;
    let invariants = b.smith_invariants();
    if invariants.len() < t.dim() {
        Ok(FixedPointCount::Infinite)
    } else {
        Ok(FixedPointCount::Finite(invariants.iter().product()))
    }
}

/// Fixed points of `A^k` on the torus with their signs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointReport {
    pub count: FixedPointCount,
    /// Points in `[0,1)^n`, sorted lexicographically.
    pub points: Vec<Vec<BigRational>>,
    /// Classical indices `sign det(I - A^k)`.
    pub indices: Vec<i8>,
    /// Signs `sign det(A^k - I)` under the `paper` convention.
    pub epsilons: Vec<i8>,
}

impl FixedPointReport {
    pub fn index_sum(&self, convention: IndexConvention) -> i64 {
        let signs = match convention {
            IndexConvention::Classical => &self.indices,
            IndexConvention::Paper => &self.epsilons,
        };
        signs.iter().map(|&s| s as i64).sum()
    }
}

#[derive(Serialize, Deserialize)]
struct FixedPointReportJson {
    count: String,
    points: Vec<Vec<String>>,
    indices: Vec<i8>,
    epsilons: Vec<i8>,
}

impl Serialize for FixedPointReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FixedPointReportJson {
            count: self.count.to_string(),
            points: self.points.iter().map(|p| p.iter().map(rational_pq).collect()).collect(),
            indices: self.indices.clone(),
            epsilons: self.epsilons.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FixedPointReport {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = FixedPointReportJson::deserialize(d)?;
        let count = if raw.count == "infinite" {
            FixedPointCount::Infinite
        } else {
            FixedPointCount::Finite(raw.count.parse().map_err(|_| D::Error::custom("bad count"))?)
        };
        let points = raw
            .points
            .iter()
            .map(|p| p.iter().map(|x| crate::linalg::parse_rational(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(FixedPointReport { count, points, indices: raw.indices, epsilons: raw.epsilons })
    }
}

/// Enumerates the solutions of `(A^k - I) x ∈ Z^n` in `[0,1)^n` with the
/// default cap.
pub fn fixed_points_toral(t: &ToralAutomorphism, k: i64) -> Result<FixedPointReport> {
    fixed_points_toral_capped(t, k, ENUMERATION_CAP)
}

/// As [`fixed_points_toral`] with an explicit cap on the number of points.
///
/// With `B = A^k - I` and `d = |det B|`, the solution group is
/// `B^{-1} Z^n / Z^n`, generated mod 1 by the columns of `adj(B) / det B`.
/// Points are produced as numerators mod `d` by closing the generators
/// under addition.
pub fn fixed_points_toral_capped(t: &ToralAutomorphism, k: i64, cap: u64) -> Result<FixedPointReport> {
    require_nonzero_k(k)?;
    let n = t.dim();
    let b = t.power(k).minus_identity()?;
    let det = b.determinant()?;
    if det.is_zero() {
        return Ok(FixedPointReport {
            count: FixedPointCount::Infinite,
            points: Vec::new(),
            indices: Vec::new(),
            epsilons: Vec::new(),
        });
    }
    let d_big = det.abs();
    let d = match d_big.to_u64() {
        Some(d) if d <= cap => d,
        _ => return Err(Error::EnumerationOverflow { count: d_big.to_string(), cap }),
    };
    let adj = b.adjugate()?;
    let generators: Vec<Vec<u64>> = (0..n)
        .map(|j| (0..n).map(|i| mod_u64(adj.get(i, j), d)).collect())
        .collect();
    let zero = vec![0u64; n];
    let mut seen: HashSet<Vec<u64>> = HashSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(p) = frontier.pop() {
        for g in &generators {
            let q: Vec<u64> = p.iter().zip(g).map(|(a, b)| (a + b) % d).collect();
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    if seen.len() as u64 != d {
        return Err(Error::Inconsistent(format!(
            "enumerated {} fixed points but |det(A^{k} - I)| = {d}",
            seen.len()
        )));
    }
    let mut numerators: Vec<Vec<u64>> = seen.into_iter().collect();
    numerators.sort_unstable();
    let denom = BigInt::from(d);
    let points: Vec<Vec<BigRational>> = numerators
        .into_iter()
        .map(|p| p.into_iter().map(|a| BigRational::new(BigInt::from(a), denom.clone())).collect())
        .collect();
    // A linear map has derivative A^k at every fixed point.
    let epsilon = signum_i8(&det);
    let index = if n % 2 == 0 { epsilon } else { -epsilon };
    let count = points.len();
    Ok(FixedPointReport {
        count: FixedPointCount::Finite(d_big),
        points,
        indices: vec![index; count],
        epsilons: vec![epsilon; count],
    })
}

fn mod_u64(x: &BigInt, d: u64) -> u64 {
    x.mod_floor(&BigInt::from(d)).to_u64().expect("reduced below d")
}

/// Index of a simple fixed point whose linearization is `j`.
pub fn fixed_point_index(j: &RationalMatrix, convention: IndexConvention) -> Result<i8> {
    let p = j.require_square()?;
    let det = j.minus_identity()?.determinant()?;
    if det.is_zero() {
        return Err(Error::NotSimple("det(J - I) = 0".into()));
    }
    let eps = signum_i8(&det);
    Ok(match convention {
        IndexConvention::Paper => eps,
        IndexConvention::Classical if p % 2 == 0 => eps,
        IndexConvention::Classical => -eps,
    })
}

/// Both sides of the classical Lefschetz identity for `A^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassicalCheck {
    pub k: i64,
    pub fixed_points: String,
    #[serde(with = "crate::linalg::bigint_str")]
    pub index_sum: BigInt,
    #[serde(with = "crate::linalg::bigint_str")]
    pub lefschetz: BigInt,
}

/// Asserts that the classical indices over the enumerated fixed points sum
/// to `L(A^k)`.
pub fn verify_classical_lefschetz(t: &ToralAutomorphism, k: i64) -> Result<ClassicalCheck> {
    let report = fixed_points_toral(t, k)?;
    if report.count == FixedPointCount::Infinite {
        return Err(Error::NotSimple(format!("A^{k} - I is singular; fixed points are not isolated")));
    }
    let index_sum = BigInt::from(report.index_sum(IndexConvention::Classical));
    let lefschetz = toral_lefschetz(t, k)?;
    if index_sum != lefschetz {
        return Err(Error::Inconsistent(format!(
            "sum of indices {index_sum} != L(A^{k}) = {lefschetz}"
        )));
    }
    Ok(ClassicalCheck { k, fixed_points: report.count.to_string(), index_sum, lefschetz })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int_matrix, rat, rat_matrix};

    fn neg_id() -> ToralAutomorphism {
        ToralAutomorphism::new(int_matrix(&[&[-1, 0], &[0, -1]])).unwrap()
    }

    #[test]
    fn graded_lefschetz_examples() {
        for g in 2..5usize {
            let id = GradedMap::identity(&[1, 2 * g, 1]);
            assert_eq!(lefschetz_number_graded(&id), rat(2 - 2 * g as i64, 1));
        }
        let cat = ToralAutomorphism::cat_map().graded_map();
        assert!(cat.is_connected_form());
        assert_eq!(lefschetz_number_graded(&cat), rat(-1, 1));
        let h0_only = GradedMap::new(vec![
            RationalMatrix::identity(1),
            RationalMatrix::zeros(2, 2),
            RationalMatrix::zeros(1, 1),
        ])
        .unwrap();
        assert_eq!(lefschetz_number_graded(&h0_only), rat(1, 1));
    }

    #[test]
    fn toral_lefschetz_examples() {
        assert_eq!(toral_lefschetz(&ToralAutomorphism::cat_map(), 1).unwrap(), BigInt::from(-1));
        let id3 = ToralAutomorphism::new(IntMatrix::identity(3)).unwrap();
        assert_eq!(toral_lefschetz(&id3, 4).unwrap(), BigInt::zero());
        assert_eq!(toral_lefschetz(&neg_id(), 1).unwrap(), BigInt::from(4));
        assert!(matches!(toral_lefschetz(&neg_id(), 0), Err(Error::Precondition(_))));
        assert!(matches!(ToralAutomorphism::new(int_matrix(&[&[2, 0], &[0, 1]])), Err(Error::NotToral(_))));
    }

    #[test]
    fn fixed_points_examples() {
        let cat = ToralAutomorphism::cat_map();
        let r1 = fixed_points_toral(&cat, 1).unwrap();
        assert_eq!(r1.count, FixedPointCount::Finite(1.into()));
        assert_eq!(r1.points, vec![vec![rat(0, 1), rat(0, 1)]]);
        assert_eq!(r1.indices, vec![-1]);

        let r2 = fixed_points_toral(&cat, 2).unwrap();
        assert_eq!(r2.count, FixedPointCount::Finite(5.into()));
        assert_eq!(r2.index_sum(IndexConvention::Classical), -5);
        assert_eq!(r2.points.len(), 5);

        let id = ToralAutomorphism::new(IntMatrix::identity(2)).unwrap();
        for k in [1, -3, 7] {
            let r = fixed_points_toral(&id, k).unwrap();
            assert_eq!(r.count, FixedPointCount::Infinite);
            assert!(r.points.is_empty());
        }

        let r = fixed_points_toral(&neg_id(), 1).unwrap();
        assert_eq!(r.points.len(), 4);
        assert_eq!(r.points[3], vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(r.indices, vec![1; 4]);
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let err = fixed_points_toral_capped(&ToralAutomorphism::cat_map(), 5, 100).unwrap_err();
        assert_eq!(err, Error::EnumerationOverflow { count: "121".into(), cap: 100 });
        assert!(fixed_points_toral(&ToralAutomorphism::cat_map(), 40).is_err());
    }

    #[test]
    fn odd_dimension_signs_differ() {
        let a = ToralAutomorphism::new(int_matrix(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 0]])).unwrap();
        let r = fixed_points_toral(&a, 1).unwrap();
        for (idx, eps) in r.indices.iter().zip(&r.epsilons) {
            assert_eq!(*eps, -idx);
        }
        assert_eq!(BigInt::from(r.index_sum(IndexConvention::Classical)), toral_lefschetz(&a, 1).unwrap());
    }

    #[test]
    fn index_examples() {
        let two = rat_matrix(&[&[(2, 1), (0, 1)], &[(0, 1), (2, 1)]]);
        assert_eq!(fixed_point_index(&two, IndexConvention::Paper).unwrap(), 1);
        assert_eq!(fixed_point_index(&two, IndexConvention::Classical).unwrap(), 1);
        let hyp = rat_matrix(&[&[(2, 1), (0, 1)], &[(0, 1), (1, 2)]]);
        assert_eq!(fixed_point_index(&hyp, IndexConvention::Paper).unwrap(), -1);
        assert_eq!(fixed_point_index(&hyp, IndexConvention::Classical).unwrap(), -1);
        let one = rat_matrix(&[&[(2, 1)]]);
        assert_eq!(fixed_point_index(&one, IndexConvention::Paper).unwrap(), 1);
        assert_eq!(fixed_point_index(&one, IndexConvention::Classical).unwrap(), -1);
        let degenerate = rat_matrix(&[&[(1, 1), (0, 1)], &[(0, 1), (3, 1)]]);
        assert!(matches!(fixed_point_index(&degenerate, IndexConvention::Paper), Err(Error::NotSimple(_))));
    }

    #[test]
    fn classical_identity_examples() {
        let cat = ToralAutomorphism::cat_map();
        let c1 = verify_classical_lefschetz(&cat, 1).unwrap();
        assert_eq!((c1.index_sum.clone(), c1.lefschetz.clone()), (BigInt::from(-1), BigInt::from(-1)));
        let c2 = verify_classical_lefschetz(&cat, 2).unwrap();
        assert_eq!(c2.lefschetz, BigInt::from(-5));
        let c = verify_classical_lefschetz(&neg_id(), 1).unwrap();
        assert_eq!((c.fixed_points.as_str(), c.lefschetz), ("4", BigInt::from(4)));
        assert!(matches!(verify_classical_lefschetz(&neg_id(), 2), Err(Error::NotSimple(_))));
    }

    #[test]
    fn report_json_shape() {
        let r = fixed_points_toral(&ToralAutomorphism::cat_map(), 1).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, r#"{"count":"1","points":[["0/1","0/1"]],"indices":[-1],"epsilons":[-1]}"#);
        assert_eq!(serde_json::from_str::<FixedPointReport>(&json).unwrap(), r);
        let inf = fixed_points_toral(&ToralAutomorphism::new(IntMatrix::identity(2)).unwrap(), 1).unwrap();
        assert_eq!(
            serde_json::to_string(&inf).unwrap(),
            r#"{"count":"infinite","points":[],"indices":[],"epsilons":[]}"#
        );
    }

    #[test]
    fn graded_power_and_json() {
        let cat = ToralAutomorphism::cat_map();
        let g = cat.graded_map();
        for k in [-3i64, -1, 1, 2, 5] {
            let l = lefschetz_number_graded(&g.pow(k).unwrap());
            assert_eq!(l, BigRational::from_integer(toral_lefschetz(&cat, k).unwrap()));
        }
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(serde_json::from_str::<GradedMap>(&text).unwrap(), g);
        assert!(serde_json::from_str::<GradedMap>("[[[1,2]]]").is_err());
        assert_eq!(g.euler_characteristic(), BigInt::zero());
    }
}
