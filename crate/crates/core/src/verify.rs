//! Cross-checks of every computation against an independent route: brute
//! force lattice enumeration, basis permutation, alternating sums and
//! closed-form values.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curvature::{self, FourierField};
use crate::distribution::{Distribution, GroupKind, GroupPoint, MergeTolerance, Value};
use crate::error::{Error, Result};
use crate::lefschetz::{self, FixedPointCount, IndexConvention, ToralAutomorphism};
use crate::lie::{self, GradedDims, LieAlgebra};
use crate::linalg::{int_matrix, rat, RationalMatrix};
use crate::models::{self, ClosedOrbitSpec, Monodromy};

pub const DEFAULT_SEED: u64 = 0x1EF5_C4EC;

/// Cat-map Lefschetz numbers `L(A^k)` for `k = 1..5`.
pub const CAT_MAP_LEFSCHETZ: [i64; 5] = [-1, -5, -16, -45, -121];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Lefschetz,
    FixedPoints,
    Cohomology,
    Surface,
    Selberg,
    GaussBonnet,
    Corollary,
    Flow,
}

impl Suite {
    pub const NAMES: [&'static str; 9] =
        ["all", "lefschetz", "fixed-points", "cohomology", "surface", "selberg", "gauss-bonnet", "corollary", "flow"];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "lefschetz" => Suite::Lefschetz,
            "fixed-points" => Suite::FixedPoints,
            "cohomology" => Suite::Cohomology,
            "surface" => Suite::Surface,
            "selberg" => Suite::Selberg,
            "gauss-bonnet" => Suite::GaussBonnet,
            "corollary" => Suite::Corollary,
            "flow" => Suite::Flow,
            other => {
                return Err(Error::Parse(format!("unknown suite {other:?}; expected one of {}", Suite::NAMES.join(", "))))
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Nodes per axis for the curvature checks.
    pub grid: usize,
    /// Allowed `|∫K dA/2π − χ|`.
    pub tolerance: f64,
    pub random_metrics: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: DEFAULT_SEED, grid: 256, tolerance: 1e-3, random_metrics: 20 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }

    fn from_result(name: &str, r: Result<String>) -> Self {
        match r {
            Ok(detail) => Check::new(name, true, detail),
            Err(e) => Check::new(name, false, e.to_string()),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Inconsistent(msg()))
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Vec<Check> {
    let mut out = Vec::new();
    let want = |s: Suite| suite == Suite::All || suite == s;
    if want(Suite::Lefschetz) {
        out.push(Check::from_result("cat-map-three-ways", check_cat_map()));
    }
    if want(Suite::FixedPoints) {
        out.push(Check::from_result("gl2-fixed-point-counts", check_gl2_battery()));
    }
    if want(Suite::Cohomology) {
        out.push(Check::from_result("chevalley-eilenberg", check_cohomology()));
    }
    if want(Suite::Surface) {
        out.push(Check::from_result("genus-2-suspension", check_surface()));
    }
    if want(Suite::Selberg) {
        out.push(Check::from_result("selberg-vs-mapping-torus", check_selberg()));
    }
    if want(Suite::GaussBonnet) {
        out.push(Check::from_result("gauss-bonnet", check_gauss_bonnet(opts)));
    }
    if want(Suite::Corollary) {
        out.push(Check::from_result("smooth-lefschetz-vanishes", check_corollary()));
    }
    if want(Suite::Flow) {
        out.push(Check::from_result("flow-linearity", check_flow(opts.seed)));
    }
    out
}

// ---------------------------------------------------------------------------
// brute force oracles

/// Counts `x ∈ [0,1)^2` with `(A^k − I) x ∈ Z^2` by testing every point of
/// the `d × d` grid `(1/d) Z^2`, `d = |det(A^k − I)|`. `None` when `d = 0`.
pub fn brute_force_fixed_points_2d(a: [[i64; 2]; 2], k: u32) -> Option<u64> {
    let mut p = [[1i64, 0], [0, 1]];
    for _ in 0..k {
        p = [
            [p[0][0] * a[0][0] + p[0][1] * a[1][0], p[0][0] * a[0][1] + p[0][1] * a[1][1]],
            [p[1][0] * a[0][0] + p[1][1] * a[1][0], p[1][0] * a[0][1] + p[1][1] * a[1][1]],
        ];
    }
    let b = [[p[0][0] - 1, p[0][1]], [p[1][0], p[1][1] - 1]];
    let d = (b[0][0] * b[1][1] - b[0][1] * b[1][0]).abs();
    if d == 0 {
        return None;
    }
    let mut count = 0;
    for m0 in 0..d {
        for m1 in 0..d {
            if (b[0][0] * m0 + b[0][1] * m1) % d == 0 && (b[1][0] * m0 + b[1][1] * m1) % d == 0 {
                count += 1;
            }
        }
    }
    Some(count)
}

/// All integer 2×2 matrices with entries in `[-r, r]` and determinant ±1.
pub fn gl2_matrices(r: i64) -> Vec<[[i64; 2]; 2]> {
    let range = || -r..=r;
    let mut out = Vec::new();
    for a in range() {
        for b in range() {
            for c in range() {
                for d in range() {
                    if (a * d - b * c).abs() == 1 {
                        out.push([[a, b], [c, d]]);
                    }
                }
            }
        }
    }
    out
}

/// The same algebra in the basis `e_{p(1)}, ..., e_{p(n)}`.
pub fn permute_basis(l: &LieAlgebra, perm: &[usize]) -> Result<LieAlgebra> {
    let n = l.dim();
    let mut c = vec![BigRational::zero(); n * n * n];
    for (i, j, k, v) in l.nonzero_brackets() {
        c[(perm[i] * n + perm[j]) * n + perm[k]] = v.clone();
        c[(perm[j] * n + perm[i]) * n + perm[k]] = -v.clone();
    }
    LieAlgebra::new(n, c)
}

// ---------------------------------------------------------------------------
// checks

fn check_cat_map() -> Result<String> {
    let cat = ToralAutomorphism::cat_map();
    for (k, &expected) in (1..=5).zip(CAT_MAP_LEFSCHETZ.iter()) {
        let ak = cat.power(k).to_rational();
        let by_det = ak.identity_minus()?.determinant()?;
        let by_traces: BigRational = (0..=2)
            .map(|i| {
                let t = ak.exterior_power(i)?.trace()?;
                Ok(if i % 2 == 0 { t } else { -t })
            })
            .sum::<Result<BigRational>>()?;
        let fixed = lefschetz::fixed_points_toral(&cat, k)?;
        let by_points = fixed.index_sum(IndexConvention::Classical);
        let want = BigRational::from_integer(expected.into());
        ensure(by_det == want && by_traces == want && BigRational::from_integer(by_points.into()) == want, || {
            format!("k = {k}: det {by_det}, traces {by_traces}, fixed points {by_points}, expected {expected}")
        })?;
    }
    Ok(format!("L(A^k), k = 1..5: {CAT_MAP_LEFSCHETZ:?} by det, trace sum and fixed points"))
}

fn check_gl2_battery() -> Result<String> {
    let mut compared = 0;
    for a in gl2_matrices(3) {
        let t = ToralAutomorphism::new(int_matrix(&[&a[0], &a[1]]))?;
        for k in 1..=3u32 {
            let Some(brute) = brute_force_fixed_points_2d(a, k) else { continue };
            let smith = lefschetz::fixed_point_count_smith(&t, k as i64)?;
            ensure(smith == FixedPointCount::Finite(brute.into()), || {
                format!("A = {a:?}, k = {k}: Smith count {smith}, enumeration {brute}")
            })?;
            compared += 1;
        }
    }
    Ok(format!("{compared} (A, k) pairs agree"))
}

fn check_cohomology() -> Result<String> {
    let h = LieAlgebra::heisenberg().cohomology_dims();
    ensure(h == GradedDims(vec![1, 2, 2, 1]), || format!("Heisenberg dims {:?}", h.0))?;
    let battery = lie::nilpotent_battery();
    for (name, l) in &battery {
        let n = l.dim();
        for p in 0..n {
            let d0 = l.ce_differential(p)?;
            let d1 = l.ce_differential(p + 1)?;
            ensure(d1.mul(&d0)?.is_zero(), || format!("{name}: d∘d ≠ 0 in degree {p}"))?;
        }
        let dims = l.cohomology_dims();
        ensure(dims.euler_characteristic() == 0, || format!("{name}: χ = {}", dims.euler_characteristic()))?;
        ensure(dims.is_palindromic(), || format!("{name}: dims {:?} violate Poincaré duality", dims.0))?;
        let reversed: Vec<usize> = (0..n).rev().collect();
        let again = permute_basis(l, &reversed)?.cohomology_dims();
        ensure(again == dims, || format!("{name}: reversed basis gives {:?}, not {:?}", again.0, dims.0))?;
    }
    Ok(format!("Heisenberg (1,2,2,1); {} nilpotent algebras pass d∘d = 0, χ = 0, duality", battery.len()))
}

fn check_surface() -> Result<String> {
    let s = models::surface_suspension_traces(2)?;
    let e = GroupKind::Abstract.identity();
    let tr1 = Distribution::dirac(e.clone(), Value::int(2)).add(&Distribution::smooth(GroupKind::Abstract, Value::int(2)))?;
    ensure(s.traces[1] == tr1, || format!("Tr^1 = {:?}", s.traces[1]))?;
    ensure(s.lefschetz == Distribution::dirac(e, Value::int(-2)), || format!("L = {:?}", s.lefschetz))?;
    ensure(s.betti_lambda[1] == BigInt::from(2), || format!("β¹_Λ = {}", s.betti_lambda[1]))?;
    Ok("Tr¹ = 2δ_e + 2, L = −2δ_e, β¹_Λ = 2".into())
}

fn check_selberg() -> Result<String> {
    let cat = ToralAutomorphism::cat_map();
    for window in 0..=6 {
        let spec = models::HomogeneousSpec::mapping_torus_classes(&cat.graded_map(), window)?;
        let a = serde_json::to_string(&models::selberg_report(&spec)?).map_err(Error::from)?;
        let b = serde_json::to_string(&models::mapping_torus(&Monodromy::Toral(cat.clone()), window)?)
            .map_err(Error::from)?;
        ensure(a == b, || format!("window {window}: {a} vs {b}"))?;
    }
    Ok("G = R Selberg output identical to the mapping torus for windows 0..6".into())
}

fn check_gauss_bonnet(opts: &VerifyOptions) -> Result<String> {
    let n = opts.grid;
    let flat = curvature::integrate_curvature(&curvature::flat_torus(n)?)?;
    ensure(flat == 0.0, || format!("flat torus gives {flat}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut worst: f64 = 0.0;
    for i in 0..opts.random_metrics {
        let m = if i % 2 == 0 {
            curvature::random_torus_metric(&mut rng, n)?
        } else {
            curvature::conformal_torus_metric(&FourierField::random(&mut rng, 3, 0.5), n)?
        };
        worst = worst.max(curvature::integrate_curvature(&m)?.abs());
    }
    ensure(worst <= opts.tolerance, || format!("random torus metric integrates to {worst}"))?;
    let sphere = curvature::integrate_curvature(&curvature::unit_sphere(n, n)?)?;
    ensure((sphere - 2.0).abs() <= opts.tolerance, || format!("unit sphere gives {sphere}"))?;
    for g in 2..=5 {
        let chi = curvature::const_curvature_chi(-1.0, 4.0 * PI * (g as f64 - 1.0))?;
        ensure(chi == 2.0 - 2.0 * g as f64, || format!("genus {g}: {chi}"))?;
    }
    Ok(format!(
        "{n}² grid: flat 0, worst of {} random tori {worst:.2e}, sphere {sphere:.6}, genus 2..5 exact",
        opts.random_metrics
    ))
}

fn check_corollary() -> Result<String> {
    let battery = lie::nilpotent_battery();
    for (name, l) in &battery {
        let d = models::nil_foliation(l)?.lefschetz;
        let r = models::corollary_checks(&d, l.dim() as u32);
        ensure(d.is_zero() && r.passed, || format!("{name}: {}", r.detail))?;
    }
    let corrupted = Distribution::smooth(GroupKind::Abstract, Value::int(1));
    let r = models::corollary_checks(&corrupted, 1);
    ensure(r.applicable && !r.passed, || "corrupted smooth L was not flagged".into())?;
    Ok(format!("{} nilpotent foliations give L ≡ 0; nonzero smooth L flagged", battery.len()))
}

fn check_flow(seed: u64) -> Result<String> {
    let hyperbolic = RationalMatrix::diagonal(vec![rat(2, 1), rat(1, 2)]);
    let orbit = ClosedOrbitSpec::new(Value::one(), hyperbolic.clone())?;
    let t = Value::int(3);
    let d = models::flow_distribution(&[orbit], &t, IndexConvention::Paper, MergeTolerance::Default)?;
    for k in [-3, -2, -1, 1, 2, 3] {
        let c = d.coefficient_at(&GroupPoint::Real(Value::int(k)));
        ensure(c == Some(&Value::int(-1)), || format!("coefficient at {k} is {c:?}"))?;
    }
    ensure(d.atoms().len() == 6, || format!("{} atoms", d.atoms().len()))?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let window = Value::int(6);
    for trial in 0..20 {
        let orbits: Vec<ClosedOrbitSpec> = (0..rng.gen_range(1..5))
            .map(|_| random_orbit(&mut rng))
            .collect::<Result<_>>()?;
        let union = models::flow_distribution(&orbits, &window, IndexConvention::Paper, MergeTolerance::Default)?;
        let mut sum = Distribution::zero(GroupKind::Real);
        for o in &orbits {
            let single = models::flow_distribution(std::slice::from_ref(o), &window, IndexConvention::Paper, MergeTolerance::Default)?;
            sum = sum.add(&single)?;
        }
        ensure(union == sum, || format!("trial {trial}: union {union:?} vs sum {sum:?}"))?;
    }
    Ok("diag(2, 1/2) gives −1 at ±1, ±2, ±3; union of orbits equals sum over 20 random families".into())
}

/// Closed orbit with rational length in `[1/4, 3]` and a return map in
/// GL(2, Z) with no eigenvalue a root of unity.
fn random_orbit(rng: &mut ChaCha8Rng) -> Result<ClosedOrbitSpec> {
    let length = Value::Exact(rat(rng.gen_range(1..=12), 4));
    loop {
        let [a, b, c, d]: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-3..=3));
        let (det, trace) = (a * d - b * c, a + d);
        if (det == 1 && trace.abs() > 2) || (det == -1 && trace != 0) {
            return ClosedOrbitSpec::new(length, int_matrix(&[&[a, b], &[c, d]]).to_rational());
        }
    }
}
