//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line, with its wall time.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lefdist::curvature::{self, FourierField};
use lefdist::lefschetz::{self, FixedPointCount};
use lefdist::lie::{self, LieAlgebra};
use lefdist::linalg::{binomial, rat};
use lefdist::models::{self, ClosedOrbitSpec, HomogeneousSpec, Monodromy};
use lefdist::{
    Distribution, GradedDims, GradedMap, GroupKind, GroupPoint, IndexConvention, MergeTolerance, RationalMatrix,
    ToralAutomorphism, Value,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CAT_MAP_EXPECTED: [i128; 5] = [-1, -5, -16, -45, -121];
const CAT_MAP_TIME: Duration = Duration::from_secs(1);
const GL2_ENTRY_BOUND: i64 = 3;
const GL2_TIME: Duration = Duration::from_secs(30);
const COHOMOLOGY_TIME: Duration = Duration::from_secs(1);
const GB_GRID: usize = 256;
const GB_RANDOM_METRICS: usize = 20;
const GB_TOLERANCE: f64 = 1e-3;
const GB_SEED: u64 = 0x1EF5_C4EC;
const GB_TIME: Duration = Duration::from_secs(60);
const FLOW_SEED: u64 = 0xF10;
const FLOW_UNIONS: usize = 25;

// ---------------------------------------------------------------------------
// independent oracles

type M2 = [[i128; 2]; 2];

fn m2_mul(a: M2, b: M2) -> M2 {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

fn m2_pow(a: M2, k: u32) -> M2 {
    (0..k).fold([[1, 0], [0, 1]], |p, _| m2_mul(p, a))
}

fn m2_det(a: M2) -> i128 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

/// Fixed points of `A^k` on `R^2/Z^2` as numerator pairs over `|det(A^k - I)|`.
///
/// Every solution is `x = B^{-1} m` with `m = B x` an integer point of the
/// parallelogram `B [0,1)^2`; scan its bounding box and keep the `m` whose
/// preimage lies in `[0,1)^2`.
fn enumerate_fixed_points(a: M2, k: u32) -> Option<(i128, Vec<[i128; 2]>)> {
    let p = m2_pow(a, k);
    let b = [[p[0][0] - 1, p[0][1]], [p[1][0], p[1][1] - 1]];
    let det = m2_det(b);
    if det == 0 {
        return None;
    }
    let adj = [[b[1][1], -b[0][1]], [-b[1][0], b[0][0]]];
    let corners = [[0, 0], [b[0][0], b[1][0]], [b[0][1], b[1][1]], [b[0][0] + b[0][1], b[1][0] + b[1][1]]];
    let lo = |i: usize| corners.iter().map(|c| c[i]).min().unwrap();
    let hi = |i: usize| corners.iter().map(|c| c[i]).max().unwrap();
    let d = det.abs();
    let mut points = Vec::new();
    for m0 in lo(0)..=hi(0) {
        for m1 in lo(1)..=hi(1) {
            // x = adj·m / det, scaled to numerators over d
            let x0 = (adj[0][0] * m0 + adj[0][1] * m1) * det.signum();
            let x1 = (adj[1][0] * m0 + adj[1][1] * m1) * det.signum();
            if (0..d).contains(&x0) && (0..d).contains(&x1) {
                points.push([x0, x1]);
            }
        }
    }
    points.sort();
    Some((d, points))
}

fn gl2(bound: i64) -> Vec<M2> {
    let r = -(bound as i128)..=(bound as i128);
    let mut out = Vec::new();
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                for d in r.clone() {
                    if (a * d - b * c).abs() == 1 {
                        out.push([[a, b], [c, d]]);
                    }
                }
            }
        }
    }
    out
}

fn toral(a: M2) -> ToralAutomorphism {
    let rows: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    ToralAutomorphism::new(lefdist::IntMatrix::from_rows(rows).unwrap()).unwrap()
}

/// Sign of the permutation sorting `a ++ b` when `a`, `b` are disjoint sorted
/// index sets given as bitmasks.
fn wedge_sign(a: u32, b: u32) -> i64 {
    let mut inversions = 0;
    for i in 0..32 {
        if b >> i & 1 == 1 {
            inversions += (a >> (i + 1)).count_ones();
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Chevalley–Eilenberg differential on `Λ^p g*` in the monomial basis
/// `e^S`, `S` ranked by bitmask order, from `d e^k = -Σ_{i<j} c_ij^k e^i ∧ e^j`.
fn ce_matrix(l: &LieAlgebra, p: usize) -> Vec<Vec<BigRational>> {
    let n = l.dim();
    let monomials = |q: usize| -> Vec<u32> { (0u32..1 << n).filter(|s| s.count_ones() as usize == q).collect() };
    let (src, dst) = (monomials(p), monomials(p + 1));
    let index: BTreeMap<u32, usize> = dst.iter().enumerate().map(|(r, &s)| (s, r)).collect();
    let mut m = vec![vec![BigRational::zero(); src.len()]; dst.len()];
    for (col, &s) in src.iter().enumerate() {
        // d(e^{s_1} ∧ ... ∧ e^{s_p}) = Σ_m (-1)^m e^{s_1} ∧ .. ∧ d e^{s_m} ∧ ..
        let factors: Vec<usize> = (0..n).filter(|&i| s >> i & 1 == 1).collect();
        for (pos, &kk) in factors.iter().enumerate() {
            let rest = s & !(1 << kk);
            let before = factors[..pos].iter().fold(0u32, |acc, &i| acc | 1 << i);
            let after = rest & !before;
            for i in 0..n {
                for j in i + 1..n {
                    let c = l.c(i, j, kk);
                    if c.is_zero() {
                        continue;
                    }
                    let pair = 1u32 << i | 1 << j;
                    if pair & rest != 0 {
                        continue;
                    }
                    // (before) ∧ (e^i ∧ e^j) ∧ (after), then sort
                    let sign = if pos % 2 == 0 { 1 } else { -1 } * wedge_sign(before, pair) * wedge_sign(before | pair, after);
                    let row = index[&(rest | pair)];
                    m[row][col] -= c * BigRational::from_integer(sign.into());
                }
            }
        }
    }
    m
}

fn rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..rows {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..cols {
                    let sub = &f * &m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        r += 1;
    }
    r
}

fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|t| &row[t] * &b[t][j]).sum()).collect())
        .collect()
}

fn oracle_cohomology(l: &LieAlgebra) -> Vec<usize> {
    let n = l.dim();
    let ranks: Vec<usize> = (0..=n).map(|p| if p < n { rank(ce_matrix(l, p)) } else { 0 }).collect();
    (0..=n)
        .map(|p| binomial(n, p) - ranks[p] - if p > 0 { ranks[p - 1] } else { 0 })
        .collect()
}

/// `b_i(h_{2m+1}) = C(2m, i) - C(2m, i-2)` for `i <= m`, dual above.
fn heisenberg_betti(m: usize) -> Vec<usize> {
    let low = |i: usize| binomial(2 * m, i) - if i >= 2 { binomial(2 * m, i - 2) } else { 0 };
    (0..=2 * m + 1).map(|i| if i <= m { low(i) } else { low(2 * m + 1 - i) }).collect()
}

fn r(p: i64, q: i64) -> BigRational {
    rat(p, q)
}

fn sign_det2(m: [[BigRational; 2]; 2]) -> i64 {
    let d = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    if d.is_positive() {
        1
    } else if d.is_negative() {
        -1
    } else {
        0
    }
}

fn r2_pow(p: &[[BigRational; 2]; 2], k: i64) -> [[BigRational; 2]; 2] {
    let base = if k >= 0 {
        p.clone()
    } else {
        let d = &p[0][0] * &p[1][1] - &p[0][1] * &p[1][0];
        [[&p[1][1] / &d, -&p[0][1] / &d], [-&p[1][0] / &d, &p[0][0] / &d]]
    };
    let mut acc = [[BigRational::one(), BigRational::zero()], [BigRational::zero(), BigRational::one()]];
    for _ in 0..k.unsigned_abs() {
        acc = [
            [&acc[0][0] * &base[0][0] + &acc[0][1] * &base[1][0], &acc[0][0] * &base[0][1] + &acc[0][1] * &base[1][1]],
            [&acc[1][0] * &base[0][0] + &acc[1][1] * &base[1][0], &acc[1][0] * &base[0][1] + &acc[1][1] * &base[1][1]],
        ];
    }
    acc
}

/// Flow atoms `ℓ ε_k` at `kℓ` with `ε_k = sign det(P^k - I)`, merged by
/// exact location with zero sums dropped.
fn oracle_flow(orbits: &[(BigRational, [[BigRational; 2]; 2])], window: &BigRational) -> BTreeMap<BigRational, BigRational> {
    let mut out: BTreeMap<BigRational, BigRational> = BTreeMap::new();
    for (len, p) in orbits {
        let k_max = (window / len).floor().to_integer();
        let k_max: i64 = k_max.try_into().unwrap();
        for k in (-k_max..=k_max).filter(|&k| k != 0) {
            let mut pk = r2_pow(p, k);
            pk[0][0] -= BigRational::one();
            pk[1][1] -= BigRational::one();
            let eps = sign_det2(pk);
            assert_ne!(eps, 0, "oracle hit a degenerate orbit");
            *out.entry(len * BigRational::from_integer(k.into())).or_insert_with(BigRational::zero) +=
                len * BigRational::from_integer(eps.into());
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn real_atoms(d: &Distribution) -> BTreeMap<BigRational, BigRational> {
    assert!(d.smooth_const().is_none() && d.orbit_terms().is_empty());
    d.atoms()
        .iter()
        .map(|a| match (&a.at, &a.coeff) {
            (GroupPoint::Real(Value::Exact(x)), Value::Exact(c)) => (x.clone(), c.clone()),
            other => panic!("inexact or misplaced atom {other:?}"),
        })
        .collect()
}

fn to_rational_matrix(p: &[[BigRational; 2]; 2]) -> RationalMatrix {
    RationalMatrix::from_rows(p.iter().map(|row| row.to_vec()).collect()).unwrap()
}

// ---------------------------------------------------------------------------
// criteria

fn criterion_cat_map() -> String {
    let a: M2 = [[2, 1], [1, 1]];
    let cat = ToralAutomorphism::cat_map();
    for k in 1..=5u32 {
        let ak = m2_pow(a, k);
        let by_det = m2_det([[1 - ak[0][0], -ak[0][1]], [-ak[1][0], 1 - ak[1][1]]]);
        // Λ^0 = 1, Λ^1 = A^k, Λ^2 = det A^k
        let by_traces = 1 - (ak[0][0] + ak[1][1]) + m2_det(ak);
        let (_, points) = enumerate_fixed_points(a, k).unwrap();
        let index = by_det.signum();
        let by_points = index * points.len() as i128;
        let want = CAT_MAP_EXPECTED[k as usize - 1];
        assert_eq!((by_det, by_traces, by_points), (want, want, want), "oracle, k = {k}");

        let lib_det = lefschetz::toral_lefschetz(&cat, k as i64).unwrap();
        let ak_lib = cat.power(k as i64).to_rational();
        let lib_traces: BigRational = (0..=2)
            .map(|i| {
                let t = ak_lib.exterior_power(i).unwrap().trace().unwrap();
                if i % 2 == 0 { t } else { -t }
            })
            .sum();
        let lib_points = lefschetz::fixed_points_toral(&cat, k as i64).unwrap();
        let lib_sum = lib_points.index_sum(IndexConvention::Classical);
        assert_eq!(lib_det, BigInt::from(want), "library det, k = {k}");
        assert_eq!(lib_traces, BigRational::from_integer(want.into()), "library trace sum, k = {k}");
        assert_eq!(lib_sum as i128, want, "library fixed points, k = {k}");
        let lib_numerators: Vec<[i128; 2]> = lib_points
            .points
            .iter()
            .map(|x| {
                let d = BigRational::from_integer(by_det.abs().into());
                let f = |q: &BigRational| -> i128 { (q * &d).to_integer().try_into().unwrap() };
                [f(&x[0]), f(&x[1])]
            })
            .collect();
        assert_eq!(lib_numerators, points, "fixed point sets differ, k = {k}");
    }
    format!("L(A^k), k = 1..5 = {CAT_MAP_EXPECTED:?} by det(I-A^k), Σ(-1)^i tr Λ^i, and signed enumeration")
}

fn criterion_gl2() -> String {
    let mut compared = 0;
    let matrices = gl2(GL2_ENTRY_BOUND);
    for &a in &matrices {
        let t = toral(a);
        for k in 1..=3u32 {
            let Some((d, points)) = enumerate_fixed_points(a, k) else {
                assert_eq!(lefschetz::fixed_point_count_smith(&t, k as i64).unwrap(), FixedPointCount::Infinite);
                continue;
            };
            assert_eq!(points.len() as i128, d, "enumeration vs |det| for {a:?}, k = {k}");
            let smith = lefschetz::fixed_point_count_smith(&t, k as i64).unwrap();
            assert_eq!(smith, FixedPointCount::Finite(BigInt::from(points.len())), "{a:?}, k = {k}");
            compared += 1;
        }
    }
    format!("{} matrices in GL(2,Z) with entries in [-3,3], {compared} (A,k) pairs: Smith count = enumeration", matrices.len())
}

fn criterion_cohomology() -> String {
    let h = LieAlgebra::heisenberg();
    assert_eq!(h.cohomology_dims(), GradedDims(vec![1, 2, 2, 1]));
    assert_eq!(oracle_cohomology(&h), vec![1, 2, 2, 1]);
    let battery = lie::nilpotent_battery();
    for (name, l) in &battery {
        let n = l.dim();
        assert!(l.is_nilpotent(), "{name}");
        for p in 0..n.saturating_sub(1) {
            let dd = mat_mul(&ce_matrix(l, p + 1), &ce_matrix(l, p));
            assert!(dd.iter().flatten().all(Zero::is_zero), "{name}: oracle d∘d ≠ 0 in degree {p}");
            let lib = l.ce_differential(p + 1).unwrap().mul(&l.ce_differential(p).unwrap()).unwrap();
            assert!(lib.is_zero(), "{name}: d∘d ≠ 0 in degree {p}");
        }
        let dims = l.cohomology_dims();
        assert_eq!(dims.0, oracle_cohomology(l), "{name}");
        assert_eq!(dims.euler_characteristic(), 0, "{name}");
        let reversed: Vec<usize> = dims.0.iter().rev().copied().collect();
        assert_eq!(dims.0, reversed, "{name}: Poincaré duality");
    }
    for n in 1..=6 {
        let want: Vec<usize> = (0..=n).map(|p| binomial(n, p)).collect();
        assert_eq!(LieAlgebra::abelian(n).cohomology_dims().0, want);
    }
    for m in 1..=2 {
        assert_eq!(LieAlgebra::heisenberg_n(m).cohomology_dims().0, heisenberg_betti(m));
    }
    let nil = models::nil_foliation(&h).unwrap();
    assert!(nil.lefschetz.is_zero());
    format!(
        "Heisenberg (1,2,2,1), alternating sum 0; {} nilpotent algebras: d∘d = 0, dims match oracle, duality holds",
        battery.len()
    )
}

fn criterion_surface() -> String {
    let s = models::surface_suspension_traces(2).unwrap();
    let e = GroupKind::Abstract.identity();
    let smooth = |c: i64| Distribution::smooth(GroupKind::Abstract, Value::int(c));
    let tr1 = Distribution::dirac(e.clone(), Value::int(2)).add(&smooth(2)).unwrap();
    assert_eq!(s.traces[0], smooth(1));
    assert_eq!(s.traces[1], tr1);
    assert_eq!(s.traces[2], smooth(1));
    assert_eq!(s.lefschetz, Distribution::dirac(e.clone(), Value::int(-2)));
    assert_eq!(s.betti_lambda[1], BigInt::from(2));
    for g in 2..=6i64 {
        let s = models::surface_suspension_traces(g as u32).unwrap();
        assert_eq!(s.lefschetz, Distribution::dirac(e.clone(), Value::int(2 - 2 * g)), "genus {g}");
    }
    "Tr¹ = 2·δ_e + 2, L = -2·δ_e, β¹_Λ = 2 (genus 2); L = (2-2g)δ_e for g = 2..6".into()
}

fn criterion_selberg() -> String {
    let mut compared = 0;
    let mut monodromies: Vec<GradedMap> = [[[2, 1], [1, 1]], [[0, -1], [1, 0]], [[3, 2], [1, 1]], [[-1, 0], [0, -1]]]
        .iter()
        .map(|&a| toral(a).graded_map())
        .collect();
    let one = RationalMatrix::identity(1);
    monodromies.push(GradedMap::new(vec![one.clone(), RationalMatrix::zeros(0, 0), one]).unwrap());
    for g in &monodromies {
        for window in 0..=6 {
            let spec = HomogeneousSpec::mapping_torus_classes(g, window).unwrap();
            let a = serde_json::to_string(&models::selberg_report(&spec).unwrap()).unwrap();
            let b = serde_json::to_string(&models::mapping_torus(&Monodromy::Graded(g.clone()), window).unwrap()).unwrap();
            assert_eq!(a, b, "window {window}");
            compared += 1;
        }
    }
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/selberg_cat_map.json")).unwrap();
    let spec: HomogeneousSpec = serde_json::from_str(&text).unwrap();
    let a = serde_json::to_string(&models::selberg_report(&spec).unwrap()).unwrap();
    let b = serde_json::to_string(&models::mapping_torus(&Monodromy::Toral(ToralAutomorphism::cat_map()), 2).unwrap()).unwrap();
    assert_eq!(a, b, "sample input");
    format!("{compared} (monodromy, window) pairs and the sample file serialize identically")
}

fn criterion_gauss_bonnet() -> String {
    let flat = curvature::integrate_curvature(&curvature::flat_torus(GB_GRID).unwrap()).unwrap();
    assert_eq!(flat, 0.0, "flat torus");
    let mut rng = ChaCha8Rng::seed_from_u64(GB_SEED);
    let mut worst: f64 = 0.0;
    for i in 0..GB_RANDOM_METRICS {
        let m = if i % 2 == 0 {
            curvature::random_torus_metric(&mut rng, GB_GRID).unwrap()
        } else {
            curvature::conformal_torus_metric(&FourierField::random(&mut rng, 3, 0.5), GB_GRID).unwrap()
        };
        let x = curvature::integrate_curvature(&m).unwrap();
        assert!(x.abs() <= GB_TOLERANCE, "metric {i}: {x}");
        worst = worst.max(x.abs());
    }
    let sphere = curvature::integrate_curvature(&curvature::unit_sphere(GB_GRID, GB_GRID).unwrap()).unwrap();
    assert!((sphere - 2.0).abs() <= GB_TOLERANCE, "sphere: {sphere}");
    for g in 2..=5 {
        let chi = curvature::const_curvature_chi(-1.0, 4.0 * PI * (g as f64 - 1.0)).unwrap();
        assert_eq!(chi, 2.0 - 2.0 * g as f64, "genus {g}");
    }
    format!(
        "{GB_GRID}²: flat = 0, worst |∫K dA/2π| over {GB_RANDOM_METRICS} random tori = {worst:.2e} <= {GB_TOLERANCE:e}, \
         sphere = {sphere:.7}, χ exact for g = 2..5"
    )
}

fn criterion_corollary() -> String {
    let battery = lie::nilpotent_battery();
    for (name, l) in &battery {
        let nil = models::nil_foliation(l).unwrap();
        assert!(nil.lefschetz.is_purely_smooth() && nil.lefschetz.is_zero(), "{name}");
        let alternating: i64 = oracle_cohomology(l).iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        assert_eq!(alternating, 0, "{name}");
        let report = models::corollary_checks(&nil.lefschetz, l.dim() as u32);
        assert!(report.applicable && report.passed, "{name}: {}", report.detail);

        let corrupted = nil.lefschetz.add(&Distribution::smooth(GroupKind::Abstract, Value::int(1))).unwrap();
        let report = models::corollary_checks(&corrupted, l.dim() as u32);
        assert!(report.applicable && !report.passed, "{name}: corrupted L not flagged");
        // dropping the top-degree trace leaves a nonzero constant
        let mut truncated = Distribution::zero(GroupKind::Abstract);
        for (i, t) in nil.traces[..nil.traces.len() - 1].iter().enumerate() {
            truncated = if i % 2 == 0 { truncated.add(t).unwrap() } else { truncated.sub(t).unwrap() };
        }
        assert!(!models::corollary_checks(&truncated, l.dim() as u32).passed, "{name}: truncated sum not flagged");
    }
    format!("{} nilpotent foliations: L purely smooth and ≡ 0; corrupted constant densities flagged", battery.len())
}

fn random_orbit(rng: &mut ChaCha8Rng) -> (BigRational, [[BigRational; 2]; 2]) {
    loop {
        let len = r(rng.gen_range(1..=6), rng.gen_range(1..=3));
        let mut e = || r(rng.gen_range(-4..=4), rng.gen_range(1..=3));
        let p = [[e(), e()], [e(), e()]];
        if sign_det2(p.clone()) == 0 {
            continue;
        }
        // keep only orbits whose iterates in the window are all nondegenerate
        let spec = ClosedOrbitSpec::new(Value::Exact(len.clone()), to_rational_matrix(&p)).unwrap();
        let ok = (1..=8).all(|k| spec.epsilon(k, IndexConvention::Paper).is_ok() && spec.epsilon(-k, IndexConvention::Paper).is_ok());
        if ok {
            return (len, p);
        }
    }
}

fn criterion_flow() -> String {
    let window = Value::int(3);
    let diag = ClosedOrbitSpec::new(Value::one(), RationalMatrix::diagonal(vec![rat(2, 1), rat(1, 2)])).unwrap();
    let d = models::flow_distribution(&[diag], &window, IndexConvention::Paper, MergeTolerance::Default).unwrap();
    let want: BTreeMap<BigRational, BigRational> =
        [-3, -2, -1, 1, 2, 3].iter().map(|&k| (r(k, 1), r(-1, 1))).collect();
    assert_eq!(real_atoms(&d), want, "diag(2, 1/2)");

    let mut rng = ChaCha8Rng::seed_from_u64(FLOW_SEED);
    let t = r(8, 3);
    for u in 0..FLOW_UNIONS {
        let n = rng.gen_range(1..=5);
        let orbits: Vec<_> = (0..n).map(|_| random_orbit(&mut rng)).collect();
        let specs: Vec<ClosedOrbitSpec> = orbits
            .iter()
            .map(|(l, p)| ClosedOrbitSpec::new(Value::Exact(l.clone()), to_rational_matrix(p)).unwrap())
            .collect();
        let tw = Value::Exact(t.clone());
        let union = models::flow_distribution(&specs, &tw, IndexConvention::Paper, MergeTolerance::Default).unwrap();
        let mut sum = Distribution::zero(GroupKind::Real);
        for s in &specs {
            let one = models::flow_distribution(std::slice::from_ref(s), &tw, IndexConvention::Paper, MergeTolerance::Default)
                .unwrap();
            sum = sum.add(&one).unwrap();
        }
        assert_eq!(union, sum, "union {u}");
        assert_eq!(real_atoms(&union), oracle_flow(&orbits, &t), "union {u} vs oracle");
    }
    format!("diag(2,1/2): -1 at ±1,±2,±3; {FLOW_UNIONS} random unions equal the sum and the oracle exactly")
}

// ---------------------------------------------------------------------------
// harness

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> String,
}

const CRITERIA: [Criterion; 8] = [
    Criterion { id: 1, name: "cat-map mapping torus", limit: Some(CAT_MAP_TIME), run: criterion_cat_map },
    Criterion { id: 2, name: "fixed-point counting", limit: Some(GL2_TIME), run: criterion_gl2 },
    Criterion { id: 3, name: "nilpotent cohomology", limit: Some(COHOMOLOGY_TIME), run: criterion_cohomology },
    Criterion { id: 4, name: "genus-2 surface suspension", limit: None, run: criterion_surface },
    Criterion { id: 5, name: "Selberg specialization", limit: None, run: criterion_selberg },
    Criterion { id: 6, name: "Gauss-Bonnet", limit: Some(GB_TIME), run: criterion_gauss_bonnet },
    Criterion { id: 7, name: "vanishing in positive codimension", limit: None, run: criterion_corollary },
    Criterion { id: 8, name: "flow linearity and signs", limit: None, run: criterion_flow },
];

fn main() -> ExitCode {
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if std::env::args().any(|a| a == "--list") {
        for c in &CRITERIA {
            println!("criterion_{}: test", c.id);
        }
        return ExitCode::SUCCESS;
    }
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in &CRITERIA {
        let label = format!("criterion_{}", c.id);
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.run));
        let elapsed = start.elapsed();
        let result = match outcome {
            Ok(detail) => match c.limit {
                Some(limit) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}; {detail}")),
                _ => Ok(detail),
            },
            Err(payload) => Err(payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into())),
        };
        match result {
            Ok(detail) => println!("PASS [{}] {} ({elapsed:.2?}): {detail}", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {} ({elapsed:.2?}): {why}", c.id, c.name);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
