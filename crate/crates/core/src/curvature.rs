//! Intrinsic Gauss curvature of a sampled first fundamental form and the
//! discrete Gauss–Bonnet integral `(1/2π) ∬ K √(EG − F²) du dv`.
//!
//! Nodes are stored row-major with `u` as the slow index: node `(i, j)`
//! lives at `i * nv + j`, at coordinates `(u0 + i·du, v0 + j·dv)`.

use std::f64::consts::PI;
use std::fmt;
use std::io::Read;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest grid size along either axis.
pub const MIN_NODES: usize = 8;

/// An end row of a surface of revolution is a pole when every node on it has
/// `EG − F²` below this fraction of the largest determinant on the grid.
pub const POLE_RELATIVE_DET: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    /// Doubly periodic.
    Torus,
    /// Profile in `u` (end rows may be poles), periodic in `v`.
    Revolution,
    /// Open coordinate patch; curvature only.
    Patch,
}

impl Topology {
    fn periodic_u(self) -> bool {
        self == Topology::Torus
    }

    fn periodic_v(self) -> bool {
        self != Topology::Patch
    }

    pub fn is_closed(self) -> bool {
        self != Topology::Patch
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Topology::Torus => "torus",
            Topology::Revolution => "revolution",
            Topology::Patch => "patch",
        })
    }
}

impl FromStr for Topology {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "torus" => Ok(Topology::Torus),
            "revolution" => Ok(Topology::Revolution),
            "patch" => Ok(Topology::Patch),
            other => Err(Error::Parse(format!("unknown topology {other:?}; expected torus, revolution or patch"))),
        }
    }
}

/// First fundamental form `E du² + 2F du dv + G dv²` sampled on a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MetricGridJson")]
pub struct MetricGrid {
    nu: usize,
    nv: usize,
    du: f64,
    dv: f64,
    topology: Topology,
    #[serde(rename = "E")]
    e: Vec<f64>,
    #[serde(rename = "F")]
    f: Vec<f64>,
    #[serde(rename = "G")]
    g: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MetricGridJson {
    nu: usize,
    nv: usize,
    du: f64,
    dv: f64,
    topology: Topology,
    #[serde(rename = "E")]
    e: Vec<f64>,
    #[serde(rename = "F")]
    f: Vec<f64>,
    #[serde(rename = "G")]
    g: Vec<f64>,
}

impl TryFrom<MetricGridJson> for MetricGrid {
    type Error = Error;

    fn try_from(m: MetricGridJson) -> Result<Self> {
        MetricGrid::new(m.nu, m.nv, m.du, m.dv, m.topology, m.e, m.f, m.g)
    }
}

impl MetricGrid {
    /// Validates sizes, spacings and positive definiteness. Revolution grids
    /// may have degenerate end rows (poles).
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        nu: usize,
        nv: usize,
        du: f64,
        dv: f64,
        topology: Topology,
        e: Vec<f64>,
        f: Vec<f64>,
        g: Vec<f64>,
    ) -> Result<Self> {
        if nu < MIN_NODES || nv < MIN_NODES {
            return Err(Error::Shape(format!("grid {nu}x{nv} is too coarse; need at least {MIN_NODES} nodes per axis")));
        }
        if !(du.is_finite() && du > 0.0 && dv.is_finite() && dv > 0.0) {
            return Err(Error::Precondition(format!("spacings must be positive, got du = {du}, dv = {dv}")));
        }
        let n = nu * nv;
        for (name, field) in [("E", &e), ("F", &f), ("G", &g)] {
            if field.len() != n {
                return Err(Error::Shape(format!("{name} has {} values, expected {n}", field.len())));
            }
            if let Some(x) = field.iter().find(|x| !x.is_finite()) {
                return Err(Error::Precondition(format!("{name} contains non-finite value {x}")));
            }
        }
        let grid = MetricGrid { nu, nv, du, dv, topology, e, f, g };
        let poles = grid.pole_rows();
        for i in 0..nu {
            if poles.contains(&i) {
                continue;
            }
            for j in 0..nv {
                let k = grid.idx(i, j);
                if !(grid.e[k] > 0.0 && grid.det(k) > 0.0) {
                    return Err(Error::Precondition(format!(
                        "metric is not positive definite at node ({i}, {j}): E = {}, EG - F^2 = {}",
                        grid.e[k],
                        grid.det(k)
                    )));
                }
            }
        }
        Ok(grid)
    }

    /// Samples `metric(u, v) -> (E, F, G)` at `u0 + i·du`, `v0 + j·dv`.
    #[allow(clippy::too_many_arguments)]
    pub fn sample(
        nu: usize,
        nv: usize,
        (u0, du): (f64, f64),
        (v0, dv): (f64, f64),
        topology: Topology,
        metric: impl Fn(f64, f64) -> (f64, f64, f64),
    ) -> Result<Self> {
        let n = nu * nv;
        let (mut e, mut f, mut g) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
        for i in 0..nu {
            for j in 0..nv {
                let (a, b, c) = metric(u0 + i as f64 * du, v0 + j as f64 * dv);
                e.push(a);
                f.push(b);
                g.push(c);
            }
        }
        MetricGrid::new(nu, nv, du, dv, topology, e, f, g)
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn nv(&self) -> usize {
        self.nv
    }

    pub fn du(&self) -> f64 {
        self.du
    }

    pub fn dv(&self) -> f64 {
        self.dv
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn e(&self) -> &[f64] {
        &self.e
    }

    pub fn f(&self) -> &[f64] {
        &self.f
    }

    pub fn g(&self) -> &[f64] {
        &self.g
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        i * self.nv + j
    }

    fn det(&self, k: usize) -> f64 {
        self.e[k] * self.g[k] - self.f[k] * self.f[k]
    }

    /// Indices of degenerate end rows of a revolution grid.
    pub fn pole_rows(&self) -> Vec<usize> {
        if self.topology != Topology::Revolution {
            return Vec::new();
        }
        let n = self.nu * self.nv;
        let scale = (0..n).map(|k| self.det(k).abs()).fold(0.0, f64::max);
        let is_pole = |i: usize| {
            (0..self.nv).all(|j| {
                let k = self.idx(i, j);
                self.e[k] > 0.0 && self.det(k) <= POLE_RELATIVE_DET * scale && self.det(k) > -POLE_RELATIVE_DET * scale
            })
        };
        [0, self.nu - 1].into_iter().filter(|&i| is_pole(i)).collect()
    }

    /// Reads the CSV layout: a header `nu,nv,du,dv,topology`, one value row,
    /// then one `i,j,E,F,G` row per node (an `i,j,E,F,G` header is optional).
    pub fn from_csv(reader: impl Read) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(reader);
        let mut records = rdr.records();
        let mut next = || records.next().transpose().map_err(Error::from);
        let header = next()?.ok_or_else(|| Error::Parse("empty metric CSV".into()))?;
        let expected = ["nu", "nv", "du", "dv", "topology"];
        if header.iter().collect::<Vec<_>>() != expected {
            return Err(Error::Parse(format!("first CSV row must be {:?}", expected.join(","))));
        }
        let dims = next()?.ok_or_else(|| Error::Parse("missing grid dimension row".into()))?;
        if dims.len() != 5 {
            return Err(Error::Parse("grid dimension row needs 5 fields".into()));
        }
        let nu: usize = parse_field(&dims[0], "nu")?;
        let nv: usize = parse_field(&dims[1], "nv")?;
        let du: f64 = parse_field(&dims[2], "du")?;
        let dv: f64 = parse_field(&dims[3], "dv")?;
        let topology: Topology = dims[4].parse()?;
        let n = nu.checked_mul(nv).ok_or_else(|| Error::Parse("grid too large".into()))?;
        let mut e = vec![f64::NAN; n];
        let mut f = vec![f64::NAN; n];
        let mut g = vec![f64::NAN; n];
        let mut seen = vec![false; n];
        while let Some(row) = next()? {
            if row.iter().collect::<Vec<_>>() == ["i", "j", "E", "F", "G"] {
                continue;
            }
            if row.len() != 5 {
                return Err(Error::Parse(format!("node row {:?} needs 5 fields", row.iter().collect::<Vec<_>>())));
            }
            let i: usize = parse_field(&row[0], "i")?;
            let j: usize = parse_field(&row[1], "j")?;
            if i >= nu || j >= nv {
                return Err(Error::Parse(format!("node ({i}, {j}) outside a {nu}x{nv} grid")));
            }
            let k = i * nv + j;
            if std::mem::replace(&mut seen[k], true) {
                return Err(Error::Parse(format!("node ({i}, {j}) listed twice")));
            }
            e[k] = parse_field(&row[2], "E")?;
            f[k] = parse_field(&row[3], "F")?;
            g[k] = parse_field(&row[4], "G")?;
        }
        if let Some(k) = seen.iter().position(|s| !s) {
            return Err(Error::Parse(format!("node ({}, {}) missing", k / nv, k % nv)));
        }
        MetricGrid::new(nu, nv, du, dv, topology, e, f, g)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["nu", "nv", "du", "dv", "topology"])?;
        w.write_record([self.nu.to_string(), self.nv.to_string(), fmt_f64(self.du), fmt_f64(self.dv), self.topology.to_string()])?;
        w.write_record(["i", "j", "E", "F", "G"])?;
        for i in 0..self.nu {
            for j in 0..self.nv {
                let k = self.idx(i, j);
                w.write_record([i.to_string(), j.to_string(), fmt_f64(self.e[k]), fmt_f64(self.f[k]), fmt_f64(self.g[k])])?;
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn parse_field<T: FromStr>(s: &str, name: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Parse(format!("bad value {s:?} for {name}")))
}

/// Shortest round-trip representation.
fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

/// Order of the finite-difference stencils.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stencil {
    /// Three-point central differences, one-sided near open ends.
    Second,
    /// Five-point central differences, one-sided near open ends.
    #[default]
    Fourth,
}

impl FromStr for Stencil {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "second" | "2" => Ok(Stencil::Second),
            "fourth" | "4" => Ok(Stencil::Fourth),
            other => Err(Error::Parse(format!("unknown stencil order {other:?}; expected second or fourth"))),
        }
    }
}

/// `(offset, weight)` pairs and the power of `h` in the denominator scale.
type Weights = &'static [(isize, f64)];

struct StencilSet {
    radius: usize,
    d1_scale: f64,
    d2_scale: f64,
    d1_central: Weights,
    d2_central: Weights,
    /// One-sided stencils for the first `radius` nodes of an open axis.
    d1_left: &'static [Weights],
    d2_left: &'static [Weights],
}

const SECOND: StencilSet = StencilSet {
    radius: 1,
    d1_scale: 2.0,
    d2_scale: 1.0,
    d1_central: &[(-1, -1.0), (1, 1.0)],
    d2_central: &[(-1, 1.0), (0, -2.0), (1, 1.0)],
    d1_left: &[&[(0, -3.0), (1, 4.0), (2, -1.0)]],
    d2_left: &[&[(0, 2.0), (1, -5.0), (2, 4.0), (3, -1.0)]],
};

const FOURTH: StencilSet = StencilSet {
    radius: 2,
    d1_scale: 12.0,
    d2_scale: 12.0,
    d1_central: &[(-2, 1.0), (-1, -8.0), (1, 8.0), (2, -1.0)],
    d2_central: &[(-2, -1.0), (-1, 16.0), (0, -30.0), (1, 16.0), (2, -1.0)],
    d1_left: &[
        &[(0, -25.0), (1, 48.0), (2, -36.0), (3, 16.0), (4, -3.0)],
        &[(-1, -3.0), (0, -10.0), (1, 18.0), (2, -6.0), (3, 1.0)],
    ],
    d2_left: &[
        &[(0, 45.0), (1, -154.0), (2, 214.0), (3, -156.0), (4, 61.0), (5, -10.0)],
        &[(-1, 10.0), (0, -15.0), (1, -4.0), (2, 14.0), (3, -6.0), (4, 1.0)],
    ],
};

impl Stencil {
    fn set(self) -> &'static StencilSet {
        match self {
            Stencil::Second => &SECOND,
            Stencil::Fourth => &FOURTH,
        }
    }
}

/// Finite differences along one axis of the grid.
struct Axis {
    n: usize,
    stride: usize,
    h: f64,
    periodic: bool,
    set: &'static StencilSet,
}

impl Axis {
    /// `Σ w_k (f[i+k] − f[i])`: weights sum to zero, so constant data
    /// differentiates to exactly zero.
    fn apply(&self, f: &[f64], base: usize, i: usize, weights: Weights, mirror: bool) -> f64 {
        let n = self.n as isize;
        let at = |k: isize| {
            let k = if self.periodic { k.rem_euclid(n) } else { k };
            f[base + k as usize * self.stride]
        };
        let i = i as isize;
        let centre = at(i);
        weights.iter().map(|&(k, w)| w * (at(if mirror { i - k } else { i + k }) - centre)).sum()
    }

    fn derivative(&self, f: &[f64], base: usize, i: usize, second: bool) -> f64 {
        let s = self.set;
        let (central, left, scale) = if second {
            (s.d2_central, s.d2_left, s.d2_scale * self.h * self.h)
        } else {
            (s.d1_central, s.d1_left, s.d1_scale * self.h)
        };
        // mirrored first-derivative stencils change sign
        let odd = if second { 1.0 } else { -1.0 };
        let from_end = self.n - 1 - i;
        if self.periodic || (i >= s.radius && from_end >= s.radius) {
            self.apply(f, base, i, central, false) / scale
        } else if i < s.radius {
            self.apply(f, base, i, left[i], false) / scale
        } else {
            odd * self.apply(f, base, i, left[from_end], true) / scale
        }
    }

    fn d1(&self, f: &[f64], base: usize, i: usize) -> f64 {
        self.derivative(f, base, i, false)
    }

    fn d2(&self, f: &[f64], base: usize, i: usize) -> f64 {
        self.derivative(f, base, i, true)
    }
}

impl MetricGrid {
    fn axis_u(&self, stencil: Stencil) -> Axis {
        Axis { n: self.nu, stride: self.nv, h: self.du, periodic: self.topology.periodic_u(), set: stencil.set() }
    }

    fn axis_v(&self, stencil: Stencil) -> Axis {
        Axis { n: self.nv, stride: 1, h: self.dv, periodic: self.topology.periodic_v(), set: stencil.set() }
    }

    fn map_u(&self, f: &[f64], stencil: Stencil, op: impl Fn(&Axis, &[f64], usize, usize) -> f64) -> Vec<f64> {
        let ax = self.axis_u(stencil);
        (0..self.nu * self.nv).map(|k| op(&ax, f, k % self.nv, k / self.nv)).collect()
    }

    fn map_v(&self, f: &[f64], stencil: Stencil, op: impl Fn(&Axis, &[f64], usize, usize) -> f64) -> Vec<f64> {
        let ax = self.axis_v(stencil);
        (0..self.nu * self.nv).map(|k| op(&ax, f, k - k % self.nv, k % self.nv)).collect()
    }
}

/// Brioschi's formula for `K` from `E, F, G` and their derivatives.
#[allow(clippy::too_many_arguments)]
fn brioschi(
    (e, f, g): (f64, f64, f64),
    (e_u, e_v, e_vv): (f64, f64, f64),
    (f_u, f_v, f_uv): (f64, f64, f64),
    (g_u, g_v, g_uu): (f64, f64, f64),
) -> f64 {
    let det3 = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let a = det3([
        [-0.5 * e_vv + f_uv - 0.5 * g_uu, 0.5 * e_u, f_u - 0.5 * e_v],
        [f_v - 0.5 * g_u, e, f],
        [0.5 * g_v, f, g],
    ]);
    let b = det3([[0.0, 0.5 * e_v, 0.5 * g_u], [0.5 * e_v, e, f], [0.5 * g_u, f, g]]);
    let w = e * g - f * f;
    (a - b) / (w * w)
}

/// Gauss curvature at every node, row-major, with the default stencils.
pub fn gaussian_curvature(m: &MetricGrid) -> Vec<f64> {
    gaussian_curvature_with(m, Stencil::default())
}

/// Gauss curvature at every node. On pole rows, where the formula
/// degenerates, `K` is extrapolated quadratically from the three
/// neighbouring rows; those rows carry zero quadrature weight.
pub fn gaussian_curvature_with(m: &MetricGrid, stencil: Stencil) -> Vec<f64> {
    let (e_u, e_v) = (m.map_u(&m.e, stencil, Axis::d1), m.map_v(&m.e, stencil, Axis::d1));
    let e_vv = m.map_v(&m.e, stencil, Axis::d2);
    let (f_u, f_v) = (m.map_u(&m.f, stencil, Axis::d1), m.map_v(&m.f, stencil, Axis::d1));
    let f_uv = m.map_v(&f_u, stencil, Axis::d1);
    let (g_u, g_v) = (m.map_u(&m.g, stencil, Axis::d1), m.map_v(&m.g, stencil, Axis::d1));
    let g_uu = m.map_u(&m.g, stencil, Axis::d2);
    let mut k: Vec<f64> = (0..m.nu * m.nv)
        .map(|n| {
            brioschi(
                (m.e[n], m.f[n], m.g[n]),
                (e_u[n], e_v[n], e_vv[n]),
                (f_u[n], f_v[n], f_uv[n]),
                (g_u[n], g_v[n], g_uu[n]),
            )
        })
        .collect();
    for pole in m.pole_rows() {
        let (r1, r2, r3) = if pole == 0 { (1, 2, 3) } else { (pole - 1, pole - 2, pole - 3) };
        for j in 0..m.nv {
            k[m.idx(pole, j)] = 3.0 * k[m.idx(r1, j)] - 3.0 * k[m.idx(r2, j)] + k[m.idx(r3, j)];
        }
    }
    k
}

/// `(1/2π) ∬ K √(EG − F²) du dv` by the trapezoid rule: periodic in both
/// directions on the torus; on a surface of revolution the pole rows carry
/// the end weights, which vanish with `√(EG − F²)`.
pub fn integrate_curvature(m: &MetricGrid) -> Result<f64> {
    integrate_curvature_with(m, Stencil::default())
}

pub fn integrate_curvature_with(m: &MetricGrid, stencil: Stencil) -> Result<f64> {
    if !m.topology.is_closed() {
        return Err(Error::Precondition(
            "integration needs a closed surface (torus or revolution); got an open patch".into(),
        ));
    }
    let poles = m.pole_rows();
    if m.topology == Topology::Revolution && poles.len() != 2 {
        return Err(Error::Precondition(
            "a surface of revolution is closed only if both end rows are poles (EG - F^2 = 0)".into(),
        ));
    }
    let k = gaussian_curvature_with(m, stencil);
    let total: f64 = (0..m.nu)
        .filter(|i| !poles.contains(i))
        .flat_map(|i| (0..m.nv).map(move |j| i * m.nv + j))
        .map(|n| k[n] * m.det(n).sqrt())
        .sum();
    Ok(total * m.du * m.dv / (2.0 * PI))
}

/// `K·area/(2π)` for a closed surface of constant curvature `K`.
pub fn const_curvature_chi(k: f64, area: f64) -> Result<f64> {
    if !(area.is_finite() && area > 0.0) {
        return Err(Error::Precondition(format!("area must be > 0, got {area}")));
    }
    Ok(k * area / (2.0 * PI))
}

// ---------------------------------------------------------------------------
// sample metrics

/// `du² + dv²` on the square torus `[0, 2π)²`.
pub fn flat_torus(n: usize) -> Result<MetricGrid> {
    let h = 2.0 * PI / n as f64;
    MetricGrid::sample(n, n, (0.0, h), (0.0, h), Topology::Torus, |_, _| (1.0, 0.0, 1.0))
}

/// Round unit sphere `du² + sin²u dv²`, `u ∈ [0, π]` including both poles.
pub fn unit_sphere(nu: usize, nv: usize) -> Result<MetricGrid> {
    let du = PI / (nu as f64 - 1.0);
    MetricGrid::sample(nu, nv, (0.0, du), (0.0, 2.0 * PI / nv as f64), Topology::Revolution, |u, _| {
        let s = u.sin();
        (1.0, 0.0, s * s)
    })
}

/// Open patch of the round sphere, `u ∈ [u0, u1]`, `v ∈ [0, π/2]`.
pub fn sphere_patch(n: usize, (u0, u1): (f64, f64)) -> Result<MetricGrid> {
    let du = (u1 - u0) / (n as f64 - 1.0);
    let dv = PI / 2.0 / (n as f64 - 1.0);
    MetricGrid::sample(n, n, (u0, du), (0.0, dv), Topology::Patch, |u, _| {
        let s = u.sin();
        (1.0, 0.0, s * s)
    })
}

/// Upper half-plane metric `(du² + dv²)/v²` on `[0, 1] × [v0, v1]`.
pub fn hyperbolic_band(n: usize, (v0, v1): (f64, f64)) -> Result<MetricGrid> {
    let du = 1.0 / (n as f64 - 1.0);
    let dv = (v1 - v0) / (n as f64 - 1.0);
    MetricGrid::sample(n, n, (0.0, du), (v0, dv), Topology::Patch, |_, v| {
        let w = 1.0 / (v * v);
        (w, 0.0, w)
    })
}

/// Trigonometric polynomial on the torus with integer frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierField {
    /// `(p, q, a, b)`: `a cos(pu + qv) + b sin(pu + qv)`.
    pub modes: Vec<(i32, i32, f64, f64)>,
}

impl FourierField {
    /// Random field with frequencies `|p|, |q| <= max_freq` and
    /// `Σ |a| + |b| <= amplitude`.
    pub fn random(rng: &mut impl Rng, max_freq: i32, amplitude: f64) -> Self {
        let count = rng.gen_range(2..=5);
        let mut modes: Vec<(i32, i32, f64, f64)> = (0..count)
            .map(|_| {
                (
                    rng.gen_range(-max_freq..=max_freq),
                    rng.gen_range(-max_freq..=max_freq),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                )
            })
            .collect();
        let norm: f64 = modes.iter().map(|m| m.2.abs() + m.3.abs()).sum();
        for m in &mut modes {
            m.2 *= amplitude / norm;
            m.3 *= amplitude / norm;
        }
        FourierField { modes }
    }

    pub fn eval(&self, u: f64, v: f64) -> f64 {
        self.modes.iter().map(|&(p, q, a, b)| {
            let t = p as f64 * u + q as f64 * v;
            a * t.cos() + b * t.sin()
        }).sum()
    }
}

/// Random smooth doubly periodic metric on `[0, 2π)²`:
/// `E = e^{2α}`, `G = e^{2β}`, `F = γ √(EG)` with `|γ| < 1`.
pub fn random_torus_metric(rng: &mut impl Rng, n: usize) -> Result<MetricGrid> {
    let alpha = FourierField::random(rng, 3, 0.3);
    let beta = FourierField::random(rng, 3, 0.3);
    let gamma = FourierField::random(rng, 3, 0.4);
    let h = 2.0 * PI / n as f64;
    MetricGrid::sample(n, n, (0.0, h), (0.0, h), Topology::Torus, |u, v| {
        let e = (2.0 * alpha.eval(u, v)).exp();
        let g = (2.0 * beta.eval(u, v)).exp();
        (e, gamma.eval(u, v) * (e * g).sqrt(), g)
    })
}

/// Conformally flat torus metric `e^{2φ}(du² + dv²)`.
pub fn conformal_torus_metric(phi: &FourierField, n: usize) -> Result<MetricGrid> {
    let h = 2.0 * PI / n as f64;
    MetricGrid::sample(n, n, (0.0, h), (0.0, h), Topology::Torus, |u, v| {
        let w = (2.0 * phi.eval(u, v)).exp();
        (w, 0.0, w)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn flat_metrics_have_zero_curvature() {
        let t = flat_torus(16).unwrap();
        assert!(gaussian_curvature(&t).iter().all(|&k| k == 0.0));
        assert_eq!(integrate_curvature(&t).unwrap(), 0.0);
        let sheared = MetricGrid::sample(12, 9, (0.0, 0.3), (0.0, 0.2), Topology::Patch, |_, _| (2.0, 0.7, 1.5)).unwrap();
        assert!(gaussian_curvature(&sheared).iter().all(|&k| k == 0.0));
    }

    #[test]
    fn sphere_patch_curvature() {
        let m = sphere_patch(256, (PI / 4.0, 3.0 * PI / 4.0)).unwrap();
        let worst = gaussian_curvature(&m).iter().map(|k| (k - 1.0).abs()).fold(0.0, f64::max);
        assert!(worst <= 1e-3, "max |K - 1| = {worst}");
    }

    #[test]
    fn hyperbolic_band_curvature() {
        let m = hyperbolic_band(64, (1.0, 2.0)).unwrap();
        let worst = gaussian_curvature(&m).iter().map(|k| (k + 1.0).abs()).fold(0.0, f64::max);
        assert!(worst <= 1e-2, "max |K + 1| = {worst}");
    }

    #[test]
    fn sphere_of_revolution() {
        let m = unit_sphere(256, 256).unwrap();
        assert_eq!(m.pole_rows(), vec![0, 255]);
        let chi = integrate_curvature(&m).unwrap();
        assert!((chi - 2.0).abs() <= 1e-3, "chi = {chi}");
    }

    #[test]
    fn refinement_reduces_error() {
        // fourth order enters its asymptotic regime from 32 nodes on
        for (stencil, sizes) in [(Stencil::Second, &[16, 32, 64, 128][..]), (Stencil::Fourth, &[32, 64, 128][..])] {
            let mut prev = f64::INFINITY;
            for &n in sizes {
                let err = (integrate_curvature_with(&unit_sphere(n + 1, n).unwrap(), stencil).unwrap() - 2.0).abs();
                assert!(err * 3.0 <= prev, "{stencil:?}, n = {n}: {err} vs previous {prev}");
                prev = err;
            }
        }
    }

    #[test]
    fn stencils_are_exact_on_polynomials() {
        // second order: exact through cubics for d1 and d2; fourth order: through degree 4/5
        for (stencil, degree) in [(Stencil::Second, 2), (Stencil::Fourth, 4)] {
            let p = |x: f64| (0..=degree).map(|d| (d as f64 + 1.0) * x.powi(d)).sum::<f64>();
            let dp = |x: f64| (1..=degree).map(|d| (d as f64 + 1.0) * d as f64 * x.powi(d - 1)).sum::<f64>();
            let ddp = |x: f64| (2..=degree).map(|d| (d as f64 + 1.0) * (d * (d - 1)) as f64 * x.powi(d - 2)).sum::<f64>();
            let h = 0.25;
            let f: Vec<f64> = (0..10).map(|i| p(i as f64 * h)).collect();
            let ax = Axis { n: 10, stride: 1, h, periodic: false, set: stencil.set() };
            for i in 0..10 {
                let x = i as f64 * h;
                assert!((ax.d1(&f, 0, i) - dp(x)).abs() < 1e-9, "{stencil:?} d1 at {i}");
                assert!((ax.d2(&f, 0, i) - ddp(x)).abs() < 1e-8, "{stencil:?} d2 at {i}");
            }
        }
    }

    #[test]
    fn random_torus_metrics() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..3 {
            let m = random_torus_metric(&mut rng, 128).unwrap();
            let chi = integrate_curvature(&m).unwrap();
            assert!(chi.abs() <= 1e-3, "chi = {chi}");
        }
    }

    #[test]
    fn const_curvature_examples() {
        for g in 2..=5 {
            let chi = const_curvature_chi(-1.0, 4.0 * PI * (g as f64 - 1.0)).unwrap();
            assert_eq!(chi, 2.0 - 2.0 * g as f64);
        }
        assert_eq!(const_curvature_chi(0.0, 3.0).unwrap(), 0.0);
        assert_eq!(const_curvature_chi(1.0, 4.0 * PI).unwrap(), 2.0);
        assert!(const_curvature_chi(1.0, 0.0).is_err());
    }

    #[test]
    fn rejects_bad_grids() {
        let bad = MetricGrid::sample(8, 8, (0.0, 0.1), (0.0, 0.1), Topology::Torus, |_, _| (1.0, 2.0, 1.0));
        assert!(matches!(bad, Err(Error::Precondition(_))));
        assert!(matches!(flat_torus(4), Err(Error::Shape(_))));
        let patch = sphere_patch(16, (0.5, 1.0)).unwrap();
        assert!(matches!(integrate_curvature(&patch), Err(Error::Precondition(_))));
        let band = MetricGrid::sample(16, 16, (0.5, 0.1), (0.0, PI / 8.0), Topology::Revolution, |u, _| (1.0, 0.0, u * u)).unwrap();
        assert!(band.pole_rows().is_empty());
        assert!(matches!(integrate_curvature(&band), Err(Error::Precondition(_))));
    }

    #[test]
    fn csv_and_json_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = random_torus_metric(&mut rng, 8).unwrap();
        let back = MetricGrid::from_csv(m.to_csv().unwrap().as_bytes()).unwrap();
        assert_eq!(back, m);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<MetricGrid>(&json).unwrap(), m);
        let short = "nu,nv,du,dv,topology\n8,8,0.1,0.1,torus\n0,0,1,0,1\n";
        assert!(matches!(MetricGrid::from_csv(short.as_bytes()), Err(Error::Parse(_))));
    }
}
