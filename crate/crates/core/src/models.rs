//! Lefschetz distributions of the closed-form Lie foliation families:
//! mapping tori, codimension-one flows, suspensions, bundles over
//! homogeneous spaces (Selberg-type formula) and nilpotent homogeneous
//! foliations.
//!
//! Infinite atomic series are truncated to a caller-chosen window, and the
//! truncation is recorded in report metadata.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::distribution::{Atom, Distribution, GroupKind, GroupPoint, MergeTolerance, OrbitTerm, Value};
use crate::error::{Error, Result};
use crate::lefschetz::{lefschetz_number_graded, toral_lefschetz, GradedMap, IndexConvention, ToralAutomorphism};
use crate::lie::{GradedDims, LieAlgebra};
use crate::linalg::{signum_i8, IntMatrix, RationalMatrix};

/// Largest number of iterates a flow window may request per orbit.
pub const MAX_FLOW_ITERATES: u64 = 100_000;

/// JSON envelope shared by every model.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelReport {
    pub model: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<String>,
    pub metadata: BTreeMap<String, serde_json::Value>,
    /// The Lefschetz distribution.
    pub distribution: Distribution,
    /// Distributional traces by degree, when the model produces them.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub traces: Vec<Distribution>,
}

impl ModelReport {
    fn new(model: &str, window: Option<String>, distribution: Distribution) -> Self {
        ModelReport { model: model.into(), window, metadata: BTreeMap::new(), distribution, traces: Vec::new() }
    }

    fn meta(mut self, key: &str, value: serde_json::Value) -> Self {
        self.metadata.insert(key.into(), value);
        self
    }
}

// ---------------------------------------------------------------------------
// mapping tori

/// The monodromy of a mapping torus.
#[derive(Debug, Clone, PartialEq)]
pub enum Monodromy {
    /// Linear automorphism of `T^n`; `χ(T^n) = 0`.
    Toral(ToralAutomorphism),
    /// Induced maps on cohomology; `χ = Σ (-1)^i dim H^i`.
    Graded(GradedMap),
}

impl Monodromy {
    pub fn euler_characteristic(&self) -> BigInt {
        match self {
            Monodromy::Toral(_) => BigInt::zero(),
            Monodromy::Graded(g) => g.euler_characteristic(),
        }
    }

    /// `L(F^k)` for `k != 0`.
    pub fn lefschetz(&self, k: i64) -> Result<BigRational> {
        match self {
            Monodromy::Toral(t) => Ok(BigRational::from_integer(toral_lefschetz(t, k)?)),
            Monodromy::Graded(g) => Ok(lefschetz_number_graded(&g.pow(k)?)),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MonodromyJson {
    matrix: Option<IntMatrix>,
    graded_map: Option<GradedMap>,
}

impl MonodromyJson {
    fn into_monodromy(self) -> Result<Monodromy> {
        match (self.matrix, self.graded_map) {
            (Some(m), None) => Ok(Monodromy::Toral(ToralAutomorphism::new(m)?)),
            (None, Some(g)) => Ok(Monodromy::Graded(g)),
            _ => Err(Error::Parse("give exactly one of \"matrix\" or \"graded_map\"".into())),
        }
    }
}

impl Monodromy {
    /// `{"matrix": [[..]]}` or `{"graded_map": [[[..]], ..]}`. A matrix
    /// outside GL(n, Z) is a domain error, not a parse error.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<MonodromyJson>(text)?.into_monodromy()
    }
}

impl<'de> Deserialize<'de> for Monodromy {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        MonodromyJson::deserialize(d)?.into_monodromy().map_err(D::Error::custom)
    }
}

/// `χ(X)·δ_0 + Σ_{0<|k|≤K} L(F^k)·δ_k` on the lattice `Z ⊂ R`.
pub fn mapping_torus(monodromy: &Monodromy, window: u64) -> Result<Distribution> {
    let k_max = i64::try_from(window).map_err(|_| Error::Precondition("window too large".into()))?;
    let mut atoms = vec![Atom::new(GroupPoint::Lattice(BigInt::zero()), Value::from_bigint(monodromy.euler_characteristic()))];
    for k in (-k_max..=k_max).filter(|&k| k != 0) {
        atoms.push(Atom::new(GroupPoint::Lattice(k.into()), Value::Exact(monodromy.lefschetz(k)?)));
    }
    Distribution::make(GroupKind::Lattice, atoms, None, Vec::new(), MergeTolerance::Default)
}

pub fn mapping_torus_report(monodromy: &Monodromy, window: u64) -> Result<ModelReport> {
    let d = mapping_torus(monodromy, window)?;
    let source = match monodromy {
        Monodromy::Toral(_) => "toral automorphism (chi(T^n) = 0 at k = 0)",
        Monodromy::Graded(_) => "graded map on cohomology",
    };
    Ok(ModelReport::new("mapping-torus", Some(window.to_string()), d)
        .meta("truncation", json!(format!("atoms restricted to |k| <= {window}")))
        .meta("monodromy", json!(source))
        .meta("lefschetz_sum", json!("sum over all degrees 0..dim X")))
}

// ---------------------------------------------------------------------------
// codimension-one flows

/// Source of the signs `ε_{kℓ(c)}(c)` for a primitive closed orbit.
#[derive(Debug, Clone, PartialEq)]
pub enum EpsilonSource {
    /// Linearized leafwise return map `P`; `ε_k = sign det(P^k - I)`.
    ReturnMap(RationalMatrix),
    /// Raw per-iterate signs, taken on trust.
    Unchecked(BTreeMap<i64, i8>),
}

/// A primitive closed orbit: period and return-map data.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedOrbitSpec {
    pub length: Value,
    pub epsilon: EpsilonSource,
}

impl ClosedOrbitSpec {
    pub fn new(length: Value, return_map: RationalMatrix) -> Result<Self> {
        return_map.require_square()?;
        Self::check_length(&length)?;
        Ok(ClosedOrbitSpec { length, epsilon: EpsilonSource::ReturnMap(return_map) })
    }

    pub fn unchecked(length: Value, signs: BTreeMap<i64, i8>) -> Result<Self> {
        Self::check_length(&length)?;
        if let Some((k, s)) = signs.iter().find(|(_, s)| s.abs() != 1) {
            return Err(Error::Precondition(format!("sign for k = {k} must be ±1, got {s}")));
        }
        Ok(ClosedOrbitSpec { length, epsilon: EpsilonSource::Unchecked(signs) })
    }

    fn check_length(length: &Value) -> Result<()> {
        if length.is_positive() {
            Ok(())
        } else {
            Err(Error::Precondition(format!("orbit length must be > 0, got {length}")))
        }
    }

    /// `ε_{kℓ}` for the k-th iterate.
    pub fn epsilon(&self, k: i64, convention: IndexConvention) -> Result<i8> {
        match &self.epsilon {
            EpsilonSource::Unchecked(signs) => signs
                .get(&k)
                .copied()
                .ok_or_else(|| Error::Precondition(format!("no sign supplied for iterate k = {k}"))),
            EpsilonSource::ReturnMap(p) => {
                let pk = p.pow(k).map_err(|_| {
                    Error::Precondition("return map must be invertible to take negative iterates".into())
                })?;
                let det = pk.minus_identity()?.determinant()?;
                if det.is_zero() {
                    return Err(Error::NotSimple(format!("det(P^{k} - I) = 0")));
                }
                let eps = signum_i8(&det);
                Ok(match convention {
                    IndexConvention::Paper => eps,
                    IndexConvention::Classical if p.rows() % 2 == 0 => eps,
                    IndexConvention::Classical => -eps,
                })
            }
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ClosedOrbitJson {
    length: Value,
    return_map: Option<RationalMatrix>,
    unchecked_signs: Option<BTreeMap<i64, i8>>,
}

impl ClosedOrbitJson {
    fn into_spec(self) -> Result<ClosedOrbitSpec> {
        match (self.return_map, self.unchecked_signs) {
            (Some(p), None) => ClosedOrbitSpec::new(self.length, p),
            (None, Some(s)) => ClosedOrbitSpec::unchecked(self.length, s),
            _ => Err(Error::Parse("give exactly one of \"return_map\" or \"unchecked_signs\"".into())),
        }
    }
}

impl<'de> Deserialize<'de> for ClosedOrbitSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        ClosedOrbitJson::deserialize(d)?.into_spec().map_err(D::Error::custom)
    }
}

/// Input of the flow model: primitive closed orbits and an optional window.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowSpec {
    pub orbits: Vec<ClosedOrbitSpec>,
    pub window: Option<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FlowJson {
    orbits: Vec<ClosedOrbitJson>,
    #[serde(default)]
    window: Option<Value>,
}

impl FlowSpec {
    /// `{"orbits": [..], "window": "3"}`; orbit preconditions are domain
    /// errors, not parse errors.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: FlowJson = serde_json::from_str(text)?;
        let orbits = raw.orbits.into_iter().map(ClosedOrbitJson::into_spec).collect::<Result<_>>()?;
        Ok(FlowSpec { orbits, window: raw.window })
    }
}

/// Largest `k >= 0` with `k·ℓ <= window`.
fn max_iterate(length: &Value, window: &Value) -> Result<u64> {
    let k = match (length, window) {
        (Value::Exact(l), Value::Exact(t)) => (t / l).floor().to_integer().to_u64(),
        _ => {
            let q = window.to_f64() / length.to_f64();
            q.is_finite().then(|| q.floor() as u64)
        }
    };
    match k {
        Some(k) if k <= MAX_FLOW_ITERATES => Ok(k),
        _ => Err(Error::Precondition(format!(
            "window {window} covers more than {MAX_FLOW_ITERATES} iterates of an orbit of length {length}"
        ))),
    }
}

/// `Σ_c ℓ(c) Σ_{k≠0, |kℓ(c)|≤T} ε_{kℓ(c)}(c) δ_{kℓ(c)}` on `R`.
pub fn flow_distribution(
    orbits: &[ClosedOrbitSpec],
    window: &Value,
    convention: IndexConvention,
    tolerance: MergeTolerance,
) -> Result<Distribution> {
    if !window.is_positive() {
        return Err(Error::Precondition(format!("window T must be > 0, got {window}")));
    }
    let mut atoms = Vec::new();
    for (c, orbit) in orbits.iter().enumerate() {
        let k_max = max_iterate(&orbit.length, window)? as i64;
        for k in (-k_max..=k_max).filter(|&k| k != 0) {
            let eps = orbit.epsilon(k, convention).map_err(|e| match e {
                Error::NotSimple(msg) => Error::NotSimple(format!("orbit {c} (length {}), k = {k}: {msg}", orbit.length)),
                other => other,
            })?;
            let at = &orbit.length * &Value::int(k);
            atoms.push(Atom::new(GroupPoint::Real(at), &orbit.length * &Value::int(eps as i64)));
        }
    }
    Distribution::make(GroupKind::Real, atoms, None, Vec::new(), tolerance)
}

pub fn flow_report(
    orbits: &[ClosedOrbitSpec],
    window: &Value,
    convention: IndexConvention,
    tolerance: MergeTolerance,
) -> Result<ModelReport> {
    let d = flow_distribution(orbits, window, convention, tolerance)?;
    let unchecked = orbits.iter().filter(|o| matches!(o.epsilon, EpsilonSource::Unchecked(_))).count();
    Ok(ModelReport::new("flow", Some(window.to_string()), d)
        .meta("truncation", json!(format!("atoms restricted to 0 < |t| <= {window}; the germ at 0 is not included")))
        .meta("convention", json!(convention.to_string()))
        .meta("orbits", json!(orbits.len()))
        .meta("unchecked_orbits", json!(unchecked))
        .meta("epsilon_model", json!("epsilon_k = sign det(P^k - I) from the linearized return map")))
}

// ---------------------------------------------------------------------------
// suspensions

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuspensionSpec {
    #[serde(rename = "vol_G")]
    pub vol_g: Value,
    #[serde(rename = "chi_X", with = "crate::linalg::bigint_str")]
    pub chi_x: BigInt,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub betti: Option<GradedDims>,
}

/// `vol(G)·χ(X)·δ_e` on all of `G`.
pub fn suspension(spec: &SuspensionSpec) -> Result<Distribution> {
    if !spec.vol_g.is_positive() {
        return Err(Error::Precondition(format!("vol(G) must be > 0, got {}", spec.vol_g)));
    }
    if let Some(b) = &spec.betti {
        if BigInt::from(b.euler_characteristic()) != spec.chi_x {
            return Err(Error::Precondition(format!(
                "chi_X = {} disagrees with the Betti numbers {:?} (alternating sum {})",
                spec.chi_x,
                b.0,
                b.euler_characteristic()
            )));
        }
    }
    let coeff = &spec.vol_g * &Value::from_bigint(spec.chi_x.clone());
    Ok(Distribution::dirac(GroupKind::Abstract.identity(), coeff))
}

/// Distributional traces of the suspension of a genus-g hyperbolic surface
/// into a compact group of volume 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceTraces {
    pub genus: u32,
    /// `Tr^0, Tr^1, Tr^2`.
    pub traces: [Distribution; 3],
    /// `Tr^0 - Tr^1 + Tr^2`.
    pub lefschetz: Distribution,
    /// Λ-Betti numbers `(0, 2g-2, 0)`.
    #[serde(serialize_with = "ser_bigints")]
    pub betti_lambda: [BigInt; 3],
    #[serde(with = "crate::linalg::bigint_str")]
    pub chi_lambda: BigInt,
}

fn ser_bigints<S: serde::Serializer>(xs: &[BigInt; 3], s: S) -> std::result::Result<S::Ok, S::Error> {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
}

pub fn surface_suspension_traces(genus: u32) -> Result<SurfaceTraces> {
    if genus < 2 {
        return Err(Error::Precondition(format!("genus must be >= 2 for a hyperbolic surface, got {genus}")));
    }
    let g = BigInt::from(genus);
    let beta1: BigInt = BigInt::from(2) * &g - 2;
    let e = GroupKind::Abstract.identity();
    let dense_top = Distribution::smooth(GroupKind::Abstract, Value::one());
    let tr1 = Distribution::dirac(e, Value::from_bigint(beta1.clone()))
        .add(&Distribution::smooth(GroupKind::Abstract, Value::int(2)))?;
    let traces = [dense_top.clone(), tr1, dense_top];
    let lefschetz = traces[0].sub(&traces[1])?.add(&traces[2])?;
    let chi = BigInt::from(2) - BigInt::from(2) * &g;
    let direct = suspension(&SuspensionSpec { vol_g: Value::one(), chi_x: chi.clone(), betti: None })?;
    if lefschetz != direct {
        return Err(Error::Inconsistent(format!(
            "alternating trace sum {lefschetz:?} differs from vol(G)·chi(X)·δ_e = {direct:?}"
        )));
    }
    Ok(SurfaceTraces {
        genus,
        traces,
        lefschetz,
        betti_lambda: [BigInt::zero(), beta1, BigInt::zero()],
        chi_lambda: chi,
    })
}

pub fn surface_suspension_report(genus: u32) -> Result<ModelReport> {
    let s = surface_suspension_traces(genus)?;
    let mut r = ModelReport::new("surface-suspension", None, s.lefschetz.clone())
        .meta("genus", json!(genus))
        .meta("betti_lambda", json!(s.betti_lambda.iter().map(ToString::to_string).collect::<Vec<_>>()))
        .meta("chi_lambda", json!(s.chi_lambda.to_string()))
        .meta("vol_G", json!("1"))
        .meta("smooth_const_density", json!("constant density relative to the volume form, vol(G) = 1"));
    r.traces = s.traces.to_vec();
    Ok(r)
}

// ---------------------------------------------------------------------------
// nilpotent homogeneous foliations

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NilFoliation {
    pub dims: GradedDims,
    pub nilpotency_step: usize,
    /// Constant densities `dim H^i(k)`.
    pub traces: Vec<Distribution>,
    /// Alternating sum of the traces; identically zero.
    pub lefschetz: Distribution,
}

pub fn nil_foliation(algebra: &LieAlgebra) -> Result<NilFoliation> {
    if algebra.dim() == 0 {
        return Err(Error::Precondition("the kernel Lie algebra must be nonzero (leaves of positive dimension)".into()));
    }
    let step = algebra.nilpotency_step().ok_or(Error::NotNilpotent)?;
    let dims = algebra.cohomology_dims();
    let traces: Vec<Distribution> = dims
        .0
        .iter()
        .map(|&b| Distribution::smooth(GroupKind::Abstract, Value::int(b as i64)))
        .collect();
    let mut lefschetz = Distribution::zero(GroupKind::Abstract);
    for (i, t) in traces.iter().enumerate() {
        lefschetz = if i % 2 == 0 { lefschetz.add(t)? } else { lefschetz.sub(t)? };
    }
    if !lefschetz.is_zero() {
        return Err(Error::Inconsistent(format!(
            "alternating sum of dim H^i = {} is not zero",
            dims.euler_characteristic()
        )));
    }
    Ok(NilFoliation { dims, nilpotency_step: step, traces, lefschetz })
}

pub fn nil_foliation_report(algebra: &LieAlgebra) -> Result<ModelReport> {
    let n = nil_foliation(algebra)?;
    let mut r = ModelReport::new("nilfoliation", None, n.lefschetz.clone())
        .meta("cohomology_dims", json!(n.dims.0))
        .meta("nilpotency_step", json!(n.nilpotency_step))
        .meta("algebra_dim", json!(algebra.dim()))
        .meta("smooth_const_density", json!("Tr^i are constant densities dim H^i(k) relative to the volume form"));
    r.traces = n.traces;
    Ok(r)
}

// ---------------------------------------------------------------------------
// bundles over homogeneous spaces

#[derive(Debug, Clone, PartialEq)]
pub enum LefschetzSource {
    Number(BigRational),
    Graded(GradedMap),
}

impl LefschetzSource {
    pub fn value(&self) -> BigRational {
        match self {
            LefschetzSource::Number(q) => q.clone(),
            LefschetzSource::Graded(g) => lefschetz_number_graded(g),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConjugacyClassData {
    pub label: String,
    /// `L(α(γ))`; ignored for the identity class.
    pub lefschetz: Option<LefschetzSource>,
    /// `vol(Γ_γ \ G_γ)`.
    pub vol_centralizer: Value,
    pub is_identity: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConjugacyClassJson {
    label: String,
    #[serde(default)]
    lefschetz: Option<String>,
    #[serde(default)]
    graded_map: Option<GradedMap>,
    #[serde(default = "Value::one")]
    vol_centralizer: Value,
    #[serde(default)]
    is_identity: bool,
}

impl<'de> Deserialize<'de> for ConjugacyClassData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ConjugacyClassJson::deserialize(d)?;
        let lefschetz = match (raw.lefschetz, raw.graded_map) {
            (Some(_), Some(_)) => return Err(D::Error::custom("give at most one of \"lefschetz\" or \"graded_map\"")),
            (Some(s), None) => Some(LefschetzSource::Number(crate::linalg::parse_rational(&s).map_err(D::Error::custom)?)),
            (None, Some(g)) => Some(LefschetzSource::Graded(g)),
            (None, None) => None,
        };
        Ok(ConjugacyClassData {
            label: raw.label,
            lefschetz,
            vol_centralizer: raw.vol_centralizer,
            is_identity: raw.is_identity,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
pub enum HomogeneousGroup {
    #[default]
    #[serde(rename = "abstract")]
    Abstract,
    /// `G = R`, `Γ = Z`: orbits are points and every term collapses to an atom.
    #[serde(rename = "R")]
    Real,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomogeneousSpec {
    /// `vol(Γ \ G)`.
    pub vol_quotient: Value,
    #[serde(rename = "chi_X", with = "crate::linalg::bigint_str")]
    pub chi_x: BigInt,
    pub classes: Vec<ConjugacyClassData>,
    #[serde(default)]
    pub group_kind: HomogeneousGroup,
}

impl HomogeneousSpec {
    /// The `G = R`, `Γ = Z` instance for a diffeomorphism with induced maps
    /// `g`: classes `k` with `0 < |k| <= window`, unit volumes.
    pub fn mapping_torus_classes(g: &GradedMap, window: u64) -> Result<HomogeneousSpec> {
        let k_max = window as i64;
        let mut classes = vec![ConjugacyClassData {
            label: "0".into(),
            lefschetz: None,
            vol_centralizer: Value::one(),
            is_identity: true,
        }];
        for k in (-k_max..=k_max).filter(|&k| k != 0) {
            classes.push(ConjugacyClassData {
                label: k.to_string(),
                lefschetz: Some(LefschetzSource::Graded(g.pow(k)?)),
                vol_centralizer: Value::one(),
                is_identity: false,
            });
        }
        Ok(HomogeneousSpec {
            vol_quotient: Value::one(),
            chi_x: g.euler_characteristic(),
            classes,
            group_kind: HomogeneousGroup::Real,
        })
    }
}

/// `vol(Γ\G) χ(X) δ_e + Σ_{γ≠e} L(α(γ)) vol(Γ_γ\G_γ) ∫_{G_γ\G} f(a⁻¹γa)`.
///
/// Orbit terms stay symbolic except for `G = R`, where they become atoms at
/// the integer class labels.
pub fn selberg_report(spec: &HomogeneousSpec) -> Result<Distribution> {
    let identities: Vec<&ConjugacyClassData> = spec.classes.iter().filter(|c| c.is_identity).collect();
    if identities.len() != 1 {
        return Err(Error::Precondition(format!(
            "exactly one identity class is required, found {}",
            identities.len()
        )));
    }
    let mut labels = BTreeSet::new();
    for c in &spec.classes {
        if !labels.insert(c.label.as_str()) {
            return Err(Error::Precondition(format!("conjugacy class {:?} listed twice", c.label)));
        }
        if !c.vol_centralizer.is_positive() {
            return Err(Error::Precondition(format!("vol_centralizer of {:?} must be > 0", c.label)));
        }
        if !c.is_identity && c.lefschetz.is_none() {
            return Err(Error::Precondition(format!("class {:?} has no Lefschetz data", c.label)));
        }
    }
    if !spec.vol_quotient.is_positive() {
        return Err(Error::Precondition("vol_quotient must be > 0".into()));
    }
    let identity_coeff = &spec.vol_quotient * &Value::from_bigint(spec.chi_x.clone());
    let nontrivial = spec.classes.iter().filter(|c| !c.is_identity);
    match spec.group_kind {
        HomogeneousGroup::Real => {
            let parse = |c: &ConjugacyClassData| {
                c.label.trim().parse::<BigInt>().map_err(|_| {
                    Error::Precondition(format!("for G = R class labels must be integers, got {:?}", c.label))
                })
            };
            if !parse(identities[0])?.is_zero() {
                return Err(Error::Precondition("for G = R the identity class must be labelled 0".into()));
            }
            let mut atoms = vec![Atom::new(GroupPoint::Lattice(BigInt::zero()), identity_coeff)];
            for c in nontrivial {
                let k = parse(c)?;
                if k.is_zero() {
                    return Err(Error::Precondition("class 0 must be the identity".into()));
                }
                let l = Value::Exact(c.lefschetz.as_ref().expect("checked above").value());
                atoms.push(Atom::new(GroupPoint::Lattice(k), &l * &c.vol_centralizer));
            }
            Distribution::make(GroupKind::Lattice, atoms, None, Vec::new(), MergeTolerance::Default)
        }
        HomogeneousGroup::Abstract => {
            let atoms = vec![Atom::new(GroupPoint::Class(identities[0].label.clone()), identity_coeff)];
            let orbits = nontrivial
                .map(|c| OrbitTerm {
                    class_label: c.label.clone(),
                    coeff_factors: BTreeMap::from([
                        ("lefschetz".to_string(), Value::Exact(c.lefschetz.as_ref().expect("checked above").value())),
                        ("vol_centralizer".to_string(), c.vol_centralizer.clone()),
                    ]),
                    note: Some("times the orbital integral over G_gamma\\G of f(a^-1 gamma a)".into()),
                })
                .collect();
            Distribution::make(GroupKind::Abstract, atoms, None, orbits, MergeTolerance::Default)
        }
    }
}

pub fn selberg_model_report(spec: &HomogeneousSpec) -> Result<ModelReport> {
    let d = selberg_report(spec)?;
    let kind = match spec.group_kind {
        HomogeneousGroup::Real => "R",
        HomogeneousGroup::Abstract => "abstract",
    };
    Ok(ModelReport::new("selberg", None, d)
        .meta("group_kind", json!(kind))
        .meta("classes", json!(spec.classes.len()))
        .meta("volume_normalization", json!("vol(Gamma_gamma\\G_gamma) supplied by the caller")))
}

// ---------------------------------------------------------------------------
// vanishing check

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollaryReport {
    /// The check applies only to purely smooth distributions.
    pub applicable: bool,
    pub passed: bool,
    pub detail: String,
}

/// In positive codimension a purely smooth Lefschetz distribution must be
/// identically zero.
pub fn corollary_checks(d: &Distribution, codim: u32) -> CorollaryReport {
    if codim == 0 {
        return CorollaryReport { applicable: false, passed: true, detail: "codimension 0".into() };
    }
    if !d.is_purely_smooth() {
        return CorollaryReport {
            applicable: false,
            passed: true,
            detail: "distribution has singular support (atoms or orbit terms)".into(),
        };
    }
    match d.smooth_const() {
        None => CorollaryReport { applicable: true, passed: true, detail: "smooth and identically zero".into() },
        Some(c) => CorollaryReport {
            applicable: true,
            passed: false,
            detail: format!("smooth Lefschetz distribution with nonzero density {c} in codimension {codim}"),
        },
    }
}
