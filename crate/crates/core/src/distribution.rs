//! Distributions on the structural group made of weighted Dirac atoms, a
//! constant smooth density relative to the volume form, and symbolic
//! orbital-integral terms.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{parse_rational, rational_to_f64};

/// Absolute tolerance for merging inexact atom locations.
pub const DEFAULT_MERGE_TOLERANCE: f64 = 1e-9;

/// A scalar that is either an exact rational or a float. Inexactness is
/// sticky: any arithmetic touching an `Approx` yields an `Approx`.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(BigRational),
    Approx(f64),
}

impl Value {
    pub fn int(n: i64) -> Self {
        Value::Exact(BigRational::from_integer(n.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Value::Exact(BigRational::from_integer(n))
    }

    pub fn zero() -> Self {
        Value::int(0)
    }

    pub fn one() -> Self {
        Value::int(1)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Exact(q) => q.is_zero(),
            Value::Approx(x) => *x == 0.0,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Value::Exact(q) => q.is_positive(),
            Value::Approx(x) => *x > 0.0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(q) => rational_to_f64(q),
            Value::Approx(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Value::Exact(q) => Some(q),
            Value::Approx(_) => None,
        }
    }

    /// Total order: exact pairs compare exactly, anything else by float
    /// value with exact ordered before inexact on ties.
    pub fn total_cmp(&self, other: &Value) -> Ordering {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => a.cmp(b),
            _ => self
                .to_f64()
                .total_cmp(&other.to_f64())
                .then_with(|| other.is_exact().cmp(&self.is_exact())),
        }
    }
}

impl From<BigRational> for Value {
    fn from(q: BigRational) -> Self {
        Value::Exact(q)
    }
}

impl Add for &Value {
    type Output = Value;
    fn add(self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a + b),
            _ => Value::Approx(self.to_f64() + rhs.to_f64()),
        }
    }
}

impl Mul for &Value {
    type Output = Value;
    fn mul(self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a * b),
            _ => Value::Approx(self.to_f64() * rhs.to_f64()),
        }
    }
}

impl Neg for &Value {
    type Output = Value;
    fn neg(self) -> Value {
        match self {
            Value::Exact(a) => Value::Exact(-a),
            Value::Approx(x) => Value::Approx(-x),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(q) => write!(f, "{q}"),
            Value::Approx(x) => write!(f, "~{x:?}"),
        }
    }
}

impl FromStr for Value {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.strip_prefix('~') {
            Some(rest) => rest
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .map(Value::Approx)
                .ok_or_else(|| Error::Parse(format!("not a finite decimal: {s:?}"))),
            None => parse_rational(s).map(Value::Exact),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Int(i64),
            Float(f64),
        }
        match Raw::deserialize(d)? {
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Int(i) => Ok(Value::int(i)),
            Raw::Float(x) => Ok(Value::Approx(x)),
        }
    }
}

/// Which kind of group the atoms live on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupKind {
    /// The real line; atoms at real points.
    #[serde(rename = "R")]
    Real,
    /// The integer lattice inside the real line.
    #[serde(rename = "Z")]
    Lattice,
    /// An abstract Lie group; atoms at labelled conjugacy classes.
    #[serde(rename = "abstract")]
    Abstract,
}

impl GroupKind {
    pub fn identity(self) -> GroupPoint {
        match self {
            GroupKind::Real => GroupPoint::Real(Value::zero()),
            GroupKind::Lattice => GroupPoint::Lattice(BigInt::zero()),
            GroupKind::Abstract => GroupPoint::Class("e".into()),
        }
    }

    fn parse_point(self, s: &str) -> Result<GroupPoint> {
        match self {
            GroupKind::Real => s.parse().map(GroupPoint::Real),
            GroupKind::Lattice => s
                .trim()
                .parse()
                .map(GroupPoint::Lattice)
                .map_err(|_| Error::Parse(format!("lattice point must be an integer, got {s:?}"))),
            GroupKind::Abstract => Ok(GroupPoint::Class(s.to_string())),
        }
    }
}

/// Location of an atom.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupPoint {
    Real(Value),
    Lattice(BigInt),
    Class(String),
}

impl GroupPoint {
    pub fn kind(&self) -> GroupKind {
        match self {
            GroupPoint::Real(_) => GroupKind::Real,
            GroupPoint::Lattice(_) => GroupKind::Lattice,
            GroupPoint::Class(_) => GroupKind::Abstract,
        }
    }

    fn variant_rank(&self) -> u8 {
        match self {
            GroupPoint::Real(_) => 0,
            GroupPoint::Lattice(_) => 1,
            GroupPoint::Class(_) => 2,
        }
    }

    pub fn total_cmp(&self, other: &GroupPoint) -> Ordering {
        match (self, other) {
            (GroupPoint::Real(a), GroupPoint::Real(b)) => a.total_cmp(b),
            (GroupPoint::Lattice(a), GroupPoint::Lattice(b)) => a.cmp(b),
            (GroupPoint::Class(a), GroupPoint::Class(b)) => a.cmp(b),
            _ => self.variant_rank().cmp(&other.variant_rank()),
        }
    }
}

impl fmt::Display for GroupPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupPoint::Real(v) => write!(f, "{v}"),
            GroupPoint::Lattice(k) => write!(f, "{k}"),
            GroupPoint::Class(c) => f.write_str(c),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub at: GroupPoint,
    pub coeff: Value,
}

impl Atom {
    pub fn new(at: GroupPoint, coeff: Value) -> Self {
        Atom { at, coeff }
    }
}

/// Symbolic summand `Π factors · ∫_{G_γ\G} f(a⁻¹γa)` for a conjugacy class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitTerm {
    #[serde(rename = "class")]
    pub class_label: String,
    pub coeff_factors: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl OrbitTerm {
    pub fn coefficient(&self) -> Value {
        self.coeff_factors.values().fold(Value::one(), |acc, v| &acc * v)
    }
}

/// How inexact atom locations are merged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MergeTolerance {
    /// 1e-9; exact and inexact points never merge implicitly.
    Default,
    /// Caller-supplied tolerance; exact and inexact points within it merge.
    Explicit(f64),
}

impl MergeTolerance {
    fn value(self) -> f64 {
        match self {
            MergeTolerance::Default => DEFAULT_MERGE_TOLERANCE,
            MergeTolerance::Explicit(t) => t,
        }
    }
}

/// Canonical distribution: atoms sorted by location, no two at provably
/// equal points, no zero coefficients, no zero smooth part.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    group: GroupKind,
    atoms: Vec<Atom>,
    smooth_const: Option<Value>,
    orbit_terms: Vec<OrbitTerm>,
}

impl Distribution {
    pub fn zero(group: GroupKind) -> Self {
        Distribution { group, atoms: Vec::new(), smooth_const: None, orbit_terms: Vec::new() }
    }

    /// Constant density `c` relative to the volume form.
    pub fn smooth(group: GroupKind, c: Value) -> Self {
        Self::make(group, Vec::new(), Some(c), Vec::new(), MergeTolerance::Default).expect("no atoms to merge")
    }

    /// `c · δ_at`.
    pub fn dirac(at: GroupPoint, c: Value) -> Self {
        let group = at.kind();
        Self::make(group, vec![Atom::new(at, c)], None, Vec::new(), MergeTolerance::Default)
            .expect("single atom")
    }

    /// Canonicalizing constructor.
    pub fn make(
        group: GroupKind,
        mut atoms: Vec<Atom>,
        smooth_const: Option<Value>,
        orbit_terms: Vec<OrbitTerm>,
        tolerance: MergeTolerance,
    ) -> Result<Self> {
        if let Some(a) = atoms.iter().find(|a| a.at.kind() != group) {
            return Err(Error::IncompatibleGroups(format!(
                "atom at {} is a {:?} point on a {:?} distribution",
                a.at,
                a.at.kind(),
                group
            )));
        }
        atoms.sort_by(|a, b| a.at.total_cmp(&b.at));
        let tol = tolerance.value();
        let mut merged: Vec<Atom> = Vec::with_capacity(atoms.len());
        for atom in atoms {
            if let Some(last) = merged.last_mut() {
                if same_location(&last.at, &atom.at, tol, tolerance)? {
                    last.coeff = &last.coeff + &atom.coeff;
                    if let (GroupPoint::Real(Value::Approx(_)), GroupPoint::Real(Value::Exact(_))) = (&last.at, &atom.at) {
                        last.at = atom.at;
                    }
                    continue;
                }
            }
            merged.push(atom);
        }
        merged.retain(|a| !a.coeff.is_zero());
        let smooth_const = smooth_const.filter(|c| !c.is_zero());
        let mut orbit_terms: Vec<OrbitTerm> =
            orbit_terms.into_iter().filter(|t| !t.coefficient().is_zero()).collect();
        orbit_terms.sort_by(|a, b| a.class_label.cmp(&b.class_label));
        Ok(Distribution { group, atoms: merged, smooth_const, orbit_terms })
    }

    pub fn group(&self) -> GroupKind {
        self.group
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn smooth_const(&self) -> Option<&Value> {
        self.smooth_const.as_ref()
    }

    pub fn orbit_terms(&self) -> &[OrbitTerm] {
        &self.orbit_terms
    }

    pub fn into_parts(self) -> (GroupKind, Vec<Atom>, Option<Value>, Vec<OrbitTerm>) {
        (self.group, self.atoms, self.smooth_const, self.orbit_terms)
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty() && self.smooth_const.is_none() && self.orbit_terms.is_empty()
    }

    /// No atoms and no orbit terms; possibly a nonzero constant density.
    pub fn is_purely_smooth(&self) -> bool {
        self.atoms.is_empty() && self.orbit_terms.is_empty()
    }

    /// Coefficient of the atom at `at`, if any.
    pub fn coefficient_at(&self, at: &GroupPoint) -> Option<&Value> {
        self.atoms.iter().find(|a| &a.at == at).map(|a| &a.coeff)
    }

    /// `⟨d, f⟩ = Σ cᵢ f(pᵢ) + smooth · ∫ f Λ`. Symbolic orbit terms cannot be
    /// paired.
    pub fn pair(&self, f: impl Fn(&GroupPoint) -> Value, integral_of_f: Option<&Value>) -> Result<Value> {
        if !self.orbit_terms.is_empty() {
            return Err(Error::SymbolicOrbitTerms(self.orbit_terms.len()));
        }
        let mut total = self.atoms.iter().fold(Value::zero(), |acc, a| &acc + &(&a.coeff * &f(&a.at)));
        if let Some(c) = &self.smooth_const {
            let integral = integral_of_f.ok_or(Error::MissingIntegral)?;
            total = &total + &(c * integral);
        }
        Ok(total)
    }

    pub fn add(&self, other: &Distribution) -> Result<Distribution> {
        self.add_with(other, MergeTolerance::Default)
    }

    pub fn add_with(&self, other: &Distribution, tolerance: MergeTolerance) -> Result<Distribution> {
        if self.group != other.group {
            return Err(Error::IncompatibleGroups(format!(
                "cannot add a {:?} distribution to a {:?} one",
                other.group, self.group
            )));
        }
        let atoms = self.atoms.iter().chain(&other.atoms).cloned().collect();
        let smooth = match (&self.smooth_const, &other.smooth_const) {
            (None, None) => None,
            (a, b) => Some(&a.clone().unwrap_or_else(Value::zero) + &b.clone().unwrap_or_else(Value::zero)),
        };
        let orbits = self.orbit_terms.iter().chain(&other.orbit_terms).cloned().collect();
        Distribution::make(self.group, atoms, smooth, orbits, tolerance)
    }

    /// `c · d`. Orbit terms record the scalar as a `scale` factor.
    pub fn scale(&self, c: &Value) -> Distribution {
        if c.is_zero() {
            return Distribution::zero(self.group);
        }
        let atoms = self.atoms.iter().map(|a| Atom::new(a.at.clone(), &a.coeff * c)).collect();
        let smooth = self.smooth_const.as_ref().map(|s| s * c);
        let is_one = matches!(c, Value::Exact(q) if q.is_one());
        let orbits = self
            .orbit_terms
            .iter()
            .cloned()
            .map(|mut t| {
                if !is_one {
                    let factor = t.coeff_factors.remove("scale").map_or_else(|| c.clone(), |s| &s * c);
                    t.coeff_factors.insert("scale".into(), factor);
                }
                t
            })
            .collect();
        Distribution::make(self.group, atoms, smooth, orbits, MergeTolerance::Default)
            .expect("scaling preserves canonical locations")
    }

    pub fn neg(&self) -> Distribution {
        self.scale(&Value::int(-1))
    }

    pub fn sub(&self, other: &Distribution) -> Result<Distribution> {
        self.add(&other.neg())
    }
}

fn same_location(a: &GroupPoint, b: &GroupPoint, tol: f64, tolerance: MergeTolerance) -> Result<bool> {
    match (a, b) {
        (GroupPoint::Real(x), GroupPoint::Real(y)) => match (x, y) {
            (Value::Exact(p), Value::Exact(q)) => Ok(p == q),
            (Value::Approx(p), Value::Approx(q)) => Ok((p - q).abs() <= tol),
            _ => {
                let close = (x.to_f64() - y.to_f64()).abs() <= tol;
                match (close, tolerance) {
                    (false, _) => Ok(false),
                    (true, MergeTolerance::Explicit(_)) => Ok(true),
                    (true, MergeTolerance::Default) => {
                        let (exact, approx) = if x.is_exact() { (x, y) } else { (y, x) };
                        Err(Error::AmbiguousMerge { exact: exact.to_string(), approx: approx.to_string() })
                    }
                }
            }
        },
        _ => Ok(a == b),
    }
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Serialize, Deserialize)]
struct AtomJson {
    at: String,
    coeff: Value,
}

#[derive(Serialize, Deserialize)]
struct DistributionJson {
    group: GroupKind,
    #[serde(default)]
    atoms: Vec<AtomJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    smooth_const: Option<Value>,
    #[serde(default)]
    orbit_terms: Vec<OrbitTerm>,
}

impl Serialize for Distribution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DistributionJson {
            group: self.group,
            atoms: self.atoms.iter().map(|a| AtomJson { at: a.at.to_string(), coeff: a.coeff.clone() }).collect(),
            smooth_const: self.smooth_const.clone(),
            orbit_terms: self.orbit_terms.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Distribution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = DistributionJson::deserialize(d)?;
        let atoms = raw
            .atoms
            .into_iter()
            .map(|a| Ok(Atom::new(raw.group.parse_point(&a.at)?, a.coeff)))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Distribution::make(raw.group, atoms, raw.smooth_const, raw.orbit_terms, MergeTolerance::Default)
            .map_err(D::Error::custom)
    }
}
