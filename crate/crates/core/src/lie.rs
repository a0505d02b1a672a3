//! Finite-dimensional Lie algebras given by structure constants, and their
//! Chevalley–Eilenberg cohomology with trivial coefficients.
//!
//! Indices in the public JSON format and in [`Violation`] reports are
//! 1-based; storage is 0-based.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{binomial, parse_rational, subsets, RationalMatrix};

/// First failure found by [`validate`], with 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `c[i][j][k] != -c[j][i][k]`.
    Antisymmetry { i: usize, j: usize, k: usize },
    /// Component `l` of the Jacobiator of `(e_i, e_j, e_k)` is nonzero.
    Jacobi { i: usize, j: usize, k: usize, l: usize },
    /// Structure-constant table of the wrong size.
    Shape { expected: usize, got: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Antisymmetry { i, j, k } => {
                write!(f, "antisymmetry fails at ({i},{j},{k}): c[{i}][{j}][{k}] != -c[{j}][{i}][{k}]")
            }
            Violation::Jacobi { i, j, k, l } => {
                write!(f, "Jacobi identity fails for (e{i}, e{j}, e{k}) in component {l}")
            }
            Violation::Shape { expected, got } => {
                write!(f, "expected {expected} structure constants, got {got}")
            }
        }
    }
}

/// Checks antisymmetry and the Jacobi identity of a dense `dim^3` table
/// indexed `c[(i*dim + j)*dim + k]`.
pub fn validate(dim: usize, constants: &[BigRational]) -> std::result::Result<(), Violation> {
    let expected = dim * dim * dim;
    if constants.len() != expected {
        return Err(Violation::Shape { expected, got: constants.len() });
    }
    let c = |i: usize, j: usize, k: usize| &constants[(i * dim + j) * dim + k];
    for i in 0..dim {
        for j in i..dim {
            for k in 0..dim {
                if *c(i, j, k) != -c(j, i, k) {
                    return Err(Violation::Antisymmetry { i: i + 1, j: j + 1, k: k + 1 });
                }
            }
        }
    }
    // [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] = 0
    for i in 0..dim {
        for j in i + 1..dim {
            for k in j + 1..dim {
                for l in 0..dim {
                    let mut sum = BigRational::zero();
                    for m in 0..dim {
                        sum += c(j, k, m) * c(i, m, l);
                        sum += c(k, i, m) * c(j, m, l);
                        sum += c(i, j, m) * c(k, m, l);
                    }
                    if !sum.is_zero() {
                        return Err(Violation::Jacobi { i: i + 1, j: j + 1, k: k + 1, l: l + 1 });
                    }
                }
            }
        }
    }
    Ok(())
}

/// A validated Lie algebra `[e_i, e_j] = sum_k c[i][j][k] e_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    constants: Vec<BigRational>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim={}", self.dim)?;
        for (i, j, k, c) in self.nonzero_brackets() {
            write!(f, ", [e{},e{}]∋{}e{}", i + 1, j + 1, c, k + 1)?;
        }
        write!(f, ")")
    }
}

/// Betti numbers b^0..b^n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedDims(pub Vec<usize>);

impl GradedDims {
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

impl LieAlgebra {
    pub fn new(dim: usize, constants: Vec<BigRational>) -> Result<Self> {
        validate(dim, &constants).map_err(Error::InvalidAlgebra)?;
        Ok(LieAlgebra { dim, constants })
    }

    /// Builds from a list of brackets `[e_i, e_j] = sum c e_k` (1-based),
    /// completing antisymmetrically. Brackets not listed are zero.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, Vec<(usize, BigRational)>)]) -> Result<Self> {
        let mut c = vec![BigRational::zero(); dim * dim * dim];
        let mut set = vec![false; dim * dim * dim];
        let idx = |i: usize, j: usize, k: usize| (i * dim + j) * dim + k;
        for (i, j, out) in brackets {
            for &(k, ref v) in out {
                for &x in &[*i, *j, k] {
                    if x == 0 || x > dim {
                        return Err(Error::Parse(format!("basis index {x} outside 1..={dim}")));
                    }
                }
                let (i0, j0, k0) = (i - 1, j - 1, k - 1);
                if i0 == j0 {
                    if !v.is_zero() {
                        return Err(Error::InvalidAlgebra(Violation::Antisymmetry { i: *i, j: *j, k }));
                    }
                    continue;
                }
                let fwd = idx(i0, j0, k0);
                let back = idx(j0, i0, k0);
                if set[back] && c[back] != -v.clone() {
                    return Err(Error::InvalidAlgebra(Violation::Antisymmetry { i: *i, j: *j, k }));
                }
                if set[fwd] && c[fwd] != *v {
                    return Err(Error::Parse(format!("bracket [e{i},e{j}] lists e{k} twice with different values")));
                }
                c[fwd] = v.clone();
                c[back] = -v.clone();
                set[fwd] = true;
                set[back] = true;
            }
        }
        Self::new(dim, c)
    }

    fn from_int_brackets(dim: usize, brackets: &[(usize, usize, usize, i64)]) -> Self {
        let list: Vec<_> = brackets
            .iter()
            .map(|&(i, j, k, c)| (i, j, vec![(k, BigRational::from_integer(c.into()))]))
            .collect();
        Self::from_brackets(dim, &list).expect("builtin presentation is a Lie algebra")
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra { dim, constants: vec![BigRational::zero(); dim * dim * dim] }
    }

    /// Three-dimensional Heisenberg algebra, `[e1,e2] = e3`.
    pub fn heisenberg() -> Self {
        Self::heisenberg_n(1)
    }

    /// Heisenberg algebra of dimension `2m+1`: `[x_i, y_i] = z`.
    pub fn heisenberg_n(m: usize) -> Self {
        let dim = 2 * m + 1;
        let brackets: Vec<_> = (1..=m).map(|i| (i, m + i, dim, 1)).collect();
        Self::from_int_brackets(dim, &brackets)
    }

    /// `sl(2)` with basis (h, e, f).
    pub fn sl2() -> Self {
        Self::from_int_brackets(3, &[(1, 2, 2, 2), (1, 3, 3, -2), (2, 3, 1, 1)])
    }

    /// Standard filiform algebra `[e1, e_i] = e_{i+1}` for `2 <= i < n`.
    pub fn filiform(dim: usize) -> Self {
        let brackets: Vec<_> = (2..dim).map(|i| (1, i, i + 1, 1)).collect();
        Self::from_int_brackets(dim, &brackets)
    }

    /// Free nilpotent algebra of rank 2 and step 3 (dimension 5).
    pub fn free_nilpotent_2_3() -> Self {
        Self::from_int_brackets(5, &[(1, 2, 3, 1), (1, 3, 4, 1), (2, 3, 5, 1)])
    }

    /// Free 2-step nilpotent algebra on 3 generators (dimension 6).
    pub fn free_nilpotent_3_2() -> Self {
        Self::from_int_brackets(6, &[(1, 2, 4, 1), (1, 3, 5, 1), (2, 3, 6, 1)])
    }

    /// Direct sum; the basis of `other` follows that of `self`.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.dim + other.dim;
        let mut c = vec![BigRational::zero(); n * n * n];
        for (i, j, k, v) in self.nonzero_brackets() {
            c[(i * n + j) * n + k] = v.clone();
        }
        let s = self.dim;
        for (i, j, k, v) in other.nonzero_brackets() {
            c[((i + s) * n + j + s) * n + k + s] = v.clone();
        }
        LieAlgebra { dim: n, constants: c }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constants(&self) -> &[BigRational] {
        &self.constants
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &BigRational {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    /// Nonzero `(i, j, k, c)` with `i < j`, 0-based.
    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (usize, usize, usize, &BigRational)> + '_ {
        let n = self.dim;
        (0..n).flat_map(move |i| {
            (i + 1..n).flat_map(move |j| {
                (0..n).filter_map(move |k| {
                    let v = self.c(i, j, k);
                    (!v.is_zero()).then_some((i, j, k, v))
                })
            })
        })
    }

    /// Bracket of two vectors in coordinates.
    pub fn bracket(&self, x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
        let n = self.dim;
        let mut out = vec![BigRational::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        *o += &xy * c;
                    }
                }
            }
        }
        out
    }

    /// Nilpotency step if nilpotent, from the lower central series
    /// `g^1 = g`, `g^{s+1} = [g, g^s]`. The zero algebra has step 0.
    pub fn nilpotency_step(&self) -> Option<usize> {
        let n = self.dim;
        let unit = |i: usize| {
            let mut v = vec![BigRational::zero(); n];
            v[i] = BigRational::one();
            v
        };
        let mut current: Vec<Vec<BigRational>> = (0..n).map(unit).collect();
        let mut step = 0;
        while !current.is_empty() {
            step += 1;
            let products: Vec<Vec<BigRational>> = (0..n)
                .flat_map(|i| current.iter().map(move |v| (i, v)))
                .map(|(i, v)| self.bracket(&unit(i), v))
                .collect();
            let next = span_basis(&products, n);
            if next.len() == current.len() {
                return None;
            }
            current = next;
        }
        Some(step)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_step().is_some()
    }

    /// Dimension of the derived algebra `[g, g]`.
    pub fn derived_dim(&self) -> usize {
        let n = self.dim;
        let rows: Vec<Vec<BigRational>> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (0..n).map(|k| self.c(i, j, k).clone()).collect())).collect();
        span_basis(&rows, n).len()
    }

    /// Matrix of `d: Λ^degree g* -> Λ^{degree+1} g*` in lexicographic subset
    /// bases, from
    /// `(dω)(x_0..x_p) = Σ_{a<b} (-1)^{a+b} ω([x_a,x_b], x_0, ..^a..^b.., x_p)`.
    pub fn ce_differential(&self, degree: usize) -> Result<RationalMatrix> {
        let n = self.dim;
        if degree > n {
            return Err(Error::DegreeOutOfRange { degree, max: n });
        }
        let domain = subsets(n, degree);
        let codomain = subsets(n, degree + 1);
        let mut d = RationalMatrix::zeros(codomain.len(), domain.len());
        let position = |s: &[usize]| domain.binary_search_by(|probe| probe.as_slice().cmp(s)).ok();
        for (row, tuple) in codomain.iter().enumerate() {
            for a in 0..tuple.len() {
                for b in a + 1..tuple.len() {
                    let rest: Vec<usize> =
                        tuple.iter().enumerate().filter(|&(t, _)| t != a && t != b).map(|(_, &x)| x).collect();
                    let outer_sign = (a + b) % 2 == 1;
                    for m in 0..n {
                        let c = self.c(tuple[a], tuple[b], m);
                        if c.is_zero() || rest.contains(&m) {
                            continue;
                        }
                        // e^I(e_m, rest) = (-1)^{position of m in I}, I = sort({m} ∪ rest)
                        let insert_at = rest.partition_point(|&x| x < m);
                        let mut subset = rest.clone();
                        subset.insert(insert_at, m);
                        let col = position(&subset).expect("subset of right size");
                        let negative = outer_sign ^ (insert_at % 2 == 1);
                        let cur = d.get(row, col).clone();
                        d.set(row, col, if negative { cur - c } else { cur + c });
                    }
                }
            }
        }
        Ok(d)
    }

    /// `b^i = dim ker d_i - rank d_{i-1}`.
    pub fn cohomology_dims(&self) -> GradedDims {
        let n = self.dim;
        let ranks: Vec<usize> =
            (0..=n).map(|i| self.ce_differential(i).expect("degree in range").rank()).collect();
        GradedDims(
            (0..=n)
                .map(|i| {
                    let kernel = binomial(n, i) - ranks[i];
                    let image = if i == 0 { 0 } else { ranks[i - 1] };
                    kernel - image
                })
                .collect(),
        )
    }
}

/// Basis (as rows) of the span of `vectors`, via reduced echelon form.
fn span_basis(vectors: &[Vec<BigRational>], n: usize) -> Vec<Vec<BigRational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = RationalMatrix::from_rows(vectors.to_vec()).expect("equal lengths");
    debug_assert_eq!(m.cols(), n);
    let (rref, pivots) = m.rref();
    (0..pivots.len()).map(|r| rref.row(r).to_vec()).collect()
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Debug, Clone, Serialize, Deserialize)]
struct BracketOut {
    k: usize,
    c: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct BracketJson {
    i: usize,
    j: usize,
    out: Vec<BracketOut>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct LieAlgebraJson {
    dim: usize,
    #[serde(default)]
    brackets: Vec<BracketJson>,
}

impl Serialize for LieAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut brackets: Vec<BracketJson> = Vec::new();
        for (i, j, k, c) in self.nonzero_brackets() {
            let entry = BracketOut { k: k + 1, c: c.to_string() };
            match brackets.last_mut() {
                Some(b) if b.i == i + 1 && b.j == j + 1 => b.out.push(entry),
                _ => brackets.push(BracketJson { i: i + 1, j: j + 1, out: vec![entry] }),
            }
        }
        LieAlgebraJson { dim: self.dim, brackets }.serialize(s)
    }
}

impl LieAlgebraJson {
    fn into_algebra(self) -> Result<LieAlgebra> {
        let list = self
            .brackets
            .iter()
            .map(|b| {
                let out = b
                    .out
                    .iter()
                    .map(|o| Ok((o.k, parse_rational(&o.c)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok((b.i, b.j, out))
            })
            .collect::<Result<Vec<_>>>()?;
        LieAlgebra::from_brackets(self.dim, &list)
    }
}

impl LieAlgebra {
    /// Parses the bracket-table JSON. Malformed JSON is an [`Error::Parse`];
    /// well-formed tables that break antisymmetry or Jacobi are reported as
    /// [`Error::InvalidAlgebra`].
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<LieAlgebraJson>(text)?.into_algebra()
    }
}

impl<'de> Deserialize<'de> for LieAlgebra {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        LieAlgebraJson::deserialize(d)?.into_algebra().map_err(D::Error::custom)
    }
}

/// Named presentations accepted by the CLI.
pub fn builtin(name: &str) -> Option<LieAlgebra> {
    let lower = name.to_ascii_lowercase();
    let parse_suffix = |prefix: &str| lower.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok());
    match lower.as_str() {
        "heisenberg" => Some(LieAlgebra::heisenberg()),
        "sl2" => Some(LieAlgebra::sl2()),
        "free-2-3" => Some(LieAlgebra::free_nilpotent_2_3()),
        "free-3-2" => Some(LieAlgebra::free_nilpotent_3_2()),
        _ => {
            if let Some(n) = parse_suffix("abelian") {
                Some(LieAlgebra::abelian(n))
            } else if let Some(n) = parse_suffix("filiform") {
                Some(LieAlgebra::filiform(n))
            } else if let Some(n) = parse_suffix("heisenberg") {
                (n % 2 == 1).then(|| LieAlgebra::heisenberg_n(n / 2))
            } else {
                None
            }
        }
    }
}

/// Nilpotent algebras of dimension at most 6 used by property checks.
pub fn nilpotent_battery() -> Vec<(String, LieAlgebra)> {
    let h3 = LieAlgebra::heisenberg();
    vec![
        ("abelian1".into(), LieAlgebra::abelian(1)),
        ("abelian2".into(), LieAlgebra::abelian(2)),
        ("abelian4".into(), LieAlgebra::abelian(4)),
        ("heisenberg3".into(), h3.clone()),
        ("filiform4".into(), LieAlgebra::filiform(4)),
        ("heisenberg3+R".into(), h3.direct_sum(&LieAlgebra::abelian(1))),
        ("heisenberg5".into(), LieAlgebra::heisenberg_n(2)),
        ("filiform5".into(), LieAlgebra::filiform(5)),
        ("free-2-3".into(), LieAlgebra::free_nilpotent_2_3()),
        ("filiform6".into(), LieAlgebra::filiform(6)),
        ("free-3-2".into(), LieAlgebra::free_nilpotent_3_2()),
        ("heisenberg3+heisenberg3".into(), h3.direct_sum(&h3)),
        ("heisenberg5+R".into(), LieAlgebra::heisenberg_n(2).direct_sum(&LieAlgebra::abelian(1))),
    ]
}
