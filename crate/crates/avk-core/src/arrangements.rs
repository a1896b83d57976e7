//! Generic real hyperplane arrangements in RP^d: exact cell enumeration,
//! face-counting polynomials, and three independent routes to the global
//! partition form φ, plus the closed-form inertia predictions the routes
//! must reproduce.
//!
//! Cell enumeration is implemented for d ∈ {1, 2}; the form routes need
//! d = 2 (isolated crossings).  Sign vectors are taken modulo global
//! negation, canonicalized so the first nonzero entry is `+`.

use std::collections::BTreeSet;

use num::{One, Zero};
use serde_json::{json, Value};

use crate::localforms::{
    lambda_normal_crossing, lambda_on_sectors, lambda_opposite_sign_value, node_sector_system,
    residue_form, SectorSystem, SignVector,
};
use crate::qforms::{rat, rat_from_json, rat_to_string, ratio, Inertia, Rat, SymmetricForm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArrangementError {
    #[error("an arrangement needs an even number of hyperplanes, got {0}")]
    OddCount(usize),
    #[error("hyperplane #{0} must have {1} coordinates")]
    BadVector(usize, usize),
    #[error("hyperplane #{0} is the zero vector")]
    ZeroVector(usize),
    #[error("hyperplanes #{0} and #{1} define the same hyperplane")]
    Coincident(usize, usize),
    #[error("hyperplanes #{0}, #{1}, #{2} pass through a common point")]
    Concurrent(usize, usize, usize),
    #[error("only ambient dimensions 1 and 2 are supported, got {0}")]
    UnsupportedDimension(usize),
    #[error("this route needs ambient dimension 2, got {0}")]
    NeedsDimensionTwo(usize),
    #[error(
        "regions {0} and {1} meet in a component that is not a closed cell; \
         the face-count formula does not apply (m = 2 arrangements are the \
         known case)"
    )]
    NonPolyhedral(String, String),
    #[error("non-integral sign exponent for regions {0}, {1}")]
    ExponentParity(String, String),
    #[error("cross-sign entry ({0}, {1}) = {2} must vanish for even d")]
    CrossSign(String, String, String),
    #[error("{0}")]
    Invalid(String),
}

type AResult<T> = Result<T, ArrangementError>;

/// An arrangement of m = 2k real hyperplanes in RP^d, given by rational
/// coefficient vectors of length d + 1.  Genericity (every d meet in one
/// point, no d + 1 concurrent) is validated on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Arrangement {
    d: usize,
    hyperplanes: Vec<Vec<Rat>>,
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn cross3(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn det3(a: &[Rat], b: &[Rat], c: &[Rat]) -> Rat {
    dot(a, &cross3(b, c))
}

fn sign_of(x: &Rat) -> i8 {
    if x.is_zero() {
        0
    } else if *x > Rat::zero() {
        1
    } else {
        -1
    }
}

/// Negate a projective point if needed so its first nonzero coordinate is
/// positive.
fn canonical_point(mut p: Vec<Rat>) -> Vec<Rat> {
    if let Some(first) = p.iter().find(|x| !x.is_zero()) {
        if *first < Rat::zero() {
            for x in p.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    p
}

impl Arrangement {
    pub fn new(d: usize, hyperplanes: Vec<Vec<Rat>>) -> AResult<Self> {
        if d == 0 || d > 2 {
            return Err(ArrangementError::UnsupportedDimension(d));
        }
        let m = hyperplanes.len();
        if m < 2 || m % 2 != 0 {
            return Err(ArrangementError::OddCount(m));
        }
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.len() != d + 1 {
                return Err(ArrangementError::BadVector(i + 1, d + 1));
            }
            if h.iter().all(|x| x.is_zero()) {
                return Err(ArrangementError::ZeroVector(i + 1));
            }
        }
        // Genericity: pairwise independent; for d = 2 additionally no
        // three concurrent.
        for i in 0..m {
            for j in (i + 1)..m {
                let indep = if d == 1 {
                    !(&hyperplanes[i][0] * &hyperplanes[j][1]
                        - &hyperplanes[i][1] * &hyperplanes[j][0])
                        .is_zero()
                } else {
                    cross3(&hyperplanes[i], &hyperplanes[j])
                        .iter()
                        .any(|x| !x.is_zero())
                };
                if !indep {
                    return Err(ArrangementError::Coincident(i + 1, j + 1));
                }
            }
        }
        if d == 2 {
            for i in 0..m {
                for j in (i + 1)..m {
                    for k in (j + 1)..m {
                        if det3(&hyperplanes[i], &hyperplanes[j], &hyperplanes[k]).is_zero() {
                            return Err(ArrangementError::Concurrent(i + 1, j + 1, k + 1));
                        }
                    }
                }
            }
        }
        Ok(Arrangement { d, hyperplanes })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn hyperplanes(&self) -> &[Vec<Rat>] {
        &self.hyperplanes
    }

    /// The Ω hyperplane: the last one when d − k is even (m = 2k), none
    /// when d − k is odd.
    pub fn omega_index(&self) -> Option<usize> {
        let k = self.m() / 2;
        if (self.d as i64 - k as i64) % 2 == 0 {
            Some(self.m() - 1)
        } else {
            None
        }
    }

    pub fn from_json(v: &Value) -> AResult<Self> {
        let d = v
            .get("d")
            .and_then(Value::as_u64)
            .ok_or_else(|| ArrangementError::Invalid("missing field `d`".into()))?
            as usize;
        let rows = v
            .get("hyperplanes")
            .and_then(Value::as_array)
            .ok_or_else(|| ArrangementError::Invalid("missing array `hyperplanes`".into()))?;
        let mut hyperplanes = Vec::with_capacity(rows.len());
        for row in rows {
            let entries = row
                .as_array()
                .ok_or_else(|| ArrangementError::Invalid("hyperplane must be an array".into()))?;
            let mut out = Vec::with_capacity(entries.len());
            for e in entries {
                out.push(
                    rat_from_json(e).map_err(|e| ArrangementError::Invalid(e.to_string()))?,
                );
            }
            hyperplanes.push(out);
        }
        Arrangement::new(d, hyperplanes)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": "avk-1",
            "d": self.d,
            "hyperplanes": self
                .hyperplanes
                .iter()
                .map(|h| Value::Array(h.iter().map(|x| Value::String(rat_to_string(x))).collect()))
                .collect::<Vec<_>>(),
        })
    }
}

/// One stratum of the arrangement: its sign vector (canonical modulo
/// global negation), dimension, the hyperplanes vanishing on it, and a
/// rational sample point whose true signs realize `sign_vector`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub dim: usize,
    pub sign_vector: Vec<i8>,
    pub zeros: Vec<usize>,
    pub sample: Vec<Rat>,
}

impl Cell {
    pub fn label(&self) -> String {
        self.sign_vector
            .iter()
            .map(|&s| match s {
                1 => '+',
                -1 => '-',
                _ => '0',
            })
            .collect()
    }

    /// Product of the nonzero signs; for regions of an even arrangement
    /// this is the global sign of the defining section.
    pub fn product_sign(&self) -> i8 {
        let negatives = self.sign_vector.iter().filter(|&&s| s == -1).count();
        if negatives % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

#[derive(Debug, Clone)]
pub struct CellComplex {
    pub d: usize,
    pub m: usize,
    cells: Vec<Cell>,
}

impl CellComplex {
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cells_of_dim(&self, dim: usize) -> Vec<usize> {
        (0..self.cells.len())
            .filter(|&i| self.cells[i].dim == dim)
            .collect()
    }

    pub fn region_indices(&self) -> Vec<usize> {
        self.cells_of_dim(self.d)
    }

    /// The global negations aligning `sub`'s nonzero signs with `sup`;
    /// nonempty exactly when `sub` lies in the closure of `sup`, and the
    /// number of alignments counts the local sectors of `sup` along `sub`.
    pub fn alignments(&self, sub: usize, sup: usize) -> Vec<i8> {
        let s = &self.cells[sub].sign_vector;
        let r = &self.cells[sup].sign_vector;
        [1i8, -1]
            .into_iter()
            .filter(|&e| {
                s.iter()
                    .zip(r)
                    .all(|(&a, &b)| a == 0 || e * a == b)
            })
            .collect()
    }

    pub fn is_face(&self, sub: usize, sup: usize) -> bool {
        !self.alignments(sub, sup).is_empty()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .map(|c| if c.dim % 2 == 0 { 1 } else { -1 })
            .sum()
    }
}

fn sign_vector_at(a: &Arrangement, p: &[Rat]) -> Vec<i8> {
    a.hyperplanes.iter().map(|h| sign_of(&dot(h, p))).collect()
}

/// Canonicalize a (sign vector, sample) pair together so the invariant
/// "signs at sample == sign_vector" survives the negation.
fn canonical_pair(mut sv: Vec<i8>, mut p: Vec<Rat>) -> (Vec<i8>, Vec<Rat>) {
    match sv.iter().find(|&&s| s != 0) {
        Some(-1) => {
            for s in sv.iter_mut() {
                *s = -*s;
            }
            for x in p.iter_mut() {
                *x = -x.clone();
            }
            (sv, p)
        }
        Some(_) => (sv, p),
        None => (sv, canonical_point(p)),
    }
}

/// Two independent rational points spanning the projective line ℓ·x = 0.
fn line_basis(l: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    if !l[0].is_zero() {
        (
            vec![-l[1].clone(), l[0].clone(), Rat::zero()],
            vec![-l[2].clone(), Rat::zero(), l[0].clone()],
        )
    } else if !l[1].is_zero() {
        (
            vec![Rat::one(), Rat::zero(), Rat::zero()],
            vec![Rat::zero(), -l[2].clone(), l[1].clone()],
        )
    } else {
        (
            vec![Rat::one(), Rat::zero(), Rat::zero()],
            vec![Rat::zero(), Rat::one(), Rat::zero()],
        )
    }
}

/// Coordinates [s : t] of v in the basis (a, b); the line parameter is
/// u = s/t with t = 0 read as ∞.
fn line_coordinates(a: &[Rat], b: &[Rat], v: &[Rat]) -> (Rat, Rat) {
    for p in 0..a.len() {
        for q in (p + 1)..a.len() {
            let det = &a[p] * &b[q] - &a[q] * &b[p];
            if !det.is_zero() {
                let s = (&v[p] * &b[q] - &v[q] * &b[p]) / det.clone();
                let t = (&a[p] * &v[q] - &a[q] * &v[p]) / det;
                return (s, t);
            }
        }
    }
    unreachable!("basis points must be independent");
}

/// Sample parameters, one per arc of RP¹ cut by the given parameters.
fn arc_samples(mut finite: Vec<Rat>, has_inf: bool) -> Vec<Option<Rat>> {
    finite.sort();
    let mut samples = Vec::new();
    if finite.is_empty() {
        // Only the ∞ vertex: one arc through all finite parameters.
        samples.push(Some(Rat::zero()));
        return samples;
    }
    for w in finite.windows(2) {
        samples.push(Some((&w[0] + &w[1]) / rat(2)));
    }
    let last = finite.last().unwrap();
    let first = finite.first().unwrap();
    // The wrap arc through ∞, or the two arcs flanking the ∞ vertex.
    samples.push(Some(last + rat(1)));
    if has_inf {
        samples.push(Some(first - rat(1)));
    }
    samples
}

fn param_point(a: &[Rat], b: &[Rat], param: &Option<Rat>) -> Vec<Rat> {
    match param {
        Some(u) => a.iter().zip(b).map(|(x, y)| u * x + y).collect(),
        None => a.to_vec(),
    }
}

/// Solve the 3×3 system rows·q = rhs by Cramer's rule.
fn solve3(rows: [&[Rat]; 3], rhs: [Rat; 3]) -> Vec<Rat> {
    let det = det3(rows[0], rows[1], rows[2]);
    assert!(!det.is_zero(), "sector probe matrix must be invertible");
    let mut out = Vec::with_capacity(3);
    for col in 0..3 {
        let mut m: Vec<Vec<Rat>> = rows.iter().map(|r| r.to_vec()).collect();
        for (row, value) in m.iter_mut().zip(rhs.iter()) {
            row[col] = value.clone();
        }
        out.push(det3(&m[0], &m[1], &m[2]) / det.clone());
    }
    out
}

pub fn enumerate_cells(a: &Arrangement) -> AResult<CellComplex> {
    let complex = match a.d {
        1 => enumerate_d1(a),
        2 => enumerate_d2(a),
        other => return Err(ArrangementError::UnsupportedDimension(other)),
    };
    let regions = complex.region_indices().len();
    let expected: u64 = (0..=a.d as u64)
        .map(|k| binomial(a.m() as u64 - 1, k))
        .sum();
    if regions as u64 != expected {
        return Err(ArrangementError::Invalid(format!(
            "found {regions} regions, expected {expected}"
        )));
    }
    let chi = complex.euler_characteristic();
    let expected_chi = if a.d % 2 == 0 { 1 } else { 0 };
    if chi != expected_chi {
        return Err(ArrangementError::Invalid(format!(
            "cell complex has Euler characteristic {chi}, expected {expected_chi}"
        )));
    }
    Ok(complex)
}

fn enumerate_d1(a: &Arrangement) -> CellComplex {
    let m = a.m();
    let basis_a = vec![Rat::one(), Rat::zero()];
    let basis_b = vec![Rat::zero(), Rat::one()];
    let mut cells = Vec::new();
    let mut finite = Vec::new();
    let mut has_inf = false;
    for (t, h) in a.hyperplanes.iter().enumerate() {
        let p = canonical_point(vec![-h[1].clone(), h[0].clone()]);
        let sv = sign_vector_at(a, &p);
        let (sv, p) = canonical_pair(sv, p);
        if h[0].is_zero() {
            has_inf = true;
        } else {
            finite.push(-h[1].clone() / h[0].clone());
        }
        cells.push(Cell {
            dim: 0,
            sign_vector: sv,
            zeros: vec![t],
            sample: p,
        });
    }
    for param in arc_samples(finite, has_inf) {
        let p = param_point(&basis_a, &basis_b, &param);
        let sv = sign_vector_at(a, &p);
        let (sv, p) = canonical_pair(sv, p);
        cells.push(Cell {
            dim: 1,
            sign_vector: sv,
            zeros: vec![],
            sample: p,
        });
    }
    cells.sort_by(|x, y| (x.dim, x.label()).cmp(&(y.dim, y.label())));
    CellComplex { d: 1, m, cells }
}

fn enumerate_d2(a: &Arrangement) -> CellComplex {
    let m = a.m();
    let mut cells = Vec::new();
    let mut vertex_data: Vec<(usize, usize, Vec<Rat>)> = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            let p = canonical_point(cross3(&a.hyperplanes[i], &a.hyperplanes[j]));
            vertex_data.push((i, j, p));
        }
    }
    for (i, j, p) in &vertex_data {
        let sv = sign_vector_at(a, p);
        let (sv, p) = canonical_pair(sv, p.clone());
        cells.push(Cell {
            dim: 0,
            sign_vector: sv,
            zeros: vec![*i, *j],
            sample: p,
        });
    }
    for t in 0..m {
        let (ba, bb) = line_basis(&a.hyperplanes[t]);
        let mut finite = Vec::new();
        let mut has_inf = false;
        for (i, j, p) in &vertex_data {
            if *i != t && *j != t {
                continue;
            }
            let (s, tt) = line_coordinates(&ba, &bb, p);
            if tt.is_zero() {
                has_inf = true;
            } else {
                finite.push(s / tt);
            }
        }
        for param in arc_samples(finite, has_inf) {
            let p = param_point(&ba, &bb, &param);
            let sv = sign_vector_at(a, &p);
            debug_assert_eq!(sv.iter().filter(|&&s| s == 0).count(), 1);
            let (sv, p) = canonical_pair(sv, p);
            cells.push(Cell {
                dim: 1,
                sign_vector: sv,
                zeros: vec![t],
                sample: p,
            });
        }
    }
    // Regions: probe every sector of every vertex.
    let mut seen: BTreeSet<Vec<i8>> = BTreeSet::new();
    let mut regions = Vec::new();
    for cell in cells.iter().filter(|c| c.dim == 0) {
        let (i, j) = (cell.zeros[0], cell.zeros[1]);
        let p = cell
            .sample
            .iter()
            .position(|x| !x.is_zero())
            .expect("projective point has a nonzero coordinate");
        let mut h = vec![Rat::zero(); 3];
        h[p] = if cell.sample[p] > Rat::zero() {
            Rat::one()
        } else {
            -Rat::one()
        };
        for (s1, s2) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
            let mut delta = Rat::one();
            let q = loop {
                let q = solve3(
                    [&a.hyperplanes[i], &a.hyperplanes[j], &h],
                    [rat(s1) * delta.clone(), rat(s2) * delta.clone(), Rat::one()],
                );
                let ok = (0..m).filter(|&t| t != i && t != j).all(|t| {
                    sign_of(&dot(&a.hyperplanes[t], &q)) == cell.sign_vector[t]
                });
                if ok {
                    break q;
                }
                delta = delta / rat(2);
            };
            let sv = sign_vector_at(a, &q);
            debug_assert!(sv.iter().all(|&s| s != 0));
            let (sv, q) = canonical_pair(sv, q);
            if seen.insert(sv.clone()) {
                regions.push(Cell {
                    dim: 2,
                    sign_vector: sv,
                    zeros: vec![],
                    sample: q,
                });
            }
        }
    }
    cells.extend(regions);
    cells.sort_by(|x, y| (x.dim, x.label()).cmp(&(y.dim, y.label())));
    CellComplex { d: 2, m, cells }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut out = 1u64;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// δ(CX^±) ≤ N_{d−1}^{m−1} = Σ_{k≤d−1} C(m−2, k).
pub fn smith_bound_n(m: usize, d: usize) -> u64 {
    (0..d as u64).map(|k| binomial(m as u64 - 2, k)).sum()
}

/// 2·#{regions of the given sign} + χ(RA), computed from the complex.
pub fn chi_rx_eps(c: &CellComplex, sign: i8) -> i64 {
    assert_eq!(c.d, 2, "double-cover Euler characteristics need d = 2");
    let n_eps = c
        .region_indices()
        .into_iter()
        .filter(|&r| c.cells[r].product_sign() == sign)
        .count() as i64;
    let v = c.cells_of_dim(0).len() as i64;
    let e = c.cells_of_dim(1).len() as i64;
    2 * n_eps + (v - e)
}

/// The face-counting polynomial f(t) = Σ f_k t^k of a closed cell, with
/// f_k ≥ 0 and the top coefficient positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacePolynomial(Vec<u64>);

impl FacePolynomial {
    pub fn new(coefficients: Vec<u64>) -> AResult<Self> {
        match coefficients.last() {
            Some(0) | None => Err(ArrangementError::Invalid(
                "face polynomial needs a positive top coefficient".into(),
            )),
            _ => Ok(FacePolynomial(coefficients)),
        }
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.0
            .iter()
            .rev()
            .fold(0i64, |acc, &c| acc * t + c as i64)
    }

    /// Face counts of a product polyhedron multiply as polynomials.
    pub fn product(&self, other: &FacePolynomial) -> FacePolynomial {
        let mut out = vec![0u64; self.0.len() + other.0.len() - 1];
        for (i, &x) in self.0.iter().enumerate() {
            for (j, &y) in other.0.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        FacePolynomial(out)
    }
}

/// Connected components of the closed intersection of two regions (given
/// by their positions in `region_indices()`), each with its face counts.
/// For i = j this is the closure of the region itself.
pub fn face_polynomial(
    c: &CellComplex,
    i: usize,
    j: usize,
) -> AResult<Vec<(Vec<usize>, FacePolynomial)>> {
    let regions = c.region_indices();
    let (ri, rj) = (
        *regions
            .get(i)
            .ok_or_else(|| ArrangementError::Invalid(format!("no region #{i}")))?,
        *regions
            .get(j)
            .ok_or_else(|| ArrangementError::Invalid(format!("no region #{j}")))?,
    );
    let mut shared: Vec<usize> = (0..c.cells.len())
        .filter(|&s| c.cells[s].dim < c.d && c.is_face(s, ri) && c.is_face(s, rj))
        .collect();
    if i == j {
        shared.push(ri);
    }
    // Union-find over the face relation inside the shared set.
    let mut parent: Vec<usize> = (0..shared.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for x in 0..shared.len() {
        for y in (x + 1)..shared.len() {
            if c.is_face(shared[x], shared[y]) || c.is_face(shared[y], shared[x]) {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for x in 0..shared.len() {
        let r = find(&mut parent, x);
        match roots.iter().position(|&q| q == r) {
            Some(k) => components[k].push(shared[x]),
            None => {
                roots.push(r);
                components.push(vec![shared[x]]);
            }
        }
    }
    let mut out = Vec::with_capacity(components.len());
    for comp in components {
        let top = comp.iter().map(|&s| c.cells[s].dim).max().unwrap();
        let mut counts = vec![0u64; top + 1];
        for &s in &comp {
            counts[c.cells[s].dim] += 1;
        }
        out.push((comp, FacePolynomial::new(counts)?));
    }
    Ok(out)
}

/// The assembled partition form with its sign blocks.
#[derive(Debug, Clone)]
pub struct PhiResult {
    pub form: SymmetricForm,
    pub plus: SymmetricForm,
    pub minus: SymmetricForm,
    pub omega: Option<usize>,
    pub route: &'static str,
}

impl PhiResult {
    pub(crate) fn assemble(
        labels: Vec<String>,
        signs: &[i8],
        gram: Vec<Vec<Rat>>,
        omega: Option<usize>,
        route: &'static str,
    ) -> AResult<PhiResult> {
        for i in 0..labels.len() {
            for j in 0..labels.len() {
                if signs[i] != signs[j] && !gram[i][j].is_zero() {
                    return Err(ArrangementError::CrossSign(
                        labels[i].clone(),
                        labels[j].clone(),
                        rat_to_string(&gram[i][j]),
                    ));
                }
            }
        }
        let form = SymmetricForm::new(labels.clone(), gram)
            .map_err(|e| ArrangementError::Invalid(e.to_string()))?;
        let pick = |sign: i8| -> AResult<SymmetricForm> {
            let sel: Vec<&str> = labels
                .iter()
                .zip(signs)
                .filter(|(_, &s)| s == sign)
                .map(|(l, _)| l.as_str())
                .collect();
            form.restrict(&sel)
                .map_err(|e| ArrangementError::Invalid(e.to_string()))
        };
        Ok(PhiResult {
            plus: pick(1)?,
            minus: pick(-1)?,
            form,
            omega,
            route,
        })
    }
}

/// One local sector of a region at a vertex: the side signs on the two
/// lines through the vertex, calibrated so their product equals the
/// region's global sign, plus the side of Ω when the vertex lies on it.
#[derive(Debug, Clone, Copy)]
struct LocalSector {
    pair: (i8, i8),
    omega_side: i8,
}

struct Geometry {
    complex: CellComplex,
    regions: Vec<usize>,
    labels: Vec<String>,
    signs: Vec<i8>,
    omega: Option<usize>,
    /// vertex cell index → (region position → sectors there)
    sectors: Vec<(usize, Vec<Vec<LocalSector>>)>,
    /// edge cell index → the two (region position, global sign) sides
    edge_sides: Vec<(usize, Vec<(usize, i8)>)>,
}

impl Geometry {
    fn build(a: &Arrangement) -> AResult<Geometry> {
        if a.d != 2 {
            return Err(ArrangementError::NeedsDimensionTwo(a.d));
        }
        let complex = enumerate_cells(a)?;
        let regions = complex.region_indices();
        let labels: Vec<String> = regions.iter().map(|&r| complex.cells[r].label()).collect();
        let signs: Vec<i8> = regions
            .iter()
            .map(|&r| complex.cells[r].product_sign())
            .collect();
        let omega = a.omega_index();
        let mut sectors = Vec::new();
        for v in complex.cells_of_dim(0) {
            let vc = &complex.cells[v];
            let (i0, j0) = (vc.zeros[0], vc.zeros[1]);
            let c_v = vc.product_sign();
            let mut per_region = vec![Vec::new(); regions.len()];
            for (pos, &r) in regions.iter().enumerate() {
                for eps in complex.alignments(v, r) {
                    let rv = &complex.cells[r].sign_vector;
                    let raw = (eps * rv[i0], eps * rv[j0]);
                    let pair = if c_v < 0 { (-raw.0, raw.1) } else { raw };
                    let omega_side = match omega {
                        Some(w) if w == i0 => raw.0,
                        Some(w) if w == j0 => raw.1,
                        _ => 0,
                    };
                    per_region[pos].push(LocalSector { pair, omega_side });
                }
            }
            sectors.push((v, per_region));
        }
        let mut edge_sides = Vec::new();
        for e in complex.cells_of_dim(1) {
            let mut sides = Vec::new();
            for (pos, &r) in regions.iter().enumerate() {
                for _ in complex.alignments(e, r) {
                    sides.push((pos, signs[pos]));
                }
            }
            if sides.len() != 2 {
                return Err(ArrangementError::Invalid(format!(
                    "edge {} borders {} region sides, expected 2",
                    complex.cells[e].label(),
                    sides.len()
                )));
            }
            edge_sides.push((e, sides));
        }
        Ok(Geometry {
            complex,
            regions,
            labels,
            signs,
            omega,
            sectors,
            edge_sides,
        })
    }

    fn omega_twist(s: &LocalSector, t: &LocalSector) -> i64 {
        if s.omega_side * t.omega_side == -1 {
            -1
        } else {
            1
        }
    }

    /// Number of boundary edges of a region (each edge borders a region
    /// from at most one side).
    fn boundary_edges(&self, pos: usize) -> usize {
        self.edge_sides
            .iter()
            .map(|(_, sides)| sides.iter().filter(|(p, _)| *p == pos).count())
            .sum()
    }
}

fn lambda_vertex(s: &LocalSector, t: &LocalSector) -> Rat {
    let a = SignVector::new(vec![s.pair.0, s.pair.1]).expect("valid sector signs");
    let b = SignVector::new(vec![t.pair.0, t.pair.1]).expect("valid sector signs");
    lambda_normal_crossing(2, &a, &b).expect("node parity holds")
}

/// The half-circle sector system at a smooth point of the branch locus.
fn edge_link_system() -> SectorSystem {
    SectorSystem::new(
        2,
        vec![
            ("s+".to_string(), 1, rat(1)),
            ("s-".to_string(), -1, rat(1)),
        ],
        vec![("s+".to_string(), "s-".to_string(), rat(2))],
    )
    .expect("edge link system is valid")
}

/// Theorem-2.5.1 route: integrate λ against χ_c over the strata of each
/// pairwise intersection; the diagonal adds the smooth-boundary terms.
pub fn phi_integral_route(a: &Arrangement) -> AResult<PhiResult> {
    let g = Geometry::build(a)?;
    let n = g.regions.len();
    let edge_sys = edge_link_system();
    let lam_edge_pm = lambda_opposite_sign_value(&edge_sys, "s+", "s-")
        .expect("edge link value");
    let mut gram = vec![vec![Rat::zero(); n]; n];
    for (_, per_region) in &g.sectors {
        for i in 0..n {
            if per_region[i].is_empty() {
                continue;
            }
            for j in i..n {
                if per_region[j].is_empty() {
                    continue;
                }
                let mut total = Rat::zero();
                for s in &per_region[i] {
                    for t in &per_region[j] {
                        total += lambda_vertex(s, t) * rat(Geometry::omega_twist(s, t));
                    }
                }
                // χ_c(vertex) = 1.
                gram[i][j] += total.clone();
                if i != j {
                    gram[j][i] += total;
                }
            }
        }
    }
    for (e, sides) in &g.edge_sides {
        let (pi, si) = sides[0];
        let (pj, _) = sides[1];
        if pi == pj {
            continue;
        }
        let (lo, lo_sign) = if pi < pj { (pi, si) } else { (pj, sides[1].1) };
        let hi = if pi < pj { pj } else { pi };
        let lam = if lo_sign > 0 {
            lam_edge_pm.clone()
        } else {
            -lam_edge_pm.clone()
        };
        let twist = match g.omega {
            Some(w) if g.complex.cells[*e].zeros[0] == w => rat(-1),
            _ => rat(1),
        };
        // χ_c(open edge) = −1.
        let contribution = lam * twist * rat(-1);
        gram[lo][hi] += contribution.clone();
        gram[hi][lo] += contribution;
    }
    for i in 0..n {
        // (−1)^{d(d−1)/2}(2χ_c(W∖RA) + χ_c((RA∩W̄)∖Sing)) at d = 2 with
        // disk regions and open boundary edges.
        let e_i = g.boundary_edges(i) as i64;
        gram[i][i] += rat(-2 + e_i);
    }
    PhiResult::assemble(g.labels.clone(), &g.signs, gram, g.omega, "integral")
}

/// Corollary-2.6.6 route: residue forms at the vertices plus the −2χ_c
/// diagonal term.
pub fn phi_residue_route(a: &Arrangement) -> AResult<PhiResult> {
    let g = Geometry::build(a)?;
    let n = g.regions.len();
    let sys = node_sector_system();
    let lam = lambda_on_sectors(&sys).map_err(|e| ArrangementError::Invalid(e.to_string()))?;
    let (node_q, _) =
        residue_form(&lam, &sys).map_err(|e| ArrangementError::Invalid(e.to_string()))?;
    let q_at = |s: &LocalSector, t: &LocalSector| -> Rat {
        let label = |p: (i8, i8)| {
            format!(
                "v{}{}",
                if p.0 > 0 { '+' } else { '-' },
                if p.1 > 0 { '+' } else { '-' }
            )
        };
        let i = sys.index(&label(s.pair)).expect("node sector");
        let j = sys.index(&label(t.pair)).expect("node sector");
        node_q.matrix[i][j].clone()
    };
    let mut gram = vec![vec![Rat::zero(); n]; n];
    for (_, per_region) in &g.sectors {
        for i in 0..n {
            if per_region[i].is_empty() {
                continue;
            }
            for j in i..n {
                if per_region[j].is_empty() {
                    continue;
                }
                let mut total = Rat::zero();
                for s in &per_region[i] {
                    for t in &per_region[j] {
                        total += q_at(s, t) * rat(Geometry::omega_twist(s, t));
                    }
                }
                gram[i][j] += total.clone();
                if i != j {
                    gram[j][i] += total;
                }
            }
        }
    }
    for i in 0..n {
        // −2χ_c(W_i∖RA) with disk regions.
        gram[i][i] += rat(-2);
    }
    PhiResult::assemble(g.labels.clone(), &g.signs, gram, g.omega, "residue")
}

/// Theorem-6.1.1 route: off-diagonal entries from face-count polynomials
/// of the shared components; the diagonal is delegated to the integral
/// route's smooth-boundary bookkeeping.
pub fn phi_face_route(a: &Arrangement) -> AResult<PhiResult> {
    let g = Geometry::build(a)?;
    let n = g.regions.len();
    let mut gram = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let comps = face_polynomial(&g.complex, i, j)?;
            let mut entry = Rat::zero();
            for (cells, f) in &comps {
                let s = f.dim();
                let shape_ok = match s {
                    0 => cells.len() == 1,
                    1 => {
                        cells.len() == 3
                            && cells.iter().filter(|&&c| g.complex.cells[c].dim == 1).count() == 1
                    }
                    _ => false,
                };
                if !shape_ok {
                    return Err(ArrangementError::NonPolyhedral(
                        g.labels[i].clone(),
                        g.labels[j].clone(),
                    ));
                }
                let sgn_ij = (g.signs[i] as i64 - g.signs[j] as i64) / 2;
                let num = (g.complex.d * g.complex.d) as i64 - s as i64 + sgn_ij;
                if num % 2 != 0 {
                    return Err(ArrangementError::ExponentParity(
                        g.labels[i].clone(),
                        g.labels[j].clone(),
                    ));
                }
                let parity = if (num / 2) % 2 == 0 { rat(1) } else { rat(-1) };
                let eps = component_omega_sign(&g, cells, i, j);
                entry += rat(eps)
                    * parity
                    * ratio(1, 1 << (g.complex.d - 1))
                    * rat(f.eval(-2));
            }
            gram[i][j] = entry.clone();
            gram[j][i] = entry;
        }
    }
    for i in 0..n {
        gram[i][i] = integral_diagonal(&g, i);
    }
    PhiResult::assemble(g.labels.clone(), &g.signs, gram, g.omega, "face")
}

/// ε(W_i, W_j | Ω): −1 when the component lies in Ω and Ω locally
/// separates the two regions.
fn component_omega_sign(g: &Geometry, cells: &[usize], i: usize, j: usize) -> i64 {
    let Some(w) = g.omega else { return 1 };
    let inside = cells
        .iter()
        .all(|&c| g.complex.cells[c].sign_vector[w] == 0);
    if !inside {
        return 1;
    }
    // All our components are a vertex or a closed edge on Ω; in both
    // cases the separation test reads off the vertex sector sides.
    for &c in cells {
        let cell = &g.complex.cells[c];
        if cell.dim == 1 {
            // Regions adjacent across an edge of Ω straddle it.
            return -1;
        }
        if let Some((_, per_region)) = g.sectors.iter().find(|(v, _)| *v == c) {
            let side = |pos: usize| per_region[pos].first().map(|s| s.omega_side).unwrap_or(0);
            if side(i) * side(j) == -1 {
                return -1;
            }
        }
    }
    1
}

fn integral_diagonal(g: &Geometry, i: usize) -> Rat {
    let mut total = Rat::zero();
    for (_, per_region) in &g.sectors {
        for s in &per_region[i] {
            for t in &per_region[i] {
                total += lambda_vertex(s, t) * rat(Geometry::omega_twist(s, t));
            }
        }
    }
    total + rat(-2 + g.boundary_edges(i) as i64)
}

/// Exact inertia of the sign-ε block predicted by the arrangement
/// equalities at d = 2, from m and χ(RX^ε).
pub fn predict_6_1_2(m: usize, chi_rx_eps: i64) -> AResult<Inertia> {
    if m < 2 || m % 2 != 0 {
        return Err(ArrangementError::OddCount(m));
    }
    let k = (m / 2) as i64;
    let b2_plus = (k - 1) * (k - 2) + 1;
    let b2_minus = 3 * k * (k - 1) + 1 - k * (2 * k - 1);
    let twice_sp = b2_plus - 1;
    let twice_sm = b2_minus + 1 + chi_rx_eps - 2;
    if twice_sp % 2 != 0 || twice_sm % 2 != 0 || twice_sp < 0 || twice_sm < 0 {
        return Err(ArrangementError::Invalid(format!(
            "inconsistent prediction inputs: m = {m}, χ(RX^ε) = {chi_rx_eps}"
        )));
    }
    let sigma0 = smith_bound_n(m, 2);
    Ok(Inertia::new(
        (twice_sp / 2) as usize,
        (twice_sm / 2) as usize,
        sigma0 as usize,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lines(rows: &[[i64; 3]]) -> Arrangement {
        Arrangement::new(
            2,
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn four_lines() -> Arrangement {
        lines(&[[1, 0, 0], [0, 1, 0], [1, 1, -1], [0, 0, 1]])
    }

    /// Tangent lines to a conic are pairwise non-parallel and never
    /// concurrent, so they give generic arrangements of any size.
    fn tangent_lines(m: usize) -> Arrangement {
        let rows: Vec<Vec<Rat>> = (1..=m as i64)
            .map(|t| vec![rat(2 * t), rat(-1), rat(-t * t)])
            .collect();
        Arrangement::new(2, rows).unwrap()
    }

    #[test]
    fn cell_census_small_arrangements() {
        let c = enumerate_cells(&four_lines()).unwrap();
        assert_eq!(c.cells_of_dim(0).len(), 6);
        assert_eq!(c.cells_of_dim(1).len(), 12);
        assert_eq!(c.region_indices().len(), 7);
        assert_eq!(c.euler_characteristic(), 1);
        let signs: Vec<i8> = c
            .region_indices()
            .iter()
            .map(|&r| c.cells()[r].product_sign())
            .collect();
        assert_eq!(signs.iter().filter(|&&s| s == 1).count(), 3);
        assert_eq!(signs.iter().filter(|&&s| s == -1).count(), 4);

        let two = lines(&[[1, 0, 0], [0, 1, 0]]);
        let c2 = enumerate_cells(&two).unwrap();
        assert_eq!(c2.cells_of_dim(0).len(), 1);
        assert_eq!(c2.cells_of_dim(1).len(), 2);
        assert_eq!(c2.region_indices().len(), 2);
        assert_eq!(c2.euler_characteristic(), 1);

        let pts = Arrangement::new(
            1,
            vec![
                vec![rat(1), rat(0)],
                vec![rat(0), rat(1)],
                vec![rat(1), rat(-1)],
                vec![rat(1), rat(1)],
            ],
        )
        .unwrap();
        let c1 = enumerate_cells(&pts).unwrap();
        assert_eq!(c1.cells_of_dim(0).len(), 4);
        assert_eq!(c1.region_indices().len(), 4);
        assert_eq!(c1.euler_characteristic(), 0);
    }

    #[test]
    fn genericity_violations_are_named() {
        let coincident = Arrangement::new(
            2,
            vec![
                vec![rat(1), rat(0), rat(0)],
                vec![rat(2), rat(0), rat(0)],
                vec![rat(0), rat(1), rat(0)],
                vec![rat(0), rat(0), rat(1)],
            ],
        );
        assert_eq!(coincident.unwrap_err(), ArrangementError::Coincident(1, 2));
        let concurrent = Arrangement::new(
            2,
            vec![
                vec![rat(1), rat(0), rat(0)],
                vec![rat(0), rat(1), rat(0)],
                vec![rat(1), rat(1), rat(0)],
                vec![rat(0), rat(0), rat(1)],
            ],
        );
        assert_eq!(
            concurrent.unwrap_err(),
            ArrangementError::Concurrent(1, 2, 3)
        );
        assert!(matches!(
            Arrangement::new(2, vec![vec![rat(1), rat(0), rat(0)]; 3]),
            Err(ArrangementError::OddCount(3))
        ));
        assert!(matches!(
            Arrangement::new(3, vec![vec![rat(1), rat(0), rat(0), rat(0)]; 4]),
            Err(ArrangementError::UnsupportedDimension(3))
        ));
    }

    #[test]
    fn face_polynomial_components() {
        let a = four_lines();
        let c = enumerate_cells(&a).unwrap();
        let regions = c.region_indices();
        let signs: Vec<i8> = regions.iter().map(|&r| c.cells()[r].product_sign()).collect();
        let plus: Vec<usize> = (0..regions.len()).filter(|&i| signs[i] == 1).collect();
        let minus: Vec<usize> = (0..regions.len()).filter(|&i| signs[i] == -1).collect();
        // Two quadrilaterals share two isolated vertices.
        let comps = face_polynomial(&c, plus[0], plus[1]).unwrap();
        assert_eq!(comps.len(), 2);
        for (_, f) in &comps {
            assert_eq!(f.coefficients(), &[1]);
            assert_eq!(f.eval(-2), 1);
        }
        // A triangle and a quadrilateral share one closed segment.
        let (ti, qi) = (minus[0], plus[0]);
        let comps = face_polynomial(&c, ti, qi)
            .into_iter()
            .flatten()
            .filter(|(_, f)| f.dim() == 1)
            .collect::<Vec<_>>();
        assert!(!comps.is_empty());
        for (_, f) in &comps {
            assert_eq!(f.coefficients(), &[2, 1]);
            assert_eq!(f.eval(-2), 0);
        }
        // A triangle's own closure: f(−2) = 3 − 6 + 4 = 1.
        let own = face_polynomial(&c, ti, ti).unwrap();
        assert_eq!(own.len(), 1);
        assert_eq!(own[0].1.coefficients(), &[3, 3, 1]);
        assert_eq!(own[0].1.eval(-2), 1);
    }

    #[test]
    fn face_polynomial_products_match_hand_counts() {
        let triangle = FacePolynomial::new(vec![3, 3, 1]).unwrap();
        let quad = FacePolynomial::new(vec![4, 4, 1]).unwrap();
        let segment = FacePolynomial::new(vec![2, 1]).unwrap();
        let prism = triangle.product(&segment);
        assert_eq!(prism.coefficients(), &[6, 9, 5, 1]);
        assert_eq!(prism.eval(-2), triangle.eval(-2) * segment.eval(-2));
        assert_eq!(prism.eval(-2), 0);
        let cube = quad.product(&segment);
        assert_eq!(cube.coefficients(), &[8, 12, 6, 1]);
        assert_eq!(cube.eval(-2), 0);
    }

    #[test]
    fn four_line_master_oracle_on_all_routes() {
        let a = four_lines();
        let face = phi_face_route(&a).unwrap();
        let integral = phi_integral_route(&a).unwrap();
        let residue = phi_residue_route(&a).unwrap();
        assert_eq!(face.form.gram(), integral.form.gram());
        assert_eq!(face.form.gram(), residue.form.gram());
        assert_eq!(face.omega, Some(3));

        // φ₊ vanishes identically on the three quadrilaterals.
        assert_eq!(integral.plus.dim(), 3);
        assert!(integral
            .plus
            .gram()
            .iter()
            .all(|row| row.iter().all(|x| x.is_zero())));
        // φ₋ = −½·u·uᵀ on the four triangles for a ±1-vector u.
        assert_eq!(integral.minus.dim(), 4);
        let g = integral.minus.gram();
        let u: Vec<Rat> = (0..4)
            .map(|j| {
                if j == 0 {
                    rat(1)
                } else {
                    g[0][j].clone() * rat(-2)
                }
            })
            .collect();
        for x in &u {
            assert!(*x == rat(1) || *x == rat(-1), "u must be a sign vector");
        }
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(g[i][j], ratio(-1, 2) * &u[i] * &u[j]);
            }
        }
        assert_eq!(integral.plus.inertia(), Inertia::new(0, 0, 3));
        assert_eq!(integral.minus.inertia(), Inertia::new(0, 1, 3));
    }

    #[test]
    fn two_lines_vanish_on_supported_routes() {
        let a = lines(&[[1, 0, 0], [0, 1, 0]]);
        for result in [phi_integral_route(&a).unwrap(), phi_residue_route(&a).unwrap()] {
            assert!(result
                .form
                .gram()
                .iter()
                .all(|row| row.iter().all(|x| x.is_zero())));
        }
        assert!(matches!(
            phi_face_route(&a),
            Err(ArrangementError::NonPolyhedral(_, _))
        ));
    }

    #[test]
    fn six_tangent_lines_agree_across_routes_and_match_predictions() {
        let a = tangent_lines(6);
        assert_eq!(a.omega_index(), None);
        let face = phi_face_route(&a).unwrap();
        let integral = phi_integral_route(&a).unwrap();
        let residue = phi_residue_route(&a).unwrap();
        assert_eq!(face.form.gram(), integral.form.gram());
        assert_eq!(face.form.gram(), residue.form.gram());
        let c = enumerate_cells(&a).unwrap();
        assert_eq!(c.region_indices().len(), 16);
        for (sign, block) in [(1i8, &face.plus), (-1i8, &face.minus)] {
            let predicted = predict_6_1_2(6, chi_rx_eps(&c, sign)).unwrap();
            assert_eq!(block.inertia(), predicted);
            assert_eq!(predicted.plus, 1);
            assert_eq!(predicted.zero, 5);
        }
    }

    #[test]
    fn predictions_and_smith_bounds() {
        let c = enumerate_cells(&four_lines()).unwrap();
        assert_eq!(
            predict_6_1_2(4, chi_rx_eps(&c, 1)).unwrap(),
            Inertia::new(0, 0, 3)
        );
        assert_eq!(
            predict_6_1_2(4, chi_rx_eps(&c, -1)).unwrap(),
            Inertia::new(0, 1, 3)
        );
        assert_eq!(smith_bound_n(4, 2), 3);
        assert_eq!(smith_bound_n(6, 2), 5);
        assert_eq!(smith_bound_n(8, 2), 7);
        // For d = 2 the Smith bound coincides with the σ₀ prediction.
        for m in [4usize, 6, 8] {
            assert_eq!(smith_bound_n(m, 2), (m - 1) as u64);
        }
        assert!(predict_6_1_2(5, 0).is_err());
    }

    #[test]
    fn arrangement_json_round_trip() {
        let a = four_lines();
        let b = Arrangement::from_json(&a.to_json()).unwrap();
        assert_eq!(a, b);
        let half = Arrangement::new(
            2,
            vec![
                vec![ratio(1, 2), rat(0), rat(0)],
                vec![rat(0), rat(1), rat(0)],
                vec![rat(1), rat(1), rat(-1)],
                vec![rat(0), rat(0), rat(1)],
            ],
        )
        .unwrap();
        let again = Arrangement::from_json(&half.to_json()).unwrap();
        assert_eq!(half, again);
    }
}
