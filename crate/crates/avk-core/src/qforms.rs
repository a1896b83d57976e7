//! Symmetric bilinear forms over Q with labeled bases.
//!
//! The congruence operations here (inertia, radical, restriction, orthogonal
//! complement, scaled tensor product, signed-permutation equivalence) are the
//! primitives every other module reduces to.

use num::{BigInt, BigRational, Signed, Zero};
use serde_json::{json, Value};
use std::fmt;

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for the rational n/d.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `p/q` in lowest terms (denominator always printed,
/// so output is uniform and reparses exactly).
pub fn rat_to_string(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn rat_from_str(s: &str) -> Result<Rat, FormError> {
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| FormError::BadRational(s.to_string()))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(FormError::BadRational(s.to_string()));
            }
            Ok(Rat::new(parse_int(p)?, den))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

pub fn rat_from_json(v: &Value) -> Result<Rat, FormError> {
    match v {
        Value::String(s) => rat_from_str(s),
        Value::Number(n) => n
            .as_i64()
            .map(rat)
            .ok_or_else(|| FormError::BadRational(n.to_string())),
        other => Err(FormError::BadRational(other.to_string())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("gram matrix is not square (row {0} has wrong length)")]
    NotSquare(usize),
    #[error("gram matrix is not symmetric at entry ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("cannot parse rational `{0}`")]
    BadRational(String),
    #[error("degenerate block on {{{labels}}}: radical witness ({witness})")]
    DegenerateBlock { labels: String, witness: String },
    #[error("{0}")]
    Invalid(String),
}

/// Signature of a rational quadratic form: (σ₊, σ₋, σ₀).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Inertia {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn new(plus: usize, minus: usize, zero: usize) -> Self {
        Inertia { plus, minus, zero }
    }

    pub fn dim(&self) -> usize {
        self.plus + self.minus + self.zero
    }

    pub fn add(&self, other: &Inertia) -> Inertia {
        Inertia::new(
            self.plus + other.plus,
            self.minus + other.minus,
            self.zero + other.zero,
        )
    }
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.plus, self.minus, self.zero)
    }
}

/// A symmetric bilinear form over Q with an ordered, labeled basis.
///
/// Immutable by convention: every operation returns a new form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricForm {
    basis: Vec<String>,
    gram: Vec<Vec<Rat>>,
}

impl SymmetricForm {
    pub fn new<S: Into<String>>(basis: Vec<S>, gram: Vec<Vec<Rat>>) -> Result<Self, FormError> {
        let basis: Vec<String> = basis.into_iter().map(Into::into).collect();
        let n = basis.len();
        if gram.len() != n {
            return Err(FormError::NotSquare(gram.len()));
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return Err(FormError::NotSquare(i));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if gram[i][j] != gram[j][i] {
                    return Err(FormError::NotSymmetric(i, j));
                }
            }
        }
        for (i, b) in basis.iter().enumerate() {
            if basis[..i].contains(b) {
                return Err(FormError::DuplicateLabel(b.clone()));
            }
        }
        Ok(SymmetricForm { basis, gram })
    }

    /// Builds a form from integer-pair entries, labeling the basis e1..en.
    pub fn from_rows(rows: &[&[(i64, i64)]]) -> Self {
        let n = rows.len();
        let basis: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
        let gram = rows
            .iter()
            .map(|r| r.iter().map(|&(p, q)| ratio(p, q)).collect())
            .collect();
        SymmetricForm::new(basis, gram).expect("literal form must be symmetric")
    }

    pub fn diagonal<S: Into<String>>(basis: Vec<S>, diag: Vec<Rat>) -> Self {
        let n = diag.len();
        let mut gram = vec![vec![Rat::zero(); n]; n];
        for (i, d) in diag.into_iter().enumerate() {
            gram[i][i] = d;
        }
        SymmetricForm::new(basis, gram).expect("diagonal form is symmetric")
    }

    pub fn zero_form(n: usize) -> Self {
        SymmetricForm::diagonal(
            (1..=n).map(|i| format!("e{i}")).collect::<Vec<_>>(),
            vec![Rat::zero(); n],
        )
    }

    pub fn empty() -> Self {
        SymmetricForm {
            basis: vec![],
            gram: vec![],
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn gram(&self) -> &[Vec<Rat>] {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.gram[i][j]
    }

    pub fn label_index(&self, label: &str) -> Result<usize, FormError> {
        self.basis
            .iter()
            .position(|b| b == label)
            .ok_or_else(|| FormError::UnknownLabel(label.to_string()))
    }

    /// Relabels the basis in place-order; lengths must match.
    pub fn with_basis<S: Into<String>>(&self, basis: Vec<S>) -> Result<Self, FormError> {
        SymmetricForm::new(basis, self.gram.clone())
    }

    pub fn direct_sum(&self, other: &SymmetricForm) -> Result<Self, FormError> {
        let n = self.dim();
        let m = other.dim();
        let mut basis = self.basis.clone();
        basis.extend(other.basis.iter().cloned());
        let mut gram = vec![vec![Rat::zero(); n + m]; n + m];
        for i in 0..n {
            gram[i][..n].clone_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            for j in 0..m {
                gram[n + i][n + j] = other.gram[i][j].clone();
            }
        }
        SymmetricForm::new(basis, gram)
    }

    /// Signature over Q by symmetric congruence reduction.
    ///
    /// Deterministic pivoting: at column k, use the diagonal entry if nonzero;
    /// otherwise swap in the first later index with a nonzero diagonal;
    /// otherwise (all remaining diagonal entries vanish) add the first row
    /// with a nonzero coupling into row/column k, which creates the pivot
    /// 2·g[k][j] ≠ 0.
    pub fn inertia(&self) -> Inertia {
        let n = self.dim();
        let mut m = self.gram.clone();
        let mut sig = Inertia::new(0, 0, 0);
        let mut k = 0;
        while k < n {
            if (k..n).all(|j| m[k][j].is_zero()) {
                sig.zero += 1;
                k += 1;
                continue;
            }
            if m[k][k].is_zero() {
                if let Some(j) = ((k + 1)..n).find(|&j| !m[j][j].is_zero()) {
                    m.swap(k, j);
                    for row in m.iter_mut() {
                        row.swap(k, j);
                    }
                } else {
                    let j = ((k + 1)..n)
                        .find(|&j| !m[k][j].is_zero())
                        .expect("nonzero row with zero diagonal has an off-diagonal entry");
                    for c in 0..n {
                        let add = m[j][c].clone();
                        m[k][c] += add;
                    }
                    for r in 0..n {
                        let add = m[r][j].clone();
                        m[r][k] += add;
                    }
                }
            }
            let pivot = m[k][k].clone();
            for i in (k + 1)..n {
                if m[i][k].is_zero() {
                    continue;
                }
                let t = &m[i][k] / &pivot;
                for c in k..n {
                    let sub = &t * &m[k][c];
                    m[i][c] -= sub;
                }
            }
            for j in (k + 1)..n {
                m[k][j] = Rat::zero();
            }
            if pivot.is_positive() {
                sig.plus += 1;
            } else {
                sig.minus += 1;
            }
            k += 1;
        }
        sig
    }

    /// Basis of the kernel of the Gram matrix, in original coordinates.
    /// Deterministic: reduced row echelon, one vector per free column.
    pub fn radical_basis(&self) -> Vec<Vec<Rat>> {
        let n = self.dim();
        let mut m = self.gram.clone();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(p) = (row..n).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            let inv = m[row][col].clone();
            for c in 0..n {
                m[row][c] = &m[row][c] / &inv;
            }
            for r in 0..n {
                if r != row && !m[r][col].is_zero() {
                    let t = m[r][col].clone();
                    for c in 0..n {
                        let sub = &t * &m[row][c];
                        m[r][c] -= sub;
                    }
                }
            }
            pivot_cols.push(col);
            row += 1;
            if row == n {
                break;
            }
        }
        let mut kernel = Vec::new();
        for free in 0..n {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); n];
            v[free] = rat(1);
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -m[r][free].clone();
            }
            // Normalize so the first nonzero coordinate is +1.
            let lead = v
                .iter()
                .find(|x| !x.is_zero())
                .expect("kernel vector is nonzero")
                .clone();
            for x in v.iter_mut() {
                *x = &*x / &lead;
            }
            kernel.push(v);
        }
        kernel
    }

    pub fn restrict(&self, labels: &[&str]) -> Result<SymmetricForm, FormError> {
        let mut idx = Vec::with_capacity(labels.len());
        for l in labels {
            idx.push(self.label_index(l)?);
        }
        idx.sort_unstable();
        Ok(self.restrict_indices(&idx))
    }

    /// Principal submatrix on the given (sorted or unsorted) index set,
    /// original basis order preserved.
    pub fn restrict_indices(&self, idx: &[usize]) -> SymmetricForm {
        let basis: Vec<String> = idx.iter().map(|&i| self.basis[i].clone()).collect();
        let gram: Vec<Vec<Rat>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.gram[i][j].clone()).collect())
            .collect();
        SymmetricForm { basis, gram }
    }

    /// The form induced on the orthogonal complement of span(e_labels):
    /// the Schur complement of the E-block, carried by the remaining labels.
    pub fn complement_form(&self, e_labels: &[&str]) -> Result<SymmetricForm, FormError> {
        let mut e_idx = Vec::with_capacity(e_labels.len());
        for l in e_labels {
            e_idx.push(self.label_index(l)?);
        }
        e_idx.sort_unstable();
        let f_idx: Vec<usize> = (0..self.dim()).filter(|i| !e_idx.contains(i)).collect();
        let e_block = self.restrict_indices(&e_idx);
        let radical = e_block.radical_basis();
        if let Some(w) = radical.first() {
            return Err(FormError::DegenerateBlock {
                labels: e_block.basis.join(","),
                witness: w.iter().map(rat_to_string).collect::<Vec<_>>().join(","),
            });
        }
        // Solve A·X = Bᵀ column by column, then form C − B·X.
        let ne = e_idx.len();
        let nf = f_idx.len();
        let mut aug: Vec<Vec<Rat>> = (0..ne)
            .map(|r| {
                let mut row: Vec<Rat> = e_idx
                    .iter()
                    .map(|&c| self.gram[e_idx[r]][c].clone())
                    .collect();
                row.extend(f_idx.iter().map(|&c| self.gram[e_idx[r]][c].clone()));
                row
            })
            .collect();
        for col in 0..ne {
            let p = (col..ne)
                .find(|&r| !aug[r][col].is_zero())
                .expect("E-block verified nondegenerate");
            aug.swap(col, p);
            let inv = aug[col][col].clone();
            for c in 0..(ne + nf) {
                aug[col][c] = &aug[col][c] / &inv;
            }
            for r in 0..ne {
                if r != col && !aug[r][col].is_zero() {
                    let t = aug[r][col].clone();
                    for c in 0..(ne + nf) {
                        let sub = &t * &aug[col][c];
                        aug[r][c] -= sub;
                    }
                }
            }
        }
        let basis: Vec<String> = f_idx.iter().map(|&i| self.basis[i].clone()).collect();
        let mut gram = vec![vec![Rat::zero(); nf]; nf];
        for (ri, &fi) in f_idx.iter().enumerate() {
            for (rj, &fj) in f_idx.iter().enumerate() {
                let mut acc = self.gram[fi][fj].clone();
                for (s, &es) in e_idx.iter().enumerate() {
                    let sub = &self.gram[fi][es] * &aug[s][ne + rj];
                    acc -= sub;
                }
                gram[ri][rj] = acc;
            }
        }
        SymmetricForm::new(basis, gram)
    }

    /// Kronecker product scaled by c; basis labels are `a⊗b` pairs.
    pub fn tensor_scaled(&self, other: &SymmetricForm, c: &Rat) -> SymmetricForm {
        let n = self.dim();
        let m = other.dim();
        let mut basis = Vec::with_capacity(n * m);
        for a in &self.basis {
            for b in &other.basis {
                basis.push(format!("{a}⊗{b}"));
            }
        }
        let mut gram = vec![vec![Rat::zero(); n * m]; n * m];
        for i in 0..n {
            for j in 0..n {
                for k in 0..m {
                    for l in 0..m {
                        gram[i * m + k][j * m + l] = c * &self.gram[i][j] * &other.gram[k][l];
                    }
                }
            }
        }
        SymmetricForm { basis, gram }
    }

    /// Searches for a signed permutation P with Pᵀ·self·P = other.
    /// Returns the witness as (image index, sign) per basis vector of `other`.
    pub fn signed_perm_congruent(&self, other: &SymmetricForm) -> Option<Vec<(usize, i8)>> {
        if self.dim() != other.dim() {
            return None;
        }
        let n = self.dim();
        let mut assign: Vec<(usize, i8)> = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn consistent(
            a: &SymmetricForm,
            b: &SymmetricForm,
            assign: &[(usize, i8)],
        ) -> bool {
            let i = assign.len() - 1;
            let (pi, si) = assign[i];
            for (j, &(pj, sj)) in assign.iter().enumerate() {
                let mut val = a.gram[pi][pj].clone();
                if si * sj < 0 {
                    val = -val;
                }
                if val != b.gram[i][j] {
                    return false;
                }
            }
            true
        }
        fn search(
            a: &SymmetricForm,
            b: &SymmetricForm,
            assign: &mut Vec<(usize, i8)>,
            used: &mut Vec<bool>,
        ) -> bool {
            let i = assign.len();
            if i == a.dim() {
                return true;
            }
            let signs: &[i8] = if i == 0 { &[1] } else { &[1, -1] };
            for cand in 0..a.dim() {
                if used[cand] || a.gram[cand][cand] != b.gram[i][i] {
                    continue;
                }
                for &s in signs {
                    assign.push((cand, s));
                    used[cand] = true;
                    if consistent(a, b, assign) && search(a, b, assign, used) {
                        return true;
                    }
                    used[cand] = false;
                    assign.pop();
                }
            }
            false
        }
        if search(self, other, &mut assign, &mut used) {
            Some(assign)
        } else {
            None
        }
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.inertia().zero == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": "avk-1",
            "basis": self.basis,
            "gram": self.gram.iter()
                .map(|row| row.iter().map(rat_to_string).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, FormError> {
        let basis: Vec<String> = v
            .get("basis")
            .and_then(Value::as_array)
            .ok_or_else(|| FormError::Invalid("missing `basis` array".into()))?
            .iter()
            .map(|b| {
                b.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| FormError::Invalid("basis labels must be strings".into()))
            })
            .collect::<Result<_, _>>()?;
        let gram_v = v
            .get("gram")
            .and_then(Value::as_array)
            .ok_or_else(|| FormError::Invalid("missing `gram` array".into()))?;
        let mut gram = Vec::with_capacity(gram_v.len());
        for row in gram_v {
            let row = row
                .as_array()
                .ok_or_else(|| FormError::Invalid("gram rows must be arrays".into()))?;
            gram.push(
                row.iter()
                    .map(rat_from_json)
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        SymmetricForm::new(basis, gram)
    }
}

impl fmt::Display for SymmetricForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim() == 0 {
            return write!(f, "(empty form)");
        }
        let width = self
            .gram
            .iter()
            .flatten()
            .map(|x| display_rat(x).len())
            .max()
            .unwrap_or(1);
        for (i, row) in self.gram.iter().enumerate() {
            write!(f, "{:>8}  [", self.basis[i])?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", display_rat(x))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Human-oriented rendering: integers without denominator, otherwise `p/q`.
pub fn display_rat(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inertia_of_definite_diagonal() {
        let f = SymmetricForm::diagonal(vec!["a", "b"], vec![rat(2), rat(-3)]);
        assert_eq!(f.inertia(), Inertia::new(1, 1, 0));
    }

    #[test]
    fn inertia_of_zero_form() {
        assert_eq!(SymmetricForm::zero_form(3).inertia(), Inertia::new(0, 0, 3));
    }

    #[test]
    fn inertia_of_rank_one_half_matrix() {
        let f = SymmetricForm::from_rows(&[&[(1, 2), (1, 2)], &[(1, 2), (1, 2)]]);
        assert_eq!(f.inertia(), Inertia::new(1, 0, 1));
    }

    #[test]
    fn inertia_hyperbolic_plane_needs_pivot_trick() {
        // Zero diagonal, coupling 1: signature (1,1,0).
        let f = SymmetricForm::from_rows(&[&[(0, 1), (1, 1)], &[(1, 1), (0, 1)]]);
        assert_eq!(f.inertia(), Inertia::new(1, 1, 0));
    }

    #[test]
    fn radical_of_rank_one_matrix() {
        let f = SymmetricForm::from_rows(&[&[(1, 2), (1, 2)], &[(1, 2), (1, 2)]]);
        assert_eq!(f.radical_basis(), vec![vec![rat(1), rat(-1)]]);
        let id = SymmetricForm::diagonal(vec!["a", "b"], vec![rat(1), rat(1)]);
        assert!(id.radical_basis().is_empty());
        assert_eq!(
            SymmetricForm::zero_form(1).radical_basis(),
            vec![vec![rat(1)]]
        );
    }

    #[test]
    fn restrict_keeps_order_and_rejects_unknown() {
        let f = SymmetricForm::diagonal(vec!["a", "b", "c"], vec![rat(1), rat(2), rat(3)]);
        let r = f.restrict(&["c", "a"]).unwrap();
        assert_eq!(r.basis(), &["a".to_string(), "c".to_string()]);
        assert_eq!(r.gram()[0][0], rat(1));
        assert_eq!(r.gram()[1][1], rat(3));
        assert!(f.restrict(&["d"]).is_err());
        assert_eq!(f.restrict(&[]).unwrap().dim(), 0);
    }

    #[test]
    fn schur_complement_examples() {
        let f = SymmetricForm::new(
            vec!["e", "w"],
            vec![vec![rat(2), rat(1)], vec![rat(1), rat(1)]],
        )
        .unwrap();
        let c = f.complement_form(&["e"]).unwrap();
        assert_eq!(c.gram()[0][0], ratio(1, 2));

        // Zero coupling leaves the remaining block unchanged.
        let g = SymmetricForm::diagonal(vec!["e", "w"], vec![rat(5), ratio(7, 3)]);
        let c = g.complement_form(&["e"]).unwrap();
        assert_eq!(c.gram()[0][0], ratio(7, 3));

        // Calibrated instance: [[-2,1/2],[1/2,1/2]] over the first label.
        let h = SymmetricForm::new(
            vec!["loop", "w_n"],
            vec![
                vec![rat(-2), ratio(1, 2)],
                vec![ratio(1, 2), ratio(1, 2)],
            ],
        )
        .unwrap();
        let c = h.complement_form(&["loop"]).unwrap();
        assert_eq!(c.gram()[0][0], ratio(5, 8));
    }

    #[test]
    fn schur_complement_rejects_degenerate_block() {
        let f = SymmetricForm::from_rows(&[&[(0, 1), (1, 1)], &[(1, 1), (1, 1)]]);
        let err = f.complement_form(&["e1"]).unwrap_err();
        match err {
            FormError::DegenerateBlock { labels, .. } => assert_eq!(labels, "e1"),
            other => panic!("expected degenerate block error, got {other}"),
        }
    }

    #[test]
    fn tensor_scaled_examples() {
        let one = SymmetricForm::diagonal(vec!["u"], vec![rat(1)]);
        let t = one.tensor_scaled(&one, &rat(1));
        assert_eq!(t.gram()[0][0], rat(1));
        assert_eq!(t.basis()[0], "u⊗u");

        let d = SymmetricForm::diagonal(vec!["a", "b"], vec![rat(1), rat(-1)]);
        let t = d.tensor_scaled(&one, &rat(-1));
        assert_eq!(t.gram()[0][0], rat(-1));
        assert_eq!(t.gram()[1][1], rat(1));
    }

    #[test]
    fn signed_perm_congruence_examples() {
        let a = SymmetricForm::from_rows(&[&[(1, 2), (1, 2)], &[(1, 2), (1, 2)]]);
        let b = SymmetricForm::from_rows(&[&[(1, 2), (-1, 2)], &[(-1, 2), (1, 2)]]);
        assert!(a.signed_perm_congruent(&b).is_some());

        let d12 = SymmetricForm::diagonal(vec!["a", "b"], vec![rat(1), rat(2)]);
        let d21 = SymmetricForm::diagonal(vec!["a", "b"], vec![rat(2), rat(1)]);
        assert!(d12.signed_perm_congruent(&d21).is_some());

        let dpp = SymmetricForm::diagonal(vec!["a", "b"], vec![rat(1), rat(1)]);
        let dpm = SymmetricForm::diagonal(vec!["a", "b"], vec![rat(1), rat(-1)]);
        assert!(dpp.signed_perm_congruent(&dpm).is_none());
    }

    #[test]
    fn json_round_trip() {
        let f = SymmetricForm::new(
            vec!["w1", "w2"],
            vec![
                vec![ratio(7, 2), ratio(3, 2)],
                vec![ratio(3, 2), ratio(3, 2)],
            ],
        )
        .unwrap();
        let v = f.to_json();
        assert_eq!(v["schema"], "avk-1");
        assert_eq!(v["gram"][0][0], "7/2");
        let g = SymmetricForm::from_json(&v).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn constructor_validates() {
        assert!(matches!(
            SymmetricForm::new(vec!["a", "a"], vec![vec![rat(0); 2]; 2]),
            Err(FormError::DuplicateLabel(_))
        ));
        assert!(matches!(
            SymmetricForm::new(
                vec!["a", "b"],
                vec![vec![rat(0), rat(1)], vec![rat(2), rat(0)]]
            ),
            Err(FormError::NotSymmetric(0, 1))
        ));
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-6i64..=6, 1i64..=4).prop_map(|(p, q)| ratio(p, q))
    }

    fn arb_form(max_dim: usize) -> impl Strategy<Value = SymmetricForm> {
        (1..=max_dim).prop_flat_map(|n| {
            proptest::collection::vec(arb_rat(), n * (n + 1) / 2).prop_map(move |vals| {
                let mut gram = vec![vec![Rat::zero(); n]; n];
                let mut it = vals.into_iter();
                for i in 0..n {
                    for j in i..n {
                        let v = it.next().unwrap();
                        gram[i][j] = v.clone();
                        gram[j][i] = v;
                    }
                }
                let basis: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
                SymmetricForm::new(basis, gram).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn inertia_invariant_under_signed_permutation(
            f in arb_form(5),
            seed in any::<u64>(),
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let n = f.dim();
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                let j = rng.gen_range(0..=i);
                perm.swap(i, j);
            }
            let signs: Vec<i64> = (0..n).map(|_| if rng.gen() { 1 } else { -1 }).collect();
            let mut gram = vec![vec![Rat::zero(); n]; n];
            for i in 0..n {
                for j in 0..n {
                    gram[i][j] = f.gram()[perm[i]][perm[j]].clone() * rat(signs[i] * signs[j]);
                }
            }
            let basis: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
            let g = SymmetricForm::new(basis, gram).unwrap();
            prop_assert_eq!(f.inertia(), g.inertia());
            prop_assert!(f.signed_perm_congruent(&g).is_some());
        }

        #[test]
        fn radical_length_matches_nullity(f in arb_form(5)) {
            prop_assert_eq!(f.radical_basis().len(), f.inertia().zero);
        }

        #[test]
        fn witt_additivity_of_complement(f in arb_form(5)) {
            let n = f.dim();
            let e_count = n / 2;
            let labels: Vec<String> = (0..e_count).map(|i| format!("e{i}")).collect();
            let e_refs: Vec<&str> = labels.iter().map(String::as_str).collect();
            let e_block = f.restrict(&e_refs).unwrap();
            if e_block.is_nondegenerate() {
                let comp = f.complement_form(&e_refs).unwrap();
                let sum = e_block.inertia().add(&comp.inertia());
                prop_assert_eq!(sum, f.inertia());
            }
        }

        #[test]
        fn direct_sum_inertia_adds(f in arb_form(4), g in arb_form(4)) {
            let g = g.with_basis(
                (0..g.dim()).map(|i| format!("f{i}")).collect::<Vec<_>>()
            ).unwrap();
            let s = f.direct_sum(&g).unwrap();
            prop_assert_eq!(s.inertia(), f.inertia().add(&g.inertia()));
        }
    }
}
