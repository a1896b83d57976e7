//! Local canonical forms at normal-crossing points, the sector Euler form
//! χₓ, the residue form q = λ − (−1)^{d(d−1)/2}·χₓ, and Ω-relative twists.
//!
//! Conventions. The complexified form λ_C lives on the ṽ-basis and is
//! evaluated directly from the closed formula
//!     λ_C(ṽ_a, ṽ_b) = (−1)^{d(d−1)/2} · 2^{1−d} · sign(b) · i^{d(a,b)},
//! where d(a,b) counts differing coordinates and sign(b) is the sign of the
//! product of b's entries (the sign of the defining germ on that sector).
//! Real v-basis values carry the twist ṽ = i·v on negative-region sectors:
//!     λ(v_a, v_b) = i^{[a⁻]+[b⁻]} · λ_C(ṽ_a, ṽ_b),
//! with [x⁻] = 1 iff x's region sign is negative. The resulting exponent of
//! i is always even (asserted at runtime), so λ is rational. This is the
//! unique reading under which opposite-sign values match
//! sign(v_i)·(−1)^n·½·χ(V_i∩V_j), cross-sign antisymmetry holds, and the
//! residue form splits into sign blocks; the alternative reading that leaves
//! the ṽ-twist out of cross-sign values breaks all three.

use crate::qforms::{rat, rat_from_str, rat_to_string, ratio, Rat, SymmetricForm};
use num::Zero;
use serde_json::Value;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocalFormError {
    #[error("sign vectors have lengths {0} and {1}, expected {2}")]
    LengthMismatch(usize, usize, usize),
    #[error("parity assertion failed: odd power of i ({0}) in a real value")]
    OddPower(i64),
    #[error("sector `{0}` unknown")]
    UnknownSector(String),
    #[error("expected opposite signs, got sign({0}) = sign({1})")]
    SameSign(String, String),
    #[error("not a QI^S-consistent input: residue entry ({0},{1}) = {2} across opposite signs must vanish")]
    CrossSignResidue(String, String, String),
    #[error("{0}")]
    Invalid(String),
}

/// Gaussian rational a + b·i; just enough arithmetic for λ_C.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat::new(Rat::zero(), Rat::zero())
    }

    pub fn from_rat(re: Rat) -> Self {
        GaussRat::new(re, Rat::zero())
    }

    /// i^k for any integer k ≥ 0.
    pub fn i_pow(k: usize) -> Self {
        match k % 4 {
            0 => GaussRat::new(rat(1), rat(0)),
            1 => GaussRat::new(rat(0), rat(1)),
            2 => GaussRat::new(rat(-1), rat(0)),
            _ => GaussRat::new(rat(0), rat(-1)),
        }
    }

    pub fn mul(&self, other: &GaussRat) -> GaussRat {
        GaussRat::new(
            &(&self.re * &other.re) - &(&self.im * &other.im),
            &(&self.re * &other.im) + &(&self.im * &other.re),
        )
    }

    pub fn scale(&self, c: &Rat) -> GaussRat {
        GaussRat::new(c * &self.re, c * &self.im)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", rat_to_string(&self.re)),
            (true, false) => write!(f, "{}i", rat_to_string(&self.im)),
            _ => write!(f, "{}+{}i", rat_to_string(&self.re), rat_to_string(&self.im)),
        }
    }
}

/// A sign vector (sector of a normal crossing), entries ±1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignVector(pub Vec<i8>);

impl SignVector {
    pub fn new(entries: Vec<i8>) -> Result<Self, LocalFormError> {
        if entries.is_empty() || entries.iter().any(|&e| e != 1 && e != -1) {
            return Err(LocalFormError::Invalid(
                "sign vector must be nonempty with entries ±1".into(),
            ));
        }
        Ok(SignVector(entries))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of −1 coordinates.
    pub fn negatives(&self) -> usize {
        self.0.iter().filter(|&&e| e < 0).count()
    }

    /// Sign of the product germ x₁·…·x_d on this sector.
    pub fn region_sign(&self) -> i8 {
        if self.negatives() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Number of coordinates where the two vectors differ.
    pub fn distance(&self, other: &SignVector) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .filter(|(a, b)| a != b)
            .count()
    }

    pub fn label(&self) -> String {
        let mut s = String::from("v");
        for &e in &self.0 {
            s.push(if e > 0 { '+' } else { '-' });
        }
        s
    }

    /// All 2^d sign vectors of length d in lexicographic order (+ before −).
    pub fn all(d: usize) -> Vec<SignVector> {
        let mut out = Vec::with_capacity(1 << d);
        for mask in 0..(1u32 << d) {
            let entries = (0..d)
                .map(|k| if mask & (1 << (d - 1 - k)) == 0 { 1 } else { -1 })
                .collect();
            out.push(SignVector(entries));
        }
        out
    }
}

fn prefactor(d: usize) -> Rat {
    let sign = if (d * (d.saturating_sub(1)) / 2) % 2 == 0 {
        rat(1)
    } else {
        rat(-1)
    };
    // 2^{1−d}
    let mut pow = rat(1);
    for _ in 1..d {
        pow = pow / rat(2);
    }
    sign * pow
}

/// λ_C(ṽ_a, ṽ_b) from the closed normal-crossing formula.
pub fn lambda_tilde(d: usize, a: &SignVector, b: &SignVector) -> Result<GaussRat, LocalFormError> {
    if a.len() != d || b.len() != d {
        return Err(LocalFormError::LengthMismatch(a.len(), b.len(), d));
    }
    let sign_b = rat(b.region_sign() as i64);
    let val = GaussRat::i_pow(a.distance(b)).scale(&(prefactor(d) * sign_b));
    Ok(val)
}

/// The real canonical value λ(v_a, v_b); the i-power parity is asserted.
pub fn lambda_normal_crossing(
    d: usize,
    a: &SignVector,
    b: &SignVector,
) -> Result<Rat, LocalFormError> {
    if a.len() != d || b.len() != d {
        return Err(LocalFormError::LengthMismatch(a.len(), b.len(), d));
    }
    let twist = (a.region_sign() < 0) as usize + (b.region_sign() < 0) as usize;
    let power = a.distance(b) + twist;
    if power % 2 != 0 {
        return Err(LocalFormError::OddPower(power as i64));
    }
    let tilde = lambda_tilde(d, a, b)?;
    let full = GaussRat::i_pow(twist).mul(&tilde);
    if !full.is_real() {
        return Err(LocalFormError::OddPower(power as i64));
    }
    Ok(full.re)
}

/// The d=1 seed pair: the v-basis matrix and its ṽ-basis self-adjoint
/// companion, on the sector basis (v₊, v₋).
pub fn lambda_identity_seed() -> (Vec<Vec<Rat>>, Vec<Vec<GaussRat>>) {
    let v = vec![vec![rat(1), rat(-1)], vec![rat(1), rat(1)]];
    let tilde = vec![
        vec![GaussRat::from_rat(rat(1)), GaussRat::new(rat(0), rat(-1))],
        vec![GaussRat::new(rat(0), rat(1)), GaussRat::from_rat(rat(-1))],
    ];
    (v, tilde)
}

/// λ-form over the full sector basis of a normal crossing, kept in the
/// ṽ-basis internally so that the product formula is a clean scaled tensor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaForm {
    d: usize,
    sectors: Vec<SignVector>,
    tilde: Vec<Vec<GaussRat>>,
}

impl LambdaForm {
    /// The d=1 seed evaluated from the closed formula.
    pub fn seed() -> LambdaForm {
        LambdaForm::normal_crossing(1).expect("d=1 evaluation cannot fail")
    }

    /// Direct evaluation at dimension d over all 2^d sectors.
    pub fn normal_crossing(d: usize) -> Result<LambdaForm, LocalFormError> {
        let sectors = SignVector::all(d);
        let mut tilde = Vec::with_capacity(sectors.len());
        for a in &sectors {
            let mut row = Vec::with_capacity(sectors.len());
            for b in &sectors {
                row.push(lambda_tilde(d, a, b)?);
            }
            tilde.push(row);
        }
        Ok(LambdaForm { d, sectors, tilde })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn sectors(&self) -> &[SignVector] {
        &self.sectors
    }

    /// Product formula: scaled tensor ½·(−1)^{pq} in the ṽ-basis, sectors
    /// concatenated.
    pub fn product(&self, other: &LambdaForm) -> LambdaForm {
        let p = self.d;
        let q = other.d;
        let c = if (p * q) % 2 == 0 {
            ratio(1, 2)
        } else {
            ratio(-1, 2)
        };
        let mut sectors = Vec::with_capacity(self.sectors.len() * other.sectors.len());
        for a in &self.sectors {
            for b in &other.sectors {
                let mut e = a.0.clone();
                e.extend_from_slice(&b.0);
                sectors.push(SignVector(e));
            }
        }
        let n = sectors.len();
        let mut tilde = vec![vec![GaussRat::zero(); n]; n];
        let m = other.sectors.len();
        for i in 0..self.sectors.len() {
            for j in 0..self.sectors.len() {
                for k in 0..m {
                    for l in 0..m {
                        tilde[i * m + k][j * m + l] =
                            self.tilde[i][j].mul(&other.tilde[k][l]).scale(&c);
                    }
                }
            }
        }
        LambdaForm {
            d: p + q,
            sectors,
            tilde,
        }
    }

    /// Real v-basis entry; twists by i per negative-region argument.
    pub fn v_value(&self, i: usize, j: usize) -> Result<Rat, LocalFormError> {
        let twist = (self.sectors[i].region_sign() < 0) as usize
            + (self.sectors[j].region_sign() < 0) as usize;
        let full = GaussRat::i_pow(twist).mul(&self.tilde[i][j]);
        if !full.is_real() {
            return Err(LocalFormError::OddPower((self.sectors[i].distance(&self.sectors[j]) + twist) as i64));
        }
        Ok(full.re)
    }

    pub fn v_matrix(&self) -> Result<Vec<Vec<Rat>>, LocalFormError> {
        let n = self.sectors.len();
        let mut out = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                out[i][j] = self.v_value(i, j)?;
            }
        }
        Ok(out)
    }
}

/// Local partition regions around a singular link: labels, signs, and the
/// Euler characteristics χ(V_i), χ(V_i ∩ V_j) of the closed sector pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorSystem {
    pub d: usize,
    labels: Vec<String>,
    signs: Vec<i8>,
    chi_self: Vec<Rat>,
    chi_pair: Vec<Vec<Rat>>,
}

impl SectorSystem {
    pub fn new(
        d: usize,
        sectors: Vec<(String, i8, Rat)>,
        chi_pair_entries: Vec<(String, String, Rat)>,
    ) -> Result<Self, LocalFormError> {
        let labels: Vec<String> = sectors.iter().map(|(l, _, _)| l.clone()).collect();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(LocalFormError::Invalid(format!("duplicate sector `{l}`")));
            }
        }
        let signs: Vec<i8> = sectors.iter().map(|(_, s, _)| *s).collect();
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(LocalFormError::Invalid("sector signs must be ±1".into()));
        }
        let chi_self: Vec<Rat> = sectors.into_iter().map(|(_, _, c)| c).collect();
        let n = labels.len();
        let mut chi_pair = vec![vec![Rat::zero(); n]; n];
        let index = |l: &str| {
            labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| LocalFormError::UnknownSector(l.to_string()))
        };
        for (a, b, v) in chi_pair_entries {
            let i = index(&a)?;
            let j = index(&b)?;
            if i == j {
                return Err(LocalFormError::Invalid(format!(
                    "chi_pair entry on the diagonal `{a}`"
                )));
            }
            chi_pair[i][j] = v.clone();
            chi_pair[j][i] = v;
        }
        Ok(SectorSystem {
            d,
            labels,
            signs,
            chi_self,
            chi_pair,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn sign(&self, i: usize) -> i8 {
        self.signs[i]
    }

    pub fn index(&self, label: &str) -> Result<usize, LocalFormError> {
        self.labels
            .iter()
            .position(|x| x == label)
            .ok_or_else(|| LocalFormError::UnknownSector(label.to_string()))
    }

    pub fn from_json(v: &Value) -> Result<Self, LocalFormError> {
        let bad = |m: &str| LocalFormError::Invalid(m.to_string());
        let d = v
            .get("d")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing `d`"))? as usize;
        let sectors_v = v
            .get("sectors")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing `sectors`"))?;
        let mut sectors = Vec::new();
        for s in sectors_v {
            let label = s
                .get("label")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("sector missing `label`"))?;
            let sign = match s.get("sign").and_then(Value::as_str) {
                Some("+") => 1,
                Some("-") => -1,
                _ => return Err(bad("sector sign must be \"+\" or \"-\"")),
            };
            let chi = rat_from_str(
                s.get("chi")
                    .and_then(Value::as_str)
                    .ok_or_else(|| bad("sector missing `chi`"))?,
            )
            .map_err(|e| bad(&e.to_string()))?;
            sectors.push((label.to_string(), sign, chi));
        }
        let mut pairs = Vec::new();
        if let Some(Value::Object(map)) = v.get("chi_pair") {
            for (key, val) in map {
                let (a, b) = key
                    .split_once(',')
                    .ok_or_else(|| bad("chi_pair keys are `a,b`"))?;
                let r = rat_from_str(
                    val.as_str().ok_or_else(|| bad("chi_pair values are strings"))?,
                )
                .map_err(|e| bad(&e.to_string()))?;
                pairs.push((a.to_string(), b.to_string(), r));
            }
        }
        SectorSystem::new(d, sectors, pairs)
    }

    pub fn to_json(&self) -> Value {
        let sectors: Vec<Value> = (0..self.len())
            .map(|i| {
                serde_json::json!({
                    "label": self.labels[i],
                    "sign": if self.signs[i] > 0 { "+" } else { "-" },
                    "chi": rat_to_string(&self.chi_self[i]),
                })
            })
            .collect();
        let mut pairs = serde_json::Map::new();
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                if !self.chi_pair[i][j].is_zero() {
                    pairs.insert(
                        format!("{},{}", self.labels[i], self.labels[j]),
                        Value::String(rat_to_string(&self.chi_pair[i][j])),
                    );
                }
            }
        }
        serde_json::json!({
            "schema": "avk-1",
            "d": self.d,
            "sectors": sectors,
            "chi_pair": pairs,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormKind {
    Lambda,
    LambdaBar,
    Chi,
    Q,
    QBar,
}

/// A local form over labeled sectors. λ and χₓ are not symmetric across
/// opposite signs, so the raw matrix is stored; `Q`-kind matrices are
/// symmetric and sign-block-diagonal by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalForm {
    pub kind: FormKind,
    pub ambient_d: usize,
    pub labels: Vec<String>,
    pub signs: Vec<i8>,
    pub matrix: Vec<Vec<Rat>>,
}

impl LocalForm {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Restriction to one sign block as a labeled symmetric form.
    pub fn sign_block(&self, sign: i8) -> Result<SymmetricForm, LocalFormError> {
        let idx: Vec<usize> = (0..self.dim()).filter(|&i| self.signs[i] == sign).collect();
        let basis: Vec<String> = idx.iter().map(|&i| self.labels[i].clone()).collect();
        let gram: Vec<Vec<Rat>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.matrix[i][j].clone()).collect())
            .collect();
        SymmetricForm::new(basis, gram).map_err(|e| LocalFormError::Invalid(e.to_string()))
    }
}

/// The sector Euler form: χ(V_i) on the diagonal, sign(v_i)·½·χ(V_i∩V_j)
/// off the diagonal.
pub fn chi_form(s: &SectorSystem) -> LocalForm {
    let n = s.len();
    let mut matrix = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            matrix[i][j] = if i == j {
                s.chi_self[i].clone()
            } else {
                rat(s.signs[i] as i64) * ratio(1, 2) * s.chi_pair[i][j].clone()
            };
        }
    }
    LocalForm {
        kind: FormKind::Chi,
        ambient_d: s.d,
        labels: s.labels.clone(),
        signs: s.signs.clone(),
        matrix,
    }
}

/// The canonical λ-form of a normal crossing presented on a SectorSystem
/// whose labels are sign-vector labels (`v+-` style).
pub fn lambda_on_sectors(s: &SectorSystem) -> Result<LocalForm, LocalFormError> {
    let d = s.d;
    let mut vectors = Vec::with_capacity(s.len());
    for l in s.labels() {
        let body = l
            .strip_prefix('v')
            .ok_or_else(|| LocalFormError::UnknownSector(l.clone()))?;
        let entries: Vec<i8> = body
            .chars()
            .map(|c| if c == '+' { 1 } else { -1 })
            .collect();
        vectors.push(SignVector::new(entries)?);
    }
    let n = s.len();
    let mut matrix = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            matrix[i][j] = lambda_normal_crossing(d, &vectors[i], &vectors[j])?;
        }
    }
    Ok(LocalForm {
        kind: FormKind::Lambda,
        ambient_d: d,
        labels: s.labels().to_vec(),
        signs: (0..n).map(|i| s.sign(i)).collect(),
        matrix,
    })
}

/// Residue form q = λ − (−1)^{d(d−1)/2}·χₓ (so q = λ + χₓ at d = 2), with
/// the Prop-2.6.8 block structure enforced; also returns q̄ = 2·q₊ for
/// even d.
pub fn residue_form(
    lam: &LocalForm,
    s: &SectorSystem,
) -> Result<(LocalForm, Option<SymmetricForm>), LocalFormError> {
    if lam.labels != *s.labels() || lam.ambient_d != s.d {
        return Err(LocalFormError::Invalid(
            "λ and sector system must share basis and ambient dimension".into(),
        ));
    }
    let chi = chi_form(s);
    let n = s.len();
    let flip = (s.d * (s.d.saturating_sub(1)) / 2) % 2 == 1;
    let mut matrix = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            matrix[i][j] = if flip {
                &lam.matrix[i][j] + &chi.matrix[i][j]
            } else {
                &lam.matrix[i][j] - &chi.matrix[i][j]
            };
        }
    }
    for i in 0..n {
        for j in 0..n {
            if s.sign(i) != s.sign(j) && !matrix[i][j].is_zero() {
                return Err(LocalFormError::CrossSignResidue(
                    s.labels()[i].clone(),
                    s.labels()[j].clone(),
                    rat_to_string(&matrix[i][j]),
                ));
            }
            if matrix[i][j] != matrix[j][i] {
                return Err(LocalFormError::Invalid(format!(
                    "residue matrix not symmetric at ({},{})",
                    s.labels()[i],
                    s.labels()[j]
                )));
            }
        }
    }
    let q = LocalForm {
        kind: FormKind::Q,
        ambient_d: s.d,
        labels: s.labels().to_vec(),
        signs: (0..n).map(|i| s.sign(i)).collect(),
        matrix,
    };
    let q_bar = if s.d % 2 == 0 {
        let plus = q.sign_block(1)?;
        let doubled: Vec<Vec<Rat>> = plus
            .gram()
            .iter()
            .map(|row| row.iter().map(|x| x * rat(2)).collect())
            .collect();
        Some(
            SymmetricForm::new(plus.basis().to_vec(), doubled)
                .map_err(|e| LocalFormError::Invalid(e.to_string()))?,
        )
    } else {
        None
    };
    Ok((q, q_bar))
}

/// Ω-relative twist: entries negated when the two sectors lie on opposite
/// sides of Ω; the diagonal never changes.
pub fn relative_twist(
    f: &LocalForm,
    sides: &BTreeMap<String, u8>,
) -> Result<LocalForm, LocalFormError> {
    let mut side = Vec::with_capacity(f.dim());
    for l in &f.labels {
        side.push(
            *sides
                .get(l)
                .ok_or_else(|| LocalFormError::UnknownSector(l.clone()))?,
        );
    }
    let mut out = f.clone();
    for i in 0..f.dim() {
        for j in 0..f.dim() {
            if side[i] != side[j] {
                out.matrix[i][j] = -out.matrix[i][j].clone();
            }
        }
    }
    Ok(out)
}

/// The opposite-sign canonical value sign(v_i)·(−1)^n·½·χ(V_i∩V_j), with
/// n = ⌊d/2⌋ (the calibration that matches the normal-crossing values at
/// d = 2).
pub fn lambda_opposite_sign_value(
    s: &SectorSystem,
    i_label: &str,
    j_label: &str,
) -> Result<Rat, LocalFormError> {
    let i = s.index(i_label)?;
    let j = s.index(j_label)?;
    if s.sign(i) == s.sign(j) {
        return Err(LocalFormError::SameSign(
            i_label.to_string(),
            j_label.to_string(),
        ));
    }
    let n = s.d / 2;
    let parity = if n % 2 == 0 { rat(1) } else { rat(-1) };
    Ok(rat(s.sign(i) as i64) * parity * ratio(1, 2) * s.chi_pair[i][j].clone())
}

/// The node sector system at d=2: four closed quadrant arcs on the link
/// circle; adjacent arcs share one point, antipodal arcs are disjoint.
pub fn node_sector_system() -> SectorSystem {
    let sectors = SignVector::all(2);
    let list: Vec<(String, i8, Rat)> = sectors
        .iter()
        .map(|v| (v.label(), v.region_sign(), rat(1)))
        .collect();
    let mut pairs = Vec::new();
    for (i, a) in sectors.iter().enumerate() {
        for (j, b) in sectors.iter().enumerate() {
            if i < j && a.distance(b) == 1 {
                pairs.push((a.label(), b.label(), rat(1)));
            }
        }
    }
    SectorSystem::new(2, list, pairs).expect("node system is valid")
}
