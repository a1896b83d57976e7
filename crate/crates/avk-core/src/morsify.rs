//! Morsification diagrams for real plane-curve germs: the combinatorics of
//! an A'Campo–Gusein-Zade divide inside the Milnor disc, the associated
//! bilinear form qᵗ on regions, and the boundary residue form obtained by
//! contracting the inner regions.
//!
//! A diagram records, for each region of the divide's complement in the
//! disc, its sign, and χ_c of its closure with the boundary circle removed
//! (so an inner disc region counts 1, an outer region touching the circle
//! counts −#pinches, a pinched inner region 1−#pinches).  Saddle counts are
//! kept for distinct-region pairs; self-tangencies (a region pinching at a
//! saddle) are visible only through χ and the same-sign boundary counts,
//! which is why the latter stay explicit in the input.

use crate::qforms::{rat, rat_to_string, ratio, Rat, SymmetricForm};
use num::Zero;
use once_cell::sync::Lazy;
use serde_json::Value;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MorsifyError {
    #[error("duplicate region label `{0}`")]
    DuplicateRegion(String),
    #[error("unknown region label `{0}`")]
    UnknownRegion(String),
    #[error("saddle count between `{0}` and `{1}` pairs regions of opposite sign")]
    CrossSignSaddle(String, String),
    #[error("a diagram with rho = {0} must have {1} outer regions, found {2}")]
    OuterCount(usize, usize, usize),
    #[error("essential singularity (not QI^S)")]
    Essential,
    #[error("q̄-residue undefined: positive inner block degenerate (not QĪ^S)")]
    EssentialBar,
    #[error("Milnor number {mu} with rho = {rho} gives a non-integral saddle count")]
    SaddleParity { mu: usize, rho: usize },
    #[error("expected {expected} inner regions for mu = {mu}, rho = {rho}, found {found}")]
    InnerCount {
        mu: usize,
        rho: usize,
        expected: usize,
        found: usize,
    },
    #[error("same_sign_boundary[{0}] = {1} but the saddle map gives {2}")]
    BoundaryCount(String, u32, u32),
    #[error("Euler count off: Σχ + pinches = {0}, expected 1 − rho + saddles = {1}")]
    EulerCount(String, String),
    #[error("negative pinch count at saddle bookkeeping: {0}")]
    PinchCount(String),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgRegion {
    pub label: String,
    pub sign: i8,
    pub chi_minus_rs: Rat,
}

impl AgRegion {
    pub fn new(label: &str, sign: i8, chi_minus_rs: Rat) -> Self {
        AgRegion {
            label: label.to_string(),
            sign,
            chi_minus_rs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgDiagram {
    pub rho: usize,
    inner: Vec<AgRegion>,
    outer: Vec<AgRegion>,
    saddles: BTreeMap<(String, String), u32>,
    same_sign_boundary: BTreeMap<String, u32>,
}

fn pair_key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// Boundary residue of a diagram: the outer-region form after contracting
/// the inner block, split by sign, with the doubled positive block q̄.
#[derive(Debug, Clone)]
pub struct ResidueOutput {
    pub q: SymmetricForm,
    pub q_plus: SymmetricForm,
    pub q_minus: SymmetricForm,
    pub q_bar: SymmetricForm,
}

impl AgDiagram {
    pub fn new(
        rho: usize,
        inner: Vec<AgRegion>,
        outer: Vec<AgRegion>,
        saddles: Vec<(&str, &str, u32)>,
        same_sign_boundary: Vec<(&str, u32)>,
    ) -> Result<Self, MorsifyError> {
        let mut labels: Vec<&str> = Vec::new();
        for r in inner.iter().chain(outer.iter()) {
            if r.sign != 1 && r.sign != -1 {
                return Err(MorsifyError::Invalid(format!(
                    "region `{}` must have sign ±1",
                    r.label
                )));
            }
            if labels.contains(&r.label.as_str()) {
                return Err(MorsifyError::DuplicateRegion(r.label.clone()));
            }
            labels.push(&r.label);
        }
        let expected_outer = if rho == 0 { 1 } else { 2 * rho };
        if outer.len() != expected_outer {
            return Err(MorsifyError::OuterCount(rho, expected_outer, outer.len()));
        }
        let sign_of = |l: &str| -> Result<i8, MorsifyError> {
            inner
                .iter()
                .chain(outer.iter())
                .find(|r| r.label == l)
                .map(|r| r.sign)
                .ok_or_else(|| MorsifyError::UnknownRegion(l.to_string()))
        };
        let mut smap = BTreeMap::new();
        for (a, b, n) in saddles {
            if a == b {
                return Err(MorsifyError::Invalid(format!(
                    "saddle map keys pair distinct regions; got `{a}` twice \
                     (self-tangencies enter through chi_minus_RS)"
                )));
            }
            if sign_of(a)? != sign_of(b)? {
                return Err(MorsifyError::CrossSignSaddle(a.to_string(), b.to_string()));
            }
            if n > 0 {
                *smap.entry(pair_key(a, b)).or_insert(0) += n;
            }
        }
        let mut bmap = BTreeMap::new();
        for (l, n) in same_sign_boundary {
            sign_of(l)?;
            bmap.insert(l.to_string(), n);
        }
        for r in inner.iter().chain(outer.iter()) {
            bmap.entry(r.label.clone()).or_insert(0);
        }
        Ok(AgDiagram {
            rho,
            inner,
            outer,
            saddles: smap,
            same_sign_boundary: bmap,
        })
    }

    pub fn inner(&self) -> &[AgRegion] {
        &self.inner
    }

    pub fn outer(&self) -> &[AgRegion] {
        &self.outer
    }

    pub fn regions(&self) -> impl Iterator<Item = &AgRegion> {
        self.inner.iter().chain(self.outer.iter())
    }

    pub fn saddle_count(&self, a: &str, b: &str) -> u32 {
        *self.saddles.get(&pair_key(a, b)).unwrap_or(&0)
    }

    pub fn boundary_count(&self, l: &str) -> u32 {
        *self.same_sign_boundary.get(l).unwrap_or(&0)
    }

    /// Flip every region sign (the diagram of the negated germ).
    pub fn negate(&self) -> AgDiagram {
        let flip = |r: &AgRegion| AgRegion {
            label: r.label.clone(),
            sign: -r.sign,
            chi_minus_rs: r.chi_minus_rs.clone(),
        };
        AgDiagram {
            rho: self.rho,
            inner: self.inner.iter().map(flip).collect(),
            outer: self.outer.iter().map(flip).collect(),
            saddles: self.saddles.clone(),
            same_sign_boundary: self.same_sign_boundary.clone(),
        }
    }

    /// qᵗ over all regions, inner first:
    /// zero across signs, ½·saddles on same-sign off-diagonal entries, and
    /// ½·boundary_count − 2·χ_minus_RS on the diagonal.
    pub fn build_qtau(&self) -> SymmetricForm {
        let regions: Vec<&AgRegion> = self.regions().collect();
        let n = regions.len();
        let mut gram = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = if i == j {
                    ratio(self.boundary_count(&regions[i].label) as i64, 2)
                        - rat(2) * regions[i].chi_minus_rs.clone()
                } else if regions[i].sign == regions[j].sign {
                    ratio(
                        self.saddle_count(&regions[i].label, &regions[j].label) as i64,
                        2,
                    )
                } else {
                    Rat::zero()
                };
            }
        }
        let basis = regions.iter().map(|r| r.label.clone()).collect();
        SymmetricForm::new(basis, gram).expect("qtau construction is symmetric")
    }

    fn inner_labels(&self) -> Vec<&str> {
        self.inner.iter().map(|r| r.label.as_str()).collect()
    }

    /// QI^S: qᵗ restricted to the inner regions is nondegenerate.
    pub fn is_qis(&self) -> bool {
        if self.inner.is_empty() {
            return true;
        }
        self.build_qtau()
            .restrict(&self.inner_labels())
            .map(|f| f.is_nondegenerate())
            .unwrap_or(false)
    }

    /// QĪ^S: qᵗ restricted to the positive inner regions is nondegenerate.
    pub fn is_qbaris(&self) -> bool {
        let pos: Vec<&str> = self
            .inner
            .iter()
            .filter(|r| r.sign == 1)
            .map(|r| r.label.as_str())
            .collect();
        if pos.is_empty() {
            return true;
        }
        self.build_qtau()
            .restrict(&pos)
            .map(|f| f.is_nondegenerate())
            .unwrap_or(false)
    }

    /// Contract the inner regions out of qᵗ and split the outer form by
    /// sign. q̄ doubles the positive block (the even-dimension identity
    /// q̄ = 2·q₊).
    pub fn boundary_residue(&self) -> Result<ResidueOutput, MorsifyError> {
        let qtau = self.build_qtau();
        let q = if self.inner.is_empty() {
            qtau
        } else {
            qtau.complement_form(&self.inner_labels())
                .map_err(|_| MorsifyError::Essential)?
        };
        let pick = |sign: i8| -> Vec<&str> {
            self.outer
                .iter()
                .filter(|r| r.sign == sign)
                .map(|r| r.label.as_str())
                .collect()
        };
        let q_plus = q
            .restrict(&pick(1))
            .map_err(|e| MorsifyError::Invalid(e.to_string()))?;
        let q_minus = q
            .restrict(&pick(-1))
            .map_err(|e| MorsifyError::Invalid(e.to_string()))?;
        // Cross-sign entries of q vanish: the inner contraction only mixes
        // within a sign because qᵗ itself is block diagonal.
        for (i, a) in q.basis().iter().enumerate() {
            for (j, b) in q.basis().iter().enumerate() {
                let sa = self.outer.iter().find(|r| &r.label == a).map(|r| r.sign);
                let sb = self.outer.iter().find(|r| &r.label == b).map(|r| r.sign);
                if sa != sb && !q.gram()[i][j].is_zero() {
                    return Err(MorsifyError::Invalid(format!(
                        "residue mixes signs at ({a},{b})"
                    )));
                }
            }
        }
        let doubled: Vec<Vec<Rat>> = q_plus
            .gram()
            .iter()
            .map(|row| row.iter().map(|x| x * rat(2)).collect())
            .collect();
        let q_bar = SymmetricForm::new(q_plus.basis().to_vec(), doubled)
            .map_err(|e| MorsifyError::Invalid(e.to_string()))?;
        if !self.is_qbaris() {
            return Err(MorsifyError::EssentialBar);
        }
        Ok(ResidueOutput {
            q,
            q_plus,
            q_minus,
            q_bar,
        })
    }

    /// Structural validation against the germ's Milnor number:
    /// saddles S = ½(μ + ρ − 1), inner count S − ρ + 1, boundary counts
    /// derived from the saddle map, and the Euler identity
    /// Σχ_minus_RS + self-pinches = 1 − ρ + S with
    /// self-pinches = 2S − Σ saddle pairs.
    pub fn validate(&self, mu: usize) -> Result<(), MorsifyError> {
        if (mu + self.rho).wrapping_sub(1) % 2 != 0 {
            return Err(MorsifyError::SaddleParity { mu, rho: self.rho });
        }
        let s = (mu + self.rho - 1) / 2;
        let expected_inner = s + 1 - self.rho;
        if self.inner.len() != expected_inner {
            return Err(MorsifyError::InnerCount {
                mu,
                rho: self.rho,
                expected: expected_inner,
                found: self.inner.len(),
            });
        }
        for r in self.regions() {
            let derived: u32 = self
                .regions()
                .filter(|o| o.label != r.label && o.sign == r.sign)
                .map(|o| self.saddle_count(&r.label, &o.label))
                .sum();
            let declared = self.boundary_count(&r.label);
            if declared != derived {
                return Err(MorsifyError::BoundaryCount(
                    r.label.clone(),
                    declared,
                    derived,
                ));
            }
        }
        let pair_total: u32 = self.saddles.values().sum();
        if pair_total > 2 * s as u32 {
            return Err(MorsifyError::PinchCount(format!(
                "{pair_total} saddle pairs exceed 2·S = {}",
                2 * s
            )));
        }
        let pinches = 2 * s as u32 - pair_total;
        let chi_sum: Rat = self
            .regions()
            .map(|r| r.chi_minus_rs.clone())
            .fold(Rat::zero(), |a, b| a + b);
        let lhs = chi_sum + rat(pinches as i64);
        let rhs = rat(1 - self.rho as i64 + s as i64);
        if lhs != rhs {
            return Err(MorsifyError::EulerCount(
                rat_to_string(&lhs),
                rat_to_string(&rhs),
            ));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let region_json = |r: &AgRegion| {
            serde_json::json!({
                "label": r.label,
                "sign": if r.sign > 0 { "+" } else { "-" },
                "chi_minus_RS": rat_to_string(&r.chi_minus_rs),
            })
        };
        let mut saddles = serde_json::Map::new();
        for ((a, b), n) in &self.saddles {
            saddles.insert(format!("{a},{b}"), Value::from(*n));
        }
        let mut boundary = serde_json::Map::new();
        for (l, n) in &self.same_sign_boundary {
            boundary.insert(l.clone(), Value::from(*n));
        }
        serde_json::json!({
            "schema": "avk-1",
            "rho": self.rho,
            "inner": self.inner.iter().map(region_json).collect::<Vec<_>>(),
            "outer": self.outer.iter().map(region_json).collect::<Vec<_>>(),
            "saddles": saddles,
            "same_sign_boundary": boundary,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, MorsifyError> {
        let bad = |m: String| MorsifyError::Invalid(m);
        let rho = v
            .get("rho")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing `rho`".into()))? as usize;
        let parse_regions = |key: &str| -> Result<Vec<AgRegion>, MorsifyError> {
            let arr = v
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| bad(format!("missing `{key}`")))?;
            arr.iter()
                .map(|r| {
                    let label = r
                        .get("label")
                        .and_then(Value::as_str)
                        .ok_or_else(|| bad("region missing `label`".into()))?;
                    let sign = match r.get("sign").and_then(Value::as_str) {
                        Some("+") => 1,
                        Some("-") => -1,
                        _ => return Err(bad("region sign must be \"+\" or \"-\"".into())),
                    };
                    let chi = crate::qforms::rat_from_str(
                        r.get("chi_minus_RS")
                            .and_then(Value::as_str)
                            .ok_or_else(|| bad("region missing `chi_minus_RS`".into()))?,
                    )
                    .map_err(|e| bad(e.to_string()))?;
                    Ok(AgRegion::new(label, sign, chi))
                })
                .collect()
        };
        let inner = parse_regions("inner")?;
        let outer = parse_regions("outer")?;
        let mut saddles = Vec::new();
        if let Some(Value::Object(map)) = v.get("saddles") {
            for (k, val) in map {
                let (a, b) = k
                    .split_once(',')
                    .ok_or_else(|| bad("saddle keys are `a,b`".into()))?;
                let n = val
                    .as_u64()
                    .ok_or_else(|| bad("saddle counts are integers".into()))?;
                saddles.push((a.to_string(), b.to_string(), n as u32));
            }
        }
        let mut boundary = Vec::new();
        if let Some(Value::Object(map)) = v.get("same_sign_boundary") {
            for (k, val) in map {
                let n = val
                    .as_u64()
                    .ok_or_else(|| bad("boundary counts are integers".into()))?;
                boundary.push((k.clone(), n as u32));
            }
        }
        let saddle_refs: Vec<(&str, &str, u32)> = saddles
            .iter()
            .map(|(a, b, n)| (a.as_str(), b.as_str(), *n))
            .collect();
        let boundary_refs: Vec<(&str, u32)> =
            boundary.iter().map(|(l, n)| (l.as_str(), *n)).collect();
        AgDiagram::new(rho, inner, outer, saddle_refs, boundary_refs)
    }
}

/// Which sign block the published table matrix refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    Plus,
    Minus,
}

/// A catalog entry: the diagram of a specific real germ together with its
/// numerical invariants and the expected boundary residue block.
#[derive(Debug, Clone)]
pub struct SingularityDescriptor {
    pub name: &'static str,
    pub germ: &'static str,
    pub diagram: AgDiagram,
    pub expected_m: SymmetricForm,
    pub expected_block: Block,
    pub mu: usize,
    pub rho: usize,
    pub branches: usize,
    pub real_branches: usize,
    pub delta: usize,
    /// Inertia of the Milnor form of the suspended germ; the simple
    /// singularities all carry negative-definite lattices.
    pub mu_plus: usize,
    pub mu_minus: usize,
    pub mu_zero: usize,
    pub notes: &'static str,
}

fn braid(n: usize, flip: bool) -> AgDiagram {
    // The divide of x^{2n} − y²: two strands crossing n times. Lenses sit
    // between consecutive crossings (sign +), caps close the two ends
    // (sign +), and the top/bottom regions (sign −) meet at every crossing.
    let mut inner = Vec::new();
    for i in 1..n {
        inner.push(AgRegion::new(&format!("L{i}"), 1, rat(1)));
    }
    let outer = vec![
        AgRegion::new("Cl", 1, rat(0)),
        AgRegion::new("Cr", 1, rat(0)),
        AgRegion::new("T", -1, rat(0)),
        AgRegion::new("B", -1, rat(0)),
    ];
    let mut saddles: Vec<(String, String, u32)> = vec![("T".into(), "B".into(), n as u32)];
    if n == 1 {
        saddles.push(("Cl".into(), "Cr".into(), 1));
    } else {
        saddles.push(("Cl".into(), "L1".into(), 1));
        saddles.push(("Cr".into(), format!("L{}", n - 1), 1));
        for i in 1..(n - 1) {
            saddles.push((format!("L{i}"), format!("L{}", i + 1), 1));
        }
    }
    finish(2, inner, outer, saddles, flip)
}

fn dot_chain(n: usize, flip: bool) -> AgDiagram {
    // The divide of x^{2n} + y²: a chain of n loops, no boundary branches.
    let inner: Vec<AgRegion> = (1..=n)
        .map(|i| AgRegion::new(&format!("I{i}"), -1, rat(1)))
        .collect();
    let outer = vec![AgRegion::new("w0", 1, rat(1 - n as i64))];
    let saddles: Vec<(String, String, u32)> = (1..n)
        .map(|i| (format!("I{i}"), format!("I{}", i + 1), 1))
        .collect();
    finish(0, inner, outer, saddles, flip)
}

fn alpha(flip: bool) -> AgDiagram {
    // The α-curve divide of the cusp: one loop, one branch, one crossing
    // pinching the positive outer region.
    let inner = vec![AgRegion::new("loop", -1, rat(1))];
    let outer = vec![
        AgRegion::new("w_n", -1, rat(0)),
        AgRegion::new("w_p", 1, rat(-1)),
    ];
    let saddles = vec![("loop".to_string(), "w_n".to_string(), 1)];
    finish(1, inner, outer, saddles, flip)
}

fn double_alpha(flip: bool) -> AgDiagram {
    // The double-α divide of x⁵ − y²-type germs: two loops, the positive
    // outer region pinched at both crossings.
    let inner = vec![
        AgRegion::new("M", -1, rat(1)),
        AgRegion::new("R", -1, rat(1)),
    ];
    let outer = vec![
        AgRegion::new("Cl", -1, rat(0)),
        AgRegion::new("O", 1, rat(-2)),
    ];
    let saddles = vec![
        ("Cl".to_string(), "M".to_string(), 1),
        ("M".to_string(), "R".to_string(), 1),
    ];
    finish(1, inner, outer, saddles, flip)
}

fn d4_minus(flip: bool) -> AgDiagram {
    // Three generic lines: central triangle (−), three vertex-opposite
    // regions (−), three edge regions (+).
    let inner = vec![AgRegion::new("T", -1, rat(1))];
    let outer = vec![
        AgRegion::new("E1", 1, rat(0)),
        AgRegion::new("E2", 1, rat(0)),
        AgRegion::new("E3", 1, rat(0)),
        AgRegion::new("A1", -1, rat(0)),
        AgRegion::new("A2", -1, rat(0)),
        AgRegion::new("A3", -1, rat(0)),
    ];
    let saddles = vec![
        ("T".to_string(), "A1".to_string(), 1),
        ("T".to_string(), "A2".to_string(), 1),
        ("T".to_string(), "A3".to_string(), 1),
        ("E1".to_string(), "E2".to_string(), 1),
        ("E1".to_string(), "E3".to_string(), 1),
        ("E2".to_string(), "E3".to_string(), 1),
    ];
    finish(3, inner, outer, saddles, flip)
}

fn d6_minus(flip: bool) -> AgDiagram {
    // A line with two tangent branches morsified: one lens per sign, three
    // outer regions per sign; the end regions (E, W) touch only their lens.
    let inner = vec![
        AgRegion::new("Ll", -1, rat(1)),
        AgRegion::new("Lr", 1, rat(1)),
    ];
    let outer = vec![
        AgRegion::new("E", 1, rat(0)),
        AgRegion::new("Nr", 1, rat(0)),
        AgRegion::new("Sr", 1, rat(0)),
        AgRegion::new("W", -1, rat(0)),
        AgRegion::new("Nl", -1, rat(0)),
        AgRegion::new("Sl", -1, rat(0)),
    ];
    let saddles = vec![
        ("Ll".to_string(), "W".to_string(), 1),
        ("Ll".to_string(), "Nl".to_string(), 1),
        ("Ll".to_string(), "Sl".to_string(), 1),
        ("Nl".to_string(), "Sl".to_string(), 1),
        ("Lr".to_string(), "E".to_string(), 1),
        ("Lr".to_string(), "Nr".to_string(), 1),
        ("Lr".to_string(), "Sr".to_string(), 1),
        ("Nr".to_string(), "Sr".to_string(), 1),
    ];
    finish(3, inner, outer, saddles, flip)
}

fn d_even_plus(n: usize) -> AgDiagram {
    // x(x^{2n} + y²): a line through the first loop of an n-loop chain.
    // Halves of the first loop flank the line; remaining loops hang off the
    // right half; the right outer region is pinched at each chain crossing.
    let mut inner = vec![
        AgRegion::new("IL", 1, rat(1)),
        AgRegion::new("IR", -1, rat(1)),
    ];
    for i in 2..=n {
        inner.push(AgRegion::new(&format!("I{i}"), -1, rat(1)));
    }
    let outer = vec![
        AgRegion::new("OR", 1, rat(1 - n as i64)),
        AgRegion::new("OL", -1, rat(0)),
    ];
    let mut saddles = vec![
        ("OR".to_string(), "IL".to_string(), 2),
        ("OL".to_string(), "IR".to_string(), 2),
    ];
    if n >= 2 {
        saddles.push(("IR".to_string(), "I2".to_string(), 1));
        for i in 2..n {
            saddles.push((format!("I{i}"), format!("I{}", i + 1), 1));
        }
    }
    finish(1, inner, outer, saddles, false)
}

fn d5(flip: bool) -> AgDiagram {
    // x(x³ − y²): the line meets a cuspidal branch; one inner region per
    // sign, big/sliver outer regions on the positive side, two flanks on
    // the negative side.
    let inner = vec![
        AgRegion::new("Iu", -1, rat(1)),
        AgRegion::new("Il", 1, rat(1)),
    ];
    let outer = vec![
        AgRegion::new("Ou", 1, rat(0)),
        AgRegion::new("Ws", 1, rat(0)),
        AgRegion::new("Dl", -1, rat(0)),
        AgRegion::new("Dr", -1, rat(0)),
    ];
    let saddles = vec![
        ("Ou".to_string(), "Il".to_string(), 2),
        ("Ws".to_string(), "Il".to_string(), 1),
        ("Iu".to_string(), "Dl".to_string(), 1),
        ("Iu".to_string(), "Dr".to_string(), 1),
        ("Dl".to_string(), "Dr".to_string(), 1),
    ];
    finish(2, inner, outer, saddles, flip)
}

fn e6(flip: bool) -> AgDiagram {
    // The (4,3) Chebyshev net: two negative lenses, one positive middle
    // loop meeting the positive outer region three times.
    let inner = vec![
        AgRegion::new("Lp", -1, rat(1)),
        AgRegion::new("Lm", -1, rat(1)),
        AgRegion::new("M", 1, rat(1)),
    ];
    let outer = vec![
        AgRegion::new("Oo", 1, rat(0)),
        AgRegion::new("Ow", -1, rat(0)),
    ];
    let saddles = vec![
        ("Lp".to_string(), "Lm".to_string(), 1),
        ("Ow".to_string(), "Lp".to_string(), 1),
        ("Ow".to_string(), "Lm".to_string(), 1),
        ("M".to_string(), "Oo".to_string(), 3),
    ];
    finish(1, inner, outer, saddles, flip)
}

fn e7() -> AgDiagram {
    // y(x³ − y²): line plus cuspidal branch through it; the diagram is
    // sign-symmetric, so no flipped variant is needed.
    let inner = vec![
        AgRegion::new("Il", 1, rat(1)),
        AgRegion::new("Ir", -1, rat(1)),
        AgRegion::new("Tt", -1, rat(1)),
    ];
    let outer = vec![
        AgRegion::new("Oe", 1, rat(0)),
        AgRegion::new("Wl", 1, rat(0)),
        AgRegion::new("Ow", -1, rat(0)),
        AgRegion::new("We", -1, rat(0)),
    ];
    let saddles = vec![
        ("Oe".to_string(), "Il".to_string(), 2),
        ("Wl".to_string(), "Il".to_string(), 1),
        ("Oe".to_string(), "Wl".to_string(), 1),
        ("Ir".to_string(), "Tt".to_string(), 1),
        ("Ow".to_string(), "Ir".to_string(), 1),
        ("Ow".to_string(), "Tt".to_string(), 1),
        ("We".to_string(), "Tt".to_string(), 1),
    ];
    finish(2, inner, outer, saddles, false)
}

fn e8() -> AgDiagram {
    // The (3,5) Chebyshev net: two loop pairs, one per sign; symmetric.
    let inner = vec![
        AgRegion::new("C1", 1, rat(1)),
        AgRegion::new("C2", 1, rat(1)),
        AgRegion::new("C3", -1, rat(1)),
        AgRegion::new("C4", -1, rat(1)),
    ];
    let outer = vec![
        AgRegion::new("Oe", 1, rat(0)),
        AgRegion::new("Ow", -1, rat(0)),
    ];
    let saddles = vec![
        ("C1".to_string(), "C2".to_string(), 1),
        ("Oe".to_string(), "C1".to_string(), 1),
        ("Oe".to_string(), "C2".to_string(), 2),
        ("C3".to_string(), "C4".to_string(), 1),
        ("Ow".to_string(), "C3".to_string(), 2),
        ("Ow".to_string(), "C4".to_string(), 1),
    ];
    finish(1, inner, outer, saddles, false)
}

fn finish(
    rho: usize,
    inner: Vec<AgRegion>,
    outer: Vec<AgRegion>,
    saddles: Vec<(String, String, u32)>,
    flip: bool,
) -> AgDiagram {
    let saddle_refs: Vec<(&str, &str, u32)> = saddles
        .iter()
        .map(|(a, b, n)| (a.as_str(), b.as_str(), *n))
        .collect();
    let mut boundary: BTreeMap<&str, u32> = BTreeMap::new();
    let sign_of = |l: &str| {
        inner
            .iter()
            .chain(outer.iter())
            .find(|r| r.label == l)
            .map(|r| r.sign)
            .unwrap()
    };
    for (a, b, n) in &saddle_refs {
        if sign_of(a) == sign_of(b) {
            *boundary.entry(a).or_insert(0) += n;
            *boundary.entry(b).or_insert(0) += n;
        }
    }
    let boundary_refs: Vec<(&str, u32)> = boundary.into_iter().collect();
    let d = AgDiagram::new(rho, inner, outer, saddle_refs, boundary_refs)
        .expect("catalog diagrams are well formed");
    if flip {
        d.negate()
    } else {
        d
    }
}

fn form_1x1(v: Rat) -> SymmetricForm {
    SymmetricForm::new(vec!["m1"], vec![vec![v]]).unwrap()
}

fn form_2x2(a: Rat, b: Rat, d: Rat) -> SymmetricForm {
    SymmetricForm::new(
        vec!["m1", "m2"],
        vec![vec![a, b.clone()], vec![b, d]],
    )
    .unwrap()
}

static CATALOG: Lazy<Vec<SingularityDescriptor>> = Lazy::new(|| {
    let mut v = Vec::new();
    let simple = |mu: usize| (0usize, mu, 0usize);
    // A_{2n−1} germs: ∓x^{2n} ± y², μ = 2n−1, two branches.
    for n in 1..=3usize {
        let mu = 2 * n - 1;
        let (mp, mm, mz) = simple(mu);
        let name_minus: &'static str = match n {
            1 => "A1-",
            2 => "A3-",
            _ => "A5-",
        };
        let name_plus: &'static str = match n {
            1 => "A1+",
            2 => "A3+",
            _ => "A5+",
        };
        v.push(SingularityDescriptor {
            name: name_minus,
            germ: match n {
                1 => "-x^2+y^2",
                2 => "-x^4+y^2",
                _ => "-x^6+y^2",
            },
            diagram: braid(n, true),
            expected_m: form_2x2(ratio(n as i64, 2), ratio(n as i64, 2), ratio(n as i64, 2)),
            expected_block: Block::Plus,
            mu,
            rho: 2,
            branches: 2,
            real_branches: 2,
            delta: n,
            mu_plus: mp,
            mu_minus: mm,
            mu_zero: mz,
            notes: "two real branches; residue is the rank-one (n/2)·J block",
        });
        v.push(SingularityDescriptor {
            name: name_plus,
            germ: match n {
                1 => "x^2-y^2",
                2 => "x^4-y^2",
                _ => "x^6-y^2",
            },
            diagram: braid(n, false),
            expected_m: form_2x2(
                ratio(2 * n as i64 - 1, 2 * n as i64),
                ratio(1, 2 * n as i64),
                ratio(2 * n as i64 - 1, 2 * n as i64),
            ),
            expected_block: Block::Plus,
            mu,
            rho: 2,
            branches: 2,
            real_branches: 2,
            delta: n,
            mu_plus: mp,
            mu_minus: mm,
            mu_zero: mz,
            notes: "cap block after contracting the lens chain",
        });
        let name_dot_minus: &'static str = match n {
            1 => "A1o-",
            2 => "A3o-",
            _ => "A5o-",
        };
        let name_dot_plus: &'static str = match n {
            1 => "A1o+",
            2 => "A3o+",
            _ => "A5o+",
        };
        v.push(SingularityDescriptor {
            name: name_dot_minus,
            germ: match n {
                1 => "x^2+y^2",
                2 => "x^4+y^2",
                _ => "x^6+y^2",
            },
            diagram: dot_chain(n, false),
            expected_m: form_1x1(rat(2 * n as i64 - 2)),
            expected_block: Block::Plus,
            mu,
            rho: 0,
            branches: 2,
            real_branches: 0,
            delta: n,
            mu_plus: mp,
            mu_minus: mm,
            mu_zero: mz,
            notes: "isolated real point; q₊ lives on the single outer region",
        });
        v.push(SingularityDescriptor {
            name: name_dot_plus,
            germ: match n {
                1 => "-x^2-y^2",
                2 => "-x^4-y^2",
                _ => "-x^6-y^2",
            },
            diagram: dot_chain(n, true),
            expected_m: SymmetricForm::empty(),
            expected_block: Block::Plus,
            mu,
            rho: 0,
            branches: 2,
            real_branches: 0,
            delta: n,
            mu_plus: mp,
            mu_minus: mm,
            mu_zero: mz,
            notes: "positive block is empty (the table prints the trivial form (0)); \
                    the (2n−2) diagonal moves to q₋",
        });
    }
    // A_{2n} germs: x^{2n+1} ± y², μ = 2n, one branch.
    for n in 1..=2usize {
        let mu = 2 * n;
        let (mp, mm, mz) = simple(mu);
        let (nm, np): (&'static str, &'static str) = if n == 1 {
            ("A2-", "A2+")
        } else {
            ("A4-", "A4+")
        };
        let diag = if n == 1 {
            alpha(false)
        } else {
            double_alpha(false)
        };
        let diag_f = if n == 1 {
            alpha(true)
        } else {
            double_alpha(true)
        };
        v.push(SingularityDescriptor {
            name: nm,
            germ: if n == 1 { "x^3+y^2" } else { "x^5+y^2" },
            diagram: diag,
            expected_m: form_1x1(rat(2 * n as i64)),
            expected_block: Block::Plus,
            mu,
            rho: 1,
            branches: 1,
            real_branches: 1,
            delta: n,
            mu_plus: mp,
            mu_minus: mm,
            mu_zero: mz,
            notes: "wrap region carries the integer diagonal 2n",
        });
        v.push(SingularityDescriptor {
            name: np,
            germ: if n == 1 { "x^3-y^2" } else { "x^5-y^2" },
            diagram: diag_f,
            expected_m: form_1x1(ratio(2 * n as i64, 2 * n as i64 + 1)),
            expected_block: Block::Plus,
            mu,
            rho: 1,
            branches: 1,
            real_branches: 1,
            delta: n,
            mu_plus: mp,
            mu_minus: mm,
            mu_zero: mz,
            notes: "loop contraction leaves 2n/(2n+1) on the thin side",
        });
    }
    // D_{2n+2}⁻: ±x(x^{2n} − y²), three real branches.
    for n in 1..=2usize {
        let mu = 2 * n + 2;
        let (mp, mm, mz) = simple(mu);
        let name: &'static str = if n == 1 { "D4-" } else { "D6-" };
        let expected = if n == 1 {
            SymmetricForm::new(
                vec!["m1", "m2", "m3"],
                vec![
                    vec![rat(1), ratio(1, 2), ratio(1, 2)],
                    vec![ratio(1, 2), rat(1), ratio(1, 2)],
                    vec![ratio(1, 2), ratio(1, 2), rat(1)],
                ],
            )
            .unwrap()
        } else {
            SymmetricForm::new(
                vec!["m1", "m2", "m3"],
                vec![
                    vec![rat(1), ratio(1, 2), ratio(1, 2)],
                    vec![ratio(1, 2), ratio(3, 2), rat(1)],
                    vec![ratio(1, 2), rat(1), ratio(3, 2)],
                ],
            )
            .unwrap()
        };
        v.push(SingularityDescriptor {
            name,
            germ: if n == 1 {
                "x(x^2-y^2)"
            } else {
                "x(x^4-y^2)"
            },
            diagram: if n == 1 { d4_minus(false) } else { d6_minus(false) },
            expected_m: expected,
            expected_block: Block::Plus,
            mu,
            rho: 3,
            branches: 3,
            real_branches: 3,
            delta: n + 2,
            mu_plus: mp,
            mu_minus: mm,
            mu_zero: mz,
            notes: "sign-symmetric diagram: both signs of the germ share M",
        });
    }
    // D_{2n+2}⁺: ±x(x^{2n} + y²), one real branch.
    for n in 1..=2usize {
        let mu = 2 * n + 2;
        let (mp, mm, mz) = simple(mu);
        let name: &'static str = if n == 1 { "D4+" } else { "D6+" };
        v.push(SingularityDescriptor {
            name,
            germ: if n == 1 {
                "x(x^2+y^2)"
            } else {
                "x(x^4+y^2)"
            },
            diagram: d_even_plus(n),
            expected_m: form_1x1(rat(2 * n as i64)),
            expected_block: Block::Plus,
            mu,
            rho: 1,
            branches: 3,
            real_branches: 1,
            delta: n + 2,
            mu_plus: mp,
            mu_minus: mm,
            mu_zero: mz,
            notes: "line through the loop chain; both signs of the germ share M",
        });
    }
    // D_{2n+3} at n = 1.
    {
        let (mp, mm, mz) = simple(5);
        v.push(SingularityDescriptor {
            name: "D5-",
            germ: "x(x^3-y^2)",
            diagram: d5(false),
            expected_m: form_2x2(rat(3), rat(1), rat(1)),
            expected_block: Block::Plus,
            mu: 5,
            rho: 2,
            branches: 2,
            real_branches: 2,
            delta: 3,
            mu_plus: mp,
            mu_minus: mm,
            mu_zero: mz,
            notes: "big sector first, sliver second",
        });
        v.push(SingularityDescriptor {
            name: "D5+",
            germ: "-x(x^3-y^2)",
            diagram: d5(true),
            expected_m: form_2x2(ratio(5, 4), ratio(3, 4), ratio(5, 4)),
            expected_block: Block::Plus,
            mu: 5,
            rho: 2,
            branches: 2,
            real_branches: 2,
            delta: 3,
            mu_plus: mp,
            mu_minus: mm,
            mu_zero: mz,
            notes: "flank block of the negated germ",
        });
    }
    // E₆, E₇, E₈.
    {
        let (mp, mm, mz) = simple(6);
        v.push(SingularityDescriptor {
            name: "E6-",
            germ: "x^4+y^3",
            diagram: e6(false),
            expected_m: form_1x1(rat(6)),
            expected_block: Block::Plus,
            mu: 6,
            rho: 1,
            branches: 1,
            real_branches: 1,
            delta: 3,
            mu_plus: mp,
            mu_minus: mm,
            mu_zero: mz,
            notes: "",
        });
        v.push(SingularityDescriptor {
            name: "E6+",
            germ: "-x^4+y^3",
            diagram: e6(true),
            expected_m: form_1x1(rat(2)),
            expected_block: Block::Plus,
            mu: 6,
            rho: 1,
            branches: 1,
            real_branches: 1,
            delta: 3,
            mu_plus: mp,
            mu_minus: mm,
            mu_zero: mz,
            notes: "",
        });
        let (mp, mm, mz) = simple(7);
        v.push(SingularityDescriptor {
            name: "E7",
            germ: "y(x^3-y^2)",
            diagram: e7(),
            expected_m: form_2x2(ratio(7, 2), ratio(3, 2), ratio(3, 2)),
            expected_block: Block::Plus,
            mu: 7,
            rho: 2,
            branches: 2,
            real_branches: 2,
            delta: 4,
            mu_plus: mp,
            mu_minus: mm,
            mu_zero: mz,
            notes: "all four sign choices of the germ share M",
        });
        let (mp, mm, mz) = simple(8);
        v.push(SingularityDescriptor {
            name: "E8",
            germ: "x^5+y^3",
            diagram: e8(),
            expected_m: form_1x1(rat(8)),
            expected_block: Block::Plus,
            mu: 8,
            rho: 1,
            branches: 1,
            real_branches: 1,
            delta: 4,
            mu_plus: mp,
            mu_minus: mm,
            mu_zero: mz,
            notes: "both sign choices of the germ share M",
        });
    }
    v
});

pub fn catalog(name: &str) -> Option<&'static SingularityDescriptor> {
    CATALOG.iter().find(|d| d.name == name)
}

pub fn catalog_entries() -> &'static [SingularityDescriptor] {
    &CATALOG
}

pub fn catalog_names() -> Vec<&'static str> {
    CATALOG.iter().map(|d| d.name).collect()
}
