//! The inequality engine: exact right-hand sides for the signature and
//! Euler-characteristic estimates, plus the Hodge/Smith identities they
//! rest on.
//!
//! Every statement is implemented as an RHS calculator over exact
//! rationals together with a comparator.  Inputs arrive as an
//! [`InvariantBundle`] — a flat map of named numbers (degrees, Milnor
//! splittings, Betti data, Euler characteristics, oval counts).  The
//! engine never tries to verify the geometric hypotheses behind a
//! statement; those are asserted by the caller, and the report simply
//! evaluates the cited displays on the supplied numbers.
//!
//! Inequality families are referred to by their catalog ids (`1.3.1`,
//! `3-4`, `4-17`, …), the same ids the command-line front end accepts.

use std::collections::BTreeMap;

use num::{Signed, Zero};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::arrangements::binomial;
use crate::qforms::{rat, rat_from_json, rat_to_string, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("unknown invariant key `{0}`")]
    UnknownKey(String),
    #[error("`{field}` is missing from the invariant bundle (needed for {variant})")]
    MissingField { field: String, variant: String },
    #[error("inconsistent invariants: {0}")]
    Inconsistent(String),
    #[error("{0}")]
    Invalid(String),
}

pub type BResult<T> = Result<T, BoundsError>;

/// Scalar invariants the engine understands.  Betti tables are passed
/// through the indexed families listed in [`FAMILY_PREFIXES`].
const SCALAR_KEYS: &[&str] = &[
    "alpha_im_0",
    "alpha_im_2",
    "b0_tilde_ca",
    "b0_tilde_ca_dprime",
    "b0_tilde_ca_prime",
    "b1_cp",
    "b1_cp_z2",
    "b1_cx",
    "b1_cx_res",
    "b1_cx_res_z2",
    "b1_xbar",
    "b2_ca",
    "b2_ca_prime",
    "b2_e_bar",
    "b2_minus_cp",
    "b2_minus_cx_res",
    "b2_plus_cp",
    "b2_zero_xbar",
    "b3_cx",
    "b3_xbar",
    "b_d_ca",
    "b_d_minus_cx",
    "b_d_minus_cxtau",
    "b_d_minus_ubar",
    "b_d_minus_xbar",
    "b_d_minus_xtau",
    "b_d_plus_1_xbar",
    "b_d_plus_cx",
    "b_d_plus_cxtau",
    "b_d_plus_ubar",
    "b_d_plus_xbar",
    "b_d_plus_xtau",
    "b_d_zero_ubar",
    "beta",
    "chi_a",
    "chi_cx",
    "chi_hat_ce",
    "chi_hat_re",
    "chi_rp",
    "chi_rp_minus",
    "chi_rp_plus",
    "chi_ru",
    "chi_rx",
    "chi_xbar",
    "complete_intersection",
    "d",
    "d_r_2",
    "delta",
    "delta_prime",
    "dim_z",
    "eps_minus",
    "eps_plus",
    "eps_zero",
    "frak_p",
    "gamma",
    "improve_nonparabolic",
    "k",
    "kappa",
    "l_k_plus_3l",
    "l_k_plus_l",
    "m",
    "mu_minus",
    "mu_plus",
    "mu_zero",
    "n",
    "n_minus",
    "n_plus",
    "n_zero",
    "nu",
    "nu_prime",
    "p_g",
    "p_minus",
    "p_plus",
    "p_zero",
    "r",
    "sigma_cx",
    "sigma_minus",
    "sigma_plus",
    "sigma_xbar",
    "sigma_zero",
    "t2",
    "t_cx",
    "varkappa",
];

/// Indexed key families: `b_z_3` is the third mod-2 Betti number of the
/// ambient space `Z`, and so on.
const FAMILY_PREFIXES: &[&str] = &["b_cpa_", "b_cx_", "b_f_", "b_q_", "b_qf_", "b_z_", "nu_"];

fn check_key(key: &str) -> BResult<()> {
    if SCALAR_KEYS.contains(&key) {
        return Ok(());
    }
    for prefix in FAMILY_PREFIXES {
        if let Some(rest) = key.strip_prefix(prefix) {
            if rest.parse::<usize>().is_ok() {
                return Ok(());
            }
        }
    }
    Err(BoundsError::UnknownKey(key.to_string()))
}

fn sign_word(sign: i8) -> &'static str {
    if sign > 0 {
        "plus"
    } else {
        "minus"
    }
}

fn half(x: Rat) -> Rat {
    x / rat(2)
}

fn min_of(values: Vec<Rat>) -> Rat {
    values.into_iter().min().expect("min of a nonempty list")
}

/// Named exact numbers feeding the engine: everything is optional, and
/// each statement pulls what it needs, failing loudly when a field is
/// absent.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InvariantBundle {
    values: BTreeMap<String, Rat>,
}

impl InvariantBundle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: &str, value: Rat) -> BResult<()> {
        check_key(key)?;
        self.values.insert(key.to_string(), value);
        Ok(())
    }

    /// Builder-style insert; panics on a key the engine does not know.
    pub fn with(mut self, key: &str, value: Rat) -> Self {
        self.set(key, value).unwrap_or_else(|e| panic!("{e}"));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Rat> {
        self.values.get(key)
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn from_json(v: &Value) -> BResult<Self> {
        let obj = v.as_object().ok_or_else(|| {
            BoundsError::Invalid("an invariant bundle must be a JSON object".into())
        })?;
        let mut out = InvariantBundle::new();
        for (key, raw) in obj {
            if key == "schema" {
                continue;
            }
            let value = rat_from_json(raw)
                .map_err(|e| BoundsError::Invalid(format!("invariant `{key}`: {e}")))?;
            out.set(key, value)?;
        }
        out.validate()?;
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("schema".into(), Value::String("avk-1".into()));
        for (key, value) in &self.values {
            obj.insert(key.clone(), Value::String(rat_to_string(value)));
        }
        Value::Object(obj)
    }

    /// Cross-field consistency: the derived quantities ϰ, κ and 𝔭 must
    /// agree with their primary definitions whenever both are supplied.
    pub fn validate(&self) -> BResult<()> {
        if let Some(n) = self.get("n") {
            if !n.is_integer() || n < &rat(1) {
                return Err(BoundsError::Inconsistent(format!(
                    "the half-dimension n must be a positive integer, got {}",
                    rat_to_string(n)
                )));
            }
        }
        if let Some(vk) = self.get("varkappa") {
            if vk != &rat(1) && vk != &rat(-1) {
                return Err(BoundsError::Inconsistent(
                    "varkappa must be +1 or -1".into(),
                ));
            }
            if let Some(n) = self.get("n") {
                let expected = if (n.to_integer() % 2u8).is_zero() {
                    rat(1)
                } else {
                    rat(-1)
                };
                if vk != &expected {
                    return Err(BoundsError::Inconsistent(format!(
                        "varkappa = {} contradicts (-1)^n for n = {}",
                        rat_to_string(vk),
                        rat_to_string(n)
                    )));
                }
            }
        }
        if let Some(kp) = self.get("kappa") {
            if kp != &rat(0) && kp != &rat(1) {
                return Err(BoundsError::Inconsistent("kappa must be 0 or 1".into()));
            }
            if let Some(n) = self.get("n") {
                let expected = rat(i64::from(!(n.to_integer() % 2u8).is_zero()));
                if kp != &expected {
                    return Err(BoundsError::Inconsistent(format!(
                        "kappa = {} contradicts n mod 2 for n = {}",
                        rat_to_string(kp),
                        rat_to_string(n)
                    )));
                }
            }
        }
        if let (Some(fp), Some(mp), Some(mz)) = (
            self.get("frak_p"),
            self.get("mu_plus"),
            self.get("mu_zero"),
        ) {
            if fp * rat(2) != mp + mz {
                return Err(BoundsError::Inconsistent(format!(
                    "frak_p = {} is not half of mu_plus + mu_zero = {}",
                    rat_to_string(fp),
                    rat_to_string(&(mp + mz))
                )));
            }
        }
        for key in ["eps_plus", "eps_zero", "eps_minus"] {
            if let Some(e) = self.get(key) {
                if e != &rat(0) && e != &rat(1) {
                    return Err(BoundsError::Inconsistent(format!("{key} must be 0 or 1")));
                }
            }
        }
        for key in ["complete_intersection", "improve_nonparabolic"] {
            if let Some(f) = self.get(key) {
                if f != &rat(0) && f != &rat(1) {
                    return Err(BoundsError::Inconsistent(format!(
                        "{key} is a flag and must be 0 or 1"
                    )));
                }
            }
        }
        Ok(())
    }

    fn require(&self, key: &str, variant: &str) -> BResult<Rat> {
        self.get(key).cloned().ok_or_else(|| BoundsError::MissingField {
            field: key.to_string(),
            variant: variant.to_string(),
        })
    }

    /// ϰ = (−1)^n, read directly or derived from `n`.
    fn varkappa_i8(&self, variant: &str) -> BResult<i8> {
        if let Some(vk) = self.get("varkappa") {
            return Ok(if vk > &Rat::zero() { 1 } else { -1 });
        }
        let n = self.require("n", variant)?;
        Ok(if (n.to_integer() % 2u8).is_zero() { 1 } else { -1 })
    }

    /// κ = n mod 2 (equivalently ½(1 − ϰ)).
    fn kappa(&self, variant: &str) -> BResult<Rat> {
        if let Some(kp) = self.get("kappa") {
            return Ok(kp.clone());
        }
        let n = self.require("n", variant)?;
        Ok(rat(i64::from(!(n.to_integer() % 2u8).is_zero())))
    }

    /// 𝔭 = ½(μ⁺ + μ⁰), read directly or assembled from the splitting.
    fn frak_p(&self, variant: &str) -> BResult<Rat> {
        if let Some(fp) = self.get("frak_p") {
            return Ok(fp.clone());
        }
        let mp = self.require("mu_plus", variant)?;
        let mz = self.require("mu_zero", variant)?;
        Ok(half(mp + mz))
    }

    /// μ^{+1} or μ^{−1} by eigenvalue sign.
    fn mu_signed(&self, sign: i8, variant: &str) -> BResult<Rat> {
        self.require(&format!("mu_{}", sign_word(sign)), variant)
    }

    /// σ_{+1} or σ_{−1} when supplied; rows without a left-hand side are
    /// still reported with their computed bound.
    fn sigma(&self, sign: i8) -> Option<Rat> {
        self.get(&format!("sigma_{}", sign_word(sign))).cloned()
    }

    fn sigma_with_zero(&self, sign: i8) -> Option<Rat> {
        Some(self.sigma(sign)? + self.get("sigma_zero")?)
    }

    /// An indexed Betti table, e.g. `family("b_z_")` for b_*(Z; Z/2).
    /// Indices not stored are taken to vanish, as Betti numbers beyond
    /// the dimension do.
    fn family(&self, prefix: &str) -> BTreeMap<usize, Rat> {
        self.values
            .iter()
            .filter_map(|(k, v)| {
                let idx = k.strip_prefix(prefix)?.parse::<usize>().ok()?;
                Some((idx, v.clone()))
            })
            .collect()
    }
}

fn table_value(table: &BTreeMap<usize, Rat>, index: i64) -> Rat {
    if index < 0 {
        return Rat::zero();
    }
    table.get(&(index as usize)).cloned().unwrap_or_else(Rat::zero)
}

/// How a report row compares its sides: an upper bound or an identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "==",
        }
    }
}

/// One evaluated statement: `lhs` is present only when the bundle
/// carries the matching measured quantity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRow {
    pub id: String,
    pub relation: Relation,
    pub lhs: Option<Rat>,
    pub rhs: Rat,
}

impl BoundRow {
    fn le(id: impl Into<String>, lhs: Option<Rat>, rhs: Rat) -> Self {
        BoundRow {
            id: id.into(),
            relation: Relation::Le,
            lhs,
            rhs,
        }
    }

    fn eq(id: impl Into<String>, lhs: Option<Rat>, rhs: Rat) -> Self {
        BoundRow {
            id: id.into(),
            relation: Relation::Eq,
            lhs,
            rhs,
        }
    }

    /// RHS − LHS, exactly.
    pub fn slack(&self) -> Option<Rat> {
        Some(self.rhs.clone() - self.lhs.as_ref()?)
    }

    /// For a `<=` row the slack must be nonnegative; for an `==` row it
    /// must vanish.  Rows without a left-hand side have no verdict.
    pub fn verdict(&self) -> Option<bool> {
        let slack = self.slack()?;
        Some(match self.relation {
            Relation::Le => slack >= Rat::zero(),
            Relation::Eq => slack.is_zero(),
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BoundsReport {
    pub rows: Vec<BoundRow>,
}

impl BoundsReport {
    pub fn row(&self, id: &str) -> Option<&BoundRow> {
        self.rows.iter().find(|r| r.id == id)
    }

    /// True when no row with a known left-hand side fails.
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.verdict().unwrap_or(true))
    }

    pub fn failures(&self) -> Vec<&BoundRow> {
        self.rows
            .iter()
            .filter(|r| r.verdict() == Some(false))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "id": r.id,
                    "relation": r.relation.symbol(),
                    "lhs": r.lhs.as_ref().map(rat_to_string),
                    "rhs": rat_to_string(&r.rhs),
                    "slack": r.slack().as_ref().map(rat_to_string),
                    "verdict": r.verdict(),
                })
            })
            .collect();
        json!({ "rows": rows, "all_hold": self.all_hold() })
    }
}

/// The classical bound on p − n for a non-singular even curve of degree
/// 2k: the returned pair (a, a+1) encodes −a ≤ p − n ≤ a + 1 with
/// a = (3/2)k(k−1).
pub fn petrovskii_classic(k: u32) -> (i64, i64) {
    assert!(k >= 1, "the degree parameter k must be at least 1");
    let k = i64::from(k);
    let a = 3 * k * (k - 1) / 2;
    (a, a + 1)
}

/// Middle Betti data of the non-singular double plane of degree 2k:
/// (b₂⁺, b₂⁻, p_g) = (2p_g + 1, 3k(k−1) + 1, ½(k−1)(k−2)).
pub fn double_plane_betti(k: u32) -> (i64, i64, i64) {
    assert!(k >= 1, "the degree parameter k must be at least 1");
    let k = i64::from(k);
    let p_g = (k - 1) * (k - 2) / 2;
    (2 * p_g + 1, 3 * k * (k - 1) + 1, p_g)
}

/// The signature-bound families the engine evaluates, named by their
/// catalog ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AvVariant {
    /// `1.3.1` — degree-2k curves with essential singularities allowed.
    Thm131,
    /// `1.3.2` — degree-2k curves without essential singularities.
    Cor132,
    /// `1-7` — the double-plane rows in arbitrary even dimension.
    Intro17,
    /// `3.1.1` — complete intersections, rows (3-2) and (3-3).
    Thm311,
    /// `3.1.2` — isolated singularities, rows (3-4).
    Thm312,
    /// `4.1.1` — curves on a surface, rows (4-1)–(4-4).
    Thm411,
    /// `4.1.2` — the component-count corollary, rows (4-5)/(4-6).
    Cor412,
    /// `4.2.1` — surfaces via a resolution, rows (4-17)–(4-20).
    Thm421,
}

impl AvVariant {
    pub const ALL: [AvVariant; 8] = [
        AvVariant::Thm131,
        AvVariant::Cor132,
        AvVariant::Intro17,
        AvVariant::Thm311,
        AvVariant::Thm312,
        AvVariant::Thm411,
        AvVariant::Cor412,
        AvVariant::Thm421,
    ];

    pub fn id(self) -> &'static str {
        match self {
            AvVariant::Thm131 => "1.3.1",
            AvVariant::Cor132 => "1.3.2",
            AvVariant::Intro17 => "1-7",
            AvVariant::Thm311 => "3.1.1",
            AvVariant::Thm312 => "3.1.2",
            AvVariant::Thm411 => "4.1.1",
            AvVariant::Cor412 => "4.1.2",
            AvVariant::Thm421 => "4.2.1",
        }
    }

    pub fn parse(name: &str) -> BResult<AvVariant> {
        AvVariant::ALL
            .into_iter()
            .find(|v| v.id() == name)
            .ok_or_else(|| {
                BoundsError::Invalid(format!(
                    "unknown variant `{name}`; expected one of 1.3.1, 1.3.2, 1-7, 3.1.1, 3.1.2, 4.1.1, 4.1.2, 4.2.1"
                ))
            })
    }
}

/// Evaluate one signature-bound family on the bundle.  Row order is
/// fixed: for the curve statements it is (σ₊, σ₊+σ₀, σ₋, σ₋+σ₀) or the
/// printed pair; for the dimension-graded ones the −ϰ row precedes the
/// ϰ row.
pub fn arnold_viro_rhs(variant: AvVariant, iv: &InvariantBundle) -> BResult<BoundsReport> {
    iv.validate()?;
    let rows = match variant {
        AvVariant::Thm131 => rows_thm_131(iv)?,
        AvVariant::Cor132 => rows_cor_132(iv)?,
        AvVariant::Intro17 => rows_intro_1_7(iv)?,
        AvVariant::Thm311 => rows_thm_311(iv)?,
        AvVariant::Thm312 => rows_thm_312(iv)?,
        AvVariant::Thm411 => rows_thm_411(iv)?,
        AvVariant::Cor412 => rows_cor_412(iv)?,
        AvVariant::Thm421 => rows_thm_421(iv)?,
    };
    Ok(BoundsReport { rows })
}

fn rows_intro_1_7(iv: &InvariantBundle) -> BResult<Vec<BoundRow>> {
    let v = "1-7";
    let vk = iv.varkappa_i8(v)?;
    let kap = iv.kappa(v)?;
    let chi = iv.require("chi_rx", v)?;
    let delta = iv.require("delta", v)?;
    let s0 = iv.require("sigma_zero", v)?;
    let tail = min_of(vec![Rat::zero(), delta - s0]);
    let b_opp = iv.require(&format!("b_d_{}_xtau", sign_word(-vk)), v)?;
    let mu_opp = iv.mu_signed(-vk, v)?;
    let b_same = iv.require(&format!("b_d_{}_xtau", sign_word(vk)), v)?;
    let mu_same = iv.mu_signed(vk, v)?;
    let first = half(b_opp - kap.clone() - mu_opp) + tail.clone();
    let second = half(b_same + chi + kap - mu_same) - rat(1) + tail;
    Ok(vec![
        BoundRow::le(format!("1-7:sigma_{}", sign_word(-vk)), iv.sigma(-vk), first),
        BoundRow::le(format!("1-7:sigma_{}", sign_word(vk)), iv.sigma(vk), second),
    ])
}

fn rows_thm_311(iv: &InvariantBundle) -> BResult<Vec<BoundRow>> {
    let v = "3.1.1";
    let vk = iv.varkappa_i8(v)?;
    let kap = iv.kappa(v)?;
    let chi = iv.require("chi_rx", v)?;
    let delta = iv.require("delta", v)?;
    let s0 = iv.require("sigma_zero", v)?;
    let tail = min_of(vec![Rat::zero(), delta - s0]);
    let b_opp = iv.require(&format!("b_d_{}_cx", sign_word(-vk)), v)?;
    let b_same = iv.require(&format!("b_d_{}_cx", sign_word(vk)), v)?;
    let first = half(b_opp - kap.clone()) + tail.clone();
    let second = half(b_same + chi + kap) - rat(1) + tail;
    Ok(vec![
        BoundRow::le("3-2", iv.sigma(-vk), first),
        BoundRow::le("3-3", iv.sigma(vk), second),
    ])
}

fn rows_thm_312(iv: &InvariantBundle) -> BResult<Vec<BoundRow>> {
    let v = "3.1.2";
    let vk = iv.varkappa_i8(v)?;
    let kap = iv.kappa(v)?;
    let chi = iv.require("chi_rx", v)?;
    let beta = iv.require("beta", v)?;
    let gamma = iv.require("gamma", v)?;
    let delta_prime = iv.require("delta_prime", v)?;
    let s0 = iv.require("sigma_zero", v)?;
    let frak_p = half(iv.mu_signed(-vk, v)? + iv.require("mu_zero", v)?);
    let b_opp = iv.require(&format!("b_d_{}_cxtau", sign_word(-vk)), v)?;
    let b_same = iv.require(&format!("b_d_{}_cxtau", sign_word(vk)), v)?;
    let mu_same = iv.mu_signed(vk, v)?;
    let first = half(b_opp - kap.clone()) - frak_p
        + min_of(vec![gamma.clone(), beta.clone() + delta_prime.clone() - s0.clone()]);
    let second =
        half(b_same + chi + kap - mu_same) - rat(1) + min_of(vec![gamma - beta, delta_prime - s0]);
    Ok(vec![
        BoundRow::le(format!("3-4:sigma_{}", sign_word(-vk)), iv.sigma(-vk), first),
        BoundRow::le(format!("3-4:sigma_{}", sign_word(vk)), iv.sigma(vk), second),
    ])
}

fn rows_thm_131(iv: &InvariantBundle) -> BResult<Vec<BoundRow>> {
    let v = "1.3.1";
    let k = iv.require("k", v)?;
    let frak_p = iv.frak_p(v)?;
    let mu_minus = iv.require("mu_minus", v)?;
    let chi = iv.require("chi_rx", v)?;
    let r = iv.require("r", v)?;
    let nu = iv.require("nu", v)?;
    let beta = iv.require("beta", v)?;
    let b0_dd = iv.require("b0_tilde_ca_dprime", v)?;
    let b0_p = iv.require("b0_tilde_ca_prime", v)?;
    let excess = r - nu;
    let base_plus = half((k.clone() - rat(1)) * (k.clone() - rat(2))) - frak_p;
    let base_minus = half(rat(3) * k.clone() * (k - rat(1))) + half(chi) - half(mu_minus);
    let quad = min_of(vec![half(excess.clone()), half(b0_dd), b0_p, beta.clone()]);
    Ok(vec![
        BoundRow::le("1.3.1:sigma_plus", iv.sigma(1), base_plus.clone() + quad.clone()),
        BoundRow::le(
            "1.3.1:sigma_plus_zero",
            iv.sigma_with_zero(1),
            base_plus + beta + excess.clone(),
        ),
        BoundRow::le("1.3.1:sigma_minus", iv.sigma(-1), base_minus.clone() + quad),
        BoundRow::le(
            "1.3.1:sigma_minus_zero",
            iv.sigma_with_zero(-1),
            base_minus + excess,
        ),
    ])
}

fn rows_cor_132(iv: &InvariantBundle) -> BResult<Vec<BoundRow>> {
    let v = "1.3.2";
    let k = iv.require("k", v)?;
    let mu_plus = iv.require("mu_plus", v)?;
    let mu_minus = iv.require("mu_minus", v)?;
    let chi = iv.require("chi_rx", v)?;
    let excess = iv.require("r", v)? - iv.require("nu", v)?;
    let s0 = iv.require("sigma_zero", v)?;
    let base_plus = half((k.clone() - rat(1)) * (k.clone() - rat(2))) - half(mu_plus);
    let base_minus = half(rat(3) * k.clone() * (k - rat(1))) + half(chi) - half(mu_minus);
    let tail = min_of(vec![Rat::zero(), excess.clone() - s0]);
    Ok(vec![
        BoundRow::le("1.3.2:sigma_plus", iv.sigma(1), base_plus.clone() + tail.clone()),
        BoundRow::le(
            "1.3.2:sigma_plus_zero",
            iv.sigma_with_zero(1),
            base_plus + excess.clone(),
        ),
        BoundRow::le("1.3.2:sigma_minus", iv.sigma(-1), base_minus.clone() + tail),
        BoundRow::le(
            "1.3.2:sigma_minus_zero",
            iv.sigma_with_zero(-1),
            base_minus + excess,
        ),
    ])
}

fn rows_thm_411(iv: &InvariantBundle) -> BResult<Vec<BoundRow>> {
    let v = "4.1.1";
    let b2p = iv.require("b2_plus_cp", v)?;
    let b2m = iv.require("b2_minus_cp", v)?;
    let b1 = iv.require("b1_cp", v)?;
    let lkl = iv.require("l_k_plus_l", v)?;
    let lk3l = iv.require("l_k_plus_3l", v)?;
    let frak_p = iv.frak_p(v)?;
    let mu_minus = iv.require("mu_minus", v)?;
    let chi = iv.require("chi_rx", v)?;
    let t2 = iv.require("t2", v)?;
    let beta = iv.require("beta", v)?;
    let alpha = iv.require("alpha_im_0", v)?;
    let imax = std::cmp::max(Rat::zero(), rat(3) * alpha - rat(1));
    let primed = iv.require("b2_ca_prime", v)? - iv.require("nu_prime", v)?;
    let triple = min_of(vec![
        iv.require("b0_tilde_ca_dprime", v)?,
        iv.require("b0_tilde_ca", v)? + rat(2) * beta.clone(),
        iv.require("b2_ca", v)? - iv.require("nu", v)?,
    ]);
    let base_plus = b2p + half(lkl) - frak_p;
    let base_minus = b2m + half(lk3l + chi - mu_minus);
    Ok(vec![
        BoundRow::le(
            "4-1",
            iv.sigma(1),
            base_plus.clone() + t2.clone() + half(triple.clone()),
        ),
        BoundRow::le(
            "4-2",
            iv.sigma_with_zero(1),
            base_plus + rat(2) * t2.clone() + b1.clone() + primed.clone() + beta.clone() + imax.clone(),
        ),
        BoundRow::le(
            "4-3",
            iv.sigma(-1),
            base_minus.clone() + t2.clone() - beta + half(triple),
        ),
        BoundRow::le(
            "4-4",
            iv.sigma_with_zero(-1),
            base_minus + rat(2) * t2 + b1 + primed + imax,
        ),
    ])
}

fn rows_cor_412(iv: &InvariantBundle) -> BResult<Vec<BoundRow>> {
    let v = "4.1.2";
    let excess = iv.require("r", v)? - iv.require("nu", v)?;
    let s0 = iv.require("sigma_zero", v)?;
    let tail = min_of(vec![excess - s0, Rat::zero()]);
    let first = iv.require("b2_plus_cp", v)? + half(iv.require("l_k_plus_l", v)?)
        - half(iv.require("mu_plus", v)?)
        + tail.clone();
    let second = iv.require("b2_minus_cp", v)?
        + half(
            iv.require("l_k_plus_3l", v)? + iv.require("chi_rx", v)?
                - iv.require("mu_minus", v)?,
        )
        + tail;
    Ok(vec![
        BoundRow::le("4-5", iv.sigma(1), first),
        BoundRow::le("4-6", iv.sigma(-1), second),
    ])
}

fn rows_thm_421(iv: &InvariantBundle) -> BResult<Vec<BoundRow>> {
    let v = "4.2.1";
    let chi = iv.require("chi_rx", v)?;
    let b1_z2 = iv.require("b1_cx_res_z2", v)?;
    let alpha = iv.require("alpha_im_2", v)?;
    let imax = std::cmp::max(Rat::zero(), alpha - rat(1));
    let d_r = iv.require("d_r_2", v)?;
    let b2m = iv.require("b2_minus_cx_res", v)?;
    let first = iv.require("p_g", v)?;
    let second = iv.require("chi_a", v)?
        + b1_z2.clone()
        + iv.require("beta", v)?
        + imax.clone()
        + d_r.clone();
    let third =
        half(b2m.clone() - rat(1) + chi.clone() + iv.require("chi_hat_re", v)?) - iv.require("b2_e_bar", v)?;
    let fourth = half(b2m + rat(1) + chi - iv.require("chi_hat_ce", v)?) + b1_z2
        - half(iv.require("b1_cx_res", v)?)
        + imax
        + d_r;
    Ok(vec![
        BoundRow::le("4-17", iv.sigma(1), first),
        BoundRow::le("4-18", iv.sigma_with_zero(1), second),
        BoundRow::le("4-19", iv.sigma(-1), third),
        BoundRow::le("4-20", iv.sigma_with_zero(-1), fourth),
    ])
}

/// The Smith-theoretic estimates: the graded rows for an involution
/// with fixed locus F on Z (families `b_z_*`, `b_f_*`, `b_q_*`,
/// `b_qf_*`, `nu_*`), the caps on δ, and the lemma rows feeding the
/// curve statements.  Each row group is emitted when its inputs are
/// present.
pub fn smith_rhs(iv: &InvariantBundle) -> BResult<BoundsReport> {
    iv.validate()?;
    let mut rows = Vec::new();
    let bz = iv.family("b_z_");
    let bf = iv.family("b_f_");
    let bq = iv.family("b_q_");
    let bqf = iv.family("b_qf_");
    let nus = iv.family("nu_");
    let top = [&bz, &bf, &bq, &bqf]
        .iter()
        .filter_map(|t| t.keys().next_back().copied())
        .max();
    if let Some(top) = top {
        let zv = |k: i64| table_value(&bz, k);
        let fv = |k: i64| table_value(&bf, k);
        let qv = |k: i64| table_value(&bq, k);
        let pv = |k: i64| table_value(&bqf, k);
        let top = top as i64;
        if !bz.is_empty() && !bf.is_empty() && !bqf.is_empty() {
            for k in 0..=top {
                rows.push(BoundRow::le(
                    format!("7-1:k{k}"),
                    Some(pv(k) + fv(k)),
                    pv(k + 1) + zv(k),
                ));
            }
            for l in 0..=top {
                let tail_f: Rat = (l..=top).map(fv).sum();
                let tail_z: Rat = (l..=top).map(zv).sum();
                rows.push(BoundRow::le(format!("7-2:l{l}"), Some(pv(l) + tail_f), tail_z));
            }
            rows.push(BoundRow::le(
                "7-2:total",
                Some((0..=top).map(fv).sum()),
                (0..=top).map(zv).sum(),
            ));
        }
        if !bz.is_empty() && !bq.is_empty() && !bqf.is_empty() {
            for k in 0..=top {
                rows.push(BoundRow::le(format!("7-3:k{k}"), Some(zv(k)), qv(k) + pv(k)));
            }
        }
        if !bz.is_empty() && !bq.is_empty() && !bf.is_empty() && !nus.is_empty() {
            for k in 0..=top {
                let rhs = rat(2) * qv(k) + fv(k - 1) - table_value(&nus, k) - table_value(&nus, k - 1);
                rows.push(BoundRow::le(format!("7-4:k{k}"), Some(zv(k)), rhs));
            }
        }
        if let Some(m) = iv.get("dim_z") {
            if !m.is_integer() || m < &rat(1) {
                return Err(BoundsError::Inconsistent(
                    "dim_z must be a positive integer".into(),
                ));
            }
            let m = m.to_integer().try_into().map_err(|_| {
                BoundsError::Inconsistent("dim_z is unreasonably large".into())
            })?;
            let reduced_f = fv(m - 2) - rat(i64::from(m == 2));
            rows.push(BoundRow::eq("7-5:top", Some(qv(m)), rat(1)));
            rows.push(BoundRow::le("7-5:a", Some(pv(m - 1)), zv(m - 1) + rat(1)));
            rows.push(BoundRow::le(
                "7-5:b",
                Some(zv(m - 1)),
                rat(2) * qv(m - 1) + reduced_f - rat(1),
            ));
        }
    }

    // Caps on δ(CX) through the quotient: the graded sum, the complete
    // intersection case, and the double-cover cases.
    if let Some(d) = iv.get("d") {
        if !d.is_integer() || d < &rat(1) {
            return Err(BoundsError::Inconsistent("d must be a positive integer".into()));
        }
        let d: i64 = d
            .to_integer()
            .try_into()
            .map_err(|_| BoundsError::Inconsistent("d is unreasonably large".into()))?;
        let delta = iv.get("delta").cloned();
        let bcx = iv.family("b_cx_");
        if let (false, Some(bx)) = (bcx.is_empty(), iv.get("b_d_plus_1_xbar")) {
            let graded: Rat = (d + 1..=2 * d).map(|k| table_value(&bcx, k)).sum();
            rows.push(BoundRow::le("3-5", delta.clone(), graded - bx));
            if d % 2 == 0 {
                rows.push(BoundRow::le(
                    "3-6",
                    delta.clone(),
                    table_value(&bcx, d + 1) + rat(d / 2) - bx,
                ));
            }
        }
        let bcpa = iv.family("b_cpa_");
        if let (true, false, Some(bx)) = (d % 2 == 0, bcpa.is_empty(), iv.get("b_d_plus_1_xbar")) {
            let graded: Rat = (d + 1..=2 * d - 1).map(|k| table_value(&bcpa, k)).sum();
            rows.push(BoundRow::le("3-7", delta.clone(), graded + rat(d / 2 - 1) - bx));
        }
        if let (true, Some(bda), Some(nu), Some(bx)) = (
            d % 2 == 0,
            iv.get("b_d_ca"),
            iv.get("nu"),
            iv.get("b_d_plus_1_xbar"),
        ) {
            rows.push(BoundRow::le("3-8", delta.clone(), (bda - nu) + rat(d / 2) - bx));
        }
        if let Some(m) = iv.get("m") {
            if !m.is_integer() || m < &rat(2) {
                return Err(BoundsError::Inconsistent(
                    "m must be an integer at least 2".into(),
                ));
            }
            let m: u64 = m
                .to_integer()
                .try_into()
                .map_err(|_| BoundsError::Inconsistent("m is unreasonably large".into()))?;
            let cap: u64 = (0..d as u64).map(|j| binomial(m - 2, j)).sum();
            rows.push(BoundRow::le("6.1.3", delta, rat(cap as i64)));
        }
    }

    // The lemma rows tying b₁, b₃ and δ(CX′) of the double cover to the
    // branch curve on a surface.
    if let Some(b1p) = iv.get("b1_cp_z2") {
        let half_b1 = iv.get("b1_cx").map(|x| half(x.clone()));
        let b1x = iv.get("b1_xbar").cloned().or(half_b1.clone());
        if let (Some(lhs), Some(known)) = (half_b1, iv.get("b1_xbar")) {
            rows.push(BoundRow::eq("4-10:identity", Some(known.clone()), lhs));
        }
        if let Some(b0) = iv.get("b0_tilde_ca") {
            rows.push(BoundRow::le("4-10", b1x.clone(), b1p + half(b0.clone())));
        }
        let half_b3 = iv.get("b3_cx").map(|x| half(x.clone()));
        let b3x = iv.get("b3_xbar").cloned().or(half_b3.clone());
        if let (Some(lhs), Some(known)) = (half_b3, iv.get("b3_xbar")) {
            rows.push(BoundRow::eq("4-11:identity", Some(known.clone()), lhs));
        }
        if let (Some(b0dd), Some(b0), Some(beta), Some(b2ca), Some(nu)) = (
            iv.get("b0_tilde_ca_dprime"),
            iv.get("b0_tilde_ca"),
            iv.get("beta"),
            iv.get("b2_ca"),
            iv.get("nu"),
        ) {
            let triple = min_of(vec![
                b0dd.clone(),
                b0 + rat(2) * beta.clone(),
                b2ca - nu,
            ]);
            rows.push(BoundRow::le("4-11", b3x.clone(), b1p + half(triple)));
        }
        if let Some(b0p) = iv.get("b0_tilde_ca_prime") {
            rows.push(BoundRow::le("4-11:prime", b3x.clone(), b1p + b0p));
        }
        if let (Some(primed), Some(nu_p), Some(alpha)) = (
            iv.get("b2_ca_prime"),
            iv.get("nu_prime"),
            iv.get("alpha_im_0"),
        ) {
            let imax = std::cmp::max(Rat::zero(), rat(3) * alpha - rat(1));
            let spread = primed - nu_p;
            if let Some(b1x) = iv.get("b1_xbar") {
                rows.push(BoundRow::le(
                    "4-12",
                    iv.get("delta_prime").cloned(),
                    rat(2) * b1p - b1x + spread.clone() + imax.clone(),
                ));
            }
            if let (Some(b3x), Some(beta)) = (iv.get("b3_xbar"), iv.get("beta")) {
                let lhs = iv
                    .get("b2_zero_xbar")
                    .zip(iv.get("delta_prime"))
                    .map(|(a, b)| a + b);
                rows.push(BoundRow::le(
                    "4-13",
                    lhs,
                    rat(2) * b1p - b3x + spread + beta + imax,
                ));
            }
        }
    }

    if rows.is_empty() {
        return Err(BoundsError::Invalid(
            "no Smith row has its inputs: supply the involution tables (b_z_*/b_f_*/b_qf_*), \
             a dimension d with Betti data, or the b1_cp_z2 lemma block"
                .into(),
        ));
    }
    Ok(BoundsReport { rows })
}

/// The exact halving identities for quotients by the conjugation, their
/// trace form (rows 8-4/8-5), and the local versions on a Milnor fibre
/// (rows 3-12/3-13).  All outputs are checked to be integral — a
/// half-integer Betti number flags inconsistent inputs.
pub fn hodge_identities(iv: &InvariantBundle) -> BResult<BoundsReport> {
    iv.validate()?;
    let v = "hodge";
    let mut rows = Vec::new();
    let integral = |value: &Rat, what: &str| -> BResult<()> {
        if !value.is_integer() {
            return Err(BoundsError::Inconsistent(format!(
                "{what} evaluates to {}, which is not an integer; the inputs cannot come \
                 from an actual variety",
                rat_to_string(value)
            )));
        }
        Ok(())
    };

    if iv.get("b_d_plus_cx").is_some() || iv.get("b_d_minus_cx").is_some() {
        let vk = iv.varkappa_i8(v)?;
        let chi = iv.require("chi_rx", v)?;
        let t = match (iv.get("t_cx"), iv.get("complete_intersection")) {
            (Some(t), _) => t.clone(),
            (None, Some(flag)) if !flag.is_zero() => iv.kappa(v)?,
            _ => return Err(BoundsError::MissingField {
                field: "t_cx".into(),
                variant: v.into(),
            }),
        };
        let b_opp = iv.require(&format!("b_d_{}_cx", sign_word(-vk)), v)?;
        let b_same = iv.require(&format!("b_d_{}_cx", sign_word(vk)), v)?;
        let first = half(b_opp - t.clone());
        let second = half(b_same + chi - t);
        integral(&first, "the -varkappa half of the quotient")?;
        integral(&second, "the varkappa half of the quotient")?;
        let lhs_first = iv.get(&format!("b_d_{}_xbar", sign_word(-vk))).cloned();
        let lhs_second = iv.get(&format!("b_d_{}_xbar", sign_word(vk))).cloned();
        rows.push(BoundRow::eq("8-6", lhs_first, first));
        rows.push(BoundRow::eq("8-7", lhs_second, second));
    }

    if let (Some(chi_xbar), Some(sigma_xbar), Some(chi_cx), Some(sigma_cx)) = (
        iv.get("chi_xbar"),
        iv.get("sigma_xbar"),
        iv.get("chi_cx"),
        iv.get("sigma_cx"),
    ) {
        let vk = iv.varkappa_i8(v)?;
        let chi_rx = iv.require("chi_rx", v)?;
        let t_fun = |sign: i8| -> (Rat, Rat) {
            let s = rat(i64::from(sign));
            (
                chi_xbar + s.clone() * sigma_xbar,
                chi_cx + s * sigma_cx,
            )
        };
        let (bar_opp, cx_opp) = t_fun(-vk);
        let (bar_same, cx_same) = t_fun(vk);
        rows.push(BoundRow::eq("8-4", Some(bar_opp - half(cx_opp)), Rat::zero()));
        rows.push(BoundRow::eq("8-5", Some(bar_same - half(cx_same)), chi_rx));
    }

    if iv.get("mu_plus").is_some() && iv.get("mu_minus").is_some() && iv.get("mu_zero").is_some() {
        let vk = iv.varkappa_i8(v)?;
        let local = half(iv.mu_signed(-vk, v)? + iv.require("mu_zero", v)?);
        integral(&local, "the local -varkappa half")?;
        let lhs = iv
            .get(&format!("b_d_{}_ubar", sign_word(-vk)))
            .zip(iv.get("b_d_zero_ubar"))
            .map(|(a, b)| a + b);
        rows.push(BoundRow::eq("3-12", lhs, local));
        if let Some(chi_ru) = iv.get("chi_ru") {
            let value = half(iv.mu_signed(vk, v)? + chi_ru - rat(1));
            integral(&value, "the local varkappa half")?;
            let lhs = iv.get(&format!("b_d_{}_ubar", sign_word(vk))).cloned();
            rows.push(BoundRow::eq("3-13", lhs, value));
        }
    }

    if rows.is_empty() {
        return Err(BoundsError::Invalid(
            "no identity has its inputs: supply b_d_plus_cx/b_d_minus_cx with chi_rx and t, \
             the trace data (chi/sigma of the variety and its quotient), or a Milnor splitting"
                .into(),
        ));
    }
    Ok(BoundsReport { rows })
}

/// The Euler-characteristic estimates with no assumption on the
/// singularities: the 𝔭-estimate, the one-sided row 4-31, the general
/// two-sided bound, and its specialization 4-32 to the projective
/// plane.
pub fn petrovskii_general(iv: &InvariantBundle) -> BResult<BoundsReport> {
    iv.validate()?;
    let v = "petrovskii";
    let mut rows = Vec::new();
    let triple_a = |iv: &InvariantBundle| -> Option<Rat> {
        Some(min_of(vec![
            iv.get("b0_tilde_ca_dprime")?.clone(),
            iv.get("b0_tilde_ca")? + rat(2) * iv.get("beta")?,
            iv.get("b2_ca")? - iv.get("nu")?,
        ]))
    };

    if let (Some(b2p), Some(lkl), Some(t2), Some(triple)) = (
        iv.get("b2_plus_cp"),
        iv.get("l_k_plus_l"),
        iv.get("t2"),
        triple_a(iv),
    ) {
        let rhs = b2p + half(lkl.clone()) + t2 + half(triple);
        rows.push(BoundRow::le("4.4:frak-p", iv.frak_p(v).ok(), rhs));
    }

    if let (Some(b2m), Some(lk3l), Some(t2), Some(beta), Some(mu_m), Some(triple)) = (
        iv.get("b2_minus_cp"),
        iv.get("l_k_plus_3l"),
        iv.get("t2"),
        iv.get("beta"),
        iv.get("mu_minus"),
        triple_a(iv),
    ) {
        let rhs = b2m + half(lk3l.clone()) - half(mu_m.clone()) + t2 - beta + half(triple);
        let lhs = iv.get("chi_rx").map(|chi| -half(chi.clone()));
        rows.push(BoundRow::le("4-31", lhs, rhs));
    }

    let swing = iv
        .get("chi_rp_plus")
        .zip(iv.get("chi_rp_minus"))
        .map(|(a, b)| (a - b).abs());
    if let (Some(b2m), Some(chi_rp), Some(lk3l), Some(mu_m), Some(t2), Some(b0dd), Some(beta), Some(b0), Some(b2ca), Some(nu)) = (
        iv.get("b2_minus_cp"),
        iv.get("chi_rp"),
        iv.get("l_k_plus_3l"),
        iv.get("mu_minus"),
        iv.get("t2"),
        iv.get("b0_tilde_ca_dprime"),
        iv.get("beta"),
        iv.get("b0_tilde_ca"),
        iv.get("b2_ca"),
        iv.get("nu"),
    ) {
        let two_beta = rat(2) * beta;
        let m = min_of(vec![
            b0dd - two_beta.clone(),
            b0.clone(),
            b2ca - nu - two_beta,
        ]);
        let rhs = rat(2) * b2m + chi_rp + lk3l + rat(2) * t2 - mu_m + m;
        rows.push(BoundRow::le("4.4:two-sided", swing.clone(), rhs));
    }

    if let (Some(k), Some(mu_m), Some(b0dd), Some(beta), Some(b2ca), Some(nu)) = (
        iv.get("k"),
        iv.get("mu_minus"),
        iv.get("b0_tilde_ca_dprime"),
        iv.get("beta"),
        iv.get("b2_ca"),
        iv.get("nu"),
    ) {
        let two_beta = rat(2) * beta;
        let m = min_of(vec![
            Rat::zero(),
            b0dd - two_beta.clone(),
            b2ca - nu - two_beta,
        ]);
        let rhs = rat(3) * k.clone() * (k - rat(1)) + rat(1) - mu_m + m;
        rows.push(BoundRow::le("4-32", swing, rhs));
    }

    if rows.is_empty() {
        return Err(BoundsError::Invalid(
            "no Euler-characteristic row has its inputs: supply the surface data \
             (b2 of the ambient, intersection numbers, t2) with the branch-curve counts"
                .into(),
        ));
    }
    Ok(BoundsReport { rows })
}

/// Oval-count bounds for quasi-cuspidal even curves: the four rows with
/// component data (emitted when r and ν are supplied) followed by the
/// four cuspidal rows.  The flag `improve_nonparabolic` opts into the
/// sharper constants available when not all components are parabolic.
pub fn cuspidal_bounds(iv: &InvariantBundle) -> BResult<BoundsReport> {
    iv.validate()?;
    let v = "cuspidal";
    let k_rat = iv.require("k", v)?;
    if !k_rat.is_integer() || k_rat < rat(1) {
        return Err(BoundsError::Invalid(
            "the degree parameter k must be a positive integer".into(),
        ));
    }
    let k_int: i64 = k_rat
        .to_integer()
        .try_into()
        .map_err(|_| BoundsError::Invalid("k is unreasonably large".into()))?;
    let mu_plus = iv.require("mu_plus", v)?;
    let mu_minus = iv.require("mu_minus", v)?;
    let p = [
        iv.require("p_plus", v)?,
        iv.require("p_zero", v)?,
        iv.require("p_minus", v)?,
    ];
    let n = [
        iv.require("n_plus", v)?,
        iv.require("n_zero", v)?,
        iv.require("n_minus", v)?,
    ];
    let eps_plus = iv.require("eps_plus", v)?;
    let eps_zero = iv.require("eps_zero", v)?;
    let eps_minus = iv.require("eps_minus", v)?;
    let eps_sum = eps_plus.clone() + eps_zero + eps_minus.clone();
    let expected = rat(k_int % 2);
    if eps_sum != expected {
        return Err(BoundsError::Inconsistent(format!(
            "indicator inconsistency: the type indicators sum to {} but must sum to {} \
             for k = {k_int}",
            rat_to_string(&eps_sum),
            rat_to_string(&expected)
        )));
    }
    let improve = iv.get("improve_nonparabolic").is_some_and(|f| !f.is_zero());

    let base_plus = half((k_rat.clone() - rat(1)) * (k_rat.clone() - rat(2))) - half(mu_plus);
    let base_minus = half(rat(3) * k_rat.clone() * (k_rat - rat(1))) - half(mu_minus);
    let p_total = p[0].clone() + p[1].clone() + p[2].clone();
    let n_total = n[0].clone() + n[1].clone() + n[2].clone();
    let lhs_r1 = n[2].clone() + n[1].clone() + eps_minus;
    let lhs_r2 = p[2].clone() + p[1].clone();
    let lhs_r3 = n_total - p[2].clone();
    let lhs_r4 = p_total - n[2].clone() + eps_plus;

    let mut rows = Vec::new();
    if let (Some(r), Some(nu)) = (iv.get("r"), iv.get("nu")) {
        let excess = r - nu;
        // ½(1 − (−1)^k), sharpened to 1 under the opt-in flag.
        let s = if improve { rat(1) } else { rat(k_int % 2) };
        rows.push(BoundRow::le(
            "6.3.1:r1",
            Some(lhs_r1.clone()),
            base_plus.clone() + min_of(vec![n[1].clone(), excess.clone() - rat(1)]),
        ));
        rows.push(BoundRow::le(
            "6.3.1:r2",
            Some(lhs_r2.clone()),
            base_plus.clone() + min_of(vec![p[1].clone(), excess.clone() - s.clone()]),
        ));
        rows.push(BoundRow::le(
            "6.3.1:r3",
            Some(lhs_r3.clone()),
            base_minus.clone() + min_of(vec![p[1].clone(), excess.clone() - s]),
        ));
        rows.push(BoundRow::le(
            "6.3.1:r4",
            Some(lhs_r4.clone()),
            base_minus.clone() + min_of(vec![n[1].clone() + rat(1), excess]),
        ));
    }
    // ½(1 + (−1)^k), dropped under the opt-in flag.
    let t = if improve { rat(0) } else { rat(1 - k_int % 2) };
    rows.push(BoundRow::le("6.3.2:r1", Some(lhs_r1), base_plus.clone()));
    rows.push(BoundRow::le("6.3.2:r2", Some(lhs_r2), base_plus + t.clone()));
    rows.push(BoundRow::le("6.3.2:r3", Some(lhs_r3), base_minus.clone() + t));
    rows.push(BoundRow::le("6.3.2:r4", Some(lhs_r4), base_minus + rat(1)));
    Ok(BoundsReport { rows })
}
