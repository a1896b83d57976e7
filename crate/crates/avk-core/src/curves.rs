//! Topological models of real plane curves with isolated singularities and
//! the global partition forms they induce.
//!
//! A [`CurveModel`] records the combinatorics a modeler reads off a picture:
//! the partition components of `RP² ∖ RA` with their signs and compactly
//! supported Euler characteristics, plus one bound singularity per singular
//! point — a local residue form on the link sectors together with the map
//! sending each sector into the component that absorbs it.  From that data
//! the global form is assembled exactly: per-point residue blocks accumulate
//! into the region pairing and each diagonal picks up `−2χ_c` of the open
//! component.  No polynomial geometry is computed here; the model *is* the
//! input, and the redundant Euler bookkeeping catches most encoding slips.
//!
//! The second half of the module is the sharpness machinery for reducible
//! curves: exact Milnor/Plücker bookkeeping, the gap defect `Δ_ε` and its
//! per-block refinement, radical-rank comparisons against the component
//! count, and the two shipped pentic-plus-line encodings whose forms decide
//! which mutual position of the cusps and the line can actually occur.

use std::collections::{BTreeMap, BTreeSet};

use num::Zero;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::arrangements::PhiResult;
use crate::localforms::{FormKind, LocalForm};
use crate::morsify::{catalog, AgDiagram, AgRegion};
use crate::qforms::{
    display_rat, rat, rat_from_json, rat_to_string, ratio, Inertia, Rat, SymmetricForm,
};

#[derive(Debug, Error)]
pub enum CurveError {
    #[error("invalid curve model: {0}")]
    Invalid(String),
    #[error("sector `{sector}` at `{point}` is bound to unknown region `{region}`")]
    UnknownRegion {
        point: String,
        sector: String,
        region: String,
    },
    #[error(
        "sector `{sector}` at `{point}` has sign {sector_sign:+} but is bound to \
         region `{region}` of sign {region_sign:+}"
    )]
    SignMismatch {
        point: String,
        sector: String,
        sector_sign: i8,
        region: String,
        region_sign: i8,
    },
    #[error("residue at `{point}` couples the opposite-sign sectors `{a}` and `{b}`")]
    CrossSign { point: String, a: String, b: String },
    #[error("no singularity named `{0}` in the catalog")]
    UnknownCatalogEntry(String),
    #[error(
        "Euler bookkeeping failed: sum of chi_c over regions minus sum of (rho_x - 1) \
         over points is {got}, expected 1"
    )]
    ChiInconsistent { got: String },
    #[error("{0}")]
    Form(String),
}

type CResult<T> = Result<T, CurveError>;

/// One partition component of `RP² ∖ RA`.
#[derive(Debug, Clone)]
pub struct CurveRegion {
    pub label: String,
    pub sign: i8,
    /// `χ_c` of the open component (the closure minus all of `RA`).
    pub chi_c_open: Rat,
}

impl CurveRegion {
    pub fn new(label: &str, sign: i8, chi_c_open: Rat) -> Self {
        CurveRegion {
            label: label.to_string(),
            sign,
            chi_c_open,
        }
    }
}

/// A singular point of `RA` together with its local residue form and the
/// assignment of link sectors to the surrounding partition components.
#[derive(Debug, Clone)]
pub struct BoundSingularity {
    pub point: String,
    pub residue: LocalForm,
    pub to_region: BTreeMap<String, String>,
    /// Side of the twisting cycle Ω per sector, for points lying on Ω.
    pub omega_sides: BTreeMap<String, i8>,
}

impl BoundSingularity {
    pub fn new(point: &str, residue: LocalForm, bindings: &[(&str, &str)]) -> Self {
        BoundSingularity {
            point: point.to_string(),
            residue,
            to_region: bindings
                .iter()
                .map(|(s, r)| (s.to_string(), r.to_string()))
                .collect(),
            omega_sides: BTreeMap::new(),
        }
    }

    pub fn with_omega_side(mut self, sector: &str, side: i8) -> Self {
        self.omega_sides.insert(sector.to_string(), side);
        self
    }
}

/// A complete combinatorial model of a real curve of degree `2k` in `RP²`.
#[derive(Debug, Clone)]
pub struct CurveModel {
    k: u32,
    regions: Vec<CurveRegion>,
    points: Vec<BoundSingularity>,
}

impl CurveModel {
    pub fn new(
        k: u32,
        regions: Vec<CurveRegion>,
        points: Vec<BoundSingularity>,
    ) -> CResult<CurveModel> {
        let m = CurveModel { k, regions, points };
        m.validate()?;
        Ok(m)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn regions(&self) -> &[CurveRegion] {
        &self.regions
    }

    pub fn points(&self) -> &[BoundSingularity] {
        &self.points
    }

    fn validate(&self) -> CResult<()> {
        if self.regions.is_empty() {
            return Err(CurveError::Invalid("model needs at least one region".into()));
        }
        let mut region_sign: BTreeMap<&str, i8> = BTreeMap::new();
        for r in &self.regions {
            if r.label.is_empty() {
                return Err(CurveError::Invalid("empty region label".into()));
            }
            if r.sign != 1 && r.sign != -1 {
                return Err(CurveError::Invalid(format!(
                    "region `{}` must have sign ±1",
                    r.label
                )));
            }
            if region_sign.insert(&r.label, r.sign).is_some() {
                return Err(CurveError::Invalid(format!(
                    "duplicate region label `{}`",
                    r.label
                )));
            }
        }
        let mut seen_points = BTreeSet::new();
        for p in &self.points {
            if !seen_points.insert(p.point.as_str()) {
                return Err(CurveError::Invalid(format!(
                    "duplicate point label `{}`",
                    p.point
                )));
            }
            let q = &p.residue;
            let n = q.labels.len();
            if n == 0 {
                return Err(CurveError::Invalid(format!(
                    "residue at `{}` has no sectors",
                    p.point
                )));
            }
            let sectors: BTreeSet<&str> = q.labels.iter().map(String::as_str).collect();
            if sectors.len() != n {
                return Err(CurveError::Invalid(format!(
                    "duplicate sector label at `{}`",
                    p.point
                )));
            }
            if q.signs.len() != n || q.matrix.len() != n || q.matrix.iter().any(|r| r.len() != n) {
                return Err(CurveError::Invalid(format!(
                    "residue at `{}` has mismatched dimensions",
                    p.point
                )));
            }
            for i in 0..n {
                if q.signs[i] != 1 && q.signs[i] != -1 {
                    return Err(CurveError::Invalid(format!(
                        "sector `{}` at `{}` must have sign ±1",
                        q.labels[i], p.point
                    )));
                }
                for j in 0..i {
                    if q.matrix[i][j] != q.matrix[j][i] {
                        return Err(CurveError::Invalid(format!(
                            "residue at `{}` is not symmetric",
                            p.point
                        )));
                    }
                }
            }
            for i in 0..n {
                for j in 0..n {
                    if q.signs[i] != q.signs[j] && !q.matrix[i][j].is_zero() {
                        return Err(CurveError::CrossSign {
                            point: p.point.clone(),
                            a: q.labels[i].clone(),
                            b: q.labels[j].clone(),
                        });
                    }
                }
            }
            for key in p.to_region.keys() {
                if !sectors.contains(key.as_str()) {
                    return Err(CurveError::Invalid(format!(
                        "binding for unknown sector `{key}` at `{}`",
                        p.point
                    )));
                }
            }
            for (i, sector) in q.labels.iter().enumerate() {
                let region = p.to_region.get(sector).ok_or_else(|| {
                    CurveError::Invalid(format!(
                        "sector `{sector}` at `{}` is not bound to a region",
                        p.point
                    ))
                })?;
                let rsign = *region_sign.get(region.as_str()).ok_or_else(|| {
                    CurveError::UnknownRegion {
                        point: p.point.clone(),
                        sector: sector.clone(),
                        region: region.clone(),
                    }
                })?;
                if rsign != q.signs[i] {
                    return Err(CurveError::SignMismatch {
                        point: p.point.clone(),
                        sector: sector.clone(),
                        sector_sign: q.signs[i],
                        region: region.clone(),
                        region_sign: rsign,
                    });
                }
            }
            for (key, side) in &p.omega_sides {
                if !sectors.contains(key.as_str()) {
                    return Err(CurveError::Invalid(format!(
                        "omega side for unknown sector `{key}` at `{}`",
                        p.point
                    )));
                }
                if *side != 1 && *side != -1 {
                    return Err(CurveError::Invalid(format!(
                        "omega side of `{key}` at `{}` must be ±1",
                        p.point
                    )));
                }
            }
        }
        // Additivity of χ_c over RP²: each point of RA contributes ρ_x − 1
        // to χ(RA) with the opposite sign, so a full model must satisfy
        // Σ χ_c(W_i∖RA) − Σ (ρ_x − 1) = χ(RP²) = 1.
        let mut total = Rat::zero();
        for r in &self.regions {
            total += r.chi_c_open.clone();
        }
        for p in &self.points {
            let rho = (p.residue.labels.len() / 2) as i64;
            total -= rat(rho - 1);
        }
        if total != rat(1) {
            return Err(CurveError::ChiInconsistent {
                got: display_rat(&total),
            });
        }
        Ok(())
    }

    /// Global partition form: per-point residue contributions (twisted by Ω
    /// where sides are recorded) plus `−2χ_c` on the diagonal.
    pub fn assemble_phi(&self) -> CResult<PhiResult> {
        let labels: Vec<String> = self.regions.iter().map(|r| r.label.clone()).collect();
        let signs: Vec<i8> = self.regions.iter().map(|r| r.sign).collect();
        let pos: BTreeMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let n = labels.len();
        let mut gram = vec![vec![Rat::zero(); n]; n];
        for p in &self.points {
            let q = &p.residue;
            for (si, sl) in q.labels.iter().enumerate() {
                let ri = pos[p.to_region[sl].as_str()];
                for (sj, tl) in q.labels.iter().enumerate() {
                    let v = &q.matrix[si][sj];
                    if v.is_zero() {
                        continue;
                    }
                    let rj = pos[p.to_region[tl].as_str()];
                    let wi = p.omega_sides.get(sl).copied().unwrap_or(0);
                    let wj = p.omega_sides.get(tl).copied().unwrap_or(0);
                    if wi * wj == -1 {
                        gram[ri][rj] -= v.clone();
                    } else {
                        gram[ri][rj] += v.clone();
                    }
                }
            }
        }
        for (i, r) in self.regions.iter().enumerate() {
            gram[i][i] -= rat(2) * r.chi_c_open.clone();
        }
        PhiResult::assemble(labels, &signs, gram, None, "curve")
            .map_err(|e| CurveError::Form(e.to_string()))
    }

    /// The doubled form on the positive components only: residue entries are
    /// doubled and the diagonal picks up `−4χ_c`.  For models whose points
    /// all carry sign-split residues this equals `2·φ₊` identically, which is
    /// the standard coherence check between the two assembly routes.
    pub fn assemble_phi_bar(&self) -> CResult<SymmetricForm> {
        let plus: Vec<(usize, &CurveRegion)> = self
            .regions
            .iter()
            .enumerate()
            .filter(|(_, r)| r.sign == 1)
            .collect();
        if plus.is_empty() {
            return Ok(SymmetricForm::empty());
        }
        let labels: Vec<String> = plus.iter().map(|(_, r)| r.label.clone()).collect();
        let slot: BTreeMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let n = labels.len();
        let mut gram = vec![vec![Rat::zero(); n]; n];
        for p in &self.points {
            let q = &p.residue;
            for (si, sl) in q.labels.iter().enumerate() {
                if q.signs[si] != 1 {
                    continue;
                }
                let ri = slot[p.to_region[sl].as_str()];
                for (sj, tl) in q.labels.iter().enumerate() {
                    if q.signs[sj] != 1 {
                        continue;
                    }
                    let v = &q.matrix[si][sj];
                    if v.is_zero() {
                        continue;
                    }
                    let rj = slot[p.to_region[tl].as_str()];
                    let wi = p.omega_sides.get(sl).copied().unwrap_or(0);
                    let wj = p.omega_sides.get(tl).copied().unwrap_or(0);
                    let doubled = rat(2) * v.clone();
                    if wi * wj == -1 {
                        gram[ri][rj] -= doubled;
                    } else {
                        gram[ri][rj] += doubled;
                    }
                }
            }
        }
        for (i, (_, r)) in plus.iter().enumerate() {
            gram[i][i] -= rat(4) * r.chi_c_open.clone();
        }
        SymmetricForm::new(labels, gram).map_err(|e| CurveError::Form(e.to_string()))
    }

    pub fn to_json(&self) -> Value {
        let regions: Vec<Value> = self
            .regions
            .iter()
            .map(|r| {
                json!({
                    "label": r.label,
                    "sign": r.sign,
                    "chi_c": rat_to_string(&r.chi_c_open),
                })
            })
            .collect();
        let points: Vec<Value> = self
            .points
            .iter()
            .map(|p| {
                let q = &p.residue;
                let matrix: Vec<Vec<String>> = q
                    .matrix
                    .iter()
                    .map(|row| row.iter().map(rat_to_string).collect())
                    .collect();
                let mut obj = Map::new();
                obj.insert("point".into(), json!(p.point));
                obj.insert(
                    "residue".into(),
                    json!({
                        "labels": q.labels,
                        "signs": q.signs,
                        "matrix": matrix,
                    }),
                );
                obj.insert("to_region".into(), json!(p.to_region));
                if !p.omega_sides.is_empty() {
                    obj.insert("omega_sides".into(), json!(p.omega_sides));
                }
                Value::Object(obj)
            })
            .collect();
        json!({
            "schema": "avk-1",
            "k": self.k,
            "regions": regions,
            "points": points,
        })
    }

    pub fn from_json(v: &Value) -> CResult<CurveModel> {
        let k = v
            .get("k")
            .and_then(Value::as_u64)
            .ok_or_else(|| CurveError::Invalid("missing field `k`".into()))? as u32;
        let mut regions = Vec::new();
        for rv in json_array(v, "regions")? {
            let label = json_str(rv, "label")?;
            let sign = json_i64(rv, "sign")? as i8;
            let chi = rv
                .get("chi_c")
                .ok_or_else(|| CurveError::Invalid("region missing `chi_c`".into()))?;
            let chi = rat_from_json(chi).map_err(|e| CurveError::Invalid(e.to_string()))?;
            regions.push(CurveRegion::new(&label, sign, chi));
        }
        let mut points = Vec::new();
        for pv in json_array(v, "points")? {
            let point = json_str(pv, "point")?;
            let rv = pv
                .get("residue")
                .ok_or_else(|| CurveError::Invalid("point missing `residue`".into()))?;
            let residue = if let Some(name) = rv.get("catalog").and_then(Value::as_str) {
                named_residue(name)?
            } else {
                let labels: Vec<String> = json_array(rv, "labels")?
                    .iter()
                    .map(|l| {
                        l.as_str()
                            .map(str::to_string)
                            .ok_or_else(|| CurveError::Invalid("sector label must be a string".into()))
                    })
                    .collect::<CResult<_>>()?;
                let signs: Vec<i8> = json_array(rv, "signs")?
                    .iter()
                    .map(|s| {
                        s.as_i64()
                            .map(|x| x as i8)
                            .ok_or_else(|| CurveError::Invalid("sector sign must be ±1".into()))
                    })
                    .collect::<CResult<_>>()?;
                let mut matrix = Vec::new();
                for row in json_array(rv, "matrix")? {
                    let row = row
                        .as_array()
                        .ok_or_else(|| CurveError::Invalid("matrix row must be an array".into()))?
                        .iter()
                        .map(|e| rat_from_json(e).map_err(|e| CurveError::Invalid(e.to_string())))
                        .collect::<CResult<Vec<Rat>>>()?;
                    matrix.push(row);
                }
                LocalForm {
                    kind: FormKind::Q,
                    ambient_d: 2,
                    labels,
                    signs,
                    matrix,
                }
            };
            let mut to_region = BTreeMap::new();
            let bindings = pv
                .get("to_region")
                .and_then(Value::as_object)
                .ok_or_else(|| CurveError::Invalid("point missing `to_region`".into()))?;
            for (sector, region) in bindings {
                let region = region
                    .as_str()
                    .ok_or_else(|| CurveError::Invalid("region binding must be a string".into()))?;
                to_region.insert(sector.clone(), region.to_string());
            }
            let mut omega_sides = BTreeMap::new();
            if let Some(map) = pv.get("omega_sides").and_then(Value::as_object) {
                for (sector, side) in map {
                    let side = side
                        .as_i64()
                        .ok_or_else(|| CurveError::Invalid("omega side must be ±1".into()))?;
                    omega_sides.insert(sector.clone(), side as i8);
                }
            }
            points.push(BoundSingularity {
                point,
                residue,
                to_region,
                omega_sides,
            });
        }
        CurveModel::new(k, regions, points)
    }
}

fn json_array<'a>(v: &'a Value, key: &str) -> CResult<&'a Vec<Value>> {
    v.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| CurveError::Invalid(format!("missing array `{key}`")))
}

fn json_str(v: &Value, key: &str) -> CResult<String> {
    v.get(key)
        .and_then(Value::as_str)
        .map(str::to_string)
        .ok_or_else(|| CurveError::Invalid(format!("missing string `{key}`")))
}

fn json_i64(v: &Value, key: &str) -> CResult<i64> {
    v.get(key)
        .and_then(Value::as_i64)
        .ok_or_else(|| CurveError::Invalid(format!("missing integer `{key}`")))
}

/// Package a divide diagram's boundary residue as a local form on the link
/// sectors, signs recovered from the positive block.
pub fn residue_from_diagram(d: &AgDiagram) -> CResult<LocalForm> {
    let out = d
        .boundary_residue()
        .map_err(|e| CurveError::Form(e.to_string()))?;
    let labels: Vec<String> = out.q.basis().to_vec();
    let signs: Vec<i8> = labels
        .iter()
        .map(|l| if out.q_plus.label_index(l).is_ok() { 1 } else { -1 })
        .collect();
    Ok(LocalForm {
        kind: FormKind::Q,
        ambient_d: 2,
        labels,
        signs,
        matrix: out.q.gram().to_vec(),
    })
}

pub fn residue_from_catalog(name: &str) -> CResult<LocalForm> {
    let desc = catalog(name).ok_or_else(|| CurveError::UnknownCatalogEntry(name.to_string()))?;
    residue_from_diagram(&desc.diagram)
}

/// Divide diagram for `x·(y² − x⁵)`: the cusp factor's chained double loop
/// with the line branch threaded through, μ = 7, two real branches.  The
/// boundary residue continues the odd-D series: the big outer region and the
/// sliver between the branches carry the positive block `[[5,1],[1,1]]`, the
/// two flanks the negative block `[[7/4,5/4],[5/4,7/4]]`.
pub fn d7_minus_diagram() -> AgDiagram {
    let inner = vec![
        AgRegion::new("Iu", -1, rat(1)),
        AgRegion::new("Il", 1, rat(1)),
        AgRegion::new("R", -1, rat(1)),
    ];
    let outer = vec![
        AgRegion::new("Ou", 1, rat(-1)),
        AgRegion::new("Ws", 1, rat(0)),
        AgRegion::new("Dl", -1, rat(0)),
        AgRegion::new("Dr", -1, rat(0)),
    ];
    let saddles = vec![
        ("Ou", "Il", 2),
        ("Ws", "Il", 1),
        ("Iu", "Dl", 1),
        ("Iu", "Dr", 1),
        ("Dl", "Dr", 1),
        ("Iu", "R", 1),
    ];
    let boundary = vec![
        ("Ou", 2),
        ("Il", 3),
        ("Ws", 1),
        ("Iu", 3),
        ("Dl", 2),
        ("Dr", 2),
        ("R", 1),
    ];
    AgDiagram::new(2, inner, outer, saddles, boundary).expect("the D7 divide is well formed")
}

/// Residue lookup covering the catalog plus the two D₇ germs needed by the
/// pentic models.
pub fn named_residue(name: &str) -> CResult<LocalForm> {
    match name {
        "D7-" => residue_from_diagram(&d7_minus_diagram()),
        "D7+" => residue_from_diagram(&d7_minus_diagram().negate()),
        _ => residue_from_catalog(name),
    }
}

/// One exact identity-check line of a validation report.
#[derive(Debug, Clone)]
pub struct CheckLine {
    pub id: String,
    pub lhs: Rat,
    pub rhs: Rat,
}

impl CheckLine {
    pub fn pass(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub lines: Vec<CheckLine>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(CheckLine::pass)
    }

    pub fn failures(&self) -> Vec<&CheckLine> {
        self.lines.iter().filter(|l| !l.pass()).collect()
    }
}

/// Per-perturbation topological data of the curve's double covering.
#[derive(Debug, Clone)]
pub struct SideData {
    pub chi_rx: i64,
    pub b1_int_rp: i64,
    pub b2_rp: i64,
    pub n_omega: i64,
    pub n_regions: i64,
}

#[derive(Debug, Clone)]
pub struct SingularPointData {
    pub label: String,
    pub mu: i64,
    /// Local branches over C.
    pub r_x: i64,
    /// Local branches over R.
    pub rho_x: i64,
    pub delta_x: i64,
    pub real: bool,
}

/// The numerical invariants of a degree-2k real curve needed by the gap and
/// sharpness bookkeeping.  Everything is supplied by the caller; the
/// consistency relations live in [`milnor_pluecker_validate`].
#[derive(Debug, Clone)]
pub struct CurveInvariants {
    pub k: i64,
    /// Irreducible components of the complex curve.
    pub r: i64,
    pub nu: i64,
    /// Total geometric genus of the components.
    pub g: i64,
    pub g_a: i64,
    pub mu_plus: i64,
    pub mu_minus: i64,
    pub mu_zero: i64,
    pub beta: i64,
    pub br_im: i64,
    pub alpha_im: i64,
    pub alpha_plus: i64,
    pub b2_cp: i64,
    pub b2_plus_cp: i64,
    pub b2_minus_cp: i64,
    pub chi_ra: i64,
    pub b0_tilde_ca: i64,
    pub b0_tilde_ca_prime: i64,
    pub b0_tilde_ca_dprime: i64,
    pub plus: SideData,
    pub minus: SideData,
    pub points: Vec<SingularPointData>,
}

impl CurveInvariants {
    pub fn side(&self, eps: i8) -> &SideData {
        if eps >= 0 {
            &self.plus
        } else {
            &self.minus
        }
    }

    pub fn frak_p(&self) -> Rat {
        rat(self.mu_plus + self.mu_zero) / rat(2)
    }

    /// `L·(K+L)` on the projective plane for the half-class of a degree-2k
    /// curve.
    pub fn l_dot_k_plus_l(&self) -> i64 {
        self.k * (self.k - 3)
    }

    /// `L·(K+3L)` on the projective plane for the same half-class.
    pub fn l_dot_k_plus_3l(&self) -> i64 {
        3 * self.k * (self.k - 1)
    }

    pub fn to_json(&self) -> Value {
        let side = |s: &SideData| {
            json!({
                "chi_rx": s.chi_rx,
                "b1_int_rp": s.b1_int_rp,
                "b2_rp": s.b2_rp,
                "n_omega": s.n_omega,
                "n_regions": s.n_regions,
            })
        };
        let points: Vec<Value> = self
            .points
            .iter()
            .map(|p| {
                json!({
                    "label": p.label,
                    "mu": p.mu,
                    "r_x": p.r_x,
                    "rho_x": p.rho_x,
                    "delta_x": p.delta_x,
                    "real": p.real,
                })
            })
            .collect();
        json!({
            "schema": "avk-1",
            "k": self.k,
            "r": self.r,
            "nu": self.nu,
            "g": self.g,
            "g_a": self.g_a,
            "mu_plus": self.mu_plus,
            "mu_minus": self.mu_minus,
            "mu_zero": self.mu_zero,
            "beta": self.beta,
            "br_im": self.br_im,
            "alpha_im": self.alpha_im,
            "alpha_plus": self.alpha_plus,
            "b2_cp": self.b2_cp,
            "b2_plus_cp": self.b2_plus_cp,
            "b2_minus_cp": self.b2_minus_cp,
            "chi_ra": self.chi_ra,
            "b0_tilde_ca": self.b0_tilde_ca,
            "b0_tilde_ca_prime": self.b0_tilde_ca_prime,
            "b0_tilde_ca_dprime": self.b0_tilde_ca_dprime,
            "plus": side(&self.plus),
            "minus": side(&self.minus),
            "points": points,
        })
    }

    pub fn from_json(v: &Value) -> CResult<CurveInvariants> {
        let side = |key: &str| -> CResult<SideData> {
            let s = v
                .get(key)
                .ok_or_else(|| CurveError::Invalid(format!("missing object `{key}`")))?;
            Ok(SideData {
                chi_rx: json_i64(s, "chi_rx")?,
                b1_int_rp: json_i64(s, "b1_int_rp")?,
                b2_rp: json_i64(s, "b2_rp")?,
                n_omega: json_i64(s, "n_omega")?,
                n_regions: json_i64(s, "n_regions")?,
            })
        };
        let mut points = Vec::new();
        for pv in json_array(v, "points")? {
            points.push(SingularPointData {
                label: json_str(pv, "label")?,
                mu: json_i64(pv, "mu")?,
                r_x: json_i64(pv, "r_x")?,
                rho_x: json_i64(pv, "rho_x")?,
                delta_x: json_i64(pv, "delta_x")?,
                real: pv
                    .get("real")
                    .and_then(Value::as_bool)
                    .ok_or_else(|| CurveError::Invalid("missing boolean `real`".into()))?,
            });
        }
        Ok(CurveInvariants {
            k: json_i64(v, "k")?,
            r: json_i64(v, "r")?,
            nu: json_i64(v, "nu")?,
            g: json_i64(v, "g")?,
            g_a: json_i64(v, "g_a")?,
            mu_plus: json_i64(v, "mu_plus")?,
            mu_minus: json_i64(v, "mu_minus")?,
            mu_zero: json_i64(v, "mu_zero")?,
            beta: json_i64(v, "beta")?,
            br_im: json_i64(v, "br_im")?,
            alpha_im: json_i64(v, "alpha_im")?,
            alpha_plus: json_i64(v, "alpha_plus")?,
            b2_cp: json_i64(v, "b2_cp")?,
            b2_plus_cp: json_i64(v, "b2_plus_cp")?,
            b2_minus_cp: json_i64(v, "b2_minus_cp")?,
            chi_ra: json_i64(v, "chi_ra")?,
            b0_tilde_ca: json_i64(v, "b0_tilde_ca")?,
            b0_tilde_ca_prime: json_i64(v, "b0_tilde_ca_prime")?,
            b0_tilde_ca_dprime: json_i64(v, "b0_tilde_ca_dprime")?,
            plus: side("plus")?,
            minus: side("minus")?,
            points,
        })
    }
}

/// Exact Milnor/Plücker bookkeeping over the supplied singularity list:
/// per-point `δ = ½(μ + r − 1)`, the global double-point and branch counts,
/// `χ(RA)` from the real branch data, the Plücker relation
/// `g_a + (r − 1) = g + Σδ`, and the genus–degree value for plane curves.
pub fn milnor_pluecker_validate(ci: &CurveInvariants) -> ValidationReport {
    let mut lines = Vec::new();
    let mut sum_mu = 0i64;
    let mut sum_delta = 0i64;
    let mut sum_r1 = 0i64;
    let mut sum_rho1_real = 0i64;
    for p in &ci.points {
        lines.push(CheckLine {
            id: format!("milnor:{}", p.label),
            lhs: rat(2 * p.delta_x),
            rhs: rat(p.mu + p.r_x - 1),
        });
        sum_mu += p.mu;
        sum_delta += p.delta_x;
        sum_r1 += p.r_x - 1;
        if p.real {
            sum_rho1_real += p.rho_x - 1;
        }
    }
    lines.push(CheckLine {
        id: "relation:double-points".into(),
        lhs: rat(2 * sum_delta - sum_mu),
        rhs: rat(sum_r1),
    });
    lines.push(CheckLine {
        id: "relation:imaginary-branches".into(),
        lhs: rat(sum_r1 - sum_rho1_real),
        rhs: rat(2 * ci.br_im - 2 * ci.alpha_im),
    });
    lines.push(CheckLine {
        id: "relation:chi-ra".into(),
        lhs: rat(ci.chi_ra),
        rhs: rat(-sum_rho1_real),
    });
    lines.push(CheckLine {
        id: "relation:pluecker".into(),
        lhs: rat(ci.g_a + ci.r - 1),
        rhs: rat(ci.g + sum_delta),
    });
    lines.push(CheckLine {
        id: "relation:genus-degree".into(),
        lhs: rat(ci.g_a),
        rhs: rat((ci.k - 1) * (2 * ci.k - 1)),
    });
    ValidationReport { lines }
}

/// Total gap defect for the perturbation `ε`:
/// `Δ_ε = b₂(CP) − ν + g + br_im − (α_im + α₊) − b₁(Int RP_ε) + n_ω + b₂(RP_ε)`.
pub fn gap_delta(ci: &CurveInvariants, eps: i8) -> Rat {
    let s = ci.side(eps);
    rat(ci.b2_cp - ci.nu + ci.g + ci.br_im - (ci.alpha_im + ci.alpha_plus) - s.b1_int_rp
        + s.n_omega
        + s.b2_rp)
}

/// The gap defect split by eigenvalue sign, computed against an assembled
/// partition form.  Each block defect is the slack of the matching
/// inequality; the zero-block defect may be negative, the total never is.
#[derive(Debug, Clone)]
pub struct GapBreakdown {
    pub eps: i8,
    pub inertia: Inertia,
    pub delta_plus: Rat,
    pub delta_minus: Rat,
    pub delta_zero: Rat,
    pub delta_total: Rat,
}

impl GapBreakdown {
    pub fn sum_matches_total(&self) -> bool {
        self.delta_plus.clone() + self.delta_minus.clone() + self.delta_zero.clone()
            == self.delta_total
    }
}

pub fn gap_breakdown(ci: &CurveInvariants, eps: i8, phi: &PhiResult) -> GapBreakdown {
    let block = if eps >= 0 { &phi.plus } else { &phi.minus };
    let inertia = block.inertia();
    let s = ci.side(eps);
    let delta_plus = rat(ci.b2_plus_cp) + ratio(ci.l_dot_k_plus_l() - ci.mu_plus, 2)
        - rat(inertia.plus as i64);
    let delta_minus = rat(ci.b2_minus_cp)
        + ratio(ci.l_dot_k_plus_3l() + s.chi_rx - ci.mu_minus, 2)
        - rat(inertia.minus as i64);
    let delta_zero = rat(ci.r - ci.nu) - rat(inertia.zero as i64);
    GapBreakdown {
        eps,
        inertia,
        delta_plus,
        delta_minus,
        delta_zero,
        delta_total: gap_delta(ci, eps),
    }
}

/// Radical ranks of the two sign blocks against the expected corank `r − 1`
/// of a reducible curve satisfying the rational-components hypotheses.
#[derive(Debug, Clone)]
pub struct SharpnessReport {
    pub expected: usize,
    pub plus_radical: usize,
    pub minus_radical: usize,
}

impl SharpnessReport {
    pub fn plus_matches(&self) -> bool {
        self.plus_radical == self.expected
    }

    pub fn minus_matches(&self) -> bool {
        self.minus_radical == self.expected
    }
}

pub fn sharpness_check(m: &CurveModel, ci: &CurveInvariants) -> CResult<SharpnessReport> {
    let phi = m.assemble_phi()?;
    Ok(SharpnessReport {
        expected: (ci.r - 1).max(0) as usize,
        plus_radical: phi.plus.inertia().zero,
        minus_radical: phi.minus.inertia().zero,
    })
}

/// Verdict for one mutual position of the pentic's cusps and the line.
#[derive(Debug, Clone)]
pub struct PositionVerdict {
    pub position: String,
    pub sigma_zero_plus: usize,
    pub sigma_zero_minus: usize,
    pub verdict: &'static str,
    pub phi: PhiResult,
}

#[derive(Debug, Clone)]
pub struct PenticReport {
    /// `r − 1` for the pentic-plus-line sextic: its partition form must be
    /// degenerate with corank exactly this in any realizable position.
    pub expected_radical: usize,
    pub same_side: PositionVerdict,
    pub opposite_side: PositionVerdict,
}

/// Decide which mutual position of the two collinear cusps survives: a
/// reducible sextic forces a degenerate partition form, so an encoding whose
/// assembled form is nonsingular in both blocks cannot be realized.
pub fn pentic_prop_6_4_1(same: &CurveModel, opposite: &CurveModel) -> CResult<PenticReport> {
    let expected = 1usize;
    let judge = |position: &str, m: &CurveModel| -> CResult<PositionVerdict> {
        let phi = m.assemble_phi()?;
        let z_plus = phi.plus.inertia().zero;
        let z_minus = phi.minus.inertia().zero;
        let verdict = if z_plus + z_minus < expected {
            "excluded"
        } else {
            "consistent"
        };
        Ok(PositionVerdict {
            position: position.to_string(),
            sigma_zero_plus: z_plus,
            sigma_zero_minus: z_minus,
            verdict,
            phi,
        })
    };
    Ok(PenticReport {
        expected_radical: expected,
        same_side: judge("same-side", same)?,
        opposite_side: judge("opposite-side", opposite)?,
    })
}

/// The pentic with three cusps, two of them joined by a line that the curve
/// approaches from the *same* side near both cusps.  Regions: the component
/// `U` above the line absorbing both D₇ big regions, and the three negative
/// pockets `A`, `C`, `D` cut out below.
pub fn pentic_same_side_model() -> CResult<CurveModel> {
    let regions = vec![
        CurveRegion::new("U", 1, rat(1)),
        CurveRegion::new("A", -1, rat(1)),
        CurveRegion::new("C", -1, rat(1)),
        CurveRegion::new("D", -1, rat(1)),
    ];
    let points = vec![
        BoundSingularity::new(
            "x1",
            named_residue("D7-")?,
            &[("Ou", "U"), ("Ws", "U"), ("Dl", "A"), ("Dr", "C")],
        ),
        BoundSingularity::new(
            "x2",
            named_residue("D7-")?,
            &[("Ou", "U"), ("Ws", "U"), ("Dl", "C"), ("Dr", "D")],
        ),
        BoundSingularity::new(
            "y",
            named_residue("A1+")?,
            &[("Cl", "U"), ("Cr", "U"), ("T", "A"), ("B", "D")],
        ),
        BoundSingularity::new("x3", named_residue("A4-")?, &[("O", "U"), ("Cl", "C")]),
    ];
    CurveModel::new(3, regions, points)
}

/// The same sextic with the curve approaching the line from *opposite*
/// sides at the two collinear cusps: the D₇ at `x1` flips, a positive lens
/// appears next to it, and the negative region splits differently.
pub fn pentic_opposite_side_model() -> CResult<CurveModel> {
    let regions = vec![
        CurveRegion::new("lens", 1, rat(1)),
        CurveRegion::new("big", 1, rat(1)),
        CurveRegion::new("mid", -1, rat(1)),
        CurveRegion::new("far", -1, rat(1)),
    ];
    let points = vec![
        BoundSingularity::new(
            "x1",
            named_residue("D7+")?,
            &[("Dl", "lens"), ("Dr", "big"), ("Ou", "far"), ("Ws", "mid")],
        ),
        BoundSingularity::new(
            "x2",
            named_residue("D7-")?,
            &[("Ou", "big"), ("Ws", "big"), ("Dl", "mid"), ("Dr", "far")],
        ),
        BoundSingularity::new(
            "y",
            named_residue("A1+")?,
            &[("Cl", "lens"), ("Cr", "big"), ("T", "mid"), ("B", "far")],
        ),
        BoundSingularity::new("x3", named_residue("A4-")?, &[("O", "big"), ("Cl", "mid")]),
    ];
    CurveModel::new(3, regions, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangements::{enumerate_cells, phi_residue_route, Arrangement};
    use crate::qforms::ratio;

    fn conic_model() -> CurveModel {
        CurveModel::new(
            1,
            vec![
                CurveRegion::new("inside", -1, rat(1)),
                CurveRegion::new("outside", 1, rat(0)),
            ],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn conic_partition_form() {
        let m = conic_model();
        let phi = m.assemble_phi().unwrap();
        assert_eq!(phi.minus.dim(), 1);
        assert_eq!(*phi.minus.entry(0, 0), rat(-2));
        assert_eq!(phi.plus.dim(), 1);
        assert_eq!(*phi.plus.entry(0, 0), rat(0));
        let bar = m.assemble_phi_bar().unwrap();
        assert_eq!(bar.dim(), 1);
        assert_eq!(*bar.entry(0, 0), rat(0));
    }

    #[test]
    fn quartic_with_three_real_cusps_two_encodings() {
        // One oval through three real cusps; the sign of the defining
        // polynomial decides which cusp sector faces the bounded disc.
        let cusps = |residue: &str, inner_sector: &str, outer_sector: &str| -> CurveModel {
            let points = (1..=3)
                .map(|i| {
                    BoundSingularity::new(
                        &format!("c{i}"),
                        named_residue(residue).unwrap(),
                        &[(inner_sector, "I"), (outer_sector, "O")],
                    )
                })
                .collect();
            CurveModel::new(
                2,
                vec![
                    CurveRegion::new("I", -1, rat(1)),
                    CurveRegion::new("O", 1, rat(0)),
                ],
                points,
            )
            .unwrap()
        };
        // Negative cusp sectors inside: the inner diagonal 3·(2/3) − 2 = 0
        // is parabolic, as the realizable deltoid-type quartic demands.
        let parabolic = cusps("A2-", "w_n", "w_p");
        let phi = parabolic.assemble_phi().unwrap();
        assert_eq!(*phi.minus.entry(0, 0), rat(0));
        assert_eq!(*phi.plus.entry(0, 0), rat(6));
        assert_eq!(phi.minus.inertia().zero, 1);
        // Flipped cusps: 3·2 − 2 = 4 inside, nonsingular everywhere.
        let flipped = cusps("A2+", "w_p", "w_n");
        let phi = flipped.assemble_phi().unwrap();
        assert_eq!(*phi.minus.entry(0, 0), rat(4));
        assert_eq!(*phi.plus.entry(0, 0), rat(2));
        assert_eq!(phi.minus.inertia().zero, 0);
        assert_eq!(phi.plus.inertia().zero, 0);
    }

    /// Tangent lines to the standard conic: pairwise non-parallel, never
    /// three through a point.
    fn tangent_lines(m: i64) -> Arrangement {
        let hyperplanes = (1..=m)
            .map(|t| vec![rat(2 * t), rat(-1), rat(-t * t)])
            .collect();
        Arrangement::new(2, hyperplanes).unwrap()
    }

    /// Re-encode a generic line arrangement as a CurveModel: every vertex
    /// becomes a node whose four sectors are labelled by the calibrated side
    /// pair on the two lines through it, with Ω sides taken from the raw
    /// alignment when the vertex lies on Ω.
    fn lines_curve_model(a: &Arrangement) -> CurveModel {
        let complex = enumerate_cells(a).unwrap();
        let regions = complex.region_indices();
        let omega = a.omega_index();
        let cells = complex.cells();
        let model_regions: Vec<CurveRegion> = regions
            .iter()
            .map(|&r| CurveRegion::new(&cells[r].label(), cells[r].product_sign(), rat(1)))
            .collect();
        let sector_name = |pair: (i8, i8)| match pair {
            (1, 1) => "Cl",
            (-1, -1) => "Cr",
            (1, -1) => "T",
            _ => "B",
        };
        let mut points = Vec::new();
        for v in complex.cells_of_dim(0) {
            let vc = &cells[v];
            let (i0, j0) = (vc.zeros[0], vc.zeros[1]);
            let c_v = vc.product_sign();
            let mut bindings: Vec<(String, String)> = Vec::new();
            let mut omega_sides: BTreeMap<String, i8> = BTreeMap::new();
            for &r in &regions {
                for eps in complex.alignments(v, r) {
                    let rv = &cells[r].sign_vector;
                    let raw = (eps * rv[i0], eps * rv[j0]);
                    let pair = if c_v < 0 { (-raw.0, raw.1) } else { raw };
                    let name = sector_name(pair).to_string();
                    match omega {
                        Some(w) if w == i0 => {
                            omega_sides.insert(name.clone(), raw.0);
                        }
                        Some(w) if w == j0 => {
                            omega_sides.insert(name.clone(), raw.1);
                        }
                        _ => {}
                    }
                    bindings.push((name, cells[r].label()));
                }
            }
            let binding_refs: Vec<(&str, &str)> = bindings
                .iter()
                .map(|(s, r)| (s.as_str(), r.as_str()))
                .collect();
            let mut p = BoundSingularity::new(
                &format!("v{i0}-{j0}"),
                named_residue("A1+").unwrap(),
                &binding_refs,
            );
            p.omega_sides = omega_sides;
            points.push(p);
        }
        CurveModel::new((a.m() / 2) as u32, model_regions, points).unwrap()
    }

    #[test]
    fn line_bundles_match_the_arrangement_route() {
        for m in [2i64, 4, 6] {
            let a = tangent_lines(m);
            let expect = phi_residue_route(&a).unwrap();
            let model = lines_curve_model(&a);
            let phi = model.assemble_phi().unwrap();
            assert_eq!(phi.form.basis(), expect.form.basis(), "m = {m}");
            assert_eq!(phi.form.gram(), expect.form.gram(), "m = {m}");
            assert_eq!(phi.plus.gram(), expect.plus.gram(), "m = {m}");
            assert_eq!(phi.minus.gram(), expect.minus.gram(), "m = {m}");
            // The doubled route agrees with twice the positive block.
            let bar = model.assemble_phi_bar().unwrap();
            assert_eq!(bar.basis(), phi.plus.basis(), "m = {m}");
            for i in 0..bar.dim() {
                for j in 0..bar.dim() {
                    assert_eq!(*bar.entry(i, j), rat(2) * phi.plus.entry(i, j).clone());
                }
            }
        }
    }

    #[test]
    fn d7_residues_continue_the_series() {
        let d = d7_minus_diagram();
        d.validate(7).unwrap();
        let q = named_residue("D7-").unwrap();
        let at = |a: &str, b: &str| {
            let i = q.labels.iter().position(|l| l == a).unwrap();
            let j = q.labels.iter().position(|l| l == b).unwrap();
            q.matrix[i][j].clone()
        };
        // Positive block on (big, sliver), negative on the two flanks.
        assert_eq!(at("Ou", "Ou"), rat(5));
        assert_eq!(at("Ou", "Ws"), rat(1));
        assert_eq!(at("Ws", "Ws"), rat(1));
        assert_eq!(at("Dl", "Dl"), ratio(7, 4));
        assert_eq!(at("Dl", "Dr"), ratio(5, 4));
        assert_eq!(at("Dr", "Dr"), ratio(7, 4));
        let sign_of = |l: &str| q.signs[q.labels.iter().position(|x| x == l).unwrap()];
        assert_eq!(sign_of("Ou"), 1);
        assert_eq!(sign_of("Ws"), 1);
        assert_eq!(sign_of("Dl"), -1);
        assert_eq!(sign_of("Dr"), -1);
        // The flipped germ swaps the blocks but keeps the values.
        let qp = named_residue("D7+").unwrap();
        let sign_of = |l: &str| qp.signs[qp.labels.iter().position(|x| x == l).unwrap()];
        assert_eq!(sign_of("Ou"), -1);
        assert_eq!(sign_of("Dl"), 1);
        assert_eq!(qp.matrix, q.matrix);
    }

    #[test]
    fn pentic_positions_decide_prop_641() {
        let same = pentic_same_side_model().unwrap();
        let opp = pentic_opposite_side_model().unwrap();
        let report = pentic_prop_6_4_1(&same, &opp).unwrap();
        assert_eq!(report.expected_radical, 1);

        // Same side: both blocks nonsingular, so the position is impossible.
        let s = &report.same_side;
        assert_eq!(s.verdict, "excluded");
        assert_eq!((s.sigma_zero_plus, s.sigma_zero_minus), (0, 0));
        assert_eq!(s.phi.plus.gram(), vec![vec![rat(20)]].as_slice());
        let expect_minus = vec![
            vec![ratio(1, 4), ratio(5, 4), ratio(1, 2)],
            vec![ratio(5, 4), ratio(23, 10), ratio(5, 4)],
            vec![ratio(1, 2), ratio(5, 4), ratio(1, 4)],
        ];
        assert_eq!(s.phi.minus.gram(), expect_minus.as_slice());

        // Opposite side: the positive block degenerates, as a reducible
        // sextic demands.
        let o = &report.opposite_side;
        assert_eq!(o.verdict, "consistent");
        assert_eq!((o.sigma_zero_plus, o.sigma_zero_minus), (1, 0));
        let expect_plus = vec![
            vec![ratio(1, 4), ratio(7, 4)],
            vec![ratio(7, 4), ratio(49, 4)],
        ];
        assert_eq!(o.phi.plus.gram(), expect_plus.as_slice());
        let expect_minus = vec![
            vec![ratio(41, 20), ratio(11, 4)],
            vec![ratio(11, 4), ratio(21, 4)],
        ];
        assert_eq!(o.phi.minus.gram(), expect_minus.as_slice());

        // The doubled route sanity check holds on the models too.
        for m in [&same, &opp] {
            let phi = m.assemble_phi().unwrap();
            let bar = m.assemble_phi_bar().unwrap();
            for i in 0..bar.dim() {
                for j in 0..bar.dim() {
                    assert_eq!(*bar.entry(i, j), rat(2) * phi.plus.entry(i, j).clone());
                }
            }
        }
    }

    fn sextic_bundle_invariants() -> CurveInvariants {
        let node = |label: &str| SingularPointData {
            label: label.to_string(),
            mu: 1,
            r_x: 2,
            rho_x: 2,
            delta_x: 1,
            real: true,
        };
        let d7 = |label: &str| SingularPointData {
            label: label.to_string(),
            mu: 7,
            r_x: 2,
            rho_x: 2,
            delta_x: 4,
            real: true,
        };
        CurveInvariants {
            k: 3,
            r: 2,
            nu: 1,
            g: 0,
            g_a: 10,
            mu_plus: 0,
            mu_minus: 19,
            mu_zero: 0,
            beta: 0,
            br_im: 0,
            alpha_im: 0,
            alpha_plus: 0,
            b2_cp: 1,
            b2_plus_cp: 1,
            b2_minus_cp: 0,
            chi_ra: -3,
            b0_tilde_ca: 0,
            b0_tilde_ca_prime: 0,
            b0_tilde_ca_dprime: 0,
            plus: SideData {
                chi_rx: 1,
                b1_int_rp: 0,
                b2_rp: 0,
                n_omega: 0,
                n_regions: 2,
            },
            minus: SideData {
                chi_rx: 1,
                b1_int_rp: 0,
                b2_rp: 0,
                n_omega: 0,
                n_regions: 2,
            },
            points: vec![
                d7("x1"),
                d7("x2"),
                SingularPointData {
                    label: "x3".into(),
                    mu: 4,
                    r_x: 1,
                    rho_x: 1,
                    delta_x: 2,
                    real: true,
                },
                node("y"),
            ],
        }
    }

    #[test]
    fn milnor_pluecker_on_the_sextic_bundle() {
        let ci = sextic_bundle_invariants();
        let report = milnor_pluecker_validate(&ci);
        assert!(report.all_pass(), "failures: {:?}", report.failures());
        let pluecker = report
            .lines
            .iter()
            .find(|l| l.id == "relation:pluecker")
            .unwrap();
        assert_eq!(pluecker.lhs, rat(11));
        assert_eq!(ci.frak_p(), rat(0));
        assert_eq!(ci.l_dot_k_plus_l(), 0);
        assert_eq!(ci.l_dot_k_plus_3l(), 18);
    }

    fn lines_invariants(a: &Arrangement, model: &CurveModel) -> CurveInvariants {
        let m = a.m() as i64;
        let k = m / 2;
        let c = m * (m - 1) / 2;
        let n_plus = model.regions().iter().filter(|r| r.sign == 1).count() as i64;
        let n_minus = model.regions().len() as i64 - n_plus;
        let side = |n: i64| SideData {
            chi_rx: 2 * n - c,
            b1_int_rp: 0,
            b2_rp: 0,
            n_omega: 0,
            n_regions: n,
        };
        CurveInvariants {
            k,
            r: m,
            nu: 1,
            g: 0,
            g_a: (k - 1) * (2 * k - 1),
            mu_plus: 0,
            mu_minus: c,
            mu_zero: 0,
            beta: 0,
            br_im: 0,
            alpha_im: 0,
            alpha_plus: 0,
            b2_cp: 1,
            b2_plus_cp: 1,
            b2_minus_cp: 0,
            chi_ra: -c,
            b0_tilde_ca: 0,
            b0_tilde_ca_prime: 0,
            b0_tilde_ca_dprime: 0,
            plus: side(n_plus),
            minus: side(n_minus),
            points: (0..c)
                .map(|i| SingularPointData {
                    label: format!("v{i}"),
                    mu: 1,
                    r_x: 2,
                    rho_x: 2,
                    delta_x: 1,
                    real: true,
                })
                .collect(),
        }
    }

    #[test]
    fn gap_vanishes_on_generic_line_bundles() {
        for m in [4i64, 6] {
            let a = tangent_lines(m);
            let model = lines_curve_model(&a);
            let ci = lines_invariants(&a, &model);
            assert!(milnor_pluecker_validate(&ci).all_pass(), "m = {m}");
            let phi = model.assemble_phi().unwrap();
            for eps in [1i8, -1] {
                assert_eq!(gap_delta(&ci, eps), rat(0), "m = {m}, eps = {eps}");
                let b = gap_breakdown(&ci, eps, &phi);
                assert_eq!(b.delta_plus, rat(0), "m = {m}, eps = {eps}");
                assert_eq!(b.delta_minus, rat(0), "m = {m}, eps = {eps}");
                assert_eq!(b.delta_zero, rat(0), "m = {m}, eps = {eps}");
                assert!(b.sum_matches_total());
            }
        }
    }

    #[test]
    fn sharpness_tracks_the_component_count() {
        let a = tangent_lines(4);
        let model = lines_curve_model(&a);
        let ci = lines_invariants(&a, &model);
        let report = sharpness_check(&model, &ci).unwrap();
        assert_eq!(report.expected, 3);
        assert_eq!(report.plus_radical, 3);
        assert_eq!(report.minus_radical, 3);
        assert!(report.plus_matches() && report.minus_matches());

        let conic = conic_model();
        let ci = CurveInvariants {
            k: 1,
            r: 1,
            nu: 0,
            g: 0,
            g_a: 0,
            mu_plus: 0,
            mu_minus: 0,
            mu_zero: 0,
            beta: 0,
            br_im: 0,
            alpha_im: 0,
            alpha_plus: 0,
            b2_cp: 1,
            b2_plus_cp: 1,
            b2_minus_cp: 0,
            chi_ra: 0,
            b0_tilde_ca: 0,
            b0_tilde_ca_prime: 0,
            b0_tilde_ca_dprime: 0,
            plus: SideData {
                chi_rx: 0,
                b1_int_rp: 0,
                b2_rp: 0,
                n_omega: 0,
                n_regions: 1,
            },
            minus: SideData {
                chi_rx: 2,
                b1_int_rp: 0,
                b2_rp: 0,
                n_omega: 0,
                n_regions: 1,
            },
            points: vec![],
        };
        let report = sharpness_check(&conic, &ci).unwrap();
        assert_eq!(report.expected, 0);
        assert_eq!(report.minus_radical, 0);
        assert!(report.minus_matches());
        // The degenerate positive block of the conic reflects the even
        // degree, not a component count.
        assert_eq!(report.plus_radical, 1);
    }

    #[test]
    fn curve_model_json_round_trip() {
        let same = pentic_same_side_model().unwrap();
        let v = same.to_json();
        assert_eq!(v["schema"], "avk-1");
        let back = CurveModel::from_json(&v).unwrap();
        let a = same.assemble_phi().unwrap();
        let b = back.assemble_phi().unwrap();
        assert_eq!(a.form.basis(), b.form.basis());
        assert_eq!(a.form.gram(), b.form.gram());

        // Catalog references parse to the same residue as the explicit form.
        let v = json!({
            "schema": "avk-1",
            "k": 2,
            "regions": [
                {"label": "I", "sign": -1, "chi_c": "1"},
                {"label": "O", "sign": 1, "chi_c": "0"},
            ],
            "points": [
                {"point": "c1", "residue": {"catalog": "A2-"},
                 "to_region": {"w_n": "I", "w_p": "O"}},
            ],
        });
        let m = CurveModel::from_json(&v).unwrap();
        let phi = m.assemble_phi().unwrap();
        assert_eq!(*phi.minus.entry(0, 0), ratio(2, 3) - rat(2));
    }

    #[test]
    fn model_validation_names_the_offence() {
        let residue = named_residue("A1+").unwrap();
        let regions = vec![
            CurveRegion::new("P", 1, rat(1)),
            CurveRegion::new("N", -1, rat(1)),
        ];
        // Unknown region.
        let p = BoundSingularity::new(
            "y",
            residue.clone(),
            &[("Cl", "P"), ("Cr", "P"), ("T", "N"), ("B", "X")],
        );
        match CurveModel::new(1, regions.clone(), vec![p]) {
            Err(CurveError::UnknownRegion { region, .. }) => assert_eq!(region, "X"),
            other => panic!("expected UnknownRegion, got {other:?}"),
        }
        // Sign mismatch.
        let p = BoundSingularity::new(
            "y",
            residue.clone(),
            &[("Cl", "P"), ("Cr", "N"), ("T", "N"), ("B", "N")],
        );
        match CurveModel::new(1, regions.clone(), vec![p]) {
            Err(CurveError::SignMismatch { sector, region, .. }) => {
                assert_eq!(sector, "Cr");
                assert_eq!(region, "N");
            }
            other => panic!("expected SignMismatch, got {other:?}"),
        }
        // Euler bookkeeping: claiming an extra unit of χ_c must be rejected.
        let p = BoundSingularity::new(
            "y",
            residue.clone(),
            &[("Cl", "P"), ("Cr", "P"), ("T", "N"), ("B", "N")],
        );
        let bloated = vec![
            CurveRegion::new("P", 1, rat(1)),
            CurveRegion::new("N", -1, rat(2)),
        ];
        match CurveModel::new(1, bloated, vec![p]) {
            Err(CurveError::ChiInconsistent { got }) => assert_eq!(got, "2"),
            other => panic!("expected ChiInconsistent, got {other:?}"),
        }
        // A residue with a cross-sign coupling is rejected outright.
        let mut bad = residue;
        let i = bad.signs.iter().position(|&s| s == 1).unwrap();
        let j = bad.signs.iter().position(|&s| s == -1).unwrap();
        bad.matrix[i][j] = rat(1);
        bad.matrix[j][i] = rat(1);
        let coupled = (bad.labels[i].clone(), bad.labels[j].clone());
        let p = BoundSingularity::new("y", bad, &[("Cl", "P"), ("Cr", "P"), ("T", "N"), ("B", "N")]);
        match CurveModel::new(1, regions, vec![p]) {
            Err(CurveError::CrossSign { a, b, .. }) => {
                assert!(
                    (a.clone(), b.clone()) == coupled || (b, a) == coupled,
                    "unexpected pair"
                );
            }
            other => panic!("expected CrossSign, got {other:?}"),
        }
    }

    #[test]
    fn invariants_json_round_trip() {
        let ci = sextic_bundle_invariants();
        let v = ci.to_json();
        let back = CurveInvariants::from_json(&v).unwrap();
        assert_eq!(back.k, 3);
        assert_eq!(back.points.len(), 4);
        assert!(milnor_pluecker_validate(&back).all_pass());
        let missing = json!({"schema": "avk-1", "k": 3});
        let err = CurveInvariants::from_json(&missing).unwrap_err();
        assert!(err.to_string().contains('`'), "error names the field: {err}");
    }
}
