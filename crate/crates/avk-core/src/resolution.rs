//! The resolution route to local residue forms: contraction of exceptional
//! configurations by Schur complement, continued-fraction self-intersections
//! of chains, and the wall formula for λ on the resolved boundary surface.

use crate::localforms::{chi_form, FormKind, LocalForm, SectorSystem};
use crate::qforms::{rat, ratio, Rat, SymmetricForm};
use num::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ResolutionError {
    #[error("empty chain")]
    EmptyChain,
    #[error("continued fraction hit a zero tail at position {0}")]
    ZeroTail(usize),
    #[error("imaginary exceptional weight must be nonzero")]
    ZeroWeight,
    #[error("wall references unknown piece `{0}`")]
    UnknownPiece(String),
    #[error("{0}")]
    Invalid(String),
}

/// Contract a set of exceptional classes out of an intersection form.
/// This is exactly the Schur complement, re-exported under the name the
/// resolution calculus uses.
pub fn contract(
    form: &SymmetricForm,
    exceptional: &[&str],
) -> Result<SymmetricForm, crate::qforms::FormError> {
    form.complement_form(exceptional)
}

/// Self-intersection of the class supported on a chain of rational curves
/// with the given weights: w₁ − 1/(w₂ − 1/(…)).
pub fn chain_self_intersection(weights: &[Rat]) -> Result<Rat, ResolutionError> {
    if weights.is_empty() {
        return Err(ResolutionError::EmptyChain);
    }
    let mut acc: Option<Rat> = None;
    for (pos, w) in weights.iter().enumerate().rev() {
        let next = match acc {
            None => w.clone(),
            Some(t) => {
                if t.is_zero() {
                    return Err(ResolutionError::ZeroTail(pos + 1));
                }
                w - Rat::new(
                    t.denom().clone(),
                    t.numer().clone(),
                )
            }
        };
        acc = Some(next);
    }
    Ok(acc.unwrap())
}

/// Boundary-surface data after resolving: the closed pieces F_i of the link
/// surface (with their Euler characteristics) and the real exceptional
/// walls separating them, each carrying a weight α and an orientation sign
/// ε.  A wall may be one-sided, in which case it contributes its own class.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySurface {
    pub pieces: Vec<(String, Rat)>,
    pub walls: Vec<Wall>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Wall {
    pub alpha: Rat,
    pub epsilon: i8,
    pub sides: WallSides,
}

#[derive(Debug, Clone, PartialEq)]
pub enum WallSides {
    TwoSided(String, String),
    OneSided(String),
}

impl BoundarySurface {
    pub fn to_json(&self) -> serde_json::Value {
        use crate::qforms::rat_to_string;
        serde_json::json!({
            "schema": "avk-1",
            "pieces": self.pieces.iter()
                .map(|(l, chi)| serde_json::json!({"label": l, "chi": rat_to_string(chi)}))
                .collect::<Vec<_>>(),
            "walls": self.walls.iter()
                .map(|w| {
                    let sides = match &w.sides {
                        WallSides::TwoSided(a, b) => vec![a.clone(), b.clone()],
                        WallSides::OneSided(a) => vec![a.clone()],
                    };
                    serde_json::json!({
                        "alpha": rat_to_string(&w.alpha),
                        "epsilon": w.epsilon,
                        "sides": sides,
                    })
                })
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, ResolutionError> {
        use serde_json::Value;
        let bad = |m: String| ResolutionError::Invalid(m);
        let pieces = v
            .get("pieces")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing `pieces`".into()))?
            .iter()
            .map(|p| {
                let label = p
                    .get("label")
                    .and_then(Value::as_str)
                    .ok_or_else(|| bad("piece missing `label`".into()))?;
                let chi = crate::qforms::rat_from_json(
                    p.get("chi").ok_or_else(|| bad("piece missing `chi`".into()))?,
                )
                .map_err(|e| bad(e.to_string()))?;
                Ok((label.to_string(), chi))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let walls = v
            .get("walls")
            .and_then(Value::as_array)
            .map(|a| a.as_slice())
            .unwrap_or(&[])
            .iter()
            .map(|w| {
                let alpha = crate::qforms::rat_from_json(
                    w.get("alpha").ok_or_else(|| bad("wall missing `alpha`".into()))?,
                )
                .map_err(|e| bad(e.to_string()))?;
                let epsilon = match w.get("epsilon").and_then(Value::as_i64) {
                    Some(1) => 1,
                    Some(-1) => -1,
                    _ => return Err(bad("wall `epsilon` must be 1 or -1".into())),
                };
                let sides: Vec<&str> = w
                    .get("sides")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("wall missing `sides`".into()))?
                    .iter()
                    .map(|s| s.as_str().ok_or_else(|| bad("wall sides are labels".into())))
                    .collect::<Result<_, _>>()?;
                let sides = match sides.as_slice() {
                    [a] => WallSides::OneSided(a.to_string()),
                    [a, b] => WallSides::TwoSided(a.to_string(), b.to_string()),
                    _ => return Err(bad("a wall has one or two sides".into())),
                };
                Ok(Wall { alpha, epsilon, sides })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BoundarySurface { pieces, walls })
    }
}

/// λ from a resolved boundary surface.  Two-sided walls couple their side
/// pieces by −¼·ε·α and feed ¼·ε·α − χ(F) into each incident diagonal; a
/// one-sided real exceptional curve carries its printed self-pairing α as
/// its own basis vector.
pub fn lambda_from_resolution(b: &BoundarySurface) -> Result<SymmetricForm, ResolutionError> {
    let mut labels: Vec<String> = b.pieces.iter().map(|(l, _)| l.clone()).collect();
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(ResolutionError::Invalid(format!("duplicate piece `{l}`")));
        }
    }
    let piece_index = |l: &str| -> Result<usize, ResolutionError> {
        b.pieces
            .iter()
            .position(|(p, _)| p == l)
            .ok_or_else(|| ResolutionError::UnknownPiece(l.to_string()))
    };
    let np = b.pieces.len();
    let mut one_sided = Vec::new();
    let mut gram = vec![vec![Rat::zero(); np]; np];
    for (i, (_, chi)) in b.pieces.iter().enumerate() {
        gram[i][i] = -chi.clone();
    }
    for (widx, w) in b.walls.iter().enumerate() {
        let quarter = ratio(w.epsilon as i64, 4) * w.alpha.clone();
        match &w.sides {
            WallSides::TwoSided(a, c) => {
                let i = piece_index(a)?;
                let j = piece_index(c)?;
                if i == j {
                    return Err(ResolutionError::Invalid(format!(
                        "two-sided wall {widx} touches `{a}` on both sides; \
                         mark it one-sided instead"
                    )));
                }
                gram[i][j] -= quarter.clone();
                gram[j][i] -= quarter.clone();
                gram[i][i] += quarter.clone();
                gram[j][j] += quarter;
            }
            WallSides::OneSided(_) => {
                one_sided.push((format!("wall{}", widx + 1), w.alpha.clone()));
            }
        }
    }
    for (l, a) in one_sided {
        labels.push(l);
        let n = labels.len();
        for row in gram.iter_mut() {
            row.push(Rat::zero());
        }
        let mut new_row = vec![Rat::zero(); n];
        new_row[n - 1] = a;
        gram.push(new_row);
    }
    SymmetricForm::new(labels, gram).map_err(|e| ResolutionError::Invalid(e.to_string()))
}

/// Self-pairing of an imaginary exceptional pair of weight α: −4/α − 1.
pub fn lambda_imaginary_exceptional(alpha: &Rat) -> Result<Rat, ResolutionError> {
    if alpha.is_zero() {
        return Err(ResolutionError::ZeroWeight);
    }
    Ok(rat(-4) / alpha.clone() - rat(1))
}

/// Quasicuspidal residue data for parameter g: the boundary form value
/// q₊ = 2g together with the λ-value 2g − 1 it comes from.
pub fn quasicuspidal_residue(g: u32) -> (Rat, Rat) {
    (rat(2 * g as i64), rat(2 * g as i64 - 1))
}

/// The full resolution pipeline for the x^{2n} − y² germs: a central
/// (−2)-curve with a (−2)-chain of length n−1 on each side contracts to a
/// single real exceptional curve of weight −2/n, whose two-sided wall
/// between two annulus pieces gives λ, and the sector Euler form turns λ
/// into the boundary residue q.
pub fn braid_residue_via_resolution(n: usize) -> Result<SymmetricForm, ResolutionError> {
    assert!(n >= 1);
    // Plumbing graph: c (central), l1..l_{n-1}, r1..r_{n-1}, all weight −2.
    let mut labels: Vec<String> = vec!["c".into()];
    for i in 1..n {
        labels.push(format!("l{i}"));
        labels.push(format!("r{i}"));
    }
    let size = labels.len();
    let mut gram = vec![vec![Rat::zero(); size]; size];
    for i in 0..size {
        gram[i][i] = rat(-2);
    }
    let idx = |l: &str, labels: &[String]| labels.iter().position(|x| x == l).unwrap();
    for side in ["l", "r"] {
        for i in 1..n {
            let a = if i == 1 {
                idx("c", &labels)
            } else {
                idx(&format!("{side}{}", i - 1), &labels)
            };
            let bpos = idx(&format!("{side}{i}"), &labels);
            gram[a][bpos] = rat(1);
            gram[bpos][a] = rat(1);
        }
    }
    let full = SymmetricForm::new(labels.clone(), gram)
        .map_err(|e| ResolutionError::Invalid(e.to_string()))?;
    let alpha = if n == 1 {
        rat(-2)
    } else {
        let chains: Vec<&str> = labels.iter().skip(1).map(|s| s.as_str()).collect();
        let contracted = contract(&full, &chains)
            .map_err(|e| ResolutionError::Invalid(e.to_string()))?;
        contracted.gram()[0][0].clone()
    };
    let surface = BoundarySurface {
        pieces: vec![("E".into(), rat(0)), ("W".into(), rat(0))],
        walls: vec![Wall {
            alpha,
            epsilon: 1,
            sides: WallSides::TwoSided("E".into(), "W".into()),
        }],
    };
    let lambda = lambda_from_resolution(&surface)?;
    // q = λ + χₓ at d = 2; the two sectors are disjoint closed arcs of the
    // same sign, so χₓ is the identity on (E, W).
    let sectors = SectorSystem::new(
        2,
        vec![("E".into(), 1, rat(1)), ("W".into(), 1, rat(1))],
        vec![],
    )
    .map_err(|e| ResolutionError::Invalid(e.to_string()))?;
    let chi = chi_form(&sectors);
    let mut gram: Vec<Vec<Rat>> = lambda.gram().to_vec();
    for i in 0..2 {
        for j in 0..2 {
            gram[i][j] = &gram[i][j] + &chi.matrix[i][j];
        }
    }
    SymmetricForm::new(lambda.basis().to_vec(), gram)
        .map_err(|e| ResolutionError::Invalid(e.to_string()))
}

/// Residue form of a quasicuspidal germ routed through the wall calculus:
/// a 1×1 form on the single positive sector.
pub fn quasicuspidal_residue_form(g: u32) -> LocalForm {
    let (q, _) = quasicuspidal_residue(g);
    LocalForm {
        kind: FormKind::Q,
        ambient_d: 2,
        labels: vec!["w".into()],
        signs: vec![1],
        matrix: vec![vec![q]],
    }
}
