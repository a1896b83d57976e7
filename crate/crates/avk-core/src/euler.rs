//! Euler-characteristic calculus on finite abstract simplicial complexes.
//!
//! `chi_c_integral` integrates constructible functions against compactly
//! supported Euler characteristic; `link_function` computes the link average
//! f̂(x) = ∫_{Lk_x} f dχ as a constructible function on the barycentric
//! subdivision. The reduction identities checked here are the combinatorial
//! engine behind the residue forms of plane-curve singularities.

use crate::qforms::{rat, rat_from_str, rat_to_string, Rat};
use num::Zero;
use serde_json::{json, Value};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EulerError {
    #[error("simplex {0:?} has a repeated vertex")]
    RepeatedVertex(Vec<String>),
    #[error("empty simplex not allowed")]
    EmptySimplex,
    #[error("value missing for simplex `{0}`")]
    MissingValue(String),
    #[error("unknown simplex `{0}`")]
    UnknownSimplex(String),
    #[error("{0}")]
    Invalid(String),
}

/// Finite abstract simplicial complex with string-labeled vertices.
/// Stores the full downward-closed family, ordered by (dimension, lex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    simplices: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl SimplicialComplex {
    /// Builds the closure of the given generating simplices.
    pub fn from_generators<S: AsRef<str>>(generators: &[Vec<S>]) -> Result<Self, EulerError> {
        let mut vertices: Vec<String> = Vec::new();
        let mut vid: HashMap<String, usize> = HashMap::new();
        let mut gens: Vec<Vec<usize>> = Vec::new();
        for g in generators {
            if g.is_empty() {
                return Err(EulerError::EmptySimplex);
            }
            let mut s: Vec<usize> = Vec::with_capacity(g.len());
            for v in g {
                let v = v.as_ref();
                let id = *vid.entry(v.to_string()).or_insert_with(|| {
                    vertices.push(v.to_string());
                    vertices.len() - 1
                });
                s.push(id);
            }
            let mut sorted = s.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != s.len() {
                return Err(EulerError::RepeatedVertex(
                    g.iter().map(|v| v.as_ref().to_string()).collect(),
                ));
            }
            gens.push(sorted);
        }
        // Close under taking faces.
        let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
        for g in &gens {
            let n = g.len();
            for mask in 1u32..(1 << n) {
                let face: Vec<usize> =
                    (0..n).filter(|i| mask & (1 << i) != 0).map(|i| g[i]).collect();
                seen.entry(face).or_insert(());
            }
        }
        let mut simplices: Vec<Vec<usize>> = seen.into_keys().collect();
        simplices.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let index = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Ok(SimplicialComplex {
            vertices,
            simplices,
            index,
        })
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.len()
    }

    pub fn dim(&self) -> isize {
        self.simplices
            .iter()
            .map(|s| s.len() as isize - 1)
            .max()
            .unwrap_or(-1)
    }

    pub fn simplex_labels(&self, i: usize) -> Vec<String> {
        self.simplices[i]
            .iter()
            .map(|&v| self.vertices[v].clone())
            .collect()
    }

    /// Key used by the JSON schema: comma-joined vertex labels.
    pub fn simplex_key(&self, i: usize) -> String {
        self.simplex_labels(i).join(",")
    }

    fn lookup_labels<S: AsRef<str>>(&self, labels: &[S]) -> Option<usize> {
        let mut ids = Vec::with_capacity(labels.len());
        for l in labels {
            ids.push(self.vertices.iter().position(|v| v == l.as_ref())?);
        }
        ids.sort_unstable();
        self.index.get(&ids).copied()
    }

    /// Alternating simplex count = χ of the underlying compact polyhedron.
    pub fn chi(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| if s.len() % 2 == 1 { 1 } else { -1 })
            .sum()
    }

    /// Simplices ρ with ρ ∩ σ = ∅ and ρ ∪ σ a simplex.
    fn link_simplices(&self, sigma: usize) -> Vec<usize> {
        let s = &self.simplices[sigma];
        let mut out = Vec::new();
        for (i, rho) in self.simplices.iter().enumerate() {
            if rho.iter().any(|v| s.contains(v)) {
                continue;
            }
            let mut union: Vec<usize> = s.iter().chain(rho.iter()).copied().collect();
            union.sort_unstable();
            if self.index.contains_key(&union) {
                out.push(i);
            }
        }
        out
    }

    /// Barycentric subdivision: one vertex per simplex, one simplex per chain.
    /// `carrier[c]` is the largest element of chain `c` — the simplex of the
    /// base complex whose interior contains the open cell `c`.
    pub fn barycentric_subdivision(&self) -> Subdivision {
        let n = self.simplices.len();
        // contains[j] = strict faces of simplex j.
        let mut contained_in: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, a) in self.simplices.iter().enumerate() {
            for (j, b) in self.simplices.iter().enumerate() {
                if a.len() < b.len() && a.iter().all(|v| b.contains(v)) {
                    contained_in[i].push(j);
                }
            }
        }
        let mut chains: Vec<Vec<usize>> = Vec::new();
        let mut stack: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        while let Some(chain) = stack.pop() {
            let last = *chain.last().unwrap();
            for &next in &contained_in[last] {
                let mut ext = chain.clone();
                ext.push(next);
                stack.push(ext);
            }
            chains.push(chain);
        }
        chains.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let carrier: Vec<usize> = chains.iter().map(|c| *c.last().unwrap()).collect();
        let vertices: Vec<String> = (0..n).map(|i| format!("b({})", self.simplex_key(i))).collect();
        let simplices: Vec<Vec<usize>> = chains
            .iter()
            .map(|c| {
                let mut s = c.clone();
                s.sort_unstable();
                s
            })
            .collect();
        let index = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Subdivision {
            complex: SimplicialComplex {
                vertices,
                simplices,
                index,
            },
            carrier,
        }
    }

    pub fn to_json(&self, f: Option<&ConstructibleFunction>) -> Value {
        let simplices: Vec<Vec<String>> =
            (0..self.simplex_count()).map(|i| self.simplex_labels(i)).collect();
        match f {
            None => json!({"schema": "avk-1", "simplices": simplices}),
            Some(f) => {
                let values: serde_json::Map<String, Value> = (0..self.simplex_count())
                    .map(|i| (self.simplex_key(i), Value::String(rat_to_string(&f.values[i]))))
                    .collect();
                json!({"schema": "avk-1", "simplices": simplices, "values": values})
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<(Self, Option<ConstructibleFunction>), EulerError> {
        let gens = v
            .get("simplices")
            .and_then(Value::as_array)
            .ok_or_else(|| EulerError::Invalid("missing `simplices` array".into()))?;
        let mut gen_labels: Vec<Vec<String>> = Vec::new();
        for g in gens {
            let g = g
                .as_array()
                .ok_or_else(|| EulerError::Invalid("simplices must be arrays".into()))?;
            gen_labels.push(
                g.iter()
                    .map(|x| {
                        x.as_str()
                            .map(str::to_string)
                            .ok_or_else(|| EulerError::Invalid("vertex labels must be strings".into()))
                    })
                    .collect::<Result<_, _>>()?,
            );
        }
        let complex = SimplicialComplex::from_generators(&gen_labels)?;
        let f = match v.get("values") {
            None => None,
            Some(Value::Object(map)) => {
                let mut values = vec![Rat::zero(); complex.simplex_count()];
                let mut provided = vec![false; complex.simplex_count()];
                for (key, val) in map {
                    let labels: Vec<&str> = key.split(',').collect();
                    let idx = complex
                        .lookup_labels(&labels)
                        .ok_or_else(|| EulerError::UnknownSimplex(key.clone()))?;
                    let s = val
                        .as_str()
                        .ok_or_else(|| EulerError::Invalid("values must be strings".into()))?;
                    values[idx] = rat_from_str(s)
                        .map_err(|e| EulerError::Invalid(e.to_string()))?;
                    provided[idx] = true;
                }
                if let Some(i) = provided.iter().position(|p| !p) {
                    return Err(EulerError::MissingValue(complex.simplex_key(i)));
                }
                Some(ConstructibleFunction { values })
            }
            Some(_) => return Err(EulerError::Invalid("`values` must be an object".into())),
        };
        Ok((complex, f))
    }
}

/// Barycentric subdivision together with the carrier map used to transport
/// constructible functions (an open chain cell inherits the value of the
/// open simplex containing it, i.e. of the chain's largest element).
#[derive(Debug, Clone)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    pub carrier: Vec<usize>,
}

impl Subdivision {
    pub fn transport(&self, f: &ConstructibleFunction) -> ConstructibleFunction {
        ConstructibleFunction {
            values: self.carrier.iter().map(|&c| f.values[c].clone()).collect(),
        }
    }
}

/// A rational value per open simplex, indexed parallel to the complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructibleFunction {
    values: Vec<Rat>,
}

impl ConstructibleFunction {
    pub fn constant(k: &SimplicialComplex, value: Rat) -> Self {
        ConstructibleFunction {
            values: vec![value; k.simplex_count()],
        }
    }

    /// Indicator of a single simplex, given by its vertex labels.
    pub fn indicator<S: AsRef<str>>(
        k: &SimplicialComplex,
        labels: &[S],
    ) -> Result<Self, EulerError> {
        let idx = k.lookup_labels(labels).ok_or_else(|| {
            EulerError::UnknownSimplex(
                labels
                    .iter()
                    .map(|l| l.as_ref().to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            )
        })?;
        let mut values = vec![Rat::zero(); k.simplex_count()];
        values[idx] = rat(1);
        Ok(ConstructibleFunction { values })
    }

    pub fn from_values(k: &SimplicialComplex, values: Vec<Rat>) -> Result<Self, EulerError> {
        if values.len() != k.simplex_count() {
            return Err(EulerError::Invalid(format!(
                "expected {} values, got {}",
                k.simplex_count(),
                values.len()
            )));
        }
        Ok(ConstructibleFunction { values })
    }

    pub fn value(&self, simplex: usize) -> &Rat {
        &self.values[simplex]
    }

    pub fn add(&self, other: &ConstructibleFunction) -> ConstructibleFunction {
        ConstructibleFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// ∫_K f dχ_c = Σ_σ (−1)^{dim σ} f(σ), over open simplices.
pub fn chi_c_integral(k: &SimplicialComplex, f: &ConstructibleFunction) -> Rat {
    let mut acc = Rat::zero();
    for (i, s) in k.simplices.iter().enumerate() {
        if s.len() % 2 == 1 {
            acc += f.values[i].clone();
        } else {
            acc -= f.values[i].clone();
        }
    }
    acc
}

/// f̂ evaluated on the open simplices of the base complex.
///
/// For x interior to a k-simplex σ, the link of x in |K| is the join
/// S^{k−1} * Lk_K(σ), where the sphere factor lies in the interior of σ and
/// the cells toward a link simplex ρ lie in the interior of σ∪ρ. Integrating
/// f over that compact link gives
///   f̂(σ) = f(σ)·χ(S^{k−1}) + (−1)^k · Σ_{ρ ∈ Lk_K(σ)} (−1)^{dim ρ} f(σ∪ρ).
pub fn link_function_on_base(
    k: &SimplicialComplex,
    f: &ConstructibleFunction,
) -> ConstructibleFunction {
    let mut values = Vec::with_capacity(k.simplex_count());
    for (i, s) in k.simplices.iter().enumerate() {
        let dim = s.len() - 1;
        // χ(S^{k−1}) = 1 + (−1)^{k−1}; the k = 0 case is the empty sphere.
        let chi_sphere = rat(if dim % 2 == 1 { 2 } else { 0 });
        let mut acc = &f.values[i] * &chi_sphere;
        let mut link_sum = Rat::zero();
        for rho in k.link_simplices(i) {
            let mut union: Vec<usize> = k.simplices[i]
                .iter()
                .chain(k.simplices[rho].iter())
                .copied()
                .collect();
            union.sort_unstable();
            let u = k.index[&union];
            if k.simplices[rho].len() % 2 == 1 {
                link_sum += f.values[u].clone();
            } else {
                link_sum -= f.values[u].clone();
            }
        }
        if dim % 2 == 1 {
            link_sum = -link_sum;
        }
        acc += link_sum;
        values.push(acc);
    }
    ConstructibleFunction { values }
}

/// The link average f̂ as a constructible function on the barycentric
/// subdivision (the form the reduction corollaries consume).
pub fn link_function(
    k: &SimplicialComplex,
    f: &ConstructibleFunction,
) -> (Subdivision, ConstructibleFunction) {
    let base = link_function_on_base(k, f);
    let sd = k.barycentric_subdivision();
    let transported = sd.transport(&base);
    (sd, transported)
}

/// ∫ f̂ dχ over the subdivision; identically zero on compact polyhedra.
pub fn lemma_2_6_1_defect(k: &SimplicialComplex, f: &ConstructibleFunction) -> Rat {
    let (sd, fhat) = link_function(k, f);
    chi_c_integral(&sd.complex, &fhat)
}

/// Odd-dimension skeleton reduction: ∫_Q f dχ = ∫_{Q_{d−1}} (f − ½ f̂) dχ.
pub fn skeleton_reduction_check(
    k: &SimplicialComplex,
    f: &ConstructibleFunction,
) -> Result<bool, EulerError> {
    let d = k.dim();
    if d % 2 != 1 {
        return Err(EulerError::Invalid(format!(
            "skeleton reduction needs odd dimension, complex has dim {d}"
        )));
    }
    let lhs = chi_c_integral(k, f);
    let fhat = link_function_on_base(k, f);
    let mut rhs = Rat::zero();
    for (i, s) in k.simplices.iter().enumerate() {
        if s.len() as isize - 1 > d - 1 {
            continue;
        }
        let term = &f.values[i] - &(&fhat.values[i] / &rat(2));
        if s.len() % 2 == 1 {
            rhs += term;
        } else {
            rhs -= term;
        }
    }
    Ok(lhs == rhs)
}

/// Link-sum reduction over a subcomplex Q′ containing the topological
/// singularity: ∫_{Q′} χ(Lk_x) dχ equals 0 for even dim and −2χ_c(Q−Q′) for
/// odd dim. Membership of the singular set in Q′ is checked at the Euler
/// characteristic level: every simplex outside Q′ must have χ(Lk) = 1−(−1)^d.
pub fn singular_reduction_check<S: AsRef<str>>(
    k: &SimplicialComplex,
    qprime_generators: &[Vec<S>],
) -> Result<bool, EulerError> {
    let d = k.dim();
    let ones = ConstructibleFunction::constant(k, rat(1));
    let chi_link = link_function_on_base(k, &ones);
    // Q′ as a set of simplex indices (closure of the given generators).
    let mut in_qprime = vec![false; k.simplex_count()];
    for g in qprime_generators {
        let idx = k.lookup_labels(g).ok_or_else(|| {
            EulerError::UnknownSimplex(
                g.iter()
                    .map(|l| l.as_ref().to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            )
        })?;
        let gs = &k.simplices[idx];
        for (i, s) in k.simplices.iter().enumerate() {
            if s.iter().all(|v| gs.contains(v)) {
                in_qprime[i] = true;
            }
        }
    }
    let manifold_chi = rat(1 - if d % 2 == 0 { 1 } else { -1 });
    for i in 0..k.simplex_count() {
        if !in_qprime[i] && chi_link.values[i] != manifold_chi {
            return Err(EulerError::Invalid(format!(
                "simplex `{}` is singular (χ(Lk) = {}) but lies outside Q'",
                k.simplex_key(i),
                rat_to_string(&chi_link.values[i]),
            )));
        }
    }
    let mut lhs = Rat::zero();
    let mut chi_c_complement = Rat::zero();
    for (i, s) in k.simplices.iter().enumerate() {
        let sign = if s.len() % 2 == 1 { rat(1) } else { rat(-1) };
        if in_qprime[i] {
            lhs += &sign * &chi_link.values[i];
        } else {
            chi_c_complement += sign;
        }
    }
    let rhs = if d % 2 == 0 {
        Rat::zero()
    } else {
        rat(-2) * chi_c_complement
    };
    Ok(lhs == rhs)
}

/// Dispatcher mirroring the two reduction corollaries: with a supplied Q′ the
/// singular-locus identity is checked (any dimension); without it the
/// odd-dimension skeleton identity is checked against f.
pub fn boundary_reduction_check<S: AsRef<str>>(
    k: &SimplicialComplex,
    f: &ConstructibleFunction,
    qprime_generators: Option<&[Vec<S>]>,
) -> Result<bool, EulerError> {
    match qprime_generators {
        Some(gens) => singular_reduction_check(k, gens),
        None => skeleton_reduction_check(k, f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qforms::ratio;
    use proptest::prelude::*;

    fn interval() -> SimplicialComplex {
        SimplicialComplex::from_generators(&[vec!["a", "b"]]).unwrap()
    }

    fn circle() -> SimplicialComplex {
        SimplicialComplex::from_generators(&[vec!["a", "b"], vec!["b", "c"], vec!["c", "a"]])
            .unwrap()
    }

    fn sphere2() -> SimplicialComplex {
        // Boundary of the tetrahedron.
        SimplicialComplex::from_generators(&[
            vec!["a", "b", "c"],
            vec!["a", "b", "d"],
            vec!["a", "c", "d"],
            vec!["b", "c", "d"],
        ])
        .unwrap()
    }

    fn wedge_of_circles() -> SimplicialComplex {
        SimplicialComplex::from_generators(&[
            vec!["w", "a"],
            vec!["a", "b"],
            vec!["b", "w"],
            vec!["w", "c"],
            vec!["c", "d"],
            vec!["d", "w"],
        ])
        .unwrap()
    }

    #[test]
    fn chi_integral_basics() {
        let k = interval();
        let ones = ConstructibleFunction::constant(&k, rat(1));
        assert_eq!(chi_c_integral(&k, &ones), rat(1));

        let c = circle();
        let ones = ConstructibleFunction::constant(&c, rat(1));
        assert_eq!(chi_c_integral(&c, &ones), rat(0));

        let edge = ConstructibleFunction::indicator(&c, &["a", "b"]).unwrap();
        assert_eq!(chi_c_integral(&c, &edge), rat(-1));
    }

    #[test]
    fn link_function_on_circle_is_two() {
        let c = circle();
        let ones = ConstructibleFunction::constant(&c, rat(1));
        let fhat = link_function_on_base(&c, &ones);
        for i in 0..c.simplex_count() {
            assert_eq!(fhat.value(i), &rat(2));
        }
        let (sd, fhat_sd) = link_function(&c, &ones);
        assert_eq!(sd.complex.simplex_count(), 6 + 6);
        for i in 0..sd.complex.simplex_count() {
            assert_eq!(fhat_sd.value(i), &rat(2));
        }
    }

    #[test]
    fn link_function_on_closed_surface_vanishes() {
        let s = sphere2();
        let ones = ConstructibleFunction::constant(&s, rat(1));
        let fhat = link_function_on_base(&s, &ones);
        for i in 0..s.simplex_count() {
            assert_eq!(fhat.value(i), &rat(0), "simplex {}", s.simplex_key(i));
        }
    }

    #[test]
    fn link_function_vertex_indicator_on_interval() {
        // The link of every point misses the vertex itself, so f̂ ≡ 0 here;
        // the nontrivial profile appears for the edge indicator instead.
        let k = interval();
        let fv = ConstructibleFunction::indicator(&k, &["a"]).unwrap();
        let fhat = link_function_on_base(&k, &fv);
        for i in 0..k.simplex_count() {
            assert_eq!(fhat.value(i), &rat(0));
        }
        let fe = ConstructibleFunction::indicator(&k, &["a", "b"]).unwrap();
        let ehat = link_function_on_base(&k, &fe);
        // At each endpoint the link is one interior point; inside the edge it
        // is two interior points.
        let a = 0; // first vertex in (dim, lex) order
        assert_eq!(ehat.value(a), &rat(1));
        assert_eq!(ehat.value(2), &rat(2));
    }

    #[test]
    fn lemma_defect_vanishes_on_curated_complexes() {
        for k in [interval(), circle(), sphere2(), wedge_of_circles()] {
            let ones = ConstructibleFunction::constant(&k, rat(1));
            assert_eq!(lemma_2_6_1_defect(&k, &ones), rat(0));
            let mut vals = Vec::new();
            for i in 0..k.simplex_count() {
                vals.push(ratio(i as i64 * 3 - 5, 2));
            }
            let f = ConstructibleFunction::from_values(&k, vals).unwrap();
            assert_eq!(lemma_2_6_1_defect(&k, &f), rat(0));
        }
    }

    #[test]
    fn singular_reduction_examples() {
        let c = circle();
        assert!(singular_reduction_check(&c, &[vec!["a"]]).unwrap());

        let w = wedge_of_circles();
        assert!(singular_reduction_check(&w, &[vec!["w"]]).unwrap());
        // The wedge point really is needed: χ(Lk) = 4 there.
        let ones = ConstructibleFunction::constant(&w, rat(1));
        let chihat = link_function_on_base(&w, &ones);
        let wedge_idx = (0..w.simplex_count())
            .find(|&i| w.simplex_key(i) == "w")
            .unwrap();
        assert_eq!(chihat.value(wedge_idx), &rat(4));
        // Omitting it from Q' must be rejected.
        assert!(singular_reduction_check(&w, &[vec!["a"]]).is_err());

        let s = sphere2();
        let empty: &[Vec<&str>] = &[];
        assert!(singular_reduction_check(&s, empty).unwrap());
    }

    #[test]
    fn skeleton_reduction_on_odd_dim() {
        let k = interval();
        let ones = ConstructibleFunction::constant(&k, rat(1));
        assert!(skeleton_reduction_check(&k, &ones).unwrap());
        let c = circle();
        let f = ConstructibleFunction::indicator(&c, &["a", "b"]).unwrap();
        assert!(skeleton_reduction_check(&c, &f).unwrap());
        let s = sphere2();
        let ones = ConstructibleFunction::constant(&s, rat(1));
        assert!(skeleton_reduction_check(&s, &ones).is_err());
    }

    #[test]
    fn json_round_trip() {
        let k = circle();
        let ones = ConstructibleFunction::constant(&k, rat(1));
        let v = k.to_json(Some(&ones));
        assert_eq!(v["values"]["a,b"], "1/1");
        let (k2, f2) = SimplicialComplex::from_json(&v).unwrap();
        assert_eq!(k, k2);
        assert_eq!(Some(ones), f2);
    }

    prop_compose! {
        fn arb_complex_and_fn()(
            gens in proptest::collection::vec(
                proptest::collection::btree_set(0usize..6, 1..=4),
                1..=5,
            ),
            raw in proptest::collection::vec((-8i64..=8, 1i64..=4), 64),
        ) -> (SimplicialComplex, ConstructibleFunction) {
            let names = ["a", "b", "c", "d", "e", "f"];
            let gen_labels: Vec<Vec<String>> = gens
                .iter()
                .map(|g| g.iter().map(|&i| names[i].to_string()).collect())
                .collect();
            let k = SimplicialComplex::from_generators(&gen_labels).unwrap();
            let vals: Vec<Rat> = (0..k.simplex_count())
                .map(|i| ratio(raw[i % raw.len()].0, raw[i % raw.len()].1))
                .collect();
            let f = ConstructibleFunction::from_values(&k, vals).unwrap();
            (k, f)
        }
    }

    proptest! {
        #[test]
        fn lemma_defect_always_zero((k, f) in arb_complex_and_fn()) {
            prop_assert_eq!(lemma_2_6_1_defect(&k, &f), rat(0));
        }

        #[test]
        fn integral_is_linear((k, f) in arb_complex_and_fn()) {
            let ones = ConstructibleFunction::constant(&k, rat(1));
            let sum = f.add(&ones);
            let lhs = chi_c_integral(&k, &sum);
            let rhs = chi_c_integral(&k, &f) + chi_c_integral(&k, &ones);
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(chi_c_integral(&k, &ones), rat(k.chi()));
        }
    }
}
