//! Special pairs and the eigenfunction reduction they induce.
//!
//! A special pair of `G` is an automorphism `φ` with a partition
//! `{V₁, V₂, V₃}` of `V(G)` such that
//!
//! 1. `φ` swaps `V₁` and `V₂`,
//! 2. every `x ∈ V_i` (`i = 1, 2`) has exactly one neighbor in `V_{3−i}`,
//!    namely `φ(x)`,
//! 3. `φ` fixes `V₃` pointwise.
//!
//! Given isomorphisms `φ₁: G[V₁] → G₀` and `φ₂: G[V₂] → G₀`, a
//! `λ`-eigenfunction `f` of `G` reduces to
//! `f_P(y) = f(φ₁⁻¹(y)) − f(φ₂⁻¹(y))`, which lies in the `(λ+1)`-eigenspace
//! of `G₀`.

use std::fmt;

use crate::error::{Error, Result};
use crate::families::{check_positions, delta, pi_swap, FamilyBuilder, Parity};
use crate::graph::{
    cartesian_product, check_isomorphism, product_id, LabeledGraph, VertexLabel, VertexMap,
};
use crate::spectral::{eigendecompose, residual, Spectrum, VertexFunction};

/// Which of the three parts a vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Part {
    V1,
    V2,
    V3,
}

/// A partition `{V₁, V₂, V₃}` of the vertex ids `0..order`. `V₃` may be
/// empty; `V₁` and `V₂` may not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    parts: [Vec<usize>; 3],
    part_of: Vec<Part>,
}

impl Partition {
    pub fn new(order: usize, v1: Vec<usize>, v2: Vec<usize>, v3: Vec<usize>) -> Result<Self> {
        let mut part_of: Vec<Option<Part>> = vec![None; order];
        let mut parts = [v1, v2, v3];
        for (set, part) in parts.iter_mut().zip([Part::V1, Part::V2, Part::V3]) {
            set.sort_unstable();
            for &v in set.iter() {
                let slot = part_of.get_mut(v).ok_or_else(|| {
                    Error::usage(format!("vertex id {v} out of range 0..{order}"))
                })?;
                if let Some(prev) = slot {
                    return Err(Error::usage(format!(
                        "vertex {v} is listed in both {prev:?} and {part:?}"
                    )));
                }
                *slot = Some(part);
            }
        }
        if let Some(v) = part_of.iter().position(Option::is_none) {
            return Err(Error::usage(format!("vertex {v} is in no part")));
        }
        if parts[0].is_empty() || parts[1].is_empty() {
            return Err(Error::usage("V1 and V2 must be nonempty"));
        }
        Ok(Partition {
            parts,
            part_of: part_of.into_iter().map(Option::unwrap).collect(),
        })
    }

    /// Builds the partition by classifying every vertex.
    pub fn from_fn(order: usize, classify: impl Fn(usize) -> Part) -> Result<Self> {
        let mut sets = [Vec::new(), Vec::new(), Vec::new()];
        for v in 0..order {
            sets[classify(v) as usize].push(v);
        }
        let [v1, v2, v3] = sets;
        Partition::new(order, v1, v2, v3)
    }

    pub fn order(&self) -> usize {
        self.part_of.len()
    }

    pub fn v1(&self) -> &[usize] {
        &self.parts[0]
    }

    pub fn v2(&self) -> &[usize] {
        &self.parts[1]
    }

    pub fn v3(&self) -> &[usize] {
        &self.parts[2]
    }

    pub fn part_of(&self, v: usize) -> Part {
        self.part_of[v]
    }

    /// Moves `v` into `to`, re-validating the result.
    pub fn with_moved(&self, v: usize, to: Part) -> Result<Partition> {
        let mut sets = self.parts.clone();
        for set in &mut sets {
            set.retain(|&x| x != v);
        }
        sets[to as usize].push(v);
        let [v1, v2, v3] = sets;
        Partition::new(self.order(), v1, v2, v3)
    }
}

/// The defining conditions, in the order they are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    Automorphism,
    /// `φ(V₁) = V₂` and `φ(V₂) = V₁`.
    Swap,
    /// `N(x) ∩ V_{3−i} = {φ(x)}` on `V₁ ∪ V₂`.
    CrossNeighbor,
    /// `φ` fixes `V₃` pointwise.
    FixesRest,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::Automorphism => "automorphism",
            Condition::Swap => "condition 1",
            Condition::CrossNeighbor => "condition 2",
            Condition::FixesRest => "condition 3",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairViolation {
    pub condition: Condition,
    pub witness: usize,
    pub detail: String,
}

impl fmt::Display for PairViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails at vertex {}: {}",
            self.condition.name(),
            self.witness,
            self.detail
        )
    }
}

/// Checks automorphy, then conditions 1, 2 and 3, and reports the first
/// failure with one witness vertex. `Ok(None)` means the pair is special.
pub fn verify_special_pair(
    g: &LabeledGraph,
    phi: &VertexMap,
    parts: &Partition,
) -> Result<Option<PairViolation>> {
    if parts.order() != g.order() {
        return Err(Error::usage(format!(
            "partition covers {} vertices but the graph has {}",
            parts.order(),
            g.order()
        )));
    }
    if let Some(w) = check_isomorphism(g, g, phi)? {
        return Ok(Some(PairViolation {
            condition: Condition::Automorphism,
            witness: w.pair().0,
            detail: w.to_string(),
        }));
    }
    for x in 0..g.order() {
        let expected = match parts.part_of(x) {
            Part::V1 => Part::V2,
            Part::V2 => Part::V1,
            Part::V3 => continue,
        };
        let image = phi.apply(x);
        if parts.part_of(image) != expected {
            return Ok(Some(PairViolation {
                condition: Condition::Swap,
                witness: x,
                detail: format!(
                    "x in {:?} but phi(x) = {image} lies in {:?}",
                    parts.part_of(x),
                    parts.part_of(image)
                ),
            }));
        }
    }
    for x in 0..g.order() {
        let other = match parts.part_of(x) {
            Part::V1 => Part::V2,
            Part::V2 => Part::V1,
            Part::V3 => continue,
        };
        let cross: Vec<usize> = g
            .adj(x)
            .iter()
            .copied()
            .filter(|&y| parts.part_of(y) == other)
            .collect();
        if cross != [phi.apply(x)] {
            return Ok(Some(PairViolation {
                condition: Condition::CrossNeighbor,
                witness: x,
                detail: format!(
                    "neighbors of x in {other:?} are {cross:?}, expected [{}]",
                    phi.apply(x)
                ),
            }));
        }
    }
    for &x in parts.v3() {
        if phi.apply(x) != x {
            return Ok(Some(PairViolation {
                condition: Condition::FixesRest,
                witness: x,
                detail: format!("phi moves x to {}", phi.apply(x)),
            }));
        }
    }
    Ok(None)
}

/// A verified special pair. Owns its graph.
#[derive(Debug, Clone)]
pub struct SpecialPair {
    graph: LabeledGraph,
    phi: VertexMap,
    parts: Partition,
}

impl SpecialPair {
    /// Fails with a usage error naming the violated condition.
    pub fn new(graph: LabeledGraph, phi: VertexMap, parts: Partition) -> Result<Self> {
        if let Some(v) = verify_special_pair(&graph, &phi, &parts)? {
            return Err(Error::usage(format!("not a special pair: {v}")));
        }
        Ok(SpecialPair { graph, phi, parts })
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn phi(&self) -> &VertexMap {
        &self.phi
    }

    pub fn parts(&self) -> &Partition {
        &self.parts
    }
}

/// Outcome of one explicit check, with the offending vertices on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Holds,
    Fails { witness: Vec<usize>, reason: String },
}

impl CheckOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, CheckOutcome::Holds)
    }

    fn fails(witness: Vec<usize>, reason: impl Into<String>) -> Self {
        CheckOutcome::Fails {
            witness,
            reason: reason.into(),
        }
    }
}

/// Structural consequences of being a special pair, each checked directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Remark1Report {
    /// `φ ∘ φ = id`.
    pub involutive: CheckOutcome,
    /// `φ|V₁` is an isomorphism `G[V₁] → G[V₂]`.
    pub halves_isomorphic: CheckOutcome,
    /// `x ↦ (x, 0)` on `V₁`, `x ↦ (φ(x), 1)` on `V₂` is an isomorphism
    /// `G[V₁ ∪ V₂] → G[V₁] □ K₂`.
    pub product_structure: CheckOutcome,
}

impl Remark1Report {
    pub fn all_hold(&self) -> bool {
        self.involutive.holds() && self.halves_isomorphic.holds() && self.product_structure.holds()
    }
}

/// Runs the three structural checks on `(G, φ, {V₁, V₂, V₃})`. The input
/// need not be a special pair; failures are reported per check.
pub fn check_remark1(
    g: &LabeledGraph,
    phi: &VertexMap,
    parts: &Partition,
) -> Result<Remark1Report> {
    if phi.source_order() != g.order()
        || phi.target_order() != g.order()
        || parts.order() != g.order()
    {
        return Err(Error::usage("map and partition must both cover the graph"));
    }

    let involutive = match (0..g.order()).find(|&x| phi.apply(phi.apply(x)) != x) {
        None => CheckOutcome::Holds,
        Some(x) => CheckOutcome::fails(
            vec![x],
            format!("phi(phi({x})) = {}", phi.apply(phi.apply(x))),
        ),
    };

    let (v1, v2) = (parts.v1(), parts.v2());
    let (g1, _) = g.induced_subgraph(v1)?;
    let (g2, _) = g.induced_subgraph(v2)?;

    let halves_isomorphic = match position_map(v1, v2, |x| phi.apply(x)) {
        Err(x) => CheckOutcome::fails(vec![x], format!("phi({x}) is not in V2")),
        Ok(_) if v1.len() != v2.len() => CheckOutcome::fails(
            vec![],
            format!("|V1| = {} but |V2| = {}", v1.len(), v2.len()),
        ),
        Ok(m) => isomorphism_outcome(&g1, &g2, &m, v1)?,
    };

    let mut union: Vec<usize> = v1.iter().chain(v2).copied().collect();
    union.sort_unstable();
    let (g12, _) = g.induced_subgraph(&union)?;
    let k2 = FamilyBuilder::default().hamming(1, 2)?;
    let product = cartesian_product(&g1, &k2);
    let mut image = Vec::with_capacity(union.len());
    let mut bad = None;
    for &x in &union {
        let (base, side) = match parts.part_of(x) {
            Part::V1 => (x, 0),
            _ => (phi.apply(x), 1),
        };
        match v1.binary_search(&base) {
            Ok(pos) => image.push(product_id(pos, side, 2)),
            Err(_) => {
                bad = Some(x);
                break;
            }
        }
    }
    let product_structure = match bad {
        Some(x) => CheckOutcome::fails(vec![x], format!("phi({x}) is not in V1")),
        None if union.len() != product.order() => CheckOutcome::fails(
            vec![],
            format!(
                "|V1 ∪ V2| = {} but the product has {} vertices",
                union.len(),
                product.order()
            ),
        ),
        None => {
            let m = VertexMap::new(image, product.order())?;
            isomorphism_outcome(&g12, &product, &m, &union)?
        }
    };

    Ok(Remark1Report {
        involutive,
        halves_isomorphic,
        product_structure,
    })
}

/// Translates `f` on G-ids into a map between positions of `from` and `to`.
/// `Err(x)` names a vertex of `from` whose image is not in `to`.
fn position_map(
    from: &[usize],
    to: &[usize],
    f: impl Fn(usize) -> usize,
) -> std::result::Result<VertexMap, usize> {
    let image = from
        .iter()
        .map(|&x| to.binary_search(&f(x)).map_err(|_| x))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(VertexMap::new(image, to.len()).expect("positions are in range"))
}

fn isomorphism_outcome(
    a: &LabeledGraph,
    b: &LabeledGraph,
    m: &VertexMap,
    ids: &[usize],
) -> Result<CheckOutcome> {
    if m.source_order() != b.order() {
        return Ok(CheckOutcome::fails(vec![], "vertex counts differ"));
    }
    Ok(match check_isomorphism(a, b, m)? {
        None => CheckOutcome::Holds,
        Some(w) => {
            let (p, q) = w.pair();
            CheckOutcome::fails(vec![ids[p], ids[q]], w.to_string())
        }
    })
}

/// Which part of a context failed validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContextViolation {
    /// `φ₁` is not an isomorphism `G[V₁] → G₀`; witness ids are in `G`.
    Phi1 {
        witness: Vec<usize>,
        reason: String,
    },
    Phi2 {
        witness: Vec<usize>,
        reason: String,
    },
    /// `φ₂(φ(x)) ≠ φ₁(x)` for the witness `x ∈ V₁`.
    Compatibility {
        witness: usize,
    },
}

impl fmt::Display for ContextViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContextViolation::Phi1 { witness, reason } => {
                write!(
                    f,
                    "phi1 is not an isomorphism G[V1] -> G0 ({reason}; witness {witness:?})"
                )
            }
            ContextViolation::Phi2 { witness, reason } => {
                write!(
                    f,
                    "phi2 is not an isomorphism G[V2] -> G0 ({reason}; witness {witness:?})"
                )
            }
            ContextViolation::Compatibility { witness } => {
                write!(f, "phi2(phi(x)) != phi1(x) at vertex {witness}")
            }
        }
    }
}

/// Checks that `phi1`, `phi2` (indexed by position within `V₁`, `V₂`) are
/// isomorphisms onto `G₀` and that `φ₂ ∘ φ = φ₁` on `V₁`.
pub fn check_context_maps(
    pair: &SpecialPair,
    g0: &LabeledGraph,
    phi1: &VertexMap,
    phi2: &VertexMap,
) -> Result<Option<ContextViolation>> {
    let parts = pair.parts();
    for (which, set, map) in [(1, parts.v1(), phi1), (2, parts.v2(), phi2)] {
        let (sub, _) = pair.graph().induced_subgraph(set)?;
        if map.source_order() != set.len() || map.target_order() != g0.order() {
            return Err(Error::usage(format!(
                "phi{which} maps {} -> {} vertices but V{which} has {} and G0 has {}",
                map.source_order(),
                map.target_order(),
                set.len(),
                g0.order()
            )));
        }
        let outcome = if sub.order() == g0.order() {
            isomorphism_outcome(&sub, g0, map, set)?
        } else {
            CheckOutcome::fails(
                vec![],
                format!(
                    "G[V{which}] has {} vertices, G0 has {}",
                    sub.order(),
                    g0.order()
                ),
            )
        };
        if let CheckOutcome::Fails { witness, reason } = outcome {
            return Ok(Some(if which == 1 {
                ContextViolation::Phi1 { witness, reason }
            } else {
                ContextViolation::Phi2 { witness, reason }
            }));
        }
    }
    for (pos, &x) in parts.v1().iter().enumerate() {
        let partner = parts
            .v2()
            .binary_search(&pair.phi().apply(x))
            .expect("special pair maps V1 into V2");
        if phi2.apply(partner) != phi1.apply(pos) {
            return Ok(Some(ContextViolation::Compatibility { witness: x }));
        }
    }
    Ok(None)
}

/// A special pair with the isomorphisms onto the reduced graph `G₀`.
#[derive(Debug, Clone)]
pub struct ReductionContext {
    pair: SpecialPair,
    g0: LabeledGraph,
    phi1: VertexMap,
    phi2: VertexMap,
    /// G₀ id -> G id, through φ₁⁻¹ and φ₂⁻¹.
    from_v1: Vec<usize>,
    from_v2: Vec<usize>,
}

impl ReductionContext {
    /// Validates the maps; an invalid context is a usage error.
    pub fn new(
        pair: SpecialPair,
        g0: LabeledGraph,
        phi1: VertexMap,
        phi2: VertexMap,
    ) -> Result<Self> {
        if let Some(v) = check_context_maps(&pair, &g0, &phi1, &phi2)? {
            return Err(Error::usage(format!("invalid reduction context: {v}")));
        }
        let lift = |set: &[usize], map: &VertexMap| {
            let inv = map.inverse().expect("validated isomorphism");
            inv.image().iter().map(|&pos| set[pos]).collect::<Vec<_>>()
        };
        let from_v1 = lift(pair.parts().v1(), &phi1);
        let from_v2 = lift(pair.parts().v2(), &phi2);
        Ok(ReductionContext {
            pair,
            g0,
            phi1,
            phi2,
            from_v1,
            from_v2,
        })
    }

    pub fn pair(&self) -> &SpecialPair {
        &self.pair
    }

    pub fn graph(&self) -> &LabeledGraph {
        self.pair.graph()
    }

    pub fn reduced_graph(&self) -> &LabeledGraph {
        &self.g0
    }

    pub fn phi1(&self) -> &VertexMap {
        &self.phi1
    }

    pub fn phi2(&self) -> &VertexMap {
        &self.phi2
    }

    pub fn remark1(&self) -> Result<Remark1Report> {
        check_remark1(self.graph(), self.pair.phi(), self.pair.parts())
    }
}

/// `h(x) = f(x) − f(φ(x))`.
pub fn fold(f: &VertexFunction, phi: &VertexMap) -> Result<VertexFunction> {
    if f.len() != phi.source_order() || phi.source_order() != phi.target_order() {
        return Err(Error::usage(format!(
            "function has {} values but the map is {} -> {}",
            f.len(),
            phi.source_order(),
            phi.target_order()
        )));
    }
    Ok(VertexFunction::new(
        (0..f.len())
            .map(|x| f.get(x) - f.get(phi.apply(x)))
            .collect(),
    ))
}

/// `f_P(y) = f(φ₁⁻¹(y)) − f(φ₂⁻¹(y))` on `G₀`.
pub fn reduce(f: &VertexFunction, ctx: &ReductionContext) -> Result<VertexFunction> {
    f.check_on(ctx.graph())?;
    Ok(VertexFunction::new(
        ctx.from_v1
            .iter()
            .zip(&ctx.from_v2)
            .map(|(&a, &b)| f.get(a) - f.get(b))
            .collect(),
    ))
}

/// The same reduction computed as the fold restricted to `V₁` and carried
/// to `G₀` by `φ₁`.
pub fn reduce_via_fold(f: &VertexFunction, ctx: &ReductionContext) -> Result<VertexFunction> {
    f.check_on(ctx.graph())?;
    let h = fold(f, ctx.pair.phi())?;
    let mut out = vec![0.0; ctx.g0.order()];
    for (pos, &x) in ctx.pair.parts().v1().iter().enumerate() {
        out[ctx.phi1.apply(pos)] = h.get(x);
    }
    Ok(VertexFunction::new(out))
}

/// Result of reducing sampled eigenfunctions for one eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremCheck {
    pub lambda: f64,
    pub trials: usize,
    /// Largest `‖A₀ f_P − (λ+1) f_P‖∞` over the trials.
    pub max_residual: f64,
    /// Largest `‖f_P‖∞` over the trials.
    pub max_reduced_norm: f64,
    /// Whether `λ + 1` is an eigenvalue of `G₀`.
    pub target_is_eigenvalue: bool,
    /// Every trial met `residual ≤ tol · max(1, ‖f_P‖∞)`.
    pub pass: bool,
}

/// Reduces `trials` sampled `λ`-eigenfunctions (seeds `seed`, `seed+1`, …)
/// and measures membership of each `f_P` in the `(λ+1)`-eigenspace of `G₀`.
///
/// `spectrum` must be the spectrum of `ctx.graph()`; `reduced_spectrum`,
/// when given, that of `G₀` and is used only for reporting.
pub fn theorem_check(
    ctx: &ReductionContext,
    spectrum: &Spectrum,
    reduced_spectrum: Option<&Spectrum>,
    lambda: f64,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<TheoremCheck> {
    if spectrum.order() != ctx.graph().order() {
        return Err(Error::usage(
            "spectrum does not belong to the context graph",
        ));
    }
    let space = spectrum.eigenspace(lambda).ok_or_else(|| {
        Error::usage(format!(
            "{lambda} is not an eigenvalue; available: {:?}",
            spectrum.eigenvalues()
        ))
    })?;
    let lambda = space.lambda;
    let target = lambda + 1.0;
    let target_is_eigenvalue = match (reduced_spectrum, space.integer_lambda()) {
        (Some(s), Some(l)) => s.has_integer_eigenvalue(l + 1),
        (Some(s), None) => s.eigenspace(target).is_some(),
        (None, _) => true,
    };

    let mut max_residual = 0.0f64;
    let mut max_reduced_norm = 0.0f64;
    let mut pass = true;
    for t in 0..trials {
        let f = spectrum.sample(lambda, seed.wrapping_add(t as u64))?;
        let reduced = reduce(&f, ctx)?;
        let r = residual(&ctx.g0, &reduced, target)?;
        let norm = reduced.max_abs();
        pass &= r <= tol * norm.max(1.0);
        max_residual = max_residual.max(r);
        max_reduced_norm = max_reduced_norm.max(norm);
    }
    Ok(TheoremCheck {
        lambda,
        trials,
        max_residual,
        max_reduced_norm,
        target_is_eigenvalue,
        pass,
    })
}

/// [`theorem_check`] for every eigenvalue of `G`, ascending.
pub fn theorem_check_all(
    ctx: &ReductionContext,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<Vec<TheoremCheck>> {
    let spectrum = eigendecompose(ctx.graph())?;
    let reduced = eigendecompose(ctx.reduced_graph())?;
    spectrum
        .eigenvalues()
        .into_iter()
        .map(|l| theorem_check(ctx, &spectrum, Some(&reduced), l, trials, seed, tol))
        .collect()
}

impl FamilyBuilder {
    /// `H(n, q)` with `V₁ = {x_r = k}`, `V₂ = {x_r = m}`, `φ` applying the
    /// letter transposition `(k m)` at coordinate `r`, `G₀ = H(n−1, q)` and
    /// `φ₁ = φ₂ = Δ_r`.
    pub fn hamming_context(
        &self,
        n: usize,
        q: u8,
        r: usize,
        k: u8,
        m: u8,
    ) -> Result<ReductionContext> {
        if n < 2 {
            return Err(Error::usage(format!(
                "hamming context needs n >= 2, got {n}"
            )));
        }
        if r == 0 || r > n {
            return Err(Error::usage(format!("r must be in 1..={n}, got {r}")));
        }
        if k >= q || m >= q || k == m {
            return Err(Error::usage(format!(
                "need distinct letters k, m in Z_{q}, got k={k}, m={m}"
            )));
        }
        let g = self.hamming(n, q)?;
        let g0 = self.hamming(n - 1, q)?;
        assemble_context(
            g,
            g0,
            |x| {
                let mut c = x.coords().to_vec();
                let v = &mut c[r - 1];
                if *v == k {
                    *v = m;
                } else if *v == m {
                    *v = k;
                }
                VertexLabel::from_coords_unchecked(c)
            },
            |x| classify(x.coord(r) == k, x.coord(r) == m),
            &[r],
        )
    }

    /// `J(n, k)` with `V₁ = {x_i = 1, x_j = 0}`, `V₂ = {x_i = 0, x_j = 1}`,
    /// `φ = π_{i,j}`, `G₀ = J(n−2, k−1)` and `φ₁ = φ₂ = Δ_{i,j}`.
    pub fn johnson_context(
        &self,
        n: usize,
        k: usize,
        i: usize,
        j: usize,
    ) -> Result<ReductionContext> {
        if n < 3 {
            return Err(Error::usage(format!(
                "johnson context needs n >= 3, got {n}"
            )));
        }
        if k == 0 || k >= n {
            return Err(Error::usage(format!(
                "johnson context needs 1 <= k <= n-1, got k={k}"
            )));
        }
        check_positions(i, j, n)?;
        let g = self.johnson(n, k)?;
        let g0 = self.johnson(n - 2, k - 1)?;
        assemble_context(
            g,
            g0,
            |x| pi_swap(x, i, j).expect("positions checked"),
            |x| {
                classify(
                    x.coord(i) == 1 && x.coord(j) == 0,
                    x.coord(i) == 0 && x.coord(j) == 1,
                )
            },
            &[i, j],
        )
    }

    /// Halved `n`-cube with the same `V₁`, `V₂`, `φ` as the Johnson case and
    /// `G₀` the odd-weight words of length `n−2` at distance 2.
    pub fn halved_cube_context(&self, n: usize, i: usize, j: usize) -> Result<ReductionContext> {
        if n < 3 {
            return Err(Error::usage(format!(
                "halved-cube context needs n >= 3, got {n}"
            )));
        }
        check_positions(i, j, n)?;
        let g = self.halved_cube(n, Parity::Even)?;
        let g0 = self.halved_cube(n - 2, Parity::Odd)?;
        assemble_context(
            g,
            g0,
            |x| pi_swap(x, i, j).expect("positions checked"),
            |x| {
                classify(
                    x.coord(i) == 1 && x.coord(j) == 0,
                    x.coord(i) == 0 && x.coord(j) == 1,
                )
            },
            &[i, j],
        )
    }
}

fn classify(in_v1: bool, in_v2: bool) -> Part {
    match (in_v1, in_v2) {
        (true, _) => Part::V1,
        (false, true) => Part::V2,
        _ => Part::V3,
    }
}

fn assemble_context(
    g: LabeledGraph,
    g0: LabeledGraph,
    phi: impl Fn(&VertexLabel) -> VertexLabel,
    part: impl Fn(&VertexLabel) -> Part,
    deleted: &[usize],
) -> Result<ReductionContext> {
    let lookup = |graph: &LabeledGraph, label: &VertexLabel| {
        graph
            .index_of(label)
            .unwrap_or_else(|| panic!("label {label} is not a vertex of the target graph"))
    };
    let phi_map = VertexMap::from_fn(g.order(), g.order(), |x| lookup(&g, &phi(g.label(x))))?;
    let parts = Partition::from_fn(g.order(), |x| part(g.label(x)))?;
    let down = |set: &[usize]| {
        VertexMap::new(
            set.iter()
                .map(|&x| lookup(&g0, &delta(g.label(x), deleted).expect("valid deletion")))
                .collect(),
            g0.order(),
        )
    };
    let phi1 = down(parts.v1())?;
    let phi2 = down(parts.v2())?;
    // Our constructions are special pairs by design; failure here is a bug.
    let pair = SpecialPair::new(g, phi_map, parts)
        .unwrap_or_else(|e| panic!("constructed pair is invalid: {e}"));
    Ok(ReductionContext::new(pair, g0, phi1, phi2)
        .unwrap_or_else(|e| panic!("constructed context is invalid: {e}")))
}

/// [`FamilyBuilder::hamming_context`] under the default cap.
pub fn hamming_context(n: usize, q: u8, r: usize, k: u8, m: u8) -> Result<ReductionContext> {
    FamilyBuilder::default().hamming_context(n, q, r, k, m)
}

/// [`FamilyBuilder::johnson_context`] under the default cap.
pub fn johnson_context(n: usize, k: usize, i: usize, j: usize) -> Result<ReductionContext> {
    FamilyBuilder::default().johnson_context(n, k, i, j)
}

/// [`FamilyBuilder::halved_cube_context`] under the default cap.
pub fn halved_cube_context(n: usize, i: usize, j: usize) -> Result<ReductionContext> {
    FamilyBuilder::default().halved_cube_context(n, i, j)
}
