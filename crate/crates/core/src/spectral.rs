//! Adjacency spectra, eigenspace bases and eigenfunction sampling.
//!
//! A function `f` lies in the `λ`-eigenspace when `λ f(x) = Σ_{y ~ x} f(y)`
//! at every vertex. The zero function belongs to every eigenspace; the word
//! eigenfunction is kept for nonzero members.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;

/// Default relative tolerance for eigenspace membership.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Eigenvalues closer than this are merged into one eigenspace, and rounded
/// when this close to an integer.
pub const CLUSTER_GAP: f64 = 1e-6;

const MIN_PROJECTED_NORM: f64 = 1e-8;

/// Real values indexed by canonical vertex id.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexFunction {
    values: Vec<f64>,
}

impl VertexFunction {
    pub fn new(values: Vec<f64>) -> Self {
        VertexFunction { values }
    }

    pub fn zeros(len: usize) -> Self {
        VertexFunction {
            values: vec![0.0; len],
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: usize) -> f64 {
        self.values[v]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, other: &VertexFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    /// `alpha * self + beta * other`.
    pub fn combine(&self, alpha: f64, other: &VertexFunction, beta: f64) -> VertexFunction {
        VertexFunction::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| alpha * a + beta * b)
                .collect(),
        )
    }

    pub(crate) fn check_on(&self, g: &LabeledGraph) -> Result<()> {
        if self.len() != g.order() {
            return Err(Error::usage(format!(
                "function has {} values but the graph has {} vertices",
                self.len(),
                g.order()
            )));
        }
        Ok(())
    }
}

/// `(A f)(x) = Σ_{y ∈ N(x)} f(y)`.
pub fn adjacency_apply(g: &LabeledGraph, f: &VertexFunction) -> Result<VertexFunction> {
    f.check_on(g)?;
    Ok(VertexFunction::new(
        (0..g.order())
            .map(|x| g.adj(x).iter().map(|&y| f.values[y]).sum())
            .collect(),
    ))
}

/// `‖A f − λ f‖∞`.
pub fn residual(g: &LabeledGraph, f: &VertexFunction, lambda: f64) -> Result<f64> {
    let af = adjacency_apply(g, f)?;
    Ok(af
        .values
        .iter()
        .zip(&f.values)
        .fold(0.0, |m, (a, v)| m.max((a - lambda * v).abs())))
}

/// Membership in the `λ`-eigenspace up to `tol · max(1, ‖f‖∞)`.
pub fn in_eigenspace(g: &LabeledGraph, f: &VertexFunction, lambda: f64, tol: f64) -> Result<bool> {
    Ok(residual(g, f, lambda)? <= tol * f.max_abs().max(1.0))
}

#[derive(Debug, Clone)]
pub struct Eigenspace {
    /// Integer-rounded when within [`CLUSTER_GAP`] of an integer.
    pub lambda: f64,
    /// Orthonormal basis; its length is the multiplicity.
    pub basis: Vec<VertexFunction>,
}

impl Eigenspace {
    pub fn multiplicity(&self) -> usize {
        self.basis.len()
    }

    pub fn integer_lambda(&self) -> Option<i64> {
        (self.lambda.fract() == 0.0).then_some(self.lambda as i64)
    }

    /// Orthogonal projection of `f` onto this eigenspace.
    pub fn project(&self, f: &VertexFunction) -> VertexFunction {
        let mut out = VertexFunction::zeros(f.len());
        for b in &self.basis {
            let c = f.dot(b);
            for (o, v) in out.values.iter_mut().zip(&b.values) {
                *o += c * v;
            }
        }
        out
    }
}

/// Distinct eigenvalues of the adjacency matrix in ascending order, each
/// with an orthonormal eigenbasis.
#[derive(Debug, Clone)]
pub struct Spectrum {
    order: usize,
    eigenspaces: Vec<Eigenspace>,
}

impl Spectrum {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn eigenspaces(&self) -> &[Eigenspace] {
        &self.eigenspaces
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eigenspaces.iter().map(|e| e.lambda).collect()
    }

    /// The eigenspace whose eigenvalue is within [`CLUSTER_GAP`] of `lambda`.
    pub fn eigenspace(&self, lambda: f64) -> Option<&Eigenspace> {
        self.eigenspaces
            .iter()
            .find(|e| (e.lambda - lambda).abs() <= CLUSTER_GAP)
    }

    pub fn has_integer_eigenvalue(&self, lambda: i64) -> bool {
        self.eigenspaces
            .iter()
            .any(|e| e.integer_lambda() == Some(lambda))
    }

    fn require(&self, lambda: f64) -> Result<&Eigenspace> {
        self.eigenspace(lambda).ok_or_else(|| {
            let available: Vec<String> = self.eigenvalues().iter().map(|l| l.to_string()).collect();
            Error::usage(format!(
                "{lambda} is not an eigenvalue; available: [{}]",
                available.join(", ")
            ))
        })
    }

    /// A unit-norm random element of the `λ`-eigenspace.
    ///
    /// A standard normal vector drawn from a ChaCha8 stream seeded with
    /// `seed` is projected onto the eigenspace; if the projection is
    /// (numerically) zero the next seed is tried.
    pub fn sample(&self, lambda: f64, seed: u64) -> Result<VertexFunction> {
        let space = self.require(lambda)?;
        let mut seed = seed;
        for _ in 0..64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let draw = VertexFunction::new(
                (0..self.order)
                    .map(|_| StandardNormal.sample(&mut rng))
                    .collect(),
            );
            let projected = space.project(&draw);
            let norm = projected.norm();
            if norm >= MIN_PROJECTED_NORM {
                return Ok(VertexFunction::new(
                    projected.values.into_iter().map(|v| v / norm).collect(),
                ));
            }
            seed = seed.wrapping_add(1);
        }
        Err(Error::Numerical(format!(
            "projection onto the {lambda}-eigenspace kept vanishing"
        )))
    }
}

fn adjacency_matrix(g: &LabeledGraph) -> DMatrix<f64> {
    let n = g.order();
    let mut a = DMatrix::zeros(n, n);
    for &(u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    a
}

/// Dense symmetric eigendecomposition of the adjacency matrix, clustered
/// into eigenspaces.
pub fn eigendecompose(g: &LabeledGraph) -> Result<Spectrum> {
    let n = g.order();
    let a = adjacency_matrix(g);
    let frobenius = a.norm();
    let eig = SymmetricEigen::try_new(a, f64::EPSILON, 100_000).ok_or_else(|| {
        Error::Numerical(format!(
            "symmetric eigensolver did not converge ({n}x{n}, Frobenius norm {frobenius:.3})"
        ))
    })?;

    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let mut eigenspaces = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eig.eigenvalues[idx[end]] - eig.eigenvalues[idx[end - 1]] < CLUSTER_GAP {
            end += 1;
        }
        let members = &idx[start..end];
        let mean = members.iter().map(|&i| eig.eigenvalues[i]).sum::<f64>() / members.len() as f64;
        let rounded = mean.round();
        let lambda = if (mean - rounded).abs() <= CLUSTER_GAP {
            // Adding zero turns -0.0 into 0.0.
            rounded + 0.0
        } else {
            mean
        };
        let basis = members
            .iter()
            .map(|&i| VertexFunction::new(eig.eigenvectors.column(i).iter().copied().collect()))
            .collect();
        eigenspaces.push(Eigenspace { lambda, basis });
        start = end;
    }

    let spectrum = Spectrum {
        order: n,
        eigenspaces,
    };
    for space in &spectrum.eigenspaces {
        for b in &space.basis {
            let r = residual(g, b, space.lambda)?;
            if r > DEFAULT_TOL {
                return Err(Error::Numerical(format!(
                    "eigenvector residual {r:e} at lambda {} exceeds {DEFAULT_TOL:e} ({n} vertices)",
                    space.lambda
                )));
            }
        }
    }
    Ok(spectrum)
}

/// Eigendecomposes `g` and samples from the `λ`-eigenspace.
pub fn sample_eigenfunction(g: &LabeledGraph, lambda: f64, seed: u64) -> Result<VertexFunction> {
    eigendecompose(g)?.sample(lambda, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{hamming, johnson};

    fn k2() -> LabeledGraph {
        hamming(1, 2).unwrap()
    }

    fn table(s: &Spectrum) -> Vec<(f64, usize)> {
        s.eigenspaces()
            .iter()
            .map(|e| (e.lambda, e.multiplicity()))
            .collect()
    }

    #[test]
    fn adjacency_apply_examples() {
        let f = VertexFunction::new(vec![1.0, 0.0]);
        assert_eq!(adjacency_apply(&k2(), &f).unwrap().values(), &[0.0, 1.0]);

        let h = hamming(2, 2).unwrap();
        let f = VertexFunction::new(vec![1.0, -1.0, -1.0, 1.0]);
        assert_eq!(
            adjacency_apply(&h, &f).unwrap().values(),
            &[-2.0, 2.0, 2.0, -2.0]
        );
        assert!(adjacency_apply(&h, &VertexFunction::zeros(4))
            .unwrap()
            .is_zero());
        assert!(adjacency_apply(&h, &VertexFunction::zeros(3)).is_err());
    }

    #[test]
    fn residual_examples() {
        let g = k2();
        assert_eq!(
            residual(&g, &VertexFunction::new(vec![1.0, -1.0]), -1.0).unwrap(),
            0.0
        );
        assert_eq!(
            residual(&g, &VertexFunction::new(vec![1.0, 0.0]), 1.0).unwrap(),
            1.0
        );
        assert_eq!(residual(&g, &VertexFunction::zeros(2), 17.5).unwrap(), 0.0);
    }

    #[test]
    fn small_spectra() {
        assert_eq!(
            table(&eigendecompose(&k2()).unwrap()),
            vec![(-1.0, 1), (1.0, 1)]
        );
        assert_eq!(
            table(&eigendecompose(&hamming(2, 2).unwrap()).unwrap()),
            vec![(-2.0, 1), (0.0, 2), (2.0, 1)]
        );
        assert_eq!(
            table(&eigendecompose(&johnson(4, 2).unwrap()).unwrap()),
            vec![(-2.0, 2), (0.0, 3), (4.0, 1)]
        );
        let single = eigendecompose(&johnson(1, 0).unwrap()).unwrap();
        assert_eq!(table(&single), vec![(0.0, 1)]);
    }

    #[test]
    fn sampling_on_an_edge() {
        let s = eigendecompose(&k2()).unwrap();
        let h = 1.0 / 2f64.sqrt();
        for seed in 0..5 {
            let f = s.sample(1.0, seed).unwrap();
            assert!((f.get(0).abs() - h).abs() < 1e-12 && f.get(0) == f.get(1));
            let f = s.sample(-1.0, seed).unwrap();
            assert!((f.get(0).abs() - h).abs() < 1e-12 && f.get(0) == -f.get(1));
        }
    }

    #[test]
    fn sampling_contract() {
        let g = hamming(2, 2).unwrap();
        let s = eigendecompose(&g).unwrap();
        let f = s.sample(0.0, 7).unwrap();
        assert!(residual(&g, &f, 0.0).unwrap() <= 1e-8);
        assert!((f.norm() - 1.0).abs() < 1e-12);
        assert_eq!(f, sample_eigenfunction(&g, 0.0, 7).unwrap());
        let err = s.sample(1.0, 0).unwrap_err().to_string();
        assert!(err.contains("available"), "{err}");
    }
}
