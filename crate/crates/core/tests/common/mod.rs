//! Test oracles that do not share code paths with the library: brute-force
//! word enumeration with pairwise distance checks, and exact eigenvalue
//! multiplicities from integer rank computations.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use spectral_reduce::reduction::{
    halved_cube_context, hamming_context, johnson_context, ReductionContext,
};
use spectral_reduce::spectral::{eigendecompose, Spectrum};
use spectral_reduce::LabeledGraph;

/// All words of length `n` over `0..q`, lexicographic, as plain vectors.
pub fn all_words(n: usize, q: u8) -> Vec<Vec<u8>> {
    let mut words = vec![vec![]];
    for _ in 0..n {
        words = words
            .into_iter()
            .flat_map(|w| {
                (0..q).map(move |c| {
                    let mut w = w.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    words
}

pub fn distance(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Brute-force graph: words kept by `keep`, edges between every pair at
/// Hamming distance `d`.
pub fn brute_force(
    n: usize,
    q: u8,
    keep: impl Fn(&[u8]) -> bool,
    d: usize,
) -> (Vec<Vec<u8>>, Vec<(usize, usize)>) {
    let words: Vec<Vec<u8>> = all_words(n, q).into_iter().filter(|w| keep(w)).collect();
    let mut edges = Vec::new();
    for a in 0..words.len() {
        for b in a + 1..words.len() {
            if distance(&words[a], &words[b]) == d {
                edges.push((a, b));
            }
        }
    }
    (words, edges)
}

pub fn matches_brute_force(g: &LabeledGraph, oracle: &(Vec<Vec<u8>>, Vec<(usize, usize)>)) -> bool {
    let labels: Vec<Vec<u8>> = g.vertices().iter().map(|v| v.coords().to_vec()).collect();
    labels == oracle.0 && g.edges() == oracle.1.as_slice()
}

pub fn weight(w: &[u8]) -> usize {
    w.iter().filter(|&&c| c != 0).count()
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn exact_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let num = &m[rank][c] * &m[i][j] - &m[i][c] * &m[rank][j];
                let (q, rem) = (num.clone() / &prev, num % &prev);
                assert!(rem.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Exact multiplicity of the integer `lambda` as an adjacency eigenvalue:
/// `|V| − rank(A − λI)`.
pub fn exact_multiplicity(g: &LabeledGraph, lambda: i64) -> usize {
    let n = g.order();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for (v, row) in m.iter_mut().enumerate() {
        row[v] = BigInt::from(-lambda);
    }
    for &(a, b) in g.edges() {
        m[a][b] = BigInt::one();
        m[b][a] = BigInt::one();
    }
    n - exact_rank(m)
}

/// Integer spectrum found by scanning `[-maxdeg, maxdeg]`. The second value
/// is whether the multiplicities account for every vertex, i.e. whether the
/// whole spectrum is integral.
pub fn exact_integer_spectrum(g: &LabeledGraph) -> (Vec<(i64, usize)>, bool) {
    let maxdeg = (0..g.order())
        .map(|v| g.degree(v).unwrap())
        .max()
        .unwrap_or(0) as i64;
    let table: Vec<(i64, usize)> = (-maxdeg..=maxdeg)
        .map(|l| (l, exact_multiplicity(g, l)))
        .filter(|&(_, m)| m > 0)
        .collect();
    let total: usize = table.iter().map(|&(_, m)| m).sum();
    (table, total == g.order())
}

/// One graph of the Theorem suite with its reduction contexts and spectra.
pub struct SuiteEntry {
    pub name: String,
    pub contexts: Vec<(String, ReductionContext)>,
    pub spectrum: Spectrum,
    pub reduced_spectra: Vec<Spectrum>,
}

/// Hamming graphs with `n ∈ {2,3,4}`, `q ∈ {2,3,4}` up to 256 vertices,
/// `J(n,k)` for `3 ≤ n ≤ 8`, `1 ≤ k ≤ n−1`, halved cubes for `3 ≤ n ≤ 8`.
/// Each graph gets two contexts on different coordinates.
pub fn theorem_suite() -> Vec<SuiteEntry> {
    let mut out = Vec::new();
    for n in 2..=4usize {
        for q in 2..=4u8 {
            if (q as usize).pow(n as u32) > 256 {
                continue;
            }
            out.push(entry(
                format!("H({n},{q})"),
                vec![
                    (
                        "r=1,k=0,m=1".to_string(),
                        hamming_context(n, q, 1, 0, 1).unwrap(),
                    ),
                    (
                        format!("r={n},k={},m=0", q - 1),
                        hamming_context(n, q, n, q - 1, 0).unwrap(),
                    ),
                ],
            ));
        }
    }
    for n in 3..=8usize {
        for k in 1..n {
            out.push(entry(
                format!("J({n},{k})"),
                vec![
                    ("i=1,j=2".into(), johnson_context(n, k, 1, 2).unwrap()),
                    (
                        format!("i={},j={n}", n - 1),
                        johnson_context(n, k, n - 1, n).unwrap(),
                    ),
                ],
            ));
        }
    }
    for n in 3..=8usize {
        out.push(entry(
            format!("1/2H({n})"),
            vec![
                ("i=1,j=2".into(), halved_cube_context(n, 1, 2).unwrap()),
                (format!("i=2,j={n}"), halved_cube_context(n, 2, n).unwrap()),
            ],
        ));
    }
    out
}

fn entry(name: String, contexts: Vec<(String, ReductionContext)>) -> SuiteEntry {
    let spectrum = eigendecompose(contexts[0].1.graph()).unwrap();
    let reduced_spectra = contexts
        .iter()
        .map(|(_, c)| eigendecompose(c.reduced_graph()).unwrap())
        .collect();
    SuiteEntry {
        name,
        contexts,
        spectrum,
        reduced_spectra,
    }
}
