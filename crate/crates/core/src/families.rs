//! Hamming, Johnson and halved-cube graphs, and the coordinate operators
//! used to relate them. Coordinate positions are 1-based.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexLabel};

/// Builders refuse instances larger than this unless told otherwise.
pub const DEFAULT_VERTEX_CAP: usize = 1 << 16;

/// Number of nonzero coordinates.
pub fn weight(x: &VertexLabel) -> usize {
    x.coords().iter().filter(|&&c| c != 0).count()
}

/// Deletes the coordinates at the given 1-based positions.
pub fn delta(x: &VertexLabel, positions: &[usize]) -> Result<VertexLabel> {
    let n = x.len();
    let mut sorted = positions.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != positions.len() {
        return Err(Error::usage("deleted positions must be distinct"));
    }
    if let Some(&p) = sorted.iter().find(|&&p| p == 0 || p > n) {
        return Err(Error::usage(format!("position {p} outside 1..={n}")));
    }
    if sorted.is_empty() || sorted.len() >= n {
        return Err(Error::usage(format!(
            "must delete between 1 and {} of {n} coordinates, got {}",
            n.saturating_sub(1),
            sorted.len()
        )));
    }
    let coords = x
        .coords()
        .iter()
        .enumerate()
        .filter(|(idx, _)| sorted.binary_search(&(idx + 1)).is_err())
        .map(|(_, &c)| c)
        .collect();
    Ok(VertexLabel::from_coords_unchecked(coords))
}

/// Exchanges coordinates `i < j` (1-based).
pub fn pi_swap(x: &VertexLabel, i: usize, j: usize) -> Result<VertexLabel> {
    check_positions(i, j, x.len())?;
    let mut coords = x.coords().to_vec();
    coords.swap(i - 1, j - 1);
    Ok(VertexLabel::from_coords_unchecked(coords))
}

pub(crate) fn check_positions(i: usize, j: usize, n: usize) -> Result<()> {
    if i == 0 || j > n || i >= j {
        return Err(Error::usage(format!(
            "positions must satisfy 1 <= i < j <= {n}, got i={i}, j={j}"
        )));
    }
    Ok(())
}

/// Weight parity of the words in a halved-cube graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn matches(self, w: usize) -> bool {
        w.is_multiple_of(2) == (self == Parity::Even)
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(Error::usage(format!(
                "parity must be even or odd, got {other:?}"
            ))),
        }
    }
}

/// Family builders with a vertex cap.
#[derive(Debug, Clone, Copy)]
pub struct FamilyBuilder {
    pub cap: usize,
}

impl Default for FamilyBuilder {
    fn default() -> Self {
        FamilyBuilder {
            cap: DEFAULT_VERTEX_CAP,
        }
    }
}

impl FamilyBuilder {
    pub fn with_cap(cap: usize) -> Self {
        FamilyBuilder { cap }
    }

    fn admit(&self, count: u128) -> Result<()> {
        if count > self.cap as u128 {
            return Err(Error::Resource {
                requested: count,
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// `H(n, q)`: all of `Z_q^n`, adjacent at Hamming distance 1.
    pub fn hamming(&self, n: usize, q: u8) -> Result<LabeledGraph> {
        if n == 0 || q < 2 {
            return Err(Error::usage(format!(
                "H(n,q) needs n >= 1 and q >= 2, got n={n}, q={q}"
            )));
        }
        let count = u32::try_from(n)
            .ok()
            .and_then(|e| (q as u128).checked_pow(e))
            .unwrap_or(u128::MAX);
        self.admit(count)?;

        // Base-q digits of 0..q^n, most significant first, are in lexicographic order.
        let vertices = (0..count as usize)
            .map(|mut idx| {
                let mut coords = vec![0u8; n];
                for c in coords.iter_mut().rev() {
                    *c = (idx % q as usize) as u8;
                    idx /= q as usize;
                }
                VertexLabel::from_coords_unchecked(coords)
            })
            .collect();
        Ok(LabeledGraph::from_neighbor_rule(
            q,
            n,
            vertices,
            |x, out| {
                for p in 0..n {
                    for letter in (0..q).filter(|&l| l != x.coords()[p]) {
                        let mut c = x.coords().to_vec();
                        c[p] = letter;
                        out.push(VertexLabel::from_coords_unchecked(c));
                    }
                }
            },
        ))
    }

    /// `J(n, k)`: binary words of weight `k`, adjacent at distance 2.
    pub fn johnson(&self, n: usize, k: usize) -> Result<LabeledGraph> {
        if n == 0 || k > n {
            return Err(Error::usage(format!(
                "J(n,k) needs n >= 1 and 0 <= k <= n, got n={n}, k={k}"
            )));
        }
        self.admit(binomial(n, k))?;
        let mut vertices = Vec::new();
        let mut support: Vec<usize> = (0..k).collect();
        loop {
            let mut word = vec![0u8; n];
            for &p in &support {
                word[p] = 1;
            }
            vertices.push(VertexLabel::from_coords_unchecked(word));
            if !next_combination(&mut support, n) {
                break;
            }
        }
        vertices.sort_unstable();
        Ok(LabeledGraph::from_neighbor_rule(2, n, vertices, flip_two))
    }

    /// Binary words of length `n` with the given weight parity, adjacent at
    /// distance 2. Even parity is the halved `n`-cube; odd parity gives the
    /// isomorphic graph on the other half of the cube.
    ///
    /// `n = 1` is accepted and yields a single vertex.
    pub fn halved_cube(&self, n: usize, parity: Parity) -> Result<LabeledGraph> {
        if n == 0 {
            return Err(Error::usage("halved cube needs n >= 1"));
        }
        let count = u32::try_from(n - 1)
            .ok()
            .and_then(|e| 2u128.checked_pow(e))
            .unwrap_or(u128::MAX);
        self.admit(count)?;
        let vertices = (0u64..1 << n)
            .filter(|w| parity.matches(w.count_ones() as usize))
            .map(|w| {
                // Bit n-1-p holds coordinate p so numeric order is lexicographic.
                let coords = (0..n).map(|p| ((w >> (n - 1 - p)) & 1) as u8).collect();
                VertexLabel::from_coords_unchecked(coords)
            })
            .collect();
        Ok(LabeledGraph::from_neighbor_rule(2, n, vertices, flip_two))
    }
}

fn flip_two(x: &VertexLabel, out: &mut Vec<VertexLabel>) {
    let n = x.len();
    for a in 0..n {
        for b in a + 1..n {
            let mut c = x.coords().to_vec();
            c[a] ^= 1;
            c[b] ^= 1;
            out.push(VertexLabel::from_coords_unchecked(c));
        }
    }
}

fn next_combination(support: &mut [usize], n: usize) -> bool {
    let k = support.len();
    let Some(i) = (0..k).rev().find(|&i| support[i] < n - k + i) else {
        return false;
    };
    support[i] += 1;
    for t in i + 1..k {
        support[t] = support[t - 1] + 1;
    }
    true
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// `H(n, q)` under the default cap.
pub fn hamming(n: usize, q: u8) -> Result<LabeledGraph> {
    FamilyBuilder::default().hamming(n, q)
}

/// `J(n, k)` under the default cap.
pub fn johnson(n: usize, k: usize) -> Result<LabeledGraph> {
    FamilyBuilder::default().johnson(n, k)
}

/// Halved cube of the given parity under the default cap.
pub fn halved_cube(n: usize, parity: Parity) -> Result<LabeledGraph> {
    FamilyBuilder::default().halved_cube(n, parity)
}
