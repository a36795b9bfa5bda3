//! Graph builders for the denoising pipelines and their shift operators.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::RealMatrix;
use crate::scalar::Scalar;

/// Undirected weighted graph: symmetric, nonnegative, zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph<T> {
    weights: RealMatrix<T>,
}

impl<T: Scalar> Graph<T> {
    /// Graph on `n` nodes without edges.
    pub fn empty(n: usize) -> Self {
        Self {
            weights: RealMatrix::zeros(n, n),
        }
    }

    pub fn from_weights(weights: RealMatrix<T>) -> Result<Self> {
        if !weights.is_square() {
            return Err(Error::dim("weight matrix must be square"));
        }
        let n = weights.rows();
        for i in 0..n {
            if weights[(i, i)] != T::zero() {
                return Err(Error::param(format!("self-loop at node {i}")));
            }
            for j in 0..n {
                let w = weights[(i, j)];
                if !w.is_finite() || w < T::zero() {
                    return Err(Error::param(format!("invalid weight {w} at ({i}, {j})")));
                }
                if w != weights[(j, i)] {
                    return Err(Error::param(format!("asymmetric weight at ({i}, {j})")));
                }
            }
        }
        Ok(Self { weights })
    }

    /// Builds a graph from an undirected edge list. Repeated edges add up.
    pub fn from_edges(n: usize, edges: &[(usize, usize, T)]) -> Result<Self> {
        let mut w = RealMatrix::zeros(n, n);
        for &(i, j, weight) in edges {
            if i >= n || j >= n {
                return Err(Error::dim(format!("edge ({i}, {j}) outside {n} nodes")));
            }
            if i == j {
                return Err(Error::param(format!("self-loop at node {i}")));
            }
            if !weight.is_finite() || weight < T::zero() {
                return Err(Error::param(format!("invalid weight {weight} on edge ({i}, {j})")));
            }
            w[(i, j)] = w[(i, j)] + weight;
            w[(j, i)] = w[(i, j)];
        }
        Ok(Self { weights: w })
    }

    pub fn n(&self) -> usize {
        self.weights.rows()
    }

    pub fn weights(&self) -> &RealMatrix<T> {
        &self.weights
    }

    pub fn weight(&self, i: usize, j: usize) -> T {
        self.weights[(i, j)]
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.n())
            .filter(|&j| self.weights[(i, j)] > T::zero())
            .collect()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).len()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n()).map(|i| self.degree(i)).sum::<usize>() / 2
    }
}

/// Edge weighting for k-NN graphs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Weighting<T> {
    Binary,
    /// `exp(-d² / (2 σ²))`; `None` uses the mean k-NN distance as `σ`.
    Gaussian(Option<T>),
}

/// Which matrix of a graph serves as shift operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum GsoKind {
    Adjacency,
    #[default]
    Laplacian,
}

impl GsoKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GsoKind::Adjacency => "adjacency",
            GsoKind::Laplacian => "laplacian",
        }
    }
}

impl fmt::Display for GsoKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GsoKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "adjacency" | "a" | "w" => Ok(GsoKind::Adjacency),
            "laplacian" | "l" => Ok(GsoKind::Laplacian),
            other => Err(Error::param(format!(
                "unknown shift operator '{other}' (adjacency|laplacian)"
            ))),
        }
    }
}

/// `W` or `D - W`.
pub fn gso<T: Scalar>(g: &Graph<T>, kind: GsoKind) -> RealMatrix<T> {
    match kind {
        GsoKind::Adjacency => g.weights.clone(),
        GsoKind::Laplacian => {
            let n = g.n();
            let mut l = g.weights.map(|w| -w);
            for i in 0..n {
                l[(i, i)] = g.weights.row(i).iter().copied().sum();
            }
            l
        }
    }
}

fn squared_distance<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&u, &v)| (u - v) * (u - v)).sum()
}

/// k-NN graph with union symmetrization. Distance ties go to the lower index.
pub fn knn_graph<T: Scalar, P: AsRef<[T]>>(
    points: &[P],
    k: usize,
    weighting: Weighting<T>,
) -> Result<Graph<T>> {
    let n = points.len();
    if k == 0 {
        return Err(Error::param("k must be at least 1"));
    }
    if k >= n {
        return Err(Error::param(format!("k = {k} needs more than {n} points")));
    }
    let dim = points[0].as_ref().len();
    for (i, p) in points.iter().enumerate() {
        let p = p.as_ref();
        if p.len() != dim {
            return Err(Error::dim(format!("point {i} has {} coordinates, expected {dim}", p.len())));
        }
        if p.iter().any(|v| !v.is_finite()) {
            return Err(Error::param(format!("point {i} has non-finite coordinates")));
        }
    }

    let selections: Vec<Vec<(usize, T)>> = (0..n)
        .map(|i| {
            let pi = points[i].as_ref();
            let mut cand: Vec<(usize, T)> = (0..n)
                .filter(|&j| j != i)
                .map(|j| (j, squared_distance(pi, points[j].as_ref())))
                .collect();
            cand.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("finite distance").then(a.0.cmp(&b.0)));
            cand.truncate(k);
            cand
        })
        .collect();

    let sigma = match weighting {
        Weighting::Binary => None,
        Weighting::Gaussian(Some(s)) => {
            if !(s > T::zero()) || !s.is_finite() {
                return Err(Error::param("Gaussian bandwidth must be positive"));
            }
            Some(s)
        }
        Weighting::Gaussian(None) => {
            let total: T = selections.iter().flatten().map(|&(_, d2)| d2.sqrt()).sum();
            let mean = total / T::from_count(n * k);
            Some(if mean > T::zero() { mean } else { T::one() })
        }
    };

    let mut w = RealMatrix::zeros(n, n);
    for (i, sel) in selections.iter().enumerate() {
        for &(j, d2) in sel {
            let weight = match sigma {
                None => T::one(),
                Some(s) => (-d2 / (T::lit(2.0) * s * s)).exp(),
            };
            w[(i, j)] = weight;
            w[(j, i)] = weight;
        }
    }
    Ok(Graph { weights: w })
}

/// Binary k-NN graph over the time indices `0..length`.
pub fn sequence_graph<T: Scalar>(length: usize, k: usize) -> Result<Graph<T>> {
    let pts: Vec<[T; 1]> = (0..length).map(|i| [T::from_count(i)]).collect();
    knn_graph(&pts, k, Weighting::Binary)
}

/// Binary k-NN graph over the pixel coordinates of a `rows × cols` block,
/// nodes numbered row-major. `k` is clamped to the node count minus one.
pub fn pixel_grid_graph<T: Scalar>(rows: usize, cols: usize, k: usize) -> Result<Graph<T>> {
    let n = rows * cols;
    if n == 0 {
        return Err(Error::dim("pixel grid must be nonempty"));
    }
    if n == 1 {
        return Ok(Graph::empty(1));
    }
    let pts: Vec<[T; 2]> = (0..n)
        .map(|i| [T::from_count(i / cols), T::from_count(i % cols)])
        .collect();
    knn_graph(&pts, k.min(n - 1), Weighting::Binary)
}

/// The 64-node 4-NN graph of an 8×8 image block.
pub fn image_block_graph<T: Scalar>() -> Graph<T> {
    pixel_grid_graph(8, 8, 4).expect("fixed layout")
}

/// One spatial patch: the point indices it owns and its local graph.
#[derive(Debug, Clone)]
pub struct Patch<T> {
    pub indices: Vec<usize>,
    pub graph: Graph<T>,
}

#[derive(Debug, Clone)]
pub struct PatchPartition<T> {
    pub patches: Vec<Patch<T>>,
    pub max_patch_size: usize,
}

impl<T> PatchPartition<T> {
    pub fn len(&self) -> usize {
        self.patches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patches.is_empty()
    }
}

#[allow(clippy::needless_range_loop)]
fn median_split<T: Scalar>(points: &[[T; 3]], idx: Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
    if idx.len() <= max {
        out.push(idx);
        return;
    }
    let mut axis = 0;
    let mut widest = T::neg_infinity();
    for a in 0..3 {
        let (lo, hi) = idx.iter().fold((T::infinity(), T::neg_infinity()), |(lo, hi), &i| {
            (lo.min(points[i][a]), hi.max(points[i][a]))
        });
        if hi - lo > widest {
            widest = hi - lo;
            axis = a;
        }
    }
    let mut idx = idx;
    idx.sort_by(|&i, &j| {
        points[i][axis]
            .partial_cmp(&points[j][axis])
            .expect("finite coordinate")
            .then(i.cmp(&j))
    });
    let right = idx.split_off(idx.len() / 2);
    median_split(points, idx, max, out);
    median_split(points, right, max, out);
}

/// Recursive median split along the longest bounding-box axis, then a
/// Gaussian k-NN graph per patch (`k` clamped to the patch size minus one).
pub fn pointcloud_patches<T: Scalar>(
    points: &[[T; 3]],
    max_patch: usize,
    k: usize,
    sigma: Option<T>,
) -> Result<PatchPartition<T>> {
    if points.is_empty() {
        return Err(Error::param("point cloud is empty"));
    }
    if max_patch == 0 {
        return Err(Error::param("patch size must be at least 1"));
    }
    if points.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::param("point cloud has non-finite coordinates"));
    }
    let mut cells = Vec::new();
    median_split(points, (0..points.len()).collect(), max_patch, &mut cells);
    let patches = cells
        .into_par_iter()
        .map(|indices| {
            let m = indices.len();
            let graph = if m < 2 || k == 0 {
                Graph::empty(m)
            } else {
                let local: Vec<[T; 3]> = indices.iter().map(|&i| points[i]).collect();
                knn_graph(&local, k.min(m - 1), Weighting::Gaussian(sigma))?
            };
            Ok(Patch { indices, graph })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PatchPartition {
        patches,
        max_patch_size: max_patch,
    })
}
