//! Lloyd's k-means with farthest-point seeding, and the recursive cluster tree.

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;

const MAX_ROUNDS: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KMeans {
    pub assignment: Vec<usize>,
    pub centroids: Vec<(f64, f64)>,
}

fn d2(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)
}

fn nearest(p: (f64, f64), centroids: &[(f64, f64)]) -> usize {
    (0..centroids.len()).fold(0, |b, c| if d2(p, centroids[c]) < d2(p, centroids[b]) { c } else { b })
}

/// Clusters `points` into exactly `k` non-empty groups.
pub fn kmeans(points: &[(f64, f64)], k: usize, seed: u64) -> Result<KMeans> {
    let n = points.len();
    if k == 0 || k > n {
        return Err(Error::Infeasible(format!("cannot form {k} clusters from {n} points")));
    }
    let mut r = rng::stream(seed, &[rng::tag::KMEANS]);
    let mut chosen = vec![r.random_range(0..n)];
    while chosen.len() < k {
        let far = (0..n)
            .filter(|i| !chosen.contains(i))
            .map(|i| (i, chosen.iter().map(|&c| d2(points[i], points[c])).fold(f64::INFINITY, f64::min)))
            .fold((usize::MAX, -1.0), |b, x| if x.1 > b.1 { x } else { b })
            .0;
        chosen.push(far);
    }
    let mut centroids: Vec<(f64, f64)> = chosen.iter().map(|&i| points[i]).collect();
    let mut assignment = vec![usize::MAX; n];
    for _ in 0..MAX_ROUNDS {
        let next: Vec<usize> = points.iter().map(|&p| nearest(p, &centroids)).collect();
        let next = repair_empty(points, next, k);
        let changed = next != assignment;
        assignment = next;
        centroids = means(points, &assignment, k);
        if !changed {
            break;
        }
    }
    Ok(KMeans { assignment, centroids })
}

fn means(points: &[(f64, f64)], assignment: &[usize], k: usize) -> Vec<(f64, f64)> {
    let mut sum = vec![(0.0, 0.0, 0usize); k];
    for (p, &c) in points.iter().zip(assignment) {
        sum[c].0 += p.0;
        sum[c].1 += p.1;
        sum[c].2 += 1;
    }
    sum.into_iter().map(|(x, y, m)| (x / m as f64, y / m as f64)).collect()
}

/// Moves the point farthest from its centroid in the largest cluster into
/// each empty cluster.
fn repair_empty(points: &[(f64, f64)], mut assignment: Vec<usize>, k: usize) -> Vec<usize> {
    loop {
        let mut count = vec![0usize; k];
        for &c in &assignment {
            count[c] += 1;
        }
        let Some(empty) = count.iter().position(|&c| c == 0) else {
            return assignment;
        };
        let largest = (0..k).fold(0, |b, c| if count[c] > count[b] { c } else { b });
        let centre = means(points, &assignment, k)[largest];
        let victim = (0..points.len())
            .filter(|&i| assignment[i] == largest)
            .fold(None, |b: Option<usize>, i| match b {
                Some(j) if d2(points[j], centre) >= d2(points[i], centre) => Some(j),
                _ => Some(i),
            })
            .expect("largest cluster is non-empty");
        assignment[victim] = empty;
    }
}

/// `levels[ℓ]` maps entities of the finer level to the `K_{ℓ+1}` clusters
/// of the next coarser one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterTree {
    pub sizes: Vec<usize>,
    pub levels: Vec<KMeans>,
}

impl ClusterTree {
    /// Entity positions at level `ℓ` (0 = the cities themselves).
    pub fn points<'a>(&'a self, cities: &'a [(f64, f64)], level: usize) -> &'a [(f64, f64)] {
        if level == 0 {
            cities
        } else {
            &self.levels[level - 1].centroids
        }
    }
}

/// Recursively clusters `cities` into `sizes[0] > sizes[1] > …` groups.
pub fn build_cluster_tree(cities: &[(f64, f64)], sizes: &[usize], seed: u64) -> Result<ClusterTree> {
    if sizes.is_empty() {
        return Err(Error::Config("at least one clustering level is required".into()));
    }
    let mut prev = cities.len();
    for &k in sizes {
        if k >= prev || k < 2 {
            return Err(Error::Config(format!("level sizes must strictly decrease from {} and stay >= 2: {sizes:?}", cities.len())));
        }
        prev = k;
    }
    let mut levels: Vec<KMeans> = Vec::with_capacity(sizes.len());
    for (l, &k) in sizes.iter().enumerate() {
        let pts = if l == 0 { cities } else { &levels[l - 1].centroids };
        let km = kmeans(pts, k, rng::derive_seed(seed, &[rng::tag::LEVEL, l as u64]))?;
        levels.push(km);
    }
    Ok(ClusterTree { sizes: sizes.to_vec(), levels })
}
