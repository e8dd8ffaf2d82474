//! TSPLIB node-coordinate files with `EUC_2D` or `GEO` weights.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EdgeWeight {
    Euc2d,
    Geo,
    /// Distances supplied directly.
    Explicit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TspInstance {
    pub name: String,
    pub coords: Vec<(f64, f64)>,
    pub weight: EdgeWeight,
    /// Row-major `N×N`, symmetric with zero diagonal.
    dist: Vec<f64>,
}

impl TspInstance {
    pub fn from_coords(name: impl Into<String>, coords: Vec<(f64, f64)>, weight: EdgeWeight) -> Result<Self> {
        if weight == EdgeWeight::Explicit {
            return Err(Error::Domain("explicit weights need a distance matrix".into()));
        }
        let n = coords.len();
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = pair_distance(weight, coords[i], coords[j]);
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        Ok(TspInstance { name: name.into(), coords, weight, dist })
    }

    /// Square symmetric matrix with zero diagonal.
    pub fn from_matrix(name: impl Into<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let mut dist = Vec::with_capacity(n * n);
        for r in &rows {
            if r.len() != n {
                return Err(Error::Dimension { expected: n, actual: r.len() });
            }
            dist.extend_from_slice(r);
        }
        for i in 0..n {
            if dist[i * n + i] != 0.0 {
                return Err(Error::Domain(format!("non-zero diagonal at city {i}")));
            }
            for j in 0..i {
                if dist[i * n + j] != dist[j * n + i] {
                    return Err(Error::Domain(format!("distance matrix not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(TspInstance { name: name.into(), coords: Vec::new(), weight: EdgeWeight::Explicit, dist })
    }

    pub fn num_cities(&self) -> usize {
        (self.dist.len() as f64).sqrt() as usize
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.num_cities() + j]
    }

    pub fn max_dist(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    /// Length of a closed tour including the return leg.
    pub fn tour_cost(&self, tour: &[usize]) -> f64 {
        (0..tour.len()).map(|t| self.dist(tour[t], tour[(t + 1) % tour.len()])).sum()
    }
}

/// TSPLIB distance between two points, integer rounding included.
pub fn pair_distance(weight: EdgeWeight, a: (f64, f64), b: (f64, f64)) -> f64 {
    match weight {
        EdgeWeight::Euc2d => {
            let (dx, dy) = (a.0 - b.0, a.1 - b.1);
            ((dx * dx + dy * dy).sqrt() + 0.5).floor()
        }
        EdgeWeight::Geo => {
            #[allow(clippy::approx_constant)]
            const PI: f64 = 3.141592;
            const RRR: f64 = 6378.388;
            let rad = |x: f64| {
                let deg = x.trunc();
                PI * (deg + 5.0 * (x - deg) / 3.0) / 180.0
            };
            let (lat_a, lon_a, lat_b, lon_b) = (rad(a.0), rad(a.1), rad(b.0), rad(b.1));
            let q1 = (lon_a - lon_b).cos();
            let q2 = (lat_a - lat_b).cos();
            let q3 = (lat_a + lat_b).cos();
            (RRR * (0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)).acos() + 1.0).trunc()
        }
        EdgeWeight::Explicit => f64::NAN,
    }
}

pub fn parse_tsplib(text: &str) -> Result<TspInstance> {
    let mut name = String::from("unnamed");
    let mut dimension: Option<usize> = None;
    let mut weight: Option<EdgeWeight> = None;
    let mut coords: Vec<(usize, f64, f64)> = Vec::new();
    let mut in_coords = false;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line == "EOF" {
            break;
        }
        if in_coords {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if let [id, x, y] = toks[..] {
                let num = |t: &str| t.parse::<f64>().map_err(|_| Error::parse(ln, format!("bad coordinate `{t}`")));
                let id: usize = id.parse().map_err(|_| Error::parse(ln, format!("bad node id `{id}`")))?;
                coords.push((id, num(x)?, num(y)?));
                continue;
            }
            in_coords = false;
        }
        if line.starts_with("NODE_COORD_SECTION") {
            in_coords = true;
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(Error::parse(ln, format!("unexpected line `{line}`")));
        };
        let value = value.trim();
        match key.trim() {
            "NAME" => name = value.to_string(),
            "TYPE" if value != "TSP" => return Err(Error::parse(ln, format!("unsupported problem type `{value}`"))),
            "DIMENSION" => {
                dimension = Some(value.parse().map_err(|_| Error::parse(ln, format!("bad dimension `{value}`")))?)
            }
            "EDGE_WEIGHT_TYPE" => {
                weight = Some(match value {
                    "EUC_2D" => EdgeWeight::Euc2d,
                    "GEO" => EdgeWeight::Geo,
                    other => return Err(Error::parse(ln, format!("unsupported edge weight type `{other}`"))),
                })
            }
            _ => {}
        }
    }
    let n = dimension.ok_or_else(|| Error::parse(0, "missing DIMENSION"))?;
    let weight = weight.ok_or_else(|| Error::parse(0, "missing EDGE_WEIGHT_TYPE"))?;
    if coords.len() != n {
        return Err(Error::parse(0, format!("DIMENSION is {n} but {} coordinates given", coords.len())));
    }
    coords.sort_by_key(|c| c.0);
    if coords.iter().enumerate().any(|(i, c)| c.0 != i + 1) {
        return Err(Error::parse(0, "node ids must be 1..=DIMENSION"));
    }
    TspInstance::from_coords(name, coords.into_iter().map(|c| (c.1, c.2)).collect(), weight)
}

pub fn read_tsplib(path: impl AsRef<Path>) -> Result<TspInstance> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_tsplib(&text)
}

const BUNDLED: &[(&str, &str, f64)] = &[
    ("burma14", include_str!("../../../data/tsplib/burma14.tsp"), 3323.0),
    ("ulysses16", include_str!("../../../data/tsplib/ulysses16.tsp"), 6859.0),
    ("berlin52", include_str!("../../../data/tsplib/berlin52.tsp"), 7542.0),
];

/// Instances shipped with the crate.
pub fn bundled(name: &str) -> Option<TspInstance> {
    BUNDLED.iter().find(|b| b.0 == name).map(|b| parse_tsplib(b.1).expect("bundled instance parses"))
}

/// Published optimal tour length of a bundled instance.
pub fn bundled_optimum(name: &str) -> Option<f64> {
    BUNDLED.iter().find(|b| b.0 == name).map(|b| b.2)
}

pub fn bundled_names() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|b| b.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn berlin52_optimal_tour() {
        let inst = bundled("berlin52").unwrap();
        assert_eq!(inst.num_cities(), 52);
        assert_eq!(inst.weight, EdgeWeight::Euc2d);
        let opt = [
            1, 49, 32, 45, 19, 41, 8, 9, 10, 43, 33, 51, 11, 52, 14, 13, 47, 26, 27, 28, 12, 25, 4, 6, 15, 5, 24, 48,
            38, 37, 40, 39, 36, 35, 34, 44, 46, 16, 29, 50, 20, 23, 30, 2, 7, 42, 21, 17, 3, 18, 31, 22,
        ];
        let tour: Vec<usize> = opt.iter().map(|c| c - 1).collect();
        assert_eq!(inst.tour_cost(&tour), 7542.0);
    }

    #[test]
    fn geo_instances_load() {
        let b = bundled("burma14").unwrap();
        assert_eq!((b.num_cities(), b.weight), (14, EdgeWeight::Geo));
        assert_eq!(b.dist(0, 1), 153.0);
        assert_eq!(bundled("ulysses16").unwrap().num_cities(), 16);
    }

    #[test]
    fn single_city() {
        let inst = parse_tsplib("NAME: one\nTYPE: TSP\nDIMENSION: 1\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n1 0 0\nEOF\n").unwrap();
        assert_eq!(inst.num_cities(), 1);
        assert_eq!(inst.dist(0, 0), 0.0);
    }

    #[test]
    fn rejects_bad_headers() {
        assert!(parse_tsplib("DIMENSION: 1\nEDGE_WEIGHT_TYPE: ATT\nNODE_COORD_SECTION\n1 0 0\n").is_err());
        assert!(parse_tsplib("EDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n1 0 0\n").is_err());
        assert!(parse_tsplib("DIMENSION: 2\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n1 0 0\n").is_err());
    }

    #[test]
    fn matrix_checks() {
        assert!(TspInstance::from_matrix("m", vec![vec![0.0, 1.0], vec![2.0, 0.0]]).is_err());
        let m = TspInstance::from_matrix("m", vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(m.tour_cost(&[0, 1]), 2.0);
    }
}
