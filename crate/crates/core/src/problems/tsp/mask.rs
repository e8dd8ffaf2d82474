//! Block masks that restrict a finer tour to the order of a coarser one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `K×K` binary matrix; entry `(i, t)` is 1 when entity `i` may sit at
/// position `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaskMatrix {
    size: usize,
    bits: Vec<u8>,
    /// `(cluster, first column, width)` in column order.
    blocks: Vec<(usize, usize, usize)>,
}

impl MaskMatrix {
    /// No restriction.
    pub fn full(size: usize) -> Self {
        MaskMatrix { size, bits: vec![1; size * size], blocks: vec![(0, 0, size)] }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn allows(&self, entity: usize, pos: usize) -> bool {
        self.bits[entity * self.size + pos] == 1
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    pub fn blocks(&self) -> &[(usize, usize, usize)] {
        &self.blocks
    }

    pub fn row(&self, entity: usize) -> &[u8] {
        &self.bits[entity * self.size..(entity + 1) * self.size]
    }

    /// Rows of 0/1 characters.
    pub fn to_text(&self) -> String {
        (0..self.size)
            .map(|i| self.row(i).iter().map(|b| if *b == 1 { '1' } else { '0' }).collect::<String>() + "\n")
            .collect()
    }
}

/// Lays clusters out along `parent_tour`; each cluster owns a run of columns
/// as wide as its membership. The tour is first rotated so the cluster holding
/// entity 0 starts at column 0.
pub fn build_mask(parent_tour: &[usize], assignment: &[usize], k: usize) -> Result<MaskMatrix> {
    if assignment.len() != k {
        return Err(Error::Dimension { expected: k, actual: assignment.len() });
    }
    let clusters = parent_tour.len();
    let mut seen = vec![false; clusters];
    for &c in parent_tour {
        if c >= clusters || std::mem::replace(&mut seen[c], true) {
            return Err(Error::Infeasible(format!("parent tour {parent_tour:?} does not visit each cluster once")));
        }
    }
    let mut members = vec![Vec::new(); clusters];
    for (e, &c) in assignment.iter().enumerate() {
        if c >= clusters {
            return Err(Error::Index { index: c, len: clusters });
        }
        members[c].push(e);
    }
    let total: usize = members.iter().map(Vec::len).sum();
    if total != k {
        return Err(Error::Infeasible(format!("cluster sizes sum to {total}, expected {k}")));
    }
    let start = if k == 0 { 0 } else { parent_tour.iter().position(|&c| c == assignment[0]).unwrap_or(0) };
    let mut bits = vec![0u8; k * k];
    let mut blocks = Vec::with_capacity(clusters);
    let mut col = 0;
    for step in 0..clusters {
        let c = parent_tour[(start + step) % clusters];
        let w = members[c].len();
        for &e in &members[c] {
            for t in col..col + w {
                bits[e * k + t] = 1;
            }
        }
        blocks.push((c, col, w));
        col += w;
    }
    Ok(MaskMatrix { size: k, bits, blocks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_clusters() {
        let m = build_mask(&[0, 1], &[0, 0, 1], 3).unwrap();
        assert_eq!(m.to_text(), "110\n110\n001\n");
    }

    #[test]
    fn single_cluster_is_full() {
        let m = build_mask(&[0], &[0; 4], 4).unwrap();
        assert_eq!(m.ones(), 16);
    }

    #[test]
    fn block_diagonal_layout() {
        let assignment = [0, 0, 0, 0, 1, 1, 1, 2, 2, 3];
        let m = build_mask(&[0, 1, 2, 3], &assignment, 10).unwrap();
        assert_eq!(m.ones(), 16 + 9 + 4 + 1);
        assert_eq!(
            m.to_text(),
            "1111000000\n1111000000\n1111000000\n1111000000\n0000111000\n0000111000\n0000111000\n0000000110\n0000000110\n0000000001\n"
        );
    }

    #[test]
    fn rotation_puts_entity_zero_first() {
        let m = build_mask(&[1, 0], &[0, 1, 1], 3).unwrap();
        assert_eq!(m.blocks(), &[(0, 0, 1), (1, 1, 2)]);
    }

    #[test]
    fn errors() {
        assert!(build_mask(&[0, 0], &[0, 1], 2).is_err());
        assert!(build_mask(&[0, 1], &[0, 1], 3).is_err());
    }
}
