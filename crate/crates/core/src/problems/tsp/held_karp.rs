use crate::error::{Error, Result};

use super::tsplib::TspInstance;

pub const MAX_HELD_KARP: usize = 20;

/// Exact shortest closed tour by dynamic programming over subsets.
pub fn held_karp(inst: &TspInstance) -> Result<(f64, Vec<usize>)> {
    let n = inst.num_cities();
    if n > MAX_HELD_KARP {
        return Err(Error::Capacity { what: "cities for Held-Karp".into(), limit: MAX_HELD_KARP });
    }
    if n <= 1 {
        return Ok((0.0, (0..n).collect()));
    }
    // City 0 is fixed as the start; subsets range over cities 1..n.
    let m = n - 1;
    let full = 1usize << m;
    let mut cost = vec![f64::INFINITY; full * m];
    let mut parent = vec![u8::MAX; full * m];
    for j in 0..m {
        cost[(1 << j) * m + j] = inst.dist(0, j + 1);
    }
    for set in 1..full {
        for j in 0..m {
            if set >> j & 1 == 0 {
                continue;
            }
            let c = cost[set * m + j];
            if !c.is_finite() {
                continue;
            }
            for k in 0..m {
                if set >> k & 1 == 1 {
                    continue;
                }
                let next = set | 1 << k;
                let v = c + inst.dist(j + 1, k + 1);
                if v < cost[next * m + k] {
                    cost[next * m + k] = v;
                    parent[next * m + k] = j as u8;
                }
            }
        }
    }
    let (mut last, best) = (0..m)
        .map(|j| (j, cost[(full - 1) * m + j] + inst.dist(j + 1, 0)))
        .fold((0, f64::INFINITY), |b, x| if x.1 < b.1 { x } else { b });
    let mut tour = Vec::with_capacity(n);
    let mut set = full - 1;
    loop {
        tour.push(last + 1);
        let p = parent[set * m + last];
        set &= !(1 << last);
        if p == u8::MAX {
            break;
        }
        last = p as usize;
    }
    tour.push(0);
    tour.reverse();
    Ok((best, tour))
}
