//! Seeded randomized sweeps over the exact identities. Sample `k` of a sweep
//! with seed `s` draws from its own generator seeded by `s + k`, so results
//! do not depend on the execution mode.

use crate::complexes::{
    enumerate_tau_chains, f_alpha, fusion_check, unsigned_f_alpha, verify_dimension, ShapeVector,
};
use crate::error::Result;
use crate::par::{self, Execution};
use crate::random;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauSample {
    pub shape: Vec<usize>,
    pub chains: usize,
    pub nondegenerate: usize,
    pub mismatches: usize,
}

/// One random acyclic complex with at most `max_degrees` degrees and
/// dimensions at most `max_k`, every nondegenerate `F_alpha` compared with
/// the torsion.
pub fn tau_sample(seed: u64, max_degrees: usize, max_k: usize) -> Result<TauSample> {
    let mut rng = random::rng(seed);
    let degrees = 2 + (seed as usize % (max_degrees - 1));
    let dims = random::random_shape(&mut rng, degrees, max_k);
    let shape = ShapeVector::new(dims.clone())?;
    let c = random::random_acyclic(&mut rng, &dims, 3)?;
    let torsion = c.torsion_acyclic()?;
    let chains = enumerate_tau_chains(&shape);
    let mut nondegenerate = 0;
    let mut mismatches = 0;
    for a in &chains {
        if unsigned_f_alpha(&shape, c.diffs(), a)?.is_none() {
            continue;
        }
        nondegenerate += 1;
        if f_alpha(&shape, c.diffs(), a)? != torsion {
            mismatches += 1;
        }
    }
    Ok(TauSample {
        shape: dims,
        chains: chains.len(),
        nondegenerate,
        mismatches,
    })
}

pub fn tau_sweep(
    count: usize,
    seed: u64,
    max_degrees: usize,
    max_k: usize,
    exec: Execution,
) -> Result<Vec<TauSample>> {
    par::map_range(count, exec, |k| {
        tau_sample(seed + k as u64, max_degrees, max_k)
    })
    .into_iter()
    .collect()
}

/// Fusion identity on one random split sequence; returns `(holds, y)`.
pub fn fusion_sample(seed: u64) -> Result<(bool, u8)> {
    let mut rng = random::rng(seed);
    let degrees = 2 + (seed as usize % 3);
    let d0: Vec<usize> = (0..degrees)
        .map(|_| rand::Rng::gen_range(&mut rng, 0..=2))
        .collect();
    let d2: Vec<usize> = (0..degrees)
        .map(|_| rand::Rng::gen_range(&mut rng, 0..=2))
        .collect();
    let c0 = random::random_any(&mut rng, &d0, 2)?;
    let c2 = random::random_any(&mut rng, &d2, 2)?;
    let s = random::random_split_sequence(&mut rng, c0, c2, true)?;
    let report = fusion_check(&s, &s.c0.cohomology().bases, &s.c2.cohomology().bases)?;
    Ok((report.holds(), report.y))
}

pub fn fusion_sweep(count: usize, seed: u64, exec: Execution) -> Result<Vec<(bool, u8)>> {
    par::map_range(count, exec, |k| fusion_sample(seed + k as u64))
        .into_iter()
        .collect()
}

/// All admissible shapes with `degrees` entries, each at most `max_k`.
pub fn admissible_shapes(degrees: usize, max_k: usize) -> Vec<ShapeVector> {
    let mut out = Vec::new();
    let mut cur = vec![0; degrees];
    loop {
        if let Ok(s) = ShapeVector::new(cur.clone()) {
            out.push(s);
        }
        let mut i = 0;
        while i < degrees && cur[i] == max_k {
            cur[i] = 0;
            i += 1;
        }
        if i == degrees {
            return out;
        }
        cur[i] += 1;
    }
}

/// `verify_dimension` at `points` random points for each shape; returns the
/// number of failing points per shape.
pub fn dimension_sweep(
    shapes: &[ShapeVector],
    points: usize,
    seed: u64,
    exec: Execution,
) -> Result<Vec<usize>> {
    par::map_range(shapes.len(), exec, |k| -> Result<usize> {
        let mut rng = random::rng(seed + k as u64);
        let mut failures = 0;
        for _ in 0..points {
            if !verify_dimension(&mut rng, &shapes[k])? {
                failures += 1;
            }
        }
        Ok(failures)
    })
    .into_iter()
    .collect()
}
