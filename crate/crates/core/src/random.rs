//! Seeded random generators for complexes, used by calibration and by the
//! randomized test suites.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complexes::{CochainComplex, ShortExactSequence};
use crate::error::{Error, Result};
use crate::exactfield::{ExactMatrix, FieldElement};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

const MAX_ATTEMPTS: usize = 1000;

fn to_exact(rows: usize, cols: usize, m: &[Vec<i64>]) -> ExactMatrix {
    ExactMatrix::from_fn(rows, cols, |i, j| FieldElement::from_int(m[i][j]))
}

/// Rank by fraction-free elimination in `i128`; entries stay bounded by
/// minors of the small integer input.
fn int_rank(m: &[Vec<i64>], cols: usize) -> usize {
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..a.len() {
            for j in c + 1..cols {
                a[i][j] = (a[rank][c] * a[i][j] - a[i][c] * a[rank][j]) / prev;
            }
            a[i][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
    }
    rank
}

pub fn random_int_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> ExactMatrix {
    ExactMatrix::from_fn(rows, cols, |_, _| {
        FieldElement::from_int(rng.gen_range(-bound..=bound))
    })
}

pub fn random_invertible<R: Rng>(rng: &mut R, n: usize, bound: i64) -> ExactMatrix {
    loop {
        let m = random_int_matrix(rng, n, n, bound);
        if !m.det().expect("square").is_zero() {
            return m;
        }
    }
}

/// All integer vectors with entries in `[-bound, bound]` annihilating `prev`
/// from the left (`y * prev = 0`).
fn small_annihilators(k: usize, prev: &[Vec<i64>], prev_cols: usize, bound: i64) -> Vec<Vec<i64>> {
    let width = (2 * bound + 1) as usize;
    let total = width.pow(k as u32);
    let mut out = Vec::new();
    let mut y = vec![0i64; k];
    for code in 0..total {
        let mut c = code;
        for e in y.iter_mut() {
            *e = (c % width) as i64 - bound;
            c /= width;
        }
        let ok = (0..prev_cols).all(|j| (0..k).map(|i| y[i] * prev[i][j]).sum::<i64>() == 0);
        if ok {
            out.push(y.clone());
        }
    }
    out
}

fn integer_kernel(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    to_exact(rows.len(), cols, rows)
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let scalars: Vec<_> = v.iter().map(|x| x.as_scalar().expect("rational")).collect();
            let lcm = scalars.iter().fold(num_bigint::BigInt::from(1), |acc, s| {
                num_integer::Integer::lcm(&acc, s.re().denom())
            });
            scalars
                .iter()
                .map(|s| {
                    let scaled = s.re() * num_rational::BigRational::from_integer(lcm.clone());
                    i64::try_from(scaled.to_integer()).expect("small kernel entries")
                })
                .collect()
        })
        .collect()
}

/// Draws `rows` rows from `pool` spanning a space of dimension exactly `rank`.
fn draw_rows<R: Rng>(
    rng: &mut R,
    pool: &[Vec<i64>],
    rows: usize,
    rank: usize,
    cols: usize,
) -> Option<Vec<Vec<i64>>> {
    if rank == 0 {
        return Some(vec![vec![0; cols]; rows]);
    }
    if int_rank(pool, cols) < rank {
        return None;
    }
    for _ in 0..50 {
        let mut chosen: Vec<Vec<i64>> = Vec::new();
        for _ in 0..200 {
            if chosen.len() == rank {
                break;
            }
            let cand = pool.choose(rng)?.clone();
            let mut trial = chosen.clone();
            trial.push(cand);
            if int_rank(&trial, cols) == trial.len() {
                chosen = trial;
            }
        }
        if chosen.len() < rank {
            continue;
        }
        // remaining rows: small pool vectors inside the span of the chosen ones
        let perp = integer_kernel(&chosen, cols);
        let in_span: Vec<&Vec<i64>> = pool
            .iter()
            .filter(|v| {
                perp.iter()
                    .all(|w| v.iter().zip(w).map(|(a, b)| a * b).sum::<i64>() == 0)
            })
            .collect();
        let mut out = chosen.clone();
        while out.len() < rows {
            out.push((*in_span.choose(rng).expect("span contains the chosen rows")).clone());
        }
        out.shuffle(rng);
        return Some(out);
    }
    None
}

/// Random complex with the given dimensions and differential ranks
/// (`ranks[q] = rank d^q`, one per differential). Every entry is an integer
/// in `[-bound, bound]`.
pub fn random_complex<R: Rng>(
    rng: &mut R,
    dims: &[usize],
    ranks: &[usize],
    bound: i64,
) -> Result<CochainComplex> {
    if dims.is_empty() || ranks.len() + 1 != dims.len() {
        return Err(Error::Shape("one rank per differential".into()));
    }
    for q in 0..ranks.len() {
        let prev = if q == 0 { 0 } else { ranks[q - 1] };
        if ranks[q] + prev > dims[q] || ranks[q] > dims[q + 1] {
            return Err(Error::Shape(format!(
                "rank {} impossible for d^{q}",
                ranks[q]
            )));
        }
    }
    for _ in 0..MAX_ATTEMPTS {
        let mut ints: Vec<Vec<Vec<i64>>> = Vec::new();
        let mut ok = true;
        for q in 0..ranks.len() {
            let (k, next) = (dims[q], dims[q + 1]);
            // rows of d^q are covectors on C^q killing the image of d^{q-1}
            let empty = vec![Vec::new(); k];
            let prev = ints.last().unwrap_or(&empty);
            let prev_cols = if q == 0 { 0 } else { dims[q - 1] };
            let pool = small_annihilators(k, prev, prev_cols, bound);
            match draw_rows(rng, &pool, next, ranks[q], k) {
                Some(rows) => ints.push(rows),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let diffs: Vec<ExactMatrix> = ints
            .iter()
            .enumerate()
            .map(|(q, m)| to_exact(dims[q + 1], dims[q], m))
            .collect();
        return CochainComplex::new(dims.to_vec(), diffs);
    }
    Err(Error::Internal(format!(
        "no random complex with dims {dims:?} ranks {ranks:?}"
    )))
}

/// Differential ranks of an acyclic complex of the given (admissible) shape.
pub fn acyclic_ranks(dims: &[usize]) -> Vec<usize> {
    let mut ranks = Vec::new();
    let mut prev = 0usize;
    for &k in &dims[..dims.len().saturating_sub(1)] {
        let r = k.saturating_sub(prev);
        ranks.push(r);
        prev = r;
    }
    ranks
}

/// Random acyclic complex with integer entries in `[-bound, bound]`.
pub fn random_acyclic<R: Rng>(rng: &mut R, dims: &[usize], bound: i64) -> Result<CochainComplex> {
    let c = random_complex(rng, dims, &acyclic_ranks(dims), bound)?;
    if !c.is_acyclic() {
        return Err(Error::Shape(format!(
            "shape {dims:?} admits no acyclic complex"
        )));
    }
    Ok(c)
}

/// Uniformly random admissible ranks for the given dimensions.
pub fn random_ranks<R: Rng>(rng: &mut R, dims: &[usize]) -> Vec<usize> {
    let mut ranks = Vec::new();
    let mut prev = 0;
    for q in 0..dims.len().saturating_sub(1) {
        let max = (dims[q] - prev).min(dims[q + 1]);
        let r = rng.gen_range(0..=max);
        ranks.push(r);
        prev = r;
    }
    ranks
}

/// Random complex with the given dimensions and random ranks.
pub fn random_any<R: Rng>(rng: &mut R, dims: &[usize], bound: i64) -> Result<CochainComplex> {
    let ranks = random_ranks(rng, dims);
    random_complex(rng, dims, &ranks, bound)
}

/// Random admissible shape with `degrees` entries, each at most `max_k`.
pub fn random_shape<R: Rng>(rng: &mut R, degrees: usize, max_k: usize) -> Vec<usize> {
    loop {
        let mut ranks = Vec::new();
        let mut prev = 0;
        for _ in 0..degrees.saturating_sub(1) {
            let r = rng.gen_range(0..=max_k.saturating_sub(prev));
            ranks.push(r);
            prev = r;
        }
        let mut dims = Vec::with_capacity(degrees);
        for q in 0..degrees {
            let before = if q == 0 { 0 } else { ranks[q - 1] };
            let after = ranks.get(q).copied().unwrap_or(0);
            dims.push(before + after);
        }
        if dims.iter().all(|&k| k <= max_k) {
            return dims;
        }
    }
}

/// Random short exact sequence `0 -> C0 -> C1 -> C2 -> 0` with
/// `C1 = C0 (+) C2` as graded spaces, differential `[[d0, f], [0, d2]]` for a
/// random chain-compatible `f`, then conjugated by random coordinate changes
/// of `C1`.
pub fn random_split_sequence<R: Rng>(
    rng: &mut R,
    c0: CochainComplex,
    c2: CochainComplex,
    twist: bool,
) -> Result<ShortExactSequence> {
    let n = c0.degrees();
    if c2.degrees() != n {
        return Err(Error::Shape("complexes of different length".into()));
    }
    let (k0, k2) = (c0.dims().to_vec(), c2.dims().to_vec());
    // f^q : C2^q -> C0^{q+1} with d0^{q+1} f^q + f^{q+1} d2^q = 0
    let blocks: Vec<(usize, usize)> = (0..n - 1).map(|q| (k0[q + 1], k2[q])).collect();
    let offsets: Vec<usize> = blocks
        .iter()
        .scan(0, |acc, &(r, c)| {
            let o = *acc;
            *acc += r * c;
            Some(o)
        })
        .collect();
    let nvars: usize = blocks.iter().map(|&(r, c)| r * c).sum();
    let mut constraints: Vec<Vec<FieldElement>> = Vec::new();
    for q in 0..n.saturating_sub(2) {
        // entry (i, j) of d0^{q+1} f^q + f^{q+1} d2^q, an (k0[q+2] x k2[q]) matrix
        let d0 = &c0.diffs()[q + 1];
        let d2 = &c2.diffs()[q];
        for i in 0..k0[q + 2] {
            for j in 0..k2[q] {
                let mut row = vec![FieldElement::zero(); nvars];
                for a in 0..k0[q + 1] {
                    let idx = offsets[q] + a * k2[q] + j;
                    row[idx] = &row[idx] + d0.get(i, a);
                }
                for b in 0..k2[q + 1] {
                    let idx = offsets[q + 1] + i * k2[q + 1] + b;
                    row[idx] = &row[idx] + d2.get(b, j);
                }
                constraints.push(row);
            }
        }
    }
    let solution_basis = if constraints.is_empty() {
        ExactMatrix::identity(nvars).columns()
    } else {
        ExactMatrix::from_fn(constraints.len(), nvars, |i, j| constraints[i][j].clone())
            .kernel_basis()
    };
    let mut f = vec![FieldElement::zero(); nvars];
    for v in &solution_basis {
        let c = FieldElement::from_int(rng.gen_range(-2..=2));
        for (x, y) in f.iter_mut().zip(v) {
            *x = &*x + &(&c * y);
        }
    }
    let mut diffs1 = Vec::new();
    let mut inject = Vec::new();
    let mut project = Vec::new();
    let mut coords: Vec<ExactMatrix> = Vec::new();
    for q in 0..n {
        let g = if twist {
            random_invertible(rng, k0[q] + k2[q], 2)
        } else {
            ExactMatrix::identity(k0[q] + k2[q])
        };
        coords.push(g);
    }
    for q in 0..n {
        let k1 = k0[q] + k2[q];
        let mut i = ExactMatrix::zeros(k1, k0[q]);
        i.set_block(0, 0, &ExactMatrix::identity(k0[q]));
        let mut p = ExactMatrix::zeros(k2[q], k1);
        p.set_block(0, k0[q], &ExactMatrix::identity(k2[q]));
        let g = &coords[q];
        inject.push(g.checked_mul(&i)?);
        project.push(p.checked_mul(&g.inverse()?)?);
        if q + 1 < n {
            let mut d = ExactMatrix::zeros(k0[q + 1] + k2[q + 1], k1);
            d.set_block(0, 0, &c0.diffs()[q]);
            d.set_block(k0[q + 1], k0[q], &c2.diffs()[q]);
            let (r, c) = blocks[q];
            let fq = ExactMatrix::from_fn(r, c, |a, b| f[offsets[q] + a * c + b].clone());
            d.set_block(0, k0[q], &fq);
            diffs1.push(coords[q + 1].checked_mul(&d)?.checked_mul(&g.inverse()?)?);
        }
    }
    let c1 = CochainComplex::new(k0.iter().zip(&k2).map(|(a, b)| a + b).collect(), diffs1)?;
    ShortExactSequence::new(c0, c1, c2, inject, project)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn acyclic_generator_respects_bounds() {
        let mut r = rng(7);
        for dims in [vec![1, 1], vec![1, 2, 1], vec![2, 3, 1], vec![1, 3, 3, 1]] {
            let c = random_acyclic(&mut r, &dims, 3).unwrap();
            assert!(c.is_acyclic());
            for d in c.diffs() {
                for x in d.entries() {
                    let v = x.as_scalar().unwrap();
                    assert!(v.re().numer().magnitude() <= &3u32.into());
                }
            }
        }
    }

    #[test]
    fn integer_rank_matches_exact_rank() {
        let mut r = rng(19);
        for _ in 0..300 {
            let rows = r.gen_range(1..=5);
            let cols = r.gen_range(1..=5);
            // low-rank products exercise skipped pivot columns
            let inner = r.gen_range(1..=3);
            let a: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..inner).map(|_| r.gen_range(-3..=3)).collect())
                .collect();
            let b: Vec<Vec<i64>> = (0..inner)
                .map(|_| (0..cols).map(|_| r.gen_range(-3..=3)).collect())
                .collect();
            let m: Vec<Vec<i64>> = (0..rows)
                .map(|i| {
                    (0..cols)
                        .map(|j| (0..inner).map(|k| a[i][k] * b[k][j]).sum())
                        .collect()
                })
                .collect();
            assert_eq!(int_rank(&m, cols), to_exact(rows, cols, &m).rank());
        }
    }

    #[test]
    fn random_shapes_are_admissible() {
        let mut r = rng(3);
        for _ in 0..50 {
            let s = random_shape(&mut r, 4, 5);
            let alt: i64 = s
                .iter()
                .enumerate()
                .map(|(i, &k)| if i % 2 == 0 { k as i64 } else { -(k as i64) })
                .sum();
            assert_eq!(alt, 0);
        }
    }

    #[test]
    fn split_sequences_validate() {
        let mut r = rng(11);
        for _ in 0..5 {
            let d0 = [1, 2, 1];
            let d2 = [2, 2, 1];
            let c0 = random_any(&mut r, &d0, 2).unwrap();
            let c2 = random_any(&mut r, &d2, 2).unwrap();
            random_split_sequence(&mut r, c0, c2, true).unwrap();
        }
    }
}
