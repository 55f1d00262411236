//! Tau-chains and the rational formula for the torsion of acyclic complexes.
//!
//! For an admissible shape `(k_0, ..., k_n)` a tau-chain picks subsets
//! `alpha_i` of `{1..k_i}` with `alpha_n` empty and
//! `|alpha_i| = k_{i+1} - |alpha_{i+1}|`. The minor `A_i(d^i)` keeps the
//! columns of `d^i` in `alpha_i` and the rows not in `alpha_{i+1}`, and
//!
//! ```text
//! F_alpha(d) = eps(alpha) * prod_i det A_i(d^i)^{(-1)^{i+1}}.
//! ```
//!
//! The sign `eps(alpha)` is calibrated: it is the ratio of the torsion to the
//! unsigned product on a random acyclic alpha-nondegenerate integer complex,
//! cached per `(shape, alpha)`. Samples are signed coordinate permutations
//! of one random complex per shape, with a fresh complex mixed in.

use std::collections::HashMap;
use std::fmt;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::sync::{OnceLock, RwLock};

use rand::seq::SliceRandom;
use rand::Rng;

use super::CochainComplex;
use crate::error::{Error, Result};
use crate::exactfield::{ExactMatrix, FieldElement};
use crate::random;

const CALIBRATION_RETRIES: usize = 1000;

/// Admissible dimension string: vanishing alternating sum and nonnegative
/// partial alternating sums.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShapeVector(Vec<usize>);

impl ShapeVector {
    pub fn new(ks: Vec<usize>) -> Result<Self> {
        if ks.is_empty() {
            return Err(Error::Shape("empty shape".into()));
        }
        let partial = partial_alternating_sums(&ks);
        let n = ks.len() - 1;
        if partial[n] != 0 {
            return Err(Error::Shape(format!(
                "alternating sum of {ks:?} is not zero"
            )));
        }
        if partial[..n].iter().any(|&s| s < 0) {
            return Err(Error::Shape(format!(
                "negative partial alternating sum in {ks:?}"
            )));
        }
        Ok(ShapeVector(ks))
    }

    pub fn ks(&self) -> &[usize] {
        &self.0
    }

    /// Ranks `k_i - k_{i-1} + ... ± k_0` of the differentials of any acyclic complex.
    pub fn ranks(&self) -> Vec<usize> {
        let p = partial_alternating_sums(&self.0);
        p[..self.0.len() - 1].iter().map(|&s| s as usize).collect()
    }
}

/// `s_i = k_i - k_{i-1} + ... ± k_0`.
fn partial_alternating_sums(ks: &[usize]) -> Vec<i64> {
    let mut out = Vec::with_capacity(ks.len());
    let mut s = 0i64;
    for &k in ks {
        s = k as i64 - s;
        out.push(s);
    }
    out
}

/// Zero-based index subsets, one per degree, each sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TauChain {
    pub alphas: Vec<Vec<usize>>,
}

impl TauChain {
    pub fn new(alphas: Vec<Vec<usize>>) -> Self {
        TauChain { alphas }
    }

    pub fn is_valid_for(&self, shape: &ShapeVector) -> bool {
        let ks = shape.ks();
        let n = ks.len() - 1;
        if self.alphas.len() != ks.len() || !self.alphas[n].is_empty() {
            return false;
        }
        (0..ks.len()).all(|i| {
            let a = &self.alphas[i];
            let sorted = a.windows(2).all(|w| w[0] < w[1]);
            let in_range = a.iter().all(|&x| x < ks[i]);
            let size_ok = i == n || a.len() + self.alphas[i + 1].len() == ks[i + 1];
            sorted && in_range && size_ok
        })
    }
}

/// One-based, e.g. `({1}, {2}, {})`.
impl fmt::Display for TauChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.alphas.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let items: Vec<String> = a.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        write!(f, ")")
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// All tau-chains of `shape`, lexicographically ordered.
pub fn enumerate_tau_chains(shape: &ShapeVector) -> Vec<TauChain> {
    let ks = shape.ks();
    let n = ks.len() - 1;
    // build from the top degree down
    let mut partial: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
    for i in (0..n).rev() {
        let mut next = Vec::new();
        for tail in &partial {
            let size = ks[i + 1] - tail[0].len();
            for a in combinations(ks[i], size) {
                let mut chain = Vec::with_capacity(tail.len() + 1);
                chain.push(a);
                chain.extend(tail.iter().cloned());
                next.push(chain);
            }
        }
        partial = next;
    }
    let mut chains: Vec<TauChain> = partial.into_iter().map(TauChain::new).collect();
    chains.sort();
    chains
}

fn check_diffs(shape: &ShapeVector, diffs: &[ExactMatrix], alpha: &TauChain) -> Result<()> {
    let ks = shape.ks();
    if diffs.len() + 1 != ks.len() {
        return Err(Error::Shape(format!(
            "{} differentials for shape {ks:?}",
            diffs.len()
        )));
    }
    for (i, d) in diffs.iter().enumerate() {
        if d.rows() != ks[i + 1] || d.cols() != ks[i] {
            return Err(Error::Shape(format!("d^{i} does not match shape {ks:?}")));
        }
    }
    if !alpha.is_valid_for(shape) {
        return Err(Error::Shape(format!(
            "{alpha} is not a tau-chain of {ks:?}"
        )));
    }
    Ok(())
}

/// `prod_i det A_i(d^i)^{(-1)^{i+1}}` without the sign `eps(alpha)`;
/// `None` when some minor vanishes (alpha-degenerate).
pub fn unsigned_f_alpha(
    shape: &ShapeVector,
    diffs: &[ExactMatrix],
    alpha: &TauChain,
) -> Result<Option<FieldElement>> {
    check_diffs(shape, diffs, alpha)?;
    let ks = shape.ks();
    let mut value = FieldElement::one();
    for (i, d) in diffs.iter().enumerate() {
        let rows: Vec<usize> = (0..ks[i + 1])
            .filter(|r| !alpha.alphas[i + 1].contains(r))
            .collect();
        let det = d.submatrix(&rows, &alpha.alphas[i]).det()?;
        if det.is_zero() {
            return Ok(None);
        }
        value = if i % 2 == 0 {
            value.checked_div(&det)?
        } else {
            &value * &det
        };
    }
    Ok(Some(value))
}

type CalibrationKey = (ShapeVector, TauChain);

fn calibration_cache() -> &'static RwLock<HashMap<CalibrationKey, i8>> {
    static CACHE: OnceLock<RwLock<HashMap<CalibrationKey, i8>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn base_cache() -> &'static RwLock<HashMap<ShapeVector, CochainComplex>> {
    static CACHE: OnceLock<RwLock<HashMap<ShapeVector, CochainComplex>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn seed_of(x: &impl Hash) -> u64 {
    let mut h = DefaultHasher::new();
    x.hash(&mut h);
    h.finish()
}

/// One random acyclic complex per shape; calibration samples are drawn
/// around it.
fn calibration_base(shape: &ShapeVector) -> Result<CochainComplex> {
    if let Some(c) = base_cache().read().expect("cache lock").get(shape) {
        return Ok(c.clone());
    }
    let c = random::random_acyclic(&mut random::rng(seed_of(shape)), shape.ks(), 3)?;
    Ok(base_cache()
        .write()
        .expect("cache lock")
        .entry(shape.clone())
        .or_insert(c)
        .clone())
}

/// `c` in randomly permuted and sign-flipped coordinates; the entries stay
/// integers of the same size.
fn signed_permutation<R: Rng>(rng: &mut R, c: &CochainComplex) -> Result<CochainComplex> {
    let moves: Vec<(Vec<usize>, Vec<bool>)> = c
        .dims()
        .iter()
        .map(|&k| {
            let mut p: Vec<usize> = (0..k).collect();
            p.shuffle(rng);
            (p, (0..k).map(|_| rng.gen_bool(0.5)).collect())
        })
        .collect();
    let diffs = c
        .diffs()
        .iter()
        .enumerate()
        .map(|(q, d)| {
            let ((rp, rs), (cp, cs)) = (&moves[q + 1], &moves[q]);
            ExactMatrix::from_fn(d.rows(), d.cols(), |i, j| {
                let x = d.get(rp[i], cp[j]);
                if rs[i] != cs[j] {
                    -x
                } else {
                    x.clone()
                }
            })
        })
        .collect();
    CochainComplex::new(c.dims().to_vec(), diffs)
}

/// Ratio torsion / unsigned product on one random acyclic alpha-nondegenerate
/// complex: a signed permutation of `base` when given (a fresh complex every
/// eighth try), otherwise a fresh complex.
fn calibration_ratio<R: Rng>(
    rng: &mut R,
    shape: &ShapeVector,
    alpha: &TauChain,
    base: Option<&CochainComplex>,
) -> Result<i8> {
    for attempt in 0..CALIBRATION_RETRIES {
        let c = match base {
            Some(b) if attempt % 8 != 7 => signed_permutation(rng, b)?,
            _ => random::random_acyclic(rng, shape.ks(), 3)?,
        };
        let Some(u) = unsigned_f_alpha(shape, c.diffs(), alpha)? else {
            continue;
        };
        let ratio = c.torsion_acyclic()?.checked_div(&u)?;
        return match ratio.real_sign() {
            Some(s) if ratio == FieldElement::from_int(s as i64) => Ok(s),
            _ => Err(Error::Internal(format!(
                "calibration ratio {ratio} for {alpha} is not a sign"
            ))),
        };
    }
    Err(Error::Internal(format!(
        "no alpha-nondegenerate calibration sample for {alpha} after {CALIBRATION_RETRIES} tries"
    )))
}

/// Calibrated sign `eps(alpha)`.
pub fn epsilon_alpha(alpha: &TauChain, shape: &ShapeVector) -> Result<i8> {
    if !alpha.is_valid_for(shape) {
        return Err(Error::Shape(format!(
            "{alpha} is not a tau-chain of {:?}",
            shape.ks()
        )));
    }
    let key = (shape.clone(), alpha.clone());
    if let Some(&e) = calibration_cache().read().expect("cache lock").get(&key) {
        return Ok(e);
    }
    let base = calibration_base(shape)?;
    let e = calibration_ratio(&mut random::rng(seed_of(&key)), shape, alpha, Some(&base))?;
    // first writer wins; every writer computes the same value
    Ok(*calibration_cache()
        .write()
        .expect("cache lock")
        .entry(key)
        .or_insert(e))
}

/// Ratios from `count` independent fresh samples.
pub fn calibration_ratios(
    alpha: &TauChain,
    shape: &ShapeVector,
    count: usize,
    seed: u64,
) -> Result<Vec<i8>> {
    let mut rng = random::rng(seed);
    (0..count)
        .map(|_| calibration_ratio(&mut rng, shape, alpha, None))
        .collect()
}

/// `F_alpha(d) = eps(alpha) * unsigned_f_alpha(d)`.
pub fn f_alpha(
    shape: &ShapeVector,
    diffs: &[ExactMatrix],
    alpha: &TauChain,
) -> Result<FieldElement> {
    let u = unsigned_f_alpha(shape, diffs, alpha)?
        .ok_or_else(|| Error::Degenerate(format!("{alpha} has a vanishing minor")))?;
    Ok(if epsilon_alpha(alpha, shape)? < 0 {
        -u
    } else {
        u
    })
}

/// Dimension `k_0 k_1 + (k_1 - k_0) k_2 + ... ` of the space of acyclic complexes.
pub fn dimension_dac(shape: &ShapeVector) -> usize {
    let ks = shape.ks();
    let s = partial_alternating_sums(ks);
    (1..ks.len()).map(|i| s[i - 1] as usize * ks[i]).sum()
}

/// `dim L - rank` of the linearization `delta -> (d^{i+1} delta^i + delta^{i+1} d^i)_i`
/// of the equations `d^{i+1} d^i = 0` at `c`.
pub fn tangent_space_dimension(c: &CochainComplex) -> usize {
    let ks = c.dims();
    let diffs = c.diffs();
    let blocks: Vec<usize> = diffs.iter().map(|d| d.rows() * d.cols()).collect();
    let offsets: Vec<usize> = blocks
        .iter()
        .scan(0, |acc, &b| {
            let o = *acc;
            *acc += b;
            Some(o)
        })
        .collect();
    let nvars: usize = blocks.iter().sum();
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    for i in 0..diffs.len().saturating_sub(1) {
        let (lower, upper) = (&diffs[i], &diffs[i + 1]);
        // constraint entry (r, c) of d^{i+1} d^i, r < k_{i+2}, c < k_i
        for r in 0..ks[i + 2] {
            for col in 0..ks[i] {
                let mut row = vec![FieldElement::zero(); nvars];
                // d/d(d^i[a][col]) = d^{i+1}[r][a]
                for a in 0..ks[i + 1] {
                    row[offsets[i] + a * ks[i] + col] = upper.get(r, a).clone();
                }
                // d/d(d^{i+1}[r][b]) = d^i[b][col]
                for b in 0..ks[i + 1] {
                    row[offsets[i + 1] + r * ks[i + 1] + b] = lower.get(b, col).clone();
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return nvars;
    }
    let jac = ExactMatrix::from_fn(rows.len(), nvars, |i, j| rows[i][j].clone());
    nvars - jac.rank()
}

/// Checks the dimension formula at a random acyclic point drawn from `rng`.
pub fn verify_dimension<R: Rng>(rng: &mut R, shape: &ShapeVector) -> Result<bool> {
    let c = random::random_acyclic(rng, shape.ks(), 3)?;
    Ok(tangent_space_dimension(&c) == dimension_dac(shape))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(ks: &[usize]) -> ShapeVector {
        ShapeVector::new(ks.to_vec()).unwrap()
    }

    fn c121() -> CochainComplex {
        CochainComplex::new(
            vec![1, 2, 1],
            vec![
                ExactMatrix::from_ints(2, 1, &[2, 3]),
                ExactMatrix::from_ints(1, 2, &[3, -2]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn admissibility() {
        assert!(ShapeVector::new(vec![1, 2, 1]).is_ok());
        assert!(ShapeVector::new(vec![1, 2]).is_err());
        assert!(ShapeVector::new(vec![0, 1, 1]).is_ok());
        assert!(ShapeVector::new(vec![1, 0, 1, 2]).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let one = enumerate_tau_chains(&shape(&[1, 1]));
        assert_eq!(one, vec![TauChain::new(vec![vec![0], vec![]])]);
        let two = enumerate_tau_chains(&shape(&[1, 2, 1]));
        assert_eq!(
            two,
            vec![
                TauChain::new(vec![vec![0], vec![0], vec![]]),
                TauChain::new(vec![vec![0], vec![1], vec![]]),
            ]
        );
        assert_eq!(enumerate_tau_chains(&shape(&[0, 0])).len(), 1);
        assert_eq!(two[1].to_string(), "({1}, {2}, {})");
    }

    #[test]
    fn unsigned_values() {
        let c = CochainComplex::new(vec![1, 1], vec![ExactMatrix::from_ints(1, 1, &[5])]).unwrap();
        let s = shape(&[1, 1]);
        let a = &enumerate_tau_chains(&s)[0];
        assert_eq!(
            unsigned_f_alpha(&s, c.diffs(), a).unwrap(),
            Some(FieldElement::from_frac(1, 5))
        );
        let s = shape(&[1, 2, 1]);
        let chains = enumerate_tau_chains(&s);
        assert_eq!(
            unsigned_f_alpha(&s, c121().diffs(), &chains[0]).unwrap(),
            Some(FieldElement::one())
        );
        assert_eq!(
            unsigned_f_alpha(&s, c121().diffs(), &chains[1]).unwrap(),
            Some(FieldElement::from_int(-1))
        );
    }

    #[test]
    fn degenerate_marker() {
        let s = shape(&[1, 2, 1]);
        let d = vec![
            ExactMatrix::from_ints(2, 1, &[0, 3]),
            ExactMatrix::from_ints(1, 2, &[1, 0]),
        ];
        let chains = enumerate_tau_chains(&s);
        // alpha_1 = {2}: A_0 = row 1 of d^0 = 0
        assert_eq!(unsigned_f_alpha(&s, &d, &chains[1]).unwrap(), None);
        assert!(matches!(
            f_alpha(&s, &d, &chains[1]),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn epsilon_examples() {
        let s = shape(&[1, 1]);
        assert_eq!(epsilon_alpha(&enumerate_tau_chains(&s)[0], &s).unwrap(), 1);
        let s = shape(&[1, 2, 1]);
        let chains = enumerate_tau_chains(&s);
        assert_eq!(epsilon_alpha(&chains[0], &s).unwrap(), -1);
        assert_eq!(epsilon_alpha(&chains[1], &s).unwrap(), 1);
        for a in &chains {
            assert_eq!(
                f_alpha(&s, c121().diffs(), a).unwrap(),
                FieldElement::from_int(-1)
            );
        }
    }

    #[test]
    fn dimension_formula_examples() {
        assert_eq!(dimension_dac(&shape(&[1, 1])), 1);
        assert_eq!(dimension_dac(&shape(&[1, 2, 1])), 3);
        assert_eq!(dimension_dac(&shape(&[0, 0, 0])), 0);
        assert_eq!(tangent_space_dimension(&c121()), 3);
    }
}
