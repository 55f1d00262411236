//! Short exact sequences of complexes, their long exact cohomology sequence
//! and the multiplicativity of torsion.

use super::{turaev_n, CochainComplex, Cohomology, GradedBases};
use crate::error::{Error, Result};
use crate::exactfield::{ExactMatrix, FieldElement, Vector};

/// `0 -> C0 -> C1 -> C2 -> 0`, one `inject` and one `project` matrix per degree.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub c0: CochainComplex,
    pub c1: CochainComplex,
    pub c2: CochainComplex,
    pub inject: Vec<ExactMatrix>,
    pub project: Vec<ExactMatrix>,
}

impl ShortExactSequence {
    /// Checks shapes, the chain-map property and exactness in every degree.
    pub fn new(
        c0: CochainComplex,
        c1: CochainComplex,
        c2: CochainComplex,
        inject: Vec<ExactMatrix>,
        project: Vec<ExactMatrix>,
    ) -> Result<Self> {
        let n = c1.degrees();
        if c0.degrees() != n || c2.degrees() != n || inject.len() != n || project.len() != n {
            return Err(Error::Shape(
                "sequence members must have the same number of degrees".into(),
            ));
        }
        let (k0, k1, k2) = (c0.dims(), c1.dims(), c2.dims());
        for q in 0..n {
            let (i, p) = (&inject[q], &project[q]);
            if i.rows() != k1[q] || i.cols() != k0[q] || p.rows() != k2[q] || p.cols() != k1[q] {
                return Err(Error::Shape(format!(
                    "maps in degree {q} do not match the complexes"
                )));
            }
            if i.rank() != k0[q] {
                return Err(Error::Validation(format!(
                    "inject is not injective in degree {q}"
                )));
            }
            if p.rank() != k2[q] {
                return Err(Error::Validation(format!(
                    "project is not surjective in degree {q}"
                )));
            }
            if !p.checked_mul(i)?.is_zero() || k1[q] != k0[q] + k2[q] {
                return Err(Error::Validation(format!(
                    "sequence is not exact in degree {q}"
                )));
            }
            if q + 1 < n {
                let lhs = c1.diffs()[q].checked_mul(i)?;
                if lhs != inject[q + 1].checked_mul(&c0.diffs()[q])? {
                    return Err(Error::Validation(format!(
                        "inject is not a chain map in degree {q}"
                    )));
                }
                let lhs = c2.diffs()[q].checked_mul(p)?;
                if lhs != project[q + 1].checked_mul(&c1.diffs()[q])? {
                    return Err(Error::Validation(format!(
                        "project is not a chain map in degree {q}"
                    )));
                }
            }
        }
        Ok(ShortExactSequence {
            c0,
            c1,
            c2,
            inject,
            project,
        })
    }

    pub fn degrees(&self) -> usize {
        self.c1.degrees()
    }
}

/// The acyclic complex with `H^q(C_i)` in degree `3q + i`, written in the
/// coordinates of the stored bases.
#[derive(Clone, Debug)]
pub struct LongExactSequence {
    pub complex: CochainComplex,
    pub bases: [GradedBases; 3],
}

fn class_matrix(
    coh: &Cohomology,
    bases: &GradedBases,
    q: usize,
    images: &[Vector],
) -> Result<ExactMatrix> {
    let cols = images
        .iter()
        .map(|v| coh.class_coordinates_in(bases, q, v))
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::from_columns(bases.0[q].len(), &cols)
}

fn check_bases(c: &CochainComplex, coh: &Cohomology, h: &GradedBases, name: &str) -> Result<()> {
    if h.dims() != coh.dims {
        return Err(Error::Shape(format!(
            "cohomology bases of {name} have dimensions {:?}, expected {:?}",
            h.dims(),
            coh.dims
        )));
    }
    // torsion validates cocycles and independence
    c.torsion(h).map(|_| ())
}

/// Long exact sequence in the given cohomology bases, connecting maps by the
/// snake construction.
pub fn long_exact_sequence_in(
    s: &ShortExactSequence,
    bases: [GradedBases; 3],
) -> Result<LongExactSequence> {
    let cohs = [s.c0.cohomology(), s.c1.cohomology(), s.c2.cohomology()];
    for (k, (c, name)) in [&s.c0, &s.c1, &s.c2]
        .into_iter()
        .zip(["C0", "C1", "C2"])
        .enumerate()
    {
        check_bases(c, &cohs[k], &bases[k], name)?;
    }
    let n = s.degrees();
    let mut dims = Vec::with_capacity(3 * n);
    let mut diffs = Vec::with_capacity(3 * n);
    for q in 0..n {
        dims.extend((0..3).map(|k| bases[k].0[q].len()));
        let injected = bases[0].0[q]
            .iter()
            .map(|v| s.inject[q].mul_vec(v))
            .collect::<Result<Vec<_>>>()?;
        diffs.push(class_matrix(&cohs[1], &bases[1], q, &injected)?);
        let projected = bases[1].0[q]
            .iter()
            .map(|v| s.project[q].mul_vec(v))
            .collect::<Result<Vec<_>>>()?;
        diffs.push(class_matrix(&cohs[2], &bases[2], q, &projected)?);
        if q + 1 < n {
            let mut connecting = Vec::new();
            for z in &bases[2].0[q] {
                let x = s.project[q].solve(z)?;
                let y = s.c1.diffs()[q].mul_vec(&x)?;
                let pulled = s.inject[q + 1].solve(&y).map_err(|_| {
                    Error::Internal("coboundary of a lift is not in the image of inject".into())
                })?;
                connecting.push(pulled);
            }
            diffs.push(class_matrix(&cohs[0], &bases[0], q + 1, &connecting)?);
        }
    }
    let complex = CochainComplex::new(dims, diffs)?;
    if !complex.is_acyclic() {
        return Err(Error::Internal("long exact sequence is not exact".into()));
    }
    Ok(LongExactSequence { complex, bases })
}

/// Long exact sequence in the echelon cohomology bases of the three complexes.
pub fn long_exact_sequence(s: &ShortExactSequence) -> Result<LongExactSequence> {
    let bases = [
        s.c0.cohomology().bases,
        s.c1.cohomology().bases,
        s.c2.cohomology().bases,
    ];
    long_exact_sequence_in(s, bases)
}

fn fusion_y(s: &ShortExactSequence, les: &CochainComplex) -> u8 {
    let n_of = |c: &CochainComplex| turaev_n(c.dims(), &c.cohomology_dims());
    let b: Vec<Vec<usize>> = [&s.c0, &s.c1, &s.c2]
        .iter()
        .map(|c| c.coboundary_ranks())
        .collect();
    let f = les.coboundary_ranks();
    let mut y = n_of(&s.c0) + n_of(&s.c1) + n_of(&s.c2);
    for q in 0..s.degrees() {
        let b0_next = b[0].get(q + 1).copied().unwrap_or(0) as u64;
        let b2 = b[2][q] as u64;
        y += f[3 * q + 1] as u64 * b2 + b2 * b0_next + f[3 * q + 2] as u64 * b0_next;
    }
    (y % 2) as u8
}

/// Parity of the sign `y` in the multiplicativity of torsion.
pub fn fusion_sign_y(s: &ShortExactSequence) -> Result<u8> {
    Ok(fusion_y(s, &long_exact_sequence(s)?.complex))
}

/// Both sides of the fusion identity, as scalars with respect to the standard
/// bases of the cochain spaces and the chosen cohomology bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionReport {
    pub y: u8,
    /// `(-1)^y psi` followed by the torsion isomorphism of `C1`.
    pub through_c1: FieldElement,
    /// Torsion isomorphisms of `C0` and `C2` followed by that of the long exact sequence.
    pub through_cohomology: FieldElement,
}

impl FusionReport {
    pub fn holds(&self) -> bool {
        self.through_c1 == self.through_cohomology
    }
}

/// Evaluates both paths of the fusion diagram for cohomology bases `h0`, `h2`.
pub fn fusion_check(
    s: &ShortExactSequence,
    h0: &GradedBases,
    h2: &GradedBases,
) -> Result<FusionReport> {
    let h1 = s.c1.cohomology().bases;
    let les = long_exact_sequence_in(s, [h0.clone(), h1.clone(), h2.clone()])?;
    let y = fusion_y(s, &les.complex);

    let mut psi = FieldElement::one();
    for q in 0..s.degrees() {
        let mut cols = s.inject[q].columns();
        for e in ExactMatrix::identity(s.c2.dims()[q]).columns() {
            cols.push(s.project[q].solve(&e)?);
        }
        let det = ExactMatrix::from_columns(s.c1.dims()[q], &cols)?.det()?;
        psi = if q % 2 == 0 {
            &psi * &det
        } else {
            psi.checked_div(&det)?
        };
    }
    let mut through_c1 = &psi * &s.c1.phi_scalar(&h1)?;
    if y == 1 {
        through_c1 = -through_c1;
    }
    let kappa = les.complex.torsion_acyclic()?.inv()?;
    let through_cohomology = &(&s.c0.phi_scalar(h0)? * &s.c2.phi_scalar(h2)?) * &kappa;
    Ok(FusionReport {
        y,
        through_c1,
        through_cohomology,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;

    fn m(rows: usize, cols: usize, xs: &[i64]) -> ExactMatrix {
        ExactMatrix::from_ints(rows, cols, xs)
    }

    fn split_zero() -> ShortExactSequence {
        let c0 = CochainComplex::zero_differentials(vec![1]).unwrap();
        let c1 = CochainComplex::zero_differentials(vec![2]).unwrap();
        let c2 = CochainComplex::zero_differentials(vec![1]).unwrap();
        ShortExactSequence::new(c0, c1, c2, vec![m(2, 1, &[1, 0])], vec![m(1, 2, &[0, 1])]).unwrap()
    }

    #[test]
    fn validation() {
        let c0 = CochainComplex::zero_differentials(vec![1]).unwrap();
        let c1 = CochainComplex::zero_differentials(vec![2]).unwrap();
        let c2 = CochainComplex::zero_differentials(vec![1]).unwrap();
        let bad =
            ShortExactSequence::new(c0, c1, c2, vec![m(2, 1, &[1, 0])], vec![m(1, 2, &[1, 0])]);
        assert!(matches!(bad, Err(Error::Validation(_))));
    }

    #[test]
    fn snake_example() {
        // C0 = Q in degree 1, C1 = (Q -1-> Q), C2 = Q in degree 0
        let c0 = CochainComplex::zero_differentials(vec![0, 1]).unwrap();
        let c1 = CochainComplex::new(vec![1, 1], vec![m(1, 1, &[1])]).unwrap();
        let c2 = CochainComplex::zero_differentials(vec![1, 0]).unwrap();
        let s = ShortExactSequence::new(
            c0,
            c1,
            c2,
            vec![m(1, 0, &[]), m(1, 1, &[1])],
            vec![m(1, 1, &[1]), m(0, 1, &[])],
        )
        .unwrap();
        let les = long_exact_sequence(&s).unwrap();
        assert_eq!(les.complex.dims(), &[0, 0, 1, 1, 0, 0]);
        assert_eq!(les.complex.diffs()[2], m(1, 1, &[1]));
        assert!(les.complex.is_acyclic());
    }

    #[test]
    fn zero_split_sequence() {
        let s = split_zero();
        let les = long_exact_sequence(&s).unwrap();
        assert!(les.complex.is_acyclic());
        assert_eq!(fusion_sign_y(&s).unwrap(), 0);
        let h0 = s.c0.cohomology().bases;
        let h2 = s.c2.cohomology().bases;
        let report = fusion_check(&s, &h0, &h2).unwrap();
        assert!(report.holds(), "{report:?}");
    }

    #[test]
    fn random_split_sequences_fuse() {
        let mut r = random::rng(5);
        let mut parities = [0; 2];
        for trial in 0..40 {
            let d0 = random::random_shape(&mut r, 3, 2);
            let d0: Vec<usize> = d0.iter().map(|k| k + trial % 2).collect();
            let d2 = vec![1 + trial % 3, 2, 1];
            let c0 = random::random_any(&mut r, &d0, 2).unwrap();
            let c2 = random::random_any(&mut r, &d2, 2).unwrap();
            let s = random::random_split_sequence(&mut r, c0, c2, true).unwrap();
            let h0 = s.c0.cohomology().bases;
            let h2 = s.c2.cohomology().bases;
            let report = fusion_check(&s, &h0, &h2).unwrap();
            assert!(report.holds(), "trial {trial}: {report:?}");
            parities[report.y as usize] += 1;
        }
        assert!(parities[0] > 0 && parities[1] > 0, "{parities:?}");
    }
}
