//! Finite cochain complexes `0 -> C^0 -> C^1 -> ... -> C^n -> 0` over the
//! exact field tower, their cohomology and the torsion isomorphism.
//!
//! Torsion follows the convention
//!
//! ```text
//! torsion(C, h) = (-1)^N * prod_q det[b^q, h~^q, b~^{q+1}]^{(-1)^q}
//! ```
//!
//! where `b^q` is the echelon basis of `B^q = im d^{q-1}`, `h~^q` are the given
//! cohomology representatives and `b~^{q+1}` are echelon lifts of `b^{q+1}`
//! through `d^q`, all written in the standard basis of `C^q`. Turaev's sign is
//! `N = sum_q a^q b^q` with `a^q`, `b^q` the tail sums of `dim C^j` and `dim H^j`.
//! The determinant-line isomorphism `det C -> det H` of the fusion identity is
//! the reciprocal of this scalar ([`CochainComplex::phi_scalar`]).

mod ses;
mod tau;

pub use ses::{
    fusion_check, fusion_sign_y, long_exact_sequence, long_exact_sequence_in, FusionReport,
    LongExactSequence, ShortExactSequence,
};
pub use tau::{
    calibration_ratios, dimension_dac, enumerate_tau_chains, epsilon_alpha, f_alpha,
    tangent_space_dimension, unsigned_f_alpha, verify_dimension, ShapeVector, TauChain,
};

use crate::error::{Error, Result};
use crate::exactfield::{ExactMatrix, FieldElement, Scalar, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    dims: Vec<usize>,
    diffs: Vec<ExactMatrix>,
}

/// Per-degree ordered cohomology representatives (cocycles as column vectors).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedBases(pub Vec<Vec<Vector>>);

impl GradedBases {
    /// No representatives in any of `degrees` degrees.
    pub fn empty(degrees: usize) -> Self {
        GradedBases(vec![Vec::new(); degrees])
    }

    pub fn dims(&self) -> Vec<usize> {
        self.0.iter().map(Vec::len).collect()
    }
}

/// Cohomology dimensions together with echelon data used for class coordinates.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub dims: Vec<usize>,
    pub bases: GradedBases,
    coboundaries: Vec<Vec<Vector>>,
}

impl Cohomology {
    /// Coordinates of the class of the cocycle `v` in degree `q` with respect
    /// to `bases` (which must be representatives of a basis of `H^q`).
    pub fn class_coordinates_in(
        &self,
        bases: &GradedBases,
        q: usize,
        v: &[FieldElement],
    ) -> Result<Vector> {
        let b = &self.coboundaries[q];
        let h = &bases.0[q];
        let mut cols = b.clone();
        cols.extend(h.iter().cloned());
        let m = ExactMatrix::from_columns(v.len(), &cols)?;
        let x = m
            .solve(v)
            .map_err(|_| Error::Basis(format!("vector is not a cocycle in degree {q}")))?;
        Ok(x[b.len()..].to_vec())
    }

    pub fn class_coordinates(&self, q: usize, v: &[FieldElement]) -> Result<Vector> {
        self.class_coordinates_in(&self.bases, q, v)
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }
}

impl CochainComplex {
    /// Validates `diffs[q]` is `dims[q+1] x dims[q]` and `d^{q+1} d^q = 0`.
    pub fn new(dims: Vec<usize>, diffs: Vec<ExactMatrix>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Shape("a complex needs at least one degree".into()));
        }
        if diffs.len() + 1 != dims.len() {
            return Err(Error::Shape(format!(
                "{} degrees need {} differentials, got {}",
                dims.len(),
                dims.len() - 1,
                diffs.len()
            )));
        }
        for (q, d) in diffs.iter().enumerate() {
            if d.rows() != dims[q + 1] || d.cols() != dims[q] {
                return Err(Error::Shape(format!(
                    "d^{q} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    dims[q + 1],
                    dims[q]
                )));
            }
        }
        for q in 0..diffs.len().saturating_sub(1) {
            if !diffs[q + 1].checked_mul(&diffs[q])?.is_zero() {
                return Err(Error::Validation(format!("d^{} d^{q} != 0", q + 1)));
            }
        }
        Ok(CochainComplex { dims, diffs })
    }

    /// The complex with the given dimensions and zero differentials.
    pub fn zero_differentials(dims: Vec<usize>) -> Result<Self> {
        let diffs = dims
            .windows(2)
            .map(|w| ExactMatrix::zeros(w[1], w[0]))
            .collect();
        CochainComplex::new(dims, diffs)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn diffs(&self) -> &[ExactMatrix] {
        &self.diffs
    }

    /// Number of degrees `n + 1`.
    pub fn degrees(&self) -> usize {
        self.dims.len()
    }

    /// `d^q`, or `None` in the top degree.
    pub fn outgoing(&self, q: usize) -> Option<&ExactMatrix> {
        self.diffs.get(q)
    }

    /// `d^{q-1}`, or `None` in degree 0.
    pub fn incoming(&self, q: usize) -> Option<&ExactMatrix> {
        q.checked_sub(1).and_then(|p| self.diffs.get(p))
    }

    /// `dim B^q = rank d^{q-1}` per degree.
    pub fn coboundary_ranks(&self) -> Vec<usize> {
        (0..self.degrees())
            .map(|q| self.incoming(q).map_or(0, ExactMatrix::rank))
            .collect()
    }

    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.diffs.iter().map(ExactMatrix::rank).collect();
        (0..self.degrees())
            .map(|q| {
                let out = ranks.get(q).copied().unwrap_or(0);
                let inc = q.checked_sub(1).map_or(0, |p| ranks[p]);
                self.dims[q] - out - inc
            })
            .collect()
    }

    pub fn cohomology(&self) -> Cohomology {
        let mut dims = Vec::with_capacity(self.degrees());
        let mut bases = Vec::with_capacity(self.degrees());
        let mut coboundaries = Vec::with_capacity(self.degrees());
        for q in 0..self.degrees() {
            let k = self.dims[q];
            let cocycles = match self.outgoing(q) {
                Some(d) => d.kernel_basis(),
                None => ExactMatrix::identity(k).columns(),
            };
            let b = self
                .incoming(q)
                .map(ExactMatrix::image_basis)
                .unwrap_or_default();
            // extend b to a basis of Z^q greedily, in echelon order
            let mut span = b.clone();
            let mut reps = Vec::new();
            let target = cocycles.len();
            for z in cocycles {
                if span.len() == target {
                    break;
                }
                let mut trial = span.clone();
                trial.push(z.clone());
                let m = ExactMatrix::from_columns(k, &trial).expect("consistent lengths");
                if m.rank() == trial.len() {
                    span = trial;
                    reps.push(z);
                }
            }
            dims.push(reps.len());
            bases.push(reps);
            coboundaries.push(b);
        }
        Cohomology {
            dims,
            bases: GradedBases(bases),
            coboundaries,
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.cohomology_dims().iter().all(|&d| d == 0)
    }

    /// Torsion with respect to the standard bases of `C^q` and the cohomology
    /// representatives `h`.
    pub fn torsion(&self, h: &GradedBases) -> Result<FieldElement> {
        let hdims = self.cohomology_dims();
        if h.0.len() != self.degrees() {
            return Err(Error::Shape(format!(
                "cohomology bases for {} degrees, complex has {}",
                h.0.len(),
                self.degrees()
            )));
        }
        for (q, (hq, &expected)) in h.0.iter().zip(&hdims).enumerate() {
            if hq.len() != expected {
                return Err(Error::Shape(format!(
                    "H^{q} has dimension {expected}, {} representatives given",
                    hq.len()
                )));
            }
            for v in hq {
                if v.len() != self.dims[q] {
                    return Err(Error::Shape(format!(
                        "representative of length {} in degree {q}",
                        v.len()
                    )));
                }
                if let Some(d) = self.outgoing(q) {
                    if d.mul_vec(v)?.iter().any(|x| !x.is_zero()) {
                        return Err(Error::Basis(format!(
                            "representative in degree {q} is not a cocycle"
                        )));
                    }
                }
            }
        }
        let mut value = FieldElement::one();
        for q in 0..self.degrees() {
            let mut cols = self
                .incoming(q)
                .map(ExactMatrix::image_basis)
                .unwrap_or_default();
            cols.extend(h.0[q].iter().cloned());
            if let Some(d) = self.outgoing(q) {
                for b in d.image_basis() {
                    cols.push(
                        d.solve(&b)
                            .map_err(|_| Error::Internal("image vector without preimage".into()))?,
                    );
                }
            }
            let m = ExactMatrix::from_columns(self.dims[q], &cols)?;
            let det = m.det()?;
            if det.is_zero() {
                return Err(Error::Basis(format!(
                    "cohomology classes in degree {q} are dependent"
                )));
            }
            value = if q % 2 == 0 {
                &value * &det
            } else {
                value.checked_div(&det)?
            };
        }
        if turaev_n(&self.dims, &hdims) % 2 == 1 {
            value = -value;
        }
        Ok(value)
    }

    /// The torsion function on acyclic complexes.
    pub fn torsion_acyclic(&self) -> Result<FieldElement> {
        let hdims = self.cohomology_dims();
        if hdims.iter().any(|&d| d > 0) {
            return Err(Error::NotAcyclic { dims: hdims });
        }
        self.torsion(&GradedBases::empty(self.degrees()))
    }

    /// Scalar of the determinant-line isomorphism `det C -> det H` taking the
    /// standard basis to a multiple of `h`; the reciprocal of [`Self::torsion`].
    pub fn phi_scalar(&self, h: &GradedBases) -> Result<FieldElement> {
        self.torsion(h)?.inv()
    }

    /// The same complex in new coordinates `x' = g x` on `C^q`.
    pub fn change_coordinates(&self, q: usize, g: &ExactMatrix) -> Result<CochainComplex> {
        if q >= self.degrees() || g.rows() != self.dims[q] || !g.is_square() {
            return Err(Error::Shape(format!("coordinate change in degree {q}")));
        }
        let g_inv = g.inverse()?;
        let mut diffs = self.diffs.clone();
        if q > 0 {
            diffs[q - 1] = g.checked_mul(&diffs[q - 1])?;
        }
        if q < diffs.len() {
            diffs[q] = diffs[q].checked_mul(&g_inv)?;
        }
        CochainComplex::new(self.dims.clone(), diffs)
    }

    pub fn evaluate_at(&self, point: &Scalar) -> Result<CochainComplex> {
        let diffs = self
            .diffs
            .iter()
            .map(|d| d.evaluate_at(point))
            .collect::<Result<Vec<_>>>()?;
        CochainComplex::new(self.dims.clone(), diffs)
    }
}

/// `N = sum_q a^q b^q` with tail sums `a^q = sum_{j>=q} dims[j]`,
/// `b^q = sum_{j>=q} hdims[j]`.
pub fn turaev_n(dims: &[usize], hdims: &[usize]) -> u64 {
    let mut alpha = 0u64;
    let mut beta = 0u64;
    let mut n = 0u64;
    for q in (0..dims.len()).rev() {
        alpha += dims[q] as u64;
        beta += hdims.get(q).copied().unwrap_or(0) as u64;
        n += alpha * beta;
    }
    n
}

/// Parity of Turaev's `N` for `c`.
pub fn sign_n(c: &CochainComplex) -> u8 {
    (turaev_n(c.dims(), &c.cohomology_dims()) % 2) as u8
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Poly;

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

    fn c11(entry: FieldElement) -> CochainComplex {
        CochainComplex::new(
            vec![1, 1],
            vec![ExactMatrix::new(1, 1, vec![entry]).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn rejects_bad_complexes() {
        assert!(matches!(
            CochainComplex::new(vec![1, 2], vec![ExactMatrix::zeros(1, 2)]),
            Err(Error::Shape(_))
        ));
        let d0 = ExactMatrix::from_ints(1, 1, &[1]);
        let d1 = ExactMatrix::from_ints(1, 1, &[1]);
        assert!(matches!(
            CochainComplex::new(vec![1, 1, 1], vec![d0, d1]),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn cohomology_examples() {
        let z = CochainComplex::zero_differentials(vec![1, 1]).unwrap();
        assert_eq!(z.cohomology().dims, vec![1, 1]);
        assert!(!z.is_acyclic());
        assert_eq!(c121().cohomology().dims, vec![0, 0, 0]);
        assert!(c121().is_acyclic());
        let t1 = c11(FieldElement::from_poly(Poly::from_ints(&[-1, 1])));
        assert!(t1.is_acyclic());
    }

    #[test]
    fn sign_n_examples() {
        assert_eq!(sign_n(&c121()), 0);
        assert_eq!(
            sign_n(&CochainComplex::zero_differentials(vec![1]).unwrap()),
            1
        );
        let z = CochainComplex::zero_differentials(vec![1, 1]).unwrap();
        assert_eq!(turaev_n(z.dims(), &z.cohomology_dims()), 5);
        assert_eq!(sign_n(&z), 1);
    }

    #[test]
    fn torsion_examples() {
        let empty = CochainComplex::zero_differentials(vec![0, 0, 0]).unwrap();
        assert_eq!(empty.torsion_acyclic().unwrap(), FieldElement::one());
        assert_eq!(
            c11(5.into()).torsion_acyclic().unwrap(),
            FieldElement::from_frac(1, 5)
        );
        assert_eq!(
            c121().torsion_acyclic().unwrap(),
            FieldElement::from_int(-1)
        );
        let z = CochainComplex::zero_differentials(vec![1, 1]).unwrap();
        assert_eq!(
            z.torsion_acyclic(),
            Err(Error::NotAcyclic { dims: vec![1, 1] })
        );
    }

    #[test]
    fn torsion_with_cohomology_bases() {
        let z = CochainComplex::zero_differentials(vec![1, 1]).unwrap();
        let h = GradedBases(vec![vec![vec![2.into()]], vec![vec![3.into()]]]);
        // (-1)^5 * 2 / 3
        assert_eq!(z.torsion(&h).unwrap(), FieldElement::from_frac(-2, 3));
        let wrong = GradedBases(vec![vec![], vec![vec![1.into()]]]);
        assert!(matches!(z.torsion(&wrong), Err(Error::Shape(_))));
        let zero_rep = GradedBases(vec![vec![vec![0.into()]], vec![vec![1.into()]]]);
        assert!(matches!(z.torsion(&zero_rep), Err(Error::Basis(_))));
    }

    #[test]
    fn coordinate_change_law() {
        // x -> g x on C^0 of [5] multiplies the torsion by det(g)^{+1}
        let c = c11(5.into());
        let g = ExactMatrix::from_ints(1, 1, &[2]);
        let moved = c.change_coordinates(0, &g).unwrap();
        assert_eq!(
            moved.torsion_acyclic().unwrap(),
            FieldElement::from_frac(2, 5)
        );
    }
}
