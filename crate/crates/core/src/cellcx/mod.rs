//! Cell complexes with group-ring boundaries, twisted cochains and the
//! Milnor-Turaev torsion.
//!
//! Chains are left modules over the group ring. The boundary matrix in degree
//! `q` has one row per `(q-1)`-cell and one column per `q`-cell; entry
//! `(s, c)` is the coefficient of `s` in the boundary of `c`, so
//! `boundary(boundary(c))` has coefficient `sum_s a(s, c) a(r, s)` on `r`.
//!
//! Every cell carries a lift word `u`. The twisted differential `d^q` has the
//! block `rho(u_c^-1 a(s, c) u_s)` in block row `c` and block column `s`, with
//! cells of each degree laid out in the order given by `ordering`. Replacing
//! `u_c` by `w u_c` multiplies the torsion `T` by `det rho(w)^{(-1)^dim c}`.
//!
//! `T` is the inverse of the torsion of the twisted complex, multiplied by
//! `(s * o)^{dim V}` where `s` is the sign of the torsion of the untwisted
//! rational complex in the orientation bases and `o` is the orientation toggle.

mod group;
pub mod models;
mod word;

use std::f64::consts::PI;

pub use group::{GroupPresentation, Representation};
pub use word::{fox_derivative, GroupRingElement, Letter, Word};

use crate::complexes::{CochainComplex, GradedBases};
use crate::error::{Error, Result};
use crate::exactfield::{ExactMatrix, FieldElement, Vector};

/// Matrix of group-ring elements, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GroupRingElement>,
}

impl GroupRingMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<GroupRingElement>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(GroupRingMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        GroupRingMatrix {
            rows,
            cols,
            entries: vec![GroupRingElement::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: GroupRingElement) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[GroupRingElement] {
        &self.entries
    }

    fn augmented(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.rows, self.cols, |i, j| {
            FieldElement::from_int(self.get(i, j).augmentation())
        })
    }
}

/// Reference to the `index`-th cell of dimension `dim`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellRef {
    pub dim: usize,
    pub index: usize,
}

impl CellRef {
    pub fn new(dim: usize, index: usize) -> Self {
        CellRef { dim, index }
    }

    /// Parses `dim:index`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("cell reference `{s}` is not of the form dim:index"));
        let (d, i) = s.trim().split_once(':').ok_or_else(bad)?;
        Ok(CellRef::new(
            d.parse().map_err(|_| bad())?,
            i.parse().map_err(|_| bad())?,
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantCellComplex {
    cells: Vec<usize>,
    boundaries: Vec<GroupRingMatrix>,
    lifts: Vec<Vec<Word>>,
    ordering: Vec<usize>,
}

impl EquivariantCellComplex {
    /// `boundaries[q-1]` is the boundary of the `q`-cells. `ordering` is a
    /// permutation of all cells numbered dimension by dimension. The
    /// augmented boundaries must compose to zero.
    pub fn new(
        cells: Vec<usize>,
        boundaries: Vec<GroupRingMatrix>,
        lifts: Vec<Vec<Word>>,
        ordering: Vec<usize>,
    ) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::Shape(
                "a cell complex needs at least one dimension".into(),
            ));
        }
        if boundaries.len() + 1 != cells.len() {
            return Err(Error::Shape(format!(
                "{} boundary matrices for {} dimensions",
                boundaries.len(),
                cells.len()
            )));
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.rows() != cells[k] || b.cols() != cells[k + 1] {
                return Err(Error::Shape(format!(
                    "boundary of the {}-cells is {}x{}, expected {}x{}",
                    k + 1,
                    b.rows(),
                    b.cols(),
                    cells[k],
                    cells[k + 1]
                )));
            }
        }
        if lifts.len() != cells.len() || lifts.iter().zip(&cells).any(|(l, &n)| l.len() != n) {
            return Err(Error::Shape("one lift word per cell required".into()));
        }
        let total: usize = cells.iter().sum();
        let mut seen = vec![false; total];
        if ordering.len() != total
            || ordering
                .iter()
                .any(|&i| i >= total || std::mem::replace(&mut seen[i], true))
        {
            return Err(Error::Validation(format!(
                "ordering is not a permutation of 0..{total}"
            )));
        }
        for k in 1..boundaries.len() {
            let composite = boundaries[k - 1]
                .augmented()
                .checked_mul(&boundaries[k].augmented())?;
            if !composite.is_zero() {
                return Err(Error::Validation(format!(
                    "augmented boundary squares to nonzero in dimension {}",
                    k + 1
                )));
            }
        }
        Ok(EquivariantCellComplex {
            cells,
            boundaries,
            lifts,
            ordering,
        })
    }

    /// Trivial lifts and the identity ordering.
    pub fn with_trivial_lifts(cells: Vec<usize>, boundaries: Vec<GroupRingMatrix>) -> Result<Self> {
        let lifts = cells.iter().map(|&n| vec![Word::identity(); n]).collect();
        let total = cells.iter().sum();
        EquivariantCellComplex::new(cells, boundaries, lifts, (0..total).collect())
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn boundaries(&self) -> &[GroupRingMatrix] {
        &self.boundaries
    }

    pub fn lifts(&self) -> &[Vec<Word>] {
        &self.lifts
    }

    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    pub fn top_dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(q, &n)| if q % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    fn offset(&self, dim: usize) -> usize {
        self.cells[..dim].iter().sum()
    }

    /// Cells of dimension `dim` in layout order.
    pub fn layout(&self, dim: usize) -> Vec<usize> {
        let start = self.offset(dim);
        let end = start + self.cells[dim];
        self.ordering
            .iter()
            .filter(|&&g| g >= start && g < end)
            .map(|&g| g - start)
            .collect()
    }

    pub fn with_ordering(&self, ordering: Vec<usize>) -> Result<Self> {
        EquivariantCellComplex::new(
            self.cells.clone(),
            self.boundaries.clone(),
            self.lifts.clone(),
            ordering,
        )
    }

    pub fn with_lifts(&self, lifts: Vec<Vec<Word>>) -> Result<Self> {
        EquivariantCellComplex::new(
            self.cells.clone(),
            self.boundaries.clone(),
            lifts,
            self.ordering.clone(),
        )
    }

    fn check_cell(&self, cell: CellRef) -> Result<()> {
        if cell.dim >= self.cells.len() || cell.index >= self.cells[cell.dim] {
            return Err(Error::Validation(format!(
                "no cell {}:{}",
                cell.dim, cell.index
            )));
        }
        Ok(())
    }

    /// Copy with the lift of `cell` replaced by `w` times the old lift.
    pub fn shift_euler(&self, cell: CellRef, w: &Word) -> Result<Self> {
        self.check_cell(cell)?;
        let mut lifts = self.lifts.clone();
        let old = &lifts[cell.dim][cell.index];
        lifts[cell.dim][cell.index] = w.mul(old);
        self.with_lifts(lifts)
    }

    fn assemble(
        &self,
        m: usize,
        mut block: impl FnMut(usize, usize, usize) -> Result<ExactMatrix>,
    ) -> Result<CochainComplex> {
        let dims: Vec<usize> = self.cells.iter().map(|&n| n * m).collect();
        let mut diffs = Vec::with_capacity(self.boundaries.len());
        for q in 0..self.boundaries.len() {
            let lower = self.layout(q);
            let upper = self.layout(q + 1);
            let mut d = ExactMatrix::zeros(dims[q + 1], dims[q]);
            for (row, &c) in upper.iter().enumerate() {
                for (col, &s) in lower.iter().enumerate() {
                    if !self.boundaries[q].get(s, c).is_zero() {
                        d.set_block(row * m, col * m, &block(q, s, c)?);
                    }
                }
            }
            diffs.push(d);
        }
        CochainComplex::new(dims, diffs).map_err(|e| match e {
            Error::Validation(msg) => Error::Validation(format!(
                "assembled differentials do not compose to zero: {msg}"
            )),
            other => other,
        })
    }

    /// The twisted cochain complex `C^*(X; rho)`.
    pub fn twisted_cochain(&self, r: &Representation) -> Result<CochainComplex> {
        r.validate()?;
        for (q, lifts) in self.lifts.iter().enumerate() {
            for w in lifts {
                r.presentation().check_word(w)?;
            }
            if let Some(b) = self.boundaries.get(q) {
                for x in b.entries() {
                    for (_, w) in x.terms() {
                        r.presentation().check_word(w)?;
                    }
                }
            }
        }
        self.assemble(r.dim(), |q, s, c| {
            let u_c = &self.lifts[q + 1][c];
            let u_s = &self.lifts[q][s];
            r.evaluate(&self.boundaries[q].get(s, c).conjugate(&u_c.inverse(), u_s))
        })
    }

    /// The rational cochain complex with trivial coefficients.
    pub fn untwisted_cochain(&self) -> Result<CochainComplex> {
        self.assemble(1, |q, s, c| {
            Ok(ExactMatrix::from_ints(
                1,
                1,
                &[self.boundaries[q].get(s, c).augmentation()],
            ))
        })
    }

    /// Moves coordinates of a vector from cell-index order to layout order.
    fn to_layout(&self, dim: usize, v: &[FieldElement]) -> Vector {
        self.layout(dim).iter().map(|&c| v[c].clone()).collect()
    }
}

/// `assemble_twisted_cochain` as a free function.
pub fn assemble_twisted_cochain(
    x: &EquivariantCellComplex,
    r: &Representation,
) -> Result<CochainComplex> {
    x.twisted_cochain(r)
}

/// Bases of the untwisted rational cohomology, in cell-index coordinates,
/// and a sign toggle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyOrientation {
    pub bases: GradedBases,
    pub sign: i8,
}

impl CohomologyOrientation {
    pub fn new(bases: GradedBases, sign: i8) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::Validation(format!(
                "orientation sign must be 1 or -1, got {sign}"
            )));
        }
        Ok(CohomologyOrientation { bases, sign })
    }

    /// Echelon representatives of the untwisted cohomology, sign `+1`.
    pub fn standard(x: &EquivariantCellComplex) -> Result<Self> {
        let id = x.with_ordering((0..x.cells().iter().sum()).collect())?;
        Ok(CohomologyOrientation {
            bases: id.untwisted_cochain()?.cohomology().bases,
            sign: 1,
        })
    }

    pub fn flipped(&self) -> Self {
        CohomologyOrientation {
            bases: self.bases.clone(),
            sign: -self.sign,
        }
    }
}

/// Sign of the rational torsion of the untwisted complex in the bases of `o`.
pub fn untwisted_orientation_sign(
    x: &EquivariantCellComplex,
    o: &CohomologyOrientation,
) -> Result<i8> {
    let c = x.untwisted_cochain()?;
    if o.bases.0.len() != c.degrees() {
        return Err(Error::Basis(format!(
            "orientation has bases in {} degrees, complex has {}",
            o.bases.0.len(),
            c.degrees()
        )));
    }
    for (q, hq) in o.bases.0.iter().enumerate() {
        if hq.iter().any(|v| v.len() != x.cells()[q]) {
            return Err(Error::Basis(format!(
                "orientation vector of wrong length in degree {q}"
            )));
        }
    }
    let laid_out = GradedBases(
        o.bases
            .0
            .iter()
            .enumerate()
            .map(|(q, hq)| hq.iter().map(|v| x.to_layout(q, v)).collect())
            .collect(),
    );
    let value = c.torsion(&laid_out).map_err(|e| match e {
        Error::Shape(msg) => Error::Basis(msg),
        other => other,
    })?;
    value
        .real_sign()
        .ok_or_else(|| Error::Internal(format!("rational torsion {value} has no sign")))
}

/// The Milnor-Turaev torsion `T` of `x` twisted by `r`.
pub fn milnor_turaev_torsion(
    x: &EquivariantCellComplex,
    r: &Representation,
    o: &CohomologyOrientation,
) -> Result<FieldElement> {
    let twisted = x.twisted_cochain(r)?;
    let value = twisted.torsion_acyclic()?.inv()?;
    let s = untwisted_orientation_sign(x, o)? * o.sign;
    Ok(if s < 0 && r.dim() % 2 == 1 {
        -value
    } else {
        value
    })
}

/// `det rho(w)`.
pub fn det_rho_of_class(r: &Representation, w: &Word) -> Result<FieldElement> {
    r.det_of_word(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Modulus {
    Pi,
    TwoPi,
}

impl Modulus {
    pub fn value(self) -> f64 {
        match self {
            Modulus::Pi => PI,
            Modulus::TwoPi => 2.0 * PI,
        }
    }
}

fn reduce_angle(theta: f64, modulus: Modulus) -> f64 {
    let m = modulus.value();
    let r = theta.rem_euclid(m);
    // values within rounding of the modulus wrap to zero
    if m - r < 1e-15 {
        0.0
    } else {
        r
    }
}

/// Argument of a nonzero constant in the plane, reduced modulo `modulus`,
/// in double precision.
pub fn argument_invariant(v: &FieldElement, modulus: Modulus) -> Result<f64> {
    let c = v
        .as_scalar()
        .ok_or_else(|| Error::Domain(format!("{v} is not constant; specialize it first")))?;
    if c.is_zero() {
        return Err(Error::Domain("argument of zero".into()));
    }
    let (re, im) = c.to_f64_pair();
    Ok(reduce_angle(im.atan2(re), modulus))
}

/// `arg(a) - arg(b)` modulo `2 pi`.
pub fn argument_difference(a: &FieldElement, b: &FieldElement) -> Result<f64> {
    let x = argument_invariant(a, Modulus::TwoPi)?;
    let y = argument_invariant(b, Modulus::TwoPi)?;
    Ok(reduce_angle(x - y, Modulus::TwoPi))
}

#[cfg(test)]
mod tests {
    use super::models;
    use super::*;
    use crate::exactfield::{Poly, Scalar};

    fn t() -> FieldElement {
        FieldElement::var()
    }

    fn rep_t() -> Representation {
        Representation::new(
            GroupPresentation::free(&["g"]).unwrap(),
            vec![ExactMatrix::new(1, 1, vec![t()]).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn circle_assembly() {
        let x = models::circle(1).unwrap();
        let c = x.twisted_cochain(&rep_t()).unwrap();
        assert_eq!(c.dims(), &[1, 1]);
        let t_minus_1 = FieldElement::from_poly(Poly::from_ints(&[-1, 1]));
        assert_eq!(
            c.diffs()[0],
            ExactMatrix::new(1, 1, vec![t_minus_1]).unwrap()
        );
        let trivial = Representation::trivial(GroupPresentation::free(&["g"]).unwrap());
        assert!(x.twisted_cochain(&trivial).unwrap().diffs()[0].is_zero());
    }

    #[test]
    fn shifted_edge_lift_conjugates_the_differential() {
        let x = models::circle(1)
            .unwrap()
            .shift_euler(CellRef::new(1, 0), &Word::generator("g"))
            .unwrap();
        let c = x.twisted_cochain(&rep_t()).unwrap();
        // g^-1 (g - 1) = 1 - g^-1
        let expected = &FieldElement::one() - &t().inv().unwrap();
        assert_eq!(
            c.diffs()[0],
            ExactMatrix::new(1, 1, vec![expected]).unwrap()
        );
    }

    #[test]
    fn circle_torsion_and_laws() {
        let x = models::circle(1).unwrap();
        let o = CohomologyOrientation::standard(&x).unwrap();
        let value = milnor_turaev_torsion(&x, &rep_t(), &o).unwrap();
        assert_eq!(value, FieldElement::from_poly(Poly::from_ints(&[1, -1])));
        let flipped = milnor_turaev_torsion(&x, &rep_t(), &o.flipped()).unwrap();
        assert_eq!(flipped, -value.clone());
        let shifted = x
            .shift_euler(CellRef::new(1, 0), &Word::generator("g"))
            .unwrap();
        // an edge shift contributes det rho(g)^{-1}
        let expected = value.checked_div(&t()).unwrap();
        assert_eq!(
            milnor_turaev_torsion(&shifted, &rep_t(), &o).unwrap(),
            expected
        );
        let vertex = x
            .shift_euler(CellRef::new(0, 0), &Word::generator("g"))
            .unwrap();
        assert_eq!(
            milnor_turaev_torsion(&vertex, &rep_t(), &o).unwrap(),
            &value * &t()
        );
        let same = x
            .shift_euler(CellRef::new(0, 0), &Word::identity())
            .unwrap();
        assert_eq!(same, x);
        let trivial = Representation::trivial(GroupPresentation::free(&["g"]).unwrap());
        assert!(matches!(
            milnor_turaev_torsion(&x, &trivial, &o),
            Err(Error::NotAcyclic { dims }) if dims == vec![1, 1]
        ));
    }

    #[test]
    fn orientation_sign_examples() {
        let x = models::circle(1).unwrap();
        let o = CohomologyOrientation::standard(&x).unwrap();
        let s = untwisted_orientation_sign(&x, &o).unwrap();
        assert_eq!(s, -1);
        let neg = |v: &Vector| v.iter().map(|a| -a.clone()).collect::<Vector>();
        let mut one = o.clone();
        one.bases.0[0][0] = neg(&one.bases.0[0][0]);
        assert_eq!(untwisted_orientation_sign(&x, &one).unwrap(), -s);
        let mut both = one.clone();
        both.bases.0[1][0] = neg(&both.bases.0[1][0]);
        assert_eq!(untwisted_orientation_sign(&x, &both).unwrap(), s);
        let mut short = o.clone();
        short.bases.0[1].clear();
        assert!(matches!(
            untwisted_orientation_sign(&x, &short),
            Err(Error::Basis(_))
        ));
    }

    #[test]
    fn reordering_cells_keeps_torsion() {
        let x = models::circle(2).unwrap();
        let o = CohomologyOrientation::standard(&x).unwrap();
        let base = milnor_turaev_torsion(&x, &rep_t(), &o).unwrap();
        let swapped = x.with_ordering(vec![1, 0, 3, 2]).unwrap();
        assert_eq!(milnor_turaev_torsion(&swapped, &rep_t(), &o).unwrap(), base);
    }

    #[test]
    fn two_circle_models_agree() {
        let one = models::circle(1).unwrap();
        let two = models::circle(2).unwrap();
        let a = milnor_turaev_torsion(
            &one,
            &rep_t(),
            &CohomologyOrientation::standard(&one).unwrap(),
        )
        .unwrap();
        let b = milnor_turaev_torsion(
            &two,
            &rep_t(),
            &CohomologyOrientation::standard(&two).unwrap(),
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn arguments() {
        let close = |a: f64, b: f64| (a - b).abs() < 1e-12;
        assert!(close(
            argument_invariant(&FieldElement::from_int(-1), Modulus::Pi).unwrap(),
            0.0
        ));
        let i = FieldElement::from_scalar(Scalar::i());
        assert!(close(
            argument_invariant(&i, Modulus::Pi).unwrap(),
            PI / 2.0
        ));
        let one_plus_i = FieldElement::from_scalar(Scalar::gaussian(1, 1));
        assert!(close(
            argument_invariant(&one_plus_i, Modulus::TwoPi).unwrap(),
            PI / 4.0
        ));
        assert!(matches!(
            argument_invariant(&FieldElement::zero(), Modulus::Pi),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            argument_invariant(&t(), Modulus::Pi),
            Err(Error::Domain(_))
        ));
        assert!(close(
            argument_difference(&FieldElement::one(), &i).unwrap(),
            3.0 * PI / 2.0
        ));
    }
}
