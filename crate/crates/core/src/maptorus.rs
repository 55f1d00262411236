//! Mapping tori of cellular self-maps as algebraic mapping cones, the
//! Lefschetz zeta function and the comparison between the two.
//!
//! For a chain self-map `phi` of `C = C^*(N)` and monodromy `w` on `V`, the
//! cone in degree `q` is `C^q (x) V (+) C^{q-1} (x) V` with
//!
//! ```text
//! D(x, y) = (d x, (Phi - 1) x - d y),    Phi = phi (x) w.
//! ```

use crate::complexes::{
    long_exact_sequence, CochainComplex, GradedBases, LongExactSequence, ShortExactSequence,
};
use crate::error::{Error, Result};
use crate::exactfield::{ExactMatrix, FieldElement, Scalar};
use crate::par::{self, Execution};

/// A chain self-map of the untwisted cochain complex of the fibre.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularSelfMap {
    domain: CochainComplex,
    comap: Vec<ExactMatrix>,
}

impl CellularSelfMap {
    pub fn new(domain: CochainComplex, comap: Vec<ExactMatrix>) -> Result<Self> {
        if comap.len() != domain.degrees() {
            return Err(Error::Shape(format!(
                "{} maps for a complex with {} degrees",
                comap.len(),
                domain.degrees()
            )));
        }
        for (q, f) in comap.iter().enumerate() {
            let k = domain.dims()[q];
            if f.rows() != k || f.cols() != k {
                return Err(Error::Shape(format!("map in degree {q} is not {k}x{k}")));
            }
        }
        for (q, d) in domain.diffs().iter().enumerate() {
            if d.checked_mul(&comap[q])? != comap[q + 1].checked_mul(d)? {
                return Err(Error::Validation(format!(
                    "map does not commute with d^{q}"
                )));
            }
        }
        Ok(CellularSelfMap { domain, comap })
    }

    pub fn identity(domain: CochainComplex) -> Self {
        let comap = domain
            .dims()
            .iter()
            .map(|&k| ExactMatrix::identity(k))
            .collect();
        CellularSelfMap { domain, comap }
    }

    pub fn domain(&self) -> &CochainComplex {
        &self.domain
    }

    pub fn comap(&self) -> &[ExactMatrix] {
        &self.comap
    }
}

/// Image of the positive generator of the base circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyRep {
    w: ExactMatrix,
}

impl MonodromyRep {
    pub fn new(w: ExactMatrix) -> Result<Self> {
        if !w.is_square() {
            return Err(Error::Shape("monodromy must be square".into()));
        }
        if w.det()?.is_zero() {
            return Err(Error::Validation("monodromy is singular".into()));
        }
        Ok(MonodromyRep { w })
    }

    /// Rank one monodromy `w = [t]`.
    pub fn generic() -> Self {
        MonodromyRep {
            w: ExactMatrix::new(1, 1, vec![FieldElement::var()]).expect("1x1"),
        }
    }

    pub fn w(&self) -> &ExactMatrix {
        &self.w
    }

    pub fn dim(&self) -> usize {
        self.w.rows()
    }

    pub fn evaluate_at(&self, point: &Scalar) -> Result<MonodromyRep> {
        MonodromyRep::new(self.w.evaluate_at(point)?)
    }
}

fn twisted(c: &CochainComplex, m: usize) -> Result<CochainComplex> {
    let id = ExactMatrix::identity(m);
    let dims = c.dims().iter().map(|k| k * m).collect();
    CochainComplex::new(dims, c.diffs().iter().map(|d| d.kron(&id)).collect())
}

/// `C^*(N; V)` with its differential negated and shifted up by one degree,
/// padded so that it has one more degree than `c`.
fn shifted(c: &CochainComplex) -> Result<CochainComplex> {
    let mut dims = vec![0];
    dims.extend_from_slice(c.dims());
    let mut diffs = vec![ExactMatrix::zeros(dims[1], 0)];
    diffs.extend(c.diffs().iter().map(ExactMatrix::neg));
    CochainComplex::new(dims, diffs)
}

fn padded(c: &CochainComplex) -> Result<CochainComplex> {
    let mut dims = c.dims().to_vec();
    dims.push(0);
    let mut diffs = c.diffs().to_vec();
    diffs.push(ExactMatrix::zeros(0, *c.dims().last().expect("nonempty")));
    CochainComplex::new(dims, diffs)
}

/// The cone of `Phi - 1` on `C^*(N; V)`, in degrees `0 ..= n + 1`.
pub fn mapping_cone_complex(m: &CellularSelfMap, rho: &MonodromyRep) -> Result<CochainComplex> {
    let v = rho.dim();
    let c = twisted(&m.domain, v)?;
    let k = c.dims();
    let n = k.len();
    let part = |q: usize| if q < n { k[q] } else { 0 };
    let prev = |q: usize| if q == 0 { 0 } else { k[q - 1] };
    let dims: Vec<usize> = (0..=n).map(|q| part(q) + prev(q)).collect();
    let mut diffs = Vec::with_capacity(n);
    for q in 0..n {
        let mut big = ExactMatrix::zeros(dims[q + 1], dims[q]);
        if let Some(d) = c.outgoing(q) {
            big.set_block(0, 0, d);
        }
        let phi = m.comap[q]
            .kron(&rho.w)
            .checked_sub(&ExactMatrix::identity(k[q]))?;
        big.set_block(part(q + 1), 0, &phi);
        if let Some(d) = c.incoming(q) {
            big.set_block(part(q + 1), part(q), &d.neg());
        }
        diffs.push(big);
    }
    CochainComplex::new(dims, diffs)
}

/// `0 -> C^{*-1}(N; V) -> cone -> C^*(N; V) -> 0`.
pub fn wang_sequence(m: &CellularSelfMap, rho: &MonodromyRep) -> Result<ShortExactSequence> {
    let cone = mapping_cone_complex(m, rho)?;
    let c = twisted(&m.domain, rho.dim())?;
    let c0 = shifted(&c)?;
    let c2 = padded(&c)?;
    let mut inject = Vec::new();
    let mut project = Vec::new();
    for q in 0..cone.degrees() {
        let (a, b) = (c2.dims()[q], c0.dims()[q]);
        let mut i = ExactMatrix::zeros(a + b, b);
        i.set_block(a, 0, &ExactMatrix::identity(b));
        let mut p = ExactMatrix::zeros(a, a + b);
        p.set_block(0, 0, &ExactMatrix::identity(a));
        inject.push(i);
        project.push(p);
    }
    ShortExactSequence::new(c0, cone, c2, inject, project)
}

/// Result of comparing the long exact sequence of [`wang_sequence`] with the
/// Wang sequence.
#[derive(Clone, Debug)]
pub struct WangCheck {
    pub les: LongExactSequence,
    /// `H^q(C^{*-1}) = H^{q-1}(N; V)` and `H^q(C^*) = H^q(N; V)` in every degree.
    pub dims_match: bool,
    /// Every connecting map equals `Phi^* - 1` on `H^q(N; V)`.
    pub connecting_matches: bool,
}

impl WangCheck {
    pub fn holds(&self) -> bool {
        self.dims_match && self.connecting_matches
    }
}

pub fn check_wang(m: &CellularSelfMap, rho: &MonodromyRep) -> Result<WangCheck> {
    let s = wang_sequence(m, rho)?;
    let les = long_exact_sequence(&s)?;
    let c = twisted(&m.domain, rho.dim())?;
    let hdims = c.cohomology_dims();
    let n = c.degrees();
    let h = les.complex.dims();
    let dims_match = (0..=n).all(|q| {
        let below = if q == 0 { 0 } else { hdims[q - 1] };
        let here = hdims.get(q).copied().unwrap_or(0);
        h[3 * q] == below && h[3 * q + 2] == here
    });
    let induced = induced_maps(&c, &twisted_comap(m, rho))?;
    let mut connecting_matches = true;
    for (q, f) in induced.iter().enumerate() {
        let expected = f.checked_sub(&ExactMatrix::identity(hdims[q]))?;
        if les.complex.diffs()[3 * q + 2] != expected {
            connecting_matches = false;
        }
    }
    Ok(WangCheck {
        les,
        dims_match,
        connecting_matches,
    })
}

fn twisted_comap(m: &CellularSelfMap, rho: &MonodromyRep) -> Vec<ExactMatrix> {
    m.comap.iter().map(|f| f.kron(&rho.w)).collect()
}

fn induced_maps(c: &CochainComplex, comap: &[ExactMatrix]) -> Result<Vec<ExactMatrix>> {
    let coh = c.cohomology();
    let mut out = Vec::with_capacity(c.degrees());
    for (q, f) in comap.iter().enumerate() {
        let cols = coh.bases.0[q]
            .iter()
            .map(|h| coh.class_coordinates(q, &f.mul_vec(h)?))
            .collect::<Result<Vec<_>>>()?;
        out.push(ExactMatrix::from_columns(coh.dims[q], &cols)?);
    }
    Ok(out)
}

/// Matrices of `phi^*` on the rational cohomology of the domain, in its
/// echelon cohomology bases.
pub fn induced_on_cohomology(m: &CellularSelfMap) -> Result<Vec<ExactMatrix>> {
    induced_maps(&m.domain, &m.comap)
}

/// `P^k = det(phi^*_k (x) w - 1)`, one per degree.
pub fn lefschetz_factors(hmaps: &[ExactMatrix], rho: &MonodromyRep) -> Result<Vec<FieldElement>> {
    hmaps
        .iter()
        .map(|f| {
            let big = f.kron(&rho.w);
            big.checked_sub(&ExactMatrix::identity(big.rows()))?.det()
        })
        .collect()
}

/// `prod_even P^k / prod_odd P^k`.
pub fn lefschetz_zeta(hmaps: &[ExactMatrix], rho: &MonodromyRep) -> Result<FieldElement> {
    let factors = lefschetz_factors(hmaps, rho)?;
    if factors.iter().any(FieldElement::is_zero) {
        let dims = hmaps
            .iter()
            .map(|f| {
                let big = f.kron(&rho.w);
                big.checked_sub(&ExactMatrix::identity(big.rows()))
                    .map(|m| m.kernel_basis().len())
            })
            .collect::<Result<Vec<_>>>()?;
        return Err(Error::NotAcyclic { dims });
    }
    let mut zeta = FieldElement::one();
    for (k, p) in factors.iter().enumerate() {
        zeta = if k % 2 == 0 {
            &zeta * p
        } else {
            zeta.checked_div(p)?
        };
    }
    Ok(zeta)
}

/// `sum_q dim H^q * dim ker(phi^*_q - 1)`.
pub fn z_phi(hmaps: &[ExactMatrix]) -> usize {
    hmaps
        .iter()
        .map(|f| {
            let fixed = f
                .checked_sub(&ExactMatrix::identity(f.rows()))
                .map(|m| m.kernel_basis().len())
                .unwrap_or(0);
            f.rows() * fixed
        })
        .sum()
}

/// A unit `sign * base^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unit {
    pub sign: i8,
    pub exponent: i32,
}

impl Unit {
    pub fn value(&self, base: &FieldElement) -> Result<FieldElement> {
        let v = base.pow(self.exponent)?;
        Ok(if self.sign < 0 { -v } else { v })
    }
}

const MAX_UNIT_EXPONENT: i32 = 32;

/// Finds `ratio = sign * base^m` with `|m| <= 32`.
pub fn match_unit(ratio: &FieldElement, base: &FieldElement) -> Result<Option<Unit>> {
    for sign in [1i8, -1] {
        let target = if sign < 0 {
            -ratio.clone()
        } else {
            ratio.clone()
        };
        if target.is_one() {
            return Ok(Some(Unit { sign, exponent: 0 }));
        }
        if base.is_one() || base == &FieldElement::from_int(-1) {
            continue;
        }
        for m in (1..=MAX_UNIT_EXPONENT).flat_map(|m| [m, -m]) {
            if base.pow(m)? == target {
                return Ok(Some(Unit { sign, exponent: m }));
            }
        }
    }
    Ok(None)
}

/// Torsion of the cone normalized like the torsion of a cell complex:
/// inverse of the cone torsion times `(s * sign)^{dim V}`, where `s` is the
/// sign of the rational torsion of the untwisted cone in `bases`.
pub fn cone_torsion(
    m: &CellularSelfMap,
    rho: &MonodromyRep,
    bases: &GradedBases,
    sign: i8,
) -> Result<FieldElement> {
    let cone = mapping_cone_complex(m, rho)?;
    let value = cone.torsion_acyclic()?.inv()?;
    let untwisted = mapping_cone_complex(m, &MonodromyRep::new(ExactMatrix::identity(1))?)?;
    let s = untwisted
        .torsion(bases)?
        .real_sign()
        .ok_or_else(|| Error::Internal("rational torsion without sign".into()))?;
    Ok(if s * sign < 0 && rho.dim() % 2 == 1 {
        -value
    } else {
        value
    })
}

/// Echelon cohomology bases of the untwisted cone.
pub fn standard_cone_orientation(m: &CellularSelfMap) -> Result<GradedBases> {
    let untwisted = mapping_cone_complex(m, &MonodromyRep::new(ExactMatrix::identity(1))?)?;
    Ok(untwisted.cohomology().bases)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SweepOutcome {
    /// The ratio at the point equals the unit at the point.
    Agrees,
    Disagrees,
    /// The point is a pole of either side or the specialized cone is not acyclic.
    Skipped,
}

#[derive(Clone, Debug)]
pub struct MaptorReport {
    pub cone_value: FieldElement,
    pub zeta_value: FieldElement,
    pub z_phi: usize,
    pub ratio: FieldElement,
    pub unit: Option<Unit>,
    pub sweep: Vec<(Scalar, SweepOutcome)>,
}

impl MaptorReport {
    pub fn passes(&self) -> bool {
        self.unit.is_some()
            && self
                .sweep
                .iter()
                .all(|(_, o)| *o != SweepOutcome::Disagrees)
    }
}

/// Default specialization points for the sweep.
pub fn default_sweep_points() -> Vec<Scalar> {
    vec![
        Scalar::from_int(2),
        Scalar::from_int(3),
        Scalar::from_frac(-1, 2),
        Scalar::from_frac(5, 3),
        Scalar::gaussian(1, 1),
        Scalar::gaussian(2, -1),
        Scalar::i(),
        Scalar::from_int(-3),
    ]
}

fn zeta_side(rho: &MonodromyRep, hmaps: &[ExactMatrix]) -> Result<(FieldElement, usize)> {
    let z = z_phi(hmaps);
    let zeta = lefschetz_zeta(hmaps, rho)?;
    let negate = (rho.dim() * z) % 2 == 1;
    Ok((if negate { -zeta } else { zeta }, z))
}

/// Compares the normalized cone torsion with `(-1)^{dim V z_phi} zeta_phi(rho)`
/// over the field and at each sweep point.
pub fn verify_maptor(
    m: &CellularSelfMap,
    rho: &MonodromyRep,
    orientation: &GradedBases,
    sign: i8,
    points: &[Scalar],
    exec: Execution,
) -> Result<MaptorReport> {
    let hmaps = induced_on_cohomology(m)?;
    let cone_value = cone_torsion(m, rho, orientation, sign)?;
    let (zeta_value, z) = zeta_side(rho, &hmaps)?;
    let ratio = cone_value.checked_div(&zeta_value)?;
    let det_w = rho.w.det()?;
    let unit = match_unit(&ratio, &det_w)?;
    let sweep = par::map(points, exec, |p| {
        let outcome = (|| -> Result<SweepOutcome> {
            let Some(u) = &unit else {
                return Ok(SweepOutcome::Disagrees);
            };
            let local = rho.evaluate_at(p)?;
            let cone = cone_torsion(m, &local, orientation, sign)?;
            let (zeta, _) = zeta_side(&local, &hmaps)?;
            let expected = u.value(&det_w)?.evaluate_at(p)?;
            Ok(if cone.checked_div(&zeta)? == expected {
                SweepOutcome::Agrees
            } else {
                SweepOutcome::Disagrees
            })
        })();
        let outcome = match outcome {
            Ok(o) => o,
            Err(
                Error::NotAcyclic { .. }
                | Error::Pole { .. }
                | Error::Validation(_)
                | Error::DivisionByZero,
            ) => SweepOutcome::Skipped,
            Err(_) => SweepOutcome::Disagrees,
        };
        (p.clone(), outcome)
    });
    Ok(MaptorReport {
        cone_value,
        zeta_value,
        z_phi: z,
        ratio,
        unit,
        sweep,
    })
}
