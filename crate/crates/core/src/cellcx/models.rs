//! Small cell complexes used in examples and tests.

use super::word::{fox_derivative, GroupRingElement, Word};
use super::{EquivariantCellComplex, GroupPresentation, GroupRingMatrix};
use crate::error::{Error, Result};

fn gen(name: &str) -> GroupRingElement {
    GroupRingElement::from_word(Word::generator(name))
}

/// `<g | >`.
pub fn circle_group() -> GroupPresentation {
    GroupPresentation::free(&["g"]).expect("valid presentation")
}

/// The circle with `n >= 1` vertices and `n` edges: `e_j` runs from `v_j` to
/// `v_{j+1}` and the last edge closes up through the generator `g`. Lifts
/// are trivial, which is the spanning-tree normalization along `e_0 .. e_{n-2}`.
pub fn circle(n: usize) -> Result<EquivariantCellComplex> {
    if n == 0 {
        return Err(Error::Validation(
            "a circle needs at least one vertex".into(),
        ));
    }
    let one = GroupRingElement::one();
    let mut b = GroupRingMatrix::zeros(n, n);
    for j in 0..n {
        let next = (j + 1) % n;
        let head = if j + 1 == n { gen("g") } else { one.clone() };
        if next == j {
            b.set(j, j, head.sub(&one));
        } else {
            b.set(next, j, head);
            b.set(j, j, one.neg());
        }
    }
    EquivariantCellComplex::with_trivial_lifts(vec![n, n], vec![b])
}

/// `<a, b | a b a^-1 b^-1>`.
pub fn torus_group() -> GroupPresentation {
    GroupPresentation::new(
        vec!["a".into(), "b".into()],
        vec![Word::parse("a b a^-1 b^-1").expect("word")],
    )
    .expect("valid presentation")
}

/// `<a, b | a b a b^-1>`.
pub fn klein_group() -> GroupPresentation {
    GroupPresentation::new(
        vec!["a".into(), "b".into()],
        vec![Word::parse("a b a b^-1").expect("word")],
    )
    .expect("valid presentation")
}

/// One vertex, one edge per generator with boundary `(x - 1) v`, one 2-cell
/// per relation with boundary given by the Fox derivatives.
pub fn presentation_complex(p: &GroupPresentation) -> Result<EquivariantCellComplex> {
    let gens = p.generators();
    let rels = p.relations();
    let mut edges = GroupRingMatrix::zeros(1, gens.len());
    for (j, g) in gens.iter().enumerate() {
        edges.set(0, j, gen(g).sub(&GroupRingElement::one()));
    }
    if rels.is_empty() {
        return EquivariantCellComplex::with_trivial_lifts(vec![1, gens.len()], vec![edges]);
    }
    let mut faces = GroupRingMatrix::zeros(gens.len(), rels.len());
    for (k, r) in rels.iter().enumerate() {
        for (j, g) in gens.iter().enumerate() {
            faces.set(j, k, fox_derivative(r, g));
        }
    }
    EquivariantCellComplex::with_trivial_lifts(vec![1, gens.len(), rels.len()], vec![edges, faces])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellcx::Representation;
    use crate::exactfield::{ExactMatrix, FieldElement};

    #[test]
    fn circles_are_circles() {
        for n in 1..5 {
            let x = circle(n).unwrap();
            assert_eq!(x.euler_characteristic(), 0);
            let c = x.untwisted_cochain().unwrap();
            assert_eq!(c.cohomology_dims(), vec![1, 1]);
        }
    }

    #[test]
    fn presentation_complexes_square_to_zero() {
        let t = FieldElement::var();
        let r = Representation::new(
            torus_group(),
            vec![
                ExactMatrix::new(1, 1, vec![t.clone()]).unwrap(),
                ExactMatrix::from_ints(1, 1, &[2]),
            ],
        )
        .unwrap();
        let x = presentation_complex(&torus_group()).unwrap();
        let c = x.twisted_cochain(&r).unwrap();
        assert!(c.is_acyclic());
        assert_eq!(
            x.untwisted_cochain().unwrap().cohomology_dims(),
            vec![1, 2, 1]
        );

        let r = Representation::new(
            klein_group(),
            vec![
                ExactMatrix::from_ints(1, 1, &[-1]),
                ExactMatrix::new(1, 1, vec![t]).unwrap(),
            ],
        )
        .unwrap();
        let x = presentation_complex(&klein_group()).unwrap();
        assert!(x.twisted_cochain(&r).unwrap().is_acyclic());
    }
}
