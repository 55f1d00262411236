//! Finite presentations and their linear representations.

use super::word::{is_identifier, GroupRingElement, Word};
use crate::error::{Error, Result};
use crate::exactfield::{ExactMatrix, FieldElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relations: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relations: Vec<Word>) -> Result<Self> {
        for (k, g) in generators.iter().enumerate() {
            if !is_identifier(g) {
                return Err(Error::Validation(format!("bad generator name `{g}`")));
            }
            if generators[..k].contains(g) {
                return Err(Error::Validation(format!("generator `{g}` declared twice")));
            }
        }
        let p = GroupPresentation {
            generators,
            relations,
        };
        for r in &p.relations {
            p.check_word(r)?;
        }
        Ok(p)
    }

    pub fn free(generators: &[&str]) -> Result<Self> {
        GroupPresentation::new(
            generators.iter().map(|g| g.to_string()).collect(),
            Vec::new(),
        )
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relations(&self) -> &[Word] {
        &self.relations
    }

    pub fn index_of(&self, generator: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == generator)
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w
            .letters()
            .iter()
            .find(|l| self.index_of(&l.generator).is_none())
        {
            Some(l) => Err(Error::Validation(format!(
                "undeclared generator `{}` in `{w}`",
                l.generator
            ))),
            None => Ok(()),
        }
    }
}

/// A representation given by one invertible matrix per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    presentation: GroupPresentation,
    images: Vec<ExactMatrix>,
    inverses: Vec<ExactMatrix>,
}

impl Representation {
    /// Checks sizes and invertibility; relations are checked by [`Self::validate`].
    pub fn new(presentation: GroupPresentation, images: Vec<ExactMatrix>) -> Result<Self> {
        if images.len() != presentation.generators().len() {
            return Err(Error::Shape(format!(
                "{} generator images for {} generators",
                images.len(),
                presentation.generators().len()
            )));
        }
        let dim = images.first().map_or(0, ExactMatrix::rows);
        let mut inverses = Vec::with_capacity(images.len());
        for (g, m) in presentation.generators().iter().zip(&images) {
            if !m.is_square() || m.rows() != dim {
                return Err(Error::Shape(format!("image of `{g}` is not {dim}x{dim}")));
            }
            inverses.push(
                m.inverse()
                    .map_err(|_| Error::Validation(format!("image of `{g}` is singular")))?,
            );
        }
        Ok(Representation {
            presentation,
            images,
            inverses,
        })
    }

    /// One-dimensional representation sending every generator to 1.
    pub fn trivial(presentation: GroupPresentation) -> Self {
        let n = presentation.generators().len();
        let images = vec![ExactMatrix::identity(1); n];
        Representation {
            presentation,
            inverses: images.clone(),
            images,
        }
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    pub fn images(&self) -> &[ExactMatrix] {
        &self.images
    }

    /// `dim V`; zero when there are no generators.
    pub fn dim(&self) -> usize {
        self.images.first().map_or(0, ExactMatrix::rows)
    }

    /// Checks that every relation evaluates to the identity; the error names
    /// the first failing relation.
    pub fn validate(&self) -> Result<()> {
        let id = ExactMatrix::identity(self.dim());
        for r in self.presentation.relations() {
            if self.evaluate_word(r)? != id {
                return Err(Error::Validation(format!(
                    "relation `{r}` does not map to the identity"
                )));
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Product of generator images in word order.
    pub fn evaluate_word(&self, w: &Word) -> Result<ExactMatrix> {
        let mut acc = ExactMatrix::identity(self.dim());
        for l in w.letters() {
            let k = self.presentation.index_of(&l.generator).ok_or_else(|| {
                Error::Validation(format!("undeclared generator `{}`", l.generator))
            })?;
            let m = if l.inverse {
                &self.inverses[k]
            } else {
                &self.images[k]
            };
            acc = acc.checked_mul(m)?;
        }
        Ok(acc)
    }

    /// Extension of the representation to the group ring.
    pub fn evaluate(&self, x: &GroupRingElement) -> Result<ExactMatrix> {
        let mut acc = ExactMatrix::zeros(self.dim(), self.dim());
        for (c, w) in x.terms() {
            acc = acc.checked_add(&self.evaluate_word(w)?.scale(&FieldElement::from_int(*c)))?;
        }
        Ok(acc)
    }

    /// `det rho(w)`, the value of `det . rho` on the class of `w`.
    pub fn det_of_word(&self, w: &Word) -> Result<FieldElement> {
        self.evaluate_word(w)?.det()
    }
}
