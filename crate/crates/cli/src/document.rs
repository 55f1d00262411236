//! The `torsionlab-v1` job document.
//!
//! ```text
//! torsionlab-v1
//!
//! [field]
//! base = rationals
//! variable = t
//!
//! [complex]
//! dims = [1, 1]
//! d0 = [[-1, 1]]
//! ```
//!
//! After the header line come `[section]` blocks of `key = value` lines;
//! lines starting with `#` are comments. Matrices are row-major element
//! lists, vectors lists are lists of element lists, group ring elements are
//! term lists `[{coef, word}, ...]`. Sections: `field` (required), `group`,
//! `representation`, exactly one payload among `complex`, `cellcomplex`,
//! `sequence` and `mappingtorus`, then `hbases`, `orientation` and `params`.
//! [`JobDocument::to_text`] writes the canonical form: sections in that
//! order, one blank line between them, every key present.

use std::fmt::Write as _;

use torsionlab::cellcx::{
    EquivariantCellComplex, GroupPresentation, GroupRingElement, GroupRingMatrix, Modulus,
    Representation, Word,
};
use torsionlab::complexes::{CochainComplex, GradedBases, ShortExactSequence};
use torsionlab::exactfield::literal::{
    format_element_list, list_items, parse_element, parse_scalar, split_top_level,
};
use torsionlab::maptorus::{CellularSelfMap, MonodromyRep};
use torsionlab::{BaseField, ExactMatrix, FieldDescriptor, FieldElement, Scalar, Vector};

use crate::error::{CliError, CliResult};

pub const HEADER: &str = "torsionlab-v1";

const SECTIONS: [&str; 10] = [
    "field",
    "group",
    "representation",
    "complex",
    "cellcomplex",
    "sequence",
    "mappingtorus",
    "hbases",
    "orientation",
    "params",
];

const PAYLOADS: [&str; 4] = ["complex", "cellcomplex", "sequence", "mappingtorus"];

#[derive(Clone, Debug)]
struct Entry {
    key: String,
    value: String,
    line: usize,
}

#[derive(Clone, Debug)]
struct Section {
    name: String,
    line: usize,
    entries: Vec<Entry>,
}

impl Section {
    fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    fn require(&self, key: &str) -> CliResult<&Entry> {
        self.get(key).ok_or_else(|| {
            CliError::validation(format!("[{}] is missing `{key}`", self.name)).at_line(self.line)
        })
    }

    fn allow_only(&self, keys: &[String]) -> CliResult<()> {
        match self.entries.iter().find(|e| !keys.contains(&e.key)) {
            Some(e) => Err(CliError::validation(format!(
                "unknown key `{}` in [{}]",
                e.key, self.name
            ))
            .at_line(e.line)),
            None => Ok(()),
        }
    }
}

fn split_sections(text: &str) -> CliResult<Vec<Section>> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim()));
    let header = lines
        .by_ref()
        .find(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match header {
        Some((_, HEADER)) => {}
        Some((n, l)) => {
            return Err(CliError::parse(
                n,
                format!("expected header `{HEADER}`, found `{l}`"),
            ))
        }
        None => {
            return Err(CliError::parse(
                1,
                format!("empty document, expected header `{HEADER}`"),
            ))
        }
    }
    let mut sections: Vec<Section> = Vec::new();
    for (n, l) in lines {
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        if let Some(name) = l.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let name = name.trim();
            if !SECTIONS.contains(&name) {
                return Err(CliError::parse(n, format!("unknown section [{name}]")));
            }
            if sections.iter().any(|s| s.name == name) {
                return Err(CliError::parse(n, format!("duplicate section [{name}]")));
            }
            sections.push(Section {
                name: name.to_string(),
                line: n,
                entries: Vec::new(),
            });
            continue;
        }
        let Some((key, value)) = l.split_once('=') else {
            return Err(CliError::parse(
                n,
                format!("expected `key = value`, found `{l}`"),
            ));
        };
        let Some(section) = sections.last_mut() else {
            return Err(CliError::parse(n, "entry before the first section"));
        };
        let key = key.trim();
        if section.get(key).is_some() {
            return Err(CliError::parse(
                n,
                format!("duplicate key `{key}` in [{}]", section.name),
            ));
        }
        section.entries.push(Entry {
            key: key.to_string(),
            value: value.trim().to_string(),
            line: n,
        });
    }
    Ok(sections)
}

fn lit<T>(e: &Entry, r: torsionlab::Result<T>) -> CliResult<T> {
    r.map_err(|err| CliError::from(err).at_line(e.line))
}

fn items(e: &Entry) -> CliResult<Vec<&str>> {
    lit(e, list_items(&e.value))
}

fn usize_list(e: &Entry) -> CliResult<Vec<usize>> {
    items(e)?
        .into_iter()
        .map(|s| {
            s.parse().map_err(|_| {
                CliError::parse(e.line, format!("expected a nonnegative integer, got `{s}`"))
            })
        })
        .collect()
}

fn element(e: &Entry, s: &str, field: &FieldDescriptor) -> CliResult<FieldElement> {
    let x = lit(e, parse_element(s))?;
    if !field.contains(&x) {
        return Err(
            CliError::validation(format!("`{s}` is not an element of the declared field"))
                .at_line(e.line),
        );
    }
    Ok(x)
}

fn elements(e: &Entry, field: &FieldDescriptor) -> CliResult<Vec<FieldElement>> {
    items(e)?
        .into_iter()
        .map(|s| element(e, s, field))
        .collect()
}

fn matrix(e: &Entry, rows: usize, cols: usize, field: &FieldDescriptor) -> CliResult<ExactMatrix> {
    let xs = elements(e, field)?;
    if xs.len() != rows * cols {
        return Err(CliError::validation(format!(
            "`{}` has {} entries, expected {rows}x{cols}",
            e.key,
            xs.len()
        ))
        .at_line(e.line));
    }
    lit(e, ExactMatrix::new(rows, cols, xs))
}

fn square_matrix(e: &Entry, field: &FieldDescriptor) -> CliResult<ExactMatrix> {
    let xs = elements(e, field)?;
    let n = (0..=xs.len()).find(|n| n * n >= xs.len()).unwrap_or(0);
    if n * n != xs.len() || n == 0 {
        return Err(CliError::validation(format!(
            "`{}` is not a square matrix ({} entries)",
            e.key,
            xs.len()
        ))
        .at_line(e.line));
    }
    lit(e, ExactMatrix::new(n, n, xs))
}

fn vectors(e: &Entry, len: usize, field: &FieldDescriptor) -> CliResult<Vec<Vector>> {
    let mut out = Vec::new();
    for v in items(e)? {
        let xs: Vec<FieldElement> = lit(e, list_items(v))?
            .into_iter()
            .map(|s| element(e, s, field))
            .collect::<CliResult<_>>()?;
        if xs.len() != len {
            return Err(CliError::validation(format!(
                "vector `{v}` has length {}, expected {len}",
                xs.len()
            ))
            .at_line(e.line));
        }
        out.push(xs);
    }
    Ok(out)
}

fn word(e: &Entry, s: &str) -> CliResult<Word> {
    lit(e, Word::parse(s))
}

fn group_ring_element(e: &Entry, s: &str) -> CliResult<GroupRingElement> {
    let mut terms = Vec::new();
    for t in lit(e, list_items(s))? {
        let inner = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| {
                CliError::parse(
                    e.line,
                    format!("expected a term `{{coef, word}}`, got `{t}`"),
                )
            })?;
        let parts = lit(e, split_top_level(inner, ','))?;
        let [coef, w] = parts.as_slice() else {
            return Err(CliError::parse(
                e.line,
                format!("expected a term `{{coef, word}}`, got `{t}`"),
            ));
        };
        let coef: i64 = coef.trim().parse().map_err(|_| {
            CliError::parse(
                e.line,
                format!("expected an integer coefficient, got `{}`", coef.trim()),
            )
        })?;
        terms.push((coef, word(e, w.trim())?));
    }
    Ok(GroupRingElement::new(terms))
}

/// Orientation of the untwisted cohomology: representatives (echelon ones if
/// absent) and a sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationSpec {
    pub sign: i8,
    pub bases: Option<GradedBases>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub at: Option<Scalar>,
    pub modulus: Option<Modulus>,
    pub points: Option<Vec<Scalar>>,
}

pub fn parse_modulus(s: &str) -> Option<Modulus> {
    match s {
        "pi" => Some(Modulus::Pi),
        "2pi" => Some(Modulus::TwoPi),
        _ => None,
    }
}

pub fn modulus_name(m: Modulus) -> &'static str {
    match m {
        Modulus::Pi => "pi",
        Modulus::TwoPi => "2pi",
    }
}

#[derive(Clone, Debug)]
pub enum Payload {
    Complex(CochainComplex),
    CellComplex(EquivariantCellComplex),
    Sequence(ShortExactSequence),
    MappingTorus(CellularSelfMap, MonodromyRep),
}

impl Payload {
    pub fn section_name(&self) -> &'static str {
        match self {
            Payload::Complex(_) => "complex",
            Payload::CellComplex(_) => "cellcomplex",
            Payload::Sequence(_) => "sequence",
            Payload::MappingTorus(..) => "mappingtorus",
        }
    }
}

#[derive(Clone, Debug)]
pub struct JobDocument {
    pub field: FieldDescriptor,
    pub group: Option<GroupPresentation>,
    pub representation: Option<Representation>,
    pub payload: Payload,
    pub hbases: Option<GradedBases>,
    pub orientation: Option<OrientationSpec>,
    pub params: Params,
}

fn parse_field(s: &Section) -> CliResult<FieldDescriptor> {
    s.allow_only(&["base".into(), "variable".into()])?;
    let base = s.require("base")?;
    let base_field = match base.value.as_str() {
        "rationals" => BaseField::Rationals,
        "gaussian-rationals" => BaseField::GaussianRationals,
        other => {
            return Err(CliError::validation(format!(
                "unknown base field `{other}`, expected `rationals` or `gaussian-rationals`"
            ))
            .at_line(base.line))
        }
    };
    Ok(match s.get("variable") {
        Some(v) => {
            let ok = v
                .value
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic())
                && v.value
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok || v.value == "i" {
                return Err(
                    CliError::validation(format!("invalid variable name `{}`", v.value))
                        .at_line(v.line),
                );
            }
            FieldDescriptor::rational_functions(base_field, v.value.clone())
        }
        None => FieldDescriptor {
            base: base_field,
            variable: None,
        },
    })
}

fn parse_group(s: &Section) -> CliResult<GroupPresentation> {
    s.allow_only(&["generators".into(), "relations".into()])?;
    let g = s.require("generators")?;
    let gens: Vec<String> = items(g)?.into_iter().map(str::to_string).collect();
    let relations = match s.get("relations") {
        Some(r) => items(r)?
            .into_iter()
            .map(|w| word(r, w))
            .collect::<CliResult<_>>()?,
        None => Vec::new(),
    };
    lit(g, GroupPresentation::new(gens, relations))
}

fn parse_representation(
    s: &Section,
    group: &GroupPresentation,
    field: &FieldDescriptor,
) -> CliResult<Representation> {
    let names: Vec<String> = group.generators().to_vec();
    s.allow_only(&names)?;
    let images = names
        .iter()
        .map(|g| square_matrix(s.require(g)?, field))
        .collect::<CliResult<Vec<_>>>()?;
    let r = Representation::new(group.clone(), images)
        .map_err(|e| CliError::from(e).at_line(s.line))?;
    r.validate()
        .map_err(|e| CliError::from(e).at_line(s.line))?;
    Ok(r)
}

fn parse_complex(
    s: &Section,
    prefix: &str,
    field: &FieldDescriptor,
) -> CliResult<(CochainComplex, Vec<String>)> {
    let dims_key = format!("{prefix}dims");
    let dims = usize_list(s.require(&dims_key)?)?;
    if dims.is_empty() {
        return Err(CliError::validation(format!("`{dims_key}` is empty"))
            .at_line(s.require(&dims_key)?.line));
    }
    let mut keys = vec![dims_key];
    let mut diffs = Vec::new();
    for q in 0..dims.len() - 1 {
        let key = format!("{prefix}d{q}");
        diffs.push(matrix(s.require(&key)?, dims[q + 1], dims[q], field)?);
        keys.push(key);
    }
    let c = CochainComplex::new(dims, diffs).map_err(|e| CliError::from(e).at_line(s.line))?;
    Ok((c, keys))
}

fn parse_cellcomplex(
    s: &Section,
    group: Option<&GroupPresentation>,
) -> CliResult<EquivariantCellComplex> {
    let cells = usize_list(s.require("cells")?)?;
    if cells.is_empty() {
        return Err(CliError::validation("`cells` is empty").at_line(s.line));
    }
    let mut keys = vec!["cells".to_string(), "ordering".to_string()];
    let check = |e: &Entry, w: &Word| -> CliResult<()> {
        match group {
            Some(g) => lit(e, g.check_word(w)),
            None => Ok(()),
        }
    };
    let mut boundaries = Vec::new();
    for q in 1..cells.len() {
        let key = format!("boundary{q}");
        let e = s.require(&key)?;
        let (rows, cols) = (cells[q - 1], cells[q]);
        let entries = items(e)?
            .into_iter()
            .map(|x| group_ring_element(e, x))
            .collect::<CliResult<Vec<_>>>()?;
        for x in &entries {
            for (_, w) in x.terms() {
                check(e, w)?;
            }
        }
        if entries.len() != rows * cols {
            return Err(CliError::validation(format!(
                "`{key}` has {} entries, expected {rows}x{cols}",
                entries.len()
            ))
            .at_line(e.line));
        }
        boundaries.push(lit(e, GroupRingMatrix::new(rows, cols, entries))?);
        keys.push(key);
    }
    let mut lifts = Vec::new();
    for (q, &n) in cells.iter().enumerate() {
        let key = format!("lifts{q}");
        let ws = match s.get(&key) {
            Some(e) => {
                let ws = items(e)?
                    .into_iter()
                    .map(|w| word(e, w))
                    .collect::<CliResult<Vec<_>>>()?;
                for w in &ws {
                    check(e, w)?;
                }
                ws
            }
            None => vec![Word::identity(); n],
        };
        lifts.push(ws);
        keys.push(key);
    }
    let ordering = match s.get("ordering") {
        Some(e) => usize_list(e)?,
        None => (0..cells.iter().sum()).collect(),
    };
    s.allow_only(&keys)?;
    EquivariantCellComplex::new(cells, boundaries, lifts, ordering)
        .map_err(|e| CliError::from(e).at_line(s.line))
}

fn parse_sequence(s: &Section, field: &FieldDescriptor) -> CliResult<ShortExactSequence> {
    let (c0, mut keys) = parse_complex(s, "c0.", field)?;
    let (c1, k1) = parse_complex(s, "c1.", field)?;
    let (c2, k2) = parse_complex(s, "c2.", field)?;
    keys.extend(k1);
    keys.extend(k2);
    let n = c1.degrees();
    if c0.degrees() != n || c2.degrees() != n {
        return Err(
            CliError::validation("c0, c1 and c2 must have the same number of degrees")
                .at_line(s.line),
        );
    }
    let (mut inject, mut project) = (Vec::new(), Vec::new());
    for q in 0..n {
        let (ki, kp) = (format!("inject{q}"), format!("project{q}"));
        inject.push(matrix(s.require(&ki)?, c1.dims()[q], c0.dims()[q], field)?);
        project.push(matrix(s.require(&kp)?, c2.dims()[q], c1.dims()[q], field)?);
        keys.push(ki);
        keys.push(kp);
    }
    s.allow_only(&keys)?;
    ShortExactSequence::new(c0, c1, c2, inject, project)
        .map_err(|e| CliError::from(e).at_line(s.line))
}

fn parse_mappingtorus(
    s: &Section,
    field: &FieldDescriptor,
) -> CliResult<(CellularSelfMap, MonodromyRep)> {
    let (c, mut keys) = parse_complex(s, "", field)?;
    let mut comap = Vec::new();
    for (q, &k) in c.dims().iter().enumerate() {
        let key = format!("map{q}");
        comap.push(matrix(s.require(&key)?, k, k, field)?);
        keys.push(key);
    }
    keys.push("monodromy".into());
    s.allow_only(&keys)?;
    let m = CellularSelfMap::new(c, comap).map_err(|e| CliError::from(e).at_line(s.line))?;
    let rho = match s.get("monodromy") {
        Some(e) => lit(e, MonodromyRep::new(square_matrix(e, field)?))?,
        None if field.has_variable() => MonodromyRep::generic(),
        None => {
            return Err(CliError::validation(
                "[mappingtorus] needs `monodromy` when the field has no variable",
            )
            .at_line(s.line))
        }
    };
    Ok((m, rho))
}

fn parse_bases(
    s: &Section,
    dims: &[usize],
    field: &FieldDescriptor,
    extra: &[&str],
) -> CliResult<GradedBases> {
    let mut keys: Vec<String> = extra.iter().map(|k| k.to_string()).collect();
    let mut bases = Vec::new();
    for (q, &k) in dims.iter().enumerate() {
        let key = format!("h{q}");
        bases.push(match s.get(&key) {
            Some(e) => vectors(e, k, field)?,
            None => Vec::new(),
        });
        keys.push(key);
    }
    s.allow_only(&keys)?;
    Ok(GradedBases(bases))
}

fn parse_params(s: &Section) -> CliResult<Params> {
    s.allow_only(&["at".into(), "modulus".into(), "points".into()])?;
    let mut p = Params::default();
    if let Some(e) = s.get("at") {
        p.at = Some(lit(e, parse_scalar(&e.value))?);
    }
    if let Some(e) = s.get("modulus") {
        p.modulus = Some(parse_modulus(&e.value).ok_or_else(|| {
            CliError::validation(format!("modulus must be `pi` or `2pi`, got `{}`", e.value))
                .at_line(e.line)
        })?);
    }
    if let Some(e) = s.get("points") {
        p.points = Some(
            items(e)?
                .into_iter()
                .map(|x| lit(e, parse_scalar(x)))
                .collect::<CliResult<_>>()?,
        );
    }
    Ok(p)
}

impl JobDocument {
    pub fn parse(text: &str) -> CliResult<JobDocument> {
        let sections = split_sections(text)?;
        let find = |name: &str| sections.iter().find(|s| s.name == name);
        let field = parse_field(
            find("field").ok_or_else(|| CliError::validation("missing [field] section"))?,
        )?;
        let group = find("group").map(parse_group).transpose()?;
        let representation = match (find("representation"), &group) {
            (Some(s), Some(g)) => Some(parse_representation(s, g, &field)?),
            (Some(s), None) => {
                return Err(
                    CliError::validation("[representation] needs a [group] section")
                        .at_line(s.line),
                )
            }
            (None, _) => None,
        };
        let payloads: Vec<&Section> = sections
            .iter()
            .filter(|s| PAYLOADS.contains(&s.name.as_str()))
            .collect();
        let payload_section = match payloads.as_slice() {
            [s] => *s,
            [] => {
                return Err(CliError::validation(
                    "no payload section (complex, cellcomplex, sequence or mappingtorus)",
                ))
            }
            [_, s, ..] => {
                return Err(CliError::validation("more than one payload section").at_line(s.line))
            }
        };
        let payload = match payload_section.name.as_str() {
            "complex" => {
                let (c, keys) = parse_complex(payload_section, "", &field)?;
                payload_section.allow_only(&keys)?;
                Payload::Complex(c)
            }
            "cellcomplex" => {
                Payload::CellComplex(parse_cellcomplex(payload_section, group.as_ref())?)
            }
            "sequence" => Payload::Sequence(parse_sequence(payload_section, &field)?),
            _ => {
                let (m, rho) = parse_mappingtorus(payload_section, &field)?;
                Payload::MappingTorus(m, rho)
            }
        };
        let hbases = match find("hbases") {
            Some(s) => {
                let Payload::Complex(c) = &payload else {
                    return Err(
                        CliError::validation("[hbases] applies to a [complex] payload")
                            .at_line(s.line),
                    );
                };
                Some(parse_bases(s, c.dims(), &field, &[])?)
            }
            None => None,
        };
        let orientation = match find("orientation") {
            Some(s) => {
                let dims = match &payload {
                    Payload::CellComplex(x) => x.cells().to_vec(),
                    Payload::MappingTorus(m, _) => {
                        let k = m.domain().dims();
                        (0..=k.len())
                            .map(|q| {
                                k.get(q).copied().unwrap_or(0) + if q > 0 { k[q - 1] } else { 0 }
                            })
                            .collect()
                    }
                    _ => {
                        return Err(CliError::validation(
                            "[orientation] applies to a [cellcomplex] or [mappingtorus] payload",
                        )
                        .at_line(s.line))
                    }
                };
                let sign_entry = s.get("sign");
                let sign = match sign_entry.map(|e| (e, e.value.as_str())) {
                    None | Some((_, "1")) => 1,
                    Some((_, "-1")) => -1,
                    Some((e, v)) => {
                        return Err(CliError::validation(format!(
                            "orientation sign must be 1 or -1, got `{v}`"
                        ))
                        .at_line(e.line))
                    }
                };
                let has_bases = s.entries.iter().any(|e| e.key != "sign");
                let bases = parse_bases(s, &dims, &FieldDescriptor::rationals(), &["sign"])?;
                Some(OrientationSpec {
                    sign,
                    bases: has_bases.then_some(bases),
                })
            }
            None => None,
        };
        let params = find("params")
            .map(parse_params)
            .transpose()?
            .unwrap_or_default();
        Ok(JobDocument {
            field,
            group,
            representation,
            payload,
            hbases,
            orientation,
            params,
        })
    }

    /// Canonical text form.
    pub fn to_text(&self) -> String {
        let mut out = format!("{HEADER}\n");
        let mut section = |name: &str, lines: Vec<(String, String)>| {
            write!(out, "\n[{name}]\n").expect("write to string");
            for (k, v) in lines {
                writeln!(out, "{k} = {v}").expect("write to string");
            }
        };
        let mut field = vec![("base".to_string(), self.field.base.name().to_string())];
        if let Some(v) = &self.field.variable {
            field.push(("variable".into(), v.clone()));
        }
        section("field", field);
        if let Some(g) = &self.group {
            section(
                "group",
                vec![
                    ("generators".into(), list(g.generators())),
                    ("relations".into(), list(g.relations())),
                ],
            );
        }
        if let Some(r) = &self.representation {
            let lines = r
                .presentation()
                .generators()
                .iter()
                .zip(r.images())
                .map(|(g, m)| (g.clone(), format_element_list(m.entries())))
                .collect();
            section("representation", lines);
        }
        section(self.payload.section_name(), payload_lines(&self.payload));
        if let Some(h) = &self.hbases {
            section("hbases", basis_lines(h));
        }
        if let Some(o) = &self.orientation {
            let mut lines = vec![("sign".to_string(), o.sign.to_string())];
            if let Some(b) = &o.bases {
                lines.extend(basis_lines(b));
            }
            section("orientation", lines);
        }
        let p = &self.params;
        let mut lines = Vec::new();
        if let Some(at) = &p.at {
            lines.push(("at".to_string(), at.to_string()));
        }
        if let Some(m) = p.modulus {
            lines.push(("modulus".to_string(), modulus_name(m).to_string()));
        }
        if let Some(points) = &p.points {
            lines.push(("points".to_string(), list(points)));
        }
        if !lines.is_empty() {
            section("params", lines);
        }
        out
    }
}

fn list<T: ToString>(xs: &[T]) -> String {
    let items: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("[{}]", items.join(", "))
}

fn vectors_text(vs: &[Vector]) -> String {
    let items: Vec<String> = vs.iter().map(|v| format_element_list(v)).collect();
    format!("[{}]", items.join(", "))
}

fn basis_lines(h: &GradedBases) -> Vec<(String, String)> {
    h.0.iter()
        .enumerate()
        .filter(|(_, b)| !b.is_empty())
        .map(|(q, b)| (format!("h{q}"), vectors_text(b)))
        .collect()
}

fn group_ring_text(x: &GroupRingElement) -> String {
    let terms: Vec<String> = x
        .terms()
        .iter()
        .map(|(c, w)| format!("{{{c}, {w}}}"))
        .collect();
    format!("[{}]", terms.join(", "))
}

fn complex_lines(prefix: &str, c: &CochainComplex) -> Vec<(String, String)> {
    let mut lines = vec![(format!("{prefix}dims"), list(c.dims()))];
    for (q, d) in c.diffs().iter().enumerate() {
        lines.push((format!("{prefix}d{q}"), format_element_list(d.entries())));
    }
    lines
}

fn payload_lines(p: &Payload) -> Vec<(String, String)> {
    match p {
        Payload::Complex(c) => complex_lines("", c),
        Payload::CellComplex(x) => {
            let mut lines = vec![("cells".to_string(), list(x.cells()))];
            for (k, b) in x.boundaries().iter().enumerate() {
                let entries: Vec<String> = b.entries().iter().map(group_ring_text).collect();
                lines.push((
                    format!("boundary{}", k + 1),
                    format!("[{}]", entries.join(", ")),
                ));
            }
            for (q, ws) in x.lifts().iter().enumerate() {
                lines.push((format!("lifts{q}"), list(ws)));
            }
            lines.push(("ordering".to_string(), list(x.ordering())));
            lines
        }
        Payload::Sequence(s) => {
            let mut lines = complex_lines("c0.", &s.c0);
            lines.extend(complex_lines("c1.", &s.c1));
            lines.extend(complex_lines("c2.", &s.c2));
            for q in 0..s.degrees() {
                lines.push((
                    format!("inject{q}"),
                    format_element_list(s.inject[q].entries()),
                ));
                lines.push((
                    format!("project{q}"),
                    format_element_list(s.project[q].entries()),
                ));
            }
            lines
        }
        Payload::MappingTorus(m, rho) => {
            let mut lines = complex_lines("", m.domain());
            for (q, f) in m.comap().iter().enumerate() {
                lines.push((format!("map{q}"), format_element_list(f.entries())));
            }
            lines.push((
                "monodromy".to_string(),
                format_element_list(rho.w().entries()),
            ));
            lines
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ErrorKind;

    const CIRCLE: &str = "torsionlab-v1

[field]
base = rationals
variable = t

[group]
generators = [g]
relations = []

[representation]
g = [[0, 1]]

[cellcomplex]
cells = [1, 1]
boundary1 = [[{-1, 1}, {1, g}]]
lifts0 = [1]
lifts1 = [1]
ordering = [0, 1]
";

    #[test]
    fn canonical_round_trip() {
        let doc = JobDocument::parse(CIRCLE).unwrap();
        assert_eq!(doc.to_text(), CIRCLE);
        assert!(matches!(doc.payload, Payload::CellComplex(_)));
    }

    #[test]
    fn comments_and_defaults_normalize() {
        let loose = "# a circle\ntorsionlab-v1\n[field]\nbase=rationals\nvariable=t\n[group]\ngenerators=[g]\n\
                     [representation]\ng=[[0,1]]\n[cellcomplex]\ncells=[1,1]\nboundary1=[[{1,g},{-1,1}]]\n";
        assert_eq!(JobDocument::parse(loose).unwrap().to_text(), CIRCLE);
    }

    #[test]
    fn errors_carry_lines() {
        let bad =
            "torsionlab-v1\n[field]\nbase = rationals\n[complex]\ndims = [1, 1]\nd0 = [1/0]\n";
        let e = JobDocument::parse(bad).unwrap_err();
        assert_eq!((e.kind, e.line), (ErrorKind::Parse, Some(6)));

        let e = JobDocument::parse("torsion-v0\n").unwrap_err();
        assert_eq!((e.kind, e.line), (ErrorKind::Parse, Some(1)));

        let poly_in_q =
            "torsionlab-v1\n[field]\nbase = rationals\n[complex]\ndims = [1, 1]\nd0 = [[0, 1]]\n";
        let e = JobDocument::parse(poly_in_q).unwrap_err();
        assert_eq!((e.kind, e.line), (ErrorKind::Validation, Some(6)));

        let unknown =
            "torsionlab-v1\n[field]\nbase = rationals\n[complex]\ndims = [1]\nextra = 1\n";
        let e = JobDocument::parse(unknown).unwrap_err();
        assert_eq!((e.kind, e.line), (ErrorKind::Validation, Some(6)));

        let not_complex = "torsionlab-v1\n[field]\nbase = rationals\n[complex]\ndims = [1, 1, 1]\nd0 = [1]\nd1 = [1]\n";
        assert_eq!(
            JobDocument::parse(not_complex).unwrap_err().kind,
            ErrorKind::Validation
        );
    }

    #[test]
    fn representation_must_satisfy_relations() {
        let text = "torsionlab-v1\n[field]\nbase = rationals\n[group]\ngenerators = [a, b]\nrelations = [a b a^-1 b^-1]\n\
                    [representation]\na = [0, 1, 1, 0]\nb = [2, 0, 0, 1]\n[complex]\ndims = [1]\n";
        let e = JobDocument::parse(text).unwrap_err();
        assert_eq!((e.kind, e.line), (ErrorKind::Validation, Some(7)));
    }
}
