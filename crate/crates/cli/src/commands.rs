//! One function per subcommand. Each returns the human-readable report and
//! the same data as a JSON object.

use serde_json::{json, Value};

use torsionlab::cellcx::{
    argument_invariant, milnor_turaev_torsion, CellRef, CohomologyOrientation,
    EquivariantCellComplex, Modulus, Representation, Word,
};
use torsionlab::complexes::{
    enumerate_tau_chains, epsilon_alpha, fusion_check, unsigned_f_alpha, CochainComplex,
    GradedBases, ShapeVector,
};
use torsionlab::maptorus::{
    cone_torsion, default_sweep_points, mapping_cone_complex, standard_cone_orientation,
    verify_maptor, CellularSelfMap, MonodromyRep, SweepOutcome, Unit,
};
use torsionlab::par::{self, Execution};
use torsionlab::{Error, ExactMatrix, FieldElement, Poly, Scalar};

use crate::document::{modulus_name, JobDocument, Payload};
use crate::error::{CliError, CliResult, ErrorKind};

#[derive(Clone, Debug)]
pub struct Report {
    pub text: String,
    pub json: Value,
    /// Nonzero when a verification failed.
    pub exit_code: u8,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report {
            text,
            json,
            exit_code: 0,
        }
    }
}

fn wrong_payload(command: &str, wanted: &str, doc: &JobDocument) -> CliError {
    CliError::validation(format!(
        "`{command}` needs a [{wanted}] payload, the document has [{}]",
        doc.payload.section_name()
    ))
}

fn element_json(x: &FieldElement) -> Value {
    json!({
        "value": x.to_string(),
        "numerator": x.numer().to_string(),
        "denominator": x.denom().to_string(),
    })
}

pub fn torsion(doc: &JobDocument, use_h_bases: bool) -> CliResult<Report> {
    let Payload::Complex(c) = &doc.payload else {
        return Err(wrong_payload("torsion", "complex", doc));
    };
    let value = if use_h_bases {
        let h = doc.hbases.clone().unwrap_or_else(|| c.cohomology().bases);
        c.torsion(&h)?
    } else {
        c.torsion_acyclic()?
    };
    let json = json!({"command": "torsion", "torsion": element_json(&value)});
    Ok(Report::ok(format!("{value}\n"), json))
}

pub fn taulist(doc: &JobDocument) -> CliResult<Report> {
    let Payload::Complex(c) = &doc.payload else {
        return Err(wrong_payload("taulist", "complex", doc));
    };
    let shape = ShapeVector::new(c.dims().to_vec())?;
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for alpha in enumerate_tau_chains(&shape) {
        match unsigned_f_alpha(&shape, c.diffs(), &alpha)? {
            None => {
                rows.push(vec![alpha.to_string(), "degenerate".into()]);
                json_rows.push(json!({"alpha": alpha.to_string(), "degenerate": true}));
            }
            Some(u) => {
                let eps = epsilon_alpha(&alpha, &shape)?;
                let f = if eps < 0 { -u.clone() } else { u.clone() };
                rows.push(vec![
                    alpha.to_string(),
                    u.to_string(),
                    format!("{eps:+}"),
                    f.to_string(),
                ]);
                json_rows.push(json!({
                    "alpha": alpha.to_string(),
                    "degenerate": false,
                    "unsigned": u.to_string(),
                    "epsilon": eps,
                    "value": f.to_string(),
                }));
            }
        }
    }
    let header = vec![
        "alpha".to_string(),
        "unsigned".into(),
        "eps".into(),
        "F".into(),
    ];
    let text = table(&header, &rows);
    Ok(Report::ok(
        text,
        json!({"command": "taulist", "shape": shape.ks(), "rows": json_rows}),
    ))
}

fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(String::len).collect();
    for r in rows {
        for (k, cell) in r.iter().enumerate() {
            widths[k] = widths[k].max(cell.len());
        }
    }
    let mut out = String::new();
    for r in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
        let cells: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(k, c)| format!("{c:<w$}", w = widths[k]))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn representation(doc: &JobDocument) -> CliResult<&Representation> {
    doc.representation
        .as_ref()
        .ok_or_else(|| CliError::validation("a [representation] section is required"))
}

fn cell_orientation(
    doc: &JobDocument,
    x: &EquivariantCellComplex,
) -> CliResult<CohomologyOrientation> {
    let standard = CohomologyOrientation::standard(x)?;
    Ok(match &doc.orientation {
        None => standard,
        Some(o) => CohomologyOrientation::new(o.bases.clone().unwrap_or(standard.bases), o.sign)?,
    })
}

fn cone_orientation(doc: &JobDocument, m: &CellularSelfMap) -> CliResult<(GradedBases, i8)> {
    Ok(match &doc.orientation {
        None => (standard_cone_orientation(m)?, 1),
        Some(o) => (
            match &o.bases {
                Some(b) => b.clone(),
                None => standard_cone_orientation(m)?,
            },
            o.sign,
        ),
    })
}

#[derive(Clone, Debug, Default)]
pub struct MtOptions {
    pub shift_euler: Option<(String, String)>,
    pub flip_orientation: bool,
}

pub fn mt(doc: &JobDocument, opts: &MtOptions) -> CliResult<Report> {
    let Payload::CellComplex(x) = &doc.payload else {
        return Err(wrong_payload("mt", "cellcomplex", doc));
    };
    let r = representation(doc)?;
    let mut x = x.clone();
    if let Some((cell, w)) = &opts.shift_euler {
        let cell = CellRef::parse(cell)?;
        let w = Word::parse(w)?;
        r.presentation().check_word(&w)?;
        x = x.shift_euler(cell, &w)?;
    }
    let mut o = cell_orientation(doc, &x)?;
    if opts.flip_orientation {
        o = o.flipped();
    }
    let value = milnor_turaev_torsion(&x, r, &o)?;
    let text = format!(
        "numerator: {}\ndenominator: {}\n",
        value.numer(),
        value.denom()
    );
    Ok(Report::ok(
        text,
        json!({"command": "mt", "torsion": element_json(&value)}),
    ))
}

/// The torsion-valued function a document describes, and its specializations.
enum Subject<'a> {
    Complex(&'a CochainComplex),
    Cell {
        x: &'a EquivariantCellComplex,
        r: &'a Representation,
        o: CohomologyOrientation,
    },
    Torus {
        m: &'a CellularSelfMap,
        rho: &'a MonodromyRep,
        bases: GradedBases,
        sign: i8,
    },
}

enum Specialized {
    Acyclic(FieldElement),
    NotAcyclic(Vec<usize>),
    /// The data cannot be specialized at the point.
    Undefined(String),
}

impl<'a> Subject<'a> {
    fn of(doc: &'a JobDocument, command: &str) -> CliResult<Subject<'a>> {
        Ok(match &doc.payload {
            Payload::Complex(c) => Subject::Complex(c),
            Payload::CellComplex(x) => Subject::Cell {
                x,
                r: representation(doc)?,
                o: cell_orientation(doc, x)?,
            },
            Payload::MappingTorus(m, rho) => {
                let (bases, sign) = cone_orientation(doc, m)?;
                Subject::Torus {
                    m,
                    rho,
                    bases,
                    sign,
                }
            }
            Payload::Sequence(_) => {
                return Err(CliError::validation(format!(
                    "`{command}` needs a complex, cell complex or mapping torus payload"
                )))
            }
        })
    }

    fn value(&self) -> CliResult<FieldElement> {
        Ok(match self {
            Subject::Complex(c) => c.torsion_acyclic()?,
            Subject::Cell { x, r, o } => milnor_turaev_torsion(x, r, o)?,
            Subject::Torus {
                m,
                rho,
                bases,
                sign,
            } => cone_torsion(m, rho, bases, *sign)?,
        })
    }

    fn specialize(&self, p: &Scalar) -> CliResult<Specialized> {
        let undefined = |e: Error| Specialized::Undefined(e.to_string());
        let settle = |c: CochainComplex,
                      value: &dyn Fn() -> torsionlab::Result<FieldElement>|
         -> CliResult<Specialized> {
            if c.is_acyclic() {
                Ok(Specialized::Acyclic(value()?))
            } else {
                Ok(Specialized::NotAcyclic(c.cohomology_dims()))
            }
        };
        match self {
            Subject::Complex(c) => match c.evaluate_at(p) {
                Ok(local) => settle(local.clone(), &|| local.torsion_acyclic()),
                Err(e) => Ok(undefined(e)),
            },
            Subject::Cell { x, r, o } => {
                let images: torsionlab::Result<Vec<ExactMatrix>> =
                    r.images().iter().map(|m| m.evaluate_at(p)).collect();
                let local =
                    match images.and_then(|i| Representation::new(r.presentation().clone(), i)) {
                        Ok(local) => local,
                        Err(e) => return Ok(undefined(e)),
                    };
                settle(x.twisted_cochain(&local)?, &|| {
                    milnor_turaev_torsion(x, &local, o)
                })
            }
            Subject::Torus {
                m,
                rho,
                bases,
                sign,
            } => {
                let local = match rho.evaluate_at(p) {
                    Ok(local) => local,
                    Err(e) => return Ok(undefined(e)),
                };
                settle(mapping_cone_complex(m, &local)?, &|| {
                    cone_torsion(m, &local, bases, *sign)
                })
            }
        }
    }
}

fn specialized_text(s: &Specialized) -> String {
    match s {
        Specialized::Acyclic(v) => format!("acyclic, torsion {v}"),
        Specialized::NotAcyclic(dims) => format!("not acyclic, H dims: {dims:?}"),
        Specialized::Undefined(why) => format!("undefined ({why})"),
    }
}

fn specialized_json(s: &Specialized) -> Value {
    match s {
        Specialized::Acyclic(v) => json!({"acyclic": true, "torsion": v.to_string()}),
        Specialized::NotAcyclic(dims) => json!({"acyclic": false, "h_dims": dims}),
        Specialized::Undefined(why) => json!({"undefined": why}),
    }
}

fn roots_of(p: &Poly) -> CliResult<(Vec<(Scalar, usize)>, Poly)> {
    let (roots, rest) = p.rational_roots().ok_or_else(|| {
        CliError::new(
            ErrorKind::Math,
            "coefficients too large for the rational root search",
        )
    })?;
    Ok((
        roots
            .into_iter()
            .map(|(r, m)| (Scalar::from_rational(r), m))
            .collect(),
        rest,
    ))
}

/// Integer points `lo..=hi` from `LO:HI`.
pub fn parse_range(s: &str) -> CliResult<(i64, i64)> {
    let bad = || {
        CliError::validation(format!(
            "range must be `LO:HI` with integers LO <= HI, got `{s}`"
        ))
    };
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let (lo, hi): (i64, i64) = (
        lo.trim().parse().map_err(|_| bad())?,
        hi.trim().parse().map_err(|_| bad())?,
    );
    if lo > hi || hi - lo > 10_000 {
        return Err(bad());
    }
    Ok((lo, hi))
}

pub fn scan(doc: &JobDocument, range: Option<(i64, i64)>) -> CliResult<Report> {
    let subject = Subject::of(doc, "scan")?;
    let value = subject.value()?;
    let (zeros, num_rest) = roots_of(value.numer())?;
    let (poles, den_rest) = roots_of(value.denom())?;
    let exec = Execution::available();

    let listed: Vec<(&str, Scalar, usize)> = zeros
        .iter()
        .map(|(r, m)| ("zero", r.clone(), *m))
        .chain(poles.iter().map(|(r, m)| ("pole", r.clone(), *m)))
        .collect();
    let checks = par::map(&listed, exec, |(_, r, _)| subject.specialize(r));

    let fmt_roots = |rs: &[(Scalar, usize)]| {
        let items: Vec<String> = rs.iter().map(|(r, _)| r.to_string()).collect();
        format!("[{}]", items.join(", "))
    };
    let mut text = format!(
        "numerator: {}\ndenominator: {}\nzeros: {}\npoles: {}\nresidual numerator: {}\nresidual denominator: {}\n",
        value.numer(),
        value.denom(),
        fmt_roots(&zeros),
        fmt_roots(&poles),
        num_rest,
        den_rest
    );
    let mut exit_code = 0;
    let mut json_roots = Vec::new();
    for ((kind, r, mult), check) in listed.iter().zip(checks) {
        let check = check?;
        let consistent = !matches!(check, Specialized::Acyclic(_));
        if !consistent {
            exit_code = ErrorKind::Internal.exit_code();
        }
        text.push_str(&format!(
            "{kind} {r} multiplicity {mult}: {}{}\n",
            specialized_text(&check),
            if consistent { "" } else { " INCONSISTENT" }
        ));
        json_roots.push(json!({
            "kind": kind,
            "root": r.to_string(),
            "multiplicity": mult,
            "specialization": specialized_json(&check),
            "consistent": consistent,
        }));
    }

    let mut json_points = Vec::new();
    if let Some((lo, hi)) = range {
        let points: Vec<Scalar> = (lo..=hi).map(Scalar::from_int).collect();
        let results = par::map(&points, exec, |p| {
            (value.evaluate_at(p), subject.specialize(p))
        });
        for (p, (symbolic, direct)) in points.iter().zip(results) {
            let direct = direct?;
            let (sym_text, agree) = match (&symbolic, &direct) {
                (Ok(v), Specialized::Acyclic(d)) => (v.to_string(), v == d),
                (Ok(v), _) => (v.to_string(), true),
                (Err(_), _) => (
                    "pole".to_string(),
                    !matches!(direct, Specialized::Acyclic(_)),
                ),
            };
            if !agree {
                exit_code = ErrorKind::Internal.exit_code();
            }
            text.push_str(&format!(
                "at {p}: {sym_text}; specialized: {}{}\n",
                specialized_text(&direct),
                if agree { "" } else { " MISMATCH" }
            ));
            json_points.push(json!({
                "point": p.to_string(),
                "value": symbolic.as_ref().map(ToString::to_string).ok(),
                "specialization": specialized_json(&direct),
                "agree": agree,
            }));
        }
    }
    let json = json!({
        "command": "scan",
        "torsion": element_json(&value),
        "zeros": zeros.iter().map(|(r, m)| json!({"root": r.to_string(), "multiplicity": m})).collect::<Vec<_>>(),
        "poles": poles.iter().map(|(r, m)| json!({"root": r.to_string(), "multiplicity": m})).collect::<Vec<_>>(),
        "residual_numerator": num_rest.to_string(),
        "residual_denominator": den_rest.to_string(),
        "checks": json_roots,
        "points": json_points,
    });
    Ok(Report {
        text,
        json,
        exit_code,
    })
}

fn unit_text(u: &Unit, rho: &MonodromyRep, variable: Option<&str>) -> String {
    let sign = if u.sign < 0 { "-" } else { "+" };
    if u.exponent == 0 {
        return format!("{sign}1");
    }
    let generic = rho.w() == MonodromyRep::generic().w();
    let base = match variable {
        Some(v) if generic => v.to_string(),
        _ => "det(w)".to_string(),
    };
    if u.exponent == 1 {
        format!("{sign}{base}")
    } else {
        format!("{sign}{base}^{}", u.exponent)
    }
}

pub fn maptorus(doc: &JobDocument) -> CliResult<Report> {
    let Payload::MappingTorus(m, rho) = &doc.payload else {
        return Err(wrong_payload("maptorus", "mappingtorus", doc));
    };
    let (bases, sign) = cone_orientation(doc, m)?;
    let points = doc
        .params
        .points
        .clone()
        .unwrap_or_else(default_sweep_points);
    let report = verify_maptor(m, rho, &bases, sign, &points, Execution::available())?;
    let count = |o: SweepOutcome| report.sweep.iter().filter(|(_, x)| *x == o).count();
    let (agree, disagree, skipped) = (
        count(SweepOutcome::Agrees),
        count(SweepOutcome::Disagrees),
        count(SweepOutcome::Skipped),
    );
    let unit = report
        .unit
        .as_ref()
        .map(|u| unit_text(u, rho, doc.field.variable.as_deref()));
    let verdict = match (&unit, report.passes()) {
        (Some(u), true) => format!("PASS unit={u}"),
        (Some(u), false) => format!("FAIL unit={u}"),
        (None, _) => "FAIL no unit".to_string(),
    };
    let text = format!(
        "cone: numerator {} denominator {}\nzeta: numerator {} denominator {}\nz_phi: {}\nratio: {}\n\
         sweep: {agree} agree, {disagree} disagree, {skipped} skipped\n{verdict}\n",
        report.cone_value.numer(),
        report.cone_value.denom(),
        report.zeta_value.numer(),
        report.zeta_value.denom(),
        report.z_phi,
        report.ratio,
    );
    let json = json!({
        "command": "maptorus",
        "cone": element_json(&report.cone_value),
        "zeta": element_json(&report.zeta_value),
        "z_phi": report.z_phi,
        "ratio": report.ratio.to_string(),
        "unit": unit,
        "sweep": {"agree": agree, "disagree": disagree, "skipped": skipped},
        "pass": report.passes(),
    });
    Ok(Report {
        text,
        json,
        exit_code: if report.passes() {
            0
        } else {
            ErrorKind::Internal.exit_code()
        },
    })
}

pub fn fusion(doc: &JobDocument) -> CliResult<Report> {
    let Payload::Sequence(s) = &doc.payload else {
        return Err(wrong_payload("fusion", "sequence", doc));
    };
    let report = fusion_check(s, &s.c0.cohomology().bases, &s.c2.cohomology().bases)?;
    let verdict = if report.holds() {
        "COMMUTES"
    } else {
        "DOES NOT COMMUTE"
    };
    let text = format!(
        "through C1: {}\nthrough cohomology: {}\n{verdict} y={}\n",
        report.through_c1, report.through_cohomology, report.y
    );
    let json = json!({
        "command": "fusion",
        "through_c1": report.through_c1.to_string(),
        "through_cohomology": report.through_cohomology.to_string(),
        "y": report.y,
        "commutes": report.holds(),
    });
    Ok(Report {
        text,
        json,
        exit_code: if report.holds() {
            0
        } else {
            ErrorKind::Internal.exit_code()
        },
    })
}

pub fn arg(doc: &JobDocument, at: Option<Scalar>, modulus: Option<Modulus>) -> CliResult<Report> {
    let subject = Subject::of(doc, "arg")?;
    let value = subject.value()?;
    let at = at.or_else(|| doc.params.at.clone());
    let modulus = modulus.or(doc.params.modulus).unwrap_or(Modulus::TwoPi);
    let local = match &at {
        Some(p) => value.evaluate_at(p)?,
        None => value.clone(),
    };
    let angle = argument_invariant(&local, modulus)?;
    let name = modulus_name(modulus);
    let text = format!("value: {local}\narg: {angle} (mod {name}, double precision)\n");
    let json = json!({
        "command": "arg",
        "at": at.map(|p| p.to_string()),
        "value": local.to_string(),
        "argument": angle,
        "modulus": name,
    });
    Ok(Report::ok(text, json))
}

pub fn canonical(doc: &JobDocument) -> Report {
    let text = doc.to_text();
    Report::ok(text.clone(), json!({"command": "fmt", "document": text}))
}
