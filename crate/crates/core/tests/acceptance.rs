//! End-to-end acceptance checks, run single-threaded in one test so the
//! total wall time is measured as well.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;

use torsionlab::cellcx::models::{
    circle, circle_group, klein_group, presentation_complex, torus_group,
};
use torsionlab::cellcx::{
    det_rho_of_class, milnor_turaev_torsion, CellRef, CohomologyOrientation,
    EquivariantCellComplex, Representation, Word,
};
use torsionlab::complexes::{fusion_check, CochainComplex, GradedBases};
use torsionlab::maptorus::{
    check_wang, default_sweep_points, match_unit, standard_cone_orientation, verify_maptor,
    CellularSelfMap, MonodromyRep,
};
use torsionlab::par::Execution;
use torsionlab::random::{self, TestRng};
use torsionlab::sweeps::{admissible_shapes, dimension_sweep, fusion_sweep, tau_sweep};
use torsionlab::{ExactMatrix, FieldElement, Poly, Scalar, Vector};

const SEQ: Execution = Execution::Sequential;

struct Outcome {
    passed: bool,
    detail: String,
}

fn run(id: usize, name: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let ok = out.passed && elapsed <= budget;
    println!(
        "[{id}] {name}: {} ({}; {:.2}s of {}s)",
        if ok { "PASS" } else { "FAIL" },
        out.detail,
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    ok
}

fn poly(xs: &[i64]) -> FieldElement {
    FieldElement::from_poly(Poly::from_ints(xs))
}

fn t() -> FieldElement {
    FieldElement::var()
}

fn one_by_one(x: FieldElement) -> ExactMatrix {
    ExactMatrix::new(1, 1, vec![x]).unwrap()
}

fn tau_chains() -> Outcome {
    let samples = tau_sweep(200, 1, 5, 5, SEQ).unwrap();
    let checked: usize = samples.iter().map(|s| s.nondegenerate).sum();
    let mismatches: usize = samples.iter().map(|s| s.mismatches).sum();
    Outcome {
        passed: mismatches == 0 && checked > 0,
        detail: format!(
            "{} complexes, {checked} nondegenerate chains, {mismatches} mismatches",
            samples.len()
        ),
    }
}

/// Parity of the tail dimension sum of `c` from degree `q`.
fn tail_parity(c: &CochainComplex, q: usize) -> u8 {
    (c.dims().iter().skip(q).sum::<usize>() % 2) as u8
}

fn fusion() -> Outcome {
    let results = fusion_sweep(100, 11, SEQ).unwrap();
    let held = results.iter().filter(|(h, _)| *h).count();

    // C2 acyclic of dimension one in degrees k and k + 1; everything else random.
    let mut rng = random::rng(2024);
    let dims0 = [2, 3, 2, 1, 2];
    let k = 1;
    let mut ys = Vec::new();
    let mut sub_held = 0;
    for _ in 0..20 {
        let c0 = random::random_any(&mut rng, &dims0, 2).unwrap();
        let mut dims2 = vec![0; dims0.len()];
        dims2[k] = 1;
        dims2[k + 1] = 1;
        let mut diffs: Vec<ExactMatrix> = (0..dims0.len() - 1)
            .map(|q| ExactMatrix::zeros(dims2[q + 1], dims2[q]))
            .collect();
        let mut scale = 0;
        while scale == 0 {
            scale = rng.gen_range(-4..=4);
        }
        diffs[k] = ExactMatrix::from_ints(1, 1, &[scale]);
        let c2 = CochainComplex::new(dims2, diffs).unwrap();
        assert!(c2.is_acyclic());
        let s = random::random_split_sequence(&mut rng, c0, c2, true).unwrap();
        let report = fusion_check(&s, &s.c0.cohomology().bases, &s.c2.cohomology().bases).unwrap();
        if report.holds() {
            sub_held += 1;
        }
        ys.push(report.y);
    }
    let constant = ys.iter().all(|&y| y == ys[0]);
    let c0_shape = CochainComplex::zero_differentials(dims0.to_vec()).unwrap();
    let predicted = tail_parity(&c0_shape, k + 2);
    Outcome {
        passed: held == results.len() && sub_held == 20 && constant && ys[0] == predicted,
        detail: format!(
            "{held}/{} sequences fuse; fixed-C2 family: {sub_held}/20 fuse, y = {:?}",
            results.len(),
            ys.iter().collect::<std::collections::BTreeSet<_>>()
        ),
    }
}

fn gaussian(re: (i64, i64), im: (i64, i64)) -> Scalar {
    &Scalar::from_frac(re.0, re.1) + &(&Scalar::i() * &Scalar::from_frac(im.0, im.1))
}

fn circle_rep(x: FieldElement) -> Representation {
    Representation::new(circle_group(), vec![one_by_one(x)]).unwrap()
}

fn circle_torsion() -> Outcome {
    let x = circle(1).unwrap();
    let o = CohomologyOrientation::standard(&x).unwrap();
    let torsion = milnor_turaev_torsion(&x, &circle_rep(t()), &o).unwrap();
    let ratio = torsion.checked_div(&poly(&[-1, 1])).unwrap();
    let Some(unit) = match_unit(&ratio, &t()).unwrap() else {
        return Outcome {
            passed: false,
            detail: format!("T = {torsion} is not a unit times t - 1"),
        };
    };
    let m = unit.exponent;
    let points = [
        gaussian((2, 1), (0, 1)),
        gaussian((-1, 1), (3, 1)),
        gaussian((1, 2), (-1, 1)),
        gaussian((0, 1), (1, 1)),
        gaussian((3, 1), (2, 1)),
        gaussian((-2, 1), (-1, 3)),
        gaussian((5, 4), (0, 1)),
        gaussian((1, 1), (1, 1)),
        gaussian((-3, 2), (7, 5)),
        gaussian((4, 1), (-4, 1)),
    ];
    let mut agree = 0;
    for z in &points {
        let tz = torsion.evaluate_at(z).unwrap().as_scalar().unwrap();
        let zm1 = z - &Scalar::one();
        let q = (&zm1 * &zm1).checked_div(z).unwrap();
        // |T(z)|^2 = |q| |z|^{2m+1}, squared so both sides are rational
        let lhs = FieldElement::from_scalar(Scalar::from_rational(tz.norm_sqr()))
            .pow(2)
            .unwrap();
        let nz = FieldElement::from_scalar(Scalar::from_rational(z.norm_sqr()));
        let rhs = &FieldElement::from_scalar(Scalar::from_rational(q.norm_sqr()))
            * &nz.pow(2 * m + 1).unwrap();
        if lhs == rhs {
            agree += 1;
        }
    }
    Outcome {
        passed: agree == points.len(),
        detail: format!(
            "T = {torsion}, unit = {}t^{m}, {agree}/{} points agree",
            if unit.sign < 0 { "-" } else { "+" },
            points.len()
        ),
    }
}

fn random_word(rng: &mut TestRng, generators: &[String]) -> Word {
    let len = rng.gen_range(1..=3);
    let letters: Vec<String> = (0..len)
        .map(|_| {
            let g = generators.choose(rng).unwrap();
            if rng.gen_bool(0.5) {
                format!("{g}^-1")
            } else {
                g.clone()
            }
        })
        .collect();
    Word::parse(&letters.join(" ")).unwrap()
}

/// A random model with an acyclic twisted complex.
fn random_model(rng: &mut TestRng) -> (EquivariantCellComplex, Representation) {
    loop {
        let dim = rng.gen_range(1..=2);
        let a = random::random_invertible(rng, dim, 2).scale(&t());
        let (x, r) = match rng.gen_range(0..3) {
            0 => (
                circle(rng.gen_range(1..=3)).unwrap(),
                Representation::new(circle_group(), vec![a]),
            ),
            1 => {
                let c = *[2i64, 3, -2].choose(rng).unwrap();
                let b = ExactMatrix::identity(dim).scale(&FieldElement::from_int(c));
                (
                    presentation_complex(&torus_group()).unwrap(),
                    Representation::new(torus_group(), vec![a, b]),
                )
            }
            _ => {
                let minus = ExactMatrix::identity(dim).neg();
                (
                    presentation_complex(&klein_group()).unwrap(),
                    Representation::new(klein_group(), vec![minus, a]),
                )
            }
        };
        let r = r.unwrap();
        if r.is_valid() && x.twisted_cochain(&r).unwrap().is_acyclic() {
            return (x, r);
        }
    }
}

fn dependence_laws() -> Outcome {
    let mut rng = random::rng(77);
    let mut shift_ok = 0;
    let mut flip_ok = 0;
    let trials = 50;
    for _ in 0..trials {
        let (x, r) = random_model(&mut rng);
        let o = CohomologyOrientation::standard(&x).unwrap();
        let base = milnor_turaev_torsion(&x, &r, &o).unwrap();
        let w = random_word(&mut rng, r.presentation().generators());
        let dim = rng.gen_range(0..x.cells().len());
        let cell = CellRef::new(dim, rng.gen_range(0..x.cells()[dim]));
        let shifted = x.shift_euler(cell, &w).unwrap();
        let det = det_rho_of_class(&r, &w).unwrap();
        let factor = if dim % 2 == 0 {
            det
        } else {
            det.inv().unwrap()
        };
        if milnor_turaev_torsion(&shifted, &r, &o).unwrap() == &base * &factor {
            shift_ok += 1;
        }
        let flipped = milnor_turaev_torsion(&x, &r, &o.flipped()).unwrap();
        let expected = if r.dim() % 2 == 1 { -base } else { base };
        if flipped == expected {
            flip_ok += 1;
        }
    }
    Outcome {
        passed: shift_ok == trials && flip_ok == trials,
        detail: format!("shift {shift_ok}/{trials}, flip {flip_ok}/{trials}"),
    }
}

fn mapping_tori() -> Outcome {
    let fiber = CochainComplex::zero_differentials(vec![1, 1]).unwrap();
    let reflection = CellularSelfMap::new(
        fiber.clone(),
        vec![
            ExactMatrix::identity(1),
            ExactMatrix::from_ints(1, 1, &[-1]),
        ],
    )
    .unwrap();
    let klein_zeta = poly(&[-1, 1]).checked_div(&poly(&[1, 1])).unwrap();
    let rho = MonodromyRep::generic();
    let points = default_sweep_points();
    let mut parts = Vec::new();
    let mut passed = true;
    for (name, m) in [
        ("torus", CellularSelfMap::identity(fiber)),
        ("klein", reflection),
    ] {
        let o = standard_cone_orientation(&m).unwrap();
        let report = verify_maptor(&m, &rho, &o, 1, &points, SEQ).unwrap();
        let wang = check_wang(&m, &rho).unwrap().holds();
        passed &= report.passes() && wang;
        if name == "klein" {
            passed &= report.zeta_value == klein_zeta;
        }
        parts.push(format!(
            "{name}: zeta side {}, unit {:?}, wang {}",
            report.zeta_value,
            report.unit.map(|u| (u.sign, u.exponent)),
            if wang { "exact" } else { "broken" }
        ));
    }
    Outcome {
        passed,
        detail: parts.join("; "),
    }
}

fn circle_models() -> Outcome {
    let r = circle_rep(t());
    let values: Vec<FieldElement> = (1..=3)
        .map(|n| {
            let x = circle(n).unwrap();
            milnor_turaev_torsion(&x, &r, &CohomologyOrientation::standard(&x).unwrap()).unwrap()
        })
        .collect();
    Outcome {
        passed: values.iter().all(|v| v == &values[0]),
        detail: format!(
            "1, 2 and 3 edges: {}",
            values
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        ),
    }
}

fn dimension_formula() -> Outcome {
    let shapes: Vec<_> = (2..=4).flat_map(|n| admissible_shapes(n, 3)).collect();
    let failures = dimension_sweep(&shapes, 10, 5, SEQ).unwrap();
    let failed = failures.iter().filter(|&&f| f > 0).count();
    Outcome {
        passed: failed == 0,
        detail: format!(
            "{} shapes x 10 points, {failed} shapes failing",
            shapes.len()
        ),
    }
}

fn random_combination(rng: &mut TestRng, basis: &[Vector], len: usize) -> Vector {
    let mut v = vec![FieldElement::zero(); len];
    for b in basis {
        let c = FieldElement::from_int(rng.gen_range(-3..=3));
        for (x, y) in v.iter_mut().zip(b) {
            *x = &*x + &(&c * y);
        }
    }
    v
}

/// Torsion from scratch with a random basis of each coboundary space and
/// random lifts of it.
fn torsion_rechosen(rng: &mut TestRng, c: &CochainComplex, h: &GradedBases) -> FieldElement {
    let n = c.degrees();
    let dims = c.dims();
    let images: Vec<Vec<Vector>> = (0..n)
        .map(|q| match c.incoming(q) {
            Some(d) if d.rank() > 0 => {
                let basis = d.image_basis();
                let g = random::random_invertible(rng, basis.len(), 3);
                ExactMatrix::from_columns(dims[q], &basis)
                    .unwrap()
                    .checked_mul(&g)
                    .unwrap()
                    .columns()
            }
            _ => Vec::new(),
        })
        .collect();
    let mut value = FieldElement::one();
    for q in 0..n {
        let mut cols = images[q].clone();
        cols.extend(h.0[q].iter().cloned());
        if let Some(d) = c.outgoing(q) {
            let kernel = d.kernel_basis();
            for b in &images[q + 1] {
                let particular = d.solve(b).unwrap();
                let shift = random_combination(rng, &kernel, dims[q]);
                cols.push(particular.iter().zip(&shift).map(|(x, y)| x + y).collect());
            }
        }
        let det = ExactMatrix::from_columns(dims[q], &cols)
            .unwrap()
            .det()
            .unwrap();
        value = if q % 2 == 0 {
            &value * &det
        } else {
            value.checked_div(&det).unwrap()
        };
    }
    let hdims = c.cohomology_dims();
    let (mut a, mut b, mut sign) = (0, 0, 0);
    for q in (0..n).rev() {
        a += dims[q];
        b += hdims[q];
        sign += a * b;
    }
    if sign % 2 == 1 {
        -value
    } else {
        value
    }
}

fn rechoice_independence() -> Outcome {
    let mut rng = random::rng(8);
    let trials = 100;
    let mut agree = 0;
    for _ in 0..trials {
        let n = rng.gen_range(2..=4);
        let dims: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
        let c = random::random_any(&mut rng, &dims, 3).unwrap();
        let h = c.cohomology().bases;
        if torsion_rechosen(&mut rng, &c, &h) == c.torsion(&h).unwrap() {
            agree += 1;
        }
    }
    Outcome {
        passed: agree == trials,
        detail: format!("{agree}/{trials} complexes"),
    }
}

fn main() {
    let start = Instant::now();
    let secs = Duration::from_secs;
    let results = [
        run(1, "tau chains against torsion", secs(20), tau_chains),
        run(2, "fusion identity", secs(10), fusion),
        run(3, "circle torsion", secs(1), circle_torsion),
        run(
            4,
            "euler structure and orientation laws",
            secs(10),
            dependence_laws,
        ),
        run(5, "mapping tori", secs(5), mapping_tori),
        run(6, "circle models agree", secs(1), circle_models),
        run(7, "dimension formula", secs(30), dimension_formula),
        run(
            8,
            "torsion independent of choices",
            secs(10),
            rechoice_independence,
        ),
    ];
    let total = start.elapsed();
    let within = total <= secs(120);
    println!(
        "[9] full suite single-threaded: {} ({:.2}s of 120s)",
        if within { "PASS" } else { "FAIL" },
        total.as_secs_f64()
    );
    assert!(
        results.iter().all(|&ok| ok) && within,
        "acceptance failures: {results:?}"
    );
}
