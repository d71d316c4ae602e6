//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::time::{Duration, Instant};

use nhtopo::gaps::{deform, gap_report, hermitize_matrix, line_gap_deform, Axis, DEFAULT_PATH_STEPS};
use nhtopo::invariants::{chern_2d, winding_1d};
use nhtopo::ktable::{generate_tables, pi0, Field, Space};
use nhtopo::linalg::{hermitian_eigenvalues, singular_values};
use nhtopo::models::{catalog_get, class_representative, split_off_diagonal, verify_all_blocks};
use nhtopo::symmetry::{symmetrize, verify_spec, SymmetryClassId, SymmetrySpec};
use nhtopo::{c64, AbelianGroup, HamiltonianFamily};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn classifying_spaces() -> Outcome {
    let start = Instant::now();
    let complex: Vec<AbelianGroup> = (0..2).map(|s| pi0(Space::C, s)).collect();
    let real: Vec<AbelianGroup> = (0..8).map(|s| pi0(Space::R, s)).collect();
    let elapsed = start.elapsed();
    let show = |v: &[AbelianGroup]| v.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ");
    let (c, r) = (show(&complex), show(&real));
    ensure(c == "Z, 0", format!("pi0(C_s) = [{c}]"))?;
    ensure(r == "Z, Z2, Z2, 0, 2Z, 0, 0, 0", format!("pi0(R_s) = [{r}]"))?;
    ensure(elapsed < Duration::from_millis(1), format!("took {elapsed:?}"))?;
    Ok(format!("C: [{c}], R: [{r}] in {elapsed:?}"))
}

fn full_tables() -> Outcome {
    let start = Instant::now();
    let (set, report) = generate_tables().map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let fields = [Field::KP, Field::KLr, Field::KLi, Field::FR, Field::FI];
    let bad: Vec<_> = report.mismatches.iter().filter(|m| m.field.is_none_or(|f| fields.contains(&f))).collect();
    ensure(set.rows.len() == 432, format!("{} rows", set.rows.len()))?;
    ensure(bad.is_empty(), format!("{} mismatches, first {:?}", bad.len(), bad.first()))?;
    ensure(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!(
        "432 rows x 5 fields, 0 mismatches ({} errata, {} orientation matches) in {elapsed:?}",
        report.errata_applied.len(),
        report.orientation_matches.len()
    ))
}

fn intrinsic_tables() -> Outcome {
    let (set, report) = generate_tables().map_err(|e| e.to_string())?;
    let bad: Vec<_> = report.mismatches.iter().filter(|m| m.field == Some(Field::Intrinsic)).collect();
    ensure(bad.is_empty(), format!("{} mismatches, first {:?}", bad.len(), bad.first()))?;
    let two_z = set.rows.iter().filter(|r| r.intrinsic.factors().iter().any(|f| f.scale == 2)).count();
    let class = |s: &str| s.parse::<SymmetryClassId>().unwrap();
    let z2_at = |c: &str, d: u8| {
        set.rows.iter().any(|r| r.class == class(c) && r.delta == d && r.intrinsic.to_string() == "Z2")
    };
    for (c, d) in [("AIII+S-,η-", 0), ("AIII+S-,η-", 2), ("DIII+S+-,η+-", 0), ("DIII+S+-,η+-", 4), ("CI+S+-,η+-", 0)] {
        ensure(z2_at(c, d), format!("{c} delta={d}: expected Z2 from the opposite-sign rule"))?;
    }
    Ok(format!("54 x 8 cells, 0 mismatches, {two_z} cells with a 2Z summand"))
}

fn generator_blocks() -> Outcome {
    let reports = verify_all_blocks().map_err(|e| e.to_string())?;
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed).collect();
    if let Some(r) = failed.first() {
        return Err(format!("block {} ({}): {:?}", r.id, r.class, r.failures()));
    }
    let map = |id: u8| reports.iter().find(|r| r.id == id).map(|r| r.map.clone()).unwrap_or_default();
    ensure(map(3) == "0", "D-dag block is not the zero map")?;
    ensure(map(17) == "n->2n", "CII+S-+ block is not n->2n")?;
    for id in [11, 15, 16] {
        ensure(map(id) == "n->(n,n)", format!("block {id} is {}", map(id)))?;
    }
    let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
    Ok(format!("18 blocks, {checks} checks passed"))
}

fn perturbed(h: &HamiltonianFamily, spec: &SymmetrySpec, size: f64, rng: &mut rand_chacha::ChaCha8Rng, hermitian: bool) -> HamiltonianFamily {
    let n = h.matrix_size();
    let noise = HamiltonianFamily::from_samples(
        h.dim(),
        h.grid_size(),
        (0..h.len())
            .map(|_| {
                let m = common::random_matrix(rng, n);
                if hermitian {
                    m.hermitian_part()
                } else {
                    m
                }
            })
            .collect(),
    )
    .unwrap();
    let noise = symmetrize(&noise, spec).unwrap();
    let peak = noise.samples().iter().map(common::norm2).fold(0.0, f64::max);
    h.zip_with(&noise, |a, b| a + &b.scale_re(size / peak)).unwrap()
}

fn quantization() -> Outcome {
    let circle = catalog_get("hatano").map_err(|e| e.to_string())?.models[0].family.clone();
    let w = winding_1d(&circle, 1e-8).map_err(|e| e.to_string())?;
    ensure(w.value == 1 && w.residual < 1e-12, format!("winding {} residual {:.1e}", w.value, w.residual))?;
    let qwz = catalog_get("qwz-chern").map_err(|e| e.to_string())?.models[0].family.clone();
    let start = Instant::now();
    let c = chern_2d(&qwz, 1e-8).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(c.value == 1 && c.residual < 1e-6, format!("chern {} residual {:.1e}", c.value, c.residual))?;
    ensure(elapsed < Duration::from_secs(1), format!("chern took {elapsed:?}"))?;

    let mut rng = common::rng(5);
    let empty = SymmetrySpec::empty();
    let chain = catalog_get("a+s-1d").map_err(|e| e.to_string())?.models.remove(0);
    for trial in 0..20 {
        let gap = gap_report(&circle, 1e-8).unwrap().point_gap_margin;
        let w = winding_1d(&perturbed(&circle, &empty, 0.099 * gap, &mut rng, false), 1e-8).map_err(|e| e.to_string())?;
        ensure(w.value == 1, format!("perturbation {trial}: winding {}", w.value))?;

        let gap = gap_report(&qwz, 1e-8).unwrap().real_line_margin;
        let c = chern_2d(&perturbed(&qwz, &empty, 0.099 * gap, &mut rng, true), 1e-8).map_err(|e| e.to_string())?;
        ensure(c.value == 1, format!("perturbation {trial}: chern {}", c.value))?;

        let gap = gap_report(&chain.family, 1e-8).unwrap().point_gap_margin;
        let p = perturbed(&chain.family, &chain.symmetry, 0.099 * gap, &mut rng, false);
        let (h1, h2) = split_off_diagonal(&p).unwrap();
        let pair = (winding_1d(&h1, 1e-8).unwrap().value, winding_1d(&h2, 1e-8).unwrap().value);
        ensure(pair == (1, -1), format!("perturbation {trial}: A+S windings {pair:?}"))?;
    }
    Ok(format!(
        "W(e^ik) = 1 (residual {:.0e}), C = +1 (residual {:.0e}, {elapsed:?}), stable under 20 perturbations",
        w.residual, c.residual
    ))
}

fn deformation_suite() -> Outcome {
    let classes = SymmetryClassId::all();
    let mut rng = common::rng(6);
    let mut worst_residual = 0.0f64;
    for axis in [Axis::Real, Axis::Imaginary] {
        for i in 0..50 {
            let class = classes[(i * 7 + if axis == Axis::Real { 0 } else { 3 }) % classes.len()];
            let base = common::widen(&class_representative(class), 4);
            let (h, spec) = match axis {
                Axis::Real => (common::real_gapped_family(&mut rng, &base, 4, 8), base),
                Axis::Imaginary => {
                    let g = common::real_gapped_family(&mut rng, &base, 4, 8);
                    (g.scale(c64(0.0, 1.0)), base.for_i_times())
                }
            };
            let report = gap_report(&h, 1e-8).unwrap();
            let margin = if axis == Axis::Real { report.real_line_margin } else { report.imag_line_margin };
            ensure(margin > 0.5, format!("{axis} family {i} ({class}): margin {margin:.3}"))?;
            let d = deform(&h, axis, &spec, DEFAULT_PATH_STEPS, 1e-8)
                .map_err(|e| format!("{axis} family {i} ({class}): {e}"))?;
            let out_residual = d.output.samples().iter().map(|m| match axis {
                Axis::Real => m.hermitian_residual(),
                Axis::Imaginary => m.antihermitian_part().max_abs_diff(m),
            });
            let shape = out_residual.fold(0.0, f64::max);
            ensure(shape < 1e-8, format!("{axis} family {i}: output not (anti-)Hermitian ({shape:.1e})"))?;
            ensure(d.certificate.steps == 11, "certificate does not cover 11 samples")?;
            ensure(
                d.certificate.max_symmetry_residual < 1e-8,
                format!("{axis} family {i}: symmetry residual {:.1e}", d.certificate.max_symmetry_residual),
            )?;
            let end = verify_spec(&d.output, &spec).unwrap().iter().map(|r| r.1).fold(0.0, f64::max);
            worst_residual = worst_residual.max(d.certificate.max_symmetry_residual).max(end);
            let same = line_gap_deform(&h, axis, &spec, DEFAULT_PATH_STEPS, 1e-8).map_err(|e| e.to_string())?;
            ensure(same == d.output, "line_gap_deform disagrees with deform")?;
        }
    }
    Ok(format!("2 x 50 families certified at 11 samples, worst symmetry residual {worst_residual:.1e}"))
}

fn flattening_relations() -> Outcome {
    let mut out = Vec::new();
    let chain = catalog_get("a+s-1d").map_err(|e| e.to_string())?.models.remove(0);
    for axis in [Axis::Real, Axis::Imaginary] {
        let d = deform(&chain.family, axis, &chain.symmetry, DEFAULT_PATH_STEPS, 1e-8).map_err(|e| e.to_string())?;
        let (h1, h2) = split_off_diagonal(&d.output).unwrap();
        let (w1, w2) = (winding_1d(&h1, 1e-8).unwrap().value, winding_1d(&h2, 1e-8).unwrap().value);
        ensure(w1 == 1 && w2 == -w1, format!("A+S {axis}: W1 = {w1}, W2 = {w2}"))?;
        out.push(format!("A+S {axis}: W = ({w1},{w2})"));
    }
    for (id, axis, sign) in [("aiii+s-2d-real", Axis::Real, 1), ("aiii+s-2d-imag", Axis::Imaginary, -1)] {
        let m = catalog_get(id).map_err(|e| e.to_string())?.models.remove(0);
        let d = deform(&m.family, axis, &m.symmetry, DEFAULT_PATH_STEPS, 1e-8).map_err(|e| e.to_string())?;
        let (h1, h2) = split_off_diagonal(&d.output).unwrap();
        let (c1, c2) = (chern_2d(&h1, 1e-8).map_err(|e| e.to_string())?.value, chern_2d(&h2, 1e-8).map_err(|e| e.to_string())?.value);
        ensure(c1 == 1 && c2 == sign * c1, format!("AIII+S- {axis}: C1 = {c1}, C2 = {c2}"))?;
        out.push(format!("AIII+S- {axis}: C = ({c1},{c2})"));
    }
    Ok(out.join("; "))
}

fn hermitization_identity() -> Outcome {
    let mut rng = common::rng(8);
    let mut worst = 0.0f64;
    for i in 0..100 {
        let n = 1 + i % 8;
        let h = common::random_matrix(&mut rng, n);
        let mut eig = hermitian_eigenvalues(&hermitize_matrix(&h));
        let s = singular_values(h.as_matrix());
        let mut expected: Vec<f64> = s.iter().flat_map(|&x| [x, -x]).collect();
        eig.sort_by(f64::total_cmp);
        expected.sort_by(f64::total_cmp);
        let diff = eig.iter().zip(&expected).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        worst = worst.max(diff);
        ensure(diff < 1e-10, format!("matrix {i} ({n}x{n}): deviation {diff:.1e}"))?;
    }
    Ok(format!("100 matrices up to 8x8, worst deviation {worst:.1e}"))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("classifying spaces", classifying_spaces),
        ("full table regeneration", full_tables),
        ("intrinsic tables", intrinsic_tables),
        ("generator verification", generator_blocks),
        ("invariant quantization", quantization),
        ("line-gap deformation suite", deformation_suite),
        ("flattening relations", flattening_relations),
        ("Hermitization spectral identity", hermitization_identity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} [{name}]: PASS - {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL - {why}", i + 1);
            }
        }
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
