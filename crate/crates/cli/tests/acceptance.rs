//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criterion 4 is a known deviation. Its stated stabilizer order (1) and
//! `good = yes` contradict its own images: iσ₃ commutes with the diagonal
//! images and negates the antidiagonal one, so it survives in PSL(2). The
//! runner reports the computed values as FAIL and exits non-zero if any
//! other criterion fails or if criterion 4 starts passing.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::Instant;

use charvar::cohomology::{build_complex, cohomology_report, AnalysisOptions};
use charvar::presentation::{FreeWord, GroupRingElement};
use charvar::rep::{random_surface_representation, CMatrix, CVector, Cocycle, GroupSpec, Representation};
use charvar::surfaces::{cup_pairing, h0_h2_closed_form, orientation_double_cover, pairing_form, SurfaceKind};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const KNOWN_DEVIATIONS: [u32; 1] = [4];
const CASES: u64 = 200;

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charvar")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> Result<Value, String> {
    let out = run(args);
    if !out.status.success() {
        return Err(format!("{args:?} exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn file_report(command: &str, file: &str, extra: &[&str]) -> Result<Value, String> {
    let path = golden(file);
    let mut args = vec![command, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    report(&args)
}

struct Check {
    failures: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Self { failures: Vec::new() }
    }

    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, actual: T, expected: T, what: &str) {
        if actual != expected {
            self.failures.push(format!("{what}: got {actual:?}, expected {expected:?}"));
        }
    }
}

fn uint(v: &Value) -> Option<u64> {
    v.as_u64()
}

/// Distance of a unit vector (list of [re, im]) from `±e_k` up to a phase.
fn distance_to_axis(v: &Value, k: usize) -> f64 {
    let coords: Vec<Complex64> =
        v.as_array().unwrap().iter().map(|z| Complex64::new(z[0].as_f64().unwrap(), z[1].as_f64().unwrap())).collect();
    let phase = coords[k] / coords[k].norm();
    coords
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let target = if i == k { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
            (z / phase - target).norm_sqr()
        })
        .sum::<f64>()
        .sqrt()
}

fn criterion_1() -> Result<Check, String> {
    let mut c = Check::new();
    let a = file_report("analyze", "klein_pauli.cv", &[])?;
    let h = &a["cohomology"];
    c.eq(uint(&h["b0"]), Some(0), "b0");
    c.eq(uint(&h["b1"]), Some(1), "b1");
    c.eq(uint(&h["b2"]), Some(1), "b2");
    let basis = h["h2_basis"].as_array().cloned().unwrap_or_default();
    c.expect(basis.len() == 1 && distance_to_axis(&basis[0], 2) <= 1e-8, "H2 basis not proportional to sigma3");
    c.eq(a["classification"]["simple"].as_bool(), Some(true), "simple");
    c.eq(a["classification"]["reductive"].as_bool(), Some(true), "reductive");
    let cover = file_report("cover", "klein_pauli.cv", &[])?;
    let k = &cover["cover"];
    c.eq(uint(&k["h0_cover"]), Some(1), "h0_cover");
    c.eq((uint(&k["h0_base"]), uint(&k["h2_base"])), (Some(0), Some(1)), "decomposition terms");
    c.eq(k["decomposition_ok"].as_bool(), Some(true), "decomposition_ok");
    Ok(c)
}

fn criterion_2() -> Result<Check, String> {
    let mut c = Check::new();
    let a = file_report("analyze", "klein_zeta8.cv", &[])?;
    let h = &a["cohomology"];
    c.eq(uint(&h["b0"]), Some(1), "b0");
    c.eq(uint(&h["b2"]), Some(0), "b2");
    let basis = h["h0_basis"].as_array().cloned().unwrap_or_default();
    c.expect(basis.len() == 1 && distance_to_axis(&basis[0], 2) <= 1e-8, "H0 basis not proportional to sigma3");
    let cover = file_report("cover", "klein_zeta8.cv", &[])?;
    let k = &cover["cover"];
    c.eq(uint(&k["h0_cover"]), Some(1), "h0_cover");
    c.eq((uint(&k["h0_base"]), uint(&k["h2_base"])), (Some(1), Some(0)), "decomposition terms");
    c.eq(k["decomposition_ok"].as_bool(), Some(true), "decomposition_ok");
    Ok(c)
}

fn criterion_3() -> Result<Check, String> {
    let mut c = Check::new();
    let s = file_report("scan", "four_crosscaps_family.cv", &[])?;
    let rows = s["scan"]["rows"].as_array().cloned().unwrap_or_default();
    let col = |key: &str| rows.iter().map(|r| r[key].as_u64().unwrap_or(u64::MAX)).collect::<Vec<_>>();
    let ts: Vec<f64> = rows.iter().map(|r| r["t"].as_f64().unwrap_or(f64::NAN)).collect();
    c.eq(ts, vec![-0.2, 0.0, 0.25, 0.5, 0.7], "grid");
    c.eq(col("b0"), vec![0, 1, 0, 0, 0], "b0");
    c.eq(col("b1"), vec![6, 7, 6, 7, 6], "b1");
    c.eq(col("b2"), vec![0, 0, 0, 1, 0], "b2");
    let euler: Vec<i64> = rows.iter().map(|r| r["euler"].as_i64().unwrap_or(0)).collect();
    c.eq(euler, vec![-6; 5], "euler characteristic");
    let jumps: Vec<f64> = s["scan"]["jumps"].as_array().unwrap().iter().map(|j| j["t"].as_f64().unwrap()).collect();
    c.eq(jumps, vec![0.0, 0.5], "jumps");
    Ok(c)
}

fn criterion_4() -> Result<Check, String> {
    let mut c = Check::new();
    let a = file_report("analyze", "three_crosscaps_psl.cv", &[])?;
    c.eq(uint(&a["cohomology"]["b0"]), Some(0), "b0");
    c.eq(uint(&a["cohomology"]["b2"]), Some(0), "b2");
    c.eq(a["classification"]["smooth_verdict"].as_str(), Some("smooth"), "smooth_verdict");
    c.eq(a["classification"]["good"].as_str(), Some("yes"), "good");
    c.eq(uint(&a["classification"]["projective_stabilizer_order"]), Some(1), "projective stabilizer order");
    let cover = file_report("cover", "three_crosscaps_psl.cv", &[])?;
    c.eq(uint(&cover["cover_stabilizer"]["order"]), Some(4), "restricted stabilizer order");
    Ok(c)
}

fn criterion_5() -> Result<Check, String> {
    let mut c = Check::new();
    let s = report(&["surface", "--orientable", "2", "--group", "SL(2,C)"])?;
    c.eq(s["expected_dimension"].as_i64(), Some(6), "orientable g = 2");
    let s = report(&["surface", "--nonorientable", "3", "--group", "SL(2,C)"])?;
    c.eq(s["expected_dimension"].as_i64(), Some(3), "non-orientable h = 3");
    let a = file_report("analyze", "quaternion_genus2.cv", &[])?;
    let h = &a["cohomology"];
    c.eq((uint(&h["b0"]), uint(&h["b1"]), uint(&h["b2"])), (Some(0), Some(6), Some(0)), "quaternion betti numbers");
    Ok(c)
}

fn surface_rep(seed: u64, orientable: bool) -> Representation {
    let kind = if orientable {
        SurfaceKind::Orientable { genus: 1 + (seed % 3) as usize }
    } else {
        SurfaceKind::NonOrientable { crosscaps: 2 + (seed % 4) as usize }
    };
    random_surface_representation(GroupSpec::sl2(), kind, seed).expect("corpus draws succeed")
}

fn random_sl2(rng: &mut ChaCha8Rng) -> CMatrix {
    loop {
        let m = CMatrix::from_fn(2, 2, |_, _| Complex64::new(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0));
        let det = m.determinant();
        if det.norm() > 0.1 * m.norm_squared() {
            return m / det.sqrt();
        }
    }
}

fn criterion_6() -> Result<Check, String> {
    let mut c = Check::new();
    let opts = AnalysisOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    // w − 1 = Σᵢ (∂ᵢw)(xᵢ − 1), exactly.
    let mut fox_bad = 0;
    for _ in 0..CASES {
        let d = rng.random_range(1..=4);
        let len = rng.random_range(0..=20);
        let w = FreeWord::from_letters((0..len).map(|_| (rng.random_range(0..d), rng.random_bool(0.5))));
        let mut rhs = GroupRingElement::zero();
        for i in 0..d {
            for (u, k) in w.fox_derivative(i).terms() {
                rhs.add_term(u.multiply(&FreeWord::generator(i)), k);
                rhs.add_term(u.clone(), -k);
            }
        }
        let mut lhs = GroupRingElement::from_word(w);
        lhs.add_term(FreeWord::identity(), -1);
        fox_bad += usize::from(lhs != rhs);
    }
    c.eq(fox_bad, 0, "Fox identity failures");

    let mut chain = 0.0f64;
    let (mut closed_bad, mut decomp_bad, mut duality_bad, mut conj_bad) = (0, 0, 0, 0);
    for seed in 0..CASES {
        let rep = surface_rep(seed, false);
        chain = chain.max(build_complex(&rep, &opts).map_err(|e| e.to_string())?.relative_chain_residual());
        let r = cohomology_report(&rep, &opts).map_err(|e| e.to_string())?;
        let closed = h0_h2_closed_form(&rep, &opts).map_err(|e| e.to_string())?;
        closed_bad += usize::from((closed.h0, closed.h2) != (r.b0, r.b2));
        let cover = orientation_double_cover(&rep, &opts).map_err(|e| e.to_string())?;
        decomp_bad += usize::from(cover.h0_cover != r.b0 + r.b2);

        let orientable = surface_rep(seed, true);
        chain = chain.max(build_complex(&orientable, &opts).map_err(|e| e.to_string())?.relative_chain_residual());
        let o = cohomology_report(&orientable, &opts).map_err(|e| e.to_string())?;
        duality_bad += usize::from(o.b2 != o.b0);

        let base = if seed % 2 == 0 { &rep } else { &orientable };
        let before = cohomology_report(base, &opts).map_err(|e| e.to_string())?;
        let moved = base.conjugated(&random_sl2(&mut rng)).map_err(|e| e.to_string())?;
        let after = cohomology_report(&moved, &opts).map_err(|e| e.to_string())?;
        conj_bad += usize::from((before.b0, before.b1, before.b2) != (after.b0, after.b1, after.b2));
    }
    c.expect(chain <= 1e-9, format!("chain residual {chain:e}"));
    c.eq(closed_bad, 0, "closed-form mismatches");
    c.eq(decomp_bad, 0, "decomposition mismatches");
    c.eq(duality_bad, 0, "duality mismatches");
    c.eq(conj_bad, 0, "conjugation mismatches");

    let mut worst = (0.0f64, 0.0f64, 0.0f64);
    for seed in 0..CASES {
        let rep = surface_rep(seed, true);
        let d = rep.generator_count();
        let r = cohomology_report(&rep, &opts).map_err(|e| e.to_string())?;
        let form = pairing_form(&rep, &opts).map_err(|e| e.to_string())?;
        let mut draw = || {
            let flat = r.z1_basis.iter().fold(CVector::zeros(d * rep.lie_dim()), |acc, v| {
                acc + v * Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
            });
            Cocycle::from_flat(&flat, d).unwrap()
        };
        let (a, b, e) = (draw(), draw(), draw());
        let s = Complex64::new(rng.random::<f64>(), rng.random::<f64>());
        let xi = CVector::from_fn(rep.lie_dim(), |_, _| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
        let delta = Cocycle::coboundary(&rep, &xi);
        let w = |x: &Cocycle, y: &Cocycle| cup_pairing(&rep, x, y, &opts).map_err(|e| e.to_string());
        let scale = |x: &Cocycle, y: &Cocycle| form.matrix.norm() * x.norm().max(1e-300) * y.norm().max(1e-300);
        let antisym = (w(&a, &b)? + w(&b, &a)?).norm() / scale(&a, &b);
        let combo = a.scale(s).add(&e);
        let bilinear = (w(&combo, &b)? - s * w(&a, &b)? - w(&e, &b)?).norm() / (scale(&combo, &b) + scale(&a, &b) * s.norm() + scale(&e, &b));
        let descent = w(&delta, &b)?.norm() / scale(&delta, &b);
        worst = (worst.0.max(antisym), worst.1.max(bilinear), worst.2.max(descent));
    }
    c.expect(worst.0 <= 1e-8, format!("antisymmetry residual {:e}", worst.0));
    c.expect(worst.1 <= 1e-8, format!("bilinearity residual {:e}", worst.1));
    c.expect(worst.2 <= 1e-8, format!("descent residual {:e}", worst.2));

    let g = file_report("pairing", "quaternion_genus2.cv", &["--gram"])?;
    c.eq(uint(&g["gram"]["rank"]["rank"]), Some(6), "quaternion Gram rank");
    Ok(c)
}

fn gaps_ok(decision: &Value, c: &mut Check, what: &str) {
    if let Some(g) = decision["gap_ratio"].as_f64() {
        c.expect(g >= 1e6, format!("{what}: gap ratio {g:e}"));
    }
    c.expect(decision["warning"] == false, format!("{what}: gap warning"));
}

fn criterion_7() -> Result<Check, String> {
    let mut c = Check::new();
    for file in ["klein_pauli.cv", "klein_zeta8.cv", "three_crosscaps_psl.cv", "quaternion_genus2.cv", "unipotent_free.cv"] {
        let a = file_report("analyze", file, &[])?;
        gaps_ok(&a["cohomology"]["rank_d1"], &mut c, &format!("{file} d1"));
        gaps_ok(&a["cohomology"]["rank_d2"], &mut c, &format!("{file} d2"));
        if !a["closed_form"].is_null() {
            gaps_ok(&a["closed_form"]["h0_decision"], &mut c, &format!("{file} closed-form H0"));
            gaps_ok(&a["closed_form"]["h2_decision"], &mut c, &format!("{file} closed-form H2"));
        }
        let gap_warnings = a["warnings"].as_array().unwrap().iter().filter(|w| w["kind"] == "rank_gap").count();
        c.eq(gap_warnings, 0, &format!("{file} gap warnings"));
    }
    for file in ["klein_pauli.cv", "klein_zeta8.cv", "three_crosscaps_psl.cv"] {
        let k = file_report("cover", file, &[])?;
        gaps_ok(&k["cover"]["h0_cover_decision"], &mut c, &format!("{file} cover H0"));
    }
    for file in ["four_crosscaps_family.cv", "three_crosscaps_psl_family.cv"] {
        let s = file_report("scan", file, &[])?;
        for row in s["scan"]["rows"].as_array().unwrap() {
            let t = row["t"].as_f64().unwrap();
            if let Some(g) = row["min_gap_ratio"].as_f64() {
                c.expect(g >= 1e6, format!("{file} t = {t}: gap ratio {g:e}"));
            }
            c.expect(row["warnings"].as_array().unwrap().is_empty(), format!("{file} t = {t}: warnings"));
        }
    }
    Ok(c)
}

fn criterion_8() -> Result<Check, String> {
    let mut c = Check::new();
    let a = file_report("analyze", "unipotent_free.cv", &[])?;
    c.eq(a["classification"]["reductive"].as_bool(), Some(false), "unipotent reductive");
    let out = run(&["analyze", golden("klein_invalid.cv").to_str().unwrap()]);
    c.eq(out.status.code(), Some(2), "invalid Klein exit code");
    Ok(c)
}

fn main() {
    let criteria: [(u32, &str, fn() -> Result<Check, String>); 8] = [
        (1, "Klein bottle, Pauli images", criterion_1),
        (2, "Klein bottle, diagonal images", criterion_2),
        (3, "four-crosscap family scan", criterion_3),
        (4, "three-crosscap PSL(2) representation", criterion_4),
        (5, "dimension formulas", criterion_5),
        (6, "randomized property suite", criterion_6),
        (7, "rank-decision robustness", criterion_7),
        (8, "negative controls", criterion_8),
    ];
    let start = Instant::now();
    let mut unexpected = Vec::new();
    for (n, name, check) in criteria {
        let t = Instant::now();
        let failures = match check() {
            Ok(c) => c.failures,
            Err(e) => vec![e],
        };
        let known = KNOWN_DEVIATIONS.contains(&n);
        let elapsed = t.elapsed().as_secs_f64();
        if failures.is_empty() {
            println!("criterion {n}: PASS  {name} ({elapsed:.2}s)");
            if known {
                unexpected.push(format!("criterion {n} passes but is listed as a known deviation"));
            }
        } else {
            let tag = if known { " [known deviation]" } else { "" };
            println!("criterion {n}: FAIL{tag}  {name} ({elapsed:.2}s): {}", failures.join("; "));
            if !known {
                unexpected.push(format!("criterion {n} failed"));
            }
        }
    }
    let total = start.elapsed().as_secs_f64();
    println!("total {total:.2}s");
    if total > 60.0 {
        unexpected.push(format!("suite took {total:.1}s"));
    }
    if !unexpected.is_empty() {
        eprintln!("acceptance: {}", unexpected.join("; "));
        std::process::exit(1);
    }
}
