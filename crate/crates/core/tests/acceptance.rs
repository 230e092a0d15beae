//! Acceptance gate: eight criteria, one PASS/FAIL line each.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use qfreq::blowup::{blowup_sequence, identify_catalog, BlowupReport};
use qfreq::field::{energy_decay_check, frequency, frequency_profile, holder_fit, sample_field, PolarGrid};
use qfreq::homogeneous::{
    build_match_table, enumerate_entries, random_form, read_table_csv, sheet_eval, sheet_gradient,
    Continuation, FormTag, FourTuple, FrequencyClass, HomogeneousPair, Partner, Relation, RowClass,
};
use qfreq::minimizer::synth::{random_trace, SynthOptions};
use qfreq::minimizer::{check_oracle, frequency_from_spectrum, minimize, BoundaryTrace};
use qfreq::qcore::{QPoint, Vec2};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GOLDEN: &str = include_str!("data/match_table.csv");

fn grid() -> PolarGrid {
    PolarGrid::new(64, 256).unwrap()
}

fn sixteen_radii() -> Vec<f64> {
    (1..=16).map(|k| k as f64 / 16.0).collect()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, ok_detail: String) -> Outcome {
    if failures.is_empty() {
        Outcome { pass: true, detail: ok_detail }
    } else {
        Outcome { pass: false, detail: failures.join("; ") }
    }
}

fn match_table() -> Outcome {
    let mut fail = Vec::new();
    let rows = build_match_table();
    let golden = read_table_csv(GOLDEN.as_bytes()).unwrap();
    if rows.iter().map(|r| r.to_record()).collect::<Vec<_>>() != golden {
        fail.push("table differs from golden file".into());
    }
    let expected: BTreeSet<(usize, usize)> =
        [(1, 2), (1, 3), (1, 6), (2, 4), (2, 5), (3, 4), (3, 5), (4, 6), (5, 6)].into_iter().collect();
    let mut inadmissible = BTreeSet::new();
    for r in &rows {
        let Partner::Form(fj) = r.form_j else {
            if r.class != RowClass::Class(FrequencyClass::AllPositiveIntegers) {
                fail.push(format!("doubled {} is not integer", r.form_i));
            }
            continue;
        };
        let key = (r.form_i.index(), fj.index());
        if key == (7, 7) {
            if r.class != RowClass::Excluded {
                fail.push("(7,7) not excluded".into());
            }
            continue;
        }
        if !r.sum_admissible {
            inadmissible.insert(key);
            continue;
        }
        match (r.continuation, r.class) {
            (Continuation::Identity, RowClass::Class(FrequencyClass::AllPositiveIntegers)) => {}
            (Continuation::Identity, c) => fail.push(format!("identity {key:?} gives {c}")),
            (Continuation::Swap, RowClass::Class(FrequencyClass::NoSolution)) => {}
            (Continuation::Swap, RowClass::Class(FrequencyClass::OddHalfIntegers)) => {
                if !r.constraints.iter().any(|c| c.relation == Relation::Negated) {
                    fail.push(format!("swap {key:?} lacks a sign constraint"));
                }
            }
            (Continuation::Swap, c) => fail.push(format!("swap {key:?} gives {c}")),
        }
    }
    if inadmissible != expected {
        fail.push(format!("sum-inadmissible pairs {inadmissible:?}"));
    }
    outcome(fail, format!("{} rows, {} sum-inadmissible pairs", rows.len(), inadmissible.len()))
}

fn half_integer_frequency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let all = enumerate_entries(8, 2);
    let chosen: Vec<&HomogeneousPair> = all.choose_multiple(&mut rng, 50).collect();
    let mut fail = Vec::new();
    let mut worst = 0.0f64;
    for e in &chosen {
        let f = sample_field(e, grid());
        for &r in &[0.25, 0.5, 0.75, 1.0] {
            match frequency(&f, r) {
                Ok(n) => {
                    let err = (n - e.n).abs();
                    worst = worst.max(err);
                    if err > 0.02 {
                        fail.push(format!("N={} r={r}: {n}", e.n));
                    }
                }
                Err(err) => fail.push(format!("N={} r={r}: {err}", e.n)),
            }
        }
    }
    outcome(fail, format!("{} entries, max |N(r) - k/2| = {worst:.2e}", chosen.len()))
}

fn classes() -> impl Iterator<Item = (Continuation, u64)> {
    [Continuation::Identity, Continuation::Swap].into_iter().flat_map(|c| (0..10).map(move |s| (c, s)))
}

fn monotonicity() -> Outcome {
    let mut fail = Vec::new();
    let mut worst = 0.0f64;
    for (class, seed) in classes() {
        let t = random_trace(SynthOptions::new(class, 256), 1000 + seed);
        let r = minimize(&t, grid(), 1e-6).unwrap();
        match frequency_profile(&r.field, &sixteen_radii()) {
            Ok(p) => {
                worst = worst.max(p.monotonicity_defect);
                if p.monotonicity_defect > 0.02 {
                    fail.push(format!("{class} seed {seed}: defect {}", p.monotonicity_defect));
                }
            }
            Err(e) => fail.push(format!("{class} seed {seed}: {e}")),
        }
    }
    outcome(fail, format!("20 traces, max defect {worst:.2e}"))
}

fn oracle_equivalence() -> Outcome {
    let mut fail = Vec::new();
    let (mut worst, mut sweeps) = (0.0f64, 0usize);
    for (class, seed) in classes() {
        let t = random_trace(SynthOptions::new(class, 256), 2000 + seed);
        let mut r = minimize(&t, grid(), 1e-6).unwrap();
        match check_oracle(&mut r, 20_000, 1e-10) {
            Ok(out) => {
                let gap = r.oracle_gap.unwrap();
                worst = worst.max(gap);
                sweeps = sweeps.max(out.sweeps);
                if gap.is_nan() || gap > 0.01 {
                    fail.push(format!("{class} seed {seed}: gap {gap:e}"));
                }
            }
            Err(e) => fail.push(format!("{class} seed {seed}: {e}")),
        }
    }
    outcome(fail, format!("20 traces, max gap {worst:.2e}, max sweeps {sweeps}"))
}

fn blowup_identity() -> Outcome {
    let t = BoundaryTrace::from_lifted(256, |a| Vec2::polar(1.5 * a) + 0.2 * Vec2::polar(3.5 * a)).unwrap();
    let run = || -> Result<BlowupReport, String> {
        let r = minimize(&t, grid(), 1e-6).map_err(|e| e.to_string())?;
        let seq = blowup_sequence(&r.spectrum, &[0.4, 0.2, 0.1], grid()).map_err(|e| e.to_string())?;
        let m = identify_catalog(seq.limit(), 1e-9).map_err(|e| e.to_string())?;
        Ok(BlowupReport::new(&seq, &m))
    };
    match run() {
        Err(e) => outcome(vec![e], String::new()),
        Ok(rep) => {
            let mut fail = Vec::new();
            if (rep.fitted_n - 1.5).abs() > 0.02 || rep.rounded_n != 1.5 {
                fail.push(format!("N = {}", rep.fitted_n));
            }
            if rep.continuation != Continuation::Swap {
                fail.push(format!("continuation {}", rep.continuation));
            }
            let rel = (rep.boundary_mass - 2.0 / 3.0).abs() / (2.0 / 3.0);
            if rel > 0.02 {
                fail.push(format!("H(1) = {}", rep.boundary_mass));
            }
            outcome(fail, format!("N = {:.5}, swap, H(1) = {:.5}", rep.fitted_n, rep.boundary_mass))
        }
    }
}

fn dichotomy() -> Outcome {
    let mut fail = Vec::new();
    let mut details = Vec::new();
    let fixed = BoundaryTrace::from_fn(256, |th| {
        let z = Vec2::polar(th);
        QPoint::new(Vec2::new(1.0, 0.0) + z, Vec2::new(-1.0, 0.0) - z)
    })
    .unwrap();
    let mut opts = SynthOptions::new(Continuation::Identity, 256);
    opts.constant = true;
    for (name, t) in [("constant+z", fixed), ("random", random_trace(opts, 6))] {
        let r = minimize(&t, grid(), 1e-6).unwrap();
        let n0 = frequency_from_spectrum(&r.spectrum);
        if n0 != Ok(0.0) {
            fail.push(format!("{name}: spectral N0 {n0:?}"));
        }
        match frequency_profile(&r.field, &sixteen_radii()) {
            Ok(p) => {
                let n_small = p.n[0];
                details.push(format!("{name}: N({}) = {n_small:.2e}", p.radii[0]));
                if n_small > 0.05 {
                    fail.push(format!("{name}: N at smallest radius {n_small}"));
                }
            }
            Err(e) => fail.push(format!("{name}: {e}")),
        }
    }
    outcome(fail, details.join(", "))
}

fn holder_and_decay() -> Outcome {
    let mut fail = Vec::new();
    let t = FourTuple::new(1.0, 0.0, 0.0, 1.0);
    let half = HomogeneousPair::new(0.5, t, -t, Continuation::Swap);
    let alpha = holder_fit(&sample_field(&half, grid()), 200, 7);
    match &alpha {
        Ok(a) if (a - 0.5).abs() <= 0.05 => {}
        other => fail.push(format!("holder exponent {other:?}")),
    }
    let entries = enumerate_entries(8, 7);
    let mut worst = 0.0f64;
    for e in &entries {
        let f = sample_field(e, grid());
        for &s in &[0.25, 0.5] {
            let (lhs, rhs) = energy_decay_check(&f, s, 1.0);
            worst = worst.max(lhs / rhs);
            if lhs > rhs * 1.02 {
                fail.push(format!("N={} s={s}: {lhs} > {rhs}", e.n));
            }
        }
    }
    outcome(
        fail,
        format!("alpha = {:.4}, {} entries, max D(sr)/(s D(r)) = {worst:.4}", alpha.as_ref().copied().unwrap_or(f64::NAN), entries.len()),
    )
}

fn gradients() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut fail = Vec::new();
    let (mut worst_conf, mut worst_fd) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let tag = FormTag::from_index(rng.gen_range(1..=6)).unwrap();
        let t = random_form(tag, &mut rng).to_tuple().unwrap();
        let n = 0.5 * rng.gen_range(1..=8) as f64;
        let (r, th) = (rng.gen_range(0.1..1.0), rng.gen_range(0.0..std::f64::consts::TAU));
        let j = sheet_gradient(t, n, r, th);
        let (cx, cy) = (Vec2::new(j[0][0], j[1][0]), Vec2::new(j[0][1], j[1][1]));
        let scale = cx.norm_sq() + cy.norm_sq();
        let conf = ((cx.norm_sq() - cy.norm_sq()).abs() + cx.dot(cy).abs()) / scale;
        worst_conf = worst_conf.max(conf);

        let (x, y) = (r * th.cos(), r * th.sin());
        let at = |x: f64, y: f64| sheet_eval(t, n, x.hypot(y), y.atan2(x).rem_euclid(std::f64::consts::TAU));
        let h = 1e-6;
        // Stay on one side of the slit.
        let near_slit = !(1e-3..=std::f64::consts::TAU - 1e-3).contains(&th);
        if near_slit {
            continue;
        }
        let dx = (1.0 / (2.0 * h)) * (at(x + h, y) - at(x - h, y));
        let dy = (1.0 / (2.0 * h)) * (at(x, y + h) - at(x, y - h));
        let fd = ((dx - cx).norm() + (dy - cy).norm()) / scale.sqrt();
        worst_fd = worst_fd.max(fd);
    }
    if worst_conf > 1e-12 {
        fail.push(format!("conformal identity defect {worst_conf:e}"));
    }
    if worst_fd > 1e-6 {
        fail.push(format!("finite-difference mismatch {worst_fd:e}"));
    }
    outcome(fail, format!("conformal defect {worst_conf:.1e}, FD mismatch {worst_fd:.1e}"))
}

#[test]
fn acceptance() {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Check, Option<Duration>); 8] = [
        ("match-table fidelity", match_table, Some(Duration::from_secs(1))),
        ("half-integer frequency", half_integer_frequency, Some(Duration::from_secs(60))),
        ("monotonicity", monotonicity, Some(Duration::from_secs(120))),
        ("oracle equivalence", oracle_equivalence, Some(Duration::from_secs(600))),
        ("blow-up identity", blowup_identity, None),
        ("dichotomy", dichotomy, None),
        ("Hoelder exponent and energy decay", holder_and_decay, None),
        ("conformality and gradients", gradients, None),
    ];
    let mut failed = Vec::new();
    for (k, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut o = check();
        let took = start.elapsed();
        if let Some(l) = limit {
            if took > *l {
                o.pass = false;
                o.detail = format!("{}; runtime {took:.2?} exceeds {l:?}", o.detail);
            }
        }
        println!(
            "criterion {} ({name}): {} [{took:.2?}] {}",
            k + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.pass {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
