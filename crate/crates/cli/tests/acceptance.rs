//! Acceptance run: one PASS/FAIL line per criterion, each checked at its
//! stated tolerance and within its time limit.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hyperspace_cli::{cmd_path, PathArgs};
use hyperspace_core::document::{parse_set, FrameStream};
use hyperspace_core::metric::certified::{certified_sup, SubdivisionLimits};
use hyperspace_core::metric::{brute_force_hausdorff, directed_distance};
use hyperspace_core::paths::JUNCTION_TOL;
use hyperspace_core::verify::{self, case_seed, GeneratorConfig, MixWeights, SetGenerator, SuiteReport};
use hyperspace_core::{
    canonical_box, connect, hausdorff, nested_box_hausdorff, point_to_box_path, translation_path, CompactSet,
    Primitive,
};

type Outcome = Result<String, String>;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn load(name: &str) -> CompactSet {
    parse_set(&std::fs::read_to_string(fixture(name)).expect("fixture exists")).expect("fixture parses")
}

fn close(what: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    if (got - want).abs() <= tol {
        Ok(())
    } else {
        Err(format!("{what} = {got}, expected {want} ± {tol:e}"))
    }
}

fn suite_ok(report: &SuiteReport) -> Result<(), String> {
    match report.failures.first() {
        None => Ok(()),
        Some(f) => Err(format!(
            "{}: {} failure(s), first: case {} (seed {}): {} ({} > {})",
            report.suite,
            report.failures.len(),
            f.case,
            f.seed,
            f.description,
            f.observed,
            f.bound
        )),
    }
}

/// Directed distances of a fixture pair, each value and certified error
/// within `tol` of the expected values.
fn fixture_pair(a: &str, b: &str, want_ab: f64, want_ba: f64, tol: f64) -> Outcome {
    let (a, b) = (load(a), load(b));
    let ab = directed_distance(&a, &b, 1e-9).map_err(|e| e.to_string())?;
    let ba = directed_distance(&b, &a, 1e-9).map_err(|e| e.to_string())?;
    let h = hausdorff(&a, &b, 1e-9).map_err(|e| e.to_string())?;
    close("dbar(A,B)", ab.value, want_ab, tol)?;
    close("dbar(B,A)", ba.value, want_ba, tol)?;
    close("h", h.value, want_ab.max(want_ba), tol)?;
    for (name, err) in [("dbar(A,B)", ab.err), ("dbar(B,A)", ba.err), ("h", h.err)] {
        if err > tol {
            return Err(format!("{name} certified error {err:e} exceeds {tol:e}"));
        }
    }
    Ok(format!("dbar(A,B) = {}, dbar(B,A) = {}, h = {}", ab.value, ba.value, h.value))
}

fn segments() -> Outcome {
    fixture_pair("segment_a.json", "segment_b.json", 1.0, 2f64.sqrt(), 1e-6)
}

fn rectangle_boundaries() -> Outcome {
    fixture_pair("frame_inner.json", "frame_outer.json", 2.5, 13f64.sqrt(), 1e-6)
}

/// Coordinate range of the nested pairs, per dimension, small enough that
/// the oracle grid at resolution 1e-2 stays within its point budget.
fn nested_scale(dim: usize) -> f64 {
    [5.0, 1.0, 0.25, 0.1, 0.05][dim - 1]
}

fn nested_boxes() -> Outcome {
    let mut worst_certified = 0.0f64;
    let mut worst_oracle = 0.0f64;
    for i in 0..200 {
        let dim = 1 + i % 5;
        let mut config = GeneratorConfig::new(dim, case_seed(3, i));
        config.scale = nested_scale(dim);
        let mut gen = SetGenerator::new(config);
        let outer = gen.axis_box();
        let inner = canonical_box(&gen.point_in(&outer), &gen.point_in(&outer)).map_err(|e| e.to_string())?;
        let closed = nested_box_hausdorff(&inner, &outer).map_err(|e| e.to_string())?;

        // the general subdivision search, run on the outer box directly
        let target: CompactSet = inner.clone().into();
        let sup = certified_sup(
            &[Primitive::Box(&outer)],
            &target.primitives(),
            1e-10,
            0.0,
            &SubdivisionLimits::default(),
        )
        .map_err(|e| format!("pair {i}: {e}"))?;
        let general = hausdorff(&inner.clone().into(), &outer.clone().into(), 1e-10).map_err(|e| e.to_string())?;
        for v in [sup.lower, sup.upper, general.value] {
            worst_certified = worst_certified.max((v - closed).abs());
            close(&format!("pair {i} (dim {dim}) certified"), v, closed, 1e-9)?;
        }

        let brute = brute_force_hausdorff(&inner.into(), &outer.into(), 1e-2).map_err(|e| format!("pair {i}: {e}"))?;
        worst_oracle = worst_oracle.max((brute.value - closed).abs());
        close(&format!("pair {i} (dim {dim}) oracle"), brute.value, closed, brute.err)?;
    }
    Ok(format!(
        "200 pairs, max |certified - closed| = {worst_certified:.1e}, max |oracle - closed| = {worst_oracle:.1e}"
    ))
}

fn metric_axioms() -> Outcome {
    let reports: Vec<SuiteReport> = (1..=3)
        .map(|dim| {
            let cases = if dim == 1 { 334 } else { 333 };
            verify::run_metric_axioms(&GeneratorConfig::new(dim, 11), cases, 1e-9)
        })
        .collect();
    let report = SuiteReport::merge("metric-axioms", reports);
    suite_ok(&report)?;
    Ok(format!("{} triples, 0 violations", report.cases))
}

fn translation_modulus() -> Outcome {
    let mut pairs = 0usize;
    for i in 0..50 {
        let mut gen = SetGenerator::new(GeneratorConfig::new(1 + i % 3, case_seed(5, i)));
        let a = gen.set();
        let v = gen.point();
        let path = translation_path(&a, &v).map_err(|e| e.to_string())?;
        let report = verify::run_path_modulus(&path, 101, 1e-9);
        suite_ok(&report).map_err(|e| format!("path {i}: {e}"))?;
        pairs += report.cases;
    }

    // a singleton moves rigidly: the bound is attained
    let mut worst = 0.0f64;
    for i in 0..50 {
        let mut config = GeneratorConfig::new(1 + i % 3, case_seed(6, i));
        config.weights = MixWeights::only_points();
        config.max_points = 1;
        let mut gen = SetGenerator::new(config);
        let a: CompactSet = gen.point().into();
        let v = gen.point();
        let path = translation_path(&a, &v).map_err(|e| e.to_string())?;
        let frames: Vec<CompactSet> = (0..=100).map(|k| path.eval(k as f64 / 100.0)).collect();
        for j in 0..frames.len() {
            for k in j + 1..frames.len() {
                let h = hausdorff(&frames[j], &frames[k], 1e-9).map_err(|e| e.to_string())?;
                let want = v.norm() * (k - j) as f64 / 100.0;
                worst = worst.max((h.value - want).abs());
                close(&format!("singleton {i}, t = {}, {}", j as f64 / 100.0, k as f64 / 100.0), h.value, want, 1e-9)?;
            }
        }
    }
    Ok(format!("{pairs} grid pairs within bound, singleton sharpness max gap {worst:.1e}"))
}

fn rectangle_modulus() -> Outcome {
    let mut pairs = 0usize;
    for i in 0..50 {
        let dim = 1 + i % 5;
        let mut gen = SetGenerator::new(GeneratorConfig::new(dim, case_seed(7, i)));
        let target = loop {
            let b = gen.axis_box();
            if !b.is_point() {
                break b;
            }
        };
        let a = gen.point_in(&target);
        let path = point_to_box_path(&a, target.lo(), target.hi()).map_err(|e| e.to_string())?;

        let s = (0..dim)
            .map(|k| {
                let (ak, m, big_m) = (a.coords()[k], target.lo().coords()[k], target.hi().coords()[k]);
                (ak - m).max(big_m - ak)
            })
            .fold(0.0, f64::max);
        close(&format!("path {i} Lipschitz constant"), path.lipschitz(), (dim as f64).sqrt() * s, 1e-12)?;

        let report = verify::run_path_modulus(&path, 101, 1e-9);
        suite_ok(&report).map_err(|e| format!("path {i}: {e}"))?;
        pairs += report.cases;

        let frames: Vec<CompactSet> = (0..=100).map(|k| path.eval(k as f64 / 100.0)).collect();
        for j in 0..frames.len() {
            for k in j..frames.len() {
                let d = directed_distance(&frames[j], &frames[k], 1e-9).map_err(|e| e.to_string())?;
                if d.value != 0.0 {
                    return Err(format!("path {i}: dbar(f({}), f({})) = {} is not 0", j, k, d.value));
                }
            }
        }
    }
    Ok(format!("{pairs} grid pairs within sqrt(n)·S·|dt|, nesting exact"))
}

fn contraction() -> Outcome {
    let mut config = GeneratorConfig::new(2, 13);
    config.scale = 0.5;
    let report = verify::run_contraction(&config, 1000, 1e-9, 20, 1e-3);
    suite_ok(&report)?;
    Ok(format!("{} cases, 20 checked against the oracle at resolution 1e-3", report.cases))
}

fn connectivity() -> Outcome {
    let mut pairs: Vec<(CompactSet, CompactSet)> = vec![
        (load("segment_a.json"), load("segment_b.json")),
        (load("frame_inner.json"), load("frame_outer.json")),
    ];
    for i in 0..48 {
        let mut gen = SetGenerator::new(GeneratorConfig::new(1 + i % 3, case_seed(17, i)));
        pairs.push((gen.set(), gen.set()));
    }
    let mut worst_end = 0.0f64;
    for (i, (a, b)) in pairs.iter().enumerate() {
        let path = connect(a, b).map_err(|e| format!("pair {i}: {e}"))?;
        for (t, want, name) in [(0.0, a, "start"), (1.0, b, "end")] {
            let h = hausdorff(&path.eval(t), want, 1e-9).map_err(|e| e.to_string())?;
            worst_end = worst_end.max(h.value);
            if h.value > JUNCTION_TOL {
                return Err(format!("pair {i}: h(eval({t}), {name}) = {}", h.value));
            }
        }
        let report = verify::run_path_modulus(&path, 61, 1e-9);
        suite_ok(&report).map_err(|e| format!("pair {i}: {e}"))?;
    }
    Ok(format!("{} pairs, endpoint gap max {worst_end:.1e}, 61-point modulus holds", pairs.len()))
}

fn figure_frames() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().join("frames.json");
    let svg = dir.path().join("svg");
    let args = PathArgs {
        spec: fixture("point_to_box.json"),
        frames: 5,
        out: out.clone(),
        svg: Some(svg.clone()),
    };
    cmd_path(&args, &mut Vec::new()).map_err(|e| e.to_string())?;

    let stream: FrameStream =
        serde_json::from_str(&std::fs::read_to_string(&out).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let sets = stream.sets().map_err(|e| e.to_string())?;
    let (a, m, big_m) = ([0.0, 1.0], [-5.0, -2.0], [4.0, 3.0]);
    for (frame, set, want_t) in stream.frames.iter().zip(&sets).zip([0.0, 0.25, 0.5, 0.75, 1.0]).map(|((f, s), t)| (f, s, t)) {
        close("t", frame.t, want_t, 0.0)?;
        let CompactSet::Box(b) = set else {
            return Err(format!("frame at t = {want_t} is not a box"));
        };
        for k in 0..2 {
            close(&format!("lo[{k}] at t = {want_t}"), b.lo().coords()[k], a[k] + want_t * (m[k] - a[k]), 1e-12)?;
            close(&format!("hi[{k}] at t = {want_t}"), b.hi().coords()[k], a[k] + want_t * (big_m[k] - a[k]), 1e-12)?;
        }
    }
    let files = (0..5)
        .map(|i| svg.join(format!("frame_{i:04}.svg")))
        .filter(|p| std::fs::read_to_string(p).is_ok_and(|s| s.starts_with("<svg")))
        .count();
    if files != 5 {
        return Err(format!("{files} of 5 SVG frames written"));
    }
    Ok("5 frames match the corner formula, 5 SVG files".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("segment pair distances", 1, segments),
        ("rectangle boundary distances", 5, rectangle_boundaries),
        ("nested box closed form", 30, nested_boxes),
        ("metric axioms", 60, metric_axioms),
        ("translation path modulus", 60, translation_modulus),
        ("rectangle path modulus", 60, rectangle_modulus),
        ("contraction bound", 60, contraction),
        ("end-to-end connectivity", 120, connectivity),
        ("figure frames", 60, figure_frames),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let started = Instant::now();
        let outcome = run();
        let elapsed = started.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(limit) => {
                Err(format!("took {:.2} s, limit {limit} s ({detail})", elapsed.as_secs_f64()))
            }
            other => other,
        };
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {}: {status} {name} [{:.2} s] {detail}", i + 1, elapsed.as_secs_f64());
        failed += usize::from(outcome.is_err());
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
