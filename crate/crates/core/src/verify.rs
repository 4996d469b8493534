//! Randomised property suites for the metric and the path constructions.
//!
//! Every case draws its inputs from its own generator, seeded from the suite
//! seed and the case index, so any failure can be replayed in isolation with
//! [`case_seed`]. Cases run in parallel and are reported in index order.

use std::time::Instant;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::document::uniform_grid;
use crate::error::Result;
use crate::geometry::{canonical_box, AxisBox, CompactSet, Point, Segment};
use crate::metric::{brute_force_hausdorff_with, hausdorff_enclosure, DistanceResult, OracleConfig, SubdivisionLimits};
use crate::paths::{self, HyperPath, JUNCTION_TOL};

/// Cell budget of each distance computed by the suites. A search that runs
/// out reports the enclosure it reached; the checks only fail on a certain
/// violation, so a wider enclosure costs sharpness, not soundness.
pub const SUITE_LIMITS: SubdivisionLimits = SubdivisionLimits { max_cells: 200_000 };

fn hausdorff(a: &CompactSet, b: &CompactSet, tol: f64) -> Result<DistanceResult> {
    hausdorff_enclosure(a, b, tol, &SUITE_LIMITS)
}

/// Sets whose Hausdorff distance is at most this are treated as equal.
pub const TOL_EQ: f64 = 1e-7;

/// Relative frequency of each kind of generated set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixWeights {
    pub points: f64,
    pub boxes: f64,
    pub segments: f64,
    pub unions: f64,
}

impl Default for MixWeights {
    fn default() -> Self {
        MixWeights {
            points: 1.0,
            boxes: 1.0,
            segments: 1.0,
            unions: 1.0,
        }
    }
}

impl MixWeights {
    pub fn only_boxes() -> Self {
        MixWeights {
            points: 0.0,
            boxes: 1.0,
            segments: 0.0,
            unions: 0.0,
        }
    }

    pub fn only_points() -> Self {
        MixWeights {
            points: 1.0,
            boxes: 0.0,
            segments: 0.0,
            unions: 0.0,
        }
    }
}

/// Parameters of a [`SetGenerator`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub dim: usize,
    pub weights: MixWeights,
    /// Coordinates are drawn from `[-scale, scale]`.
    pub scale: f64,
    pub max_union_arity: usize,
    /// Largest number of points in a generated finite set.
    pub max_points: usize,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn new(dim: usize, seed: u64) -> Self {
        GeneratorConfig {
            dim,
            weights: MixWeights::default(),
            scale: 10.0,
            max_union_arity: 4,
            max_points: 4,
            seed,
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        GeneratorConfig { seed, ..self }
    }
}

/// SplitMix64 finaliser: the seed used by case `index` of a suite run with
/// `seed`.
pub fn case_seed(seed: u64, index: usize) -> u64 {
    let mut z = seed.wrapping_add((index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic stream of random compact sets.
#[derive(Debug, Clone)]
pub struct SetGenerator {
    config: GeneratorConfig,
    rng: ChaCha8Rng,
    kinds: WeightedIndex<f64>,
}

impl SetGenerator {
    /// Panics if all mix weights are zero or any is negative.
    pub fn new(config: GeneratorConfig) -> Self {
        let w = config.weights;
        let kinds = WeightedIndex::new([w.points, w.boxes, w.segments, w.unions])
            .expect("mix weights must be non-negative and not all zero");
        SetGenerator {
            config,
            rng: ChaCha8Rng::seed_from_u64(config.seed),
            kinds,
        }
    }

    pub fn config(&self) -> &GeneratorConfig {
        &self.config
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn coord(&mut self) -> f64 {
        let s = self.config.scale;
        self.rng.gen_range(-s..=s)
    }

    pub fn point(&mut self) -> Point {
        Point::new((0..self.config.dim).map(|_| self.coord()).collect()).expect("finite coordinates")
    }

    /// Box spanned by two uniform points.
    pub fn axis_box(&mut self) -> AxisBox {
        let (u, v) = (self.point(), self.point());
        canonical_box(&u, &v).expect("same dimension")
    }

    /// Uniform point of `b`.
    pub fn point_in(&mut self, b: &AxisBox) -> Point {
        let coords = b
            .lo()
            .coords()
            .iter()
            .zip(b.hi().coords())
            .map(|(&l, &h)| if l < h { self.rng.gen_range(l..=h) } else { l })
            .collect();
        Point::new(coords).expect("finite coordinates")
    }

    fn primitive(&mut self, kind: usize) -> CompactSet {
        match kind {
            0 => {
                let n = self.rng.gen_range(1..=self.config.max_points.max(1));
                CompactSet::points((0..n).map(|_| self.point()).collect()).expect("non-empty")
            }
            1 => self.axis_box().into(),
            _ => {
                let (p, q) = (self.point(), self.point());
                Segment::new(p, q).expect("same dimension").into()
            }
        }
    }

    /// Next random set.
    pub fn set(&mut self) -> CompactSet {
        let kind = self.kinds.sample(&mut self.rng);
        if kind < 3 {
            return self.primitive(kind);
        }
        let arity = self.rng.gen_range(2..=self.config.max_union_arity.max(2));
        let w = self.config.weights;
        let leaf = WeightedIndex::new([w.points, w.boxes, w.segments])
            .unwrap_or_else(|_| WeightedIndex::new([1.0, 1.0, 1.0]).expect("positive"));
        let parts = (0..arity)
            .map(|_| {
                let k = leaf.sample(&mut self.rng);
                self.primitive(k)
            })
            .collect();
        CompactSet::union(parts).expect("non-empty union")
    }
}

impl Iterator for SetGenerator {
    type Item = CompactSet;

    fn next(&mut self) -> Option<CompactSet> {
        Some(self.set())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    /// Seed of the case generator (see [`case_seed`]).
    pub seed: u64,
    pub case: usize,
    pub description: String,
    pub observed: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub skipped: usize,
    pub failures: Vec<Failure>,
    pub elapsed_secs: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Concatenates reports under a new name, renumbering nothing.
    pub fn merge(suite: &str, reports: Vec<SuiteReport>) -> SuiteReport {
        let mut out = SuiteReport {
            suite: suite.to_string(),
            cases: 0,
            skipped: 0,
            failures: Vec::new(),
            elapsed_secs: 0.0,
        };
        for r in reports {
            out.cases += r.cases;
            out.skipped += r.skipped;
            out.elapsed_secs += r.elapsed_secs;
            out.failures.extend(r.failures);
        }
        out
    }
}

enum Outcome {
    Checked(Vec<Failure>),
    Skipped,
}

fn run_cases(suite: &str, cases: usize, case: impl Fn(usize) -> Outcome + Sync) -> SuiteReport {
    let started = Instant::now();
    let outcomes: Vec<Outcome> = (0..cases).into_par_iter().map(|i| case(i)).collect();
    let mut report = SuiteReport {
        suite: suite.to_string(),
        cases,
        skipped: 0,
        failures: Vec::new(),
        elapsed_secs: 0.0,
    };
    for o in outcomes {
        match o {
            Outcome::Checked(f) => report.failures.extend(f),
            Outcome::Skipped => report.skipped += 1,
        }
    }
    report.elapsed_secs = started.elapsed().as_secs_f64();
    report
}

struct Checker {
    seed: u64,
    case: usize,
    failures: Vec<Failure>,
}

impl Checker {
    fn new(seed: u64, case: usize) -> Self {
        Checker {
            seed,
            case,
            failures: Vec::new(),
        }
    }

    /// Records a failure unless `observed <= bound`.
    fn at_most(&mut self, what: impl FnOnce() -> String, observed: f64, bound: f64) {
        if !(observed <= bound) {
            self.fail(what(), observed, bound);
        }
    }

    fn fail(&mut self, description: String, observed: f64, bound: f64) {
        self.failures.push(Failure {
            seed: self.seed,
            case: self.case,
            description,
            observed,
            bound,
        });
    }

    fn ok<T>(&mut self, what: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.fail(format!("{what}: {e}"), f64::NAN, f64::NAN);
                None
            }
        }
    }

    fn done(self) -> Outcome {
        Outcome::Checked(self.failures)
    }
}

/// Checks the metric axioms on one triple of sets.
pub fn check_metric_triple(
    a: &CompactSet,
    b: &CompactSet,
    c: &CompactSet,
    tol: f64,
) -> Vec<(String, f64, f64)> {
    let mut chk = Checker::new(0, 0);
    metric_triple(&mut chk, a, b, c, tol);
    chk.failures
        .into_iter()
        .map(|f| (f.description, f.observed, f.bound))
        .collect()
}

fn metric_triple(chk: &mut Checker, a: &CompactSet, b: &CompactSet, c: &CompactSet, tol: f64) {
    let h = |chk: &mut Checker, x: &CompactSet, y: &CompactSet, name: &str| -> Option<DistanceResult> {
        chk.ok(name, hausdorff(x, y, tol))
    };
    let (Some(ab), Some(ba), Some(ac), Some(cb), Some(aa)) = (
        h(chk, a, b, "h(A,B)"),
        h(chk, b, a, "h(B,A)"),
        h(chk, a, c, "h(A,C)"),
        h(chk, c, b, "h(C,B)"),
        h(chk, a, a, "h(A,A)"),
    ) else {
        return;
    };

    for (name, r) in [("h(A,B)", ab), ("h(B,A)", ba), ("h(A,C)", ac), ("h(C,B)", cb)] {
        if !r.value.is_finite() || r.value < 0.0 {
            chk.fail(format!("{name} is negative or not finite"), r.value, f64::INFINITY);
        }
    }
    chk.at_most(|| "h(A,A) = 0".into(), aa.value, 0.0);
    chk.at_most(
        || "symmetry |h(A,B) - h(B,A)|".into(),
        (ab.value - ba.value).abs(),
        ab.err + ba.err + tol,
    );
    chk.at_most(
        || "triangle h(A,B) <= h(A,C) + h(C,B)".into(),
        ab.value,
        ac.value + cb.value + ab.err + ac.err + cb.err + tol,
    );

    if ab.upper() <= TOL_EQ {
        // nearly equal sets: every sample of one lies near the other
        let res = 1e-2 * (1.0 + a.bounding_box().diameter());
        let cfg = OracleConfig { point_budget: 200_000 };
        for (x, y, name) in [(a, b, "A"), (b, a, "B")] {
            if let Ok(samples) = crate::metric::oracle::sample_set(x, res, &cfg) {
                for s in samples.iter() {
                    let p = Point::new(s.to_vec()).expect("finite sample");
                    if let Some(d) = chk.ok("point_to_set", crate::metric::point_to_set(&p, y)) {
                        chk.at_most(|| format!("sample of {name} near the other set"), d, TOL_EQ + ab.err);
                    }
                }
            }
        }
    }
}

/// Non-negativity, symmetry, the triangle inequality and `h(A,A) = 0` on
/// random triples.
pub fn run_metric_axioms(config: &GeneratorConfig, cases: usize, tol: f64) -> SuiteReport {
    run_cases("metric-axioms", cases, |i| {
        let seed = case_seed(config.seed, i);
        let mut gen = SetGenerator::new(config.with_seed(seed));
        let (a, b, c) = (gen.set(), gen.set(), gen.set());
        let mut chk = Checker::new(seed, i);
        metric_triple(&mut chk, &a, &b, &c, tol);
        chk.done()
    })
}

/// All-pairs modulus check of a path over a uniform grid of `grid` points,
/// plus the endpoint contract.
pub fn run_path_modulus(path: &HyperPath, grid: usize, tol: f64) -> SuiteReport {
    path_modulus_report("path-modulus", 0, path, grid, tol)
}

fn path_modulus_report(suite: &str, seed: u64, path: &HyperPath, grid: usize, tol: f64) -> SuiteReport {
    let started = Instant::now();
    let mut chk = Checker::new(seed, 0);
    path_modulus(&mut chk, path, grid, tol);
    SuiteReport {
        suite: suite.to_string(),
        cases: grid * (grid - 1) / 2,
        skipped: 0,
        failures: chk.failures,
        elapsed_secs: started.elapsed().as_secs_f64(),
    }
}

fn path_modulus(chk: &mut Checker, path: &HyperPath, grid: usize, tol: f64) {
    let ts = uniform_grid(grid.max(2));
    let samples: Vec<_> = ts.par_iter().map(|&t| path.sample(t)).collect();

    for (t, target, name) in [(0usize, path.start(), "start"), (ts.len() - 1, path.end(), "end")] {
        if let Some(r) = chk.ok("endpoint distance", hausdorff(&samples[t].set, target, tol)) {
            chk.at_most(
                || format!("h(eval({}), {name})", ts[t]),
                r.value,
                JUNCTION_TOL + samples[t].err + r.err,
            );
        }
    }

    let pairs: Vec<(usize, usize)> = (0..ts.len())
        .flat_map(|i| (i + 1..ts.len()).map(move |j| (i, j)))
        .collect();
    let lip = path.lipschitz();
    let results: Vec<_> = pairs
        .par_iter()
        .map(|&(i, j)| (i, j, hausdorff(&samples[i].set, &samples[j].set, tol)))
        .collect();
    for (i, j, r) in results {
        if let Some(r) = chk.ok("modulus distance", r) {
            let bound = lip * (ts[j] - ts[i]) + samples[i].err + samples[j].err + r.err + tol;
            chk.at_most(|| format!("h(f({}), f({})) <= L|dt|", ts[i], ts[j]), r.value, bound);
        }
    }
}

/// Random paths of every constructor, each checked with [`run_path_modulus`].
pub fn run_random_path_modulus(config: &GeneratorConfig, cases: usize, grid: usize, tol: f64) -> SuiteReport {
    let started = Instant::now();
    let reports: Vec<SuiteReport> = (0..cases)
        .into_par_iter()
        .map(|i| {
            let seed = case_seed(config.seed, i);
            let mut gen = SetGenerator::new(config.with_seed(seed));
            let mut chk = Checker::new(seed, i);
            if let Some(path) = chk.ok("building path", random_path(&mut gen, i % 4)) {
                path_modulus(&mut chk, &path, grid, tol);
            }
            SuiteReport {
                suite: String::new(),
                cases: 1,
                skipped: 0,
                failures: chk.failures,
                elapsed_secs: 0.0,
            }
        })
        .collect();
    let mut report = SuiteReport::merge("path-modulus", reports);
    report.elapsed_secs = started.elapsed().as_secs_f64();
    report
}

/// A random path built by constructor `kind`: 0 translation, 1 point to
/// box, 2 set to box, 3 connect.
pub fn random_path(gen: &mut SetGenerator, kind: usize) -> Result<HyperPath> {
    match kind {
        0 => {
            let a = gen.set();
            let v = gen.point();
            paths::translation_path(&a, &v)
        }
        1 => {
            let target = gen.axis_box();
            let a = gen.point_in(&target);
            paths::point_to_box_path(&a, target.lo(), target.hi())
        }
        2 => {
            let a = gen.set();
            let bb = a.bounding_box();
            let grow: Vec<f64> = (0..bb.dim()).map(|_| gen.rng().gen_range(0.0..2.0)).collect();
            let lo = Point::new(bb.lo().coords().iter().zip(&grow).map(|(c, g)| c - g - 0.1).collect())?;
            let hi = Point::new(bb.hi().coords().iter().zip(&grow).map(|(c, g)| c + g).collect())?;
            paths::set_to_box_path(&a, &lo, &hi)
        }
        _ => {
            let (a, b) = (gen.set(), gen.set());
            paths::connect(&a, &b)
        }
    }
}

/// Certified Hausdorff distance against the grid oracle on random pairs.
pub fn run_oracle_equivalence(config: &GeneratorConfig, cases: usize, resolution: f64) -> SuiteReport {
    let oracle = OracleConfig::default();
    run_cases("oracle", cases, |i| {
        let seed = case_seed(config.seed, i);
        let mut gen = SetGenerator::new(config.with_seed(seed));
        let (a, b) = (gen.set(), gen.set());
        let mut chk = Checker::new(seed, i);
        let brute = match brute_force_hausdorff_with(&a, &b, resolution, &oracle) {
            Ok(r) => r,
            Err(crate::error::Error::PointBudget { .. }) => return Outcome::Skipped,
            Err(e) => {
                chk.fail(format!("oracle: {e}"), f64::NAN, f64::NAN);
                return chk.done();
            }
        };
        if let Some(h) = chk.ok("hausdorff", hausdorff(&a, &b, crate::metric::DEFAULT_TOL)) {
            chk.at_most(
                || "|h - oracle| <= err + resolution".into(),
                (h.value - brute.value).abs(),
                h.err + brute.err + 1e-12,
            );
        }
        chk.done()
    })
}

/// One random contraction instance: enclosing box, two points inside it and
/// a time.
pub fn random_contraction_case(gen: &mut SetGenerator) -> (Point, Point, AxisBox, f64) {
    let target = loop {
        let b = gen.axis_box();
        if !b.is_point() {
            break b;
        }
    };
    let a = gen.point_in(&target);
    let a2 = gen.point_in(&target);
    let t = gen.rng().gen_range(0.0..=1.0);
    (a, a2, target, t)
}

/// `h(f_a(t), f_a'(t)) <= (1 - t)·d(a, a')` on random instances; the first
/// `oracle_cases` are also compared with the grid oracle.
pub fn run_contraction(
    config: &GeneratorConfig,
    cases: usize,
    tol: f64,
    oracle_cases: usize,
    resolution: f64,
) -> SuiteReport {
    let oracle = OracleConfig::default();
    run_cases("contraction", cases, |i| {
        let seed = case_seed(config.seed, i);
        let mut gen = SetGenerator::new(config.with_seed(seed));
        let (a, a2, target, t) = random_contraction_case(&mut gen);
        let mut chk = Checker::new(seed, i);
        let Some(gap) = chk.ok(
            "contraction_gap",
            paths::contraction_gap(&a, &a2, target.lo(), target.hi(), t),
        ) else {
            return chk.done();
        };
        let d = a.distance(&a2).expect("same dimension");
        chk.at_most(|| format!("gap <= (1-t) d(a,a') at t = {t}"), gap, (1.0 - t) * d + tol);

        if i < oracle_cases {
            let boxes = [&a, &a2].map(|p| {
                paths::point_to_box_path(p, target.lo(), target.hi()).map(|path| path.eval(t))
            });
            if let [Some(fa), Some(fa2)] = boxes.map(|b| chk.ok("point_to_box_path", b)) {
                match brute_force_hausdorff_with(&fa, &fa2, resolution, &oracle) {
                    Ok(brute) => {
                        chk.at_most(|| "|gap - oracle| <= resolution".into(), (gap - brute.value).abs(), brute.err + 1e-12);
                        chk.at_most(
                            || "oracle <= (1-t) d(a,a') + resolution".into(),
                            brute.value,
                            (1.0 - t) * d + brute.err + tol,
                        );
                    }
                    Err(crate::error::Error::PointBudget { .. }) => {}
                    Err(e) => chk.fail(format!("oracle: {e}"), f64::NAN, f64::NAN),
                }
            }
        }
        chk.done()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_is_deterministic() {
        let cfg = GeneratorConfig::new(3, 99);
        let a: Vec<_> = SetGenerator::new(cfg).take(50).collect();
        let b: Vec<_> = SetGenerator::new(cfg).take(50).collect();
        assert_eq!(a, b);
        let c: Vec<_> = SetGenerator::new(cfg.with_seed(100)).take(50).collect();
        assert_ne!(a, c);
    }

    #[test]
    fn generator_respects_config() {
        let mut cfg = GeneratorConfig::new(2, 5);
        cfg.scale = 1.0;
        for set in SetGenerator::new(cfg).take(200) {
            assert_eq!(set.dim(), 2);
            let bb = set.bounding_box();
            assert!(bb.lo().coords().iter().chain(bb.hi().coords()).all(|c| c.abs() <= 1.0));
            if let CompactSet::Union(u) = &set {
                assert!((2..=4).contains(&u.parts().len()));
            }
        }
    }

    #[test]
    fn singleton_triple_holds_with_zeros() {
        let p = CompactSet::from_coords(&[&[1.0, 2.0]]).unwrap();
        assert!(check_metric_triple(&p, &p, &p, 1e-9).is_empty());
    }

    #[test]
    fn metric_suite_passes_and_is_deterministic() {
        let cfg = GeneratorConfig::new(2, 7);
        let r1 = run_metric_axioms(&cfg, 40, 1e-9);
        let r2 = run_metric_axioms(&cfg, 40, 1e-9);
        assert!(r1.passed(), "{:?}", r1.failures);
        assert_eq!(r1.failures, r2.failures);
        assert_eq!(r1.cases, 40);
    }

    #[test]
    fn failures_carry_reproducible_seeds() {
        assert_eq!(case_seed(42, 3), case_seed(42, 3));
        assert_ne!(case_seed(42, 3), case_seed(42, 4));
        // replaying a case seed regenerates the exact inputs
        let cfg = GeneratorConfig::new(2, 42);
        let mut a = SetGenerator::new(cfg.with_seed(case_seed(42, 3)));
        let mut b = SetGenerator::new(cfg.with_seed(case_seed(42, 3)));
        assert_eq!(a.set(), b.set());
    }

    #[test]
    fn modulus_of_singleton_translation_is_sharp() {
        let a = CompactSet::from_coords(&[&[1.0, -1.0]]).unwrap();
        let p = paths::translation_path(&a, &Point::new(vec![3.0, 4.0]).unwrap()).unwrap();
        let report = run_path_modulus(&p, 11, 1e-9);
        assert!(report.passed());
        for (i, t1) in uniform_grid(11).into_iter().enumerate() {
            for t2 in uniform_grid(11).into_iter().skip(i) {
                let r = hausdorff(&p.eval(t1), &p.eval(t2), 1e-9).unwrap();
                assert!((r.value - 5.0 * (t2 - t1)).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn small_suites_pass() {
        let mut cfg = GeneratorConfig::new(2, 11);
        assert!(run_random_path_modulus(&cfg, 8, 11, 1e-9).passed());
        cfg.scale = 1.0;
        cfg.weights = MixWeights::only_boxes();
        let r = run_oracle_equivalence(&cfg, 10, 2e-2);
        assert!(r.passed(), "{:?}", r.failures);
        let mut unit = GeneratorConfig::new(2, 3);
        unit.scale = 1.0;
        let r = run_contraction(&unit, 50, 1e-9, 3, 1e-2);
        assert!(r.passed(), "{:?}", r.failures);
    }
}
