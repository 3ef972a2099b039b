//! Seeded invariant sweep over all figure families.
//!
//! Samples come from `ChaCha8Rng::seed_from_u64(seed)` (the `rand_chacha`
//! crate), a portable generator, so a given seed reproduces the same sweep
//! on every platform. Invariants run in a fixed order and draw from one
//! stream.
//!
//! A nonzero `perturb` shifts every measured quantity by
//! `perturb · max(1, |expected|)` before comparison; it exists to show the
//! sweep can fail.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ct::{self, gamma_radius_from_radii, Branch, CtFigure, CtParam};
use crate::geom::{self, Circle, Line, Point, Tolerance};
use crate::haga::{self, CaseLabel, HagaFigure, HagaParam};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub samples: usize,
    pub seed: u64,
    pub tol: Tolerance,
    pub perturb: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            samples: 1000,
            seed: 7,
            tol: Tolerance::default(),
            perturb: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantResult {
    pub name: String,
    pub samples: usize,
    pub failures: usize,
    /// Largest `|measured − expected|` seen.
    pub max_residual: f64,
    /// Largest residual divided by its allowed bound; at most 1 when passing.
    pub max_ratio: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub samples: usize,
    pub seed: u64,
    pub invariants: Vec<InvariantResult>,
    pub passed: bool,
}

struct Tally {
    name: &'static str,
    perturb: f64,
    samples: usize,
    failures: usize,
    max_residual: f64,
    max_ratio: f64,
}

impl Tally {
    fn new(name: &'static str, perturb: f64) -> Tally {
        Tally {
            name,
            perturb,
            samples: 0,
            failures: 0,
            max_residual: 0.0,
            max_ratio: 0.0,
        }
    }

    /// Compare `measured` with `expected`, allowing `bound`.
    fn close(&mut self, measured: f64, expected: f64, bound: f64) {
        let measured = measured + self.perturb * expected.abs().max(1.0);
        let residual = (measured - expected).abs();
        self.samples += 1;
        if !residual.is_finite() || residual > bound {
            self.failures += 1;
        }
        self.max_residual = self.max_residual.max(residual);
        self.max_ratio = self.max_ratio.max(if bound > 0.0 {
            residual / bound
        } else {
            residual
        });
    }

    fn holds(&mut self, ok: bool) {
        self.samples += 1;
        if !ok {
            self.failures += 1;
            self.max_ratio = self.max_ratio.max(f64::INFINITY);
        }
    }

    fn error(&mut self) {
        self.holds(false);
    }

    fn finish(self) -> InvariantResult {
        InvariantResult {
            name: self.name.to_string(),
            samples: self.samples,
            failures: self.failures,
            max_residual: self.max_residual,
            max_ratio: if self.max_ratio.is_finite() {
                self.max_ratio
            } else {
                f64::MAX
            },
            passed: self.failures == 0,
        }
    }
}

struct Sweep {
    rng: ChaCha8Rng,
    cfg: VerifyConfig,
    results: Vec<InvariantResult>,
}

impl Sweep {
    fn tally(&self, name: &'static str) -> Tally {
        Tally::new(name, self.cfg.perturb)
    }

    /// Uniform in `(0, hi]`.
    fn positive(&mut self, hi: f64) -> f64 {
        hi * (1.0 - self.rng.random::<f64>())
    }

    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    fn point(&mut self) -> Point {
        Point::new(self.uniform(-10.0, 10.0), self.uniform(-10.0, 10.0))
    }

    fn line(&mut self) -> Line {
        let p = self.point();
        let angle = self.uniform(0.0, std::f64::consts::TAU);
        Line::through_with_direction(p, Point::new(angle.cos(), angle.sin()))
            .expect("unit direction")
    }

    fn push(&mut self, t: Tally) {
        self.results.push(t.finish());
    }
}

/// Run every invariant and collect per-invariant results.
pub fn run(cfg: &VerifyConfig) -> Result<VerifyReport> {
    if cfg.samples == 0 {
        return Err(Error::domain("verify needs at least one sample"));
    }
    let mut sweep = Sweep {
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        cfg: *cfg,
        results: Vec::new(),
    };
    geom_invariants(&mut sweep);
    ct_invariants(&mut sweep);
    haga_invariants(&mut sweep);
    fixed_results(&mut sweep);
    let passed = sweep.results.iter().all(|r| r.passed);
    Ok(VerifyReport {
        samples: cfg.samples,
        seed: cfg.seed,
        invariants: sweep.results,
        passed,
    })
}

fn geom_invariants(s: &mut Sweep) {
    let n = s.cfg.samples;
    let tol = s.cfg.tol;

    let mut involution = s.tally("geom/reflection-involution");
    let mut isometry = s.tally("geom/reflection-isometry");
    for _ in 0..n {
        let (p, q, m) = (s.point(), s.point(), s.line());
        let back = geom::reflect_point(geom::reflect_point(p, &m), &m);
        involution.close(back.distance(p), 0.0, tol.bound(p.norm().max(1.0)));
        let moved = geom::reflect_point(p, &m).distance(geom::reflect_point(q, &m));
        let dist = p.distance(q);
        isometry.close(moved, dist, tol.bound(dist));
    }
    s.push(involution);
    s.push(isometry);

    let mut chord = s.tally("geom/tangent-chord-layout");
    for _ in 0..n {
        let (r, q) = (s.positive(10.0), s.positive(10.0));
        let measured = layout_chord(r, q);
        let formula = geom::external_tangent_chord(r, q).unwrap_or(f64::NAN);
        chord.close(measured, formula, 1e-9 * formula);
    }
    s.push(chord);

    let mut equal = s.tally("geom/equal-tangent-lengths");
    for _ in 0..n {
        let c = Circle::new(s.point(), s.positive(5.0));
        let dir = s.uniform(0.0, std::f64::consts::TAU);
        let reach = c.radius * (1.0 + s.positive(4.0));
        let p = c.center + Point::new(dir.cos(), dir.sin()) * reach;
        match geom::tangent_contact_from_external_point(p, &c, &tol) {
            Ok((t1, t2)) => {
                let l1 = p.distance(t1);
                equal.close(p.distance(t2), l1, tol.bound(l1));
            }
            Err(_) => equal.error(),
        }
    }
    s.push(equal);

    let mut internal = s.tally("geom/internal-tangent-distances");
    for _ in 0..n {
        let c1 = Circle::new(s.point(), s.positive(5.0));
        let r2 = s.positive(5.0);
        let dir = s.uniform(0.0, std::f64::consts::TAU);
        let c2 = Circle::new(
            c1.center + Point::new(dir.cos(), dir.sin()) * (c1.radius + r2),
            r2,
        );
        match geom::internal_common_tangent_at_contact(&c1, &c2, &tol) {
            Ok(line) => {
                internal.close(line.distance(c1.center), c1.radius, tol.bound(c1.radius));
                internal.close(line.distance(c2.center), c2.radius, tol.bound(c2.radius));
            }
            Err(_) => internal.error(),
        }
    }
    s.push(internal);
}

/// `|PQ|` for circles of radii `r`, `s` resting on the x-axis and touching,
/// found by bisection on the horizontal offset of the second circle.
pub fn layout_chord(r: f64, s: f64) -> f64 {
    let gap = |x: f64| x.hypot(s - r) - (r + s);
    let (mut lo, mut hi) = (0.0_f64, 2.0 * (r + s));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if gap(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn ct_invariants(s: &mut Sweep) {
    let count = s.cfg.samples;
    let tol = s.cfg.tol;
    let mut eq1 = s.tally("ct/parameter-round-trip");
    let mut tangency = s.tally("ct/tangency-residuals");
    let mut ak = s.tally("ct/ak-equals-sqrt-d1d2");
    let mut branch = s.tally("ct/gamma-radius-branches");
    let mut division = s.tally("ct/tangent-foot-division");
    let mut midpoint = s.tally("ct/tangent-foot-midpoint");
    let mut involution = s.tally("ct/companion-involution");
    let mut reciprocal = s.tally("ct/companion-reciprocal");
    let mut radius_sum = s.tally("ct/companion-radius-sum");
    let mut ak_bar = s.tally("ct/companion-ak");
    let mut ordering = s.tally("ct/contact-ordering");

    for _ in 0..count {
        let n = s.positive(50.0);
        let r = s.positive(10.0);
        let fig = match CtFigure::build(r, CtParam::Real(n)) {
            Ok(f) => f,
            Err(_) => {
                eq1.error();
                continue;
            }
        };
        let (d1, d2) = (fig.d1(), fig.d2());
        eq1.close(fig.measured_param().value(), n, tol.bound(n));
        tangency.close(fig.residuals().max_abs(), 0.0, tol.eps_abs * d1.max(1.0));
        let root = ct::ak_length(d1, d2).unwrap_or(f64::NAN);
        ak.close(fig.ak(), root, tol.bound(root));

        let side = if n > 0.5 { Branch::High } else { Branch::Low };
        let back = gamma_radius_from_radii(d1, d2, side).unwrap_or(f64::NAN);
        branch.close(back, r, tol.bound(r));

        if n != 0.5 {
            match fig.tangent_feet(&tol) {
                Ok(feet) => {
                    let c = feet.e1_check;
                    division.close(c.measured, c.expected, tol.bound(c.expected));
                    division.holds(c.internal);
                    if let Some(c) = feet.e2_check {
                        division.close(c.measured, c.expected, tol.bound(c.expected));
                        division.holds(!c.internal);
                        midpoint.close(
                            c.midpoint_residual.unwrap_or(f64::NAN),
                            0.0,
                            tol.bound(d2.max(r)),
                        );
                    }
                }
                Err(_) => division.error(),
            }
        }

        let pair = fig.companion();
        let back = pair.companion.companion();
        involution.close(
            back.gamma_bar().center.distance(fig.gamma.center),
            0.0,
            tol.bound(d1),
        );
        involution.close(back.gamma_bar().radius, r, tol.bound(d1));
        let n_bar = pair.n_bar().value();
        reciprocal.close(4.0 * n * n_bar, 1.0, tol.bound(1.0));
        radius_sum.close(
            2.0 * (r + pair.gamma_bar().radius),
            d1 + d2,
            tol.bound(d1 + d2),
        );
        ak_bar.close(pair.companion.ak(), fig.ak(), tol.bound(fig.ak()));

        if n > 0.5 {
            let xs = [
                fig.gamma_foot.x,
                fig.delta2_foot.x,
                fig.origin.x,
                pair.companion.gamma_foot.x,
            ];
            ordering.holds(xs.windows(2).all(|w| w[0] > w[1]));
        }
    }

    // Degenerate members, independent of the sample count.
    for n in [CtParam::Real(0.0), CtParam::ZeroBar] {
        let length = 1.0 + s.positive(5.0);
        if let Ok(fig) = CtFigure::build(length, n) {
            let pair = fig.companion();
            let (lhs, rhs) = pair.reciprocal_sides();
            reciprocal.close(lhs, 0.0, 0.0);
            reciprocal.close(rhs, 0.0, 0.0);
            let sum = fig.d1() + fig.d2();
            radius_sum.close(
                2.0 * (fig.r() + pair.gamma_bar().radius),
                sum,
                tol.bound(sum),
            );
            let back = pair.companion.companion();
            involution.close(
                back.gamma_bar().center.distance(fig.gamma.center),
                0.0,
                tol.bound(length),
            );
        } else {
            reciprocal.error();
        }
    }
    let (d1, d2) = (4.0, 0.0);
    let lo = gamma_radius_from_radii(d1, d2, Branch::Low).unwrap_or(f64::NAN);
    let hi = gamma_radius_from_radii(d1, d2, Branch::High).unwrap_or(f64::NAN);
    branch.close(lo, hi, tol.bound(hi));

    for t in [
        eq1, tangency, ak, branch, division, midpoint, involution, reciprocal, radius_sum, ak_bar,
        ordering,
    ] {
        s.push(t);
    }
}

/// `n` from the closed forms for cases h1 to h3 and h7, in terms of `d/r`.
pub fn closed_form_n(case: CaseLabel, d: f64, r: f64) -> Option<f64> {
    let q = (d / r).sqrt();
    match case {
        CaseLabel::H1 | CaseLabel::H2 | CaseLabel::H3 => Some(-q * (0.5 * q + 1.0) - 0.5),
        CaseLabel::H7 => Some(-q * (0.5 * q - 1.0) - 0.5),
        _ => None,
    }
}

fn haga_invariants(s: &mut Sweep) {
    let count = s.cfg.samples;
    let tol = s.cfg.tol;
    let mut isometry = s.tally("haga/fold-isometry");
    let mut midpoint = s.tally("haga/midpoint-law");
    let mut round_trip = s.tally("haga/e-n-round-trip");
    let mut closed = s.tally("haga/closed-form-consistency");
    let mut table = s.tally("haga/case-matches-position");
    let mut crease = s.tally("haga/crease-rule-matches-geometry");
    let mut half = s.tally("haga/excludes-minus-half");
    let mut contact = s.tally("haga/contact-is-tangent-from-e");

    for _ in 0..count {
        let d = s.positive(10.0);
        let e = d * s.uniform(-10.0, 10.0);
        let fig = match HagaFigure::from_e(d, e, &tol) {
            Ok(f) => f,
            Err(_) => {
                isometry.error();
                continue;
            }
        };
        isometry.close(fig.g.distance(fig.e), d, tol.bound(d));
        isometry.close(
            geom::reflect_point(fig.c, &fig.crease).distance(fig.e),
            0.0,
            tol.bound(d),
        );
        if !fig.gamma.is_point() {
            midpoint.close(
                fig.d.midpoint(fig.gamma_foot).distance(fig.e),
                0.0,
                tol.bound(d),
            );
            if let Some(res) = fig.contact_residual(&tol) {
                contact.close(res, 0.0, tol.bound(d));
            } else {
                contact.error();
            }
        }
        match haga::e_from_n(d, fig.n) {
            Ok(back) => round_trip.close(back, e, tol.bound(e.abs().max(d))),
            Err(_) => round_trip.error(),
        }
        if let Some(expected) = closed_form_n(fig.case, d, fig.r()) {
            closed.close(fig.n.value(), expected, tol.bound(expected));
        }
        table.holds(fig.case == haga::classify_position(d, e, &tol));
        crease.holds(fig.crease_interior == haga::crease_meets_open_square(&fig.crease, d, &tol));
        if let HagaParam::Real(n) = fig.n {
            half.holds((n + 0.5).abs() > 1e-6);
        }
    }
    for t in [
        isometry, midpoint, round_trip, closed, table, crease, half, contact,
    ] {
        s.push(t);
    }

    // Along each case interval, n decreases as E moves in the direction D→A.
    let mut monotone = s.tally("haga/monotone-per-case");
    let d = 1.0;
    let intervals = [(2.0, 10.0), (1.0, 2.0), (0.0, 1.0), (-10.0, 0.0)];
    for (lo, hi) in intervals {
        let mut es: Vec<f64> = (0..count.max(2)).map(|_| s.uniform(lo, hi)).collect();
        es.retain(|&e| e > lo && e < hi);
        es.sort_by(|a, b| b.total_cmp(a));
        let ns: Vec<f64> = es
            .iter()
            .filter_map(|&e| HagaFigure::from_e(d, e, &tol).ok())
            .map(|f| f.n.value())
            .collect();
        for w in ns.windows(2) {
            monotone.holds(w[1] < w[0] || es.len() < 2);
        }
    }
    s.push(monotone);
}

fn fixed_results(s: &mut Sweep) {
    let tol = s.cfg.tol;
    let d = 1.0 + s.positive(5.0);
    let mut first = s.tally("haga/midpoint-fold");
    match haga::midpoint_fold_check(d, &tol) {
        Ok(checks) => checks
            .iter()
            .for_each(|c| first.close(c.measured, c.expected, c.tolerance)),
        Err(_) => first.error(),
    }
    s.push(first);

    let mut third = s.tally("haga/f-midpoint-fold");
    match haga::f_midpoint_fold_check(d, &tol) {
        Ok(checks) => checks
            .iter()
            .for_each(|c| third.close(c.measured, c.expected, c.tolerance)),
        Err(_) => third.error(),
    }
    s.push(third);

    let mut p3 = s.tally("problems/problem-3-refutation");
    match ct::refute_problem_3(d) {
        Ok(rep) => {
            let direct = 3.0 + 2f64.sqrt() + 2.0 * (2.0 + 2f64.sqrt()).sqrt();
            p3.close(rep.ratio, direct, 1e-12 * direct);
            p3.holds(!rep.consistent);
        }
        Err(_) => p3.error(),
    }
    s.push(p3);
}
