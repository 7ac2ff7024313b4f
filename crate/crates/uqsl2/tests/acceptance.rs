//! End-to-end acceptance run: ten criteria, one PASS/FAIL line each.

use std::time::{Duration, Instant};

use uqsl2::runner::{run_suites, Suite};
use uqsl2_core::slf::{decompose_twisted_integral, slf_functionals};
use uqsl2_core::{algebra, integrals, projective, CycNum, Rational, Uq, VerificationReport};

struct Outcome {
    ok: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { ok: true, notes: Vec::new() }
    }

    fn report(&mut self, r: &VerificationReport) {
        for c in r.failures() {
            self.ok = false;
            self.notes.push(format!("p={:?} {}: {}", r.p, c.name, c.detail.as_deref().unwrap_or("")));
        }
    }

    fn suites(&mut self, p: u32, suites: &[Suite]) {
        match run_suites(p, suites, 0) {
            Ok(run) => run.reports.iter().for_each(|r| self.report(r)),
            Err(e) => self.fail(format!("p={p}: {e}")),
        }
    }

    fn require(&mut self, ok: bool, note: impl Into<String>) {
        if !ok {
            self.fail(note);
        }
    }

    fn fail(&mut self, note: impl Into<String>) {
        self.ok = false;
        self.notes.push(note.into());
    }

    fn within(&mut self, elapsed: Duration, limit: Duration) {
        self.require(elapsed <= limit, format!("took {elapsed:.1?}, limit {limit:?}"));
    }
}

fn rat(uq: &Uq, n: i64, d: i64) -> CycNum {
    CycNum::from_rational(uq.field(), Rational::new(n, d))
}

fn criterion(n: u32, title: &str, limit: Option<Duration>, body: impl FnOnce(&mut Outcome)) -> bool {
    let start = Instant::now();
    let mut out = Outcome::new();
    body(&mut out);
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        out.within(elapsed, limit);
    }
    let tag = if out.ok { "PASS" } else { "FAIL" };
    println!("criterion {n:>2} {tag} {title} ({elapsed:.2?})");
    for note in &out.notes {
        println!("             {note}");
    }
    out.ok
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

#[test]
fn acceptance() {
    let mut results = Vec::new();

    results.push(criterion(1, "PBW basis of size 2p³ closes under multiplication, p = 2..5", secs(10), |o| {
        for p in 2..=5 {
            let uq = Uq::new(p).unwrap();
            o.require(uq.dim() == 2 * (p as usize).pow(3), format!("p={p}: dim {}", uq.dim()));
            o.report(&algebra::check_algebra(&uq));
        }
    }));

    results.push(criterion(2, "Hopf axioms and closed-form coproduct, p = 2, 3 exhaustive, p = 4 sampled", secs(60), |o| {
        for p in 2..=4 {
            o.suites(p, &[Suite::Hopf]);
        }
        let uq = Uq::new(4).unwrap();
        o.require(uqsl2::runner::multiplicativity_pairs(&uq).len() >= 200, "fewer than 200 sampled pairs at p=4");
    }));

    results.push(criterion(3, "integrals and one-dimensional dual-integral spaces, p = 2..4", secs(60), |o| {
        for p in 2..=4 {
            let uq = Uq::new(p).unwrap();
            o.report(&integrals::check_two_sided_integral(&uq, &integrals::integral_element(&uq)));
            o.report(&integrals::check_dual_integrals(&uq));
            for side in [integrals::Side::Left, integrals::Side::Right] {
                let d = integrals::dual_integral_space_dimension(&uq, side);
                o.require(d == 1, format!("p={p}: dual integral space has dimension {d}"));
            }
        }
    }));

    results.push(criterion(4, "S² is conjugation by g and g⁻¹⇀λ = μ↼g = δ, p = 2..5", None, |o| {
        for p in 2..=5 {
            let uq = Uq::new(p).unwrap();
            o.report(&integrals::check_s2_inner(&uq));
            let c = integrals::check_twisted_lambda(&uq);
            o.require(c.passed(), format!("p={p}: {}", c.detail.unwrap_or_default()));
        }
    }));

    results.push(criterion(5, "Casimir central with minimal polynomial Φ_p, p = 2..4", None, |o| {
        for p in 2..=4 {
            o.report(&algebra::check_casimir(&Uq::new(p).unwrap()));
        }
    }));

    results.push(criterion(6, "idempotent system and module actions, p = 2, 3; idempotents at p = 4", secs(300), |o| {
        for p in 2..=3 {
            o.suites(p, &[Suite::Idempotents]);
        }
        let r = projective::check_idempotent_system(&Uq::new(4).unwrap()).unwrap();
        for name in ["idempotency", "pairwise orthogonality"] {
            let c = r.checks.iter().find(|c| c.name == name);
            o.require(c.is_some_and(|c| c.passed()), format!("p=4: {name} {c:?}"));
        }
    }));

    results.push(criterion(7, "block multiplication tables and cross-block zeros, p = 2, 3", None, |o| {
        for p in 2..=3 {
            o.suites(p, &[Suite::Tables]);
        }
    }));

    results.push(criterion(8, "SLF and center dimensions 3p-1; constructed basis spans, p = 2..4", secs(300), |o| {
        for p in 2..=4 {
            match run_suites(p, &[Suite::Slf], 0) {
                Ok(run) => {
                    run.reports.iter().for_each(|r| o.report(r));
                    for name in ["slf_space_dimension", "center_dimension"] {
                        let want = format!("{} ", 3 * p - 1);
                        let c = run.check(name);
                        o.require(
                            c.is_some_and(|c| c.passed() && c.detail.as_deref().is_some_and(|d| d.starts_with(&want))),
                            format!("p={p}: {name} {c:?}"),
                        );
                    }
                }
                Err(e) => o.fail(format!("p={p}: {e}")),
            }
        }
    }));

    results.push(criterion(9, "decomposition coefficients equal the closed forms exactly", None, |o| {
        for p in 2..=4 {
            o.suites(p, &[Suite::Decomposition]);
        }
        let uq = Uq::new(2).unwrap();
        let c = decompose_twisted_integral(&uq, &slf_functionals(&uq).unwrap()).unwrap();
        o.require(c.alpha0 == rat(&uq, -1, 4), format!("p=2 α₀ = {}", c.alpha0));
        o.require(c.alphap == rat(&uq, 1, 4), format!("p=2 α_p = {}", c.alphap));
        o.require(c.alpha_plus[0].is_zero() && c.alpha_minus[0].is_zero(), "p=2 α₁± nonzero");
        o.require(c.beta[0] == rat(&uq, 1, 4), format!("p=2 β₁ = {}", c.beta[0]));
        let uq = Uq::new(3).unwrap();
        let c = decompose_twisted_integral(&uq, &slf_functionals(&uq).unwrap()).unwrap();
        o.require(c.beta[0] == rat(&uq, -1, 6), format!("p=3 β₁ = {}", c.beta[0]));
        o.require(c.alphap == rat(&uq, 1, 6), format!("p=3 α_p = {}", c.alphap));
    }));

    results.push(criterion(10, "sine forms to 1e-9 and ∏ sin(lπ/p) = p/2^(p-1) to 1e-12, p = 2..7", None, |o| {
        for p in 2..=7 {
            o.suites(p, &[Suite::Trig]);
        }
    }));

    let passed = results.iter().filter(|ok| **ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    assert!(results.iter().all(|ok| *ok), "failing acceptance criteria");
}
