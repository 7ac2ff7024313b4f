//! Runs verification suites as independent jobs on a worker pool and merges
//! their reports in a fixed order.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use anyhow::{anyhow, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use uqsl2_core::integrals::{self, ProductTable};
use uqsl2_core::slf::{self, Commutators, SlfBasis};
use uqsl2_core::{algebra, hopf, projective, qnum, Check, Mono, Uq, VerificationReport};

/// Suites in dependency order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Arithmetic,
    Algebra,
    Hopf,
    Integrals,
    Casimir,
    Idempotents,
    Tables,
    Slf,
    Decomposition,
    Trig,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Arithmetic,
        Suite::Algebra,
        Suite::Hopf,
        Suite::Integrals,
        Suite::Casimir,
        Suite::Idempotents,
        Suite::Tables,
        Suite::Slf,
        Suite::Decomposition,
        Suite::Trig,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Arithmetic => "arithmetic",
            Suite::Algebra => "algebra",
            Suite::Hopf => "hopf",
            Suite::Integrals => "integrals",
            Suite::Casimir => "casimir",
            Suite::Idempotents => "idempotents",
            Suite::Tables => "tables",
            Suite::Slf => "slf",
            Suite::Decomposition => "decomposition",
            Suite::Trig => "trig",
        }
    }

    /// Parses a list of names (`all` selects every suite) into a sorted,
    /// deduplicated selection.
    pub fn parse_list<S: AsRef<str>>(names: &[S]) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for n in names {
            for part in n.as_ref().split(',').map(str::trim).filter(|s| !s.is_empty()) {
                if part == "all" {
                    out.extend(Suite::ALL);
                } else {
                    out.push(part.parse()?);
                }
            }
        }
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err(anyhow!("no suite selected"));
        }
        Ok(out)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
            anyhow!("unknown suite {s:?}; expected one of {} or all", names.join(", "))
        })
    }
}

/// Number of random basis pairs used for multiplicativity of the coproduct
/// once the full grid of `4p^6` pairs gets expensive (`p >= 4`).
pub const SAMPLED_PAIRS: usize = 256;

/// Seed for the sampled pairs, fixed so runs are reproducible.
pub const PAIR_SEED: u64 = 0x5eed;

/// Every pair for `p <= 3`, otherwise `SAMPLED_PAIRS` distinct random pairs.
pub fn multiplicativity_pairs(uq: &Uq) -> Vec<(Mono, Mono)> {
    let all = hopf::all_basis_pairs(uq);
    if uq.p() <= 3 {
        return all;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(PAIR_SEED ^ uq.p() as u64);
    all.choose_multiple(&mut rng, SAMPLED_PAIRS).copied().collect()
}

/// State shared between jobs and computed on first use.
pub struct Shared {
    pub uq: Uq,
    table: OnceLock<ProductTable>,
    commutators: OnceLock<Commutators>,
    slf_basis: OnceLock<std::result::Result<SlfBasis, uqsl2_core::Error>>,
}

impl Shared {
    pub fn new(uq: Uq) -> Self {
        Shared { uq, table: OnceLock::new(), commutators: OnceLock::new(), slf_basis: OnceLock::new() }
    }

    /// All products of pairs of basis monomials, computed in parallel.
    pub fn table(&self) -> &ProductTable {
        self.table.get_or_init(|| {
            let uq = &self.uq;
            let products =
                (0..uq.dim() * uq.dim()).into_par_iter().map(|i| uq.mul_mono(uq.mono_at(i / uq.dim()), uq.mono_at(i % uq.dim()))).collect();
            ProductTable::from_products(uq, products)
        })
    }

    pub fn commutators(&self) -> &Commutators {
        self.commutators.get_or_init(|| Commutators::new(&self.uq, self.table()))
    }

    pub fn slf_basis(&self) -> uqsl2_core::Result<&SlfBasis> {
        self.slf_basis.get_or_init(|| slf::slf_functionals(&self.uq)).as_ref().map_err(Clone::clone)
    }
}

type JobFn = Box<dyn Fn(&Shared) -> uqsl2_core::Result<VerificationReport> + Send + Sync>;

pub struct Job {
    pub suite: Suite,
    pub name: String,
    run: JobFn,
}

fn job(
    suite: Suite,
    name: impl Into<String>,
    run: impl Fn(&Shared) -> uqsl2_core::Result<VerificationReport> + Send + Sync + 'static,
) -> Job {
    Job { suite, name: name.into(), run: Box::new(run) }
}

fn single(suite: Suite, p: u32, check: Check) -> VerificationReport {
    let mut r = VerificationReport::new(suite.name(), p);
    r.push(check);
    r
}

/// The jobs making up one suite, in output order.
pub fn jobs_for(suite: Suite, p: u32) -> Vec<Job> {
    use Suite::*;
    let s = suite;
    match suite {
        Arithmetic => vec![job(s, "field", |sh| Ok(qnum::check_arithmetic(sh.uq.field())))],
        Algebra => vec![job(s, "algebra", |sh| Ok(algebra::check_algebra(&sh.uq)))],
        Hopf => vec![
            job(s, "coassociativity", move |sh| Ok(single(s, p, hopf::check_coassociativity(&sh.uq)))),
            job(s, "counit", move |sh| Ok(single(s, p, hopf::check_counit_axiom(&sh.uq)))),
            job(s, "antipode", move |sh| Ok(single(s, p, hopf::check_antipode_axiom(&sh.uq)))),
            job(s, "multiplicativity", move |sh| {
                let pairs = multiplicativity_pairs(&sh.uq);
                let n = pairs.len();
                let mut c = hopf::check_coproduct_multiplicative(&sh.uq, pairs);
                if c.passed() {
                    c.detail = Some(format!("{n} basis pairs"));
                }
                Ok(single(s, p, c))
            }),
            job(s, "closed form", move |sh| Ok(single(s, p, hopf::check_closed_form_coproduct(&sh.uq)))),
        ],
        Integrals => vec![
            job(s, "two-sided integral", |sh| Ok(integrals::check_two_sided_integral(&sh.uq, &integrals::integral_element(&sh.uq)))),
            job(s, "dual integrals", |sh| Ok(integrals::check_dual_integrals(&sh.uq))),
            job(s, "balancing", |sh| Ok(integrals::check_s2_inner(&sh.uq))),
            job(s, "twisted integral", move |sh| Ok(single(s, p, integrals::check_twisted_lambda(&sh.uq)))),
            job(s, "symmetry of integrals", |sh| Ok(integrals::check_radford_symmetry(&sh.uq, sh.table()))),
        ],
        Casimir => vec![
            job(s, "casimir", |sh| Ok(algebra::check_casimir(&sh.uq))),
            job(s, "casimir blocks", |sh| projective::check_casimir_blocks(&sh.uq)),
            job(s, "irreducible modules", |sh| projective::check_irreducible_reps(&sh.uq)),
        ],
        Idempotents => vec![job(s, "projectives", |sh| projective::check_projectives(&sh.uq))],
        Tables => {
            let mut v = vec![job(s, "block span", move |sh| Ok(single(s, p, slf::check_blocks_span(&sh.uq)?)))];
            v.push(job(s, "Q_0", |sh| slf::verify_matrix_units(&sh.uq, 0)));
            v.extend((1..p).map(|b| job(s, format!("Q_{b}"), move |sh| slf::verify_block_tables(&sh.uq, b))));
            v.push(job(s, format!("Q_{p}"), move |sh| slf::verify_matrix_units(&sh.uq, p)));
            v
        }
        Slf => vec![job(s, "slf", |sh| slf::check_slf(&sh.uq, sh.slf_basis()?, sh.commutators()))],
        Decomposition => vec![
            job(s, "decomposition", |sh| slf::check_decomposition(&sh.uq, sh.slf_basis()?)),
            job(s, "α and δ", |sh| slf::check_alpha_delta_relation(&sh.uq)),
        ],
        Trig => vec![job(s, "trig", |sh| slf::check_trig_identities(&sh.uq))],
    }
}

/// Per-suite reports of a run plus the wall time of each job.
pub struct RunOutput {
    pub p: u32,
    pub reports: Vec<VerificationReport>,
    pub job_times: Vec<(Suite, String, Duration)>,
}

impl RunOutput {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(VerificationReport::passed)
    }

    pub fn total(&self) -> usize {
        self.reports.iter().map(VerificationReport::total).sum()
    }

    pub fn failed_count(&self) -> usize {
        self.reports.iter().map(VerificationReport::failed_count).sum()
    }

    /// All checks in one report.
    pub fn merged(&self) -> VerificationReport {
        VerificationReport::merge(self.reports.iter().cloned()).expect("all reports share p")
    }

    /// The first check with this name, in any suite.
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.reports.iter().flat_map(|r| &r.checks).find(|c| c.name == name)
    }
}

/// Runs `suites` at `p` with `workers` threads (0 lets the pool decide).
/// Each check's `elapsed` is the wall time of the job that produced it.
/// An algebraic error inside a job becomes a failing check.
pub fn run_suites(p: u32, suites: &[Suite], workers: usize) -> Result<RunOutput> {
    let uq = Uq::new(p)?;
    let shared = Shared::new(uq);
    let mut selected = suites.to_vec();
    selected.sort();
    selected.dedup();
    let jobs: Vec<Job> = selected.iter().flat_map(|s| jobs_for(*s, p)).collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build()?;
    let results: Vec<(VerificationReport, Duration)> = pool.install(|| {
        jobs.par_iter()
            .map(|j| {
                let start = Instant::now();
                let mut report =
                    (j.run)(&shared).unwrap_or_else(|e| single(j.suite, p, Check::fail(j.name.clone(), format!("error: {e}"))));
                let elapsed = start.elapsed();
                for c in &mut report.checks {
                    c.elapsed = Some(elapsed);
                }
                (report, elapsed)
            })
            .collect()
    });
    let job_times = jobs.iter().zip(&results).map(|(j, (_, d))| (j.suite, j.name.clone(), *d)).collect();
    let mut reports: Vec<VerificationReport> = selected.iter().map(|s| VerificationReport::new(s.name(), p)).collect();
    for (j, (r, _)) in jobs.iter().zip(results) {
        let slot = selected.iter().position(|s| *s == j.suite).expect("selected suite");
        reports[slot].checks.extend(r.checks);
    }
    Ok(RunOutput { p, reports, job_times })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_parsing() {
        assert_eq!(Suite::parse_list(&["slf,hopf"]).unwrap(), vec![Suite::Hopf, Suite::Slf]);
        assert_eq!(Suite::parse_list(&["all"]).unwrap().len(), 10);
        assert!(Suite::parse_list(&["nope"]).is_err());
        assert!(Suite::parse_list::<&str>(&[]).is_err());
    }

    #[test]
    fn sampled_pairs_are_distinct() {
        let uq = Uq::new(4).unwrap();
        let mut pairs = multiplicativity_pairs(&uq);
        assert_eq!(pairs.len(), SAMPLED_PAIRS);
        pairs.sort();
        pairs.dedup();
        assert_eq!(pairs.len(), SAMPLED_PAIRS);
        assert_eq!(multiplicativity_pairs(&Uq::new(2).unwrap()).len(), 256);
    }
}
