//! Verification harness: both sides of every identity are built as exact
//! matrices at seeded random points and compared entry by entry.
//!
//! A case is `(identity, k, n, seed)`. Its points are drawn from a ChaCha8
//! stream seeded with `seed`: numerators uniform in `[-1000, 1000]`,
//! denominators uniform in `1..=16`. A point that violates a genericity
//! predicate is discarded and the next one drawn, up to [`MAX_ATTEMPTS`].

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::{MatrixOperator, Q};
use crate::exterior::Basis;
use crate::operators::{EvalPoint, FirstOrderOp, ShiftOp};
use crate::representation::FermionSpace;

mod commuting;
mod structure;
mod theorems;

pub use commuting::Family;

pub const MAX_ATTEMPTS: usize = 100;

/// Every checkable identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    Th1,
    Th2,
    Th3,
    Th4,
    Th5,
    Th6,
    Comm1,
    Comm2,
    Comm3,
    Howe,
    ValueRel,
    Casimir,
    Adjoint,
    Ortho,
    VmHw,
    VmNorm,
    AlphaBeta,
    RCross,
    BRestrict,
}

impl IdentityId {
    pub const ALL: [IdentityId; 19] = [
        IdentityId::Th1,
        IdentityId::Th2,
        IdentityId::Th3,
        IdentityId::Th4,
        IdentityId::Th5,
        IdentityId::Th6,
        IdentityId::Comm1,
        IdentityId::Comm2,
        IdentityId::Comm3,
        IdentityId::Howe,
        IdentityId::ValueRel,
        IdentityId::Casimir,
        IdentityId::Adjoint,
        IdentityId::Ortho,
        IdentityId::VmHw,
        IdentityId::VmNorm,
        IdentityId::AlphaBeta,
        IdentityId::RCross,
        IdentityId::BRestrict,
    ];

    pub fn label(self) -> &'static str {
        match self {
            IdentityId::Th1 => "TH1",
            IdentityId::Th2 => "TH2",
            IdentityId::Th3 => "TH3",
            IdentityId::Th4 => "TH4",
            IdentityId::Th5 => "TH5",
            IdentityId::Th6 => "TH6",
            IdentityId::Comm1 => "COMM1",
            IdentityId::Comm2 => "COMM2",
            IdentityId::Comm3 => "COMM3",
            IdentityId::Howe => "HOWE",
            IdentityId::ValueRel => "VALUE_REL",
            IdentityId::Casimir => "CASIMIR",
            IdentityId::Adjoint => "ADJOINT",
            IdentityId::Ortho => "ORTHO",
            IdentityId::VmHw => "VM_HW",
            IdentityId::VmNorm => "VM_NORM",
            IdentityId::AlphaBeta => "ALPHA_BETA",
            IdentityId::RCross => "R_CROSS",
            IdentityId::BRestrict => "B_RESTRICT",
        }
    }

    pub fn is_theorem(self) -> bool {
        matches!(
            self,
            IdentityId::Th1 | IdentityId::Th2 | IdentityId::Th3 | IdentityId::Th4 | IdentityId::Th5 | IdentityId::Th6
        )
    }

    pub fn is_commuting(self) -> bool {
        matches!(self, IdentityId::Comm1 | IdentityId::Comm2 | IdentityId::Comm3)
    }

    pub fn is_structure(self) -> bool {
        !self.is_theorem() && !self.is_commuting()
    }

    /// Structure identities that live on `𝔓_{2,n}` only.
    pub fn needs_two_rows(self) -> bool {
        self.is_structure() && !matches!(self, IdentityId::Howe | IdentityId::Adjoint)
    }

    /// Parses one id (`th1`, `VALUE_REL`, `value-rel`) or a range `th1..th6`.
    pub fn parse_list(s: &str) -> Result<Vec<IdentityId>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if let Some((a, b)) = part.split_once("..") {
                let (a, b) = (a.parse::<IdentityId>()?, b.parse::<IdentityId>()?);
                let (ia, ib) = (a as usize, b as usize);
                if ia > ib {
                    return Err(Error::Argument(format!("empty identity range {part}")));
                }
                out.extend_from_slice(&IdentityId::ALL[ia..=ib]);
            } else if part.eq_ignore_ascii_case("all") {
                out.extend_from_slice(&IdentityId::ALL);
            } else if part.eq_ignore_ascii_case("theorems") {
                out.extend_from_slice(&IdentityId::ALL[..6]);
            } else if part.eq_ignore_ascii_case("comm") {
                out.extend_from_slice(&IdentityId::ALL[6..9]);
            } else if part.eq_ignore_ascii_case("structure") {
                out.extend_from_slice(&IdentityId::ALL[9..]);
            } else {
                out.push(part.parse()?);
            }
        }
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err(Error::Argument("no identities selected".into()));
        }
        Ok(out)
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        IdentityId::ALL
            .iter()
            .copied()
            .find(|id| id.label() == norm)
            .ok_or_else(|| Error::Argument(format!("unknown identity '{s}'")))
    }
}

/// One replayable verification task.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Case {
    pub id: IdentityId,
    pub k: usize,
    pub n: usize,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    SkippedNongeneric,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedNongeneric => "skipped-nongeneric",
        }
    }
}

/// Evidence for a failed case: the first basis column where the two sides
/// differ, with both columns, or a description when no column applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub detail: String,
    pub basis: Option<String>,
    pub left: Option<String>,
    pub right: Option<String>,
}

impl Witness {
    pub fn note(detail: impl Into<String>) -> Self {
        Witness {
            detail: detail.into(),
            basis: None,
            left: None,
            right: None,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.detail)?;
        if let Some(b) = &self.basis {
            write!(f, " at column {b}")?;
        }
        if let (Some(l), Some(r)) = (&self.left, &self.right) {
            write!(f, ": left [{l}] right [{r}]")?;
        }
        Ok(())
    }
}

/// Result of one case.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub case: Case,
    pub status: Status,
    /// The accepted evaluation point, for point-based identities.
    pub point: Option<EvalPoint>,
    /// Auxiliary parameters sampled by the case (spectral values `t`).
    pub params: Vec<Q>,
    pub witness: Option<Witness>,
    /// Points drawn, including discarded non-generic ones.
    pub attempts: usize,
    /// Number of exact comparisons performed.
    pub checks: usize,
    pub millis: u64,
}

/// Outcome of a single check body: `None` is a pass.
pub(crate) type Outcome = Option<Witness>;

/// Collects comparisons, keeping the first failure.
#[derive(Default)]
pub(crate) struct Tally {
    pub checks: usize,
    pub failure: Option<Witness>,
    pub params: Vec<Q>,
}

impl Tally {
    pub fn record(&mut self, what: impl FnOnce() -> String, outcome: Outcome) {
        self.checks += 1;
        if self.failure.is_none() {
            if let Some(mut w) = outcome {
                w.detail = format!("{}: {}", what(), w.detail);
                self.failure = Some(w);
            }
        }
    }

    pub fn require(&mut self, what: impl FnOnce() -> String, ok: bool) {
        self.record(what, if ok { None } else { Some(Witness::note("does not hold")) });
    }
}

pub fn sample_q(rng: &mut ChaCha8Rng) -> Q {
    let num: i64 = rng.gen_range(-1000..=1000);
    let den: i64 = rng.gen_range(1..=16);
    Q::new(num.into(), den.into())
}

/// A spectral parameter off the integers, where every `ρ`, `B` and `C`
/// pole lies.
pub fn sample_generic_t(rng: &mut ChaCha8Rng) -> Q {
    loop {
        let t = sample_q(rng);
        if !t.is_integer() {
            return t;
        }
    }
}

/// A point with `κ ≠ 0`; other predicates are left to the constructors.
pub fn sample_point(rng: &mut ChaCha8Rng, k: usize, n: usize) -> EvalPoint {
    let z = (0..n).map(|_| sample_q(rng)).collect();
    let lambda = (0..k).map(|_| sample_q(rng)).collect();
    let mut kappa = sample_q(rng);
    while kappa.is_zero() {
        kappa = sample_q(rng);
    }
    EvalPoint::new(z, lambda, kappa)
}

fn format_column(basis: &Basis, col: &[(usize, Q)]) -> String {
    if col.is_empty() {
        return "0".into();
    }
    col.iter()
        .map(|(i, x)| format!("{}: {}", basis.get(*i), crate::exactalg::scalar::q_to_fraction_string(x)))
        .collect::<Vec<_>>()
        .join(", ")
}

/// `None` when equal, otherwise the first differing column.
pub fn compare_matrices(left: &MatrixOperator<Q>, right: &MatrixOperator<Q>) -> Outcome {
    let j = left.first_difference(right)?;
    let basis = left.basis();
    Some(Witness {
        detail: "matrices differ".into(),
        basis: Some(basis.get(j).to_string()),
        left: Some(format_column(basis, &left.column(j))),
        right: Some(format_column(basis, &right.column(j))),
    })
}

pub fn compare_first_order(left: &FirstOrderOp<Q>, right: &FirstOrderOp<Q>) -> Outcome {
    if left.derivative != right.derivative {
        let show = |op: &FirstOrderOp<Q>| {
            op.derivative
                .iter()
                .map(|(v, c)| format!("{v}: {}", crate::exactalg::scalar::q_to_fraction_string(c)))
                .collect::<Vec<_>>()
                .join(", ")
        };
        return Some(Witness {
            detail: "derivative parts differ".into(),
            basis: None,
            left: Some(show(left)),
            right: Some(show(right)),
        });
    }
    compare_matrices(&left.zeroth, &right.zeroth)
}

pub fn compare_shift(left: &ShiftOp<Q>, right: &ShiftOp<Q>) -> Outcome {
    if left.var != right.var || left.step != right.step {
        return Some(Witness {
            detail: "shift descriptors differ".into(),
            basis: None,
            left: Some(format!("{} by {}", left.var, left.step)),
            right: Some(format!("{} by {}", right.var, right.step)),
        });
    }
    compare_matrices(&left.coeff, &right.coeff)
}

/// Runs cases with shared, lazily built spaces.
#[derive(Default)]
pub struct Verifier {
    spaces: Mutex<HashMap<(usize, usize), Arc<FermionSpace>>>,
    timing: bool,
}

impl Verifier {
    pub fn new() -> Self {
        Verifier::default()
    }

    /// Records wall-clock milliseconds in reports (otherwise `0`, which keeps
    /// reports byte-identical across runs).
    pub fn with_timing(mut self, on: bool) -> Self {
        self.timing = on;
        self
    }

    pub fn space(&self, k: usize, n: usize) -> Result<Arc<FermionSpace>> {
        if let Some(s) = self.spaces.lock().expect("space cache").get(&(k, n)) {
            return Ok(s.clone());
        }
        let s = Arc::new(FermionSpace::new(k, n)?);
        Ok(self.spaces.lock().expect("space cache").entry((k, n)).or_insert(s).clone())
    }

    /// All cases concurrently; reports come back in input order.
    pub fn run_all(&self, cases: &[Case]) -> Vec<Report> {
        cases.par_iter().map(|c| self.run(c)).collect()
    }

    pub fn run(&self, case: &Case) -> Report {
        let start = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(case.seed);
        let mut report = Report {
            case: *case,
            status: Status::Pass,
            point: None,
            params: Vec::new(),
            witness: None,
            attempts: 0,
            checks: 0,
            millis: 0,
        };
        if case.id.is_structure() {
            report.attempts = 1;
            let mut tally = Tally::default();
            let res = structure::run(self, case, &mut rng, &mut tally);
            self.finish(&mut report, tally, res);
        } else {
            loop {
                if report.attempts == MAX_ATTEMPTS {
                    report.status = Status::SkippedNongeneric;
                    report.point = None;
                    report.witness = Some(Witness::note(format!("no generic point in {MAX_ATTEMPTS} attempts")));
                    break;
                }
                report.attempts += 1;
                let pt = sample_point(&mut rng, case.k, case.n);
                let mut tally = Tally::default();
                let res = if case.id.is_theorem() {
                    theorems::run(self, case, &pt, &mut rng, &mut tally)
                } else {
                    commuting::run(self, case, &pt, &mut tally)
                };
                if matches!(res, Err(Error::Genericity(_))) {
                    continue;
                }
                report.point = Some(pt);
                self.finish(&mut report, tally, res);
                break;
            }
        }
        if self.timing {
            report.millis = start.elapsed().as_millis() as u64;
        }
        report
    }

    fn finish(&self, report: &mut Report, tally: Tally, res: Result<()>) {
        report.checks = tally.checks;
        report.params = tally.params;
        match (res, tally.failure) {
            (Err(e), _) => {
                report.status = Status::Fail;
                report.witness = Some(Witness::note(format!("error: {e}")));
            }
            (Ok(()), Some(w)) => {
                report.status = Status::Fail;
                report.witness = Some(w);
            }
            (Ok(()), None) => report.status = Status::Pass,
        }
    }
}

/// Default `(k, n)` grid for the duality relations.
pub const DEFAULT_GRID: [(usize, usize); 7] = [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (3, 2), (3, 3)];

/// Default shapes for the commuting families.
pub const COMM_GRID: [(usize, usize); 2] = [(2, 2), (2, 3)];

/// Shapes each structure identity sweeps when no shape is given.
pub fn structure_shapes(id: IdentityId) -> Vec<(usize, usize)> {
    let two = |hi: usize| (1..=hi).map(|n| (2, n)).collect::<Vec<_>>();
    match id {
        IdentityId::Howe => (1..=3).flat_map(|k| (1..=4).map(move |n| (k, n))).collect(),
        IdentityId::Adjoint => {
            let mut v = two(5);
            v.extend([(1, 3), (3, 2), (3, 3)]);
            v
        }
        IdentityId::VmHw | IdentityId::VmNorm | IdentityId::AlphaBeta => two(6),
        IdentityId::Casimir | IdentityId::Ortho => two(5),
        IdentityId::ValueRel | IdentityId::BRestrict => two(4),
        IdentityId::RCross => two(3),
        _ => Vec::new(),
    }
}

/// The case list for a selection. With `shape = None` the defaults are used:
/// the grid with `points` seeds for the relations, the commuting grid with
/// `min(points, 3)` seeds, and each structure identity's sweep with the
/// base seed.
pub fn plan(ids: &[IdentityId], shape: Option<(usize, usize)>, points: usize, seed: u64) -> Vec<Case> {
    let mut cases = Vec::new();
    let seeds = |count: usize| (0..count as u64).map(move |s| seed + s);
    for &id in ids {
        let shapes: Vec<(usize, usize)> = match (shape, id) {
            (Some((k, n)), id) if id.needs_two_rows() && k != 2 => {
                let _ = n;
                Vec::new()
            }
            (Some(s), _) => vec![s],
            (None, id) if id.is_theorem() => DEFAULT_GRID.to_vec(),
            (None, id) if id.is_commuting() => COMM_GRID.to_vec(),
            (None, id) => structure_shapes(id),
        };
        let count = if id.is_structure() {
            1
        } else if id.is_commuting() && shape.is_none() {
            points.min(3)
        } else {
            points
        };
        for (k, n) in shapes {
            for s in seeds(count) {
                cases.push(Case { id, k, n, seed: s });
            }
        }
    }
    cases
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::qi;

    #[test]
    fn identity_parsing() {
        assert_eq!("th3".parse::<IdentityId>().unwrap(), IdentityId::Th3);
        assert_eq!("value-rel".parse::<IdentityId>().unwrap(), IdentityId::ValueRel);
        assert_eq!(IdentityId::parse_list("th1..th6").unwrap(), IdentityId::ALL[..6].to_vec());
        assert_eq!(IdentityId::parse_list("howe, th2").unwrap(), vec![IdentityId::Th2, IdentityId::Howe]);
        assert!(IdentityId::parse_list("th7").is_err());
        assert!(IdentityId::parse_list("th6..th1").is_err());
        assert_eq!(IdentityId::parse_list("all").unwrap().len(), 19);
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = sample_point(&mut ChaCha8Rng::seed_from_u64(7), 2, 3);
        let b = sample_point(&mut ChaCha8Rng::seed_from_u64(7), 2, 3);
        assert_eq!(a, b);
        assert!(!a.kappa.is_zero());
        for x in a.z.iter().chain(&a.lambda) {
            assert!(x.numer().magnitude() <= &1000u32.into());
            assert!(x.denom() <= &16.into());
        }
    }

    #[test]
    fn default_plan_sizes() {
        let cases = plan(&IdentityId::ALL[..6], None, 5, 0);
        assert_eq!(cases.len(), 6 * 7 * 5);
        let comm = plan(&IdentityId::ALL[6..9], None, 5, 0);
        assert_eq!(comm.len(), 3 * 2 * 3);
        let howe = plan(&[IdentityId::Howe], None, 5, 0);
        assert_eq!(howe.len(), 12);
        assert!(plan(&[IdentityId::Casimir], Some((3, 3)), 5, 0).is_empty());
    }

    #[test]
    fn witness_names_the_column() {
        let space = FermionSpace::new(1, 2).unwrap();
        let a = space.identity();
        let b = a.add(&MatrixOperator::from_triplets(space.basis().clone(), [(1, 1, qi(1))]));
        let w = compare_matrices(&a, &b).unwrap();
        assert_eq!(w.basis.as_deref(), Some("x[1,1]"));
        assert_eq!(w.left.as_deref(), Some("x[1,1]: 1/1"));
        assert_eq!(w.right.as_deref(), Some("x[1,1]: 2/1"));
        assert!(compare_matrices(&a, &a).is_none());
    }
}
