//! Pairwise and determinant-level verification checks.
//!
//! Pairwise identities are checked on integer exponents, which pinpoints the
//! first failing basis pair. The matrix identities relating join and Gram
//! matrices follow entrywise from them and are checked in the variable
//! `q = d^(1/2)` so that every exponent is an integer.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::det::{det_bareiss, det_formula_b, det_formula_b_eval};
use super::{build_from_basis, Basis, DiagonalExponents, Fault, MatrixKind, Specialization};
use crate::error::{Error, Result};
use crate::ncpart::Kind;
use crate::polyalg::{Monomial, Poly};
use crate::tldiag;

/// `d` values of the evaluation grid.
pub const EVAL_GRID_DELTA: [i64; 5] = [2, 3, 5, 7, 11];
/// `a` values of the evaluation grid.
pub const EVAL_GRID_ALPHA: [i64; 4] = [1, 2, 3, 4];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// The identity that failed.
    pub identity: String,
    /// 1-based basis indices of the failing pair, when pairwise.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub j: Option<usize>,
    /// `(a, d)` evaluation point, when the check is grid based.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub point: Option<(i64, i64)>,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.identity)?;
        if let (Some(i), Some(j)) = (self.i, self.j) {
            write!(f, " at pair ({i},{j})")?;
        }
        if let Some((a, d)) = self.point {
            write!(f, " at a={a} d={d}")?;
        }
        write!(f, ": lhs={} rhs={}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub n: usize,
    pub pass: bool,
    pub pairs_checked: u64,
    pub counterexample: Option<Counterexample>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl VerificationReport {
    fn new(check: Check, n: usize) -> Self {
        VerificationReport {
            check: check.name().to_string(),
            n,
            pass: true,
            pairs_checked: 0,
            counterexample: None,
            notes: Vec::new(),
        }
    }

    /// `PASS theoremA n=1 pairs=1`, or the failing identity after `FAIL`.
    pub fn summary_line(&self) -> String {
        let head = format!(
            "{} {} n={} pairs={}",
            if self.pass { "PASS" } else { "FAIL" },
            self.check,
            self.n,
            self.pairs_checked
        );
        match &self.counterexample {
            Some(c) => format!("{head}: {c}"),
            None => head,
        }
    }

    fn fail(&mut self, c: Counterexample) {
        if self.counterexample.is_none() {
            self.counterexample = Some(c);
        }
        self.pass = false;
    }

    fn expect_pair(&mut self, identity: &str, i: usize, j: usize, lhs: i64, rhs: i64) {
        if lhs != rhs {
            self.fail(Counterexample {
                identity: identity.to_string(),
                i: Some(i + 1),
                j: Some(j + 1),
                point: None,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }

    fn expect_value(&mut self, identity: &str, lhs: impl ToString, rhs: impl ToString) {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        if lhs != rhs {
            self.fail(Counterexample {
                identity: identity.to_string(),
                i: None,
                j: None,
                point: None,
                lhs,
                rhs,
            });
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    TheoremA,
    TheoremB,
    Lemma,
    DetSymbolic,
    DetEval,
    DetOneVar,
    Sums,
    Annular,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::TheoremA,
        Check::TheoremB,
        Check::Lemma,
        Check::DetSymbolic,
        Check::DetEval,
        Check::DetOneVar,
        Check::Sums,
        Check::Annular,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::TheoremA => "theoremA",
            Check::TheoremB => "theoremB",
            Check::Lemma => "lemma",
            Check::DetSymbolic => "detSymbolic",
            Check::DetEval => "detEval",
            Check::DetOneVar => "detOneVar",
            Check::Sums => "sums",
            Check::Annular => "annular",
        }
    }

    /// Largest supported `n`.
    pub fn max_n(self) -> usize {
        match self {
            Check::TheoremA => 6,
            Check::TheoremB | Check::Lemma | Check::DetEval | Check::Annular => 4,
            Check::DetSymbolic | Check::DetOneVar => 3,
            Check::Sums => 6,
        }
    }

    pub fn run(self, n: usize, fault: Option<Fault>) -> Result<VerificationReport> {
        match self {
            Check::TheoremA => verify_theorem_a(n, fault),
            Check::TheoremB => verify_theorem_b(n, fault),
            Check::Lemma => verify_lemma_bk0(n, fault),
            Check::DetSymbolic => verify_det_b(n, DetMethod::Symbolic, fault),
            Check::DetEval => verify_det_b(n, DetMethod::Evaluation, fault),
            Check::DetOneVar => verify_det_one_var(n, fault),
            Check::Sums => verify_detp_and_involution(n),
            Check::Annular => verify_annular(n, fault),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
                format!("unknown check '{s}' (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetMethod {
    Symbolic,
    Evaluation,
}

fn limit(check: Check, n: usize) -> Result<()> {
    Error::check_range(check.name(), n, 1, check.max_n())
}

/// Largest `n` for which the type A check also compares determinants.
pub const DET_A_MAX: usize = 4;

/// Type A: `2 bk(join) = c + bk_i + bk_j - n` for every ordered pair, the
/// entrywise similarity `J(d^2) = P G(d) P` written in `q`, and for small `n`
/// the determinant relation that follows from it.
pub fn verify_theorem_a(n: usize, fault: Option<Fault>) -> Result<VerificationReport> {
    limit(Check::TheoremA, n)?;
    let basis = Basis::new(Kind::A, n)?;
    let diag = DiagonalExponents::from_basis(&basis);
    let ja = build_from_basis(MatrixKind::JA, &basis, fault)?;
    let ga = build_from_basis(MatrixKind::GA, &basis, fault)?;
    let bk: Vec<i64> = basis.partitions().iter().map(|p| p.bk() as i64).collect();
    let n_ = n as i64;
    let mut report = VerificationReport::new(Check::TheoremA, n);
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            let s = basis.pair_a(i, j, fault)?;
            report.expect_pair(
                "2bk(join) = c + bk_i + bk_j - n",
                i,
                j,
                2 * s.join_bk as i64,
                s.circles as i64 + bk[i] + bk[j] - n_,
            );
            report.expect_pair(
                "q-exponent of J(d^2) = P G(d) P",
                i,
                j,
                4 * ja.entry(i, j).ed as i64,
                diag.doubled_delta[i] + 2 * ga.entry(i, j).ed as i64 + diag.doubled_delta[j],
            );
            report.pairs_checked += 1;
        }
    }
    if n <= DET_A_MAX {
        // det J(d^2) = d^(sum of diagonal q-exponents) det G(d)
        let spec = Specialization { squares: true, alpha_one: true };
        let det_j = det_bareiss(ja.to_polys(spec))?;
        let det_g = det_bareiss(ga.to_polys(Specialization::default()))?;
        let shift = diag.det_doubled_delta();
        let power = |k: i64| Poly::term(1, Monomial::new(0, k.max(0) as u32));
        let det_j = power(-shift).try_mul(&det_j)?;
        let rhs = power(shift).try_mul(&det_g)?;
        report.expect_value("det J(d^2) = d^s det G(d)", det_j, rhs);
    }
    Ok(report)
}

/// Type B: the non-zero and zero-block identities for every ordered pair,
/// the total-circle identity, and the two-variable similarity
/// `J(a^2, d^2) = P G(a, d) P` written in `(a, q)`.
pub fn verify_theorem_b(n: usize, fault: Option<Fault>) -> Result<VerificationReport> {
    limit(Check::TheoremB, n)?;
    let basis = Basis::new(Kind::B, n)?;
    let diag = DiagonalExponents::from_basis(&basis);
    let jb = build_from_basis(MatrixKind::JB, &basis, fault)?;
    let gb = build_from_basis(MatrixKind::GB, &basis, fault)?;
    let stat = |f: fn(&crate::ncpart::Partition) -> usize| -> Vec<i64> {
        basis.partitions().iter().map(|p| f(p) as i64).collect()
    };
    let (bk, bk0, nzbk) = (stat(|p| p.bk()), stat(|p| p.bk0()), stat(|p| p.nzbk()));
    let n_ = n as i64;
    let mut report = VerificationReport::new(Check::TheoremB, n);
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            let s = basis.pair_b(i, j, fault)?;
            let (jbk0, jnz, c0, cd) = (s.join_bk0 as i64, s.join_nzbk as i64, s.c0 as i64, s.cd as i64);
            report.expect_pair(
                "2nzbk(join) = cd + nzbk_i + nzbk_j - n",
                i,
                j,
                2 * jnz,
                cd + nzbk[i] + nzbk[j] - n_,
            );
            report.expect_pair("2bk0(join) = c0 + bk0_i + bk0_j", i, j, 2 * jbk0, c0 + bk0[i] + bk0[j]);
            report.expect_pair(
                "2bk(join) = c0 + 2cd + bk_i + bk_j - 2n",
                i,
                j,
                2 * (jbk0 + 2 * jnz),
                c0 + 2 * cd + bk[i] + bk[j] - 2 * n_,
            );
            report.expect_pair(
                "a-exponent of J(a^2,d^2) = P G(a,d) P",
                i,
                j,
                2 * jb.entry(i, j).ea as i64,
                diag.alpha[i] as i64 + gb.entry(i, j).ea as i64 + diag.alpha[j] as i64,
            );
            report.expect_pair(
                "q-exponent of J(a^2,d^2) = P G(a,d) P",
                i,
                j,
                4 * jb.entry(i, j).ed as i64,
                diag.doubled_delta[i] + 2 * gb.entry(i, j).ed as i64 + diag.doubled_delta[j],
            );
            report.pairs_checked += 1;
        }
    }
    Ok(report)
}

/// Zero-block identity `2 bk0(join) = c0 + bk0_i + bk0_j`, plus a per-block
/// account of the invariant circles.
///
/// Each circle of the glued diagram lies over exactly one block `K` of the
/// join. A non-zero `K` carries no invariant circles; a zero `K` carries
/// 2, 1 or 0 of them when it contains 0, 1 or 2 zero blocks of the two
/// factors. The per-block prediction is compared with the circles actually
/// found over `K`, and its total with `c0`.
pub fn verify_lemma_bk0(n: usize, fault: Option<Fault>) -> Result<VerificationReport> {
    limit(Check::Lemma, n)?;
    let basis = Basis::new(Kind::B, n)?;
    let mut report = VerificationReport::new(Check::Lemma, n);
    let mut cases = [0u64; 4];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            let (pi, pj) = (&basis.partitions()[i], &basis.partitions()[j]);
            let s = basis.pair_b(i, j, fault)?;
            report.expect_pair(
                "2bk0(join) = c0 + bk0_i + bk0_j",
                i,
                j,
                2 * s.join_bk0 as i64,
                (s.c0 + pi.bk0() + pj.bk0()) as i64,
            );

            let join = pi.join(pj)?;
            let owner = join.block_index();
            let join_zero = join.zero_block_indices();
            let mut zero_constituents = vec![0usize; join.bk()];
            for p in [pi, pj] {
                for z in p.zero_block_indices() {
                    zero_constituents[owner[p.position_blocks()[z][0] - 1]] += 1;
                }
            }
            let mut observed = vec![0usize; join.bk()];
            let (bi, bj) = (&basis.diagrams()[i], &basis.diagrams()[j]);
            for cycle in tldiag::glue_cycles(bi, bj)? {
                if tldiag::is_invariant_cycle(bi, &cycle) {
                    observed[owner[cycle[0].div_ceil(2) - 1]] += 1;
                }
            }
            let mut predicted_total = 0;
            for k in 0..join.bk() {
                let predicted = if join_zero.contains(&k) {
                    let zc = zero_constituents[k];
                    cases[1 + zc.min(2)] += 1;
                    2usize.saturating_sub(zc)
                } else {
                    cases[0] += 1;
                    0
                };
                predicted_total += predicted;
                report.expect_pair(
                    &format!("invariant circles over join block {}", k + 1),
                    i,
                    j,
                    observed[k] as i64,
                    predicted as i64,
                );
            }
            report.expect_pair("four-case circle tally = c0", i, j, predicted_total as i64, s.c0 as i64);
            report.pairs_checked += 1;
        }
    }
    report.notes.push(format!(
        "join blocks by case: non-zero={} zero/0-zero-constituents={} zero/1={} zero/2={}",
        cases[0], cases[1], cases[2], cases[3]
    ));
    Ok(report)
}

/// Determinant of the two-variable type B join matrix after `a -> a^2`,
/// `d -> d^2` against its closed form.
///
/// `Symbolic` compares expanded polynomials. `Evaluation` compares exact
/// integer values on the fixed grid [`EVAL_GRID_ALPHA`] x [`EVAL_GRID_DELTA`];
/// that is a consistency check, not a proof of polynomial identity.
pub fn verify_det_b(n: usize, method: DetMethod, fault: Option<Fault>) -> Result<VerificationReport> {
    let check = match method {
        DetMethod::Symbolic => Check::DetSymbolic,
        DetMethod::Evaluation => Check::DetEval,
    };
    limit(check, n)?;
    let basis = Basis::new(Kind::B, n)?;
    let jb = build_from_basis(MatrixKind::JB, &basis, fault)?;
    let spec = Specialization {
        squares: true,
        alpha_one: false,
    };
    let mut report = VerificationReport::new(check, n);
    report.pairs_checked = (jb.dim() * jb.dim()) as u64;
    match method {
        DetMethod::Symbolic => {
            let det = det_bareiss(jb.to_polys(spec))?;
            let formula = det_formula_b(n, true)?;
            report.notes.push(format!(
                "det has {} terms, total degree {}",
                det.num_terms(),
                det.total_degree().unwrap_or(0)
            ));
            report.expect_value("det J(a^2,d^2) = a^C(2n,n) prod (T_i^2 - a^2)^C(2n,n-i)", &det, &formula);
        }
        DetMethod::Evaluation => {
            let mut points = 0;
            for &a in &EVAL_GRID_ALPHA {
                for &d in &EVAL_GRID_DELTA {
                    let lhs = det_bareiss(jb.to_integers(spec, a, d))?;
                    let rhs = det_formula_b_eval(n, true, &BigInt::from(a), &BigInt::from(d));
                    if lhs != rhs {
                        report.fail(Counterexample {
                            identity: "det J(a^2,d^2) = a^C(2n,n) prod (T_i^2 - a^2)^C(2n,n-i)".into(),
                            i: None,
                            j: None,
                            point: Some((a, d)),
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                        });
                    }
                    points += 1;
                }
            }
            report.notes.push(format!(
                "exact integer agreement checked at {points} grid points; consistency check, not an identity proof"
            ));
        }
    }
    Ok(report)
}

/// One-variable form: `det J(d^2) = prod (T_i^2 - 1)^C(2n,n-i)`.
pub fn verify_det_one_var(n: usize, fault: Option<Fault>) -> Result<VerificationReport> {
    limit(Check::DetOneVar, n)?;
    let basis = Basis::new(Kind::B, n)?;
    let jb = build_from_basis(MatrixKind::JB, &basis, fault)?;
    let mut report = VerificationReport::new(Check::DetOneVar, n);
    report.pairs_checked = (jb.dim() * jb.dim()) as u64;
    let det = det_bareiss(jb.to_polys(Specialization {
        squares: true,
        alpha_one: true,
    }))?;
    let formula = det_formula_b(n, false)?;
    report.expect_value("det J(d^2) = prod (T_i^2 - 1)^C(2n,n-i)", &det, &formula);
    let two_var_at_one = det_formula_b(n, true)?.at_alpha_one();
    report.expect_value("two-variable formula at a=1", &two_var_at_one, &formula);
    Ok(report)
}

/// Block statistics behind `det P = a^(C(2n,n)/2)`: the sums of `bk0` and
/// `nzbk` over the basis, and the refined count symmetry
/// `#{bk0 = 1, nzbk = k} = #{bk0 = 0, nzbk = n - k}`.
pub fn verify_detp_and_involution(n: usize) -> Result<VerificationReport> {
    limit(Check::Sums, n)?;
    let basis = Basis::new(Kind::B, n)?;
    let total = basis.len() as u64;
    let mut report = VerificationReport::new(Check::Sums, n);
    report.pairs_checked = total;
    let diag = DiagonalExponents::from_basis(&basis);
    let sum_bk0: u64 = basis.partitions().iter().map(|p| p.bk0() as u64).sum();
    let sum_nzbk: u64 = basis.partitions().iter().map(|p| p.nzbk() as u64).sum();
    report.notes.push(format!("sum bk0 = {sum_bk0}, expected C(2n,n)/2 = {}", total / 2));
    report.notes.push(format!(
        "sum nzbk = {sum_nzbk}, expected n*C(2n,n)/2 = {}",
        n as u64 * total / 2
    ));
    report.expect_value("sum bk0 = C(2n,n)/2", sum_bk0, total / 2);
    report.expect_value("sum nzbk = n*C(2n,n)/2", sum_nzbk, n as u64 * total / 2);
    report.expect_value("det P a-exponent = C(2n,n)/2", diag.det_alpha(), total / 2);
    report.expect_value("det P q-exponent = 0", diag.det_doubled_delta(), 0);
    let mut counts = vec![[0u64; 2]; n + 1];
    for p in basis.partitions() {
        counts[p.nzbk()][p.bk0()] += 1;
    }
    for k in 0..=n {
        report.expect_value(
            &format!("#(bk0=1, nzbk={k}) = #(bk0=0, nzbk={})", n - k),
            counts[k][1],
            counts[n - k][0],
        );
    }
    Ok(report)
}

/// Gram matrix of type B built twice: from half-turn orbits of circles on
/// the symmetric diagrams, and from crossing parities in the annular
/// quotient.
pub fn verify_annular(n: usize, fault: Option<Fault>) -> Result<VerificationReport> {
    limit(Check::Annular, n)?;
    let basis = Basis::new(Kind::B, n)?;
    let gb = build_from_basis(MatrixKind::GB, &basis, fault)?;
    let annular = basis
        .diagrams()
        .iter()
        .map(tldiag::to_annular)
        .collect::<Result<Vec<_>>>()?;
    let mut report = VerificationReport::new(Check::Annular, n);
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            let glued = tldiag::annular_glue(&annular[i], &annular[j])?;
            let entry = gb.entry(i, j);
            report.expect_pair("c0 = nontrivial annular circles", i, j, entry.ea as i64, glued.nontrivial as i64);
            report.expect_pair("cd = trivial annular circles", i, j, entry.ed as i64, glued.trivial as i64);
            report.pairs_checked += 1;
        }
    }
    Ok(report)
}

/// Maximum `n` per check for [`verify_all`]. The defaults are the
/// acceptance sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    limits: Vec<(Check, usize)>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            limits: Check::ALL.iter().map(|&c| (c, c.max_n())).collect(),
        }
    }
}

impl Limits {
    pub fn get(&self, check: Check) -> usize {
        self.limits
            .iter()
            .find(|(c, _)| *c == check)
            .map(|&(_, n)| n)
            .unwrap_or(0)
    }

    /// Sets the maximum `n` for one check; 0 skips it.
    pub fn set(&mut self, check: Check, n: usize) -> Result<()> {
        if n > check.max_n() {
            return Err(Error::size_limit(check.name(), n, 0, check.max_n()));
        }
        for entry in &mut self.limits {
            if entry.0 == check {
                entry.1 = n;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AggregateReport {
    pub pass: bool,
    pub reports: Vec<VerificationReport>,
}

impl AggregateReport {
    pub fn first_failure(&self) -> Option<&VerificationReport> {
        self.reports.iter().find(|r| !r.pass)
    }
}

/// Runs every check for `n = 1..=limit`.
pub fn verify_all(limits: &Limits, fault: Option<Fault>) -> Result<AggregateReport> {
    let mut reports = Vec::new();
    for check in Check::ALL {
        for n in 1..=limits.get(check) {
            reports.push(check.run(n, fault)?);
        }
    }
    Ok(AggregateReport {
        pass: reports.iter().all(|r| r.pass),
        reports,
    })
}
