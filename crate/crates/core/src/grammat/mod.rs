//! Matrices of chromatic joins and Temperley-Lieb Gram matrices, the
//! diagonal rescaling data relating them, exact determinants, and the
//! pairwise verification checks.
//!
//! All four matrix families have single monomials as entries, so a matrix
//! is stored as exponent pairs and only turned into [`Poly`] entries when a
//! determinant is taken.

mod det;
mod verify;

pub use det::{det_bareiss, det_formula_b, det_formula_b_eval, BareissDomain};
pub use verify::{
    verify_all, verify_annular, verify_det_b, verify_det_one_var, verify_detp_and_involution,
    verify_lemma_bk0, verify_theorem_a, verify_theorem_b, AggregateReport, Check, Counterexample,
    DetMethod, Limits, VerificationReport, EVAL_GRID_ALPHA, EVAL_GRID_DELTA,
};

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ncpart::{enumerate_nc, Kind, NcPartition};
use crate::polyalg::{Monomial, Poly};
use crate::tldiag::{self, Matching};

/// Largest type A rank for which matrices are built.
pub const MAX_MATRIX_A: usize = 8;
/// Largest type B rank for which matrices are built.
pub const MAX_MATRIX_B: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MatrixKind {
    JA,
    GA,
    JB,
    GB,
}

impl MatrixKind {
    pub fn partition_kind(self) -> Kind {
        match self {
            MatrixKind::JA | MatrixKind::GA => Kind::A,
            MatrixKind::JB | MatrixKind::GB => Kind::B,
        }
    }

    pub fn is_join(self) -> bool {
        matches!(self, MatrixKind::JA | MatrixKind::JB)
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for MatrixKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "JA" => Ok(MatrixKind::JA),
            "GA" => Ok(MatrixKind::GA),
            "JB" => Ok(MatrixKind::JB),
            "GB" => Ok(MatrixKind::GB),
            _ => Err(format!("unknown matrix kind '{s}' (expected JA, GA, JB or GB)")),
        }
    }
}

/// Which pairwise quantity a [`Fault`] perturbs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaultTarget {
    /// `c` for type A, `cd` for type B.
    Circles,
    /// `c0` (type B only).
    ZeroCircles,
    /// `bk` of the join for type A, `nzbk` of the join for type B.
    Blocks,
    /// `bk0` of the join (type B only).
    ZeroBlocks,
}

/// Test hook: adds one to a single pairwise count at basis indices
/// `(i, j)` (0-based, ordered).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fault {
    pub target: FaultTarget,
    pub i: usize,
    pub j: usize,
}

impl Fault {
    fn bump(fault: Option<Fault>, target: FaultTarget, i: usize, j: usize) -> usize {
        match fault {
            Some(f) if f.target == target && f.i == i && f.j == j => 1,
            _ => 0,
        }
    }
}

impl FromStr for Fault {
    type Err = String;

    /// `target:i:j` with 1-based indices, e.g. `circles:2:3`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [target, i, j] = parts.as_slice() else {
            return Err(format!("fault '{s}' is not of the form target:i:j"));
        };
        let target = match *target {
            "circles" => FaultTarget::Circles,
            "zero-circles" => FaultTarget::ZeroCircles,
            "blocks" => FaultTarget::Blocks,
            "zero-blocks" => FaultTarget::ZeroBlocks,
            other => return Err(format!("unknown fault target '{other}'")),
        };
        let index = |t: &str| match t.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k - 1),
            _ => Err(format!("bad 1-based index '{t}'")),
        };
        Ok(Fault {
            target,
            i: index(i)?,
            j: index(j)?,
        })
    }
}

/// The canonical basis of non-crossing partitions together with their
/// diagram images.
#[derive(Clone, Debug)]
pub struct Basis {
    kind: Kind,
    n: usize,
    partitions: Vec<NcPartition>,
    diagrams: Vec<Matching>,
}

impl Basis {
    pub fn new(kind: Kind, n: usize) -> Result<Self> {
        let partitions = enumerate_nc(kind, n)?;
        let diagrams = partitions
            .iter()
            .map(|p| match kind {
                Kind::A => tldiag::iota_a(p),
                Kind::B => tldiag::iota_b(p),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Basis {
            kind,
            n,
            partitions,
            diagrams,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    pub fn partitions(&self) -> &[NcPartition] {
        &self.partitions
    }

    pub fn diagrams(&self) -> &[Matching] {
        &self.diagrams
    }

    /// Join and gluing statistics of a type A pair.
    pub fn pair_a(&self, i: usize, j: usize, fault: Option<Fault>) -> Result<PairStatsA> {
        let join = self.partitions[i].join(&self.partitions[j])?;
        let circles = tldiag::glue_count_a(&self.diagrams[i], &self.diagrams[j])?;
        Ok(PairStatsA {
            join_bk: join.bk() + Fault::bump(fault, FaultTarget::Blocks, i, j),
            circles: circles + Fault::bump(fault, FaultTarget::Circles, i, j),
        })
    }

    /// Join and gluing statistics of a type B pair.
    pub fn pair_b(&self, i: usize, j: usize, fault: Option<Fault>) -> Result<PairStatsB> {
        let join = self.partitions[i].join(&self.partitions[j])?;
        let counts = tldiag::glue_count_b(&self.diagrams[i], &self.diagrams[j])?;
        Ok(PairStatsB {
            join_bk0: join.bk0() + Fault::bump(fault, FaultTarget::ZeroBlocks, i, j),
            join_nzbk: join.nzbk() + Fault::bump(fault, FaultTarget::Blocks, i, j),
            c0: counts.c0 + Fault::bump(fault, FaultTarget::ZeroCircles, i, j),
            cd: counts.cd + Fault::bump(fault, FaultTarget::Circles, i, j),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairStatsA {
    pub join_bk: usize,
    pub circles: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairStatsB {
    pub join_bk0: usize,
    pub join_nzbk: usize,
    pub c0: usize,
    pub cd: usize,
}

/// A basis element as it appears in matrix JSON: encoded partition for
/// join matrices, chord list for Gram matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisElement {
    Partition(String),
    Diagram(Matching),
}

impl Serialize for BasisElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BasisElement::Partition(s) => s.serialize(serializer),
            BasisElement::Diagram(m) => m.serialize(serializer),
        }
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::Partition(s) => f.write_str(s),
            BasisElement::Diagram(m) => m.fmt(f),
        }
    }
}

/// How monomial entries become polynomials.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Specialization {
    /// Replace `a -> a^2`, `d -> d^2`.
    pub squares: bool,
    /// Set `a := 1`.
    pub alpha_one: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialMatrix {
    pub kind: MatrixKind,
    pub n: usize,
    pub basis: Vec<BasisElement>,
    pub entries: Vec<Vec<Monomial>>,
}

impl MonomialMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> Monomial {
        self.entries[i][j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim()).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn to_polys(&self, spec: Specialization) -> Vec<Vec<Poly>> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&m| {
                        let k = if spec.squares { 2 } else { 1 };
                        let ea = if spec.alpha_one { 0 } else { k * m.ea };
                        Poly::term(1, Monomial::new(ea, k * m.ed))
                    })
                    .collect()
            })
            .collect()
    }

    /// Entries evaluated at integers after the given specialization.
    pub fn to_integers(&self, spec: Specialization, alpha: i64, delta: i64) -> Vec<Vec<num_bigint::BigInt>> {
        use num_bigint::BigInt;
        let (a, d) = if spec.squares {
            (alpha * alpha, delta * delta)
        } else {
            (alpha, delta)
        };
        let a = if spec.alpha_one { 1 } else { a };
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|m| {
                        num_traits::pow(BigInt::from(a), m.ea as usize)
                            * num_traits::pow(BigInt::from(d), m.ed as usize)
                    })
                    .collect()
            })
            .collect()
    }

    /// One text line per row, entries separated by spaces.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in &self.entries {
            let line: Vec<String> = row.iter().map(|&m| Poly::term(1, m).to_text()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

fn matrix_limit(kind: Kind, n: usize) -> Result<()> {
    let max = match kind {
        Kind::A => MAX_MATRIX_A,
        Kind::B => MAX_MATRIX_B,
    };
    Error::check_range("matrix construction", n, 1, max)
}

pub fn build_matrix(kind: MatrixKind, n: usize) -> Result<MonomialMatrix> {
    build_matrix_with(kind, n, None)
}

/// [`build_matrix`] with an optional injected fault.
pub fn build_matrix_with(kind: MatrixKind, n: usize, fault: Option<Fault>) -> Result<MonomialMatrix> {
    matrix_limit(kind.partition_kind(), n)?;
    let basis = Basis::new(kind.partition_kind(), n)?;
    build_from_basis(kind, &basis, fault)
}

pub(crate) fn build_from_basis(kind: MatrixKind, basis: &Basis, fault: Option<Fault>) -> Result<MonomialMatrix> {
    let dim = basis.len();
    let mut entries = vec![vec![Monomial::ONE; dim]; dim];
    for (i, row) in entries.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            *e = match kind {
                MatrixKind::JA => Monomial::new(0, basis.pair_a(i, j, fault)?.join_bk as u32),
                MatrixKind::GA => Monomial::new(0, basis.pair_a(i, j, fault)?.circles as u32),
                MatrixKind::JB => {
                    let s = basis.pair_b(i, j, fault)?;
                    Monomial::new(s.join_bk0 as u32, s.join_nzbk as u32)
                }
                MatrixKind::GB => {
                    let s = basis.pair_b(i, j, fault)?;
                    Monomial::new(s.c0 as u32, s.cd as u32)
                }
            };
        }
    }
    let basis_elems = if kind.is_join() {
        basis
            .partitions()
            .iter()
            .map(|p| BasisElement::Partition(p.encode()))
            .collect()
    } else {
        basis.diagrams().iter().cloned().map(BasisElement::Diagram).collect()
    };
    Ok(MonomialMatrix {
        kind,
        n: basis.n(),
        basis: basis_elems,
        entries,
    })
}

/// Exponents of the diagonal rescaling matrix.
///
/// `doubled_delta[i]` is twice the exponent of `d`, so it is the exponent
/// of `q = d^(1/2)`: `2 bk - n` for type A, `2 nzbk - n` for type B.
/// `alpha[i]` is `bk0` (always 0 for type A).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalExponents {
    pub doubled_delta: Vec<i64>,
    pub alpha: Vec<u32>,
}

impl DiagonalExponents {
    pub fn from_basis(basis: &Basis) -> Self {
        let n = basis.n() as i64;
        let (doubled_delta, alpha) = basis
            .partitions()
            .iter()
            .map(|p| match basis.kind() {
                Kind::A => (2 * p.bk() as i64 - n, 0),
                Kind::B => (2 * p.nzbk() as i64 - n, p.bk0() as u32),
            })
            .unzip();
        DiagonalExponents {
            doubled_delta,
            alpha,
        }
    }

    /// Exponent of `q` in the determinant.
    pub fn det_doubled_delta(&self) -> i64 {
        self.doubled_delta.iter().sum()
    }

    /// Exponent of `a` in the determinant.
    pub fn det_alpha(&self) -> u64 {
        self.alpha.iter().map(|&a| a as u64).sum()
    }
}

pub fn diagonal_exponents(kind: Kind, n: usize) -> Result<DiagonalExponents> {
    Ok(DiagonalExponents::from_basis(&Basis::new(kind, n)?))
}
