//! Set partitions of types A and B, with the non-crossing subsets, lattice
//! joins and block statistics.
//!
//! Every partition is stored over *positions* `1..=N`. For type A the
//! positions are the elements `1..=n` themselves (`N = n`). For type B the
//! ground set is `{+1..+n, -1..-n}` laid out in the order
//! `+1 < +2 < ... < +n < -1 < ... < -n`, so `pos(+i) = i` and
//! `pos(-i) = n + i` (`N = 2n`). Negation of an element is the shift by `n`
//! modulo `2n` on positions.
//!
//! The canonical form sorts elements inside each block and then sorts the
//! blocks by their minimal position. The derived ordering of [`Partition`]
//! is lexicographic on that block sequence; it is the basis order used by
//! every matrix in the crate.

use std::fmt;
use std::ops::Deref;

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tldiag;

/// Largest `n` accepted by [`enumerate_nc_a`].
pub const MAX_ENUM_A: usize = 12;
/// Largest `n` accepted by [`enumerate_nc_b`].
pub const MAX_ENUM_B: usize = 6;
/// Largest `n` accepted by [`brute_force_nc`] for type A.
pub const MAX_BRUTE_A: usize = 6;
/// Largest `n` accepted by [`brute_force_nc`] for type B.
pub const MAX_BRUTE_B: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Kind {
    A,
    B,
}

impl Kind {
    /// Number of positions carrying elements for rank `n`.
    pub fn ground_size(self, n: usize) -> usize {
        match self {
            Kind::A => n,
            Kind::B => 2 * n,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::A => "A",
            Kind::B => "B",
        })
    }
}

/// A set partition of type A or a negation-symmetric partition of type B.
///
/// The result of a join may be crossing, and for type B may contain more
/// than one invariant block, so neither property is an invariant here.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    kind: Kind,
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Builds a partition from blocks of positions `1..=N`.
    pub fn from_position_blocks(kind: Kind, n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::size_limit("partition rank", n, 1, usize::MAX));
        }
        let size = kind.ground_size(n);
        let mut seen = vec![false; size + 1];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::GroundSetMismatch("empty block".into()));
            }
            for &p in block.iter() {
                if p == 0 || p > size {
                    return Err(Error::GroundSetMismatch(format!(
                        "position {p} outside 1..={size}"
                    )));
                }
                if std::mem::replace(&mut seen[p], true) {
                    return Err(Error::GroundSetMismatch(format!("position {p} repeated")));
                }
            }
            block.sort_unstable();
        }
        if let Some(p) = (1..=size).find(|&p| !seen[p]) {
            return Err(Error::GroundSetMismatch(format!("position {p} missing")));
        }
        blocks.sort_unstable();
        let part = Partition { kind, n, blocks };
        if kind == Kind::B && !part.is_symmetric() {
            return Err(Error::Asymmetric(part.encode()));
        }
        Ok(part)
    }

    /// Builds a partition from blocks of element labels: `1..=n` for type A,
    /// signed `±1..±n` for type B.
    pub fn from_blocks(kind: Kind, n: usize, blocks: Vec<Vec<i64>>) -> Result<Self> {
        let blocks = blocks
            .into_iter()
            .map(|b| {
                b.into_iter()
                    .map(|e| label_to_position(kind, n, e))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_position_blocks(kind, n, blocks)
    }

    /// The all-singletons partition.
    pub fn finest(kind: Kind, n: usize) -> Self {
        let blocks = (1..=kind.ground_size(n)).map(|p| vec![p]).collect();
        Partition { kind, n, blocks }
    }

    /// Relabels a block assignment `label[p - 1]` into canonical form.
    pub(crate) fn from_labels(kind: Kind, n: usize, labels: &[usize]) -> Self {
        let mut slot = vec![usize::MAX; labels.len()];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, &l) in labels.iter().enumerate() {
            if slot[l] == usize::MAX {
                slot[l] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[slot[l]].push(i + 1);
        }
        // Blocks are discovered in order of their minimal position and filled
        // in increasing order, so they are already canonical.
        Partition { kind, n, blocks }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground_size(&self) -> usize {
        self.kind.ground_size(self.n)
    }

    /// Canonical blocks over positions.
    pub fn position_blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Canonical blocks over element labels (signed for type B).
    pub fn blocks(&self) -> Vec<Vec<i64>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&p| self.label(p)).collect())
            .collect()
    }

    /// Element label at a position.
    pub fn label(&self, pos: usize) -> i64 {
        position_to_label(self.kind, self.n, pos)
    }

    /// `block_index[p - 1]` is the index of the block holding position `p`.
    pub fn block_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.ground_size()];
        for (b, block) in self.blocks.iter().enumerate() {
            for &p in block {
                idx[p - 1] = b;
            }
        }
        idx
    }

    /// Position of the negated element (type B only; identity for type A).
    pub fn negate_position(&self, pos: usize) -> usize {
        negate_position(self.kind, self.n, pos)
    }

    pub fn is_symmetric(&self) -> bool {
        match self.kind {
            Kind::A => true,
            Kind::B => {
                let idx = self.block_index();
                self.blocks.iter().all(|block| {
                    let image = idx[self.negate_position(block[0]) - 1];
                    let target = &self.blocks[image];
                    target.len() == block.len()
                        && block
                            .iter()
                            .all(|&p| idx[self.negate_position(p) - 1] == image)
                })
            }
        }
    }

    /// Whether a block is invariant under negation.
    fn is_zero_block(&self, block: &[usize]) -> bool {
        self.kind == Kind::B && block.binary_search(&self.negate_position(block[0])).is_ok()
    }

    /// Number of blocks.
    pub fn bk(&self) -> usize {
        self.blocks.len()
    }

    /// Number of blocks `K` with `K = -K`. Always 0 for type A.
    pub fn bk0(&self) -> usize {
        self.blocks.iter().filter(|b| self.is_zero_block(b)).count()
    }

    /// Half the number of non-invariant blocks.
    pub fn nzbk(&self) -> usize {
        (self.bk() - self.bk0()) / 2
    }

    /// Indices of the invariant blocks.
    pub fn zero_block_indices(&self) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&i| self.is_zero_block(&self.blocks[i]))
            .collect()
    }

    /// Connection chords in linear position order: consecutive elements of
    /// each block.
    pub fn connection_chords(&self) -> Vec<(usize, usize, usize)> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(b, block)| block.windows(2).map(move |w| (b, w[0], w[1])))
            .collect()
    }

    /// True iff no two connection chords of different blocks interleave.
    pub fn is_noncrossing(&self) -> bool {
        let chords = self.connection_chords();
        for (i, &(b1, a, c)) in chords.iter().enumerate() {
            for &(b2, b, d) in &chords[i + 1..] {
                if b1 != b2 && crosses((a, c), (b, d)) {
                    return false;
                }
            }
        }
        true
    }

    /// Finest partition coarser than both arguments.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        if self.kind != other.kind || self.n != other.n {
            return Err(Error::GroundSetMismatch(format!(
                "type {} n={} vs type {} n={}",
                self.kind, self.n, other.kind, other.n
            )));
        }
        let mut uf = UnionFind::new(self.ground_size());
        for block in self.blocks.iter().chain(&other.blocks) {
            for w in block.windows(2) {
                uf.union(w[0] - 1, w[1] - 1);
            }
        }
        let labels: Vec<usize> = (0..self.ground_size()).map(|p| uf.find(p)).collect();
        Ok(Partition::from_labels(self.kind, self.n, &labels))
    }

    /// Canonical text form, e.g. `{1,3}{2}` or `{+1,-1}{+2}{-2}`.
    pub fn encode(&self) -> String {
        let mut s = String::new();
        for block in &self.blocks {
            s.push('{');
            for (k, &p) in block.iter().enumerate() {
                if k > 0 {
                    s.push(',');
                }
                match self.kind {
                    Kind::A => s.push_str(&p.to_string()),
                    Kind::B => {
                        let l = self.label(p);
                        s.push(if l > 0 { '+' } else { '-' });
                        s.push_str(&l.unsigned_abs().to_string());
                    }
                }
            }
            s.push('}');
        }
        s
    }

    /// Parses the text form. Whitespace is ignored; type B elements must
    /// carry an explicit sign, type A elements must not.
    pub fn parse(text: &str, kind: Kind, n: usize) -> Result<Partition> {
        let blocks = Parser::new(text, kind).blocks()?;
        let blocks = blocks
            .into_iter()
            .map(|b| {
                b.into_iter()
                    .map(|(at, e)| {
                        label_to_position(kind, n, e).map_err(|_| {
                            Error::parse(at, format!("element {e} outside the ground set for n={n}"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::from_position_blocks(kind, n, blocks)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

/// JSON form: array of arrays of (signed) element labels.
impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let blocks = self.blocks();
        let mut seq = serializer.serialize_seq(Some(blocks.len()))?;
        for b in &blocks {
            seq.serialize_element(b)?;
        }
        seq.end()
    }
}

/// A non-crossing partition. For type B this also guarantees at most one
/// invariant block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct NcPartition(Partition);

impl NcPartition {
    pub fn into_inner(self) -> Partition {
        self.0
    }

    pub fn as_partition(&self) -> &Partition {
        &self.0
    }
}

impl TryFrom<Partition> for NcPartition {
    type Error = Error;

    fn try_from(p: Partition) -> Result<Self> {
        if !p.is_noncrossing() {
            return Err(Error::Crossing(p.encode()));
        }
        debug_assert!(p.bk0() <= 1);
        Ok(NcPartition(p))
    }
}

impl Deref for NcPartition {
    type Target = Partition;

    fn deref(&self) -> &Partition {
        &self.0
    }
}

impl fmt::Display for NcPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn is_noncrossing(p: &Partition) -> bool {
    p.is_noncrossing()
}

pub fn join(p: &Partition, q: &Partition) -> Result<Partition> {
    p.join(q)
}

/// All non-crossing partitions of `{1..n}` in basis order.
///
/// Generated as pull-backs of non-crossing perfect matchings on `2n` points.
pub fn enumerate_nc_a(n: usize) -> Result<Vec<NcPartition>> {
    Error::check_range("enumerate type A", n, 1, MAX_ENUM_A)?;
    let mut out: Vec<NcPartition> = tldiag::noncrossing_matchings(2 * n)
        .into_iter()
        .map(|m| tldiag::iota_a_inv(&m))
        .collect::<Result<_>>()?;
    out.sort_unstable();
    Ok(out)
}

/// All non-crossing type B partitions of rank `n` in basis order.
///
/// Generated as pull-backs of half-turn symmetric non-crossing matchings
/// on `4n` points.
pub fn enumerate_nc_b(n: usize) -> Result<Vec<NcPartition>> {
    Error::check_range("enumerate type B", n, 1, MAX_ENUM_B)?;
    let mut out: Vec<NcPartition> = tldiag::symmetric_noncrossing_matchings(n)
        .into_iter()
        .map(|m| tldiag::iota_b_inv(&m))
        .collect::<Result<_>>()?;
    out.sort_unstable();
    Ok(out)
}

pub fn enumerate_nc(kind: Kind, n: usize) -> Result<Vec<NcPartition>> {
    match kind {
        Kind::A => enumerate_nc_a(n),
        Kind::B => enumerate_nc_b(n),
    }
}

/// Exhaustive oracle: every set partition of the ground set, restricted to
/// symmetric ones with at most one invariant block for type B, filtered by
/// the crossing test.
pub fn brute_force_nc(n: usize, kind: Kind) -> Result<Vec<NcPartition>> {
    let max = match kind {
        Kind::A => MAX_BRUTE_A,
        Kind::B => MAX_BRUTE_B,
    };
    Error::check_range("brute-force enumeration", n, 1, max)?;
    let size = kind.ground_size(n);
    let mut out = Vec::new();
    // Restricted growth strings: label[0] = 0, label[i] <= 1 + max(label[..i]).
    let mut labels = vec![0usize; size];
    let mut maxes = vec![0usize; size];
    loop {
        let p = Partition::from_labels(kind, n, &labels);
        let admissible = match kind {
            Kind::A => true,
            Kind::B => p.is_symmetric() && p.bk0() <= 1,
        };
        if admissible && p.is_noncrossing() {
            out.push(NcPartition(p));
        }
        // Advance to the next restricted growth string.
        let mut i = size - 1;
        loop {
            if i == 0 {
                out.sort_unstable();
                return Ok(out);
            }
            if labels[i] <= maxes[i - 1] {
                labels[i] += 1;
                maxes[i] = maxes[i - 1].max(labels[i]);
                for j in i + 1..size {
                    labels[j] = 0;
                    maxes[j] = maxes[i];
                }
                break;
            }
            i -= 1;
        }
    }
}

pub(crate) fn crosses((a, c): (usize, usize), (b, d): (usize, usize)) -> bool {
    (a < b && b < c && c < d) || (b < a && a < d && d < c)
}

pub(crate) fn negate_position(kind: Kind, n: usize, pos: usize) -> usize {
    match kind {
        Kind::A => pos,
        Kind::B if pos <= n => pos + n,
        Kind::B => pos - n,
    }
}

fn position_to_label(kind: Kind, n: usize, pos: usize) -> i64 {
    match kind {
        Kind::A => pos as i64,
        Kind::B if pos <= n => pos as i64,
        Kind::B => -((pos - n) as i64),
    }
}

fn label_to_position(kind: Kind, n: usize, e: i64) -> Result<usize> {
    let mag = e.unsigned_abs() as usize;
    let ok = match kind {
        Kind::A => e >= 1 && mag <= n,
        Kind::B => e != 0 && mag <= n,
    };
    if !ok {
        return Err(Error::GroundSetMismatch(format!(
            "element {e} outside the type {kind} ground set for n={n}"
        )));
    }
    Ok(if e > 0 { mag } else { n + mag })
}

/// Union-find with path halving and union by size.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    kind: Kind,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, kind: Kind) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
            kind,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => Err(Error::parse(
                self.pos,
                format!("expected '{}', found '{}'", c as char, got as char),
            )),
            None => Err(Error::parse(self.pos, format!("expected '{}', found end", c as char))),
        }
    }

    fn blocks(mut self) -> Result<Vec<Vec<(usize, i64)>>> {
        let mut blocks = Vec::new();
        while self.peek().is_some() {
            self.expect(b'{')?;
            let mut block = vec![self.element()?];
            loop {
                match self.peek() {
                    Some(b',') => {
                        self.pos += 1;
                        block.push(self.element()?);
                    }
                    Some(b'}') => {
                        self.pos += 1;
                        break;
                    }
                    Some(c) => {
                        return Err(Error::parse(
                            self.pos,
                            format!("expected ',' or '}}', found '{}'", c as char),
                        ))
                    }
                    None => return Err(Error::parse(self.pos, "unterminated block")),
                }
            }
            blocks.push(block);
        }
        if blocks.is_empty() {
            return Err(Error::parse(self.pos, "no blocks"));
        }
        Ok(blocks)
    }

    fn element(&mut self) -> Result<(usize, i64)> {
        let start = match self.peek() {
            Some(_) => self.pos,
            None => return Err(Error::parse(self.pos, "expected element, found end")),
        };
        let sign = match (self.kind, self.bytes[self.pos]) {
            (Kind::B, b'+') => 1,
            (Kind::B, b'-') => -1,
            (Kind::B, _) => return Err(Error::parse(self.pos, "type B elements need a sign")),
            (Kind::A, b'+' | b'-') => {
                return Err(Error::parse(self.pos, "type A elements are unsigned"))
            }
            (Kind::A, _) => 1,
        };
        if self.kind == Kind::B {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits_start == self.pos {
            return Err(Error::parse(self.pos, "expected digits"));
        }
        let text = std::str::from_utf8(&self.bytes[digits_start..self.pos]).expect("ascii digits");
        let value: i64 = text
            .parse()
            .map_err(|_| Error::parse(digits_start, "number too large"))?;
        Ok((start, sign * value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(text: &str, n: usize) -> Partition {
        Partition::parse(text, Kind::A, n).unwrap()
    }

    fn b(text: &str, n: usize) -> Partition {
        Partition::parse(text, Kind::B, n).unwrap()
    }

    #[test]
    fn enumerate_small_cases() {
        let one = enumerate_nc_a(1).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].encode(), "{1}");
        assert_eq!(enumerate_nc_a(3).unwrap().len(), 5);
        assert_eq!(enumerate_nc_a(5).unwrap().len(), 42);

        let b1: Vec<String> = enumerate_nc_b(1).unwrap().iter().map(|p| p.encode()).collect();
        assert_eq!(b1, ["{+1}{-1}", "{+1,-1}"]);
        assert_eq!(enumerate_nc_b(2).unwrap().len(), 6);
        assert_eq!(enumerate_nc_b(3).unwrap().len(), 20);
    }

    #[test]
    fn enumerate_rejects_out_of_range() {
        assert!(matches!(enumerate_nc_a(0), Err(Error::SizeLimit { .. })));
        assert!(matches!(enumerate_nc_a(13), Err(Error::SizeLimit { .. })));
        assert!(matches!(enumerate_nc_b(7), Err(Error::SizeLimit { .. })));
        assert!(matches!(brute_force_nc(7, Kind::A), Err(Error::SizeLimit { .. })));
        assert!(matches!(brute_force_nc(5, Kind::B), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn crossing_examples() {
        assert!(a("{1,3}{2}", 3).is_noncrossing());
        assert!(!a("{1,3}{2,4}", 4).is_noncrossing());
        // {1,3} with {2},{4} as singletons is fine; chords of one block never cross.
        assert!(a("{1,3}{2}{4}", 4).is_noncrossing());
        assert!(a("{1,4}{2,3}", 4).is_noncrossing());
    }

    #[test]
    fn brute_force_counts() {
        assert_eq!(brute_force_nc(4, Kind::A).unwrap().len(), 14);
        assert_eq!(brute_force_nc(1, Kind::B).unwrap().len(), 2);
        assert_eq!(brute_force_nc(2, Kind::B).unwrap().len(), 6);
    }

    #[test]
    fn join_examples() {
        let p = a("{1,3}{2}{4}", 4);
        assert_eq!(p.join(&Partition::finest(Kind::A, 4)).unwrap(), p);
        let j = a("{1,2}{3}", 3).join(&a("{2,3}{1}", 3)).unwrap();
        assert_eq!(j.encode(), "{1,2,3}");

        let j = b("{+1}{-1}", 1).join(&b("{+1,-1}", 1)).unwrap();
        assert_eq!(j.encode(), "{+1,-1}");
        assert_eq!((j.bk0(), j.nzbk()), (1, 0));
    }

    #[test]
    fn join_rejects_mismatched_ground_sets() {
        assert!(matches!(
            a("{1}{2}", 2).join(&a("{1}{2}{3}", 3)),
            Err(Error::GroundSetMismatch(_))
        ));
        assert!(a("{1}{2}", 2).join(&b("{+1}{-1}", 1)).is_err());
    }

    #[test]
    fn join_can_produce_two_zero_blocks() {
        let p = b("{+1,-1}{+2}{-2}", 2);
        let q = b("{+2,-2}{+1}{-1}", 2);
        let j = p.join(&q).unwrap();
        assert_eq!(j.bk0(), 2);
        assert_eq!(j.nzbk(), 0);
    }

    #[test]
    fn block_statistics() {
        assert_eq!(Partition::finest(Kind::A, 4).bk(), 4);
        let p = b("{+1,-1}{+2}{-2}", 2);
        assert_eq!((p.bk(), p.bk0(), p.nzbk()), (3, 1, 1));
        let p = b("{+1,+2,-1,-2}", 2);
        assert_eq!((p.bk(), p.bk0(), p.nzbk()), (1, 1, 0));
        assert_eq!(a("{1,2}{3}", 3).bk0(), 0);
    }

    #[test]
    fn encode_and_parse() {
        assert_eq!(Partition::from_blocks(Kind::A, 3, vec![vec![3, 1], vec![2]]).unwrap().encode(), "{1,3}{2}");
        assert_eq!(
            Partition::from_blocks(Kind::B, 2, vec![vec![2], vec![-1, 1], vec![-2]])
                .unwrap()
                .encode(),
            "{+1,-1}{+2}{-2}"
        );
        let p = a("{1,3}{2,4}", 4);
        assert!(!p.is_noncrossing());
        assert_eq!(a(" { 2 , 1 } { 3 } ", 3).encode(), "{1,2}{3}");
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = Partition::parse("{1,3}{2", Kind::A, 3).unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 7, .. }), "{err:?}");
        let err = Partition::parse("{1,x}", Kind::A, 2).unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 3, .. }), "{err:?}");
        let err = Partition::parse("{1}{2}", Kind::B, 2).unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 1, .. }), "{err:?}");
        let err = Partition::parse("{+1}{-1}", Kind::A, 1).unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 1, .. }), "{err:?}");
        let err = Partition::parse("{1}{5}", Kind::A, 3).unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 4, .. }), "{err:?}");
        assert!(Partition::parse("", Kind::A, 1).is_err());
        assert!(matches!(
            Partition::parse("{1}", Kind::A, 2),
            Err(Error::GroundSetMismatch(_))
        ));
        assert!(matches!(
            Partition::parse("{1,2}{2}", Kind::A, 2),
            Err(Error::GroundSetMismatch(_))
        ));
        assert!(matches!(
            Partition::parse("{+1,+2}{-1}{-2}", Kind::B, 2),
            Err(Error::Asymmetric(_))
        ));
    }

    #[test]
    fn json_form_uses_signed_labels() {
        let p = b("{+1,-1}{+2}{-2}", 2);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[[1,-1],[2],[-2]]");
        let q = NcPartition::try_from(a("{1,3}{2}", 3)).unwrap();
        assert_eq!(serde_json::to_string(&q).unwrap(), "[[1,3],[2]]");
    }

    #[test]
    fn nc_wrapper_rejects_crossing() {
        assert!(matches!(
            NcPartition::try_from(a("{1,3}{2,4}", 4)),
            Err(Error::Crossing(_))
        ));
    }

    #[test]
    fn basis_order_puts_finer_first() {
        let got: Vec<String> = enumerate_nc_a(2).unwrap().iter().map(|p| p.encode()).collect();
        assert_eq!(got, ["{1}{2}", "{1,2}"]);
    }
}
