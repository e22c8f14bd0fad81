//! Temperley-Lieb diagrams as non-crossing perfect matchings of boundary
//! points, the regular-neighbourhood bijections from non-crossing
//! partitions, circle counting for glued diagrams, and the annular
//! quotient of half-turn symmetric diagrams.
//!
//! Points are numbered `1..=m` anticlockwise. Element (position) `i` of a
//! partition owns the two points `2i - 1` and `2i`.

use std::collections::BTreeSet;
use std::collections::HashMap;
use std::fmt;

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ncpart::{crosses, Kind, NcPartition, Partition};

/// A perfect matching of the points `1..=m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    // mate[p - 1] = partner of p, both 1-based.
    mate: Vec<usize>,
}

impl Matching {
    pub fn from_chords(points: usize, chords: &[(usize, usize)]) -> Result<Self> {
        if !points.is_multiple_of(2) {
            return Err(Error::InvalidMatching(format!("odd number of points {points}")));
        }
        let mut mate = vec![0usize; points];
        for &(p, q) in chords {
            if p == q || p == 0 || q == 0 || p > points || q > points {
                return Err(Error::InvalidMatching(format!("bad chord {{{p},{q}}}")));
            }
            if mate[p - 1] != 0 || mate[q - 1] != 0 {
                return Err(Error::InvalidMatching(format!(
                    "chord {{{p},{q}}} reuses a point"
                )));
            }
            mate[p - 1] = q;
            mate[q - 1] = p;
        }
        if let Some(p) = mate.iter().position(|&q| q == 0) {
            return Err(Error::InvalidMatching(format!("point {} unmatched", p + 1)));
        }
        Ok(Matching { mate })
    }

    fn from_mate_unchecked(mate: Vec<usize>) -> Self {
        Matching { mate }
    }

    pub fn points(&self) -> usize {
        self.mate.len()
    }

    /// Partner of point `p` (1-based).
    pub fn mate(&self, p: usize) -> usize {
        self.mate[p - 1]
    }

    /// Chords as `(min, max)` pairs, sorted.
    pub fn chords(&self) -> Vec<(usize, usize)> {
        (1..=self.points())
            .filter(|&p| p < self.mate(p))
            .map(|p| (p, self.mate(p)))
            .collect()
    }

    pub fn is_noncrossing(&self) -> bool {
        let chords = self.chords();
        chords
            .iter()
            .enumerate()
            .all(|(i, &c)| chords[i + 1..].iter().all(|&d| !crosses(c, d)))
    }

    /// The half-turn `p -> ((p - 1 + m/2) mod m) + 1`.
    pub fn half_turn(&self, p: usize) -> usize {
        let m = self.points();
        (p - 1 + m / 2) % m + 1
    }

    /// Whether the half-turn maps the chord set onto itself. Requires a
    /// multiple of 4 points so that it matches a type B rank.
    pub fn is_symmetric(&self) -> bool {
        self.points().is_multiple_of(4)
            && (1..=self.points()).all(|p| self.mate(self.half_turn(p)) == self.half_turn(self.mate(p)))
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (p, q)) in self.chords().into_iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{{{p},{q}}}")?;
        }
        f.write_str("}")
    }
}

/// JSON form: array of 2-element point arrays.
impl Serialize for Matching {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let chords = self.chords();
        let mut seq = serializer.serialize_seq(Some(chords.len()))?;
        for (p, q) in chords {
            seq.serialize_element(&[p, q])?;
        }
        seq.end()
    }
}

/// All non-crossing perfect matchings of `points` points.
pub fn noncrossing_matchings(points: usize) -> Vec<Matching> {
    let mut memo: HashMap<usize, Vec<Vec<u8>>> = HashMap::new();
    interval_matchings(points, &mut memo)
        .iter()
        .map(|m| Matching::from_mate_unchecked(m.iter().map(|&q| q as usize + 1).collect()))
        .collect()
}

/// All half-turn symmetric non-crossing perfect matchings of `4n` points.
pub fn symmetric_noncrossing_matchings(n: usize) -> Vec<Matching> {
    noncrossing_matchings(4 * n)
        .into_iter()
        .filter(Matching::is_symmetric)
        .collect()
}

// Matchings of 0..len as 0-based mate arrays: point 0 pairs with an odd
// point 2k + 1, leaving independent intervals inside and outside the chord.
fn interval_matchings(len: usize, memo: &mut HashMap<usize, Vec<Vec<u8>>>) -> Vec<Vec<u8>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    if let Some(v) = memo.get(&len) {
        return v.clone();
    }
    let mut out = Vec::new();
    for k in (1..len).step_by(2) {
        let inner = interval_matchings(k - 1, memo);
        let outer = interval_matchings(len - k - 1, memo);
        for i in &inner {
            for o in &outer {
                let mut mate = Vec::with_capacity(len);
                mate.push(k as u8);
                mate.extend(i.iter().map(|&q| q + 1));
                mate.push(0);
                mate.extend(o.iter().map(|&q| q + k as u8 + 1));
                out.push(mate);
            }
        }
    }
    memo.insert(len, out.clone());
    out
}

// Boundary of a regular neighbourhood of the connection chords: within each
// block i_1 < ... < i_k, point 2i_j is joined to 2i_{j+1} - 1, and the
// closing chord joins 2i_k to 2i_1 - 1.
fn expand(p: &Partition) -> Matching {
    let mut chords = Vec::with_capacity(p.ground_size());
    for block in p.position_blocks() {
        for w in block.windows(2) {
            chords.push((2 * w[0], 2 * w[1] - 1));
        }
        chords.push((2 * block[block.len() - 1], 2 * block[0] - 1));
    }
    Matching::from_chords(2 * p.ground_size(), &chords).expect("expansion is a perfect matching")
}

// Contract each point pair (2i - 1, 2i) to position i; blocks are the
// connected components under the chords.
fn contract(b: &Matching, kind: Kind, n: usize) -> Partition {
    let size = b.points() / 2;
    let mut uf = crate::ncpart::UnionFind::new(size);
    for (p, q) in b.chords() {
        uf.union((p - 1) / 2, (q - 1) / 2);
    }
    let labels: Vec<usize> = (0..size).map(|i| uf.find(i)).collect();
    Partition::from_labels(kind, n, &labels)
}

pub fn iota_a(p: &NcPartition) -> Result<Matching> {
    if p.kind() != Kind::A {
        return Err(Error::GroundSetMismatch("iota_a expects a type A partition".into()));
    }
    Ok(expand(p))
}

pub fn iota_a_inv(b: &Matching) -> Result<NcPartition> {
    if b.points() == 0 || !b.points().is_multiple_of(2) {
        return Err(Error::InvalidMatching(format!("{} points", b.points())));
    }
    if !b.is_noncrossing() {
        return Err(Error::Crossing(b.to_string()));
    }
    NcPartition::try_from(contract(b, Kind::A, b.points() / 2))
}

pub fn iota_b(p: &NcPartition) -> Result<Matching> {
    if p.kind() != Kind::B {
        return Err(Error::GroundSetMismatch("iota_b expects a type B partition".into()));
    }
    if !p.is_symmetric() {
        return Err(Error::Asymmetric(p.encode()));
    }
    let m = expand(p);
    debug_assert!(m.is_symmetric());
    Ok(m)
}

pub fn iota_b_inv(b: &Matching) -> Result<NcPartition> {
    if b.points() == 0 || !b.points().is_multiple_of(4) {
        return Err(Error::InvalidMatching(format!(
            "{} points is not a positive multiple of 4",
            b.points()
        )));
    }
    if !b.is_symmetric() {
        return Err(Error::Asymmetric(b.to_string()));
    }
    if !b.is_noncrossing() {
        return Err(Error::Crossing(b.to_string()));
    }
    NcPartition::try_from(contract(b, Kind::B, b.points() / 4))
}

/// Cycles of the union multigraph of two matchings on the same points,
/// each listed from its smallest point.
pub fn glue_cycles(b1: &Matching, b2: &Matching) -> Result<Vec<Vec<usize>>> {
    if b1.points() != b2.points() {
        return Err(Error::SizeMismatch(format!(
            "{} vs {} points",
            b1.points(),
            b2.points()
        )));
    }
    let mut seen = vec![false; b1.points()];
    let mut cycles = Vec::new();
    for start in 1..=b1.points() {
        if seen[start - 1] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut p = start;
        loop {
            seen[p - 1] = true;
            cycle.push(p);
            let q = b1.mate(p);
            seen[q - 1] = true;
            cycle.push(q);
            p = b2.mate(q);
            if p == start {
                break;
            }
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// Number of circles obtained by gluing two diagrams along their labelled
/// boundary.
pub fn glue_count_a(b1: &Matching, b2: &Matching) -> Result<usize> {
    Ok(glue_cycles(b1, b2)?.len())
}

/// Circle counts of a glued pair of symmetric diagrams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CircleCounts {
    /// Circles mapped onto themselves by the half-turn.
    pub c0: usize,
    /// Pairs `{C, σC}` of distinct circles.
    pub cd: usize,
}

/// Whether a glued cycle is carried onto itself by the half-turn.
pub fn is_invariant_cycle(b: &Matching, cycle: &[usize]) -> bool {
    let image = b.half_turn(cycle[0]);
    cycle.contains(&image)
}

pub fn glue_count_b(b1: &Matching, b2: &Matching) -> Result<CircleCounts> {
    for b in [b1, b2] {
        if !b.is_symmetric() {
            return Err(Error::Asymmetric(b.to_string()));
        }
    }
    let cycles = glue_cycles(b1, b2)?;
    let c0 = cycles.iter().filter(|c| is_invariant_cycle(b1, c)).count();
    debug_assert_eq!((cycles.len() - c0) % 2, 0);
    Ok(CircleCounts {
        c0,
        cd: (cycles.len() - c0) / 2,
    })
}

/// A chord of an annular diagram between outer points `p < q`, with the
/// parity of its intersections with the cut arc running from the inner
/// boundary to the outer boundary between points `2n` and `1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnnularChord {
    pub p: usize,
    pub q: usize,
    pub parity: u8,
}

impl Serialize for AnnularChord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.p, self.q, self.parity as usize].serialize(serializer)
    }
}

/// Non-crossing chords in an annulus with `2n` points on the outer circle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AnnularDiagram {
    n: usize,
    chords: Vec<AnnularChord>,
}

impl AnnularDiagram {
    /// Validates that every outer point lies on exactly one chord. Whether
    /// the chords can be drawn without crossings is checked by
    /// [`from_annular`].
    pub fn new(n: usize, chords: Vec<AnnularChord>) -> Result<Self> {
        let mut seen = vec![false; 2 * n];
        let mut canon = Vec::with_capacity(chords.len());
        for c in chords {
            let (p, q) = (c.p.min(c.q), c.p.max(c.q));
            if p == 0 || q > 2 * n || p == q || c.parity > 1 {
                return Err(Error::InvalidMatching(format!(
                    "bad annular chord [{}, {}, {}]",
                    c.p, c.q, c.parity
                )));
            }
            for x in [p, q] {
                if std::mem::replace(&mut seen[x - 1], true) {
                    return Err(Error::InvalidMatching(format!("point {x} used twice")));
                }
            }
            canon.push(AnnularChord {
                p,
                q,
                parity: c.parity,
            });
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidMatching(format!("point {} unmatched", x + 1)));
        }
        canon.sort_unstable();
        Ok(AnnularDiagram { n, chords: canon })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chords(&self) -> &[AnnularChord] {
        &self.chords
    }
}

impl fmt::Display for AnnularDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, c) in self.chords.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{{{},{}|{}}}", c.p, c.q, c.parity)?;
        }
        f.write_str("}")
    }
}

/// Quotient of a symmetric diagram by the half-turn.
pub fn to_annular(b: &Matching) -> Result<AnnularDiagram> {
    if !b.is_symmetric() {
        return Err(Error::Asymmetric(b.to_string()));
    }
    if !b.is_noncrossing() {
        return Err(Error::Crossing(b.to_string()));
    }
    let half = b.points() / 2;
    let fold = |p: usize| (p - 1) % half + 1;
    let chords: BTreeSet<AnnularChord> = b
        .chords()
        .into_iter()
        .map(|(p, q)| {
            let (fp, fq) = (fold(p), fold(q));
            AnnularChord {
                p: fp.min(fq),
                q: fp.max(fq),
                parity: u8::from((p <= half) != (q <= half)),
            }
        })
        .collect();
    AnnularDiagram::new(half / 2, chords.into_iter().collect())
}

/// Lifts an annular diagram to the symmetric diagram on `4n` points.
pub fn from_annular(a: &AnnularDiagram) -> Result<Matching> {
    let half = 2 * a.n;
    let mut lifted = Vec::with_capacity(2 * a.chords.len());
    for c in &a.chords {
        let first = (c.p, c.q + half * c.parity as usize);
        let second = (c.p + half, c.q + half * (1 - c.parity as usize));
        lifted.push(first);
        lifted.push(second);
    }
    let m = Matching::from_chords(2 * half, &lifted)
        .map_err(|e| Error::Unrealizable(format!("{a}: {e}")))?;
    if !m.is_noncrossing() {
        return Err(Error::Unrealizable(format!("{a}: lift is crossing")));
    }
    Ok(m)
}

/// Gluing pairing of two annular diagrams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AnnularCircles {
    /// Circles winding around the hole.
    pub nontrivial: usize,
    /// Contractible circles.
    pub trivial: usize,
}

/// Glues two annular diagrams along the outer circle. A circle is
/// homotopically nontrivial iff it crosses the cut an odd number of times.
pub fn annular_glue(a1: &AnnularDiagram, a2: &AnnularDiagram) -> Result<AnnularCircles> {
    if a1.n != a2.n {
        return Err(Error::SizeMismatch(format!("n={} vs n={}", a1.n, a2.n)));
    }
    let size = 2 * a1.n;
    let table = |a: &AnnularDiagram| {
        let mut t = vec![(0usize, 0u8); size + 1];
        for c in &a.chords {
            t[c.p] = (c.q, c.parity);
            t[c.q] = (c.p, c.parity);
        }
        t
    };
    let (t1, t2) = (table(a1), table(a2));
    let mut seen = vec![false; size + 1];
    let mut out = AnnularCircles {
        nontrivial: 0,
        trivial: 0,
    };
    for start in 1..=size {
        if seen[start] {
            continue;
        }
        let mut parity = 0u8;
        let mut p = start;
        loop {
            seen[p] = true;
            let (q, w1) = t1[p];
            seen[q] = true;
            let (r, w2) = t2[q];
            parity ^= w1 ^ w2;
            p = r;
            if p == start {
                break;
            }
        }
        if parity == 1 {
            out.nontrivial += 1;
        } else {
            out.trivial += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpart::{enumerate_nc_a, enumerate_nc_b};

    fn m(points: usize, chords: &[(usize, usize)]) -> Matching {
        Matching::from_chords(points, chords).unwrap()
    }

    fn nc(kind: Kind, n: usize, text: &str) -> NcPartition {
        NcPartition::try_from(Partition::parse(text, kind, n).unwrap()).unwrap()
    }

    #[test]
    fn iota_a_examples() {
        assert_eq!(iota_a(&nc(Kind::A, 2, "{1}{2}")).unwrap(), m(4, &[(1, 2), (3, 4)]));
        assert_eq!(iota_a(&nc(Kind::A, 2, "{1,2}")).unwrap(), m(4, &[(2, 3), (4, 1)]));
        assert_eq!(
            iota_a(&nc(Kind::A, 3, "{1,3}{2}")).unwrap(),
            m(6, &[(2, 5), (6, 1), (3, 4)])
        );
    }

    #[test]
    fn iota_a_inv_examples() {
        let p = iota_a_inv(&m(6, &[(1, 2), (3, 4), (5, 6)])).unwrap();
        assert_eq!(p.encode(), "{1}{2}{3}");
        let p = iota_a_inv(&m(6, &[(1, 6), (2, 5), (3, 4)])).unwrap();
        assert_eq!(p.encode(), "{1,3}{2}");
        assert!(matches!(
            iota_a_inv(&m(4, &[(1, 3), (2, 4)])),
            Err(Error::Crossing(_))
        ));
    }

    #[test]
    fn iota_a_round_trip_n5() {
        for p in enumerate_nc_a(5).unwrap() {
            assert_eq!(iota_a_inv(&iota_a(&p).unwrap()).unwrap(), p);
        }
    }

    #[test]
    fn iota_b_examples() {
        let singles = iota_b(&nc(Kind::B, 1, "{+1}{-1}")).unwrap();
        assert_eq!(singles, m(4, &[(1, 2), (3, 4)]));
        let zero = iota_b(&nc(Kind::B, 1, "{+1,-1}")).unwrap();
        assert_eq!(zero, m(4, &[(2, 3), (4, 1)]));
        assert_eq!(zero.half_turn(2), 4);
        assert_eq!(zero.half_turn(3), 1);
        assert!(zero.is_symmetric());
    }

    #[test]
    fn iota_b_round_trip_n2() {
        let basis = enumerate_nc_b(2).unwrap();
        assert_eq!(basis.len(), 6);
        for p in &basis {
            let b = iota_b(p).unwrap();
            assert!(b.is_symmetric() && b.is_noncrossing());
            assert_eq!(&iota_b_inv(&b).unwrap(), p);
        }
    }

    #[test]
    fn iota_kind_and_symmetry_errors() {
        assert!(iota_a(&nc(Kind::B, 1, "{+1,-1}")).is_err());
        assert!(iota_b(&nc(Kind::A, 2, "{1,2}")).is_err());
        // {1,2},{3,4},{5,6},{7,8} is symmetric; {1,4},{2,3},{5,6},{7,8} is not.
        assert!(matches!(
            iota_b_inv(&m(8, &[(1, 4), (2, 3), (5, 6), (7, 8)])),
            Err(Error::Asymmetric(_))
        ));
        assert!(iota_b_inv(&m(6, &[(1, 2), (3, 4), (5, 6)])).is_err());
    }

    #[test]
    fn glue_count_a_examples() {
        let b = m(4, &[(1, 2), (3, 4)]);
        let c = m(4, &[(2, 3), (4, 1)]);
        assert_eq!(glue_count_a(&b, &b).unwrap(), 2);
        assert_eq!(glue_count_a(&c, &c).unwrap(), 2);
        assert_eq!(glue_count_a(&b, &c).unwrap(), 1);
        assert!(matches!(
            glue_count_a(&b, &m(6, &[(1, 2), (3, 4), (5, 6)])),
            Err(Error::SizeMismatch(_))
        ));
    }

    #[test]
    fn glue_count_b_examples() {
        let b = m(4, &[(1, 2), (3, 4)]);
        let c = m(4, &[(2, 3), (4, 1)]);
        assert_eq!(glue_count_b(&b, &b).unwrap(), CircleCounts { c0: 0, cd: 1 });
        assert_eq!(glue_count_b(&b, &c).unwrap(), CircleCounts { c0: 1, cd: 0 });
        assert_eq!(glue_count_b(&c, &c).unwrap(), CircleCounts { c0: 0, cd: 1 });
        let asym = m(8, &[(1, 4), (2, 3), (5, 6), (7, 8)]);
        assert!(matches!(glue_count_b(&asym, &asym), Err(Error::Asymmetric(_))));
    }

    #[test]
    fn annular_examples() {
        let b = m(4, &[(1, 2), (3, 4)]);
        let c = m(4, &[(2, 3), (4, 1)]);
        let ab = to_annular(&b).unwrap();
        let ac = to_annular(&c).unwrap();
        assert_eq!(ab.chords(), &[AnnularChord { p: 1, q: 2, parity: 0 }]);
        assert_eq!(ac.chords(), &[AnnularChord { p: 1, q: 2, parity: 1 }]);
        assert_eq!(serde_json::to_string(&ac).unwrap(), r#"{"n":1,"chords":[[1,2,1]]}"#);
        assert_eq!(from_annular(&ab).unwrap(), b);
        assert_eq!(from_annular(&ac).unwrap(), c);

        let glue = |x, y| annular_glue(x, y).unwrap();
        assert_eq!(glue(&ab, &ab), AnnularCircles { nontrivial: 0, trivial: 1 });
        assert_eq!(glue(&ab, &ac), AnnularCircles { nontrivial: 1, trivial: 0 });
        assert_eq!(glue(&ac, &ac), AnnularCircles { nontrivial: 0, trivial: 1 });
    }

    #[test]
    fn annular_round_trip_n2() {
        for p in enumerate_nc_b(2).unwrap() {
            let b = iota_b(&p).unwrap();
            let a = to_annular(&b).unwrap();
            assert_eq!(a.chords().len(), 2);
            assert_eq!(from_annular(&a).unwrap(), b);
            assert_eq!(to_annular(&from_annular(&a).unwrap()).unwrap(), a);
        }
    }

    #[test]
    fn unrealizable_annular_diagram() {
        // Points 1..4: chords {1,3} and {2,4} with even parity lift to a
        // crossing pair.
        let a = AnnularDiagram::new(
            2,
            vec![
                AnnularChord { p: 1, q: 3, parity: 0 },
                AnnularChord { p: 2, q: 4, parity: 0 },
            ],
        )
        .unwrap();
        assert!(matches!(from_annular(&a), Err(Error::Unrealizable(_))));
        assert!(AnnularDiagram::new(1, vec![AnnularChord { p: 1, q: 1, parity: 0 }]).is_err());
        assert!(AnnularDiagram::new(2, vec![AnnularChord { p: 1, q: 2, parity: 0 }]).is_err());
    }

    #[test]
    fn matching_counts() {
        let counts: Vec<usize> = (0..=6).map(|k| noncrossing_matchings(2 * k).len()).collect();
        assert_eq!(counts, [1, 1, 2, 5, 14, 42, 132]);
        let sym: Vec<usize> = (1..=4).map(|n| symmetric_noncrossing_matchings(n).len()).collect();
        assert_eq!(sym, [2, 6, 20, 70]);
    }

    #[test]
    fn matching_validation() {
        assert!(Matching::from_chords(3, &[(1, 2)]).is_err());
        assert!(Matching::from_chords(4, &[(1, 2), (2, 3)]).is_err());
        assert!(Matching::from_chords(4, &[(1, 2)]).is_err());
        assert!(Matching::from_chords(4, &[(1, 5), (2, 3)]).is_err());
        assert_eq!(serde_json::to_string(&m(4, &[(4, 1), (3, 2)])).unwrap(), "[[1,4],[2,3]]");
    }
}
