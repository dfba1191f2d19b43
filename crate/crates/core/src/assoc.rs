//! Triangulations of a convex polygon with vertices 1..n labeled counter
//! clockwise, diagonal flips, zigzag triangulations and their l/r words, and
//! the flip orderings that rotate a zigzag triangulation by one vertex or
//! turn it into a star.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// Interior diagonal of the n-gon, stored with a < b.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagonal {
    a: u32,
    b: u32,
}

impl Diagonal {
    pub fn new(n: u32, a: u32, b: u32) -> Result<Self> {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        if a == 0 || b > n {
            return Err(Error::domain(format!("vertex out of range: {a}-{b}")));
        }
        if a == b || b - a == 1 || (a == 1 && b == n) {
            return Err(Error::domain(format!("{a}-{b} is not an interior diagonal")));
        }
        Ok(Diagonal { a, b })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn pair(&self) -> (u32, u32) {
        (self.a, self.b)
    }

    /// Strict interior crossing on the convex polygon.
    pub fn crosses(&self, other: &Diagonal) -> bool {
        let (a, b) = self.pair();
        let (c, d) = other.pair();
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    }
}

/// Next vertex counter clockwise.
fn vnext(n: u32, v: u32) -> u32 {
    v % n + 1
}

/// Next vertex clockwise.
fn vprev(n: u32, v: u32) -> u32 {
    (v + n - 2) % n + 1
}

/// Triangulation of the n-gon: n-3 pairwise non-crossing diagonals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triangulation {
    n: u32,
    diagonals: Vec<Diagonal>, // sorted
}

impl Triangulation {
    pub fn new(n: u32, mut diagonals: Vec<Diagonal>) -> Result<Self> {
        if n < 4 {
            return Err(Error::domain("polygon size must be at least 4"));
        }
        if diagonals.len() as u32 != n - 3 {
            return Err(Error::domain(format!(
                "expected {} diagonals, got {}",
                n - 3,
                diagonals.len()
            )));
        }
        for d in &diagonals {
            Diagonal::new(n, d.a, d.b)?;
        }
        diagonals.sort();
        for i in 0..diagonals.len() {
            for j in i + 1..diagonals.len() {
                if diagonals[i] == diagonals[j] {
                    return Err(Error::domain("repeated diagonal"));
                }
                if diagonals[i].crosses(&diagonals[j]) {
                    return Err(Error::domain(format!(
                        "diagonals cross: {:?} and {:?}",
                        diagonals[i].pair(),
                        diagonals[j].pair()
                    )));
                }
            }
        }
        Ok(Triangulation { n, diagonals })
    }

    /// The star with center c: all diagonals incident to c.
    pub fn star(n: u32, center: u32) -> Result<Self> {
        let mut ds = Vec::new();
        let mut v = vnext(n, vnext(n, center));
        while vnext(n, v) != center {
            ds.push(Diagonal::new(n, center, v)?);
            v = vnext(n, v);
        }
        Triangulation::new(n, ds)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn diagonals(&self) -> &[Diagonal] {
        &self.diagonals
    }

    pub fn contains(&self, d: &Diagonal) -> bool {
        self.diagonals.binary_search(d).is_ok()
    }

    /// Edge of the triangulation: boundary edge or diagonal.
    fn has_edge(&self, u: u32, v: u32) -> bool {
        if vnext(self.n, u) == v || vnext(self.n, v) == u {
            return true;
        }
        match Diagonal::new(self.n, u, v) {
            Ok(d) => self.contains(&d),
            Err(_) => false,
        }
    }

    /// Number of incident edges, boundary included.
    pub fn degree(&self, v: u32) -> u32 {
        2 + self
            .diagonals
            .iter()
            .filter(|d| d.a == v || d.b == v)
            .count() as u32
    }

    /// Exchanges d for the opposite diagonal of the quadrilateral formed by
    /// the two incident triangles; returns the new triangulation and the
    /// flipped-in diagonal.
    pub fn flip(&self, d: &Diagonal) -> Result<(Triangulation, Diagonal)> {
        if !self.contains(d) {
            return Err(Error::domain(format!(
                "diagonal {:?} not in triangulation",
                d.pair()
            )));
        }
        let apex = |inside: bool| -> Result<u32> {
            let mut found = None;
            for c in 1..=self.n {
                if c == d.a || c == d.b {
                    continue;
                }
                if (d.a < c && c < d.b) != inside {
                    continue;
                }
                if self.has_edge(d.a, c) && self.has_edge(d.b, c) {
                    if found.is_some() {
                        return Err(Error::construction("ambiguous flip apex"));
                    }
                    found = Some(c);
                }
            }
            found.ok_or_else(|| Error::construction("missing flip apex"))
        };
        let p = apex(true)?;
        let q = apex(false)?;
        let nd = Diagonal::new(self.n, p, q)?;
        let mut ds: Vec<Diagonal> = self
            .diagonals
            .iter()
            .copied()
            .filter(|x| x != d)
            .collect();
        ds.push(nd);
        Ok((Triangulation::new(self.n, ds)?, nd))
    }

    /// Relabels every vertex v to v + k counter clockwise (k may be negative).
    pub fn rotate(&self, k: i64) -> Triangulation {
        let n = self.n as i64;
        let map = |v: u32| ((v as i64 - 1 + k).rem_euclid(n) + 1) as u32;
        let ds = self
            .diagonals
            .iter()
            .map(|d| Diagonal::new(self.n, map(d.a), map(d.b)).unwrap())
            .collect();
        Triangulation::new(self.n, ds).unwrap()
    }

    /// The n-2 triangular faces.
    pub fn faces(&self) -> Vec<[u32; 3]> {
        let mut out = Vec::new();
        for a in 1..=self.n {
            for b in a + 1..=self.n {
                if !self.has_edge(a, b) {
                    continue;
                }
                for c in b + 1..=self.n {
                    if self.has_edge(a, c) && self.has_edge(b, c) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    pub fn render(&self) -> String {
        let ds: Vec<String> = self
            .diagonals
            .iter()
            .map(|d| format!("{}-{}", d.a, d.b))
            .collect();
        format!("tri n={} d={}", self.n, ds.join(","))
    }

    pub fn parse(s: &str) -> Result<Triangulation> {
        let rest = s
            .trim()
            .strip_prefix("tri n=")
            .ok_or_else(|| Error::parse("triangulation must start with 'tri n='"))?;
        let (num, ds) = rest
            .split_once(" d=")
            .ok_or_else(|| Error::parse("missing ' d=' part"))?;
        let n: u32 = num
            .trim()
            .parse()
            .map_err(|_| Error::parse("bad polygon size"))?;
        let mut diagonals = Vec::new();
        for part in ds.trim().split(',').filter(|p| !p.is_empty()) {
            let (a, b) = part
                .split_once('-')
                .ok_or_else(|| Error::parse(format!("bad diagonal '{part}'")))?;
            let a: u32 = a.trim().parse().map_err(|_| Error::parse("bad vertex"))?;
            let b: u32 = b.trim().parse().map_err(|_| Error::parse("bad vertex"))?;
            diagonals.push(Diagonal::new(n, a, b)?);
        }
        Triangulation::new(n, diagonals)
    }

    /// All interior diagonals of the n-gon: binom(n,2) - n of them.
    pub fn all_diagonals(n: u32) -> Vec<Diagonal> {
        let mut out = Vec::new();
        for a in 1..=n {
            for b in a + 2..=n {
                if let Ok(d) = Diagonal::new(n, a, b) {
                    out.push(d);
                }
            }
        }
        out
    }
}

/// A zigzag triangulation together with its dual path: the two degree-2
/// vertices and the diagonals ordered along the dual path from endpoints.0.
#[derive(Clone, Debug)]
pub struct ZigzagView {
    pub base: Triangulation,
    pub endpoints: (u32, u32),
    pub dual_order: Vec<Diagonal>,
}

/// Dual-path decomposition; None when the weak dual is not a path.
pub fn zigzag_view(t: &Triangulation) -> Option<ZigzagView> {
    let n = t.n();
    let faces = t.faces();
    // Dual degree of a face = number of its sides that are diagonals.
    let diag_count = |f: &[u32; 3]| -> usize {
        [(f[0], f[1]), (f[0], f[2]), (f[1], f[2])]
            .iter()
            .filter(|&&(a, b)| Diagonal::new(n, a, b).map_or(false, |d| t.contains(&d)))
            .count()
    };
    if faces.iter().any(|f| diag_count(f) > 2) {
        return None;
    }
    let endpoints: Vec<u32> = (1..=n).filter(|&v| t.degree(v) == 2).collect();
    if endpoints.len() != 2 {
        return None;
    }
    // Walk the dual path starting from the ear at endpoints[0].
    let e0 = endpoints[0];
    let first = Diagonal::new(n, vprev(n, e0), vnext(n, e0)).ok()?;
    if !t.contains(&first) {
        return None;
    }
    let mut dual_order = vec![first];
    let mut prev_apex = e0;
    while (dual_order.len() as u32) < n - 3 {
        let cur = *dual_order.last().unwrap();
        // The face on the far side of cur has an apex other than prev_apex;
        // its other two sides give at most one further diagonal.
        let mut next = None;
        for c in 1..=n {
            if c == cur.a || c == cur.b || c == prev_apex {
                continue;
            }
            if !(t.has_edge(cur.a, c) && t.has_edge(cur.b, c)) {
                continue;
            }
            for (u, v) in [(cur.a, c), (cur.b, c)] {
                if let Ok(d) = Diagonal::new(n, u, v) {
                    if t.contains(&d) {
                        if next.is_some() {
                            return None;
                        }
                        next = Some((d, if d.a == cur.a || d.b == cur.a {
                            cur.b
                        } else {
                            cur.a
                        }));
                    }
                }
            }
        }
        let (d, apex) = next?;
        dual_order.push(d);
        prev_apex = apex;
    }
    Some(ZigzagView {
        base: t.clone(),
        endpoints: (endpoints[0], endpoints[1]),
        dual_order,
    })
}

impl ZigzagView {
    /// Diagonals along the dual path starting at the given endpoint.
    pub fn dual_order_from(&self, from: u32) -> Result<Vec<Diagonal>> {
        if from == self.endpoints.0 {
            Ok(self.dual_order.clone())
        } else if from == self.endpoints.1 {
            let mut o = self.dual_order.clone();
            o.reverse();
            Ok(o)
        } else {
            Err(Error::domain(format!("{from} is not an endpoint")))
        }
    }

    /// The l/r word read from the given endpoint: every diagonal after the
    /// first adds one new vertex, counter clockwise of the frontier is r,
    /// clockwise is l.
    pub fn word(&self, from: u32) -> Result<String> {
        let n = self.base.n();
        let order = self.dual_order_from(from)?;
        let mut cw = vprev(n, from);
        let mut ccw = vnext(n, from);
        debug_assert_eq!(order[0].pair(), Diagonal::new(n, cw, ccw)?.pair());
        let mut w = String::new();
        for d in &order[1..] {
            let new = if d.a == cw || d.b == cw {
                if d.a == cw { d.b } else { d.a }
            } else if d.a == ccw || d.b == ccw {
                if d.a == ccw { d.b } else { d.a }
            } else {
                return Err(Error::construction("dual path edge skips frontier"));
            };
            if new == vnext(n, ccw) {
                w.push('r');
                ccw = new;
            } else if new == vprev(n, cw) {
                w.push('l');
                cw = new;
            } else {
                return Err(Error::construction("dual path edge jumps a vertex"));
            }
        }
        Ok(w)
    }
}

/// Reverses the word and exchanges l with r.
pub fn bar(w: &str) -> String {
    w.chars()
        .rev()
        .map(|c| if c == 'l' { 'r' } else { 'l' })
        .collect()
}

/// Maximal runs of equal letters.
pub fn blocks(w: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for c in w.chars() {
        match out.last_mut() {
            Some(last) if last.ends_with(c) => last.push(c),
            _ => out.push(c.to_string()),
        }
    }
    out
}

/// The unique zigzag triangulation with the given word read from the given
/// endpoint.
pub fn from_word(n: u32, endpoint: u32, word: &str) -> Result<Triangulation> {
    if n < 4 {
        return Err(Error::domain("polygon size must be at least 4"));
    }
    if word.len() as u32 != n - 4 {
        return Err(Error::domain(format!(
            "word length {} does not fit an {n}-gon",
            word.len()
        )));
    }
    let mut cw = vprev(n, endpoint);
    let mut ccw = vnext(n, endpoint);
    let mut ds = vec![Diagonal::new(n, cw, ccw)?];
    for c in word.chars() {
        match c {
            'r' => ccw = vnext(n, ccw),
            'l' => cw = vprev(n, cw),
            _ => return Err(Error::domain(format!("bad letter '{c}' in word"))),
        }
        ds.push(Diagonal::new(n, cw, ccw)?);
    }
    Triangulation::new(n, ds)
}

/// An ordering in which to flip all diagonals of some triangulation.
#[derive(Clone, Debug)]
pub struct FlipOrdering {
    pub order: Vec<Diagonal>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Clockwise,
    CounterClockwise,
}

/// Flips every diagonal of t once, in the given order. Returns the final
/// triangulation, all visited triangulations (start included), and the
/// induced ordering on the result: each flipped-in diagonal inherits the
/// position of the diagonal it replaced, so iterating rotates repeatedly.
pub fn apply_ordering(
    t: &Triangulation,
    o: &FlipOrdering,
) -> Result<(Triangulation, Vec<Triangulation>, FlipOrdering)> {
    let mut sorted: Vec<Diagonal> = o.order.clone();
    sorted.sort();
    if sorted != t.diagonals() {
        return Err(Error::domain(
            "ordering is not a permutation of the triangulation's diagonals",
        ));
    }
    let mut current = t.clone();
    let mut path = vec![t.clone()];
    let mut induced = Vec::with_capacity(o.order.len());
    for d in &o.order {
        let (next, nd) = current.flip(d)?;
        induced.push(nd);
        path.push(next.clone());
        current = next;
    }
    Ok((current, path, FlipOrdering { order: induced }))
}

/// The two candidate orderings that rotate a zigzag triangulation by one
/// vertex, one per direction. The dual-path edges are grouped into blocks of
/// the word (consecutive blocks share their boundary edge) and flipped block
/// by block in alternating directions; this keeps every intermediate word
/// within three positions of the original. One candidate drops each block's
/// trailing shared edge, the other each block's leading shared edge, with
/// opposite alternation.
fn rotation_candidates(z: &ZigzagView, from: u32) -> Result<Vec<FlipOrdering>> {
    let order = z.dual_order_from(from)?;
    let w: Vec<char> = z.word(from)?.chars().collect();
    let m = order.len();
    // Letter t (0-based) joins dual edges t and t+1; a maximal run of equal
    // letters over t = lo..hi covers edges lo..=hi+1.
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    let mut lo = 0;
    for t in 1..=w.len() {
        if t == w.len() || w[t] != w[t - 1] {
            blocks.push((lo, t));
            lo = t;
        }
    }
    if blocks.is_empty() {
        blocks.push((0, m - 1)); // single edge, one trivial block
    }
    let b = blocks.len();
    let pick = |range: std::ops::RangeInclusive<usize>, reversed: bool| -> Vec<Diagonal> {
        let idxs: Vec<usize> = range.collect();
        let iter: Box<dyn Iterator<Item = &usize>> = if reversed {
            Box::new(idxs.iter().rev())
        } else {
            Box::new(idxs.iter())
        };
        iter.map(|&j| order[j]).collect()
    };
    let mut first = Vec::with_capacity(m);
    let mut second = Vec::with_capacity(m);
    for (k, &(elo, ehi)) in blocks.iter().enumerate() {
        // A shared boundary edge belongs to whichever neighbor is flipped in
        // reverse, so forward sets drop their shared ends. A forward set of a
        // one letter block loses both ends and contributes nothing.
        let emit = |out: &mut Vec<Diagonal>, reversed: bool| {
            if reversed {
                out.extend(pick(elo..=ehi, true));
            } else {
                let lo = if k == 0 { elo } else { elo + 1 };
                let hi = if k + 1 == b { ehi } else { ehi - 1 };
                if lo <= hi {
                    out.extend(pick(lo..=hi, false));
                }
            }
        };
        emit(&mut first, k % 2 == 1);
        emit(&mut second, k % 2 == 0);
    }
    Ok(vec![
        FlipOrdering { order: first },
        FlipOrdering { order: second },
    ])
}

/// Ordering whose application rotates the triangulation by one vertex in the
/// requested direction (clockwise: v -> v-1). The blockwise construction
/// yields two orderings without fixing which direction each realizes, so
/// both are tried.
pub fn rotation_ordering(z: &ZigzagView, from: u32, dir: Direction) -> Result<FlipOrdering> {
    let want = match dir {
        Direction::Clockwise => z.base.rotate(-1),
        Direction::CounterClockwise => z.base.rotate(1),
    };
    for cand in rotation_candidates(z, from)? {
        let Ok((end, _, _)) = apply_ordering(&z.base, &cand) else {
            continue;
        };
        if end == want {
            return Ok(cand);
        }
    }
    Err(Error::construction(
        "neither candidate ordering realizes the requested rotation",
    ))
}

/// Dual-path order from endpoint v; applying it turns the triangulation into
/// the star with center v.
pub fn star_ordering(z: &ZigzagView, v: u32) -> Result<FlipOrdering> {
    Ok(FlipOrdering {
        order: z.dual_order_from(v)?,
    })
}

/// The distinct rotations of t; n of them when t has no rotational symmetry.
pub fn rotation_family(t: &Triangulation) -> Vec<Triangulation> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for k in 0..t.n() {
        let r = t.rotate(k as i64);
        if seen.insert(r.clone()) {
            out.push(r);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(n: u32, ds: &[(u32, u32)]) -> Triangulation {
        Triangulation::new(
            n,
            ds.iter().map(|&(a, b)| Diagonal::new(n, a, b).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn flip_square() {
        let t = tri(4, &[(1, 3)]);
        let (t2, nd) = t.flip(&Diagonal::new(4, 1, 3).unwrap()).unwrap();
        assert_eq!(nd.pair(), (2, 4));
        assert_eq!(t2, tri(4, &[(2, 4)]));
        let (t3, nd2) = t2.flip(&nd).unwrap();
        assert_eq!(t3, t);
        assert_eq!(nd2.pair(), (1, 3));
    }

    #[test]
    fn flip_pentagon() {
        let t = tri(5, &[(1, 3), (1, 4)]);
        let (t2, nd) = t.flip(&Diagonal::new(5, 1, 3).unwrap()).unwrap();
        assert_eq!(nd.pair(), (2, 4));
        assert_eq!(t2, tri(5, &[(2, 4), (1, 4)]));
    }

    #[test]
    fn crossing_rejected() {
        let d1 = Diagonal::new(6, 1, 4).unwrap();
        let d2 = Diagonal::new(6, 3, 6).unwrap();
        assert!(d1.crosses(&d2));
        assert!(Triangulation::new(6, vec![d1, d2, Diagonal::new(6, 1, 3).unwrap()]).is_err());
    }

    #[test]
    fn star_zigzag_word() {
        let s = Triangulation::star(6, 1).unwrap();
        assert_eq!(s, tri(6, &[(1, 3), (1, 4), (1, 5)]));
        let z = zigzag_view(&s).unwrap();
        assert_eq!(z.endpoints, (2, 6));
        assert_eq!(z.word(2).unwrap(), "rr");
        assert_eq!(z.word(6).unwrap(), "ll");
        assert!(z.word(3).is_err());
    }

    #[test]
    fn inner_triangle_not_zigzag() {
        let t = tri(6, &[(1, 3), (3, 5), (1, 5)]);
        assert!(zigzag_view(&t).is_none());
    }

    #[test]
    fn square_zigzag() {
        let t = tri(4, &[(1, 3)]);
        let z = zigzag_view(&t).unwrap();
        assert_eq!(z.endpoints, (2, 4));
        assert_eq!(z.word(2).unwrap(), "");
    }

    #[test]
    fn word_distinguishes_reflections() {
        let a = tri(6, &[(1, 3), (1, 4), (1, 5)]);
        let b = tri(6, &[(1, 3), (3, 6), (4, 6)]);
        let za = zigzag_view(&a).unwrap();
        let zb = zigzag_view(&b).unwrap();
        assert_eq!(za.word(2).unwrap(), "rr");
        assert_eq!(zb.word(2).unwrap(), "lr");
    }

    #[test]
    fn bar_and_blocks() {
        assert_eq!(bar("ll"), "rr");
        assert_eq!(bar("lr"), "lr");
        assert_eq!(bar(&bar("rllrlrr")), "rllrlrr");
        let bs = blocks("lllrrrlllrl");
        let want: Vec<String> = ["lll", "rrr", "lll", "r", "l"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(bs, want);
        assert_eq!(blocks("l"), vec!["l".to_string()]);
        assert!(blocks("").is_empty());
    }

    #[test]
    fn from_word_roundtrip() {
        for n in 5..=9 {
            for bits in 0u32..(1 << (n - 4)) {
                let w: String = (0..n - 4)
                    .map(|i| if bits >> i & 1 == 1 { 'r' } else { 'l' })
                    .collect();
                for e in 1..=n {
                    let t = from_word(n, e, &w).unwrap();
                    let z = zigzag_view(&t).unwrap();
                    assert_eq!(z.word(e).unwrap(), w, "n={n} e={e}");
                    let other = if z.endpoints.0 == e {
                        z.endpoints.1
                    } else {
                        z.endpoints.0
                    };
                    assert_eq!(z.word(other).unwrap(), bar(&w));
                }
            }
        }
    }

    #[test]
    fn words_rotation_invariant() {
        for n in 5..=8 {
            for bits in 0u32..(1 << (n - 4)) {
                let w: String = (0..n - 4)
                    .map(|i| if bits >> i & 1 == 1 { 'r' } else { 'l' })
                    .collect();
                let t = from_word(n, 1, &w);
                let t = t.unwrap();
                for k in 0..n {
                    let r = t.rotate(k as i64);
                    let z = zigzag_view(&r).unwrap();
                    let mut ws = [z.word(z.endpoints.0).unwrap(), z.word(z.endpoints.1).unwrap()];
                    ws.sort();
                    let mut want = [w.clone(), bar(&w)];
                    want.sort();
                    assert_eq!(ws, want);
                }
            }
        }
    }

    #[test]
    fn rotation_ordering_rotates() {
        for n in [6u32, 8] {
            for bits in 0u32..(1 << (n - 4)) {
                let w: String = (0..n - 4)
                    .map(|i| if bits >> i & 1 == 1 { 'r' } else { 'l' })
                    .collect();
                let t = from_word(n, 3, &w).unwrap();
                let z = zigzag_view(&t).unwrap();
                for dir in [Direction::Clockwise, Direction::CounterClockwise] {
                    let o = rotation_ordering(&z, 3, dir).unwrap();
                    let (end, path, _) = apply_ordering(&t, &o).unwrap();
                    let k = if dir == Direction::Clockwise { -1 } else { 1 };
                    assert_eq!(end, t.rotate(k));
                    assert_eq!(path.len() as u32, n - 2);
                }
            }
        }
    }

    #[test]
    fn iterated_rotation_returns() {
        let n = 8;
        let t = from_word(n, 1, "rlrr").unwrap();
        assert_eq!(rotation_family(&t).len() as u32, n);
        let z = zigzag_view(&t).unwrap();
        let mut o = rotation_ordering(&z, 1, Direction::Clockwise).unwrap();
        let mut cur = t.clone();
        for _ in 0..n {
            let (end, _, induced) = apply_ordering(&cur, &o).unwrap();
            cur = end;
            o = induced;
        }
        assert_eq!(cur, t);
    }

    #[test]
    fn star_ordering_makes_star() {
        let t = tri(6, &[(2, 6), (3, 6), (3, 5)]);
        let z = zigzag_view(&t).unwrap();
        assert!(z.endpoints.0 == 1 || z.endpoints.1 == 1);
        let o = star_ordering(&z, 1).unwrap();
        let (end, _, _) = apply_ordering(&t, &o).unwrap();
        assert_eq!(end, Triangulation::star(6, 1).unwrap());
        assert_eq!(end.degree(1), 5);
    }

    #[test]
    fn family_sizes() {
        let t = tri(6, &[(1, 3), (3, 5), (1, 5)]);
        assert_eq!(rotation_family(&t).len(), 2);
        let sym = from_word(6, 1, "rl").unwrap();
        assert_eq!(sym, sym.rotate(3));
        assert_eq!(rotation_family(&sym).len(), 3);
        let z = from_word(6, 1, "rr").unwrap();
        assert_eq!(rotation_family(&z).len(), 6);
    }

    #[test]
    fn every_edge_twice_in_zigzag_family() {
        for n in 5..=9u32 {
            for bits in 0u32..(1 << (n - 4)) {
                let w: String = (0..n - 4)
                    .map(|i| if bits >> i & 1 == 1 { 'r' } else { 'l' })
                    .collect();
                let t = from_word(n, 1, &w).unwrap();
                let mut count = std::collections::HashMap::new();
                for k in 0..n {
                    for d in t.rotate(k as i64).diagonals() {
                        *count.entry(*d).or_insert(0u32) += 1;
                    }
                }
                for d in Triangulation::all_diagonals(n) {
                    assert_eq!(count.get(&d).copied().unwrap_or(0), 2, "n={n} w={w}");
                }
            }
        }
    }

    #[test]
    fn serialization_roundtrip() {
        let t = tri(6, &[(1, 3), (1, 4), (1, 5)]);
        let s = t.render();
        assert_eq!(s, "tri n=6 d=1-3,1-4,1-5");
        assert_eq!(Triangulation::parse(&s).unwrap(), t);
        assert!(Triangulation::parse("tri n=6 d=1-2").is_err());
    }
}
