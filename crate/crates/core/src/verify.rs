//! Construction-independent verification. Certificates are produced by
//! replaying flip sequences with minimal local implementations of the flip
//! rules, so a transcription bug in a generator cannot hide in its verifier.
//! Tiny instances are cross-checked against exhaustively built flip graphs.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use crate::assoc_rainbow::AssocRainbowCycle;
use crate::error::{Error, Result};
use crate::format::{Artifact, Payload, Target};
use crate::perm::{factorial, Semantics, TranspositionSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    GrayCode,
    BalancedCycle,
    RainbowCycle,
}

/// Which swaps count as edges of the permutation flip graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlipModel {
    /// Any two entries may be swapped.
    All,
    /// Only entries at neighbouring positions.
    Adjacent,
    /// Neighbouring positions, with positions 1 and n also neighbours.
    CyclicallyAdjacent,
}

impl FlipModel {
    fn admits(&self, n: u32, p: u32, q: u32) -> bool {
        match self {
            FlipModel::All => true,
            FlipModel::Adjacent => q == p + 1,
            FlipModel::CyclicallyAdjacent => q == p + 1 || (p == 1 && q == n && n > 2),
        }
    }
}

/// Outcome of a verification run: replay statistics plus every violation
/// found. A certificate passes exactly when no violations were recorded.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub order: u32,
    pub size: usize,
    pub cyclic: bool,
    pub distinct: usize,
    pub color_counts: BTreeMap<(u32, u32), u64>,
    pub failures: Vec<String>,
}

impl Certificate {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    /// Machine-parsable key:value report, one field per line.
    pub fn render(&self) -> String {
        let kind = match self.kind {
            CertificateKind::GrayCode => "gray-code",
            CertificateKind::BalancedCycle => "balanced-cycle",
            CertificateKind::RainbowCycle => "rainbow-cycle",
        };
        let mut s = String::new();
        let _ = writeln!(s, "kind: {kind}");
        let _ = writeln!(s, "order: {}", self.order);
        let _ = writeln!(s, "size: {}", self.size);
        let _ = writeln!(s, "cyclic: {}", self.cyclic);
        let _ = writeln!(s, "distinct: {}", self.distinct);
        for ((a, b), c) in &self.color_counts {
            let _ = writeln!(s, "count {a}-{b}: {c}");
        }
        for f in &self.failures {
            let _ = writeln!(s, "failure: {f}");
        }
        let _ = writeln!(s, "pass: {}", self.pass());
        s
    }
}

/// Replays a transposition sequence and checks distinctness, admissibility of
/// every step under the claimed flip model, closure when cyclic, and the
/// per-color counts (closing flip included) against `expected_count`. Colors
/// are value pairs in the all-swaps model and position pairs otherwise.
pub fn verify_perm_code(
    s: &TranspositionSequence,
    expect_hamiltonian: bool,
    expected_count: Option<u64>,
    model: FlipModel,
) -> Certificate {
    let n = s.n();
    let mut failures = Vec::new();
    let mut counts: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    let start: Vec<u32> = s.start().entries().to_vec();
    let mut cur = start.clone();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(cur.clone());

    // Minimal local swap; admissibility and color are read off the pair of
    // positions and values that changed, independent of flip semantics.
    fn step(
        n: u32,
        model: FlipModel,
        cur: &mut Vec<u32>,
        counts: &mut BTreeMap<(u32, u32), u64>,
        failures: &mut Vec<String>,
        a: u32,
        b: u32,
        sem: Semantics,
        what: &str,
    ) {
        let (p, q) = match sem {
            Semantics::OnIndices => (a, b),
            Semantics::OnValues => {
                let p = cur.iter().position(|&v| v == a);
                let q = cur.iter().position(|&v| v == b);
                match (p, q) {
                    (Some(p), Some(q)) => (p as u32 + 1, q as u32 + 1),
                    _ => {
                        failures.push(format!("{what}: values {a},{b} not present"));
                        return;
                    }
                }
            }
        };
        if p == q || p == 0 || q.max(p) > n {
            failures.push(format!("{what}: positions {p},{q} out of range"));
            return;
        }
        let (p, q) = if p < q { (p, q) } else { (q, p) };
        if !model.admits(n, p, q) {
            failures.push(format!("{what}: swap at positions {p},{q} is not an edge"));
        }
        let (vp, vq) = (cur[(p - 1) as usize], cur[(q - 1) as usize]);
        let color = match model {
            FlipModel::All => (vp.min(vq), vp.max(vq)),
            _ => (p, q),
        };
        *counts.entry(color).or_insert(0) += 1;
        cur.swap((p - 1) as usize, (q - 1) as usize);
    }

    for (i, t) in s.flips().iter().enumerate() {
        step(
            n,
            model,
            &mut cur,
            &mut counts,
            &mut failures,
            t.a(),
            t.b(),
            t.semantics,
            &format!("flip {i}"),
        );
        if !seen.insert(cur.clone()) {
            failures.push(format!("flip {i}: permutation revisited"));
        }
    }
    let mut size = s.flips().len();
    if s.cyclic() && !s.flips().is_empty() {
        // The closing step back to the start must itself be an edge.
        let diff: Vec<u32> = (1..=n)
            .filter(|&i| cur[(i - 1) as usize] != start[(i - 1) as usize])
            .collect();
        match diff.as_slice() {
            [p, q] => {
                let sem = s.semantics().unwrap_or(Semantics::OnIndices);
                let (a, b) = match sem {
                    Semantics::OnIndices => (*p, *q),
                    Semantics::OnValues => (cur[(p - 1) as usize], cur[(q - 1) as usize]),
                };
                step(
                    n,
                    model,
                    &mut cur,
                    &mut counts,
                    &mut failures,
                    a,
                    b,
                    sem,
                    "closing flip",
                );
                size += 1;
            }
            [] => failures.push("closing flip: cycle already closed".into()),
            _ => failures.push("closing flip: end is not one swap from start".into()),
        }
        if cur != start {
            failures.push("cycle does not close".into());
        }
    } else if !s.cyclic() && cur == start && !s.flips().is_empty() {
        failures.push("path returns to its start".into());
    }

    if expect_hamiltonian {
        let total: u64 = (1..=n as u64).product();
        if seen.len() as u64 != total {
            failures.push(format!(
                "visited {} of {total} permutations",
                seen.len()
            ));
        }
    }
    if let Some(want) = expected_count {
        let universe: Vec<(u32, u32)> = match model {
            FlipModel::All => (1..=n)
                .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
                .collect(),
            FlipModel::Adjacent => (1..n).map(|i| (i, i + 1)).collect(),
            FlipModel::CyclicallyAdjacent => {
                let mut u: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
                if n > 2 {
                    u.push((1, n));
                }
                u
            }
        };
        for c in universe {
            let got = counts.get(&c).copied().unwrap_or(0);
            if got != want {
                failures.push(format!(
                    "transposition {}-{} used {got} times, want {want}",
                    c.0, c.1
                ));
            }
        }
        if counts.len() as u64 * want != size as u64 {
            failures.push("flips outside the expected color set".into());
        }
    }

    Certificate {
        kind: if expected_count.is_some() {
            CertificateKind::BalancedCycle
        } else {
            CertificateKind::GrayCode
        },
        order: n,
        size,
        cyclic: s.cyclic(),
        distinct: seen.len(),
        color_counts: counts,
        failures,
    }
}

// Minimal standalone triangulation replay: a triangulation is a sorted set of
// vertex pairs; edges of the polygon count as present for apex lookups.

fn tri_key(ds: &HashSet<(u32, u32)>) -> String {
    let mut v: Vec<_> = ds.iter().copied().collect();
    v.sort();
    v.iter()
        .map(|(a, b)| format!("{a}-{b}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn has_edge(n: u32, ds: &HashSet<(u32, u32)>, a: u32, b: u32) -> bool {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    b - a == 1 || (a == 1 && b == n) || ds.contains(&(a, b))
}

/// Flips (a,b) out of the triangulation: finds the apex of the triangle on
/// each side of (a,b) and inserts the diagonal between the apexes.
fn tri_flip(n: u32, ds: &mut HashSet<(u32, u32)>, a: u32, b: u32) -> Result<(u32, u32)> {
    if !ds.remove(&(a, b)) {
        return Err(Error::verification(format!("diagonal {a}-{b} not present")));
    }
    let mut apexes = Vec::new();
    for side in [true, false] {
        let mut found = None;
        for c in 1..=n {
            let inside = a < c && c < b;
            if c == a || c == b || inside != side {
                continue;
            }
            if has_edge(n, ds, a, c) && has_edge(n, ds, c, b) {
                if found.is_some() {
                    return Err(Error::verification(format!("ambiguous apex for {a}-{b}")));
                }
                found = Some(c);
            }
        }
        apexes.push(found.ok_or_else(|| Error::verification(format!("no apex for {a}-{b}")))?);
    }
    let (c, d) = (apexes[0].min(apexes[1]), apexes[0].max(apexes[1]));
    if d - c < 2 || (c == 1 && d == n) {
        return Err(Error::verification(format!("flip of {a}-{b} leaves no diagonal")));
    }
    ds.insert((c, d));
    Ok((c, d))
}

/// Replays a rainbow cycle on triangulations: every flip must be admissible,
/// no triangulation may repeat, the cycle must close, and every diagonal must
/// be removed exactly r times. For r = 1 the visits containing any fixed
/// diagonal must form one contiguous arc of the cycle.
pub fn verify_assoc_cycle(c: &AssocRainbowCycle) -> Certificate {
    let n = c.n;
    let mut failures = Vec::new();
    let mut counts: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    let start: HashSet<(u32, u32)> = c.start.diagonals().iter().map(|d| d.pair()).collect();
    let mut cur = start.clone();
    let mut seen: HashSet<String> = HashSet::new();
    seen.insert(tri_key(&cur));
    // membership change events per diagonal, for the arc check
    let mut events: HashMap<(u32, u32), u64> = HashMap::new();

    for (i, d) in c.flips.iter().enumerate() {
        let (a, b) = d.pair();
        match tri_flip(n, &mut cur, a, b) {
            Ok(ins) => {
                *counts.entry((a, b)).or_insert(0) += 1;
                *events.entry((a, b)).or_insert(0) += 1;
                *events.entry(ins).or_insert(0) += 1;
            }
            Err(e) => {
                failures.push(format!("flip {i}: {e}"));
                break;
            }
        }
        if i + 1 < c.flips.len() && !seen.insert(tri_key(&cur)) {
            failures.push(format!("flip {i}: triangulation revisited"));
        }
    }
    if cur != start {
        failures.push("cycle does not close".into());
    }

    let mut all = Vec::new();
    for a in 1..=n {
        for b in a + 2..=n {
            if !(a == 1 && b == n) {
                all.push((a, b));
            }
        }
    }
    for &d in &all {
        let got = counts.get(&d).copied().unwrap_or(0);
        if got != c.r as u64 {
            failures.push(format!(
                "diagonal {}-{} removed {got} times, want {}",
                d.0, d.1, c.r
            ));
        }
    }
    if c.r == 1 && failures.is_empty() {
        // With one removal and one insertion per diagonal there are exactly
        // two membership changes around the cycle, hence a single arc.
        for &d in &all {
            if events.get(&d).copied().unwrap_or(0) != 2 {
                failures.push(format!(
                    "diagonal {}-{}: visits containing it are not one arc",
                    d.0, d.1
                ));
            }
        }
    }

    Certificate {
        kind: CertificateKind::RainbowCycle,
        order: n,
        size: c.flips.len(),
        cyclic: true,
        distinct: seen.len(),
        color_counts: counts,
        failures,
    }
}

/// Certifies a parsed artifact with the verifier matching its kind.
pub fn verify_artifact(a: &Artifact) -> Result<Certificate> {
    Ok(match (&a.payload, a.target) {
        (Payload::Perm(seq), Target::PermAll) => {
            let base = a.m.unwrap_or(a.n);
            if base < 2 {
                verify_perm_code(seq, true, None, FlipModel::All)
            } else {
                let want = 2 * factorial(base - 2);
                verify_perm_code(seq, a.m.is_none(), Some(want), FlipModel::All)
            }
        }
        (Payload::Perm(seq), Target::PermCadj) => {
            let want = factorial(a.n.max(1) - 1);
            verify_perm_code(seq, true, Some(want), FlipModel::CyclicallyAdjacent)
        }
        (Payload::Perm(seq), Target::PermAdjRainbow) => {
            let r = a.r.ok_or_else(|| Error::domain("artifact missing r"))? as u64;
            verify_perm_code(seq, false, Some(r), FlipModel::Adjacent)
        }
        (Payload::Assoc(c), Target::Assoc) => verify_assoc_cycle(c),
        _ => return Err(Error::domain("artifact payload does not match its kind")),
    })
}

/// Which flip graph to enumerate exhaustively.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphModel {
    Permutations(FlipModel),
    Triangulations,
}

/// Explicit flip graph on canonically serialized objects.
#[derive(Clone, Debug)]
pub struct FlipGraph {
    pub vertices: Vec<String>,
    index: HashMap<String, usize>,
    pub edges: HashSet<(usize, usize)>,
}

impl FlipGraph {
    pub fn vertex(&self, key: &str) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        match (self.vertex(a), self.vertex(b)) {
            (Some(i), Some(j)) => self.edges.contains(&(i.min(j), i.max(j))),
            _ => false,
        }
    }

    pub fn degree(&self, i: usize) -> usize {
        self.edges.iter().filter(|(a, b)| *a == i || *b == i).count()
    }
}

fn perm_key(p: &[u32]) -> String {
    p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn permutations(n: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in out {
            for v in 1..=n {
                if !p.contains(&v) {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
        }
        out = next;
    }
    out
}

fn triangulations(n: u32) -> Vec<HashSet<(u32, u32)>> {
    // Catalan recursion: choose the apex of the triangle over the base edge
    // (lo, hi) and triangulate the two sub-polygons independently.
    fn split(lo: u32, hi: u32, n: u32) -> Vec<Vec<(u32, u32)>> {
        if hi - lo < 2 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for apex in lo + 1..hi {
            for left in split(lo, apex, n) {
                for right in split(apex, hi, n) {
                    let mut t = left.clone();
                    t.extend(right.iter().copied());
                    for &(a, b) in [(lo, apex), (apex, hi)].iter() {
                        if b - a >= 2 && !(a == 1 && b == n) {
                            t.push((a, b));
                        }
                    }
                    out.push(t);
                }
            }
        }
        out
    }
    split(1, n, n)
        .into_iter()
        .map(|v| v.into_iter().collect())
        .collect()
}

/// Exhaustively enumerates all objects of the given order and connects every
/// admissible flip. Refuses orders where enumeration is not instant.
pub fn brute_force_flip_graph(order: u32, model: GraphModel) -> Result<FlipGraph> {
    let keys: Vec<String> = match model {
        GraphModel::Permutations(_) => {
            if order > 5 {
                return Err(Error::domain("permutation flip graphs only for n <= 5"));
            }
            permutations(order).iter().map(|p| perm_key(p)).collect()
        }
        GraphModel::Triangulations => {
            if !(3..=8).contains(&order) {
                return Err(Error::domain("triangulation flip graphs only for 3 <= n <= 8"));
            }
            triangulations(order).iter().map(tri_key).collect()
        }
    };
    let index: HashMap<String, usize> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| (k.clone(), i))
        .collect();
    let mut edges = HashSet::new();
    match model {
        GraphModel::Permutations(fm) => {
            for (i, k) in keys.iter().enumerate() {
                let p: Vec<u32> = k.split(' ').map(|v| v.parse().unwrap()).collect();
                for a in 1..=order {
                    for b in a + 1..=order {
                        if !fm.admits(order, a, b) {
                            continue;
                        }
                        let mut q = p.clone();
                        q.swap((a - 1) as usize, (b - 1) as usize);
                        let j = index[&perm_key(&q)];
                        edges.insert((i.min(j), i.max(j)));
                    }
                }
            }
        }
        GraphModel::Triangulations => {
            for (i, k) in keys.iter().enumerate() {
                let ds: HashSet<(u32, u32)> = if k.is_empty() {
                    HashSet::new()
                } else {
                    k.split(',')
                        .map(|s| {
                            let (a, b) = s.split_once('-').unwrap();
                            (a.parse().unwrap(), b.parse().unwrap())
                        })
                        .collect()
                };
                for &(a, b) in ds.iter() {
                    let mut next = ds.clone();
                    if tri_flip(order, &mut next, a, b).is_ok() {
                        let j = index[&tri_key(&next)];
                        edges.insert((i.min(j), i.max(j)));
                    }
                }
            }
        }
    }
    Ok(FlipGraph {
        vertices: keys,
        index,
        edges,
    })
}
