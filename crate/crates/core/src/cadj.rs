//! Balanced Gray codes for S_n under cyclically adjacent transpositions
//! (index semantics), for even n. Built from a Hamilton path in the
//! adjacent-transposition flip graph from the identity to its left rotation,
//! which exists for even orders. The path comes from a recursive block
//! construction (splitting on the last coordinate) with a small backtracking
//! base case, and is cached on disk (see [`CACHE_DIR_ENV`]).

use std::collections::HashSet;
use std::fs;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::perm::{PathBuilder, Permutation, Transposition, TranspositionSequence};

/// Environment variable naming the directory for the Hamilton path cache.
/// When unset, paths are recomputed on every run.
pub const CACHE_DIR_ENV: &str = "FLIPCYCLES_CACHE_DIR";

/// Hamilton path in the adjacent-transposition graph of S_n from 12...n to
/// 23...n1, as a list of adjacent index transpositions.
#[derive(Clone, Debug)]
pub struct RotationHamiltonPath {
    pub n: u32,
    pub flips: Vec<Transposition>,
}

/// Cyclic balanced Gray code under cyclically adjacent index transpositions:
/// each of the n transpositions {(i,i+1)} plus (1,n) appears exactly (n-1)!
/// times including closing.
#[derive(Clone, Debug)]
pub struct BalancedCadjCode {
    pub n: u32,
    pub code: TranspositionSequence,
}

fn idx(a: u32, b: u32) -> Transposition {
    Transposition::on_indices(a, b)
}

fn left_rotation(n: u32) -> Permutation {
    let mut e: Vec<u32> = (2..=n).collect();
    e.push(1);
    Permutation::from_entries(e).unwrap()
}

/// True when p is an odd permutation (odd number of inversions).
fn is_odd(p: &Permutation) -> bool {
    let e = p.entries();
    let mut inv = 0usize;
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            if e[i] > e[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
}

/// Exhaustive DFS for a Hamilton path between two fixed permutations in the
/// adjacent-transposition graph. Only used for small orders.
fn dfs_path(u: &Permutation, v: &Permutation) -> Result<Vec<Transposition>> {
    let m = u.n();
    if u == v {
        return if (1..=m as u64).product::<u64>() == 1 {
            Ok(Vec::new())
        } else {
            Err(Error::construction("Hamilton path endpoints coincide"))
        };
    }
    let total: usize = (1..=m as usize).product();
    let moves: Vec<Transposition> = (1..m).map(|i| idx(i, i + 1)).collect();
    let mut visited: HashSet<Vec<u32>> = HashSet::new();
    visited.insert(u.entries().to_vec());
    let mut flips: Vec<Transposition> = Vec::new();
    fn go(
        current: &Permutation,
        v: &Permutation,
        total: usize,
        moves: &[Transposition],
        visited: &mut HashSet<Vec<u32>>,
        flips: &mut Vec<Transposition>,
    ) -> bool {
        if visited.len() == total {
            return current == v;
        }
        for &t in moves {
            let q = current.apply(t).unwrap();
            if &q == v && visited.len() != total - 1 {
                continue;
            }
            if visited.insert(q.entries().to_vec()) {
                flips.push(t);
                if go(&q, v, total, moves, visited, flips) {
                    return true;
                }
                flips.pop();
                visited.remove(q.entries());
            }
        }
        false
    }
    if go(u, v, total, &moves, &mut visited, &mut flips) {
        Ok(flips)
    } else {
        Err(Error::construction(format!(
            "no Hamilton path {:?} -> {:?}",
            u.entries(),
            v.entries()
        )))
    }
}

/// Strips the last coordinate of a permutation and renames the remaining
/// values to 1..n-1, preserving order.
fn drop_last(p: &Permutation) -> Permutation {
    let m = p.n();
    let removed = p.entry(m);
    let e: Vec<u32> = (1..m)
        .map(|i| {
            let x = p.entry(i);
            if x > removed { x - 1 } else { x }
        })
        .collect();
    Permutation::from_entries(e).unwrap()
}

/// Hamilton path between two permutations of opposite parity in the
/// adjacent-transposition graph of S_m (the bubble-sort graph, which is
/// Hamilton laceable for m >= 4).
///
/// For m > 4 the graph splits into m blocks by last coordinate, each a copy
/// of the order m-1 graph. The path crosses the blocks in an order that keeps
/// every sub-path's endpoints in distinct sub-blocks; within a block the exit
/// is any vertex whose next-to-last coordinate points at the following block
/// and whose parity differs from the entry's.
fn laceable_path(u: &Permutation, v: &Permutation) -> Result<Vec<Transposition>> {
    let m = u.n();
    if v.n() != m {
        return Err(Error::domain("laceable_path endpoint order mismatch"));
    }
    if m <= 4 {
        return dfs_path(u, v);
    }
    let j_first = u.entry(m);
    let j_last = v.entry(m);
    if j_first == j_last {
        return Err(Error::construction(
            "laceable_path endpoints share a block",
        ));
    }
    // Block order: u's block first, v's block last. The second block must
    // differ from u's next-to-last coordinate and the next-to-last block from
    // v's, so that each sub-path gets endpoints in distinct sub-blocks.
    let mut middles: Vec<u32> = (1..=m).filter(|&j| j != j_first && j != j_last).collect();
    let pick = |pool: &mut Vec<u32>, avoid: u32| -> u32 {
        let at = pool.iter().position(|&j| j != avoid).unwrap();
        pool.remove(at)
    };
    let second = pick(&mut middles, u.entry(m - 1));
    let penultimate = pick(&mut middles, v.entry(m - 1));
    let mut order = vec![j_first, second];
    order.extend(middles);
    order.push(penultimate);
    order.push(j_last);

    let mut flips: Vec<Transposition> = Vec::new();
    let mut entry = u.clone();
    for (k, &j) in order.iter().enumerate() {
        debug_assert_eq!(entry.entry(m), j);
        let exit = if k + 1 == order.len() {
            v.clone()
        } else {
            // Lowest permutation in block j ending with (order[k+1], j) whose
            // parity differs from the entry's.
            let mut e: Vec<u32> = (1..=m)
                .filter(|&x| x != j && x != order[k + 1])
                .collect();
            e.push(order[k + 1]);
            e.push(j);
            let mut w = Permutation::from_entries(e)?;
            if is_odd(&w) == is_odd(&entry) {
                w = w.apply(idx(1, 2))?;
            }
            w
        };
        let sub = laceable_path(&drop_last(&entry), &drop_last(&exit))?;
        flips.extend(sub);
        if k + 1 < order.len() {
            flips.push(idx(m - 1, m));
            entry = exit.apply(idx(m - 1, m))?;
        }
    }
    Ok(flips)
}

/// Hamilton path from the identity to its left rotation, for even n.
fn search_hamilton(n: u32) -> Result<Vec<Transposition>> {
    laceable_path(&Permutation::identity(n), &left_rotation(n))
}

fn cache_file() -> Option<PathBuf> {
    std::env::var_os(CACHE_DIR_ENV).map(|d| PathBuf::from(d).join("hampath.txt"))
}

fn cache_lookup(n: u32) -> Option<Vec<Transposition>> {
    let path = cache_file()?;
    let text = fs::read_to_string(path).ok()?;
    for line in text.lines() {
        if let Some(flips) = parse_cache_line(line, n) {
            return Some(flips);
        }
    }
    None
}

fn parse_cache_line(line: &str, n: u32) -> Option<Vec<Transposition>> {
    let rest = line.strip_prefix("hampath n=")?;
    let (num, flips) = rest.split_once(" flips=")?;
    if num.trim().parse::<u32>().ok()? != n {
        return None;
    }
    let mut out = Vec::new();
    for part in flips.trim().split(',') {
        let (i, j) = part.trim().split_once(' ')?;
        out.push(idx(i.parse().ok()?, j.parse().ok()?));
    }
    Some(out)
}

fn cache_store(n: u32, flips: &[Transposition]) {
    let Some(path) = cache_file() else { return };
    if let Some(dir) = path.parent() {
        let _ = fs::create_dir_all(dir);
    }
    let body: Vec<String> = flips
        .iter()
        .map(|t| format!("{} {}", t.a(), t.b()))
        .collect();
    let line = format!("hampath n={n} flips={}\n", body.join(","));
    let mut text = fs::read_to_string(&path).unwrap_or_default();
    text.push_str(&line);
    let _ = fs::write(path, text);
}

/// Hamilton path for even n from the identity to its left rotation.
pub fn hamilton_path_even(n: u32) -> Result<RotationHamiltonPath> {
    if n % 2 != 0 {
        return Err(Error::domain("hamilton_path_even needs even n"));
    }
    if n == 2 {
        return Ok(RotationHamiltonPath {
            n,
            flips: vec![idx(1, 2)],
        });
    }
    let flips = match cache_lookup(n) {
        Some(flips) => flips,
        None => {
            let flips = search_hamilton(n)?;
            cache_store(n, &flips);
            flips
        }
    };
    let path = RotationHamiltonPath { n, flips };
    validate_path(&path)?;
    Ok(path)
}

fn validate_path(p: &RotationHamiltonPath) -> Result<()> {
    let seq = TranspositionSequence::new(Permutation::identity(p.n), p.flips.clone(), false)?;
    let counts = seq.transition_counts(false)?; // also checks distinctness
    let total: u64 = (1..=p.n as u64).product();
    if counts.total() + 1 != total {
        return Err(Error::verification("Hamilton path has wrong length"));
    }
    for t in &p.flips {
        if !t.is_adjacent() {
            return Err(Error::verification("non-adjacent flip in Hamilton path"));
        }
    }
    if seq.end()? != left_rotation(p.n) {
        return Err(Error::verification("Hamilton path has wrong end"));
    }
    Ok(())
}

/// The same path walked backwards: a Gray code from 12...n to n12...(n-1).
pub fn reversed_path(l: &RotationHamiltonPath) -> Vec<Transposition> {
    let mut flips = l.flips.clone();
    flips.reverse();
    flips
}

fn shift_flips(flips: &[Transposition], by: u32, n: u32) -> Vec<Transposition> {
    flips
        .iter()
        .map(|t| {
            idx(
                (t.a() + by - 1) % n + 1,
                (t.b() + by - 1) % n + 1,
            )
        })
        .collect()
}

/// G on order l.n+1: n+1 blocks of the shifted path (fixing coordinate 1)
/// joined by (1,2); runs 12...(n+1) to 21...(n+1), all flips adjacent.
pub fn build_g_cadj(l: &RotationHamiltonPath) -> Result<TranspositionSequence> {
    if l.n % 2 != 0 {
        return Err(Error::domain("build_g_cadj needs even input order"));
    }
    let m = l.n + 1;
    let block = shift_flips(&l.flips, 1, m + 1); // no wrap: indices 2..=m
    let mut b = PathBuilder::new(Permutation::identity(m));
    for k in 0..m {
        let first = b.current().entry(1);
        b.extend(block.iter().copied())?;
        if b.current().entry(1) != first {
            return Err(Error::construction("block moved coordinate 1"));
        }
        if k < m - 1 {
            b.push(idx(1, 2))?;
        }
    }
    let mut end: Vec<u32> = vec![2, 1];
    end.extend(3..=m);
    b.expect(&Permutation::from_entries(end)?, "G cadj end")?;
    b.finish(false)
}

/// H on order l.n+1: one reversed shifted block from 134...(n+1)2, then (1,2)
/// and n shifted blocks; runs to (n+1)1...n with the same flip multiset as G.
pub fn build_h_cadj(l: &RotationHamiltonPath) -> Result<TranspositionSequence> {
    if l.n % 2 != 0 {
        return Err(Error::domain("build_h_cadj needs even input order"));
    }
    let m = l.n + 1;
    let block = shift_flips(&l.flips, 1, m + 1);
    let rev_block = shift_flips(&reversed_path(l), 1, m + 1);
    let mut start: Vec<u32> = vec![1];
    start.extend(3..=m);
    start.push(2);
    let mut b = PathBuilder::new(Permutation::from_entries(start)?);
    b.extend(rev_block.iter().copied())?;
    b.expect(&Permutation::identity(m), "H cadj after reversed block")?;
    for _ in 0..l.n {
        b.push(idx(1, 2))?;
        b.extend(block.iter().copied())?;
    }
    let mut end: Vec<u32> = vec![m];
    end.extend(1..m);
    b.expect(&Permutation::from_entries(end)?, "H cadj end")?;
    b.finish(false)
}

/// Rotate the entries of p one coordinate to the right.
fn rotate_right(p: &Permutation) -> Permutation {
    let n = p.n();
    let mut e = Vec::with_capacity(n as usize);
    e.push(p.entry(n));
    e.extend((1..n).map(|i| p.entry(i)));
    Permutation::from_entries(e).unwrap()
}

/// Balanced cyclically adjacent Gray code for even n: blocks sigma^k(G) and
/// sigma^k(H) alternating (sigma shifts all coordinates by one), joined by
/// the shifted images of (1, n).
pub fn balanced_cadj(n: u32) -> Result<BalancedCadjCode> {
    if n % 2 != 0 || n == 0 {
        return Err(Error::domain("balanced_cadj needs even n >= 2"));
    }
    if n == 2 {
        let code =
            TranspositionSequence::new(Permutation::identity(2), vec![idx(1, 2)], true)?;
        return Ok(BalancedCadjCode { n, code });
    }
    let l = hamilton_path_even(n - 2)?;
    let g = build_g_cadj(&l)?;
    let h = build_h_cadj(&l)?;
    let lift = |p: &Permutation| p.append_max();

    let mut b = PathBuilder::new(Permutation::identity(n));
    for k in 0..n {
        let (base, flips) = if k % 2 == 0 {
            (&g, shift_flips(g.flips(), k, n))
        } else {
            (&h, shift_flips(h.flips(), k, n))
        };
        let mut expected = lift(base.start());
        let mut expected_end = lift(&base.end()?);
        for _ in 0..k {
            expected = rotate_right(&expected);
            expected_end = rotate_right(&expected_end);
        }
        b.expect(&expected, &format!("cadj block k={k} start"))?;
        b.extend(flips)?;
        b.expect(&expected_end, &format!("cadj block k={k} end"))?;
        if k < n - 1 {
            let conn = shift_flips(&[idx(1, n)], k, n)[0];
            b.push(conn)?;
        }
    }
    let code = b.finish(true)?;
    let closing = code.closing_flip()?;
    if closing != shift_flips(&[idx(1, n)], n - 1, n)[0] {
        return Err(Error::construction("cadj closing flip mismatch"));
    }
    Ok(BalancedCadjCode { n, code })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::factorial;
    use std::collections::HashSet;

    #[test]
    fn hamilton_path_n2() {
        let p = hamilton_path_even(2).unwrap();
        assert_eq!(p.flips.len(), 1);
        assert_eq!(p.flips[0].pair(), (1, 2));
    }

    #[test]
    fn hamilton_path_n4() {
        let p = hamilton_path_even(4).unwrap();
        assert_eq!(p.flips.len(), 23);
        validate_path(&p).unwrap();
    }

    #[test]
    fn hamilton_path_n6() {
        let p = hamilton_path_even(6).unwrap();
        assert_eq!(p.flips.len(), 719);
        validate_path(&p).unwrap();
    }

    #[test]
    fn balanced_cadj_n6() {
        assert_balanced_cadj(6);
    }

    #[test]
    fn hamilton_path_odd_rejected() {
        assert!(hamilton_path_even(3).is_err());
    }

    #[test]
    fn reversed_path_n4() {
        let p = hamilton_path_even(4).unwrap();
        let seq =
            TranspositionSequence::new(Permutation::identity(4), reversed_path(&p), false)
                .unwrap();
        assert_eq!(seq.end().unwrap().entries(), &[4, 1, 2, 3]);
    }

    #[test]
    fn g_cadj_n2_figure() {
        let l = hamilton_path_even(2).unwrap();
        let g = build_g_cadj(&l).unwrap();
        let flips: Vec<(u32, u32)> = g.flips().iter().map(|t| t.pair()).collect();
        assert_eq!(flips, vec![(2, 3), (1, 2), (2, 3), (1, 2), (2, 3)]);
        assert_eq!(g.end().unwrap().entries(), &[2, 1, 3]);
        let distinct: HashSet<_> = g.replay().unwrap().into_iter().collect();
        assert_eq!(distinct.len(), 6);
    }

    #[test]
    fn h_cadj_n2() {
        let l = hamilton_path_even(2).unwrap();
        let h = build_h_cadj(&l).unwrap();
        assert_eq!(h.start().entries(), &[1, 3, 2]);
        assert_eq!(h.end().unwrap().entries(), &[3, 1, 2]);
        let g = build_g_cadj(&l).unwrap();
        assert_eq!(
            h.transition_counts(false).unwrap(),
            g.transition_counts(false).unwrap()
        );
    }

    #[test]
    fn g_h_cadj_n4() {
        let l = hamilton_path_even(4).unwrap();
        let g = build_g_cadj(&l).unwrap();
        assert_eq!(g.flips().len(), 119);
        assert_eq!(g.end().unwrap().entries(), &[2, 1, 3, 4, 5]);
        assert!(g.flips().iter().all(|t| t.is_adjacent()));
        let h = build_h_cadj(&l).unwrap();
        assert_eq!(h.end().unwrap().entries(), &[5, 1, 2, 3, 4]);
        assert_eq!(
            h.transition_counts(false).unwrap(),
            g.transition_counts(false).unwrap()
        );
    }

    fn assert_balanced_cadj(n: u32) {
        let c = balanced_cadj(n).unwrap();
        let visited = c.code.replay().unwrap();
        let distinct: HashSet<_> = visited.iter().collect();
        assert_eq!(distinct.len() as u64, factorial(n));
        let counts = c.code.transition_counts(true).unwrap();
        if n == 2 {
            assert_eq!(counts.get(1, 2), 2);
            return;
        }
        for i in 1..n {
            assert_eq!(counts.get(i, i + 1), factorial(n - 1), "({i},{})", i + 1);
        }
        assert_eq!(counts.get(1, n), factorial(n - 1), "(1,{n})");
        assert_eq!(counts.total(), factorial(n) as u64);
    }

    #[test]
    fn balanced_cadj_n2() {
        assert_balanced_cadj(2);
    }

    #[test]
    fn balanced_cadj_n4_blocks() {
        assert_balanced_cadj(4);
        let c = balanced_cadj(4).unwrap();
        let visited = c.code.replay().unwrap();
        // Block structure G, s(H), s^2(G), s^3(H): junctions at 6, 12, 18.
        assert_eq!(visited[5].entries(), &[2, 1, 3, 4]);
        assert_eq!(visited[6].entries(), &[4, 1, 3, 2]);
        assert_eq!(visited[11].entries(), &[4, 3, 1, 2]);
        assert_eq!(visited[12].entries(), &[3, 4, 1, 2]);
        assert_eq!(visited[17].entries(), &[3, 4, 2, 1]);
        assert_eq!(visited[18].entries(), &[3, 2, 4, 1]);
        assert_eq!(c.code.closing_flip().unwrap().pair(), (3, 4));
    }

    #[test]
    fn cache_roundtrip() {
        let line = "hampath n=4 flips=1 2,2 3,3 4";
        let flips = parse_cache_line(line, 4).unwrap();
        assert_eq!(flips.len(), 3);
        assert_eq!(flips[2].pair(), (3, 4));
        assert!(parse_cache_line(line, 6).is_none());
    }
}
