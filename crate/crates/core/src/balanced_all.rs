//! Balanced Gray codes for S_n under all transpositions (value semantics),
//! for both parities of n, plus the rainbow lifting that turns a balanced
//! code on S_m into a cycle in S_n using every transposition 2(m-2)! times.
//!
//! The assemblies are transcriptions of explicit segment diagrams: each
//! segment is a mapped copy of a smaller code (flip lists mapped through a
//! value permutation), segments are joined by single connector flips, and the
//! expected start permutation of every segment is recomputed and asserted, so
//! any transcription error fails immediately instead of producing a plausible
//! wrong code.

use crate::error::{Error, Result};
use crate::perm::{
    factorial, PathBuilder, Permutation, Transposition, TranspositionSequence,
};

/// Cyclic balanced Gray code for S_n: every transposition appears exactly
/// 2(n-2)! times including the closing flip.
#[derive(Clone, Debug)]
pub struct BalancedAllCode {
    pub n: u32,
    pub code: TranspositionSequence,
    pub closing: Transposition,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    /// Ends at the left rotation 23...n1.
    LeftRotation,
    /// Ends at the right rotation n12...(n-1).
    RightRotation,
}

/// Non-cyclic Gray code of all of S_n (n even) from the identity to a
/// one-step rotation, in which every wide transposition appears exactly
/// 2(n-2)! times.
#[derive(Clone, Debug)]
pub struct AlmostBalancedCode {
    pub n: u32,
    pub code: TranspositionSequence,
    pub direction: Direction,
}

fn val(a: u32, b: u32) -> Transposition {
    Transposition::on_values(a, b)
}

/// Identity of order n with the values at 1-based positions i and j swapped.
fn identity_swapped(n: u32, i: u32, j: u32) -> Permutation {
    let mut e: Vec<u32> = (1..=n).collect();
    e.swap(i as usize - 1, j as usize - 1);
    Permutation::from_entries(e).unwrap()
}

/// The value cycle (from from+1 ... to) of order n, i.e. from -> from+1 -> ... -> to -> from.
fn value_cycle(n: u32, from: u32, to: u32) -> Permutation {
    let cyc: Vec<u32> = (from..=to).collect();
    Permutation::from_cycle(n, &cyc).unwrap()
}

fn map_flips(sigma: &Permutation, flips: &[Transposition]) -> Vec<Transposition> {
    flips.iter().map(|&t| sigma.map_transposition(t)).collect()
}

/// The explicit 5-flip balanced cycle on S_3: 123 -> ... -> 132, closing (2,3).
pub fn base_code_n3() -> BalancedAllCode {
    let flips = vec![val(1, 3), val(1, 2), val(2, 3), val(1, 3), val(1, 2)];
    let code = TranspositionSequence::new(Permutation::identity(3), flips, true).unwrap();
    let closing = code.closing_flip().unwrap();
    BalancedAllCode { n: 3, code, closing }
}

/// H: the flip list of g mapped through sigma^2 (sigma = (1...n)), restarted
/// at the identity; runs 12...n -> 21...(n-1)n and is balanced except for a
/// single missing (1,2).
pub fn derive_h_from_g(g: &BalancedAllCode) -> Result<TranspositionSequence> {
    let n = g.n;
    if n == 1 {
        return TranspositionSequence::new(Permutation::identity(1), vec![], false);
    }
    if !g.code.start().is_identity() || g.code.end()? != identity_swapped(n, n - 1, n) {
        return Err(Error::construction("input code has unexpected endpoints"));
    }
    let sigma2 = value_cycle(n, 1, n).power(2);
    let flips = map_flips(&sigma2, g.code.flips());
    let h = TranspositionSequence::new(Permutation::identity(n), flips, false)?;
    if h.end()? != identity_swapped(n, 1, 2) {
        return Err(Error::construction("derived H has unexpected end"));
    }
    Ok(h)
}

/// A path segment: a flip list together with the exact permutations it must
/// start and end at when spliced into an assembly.
struct Segment {
    flips: Vec<Transposition>,
    start: Permutation,
    end: Permutation,
}

impl Segment {
    fn new(flips: Vec<Transposition>, start: Permutation, end: Permutation) -> Segment {
        Segment { flips, start, end }
    }

    /// Pointwise image under a value permutation.
    fn mapped(&self, sigma: &Permutation) -> Segment {
        Segment {
            flips: map_flips(sigma, &self.flips),
            start: sigma.act_on_values(&self.start).unwrap(),
            end: sigma.act_on_values(&self.end).unwrap(),
        }
    }

    fn reversed(&self) -> Segment {
        let mut flips = self.flips.clone();
        flips.reverse();
        Segment {
            flips,
            start: self.end.clone(),
            end: self.start.clone(),
        }
    }
}

fn push_segment(b: &mut PathBuilder, seg: &Segment, what: &str) -> Result<()> {
    b.expect(&seg.start, what)?;
    b.extend(seg.flips.iter().copied())?;
    b.expect(&seg.end, what)
}

/// g as a path segment lifted into S_m (m >= g.n) by fixing the values
/// g.n+1..m at the final positions.
fn lifted_path(code: &TranspositionSequence, m: u32) -> Result<Segment> {
    let mut start = code.start().clone();
    let mut end = code.end()?;
    for _ in code.start().n()..m {
        start = start.append_max();
        end = end.append_max();
    }
    Ok(Segment::new(code.flips().to_vec(), start, end))
}

/// Almost balanced code L for order g.n+1 (even), 12...m -> 23...m1.
pub fn build_l(g: &BalancedAllCode) -> Result<AlmostBalancedCode> {
    if g.n % 2 == 0 {
        return Err(Error::construction("build_l needs a code of odd order"));
    }
    let n = g.n;
    let m = n + 1;
    let g_seg = lifted_path(&g.code, m)?;
    let h_seg = lifted_path(&derive_h_from_g(g)?, m)?;

    let mut b = PathBuilder::new(Permutation::identity(m));
    // Blocks indexed by the (constant) final entry k, from m down to 1:
    // omega_k(H) for even k, reversed for odd k (3 <= k <= m); omega_2(G);
    // reversed omega_1(G); connector (k-1, k) between blocks k and k-1.
    for k in (1..=m).rev() {
        let omega_k = value_cycle(m, k, m);
        let seg = if k >= 3 {
            let s = h_seg.mapped(&omega_k);
            if k % 2 == 0 {
                s
            } else {
                s.reversed()
            }
        } else if k == 2 {
            g_seg.mapped(&omega_k)
        } else {
            g_seg.mapped(&omega_k).reversed()
        };
        push_segment(&mut b, &seg, &format!("L block k={k}"))?;
        if k > 1 {
            b.push(val(k - 1, k))?;
        }
    }
    let rot = value_cycle(m, 1, m);
    b.expect(&rot.act_on_values(&Permutation::identity(m))?, "L end")?;
    Ok(AlmostBalancedCode {
        n: m,
        code: b.finish(false)?,
        direction: Direction::LeftRotation,
    })
}

/// Almost balanced code R for order g.n+1 (even), 12...m -> m12...(m-1),
/// with the same flip multiset as L.
pub fn build_r(g: &BalancedAllCode) -> Result<AlmostBalancedCode> {
    if g.n % 2 == 0 {
        return Err(Error::construction("build_r needs a code of odd order"));
    }
    let n = g.n;
    let m = n + 1;
    // Gbar/Hbar: g and H shifted up by one value, fixing value 1 at position 1.
    let shift_up = |code: &TranspositionSequence| -> Result<Segment> {
        let up = |p: &Permutation| {
            let mut e = vec![1u32];
            e.extend(p.entries().iter().map(|&v| v + 1));
            Permutation::from_entries(e).unwrap()
        };
        let flips = code
            .flips()
            .iter()
            .map(|&t| val(t.a() + 1, t.b() + 1))
            .collect();
        Ok(Segment::new(flips, up(code.start()), up(&code.end()?)))
    };
    let gbar = shift_up(&g.code)?;
    let hbar = shift_up(&derive_h_from_g(g)?)?;

    let mut b = PathBuilder::new(Permutation::identity(m));
    // Blocks indexed by the (constant) first entry k = 1..m: Gbar; reversed
    // tau_2(Gbar); tau_k(Hbar) for odd k >= 3, reversed for even k >= 4;
    // tau_k = (k k-1 ... 1) on values; connector (k, k+1) after block k.
    for k in 1..=m {
        let tau_k = {
            let cyc: Vec<u32> = (1..=k).rev().collect();
            Permutation::from_cycle(m, &cyc).unwrap()
        };
        let seg = if k == 1 {
            gbar.mapped(&tau_k)
        } else if k == 2 {
            gbar.mapped(&tau_k).reversed()
        } else {
            let s = hbar.mapped(&tau_k);
            if k % 2 == 1 {
                s
            } else {
                s.reversed()
            }
        };
        push_segment(&mut b, &seg, &format!("R block k={k}"))?;
        if k < m {
            b.push(val(k, k + 1))?;
        }
    }
    let mut end = vec![m];
    end.extend(1..m);
    b.expect(&Permutation::from_entries(end)?, "R end")?;
    Ok(AlmostBalancedCode {
        n: m,
        code: b.finish(false)?,
        direction: Direction::RightRotation,
    })
}

/// Balanced cycle on S_{l.n+1} (odd) from an L-code: blocks sigma^k(L) for
/// k = 0..l.n, sigma = (1...l.n+1) on values, connectors sigma^k((1, l.n+1)).
pub fn balanced_from_l(l: &AlmostBalancedCode) -> Result<BalancedAllCode> {
    if l.direction != Direction::LeftRotation {
        return Err(Error::construction("balanced_from_l needs an L-code"));
    }
    let q = l.n;
    let m = q + 1;
    let l_seg = lifted_path(&l.code, m)?;
    let sigma = value_cycle(m, 1, m);

    let mut b = PathBuilder::new(Permutation::identity(m));
    let mut power = Permutation::identity(m);
    for k in 0..=q {
        push_segment(&mut b, &l_seg.mapped(&power), &format!("block sigma^{k}(L)"))?;
        if k < q {
            b.push(power.map_transposition(val(1, m)))?;
        }
        power = sigma.act_on_values(&power)?;
    }
    b.expect(&identity_swapped(m, m - 1, m), "balanced odd end")?;
    let code = b.finish(true)?;
    let closing = code.closing_flip()?;
    if closing.pair() != (m - 1, m) {
        return Err(Error::construction("odd closing flip is not (n-1, n)"));
    }
    Ok(BalancedAllCode { n: m, code, closing })
}

/// The second full Gray code H2 of odd order n: reversed L, then reversed
/// sigma^k(R) for k = 1..n-1, L and R of order n-1; 23...(n-1)1n -> n12...(n-1).
pub fn second_code_h(g: &BalancedAllCode) -> Result<TranspositionSequence> {
    let n = g.n;
    if n % 2 == 0 || n < 3 {
        return Err(Error::construction("second_code_h needs odd order >= 3"));
    }
    let base = balanced(n - 2)?;
    let l_seg = lifted_path(&build_l(&base)?.code, n)?;
    let r_seg = lifted_path(&build_r(&base)?.code, n)?;
    let sigma = value_cycle(n, 1, n);

    let first = l_seg.reversed();
    let mut b = PathBuilder::new(first.start.clone());
    push_segment(&mut b, &first, "H2 reversed L")?;
    b.push(val(1, n))?;
    let mut power = sigma.clone();
    for k in 1..n {
        push_segment(
            &mut b,
            &r_seg.mapped(&power).reversed(),
            &format!("H2 reversed sigma^{k}(R)"),
        )?;
        if k < n - 1 {
            b.push(val(k, k + 1))?;
        }
        power = sigma.act_on_values(&power)?;
    }
    let mut end = vec![n];
    end.extend(1..n);
    b.expect(&Permutation::from_entries(end)?, "H2 end")?;
    b.finish(false)
}

/// Balanced cycle for even n: alternate sigma^k(H1) and sigma^k(H2) with
/// sigma = (n ... 2 1) on values, connectors sigma^k((n-1, n)), closing (1, n).
pub fn balanced_even(n: u32) -> Result<BalancedAllCode> {
    if n % 2 == 1 {
        return Err(Error::construction("balanced_even needs even n"));
    }
    if n == 2 {
        let code = TranspositionSequence::new(Permutation::identity(2), vec![val(1, 2)], true)?;
        let closing = code.closing_flip()?;
        return Ok(BalancedAllCode { n, code, closing });
    }
    let g1 = balanced(n - 1)?;
    let h1 = lifted_path(&g1.code, n)?;
    let h2 = lifted_path(&second_code_h(&g1)?, n)?;
    let sigma = {
        let cyc: Vec<u32> = (1..=n).rev().collect();
        Permutation::from_cycle(n, &cyc).unwrap()
    };

    let mut b = PathBuilder::new(Permutation::identity(n));
    let mut power = Permutation::identity(n);
    for k in 0..n {
        let seg = if k % 2 == 0 { &h1 } else { &h2 };
        push_segment(&mut b, &seg.mapped(&power), &format!("even block k={k}"))?;
        if k < n - 1 {
            b.push(power.map_transposition(val(n - 1, n)))?;
        }
        power = sigma.act_on_values(&power)?;
    }
    let mut end = vec![n];
    end.extend(2..n);
    end.push(1);
    b.expect(&Permutation::from_entries(end)?, "balanced even end")?;
    let code = b.finish(true)?;
    let closing = code.closing_flip()?;
    if closing.pair() != (1, n) {
        return Err(Error::construction("even closing flip is not (1, n)"));
    }
    Ok(BalancedAllCode { n, code, closing })
}

/// Balanced Gray code for S_n under all transpositions, any n >= 1.
pub fn balanced(n: u32) -> Result<BalancedAllCode> {
    if n == 0 {
        return Err(Error::domain("n must be >= 1"));
    }
    if n == 1 {
        let code = TranspositionSequence::new(Permutation::identity(1), vec![], false)?;
        return Ok(BalancedAllCode {
            n,
            code,
            closing: val(1, 2), // unused; order 1 has no transpositions
        });
    }
    if n == 2 {
        return balanced_even(2);
    }
    if n == 3 {
        return Ok(base_code_n3());
    }
    if n % 2 == 0 {
        balanced_even(n)
    } else {
        balanced_from_l(&build_l(&balanced(n - 2)?)?)
    }
}

/// Lifts a balanced cycle on S_m into a cyclic sequence on S_n (m <= n) in
/// which every transposition of S_n appears exactly 2(m-2)! times including
/// closing, by repeatedly pushing the new largest value right-to-left through
/// the first 2(m-2)! permutations of the current cycle.
pub fn lift_rainbow(base: &BalancedAllCode, n: u32) -> Result<TranspositionSequence> {
    if base.n > n {
        return Err(Error::domain(format!(
            "cannot lift a code of order {} down to {n}",
            base.n
        )));
    }
    let m_count = 2 * factorial(base.n - 2);
    let mut cur = base.code.clone();
    for k in base.n..n {
        cur = lift_one(&cur, k, m_count)?;
    }
    Ok(cur)
}

fn lift_one(cur: &TranspositionSequence, k: u32, m_count: u64) -> Result<TranspositionSequence> {
    let visited = cur.replay()?;
    let mut ts: Vec<Transposition> = cur.flips().to_vec();
    ts.push(cur.closing_flip()?);
    let n_count = ts.len() as u64;
    if m_count > n_count || m_count % 2 != 0 {
        return Err(Error::construction("lifting stage with too short a cycle"));
    }

    let start = visited[0].append_max();
    let mut b = PathBuilder::new(start.clone());
    for i in 0..m_count as usize {
        let pi = &visited[i];
        // Zigzag: push value k+1 from the last position to the front (odd
        // stages walk it back out in reverse).
        let mut zig: Vec<Transposition> =
            (1..=k).rev().map(|j| val(pi.entry(j), k + 1)).collect();
        if i % 2 == 1 {
            zig.reverse();
        }
        b.extend(zig)?;
        b.push(ts[i])?;
    }
    for &t in &ts[m_count as usize..ts.len() - 1] {
        b.push(t)?;
    }
    // The dropped last flip is the new closing transposition.
    let closed = b.current().apply(*ts.last().unwrap())?;
    if closed != start {
        return Err(Error::construction("lifted cycle does not close"));
    }
    b.finish(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::binomial2;
    use std::collections::HashSet;

    fn assert_full_balanced(c: &BalancedAllCode) {
        let n = c.n;
        let visited = c.code.replay().unwrap();
        let distinct: HashSet<_> = visited.iter().collect();
        assert_eq!(distinct.len() as u64, factorial(n), "n={n} distinctness");
        let counts = c.code.transition_counts(true).unwrap();
        if n >= 2 {
            let expect = 2 * factorial(n - 2);
            for a in 1..=n {
                for b in (a + 1)..=n {
                    assert_eq!(counts.get(a, b), expect, "n={n} count ({a},{b})");
                }
            }
        }
    }

    #[test]
    fn base_code_replay() {
        let c = base_code_n3();
        let visited = c.code.replay().unwrap();
        let seqs: Vec<Vec<u32>> = visited.iter().map(|p| p.entries().to_vec()).collect();
        assert_eq!(
            seqs,
            vec![
                vec![1, 2, 3],
                vec![3, 2, 1],
                vec![3, 1, 2],
                vec![2, 1, 3],
                vec![2, 3, 1],
                vec![1, 3, 2],
            ]
        );
        assert_eq!(c.closing.pair(), (2, 3));
        assert_full_balanced(&c);
    }

    #[test]
    fn h_from_g_n3() {
        let h = derive_h_from_g(&base_code_n3()).unwrap();
        let flips: Vec<(u32, u32)> = h.flips().iter().map(|t| t.pair()).collect();
        assert_eq!(flips, vec![(2, 3), (1, 3), (1, 2), (2, 3), (1, 3)]);
        assert_eq!(h.end().unwrap().entries(), &[2, 1, 3]);
        let d = h.deviations().unwrap();
        assert_eq!(d.plus.get(1, 2), 1);
        assert_eq!(d.plus.total(), 1);
        assert!(d.minus.is_empty());
    }

    #[test]
    fn build_l_n4() {
        let l = build_l(&base_code_n3()).unwrap();
        assert_eq!(l.code.flips().len(), 23);
        let visited = l.code.replay().unwrap();
        let distinct: HashSet<_> = visited.iter().collect();
        assert_eq!(distinct.len(), 24);
        assert_eq!(l.code.end().unwrap().entries(), &[2, 3, 4, 1]);
        let counts = l.code.transition_counts(false).unwrap();
        for (a, b) in [(1, 3), (1, 4), (2, 4)] {
            assert_eq!(counts.get(a, b), 4, "wide ({a},{b})");
        }
    }

    #[test]
    fn build_r_n4() {
        let g = base_code_n3();
        let r = build_r(&g).unwrap();
        let visited = r.code.replay().unwrap();
        let distinct: HashSet<_> = visited.iter().collect();
        assert_eq!(distinct.len(), 24);
        assert_eq!(r.code.end().unwrap().entries(), &[4, 1, 2, 3]);
        let l = build_l(&g).unwrap();
        assert_eq!(
            r.code.transition_counts(false).unwrap(),
            l.code.transition_counts(false).unwrap()
        );
    }

    #[test]
    fn balanced_odd_n5() {
        let c = balanced(5).unwrap();
        assert_full_balanced(&c);
        assert_eq!(c.closing.pair(), (4, 5));
        assert_eq!(c.code.end().unwrap().entries(), &[1, 2, 3, 5, 4]);
    }

    #[test]
    fn second_code_h_n3() {
        let h = second_code_h(&balanced(3).unwrap()).unwrap();
        assert_eq!(h.start().entries(), &[2, 1, 3]);
        assert_eq!(h.end().unwrap().entries(), &[3, 1, 2]);
        let flips: Vec<(u32, u32)> = h.flips().iter().map(|t| t.pair()).collect();
        assert_eq!(flips, vec![(1, 2), (1, 3), (2, 3), (1, 2), (1, 3)]);
        let g_counts = balanced(3).unwrap().code.transition_counts(false).unwrap();
        assert_eq!(h.transition_counts(false).unwrap(), g_counts);
    }

    #[test]
    fn balanced_even_n4_block_structure() {
        let c = balanced_even(4).unwrap();
        assert_full_balanced(&c);
        assert_eq!(c.closing.pair(), (1, 4));
        assert_eq!(c.code.end().unwrap().entries(), &[4, 2, 3, 1]);
        // Junction permutations of the four blocks H1, s(H2), s^2(H1), s^3(H2).
        let visited = c.code.replay().unwrap();
        let at = |i: usize| visited[i].entries().to_vec();
        assert_eq!(at(5), vec![1, 3, 2, 4]); // end of H1
        assert_eq!(at(6), vec![1, 4, 2, 3]); // start of s(H2)
        assert_eq!(at(11), vec![2, 4, 1, 3]); // end of s(H2)
        assert_eq!(at(12), vec![3, 4, 1, 2]); // start of s^2(H1)
    }

    #[test]
    fn balanced_small_orders() {
        for n in 1..=6 {
            assert_full_balanced(&balanced(n).unwrap());
        }
    }

    #[test]
    fn lift_rainbow_identity_stage() {
        let base = balanced(4).unwrap();
        let lifted = lift_rainbow(&base, 4).unwrap();
        assert_eq!(lifted.flips(), base.code.flips());
    }

    fn assert_lifted(m: u32, n: u32) {
        let lifted = lift_rainbow(&balanced(m).unwrap(), n).unwrap();
        let m_count = 2 * factorial(m - 2);
        let visited = lifted.replay().unwrap();
        let distinct: HashSet<_> = visited.iter().collect();
        assert_eq!(distinct.len() as u64, m_count * binomial2(n));
        let counts = lifted.transition_counts(true).unwrap();
        for a in 1..=n {
            for b in (a + 1)..=n {
                assert_eq!(counts.get(a, b), m_count, "({a},{b})");
            }
        }
    }

    #[test]
    fn lift_rainbow_3_to_4() {
        assert_lifted(3, 4);
    }

    #[test]
    fn lift_rainbow_4_to_6() {
        assert_lifted(4, 6);
    }
}
