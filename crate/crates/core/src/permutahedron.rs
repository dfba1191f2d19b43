//! 2- and 3-rainbow cycles in the permutahedron: cyclic Gray codes under
//! adjacent index transpositions where each of the n-1 transpositions is used
//! exactly r times. Both are built inductively from small explicit cycles;
//! the step removes one (1,2) flip from the smaller cycle and wraps the
//! remaining path in a handful of flips touching the new coordinates.

use crate::error::{Error, Result};
use crate::perm::{Permutation, Transposition, TranspositionSequence};

/// Cyclic code in which every adjacent index transposition of S_n appears
/// exactly r times (r = 2 or 3), counting the closing flip.
#[derive(Clone, Debug)]
pub struct PermutahedronRainbow {
    pub n: u32,
    pub r: u32,
    pub code: TranspositionSequence,
}

fn idx(a: u32, b: u32) -> Transposition {
    Transposition::on_indices(a, b)
}

/// Removes the first occurrence of (1,2) from the loop and rotates the list
/// to start right after it. Index flips are start-agnostic, so the result is
/// a path that swaps the first two coordinates of whatever it is applied to.
fn open_at_12(loop_flips: &[Transposition]) -> Result<Vec<Transposition>> {
    let at = loop_flips
        .iter()
        .position(|t| t.pair() == (1, 2))
        .ok_or_else(|| Error::construction("cycle has no (1,2) flip"))?;
    let mut path = loop_flips[at + 1..].to_vec();
    path.extend_from_slice(&loop_flips[..at]);
    Ok(path)
}

fn seal(n: u32, r: u32, mut loop_flips: Vec<Transposition>) -> Result<PermutahedronRainbow> {
    let last = loop_flips.pop().expect("nonempty loop");
    let code = TranspositionSequence::new(Permutation::identity(n), loop_flips, true)?;
    if code.closing_flip()? != last {
        return Err(Error::construction("rainbow cycle does not close as built"));
    }
    let counts = code.transition_counts(true)?; // also checks distinctness
    for i in 1..n {
        if counts.get(i, i + 1) != r as u64 {
            return Err(Error::construction(format!(
                "transposition ({i},{}) used {} times, want {r}",
                i + 1,
                counts.get(i, i + 1)
            )));
        }
    }
    if counts.total() != (r * (n - 1)) as u64 {
        return Err(Error::construction("unexpected flips in rainbow cycle"));
    }
    Ok(PermutahedronRainbow { n, r, code })
}

/// 2-rainbow cycle in the permutahedron of order n >= 5.
pub fn rainbow2(n: u32) -> Result<PermutahedronRainbow> {
    if n < 5 {
        return Err(Error::domain("rainbow2 needs n >= 5"));
    }
    let base: Vec<(u32, u32)> = vec![
        (1, 2),
        (2, 3),
        (4, 5),
        (2, 3),
        (3, 4),
        (1, 2),
        (3, 4),
        (4, 5),
    ];
    let mut loop_flips: Vec<Transposition> = base.into_iter().map(|(a, b)| idx(a, b)).collect();
    for m in 5..n {
        // Step m -> m+1: open the cycle at a (1,2) flip, then wrap with
        // (m, m+1) on both sides and a final (1,2) to restore the identity.
        let path = open_at_12(&loop_flips)?;
        let mut next = vec![idx(m, m + 1)];
        next.extend(path);
        next.push(idx(m, m + 1));
        next.push(idx(1, 2));
        loop_flips = next;
    }
    seal(n, 2, loop_flips)
}

/// 3-rainbow cycle in the permutahedron of odd order n >= 3.
pub fn rainbow3(n: u32) -> Result<PermutahedronRainbow> {
    if n % 2 == 0 || n < 3 {
        return Err(Error::domain("rainbow3 needs odd n >= 3"));
    }
    let mut loop_flips: Vec<Transposition> = [(1, 2), (2, 3)]
        .into_iter()
        .cycle()
        .take(6)
        .map(|(a, b)| idx(a, b))
        .collect();
    for m in (3..n).step_by(2) {
        // Step m -> m+2: the opened path runs on the first m coordinates;
        // seven boundary flips route the two new values in and out.
        let path = open_at_12(&loop_flips)?;
        let mut next = vec![idx(m + 1, m + 2), idx(m, m + 1)];
        next.extend(path);
        next.extend([
            idx(m + 1, m + 2),
            idx(1, 2),
            idx(m, m + 1),
            idx(m + 1, m + 2),
            idx(m, m + 1),
        ]);
        loop_flips = next;
    }
    seal(n, 3, loop_flips)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn rainbow2_n5_visits() {
        let r = rainbow2(5).unwrap();
        let visited = r.code.replay().unwrap();
        let want: Vec<Vec<u32>> = vec![
            vec![1, 2, 3, 4, 5],
            vec![2, 1, 3, 4, 5],
            vec![2, 3, 1, 4, 5],
            vec![2, 3, 1, 5, 4],
            vec![2, 1, 3, 5, 4],
            vec![2, 1, 5, 3, 4],
            vec![1, 2, 5, 3, 4],
            vec![1, 2, 3, 5, 4],
        ];
        let got: Vec<Vec<u32>> = visited.iter().map(|p| p.entries().to_vec()).collect();
        assert_eq!(got, want);
        assert_eq!(r.code.closing_flip().unwrap().pair(), (4, 5));
    }

    #[test]
    fn rainbow2_counts() {
        for n in 5..=10 {
            let r = rainbow2(n).unwrap();
            assert_eq!(r.code.flips().len() as u32 + 1, 2 * (n - 1));
            let visited = r.code.replay().unwrap();
            let distinct: HashSet<_> = visited.iter().collect();
            assert_eq!(distinct.len(), visited.len());
            assert!(r.code.flips().iter().all(|t| t.is_adjacent()));
        }
    }

    #[test]
    fn rainbow3_n3_hamilton() {
        let r = rainbow3(3).unwrap();
        let visited = r.code.replay().unwrap();
        let distinct: HashSet<_> = visited.iter().collect();
        assert_eq!(distinct.len(), 6);
    }

    #[test]
    fn rainbow3_counts() {
        for n in [3u32, 5, 7, 9] {
            let r = rainbow3(n).unwrap();
            assert_eq!(r.code.flips().len() as u32 + 1, 3 * (n - 1));
            assert!(r.code.flips().iter().all(|t| t.is_adjacent()));
        }
    }

    #[test]
    fn domain_errors() {
        assert!(rainbow2(4).is_err());
        assert!(rainbow3(4).is_err());
        assert!(rainbow3(1).is_err());
    }
}
