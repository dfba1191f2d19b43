//! Permutations, transpositions under both application semantics, Gray-code
//! sequences, and transition-count accounting.
//!
//! Values and positions are both 1-based. A transposition carries a semantics
//! tag: `OnValues` swaps the two values wherever they sit, `OnIndices` swaps
//! the entries at the two positions. A [`TranspositionSequence`] must be
//! semantics-homogeneous; mixing the two is a construction-time error.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Semantics {
    OnValues,
    OnIndices,
}

/// A permutation of 1..n stored as the linear array sigma_1 ... sigma_n.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<u32>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

impl Permutation {
    pub fn identity(n: u32) -> Self {
        Permutation {
            entries: (1..=n).collect(),
        }
    }

    pub fn from_entries(entries: Vec<u32>) -> Result<Self> {
        let n = entries.len() as u32;
        let mut seen = vec![false; n as usize];
        for &e in &entries {
            if e == 0 || e > n {
                return Err(Error::domain(format!("entry {e} out of range 1..{n}")));
            }
            if seen[(e - 1) as usize] {
                return Err(Error::domain(format!("entry {e} repeated")));
            }
            seen[(e - 1) as usize] = true;
        }
        Ok(Permutation { entries })
    }

    /// The permutation of order n given in cycle notation: cycle[i] maps to
    /// cycle[i+1] (wrapping); all other points are fixed.
    pub fn from_cycle(n: u32, cycle: &[u32]) -> Result<Self> {
        let mut entries: Vec<u32> = (1..=n).collect();
        for (i, &v) in cycle.iter().enumerate() {
            if v == 0 || v > n {
                return Err(Error::domain(format!("cycle entry {v} out of range 1..{n}")));
            }
            let next = cycle[(i + 1) % cycle.len()];
            entries[(v - 1) as usize] = next;
        }
        Permutation::from_entries(entries)
    }

    pub fn n(&self) -> u32 {
        self.entries.len() as u32
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Entry at 1-based position i.
    pub fn entry(&self, i: u32) -> u32 {
        self.entries[(i - 1) as usize]
    }

    /// 1-based position holding value v.
    pub fn position_of(&self, v: u32) -> u32 {
        self.entries.iter().position(|&e| e == v).unwrap() as u32 + 1
    }

    /// The image of point v under this permutation read as a function.
    pub fn image(&self, v: u32) -> u32 {
        self.entries[(v - 1) as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, &e)| e == i as u32 + 1)
    }

    pub fn apply(&self, t: Transposition) -> Result<Permutation> {
        let n = self.n();
        if t.a() == 0 || t.b() > n {
            return Err(Error::domain(format!(
                "transposition ({},{}) out of range for n={n}",
                t.a(),
                t.b()
            )));
        }
        let mut entries = self.entries.clone();
        match t.semantics {
            Semantics::OnValues => {
                let pa = self.position_of(t.a()) as usize - 1;
                let pb = self.position_of(t.b()) as usize - 1;
                entries.swap(pa, pb);
            }
            Semantics::OnIndices => {
                entries.swap(t.a() as usize - 1, t.b() as usize - 1);
            }
        }
        Ok(Permutation { entries })
    }

    /// sigma(pi): entry i of the result is sigma(pi_i).
    pub fn act_on_values(&self, pi: &Permutation) -> Result<Permutation> {
        if self.n() != pi.n() {
            return Err(Error::domain("order mismatch in act_on_values"));
        }
        Ok(Permutation {
            entries: pi.entries.iter().map(|&e| self.image(e)).collect(),
        })
    }

    /// phi(pi): entry i of the result is pi_{phi(i)}.
    pub fn act_on_indices(&self, pi: &Permutation) -> Result<Permutation> {
        if self.n() != pi.n() {
            return Err(Error::domain("order mismatch in act_on_indices"));
        }
        Ok(Permutation {
            entries: self.entries.iter().map(|&i| pi.entry(i)).collect(),
        })
    }

    /// The k-th power of this permutation as a function (composition).
    pub fn power(&self, k: u32) -> Permutation {
        let mut acc = Permutation::identity(self.n());
        for _ in 0..k {
            acc = self.act_on_values(&acc).unwrap();
        }
        acc
    }

    /// Maps a transposition through this permutation: {a,b} -> {sigma(a), sigma(b)},
    /// preserving the semantics tag and canonical storage.
    pub fn map_transposition(&self, t: Transposition) -> Transposition {
        Transposition::new(self.image(t.a()), self.image(t.b()), t.semantics).unwrap()
    }

    /// Append the value n+1 at the last position, embedding S_n into S_{n+1}.
    pub fn append_max(&self) -> Permutation {
        let mut entries = self.entries.clone();
        entries.push(self.n() + 1);
        Permutation { entries }
    }
}

/// An unordered pair {a,b}, a < b, with an application semantics tag.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transposition {
    a: u32,
    b: u32,
    pub semantics: Semantics,
}

impl fmt::Debug for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.semantics {
            Semantics::OnValues => "v",
            Semantics::OnIndices => "i",
        };
        write!(f, "({},{}){tag}", self.a, self.b)
    }
}

impl Transposition {
    pub fn new(a: u32, b: u32, semantics: Semantics) -> Result<Self> {
        if a == b || a == 0 || b == 0 {
            return Err(Error::domain(format!("invalid transposition ({a},{b})")));
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        Ok(Transposition { a, b, semantics })
    }

    pub fn on_values(a: u32, b: u32) -> Self {
        Transposition::new(a, b, Semantics::OnValues).unwrap()
    }

    pub fn on_indices(a: u32, b: u32) -> Self {
        Transposition::new(a, b, Semantics::OnIndices).unwrap()
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

    pub fn is_adjacent(&self) -> bool {
        self.b == self.a + 1
    }

    pub fn is_cyclically_adjacent(&self, n: u32) -> bool {
        self.is_adjacent() || (self.a == 1 && self.b == n)
    }

    pub fn is_wide(&self) -> bool {
        !self.is_adjacent()
    }
}

/// Multiset of canonical transpositions keyed by the unordered pair.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TranspositionMultiset {
    counts: BTreeMap<(u32, u32), u64>,
}

impl TranspositionMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, t: Transposition) {
        *self.counts.entry(t.pair()).or_insert(0) += 1;
    }

    pub fn get(&self, a: u32, b: u32) -> u64 {
        let key = if a < b { (a, b) } else { (b, a) };
        self.counts.get(&key).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.counts.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &u64)> {
        self.counts.iter()
    }
}

/// Deficits (`plus` = c_+) and excesses (`minus` = c_-) of transition counts
/// against the uniform baseline 2(n-2)!.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeviationPair {
    pub plus: TranspositionMultiset,
    pub minus: TranspositionMultiset,
    pub baseline: u64,
}

/// A (partial) Gray code: a start permutation plus an ordered list of flips,
/// all sharing one semantics. For cyclic sequences the closing flip is not
/// stored; it is derived from the last permutation and the start.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TranspositionSequence {
    start: Permutation,
    flips: Vec<Transposition>,
    cyclic: bool,
}

impl TranspositionSequence {
    pub fn new(start: Permutation, flips: Vec<Transposition>, cyclic: bool) -> Result<Self> {
        let n = start.n();
        let mut semantics = None;
        for t in &flips {
            if t.b() > n {
                return Err(Error::domain(format!(
                    "flip ({},{}) out of range for n={n}",
                    t.a(),
                    t.b()
                )));
            }
            match semantics {
                None => semantics = Some(t.semantics),
                Some(s) if s == t.semantics => {}
                Some(_) => {
                    return Err(Error::construction(
                        "mixed transposition semantics in one sequence",
                    ))
                }
            }
        }
        Ok(TranspositionSequence {
            start,
            flips,
            cyclic,
        })
    }

    pub fn n(&self) -> u32 {
        self.start.n()
    }

    pub fn start(&self) -> &Permutation {
        &self.start
    }

    pub fn flips(&self) -> &[Transposition] {
        &self.flips
    }

    pub fn cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn semantics(&self) -> Option<Semantics> {
        self.flips.first().map(|t| t.semantics)
    }

    /// All visited permutations, start first; length = flips + 1.
    pub fn replay(&self) -> Result<Vec<Permutation>> {
        let mut out = Vec::with_capacity(self.flips.len() + 1);
        out.push(self.start.clone());
        for &t in &self.flips {
            let next = out.last().unwrap().apply(t)?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn end(&self) -> Result<Permutation> {
        let mut cur = self.start.clone();
        for &t in &self.flips {
            cur = cur.apply(t)?;
        }
        Ok(cur)
    }

    /// The transposition mapping the last permutation back to the start.
    pub fn closing_flip(&self) -> Result<Transposition> {
        if !self.cyclic {
            return Err(Error::domain("closing flip of a non-cyclic sequence"));
        }
        let semantics = self
            .semantics()
            .ok_or_else(|| Error::domain("closing flip of an empty sequence"))?;
        let end = self.end()?;
        let diff: Vec<u32> = (1..=self.n())
            .filter(|&i| end.entry(i) != self.start.entry(i))
            .collect();
        if diff.len() != 2 {
            return Err(Error::verification(format!(
                "cycle does not close with one transposition ({} positions differ)",
                diff.len()
            )));
        }
        match semantics {
            Semantics::OnIndices => Transposition::new(diff[0], diff[1], semantics),
            Semantics::OnValues => {
                Transposition::new(end.entry(diff[0]), end.entry(diff[1]), semantics)
            }
        }
    }

    /// The same path walked backwards: starts at the old end, flips reversed.
    pub fn reversed(&self) -> Result<TranspositionSequence> {
        if self.cyclic {
            return Err(Error::domain("reversed() expects a non-cyclic sequence"));
        }
        let mut flips = self.flips.clone();
        flips.reverse();
        TranspositionSequence::new(self.end()?, flips, false)
    }

    /// Occurrence counts per canonical transposition, validating that the
    /// replayed permutations are pairwise distinct.
    pub fn transition_counts(&self, include_closing: bool) -> Result<TranspositionMultiset> {
        let visited = self.replay()?;
        let mut seen: HashSet<&Permutation> = HashSet::with_capacity(visited.len());
        for p in &visited {
            if !seen.insert(p) {
                return Err(Error::verification(format!("permutation {p:?} repeated")));
            }
        }
        let mut counts = TranspositionMultiset::new();
        for &t in &self.flips {
            counts.add(t);
        }
        if include_closing && self.cyclic {
            counts.add(self.closing_flip()?);
        }
        Ok(counts)
    }

    /// c_+/c_- against the 2(n-2)! baseline; requires a full Gray code of S_n.
    /// The closing flip is excluded from the counts by convention.
    pub fn deviations(&self) -> Result<DeviationPair> {
        let n = self.n();
        let counts = self.transition_counts(false)?;
        if self.flips.len() as u64 + 1 != factorial(n) {
            return Err(Error::verification(format!(
                "not a full Gray code of S_{n}: {} permutations visited",
                self.flips.len() + 1
            )));
        }
        let baseline = if n >= 2 { 2 * factorial(n - 2) } else { 0 };
        let mut plus = TranspositionMultiset::new();
        let mut minus = TranspositionMultiset::new();
        let semantics = self.semantics().unwrap_or(Semantics::OnValues);
        for a in 1..=n {
            for b in (a + 1)..=n {
                let c = counts.get(a, b);
                let t = Transposition::new(a, b, semantics).unwrap();
                if c < baseline {
                    for _ in 0..(baseline - c) {
                        plus.add(t);
                    }
                } else {
                    for _ in 0..(c - baseline) {
                        minus.add(t);
                    }
                }
            }
        }
        Ok(DeviationPair {
            plus,
            minus,
            baseline,
        })
    }
}

/// Incremental path assembly with junction assertions; used by the figure
/// recipes so a transcription error fails at the exact segment boundary.
pub struct PathBuilder {
    start: Permutation,
    current: Permutation,
    flips: Vec<Transposition>,
}

impl PathBuilder {
    pub fn new(start: Permutation) -> Self {
        PathBuilder {
            current: start.clone(),
            start,
            flips: Vec::new(),
        }
    }

    pub fn current(&self) -> &Permutation {
        &self.current
    }

    pub fn push(&mut self, t: Transposition) -> Result<()> {
        self.current = self.current.apply(t)?;
        self.flips.push(t);
        Ok(())
    }

    pub fn extend(&mut self, ts: impl IntoIterator<Item = Transposition>) -> Result<()> {
        for t in ts {
            self.push(t)?;
        }
        Ok(())
    }

    /// Assert the walk is currently at `expected`.
    pub fn expect(&self, expected: &Permutation, what: &str) -> Result<()> {
        if &self.current != expected {
            return Err(Error::construction(format!(
                "{what}: at {:?}, expected {:?}",
                self.current, expected
            )));
        }
        Ok(())
    }

    pub fn finish(self, cyclic: bool) -> Result<TranspositionSequence> {
        if cyclic && self.current == self.start && !self.flips.is_empty() {
            return Err(Error::construction(
                "cyclic sequence must stop one flip before the start",
            ));
        }
        TranspositionSequence::new(self.start, self.flips, cyclic)
    }
}

pub fn factorial(n: u32) -> u64 {
    (1..=n as u64).product()
}

pub fn binomial2(n: u32) -> u64 {
    n as u64 * (n as u64 - 1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn apply_on_values_worked_example() {
        let p = Permutation::from_entries(vec![2, 1, 3]).unwrap();
        let q = p.apply(Transposition::on_values(1, 3)).unwrap();
        assert_eq!(q.entries(), &[2, 3, 1]);
    }

    #[test]
    fn apply_on_indices_swaps_positions() {
        let p = Permutation::identity(5);
        let q = p.apply(Transposition::on_indices(1, 2)).unwrap();
        assert_eq!(q.entries(), &[2, 1, 3, 4, 5]);
    }

    #[test]
    fn apply_closing_flip_n3() {
        let p = Permutation::from_entries(vec![1, 3, 2]).unwrap();
        let q = p.apply(Transposition::on_values(2, 3)).unwrap();
        assert!(q.is_identity());
    }

    #[test]
    fn act_on_values_examples() {
        let id = Permutation::identity(3);
        assert_eq!(id.act_on_values(&id).unwrap(), id);
        let sigma = Permutation::from_cycle(3, &[1, 2, 3]).unwrap();
        assert_eq!(sigma.act_on_values(&id).unwrap().entries(), &[2, 3, 1]);
        let sigma4 = Permutation::from_cycle(4, &[1, 2, 3, 4]).unwrap();
        let pi = Permutation::from_entries(vec![2, 1, 3, 4]).unwrap();
        assert_eq!(sigma4.act_on_values(&pi).unwrap().entries(), &[3, 2, 4, 1]);
    }

    #[test]
    fn act_on_indices_examples() {
        let id = Permutation::identity(5);
        assert_eq!(id.act_on_indices(&id).unwrap(), id);
        let phi = Permutation::from_cycle(5, &[1, 2]).unwrap();
        assert_eq!(phi.act_on_indices(&id).unwrap().entries(), &[2, 1, 3, 4, 5]);
        let rot = Permutation::from_cycle(5, &[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(rot.act_on_indices(&id).unwrap().entries(), &[2, 3, 4, 5, 1]);
    }

    #[test]
    fn map_transposition_examples() {
        let id = Permutation::identity(6);
        let t = Transposition::on_values(2, 5);
        assert_eq!(id.map_transposition(t), t);
        let sigma = Permutation::from_cycle(4, &[1, 2, 3, 4]).unwrap();
        assert_eq!(
            sigma.map_transposition(Transposition::on_values(3, 4)).pair(),
            (1, 4)
        );
        let sigma5 = Permutation::from_cycle(5, &[1, 2, 3, 4, 5]).unwrap();
        let sigma5sq = sigma5.power(2);
        assert_eq!(
            sigma5sq
                .map_transposition(Transposition::on_values(4, 5))
                .pair(),
            (1, 2)
        );
    }

    fn base_code_n3_seq() -> TranspositionSequence {
        let flips = [(1, 3), (1, 2), (2, 3), (1, 3), (1, 2)]
            .iter()
            .map(|&(a, b)| Transposition::on_values(a, b))
            .collect();
        TranspositionSequence::new(Permutation::identity(3), flips, true).unwrap()
    }

    #[test]
    fn transition_counts_n3() {
        let s = base_code_n3_seq();
        let c = s.transition_counts(false).unwrap();
        assert_eq!(c.get(1, 3), 2);
        assert_eq!(c.get(1, 2), 2);
        assert_eq!(c.get(2, 3), 1);
        let c = s.transition_counts(true).unwrap();
        for (a, b) in [(1, 2), (1, 3), (2, 3)] {
            assert_eq!(c.get(a, b), 2);
        }
        assert_eq!(s.closing_flip().unwrap().pair(), (2, 3));
    }

    #[test]
    fn transition_counts_empty_code() {
        let s = TranspositionSequence::new(Permutation::identity(1), vec![], false).unwrap();
        assert!(s.transition_counts(false).unwrap().is_empty());
    }

    #[test]
    fn deviations_n3() {
        let d = base_code_n3_seq().deviations().unwrap();
        assert_eq!(d.baseline, 2);
        assert_eq!(d.plus.get(2, 3), 1);
        assert_eq!(d.plus.total(), 1);
        assert!(d.minus.is_empty());
        assert_eq!(d.minus.total() + 1, d.plus.total());
    }

    #[test]
    fn repeated_permutation_detected() {
        let flips = vec![
            Transposition::on_values(1, 2),
            Transposition::on_values(1, 2),
        ];
        let s = TranspositionSequence::new(Permutation::identity(3), flips, false).unwrap();
        assert!(matches!(
            s.transition_counts(false),
            Err(Error::Verification(_))
        ));
    }

    #[test]
    fn mixed_semantics_rejected() {
        let flips = vec![
            Transposition::on_values(1, 2),
            Transposition::on_indices(2, 3),
        ];
        assert!(TranspositionSequence::new(Permutation::identity(3), flips, false).is_err());
    }

    #[test]
    fn reversed_roundtrip() {
        let s = TranspositionSequence::new(
            Permutation::identity(4),
            vec![
                Transposition::on_values(1, 4),
                Transposition::on_values(2, 3),
            ],
            false,
        )
        .unwrap();
        let r = s.reversed().unwrap();
        assert_eq!(r.start(), &s.end().unwrap());
        assert_eq!(r.end().unwrap(), *s.start());
    }

    fn arb_perm(n: u32) -> impl Strategy<Value = Permutation> {
        Just(n).prop_perturb(move |n, mut rng| {
            let mut v: Vec<u32> = (1..=n).collect();
            for i in (1..v.len()).rev() {
                let j = rng.random_range(0..=i);
                v.swap(i, j);
            }
            Permutation::from_entries(v).unwrap()
        })
    }

    proptest! {
        #[test]
        fn transposition_involution(a in 1u32..=8, b in 1u32..=8, p in arb_perm(8)) {
            prop_assume!(a != b);
            for t in [Transposition::on_values(a, b), Transposition::on_indices(a, b)] {
                let q = p.apply(t).unwrap().apply(t).unwrap();
                prop_assert_eq!(&q, &p);
            }
        }

        #[test]
        fn value_action_is_group_action(s in arb_perm(8), t in arb_perm(8), p in arb_perm(8)) {
            let lhs = s.act_on_values(&t.act_on_values(&p).unwrap()).unwrap();
            let st = s.act_on_values(&t).unwrap();
            let rhs = st.act_on_values(&p).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(Permutation::identity(8).act_on_values(&p).unwrap(), p);
        }

        #[test]
        fn index_action_is_group_action(s in arb_perm(8), t in arb_perm(8), p in arb_perm(8)) {
            // phi acts on indices contravariantly: (s then t) on p = t(s(p)).
            let lhs = s.act_on_indices(&t.act_on_indices(&p).unwrap()).unwrap();
            let ts = s.act_on_indices(&t).unwrap();
            let rhs = ts.act_on_indices(&p).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(Permutation::identity(8).act_on_indices(&p).unwrap(), p);
        }

        #[test]
        fn map_transposition_bijective(s in arb_perm(8)) {
            let mut images = HashSet::new();
            for a in 1..=8u32 {
                for b in (a + 1)..=8 {
                    images.insert(s.map_transposition(Transposition::on_values(a, b)).pair());
                }
            }
            prop_assert_eq!(images.len() as u64, binomial2(8));
        }
    }
}
