//! Rainbow cycles on the associahedron: closed flip sequences in which every
//! interior diagonal of the n-gon is flipped the same number r of times.
//! Built by gluing 2-rainbow rotation cycles of almost symmetric zigzag
//! triangulations through the stars, with a 1-rainbow path splice for odd r.

use std::collections::HashMap;

use crate::assoc::{
    apply_ordering, bar, blocks, from_word, rotation_ordering, star_ordering, zigzag_view,
    Diagonal, Direction, FlipOrdering, Triangulation, ZigzagView,
};
use crate::error::{Error, Result};

/// An almost symmetric zigzag triangulation: its word from the distinguished
/// endpoint is label + core + bar(label), where the core is a fixed short
/// string whose imbalance rules out rotational symmetry.
#[derive(Clone, Debug)]
pub struct AlmostSymmetricZigzag {
    pub base: Triangulation,
    pub endpoint: u32,
    pub label: String,
    pub word: String,
}

/// Closed rainbow cycle: starting triangulation and the diagonal removed at
/// each step; every interior diagonal is removed exactly r times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocRainbowCycle {
    pub n: u32,
    pub r: u32,
    pub start: Triangulation,
    pub flips: Vec<Diagonal>,
}

/// The fixed middle piece of an almost symmetric word.
pub fn core_word(n: u32) -> &'static str {
    if n % 2 == 0 {
        "rlrr"
    } else {
        "lrrll"
    }
}

/// Label length for the n-gon.
pub fn label_len(n: u32) -> u32 {
    (n - 8) / 2
}

fn wrap(n: u32, v: u32) -> u32 {
    (v - 1) % n + 1
}

fn hamming(a: &str, b: &str) -> usize {
    a.chars().zip(b.chars()).filter(|(x, y)| x != y).count()
}

/// A label is usable when it has at least three blocks and a block of size
/// at least two that is not the last one.
fn label_ok(label: &str) -> bool {
    let bs = blocks(label);
    bs.len() >= 3 && bs[..bs.len() - 1].iter().any(|b| b.len() >= 2)
}

/// Greedily picks n labels in lexicographic order over {l,r}^m with pairwise
/// Hamming distance at least four. Deterministic.
pub fn select_labels(n: u32) -> Result<Vec<String>> {
    if n < 45 {
        return Err(Error::domain("label selection needs n >= 45"));
    }
    let m = label_len(n);
    let mut chosen: Vec<String> = Vec::new();
    for bits in 0u64..1 << m {
        // 'l' < 'r'; the most significant position is the first letter.
        let cand: String = (0..m)
            .rev()
            .map(|i| if bits >> i & 1 == 1 { 'r' } else { 'l' })
            .collect();
        if !label_ok(&cand) {
            continue;
        }
        if chosen.iter().any(|c| hamming(c, &cand) < 4) {
            continue;
        }
        chosen.push(cand);
        if chosen.len() as u32 == n {
            return Ok(chosen);
        }
    }
    Err(Error::construction("not enough labels available"))
}

/// The almost symmetric zigzag triangulation with the given label and an
/// endpoint at vertex `endpoint`; odd endpoints use the core, even ones the
/// reversed-complemented core.
pub fn almost_symmetric(n: u32, label: &str, endpoint: u32) -> Result<AlmostSymmetricZigzag> {
    if n < 9 {
        return Err(Error::domain("almost symmetric words need n >= 9"));
    }
    if label.len() as u32 != label_len(n) {
        return Err(Error::domain(format!(
            "label length {} does not fit an {n}-gon",
            label.len()
        )));
    }
    let x = core_word(n);
    let mid = if endpoint % 2 == 1 {
        x.to_string()
    } else {
        bar(x)
    };
    let word = format!("{label}{mid}{}", bar(label));
    let base = from_word(n, endpoint, &word)?;
    Ok(AlmostSymmetricZigzag {
        base,
        endpoint,
        label: label.to_string(),
        word,
    })
}

/// Step-by-step assembly of a flip cycle with junction checks.
struct CycleBuilder {
    n: u32,
    start: Triangulation,
    current: Triangulation,
    flips: Vec<Diagonal>,
}

impl CycleBuilder {
    fn new(start: Triangulation) -> Self {
        CycleBuilder {
            n: start.n(),
            current: start.clone(),
            start,
            flips: Vec::new(),
        }
    }

    fn view(&self) -> Result<ZigzagView> {
        zigzag_view(&self.current)
            .ok_or_else(|| Error::construction("expected a zigzag triangulation"))
    }

    fn apply(&mut self, o: &FlipOrdering) -> Result<FlipOrdering> {
        let (end, _, induced) = apply_ordering(&self.current, o)?;
        self.flips.extend(o.order.iter().copied());
        self.current = end;
        Ok(induced)
    }

    fn expect(&self, want: &Triangulation, what: &str) -> Result<()> {
        if &self.current != want {
            return Err(Error::construction(format!("{what}: junction mismatch")));
        }
        Ok(())
    }

    /// Rotates the current zigzag triangulation clockwise `steps` times,
    /// starting the rotation ordering from the given endpoint.
    fn rotate_clockwise(&mut self, endpoint: u32, steps: u32) -> Result<()> {
        if steps == 0 {
            return Ok(());
        }
        let before = self.current.clone();
        let mut o = rotation_ordering(&self.view()?, endpoint, Direction::Clockwise)?;
        for _ in 0..steps {
            o = self.apply(&o)?;
        }
        self.expect(&before.rotate(-(steps as i64)), "clockwise rotation")?;
        Ok(())
    }

    /// Like rotate_clockwise but reads the rotation ordering from the
    /// endpoint opposite to the given one. Rotations adjacent to a star
    /// passage at v must start their flips away from v, otherwise they would
    /// retrace the star path.
    fn rotate_clockwise_far(&mut self, near: u32, steps: u32) -> Result<()> {
        let z = self.view()?;
        let far = if z.endpoints.0 == near {
            z.endpoints.1
        } else {
            z.endpoints.0
        };
        self.rotate_clockwise(far, steps)
    }

    /// Flips the current zigzag triangulation along its dual path into the
    /// star centered at its endpoint v.
    fn star_in(&mut self, v: u32) -> Result<()> {
        let o = star_ordering(&self.view()?, v)?;
        self.apply(&o)?;
        self.expect(&Triangulation::star(self.n, v)?, "flip to star")
    }

    /// Walks backwards from the star at v to the given zigzag triangulation
    /// (the reverse of that triangulation's path into the star).
    fn star_out(&mut self, v: u32, to: &Triangulation) -> Result<()> {
        self.expect(&Triangulation::star(self.n, v)?, "flip from star")?;
        let z = zigzag_view(to)
            .ok_or_else(|| Error::construction("star exit target must be zigzag"))?;
        let o = star_ordering(&z, v)?;
        let (_, _, induced) = apply_ordering(to, &o)?;
        for (inserted, removed) in o.order.iter().zip(induced.order.iter()).rev() {
            let (next, nd) = self.current.flip(removed)?;
            if nd != *inserted {
                return Err(Error::construction("flip from star went off path"));
            }
            self.flips.push(*removed);
            self.current = next;
        }
        self.expect(to, "flip from star")
    }

    fn finish(self, requested: u32) -> Result<AssocRainbowCycle> {
        if self.current != self.start {
            return Err(Error::construction("cycle does not close"));
        }
        let mut counts: HashMap<Diagonal, u32> = HashMap::new();
        for d in &self.flips {
            *counts.entry(*d).or_insert(0) += 1;
        }
        for d in Triangulation::all_diagonals(self.n) {
            let c = counts.get(&d).copied().unwrap_or(0);
            if c != requested {
                return Err(Error::construction(format!(
                    "diagonal {}-{} flipped {c} times, want {requested}",
                    d.a(),
                    d.b()
                )));
            }
        }
        Ok(AssocRainbowCycle {
            n: self.n,
            r: requested,
            start: self.start,
            flips: self.flips,
        })
    }
}

/// The alternating word of length n-4. For odd n the letters do not balance,
/// and the start letter is chosen to make the word l-heavy like the words of
/// odd-endpoint families; paths meeting at a star stay disjoint only when
/// their words have different letter counts.
fn alternating_word(n: u32) -> String {
    let first = if n % 2 == 0 { 0 } else { 1 };
    (0..n - 4)
        .map(|i| if i % 2 == first { 'r' } else { 'l' })
        .collect()
}

/// Path along which every interior diagonal of the n-gon appears exactly
/// once, either in the starting triangulation or as the diagonal flipped in.
/// Starts at the alternating-word zigzag triangulation with the given
/// endpoint and ends at its counter clockwise rotation by one vertex.
pub fn one_rainbow_path_at(
    n: u32,
    endpoint: u32,
) -> Result<(Triangulation, Vec<Diagonal>, Triangulation)> {
    if n < 5 {
        return Err(Error::domain("rainbow paths need n >= 5"));
    }
    let u = from_word(n, endpoint, &alternating_word(n))?;
    let target = u.rotate(1);
    let mut b = CycleBuilder::new(u.clone());
    let steps = if n % 2 == 0 { (n - 2) / 2 } else { (n - 3) / 2 };
    b.rotate_clockwise_far(endpoint, steps)?;
    if n % 2 == 1 {
        // The remaining diagonals of the target differ from the current
        // triangulation by a matching; flip them in directly.
        for _ in 0..(n - 3) / 2 {
            let d = b
                .current
                .diagonals()
                .iter()
                .copied()
                .find(|d| {
                    !target.contains(d)
                        && b.current
                            .flip(d)
                            .map_or(false, |(_, nd)| target.contains(&nd))
                })
                .ok_or_else(|| Error::construction("no matching flip available"))?;
            let (next, _) = b.current.flip(&d)?;
            b.flips.push(d);
            b.current = next;
        }
    }
    b.expect(&target, "rainbow path end")?;
    Ok((u, b.flips, target))
}

/// Same path, started at endpoint 1.
pub fn one_rainbow_path(n: u32) -> Result<(Triangulation, Vec<Diagonal>, Triangulation)> {
    one_rainbow_path_at(n, 1)
}

/// The 2-rainbow cycle obtained by rotating a symmetry-free zigzag
/// triangulation clockwise all the way around.
pub fn two_rainbow_cycle(t: &AlmostSymmetricZigzag) -> Result<AssocRainbowCycle> {
    let n = t.base.n();
    let mut b = CycleBuilder::new(t.base.clone());
    b.rotate_clockwise(t.endpoint, n)?;
    b.finish(2)
}

/// r-rainbow cycle on the associahedron of the n-gon for 1 <= r <= 2n+2.
///
/// Even r = 2k: k-1 almost symmetric families glued through stars, followed
/// by a tour through the unused stars. Odd r: the first family is replaced
/// by the 1-rainbow path, which contributes every diagonal once. r = 2 is a
/// single family cycle and r = 1 the 1-rainbow path closed by one rotation.
pub fn r_rainbow_cycle(n: u32, r: u32) -> Result<AssocRainbowCycle> {
    if n < 45 {
        return Err(Error::domain("rainbow cycle construction needs n >= 45"));
    }
    if r < 1 || r > 2 * n + 2 {
        return Err(Error::domain(format!("r must lie in 1..={}", 2 * n + 2)));
    }
    if r == 1 {
        let (u, flips, v) = one_rainbow_path_at(n, 1)?;
        let mut b = CycleBuilder::new(u.clone());
        b.flips = flips;
        b.current = v;
        // One more clockwise rotation closes the cycle.
        let endpoint = 2; // rotating by one moved endpoint 1 to 2
        b.rotate_clockwise_far(endpoint, 1)?;
        return b.finish(1);
    }
    let labels = select_labels(n)?;
    let family = |i: u32| -> Result<AlmostSymmetricZigzag> {
        let label = &labels[(i - 1) as usize];
        if n % 2 == 1 && i == n {
            // Families at consecutive vertices alternate between l-heavy and
            // r-heavy words, but with odd n the families at n and 1 would
            // agree again where the cycle wraps around. The last family gets
            // a stronger imbalance instead.
            let word = format!("{label}rrlrr{}", bar(label));
            let base = from_word(n, i, &word)?;
            return Ok(AlmostSymmetricZigzag {
                base,
                endpoint: i,
                label: label.clone(),
                word,
            });
        }
        almost_symmetric(n, label, i)
    };
    if r == 2 {
        return two_rainbow_cycle(&family(1)?);
    }
    let k = r / 2 + r % 2; // r = 2k (even) or r = 2k-1 (odd)
    let odd = r % 2 == 1;

    // Odd r replaces the first family segment by the 1-rainbow path, which
    // contributes every diagonal once instead of twice.
    let first = if odd {
        from_word(n, 1, &alternating_word(n))?
    } else {
        family(1)?.base
    };
    let mut b = CycleBuilder::new(first.clone());
    if odd {
        let (u, flips, v) = one_rainbow_path_at(n, 1)?;
        b.expect(&u, "rainbow path start")?;
        b.flips.extend(flips);
        b.current = v;
        b.star_in(2)?;
        if k >= 3 {
            b.star_out(2, &family(2)?.base)?;
        }
    }
    let lo = if odd { 2 } else { 1 };
    for i in lo..=(k - 1) {
        let t = family(i)?;
        b.expect(&t.base, "family start")?;
        b.rotate_clockwise_far(i, n - 1)?;
        b.star_in(wrap(n, i + 1))?;
        if i < k - 1 {
            b.star_out(wrap(n, i + 1), &family(i + 1)?.base)?;
        }
    }
    // Star tour from S_k around to S_1.
    for j in k..=n {
        b.expect(&Triangulation::star(n, wrap(n, j))?, "star tour")?;
        let z = b.view()?;
        let o = star_ordering(&z, wrap(n, j + 1))?;
        b.apply(&o)?;
    }
    b.star_out(1, &first)?;
    b.finish(r)
}
