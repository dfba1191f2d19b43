//! Artifact serialization. The text format is line-oriented and bit-exact so
//! generated files can serve as golden files; JSON mirrors the same fields.
//!
//! ```text
//! graycode v1 kind=perm-all n=5 m=3
//! start: 1 2 3 4 5
//! t 1 2
//! ...
//! closing: t 4 5
//! ```
//!
//! Associahedron cycles use `f a-b` flip lines, a `tri` start line, and list
//! every flip with no closing line (the last flip already closes the cycle).

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::assoc::{Diagonal, Triangulation};
use crate::assoc_rainbow::AssocRainbowCycle;
use crate::error::{Error, Result};
use crate::perm::{Permutation, Semantics, Transposition, TranspositionSequence};

/// What the artifact is a code for; fixes the flip model and semantics.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// Balanced code on S_n under all value transpositions.
    PermAll,
    /// Balanced code under cyclically adjacent index transpositions.
    PermCadj,
    /// 2- or 3-rainbow cycle under adjacent index transpositions.
    PermAdjRainbow,
    /// r-rainbow cycle on triangulations of the n-gon.
    Assoc,
}

impl Target {
    pub fn as_str(&self) -> &'static str {
        match self {
            Target::PermAll => "perm-all",
            Target::PermCadj => "perm-cadj",
            Target::PermAdjRainbow => "perm-adj-rainbow",
            Target::Assoc => "assoc",
        }
    }

    pub fn from_str(s: &str) -> Result<Target> {
        match s {
            "perm-all" => Ok(Target::PermAll),
            "perm-cadj" => Ok(Target::PermCadj),
            "perm-adj-rainbow" => Ok(Target::PermAdjRainbow),
            "assoc" => Ok(Target::Assoc),
            _ => Err(Error::parse(format!("unknown kind {s}"))),
        }
    }

    /// Flip semantics used by codes of this target.
    pub fn semantics(&self) -> Semantics {
        match self {
            Target::PermAll => Semantics::OnValues,
            _ => Semantics::OnIndices,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    Perm(TranspositionSequence),
    Assoc(AssocRainbowCycle),
}

/// A generated code together with the parameters that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct Artifact {
    pub target: Target,
    pub n: u32,
    pub r: Option<u32>,
    pub m: Option<u32>,
    pub payload: Payload,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl Artifact {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Json => self.render_json(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "graycode v1 kind={} n={}", self.target.as_str(), self.n);
        if let Some(r) = self.r {
            let _ = write!(s, " r={r}");
        }
        if let Some(m) = self.m {
            let _ = write!(s, " m={m}");
        }
        s.push('\n');
        match &self.payload {
            Payload::Perm(seq) => {
                let entries: Vec<String> =
                    seq.start().entries().iter().map(|e| e.to_string()).collect();
                let _ = writeln!(s, "start: {}", entries.join(" "));
                for t in seq.flips() {
                    let _ = writeln!(s, "t {} {}", t.a(), t.b());
                }
                if seq.cyclic() && !seq.flips().is_empty() {
                    let c = seq.closing_flip().expect("valid cyclic sequence");
                    let _ = writeln!(s, "closing: t {} {}", c.a(), c.b());
                }
            }
            Payload::Assoc(c) => {
                let _ = writeln!(s, "start: {}", c.start.render());
                for d in &c.flips {
                    let _ = writeln!(s, "f {}-{}", d.a(), d.b());
                }
            }
        }
        s
    }

    pub fn render_json(&self) -> String {
        let mut obj = json!({
            "format": "graycode",
            "version": 1,
            "kind": self.target.as_str(),
            "n": self.n,
        });
        if let Some(r) = self.r {
            obj["r"] = json!(r);
        }
        if let Some(m) = self.m {
            obj["m"] = json!(m);
        }
        match &self.payload {
            Payload::Perm(seq) => {
                obj["start"] = json!(seq.start().entries());
                obj["flips"] = Value::Array(
                    seq.flips().iter().map(|t| json!([t.a(), t.b()])).collect(),
                );
                if seq.cyclic() && !seq.flips().is_empty() {
                    let c = seq.closing_flip().expect("valid cyclic sequence");
                    obj["closing"] = json!([c.a(), c.b()]);
                }
            }
            Payload::Assoc(c) => {
                obj["start"] = Value::Array(
                    c.start
                        .diagonals()
                        .iter()
                        .map(|d| json!(format!("{}-{}", d.a(), d.b())))
                        .collect(),
                );
                obj["flips"] = Value::Array(
                    c.flips
                        .iter()
                        .map(|d| json!(format!("{}-{}", d.a(), d.b())))
                        .collect(),
                );
            }
        }
        let mut out = serde_json::to_string_pretty(&obj).expect("serializable");
        out.push('\n');
        out
    }

    /// Parses either format, detected from the first non-space character.
    pub fn parse(input: &str) -> Result<Artifact> {
        if input.trim_start().starts_with('{') {
            Artifact::parse_json(input)
        } else {
            Artifact::parse_text(input)
        }
    }

    pub fn parse_text(input: &str) -> Result<Artifact> {
        let mut lines = input.lines();
        let header = lines.next().ok_or_else(|| Error::parse("empty input"))?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("graycode") || parts.next() != Some("v1") {
            return Err(Error::parse("missing graycode v1 header"));
        }
        let (mut target, mut n, mut r, mut m) = (None, None, None, None);
        for kv in parts {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::parse(format!("bad header field {kv}")))?;
            match k {
                "kind" => target = Some(Target::from_str(v)?),
                "n" => n = Some(parse_u32(v)?),
                "r" => r = Some(parse_u32(v)?),
                "m" => m = Some(parse_u32(v)?),
                _ => return Err(Error::parse(format!("unknown header field {k}"))),
            }
        }
        let target = target.ok_or_else(|| Error::parse("header missing kind"))?;
        let n = n.ok_or_else(|| Error::parse("header missing n"))?;
        let start_line = lines
            .next()
            .and_then(|l| l.strip_prefix("start: "))
            .ok_or_else(|| Error::parse("missing start line"))?;

        let payload = match target {
            Target::Assoc => {
                let start = Triangulation::parse(start_line)?;
                if start.n() != n {
                    return Err(Error::parse("start triangulation order mismatch"));
                }
                let r = r.ok_or_else(|| Error::parse("assoc artifact missing r"))?;
                let mut flips = Vec::new();
                for l in lines {
                    let body = l
                        .strip_prefix("f ")
                        .ok_or_else(|| Error::parse(format!("bad flip line {l}")))?;
                    flips.push(parse_diagonal(n, body)?);
                }
                Payload::Assoc(AssocRainbowCycle {
                    n,
                    r,
                    start,
                    flips,
                })
            }
            _ => {
                let entries: Vec<u32> = start_line
                    .split_whitespace()
                    .map(parse_u32)
                    .collect::<Result<_>>()?;
                let start = Permutation::from_entries(entries)?;
                if start.n() != n {
                    return Err(Error::parse("start permutation order mismatch"));
                }
                let sem = target.semantics();
                let mut flips = Vec::new();
                let mut closing = None;
                for l in lines {
                    if let Some(body) = l.strip_prefix("closing: ") {
                        closing = Some(parse_transposition(body, sem)?);
                    } else if closing.is_none() {
                        flips.push(parse_transposition(l, sem)?);
                    } else {
                        return Err(Error::parse("flip line after closing line"));
                    }
                }
                let seq = TranspositionSequence::new(start, flips, closing.is_some())?;
                if let Some(c) = closing {
                    if seq.closing_flip()? != c {
                        return Err(Error::parse("closing line does not close the cycle"));
                    }
                }
                Payload::Perm(seq)
            }
        };
        Ok(Artifact {
            target,
            n,
            r,
            m,
            payload,
        })
    }

    pub fn parse_json(input: &str) -> Result<Artifact> {
        let v: Value =
            serde_json::from_str(input).map_err(|e| Error::parse(format!("bad json: {e}")))?;
        if v["format"] != json!("graycode") || v["version"] != json!(1) {
            return Err(Error::parse("missing graycode v1 fields"));
        }
        let target = Target::from_str(
            v["kind"]
                .as_str()
                .ok_or_else(|| Error::parse("missing kind"))?,
        )?;
        let n = get_u32(&v, "n")?.ok_or_else(|| Error::parse("missing n"))?;
        let r = get_u32(&v, "r")?;
        let m = get_u32(&v, "m")?;
        let flips_json = v["flips"]
            .as_array()
            .ok_or_else(|| Error::parse("missing flips"))?;
        let payload = match target {
            Target::Assoc => {
                let r = r.ok_or_else(|| Error::parse("assoc artifact missing r"))?;
                let start_json = v["start"]
                    .as_array()
                    .ok_or_else(|| Error::parse("missing start"))?;
                let ds = start_json
                    .iter()
                    .map(|d| {
                        parse_diagonal(
                            n,
                            d.as_str().ok_or_else(|| Error::parse("bad diagonal"))?,
                        )
                    })
                    .collect::<Result<Vec<_>>>()?;
                let start = Triangulation::new(n, ds)?;
                let flips = flips_json
                    .iter()
                    .map(|d| {
                        parse_diagonal(
                            n,
                            d.as_str().ok_or_else(|| Error::parse("bad diagonal"))?,
                        )
                    })
                    .collect::<Result<Vec<_>>>()?;
                Payload::Assoc(AssocRainbowCycle {
                    n,
                    r,
                    start,
                    flips,
                })
            }
            _ => {
                let entries = v["start"]
                    .as_array()
                    .ok_or_else(|| Error::parse("missing start"))?
                    .iter()
                    .map(|e| {
                        e.as_u64()
                            .map(|e| e as u32)
                            .ok_or_else(|| Error::parse("bad start entry"))
                    })
                    .collect::<Result<Vec<u32>>>()?;
                let start = Permutation::from_entries(entries)?;
                let sem = target.semantics();
                let flips = flips_json
                    .iter()
                    .map(|p| json_pair(p).and_then(|(a, b)| Transposition::new(a, b, sem)))
                    .collect::<Result<Vec<_>>>()?;
                let cyclic = !v["closing"].is_null();
                let seq = TranspositionSequence::new(start, flips, cyclic)?;
                if cyclic {
                    let (a, b) = json_pair(&v["closing"])?;
                    if seq.closing_flip()? != Transposition::new(a, b, sem)? {
                        return Err(Error::parse("closing field does not close the cycle"));
                    }
                }
                Payload::Perm(seq)
            }
        };
        Ok(Artifact {
            target,
            n,
            r,
            m,
            payload,
        })
    }
}

fn parse_u32(s: &str) -> Result<u32> {
    s.parse()
        .map_err(|_| Error::parse(format!("bad number {s}")))
}

fn get_u32(v: &Value, key: &str) -> Result<Option<u32>> {
    match &v[key] {
        Value::Null => Ok(None),
        x => x
            .as_u64()
            .map(|x| Some(x as u32))
            .ok_or_else(|| Error::parse(format!("bad field {key}"))),
    }
}

fn json_pair(v: &Value) -> Result<(u32, u32)> {
    match v.as_array().map(|a| a.as_slice()) {
        Some([a, b]) => match (a.as_u64(), b.as_u64()) {
            (Some(a), Some(b)) => Ok((a as u32, b as u32)),
            _ => Err(Error::parse("bad pair entries")),
        },
        _ => Err(Error::parse("expected a pair")),
    }
}

fn parse_diagonal(n: u32, s: &str) -> Result<Diagonal> {
    let (a, b) = s
        .split_once('-')
        .ok_or_else(|| Error::parse(format!("bad diagonal {s}")))?;
    Diagonal::new(n, parse_u32(a)?, parse_u32(b)?)
}

fn parse_transposition(l: &str, sem: Semantics) -> Result<Transposition> {
    let body = l
        .strip_prefix("t ")
        .ok_or_else(|| Error::parse(format!("bad flip line {l}")))?;
    let (a, b) = body
        .split_once(' ')
        .ok_or_else(|| Error::parse(format!("bad flip line {l}")))?;
    Transposition::new(parse_u32(a)?, parse_u32(b)?, sem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assoc_rainbow::{almost_symmetric, two_rainbow_cycle};
    use crate::balanced_all::balanced;
    use crate::cadj::balanced_cadj;
    use crate::permutahedron::rainbow2;

    fn roundtrip(a: &Artifact) {
        let text = a.render_text();
        assert_eq!(&Artifact::parse(&text).unwrap(), a);
        assert_eq!(Artifact::parse(&text).unwrap().render_text(), text);
        let js = a.render_json();
        assert_eq!(&Artifact::parse(&js).unwrap(), a);
    }

    #[test]
    fn perm_all_roundtrip() {
        let code = balanced(4).unwrap();
        roundtrip(&Artifact {
            target: Target::PermAll,
            n: 4,
            r: None,
            m: None,
            payload: Payload::Perm(code.code),
        });
    }

    #[test]
    fn perm_cadj_roundtrip() {
        let code = balanced_cadj(4).unwrap();
        roundtrip(&Artifact {
            target: Target::PermCadj,
            n: 4,
            r: None,
            m: None,
            payload: Payload::Perm(code.code),
        });
    }

    #[test]
    fn perm_adj_rainbow_roundtrip() {
        let r = rainbow2(6).unwrap();
        roundtrip(&Artifact {
            target: Target::PermAdjRainbow,
            n: 6,
            r: Some(2),
            m: None,
            payload: Payload::Perm(r.code),
        });
    }

    #[test]
    fn assoc_roundtrip() {
        let t = almost_symmetric(9, "", 1).unwrap();
        let c = two_rainbow_cycle(&t).unwrap();
        roundtrip(&Artifact {
            target: Target::Assoc,
            n: 9,
            r: Some(2),
            m: None,
            payload: Payload::Assoc(c),
        });
    }

    #[test]
    fn header_and_semantics() {
        let r = rainbow2(5).unwrap();
        let a = Artifact {
            target: Target::PermAdjRainbow,
            n: 5,
            r: Some(2),
            m: None,
            payload: Payload::Perm(r.code),
        };
        let text = a.render_text();
        assert!(text.starts_with("graycode v1 kind=perm-adj-rainbow n=5 r=2\n"));
        assert!(text.contains("closing: t 4 5"));
        let parsed = Artifact::parse_text(&text).unwrap();
        let Payload::Perm(seq) = &parsed.payload else {
            panic!("expected perm payload")
        };
        assert_eq!(seq.semantics(), Some(Semantics::OnIndices));
    }

    #[test]
    fn corrupted_inputs_rejected() {
        let code = balanced(3).unwrap();
        let a = Artifact {
            target: Target::PermAll,
            n: 3,
            r: None,
            m: None,
            payload: Payload::Perm(code.code),
        };
        let text = a.render_text();
        assert!(text.contains("closing: t 2 3"));
        assert!(Artifact::parse_text(&text.replace("closing: t 2 3", "closing: t 1 2")).is_err());
        assert!(Artifact::parse_text(&text.replace("graycode", "graycoat")).is_err());
        assert!(Artifact::parse_text(&text.replace("kind=perm-all", "kind=perm-any")).is_err());
        assert!(Artifact::parse_json("{}").is_err());
    }
}
