//! Text formats for strings, multisets, and error patterns.
//!
//! Multiset files: line 1 `n=<n>`, then one line per class `l ascending:
//! `l | z:w*count z:w ...` with entries sorted by zeros descending and
//! `*count` omitted when the multiplicity is 1. Error patterns: one line per
//! substitution `l z:w -> z':w'`. Strings: a single ASCII line of 0/1.
//! Lines starting with `#` are comments and are skipped on parse.

use std::fmt::Write as _;

use compec_core::composition::{
    BitString, Composition, CompositionMultiset, ErrorPattern, Substitution,
};

pub fn parse_bit_line(text: &str) -> Result<BitString, String> {
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or("no string found in input")?;
    let bits: Vec<u8> = line
        .chars()
        .map(|c| match c {
            '0' => Ok(0u8),
            '1' => Ok(1u8),
            other => Err(format!("unexpected character {other:?} in string")),
        })
        .collect::<Result<_, _>>()?;
    BitString::new(bits).map_err(|e| e.to_string())
}

pub fn serialize_bits(bits: &[u8]) -> String {
    let mut out: String = bits.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect();
    out.push('\n');
    out
}

pub fn serialize_multiset(c: &CompositionMultiset) -> String {
    let mut out = format!("n={}\n", c.n());
    for l in 1..=c.n() {
        write!(out, "{l} |").unwrap();
        for (comp, count) in c.class(l) {
            write!(out, " {}:{}", comp.zeros, comp.ones).unwrap();
            if count > 1 {
                write!(out, "*{count}").unwrap();
            }
        }
        out.push('\n');
    }
    out
}

fn parse_entry(token: &str) -> Result<(Composition, u32), String> {
    let (comp, count) = match token.split_once('*') {
        Some((c, k)) => (c, k.parse::<u32>().map_err(|e| format!("bad count in {token:?}: {e}"))?),
        None => (token, 1),
    };
    if count == 0 {
        return Err(format!("zero count in {token:?}"));
    }
    let (z, w) = comp
        .split_once(':')
        .ok_or_else(|| format!("expected z:w in {token:?}"))?;
    let zeros = z.parse::<u32>().map_err(|e| format!("bad zeros in {token:?}: {e}"))?;
    let ones = w.parse::<u32>().map_err(|e| format!("bad ones in {token:?}: {e}"))?;
    Ok((Composition::new(zeros, ones), count))
}

pub fn parse_multiset(text: &str) -> Result<CompositionMultiset, String> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let head = lines.next().ok_or("empty multiset file")?;
    let n: usize = head
        .strip_prefix("n=")
        .ok_or("first line must be n=<n>")?
        .parse()
        .map_err(|e| format!("bad length: {e}"))?;
    if n == 0 {
        return Err("length must be positive".into());
    }
    let mut out = CompositionMultiset::empty(n);
    for line in lines {
        let (l_str, rest) = line
            .split_once('|')
            .ok_or_else(|| format!("expected 'l | entries' in {line:?}"))?;
        let l: usize = l_str
            .trim()
            .parse()
            .map_err(|e| format!("bad class length in {line:?}: {e}"))?;
        if l < 1 || l > n {
            return Err(format!("class length {l} outside 1..={n}"));
        }
        for token in rest.split_whitespace() {
            let (comp, count) = parse_entry(token)?;
            if comp.len() as usize != l {
                return Err(format!(
                    "composition {}:{} has length {} but sits in class {l}",
                    comp.zeros,
                    comp.ones,
                    comp.len()
                ));
            }
            out.adjust(comp, count as i64).map_err(|e| e.to_string())?;
        }
    }
    Ok(out)
}

pub fn serialize_pattern(e: &ErrorPattern) -> String {
    let mut out = String::new();
    for sub in &e.0 {
        writeln!(
            out,
            "{} {}:{} -> {}:{}",
            sub.from.len(),
            sub.from.zeros,
            sub.from.ones,
            sub.to.zeros,
            sub.to.ones
        )
        .unwrap();
    }
    out
}

pub fn parse_pattern(text: &str) -> Result<ErrorPattern, String> {
    let mut subs = Vec::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let l: u32 = parts
            .next()
            .ok_or_else(|| format!("missing class length in {line:?}"))?
            .parse()
            .map_err(|e| format!("bad class length in {line:?}: {e}"))?;
        let (from, _) = parse_entry(parts.next().ok_or_else(|| format!("missing source in {line:?}"))?)?;
        let arrow = parts.next().ok_or_else(|| format!("missing arrow in {line:?}"))?;
        if arrow != "->" {
            return Err(format!("expected -> in {line:?}"));
        }
        let (to, _) = parse_entry(parts.next().ok_or_else(|| format!("missing target in {line:?}"))?)?;
        if parts.next().is_some() {
            return Err(format!("trailing tokens in {line:?}"));
        }
        if from.len() != l || to.len() != l {
            return Err(format!("compositions in {line:?} do not match class length {l}"));
        }
        subs.push(Substitution { from, to });
    }
    Ok(ErrorPattern(subs))
}
