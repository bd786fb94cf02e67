//! Text formats for ideals and factor profiles.
//!
//! Ideal files:
//!
//! ```text
//! # comment
//! ring 2 4
//! gens: x1*x2, x1*y3, y2^2
//! ```
//!
//! An empty `gens:` list is the zero ideal and `1` the unit ideal.
//! Profile files carry an optional `ring m n` line and a
//! `factors: (1,0) (1,1) x1 y2^3` line, where `xN^e` stands for a factor of
//! bidegree `(e, 0)` and `yN^e` for `(0, e)`.

use crate::error::{Error, Result};
use crate::hypersurface::FactorProfile;
use crate::ring::{Monomial, MonomialIdeal, RingSpec};

/// A span of source text with its 1-based position.
#[derive(Debug, Clone, Copy)]
struct Span<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl<'a> Span<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::parse(self.line, self.column, message)
    }

    fn slice(&self, start: usize, end: usize) -> Span<'a> {
        Span {
            text: &self.text[start..end],
            line: self.line,
            column: self.column + self.text[..start].chars().count(),
        }
    }

    fn trim(&self) -> Span<'a> {
        let start = self.text.len() - self.text.trim_start().len();
        let end = self.text.trim_end().len();
        if start >= end {
            return self.slice(self.text.len(), self.text.len());
        }
        self.slice(start, end)
    }

    /// Splits on `sep`, keeping positions.
    fn split(&self, sep: char) -> Vec<Span<'a>> {
        let mut out = Vec::new();
        let mut start = 0;
        for (i, c) in self.text.char_indices() {
            if c == sep {
                out.push(self.slice(start, i));
                start = i + c.len_utf8();
            }
        }
        out.push(self.slice(start, self.text.len()));
        out
    }

    fn words(&self) -> Vec<Span<'a>> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in self.text.char_indices() {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    out.push(self.slice(s, i));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push(self.slice(s, self.text.len()));
        }
        out
    }
}

/// Trimmed lines with comments and blanks removed.
fn lines(input: &str) -> Vec<Span<'_>> {
    input
        .lines()
        .enumerate()
        .map(|(i, raw)| {
            let text = raw.split('#').next().unwrap_or("");
            Span { text, line: i + 1, column: 1 }.trim()
        })
        .filter(|s| !s.text.is_empty())
        .collect()
}

fn number<T: std::str::FromStr>(span: Span<'_>, what: &str) -> Result<T> {
    if span.text.is_empty() || !span.text.chars().all(|c| c.is_ascii_digit()) {
        return Err(span.err(format!("expected {what}, found '{}'", span.text)));
    }
    span.text.parse().map_err(|_| span.err(format!("{what} out of range")))
}

fn parse_ring_line(span: Span<'_>) -> Result<RingSpec> {
    let words = span.words();
    if words.len() != 3 || words[0].text != "ring" {
        return Err(span.err("expected 'ring <m> <n>'"));
    }
    let m = number(words[1], "x-block size")?;
    let n = number(words[2], "y-block size")?;
    RingSpec::new(m, n).map_err(|e| span.err(e.to_string()))
}

/// `x3`, `y2^4`: block flag, 1-based index, exponent.
fn parse_power(span: Span<'_>) -> Result<(bool, usize, u32)> {
    let (base, exp) = match span.text.find('^') {
        Some(i) => (span.slice(0, i), Some(span.slice(i + 1, span.text.len()))),
        None => (span, None),
    };
    let is_x = match base.text.chars().next() {
        Some('x') => true,
        Some('y') => false,
        _ => return Err(base.err(format!("expected a variable x<i> or y<j>, found '{}'", base.text))),
    };
    let index: usize = number(base.slice(1, base.text.len()), "variable index")?;
    if index == 0 {
        return Err(base.err("variable indices start at 1"));
    }
    let exp = match exp {
        Some(e) => number(e, "exponent")?,
        None => 1,
    };
    if exp == 0 {
        return Err(span.err("exponent must be positive"));
    }
    Ok((is_x, index, exp))
}

fn parse_term(span: Span<'_>, ring: &RingSpec) -> Result<Monomial> {
    let span = span.trim();
    if span.text.is_empty() {
        return Err(span.err("empty term"));
    }
    let mut exps = vec![0u32; ring.nvars()];
    if span.text == "1" {
        return Ok(Monomial::new(exps));
    }
    for factor in span.split('*') {
        let factor = factor.trim();
        let (is_x, index, exp) = parse_power(factor)?;
        let (limit, offset) = if is_x { (ring.m(), 0) } else { (ring.n(), ring.m()) };
        if index > limit {
            return Err(factor.err(format!("'{}' is not a variable of the ring", factor.text)));
        }
        let slot = &mut exps[offset + index - 1];
        *slot = slot
            .checked_add(exp)
            .ok_or_else(|| factor.err("exponent overflow"))?;
    }
    Ok(Monomial::new(exps))
}

fn keyword<'a>(span: Span<'a>, key: &str) -> Option<Span<'a>> {
    span.text
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix(':'))
        .map(|_| span.slice(key.len() + 1, span.text.len()))
}

/// Parses an ideal file.
pub fn parse_ideal(input: &str) -> Result<MonomialIdeal> {
    let lines = lines(input);
    let mut ring = None;
    let mut gens = None;
    for span in lines {
        if let Some(rest) = keyword(span, "gens") {
            let r = ring.ok_or_else(|| span.err("'gens:' before 'ring' line"))?;
            if gens.is_some() {
                return Err(span.err("duplicate 'gens:' line"));
            }
            let terms = if rest.trim().text.is_empty() {
                Vec::new()
            } else {
                rest.split(',')
                    .into_iter()
                    .map(|t| parse_term(t, &r))
                    .collect::<Result<Vec<_>>>()?
            };
            gens = Some(MonomialIdeal::new(r, terms)?);
        } else if span.text.starts_with("ring") {
            if ring.is_some() {
                return Err(span.err("duplicate 'ring' line"));
            }
            ring = Some(parse_ring_line(span)?);
        } else {
            return Err(span.err(format!("unexpected line '{}'", span.text)));
        }
    }
    match (ring, gens) {
        (_, Some(ideal)) => Ok(ideal),
        (Some(_), None) => Err(Error::parse(input.lines().count().max(1), 1, "missing 'gens:' line")),
        (None, None) => Err(Error::parse(1, 1, "missing 'ring' line")),
    }
}

/// Parses a single term such as `x1^2*y3` in `ring`.
pub fn parse_monomial(input: &str, ring: &RingSpec) -> Result<Monomial> {
    parse_term(Span { text: input, line: 1, column: 1 }, ring)
}

/// Canonical file text; `parse_ideal` reads it back to the same ideal.
pub fn render_ideal(ideal: &MonomialIdeal) -> String {
    let ring = ideal.ring();
    let terms: Vec<String> = ideal.gens().iter().map(|g| g.render(ring)).collect();
    format!("ring {} {}\ngens: {}\n", ring.m(), ring.n(), terms.join(", "))
}

/// Parses a bare factor list such as `(1,0) (1,1) x1 y2^3`.
pub fn parse_factors(input: &str) -> Result<FactorProfile> {
    factors_of(Span { text: input, line: 1, column: 1 }, None)
}

fn factors_of(span: Span<'_>, ring: Option<&RingSpec>) -> Result<FactorProfile> {
    let mut out = Vec::new();
    let mut rest = span.trim();
    while !rest.text.is_empty() {
        if rest.text.starts_with('(') {
            let close = rest
                .text
                .find(')')
                .ok_or_else(|| rest.err("unclosed '('"))?;
            let inner = rest.slice(1, close);
            let parts = inner.split(',');
            if parts.len() != 2 {
                return Err(inner.err("expected a bidegree '(a,b)'"));
            }
            let a = number(parts[0].trim(), "x-degree")?;
            let b = number(parts[1].trim(), "y-degree")?;
            if a == 0 && b == 0 {
                return Err(rest.err("factor of bidegree (0,0)"));
            }
            out.push((a, b));
            rest = rest.slice(close + 1, rest.text.len()).trim();
        } else {
            let end = rest
                .text
                .find(|c: char| c.is_whitespace() || c == '(')
                .unwrap_or(rest.text.len());
            let token = rest.slice(0, end);
            let (is_x, index, exp) = parse_power(token)?;
            if let Some(r) = ring {
                let limit = if is_x { r.m() } else { r.n() };
                if index > limit {
                    return Err(token.err(format!("'{}' is not a variable of the ring", token.text)));
                }
            }
            out.push(if is_x { (exp, 0) } else { (0, exp) });
            rest = rest.slice(end, rest.text.len()).trim();
        }
    }
    if out.is_empty() {
        return Err(span.err("no factors"));
    }
    FactorProfile::new(out)
}

/// Parses a profile file: optional `ring m n` line, then `factors: ...`.
pub fn parse_profile(input: &str) -> Result<(Option<RingSpec>, FactorProfile)> {
    let mut ring = None;
    let mut profile = None;
    for span in lines(input) {
        if let Some(rest) = keyword(span, "factors") {
            if profile.is_some() {
                return Err(span.err("duplicate 'factors:' line"));
            }
            profile = Some(factors_of(rest, ring.as_ref())?);
        } else if span.text.starts_with("ring") {
            if ring.is_some() || profile.is_some() {
                return Err(span.err("'ring' line must come once, before 'factors:'"));
            }
            ring = Some(parse_ring_line(span)?);
        } else {
            return Err(span.err(format!("unexpected line '{}'", span.text)));
        }
    }
    let profile = profile.ok_or_else(|| Error::parse(input.lines().count().max(1), 1, "missing 'factors:' line"))?;
    Ok((ring, profile))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const MIXED: &str = "# mixed example\nring 2 4\ngens: x1*x2, x1*y3, x1*y4, x2*y1, y1*y3, y1*y4, y2*y4, y2*y3\n";

    #[test]
    fn parses_example() {
        let i = parse_ideal(MIXED).unwrap();
        assert_eq!(i.gens().len(), 8);
        assert_eq!((i.ring().m(), i.ring().n()), (2, 4));
        let again = parse_ideal(&render_ideal(&i)).unwrap();
        assert_eq!(again, i);
    }

    #[test]
    fn order_and_spelling_are_irrelevant() {
        let a = parse_ideal("ring 1 2\ngens: y2^2, x1*y1\n").unwrap();
        let b = parse_ideal("ring 1 2\n\ngens:y1*x1 ,y2*y2, x1*y1*y2 # redundant\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(render_ideal(&a), "ring 1 2\ngens: x1*y1, y2^2\n");
    }

    #[test]
    fn exponent_vector() {
        let i = parse_ideal("ring 2 4\ngens: x1^2*y3").unwrap();
        assert_eq!(i.gens()[0].exps(), &[2, 0, 0, 0, 1, 0]);
    }

    #[test]
    fn single_monomial() {
        let r = RingSpec::new(2, 2).unwrap();
        assert_eq!(parse_monomial("y2*x1^3", &r).unwrap().exps(), &[3, 0, 0, 1]);
        assert!(matches!(parse_monomial("x3", &r), Err(Error::Parse { column: 1, .. })));
    }

    #[test]
    fn zero_and_unit() {
        assert!(parse_ideal("ring 1 1\ngens:\n").unwrap().is_zero());
        assert!(parse_ideal("ring 1 1\ngens: x1, 1\n").unwrap().is_unit());
        assert_eq!(render_ideal(&parse_ideal("ring 1 1\ngens:").unwrap()), "ring 1 1\ngens: \n");
    }

    #[test]
    fn errors_carry_positions() {
        let cases = [
            ("ring 1 1\ngens: x2", 2, 7),
            ("ring 1 1\ngens: x1, z1", 2, 11),
            ("ring 1 1\ngens: x1^0", 2, 7),
            ("ring 1 1\ngens: x1,", 2, 10),
            ("gens: x1", 1, 1),
            ("ring 1\ngens: x1", 1, 1),
            ("ring a 1\ngens: x1", 1, 6),
            ("ring 1 1\nfoo", 2, 1),
            ("ring 1 1\n", 1, 1),
            ("ring 1 1\ngens: x1*y0", 2, 10),
        ];
        for (text, line, column) in cases {
            match parse_ideal(text) {
                Err(Error::Parse { line: l, column: c, .. }) => {
                    assert_eq!((l, c), (line, column), "{text:?}")
                }
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn profiles() {
        let p = parse_factors("(1,0) (1,1)(0,1)").unwrap();
        assert_eq!(p.factors(), &[(0, 1), (1, 0), (1, 1)]);
        let (ring, q) = parse_profile("ring 2 2\nfactors: x1 y2^3 (2, 1)\n").unwrap();
        assert_eq!(ring, Some(RingSpec::new(2, 2).unwrap()));
        assert_eq!(q.factors(), &[(0, 3), (1, 0), (2, 1)]);
        assert!(matches!(parse_factors("(0,0)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_factors(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_factors("(1,2"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_profile("ring 1 1\nfactors: y2"),
            Err(Error::Parse { line: 2, column: 10, .. })
        ));
    }

    fn ideal_strategy() -> impl Strategy<Value = MonomialIdeal> {
        (1usize..=3, 1usize..=3).prop_flat_map(|(m, n)| {
            prop::collection::vec(prop::collection::vec(0u32..=3, m + n), 0..6).prop_map(move |gens| {
                let ring = RingSpec::new(m, n).unwrap();
                MonomialIdeal::new(ring, gens.into_iter().map(Monomial::new)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(i in ideal_strategy()) {
            let text = render_ideal(&i);
            let back = parse_ideal(&text).unwrap();
            prop_assert_eq!(&back, &i);
            prop_assert_eq!(render_ideal(&back), text);
        }
    }
}
