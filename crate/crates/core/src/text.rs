//! Text formats: moduli, element and generator specs, subspace specs, and
//! difference-set files.
//!
//! Parsing is split from resolution. The `parse_*` functions only need the
//! input string and never panic; `resolve_*` turns a parsed spec into field
//! data for a concrete [`FieldContext`].

use std::ops::RangeInclusive;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::subspace::Subspace;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_u64(s: &str) -> Result<u64> {
    let s = s.trim();
    s.parse::<u64>()
        .map_err(|_| parse_err(format!("expected a non-negative integer, got {s:?}")))
}

fn parse_list(s: &str, sep: impl Fn(char) -> bool) -> Result<Vec<u64>> {
    s.split(sep)
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(parse_u64)
        .collect()
}

/// `"2,0,1,0,1"`: ascending coefficients, comma separated.
pub fn parse_modulus(s: &str) -> Result<Vec<u64>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(parse_err("empty modulus"));
    }
    s.split(',').map(parse_u64).collect()
}

/// One polynomial term `c·a^e`.
pub type Term = (u64, u64);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementSpec {
    /// `exp:i`, the power `α^i`.
    Exp(u64),
    /// `coeffs:c0 c1 ...`, ascending coefficients.
    Coeffs(Vec<u64>),
    /// `poly:2a^3+a+1`, a polynomial in `α` (`a`, `x` or `α`).
    Poly(Vec<(bool, Term)>),
    /// `subfield:t`, a generator of `F_{q^t}^*`; only valid as an orbit generator.
    Subfield(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubspaceSpec {
    Exp(Vec<u64>),
    Coeffs(Vec<Vec<u64>>),
    Poly(Vec<Vec<(bool, Term)>>),
}

fn split_prefix(s: &str) -> Result<(&str, &str)> {
    let s = s.trim();
    s.split_once(':')
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| parse_err(format!("missing format prefix in {s:?}")))
}

fn parse_coeff_row(s: &str) -> Result<Vec<u64>> {
    let s = s.trim();
    let s = s.strip_prefix('(').unwrap_or(s);
    let s = s.strip_suffix(')').unwrap_or(s);
    let row = parse_list(s, |c: char| c == ',' || c.is_whitespace())?;
    if row.is_empty() {
        return Err(parse_err("empty coefficient row"));
    }
    Ok(row)
}

fn parse_term(term: &str) -> Result<Term> {
    let term: String = term.chars().filter(|c| !c.is_whitespace()).collect();
    if term.is_empty() {
        return Err(parse_err("empty term"));
    }
    let var_pos = term.find(['a', 'x', 'α']);
    let Some(pos) = var_pos else {
        return Ok((parse_u64(&term)?, 0));
    };
    let coeff_part = term[..pos].trim_end_matches('*');
    let coeff = if coeff_part.is_empty() {
        1
    } else {
        parse_u64(coeff_part)?
    };
    let var_len = term[pos..].chars().next().map_or(1, char::len_utf8);
    let rest = &term[pos + var_len..];
    let exp = if rest.is_empty() {
        1
    } else {
        let e = rest
            .strip_prefix('^')
            .ok_or_else(|| parse_err(format!("unexpected {rest:?} after variable")))?;
        let e = e.trim_start_matches('{').trim_end_matches('}');
        parse_u64(e)?
    };
    Ok((coeff, exp))
}

/// `2a^14 + a^12 - 3a + 1`.
pub fn parse_poly(s: &str) -> Result<Vec<(bool, Term)>> {
    let mut terms = Vec::new();
    let mut negative = false;
    let mut signed = false;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '+' | '-' => {
                if !cur.trim().is_empty() {
                    terms.push((negative, parse_term(&cur)?));
                } else if !terms.is_empty() || signed {
                    return Err(parse_err("dangling sign"));
                }
                cur.clear();
                negative = ch == '-';
                signed = true;
            }
            _ => cur.push(ch),
        }
    }
    if cur.trim().is_empty() {
        return Err(parse_err("polynomial ends without a term"));
    }
    terms.push((negative, parse_term(&cur)?));
    Ok(terms)
}

pub fn parse_element_spec(s: &str) -> Result<ElementSpec> {
    let (prefix, body) = split_prefix(s)?;
    match prefix {
        "exp" => Ok(ElementSpec::Exp(parse_u64(body)?)),
        "coeffs" => Ok(ElementSpec::Coeffs(parse_coeff_row(body)?)),
        "poly" => Ok(ElementSpec::Poly(parse_poly(body)?)),
        "subfield" => {
            let t = parse_u64(body)?;
            if t == 0 {
                return Err(parse_err("subfield degree must be positive"));
            }
            Ok(ElementSpec::Subfield(t as usize))
        }
        other => Err(parse_err(format!("unknown element format {other:?}"))),
    }
}

pub fn parse_subspace_spec(s: &str) -> Result<SubspaceSpec> {
    let (prefix, body) = split_prefix(s)?;
    match prefix {
        "exp" => Ok(SubspaceSpec::Exp(parse_list(body, |c| c == ',')?)),
        "coeffs" => body
            .split(';')
            .filter(|r| !r.trim().is_empty())
            .map(parse_coeff_row)
            .collect::<Result<_>>()
            .map(SubspaceSpec::Coeffs),
        "poly" => body
            .split(';')
            .filter(|r| !r.trim().is_empty())
            .map(parse_poly)
            .collect::<Result<_>>()
            .map(SubspaceSpec::Poly),
        other => Err(parse_err(format!("unknown subspace format {other:?}"))),
    }
}

fn resolve_poly(ctx: &FieldContext, terms: &[(bool, Term)]) -> Result<FieldElement> {
    let p = ctx.p();
    let alpha = ctx.alpha();
    let mut acc = ctx.zero();
    for &(negative, (c, e)) in terms {
        let c = c % p;
        let c = if negative { (p - c) % p } else { c };
        if c == 0 {
            continue;
        }
        let power = ctx.pow(&alpha, e);
        acc = ctx.add(&acc, &ctx.scalar_mul(c as u8, &power));
    }
    Ok(acc)
}

/// Resolves a spec to an element; `subfield:t` resolves to `α^((q^n-1)/(q^t-1))`.
pub fn resolve_element(ctx: &FieldContext, spec: &ElementSpec) -> Result<FieldElement> {
    match spec {
        ElementSpec::Exp(i) => ctx.exp(*i),
        ElementSpec::Coeffs(c) => ctx.element(c),
        ElementSpec::Poly(terms) => resolve_poly(ctx, terms),
        ElementSpec::Subfield(t) => ctx.subfield_generator(*t),
    }
}

pub fn resolve_subspace(ctx: &Arc<FieldContext>, spec: &SubspaceSpec) -> Result<Subspace> {
    let gens = match spec {
        SubspaceSpec::Exp(list) => list
            .iter()
            .map(|&i| ctx.exp(i))
            .collect::<Result<Vec<_>>>()?,
        SubspaceSpec::Coeffs(rows) => rows.iter().map(|r| ctx.element(r)).collect::<Result<_>>()?,
        SubspaceSpec::Poly(polys) => polys
            .iter()
            .map(|t| resolve_poly(ctx, t))
            .collect::<Result<_>>()?,
    };
    Subspace::span(ctx, &gens)
}

pub fn element(ctx: &FieldContext, s: &str) -> Result<FieldElement> {
    resolve_element(ctx, &parse_element_spec(s)?)
}

pub fn subspace(ctx: &Arc<FieldContext>, s: &str) -> Result<Subspace> {
    resolve_subspace(ctx, &parse_subspace_spec(s)?)
}

/// Renders an element as `coeffs:c0 c1 ...`.
pub fn format_element(x: &FieldElement) -> String {
    let body: Vec<String> = x.coeffs().iter().map(u8::to_string).collect();
    format!("coeffs:{}", body.join(" "))
}

/// Renders a subspace as `coeffs:(..);(..)`.
pub fn format_subspace(u: &Subspace) -> String {
    let rows: Vec<String> = u
        .basis()
        .iter()
        .map(|r| {
            let body: Vec<String> = r.coeffs().iter().map(u8::to_string).collect();
            format!("({})", body.join(" "))
        })
        .collect();
    format!("coeffs:{}", rows.join(";"))
}

pub fn format_modulus(m: &[u8]) -> String {
    m.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffsetFile {
    pub v: u64,
    pub n_sub: Option<u64>,
    pub residues: Vec<u64>,
}

/// `v=<int>`, optionally `n_sub=<int>`, then one line of comma-separated
/// residues. Blank lines and `#` comments are ignored.
pub fn parse_diffset_file(s: &str) -> Result<DiffsetFile> {
    let mut v = None;
    let mut n_sub = None;
    let mut residues = None;
    for line in s.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some((key, value)) = line.split_once('=') {
            let slot = match key.trim() {
                "v" => &mut v,
                "n_sub" => &mut n_sub,
                other => return Err(parse_err(format!("unknown key {other:?}"))),
            };
            if slot.replace(parse_u64(value)?).is_some() {
                return Err(parse_err(format!("duplicate key {:?}", key.trim())));
            }
        } else if residues.is_none() {
            let list = parse_list(line, |c| c == ',')?;
            if list.is_empty() {
                return Err(parse_err("residue line holds no residues"));
            }
            residues = Some(list);
        } else {
            return Err(parse_err("more than one residue line"));
        }
    }
    let v = v.ok_or_else(|| parse_err("missing v=<int>"))?;
    if v == 0 {
        return Err(parse_err("v must be positive"));
    }
    Ok(DiffsetFile {
        v,
        n_sub,
        residues: residues.ok_or_else(|| parse_err("missing residue line"))?,
    })
}

pub fn format_diffset_file(f: &DiffsetFile) -> String {
    let mut out = format!("v={}\n", f.v);
    if let Some(n) = f.n_sub {
        out.push_str(&format!("n_sub={n}\n"));
    }
    let body: Vec<String> = f.residues.iter().map(u64::to_string).collect();
    out.push_str(&body.join(","));
    out.push('\n');
    out
}

/// `3`, `2..4` or `2..=4` (both ends inclusive).
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>> {
    let s = s.trim();
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let lo = parse_u64(lo)? as usize;
    let hi = parse_u64(hi)? as usize;
    if lo > hi {
        return Err(parse_err(format!("empty range {s:?}")));
    }
    Ok(lo..=hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn modulus_format() {
        assert_eq!(
            parse_modulus("2,0,1,0,1,1,1,0,0,0,0,0,1").unwrap(),
            vec![2, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 0, 1]
        );
        assert!(parse_modulus("").is_err());
        assert!(parse_modulus("1,,2").is_err());
        assert!(parse_modulus("1,-2").is_err());
    }

    #[test]
    fn element_formats() {
        assert_eq!(parse_element_spec("exp:93").unwrap(), ElementSpec::Exp(93));
        assert_eq!(
            parse_element_spec("coeffs:(1 0 2)").unwrap(),
            ElementSpec::Coeffs(vec![1, 0, 2])
        );
        assert_eq!(
            parse_element_spec("subfield:3").unwrap(),
            ElementSpec::Subfield(3)
        );
        assert_eq!(
            parse_element_spec("poly: 2a^14 + a^12 - 3α + 1").unwrap(),
            ElementSpec::Poly(vec![
                (false, (2, 14)),
                (false, (1, 12)),
                (true, (3, 1)),
                (false, (1, 0))
            ])
        );
        assert!(parse_element_spec("subfield:0").is_err());
        assert!(parse_element_spec("93").is_err());
        assert!(parse_element_spec("poly:a^").is_err());
        assert!(parse_element_spec("poly:a+").is_err());
        assert!(parse_element_spec("poly:++a").is_err());
    }

    #[test]
    fn subspace_formats() {
        assert_eq!(
            parse_subspace_spec("exp:0,13,70,177").unwrap(),
            SubspaceSpec::Exp(vec![0, 13, 70, 177])
        );
        assert_eq!(
            parse_subspace_spec("coeffs:(1 0 0);(0 1 2)").unwrap(),
            SubspaceSpec::Coeffs(vec![vec![1, 0, 0], vec![0, 1, 2]])
        );
        assert!(parse_subspace_spec("rows:1").is_err());
    }

    #[test]
    fn poly_resolution_reduces_high_powers() {
        let ctx = FieldContext::new(2, 4, &[1, 1, 0, 0, 1]).unwrap();
        // a^4 = a + 1
        let x = element(&ctx, "poly:a^4").unwrap();
        assert_eq!(x, ctx.element(&[1, 1, 0, 0]).unwrap());
        let y = element(&ctx, "poly:a^4 - a").unwrap();
        assert_eq!(y, ctx.one());
    }

    #[test]
    fn diffset_file() {
        let f = parse_diffset_file("v=7\n1,2,4\n").unwrap();
        assert_eq!(
            f,
            DiffsetFile {
                v: 7,
                n_sub: None,
                residues: vec![1, 2, 4]
            }
        );
        let g = parse_diffset_file("# rds\nv=63\nn_sub=3\n0, 1, 2\n").unwrap();
        assert_eq!(g.n_sub, Some(3));
        assert!(parse_diffset_file("1,2,4").is_err());
        assert!(parse_diffset_file("v=7\nv=8\n1").is_err());
        assert!(parse_diffset_file("v=7\nw=1\n1").is_err());
        assert!(parse_diffset_file("v=7\n").is_err());
        assert!(parse_diffset_file("v=7\n,\n").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..4").unwrap(), 2..=4);
        assert_eq!(parse_range("2..=4").unwrap(), 2..=4);
        assert_eq!(parse_range("3").unwrap(), 3..=3);
        assert!(parse_range("4..2").is_err());
    }

    proptest! {
        #[test]
        fn diffset_file_roundtrip(v in 1u64..1000, n_sub in proptest::option::of(1u64..50),
                                  residues in proptest::collection::vec(0u64..1000, 0..20)) {
            let f = DiffsetFile { v, n_sub, residues };
            let text = format_diffset_file(&f);
            // An empty residue list cannot be written down: the file needs a residue line.
            if f.residues.is_empty() {
                prop_assert!(parse_diffset_file(&text).is_err());
            } else {
                prop_assert_eq!(parse_diffset_file(&text).unwrap(), f);
            }
        }

        #[test]
        fn parsers_never_panic(s in "\\PC{0,40}") {
            let _ = parse_modulus(&s);
            let _ = parse_element_spec(&s);
            let _ = parse_subspace_spec(&s);
            let _ = parse_diffset_file(&s);
            let _ = parse_range(&s);
        }
    }
}
