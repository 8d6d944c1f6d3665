//! Text formats: the variety file, the toric exponent-matrix file, and the
//! short spec strings accepted on the command line.
//!
//! Variety file:
//!
//! ```text
//! # twisted cubic
//! params 2
//! degree 3
//! t0^3
//! t0^2*t1
//! t0 t1^2
//! t1^3
//! ```
//!
//! Each map is a sum of terms `coeff * t0^a0 ... tn^an`; the coefficient is
//! an integer or `p/q`, factors may be separated by `*` or whitespace.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::families::{delpezzo, segre, toric, veronese};
use super::polynomial::Polynomial;
use super::{nondegeneracy_check, Parametrization};
use crate::error::{Error, Result};
use crate::exactalg::{PrimeField, SeededSampler};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(s: &str) -> std::result::Result<Vec<Token>, String> {
    let mut out = Vec::new();
    let mut chars = s.char_indices().peekable();
    while let Some(&(pos, ch)) = chars.peek() {
        match ch {
            c if c.is_whitespace() => {
                chars.next();
            }
            '+' | '-' | '*' | '/' | '^' => {
                chars.next();
                out.push(match ch {
                    '+' => Token::Plus,
                    '-' => Token::Minus,
                    '*' => Token::Star,
                    '/' => Token::Slash,
                    _ => Token::Caret,
                });
            }
            '0'..='9' => {
                let mut end = pos;
                while let Some(&(i, c)) = chars.peek() {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    end = i + 1;
                    chars.next();
                }
                out.push(Token::Num(s[pos..end].parse().expect("digits")));
            }
            't' => {
                chars.next();
                let start = pos + 1;
                let mut end = start;
                while let Some(&(i, c)) = chars.peek() {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    end = i + 1;
                    chars.next();
                }
                if end == start {
                    return Err(format!(
                        "variable at column {} needs an index, e.g. t0",
                        pos + 1
                    ));
                }
                let idx = s[start..end]
                    .parse()
                    .map_err(|_| format!("variable index too large at column {}", pos + 1))?;
                out.push(Token::Var(idx));
            }
            other => {
                return Err(format!(
                    "unexpected character {other:?} at column {}",
                    pos + 1
                ))
            }
        }
    }
    Ok(out)
}

fn parse_polynomial(s: &str, nvars: usize) -> std::result::Result<Polynomial, String> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut terms = Vec::new();
    let mut i = 0;
    let mut first = true;
    while i < toks.len() {
        let mut sign = BigRational::one();
        match toks[i] {
            Token::Plus => i += 1,
            Token::Minus => {
                sign = -sign;
                i += 1;
            }
            _ if first => {}
            _ => return Err("expected '+' or '-' between terms".into()),
        }
        first = false;
        let mut coeff = sign;
        let mut exps = vec![0u32; nvars];
        let mut saw_factor = false;
        if let Some(Token::Num(n)) = toks.get(i) {
            let mut c = BigRational::from_integer(n.clone());
            i += 1;
            if toks.get(i) == Some(&Token::Slash) {
                let Some(Token::Num(d)) = toks.get(i + 1) else {
                    return Err("expected denominator after '/'".into());
                };
                if d.is_zero() {
                    return Err("zero denominator".into());
                }
                c = BigRational::new(n.clone(), d.clone());
                i += 2;
            }
            coeff *= c;
            saw_factor = true;
        }
        loop {
            let save = i;
            if saw_factor && toks.get(i) == Some(&Token::Star) {
                i += 1;
            }
            let Some(&Token::Var(v)) = toks.get(i) else {
                if i != save {
                    return Err("expected a variable after '*'".into());
                }
                break;
            };
            if v >= nvars {
                return Err(format!("t{v} out of range for {nvars} parameters"));
            }
            i += 1;
            let mut e = 1u32;
            if toks.get(i) == Some(&Token::Caret) {
                let Some(Token::Num(n)) = toks.get(i + 1) else {
                    return Err("expected exponent after '^'".into());
                };
                e = n.try_into().map_err(|_| "exponent too large".to_string())?;
                i += 2;
            }
            exps[v] += e;
            saw_factor = true;
        }
        if !saw_factor {
            return Err("term has neither coefficient nor variables".into());
        }
        terms.push((coeff, exps));
    }
    Ok(Polynomial::new(nvars, terms))
}

fn header_value(line: &str, key: &str, lineno: usize) -> Result<usize> {
    let mut parts = line.split_whitespace();
    let parse_err = |message: String| Error::Parse {
        line: lineno,
        message,
    };
    if parts.next() != Some(key) {
        return Err(parse_err(format!("expected `{key} <count>`")));
    }
    let v = parts
        .next()
        .ok_or_else(|| parse_err(format!("missing value after `{key}`")))?
        .parse()
        .map_err(|_| parse_err(format!("`{key}` value is not a count")))?;
    if parts.next().is_some() {
        return Err(parse_err(format!("trailing text after `{key}`")));
    }
    Ok(v)
}

/// Meaningful lines with their 1-based line numbers; `#` starts a comment.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// Parses the variety file format. Homogeneity is checked against the
/// declared degree; non-degeneracy is not (see [`from_file`]).
pub fn parse_variety(text: &str, label: &str) -> Result<Parametrization> {
    let mut lines = content_lines(text);
    let (l1, params_line) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing `params` line".into(),
    })?;
    let params = header_value(params_line, "params", l1)?;
    let (l2, degree_line) = lines.next().ok_or(Error::Parse {
        line: l1 + 1,
        message: "missing `degree` line".into(),
    })?;
    let degree = header_value(degree_line, "degree", l2)? as u32;
    if params < 2 {
        return Err(Error::Parse {
            line: l1,
            message: "need at least 2 parameters".into(),
        });
    }
    let mut maps = Vec::new();
    for (lineno, line) in lines {
        let p = parse_polynomial(line, params).map_err(|message| Error::Parse {
            line: lineno,
            message,
        })?;
        if p.is_zero() {
            return Err(Error::Parse {
                line: lineno,
                message: "map is identically zero".into(),
            });
        }
        for (_, e) in p.terms() {
            let d: u32 = e.iter().sum();
            if d != degree {
                return Err(Error::Inhomogeneous(format!(
                    "line {lineno}: term of degree {d} in a degree-{degree} parametrization"
                )));
            }
        }
        maps.push(p);
    }
    Parametrization::new(label, params, maps)
}

/// Reads a variety file and rejects it unless its coordinates are linearly
/// independent on the image.
pub fn from_file(path: impl AsRef<Path>) -> Result<Parametrization> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let x = parse_variety(&text, &format!("file:{}", path.display()))?;
    let field = PrimeField::from_index(0);
    let mut sampler = SeededSampler::for_task(0, "nondegeneracy", 0, 0);
    if !nondegeneracy_check(&x, &mut sampler, &field)? {
        return Err(Error::Degenerate(format!(
            "the maps of {} span a proper linear subspace",
            path.display()
        )));
    }
    Ok(x)
}

/// Exponent matrix: one whitespace-separated row per parameter, one column
/// per monomial; `#` comments allowed.
pub fn parse_exponent_matrix(text: &str) -> Result<Vec<Vec<u32>>> {
    content_lines(text)
        .map(|(lineno, line)| {
            line.split_whitespace()
                .map(|tok| {
                    tok.parse().map_err(|_| Error::Parse {
                        line: lineno,
                        message: format!("`{tok}` is not a nonnegative exponent"),
                    })
                })
                .collect()
        })
        .collect()
}

fn spec_args(body: &str) -> Result<Vec<(&str, &str)>> {
    body.split(',')
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| Error::InvalidInput(format!("expected key=value, got `{kv}`")))
        })
        .collect()
}

fn take_count(args: &[(&str, &str)], key: &str) -> Result<usize> {
    let v = args
        .iter()
        .find(|(k, _)| *k == key)
        .ok_or_else(|| Error::InvalidInput(format!("missing `{key}=`")))?
        .1;
    v.parse()
        .map_err(|_| Error::InvalidInput(format!("`{key}={v}` is not a count")))
}

fn check_keys(args: &[(&str, &str)], allowed: &[&str]) -> Result<()> {
    match args.iter().find(|(k, _)| !allowed.contains(k)) {
        Some((k, _)) => Err(Error::InvalidInput(format!("unknown key `{k}`"))),
        None => Ok(()),
    }
}

/// Builds a variety from a spec string: `veronese:n=2,d=3`,
/// `segre:a=2,b=2`, `delpezzo:k=6`, `toric:file=PATH` or `file:PATH`.
/// `seed` drives the Del Pezzo base points.
pub fn from_spec(spec: &str, seed: u64) -> Result<Parametrization> {
    let (family, body) = spec
        .split_once(':')
        .ok_or_else(|| Error::InvalidInput(format!("`{spec}` is not FAMILY:ARGS")))?;
    match family {
        "veronese" => {
            let args = spec_args(body)?;
            check_keys(&args, &["n", "d"])?;
            veronese(take_count(&args, "n")?, take_count(&args, "d")? as u32)
        }
        "segre" => {
            let args = spec_args(body)?;
            check_keys(&args, &["a", "b"])?;
            segre(take_count(&args, "a")?, take_count(&args, "b")?)
        }
        "delpezzo" => {
            let args = spec_args(body)?;
            check_keys(&args, &["k"])?;
            let k = take_count(&args, "k")?;
            delpezzo(
                k,
                &mut SeededSampler::for_task(seed, "delpezzo", k as u64, 0),
            )
        }
        "toric" => {
            let path = body
                .strip_prefix("file=")
                .ok_or_else(|| Error::InvalidInput("expected toric:file=PATH".into()))?;
            let e = parse_exponent_matrix(&std::fs::read_to_string(path)?)?;
            toric(&e)
        }
        "file" => from_file(body),
        other => Err(Error::InvalidInput(format!("unknown family `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TWISTED_CUBIC: &str =
        "# twisted cubic\nparams 2\ndegree 3\nt0^3\nt0^2*t1\nt0 t1^2  # spaces work too\nt1^3\n";

    #[test]
    fn parses_twisted_cubic() {
        let x = parse_variety(TWISTED_CUBIC, "tc").unwrap();
        assert_eq!(x.maps(), veronese(1, 3).unwrap().maps());
    }

    #[test]
    fn rational_coefficients_and_signs() {
        let p = parse_polynomial("-3/2 * t0^2*t1 + t1^3 - 2 t0 t1 t1", 2).unwrap();
        assert_eq!(p.to_string(), "-3/2*t0^2*t1 - 2*t0*t1^2 + t1^3");
    }

    #[test]
    fn mixed_degrees_are_rejected() {
        let text = "params 2\ndegree 2\nt0^2\nt0*t1\nt1^3\n";
        assert!(matches!(
            parse_variety(text, "x"),
            Err(Error::Inhomogeneous(_))
        ));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "params 2\ndegree 2\n\nt0^2\nt0*t9\n";
        match parse_variety(text, "x") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("unexpected {other:?}"),
        }
        match parse_variety("degree 2\n", "x") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn repeated_map_fails_nondegeneracy_on_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rep.txt");
        std::fs::write(&path, "params 2\ndegree 2\nt0^2\nt0^2\nt1^2\n").unwrap();
        assert!(matches!(from_file(&path), Err(Error::Degenerate(_))));
        let ok = dir.path().join("tc.txt");
        std::fs::write(&ok, TWISTED_CUBIC).unwrap();
        assert_eq!(from_file(&ok).unwrap().ambient_dim(), 3);
    }

    #[test]
    fn spec_strings() {
        assert_eq!(from_spec("veronese:n=2,d=3", 0).unwrap().ambient_dim(), 9);
        assert_eq!(from_spec("segre:a=2,b=2", 0).unwrap().ambient_dim(), 8);
        assert_eq!(from_spec("delpezzo:k=6", 0).unwrap().ambient_dim(), 3);
        assert!(from_spec("veronese:n=2,d=1", 0).is_err());
        assert!(from_spec("veronese:n=2", 0).is_err());
        assert!(from_spec("veronese:n=2,d=3,q=1", 0).is_err());
        assert!(from_spec("grassmann:k=2", 0).is_err());
        assert!(from_spec("veronese", 0).is_err());
    }

    #[test]
    fn toric_spec_reads_exponent_rows() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scroll.txt");
        // scroll S(1,2): lattice points (0,0),(1,0),(0,1),(1,1),(2,1) lifted to degree 3
        std::fs::write(&path, "# scroll\n0 1 0 1 2\n0 0 1 1 1\n3 2 2 1 0\n").unwrap();
        let x = from_spec(&format!("toric:file={}", path.display()), 0).unwrap();
        assert_eq!(x.ambient_dim(), 4);
        assert_eq!(x.param_count(), 3);
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        let term = (-50i64..50, 1i64..7, prop::collection::vec(0u32..4, 3));
        prop::collection::vec(term, 1..6).prop_map(|ts| {
            Polynomial::new(
                3,
                ts.into_iter()
                    .map(|(n, d, e)| (BigRational::new(n.into(), d.into()), e)),
            )
        })
    }

    proptest! {
        #[test]
        fn display_then_parse_is_identity(p in arb_poly()) {
            prop_assume!(!p.is_zero());
            prop_assert_eq!(parse_polynomial(&p.to_string(), 3).unwrap(), p);
        }
    }
}
