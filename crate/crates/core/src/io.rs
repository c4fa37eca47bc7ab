//! Text formats for functions, catalogs and coloring certificates.
//!
//! Function file:
//!
//! ```text
//! n=5 m=5 modulus=25
//! poly:
//! 1 7
//! ```
//!
//! or `tt:` followed by 2^n hex values in index order. Blank lines and
//! lines starting with `#` are ignored everywhere. A catalog is a sequence
//! of `[entry <label>]` blocks, each holding an optional `tags: a, b` line
//! and a function file. Matrix files are handled by
//! [`BitMatrix::from_text`](crate::BitMatrix::from_text).

use std::fs;
use std::path::Path;

use crate::error::{parse_err, Error, Result};
use crate::flats::Subspace;
use crate::gf2n::{parse_hex, FieldContext};
use crate::grassmann::{ColoringCertificate, GrassmannParams};
use crate::search::{CatalogEntry, FunctionCatalog};
use crate::vecfun::VectorialFunction;

/// Non-empty, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses `key=value` tokens; unknown keys are errors.
fn parse_header<'a>(line: usize, text: &'a str, keys: &[&str]) -> Result<Vec<Option<&'a str>>> {
    let mut out = vec![None; keys.len()];
    for tok in text.split_whitespace() {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| parse_err(line, format!("expected key=value, got {tok:?}")))?;
        let slot = keys
            .iter()
            .position(|&key| key == k)
            .ok_or_else(|| parse_err(line, format!("unknown header key {k:?}")))?;
        out[slot] = Some(v);
    }
    Ok(out)
}

fn parse_u32(line: usize, what: &str, v: Option<&str>) -> Result<u32> {
    let v = v.ok_or_else(|| parse_err(line, format!("missing {what}=")))?;
    v.parse().map_err(|_| parse_err(line, format!("bad {what} value {v:?}")))
}

fn hex(line: usize, s: &str) -> Result<u32> {
    parse_hex(s).ok_or_else(|| parse_err(line, format!("bad hex value {s:?}")))
}

fn parse_function_lines<'a>(
    mut lines: impl Iterator<Item = (usize, &'a str)>,
    fallback_modulus: Option<u32>,
) -> Result<VectorialFunction> {
    let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "missing `n=.. m=..` header"))?;
    let h = parse_header(ln, header, &["n", "m", "modulus"])?;
    let n = parse_u32(ln, "n", h[0])?;
    let m = parse_u32(ln, "m", h[1])?;
    let modulus = h[2].map(|v| hex(ln, v)).transpose()?.or(fallback_modulus);
    let (ln, kind) = lines.next().ok_or_else(|| parse_err(ln + 1, "missing `poly:` or `tt:`"))?;
    match kind {
        "poly:" => {
            if m != n {
                return Err(parse_err(ln, format!("polynomial form needs m = n, got n={n} m={m}")));
            }
            let ctx = match modulus {
                Some(p) => FieldContext::new(n, p)?,
                None => FieldContext::with_default_modulus(n)?,
            };
            let mut terms = Vec::new();
            for (ln, l) in lines {
                let mut parts = l.split_whitespace();
                let (Some(c), Some(e), None) = (parts.next(), parts.next(), parts.next()) else {
                    return Err(parse_err(ln, "expected `<coeff-hex> <exponent>`"));
                };
                let e: u64 = e.parse().map_err(|_| parse_err(ln, format!("bad exponent {e:?}")))?;
                terms.push((hex(ln, c)?, e));
            }
            VectorialFunction::from_univariate(&ctx, &terms)
        }
        "tt:" => {
            let table = lines.map(|(ln, l)| hex(ln, l)).collect::<Result<Vec<_>>>()?;
            VectorialFunction::new(n, m, table)
        }
        other => Err(parse_err(ln, format!("expected `poly:` or `tt:`, got {other:?}"))),
    }
}

pub fn parse_function(text: &str) -> Result<VectorialFunction> {
    parse_function_lines(content_lines(text), None)
}

/// Like [`parse_function`], but a `poly:` file without a `modulus=` key is
/// read over `modulus` instead of the default.
pub fn parse_function_with_modulus(text: &str, modulus: Option<u32>) -> Result<VectorialFunction> {
    parse_function_lines(content_lines(text), modulus)
}

/// Truth-table form, which round-trips any function.
pub fn write_function(f: &VectorialFunction) -> String {
    let mut s = format!("n={} m={}\ntt:\n", f.n(), f.m());
    for v in f.table() {
        s.push_str(&format!("{v:x}\n"));
    }
    s
}

/// An `[entry <label>]` header line, its label and the numbered lines below it.
type Block<'a> = (usize, String, Vec<(usize, &'a str)>);

pub fn parse_catalog(text: &str) -> Result<FunctionCatalog> {
    let mut blocks: Vec<Block> = Vec::new();
    for (ln, l) in content_lines(text) {
        if let Some(rest) = l.strip_prefix("[entry") {
            let label = rest
                .strip_suffix(']')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .ok_or_else(|| parse_err(ln, "expected `[entry <label>]`"))?;
            blocks.push((ln, label.to_string(), Vec::new()));
        } else {
            let block = blocks.last_mut().ok_or_else(|| parse_err(ln, "content before first `[entry ...]`"))?;
            block.2.push((ln, l));
        }
    }
    let mut entries = Vec::new();
    for (ln, label, mut lines) in blocks {
        let mut tags = Vec::new();
        if let Some(t) = lines.first().and_then(|(_, l)| l.strip_prefix("tags:")) {
            tags = t.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
            lines.remove(0);
        }
        if lines.is_empty() {
            return Err(parse_err(ln, format!("entry {label:?} has no function")));
        }
        let function = parse_function_lines(lines.into_iter(), None)?;
        entries.push(CatalogEntry { label, function, tags });
    }
    FunctionCatalog::new(entries)
}

pub fn write_catalog(catalog: &FunctionCatalog) -> String {
    let mut s = String::new();
    for e in catalog.entries() {
        s.push_str(&format!("[entry {}]\n", e.label));
        if !e.tags.is_empty() {
            s.push_str(&format!("tags: {}\n", e.tags.join(", ")));
        }
        s.push_str(&write_function(&e.function));
    }
    s
}

pub fn parse_certificate(text: &str) -> Result<ColoringCertificate> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "missing certificate header"))?;
    let h = parse_header(ln, header, &["n", "k", "t", "m"])?;
    let params = GrassmannParams::new(
        parse_u32(ln, "n", h[0])?,
        parse_u32(ln, "k", h[1])?,
        parse_u32(ln, "t", h[2])?,
    )?;
    let m = parse_u32(ln, "m", h[3])?;
    let mut assignment = Vec::new();
    for (ln, l) in lines {
        let mut parts = l.split_whitespace();
        let (Some(basis), Some(color), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(parse_err(ln, "expected `<basis-hex,...> <color-hex>`"));
        };
        let vs = basis.split(',').map(|b| hex(ln, b)).collect::<Result<Vec<_>>>()?;
        let s = Subspace::span(params.n, &vs)?;
        if s.dim() != params.k || vs.len() != params.k as usize {
            return Err(parse_err(ln, format!("basis does not span a {}-space", params.k)));
        }
        assignment.push((s, hex(ln, color)?));
    }
    ColoringCertificate::from_assignment(params, m, assignment)
}

pub fn write_certificate(cert: &ColoringCertificate) -> String {
    let p = cert.params();
    let mut s = format!("n={} k={} t={} m={}\n", p.n, p.k, p.t, cert.m());
    for (space, c) in cert.iter() {
        s.push_str(&format!("{space} {c:x}\n"));
    }
    s
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

pub fn read_function(path: impl AsRef<Path>) -> Result<VectorialFunction> {
    parse_function(&read(path.as_ref())?)
}

pub fn read_function_with_modulus(path: impl AsRef<Path>, modulus: Option<u32>) -> Result<VectorialFunction> {
    parse_function_with_modulus(&read(path.as_ref())?, modulus)
}

pub fn read_catalog(path: impl AsRef<Path>) -> Result<FunctionCatalog> {
    let mut c = parse_catalog(&read(path.as_ref())?)?;
    c.source = Some(path.as_ref().to_path_buf());
    Ok(c)
}

pub fn read_certificate(path: impl AsRef<Path>) -> Result<ColoringCertificate> {
    parse_certificate(&read(path.as_ref())?)
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<crate::BitMatrix> {
    crate::BitMatrix::from_text(&read(path.as_ref())?)
}

/// The n=5 sample catalog of power maps shipped with the crate.
pub const N5_SAMPLE_CATALOG: &str = include_str!("../data/n5_sample.catalog");
