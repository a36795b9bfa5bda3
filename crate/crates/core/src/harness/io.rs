//! File formats: signal and edge-list CSV, PGM images, ASCII PLY point
//! clouds and the results CSV.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::scalar::Scalar;

use super::metrics::Image;
use super::pipelines::ResultRow;

fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_text(path: &Path) -> Result<String> {
    let bytes = read_bytes(path)?;
    String::from_utf8(bytes).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        line: 0,
        message: format!("not valid UTF-8: {e}"),
    })
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

fn parse_real<T: Scalar>(path: &Path, line: usize, tok: &str) -> Result<T> {
    let v: f64 = tok
        .trim()
        .parse()
        .map_err(|_| parse_err(path, line, format!("expected a number, found '{}'", tok.trim())))?;
    if !v.is_finite() {
        return Err(parse_err(path, line, format!("non-finite value '{}'", tok.trim())));
    }
    Ok(T::lit(v))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// One real per line, with an optional `value` header.
pub fn load_signal_csv<T: Scalar>(path: impl AsRef<Path>) -> Result<Vec<T>> {
    let path = path.as_ref();
    let text = read_text(path)?;
    let mut out = Vec::new();
    for (k, (line, l)) in content_lines(&text).enumerate() {
        if k == 0 && l.eq_ignore_ascii_case("value") {
            continue;
        }
        out.push(parse_real(path, line, l)?);
    }
    if out.is_empty() {
        return Err(parse_err(path, 0, "no values"));
    }
    Ok(out)
}

/// `re,im` rows (a single column is read as real), with an optional header.
pub fn load_complex_csv<T: Scalar>(path: impl AsRef<Path>) -> Result<Vec<Complex<T>>> {
    let path = path.as_ref();
    let text = read_text(path)?;
    let mut out = Vec::new();
    for (k, (line, l)) in content_lines(&text).enumerate() {
        let fields: Vec<&str> = l.split(',').map(str::trim).collect();
        if k == 0 && fields[0].parse::<f64>().is_err() {
            continue;
        }
        let v = match fields.as_slice() {
            [re] => Complex::new(parse_real(path, line, re)?, T::zero()),
            [re, im] => Complex::new(parse_real(path, line, re)?, parse_real(path, line, im)?),
            _ => return Err(parse_err(path, line, format!("expected 're,im', found '{l}'"))),
        };
        out.push(v);
    }
    if out.is_empty() {
        return Err(parse_err(path, 0, "no values"));
    }
    Ok(out)
}

/// `i,j,w` rows with 0-based indices, each undirected edge once; a missing
/// `w` means weight 1. The node count is `n` if given, else the largest
/// index plus one.
pub fn load_edges_csv<T: Scalar>(path: impl AsRef<Path>, n: Option<usize>) -> Result<Graph<T>> {
    let path = path.as_ref();
    let text = read_text(path)?;
    let mut edges = Vec::new();
    for (k, (line, l)) in content_lines(&text).enumerate() {
        let fields: Vec<&str> = l.split(',').map(str::trim).collect();
        if k == 0 && fields[0].parse::<usize>().is_err() {
            continue;
        }
        if fields.len() != 2 && fields.len() != 3 {
            return Err(parse_err(path, line, format!("expected 'i,j,w', found '{l}'")));
        }
        let idx = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| parse_err(path, line, format!("bad node index '{s}'")))
        };
        let (i, j) = (idx(fields[0])?, idx(fields[1])?);
        let w = match fields.get(2) {
            Some(s) => parse_real(path, line, s)?,
            None => T::one(),
        };
        if i == j {
            return Err(parse_err(path, line, format!("self-loop at node {i}")));
        }
        if w < T::zero() {
            return Err(parse_err(path, line, "negative edge weight"));
        }
        edges.push((i, j, w));
    }
    let max = edges.iter().map(|e| e.0.max(e.1) + 1).max().unwrap_or(0);
    let n = match n {
        Some(n) if n < max => {
            return Err(parse_err(path, 0, format!("edge index {} exceeds node count {n}", max - 1)));
        }
        Some(n) => n,
        None => max,
    };
    if n == 0 {
        return Err(parse_err(path, 0, "no edges"));
    }
    Graph::from_edges(n, &edges)
}

struct Tokens<'a> {
    bytes: &'a [u8],
    pos: usize,
    line: usize,
}

impl<'a> Tokens<'a> {
    fn next(&mut self) -> Option<&'a str> {
        loop {
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                if self.bytes[self.pos] == b'\n' {
                    self.line += 1;
                }
                self.pos += 1;
            }
            if self.pos < self.bytes.len() && self.bytes[self.pos] == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
                continue;
            }
            break;
        }
        let start = self.pos;
        while self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        (start < self.pos).then(|| std::str::from_utf8(&self.bytes[start..self.pos]).unwrap_or(""))
    }
}

/// Reads a P2 or P5 image and divides intensities by `maxval`.
pub fn load_pgm<T: Scalar>(path: impl AsRef<Path>) -> Result<Image<T>> {
    let path = path.as_ref();
    let bytes = read_bytes(path)?;
    let mut tok = Tokens {
        bytes: &bytes,
        pos: 0,
        line: 1,
    };
    let magic = tok.next().ok_or_else(|| parse_err(path, 1, "empty file"))?;
    let binary = match magic {
        "P2" => false,
        "P5" => true,
        other => return Err(parse_err(path, 1, format!("unsupported PGM magic '{other}'"))),
    };
    let mut header = [0usize; 3];
    for (slot, name) in header.iter_mut().zip(["width", "height", "maxval"]) {
        let line = tok.line;
        let t = tok.next().ok_or_else(|| parse_err(path, line, format!("missing {name}")))?;
        *slot = t
            .parse()
            .map_err(|_| parse_err(path, tok.line, format!("bad {name} '{t}'")))?;
    }
    let [width, height, maxval] = header;
    if width == 0 || height == 0 {
        return Err(parse_err(path, tok.line, "image has zero size"));
    }
    if maxval == 0 || maxval > 65535 || (binary && maxval > 255) {
        return Err(parse_err(path, tok.line, format!("unsupported maxval {maxval}")));
    }
    let scale = T::from_count(maxval);
    let n = width * height;
    let mut data = Vec::with_capacity(n);
    if binary {
        let start = tok.pos + 1;
        if bytes.len() < start + n {
            return Err(parse_err(path, tok.line, format!("expected {n} pixel bytes, found {}", bytes.len().saturating_sub(start))));
        }
        for &b in &bytes[start..start + n] {
            if usize::from(b) > maxval {
                return Err(parse_err(path, tok.line, format!("pixel {b} exceeds maxval {maxval}")));
            }
            data.push(T::from_count(usize::from(b)) / scale);
        }
    } else {
        for k in 0..n {
            let line = tok.line;
            let t = tok
                .next()
                .ok_or_else(|| parse_err(path, line, format!("expected {n} pixels, found {k}")))?;
            let v: usize = t
                .parse()
                .map_err(|_| parse_err(path, tok.line, format!("bad pixel value '{t}'")))?;
            if v > maxval {
                return Err(parse_err(path, tok.line, format!("pixel {v} exceeds maxval {maxval}")));
            }
            data.push(T::from_count(v) / scale);
        }
    }
    Image::new(width, height, data)
}

/// Writes a binary PGM, mapping `[0, 1]` to `0..=maxval` with rounding and
/// clamping.
pub fn write_pgm<T: Scalar>(path: impl AsRef<Path>, image: &Image<T>, maxval: u8) -> Result<()> {
    let path = path.as_ref();
    let mut out = format!("P5\n{} {}\n{}\n", image.width, image.height, maxval).into_bytes();
    let m = f64::from(maxval);
    for &v in &image.data {
        let q = (v.to_f64_lossy() * m).round().clamp(0.0, m);
        out.push(q as u8);
    }
    fs::write(path, out).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Vertex positions of an ASCII PLY file. Properties other than `x`, `y`,
/// `z` are ignored.
pub fn load_ply_ascii<T: Scalar>(path: impl AsRef<Path>) -> Result<Vec<[T; 3]>> {
    let path = path.as_ref();
    let text = read_text(path)?;
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    match lines.next() {
        Some((_, "ply")) => {}
        _ => return Err(parse_err(path, 1, "missing 'ply' magic")),
    }

    // (name, count, properties) per element, in file order
    let mut elements: Vec<(String, usize, Vec<String>)> = Vec::new();
    let mut ascii = false;
    let mut header_done = false;
    for (line, l) in lines.by_ref() {
        let parts: Vec<&str> = l.split_whitespace().collect();
        match parts.as_slice() {
            [] => {}
            ["comment", ..] | ["obj_info", ..] => {}
            ["format", fmt, _] => {
                if *fmt != "ascii" {
                    return Err(parse_err(path, line, format!("unsupported PLY format '{fmt}'")));
                }
                ascii = true;
            }
            ["element", name, count] => {
                let count = count
                    .parse()
                    .map_err(|_| parse_err(path, line, format!("bad element count '{count}'")))?;
                elements.push((name.to_string(), count, Vec::new()));
            }
            ["property", "list", ..] => {
                let el = elements
                    .last_mut()
                    .ok_or_else(|| parse_err(path, line, "property before element"))?;
                if el.0 == "vertex" {
                    return Err(parse_err(path, line, "list properties on vertices are not supported"));
                }
                el.2.push("list".into());
            }
            ["property", _ty, name] => {
                let el = elements
                    .last_mut()
                    .ok_or_else(|| parse_err(path, line, "property before element"))?;
                el.2.push(name.to_string());
            }
            ["end_header"] => {
                header_done = true;
                break;
            }
            _ => return Err(parse_err(path, line, format!("unexpected header line '{l}'"))),
        }
    }
    if !header_done {
        return Err(parse_err(path, 0, "missing end_header"));
    }
    if !ascii {
        return Err(parse_err(path, 0, "missing 'format ascii' line"));
    }

    let mut skip = 0usize;
    let mut vertex = None;
    for (name, count, props) in &elements {
        if name == "vertex" {
            vertex = Some((*count, props));
            break;
        }
        skip += count;
    }
    let (count, props) = vertex.ok_or_else(|| parse_err(path, 0, "no vertex element"))?;
    let col = |axis: &str| {
        props
            .iter()
            .position(|p| p == axis)
            .ok_or_else(|| parse_err(path, 0, format!("vertex property '{axis}' missing")))
    };
    let cols = [col("x")?, col("y")?, col("z")?];

    let mut body = lines.filter(|(_, l)| !l.is_empty()).skip(skip);
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let (line, l) = body
            .next()
            .ok_or_else(|| parse_err(path, 0, format!("expected {count} vertices, found {k}")))?;
        let fields: Vec<&str> = l.split_whitespace().collect();
        if fields.len() < props.len() {
            return Err(parse_err(path, line, format!("expected {} values, found {}", props.len(), fields.len())));
        }
        out.push([
            parse_real(path, line, fields[cols[0]])?,
            parse_real(path, line, fields[cols[1]])?,
            parse_real(path, line, fields[cols[2]])?,
        ]);
    }
    Ok(out)
}

/// `%g`-style rendering with six significant digits.
pub fn format_g(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (5 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub const RESULTS_HEADER: &str = "method,axis,family,sigma,segment,alpha,theta,kappa,mse,psnr,ssim";

pub fn results_csv<T: Scalar>(rows: &[ResultRow<T>]) -> String {
    let mut s = String::from(RESULTS_HEADER);
    s.push('\n');
    for r in rows {
        let g = |v: T| format_g(v.to_f64_lossy());
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.method,
            r.axis,
            r.family,
            g(r.sigma),
            r.segment,
            g(r.alpha),
            g(r.theta),
            g(r.kappa),
            g(r.mse),
            g(r.psnr),
            r.ssim.map(g).unwrap_or_default()
        );
    }
    s
}

pub fn write_results_csv<T: Scalar>(rows: &[ResultRow<T>], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, results_csv(rows)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
