use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use tuttebound::{Error, ExtendedComplex};

pub const EXIT_DOMAIN: u8 = 2;
pub const EXIT_NONCONVERGENCE: u8 = 3;

/// What a subcommand produced: the primary artifact plus a summary for the
/// manifest. `converged = false` turns a successful run into exit code 3.
pub struct Artifact {
    pub body: String,
    pub format: &'static str,
    pub summary: Value,
    pub converged: bool,
}

impl Artifact {
    pub fn json<T: Serialize>(value: &T) -> Result<Self> {
        let mut body = serde_json::to_string_pretty(value)?;
        body.push('\n');
        Ok(Artifact { body, format: "json", summary: Value::Null, converged: true })
    }

    pub fn csv(body: String) -> Self {
        Artifact { body, format: "csv", summary: Value::Null, converged: true }
    }

    pub fn with_summary(mut self, summary: Value) -> Self {
        self.summary = summary;
        self
    }

    pub fn converged(mut self, ok: bool) -> Self {
        self.converged = ok;
        self
    }
}

/// Builds CSV text; every float uses the shortest round-trip representation.
pub struct Csv(String);

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Csv(format!("{}\n", header.join(",")))
    }

    pub fn row(&mut self, cells: &[String]) {
        let _ = writeln!(self.0, "{}", cells.join(","));
    }

    pub fn finish(self) -> String {
        self.0
    }
}

pub fn num(x: f64) -> String {
    format!("{x}")
}

pub fn complex_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

pub fn ext_json(z: ExtendedComplex) -> Value {
    match z {
        ExtendedComplex::Finite(z) => complex_json(z),
        ExtendedComplex::Infinity => json!("inf"),
        ExtendedComplex::Undefined => json!("undef"),
    }
}

/// Parses `a+bi`, `a-bi`, `a`, `bi`, `i` and `-i`; spaces are ignored.
pub fn parse_complex(text: &str) -> std::result::Result<Complex64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot read {text:?} as a complex number; expected a form like 1.5-2i");
    if s.is_empty() {
        return Err(bad());
    }
    let real = |p: &str| p.parse::<f64>().map_err(|_| bad());
    let imag = |p: &str| match p {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => p.parse::<f64>().map_err(|_| bad()),
    };
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return Ok(Complex64::new(real(&s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let z = match split {
        Some(k) => Complex64::new(real(&body[..k])?, imag(&body[k..])?),
        None => Complex64::new(0.0, imag(body)?),
    };
    if z.is_finite() {
        Ok(z)
    } else {
        Err(bad())
    }
}

/// Exit code for a failed run.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::NonConvergence(_)) => EXIT_NONCONVERGENCE,
        Some(_) => EXIT_DOMAIN,
        None => 1,
    }
}

pub struct Destination {
    pub out: Option<PathBuf>,
    pub manifest: Option<PathBuf>,
}

impl Destination {
    pub fn write_artifact(&self, artifact: &Artifact) -> Result<()> {
        match &self.out {
            Some(path) => write_file(path, &artifact.body),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(artifact.body.as_bytes())?;
                stdout.flush()?;
                Ok(())
            }
        }
    }

    /// Manifest path: `--manifest`, else next to `--out`; `None` means stderr.
    fn manifest_path(&self) -> Option<PathBuf> {
        self.manifest.clone().or_else(|| {
            self.out.as_ref().map(|p| {
                let mut name = p.file_name().unwrap_or_default().to_os_string();
                name.push(".manifest.json");
                p.with_file_name(name)
            })
        })
    }

    pub fn write_manifest(&self, manifest: &Value) -> Result<()> {
        let mut text = serde_json::to_string_pretty(manifest)?;
        text.push('\n');
        match self.manifest_path() {
            Some(path) => write_file(&path, &text),
            None => {
                eprint!("{text}");
                Ok(())
            }
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        let c = |a, b| Complex64::new(a, b);
        assert_eq!(parse_complex("1+2i").unwrap(), c(1.0, 2.0));
        assert_eq!(parse_complex("-0.5 - 1.25i").unwrap(), c(-0.5, -1.25));
        assert_eq!(parse_complex("3").unwrap(), c(3.0, 0.0));
        assert_eq!(parse_complex("-2i").unwrap(), c(0.0, -2.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("1-i").unwrap(), c(1.0, -1.0));
        assert_eq!(parse_complex("1e-3+2E+1i").unwrap(), c(1e-3, 20.0));
        assert!(parse_complex("1+").is_err());
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, 2.658967081916, -1e-300, 123456789.0] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
    }
}
