//! Flat `key=value` files whose keys are long flag names. Used both as
//! `--config` input and as the run manifest written next to outputs.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Parses `key=value` lines. Blank lines and `#` comments are skipped.
pub fn parse_pairs(text: &str, origin: &Path) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::parse(origin, i + 1, format!("expected key=value, got {line:?}"))
        })?;
        let key = key.trim();
        if key.is_empty() {
            return Err(Error::parse(origin, i + 1, "empty key"));
        }
        pairs.push((key.to_string(), value.trim().to_string()));
    }
    Ok(pairs)
}

/// Turns pairs into flag tokens. `true`/`false` values toggle switches.
pub fn pairs_to_args(pairs: &[(String, String)]) -> Vec<OsString> {
    let mut out = Vec::new();
    for (key, value) in pairs {
        if key == "config" {
            continue;
        }
        match value.as_str() {
            "true" => out.push(format!("--{key}").into()),
            "false" => {}
            _ => {
                out.push(format!("--{key}").into());
                out.push(value.into());
            }
        }
    }
    out
}

fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some(p.into());
        }
    }
    None
}

/// Splices the settings of a `--config` file in front of the explicit
/// arguments of the subcommand, so that explicit flags win.
pub fn expand_config(args: Vec<OsString>) -> Result<Vec<OsString>> {
    if args.len() < 2 || args[1].to_string_lossy().starts_with('-') {
        return Ok(args);
    }
    let Some(path) = config_path(&args[2..]) else {
        return Ok(args);
    };
    let path = Path::new(&path);
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let injected = pairs_to_args(&parse_pairs(&text, path)?);
    let mut out = Vec::with_capacity(args.len() + injected.len());
    out.extend_from_slice(&args[..2]);
    out.extend(injected);
    out.extend_from_slice(&args[2..]);
    Ok(out)
}

/// Provenance plus the resolved parameters of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub subcommand: String,
    pub parameters: Vec<(String, String)>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub started: String,
    pub finished: String,
}

impl RunManifest {
    /// Metadata goes in comments so the file can be fed back via `--config`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "# immunet {} {}",
            env!("CARGO_PKG_VERSION"),
            self.subcommand
        );
        let _ = writeln!(s, "# subcommand: {}", self.subcommand);
        let _ = writeln!(s, "# started: {}", self.started);
        let _ = writeln!(s, "# finished: {}", self.finished);
        for i in &self.inputs {
            let _ = writeln!(s, "# input: {i}");
        }
        for o in &self.outputs {
            let _ = writeln!(s, "# output: {o}");
        }
        for (k, v) in &self.parameters {
            let _ = writeln!(s, "{k}={v}");
        }
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(v: &[&str]) -> Vec<OsString> {
        v.iter().map(OsString::from).collect()
    }

    #[test]
    fn parses_pairs_and_skips_comments() {
        let p = parse_pairs("# c\n\ntau = 2.1\nfull=true\n", Path::new("x")).unwrap();
        assert_eq!(
            p,
            vec![("tau".into(), "2.1".into()), ("full".into(), "true".into())]
        );
        assert!(parse_pairs("oops\n", Path::new("x")).is_err());
        assert_eq!(pairs_to_args(&p), os(&["--tau", "2.1", "--full"]));
    }

    #[test]
    fn config_goes_before_explicit_flags() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("run.conf");
        std::fs::write(&cfg, "n=500\nseed=3\nconfig=ignored\n").unwrap();
        let args = os(&[
            "immunet",
            "simulate",
            "--config",
            cfg.to_str().unwrap(),
            "--seed",
            "9",
        ]);
        let got = expand_config(args).unwrap();
        let want = os(&[
            "immunet", "simulate", "--n", "500", "--seed", "3", "--config",
        ]);
        assert_eq!(&got[..7], &want[..]);
        assert_eq!(got.last().unwrap(), "9");
    }

    #[test]
    fn manifest_round_trips_parameters() {
        let m = RunManifest {
            subcommand: "gen".into(),
            parameters: vec![("n".into(), "10".into()), ("seed".into(), "4".into())],
            inputs: vec![],
            outputs: vec!["g.txt".into()],
            started: "t0".into(),
            finished: "t1".into(),
        };
        let back = parse_pairs(&m.to_text(), Path::new("m")).unwrap();
        assert_eq!(back, m.parameters);
    }
}
