//! `--config path`: a flat `key=value` file whose entries act as long flags
//! that were not given on the command line.

use std::ffi::OsString;
use std::fs;

use anyhow::{bail, Context, Result};

fn config_path(args: &[String]) -> Option<String> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

fn given(args: &[String], key: &str) -> bool {
    let flag = format!("--{key}");
    let prefix = format!("--{key}=");
    args.iter().any(|a| *a == flag || a.starts_with(&prefix))
}

/// Parses the file into `(key, value)` pairs. Blank lines and lines starting
/// with `#` are skipped; keys may be written with or without leading dashes.
pub fn parse(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            bail!("config line {}: expected key=value", i + 1);
        };
        let key = k.trim().trim_start_matches('-').replace('_', "-");
        if key.is_empty() || key == "config" {
            bail!("config line {}: invalid key '{}'", i + 1, k.trim());
        }
        out.push((key, v.trim().to_string()));
    }
    Ok(out)
}

/// Appends config entries as flags unless the command line already sets them.
pub fn merge(args: Vec<OsString>) -> Result<Vec<String>> {
    let mut args: Vec<String> = args.into_iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = fs::read_to_string(&path).with_context(|| format!("--config: cannot read {path}"))?;
    let mut extra = Vec::new();
    for (key, value) in parse(&text)? {
        if given(&args, &key) {
            continue;
        }
        match value.as_str() {
            "true" => extra.push(format!("--{key}")),
            "false" => {}
            _ => extra.push(format!("--{key}={value}")),
        }
    }
    args.extend(extra);
    Ok(args)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(v: &[&str]) -> Vec<OsString> {
        v.iter().map(OsString::from).collect()
    }

    #[test]
    fn parses_pairs() {
        let kv = parse("# comment\n\nseed = 7\n--n=3\ntol_series=1e-9\n").unwrap();
        assert_eq!(
            kv,
            vec![
                ("seed".to_string(), "7".to_string()),
                ("n".to_string(), "3".to_string()),
                ("tol-series".to_string(), "1e-9".to_string())
            ]
        );
        assert!(parse("seed 7").is_err());
    }

    #[test]
    fn command_line_wins() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        fs::write(&path, "seed=7\nn=3\ncomplex=true\nall=false\n").unwrap();
        let p = path.to_str().unwrap();
        let merged = merge(os(&["hyperlap", "suite", "--config", p, "--seed", "9"])).unwrap();
        assert_eq!(merged[..5], ["hyperlap", "suite", "--config", p, "--seed"]);
        assert!(merged.contains(&"--n=3".to_string()));
        assert!(merged.contains(&"--complex".to_string()));
        assert!(!merged.iter().any(|a| a.starts_with("--seed=")));
        assert!(!merged.iter().any(|a| a == "--all"));
    }
}
