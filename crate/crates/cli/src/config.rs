//! Flat key=value config files, spliced into the argument list ahead of the
//! command-line flags so the latter win.

use std::ffi::OsString;

use crate::usage;

/// Turns the file's `key = value` lines into `--key value` pairs.
pub fn parse(text: &str) -> anyhow::Result<Vec<OsString>> {
    let mut args = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("config line {}: expected key=value, got `{line}`", n + 1)))?;
        let key = key.trim().replace('_', "-");
        if key.is_empty() || key == "config" {
            return Err(usage(format!("config line {}: invalid key `{key}`", n + 1)));
        }
        args.push(format!("--{key}").into());
        args.push(value.trim().into());
    }
    Ok(args)
}

/// Removes `--config FILE` from `argv` and inserts the file's options right
/// after the subcommand.
pub fn merge_config(argv: Vec<OsString>) -> anyhow::Result<Vec<OsString>> {
    let mut path = None;
    let mut rest = Vec::with_capacity(argv.len());
    let mut it = argv.into_iter();
    while let Some(arg) = it.next() {
        let s = arg.to_string_lossy();
        if s == "--config" {
            let p = it.next().ok_or_else(|| usage("--config needs a file"))?;
            path = Some(std::path::PathBuf::from(p));
        } else if let Some(p) = s.strip_prefix("--config=") {
            path = Some(p.into());
        } else {
            rest.push(arg);
        }
    }
    let Some(path) = path else {
        return Ok(rest);
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
    let extra = parse(&text)?;
    let at = rest.len().min(2);
    rest.splice(at..at, extra);
    Ok(rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(v: &[&str]) -> Vec<OsString> {
        v.iter().map(OsString::from).collect()
    }

    #[test]
    fn lines_become_flags() {
        let args = parse("# comment\ngeometry = sphere\nradius_um=200\n\n").unwrap();
        assert_eq!(args, os(&["--geometry", "sphere", "--radius-um", "200"]));
    }

    #[test]
    fn malformed_line_is_rejected() {
        assert!(parse("geometry sphere").is_err());
        assert!(parse("config=x").is_err());
    }

    #[test]
    fn file_options_precede_command_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(&path, "temperature=10\n").unwrap();
        let argv = os(&[
            "casimir-lab",
            "force",
            "--config",
            path.to_str().unwrap(),
            "--temperature",
            "20",
        ]);
        let merged = merge_config(argv).unwrap();
        assert_eq!(
            merged,
            os(&[
                "casimir-lab",
                "force",
                "--temperature",
                "10",
                "--temperature",
                "20"
            ])
        );
    }
}
