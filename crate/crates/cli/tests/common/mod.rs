//! The golden invocation suite, shared by the golden tests and the
//! acceptance run.
//!
//! Each `tests/golden/*.json` file holds `args`, the expected `exit` code,
//! the expected `stdout`, and a `contract`: `exact` compares stdout byte for
//! byte, `mgu-equiv` compares each mgu image with the recorded one via the
//! `equiv` subcommand. Set `BLESS=1` to rewrite the expected values.

#![allow(dead_code)]

use std::path::{Path, PathBuf};

use alt1_unify_cli::{run, substitution_from_json, substitution_json};
use serde_json::{json, Value};

pub struct Outcome {
    pub exit: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn invoke(args: &[&str]) -> Outcome {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("alt1-unify").chain(args.iter().copied());
    let exit = run(argv, &mut out, &mut err);
    Outcome {
        exit,
        stdout: String::from_utf8(out).expect("stdout is UTF-8"),
        stderr: String::from_utf8(err).expect("stderr is UTF-8"),
    }
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn golden_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(golden_dir())
        .expect("golden directory exists")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
}

fn option_value<'a>(args: &'a [String], flag: &str) -> Option<&'a str> {
    args.iter()
        .position(|a| a == flag)
        .map(|i| args[i + 1].as_str())
}

/// Checks one recorded case; returns a description of the first mismatch.
pub fn check_case(path: &Path) -> Result<(), String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let mut case: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let args: Vec<String> = case["args"]
        .as_array()
        .ok_or("args missing")?
        .iter()
        .map(|a| a.as_str().unwrap().to_string())
        .collect();
    let argv: Vec<&str> = args.iter().map(String::as_str).collect();
    let got = invoke(&argv);

    if std::env::var_os("BLESS").is_some() {
        case["exit"] = json!(got.exit);
        case["stdout"] = json!(got.stdout);
        let pretty = serde_json::to_string_pretty(&case).unwrap() + "\n";
        std::fs::write(path, pretty).map_err(|e| e.to_string())?;
        return Ok(());
    }

    let name = path.file_name().unwrap().to_string_lossy();
    let exit = case["exit"].as_i64().ok_or("exit missing")? as i32;
    let expected = case["stdout"].as_str().ok_or("stdout missing")?;
    if got.exit != exit {
        return Err(format!("{name}: exit {} instead of {exit}", got.exit));
    }
    if !matches!(got.exit, 0..=2) {
        return Err(format!("{name}: exit code outside 0..=2"));
    }
    if got.exit == 2 && got.stderr.lines().count() != 1 {
        return Err(format!(
            "{name}: expected a one-line diagnostic, got {:?}",
            got.stderr
        ));
    }
    if !got.stdout.is_empty() && !got.stdout.ends_with('\n') {
        return Err(format!("{name}: output is not newline-terminated"));
    }
    if args.iter().any(|a| a == "--json") && !got.stdout.is_empty() {
        let value: Value = serde_json::from_str(&got.stdout)
            .map_err(|e| format!("{name}: output is not JSON: {e}"))?;
        for key in ["witness", "mgu", "tau", "nu"] {
            if let Some(s) = value.get(key).filter(|v| !v.is_null()) {
                let sub = substitution_from_json(s).ok_or(format!(
                    "{name}: {key} does not read back as a substitution"
                ))?;
                if substitution_json(&sub) != *s {
                    return Err(format!("{name}: {key} does not round-trip"));
                }
            }
        }
    }
    match case["contract"].as_str().unwrap_or("exact") {
        "exact" => {
            if got.stdout != expected {
                return Err(format!(
                    "{name}: stdout {:?} instead of {expected:?}",
                    got.stdout
                ));
            }
        }
        "mgu-equiv" => {
            let have: Value = serde_json::from_str(&got.stdout).map_err(|e| e.to_string())?;
            let want: Value = serde_json::from_str(expected).map_err(|e| e.to_string())?;
            if have["unifiable"] != want["unifiable"] {
                return Err(format!("{name}: unifiability differs"));
            }
            let depth = option_value(&args, "--depth").unwrap_or("2");
            let (have, want) = (&have["mgu"], &want["mgu"]);
            if have.is_null() != want.is_null() {
                return Err(format!("{name}: mgu presence differs"));
            }
            if let (Some(h), Some(w)) = (have.as_object(), want.as_object()) {
                let vars = h["k"]
                    .as_u64()
                    .max(w["k"].as_u64())
                    .unwrap_or(1)
                    .to_string();
                for (key, image) in w.iter().filter(|(k, _)| k.as_str() != "k") {
                    let mine = h
                        .get(key)
                        .and_then(Value::as_str)
                        .ok_or(format!("{name}: {key} missing"))?;
                    let check = invoke(&[
                        "equiv",
                        "--depth",
                        depth,
                        "--vars",
                        &vars,
                        mine,
                        image.as_str().unwrap(),
                    ]);
                    if check.exit != 0 {
                        return Err(format!(
                            "{name}: {key} = {mine} is not equivalent to {image}"
                        ));
                    }
                }
            }
        }
        other => return Err(format!("{name}: unknown contract {other}")),
    }
    Ok(())
}
