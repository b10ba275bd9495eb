//! Runs the `console` examples of README.md against the built binary.

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Example {
    pub line: usize,
    pub command: String,
    pub expected: String,
}

pub fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

/// `$ lps ...` lines inside ```console blocks, each followed by its exact
/// output.
pub fn examples() -> Vec<Example> {
    let text = std::fs::read_to_string(workspace_root().join("README.md")).expect("README.md");
    let mut out: Vec<Example> = Vec::new();
    let mut in_block = false;
    for (i, line) in text.lines().enumerate() {
        if line.starts_with("```") {
            in_block = line.trim() == "```console";
            continue;
        }
        if !in_block {
            continue;
        }
        if let Some(command) = line.strip_prefix("$ ") {
            out.push(Example {
                line: i + 1,
                command: command.to_string(),
                expected: String::new(),
            });
        } else if let Some(last) = out.last_mut() {
            last.expected.push_str(line);
            last.expected.push('\n');
        }
    }
    out
}

/// Runs one example; returns the combined stdout and stderr.
pub fn run(example: &Example) -> String {
    let words = shlex::split(&example.command).expect("shell words");
    assert_eq!(words[0], "lps", "README line {}", example.line);
    let output = Command::new(env!("CARGO_BIN_EXE_lps"))
        .args(&words[1..])
        .current_dir(workspace_root())
        .output()
        .expect("run lps");
    let mut text = String::from_utf8(output.stdout).unwrap();
    text.push_str(&String::from_utf8(output.stderr).unwrap());
    text
}

/// Every mismatch as a printable report.
pub fn mismatches() -> Vec<String> {
    examples()
        .iter()
        .filter_map(|ex| {
            let actual = run(ex);
            (actual != ex.expected).then(|| {
                format!(
                    "README line {}: `{}`\n--- expected\n{}--- actual\n{}",
                    ex.line, ex.command, ex.expected, actual
                )
            })
        })
        .collect()
}
