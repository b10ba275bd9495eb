//! Plain-text theory files.
//!
//! One formula per line. Blank lines and `#` comments are ignored.
//! Declaration lines fix the signature before any formula is read:
//!
//! ```text
//! const c d
//! rel R/1 S/2
//! ```
//!
//! Relations used without a declaration are added with the arity of their
//! first use. Identifiers not declared as constants are variables.

use lps_core::syntax::{parse_formula_inferring, Formula, Signature};

#[derive(Debug, Clone, Default)]
pub struct Theory {
    pub signature: Signature,
    pub formulas: Vec<Formula>,
}

pub fn parse_theory(text: &str, base: Signature) -> Result<Theory, String> {
    let mut signature = base;
    let mut pending = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next() {
            Some("const") => {
                for c in words {
                    signature
                        .add_constant(c)
                        .map_err(|e| format!("line {line_no}: {e}"))?;
                }
            }
            Some("rel") => {
                for decl in words {
                    let (name, arity) = decl
                        .split_once('/')
                        .and_then(|(n, a)| Some((n, a.parse::<usize>().ok()?)))
                        .ok_or_else(|| {
                            format!("line {line_no}: expected NAME/ARITY, found `{decl}`")
                        })?;
                    signature
                        .add_relation(name, arity)
                        .map_err(|e| format!("line {line_no}: {e}"))?;
                }
            }
            _ => pending.push((line_no, line)),
        }
    }
    let mut formulas = Vec::new();
    for (line_no, line) in pending {
        let f = parse_formula_inferring(line, &mut signature)
            .map_err(|e| format!("line {line_no}: {e}"))?;
        formulas.push(f);
    }
    Ok(Theory {
        signature,
        formulas,
    })
}
