use std::fmt;

use super::{Formula, Term};
use crate::truth::TruthValue;

const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;
const POSTFIX: u8 = 6;

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        write_formula(self, 0, true, &mut out);
        f.write_str(&out)
    }
}

fn constant_name(v: TruthValue) -> &'static str {
    match v {
        TruthValue::Top => "TRUE",
        TruthValue::Both => "BOTH",
        TruthValue::Bot => "FALSE",
    }
}

// `tail` is true when nothing follows this subformula inside the enclosing
// expression, which is the only place an unparenthesized quantifier may sit.
fn write_formula(f: &Formula, min_prec: u8, tail: bool, out: &mut String) {
    match f {
        Formula::Const(v) => out.push_str(constant_name(*v)),
        Formula::Rel(name, args) => {
            out.push_str(name);
            if !args.is_empty() {
                out.push('(');
                for (i, t) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(t.name());
                }
                out.push(')');
            }
        }
        Formula::Eq(a, b) => {
            out.push_str(a.name());
            out.push_str(" = ");
            out.push_str(b.name());
        }
        Formula::Not(a) => {
            let paren = UNARY < min_prec;
            open(paren, out);
            out.push('~');
            write_formula(a, UNARY, tail || paren, out);
            close(paren, out);
        }
        Formula::Status(a, op) => {
            write_formula(a, POSTFIX, false, out);
            out.push('^');
            out.push_str(op.suffix());
        }
        Formula::Forall(x, body) | Formula::Exists(x, body) => {
            let paren = !tail;
            open(paren, out);
            out.push_str(if matches!(f, Formula::Forall(..)) {
                "forall "
            } else {
                "exists "
            });
            out.push_str(x);
            out.push_str(". ");
            write_formula(body, 0, true, out);
            close(paren, out);
        }
        Formula::And(a, b) => binary(a, b, " & ", AND, true, min_prec, tail, out),
        Formula::Or(a, b) => binary(a, b, " | ", OR, true, min_prec, tail, out),
        Formula::WeakImp(a, b) => binary(a, b, " -> ", IMP, false, min_prec, tail, out),
        Formula::StrongImp(a, b) => binary(a, b, " => ", IMP, false, min_prec, tail, out),
        Formula::WeakIff(a, b) => binary(a, b, " <-> ", IFF, false, min_prec, tail, out),
        Formula::StrongIff(a, b) => binary(a, b, " <=> ", IFF, false, min_prec, tail, out),
    }
}

#[allow(clippy::too_many_arguments)]
fn binary(
    a: &Formula,
    b: &Formula,
    op: &str,
    prec: u8,
    left_assoc: bool,
    min_prec: u8,
    tail: bool,
    out: &mut String,
) {
    let paren = prec < min_prec;
    let (left_min, right_min) = if left_assoc {
        (prec, prec + 1)
    } else {
        (prec + 1, prec)
    };
    open(paren, out);
    write_formula(a, left_min, false, out);
    out.push_str(op);
    write_formula(b, right_min, tail || paren, out);
    close(paren, out);
}

fn open(paren: bool, out: &mut String) {
    if paren {
        out.push('(');
    }
}

fn close(paren: bool, out: &mut String) {
    if paren {
        out.push(')');
    }
}
