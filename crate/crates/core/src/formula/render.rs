use super::Formula;

const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;

/// Prints `f` in the parser's syntax with as few parentheses as the
/// precedence table allows. `~false`, `~(~a | ~b)` and `~[]~a` are printed as
/// `true`, `a & b` and `<>a`; all three parse back to the same tree.
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    write(f, 0, &mut out);
    out
}

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Or(..) => OR,
        Formula::Neg(inner) => match &**inner {
            Formula::Or(a, b) if is_neg(a) && is_neg(b) => AND,
            _ => UNARY,
        },
        _ => UNARY,
    }
}

fn is_neg(f: &Formula) -> bool {
    matches!(f, Formula::Neg(_))
}

fn strip_neg(f: &Formula) -> &Formula {
    match f {
        Formula::Neg(inner) => inner,
        _ => unreachable!("caller checked for negation"),
    }
}

fn write(f: &Formula, min: u8, out: &mut String) {
    let prec = precedence(f);
    let wrap = prec < min;
    if wrap {
        out.push('(');
    }
    match f {
        Formula::Var(i) => {
            out.push('x');
            out.push_str(&i.to_string());
        }
        Formula::Falsum => out.push_str("false"),
        Formula::Or(a, b) => {
            write(a, OR, out);
            out.push_str(" | ");
            write(b, AND, out);
        }
        Formula::Box(inner) => {
            out.push_str("[]");
            write(inner, UNARY, out);
        }
        Formula::Neg(inner) => match &**inner {
            Formula::Falsum => out.push_str("true"),
            Formula::Or(a, b) if is_neg(a) && is_neg(b) => {
                write(strip_neg(a), AND, out);
                out.push_str(" & ");
                write(strip_neg(b), UNARY, out);
            }
            Formula::Box(body) if is_neg(body) => {
                out.push_str("<>");
                write(strip_neg(body), UNARY, out);
            }
            _ => {
                out.push('~');
                write(inner, UNARY, out);
            }
        },
    }
    if wrap {
        out.push(')');
    }
}
