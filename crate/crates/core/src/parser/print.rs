use crate::syntax::{Formula, Pred, Surface, Term};

/// Canonical ASCII text for a core formula; `parse_formula` reads it back to
/// an equal formula.
pub fn print_formula(f: &Formula) -> String {
    print_surface(&Surface::from(f))
}

/// As [`print_formula`], keeping derived connectives.
pub fn print_surface(f: &Surface) -> String {
    let mut out = String::new();
    go(f, IMP, false, &mut out);
    out
}

const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

fn atom(p: &Pred, args: &[Term], out: &mut String) {
    match p {
        Pred::Const(c) => out.push_str(c),
        Pred::Var(v) => {
            out.push('?');
            out.push_str(v);
        }
    }
    if !args.is_empty() {
        out.push('(');
        for (i, t) in args.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&t.to_string());
        }
        out.push(')');
    }
}

/// `ctx` is the loosest construct allowed without parentheses; `close` says
/// more input follows at this level, so a trailing quantifier (whose body
/// would otherwise extend over it) must be bracketed.
fn go(f: &Surface, ctx: u8, close: bool, out: &mut String) {
    let binary = |prec: u8, sym: &str, a: &Surface, b: &Surface, out: &mut String| {
        let paren = ctx > prec;
        if paren {
            out.push('(');
        }
        go(a, prec + 1, true, out);
        out.push_str(sym);
        go(b, prec, close && !paren, out);
        if paren {
            out.push(')');
        }
    };
    let quant = |head: String, body: &Surface, out: &mut String| {
        if close {
            out.push('(');
        }
        out.push_str(&head);
        go(body, IMP, false, out);
        if close {
            out.push(')');
        }
    };
    match f {
        Surface::Atom(p, args) => atom(p, args, out),
        Surface::Bot => out.push_str("bot"),
        Surface::Imp(a, b) => binary(IMP, " -> ", a, b, out),
        Surface::Or(a, b) => binary(OR, " | ", a, b, out),
        Surface::And(a, b) => binary(AND, " & ", a, b, out),
        Surface::Not(a) => {
            out.push('~');
            go(a, UNARY, close, out);
        }
        Surface::ForallI(x, b) => quant(format!("all ?{x}. "), b, out),
        Surface::ForallP(x, b) => quant(format!("ALL {x}. "), b, out),
        Surface::ExistsI(x, b) => quant(format!("ex ?{x}. "), b, out),
        Surface::ExistsP(x, b) => quant(format!("EX {x}. "), b, out),
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_surface, Signature};
    use super::*;

    fn rt(s: &str) -> String {
        print_surface(&parse_surface(s, &mut Signature::new()).unwrap())
    }

    #[test]
    fn minimal_parentheses() {
        assert_eq!(rt("(A -> B) -> C"), "(A -> B) -> C");
        assert_eq!(rt("A -> (B -> C)"), "A -> B -> C");
        assert_eq!(rt("(all ?x. P(?x)) -> Q"), "(all ?x. P(?x)) -> Q");
        assert_eq!(rt("Q -> all ?x. P(?x)"), "Q -> all ?x. P(?x)");
        assert_eq!(rt("~(all ?x. P(?x)) -> Q"), "~(all ?x. P(?x)) -> Q");
        assert_eq!(rt("(A & (all ?x. P(?x))) -> Q"), "A & (all ?x. P(?x)) -> Q");
        assert_eq!(rt("(A | B) & C"), "(A | B) & C");
        assert_eq!(rt("R(a,?y) & ?X"), "R(a,?y) & ?X");
        assert_eq!(rt("EX ?Y:1. ?Y(a)"), "EX ?Y:1. ?Y(a)");
    }
}
