//! S-expression syntax for λc terms: `(lam x t)`, `(app t u)`, `cc`,
//! `(church n)`, `(const name)`, `(instr zeta k)`, `(instr kappa0)`; bare
//! atoms are variables. Continuations cannot be written down.

use crate::sexpr::{self, Sexpr};

use super::term::{church, Instr, LTerm};

pub fn parse_lterm(src: &str) -> Result<LTerm, String> {
    let e = sexpr::parse_one(src).map_err(|e| e.to_string())?;
    lterm_from_sexpr(&e)
}

pub fn lterm_from_sexpr(e: &Sexpr) -> Result<LTerm, String> {
    match e {
        Sexpr::Atom(a) if a == "cc" => Ok(LTerm::CC),
        Sexpr::Atom(a) => Ok(LTerm::var(a.clone())),
        Sexpr::List(items) => {
            let head = items
                .first()
                .and_then(Sexpr::atom)
                .ok_or_else(|| "expected a term head".to_string())?;
            let args = &items[1..];
            match (head, args) {
                ("lam", [x, body]) => {
                    let x = x.atom().ok_or("lam binder must be an atom")?;
                    Ok(LTerm::lam(x, lterm_from_sexpr(body)?))
                }
                ("app", [f, a]) => Ok(LTerm::app(lterm_from_sexpr(f)?, lterm_from_sexpr(a)?)),
                ("app", rest) if rest.len() > 2 => {
                    // (app f a b …) is the left-nested spine.
                    let f = lterm_from_sexpr(&rest[0])?;
                    let parsed = rest[1..]
                        .iter()
                        .map(lterm_from_sexpr)
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(LTerm::apps(f, parsed))
                }
                ("church", [n]) => {
                    let n: u64 = n
                        .atom()
                        .and_then(|s| s.parse().ok())
                        .ok_or("church takes a natural number")?;
                    Ok(church(n))
                }
                ("const", [name]) => {
                    let name = name.atom().ok_or("const takes a name")?;
                    Ok(LTerm::inert(name))
                }
                ("instr", [Sexpr::Atom(kind), rest @ ..]) => match (kind.as_str(), rest) {
                    ("zeta", [k]) => {
                        let k: usize = k
                            .atom()
                            .and_then(|s| s.parse().ok())
                            .ok_or("zeta takes an arity")?;
                        Ok(LTerm::Instr(Instr::Zeta(k)))
                    }
                    ("kappa0", []) => Ok(LTerm::Instr(Instr::Kappa {
                        position: 0,
                        history: vec![],
                    })),
                    other => Err(format!("unknown instruction {other:?}")),
                },
                other => Err(format!("unknown term form {other:?}")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_terms() {
        assert_eq!(parse_lterm("cc").unwrap(), LTerm::CC);
        assert_eq!(
            parse_lterm("(lam x x)").unwrap(),
            LTerm::lam("x", LTerm::var("x"))
        );
        assert_eq!(parse_lterm("(church 2)").unwrap(), church(2));
        assert_eq!(
            parse_lterm("(app f a b)").unwrap(),
            LTerm::apps(LTerm::var("f"), [LTerm::var("a"), LTerm::var("b")])
        );
        assert!(parse_lterm("(cont x)").is_err());
    }
}
