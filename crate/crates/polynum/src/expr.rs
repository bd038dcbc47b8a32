//! Term grammar for naming polytopes on the command line.
//!
//! Atoms: `simplex:d`, `cross:d`, `cube:d`, `hypersimplex:d,k`.
//! Combinators: `pyr(E)`, `bipyr(E)`, `prod(E, E, ...)` with two or more
//! factors. Whitespace between tokens is ignored.

use std::fmt;
use std::str::FromStr;

use crate::lattice::{
    bipyramid, make_cross, make_cube, make_hypersimplex, make_simplex, product, pyramid,
    Polytope,
};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolytopeExpr {
    Simplex(u32),
    Cross(u32),
    Cube(u32),
    Hypersimplex(u32, u32),
    Pyr(Box<PolytopeExpr>),
    Bipyr(Box<PolytopeExpr>),
    Prod(Vec<PolytopeExpr>),
}

impl PolytopeExpr {
    /// Builds the polytope the expression denotes.
    pub fn build(&self) -> Result<Polytope> {
        match self {
            PolytopeExpr::Simplex(d) => make_simplex(*d),
            PolytopeExpr::Cross(d) => make_cross(*d),
            PolytopeExpr::Cube(d) => make_cube(*d),
            PolytopeExpr::Hypersimplex(d, k) => make_hypersimplex(*d, *k),
            PolytopeExpr::Pyr(e) => Ok(pyramid(&e.build()?)),
            PolytopeExpr::Bipyr(e) => Ok(bipyramid(&e.build()?)),
            PolytopeExpr::Prod(es) => {
                let mut acc = es[0].build()?;
                for e in &es[1..] {
                    acc = product(&acc, &e.build()?);
                }
                Ok(acc)
            }
        }
    }
}

impl fmt::Display for PolytopeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolytopeExpr::Simplex(d) => write!(f, "simplex:{d}"),
            PolytopeExpr::Cross(d) => write!(f, "cross:{d}"),
            PolytopeExpr::Cube(d) => write!(f, "cube:{d}"),
            PolytopeExpr::Hypersimplex(d, k) => write!(f, "hypersimplex:{d},{k}"),
            PolytopeExpr::Pyr(e) => write!(f, "pyr({e})"),
            PolytopeExpr::Bipyr(e) => write!(f, "bipyr({e})"),
            PolytopeExpr::Prod(es) => {
                write!(f, "prod(")?;
                for (i, e) in es.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ")")
            }
        }
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.fail(&format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let end = rest
            .find(|c: char| !c.is_ascii_lowercase())
            .unwrap_or(rest.len());
        if end == 0 {
            return Err(self.fail("expected a name"));
        }
        self.pos += end;
        Ok(&rest[..end])
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let end = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        if end == 0 {
            return Err(self.fail("expected a number"));
        }
        self.pos += end;
        rest[..end]
            .parse()
            .map_err(|_| Error::Parse(format!("number out of range: {}", &rest[..end])))
    }

    fn fail(&self, what: &str) -> Error {
        Error::Parse(format!("{} at byte {} of '{}'", what, self.pos, self.src))
    }

    fn parse_expr(&mut self) -> Result<PolytopeExpr> {
        let name = self.ident()?;
        match name {
            "pyr" | "bipyr" => {
                self.expect('(')?;
                let inner = Box::new(self.parse_expr()?);
                self.expect(')')?;
                Ok(if name == "pyr" {
                    PolytopeExpr::Pyr(inner)
                } else {
                    PolytopeExpr::Bipyr(inner)
                })
            }
            "prod" => {
                self.expect('(')?;
                let mut factors = vec![self.parse_expr()?];
                while self.peek() == Some(',') {
                    self.expect(',')?;
                    factors.push(self.parse_expr()?);
                }
                self.expect(')')?;
                if factors.len() < 2 {
                    return Err(self.fail("prod needs at least two factors"));
                }
                Ok(PolytopeExpr::Prod(factors))
            }
            "simplex" | "cross" | "cube" => {
                self.expect(':')?;
                let d = self.number()?;
                Ok(match name {
                    "simplex" => PolytopeExpr::Simplex(d),
                    "cross" => PolytopeExpr::Cross(d),
                    _ => PolytopeExpr::Cube(d),
                })
            }
            "hypersimplex" => {
                self.expect(':')?;
                let d = self.number()?;
                self.expect(',')?;
                let k = self.number()?;
                Ok(PolytopeExpr::Hypersimplex(d, k))
            }
            other => Err(Error::Parse(format!("unknown polytope '{other}'"))),
        }
    }
}

impl FromStr for PolytopeExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<PolytopeExpr> {
        let mut cur = Cursor { src: s, pos: 0 };
        let expr = cur.parse_expr()?;
        cur.skip_ws();
        if cur.pos != s.len() {
            return Err(cur.fail("trailing input"));
        }
        Ok(expr)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> PolytopeExpr {
        s.parse().unwrap()
    }

    #[test]
    fn atoms_round_trip() {
        for s in [
            "simplex:3",
            "cross:4",
            "cube:2",
            "hypersimplex:4,2",
            "pyr(cube:2)",
            "bipyr(simplex:2)",
            "prod(simplex:1,simplex:2)",
            "prod(cube:1,cross:2,simplex:1)",
            "pyr(prod(simplex:1,simplex:1))",
        ] {
            assert_eq!(parse(s).to_string(), s);
        }
    }

    #[test]
    fn whitespace_is_ignored() {
        assert_eq!(
            parse(" prod( simplex:1 , simplex:2 ) "),
            parse("prod(simplex:1,simplex:2)")
        );
    }

    #[test]
    fn built_dimensions() {
        let dims = [
            ("simplex:3", 3),
            ("cross:2", 2),
            ("cube:4", 4),
            ("hypersimplex:4,2", 3),
            ("pyr(cube:2)", 3),
            ("bipyr(simplex:2)", 3),
            ("prod(simplex:1,simplex:2)", 3),
            ("pyr(prod(simplex:1,simplex:1))", 3),
        ];
        for (s, d) in dims {
            assert_eq!(parse(s).build().unwrap().dim, d, "{s}");
        }
    }

    #[test]
    fn rejects_malformed_input() {
        for s in [
            "",
            "simplex",
            "simplex:",
            "simplex:x",
            "tetrahedron:3",
            "pyr(simplex:2",
            "prod(simplex:1)",
            "prod()",
            "cube:2 extra",
            "hypersimplex:4",
            "simplex:99999999999999999999",
        ] {
            assert!(s.parse::<PolytopeExpr>().is_err(), "{s}");
        }
    }

    #[test]
    fn build_surfaces_range_errors() {
        assert!(parse("hypersimplex:4,4").build().is_err());
        assert!(parse("cube:0").build().is_ok());
    }
}
