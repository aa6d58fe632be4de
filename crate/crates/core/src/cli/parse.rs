//! Text formats: rational-function expressions and matrix files.
//!
//! Expressions follow
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := power ('/' power)?
//! power  := atom ('^' uint)?
//! atom   := integer | 'x' | '(' expr ')'
//! ```
//!
//! with insignificant whitespace. A matrix file has a header line `m n`
//! followed by `m` rows of `n` `;`-separated expressions; lines starting
//! with `#` and blank lines are ignored.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ratfield::{Poly, Rat, RatFun};
use crate::ratmat::RatMatrix;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFun> {
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFun> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RatFun> {
        let num = self.power()?;
        if self.peek() != Some(b'/') {
            return Ok(num);
        }
        let slash = self.pos;
        self.pos += 1;
        let den = self.power()?;
        num.checked_div(&den)
            .map_err(|_| Error::Pole { position: slash })
    }

    fn power(&mut self) -> Result<RatFun> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a non-negative integer exponent");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let Ok(e) = digits.parse::<u32>() else {
            self.pos = start;
            return self.err("exponent too large");
        };
        Ok(pow(&base, e))
    }

    fn atom(&mut self) -> Result<RatFun> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(RatFun::x())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
                let n: BigInt = digits.parse().expect("digit string");
                Ok(RatFun::constant(Rat::from_integer(n)))
            }
            Some(c) => self.err(format!("unexpected `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

fn pow(base: &RatFun, mut e: u32) -> RatFun {
    let mut acc = RatFun::one();
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    acc
}

/// Parses one expression into a normalized rational function.
pub fn parse_ratfun_expr(src: &str) -> Result<RatFun> {
    let mut p = Parser::new(src);
    let v = p.expr()?;
    if p.peek().is_some() {
        return p.err(format!("unexpected `{}`", p.src[p.pos] as char));
    }
    Ok(v)
}

/// Parses a polynomial-only expression; fails if a denominator survives.
pub fn parse_poly_expr(src: &str) -> Result<Poly> {
    let f = parse_ratfun_expr(src)?;
    if f.is_polynomial() {
        Ok(f.numer().clone())
    } else {
        Err(Error::Parse {
            position: 0,
            message: "expected a polynomial".into(),
        })
    }
}

fn shift(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { position, message } => Error::Parse {
            position: position + offset,
            message,
        },
        Error::Pole { position } => Error::Pole {
            position: position + offset,
        },
        other => other,
    }
}

/// Parses a matrix file (see the module docs for the layout).
pub fn parse_matrix_file(src: &str) -> Result<RatMatrix> {
    let mut lines = Vec::new();
    let mut offset = 0;
    for (idx, raw) in src.split_inclusive('\n').enumerate() {
        let body = raw.trim_end_matches(['\n', '\r']);
        let trimmed = body.trim_start();
        if !trimmed.is_empty() && !trimmed.starts_with('#') {
            lines.push((idx + 1, offset, body));
        }
        offset += raw.len();
    }
    let mut it = lines.into_iter();
    let Some((_, hoff, header)) = it.next() else {
        return Err(Error::Parse {
            position: 0,
            message: "missing `rows cols` header".into(),
        });
    };
    let dims: Vec<&str> = header.split_whitespace().collect();
    let (m, n) = match dims.as_slice() {
        [a, b] => match (a.parse::<usize>(), b.parse::<usize>()) {
            (Ok(m), Ok(n)) => (m, n),
            _ => {
                return Err(Error::Parse {
                    position: hoff,
                    message: format!("bad header `{header}`"),
                })
            }
        },
        _ => {
            return Err(Error::Parse {
                position: hoff,
                message: format!("bad header `{header}`"),
            })
        }
    };

    let mut entries = Vec::with_capacity(m * n);
    let mut rows = 0;
    for (line_no, loff, body) in it {
        if rows == m {
            return Err(Error::Parse {
                position: loff,
                message: format!("more than {m} rows"),
            });
        }
        let cells: Vec<&str> = body.split(';').collect();
        if cells.len() != n {
            return Err(Error::Shape {
                line: line_no,
                expected: n,
                found: cells.len(),
            });
        }
        let mut coff = loff;
        for cell in cells {
            entries.push(parse_ratfun_expr(cell).map_err(|e| shift(e, coff))?);
            coff += cell.len() + 1;
        }
        rows += 1;
    }
    if rows != m {
        return Err(Error::Parse {
            position: src.len(),
            message: format!("expected {m} rows, found {rows}"),
        });
    }
    RatMatrix::from_vec(m, n, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::rat;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn simple_polynomial() {
        assert_eq!(
            parse_ratfun_expr("x+1").unwrap(),
            RatFun::from_poly(p(&[1, 1]))
        );
        assert_eq!(parse_ratfun_expr(" -  3 ").unwrap(), RatFun::from_int(-3));
        assert_eq!(
            parse_ratfun_expr("2*x^3-x").unwrap(),
            RatFun::from_poly(p(&[0, -1, 0, 2]))
        );
    }

    #[test]
    fn fraction_is_normalized() {
        let f = parse_ratfun_expr("(x+1)/(x^2+2)").unwrap();
        assert_eq!(f, RatFun::new(p(&[1, 1]), p(&[2, 0, 1])).unwrap());
        let g = parse_ratfun_expr("(2*x+2)/(4*x^2-4)").unwrap();
        assert_eq!(
            g,
            RatFun::new(Poly::constant(rat(1, 2)), p(&[-1, 1])).unwrap()
        );
    }

    #[test]
    fn division_binds_to_following_atom() {
        // 1/2*x = (1/2) x, not 1/(2x)
        assert_eq!(
            parse_ratfun_expr("1/2*x").unwrap(),
            RatFun::from_poly(Poly::from_coeffs(vec![rat(0, 1), rat(1, 2)]))
        );
        // -2*x*(17+2*x)/(49+140*x+204*x^2)
        let f = parse_ratfun_expr("-2*x*(17+2*x)/(49+140*x+204*x^2)").unwrap();
        let g = RatFun::new(p(&[0, -34, -4]), p(&[49, 140, 204])).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn printed_entry_of_two_variable_fraction() {
        let f = parse_ratfun_expr("(-21-30*x+4*x^2)/(49+140*x+204*x^2)").unwrap();
        assert_eq!(f.eval(&rat(0, 1)).unwrap(), rat(-3, 7));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_ratfun_expr("x+"),
            Err(Error::Parse {
                position: 2,
                message: "unexpected end of input".into()
            })
        );
        assert!(matches!(
            parse_ratfun_expr("x y"),
            Err(Error::Parse { position: 2, .. })
        ));
        assert!(matches!(
            parse_ratfun_expr("(x+1"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_ratfun_expr("x^"), Err(Error::Parse { .. })));
        assert_eq!(
            parse_ratfun_expr("1/(x-x)"),
            Err(Error::Pole { position: 1 })
        );
    }

    #[test]
    fn canonical_print_reparses() {
        for s in [
            "(-21-30*x+4*x^2)/(49+140*x+204*x^2)",
            "-1/10",
            "3/4*x-x^5",
            "0",
            "(1)/(x)",
        ] {
            let f = parse_ratfun_expr(s).unwrap();
            assert_eq!(parse_ratfun_expr(&f.to_string()).unwrap(), f, "{s} -> {f}");
        }
    }

    #[test]
    fn identity_file() {
        let m = parse_matrix_file("2 2\n1; 0\n0; 1").unwrap();
        assert_eq!(m, RatMatrix::identity(2));
    }

    #[test]
    fn comments_and_blank_lines() {
        let m = parse_matrix_file("# header comment\n\n1 2\n# row\nx ; x^2\n").unwrap();
        assert_eq!(m.shape(), (1, 2));
    }

    #[test]
    fn short_row_is_shape_error() {
        assert_eq!(
            parse_matrix_file("2 3\n1; 2; 3\n1; 2\n"),
            Err(Error::Shape {
                line: 3,
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn row_count_errors() {
        assert!(matches!(
            parse_matrix_file("2 1\n1\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_matrix_file("1 1\n1\n2\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_matrix_file("one two\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_matrix_file(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn cell_error_position_is_absolute() {
        let src = "1 2\n1; x+\n";
        match parse_matrix_file(src) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, src.len() - 1),
            other => panic!("{other:?}"),
        }
    }
}
