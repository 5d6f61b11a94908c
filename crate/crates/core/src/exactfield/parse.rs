//! Small recursive-descent parser for sums of products with rational literals.
//! Shared by the field elements (`z`, `r2`) and by polynomials (variable names).

use num_bigint::BigInt;

use super::{Cyc7, FieldElem, FieldError, FieldResult, Rat};

pub trait ExprTarget: Sized {
    /// Context needed to build leaves (e.g. the polynomial ring).
    type Env;
    fn lit(env: &Self::Env, n: &BigInt) -> Result<Self, String>;
    fn symbol(env: &Self::Env, name: &str) -> Result<Self, String>;
    fn add(self, o: Self) -> Self;
    fn sub(self, o: Self) -> Self;
    fn mul(self, o: Self) -> Self;
    fn neg(self) -> Self;
    fn div(self, o: Self) -> Result<Self, String>;
    fn pow(self, e: u32) -> Self;
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let txt: String = cs[st..i].iter().collect();
            out.push(Tok::Num(txt.parse().map_err(|_| "bad number".to_string())?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

struct Parser<'e, E> {
    toks: Vec<Tok>,
    pos: usize,
    env: &'e E,
}

impl<'e, E> Parser<'e, E> {
    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr<T: ExprTarget<Env = E>>(&mut self) -> Result<T, String> {
        let mut acc = self.term::<T>()?;
        while let Some(c) = self.peek_op() {
            if c != '+' && c != '-' {
                break;
            }
            self.pos += 1;
            let rhs = self.term::<T>()?;
            acc = if c == '+' { acc.add(rhs) } else { acc.sub(rhs) };
        }
        Ok(acc)
    }

    fn term<T: ExprTarget<Env = E>>(&mut self) -> Result<T, String> {
        let mut acc = self.unary::<T>()?;
        while let Some(c) = self.peek_op() {
            if c != '*' && c != '/' {
                break;
            }
            self.pos += 1;
            let rhs = self.unary::<T>()?;
            acc = if c == '*' { acc.mul(rhs) } else { acc.div(rhs)? };
        }
        Ok(acc)
    }

    fn unary<T: ExprTarget<Env = E>>(&mut self) -> Result<T, String> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(self.unary::<T>()?.neg())
            }
            Some('+') => {
                self.pos += 1;
                self.unary::<T>()
            }
            _ => self.power::<T>(),
        }
    }

    fn power<T: ExprTarget<Env = E>>(&mut self) -> Result<T, String> {
        let base = self.atom::<T>()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.toks.get(self.pos) {
                Some(Tok::Num(n)) => {
                    let e: u32 = n.try_into().map_err(|_| "exponent too large".to_string())?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err("expected a non-negative integer exponent".into()),
            }
        }
        Ok(base)
    }

    fn atom<T: ExprTarget<Env = E>>(&mut self) -> Result<T, String> {
        let tok = self.toks.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Num(n)) => T::lit(self.env, &n),
            Some(Tok::Ident(s)) => T::symbol(self.env, &s),
            Some(Tok::Op('(')) => {
                let v = self.expr::<T>()?;
                if self.peek_op() != Some(')') {
                    return Err("missing `)`".into());
                }
                self.pos += 1;
                Ok(v)
            }
            Some(t) => Err(format!("unexpected token {t:?}")),
            None => Err("unexpected end of input".into()),
        }
    }
}

pub fn parse_expr<T: ExprTarget<Env = ()>>(s: &str) -> FieldResult<T> {
    parse_expr_in::<T>(&(), s)
}

pub fn parse_expr_in<T: ExprTarget>(env: &T::Env, s: &str) -> FieldResult<T> {
    let err = |reason: String| FieldError::Parse { input: s.to_string(), reason };
    let toks = lex(s).map_err(err)?;
    if toks.is_empty() {
        return Err(err("empty input".into()));
    }
    let mut p = Parser { toks, pos: 0, env };
    let v = p.expr::<T>().map_err(err)?;
    if p.pos != p.toks.len() {
        return Err(err(format!("trailing input at token {}", p.pos)));
    }
    Ok(v)
}

impl ExprTarget for Rat {
    type Env = ();
    fn lit(_: &(), n: &BigInt) -> Result<Rat, String> {
        Ok(Rat::from_bigint(n.clone()))
    }
    fn symbol(_: &(), name: &str) -> Result<Rat, String> {
        Err(format!("unknown symbol `{name}`"))
    }
    fn add(self, o: Rat) -> Rat {
        self + o
    }
    fn sub(self, o: Rat) -> Rat {
        self - o
    }
    fn mul(self, o: Rat) -> Rat {
        self * o
    }
    fn neg(self) -> Rat {
        -self
    }
    fn div(self, o: Rat) -> Result<Rat, String> {
        Ok(self * o.recip().map_err(|e| e.to_string())?)
    }
    fn pow(self, e: u32) -> Rat {
        super::Ring::pow(&self, e)
    }
}

impl ExprTarget for Cyc7 {
    type Env = ();
    fn lit(_: &(), n: &BigInt) -> Result<Cyc7, String> {
        Ok(Cyc7::from_rat(&Rat::from_bigint(n.clone())))
    }
    fn symbol(_: &(), name: &str) -> Result<Cyc7, String> {
        match name {
            "z" => Ok(Cyc7::zeta()),
            _ => Err(format!("unknown symbol `{name}`")),
        }
    }
    fn add(self, o: Cyc7) -> Cyc7 {
        self + o
    }
    fn sub(self, o: Cyc7) -> Cyc7 {
        self - o
    }
    fn mul(self, o: Cyc7) -> Cyc7 {
        self * o
    }
    fn neg(self) -> Cyc7 {
        -self
    }
    fn div(self, o: Cyc7) -> Result<Cyc7, String> {
        Ok(self * o.inverse().map_err(|e| e.to_string())?)
    }
    fn pow(self, e: u32) -> Cyc7 {
        super::Ring::pow(&self, e)
    }
}

impl ExprTarget for FieldElem {
    type Env = ();
    fn lit(_: &(), n: &BigInt) -> Result<FieldElem, String> {
        Ok(FieldElem::from_rat(&Rat::from_bigint(n.clone())))
    }
    fn symbol(_: &(), name: &str) -> Result<FieldElem, String> {
        match name {
            "z" => Ok(FieldElem::from(Cyc7::zeta())),
            "r2" => Ok(FieldElem::sqrt2()),
            _ => Err(format!("unknown symbol `{name}`")),
        }
    }
    fn add(self, o: FieldElem) -> FieldElem {
        &self + &o
    }
    fn sub(self, o: FieldElem) -> FieldElem {
        &self - &o
    }
    fn mul(self, o: FieldElem) -> FieldElem {
        &self * &o
    }
    fn neg(self) -> FieldElem {
        -&self
    }
    fn div(self, o: FieldElem) -> Result<FieldElem, String> {
        Ok(&self * &o.inverse().map_err(|e| e.to_string())?)
    }
    fn pow(self, e: u32) -> FieldElem {
        super::Ring::pow(&self, e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_cyclotomic_grammar() {
        let x: Cyc7 = parse_expr("1 + 2*z - 3/4*z^5").unwrap();
        assert_eq!(x.to_string(), "1 + 2*z - 3/4*z^5");
        let y: Cyc7 = parse_expr("z^7").unwrap();
        assert_eq!(y, Cyc7::one());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_expr::<Cyc7>("1 +").is_err());
        assert!(parse_expr::<Cyc7>("w").is_err());
        assert!(parse_expr::<Cyc7>("(1").is_err());
        assert!(parse_expr::<Cyc7>("1/0").is_err());
    }
}
