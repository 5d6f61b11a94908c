//! Text form `3*x0^2*x1 - x2*x3 + (z^2)*x4`.

use num_bigint::BigInt;

use super::poly::{Poly, PolyCtx};
use crate::exactfield::{parse_expr_in, ExprTarget, Field, FieldResult, Rat, Ring};

pub(super) fn render<R: Ring>(p: &Poly<R>) -> String {
    if p.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let mono = p.ring().render_mono(m);
        let s = c.to_string();
        let (neg, body) = if c.is_plain_rational() {
            match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            }
        } else {
            (false, format!("({s})"))
        };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&body);
        } else if body == "1" {
            out.push_str(&mono);
        } else {
            out.push_str(&body);
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

impl<R: Field> ExprTarget for Poly<R> {
    type Env = PolyCtx<R>;

    fn lit(env: &PolyCtx<R>, n: &BigInt) -> Result<Self, String> {
        let c = R::from_rat(&env.coeff, &Rat::from_bigint(n.clone())).map_err(|e| e.to_string())?;
        Ok(Poly::constant(&env.ring, c))
    }

    fn symbol(env: &PolyCtx<R>, name: &str) -> Result<Self, String> {
        if let Some(i) = env.ring.index_of(name) {
            return Ok(Poly::var(&env.ring, &env.coeff, i));
        }
        R::named_constant(&env.coeff, name)
            .map(|c| Poly::constant(&env.ring, c))
            .ok_or_else(|| format!("unknown symbol `{name}`"))
    }

    fn add(self, o: Self) -> Self {
        Poly::add(&self, &o)
    }
    fn sub(self, o: Self) -> Self {
        Poly::sub(&self, &o)
    }
    fn mul(self, o: Self) -> Self {
        Poly::mul(&self, &o)
    }
    fn neg(self) -> Self {
        Poly::neg(&self)
    }
    fn div(self, o: Self) -> Result<Self, String> {
        if !o.is_constant() || o.is_empty() {
            return Err("division only by nonzero constants".into());
        }
        let inv = o.constant_term().inv().map_err(|e| e.to_string())?;
        Ok(self.scale(&inv))
    }
    fn pow(self, e: u32) -> Self {
        Poly::pow(&self, e)
    }
}

impl<R: Field> Poly<R> {
    pub fn parse(ctx: &PolyCtx<R>, s: &str) -> FieldResult<Self> {
        parse_expr_in::<Poly<R>>(ctx, s)
    }
}
