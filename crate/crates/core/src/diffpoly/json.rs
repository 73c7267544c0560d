//! JSON form `{"terms":[{"mono":{k:e,...},"num":..,"den":..}]}`.
//!
//! Multi-field alphabets key monomials as `"E:k"`; Gaussian coefficients add
//! `"im_num"`/`"im_den"`. Integers are decimal strings so nothing is truncated.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use super::coeff::{Coeff, GaussianRational, Rational};
use super::lambda::LambdaPoly;
use super::monomial::{Alphabet, Monomial, Var};
use super::poly::Poly;
use super::DiffPolyError;

pub trait JsonCoeff: Coeff {
    fn write(&self, obj: &mut Map<String, Value>);
    fn read(obj: &Map<String, Value>) -> Result<Self, DiffPolyError>;
}

fn bad(msg: impl Into<String>) -> DiffPolyError {
    DiffPolyError::Json(msg.into())
}

fn read_rational(obj: &Map<String, Value>, num: &str, den: &str) -> Result<Rational, DiffPolyError> {
    let get = |k: &str| -> Result<BigInt, DiffPolyError> {
        match obj.get(k) {
            Some(Value::String(s)) => s.parse().map_err(|_| bad(format!("bad integer in {k}"))),
            Some(Value::Number(n)) => n.to_string().parse().map_err(|_| bad(format!("bad integer in {k}"))),
            _ => Err(bad(format!("missing {k}"))),
        }
    };
    let d = get(den)?;
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(get(num)?, d))
}

impl JsonCoeff for Rational {
    fn write(&self, obj: &mut Map<String, Value>) {
        obj.insert("num".into(), Value::String(self.numer().to_string()));
        obj.insert("den".into(), Value::String(self.denom().to_string()));
    }

    fn read(obj: &Map<String, Value>) -> Result<Self, DiffPolyError> {
        read_rational(obj, "num", "den")
    }
}

impl JsonCoeff for GaussianRational {
    fn write(&self, obj: &mut Map<String, Value>) {
        self.re.write(obj);
        obj.insert("im_num".into(), Value::String(self.im.numer().to_string()));
        obj.insert("im_den".into(), Value::String(self.im.denom().to_string()));
    }

    fn read(obj: &Map<String, Value>) -> Result<Self, DiffPolyError> {
        let re = read_rational(obj, "num", "den")?;
        let im = if obj.contains_key("im_num") { read_rational(obj, "im_num", "im_den")? } else { Rational::zero() };
        Ok(GaussianRational::new(re, im))
    }
}

fn var_key<A: Alphabet>(v: Var) -> String {
    if A::NAMES.len() == 1 {
        v.order.to_string()
    } else {
        format!("{}:{}", A::NAMES[v.field as usize], v.order)
    }
}

fn parse_key<A: Alphabet>(key: &str) -> Result<Var, DiffPolyError> {
    let (field, order) = match key.split_once(':') {
        Some((name, k)) => {
            let f = A::NAMES.iter().position(|n| *n == name).ok_or_else(|| bad(format!("unknown field {name}")))?;
            (f as u8, k)
        }
        None if A::NAMES.len() == 1 => (0, key),
        None => return Err(bad(format!("field missing in key {key}"))),
    };
    let order = order.parse().map_err(|_| bad(format!("bad order in key {key}")))?;
    Ok(Var::new(field, order))
}

impl<C: JsonCoeff, A: Alphabet> Poly<C, A> {
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(m, c)| {
                let mono: Map<String, Value> = m.factors().iter().map(|&(v, e)| (var_key::<A>(v), json!(e))).collect();
                let mut obj = Map::new();
                obj.insert("mono".into(), Value::Object(mono));
                c.write(&mut obj);
                Value::Object(obj)
            })
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self, DiffPolyError> {
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms array"))?;
        let mut p = Self::zero();
        for t in terms {
            let obj = t.as_object().ok_or_else(|| bad("term is not an object"))?;
            let mono = obj.get("mono").and_then(Value::as_object).ok_or_else(|| bad("missing mono"))?;
            let mut m = Monomial::one();
            for (k, e) in mono {
                let e = e.as_u64().ok_or_else(|| bad("exponent must be a non-negative integer"))?;
                m.mul_var(parse_key::<A>(k)?, e as u32);
            }
            p.add_term(m, C::read(obj)?);
        }
        Ok(p)
    }
}

impl<C: JsonCoeff, A: Alphabet> LambdaPoly<C, A> {
    /// `{"coeffs":[...]}`, entry `i` multiplying `lambda^i`.
    pub fn to_json(&self) -> Value {
        json!({ "coeffs": self.coeffs().iter().map(Poly::to_json).collect::<Vec<_>>() })
    }

    pub fn from_json(v: &Value) -> Result<Self, DiffPolyError> {
        let arr = v.get("coeffs").and_then(Value::as_array).ok_or_else(|| bad("missing coeffs array"))?;
        let coeffs = arr.iter().map(Poly::from_json).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_coeffs(coeffs))
    }
}
