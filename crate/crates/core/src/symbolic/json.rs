use serde::ser::{SerializeMap, SerializeSeq, SerializeTuple};
use serde::{Serialize, Serializer};

use super::poly::{ExponentVector, LaurentPoly};
use super::ratfunc::RatFunc;

/// Integers serialize as JSON integers; half-integers as `k.5` numbers.
impl Serialize for ExponentVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for &h in self.halves() {
            if h % 2 == 0 {
                seq.serialize_element(&(h / 2))?;
            } else {
                seq.serialize_element(&(h as f64 / 2.0))?;
            }
        }
        seq.end()
    }
}

struct Term<'a>(&'a ExponentVector, String);

impl Serialize for Term<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(self.0)?;
        t.serialize_element(&self.1)?;
        t.end()
    }
}

/// List of `[exponents, "coefficient"]` pairs in graded-lex order.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for (e, c) in self.terms() {
            seq.serialize_element(&Term(e, c.to_string()))?;
        }
        seq.end()
    }
}

/// `{"num": …, "den": …}` with the expanded numerator and denominator.
impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("num", &self.numerator())?;
        m.serialize_entry("den", &self.denominator())?;
        m.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_layout() {
        let p = &LaurentPoly::monomial(ExponentVector::from_halves(&[2, 1]), 3)
            - &LaurentPoly::one(2);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[[[0,0],"-1"],[[1,0.5],"3"]]"#);
    }

    #[test]
    fn ratfunc_layout() {
        let r = RatFunc::one_minus(&ExponentVector::from_ints(&[2]))
            .inv()
            .unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"num":[[[0],"1"]],"den":[[[0],"1"],[[2],"-1"]]}"#);
    }
}
