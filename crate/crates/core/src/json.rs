//! Serde support for the exchange types. Rationals travel as `"p/q"` strings;
//! words as an alphabet tag plus a letter list.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::poly::{Poly, TruncatedSeries};
use crate::qseries::QSeries;
use crate::rational::{self, Rational};
use crate::words::{Alphabet, Letter, Word};
use crate::zf::{Monomial, ZfElement};

fn to_strings(cs: impl IntoIterator<Item = impl std::borrow::Borrow<Rational>>) -> Vec<String> {
    cs.into_iter().map(|c| rational::format(c.borrow())).collect()
}

fn parse_rational<E: serde::de::Error>(s: &str) -> Result<Rational, E> {
    rational::parse(s).map_err(E::custom)
}

#[derive(Serialize, Deserialize)]
struct WordRepr {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WordRepr { alphabet: self.alphabet(), letters: self.letters().to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = WordRepr::deserialize(d)?;
        Word::new(r.alphabet, r.letters).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    alphabet: Alphabet,
    /// `(letters, "p/q")` in canonical word order.
    terms: Vec<(Vec<Letter>, String)>,
}

impl PolyRepr {
    fn new(p: &Poly) -> Self {
        PolyRepr {
            alphabet: p.alphabet(),
            terms: p.terms().map(|(w, c)| (w.letters().to_vec(), rational::format(c))).collect(),
        }
    }

    fn build<E: serde::de::Error>(self) -> Result<Poly, E> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (letters, c) in self.terms {
            terms.push((Word::new(self.alphabet, letters).map_err(E::custom)?, parse_rational(&c)?));
        }
        Poly::from_terms(self.alphabet, terms).map_err(E::custom)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr::new(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        PolyRepr::deserialize(d)?.build()
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    bound: u32,
    #[serde(flatten)]
    poly: PolyRepr,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SeriesRepr { bound: self.bound(), poly: PolyRepr::new(self.as_poly()) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = SeriesRepr::deserialize(d)?;
        let p = r.poly.build::<D::Error>()?;
        TruncatedSeries::from_terms(p.alphabet(), r.bound, p.into_terms()).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct QSeriesRepr {
    order: usize,
    coeffs: Vec<String>,
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QSeriesRepr { order: self.order(), coeffs: to_strings(self.coeffs()) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = QSeriesRepr::deserialize(d)?;
        if r.coeffs.len() != r.order + 1 {
            return Err(D::Error::custom(format!("expected {} coefficients, found {}", r.order + 1, r.coeffs.len())));
        }
        let coeffs = r.coeffs.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>, _>>()?;
        Ok(QSeries::from_coeffs(coeffs, r.order))
    }
}

/// A `ZfElement` term: the symbol words (as `X` letter lists) and the coefficient.
#[derive(Serialize, Deserialize)]
struct ZfRepr {
    terms: Vec<(Vec<Vec<Letter>>, String)>,
}

impl Serialize for ZfElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms()
            .map(|(m, c)| (m.symbols().iter().map(|w| w.letters().to_vec()).collect(), rational::format(c)))
            .collect();
        ZfRepr { terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZfElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let mut out = ZfElement::default();
        for (symbols, c) in ZfRepr::deserialize(d)?.terms {
            let mut m = Monomial::one();
            for letters in symbols {
                let w = Word::new(Alphabet::X, letters).map_err(D::Error::custom)?;
                m = m.mul(&Monomial::symbol(w).map_err(D::Error::custom)?);
            }
            out.add_term(m, parse_rational(&c)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use serde::de::DeserializeOwned;

    use super::*;
    use crate::hopf::balanced;
    use crate::qseries::qzeta_sz;
    use crate::rational::rat;
    use crate::schemes::{check_bm, Exact, SchemeReport};

    fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(x: &T) -> String {
        let text = serde_json::to_string(x).unwrap();
        assert_eq!(&serde_json::from_str::<T>(&text).unwrap(), x, "{text}");
        text
    }

    #[test]
    fn words_and_polys() {
        assert_eq!(round_trip(&Word::b([2, 0, 3])), r#"{"alphabet":"B","letters":[2,0,3]}"#);
        let p = balanced(&Word::b([1]), &Word::b([1])).scale(&rat(-1, 2));
        assert_eq!(round_trip(&p), r#"{"alphabet":"B","terms":[[[1,1],"-1"],[[2],"-1/2"]]}"#);
        assert!(serde_json::from_str::<Word>(r#"{"alphabet":"Y","letters":[0]}"#).is_err());
        let s = TruncatedSeries::from_poly(p, 3);
        round_trip(&s);
    }

    #[test]
    fn series_and_reports() {
        let q = qzeta_sz(&[2, 1], 8).unwrap().scale(&rat(1, 3));
        assert!(round_trip(&q).starts_with(r#"{"order":8,"coeffs":["0","0","0","0","0","1/3""#));
        assert!(serde_json::from_str::<QSeries>(r#"{"order":2,"coeffs":["1"]}"#).is_err());
        let z = ZfElement::parse("2*z[0,1]^2 - 1/3*z[0,0,1;1] + 5").unwrap();
        round_trip(&z);
        let report: SchemeReport = check_bm(&TruncatedSeries::<Rational>::one(Alphabet::B, 3), None, &Exact).unwrap();
        round_trip(&report);
    }
}
