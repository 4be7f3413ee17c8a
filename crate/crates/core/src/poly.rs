//! Finite linear combinations of words, tensors of words, and truncated
//! non-commutative power series.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::words::{Alphabet, Word};

/// Coefficient domain for polynomials and series: `Q` itself, or the formal
/// algebra `Z^f` of the `zf` module.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn from_rational(r: Rational) -> Self;
    /// `Some` when the value is a plain rational.
    fn as_rational(&self) -> Option<Rational>;
    /// Multiplicative inverse, when it exists in the domain.
    fn inverse(&self) -> Option<Self>;
    fn render(&self) -> String;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn inverse(&self) -> Option<Self> {
        (!num_traits::Zero::is_zero(self)).then(|| self.recip())
    }
    fn render(&self) -> String {
        rational::format(self)
    }
}

/// A finite combination `sum c_w w` of words over one alphabet.
#[derive(Clone, PartialEq)]
pub struct Poly<C = Rational> {
    alphabet: Alphabet,
    terms: BTreeMap<Word, C>,
}

impl<C: Coeff> Poly<C> {
    pub fn zero(alphabet: Alphabet) -> Self {
        Poly { alphabet, terms: BTreeMap::new() }
    }

    pub fn one(alphabet: Alphabet) -> Self {
        Self::monomial(Word::empty(alphabet), C::one())
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(w, C::one())
    }

    pub fn monomial(w: Word, c: C) -> Self {
        let mut p = Self::zero(w.alphabet());
        p.add_term(w, c);
        p
    }

    pub fn from_terms(alphabet: Alphabet, terms: impl IntoIterator<Item = (Word, C)>) -> Result<Self> {
        let mut p = Self::zero(alphabet);
        for (w, c) in terms {
            if w.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch { expected: alphabet, found: w.alphabet() });
            }
            p.add_term(w, c);
        }
        Ok(p)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, C)> {
        self.terms.into_iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    /// The pairing `(p | w)`.
    pub fn coeff(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    /// Adds `c * w` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, w: Word, c: C) {
        debug_assert_eq!(w.alphabet(), self.alphabet);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_alphabet(&self, other: &Self) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch { expected: self.alphabet, found: other.alphabet });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_alphabet(other)?;
        let mut out = self.clone();
        out.add_assign(other);
        Ok(out)
    }

    /// Panics on alphabet mismatch; see [`Poly::try_add`].
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("alphabet mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.alphabet, other.alphabet, "alphabet mismatch");
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Poly<Rational>, c: &C) {
        assert_eq!(self.alphabet, other.alphabet, "alphabet mismatch");
        for (w, r) in other.terms() {
            self.add_term(w.clone(), c.scale(r));
        }
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map_coeffs(|c| c.scale(r))
    }

    pub fn scale_by(&self, k: &C) -> Self {
        self.map_coeffs(|c| c.mul(k))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut out = Poly::zero(self.alphabet);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    /// Applies a partial word map; words mapped to `None` are dropped.
    pub fn map_words(&self, alphabet: Alphabet, f: impl Fn(&Word) -> Option<Word>) -> Poly<C> {
        let mut out = Poly::zero(alphabet);
        for (w, c) in &self.terms {
            if let Some(image) = f(w) {
                out.add_term(image, c.clone());
            }
        }
        out
    }

    /// Linear extension of a map from words to rational polynomials.
    pub fn apply_linear(
        &self,
        alphabet: Alphabet,
        mut f: impl FnMut(&Word) -> Result<Poly<Rational>>,
    ) -> Result<Poly<C>> {
        let mut out = Poly::zero(alphabet);
        for (w, c) in &self.terms {
            out.add_scaled(&f(w)?, c);
        }
        Ok(out)
    }

    /// Concatenation product.
    pub fn conc(&self, other: &Self) -> Self {
        assert_eq!(self.alphabet, other.alphabet, "alphabet mismatch");
        let mut out = Self::zero(self.alphabet);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a.mul(b));
            }
        }
        out
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(Word::weight).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Word::weight);
        match it.next() {
            None => true,
            Some(w0) => it.all(|w| w == w0),
        }
    }

    pub fn homogeneous_part(&self, weight: u32) -> Self {
        Poly {
            alphabet: self.alphabet,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.weight() == weight)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous components keyed by weight.
    pub fn components(&self) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.weight())
                .or_insert_with(|| Self::zero(self.alphabet))
                .terms
                .insert(w.clone(), c.clone());
        }
        out
    }
}

impl Poly<Rational> {
    /// Parses `2*b1.b1 + b2`, `-1/2*y2`, `3` (a multiple of the empty word).
    pub fn parse(s: &str, default: Option<Alphabet>) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for ch in s.chars() {
            if (ch == '+' || ch == '-') && !current.trim().is_empty() {
                terms.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else if (ch == '+' || ch == '-') && current.trim().is_empty() {
                if ch == '-' {
                    negative = !negative;
                }
            } else {
                current.push(ch);
            }
        }
        if current.trim().is_empty() {
            return Err(Error::Parse(format!("dangling sign in '{s}'")));
        }
        terms.push((negative, current));

        let mut parsed = Vec::with_capacity(terms.len());
        let mut alphabet = default;
        for (negative, text) in terms {
            let text = text.trim();
            let (coeff, word_text) = match text.split_once('*') {
                Some((c, w)) => (rational::parse(c)?, w.trim()),
                None if text.chars().next().is_some_and(|c| c.is_ascii_digit()) && text != "1" => {
                    (rational::parse(text)?, "1")
                }
                None => (Rational::one(), text),
            };
            let word = if word_text == "1" { None } else { Some(Word::parse(word_text, alphabet)?) };
            if let Some(w) = &word {
                alphabet.get_or_insert(w.alphabet());
            }
            let coeff = if negative { -coeff } else { coeff };
            parsed.push((coeff, word));
        }
        let alphabet = alphabet
            .ok_or_else(|| Error::Parse("cannot infer the alphabet of a constant".into()))?;
        let mut p = Poly::zero(alphabet);
        for (c, w) in parsed {
            let w = w.unwrap_or_else(|| Word::empty(alphabet));
            if w.alphabet() != alphabet {
                return Err(Error::Parse(format!("word '{w}' does not belong to alphabet {alphabet}")));
            }
            p.add_term(w, c);
        }
        Ok(p)
    }
}

fn write_terms<'a, C: Coeff + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a C)>,
) -> fmt::Result {
    let mut first = true;
    for (word, c) in terms {
        let is_unit = word == "1";
        match c.as_rational() {
            Some(r) => {
                let negative = r < Rational::zero();
                let mag = if negative { -r } else { r };
                let sep = match (first, negative) {
                    (true, true) => "-",
                    (true, false) => "",
                    (false, true) => " - ",
                    (false, false) => " + ",
                };
                f.write_str(sep)?;
                if is_unit {
                    f.write_str(&rational::format(&mag))?;
                } else if num_traits::One::is_one(&mag) {
                    f.write_str(&word)?;
                } else {
                    write!(f, "{}*{}", rational::format(&mag), word)?;
                }
            }
            None => {
                if !first {
                    f.write_str(" + ")?;
                }
                if is_unit {
                    write!(f, "({})", c.render())?;
                } else {
                    write!(f, "({})*{}", c.render(), word)?;
                }
            }
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl<C: Coeff + Eq> Eq for Poly<C> {}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().map(|(w, c)| (w.to_text(), c)))
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of `Q<A> (x) Q<A>`.
#[derive(Clone, PartialEq)]
pub struct TensorPoly {
    alphabet: Alphabet,
    terms: BTreeMap<(Word, Word), Rational>,
}

impl TensorPoly {
    pub fn zero(alphabet: Alphabet) -> Self {
        TensorPoly { alphabet, terms: BTreeMap::new() }
    }

    pub fn unit(alphabet: Alphabet) -> Self {
        let mut t = Self::zero(alphabet);
        t.add_term(Word::empty(alphabet), Word::empty(alphabet), Rational::one());
        t
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn add_term(&mut self, u: Word, v: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (u, v);
        let sum = self.terms.get(&key).map_or_else(|| c.clone(), |old| old + &c);
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn coeff(&self, u: &Word, v: &Word) -> Rational {
        self.terms.get(&(u.clone(), v.clone())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((u, v), c) in &other.terms {
            out.add_term(u.clone(), v.clone(), c.clone());
        }
        out
    }

    /// Componentwise concatenation `(a (x) b)(c (x) d) = ac (x) bd`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.alphabet);
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                out.add_term(a.concat(c), b.concat(d), x * y);
            }
        }
        out
    }

    /// Applies a linear map on the left factor.
    pub fn map_left(&self, mut f: impl FnMut(&Word) -> Poly) -> Self {
        let mut out = Self::zero(self.alphabet);
        for ((a, b), x) in &self.terms {
            for (w, y) in f(a).terms() {
                out.add_term(w.clone(), b.clone(), x * y);
            }
        }
        out
    }

    pub fn map_right(&self, mut f: impl FnMut(&Word) -> Poly) -> Self {
        let mut out = Self::zero(self.alphabet);
        for ((a, b), x) in &self.terms {
            for (w, y) in f(b).terms() {
                out.add_term(a.clone(), w.clone(), x * y);
            }
        }
        out
    }
}

impl fmt::Display for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().map(|((u, v), c)| (format!("{u} (x) {v}"), c)))
    }
}

impl fmt::Debug for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A power series known on all words of weight at most `bound`.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<C = Rational> {
    bound: u32,
    poly: Poly<C>,
}

impl<C: Coeff> TruncatedSeries<C> {
    pub fn zero(alphabet: Alphabet, bound: u32) -> Self {
        TruncatedSeries { bound, poly: Poly::zero(alphabet) }
    }

    pub fn one(alphabet: Alphabet, bound: u32) -> Self {
        TruncatedSeries { bound, poly: Poly::one(alphabet) }
    }

    /// Truncates a polynomial; words above the bound are discarded.
    pub fn from_poly(p: Poly<C>, bound: u32) -> Self {
        let alphabet = p.alphabet();
        let poly = Poly { alphabet, terms: p.terms.into_iter().filter(|(w, _)| w.weight() <= bound).collect() };
        TruncatedSeries { bound, poly }
    }

    pub fn from_terms(
        alphabet: Alphabet,
        bound: u32,
        terms: impl IntoIterator<Item = (Word, C)>,
    ) -> Result<Self> {
        let mut s = Self::zero(alphabet, bound);
        for (w, c) in terms {
            if w.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch { expected: alphabet, found: w.alphabet() });
            }
            if w.weight() > bound {
                return Err(Error::WeightAboveBound { weight: w.weight(), bound });
            }
            s.poly.add_term(w, c);
        }
        Ok(s)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.poly.alphabet()
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn as_poly(&self) -> &Poly<C> {
        &self.poly
    }

    pub fn into_poly(self) -> Poly<C> {
        self.poly
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.poly.terms()
    }

    /// `(S | w)`; `None` when `w` is above the truncation bound.
    pub fn get(&self, w: &Word) -> Option<C> {
        (w.weight() <= self.bound).then(|| self.poly.coeff(w))
    }

    /// `(S | w)`; panics above the truncation bound.
    pub fn coeff(&self, w: &Word) -> C {
        self.get(w)
            .unwrap_or_else(|| panic!("coefficient of {w} is beyond truncation weight {}", self.bound))
    }

    pub fn constant(&self) -> C {
        self.poly.coeff(&Word::empty(self.alphabet()))
    }

    pub fn truncate(&self, bound: u32) -> Self {
        Self::from_poly(self.poly.clone(), bound.min(self.bound))
    }

    pub fn add(&self, other: &Self) -> Self {
        let bound = self.bound.min(other.bound);
        Self::from_poly(self.poly.add(&other.poly), bound)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let bound = self.bound.min(other.bound);
        Self::from_poly(self.poly.sub(&other.poly), bound)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        TruncatedSeries { bound: self.bound, poly: self.poly.scale(r) }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries { bound: self.bound, poly: self.poly.map_coeffs(f) }
    }

    /// Weight-preserving partial word map (same truncation bound).
    pub fn map_words(&self, alphabet: Alphabet, f: impl Fn(&Word) -> Option<Word>) -> Self {
        TruncatedSeries { bound: self.bound, poly: self.poly.map_words(alphabet, f) }
    }

    /// Concatenation product, truncated at the smaller bound.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.alphabet(), other.alphabet(), "alphabet mismatch");
        let bound = self.bound.min(other.bound);
        let mut out = Poly::zero(self.alphabet());
        for (u, a) in self.poly.terms() {
            if u.weight() > bound {
                continue;
            }
            for (v, b) in other.poly.terms() {
                if u.weight() + v.weight() <= bound {
                    out.add_term(u.concat(v), a.mul(b));
                }
            }
        }
        TruncatedSeries { bound, poly: out }
    }

    /// `sum_n coeffs[n] * X^n` for `X` without constant term.
    fn power_series(x: &Self, coeffs: impl Fn(u32) -> Rational) -> Self {
        debug_assert!(x.constant().is_zero());
        let mut result = Self::zero(x.alphabet(), x.bound);
        let mut power = Self::one(x.alphabet(), x.bound);
        for n in 0..=x.bound {
            result = result.add(&power.scale(&coeffs(n)));
            power = power.mul(x);
            if power.poly.is_zero() {
                break;
            }
        }
        result
    }

    /// `exp(X)` for `X` with vanishing constant term.
    pub fn exp_conc(&self) -> Result<Self> {
        if !self.constant().is_zero() {
            return Err(Error::InvalidArgument("exp_conc needs a vanishing constant term".into()));
        }
        Ok(Self::power_series(self, |n| Rational::from_integer(rational::factorial(n)).recip()))
    }

    /// `log(S)` for `S` with constant term 1.
    pub fn log_conc(&self) -> Result<Self> {
        if self.constant() != C::one() {
            return Err(Error::NotInvertible);
        }
        let x = self.sub(&Self::one(self.alphabet(), self.bound));
        Ok(Self::power_series(&x, |n| match n {
            0 => Rational::zero(),
            n => {
                let r = Rational::from_integer(n.into()).recip();
                if n % 2 == 0 {
                    -r
                } else {
                    r
                }
            }
        }))
    }

    /// Inverse for the concatenation product; needs an invertible constant.
    pub fn inverse(&self) -> Result<Self> {
        let c = self.constant().inverse().ok_or(Error::NotInvertible)?;
        let normalized = self.map_coeffs(|a| a.mul(&c));
        let x = Self::one(self.alphabet(), self.bound).sub(&normalized);
        let geometric = Self::power_series(&x, |_| Rational::one());
        Ok(geometric.map_coeffs(|a| a.mul(&c)))
    }

    /// Equality of all coefficients up to the smaller of the two bounds.
    pub fn eq_up_to_min(&self, other: &Self) -> bool {
        self.truncate(other.bound).poly == other.truncate(self.bound).poly
    }

    /// Equality requiring identical truncation bounds.
    pub fn eq_strict(&self, other: &Self) -> bool {
        self == other
    }
}

impl<C: Coeff> fmt::Display for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(wt > {})", self.poly, self.bound)
    }
}

impl<C: Coeff> fmt::Debug for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn b(s: &str) -> Poly {
        Poly::parse(s, Some(Alphabet::B)).unwrap()
    }

    #[test]
    fn module_operations() {
        let p = b("2*b2 + 3*b1.b1");
        assert_eq!(p.coeff(&Word::b([2])), int(2));
        assert!(p.add(&p.neg()).is_zero());
        assert_eq!(Poly::<Rational>::word(Word::b([2])).scale(&rat(1, 2)).coeff(&Word::b([2])), rat(1, 2));
        assert!(p.try_add(&Poly::one(Alphabet::X)).is_err());
    }

    #[test]
    fn text_round_trip() {
        for s in ["2*b1.b1 + b2", "-1/2*b2 + b0.b1", "3 - b1", "0"] {
            let p = if s == "0" { Poly::zero(Alphabet::B) } else { b(s) };
            let again = if p.is_zero() { Poly::zero(Alphabet::B) } else { b(&p.to_string()) };
            assert_eq!(p, again, "{s}");
        }
        assert_eq!(b("b1 + b1").to_string(), "2*b1");
        assert_eq!(b("-b1.b0").to_string(), "-b1.b0");
        assert!(Poly::parse("2*q3", None).is_err());
        assert!(Poly::parse("b1 + x1", None).is_err());
    }

    #[test]
    fn exp_log_inverse() {
        let x = TruncatedSeries::from_poly(b("b1 + 1/3*b2"), 5);
        let e = x.exp_conc().unwrap();
        assert!(e.log_conc().unwrap().eq_strict(&x));
        let inv = e.inverse().unwrap();
        assert!(e.mul(&inv).eq_strict(&TruncatedSeries::one(Alphabet::B, 5)));
        // exp(c b1) has coefficient c^n/n! on b1^n
        let e1 = TruncatedSeries::from_poly(b("2*b1"), 4).exp_conc().unwrap();
        assert_eq!(e1.coeff(&Word::b([1, 1, 1])), rat(8, 6));
        assert!(TruncatedSeries::from_poly(b("2 + b1"), 3).log_conc().is_err());
    }

    #[test]
    fn truncated_equality_variants() {
        let a = TruncatedSeries::from_poly(b("1 + b1 + b2.b2"), 3);
        let c = TruncatedSeries::from_poly(b("1 + b1"), 2);
        assert!(a.eq_up_to_min(&c));
        assert!(!a.eq_strict(&c));
        assert!(a.get(&Word::b([4])).is_none());
    }

    #[test]
    fn tensor_product_multiplication() {
        let b1 = Word::b([1]);
        let e = Word::empty(Alphabet::B);
        let mut t = TensorPoly::zero(Alphabet::B);
        t.add_term(e.clone(), b1.clone(), int(1));
        t.add_term(b1.clone(), e.clone(), int(1));
        let sq = t.mul(&t);
        assert_eq!(sq.coeff(&b1, &b1), int(2));
        assert_eq!(sq.coeff(&e, &Word::b([1, 1])), int(1));
        assert_eq!(sq.len(), 3);
    }
}
