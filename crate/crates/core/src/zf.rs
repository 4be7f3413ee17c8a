//! Formal multiple zeta values `Z^f = (Q<X>, sh) / Rel_EDS`.
//!
//! Elements are commutative polynomials in symbols `z[v]`, one per admissible
//! word `v` (starting with `x0`, ending with `x1`), written by their blocks
//! `x0^{k-1} x1`: `z[0,1;0,0,1]` is `zeta^f(2,3)`. Products of symbols are
//! resolved by the shuffle product when an element is linearized, so the
//! shuffle relations hold by construction; the relation spaces are spanned by
//! the stuffle defects of the stuffle-regularized values, multiplied by
//! admissible words to close them up to an ideal.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::hopf::{qs, shuffle, DiamondRule};
use crate::linalg::RelationSpace;
use crate::maps::iota_word;
use crate::poly::{Coeff, Poly};
use crate::rational::{self, Rational};
use crate::regularization::reg_shuffle;
use crate::words::{enumerate_words, is_admissible_x, x_word_from_indices, x_word_indices, Alphabet, Word};

/// A product of symbols, sorted; the empty product is the constant 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    weight: u32,
    symbols: Vec<Word>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { weight: 0, symbols: Vec::new() }
    }

    pub fn symbol(v: Word) -> Result<Self> {
        if !is_admissible_x(&v) {
            return Err(Error::InvalidArgument(format!("{v} is not an admissible word")));
        }
        Ok(Monomial { weight: v.weight(), symbols: vec![v] })
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn symbols(&self) -> &[Word] {
        &self.symbols
    }

    pub fn degree(&self) -> usize {
        self.symbols.len()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        symbols.sort();
        Monomial { weight: self.weight + other.weight, symbols }
    }

    /// The shuffle product of the symbol words.
    pub fn linearize(&self) -> Poly {
        self.symbols
            .iter()
            .fold(Poly::one(Alphabet::X), |acc, v| {
                let mut out = Poly::zero(Alphabet::X);
                for (u, c) in acc.terms() {
                    out.add_scaled(&shuffle(u, v), c);
                }
                out
            })
    }
}

pub fn symbol_text(v: &Word) -> String {
    let ks = x_word_indices(v).unwrap_or_default();
    let blocks: Vec<String> = ks
        .iter()
        .map(|&k| {
            let mut letters = vec!["0"; k as usize - 1];
            letters.push("1");
            letters.join(",")
        })
        .collect();
    format!("z[{}]", blocks.join(";"))
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.symbols.len() {
            let v = &self.symbols[i];
            let run = self.symbols[i..].iter().take_while(|s| *s == v).count();
            if !first {
                f.write_str("*")?;
            }
            f.write_str(&symbol_text(v))?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            first = false;
            i += run;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A polynomial in the symbols `z[v]` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ZfElement {
    terms: BTreeMap<Monomial, Rational>,
}

impl ZfElement {
    pub fn constant(c: Rational) -> Self {
        let mut z = ZfElement::default();
        z.add_term(Monomial::one(), c);
        z
    }

    /// The symbol `z[v]`, i.e. `zeta^f(v)` for admissible `v`.
    pub fn symbol(v: &Word) -> Result<Self> {
        let mut z = ZfElement::default();
        z.add_term(Monomial::symbol(v.clone())?, Rational::from_integer(1.into()));
        Ok(z)
    }

    /// `zeta^f(k1, ..., kd)` with `k1 >= 2`.
    pub fn zeta(ks: &[u32]) -> Result<Self> {
        Self::symbol(&x_word_from_indices(ks)?)
    }

    /// A linear element from a combination of admissible words (and `1`).
    pub fn from_linear(p: &Poly) -> Result<Self> {
        if p.alphabet() != Alphabet::X {
            return Err(Error::AlphabetMismatch { expected: Alphabet::X, found: p.alphabet() });
        }
        let mut z = ZfElement::default();
        for (w, c) in p.terms() {
            let m = if w.is_empty() { Monomial::one() } else { Monomial::symbol(w.clone())? };
            z.add_term(m, c.clone());
        }
        Ok(z)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if Coeff::is_zero(&c) {
            return;
        }
        let sum = self.terms.get(&m).map_or_else(|| c.clone(), |old| old + &c);
        if Coeff::is_zero(&sum) {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::weight).max()
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Coeff::one(), |acc: ZfElement, _| acc.mul(self))
    }

    /// Resolves all products by the shuffle product: a combination of
    /// admissible words and the empty word.
    pub fn linearize(&self) -> Poly {
        let mut out = Poly::zero(Alphabet::X);
        for (m, c) in &self.terms {
            out.add_scaled(&m.linearize(), c);
        }
        out
    }

    /// Parses `2*z[0,1]^2 - 1/2*z[0,0,1] + 3`; `zeta(2,1)` is accepted for
    /// `z[0,1;1]`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let mut depth = 0i32;
        for ch in s.chars() {
            match ch {
                '[' | '(' => depth += 1,
                ']' | ')' => depth -= 1,
                _ => {}
            }
            if depth == 0 && (ch == '+' || ch == '-') {
                if current.trim().is_empty() {
                    if ch == '-' {
                        negative = !negative;
                    }
                } else {
                    pieces.push((negative, std::mem::take(&mut current)));
                    negative = ch == '-';
                }
            } else {
                current.push(ch);
            }
        }
        if current.trim().is_empty() {
            return Err(Error::Parse(format!("dangling sign in '{s}'")));
        }
        pieces.push((negative, current));

        let mut out = ZfElement::default();
        for (negative, text) in pieces {
            let mut coeff = Rational::from_integer(1.into());
            let mut mono = Monomial::one();
            for factor in split_top_level(text.trim(), '*') {
                let factor = factor.trim();
                let (base, exp) = match factor.rsplit_once('^') {
                    Some((b, e)) => {
                        (b.trim(), e.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in '{factor}'")))?)
                    }
                    None => (factor, 1),
                };
                if base.starts_with("z[") || base.starts_with("zeta(") {
                    let m = Monomial::symbol(parse_symbol(base)?)?;
                    for _ in 0..exp {
                        mono = mono.mul(&m);
                    }
                } else {
                    let r = rational::parse(base)?;
                    for _ in 0..exp {
                        coeff *= &r;
                    }
                }
            }
            out.add_term(mono, if negative { -coeff } else { coeff });
        }
        Ok(out)
    }
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_symbol(s: &str) -> Result<Word> {
    let bad = || Error::Parse(format!("invalid symbol '{s}'"));
    if let Some(inner) = s.strip_prefix("zeta(").and_then(|t| t.strip_suffix(')')) {
        let ks = inner
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        let w = x_word_from_indices(&ks).map_err(|_| bad())?;
        return if is_admissible_x(&w) { Ok(w) } else { Err(bad()) };
    }
    let inner = s.strip_prefix("z[").and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
    let mut letters = Vec::new();
    for block in inner.split(';') {
        for t in block.split(',') {
            letters.push(t.trim().parse::<u32>().map_err(|_| bad())?);
        }
        if letters.last() != Some(&1) {
            return Err(bad());
        }
    }
    let w = Word::new(Alphabet::X, letters).map_err(|_| bad())?;
    if is_admissible_x(&w) {
        Ok(w)
    } else {
        Err(bad())
    }
}

impl ZfElement {
    pub fn zero() -> Self {
        ZfElement::default()
    }

    pub fn one() -> Self {
        ZfElement::constant(Rational::from_integer(1.into()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = ZfElement::default();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::from_integer(1.into()))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = ZfElement::default();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * r);
        }
        out
    }

    /// The value if the element is a constant.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::from_integer(0.into())),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }
}

impl Coeff for ZfElement {
    fn zero() -> Self {
        ZfElement::zero()
    }
    fn one() -> Self {
        ZfElement::one()
    }
    fn is_zero(&self) -> bool {
        ZfElement::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        ZfElement::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        ZfElement::mul(self, other)
    }
    fn neg(&self) -> Self {
        ZfElement::neg(self)
    }
    fn scale(&self, r: &Rational) -> Self {
        ZfElement::scale(self, r)
    }
    fn from_rational(r: Rational) -> Self {
        ZfElement::constant(r)
    }
    fn as_rational(&self) -> Option<Rational> {
        ZfElement::as_rational(self)
    }
    fn inverse(&self) -> Option<Self> {
        let c = self.as_rational()?;
        Coeff::inverse(&c).map(ZfElement::constant)
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ZfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c < &Coeff::zero();
            let mag = if negative { -c } else { c.clone() };
            f.write_str(match (i, negative) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            })?;
            if m.symbols.is_empty() {
                f.write_str(&rational::format(&mag))?;
            } else if mag == Coeff::one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", rational::format(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ZfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `zeta^f_sh` of a polynomial over `X`: shuffle regularization with
/// `zeta(x0) = zeta(x1) = 0`, as a linear element.
pub fn zeta_sh_f_poly(p: &Poly) -> Result<ZfElement> {
    ZfElement::from_linear(&reg_shuffle(p)?)
}

pub fn zeta_sh_f(w: &Word) -> Result<ZfElement> {
    zeta_sh_f_poly(&Poly::word(w.clone()))
}

/// Coefficients `e_0, ..., e_n` of `exp(sum_{k>=2} (-1)^{k-1}/k zeta(k) T^k)`.
fn correction_coefficients(n: usize) -> Vec<ZfElement> {
    let a = |k: usize| -> ZfElement {
        if k < 2 {
            return Coeff::zero();
        }
        let sign = if k.is_multiple_of(2) { -1 } else { 1 };
        ZfElement::zeta(&[k as u32]).expect("k >= 2").scale(&Rational::new(sign.into(), (k as i64).into()))
    };
    let mut e: Vec<ZfElement> = vec![Coeff::one()];
    for m in 1..=n {
        // m e_m = sum_k k a_k e_{m-k}
        let mut acc: ZfElement = Coeff::zero();
        for k in 1..=m {
            acc = acc.add(&a(k).mul(&e[m - k]).scale(&Rational::from_integer((k as i64).into())));
        }
        e.push(acc.scale(&Rational::new(1.into(), (m as i64).into())));
    }
    e
}

/// `zeta^f_*(w)`: the coefficient of `w` in
/// `exp(sum_{n>=2} (-1)^{n-1}/n zeta(n) y1^n) * sum_v zeta_sh(v) Pi_Y(v)`.
pub fn zeta_st_f(w: &Word) -> Result<ZfElement> {
    if w.alphabet() != Alphabet::Y {
        return Err(Error::AlphabetMismatch { expected: Alphabet::Y, found: w.alphabet() });
    }
    let n = w.leading(1);
    let e = correction_coefficients(n);
    let mut out: ZfElement = Coeff::zero();
    for (i, ei) in e.iter().enumerate() {
        if Coeff::is_zero(ei) {
            continue;
        }
        let rest = w.slice(i, w.len());
        out = out.add(&ei.mul(&zeta_sh_f(&iota_word(&rest)?)?));
    }
    Ok(out)
}

pub fn zeta_st_f_poly(p: &Poly) -> Result<ZfElement> {
    let mut out: ZfElement = Coeff::zero();
    for (w, c) in p.terms() {
        out = out.add(&zeta_st_f(w)?.scale(c));
    }
    Ok(out)
}

/// The stuffle defect `zeta_*(u * v) - zeta_*(u) zeta_*(v)`.
pub fn stuffle_defect(u: &Word, v: &Word) -> Result<ZfElement> {
    let product = crate::hopf::quasi_shuffle(u, v, DiamondRule::Full)?;
    Ok(zeta_st_f_poly(&product)?.sub(&zeta_st_f(u)?.mul(&zeta_st_f(v)?)))
}

/// Admissible words of weight `w`, in canonical order.
pub fn admissible_words(w: u32) -> Vec<Word> {
    enumerate_words(Alphabet::X, w).into_iter().filter(is_admissible_x).collect()
}

fn eds_cache() -> &'static Mutex<HashMap<u32, Arc<RelationSpace>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<RelationSpace>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Admissible words ordered so that words with all indices in `{2, 3}` come
/// last. Row reduction pivots on early columns, so these are kept as normal
/// form coordinates whenever they are independent.
fn eds_ambient(w: u32) -> Vec<Word> {
    let (mut hoffman, mut rest): (Vec<Word>, Vec<Word>) = admissible_words(w)
        .into_iter()
        .partition(|x| x_word_indices(x).is_some_and(|ks| ks.iter().all(|&k| k == 2 || k == 3)));
    rest.append(&mut hoffman);
    rest
}

/// The weight-`w` piece of `Rel_EDS` inside the span of admissible words:
/// stuffle defects of all pairs of nonempty `Y`-words of weight `w' <= w`,
/// shuffled with admissible words of weight `w - w'`.
pub fn rel_eds(w: u32) -> Arc<RelationSpace> {
    if let Some(hit) = eds_cache().lock().expect("cache poisoned").get(&w) {
        return hit.clone();
    }
    let mut gens = Vec::new();
    for inner in 2..=w {
        let partners: Vec<Word> =
            if inner == w { vec![Word::empty(Alphabet::X)] } else { admissible_words(w - inner) };
        if partners.is_empty() {
            continue;
        }
        for (u, v) in crate::hopf::word_pairs(Alphabet::Y, inner).into_iter().filter(|(u, v)| u.weight() + v.weight() == inner) {
            let defect = stuffle_defect(&u, &v).expect("Y-words").linearize();
            if defect.is_zero() {
                continue;
            }
            for z in &partners {
                let mut g = Poly::zero(Alphabet::X);
                for (x, c) in defect.terms() {
                    g.add_scaled(&qs(x, z, DiamondRule::None), c);
                }
                gens.push(g.terms().map(|(x, c)| (x.clone(), c.clone())).collect());
            }
        }
    }
    let space = Arc::new(RelationSpace::from_generators(w, eds_ambient(w), gens).expect("admissible words"));
    eds_cache().lock().expect("cache poisoned").entry(w).or_insert(space).clone()
}

/// Normal form modulo `Rel_EDS`, as a linear element. Components above
/// `bound` are an error.
pub fn zf_reduce(a: &ZfElement, bound: u32) -> Result<ZfElement> {
    let linear = a.linearize();
    let mut out = Poly::zero(Alphabet::X);
    for (w, component) in linear.components() {
        if w > bound {
            return Err(Error::WeightAboveBound { weight: w, bound });
        }
        if w == 0 {
            out.add_assign(&component);
            continue;
        }
        let space = rel_eds(w);
        let v = space.vector(component.terms())?;
        for (i, x) in space.reduce(&v)?.into_iter().enumerate() {
            out.add_term(space.ambient()[i].clone(), x);
        }
    }
    ZfElement::from_linear(&out)
}

/// Equality in `Z^f`: every homogeneous component of `a - b` lies in `Rel_EDS`.
pub fn zf_equal(a: &ZfElement, b: &ZfElement, bound: u32) -> Result<bool> {
    if let Some(w) = a.max_weight().into_iter().chain(b.max_weight()).max().filter(|&w| w > bound) {
        return Err(Error::WeightAboveBound { weight: w, bound });
    }
    Ok(Coeff::is_zero(&zf_reduce(&a.sub(b), bound)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn z(s: &str) -> ZfElement {
        ZfElement::parse(s).unwrap()
    }

    #[test]
    fn text_forms() {
        assert_eq!(ZfElement::zeta(&[2, 3]).unwrap().to_string(), "z[0,1;0,0,1]");
        assert_eq!(z("zeta(2,1)"), z("z[0,1;1]"));
        assert_eq!(z("2*z[0,1]^2 - 1/2*z[0,0,1] + 3").to_string(), "3 - 1/2*z[0,0,1] + 2*z[0,1]^2");
        assert!(ZfElement::parse("z[1,0]").is_err());
        assert!(ZfElement::parse("zeta(1,2)").is_err());
        assert_eq!(z("z[0,1]*z[0,1]"), z("z[0,1]^2"));
    }

    #[test]
    fn shuffle_values() {
        assert_eq!(zeta_sh_f(&Word::x([0, 1])).unwrap(), z("z[0,1]"));
        assert!(Coeff::is_zero(&zeta_sh_f(&Word::x([1])).unwrap()));
        assert_eq!(zeta_sh_f(&Word::x([1, 0, 1])).unwrap(), z("-2*z[0,1;1]"));
        assert_eq!(zeta_sh_f(&Word::empty(Alphabet::X)).unwrap(), z("1"));
    }

    #[test]
    fn stuffle_values() {
        assert_eq!(zeta_st_f(&Word::y([2, 3])).unwrap(), z("z[0,1;0,0,1]"));
        assert!(Coeff::is_zero(&zeta_st_f(&Word::y([1])).unwrap()));
        assert_eq!(zeta_st_f(&Word::y([1, 1])).unwrap(), ZfElement::zeta(&[2]).unwrap().scale(&rat(-1, 2)));
    }

    #[test]
    fn low_weight_relations() {
        assert_eq!(rel_eds(2).dim(), 0);
        assert!(zf_equal(&ZfElement::zeta(&[3]).unwrap(), &ZfElement::zeta(&[2, 1]).unwrap(), 3).unwrap());
        assert!(!zf_equal(&ZfElement::zeta(&[2]).unwrap(), &Coeff::zero(), 2).unwrap());
        let z4 = ZfElement::zeta(&[4]).unwrap();
        let z2sq = ZfElement::zeta(&[2]).unwrap().pow(2).scale(&rat(2, 5));
        assert!(zf_equal(&z4, &z2sq, 4).unwrap());
        assert!(zf_equal(&z4, &ZfElement::zeta(&[3]).unwrap(), 3).is_err());
    }

    #[test]
    fn euler_even_values() {
        let z2 = ZfElement::zeta(&[2]).unwrap();
        let z6 = ZfElement::zeta(&[6]).unwrap();
        assert!(zf_equal(&z6, &z2.pow(3).scale(&rat(8, 35)), 6).unwrap());
        assert!(!zf_equal(&z6, &z2.pow(3), 6).unwrap());
    }

    #[test]
    fn depth_two_double_shuffle() {
        for k1 in 2..=4u32 {
            for k2 in 2..=4u32 {
                let lhs = ZfElement::zeta(&[k1]).unwrap().mul(&ZfElement::zeta(&[k2]).unwrap());
                let mut rhs: ZfElement = Coeff::zero();
                for j in 2..k1 + k2 {
                    let c = rational::binomial(j as i64 - 1, k1 as i64 - 1) + rational::binomial(j as i64 - 1, k2 as i64 - 1);
                    rhs = rhs.add(&ZfElement::zeta(&[j, k1 + k2 - j]).unwrap().scale(&Rational::from_integer(c)));
                }
                assert!(zf_equal(&lhs, &rhs, k1 + k2).unwrap(), "k1={k1} k2={k2}");
            }
        }
    }

    #[test]
    fn stuffle_multiplicative_modulo_relations() {
        for (u, v) in crate::hopf::word_pairs(Alphabet::Y, 5) {
            let d = stuffle_defect(&u, &v).unwrap();
            assert!(zf_equal(&d, &Coeff::zero(), 5).unwrap(), "{u} {v}");
        }
    }
}
