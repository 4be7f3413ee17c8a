//! Regularization: balanced (through `reg_T`), shuffle and stuffle.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::hopf::{qs, shuffle, DiamondRule};
use crate::poly::{Coeff, Poly};
use crate::rational::{self, Rational};
use crate::words::{Alphabet, Word};

/// An element of `Q<B>^0 [T]`: terms `c * w T^n` with `w` not starting with `b0`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PolyT {
    terms: BTreeMap<(Word, u32), Rational>,
}

impl PolyT {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn monomial(w: Word, n: u32, c: Rational) -> Result<Self> {
        let mut p = Self::new();
        p.add_term(w, n, c)?;
        Ok(p)
    }

    pub fn add_term(&mut self, w: Word, n: u32, c: Rational) -> Result<()> {
        if w.alphabet() != Alphabet::B {
            return Err(Error::AlphabetMismatch { expected: Alphabet::B, found: w.alphabet() });
        }
        if w.first() == Some(0) {
            return Err(Error::InvalidArgument(format!("{w} starts with b0")));
        }
        if c.is_zero() {
            return Ok(());
        }
        let key = (w, n);
        let sum = self.terms.get(&key).map_or_else(|| c.clone(), |old| old + &c);
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
        Ok(())
    }

    pub fn coeff(&self, w: &Word, n: u32) -> Rational {
        self.terms.get(&(w.clone(), n)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluation at `T = 0`.
    pub fn at_zero(&self) -> Poly {
        let mut p = Poly::zero(Alphabet::B);
        for ((w, n), c) in &self.terms {
            if *n == 0 {
                p.add_term(w.clone(), c.clone());
            }
        }
        p
    }
}

impl fmt::Display for PolyT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((w, n), c)) in self.terms.iter().enumerate() {
            let sep = match (i, c < &Rational::zero()) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let mag = if c < &Rational::zero() { -c } else { c.clone() };
            f.write_str(sep)?;
            if mag != Rational::one() {
                write!(f, "{}*", rational::format(&mag))?;
            }
            f.write_str(&w.to_text())?;
            match n {
                0 => {}
                1 => f.write_str("*T")?,
                n => write!(f, "*T^{n}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn b0_power(n: usize) -> Word {
    Word::b(std::iter::repeat_n(0, n))
}

/// `w T^n -> w *_b b0^{*_b n} = n! (w *_b b0^n)`.
pub fn reg_t_forward(p: &PolyT) -> Poly {
    let mut out = Poly::zero(Alphabet::B);
    for ((w, n), c) in p.terms() {
        let scale = c * Rational::from_integer(rational::factorial(*n));
        out.add_scaled(&qs(w, &b0_power(*n as usize), DiamondRule::PositiveOnly), &scale);
    }
    out
}

/// Inverse of [`reg_t_forward`], by induction on the number of leading `b0`.
///
/// For `w = b0^n v` the product `v *_b b0^n` contains `w` with coefficient 1
/// and otherwise only words with fewer leading `b0`.
pub fn reg_t_inverse(p: &Poly) -> Result<PolyT> {
    if p.alphabet() != Alphabet::B {
        return Err(Error::AlphabetMismatch { expected: Alphabet::B, found: p.alphabet() });
    }
    let mut rest = p.clone();
    let mut out = PolyT::new();
    while let Some(n) = rest.words().map(|w| w.leading(0)).max() {
        let level: Vec<(Word, Rational)> =
            rest.terms().filter(|(w, _)| w.leading(0) == n).map(|(w, c)| (w.clone(), c.clone())).collect();
        for (w, c) in level {
            let v = w.slice(n, w.len());
            if n == 0 {
                rest.add_term(w, -c.clone());
                out.add_term(v, 0, c)?;
                continue;
            }
            let nf = Rational::from_integer(rational::factorial(n as u32));
            out.add_term(v.clone(), n as u32, &c / nf)?;
            rest.add_scaled(&qs(&v, &b0_power(n), DiamondRule::PositiveOnly), &-c);
        }
    }
    Ok(out)
}

thread_local! {
    static REG_B: RefCell<HashMap<Word, Rc<Poly>>> = RefCell::new(HashMap::new());
    static REG_SH: RefCell<HashMap<Word, Rc<Poly>>> = RefCell::new(HashMap::new());
    static REG_ST: RefCell<HashMap<Word, Rc<Poly>>> = RefCell::new(HashMap::new());
}

fn reg_balanced_word(w: &Word) -> Rc<Poly> {
    if let Some(hit) = REG_B.with(|m| m.borrow().get(w).cloned()) {
        return hit;
    }
    let value = Rc::new(reg_t_inverse(&Poly::word(w.clone())).expect("B-word").at_zero());
    REG_B.with(|m| m.borrow_mut().insert(w.clone(), value.clone()));
    value
}

/// `reg = reg_T^{-1}` evaluated at `T = 0`; lands in `Q<B>^0`.
pub fn reg_balanced<C: Coeff>(p: &Poly<C>) -> Result<Poly<C>> {
    if p.alphabet() != Alphabet::B {
        return Err(Error::AlphabetMismatch { expected: Alphabet::B, found: p.alphabet() });
    }
    let mut out = Poly::zero(Alphabet::B);
    for (w, c) in p.terms() {
        out.add_scaled(&reg_balanced_word(w), c);
    }
    Ok(out)
}

fn reg_shuffle_word(w: &Word) -> Rc<Poly> {
    if let Some(hit) = REG_SH.with(|m| m.borrow().get(w).cloned()) {
        return hit;
    }
    let lead = w.leading(1);
    let trail = w.trailing(0);
    let value = if lead > 0 {
        // x1 sh x1^{n-1} v = n x1^n v + (words with n-1 leading x1)
        let rest = shuffle(&Word::x([1]), &w.tail());
        peel(w, &rest, lead, reg_shuffle_word)
    } else if trail > 0 {
        let rest = shuffle(&w.slice(0, w.len() - 1), &Word::x([0]));
        peel(w, &rest, trail, reg_shuffle_word)
    } else {
        Poly::word(w.clone())
    };
    let value = Rc::new(value);
    REG_SH.with(|m| m.borrow_mut().insert(w.clone(), value.clone()));
    value
}

/// Given `product = n w + rest` where the product regularizes to zero,
/// returns `reg(w) = -reg(rest) / n`.
fn peel(w: &Word, product: &Poly, n: usize, reg: fn(&Word) -> Rc<Poly>) -> Poly {
    let mut rest = product.clone();
    rest.add_term(w.clone(), -Rational::from_integer((n as i64).into()));
    let mut out = Poly::zero(w.alphabet());
    let scale = -Rational::new(1.into(), (n as i64).into());
    for (u, c) in rest.terms() {
        out.add_scaled(&reg(u), &(c * &scale));
    }
    out
}

/// Shuffle regularization with `x0, x1 -> 0`; lands in the span of admissible
/// words and the empty word.
pub fn reg_shuffle<C: Coeff>(p: &Poly<C>) -> Result<Poly<C>> {
    if p.alphabet() != Alphabet::X {
        return Err(Error::AlphabetMismatch { expected: Alphabet::X, found: p.alphabet() });
    }
    let mut out = Poly::zero(Alphabet::X);
    for (w, c) in p.terms() {
        out.add_scaled(&reg_shuffle_word(w), c);
    }
    Ok(out)
}

fn reg_stuffle_word(w: &Word) -> Rc<Poly> {
    if let Some(hit) = REG_ST.with(|m| m.borrow().get(w).cloned()) {
        return hit;
    }
    let lead = w.leading(1);
    let value = if lead > 0 {
        let rest = qs(&Word::y([1]), &w.tail(), DiamondRule::Full);
        peel(w, &rest, lead, reg_stuffle_word)
    } else {
        Poly::word(w.clone())
    };
    let value = Rc::new(value);
    REG_ST.with(|m| m.borrow_mut().insert(w.clone(), value.clone()));
    value
}

/// Stuffle regularization with `y1 -> 0`; lands in the span of words not
/// starting with `y1`.
pub fn reg_stuffle<C: Coeff>(p: &Poly<C>) -> Result<Poly<C>> {
    if p.alphabet() != Alphabet::Y {
        return Err(Error::AlphabetMismatch { expected: Alphabet::Y, found: p.alphabet() });
    }
    let mut out = Poly::zero(Alphabet::Y);
    for (w, c) in p.terms() {
        out.add_scaled(&reg_stuffle_word(w), c);
    }
    Ok(out)
}
