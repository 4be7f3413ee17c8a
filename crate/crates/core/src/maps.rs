//! The involution `tau`, canonical projections, the section `iota` and the
//! embeddings between `Q<X>`, `Q<Y>` and `Q<B>`.
//!
//! Every map here sends words to single words (or to zero) and preserves
//! weight, so it applies unchanged to polynomials and truncated series.

use crate::error::{Error, Result};
use crate::poly::{Coeff, Poly, TruncatedSeries};
use crate::words::{Alphabet, Letter, Word};

/// Containers a word-to-word map extends to.
pub trait WordLinear: Sized {
    fn alphabet(&self) -> Alphabet;
    fn try_map_words(
        &self,
        target: Alphabet,
        f: impl Fn(&Word) -> Result<Option<Word>>,
    ) -> Result<Self>;
}

impl<C: Coeff> WordLinear for Poly<C> {
    fn alphabet(&self) -> Alphabet {
        Poly::alphabet(self)
    }

    fn try_map_words(
        &self,
        target: Alphabet,
        f: impl Fn(&Word) -> Result<Option<Word>>,
    ) -> Result<Self> {
        let mut out = Poly::zero(target);
        for (w, c) in self.terms() {
            if let Some(image) = f(w)? {
                out.add_term(image, c.clone());
            }
        }
        Ok(out)
    }
}

impl<C: Coeff> WordLinear for TruncatedSeries<C> {
    fn alphabet(&self) -> Alphabet {
        TruncatedSeries::alphabet(self)
    }

    fn try_map_words(
        &self,
        target: Alphabet,
        f: impl Fn(&Word) -> Result<Option<Word>>,
    ) -> Result<Self> {
        let poly = self.as_poly().try_map_words(target, f)?;
        Ok(TruncatedSeries::from_poly(poly, self.bound()))
    }
}

fn expect_alphabet(found: Alphabet, expected: Alphabet) -> Result<()> {
    if found != expected {
        return Err(Error::AlphabetMismatch { expected, found });
    }
    Ok(())
}

/// Splits a word of `Q<B>^0` into blocks `b_k b0^m` with `k >= 1`.
pub fn b_blocks(w: &Word) -> Option<Vec<(Letter, usize)>> {
    let mut blocks: Vec<(Letter, usize)> = Vec::new();
    for &l in w.letters() {
        match (l, blocks.last_mut()) {
            (0, Some(last)) => last.1 += 1,
            (0, None) => return None,
            (k, _) => blocks.push((k, 0)),
        }
    }
    Some(blocks)
}

pub fn from_b_blocks(blocks: &[(Letter, usize)]) -> Word {
    let mut letters = Vec::new();
    for &(k, m) in blocks {
        letters.push(k);
        letters.extend(std::iter::repeat_n(0, m));
    }
    Word::b(letters)
}

/// `tau(b_{k1} b0^{m1} ... b_{kd} b0^{md}) = b_{md+1} b0^{kd-1} ... b_{m1+1} b0^{k1-1}`.
pub fn tau(w: &Word) -> Result<Word> {
    expect_alphabet(w.alphabet(), Alphabet::B)?;
    let blocks = b_blocks(w).ok_or_else(|| Error::TauDomain(w.to_text()))?;
    let image: Vec<(Letter, usize)> =
        blocks.iter().rev().map(|&(k, m)| (m as Letter + 1, k as usize - 1)).collect();
    Ok(from_b_blocks(&image))
}

/// Linear extension of [`tau`]; any word starting with `b0` is an error.
pub fn tau_linear<T: WordLinear>(t: &T) -> Result<T> {
    expect_alphabet(t.alphabet(), Alphabet::B)?;
    t.try_map_words(Alphabet::B, |w| tau(w).map(Some))
}

/// `tau` composed with `Pi_0`.
pub fn tau_after_pi0<T: WordLinear>(t: &T) -> Result<T> {
    tau_linear(&pi0(t)?)
}

pub fn pi0_word(w: &Word) -> Option<Word> {
    (w.first() != Some(0)).then(|| w.clone())
}

/// Kills every word starting with `b0`.
pub fn pi0<T: WordLinear>(t: &T) -> Result<T> {
    expect_alphabet(t.alphabet(), Alphabet::B)?;
    t.try_map_words(Alphabet::B, |w| Ok(pi0_word(w)))
}

/// `x0^{k1-1} x1 ... x0^{kd-1} x1 -> y_{k1} ... y_{kd}`; words ending in `x0`
/// map to zero.
pub fn pi_y_word(w: &Word) -> Option<Word> {
    let ks = crate::words::x_word_indices(w)?;
    Some(Word::y(ks))
}

pub fn pi_y<T: WordLinear>(t: &T) -> Result<T> {
    expect_alphabet(t.alphabet(), Alphabet::X)?;
    t.try_map_words(Alphabet::Y, |w| Ok(pi_y_word(w)))
}

/// `y_k -> x0^{k-1} x1`, a section of `Pi_Y`.
pub fn iota_word(w: &Word) -> Result<Word> {
    expect_alphabet(w.alphabet(), Alphabet::Y)?;
    crate::words::x_word_from_indices(w.letters())
}

pub fn iota<T: WordLinear>(t: &T) -> Result<T> {
    expect_alphabet(t.alphabet(), Alphabet::Y)?;
    t.try_map_words(Alphabet::X, |w| iota_word(w).map(Some))
}

fn relabel_map<T: WordLinear>(t: &T, from: Alphabet, reverse: bool) -> Result<T> {
    expect_alphabet(t.alphabet(), from)?;
    t.try_map_words(Alphabet::B, |w| {
        let w = if reverse { w.reversed() } else { w.clone() };
        w.relabel(Alphabet::B).map(Some)
    })
}

/// `x_i -> b_i`.
pub fn theta_x<T: WordLinear>(t: &T) -> Result<T> {
    relabel_map(t, Alphabet::X, false)
}

/// `y_i -> b_i`.
pub fn theta_y<T: WordLinear>(t: &T) -> Result<T> {
    relabel_map(t, Alphabet::Y, false)
}

/// `x_{e1} ... x_{en} -> b_{en} ... b_{e1}`.
pub fn theta_x_anti<T: WordLinear>(t: &T) -> Result<T> {
    relabel_map(t, Alphabet::X, true)
}

pub fn theta_x_word(w: &Word) -> Result<Word> {
    expect_alphabet(w.alphabet(), Alphabet::X)?;
    w.relabel(Alphabet::B)
}

pub fn theta_y_word(w: &Word) -> Result<Word> {
    expect_alphabet(w.alphabet(), Alphabet::Y)?;
    w.relabel(Alphabet::B)
}

pub fn theta_x_anti_word(w: &Word) -> Result<Word> {
    expect_alphabet(w.alphabet(), Alphabet::X)?;
    w.reversed().relabel(Alphabet::B)
}

/// `b0 -> x0`, `b1 -> x1`, `b_i -> 0` for `i >= 2`.
pub fn project_to_x_word(w: &Word) -> Option<Word> {
    if w.alphabet() != Alphabet::B || w.letters().iter().any(|&l| l >= 2) {
        return None;
    }
    Some(Word::x(w.letters().iter().copied()))
}

/// `b0 -> 0`, `b_i -> y_i`.
pub fn project_to_y_word(w: &Word) -> Option<Word> {
    if w.alphabet() != Alphabet::B || w.letters().contains(&0) {
        return None;
    }
    Some(Word::y(w.letters().iter().copied()))
}

pub fn project_to_x<T: WordLinear>(t: &T) -> Result<T> {
    expect_alphabet(t.alphabet(), Alphabet::B)?;
    t.try_map_words(Alphabet::X, |w| Ok(project_to_x_word(w)))
}

pub fn project_to_y<T: WordLinear>(t: &T) -> Result<T> {
    expect_alphabet(t.alphabet(), Alphabet::B)?;
    t.try_map_words(Alphabet::Y, |w| Ok(project_to_y_word(w)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{enumerate_words, words_up_to};

    fn p(s: &str) -> Poly {
        Poly::parse(s, None).unwrap()
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(&Word::b([1, 0])).unwrap(), Word::b([2]));
        assert_eq!(tau(&Word::b([2])).unwrap(), Word::b([1, 0]));
        assert_eq!(tau(&Word::b([2, 0, 3])).unwrap(), Word::b([1, 0, 0, 2, 0]));
        assert_eq!(tau(&Word::empty(Alphabet::B)).unwrap(), Word::empty(Alphabet::B));
        assert!(matches!(tau(&Word::b([0, 1])), Err(Error::TauDomain(_))));
        assert!(tau_linear(&p("b1 + b0.b1")).is_err());
        assert_eq!(tau_after_pi0(&p("b1.b0 + b0.b1")).unwrap(), p("b2"));
    }

    #[test]
    fn tau_is_weight_preserving_involution() {
        for w in words_up_to(Alphabet::B, 7).into_iter().filter(|w| w.first() != Some(0)) {
            let t = tau(&w).unwrap();
            assert_eq!(t.weight(), w.weight());
            assert_eq!(tau(&t).unwrap(), w);
        }
    }

    #[test]
    fn projection_examples() {
        assert!(pi0(&p("b0.b1")).unwrap().is_zero());
        assert_eq!(pi0(&p("b1.b0")).unwrap(), p("b1.b0"));
        assert_eq!(pi0(&Poly::<crate::Rational>::one(Alphabet::B)).unwrap(), Poly::one(Alphabet::B));
        assert_eq!(pi_y(&p("x0.x1")).unwrap(), p("y2"));
        assert!(pi_y(&p("x1.x0")).unwrap().is_zero());
        assert_eq!(pi_y(&p("x1.x0.x1")).unwrap(), p("y1.y2"));
        assert_eq!(iota_word(&Word::y([3, 1])).unwrap(), Word::x([0, 0, 1, 1]));
        assert_eq!(theta_x_anti(&p("x0.x0.x1")).unwrap(), p("b1.b0.b0"));
        assert_eq!(theta_y(&p("y2.y3")).unwrap(), p("b2.b3"));
        assert_eq!(theta_x(&p("x0.x1")).unwrap(), p("b0.b1"));
        assert_eq!(project_to_x(&p("b0.b1")).unwrap(), p("x0.x1"));
        assert!(project_to_x(&p("b2")).unwrap().is_zero());
        assert!(project_to_y(&p("b1.b0")).unwrap().is_zero());
    }

    #[test]
    fn sections_and_retractions() {
        for w in words_up_to(Alphabet::Y, 6) {
            assert_eq!(pi_y_word(&iota_word(&w).unwrap()), Some(w.clone()));
            assert_eq!(project_to_y_word(&theta_y_word(&w).unwrap()), Some(w));
        }
        for w in words_up_to(Alphabet::X, 6) {
            assert_eq!(project_to_x_word(&theta_x_word(&w).unwrap()), Some(w));
        }
    }

    #[test]
    fn lemma_on_short_words() {
        for n in 0..=6 {
            for w in enumerate_words(Alphabet::X, n) {
                let lhs = tau_after_pi0(&theta_x_anti(&Poly::word(w.clone())).unwrap()).unwrap();
                let rhs = theta_y(&pi_y(&Poly::<crate::Rational>::word(w)).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
