//! Quasi-shuffle products, their dual coproducts, the antipode of the
//! balanced Hopf algebra and grouplike tests.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Coeff, Poly, TensorPoly, TruncatedSeries};
use crate::rational::Rational;
use crate::words::{enumerate_words, Alphabet, Letter, Word};

/// Which letter merges the quasi-shuffle recursion performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DiamondRule {
    /// The shuffle product: no merge.
    None,
    /// Stuffle on `Y`, Schlesinger-Zudilin stuffle on `B`: always merge.
    Full,
    /// Balanced product on `B`: merge only two positive letters.
    PositiveOnly,
}

impl DiamondRule {
    pub fn merge(self, i: Letter, j: Letter) -> Option<Letter> {
        match self {
            DiamondRule::None => None,
            DiamondRule::Full => Some(i + j),
            DiamondRule::PositiveOnly => (i >= 1 && j >= 1).then_some(i + j),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DiamondRule::None => "shuffle",
            DiamondRule::Full => "stuffle",
            DiamondRule::PositiveOnly => "balanced",
        }
    }

    /// Parses the CLI names `shuffle`, `stuffle`, `sz`, `balanced`.
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "shuffle" => Ok(DiamondRule::None),
            "stuffle" | "sz" => Ok(DiamondRule::Full),
            "balanced" => Ok(DiamondRule::PositiveOnly),
            other => Err(Error::Parse(format!("unknown rule '{other}'"))),
        }
    }

    /// The natural alphabet for a CLI rule name.
    pub fn default_alphabet(name: &str) -> Option<Alphabet> {
        match name {
            "shuffle" => Some(Alphabet::X),
            "stuffle" => Some(Alphabet::Y),
            "sz" | "balanced" => Some(Alphabet::B),
            _ => None,
        }
    }

    pub fn check(self, alphabet: Alphabet) -> Result<()> {
        let ok = match self {
            DiamondRule::None => true,
            DiamondRule::Full => alphabet != Alphabet::X,
            DiamondRule::PositiveOnly => alphabet == Alphabet::B,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::RuleMismatch { rule: self.name(), alphabet })
        }
    }

    /// Whether every product is homogeneous for the weight grading.
    pub fn is_graded(self, alphabet: Alphabet) -> bool {
        !(self == DiamondRule::Full && alphabet == Alphabet::B)
    }
}

type Terms = Rc<Vec<(Vec<Letter>, i64)>>;
type MemoKey = (Vec<Letter>, Vec<Letter>, DiamondRule);

thread_local! {
    static MEMO: RefCell<HashMap<MemoKey, Terms>> = RefCell::new(HashMap::new());
}

fn qsh_letters(u: &[Letter], v: &[Letter], rule: DiamondRule) -> Terms {
    if u.is_empty() {
        return Rc::new(vec![(v.to_vec(), 1)]);
    }
    if v.is_empty() {
        return Rc::new(vec![(u.to_vec(), 1)]);
    }
    // all three products are commutative
    let (u, v) = if u <= v { (u, v) } else { (v, u) };
    let key = (u.to_vec(), v.to_vec(), rule);
    if let Some(hit) = MEMO.with(|m| m.borrow().get(&key).cloned()) {
        return hit;
    }
    let mut acc: HashMap<Vec<Letter>, i64> = HashMap::new();
    let mut push = |first: Letter, terms: &Terms| {
        for (w, c) in terms.iter() {
            let mut word = Vec::with_capacity(w.len() + 1);
            word.push(first);
            word.extend_from_slice(w);
            *acc.entry(word).or_insert(0) += c;
        }
    };
    push(u[0], &qsh_letters(&u[1..], v, rule));
    push(v[0], &qsh_letters(u, &v[1..], rule));
    if let Some(m) = rule.merge(u[0], v[0]) {
        push(m, &qsh_letters(&u[1..], &v[1..], rule));
    }
    let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    terms.sort();
    let terms = Rc::new(terms);
    MEMO.with(|m| m.borrow_mut().insert(key, terms.clone()));
    terms
}

/// Quasi-shuffle product of two words; callers guarantee compatibility.
pub(crate) fn qs(u: &Word, v: &Word, rule: DiamondRule) -> Poly {
    let alphabet = u.alphabet();
    let mut out = Poly::zero(alphabet);
    for (w, c) in qsh_letters(u.letters(), v.letters(), rule).iter() {
        out.add_term(Word::from_valid(alphabet, w.clone()), Rational::from_integer((*c).into()));
    }
    out
}

/// `u * v` for the product selected by `rule`.
pub fn quasi_shuffle(u: &Word, v: &Word, rule: DiamondRule) -> Result<Poly> {
    if u.alphabet() != v.alphabet() {
        return Err(Error::AlphabetMismatch { expected: u.alphabet(), found: v.alphabet() });
    }
    rule.check(u.alphabet())?;
    Ok(qs(u, v, rule))
}

/// Bilinear extension of [`quasi_shuffle`].
pub fn quasi_shuffle_poly<C: Coeff>(p: &Poly<C>, q: &Poly<C>, rule: DiamondRule) -> Result<Poly<C>> {
    if p.alphabet() != q.alphabet() {
        return Err(Error::AlphabetMismatch { expected: p.alphabet(), found: q.alphabet() });
    }
    rule.check(p.alphabet())?;
    let mut out = Poly::zero(p.alphabet());
    for (u, a) in p.terms() {
        for (v, b) in q.terms() {
            out.add_scaled(&qs(u, v, rule), &a.mul(b));
        }
    }
    Ok(out)
}

pub fn shuffle(u: &Word, v: &Word) -> Poly {
    qs(u, v, DiamondRule::None)
}

/// Balanced product `*_b` on `B`-words.
pub fn balanced(u: &Word, v: &Word) -> Poly {
    debug_assert_eq!(u.alphabet(), Alphabet::B);
    qs(u, v, DiamondRule::PositiveOnly)
}

/// Stuffle on `Y`-words, SZ-stuffle on `B`-words.
pub fn stuffle(u: &Word, v: &Word) -> Poly {
    debug_assert_ne!(u.alphabet(), Alphabet::X);
    qs(u, v, DiamondRule::Full)
}

/// `b0^{*_b n} = n! b0^n`, but in general the `n`-fold product of one word.
pub fn power(w: &Word, n: u32, rule: DiamondRule) -> Poly {
    let mut acc = Poly::one(w.alphabet());
    let single = Poly::word(w.clone());
    for _ in 0..n {
        acc = quasi_shuffle_poly(&acc, &single, rule).expect("compatible rule");
    }
    acc
}

/// The deconcatenation coproduct.
pub fn delta_dec(w: &Word) -> TensorPoly {
    let mut t = TensorPoly::zero(w.alphabet());
    for i in 0..=w.len() {
        t.add_term(w.slice(0, i), w.slice(i, w.len()), Rational::one());
    }
    t
}

fn delta_generator(alphabet: Alphabet, a: Letter, rule: DiamondRule) -> TensorPoly {
    let e = Word::empty(alphabet);
    let letter = Word::from_valid(alphabet, vec![a]);
    let mut t = TensorPoly::zero(alphabet);
    t.add_term(e.clone(), letter.clone(), Rational::one());
    t.add_term(letter, e, Rational::one());
    for j in 0..=a {
        let k = a - j;
        if alphabet.admits(j) && alphabet.admits(k) && rule.merge(j, k) == Some(a) {
            t.add_term(
                Word::from_valid(alphabet, vec![j]),
                Word::from_valid(alphabet, vec![k]),
                Rational::one(),
            );
        }
    }
    t
}

/// The coproduct dual to the quasi-shuffle product of `rule`: the generator
/// formula extended multiplicatively over concatenation.
pub fn delta_dual(w: &Word, rule: DiamondRule) -> Result<TensorPoly> {
    rule.check(w.alphabet())?;
    let alphabet = w.alphabet();
    Ok(w.letters()
        .iter()
        .fold(TensorPoly::unit(alphabet), |acc, &a| acc.mul(&delta_generator(alphabet, a, rule))))
}

fn antipode_letter(a: Letter) -> Poly {
    if a == 0 {
        return Poly::word(Word::b([0])).neg();
    }
    // sum over compositions (j_1, ..., j_r) of a of (-1)^r b_{j_1} ... b_{j_r}
    fn compositions(rest: Letter, prefix: &mut Vec<Letter>, out: &mut Poly) {
        if rest == 0 {
            let sign = if prefix.len().is_multiple_of(2) { 1 } else { -1 };
            out.add_term(Word::b(prefix.iter().copied()), Rational::from_integer(sign.into()));
            return;
        }
        for j in 1..=rest {
            prefix.push(j);
            compositions(rest - j, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Poly::zero(Alphabet::B);
    compositions(a, &mut Vec::new(), &mut out);
    out
}

/// The antipode of `(Q<B>, conc, Delta_b)`: the anti-automorphism with
/// `S(b0) = -b0` and the composition formula on `b_a`.
pub fn antipode_b(w: &Word) -> Result<Poly> {
    if w.alphabet() != Alphabet::B {
        return Err(Error::AlphabetMismatch { expected: Alphabet::B, found: w.alphabet() });
    }
    Ok(w.letters()
        .iter()
        .rev()
        .fold(Poly::one(Alphabet::B), |acc, &a| acc.conc(&antipode_letter(a))))
}

/// `(p | q) = sum_w (p|w)(q|w)`.
pub fn pairing(p: &Poly, q: &Poly) -> Rational {
    p.terms().fold(Rational::zero(), |acc, (w, c)| acc + c * q.coeff(w))
}

/// `(S | p)` for a truncated series and a polynomial supported below its bound.
pub fn series_pairing<C: Coeff>(s: &TruncatedSeries<C>, p: &Poly) -> C {
    p.terms().fold(C::zero(), |acc, (w, c)| acc.add(&s.coeff(w).scale(c)))
}

/// Nonempty word pairs `(u, v)` with `u <= v` and `wt(u) + wt(v) <= bound`,
/// ordered by total weight, then `u`, then `v`.
pub fn word_pairs(alphabet: Alphabet, bound: u32) -> Vec<(Word, Word)> {
    let by_weight: Vec<Vec<Word>> = (0..=bound).map(|w| enumerate_words(alphabet, w)).collect();
    let mut out = Vec::new();
    for total in 2..=bound {
        let mut level = Vec::new();
        for a in 1..=total / 2 {
            for u in &by_weight[a as usize] {
                for v in &by_weight[(total - a) as usize] {
                    if u <= v {
                        level.push((u.clone(), v.clone()));
                    }
                }
            }
        }
        level.sort();
        out.extend(level);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrouplikeFailure {
    /// `(S | 1) != 1`.
    ConstantTerm,
    /// `(S | u * v) != (S | u)(S | v)`.
    Pair(Word, Word),
}

/// Grouplike test in the dual form: `(S|1) = 1` and the coefficients are
/// multiplicative for the product of `rule`, on all pairs that fit under the
/// truncation bound. Returns the first failure.
pub fn grouplike_failure<C: Coeff>(
    s: &TruncatedSeries<C>,
    rule: DiamondRule,
    eq: impl Fn(&C, &C) -> bool,
) -> Result<Option<GrouplikeFailure>> {
    rule.check(s.alphabet())?;
    if !eq(&s.constant(), &C::one()) {
        return Ok(Some(GrouplikeFailure::ConstantTerm));
    }
    for (u, v) in word_pairs(s.alphabet(), s.bound()) {
        let lhs = series_pairing(s, &qs(&u, &v, rule));
        let rhs = s.coeff(&u).mul(&s.coeff(&v));
        if !eq(&lhs, &rhs) {
            return Ok(Some(GrouplikeFailure::Pair(u, v)));
        }
    }
    Ok(None)
}

/// [`grouplike_failure`] with exact rational equality.
pub fn is_grouplike(s: &TruncatedSeries, rule: DiamondRule) -> Result<(bool, Option<GrouplikeFailure>)> {
    let failure = grouplike_failure(s, rule, |a, b| a == b)?;
    Ok((failure.is_none(), failure))
}

/// Checks `(Delta(w) | u (x) v) = (w | u * v)` for all words of weight at most
/// `bound` (for the graded products, all pairs with `wt(u) + wt(v) <= bound`).
pub fn pairing_dual_check(bound: u32, rule: DiamondRule, alphabet: Alphabet) -> Result<bool> {
    rule.check(alphabet)?;
    let words: Vec<Word> = (0..=bound).flat_map(|w| enumerate_words(alphabet, w)).collect();
    // coefficient table of the coproduct: (u, v) -> {w -> c}
    let mut dual: HashMap<(Word, Word), Poly> = HashMap::new();
    for w in &words {
        for ((u, v), c) in delta_dual(w, rule)?.terms() {
            dual.entry((u.clone(), v.clone()))
                .or_insert_with(|| Poly::zero(alphabet))
                .add_term(w.clone(), c.clone());
        }
    }
    let graded = rule.is_graded(alphabet);
    let mut seen = 0usize;
    for u in &words {
        for v in &words {
            let fits = if graded { u.weight() + v.weight() <= bound } else { true };
            if !fits {
                continue;
            }
            let product = qs(u, v, rule);
            let restricted = product.map_words(alphabet, |w| (w.weight() <= bound).then(|| w.clone()));
            let expected = dual.get(&(u.clone(), v.clone()));
            if expected.is_some() {
                seen += 1;
            }
            let expected = expected.cloned().unwrap_or_else(|| Poly::zero(alphabet));
            if restricted != expected {
                return Ok(false);
            }
        }
    }
    // every tensor in the coproducts must have been compared
    Ok(seen == dual.len())
}
