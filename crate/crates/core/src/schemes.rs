//! Membership checks for the schemes `DM`, `DM_lambda`, `BM` and
//! `BM_(lambda, mu, nu)` on truncated series, the embedding `theta`, the
//! projection `p: G^f -> Z^f`, the Ihara product and the linearized spaces.
//!
//! Grouplike conditions are always tested in their dual form: coefficient
//! multiplicativity for the corresponding quasi-shuffle product.

use std::cell::RefCell;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hopf::{grouplike_failure, qs, word_pairs, DiamondRule, GrouplikeFailure};
use crate::linalg::{span_rref, SparseRow};
use crate::maps::{iota_word, pi_y, tau, theta_x_anti, theta_y};
use crate::poly::{Coeff, Poly, TruncatedSeries};
use crate::rational::{self, Rational};
use crate::words::{enumerate_words, Alphabet, Word};
use crate::zf::{zeta_sh_f, zeta_st_f, zf_equal, ZfElement};

/// Exact equality in a coefficient domain.
pub trait Equality<C> {
    fn equal(&self, a: &C, b: &C) -> Result<bool>;
}

/// Literal equality of coefficients, e.g. over `Q`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Exact;

impl<C: PartialEq> Equality<C> for Exact {
    fn equal(&self, a: &C, b: &C) -> Result<bool> {
        Ok(a == b)
    }
}

/// Equality in `Z^f` up to weight `bound`.
#[derive(Clone, Copy, Debug)]
pub struct ZfAlgebra {
    pub bound: u32,
}

impl Equality<ZfElement> for ZfAlgebra {
    fn equal(&self, a: &ZfElement, b: &ZfElement) -> Result<bool> {
        zf_equal(a, b, self.bound)
    }
}

/// Outcome of one defining condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub label: String,
    pub statement: String,
    pub passed: bool,
    /// First failing word or word pair.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeReport {
    pub scheme: String,
    pub bound: u32,
    pub conditions: Vec<Condition>,
}

impl SchemeReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn condition(&self, label: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.label == label)
    }

    fn push(&mut self, label: &'static str, statement: &'static str, witness: Option<String>) {
        self.conditions.push(Condition {
            label: label.into(),
            statement: statement.into(),
            passed: witness.is_none(),
            witness,
        });
    }
}

impl fmt::Display for SchemeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "pass" } else { "fail" };
        writeln!(f, "{} (weight <= {}): {verdict}", self.scheme, self.bound)?;
        for c in &self.conditions {
            write!(f, "  ({}) {}: {}", c.label, c.statement, if c.passed { "pass" } else { "fail" })?;
            if let Some(w) = &c.witness {
                write!(f, " at {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn first_nonequal<C: Coeff>(
    s: &TruncatedSeries<C>,
    checks: impl IntoIterator<Item = (Word, C)>,
    eq: &impl Equality<C>,
) -> Result<Option<String>> {
    for (w, expected) in checks {
        if w.weight() <= s.bound() && !eq.equal(&s.coeff(&w), &expected)? {
            return Ok(Some(w.to_text()));
        }
    }
    Ok(None)
}

fn grouplike_witness<C: Coeff>(
    s: &TruncatedSeries<C>,
    rule: DiamondRule,
    eq: &impl Equality<C>,
) -> Result<Option<String>> {
    let error = RefCell::new(None);
    let failure = grouplike_failure(s, rule, |a, b| match eq.equal(a, b) {
        Ok(v) => v,
        Err(e) => {
            error.borrow_mut().get_or_insert(e);
            false
        }
    })?;
    if let Some(e) = error.into_inner() {
        return Err(e);
    }
    Ok(failure.map(|f| match f {
        GrouplikeFailure::ConstantTerm => "1".to_string(),
        GrouplikeFailure::Pair(u, v) => format!("({u}, {v})"),
    }))
}

/// `phi_corr = exp(sum_{n>=2} (-1)^{n-1}/n c_n y_1^n)` for `c_n = depth_one(n)`.
fn correction<C: Coeff>(bound: u32, depth_one: impl Fn(u32) -> C) -> Result<TruncatedSeries<C>> {
    let mut exponent = Poly::zero(Alphabet::Y);
    for n in 2..=bound {
        let sign = if n % 2 == 0 { -1 } else { 1 };
        exponent.add_term(Word::y(vec![1; n as usize]), depth_one(n).scale(&rational::rat(sign, n as i64)));
    }
    TruncatedSeries::from_poly(exponent, bound).exp_conc()
}

/// `phi_* = exp(sum_{n>=2} (-1)^{n-1}/n (Pi_Y phi | y_n) y_1^n) Pi_Y(phi)`.
pub fn phi_star<C: Coeff>(phi: &TruncatedSeries<C>) -> Result<TruncatedSeries<C>> {
    expect(phi.alphabet(), Alphabet::X)?;
    let projected = pi_y(phi)?;
    Ok(correction(phi.bound(), |n| projected.coeff(&Word::y([n])))?.mul(&projected))
}

/// Conditions (i)-(iii) of `DM`, and (iv) `(phi | x0 x1) = lambda` if given.
pub fn check_dm<C: Coeff>(
    phi: &TruncatedSeries<C>,
    lambda: Option<&C>,
    eq: &impl Equality<C>,
) -> Result<SchemeReport> {
    expect(phi.alphabet(), Alphabet::X)?;
    let name = if lambda.is_some() { "DM_lambda" } else { "DM" };
    let mut report = SchemeReport { scheme: name.into(), bound: phi.bound(), conditions: Vec::new() };
    let zeros = [Word::x([0]), Word::x([1])].map(|w| (w, C::zero()));
    report.push("i", "(phi|x0) = (phi|x1) = 0", first_nonequal(phi, zeros, eq)?);
    report.push("ii", "phi grouplike for the shuffle coproduct", grouplike_witness(phi, DiamondRule::None, eq)?);
    let star = phi_star(phi)?;
    report.push("iii", "phi_* grouplike for the stuffle coproduct", grouplike_witness(&star, DiamondRule::Full, eq)?);
    if let Some(l) = lambda {
        report.push("iv", "(phi|x0x1) = lambda", first_nonequal(phi, [(Word::x([0, 1]), l.clone())], eq)?);
    }
    Ok(report)
}

/// Conditions (i)-(iii) of `BM`, and (iv) `(Phi|b2, b4, b6) = (lambda, mu, nu)`
/// if given; letters beyond the truncation are not constrained.
pub fn check_bm<C: Coeff>(
    phi: &TruncatedSeries<C>,
    lambda_mu_nu: Option<(&C, &C, &C)>,
    eq: &impl Equality<C>,
) -> Result<SchemeReport> {
    expect(phi.alphabet(), Alphabet::B)?;
    let name = if lambda_mu_nu.is_some() { "BM_(lambda,mu,nu)" } else { "BM" };
    let mut report = SchemeReport { scheme: name.into(), bound: phi.bound(), conditions: Vec::new() };
    report.push("i", "(Phi|b0) = 0", first_nonequal(phi, [(Word::b([0]), C::zero())], eq)?);
    report.push(
        "ii",
        "Phi grouplike for the balanced coproduct",
        grouplike_witness(phi, DiamondRule::PositiveOnly, eq)?,
    );
    let mut witness = None;
    'outer: for w in 1..=phi.bound() {
        for x in enumerate_words(Alphabet::B, w) {
            if x.first() == Some(0) {
                continue;
            }
            if !eq.equal(&phi.coeff(&tau(&x)?), &phi.coeff(&x))? {
                witness = Some(x.to_text());
                break 'outer;
            }
        }
    }
    report.push("iii", "tau(Pi_0(Phi)) = Pi_0(Phi)", witness);
    if let Some((l, m, n)) = lambda_mu_nu {
        let checks = [(Word::b([2]), l.clone()), (Word::b([4]), m.clone()), (Word::b([6]), n.clone())];
        report.push("iv", "(Phi|b2, b4, b6) = (lambda, mu, nu)", first_nonequal(phi, checks, eq)?);
    }
    Ok(report)
}

/// `theta(phi) = theta_X^anti(phi) theta_Y(phi_*)`.
pub fn theta_embed<C: Coeff>(phi: &TruncatedSeries<C>) -> Result<TruncatedSeries<C>> {
    let left = theta_x_anti(phi)?;
    let right = theta_y(&phi_star(phi)?)?;
    Ok(left.mul(&right))
}

/// Recovers `phi` from `theta(phi)` for `phi` in `DM`.
///
/// The `{b0, b1}`-part of `theta(phi)` is `theta_X^anti(phi) theta_Y(phi_corr)`:
/// the pure `y_1`-powers of `phi_*` come from the correction factor alone.
/// Its coefficients at `b1 b0^{n-1}` are `(phi | x0^{n-1} x1)`, which
/// determine `phi_corr`; dividing it off and reversing gives `phi`.
pub fn theta_inverse<C: Coeff>(big: &TruncatedSeries<C>) -> Result<TruncatedSeries<C>> {
    expect(big.alphabet(), Alphabet::B)?;
    let restricted = big.map_words(Alphabet::B, |w| w.letters().iter().all(|&l| l <= 1).then(|| w.clone()));
    let depth_one = |n: u32| {
        let mut letters = vec![0; n as usize];
        letters[0] = 1;
        restricted.coeff(&Word::b(letters))
    };
    let tail = theta_y(&correction(big.bound(), depth_one)?)?;
    let anti = restricted.mul(&tail.inverse()?);
    Ok(anti.map_words(Alphabet::X, |w| Some(w.reversed().relabel(Alphabet::X).expect("letters 0, 1"))))
}

/// `p(f(w)) = sum_{w = uv} zeta_sh((theta_X^anti)^{-1} u) zeta_*(theta_Y^{-1} v)`
/// over `u` in `{b0, b1}*` and `v` in `{b_i | i >= 1}*`.
pub fn p_project(w: &Word, bound: u32) -> Result<ZfElement> {
    expect(w.alphabet(), Alphabet::B)?;
    if w.weight() > bound {
        return Err(Error::WeightAboveBound { weight: w.weight(), bound });
    }
    let letters = w.letters();
    let mut out = ZfElement::zero();
    for i in 0..=letters.len() {
        if letters[..i].iter().any(|&l| l > 1) || letters[i..].contains(&0) {
            continue;
        }
        let u = w.slice(0, i).reversed().relabel(Alphabet::X)?;
        let v = w.slice(i, letters.len()).relabel(Alphabet::Y)?;
        let left = zeta_sh_f(&u)?;
        if left.is_zero() {
            continue;
        }
        out = out.add(&left.mul(&zeta_st_f(&v)?));
    }
    Ok(out)
}

pub fn p_project_poly(p: &Poly, bound: u32) -> Result<ZfElement> {
    let mut out = ZfElement::zero();
    for (w, c) in p.terms() {
        out = out.add(&p_project(w, bound)?.scale(c));
    }
    Ok(out)
}

/// The group law `G (*) H = G kappa_G(H)` of `DM_0`, where `kappa_G` fixes
/// `x0` and sends `x1` to `G^{-1} x1 G`.
pub fn ihara_mul<C: Coeff>(g: &TruncatedSeries<C>, h: &TruncatedSeries<C>) -> Result<TruncatedSeries<C>> {
    expect(g.alphabet(), Alphabet::X)?;
    expect(h.alphabet(), Alphabet::X)?;
    if g.constant() != C::one() {
        return Err(Error::NotInvertible);
    }
    let bound = g.bound().min(h.bound());
    let g = g.truncate(bound);
    let letter = |l| TruncatedSeries::from_poly(Poly::word(Word::x([l])), bound);
    let x0 = letter(0);
    let x1 = g.inverse()?.mul(&letter(1)).mul(&g);
    let mut image = TruncatedSeries::zero(Alphabet::X, bound);
    for (w, c) in h.terms() {
        let kappa = w.letters().iter().fold(TruncatedSeries::one(Alphabet::X, bound), |acc, &l| {
            acc.mul(if l == 0 { &x0 } else { &x1 })
        });
        image = image.add(&kappa.map_coeffs(|a| a.mul(c)));
    }
    Ok(g.mul(&image))
}

fn kernel(words: &[Word], functionals: Vec<Poly>) -> Vec<Poly> {
    let index = |w: &Word| words.binary_search(w).expect("word of the ambient weight");
    let rows: Vec<SparseRow> = functionals
        .iter()
        .map(|f| {
            let mut row: SparseRow = f.terms().map(|(w, c)| (index(w), c.clone())).collect();
            row.sort_by_key(|e| e.0);
            row
        })
        .filter(|r| !r.is_empty())
        .collect();
    let (rref, pivots) = span_rref(&rows, words.len());
    let mut out = Vec::new();
    for free in (0..words.len()).filter(|c| pivots.binary_search(c).is_err()) {
        let mut v = Poly::zero(words[0].alphabet());
        v.add_term(words[free].clone(), Rational::one());
        for (row, &p) in rref.iter().zip(&pivots) {
            if let Some((_, x)) = row.iter().find(|e| e.0 == free) {
                v.add_term(words[p].clone(), -x.clone());
            }
        }
        out.push(v);
    }
    out
}

fn pairs_of_weight(alphabet: Alphabet, w: u32) -> impl Iterator<Item = (Word, Word)> {
    word_pairs(alphabet, w).into_iter().filter(move |(u, v)| u.weight() + v.weight() == w)
}

/// Basis of the first-order solutions of weight `w` to the `DM_0` conditions:
/// `f` orthogonal to nontrivial shuffles, `(f|x0x1) = 0`, and
/// `psi(f) = Pi_Y(f) + sum_n (-1)^{n-1}/n (Pi_Y f|y_n) y_1^n` orthogonal to
/// nontrivial stuffles.
pub fn linearized_dm0(w: u32) -> Vec<Poly> {
    if w < 2 {
        return Vec::new();
    }
    let words = enumerate_words(Alphabet::X, w);
    let mut functionals: Vec<Poly> = Vec::new();
    if w == 2 {
        functionals.push(Poly::word(Word::x([0, 1])));
    }
    for (u, v) in pairs_of_weight(Alphabet::X, w) {
        functionals.push(qs(&u, &v, DiamondRule::None));
    }
    let sign = if w.is_multiple_of(2) { -1 } else { 1 };
    let correction = rational::rat(sign, w as i64);
    let y1_power = Word::y(vec![1; w as usize]);
    let mut top = vec![0; w as usize - 1];
    top.push(1);
    let top = Word::x(top);
    for (u, v) in pairs_of_weight(Alphabet::Y, w) {
        let product = qs(&u, &v, DiamondRule::Full);
        // (psi(f) | p) as a functional on f
        let mut functional = Poly::zero(Alphabet::X);
        for (y, c) in product.terms() {
            functional.add_term(iota_word(y).expect("Y-word"), c.clone());
        }
        functional.add_term(top.clone(), product.coeff(&y1_power) * &correction);
        functionals.push(functional);
    }
    kernel(&words, functionals)
}

/// Basis of the first-order solutions of weight `w` to the `BM_0` conditions:
/// `(f|b0) = (f|b2) = (f|b4) = (f|b6) = 0`, `f` orthogonal to nontrivial
/// balanced products, and `tau(Pi_0 f) = Pi_0 f`.
pub fn linearized_bm0(w: u32) -> Vec<Poly> {
    if w == 0 {
        return Vec::new();
    }
    let words = enumerate_words(Alphabet::B, w);
    let mut functionals: Vec<Poly> = Vec::new();
    for l in [0, 2, 4, 6] {
        let letter = Word::b([l]);
        if letter.weight() == w {
            functionals.push(Poly::word(letter));
        }
    }
    for (u, v) in pairs_of_weight(Alphabet::B, w) {
        functionals.push(qs(&u, &v, DiamondRule::PositiveOnly));
    }
    for x in words.iter().filter(|x| x.first() != Some(0)) {
        let image = tau(x).expect("word in B^0");
        if &image != x {
            let mut f = Poly::word(x.clone());
            f.add_term(image, -Rational::one());
            functionals.push(f);
        }
    }
    kernel(&words, functionals)
}

/// Restriction of a series to its words, as a [`TruncatedSeries`] over the
/// same alphabet with coefficient function `f`.
pub fn generating_series<C: Coeff>(
    alphabet: Alphabet,
    bound: u32,
    f: impl Fn(&Word) -> Result<C>,
) -> Result<TruncatedSeries<C>> {
    let mut terms = Vec::new();
    for w in 0..=bound {
        for word in enumerate_words(alphabet, w) {
            let c = f(&word)?;
            if !c.is_zero() {
                terms.push((word, c));
            }
        }
    }
    TruncatedSeries::from_terms(alphabet, bound, terms)
}

/// `sum_{wt(w) <= bound} zeta^f_sh(w) w` over `X`.
pub fn zeta_generating_series(bound: u32) -> Result<TruncatedSeries<ZfElement>> {
    generating_series(Alphabet::X, bound, zeta_sh_f)
}

fn expect(found: Alphabet, expected: Alphabet) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch { expected, found })
    }
}
