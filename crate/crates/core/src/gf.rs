//! The quotient algebra `G^f = (Q<B>, *_b) / Rel_{tau,0}`, where `Rel_{tau,0}`
//! is the ideal generated by `b0` and all `w - tau(w)`.
//!
//! Relation spaces are computed per weight and cached for the process.
//! Besides the literal ideal pieces (two generation strategies), reduction
//! uses a smaller model: regularization identifies `Q<B> / (b0)` with
//! `Q<B>^0`, and the relations `w = tau(w)` identify each `tau`-orbit with
//! its larger word. On that quotient the remaining relations are the images
//! of `(v - tau v) *_b u` for nonempty `u` in `Q<B>^0`. The normal forms agree
//! with the reduced row-echelon remainders of the full ideal pieces.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::hopf::{balanced, quasi_shuffle_poly, DiamondRule};
use crate::linalg::RelationSpace;
use crate::maps::tau;
use crate::poly::Poly;
use crate::rational::{binomial, Rational};
use crate::regularization::reg_balanced;
use crate::words::{b0_free_start_words, enumerate_words, Alphabet, Word};

type Cache = Mutex<HashMap<u32, Arc<RelationSpace>>>;

#[derive(Default)]
struct Caches {
    full: Cache,
    saturated: Cache,
    compact: Cache,
}

fn caches() -> &'static Caches {
    static CACHES: OnceLock<Caches> = OnceLock::new();
    CACHES.get_or_init(Caches::default)
}

fn cached(cache: &Cache, w: u32, build: impl FnOnce() -> RelationSpace) -> Arc<RelationSpace> {
    if let Some(hit) = cache.lock().expect("cache poisoned").get(&w) {
        return hit.clone();
    }
    // built outside the lock: building may recurse into lower weights
    let space = Arc::new(build());
    cache.lock().expect("cache poisoned").entry(w).or_insert(space).clone()
}

fn terms(p: &Poly) -> Vec<(Word, Rational)> {
    p.terms().map(|(w, c)| (w.clone(), c.clone())).collect()
}

/// `v - tau(v)` for every `Q<B>^0` word of the given weight with `v < tau(v)`.
fn tau_generators(weight: u32) -> Vec<Poly> {
    b0_free_start_words(weight)
        .into_iter()
        .filter_map(|v| {
            let t = tau(&v).expect("v does not start with b0");
            (v < t).then(|| Poly::word(v).sub(&Poly::word(t)))
        })
        .collect()
}

/// The weight-`w` piece of `Rel_{tau,0}`, spanned by `g *_b u` for the
/// generators `g` of weight at most `w` and words `u` of complementary weight.
pub fn rel_tau0(w: u32) -> Arc<RelationSpace> {
    cached(&caches().full, w, || {
        let mut gens = Vec::new();
        if w >= 1 {
            let b0 = Word::b([0]);
            for u in enumerate_words(Alphabet::B, w - 1) {
                gens.push(terms(&balanced(&b0, &u)));
            }
        }
        for a in 1..=w {
            for g in tau_generators(a) {
                for u in enumerate_words(Alphabet::B, w - a) {
                    let product = quasi_shuffle_poly(&g, &Poly::word(u), DiamondRule::PositiveOnly)
                        .expect("balanced product on B");
                    gens.push(terms(&product));
                }
            }
        }
        RelationSpace::from_generators(w, enumerate_words(Alphabet::B, w), gens).expect("words of weight w")
    })
}

/// The same piece built by saturation: the generators of weight exactly `w`
/// together with `(basis of the piece of weight w') *_b (words of weight w - w')`.
pub fn rel_tau0_saturated(w: u32) -> Arc<RelationSpace> {
    cached(&caches().saturated, w, || {
        let mut gens: Vec<Vec<(Word, Rational)>> = Vec::new();
        if w == 1 {
            gens.push(vec![(Word::b([0]), Rational::from_integer(1.into()))]);
        }
        gens.extend(tau_generators(w).iter().map(terms));
        for lower in 1..w {
            let space = rel_tau0_saturated(lower);
            let words = enumerate_words(Alphabet::B, w - lower);
            for i in 0..space.dim() {
                let row = Poly::from_terms(Alphabet::B, space.row_terms(i)).expect("B-words");
                for u in &words {
                    let product = quasi_shuffle_poly(&row, &Poly::word(u.clone()), DiamondRule::PositiveOnly)
                        .expect("balanced product on B");
                    gens.push(terms(&product));
                }
            }
        }
        RelationSpace::from_generators(w, enumerate_words(Alphabet::B, w), gens).expect("words of weight w")
    })
}

/// The larger of `x` and `tau(x)` for a `Q<B>^0` word.
pub fn orbit_rep(x: &Word) -> Word {
    let t = tau(x).expect("word in Q<B>^0");
    if t > *x {
        t
    } else {
        x.clone()
    }
}

fn to_reps(p: &Poly) -> Poly {
    p.map_words(Alphabet::B, |w| Some(orbit_rep(w)))
}

/// Relations of the reduced model in weight `w`, over the orbit representatives.
fn compact_space(w: u32) -> Arc<RelationSpace> {
    cached(&caches().compact, w, || {
        let reps: Vec<Word> = b0_free_start_words(w).into_iter().filter(|x| orbit_rep(x) == *x).collect();
        let mut gens = Vec::new();
        for a in 1..w {
            let us = b0_free_start_words(w - a);
            for g in tau_generators(a) {
                for u in &us {
                    let product = quasi_shuffle_poly(&g, &Poly::word(u.clone()), DiamondRule::PositiveOnly)
                        .expect("balanced product on B");
                    let image = to_reps(&product);
                    if !image.is_zero() {
                        gens.push(terms(&image));
                    }
                }
            }
        }
        RelationSpace::from_generators(w, reps, gens).expect("orbit representatives")
    })
}

/// A class in `G^f`, held by its normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct GfElement {
    representative: Poly,
    reduced: bool,
}

impl GfElement {
    /// An unreduced representative.
    pub fn new(p: Poly) -> Result<Self> {
        if p.alphabet() != Alphabet::B {
            return Err(Error::AlphabetMismatch { expected: Alphabet::B, found: p.alphabet() });
        }
        Ok(GfElement { representative: p, reduced: false })
    }

    /// `f(w)`, reduced.
    pub fn f(w: &Word) -> Result<Self> {
        gf_reduce(&Poly::word(w.clone()))
    }

    pub fn one() -> Self {
        GfElement { representative: Poly::one(Alphabet::B), reduced: true }
    }

    pub fn representative(&self) -> &Poly {
        &self.representative
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.normal_form()?.representative.is_zero())
    }

    pub fn normal_form(&self) -> Result<GfElement> {
        if self.reduced {
            Ok(self.clone())
        } else {
            gf_reduce(&self.representative)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        gf_reduce(&self.representative.add(&other.representative))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        gf_reduce(&self.representative.sub(&other.representative))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GfElement { representative: self.representative.scale(r), reduced: self.reduced }
    }
}

impl fmt::Display for GfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.representative, f)
    }
}

impl fmt::Debug for GfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.representative, f)
    }
}

/// Normal form in `G^f`: two polynomials are equal in the quotient iff their
/// reductions agree.
pub fn gf_reduce(p: &Poly) -> Result<GfElement> {
    let regularized = reg_balanced(p)?;
    let mut out = Poly::zero(Alphabet::B);
    for (w, component) in to_reps(&regularized).components() {
        if w == 0 {
            out.add_assign(&component);
            continue;
        }
        let space = compact_space(w);
        let v = space.vector(component.terms())?;
        for (i, x) in space.reduce(&v)?.into_iter().enumerate() {
            out.add_term(space.ambient()[i].clone(), x);
        }
    }
    Ok(GfElement { representative: out, reduced: true })
}

/// Remainder modulo the literal ideal piece (reduced row-echelon, all words).
/// Slower than [`gf_reduce`]; kept to cross-check it.
pub fn gf_reduce_full(p: &Poly) -> Result<Poly> {
    if p.alphabet() != Alphabet::B {
        return Err(Error::AlphabetMismatch { expected: Alphabet::B, found: p.alphabet() });
    }
    let mut out = Poly::zero(Alphabet::B);
    for (w, component) in p.components() {
        let space = rel_tau0(w);
        let v = space.vector(component.terms())?;
        for (i, x) in space.reduce(&v)?.into_iter().enumerate() {
            out.add_term(space.ambient()[i].clone(), x);
        }
    }
    Ok(out)
}

pub fn gf_equal(p: &Poly, q: &Poly) -> Result<bool> {
    gf_reduce(&p.sub(q))?.is_zero()
}

pub fn gf_mul(a: &GfElement, b: &GfElement) -> Result<GfElement> {
    gf_reduce(&quasi_shuffle_poly(&a.representative, &b.representative, DiamondRule::PositiveOnly)?)
}

/// `dim G^f_w`.
pub fn gf_dim(w: u32) -> usize {
    if w == 0 {
        return 1;
    }
    compact_space(w).codim()
}

/// `dim G^f_w` from the literal ideal piece.
pub fn gf_dim_full(w: u32) -> usize {
    rel_tau0(w).codim()
}

fn bk0(k: u32, m: u32) -> Vec<u32> {
    std::iter::once(k).chain(std::iter::repeat_n(0, m as usize)).collect()
}

fn word_of(blocks: &[(u32, u32)]) -> Word {
    Word::b(blocks.iter().flat_map(|&(k, m)| bk0(k, m)))
}

fn coeff(n: i64, k: i64) -> Rational {
    Rational::from_integer(binomial(n, k))
}

/// Checks both closed-form expansions of `f(b_{k1} b0^{m1}) f(b_{k2} b0^{m2})`
/// against the product in `G^f`.
pub fn depth2_product_identity(k1: u32, k2: u32, m1: u32, m2: u32) -> Result<bool> {
    if k1 == 0 || k2 == 0 {
        return Err(Error::InvalidArgument("k1, k2 must be at least 1".into()));
    }
    let lhs = gf_mul(&GfElement::f(&word_of(&[(k1, m1)]))?, &GfElement::f(&word_of(&[(k2, m2)]))?)?;
    let (k1i, k2i, m1i, m2i) = (k1 as i64, k2 as i64, m1 as i64, m2 as i64);
    let m = m1 + m2;

    let mut first = Poly::zero(Alphabet::B);
    for j in 0..=m {
        let ji = j as i64;
        first.add_term(word_of(&[(k1, j), (k2, m - j)]), coeff(m1i + m2i - ji, m2i));
        first.add_term(word_of(&[(k2, j), (k1, m - j)]), coeff(m1i + m2i - ji, m1i));
    }
    first.add_term(word_of(&[(k1 + k2, m)]), coeff(m1i + m2i, m1i));

    let mut second = Poly::zero(Alphabet::B);
    for j in 1..k1 + k2 {
        let ji = j as i64;
        second.add_term(word_of(&[(j, m1), (k1 + k2 - j, m2)]), coeff(ji - 1, k1i - 1));
        second.add_term(word_of(&[(j, m2), (k1 + k2 - j, m1)]), coeff(ji - 1, k2i - 1));
    }
    second.add_term(word_of(&[(k1 + k2 - 1, m + 1)]), coeff(k1i + k2i - 2, k1i - 1));

    Ok(lhs == gf_reduce(&first)? && lhs == gf_reduce(&second)?)
}

/// Monomials `f(b2)^a f(b4)^b f(b6)^c` of the given weight, as `(a, b, c)`.
pub fn quasimodular_monomials(weight: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    if !weight.is_multiple_of(2) {
        return out;
    }
    for c in 0..=weight / 6 {
        for b in 0..=(weight - 6 * c) / 4 {
            let rest = weight - 6 * c - 4 * b;
            out.push((rest / 2, b, c));
        }
    }
    out.sort();
    out
}

/// Rank of the quasi-modular monomials of one weight inside `G^f_w`.
pub fn quasimodular_rank(weight: u32) -> Result<(usize, usize)> {
    let monomials = quasimodular_monomials(weight);
    let space = if weight == 0 { None } else { Some(compact_space(weight)) };
    let mut builder = crate::linalg::RrefBuilder::new(space.as_ref().map_or(1, |s| s.ambient_dim()));
    for &(a, b, c) in &monomials {
        let mut product = GfElement::one();
        for (letter, times) in [(2, a), (4, b), (6, c)] {
            for _ in 0..times {
                product = gf_mul(&product, &GfElement::f(&Word::b([letter]))?)?;
            }
        }
        let row: Vec<(usize, Rational)> = match &space {
            None => product.representative.terms().map(|(_, x)| (0, x.clone())).collect(),
            Some(space) => {
                let v = space.vector(product.representative.terms())?;
                v.into_iter().enumerate().filter(|(_, x)| !num_traits::Zero::is_zero(x)).collect()
            }
        };
        builder.insert(&row);
    }
    Ok((builder.rank(), monomials.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s, Some(Alphabet::B)).unwrap()
    }

    #[test]
    fn low_weight_relation_spaces() {
        assert_eq!(rel_tau0(0).dim(), 0);
        assert_eq!(rel_tau0(1).dim(), 1);
        let r2 = rel_tau0(2);
        assert_eq!(r2.dim(), 3);
        assert_eq!(r2.ambient_dim(), 5);
        for g in ["2*b0.b0", "b0.b1 + b1.b0", "b1.b0 - b2"] {
            let v = r2.vector(p(g).terms()).unwrap();
            assert!(r2.contains(&v).unwrap(), "{g}");
        }
    }

    #[test]
    fn dims_and_classes() {
        assert_eq!(gf_dim(0), 1);
        assert_eq!(gf_dim(1), 1);
        assert_eq!(gf_dim(2), 2);
        for w in 1..=5 {
            assert_eq!(gf_dim(w), gf_dim_full(w), "weight {w}");
        }
        assert!(gf_reduce(&p("b0")).unwrap().is_zero().unwrap());
        assert!(gf_equal(&p("b1.b0"), &p("b2")).unwrap());
        assert_eq!(gf_reduce(&p("b1.b1")).unwrap().representative(), &p("b1.b1"));
    }

    #[test]
    fn products() {
        let f1 = GfElement::f(&Word::b([1])).unwrap();
        let f2 = GfElement::f(&Word::b([2])).unwrap();
        let sq = gf_mul(&f1, &f1).unwrap();
        assert!(gf_equal(sq.representative(), &p("2*b1.b1 + b2")).unwrap());
        let prod = gf_mul(&f1, &f2).unwrap();
        assert!(gf_equal(prod.representative(), &p("b1.b2 + b2.b1 + b3")).unwrap());
        assert!(gf_equal(prod.representative(), &p("b1.b2 + 2*b2.b1 + b2.b0")).unwrap());
        assert_eq!(gf_mul(&GfElement::one(), &f2).unwrap(), f2);
    }

    #[test]
    fn depth_two_identities() {
        assert!(depth2_product_identity(1, 2, 0, 0).unwrap());
        assert!(depth2_product_identity(2, 3, 0, 0).unwrap());
        assert!(depth2_product_identity(1, 1, 1, 1).unwrap());
        assert!(depth2_product_identity(0, 1, 0, 0).is_err());
    }

    #[test]
    fn monomial_lists() {
        assert_eq!(quasimodular_monomials(8), vec![(0, 2, 0), (1, 0, 1), (2, 1, 0), (4, 0, 0)]);
        assert_eq!(quasimodular_monomials(0), vec![(0, 0, 0)]);
        assert!(quasimodular_monomials(5).is_empty());
    }
}
