//! Named verification suites. Each suite checks one group of identities and
//! reports one line per check; `run_all` runs them in declaration order.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{gf_dim, gf_dim_full, quasimodular_rank, rel_tau0, rel_tau0_saturated};
use crate::hopf::{antipode_b, balanced, delta_dual, pairing_dual_check, quasi_shuffle, word_pairs, DiamondRule};
use crate::maps::{pi_y, tau, tau_after_pi0, theta_x_anti, theta_y};
use crate::poly::{Coeff, Poly, TruncatedSeries};
use crate::qseries::{
    bi_eisenstein_depth1, bi_eisenstein_derivative_check, qzeta_poly, qzeta_sz, qzeta_word,
    sz_binomial_identity_check, sz_tau_invariance_check,
};
use crate::rational::{binomial, rat, Rational};
use crate::regularization::{reg_balanced, reg_t_forward, reg_t_inverse};
use crate::schemes::{
    check_bm, check_dm, ihara_mul, p_project, p_project_poly, theta_embed, theta_inverse, zeta_generating_series,
    ZfAlgebra,
};
use crate::words::{b0_free_start_words, enumerate_words, words_up_to, Alphabet, Word};
use crate::zf::{zf_equal, ZfElement};

/// Suite names and what they establish, in run order.
pub const SUITES: [(&str, &str); 14] = [
    ("product", "balanced product b1 *_b b1 = 2 b1.b1 + b2"),
    ("duality", "coproducts dual to the quasi-shuffle products"),
    ("hopf", "coassociativity and antipode of (Q<B>, conc, Delta_b)"),
    ("lemma", "tau Pi_0 theta_X^anti = theta_Y Pi_Y"),
    ("regularization", "reg_T round trip and reg_balanced multiplicativity"),
    ("gf", "relation spaces of G^f from two generation strategies"),
    ("euler", "Euler relations in Z^f"),
    ("double-shuffle", "depth-two double shuffle in Z^f"),
    ("theorem-p", "projection p: G^f -> Z^f"),
    ("theorem-theta", "embedding theta: DM -> BM on the zeta series"),
    ("qseries", "Schlesinger-Zudilin q-series identities"),
    ("eisenstein", "depth-one bi-Eisenstein series"),
    ("freeness", "quasi-modular monomials independent in G^f"),
    ("ihara", "Ihara group law"),
];

/// Optional overrides of the built-in weight and `q`-order bounds.
#[derive(Clone, Copy, Debug, Default)]
pub struct Params {
    pub weight: Option<u32>,
    pub order: Option<usize>,
}

impl Params {
    fn weight(&self, default: u32) -> u32 {
        self.weight.unwrap_or(default)
    }

    fn order(&self, default: usize) -> usize {
        self.order.unwrap_or(default)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub title: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "[{verdict}] {}: {}", self.suite, self.title)?;
        for c in &self.checks {
            writeln!(f, "  [{}] {}: {}", if c.passed { "ok" } else { "FAILED" }, c.name, c.detail)?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    /// Records `first failing item` or the number of items checked.
    fn push_all<T: fmt::Display>(&mut self, name: impl Into<String>, items: usize, failure: Option<T>) {
        match failure {
            None => self.push(name, true, format!("{items} cases")),
            Some(f) => self.push(name, false, format!("fails at {f}")),
        }
    }
}

pub fn run_suite(name: &str, params: &Params) -> Result<SuiteReport> {
    let title = SUITES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{name}'")))?;
    let mut checks = Checks::default();
    match name {
        "product" => product(&mut checks),
        "duality" => duality(&mut checks, params.weight(6))?,
        "hopf" => hopf(&mut checks, params.weight(6))?,
        "lemma" => lemma(&mut checks, params.weight(8))?,
        "regularization" => regularization(&mut checks, params.weight(5))?,
        "gf" => gf(&mut checks, params.weight(7)),
        "euler" => euler(&mut checks)?,
        "double-shuffle" => double_shuffle(&mut checks)?,
        "theorem-p" => theorem_p(&mut checks, params.weight(6))?,
        "theorem-theta" => theorem_theta(&mut checks, params.weight(5))?,
        "qseries" => qseries(&mut checks, params.order(50))?,
        "eisenstein" => eisenstein(&mut checks, params.order(40))?,
        "freeness" => freeness(&mut checks, params.weight(8))?,
        "ihara" => ihara(&mut checks, params.weight(4))?,
        _ => unreachable!("suite names come from SUITES"),
    }
    Ok(SuiteReport { suite: name.into(), title: title.into(), checks: checks.0 })
}

pub fn run_all(params: &Params) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|(name, _)| run_suite(name, params)).collect()
}

fn product(checks: &mut Checks) {
    let b1 = Word::b([1]);
    let lhs = balanced(&b1, &b1);
    let expected = Poly::word(Word::b([1, 1])).scale(&rat(2, 1)).add(&Poly::word(Word::b([2])));
    checks.push("b1 *_b b1", lhs == expected, lhs.to_string());
}

fn duality(checks: &mut Checks, w: u32) -> Result<()> {
    for (rule, alphabet) in
        [(DiamondRule::PositiveOnly, Alphabet::B), (DiamondRule::Full, Alphabet::Y), (DiamondRule::None, Alphabet::X)]
    {
        let ok = pairing_dual_check(w, rule, alphabet)?;
        checks.push(format!("{} over {alphabet}, weight <= {w}", rule.name()), ok, format!("duality = {ok}"));
    }
    Ok(())
}

type Triple = BTreeMap<(Word, Word, Word), Rational>;

fn add_triple(out: &mut Triple, key: (Word, Word, Word), c: Rational) {
    let entry = out.entry(key).or_insert_with(Rational::zero);
    *entry += c;
}

fn hopf(checks: &mut Checks, w: u32) -> Result<()> {
    let rule = DiamondRule::PositiveOnly;
    let words = words_up_to(Alphabet::B, w);
    let mut coassoc_failure = None;
    let mut antipode_failure = None;
    for x in &words {
        let delta = delta_dual(x, rule)?;
        let mut left = Triple::new();
        let mut right = Triple::new();
        for ((u, v), c) in delta.terms() {
            for ((a, b), d) in delta_dual(u, rule)?.terms() {
                add_triple(&mut left, (a.clone(), b.clone(), v.clone()), c * d);
            }
            for ((a, b), d) in delta_dual(v, rule)?.terms() {
                add_triple(&mut right, (u.clone(), a.clone(), b.clone()), c * d);
            }
        }
        left.retain(|_, c| !c.is_zero());
        right.retain(|_, c| !c.is_zero());
        if left != right && coassoc_failure.is_none() {
            coassoc_failure = Some(x.clone());
        }
        // m (S (x) id) Delta = m (id (x) S) Delta = epsilon
        let mut s_left = Poly::zero(Alphabet::B);
        let mut s_right = Poly::zero(Alphabet::B);
        for ((u, v), c) in delta.terms() {
            s_left.add_scaled(&antipode_b(u)?.conc(&Poly::word(v.clone())), c);
            s_right.add_scaled(&Poly::word(u.clone()).conc(&antipode_b(v)?), c);
        }
        let counit = if x.is_empty() { Poly::one(Alphabet::B) } else { Poly::zero(Alphabet::B) };
        if (s_left != counit || s_right != counit) && antipode_failure.is_none() {
            antipode_failure = Some(x.clone());
        }
    }
    checks.push_all(format!("coassociativity, weight <= {w}"), words.len(), coassoc_failure);
    checks.push_all(format!("antipode identity, weight <= {w}"), words.len(), antipode_failure);

    // S(b_a) = -b_a - sum_{j=1}^{a-1} S(b_j) b_{a-j}, from m (S (x) id) Delta_b(b_a) = 0
    let mut recursive: Vec<Poly> = vec![Poly::word(Word::b([0])).neg()];
    let mut formula_failure = None;
    for a in 1..=w.max(1) {
        let mut s = Poly::word(Word::b([a])).neg();
        for j in 1..a {
            s = s.sub(&recursive[j as usize].conc(&Poly::word(Word::b([a - j]))));
        }
        recursive.push(s);
    }
    for (a, s) in recursive.iter().enumerate() {
        if &antipode_b(&Word::b([a as u32]))? != s && formula_failure.is_none() {
            formula_failure = Some(format!("b{a}"));
        }
    }
    checks.push_all("closed antipode formula on b_a", recursive.len(), formula_failure);
    Ok(())
}

fn lemma(checks: &mut Checks, max_len: u32) -> Result<()> {
    let mut count = 0;
    let mut mismatches = 0;
    let mut first = None;
    for len in 0..=max_len {
        for w in enumerate_words(Alphabet::X, len) {
            let lhs = tau_after_pi0(&theta_x_anti(&Poly::<Rational>::word(w.clone()))?)?;
            let rhs = theta_y(&pi_y(&Poly::<Rational>::word(w.clone()))?)?;
            count += 1;
            if lhs != rhs {
                mismatches += 1;
                first.get_or_insert(w);
            }
        }
    }
    let detail = match first {
        None => format!("{count} words, 0 mismatches"),
        Some(w) => format!("{mismatches} mismatches, first {w}"),
    };
    checks.push(format!("X-words of length <= {max_len}"), mismatches == 0, detail);
    Ok(())
}

fn regularization(checks: &mut Checks, w: u32) -> Result<()> {
    let words = words_up_to(Alphabet::B, w);
    let mut failure = None;
    for x in &words {
        let p = Poly::word(x.clone());
        if reg_t_forward(&reg_t_inverse(&p)?) != p {
            failure = Some(x.clone());
            break;
        }
    }
    checks.push_all(format!("reg_T round trip, weight <= {w}"), words.len(), failure);

    let pairs = word_pairs(Alphabet::B, w);
    let mut failure = None;
    for (u, v) in &pairs {
        let lhs = reg_balanced(&balanced(u, v))?;
        let ru = reg_balanced(&Poly::<Rational>::word(u.clone()))?;
        let rv = reg_balanced(&Poly::<Rational>::word(v.clone()))?;
        let rhs = crate::hopf::quasi_shuffle_poly(&ru, &rv, DiamondRule::PositiveOnly)?;
        if lhs != rhs {
            failure = Some(format!("({u}, {v})"));
            break;
        }
    }
    checks.push_all(format!("reg_balanced multiplicative, weight <= {w}"), pairs.len(), failure);

    let b0 = reg_balanced(&Poly::<Rational>::word(Word::b([0])))?;
    checks.push("reg_balanced(b0) = 0", b0.is_zero(), b0.to_string());
    let b0b1 = reg_balanced(&Poly::<Rational>::word(Word::b([0, 1])))?;
    let expected = Poly::word(Word::b([1, 0])).neg();
    checks.push("reg_balanced(b0.b1) = -b1.b0", b0b1 == expected, b0b1.to_string());
    Ok(())
}

fn gf(checks: &mut Checks, w: u32) {
    for weight in 1..=w {
        let full = rel_tau0(weight);
        let saturated = rel_tau0_saturated(weight);
        checks.push(
            format!("rel_tau0({weight}) bases agree"),
            full.same_basis(&saturated),
            format!("dim {} / {}", full.dim(), saturated.dim()),
        );
        let (compact, literal) = (gf_dim(weight), gf_dim_full(weight));
        checks.push(format!("gf_dim({weight}) reduced model"), compact == literal, format!("{compact} = {literal}"));
    }
    for (weight, expected) in [(1, 1), (2, 2)] {
        let d = gf_dim(weight);
        checks.push(format!("gf_dim({weight}) = {expected}"), d == expected, d.to_string());
    }
}

fn zeta(ks: &[u32]) -> Result<ZfElement> {
    ZfElement::zeta(ks)
}

fn euler(checks: &mut Checks) -> Result<()> {
    let ok = zf_equal(&zeta(&[3])?, &zeta(&[2, 1])?, 3)?;
    checks.push("Euler relation", ok, format!("zf_equal(ζ^f(3), ζ^f(2,1)) = {ok}"));
    let z2 = zeta(&[2])?;
    let ok = zf_equal(&zeta(&[4])?, &z2.pow(2).scale(&rat(2, 5)), 4)?;
    checks.push("even value 4", ok, format!("ζ^f(4) ≡ 2/5 ζ^f(2)^2: {ok}"));
    let ok = zf_equal(&zeta(&[6])?, &z2.pow(3).scale(&rat(8, 35)), 6)?;
    checks.push("even value 6", ok, format!("ζ^f(6) ≡ 8/35 ζ^f(2)^3: {ok}"));
    Ok(())
}

fn double_shuffle(checks: &mut Checks) -> Result<()> {
    for k1 in 2..=4u32 {
        for k2 in 2..=4u32 {
            // stuffle side: zeta(k1, k2) + zeta(k2, k1) + zeta(k1 + k2)
            let stuffle = zeta(&[k1, k2])?.add(&zeta(&[k2, k1])?).add(&zeta(&[k1 + k2])?);
            let mut shuffle = ZfElement::zero();
            for j in 2..k1 + k2 {
                let c = binomial(j as i64 - 1, k1 as i64 - 1) + binomial(j as i64 - 1, k2 as i64 - 1);
                shuffle = shuffle.add(&zeta(&[j, k1 + k2 - j])?.scale(&Rational::from_integer(c)));
            }
            let product = zeta(&[k1])?.mul(&zeta(&[k2])?);
            let w = k1 + k2;
            let ok = zf_equal(&stuffle, &shuffle, w)? && zf_equal(&product, &shuffle, w)?;
            checks.push(format!("ζ^f({k1}) ζ^f({k2})"), ok, format!("expansions agree: {ok}"));
        }
    }
    Ok(())
}

fn theorem_p(checks: &mut Checks, w: u32) -> Result<()> {
    for weight in 1..=w {
        let space = rel_tau0(weight);
        let mut failure = None;
        for i in 0..space.dim() {
            let row = Poly::from_terms(Alphabet::B, space.row_terms(i))?;
            if !zf_equal(&p_project_poly(&row, weight)?, &ZfElement::zero(), weight)? {
                failure = Some(row);
                break;
            }
        }
        checks.push_all(format!("p kills rel_tau0({weight})"), space.dim(), failure);
    }
    let bound = w.min(5);
    let pairs = word_pairs(Alphabet::B, bound);
    let mut failure = None;
    for (u, v) in &pairs {
        let lhs = p_project_poly(&balanced(u, v), bound)?;
        let rhs = p_project(u, bound)?.mul(&p_project(v, bound)?);
        if !zf_equal(&lhs, &rhs, bound)? {
            failure = Some(format!("({u}, {v})"));
            break;
        }
    }
    checks.push_all(format!("p multiplicative, weight <= {bound}"), pairs.len(), failure);
    let mut failure = None;
    let mut count = 0;
    for weight in 1..=w {
        for x in b0_free_start_words(weight) {
            count += 1;
            if !zf_equal(&p_project(&x, weight)?, &p_project(&tau(&x)?, weight)?, weight)? {
                failure = Some(x);
                break;
            }
        }
    }
    checks.push_all(format!("p tau-invariant, weight <= {w}"), count, failure);
    let value = p_project(&Word::b([2, 3]), 5)?;
    checks.push("p(f(b2.b3)) = ζ^f(2,3)", value == zeta(&[2, 3])?, value.to_string());
    Ok(())
}

fn theorem_theta(checks: &mut Checks, w: u32) -> Result<()> {
    let phi = zeta_generating_series(w)?;
    let eq = ZfAlgebra { bound: w };
    let z2 = zeta(&[2])?;
    let dm = check_dm(&phi, Some(&z2), &eq)?;
    checks.push(format!("zeta series in DM_ζ(2), weight <= {w}"), dm.passed(), summary(&dm.conditions));
    let big = theta_embed(&phi)?;
    let bm = check_bm(&big, None, &eq)?;
    checks.push("theta image in BM", bm.passed(), summary(&bm.conditions));
    let back = theta_inverse(&big)?;
    checks.push("{b0, b1}-restriction round trip", back == phi, format!("recovered = {}", back == phi));
    if w >= 4 {
        let c = phi.coeff(&Word::x([0, 0, 0, 1]));
        let ok = zf_equal(&c, &z2.pow(2).scale(&rat(2, 5)), w)?;
        checks.push("(phi | x0^3 x1) = 2/5 λ^2", ok, c.to_string());
    }
    let mut failure = None;
    let mut count = 0;
    for (x, c) in big.terms() {
        count += 1;
        if !zf_equal(c, &p_project(x, w)?, w)? {
            failure = Some(x.clone());
            break;
        }
    }
    checks.push_all("theta coefficients equal p", count, failure);
    Ok(())
}

fn summary(conditions: &[crate::schemes::Condition]) -> String {
    conditions
        .iter()
        .map(|c| format!("({}) {}", c.label, if c.passed { "pass" } else { "fail" }))
        .collect::<Vec<_>>()
        .join(", ")
}

fn qseries(checks: &mut Checks, order: usize) -> Result<()> {
    let indices: [&[u32]; 5] = [&[1], &[2], &[3], &[1, 0], &[2, 1]];
    let mut failure = None;
    let mut count = 0;
    for (i, u) in indices.iter().enumerate() {
        for v in &indices[i..] {
            count += 1;
            let (uw, vw) = (Word::b(u.iter().copied()), Word::b(v.iter().copied()));
            let lhs = qzeta_sz(u, order)?.mul(&qzeta_sz(v, order)?)?;
            let rhs = qzeta_poly(&quasi_shuffle(&uw, &vw, DiamondRule::Full)?, order)?;
            if lhs != rhs {
                failure = Some(format!("({uw}, {vw})"));
            }
        }
    }
    checks.push_all(format!("SZ-stuffle to q^{order}"), count, failure);

    let mut ok = true;
    for (k, m) in [(&[2][..], &[0][..]), (&[1], &[1]), (&[2, 1], &[1, 0])] {
        ok &= sz_tau_invariance_check(k, m, order)?;
    }
    checks.push(format!("tau-invariance examples to q^{order}"), ok, format!("{ok}"));

    let mut failure = None;
    let mut count = 0;
    for weight in 1..=5 {
        for x in b0_free_start_words(weight) {
            count += 1;
            if qzeta_word(&x, order)? != qzeta_word(&tau(&x)?, order)? {
                failure = Some(x);
                break;
            }
        }
    }
    checks.push_all(format!("tau-invariance, weight <= 5, to q^{order}"), count, failure);

    let cases: [(&[u32], &[u32]); 5] =
        [(&[1], &[0]), (&[2], &[1]), (&[1, 1], &[0, 0]), (&[2, 1], &[1, 0]), (&[1, 2], &[0, 2])];
    let mut failure = None;
    for (k, m) in cases {
        if !sz_binomial_identity_check(k, m, 30)? {
            failure = Some(format!("k = {k:?}, m = {m:?}"));
        }
    }
    checks.push_all("binomial partition sums to q^30", cases.len(), failure);
    Ok(())
}

fn divisor_sum(n: usize, power: u32) -> Rational {
    let s: u64 = (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| (d as u64).pow(power)).sum();
    Rational::from_integer(s.into())
}

fn eisenstein(checks: &mut Checks, order: usize) -> Result<()> {
    let g2 = bi_eisenstein_depth1(2, 0, order)?;
    checks.push("G(2|0) constant term", g2.coeff(0) == &rat(-1, 24), crate::rational::format(g2.coeff(0)));
    let tail_ok = (1..=order).all(|n| g2.coeff(n) == &divisor_sum(n, 1));
    checks.push(format!("G(2|0) tail sigma_1 to q^{order}"), tail_ok, format!("{tail_ok}"));
    for (k, m) in [(3, 1), (4, 2), (5, 1)] {
        let ok = bi_eisenstein_derivative_check(k, m, order)?;
        checks.push(format!("G({k}|{m}) from (q d/dq)^{m} G({})", k - m), ok, format!("{ok}"));
    }
    Ok(())
}

fn freeness(checks: &mut Checks, w: u32) -> Result<()> {
    for weight in (2..=w).step_by(2) {
        let (rank, count) = quasimodular_rank(weight)?;
        checks.push(format!("weight {weight}"), rank == count, format!("rank {rank} of {count} monomials"));
    }
    Ok(())
}

/// `exp` of a random combination of the Lie monomials up to the bound.
fn random_grouplike(rng: &mut ChaCha8Rng, bound: u32) -> Result<TruncatedSeries> {
    let x = |l| Poly::word(Word::x([l]));
    let bracket = |a: &Poly, b: &Poly| a.conc(b).sub(&b.conc(a));
    let mut lie = vec![x(0), x(1)];
    let mut level = vec![bracket(&x(0), &x(1))];
    for _ in 3..=bound {
        lie.extend(level.iter().cloned());
        level = level.iter().flat_map(|p| [bracket(&x(0), p), bracket(&x(1), p)]).collect();
    }
    lie.extend(level);
    let mut generator = Poly::zero(Alphabet::X);
    for p in &lie {
        generator.add_scaled(p, &rat(rng.gen_range(-5..=5), rng.gen_range(1..=4)));
    }
    TruncatedSeries::from_poly(generator, bound).exp_conc()
}

fn ihara(checks: &mut Checks, w: u32) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a2a);
    let one = TruncatedSeries::one(Alphabet::X, w);
    let trials = 5;
    let (mut unital, mut associative) = (true, true);
    for _ in 0..trials {
        let a = random_grouplike(&mut rng, w)?;
        let b = random_grouplike(&mut rng, w)?;
        let c = random_grouplike(&mut rng, w)?;
        unital &= ihara_mul(&one, &a)? == a && ihara_mul(&a, &one)? == a;
        associative &= ihara_mul(&ihara_mul(&a, &b)?, &c)? == ihara_mul(&a, &ihara_mul(&b, &c)?)?;
    }
    checks.push(format!("unit, weight <= {w}"), unital, format!("{trials} random grouplike series"));
    checks.push(format!("associativity, weight <= {w}"), associative, format!("{trials} random triples"));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suites_pass() {
        for name in ["product", "euler", "eisenstein", "ihara"] {
            let report = run_suite(name, &Params::default()).unwrap();
            assert!(report.passed(), "{report}");
        }
        assert!(run_suite("nope", &Params::default()).is_err());
    }

    #[test]
    fn euler_report_line() {
        let report = run_suite("euler", &Params::default()).unwrap();
        assert!(report.to_string().contains("zf_equal(ζ^f(3), ζ^f(2,1)) = true"));
    }
}
