//! Truncated `q`-expansions: Schlesinger-Zudilin multiple `q`-zeta values,
//! brackets, partition generating series and depth-one bi-Eisenstein series.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{span_rref, SparseRow};
use crate::maps::tau;
use crate::poly::Poly;
use crate::rational::{self, int, Rational};
use crate::words::{Alphabet, Word};

/// `c_0 + c_1 q + ... + c_N q^N + O(q^{N+1})`.
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// Truncates or pads `coeffs` to the given order.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        QSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.order(), found: other.order() })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(QSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(QSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(|a| a * r).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let order = self.order();
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `q d/dq`: `c_n -> n c_n`.
    pub fn q_derivative(&self) -> Self {
        QSeries { coeffs: self.coeffs.iter().enumerate().map(|(n, c)| c * int(n as i64)).collect() }
    }

    /// Adds `c * s` where `s` is shifted by `shift` powers of `q`.
    fn add_shifted(&mut self, s: &QSeries, shift: usize, c: &Rational) {
        let order = self.order();
        if shift > order {
            return;
        }
        for (j, b) in s.coeffs[..=order - shift].iter().enumerate() {
            if !b.is_zero() {
                self.coeffs[j + shift] += b * c;
            }
        }
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let negative = c < &Rational::zero();
            let mag = if negative { -c } else { c.clone() };
            f.write_str(match (first, negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            })?;
            let power = match n {
                0 => String::new(),
                1 => "q".into(),
                _ => format!("q^{n}"),
            };
            match (n, mag.is_one()) {
                (0, _) => f.write_str(&rational::format(&mag))?,
                (_, true) => f.write_str(&power)?,
                _ => write!(f, "{}*{power}", rational::format(&mag))?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `sum_{n_1 > ... > n_l > 0} prod_i factor_i(n_i)`, where the outermost
/// factor at `n` must vanish below `q^n` so that `n_1 <= N` suffices.
///
/// Dynamic programming from the innermost index: `inner[n]` is the sum over
/// all index chains below `n`.
fn nested_sum(factors: &[&dyn Fn(usize) -> Vec<(usize, Rational)>], order: usize) -> QSeries {
    let top = order + 1;
    let mut inner: Vec<QSeries> = vec![QSeries::one(order); top + 1];
    for factor in factors.iter().rev() {
        let mut next = vec![QSeries::zero(order); top + 1];
        let mut running = QSeries::zero(order);
        for n in 1..=top {
            next[n] = running.clone();
            if n < top {
                for (shift, c) in factor(n) {
                    running.add_shifted(&inner[n], shift, &c);
                }
            }
        }
        inner = next;
    }
    inner.swap_remove(top)
}

/// Terms of `q^{ns} / (1 - q^n)^s = sum_{r > 0} C(r-1, s-1) q^{nr}` up to `order`.
fn sz_factor(s: u32, order: usize) -> impl Fn(usize) -> Vec<(usize, Rational)> {
    move |n| {
        if s == 0 {
            return vec![(0, Rational::one())];
        }
        (1..=order / n)
            .map(|r| (n * r, Rational::from_integer(rational::binomial(r as i64 - 1, s as i64 - 1))))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }
}

/// `zeta_q^SZ(s_1, ..., s_l) = sum_{n_1 > ... > n_l > 0} prod q^{n_i s_i} / (1 - q^{n_i})^{s_i}`.
pub fn qzeta_sz(s: &[u32], order: usize) -> Result<QSeries> {
    if s.first() == Some(&0) {
        return Err(Error::InvalidArgument("the first argument of zeta_q^SZ must be positive".into()));
    }
    let factors: Vec<_> = s.iter().map(|&si| sz_factor(si, order)).collect();
    let refs: Vec<&dyn Fn(usize) -> Vec<(usize, Rational)>> =
        factors.iter().map(|f| f as &dyn Fn(usize) -> Vec<(usize, Rational)>).collect();
    Ok(nested_sum(&refs, order))
}

/// `zeta_q^SZ` of a word `b_{s_1} ... b_{s_l}` in `B^0`.
pub fn qzeta_word(w: &Word, order: usize) -> Result<QSeries> {
    if w.alphabet() != Alphabet::B {
        return Err(Error::AlphabetMismatch { expected: Alphabet::B, found: w.alphabet() });
    }
    qzeta_sz(w.letters(), order)
}

/// Linear extension of [`qzeta_word`].
pub fn qzeta_poly(p: &Poly, order: usize) -> Result<QSeries> {
    let mut out = QSeries::zero(order);
    for (w, c) in p.terms() {
        out = out.add(&qzeta_word(w, order)?.scale(c))?;
    }
    Ok(out)
}

/// `sum_{u_1 > ... > u_d > 0, v_i > 0} prod weight_i(u_i, v_i) q^{sum u_i v_i}`.
fn partition_sum(weights: &[&dyn Fn(usize, usize) -> Rational], order: usize) -> QSeries {
    let factors: Vec<_> = weights
        .iter()
        .map(|w| move |u: usize| (1..=order / u).map(|v| (u * v, w(u, v))).filter(|(_, c)| !c.is_zero()).collect())
        .collect();
    let refs: Vec<&dyn Fn(usize) -> Vec<(usize, Rational)>> =
        factors.iter().map(|f| f as &dyn Fn(usize) -> Vec<(usize, Rational)>).collect();
    nested_sum(&refs, order)
}

fn power(base: usize, exp: u32) -> Rational {
    Rational::from_integer(num_bigint::BigInt::from(base).pow(exp))
}

/// Brackets `g(k_1, ..., k_d) = sum prod v_i^{k_i - 1} / (k_i - 1)! q^{sum u_i v_i}`.
pub fn bracket_g(k: &[u32], order: usize) -> Result<QSeries> {
    if k.contains(&0) {
        return Err(Error::InvalidArgument("bracket arguments must be positive".into()));
    }
    let weights: Vec<_> = k
        .iter()
        .map(|&ki| {
            let denom = Rational::from_integer(rational::factorial(ki - 1));
            move |_: usize, v: usize| power(v, ki - 1) / &denom
        })
        .collect();
    let refs: Vec<&dyn Fn(usize, usize) -> Rational> =
        weights.iter().map(|f| f as &dyn Fn(usize, usize) -> Rational).collect();
    Ok(partition_sum(&refs, order))
}

/// `sum_{lambda of length d} u_1^{m_1} v_1^{l_1} ... u_d^{m_d} v_d^{l_d} q^{|lambda|}`
/// over Stanley coordinates, one `(m_i, l_i)` per part.
pub fn gen_partition(exponents: &[(u32, u32)], order: usize) -> QSeries {
    let weights: Vec<_> = exponents.iter().map(|&(m, l)| move |u: usize, v: usize| power(u, m) * power(v, l)).collect();
    let refs: Vec<&dyn Fn(usize, usize) -> Rational> =
        weights.iter().map(|f| f as &dyn Fn(usize, usize) -> Rational).collect();
    partition_sum(&refs, order)
}

/// A partition in Stanley coordinates: distinct parts `u_1 > ... > u_d > 0`
/// with multiplicities `v_i > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
    multiplicities: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>, multiplicities: Vec<usize>) -> Result<Self> {
        let decreasing = parts.windows(2).all(|w| w[0] > w[1]) && parts.last().is_none_or(|&u| u > 0);
        if parts.len() != multiplicities.len() || !decreasing || multiplicities.contains(&0) {
            return Err(Error::InvalidArgument(format!("invalid Stanley coordinates {parts:?}, {multiplicities:?}")));
        }
        Ok(Partition { parts, multiplicities })
    }

    /// From a weakly decreasing list of positive parts.
    pub fn from_parts(list: &[usize]) -> Result<Self> {
        let mut parts: Vec<usize> = Vec::new();
        let mut multiplicities = Vec::new();
        for &p in list {
            if parts.last() == Some(&p) {
                *multiplicities.last_mut().expect("nonempty") += 1;
            } else {
                parts.push(p);
                multiplicities.push(1);
            }
        }
        Self::new(parts, multiplicities)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// Number of distinct parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().zip(&self.multiplicities).map(|(u, v)| u * v).sum()
    }

    /// The transposed Young diagram: its `i`-th part is `v_1 + ... + v_{d+1-i}`
    /// with multiplicity `u_{d+1-i} - u_{d+2-i}` (where `u_{d+1} = 0`).
    pub fn conjugate(&self) -> Self {
        let d = self.parts.len();
        let mut parts = Vec::with_capacity(d);
        let mut multiplicities = Vec::with_capacity(d);
        for i in (0..d).rev() {
            parts.push(self.multiplicities[..=i].iter().sum());
            multiplicities.push(self.parts[i] - self.parts.get(i + 1).copied().unwrap_or(0));
        }
        Partition { parts, multiplicities }
    }

    /// All partitions of `n`, in reverse lexicographic order of their parts.
    pub fn all(n: usize) -> Vec<Partition> {
        fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition::from_parts(prefix).expect("weakly decreasing"));
                return;
            }
            for p in (1..=n.min(max)).rev() {
                prefix.push(p);
                go(n - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

fn sz_arguments(k: &[u32], m: &[u32]) -> Result<Vec<u32>> {
    if k.len() != m.len() || k.contains(&0) {
        return Err(Error::InvalidArgument("need k_i >= 1 and as many m_i as k_i".into()));
    }
    Ok(k.iter().zip(m).flat_map(|(&ki, &mi)| std::iter::once(ki).chain(std::iter::repeat_n(0, mi as usize))).collect())
}

/// `zeta_q^SZ(k_1, {0}^{m_1}, ..., k_d, {0}^{m_d})` against
/// `zeta_q^SZ(m_d + 1, {0}^{k_d - 1}, ..., m_1 + 1, {0}^{k_1 - 1})`.
pub fn sz_tau_invariance_check(k: &[u32], m: &[u32], order: usize) -> Result<bool> {
    let lhs = qzeta_sz(&sz_arguments(k, m)?, order)?;
    let k_dual: Vec<u32> = m.iter().rev().map(|&mi| mi + 1).collect();
    let m_dual: Vec<u32> = k.iter().rev().map(|&ki| ki - 1).collect();
    let rhs = qzeta_sz(&sz_arguments(&k_dual, &m_dual)?, order)?;
    Ok(lhs == rhs)
}

/// The same `tau`-invariance stated on a word of `B^0`.
pub fn sz_tau_word_check(w: &Word, order: usize) -> Result<bool> {
    Ok(qzeta_word(w, order)? == qzeta_word(&tau(w)?, order)?)
}

/// Coefficient of `q^n` in `zeta_q^SZ(k_1, {0}^{m_1}, ...)` as a sum over the
/// partitions of `n` with `d` distinct parts `N_1 > ... > N_d` and
/// multiplicities `r_i` of `prod C(N_i - N_{i+1} - 1, m_i) C(r_i - 1, k_i - 1)`.
pub fn sz_binomial_coefficient(k: &[u32], m: &[u32], n: usize) -> Result<Rational> {
    sz_arguments(k, m)?;
    let mut total = num_bigint::BigInt::zero();
    for lambda in Partition::all(n).into_iter().filter(|p| p.len() == k.len()) {
        let mut term = num_bigint::BigInt::one();
        for i in 0..k.len() {
            let next = lambda.parts.get(i + 1).copied().unwrap_or(0);
            let gap = (lambda.parts[i] - next) as i64 - 1;
            term *= rational::binomial(gap, m[i] as i64);
            term *= rational::binomial(lambda.multiplicities[i] as i64 - 1, k[i] as i64 - 1);
        }
        total += term;
    }
    Ok(Rational::from_integer(total))
}

/// Checks the partition-sum expansion against [`qzeta_sz`] for all `n <= order`.
pub fn sz_binomial_identity_check(k: &[u32], m: &[u32], order: usize) -> Result<bool> {
    let series = qzeta_sz(&sz_arguments(k, m)?, order)?;
    for n in 0..=order {
        let expected = if n == 0 && k.is_empty() { Rational::one() } else { sz_binomial_coefficient(k, m, n)? };
        if series.coeff(n) != &expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Bernoulli numbers with `B_1 = -1/2`, from `sum_{k=0}^{n} C(n+1, k) B_k = 0`.
pub fn bernoulli(n: u32) -> Rational {
    let mut b: Vec<Rational> = vec![Rational::one()];
    for m in 1..=n as i64 {
        let s: Rational = (0..m).map(|k| Rational::from_integer(rational::binomial(m + 1, k)) * &b[k as usize]).sum();
        b.push(-s / int(m + 1));
    }
    b.swap_remove(n as usize)
}

/// `beta(k) = -B_k / (2 k!)` for even `k`, `0` for odd `k`.
pub fn beta(k: u32) -> Rational {
    if k % 2 == 1 {
        return Rational::zero();
    }
    -bernoulli(k) / (int(2) * Rational::from_integer(rational::factorial(k)))
}

/// `G(k|m) = -delta_{m,0} B_k / (2 k!) - delta_{k,1} B_{m+1} / (2 (m+1))
///  + 1/(k-1)! sum_{u,v >= 1} u^m v^{k-1} q^{uv}` for `k > m >= 0`.
pub fn bi_eisenstein_depth1(k: u32, m: u32, order: usize) -> Result<QSeries> {
    if k <= m {
        return Err(Error::InvalidArgument(format!("need k > m, got k = {k}, m = {m}")));
    }
    let denom = Rational::from_integer(rational::factorial(k - 1));
    let mut out = partition_sum(&[&|u: usize, v: usize| power(u, m) * power(v, k - 1) / &denom], order);
    let mut constant = Rational::zero();
    if m == 0 {
        constant -= bernoulli(k) / (int(2) * Rational::from_integer(rational::factorial(k)));
    }
    if k == 1 {
        constant -= bernoulli(m + 1) / int(2 * (m as i64 + 1));
    }
    out.coeffs[0] += constant;
    Ok(out)
}

/// `G(k|m) = (k-m-1)!/(k-1)! (q d/dq)^m G(k-m|0)`.
pub fn bi_eisenstein_derivative_check(k: u32, m: u32, order: usize) -> Result<bool> {
    let lhs = bi_eisenstein_depth1(k, m, order)?;
    let mut rhs = bi_eisenstein_depth1(k - m, 0, order)?;
    for _ in 0..m {
        rhs = rhs.q_derivative();
    }
    let factor = Rational::new(rational::factorial(k - m - 1), rational::factorial(k - 1));
    Ok(lhs == rhs.scale(&factor))
}

/// Rank of the coefficient matrix of `series` (coefficients `q^0 .. q^N`).
pub fn span_dimension(series: &[QSeries]) -> Result<usize> {
    let Some(first) = series.first() else {
        return Ok(0);
    };
    let rows: Vec<SparseRow> = series
        .iter()
        .map(|s| {
            first.check(s)?;
            Ok(s.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect())
        })
        .collect::<Result<_>>()?;
    Ok(span_rref(&rows, first.order() + 1).1.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn ints(s: &QSeries, upto: usize) -> Vec<i64> {
        s.coeffs()[..=upto].iter().map(|c| c.to_integer().try_into().unwrap()).collect()
    }

    #[test]
    fn sz_examples() {
        assert_eq!(ints(&qzeta_sz(&[1], 50).unwrap(), 6), vec![0, 1, 2, 2, 3, 2, 4]);
        assert_eq!(qzeta_sz(&[], 10).unwrap(), QSeries::one(10));
        assert!(qzeta_sz(&[0, 1], 10).is_err());
        for s1 in 1..=3 {
            for s2 in 1..=3 {
                let lhs = qzeta_sz(&[s1], 50).unwrap().mul(&qzeta_sz(&[s2], 50).unwrap()).unwrap();
                let rhs = qzeta_sz(&[s1, s2], 50)
                    .unwrap()
                    .add(&qzeta_sz(&[s2, s1], 50).unwrap())
                    .unwrap()
                    .add(&qzeta_sz(&[s1 + s2], 50).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn brackets() {
        assert_eq!(ints(&bracket_g(&[2], 10).unwrap(), 4), vec![0, 1, 3, 4, 7]);
        assert_eq!(bracket_g(&[1], 30).unwrap(), qzeta_sz(&[1], 30).unwrap());
        assert_eq!(bracket_g(&[1, 1], 10).unwrap().coeff(3), &rat(1, 1));
    }

    #[test]
    fn partitions() {
        assert_eq!(gen_partition(&[], 5), QSeries::one(5));
        assert_eq!(Partition::all(5).len(), 7);
        let p = Partition::from_parts(&[3, 3, 1]).unwrap();
        assert_eq!((p.parts(), p.multiplicities()), (&[3, 1][..], &[2, 1][..]));
        assert_eq!(p.conjugate(), Partition::from_parts(&[3, 2, 2]).unwrap());
        assert_eq!(p.conjugate().conjugate(), p);
        assert_eq!(gen_partition(&[(1, 0)], 30), gen_partition(&[(0, 1)], 30));
    }

    #[test]
    fn tau_and_binomial() {
        assert!(sz_tau_invariance_check(&[2], &[0], 50).unwrap());
        assert!(sz_tau_invariance_check(&[1], &[1], 50).unwrap());
        assert!(sz_tau_invariance_check(&[2, 1], &[1, 0], 40).unwrap());
        assert!(sz_binomial_identity_check(&[1], &[0], 30).unwrap());
        assert!(sz_binomial_identity_check(&[2], &[1], 30).unwrap());
        assert!(sz_binomial_identity_check(&[1, 1], &[0, 0], 25).unwrap());
    }

    #[test]
    fn bernoulli_and_eisenstein() {
        assert_eq!(bernoulli(0), rat(1, 1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(3), rat(0, 1));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        assert_eq!(beta(2), rat(-1, 24));
        let g2 = bi_eisenstein_depth1(2, 0, 10).unwrap();
        assert_eq!(g2.coeff(0), &rat(-1, 24));
        assert_eq!(ints(&g2.sub(&QSeries::from_coeffs(vec![rat(-1, 24)], 10)).unwrap(), 3), vec![0, 1, 3, 4]);
        let g1 = bi_eisenstein_depth1(1, 0, 10).unwrap();
        assert_eq!(g1.coeff(0), &rat(1, 2));
        assert_eq!(g1.coeffs()[1..], qzeta_sz(&[1], 10).unwrap().coeffs()[1..]);
        for (k, m) in [(3, 1), (4, 2), (5, 1)] {
            assert!(bi_eisenstein_derivative_check(k, m, 40).unwrap());
        }
        assert!(bi_eisenstein_depth1(2, 2, 10).is_err());
    }

    #[test]
    fn derivative_and_rank() {
        let q = QSeries::from_coeffs(vec![rat(0, 1), rat(1, 1)], 5);
        assert_eq!(q.q_derivative(), q);
        assert_eq!(QSeries::one(5).q_derivative(), QSeries::zero(5));
        let s = QSeries::from_coeffs(vec![rat(0, 1), rat(0, 1), rat(1, 1), rat(1, 1)], 5);
        assert_eq!(s.q_derivative(), QSeries::from_coeffs(vec![rat(0, 1), rat(0, 1), rat(2, 1), rat(3, 1)], 5));
        assert_eq!(span_dimension(&[QSeries::one(50), qzeta_sz(&[1], 50).unwrap()]).unwrap(), 2);
        assert_eq!(span_dimension(&[qzeta_sz(&[2], 50).unwrap(), qzeta_sz(&[1, 0], 50).unwrap()]).unwrap(), 1);
        assert_eq!(span_dimension(&[]).unwrap(), 0);
        assert!(span_dimension(&[QSeries::one(3), QSeries::one(4)]).is_err());
        assert_eq!(qzeta_sz(&[1], 3).unwrap().to_string(), "q + 2*q^2 + 2*q^3 + O(q^4)");
    }
}
