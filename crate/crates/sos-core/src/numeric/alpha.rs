use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{floor, int, Rational};
use crate::error::{Error, Result};

/// Coefficient-producing rule for the fractional part of α.
#[derive(Clone)]
pub enum AlphaKind {
    Rational(Rational),
    /// a₁, a₂, … given as a finite prefix followed by a repeating period.
    Periodic { prefix: Vec<BigInt>, period: Vec<BigInt> },
    /// The tail of e = [2; 1, 2, 1, 1, 4, 1, 1, 6, …].
    EPattern,
    /// (p + √d)/q with q | d − p², d not a perfect square.
    Surd { p: BigInt, q: BigInt, d: BigInt },
    /// User-supplied rule i ↦ aᵢ for i ≥ 1; must return positive integers.
    Stream(Arc<dyn Fn(usize) -> BigInt + Send + Sync>),
}

impl fmt::Debug for AlphaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaKind::Rational(r) => write!(f, "Rational({r})"),
            AlphaKind::Periodic { prefix, period } => {
                write!(f, "Periodic({prefix:?}, {period:?})")
            }
            AlphaKind::EPattern => write!(f, "EPattern"),
            AlphaKind::Surd { p, q, d } => write!(f, "Surd(({p}+sqrt({d}))/{q})"),
            AlphaKind::Stream(_) => write!(f, "Stream"),
        }
    }
}

#[derive(Default)]
struct Memo {
    coeffs: Vec<BigInt>,
    convs: Vec<(BigInt, BigInt)>,
    surd_state: Option<(BigInt, BigInt)>,
    finished: bool,
}

/// A real number in (0, 1), the fractional part of the user's input.
///
/// Coefficients are generated lazily and memoized behind a shared cache, so
/// clones extend the same table.
#[derive(Clone)]
pub struct AlphaSpec {
    kind: AlphaKind,
    integer_part: BigInt,
    label: String,
    memo: Arc<Mutex<Memo>>,
}

impl fmt::Debug for AlphaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlphaSpec")
            .field("label", &self.label)
            .field("kind", &self.kind)
            .field("integer_part", &self.integer_part)
            .finish()
    }
}

/// Rational stand-in p/q for α at a given n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proxy {
    pub index: usize,
    pub p: BigInt,
    pub q: BigInt,
    /// Smallest i with δᵢ ≤ 1/n.
    pub min_index: usize,
    pub exact: bool,
}

impl Proxy {
    pub fn value(&self) -> Rational {
        Rational::new(self.p.clone(), self.q.clone())
    }
}

/// Canonical continued fraction of num/den (den > 0), including a₀.
pub(crate) fn ratio_coefficients(num: &BigInt, den: &BigInt) -> Vec<BigInt> {
    let (mut a, mut b) = (num.clone(), den.clone());
    let mut out = Vec::new();
    while !b.is_zero() {
        let (q, r) = a.div_mod_floor(&b);
        out.push(q);
        a = b;
        b = r;
    }
    out
}

fn floor_surd(p: &BigInt, q: &BigInt, d: &BigInt) -> BigInt {
    let r = d.sqrt();
    if q.is_positive() {
        (p + &r).div_floor(q)
    } else {
        (-p - &r - BigInt::one()).div_floor(&(-q))
    }
}

fn value_from_coefficients(coeffs: &[BigInt]) -> Rational {
    let mut value = int(coeffs[coeffs.len() - 1].clone());
    for a in coeffs[..coeffs.len() - 1].iter().rev() {
        value = int(a.clone()) + value.recip();
    }
    value
}

impl AlphaSpec {
    fn build(kind: AlphaKind, integer_part: BigInt, label: String) -> Self {
        let mut memo = Memo::default();
        memo.convs.push((BigInt::zero(), BigInt::one()));
        match &kind {
            AlphaKind::Rational(r) => {
                memo.coeffs = ratio_coefficients(r.numer(), r.denom()).split_off(1);
                memo.finished = true;
            }
            AlphaKind::Surd { p, q, d } => {
                // advance past a₀ = 0
                let a0 = floor_surd(p, q, d);
                debug_assert!(a0.is_zero());
                let p1 = &a0 * q - p;
                let q1 = (d - &p1 * &p1) / q;
                memo.surd_state = Some((p1, q1));
            }
            _ => {}
        }
        AlphaSpec { kind, integer_part, label, memo: Arc::new(Mutex::new(memo)) }
    }

    /// α = num/den reduced mod 1; integers are rejected.
    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let (num, den) = (num.into(), den.into());
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        let label = format!("{num}/{den}");
        Self::from_rational_labeled(Rational::new(num, den), label)
    }

    pub fn from_rational(value: Rational) -> Result<Self> {
        let label = value.to_string();
        Self::from_rational_labeled(value, label)
    }

    fn from_rational_labeled(value: Rational, label: String) -> Result<Self> {
        let whole = floor(&value);
        let frac = value - int(whole.clone());
        if frac.is_zero() {
            return Err(Error::Domain(format!("{label} is an integer; α must lie in (0,1) mod 1")));
        }
        Ok(Self::build(AlphaKind::Rational(frac), whole, label))
    }

    /// e − 2, written "e".
    pub fn e() -> Self {
        Self::build(AlphaKind::EPattern, BigInt::from(2), "e".into())
    }

    /// Golden ratio mod 1: (√5 − 1)/2.
    pub fn golden() -> Self {
        Self::surd(BigInt::from(1), BigInt::from(5), BigInt::from(2)).expect("valid surd").relabel("golden")
    }

    /// √2 mod 1.
    pub fn sqrt2() -> Self {
        Self::surd(BigInt::zero(), BigInt::from(2), BigInt::one()).expect("valid surd").relabel("sqrt2")
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// (p + √d)/q reduced mod 1. A perfect-square d yields a rational.
    pub fn surd(p: BigInt, d: BigInt, q: BigInt) -> Result<Self> {
        let label = format!("surd:({p}+sqrt({d}))/{q}");
        if q.is_zero() {
            return Err(Error::Parse("surd denominator is zero".into()));
        }
        if d.is_negative() {
            return Err(Error::Domain("surd radicand is negative".into()));
        }
        let r = d.sqrt();
        if &r * &r == d {
            return Self::from_rational_labeled(Rational::new(p + r, q), label);
        }
        let (mut p, mut q, mut d) = (p, q, d);
        if !(&d - &p * &p).is_multiple_of(&q) {
            let aq = q.abs();
            p *= &aq;
            d *= &q * &q;
            q *= &aq;
        }
        let whole = floor_surd(&p, &q, &d);
        p -= &whole * &q;
        Ok(Self::build(AlphaKind::Surd { p, q, d }, whole, label))
    }

    /// Finite coefficients a₀; a₁ … with the last `period` entries repeating forever.
    pub fn from_coefficients(coeffs: Vec<BigInt>, period: usize) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Parse("empty coefficient list".into()));
        }
        if coeffs[1..].iter().any(|a| !a.is_positive()) {
            return Err(Error::Domain("coefficients after a₀ must be positive".into()));
        }
        if period >= coeffs.len() {
            return Err(Error::Parse("period longer than the coefficient tail".into()));
        }
        let shown: Vec<String> = coeffs.iter().map(|a| a.to_string()).collect();
        let mut label = format!("cf:[{};{}]", shown[0], shown[1..].join(","));
        if period > 0 {
            label.push_str(&format!("periodic:{period}"));
        }
        if period == 0 {
            return Self::from_rational_labeled(value_from_coefficients(&coeffs), label);
        }
        let tail = coeffs[1..].to_vec();
        let split = tail.len() - period;
        let kind = AlphaKind::Periodic { prefix: tail[..split].to_vec(), period: tail[split..].to_vec() };
        Ok(Self::build(kind, coeffs[0].clone(), label))
    }

    /// α with coefficients a₁, a₂, … produced by `rule`.
    pub fn from_stream(label: impl Into<String>, integer_part: BigInt, rule: Arc<dyn Fn(usize) -> BigInt + Send + Sync>) -> Self {
        Self::build(AlphaKind::Stream(rule), integer_part, label.into())
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }

    pub fn kind(&self) -> &AlphaKind {
        &self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Integer part discarded from the user's input (e.g. 2 for "e").
    pub fn integer_part(&self) -> &BigInt {
        &self.integer_part
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.kind, AlphaKind::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match &self.kind {
            AlphaKind::Rational(r) => Some(r),
            _ => None,
        }
    }

    fn generate(&self, memo: &mut Memo, i: usize) -> Option<BigInt> {
        match &self.kind {
            AlphaKind::Rational(_) => None,
            AlphaKind::Periodic { prefix, period } => Some(if i <= prefix.len() {
                prefix[i - 1].clone()
            } else {
                period[(i - 1 - prefix.len()) % period.len()].clone()
            }),
            AlphaKind::EPattern => Some(if i % 3 == 2 { BigInt::from(2 * (i + 1) / 3) } else { BigInt::one() }),
            AlphaKind::Surd { d, .. } => {
                let (p, q) = memo.surd_state.take().expect("surd state");
                let a = floor_surd(&p, &q, d);
                let p_next = &a * &q - &p;
                let q_next = (d - &p_next * &p_next) / &q;
                memo.surd_state = Some((p_next, q_next));
                Some(a)
            }
            AlphaKind::Stream(rule) => {
                let a = rule(i);
                assert!(a.is_positive(), "coefficient stream produced a non-positive a_{i}");
                Some(a)
            }
        }
    }

    fn extend(&self, memo: &mut Memo, upto: usize) {
        while memo.coeffs.len() < upto && !memo.finished {
            let i = memo.coeffs.len() + 1;
            match self.generate(memo, i) {
                Some(a) => memo.coeffs.push(a),
                None => memo.finished = true,
            }
        }
        while memo.convs.len() <= memo.coeffs.len() {
            let i = memo.convs.len();
            let a = &memo.coeffs[i - 1];
            let (p1, q1) = memo.convs[i - 1].clone();
            let (p2, q2) = if i >= 2 { memo.convs[i - 2].clone() } else { (BigInt::one(), BigInt::zero()) };
            memo.convs.push((p2 + a * &p1, q2 + a * &q1));
        }
    }

    /// aᵢ of the fractional part (a₀ = 0); `None` past the end of a rational expansion.
    pub fn coefficient(&self, i: usize) -> Option<BigInt> {
        if i == 0 {
            return Some(BigInt::zero());
        }
        let mut memo = self.memo.lock().expect("alpha memo");
        self.extend(&mut memo, i);
        memo.coeffs.get(i - 1).cloned()
    }

    /// Principal convergent pᵢ/qᵢ of the fractional part, p₀/q₀ = 0/1.
    pub fn convergent(&self, i: usize) -> Option<(BigInt, BigInt)> {
        let mut memo = self.memo.lock().expect("alpha memo");
        self.extend(&mut memo, i);
        memo.convs.get(i).cloned()
    }

    /// Index of the last convergent for a rational α.
    pub fn last_index(&self) -> Option<usize> {
        match &self.kind {
            AlphaKind::Rational(_) => {
                let mut memo = self.memo.lock().expect("alpha memo");
                self.extend(&mut memo, usize::MAX);
                Some(memo.coeffs.len())
            }
            _ => None,
        }
    }

    fn convergent_value(&self, i: usize) -> Option<Rational> {
        self.convergent(i).map(|(p, q)| Rational::new(p, q))
    }

    /// Exact comparison of α with a rational.
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        if let Some(value) = self.as_rational() {
            return value.cmp(r);
        }
        let mut k = 1;
        loop {
            let c0 = self.convergent_value(k).expect("irrational");
            let c1 = self.convergent_value(k + 1).expect("irrational");
            let (lo, hi) = if c0 < c1 { (c0, c1) } else { (c1, c0) };
            if r <= &lo {
                return Ordering::Greater;
            }
            if r >= &hi {
                return Ordering::Less;
            }
            k += 1;
        }
    }

    /// Exact decision of δᵢ ≤ bound, `None` if i is past the end of the expansion.
    pub fn delta_at_most(&self, i: usize, bound: &Rational) -> Option<bool> {
        let ci = self.convergent_value(i)?;
        if let Some(value) = self.as_rational() {
            return Some((value - &ci).abs() <= *bound);
        }
        let mut k = i + 1;
        loop {
            let d0 = (self.convergent_value(k).expect("irrational") - &ci).abs();
            let d1 = (self.convergent_value(k + 1).expect("irrational") - &ci).abs();
            let (lo, hi) = if d0 < d1 { (d0, d1) } else { (d1, d0) };
            if &hi <= bound {
                return Some(true);
            }
            if &lo >= bound {
                return Some(false);
            }
            k += 1;
        }
    }

    /// Smallest i with δᵢ ≤ 1/n.
    pub fn min_index_within(&self, n: &BigInt) -> usize {
        let bound = Rational::new(BigInt::one(), n.clone());
        let mut i = 0;
        loop {
            match self.delta_at_most(i, &bound) {
                Some(true) | None => return i,
                Some(false) => i += 1,
            }
        }
    }

    /// Proxy convergent α(m) with q_m > n, m of the same parity as the smallest
    /// i with δᵢ ≤ 1/n, taken eight blocks deeper than necessary.
    pub fn proxy(&self, n: &BigInt) -> Proxy {
        let min_index = self.min_index_within(n);
        if let Some(last) = self.last_index() {
            let (p, q) = self.convergent(last).expect("last convergent");
            return Proxy { index: last, p, q, min_index, exact: true };
        }
        let mut m = 0;
        while self.convergent(m).expect("irrational").1 <= *n || m % 2 != min_index % 2 {
            m += 1;
        }
        m += 8;
        let (p, q) = self.convergent(m).expect("irrational");
        Proxy { index: m, p, q, min_index, exact: false }
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

fn parse_cf(body: &str) -> Result<AlphaSpec> {
    let open = body.find('[').ok_or_else(|| Error::Parse("cf: missing '['".into()))?;
    let close = body.find(']').ok_or_else(|| Error::Parse("cf: missing ']'".into()))?;
    if open != 0 {
        return Err(Error::Parse("cf: expected '[' after 'cf:'".into()));
    }
    let inner = &body[1..close];
    let (head, tail) = match inner.split_once(';') {
        Some((h, t)) => (h, t),
        None => (inner, ""),
    };
    let mut coeffs = vec![parse_int(head)?];
    for part in tail.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        coeffs.push(parse_int(part)?);
    }
    let rest = body[close + 1..].trim().trim_start_matches(',').trim();
    let period = if rest.is_empty() {
        0
    } else if let Some(k) = rest.strip_prefix("periodic:") {
        k.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad period {k:?}")))?
    } else {
        return Err(Error::Parse(format!("unexpected cf suffix {rest:?}")));
    };
    AlphaSpec::from_coefficients(coeffs, period)
}

fn parse_surd(body: &str) -> Result<AlphaSpec> {
    let err = || Error::Parse(format!("surd must look like (p+sqrt(d))/q, got {body:?}"));
    let compact: String = body.chars().filter(|c| !c.is_whitespace()).collect();
    let rest = compact.strip_prefix('(').ok_or_else(err)?;
    let sqrt_at = rest.find("sqrt(").ok_or_else(err)?;
    let (p_part, after) = rest.split_at(sqrt_at);
    let (p_text, sign) = match p_part.chars().last() {
        Some('+') => (&p_part[..p_part.len() - 1], 1),
        Some('-') => (&p_part[..p_part.len() - 1], -1),
        None => ("", 1),
        _ => return Err(err()),
    };
    let p = if p_text.is_empty() { BigInt::zero() } else { parse_int(p_text)? };
    let after = &after["sqrt(".len()..];
    let close = after.find(')').ok_or_else(err)?;
    let d = parse_int(&after[..close])?;
    let tail = after[close + 1..].strip_prefix(')').ok_or_else(err)?;
    let q = match tail.strip_prefix('/') {
        Some(q) => parse_int(q)?,
        None if tail.is_empty() => BigInt::one(),
        None => return Err(err()),
    };
    // (p − √d)/q = (−p + √d)/(−q)
    let (p, q) = if sign < 0 { (-p, -q) } else { (p, q) };
    Ok(AlphaSpec::surd(p, d, q)?.relabel(format!("surd:{body}")))
}

impl FromStr for AlphaSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let s = text.trim();
        let spec = match s {
            "e" => return Ok(AlphaSpec::e()),
            "golden" | "phi" => return Ok(AlphaSpec::golden().relabel(s)),
            "sqrt2" => return Ok(AlphaSpec::sqrt2()),
            _ => {
                if let Some(body) = s.strip_prefix("cf:") {
                    parse_cf(body.trim())?
                } else if let Some(body) = s.strip_prefix("surd:") {
                    parse_surd(body.trim())?
                } else if let Some((num, den)) = s.split_once('/') {
                    AlphaSpec::from_ratio(parse_int(num)?, parse_int(den)?)?
                } else {
                    return Err(Error::Parse(format!("unrecognised α specification {s:?}")));
                }
            }
        };
        Ok(spec.relabel(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    fn coeffs(alpha: &AlphaSpec, n: usize) -> Vec<i64> {
        (1..=n).map(|i| alpha.coefficient(i).unwrap().try_into().unwrap()).collect()
    }

    #[test]
    fn e_pattern() {
        let e = AlphaSpec::e();
        assert_eq!(coeffs(&e, 11), vec![1, 2, 1, 1, 4, 1, 1, 6, 1, 1, 8]);
        assert_eq!(e.integer_part(), &BigInt::from(2));
    }

    #[test]
    fn golden_and_sqrt2_are_periodic() {
        assert_eq!(coeffs(&AlphaSpec::golden(), 6), vec![1; 6]);
        assert_eq!(coeffs(&AlphaSpec::sqrt2(), 6), vec![2; 6]);
        assert_eq!(AlphaSpec::sqrt2().integer_part(), &BigInt::from(1));
    }

    #[test]
    fn surd_needing_rescale() {
        // (1 + √3)/2 = 1.366…, fractional part 0.366… = [0; 2, 1, 2, 1, …]
        let a = AlphaSpec::parse("surd:(1+sqrt(3))/2").unwrap();
        assert_eq!(coeffs(&a, 6), vec![2, 1, 2, 1, 2, 1]);
        // (3 − √5)/2 = 0.381966… = [0; 2, 1, 1, 1, …]
        let b = AlphaSpec::parse("surd:(3-sqrt(5))/2").unwrap();
        assert_eq!(coeffs(&b, 5), vec![2, 1, 1, 1, 1]);
    }

    #[test]
    fn perfect_square_surd_is_rational() {
        let a = AlphaSpec::parse("surd:(1+sqrt(4))/5").unwrap();
        assert_eq!(a.as_rational(), Some(&rat(3, 5)));
    }

    #[test]
    fn parses_rationals_and_reduces_mod_one() {
        let a = AlphaSpec::parse("13/10").unwrap();
        assert_eq!(a.as_rational(), Some(&rat(3, 10)));
        assert!(AlphaSpec::parse("4/2").is_err());
        assert!(AlphaSpec::parse("1/0").is_err());
    }

    #[test]
    fn parses_cf_lists() {
        let a = AlphaSpec::parse("cf:[0;1,2,1,1,4,2]").unwrap();
        assert_eq!(a.as_rational(), Some(&rat(51, 71)));
        let b = AlphaSpec::parse("cf:[0;1] periodic:1").unwrap();
        assert_eq!(coeffs(&b, 4), vec![1, 1, 1, 1]);
        let c = AlphaSpec::parse("cf:[3;5,1,2]periodic:2").unwrap();
        assert_eq!(coeffs(&c, 6), vec![5, 1, 2, 1, 2, 1]);
        assert!(AlphaSpec::parse("cf:[0;1,0]").is_err());
    }

    #[test]
    fn rejects_garbage() {
        assert!(AlphaSpec::parse("pi").is_err());
        assert!(AlphaSpec::parse("surd:(1+sqrt(-2))/3").is_err());
    }

    #[test]
    fn cmp_rational_against_golden() {
        let g = AlphaSpec::golden();
        assert_eq!(g.cmp_rational(&rat(618, 1000)), Ordering::Greater);
        assert_eq!(g.cmp_rational(&rat(619, 1000)), Ordering::Less);
        assert_eq!(g.cmp_rational(&rat(8, 13)), Ordering::Greater);
    }

    #[test]
    fn proxy_parity_and_size() {
        let e = AlphaSpec::e();
        let n = BigInt::from(4700);
        let proxy = e.proxy(&n);
        assert_eq!(proxy.min_index, 7);
        assert_eq!(proxy.index % 2, 1);
        assert!(proxy.q > n);
        assert!(!proxy.exact);
    }

    #[test]
    fn stream_rule() {
        let a = AlphaSpec::from_stream("threes", BigInt::zero(), Arc::new(|_| BigInt::from(3)));
        assert_eq!(coeffs(&a, 3), vec![3, 3, 3]);
        assert_eq!(a.convergent(2), Some((BigInt::from(3), BigInt::from(10))));
    }
}
