use num_bigint::BigInt;
use num_traits::One;

use crate::error::{domain, Error, Result};
use crate::lattice::{slope_frame, CaseTag, LatticeVector, SlopeFrame};
use crate::numeric::{rat, AlphaSpec, Proxy, Rational};

/// Basis of L_n = {(x, (n/N)y)} obtained from the slope frame at τ = N/n.
#[derive(Clone, Debug)]
pub struct RescaledFrame {
    pub n: u64,
    pub big_n: BigInt,
    pub a: BigInt,
    pub x_vec: LatticeVector,
    pub y_vec: LatticeVector,
    pub case_tag: CaseTag,
    pub h: usize,
    pub star: u8,
    pub proxy: Proxy,
    pub slope: SlopeFrame,
}

/// Shapes excluded by n > 1/α and n > 1/(1 − α).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrivialShape {
    /// w is the identity: one row of length n.
    Identity,
    /// w is the reversal: one column of height n.
    Reverse,
}

#[derive(Clone, Debug)]
pub enum FrameOutcome {
    Frame(Box<RescaledFrame>),
    Trivial(TrivialShape),
}

impl FrameOutcome {
    pub fn frame(self) -> Result<RescaledFrame> {
        match self {
            FrameOutcome::Frame(f) => Ok(*f),
            FrameOutcome::Trivial(t) => domain(format!("trivial input: shape is {t:?}")),
        }
    }
}

impl RescaledFrame {
    /// (x₁, x₂, y₁, y₂).
    pub fn coords(&self) -> (Rational, Rational, Rational, Rational) {
        (self.x_vec.h.clone(), self.x_vec.v.clone(), self.y_vec.h.clone(), self.y_vec.v.clone())
    }

    pub fn n_rat(&self) -> Rational {
        Rational::from_integer(BigInt::from(self.n))
    }

    /// x₂y₁ − x₁y₂.
    pub fn determinant(&self) -> Rational {
        let (x1, x2, y1, y2) = self.coords();
        x2 * y1 - x1 * y2
    }

    /// The basis arranged so that the row-side geometry is that of case 1.
    pub fn rows_pair(&self) -> (LatticeVector, LatticeVector) {
        let (x1, x2, y1, y2) = self.coords();
        match self.case_tag.major() {
            1 => (self.x_vec.clone(), self.y_vec.clone()),
            _ => (LatticeVector::new(x2, x1), LatticeVector::new(-y2, -y1)),
        }
    }

    /// The basis arranged for the conjugate (column) side.
    pub fn cols_pair(&self) -> (LatticeVector, LatticeVector) {
        let (x1, x2, y1, y2) = self.coords();
        match self.case_tag.major() {
            1 => (LatticeVector::new(-y2, y1), LatticeVector::new(x2, -x1)),
            _ => (LatticeVector::new(y1, -y2), LatticeVector::new(x1, -x2)),
        }
    }
}

/// Frame for w(n, α), or the trivial shape when n ≤ 1/α or n ≤ 1/(1 − α).
pub fn rescaled_frame(n: u64, alpha: &AlphaSpec) -> Result<FrameOutcome> {
    if n < 2 {
        return domain("n must be at least 2");
    }
    let inv = rat(1, n);
    if alpha.cmp_rational(&inv).is_le() {
        return Ok(FrameOutcome::Trivial(TrivialShape::Identity));
    }
    if alpha.cmp_rational(&(Rational::one() - &inv)).is_ge() {
        return Ok(FrameOutcome::Trivial(TrivialShape::Reverse));
    }
    let nb = BigInt::from(n);
    let proxy = alpha.proxy(&nb);
    if proxy.q <= nb {
        return domain(format!("rational α = {}/{} needs n < {}, got n = {n}", proxy.p, proxy.q, proxy.q));
    }
    let tau = Rational::new(proxy.q.clone(), nb.clone());
    let slope = slope_frame(&proxy.p, &proxy.q, &tau)?;
    let k = Rational::new(nb, proxy.q.clone());
    let x_vec = slope.x_vec.rescale_vertical(&k);
    let y_vec = slope.y_vec.rescale_vertical(&k);
    let case_tag = slope.case_tag;
    let star = if case_tag.major() == 1 { 2 } else { 0 };
    let y1 = y_vec.h.to_integer();
    let h = (0..=proxy.index)
        .filter(|i| i % 2 == 1)
        .find(|&i| alpha.convergent(i).map(|(_, q)| q == y1).unwrap_or(false))
        .map(|i| (i - 1) / 2)
        .ok_or_else(|| Error::Domain(format!("y₁ = {y1} is not an odd-index convergent denominator")))?;
    Ok(FrameOutcome::Frame(Box::new(RescaledFrame {
        n,
        big_n: proxy.q.clone(),
        a: proxy.p.clone(),
        x_vec,
        y_vec,
        case_tag,
        h,
        star,
        proxy,
        slope,
    })))
}

/// (i, (n/N)(a·i mod N)) for i = 1..=n, the points of the permutation in L_n.
pub fn permutation_points(frame: &RescaledFrame) -> Vec<(u64, Rational)> {
    let k = Rational::new(BigInt::from(frame.n), frame.big_n.clone());
    (1..=frame.n)
        .map(|i| {
            let r = (&frame.a * BigInt::from(i)) % &frame.big_n;
            (i, Rational::from_integer(r) * &k)
        })
        .collect()
}
