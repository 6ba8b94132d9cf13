use crate::scalar::{lit, Real};

/// Certified bound `length <= multiplier * OPT + additive`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatioBudget<T> {
    pub multiplier: T,
    pub additive: T,
}

impl<T: Real> RatioBudget<T> {
    pub fn multiplicative(multiplier: T) -> Self {
        RatioBudget { multiplier, additive: T::zero() }
    }

    pub fn bound(&self, opt: T) -> T {
        self.multiplier * opt + self.additive
    }

    /// `length` within the budget against `opt`, with relative slack 1e-9.
    pub fn satisfied(&self, length: T, opt: T) -> bool {
        let b = self.bound(opt);
        length <= b + lit::<T>(1e-9) * (T::one() + b)
    }
}
