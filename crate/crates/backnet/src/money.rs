//! Exact monetary arithmetic in integer cents.
//!
//! Deployment costs are sums of per-link prices. Planners and brute-force
//! oracles must agree on those sums to the cent, so costs are carried as
//! `i64` cent counts rather than floats: addition is exact and comparisons
//! are total, which also makes lexicographic tie-breaking deterministic.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Sub};

/// A non-negative-by-convention amount of money, stored as integer cents.
///
/// Link prices are rounded to the nearest cent once, when a cost matrix is
/// built; everything downstream is exact integer arithmetic.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Money(i64);

impl Money {
    /// Zero dollars.
    pub const ZERO: Money = Money(0);

    /// Builds an amount from a raw cent count.
    pub const fn from_cents(cents: i64) -> Self {
        Money(cents)
    }

    /// Builds an amount from a dollar figure, rounding half away from zero
    /// to the nearest cent.
    pub fn from_dollars(dollars: f64) -> Self {
        Money((dollars * 100.0).round() as i64)
    }

    /// The raw cent count.
    pub const fn cents(self) -> i64 {
        self.0
    }

    /// The amount as a floating-point dollar figure (for reporting only).
    pub fn dollars(self) -> f64 {
        self.0 as f64 / 100.0
    }

    /// Exactly halves the amount. Panics in debug builds when the cent
    /// count is odd; callers use this for totals that double-count each
    /// link once per endpoint, which are even by construction.
    pub fn half(self) -> Self {
        debug_assert!(self.0 % 2 == 0, "halving an odd cent count loses money");
        Money(self.0 / 2)
    }

    /// Formats the amount as a plain decimal dollar figure, e.g. `13500.00`.
    pub fn to_decimal_string(self) -> String {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        format!("{sign}{}.{:02}", abs / 100, abs % 100)
    }
}

impl Add for Money {
    type Output = Money;

    fn add(self, rhs: Money) -> Money {
        Money(self.0 + rhs.0)
    }
}

impl AddAssign for Money {
    fn add_assign(&mut self, rhs: Money) {
        self.0 += rhs.0;
    }
}

impl Sub for Money {
    type Output = Money;

    fn sub(self, rhs: Money) -> Money {
        Money(self.0 - rhs.0)
    }
}

impl Sum for Money {
    fn sum<I: Iterator<Item = Money>>(iter: I) -> Money {
        iter.fold(Money::ZERO, Add::add)
    }
}

impl fmt::Display for Money {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "${}", self.to_decimal_string())
    }
}

impl fmt::Debug for Money {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Money({})", self.to_decimal_string())
    }
}
