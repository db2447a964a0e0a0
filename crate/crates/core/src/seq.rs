//! Eventually periodic sequences `p_0 p_1 … p_{k-1} (q_0 … q_{l-1})^∞`.
//!
//! Used for the source maps of infinite edge families and for cocycle
//! values along a family. Values are always kept normalized, so derived
//! equality coincides with equality of the infinite sequences.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EventuallyPeriodic<T> {
    prefix: Vec<T>,
    period: Vec<T>,
}

impl<T: Clone + PartialEq> EventuallyPeriodic<T> {
    /// Returns `None` when the period is empty.
    pub fn new(prefix: Vec<T>, period: Vec<T>) -> Option<Self> {
        if period.is_empty() {
            return None;
        }
        let mut seq = EventuallyPeriodic { prefix, period };
        seq.normalize();
        Some(seq)
    }

    pub fn constant(value: T) -> Self {
        EventuallyPeriodic {
            prefix: Vec::new(),
            period: vec![value],
        }
    }

    /// Builds the sequence `i ↦ f(i)`, assuming it is periodic with period
    /// `period_len` from position `prefix_len` on.
    pub fn from_fn(prefix_len: usize, period_len: usize, mut f: impl FnMut(usize) -> T) -> Self {
        assert!(period_len > 0);
        let prefix = (0..prefix_len).map(&mut f).collect();
        let period = (prefix_len..prefix_len + period_len).map(f).collect();
        let mut seq = EventuallyPeriodic { prefix, period };
        seq.normalize();
        seq
    }

    pub fn prefix(&self) -> &[T] {
        &self.prefix
    }

    pub fn period(&self) -> &[T] {
        &self.period
    }

    /// Zero-based access.
    pub fn get(&self, i: usize) -> &T {
        if i < self.prefix.len() {
            &self.prefix[i]
        } else {
            let k = (i - self.prefix.len()) % self.period.len();
            &self.period[k]
        }
    }

    pub fn map<U: Clone + PartialEq>(&self, mut f: impl FnMut(&T) -> U) -> EventuallyPeriodic<U> {
        let mut seq = EventuallyPeriodic {
            prefix: self.prefix.iter().map(&mut f).collect(),
            period: self.period.iter().map(f).collect(),
        };
        seq.normalize();
        seq
    }

    pub fn zip_with<U: Clone + PartialEq, V: Clone + PartialEq>(
        &self,
        other: &EventuallyPeriodic<U>,
        mut f: impl FnMut(&T, &U) -> V,
    ) -> EventuallyPeriodic<V> {
        let prefix_len = self.prefix.len().max(other.prefix.len());
        let period_len = self.period.len().lcm(&other.period.len());
        EventuallyPeriodic::from_fn(prefix_len, period_len, |i| f(self.get(i), other.get(i)))
    }

    /// Every value that occurs infinitely often.
    pub fn recurring(&self) -> &[T] {
        &self.period
    }

    fn normalize(&mut self) {
        let n = self.period.len();
        for d in 1..=n {
            if n.is_multiple_of(d) && (0..n).all(|i| self.period[i] == self.period[i % d]) {
                self.period.truncate(d);
                break;
            }
        }
        while let Some(last) = self.prefix.last() {
            if *last == *self.period.last().expect("nonempty period") {
                let v = self.prefix.pop().expect("checked");
                self.period.rotate_right(1);
                self.period[0] = v;
            } else {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalizes_power_and_prefix() {
        let s = EventuallyPeriodic::new(vec![3, 2, 1], vec![2, 1, 2, 1]).unwrap();
        assert_eq!(s.prefix(), &[3]);
        assert_eq!(s.period(), &[2, 1]);
        let t = EventuallyPeriodic::new(vec![1, 2, 1], vec![2, 1]).unwrap();
        assert!(t.prefix().is_empty());
        assert_eq!(t.period(), &[1, 2]);
    }

    #[test]
    fn empty_period_rejected() {
        assert!(EventuallyPeriodic::<u8>::new(vec![1], vec![]).is_none());
    }

    #[test]
    fn zip_uses_lcm_period() {
        let a = EventuallyPeriodic::new(vec![], vec![0, 1]).unwrap();
        let b = EventuallyPeriodic::new(vec![5], vec![0, 0, 1]).unwrap();
        let c = a.zip_with(&b, |x, y| x + y);
        for i in 0..40 {
            assert_eq!(*c.get(i), a.get(i) + b.get(i));
        }
    }

    proptest! {
        #[test]
        fn normalization_preserves_values(
            prefix in prop::collection::vec(0u8..3, 0..5),
            period in prop::collection::vec(0u8..3, 1..5),
        ) {
            let raw = (prefix.clone(), period.clone());
            let s = EventuallyPeriodic::new(prefix, period).unwrap();
            for i in 0..30 {
                let expect = if i < raw.0.len() { raw.0[i] } else { raw.1[(i - raw.0.len()) % raw.1.len()] };
                prop_assert_eq!(*s.get(i), expect);
            }
        }
    }
}
