#![allow(dead_code)]

use proptest::prelude::*;

/// A pool of raw integers turned into a `draw(lo, hi)` source.
#[derive(Debug, Clone)]
pub struct Pool {
    values: Vec<u32>,
    next: usize,
}

impl Pool {
    pub fn draw(&mut self, lo: i64, hi: i64) -> i64 {
        let v = self.values[self.next % self.values.len()];
        self.next += 1;
        lo + i64::from(v) % (hi - lo + 1)
    }
}

pub fn pool() -> impl Strategy<Value = Pool> {
    prop::collection::vec(any::<u32>(), 64..256).prop_map(|values| Pool { values, next: 0 })
}

#[macro_export]
macro_rules! drawer {
    ($pool:expr) => {
        &mut |lo: i64, hi: i64| $pool.draw(lo, hi)
    };
}
