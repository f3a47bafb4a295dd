#![allow(dead_code)]

use wreg_core::sample::random_monad;
use wreg_core::{Monad, Settings, SheafExpr, Weights};

/// Every non-increasing weights tuple with `n_min <= n <= n_max` and entries at most `max`.
pub fn weights_up_to(n_min: usize, n_max: usize, max: i64) -> Vec<Weights> {
    fn go(prefix: &mut Vec<i64>, len: usize, max: i64, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        let top = prefix.last().copied().unwrap_or(max);
        for w in 1..=top {
            prefix.push(w);
            go(prefix, len, max, out);
            prefix.pop();
        }
    }
    let mut raw = Vec::new();
    for n in n_min..=n_max {
        go(&mut Vec::new(), n + 1, max, &mut raw);
    }
    raw.iter().map(|r| Weights::new(r).unwrap()).collect()
}

/// Split sheaves used by the property checks: every line bundle in a band around the
/// interesting range, plus a few two-term sums.
pub fn split_corpus() -> Vec<SheafExpr> {
    let mut out = Vec::new();
    for w in weights_up_to(1, 3, 4) {
        let lo = -w.total() - w.k();
        for d in lo..=w.k() {
            out.push(SheafExpr::split(w.clone(), vec![d]));
        }
        out.push(SheafExpr::split(w.clone(), vec![-w.weight(0), 0]));
        out.push(SheafExpr::split(w.clone(), vec![-w.total(), w.k()]));
    }
    out
}

pub fn sharp_monad() -> Monad {
    wreg_core::verify::sharpness_monad(&Settings::default()).unwrap()
}

/// Seeded random monads alternating between `P(3,2,2,1)` and `P(1,1,1,1)`.
pub fn random_monads(seeds: std::ops::Range<u64>) -> Vec<Monad> {
    let weighted = Weights::new(&[3, 2, 2, 1]).unwrap();
    let plain = Weights::new(&[1, 1, 1, 1]).unwrap();
    let settings = Settings::default();
    seeds
        .map(|s| {
            let w = if s % 2 == 0 { &weighted } else { &plain };
            random_monad(w, s, &settings).unwrap()
        })
        .collect()
}

pub fn monad_corpus() -> Vec<SheafExpr> {
    let mut out = vec![SheafExpr::monad(sharp_monad())];
    out.extend(random_monads(0..6).into_iter().map(SheafExpr::monad));
    out
}
