use super::SplitBundle;
use crate::Weights;

/// Terms `A_0, ..., A_n` of the Koszul complex `0 → A_n → ... → A_0 → O → 0`, where
/// `A_j = ⊕_{|I| = j+1} O(-|w_I|)` with subsets `I` in lexicographic order.
pub fn koszul_complex(w: &Weights) -> Vec<SplitBundle> {
    let nvars = w.num_vars();
    (1..=nvars)
        .map(|size| {
            let mut twists = Vec::new();
            let mut subset: Vec<usize> = (0..size).collect();
            loop {
                twists.push(-subset.iter().map(|&i| w.weight(i)).sum::<i64>());
                // advance to the next subset in lexicographic order
                let Some(pos) = (0..size).rev().find(|&p| subset[p] < nvars - size + p) else {
                    break;
                };
                subset[pos] += 1;
                for q in pos + 1..size {
                    subset[q] = subset[q - 1] + 1;
                }
            }
            SplitBundle::new(twists)
        })
        .collect()
}
