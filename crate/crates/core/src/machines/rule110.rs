//! Rule 110 on a cyclic tape. A run halts at the first repeated state.

use std::collections::HashSet;

use super::RunOutcome;

/// One synchronous Rule 110 update. Cell `i` lives in word `i / 64`, bit
/// `i % 64`; its left neighbour is cell `i - 1` (mod width).
pub fn rule110_step(cur: &[u64], next: &mut [u64], width: usize) {
    let n = cur.len();
    debug_assert_eq!(n, width.div_ceil(64));
    let last_bits = width - 64 * (n - 1);
    let last_mask = if last_bits == 64 { u64::MAX } else { (1u64 << last_bits) - 1 };
    for j in 0..n {
        let c = cur[j];
        let left_in = if j == 0 { (cur[n - 1] >> (last_bits - 1)) & 1 } else { cur[j - 1] >> 63 };
        let l = (c << 1) | left_in;
        let right_in = if j == n - 1 {
            (cur[0] & 1) << (last_bits - 1)
        } else {
            (cur[j + 1] & 1) << 63
        };
        let r = (c >> 1) | right_in;
        // 111,100,000 -> 0; everything else -> 1
        let mut v = (c | r) & !(l & c & r);
        if j == n - 1 {
            v &= last_mask;
        }
        next[j] = v;
    }
}

fn pack(words: &[u64], width: usize) -> Vec<u8> {
    words
        .iter()
        .flat_map(|w| w.to_le_bytes())
        .take(width.div_ceil(8))
        .collect()
}

/// Expand a packed output back into one 0/1 byte per cell.
pub fn unpack_state(packed: &[u8], width: usize) -> Vec<u8> {
    (0..width).map(|i| (packed[i / 8] >> (i % 8)) & 1).collect()
}

pub(super) fn run(cells: &[u8], width: usize, max_steps: u64, seen: &mut HashSet<Vec<u64>>) -> RunOutcome {
    debug_assert!(cells.len() <= width);
    let n = width.div_ceil(64);
    let mut cur = vec![0u64; n];
    for (i, &c) in cells.iter().enumerate() {
        cur[i / 64] |= u64::from(c) << (i % 64);
    }
    let mut next = vec![0u64; n];
    seen.clear();
    seen.insert(cur.clone());
    for step in 1..=max_steps {
        rule110_step(&cur, &mut next, width);
        std::mem::swap(&mut cur, &mut next);
        if !seen.insert(cur.clone()) {
            return RunOutcome::Halted {
                runtime: step,
                output: pack(&cur, width),
            };
        }
    }
    RunOutcome::Timeout
}
