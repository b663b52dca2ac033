//! Canonical ordering of all programs up to a symbol-length bound.
//!
//! Programs are ordered by symbol length first. Within a length, Brainfuck
//! programs and Rule 110 payloads are in lexicographic order (Brainfuck over
//! `+ - < > [ ] .`, Rule 110 with `0 < 1`). Tag systems of one total length
//! are ordered by the split `(|w_a|, |w_b|, |w_c|)`, then by where `H` sits
//! (nowhere, then at the end of `w_a`, `w_b`, `w_c`), then lexicographically
//! over the remaining `a`/`b`/`c` symbols.
//!
//! Every position has an O(length²) unranking, which is what lets sweeps be
//! sharded by index without walking the stream.

use super::{MachineConfig, MachineKind, Program, TagRules, BF_ALPHABET, TAG_ALPHABET, TAG_HALT};

/// Random-access view of the canonical program stream.
#[derive(Debug, Clone)]
pub struct ProgramSpace {
    kind: MachineKind,
    /// `(symbol length, index of its first program)`, ascending.
    offsets: Vec<(u32, u64)>,
    total: u64,
}

fn pow(base: u64, exp: u32) -> u64 {
    base.checked_pow(exp).expect("program count overflows u64")
}

fn count_of_length(kind: MachineKind, len: u32, width: usize) -> u64 {
    match kind {
        MachineKind::Brainfuck if len >= 1 => pow(7, len),
        MachineKind::Rule110 if len >= 1 && len as usize <= width => pow(2, len - 1),
        MachineKind::Tag2 => u64::from(len + 1).pow(2) * pow(3, len),
        _ => 0,
    }
}

impl ProgramSpace {
    pub fn new(kind: MachineKind, max_symbol_length: u32, config: &MachineConfig) -> Self {
        let mut offsets = Vec::new();
        let mut total = 0u64;
        for len in 0..=max_symbol_length {
            let n = count_of_length(kind, len, config.rule110_width);
            if n > 0 {
                offsets.push((len, total));
                total = total.checked_add(n).expect("program count overflows u64");
            }
        }
        ProgramSpace { kind, offsets, total }
    }

    pub fn kind(&self) -> MachineKind {
        self.kind
    }

    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// The program at position `index` of the canonical order.
    pub fn get(&self, index: u64) -> Program {
        assert!(index < self.total, "index {index} out of range {}", self.total);
        let slot = self.offsets.partition_point(|&(_, start)| start <= index) - 1;
        let (len, start) = self.offsets[slot];
        let rank = index - start;
        match self.kind {
            MachineKind::Brainfuck => Program::brainfuck_bytes(digits(rank, 7, len as usize, &BF_ALPHABET)),
            MachineKind::Rule110 => {
                let mut cells = digits(rank, 2, len as usize - 1, &[0, 1]);
                cells.push(1);
                Program::rule110_cells(cells).expect("trailing 1")
            }
            MachineKind::Tag2 => Program::tag2(unrank_tag(len, rank)),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Program> + '_ {
        (0..self.total).map(move |i| self.get(i))
    }
}

/// `rank` written as `width` base-`base` digits, most significant first.
fn digits(mut rank: u64, base: u64, width: usize, symbols: &[u8]) -> Vec<u8> {
    let mut out = vec![symbols[0]; width];
    for slot in out.iter_mut().rev() {
        *slot = symbols[(rank % base) as usize];
        rank /= base;
    }
    out
}

fn unrank_tag(len: u32, mut rank: u64) -> TagRules {
    let l = len as usize;
    for la in 0..=l {
        for lb in 0..=l - la {
            let lens = [la, lb, l - la - lb];
            let free_all = pow(3, len);
            if rank < free_all {
                return fill_tag(lens, None, rank);
            }
            rank -= free_all;
            for (j, &wl) in lens.iter().enumerate() {
                if wl == 0 {
                    continue;
                }
                let block = pow(3, len - 1);
                if rank < block {
                    return fill_tag(lens, Some(j), rank);
                }
                rank -= block;
            }
        }
    }
    unreachable!("rank exceeds tag programs of length {len}")
}

fn fill_tag(lens: [usize; 3], halt_in: Option<usize>, rank: u64) -> TagRules {
    let free = lens.iter().sum::<usize>() - usize::from(halt_in.is_some());
    let mut symbols = digits(rank, 3, free, &TAG_ALPHABET).into_iter();
    let words = std::array::from_fn(|j| {
        let body = lens[j] - usize::from(halt_in == Some(j));
        let mut w: Vec<u8> = symbols.by_ref().take(body).collect();
        if halt_in == Some(j) {
            w.push(TAG_HALT);
        }
        w
    });
    TagRules::from_words(words).expect("enumerated tag rules are valid")
}

/// All programs with `symbol_length <= max_symbol_length`, in canonical order.
///
/// Tag systems start at length 0 (three empty productions). Rule 110
/// payloads longer than the tape are skipped.
pub fn enumerate_programs(
    kind: MachineKind,
    max_symbol_length: u32,
    config: &MachineConfig,
) -> impl Iterator<Item = Program> {
    let space = ProgramSpace::new(kind, max_symbol_length, config);
    (0..space.len()).map(move |i| space.get(i))
}

pub fn program_count(kind: MachineKind, max_symbol_length: u32, config: &MachineConfig) -> u64 {
    ProgramSpace::new(kind, max_symbol_length, config).len()
}

impl Program {
    fn brainfuck_bytes(code: Vec<u8>) -> Program {
        Program {
            payload: super::Payload::Brainfuck(code),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn cfg() -> MachineConfig {
        MachineConfig::default()
    }

    #[test]
    fn rule110_up_to_three() {
        let got: Vec<String> = enumerate_programs(MachineKind::Rule110, 3, &cfg())
            .map(|p| p.to_string())
            .collect();
        assert_eq!(got, ["1", "01", "11", "001", "011", "101", "111"]);
    }

    #[test]
    fn brainfuck_up_to_two() {
        let progs: Vec<String> = enumerate_programs(MachineKind::Brainfuck, 2, &cfg())
            .map(|p| p.to_string())
            .collect();
        assert_eq!(progs.len(), 56);
        assert_eq!(progs[0], "+");
        assert_eq!(progs[6], ".");
        assert_eq!(progs[7], "++");
        assert_eq!(progs[55], "..");
        let distinct: HashSet<_> = progs.iter().collect();
        assert_eq!(distinct.len(), 56);
    }

    #[test]
    fn rule110_longer_than_tape_is_skipped() {
        let config = MachineConfig {
            rule110_width: 4,
            ..cfg()
        };
        assert_eq!(program_count(MachineKind::Rule110, 10, &config), 15);
    }

    /// Brute force: every word triple over {a,b,c,H} that passes validation.
    fn brute_tag_count(max_len: usize) -> (usize, HashSet<String>) {
        let mut set = HashSet::new();
        let alphabet = [b'a', b'b', b'c', b'H'];
        for total in 0..=max_len {
            for la in 0..=total {
                for lb in 0..=total - la {
                    for mut n in 0..4usize.pow(total as u32) {
                        let flat: Vec<u8> = (0..total)
                            .map(|_| {
                                let s = alphabet[n % 4];
                                n /= 4;
                                s
                            })
                            .collect();
                        let w = [
                            flat[..la].to_vec(),
                            flat[la..la + lb].to_vec(),
                            flat[la + lb..].to_vec(),
                        ];
                        if let Ok(rules) = TagRules::from_words(w) {
                            set.insert(rules.to_string());
                        }
                    }
                }
            }
        }
        (set.len(), set)
    }

    #[test]
    fn tag_enumeration_is_complete_and_unique() {
        for max_len in 0..=4u32 {
            let got: Vec<String> = enumerate_programs(MachineKind::Tag2, max_len, &cfg())
                .map(|p| p.to_string())
                .collect();
            let distinct: HashSet<String> = got.iter().cloned().collect();
            assert_eq!(distinct.len(), got.len(), "duplicates at {max_len}");
            let (n, brute) = brute_tag_count(max_len as usize);
            assert_eq!(got.len(), n, "count at {max_len}");
            assert_eq!(distinct, brute);
            let closed: u64 = (0..=max_len).map(|l| u64::from(l + 1).pow(2) * 3u64.pow(l)).sum();
            assert_eq!(got.len() as u64, closed);
        }
    }

    #[test]
    fn lengths_are_non_decreasing() {
        for kind in MachineKind::ALL {
            let lens: Vec<u32> = enumerate_programs(kind, 4, &cfg()).map(|p| p.symbol_length()).collect();
            assert!(lens.windows(2).all(|w| w[0] <= w[1]), "{kind}");
        }
    }

    #[test]
    fn billions_scale_brainfuck_count() {
        let n = program_count(MachineKind::Brainfuck, 11, &cfg());
        assert_eq!(n, (1..=11).map(|l| 7u64.pow(l)).sum::<u64>());
        assert!((n as f64 / 2.3e9 - 1.0).abs() < 0.05);
    }
}
