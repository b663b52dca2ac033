//! 2-tag systems over `{a, b, c, H}` with deletion number 2.

use std::collections::VecDeque;
use std::fmt;

use super::RunOutcome;
use crate::{Error, Result};

/// Readable symbols, in production order.
pub const TAG_ALPHABET: [u8; 3] = [b'a', b'b', b'c'];
pub const TAG_HALT: u8 = b'H';

/// The three production words for `a`, `b` and `c`.
///
/// `H` may appear at most once overall, and only as the last symbol of a
/// word. Empty productions are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TagRules {
    words: [Vec<u8>; 3],
}

impl TagRules {
    pub fn new(a: &str, b: &str, c: &str) -> Result<Self> {
        Self::from_words([a.as_bytes().to_vec(), b.as_bytes().to_vec(), c.as_bytes().to_vec()])
    }

    pub fn from_words(words: [Vec<u8>; 3]) -> Result<Self> {
        let mut halts = 0;
        for w in &words {
            for (i, &s) in w.iter().enumerate() {
                if s == TAG_HALT {
                    halts += 1;
                    if i + 1 != w.len() {
                        return Err(Error::Config("H must be the last symbol of its production".into()));
                    }
                } else if !TAG_ALPHABET.contains(&s) {
                    return Err(Error::Config(format!("`{}` is not a tag symbol", s as char)));
                }
            }
        }
        if halts > 1 {
            return Err(Error::Config("H may appear in at most one production".into()));
        }
        Ok(TagRules { words })
    }

    pub fn words(&self) -> &[Vec<u8>; 3] {
        &self.words
    }

    pub fn symbol_length(&self) -> u32 {
        self.words.iter().map(|w| w.len() as u32).sum()
    }

    fn production(&self, symbol: u8) -> &[u8] {
        &self.words[(symbol - b'a') as usize]
    }
}

impl fmt::Display for TagRules {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |w: &[u8]| String::from_utf8_lossy(w).into_owned();
        write!(
            f,
            "a->{} b->{} c->{}",
            show(&self.words[0]),
            show(&self.words[1]),
            show(&self.words[2])
        )
    }
}

/// One step is one read-append-delete cycle; the final halting check is
/// counted as a step too.
pub(super) fn run(rules: &TagRules, start: &[u8], max_steps: u64, word: &mut VecDeque<u8>) -> RunOutcome {
    word.clear();
    word.extend(start.iter().copied());
    for step in 1..=max_steps {
        match word.front() {
            Some(&s) if s != TAG_HALT && word.len() >= 2 => {
                word.extend(rules.production(s).iter().copied());
                word.pop_front();
                word.pop_front();
            }
            _ => {
                return RunOutcome::Halted {
                    runtime: step,
                    output: word.iter().copied().collect(),
                }
            }
        }
    }
    RunOutcome::Timeout
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines::{execute, MachineConfig, Program};

    /// Independent reference: rebuilds the word as a `String` each step.
    fn reference(words: [&str; 3], start: &str, max_steps: u64) -> Option<(u64, String)> {
        let mut w = start.to_string();
        let mut steps = 0;
        loop {
            steps += 1;
            if steps > max_steps {
                return None;
            }
            if w.len() < 2 || w.starts_with('H') {
                return Some((steps, w));
            }
            let idx = (w.as_bytes()[0] - b'a') as usize;
            w = format!("{}{}", &w[2..], words[idx]);
        }
    }

    fn cfg(max_steps: u64) -> MachineConfig {
        MachineConfig {
            max_steps,
            ..MachineConfig::default()
        }
    }

    #[test]
    fn hand_traced_halting_example() {
        // aaa -> aH -> H, then the H is read
        let p = Program::tag2(TagRules::new("H", "a", "a").unwrap());
        assert_eq!(reference(["H", "a", "a"], "aaa", 100), Some((3, "H".to_string())));
        assert_eq!(
            execute(&p, &cfg(100)),
            RunOutcome::Halted {
                runtime: 3,
                output: b"H".to_vec()
            }
        );
    }

    #[test]
    fn empty_productions_shrink_to_one_symbol() {
        let p = Program::tag2(TagRules::new("", "", "").unwrap());
        // aaa -> a, too short
        assert_eq!(
            execute(&p, &cfg(100)),
            RunOutcome::Halted {
                runtime: 2,
                output: b"a".to_vec()
            }
        );
    }

    #[test]
    fn growth_times_out() {
        let p = Program::tag2(TagRules::new("aaa", "", "").unwrap());
        assert_eq!(execute(&p, &cfg(500)), RunOutcome::Timeout);
    }

    #[test]
    fn timeout_boundary_is_inclusive() {
        let p = Program::tag2(TagRules::new("H", "a", "a").unwrap());
        assert!(execute(&p, &cfg(3)).is_halted());
        assert_eq!(execute(&p, &cfg(2)), RunOutcome::Timeout);
    }

    #[test]
    fn agrees_with_reference_on_assorted_rules() {
        let cases: [[&str; 3]; 6] = [
            ["bc", "a", "aaH"],
            ["ccb", "cH", "a"],
            ["b", "ca", "abc"],
            ["abH", "", "c"],
            ["", "bb", "cH"],
            ["cb", "a", "b"],
        ];
        for words in cases {
            let p = Program::tag2(TagRules::new(words[0], words[1], words[2]).unwrap());
            let got = execute(&p, &cfg(2_000));
            let want = reference(words, "aaa", 2_000);
            match (got, want) {
                (RunOutcome::Halted { runtime, output }, Some((r, w))) => {
                    assert_eq!(runtime, r, "{words:?}");
                    assert_eq!(output, w.into_bytes(), "{words:?}");
                }
                (RunOutcome::Timeout, None) => {}
                (g, w) => panic!("{words:?}: got {g:?}, want {w:?}"),
            }
        }
    }

    #[test]
    fn rejects_misplaced_halt() {
        assert!(TagRules::new("Ha", "", "").is_err());
        assert!(TagRules::new("H", "H", "").is_err());
        assert!(TagRules::new("d", "", "").is_err());
        assert!(TagRules::new("aH", "b", "").is_ok());
    }
}
