//! Step-bounded interpreters and exhaustive enumerators for 2-tag systems,
//! Rule 110 and Brainfuck.

mod brainfuck;
mod enumerate;
mod rule110;
mod tag2;

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

pub use brainfuck::{bracket_balance_ok, BF_ALPHABET, BF_TAPE_LEN};
pub use enumerate::{enumerate_programs, program_count, ProgramSpace};
pub use rule110::{rule110_step, unpack_state};
pub use tag2::{TagRules, TAG_ALPHABET, TAG_HALT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MachineKind {
    Tag2,
    Rule110,
    Brainfuck,
}

impl MachineKind {
    pub const ALL: [MachineKind; 3] = [MachineKind::Tag2, MachineKind::Rule110, MachineKind::Brainfuck];

    /// Short name used in files and on the command line.
    pub fn name(self) -> &'static str {
        match self {
            MachineKind::Tag2 => "tag2",
            MachineKind::Rule110 => "rule110",
            MachineKind::Brainfuck => "bf",
        }
    }

    /// Program alphabet size.
    pub fn alphabet_size(self) -> u32 {
        match self {
            MachineKind::Tag2 => 4,
            MachineKind::Rule110 => 2,
            MachineKind::Brainfuck => 7,
        }
    }

    pub fn bits_per_symbol(self) -> f64 {
        match self {
            MachineKind::Tag2 => 2.0,
            MachineKind::Rule110 => 1.0,
            MachineKind::Brainfuck => 7f64.log2(),
        }
    }

    /// Description length of a program with `symbol_length` symbols.
    pub fn bits_for_length(self, symbol_length: u32) -> f64 {
        self.bits_per_symbol() * f64::from(symbol_length)
    }

    /// Number of output symbols in `output`, in the machine's output alphabet.
    pub fn output_length(self, output: &[u8], config: &MachineConfig) -> u64 {
        match self {
            MachineKind::Rule110 => config.rule110_width as u64,
            MachineKind::Tag2 | MachineKind::Brainfuck => output.len() as u64,
        }
    }
}

impl fmt::Display for MachineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MachineKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tag2" | "tag" | "2-tag" => Ok(MachineKind::Tag2),
            "rule110" | "r110" | "ca" => Ok(MachineKind::Rule110),
            "bf" | "brainfuck" => Ok(MachineKind::Brainfuck),
            other => Err(Error::Config(format!("unknown machine `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineConfig {
    pub max_steps: u64,
    /// Cells of the cyclic Rule 110 tape.
    pub rule110_width: usize,
    /// Initial word of every tag system, over `a`, `b`, `c`.
    pub tag_start_word: Vec<u8>,
}

impl Default for MachineConfig {
    fn default() -> Self {
        MachineConfig {
            max_steps: 10_000,
            rule110_width: 64,
            tag_start_word: b"aaa".to_vec(),
        }
    }
}

impl MachineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_steps < 1 {
            return Err(Error::Config("max_steps must be at least 1".into()));
        }
        if self.rule110_width < 4 {
            return Err(Error::Config("rule110 width must be at least 4".into()));
        }
        if self.tag_start_word.is_empty() {
            return Err(Error::Config("tag start word must be nonempty".into()));
        }
        if let Some(&bad) = self.tag_start_word.iter().find(|s| !TAG_ALPHABET.contains(s)) {
            return Err(Error::Config(format!(
                "tag start word contains `{}`; only a, b, c are allowed",
                bad as char
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Payload {
    Tag2(TagRules),
    /// One byte per cell, 0 or 1, leftmost cell first.
    Rule110(Vec<u8>),
    /// Instruction characters.
    Brainfuck(Vec<u8>),
}

/// A candidate program for one machine kind.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Program {
    payload: Payload,
}

impl Program {
    pub fn tag2(rules: TagRules) -> Self {
        Program {
            payload: Payload::Tag2(rules),
        }
    }

    /// Parse a bit string such as `"0101"`; the last bit must be 1.
    pub fn rule110(bits: &str) -> Result<Self> {
        let cells = bits
            .bytes()
            .map(|b| match b {
                b'0' => Ok(0u8),
                b'1' => Ok(1u8),
                _ => Err(Error::Config(format!("rule110 payload `{bits}` is not a bit string"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::rule110_cells(cells)
    }

    pub(crate) fn rule110_cells(cells: Vec<u8>) -> Result<Self> {
        if cells.last() != Some(&1) {
            return Err(Error::Config("rule110 payload must be nonempty and end in 1".into()));
        }
        Ok(Program {
            payload: Payload::Rule110(cells),
        })
    }

    /// Parse Brainfuck source; the read instruction `,` is rejected.
    pub fn brainfuck(code: &str) -> Result<Self> {
        if code.is_empty() {
            return Err(Error::Config("empty brainfuck program".into()));
        }
        if let Some(c) = code.bytes().find(|c| !BF_ALPHABET.contains(c)) {
            return Err(Error::Config(format!(
                "`{}` is not in the brainfuck instruction set {}",
                c as char,
                std::str::from_utf8(&BF_ALPHABET).unwrap()
            )));
        }
        Ok(Program {
            payload: Payload::Brainfuck(code.as_bytes().to_vec()),
        })
    }

    pub fn kind(&self) -> MachineKind {
        match self.payload {
            Payload::Tag2(_) => MachineKind::Tag2,
            Payload::Rule110(_) => MachineKind::Rule110,
            Payload::Brainfuck(_) => MachineKind::Brainfuck,
        }
    }

    pub fn symbol_length(&self) -> u32 {
        match &self.payload {
            Payload::Tag2(rules) => rules.symbol_length(),
            Payload::Rule110(cells) => cells.len() as u32,
            Payload::Brainfuck(code) => code.len() as u32,
        }
    }

    pub fn description_bits(&self) -> f64 {
        description_bits(self)
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.payload {
            Payload::Tag2(rules) => write!(f, "{rules}"),
            Payload::Rule110(cells) => {
                for &c in cells {
                    f.write_str(if c == 1 { "1" } else { "0" })?;
                }
                Ok(())
            }
            Payload::Brainfuck(code) => f.write_str(std::str::from_utf8(code).unwrap_or("?")),
        }
    }
}

/// Description length in bits: `symbol_length · log2(alphabet size)`.
pub fn description_bits(program: &Program) -> f64 {
    program.kind().bits_for_length(program.symbol_length())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunOutcome {
    Halted { runtime: u64, output: Vec<u8> },
    Timeout,
    /// Only Brainfuck programs with unmatched brackets.
    Invalid,
}

impl RunOutcome {
    pub fn is_halted(&self) -> bool {
        matches!(self, RunOutcome::Halted { .. })
    }
}

/// Run `program` for at most `config.max_steps` steps.
pub fn execute(program: &Program, config: &MachineConfig) -> RunOutcome {
    Runner::new(config.clone()).run(program)
}

/// Interpreter with scratch buffers reused across runs.
///
/// Produces exactly the same outcomes as [`execute`]; sweeps keep one per
/// worker so that tapes and cycle tables are not reallocated per program.
pub struct Runner {
    config: MachineConfig,
    tape: Vec<u8>,
    word: VecDeque<u8>,
    seen: HashSet<Vec<u64>>,
}

impl Runner {
    pub fn new(config: MachineConfig) -> Self {
        Runner {
            config,
            tape: vec![0; BF_TAPE_LEN],
            word: VecDeque::new(),
            seen: HashSet::new(),
        }
    }

    pub fn config(&self) -> &MachineConfig {
        &self.config
    }

    pub fn run(&mut self, program: &Program) -> RunOutcome {
        match &program.payload {
            Payload::Tag2(rules) => {
                tag2::run(rules, &self.config.tag_start_word, self.config.max_steps, &mut self.word)
            }
            Payload::Rule110(cells) => rule110::run(
                cells,
                self.config.rule110_width,
                self.config.max_steps,
                &mut self.seen,
            ),
            Payload::Brainfuck(code) => brainfuck::run(code, self.config.max_steps, &mut self.tape),
        }
    }
}
